//! The boundary reflection coefficient `R_FZZ`.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

use super::{ln_unit_volume_constant, LogAcc, ReflectionArgs};
use crate::error::Result;
use crate::specialfn::LiouvilleParams;

/// `log(Γ_b(x)/Γ_b(−x))` via one `b`-shift on each side:
///
/// ```text
/// Γ_b(x)/Γ_b(−x) = −Γ_b(x+b)/Γ_b(b−x) · Γ(1+bx)/Γ(1−bx) · b^{−2bx}
/// ```
///
/// which is exactly `−1` at `x = 0`. The flag is true when the ratio vanishes.
pub fn ln_gamma_b_reflection_ratio(x: C, p: &LiouvilleParams) -> Result<(C, bool)> {
    let b = p.b();
    let mut acc = LogAcc::new();
    acc.add(C::new(0.0, PI));
    let what = "Gamma_b(beta - Q) / Gamma_b(Q - beta)";
    acc.gamma_num(x + b, p, what)?;
    acc.gamma_den(b - x, p, what)?;
    acc.euler_num(1.0 + b * x, what)?;
    acc.euler_den(1.0 - b * x, what)?;
    acc.add(-2.0 * b * x * b.ln());
    Ok((acc.sum, acc.zero))
}

/// `R_FZZ(β, σ₁, σ₂)`.
pub fn r_fzz(a: &ReflectionArgs, p: &LiouvilleParams) -> Result<C> {
    let q = p.q;
    let (beta, s1, s2) = (a.beta, a.sigma1, a.sigma2);
    let (lr, zero) = ln_gamma_b_reflection_ratio(beta - q, p)?;
    let mut acc = LogAcc::new();
    acc.zero = zero;
    acc.add(lr);
    acc.add((q - beta) / p.gamma * ln_unit_volume_constant(p));
    let what = "R_FZZ S_b factor";
    let d = q - s1 - s2;
    acc.sine_num(q + d - beta / 2.0, p, what)?;
    acc.sine_num(q - d - beta / 2.0, p, what)?;
    acc.sine_den(beta / 2.0 + (s2 - s1), p, what)?;
    acc.sine_den(beta / 2.0 - (s2 - s1), p, what)?;
    acc.value()
}
