//! Adaptive quadrature and limit extrapolation.
//!
//! Both primitives are generic over the real scalar (`f32` or `f64`); the
//! rest of the crate instantiates them at `f64`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::Real;

/// Tolerances for [`integrate_real`]. The default relative tolerance is
/// `1e-11`, raised to `64 ε` for types with less precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings<F = f64> {
    pub rel_tol: F,
    pub abs_tol: F,
    pub max_subdivisions: usize,
}

impl<F: Real> Default for QuadSettings<F> {
    fn default() -> Self {
        QuadSettings {
            rel_tol: F::from_f64(1e-11)
                .unwrap()
                .max(F::epsilon() * F::from_f64(64.0).unwrap()),
            abs_tol: F::from_f64(1e-14).unwrap(),
            max_subdivisions: 4000,
        }
    }
}

impl<F: Real> QuadSettings<F> {
    pub fn new(rel_tol: F, abs_tol: F, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > F::zero()) || !(abs_tol >= F::zero()) || max_subdivisions < 1 {
            return Err(Error::InvalidParameter(
                "need rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1".into(),
            ));
        }
        Ok(QuadSettings {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }
}

/// Integral value with its error estimate and the number of integrand calls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<F = f64> {
    pub value: Complex<F>,
    pub error: F,
    pub evals: usize,
}

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// odd-indexed abscissae are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel<F> {
    a: F,
    b: F,
    value: Complex<F>,
    error: F,
}

impl<F: Real> PartialEq for Panel<F> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<F: Real> Eq for Panel<F> {}
impl<F: Real> PartialOrd for Panel<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<F: Real> Ord for Panel<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn c<F: Real>(x: f64) -> F {
    F::from_f64(x).unwrap()
}

fn gk15<F, G>(f: &mut G, a: F, b: F) -> Result<(Complex<F>, F)>
where
    F: Real,
    G: FnMut(F) -> Complex<F>,
{
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let mut eval = |x: F| -> Result<Complex<F>> {
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteIntegrand {
                at: x.to_f64().unwrap_or(f64::NAN),
            })
        }
    };
    let fc = eval(mid)?;
    let mut kron = fc * c::<F>(WGK[7]);
    let mut gauss = fc * c::<F>(WG[3]);
    let mut fv = [Complex::new(F::zero(), F::zero()); 15];
    fv[14] = fc;
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let f1 = eval(mid - dx)?;
        let f2 = eval(mid + dx)?;
        kron = kron + (f1 + f2) * c::<F>(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * c::<F>(WG[j / 2]);
        }
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
    }
    let mean = kron * c::<F>(0.5);
    let mut resasc = (fc - mean).norm() * c(WGK[7]);
    let mut resabs = fc.norm() * c(WGK[7]);
    for j in 0..7 {
        let w: F = c(WGK[j]);
        resasc = resasc + w * ((fv[2 * j] - mean).norm() + (fv[2 * j + 1] - mean).norm());
        resabs = resabs + w * (fv[2 * j].norm() + fv[2 * j + 1].norm());
    }
    let h = half.abs();
    resasc = resasc * h;
    resabs = resabs * h;
    let mut err = ((kron - gauss) * half).norm();
    if resasc > F::zero() && err > F::zero() {
        let scale = (c::<F>(200.0) * err / resasc).powf(c(1.5));
        err = resasc * if scale < F::one() { scale } else { F::one() };
    }
    let floor = c::<F>(50.0) * F::epsilon() * resabs;
    if err < floor {
        err = floor;
    }
    Ok((kron * half, err))
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of a complex-valued integrand on
/// `[a, b]`, bisecting the panel with the largest error estimate until the
/// total estimate drops below `max(rel_tol·|I|, abs_tol)`.
pub fn integrate_real<F, G>(mut f: G, a: F, b: F, s: &QuadSettings<F>) -> Result<QuadResult<F>>
where
    F: Real,
    G: FnMut(F) -> Complex<F>,
{
    if !(a < b) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy a < b (got {:?}, {:?})",
            a, b
        )));
    }
    let (v0, e0) = gk15(&mut f, a, b)?;
    let mut evals = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v0,
        error: e0,
    });
    let mut total = v0;
    let mut total_err = e0;
    let mut splits = 0;
    loop {
        let target = (s.rel_tol * total.norm()).max(s.abs_tol);
        if total_err <= target {
            break;
        }
        if splits >= s.max_subdivisions {
            return Err(Error::SubdivisionLimit {
                subdivisions: splits,
                value: Complex64::new(
                    total.re.to_f64().unwrap_or(f64::NAN),
                    total.im.to_f64().unwrap_or(f64::NAN),
                ),
                error_estimate: total_err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let m = (worst.a + worst.b) * c(0.5);
        if !(m > worst.a && m < worst.b) {
            // panel cannot be split any further in this precision
            return Err(Error::SubdivisionLimit {
                subdivisions: splits,
                value: Complex64::new(
                    total.re.to_f64().unwrap_or(f64::NAN),
                    total.im.to_f64().unwrap_or(f64::NAN),
                ),
                error_estimate: total_err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (v1, e1) = gk15(&mut f, worst.a, m)?;
        let (v2, e2) = gk15(&mut f, m, worst.b)?;
        evals += 30;
        splits += 1;
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.error + e1 + e2;
        heap.push(Panel {
            a: worst.a,
            b: m,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: m,
            b: worst.b,
            value: v2,
            error: e2,
        });
        if splits % 64 == 0 {
            // resum to keep the running totals free of drift
            total = heap
                .iter()
                .fold(Complex::new(F::zero(), F::zero()), |acc, p| acc + p.value);
            total_err = heap.iter().fold(F::zero(), |acc, p| acc + p.error);
        }
    }
    Ok(QuadResult {
        value: total,
        error: total_err,
        evals,
    })
}

/// Integrate over consecutive breakpoints `pts[0] < pts[1] < …`, summing
/// values and error estimates. Each piece gets the full tolerance.
pub fn integrate_pieces<F, G>(mut f: G, pts: &[F], s: &QuadSettings<F>) -> Result<QuadResult<F>>
where
    F: Real,
    G: FnMut(F) -> Complex<F>,
{
    let mut acc = QuadResult {
        value: Complex::new(F::zero(), F::zero()),
        error: F::zero(),
        evals: 0,
    };
    for w in pts.windows(2) {
        let r = integrate_real(&mut f, w[0], w[1], s)?;
        acc.value = acc.value + r.value;
        acc.error = acc.error + r.error;
        acc.evals += r.evals;
    }
    Ok(acc)
}

/// Limit value `c₀` with the size of the last Neville correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated<F = f64> {
    pub value: Complex<F>,
    pub estimate: F,
}

/// Richardson (polynomial) extrapolation of `g(ε) = c₀ + c₁ε + c₂ε² + …` to
/// `ε = 0` from the samples at `eps_seq`.
pub fn extrapolate_limit<F, G>(mut g: G, eps_seq: &[F]) -> Result<Extrapolated<F>>
where
    F: Real,
    G: FnMut(F) -> Result<Complex<F>>,
{
    if eps_seq.len() < 3 {
        return Err(Error::InvalidParameter(
            "extrapolation needs at least three step sizes".into(),
        ));
    }
    for w in eps_seq.windows(2) {
        let r = w[1] / w[0];
        if !(w[0] > F::zero() && r > F::zero() && r < F::one()) {
            return Err(Error::InvalidParameter(
                "step sizes must be positive and strictly decreasing".into(),
            ));
        }
    }
    let n = eps_seq.len();
    let mut table: Vec<Complex<F>> = Vec::with_capacity(n);
    let mut diag: Vec<Complex<F>> = Vec::with_capacity(n);
    for (i, &e) in eps_seq.iter().enumerate() {
        table.push(g(e)?);
        // Neville: table[j] becomes the value at 0 of the polynomial through
        // samples j..=i.
        for j in (0..i).rev() {
            let ej = eps_seq[j];
            table[j] = (table[j + 1] * ej - table[j] * e) / (ej - e);
        }
        diag.push(table[0]);
    }
    let diffs: Vec<F> = diag.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let last = diag[n - 1];
    let est = diffs[diffs.len() - 1];
    let scale = last.norm().max(F::epsilon());
    if diffs.len() >= 2 {
        let prev = diffs[diffs.len() - 2];
        let noise: F = c::<F>(1e-9) * scale;
        if est > prev && est > noise {
            return Err(Error::DivergentSequence);
        }
    }
    Ok(Extrapolated {
        value: last,
        estimate: est,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let s = QuadSettings::default();
        let r = integrate_real(|x: f64| Complex::new(x.powi(5) - 2.0 * x, x * x), 0.0, 2.0, &s).unwrap();
        assert!((r.value - Complex::new(64.0 / 6.0 - 4.0, 8.0 / 3.0)).norm() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_converges() {
        let s = QuadSettings::default();
        let r = integrate_real(|x: f64| Complex::new(1.0 / x.sqrt(), 0.0), 0.0, 1.0, &s).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9, "{}", r.value);
        assert!(r.error < 1e-8);
    }

    #[test]
    fn works_in_f32() {
        let s = QuadSettings::<f32>::default();
        let r = integrate_real(|x: f32| Complex::new(x.cos(), 0.0), 0.0, 1.0, &s).unwrap();
        assert!((r.value.re - 1f32.sin()).abs() < 1e-5);
    }

    #[test]
    fn pieces_sum() {
        let s = QuadSettings::default();
        let f = |x: f64| Complex::new((-x).exp(), 0.0);
        let r = integrate_pieces(f, &[0.0, 0.5, 1.0, 3.0], &s).unwrap();
        assert!((r.value.re - (1.0 - (-3f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        let s = QuadSettings::default();
        assert!(integrate_real(|_x: f64| Complex::new(1.0, 0.0), 1.0, 0.0, &s).is_err());
        assert!(matches!(
            integrate_real(|x: f64| Complex::new(1.0 / (x - 0.5), 0.0), 0.0, 1.0, &s),
            Err(Error::NonFiniteIntegrand { .. })
        ));
        assert!(QuadSettings::new(0.0, 1e-10, 10).is_err());
    }

    #[test]
    fn richardson_recovers_limit() {
        let g = |e: f64| Ok(Complex::new(2.0 + 3.0 * e - e * e + 0.5 * e * e * e, -1.0 + e));
        let r = extrapolate_limit(g, &[0.1, 0.05, 0.025, 0.0125]).unwrap();
        assert!((r.value - Complex::new(2.0, -1.0)).norm() < 1e-12);
        assert!(extrapolate_limit(g, &[0.1, 0.05]).is_err());
        assert!(extrapolate_limit(g, &[0.1, 0.2, 0.05]).is_err());
    }
}
