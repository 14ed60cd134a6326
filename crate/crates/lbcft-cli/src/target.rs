//! Evaluation targets and their parameter schemas.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_complex::Complex64 as C;

use lbcft::specialfn::{double_gamma, double_sine};
use lbcft::structure_constants::{
    boundary_3pt, bulk_boundary, fusion_kernel, g_hos, h_pt, j_hos, j_pt, modular_kernel, r_fzz, BulkBoundaryArgs,
    Evaluation, KernelArgs, ReflectionArgs, ThreePointArgs,
};
use lbcft::{LiouvilleParams, QuadSettings};

/// Relative error attached to closed-form values (special-function accuracy).
pub const CLOSED_FORM_REL_ERR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Hpt,
    Ghos,
    Rfzz,
    Jpt,
    Jhos,
    Dgamma,
    Dsine,
    Fusion,
    Modular,
    Corr3,
    Corrbb,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Hpt => "hpt",
            Target::Ghos => "ghos",
            Target::Rfzz => "rfzz",
            Target::Jpt => "jpt",
            Target::Jhos => "jhos",
            Target::Dgamma => "dgamma",
            Target::Dsine => "dsine",
            Target::Fusion => "fusion",
            Target::Modular => "modular",
            Target::Corr3 => "corr3",
            Target::Corrbb => "corrbb",
        }
    }

    /// Parameter keys in schema order, and whether each is required.
    pub fn schema(self) -> Vec<(&'static str, bool)> {
        let req = |ks: &[&'static str]| ks.iter().map(|k| (*k, true)).collect::<Vec<_>>();
        let three = ["beta1", "beta2", "beta3", "sigma1", "sigma2", "sigma3"];
        match self {
            Target::Hpt | Target::Jpt => req(&three),
            Target::Corr3 => {
                let mut v = req(&three);
                v.extend([("s1", true), ("s2", true), ("s3", false)]);
                v
            }
            Target::Ghos | Target::Jhos => req(&["alpha", "beta", "sigma"]),
            Target::Corrbb => req(&["alpha", "beta", "sigma", "z", "s0"]),
            Target::Rfzz => req(&["beta", "sigma1", "sigma2"]),
            Target::Dgamma | Target::Dsine => req(&["x"]),
            Target::Fusion => req(&[
                "alpha_prime1",
                "alpha_prime2",
                "alpha_prime3",
                "alpha_prime4",
                "p",
                "p_prime",
            ]),
            Target::Modular => req(&["alpha_prime", "p", "p_prime"]),
        }
    }

    pub fn accepts(self, key: &str) -> bool {
        self.schema().iter().any(|(k, _)| *k == key)
    }
}

/// Assign the values of one list flag (`--beta a,b,c`) to schema keys:
/// `name` when the schema has it, otherwise `name1`, `name2`, ...
pub fn assign_flag(target: Target, flag: &str, values: &[C], out: &mut BTreeMap<String, C>) -> Result<(), String> {
    let key = flag.replace('-', "_");
    if target.accepts(&key) {
        if values.len() != 1 {
            return Err(format!("--{} takes one value for {}", flag, target.name()));
        }
        out.insert(key, values[0]);
        return Ok(());
    }
    let indexed: Vec<&str> = target
        .schema()
        .into_iter()
        .map(|(k, _)| k)
        .filter(|k| {
            k.strip_prefix(key.as_str())
                .is_some_and(|r| r.parse::<u8>().is_ok_and(|i| i > 0))
        })
        .collect();
    if indexed.is_empty() {
        return Err(format!("--{} is not a parameter of {}", flag, target.name()));
    }
    if values.len() > indexed.len() {
        return Err(format!(
            "--{} takes at most {} values for {}",
            flag,
            indexed.len(),
            target.name()
        ));
    }
    for (k, v) in indexed.iter().zip(values) {
        out.insert(k.to_string(), *v);
    }
    Ok(())
}

/// Check that every required key is present and nothing unknown is.
pub fn check_params(target: Target, params: &BTreeMap<String, C>) -> Result<(), String> {
    for k in params.keys() {
        if !target.accepts(k) {
            return Err(format!("'{}' is not a parameter of {}", k, target.name()));
        }
    }
    let missing: Vec<&str> = target
        .schema()
        .into_iter()
        .filter(|(k, req)| *req && !params.contains_key(*k))
        .map(|(k, _)| k)
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(format!("{} needs {}", target.name(), missing.join(", ")))
    }
}

fn real(params: &BTreeMap<String, C>, k: &str) -> lbcft::Result<f64> {
    let v = params[k];
    if v.im != 0.0 {
        return Err(lbcft::Error::InvalidParameter(format!("{} must be real, got {}", k, v)));
    }
    Ok(v.re)
}

fn closed(v: lbcft::Result<C>) -> lbcft::Result<Evaluation> {
    v.map(|value| Evaluation {
        value,
        err_est: CLOSED_FORM_REL_ERR * value.norm(),
    })
}

/// Evaluate `target`; `params` must have passed [`check_params`].
pub fn evaluate(
    target: Target,
    params: &BTreeMap<String, C>,
    p: &LiouvilleParams,
    s: &QuadSettings,
) -> lbcft::Result<Evaluation> {
    let g = |k: &str| params[k];
    let three = || {
        ThreePointArgs::new(
            [g("beta1"), g("beta2"), g("beta3")],
            [g("sigma1"), g("sigma2"), g("sigma3")],
        )
    };
    let bb = || BulkBoundaryArgs::new(g("alpha"), g("beta"), g("sigma"));
    match target {
        Target::Hpt => h_pt(&three(), p, s),
        Target::Jpt => j_pt(&three(), p, s),
        Target::Ghos => g_hos(&bb(), p, s),
        Target::Jhos => j_hos(&bb(), p, s),
        Target::Rfzz => closed(r_fzz(&ReflectionArgs::new(g("beta"), g("sigma1"), g("sigma2")), p)),
        Target::Dgamma => closed(double_gamma(g("x"), p)),
        Target::Dsine => closed(double_sine(g("x"), p)),
        Target::Fusion => {
            let k = KernelArgs {
                alpha_primes: (1..=4).map(|i| g(&format!("alpha_prime{}", i))).collect(),
                p: g("p"),
                p_prime: g("p_prime"),
            };
            fusion_kernel(&k, p, s)
        }
        Target::Modular => {
            let k = KernelArgs {
                alpha_primes: vec![g("alpha_prime")],
                p: g("p"),
                p_prime: g("p_prime"),
            };
            modular_kernel(&k, p, s)
        }
        Target::Corr3 => {
            let s3 = if params.contains_key("s3") {
                Some(real(params, "s3")?)
            } else {
                None
            };
            boundary_3pt(real(params, "s1")?, real(params, "s2")?, s3, &three(), p, s)
        }
        Target::Corrbb => bulk_boundary(g("z"), real(params, "s0")?, &bb(), p, s),
    }
    .and_then(|e| {
        if e.value.re.is_finite() && e.value.im.is_finite() && e.err_est.is_finite() {
            Ok(e)
        } else {
            Err(lbcft::Error::Domain(format!("{} is not finite here", target.name())))
        }
    })
}
