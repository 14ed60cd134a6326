//! The `re`, `imj`, `re+imj` literal syntax used by every parameter flag.

use num_complex::Complex64 as C;

/// Parse `1.5`, `-2e-3`, `0.3j`, `1.2+0.5j`, `1-2.5e-1j`.
pub fn parse_complex(s: &str) -> Result<C, String> {
    let t = s.trim();
    let bad = || format!("invalid complex literal '{}' (expected re, imj or re+imj)", s);
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64, String> {
        let v: f64 = x.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = t.strip_suffix('j') else {
        return Ok(C::new(num(t)?, 0.0));
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let im_of = |x: &str| -> Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => num(x),
        }
    };
    match split {
        Some(i) => Ok(C::new(num(&body[..i])?, im_of(&body[i..])?)),
        None => Ok(C::new(0.0, im_of(body)?)),
    }
}

fn fmt_f64(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "NaN".into())
}

/// Inverse of [`parse_complex`]; real values print without the `j` part.
pub fn format_complex(z: C) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else if z.im < 0.0 || z.im.is_sign_negative() {
        format!("{}{}j", fmt_f64(z.re), fmt_f64(z.im))
    } else {
        format!("{}+{}j", fmt_f64(z.re), fmt_f64(z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("1.5").unwrap(), C::new(1.5, 0.0));
        assert_eq!(parse_complex("-2e-3").unwrap(), C::new(-2e-3, 0.0));
        assert_eq!(parse_complex("0.3j").unwrap(), C::new(0.0, 0.3));
        assert_eq!(parse_complex("-j").unwrap(), C::new(0.0, -1.0));
        assert_eq!(parse_complex("1.2+0.5j").unwrap(), C::new(1.2, 0.5));
        assert_eq!(parse_complex("1-2.5e-1j").unwrap(), C::new(1.0, -0.25));
        assert_eq!(parse_complex("1e-3-4E+2j").unwrap(), C::new(1e-3, -400.0));
        for bad in ["", "abc", "1+", "1+2", "inf", "1+xj", "nanj"] {
            assert!(parse_complex(bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn format_round_trip() {
        for z in [
            C::new(1.0, 0.0),
            C::new(-0.25, 3e-9),
            C::new(2.5, -1.0),
            C::new(0.0, 1e300),
        ] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }
}
