//! Parsing of gluing matrices and coefficient rings from command-line text.

use std::fmt;

use torus_bundle::cohomology::CoefficientRing;
use torus_bundle::GluingMatrix;

/// Bad user input; the binary exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidInput(pub String);

impl fmt::Display for InvalidInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidInput {}

fn invalid(msg: impl Into<String>) -> InvalidInput {
    InvalidInput(msg.into())
}

/// `α,γ,β,δ` (row-major θ) or the JSON array `[α, γ, β, δ]`.
pub fn parse_theta(text: &str) -> Result<GluingMatrix, InvalidInput> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(t);
    let entries: Vec<i64> = inner
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| invalid(format!("cannot parse θ from {t:?}: {e}")))?;
    let [a, g, b, d] = entries[..] else {
        return Err(invalid(format!(
            "θ needs four entries α,γ,β,δ, got {} in {t:?}",
            entries.len()
        )));
    };
    GluingMatrix::new(a, g, b, d).map_err(|e| invalid(e.to_string()))
}

fn prime_ring(p: i64) -> Result<CoefficientRing, InvalidInput> {
    CoefficientRing::mod_p(p).map_err(|e| invalid(e.to_string()))
}

/// Rings from repeated `--ring` values (each possibly comma-separated) and
/// `--p` primes. `Zp` stands for the primes given with `--p`. Defaults to
/// `Z, Z2`; duplicates are dropped, first occurrence wins.
pub fn parse_rings(specs: &[String], primes: &[i64]) -> Result<Vec<CoefficientRing>, InvalidInput> {
    let mut out = Vec::new();
    let mut saw_zp = false;
    for spec in specs.iter().flat_map(|s| s.split(',')) {
        let s = spec.trim();
        match s {
            "Z" => out.push(CoefficientRing::Integers),
            "Zp" => {
                if primes.is_empty() {
                    return Err(invalid("--ring Zp needs --p <prime>"));
                }
                saw_zp = true;
                for &p in primes {
                    out.push(prime_ring(p)?);
                }
            }
            _ => {
                let p = s
                    .strip_prefix('Z')
                    .and_then(|n| n.parse::<i64>().ok())
                    .ok_or_else(|| invalid(format!("unknown ring {s:?}; use Z, Z<prime> or Zp")))?;
                out.push(prime_ring(p)?);
            }
        }
    }
    if !saw_zp {
        for &p in primes {
            out.push(prime_ring(p)?);
        }
    }
    if out.is_empty() {
        out = vec![CoefficientRing::Integers, CoefficientRing::ModP { p: 2 }];
    }
    let mut seen = Vec::new();
    out.retain(|r| {
        let fresh = !seen.contains(r);
        seen.push(*r);
        fresh
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_forms() {
        assert_eq!(parse_theta("2,1,1,1").unwrap(), GluingMatrix::new(2, 1, 1, 1).unwrap());
        assert_eq!(parse_theta(" [0, 1, 1, 0] ").unwrap(), GluingMatrix::new(0, 1, 1, 0).unwrap());
        assert!(parse_theta("1,2,3").is_err());
        assert!(parse_theta("1,x,0,1").is_err());
    }

    #[test]
    fn determinant_is_named() {
        let e = parse_theta("1,2,3,4").unwrap_err();
        assert!(e.0.contains("-2"), "{e}");
    }

    #[test]
    fn rings() {
        let z = CoefficientRing::Integers;
        let m = |p| CoefficientRing::mod_p(p).unwrap();
        assert_eq!(parse_rings(&[], &[]).unwrap(), vec![z, m(2)]);
        assert_eq!(parse_rings(&["Z,Z2,Z3".into()], &[]).unwrap(), vec![z, m(2), m(3)]);
        assert_eq!(parse_rings(&["Z".into(), "Zp".into()], &[7]).unwrap(), vec![z, m(7)]);
        assert_eq!(parse_rings(&["Z3".into(), "Z3".into()], &[]).unwrap(), vec![m(3)]);
        assert!(parse_rings(&["Z4".into()], &[]).is_err());
        assert!(parse_rings(&["Zp".into()], &[]).is_err());
        assert!(parse_rings(&["Q".into()], &[]).is_err());
    }
}
