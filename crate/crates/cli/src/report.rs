//! The per-matrix report and its text and JSON renderings.
//!
//! JSON schema (version 1):
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "theta": [α, γ, β, δ],
//!   "det": ±1,
//!   "rank_theta_minus_identity": 0..2,
//!   "derivation": { "case_label", "rank", "det", "gcd_beta_gamma",
//!                   "gcd_beta_gamma_2", "rank_one": null | {p, q, ...} },
//!   "rings": [ {
//!     "ring": "Z" | "Z2" | "Z3" | ...,
//!     "groups": [ { "degree", "invariant_factors": [..], "generators": [[..], ..] } x4 ],
//!     "presentation": null | {
//!       "family", "case_number", "case_label",
//!       "generators": [ { "name", "degree", "order", "coords" } ],
//!       "relations": ["ζ1^2 = 0", ..],
//!       "structure_constants": { "m": [M1, M2, M3], "n": N }
//!     }
//!   } ],
//!   "verification": [ { "name", "passed", "detail"? } ]
//! }
//! ```
//!
//! Invariant factors use 0 for a free summand; over `Z/p` every factor is `p`.
//! `order` 0 means infinite order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use torus_bundle::cohomology::{
    cohomology_groups, derive_presentation_data, CoefficientRing, DerivationData,
};
use torus_bundle::cup_product::{ring_presentation, CupTables, PresentationFamily, RingPresentation};
use torus_bundle::verify::check_theta;
use torus_bundle::GluingMatrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub theta: [i64; 4],
    pub det: i64,
    pub rank_theta_minus_identity: usize,
    pub derivation: DerivationData,
    pub rings: Vec<RingSection>,
    pub verification: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSection {
    pub ring: String,
    pub groups: Vec<GroupReport>,
    pub presentation: Option<PresentationReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub degree: usize,
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<Vec<i64>>,
    /// Human-readable form such as `Z + Z2`.
    pub display: String,
    /// Generator cochains such as `-y1*+y2*`.
    pub generator_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub name: String,
    pub degree: usize,
    pub order: i64,
    pub coords: Vec<i64>,
    pub cochain: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub family: PresentationFamily,
    pub case_number: u8,
    pub case_label: String,
    pub generators: Vec<GeneratorReport>,
    pub relations: Vec<String>,
    pub structure_constants: CupTables,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn case_label(p: &RingPresentation) -> String {
    match p.family {
        PresentationFamily::Integral => p.derivation.case_label.to_string(),
        PresentationFamily::ModTwo => format!("mod 2 case {} of 6 (by θ mod 2)", p.case_number),
        PresentationFamily::ModOdd => format!("mod p case {} of 6", p.case_number),
    }
}

fn presentation_report(p: &RingPresentation) -> PresentationReport {
    PresentationReport {
        family: p.family,
        case_number: p.case_number,
        case_label: case_label(p),
        generators: p
            .generators
            .iter()
            .map(|g| GeneratorReport {
                name: g.name.clone(),
                degree: g.degree,
                order: g.order,
                coords: g.cochain.coords.clone(),
                cochain: g.cochain.to_string(),
            })
            .collect(),
        relations: p.relations.iter().map(|r| r.text.clone()).collect(),
        structure_constants: p.tables,
    }
}

/// Runs the whole pipeline on `θ` for each ring. Internal failures become
/// failed checks, so a report is always produced for a valid matrix.
pub fn build_report(theta: &GluingMatrix, rings: &[CoefficientRing]) -> anyhow::Result<Report> {
    let outcome = check_theta(theta);
    let mut verification: Vec<Check> = outcome
        .checks
        .iter()
        .map(|c| Check {
            name: c.invariant.name().to_string(),
            passed: c.passed,
            detail: c.detail.clone(),
        })
        .collect();
    let mut sections = Vec::new();
    for &ring in rings {
        let coh = cohomology_groups(theta, ring)?;
        let groups = coh
            .groups
            .iter()
            .map(|g| GroupReport {
                degree: g.degree,
                invariant_factors: g.invariant_factors.clone(),
                generators: g.generators.iter().map(|c| c.coords.clone()).collect(),
                display: g.to_string(),
                generator_names: g.generators.iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        let pres = ring_presentation(theta, ring);
        verification.push(Check {
            name: format!("ring_presentation[{ring}]"),
            passed: pres.is_ok(),
            detail: pres.as_ref().err().map(|e| e.to_string()),
        });
        sections.push(RingSection {
            ring: ring.to_string(),
            groups,
            presentation: pres.ok().as_ref().map(presentation_report),
        });
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        theta: theta.row_major(),
        det: theta.det(),
        rank_theta_minus_identity: theta.rank_minus_identity(),
        derivation: derive_presentation_data(theta)?,
        rings: sections,
        verification,
    })
}

fn order_text(o: i64) -> String {
    if o == 0 {
        "∞".into()
    } else {
        o.to_string()
    }
}

pub fn render_text(r: &Report) -> String {
    let [a, g, b, d] = r.theta;
    let mut s = String::new();
    let _ = writeln!(s, "θ = [[{a}, {g}], [{b}, {d}]]   (input order α,γ,β,δ = {a},{g},{b},{d})");
    let _ = writeln!(
        s,
        "det θ = {}, rank(θ - I) = {}, {}",
        r.det, r.rank_theta_minus_identity, r.derivation.case_label
    );
    if let Some(ro) = &r.derivation.rank_one {
        let _ = write!(
            s,
            "rank-one data: p = {}, q = {}, r' = {}, s' = {}, k = {}, ℓ = {}",
            ro.p, ro.q, ro.r_prime, ro.s_prime, ro.k, ro.ell
        );
        if let Some(m) = ro.m {
            let _ = write!(s, ", m = {m}");
        }
        s.push('\n');
    }
    for sec in &r.rings {
        let _ = writeln!(s, "\nH*(G; {})", sec.ring);
        for gr in &sec.groups {
            let _ = write!(s, "  H^{} = {}", gr.degree, gr.display);
            if !gr.generator_names.is_empty() {
                let _ = write!(s, "   generated by {}", gr.generator_names.join(", "));
            }
            s.push('\n');
        }
        match &sec.presentation {
            Some(p) => {
                let _ = writeln!(s, "  ring structure: {}", p.case_label);
                for g in &p.generators {
                    let _ = writeln!(
                        s,
                        "    {} = [{}]   degree {}, order {}",
                        g.name,
                        g.cochain,
                        g.degree,
                        order_text(g.order)
                    );
                }
                for rel in &p.relations {
                    let _ = writeln!(s, "    {rel}");
                }
            }
            None => {
                let _ = writeln!(s, "  ring structure: unavailable (see verification)");
            }
        }
    }
    let _ = writeln!(s, "\nverification:");
    for c in &r.verification {
        let status = if c.passed { "pass" } else { "FAIL" };
        let _ = write!(s, "  {status}  {}", c.name);
        if let Some(d) = &c.detail {
            let _ = write!(s, ": {d}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_report() {
        let r = build_report(&GluingMatrix::identity(), &[CoefficientRing::Integers]).unwrap();
        assert!(r.passed());
        let f: Vec<Vec<i64>> = r.rings[0].groups.iter().map(|g| g.invariant_factors.clone()).collect();
        assert_eq!(f, vec![vec![0], vec![0; 3], vec![0; 3], vec![0]]);
        let text = render_text(&r);
        assert!(text.contains("integral case 1 of 6"), "{text}");
        assert!(text.contains("ζ1^2 = 0"));
    }

    #[test]
    fn json_round_trip() {
        let r = build_report(
            &GluingMatrix::new(0, 1, 1, 0).unwrap(),
            &[CoefficientRing::Integers, CoefficientRing::mod_p(3).unwrap()],
        )
        .unwrap();
        let once = r.to_json();
        let back = Report::from_json(&once).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), once);
        assert!(once.contains("\"schema_version\":1"));
    }
}
