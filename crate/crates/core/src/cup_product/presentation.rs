//! Generators and relations for `H^*(G; R)`, checked against the cup
//! product tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cup_cochains, cup_tables, s_closed_forms, CupTables};
use crate::cohomology::{
    cohomology_groups, derive_presentation_data, Cochain, CoefficientRing, Cohomology,
    DerivationData, COCHAIN_DIMS,
};
use crate::error::{Error, Result};
use crate::group_ring::GluingMatrix;
use crate::int::{checked_add, checked_mul, exact_div, exact_sqrt, inv_mod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationFamily {
    Integral,
    /// Keyed by `θ mod 2`, one of the six elements of `GL(2, Z/2)`.
    ModTwo,
    ModOdd,
}

impl fmt::Display for PresentationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationFamily::Integral => write!(f, "integral"),
            PresentationFamily::ModTwo => write!(f, "mod 2"),
            PresentationFamily::ModOdd => write!(f, "mod p"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
    /// Additive order of the class; 0 means infinite.
    pub order: i64,
    pub cochain: Cochain,
}

/// `coeff` times the product of the listed generators (by index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub factors: Vec<usize>,
}

/// `Σ lhs = Σ rhs`; an empty side is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    pub text: String,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub theta: GluingMatrix,
    pub ring: CoefficientRing,
    pub family: PresentationFamily,
    pub case_number: u8,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub derivation: DerivationData,
    /// Structure constants over `ring`.
    pub tables: CupTables,
    pub cohomology: Cohomology,
}

fn monomial_text(names: &[&str], factors: &[usize]) -> String {
    match factors {
        [a, b] if a == b => format!("{}^2", names[*a]),
        _ => factors.iter().map(|&i| names[i]).collect(),
    }
}

fn side_text(names: &[&str], terms: &[Term]) -> String {
    let mut out = String::new();
    for t in terms.iter().filter(|t| t.coeff != 0) {
        let mono = monomial_text(names, &t.factors);
        let mag = t.coeff.unsigned_abs();
        let body = if mag == 1 { mono } else { format!("{mag}{mono}") };
        match (out.is_empty(), t.coeff < 0) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Builder {
    ring: CoefficientRing,
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

impl Builder {
    fn new(ring: CoefficientRing) -> Self {
        Self {
            ring,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    fn generator(&mut self, name: &str, degree: usize, coords: Vec<i64>, order: i64) -> Result<usize> {
        let order = match self.ring {
            CoefficientRing::Integers => order,
            CoefficientRing::ModP { p } => p,
        };
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
            order,
            cochain: Cochain::new(degree, coords, self.ring)?,
        });
        Ok(self.generators.len() - 1)
    }

    fn relation(&mut self, lhs: &[(i64, &[usize])], rhs: &[(i64, &[usize])]) {
        let conv = |side: &[(i64, &[usize])]| -> Vec<Term> {
            side.iter()
                .map(|&(c, f)| Term {
                    coeff: self.ring.reduce(c),
                    factors: f.to_vec(),
                })
                .filter(|t| t.coeff != 0)
                .collect()
        };
        let (lhs, rhs) = (conv(lhs), conv(rhs));
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let text = format!("{} = {}", side_text(&names, &lhs), side_text(&names, &rhs));
        self.relations.push(Relation { lhs, rhs, text });
    }

    /// `g = 0` for every listed monomial.
    fn vanish(&mut self, monomials: &[&[usize]]) {
        for m in monomials {
            self.relation(&[(1, m)], &[]);
        }
    }
}

fn vec3(a: i64, b: i64, c: i64) -> Vec<i64> {
    vec![a, b, c]
}

/// Builds the presentation for `θ` over `ring` and verifies it.
pub fn ring_presentation(theta: &GluingMatrix, ring: CoefficientRing) -> Result<RingPresentation> {
    let derivation = derive_presentation_data(theta)?;
    let cohomology = cohomology_groups(theta, ring)?;
    let tables = cup_tables(theta)?.reduced(ring);
    let mut b = Builder::new(ring);
    let (family, case_number) = match ring {
        CoefficientRing::Integers => (
            PresentationFamily::Integral,
            integral(&mut b, theta, &derivation, &cohomology)?,
        ),
        CoefficientRing::ModP { p: 2 } => (PresentationFamily::ModTwo, mod_two(&mut b, theta)?),
        CoefficientRing::ModP { p } => (
            PresentationFamily::ModOdd,
            mod_odd(&mut b, theta, p, &cohomology, &tables)?,
        ),
    };
    let out = RingPresentation {
        theta: *theta,
        ring,
        family,
        case_number,
        generators: b.generators,
        relations: b.relations,
        derivation,
        tables,
        cohomology,
    };
    out.verify()?;
    Ok(out)
}

/// Torsion generators of `H^2` named `ξ1`, `ξ2` by their position in the
/// Smith form `Z/c1 ⊕ Z/c2`, where a factor `c1 = 1` is absent.
fn torsion_generators(b: &mut Builder, coh: &Cohomology) -> Result<Vec<(usize, i64)>> {
    let h2 = &coh.groups[2];
    let tors: Vec<(Cochain, i64)> = h2
        .generators
        .iter()
        .zip(&h2.invariant_factors)
        .filter(|(_, &d)| d > 1)
        .map(|(g, &d)| (g.clone(), d))
        .collect();
    let first = 3 - tors.len();
    let mut out = Vec::new();
    for (i, (g, d)) in tors.into_iter().enumerate() {
        let name = format!("ξ{}", first + i);
        out.push((b.generator(&name, 2, g.coords, d)?, d));
    }
    Ok(out)
}

fn integral(
    b: &mut Builder,
    theta: &GluingMatrix,
    d: &DerivationData,
    coh: &Cohomology,
) -> Result<u8> {
    let case = d.case_label.number();
    let ro = d.rank_one;
    let missing = || Error::DegenerateClassification("rank-one data missing".into());
    match case {
        1 => {
            let z: Vec<usize> = (0..3)
                .map(|i| {
                    let mut c = vec![0; 3];
                    c[i] = 1;
                    b.generator(&format!("ζ{}", i + 1), 1, c, 0)
                })
                .collect::<Result<_>>()?;
            b.vanish(&[&[z[0], z[0]], &[z[1], z[1]], &[z[2], z[2]]]);
        }
        2 => {
            let r = ro.ok_or_else(missing)?;
            let z1 = b.generator("ζ1", 1, vec3(r.q, r.p, 0), 0)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), 0)?;
            let x2 = b.generator("ξ2", 2, vec3(-r.k, r.ell, 0), 0)?;
            let x3 = b.generator("ξ3", 2, vec3(0, 0, 1), 0)?;
            let (al, be, ga) = (theta.alpha(), theta.beta(), theta.gamma());
            let ratio = exact_div(be.abs(), d.gcd_beta_gamma, "|β| / gcd(β, γ)")?;
            let root = exact_sqrt(ratio).ok_or_else(|| {
                Error::PresentationMismatch(format!("|β| / gcd(β, γ) = {ratio} is not a square"))
            })?;
            let c = exact_div(
                checked_mul(root, 1 - al - al * ga - be * ga)?,
                2,
                "ζ1ξ3 coefficient",
            )?;
            b.vanish(&[&[z1, z1], &[z2, z2]]);
            b.relation(&[(d.gcd_beta_gamma, &[z1, z2])], &[]);
            b.vanish(&[&[z2, x2]]);
            b.relation(&[(1, &[z2, x3])], &[(1, &[z1, x2])]);
            b.relation(&[(1, &[z1, x3])], &[(c, &[z1, x2])]);
            b.vanish(&[&[x2, x2], &[x3, x3], &[x2, x3]]);
        }
        3 => {
            let r = ro.ok_or_else(missing)?;
            let z1 = b.generator("ζ1", 1, vec3(-r.s_prime, r.r_prime, 0), 0)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), 0)?;
            let x = b.generator("ξ", 2, vec3(-r.k, r.ell, 0), 0)?;
            b.vanish(&[&[z1, z1], &[z2, z2]]);
            b.relation(&[(1, &[z1, z2])], &[(2, &[x])]);
            b.vanish(&[&[z2, x]]);
            b.relation(&[(2, &[z1, x])], &[]);
            b.vanish(&[&[x, x]]);
        }
        4 => {
            let r = ro.ok_or_else(missing)?;
            let mp = r.m_prime.ok_or_else(|| {
                Error::DegenerateClassification("m is odd although gcd(β, γ, 2) = 2".into())
            })?;
            let z1 = b.generator(
                "ζ1",
                1,
                vec3(
                    exact_div(-r.s_prime, 2, "s'/2")?,
                    exact_div(r.r_prime, 2, "r'/2")?,
                    0,
                ),
                0,
            )?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), 0)?;
            let x1 = b.generator("ξ1", 2, vec3(r.q, r.p, 0), 2)?;
            let x2 = b.generator("ξ2", 2, vec3(-r.k, r.ell, 0), 0)?;
            let c = exact_div(r.k * r.r_prime - r.ell * r.s_prime, 2, "(k r' - l s')/2")?;
            b.vanish(&[&[z1, z1], &[z2, z2]]);
            b.relation(&[(1, &[z1, z2])], &[(mp, &[x1]), (1, &[x2])]);
            b.relation(&[(2, &[x1])], &[]);
            b.relation(&[(1, &[z1, x2])], &[(c, &[z1, x1])]);
            b.vanish(&[&[z2, x1], &[z2, x2], &[x1, x1], &[x2, x2], &[x1, x2]]);
        }
        5 | 6 => {
            let z = b.generator("ζ", 1, vec3(0, 0, 1), 0)?;
            let tors = torsion_generators(b, coh)?;
            b.vanish(&[&[z, z]]);
            for &(x, c) in &tors {
                b.relation(&[(c, &[x])], &[]);
            }
            for &(x, _) in &tors {
                b.vanish(&[&[z, x]]);
            }
            let top = if case == 5 {
                b.generator("ξ3", 2, vec3(0, 0, 1), 0)?
            } else {
                let chi = b.generator("χ", 3, vec![1], 2)?;
                b.relation(&[(2, &[chi])], &[]);
                chi
            };
            for &(x, _) in &tors {
                b.vanish(&[&[x, x], &[x, top]]);
            }
            if tors.len() == 2 {
                b.vanish(&[&[tors[0].0, tors[1].0]]);
            }
            b.vanish(&[&[top, top]]);
            if case == 6 {
                b.vanish(&[&[z, top]]);
            }
        }
        _ => unreachable!(),
    }
    Ok(case)
}

/// Position of `θ mod 2` in `I, [[0,1],[1,0]], [[1,1],[1,0]], [[1,0],[1,1]],
/// [[1,1],[0,1]], [[0,1],[1,1]]` (row-major), counted from 1.
pub(crate) fn mod_two_class(theta: &GluingMatrix) -> u8 {
    let [a, g, be, d] = theta.row_major().map(|x| x.rem_euclid(2));
    match (a, g, be, d) {
        (1, 0, 0, 1) => 1,
        (0, 1, 1, 0) => 2,
        (1, 1, 1, 0) => 3,
        (1, 0, 1, 1) => 4,
        (1, 1, 0, 1) => 5,
        (0, 1, 1, 1) => 6,
        _ => unreachable!("θ is invertible mod 2"),
    }
}

fn mod_two(b: &mut Builder, theta: &GluingMatrix) -> Result<u8> {
    let class = mod_two_class(theta);
    let (al, be, ga, de) = (theta.alpha(), theta.beta(), theta.gamma(), theta.delta());
    let (m1, n1, m2, n2) = theta.quadruple();
    let (s_ag, s_bd) = s_closed_forms(theta)?;
    let half = |x: i64, what: &str| exact_div(x, 2, what);
    match class {
        1 => {
            let z1 = b.generator("ζ1", 1, vec3(1, 0, 0), 2)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 1, 0), 2)?;
            let z3 = b.generator("ζ3", 1, vec3(0, 0, 1), 2)?;
            b.relation(
                &[(1, &[z1, z1])],
                &[(half(1 + m1, "(1+m1)/2")?, &[z1, z3]), (half(m2, "m2/2")?, &[z2, z3])],
            );
            b.relation(
                &[(1, &[z2, z2])],
                &[
                    (half(n1, "n1/2")?, &[z1, z3]),
                    (1 + half(n2 - 1, "(n2-1)/2")?, &[z2, z3]),
                ],
            );
            b.vanish(&[&[z3, z3]]);
        }
        2 => {
            let z1 = b.generator("ζ1", 1, vec3(1, 1, 0), 2)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), 2)?;
            let x1 = b.generator("ξ1", 2, vec3(1, 0, 0), 2)?;
            let x2 = b.generator("ξ2", 2, vec3(0, 0, 1), 2)?;
            let c = 1 + half(al + de + m2 + n1, "(α+δ+m2+n1)/2")?;
            b.relation(&[(1, &[z1, z1])], &[(c, &[x1])]);
            b.vanish(&[&[z2, z2], &[z1, z2]]);
            b.relation(&[(1, &[z1, x1])], &[(1, &[z2, x2])]);
            b.relation(&[(1, &[z1, x2])], &[(s_ag + s_bd, &[z1, x1])]);
            b.vanish(&[&[x1, x1], &[x2, x2], &[x1, x2]]);
        }
        3 | 6 => {
            let z = b.generator("ζ", 1, vec3(0, 0, 1), 2)?;
            let x = b.generator("ξ", 2, vec3(0, 0, 1), 2)?;
            b.vanish(&[&[z, z], &[x, x]]);
        }
        4 | 5 => {
            let (zeta, xi, coeff, s) = if class == 4 {
                (vec3(1, 0, 0), vec3(0, 1, 0), half(ga, "γ/2")?, s_ag)
            } else {
                (vec3(0, 1, 0), vec3(1, 0, 0), half(be, "β/2")?, s_bd)
            };
            let z1 = b.generator("ζ1", 1, zeta, 2)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), 2)?;
            let x1 = b.generator("ξ1", 2, xi, 2)?;
            let x2 = b.generator("ξ2", 2, vec3(0, 0, 1), 2)?;
            b.relation(&[(1, &[z1, z1])], &[(coeff, &[x1])]);
            b.vanish(&[&[z2, z2], &[z1, z2]]);
            b.relation(&[(1, &[z1, x2])], &[(s, &[z1, x1])]);
            b.vanish(&[&[z2, x1]]);
            b.relation(&[(1, &[z2, x2])], &[(1, &[z1, x1])]);
            b.vanish(&[&[x1, x1], &[x2, x2], &[x1, x2]]);
        }
        _ => unreachable!(),
    }
    Ok(class)
}

/// `λ` with `λ·a = b` in `(Z/p)^n`, `a ≠ 0`.
fn solve_scalar(a: &[i64], b: &[i64], p: i64) -> Option<i64> {
    let i = a.iter().position(|&x| x != 0)?;
    let lambda = (b[i] * inv_mod(a[i], p)?).rem_euclid(p);
    a.iter()
        .zip(b)
        .all(|(&x, &y)| (lambda * x - y).rem_euclid(p) == 0)
        .then_some(lambda)
}

fn mod_odd(
    b: &mut Builder,
    theta: &GluingMatrix,
    p: i64,
    coh: &Cohomology,
    tables: &CupTables,
) -> Result<u8> {
    let rank = theta.rank_minus_identity_mod(p);
    let det = theta.det();
    let case = match (rank, det) {
        (0, 1) => 1,
        (0, _) => 2,
        (1, 1) => 3,
        (1, _) => 4,
        (2, 1) => 5,
        _ => 6,
    };
    let ring = b.ring;
    match case {
        1 | 2 => {
            let z: Vec<usize> = (0..3)
                .map(|i| {
                    let mut c = vec![0; 3];
                    c[i] = 1;
                    b.generator(&format!("ζ{}", i + 1), 1, c, p)
                })
                .collect::<Result<_>>()?;
            b.vanish(&[&[z[0], z[0]], &[z[1], z[1]], &[z[2], z[2]]]);
            if case == 2 {
                b.vanish(&[&[z[0], z[1]]]);
            }
        }
        3 | 4 => {
            let (m1, n1, m2, n2) = theta.quadruple();
            let (u1, u2) = if ring.reduce(n1) == 0 && ring.reduce(1 + m1) == 0 {
                (1 + n2, -m2)
            } else {
                (-n1, 1 + m1)
            };
            let h2 = &coh.groups[2];
            let class = |c: Vec<i64>| h2.class_coordinates(&Cochain::new(2, c, ring)?);
            let mut xi = vec3(m1, n1, 0);
            if class(xi.clone())?.iter().all(|&x| x == 0) {
                // Fall back to whichever of z1*, z2* survives in H^2.
                xi = if class(vec3(1, 0, 0))?.iter().any(|&x| x != 0) {
                    vec3(1, 0, 0)
                } else {
                    vec3(0, 1, 0)
                };
                log::debug!("mod {p}: m1 z1* + n1 z2* is a coboundary, using {xi:?}");
            }
            let lambda = solve_scalar(&class(xi.clone())?, &class(vec3(u1, u2, 0))?, p)
                .ok_or_else(|| {
                    Error::PresentationMismatch(format!(
                        "mod {p}: u1 z1* + u2 z2* is not a multiple of the chosen ξ"
                    ))
                })?;
            let z1 = b.generator("ζ1", 1, vec3(u1, u2, 0), p)?;
            let z2 = b.generator("ζ2", 1, vec3(0, 0, 1), p)?;
            let x1 = b.generator(if case == 3 { "ξ1" } else { "ξ" }, 2, xi.clone(), p)?;
            b.vanish(&[&[z1, z1], &[z2, z2]]);
            b.relation(&[(1, &[z1, z2])], &[(lambda, &[x1])]);
            b.vanish(&[&[z2, x1]]);
            if case == 3 {
                let x2 = b.generator("ξ2", 2, vec3(0, 0, 1), p)?;
                let n = &tables.n;
                let c1 = checked_add(checked_mul(u1, xi[1])?, -checked_mul(u2, xi[0])?)?;
                let c2 = checked_add(checked_mul(n[0][2], u1)?, checked_mul(n[1][2], u2)?)?;
                b.relation(&[(1, &[z1, x1])], &[(c1, &[z2, x2])]);
                b.relation(&[(1, &[z1, x2])], &[(c2, &[z2, x2])]);
                b.vanish(&[&[x1, x1], &[x2, x2], &[x1, x2]]);
            } else {
                b.vanish(&[&[z1, x1], &[x1, x1]]);
            }
        }
        5 => {
            let z = b.generator("ζ", 1, vec3(0, 0, 1), p)?;
            let x = b.generator("ξ", 2, vec3(0, 0, 1), p)?;
            b.vanish(&[&[z, z], &[x, x]]);
        }
        _ => {
            let z = b.generator("ζ", 1, vec3(0, 0, 1), p)?;
            b.vanish(&[&[z, z]]);
        }
    }
    Ok(case)
}

impl RingPresentation {
    fn class_of(&self, c: &Cochain) -> Result<Vec<i64>> {
        self.cohomology.groups[c.degree].class_coordinates(c)
    }

    /// Cochain representing a product of generators; `None` above degree 3.
    fn product(&self, factors: &[usize]) -> Result<Option<Cochain>> {
        let mut acc = Cochain::basis(0, 0, self.ring);
        for &i in factors {
            match cup_cochains(&acc, &self.generators[i].cochain, &self.tables)? {
                Some(c) => acc = c,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    fn side(&self, terms: &[Term], degree: usize) -> Result<Option<Cochain>> {
        if degree > 3 {
            return Ok(None);
        }
        let mut acc = vec![0i64; COCHAIN_DIMS[degree]];
        for t in terms {
            if let Some(c) = self.product(&t.factors)? {
                for (a, &x) in acc.iter_mut().zip(&c.coords) {
                    *a = self.ring.reduce(checked_add(*a, checked_mul(t.coeff, x)?)?);
                }
            }
        }
        Cochain::new(degree, acc, self.ring).map(Some)
    }

    fn term_degree(&self, t: &Term) -> usize {
        t.factors.iter().map(|&i| self.generators[i].degree).sum()
    }

    /// Checks every relation, the order of every generator and that the
    /// generators together with their products span each `H^k`, `k ≥ 1`.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::PresentationMismatch(msg));
        for g in &self.generators {
            let cls = self.class_of(&g.cochain)?;
            let order = self.cohomology.groups[g.degree].order_of(&cls);
            if order != g.order || order == 1 {
                return fail(format!(
                    "{} = [{}] has order {order}, expected {}",
                    g.name, g.cochain, g.order
                ));
            }
        }
        for r in &self.relations {
            let degree = match r.lhs.first().or(r.rhs.first()) {
                Some(t) => self.term_degree(t),
                None => continue,
            };
            if r.lhs.iter().chain(&r.rhs).any(|t| self.term_degree(t) != degree) {
                return fail(format!("{r}: terms of mixed degree"));
            }
            let (Some(l), Some(rr)) = (self.side(&r.lhs, degree)?, self.side(&r.rhs, degree)?) else {
                continue;
            };
            let diff: Vec<i64> = l.coords.iter().zip(&rr.coords).map(|(a, b)| a - b).collect();
            let diff = Cochain::new(degree, diff, self.ring)?;
            if !self.cohomology.groups[degree].is_coboundary(&diff)? {
                return fail(format!("{r} fails for θ = {}", self.theta));
            }
        }
        let by_degree = |k: usize| -> Vec<Cochain> {
            self.generators
                .iter()
                .filter(|g| g.degree == k)
                .map(|g| g.cochain.clone())
                .collect()
        };
        let ones = by_degree(1);
        let mut spanning: [Vec<Cochain>; 4] = [Vec::new(), ones.clone(), by_degree(2), by_degree(3)];
        for k in 2..=3 {
            let lower = spanning[k - 1].clone();
            for a in &ones {
                for bb in &lower {
                    if let Some(c) = cup_cochains(a, bb, &self.tables)? {
                        spanning[k].push(c);
                    }
                }
            }
        }
        for (k, cands) in spanning.iter().enumerate().skip(1) {
            let classes: Vec<Vec<i64>> = cands.iter().map(|c| self.class_of(c)).collect::<Result<_>>()?;
            if !self.cohomology.groups[k].spans(&classes)? {
                return fail(format!("generators do not span H^{k} for θ = {}", self.theta));
            }
        }
        Ok(())
    }

    /// Values of all pairwise products of generators, for display.
    pub fn products(&self) -> Result<Vec<(String, String)>> {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let mut out = Vec::new();
        for i in 0..self.generators.len() {
            for j in i..self.generators.len() {
                if self.generators[i].degree + self.generators[j].degree > 3 {
                    continue;
                }
                if let Some(c) = self.product(&[i, j])? {
                    let cls = self.class_of(&c)?;
                    out.push((monomial_text(&names, &[i, j]), format!("{c} (class {cls:?})")));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.family {
            PresentationFamily::Integral => format!("{}", self.derivation.case_label),
            fam => format!("{fam} case {} of 6", self.case_number),
        };
        writeln!(f, "H*(G; {}) for θ = {}: {label}", self.ring, self.theta)?;
        for g in &self.generators {
            let ord = if g.order == 0 { "∞".to_string() } else { g.order.to_string() };
            writeln!(f, "  {} = [{}]  (degree {}, order {ord})", g.name, g.cochain, g.degree)?;
        }
        for r in &self.relations {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(a: i64, g: i64, b: i64, d: i64) -> GluingMatrix {
        GluingMatrix::new(a, g, b, d).unwrap()
    }

    #[test]
    fn curated_integral_cases() {
        for (t, case) in [
            (th(1, 0, 0, 1), 1),
            (th(1, 0, 1, 1), 2),
            (th(0, 1, 1, 0), 3),
            (th(1, 2, 0, -1), 4),
            (th(2, 1, 1, 1), 5),
            (th(2, 1, 1, 0), 6),
        ] {
            let pres = ring_presentation(&t, CoefficientRing::Integers).unwrap();
            assert_eq!(pres.case_number, case, "{t}");
        }
    }

    #[test]
    fn cat_map_has_only_zeta_and_xi3() {
        let pres = ring_presentation(&th(2, 1, 1, 1), CoefficientRing::Integers).unwrap();
        let names: Vec<&str> = pres.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["ζ", "ξ3"]);
    }

    #[test]
    fn mod_two_classes_cover_gl2() {
        let mut seen = std::collections::BTreeSet::new();
        for t in [
            th(1, 0, 0, 1),
            th(0, 1, 1, 0),
            th(1, 1, 1, 0),
            th(1, 0, 1, 1),
            th(1, 1, 0, 1),
            th(0, 1, 1, 1),
        ] {
            let pres = ring_presentation(&t, CoefficientRing::mod_p(2).unwrap()).unwrap();
            seen.insert(pres.case_number);
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn relation_text() {
        let pres = ring_presentation(&th(0, 1, 1, 0), CoefficientRing::Integers).unwrap();
        let texts: Vec<&str> = pres.relations.iter().map(|r| r.text.as_str()).collect();
        assert!(texts.contains(&"ζ1ζ2 = 2ξ"), "{texts:?}");
        assert!(texts.contains(&"ζ1^2 = 0"));
    }
}
