use proptest::prelude::*;
use torus_bundle::cohomology::*;
use torus_bundle::verify::{all_thetas, closed_form_integral, closed_form_mod_p, UCT_PRIMES};
use torus_bundle::GluingMatrix;

fn theta() -> impl Strategy<Value = GluingMatrix> {
    proptest::sample::select(all_thetas(8))
}

fn factors(t: &GluingMatrix, ring: CoefficientRing) -> Vec<Vec<i64>> {
    cohomology_groups(t, ring)
        .unwrap()
        .groups
        .iter()
        .map(|g| g.invariant_factors.clone())
        .collect()
}

fn th(a: i64, g: i64, b: i64, d: i64) -> GluingMatrix {
    GluingMatrix::new(a, g, b, d).unwrap()
}

#[test]
fn three_torus() {
    let f = factors(&GluingMatrix::identity(), CoefficientRing::Integers);
    assert_eq!(f, vec![vec![0], vec![0; 3], vec![0; 3], vec![0]]);
}

#[test]
fn cat_map_is_a_rational_homology_circle() {
    let f = factors(&th(2, 1, 1, 1), CoefficientRing::Integers);
    assert_eq!(f, vec![vec![0], vec![0], vec![0], vec![0]]);
}

#[test]
fn swap_has_two_torsion_on_top() {
    let f = factors(&th(0, 1, 1, 0), CoefficientRing::Integers);
    assert_eq!(f, vec![vec![0], vec![0, 0], vec![0], vec![2]]);
}

#[test]
fn named_generators() {
    let z = CoefficientRing::Integers;
    let coh = cohomology_groups(&th(1, 0, 1, 1), z).unwrap();
    assert_eq!(coh.groups[0].generators, vec![Cochain::basis(0, 0, z)]);
    assert_eq!(coh.groups[3].generators, vec![Cochain::basis(3, 0, z)]);
    // θ = [[1,0],[1,1]]: 1 + m1 = 0, n1 = 1, so u = -y1*
    assert_eq!(coh.groups[1].generators[0].coords, vec![-1, 0, 0]);
    assert_eq!(coh.groups[1].generators[1], Cochain::basis(1, 2, z));
}

#[test]
fn alternate_recipe_when_first_row_vanishes_mod_p() {
    // 1 + m1 ≡ n1 ≡ 0 mod p while rank_p(θ - I) = 1
    let p = 3;
    let ring = CoefficientRing::mod_p(p).unwrap();
    let mut seen = false;
    for t in all_thetas(4) {
        let (m1, n1, m2, n2) = t.quadruple();
        if t.rank_minus_identity_mod(p) == 1 && (1 + m1) % p == 0 && n1 % p == 0 {
            let coh = cohomology_groups(&t, ring).unwrap();
            let want = Cochain::new(1, vec![1 + n2, -m2, 0], ring).unwrap();
            assert_eq!(coh.groups[1].generators[0], want, "θ = {t}");
            seen = true;
        }
    }
    assert!(seen);
}

#[test]
fn dual_matrix_shapes() {
    let t = th(2, 1, 1, 0);
    let res = torus_bundle::resolution::build_resolution(&t).unwrap();
    let [d1, d2, d3] = dual_matrices(&res, CoefficientRing::Integers).unwrap();
    assert!(d1.is_zero());
    let (m1, n1, m2, n2) = t.quadruple();
    assert_eq!(d2.to_rows(), vec![vec![1 + m1, n1, 0], vec![m2, 1 + n2, 0], vec![0, 0, 0]]);
    assert_eq!(d3.to_rows(), vec![vec![0, 0, t.det() - 1]]);
}

#[test]
fn smith_form_examples() {
    use torus_bundle::linalg::Matrix;
    let (u, d, v) = smith_normal_form(&Matrix::from_rows(&[[2, 4], [6, 8]])).unwrap();
    assert_eq!(d.to_rows(), vec![vec![2, 0], vec![0, 4]]);
    let z = CoefficientRing::Integers;
    let m = Matrix::from_rows(&[[2, 4], [6, 8]]);
    assert_eq!(u.mul(&m, z).unwrap().mul(&v, z).unwrap(), d);
}

proptest! {
    #[test]
    fn integral_closed_forms(t in theta()) {
        let want: Vec<Vec<i64>> = closed_form_integral(&t).into_iter().collect();
        prop_assert_eq!(factors(&t, CoefficientRing::Integers), want);
    }

    #[test]
    fn mod_p_closed_forms(t in theta()) {
        for p in UCT_PRIMES {
            let coh = cohomology_groups(&t, CoefficientRing::mod_p(p).unwrap()).unwrap();
            let dims: Vec<usize> = coh.groups.iter().map(|g| g.dimension()).collect();
            prop_assert_eq!(dims, closed_form_mod_p(&t, p).to_vec());
        }
    }

    #[test]
    fn torsion_divisibility_and_product(t in theta()) {
        let coh = cohomology_groups(&t, CoefficientRing::Integers).unwrap();
        let tors = coh.groups[2].torsion();
        for w in tors.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        if t.rank_minus_identity() == 2 {
            let prod: i64 = tors.iter().product();
            prop_assert_eq!(prod, t.det_minus_identity().abs());
        }
    }

    #[test]
    fn euler_characteristic_vanishes(t in theta()) {
        let coh = cohomology_groups(&t, CoefficientRing::Integers).unwrap();
        let chi: i64 = coh.groups.iter().enumerate()
            .map(|(k, g)| (-1i64).pow(k as u32) * g.free_rank() as i64)
            .sum();
        prop_assert_eq!(chi, 0);
    }

    #[test]
    fn mod_two_dimensions_are_symmetric(t in theta()) {
        let coh = cohomology_groups(&t, CoefficientRing::mod_p(2).unwrap()).unwrap();
        let d: Vec<usize> = coh.groups.iter().map(|g| g.dimension()).collect();
        prop_assert_eq!(d.clone(), d.into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn universal_coefficients(t in theta()) {
        let z = cohomology_groups(&t, CoefficientRing::Integers).unwrap();
        for p in UCT_PRIMES {
            let zp = cohomology_groups(&t, CoefficientRing::mod_p(p).unwrap()).unwrap();
            let div = |k: usize| z.group(k).map_or(0, |g| g.torsion().iter().filter(|&&d| d % p == 0).count());
            for k in 0..4 {
                prop_assert_eq!(zp.groups[k].dimension(), z.groups[k].free_rank() + div(k) + div(k + 1));
            }
        }
    }

    #[test]
    fn generators_have_stated_orders(t in theta()) {
        for ring in [CoefficientRing::Integers, CoefficientRing::mod_p(3).unwrap()] {
            let coh = cohomology_groups(&t, ring).unwrap();
            for h in &coh.groups {
                for (i, (g, &d)) in h.generators.iter().zip(&h.invariant_factors).enumerate() {
                    prop_assert!(h.is_cocycle(g).unwrap());
                    let mut e = vec![0; h.len()];
                    e[i] = 1;
                    prop_assert_eq!(h.order_of(&e), d);
                    prop_assert_eq!(h.class_coordinates(g).unwrap(), h.reduce_class(&e));
                }
            }
        }
    }

    #[test]
    fn classification_matches_predicates(t in theta()) {
        let d = derive_presentation_data(&t).unwrap();
        prop_assert_eq!(d.rank, t.rank_minus_identity());
        prop_assert_eq!(d.det, t.det());
        if let Some(r) = d.rank_one {
            prop_assert_eq!(r.p * r.k + r.q * r.ell, 1);
            prop_assert_eq!(
                t.identity_minus_inverse(),
                [[r.q * r.r_prime, r.p * r.r_prime], [r.q * r.s_prime, r.p * r.s_prime]]
            );
        }
    }
}
