//! Randomized invariants of the pipeline, checked over planted instances:
//! closure is a fixpoint, structure is a conjugation invariant, generators
//! split along the class projectors, power-of-two scaling is bitwise
//! invariant, linkage is transitive, and noise shows up in the report at
//! its own magnitude.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use wedderburn::{
    close_unital_star_algebra, decompose, generate_planted, link_matrix, maximal_family,
    random_haar_unitary, verify_claim, CMatrix, Tolerance,
};

const TOL: Tolerance = Tolerance {
    zero: 1e-12,
    rel: 1e-9,
    eig_cluster: 1e-8,
};

fn structure_strategy() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((1..=3usize, 1..=3usize), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn closure_is_a_fixpoint(st in structure_strategy(), num in 2..=3usize, seed in 0..5000u64) {
        let inst = generate_planted(&st, num, seed).unwrap();
        let n = inst.dim_h();
        let basis = close_unital_star_algebra(&inst.generators, n, TOL).unwrap();
        let again = close_unital_star_algebra(basis.elements(), n, TOL).unwrap();
        prop_assert_eq!(again.dim(), basis.dim());
    }

    #[test]
    fn conjugation_preserves_dimension_and_structure(
        st in structure_strategy(),
        seed in 0..5000u64,
        rot_seed in 0..5000u64,
    ) {
        let inst = generate_planted(&st, 2, seed).unwrap();
        let n = inst.dim_h();
        let r = random_haar_unitary(n, rot_seed ^ 0xa5a5).unwrap();
        let rotated: Vec<CMatrix> = inst
            .generators
            .iter()
            .map(|g| &r * g * r.adjoint())
            .collect();
        let d0 = decompose(&inst.generators, n, TOL).unwrap();
        let d1 = decompose(&rotated, n, TOL).unwrap();
        prop_assert_eq!(d1.basis.dim(), d0.basis.dim());
        prop_assert_eq!(d1.structure(), d0.structure());
    }

    #[test]
    fn generators_split_along_class_projectors(
        st in structure_strategy(),
        num in 2..=3usize,
        seed in 0..5000u64,
    ) {
        let inst = generate_planted(&st, num, seed).unwrap();
        let n = inst.dim_h();
        let d = decompose(&inst.generators, n, TOL).unwrap();
        for g in &inst.generators {
            let mut split = CMatrix::zeros(n, n);
            for c in &d.classes {
                split += &c.projector * g * &c.projector;
            }
            let defect = (g - split).norm();
            prop_assert!(
                defect <= TOL.rel * g.norm(),
                "generator leaks across class projectors: {:.3e}",
                defect
            );
        }
    }

    #[test]
    fn power_of_two_scaling_is_bitwise_invariant(
        st in structure_strategy(),
        seed in 0..5000u64,
    ) {
        let inst = generate_planted(&st, 2, seed).unwrap();
        let n = inst.dim_h();
        let scaled: Vec<CMatrix> = inst
            .generators
            .iter()
            .map(|g| g.map(|z| z * 1048576.0))
            .collect();
        let d0 = decompose(&inst.generators, n, TOL).unwrap();
        let d1 = decompose(&scaled, n, TOL).unwrap();
        prop_assert_eq!(d1.structure(), d0.structure());
        prop_assert_eq!(d1.global_u, d0.global_u);
    }

    #[test]
    fn links_are_transitive(st in structure_strategy(), seed in 0..5000u64) {
        let inst = generate_planted(&st, 2, seed).unwrap();
        let n = inst.dim_h();
        let basis = close_unital_star_algebra(&inst.generators, n, TOL).unwrap();
        let family = maximal_family(&basis, TOL).unwrap();
        let s = link_matrix(&family, &basis).unwrap();
        let thr = TOL.floor(1.0);
        let f = family.len();
        let linked = |i: usize, j: usize| i == j || s[i][j].max(s[j][i]) > thr;
        for i in 0..f {
            for j in 0..f {
                for k in 0..f {
                    if linked(i, j) && linked(j, k) {
                        prop_assert!(
                            linked(i, k),
                            "links not transitive at ({i},{j},{k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn noise_on_the_unitary_is_reported_at_its_own_scale(
        st in structure_strategy(),
        seed in 0..5000u64,
        noise_seed in 0..5000u64,
    ) {
        let inst = generate_planted(&st, 2, seed).unwrap();
        let n = inst.dim_h();
        let d = decompose(&inst.generators, n, TOL).unwrap();
        let projectors = d.class_member_projectors();
        let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
        rng.set_stream(31);
        let noise = CMatrix::from_fn(n, n, |_, _| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            num_complex::Complex64::new(re, im)
        });
        let mut previous = 0.0;
        for eps in [1e-8, 1e-6, 1e-4] {
            let bent = &d.global_u + noise.map(|z| z * eps);
            let report =
                verify_claim(&inst.generators, &d.structure(), &bent, &projectors, TOL).unwrap();
            let r = report.unitarity_residual;
            prop_assert!(
                r > 1e-2 * eps && r < 1e3 * eps * n as f64,
                "residual {:.3e} out of scale for ε = {:.0e}",
                r,
                eps
            );
            prop_assert!(r > previous, "residual not monotone in ε");
            previous = r;
        }
    }
}
