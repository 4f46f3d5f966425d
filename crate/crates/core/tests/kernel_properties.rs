//! Property tests for the matrix kernel and the simplex/Gramian bridge.

use proptest::prelude::*;

use simplicia::classes::{chain_level, is_inverse_mdd};
use simplicia::mat::{dot, ones, permutation_equivalent, RatMat, SymMat};
use simplicia::scalar::{Rat, Scalar};
use simplicia::simplex::{normal_data, radii, squared_distance_multiset, Simplex};

/// Random SPD matrix through its own factorization: unit lower-triangular
/// rational `L` and positive diagonal `D`.
fn arb_spd(n: usize) -> impl Strategy<Value = RatMat> {
    let lower = proptest::collection::vec((-3i64..=3, 1i64..=2), n * n);
    let diag = proptest::collection::vec((1i64..=6, 1i64..=3), n);
    (lower, diag).prop_map(move |(l, d)| {
        let lv: Vec<Rat> = l.iter().map(|&(p, q)| Rat::new(p, q)).collect();
        let dv: Vec<Rat> = d.iter().map(|&(p, q)| Rat::new(p, q)).collect();
        SymMat::from_fn(n, |i, j| {
            let mut acc = Rat::zero();
            for m in 0..n {
                let li = if i == m {
                    Rat::one()
                } else if m < i {
                    lv[i * n + m].clone()
                } else {
                    Rat::zero()
                };
                let lj = if j == m {
                    Rat::one()
                } else if m < j {
                    lv[j * n + m].clone()
                } else {
                    Rat::zero()
                };
                acc = acc + li * lj * dv[m].clone();
            }
            acc
        })
    })
}

/// Random nondegenerate simplex with small integer coordinates.
fn arb_simplex(n: usize) -> impl Strategy<Value = Simplex> {
    proptest::collection::vec(-5i64..=5, (n + 1) * n)
        .prop_filter_map("degenerate", move |c| {
            let verts: Vec<Vec<Rat>> = (0..=n)
                .map(|v| (0..n).map(|k| Rat::from_int(c[v * n + k])).collect())
                .collect();
            Simplex::new(verts).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cholesky_round_trips_exactly(a in (2usize..=5).prop_flat_map(arb_spd)) {
        let r = a.cholesky_upper().unwrap();
        prop_assert_eq!(r.rt_r(), a);
    }

    #[test]
    fn solve_matches_inverse_application(
        a in (2usize..=4).prop_flat_map(arb_spd),
        bnum in proptest::collection::vec(-4i64..=4, 4),
    ) {
        let n = a.n();
        let b: Vec<Rat> = (0..n).map(|i| Rat::from_int(bnum[i % bnum.len()])).collect();
        let x = a.solve(&b).unwrap();
        let inv = a.inverse().unwrap();
        prop_assert_eq!(x.clone(), inv.mul_vec(&b));
        prop_assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn base_change_closure(s in (2usize..=4).prop_flat_map(arb_simplex), j in 0usize..=4) {
        let n = s.n();
        let j = j % (n + 1);
        let g0 = s.gramian(0).unwrap();
        let moved = g0.rebase(j);
        let direct = s.gramian(moved.base()).unwrap();
        prop_assert!(permutation_equivalent(moved.matrix(), direct.matrix()));
    }

    #[test]
    fn gramian_invariants_across_bases(s in (2usize..=4).prop_flat_map(arb_simplex)) {
        let n = s.n();
        let d0 = s.gramian(0).unwrap().matrix().determinant();
        let r0 = radii(s.gramian(0).unwrap().matrix()).unwrap();
        for b in 1..=n {
            let g = s.gramian(b).unwrap();
            prop_assert_eq!(g.matrix().determinant(), d0.clone());
            let rb = radii(g.matrix()).unwrap();
            prop_assert!((rb.circumradius - r0.circumradius).abs() <= 1e-9 * r0.circumradius);
            prop_assert!((rb.inradius - r0.inradius).abs() <= 1e-9 * r0.inradius);
        }
    }

    #[test]
    fn normal_gramian_rows_sum_to_zero(s in (2usize..=4).prop_flat_map(arb_simplex)) {
        let nd = normal_data(s.gramian(0).unwrap().matrix()).unwrap();
        let m = &nd.mat;
        for i in 0..m.n() {
            let row: Vec<Rat> = (0..m.n()).map(|j| m.get(i, j).clone()).collect();
            prop_assert_eq!(dot(&row, &ones(m.n())), Rat::zero());
        }
    }

    #[test]
    fn reconstruction_is_congruent(a in (2usize..=4).prop_flat_map(arb_spd)) {
        let g = simplicia::simplex::VertexGramian::from_matrix(a.clone()).unwrap();
        let s = g.reconstruct().unwrap();
        let rebuilt = s.gramian(0).unwrap();
        prop_assert_eq!(rebuilt.matrix(), &a);
        // rebuilding from the rebuilt Gramian preserves all distances
        let again = s.gramian(0).unwrap().reconstruct().unwrap();
        prop_assert_eq!(
            squared_distance_multiset(&s),
            squared_distance_multiset(&again)
        );
    }

    #[test]
    fn chain_level_is_base_invariant(s in (2usize..=4).prop_flat_map(arb_simplex)) {
        let n = s.n();
        let l0 = chain_level(s.gramian(0).unwrap().matrix()).unwrap();
        for b in 1..=n {
            prop_assert_eq!(chain_level(s.gramian(b).unwrap().matrix()).unwrap(), l0);
        }
        // level n means nonobtuse
        prop_assert_eq!(l0 == n, is_inverse_mdd(s.gramian(0).unwrap().matrix()).unwrap());
    }

    #[test]
    fn class_report_is_self_consistent(a in (2usize..=4).prop_flat_map(arb_spd)) {
        use simplicia::classes::ClassReport;
        let r = ClassReport::analyze(&a);
        prop_assert!(r.spd);
        // membership chain: dominant inverse class sits inside the plain
        // inverse M class, which is the Stieltjes-inverse condition
        if r.in_mdd == Some(true) {
            prop_assert_eq!(r.in_m, Some(true));
            prop_assert!(r.in_ddd);
        }
        prop_assert_eq!(r.in_m, r.inverse_stieltjes);
        prop_assert_eq!(
            r.in_mdd,
            Some(r.inverse_stieltjes == Some(true) && r.inverse_wdd == Some(true))
        );
        // chain level n is exactly the dominant class; level >= 2 implies
        // the pointwise class (one-sided: the pointwise entries of a single
        // Gramian only see the triangles through its base vertex)
        let n = a.n();
        prop_assert_eq!(r.chain_level == Some(n), r.in_mdd == Some(true));
        if r.chain_level >= Some(2) {
            prop_assert!(r.in_ddd);
        }
        if r.ultrametric {
            prop_assert!(r.nonnegative && r.pointwise_wdd);
        }
        if r.strictly_ultrametric {
            prop_assert!(r.ultrametric);
        }
        if r.type_d {
            prop_assert!(r.ultrametric);
        }
    }
}
