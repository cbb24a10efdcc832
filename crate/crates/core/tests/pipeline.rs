use kaluza_core::io::{multi_table_from_json, to_json_pretty};
use kaluza_core::kaluza::{product_coeffs, sequence_table};
use kaluza_core::moments::two_point_mixture;
use kaluza_core::rational::{int, ratio};
use kaluza_core::{
    atomic_coeffs, c_from_r, certify, check_theorem1, check_theorem2, residual, solve_renewal,
    CoeffTable, MultiIndexMonoid, MultiTable, RatioTable, Verdict,
};
use num_traits::Signed;
use proptest::prelude::*;

fn lebesgue2(n: usize) -> MultiTable {
    let h: Vec<_> = (0..=n as i64).map(|k| ratio(1, k + 1)).collect();
    product_coeffs(&[h.clone(), h], n).unwrap()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn thread_count_does_not_change_results() {
    let c = product_coeffs(
        &vec![(0..=11i64).map(|k| ratio(1, k + 1)).collect::<Vec<_>>(); 3],
        11,
    )
    .unwrap();
    let one = in_pool(1, || to_json_pretty(&solve_renewal(&c).unwrap()).unwrap());
    let many = in_pool(4, || to_json_pretty(&solve_renewal(&c).unwrap()).unwrap());
    assert_eq!(one, many);
    let back = multi_table_from_json(&one).unwrap();
    assert!(residual(&c, &back).unwrap().is_zero());
}

#[test]
fn lebesgue_square_verdict_depends_on_degree() {
    // the first failing edge (0,2) -> (1,2) needs degree 3
    assert_eq!(certify(&lebesgue2(2)).unwrap().verdict, Verdict::CnpCertifiedBoth);
    for n in 3..=8 {
        assert_eq!(certify(&lebesgue2(n)).unwrap().verdict, Verdict::CnpCertifiedThm2);
    }
}

#[test]
fn mixture_stays_refuted_at_higher_degree() {
    for n in 2..=7 {
        let c = atomic_coeffs(&two_point_mixture(ratio(1, 2)), n).unwrap();
        let rep = certify(&c).unwrap();
        assert_eq!(rep.verdict, Verdict::NotCnp);
        assert_eq!(rep.witness.as_ref().unwrap().idx, vec![1, 1]);
        if n >= 3 {
            assert!(rep.negatives.iter().any(|v| v.idx == [2, 1] && v.val == ratio(-1, 64)));
        }
    }
}

fn unital(dim: usize, n: usize, vals: Vec<(i64, i64)>) -> MultiTable {
    let mut it = vals.into_iter().cycle();
    CoeffTable::from_fn(MultiIndexMonoid::new(dim), n, |a| {
        let (p, q) = it.next().unwrap();
        if a.is_zero() {
            int(1)
        } else {
            ratio(p, q)
        }
    })
    .unwrap()
}

fn monotone_ratio(dim: usize, n: usize, steps: Vec<u8>) -> RatioTable {
    let mut it = steps.into_iter().cycle();
    RatioTable::from_fn(dim, n, |a| {
        // strictly increasing in the degree, hence monotone along every edge
        let k = a.degree() as i64;
        let bump = it.next().unwrap() as i64;
        ratio(k * 8 + bump, (n as i64 + 1) * 8)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn violations_persist_and_passes_descend(
        vals in prop::collection::vec((1i64..=9, 1i64..=9), 1..40),
        dim in 1usize..=3,
        n in 1usize..=4,
    ) {
        let hi = unital(dim, n + 2, vals);
        let lo = hi.truncate(n).unwrap();
        let (h, l) = (certify(&hi).unwrap(), certify(&lo).unwrap());
        if l.verdict == Verdict::NotCnp {
            prop_assert_eq!(h.verdict, Verdict::NotCnp);
        }
        if h.thm1.passed {
            prop_assert!(l.thm1.passed);
        }
        if h.thm2.passed {
            prop_assert!(l.thm2.passed);
        }
        for v in &l.thm1.violations {
            prop_assert!(h.thm1.violations.contains(v));
        }
    }

    #[test]
    fn certified_tables_have_no_witness(
        steps in prop::collection::vec(0u8..=7, 1..30),
        dim in 1usize..=3,
        n in 1usize..=5,
    ) {
        let c = c_from_r(&monotone_ratio(dim, n, steps)).unwrap();
        let rep = certify(&c).unwrap();
        prop_assert!(rep.verdict.is_certified());
        prop_assert!(rep.witness.is_none());
        prop_assert!(rep.dbr_b.is_some());
        prop_assert!(!rep.q_min.val.is_negative());
    }

    #[test]
    fn one_dimensional_conditions_relate(
        raw in prop::collection::vec((1i64..=12, 1i64..=12), 1..10),
    ) {
        let mut s = vec![int(1)];
        for (p, q) in raw {
            let next = s.last().unwrap() * ratio(p, q);
            s.push(next);
        }
        let c = sequence_table(&s).unwrap();
        let k = kaluza_core::check_kaluza_1d(&s).unwrap();
        let t1 = check_theorem1(&c).unwrap();
        let t2 = check_theorem2(&c).unwrap();
        prop_assert_eq!(k.passed, t1.passed);
        if k.passed {
            prop_assert!(t2.passed);
            prop_assert!(solve_renewal(&c).unwrap().is_nonnegative());
        }
    }
}
