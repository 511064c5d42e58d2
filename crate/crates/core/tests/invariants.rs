use normtrace::ghw::{fastpath_degree_bound, ghw_exhaustive_with};
use normtrace::oracle::{common_zero_count, witness_family};
use normtrace::{
    cartesian_ghw, delta_star, delta_star_closed_form, dual_nullspace, dual_structural, ghw_maxcase, hierarchy_values,
    Curve, CurveParams, GhwOptions, Monomial, MonomialSet, StaircaseProfile, Strategy as Search,
};
use proptest::prelude::*;

const CURVES: &[(u32, u32, u32)] =
    &[(2, 2, 1), (2, 2, 3), (3, 2, 1), (3, 2, 2), (3, 2, 4), (2, 3, 1), (2, 3, 7), (4, 2, 1), (4, 2, 5)];

fn curve_params() -> impl Strategy<Value = CurveParams> {
    prop::sample::select(CURVES).prop_map(|(q, s, u)| CurveParams::new(q, s, u).unwrap())
}

/// A decreasing set from nonincreasing column heights.
fn decreasing_set() -> impl Strategy<Value = MonomialSet> {
    curve_params().prop_flat_map(|p| {
        let cols = p.x_max() as usize + 1;
        prop::collection::vec(0..=p.y_cap(), cols).prop_map(move |mut h| {
            h.sort_unstable_by(|a, b| b.cmp(a));
            h[0] = h[0].max(1);
            let ms = h.iter().enumerate().flat_map(|(a, &t)| (0..t).map(move |b| Monomial::new(a as u32, b)));
            MonomialSet::new(p, ms).unwrap()
        })
    })
}

/// Staircase corners: strictly increasing a, strictly decreasing b.
fn staircase() -> impl Strategy<Value = (CurveParams, Vec<Monomial>)> {
    curve_params().prop_flat_map(|p| {
        let xs = prop::collection::btree_set(0..=p.x_max(), 1..=p.y_cap().min(p.x_max() + 1) as usize);
        (Just(p), xs).prop_flat_map(|(p, xs)| {
            let len = xs.len();
            let ys = prop::collection::btree_set(0..p.y_cap(), len..=len);
            (Just(p), Just(xs), ys).prop_map(|(p, xs, ys)| {
                let corners = xs.into_iter().zip(ys.into_iter().rev()).map(|(a, b)| Monomial::new(a, b)).collect();
                (p, corners)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hierarchy_is_strictly_increasing_and_below_singleton(m in decreasing_set()) {
        let h = hierarchy_values(&m).unwrap();
        let (n, k) = (m.params().n(), m.len());
        prop_assert_eq!(h.len(), k);
        prop_assert!(h.windows(2).all(|w| w[0] < w[1]), "{:?}", h);
        for (i, &d) in h.iter().enumerate() {
            prop_assert!(d <= n - k + i + 1, "d_{} = {} exceeds the Singleton bound", i + 1, d);
        }
        prop_assert_eq!(h[k - 1], n);
    }

    #[test]
    fn scan_and_staircase_strategies_agree(m in decreasing_set(), r in 1usize..4) {
        prop_assume!(r <= m.len() && normtrace::binomial(m.len(), r) <= 20_000);
        let scan = GhwOptions { strategy: Search::Subsets, ..GhwOptions::default() };
        let plain = GhwOptions { prune: false, ..scan };
        let dp = GhwOptions { strategy: Search::Staircase, ..GhwOptions::default() };
        let a = ghw_exhaustive_with(&m, r, &scan).unwrap().value;
        prop_assert_eq!(a, ghw_exhaustive_with(&m, r, &plain).unwrap().value);
        prop_assert_eq!(a, ghw_exhaustive_with(&m, r, &dp).unwrap().value);
    }

    #[test]
    fn closed_form_matches_direct_count((p, n) in staircase()) {
        let span = n.last().unwrap().a - n[0].a;
        prop_assume!(span < p.u());
        let profile = StaircaseProfile::new(n.iter().map(|m| (m.a, m.b)).collect()).unwrap();
        prop_assert_eq!(delta_star_closed_form(p, &profile).unwrap() as usize, delta_star(p, &n).unwrap());
    }

    #[test]
    fn witness_family_attains_delta_star((p, n) in staircase()) {
        let curve = Curve::new(p.q(), p.s(), p.u()).unwrap();
        let family = witness_family(&n, &curve, None).unwrap();
        prop_assert_eq!(family.len(), n.len());
        prop_assert_eq!(common_zero_count(&family, &curve).unwrap(), delta_star(p, &n).unwrap());
    }

    #[test]
    fn structural_dual_is_the_nullspace(m in decreasing_set()) {
        let p = m.params();
        let curve = Curve::new(p.q(), p.s(), p.u()).unwrap();
        let code = normtrace::evaluate_code(&curve, &m).unwrap();
        let dual = dual_structural(&curve, &m).unwrap();
        prop_assert!(dual.same_code(&dual_nullspace(&code)));
        prop_assert_eq!(dual.dimension(), p.n() - m.len());
    }

    #[test]
    fn curve_weights_dominate_the_cartesian_grid(p in curve_params(), d in 0u32..6, r in 1usize..6) {
        let m = MonomialSet::degree_set(p, d);
        prop_assume!(r <= m.len());
        let curve = ghw_exhaustive_with(&m, r, &GhwOptions::default()).unwrap().value;
        let grid = cartesian_ghw(p, d, r).unwrap();
        prop_assert!(curve >= grid, "{} < {}", curve, grid);
        if p.u() <= (p.y_cap() - 1) / (p.q() - 1) {
            prop_assert_eq!(curve, grid);
        }
    }
}

#[test]
fn maxcase_matches_exhaustive_on_small_maximal_curves() {
    for (q, s, u) in [(2, 2, 3), (3, 2, 4), (2, 3, 7), (4, 2, 5)] {
        let p = CurveParams::new(q, s, u).unwrap();
        for d in 1..=fastpath_degree_bound(p) {
            let m = MonomialSet::degree_set(p, d);
            let h = hierarchy_values(&m).unwrap();
            for (i, &want) in h.iter().enumerate() {
                let got = ghw_maxcase(p, d, i + 1).unwrap().value;
                assert_eq!(got, want, "{p:?} d={d} r={}", i + 1);
            }
        }
    }
}
