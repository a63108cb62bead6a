use kdl_core::classifier::{
    classify, hopf_dsemistable, hopf_dsemistable_oracle, hopf_invariants, hopf_kx_zero,
    smoothing_verdict, EllipticRuledDatum, GluingMatrix, HopfDatum, RationalDatum, Stratum,
    SurfaceClass, SurfaceDatum, Verdict,
};
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Every valid `(n, n1, n2, b)` with `n ≤ n_max`.
fn all_data(n_max: i64) -> impl Iterator<Item = HopfDatum> {
    (1..=n_max).flat_map(|n| {
        let units: Vec<i64> = (0..n).filter(|&u| gcd(u, n) == 1).collect();
        let pairs: Vec<(i64, i64)> = units
            .iter()
            .flat_map(|&a| units.iter().map(move |&b| (a, b)))
            .collect();
        pairs
            .into_iter()
            .flat_map(move |(n1, n2)| (0..n).map(move |b| HopfDatum::new(n, n1, n2, b).unwrap()))
    })
}

/// Inverse found by search rather than the extended Euclidean algorithm.
fn inverse_by_search(a: i64, n: i64) -> i64 {
    (0..n).find(|&x| (a * x).rem_euclid(n) == 1 % n).unwrap()
}

/// Linearity of the lifted homomorphism, with inverses found by search.
fn brute_force_dsemistable(h: &HopfDatum) -> bool {
    let (m1, m2) = (inverse_by_search(h.n1, h.n), inverse_by_search(h.n2, h.n));
    (m2 * h.n1 + m1 * h.n2 - 2).rem_euclid(h.n) == 0 && (h.b * m1 * h.n2 - h.b).rem_euclid(h.n) == 0
}

#[test]
fn congruences_match_both_oracles_up_to_30() {
    for h in all_data(30) {
        let fast = hopf_dsemistable(&h);
        assert_eq!(fast, hopf_dsemistable_oracle(&h).unwrap(), "{h:?}");
        assert_eq!(fast, brute_force_dsemistable(&h), "{h:?}");
    }
}

#[test]
fn invariants_divide_n_and_warp_divides_degree() {
    for h in all_data(40) {
        let (e, w) = hopf_invariants(&h);
        let n = h.n as u64;
        assert_eq!(n % e, 0, "{h:?}");
        assert_eq!(n % w, 0, "{h:?}");
        assert_eq!(e, gcd(h.n, h.n1 - h.n2) as u64);
        if hopf_dsemistable(&h) {
            assert_eq!(e % w, 0, "{h:?}");
        }
    }
}

#[test]
fn kx_zero_only_for_translations() {
    for b in -20..=20 {
        assert!(hopf_kx_zero(&GluingMatrix::translation(b)));
    }
    for a in -4i64..=4 {
        for b in -4i64..=4 {
            for c in -4i64..=4 {
                for d in -4i64..=4 {
                    if let Ok(m) = GluingMatrix::new(a, b, c, d) {
                        assert_eq!(hopf_kx_zero(&m), c == 0 && d == 1, "{:?}", m.entries());
                    }
                }
            }
        }
    }
}

fn datum() -> impl Strategy<Value = SurfaceDatum> {
    let hopf = (1i64..=40)
        .prop_flat_map(|n| (Just(n), 0..n, 0..n, 0..n))
        .prop_filter_map("units", |(n, n1, n2, b)| HopfDatum::new(n, n1, n2, b).ok())
        .prop_map(SurfaceDatum::Hopf);
    let elliptic = (0u64..=12, 0u64..=6, any::<bool>()).prop_map(|(e, w, translation)| {
        SurfaceDatum::EllipticRuled(EllipticRuledDatum {
            e,
            w,
            translation,
            j_label: None,
        })
    });
    let rational = (0u64..=12, 0u64..=6, any::<bool>())
        .prop_map(|(e, w, u)| SurfaceDatum::Rational(RationalDatum::new(e, w, u)));
    prop_oneof![hopf, elliptic, rational]
}

proptest! {
    #[test]
    fn classify_is_total_deterministic_and_round_trips(d in datum()) {
        let a = classify(&d).unwrap();
        let b = classify(&d).unwrap();
        prop_assert_eq!(&a, &b);
        let text = a.to_json();
        prop_assert_eq!(&text, &b.to_json());
        prop_assert_eq!(SurfaceClass::from_json(&text).unwrap(), a.clone());
        prop_assert_eq!(SurfaceDatum::from_json(&d.to_json()).unwrap(), d);
        if !a.admissible || !a.d_semistable {
            prop_assert_eq!(a.verdict, Verdict::NoSmoothing);
        }
    }

    #[test]
    fn degree_zero_never_smooths_to_kodaira(w in 0u64..=50, s in 0usize..3) {
        let stratum = Stratum::ALL[s];
        let v = smoothing_verdict(stratum, 0, w, true).unwrap();
        prop_assert!(!matches!(v, Verdict::KodairaSurface(_)));
    }

    #[test]
    fn verdict_degree_is_quotient(d in 1u64..=20, w in 1u64..=20) {
        let v = smoothing_verdict(Stratum::Rational, d * w, w, true).unwrap();
        prop_assert_eq!(v, Verdict::KodairaSurface(d));
    }
}
