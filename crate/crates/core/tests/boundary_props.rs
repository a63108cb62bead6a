use kdl_core::boundary::{adjacency_edges, enumerate_components, ParamSpace, Witness};
use kdl_core::classifier::{
    classify, hopf_dsemistable, hopf_invariants, EllipticRuledDatum, HopfDatum, RationalDatum,
    Stratum, SurfaceDatum, Verdict,
};

/// Some d-semistable Hopf datum with the given invariants, by search.
fn hopf_with(e: u64, w: u64) -> HopfDatum {
    for n in 1..=64i64 {
        for n1 in 0..n {
            for n2 in 0..n {
                for b in 0..n {
                    if let Ok(h) = HopfDatum::new(n, n1, n2, b) {
                        if hopf_dsemistable(&h) && hopf_invariants(&h) == (e, w) {
                            return h;
                        }
                    }
                }
            }
        }
    }
    panic!("no Hopf datum with e={e}, w={w}");
}

#[test]
fn components_and_edges_for_small_degrees() {
    for d in 1..=3 {
        for w_max in 1..=4 {
            let comps = enumerate_components(d, w_max).unwrap();
            assert_eq!(comps.len() as u64, 3 * w_max);
            for c in &comps {
                assert_eq!(c.e % c.w, 0);
                assert_eq!(c.e / c.w, d);
                let expected = match c.stratum {
                    Stratum::Hopf => ParamSpace::PuncturedDisk,
                    Stratum::Rational => ParamSpace::CStar,
                    Stratum::EllipticRuled => ParamSpace::ComplexLine,
                };
                assert_eq!(c.param_space, expected);
            }
            let edges = adjacency_edges(&comps);
            for w in 1..=w_max {
                let e = d * w;
                assert_eq!(
                    edges
                        .iter()
                        .filter(|x| x.witness == Witness::X1Family
                            && x.endpoints.map(|c| c.key())
                                == [(Stratum::EllipticRuled, e, w), (Stratum::Hopf, e, w)])
                        .count(),
                    1
                );
            }
            let x2 = edges.iter().filter(|x| x.witness == Witness::X2Family);
            for x in x2.clone() {
                let [r, er] = x.endpoints;
                assert_eq!((r.stratum, r.w), (Stratum::Rational, 1));
                assert_eq!(
                    (er.stratum, er.e, er.w),
                    (Stratum::EllipticRuled, 2 * r.e, 2)
                );
            }
            assert_eq!(x2.count(), usize::from(w_max >= 2));
            assert!(edges.iter().all(|x| {
                let s = x.endpoints.map(|c| c.stratum);
                !(s.contains(&Stratum::Hopf) && s.contains(&Stratum::Rational))
            }));
        }
    }
}

#[test]
fn components_bound_surfaces_of_their_degree() {
    for d in 1..=3 {
        for c in enumerate_components(d, 4).unwrap() {
            let datum = match c.stratum {
                Stratum::Hopf => SurfaceDatum::Hopf(hopf_with(c.e, c.w)),
                Stratum::Rational => SurfaceDatum::Rational(RationalDatum::new(c.e, c.w, true)),
                Stratum::EllipticRuled => SurfaceDatum::EllipticRuled(EllipticRuledDatum {
                    e: c.e,
                    w: c.w,
                    translation: true,
                    j_label: None,
                }),
            };
            let class = classify(&datum).unwrap();
            assert_eq!((class.e, class.w), (c.e, c.w));
            assert_eq!(class.verdict, Verdict::KodairaSurface(d), "{c}");
        }
    }
}
