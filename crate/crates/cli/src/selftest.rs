//! The acceptance suite: ten exact checks, each with an optional time budget.

use std::fmt;
use std::time::{Duration, Instant};

use kdl_core::boundary::{adjacency_edges, enumerate_components, ParamSpace, Witness};
use kdl_core::classifier::{
    cohomology_table, hopf_dsemistable, hopf_dsemistable_oracle, hopf_invariants, tangent_table,
    Cohomology, HopfDatum, Stratum, TangentDims,
};
use kdl_core::fan::{FanKind, IndexRange};
use kdl_core::graphs::{
    betti1, enumerate_gluings, enumerate_rational_models, neron_polygon_graph, triple_line_graph,
    GluingClass, MinimalModel,
};
use kdl_core::json::to_tagged_string;
use kdl_core::smoothing::{build_family, verify_family, VerificationReport};
use serde::Serialize;
use serde_json::json;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(rename = "elapsed_ms")]
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
    #[serde(rename = "budget_ms")]
    #[serde(serialize_with = "opt_millis")]
    pub budget: Option<Duration>,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

fn opt_millis<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_some(&(d.as_millis() as u64)),
        None => s.serialize_none(),
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let ms = self.elapsed.as_secs_f64() * 1e3;
        write!(
            f,
            "{status} [{:>2}] {}: {} ({ms:.0} ms",
            self.id, self.title, self.detail
        )?;
        if let Some(b) = self.budget {
            write!(f, " / {} ms budget", b.as_millis())?;
        }
        f.write_str(")")
    }
}

type Outcome = Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Option<Duration>,
    pub check: fn() -> Outcome,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if let Some(b) = self.budget {
            if passed && elapsed > b {
                passed = false;
                detail = format!("{detail}; exceeded time budget");
            }
        }
        CriterionResult {
            id: self.id,
            title: self.title,
            passed,
            detail,
            elapsed,
            budget: self.budget,
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "congruences agree with the lifting oracle",
        budget: secs(5),
        check: congruence_equivalence,
    },
    Criterion {
        id: 2,
        title: "warp divides degree",
        budget: secs(5),
        check: warp_divides_degree,
    },
    Criterion {
        id: 3,
        title: "Hopf fan battery",
        budget: secs(2),
        check: hopf_battery,
    },
    Criterion {
        id: 4,
        title: "rational fan battery",
        budget: secs(5),
        check: rational_battery,
    },
    Criterion {
        id: 5,
        title: "elliptic and Mumford fan battery",
        budget: secs(1),
        check: elliptic_mumford_battery,
    },
    Criterion {
        id: 6,
        title: "dual graphs and hexagon gluings",
        budget: secs(1),
        check: graph_theorem,
    },
    Criterion {
        id: 7,
        title: "cohomology and tangent tables",
        budget: None,
        check: tables,
    },
    Criterion {
        id: 8,
        title: "rational model enumeration",
        budget: None,
        check: rational_models,
    },
    Criterion {
        id: 9,
        title: "boundary structure",
        budget: secs(1),
        check: boundary_structure,
    },
    Criterion {
        id: 10,
        title: "CLI determinism and error reporting",
        budget: None,
        check: cli_determinism,
    },
];

/// Budget for the whole suite.
pub const TOTAL_BUDGET: Duration = Duration::from_secs(30);

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(Criterion::run).collect()
}

pub fn summary(results: &[CriterionResult]) -> String {
    let passed = results.iter().filter(|r| r.passed).count();
    let total: Duration = results.iter().map(|r| r.elapsed).sum();
    format!(
        "{passed}/{} criteria passed in {:.2} s",
        results.len(),
        total.as_secs_f64()
    )
}

pub fn to_json(results: &[CriterionResult]) -> String {
    let passed = results.iter().filter(|r| r.passed).count();
    to_tagged_string(&json!({
        "criteria": results,
        "passed": passed,
        "failed": results.len() - passed,
    }))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Every `(n, n1, n2, b)` with `n ≤ n_max` and unit `n1, n2`.
fn hopf_sweep(
    n_max: i64,
    mut visit: impl FnMut(&HopfDatum) -> Result<(), String>,
) -> Result<usize, String> {
    let mut count = 0;
    for n in 1..=n_max {
        let units: Vec<i64> = (0..n).filter(|&u| gcd(u, n) == 1).collect();
        for &n1 in &units {
            for &n2 in &units {
                for b in 0..n {
                    let h = HopfDatum::new(n, n1, n2, b).map_err(|e| e.to_string())?;
                    visit(&h)?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn congruence_equivalence() -> Outcome {
    let mut semistable = 0;
    let count = hopf_sweep(60, |h| {
        let fast = hopf_dsemistable(h);
        let oracle = hopf_dsemistable_oracle(h).map_err(|e| e.to_string())?;
        semistable += usize::from(fast);
        ensure(fast == oracle, || format!("disagreement at {h:?}"))
    })?;
    Ok(format!(
        "{count} tuples with n <= 60, {semistable} d-semistable"
    ))
}

fn warp_divides_degree() -> Outcome {
    let mut checked = 0;
    hopf_sweep(60, |h| {
        if !hopf_dsemistable(h) {
            return Ok(());
        }
        checked += 1;
        let (e, w) = hopf_invariants(h);
        ensure(e % w == 0, || {
            format!("w={w} does not divide e={e} at {h:?}")
        })
    })?;
    Ok(format!("{checked} d-semistable tuples"))
}

fn window(arity: usize, r: i64) -> Vec<IndexRange> {
    vec![IndexRange::symmetric(r); arity]
}

fn require(report: &VerificationReport, names: &[&str]) -> Result<(), String> {
    for name in names {
        let c = report
            .check(name)
            .ok_or_else(|| format!("{}: check {name} missing", report.family))?;
        ensure(c.passed, || {
            format!(
                "{}: {name} failed at {:?}: {}",
                report.family,
                c.counterexample,
                c.detail.as_deref().unwrap_or("")
            )
        })?;
    }
    ensure(report.all_pass, || {
        format!("{}: battery failed", report.family)
    })
}

fn hopf_battery() -> Outcome {
    for e in 1..=8 {
        let f = build_family(FanKind::HopfSmoothing { e }, e, 1, window(1, 32))
            .map_err(|x| x.to_string())?;
        require(
            &verify_family(&f),
            &["cones_smooth", "shift_Phi", "special_linear", "deflection"],
        )?;
    }
    Ok("e = 1..8, |m| <= 32".into())
}

fn rational_battery() -> Outcome {
    for e in 1..=5 {
        let f = build_family(FanKind::RationalSmoothing { e }, e, 1, window(2, 12))
            .map_err(|x| x.to_string())?;
        require(
            &verify_family(&f),
            &[
                "cones_smooth",
                "shift_Phi",
                "shift_Psi",
                "generators_commute",
                "special_linear",
            ],
        )?;
    }
    Ok("e = 1..5, |m|,|n| <= 12".into())
}

fn elliptic_mumford_battery() -> Outcome {
    for (e, w) in [(0, 1), (1, 1), (2, 2), (4, 2), (6, 3)] {
        let f = build_family(FanKind::EllipticSmoothing, e, w, window(1, 16))
            .map_err(|x| x.to_string())?;
        require(
            &verify_family(&f),
            &["shift_Psi", "fixes_rays_Phi", "deflection"],
        )?;
    }
    let f = build_family(FanKind::MumfordNeron, 0, 1, window(1, 16)).map_err(|x| x.to_string())?;
    require(&verify_family(&f), &["shift_T", "deflection"])?;
    Ok("elliptic (e,w) in {(0,1),(1,1),(2,2),(4,2),(6,3)}, Mumford, |i| <= 16".into())
}

fn graph_theorem() -> Outcome {
    let (bc, bd) = (
        betti1(&neron_polygon_graph(6)),
        betti1(&triple_line_graph()),
    );
    ensure((bc, bd) == (1, 2), || format!("betti numbers {bc}, {bd}"))?;
    let en = enumerate_gluings().map_err(|e| e.to_string())?;
    for r in &en.records {
        let untwisted = r.class == GluingClass::Untwisted;
        ensure((r.pullback_rank == Some(0)) == untwisted, || {
            format!(
                "gluing {:?}/{:?}: rank {:?}, {}",
                r.components, r.nodes, r.pullback_rank, r.class
            )
        })?;
    }
    Ok(format!(
        "{} valid of {} candidates ({} untwisted, {} twisted, {} orbits)",
        en.valid,
        en.candidates,
        en.untwisted,
        en.twisted,
        en.orbits.len()
    ))
}

fn tables() -> Outcome {
    use Stratum::*;
    let coh: [(Stratum, u64, [u32; 3]); 5] = [
        (Hopf, 1, [1, 1, 0]),
        (EllipticRuled, 1, [1, 2, 1]),
        (EllipticRuled, 0, [2, 3, 1]),
        (Rational, 1, [1, 2, 0]),
        (Rational, 0, [2, 3, 0]),
    ];
    let tan: [(Stratum, u64, [u32; 3]); 3] = [
        (Hopf, 1, [1, 2, 1]),
        (EllipticRuled, 1, [1, 3, 2]),
        (Rational, 1, [1, 3, 2]),
    ];
    for (s, e, want) in coh {
        let got = cohomology_table(s, e);
        ensure(got == Cohomology::from(want), || {
            format!("{s} e={e}: H = {got:?}")
        })?;
    }
    for (s, e, want) in tan {
        let got = tangent_table(s, e).dims();
        ensure(got == Some(TangentDims::from(want)), || {
            format!("{s} e={e}: T = {got:?}")
        })?;
    }
    Ok(format!("{} triples", coh.len() + tan.len()))
}

fn rational_models() -> Outcome {
    let got: Vec<_> = enumerate_rational_models()
        .iter()
        .map(|m| (m.minimal_model, m.polygon_size, m.blowups))
        .collect();
    let want = vec![
        (MinimalModel::ProjectivePlane, 6, 3),
        (MinimalModel::Hirzebruch, 6, 2),
    ];
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("(P2, 6, 3), (Hirzebruch, 6, 2)".into())
}

fn boundary_structure() -> Outcome {
    let mut edges_seen = 0;
    for d in 1..=3 {
        for w_max in 1..=4 {
            let comps = enumerate_components(d, w_max).map_err(|e| e.to_string())?;
            ensure(comps.len() as u64 == 3 * w_max, || {
                format!("d={d} w_max={w_max}: {} components", comps.len())
            })?;
            for c in &comps {
                let want = match c.stratum {
                    Stratum::Hopf => ParamSpace::PuncturedDisk,
                    Stratum::Rational => ParamSpace::CStar,
                    Stratum::EllipticRuled => ParamSpace::ComplexLine,
                };
                ensure(c.param_space == want && c.e == d * c.w, || {
                    format!("bad component {c}")
                })?;
            }
            let edges = adjacency_edges(&comps);
            edges_seen += edges.len();
            for w in 1..=w_max {
                let key = [
                    (Stratum::EllipticRuled, d * w, w),
                    (Stratum::Hopf, d * w, w),
                ];
                ensure(
                    edges.iter().any(|x| {
                        x.witness == Witness::X1Family && x.endpoints.map(|c| c.key()) == key
                    }),
                    || format!("d={d}: missing X1 edge at w={w}"),
                )?;
            }
            let x2: Vec<_> = edges
                .iter()
                .filter(|x| x.witness == Witness::X2Family)
                .collect();
            ensure(x2.len() == usize::from(w_max >= 2), || {
                format!("d={d}: {} X2 edges", x2.len())
            })?;
            for x in x2 {
                let [r, er] = x.endpoints.map(|c| c.key());
                ensure(
                    r == (Stratum::Rational, d, 1) && er == (Stratum::EllipticRuled, 2 * d, 2),
                    || format!("bad X2 edge {r:?} -- {er:?}"),
                )?;
            }
            ensure(
                !edges.iter().any(|x| {
                    let s = x.endpoints.map(|c| c.stratum);
                    s.contains(&Stratum::Hopf) && s.contains(&Stratum::Rational)
                }),
                || format!("d={d}: Hopf-rational edge present"),
            )?;
        }
    }
    Ok(format!("d <= 3, w_max <= 4, {edges_seen} edges"))
}

/// Runs the CLI in-process, returning exit code, stdout and stderr.
pub fn invoke(args: &[&str], stdin: &str) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("kdl").chain(args.iter().copied());
    let code = crate::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, out, err)
}

/// Fixture invocations whose output must be byte-for-byte reproducible.
pub const FIXTURES: &[&[&str]] = &[
    &[
        "classify",
        "--type",
        "hopf",
        "--data",
        r#"{"n":4,"n1":1,"n2":3,"b":2}"#,
    ],
    &[
        "classify",
        "--data",
        r#"{"type":"rational","e":3,"w":2,"untwisted":true}"#,
    ],
    &["fan", "--family", "rational", "--e", "2", "--window", "2"],
    &[
        "verify", "--family", "hopf", "--e", "2", "--w", "2", "--window", "16",
    ],
    &["graph", "enumerate"],
    &["boundary", "--degree", "1", "--max-warp", "2"],
    &[
        "boundary",
        "--degree",
        "2",
        "--max-warp",
        "3",
        "--format",
        "dot",
    ],
];

pub const MALFORMED: &[&str] = &[
    "classify",
    "--type",
    "hopf",
    "--data",
    r#"{"n":4,"n1":1,"n2":3,"bb":2}"#,
];

fn cli_determinism() -> Outcome {
    for args in FIXTURES {
        let first = invoke(args, "");
        let second = invoke(args, "");
        ensure(first.0 == 0, || format!("{args:?} exited {}", first.0))?;
        ensure(first == second, || format!("{args:?} is not reproducible"))?;
    }
    let (code, out, err) = invoke(MALFORMED, "");
    ensure(code == 2 && out.is_empty(), || {
        format!("malformed datum exited {code}")
    })?;
    let v: serde_json::Value =
        serde_json::from_slice(&err).map_err(|e| format!("stderr is not JSON: {e}"))?;
    ensure(v["error"]["kind"].is_string(), || {
        format!("unstructured error {v}")
    })?;
    Ok(format!(
        "{} fixtures reproducible; malformed datum -> exit 2, {}",
        FIXTURES.len(),
        v["error"]["kind"]
    ))
}
