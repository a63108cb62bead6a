//! Smoothing families: a window of a periodic fan together with the group
//! elements acting on it, and a verification battery over the window.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::classifier::{quotient_degree, smoothing_verdict, Stratum, Verdict};
use crate::error::{Error, Result};
use crate::fan::{
    apply, cone_is_smooth, hinge_from, share_facet, EllipticSmoothing, FanKind, FanWindow,
    FanWindowJson, GroupElement, HopfSmoothing, IndexRange, RationalSmoothing,
};
use crate::json::to_tagged_string;
use crate::lattice::{det, IntMatrix};

const ROOT_CHOICE: &str = "primitive w-th root choice";

/// Symbolic parameters of a family; labels are never evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub e: u64,
    pub w: u64,
    pub alpha_label: Option<String>,
    pub zeta_label: Option<String>,
}

/// A group element together with the index translation it should induce on
/// the fan (zero for elements fixing every cone).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    #[serde(flatten)]
    pub element: GroupElement,
    pub shift: Vec<i64>,
}

impl Generator {
    fn new(
        name: &str,
        lattice_part: IntMatrix,
        torus_part: &[&str],
        shift: Vec<i64>,
    ) -> Result<Self> {
        let torus_part = torus_part.iter().map(|s| s.to_string()).collect();
        Ok(Generator {
            name: name.to_string(),
            element: GroupElement::new(lattice_part, torus_part)?,
            shift,
        })
    }

    fn translates(&self) -> bool {
        self.shift.iter().any(|&s| s != 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientInfo {
    pub galois_order: u64,
    pub generic_fiber_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingFamily {
    pub kind: FanKind,
    pub params: FamilyParams,
    pub fan: FanWindow,
    pub generators: Vec<Generator>,
    pub quotient_info: QuotientInfo,
}

fn stratum_of(kind: FanKind) -> Option<Stratum> {
    match kind {
        FanKind::MumfordNeron => None,
        FanKind::HopfSmoothing { .. } => Some(Stratum::Hopf),
        FanKind::EllipticSmoothing => Some(Stratum::EllipticRuled),
        FanKind::RationalSmoothing { .. } => Some(Stratum::Rational),
    }
}

/// Builds the family of `kind` over `window` (one range per index axis).
///
/// `e` must agree with the degree carried by `kind`, if any; the Mumford
/// family has neither degree nor warp and takes `e = 0, w = 1`.
pub fn build_family(
    kind: FanKind,
    e: u64,
    w: u64,
    window: Vec<IndexRange>,
) -> Result<SmoothingFamily> {
    if let Some(d) = kind.degree() {
        if d != e {
            return Err(Error::InconsistentData(format!(
                "family {kind} built with degree {e}"
            )));
        }
    }
    if kind == FanKind::MumfordNeron && (e, w) != (0, 1) {
        return Err(Error::InvalidDatum(
            "the mumford family takes no degree or warp".into(),
        ));
    }
    let generic_fiber_degree = quotient_degree(e, w)?;
    let fan = FanWindow::build(kind, window)?;

    let alpha = format!("α ({ROOT_CHOICE})");
    let zeta = format!("ζ ({ROOT_CHOICE})");
    let (generators, alpha_label, zeta_label) = match kind {
        FanKind::MumfordNeron => (
            vec![Generator::new(
                "T",
                IntMatrix::from_i64_rows(&[[1, 0], [1, 1]]),
                &["1", "1"],
                vec![1],
            )?],
            None,
            None,
        ),
        FanKind::HopfSmoothing { e } => (
            vec![
                Generator::new("Phi", HopfSmoothing::phi(e), &["1", "1", "1"], vec![1])?,
                Generator::new("Psi", IntMatrix::identity(3), &["1", &alpha, "1"], vec![0])?,
            ],
            Some(alpha),
            None,
        ),
        FanKind::EllipticSmoothing => (
            vec![
                Generator::new("Psi", EllipticSmoothing::psi(), &["1", "1", "1"], vec![1])?,
                Generator::new(
                    "Phi",
                    EllipticSmoothing::phi_lattice(generic_fiber_degree),
                    &[&alpha, "1", "1"],
                    vec![0],
                )?,
            ],
            Some(alpha),
            None,
        ),
        FanKind::RationalSmoothing { e } => (
            vec![
                Generator::new("Phi", RationalSmoothing::phi(e), &["1"; 5], vec![1, 0])?,
                Generator::new(
                    "Psi",
                    RationalSmoothing::psi(),
                    &["1", "1", "1", "1", &zeta],
                    vec![0, 1],
                )?,
            ],
            None,
            Some(zeta),
        ),
    };

    Ok(SmoothingFamily {
        kind,
        params: FamilyParams {
            e,
            w,
            alpha_label,
            zeta_label,
        },
        fan,
        generators,
        quotient_info: QuotientInfo {
            galois_order: w,
            generic_fiber_degree,
        },
    })
}

impl SmoothingFamily {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'static str,
            params: &'a FamilyParams,
            fan: FanWindowJson<'a>,
            generators: &'a [Generator],
            quotient_info: QuotientInfo,
        }
        to_tagged_string(&Body {
            kind: self.kind.name(),
            params: &self.params,
            fan: (&self.fan).into(),
            generators: &self.generators,
            quotient_info: self.quotient_info,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First window index at which the check failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            counterexample: None,
            detail: None,
        }
    }

    fn fail(name: impl Into<String>, index: Option<Vec<i64>>, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            counterexample: index,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<CheckResult>,
    /// Steps of the construction that have no fan-level certificate.
    pub untested: Vec<String>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        to_tagged_string(self)
    }
}

fn offset(index: &[i64], by: &[i64], k: i64) -> Vec<i64> {
    index.iter().zip(by).map(|(i, s)| i + k * s).collect()
}

fn unit(arity: usize, direction: usize) -> Vec<i64> {
    (0..arity).map(|d| i64::from(d == direction)).collect()
}

/// Runs `test` on every stored index; reports the first failure.
fn for_each_index(
    f: &SmoothingFamily,
    name: impl Into<String>,
    mut test: impl FnMut(&[i64]) -> std::result::Result<(), String>,
) -> CheckResult {
    let name = name.into();
    for index in f.fan.cones.keys() {
        if let Err(detail) = test(index) {
            return CheckResult::fail(name, Some(index.clone()), detail);
        }
    }
    CheckResult::pass(name)
}

fn untested_claims(kind: FanKind) -> Vec<String> {
    let common = [
        "the group acts freely and properly discontinuously on the open toric subset",
        "the quotient is compact over the disk and its general fibre is smooth",
    ];
    let specific: &[&str] = match kind {
        FanKind::MumfordNeron => &["the central fibre of the quotient is a Neron 1-gon"],
        FanKind::HopfSmoothing { .. } => &[
            "before the quotient by the torus element, the general fibre is a primary Kodaira surface of degree e",
            "the central fibre of the quotient is the Hopf-type surface with the given gluing",
        ],
        FanKind::EllipticSmoothing => &[
            "the central fibre upstairs is a Neron infinity-gon times C*",
            "every elliptic ruled d-semistable surface of the given degree and warp occurs as a central fibre",
        ],
        FanKind::RationalSmoothing { .. } => &[
            "blowups and contraction turning the toric 5-fold into a family with rational central fibre are not modelled",
            "the central fibre upstairs is a bundle of Neron infinity-gons over a Neron infinity-gon",
            "every horizontal gluing is realised by some value of the C* coordinate",
        ],
    };
    common
        .iter()
        .chain(specific)
        .map(|s| s.to_string())
        .collect()
}

/// Runs every fan-level check over the whole window. Failures are recorded in
/// the report, never raised.
pub fn verify_family(f: &SmoothingFamily) -> VerificationReport {
    let family = f.kind.family();
    let arity = family.arity();
    let mut checks = Vec::new();

    checks.push(for_each_index(f, "cones_match_formula", |i| {
        let expected = family.cone(i).map_err(|e| e.to_string())?;
        (f.fan.cones[i] == expected)
            .then_some(())
            .ok_or_else(|| "stored cone differs from the generator formula".to_string())
    }));

    checks.push(for_each_index(f, "cones_smooth", |i| {
        cone_is_smooth(&f.fan.cones[i])
            .then_some(())
            .ok_or_else(|| "rays do not extend to a lattice basis".to_string())
    }));

    checks.push(for_each_index(f, "consecutive_share_facet", |i| {
        for d in 0..arity {
            if let Some(next) = f.fan.get(&offset(i, &unit(arity, d), 1)) {
                if !share_facet(&f.fan.cones[i], next) {
                    return Err(format!("no common facet with the next cone along axis {d}"));
                }
            }
        }
        Ok(())
    }));

    for g in &f.generators {
        let m = &g.element.lattice_part;
        checks.push(for_each_index(f, format!("shift_{}", g.name), |i| {
            let Some(target) = f.fan.get(&offset(i, &g.shift, 1)) else {
                return Ok(());
            };
            let image = apply(m, &f.fan.cones[i]).map_err(|e| e.to_string())?;
            (&image == target)
                .then_some(())
                .ok_or_else(|| format!("image is not the cone at shifted index {:?}", g.shift))
        }));
    }

    for g in f.generators.iter().filter(|g| !g.translates()) {
        let m = &g.element.lattice_part;
        checks.push(for_each_index(f, format!("fixes_rays_{}", g.name), |i| {
            for ray in f.fan.cones[i].rays() {
                let image = m.act_on(&ray.embed(m.dim())).map_err(|e| e.to_string())?;
                if image != ray.embed(m.dim()) {
                    return Err(format!("ray {ray} moves to {image}"));
                }
            }
            Ok(())
        }));
    }

    checks.push(for_each_index(f, "deflection", |i| {
        for d in 0..arity {
            let u = unit(arity, d);
            let cone = |k: i64| f.fan.get(&offset(i, &u, k));
            let (Some(c2m), Some(c1m), Some(c0), Some(c1p), Some(c2p)) =
                (cone(-2), cone(-1), cone(0), cone(1), cone(2))
            else {
                continue;
            };
            let (Some(before), Some(here), Some(after)) = (
                hinge_from(c2m, c1m, c0),
                hinge_from(c1m, c0, c1p),
                hinge_from(c0, c1p, c2p),
            ) else {
                return Err(format!("no unique hinge ray along axis {d}"));
            };
            let got = before.add(&after).sub(&here.scale(&BigInt::from(2)));
            let want = family.expected_deflection(d);
            if got != want {
                return Err(format!("deflection {got} along axis {d}, expected {want}"));
            }
        }
        Ok(())
    }));

    checks.push(generator_check(f, "special_linear", |g| {
        let d = det(&g.element.lattice_part);
        d.is_one().then_some(()).ok_or_else(|| format!("det = {d}"))
    }));

    checks.push(commute_check(f));
    checks.push(free_check(f));
    checks.push(transitive_check(f, arity));

    let all_pass = checks.iter().all(|c| c.passed);
    VerificationReport {
        family: f.kind.to_string(),
        checks,
        untested: untested_claims(f.kind),
        all_pass,
    }
}

fn generator_check(
    f: &SmoothingFamily,
    name: &str,
    test: impl Fn(&Generator) -> std::result::Result<(), String>,
) -> CheckResult {
    for g in &f.generators {
        if let Err(detail) = test(g) {
            return CheckResult::fail(name, None, format!("{}: {detail}", g.name));
        }
    }
    CheckResult::pass(name)
}

fn commute_check(f: &SmoothingFamily) -> CheckResult {
    for (k, a) in f.generators.iter().enumerate() {
        for b in &f.generators[k + 1..] {
            let (ma, mb) = (&a.element.lattice_part, &b.element.lattice_part);
            if ma.dim() != mb.dim() || ma * mb != mb * ma {
                return CheckResult::fail(
                    "generators_commute",
                    None,
                    format!("{} and {} do not commute", a.name, b.name),
                );
            }
        }
    }
    CheckResult::pass("generators_commute")
}

/// No cone is fixed by a nonzero power (up to the third) of a translating
/// generator, and distinct indices carry distinct cones.
fn free_check(f: &SmoothingFamily) -> CheckResult {
    const POWERS: u32 = 3;
    let distinct: HashSet<_> = f.fan.cones.values().collect();
    if distinct.len() != f.fan.cones.len() {
        return CheckResult::fail(
            "free_action",
            None,
            "two indices carry the same cone".into(),
        );
    }
    for g in f.generators.iter().filter(|g| g.translates()) {
        let powers: Vec<_> = (1..=POWERS)
            .map(|k| g.element.lattice_part.pow(k))
            .collect();
        let res = for_each_index(f, "free_action", |i| {
            for (k, p) in powers.iter().enumerate() {
                match apply(p, &f.fan.cones[i]) {
                    Ok(image) if image == f.fan.cones[i] => {
                        return Err(format!("{}^{} fixes the cone", g.name, k + 1))
                    }
                    Ok(_) => {}
                    Err(e) => return Err(e.to_string()),
                }
            }
            Ok(())
        });
        if !res.passed {
            return res;
        }
    }
    CheckResult::pass("free_action")
}

/// The index shifts of the translating generators span the index lattice,
/// so every cone is the image of one base cone.
fn transitive_check(f: &SmoothingFamily, arity: usize) -> CheckResult {
    let shifts: Vec<Vec<i64>> = f
        .generators
        .iter()
        .filter(|g| g.translates())
        .map(|g| g.shift.clone())
        .collect();
    let spans = shifts.len() == arity && {
        let m = IntMatrix::from_i64_rows(&shifts);
        let d = det(&m);
        d.is_one() || (-d).is_one()
    };
    if spans {
        CheckResult::pass("transitive_on_cones")
    } else {
        CheckResult::fail(
            "transitive_on_cones",
            None,
            format!("index shifts {shifts:?} do not span Z^{arity}"),
        )
    }
}

/// Degrees before and after the Galois quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInvariants {
    pub pre_quotient_degree: u64,
    pub galois_order: u64,
    pub post_quotient_degree: u64,
    pub verdict: Option<Verdict>,
    pub fiber_label: String,
    pub base_label: String,
}

pub fn family_invariants(f: &SmoothingFamily) -> Result<FamilyInvariants> {
    let FamilyParams { e, w, .. } = f.params;
    let post = quotient_degree(e, w)?;
    let verdict = stratum_of(f.kind)
        .map(|s| smoothing_verdict(s, e, w, true))
        .transpose()?;
    let fiber_label = match verdict {
        None => "elliptic curve".to_string(),
        Some(Verdict::ComplexTorus) => "complex torus".to_string(),
        Some(_) => format!("primary Kodaira surface of degree {post}"),
    };
    let base_label = match f.kind {
        FanKind::RationalSmoothing { .. } => "Δ × C*",
        _ => "Δ",
    };
    Ok(FamilyInvariants {
        pre_quotient_degree: e,
        galois_order: w,
        post_quotient_degree: post,
        verdict,
        fiber_label,
        base_label: base_label.to_string(),
    })
}

impl FamilyInvariants {
    pub fn to_json(&self) -> String {
        to_tagged_string(self)
    }
}
