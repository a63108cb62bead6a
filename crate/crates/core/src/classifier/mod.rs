//! Admissibility, d-semistability, invariants and smoothing verdicts for the
//! three normalization types of an irreducible degeneration.

mod hopf;
mod ruled;
mod tables;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{from_tagged_str, to_tagged_string};
use crate::lattice::{det, IntMatrix};

pub use hopf::{
    hopf_dsemistable, hopf_dsemistable_oracle, hopf_invariants, hopf_kx_zero, GluingMatrix,
    HopfDatum,
};
pub use ruled::{ruled_dsemistable, EllipticRuledDatum, RationalDatum};
pub use tables::{
    cohomology_table, degeneration_type, tangent_table, versal_descriptor, Cohomology,
    DegenerationType, EllipticRuledType, HopfType, RationalType, Tangent, TangentDims,
    TangentUnavailable, TypeRegistry, Versal,
};

/// Normalization type of the surface, which is also the boundary stratum it
/// lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stratum {
    #[serde(rename = "hopf")]
    Hopf,
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "elliptic")]
    EllipticRuled,
}

impl Stratum {
    pub const ALL: [Stratum; 3] = [Stratum::Hopf, Stratum::Rational, Stratum::EllipticRuled];

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Hopf => "hopf",
            Stratum::Rational => "rational",
            Stratum::EllipticRuled => "elliptic",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::Hopf => "Hopf",
            Stratum::Rational => "Rational",
            Stratum::EllipticRuled => "EllipticRuled",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum SurfaceDatum {
    #[serde(rename = "hopf")]
    Hopf(HopfDatum),
    #[serde(rename = "elliptic")]
    EllipticRuled(EllipticRuledDatum),
    #[serde(rename = "rational")]
    Rational(RationalDatum),
}

impl SurfaceDatum {
    pub fn stratum(&self) -> Stratum {
        match self {
            SurfaceDatum::Hopf(_) => Stratum::Hopf,
            SurfaceDatum::EllipticRuled(_) => Stratum::EllipticRuled,
            SurfaceDatum::Rational(_) => Stratum::Rational,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_tagged_str(text)
    }

    pub fn to_json(&self) -> String {
        to_tagged_string(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Verdict {
    KodairaSurface(u64),
    ComplexTorus,
    NoSmoothing,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::KodairaSurface(d) => write!(f, "KodairaSurface({d})"),
            Verdict::ComplexTorus => f.write_str("ComplexTorus"),
            Verdict::NoSmoothing => f.write_str("NoSmoothing"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ComplexTorus" => Ok(Verdict::ComplexTorus),
            "NoSmoothing" => Ok(Verdict::NoSmoothing),
            _ => s
                .strip_prefix("KodairaSurface(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|d| d.parse().ok())
                .map(Verdict::KodairaSurface)
                .ok_or_else(|| Error::InvalidDatum(format!("unknown verdict `{s}`"))),
        }
    }
}

impl From<Verdict> for String {
    fn from(v: Verdict) -> Self {
        v.to_string()
    }
}

impl TryFrom<String> for Verdict {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceClass {
    #[serde(rename = "type")]
    pub stratum: Stratum,
    pub admissible: bool,
    pub d_semistable: bool,
    pub e: u64,
    pub w: u64,
    pub verdict: Verdict,
    /// Only known when `K_X = 0`.
    pub cohomology: Option<Cohomology>,
    pub tangent: Tangent,
    pub versal: Versal,
    pub rules: Vec<String>,
}

impl SurfaceClass {
    pub fn to_json(&self) -> String {
        to_tagged_string(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_tagged_str(text)
    }
}

/// What a smoothing of an admissible surface with these invariants looks like.
pub fn smoothing_verdict(stratum: Stratum, e: u64, w: u64, d_semistable: bool) -> Result<Verdict> {
    if !d_semistable {
        return Ok(Verdict::NoSmoothing);
    }
    if !ruled_dsemistable(e, w) {
        return Err(Error::InconsistentData(format!(
            "{stratum} surface claimed d-semistable with warp {w} not dividing degree {e}"
        )));
    }
    if e == 0 {
        return Ok(Verdict::ComplexTorus);
    }
    Ok(Verdict::KodairaSurface(e / w))
}

/// Factor by which the commutator of a lattice basis scales under `M`.
pub fn commutator_scale(m: &IntMatrix) -> Result<BigInt> {
    if m.dim() != 2 {
        return Err(Error::DimMismatch {
            matrix: m.dim(),
            cone: 2,
        });
    }
    Ok(det(m))
}

/// Degree of the quotient of a degree-`d` bundle by a free group of order `w`
/// acting on the base.
pub fn quotient_degree(d: u64, w: u64) -> Result<u64> {
    if w == 0 || !d.is_multiple_of(w) {
        return Err(Error::NotDivisible {
            dividend: d,
            divisor: w,
        });
    }
    Ok(d / w)
}

struct Inspection {
    admissible: bool,
    d_semistable: bool,
    e: u64,
    w: u64,
}

fn inspect(datum: &SurfaceDatum) -> Result<Inspection> {
    match datum {
        SurfaceDatum::Hopf(h) => {
            h.validate()?;
            let m = h.gluing_matrix();
            let admissible = hopf_kx_zero(&m);
            let [_, mb, _, _] = m.entries();
            if admissible && (mb - h.b).rem_euclid(h.n) != 0 {
                return Err(Error::InconsistentData(format!(
                    "gluing matrix translation {mb} differs from b = {} mod {}",
                    h.b, h.n
                )));
            }
            let (e, w) = hopf_invariants(h);
            Ok(Inspection {
                admissible,
                d_semistable: hopf_dsemistable(h),
                e,
                w,
            })
        }
        SurfaceDatum::EllipticRuled(d) => Ok(Inspection {
            admissible: d.translation,
            d_semistable: ruled_dsemistable(d.e, d.w),
            e: d.e,
            w: d.w,
        }),
        SurfaceDatum::Rational(d) => Ok(Inspection {
            admissible: d.is_untwisted()?,
            d_semistable: ruled_dsemistable(d.e, d.w),
            e: d.e,
            w: d.w,
        }),
    }
}

/// Full classification record of a datum.
///
/// `admissible` records `K_X = 0`. Cohomology needs only that; tangent
/// dimensions and the versal base additionally need d-semistability.
pub fn classify(datum: &SurfaceDatum) -> Result<SurfaceClass> {
    let stratum = datum.stratum();
    let rules = degeneration_type(stratum);
    let Inspection {
        admissible,
        d_semistable,
        e,
        w,
    } = inspect(datum)?;

    let verdict = if admissible {
        smoothing_verdict(stratum, e, w, d_semistable)?
    } else {
        Verdict::NoSmoothing
    };
    let cohomology = admissible.then(|| rules.cohomology(e));
    let (tangent, versal) = match (admissible, d_semistable) {
        (true, true) => (rules.tangent(e), rules.versal(e)),
        (false, _) => (
            Tangent::unavailable("K_X is not trivial", None),
            Versal::Unavailable,
        ),
        (true, false) => (
            Tangent::unavailable("not d-semistable", None),
            Versal::Unavailable,
        ),
    };
    Ok(SurfaceClass {
        stratum,
        admissible,
        d_semistable,
        e,
        w,
        verdict,
        cohomology,
        tangent,
        versal,
        rules: rules.rules().iter().map(|s| s.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_examples() {
        assert_eq!(
            smoothing_verdict(Stratum::Hopf, 2, 2, true).unwrap(),
            Verdict::KodairaSurface(1)
        );
        assert_eq!(
            smoothing_verdict(Stratum::EllipticRuled, 0, 1, true).unwrap(),
            Verdict::ComplexTorus
        );
        assert_eq!(
            smoothing_verdict(Stratum::Rational, 6, 3, true).unwrap(),
            Verdict::KodairaSurface(2)
        );
        assert_eq!(
            smoothing_verdict(Stratum::Rational, 3, 2, false).unwrap(),
            Verdict::NoSmoothing
        );
        assert!(matches!(
            smoothing_verdict(Stratum::Rational, 3, 2, true),
            Err(Error::InconsistentData(_))
        ));
        assert_eq!(
            smoothing_verdict(Stratum::EllipticRuled, 0, 0, true).unwrap(),
            Verdict::ComplexTorus
        );
    }

    #[test]
    fn verdict_strings_round_trip() {
        for v in [
            Verdict::KodairaSurface(7),
            Verdict::ComplexTorus,
            Verdict::NoSmoothing,
        ] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
        assert!("KodairaSurface(x)".parse::<Verdict>().is_err());
    }

    #[test]
    fn commutator_and_quotient() {
        assert_eq!(
            commutator_scale(&IntMatrix::identity(2)).unwrap(),
            BigInt::from(1)
        );
        let m = IntMatrix::from_i64_rows(&[[1, 0], [0, 2]]);
        assert_eq!(commutator_scale(&m).unwrap(), BigInt::from(2));
        assert!(commutator_scale(&IntMatrix::identity(3)).is_err());
        assert_eq!(quotient_degree(4, 2).unwrap(), 2);
        assert_eq!(quotient_degree(6, 3).unwrap(), 2);
        assert_eq!(quotient_degree(0, 1).unwrap(), 0);
        assert!(matches!(
            quotient_degree(5, 2),
            Err(Error::NotDivisible {
                dividend: 5,
                divisor: 2
            })
        ));
        assert!(quotient_degree(5, 0).is_err());
    }

    #[test]
    fn commutator_scale_predicts_total_degree() {
        // An index-w sublattice inclusion multiplies the degree d' by w.
        for (w, d_quot) in [(1u64, 3u64), (2, 1), (3, 2), (6, 1)] {
            let m = IntMatrix::from_i64_rows(&[[1, 0], [0, w as i64]]);
            let scale = commutator_scale(&m).unwrap();
            let d = u64::try_from(scale).unwrap() * d_quot;
            assert_eq!(quotient_degree(d, w).unwrap(), d_quot);
        }
    }

    #[test]
    fn classify_hopf_example() {
        let datum = SurfaceDatum::Hopf(HopfDatum {
            matrix: Some(GluingMatrix::translation(2)),
            ..HopfDatum::new(4, 1, 3, 2).unwrap()
        });
        let c = classify(&datum).unwrap();
        assert!(c.admissible && c.d_semistable);
        assert_eq!((c.e, c.w), (2, 2));
        assert_eq!(c.verdict, Verdict::KodairaSurface(1));
        assert_eq!(c.cohomology, Some(Cohomology::from([1, 1, 0])));
        assert_eq!(c.tangent.dims(), Some(TangentDims::from([1, 2, 1])));
        assert_eq!(c.versal.to_string(), "SmoothBaseWithCurve(2,1)");
    }

    #[test]
    fn classify_non_translation_is_inadmissible() {
        let datum = SurfaceDatum::EllipticRuled(EllipticRuledDatum {
            e: 4,
            w: 2,
            translation: false,
            j_label: None,
        });
        let c = classify(&datum).unwrap();
        assert!(!c.admissible);
        assert_eq!(c.verdict, Verdict::NoSmoothing);
        assert_eq!(c.cohomology, None);
        assert_eq!(c.versal, Versal::Unavailable);
    }

    #[test]
    fn classify_rational_not_dsemistable() {
        let c = classify(&SurfaceDatum::Rational(RationalDatum::new(3, 2, true))).unwrap();
        assert!(c.admissible);
        assert!(!c.d_semistable);
        assert_eq!(c.verdict, Verdict::NoSmoothing);
        assert_eq!(c.cohomology, Some(Cohomology::from([1, 2, 0])));
        assert!(c.tangent.dims().is_none());
    }

    #[test]
    fn classify_hopf_with_non_translation_matrix() {
        let datum = SurfaceDatum::Hopf(HopfDatum {
            matrix: Some(GluingMatrix::new(0, -1, 1, 0).unwrap()),
            ..HopfDatum::new(4, 1, 3, 2).unwrap()
        });
        let c = classify(&datum).unwrap();
        assert!(!c.admissible);
        assert_eq!(c.verdict, Verdict::NoSmoothing);
    }

    #[test]
    fn classify_hopf_rejects_mismatched_translation() {
        let datum = SurfaceDatum::Hopf(HopfDatum {
            matrix: Some(GluingMatrix::translation(1)),
            ..HopfDatum::new(4, 1, 3, 2).unwrap()
        });
        assert!(matches!(classify(&datum), Err(Error::InconsistentData(_))));
        // The translation only matters modulo n.
        let datum = SurfaceDatum::Hopf(HopfDatum {
            matrix: Some(GluingMatrix::translation(6)),
            ..HopfDatum::new(4, 1, 3, 2).unwrap()
        });
        assert!(classify(&datum).is_ok());
    }

    #[test]
    fn datum_json_round_trip_and_strictness() {
        let text = r#"{"schema":"kdl/1","type":"hopf","n":4,"n1":1,"n2":3,"b":2}"#;
        let d = SurfaceDatum::from_json(text).unwrap();
        assert_eq!(d.to_json(), text);
        assert!(
            SurfaceDatum::from_json(r#"{"type":"hopf","n":4,"n1":1,"n2":3,"b":2,"x":0}"#).is_err()
        );
        assert!(SurfaceDatum::from_json(r#"{"type":"inoue"}"#).is_err());
        let r =
            SurfaceDatum::from_json(r#"{"type":"rational","e":2,"w":1,"untwisted":true}"#).unwrap();
        assert_eq!(r.stratum(), Stratum::Rational);
    }

    #[test]
    fn class_json_round_trip() {
        let c = classify(&SurfaceDatum::EllipticRuled(EllipticRuledDatum {
            e: 0,
            w: 1,
            translation: true,
            j_label: Some("j".into()),
        }))
        .unwrap();
        assert_eq!(c.verdict, Verdict::ComplexTorus);
        let text = c.to_json();
        assert!(text.starts_with(r#"{"schema":"kdl/1","type":"elliptic""#));
        assert_eq!(SurfaceClass::from_json(&text).unwrap(), c);
    }
}
