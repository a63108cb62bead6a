use std::collections::BTreeMap;

use serde::Serialize;

use super::cone::Cone;
use super::family::{FanFamily, FanKind};
use crate::error::{Error, Result};
use crate::lattice::IntVec;

/// The cone of `kind` at `index`.
pub fn cone_at(kind: FanKind, index: &[i64]) -> Result<Cone> {
    kind.family().cone(index)
}

fn step(index: &[i64], direction: usize, by: i64) -> Vec<i64> {
    let mut out = index.to_vec();
    out[direction] += by;
    out
}

/// Ray shared by the cones at `index - e_dir` and `index` which is not a ray
/// of the cone at `index + e_dir`.
pub fn hinge_ray(family: &dyn FanFamily, index: &[i64], direction: usize) -> Result<IntVec> {
    check_direction(family, index, direction)?;
    let prev = family.cone(&step(index, direction, -1))?;
    let here = family.cone(index)?;
    let next = family.cone(&step(index, direction, 1))?;
    hinge_from(&prev, &here, &next).ok_or_else(|| {
        Error::InvalidCone(format!(
            "no unique hinge ray at {index:?} in direction {direction}"
        ))
    })
}

pub(crate) fn hinge_from(prev: &Cone, here: &Cone, next: &Cone) -> Option<IntVec> {
    let mut candidates = prev
        .common_rays(here)
        .into_iter()
        .filter(|r| !next.contains_ray(r));
    let ray = candidates.next()?;
    candidates.next().is_none().then_some(ray)
}

fn check_direction(family: &dyn FanFamily, index: &[i64], direction: usize) -> Result<()> {
    if index.len() != family.arity() || direction >= family.arity() {
        return Err(Error::ArityMismatch {
            family: family.name(),
            expected: family.arity(),
            found: if index.len() != family.arity() {
                index.len()
            } else {
                direction + 1
            },
        });
    }
    Ok(())
}

/// `v_{i-1} + v_{i+1} - 2 v_i` for the hinge rays along `direction`.
pub fn deflection(kind: FanKind, index: &[i64], direction: usize) -> Result<IntVec> {
    let family = kind.family();
    check_direction(family.as_ref(), index, direction)?;
    let before = hinge_ray(family.as_ref(), &step(index, direction, -1), direction)?;
    let here = hinge_ray(family.as_ref(), index, direction)?;
    let after = hinge_ray(family.as_ref(), &step(index, direction, 1), direction)?;
    Ok(before.add(&after).sub(&here.scale(&2.into())))
}

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn symmetric(radius: i64) -> Self {
        IndexRange {
            lo: -radius,
            hi: radius,
        }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn len(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Finite slice of a periodic fan, cones keyed by index tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanWindow {
    pub kind: FanKind,
    pub ranges: Vec<IndexRange>,
    pub cones: BTreeMap<Vec<i64>, Cone>,
}

impl FanWindow {
    pub fn build(kind: FanKind, ranges: Vec<IndexRange>) -> Result<Self> {
        let family = kind.family();
        if ranges.len() != family.arity() {
            return Err(Error::ArityMismatch {
                family: family.name(),
                expected: family.arity(),
                found: ranges.len(),
            });
        }
        if ranges.iter().any(IndexRange::is_empty) {
            return Err(Error::InvalidDatum("empty index window".into()));
        }
        let mut cones = BTreeMap::new();
        for index in index_tuples(&ranges) {
            let cone = family.cone(&index)?;
            cones.insert(index, cone);
        }
        Ok(FanWindow {
            kind,
            ranges,
            cones,
        })
    }

    /// Same radius on every axis.
    pub fn symmetric(kind: FanKind, radius: i64) -> Result<Self> {
        let arity = kind.family().arity();
        Self::build(kind, vec![IndexRange::symmetric(radius); arity])
    }

    pub fn contains(&self, index: &[i64]) -> bool {
        index.len() == self.ranges.len()
            && index.iter().zip(&self.ranges).all(|(&i, r)| r.contains(i))
    }

    pub fn get(&self, index: &[i64]) -> Option<&Cone> {
        self.cones.get(index)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_tagged_string(&FanWindowJson::from(self))
    }
}

/// Every index tuple of the product of ranges, in lexicographic order.
pub fn index_tuples(ranges: &[IndexRange]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        acc.into_iter()
            .flat_map(|prefix| {
                (r.lo..=r.hi).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect()
    })
}

#[derive(Serialize)]
pub(crate) struct FanWindowJson<'a> {
    kind: &'static str,
    params: Params,
    range: Vec<[i64; 2]>,
    cones: Vec<ConeJson<'a>>,
}

#[derive(Serialize)]
struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    e: Option<u64>,
}

#[derive(Serialize)]
struct ConeJson<'a> {
    index: &'a [i64],
    rays: &'a [IntVec],
}

impl<'a> From<&'a FanWindow> for FanWindowJson<'a> {
    fn from(w: &'a FanWindow) -> Self {
        FanWindowJson {
            kind: w.kind.name(),
            params: Params { e: w.kind.degree() },
            range: w.ranges.iter().map(|r| [r.lo, r.hi]).collect(),
            cones: w
                .cones
                .iter()
                .map(|(index, cone)| ConeJson {
                    index,
                    rays: cone.rays(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::cone::{apply, cone_is_smooth, share_facet};
    use crate::lattice::IntMatrix;

    fn rays(c: &Cone) -> Vec<Vec<i64>> {
        c.rays().iter().map(|r| r.to_i64s().unwrap()).collect()
    }

    #[test]
    fn cone_at_examples() {
        let c = cone_at(FanKind::HopfSmoothing { e: 3 }, &[-1]).unwrap();
        assert_eq!(rays(&c), vec![vec![-1, 3, 1], vec![0, 0, 1]]);
        let c = cone_at(FanKind::MumfordNeron, &[0]).unwrap();
        assert_eq!(rays(&c), vec![vec![0, 1], vec![1, 1]]);
        let c = cone_at(FanKind::RationalSmoothing { e: 1 }, &[0, 0]).unwrap();
        let mut expected = vec![
            vec![0, 0, 1, 0],
            vec![1, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![0, 1, 0, 1],
        ];
        expected.sort();
        assert_eq!(rays(&c), expected);
    }

    #[test]
    fn cone_at_arity_mismatch() {
        assert!(matches!(
            cone_at(FanKind::RationalSmoothing { e: 1 }, &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(cone_at(FanKind::MumfordNeron, &[0, 1]).is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(cone_is_smooth(
            &cone_at(FanKind::HopfSmoothing { e: 1 }, &[0]).unwrap()
        ));
        assert!(cone_is_smooth(
            &cone_at(FanKind::RationalSmoothing { e: 2 }, &[3, -1]).unwrap()
        ));
    }

    #[test]
    fn apply_examples() {
        let kind = FanKind::HopfSmoothing { e: 2 };
        let phi = IntMatrix::from_i64_rows(&[[1, 2, 0], [0, 1, 0], [1, 0, 1]]);
        let c0 = cone_at(kind, &[0]).unwrap();
        assert_eq!(apply(&phi, &c0).unwrap(), cone_at(kind, &[1]).unwrap());
        assert_eq!(apply(&IntMatrix::identity(3), &c0).unwrap(), c0);

        let t = IntMatrix::from_i64_rows(&[[1, 0], [1, 1]]);
        for m in -5..5 {
            let c = cone_at(FanKind::MumfordNeron, &[m]).unwrap();
            assert_eq!(
                apply(&t, &c).unwrap(),
                cone_at(FanKind::MumfordNeron, &[m + 1]).unwrap()
            );
        }
    }

    #[test]
    fn facet_examples() {
        let kind = FanKind::HopfSmoothing { e: 1 };
        let c0 = cone_at(kind, &[0]).unwrap();
        let c1 = cone_at(kind, &[1]).unwrap();
        let c2 = cone_at(kind, &[2]).unwrap();
        assert!(share_facet(&c0, &c1));
        assert!(!share_facet(&c0, &c2));
        assert!(!share_facet(&c0, &c0));

        let r = FanKind::RationalSmoothing { e: 1 };
        let a = cone_at(r, &[0, 0]).unwrap();
        assert!(share_facet(&a, &cone_at(r, &[1, 0]).unwrap()));
        assert!(share_facet(&a, &cone_at(r, &[0, 1]).unwrap()));
        assert!(!share_facet(&a, &cone_at(r, &[1, 1]).unwrap()));
    }

    #[test]
    fn deflection_examples() {
        let d = deflection(FanKind::HopfSmoothing { e: 3 }, &[0], 0).unwrap();
        assert_eq!(d, IntVec::from_i64s(&[0, 3, 0]));
        let d = deflection(FanKind::MumfordNeron, &[7], 0).unwrap();
        assert_eq!(d, IntVec::from_i64s(&[0, 0]));
        let d = deflection(FanKind::RationalSmoothing { e: 4 }, &[0, 0], 0).unwrap();
        assert_eq!(d, IntVec::from_i64s(&[0, 4, 0, 0]));
        let d = deflection(FanKind::RationalSmoothing { e: 4 }, &[0, 0], 1).unwrap();
        assert!(d.is_zero());
        assert!(deflection(FanKind::HopfSmoothing { e: 3 }, &[0], 1).is_err());
    }

    #[test]
    fn hinge_ray_of_hopf_chain() {
        let fam = FanKind::HopfSmoothing { e: 3 }.family();
        assert_eq!(
            hinge_ray(fam.as_ref(), &[0], 0).unwrap(),
            IntVec::from_i64s(&[0, 0, 1])
        );
    }

    #[test]
    fn window_json_is_ordered() {
        let w = FanWindow::symmetric(FanKind::MumfordNeron, 1).unwrap();
        assert_eq!(
            w.to_json(),
            concat!(
                r#"{"schema":"kdl/1","kind":"mumford","params":{},"range":[[-1,1]],"cones":["#,
                r#"{"index":[-1],"rays":[[-1,1],[0,1]]},"#,
                r#"{"index":[0],"rays":[[0,1],[1,1]]},"#,
                r#"{"index":[1],"rays":[[1,1],[2,1]]}]}"#
            )
        );
        let w = FanWindow::symmetric(FanKind::HopfSmoothing { e: 2 }, 0).unwrap();
        assert!(w.to_json().contains(r#""params":{"e":2}"#));
    }

    #[test]
    fn index_tuples_are_lexicographic() {
        let t = index_tuples(&[IndexRange { lo: 0, hi: 1 }, IndexRange { lo: -1, hi: 0 }]);
        assert_eq!(t, vec![vec![0, -1], vec![0, 0], vec![1, -1], vec![1, 0]]);
    }
}
