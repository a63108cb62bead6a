//! Surfaces with Hopf-surface normalization.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::mod_inverse;

/// `(a b; c d) ∈ SL₂(Z)` relating the two period lattices of the glued
/// elliptic curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[i64; 4]", try_from = "[i64; 4]")]
pub struct GluingMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GluingMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = i128::from(a) * i128::from(d) - i128::from(b) * i128::from(c);
        if det != 1 {
            return Err(Error::NotSL2 {
                a,
                b,
                c,
                d,
                det: i64::try_from(det).unwrap_or(i64::MAX),
            });
        }
        Ok(GluingMatrix { a, b, c, d })
    }

    /// The translation `τ₂ = τ₁ + b/n`.
    pub fn translation(b: i64) -> Self {
        GluingMatrix {
            a: 1,
            b,
            c: 0,
            d: 1,
        }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl From<GluingMatrix> for [i64; 4] {
    fn from(m: GluingMatrix) -> Self {
        m.entries()
    }
}

impl TryFrom<[i64; 4]> for GluingMatrix {
    type Error = Error;
    fn try_from([a, b, c, d]: [i64; 4]) -> Result<Self> {
        GluingMatrix::new(a, b, c, d)
    }
}

/// `K_X = 0` iff the composite lattice map `(1 - d, c)` vanishes.
pub fn hopf_kx_zero(m: &GluingMatrix) -> bool {
    m.d == 1 && m.c == 0 && m.a == 1
}

/// Discrete data of a gluing of the two elliptic curves on a diagonizable
/// Hopf surface with `π₁ = Z ⊕ Z/n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfDatum {
    pub n: i64,
    pub n1: i64,
    pub n2: i64,
    pub b: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<GluingMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_label: Option<String>,
}

impl HopfDatum {
    pub fn new(n: i64, n1: i64, n2: i64, b: i64) -> Result<Self> {
        let h = HopfDatum {
            n,
            n1,
            n2,
            b,
            matrix: None,
            alpha_label: None,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidDatum(format!(
                "n = {} must be positive",
                self.n
            )));
        }
        for (name, x) in [("n1", self.n1), ("n2", self.n2), ("b", self.b)] {
            if !(0..self.n).contains(&x) {
                return Err(Error::InvalidDatum(format!(
                    "{name} = {x} is not a residue in [0, {})",
                    self.n
                )));
            }
        }
        for (name, x) in [("n1", self.n1), ("n2", self.n2)] {
            if x.gcd(&self.n) != 1 {
                return Err(Error::InvalidDatum(format!(
                    "{name} = {x} is not a unit modulo {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Supplied gluing matrix, defaulting to the translation by `b`.
    pub fn gluing_matrix(&self) -> GluingMatrix {
        self.matrix.unwrap_or(GluingMatrix::translation(self.b))
    }
}

/// `(n₁ - n₂)² ≡ 0` and `b(n₁ - n₂) ≡ 0` modulo `n`.
pub fn hopf_dsemistable(h: &HopfDatum) -> bool {
    let n = i128::from(h.n);
    let diff = i128::from(h.n1) - i128::from(h.n2);
    (diff * diff).mod_floor(&n) == 0 && (i128::from(h.b) * diff).mod_floor(&n) == 0
}

/// The lifted homomorphism must be linear up to an integral one: with
/// `m_i = n_i⁻¹ mod n`, require `m₂n₁ + m₁n₂ ≡ 2` and `b·m₁n₂ ≡ b`.
pub fn hopf_dsemistable_oracle(h: &HopfDatum) -> Result<bool> {
    let n = i128::from(h.n);
    let m1 = mod_inverse(&i128::from(h.n1), &n)?;
    let m2 = mod_inverse(&i128::from(h.n2), &n)?;
    let (n1, n2, b) = (i128::from(h.n1), i128::from(h.n2), i128::from(h.b));
    let linear = (m2 * n1 + m1 * n2 - 2).mod_floor(&n) == 0;
    let periodic = (b * m1 * n2 - b).mod_floor(&n) == 0;
    Ok(linear && periodic)
}

/// Degree `e = gcd(n, n₁ - n₂)` and warp `w = n / gcd(n, n₁ - n₂, b)`.
pub fn hopf_invariants(h: &HopfDatum) -> (u64, u64) {
    let n = h.n.unsigned_abs();
    let diff = (h.n1 - h.n2).unsigned_abs();
    let e = n.gcd(&diff);
    let w = n / e.gcd(&h.b.unsigned_abs());
    (e, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: i64, n1: i64, n2: i64, b: i64) -> HopfDatum {
        HopfDatum::new(n, n1, n2, b).unwrap()
    }

    #[test]
    fn kx_zero_examples() {
        assert!(hopf_kx_zero(&GluingMatrix::new(1, 5, 0, 1).unwrap()));
        assert!(hopf_kx_zero(&GluingMatrix::new(1, 0, 0, 1).unwrap()));
        assert!(!hopf_kx_zero(&GluingMatrix::new(0, -1, 1, 0).unwrap()));
        assert!(!hopf_kx_zero(&GluingMatrix::new(-1, 0, 0, -1).unwrap()));
        assert!(matches!(
            GluingMatrix::new(2, 0, 0, 1),
            Err(Error::NotSL2 { det: 2, .. })
        ));
    }

    #[test]
    fn dsemistable_examples() {
        assert!(hopf_dsemistable(&h(4, 1, 3, 2)));
        assert!(!hopf_dsemistable(&h(4, 1, 3, 1)));
        assert!(hopf_dsemistable(&h(1, 0, 0, 0)));
    }

    #[test]
    fn oracle_examples() {
        assert!(hopf_dsemistable_oracle(&h(4, 1, 3, 2)).unwrap());
        assert!(hopf_dsemistable_oracle(&h(9, 1, 4, 3)).unwrap());
        assert!(!hopf_dsemistable_oracle(&h(5, 1, 2, 0)).unwrap());
    }

    #[test]
    fn oracle_rejects_non_units() {
        let bad = HopfDatum {
            n: 4,
            n1: 2,
            n2: 1,
            b: 0,
            matrix: None,
            alpha_label: None,
        };
        assert!(matches!(
            hopf_dsemistable_oracle(&bad),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(hopf_invariants(&h(4, 1, 3, 2)), (2, 2));
        assert_eq!(hopf_invariants(&h(1, 0, 0, 0)), (1, 1));
        assert_eq!(hopf_invariants(&h(9, 1, 4, 3)), (3, 3));
        // n1 = n2: gcd(n, 0) = n.
        assert_eq!(hopf_invariants(&h(5, 2, 2, 0)), (5, 1));
    }

    #[test]
    fn datum_validation() {
        assert!(HopfDatum::new(0, 0, 0, 0).is_err());
        assert!(HopfDatum::new(4, 2, 1, 0).is_err());
        assert!(HopfDatum::new(4, 1, 5, 0).is_err());
        assert!(HopfDatum::new(4, 1, 3, -1).is_err());
    }

    #[test]
    fn datum_json_is_strict() {
        let d: HopfDatum = serde_json::from_str(r#"{"n":4,"n1":1,"n2":3,"b":2}"#).unwrap();
        assert_eq!(d, h(4, 1, 3, 2));
        assert!(serde_json::from_str::<HopfDatum>(r#"{"n":4,"n1":1,"n2":3,"bb":2}"#).is_err());
        assert!(serde_json::from_str::<HopfDatum>(
            r#"{"n":4,"n1":1,"n2":3,"b":2,"matrix":[2,0,0,1]}"#
        )
        .is_err());
    }
}
