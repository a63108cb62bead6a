#![allow(clippy::needless_range_loop)]
use kdl_core::lattice::{
    det, elementary_divisors, extends_to_basis, mod_inverse, IntMatrix, IntVec,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Leibniz expansion over all permutations, in plain i128.
fn leibniz(m: &[Vec<i64>]) -> i128 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128, acc: i128, out: &mut i128) {
        let n = m.len();
        if row == n {
            *out += sign * acc;
            return;
        }
        let mut s = sign;
        for col in 0..n {
            if used[col] {
                continue;
            }
            // Sign flips once per unused column skipped to the left.
            used[col] = true;
            go(m, row + 1, used, s, acc * i128::from(m[row][col]), out);
            used[col] = false;
            s = -s;
        }
    }
    let mut out = 0;
    go(m, 0, &mut vec![false; m.len()], 1, 1, &mut out);
    out
}

/// gcd of all k×k minors of a k×r matrix, via Leibniz on column subsets.
fn minor_gcd(rows: &[Vec<i64>]) -> i128 {
    let (k, r) = (rows.len(), rows[0].len());
    let mut g: i128 = 0;
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let cols: Vec<usize> = (0..r).filter(|c| mask & (1 << c) != 0).collect();
        let sub: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        g = num_integer::gcd(g, leibniz(&sub));
    }
    g.abs()
}

fn matrix(n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-range..=range, n), n)
}

fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows)
}

/// Random unimodular matrix as a product of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, k, swap) in ops {
            if swap {
                m.swap(i, j);
            } else if i != j {
                for c in 0..n {
                    m[i][c] += k * m[j][c];
                }
            }
        }
        m
    })
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn det_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (matrix(n, 6), matrix(n, 6)))) {
        let (ma, mb) = (to_matrix(&a), to_matrix(&b));
        prop_assert_eq!(det(&(&ma * &mb)), det(&ma) * det(&mb));
    }

    #[test]
    fn det_matches_leibniz(a in (1usize..=5).prop_flat_map(|n| matrix(n, 20))) {
        prop_assert_eq!(det(&to_matrix(&a)), BigInt::from(leibniz(&a)));
    }

    #[test]
    fn extends_to_basis_matches_minor_gcd(
        rows in (1usize..=3).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-4i64..=4, 4), k))
    ) {
        let vecs: Vec<IntVec> = rows.iter().map(|r| IntVec::from_i64s(r)).collect();
        prop_assert_eq!(extends_to_basis(&vecs).unwrap(), minor_gcd(&rows) == 1);
    }

    #[test]
    fn extends_to_basis_is_unimodular_invariant(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 2),
        right in unimodular(4),
        left in unimodular(2),
    ) {
        let as_vecs = |m: &[Vec<i64>]| m.iter().map(|r| IntVec::from_i64s(r)).collect::<Vec<_>>();
        let base = extends_to_basis(&as_vecs(&rows)).unwrap();
        prop_assert_eq!(extends_to_basis(&as_vecs(&mul(&rows, &right))).unwrap(), base);
        prop_assert_eq!(extends_to_basis(&as_vecs(&mul(&left, &rows))).unwrap(), base);
    }

    #[test]
    fn elementary_divisors_multiply_to_det(a in (1usize..=4).prop_flat_map(|n| matrix(n, 9))) {
        let rows: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = elementary_divisors(&rows);
        let d_det = leibniz(&a).abs();
        if d_det == 0 {
            prop_assert!(d.len() < a.len());
        } else {
            prop_assert_eq!(d.iter().product::<BigInt>(), BigInt::from(d_det));
            for w in d.windows(2) {
                prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
            }
        }
    }
}

#[test]
fn mod_inverse_exhaustive_to_200() {
    for n in 1i64..=200 {
        for a in 0..n {
            let coprime = num_integer::gcd(a, n) == 1;
            match mod_inverse(&a, &n) {
                Ok(inv) => {
                    assert!(coprime, "{a} mod {n}");
                    assert!((0..n).contains(&inv));
                    assert_eq!((a * inv).rem_euclid(n), 1 % n, "{a} mod {n}");
                }
                Err(_) => assert!(!coprime, "{a} mod {n}"),
            }
        }
    }
}

#[test]
fn mod_inverse_agrees_on_bigints() {
    for n in [7i64, 60, 199] {
        for a in 1..n {
            let small = mod_inverse(&a, &n);
            let big = mod_inverse(&BigInt::from(a), &BigInt::from(n));
            assert_eq!(small.ok().map(BigInt::from), big.ok());
        }
    }
}
