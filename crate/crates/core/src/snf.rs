//! Smith normal form over the integers, tracking column operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of diagonalising an `m x n` relation matrix `R` as `U R V = D`.
///
/// `v` and `v_inv` are `n x n` and inverse to each other. Row operations are
/// not recorded since only the column side is needed for coordinates.
#[derive(Debug, Clone)]
pub(crate) struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    // col_j += k * col_i
    fn add_col(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let t = &row[i] * k;
            row[j] += t;
        }
        for row in self.v.iter_mut() {
            let t = &row[i] * k;
            row[j] += t;
        }
        let n = self.v_inv[j].len();
        for c in 0..n {
            let t = &self.v_inv[j][c] * k;
            self.v_inv[i][c] -= t;
        }
    }

    // row_j += k * row_i
    fn add_row(&mut self, j: usize, i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let n = self.a[i].len();
        for c in 0..n {
            let t = &self.a[i][c] * k;
            self.a[j][c] += t;
        }
        let m = self.u[i].len();
        for c in 0..m {
            let t = &self.u[i][c] * k;
            self.u[j][c] += t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Diagonalises `rows` (each of length `n`).
///
/// The pivot is always the entry of least absolute value, first in row-major
/// order, so an input that is already diagonal with a divisibility chain is
/// left untouched and `v` comes back as the identity.
pub(crate) fn smith(rows: &[Vec<BigInt>], n: usize) -> Smith {
    let mut w = Work {
        a: rows.to_vec(),
        u: identity(rows.len()),
        v: identity(n),
        v_inv: identity(n),
    };
    let m = w.a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = least_entry(&w.a, t..m, t..n) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[t][t].clone();
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = -(&w.a[i][t] / &p);
                    w.add_row(i, t, &q);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = -(&w.a[t][j] / &p);
                    w.add_col(j, t, &q);
                }
            }
            // leftovers in the pivot row or column are smaller than the pivot
            let mut best: Option<(usize, usize)> = None;
            let mut best_abs = p.abs();
            for i in t + 1..m {
                if !w.a[i][t].is_zero() && w.a[i][t].abs() < best_abs {
                    best_abs = w.a[i][t].abs();
                    best = Some((i, t));
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() && w.a[t][j].abs() < best_abs {
                    best_abs = w.a[t][j].abs();
                    best = Some((t, j));
                }
            }
            if let Some((i, j)) = best {
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            let mut bad_row = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a[i][j].is_multiple_of(&p) {
                        bad_row = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad_row {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            for c in 0..n {
                w.a[t][c] = -&w.a[t][c];
            }
            for c in 0..m {
                w.u[t][c] = -&w.u[t][c];
            }
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    Smith {
        diag,
        u: w.u,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Finds an integer row vector `z` with `z * rows = t`, if one exists.
pub(crate) fn solve_rows(rows: &[Vec<BigInt>], n: usize, t: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(rows, n);
    let m = rows.len();
    let tv: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|l| &t[l] * &s.v[l][j]).sum())
        .collect();
    let mut w = vec![BigInt::zero(); m];
    for (j, x) in tv.iter().enumerate() {
        if j < s.diag.len() {
            let (q, r) = x.div_rem(&s.diag[j]);
            if !r.is_zero() {
                return None;
            }
            w[j] = q;
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(
        (0..m)
            .map(|c| (0..m).map(|l| &w[l] * &s.u[l][c]).sum())
            .collect(),
    )
}

fn least_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &a[i][j];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| b(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], bm: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let k = bm.len();
        let n = bm.first().map_or(0, |r| r.len());
        a.iter()
            .map(|r| {
                (0..n)
                    .map(|j| (0..k).map(|l| &r[l] * &bm[l][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn v_times_v_inv_is_identity() {
        let r = mat(&[&[4, 6, 2], &[8, -3, 5], &[0, 12, 7]]);
        let s = smith(&r, 3);
        assert_eq!(mul(&s.v, &s.v_inv), identity(3));
    }

    #[test]
    fn u_r_v_is_diagonal() {
        let r = mat(&[&[4, 6, 2], &[8, -3, 5], &[0, 12, 7], &[1, 1, 1]]);
        let s = smith(&r, 3);
        let d = mul(&mul(&s.u, &r), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < s.diag.len() {
                    assert_eq!(*x, s.diag[i]);
                } else {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn solve_finds_combination() {
        let r = mat(&[&[2, 4], &[3, 9]]);
        let t = vec![b(1), b(5)];
        let z = solve_rows(&r, 2, &t).unwrap();
        let got: Vec<BigInt> = (0..2).map(|j| &z[0] * &r[0][j] + &z[1] * &r[1][j]).collect();
        assert_eq!(got, t);
        assert!(solve_rows(&r, 2, &[b(1), b(0)]).is_none());
    }

    #[test]
    fn diagonal_of_4_6() {
        let s = smith(&mat(&[&[4, 6]]), 2);
        assert_eq!(s.diag, vec![b(2)]);
    }

    #[test]
    fn divisibility_is_repaired() {
        let s = smith(&mat(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diag, vec![b(1), b(6)]);
    }

    #[test]
    fn canonical_input_is_fixed() {
        let s = smith(&mat(&[&[2, 0, 0], &[0, 4, 0]]), 3);
        assert_eq!(s.diag, vec![b(2), b(4)]);
        assert_eq!(s.v, identity(3));
    }
}
