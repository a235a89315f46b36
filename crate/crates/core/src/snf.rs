//! Smith normal form over the integers, used to certify that a family of
//! roots spans the full root lattice (all invariant factors 1), not merely a
//! finite-index sublattice.

use num::bigint::BigInt;
use num::{Signed, Zero};

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

fn find_min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() {
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
    }
    best
}

/// Diagonalizes by unimodular row/column operations and returns the nonzero
/// invariant factors, normalized positive, each dividing the next.
#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let bound = m.min(n);
    let mut t = 0;
    while t < bound {
        let Some((pi, pj)) = find_min_nonzero(&a, t) else {
            break;
        };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);

        'reduce: loop {
            // Clear column t below the pivot, shrinking the pivot whenever a
            // remainder survives.
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..n {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    continue 'reduce;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().take(m).skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    continue 'reduce;
                }
            }
            // Pivot must divide the whole remaining block for the
            // divisibility chain; fold a bad row into row t and retry.
            for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        for col in t..n {
                            let add = a[i][col].clone();
                            a[t][col] += add;
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        t += 1;
    }

    (0..t).map(|k| a[k][k].abs()).collect()
}

/// True when the rows span a full-rank lattice of index 1: exactly
/// `min(m, n)` invariant factors, all equal to 1.
pub fn all_invariant_factors_one(mat: &[Vec<BigInt>]) -> bool {
    let m = mat.len();
    let n = if m == 0 { 0 } else { mat[0].len() };
    let factors = smith_normal_form(mat);
    factors.len() == m.min(n) && factors.iter().all(|f| *f == BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_inputs() {
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&mat(&[&[1, 0], &[0, 0]])), ints(&[1]));
    }

    #[test]
    fn divisibility_chain() {
        // det = -8, gcd of entries 2, so the factors are (2, 4).
        assert_eq!(smith_normal_form(&mat(&[&[2, 4], &[6, 8]])), ints(&[2, 4]));
    }

    #[test]
    fn unimodular_matrix_has_unit_factors() {
        assert!(all_invariant_factors_one(&mat(&[&[1, 2], &[3, 7]])));
        assert!(!all_invariant_factors_one(&mat(&[&[2, 0], &[0, 1]])));
        assert!(!all_invariant_factors_one(&mat(&[&[1, 1], &[1, 1]])));
    }

    #[test]
    fn index_two_sublattice_detected() {
        // Rows span a rank-2 lattice of index 2 inside Z^2.
        assert_eq!(smith_normal_form(&mat(&[&[1, 1], &[1, -1]])), ints(&[1, 2]));
    }
}
