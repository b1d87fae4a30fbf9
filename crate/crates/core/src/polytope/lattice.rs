//! Integer-lattice linear algebra: Hermite normal form with
//! transformation, kernels, saturated bases.

use rug::{Integer, Rational};

/// Row-style Hermite normal form with unimodular transformation:
/// returns (H, U) with U * M = H, U in GL(ZZ). H has its pivot rows
/// first; zero rows of H correspond to left-kernel rows of M in U.
pub fn hnf_row(m: &[Vec<Integer>]) -> (Vec<Vec<Integer>>, Vec<Vec<Integer>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h: Vec<Vec<Integer>> = m.to_vec();
    let mut u: Vec<Vec<Integer>> = (0..rows)
        .map(|i| (0..rows).map(|j| Integer::from((i == j) as i64)).collect())
        .collect();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        // euclidean reduction in this column below pivot_row
        loop {
            // find row with smallest nonzero |entry|
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if h[r][col] != 0 {
                    match best {
                        None => best = Some(r),
                        Some(b) => {
                            let hb = h[b][col].clone().abs();
                            let hr = h[r][col].clone().abs();
                            if hr < hb {
                                best = Some(r);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let mut done = true;
            for r in (pivot_row + 1)..rows {
                if h[r][col] != 0 {
                    let q = Integer::from(&h[r][col] / &h[pivot_row][col]);
                    // rounded division keeps entries small enough
                    for c in 0..cols {
                        let t = Integer::from(&h[pivot_row][c] * &q);
                        h[r][c] -= t;
                    }
                    for c in 0..rows {
                        let t = Integer::from(&u[pivot_row][c] * &q);
                        u[r][c] -= t;
                    }
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows && h[pivot_row][col] != 0 {
            // normalize pivot sign
            if h[pivot_row][col] < 0 {
                for c in 0..cols {
                    h[pivot_row][c] = Integer::from(-&h[pivot_row][c]);
                }
                for c in 0..rows {
                    u[pivot_row][c] = Integer::from(-&u[pivot_row][c]);
                }
            }
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
    }
    (h, u)
}

/// Basis of the right kernel {x in Z^n : M x = 0}, saturated (a basis
/// of the full kernel lattice).
pub fn integer_kernel(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    // left kernel of M^T
    let rows = ncols;
    let cols = m.len();
    let mt: Vec<Vec<Integer>> = (0..rows)
        .map(|r| (0..cols).map(|c| Integer::from(m[c][r])).collect())
        .collect();
    let (h, u) = hnf_row(&mt);
    let mut out = vec![];
    for (hr, ur) in h.iter().zip(u.iter()) {
        if hr.iter().all(|x| *x == 0) {
            out.push(ur.iter().map(|x| x.to_i64().expect("kernel overflow")).collect());
        }
    }
    out
}

/// Rank over Q of a set of integer row vectors.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
    let mut rank = 0usize;
    for c in 0..ncols {
        let mut pr = None;
        for (r, row) in m.iter().enumerate().skip(rank) {
            if row[c] != 0 {
                pr = Some(r);
                break;
            }
        }
        let Some(pr) = pr else { continue };
        m.swap(rank, pr);
        let inv = Rational::from(m[rank][c].clone().recip());
        for cc in c..ncols {
            let t = Rational::from(&m[rank][cc] * &inv);
            m[rank][cc] = t;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c].clone();
                for cc in c..ncols {
                    let t = Rational::from(&m[rank][cc] * &f);
                    m[r][cc] -= t;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Basis of the saturated lattice span_R(diffs) cap Z^n.
pub fn saturated_basis(diffs: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if diffs.is_empty() || rank(diffs) == 0 {
        return vec![];
    }
    // W = right kernel of the diff matrix; L = right kernel of W
    let w = integer_kernel(diffs, n);
    if w.is_empty() {
        // full-rank directions: the standard basis
        return (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
    }
    integer_kernel(&w, n)
}
