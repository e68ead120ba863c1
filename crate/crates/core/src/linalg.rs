//! Small dense exact-rational linear algebra helpers.

use crate::rat::Rat;

/// Rank of a matrix given as rows (consumes a working copy).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    reduce(&mut m)
}

/// In-place reduction to row echelon form; returns the rank.
pub fn reduce(m: &mut [Vec<Rat>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in 0..cols {
                    if !m[rank][k].is_zero() {
                        let delta = &f * &m[rank][k];
                        m[r][k] = &m[r][k] - &delta;
                    }
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Greedy maximal independent subset of the given vectors, in input order.
/// Returns the chosen indices.
pub fn independent_subset(vecs: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        let mut w = v.clone();
        for row in &echelon {
            let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if !w[lead].is_zero() {
                let f = &w[lead] / &row[lead];
                for k in 0..w.len() {
                    if !row[k].is_zero() {
                        let delta = &f * &row[k];
                        w[k] = &w[k] - &delta;
                    }
                }
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            echelon.push(w);
            chosen.push(i);
        }
    }
    chosen
}

/// Solves the square system `A x = b` by Gaussian elimination.
/// Returns `None` when `A` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for k in c..=n {
                    if !m[c][k].is_zero() {
                        let delta = &f * &m[c][k];
                        m[r][k] = &m[r][k] - &delta;
                    }
                }
            }
        }
    }
    Some((0..n).map(|r| &m[r][n] / &m[r][r]).collect())
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve_square(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse; transpose into rows.
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}
