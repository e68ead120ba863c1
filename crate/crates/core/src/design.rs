//! Design matrices mapping observed counts to sufficient statistics.
//!
//! All matrices are dense and integer valued. Column layouts:
//!
//! * unordered pairs `(i,j)`, `i < j`, lexicographic (node-edge incidence);
//! * ordered pairs interleaved as `(1,2),(2,1),(1,3),(3,1),...` for the
//!   lifted, Poisson, Bradley-Terry and Rasch matrices;
//! * `4` dyad-state columns per pair, states `(0,0),(1,0),(0,1),(1,1)`, for
//!   the p1 matrices.
//!
//! Identifiability constraints are never baked in; rank-deficient matrices
//! are kept as constructed and [`DesignMatrix::rank`] reports the exact rank.

use crate::rat::Rat;
use crate::table::{num_pairs, pairs};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Column {
    /// Unordered pair `{i,j}` with `i < j` (0-based).
    Pair(usize, usize),
    /// Ordered pair `(i,j)` of the lifted table (0-based).
    OrderedPair(usize, usize),
    /// Dyad `{i,j}`, `i < j`, in one of the four states.
    DyadState(usize, usize, u8),
}

impl Column {
    pub fn label(&self) -> String {
        match self {
            Column::Pair(i, j) => format!("({},{})", i + 1, j + 1),
            Column::OrderedPair(i, j) => format!("({},{})", i + 1, j + 1),
            Column::DyadState(i, j, s) => {
                let (a, b) = crate::table::DYAD_STATES[*s as usize];
                format!("({},{}):{}{}", i + 1, j + 1, a, b)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries, all in `{0,1,2}`.
    pub entries: Vec<i64>,
    pub row_labels: Vec<String>,
    pub columns: Vec<Column>,
}

impl DesignMatrix {
    fn zeros(rows: usize, cols: usize, row_labels: Vec<String>, columns: Vec<Column>) -> Self {
        debug_assert_eq!(row_labels.len(), rows);
        debug_assert_eq!(columns.len(), cols);
        DesignMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            row_labels,
            columns,
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: i64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn columns_as_rat(&self) -> Vec<Vec<Rat>> {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| Rat::from_int(self.at(r, c))).collect())
            .collect()
    }

    pub fn col_labels(&self) -> Vec<String> {
        self.columns.iter().map(Column::label).collect()
    }

    /// Matrix-vector product with a count vector in column order.
    pub fn apply(&self, x: &[u64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .map(|(&a, &v)| a * v as i64)
                    .sum()
            })
            .collect()
    }

    /// Exact rank via rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rat>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| Rat::from_int(v)).collect())
            .collect();
        rank_of(&mut m, self.cols)
    }

    /// CSV rendering with row labels in the first column and a header of
    /// column labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("param");
        for c in &self.columns {
            out.push(',');
            out.push_str(&c.label());
        }
        out.push('\n');
        for r in 0..self.rows {
            out.push_str(&self.row_labels[r]);
            for c in 0..self.cols {
                out.push(',');
                out.push_str(&self.at(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Row rank of a rational matrix (destroys the input).
pub(crate) fn rank_of(m: &mut [Vec<Rat>], cols: usize) -> usize {
    let rows = m.len();
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
                for k in c..cols {
                    let delta = &f * &m[rank][k];
                    m[r][k] = &m[r][k] - &delta;
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

fn interleaved_columns(n: usize) -> Vec<Column> {
    let mut cols = Vec::with_capacity(n * (n - 1));
    for (i, j) in pairs(n) {
        cols.push(Column::OrderedPair(i, j));
        cols.push(Column::OrderedPair(j, i));
    }
    cols
}

/// Node-edge incidence matrix of the complete graph: `n x C(n,2)`, column
/// `(i,j)` has ones at rows `i` and `j`.
pub fn beta_design(n: usize) -> DesignMatrix {
    assert!(n >= 2);
    let cols: Vec<Column> = pairs(n).map(|(i, j)| Column::Pair(i, j)).collect();
    let labels = (0..n).map(|i| format!("d{}", i + 1)).collect();
    let mut m = DesignMatrix::zeros(n, num_pairs(n), labels, cols);
    for (k, (i, j)) in pairs(n).enumerate() {
        m.set(i, k, 1);
        m.set(j, k, 1);
    }
    m
}

/// Marginal-cone matrix of the lifted beta model.
///
/// Full form stacks the `C(n,2)` sampling rows over the two redundant degree
/// blocks (`(2n + C(n,2)) x n(n-1)`); the reduced form keeps only the first
/// degree block and has full row rank `C(n,2) + n`.
pub fn cayley_design(n: usize, reduced: bool) -> DesignMatrix {
    assert!(n >= 2);
    let np = num_pairs(n);
    let deg_blocks = if reduced { 1 } else { 2 };
    let rows = np + deg_blocks * n;
    let mut labels: Vec<String> = pairs(n).map(|(i, j)| format!("N({},{})", i + 1, j + 1)).collect();
    labels.extend((0..n).map(|i| format!("d{}", i + 1)));
    if !reduced {
        labels.extend((0..n).map(|i| format!("d'{}", i + 1)));
    }
    let mut m = DesignMatrix::zeros(rows, n * (n - 1), labels, interleaved_columns(n));
    for (k, (i, j)) in pairs(n).enumerate() {
        let (fwd, rev) = (2 * k, 2 * k + 1);
        m.set(k, fwd, 1);
        m.set(k, rev, 1);
        m.set(np + i, fwd, 1);
        m.set(np + j, fwd, 1);
        if !reduced {
            m.set(np + n + i, rev, 1);
            m.set(np + n + j, rev, 1);
        }
    }
    m
}

/// Poisson directed-graph matrix: rows `alpha_1..alpha_n, gamma_1..gamma_n`,
/// column `(i,j)` has ones at `alpha_i` and `gamma_j`; rank `2n - 1`.
pub fn poisson_design(n: usize) -> DesignMatrix {
    assert!(n >= 2);
    let mut labels: Vec<String> = (0..n).map(|i| format!("alpha{}", i + 1)).collect();
    labels.extend((0..n).map(|j| format!("gamma{}", j + 1)));
    let mut m = DesignMatrix::zeros(2 * n, n * (n - 1), labels, interleaved_columns(n));
    for (c, col) in m.columns.clone().iter().enumerate() {
        let Column::OrderedPair(i, j) = col else { unreachable!() };
        m.set(*i, c, 1);
        m.set(n + *j, c, 1);
    }
    m
}

/// Bradley-Terry marginal cone: `C(n,2)` sampling rows followed by `n`
/// out-degree rows, `(C(n,2) + n) x n(n-1)`.
pub fn bt_design(n: usize) -> DesignMatrix {
    assert!(n >= 2);
    let np = num_pairs(n);
    let mut labels: Vec<String> = pairs(n).map(|(i, j)| format!("N({},{})", i + 1, j + 1)).collect();
    labels.extend((0..n).map(|i| format!("w{}", i + 1)));
    let mut m = DesignMatrix::zeros(np + n, n * (n - 1), labels, interleaved_columns(n));
    for (k, (i, j)) in pairs(n).enumerate() {
        m.set(k, 2 * k, 1);
        m.set(k, 2 * k + 1, 1);
        m.set(np + i, 2 * k, 1);
        m.set(np + j, 2 * k + 1, 1);
    }
    m
}

/// Rasch marginal cone: the lifted beta construction restricted to bipartite
/// pairs (subjects `1..k` against items `k+1..k+l`), dimension
/// `(kl + k + l) x 2kl`, rank `kl + k + l - 1`.
pub fn rasch_design(k: usize, l: usize) -> DesignMatrix {
    assert!(k >= 2 && l >= 2);
    let n = k + l;
    let bip: Vec<(usize, usize)> = (0..k).flat_map(|i| (k..n).map(move |j| (i, j))).collect();
    let mut labels: Vec<String> = bip.iter().map(|(i, j)| format!("N({},{})", i + 1, j + 1)).collect();
    labels.extend((0..n).map(|i| format!("d{}", i + 1)));
    let mut columns = Vec::with_capacity(2 * k * l);
    for &(i, j) in &bip {
        columns.push(Column::OrderedPair(i, j));
        columns.push(Column::OrderedPair(j, i));
    }
    let mut m = DesignMatrix::zeros(k * l + n, 2 * k * l, labels, columns);
    for (p, &(i, j)) in bip.iter().enumerate() {
        m.set(p, 2 * p, 1);
        m.set(p, 2 * p + 1, 1);
        m.set(k * l + i, 2 * p, 1);
        m.set(k * l + j, 2 * p, 1);
    }
    m
}

/// Reciprocity structure of the p1 model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum P1Variant {
    /// No reciprocal effect.
    Zero,
    /// Single shared reciprocation parameter.
    Constant,
    /// Shared parameter plus one per node.
    EdgeDependent,
}

impl P1Variant {
    pub fn name(&self) -> &'static str {
        match self {
            P1Variant::Zero => "zero",
            P1Variant::Constant => "constant",
            P1Variant::EdgeDependent => "edge-dependent",
        }
    }
}

/// Holland-Leinhardt p1 design matrix. Rows: one normalizing row per dyad,
/// the density row, sender and receiver blocks, then the reciprocity rows of
/// the chosen variant. Entry = coefficient of the row parameter in the
/// log-probability of the column's dyad state.
pub fn p1_design(n: usize, variant: P1Variant) -> DesignMatrix {
    assert!(n >= 3);
    let np = num_pairs(n);
    let mut labels: Vec<String> = pairs(n).map(|(i, j)| format!("lambda({},{})", i + 1, j + 1)).collect();
    labels.push("theta".into());
    labels.extend((0..n).map(|i| format!("alpha{}", i + 1)));
    labels.extend((0..n).map(|i| format!("beta{}", i + 1)));
    match variant {
        P1Variant::Zero => {}
        P1Variant::Constant => labels.push("rho".into()),
        P1Variant::EdgeDependent => {
            labels.push("rho".into());
            labels.extend((0..n).map(|i| format!("rho{}", i + 1)));
        }
    }
    let rows = labels.len();
    let mut columns = Vec::with_capacity(4 * np);
    for (i, j) in pairs(n) {
        for s in 0..4u8 {
            columns.push(Column::DyadState(i, j, s));
        }
    }
    let mut m = DesignMatrix::zeros(rows, 4 * np, labels, columns);
    let theta = np;
    let alpha = np + 1;
    let beta = np + 1 + n;
    let rho = np + 1 + 2 * n;
    for (k, (i, j)) in pairs(n).enumerate() {
        for s in 0..4usize {
            let c = 4 * k + s;
            m.set(k, c, 1);
            let (a, b) = crate::table::DYAD_STATES[s];
            let edges = a as i64 + b as i64;
            m.set(theta, c, edges);
            if a == 1 {
                m.set(alpha + i, c, m.at(alpha + i, c) + 1);
                m.set(beta + j, c, m.at(beta + j, c) + 1);
            }
            if b == 1 {
                m.set(alpha + j, c, m.at(alpha + j, c) + 1);
                m.set(beta + i, c, m.at(beta + i, c) + 1);
            }
            if a == 1 && b == 1 {
                match variant {
                    P1Variant::Zero => {}
                    P1Variant::Constant => m.set(rho, c, 1),
                    P1Variant::EdgeDependent => {
                        m.set(rho, c, 1);
                        m.set(rho + 1 + i, c, 1);
                        m.set(rho + 1 + j, c, 1);
                    }
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{DirectedCountTable, DyadTable, EdgeCountTable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[rustfmt::skip]
    const BETA_4: [[i64; 6]; 4] = [
        [1, 1, 1, 0, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1],
    ];

    #[test]
    fn beta_design_matches_reference() {
        let m = beta_design(4);
        assert_eq!((m.rows, m.cols), (4, 6));
        for r in 0..4 {
            for c in 0..6 {
                assert_eq!(m.at(r, c), BETA_4[r][c], "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn beta_design_two_nodes() {
        let m = beta_design(2);
        assert_eq!((m.rows, m.cols), (2, 1));
        assert_eq!(m.entries, vec![1, 1]);
    }

    #[test]
    fn beta_design_incidence_sums() {
        for n in 2..9 {
            let m = beta_design(n);
            for c in 0..m.cols {
                assert_eq!(m.column_vec(c).iter().sum::<i64>(), 2);
            }
            for r in 0..m.rows {
                assert_eq!(m.row(r).iter().sum::<i64>(), (n - 1) as i64);
            }
        }
    }

    #[rustfmt::skip]
    const CAYLEY_FULL_4: [[i64; 12]; 14] = [
        [1,1,0,0,0,0,0,0,0,0,0,0],
        [0,0,1,1,0,0,0,0,0,0,0,0],
        [0,0,0,0,1,1,0,0,0,0,0,0],
        [0,0,0,0,0,0,1,1,0,0,0,0],
        [0,0,0,0,0,0,0,0,1,1,0,0],
        [0,0,0,0,0,0,0,0,0,0,1,1],
        [1,0,1,0,1,0,0,0,0,0,0,0],
        [1,0,0,0,0,0,1,0,1,0,0,0],
        [0,0,1,0,0,0,1,0,0,0,1,0],
        [0,0,0,0,1,0,0,0,1,0,1,0],
        [0,1,0,1,0,1,0,0,0,0,0,0],
        [0,1,0,0,0,0,0,1,0,1,0,0],
        [0,0,0,1,0,0,0,1,0,0,0,1],
        [0,0,0,0,0,1,0,0,0,1,0,1],
    ];

    #[test]
    fn cayley_full_matches_reference() {
        let m = cayley_design(4, false);
        assert_eq!((m.rows, m.cols), (14, 12));
        for r in 0..14 {
            for c in 0..12 {
                assert_eq!(m.at(r, c), CAYLEY_FULL_4[r][c], "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn cayley_reduced_has_full_row_rank() {
        let m = cayley_design(4, true);
        assert_eq!((m.rows, m.cols), (10, 12));
        assert_eq!(m.rank(), 10);
        for n in 3..7 {
            let m = cayley_design(n, true);
            assert_eq!(m.rank(), num_pairs(n) + n);
        }
        // Two nodes: the single pair makes the two degree rows coincide.
        assert_eq!(cayley_design(2, true).rank(), 2);
    }

    #[test]
    fn cayley_sampling_block_recovers_trials() {
        let t = EdgeCountTable::new(4, vec![3; 6], vec![0, 1, 2, 2, 1, 3]).unwrap();
        let m = cayley_design(4, true);
        let stat = m.apply(&t.lifted_counts());
        assert_eq!(&stat[..6], &[3, 3, 3, 3, 3, 3]);
        let d = crate::table::degree_stats(&t).d;
        assert_eq!(&stat[6..], &d[..]);
    }

    #[test]
    fn cayley_second_block_is_complementary() {
        let t = EdgeCountTable::new(4, vec![3; 6], vec![0, 1, 2, 2, 1, 3]).unwrap();
        let m = cayley_design(4, false);
        let stat = m.apply(&t.lifted_counts());
        let d = crate::table::degree_stats(&t).d;
        for i in 0..4 {
            // d'_i = (total trials at node i) - d_i
            assert_eq!(stat[6 + 4 + i], 9 - d[i]);
        }
    }

    #[rustfmt::skip]
    const POISSON_4: [[i64; 12]; 8] = [
        [1,0,1,0,1,0,0,0,0,0,0,0],
        [0,1,0,0,0,0,1,0,1,0,0,0],
        [0,0,0,1,0,0,0,1,0,0,1,0],
        [0,0,0,0,0,1,0,0,0,1,0,1],
        [0,1,0,1,0,1,0,0,0,0,0,0],
        [1,0,0,0,0,0,0,1,0,1,0,0],
        [0,0,1,0,0,0,1,0,0,0,0,1],
        [0,0,0,0,1,0,0,0,1,0,1,0],
    ];

    #[test]
    fn poisson_design_matches_reference() {
        let m = poisson_design(4);
        assert_eq!((m.rows, m.cols), (8, 12));
        for r in 0..8 {
            for c in 0..12 {
                assert_eq!(m.at(r, c), POISSON_4[r][c], "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn poisson_rank_and_column_sums() {
        for n in 3..7 {
            let m = poisson_design(n);
            assert_eq!(m.rank(), 2 * n - 1);
            for c in 0..m.cols {
                assert_eq!(m.column_vec(c).iter().sum::<i64>(), 2);
            }
        }
    }

    #[test]
    fn poisson_statistic_is_degree_pair() {
        let t = DirectedCountTable::from_edges(4, &[(0, 1), (1, 0), (2, 3), (1, 3)]).unwrap();
        let m = poisson_design(4);
        let stat = m.apply(&t.interleaved_counts());
        let outs: Vec<i64> = t.out_degrees().iter().map(|&v| v as i64).collect();
        let ins: Vec<i64> = t.in_degrees().iter().map(|&v| v as i64).collect();
        assert_eq!(&stat[..4], &outs[..]);
        assert_eq!(&stat[4..], &ins[..]);
    }

    #[test]
    fn bt_design_shape_and_blocks() {
        let m = bt_design(3);
        assert_eq!((m.rows, m.cols), (6, 6));
        let c = cayley_design(3, true);
        // The sampling block agrees with the lifted beta construction.
        for k in 0..3 {
            assert_eq!(m.row(k), c.row(k));
        }
        let m4 = bt_design(4);
        // Column (1,2) hits constraint row (1,2) and out-degree row 1.
        let col = m4.column_vec(0);
        let ones: Vec<usize> = col.iter().enumerate().filter(|(_, &v)| v == 1).map(|(r, _)| r).collect();
        assert_eq!(ones, vec![0, 6]);
        for i in 0..4 {
            assert_eq!(m4.row(6 + i).iter().sum::<i64>(), 3);
        }
    }

    #[test]
    fn bt_statistic_is_sampling_plus_wins() {
        let t = DirectedCountTable::from_edges(4, &[(0, 1), (2, 1), (3, 0), (2, 3)]).unwrap();
        let m = bt_design(4);
        let stat = m.apply(&t.interleaved_counts());
        let wins: Vec<i64> = t.out_degrees().iter().map(|&v| v as i64).collect();
        assert_eq!(&stat[6..], &wins[..]);
    }

    #[test]
    fn rasch_design_shapes_and_rank() {
        let m = rasch_design(2, 2);
        assert_eq!((m.rows, m.cols), (8, 8));
        assert_eq!(m.rank(), 7);
        let m = rasch_design(2, 3);
        assert_eq!((m.rows, m.cols), (11, 12));
        assert_eq!(m.rank(), 10);
        // Only bipartite pairs appear among the columns.
        for col in &m.columns {
            let Column::OrderedPair(a, b) = col else { panic!() };
            let lo = a.min(b);
            let hi = a.max(b);
            assert!(*lo < 2 && *hi >= 2);
        }
    }

    #[rustfmt::skip]
    const P1_EDGE_3: [[i64; 12]; 14] = [
        [1,1,1,1, 0,0,0,0, 0,0,0,0],
        [0,0,0,0, 1,1,1,1, 0,0,0,0],
        [0,0,0,0, 0,0,0,0, 1,1,1,1],
        [0,1,1,2, 0,1,1,2, 0,1,1,2],
        [0,1,0,1, 0,1,0,1, 0,0,0,0],
        [0,0,1,1, 0,0,0,0, 0,1,0,1],
        [0,0,0,0, 0,0,1,1, 0,0,1,1],
        [0,0,1,1, 0,0,1,1, 0,0,0,0],
        [0,1,0,1, 0,0,0,0, 0,0,1,1],
        [0,0,0,0, 0,1,0,1, 0,1,0,1],
        [0,0,0,1, 0,0,0,1, 0,0,0,1],
        [0,0,0,1, 0,0,0,1, 0,0,0,0],
        [0,0,0,1, 0,0,0,0, 0,0,0,1],
        [0,0,0,0, 0,0,0,1, 0,0,0,1],
    ];

    #[test]
    fn p1_edge_dependent_matches_reference() {
        let m = p1_design(3, P1Variant::EdgeDependent);
        assert_eq!((m.rows, m.cols), (14, 12));
        for r in 0..14 {
            for c in 0..12 {
                assert_eq!(m.at(r, c), P1_EDGE_3[r][c], "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn p1_variant_row_counts() {
        assert_eq!(p1_design(3, P1Variant::Zero).rows, 10);
        assert_eq!(p1_design(3, P1Variant::Constant).rows, 11);
        assert_eq!(p1_design(4, P1Variant::EdgeDependent).rows, 6 + 1 + 8 + 5);
    }

    #[test]
    fn p1_entries_and_row_sums() {
        for variant in [P1Variant::Zero, P1Variant::Constant, P1Variant::EdgeDependent] {
            for n in 3..6 {
                let m = p1_design(n, variant);
                assert!(m.entries.iter().all(|&v| (0..=2).contains(&v)));
                for k in 0..num_pairs(n) {
                    assert_eq!(m.row(k).iter().sum::<i64>(), 4);
                }
                // Every (1,1) column carries density coefficient 2.
                for (c, col) in m.columns.iter().enumerate() {
                    if let Column::DyadState(_, _, 3) = col {
                        assert_eq!(m.at(num_pairs(n), c), 2);
                    }
                }
            }
        }
    }

    #[test]
    fn p1_statistic_matches_hand_tallies() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(3..6);
            let code: u64 = rng.gen();
            let t = DyadTable::from_code(n, code);
            let m = p1_design(n, P1Variant::EdgeDependent);
            let stat = m.apply(&t.indicator());
            // Density statistic equals the number of directed edges.
            let mut edges = 0i64;
            let mut recip = 0i64;
            for (i, j) in pairs(n) {
                let (a, b) = t.state(i, j);
                edges += a as i64 + b as i64;
                recip += (a & b) as i64;
            }
            assert_eq!(stat[num_pairs(n)], edges);
            assert_eq!(stat[num_pairs(n) + 1 + 2 * n], recip);
        }
    }

    #[test]
    fn sufficient_statistics_factor_through_the_design() {
        // Independently tallied degrees match A * x for random tables.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..9);
            let m = num_pairs(n);
            let trials: Vec<u64> = (0..m).map(|_| rng.gen_range(1..5)).collect();
            let counts: Vec<u64> = trials.iter().map(|&t| rng.gen_range(0..=t)).collect();
            let t = EdgeCountTable::new(n, trials, counts.clone()).unwrap();
            let a = beta_design(n);
            let stat = a.apply(&counts);
            let d = crate::table::degree_stats(&t).d;
            assert_eq!(stat, d);
        }
    }
}
