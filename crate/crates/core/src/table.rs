//! Edge-count tables, degree statistics, file ingestion and random generation.
//!
//! Nodes are 0-based internally and 1-based in every external format. For an
//! undirected pair `{i,j}` with `i < j` the stored count `x[i][j]` is the
//! number of times the edge was observed out of `N[i][j]` trials; the mirror
//! count `x[j][i] = N[i][j] - x[i][j]` is derived, never stored.

use crate::error::{Error, Result};
use crate::rat::Rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;
use std::collections::BTreeMap;

/// Index of pair `(i,j)`, `i < j`, in the lexicographic list of all pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i,j)` with `i < j` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn num_pairs(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Symmetric binomial edge-count table for the beta model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCountTable {
    n: usize,
    /// Trials per pair, lexicographic order.
    trials: Vec<u64>,
    /// Observed counts per pair, lexicographic order.
    counts: Vec<u64>,
}

impl EdgeCountTable {
    pub fn new(n: usize, trials: Vec<u64>, counts: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need at least 2 nodes, got {n}")));
        }
        let m = num_pairs(n);
        if trials.len() != m || counts.len() != m {
            return Err(Error::Parameter(format!(
                "expected {m} pairs, got {} trials / {} counts",
                trials.len(),
                counts.len()
            )));
        }
        for (k, (i, j)) in pairs(n).enumerate() {
            if trials[k] == 0 {
                return Err(Error::Parameter(format!(
                    "trial count for pair ({},{}) must be positive",
                    i + 1,
                    j + 1
                )));
            }
            if counts[k] > trials[k] {
                return Err(Error::Consistency(format!(
                    "count {} exceeds {} trials for pair ({},{})",
                    counts[k],
                    trials[k],
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(EdgeCountTable { n, trials, counts })
    }

    /// Simple graph (one trial per pair) from an edge list.
    pub fn simple_graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut counts = vec![0u64; num_pairs(n)];
        for &(a, b) in edges {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if a == b || j >= n {
                return Err(Error::Parameter(format!("bad edge ({a},{b})")));
            }
            counts[pair_index(n, i, j)] = 1;
        }
        EdgeCountTable::new(n, vec![1; num_pairs(n)], counts)
    }

    /// Simple graph from the bits of `code`, pair `k` set iff bit `k` is set.
    pub fn simple_graph_from_code(n: usize, code: u64) -> Self {
        let m = num_pairs(n);
        let counts = (0..m).map(|k| (code >> k) & 1).collect();
        EdgeCountTable::new(n, vec![1; m], counts).expect("bit code is always consistent")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trials(&self, i: usize, j: usize) -> u64 {
        self.trials[pair_index(self.n, i, j)]
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[pair_index(self.n, i, j)]
    }

    pub fn trials_vec(&self) -> &[u64] {
        &self.trials
    }

    pub fn counts_vec(&self) -> &[u64] {
        &self.counts
    }

    pub fn is_simple(&self) -> bool {
        self.trials.iter().all(|&t| t == 1)
    }

    /// Observed edge proportion for pair `(i,j)`, `i < j`.
    pub fn phat(&self, i: usize, j: usize) -> Rat {
        let k = pair_index(self.n, i, j);
        Rat::new(self.counts[k] as i64, self.trials[k] as i64)
    }

    /// Counts of the lifted table `x'` of length `n(n-1)` in interleaved
    /// order: `(1,2),(2,1),(1,3),(3,1),...`. Entry `(j,i)` is the number of
    /// times the edge was missing.
    pub fn lifted_counts(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1));
        for (k, _) in pairs(self.n).enumerate() {
            out.push(self.counts[k]);
            out.push(self.trials[k] - self.counts[k]);
        }
        out
    }

    /// Applies a node relabeling: node `i` of the result is node `perm[i]` of
    /// the original.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let m = num_pairs(self.n);
        let mut trials = vec![0; m];
        let mut counts = vec![0; m];
        for (i, j) in pairs(self.n) {
            let (a, b) = (perm[i], perm[j]);
            let src = if a < b {
                pair_index(self.n, a, b)
            } else {
                pair_index(self.n, b, a)
            };
            let dst = pair_index(self.n, i, j);
            trials[dst] = self.trials[src];
            counts[dst] = self.counts[src];
        }
        EdgeCountTable {
            n: self.n,
            trials,
            counts,
        }
    }

    /// Serializes to the n-line CSV matrix format with `x` on the diagonal.
    pub fn to_csv(&self) -> String {
        let mut lines = Vec::with_capacity(self.n);
        for r in 0..self.n {
            let mut fields = Vec::with_capacity(self.n);
            for c in 0..self.n {
                if r == c {
                    fields.push("x".to_string());
                } else if r < c {
                    fields.push(self.count(r, c).to_string());
                } else {
                    fields.push((self.trials(c, r) - self.count(c, r)).to_string());
                }
            }
            lines.push(fields.join(","));
        }
        lines.join("\n") + "\n"
    }
}

/// Directed count table (Poisson and Bradley-Terry models): one nonnegative
/// count per ordered pair, no diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedCountTable {
    n: usize,
    /// Row-major `n x n` with zero diagonal.
    counts: Vec<u64>,
}

impl DirectedCountTable {
    pub fn new(n: usize, counts: Vec<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need at least 2 nodes, got {n}")));
        }
        if counts.len() != n * n {
            return Err(Error::Parameter("count matrix has wrong size".into()));
        }
        for i in 0..n {
            if counts[i * n + i] != 0 {
                return Err(Error::Consistency("diagonal entries must be absent".into()));
            }
        }
        Ok(DirectedCountTable { n, counts })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut counts = vec![0u64; n * n];
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::Parameter(format!("bad edge ({i},{j})")));
            }
            counts[i * n + j] += 1;
        }
        DirectedCountTable::new(n, counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.n + j]
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| j != i).map(|j| self.count(i, j)).sum())
            .collect()
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        (0..self.n)
            .map(|j| (0..self.n).filter(|&i| i != j).map(|i| self.count(i, j)).sum())
            .collect()
    }

    /// Counts in the interleaved ordered-pair layout `(1,2),(2,1),(1,3),...`.
    pub fn interleaved_counts(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1));
        for (i, j) in pairs(self.n) {
            out.push(self.count(i, j));
            out.push(self.count(j, i));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut lines = Vec::with_capacity(self.n);
        for r in 0..self.n {
            let mut fields = Vec::with_capacity(self.n);
            for c in 0..self.n {
                if r == c {
                    fields.push("x".to_string());
                } else {
                    fields.push(self.count(r, c).to_string());
                }
            }
            lines.push(fields.join(","));
        }
        lines.join("\n") + "\n"
    }
}

/// One observed state per dyad: the four states are `(0,0)`, `(1,0)`, `(0,1)`
/// and `(1,1)`, where the first bit is the edge `i -> j` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadTable {
    n: usize,
    /// State index 0..4 per pair, lexicographic order; states ordered
    /// `(0,0) < (1,0) < (0,1) < (1,1)`.
    states: Vec<u8>,
}

pub const DYAD_STATES: [(u8, u8); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

impl DyadTable {
    pub fn new(n: usize, states: Vec<u8>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("need at least 2 nodes, got {n}")));
        }
        if states.len() != num_pairs(n) {
            return Err(Error::Parameter("wrong number of dyads".into()));
        }
        if states.iter().any(|&s| s > 3) {
            return Err(Error::Parameter("dyad state out of range".into()));
        }
        Ok(DyadTable { n, states })
    }

    /// Directed 0/1 adjacency data interpreted dyad by dyad.
    pub fn from_directed(t: &DirectedCountTable) -> Result<Self> {
        let n = t.n();
        let mut states = Vec::with_capacity(num_pairs(n));
        for (i, j) in pairs(n) {
            let a = t.count(i, j);
            let b = t.count(j, i);
            if a > 1 || b > 1 {
                return Err(Error::Consistency(
                    "dyad table requires 0/1 adjacency entries".into(),
                ));
            }
            let s = match (a, b) {
                (0, 0) => 0,
                (1, 0) => 1,
                (0, 1) => 2,
                (1, 1) => 3,
                _ => unreachable!(),
            };
            states.push(s);
        }
        DyadTable::new(n, states)
    }

    /// Network with dyad `k` in state `(code >> 2k) & 3`.
    pub fn from_code(n: usize, code: u64) -> Self {
        let states = (0..num_pairs(n)).map(|k| ((code >> (2 * k)) & 3) as u8).collect();
        DyadTable { n, states }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state(&self, i: usize, j: usize) -> (u8, u8) {
        DYAD_STATES[self.states[pair_index(self.n, i, j)] as usize]
    }

    pub fn state_indices(&self) -> &[u8] {
        &self.states
    }

    /// 0/1 indicator vector over the `4 * C(n,2)` dyad-state columns.
    pub fn indicator(&self) -> Vec<u64> {
        let mut out = vec![0u64; 4 * self.states.len()];
        for (k, &s) in self.states.iter().enumerate() {
            out[4 * k + s as usize] = 1;
        }
        out
    }
}

/// Degree statistic `d` and its trial-normalized version.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub d: Vec<i64>,
    pub d_tilde: Vec<Rat>,
}

impl DegreeStats {
    pub fn d_tilde_f64(&self) -> Vec<f64> {
        self.d_tilde.iter().map(Rat::to_f64).collect()
    }
}

/// Node propensities of the beta model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaParams(pub Vec<f64>);

impl BetaParams {
    pub fn zeros(n: usize) -> Self {
        BetaParams(vec![0.0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Edge probability of pair `(i,j)` under the logistic link.
    pub fn edge_probability(&self, i: usize, j: usize) -> f64 {
        sigmoid(self.0[i] + self.0[j])
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Degree statistic and its normalization.
///
/// `d[i]` sums the observed counts over every pair containing node `i`;
/// `d_tilde[i]` sums the per-pair proportions, kept as exact rationals so
/// later boundary tests cannot suffer ties.
pub fn degree_stats(t: &EdgeCountTable) -> DegreeStats {
    let n = t.n();
    let mut d = vec![0i64; n];
    let mut d_tilde = vec![Rat::zero(); n];
    for (k, (i, j)) in pairs(n).enumerate() {
        let x = t.counts_vec()[k] as i64;
        d[i] += x;
        d[j] += x;
        let p = Rat::new(x, t.trials_vec()[k] as i64);
        d_tilde[i] += &p;
        d_tilde[j] += &p;
    }
    DegreeStats { d, d_tilde }
}

/// Draws a table with independent binomial edge counts, `x_{i,j} ~
/// Bin(N_{i,j}, sigmoid(beta_i + beta_j))`. Deterministic for a fixed seed.
pub fn generate_graph(params: &BetaParams, trials: &[u64], seed: u64) -> Result<EdgeCountTable> {
    generate_graph_stream(params, trials, seed, 0)
}

/// Like [`generate_graph`] but with an independent substream per replicate.
pub fn generate_graph_stream(
    params: &BetaParams,
    trials: &[u64],
    seed: u64,
    stream: u64,
) -> Result<EdgeCountTable> {
    let n = params.n();
    if trials.len() != num_pairs(n) {
        return Err(Error::Parameter("trials vector has wrong length".into()));
    }
    if params.0.iter().any(|b| !b.is_finite()) {
        return Err(Error::Parameter("beta must be finite".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut counts = Vec::with_capacity(trials.len());
    for (k, (i, j)) in pairs(n).enumerate() {
        let p = params.edge_probability(i, j);
        let x = Binomial::new(trials[k], p)
            .map_err(|e| Error::Parameter(format!("bad binomial: {e}")))?
            .sample(&mut rng);
        counts.push(x);
    }
    EdgeCountTable::new(n, trials.to_vec(), counts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    CsvMatrix,
    Json,
}

/// How to fill the trial counts when parsing.
#[derive(Clone, Debug)]
pub enum TrialsSpec {
    Constant(u64),
    Matrix(Vec<u64>),
}

fn parse_cell(field: &str) -> Result<Option<u64>> {
    let f = field.trim();
    if f.is_empty() {
        return Ok(None);
    }
    if f == "x" || f == "X" {
        return Err(Error::Parse("'x' only allowed on the diagonal".into()));
    }
    f.parse::<u64>()
        .map(Some)
        .map_err(|_| Error::Parse(format!("bad count '{f}'")))
}

/// Parses the n-line CSV matrix into raw cells; diagonal must be `x` (or
/// empty), off-diagonal cells hold counts or may be empty.
fn parse_csv_cells(src: &str) -> Result<(usize, Vec<Option<u64>>)> {
    let rows: Vec<&str> = src.lines().filter(|l| !l.trim().is_empty()).collect();
    let n = rows.len();
    if n < 2 {
        return Err(Error::Parse("need at least two rows".into()));
    }
    let mut cells = vec![None; n * n];
    for (r, line) in rows.iter().enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} fields, expected {n}",
                r + 1,
                fields.len()
            )));
        }
        for (c, field) in fields.iter().enumerate() {
            let f = field.trim();
            if r == c {
                if !(f.is_empty() || f == "x" || f == "X") {
                    return Err(Error::Parse(format!("diagonal cell ({},{}) must be 'x'", r + 1, c + 1)));
                }
            } else {
                cells[r * n + c] = parse_cell(field)?;
            }
        }
    }
    Ok((n, cells))
}

/// Parses a symmetric edge-count table from the CSV matrix format.
///
/// The upper triangle is required. A lower-triangle cell, when present, must
/// equal `N - x` of its mirror; it is validated, never trusted.
pub fn parse_edge_table_csv(src: &str, trials: &TrialsSpec) -> Result<EdgeCountTable> {
    let (n, cells) = parse_csv_cells(src)?;
    let m = num_pairs(n);
    let trials_vec = match trials {
        TrialsSpec::Constant(t) => vec![*t; m],
        TrialsSpec::Matrix(v) => {
            if v.len() != m {
                return Err(Error::Parse("trials matrix has wrong size".into()));
            }
            v.clone()
        }
    };
    let mut counts = Vec::with_capacity(m);
    for (k, (i, j)) in pairs(n).enumerate() {
        let upper = cells[i * n + j]
            .ok_or_else(|| Error::Parse(format!("missing count for pair ({},{})", i + 1, j + 1)))?;
        if upper > trials_vec[k] {
            return Err(Error::Consistency(format!(
                "count {} exceeds {} trials for pair ({},{})",
                upper,
                trials_vec[k],
                i + 1,
                j + 1
            )));
        }
        if let Some(lower) = cells[j * n + i] {
            if upper + lower != trials_vec[k] {
                return Err(Error::Consistency(format!(
                    "cells ({},{}) and ({},{}) sum to {} but the pair has {} trials",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    upper + lower,
                    trials_vec[k]
                )));
            }
        }
        counts.push(upper);
    }
    EdgeCountTable::new(n, trials_vec, counts)
}

/// Parses symmetric per-pair counts (no sampling constraint): the upper
/// triangle is required and a lower-triangle cell, when present, must equal
/// its mirror. Returns the node count and the counts in pair order.
pub fn parse_symmetric_counts_csv(src: &str) -> Result<(usize, Vec<u64>)> {
    let (n, cells) = parse_csv_cells(src)?;
    let mut counts = Vec::with_capacity(num_pairs(n));
    for (i, j) in pairs(n) {
        let upper = cells[i * n + j]
            .ok_or_else(|| Error::Parse(format!("missing count for pair ({},{})", i + 1, j + 1)))?;
        if let Some(lower) = cells[j * n + i] {
            if lower != upper {
                return Err(Error::Consistency(format!(
                    "cells ({},{}) and ({},{}) must agree for symmetric counts",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
        counts.push(upper);
    }
    Ok((n, counts))
}

/// Parses a directed count table (full off-diagonal matrix required).
pub fn parse_directed_table_csv(src: &str) -> Result<DirectedCountTable> {
    let (n, cells) = parse_csv_cells(src)?;
    let mut counts = vec![0u64; n * n];
    for r in 0..n {
        for c in 0..n {
            if r == c {
                continue;
            }
            counts[r * n + c] = cells[r * n + c]
                .ok_or_else(|| Error::Parse(format!("missing count at ({},{})", r + 1, c + 1)))?;
        }
    }
    DirectedCountTable::new(n, counts)
}

/// Parses the JSON form `{"n":4,"trials":{"1,2":3,...},"counts":{"1,2":0,...}}`
/// with 1-based pairs. `trials` may be omitted when a spec is supplied.
pub fn parse_edge_table_json(src: &str, trials: Option<&TrialsSpec>) -> Result<EdgeCountTable> {
    #[derive(serde::Deserialize)]
    struct Raw {
        n: usize,
        #[serde(default)]
        trials: BTreeMap<String, u64>,
        counts: BTreeMap<String, u64>,
    }
    let raw: Raw = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    let n = raw.n;
    let m = num_pairs(n);

    let parse_key = |key: &str| -> Result<usize> {
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("bad pair key '{key}'")));
        }
        let a: usize = parts[0].trim().parse().map_err(|_| Error::Parse(format!("bad pair key '{key}'")))?;
        let b: usize = parts[1].trim().parse().map_err(|_| Error::Parse(format!("bad pair key '{key}'")))?;
        if a == 0 || b == 0 || a > n || b > n || a >= b {
            return Err(Error::Parse(format!("pair key '{key}' must be 1-based with i<j")));
        }
        Ok(pair_index(n, a - 1, b - 1))
    };

    let mut trials_vec = match trials {
        Some(TrialsSpec::Constant(t)) => vec![Some(*t); m],
        Some(TrialsSpec::Matrix(v)) => v.iter().map(|&t| Some(t)).collect(),
        None => vec![None; m],
    };
    for (key, value) in &raw.trials {
        trials_vec[parse_key(key)?] = Some(*value);
    }
    let trials_vec: Vec<u64> = trials_vec
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.ok_or_else(|| Error::Parse(format!("missing trials for pair index {k}"))))
        .collect::<Result<_>>()?;

    let mut counts = vec![None; m];
    for (key, value) in &raw.counts {
        counts[parse_key(key)?] = Some(*value);
    }
    let counts: Vec<u64> = counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| Error::Parse(format!("missing count for pair index {k}"))))
        .collect::<Result<_>>()?;

    EdgeCountTable::new(n, trials_vec, counts)
}
