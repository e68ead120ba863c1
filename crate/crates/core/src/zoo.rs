//! Model-specific existence theory: Rasch (combinatorial and geometric),
//! Bradley-Terry (strong connectivity), the Poisson directed/undirected
//! models (explicit facet catalogs and a probability bound), and the
//! Holland-Leinhardt p1 models (cone LP existence plus dyad probabilities).

use crate::design::{p1_design, rasch_design, DesignMatrix, P1Variant};
use crate::error::{Error, Result};
use crate::geometry::{facial_set, interior_lp_check, FacialSet};
use crate::table::{num_pairs, pairs, DirectedCountTable, DyadTable};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Binary subject-by-item response table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaschTable {
    k: usize,
    l: usize,
    /// Row-major `k x l` entries in {0,1}.
    responses: Vec<u8>,
}

impl RaschTable {
    pub fn new(k: usize, l: usize, responses: Vec<u8>) -> Result<Self> {
        if k < 2 || l < 2 {
            return Err(Error::Parameter("need at least 2 subjects and 2 items".into()));
        }
        if responses.len() != k * l || responses.iter().any(|&x| x > 1) {
            return Err(Error::Parameter("responses must be a k x l 0/1 matrix".into()));
        }
        Ok(RaschTable { k, l, responses })
    }

    pub fn from_code(k: usize, l: usize, code: u64) -> Self {
        let responses = (0..k * l).map(|b| ((code >> b) & 1) as u8).collect();
        RaschTable { k, l, responses }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.responses[i * self.l + j]
    }

    pub fn row_margins(&self) -> Vec<i64> {
        (0..self.k)
            .map(|i| (0..self.l).map(|j| self.at(i, j) as i64).sum())
            .collect()
    }

    pub fn col_margins(&self) -> Vec<i64> {
        (0..self.l)
            .map(|j| (0..self.k).map(|i| self.at(i, j) as i64).sum())
            .collect()
    }

    /// Lifted counts in the column order of [`rasch_design`].
    pub fn lifted_counts(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(2 * self.k * self.l);
        for i in 0..self.k {
            for j in 0..self.l {
                out.push(self.at(i, j) as u64);
                out.push(1 - self.at(i, j) as u64);
            }
        }
        out
    }
}

/// Sufficient statistic matching the rows of [`rasch_design`].
pub fn rasch_statistic(t: &RaschTable) -> Vec<i64> {
    let mut out = vec![1i64; t.k * t.l];
    out.extend(t.row_margins());
    out.extend(t.col_margins());
    out
}

/// Blocking partition in Haberman's form: responses are all zero on
/// `A x C` and all one on `B x D`, with `A u B` the subjects and `C u D`
/// the items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaschBlocking {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RaschVerdict {
    pub exists: bool,
    pub blocking: Option<RaschBlocking>,
}

/// Cap on the exhaustive blocking-set search (`2^(k+l)` subset pairs).
pub const RASCH_COMBINATORIAL_CAP: usize = 10;

/// Combinatorial search for a blocking partition: the MLE fails to exist
/// exactly when one exists. The all-one condition is taken on `B x D`
/// (responses at their maximum).
fn rasch_blocking_search(t: &RaschTable) -> Option<RaschBlocking> {
    let (k, l) = (t.k, t.l);
    for a_mask in 0u32..(1 << k) {
        'c_loop: for c_mask in 0u32..(1 << l) {
            let a_empty = a_mask == 0;
            let c_empty = c_mask == 0;
            let b_empty = a_mask == (1 << k) - 1;
            let d_empty = c_mask == (1 << l) - 1;
            let pair_ac = !a_empty && !c_empty;
            let pair_bd = !b_empty && !d_empty;
            if !pair_ac && !pair_bd {
                continue;
            }
            for i in 0..k {
                for j in 0..l {
                    let in_a = a_mask >> i & 1 == 1;
                    let in_c = c_mask >> j & 1 == 1;
                    if in_a && in_c && t.at(i, j) != 0 {
                        continue 'c_loop;
                    }
                    if !in_a && !in_c && t.at(i, j) != 1 {
                        continue 'c_loop;
                    }
                }
            }
            let pick = |mask: u32, len: usize, member: bool| -> Vec<usize> {
                (0..len).filter(|&x| (mask >> x & 1 == 1) == member).collect()
            };
            return Some(RaschBlocking {
                a: pick(a_mask, k, true),
                b: pick(a_mask, k, false),
                c: pick(c_mask, l, true),
                d: pick(c_mask, l, false),
            });
        }
    }
    None
}

/// Existence of the Rasch MLE. Runs both the combinatorial blocking-set
/// search and the exact interior LP on the bipartite marginal cone; the two
/// verdicts must agree.
pub fn rasch_existence(t: &RaschTable) -> Result<RaschVerdict> {
    let design = rasch_design(t.k, t.l);
    let lp = interior_lp_check(&rasch_statistic(t), &design)?;
    if t.k > RASCH_COMBINATORIAL_CAP || t.l > RASCH_COMBINATORIAL_CAP {
        return Err(Error::Size(format!(
            "blocking-set search capped at {RASCH_COMBINATORIAL_CAP} per side"
        )));
    }
    let blocking = rasch_blocking_search(t);
    let exists = lp.is_interior();
    if exists != blocking.is_none() {
        return Err(Error::NumericalFailure(
            "combinatorial and geometric Rasch verdicts disagree".into(),
        ));
    }
    Ok(RaschVerdict { exists, blocking })
}

#[derive(Clone, Debug)]
pub struct BtVerdict {
    pub exists: bool,
    /// A nonempty proper set of nodes with no incoming wins (a reason the
    /// win digraph is not strongly connected), when the MLE does not exist.
    pub undefeated: Option<Vec<usize>>,
}

/// Bradley-Terry existence: the MLE exists iff the positive-count win
/// digraph is strongly connected.
pub fn bt_existence(t: &DirectedCountTable) -> BtVerdict {
    let n = t.n();
    let reach_from = |start: usize, transpose: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v == u || seen[v] {
                    continue;
                }
                let has = if transpose { t.count(v, u) > 0 } else { t.count(u, v) > 0 };
                if has {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    };
    let fwd = reach_from(0, false);
    let bwd = reach_from(0, true);
    if fwd.iter().all(|&x| x) && bwd.iter().all(|&x| x) {
        return BtVerdict { exists: true, undefeated: None };
    }
    // The ancestor set of any node is closed against incoming wins; the
    // smallest one is a source component and is proper when the digraph is
    // not strongly connected.
    let source: Vec<usize> = (0..n)
        .map(|v| {
            let anc = reach_from(v, true);
            (0..n).filter(|&u| anc[u]).collect::<Vec<usize>>()
        })
        .min_by_key(|s| s.len())
        .expect("n >= 2");
    debug_assert!(source.len() < n);
    BtVerdict { exists: false, undefeated: Some(source) }
}

/// Number of facets of the Bradley-Terry convex support: `2^n - 2`.
pub fn bt_facet_count(n: usize) -> u64 {
    assert!((2..=63).contains(&n));
    (1u64 << n) - 2
}

/// Sufficient statistic matching the rows of [`crate::design::bt_design`].
pub fn bt_statistic(t: &DirectedCountTable) -> Vec<i64> {
    let n = t.n();
    let mut out: Vec<i64> = pairs(n)
        .map(|(i, j)| (t.count(i, j) + t.count(j, i)) as i64)
        .collect();
    out.extend(t.out_degrees().iter().map(|&v| v as i64));
    out
}

/// Existence of the Bradley-Terry MLE by the exact cone LP (oracle used to
/// cross-check the graph criterion).
pub fn bt_existence_lp(t: &DirectedCountTable) -> Result<bool> {
    let design = crate::design::bt_design(t.n());
    Ok(interior_lp_check(&bt_statistic(t), &design)?.is_interior())
}

/// Co-facial cell sets of the facets of the Poisson cones.
///
/// Directed (`n >= 3`): the `2n` row supports (a zero out-degree or a zero
/// in-degree) and, for each node `k`, all cells avoiding `k`. Undirected:
/// the same two families over unordered pairs; at `n = 3` the support sets
/// are not facets (the cone is simplicial), so only the three
/// avoiding-a-node sets are emitted.
pub fn poisson_facial_catalog(n: usize, directed: bool) -> Vec<BTreeSet<(usize, usize)>> {
    assert!(n >= 3);
    let mut out = Vec::new();
    if directed {
        for i in 0..n {
            out.push((0..n).filter(|&j| j != i).map(|j| (i, j)).collect());
        }
        for j in 0..n {
            out.push((0..n).filter(|&i| i != j).map(|i| (i, j)).collect());
        }
        for k in 0..n {
            out.push(
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && i != k && j != k)
                    .collect(),
            );
        }
    } else {
        if n >= 4 {
            for i in 0..n {
                out.push(pairs(n).filter(|&(a, b)| a == i || b == i).collect());
            }
        }
        for k in 0..n {
            out.push(pairs(n).filter(|&(a, b)| a != k && b != k).collect());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonBound {
    /// Tail bound summing one term per zero out-degree, in-degree and
    /// avoided node, clipped at 1.
    pub three_term: f64,
    /// `3 n exp(-(n-1) m*)`, clipped at 1.
    pub simplified: f64,
    /// The simplified form dominates the three-term bound only from n = 7.
    pub simplified_valid: bool,
}

/// Upper bound on the probability that the Poisson directed-graph MLE does
/// not exist, from the mean matrix `m` (full `n x n`, diagonal ignored).
pub fn poisson_existence_bound(means: &[f64], n: usize) -> Result<PoissonBound> {
    if means.len() != n * n {
        return Err(Error::Parameter("mean matrix must be n x n".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !(means[i * n + j] > 0.0) {
                return Err(Error::Parameter("means must be positive".into()));
            }
        }
    }
    let m = |i: usize, j: usize| means[i * n + j];
    let mut total = 0.0;
    for i in 0..n {
        let s: f64 = (0..n).filter(|&j| j != i).map(|j| m(i, j)).sum();
        total += (-s).exp();
    }
    for j in 0..n {
        let s: f64 = (0..n).filter(|&i| i != j).map(|i| m(i, j)).sum();
        total += (-s).exp();
    }
    for k in 0..n {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j && i != k && j != k {
                    s += m(i, j);
                }
            }
        }
        total += (-s).exp();
    }
    let mut mstar = f64::INFINITY;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                mstar = mstar.min(m(i, j));
            }
        }
    }
    Ok(PoissonBound {
        three_term: total.min(1.0),
        simplified: (3.0 * n as f64 * (-((n - 1) as f64) * mstar).exp()).min(1.0),
        simplified_valid: n >= 7,
    })
}

/// Per-dyad probability vectors of the p1 model.
#[derive(Clone, Debug)]
pub struct DyadProbabilities {
    pub n: usize,
    /// One `(p00, p10, p01, p11)` tuple per pair, lexicographic.
    pub probs: Vec<[f64; 4]>,
}

/// Parameters of the p1 model; the per-dyad normalizing constants are
/// always solved internally.
#[derive(Clone, Debug)]
pub struct P1Params {
    pub theta: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub rho: f64,
    pub rho_node: Vec<f64>,
}

impl P1Params {
    pub fn zeros(n: usize) -> Self {
        P1Params {
            theta: 0.0,
            alpha: vec![0.0; n],
            beta: vec![0.0; n],
            rho: 0.0,
            rho_node: vec![0.0; n],
        }
    }
}

/// Dyad probabilities from p1 parameters: exponentiates the four
/// log-probability expressions of each dyad and normalizes.
pub fn p1_dyad_probabilities(params: &P1Params, variant: P1Variant) -> DyadProbabilities {
    let n = params.alpha.len();
    assert_eq!(params.beta.len(), n);
    let mut probs = Vec::with_capacity(num_pairs(n));
    for (i, j) in pairs(n) {
        let rho_ij = match variant {
            P1Variant::Zero => 0.0,
            P1Variant::Constant => params.rho,
            P1Variant::EdgeDependent => params.rho + params.rho_node[i] + params.rho_node[j],
        };
        let logits = [
            0.0,
            params.alpha[i] + params.beta[j] + params.theta,
            params.alpha[j] + params.beta[i] + params.theta,
            params.alpha[i] + params.beta[j] + params.alpha[j] + params.beta[i]
                + 2.0 * params.theta
                + rho_ij,
        ];
        let max = logits.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let mut e = [0.0; 4];
        let mut z = 0.0;
        for (out, &l) in e.iter_mut().zip(&logits) {
            *out = (l - max).exp();
            z += *out;
        }
        for out in e.iter_mut() {
            *out /= z;
        }
        probs.push(e);
    }
    DyadProbabilities { n, probs }
}

/// Sufficient statistic of an observed network under a p1 design.
pub fn p1_statistic(t: &DyadTable, design: &DesignMatrix) -> Vec<i64> {
    design.apply(&t.indicator())
}

#[derive(Clone, Debug)]
pub struct P1Verdict {
    pub exists: bool,
    pub facial: FacialSet,
}

/// Existence of the p1 MLE for one observed network, with the facial set.
pub fn p1_existence(t: &DyadTable, variant: P1Variant) -> Result<P1Verdict> {
    let design = p1_design(t.n(), variant);
    let stat = p1_statistic(t, &design);
    let fs = facial_set(&stat, &design)?;
    Ok(P1Verdict { exists: !fs.is_proper, facial: fs })
}

/// Existence only (one LP; used by the exhaustive surveys).
pub fn p1_exists(t: &DyadTable, variant: P1Variant) -> Result<bool> {
    let design = p1_design(t.n(), variant);
    let stat = p1_statistic(t, &design);
    Ok(interior_lp_check(&stat, &design)?.is_interior())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P1Survey {
    pub networks: u64,
    pub distinct_statistics: usize,
    pub statistics_with_mle: usize,
    pub networks_with_mle: u64,
}

/// Cap on the exhaustive p1 survey (4^C(n,2) networks).
pub const P1_SURVEY_CAP: usize = 5;

/// Exhaustive existence survey over every observable network on `n` nodes.
/// Verdicts are computed once per distinct sufficient statistic and the
/// reduction is deterministic.
pub fn p1_survey(n: usize, variant: P1Variant) -> Result<P1Survey> {
    if n > P1_SURVEY_CAP {
        return Err(Error::Size(format!("survey capped at n = {P1_SURVEY_CAP}")));
    }
    let design = p1_design(n, variant);
    let total: u64 = 4u64.pow(num_pairs(n) as u32);
    let mut stats: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for code in 0..total {
        let t = DyadTable::from_code(n, code);
        *stats.entry(p1_statistic(&t, &design)).or_insert(0) += 1;
    }
    let entries: Vec<(&Vec<i64>, &u64)> = stats.iter().collect();
    let verdicts: Vec<bool> = entries
        .par_iter()
        .map(|(stat, _)| {
            interior_lp_check(stat, &design)
                .map(|chk| chk.is_interior())
                .expect("observed statistics lie in the cone")
        })
        .collect();
    let mut statistics_with_mle = 0usize;
    let mut networks_with_mle = 0u64;
    for ((_, count), exists) in entries.iter().zip(&verdicts) {
        if *exists {
            statistics_with_mle += 1;
            networks_with_mle += **count;
        }
    }
    Ok(P1Survey {
        networks: total,
        distinct_statistics: stats.len(),
        statistics_with_mle,
        networks_with_mle,
    })
}

/// Fits the dyad probabilities of a p1 model by damped Newton on the
/// non-normalizing parameters (the per-dyad constants are handled by the
/// softmax). Intended for networks whose MLE exists.
pub fn p1_fit_dyad_probabilities(t: &DyadTable, variant: P1Variant) -> Result<DyadProbabilities> {
    let n = t.n();
    let design = p1_design(n, variant);
    let np = num_pairs(n);
    // Columns restricted to the non-lambda rows.
    let dim = design.rows - np;
    let col = |k: usize, s: usize| -> Vec<f64> {
        (np..design.rows).map(|r| design.at(r, 4 * k + s) as f64).collect()
    };
    let obs = t.state_indices();
    let mut phi = vec![0.0; dim];
    for iter in 0..500 {
        let mut grad = vec![0.0; dim];
        let mut hess = vec![vec![0.0; dim]; dim];
        for k in 0..np {
            let cols: Vec<Vec<f64>> = (0..4).map(|s| col(k, s)).collect();
            let logits: Vec<f64> = cols
                .iter()
                .map(|c| c.iter().zip(&phi).map(|(a, b)| a * b).sum())
                .collect();
            let max = logits.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            let w: Vec<f64> = logits.iter().map(|l| (l - max).exp()).collect();
            let z: f64 = w.iter().sum();
            let p: Vec<f64> = w.iter().map(|v| v / z).collect();
            let mean: Vec<f64> = (0..dim)
                .map(|r| (0..4).map(|s| p[s] * cols[s][r]).sum())
                .collect();
            for r in 0..dim {
                grad[r] += cols[obs[k] as usize][r] - mean[r];
            }
            for s in 0..4 {
                for r in 0..dim {
                    for c in 0..dim {
                        hess[r][c] += p[s] * (cols[s][r] - mean[r]) * (cols[s][c] - mean[c]);
                    }
                }
            }
        }
        let gmax = grad.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax < 1e-11 {
            break;
        }
        if iter == 499 {
            return Err(Error::NoConvergence(500));
        }
        let scale = (0..dim).map(|r| hess[r][r]).fold(0.0f64, f64::max).max(1.0);
        for (r, row) in hess.iter_mut().enumerate() {
            row[r] += 1e-10 * scale;
        }
        let mut step = grad.clone();
        let solved = solve_dense_f64(&mut hess, &mut step);
        if !solved {
            return Err(Error::NumericalFailure("singular p1 Newton system".into()));
        }
        // Cap the step to keep the iteration inside the well-behaved region.
        let norm = step.iter().map(|v| v * v).sum::<f64>().sqrt();
        let factor = if norm > 4.0 { 4.0 / norm } else { 1.0 };
        for (v, s) in phi.iter_mut().zip(&step) {
            *v += factor * s;
        }
    }
    // Assemble probabilities per dyad.
    let mut probs = Vec::with_capacity(np);
    for k in 0..np {
        let cols: Vec<Vec<f64>> = (0..4).map(|s| col(k, s)).collect();
        let logits: Vec<f64> = cols
            .iter()
            .map(|c| c.iter().zip(&phi).map(|(a, b)| a * b).sum())
            .collect();
        let max = logits.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        let mut e = [0.0; 4];
        let mut z = 0.0;
        for (out, &l) in e.iter_mut().zip(&logits) {
            *out = (l - max).exp();
            z += *out;
        }
        for out in e.iter_mut() {
            *out /= z;
        }
        probs.push(e);
    }
    Ok(DyadProbabilities { n, probs })
}

fn solve_dense_f64(a: &mut [Vec<f64>], b: &mut [f64]) -> bool {
    let n = a.len();
    for c in 0..n {
        let Some((p, max)) = (c..n)
            .map(|r| (r, a[r][c].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
        else {
            return false;
        };
        if max < 1e-300 {
            return false;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c && a[r][c] != 0.0 {
                let f = a[r][c] / a[c][c];
                for k in c..n {
                    a[r][k] -= f * a[c][k];
                }
                b[r] -= f * b[c];
            }
        }
    }
    for r in 0..n {
        b[r] /= a[r][r];
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{bt_design, poisson_design};
    use crate::geometry::enumerate_facets;

    #[test]
    fn rasch_all_correct_has_no_mle() {
        let t = RaschTable::new(2, 2, vec![1, 1, 1, 1]).unwrap();
        let v = rasch_existence(&t).unwrap();
        assert!(!v.exists);
        let b = v.blocking.unwrap();
        assert!(b.a.is_empty() && b.c.is_empty());
    }

    #[test]
    fn rasch_identity_table_has_mle() {
        let t = RaschTable::new(2, 2, vec![1, 0, 0, 1]).unwrap();
        assert!(rasch_existence(&t).unwrap().exists);
    }

    #[test]
    fn rasch_block_pattern_blocks() {
        // Subject 1 misses item 1; everyone else answers everything else
        // correctly: A = {1}, C = {1} blocks.
        let t = RaschTable::new(3, 3, vec![0, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        let v = rasch_existence(&t).unwrap();
        assert!(!v.exists);
        // The returned blocking must satisfy the defining conditions; the
        // specific pattern A = {1}, C = {1} is among the valid blockings.
        let b = v.blocking.unwrap();
        assert!((!b.a.is_empty() && !b.c.is_empty()) || (!b.b.is_empty() && !b.d.is_empty()));
        for &i in &b.a {
            for &j in &b.c {
                assert_eq!(t.at(i, j), 0);
            }
        }
        for &i in &b.b {
            for &j in &b.d {
                assert_eq!(t.at(i, j), 1);
            }
        }
        let hand = RaschBlocking { a: vec![0], b: vec![1, 2], c: vec![0], d: vec![1, 2] };
        for &i in &hand.a {
            for &j in &hand.c {
                assert_eq!(t.at(i, j), 0);
            }
        }
        for &i in &hand.b {
            for &j in &hand.d {
                assert_eq!(t.at(i, j), 1);
            }
        }
    }

    #[test]
    fn rasch_paths_agree_exhaustively() {
        // Every 2x2 and 2x3 table: the blocking search and the LP verdict
        // must agree (checked inside rasch_existence).
        for code in 0..16u64 {
            let t = RaschTable::from_code(2, 2, code);
            rasch_existence(&t).unwrap();
        }
        for code in 0..64u64 {
            let t = RaschTable::from_code(2, 3, code);
            rasch_existence(&t).unwrap();
        }
    }

    #[test]
    fn bt_cycle_exists_transitive_does_not() {
        let cycle = DirectedCountTable::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(bt_existence(&cycle).exists);

        let trans = DirectedCountTable::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let v = bt_existence(&trans);
        assert!(!v.exists);
        assert_eq!(v.undefeated.unwrap(), vec![0]);
    }

    #[test]
    fn bt_graph_criterion_matches_lp_on_all_tournaments() {
        for code in 0..64u64 {
            let mut edges = Vec::new();
            for (k, (i, j)) in pairs(4).enumerate() {
                if code >> k & 1 == 1 {
                    edges.push((i, j));
                } else {
                    edges.push((j, i));
                }
            }
            let t = DirectedCountTable::from_edges(4, &edges).unwrap();
            let graph = bt_existence(&t).exists;
            let lp = bt_existence_lp(&t).unwrap();
            assert_eq!(graph, lp, "tournament {code}");
        }
    }

    #[test]
    fn bt_facet_counts() {
        assert_eq!(bt_facet_count(2), 2);
        assert_eq!(bt_facet_count(4), 14);
        assert_eq!(bt_facet_count(5), 30);
        // Geometric confirmation at n = 4: the marginal cone adds one
        // sampling facet per pair.
        let desc = enumerate_facets(&bt_design(4).columns_as_rat()).unwrap();
        assert_eq!(desc.facets.len() as u64, bt_facet_count(4) + 6);
    }

    #[test]
    fn poisson_catalog_counts() {
        assert_eq!(poisson_facial_catalog(4, true).len(), 12);
        assert_eq!(poisson_facial_catalog(5, true).len(), 15);
        assert_eq!(poisson_facial_catalog(4, false).len(), 8);
        assert_eq!(poisson_facial_catalog(3, false).len(), 3);
    }

    #[test]
    fn poisson_catalog_matches_enumeration_directed_n4() {
        let design = poisson_design(4);
        let desc = enumerate_facets(&design.columns_as_rat()).unwrap();
        assert_eq!(desc.facets.len(), 12);
        let catalog = poisson_facial_catalog(4, true);
        let enumerated: Vec<BTreeSet<(usize, usize)>> = desc
            .facets
            .iter()
            .map(|f| {
                (0..design.cols)
                    .filter(|c| !f.tight.contains(c))
                    .map(|c| match design.columns[c] {
                        crate::design::Column::OrderedPair(i, j) => (i, j),
                        _ => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        for set in &catalog {
            assert!(enumerated.contains(set), "missing {set:?}");
        }
        assert_eq!(enumerated.len(), catalog.len());
    }

    #[test]
    fn poisson_bound_shapes() {
        // Constant means c log n / (n-1) give the simplified form 3 n^{1-c}.
        let n = 9;
        let c = 2.0;
        let m = c * (n as f64).ln() / (n as f64 - 1.0);
        let means = vec![m; n * n];
        let b = poisson_existence_bound(&means, n).unwrap();
        let expect = 3.0 * (n as f64) * (n as f64).powf(-c);
        assert!((b.simplified - expect).abs() < 1e-12);
        assert!(b.simplified_valid);

        // Large means drive the bound to zero.
        let big = poisson_existence_bound(&vec![50.0; n * n], n).unwrap();
        assert!(big.three_term < 1e-100);

        // At n = 7 with unit means the three-term bound is the sharper one.
        let n7 = 7;
        let b7 = poisson_existence_bound(&vec![1.0; n7 * n7], n7).unwrap();
        assert!(b7.three_term <= b7.simplified);
    }

    #[test]
    fn dyad_probabilities_basics() {
        let p = p1_dyad_probabilities(&P1Params::zeros(3), P1Variant::EdgeDependent);
        for dyad in &p.probs {
            for v in dyad {
                assert!((v - 0.25).abs() < 1e-12);
            }
            let s: f64 = dyad.iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
        }

        // Strongly negative density empties the graph.
        let mut params = P1Params::zeros(3);
        params.theta = -40.0;
        let p = p1_dyad_probabilities(&params, P1Variant::Constant);
        for dyad in &p.probs {
            assert!(dyad[0] > 0.999_999);
        }

        // A strong sender at node 1 tilts its dyads toward 1->j.
        let mut params = P1Params::zeros(3);
        params.alpha[0] = 2.0;
        let p = p1_dyad_probabilities(&params, P1Variant::Zero);
        assert!(p.probs[0][1] > p.probs[0][2]);
        assert!(p.probs[1][1] > p.probs[1][2]);
    }

    #[test]
    fn p1_three_node_existence_pattern() {
        // The two 3-cycles are the only networks with an MLE when the
        // reciprocity effect is absent.
        let cycle1 = DyadTable::new(3, vec![1, 2, 1]).unwrap();
        let cycle2 = DyadTable::new(3, vec![2, 1, 2]).unwrap();
        assert!(p1_exists(&cycle1, P1Variant::Zero).unwrap());
        assert!(p1_exists(&cycle2, P1Variant::Zero).unwrap());
        let fit = p1_fit_dyad_probabilities(&cycle1, P1Variant::Zero).unwrap();
        for dyad in &fit.probs {
            for v in dyad {
                assert!((v - 0.25).abs() < 1e-6);
            }
        }
        // The same statistic is boundary as soon as reciprocity enters.
        assert!(!p1_exists(&cycle1, P1Variant::Constant).unwrap());
        assert!(!p1_exists(&cycle1, P1Variant::EdgeDependent).unwrap());
    }

    #[test]
    fn p1_survey_three_nodes() {
        let s = p1_survey(3, P1Variant::Zero).unwrap();
        assert_eq!(s.networks, 64);
        assert_eq!(s.distinct_statistics, 63);
        assert_eq!(s.statistics_with_mle, 1);
        assert_eq!(s.networks_with_mle, 2);
        let c = p1_survey(3, P1Variant::Constant).unwrap();
        assert_eq!(c.networks_with_mle, 0);
        let e = p1_survey(3, P1Variant::EdgeDependent).unwrap();
        assert_eq!(e.networks_with_mle, 0);
    }

    #[test]
    fn p1_facial_set_names_estimable_cells() {
        let empty = DyadTable::new(3, vec![0, 0, 0]).unwrap();
        let v = p1_existence(&empty, P1Variant::Zero).unwrap();
        assert!(!v.exists);
        assert!(v.facial.is_proper);
        // The observed all-empty states stay estimable; every cell with an
        // edge is co-facial.
        for &c in &v.facial.cofacial {
            let crate::design::Column::DyadState(_, _, s) = v.facial.columns[c] else {
                panic!()
            };
            assert_ne!(s, 0);
        }
    }
}
