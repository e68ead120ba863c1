//! Likelihood evaluation and fitting: Newton and fixed-point solvers for the
//! beta model, the extended MLE on a face, and Bradley-Terry fitting.

use crate::design::cayley_design;
use crate::error::{Error, Result};
use crate::geometry::{beta_lifted_statistic, facial_set, interior_lp_check, FacialSet};
use crate::table::{degree_stats, pairs, sigmoid, BetaParams, DirectedCountTable, EdgeCountTable};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    Newton,
    FixedPoint,
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub algorithm: Algorithm,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            tol: 1e-10,
            max_iter: 2000,
            algorithm: Algorithm::Newton,
        }
    }
}

/// Outcome of a fit: existence verdict, parameters when they exist, fitted
/// probabilities (per pair, lexicographic), and the moment-equation residual
/// `max_i |(A p_hat)_i - d_tilde_i|`.
#[derive(Clone, Debug)]
pub struct FitResult {
    pub exists: bool,
    pub beta_hat: Option<Vec<f64>>,
    pub p_hat: Vec<f64>,
    pub facial_set: Option<FacialSet>,
    pub loglik: f64,
    pub iterations: usize,
    pub moment_residual: f64,
}

/// Log-likelihood of the beta model at `params`, up to the constant binomial
/// coefficients (omitted): `sum_i d_i beta_i - sum_{i<j} N_ij log(1 +
/// exp(beta_i + beta_j))`.
pub fn log_likelihood(t: &EdgeCountTable, params: &BetaParams) -> f64 {
    let n = t.n();
    assert_eq!(params.n(), n);
    let d = degree_stats(t).d;
    let mut ll = 0.0;
    for (i, di) in d.iter().enumerate() {
        ll += *di as f64 * params.0[i];
    }
    for (k, (i, j)) in pairs(n).enumerate() {
        ll -= t.trials_vec()[k] as f64 * ln_1p_exp(params.0[i] + params.0[j]);
    }
    ll
}

/// Numerically stable `log(1 + exp(z))`.
fn ln_1p_exp(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Gradient of [`log_likelihood`]: `d - A (N .* p(beta))`.
pub fn log_likelihood_gradient(t: &EdgeCountTable, params: &BetaParams) -> Vec<f64> {
    let n = t.n();
    let d = degree_stats(t).d;
    let mut g: Vec<f64> = d.iter().map(|&v| v as f64).collect();
    for (k, (i, j)) in pairs(n).enumerate() {
        let w = t.trials_vec()[k] as f64 * sigmoid(params.0[i] + params.0[j]);
        g[i] -= w;
        g[j] -= w;
    }
    g
}

fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = a.len();
    for c in 0..n {
        let (p, max) = (c..n)
            .map(|r| (r, a[r][c].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if max < 1e-300 {
            return None;
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
    Some((0..n).map(|r| b[r] / a[r][r]).collect())
}

/// Mask-driven beta fit: only pairs with `free[k]` participate. Used both by
/// the plain MLE (all pairs free) and by the extended MLE on a face.
/// Returns `(beta, iterations)`.
fn newton_on_free_cells(
    t: &EdgeCountTable,
    free: &[bool],
    opts: &FitOptions,
) -> Result<(Vec<f64>, usize)> {
    let n = t.n();
    let max_n: f64 = t.trials_vec().iter().map(|&v| v as f64).fold(1.0, f64::max);
    let mut beta = vec![0.0; n];

    let restricted_ll = |beta: &Vec<f64>| -> f64 {
        let mut ll = 0.0;
        for (k, (i, j)) in pairs(n).enumerate() {
            if free[k] {
                let z = beta[i] + beta[j];
                ll += t.counts_vec()[k] as f64 * z - t.trials_vec()[k] as f64 * ln_1p_exp(z);
            }
        }
        ll
    };
    let gradient = |beta: &Vec<f64>| -> Vec<f64> {
        let mut g = vec![0.0; n];
        for (k, (i, j)) in pairs(n).enumerate() {
            if free[k] {
                let resid =
                    t.counts_vec()[k] as f64 - t.trials_vec()[k] as f64 * sigmoid(beta[i] + beta[j]);
                g[i] += resid;
                g[j] += resid;
            }
        }
        g
    };

    let mut ll = restricted_ll(&beta);
    for iter in 0..opts.max_iter {
        let g = gradient(&beta);
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax / max_n <= opts.tol {
            return Ok((beta, iter));
        }
        // Negated Hessian (positive semidefinite).
        let mut h = vec![vec![0.0; n]; n];
        for (k, (i, j)) in pairs(n).enumerate() {
            if free[k] {
                let p = sigmoid(beta[i] + beta[j]);
                let w = t.trials_vec()[k] as f64 * p * (1.0 - p);
                h[i][i] += w;
                h[j][j] += w;
                h[i][j] += w;
                h[j][i] += w;
            }
        }
        // Ridge keeps the solve well-posed when the face leaves flat
        // directions or isolates a node.
        let scale = (0..n).map(|i| h[i][i]).fold(0.0f64, f64::max).max(1.0);
        for (i, row) in h.iter_mut().enumerate() {
            row[i] += 1e-12 * scale;
        }
        let mut b = g.clone();
        let step = solve_dense(&mut h, &mut b)
            .ok_or_else(|| Error::NumericalFailure("singular Newton system".into()))?;
        if gmax / max_n <= 1e-6 {
            // Quadratic regime: take the full step. Backtracking here would
            // compare likelihoods that differ below double precision.
            for (v, s) in beta.iter_mut().zip(&step) {
                *v += s;
            }
            ll = restricted_ll(&beta);
            continue;
        }
        // Backtracking line search; the likelihood must never decrease.
        let g_dot_step: f64 = g.iter().zip(&step).map(|(a, b)| a * b).sum();
        let mut stepsize = 1.0;
        loop {
            let cand: Vec<f64> = beta.iter().zip(&step).map(|(b, s)| b + stepsize * s).collect();
            let cand_ll = restricted_ll(&cand);
            if cand_ll >= ll + 1e-4 * stepsize * g_dot_step || stepsize < 1e-12 {
                debug_assert!(cand_ll + 1e-9 >= ll, "line search must not decrease");
                beta = cand;
                ll = cand_ll;
                break;
            }
            stepsize *= 0.5;
        }
    }
    Err(Error::NoConvergence(opts.max_iter))
}

/// Fixed-point iteration on the propensities:
/// `beta_i <- log d_i - log sum_j N_ij e^{beta_j} / (1 + e^{beta_i+beta_j})`.
fn fixed_point_fit(t: &EdgeCountTable, opts: &FitOptions) -> Result<(Vec<f64>, usize)> {
    let n = t.n();
    let d = degree_stats(t).d;
    if d.iter().any(|&v| v == 0) {
        return Err(Error::NumericalFailure("fixed point needs positive degrees".into()));
    }
    let max_n: f64 = t.trials_vec().iter().map(|&v| v as f64).fold(1.0, f64::max);
    let mut beta: Vec<f64> = vec![0.0; n];
    for iter in 0..opts.max_iter {
        let mut next = vec![0.0; n];
        for i in 0..n {
            let mut denom = 0.0;
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                let nij = t.trials(a, b) as f64;
                denom += nij * beta[j].exp() / (1.0 + (beta[i] + beta[j]).exp());
            }
            next[i] = (d[i] as f64).ln() - denom.ln();
        }
        beta = next;
        let params = BetaParams(beta.clone());
        let g = log_likelihood_gradient(t, &params);
        let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if gmax / max_n <= opts.tol {
            return Ok((beta, iter + 1));
        }
    }
    Err(Error::NoConvergence(opts.max_iter))
}

fn assemble_fit(
    t: &EdgeCountTable,
    beta: Vec<f64>,
    iterations: usize,
    fs: Option<FacialSet>,
) -> FitResult {
    let n = t.n();
    let p_hat: Vec<f64> = pairs(n).map(|(i, j)| sigmoid(beta[i] + beta[j])).collect();
    let resid = moment_residual(t, &p_hat);
    let loglik = log_likelihood(t, &BetaParams(beta.clone()));
    FitResult {
        exists: true,
        beta_hat: Some(beta),
        p_hat,
        facial_set: fs,
        loglik,
        iterations,
        moment_residual: resid,
    }
}

/// `max_i |(A p)_i - d_tilde_i|`.
pub fn moment_residual(t: &EdgeCountTable, p_hat: &[f64]) -> f64 {
    let n = t.n();
    let dt = degree_stats(t).d_tilde;
    let mut fitted = vec![0.0; n];
    for (k, (i, j)) in pairs(n).enumerate() {
        fitted[i] += p_hat[k];
        fitted[j] += p_hat[k];
    }
    fitted
        .iter()
        .zip(&dt)
        .map(|(f, d)| (f - d.to_f64()).abs())
        .fold(0.0, f64::max)
}

/// Maximum likelihood fit of the beta model. Existence is certified first
/// with the exact interior test on the marginal cone; a boundary statistic
/// reports [`Error::NonexistentMle`] (use [`extended_mle`] instead).
pub fn fit_mle(t: &EdgeCountTable, opts: &FitOptions) -> Result<FitResult> {
    let c = cayley_design(t.n(), true);
    let chk = interior_lp_check(&beta_lifted_statistic(t), &c)?;
    if !chk.is_interior() {
        return Err(Error::NonexistentMle);
    }
    let free = vec![true; t.counts_vec().len()];
    let (beta, iters) = match opts.algorithm {
        Algorithm::Newton => newton_on_free_cells(t, &free, opts)?,
        Algorithm::FixedPoint => fixed_point_fit(t, opts)?,
    };
    Ok(assemble_fit(t, beta, iters, None))
}

/// Extended MLE: identifies the facial set exactly, pins the co-facial cells
/// to their observed extremes, and solves the restricted concave problem on
/// the free cells so the moment equations hold on every node.
pub fn extended_mle(t: &EdgeCountTable, opts: &FitOptions) -> Result<FitResult> {
    let n = t.n();
    let c = cayley_design(n, true);
    let fs = facial_set(&beta_lifted_statistic(t), &c)?;
    if !fs.is_proper {
        let free = vec![true; t.counts_vec().len()];
        let (beta, iters) = newton_on_free_cells(t, &free, opts)?;
        return Ok(assemble_fit(t, beta, iters, Some(fs)));
    }

    // Pin pairs named by the co-facial cells: cell (i,j) with i<j means the
    // edge count is at 0; the reversed cell means it is at N.
    let m = t.counts_vec().len();
    let mut pinned: Vec<Option<f64>> = vec![None; m];
    for (i, j) in fs.cofacial_pairs() {
        let (a, b, value) = if i < j { (i, j, 0.0) } else { (j, i, 1.0) };
        let k = crate::table::pair_index(n, a, b);
        let expected = if value == 0.0 { 0 } else { t.trials(a, b) };
        debug_assert_eq!(t.count(a, b), expected, "co-facial cell not at its extreme");
        pinned[k] = Some(value);
    }
    let free: Vec<bool> = pinned.iter().map(Option::is_none).collect();
    let (beta, iters) = if free.iter().any(|&f| f) {
        newton_on_free_cells(t, &free, opts)?
    } else {
        (vec![0.0; n], 0)
    };

    let p_hat: Vec<f64> = pairs(n)
        .enumerate()
        .map(|(k, (i, j))| pinned[k].unwrap_or_else(|| sigmoid(beta[i] + beta[j])))
        .collect();
    let resid = moment_residual(t, &p_hat);
    // Extended log-likelihood: pinned cells contribute 0 (x log 1 or 0 log 0).
    let mut loglik = 0.0;
    for (k, _) in pairs(n).enumerate() {
        if free[k] {
            let (x, nn) = (t.counts_vec()[k] as f64, t.trials_vec()[k] as f64);
            let p = p_hat[k];
            loglik += x * p.ln() + (nn - x) * (1.0 - p).ln();
        }
    }
    Ok(FitResult {
        exists: false,
        beta_hat: None,
        p_hat,
        facial_set: Some(fs),
        loglik,
        iterations: iters,
        moment_residual: resid,
    })
}

/// Bradley-Terry fit by minorization-maximization, normalized so the
/// exponentiated strengths sum to one. Requires the win digraph to be
/// strongly connected.
pub fn fit_bradley_terry(t: &DirectedCountTable, opts: &FitOptions) -> Result<FitResult> {
    let verdict = crate::zoo::bt_existence(t);
    if !verdict.exists {
        return Err(Error::NonexistentMle);
    }
    let n = t.n();
    let wins: Vec<f64> = t.out_degrees().iter().map(|&v| v as f64).collect();
    let mut pi = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    let residual = |pi: &Vec<f64>| -> f64 {
        (0..n)
            .map(|i| {
                let e: f64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let nij = (t.count(i, j) + t.count(j, i)) as f64;
                        nij * pi[i] / (pi[i] + pi[j])
                    })
                    .sum();
                (wins[i] - e).abs()
            })
            .fold(0.0, f64::max)
    };
    for iter in 0..opts.max_iter.max(10_000) {
        iterations = iter + 1;
        let mut next = vec![0.0; n];
        for i in 0..n {
            let denom: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let nij = (t.count(i, j) + t.count(j, i)) as f64;
                    nij / (pi[i] + pi[j])
                })
                .sum();
            next[i] = wins[i] / denom;
        }
        let total: f64 = next.iter().sum();
        for v in next.iter_mut() {
            *v /= total;
        }
        pi = next;
        if residual(&pi) <= opts.tol.max(1e-12) {
            break;
        }
    }
    let resid = residual(&pi);
    if resid > 1e-8 {
        return Err(Error::NoConvergence(iterations));
    }
    let beta: Vec<f64> = pi.iter().map(|v| v.ln()).collect();
    let p_hat: Vec<f64> = pairs(n).map(|(i, j)| pi[i] / (pi[i] + pi[j])).collect();
    let mut loglik = 0.0;
    for (k, (i, j)) in pairs(n).enumerate() {
        let (xij, xji) = (t.count(i, j) as f64, t.count(j, i) as f64);
        loglik += xij * p_hat[k].ln() + xji * (1.0 - p_hat[k]).ln();
    }
    Ok(FitResult {
        exists: true,
        beta_hat: Some(beta),
        p_hat,
        facial_set: None,
        loglik,
        iterations,
        moment_residual: resid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{parse_edge_table_csv, TrialsSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const BOUNDARY_4_CSV: &str = "x,0,1,2\n3,x,2,1\n2,1,x,3\n1,2,0,x\n";
    const INTERIOR_4_CSV: &str = "x,2,1,2\n1,x,0,1\n2,3,x,3\n1,2,0,x\n";

    #[test]
    fn loglik_at_zero_is_minus_pairs_log2() {
        let t = EdgeCountTable::simple_graph(5, &[(0, 1), (2, 3)]).unwrap();
        let v = log_likelihood(&t, &BetaParams::zeros(5));
        assert!((v + 10.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..50 {
            let n = rng.gen_range(3..=10);
            let m = crate::table::num_pairs(n);
            let trials: Vec<u64> = (0..m).map(|_| rng.gen_range(1..4)).collect();
            let counts: Vec<u64> = trials.iter().map(|&t| rng.gen_range(0..=t)).collect();
            let t = EdgeCountTable::new(n, trials, counts).unwrap();
            let beta: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let params = BetaParams(beta.clone());
            let g = log_likelihood_gradient(&t, &params);
            let h = 1e-5;
            for i in 0..n {
                let mut up = beta.clone();
                up[i] += h;
                let mut dn = beta.clone();
                dn[i] -= h;
                let fd =
                    (log_likelihood(&t, &BetaParams(up)) - log_likelihood(&t, &BetaParams(dn)))
                        / (2.0 * h);
                let scale = 1.0 + g[i].abs();
                assert!(
                    (g[i] - fd).abs() / scale < 1e-5,
                    "trial {trial} node {i}: {} vs {fd}",
                    g[i]
                );
            }
        }
    }

    #[test]
    fn interior_reference_optimum_is_exactly_rational() {
        // The MLE of the interior reference table solves the moment
        // equations A p = (5/3, 1, 4/3, 2) with p = (1/3, 1/2, 5/6, 1/6,
        // 1/2, 2/3) exactly; the propensities are half log-odds of simple
        // ratios. Both solvers must land there.
        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let fit = fit_mle(&t, &FitOptions::default()).unwrap();
        let beta = fit.beta_hat.as_ref().unwrap();
        let expect = [
            0.5 * (5.0f64 / 2.0).ln(),
            -0.5 * 10.0f64.ln(),
            -0.5 * (5.0f64 / 2.0).ln(),
            0.5 * 10.0f64.ln(),
        ];
        for (b, e) in beta.iter().zip(&expect) {
            assert!((b - e).abs() < 1e-8, "{b} vs {e}");
        }
        let p_expect = [1.0 / 3.0, 0.5, 5.0 / 6.0, 1.0 / 6.0, 0.5, 2.0 / 3.0];
        for (p, e) in fit.p_hat.iter().zip(&p_expect) {
            assert!((p - e).abs() < 1e-9);
        }
        assert!(fit.moment_residual <= 1e-10);
    }

    #[test]
    fn newton_and_fixed_point_agree() {
        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let a = fit_mle(&t, &FitOptions::default()).unwrap();
        let b = fit_mle(
            &t,
            &FitOptions { algorithm: Algorithm::FixedPoint, max_iter: 20_000, ..Default::default() },
        )
        .unwrap();
        for (x, y) in a.beta_hat.unwrap().iter().zip(b.beta_hat.unwrap().iter()) {
            assert!((x - y).abs() < 1e-7);
        }
    }

    #[test]
    fn balanced_table_fits_to_zero() {
        let t = EdgeCountTable::new(5, vec![4; 10], vec![2; 10]).unwrap();
        let fit = fit_mle(&t, &FitOptions::default()).unwrap();
        for b in fit.beta_hat.unwrap() {
            assert!(b.abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_table_is_rejected_by_plain_fit() {
        let t = parse_edge_table_csv(BOUNDARY_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        assert!(matches!(
            fit_mle(&t, &FitOptions::default()),
            Err(Error::NonexistentMle)
        ));
    }

    #[test]
    fn extended_mle_on_boundary_reference_table() {
        let t = parse_edge_table_csv(BOUNDARY_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let fit = extended_mle(&t, &FitOptions::default()).unwrap();
        assert!(!fit.exists);
        let expect = [0.0, 0.5, 0.5, 0.5, 0.5, 1.0];
        for (p, e) in fit.p_hat.iter().zip(&expect) {
            assert!((p - e).abs() < 1e-6, "{p} vs {e}");
        }
        assert!(fit.moment_residual <= 1e-8);
        // The fitted degrees reproduce the observed normalized statistic.
        let dt = degree_stats(&t).d_tilde;
        assert_eq!(dt.iter().map(|r| r.to_f64()).collect::<Vec<_>>(), vec![1.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn extended_mle_equals_plain_fit_when_interior() {
        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let a = fit_mle(&t, &FitOptions::default()).unwrap();
        let b = extended_mle(&t, &FitOptions::default()).unwrap();
        assert!(b.exists);
        for (x, y) in a.p_hat.iter().zip(&b.p_hat) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn extended_mle_on_empty_graph() {
        let t = EdgeCountTable::new(5, vec![1; 10], vec![0; 10]).unwrap();
        let fit = extended_mle(&t, &FitOptions::default()).unwrap();
        assert!(!fit.exists);
        assert!(fit.p_hat.iter().all(|&p| p == 0.0));
        assert_eq!(fit.moment_residual, 0.0);
    }

    #[test]
    fn extended_mle_saturates_every_simple_three_node_graph() {
        for code in 0..8u64 {
            let t = EdgeCountTable::simple_graph_from_code(3, code);
            let fit = extended_mle(&t, &FitOptions::default()).unwrap();
            assert!(!fit.exists);
            let observed: Vec<f64> = t.counts_vec().iter().map(|&x| x as f64).collect();
            assert_eq!(fit.p_hat, observed, "code {code}");
        }
    }

    #[test]
    fn refit_satisfies_moment_equations_on_generated_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 8;
        let beta: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.8..0.8)).collect();
        let t = crate::table::generate_graph(
            &BetaParams(beta),
            &vec![50; crate::table::num_pairs(n)],
            99,
        )
        .unwrap();
        let fit = fit_mle(&t, &FitOptions::default()).unwrap();
        assert!(fit.moment_residual <= 1e-10);
    }

    #[test]
    fn fit_is_equivariant_under_relabeling() {
        use rand::seq::SliceRandom;
        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let base = fit_mle(&t, &FitOptions::default()).unwrap().beta_hat.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..4).collect();
            perm.shuffle(&mut rng);
            let rt = t.relabel(&perm);
            let rbeta = fit_mle(&rt, &FitOptions::default()).unwrap().beta_hat.unwrap();
            for i in 0..4 {
                assert!((rbeta[i] - base[perm[i]]).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn bradley_terry_cycle_and_two_player_forms() {
        // Balanced 3-cycle: all strengths equal, normalized to 1/3.
        let t = DirectedCountTable::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let fit = fit_bradley_terry(&t, &FitOptions::default()).unwrap();
        let beta = fit.beta_hat.unwrap();
        for b in &beta {
            assert!((b - (1.0f64 / 3.0).ln()).abs() < 1e-8);
        }

        // Two players, 3 wins to 1: fitted probability 3/4.
        let mut counts = vec![0u64; 4];
        counts[1] = 3;
        counts[2] = 1;
        let t = DirectedCountTable::new(2, counts).unwrap();
        let fit = fit_bradley_terry(&t, &FitOptions::default()).unwrap();
        assert!((fit.p_hat[0] - 0.75).abs() < 1e-9);
    }

    #[test]
    fn bradley_terry_moments_on_random_strong_tournament() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut found = 0;
        while found < 5 {
            let n = 6;
            let mut edges = Vec::new();
            for (i, j) in pairs(n) {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                } else {
                    edges.push((j, i));
                }
            }
            let t = DirectedCountTable::from_edges(n, &edges).unwrap();
            match fit_bradley_terry(&t, &FitOptions::default()) {
                Ok(fit) => {
                    found += 1;
                    assert!(fit.moment_residual <= 1e-8);
                }
                Err(Error::NonexistentMle) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn bradley_terry_rejects_transitive_tournament() {
        let t = DirectedCountTable::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            fit_bradley_terry(&t, &FitOptions::default()),
            Err(Error::NonexistentMle)
        ));
    }
}
