//! Dense two-phase simplex with a float mode and an exact-rational mode.
//!
//! The float mode pivots by Dantzig's rule and falls back to Bland's rule
//! after `5*(m+n)` iterations; the exact mode uses Bland's rule from the
//! start, so it terminates on every input and its feasibility and sign
//! decisions are exact. Every geometric certificate in this crate goes
//! through the exact mode.

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Scalar the simplex can pivot over.
pub trait Scalar: Clone + std::fmt::Debug {
    /// Exact scalars pivot by Bland's rule from the first iteration.
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Sign with the mode's comparison tolerance.
    fn sign(&self) -> i32;
    fn lt(&self, o: &Self) -> bool {
        self.sub(o).sign() < 0
    }
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }
    fn to_f64(&self) -> f64;
}

/// Absolute feasibility/optimality tolerance of the float mode. The design
/// matrices feeding this solver have small integer entries, so scales are
/// benign.
pub const FLOAT_TOL: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i32 {
        if *self > FLOAT_TOL {
            1
        } else if *self < -FLOAT_TOL {
            -1
        } else {
            0
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_i64(v: i64) -> Self {
        Rat::from_int(v)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> i32 {
        self.signum()
    }
    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub sense: Sense,
    pub rhs: T,
}

/// Maximization problem with per-variable bounds (`None` = unbounded side).
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub bounds: Vec<(Option<T>, Option<T>)>,
}

impl<T: Scalar> LinearProgram<T> {
    /// Maximize `objective` subject to nonnegative variables.
    pub fn new(objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram {
            objective,
            constraints: Vec::new(),
            bounds: vec![(Some(T::zero()), None); n],
        }
    }

    pub fn constrain(&mut self, coeffs: Vec<T>, sense: Sense, rhs: T) {
        debug_assert_eq!(coeffs.len(), self.objective.len());
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Primal solution in the original variables (empty unless optimal).
    pub x: Vec<T>,
    pub objective_value: T,
    /// One multiplier per original constraint (empty unless optimal).
    pub duals: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpMode {
    Float,
    ExactRational,
}

/// Solves a float-valued program in the requested mode. Exact mode converts
/// every coefficient to a rational exactly (finite floats are rationals) and
/// rounds only the reported solution.
pub fn solve_lp(lp: &LinearProgram<f64>, mode: LpMode) -> Result<LpSolution<f64>> {
    match mode {
        LpMode::Float => solve(lp),
        LpMode::ExactRational => {
            let conv = |v: &f64| {
                Rat::from_f64_exact(*v)
                    .ok_or_else(|| Error::Parameter("non-finite coefficient".into()))
            };
            let lift = |vs: &[f64]| vs.iter().map(conv).collect::<Result<Vec<_>>>();
            let exact = LinearProgram {
                objective: lift(&lp.objective)?,
                constraints: lp
                    .constraints
                    .iter()
                    .map(|c| {
                        Ok(Constraint {
                            coeffs: lift(&c.coeffs)?,
                            sense: c.sense,
                            rhs: conv(&c.rhs)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                bounds: lp
                    .bounds
                    .iter()
                    .map(|(lo, hi)| {
                        Ok((
                            lo.as_ref().map(conv).transpose()?,
                            hi.as_ref().map(conv).transpose()?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let sol = solve(&exact)?;
            Ok(LpSolution {
                status: sol.status,
                x: sol.x.iter().map(Rat::to_f64).collect(),
                objective_value: sol.objective_value.to_f64(),
                duals: sol.duals.iter().map(Rat::to_f64).collect(),
            })
        }
    }
}

/// Exact solve; never reports a numerical failure.
pub fn solve_exact(lp: &LinearProgram<Rat>) -> LpSolution<Rat> {
    solve(lp).expect("Bland's rule terminates")
}

/// Variable transform from standard-form variables back to the original.
enum VarMap<T> {
    /// x = lo + u_k
    Shifted { k: usize, lo: T },
    /// x = hi - u_k
    Mirrored { k: usize, hi: T },
    /// x = u_k - u_k2
    Free { k: usize, k2: usize },
}

struct Standard<T> {
    /// Rows as (coeffs over standard vars, rhs >= 0); all equalities.
    rows: Vec<(Vec<T>, T)>,
    /// Objective over standard vars (maximize) and the constant offset.
    obj: Vec<T>,
    obj_offset: T,
    num_std: usize,
    var_maps: Vec<VarMap<T>>,
    /// Index of each original constraint among rows, with the sign applied
    /// during rhs normalization (for dual recovery).
    orig_rows: Vec<(usize, i32)>,
    /// Slack coefficient per row: +1 (can seed the basis), -1 (surplus), or
    /// none for an equality row.
    slack_sign_of_row: Vec<Option<i32>>,
}

fn standardize<T: Scalar>(lp: &LinearProgram<T>) -> Standard<T> {
    let nv = lp.objective.len();
    assert_eq!(lp.bounds.len(), nv);
    let mut var_maps = Vec::with_capacity(nv);
    let mut num_std = 0usize;
    // Extra `u <= hi - lo` rows created by two-sided bounds.
    let mut ub_rows: Vec<(usize, T)> = Vec::new();
    for (v, (lo, hi)) in lp.bounds.iter().enumerate() {
        match (lo, hi) {
            (Some(lo), None) => {
                var_maps.push(VarMap::Shifted { k: num_std, lo: lo.clone() });
                num_std += 1;
            }
            (Some(lo), Some(hi)) => {
                var_maps.push(VarMap::Shifted { k: num_std, lo: lo.clone() });
                ub_rows.push((v, hi.sub(lo)));
                num_std += 1;
            }
            (None, Some(hi)) => {
                var_maps.push(VarMap::Mirrored { k: num_std, hi: hi.clone() });
                num_std += 1;
            }
            (None, None) => {
                var_maps.push(VarMap::Free { k: num_std, k2: num_std + 1 });
                num_std += 2;
            }
        }
    }

    // Substitute the variable transforms into a row of original coefficients,
    // returning standard-form coefficients and the constant they absorb.
    let substitute = |coeffs: &[T]| -> (Vec<T>, T) {
        let mut out = vec![T::zero(); num_std];
        let mut constant = T::zero();
        for (v, c) in coeffs.iter().enumerate() {
            if c.sign() == 0 && c.to_f64() == 0.0 {
                continue;
            }
            match &var_maps[v] {
                VarMap::Shifted { k, lo } => {
                    out[*k] = out[*k].add(c);
                    constant = constant.add(&c.mul(lo));
                }
                VarMap::Mirrored { k, hi } => {
                    out[*k] = out[*k].sub(c);
                    constant = constant.add(&c.mul(hi));
                }
                VarMap::Free { k, k2 } => {
                    out[*k] = out[*k].add(c);
                    out[*k2] = out[*k2].sub(c);
                }
            }
        }
        (out, constant)
    };

    let (obj, obj_offset) = substitute(&lp.objective);

    let mut rows: Vec<(Vec<T>, T)> = Vec::new();
    let mut orig_rows = Vec::new();
    let mut slack_sign_of_row: Vec<Option<i32>> = Vec::new();

    // Normalizes a row to rhs >= 0 and records its slack sign. Returns the
    // sign applied during normalization.
    let push_row = |mut coeffs: Vec<T>,
                        mut sense: Sense,
                        mut rhs: T,
                        rows: &mut Vec<(Vec<T>, T)>,
                        slack_sign_of_row: &mut Vec<Option<i32>>|
     -> i32 {
        let mut sign = 1;
        if rhs.sign() < 0 {
            for c in coeffs.iter_mut() {
                *c = c.neg();
            }
            rhs = rhs.neg();
            sign = -1;
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
        rows.push((coeffs, rhs));
        slack_sign_of_row.push(match sense {
            Sense::Le => Some(1),
            Sense::Ge => Some(-1),
            Sense::Eq => None,
        });
        sign
    };

    for c in &lp.constraints {
        let (coeffs, constant) = substitute(&c.coeffs);
        let rhs = c.rhs.sub(&constant);
        let sign = push_row(coeffs, c.sense, rhs, &mut rows, &mut slack_sign_of_row);
        orig_rows.push((rows.len() - 1, sign));
    }
    for (v, ub) in ub_rows {
        let mut coeffs = vec![T::zero(); num_std];
        let VarMap::Shifted { k, .. } = &var_maps[v] else { unreachable!() };
        coeffs[*k] = T::one();
        push_row(coeffs, Sense::Le, ub, &mut rows, &mut slack_sign_of_row);
    }

    Standard {
        rows,
        obj,
        obj_offset,
        num_std,
        var_maps,
        orig_rows,
        slack_sign_of_row,
    }
}

struct Tableau<T> {
    /// m rows of length `width`; the rhs sits in the last column.
    a: Vec<Vec<T>>,
    /// Reduced-cost row of length `width` (value in the last column holds
    /// the negated objective of the current basis).
    cost: Vec<T>,
    basis: Vec<usize>,
    width: usize,
    ncols: usize,
    /// Columns barred from entering (artificials after phase 1).
    barred: Vec<bool>,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.a[row][col].clone();
        let inv = T::one().div(&piv);
        for v in self.a[row].iter_mut() {
            *v = v.mul(&inv);
        }
        let prow = self.a[row].clone();
        for r in 0..self.a.len() {
            if r == row {
                continue;
            }
            let f = self.a[r][col].clone();
            if f.sign() != 0 || f.to_f64() != 0.0 {
                for (v, p) in self.a[r].iter_mut().zip(&prow) {
                    *v = v.sub(&f.mul(p));
                }
            }
        }
        let f = self.cost[col].clone();
        if f.sign() != 0 || f.to_f64() != 0.0 {
            for (v, p) in self.cost.iter_mut().zip(&prow) {
                *v = v.sub(&f.mul(p));
            }
        }
        self.basis[row] = col;
    }

    /// Runs the simplex on the current cost row. Returns false on unbounded.
    fn optimize(&mut self) -> Result<bool> {
        let m = self.a.len();
        let bland_after = if T::EXACT { 0 } else { 5 * (m + self.ncols) };
        let max_iters = if T::EXACT {
            usize::MAX
        } else {
            200 * (m + self.ncols) + 20_000
        };
        let mut iter = 0usize;
        loop {
            iter += 1;
            if iter > max_iters {
                return Err(Error::NumericalFailure(format!(
                    "simplex exceeded {max_iters} iterations"
                )));
            }
            let bland = T::EXACT || iter > bland_after;
            // Entering column: reduced cost < 0 (minimization).
            let mut enter: Option<usize> = None;
            if bland {
                for j in 0..self.ncols {
                    if !self.barred[j] && self.cost[j].sign() < 0 {
                        enter = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = T::zero();
                for j in 0..self.ncols {
                    if !self.barred[j] && self.cost[j].sign() < 0 && self.cost[j].lt(&best) {
                        best = self.cost[j].clone();
                        enter = Some(j);
                    }
                }
            }
            let Some(col) = enter else {
                return Ok(true);
            };
            // Ratio test.
            let mut leave: Option<usize> = None;
            let mut best_ratio: Option<T> = None;
            for r in 0..m {
                if self.a[r][col].sign() > 0 {
                    let ratio = self.a[r][self.width - 1].div(&self.a[r][col]);
                    let better = match &best_ratio {
                        None => true,
                        Some(b) => {
                            ratio.lt(b)
                                || (!b.lt(&ratio)
                                    && self.basis[r] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best_ratio = Some(ratio);
                        leave = Some(r);
                    }
                }
            }
            let Some(row) = leave else {
                return Ok(false);
            };
            self.pivot(row, col);
        }
    }
}

fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    let std_form = standardize(lp);
    let m = std_form.rows.len();
    let n = std_form.num_std;

    // Slack columns sit after the structural variables; every row also gets
    // an artificial column at the end (basic only where no +1 slack exists,
    // and the one place dual values can be read back from).
    let num_slack = std_form.slack_sign_of_row.iter().filter(|s| s.is_some()).count();
    let num_art = m;
    let ncols = n + num_slack + num_art;
    let width = ncols + 1;

    let mut a: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    let mut slack_seen = 0usize;
    for (r, (coeffs, rhs)) in std_form.rows.iter().enumerate() {
        let mut row = vec![T::zero(); width];
        row[..n].clone_from_slice(coeffs);
        basis[r] = usize::MAX;
        if let Some(sign) = std_form.slack_sign_of_row[r] {
            let col = n + slack_seen;
            slack_seen += 1;
            if sign > 0 {
                row[col] = T::one();
                basis[r] = col;
            } else {
                row[col] = T::one().neg();
            }
        }
        row[width - 1] = rhs.clone();
        a.push(row);
    }
    let mut art_cols: Vec<usize> = Vec::with_capacity(m);
    for r in 0..m {
        let col = n + num_slack + r;
        art_cols.push(col);
        a[r][col] = T::one();
        if basis[r] == usize::MAX {
            basis[r] = col;
        }
    }

    let mut tab = Tableau {
        a,
        cost: vec![T::zero(); width],
        basis,
        width,
        ncols,
        barred: vec![false; ncols],
    };

    // Phase 1: minimize the sum of artificials.
    let phase1_needed = (0..m).any(|r| tab.basis[r] >= n + num_slack);
    if phase1_needed {
        for col in art_cols.iter() {
            tab.cost[*col] = T::one();
        }
        // Reduce the cost row against the rows with an artificial basis.
        for r in 0..m {
            if tab.basis[r] >= n + num_slack {
                let row = tab.a[r].clone();
                for (v, p) in tab.cost.iter_mut().zip(&row) {
                    *v = v.sub(p);
                }
            }
        }
        let bounded = tab.optimize()?;
        debug_assert!(bounded, "phase 1 is bounded below by 0");
        let infeas = tab.cost[tab.width - 1].neg();
        if infeas.sign() > 0 {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: Vec::new(),
                objective_value: T::zero(),
                duals: Vec::new(),
            });
        }
        // Drive artificials out of the basis; drop rows that are redundant.
        let mut drop_rows = Vec::new();
        for r in 0..m {
            if tab.basis[r] >= n + num_slack {
                let col = (0..n + num_slack).find(|&j| tab.a[r][j].sign() != 0);
                match col {
                    Some(j) => tab.pivot(r, j),
                    None => drop_rows.push(r),
                }
            }
        }
        for &r in drop_rows.iter().rev() {
            tab.a.remove(r);
            tab.basis.remove(r);
        }
        for j in n + num_slack..ncols {
            tab.barred[j] = true;
        }
    }

    // Phase 2: install the real objective (negated: the tableau minimizes).
    let mut cost = vec![T::zero(); width];
    for j in 0..n {
        cost[j] = std_form.obj[j].neg();
    }
    tab.cost = cost;
    for r in 0..tab.a.len() {
        let b = tab.basis[r];
        let f = tab.cost[b].clone();
        if f.sign() != 0 || f.to_f64() != 0.0 {
            let row = tab.a[r].clone();
            for (v, p) in tab.cost.iter_mut().zip(&row) {
                *v = v.sub(&f.mul(p));
            }
        }
    }
    let bounded = tab.optimize()?;
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            objective_value: T::zero(),
            duals: Vec::new(),
        });
    }

    // Extract the standard-form solution.
    let mut x_std = vec![T::zero(); n + num_slack];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n + num_slack {
            x_std[b] = tab.a[r][tab.width - 1].clone();
        }
    }
    let mut x = Vec::with_capacity(lp.objective.len());
    for map in &std_form.var_maps {
        let v = match map {
            VarMap::Shifted { k, lo } => lo.add(&x_std[*k]),
            VarMap::Mirrored { k, hi } => hi.sub(&x_std[*k]),
            VarMap::Free { k, k2 } => x_std[*k].sub(&x_std[*k2]),
        };
        x.push(v);
    }
    // Objective value: the cost row stores -(current min of -obj).
    let objective_value = tab.cost[tab.width - 1].add(&std_form.obj_offset);

    // Dual values from the reduced costs at the artificial columns:
    // for a maximization written as min -c'x, y_i = r_{art_i}.
    let mut duals = Vec::with_capacity(std_form.orig_rows.len());
    for &(row_idx, sign) in &std_form.orig_rows {
        let rc = tab.cost[art_cols[row_idx]].clone();
        duals.push(if sign < 0 { rc.neg() } else { rc });
    }

    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        duals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat_lp(obj: &[i64]) -> LinearProgram<Rat> {
        LinearProgram::new(obj.iter().map(|&v| Rat::from_int(v)).collect())
    }

    #[test]
    fn bounded_single_variable() {
        // max x s.t. x <= 1, x >= 0
        let mut lp = rat_lp(&[1]);
        lp.constrain(vec![Rat::one()], Sense::Le, Rat::one());
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.x, vec![Rat::one()]);
        assert_eq!(sol.objective_value, Rat::one());
    }

    #[test]
    fn unbounded_single_variable() {
        let lp = rat_lp(&[1]);
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Unbounded);
    }

    #[test]
    fn infeasible_program() {
        // max 0 s.t. x <= -1, x >= 0
        let mut lp = rat_lp(&[0]);
        lp.constrain(vec![Rat::one()], Sense::Le, Rat::from_int(-1));
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn equality_and_box_bounds() {
        // max y over y in [-1,1]^2 with y1 + y2 = 0 and y1 - y2 >= 1/2.
        let mut lp = LinearProgram {
            objective: vec![Rat::one(), Rat::zero()],
            constraints: vec![],
            bounds: vec![
                (Some(Rat::from_int(-1)), Some(Rat::one())),
                (Some(Rat::from_int(-1)), Some(Rat::one())),
            ],
        };
        lp.constrain(vec![Rat::one(), Rat::one()], Sense::Eq, Rat::zero());
        lp.constrain(vec![Rat::one(), Rat::from_int(-1)], Sense::Ge, Rat::new(1, 2));
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, Rat::one());
        assert_eq!(sol.x, vec![Rat::one(), Rat::from_int(-1)]);
    }

    #[test]
    fn free_variables() {
        // max -|x| style: max -x1 - x2 with x1 - x2 = -3, both free via pairs.
        let mut lp = LinearProgram {
            objective: vec![Rat::from_int(-1), Rat::from_int(-1)],
            constraints: vec![],
            bounds: vec![(None, None), (None, None)],
        };
        lp.constrain(vec![Rat::one(), Rat::from_int(-1)], Sense::Eq, Rat::from_int(-3));
        lp.constrain(vec![Rat::one(), Rat::one()], Sense::Ge, Rat::from_int(1));
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, Rat::from_int(-1));
    }

    fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram<f64> {
        let nv = rng.gen_range(1..=6);
        let nc = rng.gen_range(1..=6);
        let mut lp = LinearProgram::new((0..nv).map(|_| rng.gen_range(-4..=4) as f64).collect());
        for _ in 0..nc {
            let coeffs: Vec<f64> = (0..nv).map(|_| rng.gen_range(-3..=3) as f64).collect();
            let sense = match rng.gen_range(0..3) {
                0 => Sense::Le,
                1 => Sense::Ge,
                _ => Sense::Eq,
            };
            lp.constrain(coeffs, sense, rng.gen_range(-5..=5) as f64);
        }
        lp
    }

    #[test]
    fn float_and_exact_modes_agree_on_random_programs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut optimal = 0;
        for _ in 0..200 {
            let lp = random_lp(&mut rng);
            let f = solve_lp(&lp, LpMode::Float).unwrap();
            let e = solve_lp(&lp, LpMode::ExactRational).unwrap();
            assert_eq!(f.status, e.status, "status disagreement on {lp:?}");
            if f.status == LpStatus::Optimal {
                optimal += 1;
                let scale = 1.0 + e.objective_value.abs();
                assert!(
                    (f.objective_value - e.objective_value).abs() / scale < 1e-6,
                    "objective disagreement: float {} vs exact {}",
                    f.objective_value,
                    e.objective_value
                );
            }
        }
        assert!(optimal > 20, "want a healthy share of feasible programs");
    }

    #[test]
    fn weak_duality_spot_check() {
        // Programs with x >= 0 and <= constraints: at the optimum,
        // c.x == b.y within tolerance.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        for _ in 0..200 {
            let nv = rng.gen_range(1..=5);
            let nc = rng.gen_range(1..=5);
            let mut lp = LinearProgram::new((0..nv).map(|_| rng.gen_range(0..=4) as f64).collect());
            for _ in 0..nc {
                let coeffs: Vec<f64> = (0..nv).map(|_| rng.gen_range(0..=3) as f64).collect();
                lp.constrain(coeffs, Sense::Le, rng.gen_range(1..=6) as f64);
            }
            let sol = solve_lp(&lp, LpMode::Float).unwrap();
            if sol.status != LpStatus::Optimal {
                continue;
            }
            checked += 1;
            let cx = sol.objective_value;
            let by: f64 = sol
                .duals
                .iter()
                .zip(&lp.constraints)
                .map(|(y, c)| y * c.rhs)
                .sum();
            assert!(
                (cx - by).abs() <= 1e-6 * (1.0 + cx.abs()),
                "duality gap: cx={cx} by={by}"
            );
            // Dual feasibility for <=-form maximization: y >= 0.
            assert!(sol.duals.iter().all(|&y| y >= -1e-7));
        }
        assert!(checked > 50);
    }

    #[test]
    fn exact_mode_handles_degenerate_ties() {
        // Highly degenerate: many redundant constraints through the origin.
        let mut lp = rat_lp(&[1, 1]);
        for k in 1..6 {
            lp.constrain(
                vec![Rat::from_int(k), Rat::from_int(6 - k)],
                Sense::Le,
                Rat::zero(),
            );
        }
        let sol = solve_exact(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.objective_value, Rat::zero());
    }
}
