//! Polytope geometry: facet inequalities of the degree-sequence polytope,
//! interior/boundary decisions, facial-set certificates via exact LPs on the
//! marginal cone, split-graph certificates, and desk-scale facet and vertex
//! enumeration.

use crate::design::{Column, DesignMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{LinearProgram, LpStatus, Sense, solve_exact};
use crate::rat::{dot, to_primitive_integer, Rat};
use crate::table::{DegreeStats, EdgeCountTable};
use num::ToPrimitive;
use rayon::prelude::*;

/// Hard cap for the exhaustive facet-inequality scan (3^n subset pairs).
pub const EXHAUSTIVE_NODE_CAP: usize = 12;

/// One facet-defining inequality of the polytope of degree sequences.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FacetInequality {
    /// `y_i >= 0`
    Lower(usize),
    /// `y_i <= n-1`
    Upper(usize),
    /// `g(S,T,y,n) >= 0` over admissible disjoint pairs
    St { s: Vec<usize>, t: Vec<usize> },
}

impl FacetInequality {
    pub fn describe(&self) -> String {
        let fmt_set = |v: &[usize]| {
            let inner: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", inner.join(","))
        };
        match self {
            FacetInequality::Lower(i) => format!("y{} >= 0", i + 1),
            FacetInequality::Upper(i) => format!("y{} <= n-1", i + 1),
            FacetInequality::St { s, t } => {
                format!("g(S={}, T={}) >= 0", fmt_set(s), fmt_set(t))
            }
        }
    }
}

/// The facet functional `|S|(n-1-|T|) - sum_S y_i + sum_T y_i`.
pub fn g_value(s: &[usize], t: &[usize], y: &[f64], n: usize) -> f64 {
    let mut v = (s.len() * (n - 1 - t.len())) as f64;
    for &i in s {
        v -= y[i];
    }
    for &i in t {
        v += y[i];
    }
    v
}

/// Exact version of [`g_value`].
pub fn g_value_rat(s: &[usize], t: &[usize], y: &[Rat], n: usize) -> Rat {
    let mut v = Rat::from_int((s.len() * (n - 1 - t.len())) as i64);
    for &i in s {
        v -= &y[i];
    }
    for &i in t {
        v += &y[i];
    }
    v
}

/// Enumerates the admissible disjoint pairs `(S,T)`: both nonempty and
/// `|S u T|` in `{2,...,n-3} u {n}`. Calls `f(S, T)` for each.
pub fn for_each_admissible_pair(n: usize, mut f: impl FnMut(&[usize], &[usize])) {
    // Ternary labels: 0 = neither, 1 = S, 2 = T.
    let total = 3usize.pow(n as u32);
    let mut s = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    for code in 0..total {
        s.clear();
        t.clear();
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                1 => s.push(i),
                2 => t.push(i),
                _ => {}
            }
            c /= 3;
        }
        if s.is_empty() || t.is_empty() {
            continue;
        }
        let u = s.len() + t.len();
        let admissible = u == n || (2..=n.saturating_sub(3)).contains(&u);
        if admissible {
            f(&s, &t);
        }
    }
}

/// Co-facial pattern of a facet inequality, as lifted ordered-pair cells.
///
/// A pair pinned to its empty extreme contributes its lexicographic cell, a
/// pair pinned to its full extreme contributes the reversed cell: the bound
/// facets pin every pair at the node, and an (S,T) facet pins pairs inside
/// `S` and from `S` to the complement of `S u T` full, pairs inside `T` and
/// from `T` to the complement empty.
pub fn facet_cofacial_pattern(
    ineq: &FacetInequality,
    n: usize,
) -> std::collections::BTreeSet<(usize, usize)> {
    use std::collections::BTreeSet;
    let mut out = BTreeSet::new();
    match ineq {
        FacetInequality::Lower(i) => {
            for j in 0..n {
                if j != *i {
                    out.insert((usize::min(*i, j), usize::max(*i, j)));
                }
            }
        }
        FacetInequality::Upper(i) => {
            for j in 0..n {
                if j != *i {
                    out.insert((usize::max(*i, j), usize::min(*i, j)));
                }
            }
        }
        FacetInequality::St { s, t } => {
            let in_s = |v: usize| s.contains(&v);
            let in_t = |v: usize| t.contains(&v);
            for (a, b) in crate::table::pairs(n) {
                let full = in_s(a) && in_s(b)
                    || (in_s(a) && !in_t(b) && !in_s(b))
                    || (in_s(b) && !in_t(a) && !in_s(a));
                let empty = in_t(a) && in_t(b)
                    || (in_t(a) && !in_s(b) && !in_t(b))
                    || (in_t(b) && !in_s(a) && !in_t(a));
                if full {
                    out.insert((b, a));
                } else if empty {
                    out.insert((a, b));
                }
            }
        }
    }
    out
}

/// All facet inequalities of the degree polytope on `n` nodes (bounds plus
/// admissible pairs).
pub fn all_facet_inequalities(n: usize) -> Vec<FacetInequality> {
    let mut out = Vec::new();
    for i in 0..n {
        out.push(FacetInequality::Lower(i));
        out.push(FacetInequality::Upper(i));
    }
    for_each_admissible_pair(n, |s, t| {
        out.push(FacetInequality::St { s: s.to_vec(), t: t.to_vec() });
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryVerdict {
    Interior,
    /// Every tight inequality (the observed statistic never lies outside).
    Boundary(Vec<FacetInequality>),
}

impl BoundaryVerdict {
    pub fn is_interior(&self) -> bool {
        matches!(self, BoundaryVerdict::Interior)
    }
}

/// Decides interior/boundary membership of the normalized degree statistic by
/// exhausting the facet-defining inequalities (exact arithmetic).
///
/// For `n = 2` only the bound inequalities are informative: the polytope is a
/// segment and the pair functional vanishes identically. For `n = 3` the
/// admissible pairs are exactly the six facets of the parallelepiped, so the
/// verdict is exact there as well; with one trial per pair every statistic is
/// a vertex, hence boundary.
pub fn mp_boundary_check(stats: &DegreeStats, n: usize) -> Result<BoundaryVerdict> {
    if n < 2 || stats.d_tilde.len() != n {
        return Err(Error::Parameter("need a degree vector on n >= 2 nodes".into()));
    }
    if n > EXHAUSTIVE_NODE_CAP {
        return Err(Error::Size(format!(
            "exhaustive facet scan capped at n = {EXHAUSTIVE_NODE_CAP} (cost grows as 3^n)"
        )));
    }
    let y = &stats.d_tilde;
    let top = Rat::from_int((n - 1) as i64);
    let mut tight = Vec::new();
    for i in 0..n {
        match y[i].signum() {
            0 => tight.push(FacetInequality::Lower(i)),
            s if s < 0 => return Err(Error::Parameter("degree statistic below 0".into())),
            _ => {}
        }
        match (&top - &y[i]).signum() {
            0 => tight.push(FacetInequality::Upper(i)),
            s if s < 0 => return Err(Error::Parameter("degree statistic above n-1".into())),
            _ => {}
        }
    }
    if n >= 3 {
        for_each_admissible_pair(n, |s, t| {
            let g = g_value_rat(s, t, y, n);
            debug_assert!(
                !g.is_negative(),
                "statistic violates a valid inequality; input table is inconsistent"
            );
            if g.is_zero() {
                tight.push(FacetInequality::St { s: s.to_vec(), t: t.to_vec() });
            }
        });
    }
    if tight.is_empty() {
        Ok(BoundaryVerdict::Interior)
    } else {
        Ok(BoundaryVerdict::Boundary(tight))
    }
}

/// Sufficient statistic of the lifted beta table under the reduced marginal
/// cone matrix: trial totals per pair followed by the degree vector.
pub fn beta_lifted_statistic(t: &EdgeCountTable) -> Vec<i64> {
    let mut out: Vec<i64> = t.trials_vec().iter().map(|&v| v as i64).collect();
    out.extend(crate::table::degree_stats(t).d.iter());
    out
}

#[derive(Clone, Debug)]
pub struct InteriorCheck {
    /// Optimal margin: the statistic is interior iff this is positive.
    pub s_star: Rat,
    /// A feasible preimage achieving the margin.
    pub witness: Vec<Rat>,
}

impl InteriorCheck {
    pub fn is_interior(&self) -> bool {
        self.s_star.is_positive()
    }
}

/// Relative-interior test of `t` in the cone spanned by the design columns:
/// maximize `s` subject to `C x = t`, `x >= s`, `s >= 0`. The statistic lies
/// in the relative interior iff the optimum is strictly positive.
///
/// Solved in exact rational arithmetic; substituting `x = s + u` keeps the
/// program in nonnegative variables with only the equality rows.
pub fn interior_lp_check(t: &[i64], design: &DesignMatrix) -> Result<InteriorCheck> {
    if t.len() != design.rows {
        return Err(Error::Parameter("statistic length does not match design".into()));
    }
    let ncols = design.cols;
    // Variables: u_0..u_{ncols-1}, then s.
    let mut objective = vec![Rat::zero(); ncols + 1];
    objective[ncols] = Rat::one();
    let mut lp = LinearProgram::new(objective);
    for r in 0..design.rows {
        let mut coeffs: Vec<Rat> = design.row(r).iter().map(|&v| Rat::from_int(v)).collect();
        let row_sum: i64 = design.row(r).iter().sum();
        coeffs.push(Rat::from_int(row_sum));
        lp.constrain(coeffs, Sense::Eq, Rat::from_int(t[r]));
    }
    let sol = solve_exact(&lp);
    match sol.status {
        LpStatus::Optimal => {
            let s = sol.x[ncols].clone();
            let witness = (0..ncols).map(|c| &sol.x[c] + &s).collect();
            Ok(InteriorCheck { s_star: s, witness })
        }
        LpStatus::Infeasible => Err(Error::LpFailure(
            "statistic is not a nonnegative combination of the design columns".into(),
        )),
        LpStatus::Unbounded => Err(Error::LpFailure("interior program unbounded".into())),
    }
}

/// Facial set of a sufficient statistic on the marginal cone.
#[derive(Clone, Debug)]
pub struct FacialSet {
    /// Column indices whose cells remain estimable.
    pub facial: Vec<usize>,
    /// Complement: cells pinned to their observed extremes.
    pub cofacial: Vec<usize>,
    /// Column labels of the underlying design, for interpretation.
    pub columns: Vec<Column>,
    /// Certificate `y` with `<y, c> = 0` on facial columns and `< 0` on
    /// co-facial columns (all zero for an interior statistic).
    pub certificate: Vec<Rat>,
    /// True when the face is proper (some co-facial cell exists).
    pub is_proper: bool,
}

impl FacialSet {
    /// Co-facial cells as 0-based ordered pairs, for pair-indexed designs.
    pub fn cofacial_pairs(&self) -> Vec<(usize, usize)> {
        self.cofacial
            .iter()
            .filter_map(|&c| match self.columns[c] {
                Column::OrderedPair(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Verifies the sign pattern of the certificate exactly.
    pub fn verify(&self, design: &DesignMatrix) -> bool {
        for &c in &self.facial {
            let col: Vec<Rat> = design.column_vec(c).iter().map(|&v| Rat::from_int(v)).collect();
            if !dot(&self.certificate, &col).is_zero() {
                return false;
            }
        }
        for &c in &self.cofacial {
            let col: Vec<Rat> = design.column_vec(c).iter().map(|&v| Rat::from_int(v)).collect();
            if !dot(&self.certificate, &col).is_negative() {
                return false;
            }
        }
        true
    }
}

/// Identifies the facial set of `t` on `cone(design)` via one exact LP per
/// candidate column: maximize `<c, y>` subject to `y't = 0`, `C'y >= 0`,
/// `-1 <= y <= 1`. The column is co-facial exactly when the optimum is
/// strictly positive.
pub fn facial_set(t: &[i64], design: &DesignMatrix) -> Result<FacialSet> {
    let interior = interior_lp_check(t, design)?;
    let ncols = design.cols;
    if interior.is_interior() {
        return Ok(FacialSet {
            facial: (0..ncols).collect(),
            cofacial: Vec::new(),
            columns: design.columns.clone(),
            certificate: vec![Rat::zero(); design.rows],
            is_proper: false,
        });
    }
    // Any column carrying positive mass in some preimage is facial: the
    // constraints y't = 0, C'y >= 0 force <y, c> = 0 there.
    let skip: Vec<bool> = interior.witness.iter().map(Rat::is_positive).collect();

    let solve_col = |c0: usize| -> (usize, Option<Vec<Rat>>) {
        let mut lp = LinearProgram {
            objective: design.column_vec(c0).iter().map(|&v| Rat::from_int(v)).collect(),
            constraints: Vec::new(),
            bounds: vec![(Some(Rat::from_int(-1)), Some(Rat::from_int(1))); design.rows],
        };
        lp.constrain(
            t.iter().map(|&v| Rat::from_int(v)).collect(),
            Sense::Eq,
            Rat::zero(),
        );
        for c in 0..design.cols {
            lp.constrain(
                design.column_vec(c).iter().map(|&v| Rat::from_int(v)).collect(),
                Sense::Ge,
                Rat::zero(),
            );
        }
        let sol = solve_exact(&lp);
        debug_assert_eq!(sol.status, LpStatus::Optimal, "box-bounded program");
        if sol.objective_value.is_positive() {
            (c0, Some(sol.x))
        } else {
            (c0, None)
        }
    };

    let candidates: Vec<usize> = (0..ncols).filter(|&c| !skip[c]).collect();
    let results: Vec<(usize, Option<Vec<Rat>>)> =
        candidates.par_iter().map(|&c| solve_col(c)).collect();

    let mut cofacial = Vec::new();
    let mut aggregate = vec![Rat::zero(); design.rows];
    for (c, y) in results {
        if let Some(y) = y {
            cofacial.push(c);
            for (acc, v) in aggregate.iter_mut().zip(&y) {
                *acc += v;
            }
        }
    }
    cofacial.sort_unstable();
    let facial: Vec<usize> = (0..ncols).filter(|c| !cofacial.contains(c)).collect();
    // Flip to the reporting convention: zero on facial, negative off.
    let certificate: Vec<Rat> = aggregate.iter().map(|v| -v).collect();
    let fs = FacialSet {
        facial,
        cofacial,
        columns: design.columns.clone(),
        certificate,
        is_proper: true,
    };
    if !fs.verify(design) {
        return Err(Error::LpFailure("facial-set certificate failed verification".into()));
    }
    Ok(fs)
}

/// Split-graph style certificate of nonexistence for simple graphs.
#[derive(Clone, Debug, Default)]
pub struct SplitCertificate {
    /// Nodes with degree 0 or n-1 (degenerate on their own).
    pub degenerate_nodes: Vec<usize>,
    /// All pairs (S_clique, T_stable) satisfying the boundary conditions.
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SplitCertificate {
    pub fn any(&self) -> bool {
        !self.degenerate_nodes.is_empty() || !self.pairs.is_empty()
    }
}

/// Searches for disjoint nonempty `S`, `T` such that `S` is a clique, `T` is
/// stable, every vertex of `S` is adjacent to everything outside `S u T`,
/// and no vertex of `T` is adjacent to anything outside `S u T`. Any such
/// pair puts the degree sequence on the boundary. Requires one trial per
/// pair; exhaustive over all `3^n` labelings for `n <= 12`.
pub fn split_certificate(t: &EdgeCountTable) -> Result<SplitCertificate> {
    if !t.is_simple() {
        return Err(Error::Parameter("split certificates require one trial per pair".into()));
    }
    let n = t.n();
    if n > EXHAUSTIVE_NODE_CAP {
        return Err(Error::Size(format!(
            "split-certificate search capped at n = {EXHAUSTIVE_NODE_CAP}"
        )));
    }
    let adj = |i: usize, j: usize| -> bool {
        if i == j {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        t.count(a, b) == 1
    };
    let stats = crate::table::degree_stats(t);
    let degenerate_nodes: Vec<usize> = (0..n)
        .filter(|&i| stats.d[i] == 0 || stats.d[i] == (n - 1) as i64)
        .collect();

    let mut pairs = Vec::new();
    let total = 3usize.pow(n as u32);
    let mut s = Vec::with_capacity(n);
    let mut tt = Vec::with_capacity(n);
    let mut rest = Vec::with_capacity(n);
    'outer: for code in 0..total {
        s.clear();
        tt.clear();
        rest.clear();
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                1 => s.push(i),
                2 => tt.push(i),
                _ => rest.push(i),
            }
            c /= 3;
        }
        if s.is_empty() || tt.is_empty() {
            continue;
        }
        for (a, &u) in s.iter().enumerate() {
            for &v in &s[a + 1..] {
                if !adj(u, v) {
                    continue 'outer;
                }
            }
        }
        for (a, &u) in tt.iter().enumerate() {
            for &v in &tt[a + 1..] {
                if adj(u, v) {
                    continue 'outer;
                }
            }
        }
        for &u in &s {
            for &r in &rest {
                if !adj(u, r) {
                    continue 'outer;
                }
            }
        }
        for &u in &tt {
            for &r in &rest {
                if adj(u, r) {
                    continue 'outer;
                }
            }
        }
        pairs.push((s.clone(), tt.clone()));
    }
    Ok(SplitCertificate { degenerate_nodes, pairs })
}

/// One facet of a polyhedral cone: inner normal plus the tight generators.
#[derive(Clone, Debug)]
pub struct Facet {
    /// Primitive integer inner normal (nonnegative on every generator).
    pub normal: Vec<Rat>,
    /// Indices of generators lying on the facet.
    pub tight: Vec<usize>,
}

/// Generators plus facet description of a cone or polytope.
#[derive(Clone, Debug)]
pub struct PolyhedralDescription {
    pub generators: Vec<Vec<Rat>>,
    pub facets: Vec<Facet>,
    pub dim: usize,
}

impl PolyhedralDescription {
    /// Checks that every generator satisfies every facet inequality and that
    /// each facet is supporting with enough independent generators on it.
    pub fn validate(&self) -> Result<()> {
        for f in &self.facets {
            for (gi, g) in self.generators.iter().enumerate() {
                let v = dot(&f.normal, g);
                if v.is_negative() {
                    return Err(Error::NumericalFailure(format!(
                        "generator {gi} violates a facet inequality"
                    )));
                }
                let tight = f.tight.contains(&gi);
                if tight != v.is_zero() {
                    return Err(Error::NumericalFailure(format!(
                        "tight set of a facet is wrong at generator {gi}"
                    )));
                }
            }
            let tight_vecs: Vec<Vec<Rat>> =
                f.tight.iter().map(|&i| self.generators[i].clone()).collect();
            if linalg::rank(&tight_vecs) != self.dim - 1 {
                return Err(Error::NumericalFailure(
                    "facet does not span dim-1 dimensions".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Hard caps for the double-description enumeration.
pub const DD_MAX_GENERATORS: usize = 64;
pub const DD_MAX_DIM: usize = 32;

struct Ray {
    v: Vec<Rat>,
    /// Bit `j` set iff inequality `j` (a generator) is tight, over the
    /// inequalities processed so far.
    tight: u64,
}

/// Facet enumeration of `cone(generators)` by the double description method
/// run on the polar cone.
///
/// Insertion follows the input (lexicographic) generator order. Candidate
/// adjacent ray pairs pass a combinatorial filter and are then confirmed by
/// an exact rank computation on their common tight set.
pub fn enumerate_facets(generators: &[Vec<Rat>]) -> Result<PolyhedralDescription> {
    if generators.is_empty() {
        return Err(Error::Parameter("no generators".into()));
    }
    let ambient = generators[0].len();
    if generators.len() > DD_MAX_GENERATORS {
        return Err(Error::Size(format!(
            "facet enumeration capped at {DD_MAX_GENERATORS} generators"
        )));
    }
    if ambient > DD_MAX_DIM {
        return Err(Error::Size(format!("facet enumeration capped at ambient dimension {DD_MAX_DIM}")));
    }

    // Deduplicate parallel generators (primitive form).
    let mut unique: Vec<Vec<Rat>> = Vec::new();
    let mut rep_of: Vec<Option<usize>> = Vec::new();
    for g in generators {
        if g.iter().all(Rat::is_zero) {
            rep_of.push(None);
            continue;
        }
        let prim: Vec<Rat> = to_primitive_integer(g)
            .into_iter()
            .map(|b| {
                let v = b.to_i128().expect("desk-scale normals fit i128");
                Rat::from_i128(v)
            })
            .collect();
        if let Some(pos) = unique.iter().position(|u| *u == prim) {
            rep_of.push(Some(pos));
        } else {
            unique.push(prim);
            rep_of.push(Some(unique.len() - 1));
        }
    }
    if unique.is_empty() {
        return Err(Error::Parameter("all generators are zero".into()));
    }

    // Coordinates within the span: pick independent pivot rows of a basis of
    // independent generators and express everything there.
    let basis_idx = linalg::independent_subset(&unique);
    let r = basis_idx.len();
    let basis: Vec<Vec<Rat>> = basis_idx.iter().map(|&i| unique[i].clone()).collect();
    // Rows (coordinates of the ambient space) that make the basis square.
    let transposed: Vec<Vec<Rat>> = (0..ambient)
        .map(|row| basis.iter().map(|b| b[row].clone()).collect())
        .collect();
    let pivot_rows = linalg::independent_subset(&transposed);
    debug_assert_eq!(pivot_rows.len(), r);
    let bsq: Vec<Vec<Rat>> = pivot_rows
        .iter()
        .map(|&row| basis.iter().map(|b| b[row].clone()).collect())
        .collect();
    let bsq_inv = linalg::invert(&bsq).expect("basis restricted to pivot rows is invertible");
    let coords = |g: &[Rat]| -> Vec<Rat> {
        let restricted: Vec<Rat> = pivot_rows.iter().map(|&row| g[row].clone()).collect();
        (0..r).map(|i| dot(&bsq_inv[i], &restricted)).collect()
    };
    let ineqs: Vec<Vec<Rat>> = unique.iter().map(|g| coords(g)).collect();
    let m = ineqs.len();

    // Initial simplicial cone from r independent inequalities: the rays are
    // the columns of the inverse of their matrix.
    let init = linalg::independent_subset(&ineqs);
    debug_assert_eq!(init.len(), r);
    let init_mat: Vec<Vec<Rat>> = init.iter().map(|&i| ineqs[i].clone()).collect();
    let init_inv = linalg::invert(&init_mat).expect("independent set is invertible");
    let tight_of = |v: &[Rat], processed: &[usize]| -> u64 {
        let mut bits = 0u64;
        for &j in processed {
            if dot(&ineqs[j], v).is_zero() {
                bits |= 1 << j;
            }
        }
        bits
    };

    let primitive = |v: &[Rat]| -> Vec<Rat> {
        to_primitive_integer(v)
            .into_iter()
            .map(|b| Rat::from_i128(b.to_i128().expect("desk-scale rays fit i128")))
            .collect()
    };

    let mut processed: Vec<usize> = init.clone();
    let mut rays: Vec<Ray> = (0..r)
        .map(|col| {
            let v: Vec<Rat> = (0..r).map(|row| init_inv[row][col].clone()).collect();
            let v = primitive(&v);
            let tight = tight_of(&v, &processed);
            Ray { v, tight }
        })
        .collect();

    for k in 0..m {
        if init.contains(&k) {
            continue;
        }
        let values: Vec<Rat> = rays.iter().map(|ray| dot(&ineqs[k], &ray.v)).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, v) in values.iter().enumerate() {
            match v.signum() {
                1 => plus.push(i),
                -1 => minus.push(i),
                _ => {}
            }
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].tight & rays[q].tight;
                // Necessary condition on the tight-set size.
                if (common.count_ones() as usize) < r.saturating_sub(2) {
                    continue;
                }
                // Combinatorial adjacency: no third ray dominates the pair.
                let dominated = rays.iter().enumerate().any(|(i, other)| {
                    i != p && i != q && (common & !other.tight) == 0
                });
                if dominated {
                    continue;
                }
                // Exact confirmation: the common tight inequalities span r-2.
                let tight_vecs: Vec<Vec<Rat>> = processed
                    .iter()
                    .filter(|&&j| common & (1 << j) != 0)
                    .map(|&j| ineqs[j].clone())
                    .collect();
                if linalg::rank(&tight_vecs) != r - 2 {
                    continue;
                }
                // Combine: <a_k, w> = 0 with w inside the cone.
                let vp = values[p].clone();
                let vq = values[q].clone();
                let w: Vec<Rat> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(xp, xq)| &(&vp * xq) - &(&vq * xp))
                    .collect();
                let w = primitive(&w);
                new_rays.push(Ray { v: w, tight: 0 });
            }
        }
        processed.push(k);
        rays = rays
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !minus.contains(i))
            .map(|(_, ray)| ray)
            .chain(new_rays)
            .collect();
        for ray in rays.iter_mut() {
            ray.tight = tight_of(&ray.v, &processed);
        }
    }

    // Rays of the polar are the facet normals. Map back to ambient space and
    // record tight generators (including duplicates of the input).
    let mut facets = Vec::with_capacity(rays.len());
    for ray in &rays {
        let scattered_restricted: Vec<Rat> = (0..r)
            .map(|i| {
                // normal restricted to pivot rows = B_sq^{-T} y'
                let col: Vec<Rat> = (0..r).map(|row| bsq_inv[row][i].clone()).collect();
                dot(&col, &ray.v)
            })
            .collect();
        let mut normal = vec![Rat::zero(); ambient];
        for (slot, &row) in pivot_rows.iter().enumerate() {
            normal[row] = scattered_restricted[slot].clone();
        }
        let normal = primitive(&normal);
        let tight: Vec<usize> = generators
            .iter()
            .enumerate()
            .filter(|(_, g)| dot(&normal, g).is_zero())
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet { normal, tight });
    }
    facets.sort_by(|a, b| a.tight.cmp(&b.tight));

    let desc = PolyhedralDescription {
        generators: generators.to_vec(),
        facets,
        dim: r,
    };
    desc.validate()?;
    Ok(desc)
}

/// Cap on candidate points for Minkowski-sum vertex enumeration.
pub const MINKOWSKI_CANDIDATE_CAP: usize = 1 << 20;

/// Vertices of the Minkowski sum of point groups: every per-group choice is
/// summed, duplicates merged, and each candidate is kept iff an exact
/// feasibility LP certifies it is not a convex combination of the others.
pub fn enumerate_vertices_minkowski(groups: &[Vec<Vec<Rat>>]) -> Result<PolyhedralDescription> {
    if groups.is_empty() {
        return Err(Error::Parameter("no groups".into()));
    }
    let ambient = groups[0][0].len();
    let mut total: usize = 1;
    for g in groups {
        if g.is_empty() {
            return Err(Error::Parameter("empty group".into()));
        }
        total = total.saturating_mul(g.len());
        if total > MINKOWSKI_CANDIDATE_CAP {
            return Err(Error::Size(format!(
                "candidate count exceeds {MINKOWSKI_CANDIDATE_CAP}"
            )));
        }
    }

    // All endpoint combinations, deduplicated.
    let mut points: Vec<Vec<Rat>> = vec![vec![Rat::zero(); ambient]];
    for g in groups {
        let mut next = Vec::with_capacity(points.len() * g.len());
        for p in &points {
            for choice in g {
                let s: Vec<Rat> = p.iter().zip(choice).map(|(a, b)| a + b).collect();
                next.push(s);
            }
        }
        points = next;
    }
    points.sort();
    points.dedup();

    let is_vertex = |idx: usize| -> bool {
        let p = &points[idx];
        let others: Vec<usize> = (0..points.len()).filter(|&i| i != idx).collect();
        if others.is_empty() {
            return true;
        }
        // Feasibility: sum lambda_q q = p, sum lambda = 1, lambda >= 0.
        let mut lp = LinearProgram::new(vec![Rat::zero(); others.len()]);
        for row in 0..ambient {
            let coeffs: Vec<Rat> = others.iter().map(|&q| points[q][row].clone()).collect();
            lp.constrain(coeffs, Sense::Eq, p[row].clone());
        }
        lp.constrain(vec![Rat::one(); others.len()], Sense::Eq, Rat::one());
        solve_exact(&lp).status == LpStatus::Infeasible
    };

    let flags: Vec<bool> = (0..points.len()).into_par_iter().map(is_vertex).collect();
    let vertices: Vec<Vec<Rat>> = points
        .into_iter()
        .zip(flags)
        .filter(|(_, keep)| *keep)
        .map(|(p, _)| p)
        .collect();

    // Affine dimension of the vertex set.
    let dim = if vertices.len() <= 1 {
        0
    } else {
        let base = vertices[0].clone();
        let diffs: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        linalg::rank(&diffs)
    };

    Ok(PolyhedralDescription {
        generators: vertices,
        facets: Vec::new(),
        dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{beta_design, cayley_design};
    use crate::table::{degree_stats, parse_edge_table_csv, TrialsSpec};

    const BOUNDARY_4_CSV: &str = "x,0,1,2\n3,x,2,1\n2,1,x,3\n1,2,0,x\n";
    const INTERIOR_4_CSV: &str = "x,2,1,2\n1,x,0,1\n2,3,x,3\n1,2,0,x\n";

    fn rat_vec(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn g_value_basics() {
        assert_eq!(g_value(&[0], &[1], &[3.0, 3.0, 3.0, 3.0], 4), 2.0);
        // Statistic (1,1,2,2) is tight at S={3,4}, T={1,2}.
        let y = [1.0, 1.0, 2.0, 2.0];
        assert_eq!(g_value(&[2, 3], &[0, 1], &y, 4), 0.0);
        assert_eq!(g_value(&[0, 1], &[2, 3], &y, 4), 4.0);
    }

    #[test]
    fn g_value_on_five_node_example() {
        // Degrees of the 5-node graph with edges 12,23,24,34,45.
        let d = [1.0, 3.0, 2.0, 3.0, 1.0];
        assert_eq!(g_value(&[1, 2, 3], &[0, 4], &d, 5), 0.0);
    }

    #[test]
    fn admissible_pair_counts_match_facet_formula() {
        // Facets of the degree polytope: 2n bounds + |admissible pairs|:
        // 22, 60, 224, 882 for n = 4..7.
        let expect = [22usize, 60, 224, 882];
        for (k, n) in (4..8).enumerate() {
            let mut count = 0usize;
            for_each_admissible_pair(n, |_, _| count += 1);
            assert_eq!(count + 2 * n, expect[k], "n = {n}");
        }
    }

    #[test]
    fn boundary_check_on_reference_tables() {
        let t = parse_edge_table_csv(BOUNDARY_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let v = mp_boundary_check(&degree_stats(&t), 4).unwrap();
        let BoundaryVerdict::Boundary(tight) = v else {
            panic!("expected boundary");
        };
        assert_eq!(
            tight,
            vec![FacetInequality::St { s: vec![2, 3], t: vec![0, 1] }]
        );

        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        assert!(mp_boundary_check(&degree_stats(&t), 4).unwrap().is_interior());
    }

    #[test]
    fn complete_graph_is_boundary_at_upper_bounds() {
        let t = EdgeCountTable::new(4, vec![1; 6], vec![1; 6]).unwrap();
        let v = mp_boundary_check(&degree_stats(&t), 4).unwrap();
        let BoundaryVerdict::Boundary(tight) = v else { panic!() };
        for i in 0..4 {
            assert!(tight.contains(&FacetInequality::Upper(i)));
        }
    }

    #[test]
    fn every_three_node_graph_is_boundary() {
        for code in 0..8u64 {
            let t = EdgeCountTable::simple_graph_from_code(3, code);
            let v = mp_boundary_check(&degree_stats(&t), 3).unwrap();
            assert!(!v.is_interior(), "graph code {code}");
        }
        // But a balanced fractional table on 3 nodes is interior.
        let t = EdgeCountTable::new(3, vec![2; 3], vec![1; 3]).unwrap();
        assert!(mp_boundary_check(&degree_stats(&t), 3).unwrap().is_interior());
    }

    #[test]
    fn interior_lp_matches_boundary_check_on_reference_tables() {
        let c = cayley_design(4, true);
        let t = parse_edge_table_csv(BOUNDARY_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let chk = interior_lp_check(&beta_lifted_statistic(&t), &c).unwrap();
        assert!(!chk.is_interior());
        assert!(chk.s_star.is_zero());

        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let chk = interior_lp_check(&beta_lifted_statistic(&t), &c).unwrap();
        assert!(chk.is_interior());
    }

    #[test]
    fn balanced_table_margin_is_half_the_trials() {
        // All counts N/2: the barycenter; the margin is exactly N/2.
        let t = EdgeCountTable::new(4, vec![4; 6], vec![2; 6]).unwrap();
        let c = cayley_design(4, true);
        let chk = interior_lp_check(&beta_lifted_statistic(&t), &c).unwrap();
        assert_eq!(chk.s_star, Rat::from_int(2));
    }

    #[test]
    fn facial_set_of_boundary_reference_table() {
        let c = cayley_design(4, true);
        let t = parse_edge_table_csv(BOUNDARY_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let fs = facial_set(&beta_lifted_statistic(&t), &c).unwrap();
        assert!(fs.is_proper);
        assert_eq!(fs.cofacial_pairs(), vec![(0, 1), (3, 2)]);
        assert!(fs.verify(&c));
    }

    #[test]
    fn facial_set_is_everything_for_interior_table() {
        let c = cayley_design(4, true);
        let t = parse_edge_table_csv(INTERIOR_4_CSV, &TrialsSpec::Constant(3)).unwrap();
        let fs = facial_set(&beta_lifted_statistic(&t), &c).unwrap();
        assert!(!fs.is_proper);
        assert_eq!(fs.facial.len(), 12);
    }

    #[test]
    fn facial_set_of_isolated_node_pattern() {
        // Node 2 forced empty, everything else balanced: the co-facial set is
        // exactly the three cells naming node 2 first in lexicographic pairs.
        let src = "x,0,1,1\n3,x,0,0\n2,3,x,1\n2,3,2,x\n";
        let t = parse_edge_table_csv(src, &TrialsSpec::Constant(3)).unwrap();
        let c = cayley_design(4, true);
        let fs = facial_set(&beta_lifted_statistic(&t), &c).unwrap();
        assert_eq!(fs.cofacial_pairs(), vec![(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn split_certificates_on_reference_graphs() {
        // 4-node graph with edges 13, 24, 34: S = {3,4}, T = {1,2}.
        let g4 = EdgeCountTable::simple_graph(4, &[(0, 2), (1, 3), (2, 3)]).unwrap();
        let c = split_certificate(&g4).unwrap();
        assert!(c.degenerate_nodes.is_empty());
        assert!(c.pairs.contains(&(vec![2, 3], vec![0, 1])));

        // 5-node graph with edges 12,23,24,34,45: S = {2,3,4}, T = {1,5}.
        let g5 = EdgeCountTable::simple_graph(5, &[(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let c = split_certificate(&g5).unwrap();
        assert!(c.pairs.contains(&(vec![1, 2, 3], vec![0, 4])));

        // 6-node graph: S = {1,2,6}, T = {3,4,5}.
        let g6 = EdgeCountTable::simple_graph(
            6,
            &[(0, 1), (0, 3), (0, 4), (0, 5), (1, 2), (1, 5), (2, 5)],
        )
        .unwrap();
        let c = split_certificate(&g6).unwrap();
        assert!(c.pairs.contains(&(vec![0, 1, 5], vec![2, 3, 4])), "{:?}", c.pairs);
    }

    #[test]
    fn path_graph_split_certificate_agrees_with_boundary_check() {
        for n in 4..7 {
            let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            let g = EdgeCountTable::simple_graph(n, &edges).unwrap();
            let cert = split_certificate(&g).unwrap();
            let verdict = mp_boundary_check(&degree_stats(&g), n).unwrap();
            assert_eq!(cert.any(), !verdict.is_interior(), "path on {n} nodes");
        }
    }

    #[test]
    fn simplicial_cone_facets() {
        // The 3-dim cone over the triangle incidence vectors is simplicial.
        let gens = beta_design(3).columns_as_rat();
        let desc = enumerate_facets(&gens).unwrap();
        assert_eq!(desc.dim, 3);
        assert_eq!(desc.facets.len(), 3);
    }

    #[test]
    fn octant_facets() {
        let gens = vec![rat_vec(&[1, 0, 0]), rat_vec(&[0, 1, 0]), rat_vec(&[0, 0, 1])];
        let desc = enumerate_facets(&gens).unwrap();
        assert_eq!(desc.facets.len(), 3);
        desc.validate().unwrap();
    }

    #[test]
    fn square_cone_has_four_facets() {
        // Cone over a square: 4 generators, 4 facets, plus an interior ray
        // that should lie on no facet.
        let gens = vec![
            rat_vec(&[1, 1, 1]),
            rat_vec(&[-1, 1, 1]),
            rat_vec(&[-1, -1, 1]),
            rat_vec(&[1, -1, 1]),
            rat_vec(&[0, 0, 2]),
        ];
        let desc = enumerate_facets(&gens).unwrap();
        assert_eq!(desc.facets.len(), 4);
        for f in &desc.facets {
            assert!(!f.tight.contains(&4));
            assert_eq!(f.tight.len(), 2);
        }
    }

    #[test]
    fn reduced_marginal_cone_facet_count_n4() {
        let c = cayley_design(4, true);
        let desc = enumerate_facets(&c.columns_as_rat()).unwrap();
        assert_eq!(desc.dim, 10);
        assert_eq!(desc.facets.len(), 28);
    }

    #[test]
    fn segment_and_parallelepiped_vertices() {
        // Two-node polytope: a segment with 2 vertices.
        let a2 = beta_design(2).columns_as_rat();
        let groups: Vec<Vec<Vec<Rat>>> = a2
            .iter()
            .map(|col| vec![vec![Rat::zero(); col.len()], col.clone()])
            .collect();
        let desc = enumerate_vertices_minkowski(&groups).unwrap();
        assert_eq!(desc.generators.len(), 2);
        assert_eq!(desc.dim, 1);

        // Three-node degree polytope: all 8 endpoint combinations are
        // vertices (a parallelepiped).
        let a3 = beta_design(3).columns_as_rat();
        let groups: Vec<Vec<Vec<Rat>>> = a3
            .iter()
            .map(|col| vec![vec![Rat::zero(); col.len()], col.clone()])
            .collect();
        let desc = enumerate_vertices_minkowski(&groups).unwrap();
        assert_eq!(desc.generators.len(), 8);
        assert_eq!(desc.dim, 3);
    }
}
