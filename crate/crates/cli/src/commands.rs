//! Command implementations. Each returns the process exit code.

use crate::input;
use crate::{Command, DesignKind, Model};
use degseq_core::asym::{check_theorem4, expected_degrees, mc_existence_probability};
use degseq_core::design::{
    beta_design, bt_design, cayley_design, p1_design, poisson_design, rasch_design, Column,
    DesignMatrix, P1Variant,
};
use degseq_core::estimation::{extended_mle, fit_bradley_terry, fit_mle, FitOptions};
use degseq_core::geometry::{
    beta_lifted_statistic, enumerate_facets, enumerate_vertices_minkowski, facial_set,
    FacialSet, PolyhedralDescription,
};
use degseq_core::lp::{LinearProgram, LpMode, LpStatus, Sense};
use degseq_core::rat::Rat;
use degseq_core::table::{generate_graph, num_pairs, pairs, BetaParams, EdgeCountTable};
use degseq_core::zoo;
use degseq_core::{Error, Result};
use serde_json::{json, Value};

pub fn run(cmd: &Command, pretty: bool) -> Result<i32> {
    match cmd {
        Command::Check { model, trials, k, float, exact, file, format } => {
            if *float && *exact {
                return Err(Error::Parameter("choose one of --float / --exact".into()));
            }
            check(*model, *trials, *k, *float, file, format, pretty)
        }
        Command::Fit { model, trials, extended, tol, file, format } => {
            fit(*model, *trials, *extended, *tol, file, format, pretty)
        }
        Command::FacialSet { model, trials, k, file, format } => {
            facial(*model, *trials, *k, file, format, pretty)
        }
        Command::Design { model, n, k, l } => design(*model, *n, *k, *l),
        Command::Enumerate { facets, vertices, model, n, detail } => {
            enumerate(*facets, *vertices, *model, *n, *detail, pretty)
        }
        Command::Survey { model, n } => survey(*model, *n, pretty),
        Command::Simulate { n, trials, beta, reps, seed, c, big_c, verdicts } => {
            simulate(*n, *trials, beta, *reps, *seed, *c, *big_c, verdicts, pretty)
        }
        Command::Generate { n, trials, beta, seed } => generate(*n, *trials, beta, *seed),
    }
}

fn emit(value: &Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}

fn p1_variant(model: Model) -> Option<P1Variant> {
    match model {
        Model::P1Zero => Some(P1Variant::Zero),
        Model::P1Const => Some(P1Variant::Constant),
        Model::P1Edge => Some(P1Variant::EdgeDependent),
        _ => None,
    }
}

fn model_name(model: Model) -> &'static str {
    match model {
        Model::Beta => "beta",
        Model::Rasch => "rasch",
        Model::Bt => "bt",
        Model::Poisson => "poisson",
        Model::PoissonUndirected => "poisson-undirected",
        Model::P1Zero => "p1-zero",
        Model::P1Const => "p1-constant",
        Model::P1Edge => "p1-edge-dependent",
    }
}

/// Design matrix and sufficient statistic of the observed data, for the
/// models whose existence check is the cone LP.
fn cone_problem(
    model: Model,
    trials: Option<u64>,
    k: Option<usize>,
    file: &str,
    format: &Option<String>,
) -> Result<(DesignMatrix, Vec<i64>)> {
    match model {
        Model::Beta => {
            let t = input::load_edge_table(file, format, trials)?;
            Ok((cayley_design(t.n(), true), beta_lifted_statistic(&t)))
        }
        Model::Rasch => {
            let t = input::load_rasch_table(file, k)?;
            Ok((rasch_design(t.k(), t.l()), zoo::rasch_statistic(&t)))
        }
        Model::Bt => {
            let t = input::load_directed_table(file)?;
            Ok((bt_design(t.n()), zoo::bt_statistic(&t)))
        }
        Model::Poisson => {
            let t = input::load_directed_table(file)?;
            let d = poisson_design(t.n());
            let stat = d.apply(&t.interleaved_counts());
            Ok((d, stat))
        }
        Model::PoissonUndirected => {
            let src = input::read_source(file)?;
            let (n, counts) = degseq_core::table::parse_symmetric_counts_csv(&src)?;
            let d = beta_design(n);
            let stat = d.apply(&counts);
            Ok((d, stat))
        }
        Model::P1Zero | Model::P1Const | Model::P1Edge => {
            let t = input::load_dyad_table(file)?;
            let d = p1_design(t.n(), p1_variant(model).unwrap());
            let stat = zoo::p1_statistic(&t, &d);
            Ok((d, stat))
        }
    }
}

fn cofacial_json(fs: &FacialSet) -> Value {
    let mut pairs_out = Vec::new();
    let mut dyads_out = Vec::new();
    for &c in &fs.cofacial {
        match fs.columns[c] {
            Column::OrderedPair(i, j) | Column::Pair(i, j) => {
                pairs_out.push(json!([(i + 1).to_string(), (j + 1).to_string()]));
            }
            Column::DyadState(i, j, s) => {
                let (a, b) = degseq_core::table::DYAD_STATES[s as usize];
                dyads_out.push(json!({
                    "pair": [(i + 1).to_string(), (j + 1).to_string()],
                    "state": format!("{a}{b}"),
                }));
            }
        }
    }
    if dyads_out.is_empty() {
        Value::Array(pairs_out)
    } else {
        Value::Array(dyads_out)
    }
}

fn certificate_json(fs: &FacialSet) -> Value {
    Value::Array(fs.certificate.iter().map(|r| json!(r.to_string())).collect())
}

/// Interior test in float arithmetic (quick, not certified).
fn float_interior(stat: &[i64], design: &DesignMatrix) -> Result<bool> {
    let ncols = design.cols;
    let mut objective = vec![0.0; ncols + 1];
    objective[ncols] = 1.0;
    let mut lp = LinearProgram::new(objective);
    for r in 0..design.rows {
        let mut coeffs: Vec<f64> = design.row(r).iter().map(|&v| v as f64).collect();
        coeffs.push(design.row(r).iter().sum::<i64>() as f64);
        lp.constrain(coeffs, Sense::Eq, stat[r] as f64);
    }
    let sol = degseq_core::lp::solve_lp(&lp, LpMode::Float)?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.x[ncols] > 1e-7),
        _ => Err(Error::LpFailure("float interior check failed".into())),
    }
}

fn check(
    model: Model,
    trials: Option<u64>,
    k: Option<usize>,
    float: bool,
    file: &str,
    format: &Option<String>,
    pretty: bool,
) -> Result<i32> {
    let (design, stat) = cone_problem(model, trials, k, file, format)?;
    let mut out = json!({
        "command": "check",
        "model": model_name(model),
        "certified": !float,
    });
    let exists;
    if float {
        exists = float_interior(&stat, &design)?;
        out["exists"] = json!(exists);
    } else {
        let fs = facial_set(&stat, &design)?;
        exists = !fs.is_proper;
        out["exists"] = json!(exists);
        out["co_facial"] = cofacial_json(&fs);
        out["certificate"] = certificate_json(&fs);
    }
    // Model-specific companion verdicts.
    match model {
        Model::Rasch => {
            let t = input::load_rasch_table(file, k)?;
            let v = zoo::rasch_existence(&t)?;
            if let Some(b) = v.blocking {
                out["blocking"] = json!({
                    "a": one_based(&b.a), "b": one_based(&b.b),
                    "c": one_based(&b.c), "d": one_based(&b.d),
                });
            }
        }
        Model::Bt => {
            let t = input::load_directed_table(file)?;
            let v = zoo::bt_existence(&t);
            if let Some(u) = v.undefeated {
                out["undefeated"] = json!(one_based(&u));
            }
        }
        _ => {}
    }
    emit(&out, pretty);
    Ok(if exists { 0 } else { 1 })
}

fn one_based(v: &[usize]) -> Vec<String> {
    v.iter().map(|i| (i + 1).to_string()).collect()
}

fn fit(
    model: Model,
    trials: Option<u64>,
    extended: bool,
    tol: f64,
    file: &str,
    format: &Option<String>,
    pretty: bool,
) -> Result<i32> {
    let opts = FitOptions { tol, ..Default::default() };
    let (fit, n) = match model {
        Model::Beta => {
            let t = input::load_edge_table(file, format, trials)?;
            let f = if extended { extended_mle(&t, &opts)? } else { fit_mle(&t, &opts)? };
            (f, t.n())
        }
        Model::Bt => {
            let t = input::load_directed_table(file)?;
            (fit_bradley_terry(&t, &opts)?, t.n())
        }
        _ => {
            return Err(Error::Parameter(
                "fitting is available for the beta and bt models".into(),
            ))
        }
    };
    let mut p_hat = serde_json::Map::new();
    for (kk, (i, j)) in pairs(n).enumerate() {
        p_hat.insert(format!("{},{}", i + 1, j + 1), json!(fit.p_hat[kk]));
    }
    let mut out = json!({
        "command": "fit",
        "model": model_name(model),
        "exists": fit.exists,
        "beta_hat": fit.beta_hat,
        "p_hat": Value::Object(p_hat),
        "loglik": fit.loglik,
        "iterations": fit.iterations,
        "moment_residual": fit.moment_residual,
    });
    if let Some(fs) = &fit.facial_set {
        out["co_facial"] = cofacial_json(fs);
    }
    emit(&out, pretty);
    Ok(if fit.exists { 0 } else { 1 })
}

fn facial(
    model: Model,
    trials: Option<u64>,
    k: Option<usize>,
    file: &str,
    format: &Option<String>,
    pretty: bool,
) -> Result<i32> {
    let (design, stat) = cone_problem(model, trials, k, file, format)?;
    let fs = facial_set(&stat, &design)?;
    let facial_cells: Vec<String> = fs
        .facial
        .iter()
        .map(|&c| fs.columns[c].label())
        .collect();
    let out = json!({
        "command": "facial-set",
        "model": model_name(model),
        "exists": !fs.is_proper,
        "facial": facial_cells,
        "co_facial": cofacial_json(&fs),
        "certificate": certificate_json(&fs),
    });
    emit(&out, pretty);
    Ok(if fs.is_proper { 1 } else { 0 })
}

fn design(kind: DesignKind, n: Option<usize>, k: Option<usize>, l: Option<usize>) -> Result<i32> {
    let need_n = || n.ok_or_else(|| Error::Parameter("--n required".into()));
    let m = match kind {
        DesignKind::Beta => beta_design(need_n()?),
        DesignKind::Cayley => cayley_design(need_n()?, true),
        DesignKind::CayleyFull => cayley_design(need_n()?, false),
        DesignKind::Poisson => poisson_design(need_n()?),
        DesignKind::Bt => bt_design(need_n()?),
        DesignKind::Rasch => {
            let k = k.ok_or_else(|| Error::Parameter("--k required".into()))?;
            let l = l.ok_or_else(|| Error::Parameter("--l required".into()))?;
            rasch_design(k, l)
        }
        DesignKind::P1Zero => p1_design(need_n()?, P1Variant::Zero),
        DesignKind::P1Const => p1_design(need_n()?, P1Variant::Constant),
        DesignKind::P1Edge => p1_design(need_n()?, P1Variant::EdgeDependent),
    };
    print!("{}", m.to_csv());
    eprintln!("rank: {}", m.rank());
    Ok(0)
}

fn sampling_facet_count(design: &DesignMatrix, desc: &PolyhedralDescription) -> usize {
    desc.facets
        .iter()
        .filter(|f| {
            let co: Vec<usize> = (0..design.cols).filter(|c| !f.tight.contains(c)).collect();
            match co.len() {
                2 => {
                    let (a, b) = (design.columns[co[0]], design.columns[co[1]]);
                    matches!(
                        (a, b),
                        (Column::OrderedPair(i, j), Column::OrderedPair(p, q)) if i == q && j == p
                    )
                }
                4 => {
                    let dyads: std::collections::BTreeSet<usize> =
                        co.iter().map(|&c| c / 4).collect();
                    matches!(design.columns[co[0]], Column::DyadState(..)) && dyads.len() == 1
                }
                _ => false,
            }
        })
        .count()
}

fn enumerate(
    facets: bool,
    vertices: bool,
    model: Model,
    n: usize,
    detail: bool,
    pretty: bool,
) -> Result<i32> {
    if facets == vertices {
        return Err(Error::Parameter("choose exactly one of --facets / --vertices".into()));
    }
    let design = match model {
        Model::Beta => cayley_design(n, true),
        Model::Poisson => poisson_design(n),
        Model::PoissonUndirected => beta_design(n),
        Model::Bt => bt_design(n),
        Model::P1Zero | Model::P1Const | Model::P1Edge => {
            p1_design(n, p1_variant(model).unwrap())
        }
        Model::Rasch => return Err(Error::Parameter("use --model beta with a bipartite table".into())),
    };
    if facets {
        let desc = enumerate_facets(&design.columns_as_rat())?;
        let sampling = sampling_facet_count(&design, &desc);
        let mut out = json!({
            "command": "enumerate",
            "model": model_name(model),
            "n": n,
            "dim": desc.dim,
            "facet_count": desc.facets.len(),
            "sampling_facets": sampling,
            "model_facets": desc.facets.len() - sampling,
        });
        if detail {
            let list: Vec<Value> = desc
                .facets
                .iter()
                .map(|f| {
                    let co: Vec<String> = (0..design.cols)
                        .filter(|c| !f.tight.contains(c))
                        .map(|c| design.columns[c].label())
                        .collect();
                    json!({
                        "normal": f.normal.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "co_facial": co,
                    })
                })
                .collect();
            out["facets"] = Value::Array(list);
        }
        emit(&out, pretty);
    } else {
        // Vertex enumeration of the model polytope as a Minkowski sum.
        let cols = design.columns_as_rat();
        let groups: Vec<Vec<Vec<Rat>>> = match model {
            Model::Beta | Model::PoissonUndirected => {
                // Segments from the origin to each incidence column of the
                // plain design (one segment per pair).
                let a = beta_design(n).columns_as_rat();
                a.iter()
                    .map(|col| vec![vec![Rat::zero(); col.len()], col.clone()])
                    .collect()
            }
            Model::P1Zero | Model::P1Const | Model::P1Edge => (0..design.cols / 4)
                .map(|kk| (0..4).map(|s| cols[4 * kk + s].clone()).collect())
                .collect(),
            _ => {
                return Err(Error::Parameter(
                    "vertex enumeration covers the beta and p1 models".into(),
                ))
            }
        };
        let desc = enumerate_vertices_minkowski(&groups)?;
        let out = json!({
            "command": "enumerate",
            "model": model_name(model),
            "n": n,
            "dim": desc.dim,
            "vertex_count": desc.generators.len(),
        });
        emit(&out, pretty);
    }
    Ok(0)
}

fn survey(model: Model, n: usize, pretty: bool) -> Result<i32> {
    let Some(variant) = p1_variant(model) else {
        return Err(Error::Parameter("survey covers the p1 models".into()));
    };
    let s = zoo::p1_survey(n, variant)?;
    let out = json!({
        "command": "survey",
        "model": model_name(model),
        "n": n,
        "networks": s.networks,
        "distinct_statistics": s.distinct_statistics,
        "statistics_with_mle": s.statistics_with_mle,
        "networks_with_mle": s.networks_with_mle,
    });
    emit(&out, pretty);
    Ok(0)
}

fn parse_beta(n: usize, beta: &Option<String>) -> Result<BetaParams> {
    match beta {
        None => Ok(BetaParams::zeros(n)),
        Some(list) => {
            let vals: Vec<f64> = list
                .split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad beta '{v}'"))))
                .collect::<Result<_>>()?;
            if vals.len() == 1 {
                return Ok(BetaParams(vec![vals[0]; n]));
            }
            if vals.len() != n {
                return Err(Error::Parameter(format!(
                    "need {n} propensities, got {}",
                    vals.len()
                )));
            }
            Ok(BetaParams(vals))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    n: usize,
    trials: u64,
    beta: &Option<String>,
    reps: usize,
    seed: u64,
    c: Option<f64>,
    big_c: Option<f64>,
    verdicts: &Option<String>,
    pretty: bool,
) -> Result<i32> {
    let params = parse_beta(n, beta)?;
    let report = mc_existence_probability(&params, trials, reps, seed, c)?;
    let mut out = serde_json::to_value(&report).expect("serializable");
    out["command"] = json!("simulate");
    out["n"] = json!(n);
    out["trials"] = json!(trials);
    out["seed"] = json!(seed);
    if let (Some(c), Some(big_c)) = (c, big_c) {
        let cond = check_theorem4(&expected_degrees(&params), n, trials, c, big_c)?;
        out["conditions"] = serde_json::to_value(&cond).expect("serializable");
    }
    if let Some(path) = verdicts {
        let mut csv = String::from("replicate,exists\n");
        for (i, e) in report.per_replicate.iter().enumerate() {
            csv.push_str(&format!("{},{}\n", i + 1, u8::from(*e)));
        }
        std::fs::write(path, csv).map_err(|e| Error::Parameter(format!("{path}: {e}")))?;
    }
    emit(&out, pretty);
    Ok(0)
}

fn generate(n: usize, trials: u64, beta: &Option<String>, seed: u64) -> Result<i32> {
    let params = parse_beta(n, beta)?;
    let t: EdgeCountTable = generate_graph(&params, &vec![trials; num_pairs(n)], seed)?;
    print!("{}", t.to_csv());
    Ok(0)
}
