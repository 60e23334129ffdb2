use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use super::config::{RunConfig, Target};
use super::output::{exact, exact_opt, Cell, Table};
use crate::borcherds::{sweep, StructureConstants};
use crate::error::{Error, Result};
use crate::limit::{
    commutator_check, compare_with_modes, fk_character, free_decomposition, orbit_diagnostic, rescaled_virasoro_reports,
    single_trace_generators, factorization_check, wick_correlator, ConvergenceReport, FreeDecomposition,
    FactorizationVerdict, Insertion, OrbifoldLimit,
};
use crate::orbifold::{OrbifoldTower, OrbifoldVA, OrbitLabel};
use crate::scalar::Rational;
use crate::seed::SeedVA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Dims,
    Orbits,
    Sc,
    Limit,
    Borcherds,
    Factorize,
    Wick,
    Char,
    Decompose,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Dims,
        Command::Orbits,
        Command::Sc,
        Command::Limit,
        Command::Borcherds,
        Command::Factorize,
        Command::Wick,
        Command::Char,
        Command::Decompose,
    ];

    pub fn from_name(name: &str) -> Option<Command> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Orbits => "orbits",
            Command::Sc => "sc",
            Command::Limit => "limit",
            Command::Borcherds => "borcherds",
            Command::Factorize => "factorize",
            Command::Wick => "wick",
            Command::Char => "char",
            Command::Decompose => "decompose",
        }
    }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Table> {
    cfg.validate(command.name())?;
    match command {
        Command::Dims => dims(cfg),
        Command::Orbits => orbits(cfg),
        Command::Sc => sc(cfg),
        Command::Limit => limit(cfg),
        Command::Borcherds => borcherds(cfg),
        Command::Factorize => factorize(cfg),
        Command::Wick => wick(cfg),
        Command::Char => character(cfg),
        Command::Decompose => decompose(cfg),
    }
}

fn seed(cfg: &RunConfig) -> Result<Arc<SeedVA>> {
    Ok(Arc::new(SeedVA::new(cfg.seed.clone(), cfg.cutoff)?))
}

fn tower(cfg: &RunConfig) -> Result<Arc<OrbifoldTower>> {
    Ok(Arc::new(OrbifoldTower::new(seed(cfg)?, cfg.family.clone())))
}

fn orbifold_limit(cfg: &RunConfig, cutoff: u32) -> Result<OrbifoldLimit> {
    OrbifoldLimit::new(tower(cfg)?, cutoff, cfg.n_max)
}

fn levels(cfg: &RunConfig) -> Vec<usize> {
    cfg.levels().into_iter().filter(|&n| n >= cfg.family.min_level()).collect()
}

/// Triples from per-weight label lists with total weight at most `max_total`,
/// in weight-then-basis order.
fn triples<L: Clone>(by_weight: &[Vec<L>], max_total: u32) -> Vec<[L; 3]> {
    let top = by_weight.len();
    let mut out = Vec::new();
    for wa in 0..top {
        for wb in 0..top {
            for wc in 0..top {
                if (wa + wb + wc) as u32 > max_total {
                    continue;
                }
                for a in &by_weight[wa] {
                    for b in &by_weight[wb] {
                        for c in &by_weight[wc] {
                            out.push([a.clone(), b.clone(), c.clone()]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn dims(cfg: &RunConfig) -> Result<Table> {
    let t = tower(cfg)?;
    let mut table = Table::new(&["n", "N", "b_n"]);
    let mut saturation = Vec::new();
    for n in 0..=cfg.cutoff {
        for l in levels(cfg) {
            table.push(vec![n.into(), l.into(), t.b_n(l, n)?.into()]);
        }
        saturation.push(json!({ "n": n, "saturation": t.saturation(n, cfg.n_max)? }));
    }
    table.summarize("saturation", saturation)?;
    Ok(table)
}

fn orbits(cfg: &RunConfig) -> Result<Table> {
    let t = tower(cfg)?;
    let mut table = Table::new(&["N", "n", "index", "representative", "orbit_length"]);
    for l in levels(cfg) {
        for n in 0..=cfg.cutoff {
            for (i, v) in t.basis(l, n)?.iter().enumerate() {
                table.push(vec![l.into(), n.into(), i.into(), v.rep.label(t.seed()).into(), v.orbit_length.into()]);
            }
        }
    }
    Ok(table)
}

fn sc(cfg: &RunConfig) -> Result<Table> {
    let t = tower(cfg)?;
    let top = cfg.sc.max_total.min(cfg.cutoff);
    let mut jobs = Vec::new();
    for l in levels(cfg) {
        let by_weight: Vec<Vec<OrbitLabel>> = (0..=top).map(|n| t.labels(l, n)).collect::<Result<_>>()?;
        jobs.extend(triples(&by_weight, cfg.sc.max_total).into_iter().map(|x| (l, x)));
    }
    let methods = &cfg.sc.methods;
    let values: Vec<Vec<_>> = jobs
        .par_iter()
        .map(|(l, [a, b, c])| methods.iter().map(|&m| t.sc_finite(*l, a, b, c, m)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut table = Table::new(&["a", "b", "c", "N", "method", "value_exact", "value_float"]);
    let mut disagreements = 0;
    for ((l, [a, b, c]), vals) in jobs.iter().zip(&values) {
        if vals.windows(2).any(|w| w[0] != w[1]) {
            disagreements += 1;
        }
        for (m, v) in methods.iter().zip(vals) {
            let [ve, vf] = exact(v);
            let label = |x: &OrbitLabel| x.rep.label(t.seed());
            table.push(vec![label(a).into(), label(b).into(), label(c).into(), (*l).into(), m.name().into(), ve, vf]);
        }
    }
    table.summarize("triples", jobs.len())?;
    table.summarize("methods_agree", disagreements == 0)?;
    table.summarize("disagreements", disagreements)?;
    Ok(table)
}

fn push_reports(table: &mut Table, reports: &[ConvergenceReport]) {
    for r in reports {
        let [le, lf] = exact_opt(r.limit_exact.as_ref());
        let rate = r.rate.as_ref();
        table.push(vec![
            r.labels[0].clone().into(),
            r.labels[1].clone().into(),
            r.labels[2].clone().into(),
            serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).into(),
            r.converged.into(),
            le,
            lf,
            r.limit_estimate.into(),
            r.tail_gap.into(),
            rate.map(|x| x.exponent).into(),
            rate.map(|x| x.r_squared).into(),
            r.samples.len().into(),
        ]);
    }
}

const REPORT_COLUMNS: [&str; 12] = [
    "a", "b", "c", "status", "converged", "limit_exact", "limit_float", "limit_estimate", "tail_gap", "rate_exponent",
    "rate_r_squared", "samples",
];

fn limit(cfg: &RunConfig) -> Result<Table> {
    let mut table = Table::new(&REPORT_COLUMNS);
    let mut levels = cfg.limit.levels.clone();
    levels.sort_unstable();
    levels.dedup();
    let reports: Vec<ConvergenceReport> = if let Some(c) = &cfg.limit.rescaled_virasoro {
        let lv: Vec<u64> = levels.iter().map(|&n| n as u64).collect();
        rescaled_virasoro_reports(&c.0, &lv, cfg.limit.max_total.min(cfg.cutoff), cfg.tolerance)?
    } else {
        let top = cfg.limit.max_total.min(cfg.cutoff);
        let lim = orbifold_limit(cfg, top)?;
        let by_weight: Vec<Vec<OrbitLabel>> = (0..=top).map(|n| Ok(lim.labels(n)?.to_vec())).collect::<Result<_>>()?;
        let all = triples(&by_weight, cfg.limit.max_total);
        let reports = lim.reports(&all, &levels, cfg.tolerance)?;
        table.summarize("basis", lim.basis())?;
        reports.into_iter().map(|r| r.convergence).collect()
    };
    push_reports(&mut table, &reports);
    table.summarize("levels", &levels)?;
    table.summarize("all_converged", reports.iter().all(|r| r.converged))?;
    // full provenance of every sample
    table.summarize("reports", &reports)?;
    Ok(table)
}

fn borcherds_rows<S: StructureConstants>(
    sys: &S,
    total: u32,
    describe: impl Fn(&S::Label) -> String,
    scalar: impl Fn(&S::Scalar) -> [Cell; 2],
) -> Result<Table> {
    let (checks, failures) = sweep(sys, total)?;
    let mut table = Table::new(&["e", "a", "b", "c", "k", "m", "n", "residual_exact", "residual_float"]);
    for ([e, a, b, c], (k, m, n), r) in &failures {
        let [re, rf] = scalar(r);
        table.push(vec![
            describe(e).into(),
            describe(a).into(),
            describe(b).into(),
            describe(c).into(),
            (*k).into(),
            (*m).into(),
            (*n).into(),
            re,
            rf,
        ]);
    }
    table.summarize("checks", checks)?;
    table.summarize("failures", failures.len())?;
    table.summarize("passed", failures.is_empty())?;
    Ok(table)
}

fn borcherds(cfg: &RunConfig) -> Result<Table> {
    let total = cfg.borcherds.total;
    let mut table = match cfg.borcherds.target {
        Target::Seed => {
            let s = seed(cfg)?;
            borcherds_rows(&*s, total, |w| s.label(w), exact)?
        }
        Target::Orbifold => {
            let t = tower(cfg)?;
            let va = OrbifoldVA::new(t.clone(), cfg.n_max, cfg.cutoff)?;
            borcherds_rows(&va, total, |w| w.label(t.seed()), exact)?
        }
        Target::Limit => {
            let lim = orbifold_limit(cfg, cfg.cutoff)?;
            borcherds_rows(&lim, total, |x| lim.label_text(x), exact)?
        }
    };
    table.summarize("target", cfg.borcherds.target)?;
    Ok(table)
}

fn factorize(cfg: &RunConfig) -> Result<Table> {
    let verdict: FactorizationVerdict = match cfg.factorize.target {
        Target::Seed | Target::Orbifold => {
            let s = seed(cfg)?;
            let gens: Vec<_> = (0..s.names().len() as u16)
                .filter(|&g| s.algebra().weight(g) <= cfg.factorize.max_weight)
                .map(|g| s.generator(g))
                .collect();
            let mut v = commutator_check(&*s, &gens, cfg.tolerance, |w| s.label(w))?;
            v.diagnostic = Some(orbit_diagnostic(&cfg.family, &levels(cfg))?);
            v
        }
        Target::Limit => {
            let lim = orbifold_limit(cfg, cfg.cutoff)?;
            let gens = single_trace_generators(&lim, cfg.factorize.max_weight)?;
            factorization_check(&lim, &gens, &levels(cfg), cfg.tolerance)?
        }
    };
    let mut table = Table::new(&["u", "v", "w", "mode", "value_exact", "value_float", "triple_overlap", "m_constant"]);
    for w in &verdict.witnesses {
        let [ve, vf] = match &w.exact {
            Some(x) => exact(x),
            None => [Cell::Empty, w.value.into()],
        };
        let overlap = w.config.as_ref().map(|c| format!("{:?}", c.triple_overlap()));
        table.push(vec![
            w.u.clone().into(),
            w.v.clone().into(),
            w.w.clone().into(),
            w.mode.into(),
            ve,
            vf,
            overlap.into(),
            w.m_constant.into(),
        ]);
    }
    table.summarize("factorizes", verdict.factorizes)?;
    table.summarize("matches_orbit_criterion", verdict.matches_diagnostic())?;
    table.summarize("verdict", &verdict)?;
    Ok(table)
}

fn wick(cfg: &RunConfig) -> Result<Table> {
    let s = seed(cfg)?;
    let names = s.names();
    let count = names.len();
    if let Some(&g) = cfg.wick.insertions.iter().find(|&&g| g as usize >= count) {
        return Err(Error::Config(format!("wick insertion {g} but the seed has {count} generators")));
    }
    let form: Vec<Vec<Rational>> =
        (0..count as u16).map(|x| (0..count as u16).map(|y| s.algebra().generator_form(x, y)).collect()).collect();
    let insertions: Vec<Insertion> = cfg
        .wick
        .insertions
        .iter()
        .map(|&g| Insertion { label: names[g as usize].clone(), generator: g as usize, weight: s.algebra().weight(g) })
        .collect();
    let sum = wick_correlator(&insertions, &form)?;
    let mut table = Table::new(&["pairing", "coefficient"]);
    for p in &sum.pairings {
        let pairs: Vec<String> = p.pairs.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        table.push(vec![pairs.join(" ").into(), p.coefficient.to_string().into()]);
    }
    let (tuples, mismatches) = compare_with_modes(&s, &sum, cfg.wick.order)?;
    table.summarize("latex", sum.to_latex())?;
    table.summarize("pairings", sum.pairings.len())?;
    table.summarize("mode_tuples", tuples)?;
    table.summarize("mode_mismatches", mismatches.len())?;
    if let Some(z) = &cfg.wick.z {
        let zs: Vec<Rational> = z.iter().map(|x| x.0.clone()).collect();
        let v = sum.evaluate_exact(&zs)?;
        table.summarize("value_at_z", json!({ "exact": v.to_string(), "float": num_traits::ToPrimitive::to_f64(&v) }))?;
    }
    Ok(table)
}

fn character(cfg: &RunConfig) -> Result<Table> {
    let mut table = Table::new(&["j", "coefficient"]);
    for (j, c) in fk_character(cfg.char.k, cfg.char.order).into_iter().enumerate() {
        table.push(vec![j.into(), c.into()]);
    }
    table.summarize("k", cfg.char.k)?;
    Ok(table)
}

fn decompose(cfg: &RunConfig) -> Result<Table> {
    let order = cfg.decompose.order;
    let d: FreeDecomposition = match cfg.decompose.target {
        Target::Seed => free_decomposition(&*seed(cfg)?, order)?,
        Target::Orbifold => free_decomposition(&OrbifoldVA::new(tower(cfg)?, cfg.n_max, cfg.cutoff)?, order)?,
        Target::Limit => free_decomposition(&orbifold_limit(cfg, order as u32)?, order)?,
    };
    let mut table = Table::new(&["k", "dim", "multiplicity", "character", "norms"]);
    for k in 0..=order {
        let norms: Vec<String> = d.norms[k].iter().map(|x| x.to_string()).collect();
        table.push(vec![k.into(), d.dims[k].into(), d.multiplicities[k].into(), d.character[k].into(), norms.join("; ").into()]);
    }
    table.summarize("certificate", d.certificate)?;
    table.summarize("target", cfg.decompose.target)?;
    Ok(table)
}
