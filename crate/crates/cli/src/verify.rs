//! Verification suites: each one maps a deterministic list of instances
//! through an oracle check, optionally fanning the work out over a thread
//! pool sized by HWPL_THREADS, and merges the records back in input order.

use hwpl_core::error::{Error, Result};
use hwpl_core::extbundle::{admissible_offsets, make_extension_bundle, orthogonal_pair_check};
use hwpl_core::hall::{hall_ext_from_lines, s_poly};
use hwpl_core::lgroup::WeightType;
use hwpl_core::oracle::{
    assoc_check_one, assoc_tuples, auts_sweep, dims_sweep, green_check_one, green_quadruples,
    rp_check_one, rp_pairs, s_enumerate_at, TubeTable,
};
use hwpl_core::quiverside::rotation_check_pair;
use hwpl_core::tubes::TubeIndec;

use crate::report::{Report, VerifyRecord};

pub fn thread_count() -> usize {
    if let Ok(v) = std::env::var("HWPL_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Applies `f` to every item on a fixed-size pool, returning results in
/// input order regardless of scheduling.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    if threads <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let workers = threads.min(items.len());
    let chunks: Vec<Result<Vec<(usize, R)>>> = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for worker in 0..workers {
            let f = &f;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut idx = worker;
                while idx < items.len() {
                    out.push((idx, f(&items[idx])?));
                    idx += workers;
                }
                Ok(out)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    for chunk in chunks {
        for (idx, value) in chunk? {
            slots[idx] = Some(value);
        }
    }
    Ok(slots.into_iter().map(|r| r.expect("all slots filled")).collect())
}

pub struct SuiteParams {
    pub p: usize,
    pub q: u32,
    pub max_dim: Option<i64>,
    pub max_len: i64,
    pub weights: WeightType,
    pub n: i64,
    pub k: u8,
    pub sigma: Option<String>,
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Report> {
    let threads = thread_count();
    match name {
        "green" => green_suite(params, threads),
        "rp" => rp_suite(params, threads),
        "assoc" => assoc_suite(params, threads),
        "s-enum" => s_enum_suite(params),
        "dims" => dims_suite(params),
        "auts" => auts_suite(params),
        "sweep-ext" => sweep_ext_suite(params),
        other => Err(Error::InvalidInput(format!("unknown suite {:?}", other))),
    }
}

fn green_suite(params: &SuiteParams, threads: usize) -> Result<Report> {
    let max_dim = params.max_dim.unwrap_or(4);
    let table = TubeTable::build(params.p, params.q, max_dim)?;
    let quads = green_quadruples(&table);
    let records = parallel_map(&quads, threads, |quad| {
        let r = green_check_one(&table, *quad)?;
        Ok(VerifyRecord {
            suite: "green".into(),
            inputs: format!("p={};q={};M={};N={};X={};Y={}", params.p, params.q, r.m, r.n, r.x, r.y),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            verdict: r.verdict,
        })
    })?;
    let mut report = Report::new("verify-green")
        .input("p", params.p)
        .input("q", params.q)
        .input("max-dim", max_dim);
    report.records = records;
    Ok(report)
}

fn rp_suite(params: &SuiteParams, threads: usize) -> Result<Report> {
    let max_dim = params.max_dim.unwrap_or(4);
    let table = TubeTable::build(params.p, params.q, max_dim)?;
    let pairs = rp_pairs(&table);
    let mut records = parallel_map(&pairs, threads, |pair| {
        let r = rp_check_one(&table, *pair)?;
        Ok(VerifyRecord {
            suite: "rp".into(),
            inputs: format!("p={};q={};A={};B={}", params.p, params.q, r.a, r.b),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            verdict: r.verdict,
        })
    })?;
    let rotation = parallel_map(&pairs, threads, |pair| {
        let rows = rotation_check_pair(&table, *pair)?;
        Ok(rows
            .into_iter()
            .map(|r| VerifyRecord {
                suite: "rotation".into(),
                inputs: format!(
                    "p={};q={};A={};B={};L={}",
                    params.p, params.q, r.a, r.b, r.l
                ),
                lhs: r.lhs.to_string(),
                rhs: r.rhs.to_string(),
                verdict: r.verdict,
            })
            .collect::<Vec<_>>())
    })?;
    records.extend(rotation.into_iter().flatten());
    let mut report = Report::new("verify-rp")
        .input("p", params.p)
        .input("q", params.q)
        .input("max-dim", max_dim);
    report.records = records;
    Ok(report)
}

fn assoc_suite(params: &SuiteParams, threads: usize) -> Result<Report> {
    let max_dim = params.max_dim.unwrap_or(3);
    let table = TubeTable::build(params.p, params.q, max_dim)?;
    let tuples = assoc_tuples(&table);
    let records = parallel_map(&tuples, threads, |tuple| {
        let r = assoc_check_one(&table, *tuple);
        Ok(VerifyRecord {
            suite: "assoc".into(),
            inputs: format!(
                "p={};q={};A={};B={};C={};M={}",
                params.p, params.q, r.a, r.b, r.c, r.m
            ),
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            verdict: r.verdict,
        })
    })?;
    let mut report = Report::new("verify-assoc")
        .input("p", params.p)
        .input("q", params.q)
        .input("max-dim", max_dim);
    report.records = records;
    Ok(report)
}

/// Default choices of exceptional classes for a given k: one class of
/// length 1 with top 0 in each of the first k tubes.
pub fn default_sigma(w: &WeightType, k: u8) -> Result<Vec<TubeIndec>> {
    (0..k as usize).map(|i| TubeIndec::exceptional(w, i, 0, 1)).collect()
}

fn s_enum_suite(params: &SuiteParams) -> Result<Report> {
    let w = &params.weights;
    let sigma: Vec<TubeIndec> = match &params.sigma {
        Some(text) => text
            .split('+')
            .map(|part| TubeIndec::parse(w, part.trim()))
            .collect::<Result<_>>()?,
        None => default_sigma(w, params.k)?,
    };
    let enumerated = s_enumerate_at(w, params.n, &sigma, params.q as i64)?;
    let closed = s_poly(params.n, sigma.len() as u8)?.eval_int(params.q as i64)?;
    let sigma_text = sigma
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("+");
    let record = VerifyRecord {
        suite: "s-enum".into(),
        inputs: format!(
            "weights={};n={};k={};q={};sigma={}",
            w,
            params.n,
            sigma.len(),
            params.q,
            if sigma_text.is_empty() { "-" } else { &sigma_text }
        ),
        lhs: enumerated.to_string(),
        rhs: closed.to_string(),
        verdict: enumerated == closed,
    };
    let mut report = Report::new("verify-s-enum")
        .input("weights", w)
        .input("n", params.n)
        .input("k", sigma.len())
        .input("q", params.q);
    report.records = vec![record];
    Ok(report)
}

fn dims_suite(params: &SuiteParams) -> Result<Report> {
    let rows = dims_sweep(params.p, params.q, params.max_len)?;
    let records = rows
        .into_iter()
        .map(|r| VerifyRecord {
            suite: "dims".into(),
            inputs: format!(
                "p={};q={};a=({},{});b=({},{})",
                params.p, params.q, r.j, r.n, r.k, r.m
            ),
            lhs: format!("hom={},ext={}", r.hom_formula, r.ext_formula),
            rhs: format!("hom={},ext={}", r.hom_rank, r.ext_rank),
            verdict: r.verdict,
        })
        .collect();
    let mut report = Report::new("verify-dims")
        .input("p", params.p)
        .input("q", params.q)
        .input("max-len", params.max_len);
    report.records = records;
    Ok(report)
}

fn auts_suite(params: &SuiteParams) -> Result<Report> {
    let rows = auts_sweep(params.p, params.q, params.max_len)?;
    let records = rows
        .into_iter()
        .map(|r| VerifyRecord {
            suite: "auts".into(),
            inputs: format!("p={};q={};chain=({},{})", params.p, params.q, r.j, r.n),
            lhs: r.formula.to_string(),
            rhs: r.brute.to_string(),
            verdict: r.verdict,
        })
        .collect();
    let mut report = Report::new("verify-auts")
        .input("p", params.p)
        .input("q", params.q)
        .input("max-len", params.max_len);
    report.records = records;
    Ok(report)
}

fn sweep_ext_suite(params: &SuiteParams) -> Result<Report> {
    let w = &params.weights;
    let mut records = Vec::new();
    for offset in admissible_offsets(w)? {
        let e = make_extension_bundle(w, w.zero(), offset.clone())?;
        let rep = orthogonal_pair_check(w, &e)?;
        let sub = e.line_sub_twist(w)?;
        let quot = e.line_quotient_twist(w)?;
        let straight = hall_ext_from_lines(w, &e, &sub, &quot)?;
        let mirrored = hall_ext_from_lines(w, &e, &quot, &sub)?;
        records.push(VerifyRecord {
            suite: "sweep-ext".into(),
            inputs: format!("weights={};offset={}", w, offset),
            lhs: format!(
                "homs=({},{});ext=({},{});orders=({},{})",
                rep.hom_x_to_w, rep.hom_w_to_x, rep.ext_w_to_x, rep.ext_x_to_w, straight, mirrored
            ),
            rhs: "homs=(0,0);ext=(0,1);orders=(1,0)".into(),
            verdict: rep.is_orthogonal() && straight.is_one() && mirrored.is_zero(),
        });
    }
    let mut report = Report::new("verify-sweep-ext").input("weights", w);
    report.records = records;
    Ok(report)
}
