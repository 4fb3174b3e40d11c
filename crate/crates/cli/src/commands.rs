use std::ops::RangeInclusive;
use std::path::Path;

use digrho_core::bounds::bound_trace;
use digrho_core::digraph::{clique_number, is_member_dss, rewire_to_dss};
use digrho_core::enumerate::{brute_max_rho, enumerate_dss_with, VertexCap};
use digrho_core::extremal::{build_dsharp, rho_closed_form, rho_dsharp, DsharpSpec};
use digrho_core::spectral::spectral_radius;
use digrho_core::verify::{check_closed_form, compare_with_brute_force, verify_large_clique_regime, ArcCase};
use digrho_core::{ArcDecomposition, CanonicalForm, Digraph};
use serde::Serialize;

use crate::args::{Emit, Family, Mode, RunConfig, VerifyArgs};
use crate::error::{CliError, CliResult};
use crate::io::{format_digraph, read_digraph};
use crate::report::{Format, Report};
use crate::sweep::{pool, verify_parallel};

/// Sweeps above this arc count need `--long-running`.
pub const LONG_RUNNING_ARCS: u64 = 40;

/// CSV columns of a conjecture sweep.
pub const CONJECTURE_COLUMNS: &[&str] = &[
    "e",
    "k",
    "t",
    "n_candidates",
    "rho_max",
    "dsharp_rho",
    "conjecture_holds",
    "elapsed_ms",
    "case",
    "argmax_classes",
];

fn arc_list(d: &Digraph) -> Vec<[usize; 2]> {
    d.arcs().map(|(i, j)| [i, j]).collect()
}

#[derive(Serialize)]
struct DsharpRecord {
    e: u64,
    k: u64,
    t: u64,
    rho: f64,
    p: u64,
    q: u64,
    vertices: usize,
    in_family: bool,
    case: ArcCase,
    closed_form: Option<f64>,
}

pub fn dsharp(arcs: u64, emit: Emit) -> CliResult<Report> {
    let spec = DsharpSpec::new(arcs)?;
    let d = spec.build();
    let text = format_digraph(&d);
    if emit == Emit::Digraph {
        return Ok(Report { kind: "dsharp", text: Some(text), raw: true, ..Default::default() });
    }
    let dec = spec.decomposition;
    let record = DsharpRecord {
        e: dec.e,
        k: dec.k,
        t: dec.t,
        rho: rho_dsharp(arcs)?,
        p: spec.p,
        q: spec.q,
        vertices: spec.vertex_count(),
        in_family: spec.in_dss(),
        case: ArcCase::of(dec),
        closed_form: rho_closed_form(arcs).map(|c| c.rho),
    };
    let mut report = Report::single("dsharp", &record)?;
    if emit == Emit::Both {
        report.preamble = Some(text);
    }
    Ok(report)
}

#[derive(Serialize)]
struct Normalized {
    digraph: Vec<[usize; 2]>,
    canonical: Option<String>,
    original_vertex: Vec<usize>,
    rho_before: f64,
    rho_after: f64,
    rounds: usize,
    moves: usize,
}

#[derive(Serialize)]
struct RhoRecord {
    vertices: usize,
    arcs: usize,
    rho: f64,
    strongly_connected: bool,
    member: bool,
    clique_number: usize,
    reducible: bool,
    dominant_block: Option<Vec<usize>>,
    iterations: usize,
    residual: f64,
    left_residual: f64,
    right: Vec<f64>,
    left: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<Normalized>,
}

pub fn rho(path: &Path, normalize: bool, cfg: RunConfig) -> CliResult<Report> {
    let d = read_digraph(path)?;
    let r = spectral_radius(&d, cfg.spectral)?;
    let normalized = if normalize {
        let w = rewire_to_dss(&d, cfg.spectral)?;
        Some(Normalized {
            digraph: arc_list(&w.digraph),
            canonical: CanonicalForm::from_digraph(&w.digraph).map(|c| c.to_string()),
            original_vertex: w.original_vertex,
            rho_before: w.rho_before,
            rho_after: w.rho_after,
            rounds: w.rounds,
            moves: w.moves,
        })
    } else {
        None
    };
    let record = RhoRecord {
        vertices: d.vertex_count(),
        arcs: d.arc_count(),
        rho: r.rho,
        strongly_connected: d.is_strongly_connected(),
        member: is_member_dss(&d).is_member(),
        clique_number: clique_number(&d),
        reducible: r.is_reducible(),
        dominant_block: r.dominant_block.clone(),
        iterations: r.iterations,
        residual: r.residual,
        left_residual: r.left_residual,
        right: r.right,
        left: r.left,
        normalized,
    };
    Report::single("rho", &record)
}

pub fn bounds(
    digraph: Option<&Path>,
    arcs: Option<u64>,
    family: Family,
    cfg: RunConfig,
    format: Format,
) -> CliResult<Report> {
    let d = match (digraph, arcs, family) {
        (Some(path), _, _) => read_digraph(path)?,
        (None, Some(e), Family::Dsharp) => build_dsharp(e)?,
        (None, None, _) => return Err(CliError::Usage("bounds needs --digraph or --arcs".into())),
    };
    let trace = bound_trace(&d, cfg.spectral)?;
    if format == Format::Csv {
        return Report::list("bounds", &trace.entries);
    }
    Report::single("bounds", &trace)
}

pub fn verify(args: &VerifyArgs, cfg: RunConfig) -> CliResult<Report> {
    let (range, single) = match (args.arcs, &args.range) {
        (Some(e), _) => (e..=e, true),
        (None, Some(r)) => (r.clone(), false),
        (None, None) => return Err(CliError::Usage("verify needs --arcs or --range".into())),
    };
    check_gate(&range, args)?;
    let opts = cfg.spectral;
    let mut report = match args.mode {
        Mode::Conjecture => {
            let pool = pool(cfg.jobs)?;
            let mut out = Vec::new();
            for e in range {
                out.push(verify_parallel(&pool, e, args.cap, opts, !args.no_timing)?);
            }
            let mut r = Report::list("verify-conjecture", &out)?;
            r.columns = Some(CONJECTURE_COLUMNS);
            r
        }
        Mode::ClosedForms => {
            let mut out = Vec::new();
            for e in range {
                match check_closed_form(e, opts)? {
                    Some(c) => out.push(c),
                    None if single => {
                        return Err(CliError::Usage(format!(
                            "e = {e} has no closed form (t is not 0, 1, 2k-2 or 2k-1)"
                        )))
                    }
                    None => {}
                }
            }
            Report::list("verify-closed-forms", &out)?
        }
        Mode::LargeClique => {
            let mut out = Vec::new();
            for e in range {
                if ArcDecomposition::new(e)?.t < 2 && !single {
                    continue;
                }
                out.push(verify_large_clique_regime(e, opts)?);
            }
            Report::list("verify-large-clique", &out)?
        }
        Mode::Oracle => {
            let mut out = Vec::new();
            for e in range {
                out.push(compare_with_brute_force(e, args.max_vertices, opts)?);
            }
            Report::list("verify-oracle", &out)?
        }
    };
    report.single = single && report.records.len() == 1;
    Ok(report)
}

/// Whether a mode sweeps the family for `e`; the bound chain does not.
fn sweeps(mode: Mode, e: u64) -> CliResult<bool> {
    let dec = ArcDecomposition::new(e)?;
    Ok(match mode {
        Mode::LargeClique => !dec.in_large_clique_regime(),
        _ => true,
    })
}

fn check_gate(range: &RangeInclusive<u64>, args: &VerifyArgs) -> CliResult<()> {
    if args.long_running {
        return Ok(());
    }
    for e in range.clone().filter(|&e| e > LONG_RUNNING_ARCS) {
        if sweeps(args.mode, e)? {
            return Err(CliError::Usage(format!(
                "sweeping e = {e} exceeds {LONG_RUNNING_ARCS} arcs; pass --long-running to allow it"
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct FormRecord {
    form: String,
    vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
}

pub fn enumerate(arcs: u64, cap: VertexCap, with_rho: bool, cfg: RunConfig) -> CliResult<Report> {
    let mut records = Vec::new();
    for f in enumerate_dss_with(arcs, cap)? {
        let rho = if with_rho { Some(spectral_radius(&f.expand(), cfg.spectral)?.rho) } else { None };
        records.push(FormRecord { form: f.to_string(), vertices: f.vertex_count(), rho });
    }
    let mut report = Report::list("enumerate", &records)?;
    let mut text = String::new();
    for r in &report.records {
        text += r["form"].as_str().unwrap_or_default();
        if let Some(rho) = r.get("rho") {
            text += &format!("  {rho}");
        }
        text.push('\n');
    }
    report.text = Some(text);
    Ok(report)
}

#[derive(Serialize)]
struct OracleRecord {
    e: u64,
    n: usize,
    subsets: u64,
    rho_max: f64,
    argmax_count: usize,
    argmax: Vec<Vec<[usize; 2]>>,
}

pub fn oracle(arcs: u64, vertices: usize, cfg: RunConfig) -> CliResult<Report> {
    let b = brute_max_rho(arcs, vertices, cfg.spectral)?;
    let record = OracleRecord {
        e: arcs,
        n: vertices,
        subsets: b.subsets,
        rho_max: b.rho_max,
        argmax_count: b.argmax.len(),
        argmax: b.argmax.iter().map(arc_list).collect(),
    };
    Report::single("oracle", &record)
}
