use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use pqmaps_core::approx::{approximate_with_boundary, fit_ladder, fit_pq_map, ladder_non_increasing, PhasePolicy, Sample, SampledMap};
use pqmaps_core::bookkeeping::{dimension_report, e1_page, evaluate_page, stable_range, BettiTable, ProblemParams};
use pqmaps_core::discriminant::{check_stabilization_membership, has_common_zero, Mode as DiscMode, VerdictKind};
use pqmaps_core::genpos::{monte_carlo, Lemma};
use pqmaps_core::{FieldKind, MapTuple, PQPolynomial};
use pqmaps_resolution::chain::FilteredChainComplex;
use pqmaps_resolution::complex::SimplicialMap;
use pqmaps_resolution::fox_neuwirth::{betti_table, FoxNeuwirthError};
use pqmaps_resolution::resolution::{build_resolution, check_resolution_equivalence, Mode, Resolution, ResolutionError};
use pqmaps_resolution::spectral::spectral_sequence;

use crate::report::{invalid, read_json, write_text, CliError, CliResult, Report};
use crate::{ApproxCmd, BookkeepingCmd, Cli, Command, DiscCmd, GenposCmd, ResolveCmd};

/// Run the selected subcommand; `Ok(false)` means a certification failed.
pub fn run(cli: &Cli) -> CliResult<bool> {
    let seed = cli.seed;
    match &cli.command {
        Command::Bookkeeping(cmd) => bookkeeping(cmd, seed),
        Command::Genpos(GenposCmd::Certify(args)) => {
            let lemma: Lemma = args.lemma.parse().map_err(CliError::Invalid)?;
            let params = ProblemParams::new(args.m, args.n.unwrap_or(args.m), args.p, args.q).map_err(invalid)?;
            let summary = monte_carlo(lemma, &params, args.r, args.trials, seed, args.magnitude).map_err(invalid)?;
            // outside the proven range failures are observations, not errors
            let ok = summary.failures == 0 || !summary.guaranteed;
            Report::new("genpos certify", seed, args, ok, &summary).emit(args.out.as_deref())
        }
        Command::Resolve(cmd) => resolve(cmd, seed),
        Command::Disc(DiscCmd::Check(args)) => {
            let mode: DiscMode = args.mode.parse().map_err(CliError::Invalid)?;
            if !(args.tol > 0.0 && args.tol.is_finite()) {
                return Err(CliError::Invalid(format!("tolerance must be positive, got {}", args.tol)));
            }
            let tuple: MapTuple = read_json(&args.tuple)?;
            let cert = has_common_zero(&tuple, mode, args.tol).map_err(invalid)?;
            let stabilization = if args.stabilize {
                Some(check_stabilization_membership(&tuple, args.tol).map_err(invalid)?)
            } else {
                None
            };
            let ok = cert.verdict.kind() != VerdictKind::Unknown
                && stabilization.as_ref().is_none_or(|s| s.agree != Some(false));
            #[derive(Serialize)]
            struct Out<'a, C, S> {
                certificate: &'a C,
                stabilization: Option<S>,
            }
            let result = Out { certificate: &cert, stabilization };
            Report::new("disc check", seed, args, ok, result).emit(args.out.as_deref())
        }
        Command::Approx(ApproxCmd::Fit(args)) => approx_fit(args, seed),
    }
}

fn params(a: &crate::ParamArgs) -> CliResult<ProblemParams> {
    ProblemParams::new(a.m, a.n, a.p, a.q).map_err(invalid)
}

fn bookkeeping(cmd: &BookkeepingCmd, seed: u64) -> CliResult<bool> {
    match cmd {
        BookkeepingCmd::Report { params: pa, out } => {
            let report = dimension_report(&params(pa)?).map_err(invalid)?;
            Report::new("bookkeeping report", seed, pa, true, &report).emit(out.as_deref())
        }
        BookkeepingCmd::E1(args) => {
            let pp = params(&args.params)?;
            let page = e1_page(&pp, args.rmax, args.smax, args.extended).map_err(invalid)?;
            let evaluation = match &args.betti {
                Some(path) => {
                    let table = BettiTable::from_csv_path(Path::new(path)).map_err(invalid)?;
                    Some(evaluate_page(&page, &table).map_err(invalid)?)
                }
                None => None,
            };
            #[derive(Serialize)]
            struct Out<P, E> {
                page: P,
                evaluation: Option<E>,
            }
            Report::new("bookkeeping e1", seed, args, true, Out { page: &page, evaluation }).emit(args.out.as_deref())
        }
        BookkeepingCmd::StableRange { m, n, d, out } => {
            if *m < 1 || m > n {
                return Err(CliError::Invalid(format!("need 1 <= m <= n, got m={m}, n={n}")));
            }
            let config = serde_json::json!({ "m": m, "n": n, "d": d });
            let result = serde_json::json!({ "stable_range": stable_range(*m, *n, *d) });
            Report::new("bookkeeping stable-range", seed, &config, true, result).emit(out.as_deref())
        }
    }
}

fn field(s: &str) -> CliResult<FieldKind> {
    s.parse().map_err(CliError::Invalid)
}

/// Accept a report envelope, a resolution, or a bare filtered complex.
fn load_complex(path: &str) -> CliResult<(FilteredChainComplex, Option<Resolution>)> {
    let mut value: Value = read_json(path)?;
    if let Some(result) = value.get_mut("result") {
        value = result.take();
    }
    let json_err = |source| CliError::Json { path: path.to_string(), source };
    if value.get("complex").is_some() {
        let res: Resolution = serde_json::from_value(value).map_err(json_err)?;
        return Ok((res.complex.clone(), Some(res)));
    }
    Ok((serde_json::from_value(value).map_err(json_err)?, None))
}

fn resolve(cmd: &ResolveCmd, seed: u64) -> CliResult<bool> {
    match cmd {
        ResolveCmd::Build(args) => {
            let map: SimplicialMap = read_json(&args.map)?;
            let mode = match (args.mode.as_str(), &args.embedding) {
                ("nondegenerate", None) => Mode::Nondegenerate,
                ("nondegenerate", Some(_)) => return Err(invalid("--embedding only applies to --mode embedded")),
                ("embedded", Some(path)) => Mode::Embedded { embedding: read_json(path)? },
                ("embedded", None) => return Err(invalid("--mode embedded needs --embedding")),
                (other, _) => return Err(CliError::Invalid(format!("unknown mode `{other}` (expected nondegenerate or embedded)"))),
            };
            match build_resolution(&map, &mode, args.depth, seed) {
                Ok(res) => Report::new("resolve build", seed, args, true, &res).emit(args.out.as_deref()),
                Err(e @ (ResolutionError::Degenerate { .. } | ResolutionError::Exhausted { .. })) => {
                    let result = serde_json::json!({ "error": e.to_string() });
                    Report::new("resolve build", seed, args, false, result).emit(args.out.as_deref())
                }
                Err(e) => Err(invalid(e)),
            }
        }
        ResolveCmd::Ss(args) => {
            let f = field(&args.field)?;
            let (complex, res) = load_complex(&args.input)?;
            let pages = spectral_sequence(&complex, f);
            let equivalence = res.as_ref().filter(|r| r.finite_to_one).map(|r| check_resolution_equivalence(r, f));
            let levels = complex.level_table(f);
            let ok = pages.converged && pages.consistent && equivalence.as_ref().is_none_or(|e| e.holds);
            #[derive(Serialize)]
            struct Out<P, E, L> {
                spectral_sequence: P,
                level_homology: L,
                equivalence: Option<E>,
            }
            let result = Out { spectral_sequence: &pages, level_homology: &levels, equivalence };
            Report::new("resolve ss", seed, args, ok, result).emit(args.out.as_deref())
        }
        ResolveCmd::BettiTable(args) => {
            let f = field(&args.field)?;
            let table = betti_table(args.rmax, f, args.bound).map_err(|e: FoxNeuwirthError| invalid(e))?;
            let mut csv = Vec::new();
            table.write_csv(&mut csv).map_err(invalid)?;
            let csv = String::from_utf8(csv).expect("CSV is UTF-8");
            match &args.out {
                None => write_text(None, &csv).map(|_| true),
                Some(path) => {
                    write_text(Some(path), &csv)?;
                    Report::new("resolve betti-table", seed, args, true, &table).emit(None)
                }
            }
        }
    }
}

fn approx_fit(args: &crate::FitArgs, seed: u64) -> CliResult<bool> {
    let policy: PhasePolicy = args.policy.parse().map_err(CliError::Invalid)?;
    let samples: Vec<Sample> = read_json(&args.samples)?;
    let sampled = SampledMap::new(&samples).map_err(invalid)?;
    if let Some(kmax) = args.ladder {
        if args.boundary.is_some() || args.p.is_some() || args.q.is_some() {
            return Err(invalid("--ladder fixes (p, q) per rung and cannot be combined with --p, --q or --boundary"));
        }
        if kmax == 0 {
            return Err(invalid("--ladder needs kmax >= 1"));
        }
        let rungs = fit_ladder(&sampled, kmax, policy).map_err(invalid)?;
        let residuals: Vec<f64> = rungs.iter().map(|r| r.residual).collect();
        let non_increasing = ladder_non_increasing(&rungs, &sampled);
        #[derive(Serialize)]
        struct Out<'a, R> {
            residuals: &'a [f64],
            non_increasing: bool,
            rungs: R,
        }
        let result = Out { residuals: &residuals, non_increasing, rungs: &rungs };
        return Report::new("approx fit", seed, args, non_increasing, result).emit(args.out.as_deref());
    }
    let (Some(p), Some(q)) = (args.p, args.q) else {
        return Err(invalid("--p and --q are required unless --ladder is given"));
    };
    let report = match &args.boundary {
        Some(path) => {
            let boundary: Vec<PQPolynomial> = read_json(path)?;
            approximate_with_boundary(&sampled, &boundary, p, q, policy).map_err(invalid)?
        }
        None => fit_pq_map(&sampled, p, q, policy).map_err(invalid)?,
    };
    let ok = report.boundary_agreement != Some(false);
    Report::new("approx fit", seed, args, ok, &report).emit(args.out.as_deref())
}
