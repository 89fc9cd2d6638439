use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use serde::Serialize;
use thiserror::Error;
use wlp_core::complex::{
    builtin, cycle, parse_facet_file, write_facet_file, ComplexError, PseudomanifoldStatus, SimplicialComplex,
};
use wlp_core::gorenstein::{
    even_cycle_presentation, idealize as idealize_algebra, Certainty, GorensteinError, TildeDegreeReport,
};
use wlp_core::lefschetz::{
    criterion_degree1, criterion_top_degree, socle, wlp_full, wlp_full_with, wlp_in_degree_by_rank, AlgebraModel,
    DegreeReport, HilbertSeries, LefschetzError, Method, Verdict, WlpOptions, WlpReport,
};
use wlp_core::par::Exec;
use wlp_core::validate::{seeded_complex, validate_batch};

use crate::{GenerateArgs, Input, MethodArg};

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Gorenstein(#[from] GorensteinError),
    #[error("{0}")]
    Usage(String),
    #[error("internal disagreement: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Disagreement(_) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn verdict_exit(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(input: &Input) -> Result<SimplicialComplex> {
    match (&input.file, &input.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            Ok(parse_facet_file(&text)?)
        }
        (None, Some(name)) => Ok(builtin(name)?),
        (None, None) => Err(CliError::Usage("give a facet file or --builtin NAME".into())),
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        eprintln!("seed {DEFAULT_SEED} (default; pass --seed to change)");
        DEFAULT_SEED
    })
}

fn tuple(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default()
}

fn method_name(m: Method) -> String {
    serde_json::to_value(m).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default()
}

pub fn info(input: &Input) -> Result<ExitCode> {
    let c = load(input)?;
    let model = AlgebraModel::new(c.clone());
    let s = socle(&model);
    let skeleton = c.face_skeleton_graph();
    let comps = skeleton.components();
    println!("n            {}", c.vertex_count());
    println!("dimension    {}", c.dim());
    println!("facets       {}", c.facets().len());
    println!("f-vector     {}", c.f_vector());
    println!("hilbert      {}", HilbertSeries(&model.hilbert_function()));
    println!("pure         {}", if c.is_pure() { "yes" } else { "no" });
    println!("status       {}", c.pseudomanifold_status());
    println!("socle        degree {}, {}", s.degree, if s.level { "level" } else { "not level" });
    println!(
        "1-skeleton   {} vertices, {} edges, components {} ({} bipartite)",
        skeleton.vertex_count(),
        skeleton.edge_count(),
        comps.components.len(),
        comps.bipartite_count
    );
    if let Ok(dual) = c.dual_graph() {
        println!(
            "dual graph   {} vertices, {} edges, {}",
            dual.vertex_count(),
            dual.edge_count(),
            if dual.is_bipartite() { "bipartite" } else { "not bipartite" }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn trivial_report(model: &AlgebraModel, i: usize) -> DegreeReport {
    let (from, to) = (model.dim(i), model.dim(i + 1));
    DegreeReport {
        i,
        dim_from: from,
        dim_to: to,
        verdict: Verdict::holding(from, to),
        method: Method::Trivial,
        rank: Some(from.min(to)),
        certificate: None,
    }
}

/// The combinatorial decision at degree `i`, if some criterion covers it.
fn criterion_at(c: &SimplicialComplex, model: &AlgebraModel, i: usize) -> Option<Result<DegreeReport>> {
    let top = model.top_degree();
    if i == 0 || i == top {
        return Some(Ok(trivial_report(model, i)));
    }
    let deg1 = criterion_degree1(c);
    if i == 1 {
        return Some(Ok(deg1));
    }
    if i as isize == c.dim() {
        return Some(criterion_top_degree(c).map_err(|e| CliError::Usage(format!("degree {i}: {e}"))));
    }
    let cert = deg1.certificate.as_ref()?;
    cert.implies_all_degrees(deg1.verdict).then(|| {
        let mut r = trivial_report(model, i);
        r.method = Method::CriterionDeg1;
        r.rank = None;
        r.certificate = deg1.certificate.clone();
        Ok(r)
    })
}

pub fn check(input: &Input, degree: Option<usize>, method: MethodArg, json: bool, verbose: bool) -> Result<ExitCode> {
    let c = load(input)?;
    let model = AlgebraModel::new(c.clone());
    let top = model.top_degree();
    if let Some(i) = degree.filter(|&i| i > top) {
        return Err(CliError::Usage(format!("degree {i} out of range 0..={top}")));
    }
    let degrees: Vec<usize> = match degree {
        Some(i) => vec![i],
        None => (0..=top).collect(),
    };

    let mut notes: Vec<Option<String>> = vec![None; degrees.len()];
    let reports: Vec<DegreeReport> = match method {
        MethodArg::Rank => match degree {
            Some(i) => vec![wlp_in_degree_by_rank(&model, i)?],
            None => wlp_full(&model).degrees,
        },
        MethodArg::Criterion => degrees
            .iter()
            .map(|&i| {
                criterion_at(&c, &model, i).unwrap_or_else(|| {
                    Err(CliError::Usage(format!(
                        "no combinatorial criterion decides degree {i}; use --method rank or both"
                    )))
                })
            })
            .collect::<Result<_>>()?,
        MethodArg::Both => {
            let mut ranked = match degree {
                Some(i) => vec![wlp_in_degree_by_rank(&model, i)?],
                None => wlp_full_with(&model, WlpOptions { propagate: false, exec: Exec::default() }).degrees,
            };
            let mut disagreements = Vec::new();
            for (k, r) in ranked.iter_mut().enumerate() {
                match criterion_at(&c, &model, r.i) {
                    Some(Ok(crit)) => {
                        if crit.verdict != r.verdict {
                            disagreements.push(format!(
                                "degree {}: rank says {}, {} says {}",
                                r.i,
                                verdict_name(r.verdict),
                                method_name(crit.method),
                                verdict_name(crit.verdict)
                            ));
                        }
                        if crit.method != Method::Trivial {
                            notes[k] = Some(format!("{} agrees", method_name(crit.method)));
                        }
                        if r.certificate.is_none() {
                            r.certificate = crit.certificate;
                        }
                    }
                    Some(Err(_)) | None => notes[k] = Some("no criterion".into()),
                }
            }
            if !disagreements.is_empty() {
                return Err(CliError::Disagreement(disagreements.join("; ")));
            }
            ranked
        }
    };

    let report = WlpReport::assemble(&model, reports);
    if json {
        println!("{}", report.to_json());
    } else {
        print_report(&report, &notes, verbose);
    }
    Ok(verdict_exit(report.wlp))
}

fn print_report(report: &WlpReport, notes: &[Option<String>], verbose: bool) {
    println!("f-vector {}", tuple(&report.f_vector));
    for (d, note) in report.degrees.iter().zip(notes) {
        let mut how = match (d.method, d.rank) {
            (Method::Rank, Some(r)) => format!("rank {r}"),
            (m, Some(r)) => format!("{}, rank {r}", method_name(m)),
            (m, None) => method_name(m),
        };
        if let Some(n) = note {
            how = format!("{how}; {n}");
        }
        println!(
            "degree {}: {} -> {}  {:<16} ({how})",
            d.i,
            d.dim_from,
            d.dim_to,
            verdict_name(d.verdict)
        );
        if verbose {
            if let Some(cert) = &d.certificate {
                println!("    certificate {}", serde_json::to_string(cert).unwrap_or_default());
            }
        }
    }
    println!("WLP {}", if report.wlp { "holds" } else { "fails" });
}

#[derive(Serialize)]
struct IdealizeOutput<'a> {
    hilbert_function: Vec<usize>,
    trials: usize,
    seed: u64,
    failure_theorem_applies: bool,
    degrees: &'a [TildeDegreeReport],
    presentation: Option<Vec<String>>,
}

fn even_cycle_order(c: &SimplicialComplex) -> Option<usize> {
    let n = c.vertex_count() as usize;
    (n >= 4 && n % 2 == 0 && c.facets() == cycle(n).facets()).then_some(n / 2)
}

pub fn idealize(input: &Input, trials: usize, seed: Option<u64>, presentation: bool, json: bool) -> Result<ExitCode> {
    let c = load(input)?;
    let a = if presentation {
        Some(even_cycle_order(&c).ok_or_else(|| {
            CliError::Usage("--presentation needs an even cycle cycle(2a) with a >= 2".into())
        })?)
    } else {
        None
    };
    let seed = seed_or_default(seed);
    let tilde = idealize_algebra(&AlgebraModel::new(c.clone()))?;
    let reports = tilde.wlp_tilde_all(trials, seed, Exec::default())?;
    let holds = reports.iter().all(|r| r.verdict.holds());
    let theorem = tilde.failure_theorem_applies();
    let pres = a.map(even_cycle_presentation).transpose()?;

    if json {
        let out = IdealizeOutput {
            hilbert_function: tilde.hilbert_function(),
            trials,
            seed,
            failure_theorem_applies: theorem,
            degrees: &reports,
            presentation: pres.as_ref().map(|p| p.generators().map(|g| g.to_string()).collect()),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return Ok(verdict_exit(holds));
    }

    println!("hilbert function {}", tuple(&tilde.hilbert_function()));
    println!("socle degree     {}", tilde.socle_degree());
    if theorem {
        println!("base fails surjectivity at degree {}: failure there is forced", tilde.base_socle_degree() - 1);
    }
    if c.pseudomanifold_status() == PseudomanifoldStatus::WithoutBoundary {
        let bipartite = c.dual_graph().map(|g| g.is_bipartite()).unwrap_or(false);
        println!("closed pseudomanifold, dual graph {}", if bipartite { "bipartite" } else { "not bipartite" });
    }
    for r in &reports {
        let label = match (r.certainty, r.miss_probability) {
            (Certainty::DeterministicByTheorem, _) => "deterministic by theorem".to_string(),
            (Certainty::Probabilistic, Some(p)) => format!("probabilistic, miss probability <= {p:.1e}"),
            (Certainty::Probabilistic, None) => "probabilistic".to_string(),
        };
        println!(
            "degree {}: {} -> {}  {:<16} (max rank {} over {} forms; {label})",
            r.i,
            r.dim_from,
            r.dim_to,
            verdict_name(r.verdict),
            r.max_rank,
            r.ranks.len()
        );
    }
    println!("WLP {}", if holds { "holds" } else { "fails" });
    if let Some(p) = pres {
        let names: Vec<String> = p.facets.iter().enumerate().map(|(m, f)| format!("y{}={f}", m + 1)).collect();
        println!();
        println!("# {} quadrics; {}", p.generator_count(), names.join(" "));
        print!("{}", p.to_text());
    }
    Ok(verdict_exit(holds))
}

pub fn generate(args: &GenerateArgs) -> Result<ExitCode> {
    let mut c = if args.random {
        let m = args.vertices.expect("clap requires --vertices");
        if m == 0 {
            return Err(CliError::Usage("--vertices must be positive".into()));
        }
        if !(0.0..=1.0).contains(&args.p) {
            return Err(CliError::Usage("--p must lie in [0, 1]".into()));
        }
        let seed = seed_or_default(args.seed);
        seeded_complex(m, (!args.facet_set).then_some(args.p), seed)
    } else {
        load(&Input { file: args.file.clone(), builtin: args.builtin.clone() })?
    };
    for _ in 0..args.subdivide {
        c = c.barycentric_subdivision();
    }
    if let Some(k) = args.remove_facet {
        let count = c.facets().len();
        c = c
            .without_facet(k)
            .ok_or_else(|| CliError::Usage(format!("cannot remove facet {k} of {count}")))?;
    }
    print!("{}", write_facet_file(&c));
    Ok(ExitCode::SUCCESS)
}

pub fn validate(count: usize, max_vertices: usize, seed: Option<u64>, sequential: bool, json: bool) -> Result<ExitCode> {
    if max_vertices == 0 {
        return Err(CliError::Usage("--max-vertices must be positive".into()));
    }
    let seed = seed_or_default(seed);
    let exec = if sequential { Exec::Sequential } else { Exec::default() };
    let summary = validate_batch(count, max_vertices, seed, exec);
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    } else {
        println!(
            "complexes         {} ({} flag, {} facet sets), at most {} vertices, seed {}",
            summary.count, summary.flag_complexes, summary.facet_set_complexes, summary.max_vertices, summary.seed
        );
        println!("route checks      {}", summary.route_checks);
        println!("invariant checks  {}", summary.invariant_checks);
        println!("propagation cases {}", summary.propagation_cases);
        println!("disagreements     {}", summary.disagreements);
        println!("violations        {}", summary.invariant_violations);
        for f in &summary.failures {
            println!("sample {} {:?}: {:?}", f.index, f.facets, f);
        }
    }
    if summary.is_clean() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Disagreement(format!("{} complexes failed validation", summary.failures.len())))
    }
}
