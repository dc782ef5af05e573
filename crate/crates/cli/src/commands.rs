use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use hopset_core::hierarchy::auto_k;
use hopset_core::verify::PairMode;
use hopset_core::{
    build_with_levels, derive_params, generate_graph, load_graph, size_stats, verify_emulator,
    verify_hopset, Error, Family, GraphFormat, Hopset, HopsetParams, LevelAssignment, PairSpec,
    SizeStats, WeightedGraph,
};
use serde::Serialize;

use crate::config::{
    BuildArgs, Command, EmulateArgs, FamilyName, Format, GenArgs, LevelCount, PairModeArg,
    StatsArgs, VerifyArgs,
};
use crate::{matrix, write_file, Failure};

pub fn run(command: &Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    let echo = command.to_json();
    let out = match command {
        Command::Gen(args) => gen(args, &echo),
        Command::Build(args) => build(args, &echo),
        Command::Verify(args) => verify(args, command),
        Command::Emulate(args) => emulate(args, command),
        Command::Stats(args) => stats(args),
        Command::Matrix(args) => matrix::run(args, command),
    };
    let (text, verdict) = match out {
        Ok(text) => (text, Ok(())),
        Err(Outcome::Failed(text, failure)) => (text, Err(failure)),
        Err(Outcome::Error(failure)) => return Err(failure),
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|source| Failure::Write {
            path: "<stdout>".into(),
            source,
        })?;
    verdict
}

/// A command either errors before producing output, or produces output and
/// still fails its check.
pub(crate) enum Outcome {
    Error(Failure),
    Failed(String, Failure),
}

impl<E: Into<Failure>> From<E> for Outcome {
    fn from(e: E) -> Self {
        Outcome::Error(e.into())
    }
}

type CmdResult = Result<String, Outcome>;

pub fn read_graph(path: &Path) -> Result<WeightedGraph, Error> {
    Ok(load_graph(path, GraphFormat::from_path(path))?.graph)
}

pub fn read_hopset(path: &Path) -> Result<Hopset, Error> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Hopset::parse(BufReader::new(file))
}

fn family_for(args: &GenArgs) -> Result<(Family, usize), Error> {
    let n = || args.n.ok_or_else(|| Error::Usage("--n is required".into()));
    Ok(match args.family {
        FamilyName::Path => (Family::Path, n()?),
        FamilyName::Grid => match (args.rows, args.cols) {
            (Some(rows), Some(cols)) => (Family::Grid { rows, cols }, rows * cols),
            (None, None) => (Family::square_grid(n()?)?, n()?),
            _ => return Err(Error::Usage("grids need both --rows and --cols".into())),
        },
        FamilyName::ErdosRenyi => (
            Family::ErdosRenyi {
                m: args
                    .m
                    .ok_or_else(|| Error::Usage("erdos-renyi needs --m".into()))?,
            },
            n()?,
        ),
        FamilyName::RandomGeometric => match args.radius {
            Some(radius) => (Family::RandomGeometric { radius }, n()?),
            None => (Family::geometric_with_degree(n()?, args.degree), n()?),
        },
    })
}

fn gen(args: &GenArgs, echo: &str) -> CmdResult {
    let (family, n) = family_for(args)?;
    let g = generate_graph(family, n, args.weights, args.seed)?;
    let text = format!("# run={echo}\n{}", g.to_edge_list_string());
    write_file(&args.out, &text)?;
    Ok(format!(
        "{} n={} m={} weights={} fingerprint={}\n",
        family,
        g.vertex_count(),
        g.edge_count(),
        args.weights,
        g.fingerprint()
    ))
}

fn size_table(params: Option<&HopsetParams>, stats: &SizeStats) -> String {
    let mut out = String::new();
    let (eps, r, beta) = match params {
        Some(p) => (p.epsilon.to_string(), p.r.to_string(), p.beta.to_string()),
        None => ("-".into(), "-".into(), "-".into()),
    };
    writeln!(
        out,
        "{:>3} {:>8} {:>6} {:>10} {:>10}",
        "k", "epsilon", "r", "beta", "|H|"
    )
    .unwrap();
    writeln!(
        out,
        "{:>3} {:>8} {:>6} {:>10} {:>10}",
        stats.k, eps, r, beta, stats.total
    )
    .unwrap();
    writeln!(
        out,
        "{:>5} {:>10} {:>14} {:>8}",
        "level", "edges", "bound", "ratio"
    )
    .unwrap();
    for l in &stats.levels {
        writeln!(
            out,
            "{:>5} {:>10} {:>14.1} {:>8.4}",
            l.level, l.edges, l.expected_bound, l.ratio
        )
        .unwrap();
    }
    out
}

fn build(args: &BuildArgs, echo: &str) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let n = g.vertex_count();
    let k = match args.k {
        LevelCount::Fixed(k) => k,
        LevelCount::Auto => auto_k(n as u64, args.k_offset)?,
    };
    let params = args.epsilon.map(|e| derive_params(k, e)).transpose()?;
    let levels = if n < 2 {
        LevelAssignment::from_levels(k, vec![0; n])?
    } else {
        LevelAssignment::sample(n, k, args.seed)?
    };
    let mut built = build_with_levels(&g, levels, args.method.into())?;
    built.hopset.seed = Some(args.seed);
    built.hopset.run_config = Some(echo.to_string());
    write_file(&args.out, &built.hopset.to_text())?;
    if let Some(path) = &args.levels_out {
        write_file(path, &built.levels.to_text())?;
    }
    Ok(size_table(
        params.as_ref(),
        &size_stats(&built.hopset, n, k),
    ))
}

fn pair_spec(mode: PairModeArg, count: usize, seed: u64, min_distance: Option<f64>) -> PairSpec {
    PairSpec {
        mode: match mode {
            PairModeArg::Uniform => PairMode::Uniform,
            PairModeArg::Stratified => PairMode::Stratified,
        },
        count,
        seed,
        min_distance,
    }
}

#[derive(Serialize)]
struct WithConfig<'a, T: Serialize> {
    config: &'a Command,
    #[serde(flatten)]
    report: &'a T,
}

fn emit(out: Option<&Path>, text: String) -> Result<String, Failure> {
    match out {
        Some(path) => write_file(path, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn verify(args: &VerifyArgs, command: &Command) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let h = read_hopset(&args.hopset)?;
    let params = derive_params(h.k, args.epsilon)?;
    let spec = pair_spec(args.pair_mode, args.pairs, args.seed, args.min_distance);
    let report = verify_hopset(&g, &h, &params, &spec)?;
    let body = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&WithConfig {
                config: command,
                report: &report,
            })
            .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report.pairs_csv(),
    };
    let mut text = emit(args.out.as_deref(), body)?;
    let a = &report.aggregate;
    let summary = format!(
        "pairs={} skipped={} violations={} below_exact={} max_stretch={} max_hops={} beta={} audit_mismatches={}\n",
        a.pairs_checked,
        a.pairs_skipped_unreachable,
        a.violations,
        a.below_exact,
        a.max_stretch.map_or("-".into(), |s| s.to_string()),
        a.max_hops_used.map_or("-".into(), |h| h.to_string()),
        params.beta,
        report.weight_audit.mismatches,
    );
    if args.out.is_some() {
        text.push_str(&summary);
    } else {
        eprint!("{summary}");
    }
    if report.passed && report.weight_audit.clean() {
        Ok(text)
    } else {
        Err(Outcome::Failed(
            text,
            Failure::Verification(summary.trim_end().to_string()),
        ))
    }
}

fn emulate(args: &EmulateArgs, command: &Command) -> CmdResult {
    let g = read_graph(&args.graph)?;
    let h = read_hopset(&args.hopset)?;
    let spec = pair_spec(
        PairModeArg::Uniform,
        args.pairs,
        args.seed,
        args.min_distance,
    );
    let report = verify_emulator(&g, &h, h.k, args.c, args.d_min, &spec)?;
    let body = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&WithConfig {
                config: command,
                report: &report,
            })
            .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("u,v,d,dist_h,additive,ratio,excluded\n");
            let opt = |x: Option<f64>| x.map_or_else(String::new, |v| v.to_string());
            for p in &report.pairs {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    p.u,
                    p.v,
                    p.d,
                    opt(p.dist_h),
                    opt(p.additive),
                    opt(p.ratio),
                    p.excluded
                )
                .unwrap();
            }
            s
        }
    };
    let mut text = emit(args.out.as_deref(), body)?;
    let summary = format!(
        "pairs={} excluded={} max_ratio={} c={} lower_bound_violations={} disconnected={}\n",
        report.pairs_checked,
        report.pairs_excluded,
        report.max_ratio.map_or("-".into(), |r| format!("{r:.4}")),
        report.c,
        report.lower_bound_violations,
        report.disconnected_in_h
    );
    if args.out.is_some() {
        text.push_str(&summary);
    } else {
        eprint!("{summary}");
    }
    if report.passed {
        Ok(text)
    } else {
        Err(Outcome::Failed(
            text,
            Failure::Verification(summary.trim_end().to_string()),
        ))
    }
}

fn stats(args: &StatsArgs) -> CmdResult {
    let h = read_hopset(&args.hopset)?;
    if let Some(path) = &args.graph {
        let g = read_graph(path)?;
        let found = g.fingerprint();
        if found != h.graph_fingerprint {
            return Err(Error::FingerprintMismatch {
                expected: h.graph_fingerprint.clone(),
                found,
            }
            .into());
        }
    }
    let params = args.epsilon.map(|e| derive_params(h.k, e)).transpose()?;
    let stats = size_stats(&h, h.n, h.k);
    Ok(match args.format {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct StatsOut<'a> {
                params: Option<&'a HopsetParams>,
                size: &'a SizeStats,
            }
            let mut s = serde_json::to_string_pretty(&StatsOut {
                params: params.as_ref(),
                size: &stats,
            })
            .expect("stats serialize");
            s.push('\n');
            s
        }
        Some(Format::Csv) => {
            let mut s = String::from("level,edges,expected_bound,ratio\n");
            for l in &stats.levels {
                writeln!(
                    s,
                    "{},{},{},{}",
                    l.level, l.edges, l.expected_bound, l.ratio
                )
                .unwrap();
            }
            s
        }
        None => {
            let mut s = String::new();
            if let Some(p) = &params {
                writeln!(s, "k epsilon epsilon' r h_0..h_k beta").unwrap();
                writeln!(s, "{}", p.summary_line()).unwrap();
            }
            s.push_str(&size_table(params.as_ref(), &stats));
            s
        }
    })
}
