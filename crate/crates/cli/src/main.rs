use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lamplighter_core::cbrank::{
    build_approach_sequence, classify_limit, q_level_closed_form, QTruncation,
};
use lamplighter_core::irs::{check_bound, psi_mix, IrsJson, LazyIRS};
use lamplighter_core::lamplighter::{
    converges_on_ball, phi_encoding, Convergence, QPoint, SubgroupTriple, TripleJson,
};
use lamplighter_core::modules::{
    construct_prescribed, count_submodules_formula, enumerate_submodules, exponent, r_value, rk_m,
};
use lamplighter_core::{selftest, Error};

#[derive(Parser)]
#[command(
    name = "lamplighter",
    version,
    about = "Subgroup-space computations for lamplighter groups"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Number of submodules of F_p[x]^k with quotient of dimension a.
    Count {
        p: u32,
        k: usize,
        a: usize,
        /// Also enumerate them and compare.
        #[arg(long)]
        enumerate: bool,
    },
    /// Invariants (s, e, rk, r, t_V, r_V) of a triple file.
    Invariants { file: PathBuf },
    /// A subgroup of R^n with exponent b and rank r at b.
    Construct {
        n: usize,
        b: usize,
        r: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Subgroups converging to a triple with a prescribed encoding.
    Approach {
        file: PathBuf,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        radius: i64,
        /// Defaults to 2·s.
        #[arg(long)]
        shift: Option<i64>,
    },
    /// Levels of a truncation of Q.
    #[command(alias = "cb-levels")]
    Cb {
        #[arg(long)]
        tmax: u64,
        #[arg(long)]
        prodmax: u64,
    },
    /// Exact distance between a measure and its block average.
    #[command(alias = "irs-approx")]
    Irs {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
    },
    /// Monte Carlo of the majority-set splice of two measures.
    #[command(alias = "irs-mix")]
    Mix {
        #[arg(long)]
        nai: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        window: String,
        /// Defaults to the point mass at the whole group.
        #[arg(long)]
        mu1: Option<PathBuf>,
        /// Defaults to the point mass at the trivial group.
        #[arg(long)]
        mu2: Option<PathBuf>,
    },
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long)]
        seed: u64,
    },
}

struct Report {
    body: String,
    pass: bool,
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_row(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_triple(path: &Path) -> anyhow::Result<SubgroupTriple> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        let j: TripleJson = serde_json::from_str(&text)?;
        SubgroupTriple::from_json(&j)
    } else {
        SubgroupTriple::parse(&text)
    };
    parsed.with_context(|| path.display().to_string())
}

fn read_measure(path: &Path) -> anyhow::Result<LazyIRS> {
    let j: IrsJson =
        serde_json::from_str(&read(path)?).with_context(|| path.display().to_string())?;
    Ok(LazyIRS::from_json(&j)?)
}

fn count(p: u32, k: usize, a: usize, enumerate: bool, format: Format) -> anyhow::Result<Report> {
    let formula = count_submodules_formula(p, k, a);
    let found = if enumerate {
        Some(enumerate_submodules(p, k, a)?.len())
    } else {
        None
    };
    let matches = found.map(|f| formula == f.into());
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.count/1",
            "p": p, "k": k, "a": a,
            "formula": formula.to_string(),
            "enumerated": found,
            "match": matches,
        })),
        Format::Csv => {
            let opt = |x: Option<String>| x.unwrap_or_default();
            String::from("p,k,a,formula,enumerated,match\n")
                + &csv_row(&[
                    p.to_string(),
                    k.to_string(),
                    a.to_string(),
                    formula.to_string(),
                    opt(found.map(|f| f.to_string())),
                    opt(matches.map(|m| m.to_string())),
                ])
        }
        Format::Text => match (found, matches) {
            (Some(f), Some(m)) => format!(
                "formula {formula}, enumerated {f}, {}\n",
                if m { "MATCH" } else { "MISMATCH" }
            ),
            _ => format!("{formula}\n"),
        },
    };
    Ok(Report {
        body,
        pass: matches != Some(false),
    })
}

fn invariants(file: &Path, format: Format) -> anyhow::Result<Report> {
    let v = read_triple(file)?;
    let inv = r_value(v.u())?;
    let t = v.s() / inv.e as u64;
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.invariants/1",
            "s": v.s(), "e": inv.e, "rk": inv.rk, "r": inv.r, "t_v": t, "r_v": inv.r,
        })),
        Format::Csv => format!(
            "s,e,rk,r,t_v,r_v\n{},{},{},{},{t},{}\n",
            v.s(),
            inv.e,
            inv.rk,
            inv.r,
            inv.r
        ),
        Format::Text => format!(
            "s={} e={} rk={} r={} t_V={t} r_V={}\n",
            v.s(),
            inv.e,
            inv.rk,
            inv.r,
            inv.r
        ),
    };
    Ok(Report { body, pass: true })
}

fn construct(n: usize, b: usize, r: usize, p: u32, format: Format) -> anyhow::Result<Report> {
    let u = construct_prescribed(n, b, r, p)?;
    let e = exponent(&u, b)?;
    let rk = rk_m(&u, b)?;
    let pass = e == b && rk == r;
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.construct/1",
            "n": n, "b": b, "r": r, "p": p,
            "gens": u.gens().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "e": e, "rk": rk, "verified": pass,
        })),
        Format::Csv => format!("n,b,r,p,e,rk,verified\n{n},{b},{r},{p},{e},{rk},{pass}\n"),
        Format::Text => format!("{}# e={e} rk_{b}={rk}\n", u.to_text()),
    };
    Ok(Report { body, pass })
}

fn approach(
    file: &Path,
    target: QPoint,
    count: usize,
    radius: i64,
    shift: Option<i64>,
    format: Format,
) -> anyhow::Result<Report> {
    let v = read_triple(file)?;
    let limit = phi_encoding(&v)?;
    let seq = build_approach_sequence(&v, target, count)?;
    let encodings = seq
        .iter()
        .map(phi_encoding)
        .collect::<Result<Vec<_>, _>>()?;
    let exact = encodings.iter().all(|q| *q == target);
    let shift = shift.unwrap_or(2 * v.s() as i64);
    let conv = converges_on_ball(|m| seq[m - 1].clone(), &v, radius, shift, count)?;
    let classification = classify_limit(&seq, &v)?;
    let pass = exact && conv.m0().is_some();
    let (stabilized, detail) = match &conv {
        Convergence::Stabilized { m0 } => (true, json!({ "m0": m0 })),
        Convergence::Failed {
            witness,
            in_limit,
            index,
        } => (
            false,
            json!({ "witness": witness.to_string(), "in_limit": in_limit, "index": index }),
        ),
    };
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.approach/1",
            "limit": limit,
            "target": target,
            "terms": seq.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "encodings_exact": exact,
            "convergence": { "radius": radius, "shift_bound": shift, "horizon": count, "stabilized": stabilized, "detail": detail },
            "classification": classification,
            "pass": pass,
        })),
        Format::Csv => {
            let mut s = String::from("index,t,r,equals_limit\n");
            for (i, (q, vm)) in encodings.iter().zip(&seq).enumerate() {
                let _ = writeln!(s, "{},{},{},{}", i + 1, q.t, q.r, *vm == v);
            }
            s
        }
        Format::Text => format!(
            "limit {limit}, target {target}, {} terms, encodings {}, {}\n",
            seq.len(),
            if exact { "exact" } else { "WRONG" },
            match conv.m0() {
                Some(m0) => format!("stabilizes on the ball at {m0}"),
                None => "does not stabilize on the ball".into(),
            }
        ),
    };
    Ok(Report { body, pass })
}

fn cb(tmax: u64, prodmax: u64, format: Format) -> anyhow::Result<Report> {
    let trunc = QTruncation::new(tmax, prodmax)?;
    trunc.poset()?;
    let levels = trunc.levels();
    let pass = levels
        .iter()
        .all(|&(q, l)| l as u64 == q_level_closed_form(q));
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.cb-levels/1",
            "tmax": tmax, "prodmax": prodmax,
            "points": levels.iter().map(|(q, l)| json!({
                "t": q.t, "r": q.r, "level": l, "closed_form": q_level_closed_form(*q)
            })).collect::<Vec<_>>(),
            "pass": pass,
        })),
        Format::Csv | Format::Text => {
            let mut s = String::from("t,r,level,closed_form\n");
            for (q, l) in &levels {
                let _ = writeln!(s, "{},{},{l},{}", q.t, q.r, q_level_closed_form(*q));
            }
            s
        }
    };
    Ok(Report { body, pass })
}

fn irs(mu: &Path, m: usize, j: usize, format: Format) -> anyhow::Result<Report> {
    if m == 0 {
        bail!("--m must be positive");
    }
    let mu = read_measure(mu)?;
    let report = check_bound(&mu, m, j)?;
    let mut grid: Vec<usize> = (1..).map(|k| 1usize << k).take_while(|&x| x < m).collect();
    grid.push(m);
    let trend = grid
        .iter()
        .map(|&x| check_bound(&mu, x, j))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.irs-approx/1",
            "measure": mu.to_json(),
            "report": report,
            "trend": trend,
            "pass": report.pass,
        })),
        Format::Csv => {
            let mut s = String::from(
                "m,j,tv,tv_float,literal_bound,conservative_bound,literal_held,pass\n",
            );
            for r in &trend {
                s += &csv_row(&[
                    r.m.to_string(),
                    r.j.to_string(),
                    r.tv.clone(),
                    r.tv_float.to_string(),
                    r.literal_bound.clone(),
                    r.conservative_bound.clone(),
                    r.literal_held.to_string(),
                    r.pass.to_string(),
                ]);
            }
            s
        }
        Format::Text => format!(
            "m={m} j={j}: TV {} ({:.6}); 2(j+1)/m = {} {}; 2j/m = {} {}\n",
            report.tv,
            report.tv_float,
            report.conservative_bound,
            if report.pass { "PASS" } else { "FAIL" },
            report.literal_bound,
            if report.literal_held {
                "held"
            } else {
                "failed"
            }
        ),
    };
    Ok(Report {
        body,
        pass: report.pass,
    })
}

fn parse_window(s: &str) -> anyhow::Result<(i64, i64)> {
    let (a, b) = s
        .split_once(',')
        .with_context(|| format!("window {s:?} is not A,B"))?;
    let (a, b) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("window {s:?} is empty");
    }
    Ok((a, b))
}

#[allow(clippy::too_many_arguments)]
fn mix(
    nai: usize,
    trials: u64,
    seed: u64,
    window: &str,
    mu1: Option<&Path>,
    mu2: Option<&Path>,
    format: Format,
) -> anyhow::Result<Report> {
    let (lo, hi) = parse_window(window)?;
    let mu1 = match mu1 {
        Some(p) => read_measure(p)?,
        None => LazyIRS::full(1, 2),
    };
    let mu2 = match mu2 {
        Some(p) => read_measure(p)?,
        None => LazyIRS::trivial(1, 2),
    };
    let out = psi_mix(&mu1, &mu2, nai, lo, hi, trials, seed)?;
    let r = &out.report;
    let body = match format {
        Format::Json => json_body(&json!({
            "schema": "lamplighter.irs-mix/1",
            "report": r,
            "empirical": out.empirical.to_json(),
            "target": out.target.to_json(),
            "pass": r.pass,
        })),
        Format::Csv => {
            String::from("n_ai,lo,hi,trials,seed,tv,tolerance,split_fraction,deviation_bound,asymmetry_exact,asymmetry_empirical,pass\n")
                + &csv_row(&[
                    r.n_ai.to_string(),
                    lo.to_string(),
                    hi.to_string(),
                    r.trials.to_string(),
                    r.seed.to_string(),
                    r.tv.to_string(),
                    r.tolerance.to_string(),
                    r.split_fraction.to_string(),
                    r.deviation_bound.to_string(),
                    r.asymmetry_exact.to_string(),
                    r.asymmetry_empirical.to_string(),
                    r.pass.to_string(),
                ])
        }
        Format::Text => format!(
            "n_ai={nai} window [{lo},{hi}]: TV {:.5} <= {:.5} {}\n",
            r.tv,
            r.deviation_bound,
            if r.pass { "PASS" } else { "FAIL" }
        ),
    };
    Ok(Report { body, pass: r.pass })
}

fn selftest_cmd(seed: u64, format: Format) -> Report {
    let report = selftest::run(seed);
    let body = match format {
        Format::Json => json_body(&serde_json::to_value(&report).expect("report serializes")),
        Format::Csv => {
            let mut s = String::from("id,title,pass\n");
            for o in &report.outcomes {
                let _ = writeln!(s, "{},{},{}", o.id, o.title, o.pass);
            }
            s
        }
        Format::Text => report.to_text(),
    };
    Report {
        body,
        pass: report.pass(),
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    let fmt = |default| cli.format.unwrap_or(default);
    Ok(match &cli.command {
        Command::Count { p, k, a, enumerate } => count(*p, *k, *a, *enumerate, fmt(Format::Text))?,
        Command::Invariants { file } => invariants(file, fmt(Format::Json))?,
        Command::Construct { n, b, r, p } => construct(*n, *b, *r, *p, fmt(Format::Text))?,
        Command::Approach {
            file,
            t,
            r,
            count,
            radius,
            shift,
        } => approach(
            file,
            QPoint::new(*t, *r)?,
            *count,
            *radius,
            *shift,
            fmt(Format::Json),
        )?,
        Command::Cb { tmax, prodmax } => cb(*tmax, *prodmax, fmt(Format::Csv))?,
        Command::Irs { mu, m, j } => irs(mu, *m, *j, fmt(Format::Json))?,
        Command::Mix {
            nai,
            trials,
            seed,
            window,
            mu1,
            mu2,
        } => mix(
            *nai,
            *trials,
            *seed,
            window,
            mu1.as_deref(),
            mu2.as_deref(),
            fmt(Format::Json),
        )?,
        Command::Selftest { seed } => selftest_cmd(*seed, fmt(Format::Text)),
    })
}

fn violation(command: &str, message: &str) {
    eprintln!(
        "{}",
        json!({ "schema": "lamplighter.violation/1", "command": command, "message": message })
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &report.body)
                    .with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{}", report.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                violation(cli_name(&cli), "a checked property does not hold");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if let Some(Error::Consistency(msg)) = e.downcast_ref::<Error>() {
                violation(cli_name(&cli), msg);
                return ExitCode::from(1);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cli_name(cli: &Cli) -> &'static str {
    match cli.command {
        Command::Count { .. } => "count",
        Command::Invariants { .. } => "invariants",
        Command::Construct { .. } => "construct",
        Command::Approach { .. } => "approach",
        Command::Cb { .. } => "cb",
        Command::Irs { .. } => "irs",
        Command::Mix { .. } => "mix",
        Command::Selftest { .. } => "selftest",
    }
}
