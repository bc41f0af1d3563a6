use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fracchrom::augment::{epsilon_full, phase5_exact, search_deficient};
use fracchrom::graph::{analyze, parse_graph, Graph};
use fracchrom::lp::{chi_f_exact, chi_f_upper_subcubic, verify_certificate, weighting_to_multiset, MultisetCertificate, DEFAULT_MAX_VERTICES};
use fracchrom::sampler::{monte_carlo, Context, Limits, Phase4Reading};
use fracchrom::scalar::{fmt_rational, ratio, Rational};
use fracchrom::two_factor::{select_two_factor, SelectOptions, TwoFactorJson};
use fracchrom::{Error, TwoFactor};

const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "fracchrom", version, about = "Fractional colouring of triangle-free subcubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for randomized commands; always echoed in the output.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Monte Carlo trials; selects sampling unless --exact is also given.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Force exact enumeration.
    #[arg(long, global = true)]
    exact: bool,
    /// Guard on the number of orientations enumerated.
    #[arg(long = "max-orient", default_value_t = 1 << 16, global = true)]
    max_orient: u64,
    /// Guard on enumeration branches.
    #[arg(long = "max-branches", default_value_t = 1 << 20, global = true)]
    max_branches: u64,
    /// Use this 2-factor (JSON from `two-factor`) instead of selecting one.
    #[arg(long = "two-factor", global = true)]
    two_factor: Option<PathBuf>,
    /// When feasibility is computed for Phase 4.
    #[arg(long = "phase4-feasibility", value_enum, default_value_t = Reading::Start, global = true)]
    phase4_feasibility: Reading,
    /// Fail validation unless the graph is cubic, triangle-free and bridgeless.
    #[arg(long = "require-cubic-triangle-free", global = true)]
    require_ctf: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reading {
    Start,
    Recompute,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report of a graph.
    Validate { path: PathBuf },
    /// The selected 2-factor as JSON.
    TwoFactor { path: PathBuf },
    /// Vertex marginals, deficiency data and the 11/32 verdict.
    Prob { path: PathBuf },
    /// Exact fractional chromatic number with a certificate.
    Chif { path: PathBuf },
    /// A 32/11 certificate for a triangle-free subcubic graph.
    Certify {
        path: PathBuf,
        /// Also write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One summary row per graph file in a directory.
    Corpus {
        dir: PathBuf,
        /// Also sample random cubic graphs looking for deficient vertices.
        #[arg(long)]
        search: bool,
        /// Vertex counts for the search.
        #[arg(long = "search-n", value_delimiter = ',', default_value = "10,12,14")]
        search_n: Vec<usize>,
        /// Samples per vertex count.
        #[arg(long, default_value_t = 200_000)]
        samples: u64,
    },
    /// Recount a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
}

enum Failure {
    Error(Error),
    Io(String),
    Rejected(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> std::result::Result<Graph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

impl Cli {
    fn limits(&self) -> Limits {
        Limits { max_orientations: self.max_orient, max_branches: self.max_branches }
    }

    fn reading(&self) -> Phase4Reading {
        match self.phase4_feasibility {
            Reading::Start => Phase4Reading::Start,
            Reading::Recompute => Phase4Reading::Recompute,
        }
    }

    fn two_factor_for(&self, g: &Graph) -> std::result::Result<TwoFactor, Failure> {
        match &self.two_factor {
            Some(p) => {
                let j: TwoFactorJson = serde_json::from_str(&read(p)?).map_err(Error::from)?;
                Ok(TwoFactor::from_json(g, &j)?)
            }
            None => Ok(select_two_factor(g, SelectOptions::default())?.two_factor),
        }
    }

    fn run(&self) -> Outcome {
        match &self.command {
            Command::Validate { path } => self.validate(path),
            Command::TwoFactor { path } => {
                let g = load_graph(path)?;
                let sel = select_two_factor(&g, SelectOptions::default())?;
                Ok(json!({
                    "two_factor": sel.two_factor.to_json(),
                    "cycles": sel.two_factor.num_cycles(),
                    "matchings_examined": sel.matchings_examined,
                    "qualifying": sel.qualifying,
                }))
            }
            Command::Prob { path } => self.prob(path),
            Command::Chif { path } => {
                let g = load_graph(path)?;
                let r = chi_f_exact(&g, DEFAULT_MAX_VERTICES)?;
                let cert = weighting_to_multiset(&r.primal)?;
                Ok(json!({
                    "n": g.n(),
                    "chi_f": fmt_rational(&r.value),
                    "dual": r.dual.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "certificate": cert.to_json(),
                    "verdict": verify_certificate(&g, &cert),
                }))
            }
            Command::Certify { path, out } => {
                let g = load_graph(path)?;
                let c = chi_f_upper_subcubic(&g, self.limits(), SelectOptions::default())?;
                let cert = c.certificate.to_json();
                if let Some(o) = out {
                    std::fs::write(o, serde_json::to_string_pretty(&cert).expect("json"))
                        .map_err(|e| Failure::Io(format!("{}: {e}", o.display())))?;
                }
                Ok(json!({
                    "n": g.n(),
                    "bound": fmt_rational(&c.certificate.k),
                    "reduction": c.reduction,
                    "leaves": c.leaves,
                    "verdict": c.verdict,
                    "certificate": cert,
                }))
            }
            Command::Corpus { dir, search, search_n, samples } => self.corpus(dir, *search, search_n, *samples),
            Command::Verify { graph, certificate } => {
                let g = load_graph(graph)?;
                let cert = MultisetCertificate::from_json(&read(certificate)?)?;
                let v = verify_certificate(&g, &cert);
                let out = json!({ "verdict": v });
                if v.valid {
                    Ok(out)
                } else {
                    Err(Failure::Rejected(out))
                }
            }
        }
    }

    fn validate(&self, path: &Path) -> Outcome {
        let g = load_graph(path)?;
        let rep = analyze(&g);
        let ok = rep.is_cubic_triangle_free_bridgeless();
        let out = json!({ "report": rep, "cubic_triangle_free_bridgeless": ok });
        if self.require_ctf && !ok {
            Err(Failure::Rejected(out))
        } else {
            Ok(out)
        }
    }

    fn prob(&self, path: &Path) -> Outcome {
        let g = load_graph(path)?;
        let tf = self.two_factor_for(&g)?;
        let records = epsilon_full(&g, &tf)?;
        let target = ratio(88, 256);
        if self.trials.is_some() && !self.exact {
            let trials = self.trials.unwrap_or(0);
            let ctx = Context::new(&g, &tf)?.with_reading(self.reading());
            let mc = monte_carlo(&ctx, trials, self.seed)?;
            let min = mc.frequency.iter().cloned().fold(f64::INFINITY, f64::min);
            return Ok(json!({
                "mode": "monte-carlo",
                "n": g.n(),
                "seed": self.seed,
                "trials": trials,
                "two_factor": tf.to_json(),
                "phase4_frequency": mc.frequency,
                "std_error": mc.std_error,
                "violations": mc.violations,
                "deficiency": records,
                "min_frequency": min,
                "target": fmt_rational(&target),
            }));
        }
        let rep = phase5_exact(&g, &tf, self.limits())?;
        let fmt = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        let phase4_ok = (0..g.n()).all(|u| rep.phase4_marginals[u] >= (ratio(88, 1) + &records[u].epsilon) / ratio(256, 1));
        let min = rep.outcome.marginals.iter().min().cloned().unwrap_or_else(|| ratio(1, 1));
        Ok(json!({
            "mode": "exact",
            "n": g.n(),
            "seed": self.seed,
            "two_factor": tf.to_json(),
            "phase4_marginals": fmt(&rep.phase4_marginals),
            "deficiency": records,
            "plan": rep.plan.to_json(),
            "plan_check": rep.plan.check(&g),
            "phase5_marginals": fmt(&rep.outcome.marginals),
            "phase4_bound_holds": phase4_ok,
            "min_marginal": fmt_rational(&min),
            "target": fmt_rational(&target),
            "meets_target": min >= target,
        }))
    }

    fn corpus(&self, dir: &Path, search: bool, search_n: &[usize], samples: u64) -> Outcome {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        files.sort();
        let mut rows = vec![];
        for f in files {
            let name = f.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let g = match load_graph(&f) {
                Ok(g) => g,
                Err(_) => {
                    rows.push(json!({ "file": name, "error": "unreadable graph" }));
                    continue;
                }
            };
            let rep = analyze(&g);
            let chi = (g.n() <= DEFAULT_MAX_VERTICES).then(|| chi_f_exact(&g, DEFAULT_MAX_VERTICES).map(|r| fmt_rational(&r.value)).ok()).flatten();
            let (mut min, mut deficient) = (None, None);
            if rep.is_cubic_triangle_free_bridgeless() {
                if let Ok(tf) = select_two_factor(&g, SelectOptions::default()).map(|s| s.two_factor) {
                    if let Ok(p) = phase5_exact(&g, &tf, self.limits()) {
                        min = p.outcome.marginals.iter().min().map(fmt_rational);
                        deficient = Some(p.plan.order.len());
                    }
                }
            }
            rows.push(json!({
                "file": name,
                "n": g.n(),
                "m": g.m(),
                "cubic": rep.is_cubic,
                "triangle_free": rep.is_triangle_free,
                "bridgeless": rep.is_bridgeless,
                "chi_f": chi,
                "min_marginal": min,
                "deficient": deficient,
            }));
        }
        let mut out = json!({ "rows": rows });
        if search {
            let reports = search_n.iter().map(|&n| search_deficient(n, samples, self.seed)).collect::<fracchrom::Result<Vec<_>>>()?;
            out["seed"] = json!(self.seed);
            out["search"] = json!(reports);
        }
        Ok(out)
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json"),
        Format::Text => match v {
            Value::Object(m) => m.iter().map(|(k, x)| format!("{k}: {x}")).collect::<Vec<_>>().join("\n"),
            other => other.to_string(),
        },
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ExplosionGuard { .. } | Error::TooLarge { .. } => 3,
        e if e.is_invariant_violation() => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("FRACCHROM_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.run() {
        Ok(v) => {
            println!("{}", render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(v)) => {
            println!("{}", render(&v, cli.format));
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
