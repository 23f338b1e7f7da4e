//! `tracegenus`: exact genus expansions, limit parameters and Monte Carlo
//! checks for traces of Gaussian random matrix words, reported as JSON.

mod report;

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use tracegenus::band::{alpha, alpha_cycle, band_clt_params, band_genus_expansion, BandConfig, ConstraintGraph};
use tracegenus::limits::{fc_moment_of_word, fuss_catalan, joint_trace_covariance, word_mixed_moment_limit, MixedIndex};
use tracegenus::montecarlo::{
    covariance_from_samples, parse_ensemble, squared_singular_moments, trace_samples, write_samples_csv,
    EnsembleKind, MCConfig, MomentEstimate,
};
use tracegenus::wick::{
    atom_free_expansion_with, brute_force_wick_oracle, genus_expansion_with, spherical_counts_with, Options,
    DEFAULT_MAX_LENGTH,
};
use tracegenus::{Error, LaurentPolynomial, Word};

use report::{diagnostic, error_json, exit_code, Report, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Parser)]
#[command(name = "tracegenus", version, about = "Exact and Monte Carlo moments of traces of random matrix words")]
struct Cli {
    /// Maximum total word length for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LENGTH)]
    max_length: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, coperiod, flags, spherical counts and CLT parameters of a word.
    Analyze { word: String },

    /// Genus expansion of E[∏ Tr(G_w)] as a Laurent polynomial in N.
    Expand {
        /// Words, as separate arguments or separated by commas.
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
        /// Expand the centered product (atom-free pairings only).
        #[arg(long)]
        centered: bool,
        /// Compare with entrywise Wick expansion at this N.
        #[arg(long, value_name = "N")]
        oracle: Option<usize>,
    },

    /// Fuss-Catalan moments, mixed-moment limits and joint trace variances.
    Limits {
        word: String,
        /// Squared singular value moments for k = 1..=K.
        #[arg(long, value_name = "K")]
        fc: Option<u32>,
        /// Mixed index a1,b1,a2,b2,...
        #[arg(long, value_delimiter = ',')]
        mixed: Option<Vec<u32>>,
        /// Largest power j in the joint variances E|Tr G_w^j|².
        #[arg(long, default_value_t = 3)]
        joint: u32,
    },

    /// Band matrix expansions and α coefficients.
    Band {
        word: Option<String>,
        #[arg(long = "N")]
        n: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        /// Report α coefficients (with --cycle).
        #[arg(long)]
        alpha: bool,
        /// Length of the cycle graph for --alpha.
        #[arg(long)]
        cycle: Option<u32>,
        /// Band CLT parameters of the word.
        #[arg(long)]
        clt: bool,
        /// Band ratio λ = lim b/N.
        #[arg(long)]
        lambda: Option<f64>,
    },

    /// Monte Carlo estimates of Tr(G_w), optionally checked against exact values.
    Simulate {
        word: String,
        /// gaussian, fourth, real, gue, goe, sparse:p=<p|sqrt>[,dist=fourth] or band:b=<b>.
        #[arg(long, default_value = "gaussian")]
        ensemble: String,
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to $TRACEGENUS_WORKERS or 1.
        #[arg(long, env = "TRACEGENUS_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Check the mean and the covariance against exact and limit values.
        #[arg(long)]
        check: bool,
        /// Check squared singular value moments k = 1..=K against Fuss-Catalan numbers.
        #[arg(long, value_name = "K")]
        check_fc: Option<u32>,
        /// Write per-sample traces to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// A library error together with the text that failed to parse, if any.
struct Failure {
    error: Error,
    source: Option<String>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, source: None }
    }
}

type Outcome = Result<Report, Failure>;

fn parse_word(text: &str) -> Result<Word, Failure> {
    Word::parse(text).map_err(|error| Failure {
        error,
        source: Some(text.to_string()),
    })
}

fn poly_json(p: &LaurentPolynomial) -> Value {
    json!({ "text": p.to_string(), "coefficients": p })
}

fn estimate_json(e: &MomentEstimate) -> Value {
    json!({ "mean_re": e.mean.re, "mean_im": e.mean.im, "stderr": e.stderr, "samples": e.samples })
}

fn z_verdict(report: &mut Report, name: &str, e: &MomentEstimate, target: f64, sigmas: f64) {
    let z = e.z_score(Complex64::new(target, 0.0));
    report.verdict(
        name,
        z <= sigmas,
        &format!("{sigmas} stderr"),
        json!({ "estimate": estimate_json(e), "target": target, "z": z }),
    );
}

fn analyze(argv: Vec<String>, opts: &Options, word: &str) -> Outcome {
    let w = parse_word(word)?;
    let mut r = Report::new("analyze", argv);
    r.input("word", w.to_string());
    r.exact("length", w.len());
    r.exact("coperiod", w.coperiod());
    r.exact("balanced", w.is_balanced());
    r.exact("star_free", w.is_star_free());
    r.exact("star_stable", w.is_star_stable());
    let s = r.time("spherical_counts", || spherical_counts_with(&w, opts))?;
    r.exact("spherical_counts", json!({ "a": s.a, "p": s.p, "b": s.b, "c": s.c }));
    let (b, c) = (s.b as i64, s.c as i64);
    r.exact(
        "clt",
        json!({
            "centering": format!("{}N + {}", s.a, s.p),
            "var_re": ratio(b + c, 2),
            "var_im": ratio(b - c, 2),
        }),
    );
    Ok(r)
}

fn ratio(num: i64, den: i64) -> String {
    num_rational::Ratio::new(num, den).to_string()
}

fn expand(argv: Vec<String>, opts: &Options, args: &[String], centered: bool, oracle: Option<usize>) -> Outcome {
    let words: Vec<Word> = args
        .iter()
        .flat_map(|a| a.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_word)
        .collect::<Result<_, _>>()?;
    let mut r = Report::new("expand", argv);
    r.input("words", words.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    r.input("centered", centered);
    let full = r.time("expansion", || genus_expansion_with(&words, opts))?;
    r.exact("expansion", poly_json(&full));
    if centered {
        let af = r.time("atom_free", || atom_free_expansion_with(&words, opts))?;
        r.exact("atom_free_expansion", poly_json(&af));
    }
    if let Some(n) = oracle {
        let exact = full.evaluate(n as i64);
        let direct = r.time("oracle", || brute_force_wick_oracle(&words, n))?;
        r.verdict(
            "oracle",
            exact == direct,
            "exact",
            json!({ "N": n, "expansion": exact.to_string(), "oracle": direct.to_string() }),
        );
    }
    Ok(r)
}

fn limits(argv: Vec<String>, word: &str, fc: Option<u32>, mixed: Option<Vec<u32>>, joint: u32) -> Outcome {
    let w = parse_word(word)?;
    let mut r = Report::new("limits", argv);
    r.input("word", w.to_string());
    if let Some(k) = fc {
        let s = w.len() as u32 + 1;
        let counts: Vec<u64> = r.time("fc", || (1..=k).map(|j| fc_moment_of_word(&w, j)).collect::<Result<_, _>>())?;
        let closed: Vec<String> = (1..=k).map(|j| fuss_catalan(s, j).to_string()).collect();
        r.exact("fuss_catalan", json!({ "s": s, "moments": counts, "closed_form": closed }));
    }
    if let Some(entries) = mixed {
        let idx = MixedIndex::new(entries.clone())?;
        let v = r.time("mixed", || word_mixed_moment_limit(&w, &idx))?;
        r.exact("mixed_moment", json!({ "index": entries, "limit": v }));
    }
    if w.is_star_free() && joint > 0 {
        let v = r.time("joint", || joint_trace_covariance(&w, joint))?;
        r.exact("joint_variances", json!(v));
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn band(
    argv: Vec<String>,
    word: Option<&str>,
    n: Option<u64>,
    b: Option<u64>,
    want_alpha: bool,
    cycle: Option<u32>,
    clt: bool,
    lambda: Option<f64>,
) -> Outcome {
    let mut r = Report::new("band", argv);
    let mut did_something = false;
    if want_alpha {
        let m = cycle.ok_or_else(|| Error::InvalidArgument("--alpha needs --cycle <m>".into()))?;
        r.input("cycle", m);
        r.exact("alpha_cycle", alpha_cycle(m));
        if let Some(l) = lambda {
            let e = r.time("alpha", || alpha(&ConstraintGraph::cycle(m as usize), l))?;
            r.input("lambda", l);
            r.exact("alpha", json!({ "value": e.value, "error": e.error }));
        }
        did_something = true;
    }
    let w = word.map(parse_word).transpose()?;
    if let Some(w) = &w {
        r.input("word", w.to_string());
    }
    if let (Some(w), Some(n), Some(b)) = (&w, n, b) {
        let cfg = BandConfig::new(n, b)?;
        r.input("N", n);
        r.input("b", b);
        let v = r.time("expansion", || band_genus_expansion(std::slice::from_ref(w), &cfg))?;
        r.exact(
            "expectation",
            json!({ "exact": v.to_string(), "approx": v.to_f64(), "l": cfg.l }),
        );
        did_something = true;
    }
    if clt {
        let w = w.as_ref().ok_or_else(|| Error::InvalidArgument("--clt needs a word".into()))?;
        let l = lambda.unwrap_or(0.0);
        r.input("lambda", l);
        let p = r.time("clt", || band_clt_params(w, l))?;
        r.exact("clt", json!({ "a": p.a, "b": p.b, "c": p.c, "error": p.error }));
        did_something = true;
    }
    if !did_something {
        return Err(Error::InvalidArgument("nothing to compute: give --N and --b, --alpha or --clt".into()).into());
    }
    Ok(r)
}

struct SimulateArgs {
    word: String,
    ensemble: String,
    n: usize,
    samples: usize,
    seed: u64,
    workers: usize,
    check: bool,
    check_fc: Option<u32>,
    csv: Option<PathBuf>,
}

fn simulate(argv: Vec<String>, opts: &Options, a: SimulateArgs) -> Outcome {
    let w = parse_word(&a.word)?;
    let spec = parse_ensemble(&a.ensemble, a.n)?;
    let cfg = MCConfig::with_workers(a.samples, a.seed, a.workers)?;
    let mut r = Report::new("simulate", argv);
    r.input("word", w.to_string());
    r.input("ensemble", spec.to_string());
    r.input("N", a.n);
    r.input("samples", a.samples);
    r.input("seed", a.seed);
    r.input("workers", a.workers);

    let ts = r.time("sampling", || trace_samples(std::slice::from_ref(&w), &spec, &cfg))?;
    let mean = MomentEstimate::from_samples(&ts);
    r.monte_carlo("trace", estimate_json(&mean));
    if let Some(path) = &a.csv {
        let file = File::create(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        write_samples_csv(BufWriter::new(file), &ts)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        r.input("csv", path.display().to_string());
    }

    let sparse = matches!(spec.kind, EnsembleKind::SparseComplex { p, .. } if p < 1.0);
    let sigmas = if sparse { 8.0 } else { 5.0 };
    let gaussian = matches!(
        spec.kind,
        EnsembleKind::GinibreComplex | EnsembleKind::GinibreReal | EnsembleKind::Gue | EnsembleKind::Goe
    );

    if a.check {
        if let EnsembleKind::BandComplex { b } = spec.kind {
            let lambda = b as f64 / a.n as f64;
            let p = r.time("band_clt", || band_clt_params(&w, lambda))?;
            let centering = p.a as f64 * a.n as f64;
            let l = spec.band_sites() as f64;
            let scaled: Vec<f64> = ts
                .iter()
                .map(|t| (t - centering).norm_sqr() * l / a.n as f64)
                .collect();
            let e = MomentEstimate::from_real(&scaled);
            r.exact("band_clt", json!({ "lambda": lambda, "b": p.b, "error": p.error }));
            r.monte_carlo("scaled_variance", estimate_json(&e));
            z_verdict(&mut r, "scaled_variance", &e, p.b, sigmas);
        } else {
            if gaussian {
                let poly = r.time("expansion", || genus_expansion_with(std::slice::from_ref(&w), opts))?;
                let exact = poly.evaluate(a.n as i64);
                r.exact("expectation", json!({ "polynomial": poly_json(&poly), "value": exact.to_string() }));
                z_verdict(&mut r, "mean", &mean, exact.to_f64().unwrap_or(f64::NAN), sigmas);
            }
            let s = r.time("spherical_counts", || spherical_counts_with(&w, opts))?;
            let centering = s.a as f64 * a.n as f64 + s.p as f64;
            let (var_re, var_im) = ((s.b + s.c) as f64 / 2.0, (s.b as f64 - s.c as f64) / 2.0);
            let cov = covariance_from_samples(&ts, centering);
            let target = [[var_re, 0.0], [0.0, var_im]];
            let z = cov.max_z_score(target);
            r.exact("clt", json!({ "centering": centering, "var_re": var_re, "var_im": var_im }));
            r.monte_carlo("covariance", json!({ "cov": cov.cov, "stderr": cov.stderr }));
            r.verdict(
                "covariance",
                z <= sigmas,
                &format!("{sigmas} jackknife stderr per entry"),
                json!({ "target": target, "max_z": z }),
            );
        }
    }

    if let Some(k) = a.check_fc {
        let s = w.len() as u32 + 1;
        let est = r.time("singular_moments", || squared_singular_moments(&w, k, &spec, &cfg))?;
        r.monte_carlo("singular_moments", est.iter().map(estimate_json).collect::<Vec<_>>());
        for (j, e) in est.iter().enumerate() {
            let target = fuss_catalan(s, j as u32 + 1).to_f64().unwrap_or(f64::NAN);
            z_verdict(&mut r, &format!("fuss_catalan_k{}", j + 1), e, target, sigmas);
        }
    }
    Ok(r)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Expand { .. } => "expand",
        Command::Limits { .. } => "limits",
        Command::Band { .. } => "band",
        Command::Simulate { .. } => "simulate",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    let opts = Options {
        max_length: cli.max_length,
    };
    let name = command_name(&cli.command);
    let outcome = match cli.command {
        Command::Analyze { word } => analyze(argv.clone(), &opts, &word),
        Command::Expand {
            words,
            centered,
            oracle,
        } => expand(argv.clone(), &opts, &words, centered, oracle),
        Command::Limits {
            word,
            fc,
            mixed,
            joint,
        } => limits(argv.clone(), &word, fc, mixed, joint),
        Command::Band {
            word,
            n,
            b,
            alpha,
            cycle,
            clt,
            lambda,
        } => band(argv.clone(), word.as_deref(), n, b, alpha, cycle, clt, lambda),
        Command::Simulate {
            word,
            ensemble,
            n,
            samples,
            seed,
            workers,
            check,
            check_fc,
            csv,
        } => simulate(
            argv.clone(),
            &opts,
            SimulateArgs {
                word,
                ensemble,
                n,
                samples,
                seed,
                workers,
                check,
                check_fc,
                csv,
            },
        ),
    };
    match outcome {
        Ok(report) => {
            let passed = report.passed();
            println!("{}", serde_json::to_string_pretty(&report.into_json()).unwrap());
            ExitCode::from(if passed { EXIT_OK } else { EXIT_CHECK_FAILED } as u8)
        }
        Err(Failure { error, source }) => {
            let j = error_json(name, argv, &error, source.as_deref());
            println!("{}", serde_json::to_string_pretty(&j).unwrap());
            eprintln!("{}", diagnostic(&error, source.as_deref()));
            ExitCode::from(exit_code(&error) as u8)
        }
    }
}
