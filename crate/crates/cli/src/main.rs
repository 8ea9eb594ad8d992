mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cohomotopy::cohomotopy::{compute_f1_for, Manifold, MIN_DIMENSION};
use cohomotopy::{load_complex, Error, GeneratorSpec, PipelineOptions};
use sha2::{Digest, Sha256};

use report::{report_json, report_text, validation_json, Input, Rendering};

const EXIT_VALIDATION: u8 = 1;
const EXIT_CROSSCHECK: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Inputs above this many facets need --allow-slow.
const SLOW_FACETS: usize = 100_000;

#[derive(Parser)]
#[command(name = "cohomotopy", version, about = "Cohomotopy groups of triangulated closed manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a standard triangulation, e.g. `generate rp 4 -o rp4.txt`.
    Generate {
        /// Family and parameters: sphere D | rp D | cross D | circle M | torus N |
        /// product A B | subdivide A | fixture NAME. `family:param` is one word.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the full pipeline on a facet file.
    Analyze {
        file: PathBuf,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        #[arg(long)]
        allow_slow: bool,
        #[arg(long)]
        skip_crosscheck: bool,
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Highest degree shown in the homology tables.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Check that a facet file is a closed connected pseudomanifold.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Generate { spec, output } => generate(&spec, output),
        Command::Analyze { file, json, text: _, allow_slow, skip_crosscheck, no_timing, threads, max_degree } => {
            if let Some(n) = threads {
                if n == 0 {
                    eprintln!("error: --threads must be positive");
                    return ExitCode::from(EXIT_USAGE);
                }
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            let flags = AnalyzeFlags { json, allow_slow, skip_crosscheck, timing: !no_timing, max_degree };
            analyze(&file, &flags)
        }
        Command::Verify { file, json } => verify(&file, json),
    }
}

fn generate(words: &[String], output: Option<PathBuf>) -> ExitCode {
    let spec = match GeneratorSpec::parse_words(words) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let complex = match spec.build() {
        Ok(c) => c.with_name(spec.to_string()),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let text = complex.to_facet_file();
    let written = match &output {
        Some(path) => fs::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Some(path) = output {
        eprintln!("wrote {} facets of {} to {}", complex.facets().len(), spec, path.display());
    }
    ExitCode::SUCCESS
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    fs::read_to_string(file).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", file.display());
        ExitCode::from(EXIT_USAGE)
    })
}

fn verify(file: &PathBuf, json: bool) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let complex = match load_complex(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("invalid facet file: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let v = complex.validate();
    if json {
        println!("{}", serde_json::to_string_pretty(&validation_json(&v)).expect("serializable"));
    } else {
        println!(
            "dimension {}, {} vertices, {} facets: {}",
            v.dimension,
            v.vertices,
            v.facets,
            if v.passed() { "closed connected pseudomanifold" } else { "FAILED" }
        );
        for violation in v.violations.iter().take(20) {
            println!("  {violation}");
        }
        if v.violations.len() > 20 {
            println!("  ... {} more", v.violations.len() - 20);
        }
    }
    if v.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VALIDATION)
    }
}

struct AnalyzeFlags {
    json: bool,
    allow_slow: bool,
    skip_crosscheck: bool,
    timing: bool,
    max_degree: Option<usize>,
}

fn analyze(file: &PathBuf, flags: &AnalyzeFlags) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let complex = match load_complex(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("invalid facet file: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let validation = complex.validate();
    if !validation.passed() || complex.dim() < MIN_DIMENSION {
        if flags.json {
            println!("{}", serde_json::to_string_pretty(&validation_json(&validation)).expect("serializable"));
        }
        if validation.passed() {
            eprintln!("validation failed: dimension {} is below {MIN_DIMENSION}", complex.dim());
        }
        for violation in validation.violations.iter().take(20) {
            eprintln!("validation failed: {violation}");
        }
        return ExitCode::from(EXIT_VALIDATION);
    }
    let facets = complex.facets().len();
    if facets > SLOW_FACETS && !flags.allow_slow {
        eprintln!(
            "refusing to analyze {facets} facets without --allow-slow; expected cost grows \
             faster than linearly (the 23k-facet RP^5 takes seconds, the 323k-facet RP^6 \
             a few minutes and about 3 GB, the 5M-facet RP^7 far more memory than that)"
        );
        return ExitCode::from(EXIT_USAGE);
    }
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let name = complex.name().map(str::to_owned);
    let options = PipelineOptions { skip_crosscheck: flags.skip_crosscheck };
    let result = Manifold::new(complex).and_then(|m| compute_f1_for(&m, options));
    let report = match result {
        Ok(r) => r,
        Err(e @ (Error::InvalidComplex(_) | Error::NoFundamentalClass(_))) => {
            eprintln!("validation failed: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
        Err(e) => {
            eprintln!("pipeline check failed: {e}");
            return ExitCode::from(EXIT_CROSSCHECK);
        }
    };
    let path = file.display().to_string();
    let input = Input { path: &path, sha256: digest, name: name.as_deref() };
    let rendering =
        Rendering { max_degree: flags.max_degree, timing: flags.timing, skipped_crosscheck: flags.skip_crosscheck };
    if flags.json {
        let doc = report_json(&input, &validation, &report, &rendering);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print!("{}", report_text(&input, &report, &rendering));
    }
    if report.all_checks_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CROSSCHECK)
    }
}
