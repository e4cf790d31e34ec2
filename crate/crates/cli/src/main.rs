mod error;
mod svg;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;

use sobolsep::digital::{prefix, GeneratorPair, PointSet};
use sobolsep::geometry::{mesh_ratio, separation_profile_of, Norm, DEFAULT_GRID_EXPONENT};
use sobolsep::io as fmt;
use sobolsep::theory::{
    lemmas, separation_formula, verify_range, EXHAUSTIVE_CEILING, FORMULA_ONLY_EXHAUSTIVE_MAX,
};

use error::{usage, CliError, Result};

/// Largest point set held in memory.
const MAX_POINTS: usize = 1 << 26;
const LEMMA_TRIALS: usize = 1000;
const CLOSE_PAIR_INSTANCES: usize = 10_000;

#[derive(Parser)]
#[command(name = "sobolsep", version, about = "Separation, covering and mesh ratio of 2D digital sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the first N points as `index,nx,ny,scale` CSV.
    Generate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Separation radius, certified covering interval and mesh-ratio interval.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "linf")]
        norm: Norm,
        /// Covering grid exponent: 4^k cell centers are evaluated.
        #[arg(short = 'k', default_value_t = DEFAULT_GRID_EXPONENT)]
        k: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Separation of every prefix Q_2 .. Q_N.
    Profile {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "linf")]
        norm: Norm,
        #[command(flatten)]
        out: Output,
    },
    /// Closed form against exhaustive search, plus randomized property suites.
    Verify {
        #[arg(long = "m-max", default_value_t = 14)]
        m_max: u32,
        /// Search every m exhaustively (the default).
        #[arg(long, conflicts_with = "formula_only")]
        exhaustive: bool,
        /// Check formula-side facts for all m, but search only m <= 14.
        #[arg(long = "formula-only")]
        formula_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Doubles the closed form before comparing (negative control).
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Log-log SVG of a separation or profile CSV.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Source {
    /// The Sobol' generators (identity, Pascal).
    #[arg(long, conflicts_with_all = ["matrices", "points"])]
    sobol: bool,
    /// Generator matrix file: `m`, then m rows of C1 and m rows of C2.
    #[arg(long, value_name = "PATH", conflicts_with = "points")]
    matrices: Option<PathBuf>,
    /// A point CSV produced by `generate`.
    #[arg(long, value_name = "PATH")]
    points: Option<PathBuf>,
    #[arg(short = 'm')]
    m: Option<u32>,
    /// Number of points; defaults to 2^m (or the whole file).
    #[arg(short = 'N')]
    n: Option<usize>,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

impl Source {
    fn generator(&self) -> Result<GeneratorPair> {
        if let Some(path) = &self.matrices {
            let g = fmt::parse_matrices(&read_file(path)?, &path.display().to_string())?;
            if self.m.is_some_and(|m| m != g.m()) {
                return usage(format!("-m disagrees with the matrix file (m = {})", g.m()));
            }
            return Ok(g);
        }
        if !self.sobol {
            return usage("choose a point source: --sobol, --matrices or --points");
        }
        let m = match (self.m, self.n) {
            (Some(m), _) => m,
            (None, Some(n)) if n >= 1 => (usize::BITS - (n - 1).leading_zeros()).max(1),
            _ => return usage("--sobol needs -m or -N"),
        };
        Ok(GeneratorPair::sobol(m)?)
    }

    fn describe(&self) -> String {
        if let Some(p) = &self.points {
            format!("points {}", p.display())
        } else if let Some(p) = &self.matrices {
            format!("matrices {}", p.display())
        } else {
            "sobol".to_string()
        }
    }

    fn load(&self) -> Result<PointSet> {
        if let Some(path) = &self.points {
            let ps = fmt::read_points(read_file(path)?.as_bytes(), &path.display().to_string())?;
            return match self.n {
                Some(n) => Ok(ps.head(n)?),
                None => Ok(ps),
            };
        }
        let g = self.generator()?;
        let n = match self.n {
            Some(n) => n,
            None if g.m() < usize::BITS - 1 => 1usize << g.m(),
            None => usize::MAX,
        };
        if n > MAX_POINTS {
            return Err(sobolsep::Error::Resource(format!(
                "{n} points exceed the in-memory limit of {MAX_POINTS}"
            ))
            .into());
        }
        Ok(prefix(&g, n)?)
    }
}

impl Output {
    fn open(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| {
                CliError::File {
                    path: p.display().to_string(),
                    source,
                }
            })?)),
            None => Box::new(io::stdout().lock()),
        })
    }

    /// Writes `<output>.meta` with provenance; data files stay free of it.
    fn sidecar(&self, lines: &[(&str, String)]) -> Result<()> {
        let Some(p) = &self.output else {
            return Ok(());
        };
        let mut path = p.clone().into_os_string();
        path.push(".meta");
        let mut text = format!("tool=sobolsep {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in lines {
            text.push_str(&format!("{k}={v}\n"));
        }
        std::fs::write(&path, text)?;
        Ok(())
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { source, out } => {
            let ps = source.load()?;
            fmt::write_points(out.open()?, &ps)?;
            out.sidecar(&[
                ("command", "generate".into()),
                ("source", source.describe()),
                ("provenance", ps.provenance().to_string()),
                ("N", ps.len().to_string()),
            ])
        }
        Command::Analyze {
            source,
            norm,
            k,
            out,
        } => {
            let ps = source.load()?;
            if ps.len() < 2 {
                return usage(format!("analyze needs at least 2 points, got {}", ps.len()));
            }
            let r = mesh_ratio(&ps, norm, k)?;
            fmt::write_table(out.open()?, &fmt::analysis_header(), [fmt::analysis_record(&r)])?;
            out.sidecar(&[
                ("command", "analyze".into()),
                ("source", source.describe()),
                ("provenance", ps.provenance().to_string()),
                ("norm", norm.to_string()),
                ("k", k.to_string()),
            ])
        }
        Command::Profile { source, norm, out } => {
            let ps = source.load()?;
            let rows = separation_profile_of(&ps, norm)?;
            fmt::write_table(
                out.open()?,
                &fmt::SEPARATION_HEADER,
                rows.iter().map(|e| fmt::profile_record(e, norm)),
            )?;
            out.sidecar(&[
                ("command", "profile".into()),
                ("source", source.describe()),
                ("provenance", ps.provenance().to_string()),
                ("norm", norm.to_string()),
            ])
        }
        Command::Verify {
            m_max,
            exhaustive: _,
            formula_only,
            seed,
            inject_fault,
            out,
        } => verify(m_max, formula_only, seed, inject_fault, &out),
        Command::Plot { input, out } => {
            let samples = fmt::read_radii(read_file(&input)?.as_bytes())?;
            let title = format!("Separation radius, {}", input.file_name().unwrap_or_default().to_string_lossy());
            out.open()?.write_all(svg::render(&samples, &title).as_bytes())?;
            Ok(())
        }
    }
}

fn verify(m_max: u32, formula_only: bool, seed: u64, inject_fault: bool, out: &Output) -> Result<()> {
    if m_max == 0 {
        return usage("--m-max must be at least 1");
    }
    let exhaustive_max = if formula_only {
        if m_max > sobolsep::MAX_SCALE {
            return usage(format!("--m-max must be at most {}", sobolsep::MAX_SCALE));
        }
        m_max.min(FORMULA_ONLY_EXHAUSTIVE_MAX)
    } else {
        if m_max > EXHAUSTIVE_CEILING {
            return usage(format!(
                "exhaustive search is limited to --m-max {EXHAUSTIVE_CEILING}; use --formula-only above it"
            ));
        }
        m_max
    };
    let faulty = |m: u32| separation_formula(m).map(|q| q.mul_pow2(1));
    let rows = if inject_fault {
        verify_range(m_max, exhaustive_max, &faulty)?
    } else {
        verify_range(m_max, exhaustive_max, &separation_formula)?
    };
    fmt::write_table(out.open()?, &fmt::VERIFY_HEADER, rows.iter().map(fmt::verify_record))?;

    let mut failures = 0;
    for row in rows.iter().filter(|r| !r.pass()) {
        let exhaustive = row.q_exhaustive.map(|q| q.to_string()).unwrap_or_else(|| "-".into());
        eprintln!(
            "FAIL m = {}: formula {}, exhaustive {}, witness ok {:?}, bounds {:?}",
            row.m(),
            row.q_formula,
            exhaustive,
            row.witness_ok,
            row.bounds
        );
        failures += 1;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for v in 1..=6 {
        for w in 0..v {
            if let Err(e) = lemmas::check_pascal_identities(v, w, LEMMA_TRIALS, &mut rng) {
                eprintln!("FAIL Pascal identities {e}");
                failures += 1;
            }
        }
    }
    if let Err(e) = lemmas::check_close_pairs(CLOSE_PAIR_INSTANCES, &mut rng) {
        eprintln!("FAIL close pairs {e}");
        failures += 1;
    }
    out.sidecar(&[
        ("command", "verify".into()),
        ("m_max", m_max.to_string()),
        ("exhaustive_max", exhaustive_max.to_string()),
        ("seed", seed.to_string()),
    ])?;
    if failures > 0 {
        return Err(CliError::Verify(failures));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sobolsep: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
