use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bposit::FormatSpec;
use bposit_circuit::CircuitKind;
use bposit_cli::report::{build_all, export, render_table, rows};
use bposit_cli::sweep::write_csv;
use bposit_cli::zones::{count_patterns_enumerated, count_patterns_exhaustive};
use bposit_cli::{
    accuracy_sweep, convert, fuzz, golden_zone_stats, inspect, table, AnalysisError, Stat, SweepConfig,
};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bposit", version, about = "Inspect, sweep and fuzz b-posit, posit and IEEE formats")]
struct Cli {
    /// Emit JSON instead of text, including for errors.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Break words into fields and exact values.
    Inspect {
        #[arg(long)]
        format: FormatSpec,
        /// `0x…` hex or binary digits.
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Round decimal literals or fractions into a format.
    Convert {
        #[arg(long)]
        format: FormatSpec,
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// List every pattern of a small posit-family format in value order.
    Table {
        #[arg(long)]
        format: FormatSpec,
    },
    /// Decimals of accuracy per binade as CSV.
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        formats: Vec<FormatSpec>,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value = "worst")]
        stat: Stat,
        /// Binades `lo:hi` (half-open) in log2 of the magnitude.
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Golden zone, its share of patterns, and the fovea.
    Zones {
        #[arg(long)]
        format: FormatSpec,
        /// IEEE format of the same width by default.
        #[arg(long)]
        baseline: Option<FormatSpec>,
        /// Also count the patterns by decoding every word (N <= 24).
        #[arg(long)]
        verify: bool,
    },
    /// Gate count and depth of the decoder and encoder netlists.
    CircuitReport {
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<CircuitKind>,
        #[arg(long, value_delimiter = ',', default_values_t = [16u32, 32, 64])]
        widths: Vec<u32>,
        /// Write each netlist as JSON into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
        /// With --export, also write Graphviz files.
        #[arg(long)]
        dot: bool,
    },
    /// Compare fast, reference and netlist codecs on random words.
    Fuzz {
        #[arg(long, value_delimiter = ',', required = true)]
        formats: Vec<FormatSpec>,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if lo >= hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn run(cli: Cli) -> Result<ExitCode, AnalysisError> {
    let json = cli.json;
    match cli.command {
        Command::Inspect { format, words } => {
            let found = words.iter().map(|w| inspect(format, w)).collect::<Result<Vec<_>, _>>()?;
            if json {
                print_json(&serde_json::to_value(&found)?);
            }
            for i in found.iter().filter(|_| !json) {
                println!("{} {}  {}", i.format, i.word, i.fields);
                println!("  class {}  sign {}", i.class, i.sign as u8);
                if let (Some(r), Some(m)) = (i.regime, i.regime_size) {
                    println!("  regime {r} (size {m})");
                }
                if let Some(e) = i.exponent {
                    println!("  exponent {e}  fraction {}", i.fraction.as_deref().unwrap_or("-"));
                }
                println!("  value {} = {}", i.exact, i.decimal);
            }
        }
        Command::Convert { format, values } => {
            let done = values.iter().map(|v| convert(format, v)).collect::<Result<Vec<_>, _>>()?;
            if json {
                print_json(&serde_json::to_value(&done)?);
            }
            for c in done.iter().filter(|_| !json) {
                println!("{} -> {} {}  {}", c.input, c.format, c.word, c.fields);
                println!("  value {} = {}", c.exact, c.decimal);
                if let Some(err) = &c.relative_error {
                    println!("  relative error {err}");
                }
                if let Some(d) = c.decimals {
                    println!("  decimals {d:.4}");
                }
            }
        }
        Command::Table { format } => {
            let rows = table(format)?;
            if json {
                print_json(&serde_json::to_value(&rows)?);
            } else {
                let mut out = BufWriter::new(io::stdout().lock());
                for r in &rows {
                    writeln!(out, "{}  {}  {}  {}", r.word, r.fields, r.exact, r.decimal)?;
                }
                out.flush()?;
            }
        }
        Command::Sweep { formats, samples, stat, range, out } => {
            let config = SweepConfig { samples_per_binade: samples, seed: cli.seed, stat, range };
            let points = accuracy_sweep(&formats, &config)?;
            match out {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(&path)?);
                    write_csv(&mut f, &formats, &points, &config)?;
                    f.flush()?;
                    if json {
                        print_json(&json!({ "out": path.display().to_string(), "rows": points.len() }));
                    }
                }
                None => {
                    let mut f = BufWriter::new(io::stdout().lock());
                    write_csv(&mut f, &formats, &points, &config)?;
                    f.flush()?;
                }
            }
        }
        Command::Zones { format, baseline, verify } => {
            let baseline = match baseline {
                Some(b) => b,
                None => FormatSpec::ieee(format.n())?,
            };
            let z = golden_zone_stats(format, baseline)?;
            let (lo, hi) = z.golden_zone_log2;
            let exhaustive = if verify {
                let counted = count_patterns_exhaustive(&format, lo, hi)?;
                let enumerated = count_patterns_enumerated(&format, lo, hi);
                Some((counted, enumerated.to_string() == counted.to_string()))
            } else {
                None
            };
            if json {
                print_json(&json!({
                    "format": format.to_string(),
                    "baseline": baseline.to_string(),
                    "golden_zone_log2": [lo, hi],
                    "golden_zone_pattern_fraction": z.golden_zone_pattern_fraction.to_string(),
                    "golden_zone_pattern_fraction_f64": z.pattern_fraction_f64(),
                    "fovea_log2": [z.fovea_log2.0, z.fovea_log2.1],
                    "peak_decimals": z.peak_decimals,
                    "exhaustive_count": exhaustive.map(|e| e.0),
                    "exhaustive_agrees": exhaustive.map(|e| e.1),
                }));
            } else {
                println!("{format} against {baseline}");
                println!("  golden zone   [2^{lo}, 2^{hi})");
                println!(
                    "  pattern share {} = {:.6}",
                    z.golden_zone_pattern_fraction,
                    z.pattern_fraction_f64()
                );
                println!(
                    "  fovea         [2^{}, 2^{})  peak {:.4} decimals",
                    z.fovea_log2.0, z.fovea_log2.1, z.peak_decimals
                );
                if let Some((count, agrees)) = exhaustive {
                    println!(
                        "  exhaustive    {count} patterns, {}",
                        if agrees { "agrees" } else { "DISAGREES" }
                    );
                }
            }
            if exhaustive.is_some_and(|e| !e.1) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::CircuitReport { kinds, widths, export: dir, dot } => {
            let kinds = if kinds.is_empty() { CircuitKind::ALL.to_vec() } else { kinds };
            let built = build_all(&kinds, &widths)?;
            let table = rows(&built);
            let written = match &dir {
                Some(d) => export(&built, d, dot)?,
                None => Vec::new(),
            };
            if json {
                print_json(&json!({ "circuits": table, "exported": written }));
            } else {
                print!("{}", render_table(&table));
                for path in written {
                    println!("wrote {path}");
                }
            }
        }
        Command::Fuzz { formats, n } => {
            let reports = formats.iter().map(|&f| fuzz(f, n, cli.seed)).collect::<Result<Vec<_>, _>>()?;
            let failed = reports.iter().any(|r| r.mismatches() > 0);
            if json {
                print_json(&serde_json::to_value(&reports)?);
            } else {
                for r in &reports {
                    println!("{} (seed {})", r.format, r.seed);
                    for c in &r.checks {
                        let first =
                            c.first_mismatch.as_deref().map(|m| format!("  first {m}")).unwrap_or_default();
                        println!(
                            "  {:<30} {:>9} checked {:>6} mismatches{first}",
                            c.name, c.checked, c.mismatches
                        );
                    }
                }
            }
            if failed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let wants_json = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if wants_json && e.use_stderr() => {
            print_json(&json!({ "error": e.to_string().trim() }));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    let json = cli.json;
    match run(cli) {
        Ok(code) => code,
        Err(AnalysisError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if json {
                print_json(&json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
