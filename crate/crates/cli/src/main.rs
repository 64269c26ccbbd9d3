use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use knotpos::bounds::{almost_positive_analysis, bounds_report, kawamura_bounds};
use knotpos::classify::{self, ClassifyOptions};
use knotpos::input::{self, InputEntry};
use knotpos::{khovanov, lee, Error};

#[derive(Parser)]
#[command(name = "knotpos", version, about = "Khovanov/Lee homology, the s-invariant and positivity certificates for link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagram statistics (writhe, Seifert circles, O±, ...).
    Stats(Common),
    /// Kawamura–Lobb and Kawamura bounds, Δ(D), homogeneity, canonical genus.
    Bounds(Common),
    /// Rational Khovanov homology table.
    Homology(Common),
    /// Lee homology dimensions per homological degree.
    Lee(Common),
    /// The s-invariant from the Lee filtration.
    S(Common),
    /// Full classification report.
    Classify(Common),
    /// Classify every entry of a corpus (JSON array); one JSON line per entry.
    Batch {
        #[command(flatten)]
        common: Common,
        /// Use the bundled fixture corpus instead of --input.
        #[arg(long)]
        builtin: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Input file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Input format, used when the JSON object has no "format" field.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Crossing cap (default 12 for homology, 10 for s and Lee).
    #[arg(long)]
    max_crossings: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    /// Cross-check the Jones polynomial against the Kauffman bracket.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pd,
    Braid,
    Band,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

impl Common {
    fn read_text(&self) -> anyhow::Result<String> {
        let mut text = String::new();
        if self.input == "-" {
            io::stdin().read_to_string(&mut text).context("reading stdin")?;
        } else {
            text = std::fs::read_to_string(&self.input).with_context(|| format!("reading {}", self.input))?;
        }
        Ok(text)
    }

    fn apply_format(&self, mut v: Value) -> anyhow::Result<Value> {
        if let (Some(f), Value::Object(map)) = (self.format, &mut v) {
            let name = match f {
                Format::Pd => "pd",
                Format::Braid => "braid",
                Format::Band => "band",
            };
            match map.get("format").and_then(Value::as_str) {
                None => {
                    map.insert("format".into(), name.into());
                }
                Some(given) if given != name => bail!(Error::Input(format!("--format {name} but input says {given}"))),
                _ => {}
            }
        }
        Ok(v)
    }

    fn entry(&self) -> anyhow::Result<InputEntry> {
        let v: Value = serde_json::from_str(&self.read_text()?).map_err(|e| Error::Input(e.to_string()))?;
        Ok(InputEntry::from_value(self.apply_format(v)?)?)
    }

    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            s_cap: self.max_crossings.unwrap_or(lee::DEFAULT_CROSSING_CAP),
            homology_cap: self.max_crossings.unwrap_or(khovanov::DEFAULT_CROSSING_CAP),
            oracle: self.oracle,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let invariant = e.downcast_ref::<Error>().is_some_and(Error::is_invariant);
            eprintln!("error: {e:#}");
            ExitCode::from(if invariant { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let common = match &cli.command {
        Command::Stats(c)
        | Command::Bounds(c)
        | Command::Homology(c)
        | Command::Lee(c)
        | Command::S(c)
        | Command::Classify(c) => c,
        Command::Batch { common, .. } => common,
    };
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| anyhow!(e))?;
    }
    let out = io::stdout();
    let mut out = out.lock();
    if let Command::Batch { common, builtin } = &cli.command {
        return batch(common, *builtin, &mut out);
    }
    let entry = common.entry()?;
    let d = entry.to_diagram()?;
    let value = match &cli.command {
        Command::Stats(_) => json!({"stats": d.stats(), "pd": d.pd_code()}),
        Command::Bounds(_) => {
            let mut v = json!({"bounds": bounds_report(&d)?, "kawamura": kawamura_bounds(&d)?});
            if d.negative_count() == 1 {
                v["almost_positive"] = serde_json::to_value(almost_positive_analysis(&d)?)?;
            }
            v
        }
        Command::Homology(c) => {
            let cap = c.max_crossings.unwrap_or(khovanov::DEFAULT_CROSSING_CAP);
            let h = khovanov::khovanov_homology(&d, cap)?;
            let mut v = khovanov::homology_json(&h);
            let jones = khovanov::jones_from_homology(&h)?;
            v["jones"] = jones.display_with("t", 2).into();
            if c.oracle {
                let agrees = khovanov::kauffman_bracket_oracle(&d)? == jones;
                if !agrees {
                    return Err(Error::Invariant("Jones polynomial disagrees with the bracket".into()).into());
                }
                v["oracle_agrees"] = agrees.into();
            }
            v
        }
        Command::Lee(c) => {
            let cap = c.max_crossings.unwrap_or(lee::DEFAULT_CROSSING_CAP);
            let h = lee::lee_homology(&d, cap)?;
            let by_degree: Vec<Value> = h.degrees().into_iter().map(|i| json!({"i": i, "rank": h.rank_at(i)})).collect();
            json!({"lee": by_degree, "total": h.total()})
        }
        Command::S(c) => {
            let cap = c.max_crossings.unwrap_or(lee::DEFAULT_CROSSING_CAP);
            lee::s_invariant(&d, cap)?.to_json()
        }
        Command::Classify(c) => serde_json::to_value(classify::classify_entry(&entry, &c.options())?)?,
        Command::Batch { .. } => unreachable!(),
    };
    match common.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?,
        Output::Table => write_table(&mut out, &value)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn batch(common: &Common, builtin: bool, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let entries: Vec<Value> = if builtin {
        classify::fixture_corpus().into_iter().map(serde_json::to_value).collect::<Result<_, _>>()?
    } else {
        input::parse_corpus(&common.read_text()?)?
            .into_iter()
            .map(|v| common.apply_format(v))
            .collect::<anyhow::Result<_>>()?
    };
    let items = classify::batch(&entries, &common.options());
    let mut worst = 0u8;
    if common.output == Output::Table {
        writeln!(out, "{:<28} {:>3} {:>4} {:>4} {:>4}  verdicts", "name", "#L", "s", "L", "U")?;
    }
    for item in &items {
        if let Err(e) = item {
            worst = worst.max(if e.kind == "invariant" { 2 } else { 1 });
        }
        match common.output {
            Output::Json => writeln!(out, "{}", classify::batch_item_json(item))?,
            Output::Table => writeln!(out, "{}", batch_row(item))?,
        }
    }
    Ok(ExitCode::from(worst))
}

fn batch_row(item: &classify::BatchItem) -> String {
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    match item {
        Ok(r) => {
            let verdicts: Vec<Value> = r.verdicts.iter().map(|v| json!(v.verdict)).collect();
            let verdicts: Vec<&str> = verdicts.iter().filter_map(Value::as_str).collect();
            format!(
                "{:<28} {:>3} {:>4} {:>4} {:>4}  {}",
                r.name.as_deref().unwrap_or("-"),
                r.components,
                opt(r.field("s")),
                opt(r.field("lower")),
                opt(r.field("upper")),
                verdicts.join(",")
            )
        }
        Err(e) => format!("{:<28} error ({}): {}", e.name.as_deref().unwrap_or("-"), e.kind, e.error),
    }
}

/// Flattened `key  value` rows; homology tables get an (i, j) grid.
fn write_table(out: &mut impl Write, v: &Value) -> io::Result<()> {
    if let Some(Value::Array(cells)) = v.get("bigraded") {
        let get = |c: &Value, k: &str| c[k].as_i64().unwrap_or(0);
        let is: Vec<i64> = cells.iter().map(|c| get(c, "i")).collect();
        let js: Vec<i64> = cells.iter().map(|c| get(c, "j")).collect();
        if let (Some(&i0), Some(&i1)) = (is.iter().min(), is.iter().max()) {
            let (j0, j1) = (*js.iter().min().unwrap(), *js.iter().max().unwrap());
            write!(out, "{:>5} |", "j\\i")?;
            for i in i0..=i1 {
                write!(out, "{i:>4}")?;
            }
            writeln!(out)?;
            for j in (j0..=j1).rev().filter(|j| (j - j0) % 2 == 0) {
                write!(out, "{j:>5} |")?;
                for i in i0..=i1 {
                    let r = cells.iter().find(|c| get(c, "i") == i && get(c, "j") == j).map(|c| get(c, "rank"));
                    match r {
                        Some(r) => write!(out, "{r:>4}")?,
                        None => write!(out, "{:>4}", ".")?,
                    }
                }
                writeln!(out)?;
            }
        }
        if let Some(j) = v.get("jones") {
            writeln!(out, "jones  {}", j.as_str().unwrap_or(""))?;
        }
        return Ok(());
    }
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, val) in rows {
        writeln!(out, "{k:<width$}  {val}")?;
    }
    Ok(())
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (n, x) in items.iter().enumerate() {
                flatten(&key(&n.to_string()), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
