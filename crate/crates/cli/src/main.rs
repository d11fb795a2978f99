use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use coxrank::classify::{basic_subsets, classify_components, find_base, Base};
use coxrank::eligibility::{blow_up_pivot, report, reports};
use coxrank::io::json::{BaseJson, BasesJson, ClassifyJson, EligibilityJson, EligibilityTableJson, RecordJson, SpectrumJson, SCHEMA};
use coxrank::io::{emit_cox, emit_dot, read_cox, DotView};
use coxrank::transforms::{blow_down_oriented, blow_up, normalize_for_blow_down, twist, TransformRecord};
use coxrank::{spectrum_with_seed, CoxeterMatrix, Error, Subset};

#[derive(Parser)]
#[command(name = "coxrank", version, about = "Analyze Coxeter presentations: bases, blow-downs, blow-ups and rank spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A `.cox` file.
    file: PathBuf,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Output {
    /// Write the new diagram to this `.cox` path and the records next to it
    /// as `.json`. Without it the diagram goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Type of each C-diagram component.
    Classify(Input),
    /// Basic subsets with their distinguished members.
    Bases(Input),
    /// Blow-down and blow-up verdicts per base.
    Eligibility(Input),
    /// k, l and the achievable ranks.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// Shuffle the script order (testing aid).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Blow down a base along a sink, twisting first if needed.
    Blowdown {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "MEMBERS")]
        base: String,
        /// Defaults to the first sink.
        #[arg(long)]
        sink: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Blow up a base at its pivot.
    Blowup {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "MEMBERS")]
        base: String,
        /// Defaults to the admissible pivot.
        #[arg(long)]
        pivot: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Elementary twist (S1, longest element of the base, S2).
    Twist {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "MEMBERS")]
        base: String,
        #[arg(long, value_name = "MEMBERS")]
        s1: String,
        #[arg(long, value_name = "MEMBERS")]
        s2: String,
        #[command(flatten)]
        output: Output,
    },
    /// Check the certificate of a record (or a list of records).
    Verify {
        record: PathBuf,
    },
    /// Graphviz text for one of the diagrams.
    Dot {
        file: PathBuf,
        #[arg(long, default_value = "c")]
        view: DotView,
    },
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn load(path: &Path) -> Result<CoxeterMatrix> {
    read_cox(path).with_context(|| format!("reading {}", path.display()))
}

fn base_arg(m: &CoxeterMatrix, list: &str) -> Result<Base> {
    let members = m.subset_from_list(list)?;
    match find_base(m, &members) {
        Some(b) => Ok(b),
        None => bail!("{{{list}}} is not a base"),
    }
}

fn joined(labels: &[String]) -> String {
    labels.join(",")
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn classify(input: &Input) -> Result<()> {
    let m = load(&input.file)?;
    if input.json {
        return print_json(&ClassifyJson::new(&m));
    }
    for (c, t) in classify_components(&m) {
        let t = match t {
            None => "infinite".to_string(),
            Some(t) => match t.alias() {
                Some(a) => format!("{t} (= {a})"),
                None => t.to_string(),
            },
        };
        println!("{}: {t}", joined(&m.subset_labels(&c)));
    }
    Ok(())
}

fn bases(input: &Input) -> Result<()> {
    let m = load(&input.file)?;
    let bases = basic_subsets(&m);
    if input.json {
        return print_json(&BasesJson {
            schema: SCHEMA,
            bases: bases.iter().map(|b| BaseJson::new(&m, b)).collect(),
        });
    }
    for b in &bases {
        let j = BaseJson::new(&m, b);
        let mut line = format!("{} {}", joined(&j.members), j.stype);
        if let Some([x, y]) = &j.split_ends {
            line += &format!(" split_ends={x},{y}");
        }
        if let Some(a) = &j.four_end {
            line += &format!(" four_end={a}");
        }
        println!("{line}");
    }
    Ok(())
}

fn eligibility(input: &Input) -> Result<()> {
    let m = load(&input.file)?;
    let rows: Vec<EligibilityJson> = reports(&m).iter().map(|r| EligibilityJson::new(&m, r)).collect();
    if input.json {
        return print_json(&EligibilityTableJson { schema: SCHEMA, reports: rows });
    }
    println!("base type cond1 cond2 cond3 sinks blow_down blow_up pivot");
    for r in &rows {
        println!(
            "{} {} {} {} {} {} {} {} {}",
            joined(&r.base.members),
            r.base.stype,
            opt(r.cond1),
            opt(r.cond2),
            opt(r.cond3),
            if r.sinks.is_empty() { "-".into() } else { joined(&r.sinks) },
            opt(Some(r.blow_down_eligible)),
            opt(Some(r.blow_up_eligible)),
            r.blow_up_pivot.as_deref().unwrap_or("-"),
        );
    }
    Ok(())
}

fn spectrum(input: &Input, seed: Option<u64>) -> Result<()> {
    let m = load(&input.file)?;
    let s = spectrum_with_seed(&m, seed)?;
    if input.json {
        return print_json(&SpectrumJson::new(&m, &s));
    }
    println!("{}", s.summary());
    for p in &s.matching {
        println!("blow-down {} sink {}", joined(&p.base.labels(&m)), m.label(p.sink));
    }
    for b in &s.blow_up_bases {
        println!("blow-up {}", joined(&b.labels(&m)));
    }
    Ok(())
}

fn write_result(input: &Input, out: &Output, script: &[TransformRecord]) -> Result<()> {
    let last = &script.last().expect("at least one record").output;
    let records: Vec<RecordJson> = script.iter().map(RecordJson::new).collect();
    let json = serde_json::to_string_pretty(&records)?;
    match &out.out {
        Some(path) => {
            fs::write(path, emit_cox(last)).with_context(|| format!("writing {}", path.display()))?;
            let jpath = path.with_extension("json");
            fs::write(&jpath, json + "\n").with_context(|| format!("writing {}", jpath.display()))?;
            println!("wrote {} and {}", path.display(), jpath.display());
        }
        None if input.json => println!("{json}"),
        None => print!("{}", emit_cox(last)),
    }
    Ok(())
}

fn blowdown(input: &Input, base: &str, sink: Option<&str>, out: &Output) -> Result<()> {
    let m = load(&input.file)?;
    let b = base_arg(&m, base)?;
    let rep = report(&m, &b);
    if !rep.blow_down_eligible {
        bail!("{{{base}}} ({}) does not satisfy the blow-down conditions", b.stype);
    }
    let r = match sink {
        Some(l) => {
            let g = m.gen(l)?;
            if !rep.sinks.contains(&g) {
                bail!("{l} is not a sink of {{{base}}}");
            }
            g
        }
        None => *rep.sinks.first().with_context(|| format!("{{{base}}} has no sink"))?,
    };
    let norm = normalize_for_blow_down(&m, &b)?;
    let r = match &norm.record {
        Some(t) => t
            .track_map(&Subset::from([r]))
            .map(|mp| mp[&r])
            .ok_or_else(|| Error::InternalInconsistency("sink lost by normalization".into()))?,
        None => r,
    };
    let down = blow_down_oriented(&norm.matrix, &norm.base, r, norm.x, norm.y)?;
    let script: Vec<TransformRecord> = norm.record.into_iter().chain([down]).collect();
    write_result(input, out, &script)
}

fn blowup(input: &Input, base: &str, pivot: Option<&str>, out: &Output) -> Result<()> {
    let m = load(&input.file)?;
    let b = base_arg(&m, base)?;
    let a = match pivot {
        Some(l) => m.gen(l)?,
        None => blow_up_pivot(&m, &b).with_context(|| format!("{{{base}}} ({}) cannot be blown up", b.stype))?,
    };
    let rec = blow_up(&m, &b, a)?;
    write_result(input, out, &[rec])
}

fn twist_cmd(input: &Input, base: &str, s1: &str, s2: &str, out: &Output) -> Result<()> {
    let m = load(&input.file)?;
    let rec = twist(&m, &m.subset_from_list(s1)?, &m.subset_from_list(s2)?, &m.subset_from_list(base)?)?;
    write_result(input, out, &[rec])
}

fn verify(path: &Path) -> Result<()> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let records: Vec<RecordJson> = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    for (i, r) in records.iter().enumerate() {
        if let Some(why) = r.check()? {
            return Err(Error::CertificationFailed(format!("record {i}: {why}")).into());
        }
    }
    println!("certificate holds ({} record{})", records.len(), if records.len() == 1 { "" } else { "s" });
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Classify(i) => classify(i),
        Command::Bases(i) => bases(i),
        Command::Eligibility(i) => eligibility(i),
        Command::Spectrum { input, seed } => spectrum(input, *seed),
        Command::Blowdown { input, base, sink, output } => blowdown(input, base, sink.as_deref(), output),
        Command::Blowup { input, base, pivot, output } => blowup(input, base, pivot.as_deref(), output),
        Command::Twist { input, base, s1, s2, output } => twist_cmd(input, base, s1, s2, output),
        Command::Verify { record } => verify(record),
        Command::Dot { file, view } => {
            print!("{}", emit_dot(&load(file)?, *view));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let lib = e.chain().find_map(|c| c.downcast_ref::<Error>());
            match lib {
                Some(err) => eprintln!("error [{}]: {e:#}", err.code()),
                None => eprintln!("error: {e:#}"),
            }
            if lib.is_some_and(Error::is_internal) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
