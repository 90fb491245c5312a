use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use socle_core::group::{
    parse_group_expr, subgroup_lattice, Caps, GroupError, PermGroup, DEFAULT_MAX_LATTICE_ORDER,
    DEFAULT_MAX_ORDER, DEFAULT_MAX_SUBGROUPS,
};
use socle_core::oracle::{resolve_rows, run_suite, summary_table, OracleError, Suite};
use socle_core::poset::hasse_dot;
use socle_core::socle::{
    builtin_table, coprime_factorization_check, mobius_socle, parse_socle_spec,
    with_thousands_separators, SimpleGroupTable, SocleError,
};

/// Möbius numbers of subgroup lattices: closed forms for socles and brute
/// force for small permutation groups.
#[derive(Debug, Parser)]
#[command(name = "socle", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Largest group whose elements may be generated
    #[arg(long, global = true, env = "SOCLE_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,
    /// Largest group whose whole subgroup lattice may be enumerated
    #[arg(long, global = true, env = "SOCLE_MAX_LATTICE_ORDER", default_value_t = DEFAULT_MAX_LATTICE_ORDER as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_lattice_order: u64,
    /// Largest number of subgroups one enumeration may produce
    #[arg(long, global = true, env = "SOCLE_MAX_SUBGROUPS", default_value_t = DEFAULT_MAX_SUBGROUPS as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_subgroups: u64,
    /// JSON file of extra simple-group records
    #[arg(long, global = true, env = "SOCLE_TABLE")]
    table: Option<PathBuf>,
    /// Print integers with thousands separators
    #[arg(long, global = true)]
    pretty: bool,
}

impl Config {
    fn caps(&self) -> Caps {
        let to_usize = |v: u64| usize::try_from(v).unwrap_or(usize::MAX);
        Caps {
            max_order: to_usize(self.max_order),
            max_lattice_order: to_usize(self.max_lattice_order),
            max_subgroups: to_usize(self.max_subgroups),
        }
    }

    fn int(&self, v: &BigInt) -> String {
        if self.pretty {
            with_thousands_separators(v)
        } else {
            v.to_string()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Möbius number of a socle such as "C2 * A5^3 * A6^2"
    Socle {
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Möbius number of a group such as "S3*A5" from its full subgroup lattice
    Brute {
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Subgroup lattice of a group as a Hasse diagram or JSON
    Lattice {
        group: String,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Dot)]
        format: LatticeFormat,
    },
    /// Cross-check the closed forms against brute force
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the simple-group table after loading and validating it
    Table {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Cap(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Verification => 4,
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderCapExceeded { .. } | GroupError::EnumerationCapExceeded { .. } => {
                Failure::Cap(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<SocleError> for Failure {
    fn from(e: SocleError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn number(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn emit_line(text: &str) {
    emit(&format!("{text}\n"));
}

fn print_json(v: &Value) {
    emit_line(&v.to_string());
}

fn load_table(config: &Config) -> Result<SimpleGroupTable, Failure> {
    let mut table = builtin_table();
    if let Some(path) = &config.table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let rows = SimpleGroupTable::parse_rows(&text)?;
        table.merge(resolve_rows(rows, &config.caps())?)?;
    }
    Ok(table)
}

fn build_group(text: &str, caps: &Caps) -> Result<PermGroup, Failure> {
    Ok(parse_group_expr(text)?.build(caps.max_order)?)
}

fn cmd_socle(config: &Config, text: &str, format: Format) -> Result<(), Failure> {
    let table = load_table(config)?;
    let spec = parse_socle_spec(text, &table)?;
    let mu = mobius_socle(&spec);
    match format {
        Format::Text => emit_line(&config.int(&mu)),
        Format::Json => {
            let f = coprime_factorization_check(&spec);
            let blocks: Vec<Value> =
                f.blocks.iter().map(|b| json!({"block": b.label(), "mobius": number(&b.mobius)})).collect();
            let splits: Vec<Value> =
                f.splits.iter().map(|s| json!({"after": s.after, "reason": s.reason.tag()})).collect();
            print_json(&json!({
                "spec": spec.to_string(),
                "order": number(&spec.order()),
                "mobius": number(&mu),
                "blocks": blocks,
                "splits": splits,
            }));
        }
    }
    Ok(())
}

fn cmd_brute(config: &Config, text: &str, format: Format) -> Result<(), Failure> {
    let caps = config.caps();
    let group = build_group(text, &caps)?;
    let lattice = subgroup_lattice(&group, &caps)?;
    let mu = lattice.mobius_number();
    match format {
        Format::Text => emit_line(&config.int(&mu)),
        Format::Json => print_json(&json!({
            "group": group.name(),
            "order": group.order(),
            "subgroups": lattice.len(),
            "mobius": number(&mu),
        })),
    }
    Ok(())
}

fn cmd_lattice(config: &Config, text: &str, format: LatticeFormat) -> Result<(), Failure> {
    let caps = config.caps();
    let group = build_group(text, &caps)?;
    let lattice = subgroup_lattice(&group, &caps)?;
    let name = group.name().unwrap_or(text);
    match format {
        LatticeFormat::Dot => emit(&hasse_dot(lattice.poset(), name)),
        LatticeFormat::Json => {
            let subgroups: Vec<Value> = lattice
                .subgroups()
                .iter()
                .enumerate()
                .map(|(i, s)| json!({"index": i, "order": s.order(), "members": s.elements().collect::<Vec<_>>()}))
                .collect();
            let containments: Vec<[usize; 2]> = lattice
                .poset()
                .relation_pairs()
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| [a, b])
                .collect();
            print_json(&json!({
                "group": name,
                "order": group.order(),
                "subgroups": subgroups,
                "containments": containments,
            }));
        }
    }
    Ok(())
}

fn cmd_verify(config: &Config, suite: SuiteArg, format: Format) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Quick => Suite::Quick,
        SuiteArg::Full => Suite::Full,
    };
    let reports = run_suite(suite, &config.caps());
    match format {
        Format::Text => emit(&summary_table(&reports)),
        Format::Json => emit_line(&serde_json::to_string(&reports).expect("reports serialize")),
    }
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_table(config: &Config, format: Format) -> Result<(), Failure> {
    let table = load_table(config)?;
    match format {
        Format::Json => emit_line(&table.to_json()),
        Format::Text => {
            let rows: Vec<[String; 5]> = table
                .records()
                .iter()
                .map(|r| {
                    let source = serde_json::to_value(r.source).expect("source serializes");
                    [
                        r.name.clone(),
                        config.int(&r.order),
                        config.int(&r.mu),
                        config.int(&r.aut_order),
                        source.as_str().unwrap_or_default().to_owned(),
                    ]
                })
                .collect();
            let header = ["name", "order", "mu", "aut_order", "source"].map(String::from);
            let mut widths = header.clone().map(|h| h.len());
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
                emit_line(cells.join("  ").trim_end());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = &cli.config;
    let result = match &cli.command {
        Command::Socle { spec, format } => cmd_socle(config, spec, *format),
        Command::Brute { group, format } => cmd_brute(config, group, *format),
        Command::Lattice { group, format } => cmd_lattice(config, group, *format),
        Command::Verify { suite, format } => cmd_verify(config, *suite, *format),
        Command::Table { format } => cmd_table(config, *format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Cap(msg) => eprintln!("error: {msg}; raise the cap to proceed"),
                Failure::Verification => eprintln!("error: verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
