use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gensub::category::DEFAULT_HOM_CAP;
use gensub::classcat::build_class_category;
use gensub::construct::DEFAULT_NODE_CAP;
use gensub::laws::parse_suites;
use gensub::{
    construct, instantiation_functor, load_class_table, run_laws, skolem_template, yoneda_check, ConstructOptions,
    Error, ErrorKind, ExportOptions, GraphExport, Mutation, SourceText, ValidatedClassTable,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;

/// Generic subtyping with wildcards over small class tables.
#[derive(Parser)]
#[command(name = "gensub", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a class table and summarize it.
    Parse { file: PathBuf },
    /// Construct the subtyping order up to a depth and export it.
    Build {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Leave out the null type.
        #[arg(long)]
        no_null: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, value_parser = positive)]
        node_cap: usize,
        /// Only covering edges instead of the whole order.
        #[arg(long)]
        hasse: bool,
    },
    /// Run law suites against the constructed order.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Comma-separated subset of galois,monad,operad,oracle.
        #[arg(long, default_value = "galois,monad,operad,oracle")]
        laws: String,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP, value_parser = positive)]
        node_cap: usize,
        /// Print outcomes as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true, value_enum)]
        mutate: Option<MutateArg>,
    },
    /// Check the Yoneda correspondence for a class's instantiations.
    Yoneda {
        file: PathBuf,
        #[arg(long = "class")]
        class: String,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_HOM_CAP, value_parser = positive)]
        hom_cap: usize,
        /// List each transformation and the element it picks.
        #[arg(long)]
        witnesses: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateArg {
    ReversedLower,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Core(Error),
    Io(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn load(path: &Path) -> Result<ValidatedClassTable, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    let table = load_class_table(&SourceText::new(text, path.display().to_string()))?;
    Ok(table.with_name(name))
}

fn cmd_parse(file: &Path) -> Result<(), Failure> {
    let t = load(file)?;
    println!("table {}: {} classes", t.name(), t.classes().len());
    for c in t.classes() {
        let params: Vec<String> = (0..c.arity())
            .map(|j| format!("{} extends {}", c.params[j].name, c.params[j].bound))
            .collect();
        let head = if params.is_empty() {
            c.name.clone()
        } else {
            format!("{}<{}>", c.name, params.join(", "))
        };
        let sup = c.superclass.as_ref().map_or_else(|| "-".to_string(), |s| s.to_string());
        let flag = if c.f_bounded() { "  [f-bounded]" } else { "" };
        println!("  {head:<40} arity {}  super {sup}{flag}", c.arity());
    }
    Ok(())
}

fn cmd_build(
    file: &Path,
    depth: usize,
    format: Format,
    output: Option<&Path>,
    export: ExportOptions,
    opts: &ConstructOptions,
) -> Result<(), Failure> {
    let t = load(file)?;
    let g = construct(&t, depth, opts)?;
    let e = GraphExport::from_graph(&g, export);
    let text = match format {
        Format::Dot => e.to_dot(),
        Format::Json => e.to_json(),
    };
    for (d, (n, lt)) in g.level_sizes().into_iter().enumerate() {
        eprintln!("level {d}: {n} nodes, {lt} strict pairs");
    }
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|err| Failure::Io(format!("{}: {err}", p.display())))?;
            eprintln!("wrote {} nodes and {} edges to {}", e.nodes.len(), e.edges.len(), p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_check(
    file: &Path,
    depth: usize,
    laws: &str,
    json: bool,
    opts: &ConstructOptions,
    mutation: Option<Mutation>,
) -> Result<(), Failure> {
    let t = load(file)?;
    let suites = parse_suites(laws).map_err(|e| match e {
        Error::InvalidPresentation(m) => Failure::Io(m),
        e => Failure::Core(e),
    })?;
    let out = run_laws(&t, depth, &suites, opts, mutation)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
    } else {
        println!("table {} at depth {depth}", t.name());
        for o in &out {
            println!("{o}  ({:.2?})", o.elapsed);
            for ex in &o.examples {
                println!("    {ex}");
            }
        }
    }
    if out.iter().all(|o| o.passed()) {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn cmd_yoneda(file: &Path, class: &str, depth: usize, hom_cap: usize, witnesses: bool) -> Result<(), Failure> {
    let t = load(file)?;
    let template = skolem_template(&t, class)?;
    let f = instantiation_functor(&t, depth)?;
    let cat = build_class_category(&t, hom_cap)?;
    let r = yoneda_check(&cat, &f, class)?;
    println!("template       {template}");
    println!("placeholders   {}", template.vars.len());
    println!("instantiations {}", r.element_count);
    println!("|Nat|          {}", r.nat_count);
    println!("verdict        {r}");
    if witnesses {
        for (a, e) in &r.witnesses {
            println!("  {e}  <-  {a}");
        }
    }
    if r.cap_sensitive {
        return Err(Failure::Core(Error::CapExceeded(hom_cap)));
    }
    if r.holds() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Parse { file } => cmd_parse(file),
        Command::Build {
            file,
            depth,
            no_null,
            format,
            output,
            node_cap,
            hasse,
        } => cmd_build(
            file,
            *depth,
            *format,
            output.as_deref(),
            ExportOptions {
                no_null: *no_null,
                hasse: *hasse,
            },
            &ConstructOptions { node_cap: *node_cap },
        ),
        Command::Check {
            file,
            depth,
            laws,
            node_cap,
            json,
            mutate,
        } => cmd_check(
            file,
            *depth,
            laws,
            *json,
            &ConstructOptions { node_cap: *node_cap },
            mutate.map(|MutateArg::ReversedLower| Mutation::ReversedLowerEndpoint),
        ),
        Command::Yoneda {
            file,
            class,
            depth,
            hom_cap,
            witnesses,
        } => cmd_yoneda(file, class, *depth, *hom_cap, *witnesses),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => EXIT_INPUT,
                ErrorKind::Resource => EXIT_RESOURCE,
                ErrorKind::Unsupported => EXIT_UNSUPPORTED,
                ErrorKind::Internal => EXIT_VIOLATION,
            })
        }
    }
}
