use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use suboplex::betti::{betti_via_intervals, betti_via_mobius, cellular_resolution, verify_acyclic};
use suboplex::builders::{cube_complex, face_poset, formula_poset};
use suboplex::complex::{is_interval_cm, order_complex};
use suboplex::io::{ClassJson, Document, PosetJson};
use suboplex::oracle::{betti_oracle_with_cap, vc_oracle, ORACLE_MAX_ARITY};
use suboplex::{
    BettiTable, CmAssurance, Error, FieldSpec, FunctionClass, GroundSpec, Result, ShatterMethod,
    SimplicialComplex, SubsetPoset,
};

#[derive(Parser)]
#[command(name = "suboplex", version, about = "VC dimension, homological dimension and Betti numbers of Boolean function classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for interval-level parallelism (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// JSON file: poset, class, complex, cell complex, matroid or formula spec.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline builder: matroid:<json>, formula:<json>, cells:<json>, poset:<json>,
    /// class:<json>, cube:<d>, deltas:<n>, full:<n>.
    #[arg(long)]
    build: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Coefficient field: a prime or Q.
    #[arg(long, env = "SUBOPLEX_FIELD", default_value = "2")]
    field: FieldSpec,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    M2,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BettiMethod {
    /// Interval homology when intersection-closed, otherwise the oracle.
    Auto,
    Intervals,
    /// Möbius numbers; interval Cohen-Macaulayness is checked first.
    Mobius,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum VcMethod {
    Brute,
    Closure,
    /// Test every subset, without pruning.
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    /// The Alexander dual ideal, one generator per function.
    Dual,
    Suboplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleWhat {
    Betti,
    Reg,
    Vcdim,
}

#[derive(Subcommand)]
enum Command {
    /// VC dimension.
    Vcdim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "brute")]
        method: VcMethod,
    },
    /// Homological dimension (projective dimension of the dual ideal).
    Hdim {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "auto")]
        method: BettiMethod,
    },
    /// Betti table of the dual ideal.
    Betti {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "auto")]
        method: BettiMethod,
        #[arg(long, value_enum, default_value = "m2")]
        format: Format,
    },
    /// Möbius function of the support poset.
    Mobius {
        #[command(flatten)]
        common: Common,
        /// Lower endpoint as a bit string; needs --hi.
        #[arg(long, requires = "hi")]
        lo: Option<String>,
        #[arg(long, requires = "lo")]
        hi: Option<String>,
    },
    /// Minimal non-extendable partial functions.
    Extentures {
        #[command(flatten)]
        common: Common,
    },
    /// Shattered sets, or whether one set is shattered.
    Shatter {
        #[command(flatten)]
        common: Common,
        /// Bit string of the set to test.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "brute")]
        method: VcMethod,
    },
    /// Structural checks: intersection closure, Cohen-Macaulayness, acyclicity.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        interval_cm: bool,
        /// Verify the labeled order complex is a resolution.
        #[arg(long)]
        acyclic: bool,
        /// With --acyclic, test every multidegree instead of the realized labels.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Build a poset or class and print it as JSON.
    Build {
        #[command(flatten)]
        source: Source,
        #[arg(long = "as", value_enum, default_value = "poset")]
        output: BuildOutput,
    },
    /// Brute-force reference computations.
    Oracle {
        #[arg(value_enum)]
        what: OracleWhat,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "m2")]
        format: Format,
        #[arg(long, value_enum, default_value = "dual")]
        ideal: IdealKind,
        /// Largest number of variables (2n) the oracle accepts.
        #[arg(long, default_value_t = ORACLE_MAX_ARITY)]
        max_arity: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildOutput {
    Poset,
    Class,
}

/// An input reduced to what the analyses consume.
enum Loaded {
    Poset(SubsetPoset),
    Class(FunctionClass),
    Complex(SimplicialComplex),
}

impl Loaded {
    fn class(&self) -> Result<FunctionClass> {
        match self {
            Loaded::Poset(p) => FunctionClass::from_poset(p),
            Loaded::Class(c) => Ok(c.clone()),
            Loaded::Complex(_) => Err(Error::Invalid("expected a poset or class, got a simplicial complex".into())),
        }
    }

    fn poset(&self) -> Result<SubsetPoset> {
        match self {
            Loaded::Poset(p) => Ok(p.clone()),
            Loaded::Class(c) => Ok(c.support_poset()),
            Loaded::Complex(_) => Err(Error::Invalid("expected a poset or class, got a simplicial complex".into())),
        }
    }
}

fn from_document(doc: Document) -> Result<Loaded> {
    Ok(match doc {
        Document::Poset(p) => Loaded::Poset(p),
        Document::Class(c) => Loaded::Class(c),
        Document::Complex(k) => Loaded::Complex(k),
        Document::Cells(x) => Loaded::Poset(face_poset(&x)?),
        Document::Matroid(m) => Loaded::Poset(m.lattice_of_flats()?),
        Document::Formula(f) => Loaded::Poset(formula_poset(&f)?),
    })
}

fn parse_count(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("expected a number, got {s:?}")))
}

fn load(source: &Source) -> Result<Loaded> {
    if let Some(path) = &source.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        return from_document(Document::from_json(&text)?);
    }
    let spec = source.build.as_deref().unwrap_or_default();
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Invalid(format!("build spec must look like kind:argument, got {spec:?}")))?;
    match kind {
        "matroid" | "formula" | "cells" | "poset" | "class" => from_document(Document::from_json(arg)?),
        "cube" => Ok(Loaded::Poset(cube_complex(parse_count(arg)?)?)),
        "deltas" => Ok(Loaded::Class(FunctionClass::deltas(GroundSpec::new(parse_count(arg)?)?))),
        "full" => Ok(Loaded::Class(FunctionClass::full(GroundSpec::new(parse_count(arg)?)?))),
        _ => Err(Error::Invalid(format!("unknown build kind {kind:?}"))),
    }
}

fn betti(loaded: &Loaded, field: FieldSpec, method: BettiMethod) -> Result<BettiTable> {
    let class = loaded.class()?;
    let oracle = || betti_oracle_with_cap(&class.dual_ideal(), field, ORACLE_MAX_ARITY);
    match method {
        BettiMethod::Auto if class.is_intersection_closed() => betti_via_intervals(&class.support_poset(), field),
        BettiMethod::Auto | BettiMethod::Oracle => oracle(),
        BettiMethod::Intervals => betti_via_intervals(&class.support_poset(), field),
        BettiMethod::Mobius => betti_via_mobius(&class.support_poset(), CmAssurance::Check(field)),
    }
}

fn render(table: &BettiTable, format: Format) -> Result<String> {
    Ok(match format {
        Format::M2 => table.render_m2(),
        Format::Json => serde_json::to_string(&table.to_json())? + "\n",
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn shatter_method(m: VcMethod) -> ShatterMethod {
    match m {
        VcMethod::Closure => ShatterMethod::Closure,
        VcMethod::Brute | VcMethod::Oracle => ShatterMethod::Brute,
    }
}

fn run(cli: Cli) -> Result<String> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Vcdim { common, method } => {
            let c = load(&common.source)?.class()?;
            let d = match method {
                VcMethod::Oracle => vc_oracle(&c)?,
                m => c.vc_dimension_by(shatter_method(m))?,
            };
            Ok(format!("{d}\n"))
        }
        Command::Hdim { common, method } => {
            let t = betti(&load(&common.source)?, common.field, method)?;
            Ok(format!("{}\n", t.projective_dimension().unwrap_or(0)))
        }
        Command::Betti { common, method, format } => {
            render(&betti(&load(&common.source)?, common.field, method)?, format)
        }
        Command::Mobius { common, lo, hi } => {
            let p = load(&common.source)?.poset()?;
            let g = p.ground();
            if let (Some(lo), Some(hi)) = (lo, hi) {
                return Ok(format!("{}\n", p.mobius(g.parse(&lo)?, g.parse(&hi)?)?));
            }
            let mut out = String::new();
            for (i, j) in p.comparable_pairs() {
                let mu = p.mobius_index(i, j).expect("comparable");
                out += &format!("{} {} {mu}\n", g.format(p.element(i)), g.format(p.element(j)));
            }
            Ok(out)
        }
        Command::Extentures { common } => {
            let c = load(&common.source)?.class()?;
            let g = c.ground();
            Ok(c.extentures()?.iter().map(|f| f.format(g) + "\n").collect())
        }
        Command::Shatter { common, set, method } => {
            let c = load(&common.source)?.class()?;
            let g = c.ground();
            if let Some(set) = set {
                let shattered = c.is_shattered(g.parse(&set)?, shatter_method(method))?;
                return Ok(format!("{}\n", yes_no(shattered)));
            }
            let sets = c.shattered_sets_by(shatter_method(method))?;
            Ok(sets.iter().map(|&s| g.format(s) + "\n").collect())
        }
        Command::Check { common, interval_cm, acyclic, exhaustive } => {
            let field = common.field;
            let loaded = load(&common.source)?;
            if let Loaded::Complex(k) = &loaded {
                return Ok(format!("CM: {}; {}\n", yes_no(k.is_cohen_macaulay(field)), k.reduced_homology(field)));
            }
            let p = loaded.poset()?;
            let mut parts = Vec::new();
            let all = !interval_cm && !acyclic;
            if all {
                parts.push(format!("intersection-closed: {}", yes_no(p.is_intersection_closed())));
            }
            if all || interval_cm {
                parts.push(format!("interval-CM: {}", yes_no(is_interval_cm(&p, field))));
                parts.push(format!("CM: {}", yes_no(order_complex(&p).is_cohen_macaulay(field))));
            }
            if acyclic {
                let ok = verify_acyclic(&cellular_resolution(&p)?, field, exhaustive)?;
                parts.push(format!("acyclic: {}", yes_no(ok)));
            }
            Ok(parts.join("; ") + "\n")
        }
        Command::Build { source, output } => {
            let loaded = load(&source)?;
            let json = match output {
                BuildOutput::Poset => serde_json::to_string(&PosetJson::from_poset(&loaded.poset()?))?,
                BuildOutput::Class => serde_json::to_string(&ClassJson::from_class(&loaded.class()?))?,
            };
            Ok(json + "\n")
        }
        Command::Oracle { what, common, format, ideal, max_arity } => {
            let c = load(&common.source)?.class()?;
            let gens = match ideal {
                IdealKind::Dual => c.dual_ideal(),
                IdealKind::Suboplex => c.suboplex_ideal()?,
            };
            match what {
                OracleWhat::Betti => render(&betti_oracle_with_cap(&gens, common.field, max_arity)?, format),
                OracleWhat::Reg => {
                    let t = betti_oracle_with_cap(&gens, common.field, max_arity)?;
                    Ok(format!("{}\n", t.regularity().unwrap_or(0)))
                }
                OracleWhat::Vcdim => Ok(format!("{}\n", vc_oracle(&c)?)),
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap() { 2 } else { 1 })
        }
    }
}
