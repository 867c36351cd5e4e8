use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hombol::catalog::{self, CatalogError, CatalogParams, Sign};
use hombol::constructions::{self, ConstructionError};
use hombol::identity::{self, IdentityError, IdentitySuite};
use hombol::io;
use hombol::morphism::{self, ClassifyOptions, MorphismError};
use hombol::{HomAlgebra, ParseError, Rational, Scalar};

/// Exact checks and constructions for binary-ternary Hom-algebras.
#[derive(Parser)]
#[command(name = "hombol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra against a built-in suite or an identity file.
    Check {
        file: PathBuf,
        #[arg(long, conflicts_with = "identity", required_unless_present = "identity")]
        suite: Option<String>,
        #[arg(long)]
        identity: Option<PathBuf>,
        /// Read `A` as the twist raised to this power.
        #[arg(long = "twist-exp")]
        twist_exp: Option<u32>,
    },
    /// Twist along an endomorphism: (β^n∘∗, β^2n∘{}, β^n α).
    Twist {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// The nth derived Hom-algebra.
    Derive {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = constructions::DEFAULT_MAX_DERIVED)]
        max: u32,
    },
    /// Member n of the sequence (β^n∘∗, β^2n∘{}, β^(n+1)); β defaults to the twist.
    Seq {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Bol algebra of a Malcev algebra, optionally twisted along an endomorphism.
    Malcev2bol {
        file: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Self-morphism constraints, with an optional grid search.
    Morphisms {
        file: PathBuf,
        /// Comma-separated rationals, e.g. -1,0,1/2,1
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Parameter binding P=Q (repeatable).
        #[arg(long = "bind")]
        bind: Vec<String>,
        #[arg(long)]
        export: Option<PathBuf>,
        /// Also require θα = αθ.
        #[arg(long)]
        intertwine: bool,
    },
    /// Match the self-morphisms of a 2-dimensional algebra against the known families.
    Classify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Compare a derived catalog algebra with its published closed form.
    Crosscheck {
        name: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Emit {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// + or -
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Construction(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<MorphismError> for Failure {
    fn from(e: MorphismError) -> Self {
        match e {
            MorphismError::NotTwoDimensional(_) | MorphismError::ShapeMismatch { .. } => {
                Failure::Precondition(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<HomAlgebra, Failure> {
    with_path(path, io::parse_algebra(&read(path)?))
}

fn load_map(path: &Path, alg: &HomAlgebra) -> Result<hombol::LinearMap, Failure> {
    let doc = with_path(path, io::parse_map(&read(path)?))?;
    if doc.map.dim() != alg.dim() {
        return Err(Failure::Precondition(format!(
            "map has dimension {}, algebra has dimension {}",
            doc.map.dim(),
            alg.dim()
        )));
    }
    Ok(doc.map)
}

fn rational(text: &str) -> Result<Rational, Failure> {
    Scalar::parse_rational(text.trim()).map_err(|e| Failure::Usage(format!("`{text}`: {e}")))
}

fn grid_values(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',').map(rational).collect()
}

fn bindings(items: &[String]) -> Result<BTreeMap<String, Scalar>, Failure> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding `{item}` is not of the form P=Q")))?;
        out.insert(k.trim().to_string(), Scalar::from_rational(rational(v)?));
    }
    Ok(out)
}

fn catalog_params(p: &ParamArgs) -> Result<CatalogParams, Failure> {
    let opt = |s: &Option<String>| s.as_deref().map(rational).transpose();
    let sign = match p.sign.as_deref() {
        None => None,
        Some("+" | "plus") => Some(Sign::Plus),
        Some("-" | "minus") => Some(Sign::Minus),
        Some(other) => return Err(Failure::Usage(format!("sign must be + or -, got `{other}`"))),
    };
    Ok(CatalogParams { lambda: opt(&p.lambda)?, a: opt(&p.a)?, b: opt(&p.b)?, sign })
}

fn needs_sign(name: &str) -> bool {
    catalog::entries().iter().any(|e| e.name == name && e.needs_sign)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { file, suite, identity, twist_exp } => {
            let alg = load_algebra(&file)?;
            let suite = match (suite, identity) {
                (Some(name), _) => identity::builtin(&name)?,
                (None, Some(path)) => {
                    let name = path.file_stem().map_or("identities".into(), |s| s.to_string_lossy().into_owned());
                    IdentitySuite::parse(&name, &read(&path)?)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                (None, None) => return Err(Failure::Usage("one of --suite or --identity is required".into())),
            };
            let report = suite.check(&alg, twist_exp);
            println!("{report}");
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Twist { file, map, n } => {
            let alg = load_algebra(&file)?;
            let beta = load_map(&map, &alg)?;
            print!("{}", io::emit_algebra(&constructions::self_twist(&alg, &beta, n)?));
            Ok(0)
        }
        Command::Derive { file, n, max } => {
            let alg = load_algebra(&file)?;
            print!("{}", io::emit_algebra(&constructions::nth_derived_bounded(&alg, n, max)?));
            Ok(0)
        }
        Command::Seq { file, n, map } => {
            let alg = load_algebra(&file)?;
            let beta = match map {
                Some(p) => load_map(&p, &alg)?,
                None => alg.twist().clone(),
            };
            print!("{}", io::emit_algebra(&constructions::sequence_member(&alg, &beta, n)?));
            Ok(0)
        }
        Command::Malcev2bol { file, map } => {
            let alg = load_algebra(&file)?;
            let beta = map.map(|p| load_map(&p, &alg)).transpose()?;
            print!("{}", io::emit_algebra(&constructions::malcev_to_bol(&alg, beta.as_ref())?));
            Ok(0)
        }
        Command::Morphisms { file, grid, bind, export, intertwine } => {
            let alg = load_algebra(&file)?;
            let sys = morphism::generate_constraints(&alg, intertwine);
            let text = io::emit_constraints(&sys);
            match export {
                Some(path) => fs::write(&path, &text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            if let Some(g) = grid {
                let hits = morphism::grid_search(&sys, &grid_values(&g)?, &bindings(&bind)?)?;
                println!("grid solutions: {}", hits.len());
                for m in &hits {
                    println!("  {}", io::format_map_inline(m, alg.basis()));
                }
            }
            Ok(0)
        }
        Command::Classify { file, grid } => {
            let alg = load_algebra(&file)?;
            let mut opts = ClassifyOptions::default();
            if let Some(g) = grid {
                opts.grid = grid_values(&g)?;
            }
            println!("{}", morphism::classify_2dim(&alg, &opts)?);
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in catalog::entries() {
                let mut params: Vec<&str> = e.params.to_vec();
                if e.needs_sign {
                    params.push("sign");
                }
                println!("{:<6} params: {:<18} {}", e.name, params.join(", "), e.description);
            }
            Ok(0)
        }
        Command::Catalog { action: CatalogAction::Emit { name, params } } => {
            print!("{}", io::emit_algebra(&catalog::build(&name, &catalog_params(&params)?)?));
            Ok(0)
        }
        Command::Crosscheck { name, n, params } => {
            let base = catalog_params(&params)?;
            let variants = if base.sign.is_none() && needs_sign(&name) {
                vec![Sign::Plus, Sign::Minus].into_iter().map(|s| CatalogParams { sign: Some(s), ..base.clone() }).collect()
            } else {
                vec![base]
            };
            let mut all_match = true;
            for (i, p) in variants.iter().enumerate() {
                let report = catalog::cross_check(&name, n, p)?;
                if i > 0 {
                    println!();
                }
                println!("{report}");
                all_match &= report.all_match();
            }
            Ok(if all_match { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
