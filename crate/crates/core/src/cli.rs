//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when the input fails validation or a
//! computation rejects it, and 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{euler_phi, multiplicative_order};
use crate::catalog::{
    atlas_diff, build_atlas, classify_finite_heights, enumerate_quasidiagonal_weights,
    fermat_catalog, load_atlas, mirror_obstruction_flag, reference_hodge, save_atlas,
    write_spectra_csv, AtlasOptions, QuasiDiagonalRule, WeightRecord,
};
use crate::character::{enumerate_aset, find_alpha0, DEFAULT_CAP};
use crate::error::Result;
use crate::height::{
    height, reduce_alpha0, spectrum, Height, ResidueSpectrum, Witness, REPRESENTATIVES,
};
use crate::threefold::{validate, DelsarteThreefold, Family, Prime, WeightSystem};

/// Directory used for atlas files when no explicit path is given.
pub const ATLAS_DIR_ENV: &str = "DELSARTE_ATLAS_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "delsarte",
    version,
    about = "Formal-group heights of Delsarte Calabi-Yau threefolds"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Height of the formal group in characteristic p.
    Height {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'p', long = "prime")]
        p: u64,
    },
    /// Heights over every unit class modulo d_A.
    Spectrum {
        #[command(flatten)]
        input: Input,
        /// List every residue class instead of the grouped summary.
        #[arg(long)]
        all: bool,
    },
    /// Size of the character set and its counts by norm.
    Aset {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
    },
    /// The reduced norm-zero character (e, d_A, alpha_A).
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// List a weight catalog.
    Enumerate {
        #[command(flatten)]
        catalog: CatalogArgs,
        /// Write the catalog as JSON to this path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Finite heights occurring anywhere in a catalog.
    Classify {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Build or compare persisted atlases.
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
}

#[derive(Subcommand, Debug)]
enum AtlasAction {
    Build {
        #[command(flatten)]
        catalog: CatalogArgs,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Skip recomputing each reduced character from its exponent matrix.
        #[arg(long)]
        no_cross_check: bool,
    },
    Diff {
        left: PathBuf,
        right: PathBuf,
    },
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(value_enum)]
    family: CatalogFamily,
    /// How quasi-diagonal realizations are collapsed into entries.
    #[arg(long, default_value = "chain-roles", value_parser = parse_rule)]
    rule: QuasiDiagonalRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CatalogFamily {
    Fermat,
    Quasidiagonal,
}

impl CatalogFamily {
    fn tag(self) -> &'static str {
        match self {
            CatalogFamily::Fermat => "fermat",
            CatalogFamily::Quasidiagonal => "quasidiagonal",
        }
    }
}

impl CatalogArgs {
    fn records(&self) -> Vec<WeightRecord> {
        match self.family {
            CatalogFamily::Fermat => fermat_catalog(),
            CatalogFamily::Quasidiagonal => enumerate_quasidiagonal_weights(self.rule),
        }
    }

    fn rule(&self) -> Option<QuasiDiagonalRule> {
        (self.family == CatalogFamily::Quasidiagonal).then_some(self.rule)
    }

    fn file_stem(&self) -> String {
        match self.rule() {
            Some(r) => format!("{}-{}", self.family.tag(), r.tag()),
            None => self.family.tag().to_string(),
        }
    }
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("source").required(true).args(["fermat", "quasidiagonal", "input"])))]
struct Input {
    /// Fermat weights q0,..,q4.
    #[arg(long, value_parser = parse_five)]
    fermat: Option<[u64; 5]>,
    /// Quasi-diagonal weights q0,..,q4; requires --exponents.
    #[arg(long, value_parser = parse_five, requires = "exponents")]
    quasidiagonal: Option<[u64; 5]>,
    /// Path to a threefold document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Exponents m0,..,m4 of x0^m0 x1 + x1^m1 + x2^m2 + x3^m3 + x4^m4.
    #[arg(long, value_parser = parse_five, requires = "quasidiagonal", conflicts_with_all = ["fermat", "input"])]
    exponents: Option<[u64; 5]>,
}

fn parse_five(s: &str) -> std::result::Result<[u64; 5], String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into()
        .map_err(|v: Vec<u64>| format!("expected 5 comma-separated integers, got {}", v.len()))
}

fn parse_rule(s: &str) -> std::result::Result<QuasiDiagonalRule, String> {
    QuasiDiagonalRule::parse(s).map_err(|e| e.to_string())
}

impl Input {
    fn threefold(&self, notes: &mut dyn Write) -> Result<DelsarteThreefold> {
        let x = if let Some(w) = self.fermat {
            DelsarteThreefold::from_fermat(WeightSystem::calabi_yau(w))?
                .with_reference_hodge(reference_hodge(w))
        } else if let (Some(w), Some(e)) = (self.quasidiagonal, self.exponents) {
            DelsarteThreefold::from_quasidiagonal(WeightSystem::calabi_yau(w), e)?
                .with_reference_hodge(reference_hodge(w))
        } else if let Some(path) = &self.input {
            DelsarteThreefold::from_json(&std::fs::read_to_string(path)?)?
        } else {
            unreachable!("clap requires one input source")
        };
        if x.family() == Family::General {
            let _ = writeln!(
                notes,
                "note: quasi-smoothness of a general exponent matrix is not checked; results assume it"
            );
        }
        Ok(x)
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    match &cli.command {
        Command::Height { input, p } => {
            let x = input.threefold(err)?;
            let p = Prime::new(*p)?;
            let report = validate(&x, Some(p));
            if !report.is_ok() {
                for m in report.messages() {
                    writeln!(err, "invalid: {m}")?;
                }
                return Ok(1);
            }
            cmd_height(&x, p, fmt, out)?;
        }
        Command::Spectrum { input, all } => {
            let x = input.threefold(err)?;
            check_valid(&x, err)?;
            let rc = reduce_alpha0(&find_alpha0(&x)?)?;
            print_spectrum(&x, &spectrum(&rc), *all, fmt, out)?;
        }
        Command::Aset { input, cap } => {
            let x = input.threefold(err)?;
            check_valid(&x, err)?;
            let s = enumerate_aset(&x, *cap)?.summary();
            match fmt {
                Format::Json => emit_json(out, &s)?,
                Format::Csv => {
                    writeln!(out, "modulus,count,norm0,norm1,norm2,norm3")?;
                    let g = s.graded_counts;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        s.modulus, s.count, g[0], g[1], g[2], g[3]
                    )?;
                }
                Format::Table => {
                    writeln!(out, "threefold  {}", x.weights())?;
                    writeln!(out, "modulus    {}", s.modulus)?;
                    writeln!(out, "count      {}", s.count)?;
                    for (k, c) in s.graded_counts.iter().enumerate() {
                        writeln!(out, "norm {k}     {c}")?;
                    }
                }
            }
        }
        Command::Reduce { input } => {
            let x = input.threefold(err)?;
            check_valid(&x, err)?;
            let rc = reduce_alpha0(&find_alpha0(&x)?)?;
            match fmt {
                Format::Json => emit_json(out, &rc)?,
                Format::Csv => {
                    writeln!(out, "e,d_A,alpha_A")?;
                    writeln!(out, "{},{},\"{}\"", rc.e, rc.d_a, join(&rc.alpha_a))?;
                }
                Format::Table => {
                    writeln!(out, "e        {}", rc.e)?;
                    writeln!(out, "d_A      {}", rc.d_a)?;
                    writeln!(out, "alpha_A  ({})", join(&rc.alpha_a))?;
                }
            }
        }
        Command::Enumerate { catalog, output } => {
            let records = catalog.records();
            if let Some(path) = output {
                let mut text = serde_json::to_string_pretty(&records).expect("records serialize");
                text.push('\n');
                std::fs::write(path, text)?;
            }
            match fmt {
                Format::Json => emit_json(out, &records)?,
                Format::Csv => {
                    writeln!(out, "family,weights,m,exponents,d_A,alpha_A")?;
                    for r in &records {
                        writeln!(
                            out,
                            "{},\"{}\",{},\"{}\",{},\"{}\"",
                            r.family,
                            join(&r.weights),
                            r.m,
                            r.exponents.map(|e| join(&e)).unwrap_or_default(),
                            r.d_a,
                            join(&r.alpha_a)
                        )?;
                    }
                }
                Format::Table => {
                    writeln!(
                        out,
                        "{:>5}  {:<28} {:<24} {:>5}",
                        "m", "weights", "exponents", "d_A"
                    )?;
                    for r in &records {
                        writeln!(
                            out,
                            "{:>5}  {:<28} {:<24} {:>5}",
                            r.m,
                            format!("({})", join(&r.weights)),
                            r.exponents
                                .map(|e| format!("({})", join(&e)))
                                .unwrap_or_default(),
                            r.d_a
                        )?;
                    }
                    writeln!(out, "{} records", records.len())?;
                }
            }
        }
        Command::Classify { catalog } => {
            let records = catalog.records();
            let heights: Vec<u64> = classify_finite_heights(&records)?.into_iter().collect();
            match fmt {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "family": catalog.family.tag(),
                        "rule": catalog.rule(),
                        "records": records.len(),
                        "finite_heights": heights,
                    }),
                )?,
                Format::Csv => {
                    writeln!(out, "height")?;
                    for h in &heights {
                        writeln!(out, "{h}")?;
                    }
                }
                Format::Table => {
                    writeln!(out, "{} records", records.len())?;
                    writeln!(out, "finite heights: {}", join(&heights))?;
                }
            }
        }
        Command::Atlas { action } => match action {
            AtlasAction::Build {
                catalog,
                output,
                no_cross_check,
            } => {
                let options = AtlasOptions {
                    cross_check: !no_cross_check,
                    ..AtlasOptions::default()
                };
                let records = catalog.records();
                let path = match output {
                    Some(p) => p.clone(),
                    None => atlas_dir().join(format!("{}.json", catalog.file_stem())),
                };
                if fmt == Format::Csv {
                    write_spectra_csv(&records, &mut *out)?;
                }
                let atlas = build_atlas(catalog.family.tag(), catalog.rule(), records, options)?;
                save_atlas(&atlas, &path)?;
                match fmt {
                    Format::Json => emit_json(
                        out,
                        &json!({
                            "path": path.display().to_string(),
                            "records": atlas.records.len(),
                            "finite_heights": atlas.finite_heights,
                        }),
                    )?,
                    Format::Csv => {}
                    Format::Table => {
                        writeln!(
                            out,
                            "wrote {} ({} records)",
                            path.display(),
                            atlas.records.len()
                        )?;
                        writeln!(out, "finite heights: {}", join(&atlas.finite_heights))?;
                    }
                }
            }
            AtlasAction::Diff { left, right } => {
                let l = load_atlas(&resolve_atlas(left))?;
                let r = load_atlas(&resolve_atlas(right))?;
                let diff = atlas_diff(&l, &r);
                match fmt {
                    Format::Json => emit_json(
                        out,
                        &json!({
                            "identical": diff.is_empty(),
                            "only_left": diff.only_left,
                            "only_right": diff.only_right,
                            "changed": diff.changed,
                            "finite_heights": diff.finite_heights,
                        }),
                    )?,
                    _ if diff.is_empty() => writeln!(out, "atlases are identical")?,
                    _ => write!(out, "{diff}")?,
                }
            }
        },
    }
    Ok(0)
}

fn check_valid(x: &DelsarteThreefold, err: &mut dyn Write) -> Result<()> {
    let report = validate(x, None);
    for m in report.messages() {
        writeln!(err, "invalid: {m}")?;
    }
    report.into_result()
}

fn atlas_dir() -> PathBuf {
    std::env::var_os(ATLAS_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from)
}

fn resolve_atlas(p: &Path) -> PathBuf {
    if p.exists() || p.is_absolute() {
        return p.to_path_buf();
    }
    let candidate = atlas_dir().join(p);
    if candidate.exists() {
        candidate
    } else {
        p.to_path_buf()
    }
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).expect("output serializes");
    writeln!(out, "{s}")?;
    Ok(())
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_height(x: &DelsarteThreefold, p: Prime, fmt: Format, out: &mut dyn Write) -> Result<()> {
    let r = height(x, p)?;
    let rc = reduce_alpha0(&find_alpha0(x)?)?;
    let residue = p.get() % rc.d_a;
    let f_a = multiplicative_order(residue, rc.d_a)?;
    let mirror = x
        .reference_hodge()
        .map(|h| mirror_obstruction_flag(r.outcome, h.0, h.1));
    let witness = match &r.witness {
        Witness::Norms(n) => format!(
            "norms {}",
            n.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        ),
        Witness::Failure { index, norm } => format!("index {index} has norm {norm}"),
    };
    match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(&r).expect("result serializes");
            let obj = v.as_object_mut().expect("object");
            obj.insert("weights".into(), json!(x.weights().weights));
            obj.insert("m".into(), json!(x.weights().degree));
            obj.insert("p".into(), json!(p.get()));
            obj.insert("d_A".into(), json!(rc.d_a));
            obj.insert("residue".into(), json!(residue));
            obj.insert("f_A".into(), json!(f_a));
            if let Some(flag) = mirror {
                obj.insert("mirror_obstruction".into(), json!(flag));
            }
            emit_json(out, &v)?;
        }
        Format::Csv => {
            writeln!(out, "weights,m,p,d_A,residue,f_A,height")?;
            writeln!(
                out,
                "\"{}\",{},{},{},{},{},{}",
                join(&x.weights().weights),
                x.weights().degree,
                p,
                rc.d_a,
                residue,
                f_a,
                r.outcome
            )?;
        }
        Format::Table => {
            writeln!(out, "threefold  {}", x.weights())?;
            writeln!(out, "p          {p}")?;
            writeln!(out, "d_A        {}", rc.d_a)?;
            writeln!(out, "residue    {residue}")?;
            writeln!(out, "f_A        {f_a}")?;
            writeln!(out, "height     {}", r.outcome)?;
            writeln!(out, "witness    {witness}")?;
            if let (Some(flag), Some(h)) = (mirror, x.reference_hodge()) {
                let verdict = if flag {
                    "yes: no symplectic quotient gives a mirror"
                } else {
                    "no"
                };
                writeln!(
                    out,
                    "mirror obstruction (h11={}, h12={})  {verdict}",
                    h.0, h.1
                )?;
            }
        }
    }
    Ok(())
}

fn print_spectrum(
    x: &DelsarteThreefold,
    s: &ResidueSpectrum,
    all: bool,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<()> {
    debug_assert_eq!(s.phi(), euler_phi(s.d_a));
    match (fmt, all) {
        (Format::Json, false) => emit_json(out, &s.summary())?,
        (Format::Json, true) => {
            let classes: Vec<Value> = s
                .classes
                .iter()
                .map(|(t, r)| json!({"residue": t, "height": r.outcome}))
                .collect();
            emit_json(
                out,
                &json!({"d_A": s.d_a, "phi": s.phi(), "classes": classes}),
            )?;
        }
        (Format::Csv, false) => {
            writeln!(out, "height,count,representatives")?;
            for (h, g) in &s.grouped {
                writeln!(out, "{h},{},\"{}\"", g.count, join(&g.representatives))?;
            }
        }
        (Format::Csv, true) => {
            writeln!(out, "residue,height")?;
            for (t, r) in &s.classes {
                writeln!(out, "{t},{}", r.outcome)?;
            }
        }
        (Format::Table, false) => {
            writeln!(out, "threefold  {}", x.weights())?;
            writeln!(out, "d_A = {}, phi = {}", s.d_a, s.phi())?;
            writeln!(out, "{:>6}  {:>7}  residues", "height", "classes")?;
            for (h, g) in &s.grouped {
                let more = if g.count as usize > REPRESENTATIVES {
                    ", ..."
                } else {
                    ""
                };
                writeln!(
                    out,
                    "{:>6}  {:>7}  {}{more}",
                    h.to_string(),
                    g.count,
                    join(&g.representatives)
                )?;
            }
        }
        (Format::Table, true) => {
            writeln!(out, "d_A = {}, phi = {}", s.d_a, s.phi())?;
            for (t, r) in &s.classes {
                writeln!(out, "{t:>6}  {}", r.outcome)?;
            }
        }
    }
    Ok(())
}

/// Height values as printed in tables.
pub fn parse_height(s: &str) -> Option<Height> {
    match s {
        "inf" => Some(Height::Infinite),
        _ => s.parse().ok().filter(|&h| h > 0).map(Height::Finite),
    }
}
