//! Command-line front end: construct, inspect, fold, and verify root-system
//! identities with exact rational arithmetic.

use clap::{Parser, Subcommand, ValueEnum};
use macver_core::affine::{AffineSystem, AffineType, NON_REDUCED_TABLE};
use macver_core::finite::{Family, FiniteRootSystem, FiniteType};
use macver_core::folding::{
    fold_affine, fold_bc, fold_mean, fold_sum, DiagramAutomorphism, FoldMode,
};
use macver_core::identity::{
    denominator_affine, denominator_finite, macdonald_identity, strange_formula_check,
    IdentityReport,
};
use macver_core::linalg::{parse_rat, Rat};
use macver_core::{CoreError, Result};
use serde_json::{json, Value};
use std::process::ExitCode;

const USAGE_EXIT: u8 = 2;
const MISMATCH_EXIT: u8 = 1;

#[derive(Parser)]
#[command(name = "macver", version, about = "Exact verification of root-system identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation order for q-series checks
    #[arg(long, global = true, default_value_t = 20)]
    order: i64,

    /// Overall rational scale p/q applied to the bilinear form
    #[arg(long, global = true, default_value = "1")]
    scale: String,

    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Upper bound on Weyl-group enumeration
    #[arg(long, global = true, default_value_t = 1_000_000)]
    weyl_cap: u64,

    /// Worker threads for lattice-sum evaluation (default: MACVER_THREADS or all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the translation-lattice multiplier on the Macdonald sum side
    #[arg(long, global = true)]
    lattice_scale: Option<String>,

    /// Nomenclature used when printing type names
    #[arg(long = "as", global = true, value_enum)]
    naming: Option<Naming>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Naming {
    Kac,
    Moody,
    Macdonald,
    Carter,
}

#[derive(Subcommand)]
enum Command {
    /// Structural data of a finite or affine root system
    Info { label: String },
    /// Root lists; affine systems are truncated at --level
    Roots {
        label: String,
        #[arg(long, default_value_t = 2)]
        level: i64,
    },
    /// Folds a diagram along a node permutation and identifies the image
    Fold {
        label: String,
        /// Comma-separated node permutation (defaults to the canonical flip)
        #[arg(long)]
        nodes: Option<String>,
        /// Use the orbit-mean fold instead of the orbit-sum fold
        #[arg(long)]
        mean: bool,
    },
    /// Verifies an identity: macdonald, denominator, or strange
    Verify { identity: String, label: String },
    /// Expands one side (lhs or rhs) of the Macdonald identity
    Expand { side: String, label: String },
    /// Reference tables: folding, nomenclature, or nonreduced
    Table { which: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(&cli);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CoreError::BadLabel(_) | CoreError::InvalidRank { .. }) {
                eprintln!("{}", legal_labels());
            }
            ExitCode::from(USAGE_EXIT)
        }
    }
}

fn init_threads(cli: &Cli) {
    let from_env = std::env::var("MACVER_THREADS").ok().and_then(|v| v.parse().ok());
    if let Some(n) = cli.threads.or(from_env) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn legal_labels() -> String {
    [
        "legal labels:",
        "  finite: A{l>=1}, B{l>=2}, C{l>=2}, D{l>=4}, E6, E7, E8, F4, G2, BC{l>=1}",
        "  affine: X{l}(1) for reduced X, B{l}(2), C{l}(2), F4(2), G2(3), BC{l}(2)",
        "  examples: A3, BC2, A3(1), B2(2), BC2(2), G2(3)",
    ]
    .join("\n")
}

fn run(cli: &Cli) -> Result<u8> {
    if cli.order < 1 {
        return Err(CoreError::Unsupported("order must be at least 1".into()));
    }
    let scale = parse_rat(&cli.scale)?;
    match &cli.command {
        Command::Info { label } => info(cli, label, &scale),
        Command::Roots { label, level } => roots(cli, label, &scale, *level),
        Command::Fold { label, nodes, mean } => fold_cmd(cli, label, nodes.as_deref(), *mean),
        Command::Verify { identity, label } => verify(cli, identity, label, &scale),
        Command::Expand { side, label } => expand(cli, side, label, &scale),
        Command::Table { which } => table(cli, which),
    }
}

fn is_affine(label: &str) -> bool {
    label.contains('(')
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

fn display_name(cli: &Cli, sys: &AffineSystem) -> String {
    let names = sys.nomenclature();
    match cli.naming {
        None => names.saito,
        Some(Naming::Kac) => names.kac,
        Some(Naming::Moody) => names.moody,
        Some(Naming::Macdonald) => names.macdonald,
        Some(Naming::Carter) => names.carter,
    }
}

fn emit(cli: &Cli, value: &Value, text: String) -> Result<u8> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{text}");
    }
    Ok(0)
}

fn info(cli: &Cli, label: &str, scale: &Rat) -> Result<u8> {
    if is_affine(label) {
        let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
        let names = sys.nomenclature();
        let value = json!({
            "label": sys.typ.label(),
            "kac": names.kac,
            "moody": names.moody,
            "macdonald": names.macdonald,
            "carter": names.carter,
            "rank": sys.rank(),
            "tier": sys.typ.tier,
            "gcm": sys.gcm,
            "labels": sys.labels,
            "colabels": sys.colabels,
            "h": sys.h,
            "h_dual": sys.h_dual,
            "c": rat_str(&sys.c),
            "special_indices": sys.special_indices(),
        });
        let mut text = format!(
            "{}  (kac {}, moody {}, macdonald {}, carter {})\n",
            display_name(cli, &sys),
            names.kac,
            names.moody,
            names.macdonald,
            names.carter
        );
        text += &format!("rank {}  tier {}\n", sys.rank(), sys.typ.tier);
        text += &format!("labels   {:?}\ncolabels {:?}\n", sys.labels, sys.colabels);
        text += &format!(
            "h = {}  h^v = {}  c = I(rho,delta) = {}\n",
            sys.h,
            sys.h_dual,
            rat_str(&sys.c)
        );
        text += &format!("special indices {:?}\nGCM:", sys.special_indices());
        for row in &sys.gcm {
            text += &format!("\n  {row:?}");
        }
        emit(cli, &value, text)
    } else {
        let rs = FiniteRootSystem::with_scale(FiniteType::parse(label)?, scale.clone())?;
        let strata: Vec<Value> = rs
            .strata()
            .iter()
            .map(|s| json!({"norm": rat_str(&s.norm), "count": s.roots.len()}))
            .collect();
        let value = json!({
            "label": rs.typ.label(),
            "rank": rs.rank(),
            "roots": rs.roots.len(),
            "lie_dim": rs.lie_dim(),
            "weyl_order": u64::try_from(rs.weyl_order()).expect("within range"),
            "h": rs.h,
            "cartan": rs.cartan,
            "strata": strata,
        });
        let mut text = format!(
            "{}\nrank {}  roots {}  dim g = {}  |W| = {}  h = {}\nCartan:",
            rs.typ.label(),
            rs.rank(),
            rs.roots.len(),
            rs.lie_dim(),
            rs.weyl_order(),
            rs.h
        );
        for row in &rs.cartan {
            text += &format!("\n  {row:?}");
        }
        text += "\nstrata:";
        for s in rs.strata() {
            text += &format!("\n  norm {}: {} roots", rat_str(&s.norm), s.roots.len());
        }
        emit(cli, &value, text)
    }
}

fn roots(cli: &Cli, label: &str, scale: &Rat, level: i64) -> Result<u8> {
    if is_affine(label) {
        let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
        let roots = sys.roots_up_to(level)?;
        let value: Vec<Value> = roots
            .iter()
            .map(|r| {
                json!({
                    "finite_part": rat_vec(&r.finite_part),
                    "level": rat_str(&r.level),
                    "norm": rat_str(&r.norm),
                })
            })
            .collect();
        let mut text = format!("{}: {} roots with |level| <= {level}", sys.typ.label(), roots.len());
        for r in &roots {
            text += &format!(
                "\n  {:?} + {} delta  (norm {})",
                rat_vec(&r.finite_part),
                rat_str(&r.level),
                rat_str(&r.norm)
            );
        }
        emit(cli, &json!({"label": sys.typ.label(), "roots": value}), text)
    } else {
        let rs = FiniteRootSystem::with_scale(FiniteType::parse(label)?, scale.clone())?;
        let value = json!({"label": rs.typ.label(), "roots": rs.roots});
        let mut text = format!("{}: {} roots", rs.typ.label(), rs.roots.len());
        for r in &rs.roots {
            text += &format!("\n  {r:?}");
        }
        emit(cli, &value, text)
    }
}

fn parse_nodes(spec: &str) -> Result<Vec<usize>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CoreError::Unsupported(format!("bad node list `{spec}`")))
        })
        .collect()
}

/// The canonical non-trivial automorphism for types where one exists.
fn canonical_perm(family: Family, rank: usize) -> Result<Vec<usize>> {
    match family {
        Family::A if rank >= 2 => Ok((0..rank).rev().collect()),
        Family::D => {
            let mut p: Vec<usize> = (0..rank).collect();
            p.swap(rank - 2, rank - 1);
            Ok(p)
        }
        Family::E if rank == 6 => Ok(vec![5, 1, 4, 3, 2, 0]),
        _ => Err(CoreError::Unsupported(format!(
            "no canonical automorphism for {}{rank}; pass --nodes",
            family.letter()
        ))),
    }
}

fn fold_cmd(cli: &Cli, label: &str, nodes: Option<&str>, mean: bool) -> Result<u8> {
    let mode = if mean { FoldMode::Mean } else { FoldMode::Sum };
    if is_affine(label) {
        let typ = AffineType::parse(label)?;
        let sys = AffineSystem::standard(typ)?;
        let perm = match nodes {
            Some(s) => parse_nodes(s)?,
            None => canonical_perm(typ.base.family, typ.base.rank)?,
        };
        let outcome = fold_affine(&sys, &perm, mode)?;
        let matches: Vec<String> = outcome.matches.iter().map(|t| t.label()).collect();
        let value = json!({
            "source": sys.typ.label(),
            "mode": if mean { "mean" } else { "sum" },
            "gcm": outcome.gcm,
            "matches": matches,
            "image": outcome.system.typ.label(),
        });
        let text = format!(
            "{} --{}--> {}  (GCM matches: {})",
            sys.typ.label(),
            if mean { "mean" } else { "sum" },
            outcome.system.typ.label(),
            matches.join(", ")
        );
        emit(cli, &value, text)
    } else {
        let rs = FiniteRootSystem::standard(FiniteType::parse(label)?)?;
        let perm = match nodes {
            Some(s) => parse_nodes(s)?,
            None => canonical_perm(rs.typ.family, rs.rank())?,
        };
        let sigma = DiagramAutomorphism::finite(&rs, perm)?;
        let folded = match mode {
            FoldMode::Sum => fold_sum(&rs, &sigma)?,
            FoldMode::Mean => fold_mean(&rs, &sigma)?,
        };
        let matches: Vec<Value> = folded
            .matches
            .iter()
            .map(|(t, s)| json!({"type": t.label(), "scale": rat_str(s)}))
            .collect();
        let value = json!({
            "source": rs.typ.label(),
            "mode": if mean { "mean" } else { "sum" },
            "cartan": folded.cartan,
            "image_size": folded.image.len(),
            "matches": matches,
        });
        let text = format!(
            "{} --{}--> {}  ({} image roots)",
            rs.typ.label(),
            if mean { "mean" } else { "sum" },
            folded
                .matches
                .iter()
                .map(|(t, s)| format!("{} at scale {}", t.label(), rat_str(s)))
                .collect::<Vec<_>>()
                .join(" = "),
            folded.image.len()
        );
        emit(cli, &value, text)
    }
}

fn report_outcome(cli: &Cli, report: &IdentityReport) -> Result<u8> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else {
        let verdict = if report.verdict { "pass" } else { "FAIL" };
        let scope = if report.order > 0 {
            format!(" at order {}", report.order)
        } else {
            String::new()
        };
        println!(
            "{}: {}{} -> {} ({} terms, {} ms)",
            report.identity, report.type_label, scope, verdict, report.lattice_points,
            report.wall_ms
        );
        if let Some(m) = &report.first_mismatch {
            println!(
                "first mismatch at q^{}: lhs {} vs rhs {}",
                rat_str(&m.exponent),
                rat_str(&m.lhs),
                rat_str(&m.rhs)
            );
        }
    }
    Ok(if report.verdict { 0 } else { MISMATCH_EXIT })
}

fn verify(cli: &Cli, identity: &str, label: &str, scale: &Rat) -> Result<u8> {
    match identity {
        "macdonald" => {
            if !is_affine(label) {
                return Err(CoreError::Unsupported(
                    "`verify macdonald` needs an affine label like A1(1)".into(),
                ));
            }
            let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
            let lattice_scale = cli.lattice_scale.as_deref().map(parse_rat).transpose()?;
            let report = macdonald_identity(&sys, cli.order, lattice_scale)?;
            report_outcome(cli, &report)
        }
        "denominator" => {
            if is_affine(label) {
                let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
                let report = denominator_affine(&sys, cli.order)?;
                report_outcome(cli, &report)
            } else {
                let rs = FiniteRootSystem::with_scale(FiniteType::parse(label)?, scale.clone())?;
                let report = denominator_finite(&rs, cli.weyl_cap)?;
                report_outcome(cli, &report)
            }
        }
        "strange" => {
            if !is_affine(label) {
                return Err(CoreError::Unsupported(
                    "`verify strange` needs an affine label like B2(2)".into(),
                ));
            }
            let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
            let (lhs, rhs) = strange_formula_check(&sys)?;
            let value = json!({
                "identity": "strange-formula",
                "type": sys.typ.label(),
                "value": rat_str(&lhs),
                "dim_over_24": rat_str(&rhs),
                "verdict": "pass",
            });
            emit(cli, &value, format!(
                "strange-formula: {}: I(rho,rho)/2c = {} = dim/24 -> pass",
                sys.typ.label(),
                rat_str(&lhs)
            ))
        }
        other => Err(CoreError::Unsupported(format!(
            "unknown identity `{other}`; expected macdonald, denominator, or strange"
        ))),
    }
}

fn expand(cli: &Cli, side: &str, label: &str, scale: &Rat) -> Result<u8> {
    if !is_affine(label) {
        return Err(CoreError::Unsupported("`expand` needs an affine label".into()));
    }
    let sys = AffineSystem::build(AffineType::parse(label)?, scale.clone())?;
    let report = macdonald_identity(&sys, cli.order, None)?;
    let series = match side {
        "lhs" => report.lhs.as_ref().expect("lhs populated"),
        "rhs" => report.rhs.as_ref().expect("rhs populated"),
        other => {
            return Err(CoreError::Unsupported(format!(
                "unknown side `{other}`; expected lhs or rhs"
            )))
        }
    };
    let value = json!({
        "identity": report.identity,
        "type": report.type_label,
        "side": side,
        "series": series.to_json(),
    });
    let mut text = format!("{} {} of {} to order {}:", report.identity, side, report.type_label, cli.order);
    for (e, c) in series.terms() {
        text += &format!("\n  q^{}: {}", rat_str(e), rat_str(c));
    }
    emit(cli, &value, text)
}

fn folding_table(cli: &Cli) -> Result<u8> {
    let mut rows: Vec<Value> = Vec::new();
    let mut text = String::from(
        "source      sigma        Tr^ (sum)   Tr_ (mean)  affine Tr^  affine Tr_",
    );
    let mut add_row = |finite_label: String,
                       affine_label: String,
                       perm: Vec<usize>,
                       sigma_name: &str|
     -> Result<()> {
        let rs = FiniteRootSystem::standard(FiniteType::parse(&finite_label)?)?;
        let sigma = DiagramAutomorphism::finite(&rs, perm.clone())?;
        let summed = fold_sum(&rs, &sigma)?;
        let averaged = fold_mean(&rs, &sigma)?;
        let sys = AffineSystem::standard(AffineType::parse(&affine_label)?)?;
        let af_sum = fold_affine(&sys, &perm, FoldMode::Sum)?;
        let af_mean = fold_affine(&sys, &perm, FoldMode::Mean)?;
        let pick = |m: &[(FiniteType, Rat)]| m.first().map(|(t, _)| t.label()).unwrap_or_default();
        rows.push(json!({
            "source": finite_label,
            "automorphism": sigma_name,
            "sum": pick(&summed.matches),
            "mean": pick(&averaged.matches),
            "affine_sum": af_sum.system.typ.label(),
            "affine_mean": af_mean.system.typ.label(),
        }));
        text += &format!(
            "\n{:<11} {:<12} {:<11} {:<11} {:<11} {}",
            finite_label,
            sigma_name,
            pick(&summed.matches),
            pick(&averaged.matches),
            af_sum.system.typ.label(),
            af_mean.system.typ.label()
        );
        Ok(())
    };
    for l in [2usize, 3, 4] {
        let n = 2 * l - 1;
        add_row(format!("A{n}"), format!("A{n}(1)"), (0..n).rev().collect(), "flip")?;
    }
    for l in [3usize, 4] {
        let n = l + 1;
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(n - 2, n - 1);
        add_row(format!("D{n}"), format!("D{n}(1)"), p, "flip")?;
    }
    add_row("E6".into(), "E6(1)".into(), vec![5, 1, 4, 3, 2, 0], "flip")?;
    add_row("D4".into(), "D4(1)".into(), vec![2, 1, 3, 0], "triality")?;
    for l in [1usize, 2] {
        let bc = fold_bc(l, FoldMode::Sum)?;
        rows.push(json!({
            "source": format!("D{}(1)", 2 * l + 2),
            "automorphism": "order-4",
            "sum": Value::Null,
            "mean": Value::Null,
            "affine_sum": bc.system.typ.label(),
            "affine_mean": fold_bc(l, FoldMode::Mean)?.system.typ.label(),
        }));
        text += &format!(
            "\n{:<11} {:<12} {:<11} {:<11} {:<11} {}",
            format!("D{}(1)", 2 * l + 2),
            "order-4",
            "-",
            "-",
            bc.system.typ.label(),
            fold_bc(l, FoldMode::Mean)?.system.typ.label()
        );
    }
    emit(cli, &json!({"table": "folding", "rows": rows}), text)
}

fn nomenclature_table(cli: &Cli) -> Result<u8> {
    let catalog = [
        "A1(1)", "A3(1)", "D4(1)", "E6(1)", "B2(2)", "B3(2)", "C3(2)", "F4(2)", "G2(3)",
        "BC1(2)", "BC2(2)", "BC3(2)",
    ];
    let mut rows = Vec::new();
    let mut text = String::from("saito       kac         moody     macdonald       carter");
    for label in catalog {
        let sys = AffineSystem::standard(AffineType::parse(label)?)?;
        let n = sys.nomenclature();
        rows.push(json!({
            "saito": n.saito, "kac": n.kac, "moody": n.moody,
            "macdonald": n.macdonald, "carter": n.carter,
        }));
        text += &format!(
            "\n{:<11} {:<11} {:<9} {:<15} {}",
            n.saito, n.kac, n.moody, n.macdonald, n.carter
        );
    }
    emit(cli, &json!({"table": "nomenclature", "rows": rows}), text)
}

fn nonreduced_table(cli: &Cli) -> Result<u8> {
    let rows: Vec<Value> = NON_REDUCED_TABLE
        .iter()
        .map(|(a, b, c)| json!({"bourbaki": a, "kac": b, "saito": c}))
        .collect();
    let mut text = String::from("bourbaki    kac             saito");
    for (a, b, c) in NON_REDUCED_TABLE.iter() {
        text += &format!("\n{a:<11} {b:<15} {c}");
    }
    emit(cli, &json!({"table": "nonreduced", "rows": rows}), text)
}

fn table(cli: &Cli, which: &str) -> Result<u8> {
    match which {
        "folding" => folding_table(cli),
        "nomenclature" => nomenclature_table(cli),
        "nonreduced" => nonreduced_table(cli),
        other => Err(CoreError::Unsupported(format!(
            "unknown table `{other}`; expected folding, nomenclature, or nonreduced"
        ))),
    }
}
