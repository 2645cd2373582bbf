use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ginvkit::{
    auto_block, auto_sum, block_by_id, drazin_inverse, generate, group_inverse, sum_by_id,
    verify_axioms, BlockParts, CMatrix, Check, GenSpec, Instance, TheoremId, Tolerance,
};
use serde::Serialize;

use crate::io::{read_matrix, write_matrix, write_text};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ginvkit",
    version,
    about = "Group and Drazin inverses of complex matrices"
)]
pub struct Cli {
    /// Relative zero tolerance; the absolute floor is a hundredth of it.
    #[arg(
        long,
        global = true,
        env = "GINVKIT_TOL",
        allow_negative_numbers = true
    )]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group inverse of a square matrix.
    Ginv {
        path: PathBuf,
        /// Write the inverse as a matrix file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Drazin inverse and index of a square matrix.
    Drazin {
        path: PathBuf,
        /// Write the inverse as a matrix file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Group inverse of a + b by one statement, or by all of them.
    SumGinv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Statement tag such as thm2.3, or `auto`.
        #[arg(long, default_value = "auto")]
        theorem: String,
        /// Write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the inverse as a matrix file.
        #[arg(long)]
        inverse: Option<PathBuf>,
    },
    /// Group inverse of the block matrix [[A, B], [C, D]].
    BlockGinv {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long = "C")]
        c: PathBuf,
        #[arg(long = "D")]
        d: PathBuf,
        /// Statement tag such as thm4.1, or `auto`.
        #[arg(long, default_value = "auto")]
        theorem: String,
        /// Case of cor4.4.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: Option<u8>,
        /// Write the JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the inverse as a matrix file.
        #[arg(long)]
        inverse: Option<PathBuf>,
    },
    /// Checks x = xax, ax = xa, a = axa.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        x: PathBuf,
        /// Write the axiom check as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a seeded instance for a statement.
    Gen {
        #[arg(long)]
        case: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        /// Name of the one hypothesis or condition to break.
        #[arg(long)]
        violate: Option<String>,
        #[arg(long)]
        outdir: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// An inverse was produced, or a verification passed.
    Produced,
    /// Not applicable, a failed condition, or no inverse.
    Negative,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Produced => 0,
            Status::Negative => 2,
        }
    }
}

pub fn run(cli: Cli) -> Result<Status, CliError> {
    let tol = match cli.tol {
        Some(t) => Tolerance::with_zero_rel(t).map_err(|e| CliError::Invalid {
            flag: "--tol",
            message: e.to_string(),
        })?,
        None => Tolerance::default(),
    };
    match cli.command {
        Command::Ginv { path, out } => cmd_ginv(&path, out.as_deref(), &tol),
        Command::Drazin { path, out } => cmd_drazin(&path, out.as_deref(), &tol),
        Command::SumGinv {
            a,
            b,
            theorem,
            out,
            inverse,
        } => cmd_sum(&a, &b, &theorem, out.as_deref(), inverse.as_deref(), &tol),
        Command::BlockGinv {
            a,
            b,
            c,
            d,
            theorem,
            variant,
            out,
            inverse,
        } => {
            let parts = BlockParts::new(
                read_matrix(&a)?,
                read_matrix(&b)?,
                read_matrix(&c)?,
                read_matrix(&d)?,
            )?;
            cmd_block(
                &parts,
                &theorem,
                variant,
                out.as_deref(),
                inverse.as_deref(),
                &tol,
            )
        }
        Command::Verify { a, x, out } => cmd_verify(&a, &x, out.as_deref(), &tol),
        Command::Gen {
            case,
            dim,
            seed,
            violate,
            outdir,
        } => cmd_gen(&case, dim, seed, violate, &outdir),
    }
}

fn square(path: &Path) -> Result<CMatrix, CliError> {
    let m = read_matrix(path)?;
    if !m.is_square() {
        return Err(CliError::Malformed {
            path: path.to_path_buf(),
            message: format!(
                "rows = {} but cols = {}; a square matrix is required",
                m.rows(),
                m.cols()
            ),
        });
    }
    Ok(m)
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("report serializes");
        write_text(p, &(text + "\n"))?;
    }
    Ok(())
}

fn write_inverse(path: Option<&Path>, m: Option<&CMatrix>) -> Result<(), CliError> {
    match (path, m) {
        (Some(p), Some(m)) => write_matrix(p, m),
        _ => Ok(()),
    }
}

fn cmd_ginv(path: &Path, out: Option<&Path>, tol: &Tolerance) -> Result<Status, CliError> {
    let a = square(path)?;
    let g = group_inverse(&a, tol)?;
    match &g.inverse {
        Some(x) => {
            println!("group inverse exists: rank(A)={} = rank(A²)", g.rank_a);
            if let Some(r) = &g.residuals {
                println!(
                    "axiom residuals: xax-x {:.3e}, ax-xa {:.3e}, axa-a {:.3e}",
                    r.outer, r.commute, r.inner
                );
            }
            println!("{x:?}");
            write_inverse(out, Some(x))?;
            Ok(Status::Produced)
        }
        None => {
            println!(
                "no group inverse: rank(A)={}, rank(A²)={}",
                g.rank_a, g.rank_a2
            );
            if let Some(d) = g.diagnostic {
                println!("diagnostic: {d:?}");
            }
            Ok(Status::Negative)
        }
    }
}

fn cmd_drazin(path: &Path, out: Option<&Path>, tol: &Tolerance) -> Result<Status, CliError> {
    let a = square(path)?;
    let d = drazin_inverse(&a, tol)?;
    println!("Drazin inverse, index {}", d.index);
    println!("{:?}", d.inverse);
    write_inverse(out, Some(&d.inverse))?;
    Ok(Status::Produced)
}

fn cmd_verify(a: &Path, x: &Path, out: Option<&Path>, tol: &Tolerance) -> Result<Status, CliError> {
    let a = square(a)?;
    let x = read_matrix(x)?;
    let check = verify_axioms(&a, &x, tol)?;
    let r = &check.residuals;
    for (label, res, scale) in [
        ("xax - x", r.outer, check.scales[0]),
        ("ax - xa", r.commute, check.scales[1]),
        ("axa - a", r.inner, check.scales[2]),
    ] {
        println!("{label}: residual {res:.3e} (scale {scale:.3e})");
    }
    println!(
        "verdict: {}",
        if check.verdict {
            "x is the group inverse of a"
        } else {
            "x is not the group inverse of a"
        }
    );
    write_json(out, &check)?;
    Ok(if check.verdict {
        Status::Produced
    } else {
        Status::Negative
    })
}

fn parse_tag(flag: &'static str, tag: &str, allowed: &[TheoremId]) -> Result<TheoremId, CliError> {
    let id: TheoremId = tag
        .parse()
        .map_err(|e: ginvkit::GinvError| CliError::Invalid {
            flag,
            message: e.to_string(),
        })?;
    if allowed.contains(&id) {
        Ok(id)
    } else {
        let names: Vec<&str> = allowed.iter().map(|t| t.tag()).collect();
        Err(CliError::Invalid {
            flag,
            message: format!(
                "{id} is not accepted here; expected auto or one of {}",
                names.join(", ")
            ),
        })
    }
}

const SUM_TAGS: [TheoremId; 10] = [
    TheoremId::Thm23,
    TheoremId::Cor24,
    TheoremId::Thm25,
    TheoremId::Cor26,
    TheoremId::Cor27,
    TheoremId::Lem31,
    TheoremId::Thm32,
    TheoremId::Cor33,
    TheoremId::Thm35,
    TheoremId::Cor36,
];

fn cmd_sum(
    a: &Path,
    b: &Path,
    theorem: &str,
    out: Option<&Path>,
    inverse: Option<&Path>,
    tol: &Tolerance,
) -> Result<Status, CliError> {
    let (a, b) = (square(a)?, square(b)?);
    if theorem.eq_ignore_ascii_case("auto") {
        let r = auto_sum(&a, &b, tol)?;
        for rep in &r.reports {
            print_line(
                rep.theorem,
                rep.applicable,
                rep.decision,
                rep.inverse.is_some(),
                &rep.hypotheses,
                &rep.conditions,
            );
        }
        let first = r.produced().next().and_then(|x| x.inverse.as_ref());
        let status = auto_status(first, r.consensus, r.oracle_exists)?;
        if let Some(x) = first {
            println!("{x:?}");
        }
        write_json(out, &r)?;
        write_inverse(inverse, first)?;
        return Ok(status);
    }
    let id = parse_tag("--theorem", theorem, &SUM_TAGS)?;
    let r = sum_by_id(id, &a, &b, tol)?;
    let target = if id == TheoremId::Lem31 {
        "ab"
    } else {
        "a + b"
    };
    print_report(&View {
        theorem: r.theorem,
        target,
        hypotheses: &r.hypotheses,
        conditions: &r.conditions,
        applicable: r.applicable,
        decision: r.decision,
        inverse: r.inverse.as_ref(),
        oracle_exists: r.oracle_exists,
        oracle_match: r.oracle_match,
        notes: &r.notes,
    });
    write_json(out, &r)?;
    write_inverse(inverse, r.inverse.as_ref())?;
    Ok(status_of(r.inverse.is_some()))
}

fn cmd_block(
    parts: &BlockParts,
    theorem: &str,
    variant: Option<u8>,
    out: Option<&Path>,
    inverse: Option<&Path>,
    tol: &Tolerance,
) -> Result<Status, CliError> {
    if theorem.eq_ignore_ascii_case("auto") {
        let r = auto_block(parts, tol)?;
        for rep in &r.reports {
            print_line(
                rep.theorem,
                rep.applicable,
                rep.decision,
                rep.inverse.is_some(),
                &rep.hypotheses,
                &rep.conditions,
            );
        }
        let first = r.produced().next().and_then(|x| x.inverse.as_ref());
        let status = auto_status(first, r.consensus, r.oracle_exists)?;
        if let Some(x) = first {
            println!("{x:?}");
        }
        write_json(out, &r)?;
        write_inverse(inverse, first)?;
        return Ok(status);
    }
    let id = parse_tag("--theorem", theorem, &TheoremId::BLOCK)?;
    let r = block_by_id(id, parts, variant, tol)?;
    print_report(&View {
        theorem: r.theorem,
        target: "M",
        hypotheses: &r.hypotheses,
        conditions: &r.conditions,
        applicable: r.applicable,
        decision: r.decision,
        inverse: r.inverse.as_ref(),
        oracle_exists: r.oracle_exists,
        oracle_match: r.oracle_match,
        notes: &r.notes,
    });
    write_json(out, &r)?;
    write_inverse(inverse, r.inverse.as_ref())?;
    Ok(status_of(r.inverse.is_some()))
}

fn status_of(produced: bool) -> Status {
    if produced {
        Status::Produced
    } else {
        Status::Negative
    }
}

fn auto_status(
    first: Option<&CMatrix>,
    consensus: Option<bool>,
    oracle_exists: bool,
) -> Result<Status, CliError> {
    println!(
        "oracle: {}",
        if oracle_exists {
            "group inverse exists"
        } else {
            "no group inverse"
        }
    );
    match consensus {
        Some(false) => Err(CliError::Invalid {
            flag: "--theorem auto",
            message: "produced inverses disagree with each other or with the oracle".into(),
        }),
        Some(true) => {
            println!("consensus: every produced inverse agrees with the oracle");
            Ok(status_of(first.is_some()))
        }
        None => {
            println!("no statement produced an inverse");
            Ok(Status::Negative)
        }
    }
}

struct View<'a> {
    theorem: TheoremId,
    target: &'a str,
    hypotheses: &'a [Check],
    conditions: &'a [Check],
    applicable: bool,
    decision: Option<bool>,
    inverse: Option<&'a CMatrix>,
    oracle_exists: bool,
    oracle_match: Option<bool>,
    notes: &'a [String],
}

fn print_checks(title: &str, checks: &[Check]) {
    if checks.is_empty() {
        return;
    }
    println!("{title}:");
    for c in checks {
        print!(
            "  {}  {:<28} residual {:.3e} (scale {:.3e})",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.residual,
            c.scale
        );
        match &c.detail {
            Some(d) => println!("  [{d}]"),
            None => println!(),
        }
    }
}

fn print_report(v: &View<'_>) {
    println!("{}: statement about {}", v.theorem, v.target);
    print_checks("hypotheses", v.hypotheses);
    print_checks("conditions", v.conditions);
    let verdict = match (v.applicable, v.decision) {
        (false, _) => format!("not applicable: {}", failed_names(v.hypotheses)),
        (true, Some(true)) => format!("{} has a group inverse", v.target),
        (true, Some(false)) => format!("conditions fail: {}", failed_names(v.conditions)),
        (true, None) => "undecided".to_string(),
    };
    println!("verdict: {verdict}");
    println!(
        "oracle: {}{}",
        if v.oracle_exists {
            "group inverse exists"
        } else {
            "no group inverse"
        },
        match v.oracle_match {
            Some(true) => ", agrees with the formula",
            Some(false) => ", DISAGREES with the formula",
            None => "",
        }
    );
    for n in v.notes {
        println!("note: {n}");
    }
    if let Some(x) = v.inverse {
        println!("{x:?}");
    }
}

fn failed_names(checks: &[Check]) -> String {
    checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("\"{}\"", c.name))
        .collect::<Vec<_>>()
        .join(", ")
}

fn print_line(
    id: TheoremId,
    applicable: bool,
    decision: Option<bool>,
    produced: bool,
    hypotheses: &[Check],
    conditions: &[Check],
) {
    let state = match (applicable, decision) {
        (false, _) => format!("not applicable ({})", failed_names(hypotheses)),
        (true, Some(true)) if produced => "inverse produced".to_string(),
        (true, Some(true)) => "conditions pass, no inverse".to_string(),
        (true, Some(false)) => format!("conditions fail ({})", failed_names(conditions)),
        (true, None) => "undecided".to_string(),
    };
    println!("{:<7} {state}", id.tag());
}

fn cmd_gen(
    case: &str,
    dim: usize,
    seed: u64,
    violate: Option<String>,
    outdir: &Path,
) -> Result<Status, CliError> {
    let id: TheoremId = case
        .parse()
        .map_err(|e: ginvkit::GinvError| CliError::Invalid {
            flag: "--case",
            message: e.to_string(),
        })?;
    let spec = GenSpec {
        case: id,
        dim,
        seed,
        violate,
    };
    let inst = generate(&spec)?;
    fs::create_dir_all(outdir).map_err(|source| CliError::Io {
        path: outdir.to_path_buf(),
        source,
    })?;
    let files: Vec<(&str, &CMatrix)> = match &inst {
        Instance::Pair { a, b } => vec![("a", a), ("b", b)],
        Instance::Block { parts, variant } => {
            if let Some(v) = variant {
                println!("cor4.4 case {v}");
            }
            vec![
                ("A", parts.a()),
                ("B", parts.b()),
                ("C", parts.c()),
                ("D", parts.d()),
            ]
        }
    };
    for (name, m) in files {
        let path = outdir.join(format!("{name}.json"));
        write_matrix(&path, m)?;
        println!("wrote {}", path.display());
    }
    Ok(Status::Produced)
}
