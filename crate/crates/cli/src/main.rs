//! `gddetf`: build, verify and classify equiangular tight frames.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gddetf::constructions::{certify, permute_columns, seed_type, CertifiedEtf};
use gddetf::designs::{
    affine_plane, complete_pairs, fill_holes, projective_plane, steiner_triple_system, transversal_design,
    wilson_product, FiniteField,
};
use gddetf::io::{parse_design, parse_design_unchecked, parse_frame, write_design, write_frame, IoError};
use gddetf::{
    classify_type, existence_status, gdd_etf, mols_tdtf, plan_gdd_etf, regular_simplex, steiner_etf, verify_etf,
    verify_hadamard, verify_tdtf, EtfType, Frame, GroupDivisibleDesign, HadamardMatrix, MolsVariant,
};

#[derive(Parser)]
#[command(name = "gddetf", version, about = "Exact construction and certification of equiangular tight frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every (K,L,S) type with parameters (D, N).
    Classify { d: u64, n: u64 },
    /// Construct a group divisible design.
    Design {
        #[command(subcommand)]
        kind: DesignKind,
        /// Output path; the design is printed to stdout when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Construct and certify a frame.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check an artifact file.
    Verify { kind: VerifyKind, path: PathBuf },
    /// Existence status of an ETF type.
    #[command(allow_negative_numbers = true)]
    Status { k: u64, l: i8, s: u64 },
}

#[derive(Subcommand)]
enum DesignKind {
    /// TD(K, q) from MOLS over GF(q).
    Td { k: usize, q: u64 },
    /// Steiner triple system on U points.
    Sts { u: usize },
    /// Affine plane of order q.
    Affine { q: u64 },
    /// Projective plane of order q.
    Projective { q: u64 },
    /// All pairs of V points.
    Pairs { v: usize },
    /// Wilson product of two design files.
    Product { outer: PathBuf, inner: PathBuf },
    /// A copy of `inner` in every group of `outer`.
    Fill { inner: PathBuf, outer: PathBuf },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Regular simplex from a Hadamard matrix.
    Simplex {
        #[arg(long)]
        hadamard: String,
    },
    /// Steiner ETF from a BIBD file.
    Steiner {
        #[arg(long)]
        bibd: PathBuf,
        #[arg(long)]
        hadamard: String,
    },
    /// Flat frame from a transversal design file.
    MolsEtf {
        #[arg(long)]
        td: PathBuf,
        #[arg(long)]
        hadamard: String,
        #[arg(long, default_value = "centered")]
        variant: MolsVariant,
    },
    /// The GDD construction from a seed frame.
    GddEtf {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        gdd: PathBuf,
        #[arg(long)]
        he: String,
        #[arg(long)]
        hf: String,
        /// Seed column order, comma separated, applied before grouping.
        #[arg(long, value_delimiter = ',')]
        permute: Option<Vec<usize>>,
    },
    /// A Hadamard matrix, written in the frame format.
    Hadamard {
        #[arg(long)]
        hadamard: String,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum VerifyKind {
    Frame,
    Design,
    Hadamard,
    Tdtf,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verification(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn failed(e: impl fmt::Display) -> Failure {
    Failure::Verification(e.to_string())
}

type Res<T> = Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Res<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn io_failure(path: &Path, e: IoError) -> Failure {
    match e {
        IoError::Syntax { .. } => usage(format!("{}: {e}", path.display())),
        IoError::Design(_) => failed(format!("{}: {e}", path.display())),
    }
}

fn load_design(path: &Path) -> Res<GroupDivisibleDesign> {
    parse_design(&read(path)?).map_err(|e| io_failure(path, e))
}

fn load_frame(path: &Path) -> Res<Frame> {
    let mat = parse_frame(&read(path)?).map_err(|e| io_failure(path, e))?;
    Frame::new(mat).map_err(|e| failed(format!("{}: {e}", path.display())))
}

/// `sylvester:k`, `paley1:q`, `paley2:q` or `fourier:n`, optionally joined by `*`
/// for Kronecker products. The result is dephased.
fn parse_hadamard(spec: &str) -> Res<HadamardMatrix> {
    let mut acc: Option<HadamardMatrix> = None;
    for part in spec.split('*') {
        let (kind, arg) = part
            .split_once(':')
            .ok_or_else(|| usage(format!("bad Hadamard spec {part:?}; expected kind:n")))?;
        let n: u64 = arg.trim().parse().map_err(|_| usage(format!("bad Hadamard size {arg:?}")))?;
        let field = || FiniteField::of_order(n).map_err(usage);
        let h = match kind.trim() {
            "sylvester" => HadamardMatrix::sylvester(n as u32),
            "paley1" => HadamardMatrix::paley_i(&field()?).map_err(usage)?,
            "paley2" => HadamardMatrix::paley_ii(&field()?).map_err(usage)?,
            "fourier" => HadamardMatrix::fourier(n as usize).map_err(usage)?,
            other => return Err(usage(format!("unknown Hadamard family {other:?}"))),
        };
        acc = Some(match acc {
            Some(a) => a.kron(&h),
            None => h,
        });
    }
    Ok(acc.expect("split yields at least one part").dephase())
}

fn type_list(types: &[EtfType], sep: &str) -> String {
    if types.is_empty() {
        return "none".into();
    }
    types.iter().map(EtfType::to_string).collect::<Vec<_>>().join(sep)
}

fn certificate_line(c: &CertifiedEtf, types: &[EtfType]) -> String {
    format!("{} types={}", c.certificate.summary(), type_list(types, ","))
}

fn certified(frame: Frame, output: Option<&Path>) -> Res<()> {
    let c = certify(frame).map_err(failed)?;
    println!("{}", certificate_line(&c, &c.types));
    write_frame_file(&c.frame, output)
}

fn write_frame_file(frame: &Frame, output: Option<&Path>) -> Res<()> {
    match output {
        Some(p) => emit(Some(p), &write_frame(frame.synthesis())),
        None => Ok(()),
    }
}

fn design(kind: DesignKind, output: Option<&Path>) -> Res<()> {
    let field = |q: u64| FiniteField::of_order(q).map_err(usage);
    let d = match kind {
        DesignKind::Td { k, q } => transversal_design(k, q).map_err(usage)?,
        DesignKind::Sts { u } => steiner_triple_system(u).map_err(usage)?,
        DesignKind::Affine { q } => affine_plane(&field(q)?).map_err(usage)?,
        DesignKind::Projective { q } => projective_plane(&field(q)?).map_err(usage)?,
        DesignKind::Pairs { v } => complete_pairs(v).map_err(usage)?,
        DesignKind::Product { outer, inner } => {
            wilson_product(&load_design(&outer)?, &load_design(&inner)?).map_err(usage)?
        }
        DesignKind::Fill { inner, outer } => fill_holes(&load_design(&inner)?, &load_design(&outer)?).map_err(usage)?,
    };
    let params = d.verify().map_err(failed)?;
    if output.is_some() {
        println!("GDD {params}");
    }
    emit(output, &write_design(&d))
}

fn build(kind: BuildKind, output: Option<&Path>) -> Res<()> {
    match kind {
        BuildKind::Simplex { hadamard } => {
            let frame = regular_simplex(&parse_hadamard(&hadamard)?).map_err(usage)?;
            certified(frame, output)
        }
        BuildKind::Steiner { bibd, hadamard } => {
            let frame = steiner_etf(&load_design(&bibd)?, &parse_hadamard(&hadamard)?).map_err(usage)?;
            certified(frame, output)
        }
        BuildKind::MolsEtf { td, hadamard, variant } => {
            let frame = mols_tdtf(&load_design(&td)?, &parse_hadamard(&hadamard)?, variant).map_err(usage)?;
            if verify_etf(&frame).is_etf() {
                return certified(frame, output);
            }
            let report = verify_tdtf(&frame);
            println!("{}", tdtf_line(&frame, &report));
            if !report.passes() {
                return Err(failed("frame is not a two-distance tight frame"));
            }
            write_frame_file(&frame, output)
        }
        BuildKind::GddEtf { seed, gdd, he, hf, permute } => {
            let mut seed = load_frame(&seed)?;
            if let Some(perm) = permute {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..seed.count()).collect::<Vec<_>>() {
                    return Err(usage(format!("--permute must list 0..{} exactly once", seed.count())));
                }
                seed = permute_columns(&seed, &perm).map_err(usage)?;
            }
            let gdd = load_design(&gdd)?;
            let ty = seed_type(&verify_etf(&seed), gdd.k()).map_err(usage)?;
            let plan = plan_gdd_etf(ty, gdd.u() as u64).map_err(usage)?;
            let c = gdd_etf(&seed, &gdd, &parse_hadamard(&he)?, &parse_hadamard(&hf)?).map_err(|e| match e {
                gddetf::ConstructionError::Certification(_) => failed(e),
                _ => usage(e),
            })?;
            println!("{}", certificate_line(&c, &[plan.target]));
            write_frame_file(&c.frame, output)
        }
        BuildKind::Hadamard { hadamard } => {
            let h = parse_hadamard(&hadamard)?;
            println!("{}", hadamard_line(&h));
            emit(output, &write_frame(h.matrix()))
        }
    }
}

fn hadamard_line(h: &HadamardMatrix) -> String {
    format!("HADAMARD n={} order={} real={} dephased={}", h.size(), h.order(), h.is_real(), h.is_dephased())
}

fn tdtf_line(frame: &Frame, report: &gddetf::frames::TdtfReport) -> String {
    let moduli: Vec<String> = report.moduli.iter().map(ToString::to_string).collect();
    format!(
        "TDTF D={} N={} tight={} moduli={}",
        frame.dimension(),
        frame.count(),
        report.tight,
        moduli.join(",")
    )
}

fn verify(kind: VerifyKind, path: &Path) -> Res<()> {
    match kind {
        VerifyKind::Design => {
            let d = parse_design_unchecked(&read(path)?).map_err(|e| io_failure(path, e))?;
            let params = d.verify().map_err(failed)?;
            println!("GDD {params}");
        }
        VerifyKind::Frame => {
            let frame = load_frame(path)?;
            let cert = verify_etf(&frame);
            if !cert.is_etf() {
                println!("{}", cert.summary());
                return Err(failed(cert.violation.unwrap_or_else(|| "not an ETF".into())));
            }
            let c = certify(frame).map_err(failed)?;
            println!("{}", certificate_line(&c, &c.types));
            println!("{}", c.certificate.flags());
        }
        VerifyKind::Tdtf => {
            let frame = load_frame(path)?;
            let report = verify_tdtf(&frame);
            println!("{}", tdtf_line(&frame, &report));
            if !report.passes() {
                return Err(failed("frame is not a two-distance tight frame"));
            }
        }
        VerifyKind::Hadamard => {
            let mat = parse_frame(&read(path)?).map_err(|e| io_failure(path, e))?;
            verify_hadamard(&mat).map_err(failed)?;
            let h = HadamardMatrix::new(mat).map_err(failed)?;
            println!("{}", hadamard_line(&h));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Res<()> {
    match cli.command {
        Command::Classify { d, n } => {
            let types = classify_type(d, n).map_err(usage)?;
            println!("{}", type_list(&types, " "));
            Ok(())
        }
        Command::Design { kind, output } => design(kind, output.as_deref()),
        Command::Build { kind, output } => build(kind, output.as_deref()),
        Command::Verify { kind, path } => verify(kind, &path),
        Command::Status { k, l, s } => {
            let ty = EtfType::new(k, l, s).map_err(usage)?;
            println!("{}", existence_status(ty).map_err(usage)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
