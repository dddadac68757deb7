//! Command-line front end: parameter-driven certification, form
//! classification, equivariant checking, congruence enumeration, Smith
//! normal forms, and certificate verification.
//!
//! Exit codes are stable: 0 = success / Nonsmoothable / check passed,
//! 1 = Inconclusive / check failed, 2 = input or validation error,
//! 3 = I/O failure.

mod json;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use spincert::construction::{elliptic_preset, ActionParams};
use spincert::equivariant::EquivariantForm;
use spincert::forms::{classify_indefinite_even_unimodular, CanonicalEvenForm, E8Sign, IntSymForm};
use spincert::intlinalg::smith_normal_form;
use spincert::obstruction::{
    admissible_epsilon_sums, certify, rohlin_admissible_pairs, verify_certificate, Certificate,
    Verdict, VerdictKind,
};

#[derive(Parser)]
#[command(
    name = "spincert",
    about = "Exact nonsmoothability certificates for involutions on spin 4-manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the standard involution on n(-E8) + mH for parameters (n, m, r)
    Certify {
        /// Number of -E8 summands (positive, even)
        #[arg(long)]
        n: usize,
        /// Number of hyperbolic summands (at least n+1)
        #[arg(long)]
        m: usize,
        /// Rank parameter of the fixed block (1 <= r < m, r ≡ m mod 2);
        /// defaults to m-2
        #[arg(long)]
        r: Option<usize>,
        /// Write the certificate as canonical JSON to this path
        #[arg(long, value_name = "PATH")]
        json_out: Option<PathBuf>,
    },
    /// Certify the elliptic-surface preset: (n, m) = (k, 2k-1)
    Elliptic {
        #[arg(long)]
        k: usize,
        /// Write the certificate as canonical JSON to this path
        #[arg(long, value_name = "PATH")]
        json_out: Option<PathBuf>,
    },
    /// Classify an even indefinite unimodular form file {"gram": [[...]]}
    ClassifyForm { file: PathBuf },
    /// Check the realization conditions for an action file
    /// {"gram": [[...]], "g": [[...]]}
    CheckAction { file: PathBuf },
    /// Enumerate congruence-admissible data for (sigma, fixed)
    Enumerate {
        /// Signature of the form
        #[arg(long, allow_negative_numbers = true)]
        sigma: i64,
        /// Number of fixed points
        #[arg(long)]
        fixed: usize,
        #[arg(long, value_enum)]
        mode: EnumerateMode,
    },
    /// Smith normal form of a matrix file {"matrix": [[...]]}
    Snf { file: PathBuf },
    /// Replay a certificate file and compare every field
    VerifyCert { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateMode {
    /// Spin-type partitions (n+, n-) allowed by the signature congruence
    Rohlin,
    /// Admissible total sign sums from the index constraint
    Epsilon,
}

/// Failures that map onto the nonzero exit codes.
enum Failure {
    /// Input or validation error -> exit 2.
    Invalid(String),
    /// Filesystem error -> exit 3.
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Io(m) => m,
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Certify { n, m, r, json_out } => {
            let params = match r {
                Some(r) => ActionParams { n, m, r },
                None => ActionParams::with_default_r(n, m),
            };
            run_certify(params, json_out.as_deref())
        }
        Command::Elliptic { k, json_out } => elliptic_preset(k)
            .map_err(invalid)
            .and_then(|params| run_certify(params, json_out.as_deref())),
        Command::ClassifyForm { file } => run_classify(&file),
        Command::CheckAction { file } => run_check_action(&file),
        Command::Enumerate { sigma, fixed, mode } => run_enumerate(sigma, fixed, mode),
        Command::Snf { file } => run_snf(&file),
        Command::VerifyCert { file } => run_verify(&file),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run_certify(params: ActionParams, json_out: Option<&Path>) -> Result<u8, Failure> {
    let verdict = certify(&params).map_err(invalid)?;
    print_verdict(&params, &verdict);
    if let Some(path) = json_out {
        fs::write(path, verdict.certificate.to_canonical_json())
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
        println!("certificate written to {}", path.display());
    }
    Ok(match verdict.kind {
        VerdictKind::Nonsmoothable => 0,
        VerdictKind::Inconclusive => 1,
    })
}

fn print_verdict(params: &ActionParams, verdict: &Verdict) {
    let cert = &verdict.certificate;
    let class = CanonicalEvenForm {
        e8_count: params.n,
        e8_sign: E8Sign::Minus,
        h_count: params.m,
    };
    println!("parameters: n={} m={} r={}", params.n, params.m, params.r);
    println!(
        "form: {class}  (rank {}, signature {})",
        params.rank(),
        cert.sigma
    );
    println!(
        "fixed points: {}  [P, Q1..Q{}, P']",
        cert.fixed_count,
        cert.framings.len()
    );
    println!("handle framings: {:?}", cert.framings);
    println!("sign sum over fixed points: {}", cert.epsilon_sum);
    println!("spin types of P and P': {}", cert.p_pprime);
    println!(
        "deduced partition (n+, n-): ({}, {})",
        cert.partition[0], cert.partition[1]
    );
    println!("rohlin residue mod 16: {}", cert.rohlin_residue);
    if !cert.admissible_partitions.is_empty() {
        let rendered: Vec<String> = cert
            .admissible_partitions
            .iter()
            .map(|p| format!("({}, {})", p[0], p[1]))
            .collect();
        println!("admissible partitions: {}", rendered.join(", "));
    }
    println!(
        "VERDICT: {}",
        match verdict.kind {
            VerdictKind::Nonsmoothable => "NONSMOOTHABLE",
            VerdictKind::Inconclusive => "INCONCLUSIVE",
        }
    );
}

fn read_json_object(path: &Path) -> Result<Map<String, Value>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("{}: invalid JSON: {e}", path.display())))?;
    json::as_object(&value, &path.display().to_string())
        .map(Map::clone)
        .map_err(Failure::Invalid)
}

fn parse_form_file(path: &Path) -> Result<IntSymForm, Failure> {
    let obj = read_json_object(path)?;
    let gram = json::field(&obj, "gram")
        .and_then(|v| json::value_to_matrix(v, "gram"))
        .map_err(Failure::Invalid)?;
    IntSymForm::new(gram).map_err(invalid)
}

fn parse_action_file(path: &Path) -> Result<EquivariantForm, Failure> {
    let obj = read_json_object(path)?;
    let gram = json::field(&obj, "gram")
        .and_then(|v| json::value_to_matrix(v, "gram"))
        .map_err(Failure::Invalid)?;
    let g = json::field(&obj, "g")
        .and_then(|v| json::value_to_matrix(v, "g"))
        .map_err(Failure::Invalid)?;
    let form = IntSymForm::new(gram).map_err(invalid)?;
    EquivariantForm::new(form, g).map_err(invalid)
}

fn run_classify(path: &Path) -> Result<u8, Failure> {
    let form = parse_form_file(path)?;
    let inv = form.invariants();
    println!("rank: {}", inv.rank);
    println!(
        "inertia: positive={} negative={} zero={}",
        inv.inertia.positive, inv.inertia.negative, inv.inertia.zero
    );
    println!("signature: {}", inv.signature);
    println!("parity: {:?}", inv.parity);
    println!("det: {}", inv.det);
    println!("definiteness: {:?}", inv.definiteness);
    let class = classify_indefinite_even_unimodular(&form).map_err(invalid)?;
    println!("class: {class}");
    Ok(0)
}

fn run_check_action(path: &Path) -> Result<u8, Failure> {
    let ef = parse_action_file(path)?;
    let report = ef.check_edmonds_ewing();
    let pf = |ok: bool| if ok { "PASS" } else { "FAIL" };
    println!(
        "form: even={} unimodular={}",
        report.form_even, report.form_unimodular
    );
    println!(
        "condition 1 (module is trivial + free): {}  (a={}, b={}, c={})",
        pf(report.condition1),
        report.decomposition.trivial_rank,
        report.decomposition.sign_rank,
        report.decomposition.free_rank
    );
    println!(
        "condition 2 (pairing with image is even): {}",
        pf(report.condition2)
    );
    println!(
        "condition 3 (G-signature vanishes): {}  (g-signature = {})",
        pf(report.condition3),
        report.g_signature
    );
    match report.fixed_point_count {
        Some(k) => {
            println!("fixed points of a realizing action: {k}");
            println!("RESULT: PASS");
            Ok(0)
        }
        None => {
            println!("RESULT: FAIL");
            Ok(1)
        }
    }
}

fn run_enumerate(sigma: i64, fixed: usize, mode: EnumerateMode) -> Result<u8, Failure> {
    let value = match mode {
        EnumerateMode::Epsilon => {
            let sums = admissible_epsilon_sums(sigma, fixed).map_err(invalid)?;
            serde_json::to_value(sums).expect("integer list serializes")
        }
        EnumerateMode::Rohlin => {
            let pairs: Vec<[usize; 2]> = rohlin_admissible_pairs(sigma, fixed)
                .iter()
                .map(|p| [p.n_plus, p.n_minus])
                .collect();
            serde_json::to_value(pairs).expect("pair list serializes")
        }
    };
    println!("{}", serde_json::to_string(&value).expect("array prints"));
    Ok(0)
}

fn run_snf(path: &Path) -> Result<u8, Failure> {
    let obj = read_json_object(path)?;
    let matrix = json::field(&obj, "matrix")
        .and_then(|v| json::value_to_matrix(v, "matrix"))
        .map_err(Failure::Invalid)?;
    let snf = smith_normal_form(&matrix);
    let mut out = Map::new();
    out.insert("d".to_string(), json::matrix_to_value(&snf.d));
    out.insert("u".to_string(), json::matrix_to_value(&snf.u));
    out.insert("v".to_string(), json::matrix_to_value(&snf.v));
    print!("{}", json::canonical(&Value::Object(out)));
    Ok(0)
}

fn run_verify(path: &Path) -> Result<u8, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text)
        .map_err(|e| Failure::Invalid(format!("{}: not a certificate: {e}", path.display())))?;
    match verify_certificate(&cert) {
        Ok(()) => {
            println!("certificate verified: replay reproduces every field");
            Ok(0)
        }
        Err(divergence) => {
            println!("certificate REJECTED: {divergence}");
            Ok(1)
        }
    }
}
