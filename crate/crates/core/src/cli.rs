//! `qcc` command-line front end.
//!
//! Every randomized command takes `--seed` (a `u64` fed to ChaCha20 via
//! `seed_from_u64`), so identical flags give byte-identical outputs.
//!
//! Exit codes: 0 success, 1 usage or file error, 2 parameter or capacity
//! violation, 3 cryptographic failure, 4 resource bound exceeded.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::autgroup::{enumerate_t_group_bounded, quantum_premise, DEFAULT_MAX_P};
use crate::codes::hamming_weight;
use crate::cryptanalysis::isd::{lee_brickell_attack, stern_attack, AttackOutcome, SternParams};
use crate::cryptanalysis::params::{
    compare_reference, comparison_report, mceliece_keysize_bits, param_report, to_csv, to_table, REFERENCE_TABLE,
};
use crate::cryptanalysis::workfactor::quasi_cyclic_w2;
use crate::crypto::mceliece::random_error;
use crate::crypto::{
    mceliece, niederreiter, CiphertextFile, McElieceKeyPair, McEliecePublicKey, NiederreiterKeyPair, NiederreiterPublicKey,
};
use crate::error::Error;
use crate::qcgen::{check_array_conditions, check_stack_conditions, generate_c, generate_h, QcSpec};

#[derive(Debug, Parser)]
#[command(name = "qcc", version, about = "Quasi-cyclic McEliece and Niederreiter toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    /// Parity-check array over GF(2^l).
    Niederreiter,
    /// Binary generator stack.
    Mceliece,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    LeeBrickell,
    Stern,
}

#[derive(Debug, clap::Args)]
struct ShapeArgs {
    #[arg(long, value_enum, default_value = "niederreiter")]
    scheme: Scheme,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    m: usize,
    /// Field degree (Niederreiter only).
    #[arg(long, default_value_t = 3)]
    l: u8,
    /// Row weight of each circulant (McEliece only).
    #[arg(long = "t-r", default_value_t = 3)]
    t_r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a structured matrix and report its construction conditions.
    Construct {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Write the spec file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a key pair from a fresh or saved spec.
    Keygen {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Plaintext weight (Niederreiter) or error count (McEliece).
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Use this spec instead of generating one.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Private key file.
        #[arg(long)]
        out: PathBuf,
        /// Public key file.
        #[arg(long = "pub")]
        public: Option<PathBuf>,
    },
    /// Encrypt a message file with a public (or private) key file.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decrypt a ciphertext file with a private key file.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate the automorphism group of a small structured matrix.
    Audit {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Audit this spec instead of generating one.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Largest p accepted by the exhaustive search.
        #[arg(long, default_value_t = DEFAULT_MAX_P)]
        max_p: usize,
        /// Decay rate used for the indistinguishability bound.
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
    /// Run information-set decoding against a planted McEliece instance.
    Attack {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "t-r", default_value_t = 1)]
        t_r: usize,
        /// Planted error weight.
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Largest error weight tried inside the information set.
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long, value_enum, default_value = "lee-brickell")]
        method: Method,
        /// Collision window (Stern only).
        #[arg(long, default_value_t = 4)]
        window: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Size parameters against classical and quantum attacks.
    Analyze {
        /// Recompute the published parameter table.
        #[arg(long)]
        table1: bool,
        #[arg(long, default_value_t = 3)]
        l: u8,
        /// Size a single row: security bits.
        #[arg(long, requires_all = ["p", "t"])]
        security: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        /// McEliece key size of an `[n, k]` code, as `n,k`; repeatable.
        #[arg(long, value_parser = parse_pair)]
        keysize: Vec<(u64, u64)>,
        /// Emit CSV instead of an aligned table.
        #[arg(long)]
        csv: bool,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidCiphertext(_) | Error::DecodingFailure => 3,
            Error::TooLarge { .. } => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn file_error(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("{}: {e}", path.display()) }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| file_error(path, e))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| file_error(path, e))
}

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::Construct { shape, out } => construct(&shape, out.as_deref()),
        Command::Keygen { shape, t, spec, out, public } => keygen(&shape, t, spec.as_deref(), &out, public.as_deref()),
        Command::Encrypt { key, input, out, seed } => encrypt(&key, &input, &out, seed),
        Command::Decrypt { key, input, out } => decrypt(&key, &input, &out),
        Command::Audit { shape, spec, max_p, delta } => audit(&shape, spec.as_deref(), max_p, delta),
        Command::Attack { p, m, t_r, t, j, method, window, max_iters, seed } => {
            attack(p, m, t_r, t, j, method, window, max_iters, seed)
        }
        Command::Analyze { table1, l, security, p, t, keysize, csv } => analyze(table1, l, security.zip(p).zip(t), &keysize, csv),
    }
}

fn generate_spec(shape: &ShapeArgs) -> Result<QcSpec, Failure> {
    let mut r = rng(shape.seed);
    Ok(match shape.scheme {
        Scheme::Niederreiter => generate_h(shape.p, shape.m, shape.l, &mut r)?.into(),
        Scheme::Mceliece => generate_c(shape.p, shape.m, shape.t_r, &mut r)?.into(),
    })
}

fn load_or_generate(shape: &ShapeArgs, spec: Option<&Path>) -> Result<QcSpec, Failure> {
    match spec {
        Some(path) => Ok(QcSpec::from_text(&read_file(path)?)?),
        None => generate_spec(shape),
    }
}

fn condition_report(spec: &QcSpec) -> String {
    match spec {
        QcSpec::Array(s) => check_array_conditions(s).to_text(),
        QcSpec::Stack(s) => check_stack_conditions(s).to_text(),
    }
}

fn construct(shape: &ShapeArgs, out: Option<&Path>) -> Result<String, Failure> {
    let spec = generate_spec(shape)?;
    let mut text = condition_report(&spec);
    match out {
        Some(path) => {
            write_file(path, spec.to_text().as_bytes())?;
            let _ = writeln!(text, "spec written to {}", path.display());
        }
        None => text.push_str(&spec.to_text()),
    }
    Ok(text)
}

fn keygen(shape: &ShapeArgs, t: usize, spec: Option<&Path>, out: &Path, public: Option<&Path>) -> Result<String, Failure> {
    let spec = load_or_generate(shape, spec)?;
    // key randomness is drawn from a stream separate from the spec's
    let mut r = rng(shape.seed.wrapping_add(1));
    let (private, public_text, summary) = match &spec {
        QcSpec::Array(s) => {
            let kp = NiederreiterKeyPair::generate(s, t, &mut r)?;
            let m = &kp.public.matrix;
            (
                kp.to_text(),
                kp.public.to_text(),
                format!("niederreiter public key {}x{} over GF(2^{}), t = {t}\n", m.rows(), m.cols(), s.l()),
            )
        }
        QcSpec::Stack(s) => {
            let kp = McElieceKeyPair::generate(s, t, &mut r)?;
            let m = &kp.public.matrix;
            (kp.to_text(), kp.public.to_text(), format!("mceliece public key {}x{}, errors = {t}\n", m.rows(), m.cols()))
        }
    };
    write_file(out, private.as_bytes())?;
    if let Some(path) = public {
        write_file(path, public_text.as_bytes())?;
    }
    Ok(summary)
}

fn header(text: &str) -> &str {
    text.lines().next().unwrap_or("").trim_end()
}

fn encrypt(key: &Path, input: &Path, out: &Path, seed: u64) -> Result<String, Failure> {
    let key_text = read_file(key)?;
    let msg = fs::read(input).map_err(|e| file_error(input, e))?;
    let file = match header(&key_text) {
        niederreiter::PUBLIC_HEADER | niederreiter::PRIVATE_HEADER => {
            NiederreiterPublicKey::from_text(&key_text)?.encrypt_message(&msg)?
        }
        mceliece::PUBLIC_HEADER | mceliece::PRIVATE_HEADER => {
            McEliecePublicKey::from_text(&key_text)?.encrypt_message(&msg, &mut rng(seed))?
        }
        other => return Err(Error::Parse(format!("unrecognised key header {other:?}")).into()),
    };
    write_file(out, file.to_text().as_bytes())?;
    Ok(format!("{} bytes encrypted into {} blocks\n", msg.len(), file.blocks.len()))
}

fn decrypt(key: &Path, input: &Path, out: &Path) -> Result<String, Failure> {
    let key_text = read_file(key)?;
    let file = CiphertextFile::from_text(&read_file(input)?).map_err(|e| Error::InvalidCiphertext(e.to_string()))?;
    let msg = match header(&key_text) {
        niederreiter::PRIVATE_HEADER => NiederreiterKeyPair::from_text(&key_text)?.decrypt_message(&file)?,
        mceliece::PRIVATE_HEADER => McElieceKeyPair::from_text(&key_text)?.decrypt_message(&file)?,
        other => return Err(Error::Parse(format!("decryption needs a private key, found header {other:?}")).into()),
    };
    write_file(out, &msg)?;
    Ok(format!("{} bytes decrypted\n", msg.len()))
}

fn audit(shape: &ShapeArgs, spec: Option<&Path>, max_p: usize, delta: f64) -> Result<String, Failure> {
    let spec = load_or_generate(shape, spec)?;
    let report = enumerate_t_group_bounded(&spec, max_p)?;
    let premise = quantum_premise(spec.p(), spec.m(), spec.l(), delta)?;
    let mut text = report.to_text();
    text.push_str(&premise.to_text());
    Ok(text)
}

#[allow(clippy::too_many_arguments)]
fn attack(
    p: usize,
    m: usize,
    t_r: usize,
    t: usize,
    j: usize,
    method: Method,
    window: usize,
    max_iters: usize,
    seed: u64,
) -> Result<String, Failure> {
    let mut r = rng(seed);
    let spec = generate_c(p, m, t_r, &mut r)?;
    // the attacker sees only the public matrix; the error is planted directly
    let kp = McElieceKeyPair::generate(&spec, 0, &mut r)?;
    let g = &kp.public.matrix;
    let plaintext: Vec<u16> = (0..g.rows()).map(|_| rand::Rng::gen_range(&mut r, 0..2)).collect();
    let e = random_error(g.cols(), t, 2, &mut r);
    let c = kp.public.encrypt_with_error(&plaintext, &e)?;
    let outcome = match method {
        Method::LeeBrickell => lee_brickell_attack(g, &c, t, j, &mut r, max_iters)?,
        Method::Stern => stern_attack(g, &c, t, SternParams { half_weight: j, window }, &mut r, max_iters)?,
    };
    let mut text = format!("code: [{}, {}], planted error weight {t}\n", g.cols(), g.rows());
    if method == Method::LeeBrickell && j <= t {
        let wf = quasi_cyclic_w2(p as u64, m as u64, t as u64)?;
        let _ = writeln!(text, "log2 W_2: {:.3}", wf.log2_w);
    }
    match outcome {
        AttackOutcome::Success { plaintext: found, error, iterations } => {
            let _ = writeln!(text, "outcome: success after {iterations} iterations");
            let _ = writeln!(text, "recovered_weight: {}", hamming_weight(&error));
            let _ = writeln!(text, "matches_planted: {}", found == plaintext);
        }
        AttackOutcome::Failure { iterations } => {
            let _ = writeln!(text, "outcome: failure after {iterations} iterations");
        }
    }
    Ok(text)
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (n, k) = s.split_once(',').ok_or_else(|| format!("expected n,k, got {s:?}"))?;
    let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(n)?, num(k)?))
}

fn analyze(table1: bool, l: u8, row: Option<((u32, u64), u64)>, keysize: &[(u64, u64)], csv: bool) -> Result<String, Failure> {
    let mut text = String::new();
    if table1 {
        let cmp = compare_reference(l)?;
        if csv {
            let rows: Vec<_> = cmp.iter().map(|c| c.computed.clone()).collect();
            text.push_str(&to_csv(&rows));
        } else {
            let _ = writeln!(text, "published table recomputed at l = {l} ({} rows)", REFERENCE_TABLE.len());
            text.push_str(&comparison_report(&cmp));
        }
    }
    if let Some(((security, p), t)) = row {
        let rows = param_report(&[(security, p, t, l)])?;
        text.push_str(&if csv { to_csv(&rows) } else { to_table(&rows) });
    }
    for &(n, k) in keysize {
        let _ = writeln!(text, "mceliece key size [{n}, {k}]: {} bits", mceliece_keysize_bits(n, k)?);
    }
    if text.is_empty() {
        return Err(Failure { code: 1, message: "nothing to analyze: pass --table1, --security/--p/--t or --keysize".into() });
    }
    Ok(text)
}
