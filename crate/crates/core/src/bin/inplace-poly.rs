use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use inplace_poly::bench::{self, BenchConfig};
use inplace_poly::conv::conv_acc;
use inplace_poly::euclid::{aper, iper, oper};
use inplace_poly::instrument::TrackingAllocator;
use inplace_poly::modmul::fullaxpyin;
use inplace_poly::polyio::{self, PolyFile};
use inplace_poly::reference::{pad, ref_convolution, ref_divmod, ref_mulmod};
use inplace_poly::{selftest, Ctx, Elem, Error, Field};

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

#[derive(Parser)]
#[command(name = "inplace-poly", version, about = "In-place polynomial arithmetic over prime fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Field modulus; must agree with every input file.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Recompute the result with the allocating oracle and fail on mismatch.
    #[arg(long)]
    verify: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// R = A mod B.
    Rem {
        #[command(flatten)]
        common: Common,
        a: PathBuf,
        b: PathBuf,
    },
    /// Q and R with A = B Q + R, written as two records (Q first).
    Quorem {
        #[command(flatten)]
        common: Common,
        a: PathBuf,
        b: PathBuf,
    },
    /// R += A mod B; R starts at zero unless given.
    Aper {
        #[command(flatten)]
        common: Common,
        a: PathBuf,
        b: PathBuf,
        r: Option<PathBuf>,
    },
    /// R += A C mod B; R starts at zero unless given.
    Mulmod {
        #[command(flatten)]
        common: Common,
        a: PathBuf,
        c: PathBuf,
        b: PathBuf,
        r: Option<PathBuf>,
    },
    /// C += A B mod (X^n - f), n the longest input length.
    Conv {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        f: Elem,
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
    },
    /// Operation-count CSV.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated convolution lengths.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Comma-separated dividend degrees for the remainder rows.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        /// Comma-separated divisor degrees for the remainder rows.
        #[arg(long, value_delimiter = ',')]
        divisors: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Worked examples and a reduced oracle fuzz.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn load(path: &Path, modulus: &mut Option<u64>) -> Result<Vec<Elem>, Error> {
    let PolyFile { modulus: p, coeffs } = polyio::read(path)?;
    match *modulus {
        Some(q) if q != p => {
            Err(Error::BadParameter(format!("{}: modulus {p} differs from {q}", path.display())))
        }
        _ => {
            *modulus = Some(p);
            Ok(coeffs)
        }
    }
}

fn field(modulus: Option<u64>) -> Result<Field, Error> {
    Field::new(modulus.ok_or_else(|| Error::BadParameter("no modulus given".into()))?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::BadParameter(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(on: bool, got: &[Elem], want: impl FnOnce() -> Result<Vec<Elem>, Error>) -> Result<(), Error> {
    if on {
        let want = want()?;
        if got != want.as_slice() {
            return Err(Error::GuardViolation(format!("result {got:?} differs from oracle {want:?}")));
        }
    }
    Ok(())
}

/// Trailing zeros dropped, so the divisor degree is the index of the last
/// nonzero coefficient.
fn trimmed(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn divisor(b: Vec<Elem>) -> Result<Vec<Elem>, Error> {
    let b = trimmed(b);
    if b.is_empty() {
        return Err(Error::NonInvertibleLeading);
    }
    Ok(b)
}

fn accumulator(r: Option<&PathBuf>, m: usize, modulus: &mut Option<u64>) -> Result<Vec<Elem>, Error> {
    let Some(path) = r else { return Ok(vec![0; m]) };
    let r = load(path, modulus)?;
    if r.len() > m {
        return Err(Error::LengthMismatch(format!("accumulator of length {} for divisor degree {m}", r.len())));
    }
    Ok(pad(&r, m))
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Rem { mut common, a, b } => {
            let a = load(&a, &mut common.modulus)?;
            let mut b = divisor(load(&b, &mut common.modulus)?)?;
            let fld = field(common.modulus)?;
            let p = fld.modulus();
            let m = b.len() - 1;
            let mut r = vec![0; m];
            iper(&Ctx::new(fld), &mut r, &a, &mut b)?;
            verify(common.verify, &r, || Ok(pad(&ref_divmod(p, &a, &b)?.1, m)))?;
            emit(&common.out, &polyio::format(p, &r))
        }
        Cmd::Quorem { mut common, a, b } => {
            let mut a = load(&a, &mut common.modulus)?;
            let mut b = divisor(load(&b, &mut common.modulus)?)?;
            let fld = field(common.modulus)?;
            let p = fld.modulus();
            let m = b.len() - 1;
            let a0 = a.clone();
            let (q, r) = if a.len() <= m {
                (Vec::new(), pad(&a, m))
            } else {
                oper(&Ctx::new(fld), &mut a, &mut b)?;
                (a[m..].to_vec(), a[..m].to_vec())
            };
            verify(common.verify, &[q.clone(), r.clone()].concat(), || {
                let (q, r) = ref_divmod(p, &a0, &b)?;
                Ok([pad(&q, a0.len().saturating_sub(m)), pad(&r, m)].concat())
            })?;
            emit(&common.out, &format!("{}{}", polyio::format(p, &q), polyio::format(p, &r)))
        }
        Cmd::Aper { mut common, a, b, r } => {
            let mut a = load(&a, &mut common.modulus)?;
            let mut b = divisor(load(&b, &mut common.modulus)?)?;
            let m = b.len() - 1;
            let mut r = accumulator(r.as_ref(), m, &mut common.modulus)?;
            let fld = field(common.modulus)?;
            let p = fld.modulus();
            let r0 = r.clone();
            aper(&Ctx::new(fld), &mut r, &mut a, &mut b)?;
            verify(common.verify, &r, || {
                let rem = pad(&ref_divmod(p, &a, &b)?.1, m);
                Ok(r0.iter().zip(&rem).map(|(x, y)| (x + y) % p).collect())
            })?;
            emit(&common.out, &polyio::format(p, &r))
        }
        Cmd::Mulmod { mut common, a, c, b, r } => {
            let mut a = load(&a, &mut common.modulus)?;
            let mut c = load(&c, &mut common.modulus)?;
            let mut b = divisor(load(&b, &mut common.modulus)?)?;
            let m = b.len() - 1;
            let mut r = accumulator(r.as_ref(), m, &mut common.modulus)?;
            let fld = field(common.modulus)?;
            let p = fld.modulus();
            let r0 = r.clone();
            fullaxpyin(&Ctx::new(fld), &mut r, &mut a, &mut c, &mut b)?;
            verify(common.verify, &r, || {
                let prod = pad(&ref_mulmod(p, &a, &c, &b)?, m);
                Ok(r0.iter().zip(&prod).map(|(x, y)| (x + y) % p).collect())
            })?;
            emit(&common.out, &polyio::format(p, &r))
        }
        Cmd::Conv { mut common, f, a, b, c } => {
            let a = load(&a, &mut common.modulus)?;
            let b = load(&b, &mut common.modulus)?;
            let c = load(&c, &mut common.modulus)?;
            let fld = field(common.modulus)?;
            let p = fld.modulus();
            if f >= p {
                return Err(Error::NonCanonical { value: f, modulus: p });
            }
            let n = a.len().max(b.len()).max(c.len());
            let (mut a, mut b, mut c) = (pad(&a, n), pad(&b, n), pad(&c, n));
            let c0 = c.clone();
            conv_acc(&Ctx::new(fld), &mut c, &mut a, &mut b, f)?;
            verify(common.verify, &c, || {
                Ok(c0.iter().zip(ref_convolution(p, &a, &b, f, n)).map(|(x, y)| (x + y) % p).collect())
            })?;
            emit(&common.out, &polyio::format(p, &c))
        }
        Cmd::Bench { seed, sizes, degrees, divisors, out } => {
            let d = BenchConfig::default();
            let cfg = BenchConfig {
                conv_sizes: sizes.unwrap_or(d.conv_sizes),
                iper_degrees: degrees.unwrap_or(d.iper_degrees),
                iper_divisors: divisors.unwrap_or(d.iper_divisors),
                seed,
            };
            emit(&out, &bench::to_csv(&bench::run(&cfg)?))
        }
        Cmd::Selftest { seed } => {
            let rep = selftest::run(seed)?;
            for case in rep.examples.iter().filter(|c| !c.ok()) {
                eprintln!("FAIL {}: expected {:?}, oracle {:?}, got {:?}", case.name, case.expected, case.oracle, case.got);
            }
            for what in &rep.fuzz.failures {
                eprintln!("FAIL fuzz {what}");
            }
            let passed = rep.examples.iter().filter(|c| c.ok()).count();
            println!(
                "worked examples: {passed}/{} passed; fuzz: {}/{} passed",
                rep.examples.len(),
                rep.fuzz.cases - rep.fuzz.failures.len(),
                rep.fuzz.cases
            );
            if rep.ok() {
                Ok(())
            } else {
                Err(Error::GuardViolation("selftest failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}
