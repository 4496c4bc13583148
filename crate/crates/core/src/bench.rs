//! Operation-count benchmark rows, their CSV form, and the checks run on them.
//!
//! Counts are exact field operations, so runs are reproducible for a given
//! seed and the checks below can be re-run from the CSV alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conv::conv_acc;
use crate::error::{Error, Result};
use crate::euclid::iper;
use crate::ff::{Elem, Field};
use crate::instrument::measure;
use crate::mulbase::{acc_mul_full, Ctx};
use crate::region::SplitTarget;

pub const CSV_HEADER: &str = "op,p,n,m,l,adds,muls,divs,peak_aux,depth";

/// Large prime used for the odd-characteristic rows.
pub const BENCH_PRIME: u64 = 65521;

/// One measured point. `n`, `m`, `l` are sizes whose meaning depends on `op`:
/// operand lengths for `acc_mul_full`, the length for convolutions, and the
/// dividend and divisor degrees for `iper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub op: String,
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
    pub peak_aux: usize,
    pub depth: usize,
}

impl BenchRow {
    pub fn ops(&self) -> u64 {
        self.adds + self.muls + self.divs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub conv_sizes: Vec<usize>,
    pub iper_degrees: Vec<usize>,
    pub iper_divisors: Vec<usize>,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            conv_sizes: (6..=11).map(|k| 1 << k).collect(),
            iper_degrees: (7..=11).map(|k| 1 << k).collect(),
            iper_divisors: vec![64, 128, 256],
            seed: 1,
        }
    }
}

/// Convolution classes emitted by [`run`]: name, field, `f`.
pub const CONV_CLASSES: [(&str, u64, Elem); 4] = [
    ("conv_acc_f1", BENCH_PRIME, 1),
    ("conv_acc_f3", BENCH_PRIME, 3),
    ("conv_acc_f0", 2, 0),
    ("conv_acc_f0", BENCH_PRIME, 0),
];

fn rand_vec(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Vec<Elem> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

fn row(op: &str, p: u64, n: usize, m: usize, l: usize, ops: crate::instrument::OpCounter, g: crate::instrument::AllocGuard) -> BenchRow {
    BenchRow {
        op: op.to_string(),
        p,
        n,
        m,
        l,
        adds: ops.adds,
        muls: ops.muls,
        divs: ops.divs,
        peak_aux: g.peak_aux_elems,
        depth: g.peak_depth,
    }
}

/// Runs every configured point with the default multiplier.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for &(name, p, f) in &CONV_CLASSES {
        let ctx = Ctx::new(Field::new(p)?);
        for &n in &cfg.conv_sizes {
            let h = n.div_ceil(2);
            let (mut a, mut b) = (rand_vec(&mut rng, p, h), rand_vec(&mut rng, p, h));
            let mut c = rand_vec(&mut rng, p, 2 * h - 1);
            let (res, ops, g) = measure(|| acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut a, &mut b));
            res?;
            if !rows.iter().any(|r: &BenchRow| r.op == "acc_mul_full" && r.p == p && r.n == h) {
                rows.push(row("acc_mul_full", p, h, h, 0, ops, g));
            }

            let (mut a, mut b, mut c) = (rand_vec(&mut rng, p, n), rand_vec(&mut rng, p, n), rand_vec(&mut rng, p, n));
            let (res, ops, g) = measure(|| conv_acc(&ctx, &mut c, &mut a, &mut b, f));
            res?;
            rows.push(row(name, p, n, 0, 0, ops, g));
        }
    }
    let ctx = Ctx::new(Field::new(BENCH_PRIME)?);
    for &m in &cfg.iper_divisors {
        for &n in cfg.iper_degrees.iter().filter(|&&n| n >= m) {
            let a = rand_vec(&mut rng, BENCH_PRIME, n + 1);
            let mut b = rand_vec(&mut rng, BENCH_PRIME, m + 1);
            b[m] = rng.gen_range(1..BENCH_PRIME);
            let mut r = vec![0; m];
            let (res, ops, g) = measure(|| iper(&ctx, &mut r, &a, &mut b));
            res?;
            rows.push(row("iper", BENCH_PRIME, n, m, 0, ops, g));
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.op, r.p, r.n, r.m, r.l, r.adds, r.muls, r.divs, r.peak_aux, r.depth
        ));
    }
    out
}

pub fn from_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Parse(format!("CSV header must be {CSV_HEADER:?}")));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 10 {
                return Err(Error::Parse(format!("expected 10 fields in {line:?}")));
            }
            let num = |i: usize| f[i].parse::<u64>().map_err(|e| Error::Parse(format!("field {i} of {line:?}: {e}")));
            Ok(BenchRow {
                op: f[0].to_string(),
                p: num(1)?,
                n: num(2)? as usize,
                m: num(3)? as usize,
                l: num(4)? as usize,
                adds: num(5)?,
                muls: num(6)?,
                divs: num(7)?,
                peak_aux: num(8)? as usize,
                depth: num(9)? as usize,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePoint {
    pub op: String,
    pub p: u64,
    pub n: usize,
    pub ops: u64,
    pub half_mul: u64,
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCheck {
    pub products: u64,
    pub kappa: f64,
    pub points: Vec<RecurrencePoint>,
}

impl RecurrenceCheck {
    pub fn ok(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|p| p.ok)
    }
}

/// Checks `T(n) <= products * S(ceil(n/2)) + kappa * n` for the rows of the
/// given `(op, p)` classes, where `S` is the `acc_mul_full` row of the same
/// field. One `kappa >= 0` is fitted on the `fit` smallest sizes of every
/// class and then applied to all sizes.
pub fn check_recurrence(rows: &[BenchRow], classes: &[(&str, u64)], products: u64, fit: usize) -> Result<RecurrenceCheck> {
    let mut series = Vec::new();
    for &(op, p) in classes {
        let mut pts: Vec<(usize, u64, u64)> = Vec::new();
        for r in rows.iter().filter(|r| r.op == op && r.p == p) {
            let h = r.n.div_ceil(2);
            let s = rows
                .iter()
                .find(|x| x.op == "acc_mul_full" && x.p == p && x.n == h && x.m == h)
                .ok_or_else(|| Error::BadParameter(format!("no acc_mul_full row for p = {p}, size {h}")))?;
            pts.push((r.n, r.ops(), s.ops()));
        }
        pts.sort();
        series.push((op, p, pts));
    }
    let mut kappa = 0f64;
    for (_, _, pts) in &series {
        for &(n, t, s) in pts.iter().take(fit) {
            kappa = kappa.max((t as f64 - (products * s) as f64) / n as f64);
        }
    }
    let points = series
        .iter()
        .flat_map(|(op, p, pts)| {
            pts.iter().map(move |&(n, t, s)| {
                let bound = (products * s) as f64 + kappa * n as f64;
                RecurrencePoint { op: op.to_string(), p: *p, n, ops: t, half_mul: s, bound, ok: t as f64 <= bound }
            })
        })
        .collect();
    Ok(RecurrenceCheck { products, kappa, points })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCheck {
    /// `(M, N, ops(2N) / ops(N), ok)`.
    pub doubling: Vec<(usize, usize, f64, bool)>,
    /// `(N, M, ops / (N M))`.
    pub grid: Vec<(usize, usize, f64)>,
    /// Constant fitted to the grid, if every point lies within tolerance of it.
    pub grid_constant: Option<f64>,
}

impl ScalingCheck {
    pub fn ok(&self) -> bool {
        !self.doubling.is_empty() && self.doubling.iter().all(|d| d.3) && self.grid_constant.is_some()
    }
}

/// Checks the `iper` rows: at each fixed `M` the count doubles within
/// `doubling_tol` as `N` doubles, and `ops / (N M)` stays within `grid_tol`
/// of a single constant over all rows.
pub fn check_scaling(rows: &[BenchRow], doubling_tol: f64, grid_tol: f64) -> ScalingCheck {
    let iper: Vec<&BenchRow> = rows.iter().filter(|r| r.op == "iper").collect();
    let mut doubling = Vec::new();
    for r in &iper {
        if let Some(next) = iper.iter().find(|x| x.m == r.m && x.n == 2 * r.n) {
            let ratio = next.ops() as f64 / r.ops() as f64;
            doubling.push((r.m, r.n, ratio, (ratio - 2.0).abs() <= 2.0 * doubling_tol));
        }
    }
    doubling.sort_by_key(|d| (d.0, d.1));
    let grid: Vec<(usize, usize, f64)> = iper.iter().map(|r| (r.n, r.m, r.ops() as f64 / (r.n * r.m) as f64)).collect();
    let lo = grid.iter().map(|g| g.2).fold(f64::INFINITY, f64::min);
    let hi = grid.iter().map(|g| g.2).fold(0f64, f64::max);
    let grid_constant = if !grid.is_empty() && hi / (1.0 + grid_tol) <= lo / (1.0 - grid_tol) {
        Some((hi / (1.0 + grid_tol) + lo / (1.0 - grid_tol)) / 2.0)
    } else {
        None
    };
    ScalingCheck { doubling, grid, grid_constant }
}
