//! The accumulating multiplication building block and the quadratic
//! baselines every recursive routine falls back to.
//!
//! [`MulStrategy`] is the pluggable `c += a*b` kernel; [`Schoolbook`] is the
//! default. The remaining functions are quadratic and work directly on the
//! field: truncated and wrapped products, over-place triangular matrix
//! operations, and in-place long division.

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::region::SplitTarget;

/// Default base-case cutoff of the recursive routines.
pub const DEFAULT_THRESHOLD: usize = 16;

/// An in-place accumulating multiplier.
///
/// `acc_mul` must perform `c += a*b` using O(1) extra space beyond a
/// logarithmic stack, and leave `a` and `b` exactly as it found them.
pub trait MulStrategy: Sync {
    fn name(&self) -> &str;

    /// Sizes at or below this are handled by quadratic code in the recursive
    /// routines built on top of the strategy. Always at least 1.
    fn threshold(&self) -> usize;

    /// `c += a*b`; the caller guarantees `c.len() >= a.len() + b.len() - 1`.
    fn acc_mul(&self, field: &Field, c: SplitTarget<'_>, a: &mut [Elem], b: &mut [Elem]);
}

/// Quadratic multiplication: `la * lb` muls and as many adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schoolbook {
    pub threshold: usize,
}

impl Default for Schoolbook {
    fn default() -> Self {
        Schoolbook { threshold: DEFAULT_THRESHOLD }
    }
}

impl MulStrategy for Schoolbook {
    fn name(&self) -> &str {
        "schoolbook"
    }

    fn threshold(&self) -> usize {
        self.threshold.max(1)
    }

    fn acc_mul(&self, field: &Field, mut c: SplitTarget<'_>, a: &mut [Elem], b: &mut [Elem]) {
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                let s = c.slot(i + j);
                *s = field.mul_add(*s, x, y);
            }
        }
    }
}

static DEFAULT_STRATEGY: Schoolbook = Schoolbook { threshold: DEFAULT_THRESHOLD };

/// A field together with the multiplier used by every routine of the crate.
#[derive(Clone, Copy)]
pub struct Ctx<'s> {
    pub field: Field,
    pub mul: &'s dyn MulStrategy,
}

impl std::fmt::Debug for Ctx<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ctx")
            .field("p", &self.field.modulus())
            .field("mul", &self.mul.name())
            .field("threshold", &self.mul.threshold())
            .finish()
    }
}

impl Ctx<'static> {
    /// Schoolbook multiplication with the default threshold.
    pub fn new(field: Field) -> Self {
        Ctx { field, mul: &DEFAULT_STRATEGY }
    }
}

impl<'s> Ctx<'s> {
    pub fn with_strategy(field: Field, mul: &'s dyn MulStrategy) -> Self {
        Ctx { field, mul }
    }

    #[inline]
    pub fn threshold(&self) -> usize {
        self.mul.threshold().max(1)
    }
}

/// `c += a*b`.
pub fn acc_mul_full(ctx: &Ctx<'_>, c: SplitTarget<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Ok(());
    }
    let need = a.len() + b.len() - 1;
    if c.len() < need {
        return Err(Error::TargetTooShort { need, have: c.len() });
    }
    ctx.mul.acc_mul(&ctx.field, c, a, b);
    Ok(())
}

/// `c[k] += (a*b)_k` for `k < n`, quadratic.
pub fn acc_mul_short(field: &Field, c: &mut [Elem], a: &[Elem], b: &[Elem], n: usize) -> Result<()> {
    if c.len() < n {
        return Err(Error::TargetTooShort { need: n, have: c.len() });
    }
    for (i, &x) in a.iter().enumerate().take(n) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            c[i + j] = field.mul_add(c[i + j], x, y);
        }
    }
    Ok(())
}

/// `c += a*b mod (X^n - f)` with `n = c.len()`, quadratic.
pub fn quad_conv_acc(field: &Field, c: &mut [Elem], a: &[Elem], b: &[Elem], f: Elem) {
    let n = c.len();
    debug_assert!(a.len() <= n && b.len() <= n);
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let k = i + j;
            if k < n {
                c[k] = field.mul_add(c[k], x, y);
            } else if f != 0 {
                let t = field.mul(x, y);
                c[k - n] = field.mul_add(c[k - n], f, t);
            }
        }
    }
}

/// Read-only square matrix accessed entry by entry.
pub trait MatrixView {
    fn dim(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Elem;
}

/// Row-major dense square matrix.
#[derive(Debug, Clone, Copy)]
pub struct Dense<'a> {
    pub n: usize,
    pub data: &'a [Elem],
}

impl MatrixView for Dense<'_> {
    fn dim(&self) -> usize {
        self.n
    }

    fn entry(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.n + j]
    }
}

fn check_dim(u: &impl MatrixView, v: &[Elem]) -> Result<()> {
    if u.dim() != v.len() {
        return Err(Error::LengthMismatch(format!("matrix of order {} against vector of length {}", u.dim(), v.len())));
    }
    Ok(())
}

fn check_diagonal(u: &impl MatrixView) -> Result<()> {
    if (0..u.dim()).any(|i| u.entry(i, i) == 0) {
        return Err(Error::SingularDiagonal);
    }
    Ok(())
}

/// `v <- U v` for upper-triangular `U`, row by row from the top.
pub fn quad_tri_mul_overplace(field: &Field, u: &impl MatrixView, v: &mut [Elem]) -> Result<()> {
    check_dim(u, v)?;
    let n = v.len();
    for i in 0..n {
        let mut s = field.mul(u.entry(i, i), v[i]);
        for j in i + 1..n {
            s = field.mul_add(s, u.entry(i, j), v[j]);
        }
        v[i] = s;
    }
    Ok(())
}

/// `v <- U^{-1} v` for upper-triangular `U`, back substitution.
pub fn quad_tri_solve_overplace(field: &Field, u: &impl MatrixView, v: &mut [Elem]) -> Result<()> {
    check_dim(u, v)?;
    check_diagonal(u)?;
    let n = v.len();
    for i in (0..n).rev() {
        let mut s = v[i];
        for j in i + 1..n {
            s = field.sub(s, field.mul(u.entry(i, j), v[j]));
        }
        v[i] = field.div(s, u.entry(i, i))?;
    }
    Ok(())
}

/// `v <- L v` for lower-triangular `L`, row by row from the bottom.
pub fn quad_lower_mul_overplace(field: &Field, l: &impl MatrixView, v: &mut [Elem]) -> Result<()> {
    check_dim(l, v)?;
    for i in (0..v.len()).rev() {
        let mut s = field.mul(l.entry(i, i), v[i]);
        for j in 0..i {
            s = field.mul_add(s, l.entry(i, j), v[j]);
        }
        v[i] = s;
    }
    Ok(())
}

/// `v <- L^{-1} v` for lower-triangular `L`, forward substitution.
pub fn quad_lower_solve_overplace(field: &Field, l: &impl MatrixView, v: &mut [Elem]) -> Result<()> {
    check_dim(l, v)?;
    check_diagonal(l)?;
    for i in 0..v.len() {
        let mut s = v[i];
        for j in 0..i {
            s = field.sub(s, field.mul(l.entry(i, j), v[j]));
        }
        v[i] = field.div(s, l.entry(i, i))?;
    }
    Ok(())
}

/// Leading coefficient of a divisor given at its exact degree.
pub(crate) fn divisor_degree(b: &[Elem]) -> Result<usize> {
    match b.last() {
        Some(&lead) if lead != 0 => Ok(b.len() - 1),
        _ => Err(Error::NonInvertibleLeading),
    }
}

/// `r = a mod b` by long division inside the `M`-coefficient window `r`,
/// where `M = deg b = b.len() - 1`. `a` and `b` are only read.
pub fn quad_rem(field: &Field, r: &mut [Elem], a: &[Elem], b: &[Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    if r.len() != m {
        return Err(Error::LengthMismatch(format!("remainder window of length {} for divisor degree {m}", r.len())));
    }
    if a.len() <= m {
        r[..a.len()].copy_from_slice(a);
        r[a.len()..].fill(0);
        return Ok(());
    }
    if m == 0 {
        return Ok(());
    }
    let inv_lead = field.inv(b[m])?;
    let n = a.len() - m;
    r.copy_from_slice(&a[n..]);
    for i in (0..n).rev() {
        let q = field.mul(r[m - 1], inv_lead);
        for j in (1..m).rev() {
            r[j] = field.sub(r[j - 1], field.mul(q, b[j]));
        }
        r[0] = field.sub(a[i], field.mul(q, b[0]));
    }
    Ok(())
}

/// Long division over the dividend's own storage: `a` becomes
/// `[remainder (M coefficients); quotient (len - M coefficients)]`.
pub fn quad_rem_overplace(field: &Field, a: &mut [Elem], b: &[Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    if a.len() <= m {
        return Ok(());
    }
    let inv_lead = field.inv(b[m])?;
    for i in (m..a.len()).rev() {
        let q = field.mul(a[i], inv_lead);
        a[i] = q;
        for j in 0..m {
            a[i - m + j] = field.sub(a[i - m + j], field.mul(q, b[j]));
        }
    }
    Ok(())
}

/// Inverse of [`quad_rem_overplace`]: rebuilds the dividend from
/// `[remainder; quotient]`.
pub fn quad_rem_overplace_inv(field: &Field, a: &mut [Elem], b: &[Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    if a.len() <= m {
        return Ok(());
    }
    for i in m..a.len() {
        let q = a[i];
        for j in 0..m {
            a[i - m + j] = field.mul_add(a[i - m + j], q, b[j]);
        }
        a[i] = field.mul(q, b[m]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::measure;
    use crate::reference;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fld(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn acc_mul_full_worked() {
        let ctx = Ctx::new(fld(7));
        let (mut a, mut b, mut c) = (vec![2, 3], vec![1, 4], vec![1, 1, 1]);
        acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut a, &mut b).unwrap();
        assert_eq!(c, [3, 5, 6]);
        let mut one = vec![1];
        let mut c = vec![0, 0];
        acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut a, &mut one).unwrap();
        assert_eq!(c, a);
        let mut z = vec![0, 0];
        let mut c = vec![4, 4, 4];
        acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut z, &mut b).unwrap();
        assert_eq!(c, [4, 4, 4]);
        let mut short = vec![0, 0];
        assert_eq!(
            acc_mul_full(&ctx, SplitTarget::whole(&mut short), &mut a, &mut b),
            Err(Error::TargetTooShort { need: 3, have: 2 })
        );
    }

    #[test]
    fn schoolbook_counts_and_space() {
        let ctx = Ctx::new(fld(65521));
        let mut a: Vec<Elem> = (1..=8).collect();
        let mut b: Vec<Elem> = (2..=9).collect();
        let mut c = vec![0; 15];
        let (r, ops, g) = measure(|| acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut a, &mut b));
        r.unwrap();
        assert_eq!((ops.muls, ops.adds, ops.divs), (64, 64, 0));
        assert_eq!(g.peak_aux_elems, 0);
    }

    #[test]
    fn acc_mul_full_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u64, 3, 5, 7, 13, 65521] {
            let f = fld(p);
            let ctx = Ctx::new(f);
            for _ in 0..200 {
                let la = rng.gen_range(1..40);
                let lb = rng.gen_range(1..40);
                let mut a: Vec<Elem> = (0..la).map(|_| rng.gen_range(0..p)).collect();
                let mut b: Vec<Elem> = (0..lb).map(|_| rng.gen_range(0..p)).collect();
                let c0: Vec<Elem> = (0..la + lb - 1).map(|_| rng.gen_range(0..p)).collect();
                let (a0, b0) = (a.clone(), b.clone());
                let mut c = c0.clone();
                acc_mul_full(&ctx, SplitTarget::whole(&mut c), &mut a, &mut b).unwrap();
                let prod = reference::ref_mul(p, &a0, &b0);
                let want: Vec<Elem> = c0.iter().zip(&prod).map(|(x, y)| (x + y) % p).collect();
                assert_eq!(c, want);
                assert_eq!((a, b), (a0, b0));
            }
        }
    }

    #[test]
    fn short_products() {
        let f = fld(5);
        let mut c = vec![0, 0];
        acc_mul_short(&f, &mut c, &[1, 2], &[3, 1], 2).unwrap();
        assert_eq!(c, [3, 2]);
        let mut c = vec![1, 1];
        acc_mul_short(&f, &mut c, &[2, 2], &[3, 3], 1).unwrap();
        assert_eq!(c, [2, 1]);
        let mut c = vec![1];
        acc_mul_short(&f, &mut c, &[2], &[3], 0).unwrap();
        assert_eq!(c, [1]);
        assert!(acc_mul_short(&f, &mut c, &[2], &[3], 2).is_err());
    }

    #[test]
    fn triangular_quadratic() {
        let f = fld(5);
        let u = Dense { n: 2, data: &[1, 2, 0, 1] };
        let mut v = vec![3, 4];
        quad_tri_mul_overplace(&f, &u, &mut v).unwrap();
        assert_eq!(v, [1, 4]);
        let mut v = vec![3, 4];
        quad_tri_solve_overplace(&f, &u, &mut v).unwrap();
        assert_eq!(v, [0, 4]);
        let id = Dense { n: 2, data: &[1, 0, 0, 1] };
        let mut v = vec![3, 4];
        quad_tri_mul_overplace(&f, &id, &mut v).unwrap();
        quad_tri_solve_overplace(&f, &id, &mut v).unwrap();
        quad_lower_mul_overplace(&f, &id, &mut v).unwrap();
        quad_lower_solve_overplace(&f, &id, &mut v).unwrap();
        assert_eq!(v, [3, 4]);
        let sing = Dense { n: 2, data: &[0, 1, 0, 1] };
        assert_eq!(quad_tri_solve_overplace(&f, &sing, &mut v), Err(Error::SingularDiagonal));
    }

    #[test]
    fn triangular_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = fld(13);
        for n in 1..12 {
            let mut up = vec![0; n * n];
            let mut lo = vec![0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let x = if i == j { rng.gen_range(1..13) } else { rng.gen_range(0..13) };
                    if j >= i {
                        up[i * n + j] = x;
                    }
                    if j <= i {
                        lo[i * n + j] = x;
                    }
                }
            }
            let v0: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..13)).collect();
            let mut v = v0.clone();
            quad_tri_mul_overplace(&f, &Dense { n, data: &up }, &mut v).unwrap();
            assert_eq!(v, reference::ref_dense_matvec(13, n, &up, &v0));
            quad_tri_solve_overplace(&f, &Dense { n, data: &up }, &mut v).unwrap();
            assert_eq!(v, v0);
            quad_lower_mul_overplace(&f, &Dense { n, data: &lo }, &mut v).unwrap();
            assert_eq!(v, reference::ref_dense_matvec(13, n, &lo, &v0));
            quad_lower_solve_overplace(&f, &Dense { n, data: &lo }, &mut v).unwrap();
            assert_eq!(v, v0);
        }
    }

    #[test]
    fn long_division() {
        let f = fld(7);
        let mut r = vec![0, 0];
        quad_rem(&f, &mut r, &[1, 2, 0, 1], &[1, 0, 1]).unwrap();
        assert_eq!(r, [1, 1]);
        let mut r = vec![9, 9, 9];
        quad_rem(&f, &mut r, &[3, 4], &[1, 2, 3, 4]).unwrap();
        assert_eq!(r, [3, 4, 0]);
        let mut r = vec![0, 0];
        quad_rem(&f, &mut r, &[5, 6, 1, 2, 3], &[0, 0, 1]).unwrap();
        assert_eq!(r, [5, 6]);
        assert_eq!(quad_rem(&f, &mut r, &[1, 2, 3], &[1, 0, 0]), Err(Error::NonInvertibleLeading));

        let mut a = vec![1, 2, 0, 1];
        quad_rem_overplace(&f, &mut a, &[1, 0, 1]).unwrap();
        assert_eq!(a, [1, 1, 0, 1]);
        quad_rem_overplace_inv(&f, &mut a, &[1, 0, 1]).unwrap();
        assert_eq!(a, [1, 2, 0, 1]);
    }

    #[test]
    fn long_division_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2u64, 3, 7, 65521] {
            let f = fld(p);
            for _ in 0..300 {
                let m = rng.gen_range(0..10);
                let na = rng.gen_range(0..30);
                let a: Vec<Elem> = (0..na).map(|_| rng.gen_range(0..p)).collect();
                let mut b: Vec<Elem> = (0..=m).map(|_| rng.gen_range(0..p)).collect();
                b[m] = rng.gen_range(1..p);
                let (q, rem) = reference::ref_divmod(p, &a, &b).unwrap();
                let mut r = vec![0; m];
                quad_rem(&f, &mut r, &a, &b).unwrap();
                assert_eq!(r, reference::pad(&rem, m));
                if a.len() > m {
                    let mut w = a.clone();
                    quad_rem_overplace(&f, &mut w, &b).unwrap();
                    assert_eq!(&w[..m], &reference::pad(&rem, m)[..]);
                    assert_eq!(&w[m..], &reference::pad(&q, a.len() - m)[..]);
                    quad_rem_overplace_inv(&f, &mut w, &b).unwrap();
                    assert_eq!(w, a);
                }
            }
        }
    }
}
