//! Accumulated modular multiplication `R += A C mod B`, in place.
//!
//! With `L = deg A`, `N = deg C`, `M = deg B` and `q = L + N - M`, write
//! `A C = B Q + R'`. The top `q + 1` coefficients of both sides only involve
//! the top `q + 1` coefficients `c2` of `C`:
//!
//! ```text
//! A_top c2 = T Q          (both upper triangular Toeplitz, diagonals a_L, b_M)
//! R'       = (A C mod X^M) - (B Q mod X^M)
//! ```
//!
//! so `c2 <- T^{-1} A_top c2` turns `c2` into `Q` in place, the low part is
//! updated, and `c2` is mapped back.

use crate::conv::acc_mul_trunc;
use crate::error::{Error, Result};
use crate::euclid::{oper, oper_inv};
use crate::ff::Elem;
use crate::mulbase::{acc_mul_full, divisor_degree, Ctx};
use crate::region::{reverse_in_place, SplitTarget};
use crate::toeplitz::{banded_upper_mul, banded_upper_solve};

/// Degrees of an accumulated modular multiplication instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxpyinBlocks {
    /// Degree of the multiplier `A`.
    pub l: usize,
    /// Degree of the multiplicand `C`.
    pub n: usize,
    /// Degree of the modulus `B`.
    pub m: usize,
}

impl AxpyinBlocks {
    /// Checks `a_L != 0`, `b_M != 0` and `L <= min(N, M)`.
    pub fn new(a: &[Elem], c: &[Elem], b: &[Elem]) -> Result<Self> {
        let m = divisor_degree(b)?;
        let l = divisor_degree(a)?;
        if c.is_empty() {
            return Err(Error::DegreeConstraint("empty multiplicand".into()));
        }
        let n = c.len() - 1;
        if l > n.min(m) {
            return Err(Error::DegreeConstraint(format!("deg A = {l} exceeds min(deg C, deg B) = {}", n.min(m))));
        }
        Ok(AxpyinBlocks { l, n, m })
    }

    /// `q = L + N - M`, or `None` when the product is already reduced.
    pub fn q(&self) -> Option<usize> {
        (self.l + self.n).checked_sub(self.m)
    }

    /// Coefficients of `C` that the quotient depends on.
    pub fn top_range(&self) -> Option<std::ops::Range<usize>> {
        self.q().map(|q| self.n - q..self.n + 1)
    }
}

fn with_rev<R>(v: &mut [Elem], op: impl FnOnce(&mut [Elem]) -> R) -> R {
    reverse_in_place(v);
    let out = op(v);
    reverse_in_place(v);
    out
}

/// Replaces the top `q + 1` coefficients of `C` by the quotient `A C div B`.
/// Undone by [`unload_quotient`]; requires `L + N >= M`.
pub fn load_quotient(ctx: &Ctx<'_>, a: &mut [Elem], c: &mut [Elem], b: &mut [Elem]) -> Result<AxpyinBlocks> {
    let blk = AxpyinBlocks::new(a, c, b)?;
    let Some(q) = blk.q() else {
        return Err(Error::DegreeConstraint("no quotient: deg A + deg C < deg B".into()));
    };
    let c2 = &mut c[blk.n - q..];
    with_rev(&mut a[blk.l.saturating_sub(q)..], |alpha| banded_upper_mul(ctx, alpha, c2))?;
    with_rev(&mut b[blk.m.saturating_sub(q)..], |alpha| banded_upper_solve(ctx, alpha, c2))?;
    Ok(blk)
}

/// Inverse of [`load_quotient`].
pub fn unload_quotient(ctx: &Ctx<'_>, a: &mut [Elem], c: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let blk = AxpyinBlocks::new(a, c, b)?;
    let Some(q) = blk.q() else {
        return Err(Error::DegreeConstraint("no quotient: deg A + deg C < deg B".into()));
    };
    let c2 = &mut c[blk.n - q..];
    with_rev(&mut b[blk.m.saturating_sub(q)..], |alpha| banded_upper_mul(ctx, alpha, c2))?;
    with_rev(&mut a[blk.l.saturating_sub(q)..], |alpha| banded_upper_solve(ctx, alpha, c2))
}

fn remainder_len(r: &[Elem], m: usize) -> Result<()> {
    if r.len() != m {
        return Err(Error::LengthMismatch(format!("remainder of length {} for modulus degree {m}", r.len())));
    }
    Ok(())
}

/// `r += A C mod B` for `deg A <= min(deg C, deg B)` with nonzero leading
/// coefficients of `A` and `B`. All of `A`, `C`, `B` are restored.
pub fn axpyin(ctx: &Ctx<'_>, r: &mut [Elem], a: &mut [Elem], c: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let blk = AxpyinBlocks::new(a, c, b)?;
    remainder_len(r, blk.m)?;
    let Some(q) = blk.q() else {
        let len = blk.l + blk.n + 1;
        return acc_mul_full(ctx, SplitTarget::whole(&mut r[..len]), a, c);
    };
    load_quotient(ctx, a, c, b)?;
    let m = blk.m;
    let c2 = &mut c[blk.n - q..];
    ctx.field.negate(c2);
    let step = acc_mul_trunc(ctx, r, &mut b[..m], c2);
    ctx.field.negate(c2);
    step?;
    unload_quotient(ctx, a, c, b)?;
    acc_mul_trunc(ctx, r, a, c)
}

fn true_len(v: &[Elem]) -> usize {
    v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1)
}

/// `r += A C mod B` for any degrees of `A` and `C`.
///
/// High zero coefficients of `A` and `C` are ignored. The factor of larger
/// degree is reduced modulo `B` over its own storage first when needed, and
/// restored afterwards.
pub fn fullaxpyin(ctx: &Ctx<'_>, r: &mut [Elem], a: &mut [Elem], c: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    remainder_len(r, m)?;
    let (la, lc) = (true_len(a), true_len(c));
    if la == 0 || lc == 0 || m == 0 {
        return Ok(());
    }
    let (mut a, mut c) = (&mut a[..la], &mut c[..lc]);
    if a.len() > c.len() {
        std::mem::swap(&mut a, &mut c);
    }
    if a.len() - 1 <= m {
        return axpyin(ctx, r, a, c, b);
    }
    oper(ctx, a, b)?;
    let lr = true_len(&a[..m]);
    let step = if lr == 0 { Ok(()) } else { axpyin(ctx, r, &mut a[..lr], c, b) };
    let undo = oper_inv(ctx, a, b);
    step.and(undo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Field;
    use crate::mulbase::Schoolbook;
    use crate::reference::{pad, ref_divmod, ref_mul, ref_mulmod};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(rng: &mut ChaCha8Rng, p: u64, deg: usize) -> Vec<Elem> {
        let mut v: Vec<Elem> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        v[deg] = rng.gen_range(1..p);
        v
    }

    #[test]
    fn worked_examples() {
        let ctx = Ctx::new(Field::new(7).unwrap());
        let mut r = vec![0, 0];
        axpyin(&ctx, &mut r, &mut [2, 1], &mut [1, 2, 3], &mut [1, 0, 1]).unwrap();
        assert_eq!(r, [1, 2]);

        let c5 = Ctx::new(Field::new(5).unwrap());
        let mut r = vec![0, 0];
        fullaxpyin(&c5, &mut r, &mut [1, 0, 0, 1], &mut [0, 0, 0, 1], &mut [1, 0, 1]).unwrap();
        assert_eq!(r, [4, 4]);
    }

    #[test]
    fn reduced_branch_and_errors() {
        let ctx = Ctx::new(Field::new(7).unwrap());
        let mut r = vec![1, 1, 1, 1, 1];
        axpyin(&ctx, &mut r, &mut [2, 1], &mut [1, 2], &mut [1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(r, [3, 6, 3, 1, 1]);
        let mut r = vec![0, 0];
        assert!(matches!(
            axpyin(&ctx, &mut r, &mut [1, 1, 1], &mut [1, 2], &mut [1, 0, 1]),
            Err(Error::DegreeConstraint(_))
        ));
        assert_eq!(axpyin(&ctx, &mut r, &mut [1, 0], &mut [1, 2], &mut [1, 0, 1]), Err(Error::NonInvertibleLeading));
        assert_eq!(axpyin(&ctx, &mut r, &mut [1, 1], &mut [1, 2], &mut [1, 0, 0]), Err(Error::NonInvertibleLeading));
    }

    #[test]
    fn quotient_is_exposed() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let s = Schoolbook { threshold: 2 };
        let ctx = Ctx::with_strategy(Field::new(13).unwrap(), &s);
        for _ in 0..200 {
            let m = rng.gen_range(1..10);
            let l = rng.gen_range(0..=m);
            let n = rng.gen_range(l.max(m - l)..20);
            let (mut a, mut c, mut b) = (poly(&mut rng, 13, l), poly(&mut rng, 13, n), poly(&mut rng, 13, m));
            let (a0, c0, b0) = (a.clone(), c.clone(), b.clone());
            let blk = load_quotient(&ctx, &mut a, &mut c, &mut b).unwrap();
            let (q, _) = ref_divmod(13, &ref_mul(13, &a0, &c0), &b0).unwrap();
            let top = blk.top_range().unwrap();
            assert_eq!(c[top.clone()].to_vec(), pad(&q, top.len()));
            unload_quotient(&ctx, &mut a, &mut c, &mut b).unwrap();
            assert_eq!((a, c, b), (a0, c0, b0));
        }
    }

    #[test]
    fn matches_oracle_over_degree_patterns() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for p in [2u64, 3, 7, 65521] {
            for threshold in [1, 2, 16] {
                let s = Schoolbook { threshold };
                let ctx = Ctx::with_strategy(Field::new(p).unwrap(), &s);
                for _ in 0..80 {
                    let m = rng.gen_range(1..12);
                    let l = rng.gen_range(0..30);
                    let n = rng.gen_range(0..30);
                    let (mut a, mut c, mut b) = (poly(&mut rng, p, l), poly(&mut rng, p, n), poly(&mut rng, p, m));
                    let (a0, c0, b0) = (a.clone(), c.clone(), b.clone());
                    let r0: Vec<Elem> = (0..m).map(|_| rng.gen_range(0..p)).collect();
                    let mut r = r0.clone();
                    fullaxpyin(&ctx, &mut r, &mut a, &mut c, &mut b).unwrap();
                    let want = pad(&ref_mulmod(p, &a0, &c0, &b0).unwrap(), m);
                    let acc: Vec<Elem> = r0.iter().zip(&want).map(|(x, y)| (x + y) % p).collect();
                    assert_eq!(r, acc, "p={p} L={l} N={n} M={m}");
                    assert_eq!((&a, &c, &b), (&a0, &c0, &b0));

                    let mut r2 = r0.clone();
                    fullaxpyin(&ctx, &mut r2, &mut c, &mut a, &mut b).unwrap();
                    assert_eq!(r2, r);
                }
            }
        }
    }
}
