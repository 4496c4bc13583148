//! Euclidean remainder without storing the quotient.
//!
//! With `M = deg B`, cut `A` into blocks of `M` coefficients. For a block
//! `x` of length `M`, `B x = G x + X^M T x` where
//!
//! * `T` is upper triangular with first row `b_M, b_{M-1}, .., b_1`,
//! * `G` is lower triangular with first column `b_0, .., b_{M-1}`.
//!
//! Horner over the blocks from the top, `r <- -G T^{-1} r + a_i`, leaves
//! `A mod B` in `r`. Both triangular factors are Toeplitz and live inside
//! `B`: `T` is the upper matrix of `rev(b[1..=M])` and `G` the lower matrix
//! of `rev(b[..M])`. The in-place routines reverse those ranges of `B`
//! in place and put them back.

use crate::conv::acc_mul_trunc;
use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::mulbase::{acc_mul_short, divisor_degree, quad_tri_solve_overplace, Ctx, MatrixView};
use crate::region::reverse_in_place;
use crate::toeplitz::{tri_toeplitz_mul_overplace, tri_toeplitz_solve_overplace, Orientation};

/// Block structure of dividing a degree-`N` polynomial by a degree-`M` one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EuclidContext {
    /// Degree of the dividend.
    pub n_deg: usize,
    /// Degree of the divisor.
    pub m_deg: usize,
    /// Number of quotient coefficients, `N - M + 1`.
    pub quotient_len: usize,
    /// Width of the partial top block in exact tiling, `(N + 1) mod M`.
    pub s: usize,
    /// Index of the top block when the last block is zero-padded to width `M`.
    pub mu_padded: usize,
    /// Number of full blocks in exact tiling.
    pub mu_exact: usize,
}

impl EuclidContext {
    /// Requires `1 <= M <= N`.
    pub fn new(n_deg: usize, m_deg: usize) -> Result<Self> {
        if m_deg == 0 || m_deg > n_deg {
            return Err(Error::DegreeConstraint(format!("block tiling needs 1 <= M <= N, got M = {m_deg}, N = {n_deg}")));
        }
        let quotient_len = n_deg - m_deg + 1;
        let s = (n_deg + 1) % m_deg;
        Ok(EuclidContext {
            n_deg,
            m_deg,
            quotient_len,
            s,
            mu_padded: quotient_len.div_ceil(m_deg),
            mu_exact: (n_deg + 1 - s) / m_deg,
        })
    }

    /// Coefficient range of block `i` in padded tiling (the top one may be
    /// shorter than `M`; the missing part is zero).
    pub fn padded_block(&self, i: usize) -> std::ops::Range<usize> {
        let start = i * self.m_deg;
        start..(start + self.m_deg).min(self.n_deg + 1)
    }
}

fn with_reversed<R>(v: &mut [Elem], op: impl FnOnce(&mut [Elem]) -> R) -> R {
    reverse_in_place(v);
    let out = op(v);
    reverse_in_place(v);
    out
}

/// `x <- T^{-1} x` with `T` of order `x.len() <= M` (upper-left corner).
fn t_solve(ctx: &Ctx<'_>, b: &mut [Elem], x: &mut [Elem]) -> Result<()> {
    let (m, s) = (b.len() - 1, x.len());
    with_reversed(&mut b[m - s + 1..], |alpha| tri_toeplitz_solve_overplace(ctx, alpha, x, Orientation::Upper))
}

/// `x <- T x`, same shapes as [`t_solve`].
fn t_mul(ctx: &Ctx<'_>, b: &mut [Elem], x: &mut [Elem]) -> Result<()> {
    let (m, s) = (b.len() - 1, x.len());
    with_reversed(&mut b[m - s + 1..], |alpha| tri_toeplitz_mul_overplace(ctx, alpha, x, Orientation::Upper))
}

/// `c += G x` (or `-=`), where `x` has at most `M` entries.
fn g_acc(ctx: &Ctx<'_>, b: &mut [Elem], c: &mut [Elem], x: &mut [Elem], subtract: bool) -> Result<()> {
    let m = b.len() - 1;
    if subtract {
        ctx.field.negate(x);
    }
    let r = acc_mul_trunc(ctx, c, &mut b[..m], x);
    if subtract {
        ctx.field.negate(x);
    }
    r
}

fn remainder_len(r: &[Elem], m: usize) -> Result<()> {
    if r.len() != m {
        return Err(Error::LengthMismatch(format!("remainder of length {} for divisor degree {m}", r.len())));
    }
    Ok(())
}

fn copy_short(r: &mut [Elem], a: &[Elem]) {
    r[..a.len()].copy_from_slice(a);
    r[a.len()..].fill(0);
}

struct UpperT<'a> {
    b: &'a [Elem],
    order: usize,
}

impl MatrixView for UpperT<'_> {
    fn dim(&self) -> usize {
        self.order
    }

    fn entry(&self, i: usize, j: usize) -> Elem {
        if j >= i {
            self.b[self.b.len() - 1 - (j - i)]
        } else {
            0
        }
    }
}

/// `r = A mod B` with `A` and `B` only read and `scratch` (at least `M`
/// entries) as the working space for the quotient block.
pub fn remainder_blockwise(field: &Field, r: &mut [Elem], a: &[Elem], b: &[Elem], scratch: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    remainder_len(r, m)?;
    if a.len() <= m {
        copy_short(r, a);
        return Ok(());
    }
    if m == 0 {
        return Ok(());
    }
    if scratch.len() < m {
        return Err(Error::TargetTooShort { need: m, have: scratch.len() });
    }
    let t = &mut scratch[..m];
    let ec = EuclidContext::new(a.len() - 1, m)?;
    copy_short(r, &a[ec.padded_block(ec.mu_padded)]);
    for i in (0..ec.mu_padded).rev() {
        t.copy_from_slice(r);
        quad_tri_solve_overplace(field, &UpperT { b, order: m }, t)?;
        r.fill(0);
        acc_mul_short(field, r, &b[..m], t, m)?;
        field.negate(r);
        field.add_assign(r, &a[ec.padded_block(i)]);
    }
    Ok(())
}

/// `r = A mod B`; `A` is only read, `B` is modified and restored.
pub fn iper(ctx: &Ctx<'_>, r: &mut [Elem], a: &[Elem], b: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    remainder_len(r, m)?;
    if a.len() <= m {
        copy_short(r, a);
        return Ok(());
    }
    if m == 0 {
        return Ok(());
    }
    let ec = EuclidContext::new(a.len() - 1, m)?;
    copy_short(r, &a[ec.padded_block(ec.mu_padded)]);
    for i in (0..ec.mu_padded).rev() {
        t_solve(ctx, b, r)?;
        with_reversed(&mut b[..m], |g| tri_toeplitz_mul_overplace(ctx, g, r, Orientation::Lower))?;
        ctx.field.negate(r);
        ctx.field.add_assign(r, &a[ec.padded_block(i)]);
    }
    Ok(())
}

/// Replaces `A` by `[A mod B (M coefficients); A div B]`; `B` is restored.
///
/// When `deg A < deg B` nothing changes. A constant `B` divides `A` through.
pub fn oper(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    if a.len() <= m {
        return Ok(());
    }
    let fld = &ctx.field;
    if m == 0 {
        let inv = fld.inv(b[0])?;
        fld.scale(a, inv);
        return Ok(());
    }
    let ec = EuclidContext::new(a.len() - 1, m)?;
    let mu = ec.mu_exact;
    if ec.s != 0 {
        let (low, top) = a.split_at_mut(mu * m);
        t_solve(ctx, b, top)?;
        g_acc(ctx, b, &mut low[(mu - 1) * m..], top, true)?;
    }
    for i in (1..mu).rev() {
        let (low, high) = a.split_at_mut(i * m);
        let cur = &mut high[..m];
        t_solve(ctx, b, cur)?;
        g_acc(ctx, b, &mut low[(i - 1) * m..], cur, true)?;
    }
    Ok(())
}

/// Inverse of [`oper`]: rebuilds `A` from `[remainder; quotient]`.
pub fn oper_inv(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    if a.len() <= m {
        return Ok(());
    }
    if m == 0 {
        ctx.field.scale(a, b[0]);
        return Ok(());
    }
    let ec = EuclidContext::new(a.len() - 1, m)?;
    let mu = ec.mu_exact;
    for i in 1..mu {
        let (low, high) = a.split_at_mut(i * m);
        let cur = &mut high[..m];
        g_acc(ctx, b, &mut low[(i - 1) * m..], cur, false)?;
        t_mul(ctx, b, cur)?;
    }
    if ec.s != 0 {
        let (low, top) = a.split_at_mut(mu * m);
        g_acc(ctx, b, &mut low[(mu - 1) * m..], top, false)?;
        t_mul(ctx, b, top)?;
    }
    Ok(())
}

/// `r += A mod B`; `A` and `B` are modified and restored.
pub fn aper(ctx: &Ctx<'_>, r: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let m = divisor_degree(b)?;
    remainder_len(r, m)?;
    if a.len() <= m {
        ctx.field.add_assign(&mut r[..a.len()], a);
        return Ok(());
    }
    oper(ctx, a, b)?;
    ctx.field.add_assign(r, &a[..m]);
    oper_inv(ctx, a, b)
}
