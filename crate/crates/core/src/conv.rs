//! In-place accumulating convolutions `c += a*b mod (X^n - f)`.
//!
//! Every variant only calls the accumulating multiplier on half (or third)
//! sized pieces and applies invertible scalar and segment transforms to `c`
//! around those calls, so nothing beyond O(1) registers is needed. `a` and
//! `b` are modified along the way and restored before returning.
//!
//! | case            | routine          |
//! |-----------------|------------------|
//! | `f = 0`         | [`short_acc`]    |
//! | `n` odd         | [`conv_odd_f`]   |
//! | `f = 1`         | [`conv_even_1`]  |
//! | otherwise       | [`conv_even_f`]  |

use crate::error::{Error, Result};
use crate::ff::{Elem, Field};
use crate::instrument;
use crate::mulbase::{acc_mul_full, quad_conv_acc, Ctx};
use crate::region::SplitTarget;

fn check_lengths(c: &[Elem], a: &[Elem], b: &[Elem]) -> Result<()> {
    if a.len() != c.len() || b.len() != c.len() {
        return Err(Error::LengthMismatch(format!(
            "convolution operands of lengths {}, {}, {}",
            c.len(),
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `c += a*b mod (X^n - f)` with `n = c.len() = a.len() = b.len()`.
pub fn conv_acc(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    check_lengths(c, a, b)?;
    ctx.field.check_canonical(&[f])?;
    dispatch(ctx, c, a, b, f)
}

fn dispatch(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    if f == 0 {
        short_rec(ctx, c, a, b)
    } else if c.len() % 2 == 1 {
        odd_f(ctx, c, a, b, f)
    } else if f == 1 {
        even_1(ctx, c, a, b)
    } else {
        even_f(ctx, c, a, b, f)
    }
}

/// Even `n`, `f` outside `{0, 1}`: three half-size products.
pub fn conv_even_f(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    check_lengths(c, a, b)?;
    ctx.field.check_canonical(&[f])?;
    if c.len() % 2 != 0 || f == 0 || f == 1 {
        return Err(Error::BadParameter(format!("even-length f-convolution needs even n and f not in {{0, 1}}; got n = {}, f = {f}", c.len())));
    }
    even_f(ctx, c, a, b, f)
}

/// Even `n`, `f = 1`: four half-size products on wrapped targets.
pub fn conv_even_1(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    check_lengths(c, a, b)?;
    if c.len() % 2 != 0 {
        return Err(Error::BadParameter(format!("cyclic convolution needs even n, got {}", c.len())));
    }
    even_1(ctx, c, a, b)
}

/// Odd `n`, `f != 0`.
pub fn conv_odd_f(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    check_lengths(c, a, b)?;
    ctx.field.check_canonical(&[f])?;
    if c.len() % 2 != 1 || f == 0 {
        return Err(Error::BadParameter(format!("odd-length convolution needs odd n and f != 0; got n = {}, f = {f}", c.len())));
    }
    odd_f(ctx, c, a, b, f)
}

/// Short product `c += a*b mod X^n`.
pub fn short_acc(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    check_lengths(c, a, b)?;
    short_rec(ctx, c, a, b)
}

fn even_f(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    let _frame = instrument::enter();
    let fld = &ctx.field;
    let n = c.len();
    if n <= ctx.threshold() {
        quad_conv_acc(fld, c, a, b, f);
        return Ok(());
    }
    let t = n / 2;
    let one_minus_f = fld.sub(1, f);
    let inv_one_minus_f = fld.inv(one_minus_f)?;
    let inv_f = fld.inv(f)?;
    let (c0, c1) = c.split_at_mut(t);
    let (a0, a1) = a.split_at_mut(t);
    let (b0, b1) = b.split_at_mut(t);

    fld.add_assign(c1, c0);
    fld.scale(c1, inv_one_minus_f);
    fld.axpy(c0, f, c1);

    acc_mul_full(ctx, SplitTarget::new(c0, c1), a0, b0)?;
    fld.scale(c0, inv_f);
    fld.negate(a1);
    acc_mul_full(ctx, SplitTarget::new(c1, c0), a1, b1)?;
    fld.negate(a1);

    fld.sub_assign(c0, c1);
    fld.scale(c1, one_minus_f);
    let neg_f = fld.neg(f);
    fld.axpy(c1, neg_f, c0);

    fld.add_assign(a0, a1);
    fld.add_assign(b0, b1);
    acc_mul_full(ctx, SplitTarget::new(c1, c0), a0, b0)?;
    fld.sub_assign(b0, b1);
    fld.sub_assign(a0, a1);

    fld.scale(c0, f);
    Ok(())
}

fn even_1(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let n = c.len();
    if n <= ctx.threshold() {
        quad_conv_acc(&ctx.field, c, a, b, 1);
        return Ok(());
    }
    let t = n / 2;
    let (c0, c1) = c.split_at_mut(t);
    let (a0, a1) = a.split_at_mut(t);
    let (b0, b1) = b.split_at_mut(t);
    acc_mul_full(ctx, SplitTarget::new(c0, c1), a0, b0)?;
    acc_mul_full(ctx, SplitTarget::new(c0, c1), a1, b1)?;
    acc_mul_full(ctx, SplitTarget::new(c1, c0), a0, b1)?;
    acc_mul_full(ctx, SplitTarget::new(c1, c0), a1, b0)?;
    Ok(())
}

fn odd_f(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], f: Elem) -> Result<()> {
    let _frame = instrument::enter();
    let fld = &ctx.field;
    let n = c.len();
    if n <= ctx.threshold() {
        quad_conv_acc(fld, c, a, b, f);
        return Ok(());
    }
    // low halves have t coefficients, high halves t - 1
    let t = n.div_ceil(2);
    let inv_f = fld.inv(f)?;
    let (a0, a1) = a.split_at_mut(t);
    let (b0, b1) = b.split_at_mut(t);

    acc_mul_full(ctx, SplitTarget::whole(c), a0, b0)?;
    // X^{2t} = f X
    if f != 1 {
        fld.scale(a1, f);
    }
    acc_mul_full(ctx, SplitTarget::whole(&mut c[1..]), a1, b1)?;
    if f != 1 {
        fld.scale(a1, inv_f);
    }

    let (lo, hi) = c.split_at_mut(t);
    let wrap = &mut lo[..t - 1];
    fld.scale(wrap, inv_f);
    acc_mul_full(ctx, SplitTarget::new(hi, wrap), a0, b1)?;
    acc_mul_full(ctx, SplitTarget::new(hi, wrap), a1, b0)?;
    fld.scale(wrap, f);
    Ok(())
}

fn short_rec(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    if ctx.field.has_element_outside_01() {
        short_two_wraps(ctx, c, a, b)
    } else {
        short_binary(ctx, c, a, b)
    }
}

/// Two wrapped convolutions, mod `X^n - 1` and mod `X^n - g`, with `a`
/// rescaled in place so that the high parts cancel.
fn short_two_wraps(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let fld = &ctx.field;
    let n = c.len();
    if n <= ctx.threshold() {
        quad_conv_acc(fld, c, a, b, 0);
        return Ok(());
    }
    let p = TwoWrapScalars::new(fld)?;
    fld.scale(a, p.lambda);
    if n % 2 == 1 {
        odd_f(ctx, c, a, b, 1)?;
    } else {
        even_1(ctx, c, a, b)?;
    }
    fld.scale(a, p.rescale);
    if n % 2 == 1 {
        odd_f(ctx, c, a, b, p.g)?;
    } else {
        even_f(ctx, c, a, b, p.g)?;
    }
    fld.scale(a, p.restore);
    Ok(())
}

/// Scalars of the two-wrap short product: `a` is multiplied by `lambda`,
/// then by `rescale = (1 - lambda) / lambda`, then by `restore = 1 / (1 - lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoWrapScalars {
    pub lambda: Elem,
    pub g: Elem,
    pub rescale: Elem,
    pub restore: Elem,
}

impl TwoWrapScalars {
    /// Uses the smallest admissible multiplier, `lambda = 2`.
    pub fn new(fld: &Field) -> Result<Self> {
        if !fld.has_element_outside_01() {
            return Err(Error::BadParameter("two-wrap short product needs a field with more than two elements".into()));
        }
        let lambda = 2;
        let lambda_minus_1 = fld.sub(lambda, 1);
        let g = fld.div(lambda, lambda_minus_1)?;
        let one_minus_lambda = fld.sub(1, lambda);
        let rescale = fld.div(one_minus_lambda, lambda)?;
        let restore = fld.inv(one_minus_lambda)?;
        Ok(TwoWrapScalars { lambda, g, rescale, restore })
    }
}

/// One product of a bilinear schedule on three segments.
///
/// Bit `i` of `a_mask` / `b_mask` selects segment `i` of `a` / `b`; the
/// selected segments are summed into the lowest one for the product. The
/// product is accumulated into the segment pair `rows` of `c` through the
/// block `post`: `(c_i; c_j) *= post^-1; += (lo; hi); *= post`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductRecord {
    pub a_mask: u8,
    pub b_mask: u8,
    pub rows: (usize, usize),
    pub post: [[Elem; 2]; 2],
}

/// A list of products applied segment-wise to `(c, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BilinearSchedule {
    pub records: &'static [ProductRecord],
}

const ID: [[Elem; 2]; 2] = [[1, 0], [0, 1]];
const LOWER: [[Elem; 2]; 2] = [[1, 0], [1, 1]];

/// The five full products of the binary-field short product on thirds.
pub const GF2_THIRDS: BilinearSchedule = BilinearSchedule {
    records: &[
        ProductRecord { a_mask: 0b001, b_mask: 0b001, rows: (0, 1), post: ID },
        ProductRecord { a_mask: 0b111, b_mask: 0b111, rows: (1, 2), post: LOWER },
        ProductRecord { a_mask: 0b100, b_mask: 0b100, rows: (1, 2), post: ID },
        ProductRecord { a_mask: 0b101, b_mask: 0b101, rows: (1, 2), post: LOWER },
        ProductRecord { a_mask: 0b110, b_mask: 0b110, rows: (1, 2), post: LOWER },
    ],
};

impl ProductRecord {
    /// Inverse of `post`.
    pub fn pre(&self, fld: &Field) -> Result<[[Elem; 2]; 2]> {
        let [[p, q], [r, s]] = self.post;
        let det = fld.sub(fld.mul(p, s), fld.mul(q, r));
        let inv = fld.inv(det).map_err(|_| Error::BadParameter("singular schedule block".into()))?;
        Ok([[fld.mul(s, inv), fld.mul(fld.neg(q), inv)], [fld.mul(fld.neg(r), inv), fld.mul(p, inv)]])
    }
}

fn lin(fld: &Field, k: Elem, x: Elem) -> Option<Elem> {
    match k {
        0 => None,
        1 => Some(x),
        _ => Some(fld.mul(k, x)),
    }
}

fn combine(fld: &Field, x: Option<Elem>, y: Option<Elem>) -> Elem {
    match (x, y) {
        (Some(x), Some(y)) => fld.add(x, y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => 0,
    }
}

/// `(ci; cj) <- m (ci; cj)` segment-wise.
pub fn apply_block(fld: &Field, m: &[[Elem; 2]; 2], ci: &mut [Elem], cj: &mut [Elem]) {
    if *m == ID {
        return;
    }
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let (u, v) = (*x, *y);
        *x = combine(fld, lin(fld, m[0][0], u), lin(fld, m[0][1], v));
        *y = combine(fld, lin(fld, m[1][0], u), lin(fld, m[1][1], v));
    }
}

fn two_segments(v: &mut [Elem], t: usize, i: usize, j: usize) -> (&mut [Elem], &mut [Elem]) {
    debug_assert!(i < j);
    let (lo, hi) = v.split_at_mut(j * t);
    (&mut lo[i * t..(i + 1) * t], &mut hi[..t])
}

fn fold_mask(fld: &Field, v: &mut [Elem], t: usize, mask: u8, undo: bool) -> usize {
    let dst = mask.trailing_zeros() as usize;
    for i in dst + 1..3 {
        if mask & (1 << i) != 0 {
            let (d, s) = two_segments(v, t, dst, i);
            if undo {
                fld.sub_assign(d, s);
            } else {
                fld.add_assign(d, s);
            }
        }
    }
    dst
}

impl BilinearSchedule {
    /// Runs every record on segments of width `t` of `c`, `a`, `b` (each at
    /// least `3t` long).
    pub fn run(&self, ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem], t: usize) -> Result<()> {
        let fld = &ctx.field;
        for r in self.records {
            let pre = r.pre(fld)?;
            let da = fold_mask(fld, a, t, r.a_mask, false);
            let db = fold_mask(fld, b, t, r.b_mask, false);
            let (ci, cj) = two_segments(c, t, r.rows.0, r.rows.1);
            apply_block(fld, &pre, ci, cj);
            let res = acc_mul_full(
                ctx,
                SplitTarget::new(ci, cj),
                &mut a[da * t..(da + 1) * t],
                &mut b[db * t..(db + 1) * t],
            );
            apply_block(fld, &r.post, ci, cj);
            fold_mask(fld, b, t, r.b_mask, true);
            fold_mask(fld, a, t, r.a_mask, true);
            res?;
        }
        Ok(())
    }
}

/// Short product over the two-element field: five products on thirds, two
/// truncated recursive calls, and the at most two top coefficients directly.
fn short_binary(ctx: &Ctx<'_>, c: &mut [Elem], a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let fld = &ctx.field;
    let n = c.len();
    if n <= ctx.threshold() || n < 3 {
        quad_conv_acc(fld, c, a, b, 0);
        return Ok(());
    }
    let t = n / 3;
    GF2_THIRDS.run(ctx, &mut c[..3 * t], &mut a[..3 * t], &mut b[..3 * t], t)?;

    let c2 = &mut c[2 * t..3 * t];
    {
        let (a1, a2) = two_segments(a, t, 1, 2);
        let (b0, b1) = two_segments(b, t, 0, 1);
        fld.add_assign(a1, a2);
        fld.add_assign(b0, b1);
        short_binary(ctx, c2, a1, b0)?;
        fld.sub_assign(b0, b1);
        fld.sub_assign(a1, a2);
    }
    {
        let (a0, a2) = two_segments(a, t, 0, 2);
        let (b1, b2) = two_segments(b, t, 1, 2);
        fld.add_assign(a0, a2);
        fld.add_assign(b1, b2);
        short_binary(ctx, c2, a0, b1)?;
        fld.sub_assign(b1, b2);
        fld.sub_assign(a0, a2);
    }

    for k in 3 * t..n {
        let mut s = c[k];
        for i in 0..=k {
            s = fld.mul_add(s, a[i], b[k - i]);
        }
        c[k] = s;
    }
    Ok(())
}

/// `c[k] += (x*y)_k` for `k < c.len()`, any operand lengths.
///
/// Splits the longer operand so that everything but the top corner is a full
/// product, and the corner is a short product of equal lengths; recursion
/// depth is at most two.
pub fn acc_mul_trunc(ctx: &Ctx<'_>, c: &mut [Elem], x: &mut [Elem], y: &mut [Elem]) -> Result<()> {
    let n = c.len();
    let (lx, ly) = (x.len().min(n), y.len().min(n));
    let (x, y) = (&mut x[..lx], &mut y[..ly]);
    if n == 0 || x.is_empty() || y.is_empty() {
        return Ok(());
    }
    let full = x.len() + y.len() - 1;
    if full <= n {
        return acc_mul_full(ctx, SplitTarget::whole(&mut c[..full]), x, y);
    }
    let (x, y) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let lx = x.len();
    let (head, rest) = y.split_at_mut(n - lx);
    acc_mul_full(ctx, SplitTarget::whole(&mut c[..n - 1]), x, head)?;
    let corner = &mut c[n - lx..];
    if rest.len() == lx {
        short_rec(ctx, corner, x, rest)
    } else {
        acc_mul_trunc(ctx, corner, x, rest)
    }
}
