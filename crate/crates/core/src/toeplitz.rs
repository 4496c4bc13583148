//! Structured matrix-vector products: f-circulant, square and rectangular
//! Toeplitz (accumulating), and triangular Toeplitz multiply/solve
//! (over-place, both orientations).
//!
//! Matrices are never formed. A `rows x cols` Toeplitz matrix is given by a
//! vector `v` of length `rows + cols - 1` with entry `(i, j) = v[rows-1+j-i]`
//! (0-based), so `v[rows-1..]` is the first row and `v[..rows]` read
//! backwards is the first column.
//!
//! An f-circulant product reduces to a convolution through
//! `Circ_f(a) b = rev(conv_f(a, rev b))`; the reversals are done in place on
//! `b` and `c` and undone afterwards.

use crate::conv::{acc_mul_trunc, conv_acc, short_acc};
use crate::error::{Error, Result};
use crate::ff::Elem;
use crate::instrument;
use crate::mulbase::{
    quad_lower_mul_overplace, quad_lower_solve_overplace, quad_tri_mul_overplace, quad_tri_solve_overplace, Ctx,
    MatrixView,
};
use crate::region::reverse_in_place;

/// Rectangular Toeplitz matrix by its defining vector.
#[derive(Debug)]
pub struct ToeplitzView<'a> {
    pub v: &'a mut [Elem],
    pub rows: usize,
    pub cols: usize,
}

impl<'a> ToeplitzView<'a> {
    pub fn new(v: &'a mut [Elem], rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || v.len() != rows + cols - 1 {
            return Err(Error::LengthMismatch(format!(
                "{rows}x{cols} Toeplitz matrix needs a vector of length {}, got {}",
                (rows + cols).saturating_sub(1),
                v.len()
            )));
        }
        Ok(ToeplitzView { v, rows, cols })
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.v[self.rows - 1 + j - i]
    }
}

/// f-circulant matrix: row `i+1` is row `i` shifted right by one, the
/// wrapped entry scaled by `f`.
#[derive(Debug)]
pub struct CirculantView<'a> {
    pub a: &'a mut [Elem],
    pub f: Elem,
}

impl CirculantView<'_> {
    #[inline]
    pub fn entry(&self, i: usize, j: usize, fld: &crate::ff::Field) -> Elem {
        let m = self.a.len();
        let x = self.a[(j + m - i) % m];
        if i <= j {
            x
        } else {
            fld.mul(self.f, x)
        }
    }
}

/// Which triangle of a square triangular Toeplitz matrix is populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `Toeplitz([a, 0])`: entry `(i, j) = a[m-1-(i-j)]` for `j <= i`.
    Lower,
    /// `Toeplitz([0, a])`: entry `(i, j) = a[j-i]` for `j >= i`.
    Upper,
}

struct TriView<'a> {
    a: &'a [Elem],
    orientation: Orientation,
}

impl MatrixView for TriView<'_> {
    fn dim(&self) -> usize {
        self.a.len()
    }

    fn entry(&self, i: usize, j: usize) -> Elem {
        let m = self.a.len();
        match self.orientation {
            Orientation::Lower if j <= i => self.a[m - 1 - (i - j)],
            Orientation::Upper if j >= i => self.a[j - i],
            _ => 0,
        }
    }
}

fn same_len(what: &str, x: usize, y: usize) -> Result<()> {
    if x != y {
        return Err(Error::LengthMismatch(format!("{what}: {x} != {y}")));
    }
    Ok(())
}

/// `c += Circ_f(a) b`.
pub fn circulant_acc(ctx: &Ctx<'_>, c: &mut [Elem], view: CirculantView<'_>, b: &mut [Elem]) -> Result<()> {
    same_len("circulant order vs vector", view.a.len(), b.len())?;
    same_len("circulant order vs target", view.a.len(), c.len())?;
    reverse_in_place(c);
    reverse_in_place(b);
    let r = conv_acc(ctx, c, view.a, b, view.f);
    reverse_in_place(b);
    reverse_in_place(c);
    r
}

/// `c += T b` for the `m x m` Toeplitz matrix of `v` (length `2m - 1`).
///
/// The upper triangle is a 0-circulant product with `v[m-1..]`; the strict
/// lower triangle is a short product of `rev(v[..m-1])` with `b`, landing in
/// `c[1..]`.
pub fn square_toeplitz_acc(ctx: &Ctx<'_>, c: &mut [Elem], v: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let m = c.len();
    same_len("square Toeplitz target vs vector", m, b.len())?;
    if m == 0 {
        return Ok(());
    }
    same_len("square Toeplitz defining vector", v.len(), 2 * m - 1)?;
    let (low, up) = v.split_at_mut(m - 1);
    circulant_acc(ctx, c, CirculantView { a: up, f: 0 }, b)?;
    if m > 1 {
        reverse_in_place(low);
        let r = short_acc(ctx, &mut c[1..], low, &mut b[..m - 1]);
        reverse_in_place(low);
        r?;
    }
    Ok(())
}

/// `c += T b` for a rectangular Toeplitz matrix, peeling square blocks off
/// the longer side.
pub fn rect_toeplitz_acc(ctx: &Ctx<'_>, c: &mut [Elem], view: ToeplitzView<'_>, b: &mut [Elem]) -> Result<()> {
    same_len("Toeplitz rows vs target", view.rows, c.len())?;
    same_len("Toeplitz columns vs vector", view.cols, b.len())?;
    let (mut c, mut v, mut b) = (c, view.v, b);
    loop {
        let (m, n) = (c.len(), b.len());
        if m == n {
            return square_toeplitz_acc(ctx, c, v, b);
        }
        if m > n {
            let (top, rest) = std::mem::take(&mut c).split_at_mut(n);
            square_toeplitz_acc(ctx, top, &mut v[m - n..m + n - 1], b)?;
            c = rest;
            v = &mut std::mem::take(&mut v)[..m - 1];
        } else {
            let (left, rest) = std::mem::take(&mut b).split_at_mut(m);
            square_toeplitz_acc(ctx, c, &mut v[..2 * m - 1], left)?;
            b = rest;
            v = &mut std::mem::take(&mut v)[m..];
        }
    }
}

fn diagonal(a: &[Elem], orientation: Orientation) -> Elem {
    match orientation {
        Orientation::Lower => a[a.len() - 1],
        Orientation::Upper => a[0],
    }
}

/// `b <- T b` for the triangular Toeplitz matrix of `a` (see [`Orientation`]).
pub fn tri_toeplitz_mul_overplace(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem], orientation: Orientation) -> Result<()> {
    same_len("triangular Toeplitz order vs vector", a.len(), b.len())?;
    match orientation {
        Orientation::Lower => lower_mul(ctx, a, b),
        Orientation::Upper => upper_mul(ctx, a, b),
    }
}

/// `b <- T^{-1} b` for the triangular Toeplitz matrix of `a`.
pub fn tri_toeplitz_solve_overplace(
    ctx: &Ctx<'_>,
    a: &mut [Elem],
    b: &mut [Elem],
    orientation: Orientation,
) -> Result<()> {
    same_len("triangular Toeplitz order vs vector", a.len(), b.len())?;
    if a.is_empty() {
        return Ok(());
    }
    if diagonal(a, orientation) == 0 {
        return Err(Error::SingularDiagonal);
    }
    match orientation {
        Orientation::Lower => lower_solve(ctx, a, b),
        Orientation::Upper => upper_solve(ctx, a, b),
    }
}

/// `c -= T x`, with `x` negated around an accumulation.
fn rect_sub(ctx: &Ctx<'_>, c: &mut [Elem], v: &mut [Elem], x: &mut [Elem]) -> Result<()> {
    let (rows, cols) = (c.len(), x.len());
    ctx.field.negate(x);
    let r = rect_toeplitz_acc(ctx, c, ToeplitzView { v, rows, cols }, x);
    ctx.field.negate(x);
    r
}

fn lower_mul(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let m = a.len();
    if m <= ctx.threshold() {
        return quad_lower_mul_overplace(&ctx.field, &TriView { a, orientation: Orientation::Lower }, b);
    }
    let k = m.div_ceil(2);
    let (b1, b2) = b.split_at_mut(k);
    lower_mul(ctx, &mut a[k..], b2)?;
    rect_toeplitz_acc(ctx, b2, ToeplitzView { v: &mut a[..m - 1], rows: m - k, cols: k }, b1)?;
    lower_mul(ctx, &mut a[m - k..], b1)
}

fn upper_mul(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let m = a.len();
    if m <= ctx.threshold() {
        return quad_tri_mul_overplace(&ctx.field, &TriView { a, orientation: Orientation::Upper }, b);
    }
    let k = m.div_ceil(2);
    let (b1, b2) = b.split_at_mut(k);
    upper_mul(ctx, &mut a[..k], b1)?;
    rect_toeplitz_acc(ctx, b1, ToeplitzView { v: &mut a[1..], rows: k, cols: m - k }, b2)?;
    upper_mul(ctx, &mut a[..m - k], b2)
}

fn upper_solve(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let m = a.len();
    if m <= ctx.threshold() {
        return quad_tri_solve_overplace(&ctx.field, &TriView { a, orientation: Orientation::Upper }, b);
    }
    let k = m.div_ceil(2);
    let (b1, b2) = b.split_at_mut(k);
    upper_solve(ctx, &mut a[..m - k], b2)?;
    rect_sub(ctx, b1, &mut a[1..], b2)?;
    upper_solve(ctx, &mut a[..k], b1)
}

fn lower_solve(ctx: &Ctx<'_>, a: &mut [Elem], b: &mut [Elem]) -> Result<()> {
    let _frame = instrument::enter();
    let m = a.len();
    if m <= ctx.threshold() {
        return quad_lower_solve_overplace(&ctx.field, &TriView { a, orientation: Orientation::Lower }, b);
    }
    let k = m.div_ceil(2);
    let (b1, b2) = b.split_at_mut(k);
    lower_solve(ctx, &mut a[m - k..], b1)?;
    rect_sub(ctx, b2, &mut a[..m - 1], b1)?;
    lower_solve(ctx, &mut a[k..], b2)
}

/// `y <- U y` where `U` is the upper-triangular Toeplitz matrix of order
/// `y.len()` whose first row is `alpha` followed by zeros.
///
/// With a band narrower than the matrix, `y` is cut into blocks of the band
/// width; each block is multiplied by the band's triangle and then receives
/// the strictly lower corner coupling it to the next block.
pub fn banded_upper_mul(ctx: &Ctx<'_>, alpha: &mut [Elem], y: &mut [Elem]) -> Result<()> {
    let k = y.len();
    let w = alpha.len();
    if k == 0 || w == 0 {
        ctx.field.scale(y, 0);
        return Ok(());
    }
    if w >= k {
        return upper_mul(ctx, &mut alpha[..k], y);
    }
    let mut start = 0;
    while start < k {
        let len = w.min(k - start);
        let (cur, next) = y[start..].split_at_mut(len);
        upper_mul(ctx, &mut alpha[..len], cur)?;
        if !next.is_empty() && len > 1 {
            let nl = w.min(next.len());
            let next = &mut next[..nl];
            let tail = &mut alpha[1..];
            reverse_in_place(tail);
            let r = acc_mul_trunc(ctx, &mut cur[1..], tail, next);
            reverse_in_place(tail);
            r?;
        }
        start += len;
    }
    Ok(())
}

/// `y <- U^{-1} y` for the banded matrix of [`banded_upper_mul`].
pub fn banded_upper_solve(ctx: &Ctx<'_>, alpha: &mut [Elem], y: &mut [Elem]) -> Result<()> {
    let k = y.len();
    let w = alpha.len();
    if k == 0 {
        return Ok(());
    }
    if w == 0 || alpha[0] == 0 {
        return Err(Error::SingularDiagonal);
    }
    if w >= k {
        return upper_solve(ctx, &mut alpha[..k], y);
    }
    let mut end = k;
    let mut next_start = k;
    while end > 0 {
        let start = (end - 1) / w * w;
        let len = end - start;
        let (head, next) = y.split_at_mut(next_start);
        let cur = &mut head[start..end];
        if next_start < k && len > 1 {
            let next = &mut next[..w.min(k - next_start)];
            let tail = &mut alpha[1..];
            reverse_in_place(tail);
            ctx.field.negate(next);
            let r = acc_mul_trunc(ctx, &mut cur[1..], tail, next);
            ctx.field.negate(next);
            reverse_in_place(tail);
            r?;
        }
        upper_solve(ctx, &mut alpha[..len], cur)?;
        next_start = start;
        end = start;
    }
    Ok(())
}
