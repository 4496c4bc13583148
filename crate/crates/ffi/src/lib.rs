//! C ABI over `inplace_poly`.
//!
//! A context handle owns a prime field and a schoolbook multiplier. Every
//! operation takes `(pointer, length)` regions of `uint64_t` residues, checks
//! that they are canonical and pairwise disjoint, and returns an
//! [`IpStatus`]. Regions that the operation restores are still passed as
//! mutable pointers, since they are written during the call.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use inplace_poly::conv::conv_acc;
use inplace_poly::euclid::{aper, iper, oper, oper_inv};
use inplace_poly::modmul::fullaxpyin;
use inplace_poly::toeplitz::{
    circulant_acc, rect_toeplitz_acc, tri_toeplitz_mul_overplace, tri_toeplitz_solve_overplace, CirculantView,
    Orientation, ToeplitzView,
};
use inplace_poly::{Ctx, Error, Field, Schoolbook};

/// Lower triangular orientation for the triangular Toeplitz calls.
pub const IP_LOWER: u32 = 0;
/// Upper triangular orientation for the triangular Toeplitz calls.
pub const IP_UPPER: u32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpStatus {
    Ok = 0,
    NullPointer = 1,
    NotPrime = 2,
    InversionOfZero = 3,
    NonCanonical = 4,
    LengthMismatch = 5,
    BadParameter = 6,
    SingularDiagonal = 7,
    NonInvertibleLeading = 8,
    DegreeConstraint = 9,
    Aliasing = 10,
    Internal = 11,
    Panic = 12,
}

impl From<Error> for IpStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_) => IpStatus::NotPrime,
            Error::InversionOfZero => IpStatus::InversionOfZero,
            Error::NonCanonical { .. } => IpStatus::NonCanonical,
            Error::TargetTooShort { .. } | Error::LengthMismatch(_) => IpStatus::LengthMismatch,
            Error::BadParameter(_) => IpStatus::BadParameter,
            Error::SingularDiagonal => IpStatus::SingularDiagonal,
            Error::NonInvertibleLeading => IpStatus::NonInvertibleLeading,
            Error::DegreeConstraint(_) => IpStatus::DegreeConstraint,
            _ => IpStatus::Internal,
        }
    }
}

/// Opaque context: a prime field and the multiplication threshold.
pub struct IpContext {
    field: Field,
    mul: Schoolbook,
}

impl IpContext {
    fn ctx(&self) -> Ctx<'_> {
        Ctx::with_strategy(self.field, &self.mul)
    }
}

/// Creates a context for the prime `p` and stores it in `*out`.
/// `threshold` is the size below which quadratic kernels are used; 0 picks
/// the library default.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ip_context_new(p: u64, threshold: usize, out: *mut *mut IpContext) -> IpStatus {
    guarded(|| {
        if out.is_null() {
            return Err(IpStatus::NullPointer);
        }
        let field = Field::new(p)?;
        let threshold = if threshold == 0 { inplace_poly::mulbase::DEFAULT_THRESHOLD } else { threshold };
        *out = Box::into_raw(Box::new(IpContext { field, mul: Schoolbook { threshold } }));
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or a pointer from [`ip_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ip_context_free(ctx: *mut IpContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// The context's modulus, or 0 for a null context.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn ip_context_modulus(ctx: *const IpContext) -> u64 {
    ctx.as_ref().map_or(0, |c| c.field.modulus())
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn ip_status_str(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer\0",
        2 => b"modulus is not a prime below 2^61\0",
        3 => b"inversion of zero\0",
        4 => b"coefficient not reduced modulo p\0",
        5 => b"length mismatch\0",
        6 => b"bad parameter\0",
        7 => b"zero diagonal in triangular solve\0",
        8 => b"leading coefficient is zero\0",
        9 => b"degree constraint violated\0",
        10 => b"regions overlap\0",
        11 => b"internal error\0",
        12 => b"panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

fn guarded(op: impl FnOnce() -> Result<(), IpStatus>) -> IpStatus {
    match catch_unwind(AssertUnwindSafe(op)) {
        Ok(Ok(())) => IpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => IpStatus::Panic,
    }
}

#[derive(Clone, Copy)]
struct Region {
    ptr: *mut u64,
    len: usize,
}

impl Region {
    fn span(&self) -> (usize, usize) {
        let start = self.ptr as usize;
        (start, start + self.len * std::mem::size_of::<u64>())
    }
}

fn region(ptr: *mut u64, len: usize) -> Result<Region, IpStatus> {
    if ptr.is_null() && len > 0 {
        return Err(IpStatus::NullPointer);
    }
    Ok(Region { ptr, len })
}

fn disjoint(regions: &[Region]) -> Result<(), IpStatus> {
    for (i, r) in regions.iter().enumerate() {
        for q in &regions[i + 1..] {
            let ((a0, a1), (b0, b1)) = (r.span(), q.span());
            if a0 < a1 && b0 < b1 && a0 < b1 && b0 < a1 {
                return Err(IpStatus::Aliasing);
            }
        }
    }
    Ok(())
}

/// # Safety
/// A non-null `r.ptr` must be valid for reads of `r.len` elements.
unsafe fn view<'a>(field: &Field, r: Region) -> Result<&'a [u64], IpStatus> {
    let s: &[u64] = if r.len == 0 { &[] } else { std::slice::from_raw_parts(r.ptr, r.len) };
    field.check_canonical(s)?;
    Ok(s)
}

/// # Safety
/// A non-null `r.ptr` must be valid for reads and writes of `r.len` elements.
unsafe fn view_mut<'a>(field: &Field, r: Region) -> Result<&'a mut [u64], IpStatus> {
    let s: &mut [u64] = if r.len == 0 { &mut [] } else { std::slice::from_raw_parts_mut(r.ptr, r.len) };
    field.check_canonical(s)?;
    Ok(s)
}

/// Checks the regions are pairwise disjoint and canonical, then hands them
/// out as mutable slices.
///
/// # Safety
/// As [`view_mut`] for each region.
unsafe fn slices<'a, const K: usize>(field: &Field, regions: [Region; K]) -> Result<[&'a mut [u64]; K], IpStatus> {
    disjoint(&regions)?;
    let mut out: [&mut [u64]; K] = std::array::from_fn(|_| &mut [][..]);
    for (slot, r) in out.iter_mut().zip(regions) {
        *slot = view_mut(field, r)?;
    }
    Ok(out)
}

unsafe fn context<'a>(ctx: *const IpContext) -> Result<&'a IpContext, IpStatus> {
    ctx.as_ref().ok_or(IpStatus::NullPointer)
}

fn orientation(o: u32) -> Result<Orientation, IpStatus> {
    match o {
        IP_LOWER => Ok(Orientation::Lower),
        IP_UPPER => Ok(Orientation::Upper),
        _ => Err(IpStatus::BadParameter),
    }
}

/// Length of a divisor's remainder, `deg b`.
fn divisor_degree(b_len: usize) -> Result<usize, IpStatus> {
    b_len.checked_sub(1).ok_or(IpStatus::NonInvertibleLeading)
}

/// `c += a b mod (X^n - f)`; `a` and `b` are restored.
///
/// # Safety
/// `c`, `a`, `b` must each be valid for `n` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_conv_acc(ctx: *const IpContext, c: *mut u64, a: *mut u64, b: *mut u64, n: usize, f: u64) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        cx.field.check_canonical(&[f])?;
        let [c, a, b] = slices(&cx.field, [region(c, n)?, region(a, n)?, region(b, n)?])?;
        Ok(conv_acc(&cx.ctx(), c, a, b, f)?)
    })
}

/// `c += Circ_f(a) b` for the f-circulant matrix with first row `a`.
///
/// # Safety
/// `c`, `a`, `b` must each be valid for `n` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_circulant_acc(ctx: *const IpContext, c: *mut u64, a: *mut u64, b: *mut u64, n: usize, f: u64) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        cx.field.check_canonical(&[f])?;
        let [c, a, b] = slices(&cx.field, [region(c, n)?, region(a, n)?, region(b, n)?])?;
        Ok(circulant_acc(&cx.ctx(), c, CirculantView { a, f }, b)?)
    })
}

/// `c += T b` for the `rows x cols` Toeplitz matrix `T[i][j] = v[rows-1+j-i]`.
///
/// # Safety
/// `c` valid for `rows`, `v` for `rows + cols - 1`, `b` for `cols` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_rect_toeplitz_acc(
    ctx: *const IpContext,
    c: *mut u64,
    rows: usize,
    v: *mut u64,
    b: *mut u64,
    cols: usize,
) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        if rows == 0 || cols == 0 {
            return Err(IpStatus::LengthMismatch);
        }
        let [c, v, b] = slices(&cx.field, [region(c, rows)?, region(v, rows + cols - 1)?, region(b, cols)?])?;
        Ok(rect_toeplitz_acc(&cx.ctx(), c, ToeplitzView::new(v, rows, cols)?, b)?)
    })
}

/// `b <- L b` or `b <- U b`, the triangular Toeplitz matrix defined by `a`
/// (`[a, 0]` for [`IP_LOWER`], `[0, a]` for [`IP_UPPER`]).
///
/// # Safety
/// `a` and `b` must each be valid for `m` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_tri_toeplitz_mul(ctx: *const IpContext, a: *mut u64, b: *mut u64, m: usize, orient: u32) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let o = orientation(orient)?;
        let [a, b] = slices(&cx.field, [region(a, m)?, region(b, m)?])?;
        Ok(tri_toeplitz_mul_overplace(&cx.ctx(), a, b, o)?)
    })
}

/// Inverse of [`ip_tri_toeplitz_mul`].
///
/// # Safety
/// `a` and `b` must each be valid for `m` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_tri_toeplitz_solve(ctx: *const IpContext, a: *mut u64, b: *mut u64, m: usize, orient: u32) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let o = orientation(orient)?;
        let [a, b] = slices(&cx.field, [region(a, m)?, region(b, m)?])?;
        Ok(tri_toeplitz_solve_overplace(&cx.ctx(), a, b, o)?)
    })
}

/// `r = a mod b` with `r` of length `b_len - 1`. `a` is only read; `b` is
/// restored.
///
/// # Safety
/// `r` valid for `b_len - 1`, `a` for `a_len` reads, `b` for `b_len` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_iper(
    ctx: *const IpContext,
    r: *mut u64,
    a: *const u64,
    a_len: usize,
    b: *mut u64,
    b_len: usize,
) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let m = divisor_degree(b_len)?;
        let (rr, ar, br) = (region(r, m)?, region(a.cast_mut(), a_len)?, region(b, b_len)?);
        disjoint(&[rr, ar, br])?;
        let a = view(&cx.field, ar)?;
        let [r, b] = slices(&cx.field, [rr, br])?;
        Ok(iper(&cx.ctx(), r, a, b)?)
    })
}

/// Overwrites `a` with `[a mod b, a div b]`; `b` is restored.
///
/// # Safety
/// `a` valid for `a_len`, `b` for `b_len` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_oper(ctx: *const IpContext, a: *mut u64, a_len: usize, b: *mut u64, b_len: usize) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let [a, b] = slices(&cx.field, [region(a, a_len)?, region(b, b_len)?])?;
        Ok(oper(&cx.ctx(), a, b)?)
    })
}

/// Inverse of [`ip_oper`].
///
/// # Safety
/// `a` valid for `a_len`, `b` for `b_len` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_oper_inv(ctx: *const IpContext, a: *mut u64, a_len: usize, b: *mut u64, b_len: usize) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let [a, b] = slices(&cx.field, [region(a, a_len)?, region(b, b_len)?])?;
        Ok(oper_inv(&cx.ctx(), a, b)?)
    })
}

/// `r += a mod b` with `r` of length `b_len - 1`; `a` and `b` are restored.
///
/// # Safety
/// `r` valid for `b_len - 1`, `a` for `a_len`, `b` for `b_len` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_aper(
    ctx: *const IpContext,
    r: *mut u64,
    a: *mut u64,
    a_len: usize,
    b: *mut u64,
    b_len: usize,
) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let m = divisor_degree(b_len)?;
        let [r, a, b] = slices(&cx.field, [region(r, m)?, region(a, a_len)?, region(b, b_len)?])?;
        Ok(aper(&cx.ctx(), r, a, b)?)
    })
}

/// `r += a c mod b` with `r` of length `b_len - 1`; `a`, `c`, `b` are restored.
///
/// # Safety
/// `r` valid for `b_len - 1`, `a` for `a_len`, `c` for `c_len`, `b` for
/// `b_len` elements.
#[no_mangle]
pub unsafe extern "C" fn ip_fullaxpyin(
    ctx: *const IpContext,
    r: *mut u64,
    a: *mut u64,
    a_len: usize,
    c: *mut u64,
    c_len: usize,
    b: *mut u64,
    b_len: usize,
) -> IpStatus {
    guarded(|| {
        let cx = context(ctx)?;
        let m = divisor_degree(b_len)?;
        let [r, a, c, b] =
            slices(&cx.field, [region(r, m)?, region(a, a_len)?, region(c, c_len)?, region(b, b_len)?])?;
        Ok(fullaxpyin(&cx.ctx(), r, a, c, b)?)
    })
}
