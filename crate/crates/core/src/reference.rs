//! Naive allocating oracles.
//!
//! Nothing here touches [`crate::ff::Field`] or any in-place routine: all
//! arithmetic is done with plain `u128` remainders so that the oracles stay
//! independent of the code they check. Operations are not counted.

use crate::error::{Error, Result};
use crate::ff::Elem;

fn mulm(p: u64, x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % p as u128) as u64
}

fn addm(p: u64, x: u64, y: u64) -> u64 {
    ((x as u128 + y as u128) % p as u128) as u64
}

fn subm(p: u64, x: u64, y: u64) -> u64 {
    addm(p, x, p - y % p)
}

fn powm(p: u64, mut b: u64, mut e: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(p, r, b);
        }
        b = mulm(p, b, b);
        e >>= 1;
    }
    r
}

/// Inverse by Fermat's little theorem.
pub fn ref_inv(p: u64, x: u64) -> Result<u64> {
    if x % p == 0 {
        return Err(Error::InversionOfZero);
    }
    Ok(powm(p, x, p - 2))
}

/// Drops high zero coefficients.
pub fn trim(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Zero-extends (or truncates) to length `n`.
pub fn pad(v: &[Elem], n: usize) -> Vec<Elem> {
    let mut out = v.to_vec();
    out.resize(n, 0);
    out
}

/// Product into a fresh buffer of length `la + lb - 1` (empty if either is).
pub fn ref_mul(p: u64, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = addm(p, c[i + j], mulm(p, x, y));
        }
    }
    c
}

/// Long division `a = b q + r`; both results are trimmed of high zeros.
pub fn ref_divmod(p: u64, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let b = trim(b.to_vec());
    let Some(&lead) = b.last() else {
        return Err(Error::NonInvertibleLeading);
    };
    let m = b.len() - 1;
    let inv = ref_inv(p, lead).map_err(|_| Error::NonInvertibleLeading)?;
    let mut r = trim(a.to_vec());
    if r.len() <= m {
        return Ok((vec![], r));
    }
    let mut q = vec![0; r.len() - m];
    for i in (m..r.len()).rev() {
        let c = mulm(p, r[i], inv);
        q[i - m] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i - m + j] = subm(p, r[i - m + j], mulm(p, c, bj));
        }
    }
    r.truncate(m);
    Ok((trim(q), trim(r)))
}

/// `a * b mod (X^n - f)` as a length-`n` vector.
pub fn ref_convolution(p: u64, a: &[Elem], b: &[Elem], f: Elem, n: usize) -> Vec<Elem> {
    let mut out = vec![0; n];
    if n == 0 {
        return out;
    }
    for (k, x) in ref_mul(p, a, b).into_iter().enumerate() {
        let w = powm(p, f, (k / n) as u64);
        out[k % n] = addm(p, out[k % n], mulm(p, w, x));
    }
    out
}

/// `a * c mod b`, trimmed.
pub fn ref_mulmod(p: u64, a: &[Elem], c: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    Ok(ref_divmod(p, &ref_mul(p, a, c), b)?.1)
}

/// Dense `rows x cols` Toeplitz matrix (row-major) whose entry `(i, j)` is
/// `v[rows - 1 + j - i]`.
pub fn ref_dense_toeplitz(rows: usize, cols: usize, v: &[Elem]) -> Vec<Elem> {
    assert_eq!(v.len(), rows + cols - 1);
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            out.push(v[rows - 1 + j - i]);
        }
    }
    out
}

/// Dense `m x m` f-circulant matrix: row `i+1` is row `i` shifted right by
/// one, with the entry that wraps around multiplied by `f`.
pub fn ref_dense_circulant(p: u64, a: &[Elem], f: Elem) -> Vec<Elem> {
    let m = a.len();
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let x = a[(j + m - i) % m];
            out.push(if i <= j { x } else { mulm(p, f, x) });
        }
    }
    out
}

/// Row-major `mat` (with `cols` columns) times `v`.
pub fn ref_dense_matvec(p: u64, cols: usize, mat: &[Elem], v: &[Elem]) -> Vec<Elem> {
    assert_eq!(v.len(), cols);
    mat.chunks(cols.max(1))
        .take(if cols == 0 { 0 } else { mat.len() / cols })
        .map(|row| row.iter().zip(v).fold(0, |s, (&x, &y)| addm(p, s, mulm(p, x, y))))
        .collect()
}

/// Solves the square system `mat x = v` by Gauss-Jordan elimination.
pub fn ref_dense_solve(p: u64, n: usize, mat: &[Elem], v: &[Elem]) -> Result<Vec<Elem>> {
    assert_eq!(mat.len(), n * n);
    assert_eq!(v.len(), n);
    let mut m: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut row = mat[i * n..(i + 1) * n].to_vec();
            row.push(v[i]);
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| m[r][col] != 0).ok_or(Error::SingularDiagonal)?;
        m.swap(col, piv);
        let inv = ref_inv(p, m[col][col])?;
        for x in m[col].iter_mut() {
            *x = mulm(p, *x, inv);
        }
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let k = m[r][col];
                for c in 0..=n {
                    let t = mulm(p, k, m[col][c]);
                    m[r][c] = subm(p, m[r][c], t);
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n]).collect())
}
