//! Prime field arithmetic on canonical `u64` residues.
//!
//! Every operation is routed through the thread-local operation counter of
//! [`crate::instrument`], one unit per add/sub/neg, per mul and per inv/div.

use crate::error::{Error, Result};
use crate::instrument;

/// A field element: a canonical residue in `[0, p)`.
pub type Elem = u64;

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 61;

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// True iff the field has an element outside `{0, 1}`, i.e. `p > 2`.
    #[inline]
    pub fn has_element_outside_01(&self) -> bool {
        self.p > 2
    }

    /// Reduces an arbitrary integer into the field (not counted).
    #[inline]
    pub fn elem(&self, x: u64) -> Elem {
        x % self.p
    }

    #[inline]
    pub fn is_canonical(&self, x: u64) -> bool {
        x < self.p
    }

    pub fn check_canonical(&self, xs: &[Elem]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.p) {
            Some(&value) => Err(Error::NonCanonical { value, modulus: self.p }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        instrument::count_add();
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        instrument::count_add();
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        instrument::count_add();
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        instrument::count_mul();
        if self.p <= u32::MAX as u64 {
            (x * y) % self.p
        } else {
            ((x as u128 * y as u128) % self.p as u128) as u64
        }
    }

    /// `acc + x*y`, counted as one mul and one add.
    #[inline]
    pub fn mul_add(&self, acc: Elem, x: Elem, y: Elem) -> Elem {
        self.add(acc, self.mul(x, y))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            return Err(Error::InversionOfZero);
        }
        instrument::count_div();
        Ok(self.inv_raw(x))
    }

    /// `x / y`, counted as a single division.
    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        if y == 0 {
            return Err(Error::InversionOfZero);
        }
        instrument::count_div();
        let q = self.inv_raw(y);
        Ok(((x as u128 * q as u128) % self.p as u128) as u64)
    }

    // extended Euclid on (p, x), uncounted; x != 0
    fn inv_raw(&self, x: Elem) -> Elem {
        let (mut r0, mut r1) = (self.p as i128, x as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i128) as u64
    }

    /// `xs[i] *= k` for all i.
    pub fn scale(&self, xs: &mut [Elem], k: Elem) {
        for x in xs {
            *x = self.mul(*x, k);
        }
    }

    /// `xs[i] = -xs[i]` for all i.
    pub fn negate(&self, xs: &mut [Elem]) {
        for x in xs {
            *x = self.neg(*x);
        }
    }

    /// `dst[i] += src[i]`; `dst` and `src` must have equal length.
    pub fn add_assign(&self, dst: &mut [Elem], src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, s);
        }
    }

    /// `dst[i] -= src[i]`; `dst` and `src` must have equal length.
    pub fn sub_assign(&self, dst: &mut [Elem], src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.sub(*d, s);
        }
    }

    /// `dst[i] += k * src[i]`.
    pub fn axpy(&self, dst: &mut [Elem], k: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.mul_add(*d, k, s);
        }
    }
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_scalars() {
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.add(3, 4), 2);
        assert_eq!(f5.inv(0), Err(Error::InversionOfZero));
        assert_eq!(f5.div(1, 0), Err(Error::InversionOfZero));
        let f7 = Field::new(7).unwrap();
        assert_eq!(f7.inv(3), Ok(5));
        assert_eq!(f7.div(1, 3), Ok(5));
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 4, 9, 65535, 561, MAX_MODULUS + 1] {
            assert_eq!(Field::new(p), Err(Error::NotPrime(p)));
        }
        assert!(Field::new((1 << 61) - 1).is_ok());
        assert!(Field::new(65521).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn outside_01_iff_p_above_2() {
        assert!(!Field::new(2).unwrap().has_element_outside_01());
        assert!(Field::new(3).unwrap().has_element_outside_01());
    }

    #[test]
    fn ring_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 7, 13, 65521, (1 << 61) - 1] {
            let f = Field::new(p).unwrap();
            for _ in 0..10_000 {
                let (x, y, z) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
                assert_eq!(f.add(x, y), f.add(y, x));
                assert_eq!(f.mul(x, y), f.mul(y, x));
                assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                assert_eq!(f.add(f.sub(x, y), y), x);
                assert_eq!(f.add(x, f.neg(x)), 0);
                assert!(f.mul(x, y) < p && f.add(x, y) < p);
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                    assert_eq!(f.mul(f.div(y, x).unwrap(), x), y);
                }
            }
        }
    }
}
