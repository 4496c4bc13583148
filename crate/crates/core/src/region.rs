//! Coefficient windows: split accumulation targets, reversed and zero-padded
//! views, block tiling, and snapshots for restoration checks.
//!
//! A plain `&mut [Elem]` is the forward window; everything here is a thin,
//! allocation-free layer over slices. [`Snapshot`] is the one exception and
//! is meant for tests.

use crate::error::{Error, Result};
use crate::ff::Elem;

/// Two disjoint windows accessed as one logical vector `[first; second]`.
#[derive(Debug)]
pub struct SplitTarget<'a> {
    pub first: &'a mut [Elem],
    pub second: &'a mut [Elem],
}

impl<'a> SplitTarget<'a> {
    pub fn new(first: &'a mut [Elem], second: &'a mut [Elem]) -> Self {
        SplitTarget { first, second }
    }

    /// A single window with an empty second part.
    pub fn whole(c: &'a mut [Elem]) -> Self {
        SplitTarget { first: c, second: &mut [] }
    }

    pub fn len(&self) -> usize {
        self.first.len() + self.second.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn get(&self, k: usize) -> Elem {
        let h = self.first.len();
        if k < h {
            self.first[k]
        } else {
            self.second[k - h]
        }
    }

    #[inline]
    pub fn slot(&mut self, k: usize) -> &mut Elem {
        let h = self.first.len();
        if k < h {
            &mut self.first[k]
        } else {
            &mut self.second[k - h]
        }
    }

    /// Reborrows both parts for a shorter lifetime.
    pub fn reborrow(&mut self) -> SplitTarget<'_> {
        SplitTarget { first: self.first, second: self.second }
    }
}

/// Read/write view of a window in reverse order: index `k` maps to
/// `len - 1 - k`. Reversing a reversed view gives back the window.
#[derive(Debug)]
pub struct Reversed<'a>(pub &'a mut [Elem]);

impl<'a> Reversed<'a> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, k: usize) -> Elem {
        self.0[self.0.len() - 1 - k]
    }

    #[inline]
    pub fn set(&mut self, k: usize, v: Elem) {
        let n = self.0.len();
        self.0[n - 1 - k] = v;
    }

    /// The forward window underneath.
    pub fn reversed(self) -> &'a mut [Elem] {
        self.0
    }
}

/// Read-only window extended by virtual zeros up to `len`.
#[derive(Debug, Clone, Copy)]
pub struct Padded<'a> {
    data: &'a [Elem],
    len: usize,
}

impl<'a> Padded<'a> {
    pub fn new(data: &'a [Elem], len: usize) -> Self {
        Padded { data, len: len.max(data.len()) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of stored (non-virtual) coefficients.
    pub fn real_len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn get(&self, k: usize) -> Elem {
        assert!(k < self.len, "index {k} outside padded window of length {}", self.len);
        self.data.get(k).copied().unwrap_or(0)
    }
}

/// One tile of a block decomposition: `real` stored coefficients starting at
/// `start`, followed by `virtual_zeros` logical zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub real: usize,
    pub virtual_zeros: usize,
}

impl Block {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.real
    }
}

/// Tiles `0..len` into blocks of width `block`. With `pad_virtual` the last
/// partial tile is reported at full width with virtual zeros.
pub fn split_blocks(len: usize, block: usize, pad_virtual: bool) -> Result<impl Iterator<Item = Block>> {
    if block == 0 {
        return Err(Error::BadParameter("block width must be at least 1".into()));
    }
    Ok((0..len.div_ceil(block)).map(move |i| {
        let start = i * block;
        let real = block.min(len - start);
        let virtual_zeros = if pad_virtual { block - real } else { 0 };
        Block { start, real, virtual_zeros }
    }))
}

/// `r[k] <-> r[len-1-k]`.
#[inline]
pub fn reverse_in_place(r: &mut [Elem]) {
    r.reverse();
}

/// Copies of one or more regions, compared exactly against their later state.
#[derive(Debug, Clone, Default)]
pub struct Snapshot {
    saved: Vec<Vec<Elem>>,
}

impl Snapshot {
    pub fn take(regions: &[&[Elem]]) -> Self {
        Snapshot { saved: regions.iter().map(|r| r.to_vec()).collect() }
    }

    /// Fails with the first region and index whose value changed.
    pub fn assert_restored(&self, regions: &[&[Elem]]) -> Result<()> {
        if regions.len() != self.saved.len() {
            return Err(Error::LengthMismatch(format!(
                "snapshot holds {} regions, {} given",
                self.saved.len(),
                regions.len()
            )));
        }
        for (region, (old, new)) in self.saved.iter().zip(regions).enumerate() {
            if let Some(index) = (0..old.len().max(new.len())).find(|&i| old.get(i) != new.get(i)) {
                return Err(Error::RestorationViolation { region, index });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_tile_exactly_or_pad() {
        let b: Vec<_> = split_blocks(4, 2, false).unwrap().collect();
        assert_eq!(b.iter().map(Block::range).collect::<Vec<_>>(), vec![0..2, 2..4]);
        let b: Vec<_> = split_blocks(3, 2, true).unwrap().collect();
        assert_eq!(b[1], Block { start: 2, real: 1, virtual_zeros: 1 });
        let b: Vec<_> = split_blocks(3, 5, true).unwrap().collect();
        assert_eq!(b, vec![Block { start: 0, real: 3, virtual_zeros: 2 }]);
        assert!(split_blocks(3, 0, false).is_err());
        assert_eq!(split_blocks(0, 3, true).unwrap().count(), 0);
    }

    #[test]
    fn reversal() {
        let mut v = vec![1, 2, 3];
        reverse_in_place(&mut v);
        assert_eq!(v, [3, 2, 1]);
        let mut e: Vec<Elem> = vec![];
        reverse_in_place(&mut e);
        assert!(e.is_empty());
        let mut p = vec![4, 4];
        reverse_in_place(&mut p);
        assert_eq!(p, [4, 4]);

        let mut w = vec![1, 2, 3];
        let mut r = Reversed(&mut w);
        assert_eq!(r.get(0), 3);
        r.set(0, 9);
        assert_eq!(r.reversed(), &[1, 2, 9]);
    }

    #[test]
    fn split_target_indexing() {
        let (mut x, mut y) = (vec![1, 2], vec![3]);
        let mut t = SplitTarget::new(&mut x, &mut y);
        assert_eq!((0..3).map(|k| t.get(k)).collect::<Vec<_>>(), [1, 2, 3]);
        *t.slot(2) = 7;
        assert_eq!(y, [7]);
    }

    #[test]
    fn padded_reads_zero() {
        let d = [5, 6];
        let p = Padded::new(&d, 4);
        assert_eq!((0..4).map(|k| p.get(k)).collect::<Vec<_>>(), [5, 6, 0, 0]);
        assert_eq!(p.real_len(), 2);
    }

    #[test]
    fn snapshots() {
        let mut v = vec![1, 2];
        let s = Snapshot::take(&[&v]);
        assert!(s.assert_restored(&[&v]).is_ok());
        v[1] = 3;
        assert_eq!(s.assert_restored(&[&v]), Err(Error::RestorationViolation { region: 0, index: 1 }));
        let (a, b) = (vec![1], vec![2, 3]);
        let s = Snapshot::take(&[&a, &b]);
        assert!(s.assert_restored(&[&a, &b]).is_ok());
    }
}
