use std::collections::VecDeque;
use std::fmt;

use crate::error::RleError;
use crate::meter::Meter;

/// Run-length encoded 0-1 sequence `(a1, b1, ..., ak, bk)`.
///
/// `a_i` are zero-run lengths and `b_i` one-run lengths. Canonical form:
/// only `a1` and `bk` may be zero, the all-zero sequence of length `L` is
/// `(L, 0)` and the empty sequence has no runs. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RleSeq {
    runs: VecDeque<u32>,
    len: usize,
}

impl fmt::Debug for RleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rle{:?}", self.runs)
    }
}

impl RleSeq {
    pub fn new() -> Self {
        Self::default()
    }

    /// All-zero sequence of length `len`.
    pub fn zeros(len: usize) -> Self {
        let mut b = RleBuilder::new();
        b.push(false, len);
        b.finish()
    }

    pub fn encode(bits: &[bool]) -> Self {
        let mut b = RleBuilder::new();
        for &bit in bits {
            b.push(bit, 1);
        }
        b.finish()
    }

    /// Encodes a sequence of length `len` whose one-positions are
    /// `ones` (strictly increasing).
    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut b = RleBuilder::new();
        let mut at = 0;
        for &p in ones {
            debug_assert!(p >= at && p < len);
            b.push(false, p - at);
            b.push(true, 1);
            at = p + 1;
        }
        b.push(false, len - at);
        b.finish()
    }

    /// Validates and wraps a run list.
    pub fn from_runs(runs: Vec<u32>) -> Result<Self, RleError> {
        if !is_canonical(&runs) {
            return Err(RleError::NonCanonical(runs));
        }
        let len = runs.iter().map(|&r| r as usize).sum();
        Ok(RleSeq { runs: runs.into(), len })
    }

    pub fn runs(&self) -> impl ExactSizeIterator<Item = u32> + '_ {
        self.runs.iter().copied()
    }

    pub fn to_runs(&self) -> Vec<u32> {
        self.runs.iter().copied().collect()
    }

    /// Number of stored run entries, `|Seq^r|`.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Decoded length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn decode(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.len);
        for (i, r) in self.runs.iter().enumerate() {
            out.extend(std::iter::repeat_n(i % 2 == 1, *r as usize));
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.runs.iter().skip(1).step_by(2).map(|&r| r as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Positions of the 1 bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut start = 0usize;
        self.runs.iter().enumerate().flat_map(move |(i, &r)| {
            let s = start;
            start += r as usize;

            if i % 2 == 1 {
                s..s + r as usize
            } else {
                s..s
            }
        })
    }

    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "bit {pos} out of range for length {}", self.len);
        let mut acc = 0usize;
        for (i, &r) in self.runs.iter().enumerate() {
            acc += r as usize;
            if pos < acc {
                return i % 2 == 1;
            }
        }
        unreachable!()
    }

    /// `|runs| <= min(2*x0, 2*x1) + 2`.
    pub fn within_run_bound(&self) -> bool {
        let x1 = self.count_ones();
        let x0 = self.len - x1;
        self.runs.len() <= 2 * x0.min(x1) + 2
    }

    /// Drops the first bit in O(1) and returns it.
    pub fn pop_front_bit(&mut self) -> Option<bool> {
        if self.len == 0 {
            return None;
        }
        self.len -= 1;
        let bit = if self.runs[0] > 0 {
            self.runs[0] -= 1;
            false
        } else {
            self.runs[1] -= 1;
            true
        };
        if self.len == 0 {
            self.runs.clear();
        } else if self.runs[0] == 0 && self.runs[1] == 0 {
            // (0, 0, a2, b2, ...) -> (a2, b2, ...)
            self.runs.pop_front();
            self.runs.pop_front();
        }
        Some(bit)
    }

    /// Prepends one bit in O(1).
    pub fn push_front_bit(&mut self, bit: bool) {
        if self.len == 0 {
            self.runs.clear();
            self.runs.extend(if bit { [0, 1] } else { [1, 0] });
        } else if !bit {
            self.runs[0] += 1;
        } else if self.runs[0] == 0 {
            self.runs[1] += 1;
        } else {
            self.runs.push_front(1);
            self.runs.push_front(0);
        }
        self.len += 1;
    }
}

/// Checks the canonical-form rules on a raw run list.
pub fn is_canonical(runs: &[u32]) -> bool {
    if runs.is_empty() {
        return true;
    }
    if !runs.len().is_multiple_of(2) {
        return false;
    }
    let last = runs.len() - 1;
    if runs[1..last].contains(&0) {
        return false;
    }
    // (0, 0) would be a non-empty encoding of the empty sequence
    !(runs.len() == 2 && runs[0] == 0 && runs[1] == 0)
}

/// Decodes a raw run list, rejecting non-canonical input.
pub fn decode_runs(runs: &[u32]) -> Result<Vec<bool>, RleError> {
    Ok(RleSeq::from_runs(runs.to_vec())?.decode())
}

/// Appends runs left to right, coalescing equal-parity neighbours.
#[derive(Debug, Default)]
pub struct RleBuilder {
    runs: VecDeque<u32>,
    len: usize,
}

impl RleBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, bit: bool, count: usize) {
        if count == 0 {
            return;
        }
        let count = u32::try_from(count).expect("run length fits in u32");
        self.len += count as usize;
        if self.runs.is_empty() {
            if bit {
                self.runs.push_back(0);
            }
            self.runs.push_back(count);
            return;
        }
        let last_is_one = self.runs.len().is_multiple_of(2);
        if last_is_one == bit {
            *self.runs.back_mut().unwrap() += count;
        } else {
            self.runs.push_back(count);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn finish(mut self) -> RleSeq {
        if self.runs.len() % 2 == 1 {
            self.runs.push_back(0);
        }
        RleSeq { runs: self.runs, len: self.len }
    }
}

/// Sequential reader over the runs of an [`RleSeq`] that hands out bits in
/// whole-run chunks, never one bit at a time.
pub(crate) struct RunCursor<'a> {
    seq: &'a RleSeq,
    idx: usize,
    rem: usize,
}

impl<'a> RunCursor<'a> {
    pub fn new(seq: &'a RleSeq) -> Self {
        let rem = seq.runs.front().map_or(0, |&r| r as usize);
        RunCursor { seq, idx: 0, rem }
    }

    #[inline]
    fn settle(&mut self) -> bool {
        while self.rem == 0 {
            self.idx += 1;
            match self.seq.runs.get(self.idx) {
                Some(&r) => self.rem = r as usize,
                None => return false,
            }
        }
        true
    }

    /// Moves the next `count` bits into `out`. Returns false if the
    /// sequence ran out first.
    pub fn take_into(&mut self, mut count: usize, out: &mut RleBuilder, meter: &mut Meter) -> bool {
        while count > 0 {
            if !self.settle() {
                return false;
            }
            let k = self.rem.min(count);
            out.push(self.idx % 2 == 1, k);
            meter.add(1);
            self.rem -= k;
            count -= k;
        }
        true
    }

    /// Discards the next `count` bits.
    pub fn skip(&mut self, mut count: usize, meter: &mut Meter) -> bool {
        while count > 0 {
            if !self.settle() {
                return false;
            }
            let k = self.rem.min(count);
            meter.add(1);
            self.rem -= k;
            count -= k;
        }
        true
    }

    pub fn exhausted(&mut self) -> bool {
        !self.settle()
    }
}

/// Splits `row` by `mask`: bits under 0s of the mask go to the first
/// output, bits under 1s to the second. Position `skip` is dropped from
/// both (it must be a 0 of the mask).
pub(crate) fn split_by_mask(row: &RleSeq, mask: &RleSeq, skip: usize, meter: &mut Meter) -> (RleSeq, RleSeq) {
    let mut zeros = RleBuilder::new();
    let mut ones = RleBuilder::new();
    let mut cur = RunCursor::new(row);
    let mut start = 0usize;
    for (i, r) in mask.runs().enumerate() {
        let r = r as usize;
        meter.add(1);
        if i % 2 == 1 {
            cur.take_into(r, &mut ones, meter);
        } else if (start..start + r).contains(&skip) {
            cur.take_into(skip - start, &mut zeros, meter);
            cur.skip(1, meter);
            cur.take_into(start + r - skip - 1, &mut zeros, meter);
        } else {
            cur.take_into(r, &mut zeros, meter);
        }
        start += r;
    }
    (zeros.finish(), ones.finish())
}

/// Inverse of [`split_by_mask`]: rebuilds a row of `mask.len()` bits taking
/// bits under mask 1s from `ones_src` and under mask 0s from `zeros_src`,
/// with a literal 0 at position `skip`. Returns `None` on length mismatch.
pub(crate) fn interleave(
    mask: &RleSeq,
    skip: usize,
    ones_src: &RleSeq,
    zeros_src: &RleSeq,
    meter: &mut Meter,
) -> Option<RleSeq> {
    let mut out = RleBuilder::new();
    let mut ones = RunCursor::new(ones_src);
    let mut zeros = RunCursor::new(zeros_src);
    let mut start = 0usize;
    for (i, r) in mask.runs().enumerate() {
        let r = r as usize;
        meter.add(1);
        let ok = if i % 2 == 1 {
            ones.take_into(r, &mut out, meter)
        } else if (start..start + r).contains(&skip) {
            let a = zeros.take_into(skip - start, &mut out, meter);
            out.push(false, 1);
            a && zeros.take_into(start + r - skip - 1, &mut out, meter)
        } else {
            zeros.take_into(r, &mut out, meter)
        };
        if !ok {
            return None;
        }
        start += r;
    }
    if !ones.exhausted() || !zeros.exhausted() {
        return None;
    }
    Some(out.finish())
}
