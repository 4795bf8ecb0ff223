/// Counter of basic operations: run entries read or written, ordering
/// positions touched and shift pairs applied. Unit-free; used as the
/// proxy for running time in the cost reports.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Meter {
    pub ops: u64,
}

impl Meter {
    #[inline]
    pub fn add(&mut self, k: usize) {
        self.ops += k as u64;
    }
}
