/// Bitmasks over `n < 64` items in order of increasing popcount, and in
/// increasing numeric order within one popcount.
pub(crate) struct ByPopcount {
    n: u32,
    k: u32,
    next: Option<u64>,
}

impl ByPopcount {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n < 64, "subset enumeration limited to 63 items");
        ByPopcount {
            n: n as u32,
            k: 0,
            next: Some(0),
        }
    }
}

impl Iterator for ByPopcount {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        let limit = 1u64 << self.n;
        // Gosper's hack: next mask with the same popcount
        let following = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let m = (((r ^ cur) >> 2) / c) | r;
            (m < limit).then_some(m)
        };
        self.next = following.or_else(|| {
            self.k += 1;
            (self.k <= self.n).then(|| (1u64 << self.k) - 1)
        });
        Some(cur)
    }
}
