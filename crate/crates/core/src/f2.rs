//! Row reduction over GF(2) with rows packed into machine words.

/// A reduced row-echelon basis of a subspace of GF(2)^w, w ≤ 64.
///
/// Every stored row has a distinct pivot (its highest set bit), and no other
/// row has that pivot bit set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RowSpace {
    rows: Vec<u64>,
}

fn pivot(v: u64) -> u32 {
    63 - v.leading_zeros()
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Span of the given vectors.
    pub fn spanned_by<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut space = Self::new();
        for v in vectors {
            space.insert(v);
        }
        space
    }

    /// Reduces `v` against the basis. The result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: u64) -> u64 {
        for &row in &self.rows {
            if v >> pivot(row) & 1 == 1 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the spanning set. Returns `false` if it was already in the span.
    pub fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pr = pivot(r);
        for row in &mut self.rows {
            if *row >> pr & 1 == 1 {
                *row ^= r;
            }
        }
        self.rows.push(r);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.rows
    }

    /// All 2^rank elements of the span, in no particular order.
    pub fn elements(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        for &row in &self.rows {
            let extra: Vec<u64> = out.iter().map(|&e| e ^ row).collect();
            out.extend(extra);
        }
        out
    }
}
