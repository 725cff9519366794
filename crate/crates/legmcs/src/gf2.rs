//! Dense linear algebra over Z/2 with bit-packed rows.

/// A dense matrix over Z/2. Rows are packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    /// Rank over Z/2.
    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    /// Row-reduce in place; returns the rank and the pivot column of each of
    /// the first `rank` rows.
    fn eliminate(mut self) -> (usize, Vec<usize>, BitMatrix) {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if p != next {
                for k in 0..self.words {
                    self.data.swap(next * self.words + k, p * self.words + k);
                }
            }
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
            if next == self.rows {
                break;
            }
        }
        (next, pivots, self)
    }

    /// A solution `x` of `A x = b`, if one exists.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        // Eliminate the augmented matrix [A | b].
        let mut aug = BitMatrix::new(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for w in 0..self.words {
                aug.data[r * aug.words + w] = self.data[r * self.words + w];
            }
            aug.set(r, self.cols, b[r]);
        }
        let (rank, pivots, aug) = aug.eliminate();
        let mut x = vec![false; self.cols];
        for (row, &c) in pivots.iter().enumerate().take(rank) {
            if c == self.cols {
                return None; // a row reduced to 0 = 1
            }
            x[c] = aug.get(row, self.cols);
        }
        debug_assert!({
            let mut ok = true;
            for r in 0..self.rows {
                let mut acc = false;
                for c in 0..self.cols {
                    acc ^= self.get(r, c) && x[c];
                }
                ok &= acc == b[r];
            }
            ok
        });
        Some(x)
    }
}
