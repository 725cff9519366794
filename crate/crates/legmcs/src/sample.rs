//! Deterministic samplers of front diagrams for tests and benchmarks.
//!
//! The samplers use a private xorshift generator so the crate's public
//! behavior never depends on an RNG dependency; the same seed always yields
//! the same word.

use crate::front::FrontDiagram;

/// Small deterministic PRNG (xorshift64 seeded through a splitmix step).
#[derive(Clone, Debug)]
pub struct XorShift64(u64);

impl XorShift64 {
    pub fn new(seed: u64) -> Self {
        // One splitmix64 round so that consecutive seeds diverge.
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64(z | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform-ish draw from `0..m` (`m > 0`).
    pub fn below(&mut self, m: usize) -> usize {
        (self.next_u64() % m as u64) as usize
    }

}

/// A random plumbable event word with roughly `target` events. The word
/// always closes up, but it may describe a link or a front without Maslov
/// potential; use [`random_front`] to sample validated diagrams.
pub fn random_front_word(seed: u64, target: usize) -> String {
    let mut rng = XorShift64::new(seed);
    let mut n: usize = 0;
    let mut parts: Vec<String> = Vec::new();
    loop {
        if n == 0 {
            if !parts.is_empty() {
                break;
            }
            parts.push("L1".into());
            n = 2;
            continue;
        }
        let closing = parts.len() >= target;
        // Weighted choice among the events legal at the current width.
        let (wl, wx, wr) = if closing {
            (0, 1, 5)
        } else if n >= 10 {
            (0, 4, 3)
        } else {
            (3, 4, 2)
        };
        let total = wl + wx + wr;
        let roll = rng.below(total);
        if roll < wl {
            let k = rng.below(n + 1) + 1;
            parts.push(format!("L{}", k));
            n += 2;
        } else if roll < wl + wx {
            let k = rng.below(n - 1) + 1;
            parts.push(format!("X{}", k));
        } else {
            let k = rng.below(n - 1) + 1;
            parts.push(format!("R{}", k));
            n -= 2;
        }
    }
    parts.join(" ")
}

/// A validated random front diagram: retries [`random_front_word`] with
/// derived seeds until the word is a knot with a Maslov potential.
///
/// Panics if no valid diagram shows up in a large number of attempts; only
/// intended for tests and benchmarks.
pub fn random_front(seed: u64, target: usize) -> FrontDiagram {
    for attempt in 0..100_000u64 {
        let word = random_front_word(seed.wrapping_add(attempt.wrapping_mul(0x51A5_34D1)), target);
        if let Ok(d) = FrontDiagram::from_word(&word) {
            return d;
        }
    }
    panic!("no valid front found for seed {}", seed);
}

/// The standard front of the `m`-crossing twist family:
/// `L1 L3 X2 ... X2 R1 R1`. A knot exactly when `m` is odd (`m = 3` is the
/// maximal-tb right trefoil).
pub fn twist_word(m: usize) -> String {
    let mut parts = vec!["L1".to_string(), "L3".to_string()];
    parts.extend(std::iter::repeat("X2".to_string()).take(m));
    parts.push("R1".into());
    parts.push("R1".into());
    parts.join(" ")
}
