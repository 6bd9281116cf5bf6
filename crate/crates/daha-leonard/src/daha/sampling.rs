//! Seeded sampling of valid construction parameters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::FieldElement;

use super::params::validate_params;
use super::{HqParams, XType};

const PRIMES: [i64; 5] = [3, 5, 7, 11, 13];
const QS: [(i64, i64); 6] = [(2, 1), (3, 1), (1, 2), (-2, 1), (1, 3), (3, 2)];

/// A deterministic source of parameters for a given seed.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `±p^{±1}` for a small odd prime `p`.
    fn prime_value(&mut self) -> FieldElement {
        let p = *PRIMES.choose(&mut self.rng).expect("nonempty");
        let sign = if self.rng.gen_bool(0.25) { -1 } else { 1 };
        if self.rng.gen_bool(0.5) {
            FieldElement::from_int(sign * p)
        } else {
            FieldElement::frac(sign, p)
        }
    }

    pub fn q(&mut self) -> FieldElement {
        let (n, d) = *QS.choose(&mut self.rng).expect("nonempty");
        FieldElement::frac(n, d)
    }

    /// A value of `n` with the right parity for the type, at most `max_n`;
    /// `None` when there is none.
    pub fn n_for(&mut self, xtype: XType, max_n: usize) -> Option<usize> {
        let choices: Vec<usize> = (0..=max_n).filter(|&n| xtype.parity_ok(n)).collect();
        choices.choose(&mut self.rng).copied()
    }

    /// Draws `k0, …, k3` from small primes and their inverses, except for the
    /// one value forced by the type's defining equation. The result may
    /// still violate an inequality; see [`Sampler::sample`].
    pub fn draw(&mut self, xtype: XType, n: usize, q: &FieldElement) -> [FieldElement; 4] {
        let mut k: [FieldElement; 4] = std::array::from_fn(|_| self.prime_value());
        let e = n as i64 + 1;
        let forced = match xtype {
            XType::DS => {
                k[3] = q.pow(-e) / (&(&k[0] * &k[1]) * &k[2]);
                return k;
            }
            XType::DDa => 0,
            XType::DDb => 3,
            XType::SSa => 1,
            XType::SSb => 2,
        };
        let root = q.pow(-e / 2);
        k[forced] = if self.rng.gen_bool(0.5) { root } else { -root };
        k
    }

    /// Valid parameters for the type with `n ≤ max_n`, retrying up to 64 draws.
    pub fn sample(&mut self, xtype: XType, max_n: usize) -> Option<HqParams> {
        let n = self.n_for(xtype, max_n)?;
        for _ in 0..64 {
            let q = self.q();
            let k = self.draw(xtype, n, &q);
            if validate_params(xtype, n, &k, &q).is_ok() {
                return Some(HqParams { q, n, k });
            }
        }
        None
    }
}

/// `count` valid instances cycling through the five X-types, with `n ≤ max_n`.
/// Types with no admissible `n` (every type but `DS` when `max_n = 0`) are skipped;
/// the result is shorter than `count` only if sampling keeps failing.
pub fn sample_valid_params(seed: u64, count: usize, max_n: usize) -> Vec<(XType, HqParams)> {
    let mut sampler = Sampler::new(seed);
    let types: Vec<XType> = XType::ALL
        .into_iter()
        .filter(|t| (0..=max_n).any(|n| t.parity_ok(n)))
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    let mut misses = 0;
    while out.len() < count && misses < 64 * types.len().max(1) {
        let xtype = types[i % types.len()];
        i += 1;
        match sampler.sample(xtype, max_n) {
            Some(p) => {
                out.push((xtype, p));
                misses = 0;
            }
            None => misses += 1,
        }
    }
    out
}
