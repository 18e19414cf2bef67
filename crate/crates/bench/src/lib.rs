//! Seeded inputs shared by the benchmarks.

use onerel::{Alphabet, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random word of length `len` over the letters of `names` and their inverses.
pub fn random_word(names: &[&str], len: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let name = names[rng.gen_range(0..names.len())];
            if rng.gen_bool(0.5) {
                Letter::pos(name)
            } else {
                Letter::neg(name)
            }
        })
        .collect()
}

pub fn alphabet(names: &[&str]) -> Alphabet {
    Alphabet::new(names).expect("valid names")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded() {
        let a = random_word(&["a", "b"], 40, 7);
        assert_eq!(a.len(), 40);
        assert_eq!(a, random_word(&["a", "b"], 40, 7));
    }
}
