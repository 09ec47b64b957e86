//! Seeded random elements for property checks.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::beta::{BetaElement, RatFun};
use crate::freealg::{CyclicSeries, Word};
use crate::freelie::{lyndon_words, LieSeries};
use crate::letter::Letter;
use crate::mma::MmaElement;
use crate::rational::Rational;

/// A random source producing small-coefficient algebraic elements.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero rational `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3`.
    pub fn small_rational(&mut self) -> Rational {
        let p = *[-3, -2, -1, 1, 2, 3].choose(&mut self.rng).expect("nonempty");
        Rational::new(p, self.rng.gen_range(1..=3))
    }

    /// A Lie series with up to `terms` Lyndon terms over `alphabet`, always
    /// containing at least one degree-1 term when the alphabet is nonempty.
    pub fn lie(&mut self, alphabet: &[Letter], degree: usize, terms: usize) -> LieSeries {
        if alphabet.is_empty() {
            return LieSeries::zero(degree);
        }
        let basis = lyndon_words(alphabet, degree).expect("nonempty alphabet");
        let mut out: Vec<(Word, Rational)> = Vec::new();
        let first = alphabet.choose(&mut self.rng).expect("nonempty");
        out.push((Word::from_slice(&[*first]), self.small_rational()));
        for _ in 1..terms {
            let w = basis.choose(&mut self.rng).expect("nonempty").clone();
            out.push((w, self.small_rational()));
        }
        LieSeries::from_terms(degree, out).expect("Lyndon basis")
    }

    /// A reduced wheel series with up to `terms` words of length 2..=degree.
    pub fn wheels(&mut self, alphabet: &[Letter], degree: usize, terms: usize) -> CyclicSeries<Rational> {
        if alphabet.is_empty() || degree < 2 {
            return CyclicSeries::zero(degree);
        }
        let mut out = Vec::new();
        for _ in 0..terms {
            let len = self.rng.gen_range(2..=degree);
            let w: Word = (0..len).map(|_| *alphabet.choose(&mut self.rng).expect("nonempty")).collect();
            out.push((w, self.small_rational()));
        }
        CyclicSeries::from_terms(degree, out).reduce()
    }

    /// A random element of `M(tails; heads)`.
    pub fn mma(&mut self, tails: &[Letter], heads: &[Letter], degree: usize) -> MmaElement {
        let lambda: BTreeMap<Letter, LieSeries> = heads.iter().map(|x| (*x, self.lie(tails, degree, 5))).collect();
        let omega = self.wheels(tails, degree, 3);
        MmaElement::new(degree, tails.iter().copied().collect(), lambda, omega).expect("letters drawn from tails")
    }

    /// `c·(m − 1)` summed over a few random Laurent monomials `m` in the
    /// given variables, so the result vanishes at `t = 1`.
    pub fn vanishing_laurent(&mut self, vars: &[Letter], terms: usize) -> RatFun {
        let mut out = RatFun::zero();
        if vars.is_empty() {
            return out;
        }
        for _ in 0..terms {
            let v = *vars.choose(&mut self.rng).expect("nonempty");
            let k = *[-1i64, 1, 2].choose(&mut self.rng).expect("nonempty");
            let c = self.rng.gen_range(-2i64..=2);
            let m = RatFun::var_pow(v, k).sub(&RatFun::one());
            out = out.add(&m.mul(&RatFun::integer(c)));
        }
        out
    }

    /// A random β element whose ω and entries satisfy the `t = 1`
    /// normalization.
    pub fn beta(&mut self, tails: &[Letter], heads: &[Letter]) -> BetaElement {
        let omega = RatFun::one().add(&self.vanishing_laurent(tails, 1));
        let omega = if omega.is_zero() { RatFun::one() } else { omega };
        let mut a = BTreeMap::new();
        for u in tails {
            for x in heads {
                if self.rng.gen_bool(0.75) {
                    a.insert((*u, *x), self.vanishing_laurent(tails, 2));
                }
            }
        }
        BetaElement::new(tails.iter().copied().collect::<BTreeSet<_>>(), heads.iter().copied().collect(), omega, a)
            .expect("entries use tail variables")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;

    #[test]
    fn seeds_are_reproducible() {
        let tails = [letter("u"), letter("v")];
        let heads = [letter("x")];
        let a = Sampler::new(7).mma(&tails, &heads, 4);
        let b = Sampler::new(7).mma(&tails, &heads, 4);
        assert_eq!(a, b);
        let c = Sampler::new(8).mma(&tails, &heads, 4);
        assert_ne!(a, c);
    }

    #[test]
    fn beta_samples_are_normalized() {
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let e = s.beta(&[letter("u"), letter("v")], &[letter("x"), letter("y")]);
            assert!(e.normalized_at_one());
        }
    }
}
