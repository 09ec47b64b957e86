//! Identity suites shared by `kbh selftest` and the test targets. Each check
//! runs a family of seeded cases and records which ones failed.

use std::collections::BTreeMap;
use std::fmt;

use crate::beta::{log_at_exp, BetaElement};
use crate::cyclic::{div_u, j_u};
use crate::error::{BetaError, MmaError, TangleError};
use crate::freealg::{AssocSeries, CyclicSeries, Word};
use crate::freelie::{ad_u, c_images, conj_c, conj_rc, derive, LetterMap, LieSeries};
use crate::letter::{letter, Letter};
use crate::mma::{MmaElement, Sign};
use crate::random::Sampler;
use crate::rational::Rational;
use crate::tangle::{beta_of_tangle, zeta_of_tangle, Tangle};

/// The result of one named identity over a number of cases.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

/// Degree, seed and case count for a randomized suite.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub degree: usize,
    pub seed: u64,
    pub cases: usize,
}

fn check(name: impl Into<String>, cases: usize, mut f: impl FnMut(usize) -> Result<bool, String>) -> Outcome {
    let mut failures = Vec::new();
    for i in 0..cases {
        match f(i) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {i}: sides differ")),
            Err(e) => failures.push(format!("case {i}: {e}")),
        }
    }
    Outcome { name: name.into(), cases, failures }
}

fn labels<const N: usize>(names: [&str; N]) -> [Letter; N] {
    names.map(letter)
}

/// The operations shared by `M` and the β quotient, so that axioms and
/// relations are stated once.
pub trait Mma: Clone + PartialEq + Sized {
    type Error: fmt::Display;

    fn merge(&self, other: &Self) -> Result<Self, Self::Error>;
    fn tm(&self, u: Letter, v: Letter, w: Letter) -> Result<Self, Self::Error>;
    fn hm(&self, x: Letter, y: Letter, z: Letter) -> Result<Self, Self::Error>;
    fn tha(&self, u: Letter, x: Letter) -> Result<Self, Self::Error>;
    fn t_sigma(&self, u: Letter, v: Letter) -> Result<Self, Self::Error>;
    fn h_sigma(&self, x: Letter, y: Letter) -> Result<Self, Self::Error>;
    fn t_eta(&self, u: Letter) -> Result<Self, Self::Error>;
    fn h_eta(&self, x: Letter) -> Result<Self, Self::Error>;
    /// `tϵ_u` in the same space as `self`.
    fn tail_unit(&self, u: Letter) -> Self;
    /// `hϵ_x` in the same space as `self`.
    fn head_unit(&self, x: Letter) -> Self;
    /// The generator value `ρ±_{ux}` in the same space as `self`.
    fn rho(&self, sign: Sign, u: Letter, x: Letter) -> Self;
    /// Equality up to framing: exact in `M`, up to units in β.
    fn framing_equiv(&self, other: &Self) -> bool {
        self == other
    }
}

impl Mma for MmaElement {
    type Error = MmaError;

    fn merge(&self, other: &Self) -> Result<Self, MmaError> {
        MmaElement::merge(self, other)
    }
    fn tm(&self, u: Letter, v: Letter, w: Letter) -> Result<Self, MmaError> {
        MmaElement::tm(self, u, v, w)
    }
    fn hm(&self, x: Letter, y: Letter, z: Letter) -> Result<Self, MmaError> {
        MmaElement::hm(self, x, y, z)
    }
    fn tha(&self, u: Letter, x: Letter) -> Result<Self, MmaError> {
        MmaElement::tha(self, u, x)
    }
    fn t_sigma(&self, u: Letter, v: Letter) -> Result<Self, MmaError> {
        MmaElement::t_sigma(self, u, v)
    }
    fn h_sigma(&self, x: Letter, y: Letter) -> Result<Self, MmaError> {
        MmaElement::h_sigma(self, x, y)
    }
    fn t_eta(&self, u: Letter) -> Result<Self, MmaError> {
        MmaElement::t_eta(self, u)
    }
    fn h_eta(&self, x: Letter) -> Result<Self, MmaError> {
        MmaElement::h_eta(self, x)
    }
    fn tail_unit(&self, u: Letter) -> Self {
        MmaElement::unit_t(u, self.degree())
    }
    fn head_unit(&self, x: Letter) -> Self {
        MmaElement::unit_h(x, self.degree())
    }
    fn rho(&self, sign: Sign, u: Letter, x: Letter) -> Self {
        MmaElement::generator(sign, u, x, self.degree())
    }
}

impl Mma for BetaElement {
    type Error = BetaError;

    fn merge(&self, other: &Self) -> Result<Self, BetaError> {
        BetaElement::merge(self, other)
    }
    fn tm(&self, u: Letter, v: Letter, w: Letter) -> Result<Self, BetaError> {
        BetaElement::tm(self, u, v, w)
    }
    fn hm(&self, x: Letter, y: Letter, z: Letter) -> Result<Self, BetaError> {
        BetaElement::hm(self, x, y, z)
    }
    fn tha(&self, u: Letter, x: Letter) -> Result<Self, BetaError> {
        BetaElement::tha(self, u, x)
    }
    fn t_sigma(&self, u: Letter, v: Letter) -> Result<Self, BetaError> {
        BetaElement::t_sigma(self, u, v)
    }
    fn h_sigma(&self, x: Letter, y: Letter) -> Result<Self, BetaError> {
        BetaElement::h_sigma(self, x, y)
    }
    fn t_eta(&self, u: Letter) -> Result<Self, BetaError> {
        BetaElement::t_eta(self, u)
    }
    fn h_eta(&self, x: Letter) -> Result<Self, BetaError> {
        BetaElement::h_eta(self, x)
    }
    fn tail_unit(&self, u: Letter) -> Self {
        BetaElement::unit_t(u)
    }
    fn head_unit(&self, x: Letter) -> Self {
        BetaElement::unit_h(x)
    }
    fn rho(&self, sign: Sign, u: Letter, x: Letter) -> Self {
        BetaElement::generator(sign, u, x)
    }
    fn framing_equiv(&self, other: &Self) -> bool {
        self.unit_equiv(other)
    }
}

fn eq<E: Mma>(a: Result<E, E::Error>, b: Result<E, E::Error>) -> Result<bool, String> {
    Ok(a.map_err(|e| e.to_string())? == b.map_err(|e| e.to_string())?)
}

/// The axioms of a meta-monoid-action on random elements with tails
/// `u, v, w` and heads `x, y, z`, drawn by `sample`.
pub fn mma_axioms<E: Mma>(cases: usize, mut sample: impl FnMut(&[Letter], &[Letter]) -> E) -> Vec<Outcome> {
    let [u, v, w, x, y, z] = labels(["u", "v", "w", "x", "y", "z"]);
    let [s, h, p, q, r] = labels(["s", "h", "p", "q", "r"]);
    let tails = [u, v, w];
    let heads = [x, y, z];
    let elements: Vec<E> = (0..cases).map(|_| sample(&tails, &heads)).collect();
    let others: Vec<E> = (0..cases).map(|_| sample(&[p, q], &[r, h])).collect();
    let mut out = Vec::new();
    out.push(check("hm meta-associativity", cases, |i| {
        let k = &elements[i];
        eq(k.hm(x, y, x).and_then(|e| e.hm(x, z, x)), k.hm(y, z, y).and_then(|e| e.hm(x, y, x)))
    }));
    out.push(check("tm meta-associativity", cases, |i| {
        let k = &elements[i];
        eq(k.tm(u, v, u).and_then(|e| e.tm(u, w, u)), k.tm(v, w, v).and_then(|e| e.tm(u, v, u)))
    }));
    out.push(check("meta-actions commute", cases, |i| {
        let k = &elements[i];
        eq(k.tha(u, x).and_then(|e| e.tha(v, y)), k.tha(v, y).and_then(|e| e.tha(u, x)))
    }));
    out.push(check("meta-action axiom t", cases, |i| {
        let k = &elements[i];
        eq(
            k.tm(u, v, s).and_then(|e| e.tha(s, x)),
            k.tha(u, x).and_then(|e| e.tha(v, x)).and_then(|e| e.tm(u, v, s)),
        )
    }));
    out.push(check("meta-action axiom h", cases, |i| {
        let k = &elements[i];
        eq(
            k.hm(x, y, h).and_then(|e| e.tha(u, h)),
            k.tha(u, x).and_then(|e| e.tha(u, y)).and_then(|e| e.hm(x, y, h)),
        )
    }));
    out.push(check("tail units", cases, |i| {
        let k = &elements[i];
        let ke = k.merge(&k.tail_unit(s)).map_err(|e| e.to_string())?;
        Ok(eq(ke.tm(s, v, h), k.t_sigma(v, h))? && eq(ke.tm(v, s, h), k.t_sigma(v, h))?)
    }));
    out.push(check("head units", cases, |i| {
        let k = &elements[i];
        let ke = k.merge(&k.head_unit(s)).map_err(|e| e.to_string())?;
        Ok(eq(ke.hm(s, y, h), k.h_sigma(y, h))? && eq(ke.hm(y, s, h), k.h_sigma(y, h))?)
    }));
    out.push(check("merge commutes and bi-commutes with unary operations", cases, |i| {
        let (k, l) = (&elements[i], &others[i]);
        let kl = k.merge(l).map_err(|e| e.to_string())?;
        Ok(eq(Ok(kl.clone()), l.merge(k))?
            && eq(k.hm(x, y, s).and_then(|e| e.merge(l)), kl.hm(x, y, s))?
            && eq(k.tha(u, x).and_then(|e| e.merge(l)), kl.tha(u, x))?
            && eq(k.tm(u, w, s).and_then(|e| e.merge(l)), kl.tm(u, w, s))?)
    }));
    out.push(check("relabelling composes", cases, |i| {
        let k = &elements[i];
        Ok(eq(k.t_sigma(u, s).and_then(|e| e.t_sigma(s, h)), k.t_sigma(u, h))?
            && eq(k.h_sigma(x, s).and_then(|e| e.h_sigma(s, h)), k.h_sigma(x, h))?
            && eq(k.hm(x, y, x).and_then(|e| e.h_sigma(x, s)), k.hm(x, y, s))?)
    }));
    out.push(check("tail-commutativity", cases, |i| {
        let k = &elements[i];
        eq(k.tm(u, v, s), k.tm(v, u, s))
    }));
    out
}

/// The defining relations of `K₀` evaluated on generator values in the
/// space of `template` (which only fixes the degree).
pub fn relations<E: Mma>(template: &E) -> Vec<Outcome> {
    let [u, v, w, x, y, z] = labels(["u", "v", "w", "x", "y", "z"]);
    let signs = [Sign::Plus, Sign::Minus];
    let t = template;
    let mut out = Vec::new();
    out.push(check("relabelling", 2, |i| {
        let s = signs[i];
        eq(t.rho(s, u, x).h_sigma(x, y).and_then(|e| e.t_sigma(u, v)), Ok(t.rho(s, v, y)))
    }));
    out.push(check("cutting and puncturing", 2, |i| {
        let s = signs[i];
        Ok(eq(t.rho(s, u, x).h_eta(x), Ok(t.tail_unit(u)))? && eq(t.rho(s, u, x).t_eta(u), Ok(t.head_unit(x)))?)
    }));
    out.push(check("inverses", 1, |_| {
        let lhs = t
            .rho(Sign::Plus, u, x)
            .merge(&t.rho(Sign::Minus, v, y))
            .and_then(|e| e.tm(u, v, w))
            .and_then(|e| e.hm(x, y, z));
        eq(lhs, t.tail_unit(w).merge(&t.head_unit(z)))
    }));
    for s1 in signs {
        for s2 in signs {
            out.push(check(format!("conjugation relation ({s1},{s2})"), 1, |_| {
                let lhs = t
                    .rho(s1, u, x)
                    .merge(&t.rho(s2, v, y))
                    .and_then(|e| e.merge(&t.rho(s2, w, z)))
                    .and_then(|e| e.tm(v, w, v))
                    .and_then(|e| e.hm(x, y, x))
                    .and_then(|e| e.tha(u, z));
                let rhs = t
                    .rho(s2, v, x)
                    .merge(&t.rho(s2, w, z))
                    .and_then(|e| e.merge(&t.rho(s1, u, y)))
                    .and_then(|e| e.tm(v, w, v))
                    .and_then(|e| e.hm(x, y, x));
                eq(lhs, rhs)
            }));
        }
    }
    out.push(check("tail-commutativity on generators", 2, |i| {
        let k = t.rho(signs[i], u, x).merge(&t.rho(signs[1 - i], v, y)).map_err(|e| e.to_string())?;
        eq(k.tm(u, v, w), k.tm(v, u, w))
    }));
    out.push(check("framing independence", 2, |i| {
        let g = t.rho(signs[i], u, x);
        let moved = g.tha(u, x).map_err(|e| e.to_string())?;
        Ok(moved.framing_equiv(&g))
    }));
    out
}

fn assoc_sample(s: &mut Sampler, alphabet: &[Letter], degree: usize) -> AssocSeries<Rational> {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut terms = Vec::new();
    for _ in 0..5 {
        let len = s.rng().gen_range(1..=degree);
        let w: Word = (0..len).map(|_| *alphabet.choose(s.rng()).expect("nonempty")).collect();
        let c = s.small_rational();
        terms.push((w, c));
    }
    AssocSeries::from_terms(degree, terms)
}

/// Free associative algebra identities.
pub fn freealg_suite(cfg: Config) -> Vec<Outcome> {
    let [u, v, w] = labels(["u", "v", "w"]);
    let alphabet = [u, v, w];
    let d = cfg.degree;
    let mut s = Sampler::new(cfg.seed);
    let samples: Vec<[AssocSeries<Rational>; 3]> = (0..cfg.cases)
        .map(|_| [0, 1, 2].map(|_| assoc_sample(&mut s, &alphabet, d)))
        .collect();
    let img = s.lie(&[v, w], d, 3).iota();
    let mut images = crate::freealg::LetterImages::default();
    images.insert(u, img);
    let one = AssocSeries::one(d);
    vec![
        check("product is associative and distributive", cfg.cases, |i| {
            let [a, b, c] = &samples[i];
            Ok(a.mul(b).mul(c) == a.mul(&b.mul(c)) && a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)))
        }),
        check("log and exp are inverse", cfg.cases, |i| {
            let [a, b, _] = &samples[i];
            let ea = a.exp().map_err(|e| e.to_string())?;
            let lb = one.add(b).log().map_err(|e| e.to_string())?;
            Ok(ea.log().map_err(|e| e.to_string())? == *a && lb.exp().map_err(|e| e.to_string())? == one.add(b))
        }),
        check("trace is cyclic", cfg.cases, |i| {
            let [a, b, _] = &samples[i];
            Ok(a.mul(b).tr() == b.mul(a).tr())
        }),
        check("substitution commutes with product, exp, log and trace", cfg.cases, |i| {
            let [a, b, _] = &samples[i];
            let sub = |x: &AssocSeries<Rational>| x.substitute(&images);
            let ea = a.exp().map_err(|e| e.to_string())?;
            let l = one.add(b).log().map_err(|e| e.to_string())?;
            Ok(sub(&a.mul(b)) == sub(a).mul(&sub(b))
                && sub(&ea) == sub(a).exp().map_err(|e| e.to_string())?
                && sub(&l) == one.add(&sub(b)).log().map_err(|e| e.to_string())?
                && sub(&a.mul(b)).tr() == a.mul(b).tr().substitute(&images))
        }),
    ]
}

/// Free Lie algebra identities, including the RC composition laws.
pub fn freelie_suite(cfg: Config) -> Vec<Outcome> {
    let [u, v, w] = labels(["u", "v", "w"]);
    let d = cfg.degree;
    let mut s = Sampler::new(cfg.seed);
    let samples: Vec<[LieSeries; 3]> = (0..cfg.cases).map(|_| [0, 1, 2].map(|_| s.lie(&[u, v, w], d, 4))).collect();
    let two: Vec<[LieSeries; 3]> = (0..cfg.cases).map(|_| [0, 1, 2].map(|_| s.lie(&[u, v], d, 4))).collect();
    let img = s.lie(&[v, w], d, 3);
    let m = LetterMap::new().set(u, img);
    vec![
        check("Jacobi identity", cfg.cases, |i| {
            let [a, b, c] = &samples[i];
            let j = a.bracket(&b.bracket(c)).add(&b.bracket(&c.bracket(a))).add(&c.bracket(&a.bracket(b)));
            Ok(j.is_zero())
        }),
        check("bracket agrees with the associative commutator", cfg.cases, |i| {
            let [a, b, _] = &samples[i];
            Ok(a.bracket(b).iota() == a.iota().commutator(&b.iota()))
        }),
        check("bch is associative", cfg.cases, |i| {
            let [a, b, c] = &samples[i];
            Ok(a.bch(b).bch(c) == a.bch(&b.bch(c)))
        }),
        check("RC inverts C", cfg.cases, |i| {
            let [g, a, _] = &samples[i];
            Ok(conj_c(u, g, &conj_rc(u, g, a)) == *a && conj_rc(u, g, &conj_c(u, g, a)) == *a)
        }),
        check("RC of a bch composes", cfg.cases, |i| {
            let [a, b, x] = &two[i];
            Ok(conj_rc(u, &a.bch(b), x) == conj_rc(u, &conj_rc(u, a, b), &conj_rc(u, a, x)))
        }),
        check("RCs at distinct letters commute", cfg.cases, |i| {
            let [a, b, x] = &two[i];
            let a2 = conj_rc(v, b, a);
            let b2 = conj_rc(u, a, b);
            Ok(conj_rc(v, &b2, &conj_rc(u, a, x)) == conj_rc(u, &a2, &conj_rc(v, b, x)))
        }),
        check("morphisms respect bracket and bch", cfg.cases, |i| {
            let [a, b, _] = &samples[i];
            Ok(a.bracket(b).apply(&m) == a.apply(&m).bracket(&b.apply(&m)) && a.bch(b).apply(&m) == a.apply(&m).bch(&b.apply(&m)))
        }),
    ]
}

/// `x ∥ C_u^{−γ}` on wheels.
fn wheels_c(x: &CyclicSeries<Rational>, u: Letter, gamma: &LieSeries) -> CyclicSeries<Rational> {
    x.substitute(&c_images(u, gamma))
}

/// The derivation `v ↦ [β, v]` applied to a wheel series.
fn wheels_ad(x: &CyclicSeries<Rational>, v: Letter, beta: &LieSeries) -> CyclicSeries<Rational> {
    let d = x.degree();
    let words = AssocSeries::from_terms(d, x.terms().map(|(w, c)| (w.clone(), c.clone())));
    let image = beta.bracket(&LieSeries::letter(v, d)).iota();
    derive(&words, v, &image).tr()
}

/// Coefficient of `ε` in `ε ↦ J_u(εγ)`, by interpolation through the
/// points `ε = 0, 1, …, D+1` (the spice is a polynomial of degree ≤ D in ε).
pub fn spice_linear_term(u: Letter, gamma: &LieSeries) -> CyclicSeries<Rational> {
    let d = gamma.degree();
    let nodes: Vec<Rational> = (0..=d as i64 + 1).map(Rational::integer).collect();
    let mut linear = CyclicSeries::zero(d);
    for (i, xi) in nodes.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        // ε-coefficient of the Lagrange basis polynomial at node i
        let mut poly = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= &(c * xj);
            }
            poly = next;
            denom = &denom * &(xi - xj);
        }
        linear.add_in_place(&j_u(u, &gamma.scale(xi)).scale(&(&poly[1] / &denom)));
    }
    linear
}

/// The spice identities.
pub fn spice_suite(cfg: Config) -> Vec<Outcome> {
    let [u, v, w, p] = labels(["u", "v", "w", "p"]);
    let d = cfg.degree;
    let mut s = Sampler::new(cfg.seed);
    let pairs: Vec<[LieSeries; 2]> = (0..cfg.cases).map(|_| [0, 1].map(|_| s.lie(&[u, v, w], d, 4))).collect();
    let merge = LetterMap::merge(u, v, p, d);
    let merge_images = merge.images(d);
    vec![
        check("J of a bch", cfg.cases, |i| {
            let [a, b] = &pairs[i];
            let rhs = j_u(u, a).add(&wheels_c(&j_u(u, &conj_rc(u, a, b)), u, a));
            Ok(j_u(u, &a.bch(b)) == rhs)
        }),
        check("J at two letters", cfg.cases, |i| {
            let [a, b] = &pairs[i];
            let lhs = j_u(u, a).sub(&wheels_c(&j_u(u, &conj_rc(v, b, a)), v, b));
            let rhs = j_u(v, b).sub(&wheels_c(&j_u(v, &conj_rc(u, a, b)), u, a));
            Ok(lhs == rhs)
        }),
        check("J under tail merge", cfg.cases, |i| {
            let [g, _] = &pairs[i];
            let lhs = j_u(p, &g.apply(&merge));
            let rhs = j_u(u, g).add(&wheels_c(&j_u(v, &conj_rc(u, g, g)), u, g)).substitute(&merge_images);
            Ok(lhs == rhs)
        }),
        check("linear term of J is div", cfg.cases, |i| {
            let [g, _] = &pairs[i];
            Ok(spice_linear_term(u, g) == div_u(u, g))
        }),
        check("J vanishes at 0 and on other letters", 1, |_| {
            Ok(j_u(u, &LieSeries::zero(d)).is_zero() && j_u(u, &LieSeries::letter(v, d)).is_zero())
        }),
    ]
}

/// The div cocycle condition and additivity under tail merge.
pub fn div_suite(cfg: Config) -> Vec<Outcome> {
    let [u, v, w, p] = labels(["u", "v", "w", "p"]);
    let d = cfg.degree;
    let mut s = Sampler::new(cfg.seed);
    let pairs: Vec<[LieSeries; 2]> = (0..cfg.cases).map(|_| [0, 1].map(|_| s.lie(&[u, v, w], d, 4))).collect();
    let cocycle = |a: &LieSeries, b: &LieSeries, u: Letter, v: Letter| {
        let lhs = wheels_ad(&div_u(u, a), v, b).sub(&wheels_ad(&div_u(v, b), u, a));
        let mut rhs = div_u(u, &ad_u(v, b, a)).sub(&div_u(v, &ad_u(u, a, b)));
        if u == v {
            rhs = rhs.add(&div_u(u, &a.bracket(b)));
        }
        lhs == rhs
    };
    let merge = LetterMap::merge(u, v, p, d);
    let merge_images = merge.images(d);
    vec![
        check("div cocycle at one letter", cfg.cases, |i| {
            let [a, b] = &pairs[i];
            Ok(cocycle(a, b, u, u))
        }),
        check("div cocycle at two letters", cfg.cases, |i| {
            let [a, b] = &pairs[i];
            Ok(cocycle(a, b, u, v))
        }),
        check("div is additive under tail merge", cfg.cases, |i| {
            let [g, _] = &pairs[i];
            Ok(div_u(p, &g.apply(&merge)) == div_u(u, g).add(&div_u(v, g)).substitute(&merge_images))
        }),
    ]
}

/// MMA axioms in `M` on seeded random elements.
pub fn mma_suite(cfg: Config) -> Vec<Outcome> {
    let mut s = Sampler::new(cfg.seed);
    let d = cfg.degree;
    mma_axioms(cfg.cases, |t, h| s.mma(t, h, d))
}

/// MMA axioms in β on seeded random elements, plus preservation of the
/// `t = 1` normalization.
pub fn beta_suite(seed: u64, cases: usize) -> Vec<Outcome> {
    let mut s = Sampler::new(seed);
    let mut out = mma_axioms(cases, |t, h| s.beta(t, h));
    let [u, v, x, y, z] = labels(["u", "v", "x", "y", "z"]);
    let mut s = Sampler::new(seed ^ 0x5eed);
    out.push(check("t = 1 normalization is preserved", cases, |_| {
        let e = s.beta(&[u, v], &[x, y]);
        let results = [e.tha(u, x), e.tha(v, y), e.tm(u, v, z), e.hm(x, y, z), e.t_eta(u), e.h_eta(x)];
        let mut ok = true;
        for r in results {
            ok &= r.map_err(|e| e.to_string())?.normalized_at_one();
        }
        Ok(ok)
    }));
    out
}

/// A move between two tangle fragments; a missing right side stands for
/// trivial strands carrying the left side's open labels.
pub struct Move {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: Option<&'static str>,
    /// False for moves that are expected to change the invariant.
    pub holds: bool,
}

macro_rules! fragment {
    ($f:literal) => {
        include_str!(concat!("../../../fixtures/moves/", $f))
    };
}

pub const MOVES: &[Move] = &[
    Move { name: "R1′ opposite kinks", lhs: fragment!("r1p.lhs.tangle"), rhs: None, holds: true },
    Move { name: "R1′ opposite kinks, both over first", lhs: fragment!("r1q.lhs.tangle"), rhs: None, holds: true },
    Move { name: "R2 braid-like", lhs: fragment!("r2.lhs.tangle"), rhs: None, holds: true },
    Move { name: "R2 opposite orientation", lhs: fragment!("r2c.lhs.tangle"), rhs: None, holds: true },
    Move { name: "R3 positive", lhs: fragment!("r3.lhs.tangle"), rhs: Some(fragment!("r3.rhs.tangle")), holds: true },
    Move { name: "R3 negative", lhs: fragment!("r3n.lhs.tangle"), rhs: Some(fragment!("r3n.rhs.tangle")), holds: true },
    Move { name: "virtual R2", lhs: fragment!("vr2.lhs.tangle"), rhs: None, holds: true },
    Move { name: "virtual R3", lhs: fragment!("vr3.lhs.tangle"), rhs: Some(fragment!("vr3.rhs.tangle")), holds: true },
    Move { name: "detour", lhs: fragment!("detour.lhs.tangle"), rhs: Some(fragment!("detour.rhs.tangle")), holds: true },
    Move { name: "overcrossings commute", lhs: fragment!("oc.lhs.tangle"), rhs: Some(fragment!("oc.rhs.tangle")), holds: true },
    Move { name: "undercrossings commute", lhs: fragment!("uc.lhs.tangle"), rhs: Some(fragment!("uc.rhs.tangle")), holds: false },
];

fn trivial_strands<E: Mma>(empty: E, t: &Tangle) -> Result<E, String> {
    let mut out = empty.clone();
    for s in t.open_strands() {
        out = out.merge(&empty.tail_unit(*s)).and_then(|e| e.merge(&empty.head_unit(*s))).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

fn sides(m: &Move) -> Result<(Tangle, Option<Tangle>), TangleError> {
    Ok((Tangle::parse(m.lhs)?, m.rhs.map(Tangle::parse).transpose()?))
}

/// ζ of both sides of every move at `degree`: equal where the move holds,
/// different where it does not.
pub fn zeta_moves(degree: usize) -> Vec<Outcome> {
    MOVES
        .iter()
        .map(|m| {
            check(format!("ζ {}", m.name), 1, |_| {
                let (lhs, rhs) = sides(m).map_err(|e| e.to_string())?;
                let a = zeta_of_tangle(&lhs, degree).map_err(|e| e.to_string())?;
                let b = match rhs {
                    Some(r) => zeta_of_tangle(&r, degree).map_err(|e| e.to_string())?,
                    None => trivial_strands(MmaElement::empty(degree), &lhs)?,
                };
                Ok((a == b) == m.holds)
            })
        })
        .collect()
}

/// ζ^β of both sides of every invariant move; kink cancellation (R1′) is
/// compared up to units.
pub fn beta_moves() -> Vec<Outcome> {
    MOVES
        .iter()
        .filter(|m| m.holds)
        .map(|m| {
            check(format!("β {}", m.name), 1, |_| {
                let (lhs, rhs) = sides(m).map_err(|e| e.to_string())?;
                let a = beta_of_tangle(&lhs).map_err(|e| e.to_string())?;
                let b = match rhs {
                    Some(r) => beta_of_tangle(&r).map_err(|e| e.to_string())?,
                    None => trivial_strands(BetaElement::empty(), &lhs)?,
                };
                Ok(if m.name.starts_with("R1′") { a.unit_equiv(&b) } else { a == b })
            })
        })
        .collect()
}

/// For a one-strand tangle: `log ω^β` at `t = e^c` against the abelianized
/// wheels of ζ, in degrees 2..=degree.
pub fn beta_zeta_consistency(t: &Tangle, degree: usize) -> Outcome {
    check(format!("β/ζ consistency at degree {degree}"), 1, |_| {
        let z = zeta_of_tangle(t, degree).map_err(|e| e.to_string())?;
        let b = beta_of_tangle(t).map_err(|e| e.to_string())?;
        let wheels = z.omega().abelianize();
        let mut log = log_at_exp(b.omega(), degree).map_err(|e| e.to_string())?;
        log.retain(|w, _| w.len() >= 2);
        Ok(wheels == log)
    })
}

/// ζ is unchanged by cyclically relabelling the given strands (applied to
/// tails and heads alike).
pub fn relabelling_symmetry(t: &Tangle, cycle: &[Letter], degree: usize) -> Outcome {
    let names: Vec<String> = cycle.iter().map(|l| l.name()).collect();
    check(format!("ζ symmetric under {}", names.join("→")), 1, |_| {
        let z = zeta_of_tangle(t, degree).map_err(|e| e.to_string())?;
        let map: BTreeMap<Letter, Letter> =
            cycle.iter().zip(cycle.iter().cycle().skip(1)).map(|(a, b)| (*a, *b)).collect();
        Ok(z.relabel(&map, &map).map_err(|e| e.to_string())? == z)
    })
}

/// Every suite at the given degree and seed, in a fixed order.
pub fn all(cfg: Config) -> Vec<Outcome> {
    let mut out = Vec::new();
    out.extend(freealg_suite(cfg));
    out.extend(freelie_suite(cfg));
    out.extend(spice_suite(cfg));
    out.extend(div_suite(cfg));
    out.extend(mma_suite(cfg));
    out.extend(relations(&MmaElement::empty(cfg.degree)));
    out.extend(beta_suite(cfg.seed, cfg.cases));
    out.extend(relations(&BetaElement::empty()));
    out.extend(zeta_moves(cfg.degree));
    out.extend(beta_moves());
    let knot = Tangle::parse(include_str!("../../../fixtures/8_17.tangle")).expect("bundled fixture");
    out.push(beta_zeta_consistency(&knot, cfg.degree));
    let link = Tangle::parse(include_str!("../../../fixtures/borromean.tangle")).expect("bundled fixture");
    out.push(relabelling_symmetry(&link, &labels(["r", "g", "b"]), cfg.degree));
    out
}
