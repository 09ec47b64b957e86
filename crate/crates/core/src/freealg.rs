//! Truncated graded series in the free associative algebra and in the space
//! of cyclic words.

use std::fmt;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::error::SeriesError;
use crate::letter::Letter;
use crate::rational::Rational;

/// A word in the letters; the empty word indexes the constant term.
pub type Word = SmallVec<[Letter; 6]>;

pub type LetterImages<C> = FxHashMap<Letter, AssocSeries<C>>;

pub fn word(letters: &[Letter]) -> Word {
    Word::from_slice(letters)
}

/// Words print by juxtaposition when every letter is one character wide and
/// with single spaces otherwise. `parse_word` inverts this except on a
/// one-letter word whose letter is wider than one character.
pub fn format_word(w: &[Letter]) -> String {
    if w.iter().all(|l| l.width() == 1) {
        w.iter().map(|l| l.name()).collect()
    } else {
        w.iter().map(|l| l.name()).collect::<Vec<_>>().join(" ")
    }
}

pub fn parse_word(s: &str) -> Result<Word, crate::error::LabelError> {
    let s = s.trim();
    if s.contains(char::is_whitespace) {
        s.split_whitespace().map(Letter::new).collect()
    } else {
        s.chars().map(|c| Letter::new(c.encode_utf8(&mut [0; 4]))).collect()
    }
}

/// The lexicographically least rotation of `w`.
pub fn canonical_rotation(w: &[Letter]) -> Word {
    let n = w.len();
    if n <= 1 {
        return word(w);
    }
    let mut best = 0;
    for r in 1..n {
        for k in 0..n {
            let a = w[(r + k) % n];
            let b = w[(best + k) % n];
            if a != b {
                if a < b {
                    best = r;
                }
                break;
            }
        }
    }
    (0..n).map(|k| w[(best + k) % n]).collect()
}

fn add_term<C: Coeff>(map: &mut FxHashMap<Word, C>, w: Word, c: &C) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign(c);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

fn check_degrees(a: usize, b: usize) -> Result<(), SeriesError> {
    if a == b {
        Ok(())
    } else {
        Err(SeriesError::DegreeMismatch(a, b))
    }
}

fn assert_degrees(a: usize, b: usize) {
    if a != b {
        panic!("{}", SeriesError::DegreeMismatch(a, b));
    }
}

/// An element of the free associative algebra, truncated above `degree`.
#[derive(Clone, PartialEq)]
pub struct AssocSeries<C: Coeff = Rational> {
    degree: usize,
    terms: FxHashMap<Word, C>,
}

impl<C: Coeff> AssocSeries<C> {
    pub fn zero(degree: usize) -> Self {
        AssocSeries { degree, terms: FxHashMap::default() }
    }

    pub fn constant(c: C, degree: usize) -> Self {
        AssocSeries::from_terms(degree, [(Word::new(), c)])
    }

    pub fn one(degree: usize) -> Self {
        AssocSeries::constant(C::one(), degree)
    }

    pub fn letter(l: Letter, degree: usize) -> Self {
        AssocSeries::from_terms(degree, [(word(&[l]), C::one())])
    }

    /// Collects terms, summing repeated words and discarding words longer
    /// than `degree`.
    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(degree: usize, terms: I) -> Self {
        let mut map = FxHashMap::default();
        for (w, c) in terms {
            if w.len() <= degree {
                add_term(&mut map, w, &c);
            }
        }
        AssocSeries { degree, terms: map }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[])
    }

    /// Terms sorted by length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Word, C)> {
        let mut v: Vec<(Word, C)> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        v
    }

    /// Lowest length of a word with nonzero coefficient, if any.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn part(&self, k: usize) -> Self {
        AssocSeries {
            degree: self.degree,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Re-truncates at a lower degree.
    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree, "cannot raise the truncation degree");
        AssocSeries::from_terms(degree, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> AssocSeries<D> {
        AssocSeries::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.terms.keys().flat_map(|w| w.iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_degrees(self.degree, other.degree);
        let mut out = self.clone();
        out.add_in_place(other);
        out
    }

    pub fn add_in_place(&mut self, other: &Self) {
        assert_degrees(self.degree, other.degree);
        for (w, c) in &other.terms {
            add_term(&mut self.terms, w.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AssocSeries { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return AssocSeries::zero(self.degree);
        }
        AssocSeries { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.scale(q))).collect() }
    }

    pub fn scale_by(&self, k: &C) -> Self {
        AssocSeries::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))))
    }

    /// Concatenation product, discarding everything above `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let max_degree = max_degree.min(self.degree);
        let mut rhs: Vec<(&Word, &C)> = other.terms.iter().collect();
        rhs.sort_by_key(|(w, _)| w.len());
        let mut map = FxHashMap::default();
        for (wa, ca) in &self.terms {
            if wa.len() > max_degree {
                continue;
            }
            let room = max_degree - wa.len();
            for (wb, cb) in &rhs {
                if wb.len() > room {
                    break;
                }
                let mut w = (*wa).clone();
                w.extend_from_slice(wb);
                add_term(&mut map, w, &ca.mul(cb));
            }
        }
        AssocSeries { degree: self.degree, terms: map }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_degrees(self.degree, other.degree);
        self.mul_truncated(other, self.degree)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `exp(a)`; the constant term of `a` must vanish.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(SeriesError::NonzeroConstant(format!("{c:?}")));
        }
        let mut result = AssocSeries::one(self.degree);
        let mut power = AssocSeries::one(self.degree);
        for k in 1..=self.degree {
            power = power.mul(self).scale(&Rational::new(1, k as i64));
            if power.is_zero() {
                break;
            }
            result.add_in_place(&power);
        }
        Ok(result)
    }

    /// `log(a)`; the constant term of `a` must be 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if c != C::one() {
            return Err(SeriesError::ConstantNotOne(format!("{c:?}")));
        }
        let x = self.sub(&AssocSeries::one(self.degree));
        let mut result = AssocSeries::zero(self.degree);
        let mut power = AssocSeries::one(self.degree);
        for k in 1..=self.degree {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result.add_in_place(&power.scale(&Rational::new(sign, k as i64)));
        }
        Ok(result)
    }

    /// `e^{sign·ad g}(x) = x + sign[g,x] + [g,[g,x]]/2 + ...`; `g` must have
    /// no constant term.
    pub fn ad_exp(g: &Self, x: &Self, sign: i64) -> Self {
        assert!(g.constant_term().is_zero(), "ad_exp needs g without constant term");
        let mut result = x.clone();
        let mut term = x.clone();
        for k in 1..=x.degree {
            term = g.commutator(&term).scale(&Rational::new(sign, k as i64));
            if term.is_zero() {
                break;
            }
            result.add_in_place(&term);
        }
        result
    }

    /// Applies the algebra morphism sending each letter in `images` to its
    /// image (other letters are fixed). Images must have zero constant term.
    pub fn substitute(&self, images: &LetterImages<C>) -> Self {
        for img in images.values() {
            assert_degrees(self.degree, img.degree);
            assert!(img.constant_term().is_zero(), "substituted images must have no constant term");
        }
        let mut words: Vec<(&Word, &C)> = self.terms.iter().collect();
        words.sort_unstable_by(|a, b| a.0.cmp(b.0));
        let mut out = FxHashMap::default();
        let one = AssocSeries::one(self.degree);
        substitute_rec(&words, 0, &one, images, &mut out);
        AssocSeries { degree: self.degree, terms: out }
    }

    /// Projection to cyclic words; the constant term is dropped.
    pub fn tr(&self) -> CyclicSeries<C> {
        CyclicSeries::from_terms(self.degree, self.terms.iter().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())))
    }

    /// The terms whose last letter is `u`, with that letter removed (the
    /// right partial derivative along `u`).
    pub fn right_derivative(&self, u: Letter) -> Self {
        AssocSeries {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.last() == Some(&u))
                .map(|(w, c)| (Word::from_slice(&w[..w.len() - 1]), c.clone()))
                .collect(),
        }
    }
}

fn substitute_rec<C: Coeff>(
    words: &[(&Word, &C)],
    pos: usize,
    acc: &AssocSeries<C>,
    images: &LetterImages<C>,
    out: &mut FxHashMap<Word, C>,
) {
    let degree = acc.degree;
    let mut i = 0;
    // words equal to the current prefix come first in sorted order
    while i < words.len() && words[i].0.len() == pos {
        let c = words[i].1;
        for (w, a) in &acc.terms {
            add_term(out, w.clone(), &a.mul(c));
        }
        i += 1;
    }
    while i < words.len() {
        let l = words[i].0[pos];
        let mut j = i;
        let mut min_rest = usize::MAX;
        while j < words.len() && words[j].0[pos] == l {
            min_rest = min_rest.min(words[j].0.len() - pos - 1);
            j += 1;
        }
        if min_rest <= degree {
            let cap = degree - min_rest;
            let next = match images.get(&l) {
                Some(img) => acc.mul_truncated(img, cap),
                None => {
                    let mut t = FxHashMap::default();
                    for (w, a) in &acc.terms {
                        if w.len() < cap {
                            let mut w = w.clone();
                            w.push(l);
                            t.insert(w, a.clone());
                        }
                    }
                    AssocSeries { degree, terms: t }
                }
            };
            if !next.is_zero() {
                substitute_rec(&words[i..j], pos + 1, &next, images, out);
            }
        }
        i = j;
    }
}

/// Checked product: both factors must share the truncation degree.
pub fn fa_mul<C: Coeff>(a: &AssocSeries<C>, b: &AssocSeries<C>) -> Result<AssocSeries<C>, SeriesError> {
    check_degrees(a.degree, b.degree)?;
    Ok(a.mul(b))
}

pub fn fa_exp<C: Coeff>(a: &AssocSeries<C>) -> Result<AssocSeries<C>, SeriesError> {
    a.exp()
}

pub fn fa_log<C: Coeff>(a: &AssocSeries<C>) -> Result<AssocSeries<C>, SeriesError> {
    a.log()
}

/// An element of the space of cyclic words, truncated above `degree`.
/// Keys are always canonical (least) rotations.
#[derive(Clone, PartialEq)]
pub struct CyclicSeries<C: Coeff = Rational> {
    degree: usize,
    terms: FxHashMap<Word, C>,
}

impl<C: Coeff> CyclicSeries<C> {
    pub fn zero(degree: usize) -> Self {
        CyclicSeries { degree, terms: FxHashMap::default() }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(degree: usize, terms: I) -> Self {
        let mut map = FxHashMap::default();
        for (w, c) in terms {
            if !w.is_empty() && w.len() <= degree {
                add_term(&mut map, canonical_rotation(&w), &c);
            }
        }
        CyclicSeries { degree, terms: map }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> C {
        self.terms.get(&canonical_rotation(w)).cloned().unwrap_or_else(C::zero)
    }

    pub fn sorted_terms(&self) -> Vec<(Word, C)> {
        let mut v: Vec<(Word, C)> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        v
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.terms.keys().flat_map(|w| w.iter().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn part(&self, k: usize) -> Self {
        CyclicSeries {
            degree: self.degree,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree, "cannot raise the truncation degree");
        CyclicSeries::from_terms(degree, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_in_place(other);
        out
    }

    pub fn add_in_place(&mut self, other: &Self) {
        assert_degrees(self.degree, other.degree);
        for (w, c) in &other.terms {
            add_term(&mut self.terms, w.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclicSeries { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclicSeries::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c.scale(q))))
    }

    /// Drops the degree-1 wheels (the quotient by degree 1).
    pub fn reduce(&self) -> Self {
        CyclicSeries {
            degree: self.degree,
            terms: self.terms.iter().filter(|(w, _)| w.len() > 1).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Letter substitution; well defined because algebra morphisms commute
    /// with cyclic rotation.
    pub fn substitute(&self, images: &LetterImages<C>) -> Self {
        let fa = AssocSeries { degree: self.degree, terms: self.terms.clone() };
        fa.substitute(images).tr()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> CyclicSeries<D> {
        CyclicSeries::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Makes all letters commute: the result is keyed by sorted words.
    pub fn abelianize(&self) -> std::collections::BTreeMap<Word, C> {
        let mut map: FxHashMap<Word, C> = FxHashMap::default();
        for (w, c) in &self.terms {
            let mut k = w.clone();
            k.sort();
            add_term(&mut map, k, c);
        }
        map.into_iter().collect()
    }
}

impl CyclicSeries<crate::coeff::SPoly> {
    /// Integrates every coefficient over `s ∈ [0, 1]`.
    pub fn integrate_unit(&self) -> CyclicSeries<Rational> {
        CyclicSeries::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c.integrate_unit())))
    }
}

/// Projection `FA → CW`.
pub fn tr<C: Coeff>(a: &AssocSeries<C>) -> CyclicSeries<C> {
    a.tr()
}

/// Quotient by the degree-1 wheels.
pub fn cw_reduce<C: Coeff>(w: &CyclicSeries<C>) -> CyclicSeries<C> {
    w.reduce()
}

pub(crate) fn format_terms(terms: &[(Word, Rational)], empty: &str) -> String {
    if terms.is_empty() {
        return empty.to_string();
    }
    let mut s = String::new();
    for (i, (w, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&format_word(w));
        } else {
            s.push_str(&format!("{}*{}", abs, format_word(w)));
        }
    }
    s
}

impl fmt::Display for AssocSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.sorted_terms(), "0"))
    }
}

impl fmt::Display for CyclicSeries<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (w, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                s.push_str(&format!("({})", format_word(w)));
            } else {
                s.push_str(&format!("{}*({})", abs, format_word(w)));
            }
        }
        f.write_str(&s)
    }
}

impl<C: Coeff> fmt::Debug for AssocSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        write!(f, "AssocSeries(D={}; ", self.degree)?;
        for (w, c) in v {
            write!(f, "{:?}·{} ", c, format_word(w))?;
        }
        write!(f, ")")
    }
}

impl<C: Coeff> fmt::Debug for CyclicSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        write!(f, "CyclicSeries(D={}; ", self.degree)?;
        for (w, c) in v {
            write!(f, "{:?}·({}) ", c, format_word(w))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;
    use proptest::prelude::*;

    type A = AssocSeries<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn series(d: usize, terms: &[(&str, i64, i64)]) -> A {
        A::from_terms(d, terms.iter().map(|(s, n, den)| (w(s), q(*n, *den))))
    }

    #[test]
    fn product_examples() {
        let u = A::letter(letter("u"), 3);
        let v = A::letter(letter("v"), 3);
        assert_eq!(fa_mul(&u, &v).unwrap(), series(3, &[("uv", 1, 1)]));
        assert_eq!(u.add(&v).mul(&u), series(3, &[("uu", 1, 1), ("vu", 1, 1)]));
        let u1 = A::letter(letter("u"), 1);
        let v1 = A::letter(letter("v"), 1);
        assert!(u1.mul(&v1).is_zero());
        assert_eq!(fa_mul(&u1, &v), Err(SeriesError::DegreeMismatch(1, 3)));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(A::zero(3).exp().unwrap(), A::one(3));
        let u = A::letter(letter("u"), 3);
        assert_eq!(u.exp().unwrap(), series(3, &[("", 1, 1), ("u", 1, 1), ("uu", 1, 2), ("uuu", 1, 6)]));
        assert_eq!(u.exp().unwrap().mul(&u.neg().exp().unwrap()), A::one(3));
        assert!(matches!(A::one(3).exp(), Err(SeriesError::NonzeroConstant(_))));
    }

    #[test]
    fn log_examples() {
        assert!(A::one(4).log().unwrap().is_zero());
        let u = A::letter(letter("u"), 4);
        let v = A::letter(letter("v"), 4);
        assert_eq!(u.exp().unwrap().log().unwrap(), u);
        assert!(matches!(u.log(), Err(SeriesError::ConstantNotOne(_))));
        // degree <= 2 part of log(e^u e^v), computed by hand:
        // e^u e^v = 1 + u + v + uu/2 + uv + vv/2 + ...; log(1+x) = x - x^2/2
        // x^2 at degree 2 = uu + uv + vu + vv
        let l = u.exp().unwrap().mul(&v.exp().unwrap()).log().unwrap();
        assert_eq!(l.part(1), series(4, &[("u", 1, 1), ("v", 1, 1)]));
        assert_eq!(l.part(2), series(4, &[("uv", 1, 2), ("vu", -1, 2)]));
    }

    #[test]
    fn trace_examples() {
        let a = series(3, &[("uv", 1, 1)]).tr();
        let b = series(3, &[("vu", 1, 1)]).tr();
        assert_eq!(a, b);
        assert!(series(3, &[("uv", 1, 1), ("vu", -1, 1)]).tr().is_zero());
        let c = series(3, &[("uuv", 1, 1), ("uvu", 1, 1)]).tr();
        assert_eq!(c, CyclicSeries::from_terms(3, [(w("uuv"), q(2, 1))]));
        assert!(series(3, &[("", 5, 1)]).tr().is_zero());
    }

    #[test]
    fn reduce_examples() {
        let x = CyclicSeries::from_terms(3, [(w("u"), q(1, 1)), (w("uv"), q(3, 2))]);
        let r = cw_reduce(&x);
        assert_eq!(r, CyclicSeries::from_terms(3, [(w("uv"), q(3, 2))]));
        assert_eq!(cw_reduce(&r), r);
        assert!(cw_reduce(&CyclicSeries::from_terms(3, [(w("u"), q(1, 1))])).is_zero());
    }

    #[test]
    fn canonical_rotations() {
        assert_eq!(canonical_rotation(&w("vuu")), w("uuv"));
        assert_eq!(canonical_rotation(&w("vuvu")), w("uvuv"));
        assert_eq!(canonical_rotation(&w("u")), w("u"));
    }

    #[test]
    fn multi_character_words_roundtrip() {
        let ws: Word = [letter("10"), letter("a"), letter("16")].into_iter().collect();
        assert_eq!(format_word(&ws), "10 a 16");
        assert_eq!(parse_word(&format_word(&ws)).unwrap(), ws);
        assert_eq!(format_word(&w("uuv")), "uuv");
    }

    #[test]
    fn substitution_is_a_morphism_on_examples() {
        let u = letter("u");
        let x = series(4, &[("uv", 1, 1), ("vu", -2, 1)]);
        let mut images = LetterImages::default();
        images.insert(u, series(4, &[("v", 1, 1), ("w", 1, 1)]));
        assert_eq!(
            x.substitute(&images),
            series(4, &[("vv", 1, 1), ("wv", 1, 1), ("vv", -2, 1), ("vw", -2, 1)])
        );
        images.insert(u, A::zero(4));
        assert!(x.substitute(&images).is_zero());
    }

    fn arb_series(d: usize) -> impl Strategy<Value = A> {
        let alphabet = ["u", "v", "w"];
        proptest::collection::vec((proptest::collection::vec(0usize..3, 1..=d), -3i64..=3, 1i64..=3), 0..8).prop_map(
            move |terms| {
                A::from_terms(
                    d,
                    terms.into_iter().map(|(idx, n, den)| {
                        (idx.into_iter().map(|i| letter(alphabet[i])).collect::<Word>(), q(n, den))
                    }),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_is_associative_and_distributive(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn exp_log_are_inverse(a in arb_series(5), b in arb_series(5)) {
            prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());
            let one_b = A::one(5).add(&b);
            prop_assert_eq!(one_b.log().unwrap().exp().unwrap(), one_b);
        }

        #[test]
        fn trace_is_cyclic(a in arb_series(5), b in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).tr(), b.mul(&a).tr());
        }

        #[test]
        fn substitution_commutes_with_operations(a in arb_series(4), b in arb_series(4), img in arb_series(4)) {
            let img = img.sub(&A::constant(img.constant_term(), 4));
            let mut images = LetterImages::default();
            images.insert(letter("u"), img);
            let s = |x: &A| x.substitute(&images);
            prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
            prop_assert_eq!(s(&a.exp().unwrap()), s(&a).exp().unwrap());
            let one_b = A::one(4).add(&b);
            prop_assert_eq!(s(&one_b.log().unwrap()), s(&one_b).log().unwrap());
            prop_assert_eq!(s(&a).tr(), a.tr().substitute(&images));
        }
    }
}
