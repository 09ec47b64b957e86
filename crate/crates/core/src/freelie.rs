//! The truncated free Lie algebra in the Lyndon basis.
//!
//! A Lyndon word `w` stands for its standard bracketing `P_w`. Everything is
//! computed by embedding into the free associative algebra (`iota`) and
//! projecting back (`LieSeries::from_assoc`), using that `P_w` expands to `w`
//! plus lexicographically larger words of the same length.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::coeff::Coeff;
use crate::error::SeriesError;
use crate::freealg::{format_word, word, AssocSeries, LetterImages, Word};
use crate::letter::Letter;
use crate::rational::Rational;

/// True if `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|r| {
        for k in 0..n {
            let a = w[(r + k) % n];
            let b = w[k];
            if a != b {
                return a > b;
            }
        }
        false
    })
}

/// All Lyndon words of length at most `d`, ordered by length and then
/// lexicographically.
pub fn lyndon_words(alphabet: &[Letter], d: usize) -> Result<Vec<Word>, SeriesError> {
    if alphabet.is_empty() {
        return Err(SeriesError::EmptyAlphabet);
    }
    if d == 0 {
        return Err(SeriesError::ZeroDegree);
    }
    let mut letters = alphabet.to_vec();
    letters.sort();
    letters.dedup();
    let k = letters.len();
    // Duval's generation algorithm over letter indices
    let mut out = Vec::new();
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        out.push(w.iter().map(|&i| letters[i]).collect::<Word>());
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Standard factorization `w = uv` of a Lyndon word of length ≥ 2, where `v`
/// is the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> (Word, Word) {
    debug_assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (word(&w[..i]), word(&w[i..]));
        }
    }
    unreachable!("a word of length ≥ 2 always has a Lyndon suffix")
}

/// The standard bracketing of a Lyndon word, e.g. `[u,[u,v]]`.
pub fn bracketing(w: &[Letter]) -> String {
    if w.len() == 1 {
        return w[0].name();
    }
    let (a, b) = standard_factorization(w);
    format!("[{},{}]", bracketing(&a), bracketing(&b))
}

type Expansion = Rc<Vec<(Word, i64)>>;

thread_local! {
    static EXPANSIONS: RefCell<FxHashMap<Word, Expansion>> = RefCell::new(FxHashMap::default());
}

/// The words of `P_w` with their integer coefficients.
fn expansion(w: &[Letter]) -> Expansion {
    if let Some(e) = EXPANSIONS.with(|c| c.borrow().get(w).cloned()) {
        return e;
    }
    let e: Vec<(Word, i64)> = if w.len() == 1 {
        vec![(word(w), 1)]
    } else {
        let (a, b) = standard_factorization(w);
        let ea = expansion(&a);
        let eb = expansion(&b);
        let mut acc: FxHashMap<Word, i64> = FxHashMap::default();
        for (x, cx) in ea.iter() {
            for (y, cy) in eb.iter() {
                let mut xy = x.clone();
                xy.extend_from_slice(y);
                *acc.entry(xy).or_insert(0) += cx * cy;
                let mut yx = y.clone();
                yx.extend_from_slice(x);
                *acc.entry(yx).or_insert(0) -= cx * cy;
            }
        }
        let mut v: Vec<(Word, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    };
    let e = Rc::new(e);
    EXPANSIONS.with(|c| c.borrow_mut().insert(word(w), e.clone()));
    e
}

/// A Lie series: rational coefficients on Lyndon words of length ≤ degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieSeries {
    degree: usize,
    terms: BTreeMap<Word, Rational>,
}

impl LieSeries {
    pub fn zero(degree: usize) -> Self {
        LieSeries { degree, terms: BTreeMap::new() }
    }

    pub fn letter(l: Letter, degree: usize) -> Self {
        LieSeries::from_terms(degree, [(word(&[l]), Rational::one())]).expect("a letter is a Lyndon word")
    }

    /// Builds a series from Lyndon-basis coefficients; rejects non-Lyndon keys.
    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(degree: usize, terms: I) -> Result<Self, SeriesError> {
        let mut map: BTreeMap<Word, Rational> = BTreeMap::new();
        for (w, c) in terms {
            if !is_lyndon(&w) {
                return Err(SeriesError::NotLie(format_word(&w)));
            }
            if w.len() > degree {
                continue;
            }
            let e = map.entry(w).or_insert_with(Rational::zero);
            *e += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LieSeries { degree, terms: map })
    }

    /// Projects a Lie element of the free associative algebra onto the
    /// Lyndon basis; fails if the input is not a Lie element.
    pub fn from_assoc(x: &AssocSeries<Rational>) -> Result<Self, SeriesError> {
        let mut work: BTreeMap<Word, Rational> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = BTreeMap::new();
        while let Some((w, c)) = work.pop_first() {
            if !is_lyndon(&w) {
                return Err(SeriesError::NotLie(if w.is_empty() { "1".into() } else { format_word(&w) }));
            }
            for (v, e) in expansion(&w).iter() {
                if *v == w {
                    continue;
                }
                let entry = work.entry(v.clone()).or_insert_with(Rational::zero);
                *entry -= &c.mul_int(*e);
                if entry.is_zero() {
                    work.remove(v);
                }
            }
            out.insert(w, c);
        }
        Ok(LieSeries { degree: x.degree(), terms: out })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Letter]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
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

    /// Terms sorted by length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(Word, Rational)> {
        let mut v: Vec<(Word, Rational)> = self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
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
        LieSeries {
            degree: self.degree,
            terms: self.terms.iter().filter(|(w, _)| w.len() == k).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn truncate(&self, degree: usize) -> Self {
        assert!(degree <= self.degree, "cannot raise the truncation degree");
        LieSeries {
            degree,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= degree).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// The embedding into the free associative algebra.
    pub fn iota(&self) -> AssocSeries<Rational> {
        self.iota_as(|q| q.clone())
    }

    pub fn iota_as<C: Coeff>(&self, f: impl Fn(&Rational) -> C) -> AssocSeries<C> {
        let mut terms = Vec::new();
        for (w, c) in &self.terms {
            let c = f(c);
            for (v, e) in expansion(w).iter() {
                terms.push((v.clone(), c.scale_int(*e)));
            }
        }
        AssocSeries::from_terms(self.degree, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_same_degree(self.degree, other.degree);
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let e = terms.entry(w.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(w);
            }
        }
        LieSeries { degree: self.degree, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LieSeries { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return LieSeries::zero(self.degree);
        }
        LieSeries { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect() }
    }

    /// `[self, other]`; panics on mismatched degrees (see [`bracket`]).
    pub fn bracket(&self, other: &Self) -> Self {
        assert_same_degree(self.degree, other.degree);
        project(&self.iota().commutator(&other.iota()))
    }

    /// `log(e^self e^other)`; panics on mismatched degrees (see [`bch`]).
    pub fn bch(&self, other: &Self) -> Self {
        assert_same_degree(self.degree, other.degree);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let a = self.iota().exp().expect("Lie series have no constant term");
        let b = other.iota().exp().expect("Lie series have no constant term");
        project(&a.mul(&b).log().expect("constant term is 1"))
    }

    pub fn apply(&self, m: &LetterMap) -> Self {
        if m.is_empty() || self.is_zero() {
            return self.clone();
        }
        project(&self.iota().substitute(&m.images(self.degree)))
    }
}

fn assert_same_degree(a: usize, b: usize) {
    if a != b {
        panic!("{}", SeriesError::DegreeMismatch(a, b));
    }
}

/// Projection of an associative series known to be Lie.
pub(crate) fn project(x: &AssocSeries<Rational>) -> LieSeries {
    LieSeries::from_assoc(x).unwrap_or_else(|e| panic!("internal error: {e}"))
}

/// A letter substitution; letters without an entry are fixed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LetterMap {
    assignments: BTreeMap<Letter, LieSeries>,
}

impl LetterMap {
    pub fn new() -> Self {
        LetterMap::default()
    }

    pub fn set(mut self, l: Letter, image: LieSeries) -> Self {
        self.assignments.insert(l, image);
        self
    }

    /// `l ↦ 0`.
    pub fn delete(l: Letter, degree: usize) -> Self {
        LetterMap::new().set(l, LieSeries::zero(degree))
    }

    /// `l ↦ m`.
    pub fn rename(l: Letter, m: Letter, degree: usize) -> Self {
        LetterMap::new().set(l, LieSeries::letter(m, degree))
    }

    /// `u, v ↦ w`.
    pub fn merge(u: Letter, v: Letter, w: Letter, degree: usize) -> Self {
        LetterMap::new().set(u, LieSeries::letter(w, degree)).set(v, LieSeries::letter(w, degree))
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn get(&self, l: Letter) -> Option<&LieSeries> {
        self.assignments.get(&l)
    }

    pub fn images(&self, degree: usize) -> LetterImages<Rational> {
        self.assignments
            .iter()
            .map(|(l, s)| {
                assert_same_degree(s.degree, degree);
                (*l, s.iota())
            })
            .collect()
    }
}

/// Checked bracket.
pub fn bracket(a: &LieSeries, b: &LieSeries) -> Result<LieSeries, SeriesError> {
    check_degree(a, b)?;
    Ok(a.bracket(b))
}

/// Checked Baker–Campbell–Hausdorff product.
pub fn bch(a: &LieSeries, b: &LieSeries) -> Result<LieSeries, SeriesError> {
    check_degree(a, b)?;
    Ok(a.bch(b))
}

fn check_degree(a: &LieSeries, b: &LieSeries) -> Result<(), SeriesError> {
    if a.degree == b.degree {
        Ok(())
    } else {
        Err(SeriesError::DegreeMismatch(a.degree, b.degree))
    }
}

pub fn apply_morphism(a: &LieSeries, m: &LetterMap) -> LieSeries {
    a.apply(m)
}

/// The image `e^{-ad g}(u)` of `u` under `C_u^{-g}`, at the FA level.
pub fn c_image<C: Coeff>(u: Letter, g: &AssocSeries<C>) -> AssocSeries<C> {
    AssocSeries::ad_exp(g, &AssocSeries::letter(u, g.degree()), -1)
}

/// The image of `u` under `RC_u^{g}`: the unique `X` with
/// `X = e^{ad g[u:=X]}(u)`, found by iterating from `X = u`. Each pass fixes
/// at least one more degree.
pub fn rc_image<C: Coeff>(u: Letter, g: &AssocSeries<C>) -> AssocSeries<C> {
    let d = g.degree();
    let base = AssocSeries::letter(u, d);
    let mut x = base.clone();
    for _ in 0..=d + 1 {
        let mut images = LetterImages::default();
        images.insert(u, x.clone());
        let next = AssocSeries::ad_exp(&g.substitute(&images), &base, 1);
        if next == x {
            return x;
        }
        x = next;
    }
    panic!("RC fixpoint did not stabilise within {} iterations", d + 2)
}

/// `a ∥ C_u^{-γ}`.
pub fn conj_c(u: Letter, gamma: &LieSeries, a: &LieSeries) -> LieSeries {
    if gamma.is_zero() {
        return a.clone();
    }
    let mut images = LetterImages::default();
    images.insert(u, c_image(u, &gamma.iota()));
    project(&a.iota().substitute(&images))
}

/// `a ∥ RC_u^{γ}`, the inverse of `C_u^{-γ}`.
pub fn conj_rc(u: Letter, gamma: &LieSeries, a: &LieSeries) -> LieSeries {
    if gamma.is_zero() {
        return a.clone();
    }
    project(&a.iota().substitute(&rc_images(u, gamma)))
}

/// Letter images realising `RC_u^{γ}` (for use on several series at once).
pub fn rc_images(u: Letter, gamma: &LieSeries) -> LetterImages<Rational> {
    let mut images = LetterImages::default();
    images.insert(u, rc_image(u, &gamma.iota()));
    images
}

/// Letter images realising `C_u^{-γ}`.
pub fn c_images(u: Letter, gamma: &LieSeries) -> LetterImages<Rational> {
    let mut images = LetterImages::default();
    images.insert(u, c_image(u, &gamma.iota()));
    images
}

/// Applies the derivation sending `u` to `image` and every other letter to 0.
pub fn derive<C: Coeff>(x: &AssocSeries<C>, u: Letter, image: &AssocSeries<C>) -> AssocSeries<C> {
    let d = x.degree();
    let mut terms = Vec::new();
    for (w, c) in x.terms() {
        for (i, l) in w.iter().enumerate() {
            if *l != u {
                continue;
            }
            for (m, e) in image.terms() {
                if w.len() - 1 + m.len() > d {
                    continue;
                }
                let mut nw: Word = word(&w[..i]);
                nw.extend_from_slice(m);
                nw.extend_from_slice(&w[i + 1..]);
                terms.push((nw, c.mul(e)));
            }
        }
    }
    AssocSeries::from_terms(d, terms)
}

/// The derivation `ad_u^γ`: `u ↦ [γ,u]`, other letters `↦ 0`.
pub fn ad_u(u: Letter, gamma: &LieSeries, a: &LieSeries) -> LieSeries {
    let image = gamma.iota().commutator(&AssocSeries::letter(u, gamma.degree));
    project(&derive(&a.iota(), u, &image))
}

impl fmt::Display for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            f.write_str(&bracketing(w))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSeries(D={}; {})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_word;
    use crate::letter::letter;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn lie(d: usize, terms: &[(&str, i64, i64)]) -> LieSeries {
        LieSeries::from_terms(d, terms.iter().map(|(s, n, den)| (w(s), q(*n, *den)))).unwrap()
    }

    fn l(s: &str, d: usize) -> LieSeries {
        LieSeries::letter(letter(s), d)
    }

    fn brute_force_lyndon(alphabet: &[Letter], d: usize) -> Vec<Word> {
        let mut all: Vec<Word> = vec![Word::new()];
        let mut out = Vec::new();
        for _ in 0..d {
            let mut next = Vec::new();
            for p in &all {
                for a in alphabet {
                    let mut x = p.clone();
                    x.push(*a);
                    if is_lyndon(&x) {
                        out.push(x.clone());
                    }
                    next.push(x);
                }
            }
            all = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn lyndon_enumeration() {
        let (u, v) = (letter("u"), letter("v"));
        assert_eq!(lyndon_words(&[u], 2).unwrap(), vec![w("u")]);
        assert_eq!(lyndon_words(&[u, v], 2).unwrap(), vec![w("u"), w("v"), w("uv")]);
        assert_eq!(lyndon_words(&[v, u], 3).unwrap(), vec![w("u"), w("v"), w("uv"), w("uuv"), w("uvv")]);
        assert_eq!(lyndon_words(&[], 3), Err(SeriesError::EmptyAlphabet));
        let abc = [letter("a"), letter("b"), letter("c")];
        assert_eq!(lyndon_words(&abc, 6).unwrap(), brute_force_lyndon(&abc, 6));
    }

    #[test]
    fn bracket_examples() {
        let d = 4;
        let (u, v) = (l("u", d), l("v", d));
        assert_eq!(v.bracket(&u), lie(d, &[("uv", -1, 1)]));
        assert!(u.bracket(&u).is_zero());
        let uvv = u.bracket(&v).bracket(&v);
        assert_eq!(uvv, lie(d, &[("uvv", 1, 1)]));
        let expected = AssocSeries::from_terms(d, [(w("uvv"), q(1, 1)), (w("vuv"), q(-2, 1)), (w("vvu"), q(1, 1))]);
        assert_eq!(uvv.iota(), expected);
        assert_eq!(bracket(&u, &l("v", 3)), Err(SeriesError::DegreeMismatch(4, 3)));
    }

    #[test]
    fn bch_examples() {
        let d = 3;
        let (u, v) = (l("u", d), l("v", d));
        let a = lie(d, &[("u", 2, 1), ("uv", 1, 3)]);
        assert_eq!(a.bch(&LieSeries::zero(d)), a);
        let b = u.bch(&v);
        assert_eq!(b.part(2), u.bracket(&v).scale(&q(1, 2)));
        let expected3 = u.bracket(&u.bracket(&v)).scale(&q(1, 12)).add(&v.bracket(&v.bracket(&u)).scale(&q(1, 12)));
        assert_eq!(b.part(3), expected3);
        // oracle: the associative route
        let fa = u.iota().exp().unwrap().mul(&v.iota().exp().unwrap()).log().unwrap();
        assert_eq!(b.iota(), fa);
    }

    #[test]
    fn non_lie_input_is_rejected() {
        let x = AssocSeries::from_terms(3, [(w("uv"), q(1, 1))]);
        assert!(matches!(LieSeries::from_assoc(&x), Err(SeriesError::NotLie(_))));
        assert!(matches!(LieSeries::from_terms(3, [(w("vu"), q(1, 1))]), Err(SeriesError::NotLie(_))));
    }

    #[test]
    fn morphism_examples() {
        let d = 3;
        let (u, v, wl) = (letter("u"), letter("v"), letter("w"));
        let s = l("u", d).add(&l("v", d));
        assert_eq!(s.apply(&LetterMap::merge(u, v, wl, d)), l("w", d).scale(&q(2, 1)));
        let uv = l("u", d).bracket(&l("v", d));
        assert!(uv.apply(&LetterMap::delete(u, d)).is_zero());
        assert!(uv.apply(&LetterMap::rename(u, v, d)).is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let d = 2;
        let u = letter("u");
        let a = lie(d, &[("u", 1, 1), ("uv", 2, 1)]);
        assert_eq!(conj_c(u, &LieSeries::zero(d), &a), a);
        assert_eq!(conj_c(u, &a, &l("v", d)), l("v", d));
        let vu = l("v", d).bracket(&l("u", d));
        assert_eq!(conj_c(u, &l("v", d), &l("u", d)), l("u", d).sub(&vu));
        assert_eq!(conj_rc(u, &LieSeries::zero(d), &a), a);
        let d = 4;
        let (ul, vl) = (l("u", d), l("v", d));
        let mut expected = ul.clone();
        let mut term = ul.clone();
        for k in 1..=d as i64 {
            term = vl.bracket(&term).scale(&q(1, k));
            expected = expected.add(&term);
        }
        assert_eq!(conj_rc(u, &vl, &ul), expected);
    }

    #[test]
    fn ad_u_examples() {
        let d = 3;
        let u = letter("u");
        let g = lie(d, &[("v", 1, 1), ("w", -2, 1)]);
        let (ul, vl) = (l("u", d), l("v", d));
        assert!(ad_u(u, &g, &vl).is_zero());
        assert_eq!(ad_u(u, &g, &ul), g.bracket(&ul));
        assert_eq!(ad_u(u, &g, &ul.bracket(&vl)), g.bracket(&ul).bracket(&vl));
    }

    #[test]
    fn bracketing_text() {
        assert_eq!(bracketing(&w("uuv")), "[u,[u,v]]");
        assert_eq!(bracketing(&w("uvv")), "[[u,v],v]");
        assert_eq!(lie(3, &[("uv", -1, 2), ("u", 1, 1)]).to_string(), "u - 1/2*[u,v]");
    }

    /// Literal stable application: substitute `u ↦ e^{ad γ}(ū)` repeatedly
    /// (every occurrence of `u`, also inside γ, gets replaced), then rename ū.
    fn rc_stable_application(u: Letter, gamma: &LieSeries, a: &LieSeries) -> LieSeries {
        let d = a.degree();
        let ubar = Letter::temporary(0);
        let image = AssocSeries::ad_exp(&gamma.iota(), &AssocSeries::letter(ubar, d), 1);
        let mut images = LetterImages::default();
        images.insert(u, image);
        let mut x = a.iota();
        for _ in 0..=d + 1 {
            let next = x.substitute(&images);
            if next == x {
                break;
            }
            x = next;
        }
        let mut back = LetterImages::default();
        back.insert(ubar, AssocSeries::letter(u, d));
        project(&x.substitute(&back))
    }

    fn arb_lie(d: usize, letters: &'static [&'static str]) -> impl Strategy<Value = LieSeries> {
        let alphabet: Vec<Letter> = letters.iter().map(|s| letter(s)).collect();
        let basis = lyndon_words(&alphabet, d).unwrap();
        let n = basis.len();
        proptest::collection::vec((0..n, -3i64..=3, 1i64..=3), 0..6).prop_map(move |t| {
            LieSeries::from_terms(d, t.into_iter().map(|(i, a, b)| (basis[i].clone(), q(a, b)))).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn jacobi(a in arb_lie(5, &["u", "v", "w"]), b in arb_lie(5, &["u", "v", "w"]), c in arb_lie(5, &["u", "v", "w"])) {
            let j = a.bracket(&b.bracket(&c)).add(&b.bracket(&c.bracket(&a))).add(&c.bracket(&a.bracket(&b)));
            prop_assert!(j.is_zero());
            prop_assert_eq!(a.bracket(&b), b.bracket(&a).neg());
        }

        #[test]
        fn iota_roundtrip(a in arb_lie(5, &["u", "v", "w"])) {
            prop_assert_eq!(LieSeries::from_assoc(&a.iota()).unwrap(), a);
        }

        #[test]
        fn bch_is_associative(a in arb_lie(5, &["u", "v"]), b in arb_lie(5, &["u", "v"]), c in arb_lie(5, &["u", "w"])) {
            prop_assert_eq!(a.bch(&b).bch(&c), a.bch(&b.bch(&c)));
        }

        #[test]
        fn rc_inverts_c(g in arb_lie(5, &["u", "v"]), a in arb_lie(5, &["u", "v", "w"])) {
            let u = letter("u");
            prop_assert_eq!(conj_c(u, &g, &conj_rc(u, &g, &a)), a.clone());
            prop_assert_eq!(conj_rc(u, &g, &conj_c(u, &g, &a)), a.clone());
            prop_assert_eq!(conj_rc(u, &g, &a), rc_stable_application(u, &g, &a));
        }

        #[test]
        fn rc_composition_law(a in arb_lie(5, &["u", "v"]), b in arb_lie(5, &["u", "v"]), x in arb_lie(5, &["u", "v"])) {
            let u = letter("u");
            let lhs = conj_rc(u, &a.bch(&b), &x);
            let rhs = conj_rc(u, &conj_rc(u, &a, &b), &conj_rc(u, &a, &x));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rcs_commute(a in arb_lie(4, &["u", "v"]), b in arb_lie(4, &["u", "v"]), x in arb_lie(4, &["u", "v"])) {
            let (u, v) = (letter("u"), letter("v"));
            let a2 = conj_rc(v, &b, &a);
            let b2 = conj_rc(u, &a, &b);
            let lhs = conj_rc(v, &b2, &conj_rc(u, &a, &x));
            let rhs = conj_rc(u, &a2, &conj_rc(v, &b, &x));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn morphisms_respect_structure(a in arb_lie(4, &["u", "v"]), b in arb_lie(4, &["u", "v"]), img in arb_lie(4, &["v", "w"])) {
            let m = LetterMap::new().set(letter("u"), img);
            prop_assert_eq!(a.bracket(&b).apply(&m), a.apply(&m).bracket(&b.apply(&m)));
            prop_assert_eq!(a.bch(&b).apply(&m), a.apply(&m).bch(&b.apply(&m)));
        }
    }
}
