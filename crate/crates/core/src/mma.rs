//! The meta-monoid-action `M(T;H) = FL(T)^H × CWʳ(T)`.
//!
//! Elements carry a set of tail letters, one Lie series per head, and a
//! reduced wheel series. All operations consume `&self` and return a fresh
//! element; composites read left to right like the pipeline notation `∥`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::cyclic::j_u;
use crate::error::MmaError;
use crate::freealg::{CyclicSeries, LetterImages};
use crate::freelie::{project, rc_images, LetterMap, LieSeries};
use crate::letter::Letter;
use crate::rational::Rational;

/// Sign of a crossing or of a generator `ρ±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct MmaElement {
    degree: usize,
    tails: BTreeSet<Letter>,
    lambda: BTreeMap<Letter, LieSeries>,
    omega: CyclicSeries<Rational>,
}

impl MmaElement {
    /// Validates that every series uses only tail letters and shares the
    /// degree; `omega` is reduced on the way in.
    pub fn new(
        degree: usize,
        tails: BTreeSet<Letter>,
        lambda: BTreeMap<Letter, LieSeries>,
        omega: CyclicSeries<Rational>,
    ) -> Result<Self, MmaError> {
        for s in lambda.values() {
            if s.degree() != degree {
                return Err(crate::error::SeriesError::DegreeMismatch(degree, s.degree()).into());
            }
            if let Some(l) = s.letters().into_iter().find(|l| !tails.contains(l)) {
                return Err(MmaError::ForeignLetter(l));
            }
        }
        if omega.degree() != degree {
            return Err(crate::error::SeriesError::DegreeMismatch(degree, omega.degree()).into());
        }
        if let Some(l) = omega.letters().into_iter().find(|l| !tails.contains(l)) {
            return Err(MmaError::ForeignLetter(l));
        }
        Ok(MmaElement { degree, tails, lambda, omega: omega.reduce() })
    }

    /// The empty element (no tails, no heads, no wheels).
    pub fn empty(degree: usize) -> Self {
        MmaElement { degree, tails: BTreeSet::new(), lambda: BTreeMap::new(), omega: CyclicSeries::zero(degree) }
    }

    /// `tϵ_u`.
    pub fn unit_t(u: Letter, degree: usize) -> Self {
        let mut e = MmaElement::empty(degree);
        e.tails.insert(u);
        e
    }

    /// `hϵ_x`.
    pub fn unit_h(x: Letter, degree: usize) -> Self {
        let mut e = MmaElement::empty(degree);
        e.lambda.insert(x, LieSeries::zero(degree));
        e
    }

    /// `ζ(ρ±_{ux}) = ({u}; x → ±u; 0)`.
    pub fn generator(sign: Sign, u: Letter, x: Letter, degree: usize) -> Self {
        let mut e = MmaElement::unit_t(u, degree);
        e.lambda.insert(x, LieSeries::letter(u, degree).scale(&Rational::integer(sign.as_i64())));
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tails(&self) -> &BTreeSet<Letter> {
        &self.tails
    }

    pub fn heads(&self) -> impl Iterator<Item = Letter> + '_ {
        self.lambda.keys().copied()
    }

    pub fn lambda(&self) -> &BTreeMap<Letter, LieSeries> {
        &self.lambda
    }

    pub fn lambda_of(&self, x: Letter) -> Option<&LieSeries> {
        self.lambda.get(&x)
    }

    pub fn omega(&self) -> &CyclicSeries<Rational> {
        &self.omega
    }

    fn need_tail(&self, u: Letter) -> Result<(), MmaError> {
        if self.tails.contains(&u) {
            Ok(())
        } else {
            Err(MmaError::MissingTail(u))
        }
    }

    fn need_head(&self, x: Letter) -> Result<(), MmaError> {
        if self.lambda.contains_key(&x) {
            Ok(())
        } else {
            Err(MmaError::MissingHead(x))
        }
    }

    fn check_degree(&self, other: &Self) -> Result<(), MmaError> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(crate::error::SeriesError::DegreeMismatch(self.degree, other.degree).into())
        }
    }

    /// Applies a letter substitution to every λ and to ω.
    fn substitute(&self, m: &LetterMap, tails: BTreeSet<Letter>) -> Self {
        let images = m.images(self.degree);
        self.substitute_images(&images, tails)
    }

    fn substitute_images(&self, images: &LetterImages<Rational>, tails: BTreeSet<Letter>) -> Self {
        let lambda = self
            .lambda
            .iter()
            .map(|(x, s)| (*x, if s.is_zero() { s.clone() } else { project(&s.iota().substitute(images)) }))
            .collect();
        let omega = self.omega.substitute(images).reduce();
        MmaElement { degree: self.degree, tails, lambda, omega }
    }

    /// The disjoint union `self ∗ other`.
    pub fn merge(&self, other: &Self) -> Result<Self, MmaError> {
        self.check_degree(other)?;
        if let Some(u) = self.tails.intersection(&other.tails).next() {
            return Err(MmaError::TailCollision(*u));
        }
        if let Some(x) = other.lambda.keys().find(|x| self.lambda.contains_key(x)) {
            return Err(MmaError::HeadCollision(*x));
        }
        let mut out = self.clone();
        out.tails.extend(other.tails.iter().copied());
        out.lambda.extend(other.lambda.iter().map(|(x, s)| (*x, s.clone())));
        out.omega.add_in_place(&other.omega);
        Ok(out)
    }

    /// `hm^{xy}_z`: heads `x`, `y` replaced by `z → bch(λx, λy)`.
    pub fn hm(&self, x: Letter, y: Letter, z: Letter) -> Result<Self, MmaError> {
        if x == y {
            return Err(MmaError::SameLabel(x));
        }
        self.need_head(x)?;
        self.need_head(y)?;
        if z != x && z != y && self.lambda.contains_key(&z) {
            return Err(MmaError::HeadCollision(z));
        }
        let mut out = self.clone();
        let a = out.lambda.remove(&x).expect("checked");
        let b = out.lambda.remove(&y).expect("checked");
        out.lambda.insert(z, a.bch(&b));
        Ok(out)
    }

    /// `tm^{uv}_w`: the substitution `u, v ↦ w` on every λ and on ω.
    pub fn tm(&self, u: Letter, v: Letter, w: Letter) -> Result<Self, MmaError> {
        if u == v {
            return Err(MmaError::SameLabel(u));
        }
        self.need_tail(u)?;
        self.need_tail(v)?;
        if w != u && w != v && self.tails.contains(&w) {
            return Err(MmaError::TailCollision(w));
        }
        let mut tails = self.tails.clone();
        tails.remove(&u);
        tails.remove(&v);
        tails.insert(w);
        Ok(self.substitute(&LetterMap::merge(u, v, w, self.degree), tails))
    }

    /// `tha^{ux}`: adds `J_u(λx)` to the wheels, then applies `RC_u^{λx}` to
    /// everything.
    pub fn tha(&self, u: Letter, x: Letter) -> Result<Self, MmaError> {
        self.need_tail(u)?;
        self.need_head(x)?;
        let gamma = &self.lambda[&x];
        if gamma.is_zero() {
            return Ok(self.clone());
        }
        let mut with_j = self.clone();
        with_j.omega.add_in_place(&j_u(u, gamma));
        with_j.omega = with_j.omega.reduce();
        Ok(with_j.substitute_images(&rc_images(u, gamma), self.tails.clone()))
    }

    /// `hσ^x_y`: renames head `x` to `y`.
    pub fn h_sigma(&self, x: Letter, y: Letter) -> Result<Self, MmaError> {
        self.need_head(x)?;
        if x == y {
            return Ok(self.clone());
        }
        if self.lambda.contains_key(&y) {
            return Err(MmaError::HeadCollision(y));
        }
        let mut out = self.clone();
        let s = out.lambda.remove(&x).expect("checked");
        out.lambda.insert(y, s);
        Ok(out)
    }

    /// `tσ^u_v`: renames tail `u` to `v`, also inside every series.
    pub fn t_sigma(&self, u: Letter, v: Letter) -> Result<Self, MmaError> {
        self.need_tail(u)?;
        if u == v {
            return Ok(self.clone());
        }
        if self.tails.contains(&v) {
            return Err(MmaError::TailCollision(v));
        }
        let mut tails = self.tails.clone();
        tails.remove(&u);
        tails.insert(v);
        Ok(self.substitute(&LetterMap::rename(u, v, self.degree), tails))
    }

    /// `hη^x`: deletes head `x`.
    pub fn h_eta(&self, x: Letter) -> Result<Self, MmaError> {
        self.need_head(x)?;
        let mut out = self.clone();
        out.lambda.remove(&x);
        Ok(out)
    }

    /// `tη^u`: deletes tail `u`, substituting `u ↦ 0` everywhere.
    pub fn t_eta(&self, u: Letter) -> Result<Self, MmaError> {
        self.need_tail(u)?;
        let mut tails = self.tails.clone();
        tails.remove(&u);
        Ok(self.substitute(&LetterMap::delete(u, self.degree), tails))
    }

    /// `dm^{ab}_c = tha^{ab} ∥ tm^{ab}_c ∥ hm^{ab}_c`.
    pub fn dm(&self, a: Letter, b: Letter, c: Letter) -> Result<Self, MmaError> {
        if a == b {
            return Err(MmaError::SameLabel(a));
        }
        self.need_tail(a)?;
        self.need_tail(b)?;
        self.need_head(a)?;
        self.need_head(b)?;
        self.tha(a, b)?.tm(a, b, c)?.hm(a, b, c)
    }

    /// Drops every term above `degree` (used for truncated display).
    pub fn truncated(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        MmaElement {
            degree,
            tails: self.tails.clone(),
            lambda: self.lambda.iter().map(|(x, s)| (*x, s.truncate(degree))).collect(),
            omega: self.omega.truncate(degree),
        }
    }

    /// Renames tails and heads simultaneously by a bijection given as pairs.
    pub fn relabel(&self, tails: &BTreeMap<Letter, Letter>, heads: &BTreeMap<Letter, Letter>) -> Result<Self, MmaError> {
        let mut m = LetterMap::new();
        let mut new_tails = BTreeSet::new();
        for t in &self.tails {
            let n = tails.get(t).copied().unwrap_or(*t);
            if !new_tails.insert(n) {
                return Err(MmaError::TailCollision(n));
            }
            if n != *t {
                m = m.set(*t, LieSeries::letter(n, self.degree));
            }
        }
        let moved = self.substitute(&m, new_tails);
        let mut lambda = BTreeMap::new();
        for (x, s) in moved.lambda {
            let n = heads.get(&x).copied().unwrap_or(x);
            if lambda.insert(n, s).is_some() {
                return Err(MmaError::HeadCollision(n));
            }
        }
        Ok(MmaElement { lambda, ..moved })
    }
}

impl fmt::Display for MmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tails: Vec<String> = self.tails.iter().map(|t| t.name()).collect();
        writeln!(f, "tails: {{{}}}", tails.join(", "))?;
        for (x, s) in &self.lambda {
            writeln!(f, "λ[{x}] = {s}")?;
        }
        write!(f, "ω = {}", self.omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;

    const D: usize = 4;

    fn l(s: &str) -> LieSeries {
        LieSeries::letter(letter(s), D)
    }

    fn el(tails: &[&str], lambda: &[(&str, LieSeries)]) -> MmaElement {
        MmaElement::new(
            D,
            tails.iter().map(|t| letter(t)).collect(),
            lambda.iter().map(|(x, s)| (letter(x), s.clone())).collect(),
            CyclicSeries::zero(D),
        )
        .unwrap()
    }

    #[test]
    fn units_and_generators() {
        let (u, x) = (letter("u"), letter("x"));
        assert_eq!(MmaElement::unit_t(u, D), el(&["u"], &[]));
        assert_eq!(MmaElement::unit_h(x, D), el(&[], &[("x", LieSeries::zero(D))]));
        assert_eq!(
            MmaElement::unit_t(u, D).merge(&MmaElement::unit_h(x, D)).unwrap(),
            el(&["u"], &[("x", LieSeries::zero(D))])
        );
        assert_eq!(MmaElement::generator(Sign::Plus, u, x, D), el(&["u"], &[("x", l("u"))]));
        assert_eq!(MmaElement::generator(Sign::Minus, u, x, D), el(&["u"], &[("x", l("u").neg())]));
    }

    #[test]
    fn merge_examples() {
        let (u, v, x, y) = (letter("u"), letter("v"), letter("x"), letter("y"));
        let a = MmaElement::generator(Sign::Plus, u, x, D);
        let b = MmaElement::generator(Sign::Minus, v, y, D);
        assert_eq!(a.merge(&b).unwrap(), el(&["u", "v"], &[("x", l("u")), ("y", l("v").neg())]));
        assert_eq!(a.merge(&b).unwrap(), b.merge(&a).unwrap());
        assert_eq!(a.merge(&a), Err(MmaError::TailCollision(u)));
    }

    #[test]
    fn hm_tm_examples() {
        let (u, v, w, x, y, z) = (letter("u"), letter("v"), letter("w"), letter("x"), letter("y"), letter("z"));
        let e = el(&["u", "v"], &[("x", l("u")), ("y", l("v"))]);
        assert_eq!(e.hm(x, y, z).unwrap(), el(&["u", "v"], &[("z", l("u").bch(&l("v")))]));
        let e = el(&["u", "v"], &[("x", l("u").add(&l("v")))]);
        assert_eq!(e.tm(u, v, w).unwrap(), el(&["w"], &[("x", l("w").scale(&Rational::integer(2)))]));
        assert_eq!(e.tm(u, v, w).unwrap(), e.tm(v, u, w).unwrap());
        assert_eq!(e.hm(x, x, z), Err(MmaError::SameLabel(x)));
        assert_eq!(e.tm(u, letter("q"), w), Err(MmaError::MissingTail(letter("q"))));
    }

    #[test]
    fn tha_examples() {
        let (u, x, z) = (letter("u"), letter("x"), letter("z"));
        let e = el(&["u", "v"], &[("x", l("u").bch(&l("v"))), ("z", l("v"))]);
        let moved = crate::freelie::conj_rc(u, &l("v"), &l("u"));
        let mut e_adv = l("u");
        let mut term = l("u");
        for k in 1..=D as i64 {
            term = l("v").bracket(&term).scale(&Rational::new(1, k));
            e_adv = e_adv.add(&term);
        }
        assert_eq!(moved, e_adv);
        assert_eq!(e.tha(u, z).unwrap(), el(&["u", "v"], &[("x", e_adv.bch(&l("v"))), ("z", l("v"))]));
        let zero = el(&["u"], &[("x", LieSeries::zero(D)), ("z", l("u"))]);
        assert_eq!(zero.tha(u, x).unwrap(), zero);
        for s in [Sign::Plus, Sign::Minus] {
            let g = MmaElement::generator(s, u, x, D);
            assert_eq!(g.tha(u, x).unwrap(), g);
        }
    }

    #[test]
    fn eta_and_sigma() {
        let (u, v, x, y) = (letter("u"), letter("v"), letter("x"), letter("y"));
        let g = MmaElement::generator(Sign::Plus, u, x, D);
        assert_eq!(g.h_eta(x).unwrap(), MmaElement::unit_t(u, D));
        assert_eq!(g.t_eta(u).unwrap(), MmaElement::unit_h(x, D));
        assert_eq!(g.t_sigma(u, v).unwrap().h_sigma(x, y).unwrap(), MmaElement::generator(Sign::Plus, v, y, D));
        let w = letter("w");
        assert_eq!(g.t_sigma(u, v).unwrap().t_sigma(v, w).unwrap(), g.t_sigma(u, w).unwrap());
    }

    #[test]
    fn foreign_letters_are_rejected() {
        let r = MmaElement::new(
            D,
            [letter("u")].into_iter().collect(),
            [(letter("x"), l("v"))].into_iter().collect(),
            CyclicSeries::zero(D),
        );
        assert_eq!(r, Err(MmaError::ForeignLetter(letter("v"))));
    }
}
