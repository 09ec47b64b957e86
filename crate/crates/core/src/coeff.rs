//! Coefficient rings for graded series.
//!
//! Series are generic over their coefficients so that the same word-level
//! machinery runs both over the rationals and over `Q[s]`, the polynomial
//! ring in a formal scalar used when integrating the spice functional.

use std::fmt::Debug;

use crate::rational::Rational;

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn neg(&self) -> Self;

    fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::integer(k))
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale_int(&self, k: i64) -> Self {
        self.mul_int(k)
    }
}

/// A polynomial in the formal scalar `s` with rational coefficients, stored
/// densely by increasing power with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SPoly(Vec<Rational>);

impl SPoly {
    pub fn from_coeffs(mut c: Vec<Rational>) -> SPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        SPoly(c)
    }

    /// The monomial `q * s^k`.
    pub fn monomial(q: Rational, k: usize) -> SPoly {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = q;
        SPoly::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// `∫_0^1 p(s) ds`.
    pub fn integrate_unit(&self) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.0.iter().enumerate() {
            acc += &c.div_int(k as i64 + 1);
        }
        acc
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * s) + c;
        }
        acc
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|x| x.is_zero()) {
            self.0.pop();
        }
    }
}

impl Coeff for SPoly {
    fn zero() -> Self {
        SPoly(Vec::new())
    }
    fn from_rational(q: Rational) -> Self {
        SPoly::from_coeffs(vec![q])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add_assign(&mut self, other: &Self) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        self.trim();
    }
    fn sub_assign(&mut self, other: &Self) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a -= b;
        }
        self.trim();
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return SPoly(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        SPoly::from_coeffs(c)
    }
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return SPoly(Vec::new());
        }
        SPoly(self.0.iter().map(|c| c * q).collect())
    }
    fn neg(&self) -> Self {
        SPoly(self.0.iter().map(|c| -c).collect())
    }
}
