//! The β quotient: exact rational-function invariants, the Alexander
//! polynomial, and the expansion `t = e^c` used to compare with wheels.

pub mod element;
pub mod poly;
pub mod ratfun;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::BetaError;
use crate::freealg::Word;
use crate::rational::Rational;

pub use element::{beta_delta_crossing, Beta, BetaElement};
pub use poly::{Monomial, Poly};
pub use ratfun::RatFun;

/// A Laurent polynomial in one variable with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn from_coeffs<I: IntoIterator<Item = (i64, BigInt)>>(it: I) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (k, c) in it {
            *coeffs.entry(k).or_insert_with(BigInt::zero) += c;
        }
        coeffs.retain(|_, c: &mut BigInt| !c.is_zero());
        LaurentPoly { coeffs }
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_coeffs(pairs.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// Reads a rational function in at most one variable as `± t^k` times a
    /// Laurent polynomial.
    pub fn from_ratfun(r: &RatFun) -> Result<LaurentPoly, BetaError> {
        let vars = r.vars();
        if vars.len() > 1 {
            return Err(BetaError::NotLaurent(format!("{} variables in {r}", vars.len())));
        }
        let (m, c) = r.denom().as_monomial().ok_or_else(|| BetaError::NotLaurent(r.to_string()))?;
        if !c.abs().is_one() {
            return Err(BetaError::NotLaurent(r.to_string()));
        }
        let shift = vars.first().map(|v| m.exponent(*v) as i64).unwrap_or(0);
        Ok(LaurentPoly::from_coeffs(r.numer().terms().map(|(n, k)| {
            let e = vars.first().map(|v| n.exponent(*v) as i64).unwrap_or(0);
            (e - shift, k * c)
        })))
    }

    /// Multiplies by `±t^k` so that the result is symmetric under
    /// `t ↔ t⁻¹` and positive at `t = 1`.
    pub fn symmetrize(&self) -> Result<LaurentPoly, BetaError> {
        let (Some(lo), Some(hi)) = (self.coeffs.keys().next(), self.coeffs.keys().next_back()) else {
            return Ok(self.clone());
        };
        if (lo + hi) % 2 != 0 {
            return Err(BetaError::NotLaurent(format!("{self} has no symmetric normalization")));
        }
        let shift = -(lo + hi) / 2;
        let value: BigInt = self.coeffs.values().sum();
        let sign = if value.is_negative() { -BigInt::one() } else { BigInt::one() };
        let out = LaurentPoly::from_coeffs(self.coeffs.iter().map(|(k, c)| (k + shift, c * &sign)));
        if out.coeffs.iter().any(|(k, c)| out.coeff(-k) != *c) {
            return Err(BetaError::NotLaurent(format!("{self} is not symmetric up to units")));
        }
        Ok(out)
    }

    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// A truncated power series in commuting variables `c_v`, keyed by sorted
/// words (multisets of variables).
type CommSeries = BTreeMap<Word, Rational>;

fn comm_mul(a: &CommSeries, b: &CommSeries, degree: usize) -> CommSeries {
    let mut out = CommSeries::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > degree {
                continue;
            }
            let mut w: Word = wa.iter().chain(wb.iter()).copied().collect();
            w.sort();
            let e = out.entry(w).or_insert_with(Rational::zero);
            *e += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn comm_add_scaled(acc: &mut CommSeries, x: &CommSeries, k: &Rational) {
    for (w, c) in x {
        let e = acc.entry(w.clone()).or_insert_with(Rational::zero);
        *e += &(c * k);
    }
    acc.retain(|_, c| !c.is_zero());
}

/// `p(t_v = e^{c_v})` up to total degree `degree`.
fn poly_at_exp(p: &Poly, degree: usize) -> CommSeries {
    let mut out = CommSeries::new();
    for (m, c) in p.terms() {
        // e^{Σ e_v c_v} = Σ_k (Σ e_v c_v)^k / k!
        let linear: CommSeries =
            m.vars().map(|(v, e)| (Word::from_slice(&[v]), Rational::integer(e as i64))).collect();
        let mut power: CommSeries = [(Word::new(), Rational::one())].into_iter().collect();
        let coeff = Rational::from_big(num_rational::BigRational::from_integer(c.clone()));
        comm_add_scaled(&mut out, &power, &coeff);
        for k in 1..=degree {
            power = comm_mul(&power, &linear, degree);
            if power.is_empty() {
                break;
            }
            let scale = &coeff / &Rational::integer((1..=k as i64).product());
            comm_add_scaled(&mut out, &power, &scale);
        }
    }
    out
}

fn comm_log(x: &CommSeries, degree: usize) -> Result<CommSeries, BetaError> {
    let c0 = x.get(&Word::new()).cloned().unwrap_or_else(Rational::zero);
    if c0.is_zero() {
        return Err(BetaError::NotLaurent("vanishes at t = 1".into()));
    }
    // log x = log c0 + log(1 + y), y = x/c0 − 1; only positive degrees kept
    let mut y: CommSeries = x.iter().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c / &c0)).collect();
    y.retain(|_, c| !c.is_zero());
    let mut out = CommSeries::new();
    let mut power: CommSeries = [(Word::new(), Rational::one())].into_iter().collect();
    for k in 1..=degree {
        power = comm_mul(&power, &y, degree);
        if power.is_empty() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        comm_add_scaled(&mut out, &power, &Rational::new(sign, k as i64));
    }
    Ok(out)
}

/// `log r(t_v = e^{c_v})` in positive degrees up to `degree`, keyed by sorted
/// words in the variables. Requires `r(1) ≠ 0`.
pub fn log_at_exp(r: &RatFun, degree: usize) -> Result<BTreeMap<Word, Rational>, BetaError> {
    let mut num = comm_log(&poly_at_exp(r.numer(), degree), degree)?;
    let den = comm_log(&poly_at_exp(r.denom(), degree), degree)?;
    comm_add_scaled(&mut num, &den, &Rational::integer(-1));
    Ok(num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;

    #[test]
    fn laurent_normalization() {
        let t = letter("t");
        // t^2 (t - 1 + t^-1) = t^3 - t^2 + t, negated
        let r = RatFun::from_poly(Poly::from_dense(t, &[0, -1, 1, -1].map(BigInt::from)));
        let l = LaurentPoly::from_ratfun(&r).unwrap().symmetrize().unwrap();
        assert_eq!(l, LaurentPoly::from_ints(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(l.to_string(), "t^-1 - 1 + t");
        assert!(LaurentPoly::from_ratfun(&RatFun::parse("1/(1 + t_t)").unwrap()).is_err());
        assert!(LaurentPoly::from_ints(&[(0, 1), (1, 2)]).symmetrize().is_err());
    }

    #[test]
    fn log_expansion_of_a_monomial() {
        // log t at t = e^c is exactly c
        let r = RatFun::var(letter("t"));
        let l = log_at_exp(&r, 4).unwrap();
        assert_eq!(l, [(Word::from_slice(&[letter("t")]), Rational::one())].into_iter().collect());
    }

    #[test]
    fn log_expansion_of_trefoil() {
        // log(t − 1 + t^-1) at t = e^x: t + t^-1 − 1 = 1 + x^2 + x^4/12 + ...
        // log = x^2 + x^4/12 − x^4/2 = x^2 − 5x^4/12
        let r = RatFun::parse("(1 - t_x + t_x^2)/t_x").unwrap();
        let l = log_at_exp(&r, 4).unwrap();
        let x = letter("x");
        assert_eq!(l.get(&Word::from_slice(&[x, x])), Some(&Rational::one()));
        assert_eq!(l.get(&Word::from_slice(&[x, x, x, x])), Some(&Rational::new(-5, 12)));
        assert_eq!(l.len(), 2);
    }
}
