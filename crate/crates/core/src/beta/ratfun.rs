//! Rational functions in the tail variables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{default_var_name, dense_div, dense_gcd, heuristic_gcd, Monomial, Poly};
use crate::error::BetaError;
use crate::letter::Letter;

/// `num / den`, kept reduced by integer content and common monomial
/// factors, with the leading denominator coefficient positive. When a
/// single variable occurs, the polynomial gcd is divided out as well.
/// Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFun {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn integer(k: i64) -> RatFun {
        RatFun::from_poly(Poly::constant(k))
    }

    pub fn var(v: Letter) -> RatFun {
        RatFun::from_poly(Poly::var(v))
    }

    /// `t_v^k` for any integer `k`.
    pub fn var_pow(v: Letter, k: i64) -> RatFun {
        let m = Monomial::var(v, k.unsigned_abs() as u32);
        if k >= 0 {
            RatFun::from_poly(Poly::monomial(m, 1))
        } else {
            RatFun { num: Poly::one(), den: Poly::monomial(m, 1) }
        }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun::new(p, Poly::one()).expect("denominator is 1")
    }

    pub fn new(num: Poly, den: Poly) -> Result<RatFun, BetaError> {
        if den.is_zero() {
            return Err(BetaError::DivisionByZero);
        }
        Ok(RatFun::normalized(num, den))
    }

    fn normalized(mut num: Poly, mut den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.content().gcd(&den.content());
        let mut g = if g.is_zero() { BigInt::one() } else { g };
        if den.leading().expect("nonzero").1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            num = num.div_exact(&g);
            den = den.div_exact(&g);
        }
        let m = num.monomial_content().gcd(&den.monomial_content());
        if !m.is_one() {
            num = num.div_monomial(&m);
            den = den.div_monomial(&m);
        }
        if den.as_monomial().is_none() {
            let mut vars = num.vars();
            vars.extend(den.vars());
            vars.sort();
            vars.dedup();
            if vars.len() == 1 {
                let v = vars[0];
                let a = num.to_dense(v).expect("univariate");
                let b = den.to_dense(v).expect("univariate");
                let g = dense_gcd(&a, &b);
                if g.len() > 1 {
                    num = Poly::from_dense(v, &dense_div(&a, &g).expect("gcd divides"));
                    den = Poly::from_dense(v, &dense_div(&b, &g).expect("gcd divides"));
                }
            } else if let Some(g) = heuristic_gcd(&num, &den) {
                if g.as_monomial().is_none() {
                    num = num.div_poly(&g).expect("gcd divides");
                    den = den.div_poly(&g).expect("gcd divides");
                }
            }
            if den.leading().expect("nonzero").1.is_negative() {
                num = num.neg();
                den = den.neg();
            }
        }
        RatFun { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn vars(&self) -> Vec<Letter> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun::normalized(self.num.add(&other.num), self.den.clone());
        }
        RatFun::normalized(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        if self.den == other.num {
            return RatFun::normalized(self.num.clone(), other.den.clone());
        }
        if self.num == other.den {
            return RatFun::normalized(other.num.clone(), self.den.clone());
        }
        RatFun::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Result<RatFun, BetaError> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, BetaError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Value at `t_v = 1` for all variables, as a rational `(p, q)`.
    pub fn eval_at_one(&self) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval_at_one(), d))
    }

    pub fn rename(&self, f: impl Fn(Letter) -> Letter) -> RatFun {
        RatFun::normalized(self.num.rename(&f), self.den.rename(&f))
    }

    pub fn set_one(&self, v: Letter) -> Result<RatFun, BetaError> {
        RatFun::new(self.num.set_one(v), self.den.set_one(v))
    }

    /// True if `self = ± m · other` for some Laurent monomial `m`.
    pub fn unit_multiple_of(&self, other: &RatFun) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let a = self.num.mul(&other.den);
        let b = other.num.mul(&self.den);
        if a.len() != b.len() {
            return false;
        }
        let (ma, ca) = a.leading().expect("nonzero");
        let (mb, cb) = b.leading().expect("nonzero");
        let sign = if ca == cb {
            BigInt::one()
        } else if *ca == -cb {
            -BigInt::one()
        } else {
            return false;
        };
        // a and b must then agree term by term after a monomial shift
        // a = ±(ma/mb) b; compare a·mb with ±b·ma
        a.mul_monomial(mb) == b.mul_monomial(ma).scale(&sign)
    }

    pub fn render(&self, var_name: &dyn Fn(Letter) -> String) -> String {
        let n = self.num.render(var_name);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.len() > 1 { format!("({n})") } else { n };
        let d = self.den.render(var_name);
        let simple = self.den.as_monomial().is_some_and(|(m, c)| m.is_one() || (c.is_one() && m.vars().count() == 1));
        let d = if !simple {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }

    /// Parses the output of `Display` (and any expression built from
    /// integers, variables `t_<label>`, `+ - * / ^` and parentheses).
    pub fn parse(s: &str) -> Result<RatFun, BetaError> {
        let mut p = Parser { src: s, pos: 0 };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(r)
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &RatFun) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFun {}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_name))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> BetaError {
        BetaError::Parse(self.src.to_string(), format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<RatFun, BetaError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, BetaError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.error("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFun, BetaError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k = self.integer()?;
        let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
        let mut r = RatFun::one();
        for _ in 0..k {
            r = r.mul(&base);
        }
        if neg {
            r = r.recip().map_err(|_| self.error("division by zero"))?;
        }
        Ok(r)
    }

    fn integer(&mut self) -> Result<BigInt, BetaError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RatFun, BetaError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFun::from_poly(Poly::constant(self.integer()?))),
            Some('t') => {
                let start = self.pos;
                self.pos += 1;
                if !self.src[self.pos..].starts_with('_') {
                    return Err(self.error("variables are written t_<label>"));
                }
                self.pos += 1;
                let lstart = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = &self.src[lstart..self.pos];
                let l = Letter::new(name).map_err(|e| {
                    BetaError::Parse(self.src.to_string(), format!("bad variable at offset {start}: {e}"))
                })?;
                Ok(RatFun::var(l))
            }
            _ => Err(self.error("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::letter;
    use proptest::prelude::*;

    fn t() -> RatFun {
        RatFun::var(letter("t"))
    }

    #[test]
    fn arithmetic_examples() {
        let one = RatFun::one();
        assert!(t().sub(&one).add(&one.sub(&t())).is_zero());
        let lhs = t().mul(&t()).sub(&one).div(&t().sub(&one)).unwrap();
        assert_eq!(lhs, t().add(&one));
        // 1/(1+α) with α = t − 1
        let alpha = t().sub(&one);
        assert_eq!(one.add(&alpha).recip().unwrap(), RatFun::var_pow(letter("t"), -1));
        assert_eq!(RatFun::zero().recip(), Err(BetaError::DivisionByZero));
    }

    #[test]
    fn univariate_results_are_fully_reduced() {
        let one = RatFun::one();
        let r = t().mul(&t()).sub(&one).div(&t().sub(&one)).unwrap();
        assert!(r.denom().is_one());
        assert_eq!(r.to_string(), "1 + t_t");
    }

    #[test]
    fn rendering_and_parsing() {
        let s = "(-1 + 4*t_t - 8*t_t^2)/t_t^3";
        let r = RatFun::parse(s).unwrap();
        assert_eq!(r.to_string(), s);
        let m = RatFun::parse("(t_u*t_v - 1)/(2*t_u + t_v)").unwrap();
        assert_eq!(RatFun::parse(&m.to_string()).unwrap(), m);
        assert!(RatFun::parse("1/(t_u - t_u)").is_err());
        assert!(RatFun::parse("2 +").is_err());
        assert!(RatFun::parse("x").is_err());
    }

    #[test]
    fn unit_multiples() {
        let u = letter("u");
        let tu = RatFun::var(u);
        assert!(tu.unit_multiple_of(&RatFun::one()));
        assert!(tu.neg().mul(&tu).unit_multiple_of(&RatFun::one()));
        assert!(!RatFun::one().add(&tu).unit_multiple_of(&RatFun::one()));
        assert!(!RatFun::integer(2).unit_multiple_of(&RatFun::one()));
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        let vars = ["u", "v"];
        let poly = proptest::collection::vec((0u32..3, 0u32..3, -4i64..=4), 1..4).prop_map(move |terms| {
            Poly::from_terms(terms.into_iter().map(|(a, b, c)| {
                (Monomial::from_pairs(vec![(letter(vars[0]), a), (letter(vars[1]), b)]), BigInt::from(c))
            }))
        });
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| RatFun::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_ratfun(), b in arb_ratfun(), c in arb_ratfun()) {
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            }
        }

        #[test]
        fn render_parse_roundtrip(a in arb_ratfun()) {
            prop_assert_eq!(RatFun::parse(&a.to_string()).unwrap(), a);
        }
    }
}
