//! Sparse multivariate polynomials with integer coefficients in variables
//! `t_u`, one per tail label.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::letter::Letter;

/// A monomial `∏ t_v^{e_v}` with positive exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(Letter, u32); 3]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Letter, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Letter, u32)>) -> Monomial {
        pairs.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(Letter, u32); 3]> = SmallVec::new();
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 > 0);
        Monomial(out)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Letter) -> u32 {
        self.0.iter().find(|p| p.0 == v).map(|p| p.1).unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Letter, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Letter, u32); 3]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for (v, e) in other.vars() {
            let slot = out.iter_mut().find(|p| p.0 == v)?;
            if slot.1 < e {
                return None;
            }
            slot.1 -= e;
        }
        out.retain(|p| p.1 > 0);
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then_some((v, e.min(f)))
                })
                .collect(),
        )
    }

    /// Applies a variable renaming (several variables may map to one).
    pub fn rename(&self, f: impl Fn(Letter) -> Letter) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with earlier variables weighing more.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(a), Some(b)) => {
                        if a.0 != b.0 {
                            // the side owning the earlier variable is larger
                            return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                        }
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial, stored as a map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::from_terms([(Monomial::one(), c.into())])
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn var(v: Letter) -> Poly {
        Poly::from_terms([(Monomial::var(v, 1), BigInt::one())])
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Poly {
        Poly::from_terms([(m, c.into())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Poly {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Poly { terms: map }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// The single term, if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.terms.keys().flat_map(|m| m.vars().map(|p| p.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly { terms }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *map.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        Poly { terms: map }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    /// Divides every term by `m`; `m` must divide each monomial.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_exact(&self, k: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!((c % k).is_zero());
                    (m.clone(), c / k)
                })
                .collect(),
        }
    }

    /// gcd of the coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// The largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut g = first.clone();
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Value at `t_v = 1` for every variable.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn rename(&self, f: impl Fn(Letter) -> Letter) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&f), c.clone())))
    }

    /// Substitutes `t_v = 1`.
    pub fn set_one(&self, v: Letter) -> Poly {
        Poly::from_terms(
            self.terms.iter().map(|(m, c)| (Monomial::from_pairs(m.vars().filter(|p| p.0 != v).collect()), c.clone())),
        )
    }

    /// Dense coefficients (ascending powers) when at most the variable `v`
    /// occurs.
    pub fn to_dense(&self, v: Letter) -> Option<Vec<BigInt>> {
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let mut e = 0usize;
            for (w, k) in m.vars() {
                if w != v {
                    return None;
                }
                e = k as usize;
            }
            if out.len() <= e {
                out.resize(e + 1, BigInt::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    pub fn from_dense(v: Letter, coeffs: &[BigInt]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().map(|(e, c)| (Monomial::var(v, e as u32), c.clone())))
    }
}

/// gcd of two univariate integer polynomials (dense, ascending), normalized
/// to positive leading coefficient. Primitive pseudo-remainder sequence.
pub fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    fn content(v: &[BigInt]) -> BigInt {
        v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
    fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
        let c = content(&v);
        if c.is_zero() || c.is_one() {
            return v;
        }
        v.into_iter().map(|x| x / &c).collect()
    }
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lb = b.last().expect("nonzero divisor").clone();
        let db = b.len() - 1;
        while r.len() > db {
            let lr = r.last().expect("nonempty").clone();
            let shift = r.len() - 1 - db;
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (i, c) in b.iter().enumerate() {
                r[i + shift] -= &lr * c;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    if x.is_empty() {
        return normalize_sign(primitive(y));
    }
    if y.is_empty() {
        return normalize_sign(primitive(x));
    }
    let g = content(&x).gcd(&content(&y));
    x = primitive(x);
    y = primitive(y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = primitive(prem(&x, &y));
        x = y;
        y = r;
    }
    let out: Vec<BigInt> = x.into_iter().map(|c| c * &g).collect();
    normalize_sign(out)
}

fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    if v.last().is_some_and(|c| c.is_negative()) {
        v.into_iter().map(|c| -c).collect()
    } else {
        v
    }
}

/// Exact division of dense univariate polynomials; `None` if not exact.
pub fn dense_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero divisor");
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let lr = &r[k + db];
        if lr.is_zero() {
            continue;
        }
        if !(lr % lb).is_zero() {
            return None;
        }
        let f = lr / lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        q[k] = f;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

impl Poly {
    fn max_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Substitutes the integer `xi` for variable `v`.
    fn eval_var(&self, v: Letter, xi: &BigInt) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v);
            (Monomial::from_pairs(m.vars().filter(|p| p.0 != v).collect()), c * num_traits::pow(xi.clone(), e as usize))
        }))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_poly(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = r.leading() {
            let qm = m.div(&lm)?;
            if !(c % &lc).is_zero() {
                return None;
            }
            let qc = c / &lc;
            r = r.sub(&d.mul_monomial(&qm).scale(&qc));
            q.push((qm, qc));
        }
        Some(Poly::from_terms(q))
    }
}

/// Symmetric base-`xi` digits of every coefficient, placed as powers of `v`.
fn interpolate(h: &Poly, v: Letter, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in h.terms() {
        let mut c = c.clone();
        let mut e = 0u32;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((m.mul(&Monomial::var(v, e)), d.clone()));
            }
            c = (c - d) / xi;
            e += 1;
        }
    }
    Poly::from_terms(terms)
}

fn primitive_positive(p: Poly) -> Poly {
    let c = p.content();
    let p = if c.is_zero() || c.is_one() { p } else { p.div_exact(&c) };
    if p.leading().is_some_and(|(_, c)| c.is_negative()) {
        p.neg()
    } else {
        p
    }
}

/// Heuristic gcd of two nonzero polynomials with integer coefficients, by
/// evaluation at large integers and interpolation. Any candidate is checked
/// by exact division, so a returned value is always a true common divisor
/// (and the primitive gcd when found); `None` means the heuristic gave up.
pub fn heuristic_gcd(f: &Poly, g: &Poly) -> Option<Poly> {
    let mut vars = f.vars();
    vars.extend(g.vars());
    vars.sort();
    vars.dedup();
    heuristic_gcd_in(f, g, &vars)
}

fn heuristic_gcd_in(f: &Poly, g: &Poly, vars: &[Letter]) -> Option<Poly> {
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let Some((&v, rest)) = vars.split_last() else {
        return Some(Poly::constant(f.content().gcd(&g.content())));
    };
    let cf = f.content();
    let cg = g.content();
    let content = cf.gcd(&cg);
    let f = f.div_exact(&cf);
    let g = g.div_exact(&cg);
    let b: BigInt = f.max_norm().min(g.max_norm()) * 2 + 29;
    let mut xi: BigInt = b.clone().min(b.sqrt() * 99u32).max(BigInt::from(2));
    for _ in 0..6 {
        let ff = f.eval_var(v, &xi);
        let gg = g.eval_var(v, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heuristic_gcd_in(&ff, &gg, rest) {
                let h = primitive_positive(interpolate(&h, v, &xi));
                if !h.is_zero() && f.div_poly(&h).is_some() && g.div_poly(&h).is_some() {
                    return Some(h.scale(&content));
                }
            }
        }
        xi = &xi * 73794u32 * xi.sqrt().sqrt() / 27011u32;
    }
    None
}

fn fmt_monomial(m: &Monomial, var_name: &dyn Fn(Letter) -> String) -> String {
    m.vars()
        .map(|(v, e)| if e == 1 { var_name(v) } else { format!("{}^{}", var_name(v), e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl Poly {
    /// Renders in ascending monomial order, e.g. `-1 + 4*t_u - t_u^2`.
    pub fn render(&self, var_name: &dyn Fn(Letter) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&fmt_monomial(m, var_name));
            } else {
                s.push_str(&format!("{}*{}", abs, fmt_monomial(m, var_name)));
            }
        }
        s
    }
}

pub fn default_var_name(v: Letter) -> String {
    format!("t_{v}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_var_name))
    }
}
