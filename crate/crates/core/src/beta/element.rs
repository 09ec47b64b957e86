//! The β-calculus MMA: an `ω` and a tails × heads matrix of rational
//! functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{BetaError, MmaError};
use crate::letter::Letter;
use crate::mma::Sign;
use crate::tangle::{Crossing, CrossingKind, SewTarget};

use super::ratfun::RatFun;

#[derive(Clone, Debug, PartialEq)]
pub struct BetaElement {
    tails: BTreeSet<Letter>,
    heads: BTreeSet<Letter>,
    omega: RatFun,
    /// Nonzero entries only, keyed by (tail, head).
    a: BTreeMap<(Letter, Letter), RatFun>,
}

impl BetaElement {
    pub fn new(
        tails: BTreeSet<Letter>,
        heads: BTreeSet<Letter>,
        omega: RatFun,
        entries: BTreeMap<(Letter, Letter), RatFun>,
    ) -> Result<Self, BetaError> {
        for (u, x) in entries.keys() {
            if !tails.contains(u) {
                return Err(MmaError::MissingTail(*u).into());
            }
            if !heads.contains(x) {
                return Err(MmaError::MissingHead(*x).into());
            }
        }
        let a = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(BetaElement { tails, heads, omega, a })
    }

    pub fn empty() -> Self {
        BetaElement { tails: BTreeSet::new(), heads: BTreeSet::new(), omega: RatFun::one(), a: BTreeMap::new() }
    }

    pub fn unit_t(u: Letter) -> Self {
        let mut e = BetaElement::empty();
        e.tails.insert(u);
        e
    }

    pub fn unit_h(x: Letter) -> Self {
        let mut e = BetaElement::empty();
        e.heads.insert(x);
        e
    }

    /// `ζ^β(ρ±_{ux})`: `ω = 1`, `A_ux = t_u^{±1} − 1`.
    pub fn generator(sign: Sign, u: Letter, x: Letter) -> Self {
        let mut e = BetaElement::unit_t(u);
        e.heads.insert(x);
        e.a.insert((u, x), RatFun::var_pow(u, sign.as_i64()).sub(&RatFun::one()));
        e
    }

    pub fn tails(&self) -> &BTreeSet<Letter> {
        &self.tails
    }

    pub fn heads(&self) -> &BTreeSet<Letter> {
        &self.heads
    }

    pub fn omega(&self) -> &RatFun {
        &self.omega
    }

    pub fn entry(&self, u: Letter, x: Letter) -> RatFun {
        self.a.get(&(u, x)).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn entries(&self) -> &BTreeMap<(Letter, Letter), RatFun> {
        &self.a
    }

    fn need_tail(&self, u: Letter) -> Result<(), BetaError> {
        if self.tails.contains(&u) {
            Ok(())
        } else {
            Err(MmaError::MissingTail(u).into())
        }
    }

    fn need_head(&self, x: Letter) -> Result<(), BetaError> {
        if self.heads.contains(&x) {
            Ok(())
        } else {
            Err(MmaError::MissingHead(x).into())
        }
    }

    fn set(&mut self, u: Letter, x: Letter, v: RatFun) {
        if v.is_zero() {
            self.a.remove(&(u, x));
        } else {
            self.a.insert((u, x), v);
        }
    }

    /// Block-diagonal union, `ω` multiplied.
    pub fn merge(&self, other: &Self) -> Result<Self, BetaError> {
        if let Some(u) = self.tails.intersection(&other.tails).next() {
            return Err(MmaError::TailCollision(*u).into());
        }
        if let Some(x) = self.heads.intersection(&other.heads).next() {
            return Err(MmaError::HeadCollision(*x).into());
        }
        let mut out = self.clone();
        out.tails.extend(other.tails.iter().copied());
        out.heads.extend(other.heads.iter().copied());
        out.omega = self.omega.mul(&other.omega);
        out.a.extend(other.a.iter().map(|(k, v)| (*k, v.clone())));
        Ok(out)
    }

    /// `tm^{uv}_w`: rows `u`, `v` added into row `w`, with `t_u, t_v → t_w`.
    pub fn tm(&self, u: Letter, v: Letter, w: Letter) -> Result<Self, BetaError> {
        if u == v {
            return Err(MmaError::SameLabel(u).into());
        }
        self.need_tail(u)?;
        self.need_tail(v)?;
        if w != u && w != v && self.tails.contains(&w) {
            return Err(MmaError::TailCollision(w).into());
        }
        let rename = |l: Letter| if l == u || l == v { w } else { l };
        let mut out = BetaElement {
            tails: self.tails.iter().map(|&l| rename(l)).collect(),
            heads: self.heads.clone(),
            omega: self.omega.rename(rename),
            a: BTreeMap::new(),
        };
        for ((t, x), val) in &self.a {
            let t2 = rename(*t);
            let val = val.rename(rename);
            let sum = out.entry(t2, *x).add(&val);
            out.set(t2, *x, sum);
        }
        Ok(out)
    }

    /// `hm^{xy}_z`: columns `x`, `y` replaced by `α + β + ⟨α⟩β`.
    pub fn hm(&self, x: Letter, y: Letter, z: Letter) -> Result<Self, BetaError> {
        if x == y {
            return Err(MmaError::SameLabel(x).into());
        }
        self.need_head(x)?;
        self.need_head(y)?;
        if z != x && z != y && self.heads.contains(&z) {
            return Err(MmaError::HeadCollision(z).into());
        }
        let sum_alpha = self.column_sum(x);
        let factor = RatFun::one().add(&sum_alpha);
        let mut out = self.clone();
        out.heads.remove(&x);
        out.heads.remove(&y);
        out.heads.insert(z);
        out.a.retain(|(_, h), _| *h != x && *h != y);
        for u in &self.tails {
            let v = self.entry(*u, x).add(&self.entry(*u, y).mul(&factor));
            out.set(*u, z, v);
        }
        Ok(out)
    }

    fn column_sum(&self, x: Letter) -> RatFun {
        self.a.iter().filter(|((_, h), _)| *h == x).fold(RatFun::zero(), |acc, (_, v)| acc.add(v))
    }

    /// `tha^{ux}`.
    pub fn tha(&self, u: Letter, x: Letter) -> Result<Self, BetaError> {
        self.need_tail(u)?;
        self.need_head(x)?;
        let alpha = self.entry(u, x);
        let one_alpha = RatFun::one().add(&alpha);
        if one_alpha.is_zero() {
            return Err(BetaError::SingularAction(u, x));
        }
        let inv = one_alpha.recip()?;
        let gamma: Vec<(Letter, RatFun)> =
            self.a.iter().filter(|((t, h), _)| *h == x && *t != u).map(|((t, _), v)| (*t, v.clone())).collect();
        let beta: Vec<(Letter, RatFun)> =
            self.a.iter().filter(|((t, h), _)| *t == u && *h != x).map(|((_, h), v)| (*h, v.clone())).collect();
        let sum_gamma = gamma.iter().fold(RatFun::zero(), |acc, (_, v)| acc.add(v));
        let row_factor = RatFun::one().add(&sum_gamma.mul(&inv));
        let mut out = self.clone();
        out.omega = self.omega.mul(&one_alpha);
        out.set(u, x, alpha.mul(&row_factor));
        for (h, b) in &beta {
            out.set(u, *h, b.mul(&row_factor));
        }
        for (t, g) in &gamma {
            let g_inv = g.mul(&inv);
            out.set(*t, x, g_inv.clone());
            for (h, b) in &beta {
                let d = self.entry(*t, *h).sub(&g_inv.mul(b));
                out.set(*t, *h, d);
            }
        }
        Ok(out)
    }

    /// `tσ^u_v`: renames the row and the variable.
    pub fn t_sigma(&self, u: Letter, v: Letter) -> Result<Self, BetaError> {
        self.need_tail(u)?;
        if u == v {
            return Ok(self.clone());
        }
        if self.tails.contains(&v) {
            return Err(MmaError::TailCollision(v).into());
        }
        let rename = |l: Letter| if l == u { v } else { l };
        Ok(BetaElement {
            tails: self.tails.iter().map(|&l| rename(l)).collect(),
            heads: self.heads.clone(),
            omega: self.omega.rename(rename),
            a: self.a.iter().map(|((t, h), val)| ((rename(*t), *h), val.rename(rename))).collect(),
        })
    }

    /// `hσ^x_y`: renames a column.
    pub fn h_sigma(&self, x: Letter, y: Letter) -> Result<Self, BetaError> {
        self.need_head(x)?;
        if x == y {
            return Ok(self.clone());
        }
        if self.heads.contains(&y) {
            return Err(MmaError::HeadCollision(y).into());
        }
        let rename = |l: Letter| if l == x { y } else { l };
        Ok(BetaElement {
            tails: self.tails.clone(),
            heads: self.heads.iter().map(|&l| rename(l)).collect(),
            omega: self.omega.clone(),
            a: self.a.iter().map(|((t, h), val)| ((*t, rename(*h)), val.clone())).collect(),
        })
    }

    /// `tη^u`: deletes row `u` and sets `t_u = 1`.
    pub fn t_eta(&self, u: Letter) -> Result<Self, BetaError> {
        self.need_tail(u)?;
        let mut out = BetaElement {
            tails: self.tails.iter().copied().filter(|&l| l != u).collect(),
            heads: self.heads.clone(),
            omega: self.omega.set_one(u)?,
            a: BTreeMap::new(),
        };
        for ((t, h), val) in &self.a {
            if *t != u {
                out.set(*t, *h, val.set_one(u)?);
            }
        }
        Ok(out)
    }

    /// `hη^x`: deletes column `x`.
    pub fn h_eta(&self, x: Letter) -> Result<Self, BetaError> {
        self.need_head(x)?;
        let mut out = self.clone();
        out.heads.remove(&x);
        out.a.retain(|(_, h), _| *h != x);
        Ok(out)
    }

    /// `dm^{ab}_c = tha^{ab} ∥ tm^{ab}_c ∥ hm^{ab}_c`.
    pub fn dm(&self, a: Letter, b: Letter, c: Letter) -> Result<Self, BetaError> {
        self.tha(a, b)?.tm(a, b, c)?.hm(a, b, c)
    }

    /// Equal matrices and `ω`s agreeing up to a `±` monomial factor.
    pub fn unit_equiv(&self, other: &Self) -> bool {
        self.tails == other.tails && self.heads == other.heads && self.a == other.a && self.omega.unit_multiple_of(&other.omega)
    }

    /// True if `ω(1) = 1` and every entry vanishes at `t = 1`.
    pub fn normalized_at_one(&self) -> bool {
        let is = |r: &RatFun, target: i64| match r.eval_at_one() {
            Some((p, q)) => p == q * num_bigint::BigInt::from(target),
            None => false,
        };
        is(&self.omega, 1) && self.a.values().all(|v| is(v, 0))
    }
}

impl fmt::Display for BetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ω = {}", self.omega)?;
        for u in &self.tails {
            for x in &self.heads {
                let v = self.entry(*u, *x);
                if !v.is_zero() {
                    writeln!(f, "A[{u},{x}] = {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// `ζ^β(δ(c))`.
pub fn beta_delta_crossing(c: &Crossing) -> BetaElement {
    let (o, u) = (c.over, c.under);
    let parts = match c.kind {
        CrossingKind::Real(sign) => [BetaElement::generator(sign, o, u), BetaElement::unit_t(u), BetaElement::unit_h(o)],
        CrossingKind::Virtual => [
            BetaElement::unit_t(o).merge(&BetaElement::unit_h(o)).expect("disjoint"),
            BetaElement::unit_t(u),
            BetaElement::unit_h(u),
        ],
    };
    parts.iter().fold(BetaElement::empty(), |acc, p| acc.merge(p).expect("labels are distinct"))
}

/// The β-calculus as a sewing target.
pub struct Beta;

impl SewTarget for Beta {
    type Element = BetaElement;
    type Error = BetaError;

    fn empty(&self) -> BetaElement {
        BetaElement::empty()
    }

    fn crossing(&self, c: &Crossing) -> BetaElement {
        beta_delta_crossing(c)
    }

    fn merge(&self, a: &BetaElement, b: &BetaElement) -> Result<BetaElement, BetaError> {
        a.merge(b)
    }

    fn dm(&self, e: &BetaElement, a: Letter, b: Letter, c: Letter) -> Result<BetaElement, BetaError> {
        e.dm(a, b, c)
    }
}
