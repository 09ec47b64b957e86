//! Wheel-valued functionals on Lie series: `σ_u`, `div_u` and the spice `J_u`.

use crate::coeff::{Coeff, SPoly};
use crate::freealg::{AssocSeries, CyclicSeries, LetterImages};
use crate::freelie::{c_image, rc_image, standard_factorization, LieSeries};
use crate::letter::Letter;
use crate::rational::Rational;

/// A polynomial in the scalar `s` with cyclic-word coefficients, stored as a
/// cyclic series over `Q[s]`.
pub type SPolynomial = CyclicSeries<SPoly>;

fn sigma_basis(u: Letter, w: &[crate::letter::Letter], degree: usize) -> AssocSeries<Rational> {
    if w.len() == 1 {
        return if w[0] == u { AssocSeries::one(degree) } else { AssocSeries::zero(degree) };
    }
    let (a, b) = standard_factorization(w);
    let ia = LieSeries::from_terms(degree, [(a.clone(), Rational::one())]).expect("factors are Lyndon").iota();
    let ib = LieSeries::from_terms(degree, [(b.clone(), Rational::one())]).expect("factors are Lyndon").iota();
    ia.mul(&sigma_basis(u, &b, degree)).sub(&ib.mul(&sigma_basis(u, &a, degree)))
}

/// `σ_u(γ)`, defined on brackets by `σ_u([a,b]) = ι(a)σ_u(b) − ι(b)σ_u(a)`
/// and on letters by `σ_u(v) = δ_uv`.
pub fn sigma_u(u: Letter, gamma: &LieSeries) -> AssocSeries<Rational> {
    let d = gamma.degree();
    let mut out = AssocSeries::zero(d);
    for (w, c) in gamma.terms() {
        out.add_in_place(&sigma_basis(u, w, d).scale(c));
    }
    out
}

/// `div_u(γ) = tr(u σ_u(γ))`.
pub fn div_u(u: Letter, gamma: &LieSeries) -> CyclicSeries<Rational> {
    let d = gamma.degree();
    AssocSeries::letter(u, d).mul(&sigma_u(u, gamma)).tr()
}

/// `tr` of the words of `x` that end in `u`. On `ι(γ)` this equals
/// `div_u(γ)`, and it is the form used inside the spice integrand.
pub fn div_from_assoc<C: Coeff>(u: Letter, x: &AssocSeries<C>) -> CyclicSeries<C> {
    CyclicSeries::from_terms(
        x.degree(),
        x.terms().filter(|(w, _)| w.last() == Some(&u)).map(|(w, c)| (w.clone(), c.clone())),
    )
}

/// The integrand `div_u(γ∥RC_u^{sγ})∥C_u^{−sγ}` as a polynomial in `s`.
pub fn j_integrand(u: Letter, gamma: &LieSeries) -> SPolynomial {
    let d = gamma.degree();
    if gamma.is_zero() {
        return CyclicSeries::zero(d);
    }
    let g = gamma.iota_as(|c| SPoly::monomial(c.clone(), 1));
    let mut rc = LetterImages::default();
    rc.insert(u, rc_image(u, &g));
    let moved = gamma.iota_as(|c| SPoly::from_rational(c.clone())).substitute(&rc);
    let div = div_from_assoc(u, &moved);
    let mut back = LetterImages::default();
    back.insert(u, c_image(u, &g));
    div.substitute(&back)
}

/// The spice `J_u(γ) = ∫_0^1 div_u(γ∥RC_u^{sγ})∥C_u^{−sγ} ds`, unreduced.
pub fn j_u(u: Letter, gamma: &LieSeries) -> CyclicSeries<Rational> {
    j_integrand(u, gamma).integrate_unit()
}
