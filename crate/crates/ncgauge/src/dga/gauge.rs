//! Gauge-theoretic operations built on the star product: covariant
//! derivative, field strength, the first-order map in closed form, and the
//! radial splitting of one-forms.

use crate::error::Result;
use crate::ring::{MultiIndex, Rational, XPolynomial};

use super::deformation::Deformation;
use super::element::{differential_d, star, star_poly, AElement};

/// `D_a(c) = dc + a ∗ c − c ∗ a` for degree-1 `a`.
pub fn covariant_derivative(a: &AElement, c: &AElement, theta: &Deformation) -> Result<AElement> {
    a.require_degree_one("connection")?;
    a.check_dim(c)?;
    let comm = star(a, c, theta)?.sub(&star(c, a, theta)?);
    Ok(differential_d(c).add(&comm))
}

/// Antisymmetric array of components `F_{ij}`, stored as the upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldStrength {
    n: usize,
    upper: Vec<XPolynomial>,
}

impl FieldStrength {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `F_{ij}` (0-based), with `F_{ji} = −F_{ij}`.
    pub fn get(&self, i: usize, j: usize) -> XPolynomial {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => XPolynomial::zero(self.n),
            Less => self.upper[self.index(i, j)].clone(),
            Greater => self.upper[self.index(j, i)].neg(),
        }
    }

    /// Upper-triangle entries `(i, j, F_{ij})` with `i < j`.
    pub fn components(&self) -> impl Iterator<Item = (usize, usize, &XPolynomial)> {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .zip(self.upper.iter())
            .map(|((i, j), p)| (i, j, p))
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|p| p.is_zero())
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }
}

/// `F_{ij} = ∂_i A_j − ∂_j A_i + [A_i, A_j]_∗`.
pub fn field_strength(a: &AElement, theta: &Deformation) -> Result<FieldStrength> {
    a.require_degree_one("gauge field")?;
    let n = a.dim();
    let mut upper = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let curl = a.xi[j].partial(i)?.sub(&a.xi[i].partial(j)?);
            let comm =
                star_poly(&a.xi[i], &a.xi[j], theta).sub(&star_poly(&a.xi[j], &a.xi[i], theta));
            upper.push(curl.add(&comm));
        }
    }
    Ok(FieldStrength { n, upper })
}

/// First-order Seiberg–Witten map in closed form:
/// `Â_i = A_i − ½θ^{kj} A_k (∂_j A_i + F_{ji})`, `λ̂ = λ + ½θ^{ij} ∂_iλ A_j`,
/// with `F` the commutative field strength.
pub fn first_order_reference(
    a: &AElement,
    lambda: &XPolynomial,
    theta: &Deformation,
) -> Result<(AElement, XPolynomial)> {
    a.require_degree_one("gauge field")?;
    let n = a.dim();
    let half = Rational::new(1.into(), 2.into());
    let f0 = field_strength(a, &Deformation::zero(n))?;
    let mut hat = a.xi.clone();
    for (i, out) in hat.iter_mut().enumerate() {
        for k in 0..n {
            for j in 0..n {
                let t = theta.get(k, j);
                if t.is_zero() {
                    continue;
                }
                let inner = a.xi[i].partial(j)?.add(&f0.get(j, i));
                let corr = a.xi[k].mul(&inner).scale(&t.scale(&half));
                out.sub_assign(&corr);
            }
        }
    }
    let mut lhat = lambda.clone();
    for i in 0..n {
        for j in 0..n {
            let t = theta.get(i, j);
            if t.is_zero() {
                continue;
            }
            lhat.add_assign(&lambda.partial(i)?.mul(&a.xi[j]).scale(&t.scale(&half)));
        }
    }
    Ok((AElement::one_form(hat), lhat))
}

/// Splitting `a = d(b) + z` of a one-form with `d* z = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySplit {
    pub primitive: XPolynomial,
    pub exact: AElement,
    pub z: AElement,
}

/// Radial homotopy `b(x) = ∫₀¹ x^i a_i(tx) dt`, i.e. `x^γ ↦ x^γ / |γ|` on
/// the monomials of `x^i a_i`.
pub fn cohomology_representative(a: &AElement) -> Result<CohomologySplit> {
    a.require_degree_one("argument")?;
    let n = a.dim();
    let mut b = XPolynomial::zero(n);
    for (i, ai) in a.xi.iter().enumerate() {
        let ei = MultiIndex::unit(n, i);
        for (m, c) in ai.terms() {
            let k = Rational::from_integer((m.degree() + 1).into()).recip();
            b.add_term(m.add(&ei), &c.scale(&k));
        }
    }
    let exact = differential_d(&AElement::scalar(b.clone()));
    let z = a.sub(&exact);
    Ok(CohomologySplit {
        primitive: b,
        exact,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::element::{commutator, dstar};
    use crate::ring::rational::{int, rat};
    use crate::ring::{SymbolTable, ThetaScalar};

    fn constant(n: usize, c: Rational) -> XPolynomial {
        XPolynomial::constant(n, ThetaScalar::constant(c))
    }

    fn sym2() -> Deformation {
        Deformation::symbolic(2, "t", &mut SymbolTable::new())
    }

    fn xp(i: usize) -> XPolynomial {
        XPolynomial::var(2, i)
    }

    fn t() -> ThetaScalar {
        ThetaScalar::symbol(0)
    }

    #[test]
    fn covariant_derivative_examples() {
        let th = sym2();
        let c = AElement::x(2, 1);
        assert_eq!(
            covariant_derivative(&AElement::zero(2), &c, &th).unwrap(),
            differential_d(&c)
        );
        let a = AElement::xi(2, 1).mul_poly(&xp(0));
        assert!(covariant_derivative(&a, &AElement::one(2), &th)
            .unwrap()
            .is_zero());
        // dc = ξ², plus ξ²[x¹, x²]_∗ = t ξ²
        let got = covariant_derivative(&a, &c, &th).unwrap();
        let want = AElement::xi(2, 1).scale(&(&ThetaScalar::one() + &t()));
        assert_eq!(got, want);
        assert!(covariant_derivative(&c, &c, &th).is_err());
    }

    #[test]
    fn field_strength_examples() {
        let th = sym2();
        assert!(field_strength(&AElement::zero(2), &th).unwrap().is_zero());
        let consts = AElement::one_form(vec![constant(2, int(3)), constant(2, rat(1, 2))]);
        assert!(field_strength(&consts, &th).unwrap().is_zero());
        let a = AElement::one_form(vec![xp(1), XPolynomial::zero(2)]);
        let f = field_strength(&a, &th).unwrap();
        assert_eq!(f.get(0, 1), constant(2, int(-1)));
        assert_eq!(f.get(1, 0), constant(2, int(1)));
    }

    #[test]
    fn first_order_examples() {
        let th = sym2();
        let lam = xp(0).mul(&xp(1));
        let (ah, lh) = first_order_reference(&AElement::zero(2), &lam, &th).unwrap();
        assert!(ah.is_zero());
        assert_eq!(lh, lam);
        let a = AElement::one_form(vec![xp(1), XPolynomial::zero(2)]);
        let (ah, _) = first_order_reference(&a, &constant(2, int(5)), &th).unwrap();
        assert_eq!(ah.xi[0], xp(1).sub(&xp(1).scale(&t())));
        assert!(ah.xi[1].is_zero());
    }

    #[test]
    fn radial_splitting() {
        let s = cohomology_representative(&AElement::xi(2, 0)).unwrap();
        assert_eq!(s.primitive, xp(0));
        assert!(s.z.is_zero());
        let rot = AElement::one_form(vec![xp(1), xp(0).neg()]);
        let s = cohomology_representative(&rot).unwrap();
        assert!(s.primitive.is_zero());
        assert_eq!(s.z, rot);
        let a = AElement::xi(2, 0).mul_poly(&xp(0));
        let s = cohomology_representative(&a).unwrap();
        assert_eq!(s.primitive, xp(0).mul(&xp(0)).scale_rational(&rat(1, 2)));
        assert!(s.z.is_zero());
    }

    #[test]
    fn radial_splitting_general() {
        let a = AElement::one_form(vec![
            xp(0).mul(&xp(1)).mul(&xp(1)),
            xp(0).add(&constant(2, int(2))),
        ]);
        let s = cohomology_representative(&a).unwrap();
        assert_eq!(s.exact.add(&s.z), a);
        assert!(dstar(&s.z).is_zero());
        let again = cohomology_representative(&s.z).unwrap();
        assert_eq!(again.z, s.z);
    }

    #[test]
    fn gauge_closure() {
        let th = sym2();
        let ah = AElement::one_form(vec![xp(1).mul(&xp(1)), xp(0)]);
        let l1 = AElement::scalar(xp(0).mul(&xp(1)));
        let l2 = AElement::scalar(xp(1).add(&xp(0).mul(&xp(0))));
        let d1 = covariant_derivative(&ah, &l1, &th).unwrap();
        let d2 = covariant_derivative(&ah, &l2, &th).unwrap();
        let lhs = commutator(&d1, &l2, &th)
            .unwrap()
            .sub(&commutator(&d2, &l1, &th).unwrap());
        let l12 = commutator(&l1, &l2, &th).unwrap();
        let rhs = covariant_derivative(&ah, &l12, &th).unwrap();
        assert_eq!(lhs, rhs);
    }
}
