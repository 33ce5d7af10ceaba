use crate::error::{Error, Result};
use crate::ring::{MultiIndex, Rational, SymbolTable, ThetaScalar, XPolynomial};

use super::deformation::Deformation;

/// Element `a0(x) + a_i(x) ξ^i` of the algebra. The degree-0 and degree-1
/// parts are kept apart, so `ξ^i ξ^j = 0` holds by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElement {
    pub a0: XPolynomial,
    pub xi: Vec<XPolynomial>,
}

impl AElement {
    pub fn zero(n: usize) -> Self {
        AElement {
            a0: XPolynomial::zero(n),
            xi: vec![XPolynomial::zero(n); n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(XPolynomial::one(n))
    }

    pub fn scalar(a0: XPolynomial) -> Self {
        let n = a0.dim();
        AElement {
            a0,
            xi: vec![XPolynomial::zero(n); n],
        }
    }

    /// Pure degree-1 element `a_i ξ^i`.
    pub fn one_form(xi: Vec<XPolynomial>) -> Self {
        let n = xi.len();
        AElement {
            a0: XPolynomial::zero(n),
            xi,
        }
    }

    /// `x^i` (0-based index).
    pub fn x(n: usize, i: usize) -> Self {
        Self::scalar(XPolynomial::var(n, i))
    }

    /// `ξ^i` (0-based index).
    pub fn xi(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.xi[i] = XPolynomial::one(n);
        e
    }

    /// `c · x^α ξ^j`, or `c · x^α` when `xi` is `None`.
    pub fn monomial(n: usize, exp: MultiIndex, xi: Option<usize>, coef: ThetaScalar) -> Self {
        let p = XPolynomial::monomial(n, exp, coef);
        match xi {
            None => Self::scalar(p),
            Some(j) => {
                let mut e = Self::zero(n);
                e.xi[j] = p;
                e
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.xi.iter().all(|p| p.is_zero())
    }

    pub fn is_degree_zero(&self) -> bool {
        self.xi.iter().all(|p| p.is_zero())
    }

    pub fn is_degree_one(&self) -> bool {
        self.a0.is_zero()
    }

    pub fn degree_zero_part(&self) -> Self {
        Self::scalar(self.a0.clone())
    }

    pub fn degree_one_part(&self) -> Self {
        Self::one_form(self.xi.clone())
    }

    /// Component `0` is `a0`, component `j ≥ 1` is the coefficient of `ξ^{j}`
    /// (1-based), matching slot tags.
    pub fn component(&self, tag: usize) -> &XPolynomial {
        if tag == 0 {
            &self.a0
        } else {
            &self.xi[tag - 1]
        }
    }

    /// Highest x-degree over all components, `None` for zero.
    pub fn x_degree(&self) -> Option<u32> {
        std::iter::once(&self.a0)
            .chain(self.xi.iter())
            .filter_map(|p| p.degree())
            .max()
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn require_degree_one(&self, what: &str) -> Result<()> {
        if !self.is_degree_one() {
            return Err(Error::DegreeViolation(format!(
                "{what} has a degree-0 part"
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        AElement {
            a0: self.a0.add(&other.a0),
            xi: self
                .xi
                .iter()
                .zip(&other.xi)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AElement {
            a0: self.a0.sub(&other.a0),
            xi: self
                .xi
                .iter()
                .zip(&other.xi)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn scale(&self, c: &ThetaScalar) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|p| p.scale_rational(c))
    }

    pub fn map(&self, f: impl Fn(&XPolynomial) -> XPolynomial) -> Self {
        AElement {
            a0: f(&self.a0),
            xi: self.xi.iter().map(&f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&XPolynomial) -> Result<XPolynomial>) -> Result<Self> {
        Ok(AElement {
            a0: f(&self.a0)?,
            xi: self.xi.iter().map(&f).collect::<Result<_>>()?,
        })
    }

    /// Multiply every component by the commutative polynomial `p`.
    pub fn mul_poly(&self, p: &XPolynomial) -> Self {
        self.map(|q| q.mul(p))
    }

    pub fn specialize(&self, assignment: &[Option<Rational>], table: &SymbolTable) -> Result<Self> {
        self.try_map(|p| p.specialize(assignment, table))
    }

    pub fn theta_degree_part(&self, d: u32) -> Self {
        self.map(|p| p.theta_degree_part(d))
    }

    pub fn truncate_theta_degree(&self, d: u32) -> Self {
        self.map(|p| p.truncate_theta_degree(d))
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        let mut parts = Vec::new();
        if !self.a0.is_zero() {
            parts.push(self.a0.render(table));
        }
        for (i, p) in self.xi.iter().enumerate() {
            if !p.is_zero() {
                parts.push(format!("({})*xi{}", p.render(table), i + 1));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `f ∗_θ g` on polynomials: `Σ_k (1/k!) (½θ^{ij} ∂_i ⊗ ∂_j)^k f ⊗ g`.
pub fn star_poly(f: &XPolynomial, g: &XPolynomial, theta: &Deformation) -> XPolynomial {
    let n = f.dim();
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return XPolynomial::zero(n);
    };
    let mut out = XPolynomial::zero(n);
    for (gamma, delta, c) in theta.exp_coefficients(df.min(dg)) {
        let l = f.derivative(&gamma);
        if l.is_zero() {
            continue;
        }
        let r = g.derivative(&delta);
        out.add_assign(&l.mul(&r).scale(&c));
    }
    out
}

pub fn star(a: &AElement, b: &AElement, theta: &Deformation) -> Result<AElement> {
    a.check_dim(b)?;
    if theta.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: theta.dim(),
        });
    }
    let n = a.dim();
    let a0b0 = star_poly(&a.a0, &b.a0, theta);
    let xi = (0..n)
        .map(|j| star_poly(&a.a0, &b.xi[j], theta).add(&star_poly(&a.xi[j], &b.a0, theta)))
        .collect();
    Ok(AElement { a0: a0b0, xi })
}

/// `a ∗ b − b ∗ a`.
pub fn commutator(a: &AElement, b: &AElement, theta: &Deformation) -> Result<AElement> {
    Ok(star(a, b, theta)?.sub(&star(b, a, theta)?))
}

/// `d a = Σ_i (∂_i a0) ξ^i`; degree-1 input maps to zero.
pub fn differential_d(a: &AElement) -> AElement {
    let n = a.dim();
    AElement::one_form(
        (0..n)
            .map(|i| a.a0.partial(i).expect("index within dimension"))
            .collect(),
    )
}

/// `d* a = x^i a_i(x)`.
pub fn dstar(a: &AElement) -> AElement {
    let n = a.dim();
    let mut out = XPolynomial::zero(n);
    for (i, p) in a.xi.iter().enumerate() {
        out.add_assign(&p.shift(&MultiIndex::unit(n, i)));
    }
    AElement::scalar(out)
}

pub fn in_z(a: &AElement) -> bool {
    differential_d(a).is_zero() && dstar(a).is_zero()
}
