//! Sparse multivariate polynomials with `ThetaScalar` coefficients, in the
//! position variables `x^1..x^n` or the dual variables `p_1..p_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use super::multi_index::MultiIndex;
use super::rational::{falling_factorial, Rational};
use super::theta::{SymbolTable, ThetaScalar};
use crate::error::{Error, Result};

pub trait VarFamily:
    Clone + Copy + fmt::Debug + PartialEq + Eq + std::hash::Hash + Default + Send + Sync + 'static
{
    /// Display name of variable `i` (0-based).
    fn var_name(i: usize) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct XVars;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PVars;

impl VarFamily for XVars {
    fn var_name(i: usize) -> String {
        format!("x{}", i + 1)
    }
}

impl VarFamily for PVars {
    fn var_name(i: usize) -> String {
        format!("p{}", i + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: VarFamily> {
    n: usize,
    terms: BTreeMap<MultiIndex, ThetaScalar>,
    _family: PhantomData<F>,
}

pub type XPolynomial = Poly<XVars>;
pub type PPolynomial = Poly<PVars>;

impl<F: VarFamily> Poly<F> {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
            _family: PhantomData,
        }
    }

    pub fn constant(n: usize, c: ThetaScalar) -> Self {
        Self::monomial(n, MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ThetaScalar::one())
    }

    pub fn monomial(n: usize, exp: MultiIndex, coef: ThetaScalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(exp, &coef);
        p
    }

    /// The single variable with index `i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, MultiIndex::unit(n, i), ThetaScalar::one())
    }

    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, ThetaScalar)>,
    ) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ThetaScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> ThetaScalar {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, exp: MultiIndex, coef: &ThetaScalar) {
        debug_assert_eq!(exp.len(), self.n);
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.sub_assign(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul(other))
    }

    /// In-place sum; dimensions are the caller's responsibility.
    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&ThetaScalar::constant(-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &ThetaScalar) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &v.scale(c));
        }
        out
    }

    /// `∂/∂v_i` with `i` 0-based.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(self.derivative(&MultiIndex::unit(self.n, i)))
    }

    /// `∂^α` applied to the polynomial.
    pub fn derivative(&self, alpha: &MultiIndex) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if let Some(rest) = m.checked_sub(alpha) {
                let mut k = Rational::one();
                for i in 0..self.n {
                    k *= falling_factorial(m.get(i), alpha.get(i));
                }
                out.add_term(rest, &c.scale(&k));
            }
        }
        out
    }

    /// Multiply by the monomial `v^α`.
    pub fn shift(&self, alpha: &MultiIndex) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| (m.add(alpha), c.clone())),
        )
    }

    pub fn map_coefficients(&self, f: impl Fn(&ThetaScalar) -> ThetaScalar) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn specialize(&self, assignment: &[Option<Rational>], table: &SymbolTable) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.specialize(assignment, table)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, assignment: &[Option<Rational>]) -> Self {
        self.map_coefficients(|c| c.substitute(assignment))
    }

    /// Part of total symbol degree exactly `d`, coefficientwise.
    pub fn theta_degree_part(&self, d: u32) -> Self {
        self.map_coefficients(|c| c.degree_part(d))
    }

    pub fn truncate_theta_degree(&self, d: u32) -> Self {
        self.map_coefficients(|c| c.truncate_degree(d))
    }

    pub fn max_theta_degree(&self) -> u32 {
        self.terms
            .values()
            .map(|c| c.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// Drop monomials of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Self::from_terms(
            self.n,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = render_monomial::<F>(m);
            let (neg, coef) = match c.as_constant() {
                Some(v) => (v.is_negative(), {
                    let a = v.abs();
                    if a.is_one() && !mono.is_empty() {
                        String::new()
                    } else {
                        a.to_string()
                    }
                }),
                None => (false, format!("({})", c.render(table))),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (coef.is_empty(), mono.is_empty()) {
                (true, _) => out.push_str(&mono),
                (false, true) => out.push_str(&coef),
                (false, false) => out.push_str(&format!("{coef}*{mono}")),
            }
        }
        out
    }
}

impl PPolynomial {
    /// `∫₀¹ f(t p) dt`: each monomial `p^α` is divided by `|α| + 1`.
    pub fn dilation_integral(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(m, c)| {
                let k = Rational::from_integer((m.degree() + 1).into());
                (m.clone(), c.scale(&k.recip()))
            }),
        )
    }

    /// Value at `p = 0`.
    pub fn constant_term(&self) -> ThetaScalar {
        self.coefficient(&MultiIndex::zero(self.n))
    }
}

pub(crate) fn render_monomial<F: VarFamily>(m: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for i in 0..m.len() {
        match m.get(i) {
            0 => {}
            1 => parts.push(F::var_name(i)),
            e => parts.push(format!("{}^{}", F::var_name(i), e)),
        }
    }
    parts.join("*")
}

impl<F: VarFamily> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&SymbolTable::new()))
    }
}
