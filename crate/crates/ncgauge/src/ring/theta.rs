//! Polynomials over the rationals in the deformation symbols (the entries
//! `θ^{ij}`, `i < j`, of the source and target matrices).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponents of the deformation symbols, trailing zeros trimmed so that the
/// representation does not depend on how many symbols a session declares.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymMonomial(SmallVec<[u32; 4]>);

impl SymMonomial {
    pub fn one() -> Self {
        SymMonomial(SmallVec::new())
    }

    pub fn symbol(index: usize) -> Self {
        let mut v = SmallVec::from_elem(0, index + 1);
        v[index] = 1;
        SymMonomial(v)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 4]> = SmallVec::from_slice(exps);
        while v.last() == Some(&0) {
            v.pop();
        }
        SymMonomial(v)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        SymMonomial(v)
    }

    /// Dense exponent vector of length `m`.
    pub fn padded(&self, m: usize) -> Vec<u32> {
        (0..m).map(|i| self.exponent(i)).collect()
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let len = self.0.len().max(other.0.len());
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in 0..len {
                let c = other.exponent(i).cmp(&self.exponent(i));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Which deformation matrix a symbol is an entry of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixRole {
    Source,
    Target,
}

/// Names of the deformation symbols of a session, indexed by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `name`, registering it if new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(i) = self.index_of(name) {
            return i;
        }
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn from_names(names: Vec<String>) -> Self {
        SymbolTable { names }
    }
}

/// Sparse polynomial in the deformation symbols with rational coefficients.
/// No zero coefficients are ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ThetaScalar {
    terms: BTreeMap<SymMonomial, Rational>,
}

impl ThetaScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(SymMonomial::one(), c);
        s
    }

    pub fn symbol(index: usize) -> Self {
        let mut s = Self::zero();
        s.add_term(SymMonomial::symbol(index), Rational::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&SymMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: SymMonomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ThetaScalar {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Highest total degree in the symbols (0 for constants and zero).
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Part of total symbol degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        ThetaScalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// Drop every term of total symbol degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        ThetaScalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// Substitute rational values for symbols. `assignment[i]` is the value of
    /// symbol `i`; symbols beyond the slice or set to `None` must not occur.
    pub fn specialize(&self, assignment: &[Option<Rational>], table: &SymbolTable) -> Result<Self> {
        let mut out = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let value = assignment.get(i).and_then(|a| a.as_ref()).ok_or_else(|| {
                    let name = if i < table.len() {
                        table.name(i).to_string()
                    } else {
                        format!("#{i}")
                    };
                    Error::UnassignedSymbol(name)
                })?;
                v *= num_traits::pow(value.clone(), e as usize);
            }
            out += v;
        }
        Ok(Self::constant(out))
    }

    /// Substitute for a subset of symbols, leaving the others symbolic.
    pub fn substitute(&self, assignment: &[Option<Rational>]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = m.padded(m.exponents().len());
            for (i, e) in rest.iter_mut().enumerate() {
                if *e == 0 {
                    continue;
                }
                if let Some(Some(value)) = assignment.get(i) {
                    v *= num_traits::pow(value.clone(), *e as usize);
                    *e = 0;
                }
            }
            out.add_term(SymMonomial::from_exponents(&rest), v);
        }
        out
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_sym_monomial(m, table);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

fn render_sym_monomial(m: &SymMonomial, table: &SymbolTable) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if i < table.len() {
            table.name(i).to_string()
        } else {
            format!("s{i}")
        };
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

impl fmt::Debug for ThetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&SymbolTable::new()))
    }
}

impl From<Rational> for ThetaScalar {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn add(self, rhs: &ThetaScalar) -> ThetaScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn sub(self, rhs: &ThetaScalar) -> ThetaScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&ThetaScalar> for ThetaScalar {
    fn add_assign(&mut self, rhs: &ThetaScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ThetaScalar> for ThetaScalar {
    fn sub_assign(&mut self, rhs: &ThetaScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &ThetaScalar {
    type Output = ThetaScalar;
    fn neg(self) -> ThetaScalar {
        ThetaScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for ThetaScalar {
    type Output = ThetaScalar;
    fn neg(self) -> ThetaScalar {
        -&self
    }
}

impl<'a> Mul<&'a ThetaScalar> for &'a ThetaScalar {
    type Output = ThetaScalar;
    fn mul(self, rhs: &ThetaScalar) -> ThetaScalar {
        if self.is_zero() || rhs.is_zero() {
            return ThetaScalar::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = ThetaScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{int, rat};

    fn t() -> ThetaScalar {
        ThetaScalar::symbol(0)
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = &t() - &t();
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
    }

    #[test]
    fn specialize_square() {
        let table = SymbolTable::from_names(vec!["t".into()]);
        let t2 = &t() * &t();
        let v = t2.specialize(&[Some(rat(1, 2))], &table).unwrap();
        assert_eq!(v.as_constant().unwrap(), rat(1, 4));
    }

    #[test]
    fn specialize_requires_assignment() {
        let table = SymbolTable::from_names(vec!["t".into()]);
        assert_eq!(
            t().specialize(&[None], &table),
            Err(Error::UnassignedSymbol("t".into()))
        );
    }

    #[test]
    fn degree_parts() {
        let s = &(&ThetaScalar::one() + &t()) * &(&ThetaScalar::one() + &t());
        assert_eq!(s.degree_part(1), t().scale(&int(2)));
        assert_eq!(
            s.truncate_degree(1),
            &ThetaScalar::one() + &t().scale(&int(2))
        );
        assert_eq!(s.max_degree(), 2);
    }

    #[test]
    fn trimmed_monomials_compare_equal() {
        assert_eq!(
            SymMonomial::from_exponents(&[1, 0, 0]),
            SymMonomial::symbol(0)
        );
    }
}
