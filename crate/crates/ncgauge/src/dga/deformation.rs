use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{MultiIndex, Rational, SymbolTable, ThetaScalar, XPolynomial};

/// Antisymmetric deformation matrix `θ^{ij}`. Only the entries with `i < j`
/// are stored; the lower triangle is produced by negation on lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    n: usize,
    upper: Vec<ThetaScalar>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl Deformation {
    pub fn zero(n: usize) -> Self {
        Deformation {
            n,
            upper: vec![ThetaScalar::zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Every upper entry `θ^{ij}` becomes a fresh symbol named
    /// `{prefix}{i}{j}` (1-based), registered in `table`.
    pub fn symbolic(n: usize, prefix: &str, table: &mut SymbolTable) -> Self {
        let mut d = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                let name = if n < 10 {
                    format!("{prefix}{}{}", i + 1, j + 1)
                } else {
                    format!("{prefix}{}_{}", i + 1, j + 1)
                };
                let idx = table.intern(&name);
                d.upper[upper_index(n, i, j)] = ThetaScalar::symbol(idx);
            }
        }
        d
    }

    /// From a full rational matrix, which must be antisymmetric.
    pub fn explicit(matrix: &[Vec<Rational>]) -> Result<Self> {
        let n = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Config(format!(
                    "deformation matrix row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let mut d = Self::zero(n);
        for i in 0..n {
            if !matrix[i][i].is_zero() {
                return Err(Error::Config(format!(
                    "deformation matrix is not antisymmetric: diagonal entry {} is nonzero",
                    i + 1
                )));
            }
            for j in i + 1..n {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::Config(format!(
                        "deformation matrix is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                d.upper[upper_index(n, i, j)] = ThetaScalar::constant(matrix[i][j].clone());
            }
        }
        Ok(d)
    }

    pub fn from_upper(n: usize, upper: Vec<ThetaScalar>) -> Result<Self> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: n * n.saturating_sub(1) / 2,
                found: upper.len(),
            });
        }
        Ok(Deformation { n, upper })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `θ^{ij}` with `θ^{ji} = -θ^{ij}` and `θ^{ii} = 0`.
    pub fn get(&self, i: usize, j: usize) -> ThetaScalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => ThetaScalar::zero(),
            Less => self.upper[upper_index(self.n, i, j)].clone(),
            Greater => -&self.upper[upper_index(self.n, j, i)],
        }
    }

    pub fn upper(&self) -> &[ThetaScalar] {
        &self.upper
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|t| t.is_zero())
    }

    pub fn map(&self, f: impl Fn(&ThetaScalar) -> ThetaScalar) -> Self {
        Deformation {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    /// Coefficients of `exp(½ θ^{ij} L_i R_j)` up to order `k_max`, as
    /// triples `(γ, δ, c)` meaning `c · L^γ R^δ` with `|γ| = |δ| = k`.
    pub fn exp_coefficients(&self, k_max: u32) -> Vec<(MultiIndex, MultiIndex, ThetaScalar)> {
        let n = self.n;
        let half = Rational::new(1.into(), 2.into());
        let mut generator = XPolynomial::zero(2 * n);
        for i in 0..n {
            for j in 0..n {
                let t = self.get(i, j);
                if t.is_zero() {
                    continue;
                }
                let mut e = MultiIndex::zero(2 * n);
                e = e.incremented(i).incremented(n + j);
                generator.add_term(e, &t.scale(&half));
            }
        }
        let mut out = Vec::new();
        let mut power = XPolynomial::one(2 * n);
        let mut inv_fact = Rational::from_integer(1.into());
        for k in 0..=k_max {
            if k > 0 {
                power = power.mul(&generator);
                inv_fact /= Rational::from_integer(k.into());
            }
            if power.is_zero() {
                break;
            }
            for (m, c) in power.terms() {
                let (l, r) = m.as_slice().split_at(n);
                out.push((
                    MultiIndex::from_slice(l),
                    MultiIndex::from_slice(r),
                    c.scale(&inv_fact),
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{int, rat};

    #[test]
    fn antisymmetric_lookup() {
        let mut table = SymbolTable::new();
        let d = Deformation::symbolic(3, "t", &mut table);
        assert_eq!(table.names(), &["t12", "t13", "t23"]);
        assert_eq!(d.get(2, 1), -&ThetaScalar::symbol(2));
        assert!(d.get(1, 1).is_zero());
    }

    #[test]
    fn explicit_checks_antisymmetry() {
        let good = vec![vec![int(0), rat(1, 2)], vec![rat(-1, 2), int(0)]];
        assert!(Deformation::explicit(&good).is_ok());
        let bad = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert!(Deformation::explicit(&bad).is_err());
    }

    #[test]
    fn exp_coefficients_first_order() {
        let mut table = SymbolTable::new();
        let d = Deformation::symbolic(2, "t", &mut table);
        let c = d.exp_coefficients(1);
        // 1 + ½t(L1R2 - L2R1)
        assert_eq!(c.len(), 3);
        let l1r2 = c
            .iter()
            .find(|(g, h, _)| g.as_slice() == [1, 0] && h.as_slice() == [0, 1])
            .unwrap();
        assert_eq!(l1r2.2, ThetaScalar::symbol(0).scale(&rat(1, 2)));
    }
}
