//! Single-slot symbols `φ⁰(p) + φ^i(p) ζ_i` and the monomial rules for the
//! dual differential `∂`, the homotopy `h` and the projector `π`.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{MultiIndex, PPolynomial, Rational, ThetaScalar};

/// Basis element of a slot: `p^α` read on `a0` (tag 0) or `p^α ζ_j` read on
/// the coefficient of `ξ^j` (tag `j + 1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Slot {
    pub p: MultiIndex,
    pub tag: u16,
}

pub type SlotCombination = SmallVec<[(Slot, Rational); 4]>;

impl Slot {
    pub fn new(p: MultiIndex, tag: u16) -> Self {
        Slot { p, tag }
    }

    /// `p^α` reading the degree-0 component.
    pub fn scalar(p: MultiIndex) -> Self {
        Slot { p, tag: 0 }
    }

    /// `p^α ζ_j` with `j` 0-based.
    pub fn zeta(p: MultiIndex, j: usize) -> Self {
        Slot {
            p,
            tag: j as u16 + 1,
        }
    }

    pub fn reads_scalar(&self) -> bool {
        self.tag == 0
    }

    /// 0-based `ξ` index read by a ζ slot.
    pub fn zeta_index(&self) -> Option<usize> {
        (self.tag != 0).then(|| self.tag as usize - 1)
    }

    /// `|α|` plus one for ζ slots. Preserved by `∂`, `h` and `π`.
    pub fn weight(&self) -> u32 {
        self.p.degree() + u32::from(self.tag != 0)
    }

    /// Argument degree this slot reads: 0 for tag 0, 1 otherwise.
    pub fn arg_degree(&self) -> u8 {
        u8::from(self.tag != 0)
    }

    /// `∂(p^α ζ_j) = p^{α+e_j}`; `∂` of a scalar slot is zero.
    pub fn dual_differential(&self) -> Option<Slot> {
        self.zeta_index()
            .map(|j| Slot::scalar(self.p.incremented(j)))
    }

    /// `h(p^α) = (1/|α|) Σ_i α_i p^{α−e_i} ζ_i`; zero on constants and ζ slots.
    pub fn homotopy(&self) -> SlotCombination {
        let mut out = SlotCombination::new();
        if self.tag != 0 {
            return out;
        }
        let deg = self.p.degree();
        if deg == 0 {
            return out;
        }
        let inv = Rational::from_integer(deg.into()).recip();
        for i in 0..self.p.len() {
            let a = self.p.get(i);
            if a == 0 {
                continue;
            }
            let q = self.p.decremented(i).expect("positive exponent");
            out.push((Slot::zeta(q, i), &inv * Rational::from_integer(a.into())));
        }
        out
    }

    /// `π = 1 − ∂h − h∂`: keeps only the constant of a scalar slot; on
    /// `p^α ζ_j` subtracts `(1/(|α|+1)) Σ_m (α+e_j)_m p^{α+e_j−e_m} ζ_m`.
    pub fn projector(&self) -> SlotCombination {
        let mut out = SlotCombination::new();
        match self.zeta_index() {
            None => {
                if self.p.is_zero() {
                    out.push((self.clone(), Rational::from_integer(1.into())));
                }
            }
            Some(j) => {
                let beta = self.p.incremented(j);
                let inv = Rational::from_integer(beta.degree().into()).recip();
                let mut self_coef = Rational::from_integer(1.into());
                for m in 0..beta.len() {
                    let b = beta.get(m);
                    if b == 0 {
                        continue;
                    }
                    let c = -(&inv * Rational::from_integer(b.into()));
                    if m == j {
                        self_coef += c;
                    } else {
                        let q = beta.decremented(m).expect("positive exponent");
                        out.push((Slot::zeta(q, m), c));
                    }
                }
                if self_coef != Rational::from_integer(0.into()) {
                    out.push((self.clone(), self_coef));
                }
            }
        }
        out
    }
}

/// A single slot symbol `φ⁰(p) + φ^i(p) ζ_i` with a per-slot degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotSymbol {
    pub phi0: PPolynomial,
    pub phi: Vec<PPolynomial>,
    pub bound: u32,
}

impl SlotSymbol {
    pub fn zero(n: usize, bound: u32) -> Self {
        SlotSymbol {
            phi0: PPolynomial::zero(n),
            phi: vec![PPolynomial::zero(n); n],
            bound,
        }
    }

    pub fn new(phi0: PPolynomial, phi: Vec<PPolynomial>, bound: u32) -> Result<Self> {
        let n = phi0.dim();
        if phi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: phi.len(),
            });
        }
        for p in std::iter::once(&phi0).chain(phi.iter()) {
            if let Some(d) = p.degree() {
                if d > bound {
                    return Err(Error::TruncationExceeded { degree: d, bound });
                }
            }
        }
        Ok(SlotSymbol { phi0, phi, bound })
    }

    pub fn dim(&self) -> usize {
        self.phi0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.phi0.is_zero() && self.phi.iter().all(|p| p.is_zero())
    }

    pub fn from_slots(
        n: usize,
        bound: u32,
        slots: impl IntoIterator<Item = (Slot, ThetaScalar)>,
    ) -> Self {
        let mut s = Self::zero(n, bound);
        for (slot, c) in slots {
            if slot.p.degree() > bound {
                continue;
            }
            match slot.zeta_index() {
                None => s.phi0.add_term(slot.p, &c),
                Some(j) => s.phi[j].add_term(slot.p, &c),
            }
        }
        s
    }

    pub fn slots(&self) -> Vec<(Slot, ThetaScalar)> {
        let mut out: Vec<(Slot, ThetaScalar)> = self
            .phi0
            .terms()
            .map(|(m, c)| (Slot::scalar(m.clone()), c.clone()))
            .collect();
        for (j, p) in self.phi.iter().enumerate() {
            out.extend(
                p.terms()
                    .map(|(m, c)| (Slot::zeta(m.clone(), j), c.clone())),
            );
        }
        out
    }

    fn apply(&self, f: impl Fn(&Slot) -> SlotCombination) -> Self {
        let mut out = Vec::new();
        for (s, c) in self.slots() {
            for (t, k) in f(&s) {
                out.push((t, c.scale(&k)));
            }
        }
        Self::from_slots(self.dim(), self.bound, out)
    }

    /// `∂φ = p_i φ^i(p)`.
    pub fn dual_differential(&self) -> Self {
        self.apply(|s| {
            s.dual_differential()
                .map(|t| SlotCombination::from_iter([(t, Rational::from_integer(1.into()))]))
                .unwrap_or_default()
        })
    }

    pub fn homotopy(&self) -> Self {
        self.apply(Slot::homotopy)
    }

    pub fn projector(&self) -> Self {
        self.apply(Slot::projector)
    }

    pub fn add(&self, other: &Self) -> Self {
        SlotSymbol {
            phi0: self.phi0.add(&other.phi0),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(a, b)| a.add(b))
                .collect(),
            bound: self.bound.min(other.bound),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SlotSymbol {
            phi0: self.phi0.sub(&other.phi0),
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(a, b)| a.sub(b))
                .collect(),
            bound: self.bound.min(other.bound),
        }
    }

    /// Membership in `Z`: constant `φ⁰` and `p_i φ^i = 0`.
    pub fn in_z(&self) -> bool {
        let const_phi0 = self.phi0.terms().all(|(m, _)| m.is_zero());
        const_phi0 && self.zeta_part().dual_differential().is_zero()
    }

    pub fn zeta_part(&self) -> Self {
        SlotSymbol {
            phi0: PPolynomial::zero(self.dim()),
            phi: self.phi.clone(),
            bound: self.bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    fn p(i: usize) -> PPolynomial {
        PPolynomial::var(2, i)
    }

    fn zeta(j: usize, poly: PPolynomial) -> SlotSymbol {
        let mut phi = vec![PPolynomial::zero(2); 2];
        phi[j] = poly;
        SlotSymbol::new(PPolynomial::zero(2), phi, 5).unwrap()
    }

    fn scalar(poly: PPolynomial) -> SlotSymbol {
        SlotSymbol::new(poly, vec![PPolynomial::zero(2); 2], 5).unwrap()
    }

    #[test]
    fn dual_differential_examples() {
        assert_eq!(zeta(0, p(1)).dual_differential(), scalar(p(0).mul(&p(1))));
        assert!(scalar(p(0)).dual_differential().is_zero());
        assert!(zeta(0, p(1))
            .sub(&zeta(1, p(0)))
            .dual_differential()
            .is_zero());
    }

    #[test]
    fn projector_examples() {
        let c = scalar(PPolynomial::one(2).scale_rational(&rat(3, 1)));
        assert_eq!(c.projector(), c);
        assert!(scalar(p(0).mul(&p(1))).projector().is_zero());
        let got = zeta(0, p(1)).projector();
        let half = rat(1, 2);
        let want = zeta(0, p(1).scale_rational(&half)).sub(&zeta(1, p(0).scale_rational(&half)));
        assert_eq!(got, want);
        assert!(got.in_z());
    }

    #[test]
    fn homotopy_examples() {
        assert!(scalar(PPolynomial::one(2)).homotopy().is_zero());
        let half = rat(1, 2);
        let got = scalar(p(0).mul(&p(1))).homotopy();
        let want = zeta(0, p(1).scale_rational(&half)).add(&zeta(1, p(0).scale_rational(&half)));
        assert_eq!(got, want);
        assert!(zeta(1, p(0)).homotopy().is_zero());
    }

    #[test]
    fn bound_enforced() {
        let big = p(0).mul(&p(0)).mul(&p(0));
        assert!(SlotSymbol::new(big, vec![PPolynomial::zero(2); 2], 2).is_err());
    }
}
