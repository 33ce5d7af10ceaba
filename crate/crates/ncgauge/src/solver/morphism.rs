use serde::{Deserialize, Serialize};

use crate::dga::Deformation;
use crate::error::{Error, Result};
use crate::ring::{Rational, SymbolTable};
use crate::symbol::TensorSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Prime,
    Doubleprime,
}

/// One of `f'_l` or `f''_{l,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismComponent {
    pub order: usize,
    pub kind: ComponentKind,
    /// Position of the degree-0 argument, for doubleprime components.
    pub position: Option<usize>,
    pub symbol: TensorSymbol,
}

/// Shared parameters of a computation: dimension, source and target
/// deformation matrices with their symbol names, and the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setting {
    pub n: usize,
    pub theta: Deformation,
    pub theta_prime: Deformation,
    pub symbols: SymbolTable,
    pub order: usize,
    /// Largest argument x-degree on which the components are exact.
    pub degree_bound: u32,
}

impl Setting {
    pub fn new(
        theta: Deformation,
        theta_prime: Deformation,
        symbols: SymbolTable,
        order: usize,
        degree_bound: u32,
    ) -> Result<Self> {
        let n = theta.dim();
        if theta_prime.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: theta_prime.dim(),
            });
        }
        if n == 0 || order == 0 || degree_bound == 0 {
            return Err(Error::Config("n, L and D must all be at least 1".into()));
        }
        Ok(Setting {
            n,
            theta,
            theta_prime,
            symbols,
            order,
            degree_bound,
        })
    }

    /// Total slot weight kept in every symbol: `L (D + 1)`. An order-`l`
    /// operator evaluated on arguments of degree `≤ D` only reads terms of
    /// weight `≤ l (D + 1)`, and no operation lowers weight, so truncating
    /// there is exact.
    pub fn weight_bound(&self) -> u32 {
        self.order as u32 * (self.degree_bound + 1)
    }

    pub fn compatible(&self, other: &Setting) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Incompatible(format!(
                "dimensions {} and {}",
                self.n, other.n
            )));
        }
        if self.theta != other.theta || self.theta_prime != other.theta_prime {
            return Err(Error::Incompatible("deformation matrices differ".into()));
        }
        if self.symbols != other.symbols {
            return Err(Error::Incompatible("symbol tables differ".into()));
        }
        if self.degree_bound != other.degree_bound {
            return Err(Error::Incompatible(format!(
                "degree bounds {} and {}",
                self.degree_bound, other.degree_bound
            )));
        }
        Ok(())
    }

    /// Replace every deformation symbol by the given value.
    pub fn assignment_all(&self, value: &Rational) -> Vec<Option<Rational>> {
        vec![Some(value.clone()); self.symbols.len()]
    }
}

/// Components `f_1..f_L` of an A∞-morphism. `prime[l-1]` holds `f'_l`,
/// `doubleprime[l-1]` holds `f''_l = Σ_k f''_{l,k}`; the position `k` of a
/// term is the position of its scalar slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub setting: Setting,
    prime: Vec<TensorSymbol>,
    doubleprime: Vec<TensorSymbol>,
}

impl Morphism {
    pub fn from_components(
        setting: Setting,
        prime: Vec<TensorSymbol>,
        doubleprime: Vec<TensorSymbol>,
    ) -> Result<Self> {
        if prime.len() != doubleprime.len() {
            return Err(Error::Config(
                "prime and doubleprime component counts differ".into(),
            ));
        }
        for (i, (p, d)) in prime.iter().zip(&doubleprime).enumerate() {
            let l = i + 1;
            for s in [p, d] {
                if s.arity() != l {
                    return Err(Error::ArityMismatch {
                        expected: l,
                        found: s.arity(),
                    });
                }
                if s.dim() != setting.n {
                    return Err(Error::DimensionMismatch {
                        expected: setting.n,
                        found: s.dim(),
                    });
                }
            }
            if !p
                .terms()
                .all(|(t, _)| t.head.xi.is_some() && t.scalar_slot_count() == 0)
            {
                return Err(Error::Config(format!("f'_{l} has terms of the wrong type")));
            }
            if !d
                .terms()
                .all(|(t, _)| t.head.xi.is_none() && t.scalar_slot_count() == 1)
            {
                return Err(Error::Config(format!(
                    "f''_{l} has terms of the wrong type"
                )));
            }
        }
        Ok(Morphism {
            setting,
            prime,
            doubleprime,
        })
    }

    /// The identity `f_1 = id` with no higher components.
    pub fn identity(setting: Setting) -> Self {
        let w = setting.weight_bound();
        let n = setting.n;
        Morphism {
            setting,
            prime: vec![TensorSymbol::identity_one_form(n, w)],
            doubleprime: vec![TensorSymbol::identity_scalar(n, w)],
        }
    }

    pub fn dim(&self) -> usize {
        self.setting.n
    }

    /// Number of solved orders.
    pub fn order(&self) -> usize {
        self.prime.len()
    }

    pub fn prime(&self, l: usize) -> &TensorSymbol {
        &self.prime[l - 1]
    }

    pub fn doubleprime(&self, l: usize) -> &TensorSymbol {
        &self.doubleprime[l - 1]
    }

    pub fn doubleprime_at(&self, l: usize, k: usize) -> TensorSymbol {
        self.doubleprime[l - 1].scalar_at(k)
    }

    /// `f_l = f'_l + f''_l` as one symbol.
    pub fn full(&self, l: usize) -> TensorSymbol {
        self.prime(l).add(self.doubleprime(l))
    }

    pub fn push(&mut self, prime: TensorSymbol, doubleprime: TensorSymbol) {
        self.prime.push(prime);
        self.doubleprime.push(doubleprime);
    }

    /// Keep orders `1..=l`.
    pub fn truncated(&self, l: usize) -> Self {
        Morphism {
            setting: self.setting.clone(),
            prime: self.prime[..l].to_vec(),
            doubleprime: self.doubleprime[..l].to_vec(),
        }
    }

    pub fn set_order(&mut self, l: usize, prime: TensorSymbol, doubleprime: TensorSymbol) {
        self.prime[l - 1] = prime;
        self.doubleprime[l - 1] = doubleprime;
    }

    pub fn components(&self) -> Vec<MorphismComponent> {
        let mut out = Vec::new();
        for l in 1..=self.order() {
            out.push(MorphismComponent {
                order: l,
                kind: ComponentKind::Prime,
                position: None,
                symbol: self.prime(l).clone(),
            });
            for k in 0..l {
                out.push(MorphismComponent {
                    order: l,
                    kind: ComponentKind::Doubleprime,
                    position: Some(k),
                    symbol: self.doubleprime_at(l, k),
                });
            }
        }
        out
    }

    pub fn map_symbols(&self, f: impl Fn(&TensorSymbol) -> TensorSymbol) -> Self {
        Morphism {
            setting: self.setting.clone(),
            prime: self.prime.iter().map(&f).collect(),
            doubleprime: self.doubleprime.iter().map(&f).collect(),
        }
    }

    /// Substitute values for the deformation symbols in every component.
    pub fn substitute(&self, assignment: &[Option<Rational>]) -> Self {
        let mut out = self.map_symbols(|s| s.substitute(assignment));
        let sub = |d: &Deformation| d.map(|t| t.substitute(assignment));
        out.setting.theta = sub(&self.setting.theta);
        out.setting.theta_prime = sub(&self.setting.theta_prime);
        out
    }

    pub fn is_normal_above_one(&self) -> bool {
        (2..=self.order()).all(|l| self.prime(l).is_normal() && self.doubleprime(l).is_normal())
    }

    pub fn is_unital(&self) -> bool {
        self.order() >= 1 && self.doubleprime(1).is_unital()
    }

    pub fn term_counts(&self) -> Vec<(usize, usize, usize)> {
        (1..=self.order())
            .map(|l| {
                (
                    l,
                    self.prime(l).num_terms(),
                    self.doubleprime(l).num_terms(),
                )
            })
            .collect()
    }
}
