//! Symbol-level pre- and postcomposition with the star product and the
//! differential `d'`.

use std::collections::HashMap;

use super::slot::Slot;
use super::tensor::{sign, Head, Slots, TensorSymbol, Term};
use crate::dga::Deformation;
use crate::ring::rational::binomial;
use crate::ring::{MultiIndex, Rational, ThetaScalar};

impl TensorSymbol {
    /// `D_a = ∂_a` on the head plus multiplication by `p_a` on every slot:
    /// the symbol of `∂_a` applied to the realized value. Terms heavier than
    /// `bound` are dropped.
    pub fn total_derivative(&self, a: usize, bound: u32) -> TensorSymbol {
        let mut out = TensorSymbol::zero(self.dim(), self.arity(), bound);
        for (t, c) in self.terms() {
            let e = t.head.exp.get(a);
            if e > 0 {
                let mut u = t.clone();
                u.head.exp = u.head.exp.decremented(a).expect("positive exponent");
                out.add_term(u, &c.scale(&Rational::from_integer(e.into())));
            }
            for k in 0..t.slots.len() {
                let mut u = t.clone();
                u.slots[k].p = u.slots[k].p.incremented(a);
                out.add_term(u, c);
            }
        }
        out
    }

    /// `d' ∘ Φ`: attach `ξ^i` to scalar-headed terms after applying `D_i`.
    pub fn postcompose_d(&self) -> TensorSymbol {
        let n = self.dim();
        let scalar_headed = self.filter(|t| t.head.xi.is_none());
        let mut out = TensorSymbol::zero(n, self.arity(), self.bound());
        for i in 0..n {
            let di = scalar_headed.total_derivative(i, self.bound());
            for (t, c) in di.terms() {
                let mut u = t.clone();
                u.head.xi = Some(i as u16);
                out.add_term(u, c);
            }
        }
        out
    }

    /// `Σ_i (−1)^{ā_1+…+ā_i} Φ(…, a_i ∗_θ a_{i+1}, …)`: every slot is split
    /// into two by the twisted coproduct `(p+q)^α exp(½θ^{ij} p_i q_j)`.
    pub fn precompose_star(&self, theta: &Deformation, bound: u32) -> TensorSymbol {
        let mut out = TensorSymbol::zero(self.dim(), self.arity() + 1, bound);
        for i in 0..self.arity() {
            self.merge_at(i, theta, true, &mut out);
        }
        out
    }

    /// Replace slot `i` by the two-slot symbol reading `a_i ∗_θ a_{i+1}`,
    /// accumulating into `out`. With `signed`, each resulting term is
    /// multiplied by `(−1)^{scalar slots among positions 0..=i}`.
    pub fn merge_at(&self, i: usize, theta: &Deformation, signed: bool, out: &mut TensorSymbol) {
        let n = self.dim();
        let bound = out.bound();
        let exp_cache: Vec<_> = {
            let room = bound.saturating_sub(self.min_weight());
            theta.exp_coefficients(room / 2)
        };
        for (t, c) in self.terms() {
            let slot = &t.slots[i];
            let alpha = &slot.p;
            let w = t.weight();
            let room = bound.saturating_sub(w);
            for beta in MultiIndex::all_up_to_degree(n, alpha.degree()) {
                let Some(rest) = alpha.checked_sub(&beta) else {
                    continue;
                };
                let mut binom = Rational::from_integer(1.into());
                for m in 0..n {
                    binom *= binomial(alpha.get(m), beta.get(m));
                }
                for (gamma, delta, e) in &exp_cache {
                    if 2 * gamma.degree() > room {
                        continue;
                    }
                    let left = beta.add(gamma);
                    let right = rest.add(delta);
                    let coef = c * &e.scale(&binom);
                    let routes: Vec<(u16, u16)> = if slot.tag == 0 {
                        vec![(0, 0)]
                    } else {
                        vec![(slot.tag, 0), (0, slot.tag)]
                    };
                    for (lt, rt) in routes {
                        let mut slots = Slots::with_capacity(t.slots.len() + 1);
                        slots.extend(t.slots[..i].iter().cloned());
                        slots.push(Slot::new(left.clone(), lt));
                        slots.push(Slot::new(right.clone(), rt));
                        slots.extend(t.slots[i + 1..].iter().cloned());
                        let u = Term {
                            head: t.head.clone(),
                            slots,
                        };
                        let neg = signed
                            && u.slots[..=i].iter().filter(|s| s.reads_scalar()).count() % 2 == 1;
                        out.add_term(u, &coef.scale(&sign(neg)));
                    }
                }
            }
        }
    }

    /// `Φ(a_1..a_k) ∗_{θ'} Γ(a_{k+1}..)` at the symbol level:
    /// `exp(½θ'^{ij} D^L_i D^R_j)` followed by the head product (two `ξ`s
    /// annihilate) and slot concatenation. `negate_left` decides a sign per
    /// left term.
    pub fn compose(
        &self,
        right: &TensorSymbol,
        theta: &Deformation,
        bound: u32,
        negate_left: impl Fn(&Term) -> bool,
    ) -> TensorSymbol {
        let n = self.dim();
        let mut out = TensorSymbol::zero(n, self.arity() + right.arity(), bound);
        if self.is_zero() || right.is_zero() {
            return out;
        }
        let room = bound.saturating_sub(self.min_weight() + right.min_weight());
        let k_left = self.max_head_degree() + room;
        let k_right = right.max_head_degree() + room;
        let k_max = if theta.is_zero() {
            0
        } else {
            k_left.min(k_right)
        };
        let left_budget = bound.saturating_sub(right.min_weight());
        let right_budget = bound.saturating_sub(self.min_weight());
        let mut left_pow = DerivativePowers::new(self, left_budget);
        let mut right_pow = DerivativePowers::new(right, right_budget);
        for (gamma, delta, e) in theta.exp_coefficients(k_max) {
            let l = left_pow.get(&gamma);
            if l.is_zero() {
                continue;
            }
            let r = right_pow.get(&delta);
            if r.is_zero() {
                continue;
            }
            product_into(l, r, &e, &negate_left, &mut out);
        }
        out
    }
}

fn product_into(
    left: &TensorSymbol,
    right: &TensorSymbol,
    k: &ThetaScalar,
    negate_left: &impl Fn(&Term) -> bool,
    out: &mut TensorSymbol,
) {
    let bound = out.bound();
    let mut rs: Vec<(&Term, &ThetaScalar, u32)> =
        right.terms().map(|(t, c)| (t, c, t.weight())).collect();
    rs.sort_by_key(|r| r.2);
    for (lt, lc) in left.terms() {
        let lw = lt.weight();
        let lcoef = if negate_left(lt) { -(lc * k) } else { lc * k };
        for (rt, rc, rw) in &rs {
            if lw + rw > bound {
                break;
            }
            let xi = match (lt.head.xi, rt.head.xi) {
                (Some(_), Some(_)) => continue,
                (a, b) => a.or(b),
            };
            let head = Head {
                exp: lt.head.exp.add(&rt.head.exp),
                xi,
            };
            let mut slots = lt.slots.clone();
            slots.extend(rt.slots.iter().cloned());
            out.add_term(Term { head, slots }, &(&lcoef * rc));
        }
    }
}

/// Memoized `D^γ Φ = Π_a D_a^{γ_a} Φ`.
struct DerivativePowers<'a> {
    base: &'a TensorSymbol,
    budget: u32,
    memo: HashMap<MultiIndex, TensorSymbol>,
}

impl<'a> DerivativePowers<'a> {
    fn new(base: &'a TensorSymbol, budget: u32) -> Self {
        DerivativePowers {
            base,
            budget,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, gamma: &MultiIndex) -> &TensorSymbol {
        if !self.memo.contains_key(gamma) {
            let value = match (0..gamma.len()).find(|&a| gamma.get(a) > 0) {
                None => self.base.with_bound(self.budget),
                Some(a) => {
                    let prev = gamma.decremented(a).expect("positive exponent");
                    let budget = self.budget;
                    self.get(&prev).total_derivative(a, budget)
                }
            };
            self.memo.insert(gamma.clone(), value);
        }
        &self.memo[gamma]
    }
}
