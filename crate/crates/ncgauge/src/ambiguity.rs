//! Non-uniqueness of solutions: shifts by δ-cocycles, gauge transformations
//! by exponentials of degree-0 cochains, and the first obstruction class
//! between two morphisms.
//!
//! Cochains `B(A) → A'` are handled as sequences of symbols indexed by
//! arity. They form an associative dg algebra under the convolution product
//! `(a ⋆ b)(x, y) = (−1)^{|b||x|} a(x) ∗_{θ'} b(y)` with differential
//! `Da = d'∘a + (−1)^{|a|}(∂a + Σ a(…, x_i ∗_θ x_{i+1}, …))`. A morphism is
//! an odd element with `Df + f ⋆ f = 0`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::rational::factorial;
use crate::ring::{Rational, ThetaScalar};
use crate::solver::{extend, Morphism, Setting};
use crate::symbol::{Head, TensorSymbol, Term};

/// A degree-zero δ-cocycle `g_l = (z + d'∘c, ∂_l c)` at order `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityCocycle {
    pub order: usize,
    pub z: TensorSymbol,
    pub c: TensorSymbol,
    pub prime: TensorSymbol,
    pub doubleprime: TensorSymbol,
}

/// First order at which two morphisms differ and the class of the
/// difference there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClassReport {
    /// `None` when the morphisms agree at every common order.
    pub order: Option<usize>,
    /// π-fixed reduced form of the difference, or zero when the class vanishes.
    pub representative: TensorSymbol,
    pub is_zero: bool,
}

/// Serialized form of a class report; the representative is rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub order: Option<usize>,
    pub is_zero: bool,
    pub representative: String,
    pub terms: usize,
}

impl CohomologyClassReport {
    pub fn summary(&self, f: &Morphism) -> ClassSummary {
        ClassSummary {
            order: self.order,
            is_zero: self.is_zero,
            representative: self.representative.render(&f.setting.symbols),
            terms: self.representative.num_terms(),
        }
    }
}

fn only_zeta_slots(s: &TensorSymbol) -> bool {
    s.terms().all(|(t, _)| t.scalar_slot_count() == 0)
}

/// `δg = d'∘g − ∂_l g` for a degree-0 cochain given as one symbol.
pub fn delta(g: &TensorSymbol) -> TensorSymbol {
    g.postcompose_d().sub(&g.dual_differential())
}

pub fn is_delta_closed(g: &TensorSymbol) -> bool {
    delta(g).is_zero()
}

/// Assemble `g' = z + d'∘c`, `g'' = ∂_l c`. `z` must have `ξ` heads and
/// lie in `A'_1 ⊗ Z^{⊗l}` (fixed by `π_l`); `c` must map `l` one-forms to
/// scalars.
pub fn make_cocycle(
    setting: &Setting,
    order: usize,
    z: TensorSymbol,
    c: TensorSymbol,
) -> Result<AmbiguityCocycle> {
    let w = setting.weight_bound();
    for (name, s) in [("z", &z), ("c", &c)] {
        if s.arity() != order {
            return Err(Error::ArityMismatch {
                expected: order,
                found: s.arity(),
            });
        }
        if s.dim() != setting.n {
            return Err(Error::DimensionMismatch {
                expected: setting.n,
                found: s.dim(),
            });
        }
        if !only_zeta_slots(s) {
            return Err(Error::InvalidCocycle(format!(
                "{name} has a slot reading a degree-0 argument"
            )));
        }
    }
    if order == 0 {
        return Err(Error::InvalidCocycle("order must be at least 1".into()));
    }
    if !z.terms().all(|(t, _)| t.head.xi.is_some()) {
        return Err(Error::InvalidCocycle("z must have degree-1 heads".into()));
    }
    if z.projector() != z {
        return Err(Error::InvalidCocycle("z has slots outside Z".into()));
    }
    if !c.terms().all(|(t, _)| t.head.xi.is_none()) {
        return Err(Error::InvalidCocycle("c must have degree-0 heads".into()));
    }
    let (z, c) = (z.with_bound(w), c.with_bound(w));
    let prime = z.add(&c.postcompose_d());
    let doubleprime = c.dual_differential();
    if !is_delta_closed(&prime.add(&doubleprime)) {
        return Err(Error::InvalidCocycle(
            "assembled cochain is not δ-closed".into(),
        ));
    }
    Ok(AmbiguityCocycle {
        order,
        z,
        c,
        prime,
        doubleprime,
    })
}

impl AmbiguityCocycle {
    pub fn is_zero(&self) -> bool {
        self.prime.is_zero() && self.doubleprime.is_zero()
    }

    /// Exact when the `z` part is absent.
    pub fn is_exact(&self) -> bool {
        self.z.is_zero()
    }
}

/// Add `g` to the order-`l` components and re-solve every higher order.
pub fn shift_by_cocycle(f: &Morphism, g: &AmbiguityCocycle) -> Result<Morphism> {
    let l = g.order;
    if l > f.order() {
        return Err(Error::MissingComponent(l));
    }
    let top = f.order();
    let mut out = f.truncated(l);
    let fp = out.prime(l).add(&g.prime);
    let fpp = out.doubleprime(l).add(&g.doubleprime);
    out.set_order(l, fp, fpp);
    extend(&mut out, top)?;
    Ok(out)
}

/// `Σ_{i<j} (P_i z_j − P_j z_i)` as separate symbols, with `P_i` the symbol
/// of `∂_i` on the realized value. `z_j` is `z` with its `ξ^j` dropped.
fn curl(z: &TensorSymbol) -> Vec<TensorSymbol> {
    let n = z.dim();
    let parts: Vec<TensorSymbol> = (0..n)
        .map(|j| {
            let mut s = TensorSymbol::zero(n, z.arity(), z.bound());
            for (t, c) in z.terms().filter(|(t, _)| t.head.xi == Some(j as u16)) {
                let mut u = t.clone();
                u.head.xi = None;
                s.add_term(u, c);
            }
            s.postcompose_d()
        })
        .collect();
    let component = |s: &TensorSymbol, i: usize| {
        let mut out = TensorSymbol::zero(n, s.arity(), s.bound());
        for (t, c) in s.terms().filter(|(t, _)| t.head.xi == Some(i as u16)) {
            let mut u = t.clone();
            u.head.xi = None;
            out.add_term(u, c);
        }
        out
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // parts[j] holds Σ_i P_i z_j ξ^i.
            out.push(component(&parts[j], i).sub(&component(&parts[i], j)));
        }
    }
    out
}

/// Class of a δ-closed degree-0 cochain `g` of arity `l`. Writing
/// `g = δ(h_l g'') + (z, 0)` gives a π-fixed `z`, returned as the
/// representative. The class vanishes iff `z = d'∘c` for some
/// scalar-headed `c`, which for polynomial symbols is the vanishing of the
/// curl `P_i z_j − P_j z_i`.
pub fn cocycle_class(g: &TensorSymbol) -> Result<(TensorSymbol, bool)> {
    if !is_delta_closed(g) {
        return Err(Error::InvalidCocycle("difference is not δ-closed".into()));
    }
    let gp = g.filter(|t| t.head.xi.is_some());
    let gpp = g.filter(|t| t.head.xi.is_none());
    let c = gpp.homotopy();
    let z = gp.sub(&c.postcompose_d());
    if !gpp.sub(&c.dual_differential()).is_zero() || !only_zeta_slots(&z) {
        return Err(Error::InvalidCocycle("difference is not normal".into()));
    }
    if z.projector() != z {
        return Err(Error::InvalidCocycle(
            "reduced cocycle is not π-fixed".into(),
        ));
    }
    let zero = curl(&z).iter().all(TensorSymbol::is_zero);
    Ok((z, zero))
}

/// First nontrivial class `[f̃_l − f_l]`.
pub fn obstruction_class(f: &Morphism, ft: &Morphism) -> Result<CohomologyClassReport> {
    f.setting.compatible(&ft.setting)?;
    let w = f.setting.weight_bound();
    let top = f.order().min(ft.order());
    for l in 1..=top {
        let g = ft.full(l).sub(&f.full(l));
        if g.is_zero() {
            continue;
        }
        let (rep, zero) = cocycle_class(&g)?;
        return Ok(CohomologyClassReport {
            order: Some(l),
            representative: if zero {
                TensorSymbol::zero(f.dim(), l, w)
            } else {
                rep
            },
            is_zero: zero,
        });
    }
    Ok(CohomologyClassReport {
        order: None,
        representative: TensorSymbol::zero(f.dim(), 1, w),
        is_zero: true,
    })
}

/// A cochain as symbols of arity `1..=len`.
type Cochain = Vec<TensorSymbol>;

struct Convolution<'a> {
    setting: &'a Setting,
    order: usize,
}

impl Convolution<'_> {
    fn zero(&self) -> Cochain {
        let w = self.setting.weight_bound();
        (1..=self.order)
            .map(|m| TensorSymbol::zero(self.setting.n, m, w))
            .collect()
    }

    fn add(&self, a: &Cochain, b: &Cochain) -> Cochain {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    fn scale(&self, a: &Cochain, k: &Rational) -> Cochain {
        let k = ThetaScalar::constant(k.clone());
        a.iter().map(|x| x.scale(&k)).collect()
    }

    /// `a ⋆ b`; `b_odd` is the parity of `b`.
    fn product(&self, a: &Cochain, b: &Cochain, b_odd: bool) -> Cochain {
        let s = self.setting;
        let w = s.weight_bound();
        let mut out = self.zero();
        for i in 1..self.order {
            if a[i - 1].is_zero() {
                continue;
            }
            for j in 1..=self.order - i {
                let p = a[i - 1].compose(&b[j - 1], &s.theta_prime, w, |t| {
                    b_odd && t.scalar_slot_count() % 2 == 1
                });
                out[i + j - 1].add_assign(&p);
            }
        }
        out
    }

    fn differential(&self, a: &Cochain, odd: bool) -> Cochain {
        let mut out = self.zero();
        for m in 1..=self.order {
            let x = &a[m - 1];
            let mut inner = x.dual_differential();
            if m >= 2 {
                inner.add_assign(&self.merged(a, m));
            }
            if odd {
                inner = inner.neg();
            }
            out[m - 1].add_assign(&x.postcompose_d());
            out[m - 1].add_assign(&inner);
        }
        out
    }

    fn merged(&self, a: &Cochain, m: usize) -> TensorSymbol {
        let s = self.setting;
        let mut out = TensorSymbol::zero(s.n, m, s.weight_bound());
        for i in 0..m - 1 {
            a[m - 2].merge_at(i, &s.theta, true, &mut out);
        }
        out
    }

    /// `exp(±c) − 1`.
    fn exp_minus_one(&self, c: &Cochain, negate: bool) -> Cochain {
        let mut total = self.zero();
        let mut power = c.clone();
        let mut k = 1u32;
        while power.iter().any(|p| !p.is_zero()) {
            let mut coef = Rational::one() / factorial(k);
            if negate && k % 2 == 1 {
                coef = -coef;
            }
            total = self.add(&total, &self.scale(&power, &coef));
            power = self.product(&power, c, false);
            k += 1;
        }
        total
    }
}

/// Residual `Df + f ⋆ f` of a cochain sequence, as computed by the gauge
/// machinery. For a morphism this agrees with the solver's residual.
#[cfg(test)]
fn mc_defect(conv: &Convolution, f: &Cochain) -> Cochain {
    conv.add(&conv.differential(f, true), &conv.product(f, f, true))
}

/// `f^g = g⁻¹ ⋆ f ⋆ g + g⁻¹ ⋆ Dg` with `g = exp(c)`, truncated at `order`.
/// At order `l = arity(c)` this adds `δc` to `f_l`, the same as a shift by
/// the exact cocycle built from `c`.
pub fn gauge_transform(f: &Morphism, c: &TensorSymbol, order: usize) -> Result<Morphism> {
    if order > f.order() {
        return Err(Error::MissingComponent(f.order() + 1));
    }
    if c.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: c.dim(),
        });
    }
    if c.arity() == 0 || !only_zeta_slots(c) || !c.terms().all(|(t, _)| t.head.xi.is_none()) {
        return Err(Error::InvalidCocycle(
            "gauge generator must map one-forms to scalars".into(),
        ));
    }
    let setting = Setting {
        order,
        ..f.setting.clone()
    };
    let w = setting.weight_bound();
    let conv = Convolution {
        setting: &setting,
        order,
    };
    let x: Cochain = (1..=order).map(|m| f.full(m)).collect();
    let mut cc = conv.zero();
    if c.arity() <= order {
        cc[c.arity() - 1] = c.with_bound(w);
    }
    let g = conv.exp_minus_one(&cc, false);
    let ginv = conv.exp_minus_one(&cc, true);
    let dg = conv.differential(&g, false);
    let hx = conv.product(&ginv, &x, true);
    let xg = conv.product(&x, &g, false);
    let hxg = conv.product(&hx, &g, false);
    let hdg = conv.product(&ginv, &dg, true);
    let mut total = x;
    for part in [&hx, &xg, &hxg, &dg, &hdg] {
        total = conv.add(&total, part);
    }
    let prime = total
        .iter()
        .map(|s| s.filter(|t| t.head.xi.is_some()))
        .collect();
    let doubleprime = total
        .iter()
        .map(|s| s.filter(|t| t.head.xi.is_none()))
        .collect();
    Morphism::from_components(setting, prime, doubleprime)
}

/// The scalar-headed cochain `c(a_1, …, a_l) = coef · x^β ∂^{α_1}(a_1)_{j_1} ⋯`
/// from one term; convenient for building examples.
pub fn generator(
    n: usize,
    bound: u32,
    head: Head,
    slots: Vec<crate::symbol::Slot>,
    coef: Rational,
) -> TensorSymbol {
    let arity = slots.len();
    let mut s = TensorSymbol::zero(n, arity, bound);
    s.add_term(Term::new(head, slots), &ThetaScalar::constant(coef));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::Deformation;
    use crate::ring::rational::rat;
    use crate::ring::{MultiIndex, SymbolTable};
    use crate::solver::{mc_residual, solve_recursion, verify_component_equations};
    use crate::symbol::Slot;

    fn setting(order: usize) -> Setting {
        let mut table = SymbolTable::new();
        let tp = Deformation::symbolic(2, "u", &mut table);
        Setting::new(Deformation::zero(2), tp, table, order, 2).unwrap()
    }

    fn curl_z(w: u32) -> TensorSymbol {
        let mut z = TensorSymbol::zero(2, 1, w);
        z.add_term(
            Term::new(Head::xi(2, 0), [Slot::zeta(MultiIndex::unit(2, 1), 0)]),
            &ThetaScalar::constant(rat(1, 2)),
        );
        z.add_term(
            Term::new(Head::xi(2, 0), [Slot::zeta(MultiIndex::unit(2, 0), 1)]),
            &ThetaScalar::constant(rat(-1, 2)),
        );
        z
    }

    fn sample_c(w: u32, arity: usize) -> TensorSymbol {
        let slots = (0..arity)
            .map(|k| Slot::zeta(MultiIndex::unit(2, k % 2), (k + 1) % 2))
            .collect();
        let mut head = Head::scalar(2);
        head.exp = MultiIndex::unit(2, 0);
        generator(2, w, head, slots, rat(3, 1))
    }

    #[test]
    fn zero_cocycle() {
        let s = setting(2);
        let w = s.weight_bound();
        let g = make_cocycle(
            &s,
            1,
            TensorSymbol::zero(2, 1, w),
            TensorSymbol::zero(2, 1, w),
        )
        .unwrap();
        assert!(g.is_zero());
        let f = solve_recursion(s).unwrap();
        assert_eq!(shift_by_cocycle(&f, &g).unwrap(), f);
        let r = obstruction_class(&f, &f).unwrap();
        assert_eq!(r.order, None);
        assert!(r.is_zero);
    }

    #[test]
    fn curl_cocycle_is_closed_and_nontrivial() {
        let s = setting(2);
        let w = s.weight_bound();
        let z = curl_z(w);
        let g = make_cocycle(&s, 1, z.clone(), TensorSymbol::zero(2, 1, w)).unwrap();
        assert!(is_delta_closed(&g.prime));
        let f = solve_recursion(s).unwrap();
        let ft = shift_by_cocycle(&f, &g).unwrap();
        assert!(verify_component_equations(&ft, 2, 2).unwrap().pass);
        let r = obstruction_class(&f, &ft).unwrap();
        assert_eq!(r.order, Some(1));
        assert!(!r.is_zero);
        assert_eq!(r.representative, z);
        let back = obstruction_class(&ft, &f).unwrap();
        assert_eq!(back.representative, z.neg());
    }

    #[test]
    fn non_curl_z_is_rejected() {
        let s = setting(1);
        let w = s.weight_bound();
        let mut z = TensorSymbol::zero(2, 1, w);
        z.add_term(
            Term::new(Head::xi(2, 0), [Slot::zeta(MultiIndex::unit(2, 0), 0)]),
            &ThetaScalar::one(),
        );
        assert!(make_cocycle(&s, 1, z, TensorSymbol::zero(2, 1, w)).is_err());
    }

    #[test]
    fn exact_shift_has_zero_class() {
        let s = setting(3);
        let w = s.weight_bound();
        let f = solve_recursion(s.clone()).unwrap();
        for l in 1..=2 {
            let g = make_cocycle(&s, l, TensorSymbol::zero(2, l, w), sample_c(w, l)).unwrap();
            assert!(g.is_exact() && !g.is_zero());
            let ft = shift_by_cocycle(&f, &g).unwrap();
            assert!(mc_residual(&ft).iter().all(TensorSymbol::is_zero));
            let r = obstruction_class(&f, &ft).unwrap();
            assert_eq!(r.order, Some(l));
            assert!(r.is_zero);
        }
    }

    #[test]
    fn d_prime_of_zeta_cochain_is_exact() {
        // z = d'∘c with c π-fixed: π-fixed itself, yet trivial.
        let s = setting(1);
        let w = s.weight_bound();
        let mut c = TensorSymbol::zero(2, 1, w);
        c.add_term(
            Term::new(Head::scalar(2), [Slot::zeta(MultiIndex::unit(2, 1), 0)]),
            &ThetaScalar::one(),
        );
        c.add_term(
            Term::new(Head::scalar(2), [Slot::zeta(MultiIndex::unit(2, 0), 1)]),
            &-ThetaScalar::one(),
        );
        let z = c.postcompose_d();
        assert_eq!(z.projector(), z);
        let (rep, zero) = cocycle_class(&z).unwrap();
        assert_eq!(rep, z);
        assert!(zero);
    }

    #[test]
    fn convolution_differential_is_a_derivation() {
        let s = setting(3);
        let w = s.weight_bound();
        let conv = Convolution {
            setting: &s,
            order: 3,
        };
        let f = solve_recursion(s.clone()).unwrap();
        let x: Cochain = (1..=3).map(|m| f.full(m)).collect();
        let mut c = conv.zero();
        c[0] = sample_c(w, 1);
        // D² = 0 on even and odd elements.
        let dc = conv.differential(&c, false);
        assert!(conv
            .differential(&dc, true)
            .iter()
            .all(TensorSymbol::is_zero));
        // D(c ⋆ x) = Dc ⋆ x + c ⋆ Dx.
        let lhs = conv.differential(&conv.product(&c, &x, true), true);
        let dx = conv.differential(&x, true);
        let rhs = conv.add(&conv.product(&dc, &x, true), &conv.product(&c, &dx, false));
        for (a, b) in lhs.iter().zip(&rhs) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn defect_matches_solver_residual() {
        let s = setting(3);
        let f = solve_recursion(s.clone()).unwrap();
        let conv = Convolution {
            setting: &s,
            order: 3,
        };
        let mut x: Cochain = (1..=3).map(|m| f.full(m)).collect();
        x[1] = TensorSymbol::zero(2, 2, s.weight_bound());
        let g = Morphism::from_components(
            s.clone(),
            x.iter()
                .map(|t| t.filter(|u| u.head.xi.is_some()))
                .collect(),
            x.iter()
                .map(|t| t.filter(|u| u.head.xi.is_none()))
                .collect(),
        )
        .unwrap();
        assert_eq!(mc_defect(&conv, &x), mc_residual(&g));
    }

    #[test]
    fn gauge_transform_preserves_mc_and_descends() {
        let s = setting(3);
        let w = s.weight_bound();
        let f = solve_recursion(s.clone()).unwrap();
        assert_eq!(
            gauge_transform(&f, &TensorSymbol::zero(2, 1, w), 3).unwrap(),
            f
        );
        for l in 1..=2 {
            let c = sample_c(w, l);
            let fg = gauge_transform(&f, &c, 3).unwrap();
            assert!(
                mc_residual(&fg).iter().all(TensorSymbol::is_zero),
                "order {l}"
            );
            let exact = make_cocycle(&s, l, TensorSymbol::zero(2, l, w), c).unwrap();
            let ft = shift_by_cocycle(&f, &exact).unwrap();
            for m in 1..=l {
                assert_eq!(ft.full(m), fg.full(m));
            }
            let r = obstruction_class(&fg, &ft).unwrap();
            assert!(r.order.is_none_or(|m| m > l));
        }
    }
}
