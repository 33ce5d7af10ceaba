//! Right-hand sides of the morphism equations and the homotopy recursion
//! `f''_l = h_l Θ''_l`, `f'_l = h_l Θ'_l`.

use rayon::prelude::*;

use super::morphism::{Morphism, Setting};
use crate::error::{Error, Result};
use crate::symbol::{TensorSymbol, Term};

fn odd_scalar_slots(t: &Term) -> bool {
    t.scalar_slot_count() % 2 == 1
}

/// `Ψ_l = Σ_i (−1)^{ā_1..ā_i} f_{l−1}(…, a_i ∗_θ a_{i+1}, …)
///      − Σ_i (−1)^{ā_1..ā_i} f_i(a_1..a_i) ∗_{θ'} f_{l−i}(a_{i+1}..a_l)`.
pub fn psi(f: &Morphism, l: usize) -> TensorSymbol {
    let s = &f.setting;
    let w = s.weight_bound();
    if l < 2 {
        return TensorSymbol::zero(s.n, l, w);
    }
    let prev = f.full(l - 1);
    let mut pieces: Vec<TensorSymbol> = (0..l - 1)
        .into_par_iter()
        .map(|i| {
            let mut out = TensorSymbol::zero(s.n, l, w);
            prev.merge_at(i, &s.theta, true, &mut out);
            out
        })
        .collect();
    let products: Vec<TensorSymbol> = (1..l)
        .into_par_iter()
        .map(|i| {
            f.full(i)
                .compose(&f.full(l - i), &s.theta_prime, w, odd_scalar_slots)
                .neg()
        })
        .collect();
    pieces.extend(products);
    sum(s.n, l, w, pieces)
}

fn sum(n: usize, arity: usize, w: u32, pieces: Vec<TensorSymbol>) -> TensorSymbol {
    let mut total = TensorSymbol::zero(n, arity, w);
    for p in &pieces {
        total.add_assign(p);
    }
    total
}

fn check_lower(f: &Morphism, l: usize) -> Result<()> {
    if f.order() < l - 1 {
        return Err(Error::MissingComponent(f.order() + 1));
    }
    if !f.is_unital() {
        return Err(Error::NotUnital);
    }
    for m in 2..l {
        if !f.prime(m).is_normal() || !f.doubleprime(m).is_normal() {
            return Err(Error::NonNormal { order: m });
        }
    }
    Ok(())
}

/// `∂_l Θ = 0` and `π_l Θ = 0`.
fn assert_solvable(theta: &TensorSymbol, l: usize, which: &str) -> Result<()> {
    let d = theta.dual_differential();
    if !d.is_zero() {
        return Err(Error::CocycleAssertion {
            order: l,
            detail: format!("{which} is not ∂-closed ({} terms survive)", d.num_terms()),
        });
    }
    let p = theta.projector();
    if !p.is_zero() {
        return Err(Error::CocycleAssertion {
            order: l,
            detail: format!(
                "{which} has a nonzero π-projection ({} terms)",
                p.num_terms()
            ),
        });
    }
    Ok(())
}

fn split_psi(psi: &TensorSymbol, l: usize) -> Result<(TensorSymbol, TensorSymbol)> {
    let two = psi.filter(|t| t.head.xi.is_none() && t.scalar_slot_count() == 2);
    let one = psi.filter(|t| t.head.xi.is_some() && t.scalar_slot_count() == 1);
    if two.num_terms() + one.num_terms() != psi.num_terms() {
        return Err(Error::CocycleAssertion {
            order: l,
            detail: "right-hand side has terms of Hom-degree other than one".into(),
        });
    }
    Ok((two, one))
}

/// `Θ''_l`: the part of `−Ψ_l` with two degree-0 arguments.
pub fn build_theta_doubleprime(f: &Morphism, l: usize) -> Result<TensorSymbol> {
    check_lower(f, l)?;
    let (two, _) = split_psi(&psi(f, l), l)?;
    let theta = two.neg();
    assert_solvable(&theta, l, "Θ''")?;
    Ok(theta)
}

/// `Θ'_l = d' ∘ f''_l − Ψ_l^{(1)}`, the part with one degree-0 argument.
pub fn build_theta_prime(f: &Morphism, l: usize, fpp: &TensorSymbol) -> Result<TensorSymbol> {
    check_lower(f, l)?;
    let (_, one) = split_psi(&psi(f, l), l)?;
    let theta = fpp.postcompose_d().sub(&one);
    assert_solvable(&theta, l, "Θ'")?;
    Ok(theta)
}

/// Solve order `l` given `f_1..f_{l−1}`; returns `(f'_l, f''_l)`.
pub fn solve_order(f: &Morphism, l: usize) -> Result<(TensorSymbol, TensorSymbol)> {
    check_lower(f, l)?;
    let (two, one) = split_psi(&psi(f, l), l)?;
    let theta2 = two.neg();
    assert_solvable(&theta2, l, "Θ''")?;
    let fpp = theta2.homotopy();
    let theta1 = fpp.postcompose_d().sub(&one);
    assert_solvable(&theta1, l, "Θ'")?;
    let fp = theta1.homotopy();
    Ok((fp, fpp))
}

/// `f_1 = id`, with `f'_1 = h_1 d'∘f''_1`.
pub fn first_component(setting: Setting) -> Result<Morphism> {
    let w = setting.weight_bound();
    let n = setting.n;
    let fpp1 = TensorSymbol::identity_scalar(n, w);
    let theta1 = fpp1.postcompose_d();
    assert_solvable(&theta1, 1, "Θ'")?;
    let fp1 = theta1.homotopy();
    Morphism::from_components(setting, vec![fp1], vec![fpp1])
}

/// `f_1 = id`, then the recursion up to `L`.
pub fn solve_recursion(setting: Setting) -> Result<Morphism> {
    let order = setting.order;
    let mut f = first_component(setting)?;
    extend(&mut f, order)?;
    Ok(f)
}

/// Solve the orders `f.order()+1 ..= up_to` in place.
pub fn extend(f: &mut Morphism, up_to: usize) -> Result<()> {
    for l in f.order() + 1..=up_to {
        let (fp, fpp) = solve_order(f, l)?;
        f.push(fp, fpp);
    }
    Ok(())
}

/// `R_l = d'∘f_l − ∂_l f_l − Ψ_l` for `l = 1..=f.order()`.
pub fn mc_residual(f: &Morphism) -> Vec<TensorSymbol> {
    (1..=f.order())
        .map(|l| {
            let fl = f.full(l);
            fl.postcompose_d()
                .sub(&fl.dual_differential())
                .sub(&psi(f, l))
        })
        .collect()
}
