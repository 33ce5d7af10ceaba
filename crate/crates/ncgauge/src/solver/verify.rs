//! Direct evaluation of the component equations on monomial argument
//! tuples, using only realization and the concrete star product. This path
//! shares no code with the symbol-level construction of the right-hand
//! sides.

use rayon::prelude::*;

use super::morphism::Morphism;
use crate::dga::{differential_d, star, AElement, Deformation};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::ring::{MultiIndex, SymbolTable, ThetaScalar};
use crate::symbol::{Realizer, TensorSymbol};

/// Monomials `x^β` with `|β| ≤ degree`.
pub fn scalar_basis(n: usize, degree: u32) -> Vec<AElement> {
    MultiIndex::all_up_to_degree(n, degree)
        .into_iter()
        .map(|m| AElement::monomial(n, m, None, ThetaScalar::one()))
        .collect()
}

/// Monomials `x^β ξ^j` with `|β| ≤ degree`.
pub fn one_form_basis(n: usize, degree: u32) -> Vec<AElement> {
    let mut out = Vec::new();
    for m in MultiIndex::all_up_to_degree(n, degree) {
        for j in 0..n {
            out.push(AElement::monomial(
                n,
                m.clone(),
                Some(j),
                ThetaScalar::one(),
            ));
        }
    }
    out
}

/// All index tuples of length `len` over `0..size`.
pub(crate) fn tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

struct Evaluator<'a> {
    realizers: Vec<Realizer<'a>>,
    theta: &'a Deformation,
    theta_prime: &'a Deformation,
}

impl Evaluator<'_> {
    /// `f_m(args)`, `m ≥ 1`.
    fn f(&self, args: &[AElement]) -> AElement {
        self.realizers[args.len() - 1]
            .eval(args)
            .expect("arity and dimension checked")
    }

    fn st(&self, a: &AElement, b: &AElement) -> AElement {
        star(a, b, self.theta).expect("dimension checked")
    }

    fn st_prime(&self, a: &AElement, b: &AElement) -> AElement {
        star(a, b, self.theta_prime).expect("dimension checked")
    }
}

fn concat(parts: &[&[AElement]]) -> Vec<AElement> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn render_args(args: &[AElement], table: &SymbolTable) -> String {
    let v: Vec<String> = args.iter().map(|a| a.render(table)).collect();
    format!("({})", v.join(", "))
}

/// Evaluate both sides of every instance of the two families of component
/// equations at order `l` on the monomial basis of x-degree `≤ basis_degree`.
pub fn verify_component_equations(
    f: &Morphism,
    l: usize,
    basis_degree: u32,
) -> Result<VerificationReport> {
    let s = &f.setting;
    if l == 0 || l > f.order() {
        return Err(Error::MissingComponent(l));
    }
    if basis_degree > s.degree_bound {
        return Err(Error::TruncationExceeded {
            degree: basis_degree,
            bound: s.degree_bound,
        });
    }
    let restricted: Vec<TensorSymbol> = (1..=l)
        .map(|m| f.full(m).restrict_slot_degrees(&vec![2 * basis_degree; m]))
        .collect();
    let ev = Evaluator {
        realizers: restricted.iter().map(Realizer::new).collect(),
        theta: &s.theta,
        theta_prime: &s.theta_prime,
    };
    let ones = one_form_basis(s.n, basis_degree);
    let scalars = scalar_basis(s.n, basis_degree);
    let mut report = VerificationReport::new("component equations").with_order(l);

    // First family: one degree-0 argument b at position k.
    let mut r1_jobs = Vec::new();
    for k in 0..l {
        for a in tuples(ones.len(), l - 1) {
            for b in 0..scalars.len() {
                r1_jobs.push((k, a.clone(), b));
            }
        }
    }
    let r1: Vec<Option<String>> = r1_jobs
        .par_iter()
        .map(|(k, ai, bi)| {
            let a: Vec<AElement> = ai.iter().map(|&i| ones[i].clone()).collect();
            let b = &scalars[*bi];
            let diff = r1_difference(&ev, &a, b, *k);
            (!diff.is_zero()).then(|| {
                format!(
                    "first family, k = {k}, a = {}, b = {}: lhs − rhs = {}",
                    render_args(&a, &s.symbols),
                    b.render(&s.symbols),
                    diff.render(&s.symbols)
                )
            })
        })
        .collect();
    report.instances += r1.len();

    // Second family: degree-0 arguments b1 at position k and b2 at position s.
    let mut r2_jobs = Vec::new();
    if l >= 2 {
        for sp in 1..l {
            for k in 0..sp {
                for a in tuples(ones.len(), l - 2) {
                    for b1 in 0..scalars.len() {
                        for b2 in 0..scalars.len() {
                            r2_jobs.push((k, sp, a.clone(), b1, b2));
                        }
                    }
                }
            }
        }
    }
    let r2: Vec<Option<String>> = r2_jobs
        .par_iter()
        .map(|(k, sp, ai, b1, b2)| {
            let a: Vec<AElement> = ai.iter().map(|&i| ones[i].clone()).collect();
            let (b1, b2) = (&scalars[*b1], &scalars[*b2]);
            let diff = r2_difference(&ev, &a, b1, b2, *k, *sp);
            (!diff.is_zero()).then(|| {
                format!(
                    "second family, k = {k}, s = {sp}, a = {}, b1 = {}, b2 = {}: lhs − rhs = {}",
                    render_args(&a, &s.symbols),
                    b1.render(&s.symbols),
                    b2.render(&s.symbols),
                    diff.render(&s.symbols)
                )
            })
        })
        .collect();
    report.instances += r2.len();
    for w in r1.into_iter().chain(r2).flatten() {
        report.fail(w);
    }
    Ok(report)
}

/// `a` holds `a_1..a_{l−1}`; `b` sits at position `k`.
fn r1_difference(ev: &Evaluator, a: &[AElement], b: &AElement, k: usize) -> AElement {
    let l = a.len() + 1;
    let db = differential_d(b);
    let lhs = ev.f(&concat(&[&a[..k], &[db], &a[k..]]));
    let mut rhs = differential_d(&ev.f(&concat(&[&a[..k], std::slice::from_ref(b), &a[k..]])));
    if l >= 2 {
        if k >= 1 {
            let m = ev.st(&a[k - 1], b);
            rhs = rhs.sub(&ev.f(&concat(&[&a[..k - 1], &[m], &a[k..]])));
        }
        if k < l - 1 {
            let m = ev.st(b, &a[k]);
            rhs = rhs.add(&ev.f(&concat(&[&a[..k], &[m], &a[k + 1..]])));
        }
    }
    for nn in 1..=k {
        let left = ev.f(&a[..nn]);
        let right = ev.f(&concat(&[&a[nn..k], std::slice::from_ref(b), &a[k..]]));
        rhs = rhs.add(&ev.st_prime(&left, &right));
    }
    for nn in k + 1..l {
        let left = ev.f(&concat(&[&a[..k], std::slice::from_ref(b), &a[k..nn - 1]]));
        let right = ev.f(&a[nn - 1..]);
        rhs = rhs.sub(&ev.st_prime(&left, &right));
    }
    lhs.sub(&rhs)
}

/// `a` holds `a_1..a_{l−2}`; `b1` at position `k`, `b2` at position `s`.
fn r2_difference(
    ev: &Evaluator,
    a: &[AElement],
    b1: &AElement,
    b2: &AElement,
    k: usize,
    s: usize,
) -> AElement {
    let l = a.len() + 2;
    let (b1, b2) = (b1.clone(), b2.clone());
    let args = |x: AElement, y: AElement| concat(&[&a[..k], &[x], &a[k..s - 1], &[y], &a[s - 1..]]);
    let lhs = ev
        .f(&args(differential_d(&b1), b2.clone()))
        .sub(&ev.f(&args(b1.clone(), differential_d(&b2))));
    let mut rhs = AElement::zero(b1.dim());
    if k >= 1 {
        let m = ev.st(&a[k - 1], &b1);
        rhs = rhs.sub(&ev.f(&concat(&[
            &a[..k - 1],
            &[m],
            &a[k..s - 1],
            std::slice::from_ref(&b2),
            &a[s - 1..],
        ])));
    }
    if k + 1 < s {
        let m = ev.st(&b1, &a[k]);
        rhs = rhs.add(&ev.f(&concat(&[
            &a[..k],
            &[m],
            &a[k + 1..s - 1],
            std::slice::from_ref(&b2),
            &a[s - 1..],
        ])));
    }
    if s > k + 1 {
        let m = ev.st(&a[s - 2], &b2);
        rhs = rhs.add(&ev.f(&concat(&[
            &a[..k],
            std::slice::from_ref(&b1),
            &a[k..s - 2],
            &[m],
            &a[s - 1..],
        ])));
    }
    if s <= l - 2 {
        let m = ev.st(&b2, &a[s - 1]);
        rhs = rhs.sub(&ev.f(&concat(&[
            &a[..k],
            std::slice::from_ref(&b1),
            &a[k..s - 1],
            &[m],
            &a[s..],
        ])));
    }
    if k == s - 1 {
        let m = ev.st(&b1, &b2);
        rhs = rhs.add(&ev.f(&concat(&[&a[..k], &[m], &a[k..]])));
    }
    for nn in k..s {
        let left = ev.f(&concat(&[&a[..k], std::slice::from_ref(&b1), &a[k..nn]]));
        let right = ev.f(&concat(&[
            &a[nn..s - 1],
            std::slice::from_ref(&b2),
            &a[s - 1..],
        ]));
        rhs = rhs.sub(&ev.st_prime(&left, &right));
    }
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_recursion, Setting};

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(3, 2).len(), 9);
        assert_eq!(tuples(5, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn identity_passes_first_order() {
        let mut table = SymbolTable::new();
        let tp = Deformation::symbolic(2, "u", &mut table);
        let s = Setting::new(Deformation::zero(2), tp, table, 1, 2).unwrap();
        let f = solve_recursion(s).unwrap();
        let r = verify_component_equations(&f, 1, 2).unwrap();
        assert!(r.pass, "{}", r.summary());
    }

    #[test]
    fn order_two_passes() {
        let mut table = SymbolTable::new();
        let tp = Deformation::symbolic(2, "u", &mut table);
        let s = Setting::new(Deformation::zero(2), tp, table, 2, 2).unwrap();
        let f = solve_recursion(s).unwrap();
        let r = verify_component_equations(&f, 2, 2).unwrap();
        assert!(r.pass, "{}", r.summary());
    }
}
