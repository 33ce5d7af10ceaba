//! The Seiberg–Witten map obtained from a morphism: `Â(A)` from the prime
//! components, `λ̂(λ, A)` from the doubleprime ones, and exact checks of the
//! gauge-equivalence and gauge-consistency conditions per homogeneity in A.

use rand::Rng;

use crate::dga::{commutator, differential_d, AElement, Deformation};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::ring::rational::int;
use crate::ring::{MultiIndex, Rational, ThetaScalar, XPolynomial};
use crate::solver::{Morphism, Setting};
use crate::symbol::{Head, Slot, TensorSymbol, Term};

/// Gauge field and parameters for one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeConfig {
    pub field: AElement,
    pub lambda: XPolynomial,
    pub lambda1: XPolynomial,
    pub lambda2: XPolynomial,
}

/// Polynomial with integer coefficients in `[-3, 3]` on the monomials of
/// degree `≤ degree`, each present with probability one half.
pub fn random_polynomial(n: usize, degree: u32, rng: &mut impl Rng) -> XPolynomial {
    let mut p = XPolynomial::zero(n);
    for m in MultiIndex::all_up_to_degree(n, degree) {
        if rng.gen_bool(0.5) {
            p.add_term(m, &ThetaScalar::constant(int(rng.gen_range(-3..=3))));
        }
    }
    p
}

impl GaugeConfig {
    pub fn random(n: usize, degree: u32, rng: &mut impl Rng) -> Self {
        GaugeConfig {
            field: AElement::one_form((0..n).map(|_| random_polynomial(n, degree, rng)).collect()),
            lambda: random_polynomial(n, degree, rng),
            lambda1: random_polynomial(n, degree, rng),
            lambda2: random_polynomial(n, degree, rng),
        }
    }

    /// Both conditions at truncation `order`.
    pub fn check(
        &self,
        f: &Morphism,
        order: usize,
    ) -> Result<(VerificationReport, VerificationReport)> {
        Ok((
            check_sw1(f, &self.field, &self.lambda, order, None)?,
            check_sw2(f, &self.field, &self.lambda1, &self.lambda2, order)?,
        ))
    }
}

fn check_field(f: &Morphism, a: &AElement) -> Result<()> {
    a.require_degree_one("gauge field")?;
    if a.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: a.dim(),
        });
    }
    check_degree(f, a.x_degree())
}

fn check_degree(f: &Morphism, degree: Option<u32>) -> Result<()> {
    match degree {
        Some(d) if d > f.setting.degree_bound => Err(Error::TruncationExceeded {
            degree: d,
            bound: f.setting.degree_bound,
        }),
        _ => Ok(()),
    }
}

fn check_order(f: &Morphism, order: usize) -> Result<()> {
    if order > f.order() {
        return Err(Error::MissingComponent(f.order() + 1));
    }
    Ok(())
}

/// Arguments `(A, …, A)` of length `m` with `x` inserted at `pos`.
fn with_insert(a: &AElement, m: usize, inserts: &[(usize, &AElement)]) -> Vec<AElement> {
    let mut v = vec![a.clone(); m];
    for (pos, x) in inserts {
        v[*pos] = (*x).clone();
    }
    v
}

/// `f'_h(A, …, A)`; zero for `h = 0`.
fn field_part(f: &Morphism, a: &AElement, h: usize) -> Result<AElement> {
    if h == 0 {
        return Ok(AElement::zero(f.dim()));
    }
    f.prime(h).realize(&vec![a.clone(); h])
}

/// `Σ_k f''_{h+1,k}(A, …, λ at k, …, A)`.
fn param_part(f: &Morphism, lambda: &AElement, a: &AElement, h: usize) -> Result<AElement> {
    let m = h + 1;
    let mut out = AElement::zero(f.dim());
    for k in 0..m {
        out = out.add(
            &f.doubleprime(m)
                .realize(&with_insert(a, m, &[(k, lambda)]))?,
        );
    }
    Ok(out)
}

/// `Â = Σ_{l ≤ L} f'_l(A, …, A)`.
pub fn evaluate_gauge_field(f: &Morphism, a: &AElement, order: usize) -> Result<AElement> {
    check_field(f, a)?;
    check_order(f, order)?;
    let mut out = AElement::zero(f.dim());
    for h in 1..=order {
        out = out.add(&field_part(f, a, h)?);
    }
    Ok(out)
}

/// `λ̂ = Σ_{l ≤ L} Σ_k f''_{l,k}(A, …, λ, …, A)`.
pub fn evaluate_gauge_param(
    f: &Morphism,
    lambda: &XPolynomial,
    a: &AElement,
    order: usize,
) -> Result<XPolynomial> {
    check_field(f, a)?;
    check_order(f, order)?;
    check_degree(f, lambda.degree())?;
    let lam = AElement::scalar(lambda.clone());
    let mut out = AElement::zero(f.dim());
    for h in 0..order {
        out = out.add(&param_part(f, &lam, a, h)?);
    }
    Ok(out.a0)
}

/// Variation of the A-homogeneity-`h` part of `λ̂(λ)` under `A ↦ A + D_A μ`
/// with `D_A μ = dμ + [A, μ]_θ`, by replacing one `A` slot.
fn param_variation(
    f: &Morphism,
    lambda: &AElement,
    mu: &AElement,
    a: &AElement,
    h: usize,
) -> Result<AElement> {
    let theta = &f.setting.theta;
    let dmu = differential_d(mu);
    let amu = commutator(a, mu, theta)?;
    let mut out = AElement::zero(f.dim());
    let m = h + 2;
    for k in 0..m {
        for j in (0..m).filter(|&j| j != k) {
            out = out.add(&f.doubleprime(m).realize(&with_insert(
                a,
                m,
                &[(k, lambda), (j, &dmu)],
            ))?);
        }
    }
    let m = h + 1;
    if !amu.is_zero() {
        for k in 0..m {
            for j in (0..m).filter(|&j| j != k) {
                out = out.add(&f.doubleprime(m).realize(&with_insert(
                    a,
                    m,
                    &[(k, lambda), (j, &amu)],
                ))?);
            }
        }
    }
    Ok(out)
}

fn compare(
    report: &mut VerificationReport,
    h: usize,
    lhs: &AElement,
    rhs: &AElement,
    max_theta_degree: Option<u32>,
    f: &Morphism,
) {
    let cut = |e: &AElement| match max_theta_degree {
        Some(d) => e.truncate_theta_degree(d),
        None => e.clone(),
    };
    let diff = cut(lhs).sub(&cut(rhs));
    report.instances += 1;
    report.degrees_checked.push(h as u32);
    if !diff.is_zero() {
        report.fail(format!(
            "homogeneity {h}: lhs − rhs = {}",
            diff.render(&f.setting.symbols)
        ));
    }
}

/// Gauge equivalence: for each A-homogeneity `h ≤ L−1`,
/// `Σ f'(A, …, D_Aλ, …, A) = dλ̂ + Â ∗_{θ'} λ̂ − λ̂ ∗_{θ'} Â` in degree `h`.
/// With `max_theta_degree`, both sides are truncated in the deformation
/// symbols first.
pub fn check_sw1(
    f: &Morphism,
    a: &AElement,
    lambda: &XPolynomial,
    order: usize,
    max_theta_degree: Option<u32>,
) -> Result<VerificationReport> {
    check_field(f, a)?;
    check_order(f, order)?;
    check_degree(f, lambda.degree())?;
    let s = &f.setting;
    let lam = AElement::scalar(lambda.clone());
    let dlam = differential_d(&lam);
    let alam = commutator(a, &lam, &s.theta)?;
    let fields: Vec<AElement> = (0..order)
        .map(|h| field_part(f, a, h))
        .collect::<Result<_>>()?;
    let params: Vec<AElement> = (0..order)
        .map(|h| param_part(f, &lam, a, h))
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("sw1");
    for h in 0..order {
        let m = h + 1;
        let mut lhs = AElement::zero(s.n);
        for pos in 0..m {
            lhs = lhs.add(&f.prime(m).realize(&with_insert(a, m, &[(pos, &dlam)]))?);
        }
        if h >= 1 && !alam.is_zero() {
            for pos in 0..h {
                lhs = lhs.add(&f.prime(h).realize(&with_insert(a, h, &[(pos, &alam)]))?);
            }
        }
        let mut rhs = differential_d(&params[h]);
        for i in 1..=h {
            rhs = rhs.add(&commutator(&fields[i], &params[h - i], &s.theta_prime)?);
        }
        compare(&mut report, h, &lhs, &rhs, max_theta_degree, f);
    }
    Ok(report)
}

/// Gauge consistency: for each A-homogeneity `h ≤ L−2`,
/// `δ_{λ2}λ̂1 − δ_{λ1}λ̂2 = [λ̂1, λ̂2]_{θ'} − λ̂([λ1, λ2]_θ)` in degree `h`.
pub fn check_sw2(
    f: &Morphism,
    a: &AElement,
    lambda1: &XPolynomial,
    lambda2: &XPolynomial,
    order: usize,
) -> Result<VerificationReport> {
    check_field(f, a)?;
    check_order(f, order)?;
    check_degree(f, lambda1.degree())?;
    check_degree(f, lambda2.degree())?;
    let s = &f.setting;
    let l1 = AElement::scalar(lambda1.clone());
    let l2 = AElement::scalar(lambda2.clone());
    let l12 = commutator(&l1, &l2, &s.theta)?;
    let p1: Vec<AElement> = (0..order)
        .map(|h| param_part(f, &l1, a, h))
        .collect::<Result<_>>()?;
    let p2: Vec<AElement> = (0..order)
        .map(|h| param_part(f, &l2, a, h))
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("sw2");
    for h in 0..order.saturating_sub(1) {
        let lhs = param_variation(f, &l1, &l2, a, h)?.sub(&param_variation(f, &l2, &l1, a, h)?);
        let mut rhs = param_part(f, &l12, a, h)?.neg();
        for i in 0..=h {
            rhs = rhs.add(&commutator(&p1[i], &p2[h - i], &s.theta_prime)?);
        }
        compare(&mut report, h, &lhs, &rhs, None, f);
    }
    Ok(report)
}

/// The closed-form first-order map as a morphism truncated at order 2,
/// with the target matrix as deformation:
/// `f'_2(A, B)_i = −½θ^{kj} A_k (2∂_j B_i − ∂_i B_j)`,
/// `f''_{2,0}(λ, A) = ½θ^{ij} ∂_iλ A_j`, `f''_{2,1} = 0`.
pub fn first_order_morphism(setting: &Setting) -> Result<Morphism> {
    let n = setting.n;
    let w = setting.weight_bound();
    let theta: &Deformation = &setting.theta_prime;
    let half = Rational::new(1.into(), 2.into());
    let zero = MultiIndex::zero(n);
    let mut fp2 = TensorSymbol::zero(n, 2, w);
    let mut fpp2 = TensorSymbol::zero(n, 2, w);
    for k in 0..n {
        for j in 0..n {
            let t = theta.get(k, j);
            if t.is_zero() {
                continue;
            }
            for i in 0..n {
                fp2.add_term(
                    Term::new(
                        Head::xi(n, i),
                        [
                            Slot::zeta(zero.clone(), k),
                            Slot::zeta(MultiIndex::unit(n, j), i),
                        ],
                    ),
                    &-&t,
                );
                fp2.add_term(
                    Term::new(
                        Head::xi(n, i),
                        [
                            Slot::zeta(zero.clone(), k),
                            Slot::zeta(MultiIndex::unit(n, i), j),
                        ],
                    ),
                    &t.scale(&half),
                );
            }
            fpp2.add_term(
                Term::new(
                    Head::scalar(n),
                    [
                        Slot::scalar(MultiIndex::unit(n, k)),
                        Slot::zeta(zero.clone(), j),
                    ],
                ),
                &t.scale(&half),
            );
        }
    }
    let mut f = Morphism::identity(Setting {
        order: 2,
        ..setting.clone()
    });
    f.push(fp2, fpp2);
    Ok(f)
}

/// `A-homogeneity` parts of `Â`, for inspection.
pub fn gauge_field_parts(f: &Morphism, a: &AElement, order: usize) -> Result<Vec<AElement>> {
    check_field(f, a)?;
    check_order(f, order)?;
    (1..=order).map(|h| field_part(f, a, h)).collect()
}
