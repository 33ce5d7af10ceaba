//! Symbols of polydifferential operators `a ⊗ φ_1 ⊗ ... ⊗ φ_l`: a head
//! `c x^β (ξ^j)` followed by one slot per argument.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

use super::slot::{Slot, SlotCombination};
use crate::dga::AElement;
use crate::error::{Error, Result};
use crate::ring::{MultiIndex, Rational, SymbolTable, ThetaScalar, XPolynomial};

/// The `A_{θ'}` factor of a term: `x^exp`, times `ξ^xi` if present (0-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Head {
    pub exp: MultiIndex,
    pub xi: Option<u16>,
}

impl Head {
    pub fn scalar(n: usize) -> Self {
        Head {
            exp: MultiIndex::zero(n),
            xi: None,
        }
    }

    pub fn xi(n: usize, j: usize) -> Self {
        Head {
            exp: MultiIndex::zero(n),
            xi: Some(j as u16),
        }
    }

    pub fn degree(&self) -> i32 {
        i32::from(self.xi.is_some())
    }
}

pub type Slots = SmallVec<[Slot; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Term {
    pub head: Head,
    pub slots: Slots,
}

impl Term {
    pub fn new(head: Head, slots: impl IntoIterator<Item = Slot>) -> Self {
        Term {
            head,
            slots: slots.into_iter().collect(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.slots.iter().map(Slot::weight).sum()
    }

    /// Number of slots reading a degree-0 argument.
    pub fn scalar_slot_count(&self) -> usize {
        self.slots.iter().filter(|s| s.reads_scalar()).count()
    }

    /// Position of the first scalar slot.
    pub fn scalar_position(&self) -> Option<usize> {
        self.slots.iter().position(Slot::reads_scalar)
    }

    /// `(−1)^{number of scalar slots before position i}`: the bar-degree sign
    /// of the arguments preceding slot `i`.
    pub fn sign_before(&self, i: usize) -> bool {
        self.slots[..i].iter().filter(|s| s.reads_scalar()).count() % 2 == 1
    }

    /// Hom-degree: `Σ deg φ_k + deg a + l − 1`, with `deg φ = −1` on ζ slots.
    pub fn degree(&self) -> i32 {
        let slot_deg: i32 = self.slots.iter().map(|s| -i32::from(s.arg_degree())).sum();
        slot_deg + self.head.degree() + self.slots.len() as i32 - 1
    }

    pub fn signature(&self) -> SlotTypeSignature {
        SlotTypeSignature(self.slots.iter().map(Slot::arg_degree).collect())
    }
}

/// Argument degree (0 or 1) expected at each slot position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SlotTypeSignature(pub Vec<u8>);

impl SlotTypeSignature {
    /// All slots read degree-1 arguments.
    pub fn all_one_forms(l: usize) -> Self {
        SlotTypeSignature(vec![1; l])
    }

    /// Degree-0 argument at position `k`, degree-1 elsewhere.
    pub fn scalar_at(l: usize, k: usize) -> Self {
        let mut v = vec![1; l];
        v[k] = 0;
        SlotTypeSignature(v)
    }
}

/// Sparse sum of terms with `ThetaScalar` coefficients. Terms whose weight
/// (sum of slot weights) exceeds `bound` are dropped on insertion.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorSymbol {
    n: usize,
    arity: usize,
    bound: u32,
    terms: BTreeMap<Term, ThetaScalar>,
}

impl TensorSymbol {
    pub fn zero(n: usize, arity: usize, bound: u32) -> Self {
        TensorSymbol {
            n,
            arity,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        arity: usize,
        bound: u32,
        terms: impl IntoIterator<Item = (Term, ThetaScalar)>,
    ) -> Self {
        let mut s = Self::zero(n, arity, bound);
        for (t, c) in terms {
            s.add_term(t, &c);
        }
        s
    }

    /// `f''_1`: the identity on degree-0 elements, slot `(1, tag 0)`.
    pub fn identity_scalar(n: usize, bound: u32) -> Self {
        let t = Term::new(Head::scalar(n), [Slot::scalar(MultiIndex::zero(n))]);
        Self::from_terms(n, 1, bound, [(t, ThetaScalar::one())])
    }

    /// `f'_1`: the identity on one-forms, `Σ_i ξ^i ⊗ ζ_i`.
    pub fn identity_one_form(n: usize, bound: u32) -> Self {
        Self::from_terms(
            n,
            1,
            bound,
            (0..n).map(|i| {
                (
                    Term::new(Head::xi(n, i), [Slot::zeta(MultiIndex::zero(n), i)]),
                    ThetaScalar::one(),
                )
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        Self::from_terms(self.n, self.arity, bound, self.terms.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &ThetaScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &Term) -> ThetaScalar {
        self.terms.get(term).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, term: Term, coef: &ThetaScalar) {
        debug_assert_eq!(term.slots.len(), self.arity);
        if coef.is_zero() || term.weight() > self.bound {
            return;
        }
        match self.terms.entry(term) {
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

    pub fn add_scaled(&mut self, other: &Self, k: &Rational) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), &c.scale(k));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), &-c);
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
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, k: &ThetaScalar) -> Self {
        self.map_coefficients(|c| c * k)
    }

    pub fn map_coefficients(&self, f: impl Fn(&ThetaScalar) -> ThetaScalar) -> Self {
        Self::from_terms(
            self.n,
            self.arity,
            self.bound,
            self.terms.iter().map(|(t, c)| (t.clone(), f(c))),
        )
    }

    pub fn filter(&self, pred: impl Fn(&Term) -> bool) -> Self {
        Self::from_terms(
            self.n,
            self.arity,
            self.bound,
            self.terms
                .iter()
                .filter(|(t, _)| pred(t))
                .map(|(t, c)| (t.clone(), c.clone())),
        )
    }

    /// Terms with exactly `k` scalar slots.
    pub fn with_scalar_slots(&self, k: usize) -> Self {
        self.filter(|t| t.scalar_slot_count() == k)
    }

    /// Terms of the doubleprime component whose scalar slot sits at `k`.
    pub fn scalar_at(&self, k: usize) -> Self {
        self.filter(|t| t.scalar_slot_count() == 1 && t.slots[k].reads_scalar())
    }

    pub fn specialize(&self, assignment: &[Option<Rational>], table: &SymbolTable) -> Result<Self> {
        let mut out = Self::zero(self.n, self.arity, self.bound);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), &c.specialize(assignment, table)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, assignment: &[Option<Rational>]) -> Self {
        self.map_coefficients(|c| c.substitute(assignment))
    }

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

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Term::weight).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> u32 {
        self.terms.keys().map(Term::weight).min().unwrap_or(0)
    }

    pub fn max_head_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|t| t.head.exp.degree())
            .max()
            .unwrap_or(0)
    }

    /// Keep only terms whose slot `k` has `|α| ≤ max[k]`.
    pub fn restrict_slot_degrees(&self, max: &[u32]) -> Self {
        self.filter(|t| t.slots.iter().zip(max).all(|(s, &m)| s.p.degree() <= m))
    }

    /// Every term has this slot signature.
    pub fn conforms(&self, sig: &SlotTypeSignature) -> bool {
        self.terms.keys().all(|t| &t.signature() == sig)
    }

    /// Every term has Hom-degree `d`.
    pub fn is_homogeneous(&self, d: i32) -> bool {
        self.terms.keys().all(|t| t.degree() == d)
    }

    fn expand(&self, f: impl Fn(&Term) -> Vec<(Term, Rational)>) -> Self {
        let mut out = Self::zero(self.n, self.arity, self.bound);
        for (t, c) in &self.terms {
            for (u, k) in f(t) {
                out.add_term(u, &c.scale(&k));
            }
        }
        out
    }

    /// `∂_l = Σ_i (−1)^{scalar slots before i} (∂ at slot i)`.
    pub fn dual_differential(&self) -> Self {
        self.expand(|t| {
            let mut out = Vec::new();
            for i in 0..t.slots.len() {
                if let Some(s) = t.slots[i].dual_differential() {
                    let mut u = t.clone();
                    u.slots[i] = s;
                    out.push((u, sign(t.sign_before(i))));
                }
            }
            out
        })
    }

    /// `π_l`: the projector on every slot.
    pub fn projector(&self) -> Self {
        self.expand(|t| {
            let mut acc = vec![(t.clone(), Rational::from_integer(1.into()))];
            for i in 0..t.slots.len() {
                acc = replace_slot(&acc, i, |s| s.projector());
            }
            acc
        })
    }

    /// `h_l = Σ_i ε_i (id^{⊗(i−1)} ⊗ h ⊗ π^{⊗(l−i)})`, `ε_i` the sign of the
    /// scalar slots before `i`.
    pub fn homotopy(&self) -> Self {
        self.expand(|t| {
            let mut out = Vec::new();
            for i in 0..t.slots.len() {
                let hs = t.slots[i].homotopy();
                if hs.is_empty() {
                    continue;
                }
                let mut acc = vec![(t.clone(), sign(t.sign_before(i)))];
                acc = replace_slot(&acc, i, |_| hs.clone());
                for j in i + 1..t.slots.len() {
                    acc = replace_slot(&acc, j, |s| s.projector());
                    if acc.is_empty() {
                        break;
                    }
                }
                out.extend(acc);
            }
            out
        })
    }

    /// Normal: no term has a slot `(α = 0, tag 0)`, i.e. the operator
    /// vanishes whenever an argument is the unit.
    pub fn is_normal(&self) -> bool {
        self.terms
            .keys()
            .all(|t| t.slots.iter().all(|s| !(s.reads_scalar() && s.p.is_zero())))
    }

    /// Realization on the unit is the unit.
    pub fn is_unital(&self) -> bool {
        if self.arity != 1 {
            return false;
        }
        match self.realize(&[AElement::one(self.n)]) {
            Ok(v) => v == AElement::one(self.n),
            Err(_) => false,
        }
    }

    pub fn realize(&self, args: &[AElement]) -> Result<AElement> {
        Realizer::new(self).eval(args)
    }

    pub fn render(&self, table: &SymbolTable) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut lines = Vec::new();
        for (t, c) in &self.terms {
            let mut s = format!("({})", c.render(table));
            let head = crate::ring::poly::render_monomial::<crate::ring::XVars>(&t.head.exp);
            if !head.is_empty() {
                s.push_str(&format!(" {head}"));
            }
            if let Some(j) = t.head.xi {
                s.push_str(&format!(" xi{}", j + 1));
            }
            for slot in &t.slots {
                let p = crate::ring::poly::render_monomial::<crate::ring::PVars>(&slot.p);
                let p = if p.is_empty() { "1".to_string() } else { p };
                match slot.zeta_index() {
                    None => s.push_str(&format!(" ⊗ {p}")),
                    Some(j) => s.push_str(&format!(" ⊗ {p} z{}", j + 1)),
                }
            }
            lines.push(s);
        }
        lines.join("\n")
    }
}

impl fmt::Debug for TensorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TensorSymbol(arity {}, bound {})\n{}",
            self.arity,
            self.bound,
            self.render(&SymbolTable::new())
        )
    }
}

pub(crate) fn sign(negative: bool) -> Rational {
    Rational::from_integer(if negative { -1 } else { 1 }.into())
}

fn replace_slot(
    acc: &[(Term, Rational)],
    i: usize,
    f: impl Fn(&Slot) -> SlotCombination,
) -> Vec<(Term, Rational)> {
    let mut out = Vec::with_capacity(acc.len());
    for (t, k) in acc {
        for (s, c) in f(&t.slots[i]) {
            let mut u = t.clone();
            u.slots[i] = s;
            out.push((u, k * c));
        }
    }
    out
}

/// Repeated realization of one symbol. Terms are grouped by their tag tuple
/// so that only terms reading nonzero argument components are visited.
pub struct Realizer<'a> {
    symbol: &'a TensorSymbol,
    groups: HashMap<SmallVec<[u16; 4]>, Vec<(&'a Term, &'a ThetaScalar)>>,
}

impl<'a> Realizer<'a> {
    pub fn new(symbol: &'a TensorSymbol) -> Self {
        let mut groups: HashMap<SmallVec<[u16; 4]>, Vec<_>> = HashMap::new();
        for (t, c) in &symbol.terms {
            groups
                .entry(t.slots.iter().map(|s| s.tag).collect())
                .or_default()
                .push((t, c));
        }
        Realizer { symbol, groups }
    }

    /// `Σ coef · x^β (ξ^j) · Π_k ∂^{α_k}(arg_k component tag_k)`.
    pub fn eval(&self, args: &[AElement]) -> Result<AElement> {
        let n = self.symbol.n;
        if args.len() != self.symbol.arity {
            return Err(Error::ArityMismatch {
                expected: self.symbol.arity,
                found: args.len(),
            });
        }
        for a in args {
            if a.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.dim(),
                });
            }
        }
        let mut out = AElement::zero(n);
        let degs: Vec<Vec<Option<u32>>> = args
            .iter()
            .map(|a| (0..=n).map(|tag| a.component(tag).degree()).collect())
            .collect();
        for (tags, terms) in &self.groups {
            if tags
                .iter()
                .enumerate()
                .any(|(k, &tag)| degs[k][tag as usize].is_none())
            {
                continue;
            }
            let mut cache: HashMap<(usize, &MultiIndex), XPolynomial> = HashMap::new();
            for (t, c) in terms {
                let fits = t
                    .slots
                    .iter()
                    .enumerate()
                    .all(|(k, s)| s.p.degree() <= degs[k][s.tag as usize].unwrap_or(0));
                if !fits {
                    continue;
                }
                let mut value = XPolynomial::monomial(n, t.head.exp.clone(), (*c).clone());
                for (k, s) in t.slots.iter().enumerate() {
                    let factor = cache
                        .entry((k, &s.p))
                        .or_insert_with(|| args[k].component(s.tag as usize).derivative(&s.p));
                    if factor.is_zero() {
                        value = XPolynomial::zero(n);
                        break;
                    }
                    value = value.mul(factor);
                }
                if value.is_zero() {
                    continue;
                }
                match t.head.xi {
                    None => out.a0.add_assign(&value),
                    Some(j) => out.xi[j as usize].add_assign(&value),
                }
            }
        }
        Ok(out)
    }
}
