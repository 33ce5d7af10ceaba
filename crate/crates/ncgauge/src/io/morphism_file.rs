//! Morphism files: a JSON document with the setting and every component
//! `f'_l`, `f''_{l,k}` as a list of terms, one term per line.
//!
//! A term is `[head_x, xi, slots, coef]`: `head_x` the exponents of the
//! head monomial, `xi` the 1-based `ξ` index or null, `slots` a list of
//! `[p_exponents, tag]` with tag 0 for a degree-0 argument and `j` for
//! `ζ_j`, and `coef` a list of `[rational, symbol_exponents]`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;
use crate::dga::Deformation;
use crate::error::{Error, Result};
use crate::ring::rational::parse_rational;
use crate::ring::{MultiIndex, SymMonomial, SymbolTable, ThetaScalar};
use crate::solver::{ComponentKind, Morphism, Setting};
use crate::symbol::{Head, Slot, TensorSymbol, Term};

type CoefDto = Vec<(String, Vec<u32>)>;
type SlotDto = (Vec<u32>, u16);
type TermDto = (Vec<u32>, Option<u16>, Vec<SlotDto>, CoefDto);

#[derive(Serialize, Deserialize)]
struct ComponentDto {
    order: usize,
    kind: ComponentKind,
    position: Option<usize>,
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct MorphismDto {
    schema_version: u32,
    n: usize,
    #[serde(rename = "L")]
    order: usize,
    #[serde(rename = "D")]
    degree_bound: u32,
    weight_bound: u32,
    symbols: Vec<String>,
    theta: Vec<Vec<CoefDto>>,
    theta_prime: Vec<Vec<CoefDto>>,
    components: Vec<ComponentDto>,
}

fn coef_dto(c: &ThetaScalar) -> CoefDto {
    c.terms()
        .map(|(m, r)| (r.to_string(), m.exponents().to_vec()))
        .collect()
}

fn coef_from(dto: &CoefDto, symbols: usize) -> Result<ThetaScalar> {
    let mut out = ThetaScalar::zero();
    for (r, exps) in dto {
        if exps.len() > symbols {
            return Err(Error::Parse(format!(
                "coefficient refers to symbol {} of {symbols}",
                exps.len()
            )));
        }
        out.add_term(SymMonomial::from_exponents(exps), parse_rational(r)?);
    }
    Ok(out)
}

fn matrix_dto(d: &Deformation) -> Vec<Vec<CoefDto>> {
    let n = d.dim();
    (0..n)
        .map(|i| (0..n).map(|j| coef_dto(&d.get(i, j))).collect())
        .collect()
}

fn matrix_from(rows: &[Vec<CoefDto>], n: usize, symbols: usize) -> Result<Deformation> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("deformation matrix is not {n}×{n}")));
    }
    let mut upper = Vec::new();
    for i in 0..n {
        if !coef_from(&rows[i][i], symbols)?.is_zero() {
            return Err(Error::Parse(
                "deformation matrix has a nonzero diagonal".into(),
            ));
        }
        for j in i + 1..n {
            let a = coef_from(&rows[i][j], symbols)?;
            if a != -coef_from(&rows[j][i], symbols)? {
                return Err(Error::Parse(
                    "deformation matrix is not antisymmetric".into(),
                ));
            }
            upper.push(a);
        }
    }
    Deformation::from_upper(n, upper)
}

fn term_dto(t: &Term, c: &ThetaScalar) -> TermDto {
    (
        t.head.exp.as_slice().to_vec(),
        t.head.xi.map(|j| j + 1),
        t.slots
            .iter()
            .map(|s| (s.p.as_slice().to_vec(), s.tag))
            .collect(),
        coef_dto(c),
    )
}

fn exps(v: &[u32], n: usize) -> Result<MultiIndex> {
    if v.len() != n {
        return Err(Error::Parse(format!(
            "exponent vector of length {} in dimension {n}",
            v.len()
        )));
    }
    Ok(MultiIndex::from_slice(v))
}

fn term_from(dto: &TermDto, n: usize, arity: usize, symbols: usize) -> Result<(Term, ThetaScalar)> {
    let (head, xi, slots, coef) = dto;
    let xi = match xi {
        None => None,
        Some(j) if (1..=n as u16).contains(j) => Some(j - 1),
        Some(j) => {
            return Err(Error::IndexOutOfRange {
                index: *j as usize,
                n,
            })
        }
    };
    if slots.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: slots.len(),
        });
    }
    let slots = slots
        .iter()
        .map(|(p, tag)| {
            if *tag as usize > n {
                return Err(Error::IndexOutOfRange {
                    index: *tag as usize,
                    n,
                });
            }
            Ok(Slot::new(exps(p, n)?, *tag))
        })
        .collect::<Result<Vec<_>>>()?;
    let term = Term::new(
        Head {
            exp: exps(head, n)?,
            xi,
        },
        slots,
    );
    Ok((term, coef_from(coef, symbols)?))
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

/// Deterministic text: fixed key order, one term per line.
pub fn morphism_to_string(f: &Morphism) -> String {
    let s = &f.setting;
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"schema_version\": {SCHEMA_VERSION},");
    let _ = writeln!(out, "  \"n\": {},", s.n);
    let _ = writeln!(out, "  \"L\": {},", s.order);
    let _ = writeln!(out, "  \"D\": {},", s.degree_bound);
    let _ = writeln!(out, "  \"weight_bound\": {},", s.weight_bound());
    let _ = writeln!(out, "  \"symbols\": {},", json(&s.symbols.names().to_vec()));
    let _ = writeln!(out, "  \"theta\": {},", json(&matrix_dto(&s.theta)));
    let _ = writeln!(
        out,
        "  \"theta_prime\": {},",
        json(&matrix_dto(&s.theta_prime))
    );
    out.push_str("  \"components\": [");
    let comps = f.components();
    for (ci, c) in comps.iter().enumerate() {
        out.push_str(if ci == 0 { "\n" } else { ",\n" });
        let _ = write!(
            out,
            "    {{\"order\": {}, \"kind\": {}, \"position\": {}, \"terms\": [",
            c.order,
            json(&c.kind),
            json(&c.position)
        );
        for (ti, (t, coef)) in c.symbol.terms().enumerate() {
            out.push_str(if ti == 0 { "\n" } else { ",\n" });
            let _ = write!(out, "      {}", json(&term_dto(t, coef)));
        }
        out.push_str(if c.symbol.is_zero() { "]}" } else { "\n    ]}" });
    }
    out.push_str("\n  ]\n}\n");
    out
}

pub fn morphism_from_str(text: &str) -> Result<Morphism> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    super::check_schema(&value)?;
    let dto: MorphismDto =
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let n = dto.n;
    let nsym = dto.symbols.len();
    let table = SymbolTable::from_names(dto.symbols.clone());
    let theta = matrix_from(&dto.theta, n, nsym)?;
    let theta_prime = matrix_from(&dto.theta_prime, n, nsym)?;
    let setting = Setting::new(theta, theta_prime, table, dto.order, dto.degree_bound)?;
    let w = setting.weight_bound();
    if dto.weight_bound != w {
        return Err(Error::Parse(format!(
            "weight bound {} does not match L(D+1) = {w}",
            dto.weight_bound
        )));
    }
    // Fewer orders than L may be stored, e.g. for a partially solved map.
    let stored = dto
        .components
        .iter()
        .map(|c| c.order)
        .max()
        .unwrap_or(0)
        .min(dto.order);
    if stored == 0 {
        return Err(Error::Parse("no components".into()));
    }
    let mut prime: Vec<Option<TensorSymbol>> = vec![None; stored];
    let mut doubleprime: Vec<TensorSymbol> =
        (1..=stored).map(|l| TensorSymbol::zero(n, l, w)).collect();
    let mut seen = vec![vec![false; stored + 1]; stored];
    for c in &dto.components {
        let l = c.order;
        if l == 0 || l > dto.order {
            return Err(Error::Parse(format!(
                "component of order {l} outside 1..={}",
                dto.order
            )));
        }
        let mut sym = TensorSymbol::zero(n, l, w);
        for t in &c.terms {
            let (term, coef) = term_from(t, n, l, nsym)?;
            if term.weight() > w {
                return Err(Error::Parse(format!(
                    "term of weight {} above the bound {w}",
                    term.weight()
                )));
            }
            sym.add_term(term, &coef);
        }
        match (c.kind, c.position) {
            (ComponentKind::Prime, None) => {
                if prime[l - 1].replace(sym).is_some() {
                    return Err(Error::Parse(format!("duplicate f'_{l}")));
                }
            }
            (ComponentKind::Doubleprime, Some(k)) if k < l => {
                if std::mem::replace(&mut seen[l - 1][k], true) {
                    return Err(Error::Parse(format!("duplicate f''_{{{l},{k}}}")));
                }
                if sym.terms().any(|(t, _)| t.scalar_position() != Some(k)) {
                    return Err(Error::Parse(format!(
                        "f''_{{{l},{k}}} has a term with its degree-0 slot elsewhere"
                    )));
                }
                doubleprime[l - 1].add_assign(&sym);
            }
            _ => {
                return Err(Error::Parse(format!(
                    "malformed component header at order {l}"
                )))
            }
        }
    }
    let prime = prime
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::Parse(format!("missing f'_{}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Morphism::from_components(setting, prime, doubleprime)
}

pub fn write_morphism(f: &Morphism, path: &Path) -> Result<()> {
    std::fs::write(path, morphism_to_string(f))
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

pub fn read_morphism(path: &Path) -> Result<Morphism> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    morphism_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::SessionConfig;
    use crate::solver::solve_recursion;

    fn solved() -> Morphism {
        solve_recursion(
            SessionConfig::new(2, "sym", "sym", 2, 2, 0)
                .setting()
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn round_trip_is_lossless_and_stable() {
        let f = solved();
        let text = morphism_to_string(&f);
        let g = morphism_from_str(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(morphism_to_string(&g), text);
        assert!(text.contains("\"schema_version\": 1"));
    }

    #[test]
    fn schema_mismatch() {
        let text =
            morphism_to_string(&solved()).replace("\"schema_version\": 1", "\"schema_version\": 7");
        assert_eq!(
            morphism_from_str(&text),
            Err(Error::SchemaVersion {
                expected: SCHEMA_VERSION,
                found: 7
            })
        );
    }

    #[test]
    fn malformed_files() {
        let text = morphism_to_string(&solved());
        assert!(
            morphism_from_str(&text.replace("\"weight_bound\": 6", "\"weight_bound\": 5")).is_err()
        );
        assert!(morphism_from_str("{\"schema_version\": 1}").is_err());
        assert!(morphism_from_str("not json").is_err());
    }
}
