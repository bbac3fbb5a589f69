//! Plain-text fixtures: monomial lists and invariant polynomials that can
//! be re-verified against fresh computations and hand-diffed line by line.
//!
//! Format: header lines `h <int>`, `n <int>`, optional `omega a,b,c`,
//! `kind admissible|invariant`, optional `part all|zero|positive`,
//! optional `group sym|gl`; then one `m <exponents>` line per monomial.
//! For `kind invariant`, blank lines separate the monomial blocks of the
//! individual polynomials.

use std::collections::BTreeSet;

use crate::gf2::Echelon;
use crate::invariants::{invariant_space, InvariantGroup};
use crate::monomial::{HomogeneousPolynomial, Monomial, WeightVector};
use crate::solver::{cohit_basis, omega_presentation, SolverOptions};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Admissible,
    Invariant,
}

/// Restricts an admissible fixture to the monomials missing a variable
/// (zero) or involving all variables (positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixturePart {
    All,
    Zero,
    Positive,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub h: usize,
    pub n: u64,
    pub omega: Option<WeightVector>,
    pub kind: FixtureKind,
    pub part: FixturePart,
    pub group: InvariantGroup,
    pub monomials: Vec<Monomial>,
    pub polynomials: Vec<Vec<Monomial>>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut h: Option<usize> = None;
    let mut n: Option<u64> = None;
    let mut omega: Option<WeightVector> = None;
    let mut kind: Option<FixtureKind> = None;
    let mut part = FixturePart::All;
    let mut group = InvariantGroup::Symmetric;
    let mut monomials: Vec<Monomial> = Vec::new();
    let mut polynomials: Vec<Vec<Monomial>> = Vec::new();
    let mut block: Vec<Monomial> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            if !block.is_empty() {
                polynomials.push(std::mem::take(&mut block));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let (key, value) = match line.split_once(char::is_whitespace) {
            Some((k, v)) => (k, v.trim()),
            None => return Err(parse_err(lineno, format!("expected 'key value', got {line:?}"))),
        };
        match key {
            "h" => {
                h = Some(value.parse().map_err(|e| parse_err(lineno, format!("bad h: {e}")))?)
            }
            "n" => {
                n = Some(value.parse().map_err(|e| parse_err(lineno, format!("bad n: {e}")))?)
            }
            "omega" => {
                omega = Some(
                    value.parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?,
                )
            }
            "kind" => {
                kind = Some(match value {
                    "admissible" => FixtureKind::Admissible,
                    "invariant" => FixtureKind::Invariant,
                    other => return Err(parse_err(lineno, format!("unknown kind {other:?}"))),
                })
            }
            "part" => {
                part = match value {
                    "all" => FixturePart::All,
                    "zero" => FixturePart::Zero,
                    "positive" => FixturePart::Positive,
                    other => return Err(parse_err(lineno, format!("unknown part {other:?}"))),
                }
            }
            "group" => {
                group = match value {
                    "sym" => InvariantGroup::Symmetric,
                    "gl" => InvariantGroup::GeneralLinear,
                    other => return Err(parse_err(lineno, format!("unknown group {other:?}"))),
                }
            }
            "m" => {
                let m: Monomial =
                    value.parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?;
                let (h, n) =
                    match (h, n) {
                        (Some(h), Some(n)) => (h, n),
                        _ => return Err(parse_err(lineno, "monomial before the h/n headers")),
                    };
                if m.arity() != h {
                    return Err(parse_err(lineno, format!("{m} has {} variables, fixture declares {h}", m.arity())));
                }
                if m.degree() != n {
                    return Err(parse_err(lineno, format!("{m} has degree {}, fixture declares {n}", m.degree())));
                }
                if block.contains(&m) {
                    return Err(parse_err(lineno, format!("duplicate monomial {m}")));
                }
                monomials.push(m.clone());
                block.push(m);
            }
            other => return Err(parse_err(lineno, format!("unknown key {other:?}"))),
        }
    }
    if !block.is_empty() {
        polynomials.push(block);
    }
    let h = h.ok_or_else(|| parse_err(0, "missing h header"))?;
    let n = n.ok_or_else(|| parse_err(0, "missing n header"))?;
    let kind = kind.ok_or_else(|| parse_err(0, "missing kind header"))?;
    let fixture =
        Fixture { h, n, omega, kind, part, group, monomials, polynomials };
    validate(&fixture)?;
    Ok(fixture)
}

fn validate(f: &Fixture) -> Result<()> {
    if let Some(w) = &f.omega {
        if w.degree() != f.n {
            return Err(Error::contract(format!(
                "omega {w} has degree {}, fixture declares {}",
                w.degree(),
                f.n
            )));
        }
        for m in &f.monomials {
            let mw = m.weight();
            match f.kind {
                FixtureKind::Admissible => {
                    if mw != *w {
                        return Err(Error::contract(format!("{m} has weight {mw}, not {w}")));
                    }
                }
                // invariant representatives may carry lower-weight terms
                FixtureKind::Invariant => {
                    if mw > *w {
                        return Err(Error::contract(format!("{m} has weight {mw} above {w}")));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn emit_fixture(f: &Fixture) -> String {
    let mut out = String::new();
    out.push_str(&format!("h {}\n", f.h));
    out.push_str(&format!("n {}\n", f.n));
    if let Some(w) = &f.omega {
        out.push_str(&format!("omega {w}\n"));
    }
    out.push_str(&format!(
        "kind {}\n",
        match f.kind {
            FixtureKind::Admissible => "admissible",
            FixtureKind::Invariant => "invariant",
        }
    ));
    match f.part {
        FixturePart::All => {}
        FixturePart::Zero => out.push_str("part zero\n"),
        FixturePart::Positive => out.push_str("part positive\n"),
    }
    if f.kind == FixtureKind::Invariant {
        out.push_str(&format!("group {}\n", f.group.label()));
        for (i, poly) in f.polynomials.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for m in poly {
                out.push_str(&format!("m {m}\n"));
            }
        }
    } else {
        for m in &f.monomials {
            out.push_str(&format!("m {m}\n"));
        }
    }
    out
}

/// Result of re-deriving a fixture's content from scratch.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub matched: bool,
    pub expected: usize,
    pub computed: usize,
    pub missing: Vec<Monomial>,
    pub unexpected: Vec<Monomial>,
    pub detail: String,
}

impl VerifyReport {
    fn sets(expected: &[Monomial], computed: &[Monomial], what: &str) -> VerifyReport {
        let e: BTreeSet<Vec<u32>> =
            expected.iter().map(|m| m.exponents().to_vec()).collect();
        let c: BTreeSet<Vec<u32>> =
            computed.iter().map(|m| m.exponents().to_vec()).collect();
        let missing: Vec<Monomial> =
            e.difference(&c).map(|v| Monomial::new(v.clone())).collect();
        let unexpected: Vec<Monomial> =
            c.difference(&e).map(|v| Monomial::new(v.clone())).collect();
        let matched = missing.is_empty() && unexpected.is_empty();
        let detail = if matched {
            format!("{}/{} {what} matched", c.len(), e.len())
        } else if e.len() == c.len() {
            format!(
                "dimension agrees ({}) but the sets differ: {} missing, {} unexpected",
                e.len(),
                missing.len(),
                unexpected.len()
            )
        } else {
            format!("dimension mismatch: expected {}, computed {}", e.len(), c.len())
        };
        VerifyReport { matched, expected: e.len(), computed: c.len(), missing, unexpected, detail }
    }
}

fn filter_part(part: FixturePart, basis: &[Monomial]) -> Vec<Monomial> {
    basis
        .iter()
        .filter(|m| match part {
            FixturePart::All => true,
            FixturePart::Zero => m.has_zero_exponent(),
            FixturePart::Positive => !m.has_zero_exponent(),
        })
        .cloned()
        .collect()
}

/// Recomputes the object a fixture describes and compares.
///
/// Admissible fixtures are checked set-wise against the recomputed
/// admissible monomials (of the stratum when `omega` is present, of the
/// whole degree otherwise). Invariant fixtures are checked span-wise: the
/// reduced fixture polynomials must span exactly the recomputed invariant
/// space of the stratum.
pub fn verify_fixture(f: &Fixture, opts: &SolverOptions) -> Result<VerifyReport> {
    match (f.kind, &f.omega) {
        (FixtureKind::Admissible, Some(w)) => {
            let p = omega_presentation(f.h, f.n, w, opts)?;
            let computed = filter_part(f.part, p.stratum_basis());
            Ok(VerifyReport::sets(&f.monomials, &computed, "admissible monomials"))
        }
        (FixtureKind::Admissible, None) => {
            let basis = cohit_basis(f.h, f.n, opts)?;
            let computed = filter_part(f.part, basis.admissible());
            Ok(VerifyReport::sets(&f.monomials, &computed, "admissible monomials"))
        }
        (FixtureKind::Invariant, Some(w)) => {
            let p = omega_presentation(f.h, f.n, w, opts)?;
            let computed = invariant_space(&p, f.group)?;
            let mut fixture_vecs = Vec::new();
            for poly in &f.polynomials {
                let poly =
                    HomogeneousPolynomial::from_monomials(f.h, f.n, poly.iter().cloned())?;
                fixture_vecs.push(p.reduce(&poly)?);
            }
            let dim = p.dim();
            let mut computed_ech = Echelon::new(dim);
            for v in &computed {
                computed_ech.insert(v.clone());
            }
            computed_ech.finalize();
            let mut fixture_ech = Echelon::new(dim);
            for v in &fixture_vecs {
                fixture_ech.insert(v.clone());
            }
            fixture_ech.finalize();
            let mut matched = computed_ech.rank() == fixture_ech.rank();
            if matched {
                for v in &fixture_vecs {
                    let mut r = v.clone();
                    computed_ech.reduce(&mut r);
                    if r.iter().any(|&w| w != 0) {
                        matched = false;
                        break;
                    }
                }
            }
            let detail = if matched {
                format!(
                    "invariant span matched: dimension {} ({} polynomials)",
                    computed_ech.rank(),
                    f.polynomials.len()
                )
            } else {
                format!(
                    "invariant span mismatch: fixture spans {}, computed dimension {}",
                    fixture_ech.rank(),
                    computed_ech.rank()
                )
            };
            Ok(VerifyReport {
                matched,
                expected: fixture_ech.rank(),
                computed: computed_ech.rank(),
                missing: Vec::new(),
                unexpected: Vec::new(),
                detail,
            })
        }
        (FixtureKind::Invariant, None) => Err(Error::contract(
            "invariant fixtures need an omega header",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_roundtrip() {
        let text = "h 2\nn 3\nomega 1,1\nkind admissible\nm 3,0\nm 1,2\nm 0,3\n";
        let f = parse_fixture(text).unwrap();
        assert_eq!(f.h, 2);
        assert_eq!(f.n, 3);
        assert_eq!(f.monomials.len(), 3);
        assert_eq!(emit_fixture(&f), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_fixture("h 2\nn 3\nkind admissible\nm 1,1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4), // degree mismatch
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_fixture("h 2\nn 3\nbogus 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn verify_small_stratum() {
        let text = "h 2\nn 3\nomega 1,1\nkind admissible\nm 3,0\nm 1,2\nm 0,3\n";
        let f = parse_fixture(text).unwrap();
        let report = verify_fixture(&f, &SolverOptions::default()).unwrap();
        assert!(report.matched, "{}", report.detail);
    }

    #[test]
    fn verify_reports_diffs() {
        let text = "h 2\nn 3\nomega 1,1\nkind admissible\nm 3,0\nm 2,1\nm 0,3\n";
        let f = parse_fixture(text).unwrap();
        let report = verify_fixture(&f, &SolverOptions::default()).unwrap();
        assert!(!report.matched);
        assert_eq!(report.missing.len(), 1); // 2,1 is inadmissible
        assert_eq!(report.unexpected.len(), 1); // 1,2 was expected instead
    }

    #[test]
    fn emitted_fixture_reverifies() {
        let opts = SolverOptions::default();
        let p = omega_presentation(3, 8, &WeightVector::new(vec![2, 1, 1]), &opts).unwrap();
        let f = Fixture {
            h: 3,
            n: 8,
            omega: Some(WeightVector::new(vec![2, 1, 1])),
            kind: FixtureKind::Admissible,
            part: FixturePart::All,
            group: InvariantGroup::Symmetric,
            monomials: p.stratum_basis().to_vec(),
            polynomials: Vec::new(),
        };
        let text = emit_fixture(&f);
        let parsed = parse_fixture(&text).unwrap();
        let report = verify_fixture(&parsed, &opts).unwrap();
        assert!(report.matched);
    }
}
