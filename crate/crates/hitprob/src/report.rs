//! Serializable result shapes shared by the CLI and the cache. Field order
//! and sorted strata keep the JSON byte-stable across runs.

use serde::Serialize;

use crate::invariants::InvariantGroup;
use crate::monomial::{Monomial, WeightVector};
use crate::solver::{positive_zero_split, stratify, CohitBasis};

#[derive(Serialize)]
pub struct StratumReport {
    pub omega: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomials: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct CohitReport {
    pub h: usize,
    pub n: u64,
    pub dim: usize,
    pub strata: Vec<StratumReport>,
}

fn monomial_strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

pub fn cohit_report(basis: &CohitBasis, emit_monomials: bool) -> CohitReport {
    let strata = stratify(basis)
        .into_iter()
        .map(|(w, ms)| StratumReport {
            omega: w.to_string(),
            dim: ms.len(),
            monomials: emit_monomials.then(|| monomial_strings(&ms)),
        })
        .collect();
    CohitReport { h: basis.h(), n: basis.n(), dim: basis.dim(), strata }
}

pub fn cohit_report_from_strata(
    h: usize,
    n: u64,
    strata: &[(WeightVector, Vec<Monomial>)],
    emit_monomials: bool,
) -> CohitReport {
    let mut sorted: Vec<_> = strata.to_vec();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let dim = sorted.iter().map(|(_, ms)| ms.len()).sum();
    CohitReport {
        h,
        n,
        dim,
        strata: sorted
            .into_iter()
            .map(|(w, ms)| StratumReport {
                omega: w.to_string(),
                dim: ms.len(),
                monomials: emit_monomials.then(|| monomial_strings(&ms)),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct SplitReport {
    pub zero_dim: usize,
    pub positive_dim: usize,
}

pub fn split_report(basis: &CohitBasis) -> SplitReport {
    let (zero, positive) = positive_zero_split(basis);
    SplitReport { zero_dim: zero.len(), positive_dim: positive.len() }
}

#[derive(Serialize)]
pub struct InvariantsReport {
    pub h: usize,
    pub n: u64,
    pub omega: String,
    pub group: String,
    pub dim: usize,
    pub invariants: Vec<Vec<String>>,
}

pub fn invariants_report(
    h: usize,
    n: u64,
    omega: &WeightVector,
    group: InvariantGroup,
    polys: &[crate::monomial::HomogeneousPolynomial],
) -> InvariantsReport {
    InvariantsReport {
        h,
        n,
        omega: omega.to_string(),
        group: group.label().to_string(),
        dim: polys.len(),
        invariants: polys
            .iter()
            .map(|f| f.monomials_sorted().iter().map(|m| m.to_string()).collect())
            .collect(),
    }
}

#[derive(Serialize)]
pub struct KamekoReport {
    pub h: usize,
    pub source_degree: u64,
    pub target_degree: u64,
    pub iso_predicate: bool,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub surjective: bool,
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
