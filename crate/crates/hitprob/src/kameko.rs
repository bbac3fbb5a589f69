//! The Kameko squaring operations linking `QP_n` and `QP_{2n+h}`: the down
//! map on classes, the up map ψ, the induced matrix on admissible bases,
//! and the isomorphism criterion `μ(2n+h) = h`.

use crate::gf2::GF2Matrix;
use crate::monomial::{mu, HomogeneousPolynomial, Monomial};
use crate::solver::{cohit_basis, CohitBasis, SolverOptions};
use crate::{Error, Result};

/// The down map on monomials: `∏ t_j · y² ↦ y`, everything else to zero.
pub fn kameko_down_monomial(m: &Monomial) -> Option<Monomial> {
    if m.exponents().iter().all(|&a| !a.is_multiple_of(2)) {
        Some(Monomial::new(m.exponents().iter().map(|&a| (a - 1) / 2).collect()))
    } else {
        None
    }
}

/// Monomial-wise extension of the down map. Distinct all-odd monomials have
/// distinct images, so no GF(2) cancellation occurs.
pub fn kameko_down_poly(f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    let h = f.arity() as u64;
    if f.degree() < h || !(f.degree() - h).is_multiple_of(2) {
        return Err(Error::contract(format!(
            "degree {} is not of the form 2m + {h}",
            f.degree()
        )));
    }
    let mut out = HomogeneousPolynomial::zero(f.arity(), (f.degree() - h) / 2);
    for m in f.monomials() {
        if let Some(y) = kameko_down_monomial(m) {
            out.toggle(y);
        }
    }
    Ok(out)
}

/// The up map `ψ: t ↦ ∏ t_j · t²`; degree goes `n ↦ 2n + h`.
pub fn kameko_up(m: &Monomial) -> Monomial {
    Monomial::new(m.exponents().iter().map(|&a| 2 * a + 1).collect())
}

/// `ψ^s`, composed without re-elimination: exponents become
/// `2^s·a + 2^s - 1`.
pub fn kameko_up_iterated(m: &Monomial, s: u32) -> Monomial {
    Monomial::new(
        m.exponents()
            .iter()
            .map(|&a| {
                a.checked_shl(s)
                    .and_then(|v| v.checked_add((1u32 << s) - 1))
                    .expect("iterated up map overflows u32 exponent")
            })
            .collect(),
    )
}

/// True iff the down map `QP_{N} → QP_{(N-h)/2}` is an isomorphism, i.e.
/// `μ(N) = h`.
pub fn kameko_iso_predicate(h: usize, big_n: u64) -> Result<bool> {
    if big_n < h as u64 || !(big_n - h as u64).is_multiple_of(2) {
        return Err(Error::contract(format!(
            "degree {big_n} is not of the form 2m + {h}"
        )));
    }
    Ok(mu(big_n) == h as u64)
}

/// The down map `QP_{2m+h} → QP_m` written on admissible bases.
pub struct KamekoMap {
    upper: CohitBasis,
    lower: CohitBasis,
    matrix: GF2Matrix,
    rank: usize,
}

impl KamekoMap {
    pub fn upper(&self) -> &CohitBasis {
        &self.upper
    }

    pub fn lower(&self) -> &CohitBasis {
        &self.lower
    }

    /// One row per upper admissible monomial: the coordinates of its image
    /// over the lower admissible basis.
    pub fn matrix(&self) -> &GF2Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.upper.dim() - self.rank
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.lower.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.kernel_dim() == 0 && self.upper.dim() == self.lower.dim()
    }
}

/// Assembles the matrix of the down map between the cohit bases at degrees
/// `2m + h` and `m`.
pub fn kameko_matrix(h: usize, m: u64, opts: &SolverOptions) -> Result<KamekoMap> {
    let upper = cohit_basis(h, 2 * m + h as u64, opts)?;
    let lower = cohit_basis(h, m, opts)?;
    let mut matrix = GF2Matrix::new(lower.dim());
    for u in upper.admissible() {
        let image = match kameko_down_monomial(u) {
            Some(y) => lower.reduce_to_coords(&HomogeneousPolynomial::from_monomial(y))?,
            None => vec![0u64; crate::gf2::words_for(lower.dim())],
        };
        matrix.push_row(image);
    }
    let rank = crate::gf2::rank(&matrix);
    Ok(KamekoMap { upper, lower, matrix, rank })
}
