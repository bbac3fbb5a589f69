//! The generators σ_d of `GL_h(F2)` — adjacent transpositions plus one
//! transvection — their induced action on weight strata, and the fixed
//! subspaces under the symmetric and general linear groups.

use crate::gf2::{flip_bit, get_bit, kernel_basis, GF2Matrix};
use crate::monomial::{HomogeneousPolynomial, Monomial};
use crate::solver::QuotientPresentation;
use crate::steenrod::binom_mod2;
use crate::{Error, Result};

/// Which group the invariants are taken under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantGroup {
    /// Σ_h, generated by the transpositions σ_1 … σ_{h-1}.
    Symmetric,
    /// GL_h, generated by the transpositions plus the transvection σ_h.
    GeneralLinear,
}

impl InvariantGroup {
    pub fn generator_indices(&self, h: usize) -> Vec<usize> {
        match self {
            InvariantGroup::Symmetric => (1..h).collect(),
            InvariantGroup::GeneralLinear => (1..=h).collect(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            InvariantGroup::Symmetric => "sym",
            InvariantGroup::GeneralLinear => "gl",
        }
    }
}

/// Applies the substitution σ_d: for `d < h` the swap `t_d ↔ t_{d+1}`, for
/// `d = h` the transvection `t_1 ↦ t_1 + t_2`. Degree is preserved and the
/// result is in canonical GF(2) form.
pub fn sigma_apply(d: usize, f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
    let h = f.arity();
    if d < 1 || d > h {
        return Err(Error::contract(format!("generator index {d} outside 1..={h}")));
    }
    let mut out = HomogeneousPolynomial::zero(h, f.degree());
    if d < h {
        for m in f.monomials() {
            let mut exps = m.exponents().to_vec();
            exps.swap(d - 1, d);
            out.toggle(Monomial::new(exps));
        }
    } else if h == 1 {
        // GL_1 is trivial; the transvection degenerates to the identity
        return Ok(f.clone());
    } else {
        for m in f.monomials() {
            let a = m.exponents()[0];
            // (t1 + t2)^a = Σ_{bits(s) ⊆ bits(a)} t1^{a-s} t2^s
            let mut s = a;
            loop {
                debug_assert!(binom_mod2(a as u64, s as u64));
                let mut exps = m.exponents().to_vec();
                exps[0] = a - s;
                exps[1] += s;
                out.toggle(Monomial::new(exps));
                if s == 0 {
                    break;
                }
                s = (s - 1) & a;
            }
        }
    }
    Ok(out)
}

/// The matrix of σ_d on a stratum presentation: row `j` holds the reduced
/// coordinates of `σ_d(basis_j)`. Always invertible, in fact an involution.
pub fn action_matrix(d: usize, p: &QuotientPresentation) -> Result<GF2Matrix> {
    let dim = p.dim();
    let mut rows = GF2Matrix::new(dim);
    for b in p.stratum_basis() {
        let image = sigma_apply(d, &HomogeneousPolynomial::from_monomial(b.clone()))?;
        // σ_d never raises the weight, so reduction cannot escape the stratum
        let coords = p.reduce(&image).map_err(|e| {
            Error::contract(format!("internal inconsistency: σ_{d} left the stratum: {e}"))
        })?;
        rows.push_row(coords);
    }
    Ok(rows)
}

/// Basis of the subspace of the stratum fixed by every chosen generator,
/// as bit vectors over the stratum basis.
pub fn invariant_space(
    p: &QuotientPresentation,
    group: InvariantGroup,
) -> Result<Vec<Vec<u64>>> {
    let dim = p.dim();
    let gens = group.generator_indices(p.h());
    if dim == 0 {
        return Ok(Vec::new());
    }
    if gens.is_empty() {
        // trivial group: everything is invariant
        return Ok(GF2Matrix::identity(dim).rows().to_vec());
    }
    let mut stacked = GF2Matrix::new(dim);
    for d in gens {
        let action = action_matrix(d, p)?;
        // images sit in rows; v is fixed iff v^T (A + I) = 0, i.e. (A + I)^T v = 0
        let mut a_plus_i = GF2Matrix::new(dim);
        for j in 0..dim {
            let mut row = action.rows()[j].clone();
            flip_bit(&mut row, j);
            a_plus_i.push_row(row);
        }
        for row in a_plus_i.transpose().rows() {
            stacked.push_row(row.clone());
        }
    }
    Ok(kernel_basis(&stacked))
}

/// Renders invariant coordinate vectors as explicit polynomials — sums of
/// stratum basis monomials — for diffing against published lists.
pub fn invariant_polynomials(
    p: &QuotientPresentation,
    vectors: &[Vec<u64>],
) -> Vec<HomogeneousPolynomial> {
    vectors
        .iter()
        .map(|v| {
            let mut f = HomogeneousPolynomial::zero(p.h(), p.n());
            for (i, m) in p.stratum_basis().iter().enumerate() {
                if get_bit(v, i) {
                    f.toggle(m.clone());
                }
            }
            f
        })
        .collect()
}
