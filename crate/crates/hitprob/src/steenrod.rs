//! The mod-2 Steenrod squares acting on `F2[t1..th]` via the Cartan
//! formula, and the generators of the hit subspace `A⁺·P`.

use crate::monomial::{enumerate_monomials, HomogeneousPolynomial, Monomial};

/// `C(n, k) mod 2` by Lucas: odd iff every bit of `k` occurs in `n`.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k & !n == 0
}

/// `Sq^a(t^n) = C(n, a) t^{n+a}`: the resulting exponent, or `None` when
/// the coefficient vanishes.
pub fn sq_on_power(a: u32, n: u32) -> Option<u32> {
    binom_mod2(n as u64, a as u64).then(|| n + a)
}

/// Runs `visit` on the exponent vector of every monomial in `Sq^k(m)`,
/// with multiplicity; GF(2) cancellation is the caller's business.
///
/// Per variable, the composition part must be a submask of the exponent
/// (Lucas), so the expansion walks submasks with a remaining-degree prune.
pub(crate) fn expand_sq_monomial(m: &Monomial, k: u64, mut visit: impl FnMut(&[u32])) {
    let exps = m.exponents();
    let h = exps.len();
    // suffix[j] = sum of exponents from j on; caps what later variables can absorb
    let mut suffix = vec![0u64; h + 1];
    for j in (0..h).rev() {
        suffix[j] = suffix[j + 1] + exps[j] as u64;
    }
    let mut out: Vec<u32> = exps.to_vec();
    rec(exps, &suffix, 0, k, &mut out, &mut visit);

    fn rec(
        exps: &[u32],
        suffix: &[u64],
        j: usize,
        rem: u64,
        out: &mut Vec<u32>,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if rem == 0 {
            out[j..].copy_from_slice(&exps[j..]);
            visit(out);
            return;
        }
        if j == exps.len() || rem > suffix[j] {
            return;
        }
        // enumerate submasks s of exps[j] with s <= rem, plus s = 0
        let a = exps[j];
        let mut s = a;
        loop {
            if (s as u64) <= rem {
                out[j] = exps[j] + s;
                rec(exps, suffix, j + 1, rem - s as u64, out, visit);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & a;
        }
        out[j] = exps[j];
    }
}

/// `Sq^k` on a homogeneous polynomial (Cartan formula, additive extension).
pub fn sq(k: u64, f: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let mut out = HomogeneousPolynomial::zero(f.arity(), f.degree() + k);
    if k == 0 {
        return f.clone();
    }
    for m in f.monomials() {
        expand_sq_monomial(m, k, |exps| out.toggle(Monomial::new(exps.to_vec())));
    }
    out
}

/// The degrees `2^i ≤ n` of the squares that generate the hit subspace in
/// degree `n`; all other squares are decomposable.
pub fn hit_square_degrees(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k <= n {
        out.push(k);
        k <<= 1;
    }
    out
}

/// The nonzero generators `Sq^{2^i}(m)` of `(A⁺·P)_n`, over all `i` with
/// `2^i ≤ n` and all monomials `m` of degree `n - 2^i`.
pub fn hit_generators(h: usize, n: u64) -> Vec<HomogeneousPolynomial> {
    generators_for_squares(h, n, &hit_square_degrees(n))
}

/// Verification variant using every `Sq^k`, `1 ≤ k ≤ n`; spans the same
/// subspace as [`hit_generators`].
pub fn hit_generators_all(h: usize, n: u64) -> Vec<HomogeneousPolynomial> {
    generators_for_squares(h, n, &(1..=n).collect::<Vec<_>>())
}

fn generators_for_squares(h: usize, n: u64, ks: &[u64]) -> Vec<HomogeneousPolynomial> {
    let mut out = Vec::new();
    for &k in ks {
        for m in enumerate_monomials(h, n - k) {
            let g = sq(k, &HomogeneousPolynomial::from_monomial(m));
            if !g.is_zero() {
                out.push(g);
            }
        }
    }
    out
}
