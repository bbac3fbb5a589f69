//! Admissible-monomial bases of the cohit modules `QP_n`, their weight
//! stratification, and quotient presentations of single weight strata.
//!
//! Admissibility is decided operationally: columns are the monomials of a
//! bidegree in descending order, rows span the hit subspace, and a monomial
//! is admissible iff its column carries no pivot after elimination. Because
//! the pivot of each echelon row is its largest monomial, a pivot row is
//! precisely a witness that its leading monomial is a sum of strictly
//! smaller monomials plus a hit element.
//!
//! A weight stratum `(h, n, ω)` is presented without touching the full
//! degree: hit generators are projected to the columns of weight `≥ ω`
//! (projection commutes with taking spans, and both the vanishing
//! constraint on the `> ω` block and the output block read only those
//! columns), the `> ω` block is eliminated first, and the rows with no
//! pivot there are exactly the relations of the stratum.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::gf2::{flip_bit, get_bit, set_bit, words_for, Echelon};
use crate::monomial::{
    enumerate_monomials, minimal_spike, mu, weight_cmp_slices, HomogeneousPolynomial, Monomial,
    WeightVector,
};
use crate::steenrod::{expand_sq_monomial, hit_square_degrees};
use crate::{Error, Result};

/// Tuning and honesty knobs for the solvers.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Pin columns that Singer's criterion proves hit (weight below the
    /// minimal spike's). An optimization only; results are identical with
    /// it off.
    pub use_singer_filter: bool,
    /// Return the empty basis without elimination when `μ(n) > h`.
    pub use_wood_shortcut: bool,
    /// Refuse eliminations wider than this many columns.
    pub column_cap: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            use_singer_filter: true,
            use_wood_shortcut: true,
            column_cap: 300_000,
        }
    }
}

impl SolverOptions {
    /// All shortcuts disabled; raw elimination only.
    pub fn raw() -> Self {
        SolverOptions {
            use_singer_filter: false,
            use_wood_shortcut: false,
            ..SolverOptions::default()
        }
    }
}

/// `μ(n) > h`, in which case `QP_n` vanishes entirely.
pub fn wood_vanishing(h: usize, n: u64) -> bool {
    mu(n) > h as u64
}

/// Singer's hit criterion: true means `m` is provably hit because its
/// weight is below the minimal spike's weight. Sound but not complete.
pub fn singer_hit_filter(m: &Monomial) -> Result<bool> {
    let n = m.degree();
    let h = m.arity();
    if mu(n) > h as u64 {
        return Err(Error::FilterInapplicable(format!(
            "mu({n}) = {} exceeds {h} variables; no minimal spike exists",
            mu(n)
        )));
    }
    let spike = minimal_spike(n, h)?;
    Ok(m.weight() < spike.weight())
}

fn build_index(columns_desc: &[Monomial]) -> HashMap<Vec<u32>, u32> {
    columns_desc
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exponents().to_vec(), i as u32))
        .collect()
}

fn row_for_source(
    source: &Monomial,
    k: u64,
    index: &HashMap<Vec<u32>, u32>,
    words: usize,
) -> Option<Vec<u64>> {
    let mut row = vec![0u64; words];
    expand_sq_monomial(source, k, |exps| {
        if let Some(&c) = index.get(exps) {
            flip_bit(&mut row, c as usize);
        }
    });
    if row.iter().all(|&w| w == 0) {
        None
    } else {
        Some(row)
    }
}

/// Streams every hit generator `Sq^{2^i}(z)` of degree `n`, restricted to
/// the columns in `index`, into the echelon. Generation is parallel in
/// deterministic chunks; insertion stays serial.
fn insert_hit_rows(
    h: usize,
    n: u64,
    index: &HashMap<Vec<u32>, u32>,
    words: usize,
    ech: &mut Echelon,
) {
    for k in hit_square_degrees(n) {
        let sources = enumerate_monomials(h, n - k);
        for chunk in sources.chunks(2048) {
            let rows: Vec<Option<Vec<u64>>> = chunk
                .par_iter()
                .map(|m| row_for_source(m, k, index, words))
                .collect();
            for row in rows.into_iter().flatten() {
                ech.insert(row);
            }
        }
    }
}

fn singer_rows(columns_desc: &[Monomial], h: usize, n: u64, ech: &mut Echelon) -> Result<()> {
    if n == 0 || mu(n) > h as u64 {
        return Ok(());
    }
    let spike_weight = minimal_spike(n, h)?.weight();
    let words = words_for(columns_desc.len());
    for (i, m) in columns_desc.iter().enumerate() {
        if weight_cmp_slices(m.exponents(), spike_weight.entries()).is_lt() {
            let mut row = vec![0u64; words];
            set_bit(&mut row, i);
            ech.insert(row);
        }
    }
    Ok(())
}

/// The admissible-monomial basis of `QP_n` over `h` variables, together
/// with the frozen echelon of the hit subspace used to reduce into it.
pub struct CohitBasis {
    h: usize,
    n: u64,
    columns_desc: Vec<Monomial>,
    col_index: HashMap<Vec<u32>, u32>,
    echelon: Echelon,
    hit_all: bool,
    admissible: Vec<Monomial>,
    admissible_pos: Vec<u32>,
}

const NO_POS: u32 = u32::MAX;

impl CohitBasis {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.admissible.len()
    }

    /// Admissible monomials, ascending in the admissibility order.
    pub fn admissible(&self) -> &[Monomial] {
        &self.admissible
    }

    fn check_input(&self, f: &HomogeneousPolynomial) -> Result<()> {
        if f.arity() != self.h || f.degree() != self.n {
            return Err(Error::contract(format!(
                "polynomial lives in ({}, {}), basis is ({}, {})",
                f.arity(),
                f.degree(),
                self.h,
                self.n
            )));
        }
        Ok(())
    }

    /// Canonical residue of `f` modulo the hit subspace, expressed as a sum
    /// of admissible monomials.
    pub fn reduce_poly(&self, f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
        self.check_input(f)?;
        let mut out = HomogeneousPolynomial::zero(self.h, self.n);
        if self.hit_all {
            return Ok(out);
        }
        let mut row = vec![0u64; words_for(self.columns_desc.len())];
        for m in f.monomials() {
            let c = self.col_index.get(m.exponents()).expect("column must exist");
            flip_bit(&mut row, *c as usize);
        }
        self.echelon.reduce(&mut row);
        for (c, col) in self.columns_desc.iter().enumerate() {
            if get_bit(&row, c) {
                out.toggle(col.clone());
            }
        }
        Ok(out)
    }

    /// Residue coordinates over [`Self::admissible`], bit-packed.
    pub fn reduce_to_coords(&self, f: &HomogeneousPolynomial) -> Result<Vec<u64>> {
        let residue = self.reduce_poly(f)?;
        let mut coords = vec![0u64; words_for(self.admissible.len())];
        for m in residue.monomials() {
            let c = *self.col_index.get(m.exponents()).unwrap() as usize;
            let pos = self.admissible_pos[c];
            debug_assert_ne!(pos, NO_POS, "residue must be supported on admissibles");
            set_bit(&mut coords, pos as usize);
        }
        Ok(coords)
    }

    pub fn is_hit(&self, f: &HomogeneousPolynomial) -> Result<bool> {
        Ok(self.reduce_poly(f)?.is_zero())
    }
}

/// Builds the hit matrix of bidegree `(h, n)`, eliminates it with columns
/// in descending monomial order, and reads off the admissible basis as the
/// non-pivot columns.
pub fn cohit_basis(h: usize, n: u64, opts: &SolverOptions) -> Result<CohitBasis> {
    if h < 1 {
        return Err(Error::contract("need at least one variable"));
    }
    if opts.use_wood_shortcut && wood_vanishing(h, n) {
        return Ok(CohitBasis {
            h,
            n,
            columns_desc: Vec::new(),
            col_index: HashMap::new(),
            echelon: {
                let mut e = Echelon::new(0);
                e.finalize();
                e
            },
            hit_all: true,
            admissible: Vec::new(),
            admissible_pos: Vec::new(),
        });
    }
    let ascending = enumerate_monomials(h, n);
    if ascending.len() > opts.column_cap {
        return Err(Error::ResourceLimit(format!(
            "{} columns exceed the cap of {}",
            ascending.len(),
            opts.column_cap
        )));
    }
    let columns_desc: Vec<Monomial> = ascending.into_iter().rev().collect();
    let col_index = build_index(&columns_desc);
    let words = words_for(columns_desc.len());
    let mut ech = Echelon::new(columns_desc.len());
    if opts.use_singer_filter {
        singer_rows(&columns_desc, h, n, &mut ech)?;
    }
    insert_hit_rows(h, n, &col_index, words, &mut ech);
    ech.finalize();
    let mut admissible = Vec::with_capacity(columns_desc.len() - ech.rank());
    let mut admissible_pos = vec![NO_POS; columns_desc.len()];
    for (c, m) in columns_desc.iter().enumerate().rev() {
        if !ech.is_pivot(c) {
            admissible_pos[c] = admissible.len() as u32;
            admissible.push(m.clone());
        }
    }
    debug_assert_eq!(admissible.len() + ech.rank(), columns_desc.len());
    Ok(CohitBasis {
        h,
        n,
        columns_desc,
        col_index,
        echelon: ech,
        hit_all: false,
        admissible,
        admissible_pos,
    })
}

/// Groups the admissible basis by weight vector; the group sizes are the
/// stratum dimensions `dim QP_n(ω)`.
pub fn stratify(basis: &CohitBasis) -> BTreeMap<WeightVector, Vec<Monomial>> {
    let mut out: BTreeMap<WeightVector, Vec<Monomial>> = BTreeMap::new();
    for m in basis.admissible() {
        out.entry(m.weight()).or_default().push(m.clone());
    }
    out
}

/// Splits the admissible basis into the monomials missing some variable
/// (zero part) and those involving all variables (positive part).
pub fn positive_zero_split(basis: &CohitBasis) -> (Vec<Monomial>, Vec<Monomial>) {
    let mut zero = Vec::new();
    let mut positive = Vec::new();
    for m in basis.admissible() {
        if m.has_zero_exponent() {
            zero.push(m.clone());
        } else {
            positive.push(m.clone());
        }
    }
    (zero, positive)
}

/// A single weight stratum `(h, n, ω)` presented as quotient: the monomials
/// of weight exactly `ω` modulo ω-hit elements and lower weight.
pub struct QuotientPresentation {
    h: usize,
    n: u64,
    omega: WeightVector,
    block_desc: Vec<Monomial>,
    block_index: HashMap<Vec<u32>, u32>,
    relations: Echelon,
    stratum_basis: Vec<Monomial>,
    basis_pos: Vec<u32>,
}

impl QuotientPresentation {
    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn omega(&self) -> &WeightVector {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.stratum_basis.len()
    }

    /// Admissible monomials of the stratum, ascending.
    pub fn stratum_basis(&self) -> &[Monomial] {
        &self.stratum_basis
    }

    /// All weight-ω monomials, descending; the presentation's column space.
    pub fn block(&self) -> &[Monomial] {
        &self.block_desc
    }

    /// Reduces `f` to coordinates over [`Self::stratum_basis`]. Monomials of
    /// lower weight are dropped; a monomial of higher weight is an error.
    pub fn reduce(&self, f: &HomogeneousPolynomial) -> Result<Vec<u64>> {
        if f.arity() != self.h || (!f.is_zero() && f.degree() != self.n) {
            return Err(Error::contract(format!(
                "polynomial lives in ({}, {}), stratum is ({}, {})",
                f.arity(),
                f.degree(),
                self.h,
                self.n
            )));
        }
        let mut row = vec![0u64; words_for(self.block_desc.len())];
        for m in f.monomials() {
            match weight_cmp_slices(m.exponents(), self.omega.entries()) {
                std::cmp::Ordering::Greater => {
                    return Err(Error::OutsideStratum(format!(
                        "{m} has weight {} > {}",
                        m.weight(),
                        self.omega
                    )));
                }
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    let c = self.block_index.get(m.exponents()).expect("weight-ω column");
                    flip_bit(&mut row, *c as usize);
                }
            }
        }
        self.relations.reduce(&mut row);
        let mut coords = vec![0u64; words_for(self.stratum_basis.len())];
        for (c, _) in self.block_desc.iter().enumerate() {
            if get_bit(&row, c) {
                let pos = self.basis_pos[c];
                debug_assert_ne!(pos, NO_POS);
                set_bit(&mut coords, pos as usize);
            }
        }
        Ok(coords)
    }

    /// The residue of `f` as a sum of stratum basis monomials.
    pub fn residue_poly(&self, f: &HomogeneousPolynomial) -> Result<HomogeneousPolynomial> {
        let coords = self.reduce(f)?;
        self.poly_from_coords(&coords)
    }

    pub fn poly_from_coords(&self, coords: &[u64]) -> Result<HomogeneousPolynomial> {
        let mut out = HomogeneousPolynomial::zero(self.h, self.n);
        for (i, m) in self.stratum_basis.iter().enumerate() {
            if get_bit(coords, i) {
                out.toggle(m.clone());
            }
        }
        Ok(out)
    }
}

/// Presents the stratum `(h, n, ω)`.
///
/// Hit generators are projected to the columns of weight `≥ ω`; eliminating
/// the `> ω` block first realizes the intersection of the hit subspace with
/// `P_n(ω)`, and the surviving rows, restricted to the weight-ω block, are
/// the stratum's relations.
pub fn omega_presentation(
    h: usize,
    n: u64,
    omega: &WeightVector,
    opts: &SolverOptions,
) -> Result<QuotientPresentation> {
    if h < 1 {
        return Err(Error::contract("need at least one variable"));
    }
    if omega.degree() != n {
        return Err(Error::contract(format!(
            "deg({omega}) = {} but the stratum degree is {n}",
            omega.degree()
        )));
    }
    if omega.entries().iter().any(|&w| w > h as u32) {
        return Err(Error::contract(format!(
            "weight vector {omega} has an entry above the variable count {h}"
        )));
    }

    // universe: monomials of weight ≥ ω, descending, > ω block first
    let mut universe: Vec<Monomial> = Vec::new();
    let mut eq_count = 0usize;
    for m in enumerate_monomials(h, n) {
        match weight_cmp_slices(m.exponents(), omega.entries()) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => {
                universe.push(m);
                eq_count += 1;
            }
            std::cmp::Ordering::Greater => universe.push(m),
        }
    }
    universe.reverse();
    if universe.len() > opts.column_cap {
        return Err(Error::ResourceLimit(format!(
            "{} columns of weight >= {omega} exceed the cap of {}",
            universe.len(),
            opts.column_cap
        )));
    }
    let boundary = universe.len() - eq_count;
    debug_assert!(universe[boundary..]
        .iter()
        .all(|m| m.weight() == *omega));

    let index = build_index(&universe);
    let words = words_for(universe.len());
    let mut big = Echelon::new(universe.len());
    if opts.use_singer_filter {
        singer_rows(&universe, h, n, &mut big)?;
    }
    insert_hit_rows(h, n, &index, words, &mut big);

    // rows with no pivot in the forbidden block vanish there (row-echelon
    // property) and restrict to the stratum's relations
    let block_desc: Vec<Monomial> = universe[boundary..].to_vec();
    let block_words = words_for(block_desc.len());
    let mut relations = Echelon::new(block_desc.len());
    for (i, &p) in big.pivots().iter().enumerate() {
        if p >= boundary {
            let row = big.rows()[i].as_slice();
            debug_assert!((0..boundary).all(|c| !get_bit(row, c)));
            let mut projected = vec![0u64; block_words];
            for c in boundary..universe.len() {
                if get_bit(row, c) {
                    set_bit(&mut projected, c - boundary);
                }
            }
            relations.insert(projected);
        }
    }
    relations.finalize();

    let block_index = build_index(&block_desc);
    let mut stratum_basis = Vec::with_capacity(block_desc.len() - relations.rank());
    let mut basis_pos = vec![NO_POS; block_desc.len()];
    for (c, m) in block_desc.iter().enumerate().rev() {
        if !relations.is_pivot(c) {
            basis_pos[c] = stratum_basis.len() as u32;
            stratum_basis.push(m.clone());
        }
    }
    Ok(QuotientPresentation {
        h,
        n,
        omega: omega.clone(),
        block_desc,
        block_index,
        relations,
        stratum_basis,
        basis_pos,
    })
}

/// Number of columns an `omega_presentation` at `(h, n, ω)` would touch:
/// the monomials of weight `≥ ω`. Cheap (no enumeration); useful for
/// refusing long jobs up front.
pub fn stratum_universe_size(h: usize, n: u64, omega: &WeightVector) -> u128 {
    weight_vectors_of_degree(h, n)
        .into_iter()
        .filter(|w| w >= omega)
        .map(|w| {
            w.entries()
                .iter()
                .map(|&e| crate::monomial::binomial_u128(h as u64, e as u64))
                .product::<u128>()
        })
        .sum()
}

/// All weight vectors of degree `n` with entries bounded by `h`, in
/// descending order.
pub fn weight_vectors_of_degree(h: usize, n: u64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(h: u64, left: u64, prefix: &mut Vec<u32>, out: &mut Vec<WeightVector>) {
        if left == 0 {
            out.push(WeightVector::new(prefix.clone()));
            return;
        }
        let start = if left.is_multiple_of(2) { 0 } else { 1 };
        let mut w = start;
        while w <= h.min(left) {
            prefix.push(w as u32);
            rec(h, (left - w) / 2, prefix, out);
            prefix.pop();
            w += 2;
        }
    }
    rec(h as u64, n, &mut prefix, &mut out);
    out.sort();
    out.reverse();
    out
}

/// Computes the admissible basis stratum by stratum and returns the
/// nonempty strata, descending by weight. Equals the grouping of
/// [`cohit_basis`]'s output but never eliminates the full degree at once.
pub fn cohit_by_weight(
    h: usize,
    n: u64,
    opts: &SolverOptions,
) -> Result<Vec<(WeightVector, Vec<Monomial>)>> {
    if opts.use_wood_shortcut && wood_vanishing(h, n) {
        return Ok(Vec::new());
    }
    let spike_weight = if opts.use_singer_filter && n > 0 && mu(n) <= h as u64 {
        Some(minimal_spike(n, h)?.weight())
    } else {
        None
    };
    let weights = weight_vectors_of_degree(h, n);
    let strata: Result<Vec<(WeightVector, Vec<Monomial>)>> = weights
        .into_par_iter()
        .map(|w| {
            if let Some(spike_w) = &spike_weight {
                if w < *spike_w {
                    // every monomial of this stratum is hit (Singer)
                    return Ok((w, Vec::new()));
                }
            }
            let p = omega_presentation(h, n, &w, opts)?;
            Ok((w, p.stratum_basis().to_vec()))
        })
        .collect();
    Ok(strata?.into_iter().filter(|(_, b)| !b.is_empty()).collect())
}

/// Checks `dim (QP_n)^0(ω) = Σ_k C(h,k) · dim (QP_n^{⊗k})^{>0}(ω)` for
/// `1 ≤ k ≤ h-1`, computing every term independently.
pub fn zero_part_crosscheck(
    h: usize,
    n: u64,
    omega: &WeightVector,
    opts: &SolverOptions,
) -> Result<bool> {
    let full = omega_presentation(h, n, omega, opts)?;
    let zero_dim = full
        .stratum_basis()
        .iter()
        .filter(|m| m.has_zero_exponent())
        .count() as u128;
    let mut sum: u128 = 0;
    for k in 1..h {
        if omega.entries().iter().any(|&w| w > k as u32) {
            continue; // the stratum is empty in fewer variables
        }
        let p = omega_presentation(k, n, omega, opts)?;
        let positive = p
            .stratum_basis()
            .iter()
            .filter(|m| !m.has_zero_exponent())
            .count() as u128;
        sum += crate::monomial::binomial_u128(h as u64, k as u64) * positive;
    }
    Ok(zero_dim == sum)
}

/// Candidate monomials for a Kameko-kernel stratum: `x_S · v²` with
/// `|S| = ω_1` and `v` admissible of degree `(n - ω_1) / 2` with weight
/// `(ω_2, ω_3, …)`. Inadmissible `v` propagates to inadmissible `x_S v²`,
/// so the admissible stratum is always a subset of these candidates; the
/// unpruned elimination remains the source of truth.
pub fn kameko_kernel_candidates(
    h: usize,
    n: u64,
    omega: &WeightVector,
    opts: &SolverOptions,
) -> Result<Vec<Monomial>> {
    if omega.degree() != n {
        return Err(Error::contract("weight vector degree mismatch"));
    }
    let w1 = omega.entries().first().copied().unwrap_or(0) as u64;
    if !(n - w1).is_multiple_of(2) {
        return Err(Error::contract("degree and weight head have different parity"));
    }
    let tail = WeightVector::new(omega.entries().iter().skip(1).copied().collect());
    let inner_degree = (n - w1) / 2;
    let inner = cohit_basis(h, inner_degree, opts)?;
    let vs: Vec<&Monomial> = inner
        .admissible()
        .iter()
        .filter(|v| v.weight() == tail)
        .collect();
    let mut out = Vec::new();
    let mut supports: Vec<Vec<u32>> = Vec::new();
    subsets(h, w1 as usize, &mut supports);
    for v in vs {
        for support in &supports {
            let mut exps: Vec<u32> = v.exponents().iter().map(|&a| a * 2).collect();
            for &j in support {
                exps[j as usize] += 1;
            }
            let m = Monomial::new(exps);
            if m.weight() == *omega {
                out.push(m);
            }
        }
    }
    out.sort_by_cached_key(|m| (m.weight(), m.exponents().to_vec()));
    out.dedup();
    Ok(out)
}

fn subsets(h: usize, k: usize, out: &mut Vec<Vec<u32>>) {
    fn rec(h: usize, k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..h {
            cur.push(j as u32);
            rec(h, k, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(h, k, 0, &mut Vec::new(), out);
}
