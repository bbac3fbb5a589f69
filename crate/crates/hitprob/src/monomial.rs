//! Monomials in `F2[t1..th]`, homogeneous polynomials with GF(2)
//! coefficients, weight vectors, and the order underlying admissibility.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A monomial `t1^a1 … th^ah`, stored as its exponent vector.
///
/// Two monomials are equal iff they have the same number of variables and
/// identical exponents. Exponents are capped at `u32`, which leaves ample
/// headroom over anything that occurs in practice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "monomial needs at least one variable");
        Monomial { exps }
    }

    /// The constant monomial `1` in `h` variables.
    pub fn constant(h: usize) -> Self {
        Monomial::new(vec![0; h])
    }

    /// Number of variables `h`.
    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&a| a as u64).sum()
    }

    /// The weight vector: entry `i` counts the variables whose exponent has
    /// bit `i-1` set. Trailing zeros are stripped.
    pub fn weight(&self) -> WeightVector {
        WeightVector::new(weight_entries(&self.exps))
    }

    /// True iff every exponent is of the form `2^k - 1`.
    pub fn is_spike(&self) -> bool {
        self.exps.iter().all(|&a| a & (a + 1) == 0)
    }

    /// True iff some variable is missing (has exponent zero).
    pub fn has_zero_exponent(&self) -> bool {
        self.exps.contains(&0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.arity(), other.arity(), "variable count mismatch");
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn squared(&self) -> Monomial {
        Monomial::new(self.exps.iter().map(|&a| a * 2).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m({})", self)
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses the text form "15,7,3,1,0,0".
    fn from_str(s: &str) -> Result<Self> {
        let exps: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let exps = exps.map_err(|e| Error::contract(format!("bad monomial {s:?}: {e}")))?;
        if exps.is_empty() {
            return Err(Error::contract("empty monomial"));
        }
        Ok(Monomial::new(exps))
    }
}

pub(crate) fn weight_entries(exps: &[u32]) -> Vec<u32> {
    let mut rest: Vec<u32> = exps.to_vec();
    let mut out = Vec::new();
    while rest.iter().any(|&a| a != 0) {
        out.push(rest.iter().filter(|&&a| a & 1 == 1).count() as u32);
        for a in rest.iter_mut() {
            *a >>= 1;
        }
    }
    out
}

/// Streaming left-lex comparison of `weight(exps)` against `omega`,
/// without building the weight vector.
pub(crate) fn weight_cmp_slices(exps: &[u32], omega: &[u32]) -> Ordering {
    let mut shift = 0u32;
    let mut i = 0usize;
    loop {
        let mut any = false;
        let mut count = 0u32;
        for &a in exps {
            let v = a >> shift;
            if v != 0 {
                any = true;
                count += v & 1;
            }
        }
        let target = omega.get(i).copied().unwrap_or(0);
        match count.cmp(&target) {
            Ordering::Equal => {}
            o => return o,
        }
        if !any && i + 1 >= omega.len() {
            return Ordering::Equal;
        }
        shift += 1;
        i += 1;
        if shift > 32 && i >= omega.len() {
            return Ordering::Equal;
        }
    }
}

/// A weight vector `(w1, w2, …)` in canonical form (no trailing zeros).
///
/// Ordered left-lexicographically, with the shorter vector padded by zeros;
/// `deg = Σ 2^{j-1} w_j` recovers the degree of any monomial of this weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector { entries }
    }

    pub fn empty() -> Self {
        WeightVector { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(j, &w)| (w as u64) << j)
            .sum()
    }
}

impl Ord for WeightVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.entries.len().max(other.entries.len());
        for i in 0..n {
            let a = self.entries.get(i).copied().unwrap_or(0);
            let b = other.entries.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for WeightVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({})", self)
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(WeightVector::empty());
        }
        let entries: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let entries =
            entries.map_err(|e| Error::contract(format!("bad weight vector {s:?}: {e}")))?;
        Ok(WeightVector::new(entries))
    }
}

/// `deg(ω) = Σ 2^{j-1} ω_j`.
pub fn deg_of_weight(w: &WeightVector) -> u64 {
    w.degree()
}

/// Number of ones in the binary expansion of `n`.
pub fn alpha(n: u64) -> u32 {
    n.count_ones()
}

/// `μ(n)`: the least `k` with `α(n + k) ≤ k`.
pub fn mu(n: u64) -> u64 {
    (0u64..).find(|&k| alpha(n + k) as u64 <= k).unwrap()
}

/// The unique exponents `d_1 > … > d_{r-1} ≥ d_r > 0` with
/// `n = Σ (2^{d_i} - 1)`, defined when `r = μ(n)`.
pub fn mu_decomposition(n: u64, r: u64) -> Result<Vec<u32>> {
    if n == 0 || r != mu(n) {
        return Err(Error::contract(format!(
            "mu_decomposition requires r = mu(n); got n = {n}, r = {r}, mu(n) = {}",
            mu(n)
        )));
    }
    let m = n + r;
    let mut ds: Vec<u32> = (0..64).rev().filter(|&b| m >> b & 1 == 1).collect();
    // Split the smallest power in two until exactly r summands remain; only
    // the final pair may repeat, and it does by construction.
    while (ds.len() as u64) < r {
        let last = ds.pop().unwrap();
        if last == 0 || (ds.last() == Some(&(last - 1))) {
            return Err(Error::contract(format!("no mu decomposition of {n} into {r} parts")));
        }
        ds.push(last - 1);
        ds.push(last - 1);
    }
    debug_assert_eq!(ds.len() as u64, r);
    let sum: u64 = ds.iter().map(|&d| (1u64 << d) - 1).sum();
    assert_eq!(sum, n, "mu decomposition must reproduce n");
    assert!(ds.iter().all(|&d| d > 0));
    for (idx, w) in ds.windows(2).enumerate() {
        if idx + 2 == ds.len() {
            assert!(w[0] >= w[1], "final pair must be weakly decreasing");
        } else {
            assert!(w[0] > w[1], "decomposition not strictly decreasing");
        }
    }
    Ok(ds)
}

/// True iff every exponent of `m` is `2^k - 1`.
pub fn is_spike(m: &Monomial) -> bool {
    m.is_spike()
}

/// The minimal spike of degree `n` in `h` variables: exponents
/// `2^{d_i} - 1` from the μ-decomposition, padded with zeros.
pub fn minimal_spike(n: u64, h: usize) -> Result<Monomial> {
    let r = mu(n);
    if r > h as u64 {
        return Err(Error::NoSpike { degree: n, vars: h, mu: r });
    }
    if n == 0 {
        return Ok(Monomial::constant(h));
    }
    let ds = mu_decomposition(n, r)?;
    let mut exps: Vec<u32> = ds.iter().map(|&d| (1u32 << d) - 1).collect();
    exps.resize(h, 0);
    Ok(Monomial::new(exps))
}

/// Total order on monomials of one bidegree `(h, n)`: first by weight
/// vector (left-lex), then by exponent vector (left-lex).
pub fn compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::contract(format!(
            "compare: arity mismatch {} vs {}",
            a.arity(),
            b.arity()
        )));
    }
    if a.degree() != b.degree() {
        return Err(Error::contract(format!(
            "compare: degree mismatch {} vs {}",
            a.degree(),
            b.degree()
        )));
    }
    Ok(admissible_order(a, b))
}

/// Same as [`compare`] but without the contract checks; callers must only
/// apply it within one `(h, n)` family.
pub(crate) fn admissible_order(a: &Monomial, b: &Monomial) -> Ordering {
    weight_cmp_slices(a.exponents(), &weight_entries(b.exponents()))
        .then_with(|| a.exponents().cmp(b.exponents()))
}

/// All monomials of degree `n` in `h` variables, ascending in the
/// admissibility order. There are `C(n+h-1, h-1)` of them.
pub fn enumerate_monomials(h: usize, n: u64) -> Vec<Monomial> {
    assert!(h >= 1);
    let mut out = Vec::new();
    let mut exps = vec![0u32; h];
    fn rec(exps: &mut Vec<u32>, pos: usize, left: u64, out: &mut Vec<Monomial>) {
        if pos + 1 == exps.len() {
            exps[pos] = u32::try_from(left).expect("degree too large for u32 exponent");
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for a in 0..=left {
            exps[pos] = u32::try_from(a).expect("degree too large for u32 exponent");
            rec(exps, pos + 1, left - a, out);
        }
    }
    rec(&mut exps, 0, n, &mut out);
    out.sort_by_cached_key(|m| (m.weight(), m.exponents().to_vec()));
    out
}

/// A finite set of same-degree monomials with implicit GF(2) coefficients;
/// addition is symmetric difference.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    h: usize,
    degree: u64,
    monomials: HashSet<Monomial>,
}

impl HomogeneousPolynomial {
    pub fn zero(h: usize, degree: u64) -> Self {
        HomogeneousPolynomial { h, degree, monomials: HashSet::new() }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let h = m.arity();
        let degree = m.degree();
        let mut monomials = HashSet::new();
        monomials.insert(m);
        HomogeneousPolynomial { h, degree, monomials }
    }

    pub fn from_monomials(h: usize, degree: u64, ms: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut p = HomogeneousPolynomial::zero(h, degree);
        for m in ms {
            if m.arity() != h || m.degree() != degree {
                return Err(Error::contract(format!(
                    "monomial {m} does not live in P_{degree} over {h} variables"
                )));
            }
            p.toggle(m);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.h
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    /// Monomials in ascending admissibility order.
    pub fn monomials_sorted(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.monomials.iter().cloned().collect();
        v.sort_by_cached_key(|m| (m.weight(), m.exponents().to_vec()));
        v
    }

    /// GF(2) insertion: adding a monomial twice cancels it.
    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.arity(), self.h);
        debug_assert_eq!(m.degree(), self.degree);
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn square(&self) -> HomogeneousPolynomial {
        let mut out = HomogeneousPolynomial::zero(self.h, self.degree * 2);
        for m in &self.monomials {
            out.toggle(m.squared());
        }
        out
    }
}

impl std::ops::AddAssign<&HomogeneousPolynomial> for HomogeneousPolynomial {
    fn add_assign(&mut self, rhs: &HomogeneousPolynomial) {
        assert_eq!(self.h, rhs.h);
        assert_eq!(self.degree, rhs.degree, "addition needs matching degrees");
        for m in &rhs.monomials {
            self.toggle(m.clone());
        }
    }
}

impl std::ops::Add for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn add(self, rhs: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Mul for &HomogeneousPolynomial {
    type Output = HomogeneousPolynomial;
    fn mul(self, rhs: &HomogeneousPolynomial) -> HomogeneousPolynomial {
        assert_eq!(self.h, rhs.h);
        let mut out = HomogeneousPolynomial::zero(self.h, self.degree + rhs.degree);
        for a in &self.monomials {
            for b in &rhs.monomials {
                out.toggle(a.mul(b));
            }
        }
        out
    }
}

impl fmt::Debug for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials_sorted().iter().map(|m| m.to_string()).collect();
        write!(f, "poly[{}]", parts.join(" + "))
    }
}

pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
