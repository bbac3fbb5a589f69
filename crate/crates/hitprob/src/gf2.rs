//! Dense bit-packed linear algebra over GF(2): row-echelon forms, ranks,
//! kernels, vector reduction, and column-constrained row-space bases.
//!
//! Rows are `Vec<u64>` with column `c` at word `c / 64`, bit `c % 64`.
//! Elimination is deterministic; a finalized echelon is in reduced form
//! (each pivot column carries a single 1), which makes results unique for
//! a given row space and column order, independent of insertion order.

use crate::{Error, Result};

pub(crate) fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

pub(crate) fn leading_one(row: &[u64]) -> Option<usize> {
    for (w, &word) in row.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

pub(crate) fn get_bit(row: &[u64], c: usize) -> bool {
    row[c / 64] >> (c % 64) & 1 == 1
}

pub(crate) fn set_bit(row: &mut [u64], c: usize) {
    row[c / 64] |= 1u64 << (c % 64);
}

pub(crate) fn flip_bit(row: &mut [u64], c: usize) {
    row[c / 64] ^= 1u64 << (c % 64);
}

/// A dense GF(2) matrix. Row and column counts are fixed at construction;
/// all mutation is XOR of rows during elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl GF2Matrix {
    pub fn new(cols: usize) -> Self {
        GF2Matrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let w = words_for(cols);
        assert!(rows.iter().all(|r| r.len() == w));
        GF2Matrix { cols, rows }
    }

    /// Builds a matrix from per-row column index lists.
    pub fn from_bit_rows(cols: usize, rows: &[Vec<usize>]) -> Self {
        let mut m = GF2Matrix::new(cols);
        for bits in rows {
            m.push_bit_row(bits);
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::new(n);
        for i in 0..n {
            m.push_bit_row(&[i]);
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), words_for(self.cols));
        self.rows.push(row);
    }

    pub fn push_bit_row(&mut self, bits: &[usize]) {
        let mut row = vec![0u64; words_for(self.cols)];
        for &c in bits {
            assert!(c < self.cols);
            flip_bit(&mut row, c);
        }
        self.rows.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn bit(&self, r: usize, c: usize) -> bool {
        get_bit(&self.rows[r], c)
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut out =
            GF2Matrix::from_rows(self.rows.len(), vec![vec![0u64; words_for(self.rows.len())]; self.cols]);
        for (r, row) in self.rows.iter().enumerate() {
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let c = w * 64 + bits.trailing_zeros() as usize;
                    set_bit(&mut out.rows[c], r);
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    /// Matrix–vector product `M · x` (x over columns, result over rows).
    pub fn mul_vector(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), words_for(self.cols));
        let mut out = vec![0u64; words_for(self.rows.len())];
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(x) {
                acc ^= a & b;
            }
            if acc.count_ones() & 1 == 1 {
                set_bit(&mut out, r);
            }
        }
        out
    }
}

/// An echelon basis of a row space, built incrementally.
///
/// Pivot columns strictly increase down the stored rows once finalized,
/// and finalization back-substitutes to reduced form.
pub struct Echelon {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<u32>,
    finalized: bool,
}

const NO_ROW: u32 = u32::MAX;

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            words: words_for(cols),
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![NO_ROW; cols],
            finalized: false,
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.row_of_pivot[c] != NO_ROW
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Reduces `row` against the current basis and stores it if independent.
    /// Returns the new pivot column when one is claimed.
    pub fn insert(&mut self, mut row: Vec<u64>) -> Option<usize> {
        assert!(!self.finalized, "echelon is frozen");
        debug_assert_eq!(row.len(), self.words);
        loop {
            let lead = leading_one(&row)?;
            let r = self.row_of_pivot[lead];
            if r == NO_ROW {
                self.row_of_pivot[lead] = self.rows.len() as u32;
                self.rows.push(row);
                self.pivots.push(lead);
                return Some(lead);
            }
            let pivot_row = &self.rows[r as usize];
            xor_into(&mut row, pivot_row);
        }
    }

    /// Sorts rows by pivot and back-substitutes to reduced echelon form.
    pub fn finalize(&mut self) {
        if self.finalized {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| self.pivots[i]);
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut pivots = Vec::with_capacity(self.rows.len());
        for &i in &order {
            rows.push(std::mem::take(&mut self.rows[i]));
            pivots.push(self.pivots[i]);
        }
        self.rows = rows;
        self.pivots = pivots;
        for (i, &p) in self.pivots.iter().enumerate() {
            self.row_of_pivot[p] = i as u32;
        }
        // clear each pivot column above its row
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            let (above, rest) = self.rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if get_bit(row, p) {
                    xor_into(row, pivot_row);
                }
            }
        }
        self.finalized = true;
    }

    /// Canonical residue of `row` modulo the row space: zero on every pivot
    /// column. The echelon must be finalized.
    pub fn reduce(&self, row: &mut [u64]) {
        assert!(self.finalized, "finalize before reducing");
        debug_assert_eq!(row.len(), self.words);
        for (i, &p) in self.pivots.iter().enumerate() {
            if get_bit(row, p) {
                xor_into(row, &self.rows[i]);
            }
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis of `{x : row · x = 0 for every stored row}` — the kernel of
    /// the matrix whose rows are this row space. Requires finalized form.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        assert!(self.finalized);
        let words = self.words;
        let mut out = Vec::with_capacity(self.cols - self.rows.len());
        for free in 0..self.cols {
            if self.is_pivot(free) {
                continue;
            }
            let mut x = vec![0u64; words];
            set_bit(&mut x, free);
            for (i, &p) in self.pivots.iter().enumerate() {
                if get_bit(&self.rows[i], free) {
                    set_bit(&mut x, p);
                }
            }
            out.push(x);
        }
        out
    }
}

fn permute_row(row: &[u64], order: &[usize], words_out: usize) -> Vec<u64> {
    // position i of the output is column order[i] of the input
    let mut out = vec![0u64; words_out];
    for (i, &c) in order.iter().enumerate() {
        if get_bit(row, c) {
            set_bit(&mut out, i);
        }
    }
    out
}

fn unpermute_row(row: &[u64], order: &[usize], words_out: usize) -> Vec<u64> {
    let mut out = vec![0u64; words_out];
    for (i, &c) in order.iter().enumerate() {
        if get_bit(row, i) {
            set_bit(&mut out, c);
        }
    }
    out
}

/// Reduced row echelon form of `m` with pivots chosen greedily along
/// `column_order` (identity when `None`). Returns the reduced matrix in the
/// original column numbering together with the pivot column set, sorted by
/// elimination priority.
pub fn echelonize(m: &GF2Matrix, column_order: Option<&[usize]>) -> Result<(GF2Matrix, Vec<usize>)> {
    let cols = m.col_count();
    match column_order {
        None => {
            let mut e = Echelon::new(cols);
            for row in m.rows() {
                e.insert(row.clone());
            }
            e.finalize();
            let pivots = e.pivots.clone();
            Ok((GF2Matrix::from_rows(cols, e.rows), pivots))
        }
        Some(order) => {
            if order.len() != cols {
                return Err(Error::contract("column_order must be a permutation of 0..cols"));
            }
            let mut seen = vec![false; cols];
            for &c in order {
                if c >= cols || seen[c] {
                    return Err(Error::contract("column_order must be a permutation of 0..cols"));
                }
                seen[c] = true;
            }
            let words = words_for(cols);
            let mut e = Echelon::new(cols);
            for row in m.rows() {
                e.insert(permute_row(row, order, words));
            }
            e.finalize();
            let pivots: Vec<usize> = e.pivots.iter().map(|&p| order[p]).collect();
            let rows: Vec<Vec<u64>> =
                e.rows.iter().map(|r| unpermute_row(r, order, words)).collect();
            Ok((GF2Matrix::from_rows(cols, rows), pivots))
        }
    }
}

/// Rank of `m`.
pub fn rank(m: &GF2Matrix) -> usize {
    let mut e = Echelon::new(m.col_count());
    for row in m.rows() {
        e.insert(row.clone());
    }
    e.rank()
}

/// Basis of `{x : M x = 0}`; its size is `cols - rank`.
pub fn kernel_basis(m: &GF2Matrix) -> Vec<Vec<u64>> {
    let mut e = Echelon::new(m.col_count());
    for row in m.rows() {
        e.insert(row.clone());
    }
    e.finalize();
    e.kernel_basis()
}

/// Residue of `v` against an echelonized matrix (natural column order):
/// `v` minus the unique row-space element agreeing with it on the pivot
/// columns. Zero iff `v` lies in the row space.
pub fn reduce_vector(v: &[u64], echelonized: &GF2Matrix) -> Vec<u64> {
    let mut out = v.to_vec();
    loop {
        let mut changed = false;
        for row in echelonized.rows() {
            if let Some(p) = leading_one(row) {
                if get_bit(&out, p) {
                    xor_into(&mut out, row);
                    changed = true;
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Basis of the row-space elements of `m` vanishing on `forbidden_columns`,
/// computed by eliminating with the forbidden columns ordered first and
/// keeping the rows with no pivot among them.
pub fn constrained_span(m: &GF2Matrix, forbidden_columns: &[usize]) -> Result<Vec<Vec<u64>>> {
    let cols = m.col_count();
    let mut is_forbidden = vec![false; cols];
    for &c in forbidden_columns {
        if c >= cols {
            return Err(Error::contract("forbidden column out of range"));
        }
        is_forbidden[c] = true;
    }
    let mut order: Vec<usize> = Vec::with_capacity(cols);
    order.extend((0..cols).filter(|&c| is_forbidden[c]));
    let boundary = order.len();
    order.extend((0..cols).filter(|&c| !is_forbidden[c]));

    let words = words_for(cols);
    let mut e = Echelon::new(cols);
    for row in m.rows() {
        e.insert(permute_row(row, &order, words));
    }
    e.finalize();
    let mut out = Vec::new();
    for (i, &p) in e.pivots.iter().enumerate() {
        if p >= boundary {
            out.push(unpermute_row(&e.rows[i], &order, words));
        }
    }
    Ok(out)
}
