//! Stratum tables across ranks: degree 9 for three to nine variables and
//! the degree h+4 closed formulas, pinned to their known values.

use hitprob::monomial::WeightVector;
use hitprob::solver::{cohit_basis, stratify, SolverOptions};
use hitprob::tables::{binomial, mm_formula};

fn positive_dims(h: usize, n: u64) -> Vec<(WeightVector, usize, usize)> {
    let basis = cohit_basis(h, n, &SolverOptions::default()).unwrap();
    stratify(&basis)
        .into_iter()
        .map(|(w, ms)| {
            let pos = ms.iter().filter(|m| !m.has_zero_exponent()).count();
            (w, ms.len() - pos, pos)
        })
        .collect()
}

fn positive_of(table: &[(WeightVector, usize, usize)], w: &[u32]) -> usize {
    let key = WeightVector::new(w.to_vec());
    table.iter().find(|(k, _, _)| *k == key).map(|&(_, _, p)| p).unwrap_or(0)
}

type RankRow = (usize, &'static [(&'static [u32], usize)]);

#[test]
fn degree_nine_positive_parts_by_rank() {
    // positive-part dimensions of the degree-9 strata, ranks 3 through 9
    let expected: &[RankRow] = &[
        (3, &[(&[3, 1, 1], 6), (&[3, 3], 1)]),
        (4, &[(&[3, 1, 1], 12), (&[3, 3], 6)]),
        (5, &[(&[3, 1, 1], 6), (&[3, 3], 15), (&[5, 2], 10)]),
        (6, &[(&[3, 1, 1], 0), (&[3, 3], 10), (&[5, 2], 24)]),
        (7, &[(&[3, 3], 0), (&[5, 2], 14), (&[7, 1], 7)]),
        (8, &[(&[5, 2], 0), (&[7, 1], 7)]),
        (9, &[(&[7, 1], 0), (&[9], 1)]),
    ];
    for &(h, rows) in expected {
        let table = positive_dims(h, 9);
        for &(w, dim) in rows {
            assert_eq!(
                positive_of(&table, w),
                dim,
                "positive part at (h, 9, {w:?})"
            );
        }
        // the total also agrees with the closed formula at this rank
        let total: usize = table.iter().map(|&(_, z, p)| z + p).sum();
        assert_eq!(total as u128, mm_formula(h, 9), "total at h={h}");
    }
}

#[test]
fn degree_h_plus_4_positive_parts_follow_the_closed_formulas() {
    // at degree h+4 the positive parts are C(h-1,4)-1, C(h-1,2),
    // h*C(h-2,2), C(h,2) on the four listed weights
    for h in [6usize, 7] {
        let hn = h as u64;
        let table = positive_dims(h, hn + 4);
        let cases: [(Vec<u32>, u128); 4] = [
            (vec![hn as u32 - 4, 4], binomial(hn - 1, 4) - 1),
            (vec![hn as u32 - 2, 1, 1], binomial(hn - 1, 2)),
            (vec![hn as u32 - 2, 3], hn as u128 * binomial(hn - 2, 2)),
            (vec![hn as u32, 2], binomial(hn, 2)),
        ];
        for (w, dim) in cases {
            assert_eq!(
                positive_of(&table, &w) as u128,
                dim,
                "positive part at (h, h+4, {w:?}), h={h}"
            );
        }
    }
}
