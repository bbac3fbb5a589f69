//! Randomized and scanned properties: the algebraic laws the solvers rely
//! on, checked against independent oracles where one exists.

use std::cmp::Ordering;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hitprob::gf2::{kernel_basis, rank, GF2Matrix};
use hitprob::invariants::{action_matrix, sigma_apply};
use hitprob::kameko::{kameko_down_monomial, kameko_up};
use hitprob::monomial::{
    alpha, compare, deg_of_weight, enumerate_monomials, mu, mu_decomposition,
    HomogeneousPolynomial, Monomial, WeightVector,
};
use hitprob::solver::{
    cohit_basis, omega_presentation, singer_hit_filter, wood_vanishing, zero_part_crosscheck,
    SolverOptions,
};
use hitprob::steenrod::{hit_generators, hit_generators_all, sq};

fn opts() -> SolverOptions {
    SolverOptions::default()
}

fn random_poly(rng: &mut StdRng, h: usize, n: u64) -> HomogeneousPolynomial {
    let all = enumerate_monomials(h, n);
    let mut f = HomogeneousPolynomial::zero(h, n);
    for m in all {
        if rng.gen_bool(0.4) {
            f.toggle(m);
        }
    }
    f
}

#[test]
fn cartan_multiplicativity_randomized() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..1000 {
        let h = rng.gen_range(1..=3usize);
        let nf = rng.gen_range(1..=4u64);
        let ng = rng.gen_range(1..=4u64);
        let f = random_poly(&mut rng, h, nf);
        let g = random_poly(&mut rng, h, ng);
        let k = rng.gen_range(0..=(nf + ng));
        let lhs = sq(k, &(&f * &g));
        let mut rhs = HomogeneousPolynomial::zero(h, nf + ng + k);
        for a in 0..=k {
            rhs += &(&sq(a, &f) * &sq(k - a, &g));
        }
        assert_eq!(lhs, rhs, "trial {trial}: h={h} deg f={nf} deg g={ng} k={k}");
    }
}

#[test]
fn instability_randomized() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let h = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=5u64);
        let f = random_poly(&mut rng, h, n);
        assert_eq!(sq(n, &f), f.square());
        for k in n + 1..=n + 3 {
            assert!(sq(k, &f).is_zero());
        }
    }
}

#[test]
fn pow2_squares_span_the_full_hit_subspace() {
    // verification mode: adding every Sq^k changes nothing
    for (h, n) in [(1usize, 6u64), (2, 5), (2, 6), (3, 5)] {
        let cols = enumerate_monomials(h, n);
        let index: std::collections::HashMap<Vec<u32>, usize> = cols
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i))
            .collect();
        let to_matrix = |gens: Vec<HomogeneousPolynomial>| {
            let mut m = GF2Matrix::new(cols.len());
            for g in gens {
                let bits: Vec<usize> =
                    g.monomials().map(|mo| index[mo.exponents()]).collect();
                m.push_bit_row(&bits);
            }
            m
        };
        let pow2 = to_matrix(hit_generators(h, n));
        let all = to_matrix(hit_generators_all(h, n));
        assert_eq!(rank(&pow2), rank(&all), "(h,n)=({h},{n})");
    }
}

#[test]
fn spike_admissibility_scan() {
    // every spike of degree n appears in the admissible basis, h <= 4, n <= 30
    for h in 1..=4usize {
        for n in 1..=30u64 {
            if wood_vanishing(h, n) {
                continue;
            }
            let basis = cohit_basis(h, n, &opts()).unwrap();
            for m in enumerate_monomials(h, n) {
                if m.is_spike() {
                    assert!(
                        basis.admissible().contains(&m),
                        "spike {m} missing at (h,n)=({h},{n})"
                    );
                }
            }
        }
    }
}

#[test]
fn wood_vanishing_scan() {
    for h in 1..=4usize {
        for n in 1..=40u64 {
            if !wood_vanishing(h, n) {
                continue;
            }
            let fast = cohit_basis(h, n, &opts()).unwrap();
            assert_eq!(fast.dim(), 0, "(h,n)=({h},{n})");
            if h <= 2 {
                // non-circular spot check: raw elimination agrees
                let raw = cohit_basis(h, n, &SolverOptions::raw()).unwrap();
                assert_eq!(raw.dim(), 0, "raw (h,n)=({h},{n})");
            }
        }
    }
}

#[test]
fn finalized_echelon_is_independent_of_insertion_order() {
    // reduced form is unique for a row space, whatever order rows arrive in
    let mut rng = StdRng::seed_from_u64(1234);
    for _ in 0..20 {
        let cols = rng.gen_range(10..=80usize);
        let words = cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for _ in 0..rng.gen_range(5..=60usize) {
            let mut row: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
            let tail = cols % 64;
            if tail != 0 {
                row[words - 1] &= (1u64 << tail) - 1;
            }
            rows.push(row);
        }
        let build = |rows: &[Vec<u64>]| {
            let mut e = hitprob::gf2::Echelon::new(cols);
            for r in rows {
                e.insert(r.clone());
            }
            e.finalize();
            (e.pivot_columns(), e.rows().to_vec())
        };
        let (p1, r1) = build(&rows);
        let mut shuffled = rows.clone();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let (p2, r2) = build(&shuffled);
        assert_eq!(p1, p2);
        assert_eq!(r1, r2);
    }
}

#[test]
fn rank_nullity_on_random_matrices() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..10 {
        let cols = rng.gen_range(50..=200usize);
        let rows = rng.gen_range(50..=200usize);
        let words = cols.div_ceil(64);
        let mut m = GF2Matrix::new(cols);
        for _ in 0..rows {
            let mut row: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
            let tail = cols % 64;
            if tail != 0 {
                row[words - 1] &= (1u64 << tail) - 1;
            }
            m.push_row(row);
        }
        assert_eq!(rank(&m) + kernel_basis(&m).len(), cols);
    }
}

#[test]
fn singer_filter_sound_but_incomplete() {
    // sound: every filtered monomial reduces to zero
    for (h, n) in [(3usize, 10u64), (4, 9)] {
        let basis = cohit_basis(h, n, &opts()).unwrap();
        for m in enumerate_monomials(h, n) {
            if singer_hit_filter(&m).unwrap() {
                assert!(basis
                    .is_hit(&HomogeneousPolynomial::from_monomial(m))
                    .unwrap());
            }
        }
    }
    // incomplete: t1 t2 t3 t4^11 is hit although its weight (4,1,0,1)
    // exceeds the minimal spike's (2,2,2)
    let t = Monomial::new(vec![1, 1, 1, 11]);
    assert!(!singer_hit_filter(&t).unwrap());
    let basis = cohit_basis(4, 14, &opts()).unwrap();
    assert!(basis
        .is_hit(&HomogeneousPolynomial::from_monomial(t))
        .unwrap());
}

/// Minutes-long: the classical five-variable incompleteness example in
/// degree 37. `cargo test -- --ignored` runs it.
#[test]
#[ignore = "eliminates a 101k-column degree; run with --ignored"]
fn singer_filter_incomplete_in_five_variables() {
    let t = Monomial::new(vec![1, 9, 9, 9, 9]);
    assert_eq!(t.weight(), WeightVector::new(vec![5, 0, 0, 4]));
    assert!(!singer_hit_filter(&t).unwrap());
    let basis = cohit_basis(5, 37, &opts()).unwrap();
    assert!(basis
        .is_hit(&HomogeneousPolynomial::from_monomial(t))
        .unwrap());
}

#[test]
fn zero_part_crosscheck_examples() {
    let cases = [
        (6usize, 10u64, vec![4u32, 3]),
        (6, 10, vec![2, 2, 1]),
        (5, 9, vec![3, 3]),
        (5, 9, vec![3, 1, 1]),
        (2, 5, vec![1, 2]),
    ];
    for (h, n, w) in cases {
        let w = WeightVector::new(w);
        assert!(
            zero_part_crosscheck(h, n, &w, &opts()).unwrap(),
            "(h,n,w)=({h},{n},{w})"
        );
    }
}

#[test]
fn action_matrices_are_involutions_on_computed_presentations() {
    let cases = [
        (2usize, 3u64, vec![1u32, 1]),
        (3, 7, vec![3, 2]),
        (4, 6, vec![2, 2]),
        (9, 10, vec![8, 1]),
    ];
    for (h, n, w) in cases {
        let w = WeightVector::new(w);
        let p = omega_presentation(h, n, &w, &opts()).unwrap();
        let dim = p.dim();
        if dim == 0 {
            continue;
        }
        for d in 1..=h {
            let a = action_matrix(d, &p).unwrap();
            // square the action row by row
            for j in 0..dim {
                let mut out = vec![0u64; dim.div_ceil(64)];
                for i in 0..dim {
                    if a.bit(j, i) {
                        for (o, s) in out.iter_mut().zip(a.row(i)) {
                            *o ^= s;
                        }
                    }
                }
                for c in 0..dim {
                    let expected = c == j;
                    assert_eq!(
                        out[c / 64] >> (c % 64) & 1 == 1,
                        expected,
                        "σ_{d}² != id at (h,n,w)=({h},{n},{w}), row {j}"
                    );
                }
            }
        }
    }
}

#[test]
fn presentation_reduction_idempotent() {
    let w = WeightVector::new(vec![3, 2]);
    let p = omega_presentation(3, 7, &w, &opts()).unwrap();
    for b in p.stratum_basis() {
        let f = HomogeneousPolynomial::from_monomial(b.clone());
        let once = p.residue_poly(&f).unwrap();
        let twice = p.residue_poly(&once).unwrap();
        assert_eq!(once, twice);
    }
}

#[test]
fn transvection_fixes_presentations() {
    // σ_d images reduce without ever leaving the stratum
    let w = WeightVector::new(vec![2, 1]);
    let p = omega_presentation(2, 4, &w, &opts()).unwrap();
    for b in p.stratum_basis() {
        for d in 1..=2usize {
            let image = sigma_apply(d, &HomogeneousPolynomial::from_monomial(b.clone())).unwrap();
            p.reduce(&image).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weight_degree_roundtrip(exps in proptest::collection::vec(0u32..64, 1..6)) {
        let m = Monomial::new(exps);
        prop_assert_eq!(deg_of_weight(&m.weight()), m.degree());
    }

    #[test]
    fn weight_permutation_invariant(
        exps in proptest::collection::vec(0u32..64, 2..6),
        swap in (0usize..5, 0usize..5),
    ) {
        let m = Monomial::new(exps.clone());
        let mut permuted = exps;
        let (i, j) = (swap.0 % permuted.len(), swap.1 % permuted.len());
        permuted.swap(i, j);
        prop_assert_eq!(m.weight(), Monomial::new(permuted).weight());
    }

    #[test]
    fn kameko_roundtrip(exps in proptest::collection::vec(0u32..1000, 1..7)) {
        let m = Monomial::new(exps);
        prop_assert_eq!(kameko_down_monomial(&kameko_up(&m)), Some(m));
    }

    #[test]
    fn mu_defining_property(n in 0u64..100_000) {
        let k = mu(n);
        prop_assert!(alpha(n + k) as u64 <= k);
        for j in 0..k {
            prop_assert!(alpha(n + j) as u64 > j);
        }
    }

    #[test]
    fn mu_decomposition_roundtrip(n in 1u64..100_000) {
        let r = mu(n);
        let ds = mu_decomposition(n, r).unwrap();
        let sum: u64 = ds.iter().map(|&d| (1u64 << d) - 1).sum();
        prop_assert_eq!(sum, n);
        prop_assert_eq!(ds.len() as u64, r);
    }

    #[test]
    fn compare_is_a_strict_total_order(seed in 0u64..1u64<<48) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = rng.gen_range(2..=4usize);
        let n = rng.gen_range(1..=9u64);
        let all = enumerate_monomials(h, n);
        let pick = |rng: &mut StdRng| all[rng.gen_range(0..all.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        // exactly one of <, =, > holds
        let ab = compare(&a, &b).unwrap();
        let ba = compare(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        // transitivity on the sampled triple
        if compare(&a, &b).unwrap() != Ordering::Greater
            && compare(&b, &c).unwrap() != Ordering::Greater
        {
            prop_assert_ne!(compare(&a, &c).unwrap(), Ordering::Greater);
        }
    }
}
