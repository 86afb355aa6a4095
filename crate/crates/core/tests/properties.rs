use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use cayint::integrality::{is_integral, is_integral_with, CheckOptions};
use cayint::linalg::{char_poly, integer_root_split, IntMatrix, IntPolynomial, RationalMatrix};
use cayint::perm::permutation_matrix;
use cayint::reps::rep_sum;
use cayint::reps::Partition;
use cayint::scan::{canonical_key, connected_graphs};
use cayint::tgraph::families::join;
use cayint::tgraph::{gcm_decompose, parse_graph6, to_graph6, TGraph};

fn graph(max_n: usize) -> impl Strategy<Value = TGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut it = bits.into_iter();
            for i in 1..=n {
                for j in i + 1..=n {
                    if it.next().unwrap() {
                        pairs.push((i, j));
                    }
                }
            }
            TGraph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

fn eval_matrix(p: &IntPolynomial, m: &RationalMatrix) -> RationalMatrix {
    let mut acc = RationalMatrix::zeros(m.dim());
    for c in p.coeffs().iter().rev() {
        let c = BigRational::from_integer(c.clone());
        acc = acc.mul(m).unwrap().add(&RationalMatrix::identity(m.dim()).scale(&c)).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laplacian_is_degree_minus_transposition_sum(g in graph(7)) {
        let n = g.n();
        let mut sum = IntMatrix::zeros(n);
        for t in g.transpositions() {
            sum = sum.add(&permutation_matrix(&t.to_permutation(n).unwrap())).unwrap();
        }
        let expected = IntMatrix::identity(n).scale(g.edge_count() as i64).sub(&sum).unwrap();
        prop_assert_eq!(g.laplacian(), expected);
    }

    #[test]
    fn cayley_hamilton_integer(d in 1usize..=6, seed in proptest::collection::vec(-4i64..=4, 36)) {
        let rows: Vec<Vec<i64>> = (0..d).map(|i| seed[i * d..(i + 1) * d].to_vec()).collect();
        let m = RationalMatrix::from_integer_rows(&rows).unwrap();
        let p = char_poly(&m).unwrap();
        prop_assert_eq!(p.degree(), d);
        prop_assert!(eval_matrix(&p, &m).is_zero());
    }

    #[test]
    fn cayley_hamilton_representation_sums(g in graph(6), pick in any::<prop::sample::Index>()) {
        let n = g.n();
        let parts = cayint::reps::partitions_of(n).unwrap();
        let alpha: &Partition = pick.get(&parts);
        let m = rep_sum(alpha, &g.transpositions()).unwrap();
        let p = char_poly(&m).unwrap();
        prop_assert!(eval_matrix(&p, &m).is_zero());
    }

    #[test]
    fn root_split_reconstructs(
        roots in proptest::collection::vec(-6i64..=6, 0..6),
        extra in proptest::collection::vec(-5i64..=5, 0..4),
    ) {
        let mut counts = BTreeMap::new();
        for r in &roots {
            *counts.entry(*r).or_insert(0usize) += 1;
        }
        let mut coeffs = extra.clone();
        coeffs.push(1);
        let q = IntPolynomial::from_i64(&coeffs).unwrap();
        let p = IntPolynomial::from_roots(&counts).mul(&q);
        let split = integer_root_split(&p, 64);
        prop_assert_eq!(split.reconstruct(), p);
        for x in -64i64..=64 {
            prop_assert_ne!(split.remainder.eval(&BigInt::from(x)), BigInt::from(0));
        }
        for (r, m) in &counts {
            prop_assert!(split.roots.get(r).copied().unwrap_or(0) >= *m);
        }
    }

    #[test]
    fn graph6_round_trip(g in graph(12)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_key_ignores_labels(
        g in graph(8),
        shuffles in proptest::collection::vec(any::<prop::sample::Index>(), 100),
    ) {
        let key = canonical_key(&g).unwrap();
        let n = g.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        for (k, ix) in shuffles.iter().enumerate() {
            // walk through permutations by random transpositions
            let a = k % n;
            let b = ix.index(n);
            perm.swap(a, b);
            prop_assert_eq!(canonical_key(&g.relabel(&perm)).unwrap(), key.clone());
        }
    }

    #[test]
    fn complement_is_involution(g in graph(10)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), g.n() * (g.n() - 1) / 2);
    }

    #[test]
    fn gcm_matches_cographs(g in graph(8)) {
        let tree = gcm_decompose(&g);
        prop_assert_eq!(tree.is_some(), g.is_p4_free());
        if let Some(t) = tree {
            prop_assert_eq!(t.reconstruct(), g.clone());
            prop_assert!(g.is_laplacian_integral().unwrap().integral);
        }
    }

    #[test]
    fn forced_full_agrees(g in graph(6)) {
        let ts = g.transpositions();
        let quick = is_integral(g.n(), &ts).unwrap();
        let full = is_integral_with(g.n(), &ts, CheckOptions { force_full: true, ..Default::default() }).unwrap();
        prop_assert_eq!(quick.result, full.result);
        if quick.result.is_integral() {
            prop_assert!(g.is_laplacian_integral().unwrap().integral);
        }
    }

    #[test]
    fn join_laplacian_spectrum(a in graph(4), b in graph(4)) {
        prop_assume!(a.n() + b.n() <= 5);
        let (la, lb) = (a.is_laplacian_integral().unwrap(), b.is_laplacian_integral().unwrap());
        prop_assume!(la.integral && lb.integral);
        let (na, nb) = (a.n() as i64, b.n() as i64);
        let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
        let mut add = |k: i64, m: usize| *expected.entry(k).or_insert(0) += m;
        add(0, 1);
        add(na + nb, 1);
        let drop_zero = |spec: &BTreeMap<i64, usize>, shift: i64, add: &mut dyn FnMut(i64, usize)| {
            for (&l, &m) in spec {
                let m = if l == 0 { m - 1 } else { m };
                if m > 0 {
                    add(l + shift, m);
                }
            }
        };
        drop_zero(&la.spectrum, nb, &mut add);
        drop_zero(&lb.spectrum, na, &mut add);
        let lj = join(&a, &b).is_laplacian_integral().unwrap();
        prop_assert!(lj.integral);
        prop_assert_eq!(lj.spectrum, expected);
    }
}

#[test]
fn every_small_cograph_reconstructs() {
    for v in 1..=6 {
        for (key, g) in connected_graphs(v).unwrap() {
            match gcm_decompose(&g) {
                Some(t) => {
                    assert_eq!(t.reconstruct(), g, "{key}");
                    assert!(g.is_laplacian_integral().unwrap().integral, "{key}");
                }
                None => assert!(!g.is_p4_free(), "{key}"),
            }
        }
    }
}
