use std::collections::HashMap;

use nichols_core::exactq::LaurentScalar;
use nichols_core::extension::{braid_spec, exponent_matrix, extended_cartan};
use nichols_core::gcm::{finite_type, validate_gcm};
use nichols_core::rootdata::{root_datum, Normalization, Weight};
use nichols_core::shuffle::oracle::{brute_force_dims, matsumoto_spot_check, symmetrize};
use nichols_core::shuffle::{
    nichols_dims, pbw_hilbert_standard, serre_element, serre_in_kernel, BraidedSpace, EngineConfig,
    RankMode, SpaceDescription,
};
use nichols_core::uqsl2::sl2_braided_space;
use nichols_core::Error;
use proptest::prelude::*;

fn cfg(max_degree: usize, mode: RankMode) -> EngineConfig {
    EngineConfig {
        max_degree,
        mode,
        budget: 5000,
        seed: 11,
    }
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn exponents(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_matches_brute_force(e in exponents(2)) {
        let s = BraidedSpace::from_exponents(labels(2), &e).unwrap();
        let brute = brute_force_dims(&s, 5, 1_000_000).unwrap();
        let exact = nichols_dims(&s, &cfg(5, RankMode::Exact)).unwrap();
        prop_assert_eq!(&exact.dims, &brute);
        let modular = nichols_dims(&s, &cfg(5, RankMode::Modular)).unwrap();
        prop_assert_eq!(&modular.dims, &brute);
    }

    #[test]
    fn relabeling_permutes_blocks(e in exponents(3), rot in 1usize..3) {
        let s = BraidedSpace::from_exponents(labels(3), &e).unwrap();
        let p: Vec<usize> = (0..3).map(|i| (i + rot) % 3).collect();
        let pe: Vec<Vec<i64>> = p.iter().map(|&i| p.iter().map(|&j| e[i][j]).collect()).collect();
        let t = BraidedSpace::from_exponents(labels(3), &pe).unwrap();
        let a = nichols_dims(&s, &cfg(4, RankMode::Modular)).unwrap();
        let b = nichols_dims(&t, &cfg(4, RankMode::Modular)).unwrap();
        prop_assert_eq!(&a.dims, &b.dims);
        // letter p[k] of t is letter k of s, so block keys permute accordingly
        for blk in &b.blocks {
            // multidegree followed by total degree
            let mut key = blk.key.clone();
            for k in 0..3 {
                key[p[k]] = blk.key[k];
            }
            prop_assert_eq!(a.block_dim(&key), blk.dim, "{:?}", blk.key);
        }
    }

    #[test]
    fn degree_bookkeeping(e in exponents(2)) {
        let s = BraidedSpace::from_exponents(labels(2), &e).unwrap();
        let g = nichols_dims(&s, &cfg(4, RankMode::Modular)).unwrap();
        prop_assert_eq!(g.dims[0], 1);
        prop_assert_eq!(g.dims[1], 2);
        prop_assert!(g.new_relation_degrees().keys().all(|&k| k >= 2));
        for n in 1..g.dims.len() {
            // a quotient of the tensor algebra
            prop_assert!(g.dims[n] <= 2usize.pow(n as u32));
            let total: usize = g.blocks.iter().filter(|b| b.degree == n).map(|b| b.dim).sum();
            prop_assert_eq!(total, g.dims[n]);
        }
    }

    #[test]
    fn matsumoto_independence(e in exponents(2), seed in any::<u64>()) {
        let s = BraidedSpace::from_exponents(labels(2), &e).unwrap();
        prop_assert!(matsumoto_spot_check(&s, 5, 3, seed));
    }
}

/// Rank-2 diagonal braidings coming from the extension data of `A1`.
fn rank2(n: i64, x: (i64, i64)) -> (BraidedSpace, Vec<Vec<i64>>) {
    let rd = root_datum("A1".parse().unwrap(), &Normalization::Short2).unwrap();
    let x = nichols_core::exactq::rat(x.0, x.1);
    let spec = braid_spec(&rd, &[Weight::from_ints(&[n])], &x).unwrap();
    let em = exponent_matrix(&spec).unwrap();
    let b = extended_cartan(&spec).unwrap().b;
    (BraidedSpace::from_exponents(em.index, &em.e).unwrap(), b)
}

#[test]
fn oracle_agreement_with_pbw() {
    for (n, x) in [
        (1, (3, 2)),
        (1, (1, 2)),
        (2, (2, 1)),
        (1, (1, 6)),
        (3, (3, 2)),
        (0, (5, 1)),
    ] {
        let (space, b) = rank2(n, x);
        let gcm = validate_gcm(b).unwrap();
        assert!(finite_type(&gcm).is_some());
        let dims = nichols_dims(&space, &cfg(6, RankMode::Modular)).unwrap();
        let pbw: Vec<usize> = pbw_hilbert_standard(&gcm, 6)
            .unwrap()
            .into_iter()
            .map(|k| k as usize)
            .collect();
        assert_eq!(dims.dims, pbw, "n={n} x={x:?}");
    }
}

#[test]
fn serre_elements_vanish_exactly_at_the_cartan_power() {
    for (n, x) in [(1, (3, 2)), (1, (1, 2)), (2, (2, 1)), (1, (1, 6))] {
        let (space, b) = rank2(n, x);
        for (i, j) in [(0, 1), (1, 0)] {
            assert!(serre_in_kernel(&space, i, j, b[i][j]).unwrap());
            let m = (-b[i][j]) as u32;
            let lower = serre_element(&space, i, j, m).unwrap();
            assert!(
                !symmetrize(&space, &lower).is_empty(),
                "n={n} x={x:?} ({i},{j})"
            );
        }
    }
}

#[test]
fn kernel_contains_the_ideal_of_lower_relations() {
    // Multiplying the degree-3 Serre relation by a letter on either side
    // stays in the kernel of the degree-4 symmetrizer.
    let (space, b) = rank2(1, (3, 2));
    let r = serre_element(&space, 0, 1, (1 - b[0][1]) as u32).unwrap();
    for letter in 0..2u8 {
        let left: HashMap<Vec<u8>, LaurentScalar> = r
            .iter()
            .map(|(w, c)| {
                let mut u = vec![letter];
                u.extend(w);
                (u, c.clone())
            })
            .collect();
        let right: HashMap<Vec<u8>, LaurentScalar> = r
            .iter()
            .map(|(w, c)| {
                let mut u = w.clone();
                u.push(letter);
                (u, c.clone())
            })
            .collect();
        assert!(symmetrize(&space, &left).is_empty());
        assert!(symmetrize(&space, &right).is_empty());
    }
}

#[test]
fn non_diagonal_engine_matches_brute_force() {
    for (n, x) in [(1, (3, 2)), (1, (1, 2)), (2, (2, 1))] {
        let (space, _) = sl2_braided_space(n, &nichols_core::exactq::rat(x.0, x.1)).unwrap();
        let max = if n == 1 { 5 } else { 4 };
        let brute = brute_force_dims(&space, max, 10_000_000).unwrap();
        let exact = nichols_dims(&space, &cfg(max, RankMode::Exact)).unwrap();
        assert_eq!(exact.dims, brute, "n={n}");
        let modular = nichols_dims(&space, &cfg(max, RankMode::Modular)).unwrap();
        assert_eq!(modular.dims, brute, "n={n}");
        let (d1, d2) = (space.dim(), brute[2]);
        assert_eq!(brute[1], d1);
        assert!(d2 <= d1 * d1);
    }
}

#[test]
fn json_description_round_trips() {
    let (space, _) = sl2_braided_space(1, &nichols_core::exactq::rat(3, 2)).unwrap();
    let text = serde_json::to_string(&space.to_description()).unwrap();
    let back = SpaceDescription::parse(&text).unwrap().build().unwrap();
    let a = nichols_dims(&space, &cfg(4, RankMode::Modular)).unwrap();
    let b = nichols_dims(&back, &cfg(4, RankMode::Modular)).unwrap();
    assert_eq!(a.dims, b.dims);

    let diag = r#"{"basis": ["a", "b"], "exponents": [[2, -1], [-1, 2]]}"#;
    let s = SpaceDescription::parse(diag).unwrap().build().unwrap();
    assert_eq!(
        nichols_dims(&s, &cfg(4, RankMode::Exact)).unwrap().dims,
        vec![1, 2, 4, 6, 9]
    );
}

#[test]
fn bad_descriptions_are_schema_errors() {
    assert!(matches!(
        SpaceDescription::parse("{\"basis\": 3}"),
        Err(Error::Schema(_))
    ));
    // swaps that do not satisfy the braid equation
    let bad = r#"{"basis": ["a", "b"], "braiding": [
        {"from": ["a", "a"], "to": ["a", "a"], "coeff": "1*v^0"},
        {"from": ["a", "b"], "to": ["b", "a"], "coeff": "1*v^0"},
        {"from": ["b", "a"], "to": ["a", "b"], "coeff": "1*v^0"},
        {"from": ["b", "a"], "to": ["b", "a"], "coeff": "1*v^1"},
        {"from": ["b", "b"], "to": ["b", "b"], "coeff": "1*v^0"}]}"#;
    let r = SpaceDescription::parse(bad).and_then(|d| d.build());
    assert!(r.is_err(), "{r:?}");
}

#[test]
fn budget_is_an_ordinary_error() {
    let s = BraidedSpace::from_exponents(labels(3), &[vec![0; 3], vec![0; 3], vec![0; 3]]).unwrap();
    let r = nichols_dims(
        &s,
        &EngineConfig {
            budget: 5,
            ..cfg(4, RankMode::Modular)
        },
    );
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
}
