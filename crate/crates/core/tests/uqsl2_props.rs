use nichols_core::exactq::{int, rat, LaurentScalar, Rational};
use nichols_core::shuffle::rank::bareiss_rank;
use nichols_core::shuffle::{nichols_dims, EngineConfig, RankMode};
use nichols_core::uqsl2::{
    braid_equation_holds, cf_braiding, identity, is_invertible, is_u_linear, mat_add, quasi_r,
    simple_module, sl2_braided_space, sl2_spec, u_linear_on_triple, ModuleData,
};

fn xs() -> [Rational; 3] {
    [rat(3, 2), int(2), rat(1, 6)]
}

fn modules(x: &Rational, max: usize) -> Vec<ModuleData> {
    let d = sl2_spec(1, x).unwrap().d;
    (0..=max).map(|n| simple_module(n, d)).collect()
}

#[test]
fn modules_are_type_one() {
    for d in 1..=6 {
        for n in 0..=5 {
            assert!(
                simple_module(n, d).check_invariants(),
                "L({n}) at q = v^{d}"
            );
        }
    }
}

#[test]
fn pairwise_invertible_and_u_linear() {
    for x in xs() {
        let mods = modules(&x, 3);
        let theta = quasi_r(3, mods[0].d);
        for a in &mods {
            for b in &mods {
                let c = cf_braiding(a, b, &x, &theta).unwrap();
                assert!(is_invertible(&c), "x={x} L({}) L({})", a.n, b.n);
                assert!(is_u_linear(a, b, &c), "x={x} L({}) L({})", a.n, b.n);
            }
        }
    }
}

#[test]
fn braid_equation_on_triples() {
    for x in xs() {
        let mods = modules(&x, 3);
        let theta = quasi_r(3, mods[0].d);
        for a in &mods {
            for b in &mods {
                for c in &mods {
                    let triple = [a, b, c];
                    assert!(
                        braid_equation_holds(triple, &x, &theta).unwrap(),
                        "x={x} {} {} {}",
                        a.n,
                        b.n,
                        c.n
                    );
                    assert!(u_linear_on_triple(triple, &x, &theta).unwrap());
                }
            }
        }
    }
}

#[test]
fn highest_weight_lines_are_scaled_flips() {
    for x in xs() {
        let mods = modules(&x, 3);
        let d = mods[0].d;
        let theta = quasi_r(3, d);
        for a in &mods {
            for b in &mods {
                let c = cf_braiding(a, b, &x, &theta).unwrap();
                // f(λ', λ) = v^{-d((λ', λ) + x)}, (λ_1, λ_1) = 1/2
                let e = -(int(d) * (rat((a.n * b.n) as i64, 2) + &x));
                assert!(e.is_integer());
                let want = LaurentScalar::v_pow(e.to_integer().try_into().unwrap());
                assert_eq!(c[0][0], want, "x={x} L({}) L({})", a.n, b.n);
                let column_support = c.iter().filter(|row| !row[0].is_zero()).count();
                assert_eq!(column_support, 1);
            }
        }
    }
}

#[test]
fn degree_two_is_the_rank_of_one_plus_c() {
    for x in xs() {
        for n in 1..=3 {
            let (space, m) = sl2_braided_space(n, &x).unwrap();
            let theta = quasi_r(n, m.d);
            let c = cf_braiding(&m, &m, &x, &theta).unwrap();
            let s2 = mat_add(&identity(m.dim() * m.dim()), &c);
            let cfg = EngineConfig {
                max_degree: 2,
                mode: RankMode::Exact,
                ..EngineConfig::default()
            };
            let dims = nichols_dims(&space, &cfg).unwrap().dims;
            assert_eq!(dims[1], n + 1);
            assert_eq!(dims[2], bareiss_rank(&s2), "x={x} n={n}");
        }
    }
}
