mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_core::cohomology::{cocycle_count, cohomology, enumerate_splittings, restriction_map, sha2_cyclic};
use torus_core::groups::{cyclic, direct_product, FiniteGroup};
use torus_core::lattices::{direct_sum, induce, quotient_lattice, FGAbelian, GLattice, GModulePresentation};
use torus_core::matrix::Matrix;
use torus_core::random::{random_lattice, random_unimodular};
use torus_core::Z;

use common::groups_up_to_order_8;

fn small_abelian_groups() -> Vec<Arc<FiniteGroup>> {
    groups_up_to_order_8().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 4).collect()
}

#[test]
fn shapiro_on_sampled_subgroups() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in groups_up_to_order_8() {
        for h in g.subgroups() {
            for _ in 0..5 {
                let a = random_lattice(h.as_group(), rng.gen_range(1..=2), &mut rng);
                let ind = induce(&h, &a).unwrap();
                for q in 0..=2 {
                    assert_eq!(
                        cohomology(&a, q).unwrap(),
                        cohomology(&ind, q).unwrap(),
                        "{name}, |H| = {}, q = {q}",
                        h.order()
                    );
                }
            }
        }
    }
}

#[test]
fn long_exact_sequence_for_the_norm_quotient() {
    for (name, g) in groups_up_to_order_8() {
        let reg = GLattice::regular(g.clone());
        assert!(cohomology(&reg, 1).unwrap().is_trivial(), "{name}");
        assert!(cohomology(&reg, 2).unwrap().is_trivial(), "{name}");
        let norm = Matrix::from_fn(g.order(), 1, |_, _| Z::ONE);
        let j = quotient_lattice(&reg, &norm).unwrap().lattice;
        let h1 = cohomology(&j, 1).unwrap();
        let h2_trivial = cohomology(&GLattice::trivial(g.clone(), 1), 2).unwrap();
        assert_eq!(h1.order(), h2_trivial.order(), "{name}");
    }
}

/// Every action of `g` on `Z/modulus` by multiplication by units.
fn cyclic_modules(g: &Arc<FiniteGroup>, modulus: i64) -> Vec<GModulePresentation> {
    let units: Vec<i64> = (1..modulus).filter(|u| num_integer::gcd(*u, modulus) == 1).collect();
    let n = g.order();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let mult: Vec<i64> = digits.iter().map(|&d| units[d]).collect();
        if let Ok(a) = GModulePresentation::cyclic(g.clone(), modulus, &mult) {
            out.push(a);
        }
        let mut k = 0;
        while k < n {
            digits[k] += 1;
            if digits[k] < units.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

#[test]
fn splitting_oracle_on_cyclic_modules() {
    let mut checked = 0;
    for g in small_abelian_groups() {
        for modulus in [2i64, 3, 4, 5, 6] {
            for a in cyclic_modules(&g, modulus) {
                let Ok(s) = enumerate_splittings(&a) else { continue };
                assert_eq!(Z::from(s.class_count), cohomology(&a, 1).unwrap().order().unwrap());
                assert_eq!(Z::from(s.cocycles.len()), cocycle_count(&a).unwrap());
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} instances");
}

#[test]
fn splitting_oracle_on_reduced_lattices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let groups = [Arc::new(cyclic(2).unwrap()), Arc::new(cyclic(3).unwrap()), Arc::new(direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]))];
    for g in groups {
        for k in [2, 3] {
            for rank in 1..=2 {
                let m = random_lattice(&g, rank, &mut rng);
                let a = GModulePresentation::reduce_mod(&m, k).unwrap();
                let Ok(s) = enumerate_splittings(&a) else { continue };
                assert_eq!(Z::from(s.class_count), cohomology(&a, 1).unwrap().order().unwrap());
                assert_eq!(Z::from(s.cocycles.len()), cocycle_count(&a).unwrap());
            }
        }
    }
}

#[test]
fn sha_is_invariant_under_change_of_basis() {
    let k = Arc::new(direct_product(&[cyclic(2).unwrap(), cyclic(2).unwrap()]));
    let reg = GLattice::regular(k.clone());
    let j = quotient_lattice(&reg, &Matrix::from_rows(&[[1], [1], [1], [1]])).unwrap().lattice;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let base = sha2_cyclic(&j, &[]).unwrap();
    for _ in 0..3 {
        let u = random_unimodular(3, &mut rng);
        assert_eq!(sha2_cyclic(&j.change_basis(&u).unwrap(), &[]).unwrap(), base);
    }
}

#[test]
fn restriction_to_the_whole_group_is_injective() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (_, g) in groups_up_to_order_8().into_iter().filter(|(_, g)| g.order() <= 6) {
        let m = random_lattice(&g, 2, &mut rng);
        for q in 1..=2 {
            let r = restriction_map(&m, &g.whole(), q).unwrap();
            assert!(r.is_injective());
            assert_eq!(r.source, r.target);
        }
    }
}

fn arb_group() -> impl Strategy<Value = Arc<FiniteGroup>> {
    prop::sample::select(groups_up_to_order_8().into_iter().map(|(_, g)| g).filter(|g| g.order() <= 6).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cohomology_is_additive(g in arb_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_lattice(&g, 1, &mut rng);
        let b = random_lattice(&g, 2, &mut rng);
        let sum = direct_sum(&a, &b).unwrap();
        for q in 0..=2 {
            let lhs = cohomology(&sum, q).unwrap();
            let rhs = cohomology(&a, q).unwrap().direct_sum(&cohomology(&b, q).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn positive_degrees_are_killed_by_the_group_order(g in arb_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_lattice(&g, 3, &mut rng);
        for q in 1..=2 {
            let h: FGAbelian = cohomology(&m, q).unwrap();
            prop_assert!(h.is_finite());
            prop_assert!(h.is_annihilated_by(&Z::from(g.order())));
        }
    }

    #[test]
    fn cohomology_ignores_the_basis(g in arb_group(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_lattice(&g, 2, &mut rng);
        let u = random_unimodular(2, &mut rng);
        let n = m.change_basis(&u).unwrap();
        for q in 0..=2 {
            prop_assert_eq!(cohomology(&m, q).unwrap(), cohomology(&n, q).unwrap());
        }
    }
}
