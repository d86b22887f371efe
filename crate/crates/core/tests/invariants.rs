//! Structural invariants checked across families of small groups.

use std::collections::HashMap;

use ica_core::bounds;
use ica_core::bruteforce::enumerate_ica_bruteforce;
use ica_core::context::GroupData;
use ica_core::group::{self, FiniteGroup};
use ica_core::iso::is_isomorphic;
use ica_core::lattice::quotient;
use ica_core::rank::{group_rank_bruteforce, rank_exact, ActionTable};
use ica_core::structure;
use ica_core::subgroup::generated;
use ica_core::Limits;
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn zoo() -> Vec<FiniteGroup> {
    let c2 = group::cyclic(2).unwrap();
    let mut out = Vec::new();
    for n in 1..=12 {
        out.push(group::cyclic(n).unwrap());
    }
    for m in (2..=24).step_by(2) {
        out.push(group::dihedral(m).unwrap());
    }
    out.push(group::quaternion().unwrap());
    for n in 1..=4 {
        out.push(group::symmetric(n).unwrap());
    }
    out.push(group::direct_product(&c2, &c2).unwrap());
    out.push(group::direct_product(&c2, &group::cyclic(4).unwrap()).unwrap());
    out.push(group::direct_product(&c2, &group::quaternion().unwrap()).unwrap());
    out.push(group::direct_product(&group::cyclic(3).unwrap(), &group::symmetric(3).unwrap()).unwrap());
    out.push(group::wreath(&c2, 2).unwrap());
    out.push(group::wreath(&c2, 3).unwrap());
    out.push(group::wreath(&group::cyclic(3).unwrap(), 2).unwrap());
    out
}

#[test]
fn table_invariants() {
    for g in zoo() {
        let n = g.order();
        let e = g.identity();
        for a in 0..n {
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            assert!(g.row(a).iter().all(|&x| (x as usize) < n));
        }
        if n <= 48 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{}", g.name());
                    }
                }
            }
        }
    }
}

#[test]
fn class_tables_and_mobius_rows() {
    for g in zoo() {
        let d = GroupData::new(g, &lim()).unwrap();
        let lat = d.classes.lattice();
        let total: usize = d.classes.classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, lat.len());
        for c in &d.classes.classes {
            assert_eq!(c.members.len() * c.normalizer.order(), d.order());
            assert_eq!(c.is_normal, c.members.len() == 1);
            assert!(lat.get(c.representative).is_subgroup_of(&c.normalizer));
        }
        for h in 0..lat.len() {
            assert_eq!(d.mobius.get(h, h), Some(1));
            for k in lat.supers(h).filter(|&k| k != h) {
                let sum: i64 = lat.supers(h).filter(|&l| lat.leq(l, k)).map(|l| d.mobius.get(h, l).unwrap()).sum();
                assert_eq!(sum, 0, "{} mu row {h} up to {k}", d.group.name());
            }
        }
        assert!(d.length <= (d.order() as f64).log2().floor() as usize);
    }
}

#[test]
fn dihedral_normalizers_and_quotients() {
    for n in 1..=12usize {
        let g = group::dihedral(2 * n).unwrap();
        let d = GroupData::new(g.clone(), &lim()).unwrap();
        for c in &d.classes.classes {
            let h = d.classes.lattice().get(c.representative);
            let m = c.index;
            if m % 2 == 1 {
                assert_eq!(&c.normalizer, h, "D{} index {m}", 2 * n);
            } else if c.is_normal {
                let q = quotient(&g, h).unwrap();
                assert!(is_isomorphic(&q, &group::dihedral(m).unwrap()), "D{} / index {m}", 2 * n);
            } else {
                assert!(n % 2 == 0 && n % m == 0, "D{} index {m}", 2 * n);
                assert_eq!(c.normalizer.order(), 2 * h.order());
            }
        }
    }
}

#[test]
fn quotient_of_d12_by_rotation_square() {
    let g = group::dihedral(12).unwrap();
    let q = quotient(&g, &generated(&g, &[2])).unwrap();
    assert!(is_isomorphic(&q, &group::dihedral(4).unwrap()));
}

fn small_groups() -> Vec<FiniteGroup> {
    zoo().into_iter().filter(|g| g.order() <= 48).collect()
}

#[test]
fn rank_monotone_under_quotients() {
    for g in small_groups() {
        let rg = group_rank_bruteforce(&g, &lim()).unwrap();
        let d = GroupData::new(g.clone(), &lim()).unwrap();
        assert!(rg <= d.length, "{}", g.name());
        for c in d.classes.classes.iter().filter(|c| c.is_normal) {
            let q = c.quotient.as_ref().unwrap();
            assert!(group_rank_bruteforce(q, &lim()).unwrap() <= rg, "{} / index {}", g.name(), c.index);
        }
    }
}

#[test]
fn rank_subadditive_on_products() {
    let gs: Vec<FiniteGroup> = small_groups().into_iter().filter(|g| g.order() <= 24).collect();
    let ranks: HashMap<String, usize> =
        gs.iter().map(|g| (g.name().to_string(), group_rank_bruteforce(g, &lim()).unwrap())).collect();
    for a in &gs {
        for b in &gs {
            if a.order() * b.order() > 48 {
                continue;
            }
            let p = group::direct_product(a, b).unwrap();
            let rp = group_rank_bruteforce(&p, &lim()).unwrap();
            assert!(rp <= ranks[a.name()] + ranks[b.name()], "{} x {}", a.name(), b.name());
        }
    }
}

#[test]
fn rank_is_an_isomorphism_invariant() {
    let pairs = [
        (group::dihedral(6).unwrap(), group::symmetric(3).unwrap()),
        (group::dihedral(8).unwrap(), group::wreath(&group::cyclic(2).unwrap(), 2).unwrap()),
    ];
    for (a, b) in pairs {
        assert!(is_isomorphic(&a, &b));
        assert_eq!(group_rank_bruteforce(&a, &lim()).unwrap(), group_rank_bruteforce(&b, &lim()).unwrap());
    }
}

#[test]
fn unit_groups_are_groups_of_the_right_order() {
    let c2 = group::cyclic(2).unwrap();
    let cases = [
        (group::cyclic(3).unwrap(), 2),
        (group::cyclic(4).unwrap(), 2),
        (group::direct_product(&c2, &c2).unwrap(), 2),
        (c2.clone(), 3),
    ];
    for (g, q) in cases {
        let d = GroupData::new(g.clone(), &lim()).unwrap();
        let bf = enumerate_ica_bruteforce(&g, q, &lim()).unwrap();
        let maps = bf.maps.as_ref().unwrap();
        // the table constructor rejects sets not closed under composition
        let t = ActionTable::from_maps(maps).unwrap();
        assert!(t.is_group());
        assert_eq!(BigUint::from(t.size()), structure::ica_order(&d, q).unwrap().exact.unwrap());

        // units preserve orbit sizes and stabilizers up to conjugacy
        let npts = bf.action.points;
        let stab = |p: usize| -> Vec<usize> { (0..g.order()).filter(|&a| bf.action.act[a][p] as usize == p).collect() };
        let class_of = |p: usize| {
            let s = generated(&g, &stab(p));
            d.classes.class_of_members(s.members()).unwrap()
        };
        for tau in maps {
            for p in 0..npts {
                assert_eq!(class_of(p), class_of(tau[p] as usize));
            }
        }

        // the order divides the number of orbit-size-preserving permutations
        let mut by_size: HashMap<usize, u64> = HashMap::new();
        for p in 0..npts {
            *by_size.entry(g.order() / stab(p).len()).or_default() += 1;
        }
        let bound = by_size.values().fold(BigUint::one(), |acc, &k| acc * ica_core::bigcount::factorial(k));
        assert_eq!(bound % BigUint::from(t.size()), BigUint::from(0u8));
    }
}

#[test]
fn binary_alphabet_index_two_factors() {
    for g in small_groups() {
        let d = GroupData::new(g, &lim()).unwrap();
        let s = structure::ica_structure(&d, 2).unwrap();
        assert_eq!(s.alpha_one_count(), d.r_index(2), "{}", d.group.name());
        // the binary branches differ by the index-two savings
        let diff = bounds::general_upper(&d, 3) - bounds::general_upper(&d, 2);
        assert_eq!(diff, d.r_index(2) + 1);
        assert_eq!(bounds::ica_lower(&d, 3) - bounds::ica_lower(&d, 2), d.r_index(2));
    }
}

#[test]
fn dedekind_ranks_match_oracle() {
    for g in small_groups() {
        let d = GroupData::new(g.clone(), &lim()).unwrap();
        if !d.is_dedekind() {
            continue;
        }
        let exact = rank_exact(&ActionTable::from_group(&g), &lim()).unwrap().exact().unwrap();
        assert_eq!(group_rank_bruteforce(&g, &lim()).unwrap(), exact);
        let b = bounds::best_bounds(&d, 3, None).unwrap();
        assert!(b.upper.value <= bounds::dedekind_ica_upper(&d, 3, exact).unwrap());
    }
}

#[test]
fn dihedral_class_count_formula() {
    for n in 1..=12u64 {
        let d = GroupData::new(group::dihedral(2 * n as usize).unwrap(), &lim()).unwrap();
        let (r, _) = ica_core::asymptotics::dihedral_class_counts(n as usize);
        assert_eq!(d.r(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn alpha_sums_match_burnside(idx in 0usize..32, q in 2u32..6) {
        let gs = zoo();
        let g = gs[idx % gs.len()].clone();
        let d = GroupData::new(g, &lim()).unwrap();
        let alpha = ica_core::orbits::alpha_all(&d, q).unwrap();
        prop_assert_eq!(ica_core::orbits::alpha_total(&alpha), ica_core::orbits::burnside_count(&d.group, q));
    }

    #[test]
    fn orders_are_consistent(idx in 0usize..32, q in 2u32..4) {
        let gs = zoo();
        let g = gs[idx % gs.len()].clone();
        let d = GroupData::new(g, &lim()).unwrap();
        let ica = structure::ica_order(&d, q).unwrap();
        let ca = structure::ca_order(&d, q).unwrap();
        // the unit group sits inside the monoid
        prop_assert!(ica.log2 <= ca.log2 + ca.log2_error);
        let expect = (q as f64).log2() * (q as f64).powi(d.order() as i32);
        prop_assert!((ca.log2 - expect).abs() <= 1e-9 * expect.max(1.0));
        if let (Some(a), Some(b)) = (ica.exact.as_ref(), ca.exact.as_ref()) {
            prop_assert!(a <= b);
        }
    }
}
