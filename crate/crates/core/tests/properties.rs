use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use socle_core::group::{cyclic, direct_product, subgroup_lattice, Caps};
use socle_core::poset::{
    build_poset, complements, convolve, crapo_sum, delta, divisor_lattice, invert, mobius, zeta, BoundedLattice,
    Interval, Poset, PosetJson,
};
use socle_core::socle::{
    builtin_table, mobius_elementary_abelian, mobius_simple_power, mobius_socle, parse_socle_spec,
};

/// A random order: pairs `(perm[i], perm[j])` with `i < j`, so acyclic.
fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        let edges = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (perm, edges).prop_map(move |(perm, edges)| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] && (i + j) % 3 != 0 {
                        pairs.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            build_poset(&pairs, n).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_axioms(p in arb_poset(20)) {
        let n = p.size();
        for x in 0..n {
            prop_assert!(p.leq(x, x));
            for y in 0..n {
                if x != y {
                    prop_assert!(!(p.leq(x, y) && p.leq(y, x)));
                }
                for z in 0..n {
                    if p.leq(x, y) && p.leq(y, z) {
                        prop_assert!(p.leq(x, z));
                    }
                }
            }
        }
        let ext = p.linear_extension();
        for (i, &a) in ext.iter().enumerate() {
            for &b in &ext[..i] {
                prop_assert!(!p.lt(a, b));
            }
        }
    }

    #[test]
    fn zeta_and_mu_are_inverse(p in arb_poset(24)) {
        let p = Arc::new(p);
        let (z, m, d) = (zeta(&p), mobius(&p), delta(&p));
        prop_assert_eq!(&convolve(&z, &m).unwrap(), &d);
        prop_assert_eq!(&convolve(&m, &z).unwrap(), &d);
        prop_assert_eq!(&invert(&z).unwrap(), &m);
    }

    #[test]
    fn row_and_column_recursions_agree(p in arb_poset(24)) {
        let n = p.size();
        let rows: Vec<Vec<BigInt>> = (0..n).map(|x| p.mobius_from(x)).collect();
        for y in 0..n {
            let col = p.mobius_to(y);
            for x in 0..n {
                prop_assert_eq!(&col[x], &rows[x][y]);
            }
        }
    }

    #[test]
    fn intervals_keep_mu(p in arb_poset(20), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (x, y) = (a.index(p.size()), b.index(p.size()));
        let (lo, hi) = if p.leq(y, x) { (y, x) } else { (x, y) };
        if p.leq(lo, hi) {
            let iv = Interval::new(&p, lo, hi).unwrap();
            let local_mu = iv.poset.mobius_number().unwrap();
            prop_assert_eq!(local_mu, p.mobius_from(lo)[hi].clone());
            for (i, &e) in iv.elements.iter().enumerate() {
                prop_assert!(p.leq(lo, e) && p.leq(e, hi));
                prop_assert_eq!(iv.local(e), Some(i));
            }
        } else {
            prop_assert!(Interval::new(&p, lo, hi).is_err());
        }
    }

    #[test]
    fn json_round_trip(p in arb_poset(16)) {
        let json = serde_json::to_string(&PosetJson::from(&p)).unwrap();
        let back: PosetJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_poset().unwrap(), p);
    }

    #[test]
    fn simple_power_recurrence(mu in -10_000i64..10_000, aut in 1i64..100_000, n in 2u32..8) {
        let (mu, aut) = (BigInt::from(mu), BigInt::from(aut));
        let step = &mu - &aut * BigInt::from(n - 1);
        prop_assert_eq!(mobius_simple_power(&mu, &aut, n), mobius_simple_power(&mu, &aut, n - 1) * step);
    }

    #[test]
    fn socle_value_ignores_term_order(
        terms in proptest::sample::subsequence(vec!["C2", "C3^2", "C5^3", "C7", "A5^2", "A6", "C11^4"], 1..7)
            .prop_shuffle(),
        rotate in 0usize..7,
    ) {
        let t = builtin_table();
        let mut other = terms.clone();
        other.rotate_left(rotate % terms.len());
        other.reverse();
        let a = mobius_socle(&parse_socle_spec(&terms.join(" * "), &t).unwrap());
        let b = mobius_socle(&parse_socle_spec(&other.join("*"), &t).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn single_abelian_block(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101]), f in 1u32..12) {
        let spec = parse_socle_spec(&format!("C{p}^{f}"), &builtin_table()).unwrap();
        prop_assert_eq!(mobius_socle(&spec), mobius_elementary_abelian(p, f).unwrap());
    }
}

#[test]
fn crapo_on_divisor_lattices() {
    for n in 1..=240u64 {
        let lattice = divisor_lattice(n);
        let bl = BoundedLattice::new(&lattice).unwrap();
        for x in 0..lattice.size() {
            assert_eq!(&crapo_sum(&lattice, x).unwrap(), bl.mobius_number(), "n = {n}, x = {x}");
        }
    }
}

#[test]
fn normal_complements_are_antichains() {
    let caps = Caps::default();
    let groups = [
        direct_product(&cyclic(2), &cyclic(2), 100).unwrap(),
        direct_product(&cyclic(3), &cyclic(3), 100).unwrap(),
        direct_product(&cyclic(2), &socle_core::group::symmetric(3), 100).unwrap(),
        socle_core::group::symmetric(4),
    ];
    for g in &groups {
        let lat = subgroup_lattice(g, &caps).unwrap();
        for x in (0..lat.len()).filter(|&x| lat.is_normal(x)) {
            let comps = complements(lat.poset(), x).unwrap();
            assert_eq!(comps, lat.group_complements(x));
            for &a in &comps {
                for &b in &comps {
                    assert!(a == b || !lat.poset().comparable(a, b));
                }
            }
        }
    }
}
