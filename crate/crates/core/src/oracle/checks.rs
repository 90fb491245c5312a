use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{lattice, realize_record, Result, VerificationReport, Witness};
use crate::group::{
    conjugation_automorphisms, cyclic, graph_subgroup, is_normal, Caps, DirectProduct, GroupError,
    PermGroup, Subgroup, SubgroupEngine,
};
use crate::poset::{classical_mobius, BoundedLattice, Poset, PosetError};
use crate::socle::{coprime_factorization_check, mobius_simple_power, mobius_socle, SocleSpec};

fn name_of(group: &PermGroup) -> String {
    group.name().map_or_else(|| format!("group of order {}", group.order()), str::to_owned)
}

/// Brute-force `mu(G)` against a value known in advance, with the subgroup
/// count as a witness when one is given.
pub fn verify_known_value(
    group: &PermGroup,
    expected: impl Into<BigInt>,
    subgroups: Option<usize>,
    caps: &Caps,
) -> Result<VerificationReport> {
    let lat = lattice(group, caps)?;
    let mut witnesses = Vec::new();
    if let Some(count) = subgroups {
        witnesses.push(Witness::new("subgroups", count, lat.len()));
    }
    Ok(VerificationReport::new(name_of(group), expected, lat.mobius_number(), witnesses))
}

/// Both Crapo sums at every subgroup against `mu(G)`: the general form at
/// every `x`, the modular form at every normal `x`.
///
/// `formula_value` is the Crapo sum at the first element where it disagrees,
/// or the common value when none does.
pub fn verify_crapo_all_elements(group: &PermGroup, caps: &Caps) -> Result<VerificationReport> {
    let lat = lattice(group, caps)?;
    let bl = BoundedLattice::new(lat.poset())?;
    let mu = bl.mobius_number().clone();
    let mut general_failures = Vec::new();
    let mut modular_failures = Vec::new();
    let mut first_bad: Option<BigInt> = None;
    let mut normal = 0usize;
    for x in 0..lat.len() {
        let sum = bl.crapo_sum(x)?;
        if sum != mu {
            general_failures.push(x);
            first_bad.get_or_insert(sum);
        }
        if lat.is_normal(x) {
            normal += 1;
            match bl.modular_crapo_sum(x) {
                Ok(s) if s == mu => {}
                Ok(_) | Err(PosetError::ComparableComplements(..)) => modular_failures.push(x),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let n = lat.len();
    let detail = |v: &[usize]| format!("failed at {v:?}");
    let mut general = Witness::new("general crapo sum", n, n - general_failures.len());
    if !general_failures.is_empty() {
        general = general.with_detail(detail(&general_failures));
    }
    let mut modular = Witness::new("modular crapo sum at normal subgroups", normal, normal - modular_failures.len());
    if !modular_failures.is_empty() {
        modular = modular.with_detail(detail(&modular_failures));
    }
    Ok(VerificationReport::new(
        format!("crapo {}", name_of(group)),
        first_bad.unwrap_or_else(|| mu.clone()),
        mu,
        vec![Witness::new("subgroups", n, n), general, modular],
    ))
}

/// Complements of the first factor `H` in `H x K`.
///
/// Each must meet `K`'s coordinate bijectively, project into a subgroup
/// `H0` of `H`, and have a normal subgroup of `K` as kernel with
/// `|K| / |kernel| = |H0|`. The modular Crapo sum at `H` is compared with
/// `mu(H x K)`.
pub fn verify_complement_classification(h: &PermGroup, k: &PermGroup, caps: &Caps) -> Result<VerificationReport> {
    let dp = DirectProduct::new(h, k, caps.max_order)?;
    let g = &dp.group;
    let lat = lattice(g, caps)?;
    let mut first = FixedBitSet::with_capacity(g.order());
    for a in 0..h.order() {
        first.insert(dp.pair_index(a, k.identity()));
    }
    let hi = lat.find_members(&first).expect("the first factor is a subgroup");
    let from_group = lat.group_complements(hi);
    let bl = BoundedLattice::new(lat.poset())?;
    let from_lattice = bl.complements(hi)?;

    let (mut bijective, mut projects, mut kernels) = (0usize, 0usize, 0usize);
    for &c in &from_group {
        let sub = lat.subgroup(c);
        let mut k_image = FixedBitSet::with_capacity(k.order());
        let mut h_image = FixedBitSet::with_capacity(h.order());
        let mut kernel = FixedBitSet::with_capacity(k.order());
        for x in sub.elements() {
            let (a, b) = dp.split_index(x);
            k_image.insert(b);
            h_image.insert(a);
            if a == h.identity() {
                kernel.insert(b);
            }
        }
        if sub.order() == k.order() && k_image.count_ones(..) == k.order() {
            bijective += 1;
        }
        let h0 = Subgroup::from_parts(h_image, Vec::new());
        if h0.is_closed_in(h) {
            projects += 1;
        }
        let kernel_elems: Vec<usize> = kernel.ones().collect();
        let kernel = Subgroup::from_parts(kernel, kernel_elems);
        if kernel.is_closed_in(k) && is_normal(k, &kernel) && kernel.order() * h0.order() == k.order() {
            kernels += 1;
        }
    }
    let count = from_group.len();
    let formula = bl.modular_crapo_sum(hi)?;
    Ok(VerificationReport::new(
        format!("complements of {} in {}x{}", name_of(h), name_of(h), name_of(k)),
        formula,
        lat.mobius_number(),
        vec![
            Witness::new("complements", from_lattice.len(), count),
            Witness::new("bijective onto second factor", count, bijective),
            Witness::new("first projection is a subgroup", count, projects),
            Witness::new("normal kernel with matching index", count, kernels),
        ],
    ))
}

/// `mu(A5^2)` from the 121 complements of the first factor, without
/// enumerating the lattice of `A5^2`.
///
/// The complements are the second factor `K` and the 120 graphs of
/// automorphisms. The modular Crapo sum is
/// `mu(K) mu(K, G) + sum mu(K') mu(K', G)`, each term computed from the
/// subgroup lattice of the complement and its interval of overgroups.
pub fn verify_dirprod_constructive(caps: &Caps) -> Result<VerificationReport> {
    let (t, autos) = conjugation_automorphisms(5)?;
    let dp = DirectProduct::new(&t, &t, caps.max_order)?;
    let g = &dp.group;
    let id = t.identity();
    let factor = |left: bool| {
        let mut m = FixedBitSet::with_capacity(g.order());
        let gens: Vec<usize> = t
            .generator_indices()
            .into_iter()
            .map(|x| if left { dp.pair_index(x, id) } else { dp.pair_index(id, x) })
            .collect();
        for x in 0..t.order() {
            m.insert(if left { dp.pair_index(x, id) } else { dp.pair_index(id, x) });
        }
        Subgroup::from_parts(m, gens)
    };
    let t1 = factor(true);
    let k = factor(false);
    let mut complements = vec![k.clone()];
    for phi in &autos {
        complements.push(graph_subgroup(&dp, phi)?);
    }

    let mut engine = SubgroupEngine::new(g);
    let whole = g.order();
    let distinct: HashSet<&FixedBitSet> = complements.iter().map(Subgroup::members).collect();
    let mut valid = 0usize;
    for c in &complements {
        let closed = c.is_closed_in(g);
        let meets_trivially = c.intersection_order(&t1) == 1;
        let generates = engine.join(&t1, c).order() == whole;
        if closed && meets_trivially && generates {
            valid += 1;
        }
    }

    let mut sum = BigInt::zero();
    let mut graph_mu_ok = 0usize;
    let mut maximal = 0usize;
    let mut k_terms = (BigInt::zero(), BigInt::zero());
    for (i, c) in complements.iter().enumerate() {
        let mu_c = lattice(&c.to_group(g), caps)?.mobius_number();
        let mu_up = interval_mobius(&mut engine, c, caps)?;
        if i == 0 {
            k_terms = (mu_c.clone(), mu_up.clone());
        } else {
            graph_mu_ok += usize::from(mu_c == BigInt::from(-60));
            maximal += usize::from(mu_up == -BigInt::one());
        }
        sum += mu_c * mu_up;
    }

    // normal subgroups among those built have order 1, 60 or 3600
    let mut built = vec![Subgroup::trivial(g), t1.clone(), Subgroup::whole(g)];
    built.extend(complements.iter().cloned());
    let normal_orders: Vec<usize> = built.iter().filter(|s| is_normal(g, s)).map(Subgroup::order).collect();
    let allowed = normal_orders.iter().filter(|o| [1, 60, whole].contains(o)).count();

    let graphs = autos.len();
    Ok(VerificationReport::new(
        "A5^2 from complements of the first factor",
        mobius_simple_power(&BigInt::from(-60), &BigInt::from(120), 2),
        sum,
        vec![
            Witness::new("automorphisms", 120, graphs),
            Witness::new("distinct complements", 121, distinct.len()),
            Witness::new("valid complements", complements.len(), valid),
            Witness::new("mu(K)", -60, k_terms.0),
            Witness::new("mu(K, G)", -60, k_terms.1),
            Witness::new("graphs with mu = -60", graphs, graph_mu_ok),
            Witness::new("graphs maximal in G", graphs, maximal),
            Witness::new("normal subgroups of order 1, 60, 3600", normal_orders.len(), allowed),
        ],
    ))
}

/// `mu(base, G)` on the interval of overgroups.
fn interval_mobius(engine: &mut SubgroupEngine<'_>, base: &Subgroup, caps: &Caps) -> Result<BigInt> {
    let over = engine.overgroups(base, caps)?;
    let down = over
        .iter()
        .map(|big| {
            let mut row = FixedBitSet::with_capacity(over.len());
            for (i, small) in over.iter().enumerate() {
                if small.is_subgroup_of(big) {
                    row.insert(i);
                }
            }
            row
        })
        .collect();
    Ok(Poset::from_down_sets(down)?.mobius_number()?)
}

/// Builds the socle as a literal direct product and compares its
/// brute-force Möbius number with the closed form.
pub fn verify_socle_formula(spec: &SocleSpec, caps: &Caps) -> Result<VerificationReport> {
    let order = spec.order();
    if order > BigInt::from(caps.max_lattice_order) {
        return Err(GroupError::EnumerationCapExceeded { what: "group order", cap: caps.max_lattice_order }.into());
    }
    let mut factors: Vec<PermGroup> = Vec::new();
    for &(p, f) in spec.abelian_parts() {
        let c = cyclic(p as usize);
        factors.extend(std::iter::repeat_n(c, f as usize));
    }
    for (u, e) in spec.nonabelian_parts() {
        let group = realize_record(u, caps.max_order)?;
        factors.extend(std::iter::repeat_n(group, *e as usize));
    }
    let mut group = PermGroup::trivial(1);
    for f in &factors {
        group = DirectProduct::new(&group, f, caps.max_order)?.group;
    }
    let lat = lattice(&group, caps)?;
    let formula = mobius_socle(spec);
    let blocks = coprime_factorization_check(spec).product();
    Ok(VerificationReport::new(
        format!("socle {spec}"),
        formula.clone(),
        lat.mobius_number(),
        vec![
            Witness::new("group order", order, group.order()),
            Witness::new("product over factor blocks", formula, blocks),
        ],
    ))
}

/// `mu(H x K) = mu(H) mu(K) = expected`, all three by brute force.
pub fn verify_mumult(h: &PermGroup, k: &PermGroup, expected: impl Into<BigInt>, caps: &Caps) -> Result<VerificationReport> {
    let expected = expected.into();
    let mu_h = lattice(h, caps)?.mobius_number();
    let mu_k = lattice(k, caps)?.mobius_number();
    let dp = DirectProduct::new(h, k, caps.max_order)?;
    let mu_hk = lattice(&dp.group, caps)?.mobius_number();
    let product = &mu_h * &mu_k;
    Ok(VerificationReport::new(
        format!("{}x{} multiplicative", name_of(h), name_of(k)),
        product.clone(),
        mu_hk.clone(),
        vec![
            Witness::new("mu(H) mu(K) matches expected", expected.clone(), product),
            Witness::new("mu(H x K) matches expected", expected, mu_hk),
        ],
    ))
}

/// `mu(C_n)` from the subgroup lattice against the classical `mu(n)` for
/// `1 <= n <= max_n`. The values count cases: checked against agreeing.
pub fn verify_cyclic_bridge(max_n: usize, caps: &Caps) -> Result<VerificationReport> {
    let mut witnesses = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mu = lattice(&cyclic(n), caps)?.mobius_number();
        witnesses.push(Witness::new(format!("C{n}"), classical_mobius(n as u64), mu));
    }
    let agree = witnesses.iter().filter(|w| w.passed).count();
    Ok(VerificationReport::new(format!("cyclic C1..C{max_n}"), max_n, agree, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, symmetric};
    use crate::socle::{builtin_table, parse_socle_spec};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn crapo_on_small_groups() {
        for (g, n) in [(symmetric(3), 6), (cyclic(4), 3), (DirectProduct::new(&cyclic(2), &cyclic(2), 10).unwrap().group, 5)] {
            let r = verify_crapo_all_elements(&g, &caps()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.witness("subgroups").unwrap().observed, BigInt::from(n));
        }
        let a4 = verify_crapo_all_elements(&alternating(4), &caps()).unwrap();
        assert!(a4.passed);
    }

    #[test]
    fn complement_counts() {
        let count = |h: &PermGroup, k: &PermGroup| {
            let r = verify_complement_classification(h, k, &caps()).unwrap();
            assert!(r.passed, "{r:?}");
            r.witness("complements").unwrap().observed.clone()
        };
        assert_eq!(count(&cyclic(3), &cyclic(3)), BigInt::from(3));
        assert_eq!(count(&cyclic(2), &cyclic(2)), BigInt::from(2));
        assert_eq!(count(&symmetric(3), &cyclic(3)), BigInt::from(3));
        assert_eq!(count(&cyclic(2), &symmetric(3)), BigInt::from(2));
    }

    #[test]
    fn socle_examples() {
        let t = builtin_table();
        for (text, value) in [("C2^2", 2), ("C2*C3", 1), ("C3^2", 3), ("1", 1)] {
            let r = verify_socle_formula(&parse_socle_spec(text, &t).unwrap(), &caps()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.oracle_value, BigInt::from(value));
        }
        let too_big = parse_socle_spec("A5^2", &t).unwrap();
        assert!(verify_socle_formula(&too_big, &caps()).unwrap_err().is_cap());
    }

    #[test]
    fn mumult_small() {
        let r = verify_mumult(&cyclic(2), &cyclic(3), 1, &caps()).unwrap();
        assert!(r.passed);
        let wrong = verify_mumult(&cyclic(2), &cyclic(3), 2, &caps()).unwrap();
        assert!(!wrong.passed);
    }

    #[test]
    fn cyclic_bridge_small() {
        let r = verify_cyclic_bridge(30, &caps()).unwrap();
        assert!(r.passed);
        assert_eq!(r.witnesses.len(), 30);
    }
}
