use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use super::permgroup::Multiplier;
use super::{Caps, GroupError, PermGroup, Result};
use crate::poset::Poset;

/// A subgroup as a membership bitset over its parent's element indices,
/// together with a small generating set.
///
/// Equality and hashing only look at the members.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: FixedBitSet,
    order: usize,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(group: &PermGroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert(group.identity());
        Subgroup { members, order: 1, generators: Vec::new() }
    }

    pub fn whole(group: &PermGroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert_range(..);
        Subgroup { members, order: group.order(), generators: group.generator_indices() }
    }

    /// Wraps a member set that the caller knows to be closed, generated by
    /// `generators`.
    pub(crate) fn from_parts(members: FixedBitSet, generators: Vec<usize>) -> Subgroup {
        let order = members.count_ones(..);
        Subgroup { members, order, generators }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.intersection(&other.members).count()
    }

    /// Whether the member set is closed under the parent's product and
    /// contains the identity.
    pub fn is_closed_in(&self, group: &PermGroup) -> bool {
        if self.members.len() != group.order() || !self.contains(group.identity()) {
            return false;
        }
        let elems: Vec<usize> = self.elements().collect();
        elems.iter().all(|&a| self.contains(group.inv(a)))
            && elems.iter().all(|&a| elems.iter().all(|&b| self.contains(group.mul(a, b))))
    }

    /// The subgroup as a permutation group of its own, on the parent's points.
    pub fn to_group(&self, parent: &PermGroup) -> PermGroup {
        let gens = self.generators.iter().map(|&g| parent.element(g).clone()).collect();
        PermGroup::generate(parent.degree(), gens, self.order).expect("closed subgroup")
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.order, self.elements().collect())
    }
}

/// Closure machinery bound to one group, reusing cached products across calls.
pub struct SubgroupEngine<'g> {
    mult: Multiplier<'g>,
}

impl<'g> SubgroupEngine<'g> {
    pub fn new(group: &'g PermGroup) -> Self {
        SubgroupEngine { mult: Multiplier::new(group) }
    }

    pub fn group(&self) -> &'g PermGroup {
        self.mult.group()
    }

    /// `<base, g>`, by adjoining right cosets of `base` until the union is
    /// closed under right multiplication by every generator.
    pub fn extend(&mut self, base: &Subgroup, g: usize) -> Subgroup {
        if base.contains(g) {
            return base.clone();
        }
        let mut gens = base.generators.clone();
        gens.push(g);
        let base_elems: Vec<usize> = base.elements().collect();
        let mut members = base.members.clone();
        let mut reps = vec![self.group().identity()];
        let mut next = 0;
        while next < reps.len() {
            let r = reps[next];
            next += 1;
            for &s in &gens {
                let y = self.mult.mul(r, s);
                if !members.contains(y) {
                    reps.push(y);
                    for &h in &base_elems {
                        let z = self.mult.mul(h, y);
                        members.insert(z);
                    }
                }
            }
        }
        Subgroup::from_parts(members, gens)
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&mut self, seed: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut current = Subgroup::trivial(self.group());
        for g in seed {
            current = self.extend(&current, g);
        }
        current
    }

    pub fn join(&mut self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (big, small) = if a.order >= b.order { (a, b) } else { (b, a) };
        let mut current = big.clone();
        for &g in &small.generators {
            current = self.extend(&current, g);
        }
        current
    }

    /// Cyclic subgroups, one per distinct subgroup, trivial one included.
    fn cyclic_subgroups(&mut self) -> Vec<Subgroup> {
        let n = self.group().order();
        let id = self.group().identity();
        let mut done = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for g in 0..n {
            if done.contains(g) {
                continue;
            }
            let mut powers = vec![id];
            let mut x = g;
            while x != id {
                powers.push(x);
                x = self.mult.mul(x, g);
            }
            let m = powers.len();
            let mut members = FixedBitSet::with_capacity(n);
            for (k, &p) in powers.iter().enumerate() {
                members.insert(p);
                // every generator of <g> yields the same subgroup
                if gcd(k, m) == 1 {
                    done.insert(p);
                }
            }
            done.insert(g);
            let generators = if g == id { Vec::new() } else { vec![g] };
            out.push(Subgroup::from_parts(members, generators));
        }
        out
    }

    /// Every subgroup of the group, sorted by `(order, member list)`.
    ///
    /// Seeds with the cyclic subgroups and closes the collection under joins
    /// with cyclic subgroups of prime-power order; every subgroup is generated
    /// by its prime-power-order elements, so the fixpoint is complete.
    pub fn all_subgroups(&mut self, caps: &Caps) -> Result<Vec<Subgroup>> {
        let n = self.group().order();
        if n > caps.max_lattice_order {
            return Err(GroupError::EnumerationCapExceeded {
                what: "group order",
                cap: caps.max_lattice_order,
            });
        }
        let cyclics = self.cyclic_subgroups();
        let joiners: Vec<usize> = cyclics
            .iter()
            .filter(|c| is_prime_power(c.order))
            .map(|c| c.generators[0])
            .collect();

        let mut found: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for c in cyclics {
            if found.insert(c.members.clone(), list.len()).is_none() {
                list.push(c);
            }
        }
        let mut next = 0;
        while next < list.len() {
            let base = list[next].clone();
            next += 1;
            for &c in &joiners {
                if base.contains(c) {
                    continue;
                }
                let joined = self.extend(&base, c);
                if !found.contains_key(&joined.members) {
                    if list.len() >= caps.max_subgroups {
                        return Err(GroupError::EnumerationCapExceeded {
                            what: "subgroup count",
                            cap: caps.max_subgroups,
                        });
                    }
                    found.insert(joined.members.clone(), list.len());
                    list.push(joined);
                }
            }
        }
        list.sort_by_cached_key(Subgroup::sort_key);
        Ok(list)
    }

    /// Every subgroup `J` with `base <= J <= G`, sorted like
    /// [`SubgroupEngine::all_subgroups`].
    ///
    /// `<J, g>` only depends on the double coset `base g base` once `J`
    /// contains `base`, so one representative per double coset suffices.
    pub fn overgroups(&mut self, base: &Subgroup, caps: &Caps) -> Result<Vec<Subgroup>> {
        let n = self.group().order();
        let base_elems: Vec<usize> = base.elements().collect();
        let mut covered = base.members.clone();
        let mut reps = Vec::new();
        for g in 0..n {
            if covered.contains(g) {
                continue;
            }
            reps.push(g);
            for &a in &base_elems {
                let ag = self.mult.mul(a, g);
                for &b in &base_elems {
                    let x = self.mult.mul(ag, b);
                    covered.insert(x);
                }
            }
        }

        let mut found: HashMap<FixedBitSet, usize> = HashMap::from([(base.members.clone(), 0)]);
        let mut list = vec![base.clone()];
        let mut next = 0;
        while next < list.len() {
            let current = list[next].clone();
            next += 1;
            for &r in &reps {
                if current.contains(r) {
                    continue;
                }
                let joined = self.extend(&current, r);
                if !found.contains_key(&joined.members) {
                    if list.len() >= caps.max_subgroups {
                        return Err(GroupError::EnumerationCapExceeded {
                            what: "subgroup count",
                            cap: caps.max_subgroups,
                        });
                    }
                    found.insert(joined.members.clone(), list.len());
                    list.push(joined);
                }
            }
        }
        list.sort_by_cached_key(Subgroup::sort_key);
        Ok(list)
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|p| n % p == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Smallest subgroup of `group` containing the elements `seed`.
pub fn subgroup_closure(group: &PermGroup, seed: &[usize]) -> Subgroup {
    SubgroupEngine::new(group).closure(seed.iter().copied())
}

pub fn all_subgroups(group: &PermGroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    SubgroupEngine::new(group).all_subgroups(caps)
}

/// Subgroups between `base` and the whole group.
pub fn overgroups(group: &PermGroup, base: &Subgroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    SubgroupEngine::new(group).overgroups(base, caps)
}

/// Whether `g^-1 h g` lies in `h` for all generators `g` of the group and `h`
/// of the subgroup.
pub fn is_normal(group: &PermGroup, sub: &Subgroup) -> bool {
    let gens = group.generator_indices();
    gens.iter().all(|&g| {
        let g_inv = group.inv(g);
        sub.generators()
            .iter()
            .all(|&h| sub.contains(group.mul(group.mul(g_inv, h), g)))
    })
}

/// All `K` with `H ^ K = 1` and `<H, K> = G`, sorted by `(order, members)`.
///
/// For normal `H` only subgroups of order `|G| / |H|` can qualify.
pub fn complements_in_group(group: &PermGroup, h: &Subgroup, caps: &Caps) -> Result<Vec<Subgroup>> {
    let mut engine = SubgroupEngine::new(group);
    let all = engine.all_subgroups(caps)?;
    let normal = is_normal(group, h);
    let target = group.order() / h.order();
    Ok(all
        .into_iter()
        .filter(|k| !normal || k.order() == target)
        .filter(|k| is_complement(&mut engine, h, k))
        .collect())
}

fn is_complement(engine: &mut SubgroupEngine<'_>, h: &Subgroup, k: &Subgroup) -> bool {
    let n = engine.group().order();
    if h.intersection_order(k) != 1 {
        return false;
    }
    // with trivial intersection, |HK| = |H||K|, so HK = G forces <H,K> = G
    if h.order() * k.order() == n {
        return true;
    }
    engine.join(h, k).order() == n
}

/// All subgroups of a group ordered by inclusion.
pub struct SubgroupLattice<'g> {
    group: &'g PermGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    poset: Poset,
}

pub fn subgroup_lattice<'g>(group: &'g PermGroup, caps: &Caps) -> Result<SubgroupLattice<'g>> {
    let subgroups = all_subgroups(group, caps)?;
    Ok(SubgroupLattice::from_subgroups(group, subgroups))
}

impl<'g> SubgroupLattice<'g> {
    /// `subgroups` must be the complete, sorted list for `group`.
    fn from_subgroups(group: &'g PermGroup, subgroups: Vec<Subgroup>) -> Self {
        let m = subgroups.len();
        let down: Vec<FixedBitSet> = subgroups
            .iter()
            .enumerate()
            .map(|(j, big)| {
                let mut row = FixedBitSet::with_capacity(m);
                for (i, small) in subgroups[..=j].iter().enumerate() {
                    if big.order % small.order == 0 && small.is_subgroup_of(big) {
                        row.insert(i);
                    }
                }
                row
            })
            .collect();
        let labels = subgroups.iter().enumerate().map(|(i, s)| format!("H{i}:{}", s.order)).collect();
        let poset = Poset::from_down_sets(down)
            .expect("inclusion of distinct subsets is a partial order")
            .with_labels(labels);
        let index = subgroups.iter().enumerate().map(|(i, s)| (s.members.clone(), i)).collect();
        SubgroupLattice { group, subgroups, index, poset }
    }

    pub fn group(&self) -> &'g PermGroup {
        self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn find(&self, sub: &Subgroup) -> Option<usize> {
        self.index.get(&sub.members).copied()
    }

    pub fn find_members(&self, members: &FixedBitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Index of the intersection.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        let mut members = self.subgroups[i].members.clone();
        members.intersect_with(&self.subgroups[j].members);
        self.index[&members]
    }

    /// Index of the subgroup generated by both.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let joined = SubgroupEngine::new(self.group).join(&self.subgroups[i], &self.subgroups[j]);
        self.index[&joined.members]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        is_normal(self.group, &self.subgroups[i])
    }

    /// Indices of all `K` with `H ^ K = 1` and `<H, K> = G`.
    pub fn group_complements(&self, i: usize) -> Vec<usize> {
        let h = &self.subgroups[i];
        let normal = self.is_normal(i);
        let target = self.group.order() / h.order();
        let mut engine = SubgroupEngine::new(self.group);
        (0..self.len())
            .filter(|&k| !normal || self.subgroups[k].order == target)
            .filter(|&k| is_complement(&mut engine, h, &self.subgroups[k]))
            .collect()
    }

    pub fn mobius_number(&self) -> BigInt {
        self.poset.mobius_number().expect("subgroup lattices are bounded")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, direct_product, symmetric, Permutation};

    fn caps() -> Caps {
        Caps::default()
    }

    fn element(g: &PermGroup, cycles: &[&[usize]]) -> usize {
        g.index_of(&Permutation::from_cycles(g.degree(), cycles).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = symmetric(3);
        assert!(subgroup_closure(&s3, &[]).is_trivial());
        let c = element(&s3, &[&[0, 1, 2]]);
        let t = element(&s3, &[&[0, 1]]);
        assert_eq!(subgroup_closure(&s3, &[c]).order(), 3);
        let full = subgroup_closure(&s3, &[t, c]);
        assert_eq!(full.order(), 6);
        assert!(full.is_closed_in(&s3));
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&symmetric(3), &caps()).unwrap().len(), 6);
        let v4 = direct_product(&cyclic(2), &cyclic(2), 100).unwrap();
        assert_eq!(all_subgroups(&v4, &caps()).unwrap().len(), 5);
        assert_eq!(all_subgroups(&alternating(4), &caps()).unwrap().len(), 10);
        assert_eq!(all_subgroups(&symmetric(4), &caps()).unwrap().len(), 30);
        assert_eq!(all_subgroups(&cyclic(12), &caps()).unwrap().len(), 6);
    }

    #[test]
    fn enumeration_caps() {
        let small = Caps { max_lattice_order: 10, ..caps() };
        assert!(matches!(
            all_subgroups(&alternating(4), &small),
            Err(GroupError::EnumerationCapExceeded { what: "group order", .. })
        ));
        let few = Caps { max_subgroups: 8, ..caps() };
        assert!(matches!(
            all_subgroups(&symmetric(4), &few),
            Err(GroupError::EnumerationCapExceeded { what: "subgroup count", .. })
        ));
    }

    #[test]
    fn lattice_structure() {
        let s3 = symmetric(3);
        let lat = subgroup_lattice(&s3, &caps()).unwrap();
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.subgroup(lat.trivial()).order(), 1);
        assert_eq!(lat.subgroup(lat.whole()).order(), 6);
        assert_eq!(lat.poset().bounds().unwrap(), (0, 5));
        assert_eq!(lat.mobius_number(), BigInt::from(3));
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                assert_eq!(lat.meet(i, j), lat.poset().meet(i, j).unwrap());
                assert_eq!(lat.join(i, j), lat.poset().join(i, j).unwrap());
            }
        }
    }

    #[test]
    fn normality() {
        let s3 = symmetric(3);
        let lat = subgroup_lattice(&s3, &caps()).unwrap();
        let normal: Vec<usize> = lat.subgroups().iter().map(|s| s.order()).enumerate()
            .filter(|&(i, _)| lat.is_normal(i))
            .map(|(_, o)| o)
            .collect();
        assert_eq!(normal, vec![1, 3, 6]);
    }

    #[test]
    fn complements_examples() {
        let s3 = symmetric(3);
        let a3 = subgroup_closure(&s3, &[element(&s3, &[&[0, 1, 2]])]);
        let comps = complements_in_group(&s3, &a3, &caps()).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|k| k.order() == 2));

        let whole = Subgroup::whole(&s3);
        let comps = complements_in_group(&s3, &whole, &caps()).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].is_trivial());

        let dp = crate::group::DirectProduct::new(&cyclic(3), &cyclic(3), 100).unwrap();
        let first: Vec<usize> = (0..3).map(|a| dp.pair_index(a, 0)).collect();
        let factor = subgroup_closure(&dp.group, &first);
        assert_eq!(complements_in_group(&dp.group, &factor, &caps()).unwrap().len(), 3);
    }

    #[test]
    fn overgroups_of_a_transposition() {
        let s4 = symmetric(4);
        let t = subgroup_closure(&s4, &[element(&s4, &[&[0, 1]])]);
        let ups = overgroups(&s4, &t, &caps()).unwrap();
        let lat = subgroup_lattice(&s4, &caps()).unwrap();
        let expected: Vec<&Subgroup> =
            lat.subgroups().iter().filter(|s| t.is_subgroup_of(s)).collect();
        assert_eq!(ups.iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn to_group_round_trip() {
        let s4 = symmetric(4);
        let a4 = subgroup_closure(&s4, &[element(&s4, &[&[0, 1, 2]]), element(&s4, &[&[1, 2, 3]])]);
        assert_eq!(a4.order(), 12);
        let standalone = a4.to_group(&s4);
        assert_eq!(standalone.order(), 12);
        assert!(standalone.elements().iter().all(|p| a4.contains(s4.index_of(p).unwrap())));
    }
}
