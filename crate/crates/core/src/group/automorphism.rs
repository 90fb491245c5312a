use fixedbitset::FixedBitSet;

use super::permgroup::Multiplier;
use super::{alternating, symmetric, DirectProduct, GroupError, PermGroup, Result, Subgroup};

/// An automorphism of a group, as a map on its element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    /// Checks that `images` is a bijection of `group`'s elements preserving
    /// products.
    pub fn new(group: &PermGroup, images: Vec<usize>) -> Result<Automorphism> {
        let n = group.order();
        if images.len() != n {
            return Err(GroupError::NotAnAutomorphism(format!(
                "{} images for a group of order {n}",
                images.len()
            )));
        }
        let mut hit = FixedBitSet::with_capacity(n);
        for &y in &images {
            if y >= n || hit.put(y) {
                return Err(GroupError::NotAnAutomorphism("not a bijection".into()));
            }
        }
        let mut mult = Multiplier::new(group);
        for a in 0..n {
            for b in 0..n {
                if images[mult.mul(a, b)] != mult.mul(images[a], images[b]) {
                    return Err(GroupError::NotAnAutomorphism(format!(
                        "products of elements {a} and {b} not preserved"
                    )));
                }
            }
        }
        Ok(Automorphism { images })
    }

    pub fn identity(group: &PermGroup) -> Automorphism {
        Automorphism { images: (0..group.order()).collect() }
    }

    pub fn apply(&self, element: usize) -> usize {
        self.images[element]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// The graph `{(phi(t), t) : t in T}` inside `T x T`.
pub fn graph_subgroup(product: &DirectProduct, phi: &Automorphism) -> Result<Subgroup> {
    if product.left.elements() != product.right.elements() {
        return Err(GroupError::FactorMismatch);
    }
    let t = &product.right;
    if phi.images.len() != t.order() {
        return Err(GroupError::NotAnAutomorphism("map is for a different group".into()));
    }
    let mut members = FixedBitSet::with_capacity(product.group.order());
    for x in 0..t.order() {
        members.insert(product.pair_index(phi.apply(x), x));
    }
    let generators = t
        .generator_indices()
        .into_iter()
        .map(|g| product.pair_index(phi.apply(g), g))
        .collect();
    Ok(Subgroup::from_parts(members, generators))
}

/// The maps `t -> s t s^-1` on `A_n` for every `s` in `S_n`, each verified.
///
/// Only `n = 5` is supported, where these are all 120 automorphisms.
pub fn conjugation_automorphisms(n: usize) -> Result<(PermGroup, Vec<Automorphism>)> {
    if n != 5 {
        return Err(GroupError::UnsupportedDegree(n));
    }
    let a = alternating(n);
    let s = symmetric(n);
    let mut out = Vec::with_capacity(s.order());
    for conj in s.elements() {
        let conj_inv = conj.inverse();
        let images = a
            .elements()
            .iter()
            .map(|t| a.index_of(&conj.then(t).then(&conj_inv)).expect("A_n is normal in S_n"))
            .collect();
        out.push(Automorphism::new(&a, images)?);
    }
    Ok((a, out))
}
