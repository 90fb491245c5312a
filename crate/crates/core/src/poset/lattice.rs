use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::Zero;

use super::{Poset, PosetError, Result};

impl Poset {
    /// Greatest lower bound of `x` and `y`.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        let mut lower = self.down_set(x).clone();
        lower.intersect_with(self.down_set(y));
        self.extreme_bound(&lower, true).ok_or(PosetError::NotALattice(x, y))
    }

    /// Least upper bound of `x` and `y`.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        self.check_index(x)?;
        self.check_index(y)?;
        let mut upper = self.up_set(x).clone();
        upper.intersect_with(self.up_set(y));
        self.extreme_bound(&upper, false).ok_or(PosetError::NotALattice(x, y))
    }

    // The greatest (or least) element of `set`, if it has one. Only the last
    // (first) member along the linear extension can qualify.
    fn extreme_bound(&self, set: &FixedBitSet, greatest: bool) -> Option<usize> {
        let candidate = if greatest {
            set.ones().max_by_key(|&z| self.position(z))?
        } else {
            set.ones().min_by_key(|&z| self.position(z))?
        };
        let reach = if greatest { self.down_set(candidate) } else { self.up_set(candidate) };
        set.is_subset(reach).then_some(candidate)
    }

    /// Whether every pair has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        if self.size() == 0 {
            return false;
        }
        (0..self.size()).all(|x| {
            (x..self.size()).all(|y| self.meet(x, y).is_ok() && self.join(x, y).is_ok())
        })
    }
}

/// A lattice with its bounds and the two Möbius vectors every Crapo sum needs,
/// `mu(0, -)` and `mu(-, 1)`, computed once.
#[derive(Debug)]
pub struct BoundedLattice<'a> {
    poset: &'a Poset,
    bottom: usize,
    top: usize,
    from_bottom: Vec<BigInt>,
    to_top: Vec<BigInt>,
}

impl<'a> BoundedLattice<'a> {
    pub fn new(poset: &'a Poset) -> Result<Self> {
        let (bottom, top) = poset.bounds()?;
        Ok(BoundedLattice {
            poset,
            bottom,
            top,
            from_bottom: poset.mobius_from(bottom),
            to_top: poset.mobius_to(top),
        })
    }

    pub fn poset(&self) -> &Poset {
        self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn mobius_number(&self) -> &BigInt {
        &self.from_bottom[self.top]
    }

    /// `mu(0, y)`.
    pub fn mu_from_bottom(&self, y: usize) -> &BigInt {
        &self.from_bottom[y]
    }

    /// `mu(y, 1)`.
    pub fn mu_to_top(&self, y: usize) -> &BigInt {
        &self.to_top[y]
    }

    /// Every `y` with `x ^ y = 0` and `x v y = 1`, ascending.
    pub fn complements(&self, x: usize) -> Result<Vec<usize>> {
        self.poset.check_index(x)?;
        let mut out = Vec::new();
        for y in 0..self.poset.size() {
            if self.poset.meet(x, y)? == self.bottom && self.poset.join(x, y)? == self.top {
                out.push(y);
            }
        }
        Ok(out)
    }

    /// `sum over y, z in x-perp of mu(0, y) zeta(y, z) mu(z, 1)`.
    pub fn crapo_sum(&self, x: usize) -> Result<BigInt> {
        let comps = self.complements(x)?;
        let mut total = BigInt::zero();
        for &y in &comps {
            for &z in &comps {
                if self.poset.leq(y, z) {
                    total += &self.from_bottom[y] * &self.to_top[z];
                }
            }
        }
        Ok(total)
    }

    /// `sum over k in x-perp of mu(0, k) mu(k, 1)`, valid when no two distinct
    /// complements of `x` are comparable.
    pub fn modular_crapo_sum(&self, x: usize) -> Result<BigInt> {
        let comps = self.complements(x)?;
        for (i, &a) in comps.iter().enumerate() {
            for &b in &comps[i + 1..] {
                if self.poset.comparable(a, b) {
                    return Err(PosetError::ComparableComplements(a, b));
                }
            }
        }
        Ok(comps.iter().map(|&k| &self.from_bottom[k] * &self.to_top[k]).sum())
    }
}

/// Complements of `x` in a bounded lattice, ascending.
pub fn complements(poset: &Poset, x: usize) -> Result<Vec<usize>> {
    BoundedLattice::new(poset)?.complements(x)
}

pub fn crapo_sum(poset: &Poset, x: usize) -> Result<BigInt> {
    BoundedLattice::new(poset)?.crapo_sum(x)
}

pub fn modular_crapo_sum(poset: &Poset, x: usize) -> Result<BigInt> {
    BoundedLattice::new(poset)?.modular_crapo_sum(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_poset, divisor_lattice};

    fn index_of(poset: &Poset, label: &str) -> usize {
        poset.labels().iter().position(|l| l == label).unwrap()
    }

    #[test]
    fn meet_join_in_divisor_lattice() {
        let l12 = divisor_lattice(12);
        let (four, six) = (index_of(&l12, "4"), index_of(&l12, "6"));
        assert_eq!(l12.label(l12.meet(four, six).unwrap()), "2");
        assert_eq!(l12.label(l12.join(four, six).unwrap()), "12");
        for x in 0..l12.size() {
            assert_eq!(l12.meet(x, x).unwrap(), x);
            assert_eq!(l12.join(x, x).unwrap(), x);
        }
        assert!(l12.is_lattice());
    }

    #[test]
    fn unbounded_antichain_is_not_a_lattice() {
        let p = Poset::antichain(2);
        assert_eq!(p.meet(0, 1), Err(PosetError::NotALattice(0, 1)));
        assert_eq!(p.join(0, 1), Err(PosetError::NotALattice(0, 1)));
        assert!(!p.is_lattice());
    }

    #[test]
    fn two_maximal_lower_bounds() {
        // 0,1 below both 2 and 3: meet(2,3) is ambiguous
        let p = build_poset(&[(0, 2), (0, 3), (1, 2), (1, 3)], 4).unwrap();
        assert_eq!(p.meet(2, 3), Err(PosetError::NotALattice(2, 3)));
        assert_eq!(p.join(0, 1), Err(PosetError::NotALattice(0, 1)));
    }

    #[test]
    fn complements_in_divisor_lattices() {
        let l12 = divisor_lattice(12);
        let three = index_of(&l12, "3");
        let c4 = complements(&l12, index_of(&l12, "4")).unwrap();
        let c6 = complements(&l12, index_of(&l12, "6")).unwrap();
        assert!(c4.contains(&three));
        assert!(!c6.contains(&three));
        assert_eq!(complements(&l12, 0).unwrap(), vec![l12.top().unwrap()]);

        let l4 = divisor_lattice(4);
        assert!(complements(&l4, index_of(&l4, "2")).unwrap().is_empty());
        assert_eq!(complements(&Poset::antichain(2), 0), Err(PosetError::NoBounds));
    }

    #[test]
    fn crapo_sums() {
        let l4 = divisor_lattice(4);
        assert_eq!(crapo_sum(&l4, 1).unwrap(), BigInt::zero());
        assert_eq!(modular_crapo_sum(&l4, 1).unwrap(), BigInt::zero());

        let chain = Poset::chain(5);
        let bottom = chain.bottom().unwrap();
        assert_eq!(modular_crapo_sum(&chain, bottom).unwrap(), chain.mobius_number().unwrap());

        let l30 = divisor_lattice(30);
        for x in 0..l30.size() {
            assert_eq!(crapo_sum(&l30, x).unwrap(), BigInt::from(-1));
        }
    }

    #[test]
    fn comparable_complements_are_rejected() {
        // pentagon N5: 0 < a < b < 1, 0 < c < 1; c has complements a and b
        let p = build_poset(&[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], 5).unwrap();
        assert_eq!(complements(&p, 3).unwrap(), vec![1, 2]);
        assert_eq!(modular_crapo_sum(&p, 3), Err(PosetError::ComparableComplements(1, 2)));
        // general form still matches mu
        assert_eq!(crapo_sum(&p, 3).unwrap(), p.mobius_number().unwrap());
    }
}
