use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Poset, PosetError, Result};

/// An integer-valued function on the pairs `x <= y` of a fixed poset.
///
/// Values on incomparable pairs are implicitly zero and cannot be set.
#[derive(Debug, Clone)]
pub struct IncidenceFunction {
    poset: Arc<Poset>,
    values: Vec<BigInt>,
}

impl PartialEq for IncidenceFunction {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.poset, &other.poset) && self.values == other.values
    }
}

fn same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl IncidenceFunction {
    /// Builds a function by evaluating `f` on every pair `x <= y`.
    pub fn from_fn(poset: &Arc<Poset>, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let n = poset.size();
        let mut values = vec![BigInt::zero(); n * n];
        for (x, y) in poset.relation_pairs() {
            values[x * n + y] = f(x, y);
        }
        IncidenceFunction { poset: Arc::clone(poset), values }
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        &self.values[x * self.poset.size() + y]
    }

    /// Sets `f(x, y)`; only pairs with `x <= y` are in the algebra.
    pub fn set(&mut self, x: usize, y: usize, value: BigInt) -> Result<()> {
        self.poset.check_index(x)?;
        self.poset.check_index(y)?;
        if !self.poset.leq(x, y) {
            return Err(PosetError::InvalidRelation(format!(
                "({x},{y}) is not in the relation"
            )));
        }
        let n = self.poset.size();
        self.values[x * n + y] = value;
        Ok(())
    }
}

pub fn zeta(poset: &Arc<Poset>) -> IncidenceFunction {
    IncidenceFunction::from_fn(poset, |_, _| BigInt::one())
}

pub fn delta(poset: &Arc<Poset>) -> IncidenceFunction {
    IncidenceFunction::from_fn(poset, |x, y| if x == y { BigInt::one() } else { BigInt::zero() })
}

/// `(f * g)(x, y) = sum over x <= z <= y of f(x, z) g(z, y)`.
pub fn convolve(f: &IncidenceFunction, g: &IncidenceFunction) -> Result<IncidenceFunction> {
    if !same_poset(&f.poset, &g.poset) {
        return Err(PosetError::PosetMismatch);
    }
    let poset = &f.poset;
    Ok(IncidenceFunction::from_fn(poset, |x, y| {
        let mut between = poset.up_set(x).clone();
        between.intersect_with(poset.down_set(y));
        between.ones().map(|z| f.get(x, z) * g.get(z, y)).sum()
    }))
}

/// Two-sided inverse in the incidence algebra, restricted to functions with
/// a diagonal of units (`+1` / `-1`) so the inverse stays integral.
///
/// This goes through the relation matrix: elements are laid out along a linear
/// extension, which makes the matrix upper triangular, and each column of the
/// inverse is found by back substitution.
pub fn invert(f: &IncidenceFunction) -> Result<IncidenceFunction> {
    let poset = &f.poset;
    let n = poset.size();
    for x in 0..n {
        if f.get(x, x).is_zero() {
            return Err(PosetError::NotInvertible(x));
        }
    }
    for x in 0..n {
        if !f.get(x, x).abs().is_one() {
            return Err(PosetError::NonUnitDiagonal(x));
        }
    }

    let order = poset.linear_extension();
    // matrix[i][j] = f(order[i], order[j]), upper triangular
    let matrix: Vec<Vec<BigInt>> = order
        .iter()
        .map(|&x| order.iter().map(|&y| f.get(x, y).clone()).collect())
        .collect();

    let mut inverse = vec![vec![BigInt::zero(); n]; n];
    for col in 0..n {
        for row in (0..=col).rev() {
            let mut acc = if row == col { BigInt::one() } else { BigInt::zero() };
            for k in row + 1..=col {
                if !matrix[row][k].is_zero() && !inverse[k][col].is_zero() {
                    acc -= &matrix[row][k] * &inverse[k][col];
                }
            }
            // the diagonal entry is its own inverse
            inverse[row][col] = acc * &matrix[row][row];
        }
    }

    let mut values = vec![BigInt::zero(); n * n];
    for (i, &x) in order.iter().enumerate() {
        for (j, &y) in order.iter().enumerate() {
            let v = std::mem::take(&mut inverse[i][j]);
            if !v.is_zero() {
                debug_assert!(poset.leq(x, y), "inverse left the incidence algebra");
                values[x * n + y] = v;
            }
        }
    }
    Ok(IncidenceFunction { poset: Arc::clone(poset), values })
}

/// The Möbius function, by the recursion
/// `mu(x, x) = 1`, `mu(x, y) = -sum over x <= z < y of mu(x, z)`.
pub fn mobius(poset: &Arc<Poset>) -> IncidenceFunction {
    let n = poset.size();
    let mut values = vec![BigInt::zero(); n * n];
    for x in 0..n {
        for (y, v) in poset.mobius_from(x).into_iter().enumerate() {
            values[x * n + y] = v;
        }
    }
    IncidenceFunction { poset: Arc::clone(poset), values }
}

impl Poset {
    /// The row `y -> mu(x, y)`, zero where `x` is not below `y`.
    pub fn mobius_from(&self, x: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::zero(); self.size()];
        for &y in self.linear_extension() {
            if y == x {
                row[y] = BigInt::one();
            } else if self.lt(x, y) {
                // entries outside [x, y) are zero, so the whole down-set can be summed
                let mut acc = BigInt::zero();
                for z in self.down_set(y).ones() {
                    if z != y {
                        acc += &row[z];
                    }
                }
                row[y] = -acc;
            }
        }
        row
    }

    /// The column `x -> mu(x, y)` via the dual recursion
    /// `mu(x, y) = -sum over x < z <= y of mu(z, y)`.
    pub fn mobius_to(&self, y: usize) -> Vec<BigInt> {
        let mut col = vec![BigInt::zero(); self.size()];
        for &x in self.linear_extension().iter().rev() {
            if x == y {
                col[x] = BigInt::one();
            } else if self.lt(x, y) {
                let mut acc = BigInt::zero();
                for z in self.up_set(x).ones() {
                    if z != x {
                        acc += &col[z];
                    }
                }
                col[x] = -acc;
            }
        }
        col
    }

    /// `mu(0, 1)` for a poset with both bounds.
    pub fn mobius_number(&self) -> Result<BigInt> {
        let (bottom, top) = self.bounds()?;
        Ok(std::mem::take(&mut self.mobius_from(bottom)[top]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{build_poset, divisor_lattice};

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn trivial_posets() {
        let one = arc(Poset::chain(1));
        assert_eq!(mobius(&one).get(0, 0), &BigInt::one());
        let two = arc(Poset::chain(2));
        assert_eq!(*mobius(&two).get(0, 1), BigInt::from(-1));
        assert_eq!(two.mobius_number().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn zeta_values() {
        let two = arc(Poset::chain(2));
        let z = zeta(&two);
        for (x, y) in [(0, 0), (0, 1), (1, 1)] {
            assert!(z.get(x, y).is_one());
        }
        assert!(z.get(1, 0).is_zero());

        // antichain {a, b} with bottom 0 and top 3
        let p = arc(build_poset(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4).unwrap());
        assert!(zeta(&p).get(1, 2).is_zero());

        let l6 = arc(divisor_lattice(6));
        let z6 = zeta(&l6);
        assert!(z6.get(1, 2).is_zero()); // 2 does not divide 3
        assert!(z6.get(0, 3).is_one()); // 1 divides 6
    }

    #[test]
    fn zeta_squared_on_chain() {
        let two = arc(Poset::chain(2));
        let z = zeta(&two);
        let zz = convolve(&z, &z).unwrap();
        assert_eq!(*zz.get(0, 1), BigInt::from(2));
    }

    #[test]
    fn delta_is_identity_and_self_inverse() {
        let p = arc(divisor_lattice(12));
        let d = delta(&p);
        let z = zeta(&p);
        assert_eq!(convolve(&d, &z).unwrap(), z);
        assert_eq!(convolve(&z, &d).unwrap(), z);
        assert_eq!(invert(&d).unwrap(), d);
    }

    #[test]
    fn inverse_of_zeta_is_mobius() {
        let p = arc(divisor_lattice(60));
        let z = zeta(&p);
        let m = mobius(&p);
        assert_eq!(invert(&z).unwrap(), m);
        assert_eq!(convolve(&z, &m).unwrap(), delta(&p));
        assert_eq!(convolve(&m, &z).unwrap(), delta(&p));
    }

    #[test]
    fn inversion_errors() {
        let p = arc(Poset::chain(3));
        let mut f = zeta(&p);
        f.set(1, 1, BigInt::zero()).unwrap();
        assert_eq!(invert(&f).unwrap_err(), PosetError::NotInvertible(1));
        f.set(1, 1, BigInt::from(2)).unwrap();
        assert_eq!(invert(&f).unwrap_err(), PosetError::NonUnitDiagonal(1));
        assert!(f.set(2, 0, BigInt::one()).is_err());
    }

    #[test]
    fn negative_unit_diagonal_inverts() {
        let p = arc(divisor_lattice(12));
        let mut f = zeta(&p);
        f.set(0, 0, BigInt::from(-1)).unwrap();
        f.set(2, 4, BigInt::from(7)).unwrap();
        let g = invert(&f).unwrap();
        assert_eq!(convolve(&f, &g).unwrap(), delta(&p));
        assert_eq!(convolve(&g, &f).unwrap(), delta(&p));
    }

    #[test]
    fn mismatched_posets() {
        let a = arc(Poset::chain(2));
        let b = arc(Poset::antichain(2));
        assert_eq!(convolve(&zeta(&a), &zeta(&b)).unwrap_err(), PosetError::PosetMismatch);
        // structurally equal posets are interchangeable
        let c = arc(Poset::chain(2));
        assert!(convolve(&zeta(&a), &zeta(&c)).is_ok());
    }

    #[test]
    fn mobius_numbers_of_small_lattices() {
        // Boolean lattice on a 2-set: the diamond
        let diamond = build_poset(&[(0, 1), (0, 2), (1, 3), (2, 3)], 4).unwrap();
        assert_eq!(diamond.mobius_number().unwrap(), BigInt::one());
        assert_eq!(divisor_lattice(30).mobius_number().unwrap(), BigInt::from(-1));
        assert_eq!(divisor_lattice(12).mobius_number().unwrap(), BigInt::zero());
        assert_eq!(divisor_lattice(1).mobius_number().unwrap(), BigInt::one());
        assert_eq!(Poset::antichain(2).mobius_number(), Err(PosetError::NoBounds));
    }

    #[test]
    fn row_and_column_recursions_agree() {
        let p = divisor_lattice(360);
        let top = p.top().unwrap();
        let col = p.mobius_to(top);
        for x in 0..p.size() {
            assert_eq!(p.mobius_from(x)[top], col[x]);
        }
    }
}
