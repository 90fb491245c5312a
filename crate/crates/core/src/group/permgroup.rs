use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::{GroupError, Permutation, Result};

/// A permutation group with its elements enumerated in canonical order.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    name: Option<String>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `generators`, returned in sorted order.
///
/// Fails once more than `cap` elements have been reached.
pub fn generate_elements(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    for g in generators {
        if g.degree() != degree {
            return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<PermGroup> {
        let elements = generate_elements(degree, &generators, cap)?;
        Ok(PermGroup::from_sorted_elements(degree, generators, elements))
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> PermGroup {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // identity generators carry no information
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        PermGroup { degree, generators, elements, index, name: None }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        let elements = vec![Permutation::identity(degree)];
        PermGroup::from_sorted_elements(degree, Vec::new(), elements)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PermGroup {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the identity; always 0 in canonical order.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    /// Index of `a * b` (apply `a`, then `b`).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }
}

/// Multiplication with memoized right-multiplication columns.
///
/// `column(b)[a]` is the index of `a * b`. Columns are only cached for groups
/// up to `CACHE_LIMIT` elements, so memory stays at most `CACHE_LIMIT^2` words.
pub(crate) struct Multiplier<'g> {
    group: &'g PermGroup,
    columns: Vec<Option<Box<[u32]>>>,
}

const CACHE_LIMIT: usize = 4096;

impl<'g> Multiplier<'g> {
    pub(crate) fn new(group: &'g PermGroup) -> Self {
        let slots = if group.order() <= CACHE_LIMIT { group.order() } else { 0 };
        Multiplier { group, columns: vec![None; slots] }
    }

    pub(crate) fn group(&self) -> &'g PermGroup {
        self.group
    }

    #[inline]
    pub(crate) fn mul(&mut self, a: usize, b: usize) -> usize {
        if self.columns.is_empty() {
            return self.group.mul(a, b);
        }
        if self.columns[b].is_none() {
            let g = self.group;
            let rhs = &g.elements[b];
            let col: Box<[u32]> =
                g.elements.iter().map(|x| g.index[&x.then(rhs)] as u32).collect();
            self.columns[b] = Some(col);
        }
        self.columns[b].as_ref().unwrap()[a] as usize
    }
}

/// `C_n` generated by the `n`-cycle on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n >= 2 {
        let cycle: Vec<usize> = (0..n).collect();
        vec![Permutation::from_cycles(n, &[&cycle]).unwrap()]
    } else {
        Vec::new()
    };
    let elements = (0..n)
        .map(|k| Permutation::from_images((0..n).map(|i| (i + k) % n).collect()).unwrap())
        .collect::<Vec<_>>();
    named(n, gens, elements, format!("C{n}"))
}

/// `S_n` generated by the `n`-cycle and a transposition.
pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
    }
    if n >= 3 {
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
    }
    let group = PermGroup::generate(n, gens, usize::MAX).expect("no cap");
    group.with_name(format!("S{n}"))
}

/// `A_n` generated by the 3-cycles `(0 1 k)`; trivial below degree 3.
pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n).map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap()).collect();
    let group = PermGroup::generate(n, gens, usize::MAX).expect("no cap");
    group.with_name(format!("A{n}"))
}

fn named(degree: usize, gens: Vec<Permutation>, mut elements: Vec<Permutation>, name: String) -> PermGroup {
    if elements.is_empty() {
        elements.push(Permutation::identity(degree));
    }
    elements.sort_unstable();
    PermGroup::from_sorted_elements(degree, gens, elements).with_name(name)
}

/// `left x right` acting on the disjoint union of the two point sets.
///
/// Element `(a, b)` has index `a * |right| + b`: concatenated image arrays sort
/// lexicographically by `(a, b)`, so the product's canonical order is the
/// lexicographic order of index pairs.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: PermGroup,
    pub left: PermGroup,
    pub right: PermGroup,
}

impl DirectProduct {
    pub fn new(left: &PermGroup, right: &PermGroup, cap: usize) -> Result<DirectProduct> {
        let order = left.order().saturating_mul(right.order());
        if order > cap {
            return Err(GroupError::OrderCapExceeded { cap });
        }
        let degree = left.degree + right.degree;
        let mut gens: Vec<Permutation> =
            left.generators.iter().map(|g| g.extended(degree)).collect();
        let left_id = Permutation::identity(left.degree);
        gens.extend(right.generators.iter().map(|h| left_id.concat(h)));
        let mut elements = Vec::with_capacity(order);
        for a in &left.elements {
            for b in &right.elements {
                elements.push(a.concat(b));
            }
        }
        let mut group = PermGroup::from_sorted_elements(degree, gens, elements);
        if let (Some(l), Some(r)) = (left.name(), right.name()) {
            group = group.with_name(format!("{l}*{r}"));
        }
        Ok(DirectProduct { group, left: left.clone(), right: right.clone() })
    }

    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    /// `(left index, right index)` of a product element.
    pub fn split_index(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }
}

pub fn direct_product(left: &PermGroup, right: &PermGroup, cap: usize) -> Result<PermGroup> {
    Ok(DirectProduct::new(left, right, cap)?.group)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_generators_give_identity() {
        let elems = generate_elements(4, &[], 10).unwrap();
        assert_eq!(elems, vec![Permutation::identity(4)]);
    }

    #[test]
    fn alternating_five_has_sixty_elements() {
        let a5 = alternating(5);
        assert_eq!(a5.order(), 60);
        assert!(a5.elements().iter().all(Permutation::is_even));
    }

    #[test]
    fn order_cap() {
        let s7 = symmetric(7);
        assert_eq!(s7.order(), 5040);
        assert_eq!(
            generate_elements(7, s7.generators(), 1000).unwrap_err(),
            GroupError::OrderCapExceeded { cap: 1000 }
        );
        assert!(generate_elements(7, s7.generators(), 5040).is_ok());
    }

    #[test]
    fn degree_mismatch() {
        let g = Permutation::identity(3);
        assert!(matches!(
            generate_elements(4, &[g], 10),
            Err(GroupError::DegreeMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn named_constructors() {
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(1).order(), 1);
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic(0).order(), 1);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(2).order(), 1);
        assert!(cyclic(12).is_abelian());
        assert!(!symmetric(3).is_abelian());
        // cyclic builds its elements directly; they must match the closure
        let c6 = cyclic(6);
        assert_eq!(c6.elements(), generate_elements(6, c6.generators(), 100).unwrap());
    }

    #[test]
    fn identity_is_index_zero() {
        for g in [cyclic(7), symmetric(4), alternating(5)] {
            assert!(g.element(g.identity()).is_identity());
        }
    }

    #[test]
    fn direct_products() {
        let c2c3 = DirectProduct::new(&cyclic(2), &cyclic(3), 100).unwrap();
        assert_eq!(c2c3.group.order(), 6);
        assert!(c2c3.group.is_abelian());
        // element of order 6 present, so the product is cyclic
        let orders: Vec<usize> = (0..6)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = c2c3.group.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        assert!(orders.contains(&6));

        let s3a5 = direct_product(&symmetric(3), &alternating(5), 1000).unwrap();
        assert_eq!(s3a5.order(), 360);
        assert_eq!(s3a5.name(), Some("S3*A5"));
        let a5a5 = direct_product(&alternating(5), &alternating(5), 20_000).unwrap();
        assert_eq!(a5a5.order(), 3600);
        assert_eq!(
            direct_product(&alternating(5), &alternating(5), 1000).unwrap_err(),
            GroupError::OrderCapExceeded { cap: 1000 }
        );
    }

    #[test]
    fn product_indices_match_canonical_order() {
        let dp = DirectProduct::new(&symmetric(3), &cyclic(4), 100).unwrap();
        let generated =
            generate_elements(dp.group.degree(), dp.group.generators(), 1000).unwrap();
        assert_eq!(dp.group.elements(), generated.as_slice());
        for a in 0..6 {
            for b in 0..4 {
                let x = dp.pair_index(a, b);
                assert_eq!(dp.split_index(x), (a, b));
                let (pa, pb) = dp.group.element(x).split_at(3).unwrap();
                assert_eq!(&pa, dp.left.element(a));
                assert_eq!(&pb, dp.right.element(b));
            }
        }
    }

    #[test]
    fn cached_multiplication_agrees() {
        let s4 = symmetric(4);
        let mut m = Multiplier::new(&s4);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(m.mul(a, b), s4.mul(a, b));
            }
        }
    }
}
