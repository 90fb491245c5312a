use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{is_prime, Result, SocleError, SocleSpec};

/// `mu(C_p^n) = (-1)^n p^(n choose 2)`; `n = 0` is the trivial group.
pub fn mobius_elementary_abelian(p: u64, n: u32) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(SocleError::NotPrime(p));
    }
    let n = u64::from(n);
    let magnitude: BigInt = Pow::pow(BigInt::from(p), n * n.saturating_sub(1) / 2);
    Ok(if n % 2 == 0 { magnitude } else { -magnitude })
}

/// `mu(T^n) = prod_{j=1..n} (mu(T) - (j-1)|Aut(T)|)` for nonabelian simple `T`.
pub fn mobius_simple_power(mu: &BigInt, aut_order: &BigInt, n: u32) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, j| acc * (mu - aut_order * BigInt::from(j)))
}

/// The Möbius number of the socle described by `spec`.
pub fn mobius_socle(spec: &SocleSpec) -> BigInt {
    let sign = if spec.abelian_rank() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let abelian = spec.abelian_parts().iter().fold(BigInt::one(), |acc, &(p, f)| {
        let f = u64::from(f);
        acc * Pow::pow(BigInt::from(p), f * (f - 1) / 2)
    });
    let nonabelian = spec
        .nonabelian_parts()
        .iter()
        .fold(BigInt::one(), |acc, (u, e)| acc * mobius_simple_power(&u.mu, &u.aut_order, *e));
    sign * abelian * nonabelian
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockKind {
    Abelian { prime: u64, exponent: u32 },
    Nonabelian { name: String, order: BigInt, exponent: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBlock {
    pub kind: BlockKind,
    pub mobius: BigInt,
}

impl FactorBlock {
    pub fn label(&self) -> String {
        match &self.kind {
            BlockKind::Abelian { prime, exponent: 1 } => format!("C{prime}"),
            BlockKind::Abelian { prime, exponent } => format!("C{prime}^{exponent}"),
            BlockKind::Nonabelian { name, exponent: 1, .. } => name.clone(),
            BlockKind::Nonabelian { name, exponent, .. } => format!("{name}^{exponent}"),
        }
    }
}

/// Why `mu(H x K) = mu(H) mu(K)` holds at a split: no nontrivial quotient of
/// `K` embeds in `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitReason {
    /// `H` is an elementary abelian `p`-group and `K` is abelian of order
    /// prime to `p`.
    DistinctPrimes,
    /// `H` is abelian and every nontrivial quotient of `K` is nonabelian.
    AbelianVsNonabelian,
    /// `H = U^e` and every simple factor of `K` is a different simple group
    /// of order at least `|U|`, so none embeds in `U`.
    OrderObstruction,
}

impl SplitReason {
    pub fn tag(self) -> &'static str {
        match self {
            SplitReason::DistinctPrimes => "distinct-primes",
            SplitReason::AbelianVsNonabelian => "abelian-vs-nonabelian",
            SplitReason::OrderObstruction => "order-obstruction",
        }
    }
}

/// `blocks[..=after]` is split from `blocks[after + 1..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub after: usize,
    pub reason: SplitReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub blocks: Vec<FactorBlock>,
    pub splits: Vec<Split>,
}

impl Factorization {
    pub fn product(&self) -> BigInt {
        self.blocks.iter().fold(BigInt::one(), |acc, b| acc * &b.mobius)
    }
}

/// Orders the blocks so multiplicativity applies at every split: abelian
/// blocks by prime, then nonabelian blocks by ascending `(order, name)`.
///
/// The abelian part is split off from the nonabelian part first; inside each
/// part, blocks split one at a time from the left.
pub fn coprime_factorization_check(spec: &SocleSpec) -> Factorization {
    let mut abelian: Vec<(u64, u32)> = spec.abelian_parts().to_vec();
    abelian.sort_unstable();
    let mut nonabelian: Vec<_> = spec.nonabelian_parts().iter().collect();
    nonabelian.sort_by(|(a, _), (b, _)| (&a.order, &a.name).cmp(&(&b.order, &b.name)));

    let mut blocks = Vec::new();
    let mut splits = Vec::new();
    for (i, &(p, f)) in abelian.iter().enumerate() {
        if i > 0 {
            splits.push(Split { after: i - 1, reason: SplitReason::DistinctPrimes });
        }
        let mobius = mobius_elementary_abelian(p, f).expect("spec primes are prime");
        blocks.push(FactorBlock { kind: BlockKind::Abelian { prime: p, exponent: f }, mobius });
    }
    if !abelian.is_empty() && !nonabelian.is_empty() {
        splits.push(Split { after: abelian.len() - 1, reason: SplitReason::AbelianVsNonabelian });
    }
    for (i, (u, e)) in nonabelian.iter().enumerate() {
        if i > 0 {
            splits.push(Split { after: blocks.len() - 1, reason: SplitReason::OrderObstruction });
        }
        blocks.push(FactorBlock {
            kind: BlockKind::Nonabelian { name: u.name.clone(), order: u.order.clone(), exponent: *e },
            mobius: mobius_simple_power(&u.mu, &u.aut_order, *e),
        });
    }
    splits.sort_by_key(|s| s.after);
    Factorization { blocks, splits }
}
