//! Closed-form Möbius numbers of direct products of simple groups.
//!
//! A socle is written `C_p1^f1 x ... x U_1^e1 x ...` with distinct primes and
//! distinct nonabelian simple groups. The abelian part contributes
//! `(-1)^f p^(f choose 2)` per prime, each `U^e` contributes
//! `prod_{j=1..e} (mu(U) - (j-1)|Aut(U)|)`, and the blocks multiply.

mod formula;
mod spec;
mod table;

use num_bigint::BigInt;
use thiserror::Error;

pub use formula::{
    coprime_factorization_check, mobius_elementary_abelian, mobius_simple_power, mobius_socle,
    BlockKind, FactorBlock, Factorization, Split, SplitReason,
};
pub use spec::{parse_socle_spec, SocleSpec};
pub use table::{builtin_table, SimpleGroupRecord, SimpleGroupTable, Source, TableRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SocleError {
    #[error("cannot parse socle spec: {0}")]
    Parse(String),
    #[error("unknown simple group `{0}`")]
    UnknownSimpleGroup(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid socle spec: {0}")]
    SpecInvariantViolation(String),
    #[error("simple group `{0}` listed twice with different data")]
    DuplicateSimpleGroup(String),
    #[error("invalid record `{name}`: {reason}")]
    InvalidRecord { name: String, reason: String },
    #[error("record `{0}` has no mu; supply one or resolve it by brute force")]
    MissingMu(String),
    #[error("table file: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, SocleError>;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Decimal rendering with `,` between groups of three digits.
pub fn with_thousands_separators(value: &BigInt) -> String {
    let digits = value.magnitude().to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3 + 1);
    if value.sign() == num_bigint::Sign::Minus {
        out.push('-');
    }
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(1 << 40));
    }

    #[test]
    fn separators() {
        assert_eq!(with_thousands_separators(&BigInt::from(-1_679_616_000_000i64)), "-1,679,616,000,000");
        assert_eq!(with_thousands_separators(&BigInt::from(999)), "999");
        assert_eq!(with_thousands_separators(&BigInt::from(1000)), "1,000");
        assert_eq!(with_thousands_separators(&BigInt::from(0)), "0");
        assert_eq!(with_thousands_separators(&BigInt::from(-60)), "-60");
    }
}
