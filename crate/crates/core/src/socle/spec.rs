use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::{is_prime, Result, SimpleGroupRecord, SimpleGroupTable, SocleError};

/// `C_p1^f1 x ... x C_pn^fn x U_1^e1 x ... x U_m^em` with distinct primes,
/// distinct simple groups and positive exponents. Parts keep the order they
/// were given in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleSpec {
    abelian: Vec<(u64, u32)>,
    nonabelian: Vec<(SimpleGroupRecord, u32)>,
}

impl SocleSpec {
    pub fn new(abelian: Vec<(u64, u32)>, nonabelian: Vec<(SimpleGroupRecord, u32)>) -> Result<Self> {
        for (i, &(p, f)) in abelian.iter().enumerate() {
            if !is_prime(p) {
                return Err(SocleError::NotPrime(p));
            }
            if f == 0 {
                return Err(SocleError::SpecInvariantViolation(format!("C{p} has exponent 0")));
            }
            if abelian[..i].iter().any(|&(q, _)| q == p) {
                return Err(SocleError::SpecInvariantViolation(format!(
                    "prime {p} repeated; write C{p}^f once"
                )));
            }
        }
        for (i, (u, e)) in nonabelian.iter().enumerate() {
            if *e == 0 {
                return Err(SocleError::SpecInvariantViolation(format!("{} has exponent 0", u.name)));
            }
            if nonabelian[..i].iter().any(|(v, _)| v.name == u.name) {
                return Err(SocleError::SpecInvariantViolation(format!(
                    "{0} repeated; write {0}^e once",
                    u.name
                )));
            }
        }
        Ok(SocleSpec { abelian, nonabelian })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        SocleSpec { abelian: Vec::new(), nonabelian: Vec::new() }
    }

    pub fn abelian_parts(&self) -> &[(u64, u32)] {
        &self.abelian
    }

    pub fn nonabelian_parts(&self) -> &[(SimpleGroupRecord, u32)] {
        &self.nonabelian
    }

    /// `F`, the total rank of the abelian part.
    pub fn abelian_rank(&self) -> u64 {
        self.abelian.iter().map(|&(_, f)| u64::from(f)).sum()
    }

    pub fn order(&self) -> BigInt {
        let abelian = self.abelian.iter().map(|&(p, f)| BigInt::from(p).pow(f));
        let nonabelian = self.nonabelian.iter().map(|(u, e)| Pow::pow(&u.order, *e));
        abelian.chain(nonabelian).fold(BigInt::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for SocleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .abelian
            .iter()
            .map(|&(p, e)| power(&format!("C{p}"), e))
            .chain(self.nonabelian.iter().map(|(u, e)| power(&u.name, *e)))
            .collect();
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join("*"))
        }
    }
}

fn power(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_owned()
    } else {
        format!("{base}^{e}")
    }
}

/// Parses `term ('*' term)*` where `term` is `C<p>` or a table name, with an
/// optional `^exponent`. Whitespace is ignored; `1` is the trivial group.
pub fn parse_socle_spec(text: &str, table: &SimpleGroupTable) -> Result<SocleSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(SocleError::Parse("empty spec".into()));
    }
    if compact == "1" {
        return Ok(SocleSpec::trivial());
    }
    let mut abelian = Vec::new();
    let mut nonabelian = Vec::new();
    for term in compact.split('*') {
        let (base, exp) = match term.split_once('^') {
            Some((b, e)) => (b, parse_exponent(e, term)?),
            None => (term, 1),
        };
        if base.is_empty() {
            return Err(SocleError::Parse(format!("missing group name in `{term}`")));
        }
        if exp == 0 {
            return Err(SocleError::SpecInvariantViolation(format!("zero exponent in `{term}`")));
        }
        match base.strip_prefix('C') {
            Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                let p: u64 = digits
                    .parse()
                    .map_err(|_| SocleError::Parse(format!("prime too large in `{term}`")))?;
                abelian.push((p, exp));
            }
            _ => nonabelian.push((table.lookup(base)?.clone(), exp)),
        }
    }
    SocleSpec::new(abelian, nonabelian)
}

fn parse_exponent(s: &str, term: &str) -> Result<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SocleError::Parse(format!("expected an exponent in `{term}`")));
    }
    s.parse().map_err(|_| SocleError::Parse(format!("exponent too large in `{term}`")))
}
