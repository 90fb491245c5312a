use std::fmt;

use super::{alternating, cyclic, symmetric, DirectProduct, GroupError, PermGroup, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl Atom {
    pub fn order(self) -> Option<usize> {
        match self {
            Atom::Cyclic(n) => Some(n),
            Atom::Symmetric(n) => factorial(n),
            Atom::Alternating(n) => factorial(n).map(|f| f / 2),
        }
    }

    pub fn build(self) -> PermGroup {
        match self {
            Atom::Cyclic(n) => cyclic(n),
            Atom::Symmetric(n) => symmetric(n),
            Atom::Alternating(n) => alternating(n),
        }
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Alternating(n) => write!(f, "A{n}"),
        }
    }
}

/// A product of named groups such as `S3*A5` or `C2^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExpr {
    pub factors: Vec<(Atom, u32)>,
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{atom}")?;
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Parses `term ('*' term)*` with `term = ('C'|'S'|'A') n ('^' e)?`.
/// Whitespace is ignored.
pub fn parse_group_expr(text: &str) -> Result<GroupExpr> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(GroupError::Parse("empty expression".into()));
    }
    let mut factors = Vec::new();
    for term in compact.split('*') {
        let (base, exp) = match term.split_once('^') {
            Some((b, e)) => (b, parse_number(e, term)?),
            None => (term, 1),
        };
        if exp == 0 {
            return Err(GroupError::Parse(format!("zero exponent in `{term}`")));
        }
        let mut chars = base.chars();
        let kind = chars.next().ok_or_else(|| GroupError::Parse("empty factor".into()))?;
        let n = parse_number(chars.as_str(), term)?;
        let atom = match kind {
            'C' if n >= 1 => Atom::Cyclic(n),
            'S' if n >= 1 => Atom::Symmetric(n),
            'A' if n >= 3 => Atom::Alternating(n),
            'C' | 'S' | 'A' => {
                return Err(GroupError::Parse(format!("degree out of range in `{term}`")))
            }
            other => return Err(GroupError::Parse(format!("unknown group family `{other}`"))),
        };
        factors.push((atom, u32::try_from(exp).map_err(|_| GroupError::Parse("exponent too large".into()))?));
    }
    Ok(GroupExpr { factors })
}

fn parse_number(s: &str, term: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(GroupError::Parse(format!("expected a number in `{term}`")));
    }
    s.parse().map_err(|_| GroupError::Parse(format!("number too large in `{term}`")))
}

impl GroupExpr {
    /// Exact group order, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.factors.iter().try_fold(1usize, |acc, &(atom, exp)| {
            let o = atom.order()?;
            (0..exp).try_fold(acc, |a, _| a.checked_mul(o))
        })
    }

    /// Builds the product as a permutation group, refusing anything above
    /// `max_order` elements before generating it.
    pub fn build(&self, max_order: usize) -> Result<PermGroup> {
        match self.order() {
            Some(o) if o <= max_order => {}
            _ => return Err(GroupError::OrderCapExceeded { cap: max_order }),
        }
        let mut group: Option<PermGroup> = None;
        for &(atom, exp) in &self.factors {
            let factor = atom.build();
            for _ in 0..exp {
                group = Some(match group {
                    None => factor.clone(),
                    Some(g) => DirectProduct::new(&g, &factor, max_order)?.group,
                });
            }
        }
        Ok(group.expect("at least one factor").with_name(self.to_string()))
    }
}
