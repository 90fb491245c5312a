//! Brute-force cross-checks: Möbius numbers from fully enumerated subgroup
//! lattices compared against the closed forms and the complement theorems.

mod checks;
mod report;
mod suite;

use num_bigint::BigInt;
use thiserror::Error;

use crate::group::{alternating, GroupError, PermGroup, Permutation, SubgroupLattice, Caps, subgroup_lattice};
use crate::poset::PosetError;
use crate::socle::{SimpleGroupRecord, SimpleGroupTable, SocleError, Source, TableRow};

pub use checks::{
    verify_complement_classification, verify_crapo_all_elements, verify_cyclic_bridge,
    verify_dirprod_constructive, verify_known_value, verify_mumult, verify_socle_formula,
};
pub use report::{summary_table, VerificationReport, Witness};
pub use suite::{prime_powers, product_corpus, run_suite, Suite};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Socle(#[from] SocleError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("cannot build `{0}` as a permutation group; give generators or use a name A<n>")]
    Unrealizable(String),
    #[error("`{name}`: generators give a group of order {found}, record says {expected}")]
    OrderMismatch { name: String, expected: BigInt, found: usize },
    #[error("`{name}`: mu is given as {stated} but the subgroup lattice gives {computed}")]
    MuMismatch { name: String, stated: BigInt, computed: BigInt },
}

impl OracleError {
    /// Whether the failure is a resource cap rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            OracleError::Group(GroupError::OrderCapExceeded { .. } | GroupError::EnumerationCapExceeded { .. })
        )
    }
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// `mu(0, G)` on the full subgroup lattice.
pub fn brute_force_mobius(group: &PermGroup, caps: &Caps) -> std::result::Result<BigInt, GroupError> {
    Ok(subgroup_lattice(group, caps)?.mobius_number())
}

fn lattice<'g>(group: &'g PermGroup, caps: &Caps) -> Result<SubgroupLattice<'g>> {
    Ok(subgroup_lattice(group, caps)?)
}

/// Builds a simple group from its record: the listed generators if any,
/// otherwise `A<n>` by name.
pub fn realize(
    name: &str,
    order: &BigInt,
    generators: Option<&[Vec<usize>]>,
    max_order: usize,
) -> Result<PermGroup> {
    let too_big = || OracleError::Group(GroupError::OrderCapExceeded { cap: max_order });
    if *order > BigInt::from(max_order) {
        return Err(too_big());
    }
    let group = match generators {
        Some(gens) => {
            let degree = gens.first().map_or(0, Vec::len);
            let perms = gens
                .iter()
                .map(|g| Permutation::from_images(g.clone()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            PermGroup::generate(degree, perms, max_order)?
        }
        None => {
            let n: usize = name
                .strip_prefix('A')
                .and_then(|d| d.parse().ok())
                .filter(|&n| n >= 5)
                .ok_or_else(|| OracleError::Unrealizable(name.to_owned()))?;
            alternating(n)
        }
    };
    if BigInt::from(group.order()) != *order {
        return Err(OracleError::OrderMismatch { name: name.to_owned(), expected: order.clone(), found: group.order() });
    }
    Ok(group.with_name(name))
}

/// Turns table rows into records, computing `mu` by brute force for rows
/// marked `oracle`. A stated `mu` on such a row must match.
pub fn resolve_rows(rows: Vec<TableRow>, caps: &Caps) -> Result<SimpleGroupTable> {
    let mut table = SimpleGroupTable::default();
    for row in rows {
        let row = if row.source == Source::Oracle { resolve_row(row, caps)? } else { row };
        table.insert(row.into_record()?)?;
    }
    Ok(table)
}

fn resolve_row(mut row: TableRow, caps: &Caps) -> Result<TableRow> {
    let group = realize(&row.name, &row.order, row.generators.as_deref(), caps.max_order)?;
    let computed = brute_force_mobius(&group, caps)?;
    match &row.mu {
        Some(stated) if *stated != computed => {
            return Err(OracleError::MuMismatch { name: row.name, stated: stated.clone(), computed })
        }
        _ => row.mu = Some(computed),
    }
    Ok(row)
}

/// Builds the record's group; see [`realize`].
pub fn realize_record(record: &SimpleGroupRecord, max_order: usize) -> Result<PermGroup> {
    realize(&record.name, &record.order, record.generators.as_deref(), max_order)
}
