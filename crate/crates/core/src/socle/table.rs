use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Result, SocleError};

/// Where a record's values come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    User,
    Oracle,
}

/// Data for one nonabelian simple group `U`: `|U|`, `mu(U)` and `|Aut(U)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGroupRecord {
    pub name: String,
    pub order: BigInt,
    pub mu: BigInt,
    pub aut_order: BigInt,
    pub source: Source,
    /// Optional permutation generators (image arrays) realizing the group.
    pub generators: Option<Vec<Vec<usize>>>,
}

/// One row of a table file, before `mu` is known for oracle rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub name: String,
    #[serde(with = "crate::bigint_serde")]
    pub order: BigInt,
    #[serde(default, with = "crate::bigint_serde::option", skip_serializing_if = "Option::is_none")]
    pub mu: Option<BigInt>,
    #[serde(with = "crate::bigint_serde")]
    pub aut_order: BigInt,
    #[serde(default = "default_source")]
    pub source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

fn default_source() -> Source {
    Source::User
}

impl From<&SimpleGroupRecord> for TableRow {
    fn from(r: &SimpleGroupRecord) -> Self {
        TableRow {
            name: r.name.clone(),
            order: r.order.clone(),
            mu: Some(r.mu.clone()),
            aut_order: r.aut_order.clone(),
            source: r.source,
            generators: r.generators.clone(),
        }
    }
}

impl TableRow {
    pub fn into_record(self) -> Result<SimpleGroupRecord> {
        let mu = self.mu.ok_or_else(|| SocleError::MissingMu(self.name.clone()))?;
        let record = SimpleGroupRecord {
            name: self.name,
            order: self.order,
            mu,
            aut_order: self.aut_order,
            source: self.source,
            generators: self.generators,
        };
        record.validate()?;
        Ok(record)
    }
}

impl SimpleGroupRecord {
    /// Checks the invariants every nonabelian simple group satisfies:
    /// `|U| >= 60`, and `|U|` divides `|Aut(U)|` since `Inn(U) = U` is a
    /// subgroup of `Aut(U)`.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| SocleError::InvalidRecord {
            name: self.name.clone(),
            reason: reason.to_owned(),
        };
        if !valid_name(&self.name) {
            return Err(invalid("names must be non-empty, free of whitespace, `*` and `^`, and not of the form C<n>"));
        }
        if self.order < BigInt::from(60) {
            return Err(invalid("order of a nonabelian simple group is at least 60"));
        }
        if self.aut_order < BigInt::one() {
            return Err(invalid("aut_order must be positive"));
        }
        if !(&self.aut_order % &self.order).is_zero() {
            return Err(invalid("order must divide aut_order"));
        }
        Ok(())
    }
}

fn valid_name(name: &str) -> bool {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '*' || c == '^') {
        return false;
    }
    // C<digits> is reserved for cyclic factors
    match name.strip_prefix('C') {
        Some(rest) => rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()),
        None => name != "1",
    }
}

/// A set of simple-group records with unique names, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGroupTable {
    records: Vec<SimpleGroupRecord>,
}

/// The two records whose values are stated outright: `A5` and `A6`.
pub fn builtin_table() -> SimpleGroupTable {
    let rec = |name: &str, order: i64, mu: i64, aut: i64| SimpleGroupRecord {
        name: name.into(),
        order: order.into(),
        mu: mu.into(),
        aut_order: aut.into(),
        source: Source::Builtin,
        generators: None,
    };
    SimpleGroupTable { records: vec![rec("A5", 60, -60, 120), rec("A6", 360, 720, 1440)] }
}

impl SimpleGroupTable {
    pub fn records(&self) -> &[SimpleGroupRecord] {
        &self.records
    }

    pub fn lookup(&self, name: &str) -> Result<&SimpleGroupRecord> {
        self.records
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| SocleError::UnknownSimpleGroup(name.to_owned()))
    }

    /// Adds a record. A name already present is accepted only with identical
    /// `order`, `mu` and `aut_order`.
    pub fn insert(&mut self, record: SimpleGroupRecord) -> Result<()> {
        record.validate()?;
        if let Some(existing) = self.records.iter().find(|r| r.name == record.name) {
            let same = existing.order == record.order
                && existing.mu == record.mu
                && existing.aut_order == record.aut_order;
            return if same { Ok(()) } else { Err(SocleError::DuplicateSimpleGroup(record.name)) };
        }
        self.records.push(record);
        Ok(())
    }

    pub fn merge(&mut self, other: SimpleGroupTable) -> Result<()> {
        other.records.into_iter().try_for_each(|r| self.insert(r))
    }

    /// Parses table rows; duplicate names within one file are rejected.
    pub fn parse_rows(json: &str) -> Result<Vec<TableRow>> {
        let rows: Vec<TableRow> =
            serde_json::from_str(json).map_err(|e| SocleError::Table(e.to_string()))?;
        for (i, row) in rows.iter().enumerate() {
            if rows[..i].iter().any(|r| r.name == row.name) {
                return Err(SocleError::DuplicateSimpleGroup(row.name.clone()));
            }
        }
        Ok(rows)
    }

    pub fn from_rows(rows: Vec<TableRow>) -> Result<SimpleGroupTable> {
        let mut table = SimpleGroupTable::default();
        for row in rows {
            table.insert(row.into_record()?)?;
        }
        Ok(table)
    }

    pub fn from_json(json: &str) -> Result<SimpleGroupTable> {
        SimpleGroupTable::from_rows(SimpleGroupTable::parse_rows(json)?)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<TableRow> = self.records.iter().map(TableRow::from).collect();
        serde_json::to_string_pretty(&rows).expect("rows serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let t = builtin_table();
        let a5 = t.lookup("A5").unwrap();
        assert_eq!((a5.order.clone(), a5.mu.clone(), a5.aut_order.clone()), (60.into(), (-60).into(), 120.into()));
        let a6 = t.lookup("A6").unwrap();
        assert_eq!((a6.order.clone(), a6.mu.clone(), a6.aut_order.clone()), (360.into(), 720.into(), 1440.into()));
        assert_eq!(t.lookup("Ru").unwrap_err(), SocleError::UnknownSimpleGroup("Ru".into()));
        assert_eq!(t.records().len(), 2);
    }

    #[test]
    fn json_round_trip_with_big_values() {
        let json = r#"[{"name":"M","order":808017424794512875886459904961710757005754368000000000,
            "mu":-1,"aut_order":808017424794512875886459904961710757005754368000000000,"source":"user"}]"#;
        let t = SimpleGroupTable::from_json(json).unwrap();
        let m = t.lookup("M").unwrap();
        assert_eq!(m.order.to_string(), "808017424794512875886459904961710757005754368000000000");
        let again = SimpleGroupTable::from_json(&t.to_json()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn rejects_bad_tables() {
        let unknown = r#"[{"name":"A5","order":60,"mu":-60,"aut_order":120,"colour":"red"}]"#;
        assert!(matches!(SimpleGroupTable::from_json(unknown), Err(SocleError::Table(_))));
        let dup = r#"[{"name":"X","order":60,"mu":1,"aut_order":60},{"name":"X","order":60,"mu":1,"aut_order":60}]"#;
        assert_eq!(SimpleGroupTable::from_json(dup).unwrap_err(), SocleError::DuplicateSimpleGroup("X".into()));
        let small = r#"[{"name":"X","order":30,"mu":1,"aut_order":60}]"#;
        assert!(matches!(SimpleGroupTable::from_json(small), Err(SocleError::InvalidRecord { .. })));
        let nondiv = r#"[{"name":"X","order":60,"mu":1,"aut_order":90}]"#;
        assert!(matches!(SimpleGroupTable::from_json(nondiv), Err(SocleError::InvalidRecord { .. })));
        let cyclic_name = r#"[{"name":"C7","order":60,"mu":1,"aut_order":60}]"#;
        assert!(matches!(SimpleGroupTable::from_json(cyclic_name), Err(SocleError::InvalidRecord { .. })));
        let no_mu = r#"[{"name":"X","order":60,"aut_order":60,"source":"oracle"}]"#;
        assert_eq!(SimpleGroupTable::from_json(no_mu).unwrap_err(), SocleError::MissingMu("X".into()));
        let fractional = r#"[{"name":"X","order":60.5,"mu":1,"aut_order":60}]"#;
        assert!(SimpleGroupTable::from_json(fractional).is_err());
    }

    #[test]
    fn merge_accepts_identical_duplicates_only() {
        let mut t = builtin_table();
        let same = SimpleGroupTable::from_json(r#"[{"name":"A5","order":60,"mu":-60,"aut_order":120,"source":"builtin"}]"#).unwrap();
        t.merge(same).unwrap();
        assert_eq!(t.records().len(), 2);
        let clash = SimpleGroupTable::from_json(r#"[{"name":"A5","order":60,"mu":-61,"aut_order":120}]"#).unwrap();
        assert_eq!(t.merge(clash).unwrap_err(), SocleError::DuplicateSimpleGroup("A5".into()));
    }
}
