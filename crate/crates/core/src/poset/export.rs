use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{build_poset, Poset, Result};

/// Wire form: `{"size": N, "leq": [[x, y], ...], "labels": [...]}` with the
/// full reflexive relation in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl From<&Poset> for PosetJson {
    fn from(poset: &Poset) -> Self {
        PosetJson {
            size: poset.size(),
            leq: poset.relation_pairs().into_iter().map(|(x, y)| [x, y]).collect(),
            labels: poset.labels().to_vec(),
        }
    }
}

impl PosetJson {
    /// Rebuilds the poset; the relation is closed, so covers alone suffice.
    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<_> = self.leq.iter().map(|&[x, y]| (x, y)).collect();
        let poset = build_poset(&pairs, self.size)?;
        if self.labels.len() == self.size {
            Ok(poset.with_labels(self.labels.clone()))
        } else {
            Ok(poset)
        }
    }
}

/// Graphviz rendering of the Hasse diagram, edges pointing upward.
pub fn hasse_dot(poset: &Poset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for x in 0..poset.size() {
        writeln!(out, "  n{x} [label=\"{}\"];", escape(poset.label(x))).unwrap();
    }
    for (x, y) in poset.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::divisor_lattice;

    #[test]
    fn json_lists_full_relation_sorted() {
        let p = Poset::chain(3);
        let json = serde_json::to_string(&PosetJson::from(&p)).unwrap();
        assert_eq!(
            json,
            r#"{"size":3,"leq":[[0,0],[0,1],[0,2],[1,1],[1,2],[2,2]],"labels":["0","1","2"]}"#
        );
        let back: PosetJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_poset().unwrap(), p);
        assert!(serde_json::from_str::<PosetJson>(r#"{"size":1,"leq":[],"extra":1}"#).is_err());
    }

    #[test]
    fn dot_has_only_cover_edges() {
        let dot = hasse_dot(&divisor_lattice(4), "L4");
        assert!(dot.starts_with("digraph \"L4\" {\n  rankdir=BT;\n"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
        assert!(dot.contains("n2 [label=\"4\"];"));
    }
}
