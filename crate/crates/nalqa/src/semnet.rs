//! The semantic network: a network-bound list of binary complex terms
//! `f(t1, t2)`. The functor is either `is` (object to class) or an
//! attribute name (object to value or object to object). Path
//! enumeration collapses the network into the alternating
//! node/edge sequences the reasoner matches on.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

pub const IS_EDGE: &str = "is";

#[derive(Debug, Error)]
pub enum NetError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("kind violation: {0}")]
    KindViolation(String),
}

/// One binary complex term, stored as node-edge-node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub node1: String,
    pub edge: String,
    pub node2: String,
}

impl Triple {
    pub fn new(
        node1: impl Into<String>,
        edge: impl Into<String>,
        node2: impl Into<String>,
    ) -> Self {
        let edge: String = edge.into();
        // `is_a` is accepted as a synonym and normalized on entry
        let edge = if edge == "is_a" { IS_EDGE.to_string() } else { edge };
        Triple {
            node1: node1.into(),
            edge,
            node2: node2.into(),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.node1, self.edge, self.node2)
    }
}

/// A leaf-to-root sequence `n1, e1, n2, e2, n3, e3, n4`: leaf value,
/// attribute edge, entity object, event attribute edge, event object,
/// `is`, class name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathSequence {
    pub leaf: String,
    pub leaf_edge: String,
    pub entity: String,
    pub event_edge: String,
    pub event: String,
    pub class: String,
}

impl fmt::Display for PathSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {}, {}, {}, {}",
            self.leaf, self.leaf_edge, self.entity, self.event_edge, self.event, IS_EDGE, self.class
        )
    }
}

/// The network: an insertion-ordered set of triples. Ingest is
/// single-writer; afterwards the network is an immutable snapshot that
/// any number of question matches can read concurrently.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SemanticNetwork {
    triples: Vec<Triple>,
    seen: HashSet<Triple>,
}

impl SemanticNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Class nodes: targets of `is` edges.
    pub fn is_class_node(&self, node: &str) -> bool {
        self.triples
            .iter()
            .any(|t| t.edge == IS_EDGE && t.node2 == node)
    }

    /// Object nodes: sources of any edge.
    pub fn is_object_node(&self, node: &str) -> bool {
        self.triples.iter().any(|t| t.node1 == node)
    }

    /// The class of an object node, if declared.
    pub fn class_of(&self, node: &str) -> Option<&str> {
        self.triples
            .iter()
            .find(|t| t.edge == IS_EDGE && t.node1 == node)
            .map(|t| t.node2.as_str())
    }

    /// Idempotent set insertion. Rejects triples that contradict the
    /// node-kind rules.
    pub fn insert(&mut self, triple: Triple) -> Result<(), NetError> {
        if self.seen.contains(&triple) {
            return Ok(());
        }
        if self.is_class_node(&triple.node1) {
            return Err(NetError::KindViolation(format!(
                "edge `{}` out of class node `{}`",
                triple.edge, triple.node1
            )));
        }
        if triple.edge == IS_EDGE {
            if self.is_object_node(&triple.node2) {
                return Err(NetError::KindViolation(format!(
                    "`is` edge into object node `{}`",
                    triple.node2
                )));
            }
            if let Some(existing) = self.class_of(&triple.node1) {
                if existing != triple.node2 {
                    return Err(NetError::KindViolation(format!(
                        "object `{}` already declared `is {existing}`",
                        triple.node1
                    )));
                }
            }
        }
        // an attribute value may spell the same as a class name; leaves
        // are per-occurrence, so that is not a conflict
        self.seen.insert(triple.clone());
        self.triples.push(triple);
        Ok(())
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) -> Result<(), NetError> {
        for t in triples {
            self.insert(t)?;
        }
        Ok(())
    }

    /// All paths `n1, e1, n2, e2, n3, is, n4`: for every event object
    /// n3 with class n4, every attribute edge e2 to an entity object
    /// n2, and every atomic attribute edge e1 of n2 to a leaf n1. Each
    /// path begins with a leaf, ends at a root and holds exactly two
    /// intermediate nodes.
    pub fn enumerate_paths(&self) -> Vec<PathSequence> {
        let mut out = Vec::new();
        let objects: HashSet<&str> = self
            .triples
            .iter()
            .filter(|t| t.edge == IS_EDGE)
            .map(|t| t.node1.as_str())
            .collect();
        let mut attrs_of: HashMap<&str, Vec<&Triple>> = HashMap::new();
        for t in &self.triples {
            if t.edge != IS_EDGE {
                attrs_of.entry(t.node1.as_str()).or_default().push(t);
            }
        }
        for event_t in self.triples.iter().filter(|t| t.edge == IS_EDGE) {
            let event = event_t.node1.as_str();
            let class = event_t.node2.as_str();
            for edge in attrs_of.get(event).into_iter().flatten() {
                let entity = edge.node2.as_str();
                if !objects.contains(entity) {
                    continue; // leaf-valued edge, not an entity link
                }
                for leaf_edge in attrs_of.get(entity).into_iter().flatten() {
                    if objects.contains(leaf_edge.node2.as_str()) {
                        continue;
                    }
                    out.push(PathSequence {
                        leaf: leaf_edge.node2.clone(),
                        leaf_edge: leaf_edge.edge.clone(),
                        entity: entity.to_string(),
                        event_edge: edge.edge.clone(),
                        event: event.to_string(),
                        class: class.to_string(),
                    });
                }
            }
        }
        out
    }

    /// One triple per line: `sn_node1 \t sn_edge \t sn_node2`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for t in &self.triples {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, NetError> {
        let mut net = SemanticNetwork::new();
        for (idx, raw) in text.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = raw.split('\t').collect();
            if cols.len() != 3 {
                return Err(NetError::Parse {
                    line: idx + 1,
                    msg: format!("expected 3 tab-separated columns, got {}", cols.len()),
                });
            }
            net.insert(Triple::new(cols[0], cols[1], cols[2]))
                .map_err(|e| NetError::Parse {
                    line: idx + 1,
                    msg: e.to_string(),
                })?;
        }
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_4_19_segment() -> SemanticNetwork {
        // one filing event, entities for plaintiff/defendant/court/date
        let mut net = SemanticNetwork::new();
        net.extend([
            Triple::new("1b1c0", "is", "filing"),
            Triple::new("bf99", "is", "company"),
            Triple::new("bf99", "org_name", "Microsoft"),
            Triple::new("1b1c0", "defendant", "bf99"),
            Triple::new("6360", "is", "company"),
            Triple::new("6360", "org_name", "AT&T"),
            Triple::new("1b1c0", "plaintiff", "6360"),
            Triple::new("a039", "is", "date"),
            Triple::new("a039", "year", "2002"),
            Triple::new("1b1c0", "occur_on", "a039"),
            Triple::new("b7", "is", "court"),
            Triple::new("b7", "org_name", "federal court"),
            Triple::new("b7", "court_type", "federal"),
            Triple::new("1b1c0", "occur_at", "b7"),
        ])
        .unwrap();
        net
    }

    #[test]
    fn insert_is_idempotent() {
        let mut net = SemanticNetwork::new();
        net.insert(Triple::new("e2", "org_name", "AT&T")).unwrap();
        net.insert(Triple::new("e2", "org_name", "AT&T")).unwrap();
        assert_eq!(net.len(), 1);
    }

    #[test]
    fn object_edges_accepted() {
        let mut net = SemanticNetwork::new();
        net.insert(Triple::new("e1", "is", "legal_proceeding")).unwrap();
        net.insert(Triple::new("e2", "is", "company")).unwrap();
        net.insert(Triple::new("e1", "plaintiff", "e2")).unwrap();
        assert_eq!(net.len(), 3);
    }

    #[test]
    fn edge_out_of_class_node_rejected() {
        let mut net = SemanticNetwork::new();
        net.insert(Triple::new("e2", "is", "company")).unwrap();
        let err = net.insert(Triple::new("company", "org_name", "AT&T"));
        assert!(matches!(err, Err(NetError::KindViolation(_))));
    }

    #[test]
    fn is_a_normalized_to_is() {
        let mut net = SemanticNetwork::new();
        net.insert(Triple::new("a2", "is_a", "company")).unwrap();
        assert_eq!(net.triples()[0].edge, "is");
    }

    #[test]
    fn conflicting_class_rejected() {
        let mut net = SemanticNetwork::new();
        net.insert(Triple::new("a", "is", "company")).unwrap();
        assert!(net.insert(Triple::new("a", "is", "court")).is_err());
    }

    #[test]
    fn paths_for_fig_4_19_segment() {
        let net = fig_4_19_segment();
        let paths: HashSet<String> =
            net.enumerate_paths().iter().map(|p| p.to_string()).collect();
        let expected: HashSet<String> = [
            "Microsoft, org_name, bf99, defendant, 1b1c0, is, filing",
            "AT&T, org_name, 6360, plaintiff, 1b1c0, is, filing",
            "2002, year, a039, occur_on, 1b1c0, is, filing",
            "federal court, org_name, b7, occur_at, 1b1c0, is, filing",
            "federal, court_type, b7, occur_at, 1b1c0, is, filing",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(paths, expected);
    }

    #[test]
    fn empty_network_has_no_paths() {
        assert!(SemanticNetwork::new().enumerate_paths().is_empty());
    }

    /// Naive oracle used to freeze the expected count: iterate every
    /// (event, entity attribute) pair and count the entity's leaves.
    fn brute_force_count(net: &SemanticNetwork) -> usize {
        let mut count = 0;
        for t in net.triples() {
            if t.edge == IS_EDGE {
                continue;
            }
            // candidate event edge: target must be an object
            if net.class_of(&t.node2).is_none() {
                continue;
            }
            if net.class_of(&t.node1).is_none() {
                continue;
            }
            for u in net.triples() {
                if u.node1 == t.node2 && u.edge != IS_EDGE && net.class_of(&u.node2).is_none() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn one_event_two_entities_five_leaves_gives_five_paths() {
        // entity x has 2 leaves, entity y has 3: 5 paths in total
        let mut net = SemanticNetwork::new();
        net.extend([
            Triple::new("ev", "is", "filing"),
            Triple::new("x", "is", "court"),
            Triple::new("x", "org_name", "federal court"),
            Triple::new("x", "court_type", "federal"),
            Triple::new("y", "is", "date"),
            Triple::new("y", "day_of_week", "Monday"),
            Triple::new("y", "month", "February"),
            Triple::new("y", "year", "2004"),
            Triple::new("ev", "occur_at", "x"),
            Triple::new("ev", "occur_on", "y"),
        ])
        .unwrap();
        let paths = net.enumerate_paths();
        assert_eq!(paths.len(), 5);
        assert_eq!(paths.len(), brute_force_count(&net));
    }

    #[test]
    fn serialize_parse_round_trip() {
        let net = fig_4_19_segment();
        let text = net.serialize();
        let back = SemanticNetwork::parse(&text).unwrap();
        assert_eq!(net, back);

        let empty = SemanticNetwork::new();
        assert_eq!(empty.serialize(), "");
        assert!(SemanticNetwork::parse("").unwrap().is_empty());
    }

    #[test]
    fn two_column_line_is_an_error() {
        let err = SemanticNetwork::parse("a\tis\tb\nbroken\tline\n").unwrap_err();
        match err {
            NetError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_4_9_seven_triples_round_trip() {
        let mut net = SemanticNetwork::new();
        net.extend([
            Triple::new("e1", "is", "legal_proceeding"),
            Triple::new("e1", "defendant", "e3"),
            Triple::new("e3", "is", "company"),
            Triple::new("e3", "org_name", "Microsoft"),
            Triple::new("e1", "plaintiff", "e2"),
            Triple::new("e2", "is", "company"),
            Triple::new("e2", "org_name", "AT&T"),
        ])
        .unwrap();
        assert_eq!(net.len(), 7);
        let text = net.serialize();
        assert_eq!(text.lines().count(), 7);
        assert_eq!(SemanticNetwork::parse(&text).unwrap(), net);
    }
}
