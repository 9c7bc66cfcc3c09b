//! The gazetteer: standalone names and trigger words with patterns,
//! aliases, role maps and capture-group attribute maps. It serves both
//! named-entity category assignment (two-pass matching) and discourse
//! integration (event triggering).

use regex::Regex;
use thiserror::Error;

use crate::xi::Ontology;

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: bad pattern `{pattern}`: {msg}")]
    Pattern { line: usize, pattern: String, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Specific,
    Generic,
    RelationNoun,
    RelationVerb,
    RelationPrep,
}

impl EntryKind {
    pub fn is_relation(self) -> bool {
        matches!(
            self,
            EntryKind::RelationNoun | EntryKind::RelationVerb | EntryKind::RelationPrep
        )
    }

    fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "specific" => Some(EntryKind::Specific),
            "generic" => Some(EntryKind::Generic),
            "relation-noun" | "relation->noun" => Some(EntryKind::RelationNoun),
            "relation-verb" | "relation->verb" => Some(EntryKind::RelationVerb),
            "relation-prep" | "relation->prep" => Some(EntryKind::RelationPrep),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            EntryKind::Specific => "specific",
            EntryKind::Generic => "generic",
            EntryKind::RelationNoun => "relation-noun",
            EntryKind::RelationVerb => "relation-verb",
            EntryKind::RelationPrep => "relation-prep",
        }
    }
}

/// A `{A|B}<RELATION>{C}` column: class alternatives for the two slots
/// of a relation pattern, or role alternatives for its map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlotPair {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl SlotPair {
    fn parse(s: &str) -> Option<Self> {
        let (left, right) = s.split_once("<RELATION>")?;
        Some(SlotPair {
            left: parse_slot(left),
            right: parse_slot(right),
        })
    }

    fn render(&self) -> String {
        format!(
            "{{{}}}<RELATION>{{{}}}",
            self.left.join("|"),
            self.right.join("|")
        )
    }
}

fn parse_slot(s: &str) -> Vec<String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(['|', ';'])
            .map(|c| c.trim().to_lowercase())
            .filter(|c| !c.is_empty())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GazetteerEntry {
    pub name: String,
    pub category: String,
    /// For specific/generic entries: a restricted regular expression
    /// containing `{TOKEN}` once, or None for "no pattern". For
    /// relation entries: the slot pattern (stored in `slots`).
    pub pattern: Option<String>,
    pub kind: EntryKind,
    pub alias: Option<String>,
    /// Relation entries: the class constraints of the two slots.
    pub slots: Option<SlotPair>,
    /// Relation entries: the event attributes the two slots map to.
    pub map: Option<SlotPair>,
    /// Specific/generic entries: attribute name per capture group, with
    /// `-` for groups that are not kept.
    pub group_map: Vec<Option<String>>,
}

impl GazetteerEntry {
    pub fn matches_name(&self, word: &str) -> bool {
        self.name == word || self.alias.as_deref() == Some(word)
    }
}

/// A successful second-pass match: the category plus the attribute
/// bindings captured by the instantiated pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatch {
    pub category: String,
    pub attributes: Vec<(String, String)>,
    pub entry_name: String,
}

/// Immutable after load; reads may run concurrently.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    entries: Vec<GazetteerEntry>,
    warnings: Vec<String>,
}

const COLUMNS: &str = "g_name\tg_category\tg_pattern\tg_type\tg_alias\tg_map\tg_group_map";

impl Gazetteer {
    /// Load the TSV: columns g_name, g_category, g_pattern, g_type,
    /// g_alias, g_map, g_group_map. A leading header row is accepted.
    pub fn load(text: &str) -> Result<Self, GazetteerError> {
        let mut gaz = Gazetteer::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') || line.starts_with("g_name\t") {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 4 {
                return Err(GazetteerError::Parse {
                    line: idx + 1,
                    msg: format!("expected at least 4 tab-separated columns, got {}", cols.len()),
                });
            }
            let kind = EntryKind::parse(cols[3]).ok_or_else(|| GazetteerError::Parse {
                line: idx + 1,
                msg: format!("unknown g_type `{}`", cols[3]),
            })?;
            let raw_pattern = cols[2].trim();
            let alias = cols
                .get(4)
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(String::from);
            let map_col = cols.get(5).map(|s| s.trim()).unwrap_or("");
            let group_col = cols.get(6).map(|s| s.trim()).unwrap_or("");

            let (pattern, slots, map) = if kind.is_relation() {
                let slots = if raw_pattern.is_empty() || raw_pattern == "no pattern" {
                    None
                } else {
                    Some(SlotPair::parse(raw_pattern).ok_or_else(|| GazetteerError::Parse {
                        line: idx + 1,
                        msg: format!("bad slot pattern `{raw_pattern}`"),
                    })?)
                };
                let map = if map_col.is_empty() || map_col == "no map" {
                    None
                } else {
                    if map_col.contains("&&") {
                        gaz.warnings.push(format!(
                            "line {}: `&&` in map `{map_col}` is not supported; both roles read as alternatives",
                            idx + 1
                        ));
                    }
                    let cleaned = map_col.replace("&&", "|");
                    Some(SlotPair::parse(&cleaned).ok_or_else(|| GazetteerError::Parse {
                        line: idx + 1,
                        msg: format!("bad map `{map_col}`"),
                    })?)
                };
                (None, slots, map)
            } else {
                let pattern = if raw_pattern.is_empty() || raw_pattern == "no pattern" {
                    None
                } else {
                    if !raw_pattern.contains("{TOKEN}") {
                        return Err(GazetteerError::Parse {
                            line: idx + 1,
                            msg: format!("pattern `{raw_pattern}` lacks the {{TOKEN}} placeholder"),
                        });
                    }
                    // validate the dialect compiles
                    compile_pattern(raw_pattern, "x").map_err(|msg| GazetteerError::Pattern {
                        line: idx + 1,
                        pattern: raw_pattern.to_string(),
                        msg,
                    })?;
                    Some(raw_pattern.to_string())
                };
                (pattern, None, None)
            };

            let group_map = if group_col.is_empty() {
                Vec::new()
            } else {
                group_col
                    .split(',')
                    .map(|s| {
                        let s = s.trim();
                        if s.is_empty() || s == "-" {
                            None
                        } else {
                            Some(s.to_string())
                        }
                    })
                    .collect()
            };

            gaz.entries.push(GazetteerEntry {
                name: cols[0].trim().to_string(),
                category: cols[1].trim().to_lowercase(),
                pattern,
                kind,
                alias,
                slots,
                map,
                group_map,
            });
        }
        Ok(gaz)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from(COLUMNS);
        out.push('\n');
        for e in &self.entries {
            let pattern = match (&e.pattern, &e.slots) {
                (Some(p), _) => p.clone(),
                (None, Some(s)) => s.render(),
                (None, None) => "no pattern".to_string(),
            };
            let map = e.map.as_ref().map(|m| m.render()).unwrap_or_default();
            let group = e
                .group_map
                .iter()
                .map(|g| g.as_deref().unwrap_or("-").to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                e.name,
                e.category,
                pattern,
                e.kind.as_str(),
                e.alias.as_deref().unwrap_or(""),
                map,
                group
            ));
        }
        out
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn entries(&self) -> &[GazetteerEntry] {
        &self.entries
    }

    /// Names usable by the tokenizer: multi-word proper names plus
    /// title nouns (person-category trigger words).
    pub fn multiword_names(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| !e.kind.is_relation())
            .flat_map(|e| [Some(e.name.clone()), e.alias.clone()])
            .flatten()
            .filter(|n| n.contains(' '))
            .collect()
    }

    pub fn title_nouns(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| {
                !e.kind.is_relation() && matches!(e.category.as_str(), "person" | "judge")
            })
            .flat_map(|e| [Some(e.name.clone()), e.alias.clone()])
            .flatten()
            .filter(|n| !n.contains(' '))
            .collect()
    }

    /// Every word known to the gazetteer, for the unknown-token check.
    pub fn known_words(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .flat_map(|e| [Some(e.name.as_str()), e.alias.as_deref()])
            .flatten()
    }

    /// First pass: case-sensitive equality against names and aliases of
    /// specific entries only.
    pub fn direct_match(&self, phrase: &str) -> Option<(&str, &GazetteerEntry)> {
        self.entries
            .iter()
            .filter(|e| e.kind == EntryKind::Specific)
            .find(|e| e.matches_name(phrase))
            .map(|e| (e.category.as_str(), e))
    }

    /// Second pass: tokenize the phrase, try the head token first, and
    /// for every entry whose name or alias equals a token, instantiate
    /// `{TOKEN}` with the matched part and match the whole phrase
    /// against the instantiated pattern.
    pub fn second_pass_match(&self, phrase: &str, head: &str) -> Option<PatternMatch> {
        let mut order: Vec<&str> = Vec::new();
        if !head.is_empty() {
            order.push(head);
        }
        for tok in phrase.split_whitespace() {
            if !order.contains(&tok) {
                order.push(tok);
            }
        }
        for token in order {
            for entry in self
                .entries
                .iter()
                .filter(|e| matches!(e.kind, EntryKind::Specific | EntryKind::Generic))
            {
                if !entry.matches_name(token) {
                    continue;
                }
                let Some(pattern) = &entry.pattern else { continue };
                let Ok(re) = compile_pattern(pattern, token) else { continue };
                let Some(caps) = re.captures(phrase) else { continue };
                let mut attributes = Vec::new();
                for (i, slot) in entry.group_map.iter().enumerate() {
                    let Some(attr) = slot else { continue };
                    if let Some(m) = caps.get(i + 1) {
                        let value = m.as_str().trim();
                        if !value.is_empty() {
                            attributes.push((attr.clone(), value.to_string()));
                        }
                    }
                }
                return Some(PatternMatch {
                    category: entry.category.clone(),
                    attributes,
                    entry_name: entry.name.clone(),
                });
            }
        }
        None
    }

    /// Exact-match lookup among relation entries; the longest multi-word
    /// trigger wins, so "file against" is consulted before "file".
    pub fn relation_trigger(&self, word: &str) -> Option<&GazetteerEntry> {
        let mut probe = word.trim();
        loop {
            let hit = self
                .entries
                .iter()
                .filter(|e| e.kind.is_relation())
                .find(|e| e.matches_name(probe));
            if hit.is_some() {
                return hit;
            }
            match probe.rsplit_once(' ') {
                Some((shorter, _)) => probe = shorter,
                None => return None,
            }
        }
    }

    /// Exact relation lookup without the prefix fallback.
    pub fn relation_trigger_exact(&self, word: &str) -> Option<&GazetteerEntry> {
        self.entries
            .iter()
            .filter(|e| e.kind.is_relation())
            .find(|e| e.matches_name(word))
    }

    /// Contingency lookup: a relation entry of the event category (or,
    /// failing that, an ancestor event class) whose pattern mentions the
    /// entity category. Returns the entry together with the event
    /// attribute its matching slot maps to.
    pub fn contingency_trigger(
        &self,
        event_cat: &str,
        entity_cat: &str,
        onto: &Ontology,
    ) -> Option<(&GazetteerEntry, String)> {
        let chain: Vec<String> = if onto.is_class(event_cat) {
            onto.ancestors(event_cat)
        } else {
            vec![event_cat.to_string()]
        };
        for class in &chain {
            for entry in self.entries.iter().filter(|e| e.kind.is_relation()) {
                if &entry.category != class {
                    continue;
                }
                let (Some(slots), Some(map)) = (&entry.slots, &entry.map) else { continue };
                for (side_classes, side_roles) in
                    [(&slots.left, &map.left), (&slots.right, &map.right)]
                {
                    let mentions = side_classes.iter().any(|c| {
                        c == entity_cat
                            || (onto.is_class(c)
                                && onto.is_class(entity_cat)
                                && onto.subclass_of(entity_cat, c).unwrap_or(false))
                    });
                    if !mentions {
                        continue;
                    }
                    if let Some(role) = role_for(side_classes, side_roles, entity_cat, onto) {
                        return Some((entry, role));
                    }
                }
            }
        }
        None
    }
}

/// Pick the map role for a slot: positional when the map lists one role
/// per pattern alternative, otherwise the single role covers the slot.
pub fn role_for(
    slot_classes: &[String],
    roles: &[String],
    category: &str,
    onto: &Ontology,
) -> Option<String> {
    if roles.is_empty() {
        return None;
    }
    if roles.len() == 1 {
        return Some(roles[0].clone());
    }
    if roles.len() == slot_classes.len() {
        for (i, class) in slot_classes.iter().enumerate() {
            let fits = class == category
                || (onto.is_class(class)
                    && onto.is_class(category)
                    && onto.subclass_of(category, class).unwrap_or(false));
            if fits {
                return Some(roles[i].clone());
            }
        }
        return None;
    }
    Some(roles[0].clone())
}

/// Does `category` satisfy one of the slot's class alternatives
/// (subclasses admitted)? An empty slot accepts anything.
pub fn slot_admits(slot_classes: &[String], category: &str, onto: &Ontology) -> bool {
    if slot_classes.is_empty() {
        return true;
    }
    slot_classes.iter().any(|c| {
        c == category
            || (onto.is_class(c)
                && onto.is_class(category)
                && onto.subclass_of(category, c).unwrap_or(false))
    })
}

/// Instantiate `{TOKEN}` with the matched part and compile, anchored to
/// the full phrase. The dialect is the restricted set the patterns use:
/// literals, escapes, character classes, alternation, optional groups,
/// repetition and capture groups.
fn compile_pattern(pattern: &str, token: &str) -> Result<Regex, String> {
    let instantiated = pattern.replace("{TOKEN}", &regex::escape(token));
    Regex::new(&format!("^{instantiated}$")).map_err(|e| e.to_string())
}
