//! Four-stage discourse integration: instantiate entity objects,
//! trigger events from verbs, prepositions and nouns, resolve
//! pronominal anaphora against the offset-ordered entity table, then
//! instantiate event objects and fill their attributes through the
//! trigger maps. The output is a set of semantic-network triples.

use std::collections::HashSet;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dep::DepGraph;
use crate::gazetteer::{role_for, slot_admits, EntryKind, Gazetteer, SlotPair};
use crate::nlu::{self, NamedEntity, NounPhrase, Participant, Relation, RelationKind};
use crate::semnet::Triple;
use crate::xi::{Ontology, ValueConstraint, XiError};

const ANAPHOR_WORDS: &[&str] = &[
    "it", "he", "she", "they", "its", "his", "her", "their", "who",
];

#[derive(Debug, Error)]
pub enum DiscourseError {
    #[error("attribute `{attr}` is not in the schema of class `{class}`")]
    SchemaViolation { attr: String, class: String },
    #[error("map role `{role}` is not an attribute of event class `{class}`")]
    RoleNotInSchema { role: String, class: String },
    #[error("unresolved anaphor `{word}` at {sentence}.{offset}")]
    UnresolvedAnaphor {
        word: String,
        sentence: usize,
        offset: usize,
    },
    #[error(transparent)]
    Xi(#[from] XiError),
}

/// Per-sentence analysis bundle.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub nps: Vec<NounPhrase>,
    pub nes: Vec<NamedEntity>,
    pub relations: Vec<Relation>,
}

pub fn analyze_sentence(g: &DepGraph, gaz: &Gazetteer) -> Analysis {
    let nps = nlu::chunk(g);
    let nes = nlu::assign_categories(&nps, g, gaz);
    let relations = nlu::infer_relations(g, &nps);
    Analysis { nps, nes, relations }
}

/// Deterministic content-derived object identifiers.
pub struct IdGen {
    salt: String,
    used: HashSet<String>,
}

impl IdGen {
    pub fn new(salt: impl Into<String>) -> Self {
        IdGen {
            salt: salt.into(),
            used: HashSet::new(),
        }
    }

    pub fn id_for(&mut self, parts: &[&str]) -> String {
        let mut n = 0u32;
        loop {
            let mut hasher = Sha256::new();
            hasher.update(self.salt.as_bytes());
            for p in parts {
                hasher.update([0]);
                hasher.update(p.as_bytes());
            }
            hasher.update(n.to_le_bytes());
            let digest = hasher.finalize();
            let id: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
            if self.used.insert(id.clone()) {
                return id;
            }
            n += 1;
        }
    }
}

/// The offset-ordered table of named entities of one discourse.
#[derive(Debug, Default)]
pub struct EntityTable {
    entries: Vec<TableEntry>,
}

#[derive(Debug)]
struct TableEntry {
    ne: NamedEntity,
    object: Option<String>,
}

impl EntityTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ne(&self, idx: usize) -> &NamedEntity {
        &self.entries[idx].ne
    }

    pub fn index_of(&self, offset: (usize, usize)) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| e.ne.discourse_offset == offset)
    }

    /// The nearest prior entity whose category satisfies the slot's
    /// class constraint; candidates failing the constraint are skipped,
    /// as are other pronouns and wh placeholders.
    pub fn resolve_anaphor(
        &self,
        anaphor: &NamedEntity,
        slot_classes: &[String],
        onto: &Ontology,
    ) -> Result<usize, DiscourseError> {
        let mut best: Option<usize> = None;
        for (i, entry) in self.entries.iter().enumerate() {
            let ne = &entry.ne;
            if ne.discourse_offset >= anaphor.discourse_offset {
                continue;
            }
            if ne.pronoun || ne.wh_word.is_some() {
                continue;
            }
            if !slot_admits(slot_classes, &ne.category, onto) {
                continue;
            }
            match best {
                Some(b) if self.entries[b].ne.discourse_offset >= ne.discourse_offset => {}
                _ => best = Some(i),
            }
        }
        best.ok_or_else(|| DiscourseError::UnresolvedAnaphor {
            word: anaphor.phrase.clone(),
            sentence: anaphor.discourse_offset.0,
            offset: anaphor.discourse_offset.1,
        })
    }
}

/// One entity object with its class and attribute triples.
pub fn instantiate_entity(
    ne: &NamedEntity,
    onto: &Ontology,
    ids: &mut IdGen,
) -> Result<(String, Vec<Triple>), DiscourseError> {
    let schema = onto.attribute_schema(&ne.category)?;
    for (attr, _) in &ne.attributes {
        if !schema.iter().any(|s| &s.attr == attr) {
            return Err(DiscourseError::SchemaViolation {
                attr: attr.clone(),
                class: ne.category.clone(),
            });
        }
    }
    let attr_sig: Vec<String> = ne
        .attributes
        .iter()
        .map(|(a, v)| format!("{a}={v}"))
        .collect();
    let id = ids.id_for(&[
        "entity",
        &ne.category,
        &format!("{}.{}", ne.discourse_offset.0, ne.discourse_offset.1),
        &attr_sig.join(";"),
    ]);
    let mut triples = vec![Triple::new(id.clone(), "is", ne.category.clone())];
    for (attr, value) in &ne.attributes {
        triples.push(Triple::new(id.clone(), attr.clone(), value.clone()));
    }
    Ok((id, triples))
}

/// Instantiate every categorized entity: one `is` triple plus one
/// triple per attribute.
pub fn instantiate_entities(
    nes: &[NamedEntity],
    onto: &Ontology,
    ids: &mut IdGen,
) -> Result<Vec<Triple>, DiscourseError> {
    let mut out = Vec::new();
    for ne in nes {
        let (_, triples) = instantiate_entity(ne, onto, ids)?;
        out.extend(triples);
    }
    Ok(out)
}

/// What occupies a trigger slot: a table entity (by discourse offset),
/// an event-reference noun (passes class checks, never fills a role),
/// or a marker placeholder in query mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotFiller {
    Entity((usize, usize)),
    EventNoun(String),
    Marker(String),
}

#[derive(Debug, Clone)]
pub struct EventTrigger {
    pub entry_name: String,
    pub class: String,
    pub slots: Option<SlotPair>,
    pub map: Option<SlotPair>,
    pub left: Option<SlotFiller>,
    pub right: Option<SlotFiller>,
    /// discourse position of the trigger word, for stable event ids
    pub position: (usize, usize),
}

/// Marker placement in a query network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marker {
    pub event: String,
    pub attr: String,
    pub object: String,
}

#[derive(Debug, Default)]
pub struct IntegrationOutput {
    pub triples: Vec<Triple>,
    pub marker: Option<Marker>,
    pub warnings: Vec<String>,
    pub entity_count: usize,
    pub event_count: usize,
    /// (event object id, event class) in creation order
    pub events: Vec<(String, String)>,
}

pub struct Integrator<'a> {
    pub gaz: &'a Gazetteer,
    pub onto: &'a Ontology,
    pub query_mode: bool,
    /// wh entity class for the contingency marker step (query mode)
    pub wh_class: Option<String>,
    /// discourse offsets of noun phrases that stand for the queried
    /// slot (imperative objects), beyond wh words
    pub marker_offsets: Vec<(usize, usize)>,
}

impl<'a> Integrator<'a> {
    pub fn new(gaz: &'a Gazetteer, onto: &'a Ontology) -> Self {
        Integrator {
            gaz,
            onto,
            query_mode: false,
            wh_class: None,
            marker_offsets: Vec::new(),
        }
    }

    /// Run the four stages over the sentences of one discourse.
    pub fn integrate(
        &self,
        graphs: &[DepGraph],
        salt: &str,
    ) -> Result<IntegrationOutput, DiscourseError> {
        let analyses: Vec<Analysis> = graphs
            .iter()
            .map(|g| analyze_sentence(g, self.gaz))
            .collect();
        self.integrate_analyses(graphs, &analyses, salt)
    }

    pub fn integrate_analyses(
        &self,
        graphs: &[DepGraph],
        analyses: &[Analysis],
        salt: &str,
    ) -> Result<IntegrationOutput, DiscourseError> {
        let mut ids = IdGen::new(salt);
        let mut out = IntegrationOutput::default();

        // event-reference nouns: chunks whose head word triggers an
        // event class; a generic event noun (category legal_proceeding)
        // only when the chunk carries no content modifiers
        let mut event_nouns: Vec<EventNoun> = Vec::new();
        for (s, a) in analyses.iter().enumerate() {
            for (n, np) in a.nps.iter().enumerate() {
                let head = &np.head().word;
                let entry = self
                    .gaz
                    .relation_trigger_exact(head)
                    .or_else(|| self.gaz.relation_trigger_exact(&head.to_lowercase()));
                if let Some(e) = entry {
                    if e.kind == EntryKind::RelationNoun
                        && (e.category != "legal_proceeding" || !np.has_content_modifiers())
                    {
                        event_nouns.push(EventNoun {
                            sentence: s,
                            np_index: n,
                            class: e.category.clone(),
                            entry_name: e.name.clone(),
                            position: (s, np.first_offset()),
                        });
                    }
                }
            }
        }
        let event_noun_at = |s: usize, n: usize| -> Option<&EventNoun> {
            event_nouns
                .iter()
                .find(|en| en.sentence == s && en.np_index == n)
        };

        // the entity table: all named entities in document order except
        // event-reference nouns and interrogative adverbs
        let mut table = EntityTable::default();
        for (s, a) in analyses.iter().enumerate() {
            for ne in &a.nes {
                if event_noun_at(s, ne.np_index).is_some() {
                    continue;
                }
                if ne.wh_word.is_some() && !ne.pronoun && !self.query_mode {
                    continue;
                }
                table.entries.push(TableEntry {
                    ne: ne.clone(),
                    object: None,
                });
            }
        }
        table.entries.sort_by_key(|e| e.ne.discourse_offset);

        // stage 1: instantiate categorized entities in document order
        for i in 0..table.entries.len() {
            let ne = table.entries[i].ne.clone();
            if ne.is_variable() || ne.pronoun || ne.wh_word.is_some() {
                continue;
            }
            let (id, triples) = instantiate_entity(&ne, self.onto, &mut ids)?;
            table.entries[i].object = Some(id);
            out.triples.extend(triples);
            out.entity_count += 1;
        }

        // stage 2: collect event triggers from nouns and relations
        let mut triggers: Vec<EventTrigger> = Vec::new();
        for en in &event_nouns {
            let entry = self.gaz.relation_trigger_exact(&en.entry_name).unwrap();
            triggers.push(EventTrigger {
                entry_name: en.entry_name.clone(),
                class: en.class.clone(),
                slots: entry.slots.clone(),
                map: entry.map.clone(),
                left: None,
                right: None,
                position: en.position,
            });
        }
        for (s, a) in analyses.iter().enumerate() {
            let g = &graphs[s];
            for rel in &a.relations {
                match rel.kind {
                    RelationKind::Svo => {
                        let verb_offset = rel.link_offset.unwrap_or(0);
                        let preps = nlu::verb_preps(g, verb_offset);
                        let fused: Vec<(String, Option<usize>)> = preps
                            .iter()
                            .filter_map(|(p, _, obj)| {
                                let name = format!("{} {}", rel.link_word, p);
                                self.gaz
                                    .relation_trigger_exact(&name)
                                    .map(|e| (e.name.clone(), *obj))
                            })
                            .collect();
                        if fused.is_empty() {
                            if let Some(entry) = self.gaz.relation_trigger_exact(&rel.link_word) {
                                if entry.kind == EntryKind::RelationVerb {
                                    triggers.push(self.trigger_from(
                                        &entry.name.clone(),
                                        s,
                                        (s, verb_offset),
                                        rel.governor.as_ref(),
                                        rel.dependent.as_ref(),
                                        analyses,
                                        &event_nouns,
                                    ));
                                }
                            }
                        } else {
                            for (entry_name, obj) in fused {
                                let dep = obj.and_then(|o| {
                                    analyses[s]
                                        .nps
                                        .iter()
                                        .position(|np| np.head_offset == o)
                                        .map(Participant::Np)
                                });
                                triggers.push(self.trigger_from(
                                    &entry_name,
                                    s,
                                    (s, verb_offset),
                                    rel.governor.as_ref(),
                                    dep.as_ref(),
                                    analyses,
                                    &event_nouns,
                                ));
                            }
                        }
                    }
                    RelationKind::Prepositional => {
                        // skip prepositions consumed by verb fusion
                        if let Some(Participant::Verb { lemma, .. }) = &rel.governor {
                            let name = format!("{lemma} {}", rel.link_word);
                            if self.gaz.relation_trigger_exact(&name).is_some() {
                                continue;
                            }
                        }
                        if let Some(entry) = self.gaz.relation_trigger_exact(&rel.link_word) {
                            if entry.kind == EntryKind::RelationPrep {
                                triggers.push(self.trigger_from(
                                    &entry.name.clone(),
                                    s,
                                    (s, rel.link_offset.unwrap_or(0)),
                                    rel.governor.as_ref(),
                                    rel.dependent.as_ref(),
                                    analyses,
                                    &event_nouns,
                                ));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        triggers.sort_by_key(|t| t.position);
        triggers.dedup_by(|a, b| {
            a.entry_name == b.entry_name
                && a.position == b.position
                && a.left == b.left
                && a.right == b.right
        });

        // stage 3: resolve pronominal slot fillers to their antecedents
        for trig in triggers.iter_mut() {
            for side in [0usize, 1] {
                let filler = if side == 0 { trig.left.clone() } else { trig.right.clone() };
                if let Some(SlotFiller::Entity(offset)) = filler {
                    let Some(idx) = table.index_of(offset) else { continue };
                    let ne = table.ne(idx).clone();
                    if ne.pronoun && is_anaphor_word(&ne.phrase) {
                        let classes = self.effective_slot_classes(trig, side);
                        let antecedent = table.resolve_anaphor(&ne, &classes, self.onto)?;
                        let new = SlotFiller::Entity(table.ne(antecedent).discourse_offset);
                        if side == 0 {
                            trig.left = Some(new);
                        } else {
                            trig.right = Some(new);
                        }
                    }
                }
            }
        }

        // stage 4: merge comparable trigger classes into one event per
        // family, most specific class winning, then fill attributes
        struct Family {
            class: String,
            members: Vec<EventTrigger>,
            position: (usize, usize),
        }
        let mut families: Vec<Family> = Vec::new();
        for trig in triggers {
            let mut joined = false;
            for fam in families.iter_mut() {
                if !self.onto.is_class(&trig.class) || !self.onto.is_class(&fam.class) {
                    continue;
                }
                let up = self.onto.subclass_of(&trig.class, &fam.class).unwrap_or(false);
                let down = self.onto.subclass_of(&fam.class, &trig.class).unwrap_or(false);
                if up || down {
                    if up {
                        fam.class = trig.class.clone();
                    }
                    fam.members.push(trig.clone());
                    joined = true;
                    break;
                }
            }
            if !joined {
                families.push(Family {
                    class: trig.class.clone(),
                    position: trig.position,
                    members: vec![trig],
                });
            }
        }

        for fam in &families {
            let event_id = ids.id_for(&[
                "event",
                &fam.class,
                &format!("{}.{}", fam.position.0, fam.position.1),
            ]);
            out.triples
                .push(Triple::new(event_id.clone(), "is", fam.class.clone()));
            out.events.push((event_id.clone(), fam.class.clone()));
            out.event_count += 1;
            let schema = self.onto.attribute_schema(&fam.class)?;

            let mut filled: Vec<(String, String)> = Vec::new();
            for trig in &fam.members {
                let (Some(slots), Some(map)) = (&trig.slots, &trig.map) else { continue };
                for (side, filler) in [(0usize, &trig.left), (1usize, &trig.right)] {
                    let Some(filler) = filler else { continue };
                    let (slot_classes, roles) = if side == 0 {
                        (&slots.left, &map.left)
                    } else {
                        (&slots.right, &map.right)
                    };
                    if roles.is_empty() {
                        continue;
                    }
                    match filler {
                        SlotFiller::EventNoun(_) => {}
                        SlotFiller::Entity(offset) => {
                            let Some(idx) = table.index_of(*offset) else { continue };
                            let category = table.ne(idx).category.clone();
                            if !slot_admits(slot_classes, &category, self.onto) {
                                continue;
                            }
                            let Some(role) =
                                role_for(slot_classes, roles, &category, self.onto)
                            else {
                                continue;
                            };
                            if !schema.iter().any(|sc| sc.attr == role) {
                                return Err(DiscourseError::RoleNotInSchema {
                                    role,
                                    class: fam.class.clone(),
                                });
                            }
                            if table.entries[idx].object.is_none() {
                                let ne = table.ne(idx).clone();
                                let (id, triples) =
                                    instantiate_entity(&ne, self.onto, &mut ids)?;
                                table.entries[idx].object = Some(id);
                                out.triples.extend(triples);
                                out.entity_count += 1;
                            }
                            let entity_id = table.entries[idx].object.clone().unwrap();
                            if let Some((_, existing)) = filled.iter().find(|(r, _)| r == &role) {
                                if existing != &entity_id {
                                    out.warnings.push(format!(
                                        "event {event_id}: role {role} already filled; keeping the first value"
                                    ));
                                }
                                continue;
                            }
                            filled.push((role.clone(), entity_id.clone()));
                            out.triples
                                .push(Triple::new(event_id.clone(), role, entity_id));
                        }
                        SlotFiller::Marker(wh) => {
                            if !self.query_mode || out.marker.is_some() {
                                continue;
                            }
                            let Some(role) = roles.first().cloned() else { continue };
                            if !schema.iter().any(|sc| sc.attr == role) {
                                continue;
                            }
                            let class = slot_classes
                                .first()
                                .filter(|c| self.onto.is_class(c))
                                .cloned()
                                .unwrap_or_else(|| "variable".to_string());
                            let obj = ids.id_for(&["marker", wh]);
                            out.triples.push(Triple::new(obj.clone(), "is", class));
                            out.triples.push(Triple::new(obj.clone(), "desc", "X"));
                            out.triples.push(Triple::new(
                                event_id.clone(),
                                role.clone(),
                                obj.clone(),
                            ));
                            out.marker = Some(Marker {
                                event: event_id.clone(),
                                attr: role,
                                object: obj,
                            });
                        }
                    }
                }
            }
        }

        // contingency marker placement: no slot carried the wh word, so
        // search the gazetteer for a trigger of the event category whose
        // pattern mentions the wh entity category
        if self.query_mode && out.marker.is_none() {
            if let Some(wh_class) = &self.wh_class {
                for (event_id, class) in out.events.clone() {
                    if let Some((_, role)) =
                        self.gaz.contingency_trigger(&class, wh_class, self.onto)
                    {
                        let schema = self.onto.attribute_schema(&class)?;
                        if !schema.iter().any(|sc| sc.attr == role) {
                            continue;
                        }
                        let obj = ids.id_for(&["marker", wh_class]);
                        out.triples
                            .push(Triple::new(obj.clone(), "is", wh_class.clone()));
                        out.triples.push(Triple::new(obj.clone(), "desc", "X"));
                        out.triples
                            .push(Triple::new(event_id.clone(), role.clone(), obj.clone()));
                        out.marker = Some(Marker {
                            event: event_id,
                            attr: role,
                            object: obj,
                        });
                        break;
                    }
                }
            }
        }

        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn trigger_from(
        &self,
        entry_name: &str,
        sentence: usize,
        position: (usize, usize),
        governor: Option<&Participant>,
        dependent: Option<&Participant>,
        analyses: &[Analysis],
        event_nouns: &[EventNoun],
    ) -> EventTrigger {
        let entry = self.gaz.relation_trigger_exact(entry_name).unwrap();
        let to_filler = |p: Option<&Participant>| -> Option<SlotFiller> {
            match p {
                Some(Participant::Np(n)) => {
                    if let Some(en) = event_nouns
                        .iter()
                        .find(|en| en.sentence == sentence && en.np_index == *n)
                    {
                        return Some(SlotFiller::EventNoun(en.class.clone()));
                    }
                    let ne = analyses[sentence].nes.iter().find(|ne| ne.np_index == *n)?;
                    if self.query_mode {
                        // wh words in questions mark the answer slot and
                        // never resolve backwards
                        let wh_marker = ne.wh_word.is_some();
                        let imperative_marker =
                            self.marker_offsets.contains(&ne.discourse_offset);
                        if wh_marker || imperative_marker {
                            return Some(SlotFiller::Marker(
                                ne.wh_word.clone().unwrap_or_else(|| ne.phrase.clone()),
                            ));
                        }
                    }
                    Some(SlotFiller::Entity(ne.discourse_offset))
                }
                Some(Participant::Verb { .. }) | None => None,
            }
        };
        EventTrigger {
            entry_name: entry.name.clone(),
            class: entry.category.clone(),
            slots: entry.slots.clone(),
            map: entry.map.clone(),
            left: to_filler(governor),
            right: to_filler(dependent),
            position,
        }
    }

    fn effective_slot_classes(&self, trig: &EventTrigger, side: usize) -> Vec<String> {
        if let Some(slots) = &trig.slots {
            let classes = if side == 0 { &slots.left } else { &slots.right };
            if !classes.is_empty() {
                return classes.clone();
            }
        }
        // fall back to the schema constraint of the mapped attribute
        if let Some(map) = &trig.map {
            let roles = if side == 0 { &map.left } else { &map.right };
            if let Some(role) = roles.first() {
                if let Ok(schema) = self.onto.attribute_schema(&trig.class) {
                    if let Some(s) = schema.iter().find(|s| &s.attr == role) {
                        if let ValueConstraint::Classes(cs) = &s.constraint {
                            return cs.clone();
                        }
                    }
                }
            }
        }
        Vec::new()
    }
}

#[derive(Debug)]
struct EventNoun {
    sentence: usize,
    np_index: usize,
    class: String,
    entry_name: String,
    position: (usize, usize),
}

fn is_anaphor_word(word: &str) -> bool {
    ANAPHOR_WORDS.contains(&word.to_lowercase().as_str())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dep::{mini_parse, Lexicon};
    use crate::kb;
    use crate::semnet::SemanticNetwork;

    fn fixtures() -> (Gazetteer, Ontology, Lexicon) {
        let gaz = Gazetteer::load(kb::SHIPPED_GAZETTEER).unwrap();
        let onto = Ontology::load(kb::SHIPPED_ONTOLOGY).unwrap();
        let lex = Lexicon {
            multiword_names: gaz.multiword_names(),
            title_nouns: gaz.title_nouns(),
        };
        (gaz, onto, lex)
    }

    #[test]
    fn entity_instantiation_shapes() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse("AT&T sued Microsoft", &lex).unwrap();
        let a = analyze_sentence(&g, &gaz);
        let mut ids = IdGen::new("t");
        let triples = instantiate_entities(&a.nes, &onto, &mut ids).unwrap();
        // two entities, is + org_name each
        assert_eq!(triples.len(), 4);
        assert!(triples.iter().any(|t| t.edge == "org_name" && t.node2 == "AT&T"));
    }

    #[test]
    fn foreign_attribute_is_schema_violation() {
        let (_, onto, _) = fixtures();
        let ne = NamedEntity {
            category: "company".into(),
            attributes: vec![("court_type".into(), "federal".into())],
            discourse_offset: (0, 1),
            phrase: "x".into(),
            np_index: 0,
            wh_word: None,
            pronoun: false,
        };
        let mut ids = IdGen::new("t");
        assert!(matches!(
            instantiate_entity(&ne, &onto, &mut ids),
            Err(DiscourseError::SchemaViolation { .. })
        ));
    }

    #[test]
    fn table_4_9_triples_from_simple_sentence() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse("AT&T file against Microsoft", &lex).unwrap();
        let integrator = Integrator::new(&gaz, &onto);
        let out = integrator.integrate(&[g], "t").unwrap();
        assert_eq!(out.triples.len(), 7, "{:#?}", out.triples);
        let mut net = SemanticNetwork::new();
        net.extend(out.triples.clone()).unwrap();
        // one legal_proceeding event with plaintiff AT&T, defendant Microsoft
        let event = out.events[0].0.clone();
        assert_eq!(out.events[0].1, "legal_proceeding");
        let plaintiff = net
            .triples()
            .iter()
            .find(|t| t.node1 == event && t.edge == "plaintiff")
            .expect("plaintiff filled");
        assert!(net
            .triples()
            .iter()
            .any(|t| t.node1 == plaintiff.node2 && t.edge == "org_name" && t.node2 == "AT&T"));
        let defendant = net
            .triples()
            .iter()
            .find(|t| t.node1 == event && t.edge == "defendant")
            .expect("defendant filled");
        assert!(net.triples().iter().any(
            |t| t.node1 == defendant.node2 && t.edge == "org_name" && t.node2 == "Microsoft"
        ));
    }

    #[test]
    fn anaphor_resolves_to_nearest_admissible() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse(
            "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft",
            &lex,
        )
        .unwrap();
        let a = analyze_sentence(&g, &gaz);
        let mut table = EntityTable::default();
        for ne in &a.nes {
            table.entries.push(TableEntry { ne: ne.clone(), object: None });
        }
        let anaphor = a.nes.iter().find(|ne| ne.pronoun).unwrap();
        let idx = table
            .resolve_anaphor(
                anaphor,
                &["person".to_string(), "organization".to_string()],
                &onto,
            )
            .unwrap();
        // skips the variable lawsuit chunk, lands on AT&T, never reaches
        // the more distant court
        assert_eq!(table.ne(idx).attributes[0].1, "AT&T");
    }

    #[test]
    fn first_token_anaphor_is_unresolved() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse("It sued Microsoft", &lex).unwrap();
        let integrator = Integrator::new(&gaz, &onto);
        let err = integrator.integrate(&[g], "t").unwrap_err();
        assert!(matches!(err, DiscourseError::UnresolvedAnaphor { .. }));
    }

    #[test]
    fn nearer_of_two_companies_wins() {
        let (gaz, onto, lex) = fixtures();
        // two companies precede the pronoun; the later one is nearer
        let g1 = mini_parse("Excite sued Vonage", &lex).unwrap();
        let mut g2 = mini_parse("it filed against Microsoft", &lex).unwrap();
        g2.sentence_index = 1;
        let a1 = analyze_sentence(&g1, &gaz);
        let a2 = analyze_sentence(&g2, &gaz);
        let mut table = EntityTable::default();
        for ne in a1.nes.iter().chain(a2.nes.iter()) {
            table.entries.push(TableEntry { ne: ne.clone(), object: None });
        }
        let anaphor = a2.nes.iter().find(|ne| ne.pronoun).unwrap();
        let idx = table
            .resolve_anaphor(anaphor, &["organization".to_string()], &onto)
            .unwrap();
        assert_eq!(table.ne(idx).attributes[0].1, "Vonage");
    }

    #[test]
    fn golden_discourse_integration() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse(
            "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft.",
            &lex,
        )
        .unwrap();
        let integrator = Integrator::new(&gaz, &onto);
        let out = integrator.integrate(&[g], "t").unwrap();
        let mut net = SemanticNetwork::new();
        net.extend(out.triples.clone()).unwrap();

        // exactly one event, class resolution after the merge
        assert_eq!(out.events.len(), 1, "{:#?}", out.triples);
        let (event, class) = out.events[0].clone();
        assert_eq!(class, "resolution");

        let value_of = |edge: &str| -> Option<String> {
            let obj = net
                .triples()
                .iter()
                .find(|t| t.node1 == event && t.edge == edge)?
                .node2
                .clone();
            net.triples()
                .iter()
                .find(|t| t.node1 == obj && t.edge != "is")
                .map(|t| t.node2.clone())
        };
        assert_eq!(value_of("prevailing_party").as_deref(), Some("AT&T"));
        assert_eq!(value_of("defendant").as_deref(), Some("Microsoft"));
        assert_eq!(
            value_of("nature_of_case").as_deref(),
            Some("complex patent lawsuit")
        );
        assert_eq!(value_of("plaintiff").as_deref(), Some("AT&T"));
        assert_eq!(value_of("occur_at").as_deref(), Some("federal court"));
        // 15 triples: court 3, AT&T 2, Microsoft 2, variable 2, event 6
        assert_eq!(out.triples.len(), 15, "{:#?}", out.triples);
    }

    #[test]
    fn same_event_class_collapses_to_one_object() {
        let (gaz, onto, lex) = fixtures();
        let g1 = mini_parse("AT&T sued Microsoft", &lex).unwrap();
        let mut g2 = mini_parse("AT&T file against Microsoft", &lex).unwrap();
        g2.sentence_index = 1;
        let integrator = Integrator::new(&gaz, &onto);
        let out = integrator.integrate(&[g1, g2], "t").unwrap();
        assert_eq!(out.events.len(), 1);
    }

    #[test]
    fn determinism_byte_identical() {
        let (gaz, onto, lex) = fixtures();
        let parse = || {
            mini_parse(
                "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft.",
                &lex,
            )
            .unwrap()
        };
        let integrator = Integrator::new(&gaz, &onto);
        let out1 = integrator.integrate(&[parse()], "salt").unwrap();
        let out2 = integrator.integrate(&[parse()], "salt").unwrap();
        let net1: SemanticNetwork = {
            let mut n = SemanticNetwork::new();
            n.extend(out1.triples).unwrap();
            n
        };
        let net2: SemanticNetwork = {
            let mut n = SemanticNetwork::new();
            n.extend(out2.triples).unwrap();
            n
        };
        assert_eq!(net1.serialize(), net2.serialize());
    }

    #[test]
    fn zero_triggers_yield_entities_only() {
        let (gaz, onto, lex) = fixtures();
        let g = mini_parse("Microsoft concealed information", &lex).unwrap();
        let integrator = Integrator::new(&gaz, &onto);
        let out = integrator.integrate(&[g], "t").unwrap();
        assert_eq!(out.event_count, 0);
        assert!(out.triples.iter().any(|t| t.node2 == "Microsoft"));
    }
}
