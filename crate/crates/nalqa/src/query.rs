//! Query-side reasoning: build the query network with its answer
//! marker, reduce networks to path sets, match paths selectively with
//! optional event-constraint relaxation, and generate responses or
//! explanations.

use std::collections::HashSet;

use thiserror::Error;

use crate::dep::{mini_parse, verb_lemma, DepError, DepGraph, Lexicon};
use crate::discourse::{analyze_sentence, DiscourseError, Integrator, Marker};
use crate::gazetteer::Gazetteer;
use crate::kb::{Kb, DOMAIN_WORDS};
use crate::semnet::{PathSequence, SemanticNetwork};
use crate::xi::{Ontology, XiError};

#[derive(Debug, Error)]
pub enum QueryError {
    #[error(transparent)]
    Parse(#[from] DepError),
    #[error(transparent)]
    Discourse(#[from] DiscourseError),
    #[error(transparent)]
    Xi(#[from] XiError),
    #[error("the question names no answer slot: no trigger accepts the `{wh}` word")]
    NoMarker { wh: String },
    #[error("the question describes no event the knowledge base could hold")]
    NoEvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuestionForm {
    Wh,
    Count,
    YesNo,
    List,
}

#[derive(Debug, Clone)]
pub struct QuestionMeta {
    pub form: QuestionForm,
    pub wh_word: Option<String>,
    pub text: String,
}

const WH_WORDS: &[&str] = &[
    "who", "whom", "what", "which", "when", "where", "why", "how", "whose",
];
const AUX_FIRST: &[&str] = &[
    "is", "are", "was", "were", "do", "does", "did", "has", "have", "had", "can", "could",
    "will", "would", "must",
];
const IMPERATIVE_FIRST: &[&str] = &["name", "list", "give", "show"];

/// Classify the question form from its wording: a leading wh-word asks
/// wh (or count for "how many"), a leading auxiliary asks yes-no, and
/// an imperative head asks for a list.
pub fn detect_form(question: &str) -> QuestionMeta {
    let words: Vec<String> = question
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric() && c != '&' && c != '.'))
        .filter(|w| !w.is_empty())
        .map(|w| w.to_string())
        .collect();
    let lower: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
    let meta = |form, wh: Option<&String>| QuestionMeta {
        form,
        wh_word: wh.cloned(),
        text: question.trim().to_string(),
    };
    match lower.first().map(|s| s.as_str()) {
        Some("how") if lower.get(1).map(|s| s.as_str()) == Some("many") => {
            meta(QuestionForm::Count, lower.first())
        }
        Some(w) if WH_WORDS.contains(&w) => meta(QuestionForm::Wh, lower.first()),
        Some(w) if AUX_FIRST.contains(&w) => meta(QuestionForm::YesNo, None),
        Some(w) if IMPERATIVE_FIRST.contains(&w) => {
            let wh = lower.iter().find(|w| WH_WORDS.contains(&w.as_str()));
            meta(QuestionForm::List, wh)
        }
        _ => {
            let wh = lower.iter().find(|w| WH_WORDS.contains(&w.as_str()));
            meta(QuestionForm::Wh, wh)
        }
    }
}

/// The entity class a wh-word asks after, used by the contingency
/// marker step.
pub fn wh_entity_class(meta: &QuestionMeta, onto: &Ontology) -> Option<String> {
    let wh = meta.wh_word.as_deref()?;
    let class = match wh {
        "when" => "date",
        "where" => "location",
        "who" | "whom" => "legal_entity",
        "what" | "which" | "how" | "whose" => {
            // "which company", "how many companies": the noun names the class
            let words: Vec<String> = meta
                .text
                .split_whitespace()
                .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase())
                .collect();
            let pos = words.iter().position(|w| w == wh)?;
            for cand in words.iter().skip(pos + 1).take(2) {
                let singular = singularize(cand);
                if onto.is_class(&singular) {
                    return Some(singular);
                }
            }
            "variable"
        }
        _ => "variable",
    };
    Some(class.to_string())
}

fn singularize(word: &str) -> String {
    if let Some(stem) = word.strip_suffix("ies") {
        return format!("{stem}y");
    }
    if let Some(stem) = word.strip_suffix("es") {
        if stem.ends_with('s') || stem.ends_with('x') || stem.ends_with("ch") {
            return stem.to_string();
        }
    }
    word.strip_suffix('s').unwrap_or(word).to_string()
}

/// Tokens of the question that nothing in the system knows: not
/// function words, not verb forms, not gazetteer names or triggers, not
/// ontology vocabulary, not numbers and not domain words.
pub fn unknown_tokens(question: &str, gaz: &Gazetteer, onto: &Ontology) -> Vec<String> {
    let mut known: HashSet<String> = HashSet::new();
    for w in gaz.known_words() {
        known.insert(w.to_string());
        known.insert(w.to_lowercase());
        for part in w.split_whitespace() {
            known.insert(part.to_string());
            known.insert(part.to_lowercase());
        }
    }
    for c in onto.class_names() {
        known.insert(c.to_string());
        for part in c.split('_') {
            known.insert(part.to_string());
        }
    }
    for a in onto.attribute_names() {
        for part in a.split('_') {
            known.insert(part.to_string());
        }
    }
    for w in DOMAIN_WORDS {
        known.insert(w.to_string());
    }

    let mut out = Vec::new();
    for raw in question.split_whitespace() {
        let token = raw.trim_matches(|c: char| !c.is_alphanumeric() && c != '&' && c != '.');
        if token.is_empty() {
            continue;
        }
        let lower = token.to_lowercase();
        let ok = crate::dep::mini::is_function_word(token)
            || verb_lemma(token).is_some()
            || token.chars().all(|c| c.is_ascii_digit())
            || known.contains(token)
            || known.contains(&lower)
            || known.contains(&singularize(&lower))
            || DOMAIN_WORDS.contains(&singularize(&lower).as_str());
        if !ok {
            out.push(token.to_string());
        }
    }
    out
}

/// A semantic network carrying at most one answer marker, plus the
/// question form.
#[derive(Debug)]
pub struct QueryNetwork {
    pub net: SemanticNetwork,
    pub marker: Option<Marker>,
    pub meta: QuestionMeta,
}

impl QueryNetwork {
    /// Wrap a hand-assembled network, discovering the marker from its
    /// `desc X` leaf.
    pub fn from_network(net: SemanticNetwork, meta: QuestionMeta) -> Self {
        let marker = net
            .triples()
            .iter()
            .find(|t| t.node2 == "X" && t.edge == "desc")
            .and_then(|leaf| {
                net.triples()
                    .iter()
                    .find(|t| t.node2 == leaf.node1 && t.edge != "is")
                    .map(|attr| Marker {
                        event: attr.node1.clone(),
                        attr: attr.edge.clone(),
                        object: leaf.node1.clone(),
                    })
            });
        QueryNetwork { net, marker, meta }
    }
}

/// Build the query network for a parsed question: run the
/// understanding pipeline in query mode, placing the marker naturally
/// on wh-occupied trigger slots or through the contingency lookup.
pub fn build_query_network(
    g: &DepGraph,
    meta: QuestionMeta,
    gaz: &Gazetteer,
    onto: &Ontology,
) -> Result<QueryNetwork, QueryError> {
    let analysis = analyze_sentence(g, gaz);

    // imperative objects stand for the queried slot
    let mut marker_offsets = Vec::new();
    if meta.form == QuestionForm::List {
        if let Some(root) = g.root() {
            let obj_np = g
                .dependents(root.offset)
                .find(|d| d.relation == "obj")
                .or_else(|| {
                    // nominal "List of judges ...": the of-phrase object
                    g.dependents(root.offset)
                        .filter(|d| d.pos == "Prep")
                        .flat_map(|p| g.dependents(p.offset))
                        .find(|d| d.relation == "pcomp-n")
                });
            if let Some(obj) = obj_np {
                if let Some(np) = analysis.nps.iter().find(|np| np.head_offset == obj.offset) {
                    marker_offsets.push((g.sentence_index, np.first_offset()));
                }
            }
        }
    }

    let integrator = Integrator {
        gaz,
        onto,
        query_mode: true,
        wh_class: wh_entity_class(&meta, onto),
        marker_offsets,
    };
    let out = integrator.integrate_analyses(
        std::slice::from_ref(g),
        std::slice::from_ref(&analysis),
        "query",
    )?;
    if out.events.is_empty() {
        return Err(QueryError::NoEvent);
    }
    if out.marker.is_none() && meta.form != QuestionForm::YesNo {
        return Err(QueryError::NoMarker {
            wh: meta.wh_word.clone().unwrap_or_else(|| "?".to_string()),
        });
    }
    let mut net = SemanticNetwork::new();
    net.extend(out.triples)
        .map_err(|e| DiscourseError::SchemaViolation {
            attr: e.to_string(),
            class: String::new(),
        })?;
    Ok(QueryNetwork {
        net,
        marker: out.marker,
        meta,
    })
}

/// The reduction of a query network: all paths except the marker path
/// form Q, the marker path forms the singleton A.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub q: Vec<PathSequence>,
    pub answer: Option<PathSequence>,
    pub under_constrained: bool,
}

pub fn reduce(qnet: &QueryNetwork) -> Reduction {
    let paths = qnet.net.enumerate_paths();
    let mut q = Vec::new();
    let mut answer = None;
    for p in paths {
        if p.leaf == "X" {
            answer = Some(p);
        } else {
            q.push(p);
        }
    }
    let under_constrained = q.is_empty() && answer.is_some();
    Reduction {
        q,
        answer,
        under_constrained,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnswerBinding {
    /// Leaf values bound to X, in attribute declaration order.
    pub values: Vec<String>,
    pub event: String,
    pub event_class: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    EventMissing,
    KnowledgeMissing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: FailureKind,
    pub event_class: String,
    /// The leaf value of the failing path (event-missing only).
    pub entity: String,
    /// The event attribute of the failing path.
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Answers(Vec<AnswerBinding>),
    Failure(Failure),
}

fn class_matches(stored: &str, query: &str, onto: &Ontology, relax: bool) -> bool {
    if stored == query {
        return true;
    }
    relax
        && onto.is_class(stored)
        && onto.is_class(query)
        && onto.subclass_of(stored, query).unwrap_or(false)
}

fn condition_one(q: &PathSequence, s: &PathSequence, onto: &Ontology, relax: bool) -> bool {
    q.leaf == s.leaf
        && q.leaf_edge == s.leaf_edge
        && q.event_edge == s.event_edge
        && class_matches(&s.class, &q.class, onto, relax)
}

/// Selective path matching. Condition (1): every q matches some stored
/// path on (n1, e1, e2, e3, n4). Condition (2): a candidate answer path
/// agrees with A on (e2, e3, n4). Condition (3): one event object
/// satisfies all of Q and the answer path together; each qualifying
/// event yields an answer. With `relax`, the stored class may be any
/// subclass of the query class.
pub fn match_paths(
    q: &[PathSequence],
    answer: Option<&PathSequence>,
    stored: &[PathSequence],
    onto: &Ontology,
    relax: bool,
) -> MatchOutcome {
    // group stored paths by event object, preserving first appearance
    let mut events: Vec<(&str, Vec<&PathSequence>)> = Vec::new();
    for s in stored {
        match events.iter_mut().find(|(e, _)| *e == s.event) {
            Some((_, v)) => v.push(s),
            None => events.push((s.event.as_str(), vec![s])),
        }
    }

    let mut candidates: Vec<(&str, &Vec<&PathSequence>)> = Vec::new();
    for (event, group) in &events {
        if q.iter()
            .all(|qi| group.iter().any(|sj| condition_one(qi, sj, onto, relax)))
        {
            candidates.push((event, group));
        }
    }

    if candidates.is_empty() {
        // the event in question does not exist; name the path that
        // fails globally, or the one the best candidate lacks
        let globally_unmatched = q.iter().find(|qi| {
            !stored.iter().any(|sj| condition_one(qi, sj, onto, relax))
        });
        let failing = globally_unmatched.or_else(|| {
            let best = events.iter().max_by_key(|(_, group)| {
                q.iter()
                    .filter(|qi| group.iter().any(|sj| condition_one(qi, sj, onto, relax)))
                    .count()
            });
            best.and_then(|(_, group)| {
                q.iter()
                    .find(|qi| !group.iter().any(|sj| condition_one(qi, sj, onto, relax)))
            })
        });
        let failing = match failing {
            Some(f) => f,
            None => {
                return MatchOutcome::Failure(Failure {
                    kind: FailureKind::EventMissing,
                    event_class: answer.map(|a| a.class.clone()).unwrap_or_default(),
                    entity: String::new(),
                    role: String::new(),
                })
            }
        };
        return MatchOutcome::Failure(Failure {
            kind: FailureKind::EventMissing,
            event_class: failing.class.clone(),
            entity: failing.leaf.clone(),
            role: failing.event_edge.clone(),
        });
    }

    let Some(a) = answer else {
        // markerless (yes-no): the candidates witness the match
        let bindings = candidates
            .iter()
            .map(|(event, group)| AnswerBinding {
                values: Vec::new(),
                event: event.to_string(),
                event_class: group[0].class.clone(),
            })
            .collect();
        return MatchOutcome::Answers(bindings);
    };

    // attribute order for multi-leaf value assembly
    let attr_order: Vec<String> = onto.attribute_names().map(String::from).collect();
    let attr_rank = |edge: &str| {
        attr_order
            .iter()
            .position(|a| a == edge)
            .unwrap_or(usize::MAX)
    };

    let mut bindings: Vec<AnswerBinding> = Vec::new();
    for (event, group) in &candidates {
        // condition (2): agree on e2, e3, n4; condition (3) holds by
        // construction since the group pins one event object
        let mut matches: Vec<&&PathSequence> = group
            .iter()
            .filter(|sm| {
                sm.event_edge == a.event_edge && class_matches(&sm.class, &a.class, onto, relax)
            })
            .collect();
        if matches.is_empty() {
            continue;
        }
        matches.sort_by_key(|sm| attr_rank(&sm.leaf_edge));
        // one binding per attribute object n2
        let mut by_object: Vec<(String, Vec<String>)> = Vec::new();
        for sm in matches {
            match by_object.iter_mut().find(|(o, _)| *o == sm.entity) {
                Some((_, vals)) => vals.push(sm.leaf.clone()),
                None => by_object.push((sm.entity.clone(), vec![sm.leaf.clone()])),
            }
        }
        for (_, values) in by_object {
            bindings.push(AnswerBinding {
                values,
                event: event.to_string(),
                event_class: group[0].class.clone(),
            });
        }
    }

    if bindings.is_empty() {
        // the event exists but knowledge about the queried attribute is
        // missing
        return MatchOutcome::Failure(Failure {
            kind: FailureKind::KnowledgeMissing,
            event_class: candidates[0].1[0].class.clone(),
            entity: String::new(),
            role: a.event_edge.clone(),
        });
    }
    MatchOutcome::Answers(bindings)
}

/// Context the response generator needs beyond the outcome itself.
pub struct RespondContext<'a> {
    pub onto: &'a Ontology,
    /// The stored network, for resolving entity objects to their
    /// identifying leaves while instantiating templates.
    pub net: &'a SemanticNetwork,
    pub form: QuestionForm,
    /// The event attribute under the marker.
    pub marker_attr: Option<String>,
    /// Event attributes already constrained by the question; their
    /// template clauses are elided.
    pub constrained: HashSet<String>,
}

const DISPLAY_PREFERENCE: &[&str] = &["profession", "per_fname", "per_lname", "org_name", "var_desc"];

fn display_entity(net: &SemanticNetwork, object: &str, onto: &Ontology) -> String {
    let mut leaves: Vec<(String, String)> = net
        .triples()
        .iter()
        .filter(|t| t.node1 == object && t.edge != "is" && net.class_of(&t.node2).is_none())
        .map(|t| (t.edge.clone(), t.node2.clone()))
        .collect();
    let global: Vec<String> = onto.attribute_names().map(String::from).collect();
    let rank = |edge: &str| -> (usize, usize) {
        let pref = DISPLAY_PREFERENCE
            .iter()
            .position(|p| *p == edge)
            .unwrap_or(usize::MAX);
        let glob = global.iter().position(|a| a == edge).unwrap_or(usize::MAX);
        (pref, glob)
    };
    leaves.sort_by_key(|(e, _)| rank(e));
    leaves
        .into_iter()
        .map(|(_, v)| v)
        .collect::<Vec<_>>()
        .join(" ")
}

fn display_class(class: &str) -> String {
    class.replace('_', " ")
}

fn capitalize(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut done = false;
    for c in line.chars() {
        if !done && c.is_alphabetic() {
            out.extend(c.to_uppercase());
            done = true;
        } else {
            out.push(c);
        }
    }
    out
}

fn explain(failure: &Failure) -> String {
    match failure.kind {
        FailureKind::EventMissing => {
            if failure.entity.is_empty() {
                format!(
                    "There is no such {} event in the knowledge base.",
                    display_class(&failure.event_class)
                )
            } else {
                format!(
                    "There is no such {} event involving {} as {}.",
                    display_class(&failure.event_class),
                    failure.entity,
                    display_class(&failure.role)
                )
            }
        }
        FailureKind::KnowledgeMissing => format!(
            "The {} event exists but the knowledge base holds no {} information.",
            display_class(&failure.event_class),
            display_class(&failure.role)
        ),
    }
}

/// Render the outcome: template instantiation for wh and list
/// questions, a count for "how many", a yes/no verdict, and an
/// explanation on failure.
pub fn respond(outcome: &MatchOutcome, ctx: &RespondContext) -> String {
    match outcome {
        MatchOutcome::Failure(f) => match ctx.form {
            QuestionForm::Count if f.kind == FailureKind::EventMissing => "None".to_string(),
            _ => capitalize(&explain(f)),
        },
        MatchOutcome::Answers(bindings) => match ctx.form {
            QuestionForm::YesNo => "Yes, it is true".to_string(),
            QuestionForm::Count => {
                let mut distinct: Vec<&str> = Vec::new();
                for b in bindings {
                    for v in &b.values {
                        if !distinct.contains(&v.as_str()) {
                            distinct.push(v);
                        }
                    }
                }
                if distinct.is_empty() {
                    "None".to_string()
                } else {
                    distinct.len().to_string()
                }
            }
            QuestionForm::Wh | QuestionForm::List => {
                let template = ctx
                    .marker_attr
                    .as_deref()
                    .and_then(|attr| ctx.onto.response_template_for(attr).ok())
                    .unwrap_or_else(crate::xi::ResponseTemplate::fallback);
                if template.text == "<ANSWER>" {
                    // bare entity answers join into one line
                    let mut distinct: Vec<String> = Vec::new();
                    for b in bindings {
                        let v = b.values.join(" ");
                        if !v.is_empty() && !distinct.contains(&v) {
                            distinct.push(v);
                        }
                    }
                    return capitalize(&distinct.join(" and "));
                }
                let mut lines = Vec::new();
                for b in bindings {
                    let mut line = String::new();
                    for seg in template.segments() {
                        match seg.placeholder.as_deref() {
                            None => line.push_str(&seg.literal),
                            Some("ANSWER") => {
                                line.push_str(&seg.literal);
                                line.push_str(&b.values.join(" "));
                            }
                            Some("EVENT") => {
                                line.push_str(&seg.literal);
                                line.push_str(&display_class(&b.event_class));
                            }
                            Some(p) => {
                                let attr = p.to_lowercase();
                                if ctx.constrained.contains(&attr) {
                                    continue; // the asker supplied it
                                }
                                let value = ctx
                                    .net
                                    .triples()
                                    .iter()
                                    .find(|t| t.node1 == b.event && t.edge == attr)
                                    .map(|t| display_entity(ctx.net, &t.node2, ctx.onto));
                                match value {
                                    Some(v) if !v.is_empty() => {
                                        line.push_str(&seg.literal);
                                        line.push_str(&v);
                                    }
                                    _ => continue, // elide the clause
                                }
                            }
                        }
                    }
                    let line = capitalize(line.trim());
                    if !lines.contains(&line) {
                        lines.push(line);
                    }
                }
                lines.join("\n")
            }
        },
    }
}

/// The outcome of asking one question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AskOutcome {
    /// A valid answer was discovered.
    Answer(String),
    /// An explanation: failure analysis or a spelling flag.
    Explanation(String),
}

/// Full pipeline over a question string: spelling check, parse,
/// query-network construction, reduction, matching, response.
pub fn ask(question: &str, kb: &Kb, relax: bool) -> Result<AskOutcome, QueryError> {
    let unknown = unknown_tokens(question, &kb.gaz, &kb.onto);
    if !unknown.is_empty() {
        let mut text = question.trim().trim_end_matches(['?', '.', '!']).to_string();
        for tok in &unknown {
            text = text.replace(tok.as_str(), &format!("_{tok}_"));
        }
        return Ok(AskOutcome::Explanation(format!(
            "There are some spelling errors in the question. {text}"
        )));
    }
    let graph = mini_parse(question, &kb.lexicon)?;
    ask_graph(&graph, question, kb, relax)
}

/// The same pipeline over an externally supplied dependency parse.
pub fn ask_graph(
    g: &DepGraph,
    question: &str,
    kb: &Kb,
    relax: bool,
) -> Result<AskOutcome, QueryError> {
    let meta = detect_form(question);
    let qnet = build_query_network(g, meta, &kb.gaz, &kb.onto)?;
    let reduction = reduce(&qnet);
    let stored = kb.net.enumerate_paths();
    let outcome = match_paths(
        &reduction.q,
        reduction.answer.as_ref(),
        &stored,
        &kb.onto,
        relax,
    );
    let ctx = RespondContext {
        onto: &kb.onto,
        net: &kb.net,
        form: qnet.meta.form,
        marker_attr: qnet.marker.as_ref().map(|m| m.attr.clone()),
        constrained: reduction.q.iter().map(|p| p.event_edge.clone()).collect(),
    };
    let text = respond(&outcome, &ctx);
    Ok(match outcome {
        MatchOutcome::Answers(_) => AskOutcome::Answer(text),
        MatchOutcome::Failure(_) => AskOutcome::Explanation(text),
    })
}

/// Convenience for tests and the CLI: parse a question with the
/// knowledge base's lexicon.
pub fn parse_question(question: &str, lexicon: &Lexicon) -> Result<DepGraph, DepError> {
    mini_parse(question, lexicon)
}
