//! Per-sentence semantic analysis: noun-phrase chunking over the
//! dependency graph, two-pass category assignment against the
//! gazetteer, and relation inference over the four dependency relation
//! classes (possession, appositive, subject-verb-object, prepositional).

use crate::dep::DepGraph;
use crate::gazetteer::Gazetteer;

const NP_INTERNAL_RELATIONS: &[&str] = &["det", "mod", "nn", "gen"];
const PRONOUN_WORDS: &[&str] = &[
    "it", "he", "she", "they", "him", "them", "its", "his", "her", "their", "who", "whom",
];
const WH_WORDS: &[&str] = &[
    "who", "whom", "what", "which", "when", "where", "why", "how", "whose",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpToken {
    pub offset: usize,
    pub word: String,
    pub pos: String,
}

/// A maximal noun-phrase chunk with its dependency head, leading
/// modifiers and trailing nominal modifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounPhrase {
    pub tokens: Vec<NpToken>,
    pub head_offset: usize,
}

impl NounPhrase {
    pub fn head(&self) -> &NpToken {
        self.tokens
            .iter()
            .find(|t| t.offset == self.head_offset)
            .expect("head token present")
    }

    pub fn modifiers(&self) -> Vec<&NpToken> {
        self.tokens.iter().filter(|t| t.offset < self.head_offset).collect()
    }

    pub fn end_modifiers(&self) -> Vec<&NpToken> {
        self.tokens.iter().filter(|t| t.offset > self.head_offset).collect()
    }

    /// The chunk text, word by word.
    pub fn phrase(&self) -> String {
        self.tokens
            .iter()
            .map(|t| t.word.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The chunk text minus leading determiners and possessives; this
    /// is what the gazetteer passes match against.
    pub fn stripped_phrase(&self) -> String {
        self.tokens
            .iter()
            .skip_while(|t| {
                t.pos == "Det"
                    || (PRONOUN_WORDS.contains(&t.word.to_lowercase().as_str())
                        && t.offset != self.head_offset)
            })
            .map(|t| t.word.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn first_offset(&self) -> usize {
        self.tokens.first().map(|t| t.offset).unwrap_or(0)
    }

    pub fn wh_word(&self) -> Option<&str> {
        self.tokens
            .iter()
            .map(|t| t.word.as_str())
            .find(|w| WH_WORDS.contains(&w.to_lowercase().as_str()))
    }

    pub fn is_pronoun(&self) -> bool {
        self.tokens.len() == 1
            && PRONOUN_WORDS.contains(&self.tokens[0].word.to_lowercase().as_str())
    }

    /// Modifier words other than determiners; a chunk with none is bare.
    pub fn has_content_modifiers(&self) -> bool {
        self.tokens.iter().any(|t| {
            t.offset != self.head_offset
                && t.pos != "Det"
                && !PRONOUN_WORDS.contains(&t.word.to_lowercase().as_str())
        })
    }
}

/// Chunk the dependency graph: every noun that is not itself an
/// NP-internal dependent heads a chunk made of its determiner,
/// adjective and nominal dependents. Non-NP tokens are skipped.
pub fn chunk(g: &DepGraph) -> Vec<NounPhrase> {
    let mut nps = Vec::new();
    for tok in &g.tokens {
        if tok.pos != "N" {
            continue;
        }
        // internal dependents hang off their head noun
        let internal = NP_INTERNAL_RELATIONS.contains(&tok.relation.as_str())
            && tok
                .head_offset()
                .and_then(|h| g.token(h))
                .map(|h| h.pos == "N")
                .unwrap_or(false);
        if internal {
            continue;
        }
        let mut tokens: Vec<NpToken> = vec![NpToken {
            offset: tok.offset,
            word: tok.word.clone(),
            pos: tok.pos.clone(),
        }];
        collect_internal(g, tok.offset, &mut tokens);
        tokens.sort_by_key(|t| t.offset);
        nps.push(NounPhrase {
            tokens,
            head_offset: tok.offset,
        });
    }
    nps.sort_by_key(|np| np.first_offset());
    nps
}

fn collect_internal(g: &DepGraph, head: usize, out: &mut Vec<NpToken>) {
    for dep in g.dependents(head) {
        if NP_INTERNAL_RELATIONS.contains(&dep.relation.as_str())
            && matches!(dep.pos.as_str(), "N" | "A" | "Det")
        {
            out.push(NpToken {
                offset: dep.offset,
                word: dep.word.clone(),
                pos: dep.pos.clone(),
            });
            collect_internal(g, dep.offset, out);
        }
    }
}

/// A categorized named entity, or a variable placeholder when no
/// category could be assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEntity {
    pub category: String,
    pub attributes: Vec<(String, String)>,
    /// (sentence index, first token offset)
    pub discourse_offset: (usize, usize),
    pub phrase: String,
    pub np_index: usize,
    pub wh_word: Option<String>,
    pub pronoun: bool,
}

impl NamedEntity {
    pub fn is_variable(&self) -> bool {
        self.category == "variable"
    }
}

/// Two-pass category assignment: a direct match on the full phrase
/// first, the token-by-token pattern pass second, and a variable
/// placeholder when both miss.
pub fn assign_categories(nps: &[NounPhrase], g: &DepGraph, gaz: &Gazetteer) -> Vec<NamedEntity> {
    let mut out = Vec::new();
    for (i, np) in nps.iter().enumerate() {
        let phrase = np.stripped_phrase();
        let offset = (g.sentence_index, np.first_offset());
        let wh_word = np.wh_word().map(String::from);
        let pronoun = np.is_pronoun();

        if pronoun || (wh_word.is_some() && np.tokens.len() == 1) {
            out.push(NamedEntity {
                category: "variable".to_string(),
                attributes: vec![("var_desc".to_string(), np.phrase())],
                discourse_offset: offset,
                phrase: np.phrase(),
                np_index: i,
                wh_word,
                pronoun,
            });
            continue;
        }

        if let Some((category, entry)) = gaz.direct_match(&phrase) {
            // the identifying attribute takes the entry's primary name,
            // which is what alias matching is for
            let attributes = entry
                .group_map
                .iter()
                .flatten()
                .take(1)
                .map(|attr| (attr.clone(), entry.name.clone()))
                .collect();
            out.push(NamedEntity {
                category: category.to_string(),
                attributes,
                discourse_offset: offset,
                phrase,
                np_index: i,
                wh_word,
                pronoun,
            });
            continue;
        }

        if let Some(m) = gaz.second_pass_match(&phrase, &np.head().word) {
            out.push(NamedEntity {
                category: m.category,
                attributes: m.attributes,
                discourse_offset: offset,
                phrase,
                np_index: i,
                wh_word,
                pronoun,
            });
            continue;
        }

        out.push(NamedEntity {
            category: "variable".to_string(),
            attributes: vec![("var_desc".to_string(), phrase.clone())],
            discourse_offset: offset,
            phrase,
            np_index: i,
            wh_word,
            pronoun,
        });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    Possession,
    Appositive,
    Svo,
    Prepositional,
}

/// A reference to a relation participant: a chunk or a verb token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Participant {
    Np(usize),
    Verb { offset: usize, lemma: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub governor: Option<Participant>,
    /// Verb or preposition lemma; empty for possession and appositive.
    pub link_word: String,
    /// Offset of the verb or preposition token carrying the link.
    pub link_offset: Option<usize>,
    pub dependent: Option<Participant>,
}

/// Infer relations from the dependency labels: possession from gen
/// links, appositives from appo links, subject-verb-object with
/// conjunction distribution, and prepositional chains. A relative
/// clause's anchor noun fills the verb's gapped argument; the by-phrase
/// of a subjectless participle acts as its deep subject.
pub fn infer_relations(g: &DepGraph, nps: &[NounPhrase]) -> Vec<Relation> {
    let np_of = |offset: usize| nps.iter().position(|np| np.head_offset == offset);
    let mut out = Vec::new();

    for tok in &g.tokens {
        if tok.relation == "gen" {
            if let Some(h) = tok.head_offset() {
                if let Some(np) = np_of(h) {
                    out.push(Relation {
                        kind: RelationKind::Possession,
                        governor: Some(Participant::Verb {
                            offset: tok.offset,
                            lemma: tok.word.clone(),
                        }),
                        link_word: String::new(),
                        link_offset: None,
                        dependent: Some(Participant::Np(np)),
                    });
                }
            }
        }
    }

    for tok in &g.tokens {
        if tok.relation == "appo" {
            if let (Some(h), Some(dep_np)) = (tok.head_offset(), np_of(tok.offset)) {
                if let Some(gov_np) = np_of(h) {
                    out.push(Relation {
                        kind: RelationKind::Appositive,
                        governor: Some(Participant::Np(gov_np)),
                        link_word: String::new(),
                        link_offset: None,
                        dependent: Some(Participant::Np(dep_np)),
                    });
                }
            }
        }
    }

    let conj_group = |offset: usize| -> Vec<usize> {
        let mut group = vec![offset];
        for t in &g.tokens {
            if t.relation == "conj" {
                if let Some(h) = t.head_offset() {
                    if h == offset {
                        group.push(t.offset);
                    } else if t.offset == offset {
                        group.push(h);
                    }
                }
            }
        }
        group
    };

    for verb in g.tokens.iter().filter(|t| t.pos == "V") {
        let mut subjects: Vec<usize> = g
            .dependents(verb.offset)
            .filter(|d| d.relation == "s")
            .flat_map(|d| conj_group(d.offset))
            .collect();
        let mut objects: Vec<usize> = g
            .dependents(verb.offset)
            .filter(|d| d.relation == "obj")
            .flat_map(|d| conj_group(d.offset))
            .collect();
        let by_object: Option<usize> = g
            .dependents(verb.offset)
            .filter(|d| d.pos == "Prep" && d.word == "by")
            .find_map(|p| {
                g.dependents(p.offset)
                    .find(|d| d.relation == "pcomp-n")
                    .map(|d| d.offset)
            });
        let anchor: Option<usize> = if verb.relation == "rel" {
            verb.head_offset()
        } else {
            None
        };

        if subjects.is_empty() {
            if let Some(b) = by_object {
                subjects.push(b);
            }
        }
        if objects.is_empty() {
            if let Some(a) = anchor {
                objects.push(a);
            }
        } else if subjects.is_empty() {
            if let Some(a) = anchor {
                subjects.push(a);
            }
        }

        let subj_nps: Vec<Option<usize>> = if subjects.is_empty() {
            vec![None]
        } else {
            subjects.iter().map(|&o| np_of(o)).collect()
        };
        let obj_nps: Vec<Option<usize>> = if objects.is_empty() {
            vec![None]
        } else {
            objects.iter().map(|&o| np_of(o)).collect()
        };
        for s in &subj_nps {
            for o in &obj_nps {
                if s.is_none() && o.is_none() {
                    continue;
                }
                out.push(Relation {
                    kind: RelationKind::Svo,
                    governor: s.map(Participant::Np),
                    link_word: verb.word.clone(),
                    link_offset: Some(verb.offset),
                    dependent: o.map(Participant::Np),
                });
            }
        }
    }

    for prep in g.tokens.iter().filter(|t| t.pos == "Prep") {
        let Some(gov_offset) = prep.head_offset() else { continue };
        let Some(gov_tok) = g.token(gov_offset) else { continue };
        let object = g
            .dependents(prep.offset)
            .find(|d| d.relation == "pcomp-n")
            .and_then(|d| np_of(d.offset));
        let Some(object) = object else { continue };
        if gov_tok.pos == "V" && prep.word == "by" {
            let has_subject = g.dependents(gov_offset).any(|d| d.relation == "s");
            if !has_subject {
                continue; // consumed as the deep subject of a passive
            }
        }
        let governor = if gov_tok.pos == "V" {
            Some(Participant::Verb {
                offset: gov_tok.offset,
                lemma: gov_tok.word.clone(),
            })
        } else {
            np_of(gov_offset).map(Participant::Np)
        };
        out.push(Relation {
            kind: RelationKind::Prepositional,
            governor,
            link_word: prep.word.clone(),
            link_offset: Some(prep.offset),
            dependent: Some(Participant::Np(object)),
        });
    }

    out
}

/// The prepositions attached directly to a verb token, with their
/// objects; used to assemble multi-word triggers like "file against".
pub fn verb_preps(g: &DepGraph, verb_offset: usize) -> Vec<(String, usize, Option<usize>)> {
    g.dependents(verb_offset)
        .filter(|d| d.pos == "Prep")
        .map(|p| {
            let obj = g
                .dependents(p.offset)
                .find(|d| d.relation == "pcomp-n")
                .map(|d| d.offset);
            (p.word.clone(), p.offset, obj)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dep::{mini_parse, parse_file, Lexicon};
    use crate::gazetteer::Gazetteer;

    fn lex() -> Lexicon {
        Lexicon {
            multiword_names: vec![
                "Electronic Frontier Foundation".into(),
                "William Pauley III".into(),
            ],
            title_nouns: vec!["Judge".into(), "judge".into()],
        }
    }

    fn gaz() -> Gazetteer {
        Gazetteer::load(
            "\
Excite\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\t\t\torg_name
Microsoft\tcompany\t({TOKEN})(\\sCorporation|\\sCorp[.]?)?\tspecific\t\t\torg_name
Judge\tjudge\t(([\\w.'&\\-]*\\s)*?({TOKEN})(\\s([A-Z][\\w'\\-.]*)((\\s[A-Z][\\w'\\-.]*)*))?)\tspecific\tjudge\t\t-,-,profession,-,per_fname,per_lname,-
",
        )
        .unwrap()
    }

    #[test]
    fn chunks_judge_phrase_with_modifiers() {
        // hand-built parse mirroring the external parser's treatment of
        // "The U.S. District Judge William Pauley III"
        let text = "\
1\tDet\tdet\tThe\tJudge(4)
2\tN\tnn\tU.S.\tJudge(4)
3\tA\tmod\tDistrict\tJudge(4)
4\tN\ts\tJudge\tpreside(6)
5\tN\tnn\tWilliam Pauley III\tJudge(4)
6\tV\ti\tpreside\tfin(E0)
";
        let g = &parse_file(text).unwrap()[0];
        let nps = chunk(g);
        assert_eq!(nps.len(), 1);
        let np = &nps[0];
        assert_eq!(np.head().word, "Judge");
        let mods: Vec<&str> = np.modifiers().iter().map(|t| t.word.as_str()).collect();
        assert_eq!(mods, ["The", "U.S.", "District"]);
        let ends: Vec<&str> = np.end_modifiers().iter().map(|t| t.word.as_str()).collect();
        assert_eq!(ends, ["William Pauley III"]);
    }

    #[test]
    fn single_noun_chunks_alone() {
        let g = mini_parse("Microsoft sued Excite", &lex()).unwrap();
        let nps = chunk(&g);
        assert_eq!(nps.len(), 2);
        assert_eq!(nps[0].head().word, "Microsoft");
        assert!(nps[0].modifiers().is_empty());
    }

    #[test]
    fn two_chunks_from_pp_construction() {
        let g = mini_parse("the long-awaited ruling by the federal court", &lex()).unwrap();
        let nps = chunk(&g);
        let heads: Vec<String> = nps.iter().map(|np| np.head().word.clone()).collect();
        assert_eq!(heads, ["ruling", "court"]);
    }

    #[test]
    fn chunks_reparse_under_the_grammar() {
        // independent recognizer for the noun-phrase grammar:
        // NOUN_PHRASE -> MODIFIER* HEAD END_MODIFIER*, modifiers drawn
        // from determiners, adjectives and nouns, end modifiers nominal
        fn in_grammar(np: &NounPhrase) -> bool {
            let mut saw_head = false;
            for t in &np.tokens {
                if t.offset == np.head_offset {
                    if saw_head || t.pos != "N" {
                        return false;
                    }
                    saw_head = true;
                } else if !saw_head {
                    if !matches!(t.pos.as_str(), "Det" | "A" | "N") {
                        return false;
                    }
                } else if t.pos != "N" {
                    return false;
                }
            }
            saw_head
        }
        for sentence in [
            "Microsoft sued Excite",
            "When did AT&T file its case against Microsoft?",
            "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft",
        ] {
            let g = mini_parse(sentence, &lex()).unwrap();
            for np in chunk(&g) {
                assert!(in_grammar(&np), "{sentence}: {np:?}");
            }
        }
    }

    #[test]
    fn first_pass_beats_second() {
        let g = mini_parse("Excite sued Microsoft", &lex()).unwrap();
        let nps = chunk(&g);
        let nes = assign_categories(&nps, &g, &gaz());
        assert_eq!(nes[0].category, "company");
        assert_eq!(nes[0].attributes, vec![("org_name".into(), "Excite".into())]);
    }

    #[test]
    fn unknown_phrase_becomes_variable() {
        let g = mini_parse("Microsoft settled the complex patent lawsuit", &lex()).unwrap();
        let nps = chunk(&g);
        let nes = assign_categories(&nps, &g, &gaz());
        let var = nes.iter().find(|n| n.is_variable()).unwrap();
        assert_eq!(
            var.attributes,
            vec![("var_desc".into(), "complex patent lawsuit".into())]
        );
    }

    #[test]
    fn head_keys_the_match_not_modifiers() {
        let text = "\
1\tDet\tdet\tThe\tJudge(4)
2\tN\tnn\tU.S.\tJudge(4)
3\tA\tmod\tDistrict\tJudge(4)
4\tN\ts\tJudge\tpreside(6)
5\tN\tnn\tWilliam Pauley III\tJudge(4)
6\tV\ti\tpreside\tfin(E0)
";
        let g = &parse_file(text).unwrap()[0];
        let nps = chunk(g);
        let nes = assign_categories(&nps, g, &gaz());
        assert_eq!(nes[0].category, "judge");
        let attrs = &nes[0].attributes;
        assert!(attrs.contains(&("profession".into(), "Judge".into())), "{attrs:?}");
        assert!(attrs.contains(&("per_fname".into(), "William".into())), "{attrs:?}");
        assert!(attrs.contains(&("per_lname".into(), "Pauley III".into())), "{attrs:?}");
    }

    #[test]
    fn svo_with_conjunction_distribution() {
        let g = mini_parse(
            "Google and Electronic Frontier Foundation file amicus brief",
            &lex(),
        )
        .unwrap();
        let nps = chunk(&g);
        let rels = infer_relations(&g, &nps);
        let svos: Vec<&Relation> = rels
            .iter()
            .filter(|r| r.kind == RelationKind::Svo)
            .collect();
        assert_eq!(svos.len(), 2);
        let subjects: Vec<String> = svos
            .iter()
            .filter_map(|r| match &r.governor {
                Some(Participant::Np(i)) => Some(nps[*i].head().word.clone()),
                _ => None,
            })
            .collect();
        assert!(subjects.contains(&"Google".to_string()));
        assert!(subjects.contains(&"Electronic Frontier Foundation".to_string()));
    }

    #[test]
    fn possession_direction_is_fixed() {
        let g = mini_parse("When did AT&T file its case against Microsoft?", &lex()).unwrap();
        let nps = chunk(&g);
        let rels = infer_relations(&g, &nps);
        let poss: Vec<&Relation> = rels
            .iter()
            .filter(|r| r.kind == RelationKind::Possession)
            .collect();
        assert_eq!(poss.len(), 1);
        match (&poss[0].governor, &poss[0].dependent) {
            (Some(Participant::Verb { lemma, .. }), Some(Participant::Np(i))) => {
                assert_eq!(lemma, "its");
                assert_eq!(nps[*i].head().word, "case");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prepositional_relation_to_verb() {
        let g = mini_parse("The appeals court rule on Wednesday", &lex()).unwrap();
        let nps = chunk(&g);
        let rels = infer_relations(&g, &nps);
        let preps: Vec<&Relation> = rels
            .iter()
            .filter(|r| r.kind == RelationKind::Prepositional)
            .collect();
        assert_eq!(preps.len(), 1);
        assert_eq!(preps[0].link_word, "on");
        match &preps[0].governor {
            Some(Participant::Verb { lemma, .. }) => assert_eq!(lemma, "rule"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn appositive_relation() {
        let g = mini_parse("Andrew Garcia, a former employee, sued Microsoft", &lex()).unwrap();
        let nps = chunk(&g);
        let rels = infer_relations(&g, &nps);
        assert!(rels.iter().any(|r| r.kind == RelationKind::Appositive));
    }

    #[test]
    fn passive_reduced_relative_distributes() {
        let g = mini_parse("Name the companies sued by Microsoft", &lex()).unwrap();
        let nps = chunk(&g);
        let rels = infer_relations(&g, &nps);
        let ok = rels.iter().any(|r| {
            r.kind == RelationKind::Svo
                && r.link_word == "sue"
                && matches!(&r.governor, Some(Participant::Np(i)) if nps[*i].head().word == "Microsoft")
                && matches!(&r.dependent, Some(Participant::Np(i)) if nps[*i].head().word == "companies")
        });
        assert!(ok, "{rels:?}");
    }
}
