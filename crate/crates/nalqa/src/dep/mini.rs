//! A minimal deterministic dependency parser for the constrained
//! question/news subset: determiner/adjective/noun chunks, one finite
//! verb group, prepositional phrases, wh-words, appositive and genitive
//! constructions, relative clauses and simple passives. Sentences
//! outside the subset are rejected, never mis-parsed silently.

use super::{DepError, DepGraph, DepToken, Head};

const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "any", "some", "each", "every", "all",
    "no", "many",
];
const POSSESSIVES: &[&str] = &["its", "his", "her", "their", "my", "our", "your"];
const PRONOUNS: &[&str] = &["it", "he", "she", "they", "him", "them", "i", "we", "you"];
const WH_WORDS: &[&str] = &[
    "who", "whom", "what", "which", "when", "where", "why", "how", "whose",
];
const WH_ADVERBS: &[&str] = &["when", "where", "why", "how"];
const AUXILIARIES: &[&str] = &[
    "is", "are", "was", "were", "am", "be", "been", "being", "do", "does", "did", "has", "have",
    "had", "will", "would", "shall", "should", "can", "could", "may", "might", "must",
];
const BE_FORMS: &[&str] = &["is", "are", "was", "were", "am", "be", "been", "being"];
const PREPOSITIONS: &[&str] = &[
    "of", "in", "on", "at", "by", "with", "against", "over", "for", "to", "from", "under",
    "between", "during", "about", "after", "before", "without", "into", "via", "upon",
];
const CONJUNCTIONS: &[&str] = &["and", "or"];
const ADJECTIVES: &[&str] = &[
    "federal", "district", "supreme", "superior", "appeals", "former", "complex", "legal",
    "antitrust", "such", "true", "new", "spamming", "colorless", "green", "long-awaited",
];
const IMPERATIVES: &[&str] = &["name", "list", "give", "show", "tell"];
const ABBREVIATIONS: &[&str] = &["inc.", "corp.", "co.", "ltd.", "mr.", "dr.", "jr.", "st."];

/// (lemma, inflected forms) for the verbs the pipeline understands.
/// Forms ending in `-ing` that double as trigger nouns (filing, ruling,
/// closing) are deliberately absent; those words always read as nouns.
const VERB_FORMS: &[(&str, &[&str])] = &[
    ("sue", &["sue", "sues", "sued", "suing"]),
    ("file", &["file", "files", "filed"]),
    ("side", &["side", "sides", "sided"]),
    ("rule", &["rule", "rules", "ruled"]),
    ("win", &["win", "wins", "won", "winning"]),
    ("lose", &["lose", "loses", "lost", "losing"]),
    ("preside", &["preside", "presides", "presided", "presiding"]),
    ("chair", &["chair", "chairs", "chaired", "chairing"]),
    ("initiate", &["initiate", "initiates", "initiated", "initiating"]),
    ("accuse", &["accuse", "accuses", "accused", "accusing"]),
    ("charge", &["charge", "charges", "charged", "charging"]),
    ("resolve", &["resolve", "resolves", "resolved", "resolving"]),
    ("close", &["close", "closes", "closed"]),
    ("conclude", &["conclude", "concludes", "concluded", "concluding"]),
    ("settle", &["settle", "settles", "settled", "settling"]),
    ("involve", &["involve", "involves", "involved", "involving"]),
    ("engage", &["engage", "engages", "engaged", "engaging"]),
    ("commit", &["commit", "commits", "committed", "committing"]),
    ("dismiss", &["dismiss", "dismisses", "dismissed", "dismissing"]),
    ("sentence", &["sentences", "sentenced", "sentencing"]),
    ("plead", &["plead", "pleads", "pleaded", "pled"]),
    ("throw", &["throw", "throws", "threw", "thrown", "throwing"]),
    ("name", &["name", "names", "named", "naming"]),
    ("list", &["list", "listed", "listing"]),
    ("conceal", &["conceal", "conceals", "concealed", "concealing"]),
    ("sleep", &["sleep", "sleeps", "slept", "sleeping"]),
];

/// Word knowledge handed to the parser: multi-word proper names kept as
/// single tokens when listed in the gazetteer, and title nouns such as
/// "judge" that head a trailing name run.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub multiword_names: Vec<String>,
    pub title_nouns: Vec<String>,
}

impl Lexicon {
    fn is_title(&self, word: &str) -> bool {
        let lw = word.to_lowercase();
        self.title_nouns.iter().any(|t| t.to_lowercase() == lw)
    }
}

pub fn verb_lemma(word: &str) -> Option<&'static str> {
    let lw = word.to_lowercase();
    VERB_FORMS
        .iter()
        .find(|(_, forms)| forms.contains(&lw.as_str()))
        .map(|(lemma, _)| *lemma)
}

pub fn is_function_word(word: &str) -> bool {
    let lw = word.to_lowercase();
    let w = lw.as_str();
    DETERMINERS.contains(&w)
        || POSSESSIVES.contains(&w)
        || PRONOUNS.contains(&w)
        || WH_WORDS.contains(&w)
        || AUXILIARIES.contains(&w)
        || PREPOSITIONS.contains(&w)
        || CONJUNCTIONS.contains(&w)
        || ADJECTIVES.contains(&w)
        || w == "not"
        || w == "times"
        || w == "time"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pos {
    Det,
    Gen,
    Adj,
    Noun,
    Verb,
    Aux,
    Prep,
    Conj,
}

#[derive(Debug, Clone)]
struct Tok {
    word: String,
    pos: Pos,
    after_comma: bool,
    wh: bool,
}

impl Tok {
    fn lower(&self) -> String {
        self.word.to_lowercase()
    }

    fn is_bare_pronoun(&self) -> bool {
        let lw = self.lower();
        PRONOUNS.contains(&lw.as_str()) || self.wh
    }
}

pub fn mini_parse(sentence: &str, lexicon: &Lexicon) -> Result<DepGraph, DepError> {
    let mut toks = tokenize(sentence, lexicon);
    strip_wrapper(&mut toks);
    if toks.is_empty() {
        return Err(DepError::OutOfSubset {
            token: sentence.trim().to_string(),
        });
    }
    tag(&mut toks, lexicon);
    let items = chunk(&toks, lexicon);
    let links = attach(&toks, &items)?;
    build_graph(&toks, &links)
}

fn tokenize(sentence: &str, lexicon: &Lexicon) -> Vec<Tok> {
    let mut words: Vec<(String, bool)> = Vec::new();
    let mut comma_pending = false;
    for raw in sentence.split_whitespace() {
        let mut w = raw.to_string();
        let mut trailing_comma = false;
        while let Some(last) = w.chars().last() {
            match last {
                '?' | '!' | ';' | ':' => {
                    w.pop();
                }
                ',' => {
                    w.pop();
                    trailing_comma = true;
                }
                '.' => {
                    let lw = w.to_lowercase();
                    if ABBREVIATIONS.contains(&lw.as_str()) || w.trim_end_matches('.').contains('.')
                    {
                        break;
                    }
                    w.pop();
                }
                _ => break,
            }
        }
        // genitive "AT&T's" keeps the possessor; chunking adds the gen link
        let w = w.strip_suffix("'s").map(str::to_string).unwrap_or(w);
        if w.is_empty() {
            comma_pending = comma_pending || trailing_comma;
            continue;
        }
        words.push((w, comma_pending));
        comma_pending = trailing_comma;
    }

    // join known multi-word names into single tokens, longest first
    let mut names: Vec<&String> = lexicon.multiword_names.iter().collect();
    names.sort_by_key(|n| std::cmp::Reverse(n.split_whitespace().count()));
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut i = 0;
    'outer: while i < words.len() {
        for name in &names {
            let parts: Vec<&str> = name.split_whitespace().collect();
            if parts.len() > 1 && i + parts.len() <= words.len() {
                let matches = parts
                    .iter()
                    .enumerate()
                    .all(|(k, p)| words[i + k].0 == *p && (k == 0 || !words[i + k].1));
                if matches {
                    out.push((name.to_string(), words[i].1));
                    i += parts.len();
                    continue 'outer;
                }
            }
        }
        out.push(words[i].clone());
        i += 1;
    }
    out.into_iter()
        .map(|(word, after_comma)| Tok {
            word,
            pos: Pos::Noun,
            after_comma,
            wh: false,
        })
        .collect()
}

/// Strip a leading "Is it true that" so the embedded declarative is
/// parsed directly; the yes-no form is detected from the question text.
fn strip_wrapper(toks: &mut Vec<Tok>) {
    let lead: Vec<String> = toks.iter().take(4).map(|t| t.lower()).collect();
    if lead == ["is", "it", "true", "that"] {
        toks.drain(..4);
    }
}

fn tag(toks: &mut [Tok], lexicon: &Lexicon) {
    let n = toks.len();
    for i in 0..n {
        let word = toks[i].word.clone();
        let lw = word.to_lowercase();
        let w = lw.as_str();
        toks[i].wh = WH_WORDS.contains(&w);
        toks[i].pos = if AUXILIARIES.contains(&w) {
            Pos::Aux
        } else if DETERMINERS.contains(&w) {
            Pos::Det
        } else if POSSESSIVES.contains(&w) {
            Pos::Gen
        } else if PREPOSITIONS.contains(&w) {
            Pos::Prep
        } else if CONJUNCTIONS.contains(&w) {
            Pos::Conj
        } else if toks[i].wh {
            Pos::Noun
        } else if verb_lemma(&word).is_some() {
            // a verb form after a determiner, genitive or adjective
            // reads as a noun ("the name", "its case")
            let prev = i.checked_sub(1).map(|p| toks[p].pos);
            if matches!(prev, Some(Pos::Det) | Some(Pos::Gen) | Some(Pos::Adj)) {
                Pos::Noun
            } else {
                Pos::Verb
            }
        } else if ADJECTIVES.contains(&w) && !lexicon.is_title(&word) {
            Pos::Adj
        } else {
            Pos::Noun
        };
    }
    // "how many X" reads as one nominal chunk
    for i in 0..n.saturating_sub(1) {
        if toks[i].lower() == "how" && toks[i + 1].lower() == "many" {
            toks[i].pos = Pos::Adj;
            toks[i + 1].pos = Pos::Adj;
        }
    }
    // wh-determiners: "what crime", "which company"
    for i in 0..n.saturating_sub(1) {
        let w = toks[i].lower();
        if matches!(w.as_str(), "what" | "which" | "whose")
            && matches!(toks[i + 1].pos, Pos::Adj | Pos::Noun)
            && !toks[i + 1].is_bare_pronoun()
        {
            toks[i].pos = Pos::Det;
        }
    }
    // sentence-initial imperative verbs only when a noun phrase follows
    if let Some(first) = toks.first() {
        if first.pos == Pos::Verb && IMPERATIVES.contains(&first.lower().as_str()) {
            let next_is_np = toks
                .get(1)
                .map(|t| matches!(t.pos, Pos::Det | Pos::Gen | Pos::Adj | Pos::Noun))
                .unwrap_or(false);
            if !next_is_np {
                toks[0].pos = Pos::Noun;
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Item {
    Np { span: Vec<usize>, head: usize },
    Verb { aux: Vec<usize>, verb: usize, passive: bool },
    Copula { aux: Vec<usize>, verb: usize },
    Prep(usize),
    WhAdv(usize),
    Conj(usize),
}

fn chunk(toks: &[Tok], lexicon: &Lexicon) -> Vec<Item> {
    let mut items = Vec::new();
    let mut i = 0;
    let n = toks.len();
    let mut pending_aux: Vec<usize> = Vec::new();
    while i < n {
        match toks[i].pos {
            Pos::Det | Pos::Gen | Pos::Adj | Pos::Noun => {
                let mut span = vec![i];
                let standalone = toks[i].pos == Pos::Noun && toks[i].is_bare_pronoun();
                i += 1;
                if !standalone {
                    while i < n {
                        let t = &toks[i];
                        let breaks = t.is_bare_pronoun()
                            || t.pos == Pos::Det
                            || t.after_comma
                            || !matches!(t.pos, Pos::Adj | Pos::Noun | Pos::Gen);
                        if breaks {
                            break;
                        }
                        span.push(i);
                        i += 1;
                    }
                }
                let head = np_head(toks, &span, lexicon);
                // bare wh-adverbs are their own item, not a noun phrase
                if span.len() == 1 && WH_ADVERBS.contains(&toks[span[0]].lower().as_str()) {
                    items.push(Item::WhAdv(span[0]));
                } else {
                    items.push(Item::Np { span, head });
                }
            }
            Pos::Aux => {
                pending_aux.push(i);
                i += 1;
                if i >= n || toks[i].pos != Pos::Verb {
                    let verb_later = toks[i..].iter().any(|t| t.pos == Pos::Verb);
                    let all_be = pending_aux
                        .iter()
                        .all(|&a| BE_FORMS.contains(&toks[a].lower().as_str()));
                    if !verb_later && all_be {
                        let verb = *pending_aux.last().unwrap();
                        let aux = pending_aux[..pending_aux.len() - 1].to_vec();
                        items.push(Item::Copula { aux, verb });
                        pending_aux = Vec::new();
                    }
                }
            }
            Pos::Verb => {
                let aux = std::mem::take(&mut pending_aux);
                let lw = toks[i].lower();
                let past = lw.ends_with("ed") || irregular_past(&lw);
                let be_aux = aux
                    .iter()
                    .any(|&a| BE_FORMS.contains(&toks[a].lower().as_str()));
                items.push(Item::Verb { aux, verb: i, passive: past && be_aux });
                i += 1;
            }
            Pos::Prep => {
                items.push(Item::Prep(i));
                i += 1;
            }
            Pos::Conj => {
                items.push(Item::Conj(i));
                i += 1;
            }
        }
    }
    items
}

fn irregular_past(w: &str) -> bool {
    matches!(w, "won" | "lost" | "threw" | "thrown" | "pled" | "slept" | "sued")
}

/// The head of a noun-phrase span: the last noun, except that a title
/// noun followed only by capitalized name tokens heads the phrase
/// ("U.S. District Judge William Pauley III" reads as a judge).
fn np_head(toks: &[Tok], span: &[usize], lexicon: &Lexicon) -> usize {
    let nouns: Vec<usize> = span
        .iter()
        .copied()
        .filter(|&i| toks[i].pos == Pos::Noun)
        .collect();
    if nouns.is_empty() {
        return *span.last().unwrap();
    }
    for (k, &i) in nouns.iter().enumerate() {
        if lexicon.is_title(&toks[i].word) && k + 1 < nouns.len() {
            let rest_caps = nouns[k + 1..]
                .iter()
                .all(|&j| toks[j].word.chars().next().map(|c| c.is_uppercase()).unwrap_or(false));
            if rest_caps {
                return i;
            }
        }
    }
    *nouns.last().unwrap()
}

#[derive(Debug, Clone)]
struct Link {
    dep: usize,
    head: Option<usize>,
    relation: &'static str,
}

fn attach(toks: &[Tok], items: &[Item]) -> Result<Vec<Link>, DepError> {
    let mut links: Vec<Link> = Vec::new();

    let mut root: Option<usize> = None;
    let mut main_verb: Option<usize> = None;
    let mut current_verb: Option<usize> = None;
    let mut current_verb_has_obj = false;
    let mut subject_pending: Option<usize> = None;
    let mut sub_subject: Option<usize> = None;
    let mut copula_wants_subject = false;
    let mut last_np_head: Option<usize> = None;
    let mut nouns_since_verb: Vec<usize> = Vec::new();
    let mut wh_pending: Vec<usize> = Vec::new();
    let mut pending_prep: Option<usize> = None;
    let mut pending_conj: Option<(usize, usize)> = None;
    let mut expecting_gerund: Option<usize> = None;

    let link = |links: &mut Vec<Link>, dep: usize, head: Option<usize>, relation: &'static str| {
        links.push(Link { dep, head, relation });
    };

    let mut k = 0;
    while k < items.len() {
        match &items[k] {
            Item::Np { span, head } => {
                for &i in span {
                    if i == *head {
                        continue;
                    }
                    let rel = match toks[i].pos {
                        Pos::Det => "det",
                        Pos::Gen => "gen",
                        Pos::Adj => "mod",
                        _ => "nn",
                    };
                    link(&mut links, i, Some(*head), rel);
                }

                if let Some(p) = pending_prep.take() {
                    link(&mut links, *head, Some(p), "pcomp-n");
                    nouns_since_verb.push(*head);
                    last_np_head = Some(*head);
                } else if let Some((cj, left)) = pending_conj.take() {
                    link(&mut links, cj, Some(left), "u");
                    link(&mut links, *head, Some(left), "conj");
                    // the pair keeps acting through its left head
                } else if toks[span[0]].after_comma && last_np_head.is_some() {
                    link(&mut links, *head, last_np_head, "appo");
                    last_np_head = Some(*head);
                } else if copula_wants_subject {
                    link(&mut links, *head, current_verb, "s");
                    copula_wants_subject = false;
                    nouns_since_verb.push(*head);
                    last_np_head = Some(*head);
                } else if toks[*head].is_bare_pronoun()
                    && last_np_head.is_some()
                    && matches!(items.get(k + 1), Some(Item::Verb { .. }))
                {
                    // relative clause opens: "lawsuit it filed ...",
                    // "the companies who filed ..."
                    sub_subject = Some(*head);
                } else if current_verb.is_none() {
                    if subject_pending.is_some() {
                        // two bare noun phrases before any verb fall
                        // outside the subset
                        return Err(DepError::OutOfSubset {
                            token: toks[*head].word.clone(),
                        });
                    }
                    subject_pending = Some(*head);
                    last_np_head = Some(*head);
                } else if !current_verb_has_obj {
                    link(&mut links, *head, current_verb, "obj");
                    current_verb_has_obj = true;
                    nouns_since_verb.push(*head);
                    last_np_head = Some(*head);
                } else {
                    return Err(DepError::OutOfSubset {
                        token: toks[*head].word.clone(),
                    });
                }
            }
            Item::Verb { aux, verb, passive } => {
                for &a in aux {
                    link(&mut links, a, Some(*verb), "aux");
                }
                if let Some(p) = expecting_gerund.take() {
                    // gerund complement of a preposition
                    link(&mut links, *verb, Some(p), "pcomp-c");
                    current_verb = Some(*verb);
                    current_verb_has_obj = false;
                    nouns_since_verb.clear();
                    k += 1;
                    continue;
                }
                if let Some(s) = sub_subject.take() {
                    // relative clause verb: anchor on the preceding noun
                    if let Some(anchor) = last_np_head {
                        link(&mut links, *verb, Some(anchor), "rel");
                    }
                    link(&mut links, s, Some(*verb), "s");
                } else if main_verb.is_none() && current_verb.is_none() {
                    root = Some(*verb);
                    main_verb = Some(*verb);
                    link(&mut links, *verb, None, "i");
                    if let Some(s) = subject_pending.take() {
                        let rel = if *passive { "obj" } else { "s" };
                        link(&mut links, s, Some(*verb), rel);
                    }
                } else {
                    // reduced relative: "cases initiated by it"
                    match last_np_head {
                        Some(anchor) => link(&mut links, *verb, Some(anchor), "rel"),
                        None => {
                            return Err(DepError::OutOfSubset {
                                token: toks[*verb].word.clone(),
                            })
                        }
                    }
                }
                for w in wh_pending.drain(..) {
                    link(&mut links, w, Some(*verb), "wh");
                }
                current_verb = Some(*verb);
                current_verb_has_obj = false;
                nouns_since_verb.clear();
            }
            Item::Copula { aux, verb } => {
                for &a in aux {
                    link(&mut links, a, Some(*verb), "aux");
                }
                root = Some(*verb);
                main_verb = Some(*verb);
                current_verb = Some(*verb);
                current_verb_has_obj = false;
                link(&mut links, *verb, None, "i");
                if let Some(s) = subject_pending.take() {
                    link(&mut links, s, Some(*verb), "s");
                } else {
                    copula_wants_subject = true;
                }
                for w in wh_pending.drain(..) {
                    link(&mut links, w, Some(*verb), "wh");
                }
                nouns_since_verb.clear();
            }
            Item::Prep(p) => {
                let governor = nouns_since_verb
                    .last()
                    .copied()
                    .or(current_verb)
                    .or(subject_pending)
                    .or(last_np_head);
                match governor {
                    Some(g) => link(&mut links, *p, Some(g), "mod"),
                    None => {
                        return Err(DepError::OutOfSubset {
                            token: toks[*p].word.clone(),
                        })
                    }
                }
                match items.get(k + 1) {
                    Some(Item::Verb { .. }) => expecting_gerund = Some(*p),
                    Some(Item::Np { .. }) => pending_prep = Some(*p),
                    _ => {
                        return Err(DepError::OutOfSubset {
                            token: toks[*p].word.clone(),
                        })
                    }
                }
            }
            Item::WhAdv(w) => {
                wh_pending.push(*w);
            }
            Item::Conj(c) => match (last_np_head, items.get(k + 1)) {
                (Some(left), Some(Item::Np { .. })) => {
                    pending_conj = Some((*c, left));
                }
                _ => {
                    return Err(DepError::OutOfSubset {
                        token: toks[*c].word.clone(),
                    })
                }
            },
        }
        k += 1;
    }

    // no verb at all: the sentence is nominal and its first noun phrase
    // serves as the root ("List of judges who preside ...")
    if root.is_none() {
        if let Some(s) = subject_pending.take() {
            link(&mut links, s, None, "i");
            root = Some(s);
        }
    } else if let Some(s) = subject_pending.take() {
        link(&mut links, s, root, "pred");
    }
    let root = match root {
        Some(r) => r,
        None => {
            return Err(DepError::OutOfSubset {
                token: toks[0].word.clone(),
            })
        }
    };
    for w in wh_pending.drain(..) {
        link(&mut links, w, Some(root), "wh");
    }

    for (i, t) in toks.iter().enumerate() {
        let count = links.iter().filter(|l| l.dep == i).count();
        if count != 1 {
            return Err(DepError::OutOfSubset { token: t.word.clone() });
        }
    }
    Ok(links)
}

fn build_graph(toks: &[Tok], links: &[Link]) -> Result<DepGraph, DepError> {
    let mut tokens: Vec<DepToken> = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        let l = links.iter().find(|l| l.dep == i).expect("all tokens linked");
        let (pos, word) = match t.pos {
            Pos::Verb => ("V", verb_lemma(&t.word).unwrap_or(&t.word).to_string()),
            Pos::Aux if l.relation == "i" => ("VBE", "be".to_string()),
            Pos::Aux => ("Aux", t.word.clone()),
            Pos::Det => ("Det", t.word.clone()),
            Pos::Gen => ("N", t.word.clone()),
            Pos::Adj => ("A", t.word.clone()),
            Pos::Prep => ("Prep", t.word.clone()),
            Pos::Conj => ("U", t.word.clone()),
            Pos::Noun => ("N", t.word.clone()),
        };
        let head = match l.head {
            None => Head::Root,
            Some(h) => Head::Token {
                word: toks[h].word.clone(),
                offset: h + 1,
            },
        };
        tokens.push(DepToken {
            offset: i + 1,
            pos: pos.to_string(),
            relation: l.relation.to_string(),
            word,
            head,
        });
    }
    let graph = DepGraph { tokens, sentence_index: 0 };
    graph.validate()?;
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> Lexicon {
        Lexicon {
            multiword_names: vec!["Electronic Frontier Foundation".into()],
            title_nouns: vec!["Judge".into(), "Justice".into(), "judge".into()],
        }
    }

    fn rel_of<'a>(g: &'a DepGraph, word: &str) -> (&'a str, Option<usize>) {
        let t = g.tokens.iter().find(|t| t.word == word).unwrap();
        (t.relation.as_str(), t.head_offset())
    }

    #[test]
    fn parses_simple_svo_with_verb_prep() {
        let g = mini_parse("AT&T file against Microsoft", &lex()).unwrap();
        let (rel, head) = rel_of(&g, "AT&T");
        assert_eq!(rel, "s");
        assert_eq!(g.token(head.unwrap()).unwrap().word, "file");
        let (rel, head) = rel_of(&g, "against");
        assert_eq!(rel, "mod");
        assert_eq!(g.token(head.unwrap()).unwrap().word, "file");
        let (rel, head) = rel_of(&g, "Microsoft");
        assert_eq!(rel, "pcomp-n");
        assert_eq!(g.token(head.unwrap()).unwrap().word, "against");
    }

    #[test]
    fn parses_wh_object_question() {
        let g = mini_parse("Microsoft sues whom?", &lex()).unwrap();
        let (rel, head) = rel_of(&g, "whom");
        assert_eq!(rel, "obj");
        assert_eq!(g.token(head.unwrap()).unwrap().word, "sue");
        let (rel, _) = rel_of(&g, "Microsoft");
        assert_eq!(rel, "s");
    }

    #[test]
    fn lemmatizes_verbs() {
        let g = mini_parse("Microsoft sued Excite", &lex()).unwrap();
        assert!(g.tokens.iter().any(|t| t.word == "sue" && t.pos == "V"));
    }

    #[test]
    fn rejects_dangling_preposition() {
        let err = mini_parse("Colorless green ideas sleep furiously between", &lex()).unwrap_err();
        match err {
            DepError::OutOfSubset { token } => assert_eq!(token, "between"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn title_noun_heads_name_run() {
        let g = mini_parse("the judge James Ware has sided with Microsoft", &lex()).unwrap();
        let judge = g.tokens.iter().find(|t| t.word == "judge").unwrap();
        let james = g.tokens.iter().find(|t| t.word == "James").unwrap();
        assert_eq!(james.relation, "nn");
        assert_eq!(james.head_offset(), Some(judge.offset));
        assert_eq!(judge.relation, "s");
    }

    #[test]
    fn wrapper_is_stripped() {
        let g = mini_parse("Is it true that AT&T sued Microsoft?", &lex()).unwrap();
        assert!(g.tokens.iter().all(|t| t.word.to_lowercase() != "true"));
        let (rel, _) = rel_of(&g, "AT&T");
        assert_eq!(rel, "s");
    }

    #[test]
    fn multiword_name_joined_and_conjoined() {
        let g = mini_parse(
            "Google and Electronic Frontier Foundation file amicus brief",
            &lex(),
        )
        .unwrap();
        let eff = g
            .tokens
            .iter()
            .find(|t| t.word == "Electronic Frontier Foundation")
            .unwrap();
        assert_eq!(eff.relation, "conj");
        let google = g.tokens.iter().find(|t| t.word == "Google").unwrap();
        assert_eq!(eff.head_offset(), Some(google.offset));
        assert_eq!(google.relation, "s");
    }

    #[test]
    fn wh_adverb_attaches_to_verb() {
        let g = mini_parse("When did AT&T file its case against Microsoft?", &lex()).unwrap();
        let when = g.tokens.iter().find(|t| t.word == "When").unwrap();
        assert_eq!(when.relation, "wh");
        let file = g.tokens.iter().find(|t| t.word == "file").unwrap();
        assert_eq!(when.head_offset(), Some(file.offset));
        let its = g.tokens.iter().find(|t| t.word == "its").unwrap();
        assert_eq!(its.relation, "gen");
        let against = g.tokens.iter().find(|t| t.word == "against").unwrap();
        let case = g.tokens.iter().find(|t| t.word == "case").unwrap();
        assert_eq!(against.head_offset(), Some(case.offset));
    }

    #[test]
    fn copula_question_parses() {
        let g = mini_parse("When was the filing of the case against Microsoft?", &lex()).unwrap();
        let root = g.root().unwrap();
        assert_eq!(root.word, "be");
        let filing = g.tokens.iter().find(|t| t.word == "filing").unwrap();
        assert_eq!(filing.relation, "s");
        let of = g.tokens.iter().find(|t| t.word == "of").unwrap();
        assert_eq!(of.head_offset(), Some(filing.offset));
    }

    #[test]
    fn object_gap_relative_clause() {
        let g = mini_parse(
            "A federal court has sided with AT&T over a complex patent lawsuit it filed against Microsoft",
            &lex(),
        )
        .unwrap();
        let it = g.tokens.iter().find(|t| t.word == "it").unwrap();
        let file = g.tokens.iter().find(|t| t.word == "file").unwrap();
        assert_eq!(it.relation, "s");
        assert_eq!(it.head_offset(), Some(file.offset));
        // rel link anchors the clause on the gap noun
        assert_eq!(file.relation, "rel");
        let lawsuit = g.tokens.iter().find(|t| t.word == "lawsuit").unwrap();
        assert_eq!(file.head_offset(), Some(lawsuit.offset));
        // "against" attaches to the verb: no intervening noun
        let against = g.tokens.iter().find(|t| t.word == "against").unwrap();
        assert_eq!(against.head_offset(), Some(file.offset));
    }

    #[test]
    fn imperative_with_subject_relative() {
        let g = mini_parse(
            "Name the companies who filed complex patent lawsuit against Microsoft?",
            &lex(),
        )
        .unwrap();
        let name = g.tokens.iter().find(|t| t.word == "name").unwrap();
        assert_eq!(name.relation, "i");
        let companies = g.tokens.iter().find(|t| t.word == "companies").unwrap();
        assert_eq!(companies.relation, "obj");
        assert_eq!(companies.head_offset(), Some(name.offset));
        let who = g.tokens.iter().find(|t| t.word == "who").unwrap();
        let file = g.tokens.iter().find(|t| t.word == "file").unwrap();
        assert_eq!(who.relation, "s");
        assert_eq!(who.head_offset(), Some(file.offset));
        let lawsuit = g.tokens.iter().find(|t| t.word == "lawsuit").unwrap();
        assert_eq!(lawsuit.relation, "obj");
        assert_eq!(lawsuit.head_offset(), Some(file.offset));
        let against = g.tokens.iter().find(|t| t.word == "against").unwrap();
        assert_eq!(against.head_offset(), Some(lawsuit.offset));
    }

    #[test]
    fn passive_reduced_relative() {
        let g = mini_parse("Name the companies sued by Microsoft", &lex()).unwrap();
        let companies = g.tokens.iter().find(|t| t.word == "companies").unwrap();
        assert_eq!(companies.relation, "obj");
        let sue = g.tokens.iter().find(|t| t.word == "sue").unwrap();
        assert_eq!(sue.relation, "rel");
        assert_eq!(sue.head_offset(), Some(companies.offset));
        let by = g.tokens.iter().find(|t| t.word == "by").unwrap();
        assert_eq!(by.head_offset(), Some(sue.offset));
    }

    #[test]
    fn nominal_root_question() {
        let g = mini_parse("List of judges who preside over cases file by Microsoft?", &lex())
            .unwrap();
        let root = g.root().unwrap();
        assert_eq!(root.word, "List");
        let who = g.tokens.iter().find(|t| t.word == "who").unwrap();
        let preside = g.tokens.iter().find(|t| t.word == "preside").unwrap();
        assert_eq!(who.head_offset(), Some(preside.offset));
        let file = g.tokens.iter().find(|t| t.word == "file").unwrap();
        assert_eq!(file.relation, "rel");
    }

    #[test]
    fn appositive_after_comma() {
        let g = mini_parse("Andrew Garcia, a former employee, sued Microsoft", &lex()).unwrap();
        let employee = g.tokens.iter().find(|t| t.word == "employee").unwrap();
        assert_eq!(employee.relation, "appo");
        let garcia = g.tokens.iter().find(|t| t.word == "Garcia").unwrap();
        assert_eq!(employee.head_offset(), Some(garcia.offset));
    }
}
