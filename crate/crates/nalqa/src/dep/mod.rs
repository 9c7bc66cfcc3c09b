//! Dependency parses for the pipeline: a portable parse-file format
//! mirroring the external parser's column layout, plus a minimal
//! deterministic parser for the constrained question/news subset.

pub mod mini;

pub use mini::{is_function_word, mini_parse, verb_lemma, Lexicon};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DepError {
    #[error("malformed line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("sentence {sentence}: token {offset} is its own head")]
    SelfHead { sentence: usize, offset: usize },
    #[error("sentence {sentence}: multiple root markers")]
    MultipleRoots { sentence: usize },
    #[error("sentence {sentence}: no root marker")]
    MissingRoot { sentence: usize },
    #[error("sentence {sentence}: head links do not form a tree")]
    NotATree { sentence: usize },
    #[error("cannot parse `{token}`: outside the supported sentence subset")]
    OutOfSubset { token: String },
}

/// The head of a token: another token (by offset) or the sentence root
/// marker `E0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Head {
    Root,
    Token { word: String, offset: usize },
}

/// One token row: offset, grammatical category, dependency relation,
/// word (verbs lemmatized) and head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepToken {
    pub offset: usize,
    pub pos: String,
    pub relation: String,
    pub word: String,
    pub head: Head,
}

impl DepToken {
    pub fn head_offset(&self) -> Option<usize> {
        match &self.head {
            Head::Root => None,
            Head::Token { offset, .. } => Some(*offset),
        }
    }
}

/// A per-sentence dependency graph; head links form a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepGraph {
    pub tokens: Vec<DepToken>,
    pub sentence_index: usize,
}

impl DepGraph {
    pub fn token(&self, offset: usize) -> Option<&DepToken> {
        self.tokens.iter().find(|t| t.offset == offset)
    }

    pub fn dependents(&self, offset: usize) -> impl Iterator<Item = &DepToken> {
        self.tokens
            .iter()
            .filter(move |t| t.head_offset() == Some(offset))
    }

    pub fn root(&self) -> Option<&DepToken> {
        self.tokens.iter().find(|t| t.head == Head::Root)
    }

    fn validate(&self) -> Result<(), DepError> {
        let sentence = self.sentence_index;
        for t in &self.tokens {
            if t.head_offset() == Some(t.offset) {
                return Err(DepError::SelfHead {
                    sentence,
                    offset: t.offset,
                });
            }
        }
        let roots = self.tokens.iter().filter(|t| t.head == Head::Root).count();
        if roots > 1 {
            return Err(DepError::MultipleRoots { sentence });
        }
        if roots == 0 && !self.tokens.is_empty() {
            return Err(DepError::MissingRoot { sentence });
        }
        // every token must reach the root without revisiting a node
        for t in &self.tokens {
            let mut seen = vec![t.offset];
            let mut cur = t;
            while let Some(h) = cur.head_offset() {
                if seen.contains(&h) {
                    return Err(DepError::NotATree { sentence });
                }
                seen.push(h);
                cur = match self.token(h) {
                    Some(tok) => tok,
                    None => return Err(DepError::NotATree { sentence }),
                };
            }
        }
        Ok(())
    }
}

/// Parse a whole file: sentence blocks separated by blank lines, token
/// lines `offset \t pos \t relation \t word \t head_word(head_offset)`,
/// the root written as `fin(E0)`.
pub fn parse_file(text: &str) -> Result<Vec<DepGraph>, DepError> {
    let mut graphs = Vec::new();
    let mut current: Vec<DepToken> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        if line.trim().is_empty() {
            if !current.is_empty() {
                push_graph(&mut graphs, std::mem::take(&mut current))?;
            }
            continue;
        }
        current.push(parse_token_line(line, idx + 1)?);
    }
    if !current.is_empty() {
        push_graph(&mut graphs, current)?;
    }
    Ok(graphs)
}

fn push_graph(graphs: &mut Vec<DepGraph>, tokens: Vec<DepToken>) -> Result<(), DepError> {
    let graph = DepGraph {
        tokens,
        sentence_index: graphs.len(),
    };
    graph.validate()?;
    graphs.push(graph);
    Ok(())
}

fn parse_token_line(line: &str, lineno: usize) -> Result<DepToken, DepError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 5 {
        return Err(DepError::MalformedLine {
            line: lineno,
            msg: format!("expected 5 tab-separated columns, got {}", cols.len()),
        });
    }
    let offset: usize = cols[0].trim().parse().map_err(|_| DepError::MalformedLine {
        line: lineno,
        msg: format!("bad offset `{}`", cols[0]),
    })?;
    let head = parse_head(cols[4].trim()).ok_or_else(|| DepError::MalformedLine {
        line: lineno,
        msg: format!("bad head field `{}`", cols[4]),
    })?;
    Ok(DepToken {
        offset,
        pos: cols[1].trim().to_string(),
        relation: cols[2].trim().to_string(),
        word: cols[3].trim().to_string(),
        head,
    })
}

/// Accepts `word(3)`, `word (3)` and the root forms `fin(E0)` / `fin (E0)`.
fn parse_head(field: &str) -> Option<Head> {
    let open = field.rfind('(')?;
    let close = field.rfind(')')?;
    if close < open {
        return None;
    }
    let word = field[..open].trim().to_string();
    let inside = field[open + 1..close].trim();
    if let Some(root) = inside.strip_prefix('E') {
        root.parse::<usize>().ok()?;
        return Some(Head::Root);
    }
    let offset: usize = inside.parse().ok()?;
    Some(Head::Token { word, offset })
}

/// Write graphs back to the parse-file format (used for test fixtures).
pub fn serialize(graphs: &[DepGraph]) -> String {
    let mut out = String::new();
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for t in &g.tokens {
            let head = match &t.head {
                Head::Root => "fin(E0)".to_string(),
                Head::Token { word, offset } => format!("{word}({offset})"),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                t.offset, t.pos, t.relation, t.word, head
            ));
        }
    }
    out
}

impl fmt::Display for DepGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(std::slice::from_ref(self)))
    }
}
