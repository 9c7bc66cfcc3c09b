//! Terms and clause forms of the XI representation language.
//!
//! A term is a variable, an instance symbol or a complex term
//! `f(t1, ..., tn)`. Unary complex terms denote classes, binary ones
//! denote attributes. O-clauses define the class hierarchy and
//! instances, P-clauses attach attributes, G-clauses are goals.

use std::fmt;

/// A term of the definitional component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// A variable such as `X` or the anonymous `_`.
    Var(String),
    /// An instance symbol (0-ary functor).
    Atom(String),
    /// A complex term `f(t1, ..., tn)`.
    Compound { functor: String, args: Vec<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn atom(name: impl Into<String>) -> Self {
        Term::Atom(name.into())
    }

    pub fn compound(functor: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Compound {
            functor: functor.into(),
            args,
        }
    }

    /// The anonymous variable matches any value.
    pub fn is_wildcard(&self) -> bool {
        matches!(self, Term::Var(v) if v == "_")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Atom(a) => write!(f, "{a}"),
            Term::Compound { functor, args } => {
                write!(f, "{functor}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A class term `f(t1)` where the argument is a variable or instance symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassTerm {
    pub name: String,
    pub arg: Term,
}

impl ClassTerm {
    pub fn new(name: impl Into<String>, arg: Term) -> Self {
        ClassTerm {
            name: name.into(),
            arg,
        }
    }
}

impl fmt::Display for ClassTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.arg)
    }
}

/// An attribute term `p(t1, t2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttributeTerm {
    pub name: String,
    pub subject: Term,
    pub value: Term,
}

impl AttributeTerm {
    pub fn new(name: impl Into<String>, subject: Term, value: Term) -> Self {
        AttributeTerm {
            name: name.into(),
            subject,
            value,
        }
    }
}

impl fmt::Display for AttributeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.name, self.subject, self.value)
    }
}

/// O-clauses define classes (kind 1) and instances (kind 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OClause {
    /// `c => D1 & ... & Dn` where each `D` is a disjunction of class terms.
    ClassDef {
        head: ClassTerm,
        body: Vec<Vec<ClassTerm>>,
    },
    /// `e <- c1 & ... & cn` declaring instance `e` under the classes `ci`.
    InstanceDecl { instance: String, classes: Vec<ClassTerm> },
}

/// One attribute of a P-clause, optionally guarded by a goal
/// (`p(t1, t2) :- G`). The guard must be proven before the attribute
/// becomes visible.
#[derive(Debug, Clone, PartialEq)]
pub struct GuardedProp {
    pub attr: AttributeTerm,
    pub guard: Option<GClause>,
}

/// The owner of a P-clause: an instance symbol or a class term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropOwner {
    Instance(String),
    Class(ClassTerm),
}

/// `props(c, [p1, p2, ...])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PClause {
    pub owner: PropOwner,
    pub props: Vec<GuardedProp>,
}

/// G-clauses are goals: the three leaf forms plus conjunction and
/// disjunction.
#[derive(Debug, Clone, PartialEq)]
pub enum GClause {
    /// `c1 => c2`: c2 is a kind of c1's class... read as subclass(c2, c1)
    /// after the declaring direction of kind-1 O-clauses.
    Subclass { sub: String, sup: String },
    /// `e <- c(X)`.
    InstanceOf { instance: String, class: String },
    /// `hasprop(e, p(e, t))`.
    HasProp { instance: String, attr: AttributeTerm },
    Conj(Box<GClause>, Box<GClause>),
    Disj(Box<GClause>, Box<GClause>),
}

/// Value constraint carried by an attribute schema entry: atomic (`_`)
/// or a disjunction of entity class names (`person(_)|organization(_)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueConstraint {
    Atomic,
    Classes(Vec<String>),
}

/// A declared attribute of a class, as read from an `attribute(...)` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSchema {
    pub class: String,
    pub attr: String,
    pub constraint: ValueConstraint,
}

/// Response template attached to an event attribute.
///
/// Placeholders are uppercase names in angle brackets: `<ANSWER>`,
/// `<EVENT>` or a declared event attribute such as `<PLAINTIFF>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResponseTemplate {
    pub attr: String,
    pub text: String,
}

/// One rendering segment of a template: the literal text leading up to a
/// placeholder (if any). Segments with an optional placeholder are elided
/// as a unit when the placeholder has no value to show.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateSegment {
    pub literal: String,
    pub placeholder: Option<String>,
}

impl ResponseTemplate {
    pub fn fallback() -> Self {
        ResponseTemplate {
            attr: String::new(),
            text: "<ANSWER>".to_string(),
        }
    }

    /// Split the template into segments, one per placeholder plus a
    /// trailing literal-only segment if the text ends with plain text.
    pub fn segments(&self) -> Vec<TemplateSegment> {
        let mut out = Vec::new();
        let mut literal = String::new();
        let mut rest = self.text.as_str();
        while let Some(open) = rest.find('<') {
            if let Some(close) = rest[open..].find('>') {
                let name = &rest[open + 1..open + close];
                if !name.is_empty() && name.chars().all(|c| c.is_ascii_uppercase() || c == '_') {
                    literal.push_str(&rest[..open]);
                    out.push(TemplateSegment {
                        literal: std::mem::take(&mut literal),
                        placeholder: Some(name.to_string()),
                    });
                    rest = &rest[open + close + 1..];
                    continue;
                }
            }
            // not a placeholder; keep the '<' as literal text
            literal.push_str(&rest[..=open]);
            rest = &rest[open + 1..];
        }
        literal.push_str(rest);
        if !literal.is_empty() {
            out.push(TemplateSegment {
                literal,
                placeholder: None,
            });
        }
        out
    }

    /// Placeholder names occurring in the template.
    pub fn placeholders(&self) -> Vec<String> {
        self.segments()
            .into_iter()
            .filter_map(|s| s.placeholder)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_display_round() {
        let t = Term::compound(
            "name",
            vec![Term::atom("g1"), Term::atom("mahkamah_majistret_shahalam")],
        );
        assert_eq!(t.to_string(), "name(g1, mahkamah_majistret_shahalam)");
    }

    #[test]
    fn template_segmentation() {
        let t = ResponseTemplate {
            attr: "occur_on".into(),
            text: "<EVENT> took place on <ANSWER> by <PLAINTIFF>".into(),
        };
        let segs = t.segments();
        assert_eq!(segs.len(), 3);
        assert_eq!(segs[0].placeholder.as_deref(), Some("EVENT"));
        assert_eq!(segs[1].literal, " took place on ");
        assert_eq!(segs[1].placeholder.as_deref(), Some("ANSWER"));
        assert_eq!(segs[2].literal, " by ");
        assert_eq!(segs[2].placeholder.as_deref(), Some("PLAINTIFF"));
        assert_eq!(t.placeholders(), vec!["EVENT", "ANSWER", "PLAINTIFF"]);
    }

    #[test]
    fn template_with_trailing_literal() {
        let t = ResponseTemplate {
            attr: "x".into(),
            text: "<ANSWER> chaired the <EVENT> of the case".into(),
        };
        let segs = t.segments();
        assert_eq!(segs.len(), 3);
        assert_eq!(segs[2].literal, " of the case");
        assert_eq!(segs[2].placeholder, None);
    }
}
