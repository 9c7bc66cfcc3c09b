//! Line-oriented parser for the ASCII clause syntax.
//!
//! One clause per line; `#` starts a comment. The forms are
//! `name(X) => a(X) | b(X)`, `e <- c(X)`,
//! `attribute(c(X), [p(X,_), q(X, d(_))])`, `props(e, [p(e, v)])` and
//! `template(attr, "...")`.

use super::term::{
    AttributeSchema, AttributeTerm, ClassTerm, GClause, GuardedProp, OClause, PClause, PropOwner,
    ResponseTemplate, Term, ValueConstraint,
};
use super::XiError;

/// A single parsed clause line.
#[derive(Debug, Clone, PartialEq)]
pub enum Clause {
    O(OClause),
    Attribute { class: ClassTerm, schemas: Vec<AttributeSchema> },
    P(PClause),
    Template(ResponseTemplate),
}

pub fn parse_clauses(text: &str) -> Result<Vec<Clause>, XiError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let clause = Parser::new(line)
            .clause()
            .map_err(|msg| XiError::Parse { line: idx + 1, msg })?;
        out.push(clause);
    }
    Ok(out)
}

fn strip_comment(line: &str) -> &str {
    // a '#' inside a quoted template string does not open a comment
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, String>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(format!("expected `{tok}` at `{}`", truncate(self.rest())))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        for c in self.rest().chars() {
            if c.is_alphanumeric() || matches!(c, '_' | '&' | '\'' | '.' | '-') {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(format!("expected identifier at `{}`", truncate(self.rest())));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn quoted(&mut self) -> PResult<String> {
        self.expect("\"")?;
        let start = self.pos;
        while !self.rest().starts_with('"') {
            if self.rest().is_empty() {
                return Err("unterminated string".to_string());
            }
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
        let s = self.src[start..self.pos].to_string();
        self.pos += 1;
        Ok(s)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn clause(&mut self) -> PResult<Clause> {
        self.skip_ws();
        let save = self.pos;
        let head = self.ident()?;
        match head.as_str() {
            "attribute" => {
                let c = self.attribute_clause()?;
                self.finish()?;
                Ok(c)
            }
            "props" => {
                let c = self.props_clause()?;
                self.finish()?;
                Ok(c)
            }
            "template" => {
                let c = self.template_clause()?;
                self.finish()?;
                Ok(c)
            }
            _ => {
                self.pos = save;
                let c = self.o_clause()?;
                self.finish()?;
                Ok(c)
            }
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(format!("unexpected trailing input `{}`", truncate(self.rest())))
        }
    }

    /// `name(X) => a(X) | b(X) & c(X)` or `e <- c(X) & d(X)`.
    fn o_clause(&mut self) -> PResult<Clause> {
        let name = self.ident()?;
        self.skip_ws();
        if self.rest().starts_with('(') {
            let head = self.class_term_with(name)?;
            self.expect("=>")?;
            let mut body = Vec::new();
            loop {
                let mut group = vec![self.class_term()?];
                while self.eat("|") {
                    group.push(self.class_term()?);
                }
                body.push(group);
                if !self.eat("&") {
                    break;
                }
            }
            let head_var = match &head.arg {
                Term::Var(v) => v.clone(),
                _ => return Err(format!("class head `{head}` must carry a variable")),
            };
            for group in &body {
                for ct in group {
                    if ct.arg != Term::Var(head_var.clone()) {
                        return Err(format!(
                            "class term `{ct}` does not share the head variable {head_var}"
                        ));
                    }
                }
            }
            Ok(Clause::O(OClause::ClassDef { head, body }))
        } else {
            self.expect("<-")?;
            let mut classes = vec![self.class_term()?];
            while self.eat("&") {
                classes.push(self.class_term()?);
            }
            let first = classes[0].arg.clone();
            if classes.iter().any(|c| c.arg != first) {
                return Err("instance declaration classes must share one variable".to_string());
            }
            Ok(Clause::O(OClause::InstanceDecl { instance: name, classes }))
        }
    }

    fn class_term(&mut self) -> PResult<ClassTerm> {
        let name = self.ident()?;
        self.class_term_with(name)
    }

    fn class_term_with(&mut self, name: String) -> PResult<ClassTerm> {
        self.expect("(")?;
        let arg = self.term()?;
        self.expect(")")?;
        Ok(ClassTerm::new(name, arg))
    }

    fn term(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.rest().starts_with('"') {
            return Ok(Term::Atom(self.quoted()?));
        }
        let name = self.ident()?;
        self.skip_ws();
        if self.rest().starts_with('(') {
            self.expect("(")?;
            let mut args = Vec::new();
            if !self.eat(")") {
                args.push(self.term()?);
                while self.eat(",") {
                    args.push(self.term()?);
                }
                self.expect(")")?;
            }
            return Ok(Term::compound(name, args));
        }
        if name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') {
            Ok(Term::Var(name))
        } else {
            Ok(Term::Atom(name))
        }
    }

    /// `attribute(c(X), [p(X, _), q(X, d(_)|e(_))])`
    fn attribute_clause(&mut self) -> PResult<Clause> {
        self.expect("(")?;
        let class = self.class_term()?;
        self.expect(",")?;
        self.expect("[")?;
        let mut schemas = Vec::new();
        if !self.eat("]") {
            loop {
                schemas.push(self.attribute_schema(&class)?);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect(")")?;
        Ok(Clause::Attribute { class, schemas })
    }

    fn attribute_schema(&mut self, class: &ClassTerm) -> PResult<AttributeSchema> {
        let attr = self.ident()?;
        self.expect("(")?;
        let subject = self.term()?;
        if subject != class.arg {
            return Err(format!(
                "attribute `{attr}` must take the class variable {}",
                class.arg
            ));
        }
        self.expect(",")?;
        let mut alts = Vec::new();
        loop {
            let t = self.term()?;
            match t {
                Term::Var(_) => {
                    if !alts.is_empty() {
                        return Err("cannot mix `_` with class constraints".to_string());
                    }
                    self.expect(")")?;
                    return Ok(AttributeSchema {
                        class: class.name.clone(),
                        attr,
                        constraint: ValueConstraint::Atomic,
                    });
                }
                Term::Compound { functor, args } if args.len() == 1 => {
                    alts.push(functor);
                }
                other => return Err(format!("bad value constraint `{other}`")),
            }
            if !self.eat("|") && !self.eat(";") {
                break;
            }
        }
        self.expect(")")?;
        Ok(AttributeSchema {
            class: class.name.clone(),
            attr,
            constraint: ValueConstraint::Classes(alts),
        })
    }

    /// `props(e, [p(e, v), p2(e, v) :- G])` or `props(c(X), [...])`
    fn props_clause(&mut self) -> PResult<Clause> {
        self.expect("(")?;
        let owner_name = self.ident()?;
        self.skip_ws();
        let owner = if self.rest().starts_with('(') {
            PropOwner::Class(self.class_term_with(owner_name)?)
        } else {
            PropOwner::Instance(owner_name)
        };
        self.expect(",")?;
        self.expect("[")?;
        let mut props = Vec::new();
        if !self.eat("]") {
            loop {
                let name = self.ident()?;
                self.expect("(")?;
                let subject = self.term()?;
                self.expect(",")?;
                let value = self.term()?;
                self.expect(")")?;
                let guard = if self.eat(":-") { Some(self.g_clause()?) } else { None };
                props.push(GuardedProp {
                    attr: AttributeTerm::new(name, subject, value),
                    guard,
                });
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        self.expect(")")?;
        Ok(Clause::P(PClause { owner, props }))
    }

    /// Goal grammar: `;` binds looser than `,`; leaves are
    /// `a(X) => b(X)`, `e <- c(X)` and `hasprop(e, p(e, t))`.
    fn g_clause(&mut self) -> PResult<GClause> {
        let mut left = self.g_conj()?;
        while self.eat(";") {
            let right = self.g_conj()?;
            left = GClause::Disj(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn g_conj(&mut self) -> PResult<GClause> {
        let mut left = self.g_leaf()?;
        loop {
            // a comma only continues the conjunction when a goal follows;
            // inside prop lists the comma may instead separate props, so
            // backtrack if no goal parses.
            let save = self.pos;
            if !self.eat(",") {
                break;
            }
            match self.g_leaf() {
                Ok(right) => left = GClause::Conj(Box::new(left), Box::new(right)),
                Err(_) => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(left)
    }

    fn g_leaf(&mut self) -> PResult<GClause> {
        self.skip_ws();
        if self.eat("(") {
            let g = self.g_clause()?;
            self.expect(")")?;
            return Ok(g);
        }
        let name = self.ident()?;
        if name == "hasprop" {
            self.expect("(")?;
            let instance = self.ident()?;
            self.expect(",")?;
            let attr_name = self.ident()?;
            self.expect("(")?;
            let subject = self.term()?;
            self.expect(",")?;
            let value = self.term()?;
            self.expect(")")?;
            self.expect(")")?;
            return Ok(GClause::HasProp {
                instance,
                attr: AttributeTerm::new(attr_name, subject, value),
            });
        }
        self.skip_ws();
        if self.rest().starts_with('(') {
            let sup = self.class_term_with(name)?;
            self.expect("=>")?;
            let sub = self.class_term()?;
            return Ok(GClause::Subclass {
                sub: sub.name,
                sup: sup.name,
            });
        }
        self.expect("<-")?;
        let class = self.class_term()?;
        Ok(GClause::InstanceOf {
            instance: name,
            class: class.name,
        })
    }

    /// `template(attr, "...")`
    fn template_clause(&mut self) -> PResult<Clause> {
        self.expect("(")?;
        let attr = self.ident()?;
        self.expect(",")?;
        let text = self.quoted()?;
        self.expect(")")?;
        Ok(Clause::Template(ResponseTemplate { attr, text }))
    }
}

fn truncate(s: &str) -> &str {
    &s[..s.len().min(24)]
}
