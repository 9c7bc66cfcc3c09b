//! The XI representation language: class hierarchy, instance
//! declarations, attribute schemas, response templates, and the four
//! goal inference rule families (subclass, instance, attribute, and
//! conjunction/disjunction of those).

mod parse;
mod term;

pub use parse::{parse_clauses, Clause};
pub use term::{
    AttributeSchema, AttributeTerm, ClassTerm, GClause, GuardedProp, OClause, PClause, PropOwner,
    ResponseTemplate, TemplateSegment, Term, ValueConstraint,
};

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum XiError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cycle in the subclass relation through class `{0}`")]
    Cycle(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("template for `{attr}` names `{placeholder}` which is not ANSWER, EVENT or a declared attribute")]
    BadPlaceholder { attr: String, placeholder: String },
}

/// An immutable ontology: once loaded it is only read, so it can be
/// shared freely across concurrent queries.
#[derive(Debug, Clone, Default)]
pub struct Ontology {
    /// class name -> direct superclasses, in declaration order.
    parents: IndexMap<String, Vec<String>>,
    /// instance symbol -> declared classes.
    instances: IndexMap<String, Vec<String>>,
    /// class name -> its own attribute schemas, in declaration order.
    schemas: IndexMap<String, Vec<AttributeSchema>>,
    /// P-clauses in declaration order.
    pclauses: Vec<PClause>,
    /// event attribute -> response template.
    templates: IndexMap<String, ResponseTemplate>,
    /// original clauses, kept for serialization.
    clauses: Vec<Clause>,
}

impl Ontology {
    /// Parse clause text and build the ontology. Rejects cycles in the
    /// subclass relation.
    pub fn load(text: &str) -> Result<Self, XiError> {
        let clauses = parse_clauses(text)?;
        let mut onto = Ontology {
            clauses: clauses.clone(),
            ..Default::default()
        };
        for clause in clauses {
            match clause {
                Clause::O(OClause::ClassDef { head, body }) => {
                    onto.parents.entry(head.name.clone()).or_default();
                    for group in &body {
                        for ct in group {
                            onto.parents
                                .entry(ct.name.clone())
                                .or_default()
                                .push(head.name.clone());
                        }
                    }
                }
                Clause::O(OClause::InstanceDecl { instance, classes }) => {
                    let entry = onto.instances.entry(instance).or_default();
                    for c in classes {
                        entry.push(c.name);
                    }
                }
                Clause::Attribute { class, schemas } => {
                    onto.parents.entry(class.name.clone()).or_default();
                    onto.schemas.entry(class.name).or_default().extend(schemas);
                }
                Clause::P(p) => onto.pclauses.push(p),
                Clause::Template(t) => {
                    onto.templates.insert(t.attr.clone(), t);
                }
            }
        }
        onto.check_acyclic()?;
        onto.check_templates()?;
        Ok(onto)
    }

    fn check_acyclic(&self) -> Result<(), XiError> {
        // DFS with colors over the child -> parent edges
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            Grey,
            Black,
        }
        fn visit(
            node: &str,
            parents: &IndexMap<String, Vec<String>>,
            color: &mut IndexMap<String, Color>,
        ) -> Result<(), XiError> {
            match color.get(node) {
                Some(Color::Black) => return Ok(()),
                Some(Color::Grey) => return Err(XiError::Cycle(node.to_string())),
                _ => {}
            }
            color.insert(node.to_string(), Color::Grey);
            if let Some(ps) = parents.get(node) {
                for p in ps {
                    visit(p, parents, color)?;
                }
            }
            color.insert(node.to_string(), Color::Black);
            Ok(())
        }
        let mut color: IndexMap<String, Color> = IndexMap::new();
        for name in self.parents.keys() {
            visit(name, &self.parents, &mut color)?;
        }
        Ok(())
    }

    fn check_templates(&self) -> Result<(), XiError> {
        let declared: Vec<&str> = self
            .schemas
            .values()
            .flatten()
            .map(|s| s.attr.as_str())
            .collect();
        for t in self.templates.values() {
            for p in t.placeholders() {
                if p != "ANSWER" && p != "EVENT" && !declared.contains(&p.to_lowercase().as_str()) {
                    return Err(XiError::BadPlaceholder {
                        attr: t.attr.clone(),
                        placeholder: p,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_class(&self, name: &str) -> bool {
        self.parents.contains_key(name)
    }

    pub fn class_names(&self) -> impl Iterator<Item = &str> {
        self.parents.keys().map(|k| k.as_str())
    }

    pub fn class_count(&self) -> usize {
        self.parents.len()
    }

    pub fn attribute_names(&self) -> impl Iterator<Item = &str> {
        self.schemas.values().flatten().map(|s| s.attr.as_str())
    }

    /// True iff `c1` is reachable from `c2` by kind-1 expansions, i.e.
    /// `c1` is a (reflexive) subclass of `c2`.
    pub fn subclass_of(&self, c1: &str, c2: &str) -> Result<bool, XiError> {
        if !self.is_class(c1) {
            return Err(XiError::UnknownClass(c1.to_string()));
        }
        if !self.is_class(c2) {
            return Err(XiError::UnknownClass(c2.to_string()));
        }
        Ok(self.ancestors(c1).iter().any(|a| a == c2))
    }

    /// The reflexive-transitive ancestor chain of `c`, nearest first,
    /// starting with `c` itself.
    pub fn ancestors(&self, c: &str) -> Vec<String> {
        let mut seen: Vec<String> = Vec::new();
        let mut queue: Vec<&str> = vec![c];
        while let Some(node) = queue.pop() {
            if seen.iter().any(|s| s == node) {
                continue;
            }
            seen.push(node.to_string());
            if let Some(ps) = self.parents.get(node) {
                for p in ps.iter().rev() {
                    queue.push(p);
                }
            }
        }
        seen
    }

    /// All declared subclasses of `c`, including `c` itself.
    pub fn descendants(&self, c: &str) -> Vec<String> {
        self.parents
            .keys()
            .filter(|k| self.ancestors(k).iter().any(|a| a == c))
            .cloned()
            .collect()
    }

    /// True iff instance `e` is declared under some class d with
    /// subclass_of(d, c).
    pub fn instance_of(&self, e: &str, c: &str) -> Result<bool, XiError> {
        let classes = self
            .instances
            .get(e)
            .ok_or_else(|| XiError::UnknownInstance(e.to_string()))?;
        for d in classes {
            if self.subclass_of(d, c)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// True iff attribute term `p` holds for `e`, directly or inherited
    /// from a class P-clause with the variable substituted by `e`.
    pub fn hasprop(&self, e: &str, p: &AttributeTerm) -> Result<bool, XiError> {
        if !self.instances.contains_key(e) {
            return Err(XiError::UnknownInstance(e.to_string()));
        }
        for pc in &self.pclauses {
            let (applies, subst_var) = match &pc.owner {
                PropOwner::Instance(i) => (i == e, None),
                PropOwner::Class(ct) => (
                    self.instance_of(e, &ct.name)?,
                    match &ct.arg {
                        Term::Var(v) => Some(v.clone()),
                        _ => None,
                    },
                ),
            };
            if !applies {
                continue;
            }
            for gp in &pc.props {
                if gp.attr.name != p.name {
                    continue;
                }
                if let Some(guard) = &gp.guard {
                    if !self.prove_goal(guard)? {
                        continue;
                    }
                }
                let subject = substitute(&gp.attr.subject, subst_var.as_deref(), e);
                let value = substitute(&gp.attr.value, subst_var.as_deref(), e);
                if terms_match(&subject, &p.subject) && terms_match(&value, &p.value) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Prove a goal: the three leaf forms delegate to the operations
    /// above; conjunction requires both operands, disjunction at least
    /// one.
    pub fn prove_goal(&self, g: &GClause) -> Result<bool, XiError> {
        match g {
            GClause::Subclass { sub, sup } => self.subclass_of(sub, sup),
            GClause::InstanceOf { instance, class } => self.instance_of(instance, class),
            GClause::HasProp { instance, attr } => self.hasprop(instance, attr),
            GClause::Conj(a, b) => Ok(self.prove_goal(a)? && self.prove_goal(b)?),
            GClause::Disj(a, b) => Ok(self.prove_goal(a)? || self.prove_goal(b)?),
        }
    }

    /// The attribute schemas visible on `c`: its own plus everything
    /// inherited, with a child redeclaration shadowing the parent's.
    pub fn attribute_schema(&self, c: &str) -> Result<Vec<AttributeSchema>, XiError> {
        if !self.is_class(c) {
            return Err(XiError::UnknownClass(c.to_string()));
        }
        let mut out: Vec<AttributeSchema> = Vec::new();
        for class in self.ancestors(c) {
            if let Some(own) = self.schemas.get(&class) {
                for schema in own {
                    if !out.iter().any(|s| s.attr == schema.attr) {
                        out.push(schema.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// The declared classes of instance `e`.
    pub fn instance_classes(&self, e: &str) -> Result<&[String], XiError> {
        self.instances
            .get(e)
            .map(|v| v.as_slice())
            .ok_or_else(|| XiError::UnknownInstance(e.to_string()))
    }

    /// The response template attached to an event attribute, or the
    /// generic `<ANSWER>` fallback when none is attached.
    pub fn response_template_for(&self, attr: &str) -> Result<ResponseTemplate, XiError> {
        if !self.attribute_names().any(|a| a == attr) {
            return Err(XiError::UnknownAttribute(attr.to_string()));
        }
        Ok(self
            .templates
            .get(attr)
            .cloned()
            .unwrap_or_else(ResponseTemplate::fallback))
    }

    /// Render the clause set back to the ASCII syntax.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for clause in &self.clauses {
            match clause {
                Clause::O(OClause::ClassDef { head, body }) => {
                    let groups: Vec<String> = body
                        .iter()
                        .map(|g| {
                            g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | ")
                        })
                        .collect();
                    out.push_str(&format!("{head} => {}\n", groups.join(" & ")));
                }
                Clause::O(OClause::InstanceDecl { instance, classes }) => {
                    let cs: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
                    out.push_str(&format!("{instance} <- {}\n", cs.join(" & ")));
                }
                Clause::Attribute { class, schemas } => {
                    let items: Vec<String> = schemas
                        .iter()
                        .map(|s| {
                            let value = match &s.constraint {
                                ValueConstraint::Atomic => "_".to_string(),
                                ValueConstraint::Classes(cs) => cs
                                    .iter()
                                    .map(|c| format!("{c}(_)"))
                                    .collect::<Vec<_>>()
                                    .join("|"),
                            };
                            format!("{}({}, {})", s.attr, class.arg, value)
                        })
                        .collect();
                    out.push_str(&format!("attribute({class}, [{}])\n", items.join(", ")));
                }
                Clause::P(p) => {
                    let owner = match &p.owner {
                        PropOwner::Instance(i) => i.clone(),
                        PropOwner::Class(c) => c.to_string(),
                    };
                    let items: Vec<String> = p
                        .props
                        .iter()
                        .map(|gp| match &gp.guard {
                            None => gp.attr.to_string(),
                            Some(g) => format!("{} :- {}", gp.attr, render_goal(g)),
                        })
                        .collect();
                    out.push_str(&format!("props({owner}, [{}])\n", items.join(", ")));
                }
                Clause::Template(t) => {
                    out.push_str(&format!("template({}, \"{}\")\n", t.attr, t.text));
                }
            }
        }
        out
    }
}

fn render_goal(g: &GClause) -> String {
    match g {
        GClause::Subclass { sub, sup } => format!("{sup}(X) => {sub}(X)"),
        GClause::InstanceOf { instance, class } => format!("{instance} <- {class}(X)"),
        GClause::HasProp { instance, attr } => format!("hasprop({instance}, {attr})"),
        GClause::Conj(a, b) => format!("{}, {}", render_goal(a), render_goal(b)),
        GClause::Disj(a, b) => format!("({}; {})", render_goal(a), render_goal(b)),
    }
}

fn substitute(t: &Term, var: Option<&str>, instance: &str) -> Term {
    match (t, var) {
        (Term::Var(v), Some(name)) if v == name => Term::Atom(instance.to_string()),
        _ => t.clone(),
    }
}

/// Wildcard-tolerant equality: a variable on either side matches anything.
fn terms_match(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(_), _) | (_, Term::Var(_)) => true,
        (Term::Atom(x), Term::Atom(y)) => x == y,
        (
            Term::Compound { functor: f1, args: a1 },
            Term::Compound { functor: f2, args: a2 },
        ) => f1 == f2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(x, y)| terms_match(x, y)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYBERLAW_CLASSES: &str = "\
domain(X) => entity(X) | event(X)
entity(X) => legal_entity(X) | misc_entity(X)
legal_entity(X) => person(X) | organization(X)
person(X) => judge(X)
organization(X) => company(X) | government(X) | ngo(X)
government(X) => court(X)
misc_entity(X) => location(X) | date(X) | variable(X)
event(X) => legal_proceeding(X)
legal_proceeding(X) => filing(X) | trial(X) | resolution(X) | appeal(X)
attribute(legal_proceeding(X), [plaintiff(X, person(_)|organization(_)), defendant(X, person(_)|organization(_)), nature_of_case(X, variable(_)), preside_by(X, judge(_)), occur_at(X, court(_)), occur_on(X, date(_))])
attribute(resolution(X), [prevailing_party(X, person(_)|organization(_)), losing_party(X, person(_)|organization(_))])
attribute(legal_entity(X), [desc(X, _)])
attribute(person(X), [per_fname(X, _), per_lname(X, _), profession(X, _)])
attribute(organization(X), [org_name(X, _)])
attribute(court(X), [court_type(X, _)])
attribute(location(X), [city(X, _), state(X, _), country(X, _), region(X, _)])
attribute(date(X), [day_of_week(X, _), day_of_month(X, _), month(X, _), year(X, _)])
attribute(variable(X), [var_desc(X, _)])
";

    fn cyberlaw() -> Ontology {
        Ontology::load(CYBERLAW_CLASSES).unwrap()
    }

    #[test]
    fn load_builds_hierarchy() {
        let o = cyberlaw();
        assert!(o.is_class("domain"));
        assert_eq!(o.ancestors("court"), ["court", "government", "organization", "legal_entity", "entity", "domain"]);
    }

    #[test]
    fn empty_text_gives_empty_ontology() {
        let o = Ontology::load("").unwrap();
        assert_eq!(o.class_count(), 0);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Ontology::load("a(X) => b(X)\nb(X) => a(X)\n").unwrap_err();
        assert!(matches!(err, XiError::Cycle(_)));
    }

    #[test]
    fn subclass_chain_holds() {
        let o = cyberlaw();
        assert!(o.subclass_of("court", "organization").unwrap());
        assert!(o.subclass_of("court", "court").unwrap());
        assert!(!o.subclass_of("organization", "court").unwrap());
        assert!(o.subclass_of("filing", "legal_proceeding").unwrap());
        assert!(matches!(
            o.subclass_of("nothing", "court"),
            Err(XiError::UnknownClass(_))
        ));
    }

    #[test]
    fn instance_inference_follows_hierarchy() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("g1 <- court(X)\n");
        let o = Ontology::load(&text).unwrap();
        assert!(o.instance_of("g1", "government").unwrap());
        assert!(o.instance_of("g1", "court").unwrap());
        assert!(!o.instance_of("g1", "date").unwrap());
        assert!(matches!(
            o.instance_of("g2", "court"),
            Err(XiError::UnknownInstance(_))
        ));
    }

    #[test]
    fn hasprop_direct_and_inherited() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("c1 <- court(X)\n");
        text.push_str("g1 <- court(X)\n");
        text.push_str("props(court(X), [name(X, t)])\n");
        text.push_str("props(g1, [name(g1, mahkamah_majistret_shahalam)])\n");
        let o = Ontology::load(&text).unwrap();
        // inherited from the class P-clause, variable substituted by c1
        let inherited = AttributeTerm::new("name", Term::atom("c1"), Term::atom("t"));
        assert!(o.hasprop("c1", &inherited).unwrap());
        // direct P-clause
        let direct = AttributeTerm::new(
            "name",
            Term::atom("g1"),
            Term::atom("mahkamah_majistret_shahalam"),
        );
        assert!(o.hasprop("g1", &direct).unwrap());
        // attribute never declared
        let absent = AttributeTerm::new("area", Term::atom("g1"), Term::atom("x"));
        assert!(!o.hasprop("g1", &absent).unwrap());
    }

    #[test]
    fn conditional_props_need_their_guard() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("c1 <- court(X)\n");
        text.push_str("d1 <- date(X)\n");
        text.push_str("props(c1, [open(c1, yes) :- c1 <- court(X)])\n");
        text.push_str("props(d1, [open(d1, yes) :- d1 <- court(X)])\n");
        let o = Ontology::load(&text).unwrap();
        let p1 = AttributeTerm::new("open", Term::atom("c1"), Term::atom("yes"));
        assert!(o.hasprop("c1", &p1).unwrap());
        let p2 = AttributeTerm::new("open", Term::atom("d1"), Term::atom("yes"));
        assert!(!o.hasprop("d1", &p2).unwrap());
    }

    #[test]
    fn prove_goal_conjunction_and_disjunction() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("e1 <- court(X)\n");
        text.push_str("props(e1, [name(e1, mahkamah_majistret_shahalam)])\n");
        let o = Ontology::load(&text).unwrap();
        let conj = GClause::Conj(
            Box::new(GClause::InstanceOf {
                instance: "e1".into(),
                class: "court".into(),
            }),
            Box::new(GClause::HasProp {
                instance: "e1".into(),
                attr: AttributeTerm::new(
                    "name",
                    Term::atom("e1"),
                    Term::atom("mahkamah_majistret_shahalam"),
                ),
            }),
        );
        assert!(o.prove_goal(&conj).unwrap());

        let false_goal = GClause::InstanceOf {
            instance: "e1".into(),
            class: "date".into(),
        };
        let disj = GClause::Disj(
            Box::new(false_goal.clone()),
            Box::new(GClause::InstanceOf {
                instance: "e1".into(),
                class: "government".into(),
            }),
        );
        assert!(o.prove_goal(&disj).unwrap());

        let bad = GClause::Conj(
            Box::new(GClause::InstanceOf {
                instance: "missing".into(),
                class: "court".into(),
            }),
            Box::new(false_goal),
        );
        assert!(bad.clone().eq(&bad)); // silence unused warnings on clone
        assert!(matches!(o.prove_goal(&bad), Err(XiError::UnknownInstance(_))));
    }

    #[test]
    fn schema_inheritance_with_union() {
        let o = cyberlaw();
        let court: Vec<String> = o
            .attribute_schema("court")
            .unwrap()
            .into_iter()
            .map(|s| s.attr)
            .collect();
        assert_eq!(court, ["court_type", "org_name", "desc"]);

        let resolution: Vec<String> = o
            .attribute_schema("resolution")
            .unwrap()
            .into_iter()
            .map(|s| s.attr)
            .collect();
        assert_eq!(
            resolution,
            [
                "prevailing_party",
                "losing_party",
                "plaintiff",
                "defendant",
                "nature_of_case",
                "preside_by",
                "occur_at",
                "occur_on"
            ]
        );

        assert!(o.attribute_schema("domain").unwrap().is_empty());
    }

    #[test]
    fn shadowing_overrides_parent_constraint() {
        let text = "\
a(X) => b(X)
attribute(a(X), [size(X, _)])
attribute(b(X), [size(X, a(_))])
";
        let o = Ontology::load(text).unwrap();
        let b = o.attribute_schema("b").unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].constraint, ValueConstraint::Classes(vec!["a".into()]));
    }

    #[test]
    fn templates_resolve_with_fallback() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("template(occur_on, \"<EVENT> took place on <ANSWER>\")\n");
        text.push_str(
            "template(preside_by, \"<OCCUR_AT> judge <ANSWER> chairs the <EVENT> of the case by <PLAINTIFF> against <DEFENDANT> on <OCCUR_ON>\")\n",
        );
        let o = Ontology::load(&text).unwrap();
        assert_eq!(
            o.response_template_for("occur_on").unwrap().text,
            "<EVENT> took place on <ANSWER>"
        );
        assert_eq!(o.response_template_for("plaintiff").unwrap().text, "<ANSWER>");
        let preside = o.response_template_for("preside_by").unwrap();
        assert_eq!(
            preside.placeholders(),
            ["OCCUR_AT", "ANSWER", "EVENT", "PLAINTIFF", "DEFENDANT", "OCCUR_ON"]
        );
        assert!(matches!(
            o.response_template_for("nonexistent"),
            Err(XiError::UnknownAttribute(_))
        ));
    }

    #[test]
    fn bad_template_placeholder_rejected() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("template(occur_on, \"<NOPE> and <ANSWER>\")\n");
        assert!(matches!(
            Ontology::load(&text),
            Err(XiError::BadPlaceholder { .. })
        ));
    }

    #[test]
    fn serialize_round_trip_is_idempotent() {
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("g1 <- court(X)\n");
        text.push_str("props(g1, [name(g1, shahalam)])\n");
        text.push_str("template(occur_on, \"<EVENT> took place on <ANSWER>\")\n");
        let o1 = Ontology::load(&text).unwrap();
        let s1 = o1.serialize();
        let o2 = Ontology::load(&s1).unwrap();
        let s2 = o2.serialize();
        assert_eq!(s1, s2);
        assert_eq!(o1.clauses, o2.clauses);
    }

    #[test]
    fn instance_subsumption_property_on_cyberlaw() {
        // instance_of(e, c) and subclass_of(c, d) together imply
        // instance_of(e, d) for every declared combination
        let mut text = CYBERLAW_CLASSES.to_string();
        text.push_str("i1 <- court(X)\ni2 <- filing(X)\ni3 <- variable(X)\n");
        let o = Ontology::load(&text).unwrap();
        let classes: Vec<String> = o.class_names().map(String::from).collect();
        for e in ["i1", "i2", "i3"] {
            for c in &classes {
                for d in &classes {
                    if o.instance_of(e, c).unwrap() && o.subclass_of(c, d).unwrap() {
                        assert!(o.instance_of(e, d).unwrap(), "{e} {c} {d}");
                    }
                }
            }
        }
    }
}
