//! The knowledge directory: ontology clause file, gazetteer TSV and
//! semantic-network TSV, plus the shipped Cyberlaw resources written by
//! `init`.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::dep::Lexicon;
use crate::gazetteer::{Gazetteer, GazetteerError};
use crate::semnet::{NetError, SemanticNetwork};
use crate::xi::{Ontology, XiError};

#[derive(Debug, Error)]
pub enum KbError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Ontology {
        path: PathBuf,
        #[source]
        source: XiError,
    },
    #[error("{path}: {source}")]
    Gazetteer {
        path: PathBuf,
        #[source]
        source: GazetteerError,
    },
    #[error("{path}: {source}")]
    Network {
        path: PathBuf,
        #[source]
        source: NetError,
    },
    #[error("directory {0} is not empty; pass --force to reset it")]
    NotEmpty(PathBuf),
}

/// Paths of one knowledge directory.
#[derive(Debug, Clone)]
pub struct KbDirectory {
    pub root: PathBuf,
}

/// Everything a question needs, loaded and immutable.
pub struct Kb {
    pub onto: Ontology,
    pub gaz: Gazetteer,
    pub net: SemanticNetwork,
    pub lexicon: Lexicon,
}

impl KbDirectory {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        KbDirectory { root: root.into() }
    }

    pub fn ontology_path(&self) -> PathBuf {
        self.root.join("ontology.xi")
    }

    pub fn gazetteer_path(&self) -> PathBuf {
        self.root.join("gazetteer.tsv")
    }

    pub fn network_path(&self) -> PathBuf {
        self.root.join("network.tsv")
    }

    /// Write the shipped ontology and gazetteer plus an empty network.
    pub fn init(&self, force: bool) -> Result<(), KbError> {
        if self.root.exists() {
            let occupied = fs::read_dir(&self.root)
                .map(|mut d| d.next().is_some())
                .unwrap_or(false);
            if occupied && !force {
                return Err(KbError::NotEmpty(self.root.clone()));
            }
        }
        fs::create_dir_all(&self.root).map_err(|e| self.io(&self.root, e))?;
        self.write(&self.ontology_path(), SHIPPED_ONTOLOGY)?;
        self.write(&self.gazetteer_path(), SHIPPED_GAZETTEER)?;
        self.write(&self.network_path(), "")?;
        Ok(())
    }

    fn write(&self, path: &Path, text: &str) -> Result<(), KbError> {
        fs::write(path, text).map_err(|e| self.io(path, e))
    }

    fn io(&self, path: &Path, source: std::io::Error) -> KbError {
        KbError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn load(&self) -> Result<Kb, KbError> {
        let onto_text = fs::read_to_string(self.ontology_path())
            .map_err(|e| self.io(&self.ontology_path(), e))?;
        let onto = Ontology::load(&onto_text).map_err(|e| KbError::Ontology {
            path: self.ontology_path(),
            source: e,
        })?;
        let gaz_text = fs::read_to_string(self.gazetteer_path())
            .map_err(|e| self.io(&self.gazetteer_path(), e))?;
        let gaz = Gazetteer::load(&gaz_text).map_err(|e| KbError::Gazetteer {
            path: self.gazetteer_path(),
            source: e,
        })?;
        let net_text = fs::read_to_string(self.network_path())
            .map_err(|e| self.io(&self.network_path(), e))?;
        let net = SemanticNetwork::parse(&net_text).map_err(|e| KbError::Network {
            path: self.network_path(),
            source: e,
        })?;
        let lexicon = lexicon_for(&gaz);
        Ok(Kb { onto, gaz, net, lexicon })
    }

    pub fn save_network(&self, net: &SemanticNetwork) -> Result<(), KbError> {
        self.write(&self.network_path(), &net.serialize())
    }
}

pub fn lexicon_for(gaz: &Gazetteer) -> Lexicon {
    Lexicon {
        multiword_names: gaz.multiword_names(),
        title_nouns: gaz.title_nouns(),
    }
}

/// Content words the question checker accepts beyond the gazetteer,
/// the ontology lexicon and the closed-class word lists.
pub const DOMAIN_WORDS: &[&str] = &[
    "company", "companies", "organization", "organizations", "judge", "judges", "court",
    "courts", "entity", "entities", "person", "people", "party", "parties", "action", "actions",
    "crime", "crimes", "patent", "patents", "employee", "employees", "brief", "briefs",
    "evidence", "information", "speech", "compression", "conspiracy", "fraud", "trademark",
    "office", "spam", "date", "dates", "event", "events", "amicus", "year", "years",
];

pub const SHIPPED_ONTOLOGY: &str = r#"# Cyberlaw domain ontology
# class hierarchy
domain(X) => entity(X) | event(X)
entity(X) => legal_entity(X) | misc_entity(X)
legal_entity(X) => person(X) | organization(X)
person(X) => judge(X)
organization(X) => company(X) | government(X) | ngo(X)
government(X) => court(X)
misc_entity(X) => location(X) | date(X) | variable(X)
event(X) => legal_proceeding(X)
legal_proceeding(X) => filing(X) | trial(X) | resolution(X) | appeal(X)

# attributes; lower classes inherit from their superclasses
attribute(legal_proceeding(X), [plaintiff(X, person(_)|organization(_)), defendant(X, person(_)|organization(_)), nature_of_case(X, variable(_)), preside_by(X, judge(_)), occur_at(X, court(_)), occur_on(X, date(_))])
attribute(resolution(X), [prevailing_party(X, person(_)|organization(_)), losing_party(X, person(_)|organization(_))])
attribute(legal_entity(X), [desc(X, _)])
attribute(person(X), [per_fname(X, _), per_lname(X, _), profession(X, _)])
attribute(organization(X), [org_name(X, _)])
attribute(court(X), [court_type(X, _)])
attribute(location(X), [city(X, _), state(X, _), country(X, _), region(X, _)])
attribute(date(X), [day_of_week(X, _), day_of_month(X, _), month(X, _), year(X, _)])
attribute(variable(X), [var_desc(X, _)])

# response generation guides
template(occur_on, "<EVENT> took place on <ANSWER> by <PLAINTIFF> against <DEFENDANT>")
template(preside_by, "<ANSWER> chaired the <EVENT> of the case")
template(prevailing_party, "<ANSWER>")
template(losing_party, "<ANSWER>")
"#;

pub const SHIPPED_GAZETTEER: &str = "g_name\tg_category\tg_pattern\tg_type\tg_alias\tg_map\tg_group_map
Microsoft\tcompany\t({TOKEN})(\\sCorporation|\\sCorp[.]?)?\tspecific\t\t\torg_name
Excite\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\t\t\torg_name
Hewlett-Packard\tcompany\t({TOKEN})(\\sCompany|\\sCo[.]?)?\tspecific\tHP\t\torg_name
AT&T\tcompany\t({TOKEN})(\\sCorporation|\\sCorp[.]?)?\tspecific\t\t\torg_name
RealNetworks\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\tRealnetworks\t\torg_name
Vonage\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\t\t\torg_name
Google\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\t\t\torg_name
Novell\tcompany\t({TOKEN})(\\sIncorporated|\\sInc[.]?)?\tspecific\t\t\torg_name
International Business Machines\tcompany\t({TOKEN})(\\sCorporation|\\sCorp[.]?)?\tspecific\tIBM\t\torg_name
Electronic Frontier Foundation\tngo\t({TOKEN})\tspecific\tEFF\t\torg_name
United Nations\tngo\t({TOKEN})\tspecific\tUN\t\torg_name
U.S. Patent Office\tgovernment\t({TOKEN})\tspecific\tPatent Office\t\torg_name
Corporation\tcompany\t(([A-Z][\\w\\d'&\\-.]*\\s)+{TOKEN})\tgeneric\tCorp.\t\torg_name,-
Incorporated\tcompany\t(([A-Z][\\w\\d'&\\-.]*\\s)+{TOKEN})\tgeneric\tInc.\t\torg_name,-
Company\tcompany\t(([A-Z][\\w\\d'&\\-.]*\\s)+{TOKEN})\tgeneric\tCo.\t\torg_name,-
Limited\tcompany\t(([A-Z][\\w\\d'&\\-.]*\\s)+{TOKEN})\tgeneric\tLtd.\t\torg_name,-
Association\tngo\t(([A-Z][\\w\\d'&\\-.]*\\s)+{TOKEN})\tgeneric\tassociation\t\torg_name,-
Ministry\tgovernment\t(({TOKEN})(\\sof\\s[A-Z]\\w+)?)\tgeneric\tministry\t\torg_name,-,-
Agency\tgovernment\t(([A-Z][\\w\\d'&\\-.]*\\s)*{TOKEN})\tgeneric\tagency\t\torg_name,-
Court\tcourt\t(([\\w\\s.]*?)([Ss]upreme\\s|[Ss]uperior\\s|[Ff]ederal\\s|[Dd]istrict\\s|[Aa]ppeals\\s)?{TOKEN})\tgeneric\tcourt\t\torg_name,-,court_type
Judge\tjudge\t((\\w[\\w.'&\\-]*\\s)*?)({TOKEN})(\\s([A-Z][\\w'\\-.]*)((\\s[A-Z][\\w'\\-.]*)*))?\tspecific\tjudge\t\t-,-,profession,-,per_fname,per_lname,-
Justice\tjudge\t((\\w[\\w.'&\\-]*\\s)*?)({TOKEN})(\\s([A-Z][\\w'\\-.]*)((\\s[A-Z][\\w'\\-.]*)*))?\tspecific\tjustice\t\t-,-,profession,-,per_fname,per_lname,-
Chairman\tperson\t((\\w[\\w.'&\\-]*\\s)*?)({TOKEN})(\\s([A-Z][\\w'\\-.]*)((\\s[A-Z][\\w'\\-.]*)*))?\tspecific\tchairman\t\t-,-,profession,-,per_fname,per_lname,-
Andrew\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
David\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
William\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Michael\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Marilyn\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
James\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
John\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
George\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Howard\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Eliot\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Ira\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Rob\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Joe\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Sharmini\tperson\t({TOKEN})\\s([A-Z][\\w'\\-.]*(\\s[A-Z][\\w'\\-.]*)*)\tgeneric\t\t\tper_fname,per_lname,-
Monday\tdate\tno pattern\tspecific\t\t\tday_of_week
Tuesday\tdate\tno pattern\tspecific\t\t\tday_of_week
Wednesday\tdate\tno pattern\tspecific\t\t\tday_of_week
Thursday\tdate\tno pattern\tspecific\t\t\tday_of_week
Friday\tdate\tno pattern\tspecific\t\t\tday_of_week
Saturday\tdate\tno pattern\tspecific\t\t\tday_of_week
Sunday\tdate\tno pattern\tspecific\t\t\tday_of_week
January\tdate\tno pattern\tspecific\t\t\tmonth
February\tdate\tno pattern\tspecific\t\t\tmonth
March\tdate\tno pattern\tspecific\t\t\tmonth
April\tdate\tno pattern\tspecific\t\t\tmonth
May\tdate\tno pattern\tspecific\t\t\tmonth
June\tdate\tno pattern\tspecific\t\t\tmonth
July\tdate\tno pattern\tspecific\t\t\tmonth
August\tdate\tno pattern\tspecific\t\t\tmonth
September\tdate\tno pattern\tspecific\t\t\tmonth
October\tdate\tno pattern\tspecific\t\t\tmonth
November\tdate\tno pattern\tspecific\t\t\tmonth
December\tdate\tno pattern\tspecific\t\t\tmonth
U.S.\tlocation\tno pattern\tspecific\tUnited States\t\tcountry
U.K.\tlocation\tno pattern\tspecific\tUnited Kingdom\t\tcountry
Malaysia\tlocation\tno pattern\tspecific\t\t\tcountry
England\tlocation\tno pattern\tspecific\t\t\tcountry
California\tlocation\tno pattern\tspecific\t\t\tstate
New York\tlocation\tno pattern\tspecific\t\t\tcity
Melaka\tlocation\tno pattern\tspecific\t\t\tcity
Deal\tlocation\tno pattern\tspecific\t\t\tcity
sue\tlegal_proceeding\t{LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}\trelation-verb\t\t{PLAINTIFF}<RELATION>{DEFENDANT}\t
file\tfiling\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{PLAINTIFF}<RELATION>{}\t
file against\tlegal_proceeding\t{PERSON|ORGANIZATION}<RELATION>{PERSON|ORGANIZATION}\trelation-verb\t\t{PLAINTIFF}<RELATION>{DEFENDANT}\t
file on\tfiling\t{VARIABLE}<RELATION>{DATE}\trelation-verb\t\t{}<RELATION>{OCCUR_ON}\t
occur on\tlegal_proceeding\t{VARIABLE}<RELATION>{DATE}\trelation-verb\t\t{}<RELATION>{OCCUR_ON}\t
side with\tresolution\t{JUDGE|COURT}<RELATION>{PERSON|ORGANIZATION}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{PREVAILING_PARTY}\t
rule against\tresolution\t{JUDGE|COURT}<RELATION>{PERSON|ORGANIZATION}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{LOSING_PARTY}\t
rule on\tresolution\t{JUDGE|COURT}<RELATION>{DATE}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{OCCUR_ON}\t
win\tresolution\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{PREVAILING_PARTY}<RELATION>{}\t
lose\tresolution\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{LOSING_PARTY}<RELATION>{}\t
preside\tlegal_proceeding\t{JUDGE|COURT}<RELATION>{VARIABLE}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{}\t
preside over\tlegal_proceeding\t{JUDGE|COURT}<RELATION>{VARIABLE}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{}\t
chair\tlegal_proceeding\t{JUDGE|COURT}<RELATION>{VARIABLE}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{}\t
initiate\tlegal_proceeding\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{PLAINTIFF}<RELATION>{}\t
accuse\tlegal_proceeding\t{LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}\trelation-verb\t\t{PLAINTIFF}<RELATION>{DEFENDANT}\t
accuse of\tlegal_proceeding\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{}<RELATION>{NATURE_OF_CASE}\t
charge for\tlegal_proceeding\t{LEGAL_ENTITY}<RELATION>{VARIABLE}\trelation-verb\t\t{}<RELATION>{NATURE_OF_CASE}\t
resolve\tresolution\tno pattern\trelation-verb\t\t\t
close\tresolution\tno pattern\trelation-verb\t\t\t
conclude\tresolution\tno pattern\trelation-verb\t\t\t
settle\tresolution\tno pattern\trelation-verb\t\t\t
dismiss\tresolution\tno pattern\trelation-verb\t\t\t
plead\ttrial\tno pattern\trelation-verb\t\t\t
throw out\tresolution\t{JUDGE|COURT}<RELATION>{VARIABLE}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{}\t
sentence\tresolution\t{JUDGE|COURT}<RELATION>{PERSON|ORGANIZATION}\trelation-verb\t\t{PRESIDE_BY|OCCUR_AT}<RELATION>{LOSING_PARTY}\t
involve\tlegal_proceeding\t{VARIABLE|LEGAL_PROCEEDING}<RELATION>{LEGAL_ENTITY}\trelation-verb\t\t{}<RELATION>{DEFENDANT}\t
engage\tlegal_proceeding\tno pattern\trelation-verb\t\t\t
in\tlegal_proceeding\t{LEGAL_ENTITY|VARIABLE|LEGAL_PROCEEDING}<RELATION>{VARIABLE}\trelation-prep\t\t{}<RELATION>{NATURE_OF_CASE}\t
over\tlegal_proceeding\t{LEGAL_ENTITY|COURT|VARIABLE}<RELATION>{VARIABLE}\trelation-prep\t\t{}<RELATION>{NATURE_OF_CASE}\t
against\tlegal_proceeding\t{FILING|VARIABLE|LEGAL_ENTITY|LEGAL_PROCEEDING}<RELATION>{LEGAL_ENTITY}\trelation-prep\t\t{}<RELATION>{DEFENDANT}\t
by\tlegal_proceeding\t{VARIABLE|FILING|LEGAL_PROCEEDING|LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}\trelation-prep\t\t{}<RELATION>{PLAINTIFF}\t
with\tlegal_proceeding\t{VARIABLE|LEGAL_PROCEEDING|LEGAL_ENTITY}<RELATION>{LEGAL_ENTITY}\trelation-prep\t\t{}<RELATION>{DEFENDANT}\t
filing\tfiling\tno pattern\trelation-noun\t\t\t
trial\ttrial\tno pattern\trelation-noun\t\t\t
ruling\tresolution\tno pattern\trelation-noun\t\t\t
closing\tresolution\tno pattern\trelation-noun\t\t\t
case\tlegal_proceeding\tno pattern\trelation-noun\tcases\t\t
lawsuit\tlegal_proceeding\tno pattern\trelation-noun\tlawsuits\t\t
";

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn shipped_resources_load() {
        let onto = Ontology::load(SHIPPED_ONTOLOGY).unwrap();
        assert!(onto.subclass_of("court", "organization").unwrap());
        assert!(onto.subclass_of("filing", "legal_proceeding").unwrap());
        let gaz = Gazetteer::load(SHIPPED_GAZETTEER).unwrap();
        assert!(gaz.warnings().is_empty(), "{:?}", gaz.warnings());
        assert!(gaz.direct_match("Monday").is_some());
        assert!(gaz.relation_trigger("side with").is_some());
    }

    #[test]
    fn init_load_cycle() {
        let dir = tempdir().unwrap();
        let kb = KbDirectory::new(dir.path().join("kb"));
        kb.init(false).unwrap();
        let loaded = kb.load().unwrap();
        assert!(loaded.net.is_empty());
        assert!(loaded.onto.is_class("resolution"));
        // rerun without force is refused
        assert!(matches!(kb.init(false), Err(KbError::NotEmpty(_))));
        // force resets
        kb.init(true).unwrap();
    }
}
