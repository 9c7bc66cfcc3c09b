//! Knowledge-based question answering over dependency-parsed English.
//!
//! News sentences are understood into an ontology-backed semantic
//! network; questions become query networks carrying an answer marker,
//! which are reduced to path sets and matched selectively against the
//! stored network, with event-constraint relaxation, explanation on
//! failure and template-based response generation.

pub mod dep;
pub mod discourse;
pub mod eval;
pub mod gazetteer;
pub mod kb;
pub mod nlu;
pub mod query;
pub mod semnet;
pub mod xi;
