//! Extraction of cross-lingual semantico-syntactic valence patterns from
//! FrameNet-annotated corpora, and generation of a multilingual frame grammar
//! and lexicon from them.
//!
//! The pipeline runs in stages, each a pure transformation:
//!
//! 1. [`corpus`] parses phrase-structure (BFN-style) and dependency
//!    (SweFN-style) XML into [`corpus::AnnotatedSentence`]s.
//! 2. [`extract`] turns sentences into word-order preserving
//!    [`extract::SentencePattern`]s under a chosen [`extract::Settings`].
//! 3. [`normalize`] groups them into [`normalize::ValencePattern`]s.
//! 4. [`shared`] computes the cross-lingual shared set by subsumption.
//! 5. [`grammar`] and [`lexicon`] emit GF-style abstract and concrete modules;
//!    [`align`] builds a partial interlingual lexicon.
//! 6. [`realize`] evaluates generated modules on toy phrases.
//!
//! [`pipeline`] wires the stages to versioned JSON/TSV/`.gf` artifacts.

pub mod align;
pub mod artifact;
pub mod corpus;
pub mod extract;
pub mod grammar;
pub mod lexicon;
pub mod normalize;
pub mod pipeline;
pub mod realize;
pub mod shared;

pub use corpus::{AnnotatedSentence, Diagnostic, FESpan, SourceScheme, Span};
pub use extract::{
    FERealization, GrammRel, LuMorph, PhraseCat, SentencePattern, Settings, VerbType, Voice,
};
pub use normalize::{FeTriple, PatternKey, SentenceShape, ValencePattern};
pub use shared::{SharedPattern, SharedSet};
