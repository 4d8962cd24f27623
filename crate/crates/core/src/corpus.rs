//! The identity corpus shipped with the crate.

use crate::dsl::{self, Assertion, SyntaxError, VerifyReport};

#[derive(Clone, Copy, Debug)]
pub struct CorpusFile {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusFile {
    pub fn parse(&self) -> Result<Vec<Assertion>, SyntaxError> {
        dsl::parse(self.text)
    }

    pub fn verify(&self) -> Result<Vec<VerifyReport>, SyntaxError> {
        dsl::verify_script(self.text)
    }
}

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusFile { name: $name, text: include_str!(concat!("../corpus/", $name, ".qid")) }),*]
    };
}

pub const FILES: &[CorpusFile] = corpus![
    "lemma_1_1",
    "lemma_2_1",
    "lemma_2_2",
    "thm_1_2",
    "thm_2_3",
    "lemma_3_1",
    "lemma_3_2",
    "eq_3_2",
    "eq_3_10",
    "eq_3_11",
    "cor_4_1",
    "cor_4_2",
    "cor_4_3",
    "cor_4_4",
    "eq_4_10",
    "lemma_5_2",
    "lemma_5_3",
    "hirschhorn_sellers",
    "lemma_5_4",
    "lemma_5_5",
    "lemma_5_6",
    "thm_5_5",
    "thm_5_6",
    "thm_5_7",
    "thm_1_4",
    "eq_6_2",
    "eq_6_3",
    "eq_6_4",
    "eq_6_5",
    "eq_6_6",
    "eq_6_7",
    "eq_6_8",
];

/// Tab-separated coverage index: file, assertion count, description.
pub const INDEX: &str = include_str!("../corpus/INDEX");

pub fn file(name: &str) -> Option<&'static CorpusFile> {
    FILES.iter().find(|f| f.name == name)
}
