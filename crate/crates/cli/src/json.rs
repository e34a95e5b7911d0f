//! The versioned JSON form of a classification run.
//!
//! Set-valued fields are ascending index lists, so the output is byte-stable.
//! `j_set` is carried alongside the documented fields so that a record survives
//! a round trip unchanged.

use anyhow::{bail, Result};
use gueo_core::strata::{StratumClass, StratumLabel, StratumRecord};
use gueo_core::RefSet;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: u32,
    pub n: usize,
    pub strata: Vec<Stratum>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Label {
    pub k: usize,
    pub l: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Dl,
    NotDl,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub k: usize,
    pub l: usize,
    pub class: Class,
    pub length: usize,
    pub dim: Option<usize>,
    pub target: Option<Label>,
    pub rank: Option<usize>,
    pub base: Option<Label>,
    pub parahoric: Vec<usize>,
    pub supp_sigma: Vec<usize>,
    pub s_w_sigma: Vec<usize>,
    pub positive_coxeter: bool,
    pub j_set: Option<Vec<usize>>,
}

impl From<StratumLabel> for Label {
    fn from(s: StratumLabel) -> Self {
        Label { k: s.k, l: s.l }
    }
}

impl From<Label> for StratumLabel {
    fn from(s: Label) -> Self {
        StratumLabel { k: s.k, l: s.l }
    }
}

impl From<StratumClass> for Class {
    fn from(c: StratumClass) -> Self {
        match c {
            StratumClass::Dl => Class::Dl,
            StratumClass::NotDl => Class::NotDl,
            StratumClass::Empty => Class::Empty,
        }
    }
}

impl From<Class> for StratumClass {
    fn from(c: Class) -> Self {
        match c {
            Class::Dl => StratumClass::Dl,
            Class::NotDl => StratumClass::NotDl,
            Class::Empty => StratumClass::Empty,
        }
    }
}

fn refset(n: usize, indices: &[usize], field: &str) -> Result<RefSet> {
    if let Some(bad) = indices.iter().find(|&&i| i >= n) {
        bail!("{field}: index {bad} out of range for n = {n}");
    }
    Ok(indices.iter().copied().collect())
}

impl From<&StratumRecord> for Stratum {
    fn from(r: &StratumRecord) -> Self {
        Stratum {
            k: r.label.k,
            l: r.label.l,
            class: r.class.into(),
            length: r.length,
            dim: r.dim,
            target: r.target.map(Label::from),
            rank: r.rank,
            base: r.base.map(Label::from),
            parahoric: r.parahoric.to_vec(),
            supp_sigma: r.supp_sigma.to_vec(),
            s_w_sigma: r.s_w_sigma.to_vec(),
            positive_coxeter: r.positive_coxeter,
            j_set: r.j_set.map(RefSet::to_vec),
        }
    }
}

impl Stratum {
    pub fn to_record(&self, n: usize) -> Result<StratumRecord> {
        Ok(StratumRecord {
            label: StratumLabel::new(n, self.k, self.l)?,
            class: self.class.into(),
            length: self.length,
            dim: self.dim,
            target: self.target.map(StratumLabel::from),
            rank: self.rank,
            base: self.base.map(StratumLabel::from),
            supp_sigma: refset(n, &self.supp_sigma, "supp_sigma")?,
            s_w_sigma: refset(n, &self.s_w_sigma, "s_w_sigma")?,
            parahoric: refset(n, &self.parahoric, "parahoric")?,
            positive_coxeter: self.positive_coxeter,
            j_set: self.j_set.as_deref().map(|j| refset(n, j, "j_set")).transpose()?,
        })
    }
}

impl Document {
    pub fn new(n: usize, records: &[StratumRecord]) -> Self {
        Document {
            schema: SCHEMA_VERSION,
            n,
            strata: records.iter().map(Stratum::from).collect(),
        }
    }

    pub fn to_records(&self) -> Result<Vec<StratumRecord>> {
        self.strata.iter().map(|s| s.to_record(self.n)).collect()
    }
}

/// Pretty-printed document with a trailing newline.
pub fn render(n: usize, records: &[StratumRecord]) -> Result<String> {
    let mut text = serde_json::to_string_pretty(&Document::new(n, records))?;
    text.push('\n');
    Ok(text)
}

pub fn parse(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.schema != SCHEMA_VERSION {
        bail!("unsupported schema version {}", doc.schema);
    }
    Ok(doc)
}
