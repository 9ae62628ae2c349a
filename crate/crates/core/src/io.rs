//! JSON file formats for posets.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::poset::{GradedPoset, PosetError};
use crate::rlabel::{CoverLabeling, LabelError};
use crate::ypoly::{YPoly, YTPoly};

/// `{"elements": [...], "covers": [[lower, upper], ...], "labels": {"lower|upper": n}?}`.
/// An optional `"ranks"` map is checked against the computed ranks; other
/// fields are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<HashMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<String, Vec<String>>>,
}

impl PosetFile {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn poset(&self) -> Result<GradedPoset, PosetError> {
        match &self.ranks {
            Some(r) => GradedPoset::with_ranks(&self.elements, &self.covers, r),
            None => GradedPoset::new(&self.elements, &self.covers),
        }
    }

    /// The labeling stored in the file, if any.
    pub fn labeling(&self, poset: &GradedPoset) -> Option<Result<CoverLabeling, LabelError>> {
        self.labels.as_ref().map(|l| CoverLabeling::from_keys(poset, l))
    }

    pub fn from_poset(poset: &GradedPoset, labeling: Option<&CoverLabeling>) -> Self {
        Self {
            elements: poset.elements().map(|e| poset.id(e).to_string()).collect(),
            covers: poset
                .covers()
                .map(|(x, y)| (poset.id(x).to_string(), poset.id(y).to_string()))
                .collect(),
            labels: labeling.map(|l| l.to_keys(poset).into_iter().map(|(k, v)| (k, v as i64)).collect()),
            ranks: None,
            witnesses: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn ypoly_json(p: &YPoly) -> Value {
    serde_json::json!({ "coeff": crate::ncpoly::coeff_json(p) })
}

pub fn ytpoly_json(p: &YTPoly) -> Value {
    let terms: Vec<Value> = (0..=p.t_degree().unwrap_or(0))
        .map(|k| (k, p.t_coeff(k)))
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| serde_json::json!({ "t": k, "coeff": crate::ncpoly::coeff_json(&c) }))
        .collect();
    serde_json::json!({ "terms": terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn round_trip() {
        let l = families::three_lines();
        let (lab, _) = crate::rlabel::min_atom_labeling(&l, None).unwrap();
        let f = PosetFile::from_poset(&l, Some(&lab));
        let back = PosetFile::parse(&f.to_json_string()).unwrap();
        let p = back.poset().unwrap();
        assert_eq!(
            p.ids_of(&p.elements().collect::<Vec<_>>()),
            l.ids_of(&l.elements().collect::<Vec<_>>())
        );
        assert_eq!(back.labeling(&p).unwrap().unwrap(), lab);
    }

    #[test]
    fn unknown_fields_are_ignored() {
        let f = PosetFile::parse(r#"{"name": "x", "elements": ["a"], "covers": []}"#).unwrap();
        assert_eq!(f.poset().unwrap().rank(), 0);
    }
}
