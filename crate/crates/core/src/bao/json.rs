//! Canonical JSON form of cylindric atom structures.
//!
//! Keys are emitted in alphabetical order and every index list is sorted, so
//! `from_json(to_json(s))` reproduces `s` and re-serializes byte for byte.

use serde::{Deserialize, Serialize};

use crate::atomset::AtomSet;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};
use crate::relation::Relation;

#[derive(Serialize, Deserialize)]
struct CaJson {
    atoms: Vec<String>,
    cyl: Vec<Vec<[usize; 2]>>,
    diag: Vec<Vec<Vec<usize>>>,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    transp: Option<Vec<TranspJson>>,
}

#[derive(Serialize, Deserialize)]
struct TranspJson {
    i: usize,
    j: usize,
    pairs: Vec<[usize; 2]>,
}

impl CaAtomStructure {
    pub fn to_json(&self) -> String {
        let dim = self.dim();
        let doc = CaJson {
            atoms: self.labels().to_vec(),
            cyl: (0..dim)
                .map(|i| self.cyl_relation(i).pairs().map(|(a, b)| [a, b]).collect())
                .collect(),
            diag: (0..dim)
                .map(|i| (0..dim).map(|j| self.diag_set(i, j).to_vec()).collect())
                .collect(),
            dim,
            transp: self.has_transpositions().then(|| {
                let mut out = Vec::new();
                for i in 0..dim {
                    for j in i + 1..dim {
                        let p = self.transposition(i, j).expect("polyadic");
                        out.push(TranspJson {
                            i,
                            j,
                            pairs: p.iter().enumerate().map(|(a, &b)| [a, b]).collect(),
                        });
                    }
                }
                out
            }),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CaJson = serde_json::from_str(text)?;
        let n = doc.atoms.len();
        if doc.cyl.len() != doc.dim {
            return Err(Error::InvalidStructure(format!(
                "{} cylindrifier relations for dimension {}",
                doc.cyl.len(),
                doc.dim
            )));
        }
        let cyl = doc
            .cyl
            .into_iter()
            .map(|pairs| Relation::from_pairs(n, pairs.into_iter().map(|[a, b]| (a, b))).map(Relation::normalized))
            .collect::<Result<Vec<_>>>()?;
        let mut diag = Vec::with_capacity(doc.diag.len());
        for row in doc.diag {
            let mut out = Vec::with_capacity(row.len());
            for idx in row {
                if let Some(&bad) = idx.iter().find(|&&a| a >= n) {
                    return Err(Error::IndexOutOfRange { index: bad, bound: n });
                }
                out.push(AtomSet::from_indices(n, idx));
            }
            diag.push(out);
        }
        let s = CaAtomStructure::new(doc.dim, doc.atoms, cyl, diag)?;
        match doc.transp {
            None => Ok(s),
            Some(entries) => {
                let rels = entries
                    .into_iter()
                    .map(|e| {
                        Relation::from_pairs(n, e.pairs.into_iter().map(|[a, b]| (a, b))).map(|r| ((e.i, e.j), r))
                    })
                    .collect::<Result<Vec<_>>>()?;
                s.with_transpositions(rels)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::{full_set_algebra, three_cube};

    #[test]
    fn round_trip_is_byte_stable() {
        for s in [full_set_algebra(3, 2).unwrap(), three_cube(), full_set_algebra(2, 3).unwrap().without_transpositions()] {
            let text = s.to_json();
            let back = CaAtomStructure::from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_json(), text);
            assert_eq!(back.id(), s.id());
        }
    }

    #[test]
    fn keys_are_alphabetical() {
        let text = full_set_algebra(2, 2).unwrap().to_json();
        let order: Vec<usize> = ["\"atoms\"", "\"cyl\"", "\"diag\"", "\"dim\"", "\"transp\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bad_index_is_rejected() {
        let text = r#"{"atoms":["a"],"cyl":[[[0,0]],[[0,1]]],"diag":[[[0],[0]],[[0],[0]]],"dim":2}"#;
        assert!(matches!(CaAtomStructure::from_json(text), Err(Error::IndexOutOfRange { .. })));
    }
}
