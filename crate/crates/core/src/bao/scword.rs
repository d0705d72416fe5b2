//! Words over substitutions and cylindrifications, and the partial maps they
//! induce on the index set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScToken {
    /// `s_i^j`, inducing the replacement `[i|j]` (i goes to j).
    Subst(usize, usize),
    Cyl(usize),
}

pub type ScWord = Vec<ScToken>;

/// A partial self-map of `{0..n-1}`; `None` marks an index outside the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialMap(pub Vec<Option<usize>>);

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        PartialMap((0..n).map(Some).collect())
    }

    /// The replacement `[i|j]`.
    pub fn replacement(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::identity(n);
        m.0[i] = Some(j);
        m
    }

    pub fn restricted_identity(n: usize, drop: usize) -> Self {
        let mut m = Self::identity(n);
        m.0[drop] = None;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.0.get(x).copied().flatten()
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &PartialMap) -> PartialMap {
        PartialMap(other.0.iter().map(|y| y.and_then(|y| self.apply(y))).collect())
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i].is_some()).collect()
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|v| format!("{i}->{v}")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn token_map(t: ScToken, n: usize) -> Result<PartialMap> {
    let check = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, bound: n })
        }
    };
    match t {
        ScToken::Subst(i, j) => {
            check(i)?;
            check(j)?;
            Ok(PartialMap::replacement(n, i, j))
        }
        ScToken::Cyl(i) => {
            check(i)?;
            Ok(PartialMap::restricted_identity(n, i))
        }
    }
}

/// The partial map induced by `w`: the empty word gives the identity,
/// appending `s_i^j` composes with `[i|j]` on the right, appending `c_i`
/// removes `i` from the domain.
pub fn sc_word_to_map(w: &[ScToken], n: usize) -> Result<PartialMap> {
    let mut m = PartialMap::identity(n);
    for &t in w {
        m = m.compose(&token_map(t, n)?);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn base_cases() {
        assert_eq!(sc_word_to_map(&[], 3).unwrap(), PartialMap::identity(3));
        assert_eq!(
            sc_word_to_map(&[ScToken::Cyl(1)], 3).unwrap(),
            PartialMap(vec![Some(0), None, Some(2)])
        );
        // [0|1] then drop 0: 0 leaves the domain, 1 and 2 fixed
        assert_eq!(
            sc_word_to_map(&[ScToken::Subst(0, 1), ScToken::Cyl(0)], 3).unwrap(),
            PartialMap(vec![None, Some(1), Some(2)])
        );
        assert_eq!(
            sc_word_to_map(&[ScToken::Cyl(0), ScToken::Subst(0, 1)], 3).unwrap(),
            PartialMap(vec![Some(1), Some(1), Some(2)])
        );
        assert!(matches!(
            sc_word_to_map(&[ScToken::Cyl(3)], 3),
            Err(Error::IndexOutOfRange { index: 3, bound: 3 })
        ));
    }

    fn arb_word(n: usize) -> impl Strategy<Value = ScWord> {
        let tok = prop_oneof![
            (0..n, 0..n).prop_map(|(i, j)| ScToken::Subst(i, j)),
            (0..n).prop_map(ScToken::Cyl),
        ];
        prop::collection::vec(tok, 0..10)
    }

    fn arb_map(n: usize) -> impl Strategy<Value = PartialMap> {
        prop::collection::vec(prop::option::of(0..n), n).prop_map(PartialMap)
    }

    proptest! {
        #[test]
        fn word_maps_are_compositional(w in arb_word(4), cut in 0usize..10) {
            let cut = cut.min(w.len());
            let (a, b) = w.split_at(cut);
            let whole = sc_word_to_map(&w, 4).unwrap();
            let parts = sc_word_to_map(a, 4).unwrap().compose(&sc_word_to_map(b, 4).unwrap());
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn composition_is_associative(f in arb_map(5), g in arb_map(5), h in arb_map(5)) {
            prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        }
    }
}
