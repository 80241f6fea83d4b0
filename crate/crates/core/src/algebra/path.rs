use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::matops::Quiver;
use crate::rational::{format_rat, Rat};
use crate::Vertex;

/// A path in a quiver: arrows (by declaration index) composed left to right.
/// The empty word is the trivial path at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<usize>,
}

// `is_trivial` plays the role of `is_empty` for paths.
#[allow(clippy::len_without_is_empty)]
impl PathWord {
    pub fn trivial(v: Vertex) -> Self {
        PathWord {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, idx: usize) -> Self {
        let a = &q.arrows()[idx];
        PathWord {
            source: a.source,
            target: a.target,
            arrows: vec![idx],
        }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = q.arrows().get(*arrows.first()?)?;
        let mut at = first.source;
        for &i in &arrows {
            let a = q.arrows().get(i)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some(PathWord {
            source: first.source,
            target: at,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `other`, or `None` if not composable.
    pub fn concat(&self, other: &PathWord) -> Option<PathWord> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source)
        } else {
            let names: Vec<&str> = self.arrows.iter().map(|&i| q.arrows()[i].name.as_str()).collect();
            names.join(".")
        }
    }
}

/// Length first, then lexicographic by arrow declaration order.
impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse rational combination of paths; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSum {
    terms: BTreeMap<PathWord, Rat>,
}

impl PathSum {
    pub fn zero() -> Self {
        PathSum::default()
    }

    pub fn from_word(w: PathWord) -> Self {
        Self::term(w, Rat::one())
    }

    pub fn term(w: PathWord, c: Rat) -> Self {
        let mut s = PathSum::zero();
        s.add_term(w, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathWord, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &PathWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, w: PathWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PathSum, c: &Rat) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> PathSum {
        let mut out = PathSum::zero();
        out.add_scaled(self, c);
        out
    }

    /// Largest word in the length-lexicographic order with its coefficient.
    pub fn leading(&self) -> Option<(&PathWord, &Rat)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(PathWord, Rat)> {
        self.terms.pop_last()
    }

    /// Common `(source, target)` of all terms, if homogeneous and nonzero.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|w| (w.source, w.target) == ends).then_some(ends)
    }

    /// `left * self * right` on words, dropping non-composable products.
    pub fn sandwich(&self, left: &PathWord, right: &PathWord) -> PathSum {
        let mut out = PathSum::zero();
        for (w, c) in &self.terms {
            if let Some(lw) = left.concat(w).and_then(|lw| lw.concat(right)) {
                out.add_term(lw, c.clone());
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| format!("{}*{}", format_rat(c), w.display(q)))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let idx: Vec<String> = self.arrows.iter().map(usize::to_string).collect();
            write!(f, "[{}]", idx.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn length_lex_order() {
        let q = Quiver::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let ab = PathWord::from_arrows(&q, vec![0, 1]).unwrap();
        let c = PathWord::arrow(&q, 2);
        assert!(ab > c);
        assert!(PathWord::trivial(3) < c);
        assert!(PathWord::from_arrows(&q, vec![1, 0]).is_none());
        let mut s = PathSum::from_word(ab.clone());
        s.add_term(c.clone(), rat(-1));
        assert_eq!(s.leading().unwrap().0, &ab);
        assert_eq!(s.endpoints(), Some((1, 3)));
        s.add_term(ab, rat(-1));
        assert_eq!(s.len(), 1);
    }
}
