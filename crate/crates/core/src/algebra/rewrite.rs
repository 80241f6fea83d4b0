//! Overlap completion of path relations and normal forms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::One;

use crate::algebra::{PathSum, PathWord, Presentation};
use crate::error::{Error, Result};
use crate::matops::Quiver;
use crate::rational::Rat;

/// `lead -> rhs`, with every word of `rhs` strictly below `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: PathWord,
    pub rhs: PathSum,
}

/// A confluent rewriting system for `KQ/I` together with its irreducible
/// words, which form a basis of the quotient.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    quiver: Quiver,
    rules: Vec<Rule>,
    index: HashMap<Vec<usize>, usize>,
    max_lead: usize,
    basis: Vec<PathWord>,
    finite_certificate: bool,
}

struct Completion<'a> {
    quiver: &'a Quiver,
    len_cap: usize,
    size_cap: usize,
    next_id: usize,
    rules: BTreeMap<usize, Rule>,
    index: HashMap<Vec<usize>, usize>,
    /// Overlaps keyed by (word length, first rule, second rule, overlap).
    pairs: BTreeSet<(usize, usize, usize, usize)>,
}

impl Completion<'_> {
    fn find_redex(&self, w: &PathWord) -> Option<(usize, usize, usize)> {
        let a = &w.arrows;
        for start in 0..a.len() {
            for end in start + 2..=a.len() {
                if let Some(&id) = self.index.get(&a[start..end]) {
                    return Some((id, start, end));
                }
            }
        }
        None
    }

    fn reduce(&self, s: PathSum) -> PathSum {
        reduce_with(self.quiver, s, |w| {
            self.find_redex(w).map(|(id, st, en)| (&self.rules[&id].rhs, st, en))
        })
    }

    fn add(&mut self, poly: PathSum) -> Result<()> {
        let mut stack = vec![poly];
        while let Some(p) = stack.pop() {
            let mut r = self.reduce(p);
            let Some((lead, c)) = r.pop_leading() else {
                continue;
            };
            if lead.len() > self.len_cap {
                return Err(Error::NotFiniteDimensional { len_cap: self.len_cap });
            }
            let rhs = r.scale(&(-Rat::one() / c));
            // rules whose lead contains the new lead are retired and re-added
            let retired: Vec<usize> = self
                .rules
                .iter()
                .filter(|(_, rule)| contains(&rule.lead.arrows, &lead.arrows))
                .map(|(&id, _)| id)
                .collect();
            for id in retired {
                let rule = self.rules.remove(&id).expect("live rule");
                self.index.remove(&rule.lead.arrows);
                let mut back = rule.rhs.scale(&-Rat::one());
                back.add_term(rule.lead, Rat::one());
                stack.push(back);
            }
            let id = self.next_id;
            self.next_id += 1;
            self.index.insert(lead.arrows.clone(), id);
            self.rules.insert(id, Rule { lead, rhs });
            if self.rules.len() > self.size_cap {
                return Err(Error::RuleCapExceeded {
                    size_cap: self.size_cap,
                });
            }
            self.queue_pairs(id);
        }
        Ok(())
    }

    fn queue_pairs(&mut self, id: usize) {
        let new = &self.rules[&id];
        let mut found = Vec::new();
        for (&other, rule) in &self.rules {
            if new.rhs.is_zero() && rule.rhs.is_zero() {
                continue;
            }
            for (x, y) in [(id, other), (other, id)] {
                let (l1, l2) = (&self.rules[&x].lead.arrows, &self.rules[&y].lead.arrows);
                for d in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - d..] == l2[..d] {
                        found.push((l1.len() + l2.len() - d, x, y, d));
                    }
                }
                if x == y {
                    break;
                }
            }
        }
        self.pairs.extend(found);
    }

    fn s_polynomial(&self, x: usize, y: usize, d: usize) -> Option<PathSum> {
        let (r1, r2) = (self.rules.get(&x)?, self.rules.get(&y)?);
        let (l1, l2) = (&r1.lead.arrows, &r2.lead.arrows);
        let u = PathWord::from_arrows(self.quiver, l1[..l1.len() - d].to_vec())?;
        let w = PathWord::from_arrows(self.quiver, l2[d..].to_vec())?;
        let mut s = r1.rhs.sandwich(&PathWord::trivial(r1.lead.source), &w);
        s.add_scaled(&r2.rhs.sandwich(&u, &PathWord::trivial(r2.lead.target)), &-Rat::one());
        Some(s)
    }

    fn run(&mut self) -> Result<()> {
        while let Some((_, x, y, d)) = self.pairs.pop_first() {
            if let Some(s) = self.s_polynomial(x, y, d) {
                self.add(s)?;
            }
        }
        Ok(())
    }
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Rewrites the largest reducible term first until nothing is reducible.
fn reduce_with<'r>(
    q: &Quiver,
    mut work: PathSum,
    find: impl Fn(&PathWord) -> Option<(&'r PathSum, usize, usize)>,
) -> PathSum {
    let mut out = PathSum::zero();
    while let Some((w, c)) = work.pop_leading() {
        match find(&w) {
            Some((rhs, start, end)) => {
                let (u, v) = split(q, &w, start, end);
                work.add_scaled(&rhs.sandwich(&u, &v), &c);
            }
            None => out.add_term(w, c),
        }
    }
    out
}

fn split(q: &Quiver, w: &PathWord, start: usize, end: usize) -> (PathWord, PathWord) {
    let part = |range: &[usize], at: crate::Vertex| {
        if range.is_empty() {
            PathWord::trivial(at)
        } else {
            PathWord::from_arrows(q, range.to_vec()).expect("subword of a path")
        }
    };
    (part(&w.arrows[..start], w.source), part(&w.arrows[end..], w.target))
}

impl RewriteSystem {
    /// Completes the relations of `p` to a confluent system under the
    /// length-lexicographic order and enumerates the irreducible words.
    pub fn complete(p: &Presentation, len_cap: usize, size_cap: usize) -> Result<Self> {
        let mut c = Completion {
            quiver: &p.quiver,
            len_cap,
            size_cap,
            next_id: 0,
            rules: BTreeMap::new(),
            index: HashMap::new(),
            pairs: BTreeSet::new(),
        };
        for r in &p.relations {
            c.add(r.clone())?;
        }
        c.run()?;

        let mut rules: Vec<Rule> = c.rules.values().cloned().collect();
        for rule in &mut rules {
            rule.rhs = c.reduce(rule.rhs.clone());
        }
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.arrows.clone(), i))
            .collect();
        let max_lead = rules.iter().map(|r| r.lead.len()).max().unwrap_or(0);
        let mut rs = RewriteSystem {
            quiver: p.quiver.clone(),
            rules,
            index,
            max_lead,
            basis: Vec::new(),
            finite_certificate: false,
        };
        rs.enumerate_basis(len_cap, size_cap)?;
        Ok(rs)
    }

    fn enumerate_basis(&mut self, len_cap: usize, size_cap: usize) -> Result<()> {
        let q = &self.quiver;
        let mut basis: Vec<PathWord> = (1..=q.vertex_count()).map(PathWord::trivial).collect();
        let mut layer: Vec<PathWord> = (0..q.arrows().len()).map(|i| PathWord::arrow(q, i)).collect();
        while !layer.is_empty() {
            if layer[0].len() >= len_cap {
                return Err(Error::NotFiniteDimensional { len_cap });
            }
            basis.extend(layer.iter().cloned());
            if basis.len() > size_cap {
                return Err(Error::RuleCapExceeded { size_cap });
            }
            let mut next = Vec::new();
            for w in &layer {
                for (i, a) in q.arrows().iter().enumerate() {
                    if a.source != w.target {
                        continue;
                    }
                    let mut arrows = w.arrows.clone();
                    arrows.push(i);
                    if !self.has_suffix_redex(&arrows) {
                        next.push(PathWord {
                            source: w.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            layer = next;
        }
        self.basis = basis;
        self.finite_certificate = true;
        Ok(())
    }

    fn has_suffix_redex(&self, arrows: &[usize]) -> bool {
        let len = arrows.len();
        (2..=self.max_lead.min(len)).any(|l| self.index.contains_key(&arrows[len - l..]))
    }

    fn redexes(&self, w: &PathWord) -> Vec<(usize, usize, usize)> {
        let a = &w.arrows;
        let mut out = Vec::new();
        for start in 0..a.len() {
            for end in start + 2..=a.len().min(start + self.max_lead) {
                if let Some(&id) = self.index.get(&a[start..end]) {
                    out.push((id, start, end));
                }
            }
        }
        out
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Irreducible words: trivial paths, then by length and arrow order.
    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    pub fn finite_certificate(&self) -> bool {
        self.finite_certificate
    }

    pub fn normal_form(&self, s: &PathSum) -> PathSum {
        reduce_with(&self.quiver, s.clone(), |w| {
            self.redexes(w)
                .first()
                .map(|&(id, st, en)| (&self.rules[id].rhs, st, en))
        })
    }

    /// Reduces with an arbitrary strategy: `choose(k)` picks one of `k`
    /// available (term, redex) pairs. Confluence means the result never
    /// depends on the choices.
    pub fn normal_form_by(&self, s: &PathSum, mut choose: impl FnMut(usize) -> usize) -> PathSum {
        let mut work = s.clone();
        loop {
            let mut options = Vec::new();
            for (w, _) in work.terms() {
                for r in self.redexes(w) {
                    options.push((w.clone(), r));
                }
            }
            if options.is_empty() {
                return work;
            }
            let (w, (id, st, en)) = options.swap_remove(choose(options.len()) % options.len());
            let c = work.coefficient(&w);
            work.add_term(w.clone(), -c.clone());
            let (u, v) = split(&self.quiver, &w, st, en);
            work.add_scaled(&self.rules[id].rhs.sandwich(&u, &v), &c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;

    fn system(text: &str) -> Result<RewriteSystem> {
        RewriteSystem::complete(&parse(text)?, 64, 20000)
    }

    fn word(rs: &RewriteSystem, names: &[&str]) -> PathWord {
        let idx = names.iter().map(|n| rs.quiver().arrow_index(n).unwrap()).collect();
        PathWord::from_arrows(rs.quiver(), idx).unwrap()
    }

    #[test]
    fn linear_a3_has_six_paths() {
        let rs = system("vertices 3\narrow a: 1->2\narrow b: 2->3\n").unwrap();
        assert!(rs.finite_certificate());
        let labels: Vec<String> = rs.basis().iter().map(|w| w.display(rs.quiver())).collect();
        assert_eq!(labels, ["e1", "e2", "e3", "a", "b", "a.b"]);
    }

    #[test]
    fn cyclic_zero_relations() {
        let rs = system(
            "vertices 3\narrow x: 2->1\narrow y: 1->3\narrow z: 3->2\n\
             relation x.y\nrelation y.z\nrelation z.x\n",
        )
        .unwrap();
        assert_eq!(rs.basis().len(), 6);
    }

    #[test]
    fn loop_without_relations_is_infinite() {
        let err = system("vertices 1\narrow x: 1->1\n").unwrap_err();
        assert_eq!(err, Error::NotFiniteDimensional { len_cap: 64 });
        assert!(err.is_cap());
    }

    #[test]
    fn commutativity_rewrites_to_smaller_word() {
        // c, d declared first, so a.b is the larger word
        let rs = system("vertices 4\narrow c: 1->3\narrow d: 3->4\narrow a: 1->2\narrow b: 2->4\nrelation a.b - c.d\n")
            .unwrap();
        let ab = PathSum::from_word(word(&rs, &["a", "b"]));
        assert_eq!(rs.normal_form(&ab), PathSum::from_word(word(&rs, &["c", "d"])));
        assert_eq!(rs.basis().len(), 9);
        let e = PathSum::from_word(PathWord::trivial(2));
        assert_eq!(rs.normal_form(&e), e);
    }

    #[test]
    fn overlaps_are_resolved() {
        // x^2 = y, and x^3 = 0 must follow from x.y overlaps
        let rs = system(
            "vertices 1\narrow x: 1->1\narrow y: 1->1\n\
             relation x.x.x\nrelation y.y\nrelation x.y - y.x\nrelation y.x.x\n",
        )
        .unwrap();
        for w in rs.basis() {
            let s = PathSum::from_word(w.clone());
            assert_eq!(rs.normal_form(&s), s);
        }
        let direct = system(
            "vertices 1\narrow x: 1->1\narrow y: 1->1\n\
             relation x.x.x\nrelation y.y\nrelation y.x - x.y\nrelation x.x.y\n",
        )
        .unwrap();
        assert_eq!(rs.basis().len(), direct.basis().len());
    }

    #[test]
    fn non_homogeneous_relation() {
        // x^2 = x^3 on a loop: x^2 is a nonzero idempotent, dimension 3
        let rs = system("vertices 1\narrow x: 1->1\nrelation x.x - x.x.x\n").unwrap();
        assert_eq!(rs.basis().len(), 3);
    }
}
