//! Multi-component Gauss codes: the universal representation of free links.
//!
//! A diagram is an ordered sequence of cyclic words over crossing labels in
//! which every label occurs exactly twice in total (double occurrence). An
//! empty word is a crossing-free circle, written `()` in the text format.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Internal index of a crossing within a diagram's label table.
pub type Crossing = u32;

/// Whether both passages of a crossing lie on one component or on two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossingKind {
    Pure,
    Mixed,
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingKind::Pure => write!(f, "pure"),
            CrossingKind::Mixed => write!(f, "mixed"),
        }
    }
}

/// A free-link diagram as a multi-component cyclic Gauss code.
///
/// Values are immutable after construction; every operation that changes a
/// diagram returns a fresh one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    labels: Vec<String>,
    words: Vec<Vec<Crossing>>,
}

impl LinkDiagram {
    /// Parses the text format: components separated by `/`, passages by
    /// whitespace, `()` for a crossing-free circle.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::EmptyInputIsZeroComponents);
        }
        let mut labels: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, Crossing> = BTreeMap::new();
        let mut words: Vec<Vec<Crossing>> = Vec::new();
        for segment in text.split('/') {
            let tokens: Vec<&str> = segment.split_whitespace().collect();
            if tokens.is_empty() {
                return Err(Error::MalformedToken(
                    "empty component; write `()` for a circle".into(),
                ));
            }
            if tokens == ["()"] {
                words.push(Vec::new());
                continue;
            }
            let mut word = Vec::with_capacity(tokens.len());
            for tok in tokens {
                if tok.contains('(') || tok.contains(')') || tok.contains('/') {
                    return Err(Error::MalformedToken(tok.to_string()));
                }
                let id = *index.entry(tok.to_string()).or_insert_with(|| {
                    labels.push(tok.to_string());
                    (labels.len() - 1) as Crossing
                });
                word.push(id);
            }
            words.push(word);
        }
        Self::from_parts(labels, words)
    }

    /// Builds a diagram from an existing label table and words, validating
    /// the double-occurrence invariant over the referenced crossings.
    pub(crate) fn from_parts(labels: Vec<String>, words: Vec<Vec<Crossing>>) -> Result<Self> {
        let mut counts: BTreeMap<Crossing, usize> = BTreeMap::new();
        for word in &words {
            for &x in word {
                *counts.entry(x).or_insert(0) += 1;
            }
        }
        for (&x, &n) in &counts {
            if n != 2 {
                return Err(Error::OccurrenceCountNotTwo(labels[x as usize].clone(), n));
            }
        }
        Ok(LinkDiagram { labels, words })
    }

    /// Replaces the words, keeping the label table. Used by moves and
    /// smoothings, which never violate double occurrence by construction.
    pub(crate) fn with_words(&self, words: Vec<Vec<Crossing>>) -> LinkDiagram {
        debug_assert!({
            let mut counts: BTreeMap<Crossing, usize> = BTreeMap::new();
            for word in &words {
                for &x in word {
                    *counts.entry(x).or_insert(0) += 1;
                }
            }
            counts.values().all(|&n| n == 2)
        });
        LinkDiagram {
            labels: self.labels.clone(),
            words,
        }
    }

    /// Adds a fresh crossing label derived from `hint` and returns its index.
    pub(crate) fn push_label(labels: &mut Vec<String>, hint: &str) -> Crossing {
        let mut candidate = hint.to_string();
        let mut k = 1usize;
        while labels.iter().any(|l| l == &candidate) {
            candidate = format!("{hint}{k}");
            k += 1;
        }
        labels.push(candidate);
        (labels.len() - 1) as Crossing
    }

    pub(crate) fn labels_mut(&mut self) -> &mut Vec<String> {
        &mut self.labels
    }

    pub fn component_count(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Vec<Crossing>] {
        &self.words
    }

    pub fn word(&self, comp: usize) -> &[Crossing] {
        &self.words[comp]
    }

    pub fn label(&self, x: Crossing) -> &str {
        &self.labels[x as usize]
    }

    /// Looks a crossing up by label; only crossings actually referenced by a
    /// word count.
    pub fn crossing_by_label(&self, label: &str) -> Result<Crossing> {
        self.crossings()
            .find(|&x| self.labels[x as usize] == label)
            .ok_or_else(|| Error::UnknownCrossing(label.to_string()))
    }

    /// All crossings referenced by the words, in ascending index order.
    pub fn crossings(&self) -> impl Iterator<Item = Crossing> + '_ {
        let mut seen: Vec<Crossing> = self.words.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    /// The two occurrence positions of a crossing, in scan order.
    pub fn occurrences(&self, x: Crossing) -> [(usize, usize); 2] {
        let mut out = Vec::with_capacity(2);
        for (c, word) in self.words.iter().enumerate() {
            for (p, &y) in word.iter().enumerate() {
                if y == x {
                    out.push((c, p));
                }
            }
        }
        debug_assert_eq!(out.len(), 2, "double occurrence violated");
        [out[0], out[1]]
    }

    pub fn kind(&self, x: Crossing) -> CrossingKind {
        let [a, b] = self.occurrences(x);
        if a.0 == b.0 {
            CrossingKind::Pure
        } else {
            CrossingKind::Mixed
        }
    }

    pub fn is_pure(&self, x: Crossing) -> bool {
        self.kind(x) == CrossingKind::Pure
    }

    /// Classification of every crossing, keyed by label.
    pub fn classify(&self) -> BTreeMap<String, CrossingKind> {
        self.crossings()
            .map(|x| (self.label(x).to_string(), self.kind(x)))
            .collect()
    }

    /// The two arcs strictly between the occurrences of a pure crossing,
    /// each as an ordered passage sequence.
    pub fn halves(&self, x: Crossing) -> Result<(Vec<Crossing>, Vec<Crossing>)> {
        let [a, b] = self.occurrences(x);
        if a.0 != b.0 {
            return Err(Error::NotPure(self.label(x).to_string()));
        }
        let word = &self.words[a.0];
        let n = word.len();
        let mut first = Vec::new();
        let mut p = (a.1 + 1) % n;
        while p != b.1 {
            first.push(word[p]);
            p = (p + 1) % n;
        }
        let mut second = Vec::new();
        let mut p = (b.1 + 1) % n;
        while p != a.1 {
            second.push(word[p]);
            p = (p + 1) % n;
        }
        Ok((first, second))
    }

    /// Number of crossings shared between components `i` and `j`.
    pub fn mixed_count_between(&self, i: usize, j: usize) -> usize {
        self.crossings()
            .filter(|&x| {
                let [a, b] = self.occurrences(x);
                (a.0 == i && b.0 == j) || (a.0 == j && b.0 == i)
            })
            .count()
    }

    /// Total number of mixed crossings.
    pub fn mixed_count(&self) -> usize {
        self.crossings()
            .filter(|&x| self.kind(x) == CrossingKind::Mixed)
            .count()
    }

    /// True iff components split into two nonempty groups with no mixed
    /// crossing between the groups.
    pub fn is_split(&self) -> Result<bool> {
        let n = self.component_count();
        if n < 2 {
            return Err(Error::FewerThanTwoComponents);
        }
        // Union components that share a crossing; split iff >1 class.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for x in self.crossings() {
            let [a, b] = self.occurrences(x);
            let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let root0 = find(&mut parent, 0);
        Ok((1..n).any(|i| find(&mut parent, i) != root0))
    }

    /// The sub-diagram spanned by the selected components. Crossings with an
    /// occurrence outside the selection are erased from the kept words.
    pub fn sub_diagram(&self, comps: &[usize]) -> LinkDiagram {
        let keep = |x: Crossing| {
            let [a, b] = self.occurrences(x);
            comps.contains(&a.0) && comps.contains(&b.0)
        };
        let words = comps
            .iter()
            .map(|&c| self.words[c].iter().copied().filter(|&x| keep(x)).collect())
            .collect();
        self.with_words(words)
    }

    /// Serializes in the text format with the diagram's own labels.
    pub fn serialize(&self) -> String {
        self.words
            .iter()
            .map(|word| {
                if word.is_empty() {
                    "()".to_string()
                } else {
                    word.iter()
                        .map(|&x| self.label(x).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}
