//! Smoothings and the diagram-valued bracket invariants.
//!
//! The full bracket sums, over all both-way smoothings of the Gaussian-even
//! pure crossings, the classes of the results in the space of diagrams
//! modulo the second Reidemeister move and the rule that a multi-component
//! diagram with a crossing-free circle is zero. The knot bracket projects
//! away terms with more than one unicursal component. The relative bracket
//! of an ordered two-component link smooths the even pure crossings of the
//! second component only.

use serde::Serialize;
use std::collections::BTreeSet;

use crate::canon::{CanonMode, CanonicalForm};
use crate::diagram::{Crossing, LinkDiagram};
use crate::error::{Error, Result};
use crate::moves::{apply_move, r2_dec_sites, MoveKind};
use crate::parity::gaussian_parity;

/// The two splittings at a crossing. `Oriented` respects the traversal
/// orientation and splits a pure crossing's component in two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SmoothingWay {
    Oriented,
    Disoriented,
}

/// Smooths a pure crossing. With the component rotated to `v H1 v H2`, the
/// oriented way yields the two components `(H1)(H2)` in place; the
/// disoriented way yields the single component `(H1 reverse(H2))`.
pub fn smooth(d: &LinkDiagram, x: Crossing, way: SmoothingWay) -> Result<LinkDiagram> {
    let [a, b] = d.occurrences(x);
    if a.0 != b.0 {
        return Err(Error::NotPure(d.label(x).to_string()));
    }
    let word = d.word(a.0);
    let n = word.len();
    let (i, j) = (a.1, b.1);
    let mut h1 = Vec::new();
    let mut p = (i + 1) % n;
    while p != j {
        h1.push(word[p]);
        p = (p + 1) % n;
    }
    let mut h2 = Vec::new();
    let mut p = (j + 1) % n;
    while p != i {
        h2.push(word[p]);
        p = (p + 1) % n;
    }
    let mut words: Vec<Vec<Crossing>> = d.words().to_vec();
    match way {
        SmoothingWay::Oriented => {
            words[a.0] = h1;
            words.insert(a.0 + 1, h2);
        }
        SmoothingWay::Disoriented => {
            h2.reverse();
            h1.extend(h2);
            words[a.0] = h1;
        }
    }
    Ok(d.with_words(words))
}

/// Smooths a mixed crossing, merging its two components. With the words
/// rotated to `(v X)` and `(v Y)`, the oriented way yields `(X Y)` and the
/// disoriented way `(X reverse(Y))`.
pub fn smooth_mixed(d: &LinkDiagram, x: Crossing, way: SmoothingWay) -> Result<LinkDiagram> {
    let [a, b] = d.occurrences(x);
    if a.0 == b.0 {
        return Err(Error::NotMixed(d.label(x).to_string()));
    }
    let rotate_after = |comp: usize, pos: usize| -> Vec<Crossing> {
        let w = d.word(comp);
        let n = w.len();
        (1..n).map(|k| w[(pos + k) % n]).collect()
    };
    let xs = rotate_after(a.0, a.1);
    let mut ys = rotate_after(b.0, b.1);
    if way == SmoothingWay::Disoriented {
        ys.reverse();
    }
    let mut merged = xs;
    merged.extend(ys);
    let mut words: Vec<Vec<Crossing>> = d.words().to_vec();
    words[a.0] = merged;
    words.remove(b.0);
    Ok(d.with_words(words))
}

/// Smooths a crossing of either kind.
pub fn smooth_any(d: &LinkDiagram, x: Crossing, way: SmoothingWay) -> Result<LinkDiagram> {
    let [a, b] = d.occurrences(x);
    if a.0 == b.0 {
        smooth(d, x, way)
    } else {
        smooth_mixed(d, x, way)
    }
}

/// The class of a diagram in the bracket's target space: zero, or the
/// canonical form of its R2-irreducible representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GNormal {
    Zero,
    Form(CanonicalForm),
}

/// Exhaustively applies decreasing R2 moves. Returns `Zero` as soon as a
/// stage has more than one unicursal component and at least one crossing-free
/// circle; otherwise the canonical form of the irreducible representative.
/// Confluence over reduction orders is checked by the test suites.
pub fn normalize_g(d: &LinkDiagram) -> GNormal {
    let mut cur = d.clone();
    loop {
        if cur.component_count() > 1 && cur.words().iter().any(|w| w.is_empty()) {
            return GNormal::Zero;
        }
        let sites = r2_dec_sites(&cur);
        match sites.first() {
            None => return GNormal::Form(cur.canonical(CanonMode::Unordered)),
            Some(m) => cur = apply_move(&cur, m).expect("enumerated site applies"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketSpace {
    /// All diagrams modulo R2 and circle annihilation.
    G,
    /// Single unicursal component terms only.
    GKnot,
    /// Ordered two-component terms modulo moves on the first component,
    /// mixed moves, and R2 on the second.
    GRel,
}

/// A Z2 set of canonicalized diagrams in one of the bracket spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketValue {
    pub space: BracketSpace,
    pub terms: BTreeSet<CanonicalForm>,
}

impl BracketValue {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_texts(&self) -> Vec<String> {
        self.terms.iter().map(|t| t.text().to_string()).collect()
    }
}

fn xor_insert(set: &mut BTreeSet<CanonicalForm>, term: CanonicalForm) {
    if !set.remove(&term) {
        set.insert(term);
    }
}

fn check_even_lengths(d: &LinkDiagram) -> Result<()> {
    for (c, w) in d.words().iter().enumerate() {
        if w.len() % 2 != 0 {
            return Err(Error::OddComponentLength(c));
        }
    }
    Ok(())
}

/// Gaussian-even pure crossings, the smoothing sites of the bracket.
fn even_pure_crossings(d: &LinkDiagram) -> Result<Vec<Crossing>> {
    let mut sites = Vec::new();
    for x in d.crossings() {
        if d.is_pure(x) && gaussian_parity(d, x)? == 0 {
            sites.push(x);
        }
    }
    Ok(sites)
}

fn smooth_state(d: &LinkDiagram, sites: &[Crossing], state: usize) -> LinkDiagram {
    let mut cur = d.clone();
    for (bit, &x) in sites.iter().enumerate() {
        let way = if state & (1 << bit) == 0 {
            SmoothingWay::Oriented
        } else {
            SmoothingWay::Disoriented
        };
        cur = smooth_any(&cur, x, way).expect("site still present");
    }
    cur
}

/// The full parity bracket: the Z2 sum over all states smoothing every
/// Gaussian-even pure crossing both ways.
pub fn bracket_full(d: &LinkDiagram) -> Result<BracketValue> {
    check_even_lengths(d)?;
    let sites = even_pure_crossings(d)?;
    let mut terms = BTreeSet::new();
    for state in 0..(1usize << sites.len()) {
        match normalize_g(&smooth_state(d, &sites, state)) {
            GNormal::Zero => {}
            GNormal::Form(f) => xor_insert(&mut terms, f),
        }
    }
    Ok(BracketValue {
        space: BracketSpace::G,
        terms,
    })
}

/// The knot bracket: the full bracket with multi-component terms dropped.
pub fn bracket_knot(d: &LinkDiagram) -> Result<BracketValue> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let full = bracket_full(d)?;
    let terms = full
        .terms
        .into_iter()
        .filter(|t| t.to_diagram().component_count() == 1)
        .collect();
    Ok(BracketValue {
        space: BracketSpace::GKnot,
        terms,
    })
}

/// The relative bracket of an ordered two-component link: smooths the even
/// pure crossings of the second component, keeps states whose second part
/// has one unicursal component, reduces each term by the space's defining
/// relations, and canonicalizes with the component order fixed.
pub fn bracket_rel(d: &LinkDiagram) -> Result<BracketValue> {
    if d.component_count() != 2 {
        return Err(Error::NotTwoComponents);
    }
    if d.word(1).len() % 2 != 0 {
        return Err(Error::OddComponentLength(1));
    }
    let mut sites = Vec::new();
    for x in d.crossings() {
        let [a, b] = d.occurrences(x);
        if a.0 == 1 && b.0 == 1 && gaussian_parity(d, x)? == 0 {
            sites.push(x);
        }
    }
    let mut terms = BTreeSet::new();
    for state in 0..(1usize << sites.len()) {
        let smoothed = smooth_state(d, &sites, state);
        if smoothed.component_count() != 2 {
            continue;
        }
        let reduced = reduce_rel_term(&smoothed);
        xor_insert(&mut terms, reduced.canonical(CanonMode::Ordered));
    }
    Ok(BracketValue {
        space: BracketSpace::GRel,
        terms,
    })
}

/// Whether a move stays inside the relative bracket's relations: moves on
/// the first component, mixed moves, and R2 on the second component. R1 and
/// R3 purely inside the second component are not quotiented.
pub(crate) fn rel_relation_move(d: &LinkDiagram, m: &crate::moves::MoveApplication) -> bool {
    let pure_second = |label: &str| {
        let x = d.crossing_by_label(label).expect("participant exists");
        let [a, b] = d.occurrences(x);
        a.0 == 1 && b.0 == 1
    };
    match m.kind() {
        MoveKind::R2 => true,
        MoveKind::R1 => !m.participants(d).iter().any(|l| pure_second(l)),
        MoveKind::R3 => !m.participants(d).iter().all(|l| pure_second(l)),
    }
}

/// Deterministic minimal representative under the relation moves.
fn reduce_rel_term(d: &LinkDiagram) -> LinkDiagram {
    let budget = crate::search::SearchBudget {
        max_states: 2000,
        ..Default::default()
    };
    crate::search::minimal_representative_with(d, CanonMode::Ordered, &budget, &rel_relation_move)
}
