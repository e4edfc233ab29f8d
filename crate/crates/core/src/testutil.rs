//! Test support: independent oracles and seeded diagram generators.
//!
//! Everything here exists to check the main implementation paths from a
//! different route; production code must not depend on it.

use rand::Rng;

use crate::bracket::SmoothingWay;
use crate::diagram::LinkDiagram;
use crate::graph::FramedGraph;

/// Smooths one crossing by reconnection on the framed graph and re-extracts
/// the Gauss code by walking the modified transition system. Independent of
/// the word-splicing implementation in `bracket`.
pub fn graph_smooth_oracle(d: &LinkDiagram, label: &str, way: SmoothingWay) -> LinkDiagram {
    let g = FramedGraph::from_diagram(d);
    let v = (0..g.vertex_count())
        .find(|&i| g.label(i) == label)
        .expect("crossing exists");
    // Transition at the smoothed vertex: oriented joins in-A to out-B
    // (slots 0..3 pair 0<->3, 1<->2); disoriented joins the two in slots and
    // the two out slots (0<->2, 1<->3). Elsewhere the passage is opposite.
    let depart_slot = |vertex: usize, slot: u8| -> u8 {
        if vertex != v {
            return slot ^ 1;
        }
        match way {
            SmoothingWay::Oriented => 3 - slot,
            SmoothingWay::Disoriented => slot ^ 2,
        }
    };
    let incid = g.incidence();
    let edges = g.edges();
    let endpoint = |e: usize, end: usize| if end == 0 { edges[e].0 } else { edges[e].1 };
    let mut visited = vec![false; edges.len()];
    let mut words: Vec<Vec<String>> = Vec::new();
    let mut traversals = 0usize;
    for e0 in 0..edges.len() {
        if visited[e0] {
            continue;
        }
        let mut word = Vec::new();
        let start = (e0, 1usize);
        let mut cur = start;
        loop {
            let (e, end) = cur;
            visited[e] = true;
            traversals += 1;
            let arrive = endpoint(e, end);
            if arrive.vertex != v {
                word.push(g.label(arrive.vertex).to_string());
            }
            let depart = depart_slot(arrive.vertex, arrive.slot);
            let (ne, side) = incid[arrive.vertex][depart as usize];
            cur = (ne, 1 - side);
            if cur == start {
                break;
            }
        }
        words.push(word);
    }
    assert_eq!(traversals, edges.len(), "each edge is traversed exactly once");
    let code = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "()".to_string()
            } else {
                w.join(" ")
            }
        })
        .chain(std::iter::repeat("()".to_string()).take(g.free_circles()))
        .collect::<Vec<_>>()
        .join(" / ");
    LinkDiagram::parse(&code).expect("walk yields a double-occurrence code")
}

/// A random knot word on `chords` chords: a shuffled double-occurrence
/// sequence.
pub fn random_knot(rng: &mut impl Rng, chords: usize) -> LinkDiagram {
    assert!(chords >= 1);
    let mut slots: Vec<usize> = (0..chords).flat_map(|c| [c, c]).collect();
    for i in (1..slots.len()).rev() {
        let j = rng.random_range(0..=i);
        slots.swap(i, j);
    }
    let code = slots
        .iter()
        .map(|c| format!("c{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    LinkDiagram::parse(&code).expect("double occurrence by construction")
}

/// A random diagram with the given component count. Occurrences are
/// scattered uniformly; components may come out empty. Retries until every
/// component word length is even when `even_words` is set.
pub fn random_link(
    rng: &mut impl Rng,
    chords: usize,
    comps: usize,
    even_words: bool,
) -> LinkDiagram {
    assert!(comps >= 1);
    loop {
        let mut words: Vec<Vec<String>> = vec![Vec::new(); comps];
        for c in 0..chords {
            for _ in 0..2 {
                let k = rng.random_range(0..comps);
                let pos = rng.random_range(0..=words[k].len());
                words[k].insert(pos, format!("c{c}"));
            }
        }
        if even_words && words.iter().any(|w| w.len() % 2 != 0) {
            continue;
        }
        let code = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "()".to_string()
                } else {
                    w.join(" ")
                }
            })
            .collect::<Vec<_>>()
            .join(" / ");
        return LinkDiagram::parse(&code).expect("double occurrence by construction");
    }
}
