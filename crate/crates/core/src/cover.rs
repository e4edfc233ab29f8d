//! The two-fold covering of a framed 4-graph and its one-sheet projection.
//!
//! A spanning forest classifies edges as good or bad: a non-tree edge is
//! good when its fundamental cycle passes an even number of vertices
//! transversally. Good edges lift to parallel copies, bad edges to crossed
//! copies. The construction does not depend on the chosen forest; the test
//! suites check that over all forests at desk scale.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::CanonMode;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::graph::{FramedGraph, HalfEdge, Passage};
use crate::parity::gaussian_parity;

#[derive(Clone, Debug, Serialize)]
pub struct EdgeClassEntry {
    pub edge: usize,
    pub good: bool,
    /// Edges of the fundamental cycle, the non-tree edge first.
    pub cycle: Vec<usize>,
    pub rotating: usize,
    pub transversal: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeClassification {
    pub tree: Vec<usize>,
    pub entries: Vec<EdgeClassEntry>,
}

impl EdgeClassification {
    pub fn is_good(&self, edge: usize) -> bool {
        self.tree.contains(&edge)
            || self
                .entries
                .iter()
                .find(|e| e.edge == edge)
                .map(|e| e.good)
                .unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum TreeChoice<'a> {
    /// Deterministic: union-find over ascending edge indices.
    Lexicographic,
    /// Union-find over a seeded shuffle of the edges.
    Seeded(u64),
    /// An explicit spanning forest given as edge indices.
    Explicit(&'a [usize]),
}

fn spanning_forest(g: &FramedGraph, choice: TreeChoice) -> Vec<usize> {
    let order: Vec<usize> = match choice {
        TreeChoice::Lexicographic => (0..g.edges().len()).collect(),
        TreeChoice::Seeded(seed) => {
            let mut order: Vec<usize> = (0..g.edges().len()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order
        }
        TreeChoice::Explicit(edges) => return edges.to_vec(),
    };
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut tree = Vec::new();
    for e in order {
        let (a, b) = g.edges()[e];
        let (ra, rb) = (find(&mut parent, a.vertex), find(&mut parent, b.vertex));
        if ra != rb {
            parent[ra] = rb;
            tree.push(e);
        }
    }
    tree.sort_unstable();
    tree
}

/// Classifies every non-forest edge by the transversal-vertex parity of its
/// fundamental cycle. Forest edges are good by definition.
pub fn classify_edges(g: &FramedGraph, choice: TreeChoice) -> EdgeClassification {
    let tree = spanning_forest(g, choice);
    // Tree adjacency with the half-edges at each end.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for &e in &tree {
        let (a, b) = g.edges()[e];
        adj[a.vertex].push((b.vertex, e));
        adj[b.vertex].push((a.vertex, e));
    }
    let half_at = |e: usize, v: usize, other_end: bool| -> HalfEdge {
        let (a, b) = g.edges()[e];
        // For loops the two ends are distinguished by `other_end`.
        if a.vertex == b.vertex {
            if other_end {
                b
            } else {
                a
            }
        } else if a.vertex == v {
            a
        } else {
            b
        }
    };
    let tree_path = |from: usize, to: usize| -> Vec<(usize, usize)> {
        // Vertices are few; plain BFS. Returns (edge, vertex arrived at).
        let n = g.vertex_count();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, e) = prev[cur].expect("forest spans the connected component");
            path.push((e, cur));
            cur = p;
        }
        path.reverse();
        path
    };

    let mut entries = Vec::new();
    for e in 0..g.edges().len() {
        if tree.contains(&e) {
            continue;
        }
        let (a, b) = g.edges()[e];
        let (v, w) = (a.vertex, b.vertex);
        // Closed walk: e from v to w, then the forest path from w back to v.
        // Each visited vertex contributes one (arrive, depart) pair.
        let mut rotating = 0usize;
        let mut transversal = 0usize;
        let mut cycle = vec![e];
        let mut count = |arrive: HalfEdge, depart: HalfEdge| {
            if depart.slot == arrive.slot ^ 1 {
                transversal += 1;
            } else {
                rotating += 1;
            }
        };
        if v == w {
            count(b, a);
        } else {
            let path = tree_path(w, v);
            // Walk arrives at w via e's half there.
            let mut arrive = b;
            let mut at = w;
            for &(t, next) in &path {
                let depart = half_at(t, at, false);
                count(arrive, depart);
                cycle.push(t);
                // Forest edges are never loops, so the ends are unambiguous.
                let (ta, tb) = g.edges()[t];
                arrive = if ta.vertex == next { ta } else { tb };
                at = next;
            }
            count(arrive, a);
        }
        entries.push(EdgeClassEntry {
            edge: e,
            good: transversal % 2 == 0,
            cycle,
            rotating,
            transversal,
        });
    }
    EdgeClassification { tree, entries }
}

/// The two-fold covering graph with its involution and component duality.
#[derive(Clone, Debug)]
pub struct CoveringGraph {
    pub graph: FramedGraph,
    pub vertex_dual: Vec<usize>,
    pub edge_dual: Vec<usize>,
    /// Unicursal components of the covering, in walk order.
    pub components: Vec<Vec<Passage>>,
    /// Index of each component's dual component.
    pub component_dual: Vec<usize>,
    /// Crossing-free circle pairs (each input circle lifts to two).
    pub circle_pairs: usize,
}

pub fn covering_k2(d: &LinkDiagram) -> CoveringGraph {
    covering_k2_with(d, TreeChoice::Lexicographic)
}

pub fn covering_k2_with(d: &LinkDiagram, choice: TreeChoice) -> CoveringGraph {
    let g = FramedGraph::from_diagram(d);
    let classes = classify_edges(&g, choice);
    let labels: Vec<String> = (0..g.vertex_count())
        .flat_map(|v| {
            let base = g.label(v);
            [format!("{base}.1"), format!("{base}.2")]
        })
        .collect();
    let copy = |h: HalfEdge, k: usize| HalfEdge {
        vertex: 2 * h.vertex + k,
        slot: h.slot,
    };
    let mut edges = Vec::with_capacity(2 * g.edges().len());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if classes.is_good(e) {
            edges.push((copy(a, 0), copy(b, 0)));
            edges.push((copy(a, 1), copy(b, 1)));
        } else {
            edges.push((copy(a, 0), copy(b, 1)));
            edges.push((copy(a, 1), copy(b, 0)));
        }
    }
    let cover = FramedGraph::new(labels, edges, 2 * g.free_circles());
    let components = cover.unicursal_components();
    let vertex_dual: Vec<usize> = (0..2 * g.vertex_count()).map(|v| v ^ 1).collect();
    let edge_dual: Vec<usize> = (0..2 * g.edges().len()).map(|e| e ^ 1).collect();
    let mut comp_of = std::collections::HashMap::new();
    for (i, comp) in components.iter().enumerate() {
        for p in comp {
            comp_of.insert(*p, i);
        }
    }
    let component_dual: Vec<usize> = components
        .iter()
        .map(|comp| {
            let p = comp[0];
            let dual = Passage {
                vertex: p.vertex ^ 1,
                strand: p.strand,
            };
            comp_of[&dual]
        })
        .collect();
    CoveringGraph {
        graph: cover,
        vertex_dual,
        edge_dual,
        components,
        component_dual,
        circle_pairs: g.free_circles(),
    }
}

impl CoveringGraph {
    /// The covering as a plain diagram (sheets plus lifted circles).
    pub fn to_diagram(&self) -> LinkDiagram {
        self.graph.to_diagram()
    }

    /// A tree-independent fingerprint: the canonical diagram text plus the
    /// sorted canonical forms of the dual-pair sub-diagrams.
    pub fn signature(&self) -> (String, Vec<String>) {
        let text = self
            .to_diagram()
            .canonical(CanonMode::Unordered)
            .text()
            .to_string();
        let mut pairs = Vec::new();
        for (i, &j) in self.component_dual.iter().enumerate() {
            if i < j {
                let sub = self.sub_diagram_of_components(&[i, j]);
                pairs.push(sub.canonical(CanonMode::Unordered).text().to_string());
            }
        }
        pairs.sort();
        (text, pairs)
    }

    /// The diagram spanned by the given components: vertices stay crossings
    /// only when both their passages lie inside the selection.
    fn sub_diagram_of_components(&self, keep: &[usize]) -> LinkDiagram {
        let mut strands_seen: std::collections::HashMap<usize, usize> = Default::default();
        for &i in keep {
            for p in &self.components[i] {
                *strands_seen.entry(p.vertex).or_insert(0) += 1;
            }
        }
        let words: Vec<String> = keep
            .iter()
            .map(|&i| {
                let word: Vec<String> = self.components[i]
                    .iter()
                    .filter(|p| strands_seen.get(&p.vertex) == Some(&2))
                    .map(|p| self.graph.label(p.vertex).to_string())
                    .collect();
                if word.is_empty() {
                    "()".to_string()
                } else {
                    word.join(" ")
                }
            })
            .collect();
        LinkDiagram::parse(&words.join(" / ")).expect("sub-diagram is double occurrence")
    }
}

/// One sheet of the covering: one component from each dual pair, with
/// crossings kept only where both strands survive. Errors when some
/// component is its own dual.
pub fn kprime_from_k2(c: &CoveringGraph) -> Result<LinkDiagram> {
    let n = c.components.len();
    let mut keep = Vec::new();
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let j = c.component_dual[i];
        if j == i {
            return Err(Error::SelfDualComponent);
        }
        assigned[i] = true;
        assigned[j] = true;
        keep.push(i);
    }
    let mut parts: Vec<String> = Vec::new();
    if !keep.is_empty() {
        parts.push(c.sub_diagram_of_components(&keep).serialize());
    }
    parts.extend(std::iter::repeat("()".to_string()).take(c.circle_pairs));
    Ok(LinkDiagram::parse(&parts.join(" / ")).expect("sheet is double occurrence"))
}

/// The projection of a knot: the same word with both occurrences of every
/// Gaussian-odd crossing removed.
pub fn projection_kprime(d: &LinkDiagram) -> Result<LinkDiagram> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let mut odd = std::collections::BTreeSet::new();
    for x in d.crossings() {
        if gaussian_parity(d, x)? == 1 {
            odd.insert(x);
        }
    }
    let word = d.word(0).iter().copied().filter(|x| !odd.contains(x)).collect();
    Ok(d.with_words(vec![word]))
}

/// Every spanning forest of the graph, as sorted edge index lists.
pub fn all_spanning_forests(g: &FramedGraph) -> Vec<Vec<usize>> {
    // Connected components of the vertex set.
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &(a, b) in g.edges() {
        let (ra, rb) = (find(&mut parent, a.vertex), find(&mut parent, b.vertex));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let comps: std::collections::BTreeSet<usize> = roots.iter().copied().collect();
    let forest_size = n - comps.len();
    let m = g.edges().len();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        g: &FramedGraph,
        next: usize,
        chosen: &mut Vec<usize>,
        forest_size: usize,
        out: &mut Vec<Vec<usize>>,
        m: usize,
    ) {
        if chosen.len() == forest_size {
            out.push(chosen.clone());
            return;
        }
        if next >= m || m - next < forest_size - chosen.len() {
            return;
        }
        // Take `next` if it keeps the selection acyclic.
        let acyclic = {
            let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
            let mut ok = true;
            for &e in chosen.iter().chain([&next]) {
                let (a, b) = g.edges()[e];
                let (ra, rb) = (find(&mut parent, a.vertex), find(&mut parent, b.vertex));
                if ra == rb {
                    ok = false;
                    break;
                }
                parent[ra] = rb;
            }
            ok
        };
        if acyclic {
            chosen.push(next);
            rec(g, next + 1, chosen, forest_size, out, m);
            chosen.pop();
        }
        rec(g, next + 1, chosen, forest_size, out, m);
    }
    roots.clear();
    rec(g, 0, &mut chosen, forest_size, &mut out, m);
    out
}
