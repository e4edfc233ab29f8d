//! Framed 4-graphs: the vertex/half-edge view of a diagram.
//!
//! Each vertex carries four half-edge slots split into two opposite pairs,
//! one pair per passage of the traversal: slots 0/1 for the first occurrence
//! of the crossing, slots 2/3 for the second. Slots of one pair are
//! opposite; slots of different pairs are adjacent. Crossing-free circles
//! are carried along as a count.

use std::collections::BTreeMap;

use crate::diagram::LinkDiagram;

/// One of the four half-edge slots at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub vertex: usize,
    pub slot: u8,
}

impl HalfEdge {
    /// The other half-edge of the same opposite pair.
    pub fn opposite(self) -> HalfEdge {
        HalfEdge {
            vertex: self.vertex,
            slot: self.slot ^ 1,
        }
    }

    /// 0 for the first occurrence's pair, 1 for the second's.
    pub fn strand(self) -> u8 {
        self.slot >> 1
    }
}

/// A passage of a unicursal component through a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub vertex: usize,
    pub strand: u8,
}

#[derive(Clone, Debug)]
pub struct FramedGraph {
    labels: Vec<String>,
    edges: Vec<(HalfEdge, HalfEdge)>,
    free_circles: usize,
}

impl FramedGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(HalfEdge, HalfEdge)>, free_circles: usize) -> Self {
        let g = FramedGraph {
            labels,
            edges,
            free_circles,
        };
        debug_assert!(g.check_half_edges());
        g
    }

    fn check_half_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            for h in [a, b] {
                if h.vertex >= self.labels.len() || h.slot > 3 || !seen.insert(h) {
                    return false;
                }
            }
        }
        seen.len() == 4 * self.labels.len()
    }

    pub fn from_diagram(d: &LinkDiagram) -> Self {
        let mut labels: Vec<String> = Vec::new();
        let mut vertex_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut passage_count: BTreeMap<u32, u8> = BTreeMap::new();
        let mut free_circles = 0usize;
        let mut edges = Vec::new();
        // Occurrence order is the global scan order, matching
        // `LinkDiagram::occurrences`.
        for word in d.words() {
            if word.is_empty() {
                free_circles += 1;
                continue;
            }
            let passages: Vec<HalfEdge> = word
                .iter()
                .map(|&x| {
                    let vertex = *vertex_of.entry(x).or_insert_with(|| {
                        labels.push(d.label(x).to_string());
                        labels.len() - 1
                    });
                    let nth = passage_count.entry(x).or_insert(0);
                    let slot_in = *nth * 2;
                    *nth += 1;
                    HalfEdge {
                        vertex,
                        slot: slot_in,
                    }
                })
                .collect();
            let n = passages.len();
            for i in 0..n {
                let out = HalfEdge {
                    vertex: passages[i].vertex,
                    slot: passages[i].slot + 1,
                };
                let into = passages[(i + 1) % n];
                edges.push((out, into));
            }
        }
        FramedGraph::new(labels, edges, free_circles)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(HalfEdge, HalfEdge)] {
        &self.edges
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    /// For every (vertex, slot): the edge using that half-edge and which of
    /// the edge's two ends it is.
    pub fn incidence(&self) -> Vec<[(usize, usize); 4]> {
        let mut table = vec![[(usize::MAX, 0); 4]; self.labels.len()];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            table[a.vertex][a.slot as usize] = (e, 0);
            table[b.vertex][b.slot as usize] = (e, 1);
        }
        table
    }

    fn endpoint(&self, edge: usize, end: usize) -> HalfEdge {
        if end == 0 {
            self.edges[edge].0
        } else {
            self.edges[edge].1
        }
    }

    /// Equivalence classes of edges under "opposite at a vertex", walked in
    /// passage order. Crossing-free circles are not listed; see
    /// [`FramedGraph::free_circles`].
    pub fn unicursal_components(&self) -> Vec<Vec<Passage>> {
        let incid = self.incidence();
        let mut visited = vec![false; self.edges.len()];
        let mut comps = Vec::new();
        for start_edge in 0..self.edges.len() {
            if visited[start_edge] {
                continue;
            }
            let mut passages = Vec::new();
            let start = (start_edge, 1usize);
            let mut cur = start;
            loop {
                let (e, end) = cur;
                visited[e] = true;
                let arrive = self.endpoint(e, end);
                passages.push(Passage {
                    vertex: arrive.vertex,
                    strand: arrive.strand(),
                });
                let depart = arrive.opposite();
                let (ne, side) = incid[depart.vertex][depart.slot as usize];
                cur = (ne, 1 - side);
                if cur == start {
                    break;
                }
            }
            comps.push(passages);
        }
        comps
    }

    /// Number of unicursal components including crossing-free circles.
    pub fn unicursal_count(&self) -> usize {
        self.unicursal_components().len() + self.free_circles
    }

    /// Rebuilds a Gauss code from the unicursal walk. The result reproduces
    /// the source diagram up to canonical form.
    pub fn to_diagram(&self) -> LinkDiagram {
        let comps = self.unicursal_components();
        let code = comps
            .iter()
            .map(|passages| {
                passages
                    .iter()
                    .map(|p| self.labels[p.vertex].clone())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .chain(std::iter::repeat("()".to_string()).take(self.free_circles))
            .collect::<Vec<_>>()
            .join(" / ");
        LinkDiagram::parse(&code).expect("unicursal walk yields a double-occurrence code")
    }
}
