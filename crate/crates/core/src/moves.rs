//! Reidemeister moves on Gauss codes: site detection, application, inverses.
//!
//! Sites are expressed in occurrence positions. A decreasing R1 site is one
//! crossing with cyclically adjacent occurrences; a decreasing R2 site is two
//! distinct crossings whose four occurrences form two disjoint adjacent
//! pairs, each pair containing both crossings in either order; an R3 site is
//! three disjoint adjacent pairs realizing all three unordered pairs of three
//! distinct crossings.

use serde::Serialize;
use std::collections::BTreeMap;
use std::result::Result as Result2;

use crate::diagram::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveDirection {
    Increasing,
    Decreasing,
    Neutral,
}

/// Site of a move, in occurrence positions of the diagram it applies to.
/// An adjacent pair `(comp, i)` denotes positions `i` and `i+1 mod len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum MoveSite {
    R1Dec {
        comp: usize,
        pos: usize,
    },
    R1Inc {
        comp: usize,
        pos: usize,
    },
    R2Dec {
        first: (usize, usize),
        second: (usize, usize),
    },
    R2Inc {
        first: (usize, usize),
        second: (usize, usize),
        same_order: bool,
    },
    R3 {
        pairs: [(usize, usize); 3],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveApplication {
    pub site: MoveSite,
}

// Paths serialize as (kind, direction, site) records.
impl Serialize for MoveApplication {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result2<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("MoveApplication", 3)?;
        s.serialize_field("kind", &self.kind())?;
        s.serialize_field("direction", &self.direction())?;
        s.serialize_field("site", &self.site)?;
        s.end()
    }
}

impl MoveApplication {
    pub fn kind(&self) -> MoveKind {
        match self.site {
            MoveSite::R1Dec { .. } | MoveSite::R1Inc { .. } => MoveKind::R1,
            MoveSite::R2Dec { .. } | MoveSite::R2Inc { .. } => MoveKind::R2,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn direction(&self) -> MoveDirection {
        match self.site {
            MoveSite::R1Dec { .. } | MoveSite::R2Dec { .. } => MoveDirection::Decreasing,
            MoveSite::R1Inc { .. } | MoveSite::R2Inc { .. } => MoveDirection::Increasing,
            MoveSite::R3 { .. } => MoveDirection::Neutral,
        }
    }

    /// Labels of the crossings taking part, resolved against the diagram the
    /// move applies to. Increasing moves take part with crossings that do
    /// not exist yet, so they report the labels of the result instead.
    pub fn participants(&self, d: &LinkDiagram) -> Vec<String> {
        let word_at = |c: usize, i: usize| {
            let w = d.word(c);
            d.label(w[i % w.len()]).to_string()
        };
        match &self.site {
            MoveSite::R1Dec { comp, pos } => vec![word_at(*comp, *pos)],
            MoveSite::R2Dec { first, second } => {
                let mut v = vec![
                    word_at(first.0, first.1),
                    word_at(first.0, first.1 + 1),
                    word_at(second.0, second.1),
                    word_at(second.0, second.1 + 1),
                ];
                v.sort();
                v.dedup();
                v
            }
            MoveSite::R3 { pairs } => {
                let mut v: Vec<String> = pairs
                    .iter()
                    .flat_map(|&(c, i)| [word_at(c, i), word_at(c, i + 1)])
                    .collect();
                v.sort();
                v.dedup();
                v
            }
            MoveSite::R1Inc { .. } | MoveSite::R2Inc { .. } => Vec::new(),
        }
    }
}

/// Bounds on move enumeration. Decreasing and neutral sites are always
/// complete; increasing sites are enumerated only while the resulting
/// crossing count stays within `max_crossings`.
#[derive(Clone, Copy, Debug)]
pub struct MoveCaps {
    pub include_increasing: bool,
    pub max_crossings: usize,
}

impl MoveCaps {
    pub fn non_increasing() -> Self {
        MoveCaps {
            include_increasing: false,
            max_crossings: 0,
        }
    }

    pub fn with_increasing(max_crossings: usize) -> Self {
        MoveCaps {
            include_increasing: true,
            max_crossings,
        }
    }
}

/// Adjacent occurrence pairs of a word, deduplicated as position sets.
fn adjacent_pairs(word: &[Crossing]) -> Vec<usize> {
    let n = word.len();
    match n {
        0 | 1 => Vec::new(),
        2 => vec![0],
        _ => (0..n).collect(),
    }
}

fn pair_positions(comp: usize, i: usize, len: usize) -> [(usize, usize); 2] {
    [(comp, i), (comp, (i + 1) % len)]
}

/// Complete list of decreasing R1 sites.
pub fn r1_dec_sites(d: &LinkDiagram) -> Vec<MoveApplication> {
    let mut out = Vec::new();
    for (c, word) in d.words().iter().enumerate() {
        for i in adjacent_pairs(word) {
            let j = (i + 1) % word.len();
            if word[i] == word[j] {
                out.push(MoveApplication {
                    site: MoveSite::R1Dec { comp: c, pos: i },
                });
            }
        }
    }
    out
}

fn pairs_by_crossings(d: &LinkDiagram) -> BTreeMap<(Crossing, Crossing), Vec<(usize, usize)>> {
    let mut by_pair: BTreeMap<(Crossing, Crossing), Vec<(usize, usize)>> = BTreeMap::new();
    for (c, word) in d.words().iter().enumerate() {
        for i in adjacent_pairs(word) {
            let j = (i + 1) % word.len();
            let (u, w) = (word[i], word[j]);
            if u != w {
                let key = (u.min(w), u.max(w));
                by_pair.entry(key).or_default().push((c, i));
            }
        }
    }
    by_pair
}

/// Complete list of decreasing R2 sites: one per unordered crossing pair,
/// the first disjoint instance combination. Any valid combination deletes
/// the same four occurrences.
pub fn r2_dec_sites(d: &LinkDiagram) -> Vec<MoveApplication> {
    let mut out = Vec::new();
    for instances in pairs_by_crossings(d).values() {
        'found: for (a, &p1) in instances.iter().enumerate() {
            for &p2 in &instances[a + 1..] {
                if disjoint(d, p1, p2) {
                    out.push(MoveApplication {
                        site: MoveSite::R2Dec {
                            first: p1,
                            second: p2,
                        },
                    });
                    break 'found;
                }
            }
        }
    }
    out
}

pub fn enumerate_moves(d: &LinkDiagram, caps: MoveCaps) -> Vec<MoveApplication> {
    let mut out = Vec::new();
    out.extend(r1_dec_sites(d));
    out.extend(r2_dec_sites(d));
    let by_pair = pairs_by_crossings(d);

    // R3: every combinatorial triangle.
    let keys: Vec<(Crossing, Crossing)> = by_pair.keys().copied().collect();
    let mut seen_sites = std::collections::HashSet::new();
    for (ai, &(a1, a2)) in keys.iter().enumerate() {
        for &(b1, b2) in &keys[ai + 1..] {
            // Two pairs sharing exactly one crossing determine the triple.
            let shared: Vec<Crossing> = [a1, a2]
                .into_iter()
                .filter(|x| *x == b1 || *x == b2)
                .collect();
            if shared.len() != 1 {
                continue;
            }
            let x = shared[0];
            let y = if a1 == x { a2 } else { a1 };
            let z = if b1 == x { b2 } else { b1 };
            let third = (y.min(z), y.max(z));
            let Some(third_instances) = by_pair.get(&third) else {
                continue;
            };
            // Avoid double counting triples: require key order.
            if third < (a1, a2).min((b1, b2)) || (b1, b2) < (a1, a2) {
                continue;
            }
            for &p1 in &by_pair[&(a1, a2)] {
                for &p2 in &by_pair[&(b1, b2)] {
                    for &p3 in third_instances {
                        if disjoint(d, p1, p2) && disjoint(d, p1, p3) && disjoint(d, p2, p3) {
                            let mut key = [p1, p2, p3];
                            key.sort();
                            if seen_sites.insert(key) {
                                out.push(MoveApplication {
                                    site: MoveSite::R3 {
                                        pairs: [p1, p2, p3],
                                    },
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    // Increasing moves, capped by the resulting crossing count.
    if caps.include_increasing {
        let n = d.crossing_count();
        let slots: Vec<(usize, usize)> = d
            .words()
            .iter()
            .enumerate()
            .flat_map(|(c, w)| (0..w.len().max(1)).map(move |p| (c, p)))
            .collect();
        if n < caps.max_crossings {
            for &(c, p) in &slots {
                out.push(MoveApplication {
                    site: MoveSite::R1Inc { comp: c, pos: p },
                });
            }
        }
        if n + 2 <= caps.max_crossings {
            for (i, &s1) in slots.iter().enumerate() {
                for &s2 in &slots[i..] {
                    for same_order in [false, true] {
                        out.push(MoveApplication {
                            site: MoveSite::R2Inc {
                                first: s1,
                                second: s2,
                                same_order,
                            },
                        });
                    }
                }
            }
        }
    }

    out
}

fn disjoint(d: &LinkDiagram, p1: (usize, usize), p2: (usize, usize)) -> bool {
    let set1 = pair_positions(p1.0, p1.1, d.word(p1.0).len());
    let set2 = pair_positions(p2.0, p2.1, d.word(p2.0).len());
    set1.iter().all(|a| !set2.contains(a))
}

pub fn apply_move(d: &LinkDiagram, m: &MoveApplication) -> Result<LinkDiagram> {
    match &m.site {
        MoveSite::R1Dec { comp, pos } => {
            let word = d
                .words()
                .get(*comp)
                .ok_or_else(|| Error::InvalidSite(format!("no component {comp}")))?;
            let n = word.len();
            if n < 2 || word[*pos % n] != word[(*pos + 1) % n] || *pos >= n {
                return Err(Error::InvalidSite(format!(
                    "R1 site ({comp},{pos}) is not an adjacent double occurrence"
                )));
            }
            let removed = [(*comp, *pos), (*comp, (*pos + 1) % n)];
            Ok(remove_positions(d, &removed))
        }
        MoveSite::R2Dec { first, second } => {
            validate_r2_site(d, *first, *second)?;
            let mut removed = Vec::new();
            for &(c, i) in [first, second] {
                let n = d.word(c).len();
                removed.extend(pair_positions(c, i, n));
            }
            Ok(remove_positions(d, &removed))
        }
        MoveSite::R3 { pairs } => {
            validate_r3_site(d, pairs)?;
            let mut words: Vec<Vec<Crossing>> = d.words().to_vec();
            for &(c, i) in pairs {
                let n = words[c].len();
                let j = (i + 1) % n;
                words[c].swap(i, j);
            }
            Ok(d.with_words(words))
        }
        MoveSite::R1Inc { comp, pos } => {
            let word = d
                .words()
                .get(*comp)
                .ok_or_else(|| Error::InvalidSite(format!("no component {comp}")))?;
            if *pos > word.len() || (*pos == word.len() && !word.is_empty()) {
                return Err(Error::InvalidSite(format!("R1 slot ({comp},{pos})")));
            }
            let mut d2 = d.clone();
            let x = LinkDiagram::push_label(d2.labels_mut(), "k");
            let mut words = d2.words().to_vec();
            words[*comp].splice(*pos..*pos, [x, x]);
            Ok(d2.with_words(words))
        }
        MoveSite::R2Inc {
            first,
            second,
            same_order,
        } => {
            for &(c, p) in [first, second] {
                let word = d
                    .words()
                    .get(c)
                    .ok_or_else(|| Error::InvalidSite(format!("no component {c}")))?;
                if p >= word.len().max(1) {
                    return Err(Error::InvalidSite(format!("R2 slot ({c},{p})")));
                }
            }
            let mut d2 = d.clone();
            let x = LinkDiagram::push_label(d2.labels_mut(), "u");
            let y = LinkDiagram::push_label(d2.labels_mut(), "w");
            let pat1 = [x, y];
            let pat2 = if *same_order { [x, y] } else { [y, x] };
            let mut words = d2.words().to_vec();
            if first == second {
                let (c, p) = *first;
                words[c].splice(p..p, pat1.into_iter().chain(pat2));
            } else if first.0 == second.0 {
                let c = first.0;
                // Insert the later slot first so the earlier index stays valid.
                if first.1 <= second.1 {
                    words[c].splice(second.1..second.1, pat2);
                    words[c].splice(first.1..first.1, pat1);
                } else {
                    words[c].splice(first.1..first.1, pat1);
                    words[c].splice(second.1..second.1, pat2);
                }
            } else {
                words[first.0].splice(first.1..first.1, pat1);
                words[second.0].splice(second.1..second.1, pat2);
            }
            Ok(d2.with_words(words))
        }
    }
}

fn validate_r2_site(d: &LinkDiagram, first: (usize, usize), second: (usize, usize)) -> Result<()> {
    for &(c, i) in [&first, &second] {
        if c >= d.component_count() || i >= d.word(c).len() {
            return Err(Error::InvalidSite(format!("R2 pair ({c},{i}) out of range")));
        }
    }
    let get = |(c, i): (usize, usize)| {
        let w = d.word(c);
        (w[i], w[(i + 1) % w.len()])
    };
    let (a1, a2) = get(first);
    let (b1, b2) = get(second);
    let mut s1 = [a1, a2];
    let mut s2 = [b1, b2];
    s1.sort();
    s2.sort();
    if a1 == a2 || s1 != s2 {
        return Err(Error::InvalidSite(
            "R2 pairs must contain the same two distinct crossings".into(),
        ));
    }
    if !disjoint(d, first, second) {
        return Err(Error::InvalidSite("R2 pairs overlap".into()));
    }
    Ok(())
}

fn validate_r3_site(d: &LinkDiagram, pairs: &[(usize, usize); 3]) -> Result<()> {
    for &(c, i) in pairs {
        if c >= d.component_count() || i >= d.word(c).len() {
            return Err(Error::InvalidSite(format!("R3 pair ({c},{i}) out of range")));
        }
    }
    let get = |(c, i): (usize, usize)| {
        let w = d.word(c);
        let (u, v) = (w[i], w[(i + 1) % w.len()]);
        (u.min(v), u.max(v))
    };
    let mut sets = [get(pairs[0]), get(pairs[1]), get(pairs[2])];
    sets.sort();
    let crossings: std::collections::BTreeSet<Crossing> =
        sets.iter().flat_map(|&(a, b)| [a, b]).collect();
    if crossings.len() != 3 || sets[0] == sets[1] || sets[1] == sets[2] {
        return Err(Error::InvalidSite(
            "R3 pairs must realize the three pairs of three distinct crossings".into(),
        ));
    }
    if sets.iter().any(|&(a, b)| a == b) {
        return Err(Error::InvalidSite("R3 pair with a repeated crossing".into()));
    }
    if !(disjoint(d, pairs[0], pairs[1])
        && disjoint(d, pairs[0], pairs[2])
        && disjoint(d, pairs[1], pairs[2]))
    {
        return Err(Error::InvalidSite("R3 pairs overlap".into()));
    }
    Ok(())
}

fn remove_positions(d: &LinkDiagram, removed: &[(usize, usize)]) -> LinkDiagram {
    let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(c, p) in removed {
        by_comp.entry(c).or_default().push(p);
    }
    let words = d
        .words()
        .iter()
        .enumerate()
        .map(|(c, w)| match by_comp.get(&c) {
            None => w.clone(),
            Some(ps) => w
                .iter()
                .enumerate()
                .filter(|(i, _)| !ps.contains(i))
                .map(|(_, &x)| x)
                .collect(),
        })
        .collect();
    d.with_words(words)
}

/// The move that undoes `m`, expressed against `apply_move(d, m)`.
/// Replaying it restores the canonical form of `d`.
pub fn inverse(d: &LinkDiagram, m: &MoveApplication) -> Result<MoveApplication> {
    let site = match &m.site {
        MoveSite::R1Dec { comp, pos } => {
            let n = d.word(*comp).len();
            // A site at the seam (wrapped, or ending exactly at the word's
            // tail) restores at slot 0, a rotation of the original.
            MoveSite::R1Inc {
                comp: *comp,
                pos: if *pos + 2 >= n { 0 } else { *pos },
            }
        }
        MoveSite::R1Inc { comp, pos } => MoveSite::R1Dec {
            comp: *comp,
            pos: *pos,
        },
        MoveSite::R2Dec { first, second } => {
            validate_r2_site(d, *first, *second)?;
            let removed_in = |c: usize| -> Vec<usize> {
                let mut ps = Vec::new();
                for &(pc, i) in [first, second] {
                    if pc == c {
                        let n = d.word(c).len();
                        ps.extend(pair_positions(c, i, n).map(|(_, p)| p));
                    }
                }
                ps
            };
            // A wrapped pair restores by appending at the end of the
            // shortened word; that reproduces the cyclic word up to rotation.
            let slot_of = |(c, i): (usize, usize)| -> (usize, usize) {
                let n = d.word(c).len();
                let removed = removed_in(c);
                let shortened = n - removed.len();
                let slot = if i + 1 == n {
                    0
                } else {
                    let below = removed.iter().filter(|&&p| p < i).count();
                    i - below
                };
                // Slot at the end of the shortened word is the same cyclic
                // seam as slot 0.
                (c, if slot == shortened { 0 } else { slot })
            };
            let tuple_of = |(c, i): (usize, usize)| {
                let w = d.word(c);
                (w[i], w[(i + 1) % w.len()])
            };
            let same_order = tuple_of(*first) == tuple_of(*second);
            let s1 = slot_of(*first);
            let s2 = slot_of(*second);
            let (first_slot, second_slot) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
            MoveSite::R2Inc {
                first: first_slot,
                second: second_slot,
                same_order,
            }
        }
        MoveSite::R2Inc { first, second, .. } => {
            let (f, s) = if first.0 == second.0 {
                if first.1 <= second.1 {
                    (*first, (second.0, second.1 + 2))
                } else {
                    ((first.0, first.1 + 2), *second)
                }
            } else {
                (*first, *second)
            };
            MoveSite::R2Dec { first: f, second: s }
        }
        MoveSite::R3 { pairs } => MoveSite::R3 { pairs: *pairs },
    };
    Ok(MoveApplication { site })
}
