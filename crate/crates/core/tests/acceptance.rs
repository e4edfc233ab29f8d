//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freelinks::bracket::{bracket_knot, normalize_g, smooth_any, GNormal, SmoothingWay};
use freelinks::delta::{delta_l, f_pq, p_pq, turaev_delta, DeltaOptions, Pattern};
use freelinks::enumerate::{enumerate_knots, irreducibly_odd_knots};
use freelinks::moves::{
    apply_move, enumerate_moves, r2_dec_sites, MoveApplication, MoveCaps, MoveSite,
};
use freelinks::parity::{
    check_axioms_with, check_parity_axioms, gaussian_assignment, gaussian_parity, p_l, ParityRule,
};
use freelinks::search::{
    certified_nonsplit, find_reduction, minimal_representative, SearchBudget, SplitVerdict,
};
use freelinks::testutil::{graph_smooth_oracle, random_knot, random_link};
use freelinks::{
    classify_edges, covering_k2, covering_k2_with, kprime_from_k2, projection_kprime, run_orbit,
    CanonMode, FramedGraph, LinkDiagram, OrbitCheck, OrbitOptions, OrbitVerdict, TreeChoice,
};

fn d(code: &str) -> LinkDiagram {
    LinkDiagram::parse(code).unwrap()
}

fn pass(n: usize, title: &str) {
    println!("criterion {n} ({title}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 1: Gaussian parity axioms, exhaustive at 6 chords.
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_gaussian_axioms_exhaustive() {
    let mut diagrams = vec![d("()")];
    diagrams.extend(enumerate_knots(6));
    let mut moves_checked = 0usize;
    for diagram in &diagrams {
        // The count of odd crossings is even on every knot diagram.
        let odd = gaussian_assignment(diagram)
            .unwrap()
            .values
            .values()
            .filter(|&&v| v == 1)
            .count();
        assert_eq!(odd % 2, 0, "odd-crossing count on {}", diagram.serialize());

        let caps = MoveCaps::with_increasing(diagram.crossing_count() + 2);
        for m in enumerate_moves(diagram, caps) {
            let report = check_parity_axioms(ParityRule::Gaussian, diagram, &m).unwrap();
            assert!(
                report.passed(),
                "{} {m:?}: {:?}",
                diagram.serialize(),
                report.violations
            );
            moves_checked += 1;
        }
    }
    assert!(moves_checked > 100_000, "exhaustiveness sanity: {moves_checked}");
    pass(1, "gaussian parity axioms, all knots <= 6 chords, all moves");
}

// ---------------------------------------------------------------------------
// Criterion 2: p_L axioms and the minimality of the two-component example.
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_pl_axioms_and_minimality_orbits() {
    let start = d("O A1 O A2 / A1 A2");
    let checks = [
        OrbitCheck::PlAxioms { k: 0 },
        OrbitCheck::PlOddCrossingExists { k: 0 },
    ];
    for seed in 0..200u64 {
        let opts = OrbitOptions {
            seed,
            length: 10,
            max_crossings: start.crossing_count() + 4,
            include_increasing: true,
        };
        let report = run_orbit(&start, &checks, &opts).unwrap();
        assert_eq!(report.verdict, OrbitVerdict::AllEqual, "seed {seed}: {report:?}");
        assert_eq!(report.steps, 10, "seed {seed} stalled");
    }
    pass(2, "p_L axioms and >=1 odd crossing along 200 orbits of the two-component example");
}

// ---------------------------------------------------------------------------
// Criteria 3 and 4 share the orbit schedule: bracket invariance, and the
// confluence of the normalization over every diagram it was fed.
// ---------------------------------------------------------------------------

struct BracketOrbitData {
    /// Unique diagrams handed to the normalizer during criterion 3.
    normalize_inputs: Vec<String>,
}

fn bracket_orbit_data() -> &'static BracketOrbitData {
    static DATA: OnceLock<BracketOrbitData> = OnceLock::new();
    DATA.get_or_init(|| {
        let mut inputs: HashSet<String> = HashSet::new();
        for i in 0..500u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(31_000 + i);
            let start = random_knot(&mut rng, 2 + (i % 7) as usize);
            let opts = OrbitOptions {
                seed: 32_000 + i,
                length: 8,
                max_crossings: 8,
                include_increasing: true,
            };
            // Walk the orbit manually so every state's bracket can also be
            // recomputed by definition and its smoothing states recorded.
            let mut cur = start.clone();
            let reference = bracket_via_state_enumeration(&cur, &mut inputs);
            assert_eq!(
                reference,
                bracket_knot(&cur).unwrap().terms,
                "state-enumeration oracle disagrees on {}",
                cur.serialize()
            );
            let mut orbit_rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.length {
                let candidates =
                    enumerate_moves(&cur, MoveCaps::with_increasing(opts.max_crossings));
                if candidates.is_empty() {
                    break;
                }
                let m = candidates[orbit_rng.random_range(0..candidates.len())].clone();
                cur = apply_move(&cur, &m).unwrap();
                let value = bracket_via_state_enumeration(&cur, &mut inputs);
                assert_eq!(
                    value,
                    bracket_knot(&cur).unwrap().terms,
                    "state-enumeration oracle disagrees on {}",
                    cur.serialize()
                );
                assert_eq!(
                    value,
                    reference,
                    "bracket changed along orbit {i} at {}",
                    cur.serialize()
                );
            }
        }
        BracketOrbitData {
            normalize_inputs: inputs.into_iter().collect(),
        }
    })
}

/// The knot bracket by definition: enumerate all both-way smoothings of the
/// even crossings, normalize each, accumulate over Z2, and drop
/// multi-component terms.
fn bracket_via_state_enumeration(
    knot: &LinkDiagram,
    inputs: &mut HashSet<String>,
) -> BTreeSet<freelinks::CanonicalForm> {
    let sites: Vec<_> = knot
        .crossings()
        .filter(|&x| gaussian_parity(knot, x).unwrap() == 0)
        .collect();
    let mut terms = BTreeSet::new();
    for state in 0..(1usize << sites.len()) {
        let mut cur = knot.clone();
        for (bit, &x) in sites.iter().enumerate() {
            let way = if state & (1 << bit) == 0 {
                SmoothingWay::Oriented
            } else {
                SmoothingWay::Disoriented
            };
            cur = smooth_any(&cur, x, way).unwrap();
        }
        inputs.insert(cur.serialize());
        match normalize_g(&cur) {
            GNormal::Zero => {}
            // Multi-component terms are dropped by the projection.
            GNormal::Form(f) => {
                if f.to_diagram().component_count() == 1 && !terms.remove(&f) {
                    terms.insert(f);
                }
            }
        }
    }
    terms
}

#[test]
fn criterion_3_bracket_invariance_500_orbits() {
    let data = bracket_orbit_data();
    assert!(data.normalize_inputs.len() > 1000);
    pass(3, "knot bracket constant along 500 seeded orbits, cross-checked by state enumeration");
}

#[test]
fn criterion_4_normalization_confluence() {
    let data = bracket_orbit_data();
    // All reduction orders agree, memoized across shared reduction states.
    fn endpoints(
        diagram: &LinkDiagram,
        memo: &mut HashMap<String, BTreeSet<Option<String>>>,
    ) -> BTreeSet<Option<String>> {
        let key = diagram.serialize();
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let result = if diagram.component_count() > 1
            && diagram.words().iter().any(|w| w.is_empty())
        {
            BTreeSet::from([None])
        } else {
            let sites = r2_dec_sites(diagram);
            if sites.is_empty() {
                BTreeSet::from([Some(
                    diagram.canonical(CanonMode::Unordered).text().to_string(),
                )])
            } else {
                let mut out = BTreeSet::new();
                for m in sites {
                    out.extend(endpoints(&apply_move(diagram, &m).unwrap(), memo));
                }
                out
            }
        };
        memo.insert(key, result.clone());
        result
    }

    let mut memo = HashMap::new();
    for code in &data.normalize_inputs {
        let diagram = d(code);
        let all_orders = endpoints(&diagram, &mut memo);
        assert_eq!(
            all_orders.len(),
            1,
            "normalization of {code} is not confluent: {all_orders:?}"
        );
        let greedy = match normalize_g(&diagram) {
            GNormal::Zero => None,
            GNormal::Form(f) => Some(f.text().to_string()),
        };
        assert_eq!(
            all_orders.into_iter().next().unwrap(),
            greedy,
            "greedy normalization of {code} disagrees with the reduction orders"
        );
    }
    pass(4, "normalization confluent over all reduction orders of every diagram it was fed");
}

// ---------------------------------------------------------------------------
// Criterion 5: the bracket fixed point on irreducibly odd diagrams.
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_bracket_fixed_point() {
    let mut fixed_points = irreducibly_odd_knots(6);
    let mut chords = 6;
    if fixed_points.is_empty() {
        // Report the minimal chord count <= 8 at which the set is nonempty
        // and run the same checks there.
        for n in 7..=8 {
            fixed_points = irreducibly_odd_knots(n);
            if !fixed_points.is_empty() {
                chords = n;
                break;
            }
        }
    }
    assert!(
        !fixed_points.is_empty(),
        "no irreducibly odd diagram with <= 8 chords"
    );
    println!("criterion 5: irreducibly odd set at {chords} chords has {} members", fixed_points.len());
    for diagram in &fixed_points {
        let value = bracket_knot(diagram).unwrap();
        let own = BTreeSet::from([diagram.canonical(CanonMode::Unordered)]);
        assert_eq!(value.terms, own, "bracket of {} is not itself", diagram.serialize());
        let budget = SearchBudget {
            max_crossings: diagram.crossing_count() + 2,
            max_depth: 4,
            max_states: 200_000,
        };
        let reduction = find_reduction(diagram, &budget);
        assert!(
            reduction.is_none(),
            "{} admits a reduction {reduction:?}",
            diagram.serialize()
        );
    }
    pass(5, "irreducibly odd diagrams are bracket fixed points with no bounded reduction");
}

// ---------------------------------------------------------------------------
// Criterion 6: cobracket pinned values and invariance along orbits.
// ---------------------------------------------------------------------------

/// Definition-level oracle: smooth by graph reconnection, filter by an
/// independent reduction (adjacent-equal and double-adjacent-pair deletion),
/// accumulate raw canonical forms over Z2.
fn oracle_delta_is_zero(code: &str) -> bool {
    let knot = d(code);
    let mut terms: BTreeSet<String> = BTreeSet::new();
    for x in knot.crossings().collect::<Vec<_>>() {
        let summand = graph_smooth_oracle(&knot, knot.label(x), SmoothingWay::Oriented);
        if oracle_has_trivial_split(&summand) {
            continue;
        }
        let t = summand.canonical(CanonMode::Unordered).text().to_string();
        if !terms.remove(&t) {
            terms.insert(t);
        }
    }
    terms.is_empty()
}

/// Independent trivial-split detector for the oracle: greedy word rewriting
/// with its own R1/R2 logic until an empty component shows up or nothing
/// applies.
fn oracle_has_trivial_split(summand: &LinkDiagram) -> bool {
    let mut words: Vec<Vec<String>> = summand
        .words()
        .iter()
        .map(|w| w.iter().map(|&x| summand.label(x).to_string()).collect())
        .collect();
    loop {
        if words.iter().any(|w| w.is_empty()) {
            return true;
        }
        let mut changed = false;
        // R1: adjacent equal labels in one word.
        'outer: for w in words.iter_mut() {
            let n = w.len();
            for i in 0..n {
                if n >= 2 && w[i] == w[(i + 1) % n] {
                    let (a, b) = (i, (i + 1) % n);
                    let mut keep: Vec<String> = Vec::new();
                    for (k, label) in w.iter().enumerate() {
                        if k != a && k != b {
                            keep.push(label.clone());
                        }
                    }
                    *w = keep;
                    changed = true;
                    break 'outer;
                }
            }
        }
        if changed {
            continue;
        }
        // R2: two disjoint adjacent pairs carrying the same two labels.
        let mut pairs: Vec<(String, String, usize, usize)> = Vec::new();
        for (c, w) in words.iter().enumerate() {
            let n = w.len();
            let starts = if n == 2 { 1 } else { n };
            for i in 0..starts {
                if n >= 2 && w[i] != w[(i + 1) % n] {
                    pairs.push((w[i].clone(), w[(i + 1) % n].clone(), c, i));
                }
            }
        }
        'pairs: for (a, &(ref u1, ref w1, c1, i1)) in pairs.iter().enumerate() {
            for &(ref u2, ref w2, c2, i2) in &pairs[a + 1..] {
                let same_set = (u1 == u2 && w1 == w2) || (u1 == w2 && w1 == u2);
                if !same_set {
                    continue;
                }
                let n1 = words[c1].len();
                let n2 = words[c2].len();
                let set1 = [(c1, i1), (c1, (i1 + 1) % n1)];
                let set2 = [(c2, i2), (c2, (i2 + 1) % n2)];
                if set1.iter().any(|p| set2.contains(p)) {
                    continue;
                }
                let mut removals: Vec<(usize, usize)> = set1.into_iter().chain(set2).collect();
                removals.sort();
                removals.reverse();
                for (c, p) in removals {
                    words[c].remove(p);
                }
                changed = true;
                break 'pairs;
            }
        }
        if !changed {
            return false;
        }
    }
}

#[test]
fn criterion_6_cobracket_pinned_values_and_orbits() {
    let opts = DeltaOptions::default();
    for code in ["1 1", "1 2 1 2", "1 2 3 1 2 3"] {
        let value = turaev_delta(&d(code), &opts).unwrap();
        assert!(value.is_zero(), "delta of {code} should vanish");
        assert!(
            oracle_delta_is_zero(code),
            "definition-level oracle disagrees on {code}"
        );
    }
    for i in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(61_000 + i);
        let start = random_knot(&mut rng, 2 + (i % 7) as usize);
        let orbit = OrbitOptions {
            seed: 62_000 + i,
            length: 8,
            max_crossings: 8,
            include_increasing: true,
        };
        let report = run_orbit(&start, &[OrbitCheck::Delta(opts)], &orbit).unwrap();
        assert_eq!(
            report.verdict,
            OrbitVerdict::AllEqual,
            "orbit {i} from {}: {report:?}",
            start.serialize()
        );
    }
    pass(6, "cobracket pinned zeros (oracle-checked) and constancy along 300 orbits with R1");
}

// ---------------------------------------------------------------------------
// Criterion 7: cancellation of the two summands created by an R2 increase on
// the second component, and the pattern parity along corpus orbits.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_cancellation_and_pattern_parity() {
    let opts = DeltaOptions::default();
    // Part 1: the two new summands cancel exactly, on 100 seeded cases.
    let mut kept_pairs = 0usize;
    for i in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(71_000 + i);
        let host = random_link(&mut rng, 1 + (i % 4) as usize, 2, false);
        let l_len = host.word(1).len().max(1);
        let p1 = rng.random_range(0..l_len);
        let p2 = rng.random_range(0..l_len);
        let m = MoveApplication {
            site: MoveSite::R2Inc {
                first: (1, p1.min(p2)),
                second: (1, p1.max(p2)),
                same_order: rng.random_range(0..2) == 0,
            },
        };
        let bigger = apply_move(&host, &m).unwrap();
        let before: BTreeSet<String> = host
            .crossings()
            .map(|x| host.label(x).to_string())
            .collect();
        let new_labels: Vec<String> = bigger
            .crossings()
            .map(|x| bigger.label(x).to_string())
            .filter(|l| !before.contains(l))
            .collect();
        assert_eq!(new_labels.len(), 2);
        let contributions: Vec<Option<String>> = new_labels
            .iter()
            .map(|label| {
                let x = bigger.crossing_by_label(label).unwrap();
                let summand = freelinks::bracket::smooth(&bigger, x, SmoothingWay::Oriented)
                    .unwrap();
                match freelinks::search::certified_trivial_split(
                    &summand,
                    &SearchBudget::around(&summand, 2),
                ) {
                    freelinks::TrivialSplitVerdict::Yes(_) => None,
                    freelinks::TrivialSplitVerdict::No(_) => Some(
                        minimal_representative(&summand, CanonMode::FixedPrefix(1), &opts.budget)
                            .canonical(CanonMode::FixedPrefix(1))
                            .text()
                            .to_string(),
                    ),
                    freelinks::TrivialSplitVerdict::Unknown => {
                        panic!("undecided filter on case {i}: {}", summand.serialize())
                    }
                }
            })
            .collect();
        assert_eq!(
            contributions[0], contributions[1],
            "case {i}: the two new summands differ on {}",
            bigger.serialize()
        );
        if contributions[0].is_some() {
            kept_pairs += 1;
        }
        // Every fourth case: the whole ordered cobracket is unchanged.
        if i % 4 == 0 {
            let v_before = delta_l(&host, &opts).unwrap();
            let v_after = delta_l(&bigger, &opts).unwrap();
            assert_eq!(
                v_before.terms, v_after.terms,
                "case {i}: ordered cobracket changed under an R2 increase on the second component"
            );
        }
    }
    assert!(kept_pairs > 0, "every cancellation pair was dropped; cases too degenerate");

    // Part 2: the pattern parity is a parity along orbits of the constructed
    // corpus, with every verdict decided in strict mode.
    let (host, pattern) = pattern_corpus();
    let single = f_pq(&host, &pattern, &opts).unwrap();
    assert_eq!(single.terms.len(), 1, "exactly one site survives the projection");
    assert!(single.undecided.is_empty());
    // Definition unfolding on the surviving term, checked both ways.
    let (kept, _) = freelinks::delta::f_pq_summands(&host, &pattern, &opts).unwrap();
    assert_eq!(kept.len(), 1);
    for label in ["ra", "rb", "rf"] {
        let x = host.crossing_by_label(label).unwrap();
        let via_sum = p_pq(&host, x, &pattern, &opts).unwrap();
        let sub = kept[0].term.sub_diagram(&[0, 1]);
        let v = sub.crossing_by_label(label).unwrap();
        assert_eq!(via_sum, p_l(&sub, 0, v).unwrap(), "{label}");
        let (h1, h2) = sub.halves(v).unwrap();
        let mixed = |half: &[freelinks::Crossing]| {
            half.iter()
                .filter(|&&y| sub.kind(y) == freelinks::CrossingKind::Mixed)
                .count() as u8
                % 2
        };
        assert_eq!(mixed(&h1), mixed(&h2), "both halves agree at {label}");
    }
    for seed in 0..12u64 {
        let mut cur = host.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(72_000 + seed);
        for step in 0..4 {
            let candidates =
                enumerate_moves(&cur, MoveCaps::with_increasing(host.crossing_count() + 2));
            let m = candidates[rng.random_range(0..candidates.len())].clone();
            let report = check_axioms_with(&cur, &m, Some(0), &mut |dd, label| {
                let Ok(x) = dd.crossing_by_label(label) else {
                    return Ok(None);
                };
                let [a, b] = dd.occurrences(x);
                if a.0 != b.0 || a.0 != 0 {
                    return Ok(None);
                }
                p_pq(dd, x, &pattern, &opts).map(Some)
            })
            .unwrap_or_else(|e| panic!("seed {seed} step {step}: undecided or error: {e}"));
            assert!(
                report.passed(),
                "seed {seed} step {step} {m:?}: {:?}",
                report.violations
            );
            cur = apply_move(&cur, &m).unwrap();
        }
    }
    pass(7, "R2-increase summands cancel exactly and the pattern parity passes its axioms");
}

/// The constructed pattern corpus: a pattern joining a 5-chord knot with a
/// nonzero cobracket and an irreducibly odd 6-chord knot by one mixed
/// crossing, hosted so that smoothing the designated site of the second
/// component produces exactly the pattern.
fn pattern_corpus() -> (LinkDiagram, Pattern) {
    static CORPUS: OnceLock<(String, String)> = OnceLock::new();
    let (host_code, pattern_code) = CORPUS.get_or_init(|| {
        let odd = irreducibly_odd_knots(6);
        assert!(odd.len() >= 2);
        let spell = |base: &str, prefix: &str| -> Vec<String> {
            base.split_whitespace()
                .map(|t| format!("{prefix}{t}"))
                .collect()
        };
        // 5-chord knot with nonzero cobracket; its bracket is trivial, so the
        // cobracket screen certifies it nontrivial.
        let mut pw = spell("a b a c b d e d c e", "p");
        let mut qw = spell(&odd[0].serialize(), "q");
        pw.insert(1, "m".into());
        qw.insert(0, "m".into());
        let pattern_code = format!("{} / {}", pw.join(" "), qw.join(" "));
        let mut rw = spell(&odd[1].serialize(), "r");
        rw.insert(1, "x1".into());
        rw.insert(2, "x2".into());
        let mut l_parts: Vec<String> = vec!["z".into()];
        let mut pw_host = pw.clone();
        pw_host.insert(3, "x1".into());
        pw_host.insert(5, "x2".into());
        l_parts.extend(pw_host);
        l_parts.push("z".into());
        l_parts.extend(qw);
        let host_code = format!("{} / {}", rw.join(" "), l_parts.join(" "));
        (host_code, pattern_code)
    });
    let pattern = Pattern::validate(&d(pattern_code), &SearchBudget::default()).unwrap();
    (d(host_code), pattern)
}

// ---------------------------------------------------------------------------
// Criterion 8: covering consistency and tree independence.
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_covering_consistency() {
    // The worked two-vertex example: a one-edge tree leaves one good and two
    // bad edges.
    let g = FramedGraph::from_diagram(&d("1 2 1 2"));
    let classes = classify_edges(&g, TreeChoice::Lexicographic);
    assert_eq!(classes.tree.len(), 1);
    let good = classes.entries.iter().filter(|e| e.good).count();
    let bad = classes.entries.iter().filter(|e| !e.good).count();
    assert_eq!((good, bad), (1, 2), "one good and two bad edges");

    let mut diagrams = vec![d("()")];
    diagrams.extend(enumerate_knots(6));
    for diagram in &diagrams {
        let covering = covering_k2(diagram);
        let via_cover = kprime_from_k2(&covering)
            .unwrap()
            .canonical(CanonMode::Unordered);
        let via_deletion = projection_kprime(diagram)
            .unwrap()
            .canonical(CanonMode::Unordered);
        assert_eq!(via_cover, via_deletion, "{}", diagram.serialize());
        // Sheet words have even length: the odd-crossing count is even.
        let sheet = via_cover.to_diagram();
        for w in sheet.words() {
            assert_eq!(w.len() % 2, 0);
        }
    }
    for diagram in &diagrams {
        let g = FramedGraph::from_diagram(diagram);
        let reference = covering_k2(diagram).signature();
        for forest in freelinks::cover::all_spanning_forests(&g) {
            let c = covering_k2_with(diagram, TreeChoice::Explicit(&forest));
            assert_eq!(
                c.signature(),
                reference,
                "{} with forest {forest:?}",
                diagram.serialize()
            );
        }
    }
    pass(8, "sheet projection equals chord deletion and the covering is tree independent");
}

// ---------------------------------------------------------------------------
// Criterion 9: split obstruction verdicts and their stability.
// ---------------------------------------------------------------------------

#[test]
fn criterion_9_split_obstruction_stability() {
    let nonsplit = d("1 / 1");
    let split = d("a b / b a");
    let tight = SearchBudget {
        max_depth: 2,
        ..SearchBudget::around(&split, 2)
    };
    assert!(matches!(
        certified_nonsplit(&nonsplit, &tight).unwrap(),
        SplitVerdict::Nonsplit(_)
    ));
    match certified_nonsplit(&split, &tight).unwrap() {
        SplitVerdict::Split(path) => assert!(path.len() <= 2),
        other => panic!("expected Split, got {other:?}"),
    }
    for (start, expect_split) in [(nonsplit, false), (split, true)] {
        for seed in 0..100u64 {
            let mut cur = start.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(91_000 + seed);
            for _ in 0..4 {
                let candidates = enumerate_moves(
                    &cur,
                    MoveCaps::with_increasing(start.crossing_count() + 2),
                );
                if candidates.is_empty() {
                    break;
                }
                cur = apply_move(&cur, &candidates[rng.random_range(0..candidates.len())])
                    .unwrap();
            }
            let verdict =
                certified_nonsplit(&cur, &SearchBudget::around(&cur, 2)).unwrap();
            match (expect_split, &verdict) {
                (true, SplitVerdict::Split(_)) | (false, SplitVerdict::Nonsplit(_)) => {}
                other => panic!(
                    "seed {seed}: verdict drifted on {}: {other:?}",
                    cur.serialize()
                ),
            }
        }
    }
    pass(9, "split obstruction verdicts certified and stable under 100 seeded perturbations");
}
