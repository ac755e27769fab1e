//! Exhaustive search for pullback graphs with a given number of `R` edges.
//!
//! Maps are grown from corner 0 of vertex 0 by always pairing the smallest
//! unpaired corner of the vertices reached so far, either with another such
//! corner of opposite parity or with a corner of a fresh vertex. Every
//! connected map arises this way; duplicates are removed by canonical code.
//! Faces are checked as soon as they close.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{check_bounds, graph_region_bounds, BoundReport};
use super::map::{rho, rho_inv, vertex_of, Map, NONE};
use super::{classify, euler, PullbackError, PullbackGraph};
use crate::word::{CyclicWord, Decider, Letter};

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    pub r: usize,
    pub genus_max: Option<u32>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Accept faces whose words are not reducible. Useful for building
    /// surfaces whose bubbles will later hold several saddles, where the
    /// words that matter are the virtual ones.
    pub skip_word_filter: bool,
}

#[derive(Clone, Debug)]
pub struct Configuration {
    pub code: Vec<u32>,
    pub graph: PullbackGraph,
    pub chi: i64,
    pub genus: u32,
    pub bounds: BoundReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub r: usize,
    pub genus_max: Option<u32>,
    #[serde(skip)]
    pub configurations: Vec<Configuration>,
    pub count: usize,
    pub counts_by_genus: BTreeMap<u32, usize>,
    pub chi_distribution: BTreeMap<i64, usize>,
    pub max_face_size: usize,
    /// Classes when `+` and `-` faces may also be exchanged.
    pub count_modulo_sign_swap: usize,
}

/// Admissible face words, indexed by length and the bitmask of `R` edges
/// (bit `k` set when the edge after vertex `k` is marked). A closed face needs
/// even length, an even number of unmarked edges, at least two `R`s, a
/// reducible word, and `n + r <= |R|` (the region count on both sides of the
/// face cannot find more `R`s than the other faces carry).
struct WordTable {
    closed: Vec<Vec<bool>>,
    /// Open paths of `len` vertices (mask over their `len - 1` edges) that
    /// some admissible closed face extends.
    open: Vec<Vec<bool>>,
}

impl WordTable {
    fn new(max_len: usize, r_total: usize, check_words: bool) -> WordTable {
        let mut decider = Decider::new();
        let mut closed = vec![Vec::new(); max_len + 1];
        let mut open: Vec<Vec<bool>> = (0..=max_len)
            .map(|n| vec![false; 1 << n.saturating_sub(1)])
            .collect();
        for (n, slot) in closed.iter_mut().enumerate().skip(1) {
            *slot = (0u32..1 << n)
                .map(|mask| {
                    let r = mask.count_ones() as usize;
                    if n % 2 == 1 || (n - r) % 2 == 1 || r < 2 || n + r > r_total {
                        return false;
                    }
                    let mut letters = Vec::with_capacity(2 * n);
                    for k in 0..n {
                        letters.push(Letter::Saddle);
                        if mask >> k & 1 == 1 {
                            letters.push(Letter::RCross);
                        }
                    }
                    !check_words || decider.is_reducible(&CyclicWord::new(letters))
                })
                .collect();
            for mask in 0u32..1 << n {
                if slot[mask as usize] {
                    for len in 1..=n {
                        open[len][(mask & ((1 << (len - 1)) - 1)) as usize] = true;
                    }
                }
            }
        }
        WordTable { closed, open }
    }

    fn admissible(&self, n: usize, mask: u32) -> bool {
        self.closed.get(n).is_some_and(|t| t[mask as usize])
    }

    fn extendable(&self, len: usize, mask: u32) -> bool {
        self.open.get(len).is_some_and(|t| t[mask as usize])
    }
}

struct Limits {
    r: usize,
    max_vertices: usize,
    max_face: usize,
    max_faces_per_sign: usize,
    genus_max: Option<u32>,
}

#[derive(Clone)]
struct State {
    sigma: Vec<u32>,
    marks: Vec<bool>,
    /// Orientation class of each reached vertex; an edge is `R` exactly
    /// when its ends agree.
    colour: Vec<bool>,
    reached: usize,
    r_used: usize,
    /// Closed faces, their corners and their `R` edges, per sign (`+` first).
    closed: [Tally; 2],
}

#[derive(Clone, Copy, Default)]
struct Tally {
    faces: usize,
    corners: usize,
    r: usize,
}

enum PathCheck {
    Dead,
    Open,
    Closed { plus: bool, len: usize, r: usize },
}

impl State {
    fn new(max_vertices: usize) -> State {
        State {
            sigma: vec![NONE; 4 * max_vertices],
            marks: vec![false; 4 * max_vertices],
            colour: vec![true; max_vertices],
            reached: 1,
            r_used: 0,
            closed: [Tally::default(); 2],
        }
    }

    fn pair(&mut self, a: u32, b: u32, mark: bool) {
        self.sigma[a as usize] = b;
        self.sigma[b as usize] = a;
        self.marks[a as usize] = mark;
        self.marks[b as usize] = mark;
        self.r_used += usize::from(mark);
    }

    fn unpair(&mut self, a: u32, b: u32) {
        self.r_used -= usize::from(self.marks[a as usize]);
        self.sigma[a as usize] = NONE;
        self.sigma[b as usize] = NONE;
        self.marks[a as usize] = false;
        self.marks[b as usize] = false;
    }

    /// Checks the (possibly partial) face walk through element `x`.
    fn check_face(&self, x: u32, lim: &Limits, words: &WordTable) -> PathCheck {
        // walk back to the start of the open path, or detect closure
        let mut start = x;
        let mut closed = false;
        loop {
            let p = self.sigma[rho_inv(start) as usize];
            if p == NONE {
                break;
            }
            if p == x {
                closed = true;
                break;
            }
            start = p;
        }
        let start = if closed { x } else { start };
        let mut seen_vertices: u64 = 0;
        let mut len = 0usize;
        let mut mask = 0u32;
        let mut e = start;
        loop {
            let v = vertex_of(e);
            if seen_vertices >> v & 1 == 1 {
                return PathCheck::Dead;
            }
            seen_vertices |= 1 << v;
            len += 1;
            if len > lim.max_face {
                return PathCheck::Dead;
            }
            let t = self.sigma[e as usize];
            if t == NONE {
                break;
            }
            if self.marks[e as usize] {
                mask |= 1 << (len - 1);
            }
            e = rho(t);
            if e == start {
                break;
            }
        }
        if !closed {
            return if words.extendable(len, mask) {
                PathCheck::Open
            } else {
                PathCheck::Dead
            };
        }
        let r = mask.count_ones() as usize;
        if !words.admissible(len, mask) {
            return PathCheck::Dead;
        }
        PathCheck::Closed {
            plus: x % 2 == 1,
            len,
            r,
        }
    }
}

struct Search<'a> {
    lim: &'a Limits,
    words: &'a WordTable,
    found: HashSet<Vec<u32>>,
}

impl Search<'_> {
    fn smallest_unpaired(st: &State) -> Option<u32> {
        (0..4 * st.reached as u32).find(|&h| st.sigma[h as usize] == NONE)
    }

    /// Candidate (partner, mark) moves for the smallest unpaired corner.
    fn moves(&self, st: &State, h: u32) -> Vec<(u32, bool, bool)> {
        let mut out = Vec::new();
        let budget = st.r_used < self.lim.r;
        let marks: &[bool] = if budget { &[false, true] } else { &[false] };
        let ch = st.colour[vertex_of(h) as usize];
        for t in h + 1..4 * st.reached as u32 {
            if st.sigma[t as usize] == NONE && (t ^ h) & 1 == 1 {
                let m = st.colour[vertex_of(t) as usize] == ch;
                if budget || !m {
                    out.push((t, m, false));
                }
            }
        }
        if st.reached < self.lim.max_vertices {
            let t = 4 * st.reached as u32 + (1 - (h & 1));
            for &m in marks {
                out.push((t, m, true));
            }
        }
        out
    }

    /// Applies a move; returns false (with the move undone) when a face dies.
    fn apply(&self, st: &mut State, h: u32, t: u32, mark: bool, fresh: bool) -> bool {
        if fresh {
            st.colour[st.reached] = st.colour[vertex_of(h) as usize] == mark;
            st.reached += 1;
        }
        st.pair(h, t, mark);
        let mut closed = st.closed;
        let mut ok = true;
        let mut checked = [NONE; 2];
        for (slot, x) in [h, t].into_iter().enumerate() {
            match st.check_face(x, self.lim, self.words) {
                PathCheck::Dead => {
                    ok = false;
                    break;
                }
                PathCheck::Open => {}
                PathCheck::Closed { plus, len, r } => {
                    // h and t can lie on the same closed face
                    if slot == 1 && checked[0] != NONE && self.same_face(st, checked[0], x) {
                        continue;
                    }
                    checked[slot] = x;
                    let t = &mut closed[usize::from(!plus)];
                    t.faces += 1;
                    t.corners += len;
                    t.r += r;
                }
            }
        }
        if ok && closed.iter().all(|t| self.room_for_rest(st.reached, t)) {
            st.closed = closed;
            return true;
        }
        st.unpair(h, t);
        if fresh {
            st.reached -= 1;
        }
        false
    }

    /// Corners not yet on a closed face of this sign still need faces of at
    /// most `max_face` corners, each with two `R` edges of its own.
    fn room_for_rest(&self, reached: usize, t: &Tally) -> bool {
        let open = 2 * reached - t.corners;
        let needed = open.div_ceil(self.lim.max_face);
        t.faces + needed <= self.lim.max_faces_per_sign && t.r + 2 * needed <= self.lim.r
    }

    fn undo(st: &mut State, h: u32, t: u32, fresh: bool, closed_before: [Tally; 2]) {
        st.unpair(h, t);
        if fresh {
            st.reached -= 1;
        }
        st.closed = closed_before;
    }

    fn same_face(&self, st: &State, a: u32, b: u32) -> bool {
        let mut e = a;
        loop {
            if e == b {
                return true;
            }
            e = rho(st.sigma[e as usize]);
            if e == a {
                return false;
            }
        }
    }

    fn run(&mut self, st: &mut State) {
        let Some(h) = Self::smallest_unpaired(st) else {
            self.finish(st);
            return;
        };
        for (t, mark, fresh) in self.moves(st, h) {
            let before = st.closed;
            if self.apply(st, h, t, mark, fresh) {
                self.run(st);
                Self::undo(st, h, t, fresh, before);
            }
        }
    }

    fn finish(&mut self, st: &State) {
        if st.r_used != self.lim.r {
            return;
        }
        let n = 4 * st.reached;
        let Ok(map) = Map::new(st.sigma[..n].to_vec(), st.marks[..n].to_vec()) else {
            return;
        };
        if accept(&map, self.lim).is_some() {
            self.found.insert(map.canonical_code());
        }
    }
}

/// Whole-graph filters; returns the Euler characteristic and genus.
fn accept(map: &Map, lim: &Limits) -> Option<(i64, u32, BoundReport)> {
    let g = PullbackGraph::from_map(map.clone());
    let chi = euler(&g).ok()?;
    let genus = classify(chi).ok()?;
    if lim.genus_max.is_some_and(|gm| genus > gm) {
        return None;
    }
    let bounds = check_bounds(&g).ok()?;
    if !bounds.holds() {
        return None;
    }
    let regions = graph_region_bounds(&g)?;
    if !regions.iter().all(|b| b.consistent && b.holds()) {
        return None;
    }
    Some((chi, genus, bounds))
}

fn limits(r: usize, genus_max: Option<u32>) -> Limits {
    let mut max_vertices = r * (r - 2) / 4;
    if let Some(g) = genus_max {
        // V = F - χ <= r - (2 - 2g)
        max_vertices = max_vertices.min(r + 2 * g as usize - 2);
    }
    Limits {
        r,
        max_vertices,
        max_face: r - 2,
        max_faces_per_sign: r / 2,
        genus_max,
    }
}

/// Every admissible configuration with exactly `r` edges marked `R`, up to
/// isomorphism preserving face signs and marks.
pub fn enumerate_configurations(
    opts: &EnumerationOptions,
) -> Result<EnumerationReport, PullbackError> {
    let r = opts.r;
    if !(4..=12).contains(&r) || !r.is_multiple_of(2) {
        return Err(PullbackError::ROutOfRange(r));
    }
    let lim = limits(r, opts.genus_max);
    let words = WordTable::new(lim.max_face, r, !opts.skip_word_filter);

    // split the tree a few levels down and search the subtrees in parallel
    let mut frontier = vec![State::new(lim.max_vertices)];
    let mut complete: Vec<State> = Vec::new();
    {
        let probe = Search {
            lim: &lim,
            words: &words,
            found: HashSet::new(),
        };
        for _ in 0..4 {
            let mut next = Vec::new();
            for st in frontier {
                let Some(h) = Search::smallest_unpaired(&st) else {
                    complete.push(st);
                    continue;
                };
                for (t, mark, fresh) in probe.moves(&st, h) {
                    let mut child = st.clone();
                    if probe.apply(&mut child, h, t, mark, fresh) {
                        next.push(child);
                    }
                }
            }
            frontier = next;
        }
    }
    frontier.extend(complete);

    let work = || {
        frontier
            .par_iter()
            .map(|st| {
                let mut search = Search {
                    lim: &lim,
                    words: &words,
                    found: HashSet::new(),
                };
                let mut st = st.clone();
                search.run(&mut st);
                search.found
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    let codes = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| PullbackError::Assembly(e.to_string()))?
            .install(work),
        None => work(),
    };

    let mut codes: Vec<Vec<u32>> = codes.into_iter().collect();
    codes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut configurations = Vec::with_capacity(codes.len());
    for code in codes {
        let map = Map::from_code(&code);
        let (chi, genus, bounds) = accept(&map, &lim).expect("accepted once already");
        configurations.push(Configuration {
            code,
            graph: PullbackGraph::from_map(map),
            chi,
            genus,
            bounds,
        });
    }
    Ok(summarize(r, opts.genus_max, configurations))
}

fn summarize(
    r: usize,
    genus_max: Option<u32>,
    configurations: Vec<Configuration>,
) -> EnumerationReport {
    let mut counts_by_genus = BTreeMap::new();
    let mut chi_distribution = BTreeMap::new();
    let mut swap_classes = BTreeSet::new();
    let mut max_face_size = 0;
    for c in &configurations {
        *counts_by_genus.entry(c.genus).or_default() += 1;
        *chi_distribution.entry(c.chi).or_default() += 1;
        max_face_size = max_face_size.max(c.graph.max_face_size());
        let swapped = c.graph.map.sign_swapped().canonical_code();
        swap_classes.insert(swapped.min(c.code.clone()));
    }
    EnumerationReport {
        r,
        genus_max,
        count: configurations.len(),
        configurations,
        counts_by_genus,
        chi_distribution,
        max_face_size,
        count_modulo_sign_swap: swap_classes.len(),
    }
}
