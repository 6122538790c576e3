//! Partition assignment plus the per-vertex degree bookkeeping that makes
//! single-vertex moves cheap to score and apply.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::graph::WeightedGraph;

/// Assignment of every vertex to one of `l` non-empty blocks.
///
/// Labels are always dense (`0..l`); a block that empties is removed by
/// moving the last block into its slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    label: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    slot: Vec<usize>,
}

/// Destination of a single-vertex move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    Existing(usize),
    /// Open a fresh singleton block with label `l`.
    New,
}

impl Solution {
    /// Every vertex alone in its own block.
    pub fn singletons(n: usize) -> Self {
        Solution {
            label: (0..n).collect(),
            blocks: (0..n).map(|v| vec![v]).collect(),
            slot: vec![0; n],
        }
    }

    /// Builds a solution from arbitrary labels; labels are renumbered in
    /// ascending order of their original value so the result is dense.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut used: Vec<usize> = labels.to_vec();
        used.sort_unstable();
        used.dedup();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); used.len()];
        let mut label = Vec::with_capacity(labels.len());
        let mut slot = Vec::with_capacity(labels.len());
        for (v, raw) in labels.iter().enumerate() {
            let j = used.binary_search(raw).unwrap();
            label.push(j);
            slot.push(blocks[j].len());
            blocks[j].push(v);
        }
        Solution {
            label,
            blocks,
            slot,
        }
    }

    /// Draws each label uniformly from `1..=⌈√n⌉`, then compacts.
    pub fn random_initial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let bound = ceil_sqrt(n).max(1);
        let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..bound)).collect();
        Self::from_labels(&raw)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.label.len()
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Number of non-empty blocks, `l`.
    #[inline]
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    #[inline]
    pub fn block_size(&self, j: usize) -> usize {
        self.blocks[j].len()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[usize]> {
        self.blocks.iter().map(|b| b.as_slice())
    }

    /// Blocks with sorted members, ordered by smallest member. Two solutions
    /// describe the same set partition iff their canonical blocks are equal.
    pub fn canonical_blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        out.sort();
        out
    }

    fn push_empty(&mut self) -> usize {
        self.blocks.push(Vec::new());
        self.blocks.len() - 1
    }

    fn detach(&mut self, v: usize) {
        let j = self.label[v];
        let pos = self.slot[v];
        let block = &mut self.blocks[j];
        block.swap_remove(pos);
        if pos < block.len() {
            let moved = block[pos];
            self.slot[moved] = pos;
        }
    }

    fn attach(&mut self, v: usize, j: usize) {
        self.label[v] = j;
        self.slot[v] = self.blocks[j].len();
        self.blocks[j].push(v);
    }

    /// Removes empty block `j` by moving the last block into its slot.
    fn remove_empty(&mut self, j: usize) {
        debug_assert!(self.blocks[j].is_empty());
        self.blocks.swap_remove(j);
        if j < self.blocks.len() {
            for &u in &self.blocks[j] {
                self.label[u] = j;
            }
        }
    }

    /// Inverse of [`Solution::remove_empty`]: re-opens an empty block at `j`.
    fn reopen_empty(&mut self, j: usize) {
        let last = self.blocks.len();
        if j == last {
            self.blocks.push(Vec::new());
        } else {
            let moved = core::mem::take(&mut self.blocks[j]);
            for &u in &moved {
                self.label[u] = last;
            }
            self.blocks.push(moved);
        }
    }
}

/// Smallest `r` with `r * r >= n`.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = 0usize;
    while r * r < n {
        r += 1;
    }
    r
}

/// Incremental evaluation state for one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeLedger {
    /// Neighbors of `v` inside `v`'s own block.
    pub intra_deg: Vec<usize>,
    pub correct: Vec<bool>,
    pub correct_total: usize,
    /// Weight of intra-block edges whose endpoints are both correct.
    pub w_sol: f64,
}

/// `deg >= size - k`, written without the subtraction.
#[inline]
pub fn is_correct(intra_deg: usize, block_size: usize, k: usize) -> bool {
    intra_deg + k >= block_size
}

/// Full O(|V| + |E|) rebuild of the ledger.
pub fn recompute_ledger(g: &WeightedGraph, s: &Solution, k: usize) -> DegreeLedger {
    let n = g.n();
    let mut intra_deg = vec![0usize; n];
    for e in g.edges() {
        if s.label(e.u) == s.label(e.v) {
            intra_deg[e.u] += 1;
            intra_deg[e.v] += 1;
        }
    }
    let correct: Vec<bool> = (0..n)
        .map(|v| is_correct(intra_deg[v], s.block_size(s.label(v)), k))
        .collect();
    let correct_total = correct.iter().filter(|&&c| c).count();
    let w_sol = g
        .edges()
        .iter()
        .filter(|e| s.label(e.u) == s.label(e.v) && correct[e.u] && correct[e.v])
        .map(|e| e.weight)
        .sum();
    DegreeLedger {
        intra_deg,
        correct,
        correct_total,
        w_sol,
    }
}

/// Outcome of a feasibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    /// 0-based vertices failing the k-plex degree condition, ascending.
    pub violators: Vec<usize>,
}

pub fn is_feasible(g: &WeightedGraph, s: &Solution, k: usize) -> Feasibility {
    let ledger = recompute_ledger(g, s, k);
    let violators: Vec<usize> = (0..g.n()).filter(|&v| !ledger.correct[v]).collect();
    Feasibility {
        feasible: violators.is_empty(),
        violators,
    }
}

/// Total weight of edges whose endpoints share a block, correct or not.
pub fn partition_weight(g: &WeightedGraph, s: &Solution) -> f64 {
    g.edges()
        .iter()
        .filter(|e| s.label(e.u) == s.label(e.v))
        .map(|e| e.weight)
        .sum()
}

/// Everything needed to revert one [`State::move_vertex`] exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveRecord {
    pub vertex: usize,
    /// Label of the source block before the move.
    pub from: usize,
    /// Label of the destination block before any compaction.
    pub to: usize,
    /// The destination was a freshly opened block.
    pub created: bool,
    /// The source block emptied and was compacted away.
    pub emptied: bool,
    /// The request left the set partition unchanged; nothing was done.
    pub noop: bool,
    prev_correct_total: usize,
    prev_w_sol: f64,
}

/// What a vertex sees of one other block.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Tally {
    pub epoch: u32,
    pub nbrs: u32,
    /// Neighbors sitting exactly at the k-plex bound.
    pub tight: u32,
    /// Weight to correct members.
    pub w: f64,
}

/// Scratch buffers reused across move evaluations.
#[derive(Debug, Clone, Default)]
pub(crate) struct Scratch {
    pub epoch: u32,
    /// `near[u] == epoch` iff `u` is adjacent to the vertex being moved.
    pub near: Vec<u32>,
    /// `flip[u] == epoch` iff `u`'s correct flag changes under the move.
    pub flip: Vec<u32>,
    pub flipped: Vec<usize>,
    pub new_deg: usize,
    pub new_correct: bool,
    /// Per-block tallies for the vertex being probed, valid where
    /// `tally[j].epoch == probe_epoch`.
    pub probe_epoch: u32,
    pub tally: Vec<Tally>,
    /// Blocks other than its own holding a neighbor of the probed vertex.
    pub adjacent: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            epoch: 0,
            near: vec![0; n],
            flip: vec![0; n],
            flipped: Vec::new(),
            new_deg: 0,
            new_correct: false,
            probe_epoch: 0,
            tally: vec![Tally::default(); n + 1],
            adjacent: Vec::new(),
        }
    }

    pub fn bump(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.near.iter_mut().for_each(|x| *x = 0);
            self.flip.iter_mut().for_each(|x| *x = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn bump_probe(&mut self) -> u32 {
        self.probe_epoch = self.probe_epoch.wrapping_add(1);
        if self.probe_epoch == 0 {
            self.tally.iter_mut().for_each(|t| t.epoch = 0);
            self.probe_epoch = 1;
        }
        self.probe_epoch
    }
}

/// What leaving its block does, for one vertex. Depends only on that
/// block, so it stays valid while other blocks change.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct VertexProbe {
    /// Block members that become correct once the vertex leaves.
    gained: usize,
    was_correct: bool,
    /// Weight to correct members of its block.
    w_from: f64,
}

/// `hist[j][d]` counts members of block `j` with intra-block degree `d`.
fn hist_get(hist: &[Vec<u32>], j: usize, d: usize) -> u32 {
    hist[j].get(d).copied().unwrap_or(0)
}

fn hist_add(hist: &mut [Vec<u32>], j: usize, d: usize) {
    let h = &mut hist[j];
    if h.len() <= d {
        h.resize(d + 1, 0);
    }
    h[d] += 1;
}

fn hist_sub(hist: &mut [Vec<u32>], j: usize, d: usize) {
    hist[j][d] -= 1;
}

fn build_hist(s: &Solution, led: &DegreeLedger) -> Vec<Vec<u32>> {
    let mut hist = vec![Vec::new(); s.block_count()];
    for v in 0..s.n() {
        hist_add(&mut hist, s.label(v), led.intra_deg[v]);
    }
    hist
}

/// A solution together with its ledger, bound to one graph and one `k`.
#[derive(Debug, Clone)]
pub struct State<'g> {
    pub(crate) graph: &'g WeightedGraph,
    pub(crate) k: usize,
    pub(crate) solution: Solution,
    pub(crate) ledger: DegreeLedger,
    hist: Vec<Vec<u32>>,
    pub(crate) scratch: Scratch,
}

impl<'g> State<'g> {
    pub fn new(graph: &'g WeightedGraph, solution: Solution, k: usize) -> Self {
        assert_eq!(
            graph.n(),
            solution.n(),
            "solution size does not match graph"
        );
        let ledger = recompute_ledger(graph, &solution, k);
        let hist = build_hist(&solution, &ledger);
        State {
            graph,
            k,
            solution,
            ledger,
            hist,
            scratch: Scratch::new(graph.n()),
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn ledger(&self) -> &DegreeLedger {
        &self.ledger
    }

    pub fn into_solution(self) -> Solution {
        self.solution
    }

    /// Rebuilds the ledger from scratch, discarding accumulated rounding.
    pub fn resync(&mut self) {
        self.ledger = recompute_ledger(self.graph, &self.solution, self.k);
        self.hist = build_hist(&self.solution, &self.ledger);
    }

    /// Copies `other` into `self`, reusing allocations.
    pub fn assign_from(&mut self, other: &State<'g>) {
        self.graph = other.graph;
        self.k = other.k;
        self.solution.clone_from(&other.solution);
        self.ledger.clone_from(&other.ledger);
        self.hist.clone_from(&other.hist);
    }

    /// Gathers, in one pass over the neighbors of `v`, what
    /// [`State::probe_move`] needs to price any target in O(1).
    pub(crate) fn probe_vertex(&mut self, v: usize) -> VertexProbe {
        let k = self.k;
        let s = &self.solution;
        let led = &self.ledger;
        let sc = &mut self.scratch;
        let epoch = sc.bump_probe();
        let a = s.label(v);
        let size_a = s.block_size(a);
        // Members of the source block at degree size_a - 1 - k become
        // correct when `v` leaves, unless they are adjacent to it.
        let tight_a = (size_a > k).then(|| size_a - 1 - k);
        let mut gained = tight_a.map_or(0, |t| {
            hist_get(&self.hist, a, t) as usize - usize::from(led.intra_deg[v] == t)
        });
        let mut w_from = 0.0;
        sc.adjacent.clear();
        for nb in self.graph.neighbors(v) {
            let u = nb.vertex;
            let j = s.label(u);
            let d = led.intra_deg[u];
            if j == a {
                if Some(d) == tight_a {
                    gained -= 1;
                }
                if led.correct[u] {
                    w_from += nb.weight;
                }
                continue;
            }
            let t = &mut sc.tally[j];
            if t.epoch != epoch {
                *t = Tally {
                    epoch,
                    ..Tally::default()
                };
                sc.adjacent.push(j);
            }
            t.nbrs += 1;
            if d + k == s.block_size(j) {
                t.tight += 1;
            }
            if led.correct[u] {
                t.w += nb.weight;
            }
        }
        VertexProbe {
            gained,
            was_correct: led.correct[v],
            w_from,
        }
    }

    /// Blocks adjacent to the last probed vertex, in first-seen order.
    pub(crate) fn adjacent_blocks(&self) -> &[usize] {
        &self.scratch.adjacent
    }

    /// Correct count after moving the last probed vertex to `target`, and
    /// the resulting `w_sol` when no other vertex changes its correct flag.
    pub(crate) fn probe_move(&self, p: &VertexProbe, target: Target) -> (usize, Option<f64>) {
        let sc = &self.scratch;
        let seen = match target {
            Target::Existing(j) if sc.tally[j].epoch == sc.probe_epoch => sc.tally[j],
            _ => Tally::default(),
        };
        self.price(p, target, &seen)
    }

    /// Prices a move given the home-block probe and what the vertex sees of
    /// the destination.
    pub(crate) fn price(
        &self,
        p: &VertexProbe,
        target: Target,
        seen: &Tally,
    ) -> (usize, Option<f64>) {
        let k = self.k;
        let led = &self.ledger;
        let base = led.correct_total - usize::from(p.was_correct) + p.gained;
        let w_base = if p.was_correct {
            led.w_sol - p.w_from
        } else {
            led.w_sol
        };
        let flips_from = p.gained > 0;
        match target {
            Target::New => (base + 1, (!flips_from).then_some(w_base)),
            Target::Existing(j) => {
                let size = self.solution.block_size(j);
                // Non-neighbors at the bound fall below it.
                let lost = if size >= k {
                    hist_get(&self.hist, j, size - k) as usize - seen.tight as usize
                } else {
                    0
                };
                let now_correct = is_correct(seen.nbrs as usize, size + 1, k);
                let correct = base - lost + usize::from(now_correct);
                let w = (lost == 0 && !flips_from).then_some({
                    if now_correct {
                        w_base + seen.w
                    } else {
                        w_base
                    }
                });
                (correct, w)
            }
        }
    }

    /// For every vertex outside block `j` with a neighbor inside it, tallies
    /// what that vertex sees of `j` into `out` (indexed by vertex, stamped
    /// with `epoch`) and lists it in `touched`.
    pub(crate) fn tally_around(
        &self,
        j: usize,
        epoch: u32,
        out: &mut [Tally],
        touched: &mut Vec<usize>,
    ) {
        let k = self.k;
        let size = self.solution.block_size(j);
        let led = &self.ledger;
        for &x in self.solution.block(j) {
            let tight = led.intra_deg[x] + k == size;
            let correct = led.correct[x];
            for nb in self.graph.neighbors(x) {
                let u = nb.vertex;
                if self.solution.label(u) == j {
                    continue;
                }
                let t = &mut out[u];
                if t.epoch != epoch {
                    *t = Tally {
                        epoch,
                        ..Tally::default()
                    };
                    touched.push(u);
                }
                t.nbrs += 1;
                t.tight += u32::from(tight);
                if correct {
                    t.w += nb.weight;
                }
            }
        }
    }

    fn open_block(&mut self) -> usize {
        self.hist.push(Vec::new());
        self.solution.push_empty()
    }

    fn close_block(&mut self, j: usize) {
        self.hist.swap_remove(j);
        self.solution.remove_empty(j);
    }

    fn reopen_block(&mut self, j: usize) {
        let last = self.hist.len();
        if j == last {
            self.hist.push(Vec::new());
        } else {
            let moved = core::mem::take(&mut self.hist[j]);
            self.hist.push(moved);
        }
        self.solution.reopen_empty(j);
    }

    /// True when the move would leave the set partition unchanged.
    pub fn is_noop(&self, v: usize, target: Target) -> bool {
        match target {
            Target::Existing(j) => j == self.solution.label(v),
            Target::New => self.solution.block_size(self.solution.label(v)) == 1,
        }
    }

    /// Scores moving `v` to `target` by visiting only the source and
    /// destination blocks. Returns the resulting `(correct_total, w_sol)`
    /// and leaves the flipped vertices in scratch for [`State::move_vertex`].
    ///
    /// With `floor = Some(c)`, gives up and returns `None` as soon as the
    /// new correct count is known to be below `c`.
    pub(crate) fn score_move(
        &mut self,
        v: usize,
        target: Target,
        floor: Option<usize>,
    ) -> Option<(usize, f64)> {
        let g = self.graph;
        let k = self.k;
        let s = &self.solution;
        let led = &self.ledger;
        let sc = &mut self.scratch;

        let a = s.label(v);
        let b = match target {
            Target::Existing(j) => Some(j),
            Target::New => None,
        };
        debug_assert_ne!(b, Some(a));
        let size_a = s.block_size(a);
        let size_b = b.map_or(0, |j| s.block_size(j));
        let epoch = sc.bump();

        let mut new_deg = 0usize;
        for nb in g.neighbors(v) {
            sc.near[nb.vertex] = epoch;
            if Some(s.label(nb.vertex)) == b {
                new_deg += 1;
            }
        }
        let new_correct = is_correct(new_deg, size_b + 1, k);
        sc.new_deg = new_deg;
        sc.new_correct = new_correct;
        sc.flipped.clear();

        let mut gained = 0usize;
        let mut lost = 0usize;
        for &u in s.block(a) {
            if u == v {
                continue;
            }
            let d = led.intra_deg[u] - usize::from(sc.near[u] == epoch);
            if is_correct(d, size_a - 1, k) != led.correct[u] {
                sc.flip[u] = epoch;
                sc.flipped.push(u);
                if led.correct[u] {
                    lost += 1;
                } else {
                    gained += 1;
                }
            }
        }
        if let Some(b) = b {
            for &u in s.block(b) {
                let d = led.intra_deg[u] + usize::from(sc.near[u] == epoch);
                if is_correct(d, size_b + 1, k) != led.correct[u] {
                    sc.flip[u] = epoch;
                    sc.flipped.push(u);
                    if led.correct[u] {
                        lost += 1;
                    } else {
                        gained += 1;
                    }
                }
            }
        }
        let old_v = led.correct[v];
        let correct_total =
            led.correct_total + gained + usize::from(new_correct) - lost - usize::from(old_v);
        if let Some(floor) = floor {
            if correct_total < floor {
                return None;
            }
        }

        let mut w = led.w_sol;
        for nb in g.neighbors(v) {
            let u = nb.vertex;
            let lu = s.label(u);
            if lu == a {
                if old_v && led.correct[u] {
                    w -= nb.weight;
                }
            } else if Some(lu) == b {
                let cu = led.correct[u] ^ (sc.flip[u] == epoch);
                if new_correct && cu {
                    w += nb.weight;
                }
            }
        }
        for &x in &sc.flipped {
            let bx = s.label(x);
            let cx_old = led.correct[x];
            let cx_new = !cx_old;
            for nb in g.neighbors(x) {
                let y = nb.vertex;
                if y == v || s.label(y) != bx {
                    continue;
                }
                let y_flipped = sc.flip[y] == epoch;
                if y_flipped && y < x {
                    continue;
                }
                let cy_old = led.correct[y];
                let cy_new = cy_old ^ y_flipped;
                let before = cx_old && cy_old;
                let after = cx_new && cy_new;
                if after && !before {
                    w += nb.weight;
                } else if before && !after {
                    w -= nb.weight;
                }
            }
        }
        Some((correct_total, w))
    }

    /// Moves `v` to `target`, updating the ledger over the source and
    /// destination blocks only. Requests that leave the set partition
    /// unchanged return a record with `noop = true`.
    pub fn move_vertex(&mut self, v: usize, target: Target) -> MoveRecord {
        let from = self.solution.label(v);
        let mut record = MoveRecord {
            vertex: v,
            from,
            to: from,
            created: false,
            emptied: false,
            noop: true,
            prev_correct_total: self.ledger.correct_total,
            prev_w_sol: self.ledger.w_sol,
        };
        if self.is_noop(v, target) {
            return record;
        }
        let (correct_total, w_sol) = self.score_move(v, target, None).unwrap();

        let to = match target {
            Target::Existing(j) => j,
            Target::New => {
                record.created = true;
                self.open_block()
            }
        };
        record.to = to;
        record.noop = false;

        let led = &mut self.ledger;
        let hist = &mut self.hist;
        for nb in self.graph.neighbors(v) {
            let u = nb.vertex;
            let lu = self.solution.label(u);
            if lu == from {
                hist_sub(hist, from, led.intra_deg[u]);
                led.intra_deg[u] -= 1;
                hist_add(hist, from, led.intra_deg[u]);
            } else if lu == to {
                hist_sub(hist, to, led.intra_deg[u]);
                led.intra_deg[u] += 1;
                hist_add(hist, to, led.intra_deg[u]);
            }
        }
        hist_sub(hist, from, led.intra_deg[v]);
        hist_add(hist, to, self.scratch.new_deg);
        self.ledger.intra_deg[v] = self.scratch.new_deg;
        self.ledger.correct[v] = self.scratch.new_correct;
        for &u in &self.scratch.flipped {
            self.ledger.correct[u] = !self.ledger.correct[u];
        }
        self.ledger.correct_total = correct_total;
        self.ledger.w_sol = w_sol;

        self.solution.detach(v);
        self.solution.attach(v, to);
        if self.solution.block_size(from) == 0 {
            record.emptied = true;
            self.close_block(from);
        }
        record
    }

    /// Reverts `record`, which must be the most recent non-undone move.
    pub fn undo(&mut self, record: &MoveRecord) {
        if record.noop {
            return;
        }
        let v = record.vertex;
        if record.emptied {
            self.reopen_block(record.from);
        }
        debug_assert_eq!(self.solution.label(v), record.to);

        let (from, to) = (record.from, record.to);
        let mut back_deg = 0;
        let led = &mut self.ledger;
        let hist = &mut self.hist;
        for nb in self.graph.neighbors(v) {
            let u = nb.vertex;
            let lu = self.solution.label(u);
            if lu == to {
                hist_sub(hist, to, led.intra_deg[u]);
                led.intra_deg[u] -= 1;
                hist_add(hist, to, led.intra_deg[u]);
            } else if lu == from {
                hist_sub(hist, from, led.intra_deg[u]);
                led.intra_deg[u] += 1;
                hist_add(hist, from, led.intra_deg[u]);
                back_deg += 1;
            }
        }
        hist_sub(hist, to, led.intra_deg[v]);
        hist_add(hist, from, back_deg);
        self.ledger.intra_deg[v] = back_deg;
        self.solution.detach(v);
        self.solution.attach(v, from);
        for j in [from, to] {
            let size = self.solution.block_size(j);
            for &u in self.solution.block(j) {
                self.ledger.correct[u] = is_correct(self.ledger.intra_deg[u], size, self.k);
            }
        }
        self.ledger.correct_total = record.prev_correct_total;
        self.ledger.w_sol = record.prev_w_sol;

        if record.created {
            debug_assert_eq!(self.solution.block_size(to), 0);
            self.close_block(to);
        }
    }
}
