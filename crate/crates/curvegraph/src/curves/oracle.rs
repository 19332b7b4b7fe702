//! Independent planar grid oracle for geometric intersection numbers on
//! genus-0 models.
//!
//! The punctured sphere is drawn as a square grid with the finite punctures
//! at cell centers along a horizontal line and the last puncture at
//! infinity. One curve is a closed walk on the integer lattice; the other
//! lives on a half-spacing lattice offset by a quarter in both directions,
//! so the two only ever meet transversally, at interior points of edges,
//! and the fine walk always has room to run parallel to the coarse one.
//! Homotopy classes are read off rays dropped from each puncture to the
//! bottom edge: crossing the ray of puncture j rightward reads the j-th
//! generator.
//!
//! The fixed curve is built embedded, not searched: cutting the square
//! along the rays leaves a disk, a choice of crossing order on each ray
//! turns the word's arcs into chords of that disk, and any non-crossing
//! chord choice routes into disjoint lattice paths, innermost chords
//! first. Against a fixed embedded curve, minimizing crossings over the
//! entire homotopy class of the partner (a 0/1-weight search over pairs of
//! fine vertex and word position) realizes the geometric intersection
//! number, so every reported value is an upper bound that becomes exact as
//! soon as the grid is fine enough; a sweep accepts a value once two
//! successive resolutions agree.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{CurveClass, CurveError, SurfaceModel};
use crate::words::Letter;

/// Outcome of one fixed-grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Minimum crossing count observed; an upper bound for the true value.
    Value(u32),
    /// No realization of one of the classes fits this grid.
    Inconclusive,
}

const REPS_KEPT: usize = 6;
const LENGTH_SLACK: u32 = 2;
/// Bail out of the per-ray crossing-order enumeration past this many
/// combinations; the words this oracle serves stay far below it.
const ORDERING_CAP: usize = 40_320;

/// Grid geometry. Puncture j sits at (j * spacing + 1/2, mid + 1/2) for
/// j = 1..=rays; its ray hangs straight down to the bottom edge.
struct Grid {
    size: i32,
    mid: i32,
    rays: i32,
    spacing: i32,
}

impl Grid {
    fn new(size: i32, rays: usize) -> Grid {
        let spacing = (size / (rays as i32 + 1)).max(1);
        Grid {
            size,
            mid: size / 2,
            rays: rays as i32,
            spacing,
        }
    }

    fn ray_column(&self, j: i32) -> i32 {
        j * self.spacing
    }

    fn coarse_count(&self) -> usize {
        ((self.size + 1) * (self.size + 1)) as usize
    }

    fn coarse_id(&self, x: i32, y: i32) -> usize {
        (y * (self.size + 1) + x) as usize
    }

    fn coarse_xy(&self, id: usize) -> (i32, i32) {
        (id as i32 % (self.size + 1), id as i32 / (self.size + 1))
    }

    /// Letter read by a coarse step from (x, y) to (x+1, y): the segment
    /// spans ray j iff x is j's column, below the puncture iff y <= mid.
    fn coarse_letter(&self, x: i32, y: i32) -> Option<Letter> {
        if x % self.spacing == 0 && y <= self.mid {
            let j = x / self.spacing;
            if (1..=self.rays).contains(&j) {
                return Some(Letter::pos((j - 1) as u16));
            }
        }
        None
    }

    /// Fine vertices are (1/4 + u/2, 1/4 + v/2) for u, v in 0..2*size.
    fn fine_side(&self) -> i32 {
        2 * self.size
    }

    fn fine_count(&self) -> usize {
        (self.fine_side() * self.fine_side()) as usize
    }

    fn fine_id(&self, u: i32, v: i32) -> usize {
        (v * self.fine_side() + u) as usize
    }

    /// Letter read by the fine step east from (u, v): the segment spans
    /// ray j iff u == 2 * column(j); below the puncture iff v <= 2*mid.
    fn fine_letter_east(&self, u: i32, v: i32) -> Option<Letter> {
        if u % 2 == 0 && v <= 2 * self.mid {
            let x = u / 2;
            if x % self.spacing == 0 {
                let j = x / self.spacing;
                if (1..=self.rays).contains(&j) {
                    return Some(Letter::pos((j - 1) as u16));
                }
            }
        }
        None
    }

    /// Coarse edge crossed by the fine step east from (u, v): odd u spans
    /// the integer vertical line at (u+1)/2.
    fn fine_east_crossing(&self, u: i32, v: i32) -> Option<(usize, usize)> {
        if u % 2 == 1 {
            let c = (u + 1) / 2;
            let y = v / 2;
            Some(edge_key(self.coarse_id(c, y), self.coarse_id(c, y + 1)))
        } else {
            None
        }
    }

    /// Coarse edge crossed by the fine step north from (u, v): odd v spans
    /// the integer horizontal line at (v+1)/2.
    fn fine_north_crossing(&self, u: i32, v: i32) -> Option<(usize, usize)> {
        if v % 2 == 1 {
            let c = (v + 1) / 2;
            let x = u / 2;
            Some(edge_key(self.coarse_id(x, c), self.coarse_id(x + 1, c)))
        } else {
            None
        }
    }
}

/// A closed coarse walk: vertex ids, first == last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CoarseWalk {
    path: Vec<usize>,
    embedded: bool,
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

const DIRS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Distances in the (coarse vertex, word position) graph from one start
/// state. `word` must be read exactly; other ray crossings are forbidden.
/// With `reversed` the step consumes letters backwards, for goal distances.
fn coarse_distances(grid: &Grid, word: &[Letter], start: (usize, usize), reversed: bool) -> Vec<u32> {
    let layers = word.len() + 1;
    let idx = |v: usize, j: usize| v * layers + j;
    let mut dist = vec![u32::MAX; grid.coarse_count() * layers];
    let mut queue = VecDeque::new();
    dist[idx(start.0, start.1)] = 0;
    queue.push_back((start.0, start.1));
    while let Some((v, j)) = queue.pop_front() {
        let d = dist[idx(v, j)];
        let (x, y) = grid.coarse_xy(v);
        for (dx, dy) in DIRS {
            let (nx, ny) = (x + dx, y + dy);
            if !(0..=grid.size).contains(&nx) || !(0..=grid.size).contains(&ny) {
                continue;
            }
            let letter = if dy == 0 {
                grid.coarse_letter(x.min(nx), y)
                    .map(|l| if dx > 0 { l } else { l.inverse() })
            } else {
                None
            };
            let nj = match (letter, reversed) {
                (None, _) => j,
                (Some(l), false) => {
                    if j < word.len() && word[j] == l {
                        j + 1
                    } else {
                        continue;
                    }
                }
                (Some(l), true) => {
                    if j > 0 && word[j - 1] == l.inverse() {
                        j - 1
                    } else {
                        continue;
                    }
                }
            };
            let nv = grid.coarse_id(nx, ny);
            if dist[idx(nv, nj)] > d + 1 {
                dist[idx(nv, nj)] = d + 1;
                queue.push_back((nv, nj));
            }
        }
    }
    dist
}

/// Shortest closed coarse walks reading exactly `word`, normalized to start
/// just after their first letter crossing, plus a constructed embedded
/// realization when one exists. Embedded walks sort first.
fn coarse_realizations(grid: &Grid, word: &[Letter]) -> Vec<CoarseWalk> {
    if word.is_empty() {
        return Vec::new();
    }
    let layers = word.len() + 1;
    let idx = |v: usize, j: usize| v * layers + j;
    let first = word[0];

    let mut first_edges = Vec::new();
    for y in 0..=grid.size {
        for x in 0..grid.size {
            if let Some(l) = grid.coarse_letter(x, y) {
                let a = grid.coarse_id(x, y);
                let b = grid.coarse_id(x + 1, y);
                if l == first {
                    first_edges.push((a, b));
                } else if l.inverse() == first {
                    first_edges.push((b, a));
                }
            }
        }
    }

    let mut best_total = u32::MAX;
    let mut per_edge = Vec::new();
    for &(tail, head) in &first_edges {
        let fwd = coarse_distances(grid, word, (head, 1), false);
        let d = fwd[idx(tail, word.len())];
        if d != u32::MAX {
            best_total = best_total.min(d + 1);
        }
        per_edge.push((tail, head, fwd));
    }
    if best_total == u32::MAX {
        return Vec::new();
    }

    let mut walks: HashSet<Vec<usize>> = HashSet::new();
    let budget = best_total + LENGTH_SLACK;
    for (tail, head, fwd) in per_edge {
        let bwd = coarse_distances(grid, word, (tail, word.len()), true);
        if fwd[idx(head, 1)].saturating_add(bwd[idx(head, 1)]) + 1 > budget {
            continue;
        }
        let mut stack = vec![(head, 1usize, vec![tail, head])];
        while let Some((v, j, path)) = stack.pop() {
            if walks.len() > 2000 {
                break;
            }
            if v == tail && j == word.len() {
                let mut cycle = path.clone();
                cycle.pop();
                walks.insert(canonical_cycle(&cycle));
                continue;
            }
            let (x, y) = grid.coarse_xy(v);
            let used = (path.len() - 1) as u32;
            for (dx, dy) in DIRS {
                let (nx, ny) = (x + dx, y + dy);
                if !(0..=grid.size).contains(&nx) || !(0..=grid.size).contains(&ny) {
                    continue;
                }
                let letter = if dy == 0 {
                    grid.coarse_letter(x.min(nx), y)
                        .map(|l| if dx > 0 { l } else { l.inverse() })
                } else {
                    None
                };
                let nj = match letter {
                    None => j,
                    Some(l) => {
                        if j < word.len() && word[j] == l {
                            j + 1
                        } else {
                            continue;
                        }
                    }
                };
                let nv = grid.coarse_id(nx, ny);
                let b = bwd[idx(nv, nj)];
                if b == u32::MAX || used + 1 + b > budget {
                    continue;
                }
                let mut np = path.clone();
                np.push(nv);
                stack.push((nv, nj, np));
            }
        }
    }

    let mut out: Vec<CoarseWalk> = walks
        .into_iter()
        .map(|cycle| {
            let mut verts: Vec<usize> = cycle.clone();
            verts.sort_unstable();
            verts.dedup();
            let embedded = verts.len() == cycle.len();
            let mut path = cycle;
            path.push(path[0]);
            CoarseWalk { path, embedded }
        })
        .collect();
    if let Some(embedded) = construct_embedded(grid, word) {
        out.push(embedded);
    }
    out.sort_by(|a, b| {
        (!a.embedded, a.path.len(), &a.path).cmp(&(!b.embedded, b.path.len(), &b.path))
    });
    out.dedup();
    out.truncate(REPS_KEPT);
    out
}

/// Least rotation of a closed vertex cycle, as a dedup key.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for r in 0..n {
        let rot: Vec<usize> = (0..n).map(|i| cycle[(r + i) % n]).collect();
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Builds an embedded lattice realization of the word, when one exists.
///
/// Cutting the square along the rays leaves a disk whose boundary passes
/// both sides of every ray. A top-to-bottom order for the word's crossings
/// on each ray places the arcs between consecutive crossings as chords of
/// the disk; the curve embeds iff some order leaves the chords pairwise
/// non-crossing, and such chords route into vertex-disjoint lattice paths
/// by breadth-first search, innermost chords first.
fn construct_embedded(grid: &Grid, word: &[Letter]) -> Option<CoarseWalk> {
    let len = word.len();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); grid.rays as usize + 1];
    for (k, l) in word.iter().enumerate() {
        let j = l.gen as usize + 1;
        if j > grid.rays as usize {
            return None;
        }
        occ[j].push(k);
    }
    // the stacked crossings need headroom under the punctures
    if occ.iter().any(|o| o.len() as i32 > grid.mid - 1) {
        return None;
    }
    let mut total: usize = 1;
    for o in &occ {
        total = total.saturating_mul((1..=o.len().max(1)).product::<usize>());
        if total > ORDERING_CAP {
            return None;
        }
    }

    let perms: Vec<Vec<Vec<usize>>> = occ.iter().map(|o| permutations(o)).collect();
    let mut choice: Vec<usize> = vec![0; perms.len()];
    loop {
        // rank[k] = height rank of crossing k on its ray, 0 = highest
        let mut rank = vec![0usize; len];
        for p in 1..perms.len() {
            for (h, &k) in perms[p][choice[p]].iter().enumerate() {
                rank[k] = h;
            }
        }
        if let Some(walk) = try_route(grid, word, &occ, &rank) {
            return Some(walk);
        }
        let mut p = 1;
        loop {
            if p >= perms.len() {
                return None;
            }
            choice[p] += 1;
            if choice[p] < perms[p].len() {
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest: Vec<usize> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            let mut p = vec![x];
            p.append(&mut tail);
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum StubSide {
    Left,
    Right,
}

/// One fixed ranking: test the chords for crossings, then route.
fn try_route(
    grid: &Grid,
    word: &[Letter],
    occ: &[Vec<usize>],
    rank: &[usize],
) -> Option<CoarseWalk> {
    let len = word.len();
    // boundary order of stubs: along the cut disk boundary, up the left
    // side of each slit (low to high) and down the right side
    let mut boundary: Vec<(usize, StubSide)> = Vec::with_capacity(2 * len);
    for on_ray in occ.iter().skip(1) {
        let m = on_ray.len();
        let mut by_rank: Vec<usize> = vec![usize::MAX; m];
        for &k in on_ray {
            by_rank[rank[k]] = k;
        }
        for h in (0..m).rev() {
            boundary.push((by_rank[h], StubSide::Left));
        }
        for &k in by_rank.iter() {
            boundary.push((k, StubSide::Right));
        }
    }
    let pos: HashMap<(usize, StubSide), usize> = boundary
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();

    // arc k runs from the far side of crossing k to the near side of k+1
    let mut chords: Vec<(usize, usize)> = Vec::with_capacity(len);
    for k in 0..len {
        let start = (
            k,
            if word[k].inv {
                StubSide::Left
            } else {
                StubSide::Right
            },
        );
        let next = (k + 1) % len;
        let end = (
            next,
            if word[next].inv {
                StubSide::Right
            } else {
                StubSide::Left
            },
        );
        let (a, b) = (pos[&start], pos[&end]);
        chords.push(if a < b { (a, b) } else { (b, a) });
    }
    for i in 0..len {
        for j in 0..i {
            let (a1, a2) = chords[i];
            let (b1, b2) = chords[j];
            let inside1 = a1 < b1 && b1 < a2;
            let inside2 = a1 < b2 && b2 < a2;
            if inside1 != inside2 {
                return None;
            }
        }
    }

    // crossing edge of k: the unit edge over its ray at its ranked height
    let cross_edge = |k: usize| -> (usize, usize) {
        let j = word[k].gen as i32 + 1;
        let x = grid.ray_column(j);
        let y = grid.mid - rank[k] as i32;
        (grid.coarse_id(x, y), grid.coarse_id(x + 1, y))
    };

    // block every stub vertex; each arc sees only its own two endpoints
    let mut blocked = vec![false; grid.coarse_count()];
    for k in 0..len {
        let (a, b) = cross_edge(k);
        blocked[a] = true;
        blocked[b] = true;
    }

    let arc_endpoints = |k: usize| -> (usize, usize) {
        let (l, r) = cross_edge(k);
        let start = if word[k].inv { l } else { r };
        let next = (k + 1) % len;
        let (nl, nr) = cross_edge(next);
        let end = if word[next].inv { nr } else { nl };
        (start, end)
    };

    // route innermost chords first; on a pinch, retry with other styles
    let mut inner_first: Vec<usize> = (0..len).collect();
    inner_first.sort_by_key(|&k| chords[k].1 - chords[k].0);
    let outer_first: Vec<usize> = inner_first.iter().rev().copied().collect();

    let mut arc_paths: Vec<Vec<usize>> = vec![Vec::new(); len];
    let mut routed = false;
    'styles: for (order, clearance) in [
        (&inner_first, true),
        (&inner_first, false),
        (&outer_first, true),
        (&outer_first, false),
    ] {
        let mut attempt_blocked = blocked.clone();
        let mut attempt_paths: Vec<Vec<usize>> = vec![Vec::new(); len];
        for &k in order {
            let (start, end) = arc_endpoints(k);
            let path = match route_arc(grid, &attempt_blocked, start, end, clearance) {
                Some(p) => p,
                None => continue 'styles,
            };
            for &v in &path {
                attempt_blocked[v] = true;
            }
            attempt_paths[k] = path;
        }
        arc_paths = attempt_paths;
        routed = true;
        break;
    }
    if !routed {
        return None;
    }
    let _ = &mut blocked;

    // assemble: crossing k, then arc k, around the word
    let mut path: Vec<usize> = Vec::new();
    for k in 0..len {
        let (l, r) = cross_edge(k);
        let (entry, exit) = if word[k].inv { (r, l) } else { (l, r) };
        if path.last() != Some(&entry) {
            path.push(entry);
        }
        path.push(exit);
        let arc = &arc_paths[k];
        debug_assert_eq!(arc.first(), Some(&exit));
        path.extend_from_slice(&arc[1..]);
    }
    debug_assert_eq!(path.last(), path.first());

    // defensive re-checks: the walk must be embedded and read the word
    let mut cycle = path.clone();
    cycle.pop();
    let mut verts = cycle.clone();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != cycle.len() {
        return None;
    }
    let mut reading = Vec::new();
    for w in path.windows(2) {
        let (x1, y1) = grid.coarse_xy(w[0]);
        let (x2, _) = grid.coarse_xy(w[1]);
        if x1 != x2 {
            if let Some(l) = grid.coarse_letter(x1.min(x2), y1) {
                reading.push(if x2 > x1 { l } else { l.inverse() });
            }
        }
    }
    let is_rotation = reading.len() == word.len()
        && (0..word.len()).any(|r| (0..word.len()).all(|i| reading[i] == word[(r + i) % word.len()]));
    if !is_rotation {
        return None;
    }
    Some(CoarseWalk {
        path,
        embedded: true,
    })
}

/// Shortest path between two stubs through unblocked vertices, never
/// crossing a ray. With `clearance` the path pays extra next to blocked
/// vertices, so it does not hug earlier arcs and pinch later ones.
fn route_arc(
    grid: &Grid,
    blocked: &[bool],
    start: usize,
    end: usize,
    clearance: bool,
) -> Option<Vec<usize>> {
    let n = grid.coarse_count();
    let mut prev: Vec<usize> = vec![usize::MAX; n];
    let mut dist: Vec<u32> = vec![u32::MAX; n];
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u32, usize)>> =
        std::collections::BinaryHeap::new();
    let vertex_cost = |v: usize| -> u32 {
        if !clearance {
            return 1;
        }
        let (x, y) = grid.coarse_xy(v);
        let mut crowd = 0;
        for (dx, dy) in DIRS {
            let (nx, ny) = (x + dx, y + dy);
            if (0..=grid.size).contains(&nx) && (0..=grid.size).contains(&ny) {
                if blocked[grid.coarse_id(nx, ny)] {
                    crowd += 1;
                }
            } else {
                crowd += 1;
            }
        }
        1 + 3 * crowd
    };
    dist[start] = 0;
    prev[start] = start;
    heap.push(std::cmp::Reverse((0, start)));
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        if v == end {
            break;
        }
        let (x, y) = grid.coarse_xy(v);
        for (dx, dy) in DIRS {
            let (nx, ny) = (x + dx, y + dy);
            if !(0..=grid.size).contains(&nx) || !(0..=grid.size).contains(&ny) {
                continue;
            }
            // arcs never cross rays
            if dy == 0 && grid.coarse_letter(x.min(nx), y).is_some() {
                continue;
            }
            let nv = grid.coarse_id(nx, ny);
            if nv != end && blocked[nv] {
                continue;
            }
            let nd = d + vertex_cost(nv);
            if nd < dist[nv] {
                dist[nv] = nd;
                prev[nv] = v;
                heap.push(std::cmp::Reverse((nd, nv)));
            }
        }
    }
    if prev[end] == usize::MAX {
        return None;
    }
    let mut path = vec![end];
    let mut v = end;
    while v != start {
        v = prev[v];
        path.push(v);
    }
    path.reverse();
    Some(path)
}

/// Exact minimum crossing count over all fine closed walks reading `word`,
/// against a fixed coarse walk: 0/1 shortest-cycle search over
/// (fine vertex, word position), normalized to start just after the first
/// letter crossing. Crossing weights carry edge multiplicities.
fn fine_min_crossings(
    grid: &Grid,
    word: &[Letter],
    coarse_edges: &HashMap<(usize, usize), u32>,
) -> Option<u32> {
    if word.is_empty() {
        return None;
    }
    let layers = word.len() + 1;
    let idx = |v: usize, j: usize| v * layers + j;
    let side = grid.fine_side();
    let first = word[0];

    let step = |u: i32, v: i32, dx: i32, dy: i32| -> (Option<Letter>, u32) {
        if dy == 0 {
            let lu = u.min(u + dx);
            let letter = grid
                .fine_letter_east(lu, v)
                .map(|l| if dx > 0 { l } else { l.inverse() });
            let w = grid
                .fine_east_crossing(lu, v)
                .and_then(|e| coarse_edges.get(&e).copied())
                .unwrap_or(0);
            (letter, w)
        } else {
            let lv = v.min(v + dy);
            let w = grid
                .fine_north_crossing(u, lv)
                .and_then(|e| coarse_edges.get(&e).copied())
                .unwrap_or(0);
            (None, w)
        }
    };

    let mut first_edges = Vec::new();
    for v in 0..side {
        for u in 0..side - 1 {
            if let Some(l) = grid.fine_letter_east(u, v) {
                let a = grid.fine_id(u, v);
                let b = grid.fine_id(u + 1, v);
                let (_, w) = step(u, v, 1, 0);
                if l == first {
                    first_edges.push((a, b, w));
                } else if l.inverse() == first {
                    first_edges.push((b, a, w));
                }
            }
        }
    }

    let mut best: Option<u32> = None;
    let mut dist = vec![u32::MAX; grid.fine_count() * layers];
    for &(tail, head, w0) in &first_edges {
        if let Some(b) = best {
            if w0 >= b {
                continue;
            }
        }
        dist.fill(u32::MAX);
        let mut deque: VecDeque<(usize, usize)> = VecDeque::new();
        dist[idx(head, 1)] = w0;
        deque.push_back((head, 1));
        while let Some((v, j)) = deque.pop_front() {
            let d = dist[idx(v, j)];
            if let Some(b) = best {
                if d >= b {
                    continue;
                }
            }
            let u = v as i32 % side;
            let vv = v as i32 / side;
            for (dx, dy) in DIRS {
                let (nu, nv) = (u + dx, vv + dy);
                if !(0..side).contains(&nu) || !(0..side).contains(&nv) {
                    continue;
                }
                let (letter, w) = step(u, vv, dx, dy);
                let nj = match letter {
                    None => j,
                    Some(l) => {
                        if j < word.len() && word[j] == l {
                            j + 1
                        } else {
                            continue;
                        }
                    }
                };
                let nid = grid.fine_id(nu, nv);
                if dist[idx(nid, nj)] > d + w {
                    dist[idx(nid, nj)] = d + w;
                    if w == 0 {
                        deque.push_front((nid, nj));
                    } else {
                        deque.push_back((nid, nj));
                    }
                }
            }
        }
        let goal = dist[idx(tail, word.len())];
        if goal != u32::MAX && best.is_none_or(|b| goal < b) {
            best = Some(goal);
            if goal == 0 {
                break;
            }
        }
    }
    best
}

fn walk_edge_multiset(walk: &CoarseWalk) -> HashMap<(usize, usize), u32> {
    let mut out = HashMap::new();
    for w in walk.path.windows(2) {
        *out.entry(edge_key(w[0], w[1])).or_insert(0) += 1;
    }
    out
}

/// One fixed-grid evaluation: fix realizations of each class in turn
/// (embedded ones first) and minimize fine crossings of the partner class
/// against them.
pub fn grid_oracle_intersection(
    m: &SurfaceModel,
    c1: &CurveClass,
    c2: &CurveClass,
    gridsize: usize,
) -> Result<OracleOutcome, CurveError> {
    if m.genus() != 0 {
        return Err(CurveError::OracleNeedsPlanar);
    }
    let grid = Grid::new(gridsize as i32, m.rank());
    let mut best: Option<u32> = None;
    for (fixed, moving) in [(c1, c2), (c2, c1)] {
        let reps = coarse_realizations(&grid, fixed.letters());
        for rep in &reps {
            let edges = walk_edge_multiset(rep);
            if let Some(v) = fine_min_crossings(&grid, moving.letters(), &edges) {
                if best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
                if best == Some(0) {
                    return Ok(OracleOutcome::Value(0));
                }
            }
        }
    }
    Ok(match best {
        Some(v) => OracleOutcome::Value(v),
        None => OracleOutcome::Inconclusive,
    })
}

/// Grid sizes giving puncture spacings 2, 3, ... on this model.
pub fn sweep_sizes(m: &SurfaceModel) -> Vec<usize> {
    (2..=7).map(|s| s * (m.rank() + 1) + 2).collect()
}

/// Sweeps grid resolutions and reports the first value on which two
/// successive sizes agree. `None` means the sweep never stabilized.
pub fn stabilized_intersection(
    m: &SurfaceModel,
    c1: &CurveClass,
    c2: &CurveClass,
) -> Result<Option<u32>, CurveError> {
    let mut previous: Option<u32> = None;
    for size in sweep_sizes(m) {
        let outcome = grid_oracle_intersection(m, c1, c2, size)?;
        match outcome {
            OracleOutcome::Value(v) => {
                if previous == Some(v) {
                    return Ok(Some(v));
                }
                previous = Some(v);
            }
            OracleOutcome::Inconclusive => {
                previous = None;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::parse_class;

    fn model(n: u32) -> SurfaceModel {
        SurfaceModel::new(0, n).unwrap()
    }

    #[test]
    fn disjoint_blocks_are_disjoint() {
        let m = model(5);
        let c1 = parse_class(&m, "x1 x2").unwrap();
        let c2 = parse_class(&m, "x3 x4").unwrap();
        assert_eq!(
            grid_oracle_intersection(&m, &c1, &c2, 12).unwrap(),
            OracleOutcome::Value(0)
        );
    }

    #[test]
    fn overlapping_blocks_stabilize_to_two() {
        let m = model(4);
        let c1 = parse_class(&m, "x1 x2").unwrap();
        let c2 = parse_class(&m, "x2 x3").unwrap();
        assert_eq!(stabilized_intersection(&m, &c1, &c2).unwrap(), Some(2));
    }

    #[test]
    fn class_against_itself() {
        let m = model(4);
        for word in ["x1", "x1 x2", "x1 x2 x1^-1 x3"] {
            let c = parse_class(&m, word).unwrap();
            assert_eq!(
                stabilized_intersection(&m, &c, &c).unwrap(),
                Some(0),
                "{word}"
            );
        }
    }

    #[test]
    fn nested_classes_are_disjoint() {
        let m = model(4);
        let c1 = parse_class(&m, "x1").unwrap();
        let c2 = parse_class(&m, "x1 x2").unwrap();
        assert_eq!(stabilized_intersection(&m, &c1, &c2).unwrap(), Some(0));
    }

    #[test]
    fn rejects_positive_genus() {
        let m = SurfaceModel::new(1, 1).unwrap();
        let c = parse_class(&m, "a1").unwrap();
        assert!(matches!(
            grid_oracle_intersection(&m, &c, &c, 7),
            Err(CurveError::OracleNeedsPlanar)
        ));
    }
}

