//! Undirected graphs and trees with 1-based vertex labels: validation,
//! diameter, the special-path construction, path cover number with a
//! brute-force oracle, disjoint-path coverage maxima, and generators for the
//! named tree and graph families.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use rand_core::RngCore;

use crate::rngutil::{rng_index, rng_range};

/// Size cap for exhaustive path-cover and coverage searches.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 14;
/// Hard ceiling for subset-mask searches regardless of configured caps.
const MASK_CEILING: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    InvalidVertex { v: u32, n: usize },
    SelfLoop(u32),
    NotATree,
    Disconnected,
    SizeCapExceeded { n: usize, cap: usize },
    InvalidPath(String),
    BadParams(String),
    /// The Figure-14 construction requires a unique shortest path between
    /// each anchor pair avoiding the third anchor.
    AnchorCondition(String),
    Parse(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidVertex { v, n } => write!(f, "vertex {v} out of range 1..={n}"),
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::NotATree => write!(f, "graph is not a tree"),
            GraphError::Disconnected => write!(f, "graph is disconnected"),
            GraphError::SizeCapExceeded { n, cap } => {
                write!(f, "size {n} exceeds brute-force cap {cap}")
            }
            GraphError::InvalidPath(s) => write!(f, "invalid path family: {s}"),
            GraphError::BadParams(s) => write!(f, "invalid parameters: {s}"),
            GraphError::AnchorCondition(s) => write!(f, "anchor condition unsatisfied: {s}"),
            GraphError::Parse(s) => write!(f, "invalid graph: {s}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Undirected simple graph on vertices 1..=n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w == 0 || w as usize > n {
                    return Err(GraphError::InvalidVertex { v: w, n });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[(u - 1) as usize].push(v);
            adj[(v - 1) as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: set, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        1..=self.n as u32
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[(v - 1) as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: u32) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[(src - 1) as usize] = Some(0);
        let mut queue = VecDequeLite::new();
        queue.push(src);
        while let Some(v) = queue.pop() {
            let dv = dist[(v - 1) as usize].unwrap();
            for &w in self.neighbors(v) {
                if dist[(w - 1) as usize].is_none() {
                    dist[(w - 1) as usize] = Some(dv + 1);
                    queue.push(w);
                }
            }
        }
        dist
    }

    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDequeLite::new();
            queue.push(start);
            seen[(start - 1) as usize] = true;
            while let Some(v) = queue.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[(w - 1) as usize] {
                        seen[(w - 1) as usize] = true;
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.connected_components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edges.len() == self.n - 1
    }

    /// Max over vertex pairs of the shortest-path edge count.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        if self.n == 0 || !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut best = 0;
        for v in self.vertices() {
            for d in self.bfs_distances(v).iter().flatten() {
                best = best.max(*d);
            }
        }
        Ok(best)
    }

    /// Induced subgraph on `keep`, relabeled 1..=|keep|; the mapping from new
    /// label i+1 back to the original label is returned alongside.
    pub fn induced(&self, keep: &BTreeSet<u32>) -> Result<(Graph, Vec<u32>), GraphError> {
        for &v in keep {
            if v == 0 || v as usize > self.n {
                return Err(GraphError::InvalidVertex { v, n: self.n });
            }
        }
        let labels: Vec<u32> = keep.iter().copied().collect();
        let index: BTreeMap<u32, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, (i + 1) as u32))
            .collect();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(&nu), Some(&nv)) = (index.get(&u), index.get(&v)) {
                edges.push((nu, nv));
            }
        }
        Ok((Graph::new(labels.len(), edges)?, labels))
    }

    /// Graph file format: first line `n`, one `u v` edge per line, `#`
    /// comments allowed.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::Parse(String::from("empty input")))?
            .parse()
            .map_err(|_| GraphError::Parse(String::from("first line must be the vertex count")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("bad edge line: {line}")));
            }
            edges.push((u, v));
        }
        Graph::new(n, edges)
    }
}

/// Minimal FIFO queue over a Vec (alloc has VecDeque, but indices suffice).
struct VecDequeLite {
    items: Vec<u32>,
    head: usize,
}

impl VecDequeLite {
    fn new() -> Self {
        VecDequeLite {
            items: Vec::new(),
            head: 0,
        }
    }

    fn push(&mut self, v: u32) {
        self.items.push(v);
    }

    fn pop(&mut self) -> Option<u32> {
        let v = self.items.get(self.head).copied();
        if v.is_some() {
            self.head += 1;
        }
        v
    }
}

/// A connected acyclic graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tree(Graph);

impl Tree {
    pub fn new(g: Graph) -> Result<Self, GraphError> {
        if g.is_tree() {
            Ok(Tree(g))
        } else {
            Err(GraphError::NotATree)
        }
    }

    pub fn as_graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    /// The unique path between two vertices.
    pub fn path_between(&self, u: u32, v: u32) -> Vec<u32> {
        let mut parent = vec![0u32; self.0.n + 1];
        let mut queue = VecDequeLite::new();
        queue.push(u);
        parent[u as usize] = u;
        while let Some(x) = queue.pop() {
            if x == v {
                break;
            }
            for &w in self.0.neighbors(x) {
                if parent[w as usize] == 0 {
                    parent[w as usize] = x;
                    queue.push(w);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur as usize];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

impl core::ops::Deref for Tree {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.0
    }
}

/// Pairwise vertex-disjoint paths in some host graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathFamily {
    paths: Vec<Vec<u32>>,
}

impl PathFamily {
    /// Validates each sequence as a path of `host` and the family as
    /// pairwise disjoint.
    pub fn new(host: &Graph, paths: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for path in &paths {
            if path.is_empty() {
                return Err(GraphError::InvalidPath(String::from("empty path")));
            }
            for &v in path {
                if v == 0 || v as usize > host.n() {
                    return Err(GraphError::InvalidVertex { v, n: host.n() });
                }
                if !seen.insert(v) {
                    return Err(GraphError::InvalidPath(format!("vertex {v} repeated")));
                }
            }
            for w in path.windows(2) {
                if !host.has_edge(w[0], w[1]) {
                    return Err(GraphError::InvalidPath(format!(
                        "{} and {} are not adjacent",
                        w[0], w[1]
                    )));
                }
            }
        }
        Ok(PathFamily { paths })
    }

    pub fn paths(&self) -> &[Vec<u32>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn covered(&self) -> BTreeSet<u32> {
        self.paths.iter().flatten().copied().collect()
    }
}

// ---------------------------------------------------------------------------
// Special paths and path covers
// ---------------------------------------------------------------------------

fn alive_degree(g: &Graph, alive: &[bool], v: u32) -> usize {
    g.neighbors(v).iter().filter(|&&w| alive[w as usize]).count()
}

fn alive_vertices(alive: &[bool]) -> impl Iterator<Item = u32> + '_ {
    alive
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &a)| a)
        .map(|(i, _)| i as u32)
}

/// BFS within the alive set; returns (farthest vertex, parent array).
fn bfs_alive(g: &Graph, alive: &[bool], src: u32) -> (u32, Vec<u32>) {
    let mut parent = vec![0u32; g.n() + 1];
    let mut dist = vec![usize::MAX; g.n() + 1];
    parent[src as usize] = src;
    dist[src as usize] = 0;
    let mut queue = VecDequeLite::new();
    queue.push(src);
    let mut far = src;
    while let Some(v) = queue.pop() {
        if dist[v as usize] > dist[far as usize] {
            far = v;
        }
        for &w in g.neighbors(v) {
            if alive[w as usize] && dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                parent[w as usize] = v;
                queue.push(w);
            }
        }
    }
    (far, parent)
}

/// Longest path of the alive induced subtree, via double BFS.
fn longest_path_alive(g: &Graph, alive: &[bool]) -> Vec<u32> {
    let start = alive_vertices(alive).next().expect("nonempty");
    let (a, _) = bfs_alive(g, alive, start);
    let (b, parent) = bfs_alive(g, alive, a);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur as usize];
        path.push(cur);
    }
    path.reverse();
    path
}

/// If every alive vertex has alive-degree <= 2 the induced subtree is a bare
/// path; returns it in end-to-end order.
fn try_extract_path(g: &Graph, alive: &[bool], count: usize) -> Option<Vec<u32>> {
    let mut endpoint = None;
    for v in alive_vertices(alive) {
        match alive_degree(g, alive, v) {
            0 | 1 => endpoint = endpoint.or(Some(v)),
            2 => {}
            _ => return None,
        }
    }
    let start = endpoint?;
    let mut path = vec![start];
    let mut prev = 0u32;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| alive[w as usize] && w != prev);
        match next {
            Some(w) => {
                path.push(w);
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    if path.len() == count {
        Some(path)
    } else {
        None
    }
}

fn special_path_rec(g: &Graph, alive: &mut [bool], count: usize) -> Vec<u32> {
    if count == 1 {
        return vec![alive_vertices(alive).next().expect("nonempty")];
    }
    if let Some(path) = try_extract_path(g, alive, count) {
        return path;
    }
    // longest path u - v - a1 - ...; u is pendant; recurse on the tree
    // minus u and reattach by the three cases of the inductive argument
    let longest = longest_path_alive(g, alive);
    let (u, v, a1) = (longest[0], longest[1], longest[2]);
    alive[u as usize] = false;
    let inner = special_path_rec(g, alive, count - 1);
    alive[u as usize] = true;
    if !inner.contains(&v) {
        return inner;
    }
    if inner[0] == v {
        let mut path = vec![u];
        path.extend(inner);
        return path;
    }
    if *inner.last().unwrap() == v {
        let mut path = inner;
        path.push(u);
        path.reverse();
        return path;
    }
    // v is interior to the inner path: any other alive neighbor of v is
    // pendant, else the longest path could be extended
    let w = g
        .neighbors(v)
        .iter()
        .copied()
        .find(|&w| alive[w as usize] && w != u && w != a1)
        .expect("interior v has a third neighbor");
    debug_assert_eq!(alive_degree(g, alive, w), 1);
    vec![u, v, w]
}

/// A path whose ends are pendant vertices of the tree with at most one path
/// vertex of degree 3 or more (the whole tree when it is a bare path).
pub fn find_special_path(t: &Tree) -> Vec<u32> {
    let mut alive = vec![false; t.n() + 1];
    for v in t.vertices() {
        alive[v as usize] = true;
    }
    special_path_rec(t.as_graph(), &mut alive, t.n())
}

/// Path cover number with a witness family: repeatedly extract a special
/// path and recurse on each remaining component.
pub fn path_cover_number(t: &Tree) -> (usize, PathFamily) {
    let g = t.as_graph();
    let mut paths: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<BTreeSet<u32>> = vec![t.vertices().collect()];
    let mut alive = vec![false; g.n() + 1];
    while let Some(comp) = stack.pop() {
        for flag in alive.iter_mut() {
            *flag = false;
        }
        for &v in &comp {
            alive[v as usize] = true;
        }
        let path = special_path_rec(g, &mut alive, comp.len());
        let mut rest = comp;
        for &v in &path {
            rest.remove(&v);
            alive[v as usize] = false;
        }
        paths.push(path);
        // split the remainder into connected components
        while let Some(&seed) = rest.iter().next() {
            let mut comp2 = BTreeSet::new();
            let mut queue = VecDequeLite::new();
            queue.push(seed);
            rest.remove(&seed);
            comp2.insert(seed);
            while let Some(v) = queue.pop() {
                for &w in g.neighbors(v) {
                    if rest.remove(&w) {
                        comp2.insert(w);
                        queue.push(w);
                    }
                }
            }
            stack.push(comp2);
        }
    }
    let family = PathFamily::new(g, paths).expect("constructed family is valid");
    (family.len(), family)
}

/// All tree paths as vertex bitmasks, with endpoints, 0-based bit v-1.
fn all_path_masks(t: &Tree) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in t.vertices() {
        for b in t.vertices() {
            if a > b {
                continue;
            }
            let mut mask = 0u32;
            for &v in &t.path_between(a, b) {
                mask |= 1 << (v - 1);
            }
            out.push((mask, a, b));
        }
    }
    out
}

fn check_mask_cap(n: usize, cap: usize) -> Result<(), GraphError> {
    if n > cap || n > MASK_CEILING {
        return Err(GraphError::SizeCapExceeded {
            n,
            cap: cap.min(MASK_CEILING),
        });
    }
    Ok(())
}

/// Exact minimum number of disjoint paths covering all vertices, by
/// exhaustive subset search. Independent oracle for `path_cover_number`.
pub fn path_cover_number_bruteforce(t: &Tree, cap: usize) -> Result<usize, GraphError> {
    check_mask_cap(t.n(), cap)?;
    let paths = all_path_masks(t);
    let full: u32 = if t.n() == 32 { u32::MAX } else { (1 << t.n()) - 1 };
    let mut memo: BTreeMap<u32, usize> = BTreeMap::new();
    fn go(mask: u32, paths: &[(u32, u32, u32)], memo: &mut BTreeMap<u32, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let low = mask & mask.wrapping_neg();
        let mut best = usize::MAX;
        for &(pm, _, _) in paths {
            if pm & low != 0 && pm & !mask == 0 {
                best = best.min(1 + go(mask & !pm, paths, memo));
            }
        }
        memo.insert(mask, best);
        best
    }
    Ok(go(full, &paths, &mut memo))
}

/// Maximum number of vertices coverable by `k` disjoint paths, with a
/// witness family. Exhaustive subset search with memoization.
pub fn max_coverage_by_k_paths(
    t: &Tree,
    k: usize,
    cap: usize,
) -> Result<(usize, PathFamily), GraphError> {
    if k == 0 {
        return Ok((0, PathFamily::new(t.as_graph(), Vec::new())?));
    }
    check_mask_cap(t.n(), cap)?;
    let paths = all_path_masks(t);
    let full: u32 = if t.n() == 32 { u32::MAX } else { (1 << t.n()) - 1 };
    let mut memo: BTreeMap<(u32, usize), usize> = BTreeMap::new();

    fn go(
        mask: u32,
        j: usize,
        paths: &[(u32, u32, u32)],
        memo: &mut BTreeMap<(u32, usize), usize>,
    ) -> usize {
        if mask == 0 || j == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(mask, j)) {
            return v;
        }
        let low = mask & mask.wrapping_neg();
        // leave the lowest vertex uncovered, or cover it by some path
        let mut best = go(mask & !low, j, paths, memo);
        for &(pm, _, _) in paths {
            if pm & low != 0 && pm & !mask == 0 {
                best = best.max(pm.count_ones() as usize + go(mask & !pm, j - 1, paths, memo));
            }
        }
        memo.insert((mask, j), best);
        best
    }

    let best = go(full, k, &paths, &mut memo);
    // replay the optimum to reconstruct a witness
    let mut witness: Vec<Vec<u32>> = Vec::new();
    let mut mask = full;
    let mut j = k;
    while mask != 0 && j != 0 && go(mask, j, &paths, &mut memo) != 0 {
        let target = go(mask, j, &paths, &mut memo);
        let low = mask & mask.wrapping_neg();
        if go(mask & !low, j, &paths, &mut memo) == target {
            mask &= !low;
            continue;
        }
        let mut advanced = false;
        for &(pm, a, b) in &paths {
            if pm & low != 0
                && pm & !mask == 0
                && pm.count_ones() as usize + go(mask & !pm, j - 1, &paths, &mut memo) == target
            {
                witness.push(t.path_between(a, b));
                mask &= !pm;
                j -= 1;
                advanced = true;
                break;
            }
        }
        assert!(advanced, "witness replay must follow the memoized optimum");
    }
    let family = PathFamily::new(t.as_graph(), witness)?;
    Ok((best, family))
}

/// Rooted-tree DP for the same maximum, usable beyond the exhaustive cap.
/// No witness; must agree with `max_coverage_by_k_paths` wherever both run.
pub fn max_coverage_dp(t: &Tree, k: usize) -> usize {
    if k == 0 || t.n() == 0 {
        return 0;
    }
    // states per vertex: 0 = uncovered, 1 = covered with no path edge into
    // the subtree yet, 2 = one path edge below, 3 = two (path closed at v)
    // dp[j][s] = max covered vertices using j paths in the subtree
    fn solve(g: &Graph, v: u32, parent: u32, k: usize) -> Vec<[Option<usize>; 4]> {
        let mut cur: Vec<[Option<usize>; 4]> = vec![[None; 4]; k + 1];
        cur[0][0] = Some(0);
        if k >= 1 {
            cur[1][1] = Some(1);
        }
        for &c in g.neighbors(v) {
            if c == parent {
                continue;
            }
            let child = solve(g, c, v, k);
            let mut next: Vec<[Option<usize>; 4]> = vec![[None; 4]; k + 1];
            for (j1, states) in cur.iter().enumerate() {
                for (s1, val) in states.iter().enumerate() {
                    let Some(c1) = *val else { continue };
                    for (j2, cstates) in child.iter().enumerate() {
                        for (s2, cval) in cstates.iter().enumerate() {
                            let Some(c2) = *cval else { continue };
                            // child subtree kept separate
                            if j1 + j2 <= k {
                                let slot = &mut next[j1 + j2][s1];
                                *slot = Some(slot.map_or(c1 + c2, |x| x.max(c1 + c2)));
                            }
                            // join the child's path end to v
                            if (s1 == 1 || s1 == 2)
                                && (s2 == 1 || s2 == 2)
                                && j1 + j2 >= 1
                                && j1 + j2 - 1 <= k
                            {
                                let slot = &mut next[j1 + j2 - 1][s1 + 1];
                                *slot = Some(slot.map_or(c1 + c2, |x| x.max(c1 + c2)));
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        cur
    }
    let table = solve(t.as_graph(), 1, 0, k);
    let mut best = 0;
    for states in &table {
        for val in states.iter().flatten() {
            best = best.max(*val);
        }
    }
    best
}

/// Induced subgraph on the vertices not covered by the family (a forest when
/// the host is a tree), relabeled, with the label map returned.
pub fn delete_paths(t: &Tree, f: &PathFamily) -> Result<(Graph, Vec<u32>), GraphError> {
    // revalidate against this host
    let f = PathFamily::new(t.as_graph(), f.paths().to_vec())?;
    let covered = f.covered();
    let keep: BTreeSet<u32> = t.vertices().filter(|v| !covered.contains(v)).collect();
    t.as_graph().induced(&keep)
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A (k,l)-whirl with its labeling data: axis vertex, spoke vertices, and the
/// 2k legs (each a list of vertex labels from the spoke outward).
#[derive(Clone, Debug)]
pub struct Whirl {
    pub tree: Tree,
    pub k: usize,
    pub ell: usize,
    pub axis: u32,
    pub spokes: Vec<u32>,
    /// `legs[2*i]` and `legs[2*i+1]` hang from `spokes[i]`.
    pub legs: Vec<Vec<u32>>,
}

impl Whirl {
    /// Number of vertices: 2*k*l + k + 1.
    pub fn vertex_count(k: usize, ell: usize) -> usize {
        2 * k * ell + k + 1
    }

    /// Legs attached to spoke index i (0-based).
    pub fn legs_of_spoke(&self, i: usize) -> (&[u32], &[u32]) {
        (&self.legs[2 * i], &self.legs[2 * i + 1])
    }

    /// Detects whirl structure on an arbitrary labeling; the axis is the
    /// vertex whose neighbors all carry exactly two equal-length pendant
    /// chains.
    pub fn detect(g: &Graph) -> Option<Whirl> {
        if !g.is_tree() {
            return None;
        }
        'axis: for axis in g.vertices() {
            let k = g.degree(axis);
            if k < 2 {
                continue;
            }
            let spokes: Vec<u32> = g.neighbors(axis).to_vec();
            let mut legs: Vec<Vec<u32>> = Vec::new();
            let mut ell: Option<usize> = None;
            for &s in &spokes {
                if g.degree(s) != 3 {
                    continue 'axis;
                }
                let mut spoke_legs: Vec<Vec<u32>> = Vec::new();
                for &first in g.neighbors(s) {
                    if first == axis {
                        continue;
                    }
                    let mut leg = vec![first];
                    let mut prev = s;
                    let mut cur = first;
                    loop {
                        let nexts: Vec<u32> = g
                            .neighbors(cur)
                            .iter()
                            .copied()
                            .filter(|&w| w != prev)
                            .collect();
                        match nexts.len() {
                            0 => break,
                            1 => {
                                prev = cur;
                                cur = nexts[0];
                                leg.push(cur);
                            }
                            _ => continue 'axis,
                        }
                    }
                    match ell {
                        None => ell = Some(leg.len()),
                        Some(l) if l == leg.len() => {}
                        _ => continue 'axis,
                    }
                    spoke_legs.push(leg);
                }
                spoke_legs.sort();
                legs.extend(spoke_legs);
            }
            let ell = ell?;
            if g.n() != Whirl::vertex_count(k, ell) {
                continue;
            }
            return Some(Whirl {
                tree: Tree::new(g.clone()).ok()?,
                k,
                ell,
                axis,
                spokes,
                legs,
            });
        }
        None
    }
}

/// The (k,l)-whirl on 2kl+k+1 vertices: axis vertex 1, spokes 2..=k+1, leg
/// vertices numbered breadth-first (all depth-1 vertices, then depth-2, ...).
pub fn whirl(k: usize, ell: usize) -> Result<Whirl, GraphError> {
    if k < 2 || ell < 1 {
        return Err(GraphError::BadParams(format!(
            "whirl requires k >= 2 and l >= 1, got k={k}, l={ell}"
        )));
    }
    let n = Whirl::vertex_count(k, ell);
    let axis = 1u32;
    let spokes: Vec<u32> = (2..=(k + 1) as u32).collect();
    let id = |i: usize, j: usize, d: usize| -> u32 {
        // spoke i in 1..=k, leg j in 1..=2, depth d in 1..=l
        ((k + 1) + (d - 1) * 2 * k + (i - 1) * 2 + j) as u32
    };
    let mut edges = Vec::new();
    for (i, &s) in spokes.iter().enumerate() {
        edges.push((axis, s));
        for j in 1..=2 {
            edges.push((s, id(i + 1, j, 1)));
            for d in 1..ell {
                edges.push((id(i + 1, j, d), id(i + 1, j, d + 1)));
            }
        }
    }
    let tree = Tree::new(Graph::new(n, edges)?)?;
    let mut legs = Vec::new();
    for i in 1..=k {
        for j in 1..=2 {
            legs.push((1..=ell).map(|d| id(i, j, d)).collect());
        }
    }
    Ok(Whirl {
        tree,
        k,
        ell,
        axis,
        spokes,
        legs,
    })
}

/// The 10-vertex tree of the worked counterexample (a (3,1)-whirl with axis
/// 6 and spokes 1, 2, 3).
pub fn figure2_tree() -> Tree {
    let edges = [
        (1, 4),
        (1, 5),
        (1, 6),
        (2, 6),
        (2, 7),
        (2, 8),
        (3, 6),
        (3, 9),
        (3, 10),
    ];
    Tree::new(Graph::new(10, edges).expect("valid")).expect("tree")
}

/// The 10-vertex caterpillar used for the path-cover walkthrough.
pub fn figure6_tree() -> Tree {
    let edges = [
        (3, 1),
        (1, 4),
        (1, 6),
        (6, 5),
        (6, 7),
        (7, 8),
        (7, 2),
        (2, 9),
        (2, 10),
    ];
    Tree::new(Graph::new(10, edges).expect("valid")).expect("tree")
}

/// A connected graph H with three anchors, each carrying two pendant legs of
/// l vertices.
#[derive(Clone, Debug)]
pub struct Figure14 {
    pub graph: Graph,
    /// |V(H)|
    pub m: usize,
    pub ell: usize,
    pub anchors: [u32; 3],
    /// `legs[0..2]` at `anchors[0]`, `legs[2..4]` at `anchors[1]`,
    /// `legs[4..6]` at `anchors[2]`; each runs from the anchor side outward.
    pub legs: [Vec<u32>; 6],
    /// pendant end of `legs[0]`, `legs[2]`, `legs[4]`
    pub pendant_i: [u32; 3],
    /// pendant end of `legs[1]`, `legs[3]`, `legs[5]`
    pub pendant_j: [u32; 3],
}

/// Number of shortest paths from src to dst inside the graph minus one
/// excluded vertex; `None` when unreachable.
fn shortest_path_count(g: &Graph, src: u32, dst: u32, excluded: u32) -> Option<u64> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n + 1];
    let mut count = vec![0u64; n + 1];
    dist[src as usize] = 0;
    count[src as usize] = 1;
    let mut queue = VecDequeLite::new();
    queue.push(src);
    while let Some(v) = queue.pop() {
        for &w in g.neighbors(v) {
            if w == excluded {
                continue;
            }
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                count[w as usize] = count[v as usize];
                queue.push(w);
            } else if dist[w as usize] == dist[v as usize] + 1 {
                count[w as usize] += count[v as usize];
            }
        }
    }
    if dist[dst as usize] == usize::MAX {
        None
    } else {
        Some(count[dst as usize])
    }
}

/// Builds the legged graph from a host H and three anchors, validating that
/// for every anchor pair a unique shortest path avoiding the third exists.
pub fn figure14_graph(
    h: &Graph,
    anchors: (u32, u32, u32),
    ell: usize,
) -> Result<Figure14, GraphError> {
    let m = h.n();
    let a = [anchors.0, anchors.1, anchors.2];
    if a[0] == a[1] || a[0] == a[2] || a[1] == a[2] {
        return Err(GraphError::BadParams(String::from("anchors must be distinct")));
    }
    for &v in &a {
        if v == 0 || v as usize > m {
            return Err(GraphError::InvalidVertex { v, n: m });
        }
    }
    if ell < 1 {
        return Err(GraphError::BadParams(String::from("l must be at least 1")));
    }
    if !h.is_connected() {
        return Err(GraphError::Disconnected);
    }
    for k in 0..3 {
        let (s, t) = match k {
            0 => (a[1], a[2]),
            1 => (a[0], a[2]),
            _ => (a[0], a[1]),
        };
        match shortest_path_count(h, s, t, a[k]) {
            Some(1) => {}
            Some(c) => {
                return Err(GraphError::AnchorCondition(format!(
                    "{c} shortest paths from {s} to {t} avoiding {}",
                    a[k]
                )))
            }
            None => {
                return Err(GraphError::AnchorCondition(format!(
                    "no path from {s} to {t} avoiding {}",
                    a[k]
                )))
            }
        }
    }
    let n = m + 6 * ell;
    let mut edges: Vec<(u32, u32)> = h.edges().iter().copied().collect();
    let mut legs: [Vec<u32>; 6] = Default::default();
    for (t, leg) in legs.iter_mut().enumerate() {
        let anchor = a[t / 2];
        let base = (m + t * ell) as u32;
        *leg = (1..=ell as u32).map(|d| base + d).collect();
        edges.push((anchor, leg[0]));
        for d in 1..ell {
            edges.push((leg[d - 1], leg[d]));
        }
    }
    let graph = Graph::new(n, edges)?;
    let pendant_i = [
        *legs[0].last().unwrap(),
        *legs[2].last().unwrap(),
        *legs[4].last().unwrap(),
    ];
    let pendant_j = [
        *legs[1].last().unwrap(),
        *legs[3].last().unwrap(),
        *legs[5].last().unwrap(),
    ];
    Ok(Figure14 {
        graph,
        m,
        ell,
        anchors: a,
        legs,
        pendant_i,
        pendant_j,
    })
}

/// Cycle graph on n vertices (handy host for the legged construction).
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::BadParams(String::from("cycle needs n >= 3")));
    }
    let mut edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v, v + 1)).collect();
    edges.push((n as u32, 1));
    Graph::new(n, edges)
}

/// Path graph on n vertices.
pub fn path_graph(n: usize) -> Result<Tree, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParams(String::from("path needs n >= 1")));
    }
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|v| (v, v + 1)).collect();
    Tree::new(Graph::new(n, edges)?)
}

/// Star K_{1,n-1} centered at vertex 1.
pub fn star_graph(n: usize) -> Result<Tree, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParams(String::from("star needs n >= 1")));
    }
    let edges: Vec<(u32, u32)> = (2..=n as u32).map(|v| (1, v)).collect();
    Tree::new(Graph::new(n, edges)?)
}

// ---------------------------------------------------------------------------
// Random trees (Pruefer) and random path families
// ---------------------------------------------------------------------------

/// Uniform random labeled tree via a Pruefer sequence.
pub fn random_tree(n: usize, rng: &mut dyn RngCore) -> Tree {
    assert!(n >= 1);
    if n == 1 {
        return Tree::new(Graph::new(1, []).unwrap()).unwrap();
    }
    if n == 2 {
        return Tree::new(Graph::new(2, [(1, 2)]).unwrap()).unwrap();
    }
    let seq: Vec<u32> = (0..n - 2)
        .map(|_| rng_range(rng, 1, n as i64) as u32)
        .collect();
    let mut degree = vec![1usize; n + 1];
    for &s in &seq {
        degree[s as usize] += 1;
    }
    let mut leaves: BTreeSet<u32> = (1..=n as u32).filter(|&v| degree[v as usize] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s as usize] -= 1;
        if degree[s as usize] == 1 {
            leaves.insert(s);
        }
    }
    let mut it = leaves.iter();
    let (&x, &y) = (it.next().unwrap(), it.next().unwrap());
    edges.push((x, y));
    Tree::new(Graph::new(n, edges).unwrap()).unwrap()
}

/// A random family of up to k disjoint paths (singletons as fallback); may
/// return fewer when earlier paths exhaust the vertices.
pub fn random_path_family(t: &Tree, k: usize, rng: &mut dyn RngCore) -> PathFamily {
    assert!(k <= t.n());
    let mut covered: BTreeSet<u32> = BTreeSet::new();
    let mut paths = Vec::new();
    for _ in 0..k {
        let free: Vec<u32> = t.vertices().filter(|v| !covered.contains(v)).collect();
        if free.is_empty() {
            break;
        }
        let mut chosen: Option<Vec<u32>> = None;
        for _ in 0..12 {
            let a = free[rng_index(rng, free.len())];
            let b = free[rng_index(rng, free.len())];
            let path = t.path_between(a, b);
            if path.iter().all(|v| !covered.contains(v)) {
                chosen = Some(path);
                break;
            }
        }
        let path = chosen.unwrap_or_else(|| vec![free[rng_index(rng, free.len())]]);
        covered.extend(path.iter().copied());
        paths.push(path);
    }
    PathFamily::new(t.as_graph(), paths).expect("constructed family is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    #[test]
    fn tree_checks() {
        let path3 = path_graph(3).unwrap();
        assert!(path3.is_tree());
        let triangle = Graph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(!triangle.is_tree());
        assert!(Tree::new(triangle).is_err());
        assert!(figure2_tree().is_tree());
        assert!(Graph::new(2, [(1, 1)]).is_err());
        assert!(Graph::new(2, [(1, 5)]).is_err());
    }

    #[test]
    fn components_and_diameter() {
        let g = Graph::new(5, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(g.connected_components(), vec![vec![1, 2], vec![3, 4], vec![5]]);
        assert!(g.diameter().is_err());

        assert_eq!(path_graph(6).unwrap().diameter().unwrap(), 5);
        assert_eq!(figure2_tree().diameter().unwrap(), 4);
        // longest path of the caterpillar: 3-1-6-7-2-9
        assert_eq!(figure6_tree().diameter().unwrap(), 5);
    }

    #[test]
    fn whirl_shape() {
        for k in 2..=5 {
            for ell in 1..=4 {
                let w = whirl(k, ell).unwrap();
                assert_eq!(w.tree.n(), Whirl::vertex_count(k, ell));
                assert_eq!(w.tree.diameter().unwrap(), 2 * ell + 2);
                assert_eq!(w.legs.len(), 2 * k);
            }
        }
        assert!(whirl(1, 1).is_err());
        assert!(whirl(2, 0).is_err());
    }

    #[test]
    fn whirl_detection_round_trip() {
        let w = whirl(3, 2).unwrap();
        let d = Whirl::detect(w.tree.as_graph()).unwrap();
        assert_eq!((d.k, d.ell, d.axis), (3, 2, 1));

        // the worked example's tree is a (3,1)-whirl with axis 6
        let d = Whirl::detect(figure2_tree().as_graph()).unwrap();
        assert_eq!((d.k, d.ell, d.axis), (3, 1, 6));
        assert_eq!(d.spokes, vec![1, 2, 3]);

        assert!(Whirl::detect(path_graph(7).unwrap().as_graph()).is_none());
        assert!(Whirl::detect(figure6_tree().as_graph()).is_none());
    }

    #[test]
    fn special_path_cases() {
        // a star: any leaf-center-leaf path qualifies
        let star = star_graph(4).unwrap();
        let p = find_special_path(&star);
        assert_eq!(p.len(), 3);
        assert_eq!(p[1], 1);

        // a bare path is returned whole
        let line = path_graph(5).unwrap();
        let p = find_special_path(&line);
        assert_eq!(p.len(), 5);

        // the caterpillar gives 3-1-4 or a symmetric equivalent
        let t = figure6_tree();
        let p = find_special_path(&t);
        assert_eq!(p.len(), 3);
        let ends = [p[0], p[2]];
        assert!(t.degree(p[1]) >= 3);
        for e in ends {
            assert_eq!(t.degree(e), 1);
        }
    }

    #[test]
    fn path_cover_examples() {
        assert_eq!(path_cover_number(&path_graph(9).unwrap()).0, 1);
        assert_eq!(path_cover_number(&figure6_tree()).0, 3);
        assert_eq!(path_cover_number(&figure2_tree()).0, 4);
        for k in 2..=5 {
            for ell in 1..=4 {
                assert_eq!(path_cover_number(&whirl(k, ell).unwrap().tree).0, k + 1);
            }
        }
    }

    #[test]
    fn path_cover_witness_covers() {
        let t = figure2_tree();
        let (p, family) = path_cover_number(&t);
        assert_eq!(family.len(), p);
        assert_eq!(family.covered().len(), t.n());
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(path_cover_number_bruteforce(&star_graph(4).unwrap(), 14).unwrap(), 2);
        assert_eq!(path_cover_number_bruteforce(&figure2_tree(), 14).unwrap(), 4);
        assert_eq!(path_cover_number_bruteforce(&path_graph(7).unwrap(), 14).unwrap(), 1);
        assert!(path_cover_number_bruteforce(&path_graph(15).unwrap(), 14).is_err());
    }

    #[test]
    fn coverage_examples() {
        let t = figure2_tree();
        let (cov, family) = max_coverage_by_k_paths(&t, 3, 14).unwrap();
        assert_eq!(cov, 9);
        assert_eq!(family.covered().len(), 9);

        let (cov, _) = max_coverage_by_k_paths(&t, 4, 14).unwrap();
        assert_eq!(cov, 10);

        let w = whirl(3, 2).unwrap();
        // three paths cover everything except the axis
        assert_eq!(max_coverage_dp(&w.tree, 3), w.tree.n() - 1);
        assert_eq!(max_coverage_dp(&t, 3), 9);
    }

    #[test]
    fn dp_matches_exhaustive_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = 2 + rng_index(&mut rng, 9);
            let t = random_tree(n, &mut rng);
            for k in 1..=3 {
                let (cov, _) = max_coverage_by_k_paths(&t, k, 14).unwrap();
                assert_eq!(cov, max_coverage_dp(&t, k), "tree {t:?} k={k}");
            }
        }
    }

    #[test]
    fn delete_paths_examples() {
        let t = figure2_tree();
        let f = PathFamily::new(
            t.as_graph(),
            vec![vec![4, 1, 5], vec![7, 2, 8], vec![10, 3, 9]],
        )
        .unwrap();
        let (rest, labels) = delete_paths(&t, &f).unwrap();
        assert_eq!(labels, vec![6]);
        assert_eq!(rest.n(), 1);

        let f = PathFamily::new(
            t.as_graph(),
            vec![vec![4, 1, 6, 2, 7], vec![10, 3, 9], vec![8]],
        )
        .unwrap();
        let (rest, labels) = delete_paths(&t, &f).unwrap();
        assert_eq!(labels, vec![5]);
        assert_eq!(rest.n(), 1);

        // removing a full path cover leaves nothing
        let (_, family) = path_cover_number(&t);
        let (rest, _) = delete_paths(&t, &family).unwrap();
        assert_eq!(rest.n(), 0);

        // overlapping families are rejected
        let overlapping = PathFamily {
            paths: vec![vec![4, 1], vec![1, 6]],
        };
        assert!(delete_paths(&t, &overlapping).is_err());
    }

    #[test]
    fn figure14_construction() {
        let h = cycle_graph(6).unwrap();
        let f = figure14_graph(&h, (1, 3, 5), 2).unwrap();
        assert_eq!(f.graph.n(), 6 + 12);
        assert!(f.graph.is_connected());
        assert_eq!(f.m, 6);
        for (idx, leg) in f.legs.iter().enumerate() {
            assert_eq!(leg.len(), 2);
            let anchor = f.anchors[idx / 2];
            assert!(f.graph.has_edge(anchor, leg[0]));
        }
        // pendant labels have degree 1
        for v in f.pendant_i.iter().chain(f.pendant_j.iter()) {
            assert_eq!(f.graph.degree(*v), 1);
        }

        // adjacent anchors on a 4-cycle are fine: each pair has a direct or
        // unique detour route
        let c4 = cycle_graph(4).unwrap();
        assert!(figure14_graph(&c4, (1, 2, 3), 1).is_ok());

        // 4-cycle plus a pendant: the 1-3 pair has two equal shortest routes
        // (1-2-3 and 1-4-3), so the construction must refuse
        let h = Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5)]).unwrap();
        assert!(matches!(
            figure14_graph(&h, (5, 1, 3), 1),
            Err(GraphError::AnchorCondition(_))
        ));
    }

    #[test]
    fn pruefer_trees_are_uniformly_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let n = 1 + rng_index(&mut rng, 12);
            let t = random_tree(n, &mut rng);
            assert!(t.is_tree());
            assert_eq!(t.n(), n);
        }
    }

    #[test]
    fn graph_text_round_trip() {
        let t = figure2_tree();
        let text = t.to_text();
        assert_eq!(Graph::from_text(&text).unwrap(), *t.as_graph());
        let with_comments = format!("# a tree\n{text}");
        assert_eq!(Graph::from_text(&with_comments).unwrap(), *t.as_graph());
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("2\n1 2 3\n").is_err());
    }

    #[test]
    fn random_path_families_are_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let t = random_tree(9, &mut rng);
            let k = 1 + rng_index(&mut rng, 3);
            let f = random_path_family(&t, k, &mut rng);
            assert!(!f.is_empty() && f.len() <= k);
            let total: usize = f.paths().iter().map(|p| p.len()).sum();
            assert_eq!(f.covered().len(), total);
        }
    }
}
