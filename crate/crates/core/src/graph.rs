//! Simple undirected graphs with dense vertex indices `0..n`.
//!
//! Adjacency is stored as sorted neighbor lists plus, for graphs up to
//! [`DENSE_LIMIT`] vertices, machine-word bitset rows so that pairwise
//! neighborhood unions cost O(n/64). Larger graphs (the million-leaf star,
//! say) fall back to sorted-list merges; a dense matrix would need O(n^2)
//! bits.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest vertex count for which bitset rows are materialized (32 MiB of
/// matrix at the limit).
pub const DENSE_LIMIT: usize = 16_384;

/// Largest graph6 size we accept (short and 4-byte long forms).
pub const GRAPH6_MAX_N: usize = 258_047;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {v} out of range for n={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: usize },
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("graph6: malformed header at byte {offset}: {reason}")]
    Graph6Header { offset: usize, reason: String },
    #[error("graph6: byte {byte:#04x} out of range 63..=126 at offset {offset}")]
    Graph6ByteRange { offset: usize, byte: u8 },
    #[error("graph6: truncated bit string at byte {offset}: need {needed} data bytes, found {found}")]
    Graph6Truncated {
        offset: usize,
        needed: usize,
        found: usize,
    },
    #[error("graph6: trailing data at byte {offset}")]
    Graph6Trailing { offset: usize },
    #[error("graph6: order {n} exceeds supported maximum {max}")]
    Graph6TooLarge { n: usize, max: usize },
    #[error("edge list: line {line}: missing vertex count")]
    EdgeListMissingHeader { line: usize },
    #[error("edge list: line {line}: cannot parse {what}: {text:?}")]
    EdgeListParse {
        line: usize,
        what: &'static str,
        text: String,
    },
    #[error("edge list: line {line}: vertex {v} out of range for n={n}")]
    EdgeListRange { line: usize, v: usize, n: usize },
    #[error("edge list: line {line}: loop edge at vertex {v}")]
    EdgeListLoop { line: usize, v: usize },
    #[error("invalid parameters for {family}: {reason}")]
    BadFamilyParams { family: String, reason: String },
    #[error("unknown named family {name:?} (expected star, path, cycle, or cbip)")]
    UnknownFamily { name: String },
}

/// Simple undirected graph, immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edge_count: usize,
    /// Sorted neighbor lists, one per vertex.
    adj: Vec<Vec<u32>>,
    /// Bitset rows (`words` words per vertex), present iff `n <= DENSE_LIMIT`.
    rows: Option<Vec<u64>>,
    words: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count)
    }
}

/// Evidence that a graph is (or is not) in the class of connected,
/// non-complete graphs on at least three vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaClassProof {
    pub connected: bool,
    pub non_complete: bool,
    pub n_ge_3: bool,
}

impl GammaClassProof {
    pub fn holds(&self) -> bool {
        self.connected && self.non_complete && self.n_ge_3
    }
}

impl fmt::Display for GammaClassProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "connected={}, non_complete={}, n_ge_3={}",
            self.connected, self.non_complete, self.n_ge_3
        )
    }
}

/// A validated two-coloring of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

/// One multiplicity class of vertex pairs sharing the same degree pair,
/// adjacency, and closed neighborhood union size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub du: usize,
    pub dv: usize,
    /// `|N[u] ∪ N[v]|`
    pub closed_union: usize,
    pub adjacent: bool,
    pub count: u64,
}

impl PairClass {
    /// `|N(u) ∩ N(v)|` recovered from the closed union size.
    pub fn common_neighbors(&self) -> usize {
        self.du + self.dv + 2 - self.closed_union - if self.adjacent { 2 } else { 0 }
    }
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { v: u });
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        edge_count /= 2;

        let words = n.div_ceil(64);
        let rows = if n <= DENSE_LIMIT {
            let mut rows = vec![0u64; n * words];
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    rows[u * words + (v as usize >> 6)] |= 1u64 << (v & 63);
                }
            }
            Some(rows)
        } else {
            None
        };

        Ok(Graph {
            n,
            edge_count,
            adj,
            rows,
            words,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().map(|&v| v as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if let Some(rows) = &self.rows {
            rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
        } else {
            self.adj[u].binary_search(&(v as u32)).is_ok()
        }
    }

    /// Bitset row of `u`; only for graphs within [`DENSE_LIMIT`].
    fn row(&self, u: usize) -> &[u64] {
        let rows = self.rows.as_ref().expect("dense rows not materialized");
        &rows[u * self.words..(u + 1) * self.words]
    }

    /// `|N[u] ∪ N[v]|` for distinct vertices.
    ///
    /// # Panics
    /// Panics if `u == v`.
    pub fn closed_union_size(&self, u: usize, v: usize) -> usize {
        assert!(u != v, "closed_union_size requires u != v");
        if self.rows.is_some() {
            let (ru, rv) = (self.row(u), self.row(v));
            let mut count = 0usize;
            for w in 0..self.words {
                let mut x = ru[w] | rv[w];
                if w == u >> 6 {
                    x |= 1u64 << (u & 63);
                }
                if w == v >> 6 {
                    x |= 1u64 << (v & 63);
                }
                count += x.count_ones() as usize;
            }
            count
        } else {
            let open = merged_count(&self.adj[u], &self.adj[v], MergeMode::Union);
            let adj = self.has_edge(u, v);
            // u and v each join the union unless already present as a neighbor
            open + 2 - if adj { 2 } else { 0 }
        }
    }

    /// `|N(u) ∪ N(v)|` (open neighborhoods) for distinct vertices.
    pub fn open_union_size(&self, u: usize, v: usize) -> usize {
        assert!(u != v);
        if self.rows.is_some() {
            let (ru, rv) = (self.row(u), self.row(v));
            (0..self.words)
                .map(|w| (ru[w] | rv[w]).count_ones() as usize)
                .sum()
        } else {
            merged_count(&self.adj[u], &self.adj[v], MergeMode::Union)
        }
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        if self.rows.is_some() {
            let (ru, rv) = (self.row(u), self.row(v));
            (0..self.words)
                .map(|w| (ru[w] & rv[w]).count_ones() as usize)
                .sum()
        } else {
            merged_count(&self.adj[u], &self.adj[v], MergeMode::Intersection)
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Decides membership in the class of connected, non-complete graphs on
    /// at least three vertices, flag by flag.
    pub fn gamma_class(&self) -> GammaClassProof {
        GammaClassProof {
            connected: self.is_connected(),
            non_complete: !self.is_complete(),
            n_ge_3: self.n >= 3,
        }
    }

    pub fn in_gamma(&self) -> bool {
        self.gamma_class().holds()
    }

    /// Two-colors the graph by BFS layering, component by component; the
    /// lowest-indexed vertex of each component lands in `side_a`. Returns
    /// `None` iff some component contains an odd cycle.
    pub fn find_bipartition(&self) -> Option<Bipartition> {
        const UNSET: u8 = 2;
        let mut color = vec![UNSET; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if color[start] != UNSET {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == UNSET {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side_a = (0..self.n).filter(|&u| color[u] == 0).collect();
        let side_b = (0..self.n).filter(|&u| color[u] == 1).collect();
        Some(Bipartition { side_a, side_b })
    }

    /// Checks that `bip` is a proper two-coloring of this graph.
    pub fn is_valid_bipartition(&self, bip: &Bipartition) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for &u in &bip.side_a {
            if u >= self.n || side[u] != u8::MAX {
                return false;
            }
            side[u] = 0;
        }
        for &u in &bip.side_b {
            if u >= self.n || side[u] != u8::MAX {
                return false;
            }
            side[u] = 1;
        }
        if side.contains(&u8::MAX) {
            return false;
        }
        (0..self.n).all(|u| self.neighbors(u).all(|v| side[v] != side[u]))
    }

    /// Degree histogram: pairs `(degree, count)` sorted by degree.
    pub fn degree_histogram(&self) -> Vec<(usize, u64)> {
        let mut map: HashMap<usize, u64> = HashMap::new();
        for u in 0..self.n {
            *map.entry(self.degree(u)).or_insert(0) += 1;
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Groups all `C(n,2)` vertex pairs into multiplicity classes keyed by
    /// `(d(u), d(v), |N[u] ∪ N[v]|, adjacency)`.
    ///
    /// Vertices with identical open neighborhoods form twin classes, so
    /// regular families like stars or complete bipartite graphs collapse to
    /// a handful of classes no matter how large they are.
    pub fn pair_classes(&self) -> Vec<PairClass> {
        let classes = self.twin_classes();
        let mut buckets: HashMap<(usize, usize, usize, bool), u64> = HashMap::new();

        for (i, ci) in classes.iter().enumerate() {
            // pairs inside a twin class: never adjacent (a loop otherwise),
            // common neighborhood is the whole shared neighborhood
            if ci.members.len() >= 2 {
                let d = self.degree(ci.rep);
                let union = d + 2;
                let count = ci.members.len() as u64 * (ci.members.len() as u64 - 1) / 2;
                *buckets.entry((d, d, union, false)).or_insert(0) += count;
            }
            for cj in classes.iter().skip(i + 1) {
                let (du, dv) = (self.degree(ci.rep), self.degree(cj.rep));
                let adjacent = self.has_edge(ci.rep, cj.rep);
                let common = self.common_neighbor_count(ci.rep, cj.rep);
                let union = du + dv + 2 - common - if adjacent { 2 } else { 0 };
                let (du, dv) = if du <= dv { (du, dv) } else { (dv, du) };
                let count = ci.members.len() as u64 * cj.members.len() as u64;
                *buckets.entry((du, dv, union, adjacent)).or_insert(0) += count;
            }
        }

        let mut out: Vec<PairClass> = buckets
            .into_iter()
            .map(|((du, dv, closed_union, adjacent), count)| PairClass {
                du,
                dv,
                closed_union,
                adjacent,
                count,
            })
            .collect();
        out.sort_unstable_by_key(|c| (c.du, c.dv, c.closed_union, c.adjacent));
        out
    }

    /// Twin classes (vertices with identical open neighborhoods).
    pub(crate) fn twin_classes(&self) -> Vec<TwinClass> {
        let mut map: HashMap<&[u32], Vec<usize>> = HashMap::new();
        for u in 0..self.n {
            map.entry(&self.adj[u]).or_default().push(u);
        }
        let mut classes: Vec<TwinClass> = map
            .into_values()
            .map(|members| TwinClass {
                rep: members[0],
                members,
            })
            .collect();
        classes.sort_unstable_by_key(|c| c.rep);
        classes
    }

    /// graph6 encoding (short form below 63 vertices, 4-byte long form up
    /// to [`GRAPH6_MAX_N`]).
    pub fn to_graph6(&self) -> String {
        assert!(
            self.n <= GRAPH6_MAX_N,
            "graph6 encoding limited to n <= {GRAPH6_MAX_N}"
        );
        let mut out = Vec::new();
        if self.n < 63 {
            out.push(self.n as u8 + 63);
        } else {
            out.push(126);
            out.push(((self.n >> 12) & 63) as u8 + 63);
            out.push(((self.n >> 6) & 63) as u8 + 63);
            out.push((self.n & 63) as u8 + 63);
        }
        let mut group = 0u8;
        let mut bits = 0;
        for j in 1..self.n {
            for i in 0..j {
                group <<= 1;
                if self.has_edge(i, j) {
                    group |= 1;
                }
                bits += 1;
                if bits == 6 {
                    out.push(group + 63);
                    group = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push((group << (6 - bits)) + 63);
        }
        String::from_utf8(out).unwrap()
    }
}

pub(crate) struct TwinClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

enum MergeMode {
    Union,
    Intersection,
}

fn merged_count(a: &[u32], b: &[u32], mode: MergeMode) -> usize {
    let (mut i, mut j, mut union, mut inter) = (0, 0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                i += 1;
                union += 1;
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                union += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                union += 1;
                inter += 1;
            }
        }
    }
    union += a.len() - i + b.len() - j;
    match mode {
        MergeMode::Union => union,
        MergeMode::Intersection => inter,
    }
}

/// Parses one graph6-encoded graph (optionally prefixed by the standard
/// `>>graph6<<` header). Errors carry the byte offset of the failure.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut bytes = text.trim().as_bytes();
    let mut base = 0usize;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    if bytes.is_empty() {
        return Err(GraphError::Graph6Empty);
    }

    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte form encodes n >= 258048, beyond what we support
            return Err(GraphError::Graph6TooLarge {
                n: GRAPH6_MAX_N + 1,
                max: GRAPH6_MAX_N,
            });
        }
        if bytes.len() < 4 {
            return Err(GraphError::Graph6Header {
                offset: base + bytes.len(),
                reason: "long-form size needs 3 bytes after '~'".into(),
            });
        }
        let mut n = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(GraphError::Graph6ByteRange {
                    offset: base + 1 + k,
                    byte: b,
                });
            }
            n = (n << 6) | (b as usize - 63);
        }
        if n < 63 {
            return Err(GraphError::Graph6Header {
                offset: base,
                reason: format!("non-canonical long-form size {n}"),
            });
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(63..=125).contains(&b) {
            return Err(GraphError::Graph6Header {
                offset: base,
                reason: format!("size byte {b:#04x} out of range"),
            });
        }
        ((b - 63) as usize, 1)
    };

    if n == 0 {
        return Err(GraphError::Empty);
    }

    let bit_count = n * (n - 1) / 2;
    let needed = bit_count.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() < needed {
        return Err(GraphError::Graph6Truncated {
            offset: base + bytes.len(),
            needed,
            found: data.len(),
        });
    }
    if data.len() > needed {
        return Err(GraphError::Graph6Trailing {
            offset: base + header_len + needed,
        });
    }
    for (k, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(GraphError::Graph6ByteRange {
                offset: base + header_len + k,
                byte: b,
            });
        }
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let bit = (data[k / 6] - 63) >> (5 - k % 6) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Parses the human-oriented edge-list format: first line `n`, then one
/// `u v` pair per line. Blank lines are ignored; duplicates collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (header_line, n): (usize, usize) = loop {
        match lines.next() {
            Some((idx, line)) => {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let n = line.parse().map_err(|_| GraphError::EdgeListParse {
                    line: idx + 1,
                    what: "vertex count",
                    text: line.into(),
                })?;
                break (idx + 1, n);
            }
            None => return Err(GraphError::EdgeListMissingHeader { line: 1 }),
        }
    };
    let _ = header_line;
    if n == 0 {
        return Err(GraphError::Empty);
    }

    let mut edges = Vec::new();
    for (idx, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (us, vs) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(GraphError::EdgeListParse {
                    line: idx + 1,
                    what: "edge",
                    text: line.into(),
                })
            }
        };
        let parse = |s: &str| -> Result<usize, GraphError> {
            s.parse().map_err(|_| GraphError::EdgeListParse {
                line: idx + 1,
                what: "vertex",
                text: s.into(),
            })
        };
        let (u, v) = (parse(us)?, parse(vs)?);
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::EdgeListRange {
                    line: idx + 1,
                    v: w,
                    n,
                });
            }
        }
        if u == v {
            return Err(GraphError::EdgeListLoop { line: idx + 1, v: u });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

/// The named graph families used throughout: stars, paths, cycles, and
/// complete bipartite graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Star,
    Path,
    Cycle,
    CompleteBipartite,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::CompleteBipartite => "cbip",
        }
    }
}

/// Constructs a member of a named family with a documented canonical
/// vertex ordering:
///
/// - `star(m)`: `K_{1,m}`, center is vertex 0, leaves `1..=m` (`m >= 1`);
/// - `path(k)`: `k` vertices `0 - 1 - ... - k-1` (`k >= 1`);
/// - `cycle(k)`: `k >= 3` vertices in cyclic order;
/// - `cbip(a, b)`: `K_{a,b}`, side A is `0..a`, side B is `a..a+b`
///   (`a, b >= 1`).
pub fn make_named(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    let bad = |reason: &str| GraphError::BadFamilyParams {
        family: family.name().into(),
        reason: reason.into(),
    };
    match (family, params) {
        (Family::Star, &[m]) if m >= 1 => {
            Graph::from_edges(m + 1, (1..=m).map(|leaf| (0, leaf)))
        }
        (Family::Star, _) => Err(bad("expected one parameter m >= 1")),
        (Family::Path, &[k]) if k >= 1 => Graph::from_edges(k, (1..k).map(|v| (v - 1, v))),
        (Family::Path, _) => Err(bad("expected one parameter k >= 1")),
        (Family::Cycle, &[k]) if k >= 3 => {
            Graph::from_edges(k, (0..k).map(|v| (v, (v + 1) % k)))
        }
        (Family::Cycle, _) => Err(bad("expected one parameter k >= 3")),
        (Family::CompleteBipartite, &[a, b]) if a >= 1 && b >= 1 => Graph::from_edges(
            a + b,
            (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))),
        ),
        (Family::CompleteBipartite, _) => Err(bad("expected two parameters a, b >= 1")),
    }
}

/// Parses a `family:params` constructor string such as `star:100`,
/// `cycle:7`, or `cbip:2,1000`.
pub fn parse_named_spec(spec: &str) -> Result<Graph, GraphError> {
    let (name, params) = spec.split_once(':').ok_or_else(|| GraphError::UnknownFamily {
        name: spec.into(),
    })?;
    let family = match name {
        "star" => Family::Star,
        "path" => Family::Path,
        "cycle" => Family::Cycle,
        "cbip" | "complete_bipartite" => Family::CompleteBipartite,
        _ => {
            return Err(GraphError::UnknownFamily { name: name.into() });
        }
    };
    let params: Vec<usize> = params
        .split(',')
        .map(|p| {
            p.trim().parse().map_err(|_| GraphError::BadFamilyParams {
                family: family.name().into(),
                reason: format!("cannot parse parameter {p:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    make_named(family, &params)
}
