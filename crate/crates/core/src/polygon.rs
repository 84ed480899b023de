//! Triangulations of a convex polygon, the flip graph, fan triangulations and
//! short-cuts, and dimensions of labeled polygonal vector spaces.
//!
//! Vertices are numbered `0..n`. The bottom edge joins vertex `0` and vertex
//! `n-1`; upper edge `k` (for `k = 1..n`) joins vertex `k-1` and vertex `k`,
//! so reading the upper edges left to right gives the labels `x_1 .. x_{n-1}`.
//! A diagonal `(i, j)` with `i < j` is the lower edge of the sub-polygon over
//! upper edges `i+1..=j`, and every triangle `i < k < j` multiplies its two
//! upper edges `(i,k)`, `(k,j)` into its lower edge `(i,j)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::free_product::{FormalSum, FreeProductRing, Word};

/// Largest polygon accepted by [`enumerate_triangulations`].
pub const MAX_ENUMERATION_EDGES: usize = 12;
/// Largest polygon accepted by [`coherence_check`].
pub const MAX_COHERENCE_EDGES: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon must have at least 3 edges, got {0}")]
    TooFewEdges(usize),
    #[error("{what}: {n} edges exceeds the limit of {max}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("vertex {vertex} is not a vertex of a {n}-gon")]
    BadVertex { vertex: usize, n: usize },
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("labeled polygon with {n} edges needs {expected} upper labels, got {got}")]
    LabelCount { n: usize, expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    n_edges: usize,
}

impl Polygon {
    pub fn new(n_edges: usize) -> Result<Self, PolygonError> {
        if n_edges < 3 {
            return Err(PolygonError::TooFewEdges(n_edges));
        }
        Ok(Polygon { n_edges })
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    fn check_vertex(&self, v: usize) -> Result<(), PolygonError> {
        if v < self.n_edges {
            Ok(())
        } else {
            Err(PolygonError::BadVertex {
                vertex: v,
                n: self.n_edges,
            })
        }
    }

    fn is_side(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        b == a + 1 || (a == 0 && b == self.n_edges - 1)
    }
}

/// A diagonal between two non-adjacent vertices, stored with `.0 < .1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Diagonal(pub usize, pub usize);

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Self {
        Diagonal(a.min(b), a.max(b))
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b, c, d) = (self.0, self.1, other.0, other.1);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A maximal set of pairwise non-crossing diagonals, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    n_edges: usize,
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(polygon: Polygon, diagonals: Vec<Diagonal>) -> Result<Self, PolygonError> {
        let n = polygon.n_edges;
        let mut diagonals: Vec<Diagonal> =
            diagonals.into_iter().map(|d| Diagonal::new(d.0, d.1)).collect();
        diagonals.sort();
        let invalid = |msg: String| Err(PolygonError::InvalidTriangulation(msg));
        if diagonals.len() != n - 3 {
            return invalid(format!(
                "a {n}-gon needs {} diagonals, got {}",
                n - 3,
                diagonals.len()
            ));
        }
        for (i, d) in diagonals.iter().enumerate() {
            if d.1 >= n || d.0 == d.1 || polygon.is_side(d.0, d.1) {
                return invalid(format!("{d} is not a diagonal of a {n}-gon"));
            }
            if i > 0 && diagonals[i - 1] == *d {
                return invalid(format!("{d} appears twice"));
            }
            if let Some(e) = diagonals[..i].iter().find(|e| e.crosses(d)) {
                return invalid(format!("{e} crosses {d}"));
            }
        }
        Ok(Triangulation {
            n_edges: n,
            diagonals,
        })
    }

    /// Parses the `"i-j,k-l"` form; the empty string is the triangle's
    /// (empty) triangulation.
    pub fn parse(polygon: Polygon, text: &str) -> Result<Self, PolygonError> {
        let text = text.trim();
        let mut diagonals = Vec::new();
        if !text.is_empty() {
            for part in text.split(',') {
                let bad = || PolygonError::InvalidTriangulation(format!("cannot parse `{part}`"));
                let (a, b) = part.trim().split_once('-').ok_or_else(bad)?;
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                diagonals.push(Diagonal::new(a, b));
            }
        }
        Self::new(polygon, diagonals)
    }

    pub fn polygon(&self) -> Polygon {
        Polygon {
            n_edges: self.n_edges,
        }
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.polygon().is_side(a, b) || self.diagonals.binary_search(&Diagonal::new(a, b)).is_ok()
    }

    /// The apex over `(i, j)` on the side of the vertices strictly between them.
    fn inner_apex(&self, i: usize, j: usize) -> usize {
        (i + 1..j)
            .find(|&k| self.has_edge(i, k) && self.has_edge(k, j))
            .expect("every edge of a triangulation bounds a triangle")
    }

    fn outer_apex(&self, i: usize, j: usize) -> usize {
        (0..i)
            .chain(j + 1..self.n_edges)
            .find(|&k| self.has_edge(i, k) && self.has_edge(k, j))
            .expect("a diagonal bounds a triangle on each side")
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn triangulate_interval(i: usize, j: usize, out: &mut Vec<Vec<Diagonal>>) {
    if j - i < 2 {
        out.push(Vec::new());
        return;
    }
    for k in i + 1..j {
        let mut left = Vec::new();
        triangulate_interval(i, k, &mut left);
        let mut right = Vec::new();
        triangulate_interval(k, j, &mut right);
        for l in &left {
            for r in &right {
                let mut ds = Vec::with_capacity(l.len() + r.len() + 2);
                ds.extend_from_slice(l);
                ds.extend_from_slice(r);
                if k - i >= 2 {
                    ds.push(Diagonal(i, k));
                }
                if j - k >= 2 {
                    ds.push(Diagonal(k, j));
                }
                out.push(ds);
            }
        }
    }
}

/// Every triangulation of the `n`-gon in sorted order; there are
/// `Catalan(n-2)` of them.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>, PolygonError> {
    let polygon = Polygon::new(n)?;
    if n > MAX_ENUMERATION_EDGES {
        return Err(PolygonError::TooLarge {
            what: "triangulation enumeration",
            n,
            max: MAX_ENUMERATION_EDGES,
        });
    }
    let mut raw = Vec::new();
    triangulate_interval(0, n - 1, &mut raw);
    let mut all: Vec<Triangulation> = raw
        .into_iter()
        .map(|mut diagonals| {
            diagonals.sort();
            Triangulation {
                n_edges: polygon.n_edges,
                diagonals,
            }
        })
        .collect();
    all.sort();
    Ok(all)
}

/// Triangulations one flip away, ordered by the diagonal that is removed.
pub fn flips(t: &Triangulation) -> Vec<Triangulation> {
    t.diagonals
        .iter()
        .map(|d| flip(t, *d))
        .collect()
}

fn flip(t: &Triangulation, d: Diagonal) -> Triangulation {
    let replacement = Diagonal::new(t.inner_apex(d.0, d.1), t.outer_apex(d.0, d.1));
    let mut diagonals: Vec<Diagonal> = t
        .diagonals
        .iter()
        .map(|&e| if e == d { replacement } else { e })
        .collect();
    diagonals.sort();
    Triangulation {
        n_edges: t.n_edges,
        diagonals,
    }
}

/// All diagonals through `v`.
pub fn fan_triangulation(polygon: Polygon, v: usize) -> Result<Triangulation, PolygonError> {
    polygon.check_vertex(v)?;
    let n = polygon.n_edges;
    let diagonals = (0..n)
        .filter(|&u| u != v && !polygon.is_side(u, v))
        .map(|u| Diagonal::new(u, v))
        .collect();
    Triangulation::new(polygon, diagonals)
}

/// Number of diagonals of `t` incident to `v`.
pub fn length(t: &Triangulation, v: usize) -> usize {
    t.diagonals.iter().filter(|d| d.touches(v)).count()
}

/// A flip path from the fan at `v` to `t` along which the length at `v`
/// drops by one at every step.
///
/// Built backwards from `t`: while `t` is not the fan, some triangle at `v`
/// has a diagonal as its far side, and flipping that diagonal adds one more
/// diagonal at `v`. The smallest such diagonal is flipped first.
pub fn shortcut(polygon: Polygon, v: usize, t: &Triangulation) -> Result<Vec<Triangulation>, PolygonError> {
    polygon.check_vertex(v)?;
    if t.n_edges != polygon.n_edges {
        return Err(PolygonError::InvalidTriangulation(format!(
            "triangulation of a {}-gon used with a {}-gon",
            t.n_edges, polygon.n_edges
        )));
    }
    let target = polygon.n_edges - 3;
    let mut current = t.clone();
    let mut path = vec![current.clone()];
    while length(&current, v) < target {
        let next = current
            .diagonals
            .iter()
            .filter(|d| !d.touches(v))
            .map(|&d| flip(&current, d))
            .find(|f| length(f, v) > length(&current, v))
            .expect("a non-fan triangulation has a triangle at v over a diagonal");
        path.push(next.clone());
        current = next;
    }
    path.reverse();
    Ok(path)
}

/// Checks the short-cut conditions: starts at the fan, ends at `t`, each
/// step is a flip, and the length at `v` strictly decreases.
pub fn is_valid_shortcut(path: &[Triangulation], v: usize, t: &Triangulation) -> bool {
    let Some(first) = path.first() else {
        return false;
    };
    let Ok(fan) = fan_triangulation(t.polygon(), v) else {
        return false;
    };
    *first == fan
        && path.last() == Some(t)
        && path.windows(2).all(|w| {
            flips(&w[0]).contains(&w[1]) && length(&w[1], v) < length(&w[0], v)
        })
}

/// Whether the flip graph of the `n`-gon is connected.
pub fn flip_graph_connected(all: &[Triangulation]) -> bool {
    let Some(start) = all.first() else {
        return true;
    };
    let mut seen: HashSet<Triangulation> = HashSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start.clone());
    while let Some(t) = queue.pop_front() {
        for f in flips(&t) {
            if seen.insert(f.clone()) {
                queue.push_back(f);
            }
        }
    }
    seen.len() == all.len()
}

/// A polygon whose bottom edge carries `bottom` and whose upper edges carry
/// `edges[0..n-1]`, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolygon {
    polygon: Polygon,
    bottom: Word,
    edges: Vec<Word>,
}

impl LabeledPolygon {
    pub fn new(bottom: Word, edges: Vec<Word>) -> Result<Self, PolygonError> {
        let polygon = Polygon::new(edges.len() + 1)?;
        Ok(LabeledPolygon {
            polygon,
            bottom,
            edges,
        })
    }

    pub fn polygon(&self) -> Polygon {
        self.polygon
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }
}

/// Dimension of the polygonal vector space `[T]`: the sum over labelings of
/// the diagonals of the product of triangle dimensions. Diagonal labels are
/// drawn from squeeze candidates, which contain every label that can carry
/// a non-zero space.
pub fn polygon_dim(
    fp: &FreeProductRing,
    labeled: &LabeledPolygon,
    t: &Triangulation,
) -> Result<u64, PolygonError> {
    if t.n_edges != labeled.polygon.n_edges {
        return Err(PolygonError::LabelCount {
            n: t.n_edges,
            expected: t.n_edges - 1,
            got: labeled.edges.len(),
        });
    }
    let n = t.n_edges;
    let apex = t.inner_apex(0, n - 1);
    let left = edge_space(fp, labeled, t, 0, apex);
    let right = edge_space(fp, labeled, t, apex, n - 1);
    let mut total = 0u64;
    for (u, du) in left.iter() {
        for (v, dv) in right.iter() {
            let d = fp.triangle_dim(u, v, &labeled.bottom);
            total += du * dv * d;
        }
    }
    Ok(total)
}

// Multiplicity of each possible label on edge (i, j), counting all labelings
// of the sub-polygon above it.
fn edge_space(
    fp: &FreeProductRing,
    labeled: &LabeledPolygon,
    t: &Triangulation,
    i: usize,
    j: usize,
) -> FormalSum {
    if j == i + 1 {
        return FormalSum::single(labeled.edges[i].clone());
    }
    let k = t.inner_apex(i, j);
    let left = edge_space(fp, labeled, t, i, k);
    let right = edge_space(fp, labeled, t, k, j);
    let mut out = FormalSum::zero();
    for (u, du) in left.iter() {
        for (v, dv) in right.iter() {
            for z in fp.squeeze_candidates(u, v) {
                let d = fp.triangle_dim(u, v, &z);
                out.add(z, du * dv * d);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationDim {
    pub triangulation: String,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortcutPath {
    pub target: String,
    pub path: Vec<String>,
    pub lengths: Vec<usize>,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub n_edges: usize,
    pub vertex: usize,
    pub dims: Vec<TriangulationDim>,
    pub common_dim: Option<u64>,
    pub dims_agree: bool,
    pub flip_graph_connected: bool,
    pub shortcuts: Vec<ShortcutPath>,
    pub shortcuts_valid: bool,
    pub passed: bool,
}

/// Computes `polygon_dim` for every triangulation and checks that they agree,
/// that the flip graph is connected and that every triangulation has a valid
/// short-cut from the fan at `vertex`.
pub fn coherence_check(
    fp: &FreeProductRing,
    labeled: &LabeledPolygon,
    vertex: usize,
) -> Result<CoherenceReport, PolygonError> {
    let polygon = labeled.polygon;
    let n = polygon.n_edges;
    if n > MAX_COHERENCE_EDGES {
        return Err(PolygonError::TooLarge {
            what: "coherence check",
            n,
            max: MAX_COHERENCE_EDGES,
        });
    }
    polygon.check_vertex(vertex)?;
    let all = enumerate_triangulations(n)?;
    let mut dims = Vec::with_capacity(all.len());
    for t in &all {
        dims.push(TriangulationDim {
            triangulation: t.to_string(),
            dim: polygon_dim(fp, labeled, t)?,
        });
    }
    let distinct: BTreeSet<u64> = dims.iter().map(|d| d.dim).collect();
    let dims_agree = distinct.len() == 1;
    let common_dim = if dims_agree { distinct.first().copied() } else { None };

    let mut shortcuts = Vec::with_capacity(all.len());
    for t in &all {
        let path = shortcut(polygon, vertex, t)?;
        shortcuts.push(ShortcutPath {
            target: t.to_string(),
            lengths: path.iter().map(|p| length(p, vertex)).collect(),
            valid: is_valid_shortcut(&path, vertex, t),
            path: path.iter().map(|p| p.to_string()).collect(),
        });
    }
    let shortcuts_valid = shortcuts.iter().all(|s| s.valid);
    let flip_graph_connected = flip_graph_connected(&all);
    Ok(CoherenceReport {
        n_edges: n,
        vertex,
        dims,
        common_dim,
        dims_agree,
        flip_graph_connected,
        shortcuts,
        shortcuts_valid,
        passed: dims_agree && flip_graph_connected && shortcuts_valid,
    })
}
