use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use super::Point;
use crate::Scalar;

/// Points closer than this (meters) are merged into one vertex.
pub const MERGE_TOLERANCE: f64 = 1e-3;

/// Undirected weighted path graph. Edge weights are Euclidean lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<T> {
    vertices: Vec<Point<T>>,
    edges: Vec<(usize, usize, T)>,
    adjacency: Vec<Vec<(usize, T)>>,
    component: Vec<usize>,
    component_count: usize,
}

/// A vertex sequence together with its total length.
#[derive(Debug, Clone, PartialEq)]
pub struct Path<T> {
    pub vertices: Vec<usize>,
    pub length: T,
}

/// Incremental graph construction with tolerance-based vertex merging.
#[derive(Debug, Clone)]
pub struct GraphBuilder<T> {
    vertices: Vec<Point<T>>,
    edges: Vec<(usize, usize)>,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl<T: Scalar> Default for GraphBuilder<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> GraphBuilder<T> {
    pub fn new() -> Self {
        GraphBuilder {
            vertices: Vec::new(),
            edges: Vec::new(),
            cells: HashMap::new(),
        }
    }

    fn cell(p: &Point<T>) -> (i64, i64) {
        let inv = 1.0 / MERGE_TOLERANCE;
        ((p.x.as_f64() * inv).floor() as i64, (p.y.as_f64() * inv).floor() as i64)
    }

    /// Returns the index of the vertex at `p`, creating it if no existing
    /// vertex lies within [`MERGE_TOLERANCE`].
    pub fn vertex(&mut self, p: Point<T>) -> usize {
        let (cx, cy) = Self::cell(&p);
        let tol = T::lit(MERGE_TOLERANCE);
        let mut best: Option<(usize, T)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                    for &id in ids {
                        let d = self.vertices[id].distance(&p);
                        if d <= tol && best.is_none_or(|(_, bd)| d < bd) {
                            best = Some((id, d));
                        }
                    }
                }
            }
        }
        if let Some((id, _)) = best {
            return id;
        }
        let id = self.vertices.len();
        self.vertices.push(p);
        self.cells.entry((cx, cy)).or_default().push(id);
        id
    }

    /// Adds one edge per consecutive pair of `points`.
    pub fn add_polyline(&mut self, points: &[Point<T>]) {
        let ids: Vec<usize> = points.iter().map(|p| self.vertex(*p)).collect();
        for w in ids.windows(2) {
            if w[0] != w[1] {
                self.edges.push((w[0], w[1]));
            }
        }
    }

    /// Copies every edge and vertex of `g` into the builder.
    pub fn add_graph(&mut self, g: &Graph<T>) {
        let ids: Vec<usize> = g.vertices.iter().map(|p| self.vertex(*p)).collect();
        for &(a, b, _) in &g.edges {
            if ids[a] != ids[b] {
                self.edges.push((ids[a], ids[b]));
            }
        }
    }

    pub fn build(self) -> Graph<T> {
        let n = self.vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut seen = std::collections::HashSet::new();
        for (a, b) in self.edges {
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                continue;
            }
            let len = self.vertices[a].distance(&self.vertices[b]);
            edges.push((a, b, len));
            adjacency[a].push((b, len));
            adjacency[b].push((a, len));
        }
        let (component, component_count) = label_components(&adjacency);
        Graph {
            vertices: self.vertices,
            edges,
            adjacency,
            component,
            component_count,
        }
    }
}

fn label_components<T>(adjacency: &[Vec<(usize, T)>]) -> (Vec<usize>, usize) {
    let mut component = vec![usize::MAX; adjacency.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..adjacency.len() {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &(w, _) in &adjacency[v] {
                if component[w] == usize::MAX {
                    component[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (component, count)
}

#[derive(PartialEq)]
struct Frontier<T> {
    dist: T,
    vertex: usize,
}

impl<T: Scalar> Eq for Frontier<T> {}

impl<T: Scalar> Ord for Frontier<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, then on vertex index
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl<T: Scalar> PartialOrd for Frontier<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Graph<T> {
    /// Union of several graphs; coincident points are merged.
    pub fn union<'a, I: IntoIterator<Item = &'a Graph<T>>>(graphs: I) -> Graph<T> {
        let mut b = GraphBuilder::new();
        for g in graphs {
            b.add_graph(g);
        }
        b.build()
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Point<T> {
        self.vertices[v]
    }

    pub fn edges(&self) -> &[(usize, usize, T)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, T)] {
        &self.adjacency[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Axis-aligned bounds as `(min, max)`, or `None` for an empty graph.
    pub fn bounds(&self) -> Option<(Point<T>, Point<T>)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Distance from `p` to the nearest edge (or vertex, for edgeless graphs).
    pub fn distance_to(&self, p: &Point<T>) -> T {
        let by_edge = self
            .edges
            .iter()
            .map(|&(a, b, _)| p.distance_to_segment(&self.vertices[a], &self.vertices[b]))
            .fold(T::infinity(), T::min);
        let by_vertex = self.vertices.iter().map(|v| v.distance(p)).fold(T::infinity(), T::min);
        by_edge.min(by_vertex)
    }

    /// Minimum-length path from `from` to `to` (Dijkstra). `None` when the
    /// two vertices lie in different components.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Path<T>> {
        if from == to {
            return Some(Path {
                vertices: vec![from],
                length: T::zero(),
            });
        }
        if self.component[from] != self.component[to] {
            return None;
        }
        let n = self.vertices.len();
        let mut dist = vec![T::infinity(); n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[from] = T::zero();
        heap.push(Frontier {
            dist: T::zero(),
            vertex: from,
        });
        while let Some(Frontier { dist: d, vertex: v }) = heap.pop() {
            if v == to {
                break;
            }
            if d > dist[v] {
                continue;
            }
            for &(w, len) in &self.adjacency[v] {
                let nd = d + len;
                if nd < dist[w] {
                    dist[w] = nd;
                    prev[w] = v;
                    heap.push(Frontier { dist: nd, vertex: w });
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut vertices = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            vertices.push(cur);
        }
        vertices.reverse();
        Some(Path {
            vertices,
            length: dist[to],
        })
    }
}
