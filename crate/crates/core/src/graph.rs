//! Simple undirected graphs on at most 16 labeled vertices.
//!
//! Every adjacency row is a `u16` bit mask, so a [`Graph`] is a small `Copy`
//! value. Edits return new graphs and never touch the receiver.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 16;

/// Iterate over the set bits of a row mask, lowest first.
pub(crate) fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a >= MAX_ORDER || b >= MAX_ORDER {
            return Err(Error::InvalidEdge(a, b));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(Edge {
            u: u as u8,
            v: v as u8,
        })
    }

    pub(crate) fn unchecked(a: usize, b: usize) -> Self {
        debug_assert!(a != b && a < MAX_ORDER && b < MAX_ORDER);
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge {
            u: u as u8,
            v: v as u8,
        }
    }

    pub fn u(self) -> usize {
        self.u as usize
    }

    pub fn v(self) -> usize {
        self.v as usize
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u(), self.v())
    }

    pub fn contains(self, x: usize) -> bool {
        self.u() == x || self.v() == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of edges kept in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph with a bitset adjacency matrix.
///
/// Rows beyond `order` are always zero, so derived equality and hashing
/// compare labeled graphs exactly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_ORDER],
}

/// Degree and connectivity facts used by the reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    /// Degrees sorted ascending.
    pub degrees: Vec<usize>,
    /// `Some(r)` when every vertex has degree `r`.
    pub regular: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_ORDER],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidEdge(a, b));
            }
            g.set(a, b);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn row(&self, v: usize) -> u16 {
        self.adj[v]
    }

    /// Bit mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u16 {
        if self.n as usize == MAX_ORDER {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.v() < self.order() && self.adj[e.u()] & (1 << e.v()) != 0
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1 << b) != 0
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in bits(self.adj[u] & !((2u32 << u) - 1) as u16) {
                out.push(Edge::unchecked(u, v));
            }
        }
        out
    }

    /// Vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        self.complement().edges()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().into_iter().collect()
    }

    pub(crate) fn set(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub(crate) fn clear(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    /// Copy with `e` added; no presence check.
    pub(crate) fn with_edge(&self, e: Edge) -> Graph {
        let mut g = *self;
        g.set(e.u(), e.v());
        g
    }

    /// Copy with `e` removed; no presence check.
    pub(crate) fn without_edge(&self, e: Edge) -> Graph {
        let mut g = *self;
        g.clear(e.u(), e.v());
        g
    }

    pub fn remove_edges(&self, a: &EdgeSet) -> Result<Graph> {
        let mut g = *self;
        for e in a.iter() {
            if !self.has_edge(e) {
                return Err(Error::MissingEdge(e));
            }
            g.clear(e.u(), e.v());
        }
        Ok(g)
    }

    pub fn add_edges(&self, b: &EdgeSet) -> Result<Graph> {
        let mut g = *self;
        for e in b.iter() {
            if e.v() >= self.order() {
                return Err(Error::InvalidEdge(e.u(), e.v()));
            }
            if self.has_edge(e) {
                return Err(Error::DuplicateEdge(e));
            }
            g.set(e.u(), e.v());
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let mut g = *self;
        for v in 0..self.order() {
            g.adj[v] = !self.adj[v] & all & !(1 << v);
        }
        g
    }

    /// Relabel by `images`: vertex `v` becomes `images[v]`.
    pub fn permute(&self, images: &[usize]) -> Graph {
        debug_assert_eq!(images.len(), self.order());
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_ORDER],
        };
        for (v, &pv) in images.iter().enumerate() {
            let mut row = 0u16;
            for u in bits(self.adj[v]) {
                row |= 1 << images[u];
            }
            g.adj[pv] = row;
        }
        g
    }

    /// Component of `start` as a vertex mask.
    pub fn component_of(&self, start: usize) -> u16 {
        let mut seen = 1u16 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u16;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Some(r) if the graph is r-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d0 = self.degree(0);
        (1..self.order())
            .all(|v| self.degree(v) == d0)
            .then_some(d0)
    }

    /// Proper 2-colouring as a mask of the vertices coloured 1, if any.
    pub fn two_coloring(&self) -> Option<u16> {
        let mut color1 = 0u16;
        let mut seen = 0u16;
        for s in 0..self.order() {
            if seen & (1 << s) != 0 {
                continue;
            }
            seen |= 1 << s;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let v_is_1 = color1 & (1 << v) != 0;
                for u in bits(self.adj[v]) {
                    if seen & (1 << u) == 0 {
                        seen |= 1 << u;
                        if !v_is_1 {
                            color1 |= 1 << u;
                        }
                        stack.push(u);
                    } else if (color1 & (1 << u) != 0) == v_is_1 {
                        return None;
                    }
                }
            }
        }
        Some(color1)
    }

    pub fn structural_report(&self) -> StructuralReport {
        let mut degrees = self.degrees();
        degrees.sort_unstable();
        StructuralReport {
            degrees,
            regular: self.regular_degree(),
            connected: self.is_connected(),
            bipartite: self.two_coloring().is_some(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.n)?;
        f.debug_list()
            .entries(self.edges().iter().map(|e| e.to_string()))
            .finish()?;
        write!(f, ")")
    }
}
