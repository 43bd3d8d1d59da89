//! Canonical labeling and isomorphism testing.
//!
//! Canonical forms come from an individualization-refinement search: the
//! vertex partition is refined by neighbour counts until equitable, the first
//! non-singleton cell is split by individualizing each of its vertices in
//! turn, and every discrete leaf yields a relabeling of the graph. The
//! canonical form is the leaf with the smallest upper-triangle bit string.
//!
//! Automorphisms discovered when two leaves agree are used to skip subtrees:
//! a leaf equal to the first or best leaf lets the search jump back to the
//! point where the two paths diverged, and children of a node that lie in a
//! common orbit of the automorphisms fixing that node's prefix are visited
//! once.

use std::fmt;

use crate::graph::{bits, Edge, Graph, MAX_ORDER};

/// Label-independent identifier of an isomorphism class.
///
/// Holds the order and the upper-triangle adjacency bits of the canonical
/// relabeling, in graph6 column order (x01, x02, x12, x03, ...), with the
/// first bit most significant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    order: u8,
    triangle: u128,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// Order byte followed by 15 big-endian triangle bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16);
        out.push(self.order);
        out.extend_from_slice(&self.triangle.to_be_bytes()[1..]);
        out
    }

    /// The canonical representative of the class.
    pub fn graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("code order is valid");
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if self.triangle & (1u128 << (127 - idx)) != 0 {
                    g.set(i, j);
                }
                idx += 1;
            }
        }
        g
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalCode({}:{:030x})",
            self.order,
            self.triangle >> 8
        )
    }
}

/// A permutation of `0..n`; `images[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    images: Vec<usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            images: (0..n).collect(),
        }
    }

    /// Build from an image list; `None` unless it is a permutation.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(VertexMap { images })
    }

    /// The transposition of `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        VertexMap { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            inv[w] = v;
        }
        VertexMap { images: inv }
    }

    pub fn apply(&self, g: &Graph) -> Graph {
        g.permute(&self.images)
    }

    pub fn apply_edge(&self, e: Edge) -> Edge {
        Edge::unchecked(self.images[e.u()], self.images[e.v()])
    }

    /// True when this map sends `g` exactly onto `h`.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        g.order() == h.order() && self.images.len() == g.order() && self.apply(g) == *h
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .filter(|(v, w)| v != *w)
            .map(|(v, w)| format!("{v}->{w}"))
            .collect();
        if moved.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", moved.join(" "))
        }
    }
}

/// Canonical code together with the relabeling that produces it.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    pub code: CanonicalCode,
    /// Sends each original vertex to its canonical label.
    pub map: VertexMap,
}

#[derive(Clone, Copy)]
struct Partition {
    cells: [u16; MAX_ORDER],
    len: usize,
}

impl Partition {
    fn unit(g: &Graph) -> Self {
        let mut cells = [0; MAX_ORDER];
        cells[0] = g.vertex_mask();
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        (0..self.len).find(|&i| self.cells[i].count_ones() > 1)
    }

    fn replace(&mut self, at: usize, parts: &[u16]) {
        let k = parts.len();
        self.cells.copy_within(at + 1..self.len, at + k);
        self.cells[at..at + k].copy_from_slice(parts);
        self.len += k - 1;
    }

    /// Split `{v}` off the front of cell `at`.
    fn individualize(&mut self, at: usize, v: usize) {
        let rest = self.cells[at] & !(1 << v);
        self.replace(at, &[1 << v, rest]);
    }

    /// Refine to the coarsest equitable partition finer than `self`.
    ///
    /// Each split orders the fragments by neighbour count into the splitter,
    /// so the result depends only on the isomorphism type of the labeled
    /// partition.
    fn refine(&mut self, g: &Graph) {
        'restart: loop {
            for s in 0..self.len {
                let splitter = self.cells[s];
                for c in 0..self.len {
                    let cell = self.cells[c];
                    if cell.count_ones() < 2 {
                        continue;
                    }
                    let mut buckets = [0u16; MAX_ORDER + 1];
                    for v in bits(cell) {
                        let k = (g.row(v) & splitter).count_ones() as usize;
                        buckets[k] |= 1 << v;
                    }
                    let mut parts = [0u16; MAX_ORDER];
                    let mut np = 0;
                    for &b in buckets.iter().filter(|&&b| b != 0) {
                        parts[np] = b;
                        np += 1;
                    }
                    if np > 1 {
                        self.replace(c, &parts[..np]);
                        continue 'restart;
                    }
                }
            }
            return;
        }
    }

    /// Vertices in cell order; only meaningful once discrete.
    fn labels(&self) -> [u8; MAX_ORDER] {
        let mut lab = [0u8; MAX_ORDER];
        for (l, cell) in lab.iter_mut().zip(&self.cells[..self.len]) {
            *l = cell.trailing_zeros() as u8;
        }
        lab
    }
}

fn triangle_code(g: &Graph, lab: &[u8]) -> u128 {
    let n = g.order();
    let mut code = 0u128;
    let mut idx = 0;
    for j in 1..n {
        let row = g.row(lab[j] as usize);
        for &li in &lab[..j] {
            if row & (1 << li) != 0 {
                code |= 1u128 << (127 - idx);
            }
            idx += 1;
        }
    }
    code
}

struct Leaf {
    code: u128,
    lab: [u8; MAX_ORDER],
    path: Vec<u8>,
}

const MAX_GENERATORS: usize = 256;

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<[u8; MAX_ORDER]>,
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn record_automorphism(&mut self, from: &[u8; MAX_ORDER], to: &[u8; MAX_ORDER]) {
        if self.automorphisms.len() >= MAX_GENERATORS {
            return;
        }
        let mut perm = [0u8; MAX_ORDER];
        for i in 0..self.n {
            perm[from[i] as usize] = to[i];
        }
        if (0..self.n).all(|v| perm[v] as usize == v) {
            return;
        }
        self.automorphisms.push(perm);
    }

    /// Orbit representative of every vertex under the automorphisms found so
    /// far that fix `prefix` pointwise.
    fn orbits(&self, prefix: &[u8]) -> [u8; MAX_ORDER] {
        let mut parent = [0u8; MAX_ORDER];
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v as u8;
        }
        fn find(parent: &mut [u8; MAX_ORDER], mut v: u8) -> u8 {
            while parent[v as usize] != v {
                parent[v as usize] = parent[parent[v as usize] as usize];
                v = parent[v as usize];
            }
            v
        }
        for perm in &self.automorphisms {
            if prefix.iter().any(|&p| perm[p as usize] != p) {
                continue;
            }
            for (v, &w) in perm.iter().enumerate().take(self.n) {
                let a = find(&mut parent, v as u8);
                let b = find(&mut parent, w);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let mut rep = [0u8; MAX_ORDER];
        for (v, r) in rep.iter_mut().enumerate().take(self.n) {
            *r = find(&mut parent, v as u8);
        }
        rep
    }

    /// Returns `Some(depth)` to abandon every node deeper than `depth`.
    fn visit(&mut self, p: Partition, path: &mut Vec<u8>) -> Option<usize> {
        if p.is_discrete(self.n) {
            return self.leaf(p.labels(), path);
        }
        let at = p.first_nonsingleton().expect("non-discrete partition");
        let depth = path.len();
        let mut tried: u16 = 0;
        for v in bits(p.cells[at]) {
            if tried != 0 {
                let rep = self.orbits(path);
                if bits(tried).any(|t| rep[t] == rep[v]) {
                    continue;
                }
            }
            tried |= 1 << v;
            let mut child = p;
            child.individualize(at, v);
            child.refine(self.g);
            path.push(v as u8);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: [u8; MAX_ORDER], path: &[u8]) -> Option<usize> {
        let code = triangle_code(self.g, &lab[..self.n]);
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                code,
                lab,
                path: path.to_vec(),
            });
            self.best = Some(Leaf {
                code,
                lab,
                path: path.to_vec(),
            });
            return None;
        };
        if code == first.code {
            let (flab, fpath) = (first.lab, first.path.clone());
            self.record_automorphism(&flab, &lab);
            return Some(common_prefix(&fpath, path));
        }
        let best = self.best.as_ref().expect("best set with first");
        if code == best.code {
            let (blab, bpath) = (best.lab, best.path.clone());
            self.record_automorphism(&blab, &lab);
            return Some(common_prefix(&bpath, path));
        }
        if code < best.code {
            self.best = Some(Leaf {
                code,
                lab,
                path: path.to_vec(),
            });
        }
        None
    }
}

/// Canonical code and the relabeling that realizes it.
pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let n = g.order();
    let mut p = Partition::unit(g);
    p.refine(g);
    let mut search = Search {
        g,
        n,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.visit(p, &mut Vec::with_capacity(n));
    let best = search.best.expect("search visits at least one leaf");
    let mut images = vec![0; n];
    for (pos, &v) in best.lab[..n].iter().enumerate() {
        images[v as usize] = pos;
    }
    CanonicalLabeling {
        code: CanonicalCode {
            order: n as u8,
            triangle: best.code,
        },
        map: VertexMap { images },
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    canonical_labeling(g).code
}

/// Cheap isomorphism invariants: sorted degree sequence and sorted multiset of
/// sorted neighbour-degree lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    order: usize,
    edges: usize,
    degrees: Vec<u8>,
    neighbour_degrees: Vec<Vec<u8>>,
}

impl Invariants {
    pub fn of(g: &Graph) -> Self {
        let deg: Vec<u8> = (0..g.order()).map(|v| g.degree(v) as u8).collect();
        let mut degrees = deg.clone();
        degrees.sort_unstable();
        let mut neighbour_degrees: Vec<Vec<u8>> = (0..g.order())
            .map(|v| {
                let mut d: Vec<u8> = bits(g.row(v)).map(|u| deg[u]).collect();
                d.sort_unstable();
                d.insert(0, deg[v]);
                d
            })
            .collect();
        neighbour_degrees.sort_unstable();
        Invariants {
            order: g.order(),
            edges: g.edge_count(),
            degrees,
            neighbour_degrees,
        }
    }
}

/// Isomorphism tester with the canonical labeling of a fixed graph cached.
pub struct IsoMatcher {
    graph: Graph,
    invariants: Invariants,
    labeling: CanonicalLabeling,
}

impl IsoMatcher {
    pub fn new(g: &Graph) -> Self {
        IsoMatcher {
            graph: *g,
            invariants: Invariants::of(g),
            labeling: canonical_labeling(g),
        }
    }

    pub fn code(&self) -> CanonicalCode {
        self.labeling.code
    }

    /// A verified map sending the fixed graph onto `h`, if isomorphic.
    pub fn match_graph(&self, h: &Graph) -> Option<VertexMap> {
        if h.order() != self.graph.order() || h.edge_count() != self.graph.edge_count() {
            return None;
        }
        if Invariants::of(h) != self.invariants {
            return None;
        }
        let lh = canonical_labeling(h);
        if lh.code != self.labeling.code {
            return None;
        }
        // g -> canonical -> h
        let to_h = lh.map.inverse();
        let images = self
            .labeling
            .map
            .images()
            .iter()
            .map(|&c| to_h.image(c))
            .collect();
        let map = VertexMap { images };
        assert!(
            map.is_isomorphism(&self.graph, h),
            "canonical labeling produced an invalid isomorphism"
        );
        Some(map)
    }
}

/// A map sending `g` onto `h`, or `None` when they are not isomorphic.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    IsoMatcher::new(g).match_graph(h)
}
