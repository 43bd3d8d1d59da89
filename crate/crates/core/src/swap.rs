//! k-swappability: replacing a set of edges by the same number of non-edges
//! so that the result is isomorphic to the original graph.

use std::collections::BTreeMap;

use crate::deck::card_codes;
use crate::error::{Error, Result};
use crate::families::{generate, is_hamiltonian_cycle, FamilyInstance, FamilyKind};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::iso::{CanonicalCode, IsoMatcher, VertexMap};

/// Certificate that `G - removed + added` is isomorphic to `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapWitness {
    removed: EdgeSet,
    added: EdgeSet,
    iso_map: VertexMap,
}

impl SwapWitness {
    /// Build a witness, checking every invariant against `g`.
    pub fn certify(
        g: &Graph,
        removed: EdgeSet,
        added: EdgeSet,
        iso_map: VertexMap,
    ) -> Result<Self> {
        let w = SwapWitness {
            removed,
            added,
            iso_map,
        };
        if w.verify(g) {
            Ok(w)
        } else {
            Err(Error::WitnessRejected(format!(
                "A = {}, B = {}, map = {}",
                w.removed, w.added, w.iso_map
            )))
        }
    }

    pub fn removed(&self) -> &EdgeSet {
        &self.removed
    }

    pub fn added(&self) -> &EdgeSet {
        &self.added
    }

    pub fn iso_map(&self) -> &VertexMap {
        &self.iso_map
    }

    pub fn size(&self) -> usize {
        self.removed.len()
    }

    /// Replay the witness: `A ⊆ E(g)`, `B ⊆ E(ḡ)`, `|A| = |B|`, and the map
    /// sends `g` exactly onto `g - A + B`.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.removed.len() != self.added.len() || !self.removed.is_disjoint(&self.added) {
            return false;
        }
        let Ok(swapped) = g
            .remove_edges(&self.removed)
            .and_then(|h| h.add_edges(&self.added))
        else {
            return false;
        };
        self.iso_map.is_isomorphism(g, &swapped)
    }
}

#[derive(Debug, Clone)]
pub enum SwapNumberResult {
    Finite {
        k: usize,
        witnesses: BTreeMap<Edge, SwapWitness>,
    },
    InfiniteProven,
    UnknownBeyondCap(usize),
}

impl SwapNumberResult {
    /// "2", "inf" or ">cap".
    pub fn render(&self) -> String {
        match self {
            SwapNumberResult::Finite { k, .. } => k.to_string(),
            SwapNumberResult::InfiniteProven => "inf".to_string(),
            SwapNumberResult::UnknownBeyondCap(cap) => format!(">{cap}"),
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            SwapNumberResult::Finite { k, .. } => Some(*k),
            _ => None,
        }
    }
}

/// Visit the k-subsets of `0..n` in lexicographic order until `visit`
/// returns `Some`.
fn first_combination<T>(
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if let Some(t) = visit(&idx) {
            return Some(t);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive swap search around a fixed graph.
pub(crate) struct SwapSearch {
    g: Graph,
    matcher: IsoMatcher,
    edges: Vec<Edge>,
    non_edges: Vec<Edge>,
    sorted_degrees: Vec<u8>,
}

impl SwapSearch {
    pub(crate) fn new(g: &Graph) -> Self {
        let mut sorted_degrees: Vec<u8> = g.degrees().into_iter().map(|d| d as u8).collect();
        sorted_degrees.sort_unstable();
        SwapSearch {
            g: *g,
            matcher: IsoMatcher::new(g),
            edges: g.edges(),
            non_edges: g.non_edges(),
            sorted_degrees,
        }
    }

    /// Degree multiset of `g - a + b` equals that of `g`.
    fn degrees_preserved(&self, a: &[Edge], b: &[Edge]) -> bool {
        let mut deg = [0i8; 16];
        for (v, d) in deg.iter_mut().enumerate().take(self.g.order()) {
            *d = self.g.degree(v) as i8;
        }
        for e in a {
            deg[e.u()] -= 1;
            deg[e.v()] -= 1;
        }
        for e in b {
            deg[e.u()] += 1;
            deg[e.v()] += 1;
        }
        let n = self.g.order();
        let mut d: Vec<u8> = deg[..n].iter().map(|&x| x as u8).collect();
        d.sort_unstable();
        d == self.sorted_degrees
    }

    /// Try `g - a + b`.
    pub(crate) fn try_swap(&self, a: &[Edge], b: &[Edge]) -> Option<SwapWitness> {
        if !self.degrees_preserved(a, b) {
            return None;
        }
        let mut h = self.g;
        for &e in a {
            h = h.without_edge(e);
        }
        for &e in b {
            h = h.with_edge(e);
        }
        let map = self.matcher.match_graph(&h)?;
        let w = SwapWitness::certify(
            &self.g,
            a.iter().copied().collect(),
            b.iter().copied().collect(),
            map,
        )
        .expect("matcher returned a verified isomorphism");
        Some(w)
    }

    /// First witness with `e ∈ A` and `|A| ≤ k`, smallest `|A|` first, then
    /// companion edges of `A` and the edges of `B` in lexicographic order.
    pub(crate) fn find(&self, e: Edge, k: usize) -> Option<SwapWitness> {
        let others: Vec<Edge> = self.edges.iter().copied().filter(|&f| f != e).collect();
        let max = k.min(self.edges.len()).min(self.non_edges.len());
        (1..=max).find_map(|size| {
            first_combination(others.len(), size - 1, |ai| {
                let mut a: Vec<Edge> = Vec::with_capacity(size);
                a.push(e);
                a.extend(ai.iter().map(|&i| others[i]));
                self.find_with_removed(&a)
            })
        })
    }

    /// Some witness with `A = a` exactly and `|B| = |a|`.
    pub(crate) fn find_with_removed(&self, a: &[Edge]) -> Option<SwapWitness> {
        first_combination(self.non_edges.len(), a.len(), |bi| {
            let b: Vec<Edge> = bi.iter().map(|&i| self.non_edges[i]).collect();
            self.try_swap(a, &b)
        })
    }
}

pub fn find_swap(g: &Graph, e: Edge, k: usize) -> Result<Option<SwapWitness>> {
    if !g.has_edge(e) {
        return Err(Error::EdgeNotPresent(e));
    }
    if k == 0 {
        return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
    }
    Ok(SwapSearch::new(g).find(e, k))
}

/// A witness for every edge if `g` is k-swappable.
pub fn is_k_swappable(g: &Graph, k: usize) -> Result<Option<BTreeMap<Edge, SwapWitness>>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 {
        return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
    }
    let search = SwapSearch::new(g);
    let mut out = BTreeMap::new();
    for e in g.edges() {
        match search.find(e, k) {
            Some(w) => {
                out.insert(e, w);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Least k for which `g` is k-swappable, searching up to `cap` (clamped to
/// the edge count).
///
/// Infinity is reported only when it is certain: the complement is empty,
/// or the search was exhaustive because `cap` reached the edge count or the
/// non-edge count.
pub fn swapping_number(g: &Graph, cap: usize) -> Result<SwapNumberResult> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    if cap == 0 {
        return Err(Error::ParameterOutOfRange("cap must be at least 1".into()));
    }
    if g.complement().edge_count() == 0 {
        return Ok(SwapNumberResult::InfiniteProven);
    }
    let cap = cap.min(m);
    let search = SwapSearch::new(g);
    let mut witnesses = BTreeMap::new();
    let mut k = 0;
    for e in g.edges() {
        // smallest swap through e, since sizes are tried in increasing order
        match search.find(e, cap) {
            Some(w) => {
                k = k.max(w.size());
                witnesses.insert(e, w);
            }
            // |B| = |A| is bounded by the non-edge count too
            None if cap >= m.min(search.non_edges.len()) => {
                return Ok(SwapNumberResult::InfiniteProven)
            }
            None => return Ok(SwapNumberResult::UnknownBeyondCap(cap)),
        }
    }
    Ok(SwapNumberResult::Finite { k, witnesses })
}

fn partner(removed: &EdgeSet, x: usize) -> usize {
    removed
        .iter()
        .find(|e| e.contains(x))
        .map(|e| if e.u() == x { e.v() } else { e.u() })
        .expect("perfect matching covers every vertex")
}

/// The explicit two-edge swap for an edge of a generated matching or
/// Hamiltonian-cycle family instance.
///
/// Matching families: with `u' = M(u)` and `v' = M(v)`, remove `{uv, u'v'}`,
/// add `{uu', vv'}`, and the transposition of `u` and `v'` is the
/// isomorphism.
///
/// Hamiltonian families: `uv` splits the removed cycle `H` into two paths;
/// `u'` and `v'` are the neighbours of `u` and `v` taken in the same cyclic
/// direction. Then `H' = H - {uu', vv'} + {uv, u'v'}` is again a Hamiltonian
/// cycle of the host, the swapped graph is the host minus `H'`, and the
/// isomorphism is read off by aligning `H` with `H'`. The opposite direction
/// is tried if the first fails verification.
pub fn swap_witness_family(inst: &FamilyInstance, e: Edge) -> Result<SwapWitness> {
    let fresh = generate(inst.kind)?;
    if fresh.graph != inst.graph || fresh.removed != inst.removed {
        return Err(Error::NotAFamilyInstance(inst.kind.to_string()));
    }
    let g = &inst.graph;
    if !g.has_edge(e) {
        return Err(Error::EdgeNotPresent(e));
    }
    match inst.kind {
        FamilyKind::KnMinusMatching(n) if n < 4 => Err(Error::SizeOutOfTheoremRange(n)),
        FamilyKind::KnnMinusMatching(n) if n < 2 => Err(Error::SizeOutOfTheoremRange(n)),
        FamilyKind::KnMinusHamiltonian(n) if n < 5 => Err(Error::SizeOutOfTheoremRange(n)),
        FamilyKind::KnnMinusHamiltonian(n) if n < 4 => Err(Error::SizeOutOfTheoremRange(n)),
        FamilyKind::KnMinusMatching(_) | FamilyKind::KnnMinusMatching(_) => {
            // for K_{n,n} the lower endpoint is in U, so u and v' share a part
            let (u, v) = e.endpoints();
            let (u2, v2) = (partner(&inst.removed, u), partner(&inst.removed, v));
            let removed: EdgeSet = [e, Edge::unchecked(u2, v2)].into_iter().collect();
            let added: EdgeSet = [Edge::unchecked(u, u2), Edge::unchecked(v, v2)]
                .into_iter()
                .collect();
            let map = VertexMap::transposition(g.order(), u, v2);
            SwapWitness::certify(g, removed, added, map)
        }
        FamilyKind::KnMinusHamiltonian(_) | FamilyKind::KnnMinusHamiltonian(_) => {
            let seq = inst
                .cycle
                .as_ref()
                .expect("Hamiltonian family records its cycle");
            hamiltonian_witness(g, &inst.removed, seq, e)
        }
        other => Err(Error::NotAFamilyInstance(other.to_string())),
    }
}

fn hamiltonian_witness(g: &Graph, h: &EdgeSet, seq: &[usize], e: Edge) -> Result<SwapWitness> {
    let len = seq.len();
    let mut pos = vec![0; len];
    for (i, &x) in seq.iter().enumerate() {
        pos[x] = i;
    }
    let host = g.add_edges(h)?;
    let (u, v) = e.endpoints();
    let mut last_err = None;
    for step in [1, len - 1] {
        let u2 = seq[(pos[u] + step) % len];
        let v2 = seq[(pos[v] + step) % len];
        let cross = Edge::unchecked(u2, v2);
        if u2 == v2 || !g.has_edge(cross) {
            continue;
        }
        let uu2 = Edge::unchecked(u, u2);
        let vv2 = Edge::unchecked(v, v2);
        let rebuilt: EdgeSet = h
            .iter()
            .filter(|&x| x != uu2 && x != vv2)
            .chain([e, cross])
            .collect();
        if !is_hamiltonian_cycle(&rebuilt, &host) {
            continue;
        }
        let rebuilt_seq = walk_cycle(&rebuilt, seq[0], len);
        let mut images = vec![0; len];
        for i in 0..len {
            images[seq[i]] = rebuilt_seq[i];
        }
        let map = VertexMap::from_images(images).expect("cycle walk is a permutation");
        let removed: EdgeSet = [e, cross].into_iter().collect();
        let added: EdgeSet = [uu2, vv2].into_iter().collect();
        match SwapWitness::certify(g, removed, added, map) {
            Ok(w) => return Ok(w),
            Err(err) => last_err = Some(err),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::WitnessRejected(format!("no rebuilt cycle for {e}"))))
}

/// Vertex sequence of a Hamiltonian cycle starting at `start`, leaving
/// through its lower-labeled neighbour.
fn walk_cycle(cycle: &EdgeSet, start: usize, len: usize) -> Vec<usize> {
    let mut nbrs = vec![Vec::with_capacity(2); len];
    for e in cycle.iter() {
        nbrs[e.u()].push(e.v());
        nbrs[e.v()].push(e.u());
    }
    let mut out = vec![start];
    let mut prev = start;
    let mut cur = *nbrs[start]
        .iter()
        .min()
        .expect("cycle vertex has neighbours");
    while cur != start {
        out.push(cur);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        prev = cur;
        cur = next;
    }
    out
}

/// Pairing matrix over removal classes for the two-edge swap relation.
#[derive(Debug, Clone)]
pub struct FullSwapReport {
    /// Card classes in code order with their multiplicities.
    pub classes: Vec<(CanonicalCode, usize)>,
    /// `cells[i][j]` holds a witness swapping one edge of class `i` and one
    /// of class `j`, when one exists.
    pub cells: Vec<Vec<Option<SwapWitness>>>,
}

impl FullSwapReport {
    pub fn holds(&self) -> bool {
        self.cells.iter().flatten().all(Option::is_some)
    }

    /// The matrix as booleans.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        self.cells
            .iter()
            .map(|row| row.iter().map(Option::is_some).collect())
            .collect()
    }
}

/// For every ordered pair of removal classes, look for distinct edges `e`,
/// `f` from those classes and two non-edges whose exchange gives a graph
/// isomorphic to `g`.
pub fn full_2_swappable(g: &Graph) -> Result<FullSwapReport> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let codes = card_codes(g);
    let mut class_index: BTreeMap<CanonicalCode, usize> = BTreeMap::new();
    for (_, c) in &codes {
        let next = class_index.len();
        class_index.entry(*c).or_insert(next);
    }
    // renumber in code order
    for (i, v) in class_index.values_mut().enumerate() {
        *v = i;
    }
    let mut classes: Vec<(CanonicalCode, usize)> = class_index.keys().map(|&c| (c, 0)).collect();
    for (_, c) in &codes {
        classes[class_index[c]].1 += 1;
    }
    let k = classes.len();
    let mut cells: Vec<Vec<Option<SwapWitness>>> = vec![vec![None; k]; k];
    let search = SwapSearch::new(g);
    for i in 0..codes.len() {
        for j in i + 1..codes.len() {
            let (ci, cj) = (class_index[&codes[i].1], class_index[&codes[j].1]);
            if cells[ci][cj].is_some() {
                continue;
            }
            if let Some(w) = search.find_with_removed(&[codes[i].0, codes[j].0]) {
                cells[cj][ci] = Some(w.clone());
                cells[ci][cj] = Some(w);
            }
        }
    }
    Ok(FullSwapReport { classes, cells })
}
