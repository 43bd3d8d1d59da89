//! Generators for the regular families built from complete and complete
//! bipartite graphs, plus a few reference graphs.
//!
//! Labelings are fixed:
//!
//! * `K_n` lives on `0..n`; its perfect matching is `{2i, 2i+1}` and its
//!   Hamiltonian cycle is `0-1-...-(n-1)-0`.
//! * `K_{n,n}` has parts `U = 0..n` and `V = n..2n` with `v_i = n + i`; its
//!   perfect matching is `{u_i, v_i}` and its Hamiltonian cycle is
//!   `u_0 v_0 u_1 v_1 ... u_{n-1} v_{n-1} u_0`.
//!
//! Any two perfect matchings (or Hamiltonian cycles) of `K_n` or `K_{n,n}`
//! are related by an automorphism of the host, so these choices lose no
//! generality.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, MAX_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    KnMinusMatching(usize),
    KnMinusHamiltonian(usize),
    KnnMinusMatching(usize),
    KnnMinusHamiltonian(usize),
    Hypercube(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyKind::KnMinusMatching(n) => write!(f, "K{n}-M"),
            FamilyKind::KnMinusHamiltonian(n) => write!(f, "K{n}-H"),
            FamilyKind::KnnMinusMatching(n) => write!(f, "K{n},{n}-M"),
            FamilyKind::KnnMinusHamiltonian(n) => write!(f, "K{n},{n}-H"),
            FamilyKind::Hypercube(d) => write!(f, "Q{d}"),
            FamilyKind::Cycle(n) => write!(f, "C{n}"),
            FamilyKind::Complete(n) => write!(f, "K{n}"),
            FamilyKind::CompleteBipartite(n, m) => write!(f, "K{n},{m}"),
        }
    }
}

impl FamilyKind {
    pub fn order(&self) -> usize {
        match *self {
            FamilyKind::KnMinusMatching(n)
            | FamilyKind::KnMinusHamiltonian(n)
            | FamilyKind::Cycle(n)
            | FamilyKind::Complete(n) => n,
            FamilyKind::KnnMinusMatching(n) | FamilyKind::KnnMinusHamiltonian(n) => 2 * n,
            FamilyKind::Hypercube(d) => 1usize.checked_shl(d as u32).unwrap_or(usize::MAX),
            FamilyKind::CompleteBipartite(n, m) => n + m,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::ParameterOutOfRange(format!("{self}: {why}")));
        let ok = match *self {
            FamilyKind::KnMinusMatching(n) => {
                if n % 2 == 1 {
                    return bad("odd n has no perfect matching");
                }
                n >= 4
            }
            FamilyKind::KnMinusHamiltonian(n) => n >= 4,
            FamilyKind::KnnMinusMatching(n) => n >= 2,
            FamilyKind::KnnMinusHamiltonian(n) => n >= 3,
            FamilyKind::Hypercube(d) => (1..=4).contains(&d),
            FamilyKind::Cycle(n) => n >= 3,
            FamilyKind::Complete(n) => n >= 1,
            FamilyKind::CompleteBipartite(n, m) => n >= 1 && m >= 1,
        };
        if !ok {
            return bad("size below the family's range");
        }
        if self.order() > MAX_ORDER {
            return bad("order above 16");
        }
        Ok(())
    }

    /// True for the four matching and Hamiltonian-cycle families.
    pub fn has_removed_structure(&self) -> bool {
        matches!(
            self,
            FamilyKind::KnMinusMatching(_)
                | FamilyKind::KnMinusHamiltonian(_)
                | FamilyKind::KnnMinusMatching(_)
                | FamilyKind::KnnMinusHamiltonian(_)
        )
    }
}

/// A generated graph together with the structure removed from its host.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub graph: Graph,
    /// The matching or Hamiltonian cycle deleted from the host; empty for
    /// the reference families.
    pub removed: EdgeSet,
    /// The removed Hamiltonian cycle as a vertex sequence, starting at 0.
    pub cycle: Option<Vec<usize>>,
}

fn complete_graph(n: usize) -> Graph {
    Graph::empty(n).expect("checked order").complement()
}

fn complete_bipartite(n: usize, m: usize) -> Graph {
    let mut g = Graph::empty(n + m).expect("checked order");
    for u in 0..n {
        for v in n..n + m {
            g.set(u, v);
        }
    }
    g
}

fn cycle_edges(seq: &[usize]) -> EdgeSet {
    (0..seq.len())
        .map(|i| Edge::unchecked(seq[i], seq[(i + 1) % seq.len()]))
        .collect()
}

pub fn generate(kind: FamilyKind) -> Result<FamilyInstance> {
    kind.check()?;
    let mut cycle = None;
    let (graph, removed) = match kind {
        FamilyKind::KnMinusMatching(n) => {
            let m: EdgeSet = (0..n / 2)
                .map(|i| Edge::unchecked(2 * i, 2 * i + 1))
                .collect();
            (complete_graph(n).remove_edges(&m)?, m)
        }
        FamilyKind::KnMinusHamiltonian(n) => {
            let seq: Vec<usize> = (0..n).collect();
            let h = cycle_edges(&seq);
            cycle = Some(seq);
            (complete_graph(n).remove_edges(&h)?, h)
        }
        FamilyKind::KnnMinusMatching(n) => {
            let m: EdgeSet = (0..n).map(|i| Edge::unchecked(i, n + i)).collect();
            (complete_bipartite(n, n).remove_edges(&m)?, m)
        }
        FamilyKind::KnnMinusHamiltonian(n) => {
            let seq: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
            let h = cycle_edges(&seq);
            cycle = Some(seq);
            (complete_bipartite(n, n).remove_edges(&h)?, h)
        }
        FamilyKind::Hypercube(d) => {
            let n = 1usize << d;
            let mut g = Graph::empty(n)?;
            for v in 0..n {
                for b in 0..d {
                    g.set(v, v ^ (1 << b));
                }
            }
            (g, EdgeSet::new())
        }
        FamilyKind::Cycle(n) => {
            let seq: Vec<usize> = (0..n).collect();
            let g = Graph::empty(n)?.add_edges(&cycle_edges(&seq))?;
            (g, EdgeSet::new())
        }
        FamilyKind::Complete(n) => (complete_graph(n), EdgeSet::new()),
        FamilyKind::CompleteBipartite(n, m) => (complete_bipartite(n, m), EdgeSet::new()),
    };
    Ok(FamilyInstance {
        kind,
        graph,
        removed,
        cycle,
    })
}

/// `K_{n,m}` minus `g`, where `part_a` marks the vertices of the first part.
pub fn bipartite_complement(g: &Graph, part_sizes: (usize, usize), part_a: u16) -> Result<Graph> {
    let (n, m) = part_sizes;
    if n + m != g.order() || part_a & !g.vertex_mask() != 0 || part_a.count_ones() as usize != n {
        return Err(Error::NotBipartiteWithGivenParts);
    }
    let part_b = g.vertex_mask() & !part_a;
    let mut out = Graph::empty(g.order())?;
    for v in 0..g.order() {
        let (own, other) = if part_a & (1 << v) != 0 {
            (part_a, part_b)
        } else {
            (part_b, part_a)
        };
        if g.row(v) & own != 0 {
            return Err(Error::NotBipartiteWithGivenParts);
        }
        for u in crate::graph::bits(other & !g.row(v)) {
            out.set(v, u);
        }
    }
    Ok(out)
}

/// True when `edges` is a perfect matching of the vertices in `mask`.
pub fn is_perfect_matching(edges: &EdgeSet, mask: u16) -> bool {
    let mut covered = 0u16;
    for e in edges.iter() {
        let bits = (1u16 << e.u()) | (1u16 << e.v());
        if covered & bits != 0 {
            return false;
        }
        covered |= bits;
    }
    covered == mask
}

/// True when `edges` forms one cycle through every vertex of `host`, using
/// only edges of `host`.
pub fn is_hamiltonian_cycle(edges: &EdgeSet, host: &Graph) -> bool {
    let n = host.order();
    if edges.len() != n || n < 3 || !edges.iter().all(|e| host.has_edge(e)) {
        return false;
    }
    let mut sub = Graph::empty(n).expect("host order is valid");
    for e in edges.iter() {
        sub.set(e.u(), e.v());
    }
    sub.regular_degree() == Some(2) && sub.is_connected()
}
