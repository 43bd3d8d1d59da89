//! Brute-force reference implementations for small graphs.
//!
//! Nothing here calls the library's isomorphism, deck or swap code: graphs
//! are bitmasks over vertex pairs and isomorphism is decided by trying every
//! permutation.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use edgerecon::{Graph, SwapWitness};

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Pair indexing for graphs on `n` vertices: bit `index[u][v]` of a mask is
/// the pair `{u, v}`.
#[derive(Clone)]
pub struct Pairs {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    index: Vec<Vec<usize>>,
}

impl Pairs {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::new();
        let mut index = vec![vec![usize::MAX; n]; n];
        for v in 1..n {
            for u in 0..v {
                pairs.push((u, v));
            }
        }
        for (i, &(u, v)) in pairs.iter().enumerate() {
            index[u][v] = i;
            index[v][u] = i;
        }
        Pairs { n, pairs, index }
    }

    pub fn bit(&self, u: usize, v: usize) -> usize {
        self.index[u][v]
    }

    pub fn mask_of(&self, g: &Graph) -> u32 {
        let mut mask = 0;
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if g.adjacent(u, v) {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn graph_of(&self, mask: u32) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(self.n, &edges).unwrap()
    }

    pub fn permute(&self, mask: u32, p: &[usize]) -> u32 {
        let mut out = 0;
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out |= 1 << self.bit(p[u], p[v]);
            }
        }
        out
    }

    pub fn is_connected(&self, mask: u32) -> bool {
        let mut seen = 1u32;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for y in 0..self.n {
                if seen >> y & 1 == 0 && x != y && mask >> self.bit(x, y) & 1 == 1 {
                    seen |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        seen.count_ones() as usize == self.n
    }
}

/// Some permutation carrying `a` onto `b`, by exhaustion.
pub fn brute_iso(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.order();
    permutations(n)
        .into_iter()
        .find(|p| (0..n).all(|u| (u + 1..n).all(|v| a.adjacent(u, v) == b.adjacent(p[u], p[v]))))
}

/// Every labeled graph on `n ≤ 6` vertices, grouped into isomorphism
/// classes. The class representative is the smallest mask in the orbit.
pub struct Census {
    pub pairs: Pairs,
    pub canon: Vec<u32>,
    pub classes: Vec<u32>,
}

impl Census {
    pub fn new(n: usize) -> Self {
        assert!(n <= 6);
        let pairs = Pairs::new(n);
        let size = 1usize << pairs.pairs.len();
        let perms = permutations(n);
        let mut canon = vec![u32::MAX; size];
        let mut classes = Vec::new();
        for mask in 0..size as u32 {
            if canon[mask as usize] != u32::MAX {
                continue;
            }
            classes.push(mask);
            for p in &perms {
                canon[pairs.permute(mask, p) as usize] = mask;
            }
        }
        Census {
            pairs,
            canon,
            classes,
        }
    }

    pub fn canon_of(&self, g: &Graph) -> u32 {
        self.canon[self.pairs.mask_of(g) as usize]
    }

    /// Sorted canonical cards.
    pub fn deck(&self, mask: u32) -> Vec<u32> {
        let mut d: Vec<u32> = (0..self.pairs.pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.canon[(mask & !(1 << i)) as usize])
            .collect();
        d.sort_unstable();
        d
    }

    /// Classes other than `host` whose deck contains `s`.
    pub fn blockers(&self, host: u32, s: &[u32], connected_only: bool) -> BTreeSet<u32> {
        let host = self.canon[host as usize];
        let m = host.count_ones();
        self.classes
            .iter()
            .copied()
            .filter(|&h| h != host && h.count_ones() == m)
            .filter(|&h| !connected_only || self.pairs.is_connected(h))
            .filter(|&h| contains(&self.deck(h), s))
            .collect()
    }

    /// Distinct sub-multisets of size `k` of a sorted deck.
    pub fn subdecks(deck: &[u32], k: usize) -> BTreeSet<Vec<u32>> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in deck {
            *counts.entry(c).or_default() += 1;
        }
        let items: Vec<(u32, usize)> = counts.into_iter().collect();
        let mut out = BTreeSet::new();
        fn go(items: &[(u32, usize)], k: usize, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
            if k == 0 {
                out.insert(cur.clone());
                return;
            }
            let Some((&(c, avail), rest)) = items.split_first() else {
                return;
            };
            for take in (0..=avail.min(k)).rev() {
                cur.extend(std::iter::repeat_n(c, take));
                go(rest, k - take, cur, out);
                cur.truncate(cur.len() - take);
            }
        }
        go(&items, k, &mut Vec::new(), &mut out);
        out
    }

    /// Smallest k with an unblocked size-k sub-deck; `None` when even the
    /// full deck is blocked.
    pub fn ern(&self, g: &Graph, connected_only: bool) -> Option<usize> {
        let mask = self.canon_of(g);
        let deck = self.deck(mask);
        if !self.blockers(mask, &deck, connected_only).is_empty() {
            return None;
        }
        (1..=deck.len()).find(|&k| {
            Self::subdecks(&deck, k)
                .iter()
                .any(|s| self.blockers(mask, s, connected_only).is_empty())
        })
    }
}

/// Multiset containment of sorted slices.
pub fn contains(big: &[u32], small: &[u32]) -> bool {
    let mut i = 0;
    for &x in small {
        while i < big.len() && big[i] < x {
            i += 1;
        }
        if i == big.len() || big[i] != x {
            return false;
        }
        i += 1;
    }
    true
}

fn edge_list(g: &Graph) -> BTreeSet<(usize, usize)> {
    let n = g.order();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| g.adjacent(u, v))
        .collect()
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Replays a witness with plain edge lists: `A ⊆ E`, `B` outside `E`,
/// `|A| = |B| ≥ 1`, and the map is a bijection sending `E` onto
/// `E - A + B`.
pub fn replay(g: &Graph, w: &SwapWitness) -> bool {
    let e = edge_list(g);
    let a: BTreeSet<_> = w.removed().iter().map(|x| norm(x.u(), x.v())).collect();
    let b: BTreeSet<_> = w.added().iter().map(|x| norm(x.u(), x.v())).collect();
    if a.is_empty() || a.len() != b.len() || !a.is_subset(&e) || !b.is_disjoint(&e) {
        return false;
    }
    if b.iter().any(|&(u, v)| u == v || v >= g.order()) {
        return false;
    }
    let h: BTreeSet<_> = e.difference(&a).chain(b.iter()).copied().collect();
    let p = w.iso_map().images();
    let mut seen = vec![false; g.order()];
    if p.len() != g.order()
        || p.iter()
            .any(|&x| x >= g.order() || std::mem::replace(&mut seen[x], true))
    {
        return false;
    }
    let image: BTreeSet<_> = e.iter().map(|&(u, v)| norm(p[u], p[v])).collect();
    image == h
}
