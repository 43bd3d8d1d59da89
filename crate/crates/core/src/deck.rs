//! Edge decks and sub-deck enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::iso::{canonical_form, CanonicalCode};

/// One isomorphism class of edge-cards.
#[derive(Debug, Clone)]
pub struct CardClass {
    pub multiplicity: usize,
    /// First deleted edge (lexicographically) producing this card.
    pub edge: Edge,
    /// The host with `edge` removed; all vertices are kept.
    pub card: Graph,
}

/// The multiset of edge-deleted subgraphs of a graph, grouped by class.
#[derive(Debug, Clone)]
pub struct EdgeDeck {
    classes: BTreeMap<CanonicalCode, CardClass>,
    host_order: usize,
    host_edge_count: usize,
}

/// Card code of every edge, in edge order.
pub fn card_codes(g: &Graph) -> Vec<(Edge, CanonicalCode)> {
    g.edges()
        .into_iter()
        .map(|e| (e, canonical_form(&g.without_edge(e))))
        .collect()
}

/// Multiplicity of each card class without keeping representatives.
pub(crate) fn deck_counts(g: &Graph) -> BTreeMap<CanonicalCode, usize> {
    let mut counts = BTreeMap::new();
    for e in g.edges() {
        *counts
            .entry(canonical_form(&g.without_edge(e)))
            .or_insert(0) += 1;
    }
    counts
}

pub fn edge_deck(g: &Graph) -> Result<EdgeDeck> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut classes: BTreeMap<CanonicalCode, CardClass> = BTreeMap::new();
    for (e, code) in card_codes(g) {
        classes
            .entry(code)
            .and_modify(|c| c.multiplicity += 1)
            .or_insert_with(|| CardClass {
                multiplicity: 1,
                edge: e,
                card: g.without_edge(e),
            });
    }
    Ok(EdgeDeck {
        classes,
        host_order: g.order(),
        host_edge_count: g.edge_count(),
    })
}

pub fn is_removal_similar(g: &Graph) -> Result<bool> {
    Ok(edge_deck(g)?.class_count() == 1)
}

impl EdgeDeck {
    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn host_edge_count(&self) -> usize {
        self.host_edge_count
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes in canonical-code order.
    pub fn classes(&self) -> impl Iterator<Item = (&CanonicalCode, &CardClass)> {
        self.classes.iter()
    }

    pub fn class(&self, code: &CanonicalCode) -> Option<&CardClass> {
        self.classes.get(code)
    }

    pub fn multiplicity(&self, code: &CanonicalCode) -> usize {
        self.classes.get(code).map_or(0, |c| c.multiplicity)
    }

    /// The whole deck as a sub-deck.
    pub fn full(&self) -> SubDeck {
        SubDeck {
            counts: self
                .classes
                .iter()
                .map(|(c, k)| (*c, k.multiplicity))
                .collect(),
        }
    }

    pub fn contains(&self, s: &SubDeck) -> bool {
        s.counts
            .iter()
            .all(|(code, &n)| n >= 1 && n <= self.multiplicity(code))
    }

    /// Every sub-multiset of size `k`, each once.
    ///
    /// Count vectors over the classes (in code order) are produced in
    /// descending lexicographic order, so the first sub-deck takes as many
    /// cards as possible from the first class.
    pub fn subdecks(&self, k: usize) -> Result<SubDecks<'_>> {
        if k == 0 || k > self.host_edge_count {
            return Err(Error::SizeOutOfRange {
                size: k,
                max: self.host_edge_count,
            });
        }
        let caps: Vec<usize> = self.classes.values().map(|c| c.multiplicity).collect();
        let mut counts = vec![0; caps.len()];
        fill_greedy(&mut counts, &caps, 0, k);
        Ok(SubDecks {
            deck: self,
            caps,
            counts: Some(counts),
        })
    }
}

pub fn enumerate_subdecks(d: &EdgeDeck, k: usize) -> Result<SubDecks<'_>> {
    d.subdecks(k)
}

fn fill_greedy(counts: &mut [usize], caps: &[usize], from: usize, mut remaining: usize) {
    for i in from..counts.len() {
        counts[i] = caps[i].min(remaining);
        remaining -= counts[i];
    }
    debug_assert_eq!(remaining, 0);
}

/// Lazy stream of sub-decks; see [`EdgeDeck::subdecks`].
pub struct SubDecks<'a> {
    deck: &'a EdgeDeck,
    caps: Vec<usize>,
    counts: Option<Vec<usize>>,
}

impl Iterator for SubDecks<'_> {
    type Item = SubDeck;

    fn next(&mut self) -> Option<SubDeck> {
        let counts = self.counts.as_mut()?;
        let out = SubDeck {
            counts: self
                .deck
                .classes
                .keys()
                .zip(counts.iter())
                .filter(|(_, &n)| n > 0)
                .map(|(c, &n)| (*c, n))
                .collect(),
        };
        // step to the next vector in descending lexicographic order
        let len = counts.len();
        let mut advanced = false;
        let mut suffix_sum = 0;
        let mut suffix_cap = 0;
        for i in (0..len).rev() {
            if counts[i] > 0 && i + 1 < len && suffix_cap > suffix_sum {
                counts[i] -= 1;
                fill_greedy(counts, &self.caps, i + 1, suffix_sum + 1);
                advanced = true;
                break;
            }
            suffix_sum += counts[i];
            suffix_cap += self.caps[i];
        }
        if !advanced {
            self.counts = None;
        }
        Some(out)
    }
}

/// A multiset of edge-cards, by class code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubDeck {
    counts: BTreeMap<CanonicalCode, usize>,
}

impl SubDeck {
    pub fn from_counts(counts: impl IntoIterator<Item = (CanonicalCode, usize)>) -> Self {
        SubDeck {
            counts: counts.into_iter().filter(|&(_, n)| n > 0).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> impl Iterator<Item = (&CanonicalCode, usize)> {
        self.counts.iter().map(|(c, &n)| (c, n))
    }

    pub fn count(&self, code: &CanonicalCode) -> usize {
        self.counts.get(code).copied().unwrap_or(0)
    }

    /// Class with the smallest code.
    pub fn first_class(&self) -> Option<&CanonicalCode> {
        self.counts.keys().next()
    }

    /// Multiset containment in a deck given as class counts.
    pub fn is_contained_in(&self, deck: &BTreeMap<CanonicalCode, usize>) -> bool {
        self.counts
            .iter()
            .all(|(c, &n)| deck.get(c).is_some_and(|&m| m >= n))
    }

    /// True when `self` is a sub-multiset of `other`.
    pub fn is_submultiset_of(&self, other: &SubDeck) -> bool {
        self.is_contained_in(&other.counts)
    }
}

impl fmt::Display for SubDeck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(c, n)| format!("{}x{}", crate::codec::encode(&c.graph()), n))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
