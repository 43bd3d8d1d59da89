//! Blockers and edge reconstruction numbers.
//!
//! A blocker of a sub-deck `S` of `G`'s edge-deck is a graph `H ≇ G` whose
//! own deck contains `S`. Every such `H` has `G`'s order and edge count and
//! contains each card of `S` as `H - e`, so all blockers are found by taking
//! one card and adding back each of its non-edges.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::deck::{deck_counts, edge_deck, is_removal_similar, EdgeDeck, SubDeck};
use crate::error::{Error, Result};
use crate::families::{generate, FamilyKind};
use crate::graph::{Edge, Graph};
use crate::iso::{canonical_form, CanonicalCode};
use crate::swap::{is_k_swappable, swapping_number, SwapNumberResult};

/// Which graphs may act as blockers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Universe {
    #[default]
    AllSimple,
    ConnectedOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerCertificate {
    pub subdeck: SubDeck,
    pub blocker: Graph,
    pub blocker_code: CanonicalCode,
}

impl BlockerCertificate {
    /// Recompute the blocker's deck and re-check both conditions.
    pub fn verify(&self, host: &Graph) -> bool {
        canonical_form(&self.blocker) == self.blocker_code
            && self.blocker_code != canonical_form(host)
            && self.subdeck.is_contained_in(&deck_counts(&self.blocker))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErnResult {
    Exact { value: usize, witness: SubDeck },
    NotReconstructableFromFullDeck(BlockerCertificate),
    ExceedsCap(usize),
}

impl ErnResult {
    /// "3", ">cap" or "nr".
    pub fn render(&self) -> String {
        match self {
            ErnResult::Exact { value, .. } => value.to_string(),
            ErnResult::ExceedsCap(cap) => format!(">{cap}"),
            ErnResult::NotReconstructableFromFullDeck(_) => "nr".to_string(),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            ErnResult::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// True when the result proves `ern ≥ 3`.
    pub fn at_least_three(&self) -> bool {
        match self {
            ErnResult::Exact { value, .. } => *value >= 3,
            ErnResult::ExceedsCap(cap) => *cap >= 2,
            ErnResult::NotReconstructableFromFullDeck(_) => false,
        }
    }
}

struct Candidate {
    code: CanonicalCode,
    graph: Graph,
    deck: BTreeMap<CanonicalCode, usize>,
}

/// Blocker candidates for every card class of one host graph, with their
/// decks computed once.
pub struct BlockerSearch {
    host_code: CanonicalCode,
    deck: EdgeDeck,
    universe: Universe,
    candidates: BTreeMap<CanonicalCode, Vec<Candidate>>,
}

impl BlockerSearch {
    pub fn new(g: &Graph, universe: Universe) -> Result<Self> {
        let deck = edge_deck(g)?;
        let host_code = canonical_form(g);
        let mut decks: HashMap<CanonicalCode, BTreeMap<CanonicalCode, usize>> = HashMap::new();
        let mut candidates = BTreeMap::new();
        for (class_code, class) in deck.classes() {
            let mut seen = Vec::new();
            let mut list = Vec::new();
            for e in class.card.non_edges() {
                let h = class.card.with_edge(e);
                let code = canonical_form(&h);
                if code == host_code || seen.contains(&code) {
                    continue;
                }
                seen.push(code);
                if universe == Universe::ConnectedOnly && !h.is_connected() {
                    continue;
                }
                let deck = decks.entry(code).or_insert_with(|| deck_counts(&h)).clone();
                list.push(Candidate {
                    code,
                    graph: h,
                    deck,
                });
            }
            list.sort_by_key(|c| c.code);
            candidates.insert(*class_code, list);
        }
        Ok(BlockerSearch {
            host_code,
            deck,
            universe,
            candidates,
        })
    }

    pub fn deck(&self) -> &EdgeDeck {
        &self.deck
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn host_code(&self) -> CanonicalCode {
        self.host_code
    }

    fn pool(&self, s: &SubDeck) -> Result<&[Candidate]> {
        if s.size() == 0 || !self.deck.contains(s) {
            return Err(Error::InvalidSubDeck);
        }
        let first = s.first_class().expect("non-empty sub-deck");
        Ok(&self.candidates[first])
    }

    /// All blockers of `s`, sorted by code.
    pub fn blockers(&self, s: &SubDeck) -> Result<Vec<BlockerCertificate>> {
        Ok(self
            .pool(s)?
            .iter()
            .filter(|c| s.is_contained_in(&c.deck))
            .map(|c| BlockerCertificate {
                subdeck: s.clone(),
                blocker: c.graph,
                blocker_code: c.code,
            })
            .collect())
    }

    /// The blocker with the smallest code, if any.
    pub fn first_blocker(&self, s: &SubDeck) -> Result<Option<BlockerCertificate>> {
        Ok(self
            .pool(s)?
            .iter()
            .find(|c| s.is_contained_in(&c.deck))
            .map(|c| BlockerCertificate {
                subdeck: s.clone(),
                blocker: c.graph,
                blocker_code: c.code,
            }))
    }

    pub fn is_blocked(&self, s: &SubDeck) -> Result<bool> {
        Ok(self.pool(s)?.iter().any(|c| s.is_contained_in(&c.deck)))
    }

    /// Lexicographically first size-`k` sub-deck with no blocker.
    pub fn first_unblocked(&self, k: usize) -> Result<Option<SubDeck>> {
        let subdecks: Vec<SubDeck> = self.deck.subdecks(k)?.collect();
        let pos = subdecks
            .par_iter()
            .position_first(|s| !self.is_blocked(s).expect("enumerated sub-decks are valid"));
        Ok(pos.map(|i| subdecks[i].clone()))
    }
}

pub fn blockers_of(g: &Graph, s: &SubDeck, universe: Universe) -> Result<Vec<BlockerCertificate>> {
    BlockerSearch::new(g, universe)?.blockers(s)
}

/// Edge reconstruction number, searching sub-deck sizes up to `cap`.
pub fn ern(g: &Graph, cap: usize, universe: Universe) -> Result<ErnResult> {
    if cap == 0 {
        return Err(Error::ParameterOutOfRange("cap must be at least 1".into()));
    }
    let search = BlockerSearch::new(g, universe)?;
    ern_with(&search, cap)
}

pub fn ern_with(search: &BlockerSearch, cap: usize) -> Result<ErnResult> {
    let full = search.deck().full();
    if let Some(cert) = search.first_blocker(&full)? {
        return Ok(ErnResult::NotReconstructableFromFullDeck(cert));
    }
    let m = search.deck().host_edge_count();
    for k in 1..=cap.min(m) {
        if let Some(witness) = search.first_unblocked(k)? {
            return Ok(ErnResult::Exact { value: k, witness });
        }
    }
    Ok(ErnResult::ExceedsCap(cap))
}

/// Outcome of checking the removal-similar regular 2-swappable criterion on
/// one graph.
#[derive(Debug, Clone)]
pub struct Theorem2Report {
    pub regular: Option<usize>,
    pub two_swappable: bool,
    pub removal_similar: bool,
    /// One blocker per sub-deck of size 1 and 2; `None` entries are
    /// unblocked sub-decks. Empty when the premises fail.
    pub certificates: Vec<(SubDeck, Option<BlockerCertificate>)>,
    /// `(e, e', H)` with `H = G - e + e'` a blocker of the two-card sub-deck.
    pub swap_blocker: Option<(Edge, Edge, Graph)>,
}

impl Theorem2Report {
    pub fn premises_hold(&self) -> bool {
        self.regular.is_some() && self.two_swappable && self.removal_similar
    }

    /// Every sub-deck of size at most 2 is blocked.
    pub fn ern_at_least_three(&self) -> bool {
        !self.certificates.is_empty() && self.certificates.iter().all(|(_, c)| c.is_some())
    }

    /// Vacuously true when the premises fail.
    pub fn holds(&self) -> bool {
        !self.premises_hold() || (self.ern_at_least_three() && self.swap_blocker.is_some())
    }
}

pub fn verify_theorem2(g: &Graph) -> Theorem2Report {
    let regular = g.regular_degree();
    let m = g.edge_count();
    let mut report = Theorem2Report {
        regular,
        two_swappable: false,
        removal_similar: false,
        certificates: Vec::new(),
        swap_blocker: None,
    };
    if m == 0 {
        return report;
    }
    let witnesses = is_k_swappable(g, 2).expect("graph has edges");
    report.two_swappable = witnesses.is_some();
    report.removal_similar = is_removal_similar(g).expect("graph has edges");
    if !report.premises_hold() {
        return report;
    }
    let search = BlockerSearch::new(g, Universe::AllSimple).expect("graph has edges");
    for k in 1..=2.min(m) {
        for s in search.deck().subdecks(k).expect("size within range") {
            let cert = search.first_blocker(&s).expect("valid sub-deck");
            report.certificates.push((s, cert));
        }
    }
    // the blocker from the proof: H = G - e + e' for a 2-swap {e, f} -> {e', f'}
    if m >= 2 {
        let pair = search.deck().subdecks(2).expect("size within range").next();
        let witnesses = witnesses.expect("checked above");
        let host = canonical_form(g);
        'outer: for (&e, w) in &witnesses {
            for e2 in w.added().iter() {
                let h = g.without_edge(e).with_edge(e2);
                let code = canonical_form(&h);
                if code == host {
                    continue;
                }
                if let Some(s) = &pair {
                    if s.is_contained_in(&deck_counts(&h)) {
                        report.swap_blocker = Some((e, e2, h));
                        break 'outer;
                    }
                }
            }
        }
    }
    report
}

/// Exhaustive check that every sub-deck of size at most 2 of a family
/// instance has a blocker.
#[derive(Debug, Clone)]
pub struct Theorem7Report {
    pub kind: FamilyKind,
    pub graph: Graph,
    pub regular: Option<usize>,
    pub removal_similar: bool,
    pub two_swappable: bool,
    /// Card classes with their multiplicities, in code order.
    pub classes: Vec<(CanonicalCode, usize)>,
    pub certificates: Vec<(SubDeck, Option<BlockerCertificate>)>,
}

impl Theorem7Report {
    pub fn ern_at_least_three(&self) -> bool {
        self.certificates.iter().all(|(_, c)| c.is_some())
    }

    pub fn unblocked(&self) -> impl Iterator<Item = &SubDeck> {
        self.certificates
            .iter()
            .filter(|(_, c)| c.is_none())
            .map(|(s, _)| s)
    }
}

pub fn verify_theorem7(kind: FamilyKind, universe: Universe) -> Result<Theorem7Report> {
    if !kind.has_removed_structure() {
        return Err(Error::NotAFamilyInstance(kind.to_string()));
    }
    let g = generate(kind)?.graph;
    let search = BlockerSearch::new(&g, universe)?;
    let mut certificates = Vec::new();
    for k in 1..=2.min(g.edge_count()) {
        for s in search.deck().subdecks(k)? {
            let cert = search.first_blocker(&s)?;
            certificates.push((s, cert));
        }
    }
    Ok(Theorem7Report {
        kind,
        graph: g,
        regular: g.regular_degree(),
        removal_similar: search.deck().class_count() == 1,
        two_swappable: is_k_swappable(&g, 2)?.is_some(),
        classes: search
            .deck()
            .classes()
            .map(|(c, cls)| (*c, cls.multiplicity))
            .collect(),
        certificates,
    })
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub graph: Graph,
    pub ern: ErnResult,
    pub swap: SwapNumberResult,
}

impl SweepRow {
    pub fn two_swappable(&self) -> bool {
        self.swap.finite().is_some_and(|k| k <= 2)
    }

    pub fn is_counterexample(&self) -> bool {
        self.ern.at_least_three() && !self.two_swappable()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Theorem1Report {
    pub rows: Vec<SweepRow>,
    /// Graphs without edges are skipped.
    pub skipped: usize,
    /// Counts keyed by (ern rendering, 2-swappable).
    pub cells: BTreeMap<(String, bool), usize>,
}

impl Theorem1Report {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.is_counterexample())
    }

    pub fn holds(&self) -> bool {
        self.counterexamples().next().is_none()
    }
}

/// For each graph compute ern (capped) and the swapping number, and flag any
/// graph with ern ≥ 3 that is not 2-swappable.
pub fn verify_theorem1_sweep(corpus: &[Graph], cap: usize, universe: Universe) -> Theorem1Report {
    let cap = cap.max(2);
    let rows: Vec<Option<SweepRow>> = corpus
        .par_iter()
        .map(|g| {
            if g.edge_count() == 0 {
                return None;
            }
            let ern = ern(g, cap, universe).expect("graph has edges");
            let swap = swapping_number(g, cap).expect("graph has edges");
            Some(SweepRow {
                graph: *g,
                ern,
                swap,
            })
        })
        .collect();
    let mut report = Theorem1Report::default();
    for row in rows {
        match row {
            Some(r) => {
                *report
                    .cells
                    .entry((r.ern.render(), r.two_swappable()))
                    .or_insert(0) += 1;
                report.rows.push(r);
            }
            None => report.skipped += 1,
        }
    }
    report
}
