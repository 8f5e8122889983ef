//! Strong ("rainbow") coloring of uniform hypergraphs.
//!
//! Every hyperedge has exactly `k` points and must receive `k` distinct colors
//! out of a palette of `k`, so injectivity on an edge already means
//! bijectivity. The search is a depth-first walk over points in index order
//! with forward checking on per-edge color masks. Colors are introduced in
//! first-occurrence order, so the first solution found is the
//! lexicographically least coloring overall.

use serde::{Deserialize, Serialize};

/// A coloring `chi: X -> 0..palette`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub palette: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    /// Points of each color, indexed by color.
    pub fn classes(&self) -> Vec<crate::Configuration> {
        let mut classes = vec![Vec::new(); self.palette];
        for (p, &c) in self.colors.iter().enumerate() {
            if c < self.palette {
                classes[c].push(p);
            }
        }
        classes.into_iter().map(crate::Configuration::new).collect()
    }
}

/// Result of a search that may be cut short by a node budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    /// The node budget ran out before the search finished.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

/// Search outcome together with the number of search nodes visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<T> {
    pub outcome: Search<T>,
    pub nodes: u64,
}

const NONE: u8 = u8::MAX;

/// A `k`-uniform hypergraph on `0..n` prepared for strong coloring.
pub struct RainbowProblem {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl RainbowProblem {
    /// # Panics
    /// If an edge does not have exactly `k` distinct points below `n`, or if
    /// `k` exceeds 128.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        assert!(k <= 128, "palettes above 128 colors are not supported");
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            assert_eq!(e.len(), k, "hyperedge of wrong size");
            for &p in e {
                assert!(p < n);
                incident[p].push(i);
            }
        }
        Self {
            n,
            k,
            edges,
            incident,
        }
    }

    pub fn solve(&self, budget: Option<u64>) -> SearchReport<Coloring> {
        let mut state = State {
            problem: self,
            colors: vec![NONE; self.n],
            used: vec![0; self.edges.len()],
            nodes: 0,
            budget,
            exhausted: false,
        };
        let found = state.dfs(0, 0);
        let outcome = if found {
            Search::Found(Coloring {
                palette: self.k,
                colors: state.colors.iter().map(|&c| c as usize).collect(),
            })
        } else if state.exhausted {
            Search::Unknown
        } else {
            Search::Absent
        };
        SearchReport {
            outcome,
            nodes: state.nodes,
        }
    }
}

struct State<'a> {
    problem: &'a RainbowProblem,
    colors: Vec<u8>,
    used: Vec<u128>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl State<'_> {
    fn palette_mask(&self) -> u128 {
        if self.problem.k == 128 {
            u128::MAX
        } else {
            (1u128 << self.problem.k) - 1
        }
    }

    fn legal(&self, p: usize) -> u128 {
        let blocked = self.problem.incident[p]
            .iter()
            .fold(0, |m, &e| m | self.used[e]);
        self.palette_mask() & !blocked
    }

    /// Every edge through `p` can still be completed by its open points.
    fn forward_ok(&self, p: usize) -> bool {
        for &e in &self.problem.incident[p] {
            let mut open = 0u32;
            let mut avail = 0u128;
            for &q in &self.problem.edges[e] {
                if self.colors[q] == NONE {
                    let l = self.legal(q);
                    if l == 0 {
                        return false;
                    }
                    open += 1;
                    avail |= l;
                }
            }
            if avail.count_ones() < open {
                return false;
            }
        }
        true
    }

    /// `next_new` is the smallest color not yet used anywhere.
    fn dfs(&mut self, p: usize, next_new: usize) -> bool {
        if p == self.problem.n {
            return true;
        }
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.exhausted = true;
                return false;
            }
        }
        let allowed = next_new.min(self.problem.k - 1);
        let mut domain = self.legal(p);
        if allowed + 1 < 128 {
            domain &= (1u128 << (allowed + 1)) - 1;
        }
        while domain != 0 {
            let c = domain.trailing_zeros() as usize;
            domain &= domain - 1;
            let bit = 1u128 << c;
            self.colors[p] = c as u8;
            for &e in &self.problem.incident[p] {
                self.used[e] |= bit;
            }
            if self.forward_ok(p) && self.dfs(p + 1, next_new.max(c + 1)) {
                return true;
            }
            for &e in &self.problem.incident[p] {
                self.used[e] &= !bit;
            }
            self.colors[p] = NONE;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Checks that `chi` is a bijection onto `0..palette` on every edge.
pub fn is_rainbow(edges: &[Vec<usize>], chi: &Coloring) -> bool {
    edges.iter().all(|e| {
        e.len() == chi.palette && {
            let mut seen = vec![false; chi.palette];
            e.iter().all(|&p| {
                chi.colors
                    .get(p)
                    .is_some_and(|&c| c < chi.palette && !std::mem::replace(&mut seen[c], true))
            })
        }
    })
}
