//! Proper vertex colorings whose class sizes differ by at most one
//! (`classes >= max_degree + 1` is required, and then such a coloring
//! always exists).
//!
//! The search is greedy-plus-repair: color vertices one at a time into the
//! smallest conflict-free class, then even out class sizes by shifting
//! vertices along chains found in the directed "some vertex of A could move
//! to B" graph. A per-vertex table of neighbor colors makes the movability
//! test O(1). When no chain exists the search perturbs itself with random
//! moves and, failing that, restarts from a shuffled vertex order; the whole
//! procedure is a pure function of `(graph, classes, seed)`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

/// Errors from building or validating a balanced proper coloring.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("{classes} classes cannot properly color max degree {max_degree}; need {} or more", max_degree + 1)]
    TooFewClasses { classes: usize, max_degree: usize },
    #[error("rebalancing stalled after {restarts} restarts")]
    Stuck { restarts: u32 },
    #[error("edge {u}-{v} has both endpoints in class {class}")]
    ImproperEdge { u: u32, v: u32, class: u32 },
    #[error("class sizes range from {min} to {max}; they may differ by at most one")]
    Unbalanced { min: usize, max: usize },
    #[error("vertex {v} has color {label} outside 0..{classes}")]
    BadLabel { v: u32, label: u32, classes: usize },
}

/// How many shuffled-order restarts before giving up.
const RESTARTS: u32 = 12;

/// A proper coloring with class sizes differing by at most one.
#[derive(Debug, Clone)]
pub struct EquitableColoring {
    /// `colors[v]` is the class of vertex `v`, in `0..classes`.
    pub colors: Vec<u32>,
    /// Number of vertices in each class.
    pub class_sizes: Vec<usize>,
}

/// Checks that `colors` is a proper coloring of `g` into `classes` classes
/// whose sizes differ by at most one.
pub fn verify_equitable(g: &Graph, classes: usize, colors: &[u32]) -> Result<(), ColoringError> {
    let mut sizes = vec![0usize; classes];
    for (v, &c) in colors.iter().enumerate() {
        if c as usize >= classes {
            return Err(ColoringError::BadLabel { v: v as u32, label: c, classes });
        }
        sizes[c as usize] += 1;
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.edge(e as u32);
        if colors[u as usize] == colors[v as usize] {
            return Err(ColoringError::ImproperEdge { u, v, class: colors[u as usize] });
        }
    }
    let (min, max) = match (sizes.iter().min(), sizes.iter().max()) {
        (Some(&min), Some(&max)) => (min, max),
        _ => (0, 0),
    };
    if max > min + 1 {
        return Err(ColoringError::Unbalanced { min, max });
    }
    Ok(())
}

/// Produces a proper coloring of `g` into exactly `classes` classes whose
/// sizes differ by at most one. Deterministic in `(g, classes, seed)`.
pub fn equitable_coloring(
    g: &Graph,
    classes: usize,
    seed: u64,
) -> Result<EquitableColoring, ColoringError> {
    let max_degree = g.max_degree();
    if classes < max_degree + 1 {
        return Err(ColoringError::TooFewClasses { classes, max_degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..g.n() as u32).collect();
    for restart in 0..RESTARTS {
        if restart > 0 {
            order.shuffle(&mut rng);
        }
        let mut state = Search::greedy(g, classes, &order);
        if state.rebalance(&mut rng) {
            debug_assert!(verify_equitable(g, classes, &state.colors).is_ok());
            return Ok(EquitableColoring { colors: state.colors, class_sizes: state.sizes });
        }
    }
    Err(ColoringError::Stuck { restarts: RESTARTS })
}

/// Working state: the coloring plus every index needed for O(1) moves.
struct Search<'g> {
    g: &'g Graph,
    classes: usize,
    colors: Vec<u32>,
    sizes: Vec<usize>,
    /// Members of each class, unordered (swap-removal).
    members: Vec<Vec<u32>>,
    /// Position of each vertex inside its class's member list.
    slot: Vec<usize>,
    /// `neighbor_colors[v * classes + c]` = neighbors of `v` in class `c`.
    neighbor_colors: Vec<u32>,
}

impl<'g> Search<'g> {
    /// Colors vertices in `order`, each into its smallest conflict-free
    /// class (ties to the lowest class index).
    fn greedy(g: &'g Graph, classes: usize, order: &[u32]) -> Self {
        let mut s = Search {
            g,
            classes,
            colors: vec![u32::MAX; g.n()],
            sizes: vec![0; classes],
            members: vec![Vec::new(); classes],
            slot: vec![usize::MAX; g.n()],
            neighbor_colors: vec![0; g.n() * classes],
        };
        for &v in order {
            let base = v as usize * classes;
            let c = (0..classes)
                .filter(|&c| s.neighbor_colors[base + c] == 0)
                .min_by_key(|&c| (s.sizes[c], c))
                .expect("classes > max degree leaves a conflict-free class");
            s.place(v, c as u32);
        }
        s
    }

    fn place(&mut self, v: u32, c: u32) {
        self.colors[v as usize] = c;
        self.slot[v as usize] = self.members[c as usize].len();
        self.members[c as usize].push(v);
        self.sizes[c as usize] += 1;
        for &(u, _) in self.g.neighbors(v) {
            self.neighbor_colors[u as usize * self.classes + c as usize] += 1;
        }
    }

    fn displace(&mut self, v: u32) {
        let c = self.colors[v as usize] as usize;
        let pos = self.slot[v as usize];
        let class = &mut self.members[c];
        class.swap_remove(pos);
        if pos < class.len() {
            self.slot[class[pos] as usize] = pos;
        }
        self.sizes[c] -= 1;
        for &(u, _) in self.g.neighbors(v) {
            self.neighbor_colors[u as usize * self.classes + c] -= 1;
        }
    }

    fn movable(&self, v: u32, to: usize) -> bool {
        self.colors[v as usize] as usize != to
            && self.neighbor_colors[v as usize * self.classes + to] == 0
    }

    fn shift(&mut self, v: u32, to: u32) {
        debug_assert!(self.movable(v, to as usize));
        self.displace(v);
        self.place(v, to);
    }

    /// Evens out class sizes by chain moves; true on success. Every chain
    /// move shifts one vertex out of a large class and one into a smallest
    /// class, strictly decreasing the squared imbalance, so this terminates;
    /// random single moves unstick it when no chain is found.
    fn rebalance(&mut self, rng: &mut ChaCha8Rng) -> bool {
        // Enough for any imbalance the greedy pass can leave at these sizes.
        let mut kicks = 4 * self.g.n() as u64 + 64;
        loop {
            let min = *self.sizes.iter().min().expect("at least one class");
            let max = *self.sizes.iter().max().expect("at least one class");
            if max <= min + 1 {
                return true;
            }
            if let Some(chain) = self.find_chain(min) {
                // Execute from the tail so every move enters a class that
                // has only shrunk since the chain was found.
                for &(v, to) in chain.iter().rev() {
                    self.shift(v, to);
                }
            } else if kicks > 0 {
                kicks -= 1;
                if !self.kick(rng) {
                    return false;
                }
            } else {
                return false;
            }
        }
    }

    /// BFS in the class digraph (edge A -> B when some vertex of A has no
    /// neighbor colored B) from every class of size >= min+2 to any class of
    /// size min. Returns the chain as (vertex, destination) moves, in
    /// head-to-tail order.
    fn find_chain(&self, min: usize) -> Option<Vec<(u32, u32)>> {
        let c = self.classes;
        // Per visited class: the incoming (vertex, source class) witness.
        let mut parent: Vec<Option<(u32, u32)>> = vec![None; c];
        let mut visited = vec![false; c];
        let mut queue = std::collections::VecDeque::new();
        for a in 0..c {
            if self.sizes[a] >= min + 2 {
                visited[a] = true;
                queue.push_back(a);
            }
        }
        while let Some(a) = queue.pop_front() {
            for b in 0..c {
                if visited[b] {
                    continue;
                }
                let Some(&w) = self.members[a].iter().find(|&&v| self.movable(v, b)) else {
                    continue;
                };
                visited[b] = true;
                parent[b] = Some((w, a as u32));
                if self.sizes[b] == min {
                    // Walk back to a source, collecting moves.
                    let mut chain = vec![(w, b as u32)];
                    let mut at = a;
                    while let Some((v, src)) = parent[at] {
                        chain.push((v, at as u32));
                        at = src as usize;
                    }
                    chain.reverse();
                    return Some(chain);
                }
                queue.push_back(b);
            }
        }
        None
    }

    /// Random perturbation: move one random vertex out of a largest class
    /// into any other conflict-free class. False if even that is impossible.
    fn kick(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let max = *self.sizes.iter().max().expect("at least one class");
        let big: Vec<usize> = (0..self.classes).filter(|&a| self.sizes[a] == max).collect();
        let a = big[rng.random_range(0..big.len())];
        let pick = rng.random_range(0..self.members[a].len());
        let v = self.members[a][pick];
        let options: Vec<usize> = (0..self.classes).filter(|&b| self.movable(v, b)).collect();
        if options.is_empty() {
            return false;
        }
        let to = options[rng.random_range(0..options.len())];
        self.shift(v, to as u32);
        true
    }
}
