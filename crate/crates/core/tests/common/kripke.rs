//! Brute-force Kripke semantics for formulas over two atoms.
//!
//! Models are rooted posets with at most four worlds and persistent
//! valuations. A formula is valid when it holds at the root of every model;
//! generated submodels are themselves in the list, so this is the same as
//! holding everywhere. Truth sets are bitmasks over worlds.

use std::collections::HashSet;

use spp_core::{Atom, Factor, Formula, Signature};

pub const MAX_WORLDS: usize = 4;

#[derive(Clone, Copy)]
enum Node {
    A,
    B,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

/// Rooted posets on `0..n` with root 0, as up-set masks per world.
fn rooted_posets(n: usize) -> Vec<Vec<u8>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut leq = [[false; MAX_WORLDS]; MAX_WORLDS];
        for (i, row) in leq.iter_mut().enumerate().take(n) {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let transitive = (0..n)
            .all(|i| (0..n).all(|j| (0..n).all(|k| !(leq[i][j] && leq[j][k]) || leq[i][k])));
        let rooted = (0..n).all(|j| leq[0][j]);
        if antisymmetric && transitive && rooted {
            out.push(
                (0..n)
                    .map(|w| (0..n).filter(|&v| leq[w][v]).fold(0u8, |m, v| m | 1 << v))
                    .collect(),
            );
        }
    }
    out
}

fn up_sets(up: &[u8]) -> Vec<u8> {
    let n = up.len();
    (0u8..(1 << n))
        .filter(|&m| (0..n).all(|w| m >> w & 1 == 0 || up[w] & !m == 0))
        .collect()
}

fn eval(node: Node, masks: &[u8], up: &[u8], va: u8, vb: u8) -> u8 {
    let worlds = |pred: &dyn Fn(u8) -> bool| {
        (0..up.len()).filter(|&w| pred(up[w])).fold(0u8, |m, w| m | 1 << w)
    };
    match node {
        Node::A => va,
        Node::B => vb,
        Node::Not(x) => worlds(&|u| u & masks[x] == 0),
        Node::And(x, y) => masks[x] & masks[y],
        Node::Or(x, y) => masks[x] | masks[y],
        Node::Imp(x, y) => worlds(&|u| u & masks[x] & !masks[y] == 0),
    }
}

pub struct KripkeOracle {
    nodes: Vec<Node>,
    /// The depth ≤ 2 formulas, as indices into `nodes`.
    level2: Vec<usize>,
    /// Truth masks of every node, one row per distinct model.
    models: Vec<Vec<u8>>,
}

impl KripkeOracle {
    pub fn new() -> Self {
        let mut nodes = vec![Node::A, Node::B];
        let mut level = vec![0, 1];
        for _ in 0..2 {
            let prev = level.clone();
            level = vec![0, 1];
            for &x in &prev {
                nodes.push(Node::Not(x));
                level.push(nodes.len() - 1);
            }
            for mk in [Node::And as fn(usize, usize) -> Node, Node::Or, Node::Imp] {
                for &x in &prev {
                    for &y in &prev {
                        nodes.push(mk(x, y));
                        level.push(nodes.len() - 1);
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        let mut models = Vec::new();
        for n in 1..=MAX_WORLDS {
            for up in rooted_posets(n) {
                let ups = up_sets(&up);
                for &va in &ups {
                    for &vb in &ups {
                        let mut masks = vec![0u8; nodes.len()];
                        for i in 0..nodes.len() {
                            let m = eval(nodes[i], &masks, &up, va, vb);
                            masks[i] = m;
                        }
                        let row: Vec<u8> = level.iter().map(|&i| masks[i]).collect();
                        if seen.insert(row) {
                            models.push(masks);
                        }
                    }
                }
            }
        }
        KripkeOracle {
            nodes,
            level2: level,
            models,
        }
    }

    pub fn model_count(&self) -> usize {
        self.models.len()
    }

    pub fn level2_len(&self) -> usize {
        self.level2.len()
    }

    /// Number of formulas of depth at most 3.
    pub fn depth3_count(&self) -> usize {
        let n = self.level2.len();
        2 + n + 3 * n * n
    }

    fn decode(&self, idx: usize) -> (u8, usize, usize) {
        let n = self.level2.len();
        match idx {
            0 | 1 => (0, idx, 0),
            i if i < 2 + n => (1, self.level2[i - 2], 0),
            i => {
                let r = i - 2 - n;
                (2 + (r / (n * n)) as u8, self.level2[r / n % n], self.level2[r % n])
            }
        }
    }

    /// Validity of the depth-3 formula with the given index.
    pub fn valid(&self, idx: usize) -> bool {
        let (op, x, y) = self.decode(idx);
        self.models.iter().all(|m| match op {
            0 => m[x] & 1 == 1,
            1 => m[x] == 0,
            2 => m[x] & m[y] & 1 == 1,
            3 => (m[x] | m[y]) & 1 == 1,
            _ => m[x] & !m[y] == 0,
        })
    }

    fn node_formula(&self, i: usize) -> Formula {
        let atom = |s| Formula::Atom(Atom::new(if s { Factor::H } else { Factor::S }, Signature::Plus));
        match self.nodes[i] {
            Node::A => atom(true),
            Node::B => atom(false),
            Node::Not(x) => Formula::not(self.node_formula(x)),
            Node::And(x, y) => Formula::and(self.node_formula(x), self.node_formula(y)),
            Node::Or(x, y) => Formula::or(self.node_formula(x), self.node_formula(y)),
            Node::Imp(x, y) => Formula::imp(self.node_formula(x), self.node_formula(y)),
        }
    }

    /// Depth ≤ 2 formulas, in index order, for building depth-3 ones cheaply.
    pub fn level2_formulas(&self) -> Vec<Formula> {
        self.level2.iter().map(|&i| self.node_formula(i)).collect()
    }

    /// The depth-3 formula with the given index, built from `level2`.
    pub fn formula(&self, idx: usize, level2: &[Formula]) -> Formula {
        let n = self.level2.len();
        match idx {
            0 | 1 => level2[idx].clone(),
            i if i < 2 + n => Formula::not(level2[i - 2].clone()),
            i => {
                let r = i - 2 - n;
                let (x, y) = (level2[r / n % n].clone(), level2[r % n].clone());
                match r / (n * n) {
                    0 => Formula::and(x, y),
                    1 => Formula::or(x, y),
                    _ => Formula::imp(x, y),
                }
            }
        }
    }

    /// Index of a formula given in the oracle's own atoms `h+` and `s+`,
    /// if it has depth at most 3.
    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        let level2 = self.level2_formulas();
        let pos = |g: &Formula| level2.iter().position(|x| x == g);
        let n = level2.len();
        match f {
            Formula::Atom(_) => pos(f),
            Formula::Not(x) => pos(x).map(|i| 2 + i),
            Formula::And(x, y) => Some(2 + n + pos(x)? * n + pos(y)?),
            Formula::Or(x, y) => Some(2 + n + n * n + pos(x)? * n + pos(y)?),
            Formula::Imp(x, y) => Some(2 + n + 2 * n * n + pos(x)? * n + pos(y)?),
        }
    }
}
