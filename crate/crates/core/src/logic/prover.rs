//! Decision procedure for intuitionistic propositional derivability.
//!
//! Backward proof search in Dyckhoff's contraction-free calculus (G4ip).
//! Axioms of the base sit in the antecedent of every sequent. Search
//! applies the invertible rules eagerly and backtracks only over right
//! disjunction and the `(C -> D) -> B` left rule. Every rule strictly
//! decreases a well-founded multiset weight, so search terminates without
//! loop checking; the step budget only bounds running time.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::formula::{Atom, AxiomBase, Formula};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("proof search exceeded its budget of {0} steps")]
    BudgetExceeded(u64),
}

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Atom(u8),
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
struct AtomSet(u128);

impl AtomSet {
    fn contains(self, a: u8) -> bool {
        self.0 >> a & 1 == 1
    }

    fn insert(&mut self, a: u8) -> bool {
        let fresh = !self.contains(a);
        self.0 |= 1 << a;
        fresh
    }
}

fn insert_sorted<T: Ord>(v: &mut Vec<T>, x: T) -> bool {
    match v.binary_search(&x) {
        Ok(_) => false,
        Err(i) => {
            v.insert(i, x);
            true
        }
    }
}

/// Antecedent of a sequent, kept partly decomposed. The vectors are sorted
/// and duplicate-free so that saturated contexts compare structurally.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
struct Context {
    bot: bool,
    atoms: AtomSet,
    /// `p -> B` waiting for `p`.
    atom_imps: Vec<(u8, Id)>,
    /// `(C -> D) -> B` stored as `(C, D, B)`.
    imp_imps: Vec<(Id, Id, Id)>,
    ors: Vec<(Id, Id)>,
    pending: Vec<Id>,
    /// Every formula placed in the antecedent on this branch. All of them
    /// follow from the branch's antecedent, so a goal found here is proved.
    seen: Vec<Id>,
}

impl Context {
    fn add(&mut self, id: Id) {
        if insert_sorted(&mut self.seen, id) {
            self.pending.push(id);
        }
    }
}

/// Node storage: shared base nodes plus nodes created during one search,
/// hash-consed so equal formulas share an id.
struct Arena<'a> {
    base: &'a [Node],
    base_ids: &'a HashMap<Node, Id>,
    local: Vec<Node>,
    local_ids: HashMap<Node, Id>,
}

impl Arena<'_> {
    fn get(&self, id: Id) -> Node {
        let i = id as usize;
        if i < self.base.len() {
            self.base[i]
        } else {
            self.local[i - self.base.len()]
        }
    }

    fn push(&mut self, n: Node) -> Id {
        if let Some(&id) = self.base_ids.get(&n).or_else(|| self.local_ids.get(&n)) {
            return id;
        }
        let id = (self.base.len() + self.local.len()) as Id;
        self.local.push(n);
        self.local_ids.insert(n, id);
        id
    }

    fn intern(&mut self, f: &Formula, bot: Id) -> Id {
        let n = match f {
            Formula::Atom(a) => Node::Atom(atom_code(a)),
            Formula::Not(a) => {
                let a = self.intern(a, bot);
                Node::Imp(a, bot)
            }
            Formula::And(a, b) => Node::And(self.intern(a, bot), self.intern(b, bot)),
            Formula::Or(a, b) => Node::Or(self.intern(a, bot), self.intern(b, bot)),
            Formula::Imp(a, b) => Node::Imp(self.intern(a, bot), self.intern(b, bot)),
        };
        self.push(n)
    }
}

fn atom_code(a: &Atom) -> u8 {
    a.index() as u8
}

struct Search<'a> {
    arena: Arena<'a>,
    steps: u64,
    budget: u64,
    /// Saturated sequents already known to be unprovable.
    failed: HashSet<(Context, Id)>,
}

impl Search<'_> {
    /// Applies every non-branching left rule.
    fn saturate(&mut self, ctx: &mut Context) {
        while let Some(id) = ctx.pending.pop() {
            match self.arena.get(id) {
                Node::Bot => {
                    ctx.bot = true;
                    ctx.pending.clear();
                    return;
                }
                Node::Atom(p) => {
                    if ctx.atoms.insert(p) {
                        let mut released = Vec::new();
                        ctx.atom_imps.retain(|&(q, b)| {
                            if q == p {
                                released.push(b);
                                false
                            } else {
                                true
                            }
                        });
                        for b in released {
                            ctx.add(b);
                        }
                    }
                }
                Node::And(a, b) => {
                    ctx.add(a);
                    ctx.add(b);
                }
                Node::Or(a, b) => {
                    insert_sorted(&mut ctx.ors, (a, b));
                }
                Node::Imp(a, b) => match self.arena.get(a) {
                    Node::Bot => {}
                    Node::Atom(p) => {
                        if ctx.atoms.contains(p) {
                            ctx.add(b);
                        } else {
                            insert_sorted(&mut ctx.atom_imps, (p, b));
                        }
                    }
                    Node::And(c, d) => {
                        let db = self.arena.push(Node::Imp(d, b));
                        let cdb = self.arena.push(Node::Imp(c, db));
                        ctx.add(cdb);
                    }
                    Node::Or(c, d) => {
                        let cb = self.arena.push(Node::Imp(c, b));
                        let db = self.arena.push(Node::Imp(d, b));
                        ctx.add(cb);
                        ctx.add(db);
                    }
                    Node::Imp(c, d) => {
                        insert_sorted(&mut ctx.imp_imps, (c, d, b));
                    }
                },
            }
        }
    }

    fn prove(&mut self, mut ctx: Context, goal: Id) -> Result<bool, ProverError> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(ProverError::BudgetExceeded(self.budget));
        }
        self.saturate(&mut ctx);
        if ctx.bot || ctx.seen.binary_search(&goal).is_ok() {
            return Ok(true);
        }
        match self.arena.get(goal) {
            Node::And(a, b) => {
                return Ok(self.prove(ctx.clone(), a)? && self.prove(ctx, b)?);
            }
            Node::Imp(a, b) => {
                ctx.add(a);
                return self.prove(ctx, b);
            }
            Node::Atom(p) if ctx.atoms.contains(p) => return Ok(true),
            _ => {}
        }
        if let Some((a, b)) = ctx.ors.pop() {
            let mut left = ctx.clone();
            left.add(a);
            ctx.add(b);
            return Ok(self.prove(left, goal)? && self.prove(ctx, goal)?);
        }
        let key = (ctx, goal);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let (ctx, goal) = key;
        let found = self.search_branches(&ctx, goal)?;
        if !found {
            self.failed.insert((ctx, goal));
        }
        Ok(found)
    }

    /// The non-invertible rules: right disjunction and `(C -> D) -> B`.
    fn search_branches(&mut self, ctx: &Context, goal: Id) -> Result<bool, ProverError> {
        if let Node::Or(a, b) = self.arena.get(goal) {
            if self.prove(ctx.clone(), a)? || self.prove(ctx.clone(), b)? {
                return Ok(true);
            }
        }
        for i in 0..ctx.imp_imps.len() {
            let (c, d, b) = ctx.imp_imps[i];
            let mut rest = ctx.clone();
            rest.imp_imps.remove(i);
            let mut left = rest.clone();
            let db = self.arena.push(Node::Imp(d, b));
            left.add(db);
            let cd = self.arena.push(Node::Imp(c, d));
            if self.prove(left, cd)? {
                rest.add(b);
                return self.prove(rest, goal);
            }
        }
        Ok(false)
    }
}

/// A prover with a fixed axiom base, decomposed once up front.
///
/// Queries take `&self`; the prover holds no state between calls.
#[derive(Clone)]
pub struct Prover {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
    bot: Id,
    start: Context,
    budget: u64,
}

impl Prover {
    pub fn new(base: &AxiomBase) -> Self {
        Prover::from_formulas(base.iter())
    }

    pub fn from_formulas<'f>(formulas: impl IntoIterator<Item = &'f Formula>) -> Self {
        let empty = HashMap::new();
        let mut search = Search {
            arena: Arena {
                base: &[],
                base_ids: &empty,
                local: Vec::new(),
                local_ids: HashMap::new(),
            },
            steps: 0,
            budget: u64::MAX,
            failed: HashSet::new(),
        };
        search.arena.push(Node::Bot);
        let mut start = Context::default();
        for f in formulas {
            let id = search.arena.intern(f, 0);
            start.add(id);
        }
        search.saturate(&mut start);
        Prover {
            nodes: search.arena.local,
            ids: search.arena.local_ids,
            bot: 0,
            start,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Whether `goal` follows from the base.
    pub fn derives(&self, goal: &Formula) -> Result<bool, ProverError> {
        let mut search = Search {
            arena: Arena {
                base: &self.nodes,
                base_ids: &self.ids,
                local: Vec::new(),
                local_ids: HashMap::new(),
            },
            steps: 0,
            budget: self.budget,
            failed: HashSet::new(),
        };
        let g = search.arena.intern(goal, self.bot);
        search.prove(self.start.clone(), g)
    }

    pub fn derives_all(&self, goals: &[Formula]) -> Result<Vec<bool>, ProverError> {
        goals.iter().map(|g| self.derives(g)).collect()
    }
}

pub fn derives(base: &AxiomBase, goal: &Formula) -> Result<bool, ProverError> {
    Prover::new(base).derives(goal)
}

pub fn derives_all(base: &AxiomBase, goals: &[Formula]) -> Result<Vec<bool>, ProverError> {
    Prover::new(base).derives_all(goals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn thm(s: &str) -> bool {
        derives(&AxiomBase::new(), &f(s)).unwrap()
    }

    #[test]
    fn basic_theorems() {
        assert!(thm("h+ -> h+"));
        assert!(thm("T"));
        assert!(!thm("F"));
        assert!(thm("h+ -> s+ -> h+"));
        assert!(thm("(h+ & s+) -> (s+ & h+)"));
        assert!(thm("(h+ | s+) -> (s+ | h+)"));
        assert!(thm("F -> e-"));
        assert!(thm("~~(h+ | ~h+)"));
        assert!(thm("~~~h+ -> ~h+"));
        assert!(thm("((h+ -> s+) -> h+) -> ~~h+"));
    }

    #[test]
    fn classical_only_principles_rejected() {
        assert!(!thm("h+ | ~h+"));
        assert!(!thm("((h+ -> s+) -> h+) -> h+"));
        assert!(!thm("~~h+ -> h+"));
        assert!(!thm("(h+ -> s+) | (s+ -> h+)"));
        assert!(!thm("(~h+ -> s+ | e+) -> (~h+ -> s+) | (~h+ -> e+)"));
    }

    #[test]
    fn base_formulas_are_standing_antecedents() {
        let base: AxiomBase = [f("e+ -> s0"), f("s0 -> kpm"), f("ppm -> s0")]
            .into_iter()
            .collect();
        let p = Prover::new(&base);
        assert!(p.derives(&f("(e+ | s0 | ppm) -> kpm")).unwrap());
        assert!(!p.derives(&f("kpm -> s0")).unwrap());
        assert_eq!(
            p.derives_all(&[f("T"), f("F")]).unwrap(),
            vec![true, false]
        );
        assert!(p.derives_all(&[]).unwrap().is_empty());
    }

    #[test]
    fn budget_is_reported() {
        // the sequent needs more than two search nodes
        let p = Prover::new(&AxiomBase::new()).with_budget(2);
        let goal = f("((h+ -> s+) -> h+) -> h+");
        assert_eq!(p.derives(&goal), Err(ProverError::BudgetExceeded(2)));
    }
}
