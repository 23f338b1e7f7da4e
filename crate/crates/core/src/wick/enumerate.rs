//! Exhaustive enumeration of admissible pairings.
//!
//! Both the public iterator and the internal search kernel always pair the
//! lowest unpaired edge next, trying partners in increasing order and GOE
//! twists `false` before `true`. The top-level choice (the partner of edge 0)
//! partitions the search space into independent branches.

use rayon::prelude::*;

use crate::error::Result;
use crate::word::Word;

use super::uf::RollbackUf;
use super::{DecoratedPairing, EdgeId, Layout, Options, Pair};

fn twists(lay: &Layout, e: usize) -> &'static [Option<bool>] {
    if lay.is_goe(e) {
        &[Some(false), Some(true)]
    } else {
        &[None]
    }
}

#[inline]
fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Top-level choices for the partner of the first edge.
fn root_branches(lay: &Layout) -> Vec<(usize, Option<bool>)> {
    if !lay.balanced {
        return Vec::new();
    }
    bits(lay.candidates[0])
        .flat_map(|b| twists(lay, 0).iter().map(move |&t| (b, t)))
        .collect()
}

const NONE: u32 = u32::MAX;

/// Partial gluing maintained incrementally during the search.
pub(crate) struct State<'a> {
    pub lay: &'a Layout,
    pub slots: RollbackUf,
    pub faces: RollbackUf,
    pub unpaired: u64,
    pub pairs: Vec<(usize, usize, Option<bool>)>,
    first_at: Vec<u32>,
    edge_parent: Vec<u32>,
    face_mark: Vec<bool>,
}

impl<'a> State<'a> {
    fn new(lay: &'a Layout) -> Self {
        let m = lay.len();
        State {
            lay,
            slots: RollbackUf::new(m),
            faces: RollbackUf::new(lay.faces()),
            unpaired: full_mask(m),
            pairs: Vec::with_capacity(m / 2),
            first_at: vec![NONE; m],
            edge_parent: vec![0; m],
            face_mark: vec![false; lay.faces()],
        }
    }

    #[inline]
    fn apply(&mut self, a: usize, b: usize, twist: Option<bool>) -> (usize, usize) {
        let cp = (self.slots.checkpoint(), self.faces.checkpoint());
        for (s, t) in self.lay.merges(a, b, twist) {
            self.slots.union(s, t);
        }
        self.faces.union(self.lay.face_of[a], self.lay.face_of[b]);
        self.unpaired &= !(1u64 << a | 1u64 << b);
        self.pairs.push((a, b, twist));
        cp
    }

    #[inline]
    fn undo(&mut self, cp: (usize, usize)) {
        let (a, b, _) = self.pairs.pop().expect("undo without apply");
        self.unpaired |= 1u64 << a | 1u64 << b;
        self.slots.rollback(cp.0);
        self.faces.rollback(cp.1);
    }

    pub fn vertices(&self) -> usize {
        self.slots.classes()
    }

    pub fn components(&self) -> usize {
        self.faces.classes()
    }

    fn edge_find(&mut self, mut e: usize) -> usize {
        while self.edge_parent[e] as usize != e {
            let p = self.edge_parent[e] as usize;
            self.edge_parent[e] = self.edge_parent[p];
            e = p;
        }
        e
    }

    /// Upper bound on the final vertex count of any completion.
    ///
    /// Slot classes touching an unpaired edge form the boundary of the partial
    /// surface. Completing the gluing closes the `b` boundary cycles (with `r`
    /// edges in total) into closed surfaces of Euler characteristic at most 2
    /// each, so those classes end up as at most `r/2 + b` vertices. When the
    /// final surface must be connected the `c` current components have to be
    /// joined through boundary cycles, which costs 2 per merge.
    ///
    /// Returns `None` if a connected completion is impossible.
    pub fn vertex_bound(&mut self, connected: bool) -> Option<i64> {
        let lay = self.lay;
        let r = self.unpaired.count_ones() as i64;
        let mut cycles = r;
        for e in bits(self.unpaired) {
            self.edge_parent[e] = e as u32;
        }
        for e in bits(self.unpaired) {
            for s in [e, lay.next[e]] {
                let root = self.slots.find(s);
                let f = self.first_at[root];
                if f == NONE {
                    self.first_at[root] = e as u32;
                } else {
                    let (ra, rb) = (self.edge_find(e), self.edge_find(f as usize));
                    if ra != rb {
                        self.edge_parent[ra] = rb as u32;
                        cycles -= 1;
                    }
                }
            }
        }
        for e in bits(self.unpaired) {
            for s in [e, lay.next[e]] {
                let root = self.slots.find(s);
                self.first_at[root] = NONE;
            }
        }
        let c = self.faces.classes() as i64;
        if connected && c > 1 {
            let mut open = 0;
            for e in bits(self.unpaired) {
                let root = self.faces.find(lay.face_of[e]);
                if !self.face_mark[root] {
                    self.face_mark[root] = true;
                    open += 1;
                }
            }
            for e in bits(self.unpaired) {
                let root = self.faces.find(lay.face_of[e]);
                self.face_mark[root] = false;
            }
            if open < c {
                return None;
            }
        }
        let mut bound = self.slots.classes() as i64 - r / 2 + cycles;
        if connected {
            bound -= 2 * (c - 1);
        }
        Some(bound)
    }
}

/// A depth-first search over pairings with optional pruning.
pub(crate) trait Search: Sync {
    type Acc: Send;

    fn init(&self) -> Self::Acc;

    /// Return `true` to discard every completion of the current state.
    fn prune(&self, _state: &mut State<'_>, _acc: &Self::Acc) -> bool {
        false
    }

    fn leaf(&self, state: &State<'_>, acc: &mut Self::Acc);

    fn merge(&self, a: Self::Acc, b: Self::Acc) -> Self::Acc;
}

fn dfs<S: Search>(state: &mut State<'_>, search: &S, acc: &mut S::Acc) {
    if state.unpaired == 0 {
        search.leaf(state, acc);
        return;
    }
    if search.prune(state, acc) {
        return;
    }
    let lay = state.lay;
    let e = state.unpaired.trailing_zeros() as usize;
    for b in bits(lay.candidates[e] & state.unpaired) {
        for &t in twists(lay, e) {
            let cp = state.apply(e, b, t);
            dfs(state, search, acc);
            state.undo(cp);
        }
    }
}

/// Runs `search` over every admissible pairing, fanning the top-level
/// branches out over the rayon pool.
pub(crate) fn run<S: Search>(lay: &Layout, search: &S) -> S::Acc {
    root_branches(lay)
        .into_par_iter()
        .map(|(b, t)| {
            let mut state = State::new(lay);
            let mut acc = search.init();
            state.apply(0, b, t);
            dfs(&mut state, search, &mut acc);
            acc
        })
        .reduce(|| search.init(), |x, y| search.merge(x, y))
}

/// The choice of partner (and twist) for the first edge of the first face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairingBranch {
    pub partner: EdgeId,
    pub twist: Option<bool>,
}

/// Deterministic partition of the pairing stream; the streams of all branches,
/// concatenated in order, equal [`enumerate_pairings`].
pub fn pairing_branches(words: &[Word]) -> Result<Vec<PairingBranch>> {
    let lay = Layout::new(words, &Options::default())?;
    Ok(root_branches(&lay)
        .into_iter()
        .map(|(b, twist)| PairingBranch {
            partner: lay.edge_id(b),
            twist,
        })
        .collect())
}

/// Streams every admissible decorated pairing exactly once.
pub fn enumerate_pairings(words: &[Word]) -> Result<Pairings> {
    let lay = Layout::new(words, &Options::default())?;
    Ok(Pairings::new(lay, None))
}

/// Streams the pairings of one branch.
pub fn enumerate_branch(words: &[Word], branch: &PairingBranch) -> Result<Pairings> {
    let lay = Layout::new(words, &Options::default())?;
    let b = lay.edge_index(branch.partner)?;
    let valid = root_branches(&lay).contains(&(b, branch.twist));
    let mut it = Pairings::new(lay, Some((b, branch.twist)));
    if !valid {
        it.done = true;
    }
    Ok(it)
}

struct Frame {
    edge: usize,
    remaining: u64,
    current: Option<(usize, Option<bool>)>,
    fixed: bool,
}

/// Iterator over decorated pairings, see [`enumerate_pairings`].
pub struct Pairings {
    lay: Layout,
    unpaired: u64,
    stack: Vec<Frame>,
    fresh: bool,
    done: bool,
    root: Option<(usize, Option<bool>)>,
}

impl Pairings {
    fn new(lay: Layout, root: Option<(usize, Option<bool>)>) -> Self {
        let m = lay.len();
        let done = !lay.balanced;
        Pairings {
            lay,
            unpaired: full_mask(m),
            stack: Vec::new(),
            fresh: true,
            done,
            root,
        }
    }

    fn set(&mut self, a: usize, b: usize) {
        self.unpaired &= !(1u64 << a | 1u64 << b);
    }

    fn unset(&mut self, a: usize, b: usize) {
        self.unpaired |= 1u64 << a | 1u64 << b;
    }

    /// Moves the top frame to its next option. Returns `false` when exhausted.
    fn choose_next(&mut self) -> bool {
        let top = self.stack.len() - 1;
        let Frame {
            edge,
            current,
            fixed,
            ..
        } = self.stack[top];
        if let Some((b, t)) = current {
            self.unset(edge, b);
            self.stack[top].current = None;
            if fixed {
                return false;
            }
            if t == Some(false) {
                self.stack[top].current = Some((b, Some(true)));
                self.set(edge, b);
                return true;
            }
        }
        let remaining = self.stack[top].remaining;
        if remaining == 0 {
            return false;
        }
        let b = remaining.trailing_zeros() as usize;
        self.stack[top].remaining &= remaining - 1;
        let t = if self.lay.is_goe(edge) { Some(false) } else { None };
        self.stack[top].current = Some((b, t));
        self.set(edge, b);
        true
    }

    fn descend(&mut self) -> bool {
        while self.unpaired != 0 {
            let e = self.unpaired.trailing_zeros() as usize;
            self.stack.push(Frame {
                edge: e,
                remaining: self.lay.candidates[e] & self.unpaired,
                current: None,
                fixed: false,
            });
            if !self.choose_next() {
                return false;
            }
        }
        true
    }

    fn backtrack(&mut self) -> bool {
        while !self.stack.is_empty() {
            if self.choose_next() {
                if self.descend() {
                    return true;
                }
            } else {
                self.stack.pop();
            }
        }
        false
    }

    fn current(&self) -> DecoratedPairing {
        DecoratedPairing {
            pairs: self
                .stack
                .iter()
                .map(|f| {
                    let (b, twist) = f.current.expect("complete frame");
                    Pair {
                        a: self.lay.edge_id(f.edge),
                        b: self.lay.edge_id(b),
                        twist,
                    }
                })
                .collect(),
        }
    }
}

impl Iterator for Pairings {
    type Item = DecoratedPairing;

    fn next(&mut self) -> Option<DecoratedPairing> {
        if self.done {
            return None;
        }
        let found = if self.fresh {
            self.fresh = false;
            if let Some((b, t)) = self.root {
                self.stack.push(Frame {
                    edge: 0,
                    remaining: 0,
                    current: Some((b, t)),
                    fixed: true,
                });
                self.set(0, b);
            }
            self.descend() || self.backtrack()
        } else {
            self.backtrack()
        };
        if found {
            Some(self.current())
        } else {
            self.done = true;
            None
        }
    }
}
