use crate::error::{Error, Result};
use crate::word::{Ensemble, Letter, Word};

use super::{EdgeId, Options, HARD_MAX_LENGTH};

/// How a matched pair identifies the underlying matrix indices. Writing the
/// two letters as entries `M_{x1 y1}` and `M_{x2 y2}`:
///
/// - `Parallel` merges `x1 ~ x2` and `y1 ~ y2`,
/// - `Cross` merges `x1 ~ y2` and `y1 ~ x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergeKind {
    Parallel,
    Cross,
}

/// Merge rule for two letters, or `None` when their covariance vanishes.
/// `twist` is only consulted for GOE pairs.
pub fn merge_kind(a: Letter, b: Letter, twist: bool) -> Option<MergeKind> {
    if a.kind() != b.kind() {
        return None;
    }
    match a.ensemble {
        Ensemble::GinibreComplex => (a.conjugated != b.conjugated).then_some(MergeKind::Parallel),
        Ensemble::GinibreReal => Some(MergeKind::Parallel),
        Ensemble::Gue => Some(if a.conjugated == b.conjugated {
            MergeKind::Cross
        } else {
            MergeKind::Parallel
        }),
        Ensemble::Goe => Some(if twist {
            MergeKind::Parallel
        } else {
            MergeKind::Cross
        }),
    }
}

/// Flattened view of a list of faces. Edges are numbered globally in face
/// order; slot `e` is the starting slot of edge `e`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub words: Vec<Word>,
    pub letters: Vec<Letter>,
    pub face_of: Vec<usize>,
    pub face_start: Vec<usize>,
    /// Slot at the end of edge `e`.
    pub next: Vec<usize>,
    /// Row and column slots of the entry carried by edge `e`.
    pub xy: Vec<(usize, usize)>,
    /// Higher-numbered edges with non-vanishing covariance with `e`.
    pub candidates: Vec<u64>,
    pub balanced: bool,
}

impl Layout {
    pub fn new(words: &[Word], options: &Options) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidArgument("empty word list".into()));
        }
        let m: usize = words.iter().map(Word::len).sum();
        let cap = options.max_length.min(HARD_MAX_LENGTH);
        if m > cap {
            return Err(Error::TooLarge(format!(
                "total word length {m} exceeds the enumeration cap of {cap}"
            )));
        }
        let mut letters = Vec::with_capacity(m);
        let mut face_of = Vec::with_capacity(m);
        let mut face_start = Vec::with_capacity(words.len() + 1);
        let mut next = Vec::with_capacity(m);
        for (f, w) in words.iter().enumerate() {
            let start = letters.len();
            face_start.push(start);
            for (i, &l) in w.letters().iter().enumerate() {
                letters.push(l);
                face_of.push(f);
                next.push(start + (i + 1) % w.len());
            }
        }
        face_start.push(m);
        let xy = (0..m)
            .map(|e| {
                if letters[e].transposed {
                    (next[e], e)
                } else {
                    (e, next[e])
                }
            })
            .collect();
        let candidates = (0..m)
            .map(|e| {
                (e + 1..m)
                    .filter(|&f| merge_kind(letters[e], letters[f], false).is_some())
                    .fold(0u64, |acc, f| acc | 1 << f)
            })
            .collect();
        let balanced = combined_balance(&letters);
        Ok(Layout {
            words: words.to_vec(),
            letters,
            face_of,
            face_start,
            next,
            xy,
            candidates,
            balanced,
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn faces(&self) -> usize {
        self.words.len()
    }

    pub fn is_goe(&self, e: usize) -> bool {
        self.letters[e].ensemble == Ensemble::Goe
    }

    pub fn kind(&self, a: usize, b: usize, twist: Option<bool>) -> MergeKind {
        merge_kind(self.letters[a], self.letters[b], twist.unwrap_or(false))
            .expect("pair is admissible")
    }

    /// Slot identifications performed by pairing edges `a` and `b`.
    pub fn merges(&self, a: usize, b: usize, twist: Option<bool>) -> [(usize, usize); 2] {
        let (x1, y1) = self.xy[a];
        let (x2, y2) = self.xy[b];
        match self.kind(a, b, twist) {
            MergeKind::Parallel => [(x1, x2), (y1, y2)],
            MergeKind::Cross => [(x1, y2), (y1, x2)],
        }
    }

    /// Whether the two edges are glued running in opposite directions, which
    /// is what a pair between two equally oriented faces requires.
    pub fn opposite(&self, a: usize, b: usize, twist: Option<bool>) -> bool {
        let same_t = self.letters[a].transposed == self.letters[b].transposed;
        match self.kind(a, b, twist) {
            MergeKind::Parallel => !same_t,
            MergeKind::Cross => same_t,
        }
    }

    pub fn edge_id(&self, e: usize) -> EdgeId {
        let face = self.face_of[e];
        EdgeId {
            face,
            position: e - self.face_start[face] + 1,
        }
    }

    pub fn edge_index(&self, id: EdgeId) -> Result<usize> {
        if id.face >= self.faces() {
            return Err(Error::InvalidPairing(format!("face {} out of range", id.face)));
        }
        let len = self.face_start[id.face + 1] - self.face_start[id.face];
        if id.position == 0 || id.position > len {
            return Err(Error::InvalidPairing(format!(
                "position {} out of range for face {}",
                id.position, id.face
            )));
        }
        Ok(self.face_start[id.face] + id.position - 1)
    }
}

/// A perfect matching exists iff every complex index has as many
/// conjugated as plain letters and every other letter type occurs evenly.
fn combined_balance(letters: &[Letter]) -> bool {
    let mut counts = std::collections::BTreeMap::<(Ensemble, u32), (usize, usize)>::new();
    for l in letters {
        let c = counts.entry(l.kind()).or_default();
        if l.conjugated {
            c.1 += 1;
        } else {
            c.0 += 1;
        }
    }
    counts.iter().all(|(&(ens, _), &(p, c))| match ens {
        Ensemble::GinibreComplex => p == c,
        _ => (p + c) % 2 == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Letter {
        Word::parse(s).unwrap().letters()[0]
    }

    #[test]
    fn merge_table() {
        use MergeKind::*;
        assert_eq!(merge_kind(l("G1"), l("G1*"), false), Some(Parallel));
        assert_eq!(merge_kind(l("G1"), l("G1~"), false), Some(Parallel));
        assert_eq!(merge_kind(l("G1"), l("G1t"), false), None);
        assert_eq!(merge_kind(l("G1"), l("G2*"), false), None);
        assert_eq!(merge_kind(l("R1"), l("R1t"), false), Some(Parallel));
        assert_eq!(merge_kind(l("H1"), l("H1"), false), Some(Cross));
        assert_eq!(merge_kind(l("H1"), l("H1~"), false), Some(Parallel));
        assert_eq!(merge_kind(l("S1"), l("S1"), false), Some(Cross));
        assert_eq!(merge_kind(l("S1"), l("S1"), true), Some(Parallel));
        assert_eq!(merge_kind(l("S1"), l("R1"), true), None);
    }

    #[test]
    fn layout_slots() {
        let words = vec![Word::parse("G1 G1*").unwrap(), Word::parse("G2").unwrap()];
        let lay = Layout::new(&words, &Options::default()).unwrap();
        assert_eq!(lay.next, vec![1, 0, 2]);
        assert_eq!(lay.xy, vec![(0, 1), (0, 1), (2, 2)]);
        assert_eq!(lay.candidates[0], 0b010);
        assert!(!lay.balanced);
        assert_eq!(lay.edge_id(2), EdgeId { face: 1, position: 1 });
        assert_eq!(lay.edge_index(EdgeId { face: 0, position: 2 }).unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let words = vec![Word::parse("(G1 G1*)^13").unwrap()];
        assert!(matches!(
            Layout::new(&words, &Options::default()),
            Err(Error::TooLarge(_))
        ));
    }
}
