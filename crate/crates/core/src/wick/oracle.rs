//! Reference evaluation of `E[∏ Tr]` straight from the entries.
//!
//! Every assignment of matrix indices to the slots is visited, and the
//! expectation of the resulting product of Gaussian entries is expanded by
//! Wick's formula using the entrywise covariances. Nothing here uses the
//! slot-merging rules of the enumerator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::word::{Ensemble, Word};

/// Variance profile of the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryModel {
    /// Every entry has variance `1/N`.
    Full,
    /// Entries vanish outside cyclic distance `b` of the diagonal and have
    /// variance `1/l` inside, with `l = min(2b+1, N)`.
    Band { b: usize },
}

#[derive(Clone, Copy)]
struct Entry {
    ensemble: Ensemble,
    index: u32,
    row: usize,
    col: usize,
    conj: bool,
}

/// Covariance of two entries, in units of the entry variance.
fn covariance(p: &Entry, q: &Entry) -> u64 {
    if p.ensemble != q.ensemble || p.index != q.index {
        return 0;
    }
    let same = p.row == q.row && p.col == q.col;
    let swapped = p.row == q.col && p.col == q.row;
    match p.ensemble {
        Ensemble::GinibreComplex => (p.conj != q.conj && same) as u64,
        Ensemble::GinibreReal => same as u64,
        Ensemble::Gue => {
            // conj(H)_{rc} = H_{cr}; then E[H_ab H_cd] = δ_ad δ_bc.
            let (a, b) = if p.conj { (p.col, p.row) } else { (p.row, p.col) };
            let (c, d) = if q.conj { (q.col, q.row) } else { (q.row, q.col) };
            (a == d && b == c) as u64
        }
        Ensemble::Goe => same as u64 + swapped as u64,
    }
}

/// Sum over perfect matchings of `entries[mask]` of the product of
/// covariances.
fn wick(entries: &[Entry], mask: u32) -> u128 {
    if mask == 0 {
        return 1;
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut total = 0;
    let mut cand = rest;
    while cand != 0 {
        let j = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let c = covariance(&entries[i], &entries[j]);
        if c != 0 {
            total += c as u128 * wick(entries, rest & !(1 << j));
        }
    }
    total
}

fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// `E[∏ Tr(G_{w_i})]` at dimension `n` with every entry of variance `1/n`.
///
/// Limited to `n ≤ 6` and total length `m ≤ 10`.
pub fn brute_force_wick_oracle(words: &[Word], n: usize) -> Result<BigRational> {
    let m: usize = words.iter().map(Word::len).sum();
    if n > 6 || m > 10 {
        return Err(Error::TooLarge(format!(
            "oracle limited to N <= 6 and length <= 10 (got N = {n}, length {m})"
        )));
    }
    entrywise_wick_oracle(words, n, EntryModel::Full)
}

/// Entrywise evaluation under an arbitrary [`EntryModel`]. Requires
/// `n^m ≤ 6^10`.
pub fn entrywise_wick_oracle(words: &[Word], n: usize, model: EntryModel) -> Result<BigRational> {
    if words.is_empty() || n == 0 {
        return Err(Error::InvalidArgument("need words and N >= 1".into()));
    }
    let m: usize = words.iter().map(Word::len).sum();
    let work = (n as f64).powi(m as i32);
    if m > 30 || work > 6f64.powi(10) {
        return Err(Error::TooLarge(format!(
            "{n}^{m} index assignments exceed the oracle budget"
        )));
    }
    let scale = match model {
        EntryModel::Full => n,
        EntryModel::Band { b } => (2 * b + 1).min(n),
    };
    if m % 2 == 1 {
        return Ok(BigRational::zero());
    }

    // Slot s of face f holds the index between letters s-1 and s.
    let mut shape = Vec::with_capacity(m);
    let mut offset = 0;
    for w in words {
        let len = w.len();
        for (i, l) in w.letters().iter().enumerate() {
            let start = offset + i;
            let end = offset + (i + 1) % len;
            shape.push((*l, start, end));
        }
        offset += len;
    }

    let mut idx = vec![0usize; m];
    let mut entries: Vec<Entry> = Vec::with_capacity(m);
    let mut total: u128 = 0;
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    'outer: loop {
        entries.clear();
        let mut supported = true;
        for &(l, s, e) in &shape {
            let (mut row, mut col) = (idx[s], idx[e]);
            if l.transposed {
                std::mem::swap(&mut row, &mut col);
            }
            if let EntryModel::Band { b } = model {
                supported &= cyclic_distance(row, col, n) <= b;
            }
            entries.push(Entry {
                ensemble: l.ensemble,
                index: l.index,
                row,
                col,
                conj: l.conjugated,
            });
        }
        if supported {
            total += wick(&entries, full);
        }
        for d in idx.iter_mut() {
            *d += 1;
            if *d < n {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    let denom = num_traits::pow(BigInt::from(scale), m / 2);
    Ok(BigRational::new(BigInt::from(total), denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(list: &[&str], n: usize) -> BigRational {
        let ws: Vec<Word> = list.iter().map(|s| Word::parse(s).unwrap()).collect();
        brute_force_wick_oracle(&ws, n).unwrap()
    }

    fn int(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(oracle(&["G1 G1*"], 1), int(1));
        assert_eq!(oracle(&["G1 G1* G1 G1*"], 1), int(2));
        assert_eq!(oracle(&["G1", "G1*"], 3), int(1));
        assert_eq!(oracle(&["S1 S1"], 3), int(4));
        assert_eq!(oracle(&["H1 H1~"], 4), int(1));
        assert_eq!(oracle(&["G1"], 2), int(0));
    }

    #[test]
    fn caps() {
        let ws = vec![Word::parse("G1 G1*").unwrap()];
        assert!(matches!(brute_force_wick_oracle(&ws, 7), Err(Error::TooLarge(_))));
        let ws = vec![Word::parse("(G1 G1*)^6").unwrap()];
        assert!(matches!(brute_force_wick_oracle(&ws, 2), Err(Error::TooLarge(_))));
    }

    #[test]
    fn band_model() {
        let ws = vec![Word::parse("G1").unwrap(), Word::parse("G1*").unwrap()];
        // Only the diagonal contributes: N entries of variance 1/l.
        let v = entrywise_wick_oracle(&ws, 8, EntryModel::Band { b: 2 }).unwrap();
        assert_eq!(v, BigRational::new(8.into(), 5.into()));
        let ws = vec![Word::parse("G1 G1*").unwrap()];
        let v = entrywise_wick_oracle(&ws, 8, EntryModel::Band { b: 2 }).unwrap();
        assert_eq!(v, int(8));
    }
}
