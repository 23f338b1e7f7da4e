use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::word::Word;

use super::enumerate::{run, Search, State};
use super::{Layout, Options};

/// Pairing counts that determine the first and second order limits of
/// `Tr(G_w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalCounts {
    /// Pairings of `w` alone that glue into a sphere.
    pub a: u64,
    /// Pairings of `w` alone that glue into a projective plane.
    pub p: u64,
    /// Pairings of `(w, w*)` that glue into a single sphere.
    pub b: u64,
    /// Pairings of `(w, w)` that glue into a single sphere.
    pub c: u64,
}

fn histogram_to_poly(hist: &[u128], m: usize) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for (v, &n) in hist.iter().enumerate() {
        p.add_term(v as i64 - (m / 2) as i64, BigInt::from(n));
    }
    p
}

struct Histogram {
    m: usize,
}

impl Search for Histogram {
    type Acc = Vec<u128>;

    fn init(&self) -> Vec<u128> {
        vec![0; self.m + 1]
    }

    fn leaf(&self, state: &State<'_>, acc: &mut Vec<u128>) {
        acc[state.vertices()] += 1;
    }

    fn merge(&self, mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    }
}

/// Pairings whose surface has exactly `target` vertices (and, if requested,
/// is connected).
struct TargetCount {
    target: i64,
    connected: bool,
}

impl Search for TargetCount {
    type Acc = u64;

    fn init(&self) -> u64 {
        0
    }

    fn prune(&self, state: &mut State<'_>, _acc: &u64) -> bool {
        state
            .vertex_bound(self.connected)
            .is_none_or(|b| b < self.target)
    }

    fn leaf(&self, state: &State<'_>, acc: &mut u64) {
        if state.vertices() as i64 == self.target && (!self.connected || state.components() == 1)
        {
            *acc += 1;
        }
    }

    fn merge(&self, a: u64, b: u64) -> u64 {
        a + b
    }
}

/// Largest vertex count and the number of pairings attaining it.
struct MaxVertices;

impl Search for MaxVertices {
    type Acc = (i64, u64);

    fn init(&self) -> (i64, u64) {
        (-1, 0)
    }

    fn prune(&self, state: &mut State<'_>, acc: &(i64, u64)) -> bool {
        state.vertex_bound(false).is_none_or(|b| b < acc.0)
    }

    fn leaf(&self, state: &State<'_>, acc: &mut (i64, u64)) {
        let v = state.vertices() as i64;
        if v > acc.0 {
            *acc = (v, 1);
        } else if v == acc.0 {
            acc.1 += 1;
        }
    }

    fn merge(&self, a: (i64, u64), b: (i64, u64)) -> (i64, u64) {
        match a.0.cmp(&b.0) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
        }
    }
}

/// Per-component `(faces, euler characteristic)` of a complete gluing.
fn component_profile(state: &State<'_>) -> Vec<(usize, i64)> {
    let lay = state.lay;
    let m = lay.len();
    let k = lay.faces();
    let mut faces = vec![0usize; k];
    let mut edges = vec![0usize; k];
    let mut verts = vec![0usize; k];
    for f in 0..k {
        let r = state.faces.find(f);
        faces[r] += 1;
        edges[r] += lay.face_start[f + 1] - lay.face_start[f];
    }
    let mut seen = vec![false; m];
    for s in 0..m {
        let root = state.slots.find(s);
        if !std::mem::replace(&mut seen[root], true) {
            verts[state.faces.find(lay.face_of[s])] += 1;
        }
    }
    (0..k)
        .filter(|&r| faces[r] > 0)
        .map(|r| (faces[r], verts[r] as i64 - (edges[r] / 2) as i64 + faces[r] as i64))
        .collect()
}

/// An atom is a single face glued to itself into a sphere or projective plane.
fn has_atom(profile: &[(usize, i64)]) -> bool {
    profile.iter().any(|&(f, chi)| f == 1 && chi >= 1)
}

struct AtomFreeHistogram {
    m: usize,
}

impl Search for AtomFreeHistogram {
    type Acc = Vec<u128>;

    fn init(&self) -> Vec<u128> {
        vec![0; self.m + 1]
    }

    fn leaf(&self, state: &State<'_>, acc: &mut Vec<u128>) {
        if !has_atom(&component_profile(state)) {
            acc[state.vertices()] += 1;
        }
    }

    fn merge(&self, mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    }
}

/// Pairings whose surface is a disjoint union of two-face spheres.
struct BiAtomic {
    target: i64,
}

impl Search for BiAtomic {
    type Acc = u64;

    fn init(&self) -> u64 {
        0
    }

    fn prune(&self, state: &mut State<'_>, _acc: &u64) -> bool {
        state.vertex_bound(false).is_none_or(|b| b < self.target)
    }

    fn leaf(&self, state: &State<'_>, acc: &mut u64) {
        if state.vertices() as i64 == self.target
            && component_profile(state)
                .iter()
                .all(|&(f, chi)| f == 2 && chi == 2)
        {
            *acc += 1;
        }
    }

    fn merge(&self, a: u64, b: u64) -> u64 {
        a + b
    }
}

/// `E[∏ Tr(G_{w_i})]` as an exact Laurent polynomial in `N`: the sum over
/// all decorated pairings of `N^{V - m/2}`.
pub fn genus_expansion(words: &[Word]) -> Result<LaurentPolynomial> {
    genus_expansion_with(words, &Options::default())
}

pub fn genus_expansion_with(words: &[Word], options: &Options) -> Result<LaurentPolynomial> {
    let lay = Layout::new(words, options)?;
    let m = lay.len();
    Ok(histogram_to_poly(&run(&lay, &Histogram { m }), m))
}

fn count_target(words: &[Word], options: &Options, target_excess: i64, connected: bool) -> Result<u64> {
    let lay = Layout::new(words, options)?;
    let target = (lay.len() / 2) as i64 + target_excess;
    Ok(run(&lay, &TargetCount { target, connected }))
}

/// Pairings of the two faces `(w1, w2)` that glue into a single sphere.
pub(crate) fn two_face_sphere_count(w1: &Word, w2: &Word, options: &Options) -> Result<u64> {
    count_target(&[w1.clone(), w2.clone()], options, 0, true)
}

/// Pairings of one face that glue into a sphere.
pub(crate) fn one_face_sphere_count(w: &Word, options: &Options) -> Result<u64> {
    count_target(std::slice::from_ref(w), options, 1, true)
}

/// Number of pairings of the single face `w` that glue into a sphere, the
/// `a` of [`spherical_counts`] without the two-face counts.
pub fn sphere_count(w: &Word) -> Result<u64> {
    one_face_sphere_count(w, &Options::default())
}

pub fn spherical_counts(w: &Word) -> Result<SphericalCounts> {
    spherical_counts_with(w, &Options::default())
}

pub fn spherical_counts_with(w: &Word, options: &Options) -> Result<SphericalCounts> {
    let single = [w.clone()];
    // One face: V - m/2 + 1 is the Euler characteristic.
    let a = count_target(&single, options, 1, true)?;
    let p = count_target(&single, options, 0, true)?;
    // Two faces: a connected sphere has V = m/2.
    let b = count_target(&[w.clone(), w.star()], options, 0, true)?;
    let c = count_target(&[w.clone(), w.clone()], options, 0, true)?;
    Ok(SphericalCounts { a, p, b, c })
}

/// Sum of `N^{V - m/2}` over pairings with no atom, which is the expectation
/// of `∏ (Tr(G_{w_i}) - a_{w_i} N - p_{w_i})`.
///
/// The direct enumeration is checked against the inclusion-exclusion
/// combination of uncentered expansions; a disagreement is reported as
/// [`Error::IdentityMismatch`].
pub fn atom_free_expansion(words: &[Word]) -> Result<LaurentPolynomial> {
    atom_free_expansion_with(words, &Options::default())
}

pub fn atom_free_expansion_with(words: &[Word], options: &Options) -> Result<LaurentPolynomial> {
    let lay = Layout::new(words, options)?;
    let m = lay.len();
    let direct = histogram_to_poly(&run(&lay, &AtomFreeHistogram { m }), m);
    let combined = inclusion_exclusion(words, options)?;
    if direct != combined {
        return Err(Error::IdentityMismatch {
            what: "atom-free expansion vs inclusion-exclusion".into(),
            left: direct.to_string(),
            right: combined.to_string(),
        });
    }
    Ok(direct)
}

/// `Σ_T ∏_{i∉T} (-(a_i N + p_i)) · E[∏_{i∈T} Tr(G_{w_i})]` over subsets `T`.
pub fn atom_free_expansion_by_inclusion_exclusion(words: &[Word]) -> Result<LaurentPolynomial> {
    inclusion_exclusion(words, &Options::default())
}

fn inclusion_exclusion(words: &[Word], options: &Options) -> Result<LaurentPolynomial> {
    let k = words.len();
    if k >= 20 {
        return Err(Error::TooLarge(format!("{k} faces for inclusion-exclusion")));
    }
    Layout::new(words, options)?;
    let mut shifts = Vec::with_capacity(k);
    for w in words {
        let single = [w.clone()];
        let a = count_target(&single, options, 1, true)?;
        let p = count_target(&single, options, 0, true)?;
        let mut s = LaurentPolynomial::monomial(1, -(a as i64));
        s.add_term(0, BigInt::from(-(p as i64)));
        shifts.push(s);
    }
    let mut total = LaurentPolynomial::zero();
    for mask in 0u32..(1 << k) {
        let mut term = LaurentPolynomial::one();
        let mut kept = Vec::new();
        for (i, w) in words.iter().enumerate() {
            if mask >> i & 1 == 1 {
                kept.push(w.clone());
            } else {
                term = &term * &shifts[i];
            }
        }
        if term.is_zero() {
            continue;
        }
        if !kept.is_empty() {
            term = &term * &genus_expansion_with(&kept, options)?;
        }
        total += term;
    }
    Ok(total)
}

/// Number of pairings gluing the `k` faces into `k/2` spheres of two faces
/// each; always zero for odd `k`.
pub fn bi_atomic_count(words: &[Word]) -> Result<u64> {
    bi_atomic_count_with(words, &Options::default())
}

pub fn bi_atomic_count_with(words: &[Word], options: &Options) -> Result<u64> {
    let lay = Layout::new(words, options)?;
    if lay.faces() % 2 == 1 {
        return Ok(0);
    }
    let target = (lay.len() / 2) as i64;
    Ok(run(&lay, &BiAtomic { target }))
}

/// The maximal vertex count over all pairings and how many pairings attain it.
pub fn nondegenerate_count(words: &[Word]) -> Result<(u64, usize)> {
    nondegenerate_count_with(words, &Options::default())
}

pub fn nondegenerate_count_with(words: &[Word], options: &Options) -> Result<(u64, usize)> {
    let lay = Layout::new(words, options)?;
    let (v, n) = run(&lay, &MaxVertices);
    if n == 0 {
        return Err(Error::NoPairing);
    }
    Ok((n, v as usize))
}
