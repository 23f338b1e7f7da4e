//! Periodic band matrices: entries `M_{ij}` vanish unless the cyclic distance
//! between `i` and `j` is at most `b`, and have variance `1/l` with
//! `l = min(2b + 1, N)`.
//!
//! A pairing `φ` contributes `|I_N(φ)| l^{-m/2}` to the expectation, where
//! `I_N(φ)` is the set of labelings of the glued surface's vertices by
//! `{1..N}` in which the two ends of every edge are within distance `b`.
//! That count only depends on the constraint graph `Γ_φ` of vertices joined by
//! letter edges.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wick::{
    enumerate_pairings, glue, one_face_sphere_count, slot_classes, DecoratedPairing, Layout,
    Options, HARD_MAX_LENGTH,
};
use crate::word::Word;

/// Largest core (after removing leaves) handled by [`band_index_count`].
pub const MAX_CORE_VERTICES: usize = 8;

/// Budget on `l^(core - 2)`, the number of partial labelings enumerated.
pub const MAX_LABELINGS: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandConfig {
    pub n: u64,
    pub b: u64,
    /// `min(2b + 1, N)`.
    pub l: u64,
}

impl BandConfig {
    pub fn new(n: u64, b: u64) -> Result<Self> {
        if n == 0 || b == 0 {
            return Err(Error::InvalidArgument("band needs N >= 1 and b >= 1".into()));
        }
        Ok(BandConfig {
            n,
            b,
            l: (2 * b + 1).min(n),
        })
    }

    /// `b = round(λN)`; `λ ≥ 1/2` gives the full matrix.
    pub fn from_lambda(n: u64, lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(Error::InvalidArgument(format!("bad λ = {lambda}")));
        }
        let b = if lambda >= 0.5 {
            n
        } else {
            ((lambda * n as f64).round() as u64).max(1)
        };
        BandConfig::new(n, b)
    }

    pub fn is_full(&self) -> bool {
        self.l == self.n
    }
}

/// Simple graph on `vertices` nodes; loops and repeated edges are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ConstraintGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        for &(_, b) in &set {
            assert!(b < vertices, "edge endpoint out of range");
        }
        ConstraintGraph {
            vertices,
            edges: set.into_iter().collect(),
        }
    }

    pub fn cycle(m: usize) -> Self {
        ConstraintGraph::new(m, (0..m).map(|i| (i, (i + 1) % m)))
    }

    pub fn path(v: usize) -> Self {
        ConstraintGraph::new(v, (1..v).map(|i| (i - 1, i)))
    }

    /// The graph of a pairing: vertices are the glued slot classes, and each
    /// letter joins the classes of its two slots.
    pub fn from_pairing(words: &[Word], pairing: &DecoratedPairing) -> Result<Self> {
        let lay = Layout::new(
            words,
            &Options {
                max_length: HARD_MAX_LENGTH,
            },
        )?;
        let pairs = crate::wick::resolve_pairing(&lay, pairing)?;
        let class = slot_classes(&lay, &pairs);
        let v = class.iter().max().map_or(0, |c| c + 1);
        Ok(ConstraintGraph::new(
            v,
            (0..lay.len()).map(|e| (class[e], class[lay.next[e]])),
        ))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Vertex sets of the connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut out = Vec::new();
        for s in 0..self.vertices {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &u in &adj[comp[i]] {
                    if !std::mem::replace(&mut seen[u], true) {
                        comp.push(u);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }

    /// Whether the graph, after dropping loops and multi-edges, is what a
    /// cycle of length `m` becomes: a single vertex, a single edge, or a
    /// simple cycle on `m ≥ 3` vertices.
    pub fn is_cycle_of_length(&self, m: usize) -> bool {
        if self.vertices != m || self.components().len() != 1 {
            return false;
        }
        match m {
            0 => false,
            1 => self.edges.is_empty(),
            2 => self.edges.len() == 1,
            _ => self.edges.len() == m && self.adjacency().iter().all(|a| a.len() == 2),
        }
    }
}

/// Removes degree-one vertices until none are left (or a single vertex
/// remains). Returns the number removed and the remaining core.
fn strip_leaves(comp: &[usize], adj: &[Vec<usize>]) -> (usize, Vec<usize>) {
    let mut alive: HashMap<usize, usize> = comp.iter().map(|&v| (v, adj[v].len())).collect();
    let mut stack: Vec<usize> = comp.iter().copied().filter(|v| adj[*v].len() == 1).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        if alive.len() <= 1 || alive.get(&v) != Some(&1) {
            continue;
        }
        alive.remove(&v);
        removed += 1;
        for u in &adj[v] {
            if let Some(d) = alive.get_mut(u) {
                *d -= 1;
                if *d == 1 {
                    stack.push(*u);
                }
            }
        }
    }
    let mut core: Vec<usize> = alive.into_keys().collect();
    core.sort_unstable();
    (removed, core)
}

/// Offsets `t ∈ [-b, b]` (relative to a parent label) as disjoint intervals.
type Intervals = Vec<(i64, i64)>;

fn intersect(a: &Intervals, b: &Intervals) -> Intervals {
    let mut out = Vec::new();
    for &(x0, x1) in a {
        for &(y0, y1) in b {
            let (lo, hi) = (x0.max(y0), x1.min(y1));
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out
}

struct CoreCounter {
    n: i64,
    b: i64,
    order: Vec<usize>,
    parent: Vec<usize>,
    /// Earlier neighbors (by position in `order`) other than the parent.
    back: Vec<Vec<usize>>,
}

impl CoreCounter {
    fn new(core: &[usize], adj: &[Vec<usize>], cfg: &BandConfig) -> Self {
        let mut pos: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![core[0]];
        pos.insert(core[0], 0);
        let in_core: BTreeSet<usize> = core.iter().copied().collect();
        let mut parent = vec![usize::MAX];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &u in &adj[v] {
                if in_core.contains(&u) && !pos.contains_key(&u) {
                    pos.insert(u, order.len());
                    order.push(u);
                    parent.push(i);
                }
            }
            i += 1;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                adj[v]
                    .iter()
                    .filter_map(|u| pos.get(u).copied())
                    .filter(|&j| j < i && j != parent[i])
                    .collect()
            })
            .collect();
        CoreCounter {
            n: cfg.n as i64,
            b: cfg.b as i64,
            order,
            parent,
            back,
        }
    }

    /// Admissible offsets for vertex `i` given the labels of earlier ones.
    fn window(&self, i: usize, labels: &[i64]) -> Intervals {
        let (n, b) = (self.n, self.b);
        let base = labels[self.parent[i]];
        let mut w: Intervals = vec![(-b, b)];
        for &j in &self.back[i] {
            let delta = (labels[j] - base).rem_euclid(n);
            let allowed: Intervals = [-1, 0, 1]
                .iter()
                .map(|k| (delta + k * n - b, delta + k * n + b))
                .collect();
            w = intersect(&w, &allowed);
            if w.is_empty() {
                break;
            }
        }
        w
    }

    fn count(&self, i: usize, labels: &mut [i64]) -> u128 {
        let w = self.window(i, labels);
        if i + 1 == self.order.len() {
            return w.iter().map(|&(lo, hi)| (hi - lo + 1) as u128).sum();
        }
        let base = labels[self.parent[i]];
        let mut total = 0;
        for (lo, hi) in w {
            for t in lo..=hi {
                labels[i] = (base + t).rem_euclid(self.n);
                total += self.count(i + 1, labels);
            }
        }
        total
    }

    fn run(&self) -> u128 {
        let mut labels = vec![0i64; self.order.len()];
        self.count(1, &mut labels)
    }
}

/// Number of labelings of the vertices of `g` by `{1..N}` with adjacent
/// vertices within cyclic distance `b`.
///
/// Translation invariance fixes one vertex per component; leaves contribute
/// a factor `l` each; the remaining core is enumerated vertex by vertex with
/// offset windows. Cores larger than [`MAX_CORE_VERTICES`] or needing more
/// than [`MAX_LABELINGS`] partial labelings fail with `TooLarge`.
pub fn band_index_count(g: &ConstraintGraph, cfg: &BandConfig) -> Result<BigInt> {
    let n = BigInt::from(cfg.n);
    if cfg.is_full() {
        return Ok(num_traits::pow(n, g.vertices));
    }
    let l = BigInt::from(cfg.l);
    let adj = g.adjacency();
    let mut total = BigInt::one();
    for comp in g.components() {
        let (leaves, core) = strip_leaves(&comp, &adj);
        total *= &n * num_traits::pow(l.clone(), leaves);
        if core.len() <= 1 {
            continue;
        }
        let work = (cfg.l as f64).powi(core.len() as i32 - 2);
        if core.len() > MAX_CORE_VERTICES || work > MAX_LABELINGS {
            return Err(Error::TooLarge(format!(
                "band count over a core of {} vertices with l = {}",
                core.len(),
                cfg.l
            )));
        }
        total *= BigInt::from(CoreCounter::new(&core, &adj, cfg).run());
    }
    Ok(total)
}

/// Extrapolated value with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Neville's scheme for the value at `x = 0` of the polynomial through the
/// points; returns the last two diagonal entries.
fn neville_at_zero(xs: &[BigRational], ys: &[BigRational]) -> (BigRational, BigRational) {
    let n = xs.len();
    let mut p: Vec<BigRational> = ys.to_vec();
    let mut prev_last = ys[n - 1].clone();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &xs[i] * &p[i - 1] - &xs[i - k] * &p[i];
            p[i] = num / (&xs[i] - &xs[i - k]);
        }
        if k == n - 2 {
            prev_last = p[n - 1].clone();
        }
    }
    (p[n - 1].clone(), prev_last)
}

/// `|I_N| / (N^c l^(V-c))` for `c` components.
fn normalized_count(g: &ConstraintGraph, cfg: &BandConfig) -> Result<BigRational> {
    let count = band_index_count(g, cfg)?;
    let c = g.components().len();
    let denom = num_traits::pow(BigInt::from(cfg.n), c)
        * num_traits::pow(BigInt::from(cfg.l), g.vertices - c);
    Ok(BigRational::new(count, denom))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Volume coefficient `α_Γ` of the band regime `b ≈ λN`.
///
/// - `λ = 0` (`b = o(N)`): with `b = s²` and `N = s³` for `s > 2(V-1)`, no
///   labeling wraps around the circle, so the normalized count is an exact
///   polynomial of degree `V-1` in `1/l`. `V + 2` values of `s` are
///   extrapolated to `1/l = 0` exactly; the error is the gap between the last
///   two extrapolants.
/// - `0 < λ < 1/2`: `b = round(λN)` along `N = 16, 32, 64, ...` as far as the
///   labeling budget allows, extrapolated in `1/N`.
/// - `λ ≥ 1/2`: the full matrix, `α = 1`.
pub fn alpha(g: &ConstraintGraph, lambda: f64) -> Result<Estimate> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidArgument(format!("bad λ = {lambda}")));
    }
    if lambda >= 0.5 || g.edges.is_empty() {
        return Ok(Estimate {
            value: 1.0,
            error: 0.0,
        });
    }
    let v = g.vertices as u64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    if lambda == 0.0 {
        let s0 = 2 * v.saturating_sub(1) + 1;
        for s in s0..s0 + v + 2 {
            let cfg = BandConfig::new(s * s * s, s * s)?;
            xs.push(BigRational::new(BigInt::one(), BigInt::from(cfg.l)));
            ys.push(normalized_count(g, &cfg)?);
        }
    } else {
        let mut n = 16u64;
        while xs.len() < 5 {
            let cfg = BandConfig::from_lambda(n, lambda)?;
            match normalized_count(g, &cfg) {
                Ok(y) => {
                    xs.push(BigRational::new(BigInt::one(), BigInt::from(n)));
                    ys.push(y);
                }
                Err(Error::TooLarge(_)) if xs.len() >= 2 => break,
                Err(e) => return Err(e),
            }
            n *= 2;
        }
    }
    let (last, prev) = neville_at_zero(&xs, &ys);
    Ok(Estimate {
        value: to_f64(&last),
        error: to_f64(&(last - prev)).abs(),
    })
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Number of half-periods integrated explicitly by [`alpha_cycle`].
const SINC_PERIODS: usize = 1000;

/// `α_m = (1/π) ∫ sinc(θ)^m dθ` over the real line.
///
/// The integral over `[0, Kπ]` is split at the zeros `jπ` and each piece is
/// done by 24-point Gauss-Legendre. For even `m` the remaining tail is
/// `≈ binom(m, m/2) 2^{-m} (Kπ)^{1-m} / (m-1)`; for odd `m` the pieces
/// alternate in sign and the partial sums are accelerated by repeated
/// averaging. `K = 1000` keeps the absolute error below `1e-6`.
pub fn alpha_cycle(m: u32) -> f64 {
    assert!(m >= 1, "cycle length must be positive");
    let gl = gauss_legendre(24);
    let pi = std::f64::consts::PI;
    let piece = |j: usize| -> f64 {
        let (a, b) = (j as f64 * pi, (j + 1) as f64 * pi);
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        gl.iter()
            .map(|&(x, w)| {
                let t = mid + half * x;
                w * (t.sin() / t).powi(m as i32)
            })
            .sum::<f64>()
            * half
    };
    let pieces: Vec<f64> = (0..SINC_PERIODS).map(piece).collect();
    let half_line = if m.is_multiple_of(2) {
        let x = SINC_PERIODS as f64 * pi;
        let mean = binom_f64(m, m / 2) / 2f64.powi(m as i32);
        pieces.iter().sum::<f64>() + mean * x.powf(1.0 - m as f64) / (m as f64 - 1.0)
    } else {
        let mut partial: Vec<f64> = pieces
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        for _ in 0..40 {
            partial = partial.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();
        }
        *partial.last().unwrap()
    };
    2.0 * half_line / pi
}

fn binom_f64(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn require_complex(words: &[Word]) -> Result<()> {
    if words.iter().all(Word::is_complex_ginibre) {
        Ok(())
    } else {
        Err(Error::UnsupportedConfiguration(
            "band matrices are defined for complex Ginibre letters only".into(),
        ))
    }
}

/// `Σ_φ |I_N(φ)| l^{-m/2}` over all admissible pairings.
pub fn band_genus_expansion(words: &[Word], cfg: &BandConfig) -> Result<BigRational> {
    require_complex(words)?;
    let m: usize = words.iter().map(Word::len).sum();
    let mut cache: HashMap<ConstraintGraph, BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for p in enumerate_pairings(words)? {
        let g = ConstraintGraph::from_pairing(words, &p)?;
        if let Some(c) = cache.get(&g) {
            total += c;
            continue;
        }
        let c = band_index_count(&g, cfg)?;
        total += &c;
        cache.insert(g, c);
    }
    Ok(BigRational::new(
        total,
        num_traits::pow(BigInt::from(cfg.l), m / 2),
    ))
}

/// Band analogue of the Gaussian limit parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandClt {
    pub a: u64,
    /// `Σ α_φ` over spherical pairings of `(w, w*)`.
    pub b: f64,
    /// `Σ α_φ` over spherical pairings of `(w, w)`.
    pub c: f64,
    /// Accumulated extrapolation error of `b` and `c`.
    pub error: f64,
}

fn spherical_alpha_sum(words: &[Word], lambda: f64, cycle_len: Option<usize>) -> Result<(f64, f64)> {
    let mut cache: HashMap<ConstraintGraph, Estimate> = HashMap::new();
    let (mut sum, mut err) = (0.0, 0.0);
    for p in enumerate_pairings(words)? {
        if !glue(words, &p)?.is_sphere() {
            continue;
        }
        let g = ConstraintGraph::from_pairing(words, &p)?;
        if let Some(m) = cycle_len {
            if !g.is_cycle_of_length(m) {
                return Err(Error::IdentityMismatch {
                    what: "constraint graph of a spherical pairing of (w, w*)".into(),
                    left: format!("{g:?}"),
                    right: format!("cycle of length {m}"),
                });
            }
        }
        let est = match cache.get(&g) {
            Some(e) => *e,
            None => {
                let e = alpha(&g, lambda)?;
                cache.insert(g, e);
                e
            }
        };
        sum += est.value;
        err += est.error;
    }
    Ok((sum, err))
}

/// `a_w`, and the sums of `α_φ` over the spherical pairings of `(w, w*)` and
/// of `(w, w)`. For star-free words every such graph is checked to be a
/// cycle of length `|w|`.
pub fn band_clt_params(w: &Word, lambda: f64) -> Result<BandClt> {
    require_complex(std::slice::from_ref(w))?;
    let a = one_face_sphere_count(w, &Options::default())?;
    let cycle = w.is_star_free().then_some(w.len());
    let (b, eb) = spherical_alpha_sum(&[w.clone(), w.star()], lambda, cycle)?;
    let (c, ec) = spherical_alpha_sum(&[w.clone(), w.clone()], lambda, None)?;
    Ok(BandClt {
        a,
        b,
        c,
        error: eb + ec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u64, b: u64) -> BandConfig {
        BandConfig::new(n, b).unwrap()
    }

    /// Direct count over all `N^V` labelings.
    fn brute(g: &ConstraintGraph, c: &BandConfig) -> u64 {
        let n = c.n as usize;
        let mut labels = vec![0usize; g.vertices];
        let mut count = 0;
        loop {
            let ok = g.edges.iter().all(|&(a, b)| {
                let d = labels[a].abs_diff(labels[b]);
                d.min(n - d) as u64 <= c.b
            });
            count += ok as u64;
            let mut i = 0;
            loop {
                if i == labels.len() {
                    return count;
                }
                labels[i] += 1;
                if labels[i] < n {
                    break;
                }
                labels[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn config() {
        assert_eq!(cfg(100, 10).l, 21);
        assert_eq!(cfg(10, 10).l, 10);
        assert!(BandConfig::from_lambda(100, 0.7).unwrap().is_full());
        assert_eq!(BandConfig::from_lambda(100, 0.25).unwrap().b, 25);
    }

    #[test]
    fn counts_match_brute_force() {
        let graphs = [
            ConstraintGraph::new(1, []),
            ConstraintGraph::path(3),
            ConstraintGraph::new(2, [(0, 1), (1, 0), (0, 1)]),
            ConstraintGraph::cycle(3),
            ConstraintGraph::cycle(4),
            ConstraintGraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]),
            ConstraintGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
            ConstraintGraph::new(5, [(0, 1), (2, 3), (3, 4), (4, 2)]),
        ];
        for g in &graphs {
            for n in [5u64, 7, 9, 12] {
                for b in 1..4 {
                    let c = cfg(n, b);
                    assert_eq!(
                        band_index_count(g, &c).unwrap(),
                        BigInt::from(brute(g, &c)),
                        "{g:?} N={n} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn tree_formula() {
        let c = cfg(50, 3);
        for v in 1..6 {
            let expect = BigInt::from(50) * num_traits::pow(BigInt::from(7), v - 1);
            assert_eq!(band_index_count(&ConstraintGraph::path(v), &c).unwrap(), expect);
        }
    }

    #[test]
    fn full_band_is_a_power() {
        let g = ConstraintGraph::cycle(4);
        assert_eq!(band_index_count(&g, &cfg(6, 3)).unwrap(), BigInt::from(6u32.pow(4)));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&ConstraintGraph::path(4), 0.0).unwrap().value, 1.0);
        assert_eq!(alpha(&ConstraintGraph::cycle(2), 0.0).unwrap().value, 1.0);
        let a3 = alpha(&ConstraintGraph::cycle(3), 0.0).unwrap();
        assert!((a3.value - 0.75).abs() < 1e-12, "{a3:?}");
        let t = alpha(&ConstraintGraph::path(3), 0.2).unwrap();
        assert!((t.value - 1.0).abs() < 1e-9, "{t:?}");
        assert_eq!(alpha(&ConstraintGraph::cycle(3), 0.5).unwrap().value, 1.0);
    }

    #[test]
    fn alpha_cycle_small() {
        assert!((alpha_cycle(1) - 1.0).abs() < 1e-6);
        assert!((alpha_cycle(2) - 1.0).abs() < 1e-6);
        assert!((alpha_cycle(3) - 0.75).abs() < 1e-6);
        assert!((alpha_cycle(4) - 2.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn band_expansion_examples() {
        let ws = vec![Word::parse("G1 G1*").unwrap()];
        let v = band_genus_expansion(&ws, &cfg(100, 10)).unwrap();
        assert_eq!(v, BigRational::from_integer(100.into()));
        let ws = vec![Word::parse("S1 S1").unwrap()];
        assert!(matches!(
            band_genus_expansion(&ws, &cfg(10, 2)),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn band_clt_star_free() {
        let p = band_clt_params(&Word::parse("G1 G2 G3").unwrap(), 0.0).unwrap();
        assert_eq!(p.a, 0);
        assert!((p.b - 0.75).abs() < 1e-9);
        assert_eq!(p.c, 0.0);
    }
}
