use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::matrix::{cyclic_distance, CMatrix};
use crate::error::{Error, Result};
use crate::word::Ensemble;

/// Distribution of the unit-variance entry `Z` of the sparse and band models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryDist {
    /// Standard complex Gaussian, `E|Z|² = 1`.
    ComplexGaussian,
    /// `Z = r e^{iθ}` with `θ` uniform and `r² ∈ {0, 2}` equiprobable. Phase
    /// invariant with `E|Z|² = 1` and `E|Z|⁴ = 2`, like the Gaussian.
    FourthMatched,
}

impl EntryDist {
    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> Complex64 {
        match self {
            EntryDist::ComplexGaussian => {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im) / SQRT_2
            }
            EntryDist::FourthMatched => {
                let theta = rng.gen::<f64>() * 2.0 * PI;
                if rng.gen::<bool>() {
                    Complex64::from_polar(SQRT_2, theta)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EnsembleKind {
    GinibreComplex,
    GinibreReal,
    Gue,
    Goe,
    /// `M_ij = B_ij Z_ij / √(Np)` with `B_ij` Bernoulli(`p`).
    SparseComplex { p: f64, dist: EntryDist },
    /// `M_ij = 1{d(i,j) ≤ b} Z_ij / √l` with `l = min(2b + 1, N)` and `d` the
    /// cyclic distance.
    BandComplex { b: usize },
}

/// A matrix model at a fixed dimension.
///
/// When sampling words, letters of the complex Ginibre family are drawn from
/// this model if it is one of the complex kinds. Letters of the other
/// families are always drawn from their own Gaussian ensemble of the same
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize) -> Result<Self> {
        let spec = EnsembleSpec { kind, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ginibre(n: usize) -> Self {
        EnsembleSpec {
            kind: EnsembleKind::GinibreComplex,
            n,
        }
    }

    pub fn sparse(n: usize, p: f64, dist: EntryDist) -> Result<Self> {
        EnsembleSpec::new(EnsembleKind::SparseComplex { p, dist }, n)
    }

    /// Dense matrices with fourth-moment-matched entries.
    pub fn fourth_matched(n: usize) -> Self {
        EnsembleSpec {
            kind: EnsembleKind::SparseComplex {
                p: 1.0,
                dist: EntryDist::FourthMatched,
            },
            n,
        }
    }

    pub fn band(n: usize, b: usize) -> Result<Self> {
        EnsembleSpec::new(EnsembleKind::BandComplex { b }, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("N must be positive".into()));
        }
        match self.kind {
            EnsembleKind::SparseComplex { p, .. } => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::InvalidArgument(format!("sparsity p = {p} not in (0, 1]")));
                }
                if p * (self.n as f64) < 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "sparsity p = {p} gives N·p < 1 at N = {}",
                        self.n
                    )));
                }
            }
            EnsembleKind::BandComplex { b: 0 } => {
                return Err(Error::InvalidArgument("band width b must be at least 1".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// The model used for letters of `ensemble`.
    pub fn for_ensemble(&self, ensemble: Ensemble) -> EnsembleSpec {
        let kind = match ensemble {
            Ensemble::GinibreComplex => match self.kind {
                k @ (EnsembleKind::SparseComplex { .. } | EnsembleKind::BandComplex { .. }) => k,
                _ => EnsembleKind::GinibreComplex,
            },
            Ensemble::GinibreReal => EnsembleKind::GinibreReal,
            Ensemble::Gue => EnsembleKind::Gue,
            Ensemble::Goe => EnsembleKind::Goe,
        };
        EnsembleSpec { kind, n: self.n }
    }

    /// Number of sites `l` in a band window, or `N` for the other models.
    pub fn band_sites(&self) -> usize {
        match self.kind {
            EnsembleKind::BandComplex { b } => (2 * b + 1).min(self.n),
            _ => self.n,
        }
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EnsembleKind::GinibreComplex => write!(f, "gaussian"),
            EnsembleKind::GinibreReal => write!(f, "real"),
            EnsembleKind::Gue => write!(f, "gue"),
            EnsembleKind::Goe => write!(f, "goe"),
            EnsembleKind::SparseComplex { p, dist } => {
                let d = match dist {
                    EntryDist::ComplexGaussian => "gaussian",
                    EntryDist::FourthMatched => "fourth",
                };
                if p == 1.0 && dist == EntryDist::FourthMatched {
                    write!(f, "fourth")
                } else {
                    write!(f, "sparse:p={p},dist={d}")
                }
            }
            EnsembleKind::BandComplex { b } => write!(f, "band:b={b}"),
        }
    }
}

/// Ensemble kind from a command-line style description: `gaussian`,
/// `fourth`, `real`, `gue`, `goe`, `sparse:p=<p>[,dist=fourth]` or
/// `band:b=<b>`. The sparsity may be given as `p=sqrt` for `N^{-1/2}`, which
/// needs `N` and therefore goes through [`parse_ensemble`].
impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_kind(s, None)
    }
}

pub fn parse_ensemble(s: &str, n: usize) -> Result<EnsembleSpec> {
    EnsembleSpec::new(parse_kind(s, Some(n))?, n)
}

fn parse_kind(s: &str, n: Option<usize>) -> Result<EnsembleKind> {
    let bad = |msg: &str| Error::InvalidArgument(format!("ensemble '{s}': {msg}"));
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut params = Vec::new();
    for kv in rest.split(',').filter(|kv| !kv.is_empty()) {
        let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        params.push((k.trim(), v.trim()));
    }
    let get = |key: &str| params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    for (k, _) in &params {
        if !matches!((name, *k), ("sparse", "p" | "dist") | ("band", "b")) {
            return Err(bad(&format!("unknown parameter '{k}'")));
        }
    }
    Ok(match name {
        "gaussian" | "ginibre" => EnsembleKind::GinibreComplex,
        "fourth" => EnsembleKind::SparseComplex {
            p: 1.0,
            dist: EntryDist::FourthMatched,
        },
        "real" => EnsembleKind::GinibreReal,
        "gue" => EnsembleKind::Gue,
        "goe" => EnsembleKind::Goe,
        "sparse" => {
            let p = match get("p").ok_or_else(|| bad("missing p"))? {
                "sqrt" => {
                    let n = n.ok_or_else(|| bad("p=sqrt needs N"))?;
                    1.0 / (n as f64).sqrt()
                }
                v => v.parse().map_err(|_| bad("p is not a number"))?,
            };
            let dist = match get("dist") {
                None | Some("gaussian") => EntryDist::ComplexGaussian,
                Some("fourth") => EntryDist::FourthMatched,
                Some(_) => return Err(bad("dist must be gaussian or fourth")),
            };
            EnsembleKind::SparseComplex { p, dist }
        }
        "band" => {
            let b = get("b").ok_or_else(|| bad("missing b"))?;
            EnsembleKind::BandComplex {
                b: b.parse().map_err(|_| bad("b is not an integer"))?,
            }
        }
        _ => return Err(bad("unknown ensemble")),
    })
}

/// Generator for one letter in one sample.
///
/// The 256-bit ChaCha8 key holds the run seed, the letter's ensemble and its
/// index; the 64-bit stream number is the sample index. Every (sample,
/// letter) pair therefore owns an independent stream, whatever the number of
/// workers.
pub fn letter_rng(seed: u64, ensemble: Ensemble, index: u32, sample: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8] = ensemble as u8 + 1;
    key[12..16].copy_from_slice(&index.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(sample);
    rng
}

pub fn sample_matrix<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> CMatrix {
    let n = spec.n;
    let scale = 1.0 / (n as f64).sqrt();
    match spec.kind {
        EnsembleKind::GinibreComplex => {
            CMatrix::from_fn(n, |_, _| EntryDist::ComplexGaussian.draw(rng) * scale)
        }
        EnsembleKind::GinibreReal => CMatrix::from_fn(n, |_, _| {
            let x: f64 = rng.sample(StandardNormal);
            Complex64::new(x * scale, 0.0)
        }),
        EnsembleKind::Gue => {
            let a = CMatrix::from_fn(n, |_, _| EntryDist::ComplexGaussian.draw(rng) * scale);
            symmetrize(&a, true)
        }
        EnsembleKind::Goe => {
            let b = CMatrix::from_fn(n, |_, _| {
                let x: f64 = rng.sample(StandardNormal);
                Complex64::new(x * scale, 0.0)
            });
            symmetrize(&b, false)
        }
        EnsembleKind::SparseComplex { p, dist } => {
            let scale = 1.0 / (n as f64 * p).sqrt();
            CMatrix::from_fn(n, |_, _| {
                // Bernoulli and Z are drawn independently for every entry.
                let keep = p >= 1.0 || rng.gen::<f64>() < p;
                let z = dist.draw(rng);
                if keep {
                    z * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        }
        EnsembleKind::BandComplex { b } => {
            let scale = 1.0 / (spec.band_sites() as f64).sqrt();
            let mut m = CMatrix::from_fn(n, |i, j| {
                if cyclic_distance(i, j, n) <= b {
                    EntryDist::ComplexGaussian.draw(rng) * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            m.set_bandwidth(Some(b));
            m
        }
    }
}

/// `(A + A*)/√2`, or `(A + Aᵗ)/√2` for a real `A`.
fn symmetrize(a: &CMatrix, hermitian: bool) -> CMatrix {
    let n = a.n();
    let mut h = CMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let other = if hermitian { a.get(j, i).conj() } else { a.get(j, i) };
            let z = (a.get(i, j) + other) / SQRT_2;
            h.set(i, j, z);
            h.set(j, i, if hermitian { z.conj() } else { z });
        }
    }
    h
}
