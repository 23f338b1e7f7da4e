//! Monte Carlo sampling of the matrix ensembles behind a word.
//!
//! Each sample draws one matrix per distinct `(ensemble, index)` pair of the
//! words involved, from its own ChaCha8 stream (see [`letter_rng`]), so the
//! values do not depend on how samples are spread over workers. Workers get
//! contiguous ranges of sample indices: worker `w` of `W` handles
//! `[w·S/W, (w+1)·S/W)`. Per-sample values are gathered in sample order and
//! reduced on one thread.

mod estimate;
mod matrix;
mod sample;

use std::borrow::Cow;
use std::collections::HashMap;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Ensemble, Letter, Word};

pub use estimate::{
    centered_trace_covariance, centered_trace_covariance_about, covariance_from_samples,
    joint_trace_samples,
    squared_singular_moment, squared_singular_moments, trace_moment_estimate, trace_samples,
    CovarianceEstimate, CrossMoment, JointTraceEstimate,
};
pub use matrix::CMatrix;
pub use sample::{
    letter_rng, parse_ensemble, sample_matrix, EnsembleKind, EnsembleSpec, EntryDist,
};

/// Sampled matrices keyed by `(ensemble, index)`.
pub type LetterSamples = HashMap<(Ensemble, u32), CMatrix>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl MCConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        MCConfig::with_workers(samples, seed, 1)
    }

    pub fn with_workers(samples: usize, seed: u64, workers: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidArgument("at least 2 samples are needed".into()));
        }
        if workers == 0 {
            return Err(Error::InvalidArgument("workers must be positive".into()));
        }
        Ok(MCConfig {
            samples,
            seed,
            workers,
        })
    }
}

/// Sample mean of a complex statistic with the standard error of the mean,
/// `sqrt(Σ|x - x̄|² / ((S - 1) S))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
}

impl MomentEstimate {
    pub fn from_samples(xs: &[Complex64]) -> Self {
        let s = xs.len();
        assert!(s >= 2, "at least 2 samples are needed");
        let mean = xs.iter().sum::<Complex64>() / s as f64;
        let ss: f64 = xs.iter().map(|x| (x - mean).norm_sqr()).sum();
        MomentEstimate {
            mean,
            stderr: (ss / ((s - 1) as f64 * s as f64)).sqrt(),
            samples: s,
        }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        let zs: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        MomentEstimate::from_samples(&zs)
    }

    /// `|mean - target|` in units of the standard error.
    pub fn z_score(&self, target: Complex64) -> f64 {
        let d = (self.mean - target).norm();
        if self.stderr == 0.0 {
            if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, target: Complex64, sigmas: f64) -> bool {
        self.z_score(target) <= sigmas
    }
}

/// Ordered product of the letter matrices of `w`, reusing the same sample
/// for repeated letters.
pub fn evaluate_word(w: &Word, samples: &LetterSamples) -> Result<CMatrix> {
    let mats = letter_matrices(w, samples)?;
    let mut acc = mats[0].clone().into_owned();
    for m in &mats[1..] {
        acc = acc.mul(m);
    }
    Ok(acc)
}

/// `Tr(G_w)`, saving the last product by taking a trace of a product.
pub fn word_trace(w: &Word, samples: &LetterSamples) -> Result<Complex64> {
    let mats = letter_matrices(w, samples)?;
    let m = mats.len();
    if m == 1 {
        return Ok(mats[0].trace());
    }
    let mut acc = mats[0].clone().into_owned();
    for x in &mats[1..m - 1] {
        acc = acc.mul(x);
    }
    Ok(acc.trace_of_product(&mats[m - 1]))
}

fn letter_matrices<'a>(w: &Word, samples: &'a LetterSamples) -> Result<Vec<Cow<'a, CMatrix>>> {
    let mut cache: HashMap<Letter, Cow<'a, CMatrix>> = HashMap::new();
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if let Some(m) = cache.get(&l) {
            out.push(m.clone());
            continue;
        }
        let base = samples
            .get(&(l.ensemble, l.index))
            .ok_or_else(|| Error::MissingLetter(format!("{}{}", l.ensemble.symbol(), l.index)))?;
        let m = match (l.transposed, l.conjugated) {
            (false, false) => Cow::Borrowed(base),
            (true, false) => Cow::Owned(base.transpose()),
            (false, true) => Cow::Owned(base.conj()),
            (true, true) => Cow::Owned(base.adjoint()),
        };
        cache.insert(l, m.clone());
        out.push(m);
    }
    Ok(out)
}

/// Draws one matrix for every `(ensemble, index)` pair in `words`, for the
/// given sample index.
pub fn draw_letters(words: &[Word], spec: &EnsembleSpec, seed: u64, sample: u64) -> LetterSamples {
    let mut out = LetterSamples::new();
    for w in words {
        for l in w.letters() {
            out.entry((l.ensemble, l.index)).or_insert_with(|| {
                let mut rng = letter_rng(seed, l.ensemble, l.index, sample);
                sample_matrix(&spec.for_ensemble(l.ensemble), &mut rng)
            });
        }
    }
    out
}

/// Runs `f` on every sample index and returns the results in index order.
pub(crate) fn map_samples<T, F>(cfg: &MCConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    let (s, w) = (cfg.samples, cfg.workers.min(cfg.samples));
    if w <= 1 {
        return (0..s as u64).map(&f).collect();
    }
    let f = &f;
    let chunks: Vec<Result<Vec<T>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..w)
            .map(|i| {
                let (lo, hi) = (i * s / w, (i + 1) * s / w);
                scope.spawn(move || (lo as u64..hi as u64).map(f).collect::<Result<Vec<T>>>())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("Monte Carlo worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(s);
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Writes per-sample values as CSV with columns `sample,re,im`.
pub fn write_samples_csv<W: Write>(mut out: W, values: &[Complex64]) -> io::Result<()> {
    writeln!(out, "sample,re,im")?;
    for (i, z) in values.iter().enumerate() {
        writeln!(out, "{i},{:e},{:e}", z.re, z.im)?;
    }
    Ok(())
}
