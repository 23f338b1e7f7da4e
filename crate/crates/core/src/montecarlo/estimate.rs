use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{draw_letters, evaluate_word, map_samples, word_trace, CMatrix, EnsembleSpec, MCConfig, MomentEstimate};
use crate::error::{Error, Result};
use crate::limits::clt_params;
use crate::word::Word;

fn check(spec: &EnsembleSpec, words: &[Word]) -> Result<()> {
    spec.validate()?;
    if words.is_empty() || words.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWord);
    }
    Ok(())
}

fn require_star_free(w: &Word) -> Result<()> {
    if w.is_star_free() {
        Ok(())
    } else {
        Err(Error::NotStarFree)
    }
}

/// Per-sample values of `∏ Tr(G_{w_i})`.
pub fn trace_samples(words: &[Word], spec: &EnsembleSpec, cfg: &MCConfig) -> Result<Vec<Complex64>> {
    check(spec, words)?;
    map_samples(cfg, |s| {
        let ls = draw_letters(words, spec, cfg.seed, s);
        words.iter().map(|w| word_trace(w, &ls)).product()
    })
}

pub fn trace_moment_estimate(words: &[Word], spec: &EnsembleSpec, cfg: &MCConfig) -> Result<MomentEstimate> {
    Ok(MomentEstimate::from_samples(&trace_samples(words, spec, cfg)?))
}

/// Empirical covariance of `(Re T, Im T)` with `T = Tr(G_w) - centering`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceEstimate {
    pub centering: f64,
    /// `[[Var Re, Cov], [Cov, Var Im]]`.
    pub cov: [[f64; 2]; 2],
    /// Delete-one jackknife standard errors of the entries of `cov`.
    pub stderr: [[f64; 2]; 2],
    pub mean: Complex64,
    pub samples: usize,
}

impl CovarianceEstimate {
    /// Largest deviation from `target` over the entries, in standard errors.
    pub fn max_z_score(&self, target: [[f64; 2]; 2]) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let d = (self.cov[i][j] - target[i][j]).abs();
                let z = if self.stderr[i][j] > 0.0 {
                    d / self.stderr[i][j]
                } else if d == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = worst.max(z);
            }
        }
        worst
    }
}

/// Centers by `a_w N + p_w` from the exact limit parameters of `w`.
pub fn centered_trace_covariance(w: &Word, spec: &EnsembleSpec, cfg: &MCConfig) -> Result<CovarianceEstimate> {
    let params = clt_params(w)?;
    centered_trace_covariance_about(w, params.centering(spec.n as f64), spec, cfg)
}

pub fn centered_trace_covariance_about(
    w: &Word,
    centering: f64,
    spec: &EnsembleSpec,
    cfg: &MCConfig,
) -> Result<CovarianceEstimate> {
    let ts = trace_samples(std::slice::from_ref(w), spec, cfg)?;
    Ok(covariance_from_samples(&ts, centering))
}

/// Covariance of `(Re, Im)` of already drawn traces, after subtracting
/// `centering` from the real parts.
pub fn covariance_from_samples(ts: &[Complex64], centering: f64) -> CovarianceEstimate {
    let x: Vec<f64> = ts.iter().map(|t| t.re - centering).collect();
    let y: Vec<f64> = ts.iter().map(|t| t.im).collect();
    let (vxx, exx) = jackknife_cov(&x, &x);
    let (vxy, exy) = jackknife_cov(&x, &y);
    let (vyy, eyy) = jackknife_cov(&y, &y);
    let n = ts.len() as f64;
    CovarianceEstimate {
        centering,
        cov: [[vxx, vxy], [vxy, vyy]],
        stderr: [[exx, exy], [exy, eyy]],
        mean: Complex64::new(x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n),
        samples: ts.len(),
    }
}

/// Unbiased sample covariance and its delete-one jackknife standard error.
fn jackknife_cov(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len();
    assert!(n >= 3, "jackknife needs at least 3 samples");
    let nf = n as f64;
    let (mx, my) = (x.iter().sum::<f64>() / nf, y.iter().sum::<f64>() / nf);
    let xs: Vec<f64> = x.iter().map(|v| v - mx).collect();
    let ys: Vec<f64> = y.iter().map(|v| v - my).collect();
    let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| a * b).sum();
    let cov = sxy / (nf - 1.0);
    // With centered data Σx = Σy = 0, so the leave-one-out sums are -x_i, -y_i.
    let m = nf - 1.0;
    let loo: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(a, b)| ((sxy - a * b) - a * b / m) / (m - 1.0))
        .collect();
    let mean = loo.iter().sum::<f64>() / nf;
    let var = loo.iter().map(|c| (c - mean).powi(2)).sum::<f64>() * (nf - 1.0) / nf;
    (cov, var.sqrt())
}

/// Estimates of `(1/N) Tr((W W*)^k)` for `k = 1..=kmax`, from the same draws.
pub fn squared_singular_moments(
    w: &Word,
    kmax: u32,
    spec: &EnsembleSpec,
    cfg: &MCConfig,
) -> Result<Vec<MomentEstimate>> {
    check(spec, std::slice::from_ref(w))?;
    require_star_free(w)?;
    if kmax == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = spec.n as f64;
    let rows = map_samples(cfg, |s| {
        let ls = draw_letters(std::slice::from_ref(w), spec, cfg.seed, s);
        let m = evaluate_word(w, &ls)?;
        let p = m.mul(&m.adjoint());
        Ok(power_traces(&p, kmax).into_iter().map(|t| t.re / n).collect::<Vec<f64>>())
    })?;
    Ok((0..kmax as usize)
        .map(|k| MomentEstimate::from_real(&rows.iter().map(|r| r[k]).collect::<Vec<_>>()))
        .collect())
}

pub fn squared_singular_moment(w: &Word, k: u32, spec: &EnsembleSpec, cfg: &MCConfig) -> Result<MomentEstimate> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(squared_singular_moments(w, k, spec, cfg)?[k as usize - 1])
}

/// `Tr(A^j)` for `j = 1..=kmax`, as `Tr(A^⌈j/2⌉ A^⌊j/2⌋)`.
fn power_traces(a: &CMatrix, kmax: u32) -> Vec<Complex64> {
    let half = (kmax as usize).div_ceil(2);
    let mut powers = vec![a.clone()];
    while powers.len() < half {
        let next = powers.last().unwrap().mul(a);
        powers.push(next);
    }
    (1..=kmax as usize)
        .map(|j| {
            if j == 1 {
                a.trace()
            } else {
                powers[j.div_ceil(2) - 1].trace_of_product(&powers[j / 2 - 1])
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossMoment {
    pub i: u32,
    pub j: u32,
    /// Estimate of `E[Tr(G_w^i) conj(Tr(G_w^j))]`.
    pub estimate: MomentEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointTraceEstimate {
    /// `E|Tr(G_w^j)|²` for `j = 1..=kmax`.
    pub second_moments: Vec<MomentEstimate>,
    /// Cross moments for `i < j`.
    pub cross: Vec<CrossMoment>,
}

pub fn joint_trace_samples(w: &Word, kmax: u32, spec: &EnsembleSpec, cfg: &MCConfig) -> Result<JointTraceEstimate> {
    check(spec, std::slice::from_ref(w))?;
    require_star_free(w)?;
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1".into()));
    }
    let rows = map_samples(cfg, |s| {
        let ls = draw_letters(std::slice::from_ref(w), spec, cfg.seed, s);
        Ok(power_traces(&evaluate_word(w, &ls)?, kmax))
    })?;
    let k = kmax as usize;
    let second_moments = (0..k)
        .map(|j| MomentEstimate::from_real(&rows.iter().map(|r| r[j].norm_sqr()).collect::<Vec<_>>()))
        .collect();
    let mut cross = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let xs: Vec<Complex64> = rows.iter().map(|r| r[i] * r[j].conj()).collect();
            cross.push(CrossMoment {
                i: i as u32 + 1,
                j: j as u32 + 1,
                estimate: MomentEstimate::from_samples(&xs),
            });
        }
    }
    Ok(JointTraceEstimate {
        second_moments,
        cross,
    })
}
