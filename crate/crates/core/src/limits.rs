//! Large-`N` limit laws read off from pairing counts.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wick::{one_face_sphere_count, spherical_counts, two_face_sphere_count, Options};
use crate::word::{Letter, Word};

/// Parameters of the Gaussian limit of `Tr(G_w) - a_w N - p_w`, whose real
/// and imaginary parts are independent centered Gaussians with variances
/// `var_re` and `var_im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CltParams {
    /// `a_w + p_w`.
    pub shift: i64,
    /// Leading coefficient `a_w` of `E Tr(G_w)`.
    pub a: i64,
    /// Constant centering term `p_w`, non-zero only for non-orientable atoms.
    pub p: i64,
    pub b: i64,
    pub c: i64,
    pub var_re: Rational64,
    pub var_im: Rational64,
}

impl CltParams {
    pub fn centering(&self, n: f64) -> f64 {
        self.a as f64 * n + self.p as f64
    }
}

/// `FC_s(n) = binom(sn + 1, n) / (sn + 1)`.
pub fn fuss_catalan(s: u32, n: u32) -> BigInt {
    assert!(s >= 2, "Fuss-Catalan parameter must be at least 2");
    let top = BigInt::from(s as u64 * n as u64 + 1);
    binomial(top.clone(), BigInt::from(n)) / top
}

fn require_star_free(w: &Word) -> Result<()> {
    if w.is_star_free() {
        Ok(())
    } else {
        Err(Error::NotStarFree)
    }
}

fn mismatch(what: &str, left: impl ToString, right: impl ToString) -> Error {
    Error::IdentityMismatch {
        what: what.into(),
        left: left.to_string(),
        right: right.to_string(),
    }
}

/// `lim (1/N) E Tr((W W*)^k)` for `W = G_w`, counted as the spherical
/// pairings of the face `(w w*)^k` and checked against `FC_{|w|+1}(k)`.
pub fn fc_moment_of_word(w: &Word, k: u32) -> Result<u64> {
    require_star_free(w)?;
    if k == 0 {
        return Ok(1);
    }
    let face = w.concat(&w.star()).pow(k as usize);
    let count = one_face_sphere_count(&face, &Options::default())?;
    let expected = fuss_catalan(w.len() as u32 + 1, k);
    if BigInt::from(count) != expected {
        return Err(mismatch("spherical count vs Fuss-Catalan", count, expected));
    }
    Ok(count)
}

/// Exponents `(a_1, b_1, ..., a_k, b_k)` of the word
/// `G^{a_1} G^{*b_1} ... G^{a_k} G^{*b_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedIndex(Vec<u32>);

impl MixedIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 == 1 {
            return Err(Error::InvalidArgument(
                "mixed index needs a positive even number of entries".into(),
            ));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidArgument(
                "mixed index entries must be positive".into(),
            ));
        }
        Ok(MixedIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn scaled(&self, m: u32) -> MixedIndex {
        MixedIndex(self.0.iter().map(|x| x * m).collect())
    }

    pub fn is_balanced(&self) -> bool {
        let (a, b) = self
            .0
            .chunks(2)
            .fold((0, 0), |(a, b), c| (a + c[0], b + c[1]));
        a == b
    }

    /// `u^{a_1} (u*)^{b_1} ...` for an arbitrary word `u`.
    fn substitute(&self, u: &Word) -> Word {
        let ustar = u.star();
        let mut letters: Vec<Letter> = Vec::new();
        for c in self.0.chunks(2) {
            for _ in 0..c[0] {
                letters.extend_from_slice(u.letters());
            }
            for _ in 0..c[1] {
                letters.extend_from_slice(ustar.letters());
            }
        }
        Word::new(letters).expect("non-empty")
    }
}

/// `lim (1/N) E Tr(G^{a_1} G^{*b_1} ... G^{a_k} G^{*b_k})`.
pub fn mixed_moment_limit(idx: &MixedIndex) -> Result<u64> {
    if !idx.is_balanced() {
        return Ok(0);
    }
    one_face_sphere_count(&idx.substitute(&Word::parse("G1")?), &Options::default())
}

/// The same limit with `G` replaced by `G_w`; it coincides with
/// [`mixed_moment_limit`] at the index scaled by `|w|`, which is checked.
pub fn word_mixed_moment_limit(w: &Word, idx: &MixedIndex) -> Result<u64> {
    require_star_free(w)?;
    let direct = if idx.is_balanced() {
        one_face_sphere_count(&idx.substitute(w), &Options::default())?
    } else {
        0
    };
    let scaled = mixed_moment_limit(&idx.scaled(w.len() as u32))?;
    if direct != scaled {
        return Err(mismatch("substituted vs scaled mixed moment", direct, scaled));
    }
    Ok(direct)
}

pub fn clt_params(w: &Word) -> Result<CltParams> {
    let s = spherical_counts(w)?;
    let (a, p, b, c) = (s.a as i64, s.p as i64, s.b as i64, s.c as i64);
    Ok(CltParams {
        shift: a + p,
        a,
        p,
        b,
        c,
        var_re: Rational64::new(b + c, 2),
        var_im: Rational64::new(b - c, 2),
    })
}

/// Limiting variances `E|Tr(G_w^j)|² = j·cop(w)` for `j = 1..=kmax`, each
/// checked against the enumerated `b` of `w^j`.
pub fn joint_trace_covariance(w: &Word, kmax: u32) -> Result<Vec<u64>> {
    require_star_free(w)?;
    let cop = w.coperiod() as u64;
    let mut out = Vec::with_capacity(kmax as usize);
    for j in 1..=kmax {
        let wj = w.pow(j as usize);
        let b = two_face_sphere_count(&wj, &wj.star(), &Options::default())?;
        let expected = j as u64 * cop;
        if b != expected {
            return Err(mismatch("b of w^j vs j·cop(w)", b, expected));
        }
        out.push(b);
    }
    Ok(out)
}

/// Limiting variance of `Tr f(G_w)` for `f(z) = Σ_{k≥1} a_k z^k`, where
/// `coeffs = [a_1, ..., a_n]`: `cop(w) Σ k a_k²`.
pub fn linear_statistic_variance(w: &Word, coeffs: &[f64]) -> Result<f64> {
    require_star_free(w)?;
    let s: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1) as f64 * a * a)
        .sum();
    Ok(w.coperiod() as f64 * s)
}
