use num_complex::Complex64;

/// Dense `n × n` complex matrix with split real and imaginary parts in
/// row-major order.
///
/// `bandwidth = Some(b)` records that every entry at cyclic distance larger
/// than `b` from the diagonal is zero, which lets products skip them.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
    bandwidth: Option<usize>,
}

const MR: usize = 4;
const NR: usize = 16;

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            re: vec![0.0; n * n],
            im: vec![0.0; n * n],
            bandwidth: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.re[i * n + i] = 1.0;
        }
        m.bandwidth = Some(0);
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let z = f(i, j);
                m.re[i * n + j] = z.re;
                m.im[i * n + j] = z.im;
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> Option<usize> {
        self.bandwidth
    }

    /// Declares the matrix banded. Entries outside the band are zeroed.
    pub fn set_bandwidth(&mut self, b: Option<usize>) {
        let b = b.filter(|&b| 2 * b + 1 < self.n);
        if let Some(b) = b {
            for i in 0..self.n {
                for j in 0..self.n {
                    if cyclic_distance(i, j, self.n) > b {
                        self.re[i * self.n + j] = 0.0;
                        self.im[i * self.n + j] = 0.0;
                    }
                }
            }
        }
        self.bandwidth = b;
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        Complex64::new(self.re[i * self.n + j], self.im[i * self.n + j])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.re[i * self.n + j] = z.re;
        self.im[i * self.n + j] = z.im;
    }

    pub fn transpose(&self) -> CMatrix {
        const B: usize = 32;
        let n = self.n;
        let mut t = CMatrix::zeros(n);
        for i0 in (0..n).step_by(B) {
            for j0 in (0..n).step_by(B) {
                for i in i0..(i0 + B).min(n) {
                    for j in j0..(j0 + B).min(n) {
                        t.re[j * n + i] = self.re[i * n + j];
                        t.im[j * n + i] = self.im[i * n + j];
                    }
                }
            }
        }
        t.bandwidth = self.bandwidth;
        t
    }

    pub fn conj(&self) -> CMatrix {
        let mut c = self.clone();
        c.im.iter_mut().for_each(|x| *x = -*x);
        c
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut t = self.transpose();
        t.im.iter_mut().for_each(|x| *x = -*x);
        t
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &CMatrix) -> Complex64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let band = match (self.bandwidth, other.bandwidth) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(b) = band {
            // Only k within the band of row i contributes.
            let mut z = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for d in 0..=2 * b {
                    let k = (i + n + d - b) % n;
                    z += self.get(i, k) * other.get(k, i);
                }
            }
            return z;
        }
        let t = other.transpose();
        const L: usize = 8;
        let (mut sr, mut si) = ([0.0f64; L], [0.0f64; L]);
        let dot = |x: &[f64], y: &[f64], acc: &mut [f64; L], sign: f64| {
            let (xc, yc) = (x.chunks_exact(L), y.chunks_exact(L));
            let (xr, yr) = (xc.remainder(), yc.remainder());
            for (a, b) in xc.zip(yc) {
                for l in 0..L {
                    acc[l] = (sign * a[l]).mul_add(b[l], acc[l]);
                }
            }
            for (a, b) in xr.iter().zip(yr) {
                acc[0] += sign * a * b;
            }
        };
        dot(&self.re, &t.re, &mut sr, 1.0);
        dot(&self.im, &t.im, &mut sr, -1.0);
        dot(&self.re, &t.im, &mut si, 1.0);
        dot(&self.im, &t.re, &mut si, 1.0);
        Complex64::new(sr.iter().sum(), si.iter().sum())
    }

    /// `Σ |a_ij|²`, which equals `Tr(A A*)`.
    pub fn frobenius_sq(&self) -> f64 {
        self.re.iter().chain(&self.im).map(|x| x * x).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        match (self.bandwidth, other.bandwidth) {
            (Some(a), Some(b)) if 2 * (a + b) + 1 < self.n => self.mul_banded(other, a, b),
            _ => self.mul_dense(other),
        }
    }

    fn mul_banded(&self, other: &CMatrix, ba: usize, bb: usize) -> CMatrix {
        let n = self.n;
        let mut c = CMatrix::zeros(n);
        for i in 0..n {
            let (cr, ci) = (&mut c.re[i * n..(i + 1) * n], &mut c.im[i * n..(i + 1) * n]);
            for dk in 0..=2 * ba {
                let k = (i + n + dk - ba) % n;
                let (ar, ai) = (self.re[i * n + k], self.im[i * n + k]);
                let start = (k + n - bb) % n;
                let len = 2 * bb + 1;
                let first = len.min(n - start);
                // The band window of row k wraps around at most once.
                for (col, count) in [(start, first), (0, len - first)] {
                    let br = &other.re[k * n + col..k * n + col + count];
                    let bi = &other.im[k * n + col..k * n + col + count];
                    let (cr, ci) = (&mut cr[col..col + count], &mut ci[col..col + count]);
                    for (((cr, ci), &xr), &xi) in cr.iter_mut().zip(ci.iter_mut()).zip(br).zip(bi) {
                        *cr = ar.mul_add(xr, (-ai).mul_add(xi, *cr));
                        *ci = ar.mul_add(xi, ai.mul_add(xr, *ci));
                    }
                }
            }
        }
        c.bandwidth = Some(ba + bb);
        c
    }

    /// Blocked product: each `NR`-column panel of `other` is packed
    /// contiguously and stays in cache while every `MR × NR` tile of the
    /// result is accumulated in registers.
    fn mul_dense(&self, other: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut c = CMatrix::zeros(n);
        let (ar, ai, br, bi) = (&self.re, &self.im, &other.re, &other.im);
        let jfull = n - n % NR;
        let ifull = n - n % MR;
        let mut panel = vec![[[0.0f64; NR]; 2]; n];
        for j0 in (0..jfull).step_by(NR) {
            for (k, p) in panel.iter_mut().enumerate() {
                p[0].copy_from_slice(&br[k * n + j0..k * n + j0 + NR]);
                p[1].copy_from_slice(&bi[k * n + j0..k * n + j0 + NR]);
            }
            for i0 in (0..ifull).step_by(MR) {
                let rows_r: [&[f64]; MR] = std::array::from_fn(|r| &ar[(i0 + r) * n..(i0 + r + 1) * n]);
                let rows_i: [&[f64]; MR] = std::array::from_fn(|r| &ai[(i0 + r) * n..(i0 + r + 1) * n]);
                let (acc_r, acc_i) = micro_kernel(&rows_r, &rows_i, &panel);
                for r in 0..MR {
                    let o = (i0 + r) * n + j0;
                    c.re[o..o + NR].copy_from_slice(&acc_r[r]);
                    c.im[o..o + NR].copy_from_slice(&acc_i[r]);
                }
            }
        }
        // Leftover rows and columns.
        for i in 0..n {
            let jstart = if i < ifull { jfull } else { 0 };
            if jstart == n {
                continue;
            }
            for k in 0..n {
                let (x, y) = (ar[i * n + k], ai[i * n + k]);
                for j in jstart..n {
                    c.re[i * n + j] += x * br[k * n + j] - y * bi[k * n + j];
                    c.im[i * n + j] += x * bi[k * n + j] + y * br[k * n + j];
                }
            }
        }
        c
    }
}

#[inline(always)]
fn micro_kernel(
    rows_r: &[&[f64]; MR],
    rows_i: &[&[f64]; MR],
    panel: &[[[f64; NR]; 2]],
) -> ([[f64; NR]; MR], [[f64; NR]; MR]) {
    let mut acc_r = [[0.0f64; NR]; MR];
    let mut acc_i = [[0.0f64; NR]; MR];
    for (k, p) in panel.iter().enumerate() {
        let (pr, pi) = (&p[0], &p[1]);
        for r in 0..MR {
            let x = rows_r[r][k];
            let y = rows_i[r][k];
            let (cr, ci) = (&mut acc_r[r], &mut acc_i[r]);
            for t in 0..NR {
                cr[t] = x.mul_add(pr[t], (-y).mul_add(pi[t], cr[t]));
                ci[t] = x.mul_add(pi[t], y.mul_add(pr[t], ci[t]));
            }
        }
    }
    (acc_r, acc_i)
}

pub(crate) fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }

    fn naive(a: &CMatrix, b: &CMatrix) -> CMatrix {
        let n = a.n();
        CMatrix::from_fn(n, |i, j| (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum())
    }

    fn close(a: &CMatrix, b: &CMatrix) -> bool {
        (0..a.n()).all(|i| (0..a.n()).all(|j| (a.get(i, j) - b.get(i, j)).norm() < 1e-9))
    }

    #[test]
    fn dense_product_matches_naive() {
        for n in [1, 3, 4, 16, 17, 21, 36] {
            let (a, b) = (random(n, 1), random(n, 2));
            assert!(close(&a.mul(&b), &naive(&a, &b)), "n = {n}");
        }
    }

    #[test]
    fn banded_product_matches_naive() {
        for (n, ba, bb) in [(20, 2, 3), (31, 1, 1), (12, 0, 2)] {
            let (mut a, mut b) = (random(n, 3), random(n, 4));
            a.set_bandwidth(Some(ba));
            b.set_bandwidth(Some(bb));
            let c = a.mul(&b);
            assert_eq!(c.bandwidth(), Some(ba + bb));
            assert!(close(&c, &naive(&a, &b)), "n = {n}");
        }
    }

    #[test]
    fn trace_of_product_and_adjoint() {
        let (a, b) = (random(9, 5), random(9, 6));
        assert!((a.trace_of_product(&b) - a.mul(&b).trace()).norm() < 1e-10);
        let mut c = random(30, 7);
        c.set_bandwidth(Some(3));
        let d = random(30, 8);
        assert!((c.trace_of_product(&d) - c.mul(&d).trace()).norm() < 1e-10);
        assert!((d.trace_of_product(&c) - d.mul(&c).trace()).norm() < 1e-10);
        assert!((a.trace_of_product(&a.adjoint()).re - a.frobenius_sq()).abs() < 1e-10);
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.transpose().conj(), a.adjoint());
        assert!(close(&a.mul(&CMatrix::identity(9)), &a));
    }
}
