//! Exact finite-N moments of products of sparse matrices, used to calibrate
//! the Monte Carlo estimators.
//!
//! `E Tr((W W*)^k) / N` for `W = M_1 ... M_m` with i.i.d. entries is a sum over
//! set partitions of the `2km` index slots: each partition fixes which entries
//! coincide, contributes the product of the entry moments and is realized by
//! `N (N-1) ... (N - #blocks + 1)` labelings.

use num_traits::ToPrimitive;
use tracegenus::montecarlo::{squared_singular_moments, EnsembleSpec, EntryDist, MCConfig};
use tracegenus::{genus_expansion, Word};

/// An entry occurrence: matrix id, conjugated, row slot, column slot.
type Occ = (usize, bool, usize, usize);

fn occurrences(k: usize, letters: usize) -> (Vec<Occ>, usize) {
    let total = 2 * k * letters;
    let mut occ = Vec::with_capacity(total);
    let mut slot = 0;
    for _ in 0..k {
        for j in 0..letters {
            occ.push((j, false, slot, (slot + 1) % total));
            slot += 1;
        }
        for j in (0..letters).rev() {
            // (M*)_{ab} = conj(M_{ba})
            occ.push((j, true, (slot + 1) % total, slot));
            slot += 1;
        }
    }
    (occ, total)
}

/// Sparse entries `B Z / sqrt(Np)` with `B ~ Bernoulli(p)` and
/// `E|Z|^{2a} = mu(a)`.
struct Entries<'a> {
    n: f64,
    p: f64,
    mu: &'a dyn Fn(usize) -> f64,
}

fn exact(k: usize, letters: usize, e: &Entries) -> f64 {
    let (occ, m) = occurrences(k, letters);
    let mut block = vec![0usize; m];
    let mut total = 0.0;
    partitions(0, 0, &mut block, &occ, e, &mut total);
    total / e.n
}

fn partitions(i: usize, nb: usize, block: &mut Vec<usize>, occ: &[Occ], e: &Entries, total: &mut f64) {
    if i == block.len() {
        // (entry, plain count, conjugated count)
        let mut groups: Vec<((usize, usize, usize), usize, usize)> = Vec::new();
        for &(id, conj, r, s) in occ {
            let key = (id, block[r], block[s]);
            let g = match groups.iter_mut().position(|g| g.0 == key) {
                Some(j) => &mut groups[j],
                None => {
                    groups.push((key, 0, 0));
                    groups.last_mut().unwrap()
                }
            };
            if conj {
                g.2 += 1
            } else {
                g.1 += 1
            }
        }
        let mut v = 1.0;
        for &(_, a, c) in &groups {
            if a != c {
                return;
            }
            v *= e.p * (e.mu)(a) / (e.n * e.p).powi(a as i32);
        }
        let labelings: f64 = (0..nb).map(|j| e.n - j as f64).product();
        *total += v * labelings;
        return;
    }
    for b in 0..=nb {
        block[i] = b;
        partitions(i + 1, nb.max(b + 1), block, occ, e, total);
    }
}

fn gaussian(a: usize) -> f64 {
    (1..=a).product::<usize>() as f64
}

fn fourth_matched(a: usize) -> f64 {
    2f64.powi(a as i32 - 1)
}

fn product_word(letters: usize) -> Word {
    let names: Vec<String> = (1..=letters).map(|i| format!("G{i}")).collect();
    Word::parse(&names.join(" ")).unwrap()
}

#[test]
fn dense_oracle_matches_genus_expansion() {
    for (letters, k) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 2)] {
        let w = product_word(letters);
        let face = w.concat(&w.star()).pow(k);
        let poly = genus_expansion(&[face]).unwrap();
        for n in [3.0, 16.0] {
            let want = poly.evaluate(n as i64).to_f64().unwrap() / n;
            let got = exact(k, letters, &Entries { n, p: 1.0, mu: &gaussian });
            assert!((got - want).abs() < 1e-9 * want, "letters={letters} k={k} N={n}: {got} vs {want}");
        }
    }
}

#[test]
fn fourth_matched_agrees_with_gaussian_when_dense() {
    for (letters, k) in [(1, 2), (2, 2), (1, 3)] {
        let e = |mu: &dyn Fn(usize) -> f64| exact(k, letters, &Entries { n: 32.0, p: 1.0, mu });
        let (g, f) = (e(&gaussian), e(&fourth_matched));
        if k <= 2 {
            assert!((g - f).abs() < 1e-12, "letters={letters} k={k}: {g} vs {f}");
        } else {
            assert!(g != f, "sixth moments differ, so k = 3 should see it");
        }
    }
}

fn check_sparse(dist: EntryDist, mu: &dyn Fn(usize) -> f64, seed: u64) {
    let (n, p) = (64, 0.1);
    let w = product_word(2);
    let spec = EnsembleSpec::sparse(n, p, dist).unwrap();
    let est = squared_singular_moments(&w, 2, &spec, &MCConfig::new(1500, seed).unwrap()).unwrap();
    for (j, e) in est.iter().enumerate() {
        let want = exact(j + 1, 2, &Entries { n: n as f64, p, mu });
        assert!(e.stderr > 0.0);
        let z = (e.mean.re - want).abs() / e.stderr;
        assert!(z < 5.0, "k={}: {:.4} ± {:.4} vs exact {want:.4}", j + 1, e.mean.re, e.stderr);
    }
}

#[test]
fn sparse_gaussian_monte_carlo_matches_exact_finite_n() {
    check_sparse(EntryDist::ComplexGaussian, &gaussian, 21);
}

#[test]
fn sparse_fourth_matched_monte_carlo_matches_exact_finite_n() {
    check_sparse(EntryDist::FourthMatched, &fourth_matched, 22);
}

#[test]
fn sparse_bias_at_n_256_is_far_from_the_limit() {
    let n = 256.0;
    let e = Entries { n, p: 1.0 / n.sqrt(), mu: &gaussian };
    assert!((exact(1, 3, &e) - 1.0).abs() < 1e-12);
    let k2 = exact(2, 3, &e);
    assert!((k2 - 4.383665204048157).abs() < 1e-9, "{k2}");
}
