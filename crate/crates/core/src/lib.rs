//! Exact moments of traces of words in Gaussian random matrices.
//!
//! A word such as `G1 G2 G1*` stands for a product of independent random
//! matrices drawn from the complex or real Ginibre ensembles, the GUE or the
//! GOE. The crate computes `E[∏ Tr(G_{w_i})]` exactly as a Laurent polynomial
//! in the dimension `N` by summing over Wick pairings, reads off the limit-law
//! parameters of the traces, and provides Monte Carlo estimators that sample
//! the actual matrices for comparison.
//!
//! ```
//! use tracegenus::{genus_expansion, Word};
//!
//! let w = Word::parse("G1 G1* G1 G1*").unwrap();
//! assert_eq!(genus_expansion(&[w]).unwrap().to_string(), "2N");
//! ```

pub mod band;
pub mod error;
pub mod limits;
pub mod montecarlo;
pub mod poly;
pub mod wick;
pub mod word;

pub use error::{Error, Result};
pub use poly::LaurentPolynomial;
pub use wick::{
    atom_free_expansion, bi_atomic_count, brute_force_wick_oracle, enumerate_pairings, genus_expansion,
    glue, nondegenerate_count, sphere_count, spherical_counts, spherical_rule_check, DecoratedPairing,
    GluedSurface, SphericalCounts,
};
pub use word::{Ensemble, Letter, Word};
