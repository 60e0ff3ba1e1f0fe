//! Clark theory of rank-one unitary perturbations, numerically.
//!
//! A probability measure `μ` on the unit circle gives the unitary operator
//! `U = M_ξ` on `L²(μ)` and the family `U_γ = U + (γ − 1)(·, b₁)b` with
//! `b = 1`, `b₁ = ξ̄`. For `|γ| < 1` these are completely non-unitary
//! contractions with one-dimensional defects, and the crate computes
//!
//! - Cauchy transforms `Rμ`, `R₁μ`, `R₂μ` and their boundary values ([`cauchy`]),
//! - the characteristic functions `θ₀`, `θ_γ` ([`charfn`]),
//! - the matrices `U_γ` and their spectral measures ([`perturbation`]),
//! - the model space `K_θ` with its compressed shift ([`model`]),
//! - Clark measures `μ_α`, the Clark operator `Φ*_γ`, `V_α` and the rigidity
//!   check ([`clark`]),
//! - pointwise boundary identities for measures with a density ([`suite`]).
//!
//! The Fourier convention is `μ̂(k) = ∫ ξ̄^k dμ(ξ)`, so that
//! `R₁μ(z) = Σ_{k≥1} μ̂(k) z^k`.
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── measures.rs          # building, normalizing, saving measures
//! ├── cauchy.rs            # Cauchy transforms and radial limits
//! ├── characteristic.rs    # θ₀, θ_γ and their rational form
//! ├── spectral_flow.rs     # eigenvalues of U_α as α runs around the circle
//! ├── model_space.rs       # Takenaka–Malmquist basis and defect vectors
//! ├── clark_measures.rs    # the family μ_α
//! ├── clark_operator.rs    # Φ*_γ and its verification
//! ├── de_branges.rs        # g₊, g₋ and the inverse Clark operator
//! ├── rigidity.rs          # V_α and the rigidity check
//! ├── norm_sweep.rs        # uniform bounds for the kernels K_r
//! └── identity_suite.rs    # grid identities for smooth densities
//! ```
//!
//! ```bash
//! cargo run --release -p clark-core --example clark_operator
//! ```
//!
//! A quick start:
//!
//! ```
//! use clark_core::measure::CircleMeasure;
//! use clark_core::clark::phi_star_matrix;
//! use num_complex::Complex64;
//!
//! let mu = CircleMeasure::atomic(&[(0.0, 0.5), (std::f64::consts::PI, 0.5)]).unwrap();
//! let op = phi_star_matrix(&mu, Complex64::new(0.2, 0.1)).unwrap();
//! assert!(op.verify().unwrap().max() < 1e-8);
//! ```

pub mod boundary;
pub mod cauchy;
pub mod charfn;
pub mod clark;
pub mod cli;
pub mod error;
pub mod grid;
pub mod linalg;
pub mod measure;
pub mod model;
pub mod perturbation;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
pub use measure::CircleMeasure;
