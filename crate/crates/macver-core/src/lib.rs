//! Exact-arithmetic machinery for finite and affine root systems and the
//! identities their Weyl groups satisfy.
//!
//! Everything is computed over the rationals: Gram matrices, roots in
//! simple-root coordinates, Weyl-group elements as integer matrices, and
//! q-series with rational exponents and rational coefficients. No floating
//! point enters any verification path, so every verdict this crate produces
//! is a statement about exact rational arithmetic, not about tolerances.
//!
//! The main layers, bottom to top:
//!
//! * [`linalg`] — rational vectors, matrices, Gram forms, and an exact
//!   definiteness classifier (positive definite / positive semidefinite with
//!   an explicit radical basis / neither).
//! * [`finite`] — the finite root systems `A_l..G_2` plus the non-reduced
//!   `BC_l`, built in simple-root coordinates with axiom checks, length
//!   strata, highest roots, Weyl vector, and Coxeter-orbit censuses.
//! * [`affine`] — affine root systems `X_l^(t)` for twists t = 1, 2, 3,
//!   including the three-length `BC_l^(2)`; generalized Cartan matrices,
//!   marks and comarks, Coxeter and dual Coxeter numbers, affine fundamental
//!   weights, the Weyl vector and its isotropic correction, and the
//!   cross-convention nomenclature table.
//! * [`weyl`] — exhaustive Weyl-group enumeration with determinants, and the
//!   affine side: translations, the translation lattice of the affine Weyl
//!   group, and the defining product relations for the affine reflections.
//! * [`folding`] — diagram automorphisms and the two trace foldings (orbit
//!   sum and orbit mean), for finite and affine systems, with type
//!   identification of the image and the duality relating the two foldings;
//!   also the order-4 folding that produces `BC_l^(2)`.
//! * [`qseries`] — sparse q-series with exact rational exponents, explicit
//!   truncation-order tracking, the Dedekind eta factor, and a pinned JSON
//!   wire format.
//! * [`weight_ring`] — packed-key polynomials over weight-lattice exponents
//!   and their bivariate (weight x q) truncations, the workspace for the
//!   denominator identities.
//! * [`lattice`] — certified enumeration of all lattice points of a shifted
//!   positive-definite quadratic form inside a rational bound.
//! * [`identity`] — the verification engine: exact finite Weyl denominators,
//!   truncated bivariate affine denominators, the strange formula, Weyl
//!   dimension factors, and the Macdonald eta-power identities (untwisted,
//!   twisted, and BC), with machine-readable reports.

pub mod affine;
pub mod error;
pub mod finite;
pub mod folding;
pub mod identity;
pub mod lattice;
pub mod linalg;
pub mod qseries;
pub mod weight_ring;
pub mod weyl;

pub use error::{CoreError, Result};
pub use linalg::Rat;
