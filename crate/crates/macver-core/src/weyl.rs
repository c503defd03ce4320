//! Weyl groups: exhaustive enumeration of the finite group as exact matrices,
//! and the affine machinery of translations t_gamma on F-hat together with
//! the lattice M in the semidirect decomposition of the affine Weyl group.

use crate::affine::{AffineCase, AffineSystem};
use crate::error::{CoreError, Result};
use crate::finite::FiniteRootSystem;
use crate::linalg::{rat, Mat, Rat};
use num::{One, Zero};
use std::collections::HashMap;

/// A finite Weyl group element as an integer matrix on simple-root
/// coordinates (columns are images of the simple roots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub det: i64,
}

impl WeylElement {
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = x.len();
        (0..n)
            .map(|k| (0..n).map(|j| self.matrix[k][j] * x[j]).sum())
            .collect()
    }

    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let mut acc = Rat::zero();
                for j in 0..n {
                    if self.matrix[k][j] != 0 {
                        acc += rat(self.matrix[k][j]) * &x[j];
                    }
                }
                acc
            })
            .collect()
    }
}

fn mat_mul_int(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Enumerates W(R) by breadth-first closure over right multiplication by the
/// simple reflections. Errors when the classical order exceeds `cap`.
pub fn enumerate_weyl(rs: &FiniteRootSystem, cap: u64) -> Result<Vec<WeylElement>> {
    let order = rs.weyl_order();
    if order > cap as u128 {
        return Err(CoreError::Capacity { required: order.min(u64::MAX as u128) as u64, cap });
    }
    let l = rs.rank();
    let gens: Vec<Vec<Vec<i64>>> = (0..l).map(|i| rs.simple_reflection_matrix(i)).collect();
    let mut id = vec![vec![0i64; l]; l];
    for i in 0..l {
        id[i][i] = 1;
    }
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let key = |m: &[Vec<i64>]| -> Vec<i64> { m.iter().flatten().copied().collect() };
    seen.insert(key(&id), ());
    let mut out = vec![WeylElement { matrix: id, det: 1 }];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let (matrix, det) = (out[idx].matrix.clone(), out[idx].det);
        for g in &gens {
            let next = mat_mul_int(&matrix, g);
            let k = key(&next);
            if !seen.contains_key(&k) {
                seen.insert(k, ());
                out.push(WeylElement { matrix: next, det: -det });
                frontier.push(out.len() - 1);
            }
        }
    }
    assert_eq!(out.len() as u128, order, "{}: enumeration found {} elements", rs.typ.label(), out.len());
    Ok(out)
}

/// Basis of the lattice M with hat(W) = W_f x| { t_gamma : gamma in M }.
#[derive(Clone, Debug)]
pub struct TranslationLattice {
    /// Basis vectors in F-hat coordinates (inputs for `translation_matrix`).
    pub basis_hat: Vec<Vec<Rat>>,
    /// The same basis in the working system's simple-root coordinates.
    pub basis_working: Vec<Vec<Rat>>,
    pub description: &'static str,
}

/// Maps a vector in adapted (abstract C_l) coordinates into F-hat. The
/// abstract model's node j corresponds to affine node l-1-j.
pub fn adapted_to_hat(sys: &AffineSystem, v: &[Rat]) -> Vec<Rat> {
    let l = sys.rank();
    assert_eq!(sys.typ.case(), AffineCase::BC);
    assert_eq!(v.len(), l);
    let mut out = vec![Rat::zero(); sys.dim()];
    for (j, coeff) in v.iter().enumerate() {
        for (acc, x) in out.iter_mut().zip(&sys.simple_roots[l - 1 - j]) {
            *acc += coeff * x;
        }
    }
    out
}

pub fn translation_lattice(sys: &AffineSystem) -> TranslationLattice {
    let l = sys.rank();
    let embed = |v: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); sys.dim()];
        out[..l].clone_from_slice(v);
        out
    };
    match sys.typ.case() {
        AffineCase::Untwisted => {
            let basis_working = sys.quotient.coroot_lattice_basis();
            TranslationLattice {
                basis_hat: basis_working.iter().map(|v| embed(v)).collect(),
                basis_working,
                description: "Q(R_f^v)",
            }
        }
        AffineCase::Twisted => {
            let ns = sys.quotient.norm_of(&sys.quotient.theta_short);
            let factor = rat(2) / ns;
            let basis_working: Vec<Vec<Rat>> = (0..l)
                .map(|i| {
                    let mut v = vec![Rat::zero(); l];
                    v[i] = factor.clone();
                    v
                })
                .collect();
            TranslationLattice {
                basis_hat: basis_working.iter().map(|v| embed(v)).collect(),
                basis_working,
                description: "(2/I(theta_s,theta_s)) Q(R_f)",
            }
        }
        AffineCase::BC => {
            let basis_working = sys.working_system().coroot_lattice_basis();
            TranslationLattice {
                basis_hat: basis_working.iter().map(|v| adapted_to_hat(sys, v)).collect(),
                basis_working,
                description: "Q(R_f'^v)",
            }
        }
    }
}

/// t_gamma(x) = x + I(x,delta) gamma - (I(x,gamma) + 1/2 I(gamma,gamma) I(x,delta)) delta
/// as an exact matrix on F-hat.
pub fn translation_matrix(sys: &AffineSystem, gamma: &[Rat]) -> Mat {
    let dim = sys.dim();
    let delta = sys.delta();
    let gnorm = sys.norm(gamma);
    let mut m = Mat::zero(dim, dim);
    for k in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[k] = Rat::one();
        let level = sys.bilinear(&e, &delta);
        let pair_g = sys.bilinear(&e, gamma);
        let coeff = &pair_g + &gnorm / rat(2) * &level;
        for i in 0..dim {
            let v = &e[i] + &level * &gamma[i] - &coeff * &delta[i];
            *m.at_mut(i, k) = v;
        }
    }
    m
}

/// Reflection through a non-isotropic F-hat vector, as a matrix.
pub fn reflection_matrix_hat(sys: &AffineSystem, root: &[Rat]) -> Mat {
    let dim = sys.dim();
    let mut m = Mat::zero(dim, dim);
    for k in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[k] = Rat::one();
        let img = sys.reflect_hat(root, &e);
        for i in 0..dim {
            *m.at_mut(i, k) = img[i].clone();
        }
    }
    m
}

/// Embeds a finite Weyl element as an F-hat matrix fixing delta and Lambda.
pub fn embed_finite(sys: &AffineSystem, u: &WeylElement) -> Mat {
    let l = sys.rank();
    let dim = sys.dim();
    let mut m = Mat::identity(dim);
    for i in 0..l {
        for j in 0..l {
            *m.at_mut(i, j) = rat(u.matrix[i][j]);
        }
    }
    m
}

/// Verifies the defining product identity for the affine node:
/// s_{alpha_0} s_{delta-alpha_0} = t_{theta^v} (untwisted, theta* = theta;
/// twisted, theta* = theta_s), and s_{alpha_l} s_{delta-2alpha_l} = t_{theta'^v}
/// for BC with theta' the highest root of the adapted subsystem.
pub fn check_s0_product(sys: &AffineSystem) -> bool {
    let l = sys.rank();
    let delta = sys.delta();
    let (first, second, gamma) = match sys.typ.case() {
        AffineCase::Untwisted | AffineCase::Twisted => {
            let alpha0 = sys.simple_roots[0].clone();
            // delta - alpha_0 = theta* at level 0
            let theta_star: Vec<Rat> = delta.iter().zip(&alpha0).map(|(d, a)| d - a).collect();
            let n = sys.norm(&theta_star);
            let coroot: Vec<Rat> = theta_star.iter().map(|x| rat(2) * x / &n).collect();
            (alpha0, theta_star, coroot)
        }
        AffineCase::BC => {
            let alpha_l = sys.simple_roots[l].clone();
            let other: Vec<Rat> = delta
                .iter()
                .zip(&alpha_l)
                .map(|(d, a)| d - rat(2) * a)
                .collect();
            let model = sys.working_system();
            let theta_abs: Vec<Rat> = model.theta.iter().map(|&x| rat(x)).collect();
            let theta = adapted_to_hat(sys, &theta_abs);
            let n = sys.norm(&theta);
            let coroot: Vec<Rat> = theta.iter().map(|x| rat(2) * x / &n).collect();
            (alpha_l, other, coroot)
        }
    };
    let lhs = reflection_matrix_hat(sys, &first).mul(&reflection_matrix_hat(sys, &second));
    let rhs = translation_matrix(sys, &gamma);
    lhs == rhs
}
