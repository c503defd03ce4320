//! Certified enumeration of integer points in shifted ellipsoids
//! {x in Z^n : (x+w)^T A (x+w) <= B} for positive-definite rational A.
//!
//! The recursion diagonalizes A exactly, brackets each coordinate with
//! integer-sqrt bounds padded by one, and admits a candidate only after an
//! exact rational comparison, so the output is complete and sound with no
//! floating point anywhere.

use crate::error::{CoreError, Result};
use crate::linalg::{rat, Mat, Rat};
use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

/// floor(sqrt(x)) for a nonnegative rational, computed as
/// floor(isqrt(p*q)/q) where x = p/q in lowest terms.
pub fn floor_sqrt(x: &Rat) -> BigInt {
    assert!(!x.is_negative(), "floor_sqrt of negative {x}");
    let prod = x.numer() * x.denom();
    prod.sqrt().div_floor(x.denom())
}

/// Q(y) = sum_i d[i] * (y_i + sum_{j>i} c[i][j] y_j)^2 with all d[i] > 0.
struct Diagonal {
    d: Vec<Rat>,
    c: Vec<Vec<Rat>>,
}

fn diagonalize(gram: &Mat) -> Result<Diagonal> {
    let n = gram.rows;
    let mut q: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| gram.at(i, j).clone()).collect())
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(CoreError::Singular);
        }
        for j in (i + 1)..n {
            let original = q[i][j].clone();
            q[j][i] = original.clone();
            q[i][j] = original / &q[i][i];
        }
        for k in (i + 1)..n {
            for l in k..n {
                let delta = &q[k][i] * &q[i][l];
                q[k][l] = &q[k][l] - delta;
            }
        }
    }
    let d = (0..n).map(|i| q[i][i].clone()).collect();
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j > i { q[i][j].clone() } else { Rat::zero() })
                .collect()
        })
        .collect();
    Ok(Diagonal { d, c })
}

fn descend(
    diag: &Diagonal,
    shift: &[Rat],
    budget: Rat,
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = shift.len();
    let mut u = shift[i].clone();
    for j in level..n {
        u += &diag.c[i][j] * (rat(x[j]) + &shift[j]);
    }
    // need d_i (x_i + u)^2 <= budget; centre -u, radius sqrt(budget/d_i)
    let radius = floor_sqrt(&(&budget / &diag.d[i]));
    let centre_floor = (-&u).floor().to_integer();
    let lo = &centre_floor - &radius - BigInt::one();
    let hi = centre_floor + radius + BigInt::one();
    let lo = lo.to_i64().expect("lattice coordinate bound exceeds i64");
    let hi = hi.to_i64().expect("lattice coordinate bound exceeds i64");
    for xi in lo..=hi {
        let y = rat(xi) + &u;
        let used = &diag.d[i] * &y * &y;
        if used <= budget {
            x[i] = xi;
            descend(diag, shift, &budget - used, i, x, out);
        }
    }
    x[i] = 0;
}

/// All integer vectors x with (x+shift)^T gram (x+shift) <= bound.
/// Errors with `Singular` when the form is not positive definite.
pub fn enumerate_shifted_ball(gram: &Mat, shift: &[Rat], bound: &Rat) -> Result<Vec<Vec<i64>>> {
    let n = gram.rows;
    assert_eq!(gram.cols, n);
    assert_eq!(shift.len(), n);
    if n == 0 {
        return Ok(if bound.is_negative() { vec![] } else { vec![vec![]] });
    }
    if bound.is_negative() {
        return Ok(vec![]);
    }
    let diag = diagonalize(gram)?;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(&diag, shift, bound.clone(), n, &mut x, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    /// Independent completeness oracle: Q(v) <= B forces v_i^2 <= B*(A^{-1})_ii
    /// (Cauchy-Schwarz in the A-inner product), so a box search suffices.
    fn brute_force(gram: &Mat, shift: &[Rat], bound: &Rat) -> Vec<Vec<i64>> {
        let n = gram.rows;
        if bound.is_negative() {
            return vec![];
        }
        let inv = gram.inverse().unwrap();
        let half_widths: Vec<i64> = (0..n)
            .map(|i| {
                let w = floor_sqrt(&(bound * inv.at(i, i))).to_i64().unwrap() + 1;
                let s = shift[i].abs().ceil().to_integer().to_i64().unwrap();
                w + s
            })
            .collect();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        fn walk(
            i: usize,
            widths: &[i64],
            gram: &Mat,
            shift: &[Rat],
            bound: &Rat,
            x: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if i == widths.len() {
                let v: Vec<Rat> = x.iter().zip(shift).map(|(&a, s)| rat(a) + s).collect();
                let q = gram.mul_vec(&v).iter().zip(&v).map(|(a, b)| a * b).sum::<Rat>();
                if &q <= bound {
                    out.push(x.clone());
                }
                return;
            }
            for xi in -widths[i]..=widths[i] {
                x[i] = xi;
                walk(i + 1, widths, gram, shift, bound, x, out);
            }
        }
        walk(0, &half_widths, gram, shift, bound, &mut x, &mut out);
        out
    }

    fn as_set(v: Vec<Vec<i64>>) -> HashSet<Vec<i64>> {
        let set: HashSet<_> = v.iter().cloned().collect();
        assert_eq!(set.len(), v.len(), "duplicate points");
        set
    }

    #[test]
    fn floor_sqrt_values() {
        assert_eq!(floor_sqrt(&rat(0)), BigInt::from(0));
        assert_eq!(floor_sqrt(&rat(15)), BigInt::from(3));
        assert_eq!(floor_sqrt(&rat(16)), BigInt::from(4));
        assert_eq!(floor_sqrt(&ratio(1, 4)), BigInt::from(0));
        assert_eq!(floor_sqrt(&ratio(9, 4)), BigInt::from(1));
        assert_eq!(floor_sqrt(&ratio(100, 9)), BigInt::from(3));
    }

    #[test]
    fn euclidean_disc() {
        let gram = Mat::identity(2);
        let shift = vec![Rat::zero(), Rat::zero()];
        let pts = enumerate_shifted_ball(&gram, &shift, &rat(4)).unwrap();
        assert_eq!(pts.len(), 13);
        assert!(pts.contains(&vec![2, 0]));
        assert!(!pts.contains(&vec![2, 1]));
    }

    #[test]
    fn empty_and_point_cases() {
        let gram = Mat::identity(2);
        let zero = vec![Rat::zero(), Rat::zero()];
        assert!(enumerate_shifted_ball(&gram, &zero, &rat(-1)).unwrap().is_empty());
        let off = vec![ratio(1, 2), Rat::zero()];
        assert!(enumerate_shifted_ball(&gram, &off, &rat(0)).unwrap().is_empty());
        let centred = vec![rat(3), rat(-2)];
        let pts = enumerate_shifted_ball(&gram, &centred, &rat(0)).unwrap();
        assert_eq!(pts, vec![vec![-3, 2]]);
    }

    #[test]
    fn rejects_indefinite_form() {
        let gram = Mat::from_int_rows(&[vec![1, 0], vec![0, -1]]);
        let shift = vec![Rat::zero(), Rat::zero()];
        match enumerate_shifted_ball(&gram, &shift, &rat(1)) {
            Err(CoreError::Singular) => {}
            other => panic!("expected Singular, got {other:?}"),
        }
    }

    #[test]
    fn matches_box_oracle_on_seeded_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1A77);
        let mut nonempty = 0usize;
        for _ in 0..60 {
            let n = rng.gen_range(2..=3);
            // A = R^T R for a random invertible integer R is positive definite
            let r = loop {
                let cand = Mat::from_int_rows(
                    &(0..n)
                        .map(|_| (0..n).map(|_| rng.gen_range(-2i64..=2)).collect())
                        .collect::<Vec<_>>(),
                );
                if !cand.det().is_zero() {
                    break cand;
                }
            };
            let gram = r.transpose().mul(&r);
            let shift: Vec<Rat> = (0..n)
                .map(|_| ratio(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3)))
                .collect();
            let bound = rat(rng.gen_range(0i64..=9));
            let fast = as_set(enumerate_shifted_ball(&gram, &shift, &bound).unwrap());
            let slow = as_set(brute_force(&gram, &shift, &bound));
            assert_eq!(fast, slow);
            if !fast.is_empty() {
                nonempty += 1;
            }
        }
        assert!(nonempty > 20, "oracle exercised too rarely: {nonempty}");
    }

    #[test]
    fn hexagonal_shell_counts() {
        // A_2 root lattice: 6 vectors of norm 2, 6 of norm 6, none of norm 4
        let gram = Mat::from_int_rows(&[vec![2, -1], vec![-1, 2]]);
        let zero = vec![Rat::zero(), Rat::zero()];
        let pts = enumerate_shifted_ball(&gram, &zero, &rat(6)).unwrap();
        let norm = |x: &Vec<i64>| {
            let v: Vec<Rat> = x.iter().map(|&a| rat(a)).collect();
            gram.mul_vec(&v).iter().zip(&v).map(|(a, b)| a * b).sum::<Rat>()
        };
        let count = |k: i64| pts.iter().filter(|x| norm(x) == rat(k)).count();
        assert_eq!(count(0), 1);
        assert_eq!(count(2), 6);
        assert_eq!(count(4), 0);
        assert_eq!(count(6), 6);
        assert_eq!(pts.len(), 13);
    }
}
