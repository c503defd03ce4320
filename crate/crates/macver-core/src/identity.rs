//! The identity engine: finite and affine denominator identities (exact
//! group-ring / bivariate arithmetic) and the Macdonald eta-power identities
//! (truncated q-series with certified lattice enumeration on the sum side).

use crate::affine::{AffineCase, AffineSystem, AffineType};
use crate::error::{CoreError, Result};
use crate::finite::{Family, FiniteRootSystem, FiniteType};
use crate::lattice::enumerate_shifted_ball;
use crate::linalg::{rat, ratio, Mat, Rat};
use crate::qseries::{Mismatch, QSeries};
use crate::weight_ring::{BivariatePoly, WeightPoly};
use crate::weyl::{enumerate_weyl, reflection_matrix_hat, translation_lattice, translation_matrix};
use num::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::HashMap;
use std::time::Instant;

/// Outcome of one identity verification run.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub type_label: String,
    pub order: i64,
    pub verdict: bool,
    pub first_mismatch: Option<Mismatch>,
    pub lattice_points: usize,
    pub wall_ms: u64,
    pub lhs: Option<QSeries>,
    pub rhs: Option<QSeries>,
}

impl IdentityReport {
    pub fn to_json(&self) -> Value {
        let mismatch = match &self.first_mismatch {
            None => Value::Null,
            Some(m) => json!({
                "exponent_num": m.exponent.numer().to_i64().expect("exponent overflow"),
                "denom": m.exponent.denom().to_i64().expect("exponent overflow"),
                "lhs_coeff": m.lhs.to_string(),
                "rhs_coeff": m.rhs.to_string(),
            }),
        };
        json!({
            "identity": self.identity,
            "type": self.type_label,
            "order": self.order,
            "verdict": if self.verdict { "pass" } else { "fail" },
            "first_mismatch": mismatch,
            "lattice_points_enumerated": self.lattice_points,
            "wall_ms": self.wall_ms,
        })
    }
}

fn wall_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn rat_to_i64(r: &Rat) -> i64 {
    assert!(r.is_integer(), "expected integer, got {r}");
    r.numer().to_i64().expect("integer out of i64 range")
}

/// Weyl dimension factor d(lambda) = prod_{alpha>0} I(lambda+rho,alpha)/I(rho,alpha).
pub fn weyl_dim_factor(rs: &FiniteRootSystem, lambda: &[Rat]) -> Result<Rat> {
    if !rs.in_weight_lattice(lambda) {
        return Err(CoreError::NotAWeight(format!("{lambda:?}")));
    }
    Ok(dim_ratio(rs, lambda))
}

fn dim_ratio(rs: &FiniteRootSystem, lambda: &[Rat]) -> Rat {
    let shifted: Vec<Rat> = lambda.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    let mut out = Rat::one();
    for alpha in &rs.positive_roots {
        let a: Vec<Rat> = alpha.iter().map(|&x| rat(x)).collect();
        out *= rs.gram.bilinear(&shifted, &a) / rs.gram.bilinear(&rs.rho, &a);
    }
    out
}

/// (dim g, (h+1) * rank); equal for every reduced type.
pub fn kostant_dim_check(rs: &FiniteRootSystem) -> (usize, usize) {
    (rs.lie_dim(), (rs.h + 1) * rs.rank())
}

/// Simply-laced system whose diagram folds onto the given twisted type.
pub fn folding_source(typ: AffineType) -> Result<FiniteType> {
    if typ.tier == 1 || typ.base.family == Family::BC {
        return Err(CoreError::Unsupported(format!(
            "{} has no simply-laced folding source here",
            typ.label()
        )));
    }
    let l = typ.base.rank;
    match typ.base.family {
        Family::B => FiniteType::new(Family::A, 2 * l - 1),
        Family::C => FiniteType::new_internal(Family::D, l + 1),
        Family::F => FiniteType::new(Family::E, 6),
        Family::G => FiniteType::new_internal(Family::D, 4),
        _ => Err(CoreError::Unsupported(typ.label())),
    }
}

/// Both sides of the dual-Coxeter equality: the colabel sum of the twisted
/// system against the label sum of its folding source.
pub fn dual_coxeter_folding_check(typ: AffineType) -> Result<(i64, i64)> {
    let sys = AffineSystem::standard(typ)?;
    let src = folding_source(typ)?;
    let src_sys = AffineSystem::standard(AffineType::new(src, 1)?)?;
    Ok((sys.h_dual, src_sys.labels.iter().sum()))
}

/// (I(rho,rho)/2I(rho,delta), expected dim/24). Asserts the two agree.
pub fn strange_formula_check(sys: &AffineSystem) -> Result<(Rat, Rat)> {
    let lhs = sys.bilinear(&sys.rho, &sys.rho) / (rat(2) * &sys.c);
    let dim = match sys.typ.case() {
        AffineCase::Untwisted => sys.quotient.lie_dim(),
        AffineCase::Twisted => {
            let src = folding_source(sys.typ)?;
            src.rank + crate::finite::expected_root_count(src)
        }
        AffineCase::BC => {
            return Err(CoreError::Unsupported(
                "strange formula stated for reduced quotients only".into(),
            ))
        }
    };
    let rhs = ratio(dim as i64, 24);
    assert_eq!(lhs, rhs, "{}: strange formula", sys.typ.label());
    Ok((lhs, rhs))
}

/// Eta factors (argument scale, exponent) for the Macdonald identity.
pub fn eta_shape(sys: &AffineSystem) -> Vec<(Rat, i64)> {
    let l = sys.rank() as i64;
    match sys.typ.case() {
        AffineCase::Untwisted => vec![(Rat::one(), sys.quotient.lie_dim() as i64)],
        AffineCase::Twisted => {
            // h is the Coxeter number of the finite quotient
            let h = sys.quotient.h as i64;
            let ns = sys.quotient.simple_short_indices().len() as i64;
            let nl = sys.quotient.simple_long_indices().len() as i64;
            vec![(Rat::one(), (h + 1) * ns), (rat(sys.typ.tier as i64), (h + 1) * nl)]
        }
        AffineCase::BC => vec![
            (ratio(1, 2), 2 * l),
            (Rat::one(), (2 * l - 3) * l),
            (rat(2), 2 * l),
        ],
    }
}

fn macdonald_name(case: AffineCase) -> &'static str {
    match case {
        AffineCase::Untwisted => "macdonald-untwisted",
        AffineCase::Twisted => "macdonald-twisted",
        AffineCase::BC => "macdonald-BC",
    }
}

/// Verifies the Macdonald identity for any affine type at the given q-order.
/// `lattice_scale` overrides the multiplier of the translation lattice on the
/// sum side (diagnostic; the default is I(rho,delta)).
pub fn macdonald_identity(
    sys: &AffineSystem,
    order: i64,
    lattice_scale: Option<Rat>,
) -> Result<IdentityReport> {
    assert!(order >= 1, "order must be positive");
    let start = Instant::now();
    let working = sys.working_system();
    let c = sys.c.clone();
    let default_path = lattice_scale.is_none();
    let multiplier = lattice_scale.unwrap_or_else(|| c.clone());
    let lat = translation_lattice(sys);
    let basis: Vec<Vec<Rat>> = lat
        .basis_working
        .iter()
        .map(|v| v.iter().map(|x| x * &multiplier).collect())
        .collect();
    let l = working.rank();
    let gram_rows: Vec<Vec<Rat>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| working.gram.bilinear(a, b)).collect())
        .collect();
    let a = Mat::from_rows(gram_rows);
    let rho = working.rho.clone();
    let pairings: Vec<Rat> = basis.iter().map(|b| working.gram.bilinear(&rho, b)).collect();
    let shift = a.solve(&pairings)?;
    let bound = rat(2) * &c * rat(order);
    let points = enumerate_shifted_ball(&a, &shift, &bound)?;

    let two_c = rat(2) * &c;
    let terms: Vec<(Rat, Rat)> = points
        .par_iter()
        .map(|k| {
            let gamma: Vec<Rat> = (0..l)
                .map(|i| {
                    let mut acc = Rat::zero();
                    for (kb, b) in k.iter().zip(&basis) {
                        acc += rat(*kb) * &b[i];
                    }
                    acc
                })
                .collect();
            let shifted: Vec<Rat> = gamma.iter().zip(&rho).map(|(g, r)| g + r).collect();
            let exponent = working.gram.norm(&shifted) / &two_c;
            let d = if default_path {
                let d = weyl_dim_factor(working, &gamma).expect("lattice point outside P");
                assert!(d.is_integer(), "non-integer d({gamma:?}) = {d}");
                d
            } else {
                dim_ratio(working, &gamma)
            };
            (exponent, d)
        })
        .collect();
    let order_rat = rat(order);
    let rhs = QSeries::from_terms(terms, order_rat.clone());

    let mut lhs = QSeries::one(&order_rat + rat(1));
    for (scale, power) in eta_shape(sys) {
        if power == 0 {
            continue;
        }
        let factor = QSeries::eta(&scale, &order_rat)?.powi(power)?;
        lhs = lhs.mul(&factor);
    }
    if default_path {
        // the gamma = 0 exponent must equal the eta-prefactor exponent
        let zero_term = working.gram.norm(&rho) / &two_c;
        let prefactor: Rat = eta_shape(sys)
            .iter()
            .map(|(s, p)| s * rat(*p) / rat(24))
            .sum();
        assert_eq!(zero_term, prefactor, "{}: leading exponents", sys.typ.label());
        if sys.typ.case() == AffineCase::Twisted {
            let src = folding_source(sys.typ)?;
            let dim_src = src.rank + crate::finite::expected_root_count(src);
            let h = sys.quotient.h as i64;
            let ns = sys.quotient.simple_short_indices().len() as i64;
            let nl = sys.quotient.simple_long_indices().len() as i64;
            let t = sys.typ.tier as i64;
            assert_eq!(
                dim_src as i64,
                (h + 1) * (ns + t * nl),
                "{}: folding-source dimension bookkeeping",
                sys.typ.label()
            );
        }
    }

    let cmp = lhs.compare(&rhs);
    let verdict = cmp.first_mismatch.is_none() && cmp.checked_order >= order_rat;
    Ok(IdentityReport {
        identity: macdonald_name(sys.typ.case()),
        type_label: sys.typ.label(),
        order,
        verdict,
        first_mismatch: cmp.first_mismatch,
        lattice_points: points.len(),
        wall_ms: wall_ms(start),
        lhs: Some(lhs),
        rhs: Some(rhs),
    })
}

pub fn macdonald_untwisted(sys: &AffineSystem, order: i64) -> Result<IdentityReport> {
    assert_eq!(sys.typ.case(), AffineCase::Untwisted);
    macdonald_identity(sys, order, None)
}

pub fn macdonald_twisted(sys: &AffineSystem, order: i64) -> Result<IdentityReport> {
    assert_eq!(sys.typ.case(), AffineCase::Twisted);
    macdonald_identity(sys, order, None)
}

pub fn macdonald_bc(sys: &AffineSystem, order: i64) -> Result<IdentityReport> {
    assert_eq!(sys.typ.case(), AffineCase::BC);
    macdonald_identity(sys, order, None)
}

/// Exact finite denominator identity, in two product forms.
pub fn denominator_finite(rs: &FiniteRootSystem, cap: u64) -> Result<IdentityReport> {
    let start = Instant::now();
    let elements = enumerate_weyl(rs, cap)?;
    let l = rs.rank();
    let two_rho: Vec<i64> = rs.rho.iter().map(|r| rat_to_i64(&(r * rat(2)))).collect();

    // positive_roots is height-sorted; ascending heights keep intermediates small
    let mut product = WeightPoly::one(l);
    for alpha in &rs.positive_roots {
        let neg2: Vec<i64> = alpha.iter().map(|&x| -2 * x).collect();
        product = product.mul_one_minus(&neg2);
    }
    let mut alternating = WeightPoly::zero(l);
    for w in &elements {
        let image = w.apply(&two_rho);
        let key: Vec<i64> = image.iter().zip(&two_rho).map(|(a, b)| a - b).collect();
        alternating.add_term(&key, w.det);
    }
    assert_eq!(alternating.num_terms(), elements.len(), "{}: rho orbit is regular", rs.typ.label());
    let plain_form = product == alternating;

    // rewriting: prod (e^{alpha/2} - e^{-alpha/2}) equals the unshifted sum
    let mut halves = WeightPoly::one(l);
    for alpha in &rs.positive_roots {
        let neg: Vec<i64> = alpha.iter().map(|&x| -x).collect();
        halves = halves.mul_binomial_sub(alpha, &neg);
    }
    let half_form = halves == alternating.shift(&two_rho);

    Ok(IdentityReport {
        identity: "denominator-finite",
        type_label: rs.typ.label(),
        order: 0,
        verdict: plain_form && half_form,
        first_mismatch: None,
        lattice_points: elements.len(),
        wall_ms: wall_ms(start),
        lhs: None,
        rhs: None,
    })
}

/// Simple roots of the level-0 subsystem used for the affine denominator:
/// the finite simples, except for BC where the nodes 0..l-1 span R_f'.
fn level_zero_simples(sys: &AffineSystem) -> Vec<Vec<Rat>> {
    let l = sys.rank();
    match sys.typ.case() {
        AffineCase::BC => sys.simple_roots[..l].to_vec(),
        _ => sys.simple_roots[1..=l].to_vec(),
    }
}

/// Enumerates the subgroup of O(F-hat) generated by reflections in the given
/// roots, as (matrix, det) pairs.
fn enumerate_hat_group(sys: &AffineSystem, simples: &[Vec<Rat>]) -> Vec<(Mat, i64)> {
    let dim = sys.dim();
    let gens: Vec<Mat> = simples.iter().map(|s| reflection_matrix_hat(sys, s)).collect();
    let mut seen: HashMap<Vec<Rat>, ()> = HashMap::new();
    let id = Mat::identity(dim);
    let key = |m: &Mat| -> Vec<Rat> {
        (0..dim).flat_map(|i| (0..dim).map(move |j| m.at(i, j).clone())).collect()
    };
    seen.insert(key(&id), ());
    let mut out = vec![(id, 1i64)];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        let (m, det) = (out[idx].0.clone(), out[idx].1);
        for g in &gens {
            let next = m.mul(g);
            let k = key(&next);
            if !seen.contains_key(&k) {
                seen.insert(k, ());
                out.push((next, -det));
                frontier.push(out.len() - 1);
            }
        }
    }
    out
}

/// LHS factors (doubled level, doubled weight) of the affine denominator,
/// complete for doubled levels <= order2.
fn affine_denominator_factors(sys: &AffineSystem, order2: i64) -> Vec<(i64, Vec<i64>)> {
    let l = sys.rank();
    let mut factors: Vec<(i64, Vec<i64>)> = Vec::new();
    // real roots: each norm stratum occupies its own arithmetic level grid
    for stratum in sys.quotient.strata() {
        let (stride, residue) = sys.level_stride_and_parity(&stratum.norm);
        if residue == 0 {
            for alpha in &sys.quotient.positive_roots {
                if sys.quotient.norm_of(alpha) == stratum.norm {
                    factors.push((0, alpha.iter().map(|&x| -2 * x).collect()));
                }
            }
        }
        let mut level = if residue == 0 { stride } else { residue };
        while 2 * level <= order2 {
            for alpha in &stratum.roots {
                factors.push((2 * level, alpha.iter().map(|&x| -2 * x).collect()));
            }
            level += stride;
        }
    }
    // imaginary roots n delta, with the eigenspace-dimension multiplicity
    let zero = vec![0i64; l];
    let mult = |n: i64| -> usize {
        match sys.typ.case() {
            AffineCase::Untwisted | AffineCase::BC => l,
            AffineCase::Twisted => {
                let t = sys.typ.tier as i64;
                let ns = sys.quotient.simple_short_indices().len();
                let nl = sys.quotient.simple_long_indices().len();
                ns + if n % t == 0 { nl } else { 0 }
            }
        }
    };
    let mut n = 1i64;
    while 2 * n <= order2 {
        for _ in 0..mult(n) {
            factors.push((2 * n, zero.clone()));
        }
        n += 1;
    }
    factors
}

fn specialize_levels(poly: &BivariatePoly, order: i64) -> QSeries {
    let mut out = QSeries::zero(rat(order));
    for (level2, wp) in poly.levels() {
        let total: i64 = wp.terms().map(|(_, c)| c).sum();
        out.add_term(ratio(level2, 2), rat(total));
    }
    out
}

/// Affine denominator identity as a bivariate (weight x q) truncation:
/// the displayed product equals the full alternating Weyl-translation sum.
pub fn denominator_affine(sys: &AffineSystem, order: i64) -> Result<IdentityReport> {
    assert!(order >= 1);
    let start = Instant::now();
    let l = sys.rank();
    let order2 = 2 * order;

    let mut lhs = BivariatePoly::one(l, order2);
    let mut factors = affine_denominator_factors(sys, order2);
    factors.sort();
    for (level2, weight2) in &factors {
        lhs = lhs.mul_one_minus(*level2, weight2);
    }

    // sum side: w = u t_gamma over the level-0 Weyl group and the lattice M
    let simples = level_zero_simples(sys);
    let b_rows: Vec<Vec<Rat>> = simples
        .iter()
        .map(|a| simples.iter().map(|b| sys.bilinear(a, b)).collect())
        .collect();
    let b = Mat::from_rows(b_rows);
    let rho_p = sys.rho_prime.clone();
    let solve_span = |target: &[Rat]| -> Vec<Rat> {
        let rhs: Vec<Rat> = simples.iter().map(|s| sys.bilinear(s, target)).collect();
        b.solve(&rhs).expect("level-0 Gram is invertible")
    };
    // projection of rho' on the span, and the Lambda functional bound
    let rho_coeffs = solve_span(&rho_p);
    let mut rho_par = vec![Rat::zero(); sys.dim()];
    for (cf, s) in rho_coeffs.iter().zip(&simples) {
        for (acc, x) in rho_par.iter_mut().zip(s) {
            *acc += cf * x;
        }
    }
    let lambda = sys.lambda_direction();
    let lam_coeffs = solve_span(&lambda);
    let kappa2: Rat = lam_coeffs
        .iter()
        .zip(&simples)
        .map(|(cf, s)| cf * sys.bilinear(s, &lambda))
        .sum();
    let rho_par_norm = sys.norm(&rho_par);
    let d_rho_par = rho_par[l].clone();
    let c = sys.c.clone();
    // certified radius: q-exponent <= order forces |rho_par + c gamma|^2 <= bound
    let s_term = &rho_par_norm + rat(2) * &c * (rat(order) - &d_rho_par);
    let bound = if kappa2.is_zero() {
        s_term
    } else {
        rat(2) * s_term + rat(4) * &c * &c * &kappa2
    };
    assert!(bound >= rho_par_norm, "certified radius excludes gamma = 0");

    let lat = translation_lattice(sys);
    let scaled: Vec<Vec<Rat>> = lat
        .basis_hat
        .iter()
        .map(|m| m.iter().map(|x| x * &c).collect())
        .collect();
    let a_rows: Vec<Vec<Rat>> = scaled
        .iter()
        .map(|p| scaled.iter().map(|q| sys.bilinear(p, q)).collect())
        .collect();
    let a = Mat::from_rows(a_rows);
    let w_pair: Vec<Rat> = scaled.iter().map(|p| sys.bilinear(&rho_par, p)).collect();
    let w_shift = a.solve(&w_pair)?;
    let points = enumerate_shifted_ball(&a, &w_shift, &bound)?;

    let group = enumerate_hat_group(sys, &simples);
    let expected_group: u128 = match sys.typ.case() {
        AffineCase::BC => sys.working_system().weyl_order(),
        _ => sys.quotient.weyl_order(),
    };
    assert_eq!(group.len() as u128, expected_group, "{}: level-0 Weyl order", sys.typ.label());

    let mut rhs = BivariatePoly::zero(l, order2);
    for k in &points {
        let mut gamma = vec![Rat::zero(); sys.dim()];
        for (kb, m) in k.iter().zip(&lat.basis_hat) {
            for (acc, x) in gamma.iter_mut().zip(m) {
                *acc += rat(*kb) * &c * x;
            }
        }
        // gamma above is c * (lattice vector); translation uses the plain vector
        let t = translation_matrix(sys, &gamma.iter().map(|x| x / &c).collect::<Vec<_>>());
        let translated = t.mul_vec(&rho_p);
        for (u, det) in &group {
            let image = u.mul_vec(&translated);
            let mu: Vec<Rat> = image.iter().zip(&rho_p).map(|(a, b)| a - b).collect();
            assert!(mu[l + 1].is_zero(), "Lambda component must cancel");
            let level2 = rat_to_i64(&(rat(-2) * &mu[l]));
            assert!(level2 >= 0, "{}: negative q-power on sum side", sys.typ.label());
            if level2 > order2 {
                continue;
            }
            let weight2: Vec<i64> = mu[..l].iter().map(|x| rat_to_i64(&(rat(2) * x))).collect();
            rhs.add_term(level2, &weight2, *det);
        }
    }

    let difference = lhs.first_difference(&rhs);
    let lhs_q = specialize_levels(&lhs, order);
    let rhs_q = specialize_levels(&rhs, order);
    let first_mismatch = difference.map(|level2| {
        let e = ratio(level2, 2);
        Mismatch {
            exponent: e.clone(),
            lhs: lhs_q.coeff(&e).unwrap_or_else(Rat::zero),
            rhs: rhs_q.coeff(&e).unwrap_or_else(Rat::zero),
        }
    });
    Ok(IdentityReport {
        identity: "denominator-affine",
        type_label: sys.typ.label(),
        order,
        verdict: difference.is_none(),
        first_mismatch,
        lattice_points: points.len(),
        wall_ms: wall_ms(start),
        lhs: Some(lhs_q),
        rhs: Some(rhs_q),
    })
}

/// Exact small-t probe of the specialization that defines d(lambda):
/// returns (approximation, d(lambda), certified error bound) at t = 2^{-k}.
pub fn specialization_probe(
    rs: &FiniteRootSystem,
    lambda: &[Rat],
    k: u32,
) -> Result<(Rat, Rat, Rat)> {
    let d = weyl_dim_factor(rs, lambda)?;
    let t = ratio(1, 1i64 << k);
    let exp3 = |x: &Rat| -> Rat { Rat::one() + x + x * x / rat(2) + x * x * x / rat(6) };
    let shifted: Vec<Rat> = lambda.iter().zip(&rs.rho).map(|(a, b)| a + b).collect();
    let mut numer = Rat::one();
    let mut denom = Rat::one();
    let mut sum_sq = Rat::zero();
    let mut sum_sq0 = Rat::zero();
    for alpha in &rs.positive_roots {
        let a: Vec<Rat> = alpha.iter().map(|&x| rat(x)).collect();
        let y = rs.gram.bilinear(&shifted, &a);
        let y0 = rs.gram.bilinear(&rs.rho, &a);
        let half = &t * &y / rat(2);
        let half0 = &t * &y0 / rat(2);
        numer *= exp3(&half) - exp3(&(-&half));
        denom *= exp3(&half0) - exp3(&(-&half0));
        sum_sq += &y * &y;
        sum_sq0 += &y0 * &y0;
    }
    let approx = numer / denom;
    let scaled = &t * &t * (&sum_sq + &sum_sq0) / rat(24);
    assert!(scaled <= ratio(1, 2), "probe step too coarse for the certified bound");
    let bound = d.abs() * &t * &t * (sum_sq + sum_sq0) / rat(12);
    Ok((approx, d, bound))
}
