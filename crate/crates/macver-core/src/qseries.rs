//! Truncated formal q-series with rational exponents and rational
//! coefficients, tracking how far each series is exactly known.
//!
//! A series carries an inclusive validity order: every exponent `e <= order`
//! has its coefficient stored exactly (absent means zero), and nothing is
//! claimed beyond. Arithmetic propagates the weakest honest bound, e.g. the
//! product of series known to orders `oa`, `ob` with leading exponents `la`,
//! `lb` is known to `min(oa + lb, ob + la)`.

use crate::error::{CoreError, Result};
use crate::linalg::{rat, Rat};
use num::{BigInt, One, Signed, Zero};
use serde_json::{json, Number, Value};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    terms: BTreeMap<Rat, Rat>,
    pub order: Rat,
}

/// Outcome of comparing two series on their common validity range.
#[derive(Clone, Debug)]
pub struct SeriesComparison {
    pub checked_order: Rat,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug)]
pub struct Mismatch {
    pub exponent: Rat,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl QSeries {
    pub fn zero(order: Rat) -> Self {
        QSeries { terms: BTreeMap::new(), order }
    }

    pub fn one(order: Rat) -> Self {
        Self::monomial(Rat::zero(), Rat::one(), order)
    }

    pub fn monomial(exponent: Rat, coeff: Rat, order: Rat) -> Self {
        let mut s = QSeries::zero(order);
        s.set(exponent, coeff);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>, order: Rat) -> Self {
        let mut s = QSeries::zero(order);
        for (e, c) in terms {
            let cur = s.coeff_unchecked(&e) + c;
            s.set(e, cur);
        }
        s
    }

    fn set(&mut self, exponent: Rat, coeff: Rat) {
        if exponent > self.order {
            return;
        }
        if coeff.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, coeff);
        }
    }

    /// Adds `coeff * q^exponent`, silently dropping exponents beyond the order.
    pub fn add_term(&mut self, exponent: Rat, coeff: Rat) {
        let cur = self.coeff_unchecked(&exponent) + coeff;
        self.set(exponent, cur);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest stored exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Rat, &Rat)> {
        self.terms.iter().next()
    }

    fn leading_or_order(&self) -> Rat {
        self.leading().map(|(e, _)| e.clone()).unwrap_or_else(|| self.order.clone())
    }

    /// Coefficient of q^e, or None when e lies beyond the validity order.
    pub fn coeff(&self, e: &Rat) -> Option<Rat> {
        if *e > self.order {
            None
        } else {
            Some(self.coeff_unchecked(e))
        }
    }

    fn coeff_unchecked(&self, e: &Rat) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(mut self, order: Rat) -> Self {
        assert!(order <= self.order, "cannot extend validity by truncation");
        self.terms = self.terms.into_iter().take_while(|(e, _)| *e <= order).collect();
        self.order = order;
        self
    }

    pub fn neg(&self) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
            order: self.order.clone(),
        }
    }

    pub fn scalar_mul(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return QSeries::zero(self.order.clone());
        }
        QSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            order: self.order.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.clone().min(other.order.clone());
        let mut out = QSeries::zero(order);
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let la = self.leading_or_order();
        let lb = other.leading_or_order();
        let order = (self.order.clone() + &lb).min(other.order.clone() + la);
        let mut out = QSeries::zero(order);
        for (ea, ca) in &self.terms {
            if ea + &lb > out.order {
                break;
            }
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e > out.order {
                    break;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the exact polynomial `1 - q^m` (m > 0) without any loss
    /// of validity.
    pub fn mul_one_minus(&self, m: &Rat) -> Self {
        assert!(m.is_positive(), "mul_one_minus requires a positive exponent");
        let mut out = self.clone();
        for (e, c) in &self.terms {
            out.add_term(e + m, -c.clone());
        }
        out
    }

    /// Multiplicative inverse. If the leading term is c q^e and the series is
    /// known to order `o`, the inverse is known to order `o - 2e`.
    pub fn invert(&self) -> Result<Self> {
        let (e0, c0) = self
            .leading()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| CoreError::Unsupported("inverting a q-series with no known nonzero term".into()))?;
        // Normalize to v = 1 + (higher order), valid on [0, o - e0].
        let v_order = &self.order - &e0;
        let mut v = QSeries::zero(v_order.clone());
        for (e, c) in &self.terms {
            v.set(e - &e0, c / &c0);
        }
        // Long division: maintain residual r with 1 = v * w + r.
        let mut w = QSeries::zero(v_order.clone());
        let mut r = QSeries::one(v_order);
        while let Some((le, lc)) = r.leading() {
            let (le, lc) = (le.clone(), lc.clone());
            w.add_term(le.clone(), lc.clone());
            for (e, c) in &v.terms {
                r.add_term(&le + e, -(&lc * c));
            }
        }
        let order = &self.order - rat(2) * &e0;
        let mut out = QSeries::zero(order);
        for (e, c) in &w.terms {
            out.set(e - &e0, c / &c0);
        }
        Ok(out)
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert()?.powi(-k);
        }
        if k == 0 {
            return Ok(QSeries::one(self.order.clone()));
        }
        let mut result = self.clone();
        for bit in (0..63 - k.leading_zeros() as i64).rev() {
            result = result.mul(&result);
            if (k >> bit) & 1 == 1 {
                result = result.mul(self);
            }
        }
        Ok(result)
    }

    /// Multiplies exponents (and the order) by a positive factor.
    pub fn scale_exponents(&self, f: &Rat) -> Result<Self> {
        if !f.is_positive() {
            return Err(CoreError::BadScale(f.to_string()));
        }
        Ok(QSeries {
            terms: self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect(),
            order: &self.order * f,
        })
    }

    /// Dedekind eta with the q^{1/24} prefactor, at argument q^scale:
    /// eta(q^s) = q^{s/24} prod_{n>=1} (1 - q^{sn}), exact through `order`.
    pub fn eta(scale: &Rat, order: &Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(CoreError::BadScale(scale.to_string()));
        }
        let prefix = scale / rat(24);
        let mut s = QSeries::monomial(prefix.clone(), Rat::one(), order.clone());
        let mut n = Rat::one();
        while &(scale * &n) + &prefix <= *order {
            s = s.mul_one_minus(&(scale * &n));
            n += Rat::one();
        }
        Ok(s)
    }

    /// Compares coefficients on the common validity range.
    pub fn compare(&self, other: &Self) -> SeriesComparison {
        let checked_order = self.order.clone().min(other.order.clone());
        let mut exponents: Vec<&Rat> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|e| **e <= checked_order)
            .collect();
        exponents.sort();
        exponents.dedup();
        for e in exponents {
            let lhs = self.coeff_unchecked(e);
            let rhs = other.coeff_unchecked(e);
            if lhs != rhs {
                return SeriesComparison {
                    checked_order,
                    first_mismatch: Some(Mismatch { exponent: e.clone(), lhs, rhs }),
                };
            }
        }
        SeriesComparison { checked_order, first_mismatch: None }
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.compare(other).first_mismatch.is_none()
    }

    /// Stable JSON form: exponents are integerized by the common denominator
    /// `D` of the order and all exponents; each term is
    /// `[exponent*D, coeff_numerator, coeff_denominator]`.
    pub fn to_json(&self) -> Value {
        let mut d: BigInt = self.order.denom().clone();
        for e in self.terms.keys() {
            d = num::integer::lcm(d, e.denom().clone());
        }
        let scale = Rat::from(d.clone());
        let int_num = |r: &Rat| -> Number {
            debug_assert!(r.is_integer());
            Number::from_str(&r.to_integer().to_string()).expect("integer literal")
        };
        let big_num = |b: &BigInt| -> Number { Number::from_str(&b.to_string()).expect("integer literal") };
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                json!([int_num(&(e * &scale)), big_num(c.numer()), big_num(c.denom())])
            })
            .collect();
        json!({
            "denominator": big_num(&d),
            "order_num": int_num(&(&self.order * &scale)),
            "terms": terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn euler_product(order: i64) -> QSeries {
        let ord = rat(order);
        let mut p = QSeries::one(ord.clone());
        let mut n = 1i64;
        while rat(n) <= ord {
            p = p.mul_one_minus(&rat(n));
            n += 1;
        }
        p
    }

    #[test]
    fn pentagonal_number_oracle() {
        let order = 120;
        let product = euler_product(order);
        let mut sum = QSeries::zero(rat(order));
        sum.add_term(rat(0), rat(1));
        let mut k = 1i64;
        loop {
            let e1 = k * (3 * k - 1) / 2;
            let e2 = k * (3 * k + 1) / 2;
            if e1 > order {
                break;
            }
            let sign = rat(if k % 2 == 0 { 1 } else { -1 });
            sum.add_term(rat(e1), sign.clone());
            if e2 <= order {
                sum.add_term(rat(e2), sign);
            }
            k += 1;
        }
        assert!(product.agrees_with(&sum));
        assert_eq!(product.coeff(&rat(118)), Some(rat(0)));
        assert_eq!(product.coeff(&rat(117)), Some(rat(-1))); // k = 9
        assert_eq!(product.coeff(&rat(100)), Some(rat(1))); // k = 8

    }

    #[test]
    fn eta_cubed_is_signed_odd_squares() {
        // eta(q)^3 = sum_{k>=0} (-1)^k (2k+1) q^{(2k+1)^2/8}
        let order = rat(20);
        let eta3 = QSeries::eta(&Rat::one(), &order).unwrap().powi(3).unwrap();
        let mut rhs = QSeries::zero(order);
        let mut k = 0i64;
        loop {
            let e = ratio((2 * k + 1) * (2 * k + 1), 8);
            if e > rhs.order {
                break;
            }
            rhs.add_term(e, rat(if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) }));
            k += 1;
        }
        assert!(eta3.agrees_with(&rhs));
        for (e, c) in [(ratio(1, 8), rat(1)), (ratio(9, 8), rat(-3)), (ratio(25, 8), rat(5)), (ratio(49, 8), rat(-7))] {
            assert_eq!(eta3.coeff(&e), Some(c));
        }
    }

    fn random_series(rng: &mut ChaCha8Rng, order: i64) -> QSeries {
        let mut s = QSeries::zero(rat(order));
        for _ in 0..rng.gen_range(1..8) {
            let e = ratio(rng.gen_range(0..=6 * order), 6);
            let c = ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            s.add_term(e, c);
        }
        s
    }

    #[test]
    fn ring_laws_on_seeded_random_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x51_5e71e5);
        for _ in 0..300 {
            let a = random_series(&mut rng, 6);
            let b = random_series(&mut rng, 6);
            let c = random_series(&mut rng, 6);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert!(a.mul(&b).agrees_with(&b.mul(&a)));
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            assert!(lhs.agrees_with(&rhs));
            let assoc_l = a.mul(&b).mul(&c);
            let assoc_r = a.mul(&b.mul(&c));
            assert!(assoc_l.agrees_with(&assoc_r));
        }
    }

    #[test]
    fn inversion_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let mut a = random_series(&mut rng, 8);
            // force a nonzero constant-or-lower leading term
            a.add_term(Rat::zero(), rat(rng.gen_range(1..5)));
            let inv = a.invert().unwrap();
            let prod = a.mul(&inv);
            assert!(prod.agrees_with(&QSeries::one(prod.order.clone())));
        }
        let eta = QSeries::eta(&Rat::one(), &rat(10)).unwrap();
        let prod = eta.mul(&eta.invert().unwrap());
        assert!(prod.order >= rat(9));
        assert!(prod.agrees_with(&QSeries::one(prod.order.clone())));
    }

    #[test]
    fn multiplication_order_rule() {
        let a = QSeries::monomial(rat(1), rat(1), rat(5));
        let b = QSeries::monomial(rat(2), rat(1), rat(7));
        assert_eq!(a.mul(&b).order, rat(7)); // min(5+2, 7+1)
        let inv = a.invert().unwrap();
        assert_eq!(inv.order, rat(3)); // 5 - 2*1
        assert_eq!(inv.coeff(&rat(-1)), Some(rat(1)));
    }

    #[test]
    fn eta_scaling_matches_exponent_scaling() {
        let order = rat(8);
        let eta2 = QSeries::eta(&rat(2), &order).unwrap();
        let eta1 = QSeries::eta(&Rat::one(), &ratio(9, 2)).unwrap();
        let rescaled = eta1.scale_exponents(&rat(2)).unwrap();
        let cmp = eta2.compare(&rescaled);
        assert!(cmp.first_mismatch.is_none());
        assert!(cmp.checked_order >= rat(8));
        assert_eq!(eta2.leading().map(|(e, _)| e.clone()), Some(ratio(1, 12)));
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = QSeries::from_terms([(ratio(1, 2), rat(1)), (ratio(3, 2), rat(4))], rat(5));
        let b = QSeries::from_terms([(ratio(1, 2), rat(1)), (ratio(3, 2), rat(5))], rat(6));
        let cmp = a.compare(&b);
        assert_eq!(cmp.checked_order, rat(5));
        let m = cmp.first_mismatch.unwrap();
        assert_eq!(m.exponent, ratio(3, 2));
        assert_eq!((m.lhs, m.rhs), (rat(4), rat(5)));
    }

    #[test]
    fn json_is_stable() {
        let s = QSeries::from_terms([(ratio(-1, 8), rat(2)), (Rat::one(), ratio(-3, 4))], ratio(7, 2));
        let v = s.to_json();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"denominator":8,"order_num":28,"terms":[[-1,2,1],[8,-3,4]]}"#
        );
    }
}
