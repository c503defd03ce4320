//! Sparse group-ring arithmetic for denominator identities.
//!
//! Monomials e^lambda are indexed by doubled simple-root coordinates
//! (2*lambda is integral for every vector we meet: roots, half-roots, Weyl
//! vectors, and their Weyl images), packed into a u128 key. `WeightPoly`
//! is the exact group-ring element; `BivariatePoly` grades such elements by
//! a doubled q-exponent with truncation, for affine denominators.

use std::collections::BTreeMap;

const FIELD_BITS: u32 = 12;
const FIELD_OFFSET: i64 = 1 << (FIELD_BITS - 1);
const FIELD_MASK: u128 = (1 << FIELD_BITS) - 1;
pub const MAX_RANK: usize = (128 / FIELD_BITS as usize) - 1;

/// Packs up to `MAX_RANK` doubled coordinates in [-2048, 2047] into a u128.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyPacker {
    rank: usize,
}

impl KeyPacker {
    pub fn new(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds packing capacity");
        KeyPacker { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pack(&self, coords2: &[i64]) -> u128 {
        assert_eq!(coords2.len(), self.rank);
        let mut key = 0u128;
        for &c in coords2 {
            let shifted = c + FIELD_OFFSET;
            assert!(
                (0..(1i64 << FIELD_BITS)).contains(&shifted),
                "coordinate {c} out of packing range"
            );
            key = (key << FIELD_BITS) | shifted as u128;
        }
        key
    }

    pub fn unpack(&self, mut key: u128) -> Vec<i64> {
        let mut coords = vec![0i64; self.rank];
        for slot in coords.iter_mut().rev() {
            *slot = (key & FIELD_MASK) as i64 - FIELD_OFFSET;
            key >>= FIELD_BITS;
        }
        coords
    }
}

/// Exact integer-coefficient element of the weight-lattice group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightPoly {
    packer: KeyPacker,
    terms: BTreeMap<u128, i64>,
}

impl WeightPoly {
    pub fn zero(rank: usize) -> Self {
        WeightPoly { packer: KeyPacker::new(rank), terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(&vec![0; rank], 1)
    }

    /// e^{coords2 / 2} with the given coefficient.
    pub fn monomial(coords2: &[i64], coeff: i64) -> Self {
        let mut p = Self::zero(coords2.len());
        p.add_term(coords2, coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.packer.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, coords2: &[i64], coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = self.packer.pack(coords2);
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, coords2: &[i64]) -> i64 {
        *self.terms.get(&self.packer.pack(coords2)).unwrap_or(&0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<i64>, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (self.packer.unpack(k), c))
    }

    pub fn add_assign(&mut self, other: &WeightPoly) {
        assert_eq!(self.packer, other.packer);
        for (coords, c) in other.terms() {
            self.add_term(&coords, c);
        }
    }

    pub fn neg(&self) -> WeightPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    /// self * e^{coords2 / 2}
    pub fn shift(&self, coords2: &[i64]) -> WeightPoly {
        let mut out = WeightPoly::zero(self.rank());
        for (mut coords, c) in self.terms() {
            for (a, b) in coords.iter_mut().zip(coords2) {
                *a += b;
            }
            out.add_term(&coords, c);
        }
        out
    }

    /// self * (e^{a/2} - e^{b/2})
    pub fn mul_binomial_sub(&self, a2: &[i64], b2: &[i64]) -> WeightPoly {
        let mut out = self.shift(a2);
        for (coords, c) in self.shift(b2).terms() {
            out.add_term(&coords, -c);
        }
        out
    }

    /// self * (1 - e^{coords2 / 2})
    pub fn mul_one_minus(&self, coords2: &[i64]) -> WeightPoly {
        let zero = vec![0i64; self.rank()];
        self.mul_binomial_sub(&zero, coords2)
    }
}

/// Group-ring element graded by a doubled q-exponent, truncated above
/// `order2` (terms with doubled exponent > order2 are dropped as unknown).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    rank: usize,
    pub order2: i64,
    levels: BTreeMap<i64, WeightPoly>,
}

impl BivariatePoly {
    pub fn zero(rank: usize, order2: i64) -> Self {
        BivariatePoly { rank, order2, levels: BTreeMap::new() }
    }

    pub fn one(rank: usize, order2: i64) -> Self {
        let mut p = Self::zero(rank, order2);
        p.add_term(0, &vec![0; rank], 1);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Adds coeff * q^{level2/2} e^{coords2/2}.
    pub fn add_term(&mut self, level2: i64, coords2: &[i64], coeff: i64) {
        assert!(level2 >= 0, "negative q-exponent {level2}");
        if coeff == 0 || level2 > self.order2 {
            return;
        }
        let slot = self
            .levels
            .entry(level2)
            .or_insert_with(|| WeightPoly::zero(self.rank));
        slot.add_term(coords2, coeff);
        if slot.is_zero() {
            self.levels.remove(&level2);
        }
    }

    pub fn coeff(&self, level2: i64, coords2: &[i64]) -> i64 {
        self.levels.get(&level2).map_or(0, |p| p.coeff(coords2))
    }

    pub fn level(&self, level2: i64) -> Option<&WeightPoly> {
        self.levels.get(&level2)
    }

    pub fn levels(&self) -> impl Iterator<Item = (i64, &WeightPoly)> + '_ {
        self.levels.iter().map(|(&l, p)| (l, p))
    }

    pub fn num_terms(&self) -> usize {
        self.levels.values().map(WeightPoly::num_terms).sum()
    }

    /// self * (1 - q^{level2/2} e^{coords2/2}), truncated at order2.
    pub fn mul_one_minus(&self, level2: i64, coords2: &[i64]) -> BivariatePoly {
        assert!(level2 >= 0);
        let mut out = self.clone();
        for (l, poly) in &self.levels {
            let shifted_level = l + level2;
            if shifted_level > self.order2 {
                continue;
            }
            for (mut coords, c) in poly.terms() {
                for (a, b) in coords.iter_mut().zip(coords2) {
                    *a += b;
                }
                out.add_term(shifted_level, &coords, -c);
            }
        }
        out
    }

    /// Difference restricted to levels <= min(order2); None when equal.
    pub fn first_difference(&self, other: &BivariatePoly) -> Option<i64> {
        let cap = self.order2.min(other.order2);
        let mut levels: Vec<i64> = self
            .levels
            .keys()
            .chain(other.levels.keys())
            .copied()
            .filter(|&l| l <= cap)
            .collect();
        levels.sort_unstable();
        levels.dedup();
        let empty = WeightPoly::zero(self.rank);
        for l in levels {
            let a = self.levels.get(&l).unwrap_or(&empty);
            let b = other.levels.get(&l).unwrap_or(&empty);
            if a != b {
                return Some(l);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pack_round_trip() {
        let packer = KeyPacker::new(4);
        let coords = vec![-2048, 2047, 0, 17];
        assert_eq!(packer.unpack(packer.pack(&coords)), coords);
        let mut rng = ChaCha8Rng::seed_from_u64(0x9ACC);
        for _ in 0..500 {
            let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-2048i64..=2047)).collect();
            assert_eq!(packer.unpack(packer.pack(&c)), c);
        }
    }

    #[test]
    #[should_panic(expected = "out of packing range")]
    fn pack_rejects_overflow() {
        KeyPacker::new(2).pack(&[5000, 0]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = WeightPoly::zero(2);
        p.add_term(&[2, 0], 3);
        p.add_term(&[2, 0], -3);
        assert!(p.is_zero());
    }

    #[test]
    fn telescoping_binomials() {
        // (1 - e^{-a})(1 + e^{-a} + e^{-2a}) = 1 - e^{-3a}
        let a2 = [-2i64, 0];
        let mut partial = WeightPoly::zero(2);
        for k in 0..3i64 {
            partial.add_term(&[k * a2[0], 0], 1);
        }
        let product = partial.mul_one_minus(&a2);
        let mut expected = WeightPoly::one(2);
        expected.add_term(&[3 * a2[0], 0], -1);
        assert_eq!(product, expected);
    }

    #[test]
    fn binomial_difference_matches_shift_algebra() {
        // (e^{x/2} - e^{-x/2}) * e^{x/2} = e^{x} - 1
        let p = WeightPoly::one(1).mul_binomial_sub(&[1], &[-1]);
        let q = p.shift(&[1]);
        let mut expected = WeightPoly::monomial(&[2], 1);
        expected.add_term(&[0], -1);
        assert_eq!(q, expected);
    }

    #[test]
    fn ring_laws_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x300);
        for _ in 0..300 {
            let rank = rng.gen_range(1..=3);
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let mut p = WeightPoly::zero(rank);
                for _ in 0..rng.gen_range(0..5) {
                    let coords: Vec<i64> = (0..rank).map(|_| rng.gen_range(-6i64..=6)).collect();
                    p.add_term(&coords, rng.gen_range(-4i64..=4));
                }
                p
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let shift: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4i64..=4)).collect();
            // shift distributes over addition
            let mut sum = a.clone();
            sum.add_assign(&b);
            let mut rhs = a.shift(&shift);
            rhs.add_assign(&b.shift(&shift));
            assert_eq!(sum.shift(&shift), rhs);
            // mul_one_minus factors commute
            let s2: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4i64..=4)).collect();
            assert_eq!(
                a.mul_one_minus(&shift).mul_one_minus(&s2),
                a.mul_one_minus(&s2).mul_one_minus(&shift)
            );
        }
    }

    #[test]
    fn bivariate_truncation() {
        let p = BivariatePoly::one(1, 6);
        // (1 - q e^{a})(1 - q^2) truncated at q^3: cross term q^3 e^{a} kept
        let q1 = p.mul_one_minus(2, &[2]).mul_one_minus(4, &[0]);
        assert_eq!(q1.coeff(0, &[0]), 1);
        assert_eq!(q1.coeff(2, &[2]), -1);
        assert_eq!(q1.coeff(4, &[0]), -1);
        assert_eq!(q1.coeff(6, &[2]), 1);
        // same product at order 2: the q^2 and q^3 terms are dropped
        let low = BivariatePoly::one(1, 3).mul_one_minus(2, &[2]).mul_one_minus(4, &[0]);
        assert_eq!(low.coeff(2, &[2]), -1);
        assert_eq!(low.coeff(4, &[0]), 0);
        assert_eq!(low.num_terms(), 2);
    }

    #[test]
    fn first_difference_reports_lowest_level() {
        let mut a = BivariatePoly::one(1, 10);
        let mut b = BivariatePoly::one(1, 10);
        a.add_term(4, &[2], 1);
        b.add_term(4, &[2], 1);
        a.add_term(6, &[0], 5);
        b.add_term(6, &[0], 4);
        a.add_term(8, &[2], 9);
        assert_eq!(a.first_difference(&b), Some(6));
        b.add_term(6, &[0], 1);
        a.add_term(8, &[2], -9);
        assert_eq!(a.first_difference(&b), None);
        // differences beyond the shared order are invisible
        let mut c = BivariatePoly::one(1, 4);
        c.add_term(8, &[0], 3);
        assert_eq!(BivariatePoly::one(1, 4).first_difference(&c), None);
    }
}
