//! Finite root systems A–G and the non-reduced BC family, built from Cartan
//! data by reflection closure and re-expressed in the simple-root basis, so
//! every root has integer coordinates and the root lattice is Z^l on the nose.

use crate::error::{CoreError, Result};
use crate::linalg::{rat, ratio, GramForm, Mat, Rat};
use num::{One, Signed, Zero};
use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub fn letter(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteType {
    pub family: Family,
    pub rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
            Family::BC => rank >= 1,
        };
        if ok {
            Ok(FiniteType { family, rank })
        } else {
            Err(CoreError::InvalidRank { family: family.letter().to_string(), rank })
        }
    }

    /// Rank-validity relaxed to what the Cartan data tables support
    /// (C_1, B_1, D_3); used for working subsystems and folding images.
    pub(crate) fn new_internal(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::B | Family::C => rank >= 1,
            Family::D => rank >= 3,
            _ => return FiniteType::new(family, rank),
        };
        if ok {
            Ok(FiniteType { family, rank })
        } else {
            Err(CoreError::InvalidRank { family: family.letter().to_string(), rank })
        }
    }

    /// Parses labels like "A3", "BC2", "E8".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| CoreError::BadLabel(s.to_string()))?;
        let (letters, digits) = s.split_at(split);
        let rank: usize = digits.parse().map_err(|_| CoreError::BadLabel(s.to_string()))?;
        let family = match letters {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(CoreError::BadLabel(s.to_string())),
        };
        FiniteType::new(family, rank)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Cartan matrix (rows indexed by coroots: C[i][j] = I(alpha_i^vee, alpha_j))
/// and squared simple-root norms at the default normalization (long roots have
/// norm 2; for BC the unit vectors have norm 1, so strata norms are 1, 2, 4).
fn cartan_data(typ: FiniteType) -> (Vec<Vec<i64>>, Vec<Rat>) {
    let l = typ.rank;
    let mut c = vec![vec![0i64; l]; l];
    for i in 0..l {
        c[i][i] = 2;
    }
    let link = |i: usize, j: usize, cij: i64, cji: i64, c: &mut Vec<Vec<i64>>| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    let path = |c: &mut Vec<Vec<i64>>| {
        for i in 0..l.saturating_sub(1) {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    let norms: Vec<Rat> = match typ.family {
        Family::A => {
            path(&mut c);
            vec![rat(2); l]
        }
        Family::B | Family::BC => {
            path(&mut c);
            if l >= 2 {
                c[l - 1][l - 2] = -2;
            }
            let short = if typ.family == Family::BC { rat(1) } else { rat(1) };
            let long = &short * rat(2);
            let mut n = vec![long; l];
            n[l - 1] = short;
            n
        }
        Family::C => {
            path(&mut c);
            if l >= 2 {
                c[l - 2][l - 1] = -2;
            }
            let mut n = vec![rat(1); l];
            n[l - 1] = rat(2);
            n
        }
        Family::D => {
            for i in 0..l - 2 {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
            c[l - 2][l - 1] = 0;
            c[l - 1][l - 2] = 0;
            link(l - 3, l - 1, -1, -1, &mut c);
            vec![rat(2); l]
        }
        Family::E => {
            // Bourbaki: chain 0-2-3-4-...-(l-1), with node 1 attached to node 3.
            link(0, 2, -1, -1, &mut c);
            for i in 2..l - 1 {
                link(i, i + 1, -1, -1, &mut c);
            }
            link(1, 3, -1, -1, &mut c);
            vec![rat(2); l]
        }
        Family::F => {
            path(&mut c);
            c[2][1] = -2;
            vec![rat(2), rat(2), rat(1), rat(1)]
        }
        Family::G => {
            c[0][1] = -3;
            c[1][0] = -1;
            vec![ratio(2, 3), rat(2)]
        }
    };
    (c, norms)
}

pub(crate) fn expected_root_count(typ: FiniteType) -> usize {
    let l = typ.rank;
    match typ.family {
        Family::A => l * (l + 1),
        Family::B | Family::C => 2 * l * l,
        Family::D => 2 * l * (l - 1),
        Family::E => match l {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        Family::F => 48,
        Family::G => 12,
        Family::BC => 2 * l * (l + 1),
    }
}

fn expected_weyl_order(typ: FiniteType) -> u128 {
    let l = typ.rank as u128;
    let fact = |n: u128| (1..=n).product::<u128>();
    match typ.family {
        Family::A => fact(l + 1),
        Family::B | Family::C | Family::BC => (1u128 << l) * fact(l),
        Family::D => (1u128 << (l - 1)) * fact(l),
        Family::E => match typ.rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1_152,
        Family::G => 12,
    }
}

/// One stratum of roots sharing a squared norm.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub norm: Rat,
    pub roots: Vec<Vec<i64>>,
}

/// Statistics of one orbit of a Coxeter element acting on the roots.
#[derive(Clone, Debug)]
pub struct OrbitInfo {
    pub size: usize,
    pub norm: Rat,
    /// Positive roots alpha in the orbit with c(alpha) negative.
    pub sign_drops: usize,
    pub representative: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub coxeter_order: usize,
    pub orbits: Vec<OrbitInfo>,
    /// beta_j = s_{i_1}...s_{i_{j-1}}(alpha_{i_j}) for the given word; these
    /// are exactly the positive roots sent negative by the Coxeter element.
    pub inversion_roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct FiniteRootSystem {
    pub typ: FiniteType,
    pub scale: Rat,
    /// C[i][j] = I(alpha_i^vee, alpha_j); scale-independent.
    pub cartan: Vec<Vec<i64>>,
    /// Squared norms of the simple roots.
    pub norms: Vec<Rat>,
    /// Gram matrix of the simple roots: G[i][j] = I(alpha_i, alpha_j).
    pub gram: GramForm,
    /// All roots, in simple-root coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Roots of positive height, sorted by (height, coords).
    pub positive_roots: Vec<Vec<i64>>,
    pub theta: Vec<i64>,
    pub theta_short: Vec<i64>,
    /// Half-sum of positive roots.
    pub rho: Vec<Rat>,
    /// Height of the highest root plus one; the Coxeter number for reduced
    /// types (and the label sum of the associated affine diagram for BC).
    pub h: usize,
    root_set: HashSet<Vec<i64>>,
}

impl FiniteRootSystem {
    pub fn standard(typ: FiniteType) -> Result<Self> {
        Self::with_scale(typ, Rat::one())
    }

    /// Builds the system with the Gram form multiplied by `scale` > 0.
    /// Root coordinates do not depend on the scale.
    pub fn with_scale(typ: FiniteType, scale: Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(CoreError::BadScale(scale.to_string()));
        }
        let (cartan, base_norms) = cartan_data(typ);
        let norms: Vec<Rat> = base_norms.iter().map(|n| n * &scale).collect();
        let l = typ.rank;

        let mut gram = Mat::zero(l, l);
        for i in 0..l {
            for j in 0..l {
                *gram.at_mut(i, j) = &norms[i] / rat(2) * rat(cartan[i][j]);
            }
        }
        for i in 0..l {
            for j in 0..i {
                if gram.at(i, j) != gram.at(j, i) {
                    return Err(CoreError::BadLabel(format!(
                        "Cartan/norm data for {} is not symmetrizable",
                        typ.label()
                    )));
                }
            }
        }
        let gram = GramForm::new(gram);

        // Reflection closure from the simple roots (plus the doubled short
        // simple root for BC, whose Weyl orbit supplies the long stratum).
        let mut seeds: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut v = vec![0i64; l];
                v[i] = 1;
                v
            })
            .collect();
        if typ.family == Family::BC {
            let mut v = vec![0i64; l];
            v[l - 1] = 2;
            seeds.push(v);
        }
        let mut root_set: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for s in seeds {
            for sgn in [1i64, -1] {
                let v: Vec<i64> = s.iter().map(|x| x * sgn).collect();
                if root_set.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for i in 0..l {
                let mut y = x.clone();
                let pairing: i64 = (0..l).map(|j| cartan[i][j] * x[j]).sum();
                y[i] -= pairing;
                if root_set.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let expected = expected_root_count(typ);
        if root_set.len() != expected {
            return Err(CoreError::BadLabel(format!(
                "{}: closure produced {} roots, expected {}",
                typ.label(),
                root_set.len(),
                expected
            )));
        }

        let mut roots: Vec<Vec<i64>> = root_set.iter().cloned().collect();
        roots.sort();
        let mut positive_roots: Vec<Vec<i64>> = Vec::new();
        for r in &roots {
            let pos = r.iter().all(|&x| x >= 0);
            let neg = r.iter().all(|&x| x <= 0);
            assert!(pos || neg, "root neither positive nor negative: {r:?}");
            if pos {
                positive_roots.push(r.clone());
            }
        }
        assert_eq!(positive_roots.len() * 2, roots.len());
        positive_roots.sort_by_key(|r| (height(r), r.clone()));

        let theta = unique_height_max(&positive_roots)?.clone();
        let h = height(&theta) as usize + 1;
        let mut rho = vec![Rat::zero(); l];
        for r in &positive_roots {
            for (acc, x) in rho.iter_mut().zip(r) {
                *acc += ratio(*x, 2);
            }
        }

        let mut sys = FiniteRootSystem {
            typ,
            scale,
            cartan,
            norms,
            gram,
            roots,
            positive_roots,
            theta: theta.clone(),
            theta_short: theta,
            rho,
            h,
            root_set,
        };
        let shortest = sys
            .strata()
            .first()
            .map(|s| s.norm.clone())
            .expect("nonempty root system");
        let short_positives: Vec<Vec<i64>> = sys
            .positive_roots
            .iter()
            .filter(|r| sys.norm_of(r) == shortest)
            .cloned()
            .collect();
        sys.theta_short = unique_height_max(&short_positives)?.clone();
        sys.check_axioms()?;
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.typ.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.typ.family != Family::BC
    }

    /// dim of the associated simple Lie algebra (reduced types).
    pub fn lie_dim(&self) -> usize {
        self.roots.len() + self.rank()
    }

    pub fn weyl_order(&self) -> u128 {
        expected_weyl_order(self.typ)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.root_set.contains(v)
    }

    pub fn bilinear_int(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                if b[j] == 0 {
                    continue;
                }
                acc += rat(a[i] * b[j]) * self.gram.mat.at(i, j);
            }
        }
        acc
    }

    pub fn norm_of(&self, r: &[i64]) -> Rat {
        self.bilinear_int(r, r)
    }

    /// 2 alpha / I(alpha, alpha), in simple-root coordinates.
    pub fn coroot(&self, alpha: &[i64]) -> Result<Vec<Rat>> {
        if !self.is_root(alpha) {
            return Err(CoreError::NotARoot(format!("{alpha:?}")));
        }
        let n = self.norm_of(alpha);
        Ok(alpha.iter().map(|&x| rat(2 * x) / &n).collect())
    }

    /// I(lambda, alpha^vee) for rational lambda in simple-root coordinates.
    pub fn pair_with_coroot(&self, lambda: &[Rat], alpha: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank() {
            if lambda[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if alpha[j] == 0 {
                    continue;
                }
                acc += &lambda[i] * self.gram.mat.at(i, j) * rat(alpha[j]);
            }
        }
        acc * rat(2) / self.norm_of(alpha)
    }

    /// s_alpha(lambda) = lambda - I(lambda, alpha^vee) alpha.
    pub fn reflect(&self, alpha: &[i64], lambda: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_root(alpha) {
            return Err(CoreError::NotARoot(format!("{alpha:?}")));
        }
        let p = self.pair_with_coroot(lambda, alpha);
        Ok(lambda
            .iter()
            .zip(alpha)
            .map(|(x, &a)| x - &p * rat(a))
            .collect())
    }

    /// Simple reflection s_i on integer coordinate vectors.
    pub fn simple_reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let mut y = x.to_vec();
        let pairing: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * x[j]).sum();
        y[i] -= pairing;
        y
    }

    /// s_i as an integer matrix acting on simple-root coordinates.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let l = self.rank();
        let mut m = vec![vec![0i64; l]; l];
        for k in 0..l {
            m[k][k] = 1;
        }
        for j in 0..l {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    /// Roots grouped by squared norm, ascending.
    pub fn strata(&self) -> Vec<Stratum> {
        let mut by_norm: Vec<(Rat, Vec<Vec<i64>>)> = Vec::new();
        for r in &self.roots {
            let n = self.norm_of(r);
            match by_norm.iter_mut().find(|(m, _)| *m == n) {
                Some((_, v)) => v.push(r.clone()),
                None => by_norm.push((n, vec![r.clone()])),
            }
        }
        by_norm.sort_by(|a, b| a.0.cmp(&b.0));
        by_norm
            .into_iter()
            .map(|(norm, roots)| Stratum { norm, roots })
            .collect()
    }

    /// Indices of simple roots lying in the shortest stratum.
    pub fn simple_short_indices(&self) -> Vec<usize> {
        let strata = self.strata();
        let shortest = &strata[0].norm;
        (0..self.rank())
            .filter(|&i| &self.norms[i] == shortest)
            .collect()
    }

    /// Indices of simple roots lying in the longest stratum.
    pub fn simple_long_indices(&self) -> Vec<usize> {
        let strata = self.strata();
        let longest = &strata[strata.len() - 1].norm;
        (0..self.rank())
            .filter(|&i| &self.norms[i] == longest)
            .collect()
    }

    /// Fundamental weights omega_i (I(omega_i, alpha_j^vee) = delta_ij),
    /// i.e. the columns of the inverse Cartan matrix.
    pub fn fundamental_weights(&self) -> Vec<Vec<Rat>> {
        let c = Mat::from_int_rows(&self.cartan);
        let inv = c.inverse().expect("Cartan matrix of a finite type is invertible");
        (0..self.rank()).map(|i| inv.col(i)).collect()
    }

    /// Simple coroots alpha_i^vee as a basis of the coroot lattice.
    pub fn coroot_lattice_basis(&self) -> Vec<Vec<Rat>> {
        (0..self.rank())
            .map(|i| {
                let mut v = vec![Rat::zero(); self.rank()];
                v[i] = rat(2) / &self.norms[i];
                v
            })
            .collect()
    }

    /// Membership in the weight lattice P = { lambda : I(lambda, alpha_i^vee) in Z }.
    pub fn in_weight_lattice(&self, lambda: &[Rat]) -> bool {
        (0..self.rank()).all(|j| {
            let mut acc = Rat::zero();
            for (k, x) in lambda.iter().enumerate() {
                acc += x * rat(self.cartan[j][k]);
            }
            acc.is_integer()
        })
    }

    /// Full axiom suite: pairwise Cartan integrality, closure under every
    /// reflection, positive-definiteness, connectivity, and for reduced types
    /// the absence of doubled roots plus I(rho, alpha_i^vee) = 1.
    ///
    /// Runs in integer arithmetic on an integer multiple of the Gram form, so
    /// it stays cheap even for E8 (240 roots, ~58k root pairs).
    pub fn check_axioms(&self) -> Result<()> {
        let l = self.rank();
        let denom: num::BigInt = self
            .gram
            .mat
            .data
            .iter()
            .fold(num::BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
        let gint: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let scaled = self.gram.mat.at(i, j) * Rat::from(denom.clone());
                        i64::try_from(scaled.to_integer()).expect("gram entries fit i64")
                    })
                    .collect()
            })
            .collect();
        let pair_int = |a: &[i64], b: &[i64]| -> i64 {
            let mut acc = 0i64;
            for i in 0..l {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..l {
                    acc += a[i] * gint[i][j] * b[j];
                }
            }
            acc
        };
        let norms_int: Vec<i64> = self.roots.iter().map(|r| pair_int(r, r)).collect();
        if norms_int.iter().any(|&n| n <= 0) {
            return Err(CoreError::BadLabel(format!("{}: root of nonpositive norm", self.typ.label())));
        }
        if !matches!(self.gram.definiteness(), crate::linalg::Definiteness::PositiveDefinite) {
            return Err(CoreError::BadLabel(format!("{}: Gram form is not positive definite", self.typ.label())));
        }
        // Cartan integrality and reflection closure, all pairs.
        for (ai, alpha) in self.roots.iter().enumerate() {
            for beta in &self.roots {
                let twice = 2 * pair_int(beta, alpha);
                if twice % norms_int[ai] != 0 {
                    return Err(CoreError::BadLabel(format!(
                        "{}: I(beta, alpha^vee) not an integer for alpha={alpha:?}, beta={beta:?}",
                        self.typ.label()
                    )));
                }
                let p = twice / norms_int[ai];
                let image: Vec<i64> = beta.iter().zip(alpha).map(|(&b, &a)| b - p * a).collect();
                if !self.root_set.contains(&image) {
                    return Err(CoreError::BadLabel(format!(
                        "{}: s_alpha(beta) escapes the root set for alpha={alpha:?}, beta={beta:?}",
                        self.typ.label()
                    )));
                }
            }
        }
        // Irreducibility: the non-orthogonality graph on roots is connected.
        let n = self.roots.len();
        let mut component = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0usize]);
        component[0] = 0;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if component[j] == usize::MAX && pair_int(&self.roots[i], &self.roots[j]) != 0 {
                    component[j] = 0;
                    queue.push_back(j);
                }
            }
        }
        if component.iter().any(|&c| c == usize::MAX) {
            return Err(CoreError::BadLabel(format!(
                "{}: root set decomposes orthogonally",
                self.typ.label()
            )));
        }
        if self.is_reduced() {
            for r in &self.roots {
                let double: Vec<i64> = r.iter().map(|&x| 2 * x).collect();
                if self.is_root(&double) {
                    return Err(CoreError::BadLabel(format!(
                        "{}: reduced type contains a doubled root",
                        self.typ.label()
                    )));
                }
            }
            for i in 0..self.rank() {
                let mut alpha = vec![0i64; self.rank()];
                alpha[i] = 1;
                if self.pair_with_coroot(&self.rho, &alpha) != Rat::one() {
                    return Err(CoreError::BadLabel(format!(
                        "{}: I(rho, alpha_{}^vee) != 1",
                        self.typ.label(),
                        i
                    )));
                }
            }
        }
        Ok(())
    }

    /// Orbits of the Coxeter element c = s_{i_l} ... s_{i_1} (the first word
    /// entry acts first) on the roots. For reduced types every orbit has h
    /// elements and contains exactly one positive root sent negative, namely
    /// one of the inversion roots beta_j.
    pub fn coxeter_orbit_census(&self, word: &[usize]) -> Result<OrbitCensus> {
        let l = self.rank();
        let mut seen = vec![false; l];
        if word.len() != l || word.iter().any(|&i| i >= l || std::mem::replace(&mut seen[i], true)) {
            return Err(CoreError::BadLabel(format!(
                "Coxeter word {word:?} is not a permutation of 0..{l}"
            )));
        }
        let apply_c = |x: &[i64]| -> Vec<i64> {
            let mut y = x.to_vec();
            for &i in word {
                y = self.simple_reflect(i, &y);
            }
            y
        };
        let mut inversion_roots = Vec::with_capacity(l);
        for j in 0..l {
            let mut beta = vec![0i64; l];
            beta[word[j]] = 1;
            for &i in word[..j].iter().rev() {
                beta = self.simple_reflect(i, &beta);
            }
            inversion_roots.push(beta);
        }

        let mut remaining: HashSet<Vec<i64>> = self.root_set.clone();
        let mut orbits = Vec::new();
        let mut coxeter_order = 1usize;
        while let Some(start) = remaining.iter().min().cloned() {
            let mut orbit = vec![start.clone()];
            let mut x = apply_c(&start);
            while x != start {
                orbit.push(x.clone());
                x = apply_c(&x);
            }
            for r in &orbit {
                remaining.remove(r);
            }
            let sign_drops = orbit
                .iter()
                .filter(|r| {
                    r.iter().all(|&v| v >= 0) && apply_c(r).iter().all(|&v| v <= 0)
                })
                .count();
            coxeter_order = lcm(coxeter_order, orbit.len());
            orbits.push(OrbitInfo {
                size: orbit.len(),
                norm: self.norm_of(&start),
                sign_drops,
                representative: start,
            });
        }

        if self.is_reduced() {
            for o in &orbits {
                assert_eq!(o.size, self.h, "{}: orbit of size {} != h", self.typ.label(), o.size);
                assert_eq!(o.sign_drops, 1, "{}: orbit without unique sign drop", self.typ.label());
            }
            assert_eq!(orbits.len(), l);
            // The inversion roots are exactly the per-orbit sign-dropped positives.
            for beta in &inversion_roots {
                assert!(beta.iter().all(|&v| v >= 0), "inversion root not positive");
                assert!(apply_c(beta).iter().all(|&v| v <= 0));
            }
            let distinct: HashSet<&Vec<i64>> = inversion_roots.iter().collect();
            assert_eq!(distinct.len(), l);
        }
        Ok(OrbitCensus { coxeter_order, orbits, inversion_roots })
    }
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

fn unique_height_max(list: &[Vec<i64>]) -> Result<&Vec<i64>> {
    let max_h = list.iter().map(|r| height(r)).max().ok_or(CoreError::Singular)?;
    let mut at_max = list.iter().filter(|r| height(r) == max_h);
    let first = at_max.next().ok_or(CoreError::Singular)?;
    if at_max.next().is_some() {
        return Err(CoreError::BadLabel("highest root is not unique".to_string()));
    }
    Ok(first)
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = |mut x: usize, mut y: usize| {
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / gcd(a, b) * b
}
