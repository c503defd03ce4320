//! Affine root systems built over a finite quotient in an (l+2)-dimensional
//! frame F-hat with coordinates [x_1..x_l | d | m]: x = finite simple-root
//! coordinates, d = coefficient of the null root delta, m = coefficient of the
//! dual direction Lambda with I(delta, Lambda) = 1.
//!
//! Three tiers:
//!   tier 1 (untwisted)      R_f + Z delta, alpha_0 = delta - theta
//!   tier 2/3 (twisted)      short + Z delta, long + tZ delta, alpha_0 = delta - theta_s
//!   tier 2 over BC          short/middle + Z delta, long + (2Z+1) delta,
//!                           alpha_0 = delta - 2 theta_s
//!
//! For BC the frame also carries an adapted subsystem R_f' of type C_l spanned
//! by the first l affine nodes; identity work runs over that subsystem.

use crate::error::{CoreError, Result};
use crate::finite::{Family, FiniteRootSystem, FiniteType};
use crate::linalg::{rat, ratio, GramForm, Mat, Rat};
use num::{BigInt, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineType {
    pub base: FiniteType,
    pub tier: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineCase {
    Untwisted,
    Twisted,
    BC,
}

impl AffineType {
    pub fn new(base: FiniteType, tier: usize) -> Result<Self> {
        let ok = match tier {
            1 => base.family != Family::BC,
            2 => matches!(base.family, Family::B | Family::C | Family::F | Family::BC),
            3 => base.family == Family::G,
            _ => false,
        };
        if ok {
            Ok(AffineType { base, tier })
        } else {
            Err(CoreError::BadLabel(format!("{}({})", base.label(), tier)))
        }
    }

    /// Parses labels like "A3(1)", "BC2(2)", "G2(3)".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| CoreError::BadLabel(s.to_string()))?;
        if !s.ends_with(')') {
            return Err(CoreError::BadLabel(s.to_string()));
        }
        let base = FiniteType::parse(&s[..open])?;
        let tier: usize = s[open + 1..s.len() - 1]
            .parse()
            .map_err(|_| CoreError::BadLabel(s.to_string()))?;
        AffineType::new(base, tier)
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.base.label(), self.tier)
    }

    pub fn case(&self) -> AffineCase {
        if self.base.family == Family::BC {
            AffineCase::BC
        } else if self.tier == 1 {
            AffineCase::Untwisted
        } else {
            AffineCase::Twisted
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// One real affine root, as a finite part plus a delta level. The coordinate
/// frame of the finite part depends on the accessor that produced it
/// (quotient simple-root coordinates, or adapted C_l coordinates for BC).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRoot {
    pub finite_part: Vec<Rat>,
    pub level: Rat,
    pub norm: Rat,
}

/// Names of the same system in the five nomenclatures of the literature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nomenclature {
    pub saito: String,
    pub kac: String,
    pub moody: String,
    pub macdonald: String,
    pub carter: String,
}

#[derive(Clone, Debug)]
pub struct AffineSystem {
    pub typ: AffineType,
    /// R_f, the finite quotient modulo delta.
    pub quotient: FiniteRootSystem,
    /// BC only: the subsystem R_f' of type C_l spanned by affine nodes
    /// 0..l-1, as an abstract model (standard C_l orientation, doubled norm).
    pub adapted: Option<FiniteRootSystem>,
    pub gram_hat: GramForm,
    /// alpha_0..alpha_l in F-hat coordinates.
    pub simple_roots: Vec<Vec<Rat>>,
    /// A_ij = I(alpha_i^vee, alpha_j).
    pub gcm: Vec<Vec<i64>>,
    pub labels: Vec<i64>,
    pub colabels: Vec<i64>,
    /// Sum of labels.
    pub h: i64,
    /// Sum of colabels.
    pub h_dual: i64,
    /// Lambda_0..Lambda_l with I(Lambda_i, alpha_j^vee) = delta_ij, each with
    /// zero delta-component in the splitting used (plain for non-BC, adapted
    /// for BC).
    pub fundamental_weights: Vec<Vec<Rat>>,
    /// rho = sum of the fundamental weights.
    pub rho: Vec<Rat>,
    /// rho' = rho - (I(rho,rho)/2c) delta; isotropic.
    pub rho_prime: Vec<Rat>,
    /// c = I(rho, delta).
    pub c: Rat,
}

/// Reduces a rational kernel vector to the primitive integer vector with all
/// entries positive.
fn primitive_positive(v: &[Rat]) -> Result<Vec<i64>> {
    let mut denom = BigInt::one();
    for x in v {
        denom = num::integer::lcm(denom, x.denom().clone());
    }
    let scale = Rat::from(denom);
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &scale).to_integer()).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = num::integer::gcd(g, i.clone());
    }
    if g.is_zero() {
        return Err(CoreError::Singular);
    }
    if ints.iter().any(|i| i.is_negative()) {
        for i in ints.iter_mut() {
            *i = -i.clone();
        }
    }
    let mut out = Vec::with_capacity(v.len());
    for i in &ints {
        let q = i / &g;
        if !q.is_positive() {
            return Err(CoreError::BadLabel("kernel vector is not sign-definite".into()));
        }
        out.push(i64::try_from(q).expect("label fits i64"));
    }
    Ok(out)
}

impl AffineSystem {
    pub fn standard(typ: AffineType) -> Result<Self> {
        Self::build(typ, Rat::one())
    }

    pub fn build(typ: AffineType, scale: Rat) -> Result<Self> {
        let quotient = FiniteRootSystem::with_scale(typ.base, scale.clone())?;
        let l = quotient.rank();
        let dim = l + 2;

        let mut gh = Mat::zero(dim, dim);
        for i in 0..l {
            for j in 0..l {
                *gh.at_mut(i, j) = quotient.gram.mat.at(i, j).clone();
            }
        }
        *gh.at_mut(l, l + 1) = Rat::one();
        *gh.at_mut(l + 1, l) = Rat::one();
        let gram_hat = GramForm::new(gh);

        let embed = |v: &[i64]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); dim];
            for (i, &x) in v.iter().enumerate() {
                out[i] = rat(x);
            }
            out
        };
        let mut delta = vec![Rat::zero(); dim];
        delta[l] = Rat::one();

        // alpha_0 = delta - theta (tier 1), delta - theta_s (twisted),
        // delta - 2 theta_s (BC).
        let alpha0_core: Vec<i64> = match typ.case() {
            AffineCase::Untwisted => quotient.theta.clone(),
            AffineCase::Twisted => quotient.theta_short.clone(),
            AffineCase::BC => quotient.theta_short.iter().map(|&x| 2 * x).collect(),
        };
        let mut alpha0 = embed(&alpha0_core.iter().map(|&x| -x).collect::<Vec<i64>>());
        alpha0[l] = Rat::one();
        let mut simple_roots = vec![alpha0];
        for i in 0..l {
            let mut v = vec![0i64; l];
            v[i] = 1;
            simple_roots.push(embed(&v));
        }

        let pair = |a: &[Rat], b: &[Rat]| -> Rat {
            let mut acc = Rat::zero();
            for i in 0..dim {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if !b[j].is_zero() {
                        acc += &a[i] * gram_hat.mat.at(i, j) * &b[j];
                    }
                }
            }
            acc
        };

        let norms_hat: Vec<Rat> = simple_roots.iter().map(|a| pair(a, a)).collect();
        let mut gcm = vec![vec![0i64; l + 1]; l + 1];
        for i in 0..=l {
            for j in 0..=l {
                let entry = rat(2) * pair(&simple_roots[i], &simple_roots[j]) / &norms_hat[i];
                assert!(entry.is_integer(), "{}: GCM entry ({i},{j}) not an integer", typ.label());
                gcm[i][j] = i64::try_from(entry.to_integer()).expect("GCM entry fits i64");
            }
        }

        let gcm_mat = Mat::from_int_rows(&gcm);
        let right_kernel = gcm_mat.kernel_basis();
        let left_kernel = gcm_mat.transpose().kernel_basis();
        assert_eq!(right_kernel.len(), 1, "{}: GCM corank != 1", typ.label());
        assert_eq!(left_kernel.len(), 1, "{}: GCM corank != 1", typ.label());
        let labels = primitive_positive(&right_kernel[0])?;
        let colabels = primitive_positive(&left_kernel[0])?;

        // delta = sum a_i alpha_i.
        let mut delta_check = vec![Rat::zero(); dim];
        for (a, alpha) in labels.iter().zip(&simple_roots) {
            for (acc, x) in delta_check.iter_mut().zip(alpha) {
                *acc += rat(*a) * x;
            }
        }
        assert_eq!(delta_check, delta, "{}: labels do not reconstruct delta", typ.label());

        match typ.case() {
            AffineCase::Untwisted | AffineCase::Twisted => {
                assert_eq!(labels[0], 1, "{}: a_0 != 1", typ.label());
                assert_eq!(colabels[0], 1, "{}: a_0^vee != 1", typ.label());
                if typ.case() == AffineCase::Twisted {
                    // colabel pattern: a_i^vee = a_i (short simple), t a_i (long).
                    let longest = quotient.strata().last().unwrap().norm.clone();
                    for i in 1..=l {
                        let expected = if quotient.norms[i - 1] == longest {
                            typ.tier as i64 * labels[i]
                        } else {
                            labels[i]
                        };
                        assert_eq!(colabels[i], expected, "{}: colabel pattern at node {i}", typ.label());
                    }
                }
            }
            AffineCase::BC => {
                assert_eq!((labels[0], labels[l]), (1, 2), "{}: BC label ends", typ.label());
                assert_eq!((colabels[0], colabels[l]), (2, 1), "{}: BC colabel ends", typ.label());
            }
        }

        // Adapted C_l model for BC: affine nodes 0..l-1 span a C_l system with
        // the long node first; the abstract model uses the standard
        // orientation (long node last), so compare under index reversal.
        let adapted = if typ.case() == AffineCase::BC {
            let c_type = FiniteType::new_internal(Family::C, l)?;
            let model = FiniteRootSystem::with_scale(c_type, rat(2) * &scale)?;
            for i in 0..l {
                for j in 0..l {
                    let entry = rat(2) * pair(&simple_roots[i], &simple_roots[j]) / &norms_hat[i];
                    assert_eq!(
                        entry,
                        rat(model.cartan[l - 1 - i][l - 1 - j]),
                        "{}: adapted subsystem is not C_{l}",
                        typ.label()
                    );
                }
                assert_eq!(norms_hat[i], model.norms[l - 1 - i]);
            }
            Some(model)
        } else {
            None
        };

        // Fundamental weights: solve I(Lambda_i, alpha_j^vee) = delta_ij over
        // a basis of a subspace transverse to delta — the finite simples plus
        // the dual direction Lambda (non-BC), or the adapted nodes plus the
        // adapted dual direction Lambda'' (BC).
        let mut lambda_dir = vec![Rat::zero(); dim];
        lambda_dir[l + 1] = Rat::one();
        let basis: Vec<Vec<Rat>> = match typ.case() {
            AffineCase::Untwisted | AffineCase::Twisted => {
                let mut b: Vec<Vec<Rat>> = simple_roots[1..].to_vec();
                b.push(lambda_dir.clone());
                b
            }
            AffineCase::BC => {
                // Lambda'' = [w, d, 1] with I(Lambda'', alpha_j) = 0 for the
                // adapted nodes j = 0..l-1 and I(Lambda'', Lambda'') = 0.
                let mut m = Mat::zero(l, l);
                let mut rhs = vec![Rat::zero(); l];
                for jj in 0..l {
                    let aj = &simple_roots[jj];
                    for k in 0..l {
                        let mut unit = vec![Rat::zero(); dim];
                        unit[k] = Rat::one();
                        *m.at_mut(jj, k) = pair(&unit, aj);
                    }
                    // the d-coordinate of Lambda'' is still unknown, but it
                    // only pairs with the m-part of alpha_j, which is zero;
                    // the m-coordinate (=1) pairs with alpha_j's d-part.
                    rhs[jj] = -&aj[l];
                }
                let w = m.solve(&rhs)?;
                let mut lpp = vec![Rat::zero(); dim];
                lpp[..l].clone_from_slice(&w);
                lpp[l + 1] = Rat::one();
                let wnorm = pair(&lpp, &lpp); // = |w|^2 + 2d with d=0 so far
                lpp[l] = -wnorm / rat(2);
                assert!(pair(&lpp, &lpp).is_zero());
                let mut b: Vec<Vec<Rat>> = simple_roots[..l].to_vec();
                b.push(lpp);
                b
            }
        };
        let mut solve_mat = Mat::zero(l + 1, l + 1);
        for j in 0..=l {
            for (k, bk) in basis.iter().enumerate() {
                *solve_mat.at_mut(j, k) =
                    rat(2) * pair(bk, &simple_roots[j]) / &norms_hat[j];
            }
        }
        let inv = solve_mat.inverse()?;
        let mut fundamental_weights = Vec::with_capacity(l + 1);
        for i in 0..=l {
            let coeffs = inv.col(i);
            let mut lam = vec![Rat::zero(); dim];
            for (ck, bk) in coeffs.iter().zip(&basis) {
                for (acc, x) in lam.iter_mut().zip(bk) {
                    *acc += ck * x;
                }
            }
            fundamental_weights.push(lam);
        }

        let mut rho = vec![Rat::zero(); dim];
        for lam in &fundamental_weights {
            for (acc, x) in rho.iter_mut().zip(lam) {
                *acc += x;
            }
        }
        for j in 0..=l {
            let p = rat(2) * pair(&rho, &simple_roots[j]) / &norms_hat[j];
            assert!(p.is_one(), "{}: I(rho, alpha_{j}^vee) != 1", typ.label());
        }
        let c = pair(&rho, &delta);
        let mut c_from_labels = Rat::zero();
        for (a, n) in labels.iter().zip(&norms_hat) {
            c_from_labels += rat(*a) * n / rat(2);
        }
        assert_eq!(c, c_from_labels, "{}: I(rho,delta) != sum a_i |alpha_i|^2 / 2", typ.label());

        let h: i64 = labels.iter().sum();
        let h_dual: i64 = colabels.iter().sum();

        match typ.case() {
            AffineCase::Untwisted | AffineCase::Twisted => {
                // c = (|theta*|^2 / 2) h^vee, and the finite part of rho is rho_f.
                let theta_norm = &norms_hat[0];
                assert_eq!(c, theta_norm / rat(2) * rat(h_dual));
                assert_eq!(&rho[..l], &quotient.rho[..], "{}: rho - rho_f not in rad(I)^*", typ.label());
            }
            AffineCase::BC => {
                let model = adapted.as_ref().unwrap();
                let mut rho_s_norm = Rat::zero();
                for i in 0..l {
                    for j in 0..l {
                        rho_s_norm += &model.rho[i] * model.gram.mat.at(i, j) * &model.rho[j];
                    }
                }
                let rho_norm = pair(&rho, &rho);
                assert_eq!(rho_norm, rho_s_norm, "{}: I(rho,rho) != |rho_f'|^2", typ.label());
                assert_eq!(c, rat(2 * l as i64 + 1) * &scale);
            }
        }

        let rho_norm = pair(&rho, &rho);
        let shift = &rho_norm / (rat(2) * &c);
        let mut rho_prime = rho.clone();
        rho_prime[l] -= shift;
        assert!(pair(&rho_prime, &rho_prime).is_zero(), "{}: rho' not isotropic", typ.label());

        Ok(AffineSystem {
            typ,
            quotient,
            adapted,
            gram_hat,
            simple_roots,
            gcm,
            labels,
            colabels,
            h,
            h_dual,
            fundamental_weights,
            rho,
            rho_prime,
            c,
        })
    }

    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    /// Dimension of F-hat (= rank + 2).
    pub fn dim(&self) -> usize {
        self.rank() + 2
    }

    pub fn delta(&self) -> Vec<Rat> {
        let mut d = vec![Rat::zero(); self.dim()];
        d[self.rank()] = Rat::one();
        d
    }

    pub fn lambda_direction(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[self.rank() + 1] = Rat::one();
        v
    }

    pub fn bilinear(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.dim() {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if !b[j].is_zero() {
                    acc += &a[i] * self.gram_hat.mat.at(i, j) * &b[j];
                }
            }
        }
        acc
    }

    pub fn norm(&self, a: &[Rat]) -> Rat {
        self.bilinear(a, a)
    }

    /// s_r(x) = x - (2 I(x,r)/I(r,r)) r for a non-isotropic r in F-hat.
    pub fn reflect_hat(&self, root: &[Rat], x: &[Rat]) -> Vec<Rat> {
        let n = self.norm(root);
        assert!(!n.is_zero(), "reflection through an isotropic vector");
        let p = rat(2) * self.bilinear(x, root) / n;
        x.iter().zip(root).map(|(xi, ri)| xi - &p * ri).collect()
    }

    /// The finite system the identity machinery runs over: the quotient for
    /// non-BC, the adapted C_l model for BC.
    pub fn working_system(&self) -> &FiniteRootSystem {
        self.adapted.as_ref().unwrap_or(&self.quotient)
    }

    /// Which delta levels stratum `norm` occupies (quotient frame).
    pub(crate) fn level_stride_and_parity(&self, norm: &Rat) -> (i64, i64) {
        // returns (stride, residue): legal levels are {stride k + residue}.
        match self.typ.case() {
            AffineCase::Untwisted => (1, 0),
            AffineCase::Twisted => {
                let longest = self.quotient.strata().last().unwrap().norm.clone();
                if *norm == longest {
                    (self.typ.tier as i64, 0)
                } else {
                    (1, 0)
                }
            }
            AffineCase::BC => {
                let longest = self.quotient.strata().last().unwrap().norm.clone();
                if *norm == longest {
                    (2, 1)
                } else {
                    (1, 0)
                }
            }
        }
    }

    /// All real roots with |level| <= n_max, finite parts in quotient
    /// simple-root coordinates.
    pub fn roots_up_to(&self, n_max: i64) -> Result<Vec<AffineRoot>> {
        if n_max < 0 {
            return Err(CoreError::BadLabel(format!("negative level bound {n_max}")));
        }
        let mut out = Vec::new();
        for stratum in self.quotient.strata() {
            let (stride, residue) = self.level_stride_and_parity(&stratum.norm);
            for root in &stratum.roots {
                let fin: Vec<Rat> = root.iter().map(|&x| rat(x)).collect();
                let mut k = residue;
                loop {
                    if k > n_max {
                        break;
                    }
                    for level in if k == 0 { vec![0] } else { vec![k, -k] } {
                        out.push(AffineRoot {
                            finite_part: fin.clone(),
                            level: rat(level),
                            norm: stratum.norm.clone(),
                        });
                    }
                    k += stride;
                }
            }
        }
        Ok(out)
    }

    /// Quotient-frame membership test.
    pub fn is_root(&self, finite_part: &[i64], level: i64) -> bool {
        if !self.quotient.is_root(finite_part) {
            return false;
        }
        let norm = self.quotient.norm_of(finite_part);
        let (stride, residue) = self.level_stride_and_parity(&norm);
        level.rem_euclid(stride) == residue
    }

    /// BC only: the same root set presented over the adapted C_l subsystem
    /// (abstract standard C_l coordinates). The short stratum appears as
    /// half-roots at half-odd levels: (alpha/2, (2n-1)/2) for alpha long.
    pub fn adapted_roots_up_to(&self, n_max: i64) -> Result<Vec<AffineRoot>> {
        let model = self
            .adapted
            .as_ref()
            .ok_or_else(|| CoreError::Unsupported(format!("{} has no adapted subsystem", self.typ.label())))?;
        if n_max < 0 {
            return Err(CoreError::BadLabel(format!("negative level bound {n_max}")));
        }
        let strata = model.strata();
        let long = strata.last().expect("nonempty adapted system");
        let mut out = Vec::new();
        // middle stratum: S_short + Z delta (empty when l = 1)
        for short in &strata[..strata.len() - 1] {
            for root in &short.roots {
                let fin: Vec<Rat> = root.iter().map(|&x| rat(x)).collect();
                for k in -n_max..=n_max {
                    out.push(AffineRoot { finite_part: fin.clone(), level: rat(k), norm: short.norm.clone() });
                }
            }
        }
        for root in &long.roots {
            let fin: Vec<Rat> = root.iter().map(|&x| rat(x)).collect();
            // long stratum: S_long + 2Z delta
            let mut k = 0i64;
            while k <= n_max {
                for level in if k == 0 { vec![0] } else { vec![k, -k] } {
                    out.push(AffineRoot { finite_part: fin.clone(), level: rat(level), norm: long.norm.clone() });
                }
                k += 2;
            }
            // short stratum: (alpha/2) + (half-odd) delta
            let half: Vec<Rat> = fin.iter().map(|x| x / rat(2)).collect();
            let qnorm = &long.norm / rat(4);
            let mut num = 1i64; // level = num/2, num odd
            while ratio(num, 2) <= rat(n_max) {
                for sign in [1i64, -1] {
                    out.push(AffineRoot {
                        finite_part: half.clone(),
                        level: ratio(sign * num, 2),
                        norm: qnorm.clone(),
                    });
                }
                num += 2;
            }
        }
        Ok(out)
    }

    /// Indices i with delta - a_i alpha_i a root.
    pub fn special_indices(&self) -> Vec<usize> {
        let l = self.rank();
        let mut out = Vec::new();
        for (i, alpha) in self.simple_roots.iter().enumerate() {
            let a = self.labels[i];
            let mut v: Vec<Rat> = self.delta();
            for (acc, x) in v.iter_mut().zip(alpha) {
                *acc -= rat(a) * x;
            }
            assert!(v[l + 1].is_zero());
            let finite: Vec<i64> = v[..l]
                .iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i64::try_from(x.to_integer()).expect("coordinate fits i64")
                })
                .collect();
            assert!(v[l].is_integer());
            let level = i64::try_from(v[l].to_integer()).expect("level fits i64");
            if self.is_root(&finite, level) {
                out.push(i);
            }
        }
        out
    }

    pub fn nomenclature(&self) -> Nomenclature {
        let l = self.rank();
        let base = self.typ.base;
        let saito = self.typ.label();
        match self.typ.case() {
            AffineCase::Untwisted => {
                let fl = base.label();
                let macdonald = if matches!(base.family, Family::A | Family::D | Family::E) {
                    format!("{fl} = {fl}^v")
                } else {
                    fl.clone()
                };
                Nomenclature {
                    saito,
                    kac: format!("{fl}(1)"),
                    moody: format!("{},1", fl),
                    macdonald,
                    carter: format!("~{fl}"),
                }
            }
            AffineCase::Twisted => {
                let (kac, macdonald, carter) = match base.family {
                    Family::B => (format!("D{}(2)", l + 1), format!("C{l}^v"), format!("~C{l}^t")),
                    Family::C => (format!("A{}(2)", 2 * l - 1), format!("B{l}^v"), format!("~B{l}^t")),
                    Family::F => ("E6(2)".into(), "F4^v".into(), "~F4^t".into()),
                    Family::G => ("D4(3)".into(), "G2^v".into(), "~G2^t".into()),
                    _ => unreachable!(),
                };
                Nomenclature {
                    saito,
                    kac,
                    moody: format!("{},{}", base.label(), self.typ.tier),
                    macdonald,
                    carter,
                }
            }
            AffineCase::BC => Nomenclature {
                saito,
                kac: format!("A{}(2)", 2 * l),
                moody: if l == 1 { "A1,2".into() } else { format!("BC{l},2") },
                macdonald: format!("BC{l} = BC{l}^v"),
                carter: format!("~C{l}'"),
            },
        }
    }
}

/// The four non-reduced affine families, the affine Lie superalgebras
/// realizing the same root systems, and the reduced type whose eta-identity
/// each shares. Informational only; no construction behind it.
pub const NON_REDUCED_TABLE: [(&str, &str, &str); 4] = [
    ("BCC_l", "B(1)(0,l)", "BC_l(2)"),
    ("C^vBC_l", "A(4)(0,2l)", "B_l(2)"),
    ("BB_l^v", "A(2)(0,2l-1)", "B_l(1)"),
    ("C^vC_l", "C(2)(l+1)", "B_l(2)"),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> AffineSystem {
        AffineSystem::standard(AffineType::parse(label).unwrap()).unwrap()
    }

    #[test]
    fn a1_untwisted() {
        let s = sys("A1(1)");
        assert_eq!(s.gcm, vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(s.labels, vec![1, 1]);
        assert_eq!(s.colabels, vec![1, 1]);
        assert_eq!((s.h, s.h_dual), (2, 2));
        assert_eq!(s.c, rat(2));
        // Lambda_0 = (|theta|^2/2) Lambda, Lambda_1 = omega_1 + I(omega_1, theta) Lambda
        assert_eq!(s.fundamental_weights[0], vec![rat(0), rat(0), rat(1)]);
        assert_eq!(s.fundamental_weights[1], vec![ratio(1, 2), rat(0), rat(1)]);
        assert_eq!(s.rho, vec![ratio(1, 2), rat(0), rat(2)]);
        assert_eq!(s.special_indices(), vec![0, 1]);
    }

    #[test]
    fn untwisted_lambda_closed_form() {
        for label in ["A2(1)", "B3(1)", "C3(1)", "D4(1)", "G2(1)", "F4(1)"] {
            let s = sys(label);
            let l = s.rank();
            let theta_norm = s.norm(&s.simple_roots[0]);
            assert_eq!(s.fundamental_weights[0][l + 1], theta_norm / rat(2), "{label}");
            let weights = s.quotient.fundamental_weights();
            for i in 1..=l {
                assert_eq!(&s.fundamental_weights[i][..l], &weights[i - 1][..], "{label} node {i}");
                assert!(s.fundamental_weights[i][l].is_zero(), "{label}: Lambda_{i} has a delta part");
            }
        }
    }

    #[test]
    fn b2_twisted() {
        let s = sys("B2(2)");
        assert_eq!(s.gcm, vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(s.labels, vec![1, 1, 1]);
        assert_eq!(s.colabels, vec![1, 2, 1]);
        assert_eq!(s.h_dual, 4);
        assert_eq!(s.c, rat(2));
        assert_eq!(s.special_indices(), vec![0, 2]);
    }

    #[test]
    fn c3_twisted() {
        let s = sys("C3(2)");
        assert_eq!(s.labels, vec![1, 1, 2, 1]);
        assert_eq!(s.colabels, vec![1, 1, 2, 2]);
        assert_eq!(s.h_dual, 6);
    }

    #[test]
    fn g2_triple() {
        let s = sys("G2(3)");
        assert_eq!(s.gcm, vec![vec![2, -1, 0], vec![-1, 2, -3], vec![0, -1, 2]]);
        assert_eq!(s.labels, vec![1, 2, 1]);
        assert_eq!(s.colabels, vec![1, 2, 3]);
        assert_eq!(s.h_dual, 6);
        assert_eq!(s.c, rat(2));
    }

    #[test]
    fn bc1_structure() {
        let s = sys("BC1(2)");
        assert_eq!(s.gcm, vec![vec![2, -1], vec![-4, 2]]);
        assert_eq!(s.labels, vec![1, 2]);
        assert_eq!(s.colabels, vec![2, 1]);
        assert_eq!((s.h, s.h_dual), (3, 3));
        assert_eq!(s.c, rat(3));
        assert_eq!(s.special_indices(), vec![1]);
        assert_eq!(s.rho, vec![ratio(1, 2), ratio(1, 8), rat(3)]);
        assert_eq!(s.norm(&s.rho), rat(1));
    }

    #[test]
    fn bc2_structure() {
        let s = sys("BC2(2)");
        assert_eq!(s.labels, vec![1, 2, 2]);
        assert_eq!(s.colabels, vec![2, 2, 1]);
        assert_eq!(s.c, rat(5));
        assert_eq!(s.special_indices(), vec![2]);
        let model = s.adapted.as_ref().unwrap();
        assert_eq!(model.typ.label(), "C2");
        assert_eq!(model.norms, vec![rat(2), rat(4)]);
    }

    #[test]
    fn special_indices_catalog() {
        assert_eq!(sys("A3(1)").special_indices(), vec![0, 1, 2, 3]);
        assert_eq!(sys("E8(1)").special_indices(), vec![0]);
        assert_eq!(sys("D4(1)").special_indices(), vec![0, 1, 3, 4]);
        assert_eq!(sys("BC3(2)").special_indices(), vec![3]);
    }

    #[test]
    fn rho_invariants_across_catalog() {
        for label in ["A2(1)", "B2(2)", "C3(2)", "F4(2)", "G2(3)", "BC3(2)", "E6(1)"] {
            let s = sys(label);
            assert!(s.norm(&s.rho_prime).is_zero(), "{label}");
            assert_eq!(s.bilinear(&s.rho, &s.delta()), s.c, "{label}");
        }
    }

    #[test]
    fn roots_up_to_level_patterns() {
        let a1 = sys("A1(1)");
        let level0 = a1.roots_up_to(0).unwrap();
        assert_eq!(level0.len(), 2);

        let b2 = sys("B2(2)");
        // long stratum only at levels ≡ 0 mod 2
        assert!(b2.is_root(&[1, 2], 2)); // theta = alpha_1 + 2 alpha_2 is long
        assert!(!b2.is_root(&[1, 2], 1));
        assert!(b2.is_root(&[1, 1], 1)); // short root at every level
        let roots = b2.roots_up_to(2).unwrap();
        let long_levels: Vec<i64> = roots
            .iter()
            .filter(|r| r.norm == rat(2))
            .map(|r| i64::try_from(r.level.to_integer()).unwrap())
            .collect();
        assert!(long_levels.iter().all(|k| k % 2 == 0));

        let bc1 = sys("BC1(2)");
        assert!(bc1.is_root(&[2], 1)); // 2e_1 + delta
        assert!(!bc1.is_root(&[2], 0)); // 2e_1 alone is not an affine root
        assert!(bc1.is_root(&[1], 0));
        let adapted = bc1.adapted_roots_up_to(1).unwrap();
        // short stratum at half-odd levels: (alpha/2, ±1/2)
        assert!(adapted
            .iter()
            .any(|r| r.finite_part == vec![ratio(1, 2)] && r.level == ratio(1, 2)));
        assert!(adapted.iter().filter(|r| r.norm == rat(1)).all(|r| !r.level.is_integer()));
        // long stratum at even levels only
        assert!(adapted.iter().filter(|r| r.norm == rat(4)).all(|r| r.level.is_zero()));
    }

    #[test]
    fn nomenclature_table() {
        let b3 = sys("B3(2)").nomenclature();
        assert_eq!(b3.kac, "D4(2)");
        assert_eq!(b3.moody, "B3,2");
        assert_eq!(b3.macdonald, "C3^v");
        assert_eq!(b3.carter, "~C3^t");

        let c3 = sys("C3(2)").nomenclature();
        assert_eq!(c3.kac, "A5(2)");
        assert_eq!(c3.macdonald, "B3^v");

        let bc1 = sys("BC1(2)").nomenclature();
        assert_eq!(bc1.kac, "A2(2)");
        assert_eq!(bc1.moody, "A1,2");
        assert_eq!(bc1.macdonald, "BC1 = BC1^v");
        assert_eq!(bc1.carter, "~C1'");

        let a3 = sys("A3(1)").nomenclature();
        assert_eq!(a3.kac, "A3(1)");
        assert_eq!(a3.macdonald, "A3 = A3^v");
        assert_eq!(sys("B3(1)").nomenclature().macdonald, "B3");

        let g2 = sys("G2(3)").nomenclature();
        assert_eq!(g2.kac, "D4(3)");
        assert_eq!(g2.carter, "~G2^t");
    }

    #[test]
    fn parse_validity() {
        assert!(AffineType::parse("A3(1)").is_ok());
        assert!(AffineType::parse("BC2(2)").is_ok());
        assert!(AffineType::parse("G2(3)").is_ok());
        assert!(AffineType::parse("G2(2)").is_err());
        assert!(AffineType::parse("BC2(1)").is_err());
        assert!(AffineType::parse("E6(2)").is_err());
        assert!(AffineType::parse("A3(4)").is_err());
        assert!(AffineType::parse("Z9(9)").is_err());
        assert!(AffineType::parse("A3").is_err());
    }

    #[test]
    fn scale_changes_c_not_structure() {
        let base = sys("C3(2)");
        let scaled = AffineSystem::build(AffineType::parse("C3(2)").unwrap(), rat(2)).unwrap();
        assert_eq!(base.gcm, scaled.gcm);
        assert_eq!(base.labels, scaled.labels);
        assert_eq!(base.colabels, scaled.colabels);
        assert_eq!(scaled.c, rat(2) * &base.c);

        let bc = AffineSystem::build(AffineType::parse("BC2(2)").unwrap(), ratio(1, 3)).unwrap();
        assert_eq!(bc.c, ratio(5, 3));
        assert_eq!(bc.labels, vec![1, 2, 2]);
    }
}
