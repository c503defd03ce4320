//! Diagram automorphisms and the two folding operators: orbit-sum (Tr^) and
//! orbit-mean (Tr_). Folded images are re-verified against the root-system
//! axioms and identified by Cartan-matrix matching up to relabeling and scale.

use crate::affine::{AffineSystem, AffineType};
use crate::error::{CoreError, Result};
use crate::finite::{Family, FiniteRootSystem, FiniteType};
use crate::linalg::{rat, GramForm, Mat, Rat};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Generalized-root-system axioms over an arbitrary rational form:
/// distinct nonzero roots of nonzero norm spanning the full space, integral
/// coroot pairings, reflection closure, and no orthogonal decomposition.
pub fn check_root_set_axioms(form: &GramForm, roots: &[Vec<Rat>]) -> Result<()> {
    let n = roots.len();
    let dim = form.dim();
    if n == 0 {
        return Err(CoreError::Axiom("empty root set".into()));
    }
    for r in roots {
        if r.len() != dim {
            return Err(CoreError::DimensionMismatch { expected: dim, got: r.len() });
        }
    }
    let as_set: BTreeSet<&Vec<Rat>> = roots.iter().collect();
    if as_set.len() != n {
        return Err(CoreError::Axiom("duplicate roots".into()));
    }
    let norms: Vec<Rat> = roots.iter().map(|r| form.norm(r)).collect();
    if norms.iter().any(|x| x.is_zero()) {
        return Err(CoreError::Axiom("isotropic root".into()));
    }
    if Mat::from_rows(roots.to_vec()).rank() != dim {
        return Err(CoreError::Axiom("roots do not span the space".into()));
    }
    let lookup: BTreeSet<Vec<Rat>> = roots.iter().cloned().collect();
    for (i, alpha) in roots.iter().enumerate() {
        for beta in roots {
            let pairing = rat(2) * form.bilinear(beta, alpha) / &norms[i];
            if !pairing.is_integer() {
                return Err(CoreError::Axiom(format!(
                    "non-integral pairing {pairing} between {beta:?} and {alpha:?}"
                )));
            }
            let reflected: Vec<Rat> =
                beta.iter().zip(alpha).map(|(b, a)| b - &pairing * a).collect();
            if !lookup.contains(&reflected) {
                return Err(CoreError::NotARoot(format!("{reflected:?}")));
            }
        }
    }
    // connectivity of the non-orthogonality graph
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && !form.bilinear(&roots[i], &roots[j]).is_zero() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(CoreError::Axiom("orthogonal decomposition exists".into()));
    }
    Ok(())
}

/// A node permutation of a Dynkin diagram, verified to preserve the Cartan
/// matrix and to extend to an isometry of the span of the simple roots.
#[derive(Clone, Debug)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
    pub order: usize,
    pub fixed: Vec<usize>,
    pub matrix: Mat,
}

impl DiagramAutomorphism {
    fn build(cartan: &[Vec<i64>], node_gram: &Mat, perm: Vec<usize>) -> Result<Self> {
        let n = cartan.len();
        let mut hit = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut hit[p], true)) {
            return Err(CoreError::Axiom(format!("{perm:?} is not a permutation of {n} nodes")));
        }
        for i in 0..n {
            for j in 0..n {
                if cartan[perm[i]][perm[j]] != cartan[i][j] {
                    return Err(CoreError::Axiom(format!(
                        "permutation breaks the Cartan matrix at ({i},{j})"
                    )));
                }
            }
        }
        let mut matrix = Mat::zero(n, n);
        for (j, &p) in perm.iter().enumerate() {
            *matrix.at_mut(p, j) = Rat::one();
        }
        let transported = matrix.transpose().mul(&node_gram.mul(&matrix));
        if transported != *node_gram {
            return Err(CoreError::Axiom("permutation is not an isometry".into()));
        }
        let mut order = 1usize;
        let mut power: Vec<usize> = perm.clone();
        while power.iter().enumerate().any(|(i, &p)| p != i) {
            power = power.iter().map(|&p| perm[p]).collect();
            order += 1;
        }
        let fixed: Vec<usize> = (0..n).filter(|&i| perm[i] == i).collect();
        if fixed.is_empty() {
            return Err(CoreError::Axiom("automorphism fixes no node".into()));
        }
        Ok(DiagramAutomorphism { perm, order, fixed, matrix })
    }

    pub fn finite(rs: &FiniteRootSystem, perm: Vec<usize>) -> Result<Self> {
        Self::build(&rs.cartan, &rs.gram.mat, perm)
    }

    pub fn affine(sys: &AffineSystem, perm: Vec<usize>) -> Result<Self> {
        let n = sys.rank() + 1;
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| sys.bilinear(&sys.simple_roots[i], &sys.simple_roots[j])).collect())
            .collect();
        Self::build(&sys.gcm, &Mat::from_rows(rows), perm)
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Node orbits, each listed from its smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = self.perm[start];
            while i != start {
                seen[i] = true;
                orbit.push(i);
                i = self.perm[i];
            }
            out.push(orbit);
        }
        out
    }

    fn apply_coords(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for (j, &x) in v.iter().enumerate() {
            out[self.perm[j]] = x;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldMode {
    Sum,
    Mean,
}

/// Image of a finite root system under orbit-sum or orbit-mean folding,
/// expressed in the basis of folded simple roots.
#[derive(Clone, Debug)]
pub struct FoldingResult {
    pub mode: FoldMode,
    pub simples_ambient: Vec<Vec<Rat>>,
    pub gram: GramForm,
    pub cartan: Vec<Vec<i64>>,
    pub image: Vec<Vec<i64>>,
    pub image_ambient: Vec<Vec<Rat>>,
    pub root_map: Vec<usize>,
    pub matches: Vec<(FiniteType, Rat)>,
}

impl FoldingResult {
    pub fn norm_of(&self, coords: &[i64]) -> Rat {
        let v: Vec<Rat> = coords.iter().map(|&x| rat(x)).collect();
        self.gram.norm(&v)
    }

    /// Image roots with nonnegative folded coordinates.
    pub fn positive_image(&self) -> Vec<Vec<i64>> {
        self.image.iter().filter(|r| r.iter().all(|&x| x >= 0)).cloned().collect()
    }
}

fn fold_root(sigma: &DiagramAutomorphism, root: &[i64], mode: FoldMode) -> Vec<Rat> {
    let mut members = vec![root.to_vec()];
    loop {
        let next = sigma.apply_coords(members.last().unwrap());
        if next == members[0] {
            break;
        }
        members.push(next);
    }
    let k = members.len() as i64;
    let mut out = vec![Rat::zero(); root.len()];
    for m in &members {
        for (acc, &x) in out.iter_mut().zip(m) {
            *acc += rat(x);
        }
    }
    if mode == FoldMode::Mean {
        for x in &mut out {
            *x /= rat(k);
        }
    }
    out
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    assert!(k <= 6, "permutation search is only used for small ranks");
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(&mut items, k, &mut out);
    out
}

fn finite_candidates(k: usize) -> Vec<FiniteType> {
    let mut out = Vec::new();
    let mut push = |t: Result<FiniteType>| {
        if let Ok(t) = t {
            out.push(t);
        }
    };
    push(FiniteType::new(Family::A, k));
    push(FiniteType::new_internal(Family::B, k));
    push(FiniteType::new_internal(Family::C, k));
    push(FiniteType::new_internal(Family::D, k));
    push(FiniteType::new(Family::E, k));
    push(FiniteType::new(Family::F, k));
    push(FiniteType::new(Family::G, k));
    out
}

/// Standard finite types isomorphic to the given Cartan data, with the norm
/// scale relating them.
pub fn match_finite_types(cartan: &[Vec<i64>], norms: &[Rat]) -> Vec<(FiniteType, Rat)> {
    let k = cartan.len();
    let mut found = Vec::new();
    for cand in finite_candidates(k) {
        let Ok(model) = FiniteRootSystem::standard(cand) else { continue };
        'perm: for p in all_permutations(k) {
            for i in 0..k {
                for j in 0..k {
                    if model.cartan[i][j] != cartan[p[i]][p[j]] {
                        continue 'perm;
                    }
                }
            }
            let scale = &norms[p[0]] / model.gram.mat.at(0, 0);
            if (0..k).all(|i| &norms[p[i]] / model.gram.mat.at(i, i) == scale) {
                found.push((cand, scale));
                break 'perm;
            }
        }
    }
    found
}

fn fold(rs: &FiniteRootSystem, sigma: &DiagramAutomorphism, mode: FoldMode) -> Result<FoldingResult> {
    let orbits = sigma.orbits();
    let l = rs.rank();
    let k = orbits.len();
    let simples_ambient: Vec<Vec<Rat>> = orbits
        .iter()
        .map(|o| {
            let mut v = vec![Rat::zero(); l];
            for &j in o {
                v[j] = Rat::one();
            }
            if mode == FoldMode::Mean {
                for x in &mut v {
                    *x /= rat(o.len() as i64);
                }
            }
            v
        })
        .collect();
    let gram_rows: Vec<Vec<Rat>> = simples_ambient
        .iter()
        .map(|a| simples_ambient.iter().map(|b| rs.gram.bilinear(a, b)).collect())
        .collect();
    let gram = GramForm::new(Mat::from_rows(gram_rows));
    let mut cartan = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let pairing = rat(2) * gram.mat.at(i, j) / gram.mat.at(i, i);
            assert!(pairing.is_integer(), "folded Cartan entry is not integral");
            cartan[i][j] = pairing.numer().try_into().expect("Cartan entry overflow");
        }
    }

    let solver = gram.mat.inverse()?;
    let mut image: Vec<Vec<i64>> = Vec::new();
    let mut image_ambient: Vec<Vec<Rat>> = Vec::new();
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut root_map = Vec::with_capacity(rs.roots.len());
    for root in &rs.roots {
        let ambient = fold_root(sigma, root, mode);
        let pairings: Vec<Rat> =
            simples_ambient.iter().map(|s| rs.gram.bilinear(&ambient, s)).collect();
        let coords_rat = solver.mul_vec(&pairings);
        let coords: Vec<i64> = coords_rat
            .iter()
            .map(|x| {
                assert!(x.is_integer(), "image root has non-integral coordinates");
                x.numer().try_into().expect("coordinate overflow")
            })
            .collect();
        // reconstruction guards against images outside the folded span
        let mut rebuilt = vec![Rat::zero(); l];
        for (c, s) in coords_rat.iter().zip(&simples_ambient) {
            for (acc, x) in rebuilt.iter_mut().zip(s) {
                *acc += c * x;
            }
        }
        assert_eq!(rebuilt, ambient, "image root leaves the fixed subspace");
        let idx = *index.entry(coords.clone()).or_insert_with(|| {
            image.push(coords.clone());
            image_ambient.push(ambient.clone());
            image.len() - 1
        });
        root_map.push(idx);
    }

    let rational: Vec<Vec<Rat>> =
        image.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    check_root_set_axioms(&gram, &rational)?;
    let norms: Vec<Rat> = (0..k).map(|i| gram.mat.at(i, i).clone()).collect();
    let matches = match_finite_types(&cartan, &norms);
    if matches.is_empty() {
        return Err(CoreError::Unsupported("folded image matches no standard type".into()));
    }
    Ok(FoldingResult {
        mode,
        simples_ambient,
        gram,
        cartan,
        image,
        image_ambient,
        root_map,
        matches,
    })
}

/// Orbit-sum folding Tr^.
pub fn fold_sum(rs: &FiniteRootSystem, sigma: &DiagramAutomorphism) -> Result<FoldingResult> {
    fold(rs, sigma, FoldMode::Sum)
}

/// Orbit-mean folding Tr_.
pub fn fold_mean(rs: &FiniteRootSystem, sigma: &DiagramAutomorphism) -> Result<FoldingResult> {
    fold(rs, sigma, FoldMode::Mean)
}

/// Checks both duality relations between the two foldings:
/// Tr^(R^v) = (Tr_(R))^v and Tr_(R^v) = (Tr^(R))^v as root sets.
pub fn fold_duality_check(rs: &FiniteRootSystem, sigma: &DiagramAutomorphism) -> Result<bool> {
    let dual = |v: &[Rat]| -> Vec<Rat> {
        let n = rs.gram.norm(v);
        v.iter().map(|x| rat(2) * x / &n).collect()
    };
    let roots_rat: Vec<Vec<Rat>> =
        rs.roots.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let coroots: Vec<Vec<Rat>> = roots_rat.iter().map(|r| dual(r)).collect();
    let fold_set = |set: &[Vec<Rat>], mode: FoldMode| -> BTreeSet<Vec<Rat>> {
        set.iter()
            .map(|r| {
                let mut members = vec![r.clone()];
                loop {
                    let prev = members.last().unwrap();
                    let mut next = vec![Rat::zero(); prev.len()];
                    for (j, x) in prev.iter().enumerate() {
                        next[sigma.perm[j]] = x.clone();
                    }
                    if next == members[0] {
                        break;
                    }
                    members.push(next);
                }
                let k = members.len() as i64;
                let mut out = vec![Rat::zero(); r.len()];
                for m in &members {
                    for (acc, x) in out.iter_mut().zip(m) {
                        *acc += x;
                    }
                }
                if mode == FoldMode::Mean {
                    for x in &mut out {
                        *x /= rat(k);
                    }
                }
                out
            })
            .collect()
    };
    let dual_of = |set: BTreeSet<Vec<Rat>>| -> BTreeSet<Vec<Rat>> {
        set.iter().map(|v| dual(v)).collect()
    };
    let first = fold_set(&coroots, FoldMode::Sum) == dual_of(fold_set(&roots_rat, FoldMode::Mean));
    let second = fold_set(&coroots, FoldMode::Mean) == dual_of(fold_set(&roots_rat, FoldMode::Sum));
    Ok(first && second)
}

/// Outcome of an affine diagram fold: the folded generalized Cartan matrix,
/// every standard affine type isomorphic to it, and the first such system.
#[derive(Clone, Debug)]
pub struct AffineFoldOutcome {
    pub mode: FoldMode,
    pub gcm: Vec<Vec<i64>>,
    pub matches: Vec<AffineType>,
    pub system: AffineSystem,
}

fn affine_candidates(nodes: usize) -> Vec<AffineType> {
    let mut out = Vec::new();
    if nodes < 2 {
        return out;
    }
    let r = nodes - 1;
    let mut push = |base: Result<FiniteType>, tier: usize| {
        if let Ok(base) = base {
            if let Ok(t) = AffineType::new(base, tier) {
                out.push(t);
            }
        }
    };
    for fam in [Family::A, Family::B, Family::C, Family::E, Family::F, Family::G] {
        push(FiniteType::new(fam, r), 1);
    }
    push(FiniteType::new_internal(Family::D, r), 1);
    if r >= 2 {
        push(FiniteType::new(Family::B, r), 2);
        push(FiniteType::new(Family::C, r), 2);
    }
    push(FiniteType::new(Family::F, r), 2);
    push(FiniteType::new(Family::BC, r), 2);
    push(FiniteType::new(Family::G, r), 3);
    out
}

/// Standard affine types whose GCM matches the given one up to relabeling.
pub fn match_affine_types(gcm: &[Vec<i64>]) -> Vec<AffineType> {
    let nodes = gcm.len();
    let mut found = Vec::new();
    for cand in affine_candidates(nodes) {
        let Ok(model) = AffineSystem::standard(cand) else { continue };
        'perm: for p in all_permutations(nodes) {
            for i in 0..nodes {
                for j in 0..nodes {
                    if model.gcm[i][j] != gcm[p[i]][p[j]] {
                        continue 'perm;
                    }
                }
            }
            found.push(cand);
            break 'perm;
        }
    }
    found
}

fn fold_affine_gcm(
    sys: &AffineSystem,
    sigma: &DiagramAutomorphism,
    mode: FoldMode,
) -> Result<AffineFoldOutcome> {
    let orbits = sigma.orbits();
    let tau: Vec<Vec<Rat>> = orbits
        .iter()
        .map(|o| {
            let mut v = vec![Rat::zero(); sys.dim()];
            for &j in o {
                for (acc, x) in v.iter_mut().zip(&sys.simple_roots[j]) {
                    *acc += x;
                }
            }
            if mode == FoldMode::Mean {
                for x in &mut v {
                    *x /= rat(o.len() as i64);
                }
            }
            v
        })
        .collect();
    let k = tau.len();
    let mut gcm = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let pairing = rat(2) * sys.bilinear(&tau[i], &tau[j]) / sys.norm(&tau[i]);
            assert!(pairing.is_integer(), "folded GCM entry is not integral");
            gcm[i][j] = pairing.numer().try_into().expect("GCM entry overflow");
        }
    }
    let matches = match_affine_types(&gcm);
    let Some(&first) = matches.first() else {
        return Err(CoreError::Unsupported("folded GCM matches no affine type".into()));
    };
    Ok(AffineFoldOutcome { mode, gcm, matches, system: AffineSystem::standard(first)? })
}

/// Folds an untwisted simply-laced affine system along a quotient-diagram
/// automorphism extended by fixing node 0.
pub fn fold_affine(sys: &AffineSystem, sigma_f: &[usize], mode: FoldMode) -> Result<AffineFoldOutcome> {
    if sys.typ.tier != 1 || !matches!(sys.typ.base.family, Family::A | Family::D | Family::E) {
        return Err(CoreError::Unsupported(format!(
            "{} is not a simply-laced untwisted system",
            sys.typ.label()
        )));
    }
    let finite_sigma = DiagramAutomorphism::finite(&sys.quotient, sigma_f.to_vec())?;
    if finite_sigma.is_identity() {
        return Err(CoreError::Unsupported("identity automorphism does not fold".into()));
    }
    let mut perm = vec![0usize];
    perm.extend(sigma_f.iter().map(|&p| p + 1));
    let sigma = DiagramAutomorphism::affine(sys, perm)?;
    fold_affine_gcm(sys, &sigma, mode)
}

/// Realizes BC_l^(2) by folding D_{2l+2}^(1) along its order-4 automorphism:
/// central-chain reversal composed with a 4-cycle of the extremal nodes.
pub fn fold_bc(l: usize, mode: FoldMode) -> Result<AffineFoldOutcome> {
    if l == 0 {
        return Err(CoreError::InvalidRank { family: "BC".into(), rank: 0 });
    }
    let n = 2 * l + 2;
    let source = AffineSystem::standard(AffineType::new(FiniteType::new(Family::D, n)?, 1)?)?;
    let mut perm: Vec<usize> = (0..=n).map(|i| if (2..=n - 2).contains(&i) { n - i } else { i }).collect();
    perm[0] = n - 1;
    perm[n - 1] = 1;
    perm[1] = n;
    perm[n] = 0;
    let sigma = DiagramAutomorphism::affine(&source, perm)?;
    assert_eq!(sigma.order, 4);
    assert_eq!(sigma.fixed, vec![l + 1]);
    let outcome = fold_affine_gcm(&source, &sigma, mode)?;
    let expected = AffineType::new(FiniteType::new(Family::BC, l)?, 2)?;
    assert!(
        outcome.matches.contains(&expected),
        "order-4 fold of D_{{{n}}}(1) must give {}",
        expected.label()
    );
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finite(family: Family, rank: usize) -> FiniteRootSystem {
        FiniteRootSystem::standard(FiniteType::new(family, rank).unwrap()).unwrap()
    }

    fn path_flip(l: usize) -> Vec<usize> {
        (0..l).map(|i| l - 1 - i).collect()
    }

    fn fork_flip(l: usize) -> Vec<usize> {
        // swap the two fork ends of D_l
        let mut p: Vec<usize> = (0..l).collect();
        p.swap(l - 2, l - 1);
        p
    }

    fn has_type(matches: &[(FiniteType, Rat)], family: Family, rank: usize) -> bool {
        matches.iter().any(|(t, _)| t.family == family && t.rank == rank)
    }

    #[test]
    fn axioms_accept_standard_systems() {
        for (family, rank) in [(Family::A, 2), (Family::B, 2), (Family::G, 2), (Family::D, 4)] {
            let rs = finite(family, rank);
            let roots: Vec<Vec<Rat>> =
                rs.roots.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
            check_root_set_axioms(&rs.gram, &roots).unwrap();
        }
    }

    #[test]
    fn axioms_reject_broken_sets() {
        let rs = finite(Family::A, 2);
        let mut roots: Vec<Vec<Rat>> =
            rs.roots.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        roots.pop();
        assert!(matches!(
            check_root_set_axioms(&rs.gram, &roots),
            Err(CoreError::NotARoot(_))
        ));
        let short: Vec<Vec<Rat>> = vec![vec![rat(1), rat(0)], vec![rat(-1), rat(0)]];
        assert!(check_root_set_axioms(&rs.gram, &short).is_err());
    }

    #[test]
    fn rejects_non_automorphism() {
        let rs = finite(Family::A, 3);
        assert!(DiagramAutomorphism::finite(&rs, vec![1, 0, 2]).is_err());
        assert!(DiagramAutomorphism::finite(&rs, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn identity_fold_is_trivial() {
        let rs = finite(Family::B, 2);
        let sigma = DiagramAutomorphism::finite(&rs, vec![0, 1]).unwrap();
        assert!(sigma.is_identity());
        let folded = fold_sum(&rs, &sigma).unwrap();
        assert_eq!(folded.image.len(), rs.roots.len());
        assert!(folded.matches.iter().any(|(t, s)| *t == rs.typ && s.is_one()));
        assert!(fold_duality_check(&rs, &sigma).unwrap());
    }

    #[test]
    fn chain_folds_give_b_and_c() {
        for l in [2usize, 3, 4] {
            let src = finite(Family::A, 2 * l - 1);
            let sigma = DiagramAutomorphism::finite(&src, path_flip(2 * l - 1)).unwrap();
            let summed = fold_sum(&src, &sigma).unwrap();
            let averaged = fold_mean(&src, &sigma).unwrap();
            assert!(has_type(&summed.matches, Family::B, l), "A{} sum: {:?}", 2 * l - 1, summed.matches);
            assert!(has_type(&averaged.matches, Family::C, l));
            if l >= 3 {
                assert!(!has_type(&summed.matches, Family::C, l));
                assert!(!has_type(&averaged.matches, Family::B, l));
            }
        }
    }

    #[test]
    fn fork_folds_give_c_and_b() {
        for l in [3usize, 4] {
            let src = finite(Family::D, l + 1);
            let sigma = DiagramAutomorphism::finite(&src, fork_flip(l + 1)).unwrap();
            let summed = fold_sum(&src, &sigma).unwrap();
            let averaged = fold_mean(&src, &sigma).unwrap();
            assert!(has_type(&summed.matches, Family::C, l));
            assert!(has_type(&averaged.matches, Family::B, l));
            if l >= 3 {
                assert!(!has_type(&summed.matches, Family::B, l));
            }
        }
        // rank-2 instance via the internal D_3 model
        let d3 = FiniteRootSystem::standard(FiniteType::new_internal(Family::D, 3).unwrap()).unwrap();
        let sigma = DiagramAutomorphism::finite(&d3, vec![0, 2, 1]).unwrap();
        assert!(has_type(&fold_sum(&d3, &sigma).unwrap().matches, Family::C, 2));
        assert!(has_type(&fold_mean(&d3, &sigma).unwrap().matches, Family::B, 2));
    }

    #[test]
    fn exceptional_folds() {
        let e6 = finite(Family::E, 6);
        let flip = DiagramAutomorphism::finite(&e6, vec![5, 1, 4, 3, 2, 0]).unwrap();
        assert!(has_type(&fold_sum(&e6, &flip).unwrap().matches, Family::F, 4));
        assert!(has_type(&fold_mean(&e6, &flip).unwrap().matches, Family::F, 4));

        let d4 = finite(Family::D, 4);
        let triality = DiagramAutomorphism::finite(&d4, vec![2, 1, 3, 0]).unwrap();
        assert_eq!(triality.order, 3);
        assert!(has_type(&fold_sum(&d4, &triality).unwrap().matches, Family::G, 2));
        assert!(has_type(&fold_mean(&d4, &triality).unwrap().matches, Family::G, 2));
    }

    #[test]
    fn folded_positive_roots_and_weyl_vector() {
        let cases: Vec<(FiniteRootSystem, Vec<usize>)> = vec![
            (finite(Family::A, 5), path_flip(5)),
            (finite(Family::D, 5), fork_flip(5)),
            (finite(Family::E, 6), vec![5, 1, 4, 3, 2, 0]),
            (finite(Family::D, 4), vec![2, 1, 3, 0]),
        ];
        for (src, perm) in cases {
            let sigma = DiagramAutomorphism::finite(&src, perm).unwrap();
            let folded = fold_sum(&src, &sigma).unwrap();
            let positive_indices: BTreeSet<usize> = src
                .positive_roots
                .iter()
                .map(|r| {
                    let i = src.roots.iter().position(|x| x == r).unwrap();
                    folded.root_map[i]
                })
                .collect();
            let from_coords: BTreeSet<usize> = folded
                .image
                .iter()
                .enumerate()
                .filter(|(_, r)| r.iter().all(|&x| x >= 0))
                .map(|(i, _)| i)
                .collect();
            assert_eq!(positive_indices, from_coords, "{}", src.typ.label());

            // source and image share the same half-sum of positive roots
            let mut half: Vec<Rat> = vec![Rat::zero(); src.rank()];
            for idx in &positive_indices {
                for (acc, x) in half.iter_mut().zip(&folded.image_ambient[*idx]) {
                    *acc += x;
                }
            }
            for x in &mut half {
                *x /= rat(2);
            }
            let rho_src: Vec<Rat> = src.rho.clone();
            assert_eq!(half, rho_src, "{}", src.typ.label());
        }
    }

    #[test]
    fn highest_root_maps_to_highest_short_root() {
        let cases: Vec<(FiniteRootSystem, Vec<usize>)> = vec![
            (finite(Family::A, 5), path_flip(5)),
            (finite(Family::D, 5), fork_flip(5)),
            (finite(Family::E, 6), vec![5, 1, 4, 3, 2, 0]),
            (finite(Family::D, 4), vec![2, 1, 3, 0]),
        ];
        for (src, perm) in cases {
            let sigma = DiagramAutomorphism::finite(&src, perm).unwrap();
            let folded = fold_sum(&src, &sigma).unwrap();
            let theta_idx = src.roots.iter().position(|r| *r == src.theta).unwrap();
            let image_idx = folded.root_map[theta_idx];
            // theta is sigma-fixed, so its orbit-sum is itself
            assert_eq!(
                folded.image_ambient[image_idx],
                src.theta.iter().map(|&x| rat(x)).collect::<Vec<_>>()
            );
            let min_norm = folded
                .image
                .iter()
                .map(|r| folded.norm_of(r))
                .min()
                .unwrap();
            let dominant: Vec<&Vec<i64>> = folded
                .image
                .iter()
                .filter(|r| {
                    folded.norm_of(r) == min_norm
                        && (0..folded.cartan.len()).all(|i| {
                            let v: Vec<Rat> = r.iter().map(|&x| rat(x)).collect();
                            let e: Vec<Rat> = (0..folded.cartan.len())
                                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                                .collect();
                            folded.gram.bilinear(&v, &e) >= Rat::zero()
                        })
                })
                .collect();
            assert_eq!(dominant.len(), 1, "{}", src.typ.label());
            assert_eq!(*dominant[0], folded.image[image_idx], "{}", src.typ.label());
        }
    }

    #[test]
    fn strata_split_by_fixed_orbits() {
        let cases: Vec<(FiniteRootSystem, Vec<usize>)> = vec![
            (finite(Family::A, 5), path_flip(5)),
            (finite(Family::D, 4), vec![2, 1, 3, 0]),
        ];
        for (src, perm) in cases {
            let sigma = DiagramAutomorphism::finite(&src, perm).unwrap();
            let folded = fold_sum(&src, &sigma).unwrap();
            let norms: Vec<Rat> = folded.image.iter().map(|r| folded.norm_of(r)).collect();
            let min_norm = norms.iter().min().unwrap().clone();
            for (i, root) in src.roots.iter().enumerate() {
                let fixed = sigma.apply_coords(root) == *root;
                let short = norms[folded.root_map[i]] == min_norm;
                assert_eq!(fixed, short, "{}: {:?}", src.typ.label(), root);
            }
        }
    }

    #[test]
    fn duality_relations_hold() {
        let cases: Vec<(FiniteRootSystem, Vec<usize>)> = vec![
            (finite(Family::A, 3), path_flip(3)),
            (finite(Family::A, 5), path_flip(5)),
            (finite(Family::D, 4), fork_flip(4)),
            (finite(Family::D, 4), vec![2, 1, 3, 0]),
            (finite(Family::D, 5), fork_flip(5)),
            (finite(Family::E, 6), vec![5, 1, 4, 3, 2, 0]),
        ];
        for (src, perm) in cases {
            let sigma = DiagramAutomorphism::finite(&src, perm).unwrap();
            assert!(fold_duality_check(&src, &sigma).unwrap(), "{}", src.typ.label());
        }
    }

    fn affine(label: &str) -> AffineSystem {
        AffineSystem::standard(AffineType::parse(label).unwrap()).unwrap()
    }

    fn affine_match(matches: &[AffineType], label: &str) -> bool {
        matches.iter().any(|t| t.label() == label)
    }

    #[test]
    fn affine_folds_follow_the_table() {
        let rows: Vec<(&str, Vec<usize>, &str, &str)> = vec![
            ("A3(1)", path_flip(3), "B2(2)", "C2(1)"),
            ("A5(1)", path_flip(5), "B3(2)", "C3(1)"),
            ("D4(1)", fork_flip(4), "C3(2)", "B3(1)"),
            ("D5(1)", fork_flip(5), "C4(2)", "B4(1)"),
            ("E6(1)", vec![5, 1, 4, 3, 2, 0], "F4(2)", "F4(1)"),
            ("D4(1)", vec![2, 1, 3, 0], "G2(3)", "G2(1)"),
        ];
        for (label, perm, sum_target, mean_target) in rows {
            let src = affine(label);
            let summed = fold_affine(&src, &perm, FoldMode::Sum).unwrap();
            let averaged = fold_affine(&src, &perm, FoldMode::Mean).unwrap();
            assert!(
                affine_match(&summed.matches, sum_target),
                "{label} sum: {:?}",
                summed.matches.iter().map(|t| t.label()).collect::<Vec<_>>()
            );
            assert!(
                affine_match(&averaged.matches, mean_target),
                "{label} mean: {:?}",
                averaged.matches.iter().map(|t| t.label()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn affine_fold_rejects_bad_input() {
        assert!(fold_affine(&affine("B2(2)"), &[0, 1], FoldMode::Sum).is_err());
        assert!(fold_affine(&affine("A3(1)"), &[0, 1, 2], FoldMode::Sum).is_err());
    }

    #[test]
    fn order_four_fold_realizes_bc() {
        for l in [1usize, 2] {
            let summed = fold_bc(l, FoldMode::Sum).unwrap();
            let averaged = fold_bc(l, FoldMode::Mean).unwrap();
            let label = format!("BC{l}(2)");
            assert!(affine_match(&summed.matches, &label));
            assert!(affine_match(&averaged.matches, &label));
            assert_eq!(summed.system.typ.label(), label);
        }
    }
}
