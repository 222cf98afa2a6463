//! Explicit permutation groups for small degrees.
//!
//! Everything here stores full element lists, so the degree is capped by a
//! caller-supplied bound (never above [`HARD_BOUND`]).

use std::collections::{BTreeMap, HashSet};

use crate::charring::{phi_product, CharElement};
use crate::error::{Error, Result};
use crate::partitions::{multiplicities, Composition, Partition};

/// Degree bound used by default for brute-force checks.
pub const DEFAULT_BOUND: usize = 5;
/// Degree bound with slow tests enabled.
pub const SLOW_BOUND: usize = 6;
/// Nothing above this is ever enumerated (`|S_7| = 5040`).
pub const HARD_BOUND: usize = 7;

/// A permutation of `{0, ..., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let Some(slot) = seen.get_mut(x as usize).filter(|s| !**s) else {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation"
                )));
            };
            *slot = true;
        }
        Ok(Perm(images))
    }

    /// The transposition `(a b)`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(a, b);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `g x g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        Composition::new(lens).expect("positive").normalize()
    }
}

/// All permutations of degree `n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm(prefix.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A finite permutation group stored by its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Perm>,
    members: HashSet<Perm>,
}

impl PermGroup {
    fn from_elements(n: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        elements.dedup();
        let members = elements.iter().cloned().collect();
        PermGroup {
            n,
            elements,
            members,
        }
    }

    /// Closure of `gens` under composition.
    pub fn generated_by(n: usize, gens: &[Perm]) -> Self {
        let id = Perm::identity(n);
        let mut members: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x);
                if members.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Self::from_elements(n, members.into_iter().collect())
    }

    pub fn symmetric(n: usize) -> Self {
        Self::from_elements(n, all_perms(n))
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_elements(n, vec![Perm::identity(n)])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.members.contains(g)
    }

    /// `self ∩ g H g⁻¹`.
    pub fn intersect_conjugate(&self, h: &PermGroup, g: &Perm) -> PermGroup {
        let g_inv = g.inverse();
        let elements = self
            .elements
            .iter()
            .filter(|a| h.contains(&a.conjugate_by(&g_inv)))
            .cloned()
            .collect();
        Self::from_elements(self.n, elements)
    }

    /// Orbit lengths on `{0, ..., n-1}`, as a partition.
    pub fn orbit_type(&self) -> Partition {
        let mut seen = vec![false; self.n];
        let mut lens = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let orbit: HashSet<usize> = self.elements.iter().map(|g| g.apply(start)).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            lens.push(orbit.len());
        }
        Composition::new(lens).expect("positive").normalize()
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    let bound = bound.min(HARD_BOUND);
    if n > bound {
        Err(Error::BoundExceeded { n, bound })
    } else {
        Ok(())
    }
}

/// Block boundaries `0 = b_0 < b_1 < ... < b_r = n` of `λ`.
fn block_starts(lambda: &Composition) -> Vec<usize> {
    let mut starts = vec![0];
    for &x in lambda.parts() {
        starts.push(starts.last().unwrap() + x);
    }
    starts
}

/// `S_λ`, generated by the adjacent transpositions `(i, i+1)` that do not
/// cross a block boundary.
pub fn young_subgroup(lambda: &Composition, bound: usize) -> Result<PermGroup> {
    let n = lambda.size();
    check_bound(n, bound)?;
    let boundaries: HashSet<usize> = block_starts(lambda).into_iter().collect();
    let gens: Vec<Perm> = (1..n)
        .filter(|i| !boundaries.contains(i))
        .map(|i| Perm::transposition(n, i - 1, i))
        .collect();
    Ok(PermGroup::generated_by(n, &gens))
}

/// The normalizer `N_λ` of `S_λ` in `S_n` and `|W(λ)| = |N_λ| / |S_λ|`.
pub fn normalizer_and_w(lambda: &Composition, bound: usize) -> Result<(PermGroup, usize)> {
    let n = lambda.size();
    let young = young_subgroup(lambda, bound)?;
    let gens: Vec<Perm> = young
        .elements()
        .iter()
        .filter(|g| g.cycle_type().parts().first() == Some(&2) && g.cycle_type().len() == n - 1)
        .cloned()
        .collect();
    let normalizer: Vec<Perm> = all_perms(n)
        .into_iter()
        .filter(|g| gens.iter().all(|s| young.contains(&s.conjugate_by(g))))
        .collect();
    let normalizer = PermGroup::from_elements(n, normalizer);
    if !normalizer.order().is_multiple_of(young.order()) {
        return Err(Error::Inconsistent("|S_λ| does not divide |N_λ|".into()));
    }
    let w = normalizer.order() / young.order();
    Ok((normalizer, w))
}

/// A faithful permutation model of `W(λ) = N_λ / S_λ`: the action of `N_λ`
/// on the blocks (orbits) of `S_λ`, whose kernel is exactly `S_λ`.
pub fn w_group(lambda: &Composition, bound: usize) -> Result<PermGroup> {
    let (normalizer, w) = normalizer_and_w(lambda, bound)?;
    let starts = block_starts(lambda);
    let r = lambda.len();
    let block_of = |x: usize| starts.partition_point(|&s| s <= x) - 1;
    let images: HashSet<Perm> = normalizer
        .elements()
        .iter()
        .map(|g| Perm((0..r).map(|b| block_of(g.apply(starts[b])) as u8).collect()))
        .collect();
    let group = PermGroup::from_elements(r, images.into_iter().collect());
    if group.order() != w {
        return Err(Error::Inconsistent(format!(
            "block action of N_{lambda} has order {} but |W| = {w}",
            group.order()
        )));
    }
    Ok(group)
}

/// `Π_i r_i(λ)!`.
pub fn w_order_formula(lambda: &[usize]) -> u64 {
    multiplicities(lambda)
        .iter()
        .skip(1)
        .map(|&r| (1..=r as u64).product::<u64>())
        .product()
}

/// One representative (the lexicographically least element) per double
/// coset `A g B`, in increasing order.
pub fn double_cosets(a: &PermGroup, b: &PermGroup, bound: usize) -> Result<Vec<Perm>> {
    if a.degree() != b.degree() {
        return Err(Error::SizeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    let n = a.degree();
    check_bound(n, bound)?;
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut reps = Vec::new();
    for g in all_perms(n) {
        if seen.contains(&g) {
            continue;
        }
        for x in a.elements() {
            let xg = x.compose(&g);
            for y in b.elements() {
                seen.insert(xg.compose(y));
            }
        }
        reps.push(g);
    }
    Ok(reps)
}

/// Number of double cosets `S_λ \ S_n / S_μ`.
pub fn young_double_coset_count(
    lambda: &Composition,
    mu: &Composition,
    bound: usize,
) -> Result<usize> {
    let a = young_subgroup(lambda, bound)?;
    let b = young_subgroup(mu, bound)?;
    Ok(double_cosets(&a, &b, bound)?.len())
}

/// Mackey sum `Σ_d φ_{λ ∩ ᵈμ}` over explicit double cosets, with each
/// intersection identified by its orbit type.
pub fn mackey_by_permutations(
    lambda: &Composition,
    mu: &Composition,
    bound: usize,
) -> Result<CharElement> {
    let n = lambda.size();
    if n != mu.size() {
        return Err(Error::SizeMismatch {
            left: n,
            right: mu.size(),
        });
    }
    let a = young_subgroup(lambda, bound)?;
    let b = young_subgroup(mu, bound)?;
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for d in double_cosets(&a, &b, bound)? {
        let inter = a.intersect_conjugate(&b, &d);
        let nu = inter.orbit_type();
        let expected_order: u64 = nu
            .parts()
            .iter()
            .map(|&x| (1..=x as u64).product::<u64>())
            .product();
        if inter.order() as u64 != expected_order {
            return Err(Error::Inconsistent(format!(
                "S_{lambda} ∩ d S_{mu} d^-1 is not a Young subgroup of type {nu}"
            )));
        }
        *counts.entry(nu).or_default() += 1;
    }
    CharElement::from_terms(n, counts)
}

pub fn verify_eq5_permutation(
    lambda: &Composition,
    mu: &Composition,
    bound: usize,
) -> Result<bool> {
    Ok(mackey_by_permutations(lambda, mu, bound)? == phi_product(lambda, mu)?)
}

/// Sum over `N_λ \ S_n / N_μ` with weights `|W(λ)||W(μ)| / |W(λ,μ,d)|`.
pub fn normalizer_mackey(
    lambda: &Composition,
    mu: &Composition,
    bound: usize,
) -> Result<CharElement> {
    let n = lambda.size();
    if n != mu.size() {
        return Err(Error::SizeMismatch {
            left: n,
            right: mu.size(),
        });
    }
    let s_l = young_subgroup(lambda, bound)?;
    let s_m = young_subgroup(mu, bound)?;
    let (n_l, w_l) = normalizer_and_w(lambda, bound)?;
    let (n_m, w_m) = normalizer_and_w(mu, bound)?;
    let mut acc = CharElement::zero(n);
    for d in double_cosets(&n_l, &n_m, bound)? {
        let young_part = s_l.intersect_conjugate(&s_m, &d);
        let big_part = n_l.intersect_conjugate(&n_m, &d);
        if big_part.order() % young_part.order() != 0 {
            return Err(Error::NonIntegral);
        }
        let w_lmd = big_part.order() / young_part.order();
        let num = w_l * w_m;
        if num % w_lmd != 0 {
            return Err(Error::NonIntegral);
        }
        let term = CharElement::phi(&young_part.orbit_type().into()).scale(&(num / w_lmd).into());
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

pub fn verify_eq6(lambda: &Composition, mu: &Composition, bound: usize) -> Result<bool> {
    Ok(normalizer_mackey(lambda, mu, bound)? == phi_product(lambda, mu)?)
}

/// The permutation character of `S_n` on `S_n / S_λ`, counted directly:
/// at `g` it is `|{x : x⁻¹ g x ∈ S_λ}| / |S_λ|`.
pub fn permutation_character(lambda: &Composition, bound: usize) -> Result<Vec<u64>> {
    let n = lambda.size();
    let young = young_subgroup(lambda, bound)?;
    let perms = all_perms(n);
    Ok(crate::partitions::enumerate_partitions(n)
        .iter()
        .map(|rho| {
            let g = cycle_type_representative(rho);
            let fixing = perms
                .iter()
                .filter(|x| young.contains(&g.conjugate_by(&x.inverse())))
                .count();
            (fixing / young.order()) as u64
        })
        .collect())
}

/// The permutation with consecutive cycles of the given lengths.
pub fn cycle_type_representative(rho: &Partition) -> Perm {
    let n = rho.size();
    let mut images: Vec<u8> = (0..n as u8).collect();
    let mut start = 0;
    for &len in rho.parts() {
        for k in 0..len {
            images[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    Perm(images)
}

/// Maximal rank of an elementary abelian `p`-subgroup, by depth-first
/// search over increasing sequences of commuting order-`p` elements.
pub fn p_rank(group: &PermGroup, p: usize) -> usize {
    let order_p: Vec<&Perm> = group
        .elements()
        .iter()
        .filter(|g| !g.is_identity() && g.pow(p).is_identity())
        .collect();

    fn grow(
        candidates: &[&Perm],
        from: usize,
        gens: &mut Vec<usize>,
        subgroup: &HashSet<Perm>,
        p: usize,
    ) -> usize {
        let mut best = gens.len();
        for c in from..candidates.len() {
            let x = candidates[c];
            if subgroup.contains(x) {
                continue;
            }
            if !gens
                .iter()
                .all(|&g| candidates[g].compose(x) == x.compose(candidates[g]))
            {
                continue;
            }
            let mut bigger = HashSet::with_capacity(subgroup.len() * p);
            let mut power = Perm::identity(x.degree());
            for _ in 0..p {
                for h in subgroup {
                    bigger.insert(h.compose(&power));
                }
                power = x.compose(&power);
            }
            gens.push(c);
            best = best.max(grow(candidates, c + 1, gens, &bigger, p));
            gens.pop();
        }
        best
    }

    let id: HashSet<Perm> = HashSet::from([Perm::identity(group.degree())]);
    grow(&order_p, 0, &mut Vec::new(), &id, p)
}
