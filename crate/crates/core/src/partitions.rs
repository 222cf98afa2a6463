//! Compositions, partitions and the combinatorial statistics built on them.
//!
//! Partitions of `n` are always listed in reverse lexicographic order,
//! `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`, and the [`Ord`] instance of
//! [`Partition`] agrees with that listing.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

/// A composition whose parts are non-increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse {
                input: join_parts(&parts),
                reason: "parts must be positive".into(),
            });
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reorders the parts into a partition.
    pub fn normalize(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let c = Composition::new(parts)?;
        if c.0.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                input: join_parts(&c.0),
                reason: "parts of a partition must be non-increasing".into(),
            });
        }
        Ok(Partition(c.0))
    }

    /// Crate-internal constructor for part lists already known to be valid.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&x| x > 0));
        Partition(parts)
    }

    /// The one-part partition `(n)`, or `()` for `n = 0`.
    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            Partition(vec![])
        } else {
            Partition(vec![n])
        }
    }

    /// The partition `(1, ..., 1)` of `n`.
    pub fn singletons(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition(p.0)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join_parts(parts: &[usize]) -> String {
    let strs: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
    strs.join(",")
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(vec![]);
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_parts(&self.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_parts(&self.0))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?).map_err(|e| match e {
            Error::Parse { reason, .. } => Error::Parse {
                input: s.to_string(),
                reason,
            },
            other => other,
        })
    }
}

/// Parses `"a,b,c"` with the parts in any order.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<Composition>()?.normalize())
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            prefix.push(first);
            go(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The partitions of `n` with a position lookup, used as the coordinate
/// basis of the character ring.
#[derive(Clone, Debug)]
pub struct PartitionBasis {
    n: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl PartitionBasis {
    pub fn new(n: usize) -> Self {
        let parts = enumerate_partitions(n);
        let index = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PartitionBasis { n, parts, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Position of `λ̂`, failing if `λ` is not a composition of `n`.
    pub fn position(&self, lambda: &Composition) -> Result<usize> {
        let hat = lambda.normalize();
        self.index_of(&hat)
            .ok_or_else(|| Error::ForeignPartition(hat.to_string(), self.n))
    }
}

impl PartialEq for PartitionBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for PartitionBasis {}

/// `r_i(λ)`: the number of parts equal to `i`.
pub fn multiplicity(lambda: &[usize], i: usize) -> usize {
    lambda.iter().filter(|&&x| x == i).count()
}

/// Multiplicities `r_1(λ), ..., r_n(λ)`, indexed from 1 (slot 0 unused).
pub fn multiplicities(lambda: &[usize]) -> Vec<usize> {
    let n: usize = lambda.iter().sum();
    let mut r = vec![0; n + 1];
    for &x in lambda {
        r[x] += 1;
    }
    r
}

/// `π_p(λ) = Σ_i ⌊r_i(λ)/p⌋`.
pub fn pi_p(lambda: &[usize], p: usize) -> usize {
    multiplicities(lambda).iter().skip(1).map(|r| r / p).sum()
}

/// `Part_i^{(p)}(n)`, in the basis order.
pub fn partitions_with_pi_at_least(n: usize, p: usize, i: usize) -> Vec<Partition> {
    enumerate_partitions(n)
        .into_iter()
        .filter(|l| pi_p(l.parts(), p) >= i)
        .collect()
}

/// Whether `S_λ` lies in a conjugate of `S_μ`: the parts of `λ` can be
/// grouped into blocks whose sums are the parts of `μ`.
pub fn is_refinement(lambda: &Composition, mu: &Composition) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    let items = lambda.normalize().0;
    let mut bins = mu.normalize().0;

    fn place(items: &[usize], bins: &mut [usize]) -> bool {
        let Some((&first, rest)) = items.split_first() else {
            return true;
        };
        for b in 0..bins.len() {
            if bins[b] < first || bins[..b].contains(&bins[b]) {
                continue;
            }
            bins[b] -= first;
            let ok = place(rest, bins);
            bins[b] += first;
            if ok {
                return true;
            }
        }
        false
    }
    Ok(place(&items, &mut bins))
}

/// The pair `(j(λ), m(λ))` ordering the partitions in the inductive
/// construction of the radical layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JmPair {
    pub j: usize,
    pub m: usize,
}

impl JmPair {
    /// `self ≼ other`: smaller `j` first, then larger `m` first.
    pub fn leq(&self, other: &JmPair) -> bool {
        self.j < other.j || (self.j == other.j && self.m >= other.m)
    }

    pub fn lt(&self, other: &JmPair) -> bool {
        self.leq(other) && self != other
    }
}

impl fmt::Display for JmPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(j={}, m={})", self.j, self.m)
    }
}

pub fn jm_leq(a: &JmPair, b: &JmPair) -> bool {
    a.leq(b)
}

/// `m` is the largest part whose multiplicity is prime to `p` (or 0);
/// `j` is the smallest part occurring at least `p` times (or 0 when there
/// is none).
pub fn jm(lambda: &[usize], p: usize) -> JmPair {
    let r = multiplicities(lambda);
    let m = (1..r.len())
        .rev()
        .find(|&i| !r[i].is_multiple_of(p))
        .unwrap_or(0);
    let j = (1..r.len()).find(|&i| r[i] >= p).unwrap_or(0);
    JmPair { j, m }
}

/// `ν(n, j, k) = (n - jk, j, ..., j)` with `k` copies of `j`; the leading
/// part is dropped when `n = jk`.
pub fn nu(n: usize, j: usize, k: usize) -> Result<Composition> {
    if j == 0 {
        return Err(Error::Precondition("nu: part size must be positive".into()));
    }
    let used = j
        .checked_mul(k)
        .filter(|&jk| jk <= n)
        .ok_or_else(|| Error::Precondition(format!("nu: {j}*{k} exceeds {n}")))?;
    let mut parts = Vec::with_capacity(k + 1);
    if n > used {
        parts.push(n - used);
    }
    parts.extend(std::iter::repeat_n(j, k));
    Ok(Composition(parts))
}

/// `α ⊔ β`.
pub fn concat(alpha: &Composition, beta: &Composition) -> Composition {
    let mut parts = alpha.0.clone();
    parts.extend_from_slice(&beta.0);
    Composition(parts)
}

/// The data used to peel one `p`-fold repetition off `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartDecomposition {
    pub jm: JmPair,
    /// `ν(n, j, p)`.
    pub nu: Composition,
    /// `λ` with one part `m` (if `m > 0`) and `p` parts `j` removed.
    pub alpha: Partition,
    /// `(α ⊔ (m + jp))^`.
    pub lambda_tilde: Partition,
}

/// Splits `λ` with `π_p(λ) ≥ 2` into `ν(n,j,p)` and `λ̃` such that
/// `φ̄_ν φ̄_λ̃` has leading term `φ̄_λ`. The defining identities are checked
/// before returning.
pub fn heart_decomposition(lambda: &Partition, p: usize) -> Result<HeartDecomposition> {
    let n = lambda.size();
    let pi = pi_p(lambda.parts(), p);
    if pi < 2 {
        return Err(Error::Precondition(format!(
            "heart_decomposition needs pi_{p}({lambda}) >= 2, got {pi}"
        )));
    }
    let pair = jm(lambda.parts(), p);
    let JmPair { j, m } = pair;
    debug_assert!(j >= 1);

    let mut rest = lambda.0.clone();
    let mut remove = |part: usize, times: usize| -> Result<()> {
        for _ in 0..times {
            let pos = rest.iter().position(|&x| x == part).ok_or_else(|| {
                Error::Inconsistent(format!("cannot remove part {part} from {lambda}"))
            })?;
            rest.remove(pos);
        }
        Ok(())
    };
    if m > 0 {
        remove(m, 1)?;
    }
    remove(j, p)?;
    let alpha = Partition(rest);

    let nu_full = nu(n, j, p)?;
    let nu_zero = nu(m + j * p, j, p)?;
    let lambda_tilde = concat(&alpha.as_composition(), &Composition(vec![m + j * p])).normalize();

    if concat(&alpha.as_composition(), &nu_zero).normalize() != *lambda {
        return Err(Error::Inconsistent(format!(
            "alpha ⊔ nu0 does not recover {lambda}"
        )));
    }
    if pi_p(lambda_tilde.parts(), p) + 1 != pi {
        return Err(Error::Inconsistent(format!(
            "pi_{p}({lambda_tilde}) is not pi_{p}({lambda}) - 1"
        )));
    }
    Ok(HeartDecomposition {
        jm: pair,
        nu: nu_full,
        alpha,
        lambda_tilde,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn cp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn count_partitions(n: usize) -> usize {
        // Euler's pentagonal recurrence.
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p[n] as usize
    }

    #[test]
    fn enumeration_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition(vec![])]);
        let four: Vec<String> = enumerate_partitions(4)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(enumerate_partitions(10).len(), 42);
        for n in 0..=15 {
            let parts = enumerate_partitions(n);
            assert_eq!(parts.len(), count_partitions(n));
            assert!(parts.windows(2).all(|w| w[0] < w[1]), "order at n={n}");
        }
    }

    #[test]
    fn normalize_and_multiplicity() {
        assert_eq!(cp("1,3,2").normalize(), pt("3,2,1"));
        assert_eq!(cp("2,2").normalize(), pt("2,2"));
        assert_eq!(cp("1,1,4,1").normalize(), pt("4,1,1,1"));
        assert_eq!(multiplicity(&[2, 2, 1, 1, 1], 1), 3);
        assert_eq!(multiplicity(&[2, 2, 1, 1, 1], 2), 2);
        assert_eq!(multiplicity(&[5], 3), 0);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("3,x".parse::<Composition>().is_err());
        assert!("3,0,1".parse::<Composition>().is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("".parse::<Composition>().unwrap(), Composition::default());
        assert_eq!(" 1, 2 ".parse::<Partition>().unwrap(), pt("2,1"));
    }

    #[test]
    fn pi_p_values() {
        assert_eq!(pi_p(&[2, 2, 1, 1, 1], 2), 2);
        assert_eq!(pi_p(&[7], 2), 0);
        assert_eq!(pi_p(&[7], 3), 0);
        assert_eq!(pi_p(&[1; 6], 2), 3);
    }

    #[test]
    fn pi_filters() {
        let s: Vec<String> = partitions_with_pi_at_least(4, 2, 1)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(s, ["2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(partitions_with_pi_at_least(4, 2, 0).len(), 5);
        assert_eq!(
            partitions_with_pi_at_least(6, 2, 3),
            vec![pt("1,1,1,1,1,1")]
        );
        assert!(partitions_with_pi_at_least(6, 2, 4).is_empty());
    }

    #[test]
    fn refinement() {
        assert!(is_refinement(&cp("1,1,2"), &cp("2,2")).unwrap());
        assert!(!is_refinement(&cp("3,1"), &cp("2,2")).unwrap());
        assert!(is_refinement(&cp("1,1,1,1"), &cp("4")).unwrap());
        assert!(is_refinement(&cp("3,3"), &cp("1,2,3")).is_ok_and(|b| !b));
        assert!(matches!(
            is_refinement(&cp("1"), &cp("2")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn jm_values() {
        assert_eq!(jm(&[2, 2, 1, 1, 1], 2), JmPair { j: 1, m: 1 });
        assert_eq!(jm(&[3, 2, 1], 2), JmPair { j: 0, m: 3 });
        assert_eq!(jm(&[1, 1], 2), JmPair { j: 1, m: 0 });
    }

    #[test]
    fn jm_order() {
        let jp = |j, m| JmPair { j, m };
        assert!(jm_leq(&jp(1, 5), &jp(2, 0)));
        assert!(jm_leq(&jp(1, 3), &jp(1, 3)));
        assert!(!jp(1, 3).lt(&jp(1, 3)));
        assert!(!jm_leq(&jp(2, 1), &jp(2, 4)));
        assert!(jp(2, 4).lt(&jp(2, 1)));
    }

    #[test]
    fn nu_and_concat() {
        assert_eq!(nu(7, 1, 2).unwrap(), cp("5,1,1"));
        assert_eq!(nu(6, 2, 3).unwrap(), cp("2,2,2"));
        assert_eq!(nu(7, 2, 3).unwrap(), cp("1,2,2,2"));
        assert_eq!(nu(5, 2, 0).unwrap(), cp("5"));
        assert!(nu(5, 2, 3).is_err());
        assert!(nu(5, 0, 1).is_err());
        assert_eq!(concat(&cp("2,2"), &cp("3")), cp("2,2,3"));
        assert_eq!(concat(&cp(""), &cp("4,1")), cp("4,1"));
        assert_eq!(concat(&cp("1"), &cp("1")), cp("1,1"));
    }

    #[test]
    fn heart_examples() {
        let h = heart_decomposition(&pt("2,2,1,1,1"), 2).unwrap();
        assert_eq!(h.nu, cp("5,1,1"));
        assert_eq!(h.lambda_tilde, pt("3,2,2"));

        let h = heart_decomposition(&pt("1,1,1,1"), 2).unwrap();
        assert_eq!(h.nu, cp("2,1,1"));
        assert_eq!(h.lambda_tilde, pt("2,1,1"));

        let h = heart_decomposition(&pt("2,2,2,1,1,1"), 3).unwrap();
        assert_eq!(h.jm, JmPair { j: 1, m: 0 });
        assert_eq!(h.nu, cp("6,1,1,1"));
        assert_eq!(h.alpha, pt("2,2,2"));
        assert_eq!(h.lambda_tilde, pt("3,2,2,2"));

        assert!(matches!(
            heart_decomposition(&pt("2,1,1"), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn heart_postconditions_hold_broadly() {
        for p in [2, 3, 5] {
            for n in 0..=12 {
                for lambda in partitions_with_pi_at_least(n, p, 2) {
                    heart_decomposition(&lambda, p)
                        .unwrap_or_else(|e| panic!("{lambda} p={p}: {e}"));
                }
            }
        }
    }
}
