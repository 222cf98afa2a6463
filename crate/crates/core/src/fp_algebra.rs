//! The reduction `R_n / p R_n` and its radical filtration.
//!
//! Vectors are dense in the partition basis. Subspaces are kept in reduced
//! row echelon form, which is unique, so subspace equality is plain data
//! equality.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::charring::{CharElement, StructureConstants};
use crate::error::{Error, Result};
use crate::partitions::{Partition, PartitionBasis};

/// A prime below `2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        let ok = (2..1 << 16).contains(&p)
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d));
        if ok {
            Ok(Prime(p as u32))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        let mut result = 1u32;
        let mut base = a % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of `R̄_n` in the φ̄-basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    n: usize,
    p: Prime,
    coords: Vec<u32>,
}

impl FpVector {
    pub fn zero(n: usize, dim: usize, p: Prime) -> Self {
        FpVector {
            n,
            p,
            coords: vec![0; dim],
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }
}

/// Coordinate-wise residue of an integral element.
pub fn reduce_mod_p(a: &CharElement, p: Prime) -> FpVector {
    let basis = PartitionBasis::new(a.degree());
    let modulus = BigInt::from(p.get());
    let mut v = FpVector::zero(a.degree(), basis.len(), p);
    for (lambda, c) in a.terms() {
        let r = c.mod_floor(&modulus).to_u32().expect("residue below p");
        v.coords[basis.index_of(lambda).expect("partition of n")] = r;
    }
    v
}

/// A square matrix over `F_p`; row `i` is the image of the `i`-th basis
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: Vec<Vec<u32>>,
}

impl FpMatrix {
    pub fn identity(d: usize, p: Prime) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| u32::from(i == j)).collect())
            .collect();
        FpMatrix { p, rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The map `x ↦ other(self(x))`.
    pub fn then(&self, other: &FpMatrix) -> FpMatrix {
        let d = self.dim();
        let p = self.p;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![0u32; d];
                for (k, &a) in row.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (o, &b) in out.iter_mut().zip(&other.rows[k]) {
                        *o = p.add(*o, p.mul(a, b));
                    }
                }
                out
            })
            .collect();
        FpMatrix { p, rows }
    }

    pub fn pow(&self, k: u32) -> FpMatrix {
        let mut out = FpMatrix::identity(self.dim(), self.p);
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// `{x : x · M = 0}` in canonical form.
    pub fn kernel(&self, n: usize) -> FpSubspace {
        let d = self.dim();
        let p = self.p;
        // Row-reduce the transpose; free columns give the null space.
        let transpose: Vec<Vec<u32>> = (0..d)
            .map(|c| self.rows.iter().map(|r| r[c]).collect())
            .collect();
        let rref = FpSubspace::from_vectors(n, d, p, transpose);
        let pivots = rref.pivots();
        let mut kernel = Vec::new();
        for free in (0..d).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; d];
            v[free] = 1;
            for (row, &pc) in rref.rows.iter().zip(&pivots) {
                v[pc] = p.neg(row[free]);
            }
            kernel.push(v);
        }
        FpSubspace::from_vectors(n, d, p, kernel)
    }
}

/// A subspace of the φ̄-coordinate space in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpSubspace {
    n: usize,
    p: Prime,
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

impl FpSubspace {
    pub fn zero(n: usize, ambient: usize, p: Prime) -> Self {
        FpSubspace {
            n,
            p,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(n: usize, ambient: usize, p: Prime) -> Self {
        FpSubspace {
            n,
            p,
            ambient,
            rows: FpMatrix::identity(ambient, p).rows,
        }
    }

    /// Canonical form of the span of `vectors`.
    pub fn from_vectors(n: usize, ambient: usize, p: Prime, vectors: Vec<Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vectors {
            debug_assert_eq!(v.len(), ambient);
            // Reduce against the current (fully reduced) rows.
            for (row, &pc) in rows.iter().zip(&pivots) {
                let c = v[pc];
                if c != 0 {
                    let f = p.neg(c);
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = p.add(*x, p.mul(f, r));
                    }
                }
            }
            let Some(pc) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = p.inv(v[pc]);
            for x in v.iter_mut() {
                *x = p.mul(*x, inv);
            }
            for row in rows.iter_mut() {
                let c = row[pc];
                if c != 0 {
                    let f = p.neg(c);
                    for (x, &r) in row.iter_mut().zip(&v) {
                        *x = p.add(*x, p.mul(f, r));
                    }
                }
            }
            let at = pivots.partition_point(|&q| q < pc);
            pivots.insert(at, pc);
            rows.insert(at, v);
        }
        FpSubspace {
            n,
            p,
            ambient,
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<FpVector> {
        self.rows
            .iter()
            .map(|r| FpVector {
                n: self.n,
                p: self.p,
                coords: r.clone(),
            })
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect()
    }

    /// Whether every basis row is a unit vector, i.e. the subspace is
    /// spanned by basis elements.
    pub fn is_coordinate(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().filter(|&&x| x != 0).count() == 1)
    }

    pub fn sum(&self, other: &FpSubspace) -> FpSubspace {
        let vectors = self.rows.iter().chain(&other.rows).cloned().collect();
        FpSubspace::from_vectors(self.n, self.ambient, self.p, vectors)
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        other.sum(self).dim() == other.dim()
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        let with = FpSubspace::from_vectors(
            self.n,
            self.ambient,
            self.p,
            self.rows
                .iter()
                .cloned()
                .chain([v.coords.clone()])
                .collect(),
        );
        with.dim() == self.dim()
    }
}

/// `R̄_n` for one prime: the structure constants reduced mod `p`.
#[derive(Clone, Debug)]
pub struct FpAlgebra {
    sc: Arc<StructureConstants>,
    p: Prime,
    table: Vec<Vec<(usize, u32)>>,
}

impl FpAlgebra {
    pub fn new(n: usize, p: Prime) -> Result<Self> {
        Ok(Self::from_structure_constants(
            StructureConstants::for_degree(n)?,
            p,
        ))
    }

    pub fn from_structure_constants(sc: Arc<StructureConstants>, p: Prime) -> Self {
        let modulus = p.get() as u64;
        let table = sc
            .pairs()
            .map(|(i, j)| {
                sc.terms(i, j)
                    .iter()
                    .filter_map(|&(k, c)| {
                        let r = (c % modulus) as u32;
                        (r != 0).then_some((k, r))
                    })
                    .collect()
            })
            .collect();
        FpAlgebra { sc, p, table }
    }

    pub fn n(&self) -> usize {
        self.sc.n()
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn basis(&self) -> &PartitionBasis {
        self.sc.basis()
    }

    /// `φ̄_λ`.
    pub fn basis_vector(&self, lambda: &Partition) -> Result<FpVector> {
        let i = self
            .basis()
            .index_of(lambda)
            .ok_or_else(|| Error::ForeignPartition(lambda.to_string(), self.n()))?;
        let mut v = FpVector::zero(self.n(), self.dim(), self.p);
        v.coords[i] = 1;
        Ok(v)
    }

    pub fn one(&self) -> FpVector {
        self.basis_vector(&Partition::trivial(self.n()))
            .expect("trivial partition")
    }

    pub fn reduce(&self, a: &CharElement) -> Result<FpVector> {
        if a.degree() != self.n() {
            return Err(Error::SizeMismatch {
                left: a.degree(),
                right: self.n(),
            });
        }
        Ok(reduce_mod_p(a, self.p))
    }

    fn check(&self, v: &FpVector) -> Result<()> {
        if v.n != self.n() || v.coords.len() != self.dim() {
            return Err(Error::SizeMismatch {
                left: v.n,
                right: self.n(),
            });
        }
        if v.p != self.p {
            return Err(Error::Precondition(format!(
                "vector over F_{} used in algebra over F_{}",
                v.p, self.p
            )));
        }
        Ok(())
    }

    fn multiply_unchecked(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.dim();
        let p = self.p;
        let mut out = vec![0u64; d];
        let modulus = p.get() as u64;
        for (i, &ai) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &bj) in b.iter().enumerate().filter(|(_, &x)| x != 0) {
                let coef = (ai as u64 * bj as u64) % modulus;
                for &(k, c) in &self.table[crate::charring::pair_index(i, j, d)] {
                    out[k] = (out[k] + coef * c as u64) % modulus;
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn multiply(&self, a: &FpVector, b: &FpVector) -> Result<FpVector> {
        self.check(a)?;
        self.check(b)?;
        Ok(FpVector {
            n: self.n(),
            p: self.p,
            coords: self.multiply_unchecked(&a.coords, &b.coords),
        })
    }

    pub fn pow(&self, x: &FpVector, k: usize) -> Result<FpVector> {
        let mut out = self.one();
        for _ in 0..k {
            out = self.multiply(&out, x)?;
        }
        Ok(out)
    }

    /// Matrix of `x ↦ x^p`, which is `F_p`-linear in characteristic `p`
    /// for a commutative algebra.
    pub fn frobenius_matrix(&self) -> FpMatrix {
        let d = self.dim();
        let rows = (0..d)
            .map(|i| {
                let mut e = vec![0u32; d];
                e[i] = 1;
                let mut acc = e.clone();
                for _ in 1..self.p.get() {
                    acc = self.multiply_unchecked(&acc, &e);
                }
                acc
            })
            .collect();
        FpMatrix { p: self.p, rows }
    }

    /// Smallest `K` with `p^K ≥ dim`; `x^{p^K} = 0` for every nilpotent `x`.
    pub fn frobenius_depth(&self) -> u32 {
        let d = self.dim() as u64;
        let p = self.p.get() as u64;
        let mut k = 0;
        let mut pk = 1u64;
        while pk < d {
            pk *= p;
            k += 1;
        }
        k
    }

    /// `ker F^k` for the Frobenius map `F`.
    pub fn frobenius_kernel(&self, k: u32) -> FpSubspace {
        self.frobenius_matrix().pow(k).kernel(self.n())
    }

    /// The Jacobson radical, i.e. the nilpotent elements.
    pub fn radical(&self) -> FpSubspace {
        self.frobenius_kernel(self.frobenius_depth())
    }

    fn check_subspace(&self, u: &FpSubspace) -> Result<()> {
        if u.n != self.n() || u.p != self.p || u.ambient != self.dim() {
            return Err(Error::Precondition(format!(
                "subspace of R_{} over F_{} used in R_{} over F_{}",
                u.n,
                u.p,
                self.n(),
                self.p
            )));
        }
        Ok(())
    }

    /// `UV`: the span of all products `uv`.
    pub fn subspace_product(&self, u: &FpSubspace, v: &FpSubspace) -> Result<FpSubspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut products = Vec::with_capacity(u.dim() * v.dim());
        for a in &u.rows {
            for b in &v.rows {
                products.push(self.multiply_unchecked(a, b));
            }
        }
        Ok(FpSubspace::from_vectors(
            self.n(),
            self.dim(),
            self.p,
            products,
        ))
    }

    /// `[A, Rad, Rad², ...]`, ending with the first zero power.
    pub fn loewy_series(&self) -> Vec<FpSubspace> {
        let rad = self.radical();
        let mut series = vec![FpSubspace::full(self.n(), self.dim(), self.p)];
        let mut current = series[0].clone();
        while !current.is_zero() {
            let next = if series.len() == 1 {
                rad.clone()
            } else {
                self.subspace_product(&current, &rad).expect("same algebra")
            };
            if next.dim() >= current.dim() {
                // A non-nilpotent radical would loop forever; stop and let
                // the caller's comparison report it.
                series.push(next);
                break;
            }
            series.push(next.clone());
            current = next;
        }
        series
    }

    /// Index of the first vanishing radical power.
    pub fn loewy_length(&self) -> usize {
        let series = self.loewy_series();
        series
            .iter()
            .position(|s| s.is_zero())
            .unwrap_or(series.len())
    }

    /// `⊕_{λ ∈ S} F_p φ̄_λ`.
    pub fn span_of_partitions<'a, I>(&self, parts: I) -> Result<FpSubspace>
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let vectors = parts
            .into_iter()
            .map(|l| self.basis_vector(l).map(|v| v.coords))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpSubspace::from_vectors(
            self.n(),
            self.dim(),
            self.p,
            vectors,
        ))
    }

    /// `rad_i`: the span of `φ̄_λ` with `π_p(λ) ≥ i`.
    pub fn pi_layer(&self, i: usize) -> FpSubspace {
        let parts = crate::partitions::partitions_with_pi_at_least(self.n(), self.p.as_usize(), i);
        self.span_of_partitions(&parts).expect("partitions of n")
    }
}

pub fn multiply_mod_p(a: &FpVector, b: &FpVector) -> Result<FpVector> {
    FpAlgebra::new(a.n, a.p)?.multiply(a, b)
}

pub fn frobenius_matrix(n: usize, p: Prime) -> Result<FpMatrix> {
    Ok(FpAlgebra::new(n, p)?.frobenius_matrix())
}

pub fn radical(n: usize, p: Prime) -> Result<FpSubspace> {
    Ok(FpAlgebra::new(n, p)?.radical())
}

pub fn loewy_series(n: usize, p: Prime) -> Result<Vec<FpSubspace>> {
    Ok(FpAlgebra::new(n, p)?.loewy_series())
}

pub fn span_of_partitions(parts: &[Partition], n: usize, p: Prime) -> Result<FpSubspace> {
    FpAlgebra::new(n, p)?.span_of_partitions(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Composition;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn phi(s: &str) -> CharElement {
        CharElement::phi(&s.parse::<Composition>().unwrap())
    }

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn dims(series: &[FpSubspace]) -> Vec<usize> {
        series.iter().map(|s| s.dim()).collect()
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(65521).is_ok());
        for bad in [0, 1, 4, 9, 65536, 1 << 20] {
            assert_eq!(Prime::new(bad), Err(Error::NotPrime(bad)));
        }
    }

    #[test]
    fn reduction() {
        assert!(reduce_mod_p(&phi("1,1").scale(&2.into()), prime(2)).is_zero());
        let v = reduce_mod_p(&phi("2,1").add(&phi("1,1,1")).unwrap(), prime(3));
        assert_eq!(v.coords(), [0, 1, 1]);
        let v = reduce_mod_p(&phi("1,1,1,1").scale(&24.into()), prime(5));
        assert_eq!(v.coords(), [0, 0, 0, 0, 4]);
        let v = reduce_mod_p(&phi("2").scale(&(-1).into()), prime(3));
        assert_eq!(v.coords(), [2, 0]);
    }

    #[test]
    fn products_mod_p() {
        let a = FpAlgebra::new(2, prime(2)).unwrap();
        let x = a.basis_vector(&pt("1,1")).unwrap();
        assert!(a.multiply(&x, &x).unwrap().is_zero());
        assert_eq!(a.multiply(&a.one(), &x).unwrap(), x);

        let a = FpAlgebra::new(3, prime(2)).unwrap();
        let x = a.basis_vector(&pt("2,1")).unwrap();
        assert_eq!(a.multiply(&x, &x).unwrap().coords(), [0, 1, 1]);

        let other = FpAlgebra::new(3, prime(3)).unwrap();
        assert!(other.multiply(&other.one(), &x).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(
            frobenius_matrix(1, prime(7)).unwrap(),
            FpMatrix::identity(1, prime(7))
        );
        let f = frobenius_matrix(2, prime(2)).unwrap();
        assert_eq!(f.rows(), [vec![1, 0], vec![0, 0]]);
        let f = frobenius_matrix(3, prime(3)).unwrap();
        assert_eq!(f.rows()[2], vec![0, 0, 0]);
    }

    #[test]
    fn radicals() {
        let r = radical(2, prime(2)).unwrap();
        assert_eq!(r.rows(), [vec![0, 1]]);
        let r = radical(3, prime(3)).unwrap();
        assert_eq!(r.rows(), [vec![0, 0, 1]]);
        assert!(radical(3, prime(5)).unwrap().is_zero());
    }

    #[test]
    fn frobenius_kernel_stabilizes() {
        for (n, p) in [(4, 2), (6, 2), (6, 3), (7, 5)] {
            let a = FpAlgebra::new(n, prime(p)).unwrap();
            let k = a.frobenius_depth();
            assert_eq!(
                a.frobenius_kernel(k),
                a.frobenius_kernel(k + 1),
                "n={n} p={p}"
            );
        }
    }

    #[test]
    fn subspace_products() {
        let a = FpAlgebra::new(4, prime(2)).unwrap();
        let full = FpSubspace::full(4, 5, prime(2));
        let zero = FpSubspace::zero(4, 5, prime(2));
        assert_eq!(a.subspace_product(&full, &zero).unwrap(), zero);
        let unit = a.span_of_partitions([&pt("4")]).unwrap();
        let rad1 = a.pi_layer(1);
        assert_eq!(a.subspace_product(&unit, &rad1).unwrap(), rad1);
        let sq = a.subspace_product(&rad1, &rad1).unwrap();
        assert_eq!(sq, a.span_of_partitions([&pt("1,1,1,1")]).unwrap());
    }

    #[test]
    fn loewy_examples() {
        assert_eq!(dims(&loewy_series(2, prime(2)).unwrap()), [2, 1, 0]);
        assert_eq!(dims(&loewy_series(4, prime(2)).unwrap()), [5, 3, 1, 0]);
        assert_eq!(dims(&loewy_series(3, prime(5)).unwrap()), [3, 0]);
        assert_eq!(FpAlgebra::new(4, prime(2)).unwrap().loewy_length(), 3);
    }

    #[test]
    fn partition_spans() {
        let p = prime(2);
        let all = crate::partitions::enumerate_partitions(4);
        assert_eq!(
            span_of_partitions(&all, 4, p).unwrap(),
            FpSubspace::full(4, 5, p)
        );
        assert!(span_of_partitions(&[], 4, p).unwrap().is_zero());
        let layer = crate::partitions::partitions_with_pi_at_least(4, 2, 1);
        assert_eq!(span_of_partitions(&layer, 4, p).unwrap().dim(), 3);
        assert!(matches!(
            span_of_partitions(&[pt("3")], 4, p),
            Err(Error::ForeignPartition(..))
        ));
    }

    #[test]
    fn echelon_form_is_canonical() {
        let p = prime(5);
        let a = FpSubspace::from_vectors(0, 3, p, vec![vec![1, 2, 3], vec![0, 1, 4]]);
        let b =
            FpSubspace::from_vectors(0, 3, p, vec![vec![1, 3, 2], vec![2, 4, 1], vec![1, 2, 3]]);
        assert_eq!(a, b);
        assert_eq!(a.rows(), [vec![1, 0, 0], vec![0, 1, 4]]);
        assert!(a.contains(&FpVector {
            n: 0,
            p,
            coords: vec![2, 3, 2]
        }));
    }
}
