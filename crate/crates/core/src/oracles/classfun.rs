//! Characters of `S_n` as integer vectors on cycle types.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bareiss::solve_integral;
use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::partitions::{Composition, Partition, PartitionBasis};

/// Values on the cycle types of `S_n`, in partition-basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: usize,
    values: Vec<BigInt>,
}

impl ClassFunction {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn value_at(&self, cycle_type: &Partition) -> Option<&BigInt> {
        PartitionBasis::new(self.n)
            .index_of(cycle_type)
            .map(|i| &self.values[i])
    }

    pub fn pointwise_mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }
}

/// Number of ways to drop the (distinguishable) cycles of `cycles` into
/// labelled blocks so that block `i` receives total length `caps[i]`.
fn distributions(cycles: &[usize], caps: &[usize]) -> BigInt {
    fn go(
        cycles: &[usize],
        caps: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        let Some((&len, rest)) = cycles.split_first() else {
            return if caps.iter().all(|&c| c == 0) {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        };
        let mut key_caps = caps.clone();
        key_caps.sort_unstable();
        let key = (rest.len(), key_caps);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for b in 0..caps.len() {
            if caps[b] >= len {
                caps[b] -= len;
                total += go(rest, caps, memo);
                caps[b] += len;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    go(cycles, &mut caps.to_vec(), &mut HashMap::new())
}

/// `φ_λ` evaluated on every cycle type.
pub fn phi_classfunction(lambda: &Composition) -> ClassFunction {
    let n = lambda.size();
    let basis = PartitionBasis::new(n);
    let values = basis
        .partitions()
        .iter()
        .map(|rho| distributions(rho.parts(), lambda.parts()))
        .collect();
    ClassFunction { n, values }
}

/// Row `ρ`, column `κ`: `φ_κ(ρ)`.
fn evaluation_matrix(basis: &PartitionBasis) -> Vec<Vec<BigInt>> {
    let cols: Vec<ClassFunction> = basis
        .partitions()
        .iter()
        .map(|k| phi_classfunction(&k.as_composition()))
        .collect();
    (0..basis.len())
        .map(|r| cols.iter().map(|c| c.values[r].clone()).collect())
        .collect()
}

/// Coordinates of class functions in the φ-basis.
pub fn decompose(fs: &[ClassFunction], n: usize) -> Result<Vec<CharElement>> {
    let basis = PartitionBasis::new(n);
    let d = basis.len();
    if let Some(f) = fs.iter().find(|f| f.n != n) {
        return Err(Error::SizeMismatch {
            left: f.n,
            right: n,
        });
    }
    let a = evaluation_matrix(&basis);
    let b: Vec<Vec<BigInt>> = (0..d)
        .map(|r| fs.iter().map(|f| f.values[r].clone()).collect())
        .collect();
    let xs = solve_integral(&a, &b)?;
    xs.into_iter()
        .map(|x| {
            CharElement::from_terms(
                n,
                x.into_iter()
                    .enumerate()
                    .map(|(k, c)| (basis.get(k).clone(), c)),
            )
        })
        .collect()
}

/// `φ_λ φ_μ` computed as a pointwise product of class functions and then
/// re-expanded in the φ-basis.
pub fn product_via_classfunctions(lambda: &Composition, mu: &Composition) -> Result<CharElement> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    let f = phi_classfunction(lambda).pointwise_mul(&phi_classfunction(mu))?;
    Ok(decompose(&[f], lambda.size())?.remove(0))
}

/// Every basis product for degree `n`, in the same unordered-pair order as
/// [`crate::StructureConstants::pairs`], solved in one batch.
pub fn classfunction_products(n: usize) -> Result<Vec<CharElement>> {
    let basis = PartitionBasis::new(n);
    let d = basis.len();
    let phis: Vec<ClassFunction> = basis
        .partitions()
        .iter()
        .map(|k| phi_classfunction(&k.as_composition()))
        .collect();
    let mut rhs = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        for j in i..d {
            rhs.push(phis[i].pointwise_mul(&phis[j])?);
        }
    }
    decompose(&rhs, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn vals(f: &ClassFunction) -> Vec<i64> {
        f.values()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn class_function_values() {
        assert!(vals(&phi_classfunction(&cp("5"))).iter().all(|&v| v == 1));
        let reg = vals(&phi_classfunction(&cp("1,1,1,1")));
        assert_eq!(reg, [0, 0, 0, 0, 24]);
        // cycle types in basis order: (3), (2,1), (1,1,1)
        assert_eq!(vals(&phi_classfunction(&cp("2,1"))), [0, 1, 3]);
    }

    #[test]
    fn classfunction_products_examples() {
        let prod = product_via_classfunctions(&cp("3"), &cp("2,1")).unwrap();
        assert_eq!(prod, CharElement::phi(&cp("2,1")));

        let prod = product_via_classfunctions(&cp("2,1"), &cp("2,1")).unwrap();
        let expected = CharElement::phi(&cp("2,1"))
            .add(&CharElement::phi(&cp("1,1,1")))
            .unwrap();
        assert_eq!(prod, expected);

        let prod = product_via_classfunctions(&cp("1,1"), &cp("1,1")).unwrap();
        assert_eq!(prod, CharElement::phi(&cp("1,1")).scale(&BigInt::from(2)));
    }
}
