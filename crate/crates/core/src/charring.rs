//! The ring `R_n` of virtual characters of `S_n` in the basis of
//! permutation characters `φ_λ = Ind_{S_λ}^{S_n} 1`.
//!
//! Products of basis elements come from the Mackey formula, with the double
//! cosets `S_λ \ S_n / S_μ` represented by contingency tables with row sums
//! `λ` and column sums `μ`. The table with entries `t_ij` contributes
//! `φ_ν` where `ν` is the multiset of nonzero entries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::{Composition, Partition, PartitionBasis};

/// An element of `R_n` stored by its nonzero coordinates in the φ-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharElement {
    n: usize,
    coords: BTreeMap<Partition, BigInt>,
}

impl CharElement {
    pub fn zero(n: usize) -> Self {
        CharElement {
            n,
            coords: BTreeMap::new(),
        }
    }

    /// `φ_λ̂`.
    pub fn phi(lambda: &Composition) -> Self {
        let mut e = Self::zero(lambda.size());
        e.coords.insert(lambda.normalize(), BigInt::one());
        e
    }

    /// The unit `φ_(n)`.
    pub fn one(n: usize) -> Self {
        Self::phi(&Partition::trivial(n).into())
    }

    pub fn from_terms<I, C>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigInt>,
    {
        let mut e = Self::zero(n);
        for (lambda, c) in terms {
            if lambda.size() != n {
                return Err(Error::ForeignPartition(lambda.to_string(), n));
            }
            e.add_term(lambda, c.into());
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.coords.get(lambda).cloned().unwrap_or_default()
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coords.iter()
    }

    pub(crate) fn add_term(&mut self, lambda: Partition, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coords.entry(lambda) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CharElement) -> Result<CharElement> {
        check_degree(self.n, other.n)?;
        let mut out = self.clone();
        for (k, v) in &other.coords {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> CharElement {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.coords {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coords.values().sum()
    }
}

fn check_degree(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left: a, right: b })
    }
}

/// Renders as `2*phi[1,1] + phi[2]`, or `0`.
impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (idx, (lambda, c)) in self.coords.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "phi[{lambda}]")?;
        }
        Ok(())
    }
}

/// A nonnegative integer matrix with prescribed margins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyTable {
    pub rows: Vec<Vec<usize>>,
    pub row_sums: Composition,
    pub col_sums: Composition,
}

impl ContingencyTable {
    /// `λ ∩ ᵈμ`: the nonzero entries in row-major order.
    pub fn to_composition(&self) -> Composition {
        let parts = self
            .rows
            .iter()
            .flatten()
            .copied()
            .filter(|&x| x > 0)
            .collect();
        Composition::new(parts).expect("nonzero entries")
    }
}

pub fn table_to_composition(t: &ContingencyTable) -> Composition {
    t.to_composition()
}

/// Streams every table with row sums `λ` and column sums `μ`, in
/// decreasing row-major lexicographic order of the entries.
pub struct TableIter {
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
    cells: Vec<usize>,
    row_rem: Vec<usize>,
    col_rem: Vec<usize>,
    started: bool,
    done: bool,
}

impl TableIter {
    fn new(lambda: &Composition, mu: &Composition) -> Self {
        let r = lambda.len();
        let s = mu.len();
        let mut it = TableIter {
            row_sums: lambda.parts().to_vec(),
            col_sums: mu.parts().to_vec(),
            cells: vec![0; r * s],
            row_rem: lambda.parts().to_vec(),
            col_rem: mu.parts().to_vec(),
            started: false,
            done: false,
        };
        it.fill_from(0);
        it
    }

    fn s(&self) -> usize {
        self.col_sums.len()
    }

    fn bounds(&self, k: usize) -> (usize, usize) {
        let s = self.s();
        let (i, j) = (k / s, k % s);
        let later: usize = self.col_rem[j + 1..].iter().sum();
        let lo = self.row_rem[i].saturating_sub(later);
        let hi = self.row_rem[i].min(self.col_rem[j]);
        (lo, hi)
    }

    fn set(&mut self, k: usize, v: usize) {
        let s = self.s();
        let (i, j) = (k / s, k % s);
        self.cells[k] = v;
        self.row_rem[i] -= v;
        self.col_rem[j] -= v;
    }

    fn unset(&mut self, k: usize) {
        let s = self.s();
        let (i, j) = (k / s, k % s);
        let v = self.cells[k];
        self.row_rem[i] += v;
        self.col_rem[j] += v;
        self.cells[k] = 0;
    }

    fn fill_from(&mut self, start: usize) {
        for k in start..self.cells.len() {
            let (_, hi) = self.bounds(k);
            self.set(k, hi);
        }
    }

    fn advance(&mut self) -> bool {
        for k in (0..self.cells.len()).rev() {
            let v = self.cells[k];
            self.unset(k);
            let (lo, _) = self.bounds(k);
            if v > lo {
                self.set(k, v - 1);
                self.fill_from(k + 1);
                return true;
            }
        }
        false
    }

    fn current(&self) -> ContingencyTable {
        let s = self.s();
        let rows = if s == 0 {
            vec![vec![]; self.row_sums.len()]
        } else {
            self.cells.chunks(s).map(|c| c.to_vec()).collect()
        };
        ContingencyTable {
            rows,
            row_sums: Composition::new(self.row_sums.clone()).unwrap(),
            col_sums: Composition::new(self.col_sums.clone()).unwrap(),
        }
    }
}

impl Iterator for TableIter {
    type Item = ContingencyTable;

    fn next(&mut self) -> Option<ContingencyTable> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

pub fn enumerate_tables(lambda: &Composition, mu: &Composition) -> Result<TableIter> {
    check_degree(lambda.size(), mu.size())?;
    Ok(TableIter::new(lambda, mu))
}

/// Mackey product computed literally: one term per table.
pub fn phi_product_by_tables(lambda: &Composition, mu: &Composition) -> Result<CharElement> {
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for t in enumerate_tables(lambda, mu)? {
        let c = counts.entry(t.to_composition().normalize()).or_default();
        *c = c.checked_add(1).ok_or(Error::Overflow("counting tables"))?;
    }
    CharElement::from_terms(lambda.size(), counts)
}

/// `φ_λ φ_μ`.
pub fn phi_product(lambda: &Composition, mu: &Composition) -> Result<CharElement> {
    check_degree(lambda.size(), mu.size())?;
    let terms = MackeyEngine::default().product(lambda.parts(), mu.parts())?;
    let n = lambda.size();
    CharElement::from_terms(
        n,
        terms.into_iter().map(|(k, c)| {
            (
                Partition::from_sorted(k.into_iter().map(usize::from).collect()),
                c,
            )
        }),
    )
}

type Parts = Vec<u8>;
type Memo = HashMap<(Parts, Parts), Rc<Vec<(Parts, u64)>>>;

/// Sums over tables column by column. After the first column is fixed the
/// remaining count only depends on the multiset of leftover row sums and
/// the remaining column sums, which is what the memo is keyed on.
#[derive(Default)]
struct MackeyEngine {
    memo: Memo,
}

impl MackeyEngine {
    fn product(&mut self, lambda: &[usize], mu: &[usize]) -> Result<Vec<(Parts, u64)>> {
        let to_key = |xs: &[usize]| -> Result<Parts> {
            let mut v = xs
                .iter()
                .map(|&x| u8::try_from(x).map_err(|_| Error::Overflow("packing parts into u8")))
                .collect::<Result<Parts>>()?;
            v.sort_unstable_by(|a, b| b.cmp(a));
            Ok(v)
        };
        let rows = to_key(lambda)?;
        let cols = to_key(mu)?;
        Ok(self.solve(rows, cols)?.as_ref().clone())
    }

    fn solve(&mut self, rows: Parts, cols: Parts) -> Result<Rc<Vec<(Parts, u64)>>> {
        if let Some(hit) = self.memo.get(&(rows.clone(), cols.clone())) {
            return Ok(hit.clone());
        }
        let result = if cols.is_empty() {
            debug_assert!(rows.is_empty());
            vec![(Parts::new(), 1)]
        } else {
            let col = cols[0];
            let rest_cols = cols[1..].to_vec();
            let mut acc: HashMap<Parts, u64> = HashMap::new();
            let mut column = vec![0u8; rows.len()];
            let mut choices = Vec::new();
            split_column(&rows, col, 0, &mut column, &mut choices);
            for column in choices {
                let mut left: Parts = rows
                    .iter()
                    .zip(&column)
                    .map(|(r, c)| r - c)
                    .filter(|&x| x > 0)
                    .collect();
                left.sort_unstable_by(|a, b| b.cmp(a));
                let entries: Parts = column.into_iter().filter(|&x| x > 0).collect();
                let sub = self.solve(left, rest_cols.clone())?;
                for (sub_entries, c) in sub.iter() {
                    let mut key = entries.clone();
                    key.extend_from_slice(sub_entries);
                    key.sort_unstable_by(|a, b| b.cmp(a));
                    let slot = acc.entry(key).or_default();
                    *slot = slot
                        .checked_add(*c)
                        .ok_or(Error::Overflow("summing Mackey terms"))?;
                }
            }
            let mut out: Vec<(Parts, u64)> = acc.into_iter().collect();
            out.sort_unstable();
            out
        };
        let rc = Rc::new(result);
        self.memo.insert((rows, cols), rc.clone());
        Ok(rc)
    }
}

/// All ways to write `total` as `Σ column[k]` with `column[k] ≤ caps[k]`.
fn split_column(caps: &[u8], total: u8, k: usize, column: &mut [u8], out: &mut Vec<Vec<u8>>) {
    if k == caps.len() {
        if total == 0 {
            out.push(column.to_vec());
        }
        return;
    }
    let room: u32 = caps[k + 1..].iter().map(|&c| c as u32).sum();
    let lo = (total as u32).saturating_sub(room) as u8;
    let hi = caps[k].min(total);
    for v in lo..=hi {
        column[k] = v;
        split_column(caps, total - v, k + 1, column, out);
    }
    column[k] = 0;
}

/// All products `φ_λ φ_μ` for `λ ≤ μ` in basis order, with `u64`
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    basis: PartitionBasis,
    /// Indexed by [`pair_index`]; each entry sorted by basis position.
    products: Vec<Vec<(usize, u64)>>,
}

/// Position of the unordered pair `{i, j}` in the upper-triangular layout
/// of a `d`-dimensional basis.
pub fn pair_index(i: usize, j: usize, d: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    a * d - a * a.saturating_sub(1) / 2 + (b - a)
}

impl StructureConstants {
    /// Computes every product for degree `n`, pairs in parallel.
    pub fn compute(n: usize) -> Result<Self> {
        let basis = PartitionBasis::new(n);
        let d = basis.len();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
        let products = pairs
            .par_chunks(64.max(pairs.len() / 64 + 1))
            .map(|chunk| {
                let mut engine = MackeyEngine::default();
                chunk
                    .iter()
                    .map(|&(i, j)| {
                        let terms = engine.product(basis.get(i).parts(), basis.get(j).parts())?;
                        let mut row: Vec<(usize, u64)> = terms
                            .into_iter()
                            .map(|(k, c)| {
                                let lam = Partition::from_sorted(
                                    k.into_iter().map(usize::from).collect(),
                                );
                                (basis.index_of(&lam).expect("partition of n"), c)
                            })
                            .collect();
                        row.sort_unstable();
                        Ok(row)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(StructureConstants { basis, products })
    }

    /// Builds a table from externally supplied products (e.g. a cache file),
    /// given in the same pair order as [`StructureConstants::pairs`].
    pub fn from_products(n: usize, products: Vec<Vec<(usize, u64)>>) -> Result<Self> {
        let basis = PartitionBasis::new(n);
        let d = basis.len();
        if products.len() != d * (d + 1) / 2 {
            return Err(Error::Cache(format!(
                "expected {} products for n={n}, found {}",
                d * (d + 1) / 2,
                products.len()
            )));
        }
        if products.iter().flatten().any(|&(k, _)| k >= d) {
            return Err(Error::Cache("basis index out of range".into()));
        }
        Ok(StructureConstants { basis, products })
    }

    /// Shared, lazily computed table for degree `n`.
    pub fn for_degree(n: usize) -> Result<Arc<Self>> {
        let slot = registry_slot(n);
        if let Some(sc) = slot.get() {
            return Ok(sc.clone());
        }
        let sc = Arc::new(Self::compute(n)?);
        Ok(slot.get_or_init(|| sc).clone())
    }

    /// Installs an externally loaded table as the shared one for its degree,
    /// unless one is already present.
    pub fn install(sc: StructureConstants) -> Arc<Self> {
        registry_slot(sc.n()).get_or_init(|| Arc::new(sc)).clone()
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn basis(&self) -> &PartitionBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Unordered pairs `(i, j)`, `i ≤ j`, in storage order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.dim();
        (0..d).flat_map(move |i| (i..d).map(move |j| (i, j)))
    }

    /// `φ_i φ_j` as `(basis position, multiplicity)` terms.
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.products[pair_index(i, j, self.dim())]
    }

    pub fn product(&self, i: usize, j: usize) -> CharElement {
        let n = self.n();
        CharElement::from_terms(
            n,
            self.terms(i, j)
                .iter()
                .map(|&(k, c)| (self.basis.get(k).clone(), BigInt::from(c))),
        )
        .expect("basis partitions")
    }

    /// Bilinear extension of the basis products.
    pub fn multiply(&self, a: &CharElement, b: &CharElement) -> Result<CharElement> {
        check_degree(a.degree(), self.n())?;
        check_degree(b.degree(), self.n())?;
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (la, ca) in a.terms() {
            let i = self.basis.index_of(la).expect("degree checked");
            for (lb, cb) in b.terms() {
                let j = self.basis.index_of(lb).expect("degree checked");
                let cab = ca * cb;
                for &(k, c) in self.terms(i, j) {
                    *acc.entry(k).or_default() += &cab * c;
                }
            }
        }
        CharElement::from_terms(
            self.n(),
            acc.into_iter().map(|(k, c)| (self.basis.get(k).clone(), c)),
        )
    }
}

type Registry = Mutex<HashMap<usize, Arc<OnceLock<Arc<StructureConstants>>>>>;

fn registry_slot(n: usize) -> Arc<OnceLock<Arc<StructureConstants>>> {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY
        .get_or_init(Default::default)
        .lock()
        .expect("structure-constant registry poisoned")
        .entry(n)
        .or_default()
        .clone()
}

/// `a · b` in `R_n`.
pub fn multiply(a: &CharElement, b: &CharElement) -> Result<CharElement> {
    check_degree(a.degree(), b.degree())?;
    StructureConstants::for_degree(a.degree())?.multiply(a, b)
}

/// The full multiplication table of `R_n`, keyed by unordered pairs of
/// basis partitions.
pub fn structure_constant_table(n: usize) -> Result<BTreeMap<(Partition, Partition), CharElement>> {
    let sc = StructureConstants::for_degree(n)?;
    Ok(sc
        .pairs()
        .map(|(i, j)| {
            (
                (sc.basis.get(i).clone(), sc.basis.get(j).clone()),
                sc.product(i, j),
            )
        })
        .collect())
}
