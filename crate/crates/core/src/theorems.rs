//! Executable checks of the radical-layer description of `R̄_n` and of the
//! lemmas it is built from. Verifiers never panic on a mathematical
//! failure; they record it, with a witness, in the report.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::charring::{enumerate_tables, StructureConstants};
use crate::error::Result;
use crate::fp_algebra::{FpAlgebra, Prime};
use crate::oracles::{self, classfunction_products};
use crate::partitions::{
    heart_decomposition, jm, partitions_with_pi_at_least, pi_p, Composition, Partition,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerRecord {
    pub i: usize,
    pub dim: usize,
    pub expected_dim: usize,
    pub subspace_equal: bool,
    /// Pivot partitions of the computed layer.
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub theorem_a: bool,
    pub corollary_b: bool,
    pub club: bool,
    pub spade: bool,
    pub heart: bool,
    /// `None` when skipped because `n` is above the brute-force bound.
    pub eq5_oracle: Option<bool>,
    pub eq6_oracle: Option<bool>,
    pub classfun_oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub p: u32,
    pub loewy_length: usize,
    pub expected_length: usize,
    pub layers: Vec<LayerRecord>,
    pub checks: Checks,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        let c = &self.checks;
        c.theorem_a
            && c.corollary_b
            && c.club
            && c.spade
            && c.heart
            && c.eq5_oracle != Some(false)
            && c.eq6_oracle != Some(false)
            && c.classfun_oracle != Some(false)
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.dim).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Result of one check plus a counterexample description on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn ok() -> Self {
        CheckOutcome {
            pass: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        CheckOutcome {
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Which oracle cross-checks a report includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub classfun: bool,
    /// Largest `n` for the permutation-group checks; `None` skips them.
    pub permutation_bound: Option<usize>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            classfun: true,
            permutation_bound: Some(oracles::DEFAULT_BOUND),
        }
    }
}

impl OracleConfig {
    pub fn none() -> Self {
        OracleConfig {
            classfun: false,
            permutation_bound: None,
        }
    }

    pub fn with_slow_tests(slow: bool) -> Self {
        OracleConfig {
            classfun: true,
            permutation_bound: Some(if slow {
                oracles::SLOW_BOUND
            } else {
                oracles::DEFAULT_BOUND
            }),
        }
    }
}

fn max_layer(n: usize, p: Prime) -> usize {
    n / p.as_usize()
}

/// Compares each radical power with the span of `{φ̄_λ : π_p(λ) ≥ i}` for
/// `i = 0 ..= ⌊n/p⌋ + 1`.
pub fn theorem_a_layers(alg: &FpAlgebra) -> (Vec<LayerRecord>, CheckOutcome) {
    let series = alg.loewy_series();
    let zero = crate::fp_algebra::FpSubspace::zero(alg.n(), alg.dim(), alg.prime());
    let mut records = Vec::new();
    let mut witness = None;
    for i in 0..=max_layer(alg.n(), alg.prime()) + 1 {
        let computed = series.get(i).unwrap_or(&zero);
        let expected = alg.pi_layer(i);
        let equal = *computed == expected;
        if !equal && witness.is_none() {
            witness = Some(format!(
                "layer {i}: computed dim {} vs expected dim {}",
                computed.dim(),
                expected.dim()
            ));
        }
        records.push(LayerRecord {
            i,
            dim: computed.dim(),
            expected_dim: expected.dim(),
            subspace_equal: equal,
            basis: computed
                .pivots()
                .iter()
                .map(|&k| alg.basis().get(k).to_string())
                .collect(),
        });
    }
    let outcome = witness.map_or_else(CheckOutcome::ok, CheckOutcome::fail);
    (records, outcome)
}

pub fn corollary_b_check(alg: &FpAlgebra) -> CheckOutcome {
    let got = alg.loewy_length();
    let want = max_layer(alg.n(), alg.prime()) + 1;
    if got == want {
        CheckOutcome::ok()
    } else {
        CheckOutcome::fail(format!("Loewy length {got}, expected {want}"))
    }
}

/// `rad_i rad_j ⊆ rad_{i+j}` for all `i + j ≤ ⌊n/p⌋ + 1`.
pub fn club_check(alg: &FpAlgebra) -> CheckOutcome {
    let top = max_layer(alg.n(), alg.prime()) + 1;
    let layers: Vec<_> = (0..=top).map(|i| alg.pi_layer(i)).collect();
    for i in 0..=top {
        for j in i..=top - i {
            let prod = alg
                .subspace_product(&layers[i], &layers[j])
                .expect("same algebra");
            if !prod.is_subspace_of(&layers[i + j]) {
                return CheckOutcome::fail(format!(
                    "rad_{i} * rad_{j} (dim {}) not inside rad_{} (dim {})",
                    prod.dim(),
                    i + j,
                    layers[i + j].dim()
                ));
            }
        }
    }
    CheckOutcome::ok()
}

/// `rad_1 rad_i = rad_{i+1}` for `1 ≤ i ≤ ⌊n/p⌋`.
pub fn spade_check(alg: &FpAlgebra) -> CheckOutcome {
    let top = max_layer(alg.n(), alg.prime());
    let rad1 = alg.pi_layer(1);
    for i in 1..=top {
        let prod = alg
            .subspace_product(&rad1, &alg.pi_layer(i))
            .expect("same algebra");
        let want = alg.pi_layer(i + 1);
        if prod != want {
            return CheckOutcome::fail(format!(
                "rad_1 * rad_{i} has dim {}, rad_{} has dim {}",
                prod.dim(),
                i + 1,
                want.dim()
            ));
        }
    }
    CheckOutcome::ok()
}

/// `φ̄_ν φ̄_λ̃ ∈ φ̄_λ + span{φ̄_μ : π_p(μ) ≥ π_p(λ), jm(μ) ≺ jm(λ)}`.
pub fn heart_check(alg: &FpAlgebra, lambda: &Partition) -> Result<CheckOutcome> {
    let p = alg.prime().as_usize();
    let h = heart_decomposition(lambda, p)?;
    let x = alg.basis_vector(&h.nu.normalize())?;
    let y = alg.basis_vector(&h.lambda_tilde)?;
    let prod = alg.multiply(&x, &y)?;
    let target = alg
        .basis()
        .index_of(lambda)
        .expect("lambda is a partition of n");
    let lambda_pi = pi_p(lambda.parts(), p);
    if prod.coords()[target] != 1 {
        return Ok(CheckOutcome::fail(format!(
            "coefficient of phi[{lambda}] in phi[{}]*phi[{}] is {}",
            h.nu,
            h.lambda_tilde,
            prod.coords()[target]
        )));
    }
    for k in prod.support().filter(|&k| k != target) {
        let mu = alg.basis().get(k);
        let mu_jm = jm(mu.parts(), p);
        if pi_p(mu.parts(), p) < lambda_pi || !mu_jm.lt(&h.jm) {
            return Ok(CheckOutcome::fail(format!(
                "phi[{mu}] with jm {mu_jm} appears in the product for {lambda} (jm {})",
                h.jm
            )));
        }
    }
    Ok(CheckOutcome::ok())
}

/// Every `λ` with `π_p(λ) ≥ 2`.
pub fn heart_all(alg: &FpAlgebra) -> Result<CheckOutcome> {
    for lambda in partitions_with_pi_at_least(alg.n(), alg.prime().as_usize(), 2) {
        let outcome = heart_check(alg, &lambda)?;
        if !outcome.pass {
            return Ok(outcome);
        }
    }
    Ok(CheckOutcome::ok())
}

pub fn verify_theorem_a(n: usize, p: Prime) -> Result<VerificationReport> {
    verify(n, p, OracleConfig::none())
}

pub fn verify_corollary_b(n: usize, p: Prime) -> Result<bool> {
    Ok(corollary_b_check(&FpAlgebra::new(n, p)?).pass)
}

pub fn verify_club(n: usize, p: Prime) -> Result<bool> {
    Ok(club_check(&FpAlgebra::new(n, p)?).pass)
}

pub fn verify_spade(n: usize, p: Prime) -> Result<bool> {
    Ok(spade_check(&FpAlgebra::new(n, p)?).pass)
}

pub fn verify_heart(lambda: &Partition, p: Prime) -> Result<bool> {
    Ok(heart_check(&FpAlgebra::new(lambda.size(), p)?, lambda)?.pass)
}

/// Outcomes of the structure-constant cross-checks for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub eq5: Option<CheckOutcome>,
    pub eq6: Option<CheckOutcome>,
    pub classfun: Option<CheckOutcome>,
}

/// Class-function products versus the table products, all unordered pairs.
pub fn classfun_oracle(sc: &StructureConstants) -> Result<CheckOutcome> {
    let oracle = classfunction_products(sc.n())?;
    for ((i, j), expected) in sc.pairs().zip(oracle) {
        let got = sc.product(i, j);
        if got != expected {
            return Ok(CheckOutcome::fail(format!(
                "phi[{}]*phi[{}]: tables give {got}, class functions give {expected}",
                sc.basis().get(i),
                sc.basis().get(j)
            )));
        }
    }
    Ok(CheckOutcome::ok())
}

/// Table counts against double-coset counts, and the Mackey sum against
/// explicit double cosets, for all pairs.
pub fn eq5_oracle(sc: &StructureConstants, bound: usize) -> Result<CheckOutcome> {
    for (i, j) in sc.pairs() {
        let l: Composition = sc.basis().get(i).as_composition();
        let m: Composition = sc.basis().get(j).as_composition();
        let tables = enumerate_tables(&l, &m)?.count();
        let cosets = oracles::young_double_coset_count(&l, &m, bound)?;
        if tables != cosets {
            return Ok(CheckOutcome::fail(format!(
                "({l}),({m}): {tables} tables vs {cosets} double cosets"
            )));
        }
        let brute = oracles::mackey_by_permutations(&l, &m, bound)?;
        if brute != sc.product(i, j) {
            return Ok(CheckOutcome::fail(format!(
                "({l}),({m}): permutation Mackey sum {brute} vs {}",
                sc.product(i, j)
            )));
        }
    }
    Ok(CheckOutcome::ok())
}

/// The normalizer-grouped Mackey sum, for all pairs.
pub fn eq6_oracle(sc: &StructureConstants, bound: usize) -> Result<CheckOutcome> {
    for (i, j) in sc.pairs() {
        let l = sc.basis().get(i).as_composition();
        let m = sc.basis().get(j).as_composition();
        match oracles::normalizer_mackey(&l, &m, bound) {
            Ok(sum) if sum == sc.product(i, j) => {}
            Ok(sum) => {
                return Ok(CheckOutcome::fail(format!(
                    "({l}),({m}): grouped sum {sum} vs {}",
                    sc.product(i, j)
                )))
            }
            Err(crate::Error::NonIntegral) => {
                return Ok(CheckOutcome::fail(format!(
                    "({l}),({m}): non-integral coefficient"
                )))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CheckOutcome::ok())
}

type OracleKey = (usize, bool, Option<usize>);

/// Oracle results depend on `n` only, so they are shared across primes.
pub fn oracle_outcome(n: usize, config: OracleConfig) -> Result<OracleOutcome> {
    static MEMO: OnceLock<Mutex<HashMap<OracleKey, Arc<OnceLock<OracleOutcome>>>>> =
        OnceLock::new();
    let key = (n, config.classfun, config.permutation_bound);
    let slot = MEMO
        .get_or_init(Default::default)
        .lock()
        .expect("oracle memo poisoned")
        .entry(key)
        .or_default()
        .clone();
    if let Some(hit) = slot.get() {
        return Ok(hit.clone());
    }
    let sc = StructureConstants::for_degree(n)?;
    let perm_bound = config
        .permutation_bound
        .filter(|&b| n <= b.min(oracles::HARD_BOUND));
    let outcome = OracleOutcome {
        classfun: config.classfun.then(|| classfun_oracle(&sc)).transpose()?,
        eq5: perm_bound.map(|b| eq5_oracle(&sc, b)).transpose()?,
        eq6: perm_bound.map(|b| eq6_oracle(&sc, b)).transpose()?,
    };
    Ok(slot.get_or_init(|| outcome).clone())
}

/// Runs every verifier for `(n, p)`.
pub fn verify(n: usize, p: Prime, config: OracleConfig) -> Result<VerificationReport> {
    let alg = FpAlgebra::new(n, p)?;
    let (layers, theorem_a) = theorem_a_layers(&alg);
    let corollary_b = corollary_b_check(&alg);
    let club = club_check(&alg);
    let spade = spade_check(&alg);
    let heart = heart_all(&alg)?;
    let oracle = oracle_outcome(n, config)?;

    let mut witnesses = BTreeMap::new();
    let mut record = |name: &str, outcome: &CheckOutcome| {
        if let Some(w) = &outcome.witness {
            witnesses.insert(name.to_string(), w.clone());
        }
        outcome.pass
    };
    let checks = Checks {
        theorem_a: record("theorem_a", &theorem_a),
        corollary_b: record("corollary_b", &corollary_b),
        club: record("club", &club),
        spade: record("spade", &spade),
        heart: record("heart", &heart),
        eq5_oracle: oracle.eq5.as_ref().map(|o| record("eq5_oracle", o)),
        eq6_oracle: oracle.eq6.as_ref().map(|o| record("eq6_oracle", o)),
        classfun_oracle: oracle
            .classfun
            .as_ref()
            .map(|o| record("classfun_oracle", o)),
    };
    Ok(VerificationReport {
        n,
        p: p.get(),
        loewy_length: alg.loewy_length(),
        expected_length: max_layer(n, p) + 1,
        layers,
        checks,
        witnesses,
    })
}

/// Reports for every `1 ≤ n ≤ max_n` and every prime, `n`-major.
pub fn sweep(
    max_n: usize,
    primes: &[Prime],
    config: OracleConfig,
) -> Result<Vec<VerificationReport>> {
    let cells: Vec<(usize, Prime)> = (1..=max_n)
        .flat_map(|n| primes.iter().map(move |&p| (n, p)))
        .collect();
    cells
        .into_par_iter()
        .map(|(n, p)| verify(n, p, config))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn theorem_a_examples() {
        let r = verify_theorem_a(4, prime(2)).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.layer_dims(), [5, 3, 1, 0]);
        let r = verify_theorem_a(3, prime(5)).unwrap();
        assert_eq!(r.layer_dims(), [3, 0]);
        assert_eq!(r.loewy_length, 1);
        let r = verify_theorem_a(6, prime(2)).unwrap();
        assert!(r.pass());
        assert_eq!(r.layer_dims(), [11, 7, 3, 1, 0]);
        assert_eq!(r.layers[3].basis, ["1,1,1,1,1,1"]);
    }

    #[test]
    fn corollary_b_examples() {
        assert!(verify_corollary_b(5, prime(2)).unwrap());
        assert!(verify_corollary_b(2, prime(3)).unwrap());
        assert!(verify_corollary_b(9, prime(3)).unwrap());
    }

    #[test]
    fn lemma_examples() {
        assert!(verify_club(4, prime(2)).unwrap());
        assert!(verify_club(8, prime(2)).unwrap());
        assert!(verify_spade(4, prime(2)).unwrap());
        assert!(verify_spade(3, prime(2)).unwrap());
        assert!(verify_spade(9, prime(3)).unwrap());
        assert!(verify_heart(&"1,1,1,1".parse().unwrap(), prime(2)).unwrap());
        assert!(verify_heart(&"2,2,1,1,1".parse().unwrap(), prime(2)).unwrap());
        for p in [2, 3, 5] {
            assert!(verify_heart(&Partition::singletons(2 * p), prime(p as u64)).unwrap());
        }
        assert!(verify_heart(&"3,1".parse().unwrap(), prime(2)).is_err());
    }

    #[test]
    fn small_sweeps() {
        let reports = sweep(4, &[prime(2)], OracleConfig::default()).unwrap();
        assert_eq!(reports.len(), 4);
        assert!(reports.iter().all(|r| r.pass()));
        let reports = sweep(1, &[prime(2), prime(3)], OracleConfig::default()).unwrap();
        assert!(reports.iter().all(|r| r.pass() && r.loewy_length == 1));
    }

    #[test]
    fn witnesses_only_on_failure() {
        let r = verify(5, prime(2), OracleConfig::default()).unwrap();
        assert!(r.witnesses.is_empty());
        assert_eq!(r.checks.eq5_oracle, Some(true));
        assert!(!r.to_json().contains("witnesses"));
        let r = verify(6, prime(2), OracleConfig::default()).unwrap();
        assert_eq!(r.checks.eq5_oracle, None);
    }
}
