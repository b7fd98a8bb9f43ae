//! Perron-similarity classification, the relative gain array, the M-matrix
//! test, doubly stochastic eligibility, and the classical necessary
//! conditions on a candidate spectrum.

use num::traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{hadamard_product, inverse, RatMatrix};
use crate::rational::{format_rational, rat_int, Rational};

/// Classification of an invertible basis S: which indices i have both
/// column i of S and row i of S^{-1} nonnegative.
#[derive(Debug, Clone)]
pub struct PerronSimilarity {
    s: RatMatrix,
    s_inv: RatMatrix,
    perron_indices: Vec<usize>,
    strong_index: Option<usize>,
}

impl PerronSimilarity {
    pub fn basis(&self) -> &RatMatrix {
        &self.s
    }

    pub fn basis_inverse(&self) -> &RatMatrix {
        &self.s_inv
    }

    /// 1-based indices i with S·e_i ≥ 0 and e_i^T·S^{-1} ≥ 0.
    pub fn perron_indices(&self) -> &[usize] {
        &self.perron_indices
    }

    pub fn is_perron_similarity(&self) -> bool {
        !self.perron_indices.is_empty()
    }

    /// The unique 1-based index with both vectors strictly positive, if any.
    pub fn strong_index(&self) -> Option<usize> {
        self.strong_index
    }
}

/// Since the rows of an invertible S form a basis, the conical coefficients
/// of e_i are the unique solution of a linear system, so classification
/// reduces to sign checks on the columns of S and the rows of S^{-1}.
pub fn classify(s: &RatMatrix) -> Result<PerronSimilarity> {
    let s_inv = inverse(s)?;
    let n = s.rows();
    let mut perron_indices = Vec::new();
    let mut strict = Vec::new();
    for i in 0..n {
        let col = s.col(i);
        let row = s_inv.row(i);
        if col.iter().all(|v| !v.is_negative()) && row.iter().all(|v| !v.is_negative()) {
            perron_indices.push(i + 1);
            if col.iter().all(|v| v.is_positive()) && row.iter().all(|v| v.is_positive()) {
                strict.push(i + 1);
            }
        }
    }
    let strong_index = match strict.as_slice() {
        [only] => Some(*only),
        _ => None,
    };
    Ok(PerronSimilarity {
        s: s.clone(),
        s_inv,
        perron_indices,
        strong_index,
    })
}

/// Relative gain array Φ(S) = S ∘ S^{-T}; maps a diagonal's entries to the
/// realizer's diagonal.
pub fn relative_gain_array(s: &RatMatrix) -> Result<RatMatrix> {
    let s_inv_t = inverse(s)?.transpose();
    hadamard_product(s, &s_inv_t)
}

/// Z-sign-pattern matrix with nonnegative inverse. Singular matrices are
/// simply not M-matrices.
pub fn is_m_matrix(s: &RatMatrix) -> bool {
    if !s.is_square() {
        return false;
    }
    let n = s.rows();
    for i in 0..n {
        for j in 0..n {
            if i != j && s.get(i, j).is_positive() {
                return false;
            }
        }
    }
    match inverse(s) {
        Ok(inv) => inv.is_nonnegative(),
        Err(_) => false,
    }
}

/// First index i (ascending, 1-based) whose column of S is a constant α·e
/// and whose row of S^{-1} is a constant β·e^T; spectra in P(S) are then
/// doubly stochastically realizable.
pub fn doubly_stochastic_eligible(
    s: &RatMatrix,
) -> Result<Option<(usize, Rational, Rational)>> {
    let s_inv = inverse(s)?;
    let n = s.rows();
    for i in 0..n {
        let col = s.col(i);
        let row = s_inv.row(i);
        let alpha = col[0].clone();
        let beta = row[0].clone();
        if col.iter().all(|v| v == &alpha) && row.iter().all(|v| v == &beta) {
            return Ok(Some((i + 1, alpha, beta)));
        }
    }
    Ok(None)
}

/// One violated necessary condition with its witness.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub witness: String,
}

/// Outcome of checking the power-sum, spectral-radius, and J-LL conditions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Set when the finite truncation at k_max is provably sufficient.
    pub truncation_sufficient: bool,
    pub k_max: usize,
}

/// Checks s_k(σ) ≥ 0 and the J-LL inequality for all k (and k·m) up to
/// k_max, plus ρ(σ) ∈ σ. The infinite families are truncated at k_max
/// (default 2n); for normalized spectra with n ≤ 4 the truncation is
/// provably sufficient and the report says so.
pub fn necessary_conditions(values: &[Rational], k_max: Option<usize>) -> Result<ConditionsReport> {
    if values.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let n = values.len();
    let k_max = k_max.unwrap_or(2 * n).max(1);
    let mut violations = Vec::new();

    // power sums s_1 .. s_{k_max}
    let mut powers: Vec<Rational> = values.to_vec();
    let mut sums = Vec::with_capacity(k_max + 1);
    sums.push(rat_int(n as i64)); // s_0
    for _k in 1..=k_max {
        sums.push(powers.iter().cloned().sum());
        for (p, v) in powers.iter_mut().zip(values) {
            *p *= v;
        }
    }
    for (k, s) in sums.iter().enumerate().skip(1) {
        if s.is_negative() {
            violations.push(Violation {
                condition: "power-sum".into(),
                witness: format!("s_{k} = {}", format_rational(s)),
            });
        }
    }

    // spectral radius must itself be an eigenvalue
    let rho = values
        .iter()
        .map(|v| v.abs())
        .max()
        .expect("nonempty");
    if !values.contains(&rho) {
        violations.push(Violation {
            condition: "spectral-radius".into(),
            witness: format!("ρ = {} ∉ σ", format_rational(&rho)),
        });
    }

    // J-LL: s_k^m ≤ n^{m-1} s_{km} for km ≤ k_max
    for k in 1..=k_max {
        for m in 2..=k_max / k {
            let km = k * m;
            let mut lhs = Rational::one();
            for _ in 0..m {
                lhs *= &sums[k];
            }
            let mut rhs = sums[km].clone();
            for _ in 0..m - 1 {
                rhs *= rat_int(n as i64);
            }
            if lhs > rhs {
                violations.push(Violation {
                    condition: "jll".into(),
                    witness: format!(
                        "s_{k}^{m} = {} > n^{}·s_{km} = {}",
                        format_rational(&lhs),
                        m - 1,
                        format_rational(&rhs)
                    ),
                });
            }
        }
    }

    // For a normalized real spectrum with n ≤ 4, s_1 ≥ 0 already forces
    // s_k ≥ 0 for every odd k (even k are sums of even powers), so the
    // truncated family decides the full one.
    let normalized = values
        .first()
        .map(|v| v == &Rational::one() && values.iter().all(|x| x.abs() <= Rational::one()))
        .unwrap_or(false);
    let truncation_sufficient = normalized && n <= 4;

    Ok(ConditionsReport {
        passed: violations.is_empty(),
        violations,
        truncation_sufficient,
        k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::diag_from;
    use crate::hadamard::walsh;
    use crate::rational::rat;

    #[test]
    fn classify_walsh_is_strong() {
        for n in 0..=3u32 {
            let c = classify(walsh(n).unwrap().matrix()).unwrap();
            assert_eq!(c.perron_indices(), &[1]);
            assert_eq!(c.strong_index(), Some(1));
        }
    }

    #[test]
    fn classify_counterexample_and_identity() {
        let s = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(1), rat_int(1)],
        ])
        .unwrap();
        let c = classify(&s).unwrap();
        assert!(c.perron_indices().is_empty());
        assert!(!c.is_perron_similarity());

        let c = classify(&RatMatrix::identity(3)).unwrap();
        assert_eq!(c.perron_indices(), &[1, 2, 3]);
        assert_eq!(c.strong_index(), None);
    }

    #[test]
    fn rga_examples() {
        assert_eq!(
            relative_gain_array(&RatMatrix::identity(3)).unwrap(),
            RatMatrix::identity(3)
        );
        let p = RatMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(relative_gain_array(&p).unwrap(), p);
        let h1 = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(
            relative_gain_array(&h1).unwrap(),
            RatMatrix::ones(2, 2).scale(&rat(1, 2))
        );
    }

    #[test]
    fn rga_maps_diagonal() {
        // Φ(S)·x = diag_of(S·D_x·S^{-1})
        let s = RatMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]]);
        let x = vec![rat_int(1), rat(-1, 2), rat(3, 4)];
        let phi = relative_gain_array(&s).unwrap();
        let lhs = phi.mul_vec(&x).unwrap();
        let a = s
            .mul(&diag_from(&x))
            .unwrap()
            .mul(&inverse(&s).unwrap())
            .unwrap();
        assert_eq!(lhs, crate::exact_linalg::diag_of(&a).unwrap());
    }

    #[test]
    fn m_matrix_examples() {
        assert!(is_m_matrix(&RatMatrix::from_i64(&[&[2, -1], &[-1, 2]])));
        assert!(is_m_matrix(&RatMatrix::identity(4)));
        let s = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat(1, 2)],
            vec![rat_int(1), rat_int(1)],
        ])
        .unwrap();
        assert!(!is_m_matrix(&s));
        // Z-pattern but singular
        assert!(!is_m_matrix(&RatMatrix::from_i64(&[&[1, -1], &[-1, 1]])));
        // inverse-nonnegative but with positive off-diagonals
        assert!(!is_m_matrix(&RatMatrix::from_i64(&[&[0, 1], &[1, 0]])));
    }

    #[test]
    fn ds_eligibility_examples() {
        let h2 = walsh(2).unwrap().into_matrix();
        assert_eq!(
            doubly_stochastic_eligible(&h2).unwrap(),
            Some((1, rat_int(1), rat(1, 4)))
        );
        let s = RatMatrix::from_i64(&[&[1, 1, 0], &[1, -1, 0], &[0, 0, 1]]);
        assert_eq!(doubly_stochastic_eligible(&s).unwrap(), None);
        assert_eq!(
            doubly_stochastic_eligible(&RatMatrix::identity(2)).unwrap(),
            None
        );
    }

    #[test]
    fn necessary_conditions_examples() {
        let report = necessary_conditions(&[rat_int(1), rat_int(-1)], None).unwrap();
        assert!(report.passed);

        let report = necessary_conditions(&[rat_int(1), rat_int(-2)], None).unwrap();
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.condition == "spectral-radius"));

        let report =
            necessary_conditions(&[rat_int(1), rat(-1, 2), rat(-1, 2), rat(-1, 2)], None)
                .unwrap();
        assert!(!report.passed);
        assert!(report.violations.iter().any(|v| v.condition == "power-sum"));
        assert!(report.truncation_sufficient);

        assert!(matches!(
            necessary_conditions(&[], None),
            Err(Error::EmptySpectrum)
        ));
    }

    #[test]
    fn jll_violation_detected() {
        // {1,-1,-1}: s_1^3 = -1 > n^2·s_3 = -9
        let report =
            necessary_conditions(&[rat_int(1), rat_int(-1), rat_int(-1)], None).unwrap();
        assert!(report.violations.iter().any(|v| v.condition == "jll"));
        assert!(report.violations.iter().any(|v| v.condition == "power-sum"));
    }
}
