//! Constructive realization of real spectra by nonnegative matrices, with
//! symmetric / doubly stochastic / trisymmetric variants where the
//! constructions guarantee them, and self-verifying certificates.

use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    char_poly, diag_from, direct_sum, inverse, poly_from_roots, RatMatrix, RatVector,
};
use crate::hadamard::{hadamard_of_order, next_hadamard_order, NormalizedHadamard};
use crate::perron::necessary_conditions;
use crate::rational::{format_rational, rat, rat_int, rational_sqrt, to_f64, Rational};

/// Verification tolerance for numeric (floating-point) certificates: 10^-12.
pub fn numeric_tolerance() -> Rational {
    rat(1, 1_000_000_000_000)
}

/// An ordered (descending) multiset of rational eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<Rational>,
}

impl Spectrum {
    pub fn new(mut values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        values.sort_by(|a, b| b.cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// λ₁ = 1 ≥ λ₂ ≥ ... ≥ λₙ ≥ -1.
    pub fn is_normalized(&self) -> bool {
        self.values[0].is_one() && self.values.iter().all(|v| v.abs() <= Rational::one())
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().cloned().sum()
    }
}

/// Sorts and rescales so that λ₁ = 1; the returned scale is the original λ₁.
pub fn normalize(raw: &[Rational]) -> Result<(Spectrum, Rational)> {
    let spectrum = Spectrum::new(raw.to_vec())?;
    let lead = spectrum.values[0].clone();
    if !lead.is_positive() {
        return Err(Error::NotNormalizable(format!(
            "largest value {} is not positive",
            format_rational(&lead)
        )));
    }
    let rho = spectrum
        .values
        .iter()
        .map(|v| v.abs())
        .max()
        .expect("nonempty");
    if rho != lead {
        return Err(Error::NotNormalizable(format!(
            "spectral radius {} is not in the spectrum",
            format_rational(&rho)
        )));
    }
    let scaled = spectrum.values.iter().map(|v| v / &lead).collect();
    Ok((Spectrum { values: scaled }, lead))
}

/// Which construction produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "n1")]
    N1,
    #[serde(rename = "n2")]
    N2,
    #[serde(rename = "n3")]
    N3,
    #[serde(rename = "n3-symmetric")]
    N3Symmetric,
    #[serde(rename = "n4-blocks")]
    N4Blocks,
    #[serde(rename = "n4-walsh")]
    N4Walsh,
    #[serde(rename = "suleimanova")]
    Suleimanova,
    #[serde(rename = "suleimanova-padded")]
    SuleimanovaPadded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub nonnegative: bool,
    pub symmetric: bool,
    pub row_stochastic: bool,
    pub doubly_stochastic: bool,
    pub trisymmetric: bool,
}

/// A realization with its diagonalization carried as proof: A = S·D_v·S^{-1}
/// exactly whenever `numeric` is false.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealizationCertificate {
    pub method: Method,
    pub basis: RatMatrix,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub diagonal: RatVector,
    pub realizer: RatMatrix,
    pub flags: Flags,
    pub numeric: bool,
    pub padded_zeros: usize,
}

fn within(value: &Rational, tol: &Rational) -> bool {
    &value.abs() <= tol
}

fn derive_flags(a: &RatMatrix, tol: Option<&Rational>) -> Flags {
    let n = a.rows();
    let zero_tol = tol.cloned().unwrap_or_else(Rational::zero);
    let nonnegative = (0..n).all(|i| (0..n).all(|j| a.get(i, j) >= &(-zero_tol.clone())));
    let close = |x: &Rational, y: &Rational| within(&(x - y), &zero_tol);
    let symmetric = (0..n).all(|i| (0..i).all(|j| close(a.get(i, j), a.get(j, i))));
    let one = Rational::one();
    let row_sums_one = (0..n).all(|i| close(&a.row(i).into_iter().sum::<Rational>(), &one));
    let col_sums_one = (0..n).all(|j| close(&a.col(j).into_iter().sum::<Rational>(), &one));
    let row_stochastic = nonnegative && row_sums_one;
    let doubly_stochastic = row_stochastic && col_sums_one;
    // trisymmetric: two of {symmetric, persymmetric, centrosymmetric}
    let persymmetric = (0..n).all(|i| {
        (0..n).all(|j| close(a.get(i, j), a.get(n - 1 - j, n - 1 - i)))
    });
    let centrosymmetric = (0..n).all(|i| {
        (0..n).all(|j| close(a.get(i, j), a.get(n - 1 - i, n - 1 - j)))
    });
    let trisymmetric =
        [symmetric, persymmetric, centrosymmetric].iter().filter(|b| **b).count() >= 2;
    Flags {
        nonnegative,
        symmetric,
        row_stochastic,
        doubly_stochastic,
        trisymmetric,
    }
}

/// Builds an exact certificate A = S·D_v·S^{-1} from a basis and diagonal.
fn exact_certificate(method: Method, basis: RatMatrix, diagonal: RatVector) -> Result<RealizationCertificate> {
    let basis_inv = inverse(&basis)?;
    exact_certificate_with_inverse(method, basis, basis_inv, diagonal)
}

/// Same, for callers that already know the basis inverse in closed form.
fn exact_certificate_with_inverse(
    method: Method,
    basis: RatMatrix,
    basis_inv: RatMatrix,
    diagonal: RatVector,
) -> Result<RealizationCertificate> {
    let realizer = basis.mul(&diag_from(&diagonal))?.mul(&basis_inv)?;
    let flags = derive_flags(&realizer, None);
    Ok(RealizationCertificate {
        method,
        basis,
        diagonal,
        realizer,
        flags,
        numeric: false,
        padded_zeros: 0,
    })
}

fn check_trace_and_radius(s: &Spectrum) -> Result<()> {
    let values = s.values();
    if s.sum().is_negative() {
        return Err(Error::ConditionsFail(format!(
            "s_1 = {} < 0",
            format_rational(&s.sum())
        )));
    }
    let rho = values.iter().map(|v| v.abs()).max().expect("nonempty");
    if &rho != &values[0] {
        return Err(Error::ConditionsFail(format!(
            "spectral radius {} is not in the spectrum",
            format_rational(&rho)
        )));
    }
    Ok(())
}

/// n = 2: S = H₁ gives the symmetric realizer
/// (1/2)[λ₁+λ₂, λ₁−λ₂; λ₁−λ₂, λ₁+λ₂].
pub fn realize_n2(s: &Spectrum) -> Result<RealizationCertificate> {
    if s.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: s.len(),
        });
    }
    check_trace_and_radius(s)?;
    exact_certificate(
        Method::N2,
        RatMatrix::from_i64(&[&[1, 1], &[1, -1]]),
        s.values().to_vec(),
    )
}

/// The n = 3 basis S_a with parameter a ∈ [0, 1].
pub fn n3_basis(a: &Rational) -> RatMatrix {
    RatMatrix::from_rows(vec![
        vec![rat_int(1), rat_int(1), rat_int(0)],
        vec![rat_int(1), -a.clone(), rat_int(1)],
        vec![rat_int(1), -a.clone(), rat_int(-1)],
    ])
    .expect("3x3")
}

/// Parameter choice a = max(0, −λ₂/λ₁); scale-invariant, and feasible for
/// every spectrum with s₁ ≥ 0 and ρ = λ₁ (backed by a sweep oracle in the
/// tests).
fn n3_parameter(s: &Spectrum) -> Rational {
    let lead = &s.values()[0];
    if lead.is_positive() {
        let a = -(&s.values()[1] / lead);
        if a.is_positive() {
            a
        } else {
            Rational::zero()
        }
    } else {
        Rational::zero()
    }
}

/// n = 3: nonnegative realizer via S_a, a = max(0, −λ₂/λ₁).
pub fn realize_n3(s: &Spectrum) -> Result<RealizationCertificate> {
    if s.len() != 3 {
        return Err(Error::LengthMismatch {
            expected: 3,
            got: s.len(),
        });
    }
    check_trace_and_radius(s)?;
    let cert = exact_certificate(Method::N3, n3_basis(&n3_parameter(s)), s.values().to_vec())?;
    if !cert.flags.nonnegative {
        return Err(Error::InternalDispatchFailure);
    }
    Ok(cert)
}

/// Feasible parameter interval for the n = 3 construction: all a ∈ [0, 1]
/// making every entry of S_a·D_v·S_a^{-1} nonnegative (diagnostic; λ₁ = 1
/// assumed).
pub fn n3_feasible_interval(x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
    // Entries with denominator 2(1+a) > 0: 2(x+a), 1-x, 2a(1-x),
    // a(x+y)+y+1, a(x-y)-y+1. Each is linear in a; intersect the feasible
    // a-intervals with [0, 1].
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    let mut clamp = |coeff: Rational, constant: Rational| {
        // coeff·a + constant >= 0
        if coeff.is_zero() {
            if constant.is_negative() {
                lo = Rational::one();
                hi = Rational::zero();
            }
        } else {
            let bound = -constant / &coeff;
            if coeff.is_positive() {
                if bound > lo {
                    lo = bound;
                }
            } else if bound < hi {
                hi = bound;
            }
        }
    };
    clamp(rat_int(2), rat_int(2) * x); // 2(x + a)
    clamp(Rational::zero(), Rational::one() - x); // 1 - x
    clamp(rat_int(2) * (Rational::one() - x), Rational::zero()); // 2a(1 - x)
    clamp(x + y, y + Rational::one()); // a(x+y) + y + 1
    clamp(x - y, Rational::one() - y); // a(x-y) - y + 1
    (lo <= hi).then_some((lo, hi))
}

/// n = 3 with a symmetric realizer. When λ₂ ≥ 0 the block basis H₁ ⊕ H₀ is
/// used on the pairing ({λ₁, λ₃}, {λ₂}) and the certificate is exact. When
/// λ₂ < 0 the S_a realizer is symmetrized by D_u with u = (1, √(2a), √(2a)):
/// exact when 2a is a rational square, floating-point (numeric) otherwise.
pub fn realize_n3_symmetric(s: &Spectrum) -> Result<RealizationCertificate> {
    if s.len() != 3 {
        return Err(Error::LengthMismatch {
            expected: 3,
            got: s.len(),
        });
    }
    check_trace_and_radius(s)?;
    let values = s.values();
    if !values[1].is_negative() {
        // block route: realize {λ₁, λ₃} by H₁ and adjoin λ₂
        let basis = RatMatrix::from_i64(&[&[1, 1, 0], &[1, -1, 0], &[0, 0, 1]]);
        let diagonal = vec![values[0].clone(), values[2].clone(), values[1].clone()];
        let mut cert = exact_certificate(Method::N3Symmetric, basis, diagonal)?;
        cert.method = Method::N3Symmetric;
        return Ok(cert);
    }
    let a = n3_parameter(s);
    let two_a = rat_int(2) * &a;
    if let Some(root) = rational_sqrt(&two_a) {
        // D_u^{-1}·S_a is rational, so the symmetrized certificate is exact
        let u_inv = diag_from(&[
            Rational::one(),
            Rational::one() / &root,
            Rational::one() / &root,
        ]);
        let basis = u_inv.mul(&n3_basis(&a))?;
        let cert = exact_certificate(Method::N3Symmetric, basis, values.to_vec())?;
        if !cert.flags.nonnegative {
            return Err(Error::InternalDispatchFailure);
        }
        return Ok(cert);
    }
    // numeric fallback: conjugate the exact realizer by D_u in f64
    let exact = exact_certificate(Method::N3, n3_basis(&a), values.to_vec())?;
    let root = to_f64(&two_a).sqrt();
    let u = [1.0, root, root];
    let mut entries = vec![vec![Rational::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let v = to_f64(exact.realizer.get(i, j)) * u[j] / u[i];
            let r = Rational::from_float(v).expect("finite");
            entries[i][j] = r.clone();
            entries[j][i] = r;
        }
    }
    let realizer = RatMatrix::from_rows(entries)?;
    let root_rat = Rational::from_float(root).expect("finite");
    let u_inv = diag_from(&[
        Rational::one(),
        Rational::one() / &root_rat,
        Rational::one() / &root_rat,
    ]);
    let basis = u_inv.mul(&n3_basis(&a))?;
    let flags = derive_flags(&realizer, Some(&numeric_tolerance()));
    Ok(RealizationCertificate {
        method: Method::N3Symmetric,
        basis,
        diagonal: values.to_vec(),
        realizer,
        flags,
        numeric: true,
        padded_zeros: 0,
    })
}

/// n = 4 dispatch: the block basis H₁ ⊕ H₁ on the pairing
/// ({λ₁, λ₄}, {λ₂, λ₃}) first, the Walsh basis H₂ otherwise; both use
/// v = (λ₁, λ₄, λ₂, λ₃).
pub fn realize_n4(s: &Spectrum) -> Result<RealizationCertificate> {
    if s.len() != 4 {
        return Err(Error::LengthMismatch {
            expected: 4,
            got: s.len(),
        });
    }
    check_trace_and_radius(s)?;
    let v = s.values();
    let diagonal = vec![v[0].clone(), v[3].clone(), v[1].clone(), v[2].clone()];
    let h1 = RatMatrix::from_i64(&[&[1, 1], &[1, -1]]);
    let blocks = direct_sum(&[h1.clone(), h1.clone()])?;
    let cert = exact_certificate(Method::N4Blocks, blocks, diagonal.clone())?;
    if cert.flags.nonnegative {
        return Ok(cert);
    }
    let h2 = crate::hadamard::walsh(2)?.into_matrix();
    let cert = exact_certificate(Method::N4Walsh, h2, diagonal)?;
    if cert.flags.nonnegative {
        return Ok(cert);
    }
    Err(Error::InternalDispatchFailure)
}

/// s₁(σ) ≥ 0 and exactly one positive value.
pub fn is_suleimanova(s: &Spectrum) -> bool {
    !s.sum().is_negative() && s.values().iter().filter(|v| v.is_positive()).count() == 1
}

/// The convex decomposition behind the Hadamard–Suleimanova construction:
/// μ₁ = s₁(σ), μ_k = −λ_k for k ≥ 2, with μ ≥ 0 and Σμ_k = 1 for a
/// normalized Suleimanova spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuleimanovaDecomposition {
    pub mu: RatVector,
}

pub fn suleimanova_decomposition(s: &Spectrum) -> Result<SuleimanovaDecomposition> {
    if !s.is_normalized() || !is_suleimanova(s) {
        return Err(Error::NotSuleimanova(
            "decomposition needs a normalized Suleimanova spectrum".into(),
        ));
    }
    let mut mu = vec![s.sum()];
    mu.extend(s.values()[1..].iter().map(|v| -v.clone()));
    Ok(SuleimanovaDecomposition { mu })
}

impl SuleimanovaDecomposition {
    /// Reconstructs the diagonal v = μ₁e₁ + Σ_{k≥2} μ_k (e₁ − e_k).
    pub fn reconstruct(&self) -> RatVector {
        let n = self.mu.len();
        let mut v = vec![Rational::zero(); n];
        v[0] = self.mu[0].clone();
        for k in 1..n {
            v[0] += &self.mu[k];
            v[k] -= &self.mu[k];
        }
        v
    }
}

/// Theorem construction A = (1/n)·H·D_v·H^T: symmetric, doubly stochastic,
/// nonnegative, exact; trisymmetric when H is the Walsh matrix.
pub fn realize_suleimanova(
    s: &Spectrum,
    h: &NormalizedHadamard,
) -> Result<RealizationCertificate> {
    if s.len() != h.order() {
        return Err(Error::OrderMismatch {
            spectrum: s.len(),
            order: h.order(),
        });
    }
    if !s.is_normalized() {
        return Err(Error::NotSuleimanova("spectrum is not normalized".into()));
    }
    if !is_suleimanova(s) {
        return Err(Error::NotSuleimanova(
            "spectrum must have nonnegative sum and exactly one positive value".into(),
        ));
    }
    // H^{-1} = H^T / n for any Hadamard matrix of order n
    let h_inv = h
        .matrix()
        .transpose()
        .scale(&(Rational::one() / rat_int(h.order() as i64)));
    exact_certificate_with_inverse(
        Method::Suleimanova,
        h.matrix().clone(),
        h_inv,
        s.values().to_vec(),
    )
}

/// Pads with N = next_hadamard_order(n) − n zeros and applies the theorem
/// construction at the padded order. The certificate realizes the padded
/// spectrum and records N.
pub fn realize_suleimanova_padded(s: &Spectrum) -> Result<RealizationCertificate> {
    if !s.is_normalized() || !is_suleimanova(s) {
        return Err(Error::NotSuleimanova(
            "padding needs a normalized Suleimanova spectrum".into(),
        ));
    }
    let n = s.len();
    let target = next_hadamard_order(n);
    let pad = target - n;
    let mut values = s.values().to_vec();
    values.extend(std::iter::repeat(Rational::zero()).take(pad));
    let padded = Spectrum::new(values)?;
    let h = hadamard_of_order(target)?;
    let mut cert = realize_suleimanova(&padded, &h)?;
    if pad > 0 {
        cert.method = Method::SuleimanovaPadded;
        cert.padded_zeros = pad;
    }
    Ok(cert)
}

/// End-to-end dispatch: sorts, checks the necessary conditions, normalizes,
/// and picks a constructive route. Certificates are exact; the realizer's
/// spectrum is the input (plus recorded zeros on the padded route).
pub fn realize_auto(raw: &[Rational]) -> Result<RealizationCertificate> {
    let spectrum = Spectrum::new(raw.to_vec())?;
    let report = necessary_conditions(spectrum.values(), None)?;
    if !report.passed {
        let summary = report
            .violations
            .iter()
            .map(|v| format!("{}: {}", v.condition, v.witness))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::ConditionsFail(summary));
    }
    let n = spectrum.len();
    if spectrum.values().iter().all(|v| v.is_zero()) {
        // zero spectrum: the constructions below handle n ≤ 4 (a = 0 paths)
        if n > 4 {
            return Err(Error::NotSupported(
                "no constructive route for the all-zero spectrum beyond n = 4".into(),
            ));
        }
    }
    // Suleimanova spectra at catalogued Hadamard orders take the group-matrix
    // route even for small n: it yields a doubly stochastic realizer directly.
    if !spectrum.values().iter().all(|v| v.is_zero()) {
        let (normalized, scale) = normalize(spectrum.values())?;
        if is_suleimanova(&normalized) && crate::hadamard::order_in_catalogue(n) {
            let mut cert = realize_suleimanova(&normalized, &hadamard_of_order(n)?)?;
            if !scale.is_one() {
                cert.diagonal = cert.diagonal.iter().map(|v| v * &scale).collect();
                cert.realizer = cert.realizer.scale(&scale);
                cert.flags = derive_flags(&cert.realizer, None);
            }
            return Ok(cert);
        }
    }
    match n {
        1 => {
            return exact_certificate(
                Method::N1,
                RatMatrix::identity(1),
                spectrum.values().to_vec(),
            );
        }
        2 => return realize_n2(&spectrum),
        3 => return realize_n3(&spectrum),
        4 => return realize_n4(&spectrum),
        _ => {}
    }
    let (normalized, scale) = normalize(spectrum.values())?;
    if !is_suleimanova(&normalized) {
        return Err(Error::NotSupported(format!(
            "spectrum of size {n} passes the necessary conditions but is not Suleimanova; \
             no constructive route applies"
        )));
    }
    let mut cert = realize_suleimanova_padded(&normalized)?;
    if !scale.is_one() {
        cert.diagonal = cert.diagonal.iter().map(|v| v * &scale).collect();
        cert.realizer = cert.realizer.scale(&scale);
        cert.flags = derive_flags(&cert.realizer, None);
    }
    Ok(cert)
}

/// One failed certificate check.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub failures: Vec<CheckFailure>,
}

/// Re-derives everything a certificate claims: the similarity
/// A = S·D_v·S^{-1}, nonnegativity, the characteristic polynomial identity
/// against the expected spectrum, and every set flag. Exact certificates are
/// checked exactly; numeric ones within 10^-12.
pub fn verify_certificate(
    cert: &RealizationCertificate,
    expected: &Spectrum,
) -> VerificationReport {
    let mut failures = Vec::new();
    let tol = if cert.numeric {
        numeric_tolerance()
    } else {
        Rational::zero()
    };
    let a = &cert.realizer;
    let n = a.rows();

    // similarity: A·S = S·D_v avoids inverting a numeric basis
    match (
        a.mul(&cert.basis),
        cert.basis.mul(&diag_from(&cert.diagonal)),
    ) {
        (Ok(lhs), Ok(rhs)) => {
            let mut max_err = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    let e = (lhs.get(i, j) - rhs.get(i, j)).abs();
                    if e > max_err {
                        max_err = e;
                    }
                }
            }
            if max_err > tol {
                failures.push(CheckFailure {
                    check: "similarity".into(),
                    detail: format!(
                        "A·S ≠ S·D_v (max entry error {})",
                        format_rational(&max_err)
                    ),
                });
            }
        }
        _ => failures.push(CheckFailure {
            check: "similarity".into(),
            detail: "shape mismatch between realizer and basis".into(),
        }),
    }

    // nonnegativity, with the first offending entry located
    'nonneg: for i in 0..n {
        for j in 0..n {
            if a.get(i, j) < &(-tol.clone()) {
                failures.push(CheckFailure {
                    check: "nonnegative".into(),
                    detail: format!(
                        "entry ({},{}) = {}",
                        i + 1,
                        j + 1,
                        format_rational(a.get(i, j))
                    ),
                });
                break 'nonneg;
            }
        }
    }

    // spectrum: char_poly(A) = Π(t − λ_i) · t^N
    let mut roots = expected.values().to_vec();
    roots.extend(std::iter::repeat(Rational::zero()).take(cert.padded_zeros));
    if roots.len() != n {
        failures.push(CheckFailure {
            check: "char-poly".into(),
            detail: format!(
                "certificate realizes order {n}, expected spectrum has {} values",
                roots.len()
            ),
        });
    } else {
        match char_poly(a) {
            Ok(actual) => {
                let wanted = poly_from_roots(&roots);
                let mismatch = actual
                    .iter()
                    .zip(&wanted)
                    .any(|(x, y)| (x - y).abs() > tol);
                if mismatch {
                    failures.push(CheckFailure {
                        check: "char-poly".into(),
                        detail: "characteristic polynomial does not match the expected spectrum"
                            .into(),
                    });
                }
            }
            Err(e) => failures.push(CheckFailure {
                check: "char-poly".into(),
                detail: e.to_string(),
            }),
        }
    }

    // every set flag must be re-derivable from A
    let derived = derive_flags(a, if cert.numeric { Some(&tol) } else { None });
    for (name, claimed, actual) in [
        ("nonnegative", cert.flags.nonnegative, derived.nonnegative),
        ("symmetric", cert.flags.symmetric, derived.symmetric),
        (
            "row_stochastic",
            cert.flags.row_stochastic,
            derived.row_stochastic,
        ),
        (
            "doubly_stochastic",
            cert.flags.doubly_stochastic,
            derived.doubly_stochastic,
        ),
        (
            "trisymmetric",
            cert.flags.trisymmetric,
            derived.trisymmetric,
        ),
    ] {
        if claimed && !actual {
            failures.push(CheckFailure {
                check: "flag".into(),
                detail: format!("claimed flag {name} does not hold"),
            });
        }
    }

    VerificationReport {
        passed: failures.is_empty(),
        failures,
    }
}

/// The unique 3×3 trace-zero doubly stochastic pattern, with an exact test
/// for realness of its spectrum (real iff a = 1/2).
pub fn trace_zero_3x3_circulant(a: &Rational) -> Result<(RatMatrix, bool)> {
    if a.is_negative() || a > &Rational::one() {
        return Err(Error::OutOfRange(format!(
            "a = {} must lie in [0, 1]",
            format_rational(a)
        )));
    }
    let b = Rational::one() - a;
    let m = RatMatrix::from_rows(vec![
        vec![Rational::zero(), a.clone(), b.clone()],
        vec![b.clone(), Rational::zero(), a.clone()],
        vec![a.clone(), b, Rational::zero()],
    ])?;
    // char poly = (t - 1)(t^2 + pt + q); the pair is real iff the
    // discriminant p^2 - 4q is nonnegative
    let coeffs = char_poly(&m)?;
    // synthetic division by (t - 1): t^3 + c2 t^2 + c1 t + c0
    let c2 = coeffs[2].clone();
    let c1 = coeffs[1].clone();
    let p = c2 + Rational::one();
    let q = c1 + &p;
    let disc = &p * &p - rat_int(4) * &q;
    Ok((m, !disc.is_negative()))
}
