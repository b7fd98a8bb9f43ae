//! Walsh (Sylvester) and normalized Hadamard matrices, the permutation basis
//! of the associated association scheme, and its group-matrix algebra.

use std::sync::OnceLock;

use num::traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    diag_from, kron, PermutationSpec, RatMatrix, RatVector,
};
use crate::rational::{rat_int, Rational};

/// Default cap on the order of a constructed Walsh matrix.
pub const DEFAULT_WALSH_CAP: usize = 1 << 12;

/// Normalized Hadamard matrix of order 12, produced by the Paley type-I
/// construction over GF(11) and then sign-normalized. Validated against
/// H H^T = 12 I on first use.
const ORDER_12: &str = "\
++++++++++++
+-+-+++---+-
+--+-+++---+
++--+-+++---
+-+--+-+++--
+--+--+-+++-
+---+--+-+++
++---+--+-++
+++---+--+-+
++++---+--+-
+-+++---+--+
++-+++---+--";

/// Sylvester-construction Hadamard matrix of order 2^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshMatrix {
    n: u32,
    matrix: RatMatrix,
}

impl WalshMatrix {
    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        1 << self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.matrix
    }
}

/// ±1 matrix with H H^T = order·I whose first row and column are all ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedHadamard {
    order: usize,
    matrix: RatMatrix,
}

impl NormalizedHadamard {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.matrix
    }

    /// True when the matrix is the Sylvester/Walsh matrix of its order.
    pub fn is_walsh(&self) -> bool {
        self.order.is_power_of_two()
            && walsh((self.order.trailing_zeros()) as u32)
                .map(|w| w.matrix == self.matrix)
                .unwrap_or(false)
    }
}

pub fn walsh(n: u32) -> Result<WalshMatrix> {
    walsh_with_cap(n, DEFAULT_WALSH_CAP)
}

pub fn walsh_with_cap(n: u32, cap: usize) -> Result<WalshMatrix> {
    if n >= usize::BITS || (1usize << n) > cap {
        return Err(Error::ResourceLimit(format!(
            "Walsh order 2^{n} exceeds cap {cap}"
        )));
    }
    // H_n = H_1 ⊗ H_{n-1}; entry form (-1)^{popcount(i & j)} agrees with the
    // recursion and avoids building intermediates.
    let order = 1usize << n;
    let matrix = RatMatrix::from_fn(order, order, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            rat_int(1)
        } else {
            rat_int(-1)
        }
    });
    Ok(WalshMatrix { n, matrix })
}

pub fn check_hadamard(h: &RatMatrix) -> Result<usize> {
    if !h.is_square() {
        return Err(Error::NotHadamard("matrix is not square".into()));
    }
    let m = h.rows();
    let one = Rational::one();
    for i in 0..m {
        for j in 0..m {
            let v = h.get(i, j);
            if v != &one && v != &(-one.clone()) {
                return Err(Error::NotHadamard(format!(
                    "entry ({},{}) is not ±1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let gram = h.mul(&h.transpose()).expect("square");
    if gram != RatMatrix::identity(m).scale(&rat_int(m as i64)) {
        return Err(Error::NotHadamard("H·H^T ≠ order·I".into()));
    }
    Ok(m)
}

/// Sign-flips rows and columns of a Hadamard matrix until the first row and
/// column are all ones.
pub fn normalize_hadamard(h: &RatMatrix) -> Result<NormalizedHadamard> {
    let order = check_hadamard(h)?;
    let mut rows: Vec<Vec<Rational>> = (0..order).map(|i| h.row(i)).collect();
    for row in rows.iter_mut() {
        if row[0].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    for j in 0..order {
        if rows[0][j].is_negative() {
            for row in rows.iter_mut() {
                row[j] = -row[j].clone();
            }
        }
    }
    Ok(NormalizedHadamard {
        order,
        matrix: RatMatrix::from_rows(rows).expect("square"),
    })
}

fn order12() -> &'static NormalizedHadamard {
    static CELL: OnceLock<NormalizedHadamard> = OnceLock::new();
    CELL.get_or_init(|| {
        let rows: Vec<Vec<Rational>> = ORDER_12
            .lines()
            .map(|line| {
                line.chars()
                    .map(|c| if c == '+' { rat_int(1) } else { rat_int(-1) })
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows).expect("constant is rectangular");
        normalize_hadamard(&m).expect("embedded order-12 constant is Hadamard")
    })
}

/// Builds the normalized Hadamard matrix of a supported order
/// (m = 2^a · 12^b) as a Kronecker product of Walsh factors and the embedded
/// order-12 matrix.
pub fn hadamard_of_order(m: usize) -> Result<NormalizedHadamard> {
    if !order_in_catalogue(m) {
        let below = (1..=m).rev().find(|&k| order_in_catalogue(k)).unwrap_or(1);
        let above = (m..).find(|&k| order_in_catalogue(k)).unwrap_or(m);
        return Err(Error::UnsupportedOrder {
            order: m,
            below,
            above,
        });
    }
    let mut rem = m;
    let mut twelves = 0usize;
    while rem % 3 == 0 {
        rem /= 12;
        twelves += 1;
    }
    // rem is a power of two by the catalogue check
    let n = rem.trailing_zeros();
    let mut h = walsh_with_cap(n, usize::MAX)?.into_matrix();
    for _ in 0..twelves {
        h = kron(&h, order12().matrix());
    }
    normalize_hadamard(&h)
}

/// Membership in the supported set {2^a · 12^b}.
pub fn order_in_catalogue(m: usize) -> bool {
    if m == 0 {
        return false;
    }
    let mut v3 = 0usize;
    let mut rem = m;
    while rem % 3 == 0 {
        rem /= 3;
        v3 += 1;
    }
    // rem must be a power of two with at least 2·v3 factors of two
    rem.is_power_of_two() && rem.trailing_zeros() as usize >= 2 * v3
}

/// Smallest supported Hadamard order ≥ m.
pub fn next_hadamard_order(m: usize) -> usize {
    (m.max(1)..).find(|&k| order_in_catalogue(k)).expect("powers of two are unbounded")
}

/// The k-th permutation of the order-2^n association scheme, defined by the
/// recursion P_{nk} = P_{11} ⊗ P_{(n-1)k} (low half) / P_{12} ⊗ P_{(n-1)ℓ}
/// (high half). Closed form: index i maps to i XOR (k-1).
pub fn perm_basis(n: u32, k: usize) -> Result<PermutationSpec> {
    let order = 1usize << n;
    if k == 0 || k > order {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: order,
        });
    }
    PermutationSpec::new((0..order).map(|i| i ^ (k - 1)).collect())
}

/// All 2^n basis permutations P_{n1}, ..., P_{n2^n}.
#[derive(Debug, Clone)]
pub struct SchemeBasis {
    n: u32,
    perms: Vec<PermutationSpec>,
}

impl SchemeBasis {
    pub fn new(n: u32) -> Result<Self> {
        let perms = (1..=(1usize << n))
            .map(|k| perm_basis(n, k))
            .collect::<Result<_>>()?;
        Ok(Self { n, perms })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn perms(&self) -> &[PermutationSpec] {
        &self.perms
    }
}

/// P_{nk} recovered spectrally as 2^{-n} H_n D_v H_n with v the k-th row of
/// H_n.
pub fn perm_from_walsh_row(n: u32, k: usize) -> Result<RatMatrix> {
    let order = 1usize << n;
    if k == 0 || k > order {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: order,
        });
    }
    let h = walsh(n)?.into_matrix();
    let v = h.row(k - 1);
    let m = h.mul(&diag_from(&v)).expect("square").mul(&h).expect("square");
    Ok(m.scale(&crate::rational::rat(1, order as i64)))
}

/// Group matrix M_x = Σ_k x_k P_{nk}; entry (i,j) is x_{i XOR j}.
pub fn group_matrix(n: u32, x: &[Rational]) -> Result<RatMatrix> {
    let order = 1usize << n;
    if x.len() != order {
        return Err(Error::LengthMismatch {
            expected: order,
            got: x.len(),
        });
    }
    Ok(RatMatrix::from_fn(order, order, |i, j| x[i ^ j].clone()))
}

/// Index j with P_{nk} P_{nl} = P_{nj} (the scheme is an elementary abelian
/// 2-group under this product).
pub fn scheme_index_product(n: u32, k: usize, l: usize) -> Result<usize> {
    let order = 1usize << n;
    for idx in [k, l] {
        if idx == 0 || idx > order {
            return Err(Error::IndexOutOfRange {
                index: idx,
                max: order,
            });
        }
    }
    Ok(((k - 1) ^ (l - 1)) + 1)
}

/// Coefficient vector x with M_x = 2^{-n} H_n D_v H_n for v = H_n x; inverse
/// of `group_matrix` on its image.
pub fn group_matrix_coeffs(n: u32, m: &RatMatrix) -> Result<RatVector> {
    let order = 1usize << n;
    if m.rows() != order || m.cols() != order {
        return Err(Error::ShapeMismatch(format!(
            "expected {order}x{order} matrix"
        )));
    }
    Ok(m.row(0))
}

/// Renders a ±1 matrix as '+'/'-' characters, one row per line.
pub fn to_pm_text(h: &RatMatrix) -> Result<String> {
    let one = Rational::one();
    let mut out = String::new();
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            let v = h.get(i, j);
            if v == &one {
                out.push('+');
            } else if v == &(-one.clone()) {
                out.push('-');
            } else {
                return Err(Error::NotHadamard(format!(
                    "entry ({},{}) is not ±1",
                    i + 1,
                    j + 1
                )));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses the '+'/'-' text form.
pub fn from_pm_text(s: &str) -> Result<RatMatrix> {
    let rows: Vec<Vec<Rational>> = s
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.trim()
                .chars()
                .map(|c| match c {
                    '+' => Ok(rat_int(1)),
                    '-' => Ok(rat_int(-1)),
                    other => Err(Error::Parse(format!("unexpected character {other:?}"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    RatMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num::traits::Zero;

    #[test]
    fn walsh_small_orders() {
        assert_eq!(walsh(0).unwrap().matrix(), &RatMatrix::identity(1));
        assert_eq!(
            walsh(1).unwrap().matrix(),
            &RatMatrix::from_i64(&[&[1, 1], &[1, -1]])
        );
        assert_eq!(
            walsh(2).unwrap().matrix(),
            &RatMatrix::from_i64(&[
                &[1, 1, 1, 1],
                &[1, -1, 1, -1],
                &[1, 1, -1, -1],
                &[1, -1, -1, 1],
            ])
        );
    }

    #[test]
    fn walsh_matches_sylvester_recursion() {
        for n in 1..=6u32 {
            let prev = walsh(n - 1).unwrap().into_matrix();
            let h1 = walsh(1).unwrap().into_matrix();
            assert_eq!(walsh(n).unwrap().matrix(), &kron(&h1, &prev));
        }
    }

    #[test]
    fn walsh_invariants_up_to_n6() {
        for n in 0..=6u32 {
            let h = walsh(n).unwrap().into_matrix();
            let order = 1usize << n;
            // (i) symmetric, (ii) inverse 2^{-n} H_n, (iii) trace zero for n>=1,
            // (iv)-(vi) first row/column behaviour
            assert!(h.is_symmetric());
            assert_eq!(
                h.mul(&h).unwrap(),
                RatMatrix::identity(order).scale(&rat_int(order as i64))
            );
            if n >= 1 {
                assert!(h.trace().is_zero());
            }
            assert!(h.row(0).iter().all(|v| v == &rat_int(1)));
            assert!(h.col(0).iter().all(|v| v == &rat_int(1)));
            let col_sums: Vec<Rational> = (0..order)
                .map(|j| h.col(j).into_iter().sum())
                .collect();
            assert_eq!(col_sums[0], rat_int(order as i64));
            assert!(col_sums[1..].iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn walsh_cap() {
        assert!(matches!(
            walsh_with_cap(5, 16),
            Err(Error::ResourceLimit(_))
        ));
        assert!(walsh_with_cap(4, 16).is_ok());
    }

    #[test]
    fn normalize_flips_signs_only() {
        let h = RatMatrix::from_i64(&[&[1, 1], &[-1, 1]]);
        let norm = normalize_hadamard(&h).unwrap();
        assert_eq!(norm.matrix(), &RatMatrix::from_i64(&[&[1, 1], &[1, -1]]));

        let h2 = walsh(2).unwrap().into_matrix();
        assert_eq!(normalize_hadamard(&h2).unwrap().matrix(), &h2);

        assert!(matches!(
            normalize_hadamard(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::NotHadamard(_))
        ));
    }

    #[test]
    fn order12_constant_is_normalized_hadamard() {
        let h = order12();
        assert_eq!(h.order(), 12);
        assert!(h.matrix().row(0).iter().all(|v| v == &rat_int(1)));
        assert!(h.matrix().col(0).iter().all(|v| v == &rat_int(1)));
        assert_eq!(check_hadamard(h.matrix()).unwrap(), 12);
    }

    #[test]
    fn hadamard_order_catalogue() {
        assert_eq!(
            hadamard_of_order(4).unwrap().matrix(),
            walsh(2).unwrap().matrix()
        );
        assert_eq!(hadamard_of_order(12).unwrap().order(), 12);
        let h24 = hadamard_of_order(24).unwrap();
        assert_eq!(h24.order(), 24);
        assert_eq!(check_hadamard(h24.matrix()).unwrap(), 24);

        match hadamard_of_order(20) {
            Err(Error::UnsupportedOrder {
                order,
                below,
                above,
            }) => {
                assert_eq!((order, below, above), (20, 16, 24));
            }
            other => panic!("expected UnsupportedOrder, got {other:?}"),
        }
    }

    #[test]
    fn next_order_scan() {
        assert_eq!(next_hadamard_order(5), 8);
        assert_eq!(next_hadamard_order(9), 12);
        assert_eq!(next_hadamard_order(4), 4);
        assert_eq!(next_hadamard_order(1), 1);
        assert_eq!(next_hadamard_order(13), 16);
        // first gap where the padding exceeds the paper's conjectural bound
        assert_eq!(next_hadamard_order(25), 32);
    }

    #[test]
    fn perm_basis_matches_recursion() {
        // P_{nk} = P_{11} ⊗ P_{(n-1)k} or P_{12} ⊗ P_{(n-1)ℓ}
        for n in 2..=4u32 {
            let half = 1usize << (n - 1);
            let p11 = RatMatrix::identity(2);
            let p12 = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
            for k in 1..=(1usize << n) {
                let expected = if k <= half {
                    kron(&p11, &perm_basis(n - 1, k).unwrap().as_matrix())
                } else {
                    kron(&p12, &perm_basis(n - 1, k - half).unwrap().as_matrix())
                };
                assert_eq!(perm_basis(n, k).unwrap().as_matrix(), expected);
            }
        }
    }

    #[test]
    fn perm_basis_ends() {
        for n in 1..=4u32 {
            let order = 1usize << n;
            assert_eq!(
                perm_basis(n, 1).unwrap(),
                PermutationSpec::identity(order)
            );
            assert_eq!(
                perm_basis(n, order).unwrap(),
                PermutationSpec::reversal(order)
            );
            assert!(perm_basis(n, 0).is_err());
            assert!(perm_basis(n, order + 1).is_err());
        }
        // (2,2): block-diagonal of two swaps
        assert_eq!(
            perm_basis(2, 2).unwrap().as_matrix(),
            RatMatrix::from_i64(&[
                &[0, 1, 0, 0],
                &[1, 0, 0, 0],
                &[0, 0, 0, 1],
                &[0, 0, 1, 0],
            ])
        );
    }

    #[test]
    fn perm_from_walsh_row_equals_basis() {
        assert_eq!(
            perm_from_walsh_row(1, 2).unwrap(),
            RatMatrix::from_i64(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(perm_from_walsh_row(3, 1).unwrap(), RatMatrix::identity(8));
        assert_eq!(
            perm_from_walsh_row(2, 3).unwrap(),
            perm_basis(2, 3).unwrap().as_matrix()
        );
    }

    #[test]
    fn group_matrix_examples() {
        let mut e1 = vec![rat_int(0); 8];
        e1[0] = rat_int(1);
        assert_eq!(group_matrix(3, &e1).unwrap(), RatMatrix::identity(8));
        assert_eq!(
            group_matrix(3, &vec![rat_int(1); 8]).unwrap(),
            RatMatrix::ones(8, 8)
        );
        // displayed 8x8 pattern: second row (x2,x1,x4,x3,x6,x5,x8,x7)
        let x: Vec<Rational> = (1..=8).map(rat_int).collect();
        let m = group_matrix(3, &x).unwrap();
        assert_eq!(m.row(0), x);
        assert_eq!(
            m.row(1),
            vec![2, 1, 4, 3, 6, 5, 8, 7]
                .into_iter()
                .map(rat_int)
                .collect::<Vec<_>>()
        );
        assert!(group_matrix(3, &x[..4]).is_err());
    }

    #[test]
    fn scheme_product_examples() {
        assert_eq!(scheme_index_product(3, 1, 5).unwrap(), 5);
        assert_eq!(scheme_index_product(3, 5, 5).unwrap(), 1);
        assert_eq!(scheme_index_product(2, 2, 3).unwrap(), 4);
        assert!(scheme_index_product(2, 0, 1).is_err());
        assert!(scheme_index_product(2, 1, 5).is_err());
    }

    #[test]
    fn pm_text_round_trip() {
        let h = walsh(2).unwrap().into_matrix();
        let text = to_pm_text(&h).unwrap();
        assert_eq!(from_pm_text(&text).unwrap(), h);
        assert!(to_pm_text(&RatMatrix::from_rows(vec![vec![rat(1, 2)]]).unwrap()).is_err());
    }
}
