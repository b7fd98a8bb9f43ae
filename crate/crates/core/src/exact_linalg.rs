//! Dense exact rational linear algebra.
//!
//! All values are immutable after construction and every operation returns a
//! fresh value, so everything here is safe to share across threads.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

pub type RatVector = Vec<Rational>;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged or empty row list".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
        .expect("literal matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The all-ones matrix J.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::one())
    }

    /// The exchange matrix K (reversed identity).
    pub fn exchange(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i + j == n - 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> RatVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<RatVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RatVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * &v[k];
                }
                acc
            })
            .collect())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn check_square(&self) -> Result<()> {
        if !self.is_square() {
            Err(Error::ShapeMismatch(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )))
        } else {
            Ok(())
        }
    }
}

/// Exact inverse via elimination with full pivot search; fails with
/// `Singular` exactly when no nonzero pivot remains.
pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    m.check_square()?;
    let n = m.rows();
    // Augmented [M | I], reduced in place to [I | M^-1].
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i);
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let mut col_perm: Vec<usize> = (0..n).collect();
    for step in 0..n {
        // Full pivot search over the remaining block.
        let mut pivot = None;
        'search: for i in step..n {
            for j in step..n {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = pivot.ok_or(Error::Singular)?;
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
            col_perm.swap(step, pj);
        }
        let p = a[step][step].clone();
        for v in a[step].iter_mut() {
            *v /= &p;
        }
        for i in 0..n {
            if i == step || a[i][step].is_zero() {
                continue;
            }
            let f = a[i][step].clone();
            for j in 0..2 * n {
                let d = &a[step][j] * &f;
                a[i][j] -= d;
            }
        }
    }
    // Undo the column permutation: variable col_perm[i] holds row i of the inverse.
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.data[col_perm[i] * n + j] = a[i][n + j].clone();
        }
    }
    Ok(inv)
}

/// Clears denominators of a slice of rationals: returns the integer images
/// after multiplying through by the lcm of the denominators.
pub(crate) fn clear_denominators(values: &[&Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Solves the square system `A x = b` exactly; `Singular` when A is not
/// invertible. Each equation is scaled to integers and eliminated
/// fraction-free (Bareiss), which keeps the intermediate entries small.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<RatVector> {
    a.check_square()?;
    let n = a.rows();
    if b.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut refs: Vec<&Rational> = (0..n).map(|j| a.get(i, j)).collect();
            refs.push(&b[i]);
            clear_denominators(&refs)
        })
        .collect();
    solve_int(m).ok_or(Error::Singular)
}

/// Core of `solve`: fraction-free elimination of n augmented integer rows of
/// length n+1; None when the system is singular.
pub(crate) fn solve_int(mut m: Vec<Vec<BigInt>>) -> Option<RatVector> {
    let n = m.len();
    let mut prev = BigInt::one();
    for step in 0..n {
        let pivot = (step..n).find(|&i| !m[i][step].is_zero())?;
        m.swap(step, pivot);
        for i in step + 1..n {
            for j in step + 1..=n {
                m[i][j] = (&m[step][step] * &m[i][j] - &m[i][step] * &m[step][j]) / &prev;
            }
            m[i][step] = BigInt::zero();
        }
        prev = m[step][step].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Some(x)
}

/// Exact determinant via the Bareiss fraction-free recurrence.
pub fn determinant(m: &RatMatrix) -> Result<Rational> {
    m.check_square()?;
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i)).collect();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for step in 0..n {
        let pivot = match (step..n).find(|&i| !a[i][step].is_zero()) {
            Some(p) => p,
            None => return Ok(Rational::zero()),
        };
        if pivot != step {
            a.swap(step, pivot);
            sign = -sign;
        }
        for i in step + 1..n {
            for j in step + 1..n {
                let v = (&a[step][step] * &a[i][j] - &a[i][step] * &a[step][j]) / &prev;
                a[i][j] = v;
            }
            a[i][step] = Rational::zero();
        }
        prev = a[step][step].clone();
    }
    Ok(sign * a[n - 1][n - 1].clone())
}

/// Coefficients of `det(tI - M)` in ascending degree order, length n+1 with
/// leading coefficient one. Computed by the Faddeev-LeVerrier recurrence on
/// the denominator-cleared integer matrix (every intermediate is an integer,
/// so no gcd reductions happen in the inner loops), then rescaled:
/// for B = dM, the k-th coefficient of char_poly(M) is that of char_poly(B)
/// divided by d^{n-k}.
pub fn char_poly(m: &RatMatrix) -> Result<Vec<Rational>> {
    m.check_square()?;
    let n = m.rows();
    let mut d = BigInt::one();
    for e in (0..n).flat_map(|i| (0..n).map(move |j| (i, j))) {
        d = d.lcm(m.get(e.0, e.1).denom());
    }
    let b: Vec<BigInt> = (0..n)
        .flat_map(|i| (0..n).map(move |j| m.get(i, j)))
        .map(|e| e.numer() * (&d / e.denom()))
        .collect();
    let mut int_coeffs = vec![BigInt::zero(); n + 1];
    int_coeffs[n] = BigInt::one();
    let mut mk = b.clone();
    for k in 1..=n {
        let tr: BigInt = (0..n).map(|i| mk[i * n + i].clone()).sum();
        let c = -(tr / BigInt::from(k)); // exact by the recurrence
        int_coeffs[n - k] = c.clone();
        if k < n {
            for i in 0..n {
                mk[i * n + i] += &c;
            }
            let mut next = vec![BigInt::zero(); n * n];
            for i in 0..n {
                for l in 0..n {
                    let bil = &b[i * n + l];
                    if bil.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        next[i * n + j] += bil * &mk[l * n + j];
                    }
                }
            }
            mk = next;
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut power = num::pow::pow(d.clone(), n); // d^{n-k}, descending as k grows
    for c in int_coeffs {
        coeffs.push(Rational::new(c, power.clone()));
        power /= &d;
    }
    Ok(coeffs)
}

/// Evaluates an ascending-coefficient polynomial at a square matrix.
pub fn eval_poly_matrix(coeffs: &[Rational], m: &RatMatrix) -> Result<RatMatrix> {
    m.check_square()?;
    let n = m.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = m.mul(&acc)?.add(&RatMatrix::identity(n).scale(c))?;
    }
    Ok(acc)
}

/// Monic polynomial with the given roots, ascending coefficients.
pub fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for r in roots {
        // multiply by (t - r)
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

pub fn kron(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    RatMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    })
}

pub fn direct_sum(blocks: &[RatMatrix]) -> Result<RatMatrix> {
    if blocks.is_empty() {
        return Err(Error::ShapeMismatch("empty block list".into()));
    }
    for b in blocks {
        b.check_square()?;
    }
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut m = RatMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.data[(off + i) * n + off + j] = b.get(i, j).clone();
            }
        }
        off += b.rows();
    }
    Ok(m)
}

pub fn hadamard_product(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    a.check_same_shape(b)?;
    Ok(RatMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        a.get(i, j) * b.get(i, j)
    }))
}

pub fn diag_from(v: &[Rational]) -> RatMatrix {
    RatMatrix::from_fn(v.len(), v.len(), |i, j| {
        if i == j {
            v[i].clone()
        } else {
            Rational::zero()
        }
    })
}

pub fn diag_of(m: &RatMatrix) -> Result<RatVector> {
    m.check_square()?;
    Ok((0..m.rows()).map(|i| m.get(i, i).clone()).collect())
}

impl serde::Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq((0..self.rows).map(|i| {
            self.row(i)
                .iter()
                .map(crate::rational::format_rational)
                .collect::<Vec<_>>()
        }))
    }
}

impl<'de> serde::Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let grid = Vec::<Vec<String>>::deserialize(d)?;
        let rows = grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| crate::rational::parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        RatMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// A permutation stored as an index map: row i of the identity moves to row
/// `image[i]` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSpec {
    image: Vec<usize>,
}

impl PermutationSpec {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::Parse("not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Self {
            image: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Materializes P with `P e_i = e_{image[i]}`, i.e. column i of P is
    /// `e_{image[i]}`.
    pub fn as_matrix(&self) -> RatMatrix {
        let n = self.image.len();
        RatMatrix::from_fn(n, n, |i, j| {
            if self.image[j] == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Applies P to a vector: `(Px)_{image[i]} = x_i`.
    pub fn apply(&self, x: &[Rational]) -> Result<RatVector> {
        if x.len() != self.image.len() {
            return Err(Error::LengthMismatch {
                expected: self.image.len(),
                got: x.len(),
            });
        }
        let mut out = vec![Rational::zero(); x.len()];
        for (i, &to) in self.image.iter().enumerate() {
            out[to] = x[i].clone();
        }
        Ok(out)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        // (self ∘ other)(i) = self(other(i))
        Ok(Self {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        })
    }
}
