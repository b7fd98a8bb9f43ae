//! H-representations of the Perron spectracone and its polytopic slices,
//! exact membership tests, simplex volumes, and brute-force vertex
//! enumeration for small dimensions.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    clear_denominators, determinant, diag_from, inverse, solve_int, RatMatrix, RatVector,
};
use crate::hadamard::walsh;
use crate::rational::{rat_int, Rational};

/// Provenance of an inequality row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// Nonnegativity of matrix entry (i, j) of S·D_x·S^{-1} (1-based).
    Entry { i: usize, j: usize },
    /// A ±x_i ≤ 1 box row.
    Box,
    /// An x_1 = 1 slice row.
    Slice,
}

/// One inequality `normal · x ≤ offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(rename = "a", with = "crate::rational::serde_rational_vec")]
    pub normal: RatVector,
    #[serde(rename = "b", with = "crate::rational::serde_rational")]
    pub offset: Rational,
    pub tag: Tag,
}

/// Polyhedron {x : normal_r · x ≤ offset_r for every row r}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub rows: Vec<Inequality>,
}

impl HRep {
    /// Exact membership: every inequality holds (closed sets, equality
    /// allowed).
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.rows.iter().all(|row| {
            let lhs: Rational = row
                .normal
                .iter()
                .zip(x)
                .map(|(a, v)| a * v)
                .sum();
            lhs <= row.offset
        }))
    }
}

pub fn hrep_membership(h: &HRep, x: &[Rational]) -> Result<bool> {
    h.contains(x)
}

/// The n² homogeneous rows of the Perron spectracone C(S): entry (i,j) of
/// S·D_x·S^{-1} is Σ_k s_ik t_kj x_k ≥ 0. Identically-zero rows are kept
/// with their tags so the row count stays n².
pub fn spectracone_hrep(s: &RatMatrix) -> Result<HRep> {
    let s_inv = inverse(s)?;
    let n = s.rows();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let normal: RatVector = (0..n)
                .map(|k| -(s.get(i, k) * s_inv.get(k, j)))
                .collect();
            rows.push(Inequality {
                normal,
                offset: Rational::zero(),
                tag: Tag::Entry { i: i + 1, j: j + 1 },
            });
        }
    }
    Ok(HRep { dim: n, rows })
}

/// Spectratope P(S): the cone rows plus the slice pair x₁ ≤ 1, −x₁ ≤ −1.
pub fn spectratope_hrep(s: &RatMatrix) -> Result<HRep> {
    let mut h = spectracone_hrep(s)?;
    let n = h.dim;
    let mut e1 = vec![Rational::zero(); n];
    e1[0] = Rational::one();
    h.rows.push(Inequality {
        normal: e1.clone(),
        offset: Rational::one(),
        tag: Tag::Slice,
    });
    e1[0] = -Rational::one();
    h.rows.push(Inequality {
        normal: e1,
        offset: -Rational::one(),
        tag: Tag::Slice,
    });
    Ok(h)
}

/// W(S) = C(S) ∩ B^n: cone rows plus the box rows ±x_i ≤ 1.
pub fn wpolytope_hrep(s: &RatMatrix) -> Result<HRep> {
    let mut h = spectracone_hrep(s)?;
    let n = h.dim;
    for i in 0..n {
        for sign in [Rational::one(), -Rational::one()] {
            let mut normal = vec![Rational::zero(); n];
            normal[i] = sign;
            h.rows.push(Inequality {
                normal,
                offset: Rational::one(),
                tag: Tag::Box,
            });
        }
    }
    Ok(h)
}

/// Projected spectratope P¹(S) ⊂ R^{n-1}: x₁ is pinned to 1 on P(S), so the
/// projection is substitution of x₁ = 1 into every cone row, plus box rows
/// on the remaining coordinates.
pub fn project_p1(s: &RatMatrix) -> Result<HRep> {
    let cone = spectracone_hrep(s)?;
    let n = cone.dim;
    if n < 2 {
        return Err(Error::ShapeMismatch(
            "projection needs dimension at least 2".into(),
        ));
    }
    let mut rows = Vec::with_capacity(cone.rows.len() + 2 * (n - 1));
    for row in cone.rows {
        let offset = -row.normal[0].clone();
        rows.push(Inequality {
            normal: row.normal[1..].to_vec(),
            offset,
            tag: row.tag,
        });
    }
    for i in 0..n - 1 {
        for sign in [Rational::one(), -Rational::one()] {
            let mut normal = vec![Rational::zero(); n - 1];
            normal[i] = sign;
            rows.push(Inequality {
                normal,
                offset: Rational::one(),
                tag: Tag::Box,
            });
        }
    }
    Ok(HRep { dim: n - 1, rows })
}

/// Direct definition check: A = S·D_x·S^{-1} computed exactly; membership is
/// A ≥ 0 and A is returned as witness either way.
pub fn cone_membership_direct(s: &RatMatrix, x: &[Rational]) -> Result<(bool, RatMatrix)> {
    if x.len() != s.rows() {
        return Err(Error::LengthMismatch {
            expected: s.rows(),
            got: x.len(),
        });
    }
    let s_inv = inverse(s)?;
    let a = s.mul(&diag_from(x))?.mul(&s_inv)?;
    let member = a.is_nonnegative();
    Ok((member, a))
}

/// Walsh-cone shortcut: v ∈ C(H_n) iff H_n v ≥ 0 entrywise.
pub fn walsh_cone_membership(n: u32, v: &[Rational]) -> Result<bool> {
    let h = walsh(n)?.into_matrix();
    let hv = h.mul_vec(v)?;
    Ok(hv.iter().all(|e| !e.is_negative()))
}

/// n+1 affinely independent points in R^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSpec {
    vertices: Vec<RatVector>,
}

impl SimplexSpec {
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let n = vertices.len().checked_sub(1).ok_or(Error::Degenerate)?;
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "a simplex in R^n needs n+1 vertices of length n, got {} vertices",
                vertices.len()
            )));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }
}

/// Exact simplex volume |det M| / n! with M the bordered vertex matrix.
pub fn simplex_volume(s: &SimplexSpec) -> Result<Rational> {
    let n = s.vertices.len() - 1;
    let m = RatMatrix::from_fn(n + 1, n + 1, |i, j| {
        if j == 0 {
            Rational::one()
        } else {
            s.vertices[i][j - 1].clone()
        }
    });
    let det = determinant(&m)?;
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let mut fact = Rational::one();
    for k in 2..=n {
        fact *= rat_int(k as i64);
    }
    Ok(det.abs() / fact)
}

/// Caps and switches for the brute-force vertex enumerator.
#[derive(Debug, Clone)]
pub struct VertexEnumOptions {
    pub max_dim: usize,
    pub max_rows: usize,
    /// When set, search for a feasible extreme ray first and fail with
    /// `Unbounded` if one exists. Callers that know the polyhedron is a
    /// polytope may turn this off.
    pub check_bounded: bool,
}

impl Default for VertexEnumOptions {
    fn default() -> Self {
        Self {
            max_dim: 6,
            max_rows: 32,
            check_bounded: true,
        }
    }
}

pub fn enumerate_vertices(h: &HRep) -> Result<Vec<RatVector>> {
    enumerate_vertices_with(h, &VertexEnumOptions::default())
}

/// Brute force over dim-sized subsets of rows: each invertible active set
/// yields a candidate point, kept when feasible. Output is deduplicated and
/// lexicographically sorted.
pub fn enumerate_vertices_with(h: &HRep, opts: &VertexEnumOptions) -> Result<Vec<RatVector>> {
    let dim = h.dim;
    if dim > opts.max_dim {
        return Err(Error::ResourceLimit(format!(
            "dimension {dim} exceeds cap {}",
            opts.max_dim
        )));
    }
    // Dedup rows up to positive scaling; identical rows cut the same
    // halfspace and only inflate the subset search.
    let rows = dedup_rows(&h.rows);
    if rows
        .iter()
        .any(|r| r.normal.iter().all(|v| v.is_zero()) && r.offset.is_negative())
    {
        return Ok(Vec::new()); // infeasible
    }
    let rows: Vec<&Inequality> = rows
        .iter()
        .filter(|r| !r.normal.iter().all(|v| v.is_zero()))
        .collect();
    if rows.len() > opts.max_rows {
        return Err(Error::ResourceLimit(format!(
            "{} distinct inequality rows exceed cap {}",
            rows.len(),
            opts.max_rows
        )));
    }
    if opts.check_bounded && has_feasible_ray(&rows, dim) {
        return Err(Error::Unbounded);
    }

    // Two rows with opposite normals are simultaneously tight only on the
    // hyperplane a·x = b = -b'; when b ≠ -b' any subset containing both is
    // inconsistent and can be skipped without solving.
    let mut conflict = vec![0u64; rows.len()];
    for i in 0..rows.len().min(64) {
        for j in i + 1..rows.len().min(64) {
            let opposite = rows[i]
                .normal
                .iter()
                .zip(&rows[j].normal)
                .all(|(a, b)| a == &(-b.clone()));
            if opposite && rows[i].offset != -rows[j].offset.clone() {
                conflict[i] |= 1 << j;
                conflict[j] |= 1 << i;
            }
        }
    }

    // Denominator-cleared copies keep the per-subset solves and the
    // feasibility filter in integer arithmetic.
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut refs: Vec<&Rational> = r.normal.iter().collect();
            refs.push(&r.offset);
            clear_denominators(&refs)
        })
        .collect();

    let combos: Vec<Vec<usize>> = combinations(rows.len(), dim).collect();
    let verts: BTreeSet<RatVector> = combos
        .par_iter()
        .filter_map(|subset| {
            let mask = subset
                .iter()
                .filter(|&&r| r < 64)
                .fold(0u64, |m, &r| m | 1 << r);
            if subset.iter().any(|&r| conflict[r] & mask != 0) {
                return None;
            }
            let m: Vec<Vec<BigInt>> = subset.iter().map(|&r| int_rows[r].clone()).collect();
            let x = solve_int(m)?;
            // write x over a common positive denominator so each inequality
            // becomes one integer comparison
            let mut den = BigInt::one();
            for v in &x {
                den = den.lcm(v.denom());
            }
            let nums: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
            let feasible = int_rows.iter().all(|row| {
                let lhs: BigInt = row[..dim].iter().zip(&nums).map(|(a, v)| a * v).sum();
                lhs <= &row[dim] * &den
            });
            feasible.then_some(x)
        })
        .collect();
    Ok(verts.into_iter().collect())
}

/// Recession-cone ray search: an extreme ray of {d : A d ≤ 0} is determined
/// by dim−1 independent active rows, so scanning those subsets finds one
/// whenever the polyhedron is unbounded (given full-rank rows).
fn has_feasible_ray(rows: &[&Inequality], dim: usize) -> bool {
    let rank = {
        let m = RatMatrix::from_fn(rows.len().max(1), dim, |i, j| {
            if rows.is_empty() {
                Rational::zero()
            } else {
                rows[i].normal[j].clone()
            }
        });
        row_rank(&m)
    };
    if rank < dim {
        // a whole line lies in the recession cone
        return true;
    }
    if dim == 1 {
        return [Rational::one(), -Rational::one()].iter().any(|d| {
            rows.iter().all(|r| !(&r.normal[0] * d).is_positive())
        });
    }
    let combos: Vec<Vec<usize>> = combinations(rows.len(), dim - 1).collect();
    combos.par_iter().any(|subset| {
        let m = RatMatrix::from_fn(dim - 1, dim, |i, j| rows[subset[i]].normal[j].clone());
        let Some(d) = nullspace_direction(&m) else {
            return false;
        };
        [d.clone(), d.iter().map(|v| -v.clone()).collect()]
            .iter()
            .any(|dir| {
                rows.iter().all(|r| {
                    let dot: Rational =
                        r.normal.iter().zip(dir.iter()).map(|(a, v)| a * v).sum();
                    !dot.is_positive()
                })
            })
    })
}

fn row_rank(m: &RatMatrix) -> usize {
    let mut a: Vec<RatVector> = (0..m.rows()).map(|i| m.row(i)).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in 0..a.len() {
            if i == rank || a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pivot;
            for j in col..m.cols() {
                let d = &a[rank][j] * &f;
                a[i][j] -= d;
            }
        }
        rank += 1;
        if rank == m.rows() {
            break;
        }
    }
    rank
}

/// Unique-up-to-scale kernel vector of a (dim−1)×dim matrix of full row
/// rank; None when the rows are dependent.
fn nullspace_direction(m: &RatMatrix) -> Option<RatVector> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<RatVector> = (0..rows).map(|i| m.row(i)).collect();
    let mut pivot_col = vec![usize::MAX; rows];
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v /= &pv;
        }
        for i in 0..rows {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..cols {
                let d = &a[r][j] * &f;
                a[i][j] -= d;
            }
        }
        pivot_col[r] = col;
        r += 1;
        if r == rows {
            break;
        }
    }
    if r < rows {
        return None; // dependent rows: kernel has dimension > 1
    }
    let free = (0..cols).find(|c| !pivot_col.contains(c))?;
    let mut d = vec![Rational::zero(); cols];
    d[free] = Rational::one();
    for (i, &pc) in pivot_col.iter().enumerate() {
        d[pc] = -a[i][free].clone();
    }
    Some(d)
}

fn dedup_rows(rows: &[Inequality]) -> Vec<Inequality> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        let mut combined = row.normal.clone();
        combined.push(row.offset.clone());
        if let Some(first) = combined.iter().find(|v| !v.is_zero()) {
            let scale = first.abs();
            for v in combined.iter_mut() {
                *v /= &scale;
            }
        }
        if seen.insert(combined) {
            out.push(row.clone());
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = if k <= n {
        Some((0..k).collect())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let current = state.clone()?;
        // advance
        let mut next = current.clone();
        let mut i = k;
        loop {
            if i == 0 {
                state = None;
                break;
            }
            i -= 1;
            if next[i] + (k - i) < n {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                state = Some(next);
                break;
            }
        }
        Some(current)
    })
}
