//! Exact integer-lattice arithmetic.
//!
//! Points of `M` and `N` are [`LatticePoint`]s, integer matrices are
//! [`IntMatrix`], and unimodular changes of coordinates are [`LatticeMap`]s.
//! The workhorses are the Smith and Hermite normal forms, from which subgroup
//! bases, saturations, integer kernels and quotient structures are derived.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};

/// An element of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<BigInt>);

impl LatticePoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticePoint(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticePoint(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector of `Z^rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut p = Self::zero(rank);
        p.0[i] = BigInt::one();
        p
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The natural pairing `<self, other>`.
    pub fn dot(&self, other: &LatticePoint) -> BigInt {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| c * k).collect())
    }

    /// Largest absolute coordinate.
    pub fn inf_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// `v / gcd(v)`, keeping the direction.
    pub fn primitive_part(&self) -> Result<LatticePoint> {
        let g = self.content();
        if g.is_zero() {
            return Err(ToricError::ZeroVector);
        }
        Ok(LatticePoint(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }

    /// Clears denominators of a rational vector and returns the primitive
    /// integer vector pointing the same way. `None` for the zero vector.
    pub fn primitive_from_rational(v: &[BigRational]) -> Option<LatticePoint> {
        let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = v.iter().map(|c| (c * &lcm).to_integer()).collect();
        LatticePoint(ints).primitive_part().ok()
    }

    pub(crate) fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(ToricError::RankMismatch { expected: n, found: self.rank() });
        }
        Ok(())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|c| -c).collect())
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { rows: vec![vec![BigInt::zero(); ncols]; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `ncols`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, ncols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(ToricError::RankMismatch { expected: ncols, found: r.len() });
            }
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        IntMatrix { rows, ncols }
    }

    /// Matrix whose rows are the given points.
    pub fn from_points(points: &[LatticePoint], ncols: usize) -> Result<Self> {
        Self::from_rows(points.iter().map(|p| p.coords().to_vec()).collect(), ncols)
    }

    /// Matrix whose columns are the given points.
    pub fn from_columns(points: &[LatticePoint], nrows: usize) -> Result<Self> {
        Ok(Self::from_points(points, nrows)?.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> LatticePoint {
        LatticePoint(self.rows[i].clone())
    }

    pub fn column(&self, j: usize) -> LatticePoint {
        LatticePoint(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "matrix dimension mismatch");
        let mut out = IntMatrix::zeros(self.nrows(), other.ncols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    out.rows[i][j] += a * &other.rows[k][j];
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &LatticePoint) -> LatticePoint {
        assert_eq!(self.ncols, v.rank(), "matrix dimension mismatch");
        LatticePoint(self.rows.iter().map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.ncols;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn to_rational(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    /// Rank over `Q`.
    pub fn rank(&self) -> usize {
        rational_row_echelon(self.to_rational()).len()
    }

    /// Inverse over `Q`, if the matrix is square and invertible.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        if !self.is_square() {
            return None;
        }
        let n = self.ncols;
        let mut a: Vec<Vec<BigRational>> = self
            .to_rational()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(piv, col);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..2 * n {
                        let d = &f * &a[col][j];
                        a[i][j] -= d;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Integer inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let inv = self.rational_inverse()?;
        let mut rows = Vec::with_capacity(inv.len());
        for r in inv {
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                if !x.is_integer() {
                    return None;
                }
                row.push(x.to_integer());
            }
            rows.push(row);
        }
        Some(IntMatrix { rows, ncols: self.ncols })
    }

    // Elementary operations used by the normal forms.

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.ncols {
            let d = c * &self.rows[j][k];
            self.rows[i][k] += d;
        }
    }

    /// col_i += c * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in &mut self.rows {
            let d = c * &r[j];
            r[i] += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.rows[i] {
            *x = -&*x;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in &mut self.rows {
            r[j] = -&r[j];
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", LatticePoint(r.clone()))?;
        }
        write!(f, "]")
    }
}

/// A square integer matrix acting on column vectors. The unimodular flag is
/// only ever set after checking `|det| = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    matrix: IntMatrix,
    unimodular: bool,
}

impl LatticeMap {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(ToricError::RankMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        let unimodular = matrix.det().abs().is_one();
        Ok(LatticeMap { matrix, unimodular })
    }

    /// Fails unless `|det| = 1`.
    pub fn unimodular(matrix: IntMatrix) -> Result<Self> {
        let map = Self::new(matrix)?;
        if !map.unimodular {
            return Err(ToricError::Internal(format!("matrix {} is not unimodular", map.matrix)));
        }
        Ok(map)
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap { matrix: IntMatrix::identity(n), unimodular: true }
    }

    fn from_trusted(matrix: IntMatrix) -> Self {
        debug_assert!(matrix.det().abs().is_one());
        LatticeMap { matrix, unimodular: true }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn apply(&self, v: &LatticePoint) -> LatticePoint {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap { matrix: self.matrix.mul(&other.matrix), unimodular: self.unimodular && other.unimodular }
    }

    pub fn inverse(&self) -> Option<LatticeMap> {
        self.matrix.unimodular_inverse().map(Self::from_trusted)
    }

    /// Inverse transpose: the induced action on the dual lattice, so that
    /// `<g^{-T} m, g v> = <m, v>`.
    pub fn dual(&self) -> Option<LatticeMap> {
        self.inverse().map(|inv| Self::from_trusted(inv.matrix.transpose()))
    }

    pub fn transpose(&self) -> LatticeMap {
        LatticeMap { matrix: self.matrix.transpose(), unimodular: self.unimodular }
    }
}

/// Result of [`smith_normal_form`]: `A = u * d * v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: LatticeMap,
    pub d: IntMatrix,
    pub v: LatticeMap,
}

impl SmithForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d.get(i, i).clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with transforms: returns unimodular `U`, `V` and a
/// diagonal `D` with `d_i | d_{i+1}`, `d_i >= 0`, such that `U·D·V = A`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    // A = U D V is maintained after every step.
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            // Pivot: smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &d.rows[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.rows[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish_snf(u, d, v);
            };
            if pi != t {
                d.swap_rows(pi, t);
                u.swap_cols(pi, t);
            }
            if pj != t {
                d.swap_cols(pj, t);
                v.swap_rows(pj, t);
            }

            let mut dirty = false;
            for i in t + 1..m {
                if d.rows[i][t].is_zero() {
                    continue;
                }
                let q = d.rows[i][t].div_floor(&d.rows[t][t]);
                // row_i -= q row_t  =>  col_t(U) += q col_i(U)
                d.add_row_multiple(i, t, &-&q);
                u.add_col_multiple(t, i, &q);
                dirty |= !d.rows[i][t].is_zero();
            }
            for j in t + 1..n {
                if d.rows[t][j].is_zero() {
                    continue;
                }
                let q = d.rows[t][j].div_floor(&d.rows[t][t]);
                // col_j -= q col_t  =>  row_t(V) += q row_j(V)
                d.add_col_multiple(j, t, &-&q);
                v.add_row_multiple(t, j, &q);
                dirty |= !d.rows[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            // Row and column are clear; enforce divisibility on the block.
            let piv = d.rows[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.rows[i][j].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    // row_t += row_i  =>  col_i(U) -= col_t(U)
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_col_multiple(i, t, &-BigInt::one());
                }
                None => break,
            }
        }
        if d.rows[t][t].is_negative() {
            d.negate_row(t);
            u.negate_col(t);
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> SmithForm {
    let k = d.nrows().min(d.ncols());
    let mut u = u;
    for t in 0..k {
        if d.rows[t][t].is_negative() {
            d.negate_row(t);
            u.negate_col(t);
        }
    }
    SmithForm { u: LatticeMap::from_trusted(u), d, v: LatticeMap::from_trusted(v) }
}

/// Row-style Hermite normal form of the rows of `a`: upper triangular with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let m = h.nrows();
    let n = h.ncols();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m.
        loop {
            let piv = (r..m).filter(|&i| !h.rows[i][c].is_zero()).min_by(|&i, &j| {
                h.rows[i][c].abs().cmp(&h.rows[j][c].abs())
            });
            let Some(p) = piv else { break };
            h.swap_rows(p, r);
            let mut done = true;
            for i in r + 1..m {
                if !h.rows[i][c].is_zero() {
                    let q = h.rows[i][c].div_floor(&h.rows[r][c]);
                    h.add_row_multiple(i, r, &-q);
                    done &= h.rows[i][c].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if h.rows[r][c].is_zero() {
            continue;
        }
        if h.rows[r][c].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = h.rows[i][c].div_floor(&h.rows[r][c]);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h.rows.truncate(r);
    h
}

/// Structure of `Z^n / span`: `Z^free_rank ⊕ ⊕ Z/d_i` with `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientStructure {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Whether the quotient is the zero group.
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// The character group of `∩ ker(e_i)`, i.e. `Z^n / span_Z{e_i}`.
pub fn quotient_structure(generators: &[LatticePoint], n: usize) -> Result<QuotientStructure> {
    for g in generators {
        g.check_rank(n)?;
    }
    if generators.is_empty() {
        return Ok(QuotientStructure { free_rank: n, invariant_factors: vec![] });
    }
    let snf = smith_normal_form(&IntMatrix::from_points(generators, n)?);
    let diag = snf.diagonal();
    Ok(QuotientStructure {
        free_rank: n - diag.len(),
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// Hermite basis of the subgroup generated by `points`.
pub fn subgroup_basis(points: &[LatticePoint], n: usize) -> Result<Vec<LatticePoint>> {
    for p in points {
        p.check_rank(n)?;
    }
    let h = hermite_normal_form(&IntMatrix::from_points(points, n)?);
    Ok((0..h.nrows()).map(|i| h.row(i)).collect())
}

/// Hermite basis of `span_Q(points) ∩ Z^n`.
pub fn saturation_basis(points: &[LatticePoint], n: usize) -> Result<Vec<LatticePoint>> {
    for p in points {
        p.check_rank(n)?;
    }
    if points.is_empty() {
        return Ok(vec![]);
    }
    let snf = smith_normal_form(&IntMatrix::from_points(points, n)?);
    let r = snf.rank();
    let v = snf.v.matrix();
    let rows: Vec<LatticePoint> = (0..r).map(|i| v.row(i)).collect();
    subgroup_basis(&rows, n)
}

/// Hermite basis of `{x ∈ Z^n : <a, x> = 0 for all a in rows}`.
pub fn integer_kernel(rows: &[LatticePoint], n: usize) -> Result<Vec<LatticePoint>> {
    for p in rows {
        p.check_rank(n)?;
    }
    if rows.is_empty() {
        return Ok((0..n).map(|i| LatticePoint::unit(n, i)).collect());
    }
    // A = U D V, so A x = 0 iff (V x)_i = 0 for i < rank.
    let snf = smith_normal_form(&IntMatrix::from_points(rows, n)?);
    let r = snf.rank();
    let vinv = snf.v.inverse().expect("unimodular");
    let cols: Vec<LatticePoint> = (r..n).map(|j| vinv.matrix().column(j)).collect();
    subgroup_basis(&cols, n)
}

/// A unimodular `B` such that `B` maps `span_Q(points) ∩ Z^n` onto
/// `Z^d × 0`, where `d` is the rank of `points`. Returns `(B, d)`.
pub fn splitting_map(points: &[LatticePoint], n: usize) -> Result<(LatticeMap, usize)> {
    for p in points {
        p.check_rank(n)?;
    }
    if points.is_empty() {
        return Ok((LatticeMap::identity(n), 0));
    }
    // Rows of V extend a basis of the saturation to a basis of Z^n; a point
    // v = c V has coordinates c = v V^{-1}, i.e. (V^{-1})^T acting on columns.
    let snf = smith_normal_form(&IntMatrix::from_points(points, n)?);
    let d = snf.rank();
    let vinv = snf.v.inverse().expect("unimodular");
    Ok((vinv.transpose(), d))
}

/// Rank over `Q` of a list of vectors.
pub fn rank_of(points: &[LatticePoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows = points.iter().map(|p| p.to_rational()).collect();
    rational_row_echelon(rows).len()
}

/// Reduced row echelon form over `Q`, zero rows dropped.
pub(crate) fn rational_row_echelon(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, as a
/// primitive integer vector (or `None` if `v` lies in the span).
pub(crate) fn project_off(v: &LatticePoint, basis: &[LatticePoint]) -> Option<LatticePoint> {
    if basis.is_empty() {
        return v.primitive_part().ok();
    }
    // Gram–Schmidt over Q.
    let mut ortho: Vec<Vec<BigRational>> = Vec::new();
    for b in basis {
        let mut w = b.to_rational();
        for o in &ortho {
            let coef = rdot(&w, o) / rdot(o, o);
            for (wi, oi) in w.iter_mut().zip(o) {
                *wi -= &coef * oi;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            ortho.push(w);
        }
    }
    let mut w = v.to_rational();
    for o in &ortho {
        let coef = rdot(&w, o) / rdot(o, o);
        for (wi, oi) in w.iter_mut().zip(o) {
            *wi -= &coef * oi;
        }
    }
    LatticePoint::primitive_from_rational(&w)
}

fn rdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
