//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Rank and solving use
//! fraction-free (Bareiss) elimination; lattice questions go through a
//! column-style Hermite normal form computed with unimodular column operations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
        pub struct $name(Vec<BigInt>);

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                Self(coords)
            }

            pub fn from_i64(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| BigInt::from(c)).collect())
            }

            pub fn zero(rank: usize) -> Self {
                Self(vec![BigInt::zero(); rank])
            }

            /// The `i`-th standard basis vector.
            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = Self::zero(rank);
                v.0[i] = BigInt::one();
                v
            }

            pub fn coords(&self) -> &[BigInt] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<BigInt> {
                self.0
            }

            pub fn ambient_rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            /// Gcd of the coordinates; zero for the zero vector.
            pub fn content(&self) -> BigInt {
                content(&self.0)
            }

            pub fn is_primitive(&self) -> bool {
                self.content().is_one()
            }

            /// Divides out the content, keeping the direction.
            pub fn primitive(&self) -> Result<Self> {
                let g = self.content();
                if g.is_zero() {
                    return Err(Error::ZeroVector);
                }
                Ok(Self(self.0.iter().map(|c| c / &g).collect()))
            }

            pub fn neg(&self) -> Self {
                Self(self.0.iter().map(|c| -c).collect())
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                Self(self.0.iter().map(|c| c * k).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.0.len(), other.0.len(), "ambient rank mismatch");
                Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            /// Support: indices of nonzero coordinates.
            pub fn support(&self) -> Vec<usize> {
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, _)| i)
                    .collect()
            }

            /// Zero-padded copy in rank `rank`, coordinates starting at `offset`.
            pub fn embed(&self, rank: usize, offset: usize) -> Self {
                let mut v = Self::zero(rank);
                v.0[offset..offset + self.0.len()].clone_from_slice(&self.0);
                v
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

int_vector!(
    /// A point of the lattice N of one-parameter subgroups.
    LatticeVector
);

int_vector!(
    /// A point of the character lattice M, dual to N.
    DualVector
);

impl LatticeVector {
    /// The pairing `<p, m>` between N and M.
    pub fn pair(&self, m: &DualVector) -> BigInt {
        dot(&self.0, &m.0)
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl DualVector {
    pub fn pair(&self, p: &LatticeVector) -> BigInt {
        dot(&self.0, &p.0)
    }
}

/// A point of `N ⊗ Q` (or `M ⊗ Q`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.len()
    }

    /// Pairing with an integer vector.
    pub fn dot_int(&self, v: &[BigInt]) -> BigRational {
        assert_eq!(self.0.len(), v.len(), "ambient rank mismatch");
        self.0
            .iter()
            .zip(v)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * BigRational::from_integer(b.clone()))
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "ambient rank mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides a nonzero integer vector by its content in place.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let g = content(v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
}

/// Returns `v / gcd(v)`; fails on the zero vector.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    v.primitive()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` is needed when `rows` is empty.
    pub fn from_rows<R: AsRef<[BigInt]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        Self::from_rows(cols, &rows).expect("ragged rows")
    }

    pub fn from_lattice_vectors(cols: usize, vs: &[LatticeVector]) -> Result<Self> {
        let rows: Vec<&[BigInt]> = vs.iter().map(|v| v.coords()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn from_dual_vectors(cols: usize, vs: &[DualVector]) -> Result<Self> {
        let rows: Vec<&[BigInt]> = vs.iter().map(|v| v.coords()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows)
            .map(|i| LatticeVector::new(self.row(i).to_vec()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    *out.get_mut(i, j) += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * self.get(i, j)).sum())
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * k).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", LatticeVector::new(self.row(i).to_vec()))?;
        }
        Ok(())
    }
}

/// Fraction-free row echelon form. Returns the reduced copy and its pivot columns.
fn bareiss_echelon(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let piv = a.get(r, c).clone();
        for i in r + 1..a.rows {
            let lead = a.get(i, c).clone();
            for j in c..a.cols {
                let v = (&piv * a.get(i, j) - &lead * a.get(r, j)) / &prev;
                *a.get_mut(i, j) = v;
            }
        }
        // entries left of the pivot column in lower rows are already zero
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::ShapeMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                *a.get_mut(i, j) = v;
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

/// Column-style Hermite normal form: returns `(H, U)` with `M·U = H`, `U`
/// unimodular, and `H` in column echelon form. Each pivot is positive, and the
/// entries to the left of a pivot in its row lie in `[0, pivot)`. The nonzero
/// columns of `H` are a basis of the lattice spanned by the columns of `M`.
pub fn column_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut c = 0;
    for i in 0..h.rows {
        if c == h.cols {
            break;
        }
        for j in c + 1..h.cols {
            if h.get(i, j).is_zero() {
                continue;
            }
            let a = h.get(i, c).clone();
            let b = h.get(i, j).clone();
            let eg = a.extended_gcd(&b);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let p = -(&b / &g);
            let q = &a / &g;
            // [col_c, col_j] <- [s*col_c + t*col_j, p*col_c + q*col_j], det = 1
            combine_cols(&mut h, c, j, &s, &t, &p, &q);
            combine_cols(&mut u, c, j, &s, &t, &p, &q);
        }
        if h.get(i, c).is_zero() {
            continue;
        }
        if h.get(i, c).is_negative() {
            negate_col(&mut h, c);
            negate_col(&mut u, c);
        }
        let piv = h.get(i, c).clone();
        for k in 0..c {
            let f = h.get(i, k).div_floor(&piv);
            if !f.is_zero() {
                sub_col_multiple(&mut h, k, c, &f);
                sub_col_multiple(&mut u, k, c, &f);
            }
        }
        c += 1;
    }
    (h, u)
}

fn combine_cols(
    m: &mut IntMatrix,
    c: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    p: &BigInt,
    q: &BigInt,
) {
    for r in 0..m.rows {
        let x = m.get(r, c).clone();
        let y = m.get(r, j).clone();
        *m.get_mut(r, c) = s * &x + t * &y;
        *m.get_mut(r, j) = p * &x + q * &y;
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for r in 0..m.rows {
        let v = -m.get(r, c).clone();
        *m.get_mut(r, c) = v;
    }
}

/// col_k -= f * col_c
fn sub_col_multiple(m: &mut IntMatrix, k: usize, c: usize, f: &BigInt) {
    for r in 0..m.rows {
        let v = m.get(r, c) * f;
        *m.get_mut(r, k) -= v;
    }
}

/// The column-style Hermite normal form of `m` (zero columns dropped).
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let (h, _) = column_hermite(m);
    let r = rank(m);
    let mut out = IntMatrix::zeros(h.rows, r);
    for i in 0..h.rows {
        for j in 0..r {
            *out.get_mut(i, j) = h.get(i, j).clone();
        }
    }
    out
}

/// Canonical basis of the lattice spanned by the rows of `m`: the rows of the
/// transposed column Hermite form of `mᵀ`.
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    hermite_normal_form(&m.transpose()).transpose()
}

/// Rows form a lattice basis of `{x ∈ Z^n : m·x = 0}`, in canonical (Hermite) form.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (_, u) = column_hermite(m);
    let r = rank(m);
    let n = m.cols;
    let mut k = IntMatrix::zeros(n - r, n);
    for (out, j) in (r..n).enumerate() {
        for i in 0..n {
            *k.get_mut(out, i) = u.get(i, j).clone();
        }
    }
    if k.rows == 0 {
        return k;
    }
    row_lattice_basis(&k)
}

/// Rows form a basis of the saturation `(L ⊗ Q) ∩ Z^n` of the row lattice `L` of `m`.
pub fn saturation(m: &IntMatrix) -> IntMatrix {
    let orth = integer_kernel(m);
    if orth.rows == 0 {
        return IntMatrix::identity(m.cols);
    }
    integer_kernel(&orth)
}

/// `[Sat(L) : L]` for the row lattice `L` of `basis`; rows must be independent.
pub fn saturation_index(basis: &IntMatrix) -> Result<BigInt> {
    if rank(basis) < basis.rows {
        return Err(Error::DependentRows);
    }
    // basis·U = [H | 0] maps L isomorphically onto the row lattice of H inside Z^r.
    let (h, _) = column_hermite(basis);
    let mut index = BigInt::one();
    for i in 0..basis.rows {
        index *= h.get(i, i);
    }
    Ok(index.abs())
}

/// Solution set of `A·x = b`: one particular solution plus an integer basis of
/// the kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: RationalVector,
    pub kernel: Vec<LatticeVector>,
}

/// Solves `A·x = b` exactly. `Ok(None)` means the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &RationalVector) -> Result<Option<AffineSolution>> {
    if b.ambient_rank() != a.rows {
        return Err(Error::ShapeMismatch {
            expected: a.rows,
            found: b.ambient_rank(),
        });
    }
    // Clear denominators and eliminate on the augmented integer matrix [A | d·b].
    let d = b
        .coords()
        .iter()
        .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut aug = IntMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            *aug.get_mut(i, j) = a.get(i, j).clone();
        }
        let scaled = &b.coords()[i] * BigRational::from_integer(d.clone());
        *aug.get_mut(i, a.cols) = scaled.to_integer();
    }
    let (e, pivots) = bareiss_echelon(&aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(e.get(r, a.cols).clone());
        for (j, xj) in x.iter().enumerate().skip(c + 1) {
            if !e.get(r, j).is_zero() {
                acc -= BigRational::from_integer(e.get(r, j).clone()) * xj;
            }
        }
        x[c] = acc / BigRational::from_integer(e.get(r, c).clone());
    }
    let dq = BigRational::from_integer(d);
    for xi in x.iter_mut() {
        *xi /= &dq;
    }
    Ok(Some(AffineSolution {
        particular: RationalVector::new(x),
        kernel: integer_kernel(a).row_vectors(),
    }))
}
