//! Dense matrices over the rationals.
//!
//! Everything downstream — rank sequences of partial products, kernels for
//! the reflection functor, the Burnside irreducibility test, the search for
//! a simultaneous conjugator — reduces to a handful of kernels implemented
//! here with exact pivoted Gaussian elimination.  Matrices are immutable
//! values; operations return fresh matrices.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A dense `rows × cols` matrix of [`Rat`] entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Scalar matrix `c·1` of size `n`.
    pub fn scalar(n: usize, c: &Rat) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Build from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::invalid("ragged matrix rows"));
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Convenience constructor from integer literals (used heavily in tests).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
        .expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = &*x * c;
        }
        m
    }

    /// Row-major flattening, used by the span-closure and conjugator code.
    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "flat data has wrong length");
        Matrix { rows, cols, data }
    }

    /// Extract the submatrix of the given rows and columns (in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                m.set(ri, ci, self.at(r, c).clone());
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat: row mismatch");
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        m
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat: column mismatch");
        let mut m = Matrix::zero(self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                m.set(self.rows + r, c, other.at(r, c).clone());
            }
        }
        m
    }

    /// Assemble a matrix from a grid of blocks.  Row `i` of the grid must
    /// share a common row count, column `j` a common column count.
    pub fn from_blocks(grid: &[Vec<&Matrix>]) -> Matrix {
        let mut rows: Option<Matrix> = None;
        for block_row in grid {
            let mut row: Option<Matrix> = None;
            for block in block_row {
                row = Some(match row {
                    None => (*block).clone(),
                    Some(acc) => acc.hcat(block),
                });
            }
            let row = row.expect("empty block row");
            rows = Some(match rows {
                None => row,
                Some(acc) => acc.vcat(&row),
            });
        }
        rows.expect("empty block grid")
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// column indices.  Exact pivoted elimination, no scaling tricks needed
    /// because [`Rat`] keeps itself canonical.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0; // next pivot row
        for pc in 0..self.cols {
            // find a nonzero entry in column pc at or below row pr
            let Some(sel) = (pr..self.rows).find(|&r| !self.at(r, pc).is_zero()) else {
                continue;
            };
            if sel != pr {
                for c in 0..self.cols {
                    self.data.swap(sel * self.cols + c, pr * self.cols + c);
                }
            }
            let inv = self.at(pr, pc).recip();
            for c in pc..self.cols {
                let v = self.at(pr, c) * &inv;
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r != pr && !self.at(r, pc).is_zero() {
                    let f = self.at(r, pc).clone();
                    for c in pc..self.cols {
                        let v = self.at(r, c) - &(&f * self.at(pr, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{v : Mv = 0}` as column vectors, one
    /// per non-pivot column, in column order.  The basis is the canonical
    /// one read off the reduced row echelon form, so it is deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis packed as the columns of a `cols × dim` matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        let basis = self.kernel_basis();
        let dim = basis.len();
        let mut m = Matrix::zero(self.cols, dim);
        for (j, v) in basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Solve `self · X = rhs` for `X`, assuming `self` has full column rank.
    /// Returns `None` if the system is inconsistent (i.e. some column of
    /// `rhs` is outside the column space of `self`).
    pub fn solve_exact(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve_exact: row mismatch");
        let mut aug = self.hcat(rhs);
        let pivots = aug.rref_in_place();
        // full column rank of self <=> pivots 0..self.cols all present
        if pivots.len() < self.cols || pivots.iter().take(self.cols).copied().ne(0..self.cols) {
            return None;
        }
        // consistency: no pivot may fall in the rhs block
        if pivots.len() > self.cols {
            return None;
        }
        let mut x = Matrix::zero(self.cols, rhs.cols);
        for r in 0..self.cols {
            for c in 0..rhs.cols {
                x.set(r, c, aug.at(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// A basis of the column space as the columns of an `rows × rank`
    /// matrix: the pivot columns of the original matrix, in order.
    pub fn column_space_basis(&self) -> Matrix {
        let mut scratch = self.clone();
        let pivots = scratch.rref_in_place();
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &pivots)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "mul: inner dimension mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.at(r, i);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(i, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c) + &(a * b);
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<&Rat> = (0..self.cols).map(|c| self.at(r, c)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Echelon-form accumulator for a subspace of ℚ^len, used by the span
/// closure below and by nothing else.
struct Echelon {
    len: usize,
    // (pivot index, normalized vector) sorted by pivot index
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; if a nonzero remainder survives,
    /// normalize and insert it, returning true.
    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.len);
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in &mut v {
            *x = &*x * &inv;
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, v));
        true
    }
}

/// Dimension of the unital algebra of `n × n` matrices generated by
/// `generators`: seed the span with the identity, then keep multiplying
/// span members by generators until the dimension stabilizes.  The result
/// is `n²` exactly when the generators act irreducibly (Burnside).
pub fn algebra_dimension(n: usize, generators: &[Matrix]) -> Result<usize> {
    for g in generators {
        if g.rows() != n || g.cols() != n {
            return Err(Error::invalid(format!(
                "algebra_dimension: generator is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                n,
                n
            )));
        }
    }
    if n == 0 {
        return Ok(0);
    }
    let mut span = Echelon::new(n * n);
    let mut queue: Vec<Matrix> = Vec::new();
    let id = Matrix::identity(n);
    span.insert(id.flatten());
    queue.push(id);
    while let Some(m) = queue.pop() {
        for g in generators {
            let prod = &m * g;
            if span.insert(prod.flatten()) {
                queue.push(prod);
            }
        }
        if span.dim() == n * n {
            break;
        }
    }
    Ok(span.dim())
}

/// Outcome of the simultaneous-conjugacy search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyOutcome {
    /// An invertible `X` with `X·Aᵢ = Bᵢ·X` for every `i`.
    Conjugator(Matrix),
    /// The intertwiner space is zero, so no conjugator can exist.
    NoIntertwiner,
    /// The intertwiner space is nonzero but every sampled element was
    /// singular.  Overwhelming evidence against conjugacy, but not proof.
    Undetermined,
}

/// Look for an invertible `X` with `X·Aᵢ = Bᵢ·X` for all `i`.
///
/// The intertwiner equations are linear in `X`, so we compute a basis of
/// their solution space and then probe it for an invertible element: each
/// basis element first, then `samples` small-integer random combinations
/// (deterministically seeded).  When the space is zero the answer
/// [`ConjugacyOutcome::NoIntertwiner`] is definitive; a nonzero space with
/// no invertible sample found yields [`ConjugacyOutcome::Undetermined`].
pub fn simultaneous_conjugator(
    as_: &[Matrix],
    bs: &[Matrix],
    samples: u32,
) -> Result<ConjugacyOutcome> {
    if as_.len() != bs.len() {
        return Err(Error::invalid("simultaneous_conjugator: tuple length mismatch"));
    }
    let n = as_.first().map_or(0, Matrix::rows);
    for m in as_.iter().chain(bs) {
        if m.rows() != n || m.cols() != n {
            return Err(Error::invalid("simultaneous_conjugator: matrices must all be n x n"));
        }
    }
    if n == 0 {
        return Ok(ConjugacyOutcome::Conjugator(Matrix::identity(0)));
    }

    // Coefficient matrix of X·A_i - B_i·X = 0 over the n² unknowns X_{rs}
    // (row-major).  Equation index: (i, r, c).
    let k = as_.len();
    let mut sys = Matrix::zero(k * n * n, n * n);
    for (i, (a, b)) in as_.iter().zip(bs).enumerate() {
        for r in 0..n {
            for c in 0..n {
                let eq = (i * n + r) * n + c;
                for s in 0..n {
                    // + X_{r,s} A_{s,c}
                    let v = sys.at(eq, r * n + s) + a.at(s, c);
                    sys.set(eq, r * n + s, v);
                    // - B_{r,s} X_{s,c}
                    let v = sys.at(eq, s * n + c) - b.at(r, s);
                    sys.set(eq, s * n + c, v);
                }
            }
        }
    }

    let basis = sys.kernel_basis();
    if basis.is_empty() {
        return Ok(ConjugacyOutcome::NoIntertwiner);
    }
    let unflatten = |v: &[Rat]| Matrix::from_flat(n, n, v.to_vec());
    for v in &basis {
        let x = unflatten(v);
        if x.rank() == n {
            return Ok(ConjugacyOutcome::Conjugator(x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x61d5_9a1e);
    for _ in 0..samples {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.random_range(-3..=3)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut flat = vec![Rat::zero(); n * n];
        for (c, v) in coeffs.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            let c = Rat::from_int(*c);
            for (x, y) in flat.iter_mut().zip(v) {
                *x = &*x + &(&c * y);
            }
        }
        let x = unflatten(&flat);
        if x.rank() == n {
            return Ok(ConjugacyOutcome::Conjugator(x));
        }
    }
    Ok(ConjugacyOutcome::Undetermined)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zero(2, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(2).kernel_basis().is_empty());

        let m = Matrix::from_i64(&[&[1, -1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // the canonical representative is (1, 1)
        assert_eq!(basis[0], vec![Rat::one(), Rat::one()]);

        assert_eq!(Matrix::zero(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_exact_round_trip() {
        let b = Matrix::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]);
        let x = Matrix::from_i64(&[&[3, -1], &[2, 5]]);
        let t = &b * &x;
        let solved = b.solve_exact(&t).unwrap();
        assert_eq!(solved, x);

        // inconsistent system
        let t_bad = Matrix::from_i64(&[&[1, 0], &[0, 0], &[0, 0]]);
        // (1,0,0) is not in the span of the columns of b
        assert!(b.solve_exact(&t_bad).is_none());
    }

    #[test]
    fn column_space_basis_spans() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let basis = m.column_space_basis();
        assert_eq!(basis.cols(), m.rank());
        // every column of m must be solvable in the basis
        assert!(basis.solve_exact(&m).is_some());
    }

    #[test]
    fn algebra_dimension_examples() {
        assert_eq!(algebra_dimension(2, &[]).unwrap(), 1);

        let nilp = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(algebra_dimension(2, &[nilp]).unwrap(), 2);

        // diag and swap have no common eigenvector: the full matrix algebra
        let a1 = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let a2 = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(algebra_dimension(2, &[a1.clone(), a2]).unwrap(), 4);

        // both fix the line through (0, 1), so the algebra stays proper
        let a3 = Matrix::from_i64(&[&[-1, 0], &[1, 1]]);
        assert_eq!(algebra_dimension(2, &[a1, a3]).unwrap(), 3);
    }

    #[test]
    fn algebra_dimension_rejects_mismatch() {
        let g = Matrix::zero(2, 3);
        assert!(algebra_dimension(2, &[g]).is_err());
    }

    #[test]
    fn conjugator_identity_case() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        match simultaneous_conjugator(&[a.clone()], &[a.clone()], 32).unwrap() {
            ConjugacyOutcome::Conjugator(x) => {
                assert_eq!(x.rank(), 2);
                assert_eq!(&x * &a, &a * &x);
            }
            other => panic!("expected a conjugator, got {other:?}"),
        }
    }

    #[test]
    fn conjugator_swap_case() {
        let a = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let b = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        match simultaneous_conjugator(&[a.clone()], &[b.clone()], 32).unwrap() {
            ConjugacyOutcome::Conjugator(x) => {
                assert_eq!(&x * &a, &b * &x);
                assert_eq!(x.rank(), 2);
            }
            other => panic!("expected a conjugator, got {other:?}"),
        }
    }

    #[test]
    fn conjugator_none_case() {
        // disjoint spectra: the intertwiner space is zero
        let a = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let b = Matrix::from_i64(&[&[3, 0], &[0, 4]]);
        assert_eq!(
            simultaneous_conjugator(&[a], &[b], 32).unwrap(),
            ConjugacyOutcome::NoIntertwiner
        );
    }

    #[test]
    fn conjugator_undetermined_case() {
        // one shared eigenvalue: a nonzero intertwiner space, but only
        // singular elements in it
        let a = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let b = Matrix::from_i64(&[&[1, 0], &[0, 3]]);
        assert_eq!(
            simultaneous_conjugator(&[a], &[b], 32).unwrap(),
            ConjugacyOutcome::Undetermined
        );
    }

    #[test]
    fn matrix_serde() {
        let m = Matrix::from_rows(vec![
            vec![Rat::new(1, 2), Rat::from_int(0)],
            vec![Rat::from_int(-3), Rat::new(7, 5)],
        ])
        .unwrap();
        let js = serde_json::to_string(&m).unwrap();
        assert_eq!(js, r#"[["1/2","0"],["-3","7/5"]]"#);
        let back: Matrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }
}
