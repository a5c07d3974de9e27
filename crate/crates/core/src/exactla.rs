//! Exact rational linear algebra: dense matrices, reduced row echelon form,
//! nullspaces, and canonical subspace representatives.
//!
//! All elimination is exact, with the pivot chosen as the first nonzero
//! entry in column order, so every result is a deterministic function of the
//! input. Subspaces are stored by their RREF basis, which is unique per
//! span; two subspaces are equal exactly when their stored bases are
//! identical, and that canonical form is also what gets serialized and
//! hashed.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::{dim_space, MONOMIAL_ORDER};
use crate::polyring::{format_rational, parse_rational, HomPoly, Rational};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` must be given explicitly so that a
    /// matrix with no rows still knows its width.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rational> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Vertical stack `[self; other]`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Horizontal stack `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut m = ExactMatrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(m)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and rank. Pivots are 1 with zeros above and
    /// below; pivot search takes the first nonzero entry in column order.
    pub fn rref(&self) -> (ExactMatrix, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let pivot = m.get(pivot_row, col).clone();
            if !pivot.is_one() {
                for c in col..m.cols {
                    let v = m.get(pivot_row, c) / &pivot;
                    m.set(pivot_row, c, v);
                }
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Pivot columns of a matrix already in RREF.
    fn pivot_cols(&self, rank: usize) -> Vec<usize> {
        (0..rank)
            .map(|r| {
                (0..self.cols)
                    .find(|&c| !self.get(r, c).is_zero())
                    .expect("nonzero row in rref has a pivot")
            })
            .collect()
    }

    /// RREF basis of the right kernel `{v : M v = 0}`, one row per free
    /// column; the row count is always `cols - rank`.
    pub fn nullspace(&self) -> ExactMatrix {
        let (r, rank) = self.rref();
        let pivots = r.pivot_cols(rank);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            rows.push(v);
        }
        let kernel = ExactMatrix::from_rows(rows, self.cols).expect("kernel rows share width");
        let (canon, kernel_rank) = kernel.rref();
        debug_assert_eq!(kernel_rank, kernel.rows, "kernel rows are independent");
        debug_assert_eq!(rank + kernel_rank, self.cols, "rank-nullity");
        canon
    }

    fn take_rows(&self, k: usize) -> ExactMatrix {
        ExactMatrix {
            rows: k,
            cols: self.cols,
            entries: self.entries[..k * self.cols].to_vec(),
        }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_string_rows(rows: &[Vec<String>], cols: usize) -> Result<ExactMatrix> {
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for s in row {
                out.push(parse_rational(s)?);
            }
            parsed.push(out);
        }
        ExactMatrix::from_rows(parsed, cols)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// A linear subspace of the degree-`e` graded piece in `n + 1` variables,
/// held by its canonical RREF basis (rows are coefficient vectors in
/// canonical monomial order, no zero rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    e: usize,
    basis: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    n: usize,
    e: usize,
    order: String,
    basis: Vec<Vec<String>>,
}

impl Subspace {
    /// The zero subspace of the given ambient piece.
    pub fn zero(n: usize, e: usize) -> Subspace {
        Subspace {
            n,
            e,
            basis: ExactMatrix::zeros(0, dim_space(n, e)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n || self.e != other.e {
            return Err(Error::AmbientMismatch {
                n: self.n,
                e: self.e,
                got_n: other.n,
                got_e: other.e,
            });
        }
        Ok(())
    }

    /// Equality of subspaces; because both sides are canonical RREF bases,
    /// this is plain entrywise comparison.
    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    /// Membership of a coefficient vector, by reducing it against the RREF
    /// basis; equivalent to appending `v` and checking the rank is
    /// unchanged.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.len(),
            });
        }
        let mut w = v.to_vec();
        let pivots = self.basis.pivot_cols(self.basis.rows());
        for (i, &p) in pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for c in 0..w.len() {
                let v = &w[c] - &factor * self.basis.get(i, c);
                w[c] = v;
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn contains_poly(&self, f: &HomPoly) -> Result<bool> {
        if f.n() != self.n || (f.degree() != self.e && !f.is_zero()) {
            return Err(Error::AmbientMismatch {
                n: self.n,
                e: self.e,
                got_n: f.n(),
                got_e: f.degree(),
            });
        }
        if f.is_zero() {
            return Ok(true);
        }
        self.contains(&f.coeff_vector())
    }

    /// Basis of the annihilator of this subspace under the standard dot
    /// product: a vector lies in the subspace iff every row here pairs to
    /// zero with it. This is the constraint matrix used by reconstruction.
    pub fn complement(&self) -> ExactMatrix {
        self.basis.nullspace()
    }

    /// Basis rows converted back into polynomials.
    pub fn basis_polys(&self) -> Vec<HomPoly> {
        (0..self.dim())
            .map(|r| {
                HomPoly::from_coeff_vector(self.n, self.e, self.basis.row(r))
                    .expect("basis row has ambient length")
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SubspaceJson {
            n: self.n,
            e: self.e,
            order: MONOMIAL_ORDER.to_string(),
            basis: self.basis.to_string_rows(),
        })
        .expect("subspace serializes")
    }

    /// Reads a subspace from its JSON form. The basis is re-canonicalized,
    /// so a file holding any generating set of rows (not necessarily RREF)
    /// loads to the same subspace it spans.
    pub fn from_json(text: &str) -> Result<Subspace> {
        let raw: SubspaceJson = serde_json::from_str(text)?;
        if raw.order != MONOMIAL_ORDER {
            return Err(Error::Json(format!(
                "unsupported monomial order {:?}, expected {MONOMIAL_ORDER:?}",
                raw.order
            )));
        }
        let cols = dim_space(raw.n, raw.e);
        let m = ExactMatrix::from_string_rows(&raw.basis, cols)?;
        row_space(&m, raw.n, raw.e)
    }
}

/// Canonical subspace spanned by the rows of `m`, inside the degree-`e`
/// piece in `n + 1` variables.
pub fn row_space(m: &ExactMatrix, n: usize, e: usize) -> Result<Subspace> {
    let ambient = dim_space(n, e);
    if m.cols() != ambient {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            got: m.cols(),
        });
    }
    let (r, rank) = m.rref();
    Ok(Subspace {
        n,
        e,
        basis: r.take_rows(rank),
    })
}

/// Subspace spanned by a set of polynomials, all in the same graded piece.
pub fn span_of_polys(polys: &[HomPoly], n: usize, e: usize) -> Result<Subspace> {
    let rows: Vec<Vec<Rational>> = polys
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| {
            if f.n() != n || f.degree() != e {
                return Err(Error::AmbientMismatch {
                    n,
                    e,
                    got_n: f.n(),
                    got_e: f.degree(),
                });
            }
            Ok(f.coeff_vector())
        })
        .collect::<Result<_>>()?;
    let m = ExactMatrix::from_rows(rows, dim_space(n, e))?;
    row_space(&m, n, e)
}
