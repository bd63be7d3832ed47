use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{QMatrix, Rational, TruncatedLaurent};

/// Precision attached to sums with no terms; large enough never to bind.
const EMPTY_SUM_PREC: i64 = 1 << 40;

/// Dense matrix over truncated Laurent series, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<TruncatedLaurent>,
}

impl FMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<TruncatedLaurent>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(FMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<TruncatedLaurent>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        FMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> TruncatedLaurent,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize, prec: i64) -> Self {
        FMatrix::from_fn(rows, cols, |_, _| TruncatedLaurent::zero(prec))
    }

    pub fn identity(n: usize, prec: i64) -> Self {
        FMatrix::from_fn(n, n, |i, j| {
            if i == j {
                TruncatedLaurent::one(prec)
            } else {
                TruncatedLaurent::zero(prec)
            }
        })
    }

    /// Constant matrix with every entry known to `prec`.
    pub fn from_qmatrix(m: &QMatrix, prec: i64) -> Self {
        FMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            TruncatedLaurent::constant(m[(i, j)].clone(), prec)
        })
    }

    /// `rows×cols` matrix with `t^{-e_i}` at `(slot_i, slot_i)`.
    pub fn with_poles(rows: usize, cols: usize, poles: &[(usize, i64)], prec: i64) -> Self {
        let mut m = FMatrix::zeros(rows, cols, prec);
        for &(slot, e) in poles {
            m[(slot, slot)] =
                TruncatedLaurent::monomial(Rational::from_integer(1.into()), -e, prec);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[TruncatedLaurent] {
        &self.entries
    }

    /// Minimum precision over the entries.
    pub fn precision(&self) -> i64 {
        self.entries
            .iter()
            .map(TruncatedLaurent::precision)
            .min()
            .unwrap_or(EMPTY_SUM_PREC)
    }

    /// Minimum valuation over the nonzero entries.
    pub fn min_valuation(&self) -> Option<i64> {
        self.entries
            .iter()
            .filter_map(TruncatedLaurent::valuation)
            .min()
    }

    pub fn transpose(&self) -> Self {
        FMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        FMatrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &FMatrix, b: &FMatrix, c: &FMatrix, d: &FMatrix) -> Self {
        let mut m = FMatrix::zeros(a.rows + c.rows, a.cols + b.cols, EMPTY_SUM_PREC);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols, b);
        m.set_block(a.rows, 0, c);
        m.set_block(a.rows, a.cols, d);
        m
    }

    /// Identity of size `n` with `inner` placed at `(offset, offset)`.
    pub fn embed(inner: &FMatrix, n: usize, offset: usize, prec: i64) -> Self {
        let mut m = FMatrix::identity(n, prec);
        m.set_block(offset, offset, inner);
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Row `dst` += `c` · row `src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &TruncatedLaurent) {
        for j in 0..self.cols {
            let v = &self[(dst, j)] + &(c * &self[(src, j)]);
            self[(dst, j)] = v;
        }
    }

    /// Column `dst` += `c` · column `src`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &TruncatedLaurent) {
        for i in 0..self.rows {
            let v = &self[(i, dst)] + &(&self[(i, src)] * c);
            self[(i, dst)] = v;
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &TruncatedLaurent) {
        for j in 0..self.cols {
            let v = c * &self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &TruncatedLaurent) {
        for i in 0..self.rows {
            let v = &self[(i, j)] * c;
            self[(i, j)] = v;
        }
    }

    pub fn truncate(&self, p: i64) -> Self {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x.truncate(p)).collect(),
        }
    }

    /// Entrywise principal parts: the class modulo `O`-matrices.
    pub fn mod_integral(&self) -> Self {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(TruncatedLaurent::mod_integral)
                .collect(),
        }
    }

    /// Whether every entry lies in `O`.
    pub fn is_integral(&self) -> Result<bool> {
        let mut all = true;
        for x in &self.entries {
            match x.is_integral() {
                Some(b) => all &= b,
                None => return Err(Error::Undecidable),
            }
        }
        Ok(all)
    }

    /// Whether the two matrices agree entrywise at the available precision.
    pub fn agrees(&self, other: &FMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.agrees(b))
    }

    /// Whether `self − other` is integral (decidably).
    pub fn congruent_mod_integral(&self, other: &FMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && matches!((self - other).is_integral(), Ok(true))
    }

    pub fn trace(&self) -> TruncatedLaurent {
        let mut acc = TruncatedLaurent::zero(EMPTY_SUM_PREC);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + &self[(i, i)];
        }
        acc
    }
}

impl core::ops::Index<(usize, usize)> for FMatrix {
    type Output = TruncatedLaurent;
    fn index(&self, (i, j): (usize, usize)) -> &TruncatedLaurent {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for FMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut TruncatedLaurent {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl Add<&FMatrix> for &FMatrix {
    type Output = FMatrix;
    fn add(self, rhs: &FMatrix) -> FMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&FMatrix> for &FMatrix {
    type Output = FMatrix;
    fn sub(self, rhs: &FMatrix) -> FMatrix {
        self + &(-rhs)
    }
}

impl Neg for &FMatrix {
    type Output = FMatrix;
    fn neg(self) -> FMatrix {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<&FMatrix> for &FMatrix {
    type Output = FMatrix;
    fn mul(self, rhs: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        FMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = TruncatedLaurent::zero(EMPTY_SUM_PREC);
            for k in 0..self.cols {
                acc = &acc + &(&self[(i, k)] * &rhs[(k, j)]);
            }
            acc
        })
    }
}

crate::exactnum::forward_owned!(FMatrix, Add add, Sub sub, Mul mul);

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}
