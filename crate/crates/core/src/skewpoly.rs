//! The skew polynomial ring `F[D; theta]` and matrices over it.
//!
//! Multiplication follows `D a = theta(a) D`, so
//! `(x D^i)(y D^j) = x theta^i(y) D^(i+j)`. Coefficients are stored
//! ascending in `D` with no trailing zeros.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewPolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix entries must form a {rows}x{cols} grid")]
    Shape { rows: usize, cols: usize },
    #[error("coefficient {value} is outside the field of order {size}")]
    InvalidCoefficient { value: u32, size: u32 },
}

#[derive(Clone)]
pub struct SkewPoly {
    field: Arc<FiniteField>,
    coeffs: Vec<Elem>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for SkewPoly {}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SkewPoly{:?}",
            self.coeffs.iter().map(|c| c.0).collect::<Vec<_>>()
        )
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = self.field.pretty(*c);
                match (i, c.as_str()) {
                    (0, _) => c,
                    (1, "1") => "D".to_string(),
                    (1, _) => format!("{c}D"),
                    (_, "1") => format!("D^{i}"),
                    _ => format!("{c}D^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn same_field(a: &Arc<FiniteField>, b: &Arc<FiniteField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl SkewPoly {
    pub fn new(field: Arc<FiniteField>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { field, coeffs }
    }

    pub fn from_u32(field: Arc<FiniteField>, coeffs: &[u32]) -> Result<Self, SkewPolyError> {
        let size = field.size();
        if let Some(&value) = coeffs.iter().find(|&&v| v >= size) {
            return Err(SkewPolyError::InvalidCoefficient { value, size });
        }
        Ok(Self::new(field, coeffs.iter().map(|&v| Elem(v)).collect()))
    }

    pub fn zero(field: Arc<FiniteField>) -> Self {
        SkewPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Arc<FiniteField>) -> Self {
        Self::constant(field, Elem::ONE)
    }

    pub fn constant(field: Arc<FiniteField>, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c D^deg`
    pub fn monomial(field: Arc<FiniteField>, c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn assert_same_field(&self, other: &SkewPoly) {
        assert!(
            same_field(&self.field, &other.field),
            "skew polynomials over different fields"
        );
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_field(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        SkewPoly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        SkewPoly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(self.field.clone());
        }
        let f = &*self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                let term = f.mul(x, f.frobenius(y, i as i64));
                out[i + j] = f.add(out[i + j], term);
            }
        }
        SkewPoly::new(self.field.clone(), out)
    }

    /// `c * self`
    pub fn scale_left(&self, c: Elem) -> SkewPoly {
        let coeffs = self.coeffs.iter().map(|&x| self.field.mul(c, x)).collect();
        SkewPoly::new(self.field.clone(), coeffs)
    }

    /// `self * c`, which twists `c` by `theta^i` at degree `i`.
    pub fn scale_right(&self, c: Elem) -> SkewPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &x)| self.field.mul(x, self.field.frobenius(c, i as i64)))
            .collect();
        SkewPoly::new(self.field.clone(), coeffs)
    }

    /// Coefficientwise `theta^i`.
    pub fn frobenius(&self, i: i64) -> SkewPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| self.field.frobenius(x, i))
            .collect();
        SkewPoly::new(self.field.clone(), coeffs)
    }

    /// Right division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn right_divmod(&self, divisor: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewPolyError> {
        self.assert_same_field(divisor);
        let Some(dd) = divisor.degree() else {
            return Err(SkewPolyError::DivisionByZero);
        };
        let f = &*self.field;
        let lead = divisor.coeffs[dd];
        let mut rem = self.clone();
        let mut quot = vec![Elem::ZERO; self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree().filter(|&dr| dr >= dd) {
            let shift = dr - dd;
            // (c D^shift)(lead D^dd) = c theta^shift(lead) D^dr
            let twisted = f.frobenius(lead, shift as i64);
            let c = f
                .div(rem.coeffs[dr], twisted)
                .expect("leading coefficient is nonzero");
            quot[shift] = f.add(quot[shift], c);
            let term = SkewPoly::monomial(self.field.clone(), c, shift).mul(divisor);
            rem = rem.sub(&term);
        }
        Ok((SkewPoly::new(self.field.clone(), quot), rem))
    }
}

/// A `rows x cols` matrix with skew polynomial entries.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolyMatrix {
    field: Arc<FiniteField>,
    rows: usize,
    cols: usize,
    entries: Vec<SkewPoly>,
}

impl fmt::Debug for SkewPolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| &self.entries[r * self.cols..(r + 1) * self.cols]))
            .finish()
    }
}

impl SkewPolyMatrix {
    pub fn new(
        field: Arc<FiniteField>,
        rows: usize,
        cols: usize,
        entries: Vec<SkewPoly>,
    ) -> Result<Self, SkewPolyError> {
        if entries.len() != rows * cols {
            return Err(SkewPolyError::Shape { rows, cols });
        }
        assert!(
            entries.iter().all(|e| same_field(&field, &e.field)),
            "entries over a different field"
        );
        Ok(SkewPolyMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    /// Builds from nested arrays `[row][col][power of D]` of element integers.
    pub fn from_nested(
        field: Arc<FiniteField>,
        g: &[Vec<Vec<u32>>],
    ) -> Result<Self, SkewPolyError> {
        let rows = g.len();
        let cols = g.first().map_or(0, Vec::len);
        if g.iter().any(|r| r.len() != cols) {
            return Err(SkewPolyError::Shape { rows, cols });
        }
        let entries = g
            .iter()
            .flatten()
            .map(|c| SkewPoly::from_u32(field.clone(), c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(field, rows, cols, entries)
    }

    /// `sum_i coeffs[i] D^i`; all coefficient matrices must share one shape.
    pub fn from_coefficients(field: Arc<FiniteField>, coeffs: &[Matrix]) -> Self {
        let rows = coeffs.first().map_or(0, Matrix::rows);
        let cols = coeffs.first().map_or(0, Matrix::cols);
        let entries = (0..rows * cols)
            .map(|idx| {
                let (r, c) = (idx / cols, idx % cols);
                SkewPoly::new(field.clone(), coeffs.iter().map(|m| m.get(r, c)).collect())
            })
            .collect();
        SkewPolyMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).coeffs.iter().map(|e| e.0).collect())
                    .collect()
            })
            .collect()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &SkewPoly {
        &self.entries[r * self.cols + c]
    }

    /// Largest entry degree (0 for an all-zero matrix).
    pub fn memory(&self) -> usize {
        self.entries
            .iter()
            .filter_map(SkewPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Per-row maximum entry degree; `None` for an all-zero row.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter_map(|c| self.get(r, c).degree()).max())
            .collect()
    }

    /// Coefficient matrix of `D^i`.
    pub fn coefficient(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).coeff(i));
            }
        }
        m
    }

    /// `[G_0, ..., G_mu]`
    pub fn coefficients(&self) -> Vec<Matrix> {
        (0..=self.memory()).map(|i| self.coefficient(i)).collect()
    }

    /// Swaps entry positions; coefficients are not twisted.
    pub fn transpose(&self) -> SkewPolyMatrix {
        let entries = (0..self.cols * self.rows)
            .map(|idx| self.get(idx % self.rows, idx / self.rows).clone())
            .collect();
        SkewPolyMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &SkewPolyMatrix) -> SkewPolyMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let entries = (0..self.rows * other.cols)
            .map(|idx| {
                let (r, c) = (idx / other.cols, idx % other.cols);
                (0..self.cols).fold(SkewPoly::zero(self.field.clone()), |acc, j| {
                    acc.add(&self.get(r, j).mul(other.get(j, c)))
                })
            })
            .collect();
        SkewPolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SkewPoly::is_zero)
    }
}
