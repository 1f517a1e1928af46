//! Syndrome formers of skew convolutional codes.
//!
//! A syndrome former is an `(n-k) x n` polynomial matrix `H(D)` with
//! `rank(H_0) = n - k` and `G(D) H^T(D) = 0` in `F[D; theta]`. Every
//! codeword `v` then has zero syndrome
//!
//! ```text
//! s_j = sum_t v_t theta^t(H_{j-t})^T
//! ```
//!
//! `theta` is only linear over the prime field, so the unknown coefficients
//! are solved for as a GF(p)-linear system in their base-p coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::code::SkewConvCode;
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::sequence::Sequence;
use crate::skewpoly::SkewPolyMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("no syndrome former with dual memory at most {bound}")]
    NotFound { bound: usize },
    #[error("code has k = n, its dual is trivial")]
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeFormer {
    h: SkewPolyMatrix,
    mu_perp: usize,
    /// Dimension over F of the space of single-row solutions at `mu_perp`.
    solution_dim: usize,
}

impl SyndromeFormer {
    /// Wraps an arbitrary matrix, e.g. to test a candidate against a code.
    pub fn from_matrix(h: SkewPolyMatrix) -> Self {
        let mu_perp = h.memory();
        let solution_dim = h.rows();
        SyndromeFormer {
            h,
            mu_perp,
            solution_dim,
        }
    }

    pub fn h(&self) -> &SkewPolyMatrix {
        &self.h
    }

    pub fn mu_perp(&self) -> usize {
        self.mu_perp
    }

    pub fn solution_dim(&self) -> usize {
        self.solution_dim
    }

    /// `[H_0, ..., H_mu_perp]`, each `(n-k) x n`.
    pub fn coefficients(&self) -> Vec<Matrix> {
        (0..=self.mu_perp).map(|i| self.h.coefficient(i)).collect()
    }

    /// `G(D) H^T(D)`.
    pub fn product_with(&self, code: &SkewConvCode) -> SkewPolyMatrix {
        code.generator().mul(&self.h.transpose())
    }

    /// Syndrome of `v`: `len(v) + mu_perp` blocks of `n - k` symbols.
    pub fn syndrome(&self, v: &Sequence) -> Sequence {
        let field = self.h.field();
        let r = self.h.rows();
        let coeffs = self.coefficients();
        let len = v.len() + self.mu_perp;
        let mut s = Sequence::zeros(r, len);
        for (t, block) in v.blocks().enumerate() {
            for (d, hd) in coeffs.iter().enumerate() {
                let twisted = hd.frobenius(field, t as i64);
                let out = s.block_mut(t + d);
                for (row, o) in out.iter_mut().enumerate() {
                    let dot = block.iter().enumerate().fold(Elem::ZERO, |acc, (c, &x)| {
                        field.add(acc, field.mul(x, twisted.get(row, c)))
                    });
                    *o = field.add(*o, dot);
                }
            }
        }
        s
    }
}

/// Smallest-memory syndrome former with `mu_perp <= max_mu_perp`
/// (default `n * mu`).
///
/// Rows are normalized by right scalar multiplication and right-module row
/// operations so that `H_0` is in reduced echelon form with pivots chosen
/// from the last column backwards.
pub fn syndrome_former(
    code: &SkewConvCode,
    max_mu_perp: Option<usize>,
) -> Result<SyndromeFormer, DualError> {
    let (k, n) = (code.k(), code.n());
    if k == n {
        return Err(DualError::Trivial);
    }
    let bound = max_mu_perp.unwrap_or(n * code.memory());
    let field = code.field();
    for mu_perp in 0..=bound {
        let solutions = solve_rows(code, mu_perp);
        let solution_dim = solutions.len() / field.degree() as usize;
        if let Some(rows) = select_rows(field, &solutions, n, n - k) {
            let rows = normalize(field, rows, n);
            let coeffs: Vec<Matrix> = (0..=mu_perp)
                .map(|b| {
                    Matrix::from_rows(
                        rows.iter()
                            .map(|r| r[b * n..(b + 1) * n].to_vec())
                            .collect(),
                    )
                })
                .collect();
            let h = SkewPolyMatrix::from_coefficients(field.clone(), &coeffs);
            return Ok(SyndromeFormer {
                mu_perp: h.memory(),
                h,
                solution_dim,
            });
        }
    }
    Err(DualError::NotFound { bound })
}

/// GF(p)-basis of `{h : G(D) h(D)^T = 0, deg h <= mu_perp}`, as F-vectors
/// indexed `[b * n + c]` for the coefficient of `D^b` in column `c`.
fn solve_rows(code: &SkewConvCode, mu_perp: usize) -> Vec<Vec<Elem>> {
    let field = code.field();
    let (k, n, mu) = (code.k(), code.n(), code.memory());
    let m = field.degree() as usize;
    let g = code.coefficients();
    let unknowns = (mu_perp + 1) * n * m;
    let equations = (mu + mu_perp + 1) * k * m;
    let mut sys = Matrix::zeros(equations, unknowns);
    for b in 0..=mu_perp {
        for c in 0..n {
            for e in 0..m {
                let mut unit = vec![0; m];
                unit[e] = 1;
                let x = field.from_digits(&unit);
                let col = (b * n + c) * m + e;
                // coefficient of D^(a+b) in row i gains G_a[i][c] theta^a(x)
                for (a, ga) in g.iter().enumerate() {
                    let tx = field.frobenius(x, a as i64);
                    for i in 0..k {
                        let val = field.mul(ga.get(i, c), tx);
                        for (e2, d) in field.digits(val).into_iter().enumerate() {
                            if d != 0 {
                                let row = ((a + b) * k + i) * m + e2;
                                sys.set(row, col, Elem(d));
                            }
                        }
                    }
                }
            }
        }
    }
    let gfp = field.prime_field();
    sys.nullspace(&gfp)
        .into_iter()
        .map(|v| {
            (0..(mu_perp + 1) * n)
                .map(|j| {
                    field.from_digits(
                        &v[j * m..(j + 1) * m]
                            .iter()
                            .map(|d| d.0)
                            .collect::<Vec<_>>(),
                    )
                })
                .collect()
        })
        .collect()
}

/// Greedily picks `want` solutions whose `H_0` parts are independent over F.
fn select_rows(
    field: &FiniteField,
    solutions: &[Vec<Elem>],
    n: usize,
    want: usize,
) -> Option<Vec<Vec<Elem>>> {
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    for s in solutions {
        let mut h0: Vec<Vec<Elem>> = chosen.iter().map(|r| r[..n].to_vec()).collect();
        h0.push(s[..n].to_vec());
        if Matrix::from_rows(h0).rank(field) == chosen.len() + 1 {
            chosen.push(s.clone());
            if chosen.len() == want {
                return Some(chosen);
            }
        }
    }
    None
}

/// `row * s` for a polynomial row vector: the coefficient of `D^b` picks up `theta^b(s)`.
fn scale_right(field: &FiniteField, row: &[Elem], n: usize, s: Elem) -> Vec<Elem> {
    row.iter()
        .enumerate()
        .map(|(j, &x)| field.mul(x, field.frobenius(s, (j / n) as i64)))
        .collect()
}

fn normalize(field: &FiniteField, mut rows: Vec<Vec<Elem>>, n: usize) -> Vec<Vec<Elem>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut done = vec![false; rows.len()];
    for col in (0..n).rev() {
        let Some(p) = (0..rows.len()).find(|&r| !done[r] && !rows[r][col].is_zero()) else {
            continue;
        };
        let inv = field.inv(rows[p][col]).expect("pivot is nonzero");
        rows[p] = scale_right(field, &rows[p], n, inv);
        for r in 0..rows.len() {
            let f = rows[r][col];
            if r == p || f.is_zero() {
                continue;
            }
            let sub = scale_right(field, &rows[p], n, f);
            rows[r] = rows[r]
                .iter()
                .zip(&sub)
                .map(|(&a, &b)| field.sub(a, b))
                .collect();
        }
        done[p] = true;
        pivots.push((col, p));
    }
    pivots.sort();
    pivots.into_iter().map(|(_, p)| rows[p].clone()).collect()
}

/// Window of the scalar `H^T`: `time_blocks` block rows of `n` and
/// `syndrome_blocks` block columns of `n - k`; block `(t, j)` holds
/// `theta^t(H_{j-t})^T`.
pub fn scalar_check_transpose(
    sf: &SyndromeFormer,
    time_blocks: usize,
    syndrome_blocks: usize,
) -> Matrix {
    let field = sf.h.field();
    let (r, n) = (sf.h.rows(), sf.h.cols());
    let coeffs = sf.coefficients();
    let mut m = Matrix::zeros(time_blocks * n, syndrome_blocks * r);
    for t in 0..time_blocks {
        for (d, hd) in coeffs.iter().enumerate() {
            if t + d < syndrome_blocks {
                m.set_block(
                    t * n,
                    (t + d) * r,
                    &hd.frobenius(field, t as i64).transpose(),
                );
            }
        }
    }
    m
}

/// Window of the scalar parity-check matrix `H`: block `(j, t)` holds
/// `theta^t(H_{j-t})`. Its rows generate the dual code.
pub fn scalar_check_matrix(
    sf: &SyndromeFormer,
    syndrome_blocks: usize,
    time_blocks: usize,
) -> Matrix {
    scalar_check_transpose(sf, time_blocks, syndrome_blocks).transpose()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// `G(D) H^T(D) = 0` exactly.
    pub product_zero: bool,
    /// Random terminated codewords all have zero syndrome.
    pub syndromes_zero: bool,
    /// Random dual codewords `y H` are orthogonal to random codewords.
    pub orthogonal: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.product_zero && self.syndromes_zero && self.orthogonal
    }
}

/// Checks `sf` against `code` on `num_words` random information frames of
/// `len` blocks.
pub fn verify_duality(
    code: &SkewConvCode,
    sf: &SyndromeFormer,
    num_words: usize,
    len: usize,
    seed: u64,
) -> DualityReport {
    let field = code.field();
    let q = field.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_seq = |block_len: usize, blocks: usize| {
        let symbols = (0..block_len * blocks)
            .map(|_| Elem(rng.gen_range(0..q)))
            .collect();
        Sequence::new(block_len, symbols).expect("whole blocks")
    };
    let product_zero = sf.product_with(code).is_zero();
    let r = sf.h.rows();
    let span = len + code.memory() + sf.mu_perp;
    let h_window = scalar_check_matrix(sf, span, span);
    let mut syndromes_zero = true;
    let mut orthogonal = true;
    for _ in 0..num_words {
        let v = code
            .encode(&random_seq(code.k(), len), true)
            .expect("well-formed input");
        syndromes_zero &= sf.syndrome(&v).weight() == 0;
        let y = random_seq(r, span);
        let w = h_window.left_mul_vec(field, y.symbols());
        let dot = v
            .symbols()
            .iter()
            .zip(&w)
            .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
        orthogonal &= dot.is_zero();
    }
    DualityReport {
        product_zero,
        syndromes_zero,
        orthogonal,
    }
}
