//! Skew convolutional codes: left submodules generated by a polynomial matrix
//! `G(D) = G_0 + G_1 D + ... + G_mu D^mu` over `F[D; theta]`.
//!
//! Encoding is the skew convolution
//!
//! ```text
//! v_t = sum_{i=0..mu} u_{t-i} theta^(t-i)(G_i),   u_t = 0 for t < 0
//! ```
//!
//! so the code is a time-varying ordinary convolutional code whose
//! coefficients repeat with the period `tau` of the generator matrix.

use std::sync::Arc;

use thiserror::Error;

use crate::field::FiniteField;
use crate::linalg::Matrix;
use crate::sequence::Sequence;
use crate::skewpoly::{SkewPoly, SkewPolyMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix must satisfy 1 <= k <= n (k = {k}, n = {n})")]
    Dimensions { k: usize, n: usize },
    #[error("row {0} of the generator matrix is zero")]
    ZeroRow(usize),
    #[error("generator matrix is rank deficient: scalar window rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("sequence blocks have length {got}, expected {expected}")]
    BlockLength { got: usize, expected: usize },
    #[error("symbol {value} is outside the field of order {size}")]
    InvalidSymbol { value: u32, size: u32 },
}

/// Smallest `i > 0` with `theta^i(G_j) = G_j` for every coefficient matrix.
pub fn coefficient_period(field: &FiniteField, coeffs: &[Matrix]) -> usize {
    let order = field.theta_order() as usize;
    (1..=order)
        .find(|&i| {
            order.is_multiple_of(i) && coeffs.iter().all(|g| g.frobenius(field, i as i64) == *g)
        })
        .unwrap_or(order)
}

pub(crate) fn check_symbols(
    field: &FiniteField,
    seq: &Sequence,
    expected: usize,
) -> Result<(), CodeError> {
    if seq.block_len() != expected {
        return Err(CodeError::BlockLength {
            got: seq.block_len(),
            expected,
        });
    }
    if let Some(s) = seq.symbols().iter().find(|s| !field.contains(**s)) {
        return Err(CodeError::InvalidSymbol {
            value: s.0,
            size: field.size(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SkewConvCode {
    generator: SkewPolyMatrix,
    coeffs: Vec<Matrix>,
    row_degrees: Vec<usize>,
    period: usize,
    // phase_coeffs[s][i] = theta^(s - i)(G_i), used at every t = s (mod tau)
    phase_coeffs: Vec<Vec<Matrix>>,
}

impl SkewConvCode {
    pub fn new(generator: SkewPolyMatrix) -> Result<Self, CodeError> {
        let (k, n) = (generator.rows(), generator.cols());
        if k == 0 || k > n {
            return Err(CodeError::Dimensions { k, n });
        }
        let row_degrees = generator
            .row_degrees()
            .into_iter()
            .enumerate()
            .map(|(r, d)| d.ok_or(CodeError::ZeroRow(r)))
            .collect::<Result<Vec<_>, _>>()?;
        let field = generator.field().clone();
        let coeffs = generator.coefficients();
        let period = coefficient_period(&field, &coeffs);
        let phase_coeffs = (0..period)
            .map(|s| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.frobenius(&field, s as i64 - i as i64))
                    .collect()
            })
            .collect();
        let code = SkewConvCode {
            generator,
            coeffs,
            row_degrees,
            period,
            phase_coeffs,
        };

        // A rank-deficient G(D) has a polynomial left kernel vector of degree
        // at most nu, which shows up as a row dependency in this window.
        let window = code.period * (code.external_degree() + 1);
        let rank = code.scalar_generator(window).rank(&field);
        if rank < window * k {
            return Err(CodeError::RankDeficient {
                rank,
                expected: window * k,
            });
        }
        Ok(code)
    }

    /// Builds from nested `[row][col][power]` element integers.
    pub fn from_nested(field: Arc<FiniteField>, g: &[Vec<Vec<u32>>]) -> Result<Self, crate::Error> {
        Ok(Self::new(SkewPolyMatrix::from_nested(field, g)?)?)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.generator.field()
    }

    pub fn generator(&self) -> &SkewPolyMatrix {
        &self.generator
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn memory(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    /// Sum of row degrees; the trellis has `Q^nu` states.
    pub fn external_degree(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// `[G_0, ..., G_mu]`
    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Encoder coefficient `theta^(t - i)(G_i)` applied to `u_{t-i}` at time `t`.
    pub fn time_coefficient(&self, t: usize, i: usize) -> &Matrix {
        &self.phase_coeffs[t % self.period][i]
    }

    pub fn encode(&self, u: &Sequence, terminate: bool) -> Result<Sequence, CodeError> {
        let field = self.field();
        check_symbols(field, u, self.k())?;
        let mu = self.memory();
        let len = u.len() + if terminate { mu } else { 0 };
        let mut v = Sequence::zeros(self.n(), len);
        for t in 0..len {
            let out = v.block_mut(t);
            for i in 0..=mu.min(t) {
                let src = t - i;
                if src >= u.len() {
                    continue;
                }
                let g = self.time_coefficient(t, i);
                for (r, &x) in u.block(src).iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (c, o) in out.iter_mut().enumerate() {
                        *o = field.add(*o, field.mul(x, g.get(r, c)));
                    }
                }
            }
        }
        Ok(v)
    }

    /// First `t_rows` block rows of the semi-infinite scalar generator:
    /// block `(t, t + j)` holds `theta^t(G_j)`.
    pub fn scalar_generator(&self, t_rows: usize) -> Matrix {
        let (k, n, mu) = (self.k(), self.n(), self.memory());
        let field = self.field();
        let mut m = Matrix::zeros(t_rows * k, (t_rows + mu) * n);
        for t in 0..t_rows {
            for (j, g) in self.coeffs.iter().enumerate() {
                m.set_block(t * k, (t + j) * n, &g.frobenius(field, t as i64));
            }
        }
        m
    }

    /// The same window built from `G~_j = theta^(-j)(G_j)`: block `(t, t + j)`
    /// holds `theta^(t + j)(G~_j)`.
    pub fn scalar_generator_shifted(&self, t_rows: usize) -> Matrix {
        let (k, n, mu) = (self.k(), self.n(), self.memory());
        let field = self.field();
        let tilde: Vec<Matrix> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, g)| g.frobenius(field, -(j as i64)))
            .collect();
        let mut m = Matrix::zeros(t_rows * k, (t_rows + mu) * n);
        for t in 0..t_rows {
            for (j, gt) in tilde.iter().enumerate() {
                m.set_block(t * k, (t + j) * n, &gt.frobenius(field, (t + j) as i64));
            }
        }
        m
    }

    /// Generator of the equivalent fixed `[tau n, tau k]` code obtained by
    /// grouping `tau` consecutive blocks. The result lives over the same
    /// field with the identity automorphism.
    pub fn tau_block(&self) -> SkewPolyMatrix {
        if self.period == 1 {
            return self.generator.clone();
        }
        let tau = self.period;
        let (k, n) = (self.k(), self.n());
        let field = self.field();
        let fixed = Arc::new(
            field
                .with_theta(0)
                .expect("identity automorphism always exists"),
        );
        let mut entries = vec![SkewPoly::zero(fixed.clone()); tau * k * tau * n];
        let cols = tau * n;
        for a in 0..tau {
            for (d, g) in self.coeffs.iter().enumerate() {
                // u_{tau T + a} reaches v_{tau (T + e) + b} through theta^a(G_d)
                let reach = a + d;
                let (e, b) = (reach / tau, reach % tau);
                let twisted = g.frobenius(field, a as i64);
                for r in 0..k {
                    for c in 0..n {
                        let x = twisted.get(r, c);
                        if x.is_zero() {
                            continue;
                        }
                        let idx = (a * k + r) * cols + b * n + c;
                        let term = SkewPoly::monomial(fixed.clone(), x, e);
                        entries[idx] = entries[idx].add(&term);
                    }
                }
            }
        }
        SkewPolyMatrix::new(fixed, tau * k, tau * n, entries).expect("shape is consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Elem;
    use crate::testutil::{example_code, random_sequence, A, A2};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field_for(theta_r: u32) -> Arc<FiniteField> {
        Arc::new(FiniteField::binary(2, theta_r).unwrap())
    }

    #[test]
    fn example_codeword() {
        let code = example_code(1);
        let u = Sequence::from_u32_blocks(&[&[1], &[0], &[0], &[1]]);
        let v = code.encode(&u, true).unwrap();
        let expected = Sequence::from_u32_blocks(&[&[1, A], &[A, A2], &[0, 0], &[1, A2], &[A2, A]]);
        assert_eq!(v, expected);
    }

    #[test]
    fn zero_input_gives_zero_output() {
        let code = example_code(1);
        let v = code.encode(&Sequence::zeros(1, 5), true).unwrap();
        assert_eq!(v, Sequence::zeros(2, 6));
    }

    #[test]
    fn direct_time_indexed_evaluation() {
        // u = a, 1: v_0 = a G_0, v_1 = 1 theta(G_0) + a theta^0(G_1)
        let code = example_code(1);
        let f = code.field().clone();
        let u = Sequence::from_u32_blocks(&[&[A], &[1]]);
        let v = code.encode(&u, false).unwrap();
        let g0 = [Elem(1), Elem(A)];
        let g1 = [Elem(A), Elem(A2)];
        let v0: Vec<Elem> = g0.iter().map(|&g| f.mul(Elem(A), g)).collect();
        let v1: Vec<Elem> = (0..2)
            .map(|c| f.add(f.frobenius(g0[c], 1), f.mul(Elem(A), g1[c])))
            .collect();
        assert_eq!(v.block(0), &v0[..]);
        assert_eq!(v.block(1), &v1[..]);
        assert_eq!(v.block(1), &[Elem(A), Elem(A)]);
    }

    #[test]
    fn periods() {
        assert_eq!(example_code(1).period(), 2);
        assert_eq!(example_code(0).period(), 1);
        let f = field_for(1);
        let binary = SkewConvCode::from_nested(f, &[vec![vec![1, 1], vec![0, 1]]]).unwrap();
        assert_eq!(binary.period(), 1);
    }

    #[test]
    fn scalar_generator_window() {
        let code = example_code(1);
        let g = code.scalar_generator(4);
        let expected = Matrix::from_u32_rows(&[
            &[1, A, A, A2, 0, 0, 0, 0, 0, 0],
            &[0, 0, 1, A2, A2, A, 0, 0, 0, 0],
            &[0, 0, 0, 0, 1, A, A, A2, 0, 0],
            &[0, 0, 0, 0, 0, 0, 1, A2, A2, A],
        ]);
        assert_eq!(g, expected);
        assert!(g.same_row_space(code.field(), &code.scalar_generator_shifted(4)));
    }

    #[test]
    fn identity_theta_gives_block_toeplitz() {
        let code = example_code(0);
        let g = code.scalar_generator(3);
        for t in 0..3 {
            assert_eq!(g.block(t, t * 2, 1, 2), code.coefficients()[0]);
            assert_eq!(g.block(t, (t + 1) * 2, 1, 2), code.coefficients()[1]);
        }
    }

    #[test]
    fn tau_block_of_example() {
        let code = example_code(1);
        let blocked = code.tau_block();
        assert_eq!(
            blocked.to_nested(),
            vec![
                vec![vec![1], vec![A], vec![A], vec![A2]],
                vec![vec![0, A2], vec![0, A], vec![1], vec![A2]],
            ]
        );
        assert_eq!(
            example_code(0).tau_block(),
            example_code(0).generator().clone()
        );
    }

    #[test]
    fn encoding_matches_scalar_matrix() {
        let code = example_code(1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = random_sequence(&mut rng, 4, 1, 6);
            let v = code.encode(&u, true).unwrap();
            let by_matrix = code
                .scalar_generator(6)
                .left_mul_vec(code.field(), u.symbols());
            assert_eq!(v.symbols(), &by_matrix[..]);
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let f = field_for(1);
        assert!(matches!(
            SkewConvCode::from_nested(f.clone(), &[vec![vec![1]], vec![vec![1]]]),
            Err(crate::Error::Code(CodeError::Dimensions { .. }))
        ));
        assert!(matches!(
            SkewConvCode::from_nested(f.clone(), &[vec![vec![1], vec![]], vec![vec![], vec![]]]),
            Err(crate::Error::Code(CodeError::ZeroRow(1)))
        ));
        // second row = D * first row: (D)(1, a) = (D, a^2 D)
        let dependent = [vec![vec![1], vec![A]], vec![vec![0, 1], vec![0, A2]]];
        assert!(matches!(
            SkewConvCode::from_nested(f.clone(), &dependent),
            Err(crate::Error::Code(CodeError::RankDeficient { .. }))
        ));
        let code = example_code(1);
        let bad = Sequence::from_u32_blocks(&[&[1, 1]]);
        assert_eq!(
            code.encode(&bad, false),
            Err(CodeError::BlockLength {
                got: 2,
                expected: 1
            })
        );
        let out_of_field = Sequence::from_u32_blocks(&[&[9]]);
        assert!(matches!(
            code.encode(&out_of_field, false),
            Err(CodeError::InvalidSymbol { .. })
        ));
    }

    #[test]
    fn time_coefficients_repeat_with_the_period() {
        let code = example_code(1);
        for t in 0..10 {
            for i in 0..=code.memory() {
                assert_eq!(
                    code.time_coefficient(t, i),
                    code.time_coefficient(t + code.period(), i)
                );
                let direct = code.coefficients()[i].frobenius(code.field(), t as i64 - i as i64);
                assert_eq!(*code.time_coefficient(t, i), direct);
            }
        }
    }
}
