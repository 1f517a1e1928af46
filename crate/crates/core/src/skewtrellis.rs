//! Skew trellis codes: right-module codes over `F[D; theta]`.
//!
//! The encoder stores twisted inputs, so the code sequence is
//!
//! ```text
//! v_t = u_t G_0 + theta(u_{t-1}) G_1 + ... + theta^mu(u_{t-mu}) G_mu
//! ```
//!
//! The trellis is time invariant; the twist lives in the state update. The
//! code is additive and linear over the fixed field of `theta`, but not over
//! the whole field when `theta` is not the identity.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{check_symbols, CodeError};
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::sequence::Sequence;
use crate::skewpoly::SkewPolyMatrix;
use crate::trellis::{Trellis, TrellisError};

#[derive(Clone, Debug)]
pub struct SkewTrellisCode {
    generator: SkewPolyMatrix,
    coeffs: Vec<Matrix>,
    row_degrees: Vec<usize>,
}

impl SkewTrellisCode {
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
        let coeffs = generator.coefficients();
        let code = SkewTrellisCode {
            generator,
            coeffs,
            row_degrees,
        };
        let window = code.field().theta_order() as usize * (code.external_degree() + 1);
        let (rank, expected) = code.prime_window_rank(window);
        if rank < expected {
            return Err(CodeError::RankDeficient { rank, expected });
        }
        Ok(code)
    }

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

    pub fn external_degree(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    pub fn coefficients(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// The encoder is only GF(p)-linear, so injectivity is checked on the
    /// GF(p)-matrix of the map `u -> v` over a window of `blocks` inputs.
    fn prime_window_rank(&self, blocks: usize) -> (usize, usize) {
        let field = self.field();
        let m = field.degree() as usize;
        let (k, n) = (self.k(), self.n());
        let out_len = (blocks + self.memory()) * n * m;
        let mut rows = Vec::with_capacity(blocks * k * m);
        for t in 0..blocks {
            for r in 0..k {
                for e in 0..m {
                    let mut unit = vec![0; m];
                    unit[e] = 1;
                    let mut u = Sequence::zeros(k, blocks);
                    u.block_mut(t)[r] = field.from_digits(&unit);
                    let v = self.encode_right(&u, true).expect("well-formed input");
                    let row: Vec<Elem> = v
                        .symbols()
                        .iter()
                        .flat_map(|&s| field.digits(s))
                        .map(Elem)
                        .collect();
                    debug_assert_eq!(row.len(), out_len);
                    rows.push(row);
                }
            }
        }
        let expected = rows.len();
        (Matrix::from_rows(rows).rank(&field.prime_field()), expected)
    }

    pub fn encode_right(&self, u: &Sequence, terminate: bool) -> Result<Sequence, CodeError> {
        let field = self.field();
        check_symbols(field, u, self.k())?;
        let mu = self.memory();
        let len = u.len() + if terminate { mu } else { 0 };
        let mut v = Sequence::zeros(self.n(), len);
        for t in 0..len {
            let out = v.block_mut(t);
            for (i, g) in self.coeffs.iter().enumerate() {
                if i > t || t - i >= u.len() {
                    continue;
                }
                for (r, &x) in u.block(t - i).iter().enumerate() {
                    let x = field.frobenius(x, i as i64);
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

    /// Single-section trellis. Slot `j` of row `r` holds `theta^j(u_{t-j})`;
    /// the update is `slot_1 = theta(u_t)`, `slot_{j+1} = theta(slot_j)`.
    pub fn build_trellis_right(&self) -> Result<Trellis, TrellisError> {
        let field = self.field().clone();
        let rows = self.row_degrees.clone();
        let offsets: Vec<usize> = rows
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let f = field.clone();
        let n = self.n();
        Trellis::build(
            field,
            self.k(),
            n,
            self.memory(),
            rows.clone(),
            1,
            move |_, sd, xd| {
                let mut label = vec![Elem::ZERO; n];
                let mut next = vec![Elem::ZERO; sd.len()];
                let mut acc = |x: Elem, row: usize, delay: usize| {
                    if x.is_zero() {
                        return;
                    }
                    let g = &self.coeffs[delay];
                    for (c, l) in label.iter_mut().enumerate() {
                        *l = f.add(*l, f.mul(x, g.get(row, c)));
                    }
                };
                for (i, (&deg, &off)) in rows.iter().zip(&offsets).enumerate() {
                    acc(xd[i], i, 0);
                    for j in 1..=deg {
                        acc(sd[off + j - 1], i, j);
                    }
                    if deg > 0 {
                        next[off] = f.frobenius(xd[i], 1);
                        for j in 1..deg {
                            next[off + j] = f.frobenius(sd[off + j - 1], 1);
                        }
                    }
                }
                (label, next)
            },
        )
    }

    /// Additivity and homogeneity diagnostics; see [`LinearityReport`].
    pub fn linearity_report(&self, trials: usize, seed: u64) -> LinearityReport {
        let field = self.field();
        let q = field.size();
        let k = self.k();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fixed_field = field.fixed_field();
        let mut additive = true;
        let mut fixed_homogeneous = true;
        for _ in 0..trials {
            let len = rng.gen_range(1..=8);
            let mut draw = || {
                let symbols = (0..k * len).map(|_| Elem(rng.gen_range(0..q))).collect();
                Sequence::new(k, symbols).expect("whole blocks")
            };
            let (u, w) = (draw(), draw());
            let enc = |x: &Sequence| self.encode_right(x, true).expect("well-formed input");
            let (eu, ew) = (enc(&u), enc(&w));
            additive &= enc(&u.add(field, &w)) == eu.add(field, &ew);
            let c = fixed_field[rng.gen_range(0..fixed_field.len())];
            fixed_homogeneous &=
                enc(&u.scale(field, c).add(field, &w)) == eu.scale(field, c).add(field, &ew);
        }
        LinearityReport {
            fixed_field: fixed_field.iter().map(|e| e.0).collect(),
            trials,
            additive,
            fixed_field_homogeneous: fixed_homogeneous,
            witness: self.homogeneity_witness(4096),
        }
    }

    /// First `(a, u)` with `encode_right(a u) != a encode_right(u)`, scanning
    /// inputs by increasing length (at most `budget` inputs per length) and
    /// then `a` in increasing order.
    pub fn homogeneity_witness(&self, budget: u64) -> Option<Witness> {
        let field = self.field();
        let q = field.size() as u64;
        let k = self.k();
        let mut len = 1;
        while q.checked_pow((k * len) as u32).is_some_and(|c| c <= budget) {
            let total = q.pow((k * len) as u32);
            for idx in 0..total {
                let mut x = idx;
                let symbols = (0..k * len)
                    .map(|_| {
                        let d = (x % q) as u32;
                        x /= q;
                        Elem(d)
                    })
                    .collect();
                let u = Sequence::new(k, symbols).expect("whole blocks");
                let eu = self.encode_right(&u, true).expect("well-formed input");
                for a in field.elements() {
                    let lhs = self
                        .encode_right(&u.scale(field, a), true)
                        .expect("well-formed input");
                    let rhs = eu.scale(field, a);
                    if lhs != rhs {
                        return Some(Witness {
                            scalar: a.0,
                            input: u,
                            scaled_output: lhs,
                            output_scaled: rhs,
                        });
                    }
                }
            }
            len += 1;
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub scalar: u32,
    #[serde(serialize_with = "ser_seq")]
    pub input: Sequence,
    /// `encode_right(a u)`
    #[serde(serialize_with = "ser_seq")]
    pub scaled_output: Sequence,
    /// `a encode_right(u)`
    #[serde(serialize_with = "ser_seq")]
    pub output_scaled: Sequence,
}

fn ser_seq<S: serde::Serializer>(s: &Sequence, ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut out = ser.serialize_seq(Some(s.len()))?;
    for b in s.blocks() {
        out.serialize_element(&b.iter().map(|e| e.0).collect::<Vec<_>>())?;
    }
    out.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    /// Elements fixed by `theta`.
    pub fixed_field: Vec<u32>,
    pub trials: usize,
    /// `E(u + w) = E(u) + E(w)` on every random pair.
    pub additive: bool,
    /// `E(c u + w) = c E(u) + E(w)` for random `c` in the fixed field.
    pub fixed_field_homogeneous: bool,
    pub witness: Option<Witness>,
}
