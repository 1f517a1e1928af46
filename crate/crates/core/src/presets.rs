//! Ready-made codes.

use std::sync::Arc;

use crate::code::SkewConvCode;
use crate::field::FiniteField;

/// The `[2, 1]` unit-memory code over GF(4) with `G(D) = (1 + aD, a + a^2 D)`,
/// `a^2 = a + 1`. With `theta_r = 1` the automorphism is squaring and the code
/// is 2-periodic; with `theta_r = 0` it is the ordinary fixed code generated
/// by the same matrix.
pub fn unit_memory_gf4(theta_r: u32) -> SkewConvCode {
    let field = Arc::new(FiniteField::binary(2, theta_r).expect("GF(4) is built in"));
    SkewConvCode::from_nested(field, &[vec![vec![1, 2], vec![2, 3]]]).expect("valid generator")
}
