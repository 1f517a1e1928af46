//! Finite fields GF(p^n) with a designated Frobenius-power automorphism.
//!
//! Elements are stored as integers in `[0, p^n)` whose base-p digits are the
//! polynomial-basis coordinates, least significant digit first. In GF(4) built
//! on `x^2 + x + 1` the primitive element `a` (the class of `x`) is `2` and
//! `a^2 = a + 1` is `3`.
//!
//! Multiplication goes through log/antilog tables built once at construction.
//! The automorphism is `theta(a) = a^(p^r)` for a fixed `0 <= r < n`.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported maximum 2^20")]
    TooLarge { p: u32, n: u32 },
    #[error("theta exponent r = {r} must satisfy 0 <= r < n = {n}")]
    BadTheta { r: u32, n: u32 },
    #[error("modulus must have {expected} coefficients (degree n), got {got}")]
    ModulusLength { expected: usize, got: usize },
    #[error("modulus coefficient {0} is not a digit modulo p")]
    ModulusDigit(u32),
    #[error("modulus must be monic")]
    ModulusNotMonic,
    #[error("modulus is reducible over GF({0})")]
    Reducible(u32),
    #[error("no default modulus for GF({p}^{n}); supply one")]
    NoDefaultModulus { p: u32, n: u32 },
    #[error("element {value} is outside the field of order {size}")]
    InvalidElement { value: u32, size: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of some [`FiniteField`], as its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Built-in primitive moduli for GF(2^n), as bit masks including the leading term.
const BINARY_MODULI: [u32; 17] = [
    0, 0x2, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// GF(p^n) together with the automorphism `theta(a) = a^(p^r)`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
    theta_r: u32,
    size: u32,
    theta_order: u32,
    primitive: Elem,
    // exp has 2*(size-1) entries so that log sums never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    // frob_pow[i] = p^((r*i) mod n) mod (size - 1), for i in 0..theta_order
    frob_pow: Vec<u64>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.theta_r == other.theta_r
            && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("theta_r", &self.theta_r)
            .finish()
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dense polynomials over GF(p), ascending coefficients. Used only while
/// validating moduli and building tables.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                let idx = shift + i;
                r[idx] = (r[idx] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2)
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        if deg <= 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    cand.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                cand.push(1);
                if rem(m, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FiniteField {
    /// Builds GF(p^n). With `modulus = None` a built-in table is used for p = 2,
    /// and the lexicographically smallest monic irreducible polynomial otherwise.
    pub fn new(
        p: u32,
        n: u32,
        modulus: Option<Vec<u32>>,
        theta_r: u32,
    ) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let size = (p as u64).checked_pow(n).filter(|&s| s <= MAX_FIELD_SIZE);
        let Some(size) = size else {
            return Err(FieldError::TooLarge { p, n });
        };
        let size = size as u32;
        if theta_r >= n {
            return Err(FieldError::BadTheta { r: theta_r, n });
        }

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(FieldError::ModulusLength {
                        expected: n as usize + 1,
                        got: m.len(),
                    });
                }
                if let Some(&d) = m.iter().find(|&&d| d >= p) {
                    return Err(FieldError::ModulusDigit(d));
                }
                if m[n as usize] != 1 {
                    return Err(FieldError::ModulusNotMonic);
                }
                if !prime_poly::is_irreducible(&m, p) {
                    return Err(FieldError::Reducible(p));
                }
                m
            }
            None => Self::default_modulus(p, n)?,
        };

        let mut field = FiniteField {
            p,
            n,
            modulus,
            theta_r,
            size,
            theta_order: n / gcd(n, theta_r),
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            frob_pow: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    /// GF(2^n) with the built-in modulus.
    pub fn binary(n: u32, theta_r: u32) -> Result<Self, FieldError> {
        Self::new(2, n, None, theta_r)
    }

    /// Same field and encoding, different automorphism exponent.
    pub fn with_theta(&self, theta_r: u32) -> Result<Self, FieldError> {
        Self::new(self.p, self.n, Some(self.modulus.clone()), theta_r)
    }

    /// The prime subfield GF(p) (identity automorphism).
    pub fn prime_field(&self) -> FiniteField {
        FiniteField::new(self.p, 1, None, 0).expect("prime field is always constructible")
    }

    fn default_modulus(p: u32, n: u32) -> Result<Vec<u32>, FieldError> {
        if p == 2 && (n as usize) < BINARY_MODULI.len() {
            let mask = BINARY_MODULI[n as usize];
            return Ok((0..=n).map(|i| (mask >> i) & 1).collect());
        }
        if p == 2 {
            return Err(FieldError::NoDefaultModulus { p, n });
        }
        let count = (p as u64).pow(n);
        for idx in 0..count {
            let mut m = Vec::with_capacity(n as usize + 1);
            let mut x = idx;
            for _ in 0..n {
                m.push((x % p as u64) as u32);
                x /= p as u64;
            }
            m.push(1);
            if prime_poly::is_irreducible(&m, p) {
                return Ok(m);
            }
        }
        Err(FieldError::NoDefaultModulus { p, n })
    }

    /// Schoolbook multiply-then-reduce, independent of the tables.
    pub fn mul_naive(&self, a: Elem, b: Elem) -> Elem {
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        let r = prime_poly::rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn pow_naive(&self, a: Elem, mut e: u64) -> Elem {
        let mut result = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_naive(result, base);
            }
            base = self.mul_naive(base, base);
            e >>= 1;
        }
        result
    }

    fn build_tables(&mut self) {
        let order = (self.size - 1) as u64;
        let mut factors = Vec::new();
        let mut rest = order;
        let mut d = 2u64;
        while d * d <= rest {
            if rest.is_multiple_of(d) {
                factors.push(d);
                while rest.is_multiple_of(d) {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        let primitive = (1..self.size)
            .map(Elem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| self.pow_naive(g, order / f) != Elem::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        self.primitive = primitive;

        let q1 = order as usize;
        let mut exp = vec![0u32; 2 * q1.max(1)];
        let mut log = vec![0u32; self.size as usize];
        let mut x = Elem::ONE;
        for i in 0..q1 {
            exp[i] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_naive(x, primitive);
        }
        for i in q1..2 * q1 {
            exp[i] = exp[i - q1];
        }
        self.exp = exp;
        self.log = log;

        self.frob_pow = (0..self.theta_order)
            .map(|i| {
                let e = (self.theta_r as u64 * i as u64) % self.n as u64;
                (self.p as u64).pow(e as u32) % order.max(1)
            })
            .collect();
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn theta_r(&self) -> u32 {
        self.theta_r
    }

    /// Field order p^n.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of theta in the automorphism group: n / gcd(n, r).
    pub fn theta_order(&self) -> u32 {
        self.theta_order
    }

    pub fn is_identity_theta(&self) -> bool {
        self.theta_order == 1
    }

    /// The smallest primitive element, used as `a` in pretty printing.
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).map(Elem)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.size
    }

    pub fn check(&self, a: Elem) -> Result<Elem, FieldError> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(FieldError::InvalidElement {
                value: a.0,
                size: self.size,
            })
        }
    }

    /// Base-p digits, least significant first, exactly n of them.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.n)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d % self.p;
        }
        Elem(v)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let q1 = self.size - 1;
        Ok(Elem(
            self.exp[((q1 - self.log[a.0 as usize]) % q1) as usize],
        ))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let q1 = (self.size - 1) as u64;
        Elem(self.exp[((self.log[a.0 as usize] as u64 * (e % q1)) % q1) as usize])
    }

    /// Discrete log base [`Self::primitive`]; `None` for zero.
    pub fn log_of(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `theta^i(a)` for any integer `i`, negative powers included.
    #[inline]
    pub fn frobenius(&self, a: Elem, i: i64) -> Elem {
        if a.is_zero() {
            return a;
        }
        let idx = i.rem_euclid(self.theta_order as i64) as usize;
        if idx == 0 {
            return a;
        }
        let q1 = (self.size - 1) as u64;
        let e = (self.log[a.0 as usize] as u64 * self.frob_pow[idx]) % q1;
        Elem(self.exp[e as usize])
    }

    /// Elements fixed by theta. Equals GF(p^r) when theta is the p^r-power map.
    pub fn fixed_field(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.frobenius(a, 1) == a)
            .collect()
    }

    /// Renders `0`, `1`, `a`, `a^k` in terms of the primitive element.
    pub fn pretty(&self, a: Elem) -> String {
        match self.log_of(a) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "a".to_string(),
            Some(k) => format!("a^{k}"),
        }
    }

    /// Checked view of an element bound to this field.
    pub fn element(&self, value: u32) -> Result<FieldElement<'_>, FieldError> {
        let value = self.check(Elem(value))?;
        Ok(FieldElement { field: self, value })
    }
}

/// An element together with the field it lives in. Arithmetic on this type
/// rejects operands from different fields.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement<'f> {
    field: &'f FiniteField,
    value: Elem,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.value == other.value
    }
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &'f FiniteField {
        self.field
    }

    fn same_field(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) || self.field == other.field
    }

    fn rebind(&self, value: Elem) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        if !self.same_field(other) {
            return Err(FieldError::MixedFields);
        }
        Ok(self.rebind(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        if !self.same_field(other) {
            return Err(FieldError::MixedFields);
        }
        Ok(self.rebind(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        Ok(self.rebind(self.field.inv(self.value)?))
    }

    pub fn frobenius(&self, i: i64) -> Self {
        self.rebind(self.field.frobenius(self.value, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::binary(2, 1).unwrap()
    }

    const ALPHA: Elem = Elem(2);
    const ALPHA2: Elem = Elem(3);

    #[test]
    fn gf4_relations() {
        let f = f4();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(ALPHA, ALPHA), ALPHA2);
        assert_eq!(f.add(ALPHA, Elem::ONE), ALPHA2);
        assert_eq!(f.mul(ALPHA, Elem::ONE), ALPHA);
        assert_eq!(f.mul(ALPHA, ALPHA2), Elem::ONE);
        assert_eq!(f.pow(ALPHA, 4), ALPHA);
        assert_eq!(f.primitive(), ALPHA);
    }

    #[test]
    fn inverses() {
        let f = f4();
        assert_eq!(f.inv(ALPHA).unwrap(), ALPHA2);
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(f.inv(Elem::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(FieldError::DivisionByZero.to_string(), "division by zero");

        let f8 = FiniteField::new(2, 3, Some(vec![1, 1, 0, 1]), 0).unwrap();
        for a in 1..8 {
            let scan: Vec<u32> = (1..8)
                .filter(|&b| f8.mul_naive(Elem(a), Elem(b)) == Elem::ONE)
                .collect();
            assert_eq!(scan.len(), 1);
            assert_eq!(f8.inv(Elem(a)).unwrap(), Elem(scan[0]));
        }
    }

    #[test]
    fn frobenius_on_gf4() {
        let f = f4();
        assert_eq!(f.frobenius(ALPHA, 1), ALPHA2);
        assert_eq!(f.frobenius(ALPHA, 2), ALPHA);
        assert_eq!(f.frobenius(ALPHA, -1), ALPHA2);
        assert_eq!(f.frobenius(Elem::ZERO, 1), Elem::ZERO);
        assert_eq!(f.frobenius(Elem::ONE, 1), Elem::ONE);
        assert_eq!(f.theta_order(), 2);
        assert_eq!(f.fixed_field(), vec![Elem::ZERO, Elem::ONE]);
    }

    #[test]
    fn theta_order_formula() {
        for (n, r, order) in [(4, 2, 2), (6, 4, 3), (3, 0, 1), (6, 1, 6), (4, 3, 4)] {
            let f = FiniteField::binary(n, r).unwrap();
            assert_eq!(f.theta_order(), order, "n={n} r={r}");
            for a in f.elements() {
                assert_eq!(f.frobenius(a, order as i64), a);
            }
        }
    }

    #[test]
    fn table_mul_matches_naive_for_small_fields() {
        let fields = [
            FiniteField::binary(1, 0).unwrap(),
            FiniteField::binary(2, 1).unwrap(),
            FiniteField::binary(3, 1).unwrap(),
            FiniteField::binary(6, 2).unwrap(),
            FiniteField::new(3, 2, None, 1).unwrap(),
            FiniteField::new(5, 2, None, 1).unwrap(),
            FiniteField::new(7, 1, None, 0).unwrap(),
        ];
        for f in &fields {
            assert!(f.size() <= 64);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_naive(a, b), "{f:?} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn theta_is_an_automorphism() {
        for f in [
            FiniteField::binary(4, 1).unwrap(),
            FiniteField::new(3, 2, None, 1).unwrap(),
        ] {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(f.mul(a, b), 1),
                        f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                    assert_eq!(
                        f.frobenius(f.add(a, b), 1),
                        f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                }
            }
        }
    }

    #[test]
    fn odd_characteristic_arithmetic() {
        let f = FiniteField::new(3, 2, None, 1).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }
    }

    #[test]
    fn builtin_binary_moduli_are_irreducible() {
        for n in 1..=16 {
            let f = FiniteField::binary(n, 0).unwrap();
            assert_eq!(f.size(), 1 << n);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FiniteField::new(4, 1, None, 0).unwrap_err(),
            FieldError::NotPrime(4)
        );
        assert_eq!(
            FiniteField::new(2, 0, None, 0).unwrap_err(),
            FieldError::ZeroDegree
        );
        assert!(matches!(
            FiniteField::new(2, 21, None, 0),
            Err(FieldError::TooLarge { .. })
        ));
        assert!(matches!(
            FiniteField::new(2, 2, None, 2),
            Err(FieldError::BadTheta { .. })
        ));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(
            FiniteField::new(2, 2, Some(vec![1, 0, 1]), 0).unwrap_err(),
            FieldError::Reducible(2)
        );
        assert!(matches!(
            FiniteField::new(2, 2, Some(vec![1, 1]), 0),
            Err(FieldError::ModulusLength { .. })
        ));
        assert_eq!(
            FiniteField::new(2, 2, Some(vec![1, 1, 0]), 0).unwrap_err(),
            FieldError::ModulusNotMonic
        );
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let f4 = f4();
        let f8 = FiniteField::binary(3, 1).unwrap();
        let a = f4.element(2).unwrap();
        let b = f8.element(2).unwrap();
        assert_eq!(a.mul(&b), Err(FieldError::MixedFields));
        assert_eq!(a.mul(&a).unwrap().value(), ALPHA2);
        assert_eq!(a.frobenius(1).value(), ALPHA2);
        assert_eq!(a.inv().unwrap().value(), ALPHA2);
        assert!(f4.element(4).is_err());
        // a structurally equal field built separately is the same field
        let other = FiniteField::binary(2, 1).unwrap();
        assert!(a.add(&other.element(1).unwrap()).is_ok());
    }

    #[test]
    fn pretty_names() {
        let f = f4();
        let names: Vec<String> = f.elements().map(|a| f.pretty(a)).collect();
        assert_eq!(names, ["0", "1", "a", "a^2"]);
    }
}
