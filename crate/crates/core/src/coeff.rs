//! Coefficient rings shared by the exact and floating-point pipelines.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::scalar::{check_q, Scalar};

/// Commutative ring operations needed by state arithmetic.
pub trait Coeff: Clone + Debug + Send + Sync + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Size used for residual reports; exact nonzero values report infinity.
    fn magnitude(&self) -> f64;
    fn render(&self) -> String;
    /// Multiplicative inverse when it exists in the ring.
    fn inv(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn magnitude(&self) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            f64::INFINITY
        }
    }
    fn render(&self) -> String {
        self.to_canonical()
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn render(&self) -> String {
        format!("{self:.12e}")
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

/// Maps exact scalars into a coefficient ring.
pub trait Field: Sync {
    type C: Coeff;
    fn lift(&self, s: &Scalar) -> Self::C;
    /// `1/√x` for a Gram entry `x`.
    fn inv_sqrt(&self, x: &Self::C) -> Result<Self::C>;
    fn label(&self) -> String;
}

/// The exact ring itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Field for Exact {
    type C = Scalar;
    fn lift(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn inv_sqrt(&self, x: &Scalar) -> Result<Scalar> {
        x.inv_sqrt()
    }
    fn label(&self) -> String {
        "exact".into()
    }
}

/// Evaluation at a numeric `q`.
#[derive(Clone, Copy, Debug)]
pub struct Numeric {
    q: f64,
}

impl Numeric {
    pub fn new(q: f64) -> Result<Numeric> {
        check_q(q)?;
        Ok(Numeric { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl Field for Numeric {
    type C = f64;
    fn lift(&self, s: &Scalar) -> f64 {
        s.eval_float(self.q).expect("q validated at construction")
    }
    fn inv_sqrt(&self, x: &f64) -> Result<f64> {
        if *x <= 0.0 {
            return Err(Error::NonOrthonormal(format!("nonpositive norm {x}")));
        }
        Ok(1.0 / x.sqrt())
    }
    fn label(&self) -> String {
        format!("float q={}", self.q)
    }
}
