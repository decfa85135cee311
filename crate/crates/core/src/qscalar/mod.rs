//! Exact arithmetic in Q(q), the field of rational functions in the
//! deformation parameter `q`.

mod expr;
mod laurent;
mod ratfunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub(crate) use expr::{tokenize, ExprValue, Parser};
pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("evaluation point q = 0 is not allowed")]
    ZeroEvaluationPoint,
    #[error("generator symbols are not allowed in a scalar expression")]
    UnexpectedGenerator,
}

impl ExprValue for RatFunc {
    type Error = ScalarError;
    type Ctx = ();

    fn from_integer(digits: &str) -> Result<Self, ScalarError> {
        let n: BigInt = digits.parse().map_err(|_| ScalarError::Syntax {
            pos: 0,
            msg: format!("bad integer {digits}"),
        })?;
        Ok(RatFunc::from_rational(BigRational::from_integer(n)))
    }

    fn parameter() -> Self {
        RatFunc::q_pow(1)
    }

    fn generator(_: &(), _: &str, _: usize, _: usize) -> Result<Self, ScalarError> {
        Err(ScalarError::UnexpectedGenerator)
    }

    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }

    fn sub(self, rhs: Self) -> Self {
        self.minus(&rhs)
    }

    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, ScalarError> {
        self.divide(&rhs)
    }

    fn neg(self) -> Self {
        self.negated()
    }

    fn pow(self, exp: i64) -> Result<Self, ScalarError> {
        RatFunc::pow(&self, exp)
    }
}

/// Parses a coefficient expression such as `(q - q^-1)/(q + q^-1)`.
pub fn parse_scalar(text: &str) -> Result<RatFunc, ScalarError> {
    let tokens = tokenize(text)?;
    Parser::<RatFunc>::new(&tokens, text.len(), &()).parse_all()
}

/// Parses a rational number such as `3`, `-2/5`.
pub fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let value = parse_scalar(text)?;
    if value.numer().terms().iter().any(|(e, _)| *e != 0) || !value.denom().is_one() {
        return Err(ScalarError::Syntax {
            pos: 0,
            msg: format!("'{text}' is not a rational constant"),
        });
    }
    Ok(value.numer().coeff(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Negates the first operand; the second is ignored.
    Neg,
}

pub fn arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, ScalarError> {
    Ok(match op {
        ArithOp::Add => a.plus(b),
        ArithOp::Sub => a.minus(b),
        ArithOp::Mul => a.times(b),
        ArithOp::Div => a.divide(b)?,
        ArithOp::Neg => a.negated(),
    })
}

pub fn evaluate_at(a: &RatFunc, q0: &BigRational) -> Result<BigRational, ScalarError> {
    a.evaluate_at(q0)
}
