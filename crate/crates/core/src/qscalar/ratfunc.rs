use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::ScalarError;

/// An element of the field Q(q) in canonical form.
///
/// The denominator is a monic ordinary polynomial with nonzero constant term,
/// and it shares no common factor with the numerator, so two values are equal
/// exactly when their stored parts are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(BigRational::one(), k))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (den_shift, den_dense) = den.to_dense();
        // fast path: constant denominator after shifting
        if den_dense.len() == 1 {
            let inv = den_dense[0].recip();
            return RatFunc {
                num: num.scale(&inv).shift(-den_shift),
                den: LaurentPoly::one(),
            };
        }
        let (num_shift, num_dense) = num.to_dense();
        let g = dense::gcd(&num_dense, &den_dense);
        let (num_dense, den_dense) = if g.len() > 1 {
            (dense::div_exact(&num_dense, &g), dense::div_exact(&den_dense, &g))
        } else {
            (num_dense, den_dense)
        };
        let lc = den_dense.last().unwrap().recip();
        let num_dense: Vec<BigRational> = num_dense.iter().map(|c| c * &lc).collect();
        let den_dense: Vec<BigRational> = den_dense.iter().map(|c| c * &lc).collect();
        RatFunc {
            num: LaurentPoly::from_dense(num_shift - den_shift, &num_dense),
            den: LaurentPoly::from_dense(0, &den_dense),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_laurent(num);
            }
            return Self::normalize(num, self.den.clone());
        }
        // a/1 + c/d and a/b + c/d with coprime b, d are already reduced
        let coprime = self.den.is_one()
            || other.den.is_one()
            || dense::gcd(&self.den.to_dense().1, &other.den.to_dense().1).len() == 1;
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        if coprime {
            if num.is_zero() {
                return Self::zero();
            }
            return RatFunc {
                num,
                den: self.den.mul(&other.den),
            };
        }
        Self::normalize(num, self.den.mul(&other.den))
    }

    pub fn negated(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.mul(&other.num));
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn divide(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.times(&other.recip()?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.times(&base);
        }
        Ok(acc)
    }

    /// Exact value at `q = q0`.
    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if q0.is_zero() {
            return Err(ScalarError::ZeroEvaluationPoint);
        }
        let d = self.den.evaluate(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole(q0.to_string()));
        }
        Ok(self.num.evaluate(q0) / d)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        if self.num.terms().len() == 1 && !num.starts_with('-') {
            write!(f, "{num}/({})", self.den)
        } else {
            write!(f, "({num})/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Dense univariate arithmetic over Q; index = exponent, no trailing zeros.
mod dense {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    /// Returns `(quotient, remainder)`.
    pub fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem: Vec<BigRational> = a.to_vec();
        trim(&mut rem);
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lb = b.last().expect("division by zero polynomial");
        let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let c = rem.last().unwrap() / lb;
            for (i, bc) in b.iter().enumerate() {
                rem[shift + i] -= &c * bc;
            }
            quot[shift] = c;
            rem.pop();
            trim(&mut rem);
        }
        (quot, rem)
    }

    pub fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (q, r) = div_rem(a, b);
        debug_assert!(r.is_empty());
        q
    }

    /// Monic gcd, computed by a primitive remainder sequence over the integers.
    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = integral_primitive(a);
        let mut y = integral_primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive(r);
        }
        let Some(lc) = x.last().cloned() else {
            return Vec::new();
        };
        x.into_iter().map(|c| BigRational::new(c, lc.clone())).collect()
    }

    fn integral_primitive(a: &[BigRational]) -> Vec<BigInt> {
        let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        primitive(a.iter().map(|c| c.numer() * (&l / c.denom())).collect())
    }

    fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() || content.is_one() {
            return v;
        }
        v.iter().map(|c| c / &content).collect()
    }

    /// `lc(b)^k * a mod b` with coefficients kept integral.
    fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lb = b.last().expect("nonzero divisor");
        while r.len() >= b.len() && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - b.len();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
    }

    #[test]
    fn exact_cancellation() {
        // (q^2 - 1) / (q - 1) = q + 1
        let a = RatFunc::from_laurent(lp(&[(2, 1), (0, -1)]));
        let b = RatFunc::from_laurent(lp(&[(1, 1), (0, -1)]));
        let c = a.divide(&b).unwrap();
        assert_eq!(c, RatFunc::from_laurent(lp(&[(1, 1), (0, 1)])));
        assert!(c.is_laurent());
    }

    #[test]
    fn canonical_denominator_is_monic_polynomial() {
        // (q - q^-1)/(q + q^-1) = (q^2 - 1)/(q^2 + 1)
        let x = RatFunc::new(lp(&[(1, 1), (-1, -1)]), lp(&[(1, 1), (-1, 1)])).unwrap();
        assert_eq!(x.numer(), &lp(&[(2, 1), (0, -1)]));
        assert_eq!(x.denom(), &lp(&[(2, 1), (0, 1)]));
        // -2 / (2q - 4) = -1/(q - 2)
        let y = RatFunc::new(lp(&[(0, -2)]), lp(&[(1, 2), (0, -4)])).unwrap();
        assert_eq!(y.numer(), &lp(&[(0, -1)]));
        assert_eq!(y.denom(), &lp(&[(1, 1), (0, -2)]));
    }

    #[test]
    fn q_powers_leave_the_denominator() {
        let x = RatFunc::new(lp(&[(0, 1)]), lp(&[(3, 1), (2, 1)])).unwrap();
        // 1/(q^3 + q^2) = q^-2 / (q + 1)
        assert_eq!(x.numer(), &lp(&[(-2, 1)]));
        assert_eq!(x.denom(), &lp(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(lp(&[(0, 1)]), LaurentPoly::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(RatFunc::zero().recip().is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let x = RatFunc::from_laurent(lp(&[(1, 1), (-1, -1)]));
        let two = BigRational::from_integer(2.into());
        assert_eq!(x.evaluate_at(&two).unwrap(), BigRational::new(3.into(), 2.into()));
        assert!(x.evaluate_at(&BigRational::one()).unwrap().is_zero());
        let p = RatFunc::from_int(1)
            .divide(&RatFunc::from_laurent(lp(&[(1, 1), (0, -1)])))
            .unwrap();
        assert!(matches!(p.evaluate_at(&BigRational::one()), Err(ScalarError::Pole(_))));
    }
}
