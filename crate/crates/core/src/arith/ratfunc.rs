use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// A rational function `num / den` over a fixed number of variables.
///
/// The representation is not canonical. Construction applies a best-effort
/// reduction (rational content, common monomial factors, exact polynomial
/// division when one side divides the other) but equality is always decided
/// by cross-multiplication, so `==` is exact regardless of representation.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RatFunc {
            num: MultiPoly::constant(nvars, c),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn integer(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, super::rational(n))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, index))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let nvars = p.nvars();
        RatFunc {
            num: p,
            den: MultiPoly::one(nvars),
        }
    }

    /// Builds `num / den`, failing when `den` is the zero polynomial.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Ok(Self::reduced(num, den))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value when this function is a constant, judged on the reduced representation.
    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        let (mut num, mut den) = (num, den);

        let common = num.monomial_content();
        let common = {
            let dm = den.monomial_content();
            let exps = common
                .exponents()
                .iter()
                .zip(dm.exponents())
                .map(|(a, b)| *a.min(b))
                .collect();
            super::Monomial::from_exponents(exps)
        };
        if !common.is_one() {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }

        if !den.as_constant().is_some() {
            if let Some(q) = num.div_exact(&den) {
                return Self::from_poly(q);
            }
            if num.num_terms() > 0 && num.num_terms() <= den.num_terms() {
                if let Some(q) = den.div_exact(&num) {
                    num = MultiPoly::one(nvars);
                    den = q;
                }
            }
        }

        let (dc, dp) = den.primitive_part();
        RatFunc {
            num: num.scale(&dc.recip()),
            den: dp,
        }
    }

    /// Exact equality: `a.num * b.den - b.num * a.den == 0`.
    pub fn rf_eq(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn try_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip_unchecked())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    fn recip_unchecked(&self) -> RatFunc {
        Self::reduced(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Partial derivative in the variable with the given index (quotient rule).
    pub fn partial(&self, var: usize) -> RatFunc {
        let dn = self.num.partial(var);
        if self.den.as_constant().is_some() {
            return Self::reduced(dn, self.den.clone());
        }
        let dd = self.den.partial(var);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduced(num, self.den.mul(&self.den))
    }

    /// Evaluates at a rational point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    fn add_impl(&self, other: &RatFunc, negate: bool) -> RatFunc {
        let rhs_num = if negate {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc {
                num: rhs_num,
                den: other.den.clone(),
            };
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&rhs_num), self.den.clone());
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            return Self::reduced(self.num.add(&rhs_num.mul(&q)), self.den.clone());
        }
        if let Some(q) = other.den.div_exact(&self.den) {
            return Self::reduced(self.num.mul(&q).add(&rhs_num), other.den.clone());
        }
        Self::reduced(
            self.num.mul(&other.den).add(&rhs_num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let (mut an, mut bd) = (self.num.clone(), other.den.clone());
        if bd.as_constant().is_none() {
            if let Some(q) = an.div_exact(&bd) {
                an = q;
                bd = MultiPoly::one(an.nvars());
            }
        }
        let (mut bn, mut ad) = (other.num.clone(), self.den.clone());
        if ad.as_constant().is_none() {
            if let Some(q) = bn.div_exact(&ad) {
                bn = q;
                ad = MultiPoly::one(bn.nvars());
            }
        }
        Self::reduced(an.mul(&bn), ad.mul(&bd))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.rf_eq(other)
    }
}

impl Eq for RatFunc {}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'a RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    /// Panics on an empty iterator; the variable count cannot be inferred.
    fn sum<I: Iterator<Item = RatFunc>>(mut iter: I) -> RatFunc {
        let first = iter.next().expect("sum of an empty RatFunc iterator");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
