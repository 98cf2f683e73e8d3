use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::padic::{mod_inverse, pow_u};
use super::{Elem, Mode, PolyBase, RingContext, RingKind};
use crate::error::{Error, Result};

/// A ring element divided by a positive integer.
///
/// This is the working scalar of all internal Lie arithmetic: Baker-
/// Campbell-Hausdorff coefficients introduce integer denominators that are
/// guaranteed to cancel by the time a value is converted back into the
/// exponent ring. Over the integers the fraction is kept reduced; over
/// p-adic bases the unit part of the denominator is absorbed into the
/// numerator so only a power of p can remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frac {
    num: Elem,
    den: BigUint,
}

fn prime_of(e: &Elem) -> Option<u64> {
    match e {
        Elem::Int(_) => None,
        Elem::Padic(v) => Some(v.p()),
        Elem::Poly(f) => match f.base() {
            PolyBase::Integers => None,
            PolyBase::Padic { p, .. } => Some(p),
        },
    }
}

/// Split `den = unit * p^k`, returning `(unit, k)`.
fn split_p_part(den: &BigUint, p: u64) -> (BigUint, u32) {
    let p = BigUint::from(p);
    let mut u = den.clone();
    let mut k = 0u32;
    while !u.is_zero() && (&u % &p).is_zero() {
        u /= &p;
        k += 1;
    }
    (u, k)
}

fn content_gcd(e: &Elem) -> BigUint {
    match e {
        Elem::Int(v) => v.magnitude().clone(),
        Elem::Poly(f) => {
            let mut g = BigUint::zero();
            for c in f.coefficients() {
                if let Elem::Int(v) = c {
                    g = g.gcd(v.magnitude());
                }
            }
            g
        }
        Elem::Padic(_) => BigUint::zero(),
    }
}

/// Divide an element with integer content by an exact positive integer.
fn div_exact_int(e: &Elem, d: &BigUint) -> Result<Elem> {
    let d = BigInt::from(d.clone());
    match e {
        Elem::Int(v) => {
            let (q, r) = v.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::IntegralityFailure(format!("{v} is not divisible by {d}")));
            }
            Ok(Elem::Int(q))
        }
        Elem::Poly(f) => {
            let mut coeffs = Vec::with_capacity(f.coefficients().len());
            for c in f.coefficients() {
                coeffs.push(div_exact_int(c, d.magnitude())?);
            }
            super::BinomialPoly::new(f.base(), coeffs).map(Elem::Poly)
        }
        Elem::Padic(_) => unreachable!("p-adic numerators are handled by valuation"),
    }
}

impl Frac {
    pub fn from_elem(num: Elem) -> Self {
        Frac { num, den: BigUint::one() }
    }

    pub fn num(&self) -> &Elem {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero_repr(&self) -> bool {
        self.num.is_zero_repr()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero_repr() {
            self.den = BigUint::one();
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        match prime_of(&self.num) {
            None => {
                // Integer-content base rings reduce by the gcd.
                let g = content_gcd(&self.num).gcd(&self.den);
                if !g.is_one() && !g.is_zero() {
                    self.num = div_exact_int(&self.num, &g).expect("gcd divides content");
                    self.den /= &g;
                }
            }
            Some(p) => {
                // Absorb the unit part of the denominator via a modular
                // inverse; only a power of p may remain.
                let (unit, k) = split_p_part(&self.den, p);
                if !unit.is_one() {
                    let m = self.padic_modulus(p);
                    let inv = mod_inverse(&BigInt::from(unit), &BigInt::from(m))
                        .expect("unit is coprime to p");
                    self.num = self.num.mul_int(&inv);
                    self.den = pow_u(p, k);
                }
            }
        }
        self
    }

    /// Modulus big enough to invert units against every coefficient.
    fn padic_modulus(&self, p: u64) -> BigUint {
        let max_prec = match &self.num {
            Elem::Padic(v) => v.precision(),
            Elem::Poly(f) => f
                .coefficients()
                .iter()
                .map(|c| match c {
                    Elem::Padic(v) => v.precision(),
                    _ => 0,
                })
                .max()
                .unwrap_or(1),
            Elem::Int(_) => 1,
        };
        pow_u(p, max_prec.max(1))
    }

    pub fn add(&self, other: &Frac) -> Result<Frac> {
        let num = self
            .num
            .mul_int(&BigInt::from(other.den.clone()))
            .raw_add(&other.num.mul_int(&BigInt::from(self.den.clone())))?;
        Ok(Frac { num, den: &self.den * &other.den }.normalized())
    }

    pub fn sub(&self, other: &Frac) -> Result<Frac> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: self.num.raw_neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Frac) -> Result<Frac> {
        Ok(Frac {
            num: self.num.raw_mul(&other.num)?,
            den: &self.den * &other.den,
        }
        .normalized())
    }

    /// Scale by an exact rational; denominators accumulate.
    pub fn scale_rational(&self, q: &BigRational) -> Frac {
        let num = self.num.mul_int(&(q.numer().signum() * q.numer().magnitude()));
        Frac {
            num,
            den: &self.den * q.denom().magnitude(),
        }
        .normalized()
    }

    /// Scale by a ring element.
    pub fn scale_elem(&self, k: &Elem) -> Result<Frac> {
        Ok(Frac {
            num: self.num.raw_mul(k)?,
            den: self.den.clone(),
        }
        .normalized())
    }

    /// Convert back into the exponent ring, asserting the denominator
    /// cancels. In strict mode any surviving p-power is an error; in
    /// tracked mode it is charged as lost precision.
    pub fn into_elem(self, ctx: &RingContext) -> Result<Elem> {
        let f = self.normalized();
        if f.den.is_one() {
            return Ok(f.num);
        }
        match prime_of(&f.num) {
            None => Err(Error::IntegralityFailure(format!(
                "denominator {} does not cancel over {:?}",
                f.den, ctx.kind
            ))),
            Some(p) => {
                let (_, k) = split_p_part(&f.den, p);
                if ctx.mode == Mode::Strict {
                    return Err(Error::StrictModeViolation(format!(
                        "denominator {}^{k} survives; strict mode requires p-unit denominators",
                        p
                    )));
                }
                div_padic_power(&f.num, k)
            }
        }
    }

    /// Exact rational view for integer-based fractions (used by oracles).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.num {
            Elem::Int(v) => Some(BigRational::new(v.clone(), BigInt::from(self.den.clone()))),
            _ => None,
        }
    }

    pub fn from_rational(q: &BigRational) -> Frac {
        Frac {
            num: Elem::Int(q.numer().clone()),
            den: q.denom().magnitude().clone(),
        }
    }
}

fn div_padic_power(e: &Elem, k: u32) -> Result<Elem> {
    match e {
        Elem::Padic(v) => Ok(Elem::Padic(v.div_exact_p(k)?)),
        Elem::Poly(f) => {
            let mut coeffs = Vec::with_capacity(f.coefficients().len());
            for c in f.coefficients() {
                coeffs.push(div_padic_power(c, k)?);
            }
            super::BinomialPoly::new(f.base(), coeffs).map(Elem::Poly)
        }
        Elem::Int(_) => unreachable!("integer numerators have no p-part"),
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// Convenience: the context's notion of `RingKind` for error messages.
pub(crate) fn kind_name(kind: &RingKind) -> &'static str {
    match kind {
        RingKind::Integers => "Z",
        RingKind::Padic { .. } => "Z_p",
        RingKind::Poly { base: PolyBase::Integers } => "Z[t]^bin",
        RingKind::Poly { base: PolyBase::Padic { .. } } => "Z_p[t]^bin",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_fractions_reduce_and_cancel() {
        let ctx = RingContext::integers();
        let half = Frac {
            num: ctx.from_i64(3),
            den: BigUint::from(2u32),
        };
        let sum = half.add(&half).unwrap();
        assert_eq!(sum.den, BigUint::one());
        assert_eq!(sum.num, ctx.from_i64(3));
        assert_eq!(sum.into_elem(&ctx).unwrap(), ctx.from_i64(3));

        let third = Frac {
            num: ctx.from_i64(1),
            den: BigUint::from(3u32),
        };
        assert!(third.into_elem(&ctx).is_err());
    }

    #[test]
    fn padic_unit_denominators_absorb() {
        let ctx = RingContext::padic(5, 6, Mode::Strict).unwrap();
        // 3/2 over Z_5: the denominator 2 is a 5-unit, so this is exact.
        let f = Frac {
            num: ctx.from_i64(3),
            den: BigUint::from(2u32),
        };
        let v = f.into_elem(&ctx).unwrap();
        let doubled = ctx.mul(&v, &ctx.from_i64(2)).unwrap();
        assert_eq!(doubled.eq3(&ctx.from_i64(3)).unwrap(), super::super::EqOutcome::EqualAtPrecision(6));
    }

    #[test]
    fn padic_p_power_denominators_cost_precision_in_tracked_mode() {
        let tracked = RingContext::padic(5, 6, Mode::Tracked).unwrap();
        let f = Frac {
            num: tracked.from_i64(50),
            den: BigUint::from(5u32),
        };
        match f.clone().into_elem(&tracked).unwrap() {
            Elem::Padic(v) => {
                assert_eq!(v.precision(), 5);
                assert_eq!(v.to_bigint(), BigInt::from(10));
            }
            _ => panic!(),
        }
        let strict = RingContext::padic(5, 6, Mode::Strict).unwrap();
        assert!(matches!(
            f.into_elem(&strict),
            Err(Error::StrictModeViolation(_))
        ));
    }

    #[test]
    fn rational_scaling() {
        let ctx = RingContext::integers();
        let one = Frac::from_elem(ctx.one());
        let q = BigRational::new(BigInt::from(-7), BigInt::from(12));
        let scaled = one.scale_rational(&q);
        assert_eq!(scaled.to_rational().unwrap(), q);
    }
}
