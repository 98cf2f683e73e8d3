//! Binomial-ring arithmetic: exact integers, truncated p-adics and
//! integer-valued polynomials in the binomial basis, plus ring
//! homomorphisms, the recursive closure tower and ring-level
//! discrimination.

mod closure;
mod disc;
mod fraction;
mod hom;
mod padic;
mod poly;

pub use closure::{ClosureElem, ClosureTower, Derivation};
pub use disc::ring_discriminate;
pub use fraction::Frac;
pub use hom::RingHom;
pub use padic::{factorial, factorial_valuation, integer_binomial, is_prime, PadicInt};
pub use poly::{finite_differences, BinomialPoly};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Precision discipline for p-adic digit loss.
///
/// `Strict` rejects any operation that would lose p-adic digits (used with
/// `p` greater than the nilpotency class, where every binomial denominator
/// is a p-unit). `Tracked` allows the loss and accounts for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Strict,
    Tracked,
}

/// Base ring of a binomial-basis polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyBase {
    Integers,
    Padic { p: u64, precision: u32 },
}

/// The ring a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// Arbitrary-precision integers.
    Integers,
    /// p-adic integers truncated at `precision` digits.
    Padic { p: u64, precision: u32 },
    /// Integer-valued polynomials over the base, stored in the binomial
    /// basis `C(t,0), C(t,1), ...`; this is the working model of the
    /// binomial closure of `base[t]`.
    Poly { base: PolyBase },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    pub kind: RingKind,
    pub mode: Mode,
}

impl RingContext {
    pub fn integers() -> Self {
        RingContext {
            kind: RingKind::Integers,
            mode: Mode::Strict,
        }
    }

    pub fn padic(p: u64, precision: u32, mode: Mode) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidParameter("precision must be at least 1".into()));
        }
        if mode == Mode::Strict && p <= 3 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} is allowed only in tracked mode"
            )));
        }
        Ok(RingContext {
            kind: RingKind::Padic { p, precision },
            mode,
        })
    }

    pub fn poly_over_integers() -> Self {
        RingContext {
            kind: RingKind::Poly {
                base: PolyBase::Integers,
            },
            mode: Mode::Strict,
        }
    }

    pub fn poly_over_padic(p: u64, precision: u32, mode: Mode) -> Result<Self> {
        // Reuse the p-adic validation.
        let _ = Self::padic(p, precision, mode)?;
        Ok(RingContext {
            kind: RingKind::Poly {
                base: PolyBase::Padic { p, precision },
            },
            mode,
        })
    }

    pub fn strict(&self) -> bool {
        self.mode == Mode::Strict
    }

    /// Base context of a polynomial ring (identity for scalar rings).
    pub fn base_context(&self) -> RingContext {
        match self.kind {
            RingKind::Poly { base: PolyBase::Integers } => RingContext {
                kind: RingKind::Integers,
                mode: self.mode,
            },
            RingKind::Poly {
                base: PolyBase::Padic { p, precision },
            } => RingContext {
                kind: RingKind::Padic { p, precision },
                mode: self.mode,
            },
            _ => *self,
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self.kind {
            RingKind::Padic { p, .. }
            | RingKind::Poly {
                base: PolyBase::Padic { p, .. },
            } => Some(p),
            _ => None,
        }
    }

    pub fn precision(&self) -> Option<u32> {
        match self.kind {
            RingKind::Padic { precision, .. }
            | RingKind::Poly {
                base: PolyBase::Padic { precision, .. },
            } => Some(precision),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind {
            RingKind::Integers => Elem::Int(BigInt::zero()),
            RingKind::Padic { p, precision } => Elem::Padic(PadicInt::zero(p, precision)),
            RingKind::Poly { base } => Elem::Poly(BinomialPoly::zero(base)),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(&BigInt::from(1))
    }

    /// Embed an exact integer. In p-adic contexts the image carries the
    /// full configured precision.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind {
            RingKind::Integers => Elem::Int(n.clone()),
            RingKind::Padic { p, precision } => {
                Elem::Padic(PadicInt::new(p, precision, n).expect("precision >= 1"))
            }
            RingKind::Poly { base } => Elem::Poly(BinomialPoly::constant(base, n)),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// The variable `t` as a ring element; polynomial contexts only.
    pub fn variable(&self) -> Result<Elem> {
        match self.kind {
            RingKind::Poly { base } => Ok(Elem::Poly(BinomialPoly::variable(base))),
            _ => Err(Error::ContextMismatch(
                "the variable t only exists in polynomial rings".into(),
            )),
        }
    }

    fn check_elem(&self, x: &Elem) -> Result<()> {
        let ok = match (self.kind, x) {
            (RingKind::Integers, Elem::Int(_)) => true,
            (RingKind::Padic { p, .. }, Elem::Padic(v)) => v.p() == p,
            (RingKind::Poly { base }, Elem::Poly(f)) => f.base() == base,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "element {x} does not belong to {self:?}"
            )))
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        a.raw_add(b)
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        a.raw_sub(b)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        a.raw_mul(b)
    }

    pub fn neg(&self, a: &Elem) -> Result<Elem> {
        self.check_elem(a)?;
        Ok(a.raw_neg())
    }

    /// The binomial coefficient `C(lambda, n) = lambda(lambda-1)...(lambda-n+1)/n!`.
    ///
    /// Over the integers the result is exact. Over p-adics the division by
    /// `n!` costs `v_p(n!)` digits in tracked mode and is rejected in strict
    /// mode whenever that valuation is positive.
    pub fn binomial(&self, lambda: &Elem, n: u64) -> Result<Elem> {
        self.check_elem(lambda)?;
        binomial_impl(self.mode, lambda, n)
    }
}

pub(crate) fn binomial_impl(mode: Mode, lambda: &Elem, n: u64) -> Result<Elem> {
    match lambda {
        Elem::Int(v) => Ok(Elem::Int(integer_binomial(v, n))),
        Elem::Padic(v) => {
            if n == 0 {
                return Ok(Elem::Padic(PadicInt::new(v.p(), v.precision(), &BigInt::from(1))?));
            }
            let vp = factorial_valuation(v.p(), n);
            if mode == Mode::Strict && vp > 0 {
                return Err(Error::StrictModeViolation(format!(
                    "C(., {n}) divides by {}^{vp}; use tracked mode or a larger prime",
                    v.p()
                )));
            }
            // Numerator lambda(lambda-1)...(lambda-n+1) at the input precision.
            let mut num = PadicInt::new(v.p(), v.precision(), &BigInt::from(1))?;
            for i in 0..n {
                let factor = v.sub(&PadicInt::new(v.p(), v.precision(), &BigInt::from(i))?)?;
                num = num.mul(&factor)?;
            }
            // n! = unit * p^vp: the unit inverts freely, the p-power costs digits.
            let fact = factorial(n);
            let unit = &fact / BigInt::from(padic::pow_u(v.p(), vp));
            let unit = PadicInt::new(v.p(), num.precision(), &unit)?.invert()?;
            num = num.mul(&unit)?;
            Ok(Elem::Padic(num.div_exact_p(vp)?))
        }
        Elem::Poly(f) => Ok(Elem::Poly(f.binomial_of(mode, n)?)),
    }
}

/// Outcome of a semantic equality test.
///
/// `EqualAtPrecision(k)` means the two values agree on every known digit
/// (the common precision is `k`); whether they are genuinely equal is
/// unknown. Operations that demand certified distinctness treat it as
/// "unknown" and escalate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqOutcome {
    Equal,
    EqualAtPrecision(u32),
    Distinct,
}

impl EqOutcome {
    pub fn agrees(&self) -> bool {
        !matches!(self, EqOutcome::Distinct)
    }

    pub fn certified_distinct(&self) -> bool {
        matches!(self, EqOutcome::Distinct)
    }

    pub(crate) fn merge(self, other: EqOutcome) -> EqOutcome {
        match (self, other) {
            (EqOutcome::Distinct, _) | (_, EqOutcome::Distinct) => EqOutcome::Distinct,
            (EqOutcome::EqualAtPrecision(a), EqOutcome::EqualAtPrecision(b)) => {
                EqOutcome::EqualAtPrecision(a.min(b))
            }
            (EqOutcome::EqualAtPrecision(a), _) | (_, EqOutcome::EqualAtPrecision(a)) => {
                EqOutcome::EqualAtPrecision(a)
            }
            _ => EqOutcome::Equal,
        }
    }
}

/// An element of one of the supported exponent rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Padic(PadicInt),
    Poly(BinomialPoly),
}

impl Elem {
    pub fn is_zero_repr(&self) -> bool {
        match self {
            Elem::Int(v) => v.is_zero(),
            Elem::Padic(v) => v.is_zero_repr(),
            Elem::Poly(f) => f.is_zero_repr(),
        }
    }

    fn mismatch(&self, other: &Elem) -> Error {
        Error::ContextMismatch(format!("cannot combine {self} with {other}"))
    }

    pub(crate) fn raw_add(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Ok(Elem::Int(a + b)),
            (Elem::Padic(a), Elem::Padic(b)) => Ok(Elem::Padic(a.add(b)?)),
            (Elem::Poly(a), Elem::Poly(b)) => Ok(Elem::Poly(a.add(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub(crate) fn raw_sub(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Ok(Elem::Int(a - b)),
            (Elem::Padic(a), Elem::Padic(b)) => Ok(Elem::Padic(a.sub(b)?)),
            (Elem::Poly(a), Elem::Poly(b)) => Ok(Elem::Poly(a.sub(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub(crate) fn raw_mul(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Ok(Elem::Int(a * b)),
            (Elem::Padic(a), Elem::Padic(b)) => Ok(Elem::Padic(a.mul(b)?)),
            (Elem::Poly(a), Elem::Poly(b)) => Ok(Elem::Poly(a.mul(b)?)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub(crate) fn raw_neg(&self) -> Elem {
        match self {
            Elem::Int(a) => Elem::Int(-a),
            Elem::Padic(a) => Elem::Padic(a.neg()),
            Elem::Poly(a) => Elem::Poly(a.neg()),
        }
    }

    /// Multiplication by an exact integer (never costs p-adic precision).
    pub(crate) fn mul_int(&self, k: &BigInt) -> Elem {
        match self {
            Elem::Int(a) => Elem::Int(a * k),
            Elem::Padic(a) => Elem::Padic(a.mul_int(k)),
            Elem::Poly(a) => Elem::Poly(a.mul_int(k)),
        }
    }

    /// Three-valued semantic equality.
    pub fn eq3(&self, other: &Elem) -> Result<EqOutcome> {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => Ok(if a == b {
                EqOutcome::Equal
            } else {
                EqOutcome::Distinct
            }),
            (Elem::Padic(a), Elem::Padic(b)) => a.eq3(b),
            (Elem::Poly(a), Elem::Poly(b)) => a.eq3(b),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn as_poly(&self) -> Option<&BinomialPoly> {
        match self {
            Elem::Poly(f) => Some(f),
            _ => None,
        }
    }

    /// JSON encoding with an explicit kind tag.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Elem::Int(v) => serde_json::json!({"kind": "int", "value": v.to_string()}),
            Elem::Padic(v) => serde_json::json!({
                "kind": "padic",
                "p": v.p(),
                "precision": v.precision(),
                "residue": v.residue().to_string(),
            }),
            Elem::Poly(f) => f.to_json(),
        }
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Padic(v) => write!(f, "{v}"),
            Elem::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Elementary ring operation selector for the generic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Generic arithmetic entry point; both operands must live in `ctx`.
pub fn ring_arith(ctx: &RingContext, a: &Elem, b: &Elem, op: RingOp) -> Result<Elem> {
    match op {
        RingOp::Add => ctx.add(a, b),
        RingOp::Sub => ctx.sub(a, b),
        RingOp::Mul => ctx.mul(a, b),
    }
}

/// The binomial coefficient of a ring element, exposed as a free function
/// mirroring `RingContext::binomial`.
pub fn binomial_coeff(ctx: &RingContext, lambda: &Elem, n: u64) -> Result<Elem> {
    ctx.binomial(lambda, n)
}

pub(crate) fn sign_of(v: &BigInt) -> BigInt {
    if v.is_negative() {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_arith_and_binomials() {
        let ctx = RingContext::integers();
        let seven = ring_arith(&ctx, &ctx.from_i64(3), &ctx.from_i64(4), RingOp::Add).unwrap();
        assert_eq!(seven, ctx.from_i64(7));
        // C(5,2) = 10 and C(-1,3) = -1.
        assert_eq!(ctx.binomial(&ctx.from_i64(5), 2).unwrap(), ctx.from_i64(10));
        assert_eq!(ctx.binomial(&ctx.from_i64(-1), 3).unwrap(), ctx.from_i64(-1));
        assert_eq!(ctx.binomial(&ctx.from_i64(9), 0).unwrap(), ctx.one());
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let ctx = RingContext::padic(7, 5, Mode::Strict).unwrap();
        let x = ctx.from_i64(123456);
        let z = ctx.mul(&x, &ctx.zero()).unwrap();
        assert!(z.is_zero_repr());
    }

    #[test]
    fn padic_binomial_precision_drop() {
        // C(12, 5) = 792; v_5(5!) = 1, so precision drops 6 -> 5 in tracked mode.
        let ctx = RingContext::padic(5, 6, Mode::Tracked).unwrap();
        let lam = ctx.from_i64(12);
        let c = ctx.binomial(&lam, 5).unwrap();
        match c {
            Elem::Padic(v) => {
                assert_eq!(v.precision(), 5);
                assert_eq!(v.to_bigint(), BigInt::from(792 % 5i64.pow(5)));
            }
            _ => unreachable!(),
        }
        // Strict mode rejects the digit loss outright.
        let strict = RingContext::padic(5, 6, Mode::Strict).unwrap();
        assert!(matches!(
            strict.binomial(&strict.from_i64(12), 5),
            Err(Error::StrictModeViolation(_))
        ));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let z = RingContext::integers();
        let zp = RingContext::padic(5, 3, Mode::Strict).unwrap();
        assert!(z.add(&z.from_i64(1), &zp.from_i64(1)).is_err());
    }

    #[test]
    fn small_primes_need_tracked_mode() {
        assert!(RingContext::padic(2, 8, Mode::Strict).is_err());
        assert!(RingContext::padic(3, 8, Mode::Strict).is_err());
        assert!(RingContext::padic(2, 8, Mode::Tracked).is_ok());
        assert!(RingContext::padic(3, 8, Mode::Tracked).is_ok());
    }
}
