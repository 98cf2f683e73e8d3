use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A p-adic integer known modulo `p^prec`.
///
/// The residue is always reduced into `[0, p^prec)`. Precision only moves
/// the way the arithmetic forces it to: it never silently increases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u64,
    prec: u32,
    residue: BigUint,
}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn pow_u(p: u64, k: u32) -> BigUint {
    BigUint::from(p).pow(k)
}

/// p-adic valuation of `n!` by Legendre's formula.
pub fn factorial_valuation(p: u64, n: u64) -> u32 {
    let mut v = 0u64;
    let mut q = p;
    while q <= n {
        v += n / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v as u32
}

impl PadicInt {
    pub fn new(p: u64, prec: u32, value: &BigInt) -> Result<Self> {
        if prec == 0 {
            return Err(Error::InsufficientPrecision(
                "p-adic precision must be at least 1".into(),
            ));
        }
        let m = BigInt::from(pow_u(p, prec));
        let r = value.mod_floor(&m);
        Ok(PadicInt {
            p,
            prec,
            residue: r.to_biguint().expect("mod_floor is non-negative"),
        })
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PadicInt {
            p,
            prec,
            residue: BigUint::zero(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn is_zero_repr(&self) -> bool {
        self.residue.is_zero()
    }

    fn modulus(&self) -> BigUint {
        pow_u(self.p, self.prec)
    }

    /// Drop precision to `k` digits (a no-op if already at or below `k`).
    pub fn reduce_precision(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InsufficientPrecision(
                "cannot reduce a p-adic value to zero digits".into(),
            ));
        }
        if k >= self.prec {
            return Ok(self.clone());
        }
        Ok(PadicInt {
            p: self.p,
            prec: k,
            residue: &self.residue % pow_u(self.p, k),
        })
    }

    fn check_same_p(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ContextMismatch(format!(
                "p-adic primes differ: {} vs {}",
                self.p, other.p
            )));
        }
        Ok(())
    }

    fn bin_op(&self, other: &Self, f: impl Fn(&BigUint, &BigUint, &BigUint) -> BigUint) -> Result<Self> {
        self.check_same_p(other)?;
        let prec = self.prec.min(other.prec);
        let m = pow_u(self.p, prec);
        let a = &self.residue % &m;
        let b = &other.residue % &m;
        Ok(PadicInt {
            p: self.p,
            prec,
            residue: f(&a, &b, &m),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.bin_op(other, |a, b, m| (a + b) % m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.bin_op(other, |a, b, m| ((a + m) - b) % m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.bin_op(other, |a, b, m| (a * b) % m)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        PadicInt {
            p: self.p,
            prec: self.prec,
            residue: (&m - &self.residue) % &m,
        }
    }

    /// Multiply by an exact integer. Exact scalars do not cost precision.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        let m = BigInt::from(self.modulus());
        let r = (BigInt::from(self.residue.clone()) * k).mod_floor(&m);
        PadicInt {
            p: self.p,
            prec: self.prec,
            residue: r.to_biguint().expect("mod_floor is non-negative"),
        }
    }

    /// Multiply by `p^k`; the shifted digits are exact, so precision grows.
    pub fn shift_up(&self, k: u32) -> Self {
        PadicInt {
            p: self.p,
            prec: self.prec + k,
            residue: &self.residue * pow_u(self.p, k),
        }
    }

    /// p-adic valuation of the residue, capped at the known precision.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.prec;
        }
        let p = BigUint::from(self.p);
        let mut v = 0u32;
        let mut r = self.residue.clone();
        while (&r % &p).is_zero() {
            r /= &p;
            v += 1;
        }
        v
    }

    /// Exact division by `p^k`. Costs `k` digits of precision.
    pub fn div_exact_p(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.prec {
            return Err(Error::InsufficientPrecision(format!(
                "dividing by {}^{} leaves no known digits (precision {})",
                self.p, k, self.prec
            )));
        }
        let q = pow_u(self.p, k);
        if !(&self.residue % &q).is_zero() {
            return Err(Error::IntegralityFailure(format!(
                "residue {} is not divisible by {}^{}",
                self.residue, self.p, k
            )));
        }
        Ok(PadicInt {
            p: self.p,
            prec: self.prec - k,
            residue: &self.residue / &q,
        })
    }

    /// Multiplicative inverse; defined exactly when the value is a unit.
    pub fn invert(&self) -> Result<Self> {
        if (&self.residue % BigUint::from(self.p)).is_zero() {
            return Err(Error::IntegralityFailure(format!(
                "{} is not a unit modulo {}",
                self.residue, self.p
            )));
        }
        let m = BigInt::from(self.modulus());
        let inv = mod_inverse(&BigInt::from(self.residue.clone()), &m)
            .expect("unit residues are invertible");
        Ok(PadicInt {
            p: self.p,
            prec: self.prec,
            residue: inv.to_biguint().expect("reduced"),
        })
    }

    /// Three-valued comparison at the common precision.
    pub fn eq3(&self, other: &Self) -> Result<super::EqOutcome> {
        self.check_same_p(other)?;
        let prec = self.prec.min(other.prec);
        if prec == 0 {
            return Ok(super::EqOutcome::EqualAtPrecision(0));
        }
        let m = pow_u(self.p, prec);
        if &self.residue % &m == &other.residue % &m {
            Ok(super::EqOutcome::EqualAtPrecision(prec))
        } else {
            Ok(super::EqOutcome::Distinct)
        }
    }

    /// Signed representative in `(-p^prec/2, p^prec/2]`, handy for display
    /// of small values; full residues are printed as-is elsewhere.
    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.residue.clone())
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

impl std::fmt::Display for PadicInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.p, self.prec)
    }
}

/// Exact integer binomial coefficient `C(n, k)` for arbitrary-sign `n`.
pub fn integer_binomial(n: &BigInt, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "integer binomials are exact");
    q
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub(crate) fn u64_of(n: &BigInt) -> Option<u64> {
    if n.is_negative() {
        None
    } else {
        n.to_u64()
    }
}
