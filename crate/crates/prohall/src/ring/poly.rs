use num_bigint::BigInt;
use num_traits::Zero;

use super::padic::{integer_binomial, PadicInt};
use super::{Elem, EqOutcome, Mode, PolyBase};
use crate::error::{Error, Result};

/// An integer-valued polynomial stored in the binomial basis: the
/// coefficient vector `c_0..c_d` denotes `sum_k c_k * C(t, k)`.
///
/// The span of the binomial basis over the base ring is a binomial ring
/// containing `base[t]`, so it contains the recursive binomial closure,
/// and unlike the recursive presentation it has a computable normal form:
/// the coefficients themselves, recovered by finite differences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialPoly {
    base: PolyBase,
    coeffs: Vec<Elem>,
}

fn base_zero(base: PolyBase) -> Elem {
    match base {
        PolyBase::Integers => Elem::Int(BigInt::zero()),
        PolyBase::Padic { p, precision } => Elem::Padic(PadicInt::zero(p, precision)),
    }
}

fn base_from_bigint(base: PolyBase, n: &BigInt) -> Elem {
    match base {
        PolyBase::Integers => Elem::Int(n.clone()),
        PolyBase::Padic { p, precision } => {
            Elem::Padic(PadicInt::new(p, precision, n).expect("precision >= 1"))
        }
    }
}

impl BinomialPoly {
    pub fn new(base: PolyBase, coeffs: Vec<Elem>) -> Result<Self> {
        for c in &coeffs {
            let ok = matches!(
                (base, c),
                (PolyBase::Integers, Elem::Int(_)) | (PolyBase::Padic { .. }, Elem::Padic(_))
            );
            if !ok {
                return Err(Error::ContextMismatch(format!(
                    "coefficient {c} does not belong to the base ring"
                )));
            }
            if let (PolyBase::Padic { p, .. }, Elem::Padic(v)) = (base, c) {
                if v.p() != p {
                    return Err(Error::ContextMismatch(format!(
                        "coefficient prime {} differs from base prime {p}",
                        v.p()
                    )));
                }
            }
        }
        let mut f = BinomialPoly { base, coeffs };
        f.trim();
        Ok(f)
    }

    pub fn zero(base: PolyBase) -> Self {
        BinomialPoly { base, coeffs: vec![] }
    }

    pub fn constant(base: PolyBase, n: &BigInt) -> Self {
        let mut f = BinomialPoly {
            base,
            coeffs: vec![base_from_bigint(base, n)],
        };
        f.trim();
        f
    }

    /// The variable `t = C(t, 1)`.
    pub fn variable(base: PolyBase) -> Self {
        BinomialPoly {
            base,
            coeffs: vec![base_zero(base), base_from_bigint(base, &BigInt::from(1))],
        }
    }

    pub fn base(&self) -> PolyBase {
        self.base
    }

    /// Binomial-basis coefficients, constant term first.
    pub fn coefficients(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero_repr(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if last.is_zero_repr() {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::ContextMismatch(
                "polynomials over different base rings".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = base_zero(self.base);
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = other.coeffs.get(i).unwrap_or(&z);
            coeffs.push(a.raw_add(b)?);
        }
        let mut f = BinomialPoly { base: self.base, coeffs };
        f.trim();
        Ok(f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BinomialPoly {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c.raw_neg()).collect(),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let mut f = BinomialPoly {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c.mul_int(k)).collect(),
        };
        f.trim();
        f
    }

    /// Evaluate at an exact non-negative integer point. `C(x, k)` is an
    /// exact integer here, so the result costs no precision.
    pub fn eval_at_integer(&self, x: u64) -> Elem {
        let mut acc = base_zero(self.base);
        let xi = BigInt::from(x);
        for (k, c) in self.coeffs.iter().enumerate() {
            let b = integer_binomial(&xi, k as u64);
            acc = acc.raw_add(&c.mul_int(&b)).expect("same base ring");
        }
        acc
    }

    /// Evaluate at an arbitrary base-ring point via `C(alpha, k)`.
    pub fn eval(&self, mode: Mode, alpha: &Elem) -> Result<Elem> {
        let mut acc = base_zero(self.base);
        for (k, c) in self.coeffs.iter().enumerate() {
            let b = super::binomial_impl(mode, alpha, k as u64)?;
            acc = acc.raw_add(&c.raw_mul(&b)?)?;
        }
        Ok(acc)
    }

    /// Product in the binomial basis, computed by evaluating at
    /// `0..deg(f)+deg(g)` and applying finite differences. Both steps are
    /// division-free, so the product is exact in every mode.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        if self.is_zero_repr() || other.is_zero_repr() {
            return Ok(BinomialPoly::zero(self.base));
        }
        let d = self.degree() + other.degree();
        let mut values = Vec::with_capacity(d + 1);
        for x in 0..=d as u64 {
            values.push(self.eval_at_integer(x).raw_mul(&other.eval_at_integer(x))?);
        }
        let coeffs = finite_differences(&values)?;
        BinomialPoly::new(self.base, coeffs)
    }

    /// `C(f(t), n)` in the binomial basis, via finite differences of
    /// `x -> C(f(x), n)`.
    pub fn binomial_of(&self, mode: Mode, n: u64) -> Result<Self> {
        if n == 0 {
            return Ok(BinomialPoly::constant(self.base, &BigInt::from(1)));
        }
        if self.is_zero_repr() {
            // C(0, n) = 0 for n >= 1.
            return Ok(BinomialPoly::zero(self.base));
        }
        let d = self.degree() * n as usize;
        let mut values = Vec::with_capacity(d + 1);
        for x in 0..=d as u64 {
            let v = self.eval_at_integer(x);
            values.push(super::binomial_impl(mode, &v, n)?);
        }
        let coeffs = finite_differences(&values)?;
        BinomialPoly::new(self.base, coeffs)
    }

    pub fn eq3(&self, other: &Self) -> Result<EqOutcome> {
        self.check_base(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = base_zero(self.base);
        let mut acc = EqOutcome::Equal;
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&z);
            let b = other.coeffs.get(i).unwrap_or(&z);
            acc = acc.merge(a.eq3(b)?);
            if acc == EqOutcome::Distinct {
                return Ok(acc);
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "poly",
            "base": match self.base {
                PolyBase::Integers => serde_json::json!({"kind": "int"}),
                PolyBase::Padic { p, precision } =>
                    serde_json::json!({"kind": "padic", "p": p, "precision": precision}),
            },
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for BinomialPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_repr() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (_, Elem::Int(v)) => write!(f, "{v}*C(t,{k})")?,
                (_, other) => write!(f, "({other})*C(t,{k})")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Forward differences at 0: given `f(0), f(1), ..., f(d)`, returns
/// `Δ^0 f(0), ..., Δ^d f(0)`. This inverts evaluation at `0..d` in the
/// binomial basis (Newton's forward-difference formula), using only
/// subtraction.
pub fn finite_differences(values: &[Elem]) -> Result<Vec<Elem>> {
    let mut row: Vec<Elem> = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        let mut next = Vec::with_capacity(row.len() - 1);
        for i in 0..row.len() - 1 {
            next.push(row[i + 1].raw_sub(&row[i])?);
        }
        row = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn zt() -> BinomialPoly {
        BinomialPoly::variable(PolyBase::Integers)
    }

    fn int_coeffs(f: &BinomialPoly) -> Vec<i64> {
        f.coefficients()
            .iter()
            .map(|c| match c {
                Elem::Int(v) => {
                    use num_traits::ToPrimitive;
                    v.to_i64().unwrap()
                }
                _ => panic!("integer coefficients expected"),
            })
            .collect()
    }

    #[test]
    fn differences_of_squares() {
        // x^2 sampled at 0..3 gives (0,1,4,9); differences (0,1,2,0),
        // i.e. x^2 = C(x,1) + 2 C(x,2).
        let ctx = RingContext::integers();
        let values: Vec<Elem> = [0i64, 1, 4, 9].iter().map(|&v| ctx.from_i64(v)).collect();
        let d = finite_differences(&values).unwrap();
        assert_eq!(d, vec![ctx.from_i64(0), ctx.from_i64(1), ctx.from_i64(2), ctx.from_i64(0)]);
    }

    #[test]
    fn differences_of_constants() {
        let ctx = RingContext::integers();
        let values: Vec<Elem> = std::iter::repeat(ctx.from_i64(5)).take(4).collect();
        let d = finite_differences(&values).unwrap();
        assert_eq!(d, vec![ctx.from_i64(5), ctx.from_i64(0), ctx.from_i64(0), ctx.from_i64(0)]);
    }

    #[test]
    fn differences_recover_basis_vectors() {
        // Values of C(t,3) at 0..4 difference to the unit vector at k = 3.
        let f = BinomialPoly::new(
            PolyBase::Integers,
            vec![
                Elem::Int(BigInt::from(0)),
                Elem::Int(BigInt::from(0)),
                Elem::Int(BigInt::from(0)),
                Elem::Int(BigInt::from(1)),
            ],
        )
        .unwrap();
        let values: Vec<Elem> = (0..=4).map(|x| f.eval_at_integer(x)).collect();
        let d = finite_differences(&values).unwrap();
        assert_eq!(int_coeffs(&BinomialPoly::new(PolyBase::Integers, d).unwrap()), vec![0, 0, 0, 1]);
    }

    #[test]
    fn product_t_times_t() {
        // C(t,1)*C(t,1) = C(t,1) + 2 C(t,2).
        let t = zt();
        let f = t.mul(&t).unwrap();
        assert_eq!(int_coeffs(&f), vec![0, 1, 2]);
    }

    #[test]
    fn product_t_times_ct2() {
        // C(t,1)*C(t,2) = 2 C(t,2) + 3 C(t,3): values 0,0,2,9 difference to 0,0,2,3.
        let t = zt();
        let c2 = t.binomial_of(Mode::Strict, 2).unwrap();
        assert_eq!(int_coeffs(&c2), vec![0, 0, 1]);
        let f = t.mul(&c2).unwrap();
        assert_eq!(int_coeffs(&f), vec![0, 0, 2, 3]);
    }

    #[test]
    fn unit_law() {
        let t = zt();
        let one = BinomialPoly::constant(PolyBase::Integers, &BigInt::from(1));
        assert_eq!(t.mul(&one).unwrap(), t);
    }

    #[test]
    fn binomial_of_doubled_variable() {
        // C(2t, 2) = C(t,1) + 4 C(t,2): values at 0,1,2 are 0,1,6.
        let two_t = zt().mul_int(&BigInt::from(2));
        let f = two_t.binomial_of(Mode::Strict, 2).unwrap();
        assert_eq!(int_coeffs(&f), vec![0, 1, 4]);
    }

    #[test]
    fn binomial_of_order_zero_is_one() {
        let f = zt().mul_int(&BigInt::from(17));
        assert_eq!(int_coeffs(&f.binomial_of(Mode::Strict, 0).unwrap()), vec![1]);
    }

    #[test]
    fn padic_poly_product_is_division_free_in_strict_mode() {
        let ctx = RingContext::poly_over_padic(5, 4, Mode::Strict).unwrap();
        let t = ctx.variable().unwrap();
        let f = ctx.mul(&t, &t).unwrap();
        match f {
            Elem::Poly(f) => {
                // Same shape as over the integers, at full precision.
                assert_eq!(f.coefficients().len(), 3);
                for c in f.coefficients() {
                    match c {
                        Elem::Padic(v) => assert_eq!(v.precision(), 4),
                        _ => panic!(),
                    }
                }
            }
            _ => panic!(),
        }
    }

    #[test]
    fn evaluation_is_multiplicative_on_samples() {
        // Independent check of the product route: evaluate at points not
        // used by the interpolation.
        let t = zt();
        let f = t.binomial_of(Mode::Strict, 3).unwrap();
        let g = t.mul(&t).unwrap();
        let fg = f.mul(&g).unwrap();
        for x in 7..12 {
            let lhs = fg.eval_at_integer(x);
            let rhs = f.eval_at_integer(x).raw_mul(&g.eval_at_integer(x)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
