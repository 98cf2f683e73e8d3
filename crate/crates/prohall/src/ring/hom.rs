use super::{Elem, RingContext};
use crate::error::{Error, Result};

/// A homomorphism between exponent rings.
///
/// `Evaluation(alpha)` realizes the universal property of the binomial
/// closure: a polynomial `sum c_k C(t,k)` maps to `sum c_k C(alpha,k)`,
/// which is the unique extension of `t -> alpha` to the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingHom {
    Identity {
        ctx: RingContext,
    },
    /// `t -> alpha`, from a polynomial ring onto its base ring.
    Evaluation {
        source: RingContext,
        alpha: Elem,
    },
    /// Precision truncation `Z_p (mod p^N) -> Z_p (mod p^k)`.
    PrecisionReduce {
        ctx: RingContext,
        digits: u32,
    },
}

impl RingHom {
    pub fn evaluation(source: RingContext, alpha: Elem) -> Result<Self> {
        let base = source.base_context();
        if base == source {
            return Err(Error::ContextMismatch(
                "evaluation homomorphisms start from a polynomial ring".into(),
            ));
        }
        base.check_elem(&alpha)?;
        Ok(RingHom::Evaluation { source, alpha })
    }

    pub fn source(&self) -> RingContext {
        match self {
            RingHom::Identity { ctx } => *ctx,
            RingHom::Evaluation { source, .. } => *source,
            RingHom::PrecisionReduce { ctx, .. } => *ctx,
        }
    }

    pub fn target(&self) -> RingContext {
        match self {
            RingHom::Identity { ctx } => *ctx,
            RingHom::Evaluation { source, .. } => source.base_context(),
            RingHom::PrecisionReduce { ctx, .. } => *ctx,
        }
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        match self {
            RingHom::Identity { ctx } => {
                ctx.check_elem(x)?;
                Ok(x.clone())
            }
            RingHom::Evaluation { source, alpha } => {
                source.check_elem(x)?;
                match x {
                    Elem::Poly(f) => f.eval(source.mode, alpha),
                    _ => unreachable!("polynomial source enforced above"),
                }
            }
            RingHom::PrecisionReduce { ctx, digits } => {
                ctx.check_elem(x)?;
                reduce_elem(x, *digits)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RingHom::Identity { .. } => "id".to_string(),
            RingHom::Evaluation { alpha, .. } => format!("t -> {alpha}"),
            RingHom::PrecisionReduce { digits, .. } => format!("reduce to {digits} digits"),
        }
    }
}

fn reduce_elem(x: &Elem, digits: u32) -> Result<Elem> {
    match x {
        Elem::Int(_) => Ok(x.clone()),
        Elem::Padic(v) => Ok(Elem::Padic(v.reduce_precision(digits)?)),
        Elem::Poly(f) => {
            let mut coeffs = Vec::with_capacity(f.coefficients().len());
            for c in f.coefficients() {
                coeffs.push(reduce_elem(c, digits)?);
            }
            super::BinomialPoly::new(f.base(), coeffs).map(Elem::Poly)
        }
    }
}

/// Apply a ring homomorphism to an element of its source ring.
pub fn apply_hom(h: &RingHom, x: &Elem) -> Result<Elem> {
    h.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BinomialPoly, Mode, PolyBase};
    use num_bigint::BigInt;

    #[test]
    fn evaluation_on_binomial_basis() {
        // (C(t,1) + 4 C(t,2)) at t = 3 gives 3 + 4*3 = 15 = C(6,2),
        // matching C(2t,2) evaluated the other way.
        let ctx = RingContext::poly_over_integers();
        let f = BinomialPoly::new(
            PolyBase::Integers,
            vec![
                Elem::Int(BigInt::from(0)),
                Elem::Int(BigInt::from(1)),
                Elem::Int(BigInt::from(4)),
            ],
        )
        .unwrap();
        let h = RingHom::evaluation(ctx, Elem::Int(BigInt::from(3))).unwrap();
        assert_eq!(h.apply(&Elem::Poly(f)).unwrap(), Elem::Int(BigInt::from(15)));
    }

    #[test]
    fn evaluation_at_zero_keeps_the_constant_term() {
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let f = ctx.add(&ctx.mul(&t, &t).unwrap(), &ctx.from_i64(9)).unwrap();
        let h = RingHom::evaluation(ctx, Elem::Int(BigInt::from(0))).unwrap();
        assert_eq!(h.apply(&f).unwrap(), Elem::Int(BigInt::from(9)));
    }

    #[test]
    fn identity_is_identity() {
        let ctx = RingContext::integers();
        let h = RingHom::Identity { ctx };
        let x = ctx.from_i64(-42);
        assert_eq!(h.apply(&x).unwrap(), x);
    }

    #[test]
    fn hom_respects_ring_structure() {
        // phi(f*g) = phi(f)*phi(g) and phi(f+g) = phi(f)+phi(g), checked
        // pointwise for the evaluation family.
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let f = ctx.binomial(&t, 2).unwrap();
        let g = ctx.add(&t, &ctx.one()).unwrap();
        for a in -4i64..=4 {
            let h = RingHom::evaluation(ctx, Elem::Int(BigInt::from(a))).unwrap();
            let lhs = h.apply(&ctx.mul(&f, &g).unwrap()).unwrap();
            let rhs = h
                .apply(&f)
                .unwrap()
                .raw_mul(&h.apply(&g).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            let lhs = h.apply(&ctx.add(&f, &g).unwrap()).unwrap();
            let rhs = h.apply(&f).unwrap().raw_add(&h.apply(&g).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_commutes_with_binomials() {
        // phi(C(f, n)) = C(phi(f), n) -- the defining extension property.
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let f = ctx.add(&ctx.mul(&t, &t).unwrap(), &t).unwrap();
        for a in -3i64..=3 {
            let h = RingHom::evaluation(ctx, Elem::Int(BigInt::from(a))).unwrap();
            for n in 0..=4u64 {
                let lhs = h.apply(&ctx.binomial(&f, n).unwrap()).unwrap();
                let base = RingContext::integers();
                let rhs = base.binomial(&h.apply(&f).unwrap(), n).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn precision_reduce() {
        let ctx = RingContext::padic(7, 6, Mode::Strict).unwrap();
        let h = RingHom::PrecisionReduce { ctx, digits: 2 };
        match h.apply(&ctx.from_i64(123456)).unwrap() {
            Elem::Padic(v) => {
                assert_eq!(v.precision(), 2);
                assert_eq!(v.to_bigint(), BigInt::from(123456 % 49));
            }
            _ => panic!(),
        }
    }
}
