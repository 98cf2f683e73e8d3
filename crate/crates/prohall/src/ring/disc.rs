use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Elem, EqOutcome, RingHom, RingContext, RingKind, PolyBase};
use crate::error::{Error, Result};

/// Candidate evaluation points for the discriminating family, in a fixed
/// deterministic order: positive integers first, then their negatives,
/// then seeded random p-adic units (random integers over an integer base).
/// Zero is never offered: evaluation at 0 kills the whole polynomial part.
pub(crate) fn candidate_points(
    base: &RingContext,
    budget: usize,
    seed: u64,
) -> Vec<Elem> {
    let small = budget.min(16) / 2;
    let mut out = Vec::with_capacity(budget);
    for k in 1..=small.max(1) {
        out.push(base.from_i64(k as i64));
    }
    for k in 1..=small.max(1) {
        out.push(base.from_i64(-(k as i64)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < budget {
        match base.kind {
            RingKind::Padic { p, precision } => {
                let m = BigUint::from(p).pow(precision);
                let r = rng.gen_biguint_below(&m);
                if (&r % BigUint::from(p)).is_zero() {
                    continue;
                }
                out.push(base.from_bigint(&BigInt::from(r)));
            }
            _ => {
                let r = rng.gen_bigint_range(&BigInt::from(-1_000_000), &BigInt::from(1_000_000));
                if r.is_zero() {
                    continue;
                }
                out.push(base.from_bigint(&r));
            }
        }
    }
    out.truncate(budget);
    out
}

/// Search for an evaluation homomorphism injective on `n_set`.
///
/// Returns `Evaluation(alpha)` with `alpha != 0` whose images of `n_set`
/// are pairwise certified distinct. Candidates are tried in the
/// deterministic order above, so equal seeds give equal certificates.
pub fn ring_discriminate(
    ctx: &RingContext,
    n_set: &[super::BinomialPoly],
    budget: usize,
    seed: u64,
) -> Result<RingHom> {
    if !matches!(ctx.kind, RingKind::Poly { .. }) {
        return Err(Error::ContextMismatch(
            "ring discrimination evaluates polynomials into their base ring".into(),
        ));
    }
    // Precondition: inputs pairwise distinct at the available precision.
    for i in 0..n_set.len() {
        for j in i + 1..n_set.len() {
            if !n_set[i].eq3(&n_set[j])?.certified_distinct() {
                return Err(Error::NotDistinct(format!(
                    "inputs {} and {} agree at the available precision",
                    n_set[i], n_set[j]
                )));
            }
        }
    }
    let base = ctx.base_context();
    let candidates = candidate_points(&base, budget, seed);
    let mut saw_precision_failure = false;
    for alpha in candidates {
        let hom = RingHom::evaluation(*ctx, alpha)?;
        match injective_on(&hom, n_set)? {
            Injectivity::Injective => return Ok(hom),
            Injectivity::Collision => {}
            Injectivity::Unknown => saw_precision_failure = true,
        }
    }
    if saw_precision_failure {
        Err(Error::PrecisionExhausted(format!(
            "a candidate's images could not be certified distinct at the working precision; \
             retry with more digits (base {:?})",
            base.kind
        )))
    } else {
        Err(Error::BudgetExceeded(format!(
            "no injective evaluation among {budget} candidates"
        )))
    }
}

pub(crate) enum Injectivity {
    Injective,
    Collision,
    Unknown,
}

pub(crate) fn injective_on(hom: &RingHom, n_set: &[super::BinomialPoly]) -> Result<Injectivity> {
    let mut images = Vec::with_capacity(n_set.len());
    for f in n_set {
        images.push(hom.apply(&Elem::Poly(f.clone()))?);
    }
    let mut unknown = false;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            match images[i].eq3(&images[j])? {
                EqOutcome::Distinct => {}
                EqOutcome::Equal => return Ok(Injectivity::Collision),
                EqOutcome::EqualAtPrecision(_) => {
                    // Cannot distinguish collision from precision loss;
                    // report it so callers can escalate precision.
                    let exact_zero_diff = n_set[i].sub(&n_set[j])?.is_zero_repr();
                    if exact_zero_diff {
                        return Ok(Injectivity::Collision);
                    }
                    unknown = true;
                }
            }
        }
    }
    if unknown {
        Ok(Injectivity::Unknown)
    } else {
        Ok(Injectivity::Injective)
    }
}

pub(crate) fn poly_base_of(ctx: &RingContext) -> Option<PolyBase> {
    match ctx.kind {
        RingKind::Poly { base } => Some(base),
        _ => None,
    }
}
