use num_bigint::BigInt;

use super::{BinomialPoly, Elem, RingContext, RingKind};
use crate::error::{Error, Result};

/// How an element of the closure tower was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    Generator(String),
    One,
    Add(Box<Derivation>, Box<Derivation>),
    Sub(Box<Derivation>, Box<Derivation>),
    Mul(Box<Derivation>, Box<Derivation>),
    Binomial(Box<Derivation>, u64),
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Derivation::Generator(name) => write!(f, "{name}"),
            Derivation::One => write!(f, "1"),
            Derivation::Add(a, b) => write!(f, "({a} + {b})"),
            Derivation::Sub(a, b) => write!(f, "({a} - {b})"),
            Derivation::Mul(a, b) => write!(f, "({a} * {b})"),
            Derivation::Binomial(a, n) => write!(f, "C({a},{n})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureElem {
    pub poly: BinomialPoly,
    pub derivation: Derivation,
    /// Level at which the element first appeared.
    pub level: usize,
}

/// The recursive binomial-closure tower `R_0 < R_1 < ... < R_depth`:
/// level `i+1` adjoins `C(alpha, n)` for every element `alpha` new at
/// level `i` and `2 <= n <= n_max`, then fills remaining room (up to the
/// element budget) with ring-operation combinations. Every element is a
/// binomial-basis polynomial and carries its derivation.
#[derive(Debug, Clone)]
pub struct ClosureTower {
    pub generators: Vec<String>,
    /// Cumulative levels: `levels[i]` lists every element of `R_i`.
    pub levels: Vec<Vec<ClosureElem>>,
    pub depth: usize,
    pub n_max: u64,
}

impl ClosureTower {
    pub fn level(&self, i: usize) -> &[ClosureElem] {
        &self.levels[i]
    }

    pub fn last(&self) -> &[ClosureElem] {
        self.levels.last().expect("at least one level")
    }
}

/// Generate the closure tower for the named generators.
///
/// `budget` caps the total number of elements; exceeding it while adjoining
/// the mandatory binomial coefficients is an error, while optional
/// ring-operation combinations simply stop at the cap.
pub fn closure_generate(
    ctx: &RingContext,
    gens: &[(String, Elem)],
    depth: usize,
    n_max: u64,
    budget: usize,
) -> Result<ClosureTower> {
    if gens.is_empty() {
        return Err(Error::InvalidParameter("closure needs at least one generator".into()));
    }
    if !matches!(ctx.kind, RingKind::Poly { .. }) {
        return Err(Error::ContextMismatch(
            "the closure tower is generated inside a polynomial ring".into(),
        ));
    }

    let mut seen: Vec<BinomialPoly> = Vec::new();
    let mut elems: Vec<ClosureElem> = Vec::new();

    let mut push = |elems: &mut Vec<ClosureElem>,
                    seen: &mut Vec<BinomialPoly>,
                    poly: Elem,
                    derivation: Derivation,
                    level: usize|
     -> Option<usize> {
        let poly = match poly {
            Elem::Poly(f) => f,
            _ => unreachable!("polynomial context enforced"),
        };
        if seen.iter().any(|q| q == &poly) {
            return None;
        }
        seen.push(poly.clone());
        elems.push(ClosureElem { poly, derivation, level });
        Some(elems.len() - 1)
    };

    // Level 0: the unit, the generators, and one round of ring-operation
    // combinations -- a finite stand-in for the subring they generate.
    push(&mut elems, &mut seen, ctx.one(), Derivation::One, 0);
    for (name, g) in gens {
        ctx.check_elem_or_err(g)?;
        push(&mut elems, &mut seen, g.clone(), Derivation::Generator(name.clone()), 0);
    }
    combine_round(ctx, &mut elems, &mut seen, 0, budget, &mut push)?;
    if elems.len() > budget {
        return Err(Error::BudgetExceeded(format!(
            "closure level 0 needs {} elements, budget is {budget}",
            elems.len()
        )));
    }
    let mut levels = vec![elems.clone()];
    let mut prev_new: Vec<usize> = (0..elems.len()).collect();

    for lvl in 1..=depth {
        let mut new_ids = Vec::new();
        // Mandatory adjunctions: C(alpha, n) for the previous level's new
        // elements. Running out of budget here is a hard error.
        for &i in &prev_new {
            let alpha = Elem::Poly(elems[i].poly.clone());
            let deriv = elems[i].derivation.clone();
            for n in 2..=n_max {
                let c = ctx.binomial(&alpha, n)?;
                if elems.len() >= budget {
                    return Err(Error::BudgetExceeded(format!(
                        "closure level {lvl} exceeds the element budget {budget}"
                    )));
                }
                if let Some(id) = push(
                    &mut elems,
                    &mut seen,
                    c,
                    Derivation::Binomial(Box::new(deriv.clone()), n),
                    lvl,
                ) {
                    new_ids.push(id);
                }
            }
        }
        // Optional combinations fill whatever room remains.
        let more = combine_round(ctx, &mut elems, &mut seen, lvl, budget, &mut push)?;
        new_ids.extend(more);
        levels.push(elems.clone());
        prev_new = new_ids;
        if prev_new.is_empty() {
            // Saturated: the remaining levels repeat the last one.
            for _ in lvl + 1..=depth {
                levels.push(elems.clone());
            }
            break;
        }
    }

    Ok(ClosureTower {
        generators: gens.iter().map(|(n, _)| n.clone()).collect(),
        levels,
        depth,
        n_max,
    })
}

type PushFn<'a> = dyn FnMut(
        &mut Vec<ClosureElem>,
        &mut Vec<BinomialPoly>,
        Elem,
        Derivation,
        usize,
    ) -> Option<usize>
    + 'a;

fn combine_round(
    ctx: &RingContext,
    elems: &mut Vec<ClosureElem>,
    seen: &mut Vec<BinomialPoly>,
    level: usize,
    budget: usize,
    push: &mut PushFn,
) -> Result<Vec<usize>> {
    let snapshot: Vec<(BinomialPoly, Derivation)> = elems
        .iter()
        .map(|e| (e.poly.clone(), e.derivation.clone()))
        .collect();
    let mut new_ids = Vec::new();
    'outer: for i in 0..snapshot.len() {
        for j in i..snapshot.len() {
            let (a, da) = &snapshot[i];
            let (b, db) = &snapshot[j];
            let a = Elem::Poly(a.clone());
            let b = Elem::Poly(b.clone());
            let candidates = [
                (ctx.add(&a, &b)?, Derivation::Add(Box::new(da.clone()), Box::new(db.clone()))),
                (ctx.sub(&a, &b)?, Derivation::Sub(Box::new(da.clone()), Box::new(db.clone()))),
                (ctx.sub(&b, &a)?, Derivation::Sub(Box::new(db.clone()), Box::new(da.clone()))),
                (ctx.mul(&a, &b)?, Derivation::Mul(Box::new(da.clone()), Box::new(db.clone()))),
            ];
            for (cand, deriv) in candidates {
                if elems.len() >= budget {
                    break 'outer;
                }
                if let Some(id) = push(elems, seen, cand, deriv, level) {
                    new_ids.push(id);
                }
            }
        }
    }
    Ok(new_ids)
}

impl RingContext {
    pub(crate) fn check_elem_or_err(&self, x: &Elem) -> Result<()> {
        // Kept as a named helper so closure generation reads clearly.
        match (self.kind, x) {
            (RingKind::Poly { base }, Elem::Poly(f)) if f.base() == base => Ok(()),
            (RingKind::Integers, Elem::Int(_)) => Ok(()),
            (RingKind::Padic { p, .. }, Elem::Padic(v)) if v.p() == p => Ok(()),
            _ => Err(Error::ContextMismatch(format!("{x} is not an element of {:?}", self.kind))),
        }
    }
}

/// ZZ-coefficient check used by the membership oracle: an element of the
/// closure over the integers must have all-integer binomial coefficients.
pub fn all_integer_coefficients(f: &BinomialPoly) -> bool {
    f.coefficients().iter().all(|c| matches!(c, Elem::Int(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_is_the_generated_subring_sample() {
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let tower = closure_generate(&ctx, &[("t".into(), t.clone())], 0, 3, 256).unwrap();
        assert_eq!(tower.levels.len(), 1);
        // t and t*t show up; no binomial coefficients yet.
        let has_t = tower.last().iter().any(|e| Elem::Poly(e.poly.clone()) == t);
        assert!(has_t);
        let t2 = ctx.mul(&t, &t).unwrap();
        assert!(tower.last().iter().any(|e| Elem::Poly(e.poly.clone()) == t2));
        assert!(!tower
            .last()
            .iter()
            .any(|e| matches!(e.derivation, Derivation::Binomial(_, _))));
    }

    #[test]
    fn level_one_contains_ct2() {
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let tower = closure_generate(&ctx, &[("t".into(), t.clone())], 1, 2, 512).unwrap();
        let c_t_2 = ctx.binomial(&t, 2).unwrap();
        assert!(tower.last().iter().any(|e| Elem::Poly(e.poly.clone()) == c_t_2));
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let r = closure_generate(&ctx, &[("t".into(), t)], 2, 4, 8);
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn levels_are_nested() {
        let ctx = RingContext::poly_over_integers();
        let t = ctx.variable().unwrap();
        let tower = closure_generate(&ctx, &[("t".into(), t)], 2, 2, 2048).unwrap();
        for i in 1..tower.levels.len() {
            let prev = &tower.levels[i - 1];
            let here = &tower.levels[i];
            assert!(prev.len() <= here.len());
            for (a, b) in prev.iter().zip(here.iter()) {
                assert_eq!(a.poly, b.poly);
            }
        }
    }
}
