//! Centralizer spaces as exact linear systems, the greedy free-module basis
//! construction, and the certificates around it: degree-sum checks,
//! degree-drop certificates for equal-degree families, and the divisibility
//! check available over one-dimensional coefficient algebras.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{in_span, RatMatrix};
use crate::ore::{Degree, OreElem};
use crate::poly::{DeltaSpec, SigmaSpec};
use crate::rat::Rat;
use crate::sample::SplitMix64;

/// The y-degree of the leading x-coefficient forced on any centralizer
/// element of x-degree `n`.
///
/// With a substitution endomorphism of y-degree `s > 1` the leading
/// coefficients of `ab` and `ba` force
/// `beta = alpha (s^n - 1) / (s^m - 1)`, where `m` is the x-degree of `a`
/// and `alpha` the y-degree of its leading coefficient. In the differential
/// case (`sigma = id` with a nonzero derivation) the second-highest
/// coefficients force `m beta = n alpha` instead. Returns `None` when the
/// forced value is not a non-negative integer, meaning no such element
/// exists with a y-dependent leading coefficient.
pub fn leading_ydeg(a: &OreElem, n: usize) -> Result<Option<usize>> {
    let Degree::Finite(m) = a.xdeg() else {
        return Err(Error::InvalidQuery(
            "element must have positive x-degree".into(),
        ));
    };
    if m == 0 {
        return Err(Error::InvalidQuery(
            "element must have positive x-degree".into(),
        ));
    }
    let alpha = a
        .leading()
        .expect("nonzero element has a leading coefficient")
        .deg_y()
        .finite()
        .expect("leading coefficient is nonzero");
    let ctx = a.ctx();
    match (ctx.sigma(), ctx.delta()) {
        (SigmaSpec::Substitution(_), _) if ctx.sigma_y_degree() > 1 => {
            let s = BigInt::from(ctx.sigma_y_degree());
            let num = BigInt::from(alpha) * (s.pow(n as u32) - 1);
            let den = s.pow(m as u32) - 1;
            let rem: BigInt = &num % &den;
            if rem.is_zero() {
                let quotient: BigInt = num / den;
                Ok(quotient.to_usize())
            } else {
                Ok(None)
            }
        }
        (SigmaSpec::Identity, DeltaSpec::DDy)
        | (SigmaSpec::Identity, DeltaSpec::SigmaTwisted { .. }) => {
            // m beta = n alpha
            if (n * alpha).is_multiple_of(m) {
                Ok(Some(n * alpha / m))
            } else {
                Ok(None)
            }
        }
        _ => Err(Error::Unsupported(
            "leading-degree formula needs a substitution of degree > 1 or a differential context"
                .into(),
        )),
    }
}

/// How the per-degree y-degree caps of a query are chosen.
#[derive(Clone, Debug)]
pub enum YdegCaps {
    /// `cap(n) = max over k <= n of the forced leading y-degrees, plus the
    /// default slack `deg_y(a) * n`.
    Auto,
    /// Auto with an explicit slack added instead of the default.
    AutoWithSlack(usize),
    /// `caps[n]` bounds the y-degree of every coefficient of a solution of
    /// x-degree at most `n`; must have length `max_xdeg + 1`.
    Explicit(Vec<usize>),
}

/// A validated centralizer computation for a fixed nucleus element.
///
/// Construction checks that the element has positive x-degree and passes the
/// bounded nucleus certificate at the query bounds; the underlying theory
/// assumes a nucleus element, so non-nucleus inputs are rejected rather than
/// trusted.
#[derive(Debug)]
pub struct CentralizerQuery {
    a: OreElem,
    m: usize,
    max_xdeg: usize,
    caps: Vec<usize>,
}

impl CentralizerQuery {
    pub fn new(a: OreElem, max_xdeg: usize, caps: YdegCaps) -> Result<Self> {
        let Some(m) = a.xdeg().finite() else {
            return Err(Error::InvalidQuery(
                "zero element has no centralizer query".into(),
            ));
        };
        if m == 0 {
            return Err(Error::InvalidQuery(
                "the fixed element must have positive x-degree".into(),
            ));
        }
        let a_ydeg = a.max_ydeg().finite().unwrap_or(0);
        let caps = match caps {
            YdegCaps::Explicit(v) => {
                if v.len() != max_xdeg + 1 {
                    return Err(Error::InvalidQuery(format!(
                        "expected {} caps, got {}",
                        max_xdeg + 1,
                        v.len()
                    )));
                }
                v
            }
            YdegCaps::Auto => Self::auto_caps(&a, max_xdeg, None)?,
            YdegCaps::AutoWithSlack(s) => Self::auto_caps(&a, max_xdeg, Some(s))?,
        };
        let xbound = max_xdeg.max(m);
        let ybound = caps.iter().copied().max().unwrap_or(0).max(a_ydeg);
        match a.nucleus_check(xbound, ybound)? {
            crate::ore::NucleusCheck::Member => {}
            crate::ore::NucleusCheck::Witness(_) => {
                return Err(Error::InvalidQuery(
                    "the fixed element fails the nucleus certificate at the query bounds".into(),
                ));
            }
        }
        Ok(CentralizerQuery {
            a,
            m,
            max_xdeg,
            caps,
        })
    }

    fn auto_caps(a: &OreElem, max_xdeg: usize, slack: Option<usize>) -> Result<Vec<usize>> {
        let a_ydeg = a.max_ydeg().finite().unwrap_or(0);
        let mut best = 0usize;
        let mut caps = Vec::with_capacity(max_xdeg + 1);
        for n in 0..=max_xdeg {
            if let Some(forced) = leading_ydeg(a, n)? {
                best = best.max(forced);
            }
            caps.push(best + slack.unwrap_or(a_ydeg * n));
        }
        Ok(caps)
    }

    pub fn fixed_element(&self) -> &OreElem {
        &self.a
    }

    pub fn max_xdeg(&self) -> usize {
        self.max_xdeg
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    /// A rational basis of the commuting elements of x-degree at most `n`
    /// whose coefficients respect the query's y-degree caps. Solved exactly:
    /// the commutator `a b - b a` is flattened over the unknown coordinates
    /// and the nullspace taken; every returned element is re-verified to
    /// commute with the fixed element.
    pub fn space(&self, n: usize) -> Result<Vec<OreElem>> {
        if n > self.max_xdeg {
            return Err(Error::InvalidQuery(format!(
                "degree {n} above query maximum {}",
                self.max_xdeg
            )));
        }
        let ctx = self.a.ctx();
        let spec = ctx.algebra();
        let cap = self.caps[n];
        let mut unknown_keys = Vec::new();
        let mut unknowns = Vec::new();
        for k in 0..=n {
            for j in 0..=cap {
                for t in 0..spec.dim() {
                    unknown_keys.push((k, j, t));
                    unknowns.push(OreElem::term(ctx, spec.basis_elem(t), j, k));
                }
            }
        }
        let commutators: Vec<OreElem> = unknowns
            .iter()
            .map(|e| &self.a.mul(e) - &e.mul(&self.a))
            .collect();
        let mut row_keys = BTreeMap::new();
        for c in &commutators {
            for (key, _) in c.entries() {
                let next = row_keys.len();
                row_keys.entry(key).or_insert(next);
            }
        }
        // Re-key in sorted order for determinism.
        let sorted: Vec<_> = row_keys.keys().copied().collect();
        let row_of: BTreeMap<_, _> = sorted.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut matrix = RatMatrix::zeros(row_of.len(), unknowns.len());
        for (col, c) in commutators.iter().enumerate() {
            for (key, value) in c.entries() {
                matrix.set(row_of[&key], col, value);
            }
        }
        let kernel = matrix.nullspace_basis();
        let elems: Vec<OreElem> = kernel
            .into_iter()
            .map(|v| {
                let entries: Vec<_> = v
                    .into_iter()
                    .zip(&unknown_keys)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, key)| (*key, c))
                    .collect();
                OreElem::from_entries(ctx, &entries)
            })
            .collect();
        for e in &elems {
            assert!(
                e.commutes_with(&self.a),
                "solver returned a non-commuting element; this is a bug"
            );
        }
        Ok(elems)
    }

    /// The greedy module-basis construction: starting from the identity,
    /// repeatedly adjoin a commuting element of minimal x-degree that lies
    /// outside the span of all products `a^p b_i` of the elements found so
    /// far. Fails loudly if the count ever exceeds `dim(A) * xdeg(a)`, which
    /// the underlying bound rules out for valid queries.
    pub fn module_basis(&self) -> Result<ModuleBasis> {
        let ctx = self.a.ctx();
        let bound = ctx.algebra().dim() * self.m;
        let mut elements = vec![OreElem::one(ctx)];
        let mut degrees = vec![0usize];
        let mut a_powers = vec![OreElem::one(ctx)];
        while a_powers.len() * self.m <= self.max_xdeg {
            let next = self.a.mul(a_powers.last().unwrap());
            a_powers.push(next);
        }
        for n in 0..=self.max_xdeg {
            let candidates = self.space(n)?;
            loop {
                let span = self.span_at_degree(&elements, &degrees, &a_powers, n);
                let mut best: Option<(usize, &OreElem)> = None;
                for cand in &candidates {
                    let deg = cand.xdeg().finite().expect("candidates are nonzero");
                    if best.is_some_and(|(d, _)| d <= deg) {
                        continue;
                    }
                    if !Self::elem_in_span(cand, &span) {
                        best = Some((deg, cand));
                    }
                }
                match best {
                    Some((deg, cand)) => {
                        elements.push(cand.clone());
                        degrees.push(deg);
                        if elements.len() > bound {
                            return Err(Error::RankBoundExceeded {
                                found: elements.len(),
                                bound,
                            });
                        }
                    }
                    None => break,
                }
            }
        }
        Ok(ModuleBasis { elements, degrees })
    }

    /// All products `a^p b_i` of x-degree at most `n`.
    fn span_at_degree(
        &self,
        elements: &[OreElem],
        degrees: &[usize],
        a_powers: &[OreElem],
        n: usize,
    ) -> Vec<OreElem> {
        let mut out = Vec::new();
        for (b, bdeg) in elements.iter().zip(degrees) {
            let mut p = 0;
            while bdeg + p * self.m <= n && p < a_powers.len() {
                out.push(a_powers[p].mul(b));
                p += 1;
            }
        }
        out
    }

    fn elem_in_span(candidate: &OreElem, span: &[OreElem]) -> bool {
        let mut all: Vec<&OreElem> = span.iter().collect();
        all.push(candidate);
        let (keys, vectors) = flatten_common(&all);
        let _ = keys;
        let (target, rest) = vectors.split_last().expect("candidate present");
        in_span(target, rest).is_some()
    }
}

/// A free-module basis of a centralizer: elements and their x-degrees, the
/// identity first.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub elements: Vec<OreElem>,
    pub degrees: Vec<usize>,
}

impl ModuleBasis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }
}

/// A flattened coordinate key: `(xdeg, ydeg, axis)`.
type CoordKey = (usize, usize, usize);

/// Flattens elements onto a common `(xdeg, ydeg, axis)` coordinate space.
fn flatten_common(elems: &[&OreElem]) -> (Vec<CoordKey>, Vec<Vec<Rat>>) {
    let mut keys = BTreeMap::new();
    let per_elem: Vec<_> = elems.iter().map(|e| e.entries()).collect();
    for entries in &per_elem {
        for (key, _) in entries {
            let next = keys.len();
            keys.entry(*key).or_insert(next);
        }
    }
    let sorted: Vec<_> = keys.keys().copied().collect();
    let index: BTreeMap<_, _> = sorted.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let vectors = per_elem
        .into_iter()
        .map(|entries| {
            let mut v = vec![Rat::zero(); sorted.len()];
            for (key, value) in entries {
                v[index[&key]] = value;
            }
            v
        })
        .collect();
    (sorted, vectors)
}

/// A failed degree-sum trial: the two sides of the expected equality.
#[derive(Clone, Debug)]
pub struct DegreeSumFailure {
    pub trial: usize,
    pub lhs: Degree,
    pub rhs: Degree,
}

/// Checks, on `trials` seeded random tuples of polynomials in `a`, that the
/// degree of `sum_i phi_i b_i` equals `max_i (xdeg(phi_i) + xdeg(b_i))`
/// exactly. Returns the first failing trial if any.
pub fn check_degree_sum(
    basis: &ModuleBasis,
    a: &OreElem,
    trials: usize,
    seed: u64,
) -> std::result::Result<(), DegreeSumFailure> {
    let ctx = a.ctx();
    let mut rng = SplitMix64::new(seed);
    let max_pow = 2usize;
    let mut a_powers = vec![OreElem::one(ctx)];
    for _ in 0..max_pow {
        a_powers.push(a.mul(a_powers.last().unwrap()));
    }
    for trial in 0..trials {
        let mut sum = OreElem::zero(ctx);
        let mut rhs = Degree::NegInf;
        for b in &basis.elements {
            // phi = sum_j r_j a^j, sometimes zero.
            let phi = if rng.below(4) == 0 {
                OreElem::zero(ctx)
            } else {
                let deg = rng.below(max_pow as u64 + 1) as usize;
                let mut acc = OreElem::zero(ctx);
                for (j, pow) in a_powers.iter().enumerate().take(deg + 1) {
                    let r = if j == deg {
                        rng.nonzero_rat()
                    } else {
                        rng.small_rat()
                    };
                    acc = &acc + &pow.scale(&r);
                }
                acc
            };
            sum = &sum + &phi.mul(b);
            let term_deg = phi.xdeg() + b.xdeg();
            rhs = rhs.max(term_deg);
        }
        if sum.xdeg() != rhs {
            return Err(DegreeSumFailure {
                trial,
                lhs: sum.xdeg(),
                rhs,
            });
        }
    }
    Ok(())
}

/// Outcome of a degree-drop certificate for a family of equal-degree
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DCertificate {
    /// Rational scalars, not all zero, whose combination has strictly lower
    /// x-degree than the inputs. Verified before being returned.
    Dependent(Vec<Rat>),
    /// The leading x-coefficients are linearly independent over the
    /// rationals. When `refutes_condition` is set the family has more than
    /// `ell` members, so it witnesses a failure of condition D(ell).
    Independent { refutes_condition: bool },
}

/// Searches for scalars lowering the common x-degree of `elems`, by exact
/// linear dependence of their leading x-coefficients. All inputs must be
/// nonzero with equal x-degree.
pub fn check_d_condition(elems: &[OreElem], ell: usize) -> Result<DCertificate> {
    if elems.is_empty() {
        return Err(Error::InvalidQuery("empty family".into()));
    }
    let Degree::Finite(common) = elems[0].xdeg() else {
        return Err(Error::InvalidQuery("family members must be nonzero".into()));
    };
    if elems.iter().any(|e| e.xdeg() != Degree::Finite(common)) {
        return Err(Error::InvalidQuery(
            "family members must share one x-degree".into(),
        ));
    }
    // Flatten the leading coefficients over (ydeg, axis) keys.
    let mut keys = BTreeMap::new();
    let leads: Vec<Vec<((usize, usize), Rat)>> = elems
        .iter()
        .map(|e| {
            let lead = e.leading().expect("nonzero");
            let mut entries = Vec::new();
            for (j, c) in lead.coeffs().iter().enumerate() {
                for (t, v) in c.coords().iter().enumerate() {
                    if !v.is_zero() {
                        let next = keys.len();
                        keys.entry((j, t)).or_insert(next);
                        entries.push(((j, t), v.clone()));
                    }
                }
            }
            entries
        })
        .collect();
    let sorted: Vec<_> = keys.keys().copied().collect();
    let index: BTreeMap<_, _> = sorted.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut matrix = RatMatrix::zeros(sorted.len(), elems.len());
    for (col, entries) in leads.iter().enumerate() {
        for (key, value) in entries {
            matrix.set(index[key], col, value.clone());
        }
    }
    let kernel = matrix.nullspace_basis();
    match kernel.into_iter().next() {
        Some(alphas) => {
            let mut combo = OreElem::zero(elems[0].ctx());
            for (alpha, e) in alphas.iter().zip(elems) {
                combo = &combo + &e.scale(alpha);
            }
            assert!(
                combo.xdeg() < Degree::Finite(common),
                "leading-coefficient dependence must lower the degree"
            );
            Ok(DCertificate::Dependent(alphas))
        }
        None => Ok(DCertificate::Independent {
            refutes_condition: elems.len() > ell,
        }),
    }
}

/// Divisibility check available when the coefficient algebra is
/// one-dimensional: the basis size must divide `m`, the degrees must be
/// pairwise distinct modulo `m`, and their residues must be closed under
/// addition modulo `m`.
pub fn check_rank_divides(basis: &ModuleBasis, m: usize) -> Result<bool> {
    let Some(first) = basis.elements.first() else {
        return Err(Error::InvalidQuery("empty basis".into()));
    };
    if first.ctx().algebra().dim() != 1 {
        return Err(Error::Unsupported(
            "divisibility check applies to one-dimensional coefficient algebras".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidQuery("modulus must be positive".into()));
    }
    let residues: Vec<usize> = basis.degrees.iter().map(|d| d % m).collect();
    let mut sorted = residues.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct = sorted.len() == residues.len();
    let divides = m.is_multiple_of(basis.rank());
    let closed = residues.iter().all(|&g| {
        residues
            .iter()
            .all(|&h| sorted.binary_search(&((g + h) % m)).is_ok())
    });
    Ok(divides && distinct && closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::ore::OreContext;
    use crate::poly::CoeffPoly;

    fn x_squared(ctx: &std::sync::Arc<OreContext>) -> OreElem {
        OreElem::x(ctx).pow_left(2)
    }

    #[test]
    fn forced_leading_degree_differential() {
        let ctx = OreContext::diff_oct();
        // a = x^2: alpha = 0 so every degree forces 0.
        let a = x_squared(&ctx);
        for n in 0..5 {
            assert_eq!(leading_ydeg(&a, n).unwrap(), Some(0));
        }
        // m = 2, alpha = 2, n = 3 forces beta = 3.
        let y2x2 = OreElem::term(&ctx, ctx.algebra().unit(), 2, 2);
        assert_eq!(leading_ydeg(&y2x2, 3).unwrap(), Some(3));
        // Non-integral: m = 2, alpha = 1, n = 1 forces beta = 1/2.
        let yx2 = OreElem::term(&ctx, ctx.algebra().unit(), 1, 2);
        assert_eq!(leading_ydeg(&yx2, 1).unwrap(), None);
    }

    #[test]
    fn forced_leading_degree_substitution() {
        let o = AlgebraSpec::octonions();
        let ctx =
            OreContext::subst_oct(CoeffPoly::monomial(o.unit(), 2), CoeffPoly::one(&o)).unwrap();
        // m = 1, alpha = 1, s = 2: beta(n) = 2^n - 1.
        let a = OreElem::term(&ctx, ctx.algebra().unit(), 1, 1);
        assert_eq!(leading_ydeg(&a, 3).unwrap(), Some(7));
        assert_eq!(leading_ydeg(&a, 0).unwrap(), Some(0));
    }

    #[test]
    fn solver_output_satisfies_the_leading_coefficient_equation() {
        // For b commuting with a, equating the top x-coefficients of ab and
        // ba gives a_m sigma^m(b_n) = b_n sigma^n(a_m); the forced-degree
        // formula is derived from it. Check the equation itself on solver
        // output in a substitution context.
        let o = AlgebraSpec::octonions();
        let ctx =
            OreContext::subst_oct(CoeffPoly::monomial(o.unit(), 2), CoeffPoly::one(&o)).unwrap();
        let spec = ctx.algebra();
        let a = OreElem::term(&ctx, spec.unit(), 1, 1);
        let m = a.xdeg().finite().unwrap();
        let a_lead = a.leading().unwrap().clone();
        let q = CentralizerQuery::new(a.clone(), 2, YdegCaps::Auto).unwrap();
        let mut checked = 0;
        for b in q.space(2).unwrap() {
            let n = b.xdeg().finite().unwrap();
            let b_lead = b.leading().unwrap().clone();
            let mut sigma_m_b = b_lead.clone();
            for _ in 0..m {
                sigma_m_b = ctx.apply_sigma(&sigma_m_b);
            }
            let mut sigma_n_a = a_lead.clone();
            for _ in 0..n {
                sigma_n_a = ctx.apply_sigma(&sigma_n_a);
            }
            assert_eq!(
                a_lead.mul(&sigma_m_b, spec),
                b_lead.mul(&sigma_n_a, spec),
                "leading-coefficient equation fails for {b}"
            );
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn leading_degree_rejects_constants() {
        let ctx = OreContext::diff_rat();
        let c = OreElem::one(&ctx);
        assert!(leading_ydeg(&c, 2).is_err());
    }

    #[test]
    fn centralizer_space_of_x_squared_rational() {
        let ctx = OreContext::diff_rat();
        let q = CentralizerQuery::new(x_squared(&ctx), 1, YdegCaps::Auto).unwrap();
        let space = q.space(1).unwrap();
        // {1, x}
        assert_eq!(space.len(), 2);
        let one = OreElem::one(&ctx);
        let x = OreElem::x(&ctx);
        let (_, vectors) = flatten_common(&[&space[0], &space[1], &one, &x]);
        // Mutual span: both {1, x} in solver span and vice versa.
        assert!(in_span(&vectors[2], &vectors[..2]).is_some());
        assert!(in_span(&vectors[3], &vectors[..2]).is_some());
    }

    #[test]
    fn centralizer_space_of_x_squared_octonion() {
        let ctx = OreContext::diff_oct();
        let q = CentralizerQuery::new(x_squared(&ctx), 1, YdegCaps::Auto).unwrap();
        let space = q.space(1).unwrap();
        assert_eq!(space.len(), 16);
        // Expected span: e_t and e_t x for all t.
        let spec = ctx.algebra();
        let mut expected = Vec::new();
        for t in 0..8 {
            expected.push(OreElem::constant(&ctx, spec.basis_elem(t)));
            expected.push(OreElem::term(&ctx, spec.basis_elem(t), 0, 1));
        }
        let mut all: Vec<&OreElem> = space.iter().collect();
        all.extend(expected.iter());
        let (_, vectors) = flatten_common(&all);
        let (solver, known) = vectors.split_at(16);
        for v in known {
            assert!(in_span(v, solver).is_some());
        }
        for v in solver {
            assert!(in_span(v, known).is_some());
        }
    }

    #[test]
    fn scalars_always_commute() {
        let ctx = OreContext::diff_rat();
        let q = CentralizerQuery::new(x_squared(&ctx), 0, YdegCaps::Auto).unwrap();
        let space = q.space(0).unwrap();
        assert_eq!(space.len(), 1);
        assert_eq!(space[0].xdeg(), Degree::Finite(0));
    }

    #[test]
    fn cap_overrides_do_not_change_the_answer() {
        // Widening the y-degree search space finds nothing new for x^2:
        // commuting coefficients are forced y-free in differential contexts.
        let ctx = OreContext::diff_oct();
        let q = CentralizerQuery::new(x_squared(&ctx), 1, YdegCaps::AutoWithSlack(2)).unwrap();
        assert_eq!(q.caps(), &[2, 2]);
        assert_eq!(q.space(1).unwrap().len(), 16);
        let q = CentralizerQuery::new(x_squared(&ctx), 1, YdegCaps::Explicit(vec![1, 1])).unwrap();
        assert_eq!(q.space(1).unwrap().len(), 16);
        // Explicit caps must match the degree range.
        assert!(CentralizerQuery::new(x_squared(&ctx), 2, YdegCaps::Explicit(vec![0])).is_err());
    }

    #[test]
    fn module_basis_rational_x_squared() {
        let ctx = OreContext::diff_rat();
        let q = CentralizerQuery::new(x_squared(&ctx), 5, YdegCaps::Auto).unwrap();
        let basis = q.module_basis().unwrap();
        assert_eq!(basis.rank(), 2);
        assert_eq!(basis.degrees, vec![0, 1]);
        assert_eq!(basis.elements[0], OreElem::one(&ctx));
        assert!(check_rank_divides(&basis, 2).unwrap());
    }

    #[test]
    fn module_basis_rational_x() {
        let ctx = OreContext::diff_rat();
        let q = CentralizerQuery::new(OreElem::x(&ctx), 4, YdegCaps::Auto).unwrap();
        let basis = q.module_basis().unwrap();
        assert_eq!(basis.rank(), 1);
        assert!(check_rank_divides(&basis, 1).unwrap());
    }

    #[test]
    fn module_basis_octonion_x_squared() {
        let ctx = OreContext::diff_oct();
        let q = CentralizerQuery::new(x_squared(&ctx), 3, YdegCaps::Auto).unwrap();
        let basis = q.module_basis().unwrap();
        assert_eq!(basis.rank(), 16, "rank must hit dim * m = 8 * 2");
        for (e, d) in basis.elements.iter().zip(&basis.degrees) {
            assert!(e.commutes_with(q.fixed_element()));
            assert!(*d <= 1, "all basis elements appear by degree 1");
        }
        // At most dim(A) elements share any residue class mod m.
        for residue in 0..2usize {
            let count = basis.degrees.iter().filter(|d| *d % 2 == residue).count();
            assert!(count <= 8);
        }
        // Each member is outside the span of its predecessors.
        for i in 1..basis.rank() {
            let prefix = ModuleBasis {
                elements: basis.elements[..i].to_vec(),
                degrees: basis.degrees[..i].to_vec(),
            };
            let span = q.span_at_degree(
                &prefix.elements,
                &prefix.degrees,
                &[OreElem::one(&ctx), x_squared(&ctx)],
                basis.degrees[i],
            );
            assert!(!CentralizerQuery::elem_in_span(&basis.elements[i], &span));
        }
    }

    #[test]
    fn non_nucleus_query_is_rejected() {
        let ctx = OreContext::diff_oct();
        let e1x = OreElem::term(&ctx, ctx.algebra().basis_elem(1), 0, 1);
        assert!(CentralizerQuery::new(e1x, 2, YdegCaps::Auto).is_err());
    }

    #[test]
    fn degree_sum_holds_on_module_bases() {
        let ctx = OreContext::diff_rat();
        let a = x_squared(&ctx);
        let q = CentralizerQuery::new(a.clone(), 5, YdegCaps::Auto).unwrap();
        let basis = q.module_basis().unwrap();
        assert!(check_degree_sum(&basis, &a, 50, 7).is_ok());
    }

    #[test]
    fn degree_sum_detects_a_bad_basis() {
        // {1, x^2} over the centralizer of x^2: x^2 = a * 1, so the sum
        // phi_1 b_1 + phi_2 b_2 with phi_1 = a, phi_2 = -1 collapses.
        let ctx = OreContext::diff_rat();
        let a = x_squared(&ctx);
        let bad = ModuleBasis {
            elements: vec![OreElem::one(&ctx), x_squared(&ctx)],
            degrees: vec![0, 2],
        };
        assert!(check_degree_sum(&bad, &a, 200, 11).is_err());
    }

    #[test]
    fn d_condition_certificates() {
        let ctx = OreContext::diff_oct();
        let spec = ctx.algebra();
        // Nine equal-degree centralizer elements of x^2 with leading
        // coefficients in the eight-dimensional constant space.
        let mut elems: Vec<OreElem> = (0..8)
            .map(|t| OreElem::term(&ctx, spec.basis_elem(t), 0, 2))
            .collect();
        let extra = &elems[0] + &elems[1];
        elems.push(extra);
        match check_d_condition(&elems, 8).unwrap() {
            DCertificate::Dependent(alphas) => {
                assert_eq!(alphas.len(), 9);
                assert!(alphas.iter().any(|a| !a.is_zero()));
            }
            other => panic!("expected dependence, got {other:?}"),
        }
        // {1} alone is independent.
        let one = vec![OreElem::one(&ctx)];
        assert_eq!(
            check_d_condition(&one, 1).unwrap(),
            DCertificate::Independent {
                refutes_condition: false
            }
        );
        // {b, 2b} is dependent with scalars proportional to (2, -1).
        let b = OreElem::term(&ctx, spec.basis_elem(3), 1, 1);
        let family = vec![b.clone(), b.scale(&Rat::from_int(2))];
        match check_d_condition(&family, 1).unwrap() {
            DCertificate::Dependent(alphas) => {
                let combo = &family[0].scale(&alphas[0]) + &family[1].scale(&alphas[1]);
                assert!(combo.is_zero());
            }
            other => panic!("expected dependence, got {other:?}"),
        }
        // Unequal degrees are rejected.
        let bad = vec![OreElem::one(&ctx), OreElem::x(&ctx)];
        assert!(check_d_condition(&bad, 1).is_err());
    }

    #[test]
    fn rank_divisibility_checks() {
        let ctx = OreContext::diff_rat();
        let mk = |degrees: Vec<usize>| ModuleBasis {
            elements: degrees
                .iter()
                .map(|&d| OreElem::x(&ctx).pow_left(d))
                .collect(),
            degrees,
        };
        assert!(check_rank_divides(&mk(vec![0, 1]), 2).unwrap());
        assert!(check_rank_divides(&mk(vec![0]), 7).unwrap());
        // Residues {0, 1} are not closed under addition mod 3.
        assert!(!check_rank_divides(&mk(vec![0, 1]), 3).unwrap());
        // Outside the one-dimensional setting the check is refused.
        let oct = OreContext::diff_oct();
        let bad = ModuleBasis {
            elements: vec![OreElem::one(&oct)],
            degrees: vec![0],
        };
        assert!(check_rank_divides(&bad, 2).is_err());
    }
}
