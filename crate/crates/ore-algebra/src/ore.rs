//! Elements of the Ore extension `S = R[x; sigma, delta]` over `R = A[y]`:
//! twisted multiplication from the defining relation
//! `x r = sigma(r) x + delta(r)`, the x-degree valuation, and bounded
//! nucleus certificates.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::algebra::{AlgElem, AlgebraSpec};
use crate::error::{Error, Result};
use crate::poly::{verify_sigma_derivation, CoeffPoly, DeltaSpec, SigmaSpec};
use crate::rat::Rat;

/// An x-degree or y-degree value: an integer or minus infinity (only for
/// the zero element).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(n) => Some(n),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// The data defining `S = R[x; sigma, delta]`. Construction verifies the
/// mode constraints and samples the twisted Leibniz identity, so a context
/// that exists is usable.
#[derive(Debug)]
pub struct OreContext {
    algebra: AlgebraSpec,
    sigma: SigmaSpec,
    delta: DeltaSpec,
    /// Lazily grown tables of `sigma(y)^i` and `delta(y^k)`; these dominate
    /// the cost of products in substitution contexts when recomputed.
    cache: Mutex<CtxCache>,
}

#[derive(Debug, Default)]
struct CtxCache {
    sigma_pows: Vec<CoeffPoly>,
    delta_pows: Vec<CoeffPoly>,
}

impl PartialEq for OreContext {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.sigma == other.sigma && self.delta == other.delta
    }
}

impl Eq for OreContext {}

const VERIFY_SAMPLES: usize = 24;
const VERIFY_SEED: u64 = 0x0_5eed;

impl OreContext {
    pub fn new(algebra: AlgebraSpec, sigma: SigmaSpec, delta: DeltaSpec) -> Result<Arc<Self>> {
        if matches!(delta, DeltaSpec::DDy) && !sigma.is_identity() {
            return Err(Error::DerivativeNeedsIdentity);
        }
        if verify_sigma_derivation(&delta, &sigma, &algebra, VERIFY_SAMPLES, VERIFY_SEED).is_err() {
            return Err(Error::NotASigmaDerivation);
        }
        Ok(Arc::new(OreContext {
            algebra,
            sigma,
            delta,
            cache: Mutex::new(CtxCache::default()),
        }))
    }

    /// The differential operator ring over `algebra[y]`: identity
    /// endomorphism, ordinary derivative.
    pub fn differential(algebra: AlgebraSpec) -> Arc<Self> {
        OreContext::new(algebra, SigmaSpec::Identity, DeltaSpec::DDy).expect("d/dy is a derivation")
    }

    /// Rational coefficients, `sigma = id`, `delta = d/dy`.
    pub fn diff_rat() -> Arc<Self> {
        OreContext::differential(AlgebraSpec::rationals())
    }

    /// Octonion coefficients, `sigma = id`, `delta = d/dy`.
    pub fn diff_oct() -> Arc<Self> {
        OreContext::differential(AlgebraSpec::octonions())
    }

    /// Octonion coefficients with a substitution endomorphism of y-degree
    /// greater than 1 and the matching twisted derivation.
    pub fn subst_oct(sigma_y: CoeffPoly, delta_y: CoeffPoly) -> Result<Arc<Self>> {
        let algebra = AlgebraSpec::octonions();
        if sigma_y.deg_y() < Degree::Finite(2) {
            return Err(Error::Unsupported(
                "this preset requires deg_y(sigma(y)) > 1".into(),
            ));
        }
        let sigma = SigmaSpec::substitution(sigma_y, &algebra)?;
        OreContext::new(
            algebra,
            sigma,
            DeltaSpec::SigmaTwisted {
                delta_of_y: delta_y,
            },
        )
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn sigma(&self) -> &SigmaSpec {
        &self.sigma
    }

    pub fn delta(&self) -> &DeltaSpec {
        &self.delta
    }

    /// `deg_y(sigma(y))`, the `s` of the leading-degree formulas.
    pub fn sigma_y_degree(&self) -> usize {
        self.sigma.y_degree()
    }

    pub fn is_differential(&self) -> bool {
        self.sigma.is_identity() && matches!(self.delta, DeltaSpec::DDy)
    }

    pub fn apply_sigma(&self, p: &CoeffPoly) -> CoeffPoly {
        match &self.sigma {
            SigmaSpec::Identity => p.clone(),
            SigmaSpec::Substitution(_) => {
                let Some(deg) = p.deg_y().finite() else {
                    return CoeffPoly::zero();
                };
                let mut cache = self.cache.lock().expect("cache lock");
                self.grow_sigma_pows(&mut cache, deg);
                let mut acc = CoeffPoly::zero();
                for (i, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&cache.sigma_pows[i].scale_elem(c, &self.algebra));
                    }
                }
                acc
            }
        }
    }

    pub fn apply_delta(&self, p: &CoeffPoly) -> CoeffPoly {
        match &self.delta {
            DeltaSpec::Zero => CoeffPoly::zero(),
            DeltaSpec::DDy => p.formal_derivative(&self.algebra),
            DeltaSpec::SigmaTwisted { .. } => {
                let Some(deg) = p.deg_y().finite() else {
                    return CoeffPoly::zero();
                };
                let mut cache = self.cache.lock().expect("cache lock");
                self.grow_delta_pows(&mut cache, deg);
                let mut acc = CoeffPoly::zero();
                for (k, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&cache.delta_pows[k].scale_elem(c, &self.algebra));
                    }
                }
                acc
            }
        }
    }

    fn sigma_y(&self) -> CoeffPoly {
        match &self.sigma {
            SigmaSpec::Identity => CoeffPoly::y(&self.algebra),
            SigmaSpec::Substitution(s) => s.clone(),
        }
    }

    fn grow_sigma_pows(&self, cache: &mut CtxCache, up_to: usize) {
        if cache.sigma_pows.is_empty() {
            cache.sigma_pows.push(CoeffPoly::one(&self.algebra));
        }
        let sigma_y = self.sigma_y();
        while cache.sigma_pows.len() <= up_to {
            let next = cache
                .sigma_pows
                .last()
                .unwrap()
                .mul(&sigma_y, &self.algebra);
            cache.sigma_pows.push(next);
        }
    }

    fn grow_delta_pows(&self, cache: &mut CtxCache, up_to: usize) {
        let DeltaSpec::SigmaTwisted { delta_of_y } = &self.delta else {
            unreachable!("only the twisted mode uses the table");
        };
        if cache.delta_pows.is_empty() {
            cache.delta_pows.push(CoeffPoly::zero());
        }
        let sigma_y = self.sigma_y();
        while cache.delta_pows.len() <= up_to {
            let k = cache.delta_pows.len();
            // delta(y^k) = sigma(y) delta(y^(k-1)) + delta(y) y^(k-1)
            let mut next = sigma_y.mul(cache.delta_pows.last().unwrap(), &self.algebra);
            let y_pow = CoeffPoly::monomial(self.algebra.unit(), k - 1);
            next = next.add(&delta_of_y.mul(&y_pow, &self.algebra));
            cache.delta_pows.push(next);
        }
    }

    /// The coefficient maps of the monomial product rule: `pi(m, i, r)` is
    /// the sum over all interleavings of `i` copies of sigma and `m - i`
    /// copies of delta applied to `r`, so that
    /// `x^m r = sum_i pi(m, i, r) x^i`. Panics if `i > m`.
    pub fn pi_map(&self, m: usize, i: usize, r: &CoeffPoly) -> CoeffPoly {
        assert!(i <= m, "index out of range: pi({m}, {i}, _)");
        self.pi_triangle(m, r)[m][i].clone()
    }

    /// All rows `0..=max_m` of the pi recurrence
    /// `pi(m, i) = sigma(pi(m-1, i-1)) + delta(pi(m-1, i))`.
    fn pi_triangle(&self, max_m: usize, r: &CoeffPoly) -> Vec<Vec<CoeffPoly>> {
        let mut rows: Vec<Vec<CoeffPoly>> = Vec::with_capacity(max_m + 1);
        rows.push(vec![r.clone()]);
        for m in 1..=max_m {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let from_sigma = if i >= 1 {
                    Some(self.apply_sigma(&prev[i - 1]))
                } else {
                    None
                };
                let from_delta = if i < m {
                    Some(self.apply_delta(&prev[i]))
                } else {
                    None
                };
                row.push(match (from_sigma, from_delta) {
                    (Some(a), Some(b)) => a.add(&b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                });
            }
            rows.push(row);
        }
        rows
    }
}

/// An element of the Ore extension, stored as its x-coefficient sequence
/// (dense, ascending powers, trailing zeros trimmed). The representation is
/// unique, so structural equality is element equality.
#[derive(Clone, Debug)]
pub struct OreElem {
    ctx: Arc<OreContext>,
    coeffs: Vec<CoeffPoly>,
}

impl OreElem {
    pub fn zero(ctx: &Arc<OreContext>) -> OreElem {
        OreElem {
            ctx: Arc::clone(ctx),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<OreContext>) -> OreElem {
        OreElem::from_coeffs(ctx, vec![CoeffPoly::one(ctx.algebra())])
    }

    pub fn x(ctx: &Arc<OreContext>) -> OreElem {
        OreElem::from_coeffs(ctx, vec![CoeffPoly::zero(), CoeffPoly::one(ctx.algebra())])
    }

    pub fn y(ctx: &Arc<OreContext>) -> OreElem {
        OreElem::from_coeffs(ctx, vec![CoeffPoly::y(ctx.algebra())])
    }

    pub fn constant(ctx: &Arc<OreContext>, elem: AlgElem) -> OreElem {
        OreElem::from_coeffs(ctx, vec![CoeffPoly::constant(elem)])
    }

    pub fn scalar(ctx: &Arc<OreContext>, r: Rat) -> OreElem {
        OreElem::constant(ctx, ctx.algebra().scalar(r))
    }

    /// `elem * y^ydeg * x^xdeg`.
    pub fn term(ctx: &Arc<OreContext>, elem: AlgElem, ydeg: usize, xdeg: usize) -> OreElem {
        let mut coeffs = vec![CoeffPoly::zero(); xdeg];
        coeffs.push(CoeffPoly::monomial(elem, ydeg));
        OreElem::from_coeffs(ctx, coeffs)
    }

    pub fn from_coeffs(ctx: &Arc<OreContext>, mut coeffs: Vec<CoeffPoly>) -> OreElem {
        let dim = ctx.algebra().dim();
        assert!(
            coeffs
                .iter()
                .all(|p| p.coeffs().iter().all(|c| c.dim() == dim)),
            "dimension mismatch"
        );
        while coeffs.last().is_some_and(CoeffPoly::is_zero) {
            coeffs.pop();
        }
        OreElem {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &Arc<OreContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[CoeffPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CoeffPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(CoeffPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The x-degree pseudo-valuation: minus infinity exactly on zero.
    pub fn xdeg(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Leading x-coefficient, when nonzero.
    pub fn leading(&self) -> Option<&CoeffPoly> {
        self.coeffs.last()
    }

    /// Largest y-degree over all x-coefficients.
    pub fn max_ydeg(&self) -> Degree {
        self.coeffs
            .iter()
            .map(CoeffPoly::deg_y)
            .max()
            .unwrap_or(Degree::NegInf)
    }

    fn assert_same_ctx(&self, other: &OreElem) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx,
            "context mismatch"
        );
    }

    /// The twisted product, by bilinear extension of
    /// `(a x^m)(b x^n) = sum_i (a * pi(m, i, b)) x^(i+n)`.
    pub fn mul(&self, other: &OreElem) -> OreElem {
        self.assert_same_ctx(other);
        if self.is_zero() || other.is_zero() {
            return OreElem::zero(&self.ctx);
        }
        let spec = self.ctx.algebra();
        let max_m = self.coeffs.len() - 1;
        let mut out = vec![CoeffPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (n, vn) in other.coeffs.iter().enumerate() {
            if vn.is_zero() {
                continue;
            }
            let triangle = self.ctx.pi_triangle(max_m, vn);
            for (m, um) in self.coeffs.iter().enumerate() {
                if um.is_zero() {
                    continue;
                }
                for (i, pi) in triangle[m].iter().enumerate() {
                    if pi.is_zero() {
                        continue;
                    }
                    out[i + n].mac(um, pi, spec);
                }
            }
        }
        for p in &mut out {
            p.trim();
        }
        OreElem::from_coeffs(&self.ctx, out)
    }

    /// Left-normed power: `b^k = b * (b^(k-1))`, `b^0 = 1`.
    pub fn pow_left(&self, k: usize) -> OreElem {
        let mut acc = OreElem::one(&self.ctx);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> OreElem {
        if r.is_zero() {
            return OreElem::zero(&self.ctx);
        }
        let spec = self.ctx.algebra();
        OreElem {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|p| p.scale(r, spec)).collect(),
        }
    }

    /// `self * x^k` as a coefficient shift (exact: x acts from the right).
    fn shifted(&self, k: usize) -> OreElem {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![CoeffPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        OreElem {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn commutes_with(&self, other: &OreElem) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// `(uv)w - u(vw)`.
    pub fn associator(u: &OreElem, v: &OreElem, w: &OreElem) -> OreElem {
        &u.mul(v).mul(w) - &u.mul(&v.mul(w))
    }

    /// Bounded nucleus certificate: scans the associator with `self` in each
    /// of the three slots against all pairs of monomials `e_t y^j x^k` with
    /// `j <= ydeg_bound`, `k <= xdeg_bound`. Returns the first violating
    /// pair in scan order when membership fails. Requires the bounds to
    /// dominate this element's own degrees.
    ///
    /// The scan exploits two exact consequences of the product formula (they
    /// hold for any coefficients, associative or not): multiplying by
    /// `w x^e` on the right shifts `(self * w)` up by `e`, and an x-free
    /// monomial multiplies from the left coefficient-wise. Everything else
    /// is genuine twisted multiplication.
    pub fn nucleus_check(&self, xdeg_bound: usize, ydeg_bound: usize) -> Result<NucleusCheck> {
        if let Degree::Finite(d) = self.xdeg() {
            if d > xdeg_bound {
                return Err(Error::InvalidQuery(format!(
                    "xdeg bound {xdeg_bound} below element degree {d}"
                )));
            }
        }
        if let Degree::Finite(d) = self.max_ydeg() {
            if d > ydeg_bound {
                return Err(Error::InvalidQuery(format!(
                    "ydeg bound {ydeg_bound} below element y-degree {d}"
                )));
            }
        }
        let scan = NucleusScan::new(self, xdeg_bound, ydeg_bound);
        Ok(scan.run())
    }

    /// All nonzero entries as `((xdeg, ydeg, axis), coefficient)` in a fixed
    /// deterministic order. The shared coordinate flattening used by the
    /// linear-algebra layers.
    pub(crate) fn entries(&self) -> Vec<((usize, usize, usize), Rat)> {
        let mut out = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            for (j, e) in p.coeffs().iter().enumerate() {
                for (t, c) in e.coords().iter().enumerate() {
                    if !c.is_zero() {
                        out.push(((k, j, t), c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Rebuilds an element from flattened entries.
    pub(crate) fn from_entries(
        ctx: &Arc<OreContext>,
        entries: &[((usize, usize, usize), Rat)],
    ) -> OreElem {
        let spec = ctx.algebra();
        let max_x = entries.iter().map(|((k, _, _), _)| *k).max();
        let Some(max_x) = max_x else {
            return OreElem::zero(ctx);
        };
        let mut coeffs = vec![vec![]; max_x + 1];
        for ((k, j, t), c) in entries {
            let col: &mut Vec<(usize, usize, Rat)> = &mut coeffs[*k];
            col.push((*j, *t, c.clone()));
        }
        let polys = coeffs
            .into_iter()
            .map(|col| {
                let max_y = col.iter().map(|(j, _, _)| *j).max();
                let Some(max_y) = max_y else {
                    return CoeffPoly::zero();
                };
                let mut elems = vec![spec.zero(); max_y + 1];
                for (j, t, c) in col {
                    let mut coords = elems[j].coords().to_vec();
                    coords[t] = &coords[t] + &c;
                    elems[j] = spec.elem_from_coords(coords).expect("dim fixed");
                }
                CoeffPoly::from_coeffs(elems)
            })
            .collect();
        OreElem::from_coeffs(ctx, polys)
    }
}

/// Precomputed product tables for one bounded nucleus scan.
///
/// Everything here reduces the three associator slots per monomial pair to
/// rational-linear assembly of genuinely computed twisted products, using
/// only identities that hold for the product formula regardless of the
/// coefficient algebra:
/// `v * (w x^e) = (v * w) x^e` for x-free `w`, `x^e * v` built by iterating
/// `x * _`, and bilinearity over the rationals.
struct NucleusScan<'a> {
    u: &'a OreElem,
    yb: usize,
    /// Scan-order monomials `(k, j, t)` and their elements.
    monos: Vec<(usize, usize, usize)>,
    elems: Vec<OreElem>,
    /// Largest y-degree and x-degree occurring in any pair product `b c`;
    /// in substitution contexts the endomorphism grows y-degrees, so the
    /// table range is measured rather than assumed.
    max_d: usize,
    max_e: usize,
    /// `u * (e_t y^d)` for `d <= max_d`, indexed `t * (max_d + 1) + d`.
    u_mono: Vec<OreElem>,
    /// `(e_t y^d x^e) * u`, indexed `(t * (max_d + 1) + d) * (max_e + 1) + e`.
    mono_x_u: Vec<OreElem>,
    /// `u * mono_c` per scan monomial.
    u_times: Vec<OreElem>,
    /// `x^k * (u * mono_c)` for `k <= xb`.
    xuc: Vec<Vec<OreElem>>,
    /// `x^k * (mono_c * u)` for `k <= xb`.
    xcu: Vec<Vec<OreElem>>,
}

impl<'a> NucleusScan<'a> {
    fn new(u: &'a OreElem, xb: usize, yb: usize) -> Self {
        let ctx = u.ctx();
        let spec = ctx.algebra();
        let dim = spec.dim();
        let mut monos = Vec::new();
        let mut elems = Vec::new();
        for k in 0..=xb {
            for j in 0..=yb {
                for t in 0..dim {
                    monos.push((k, j, t));
                    elems.push(OreElem::term(ctx, spec.basis_elem(t), j, k));
                }
            }
        }
        // Measure the coordinate ranges of the pair products. One basis
        // axis suffices: y-degrees of pi images do not depend on the axis.
        let mut max_d = yb;
        let mut max_e = xb;
        for k in 0..=xb {
            for j in 0..=yb {
                let b = OreElem::term(ctx, spec.basis_elem(0), j, k);
                for k2 in 0..=xb {
                    for j2 in 0..=yb {
                        let c = OreElem::term(ctx, spec.basis_elem(0), j2, k2);
                        let bc = b.mul(&c);
                        if let Degree::Finite(d) = bc.max_ydeg() {
                            max_d = max_d.max(d);
                        }
                        if let Degree::Finite(e) = bc.xdeg() {
                            max_e = max_e.max(e);
                        }
                    }
                }
            }
        }
        let mut u_mono = Vec::with_capacity(dim * (max_d + 1));
        for t in 0..dim {
            for d in 0..=max_d {
                u_mono.push(u.mul(&OreElem::term(ctx, spec.basis_elem(t), d, 0)));
            }
        }
        let x = OreElem::x(ctx);
        let mut xu = Vec::with_capacity(max_e + 1);
        xu.push(u.clone());
        for _ in 0..max_e {
            xu.push(x.mul(xu.last().unwrap()));
        }
        let mut mono_x_u = Vec::with_capacity(dim * (max_d + 1) * (max_e + 1));
        for t in 0..dim {
            for d in 0..=max_d {
                let mono = CoeffPoly::monomial(spec.basis_elem(t), d);
                for xu_e in &xu {
                    mono_x_u.push(xfree_left_mul(&mono, xu_e));
                }
            }
        }
        let u_times: Vec<OreElem> = monos
            .iter()
            .map(|&(k, j, t)| u_mono[t * (max_d + 1) + j].shifted(k))
            .collect();
        let times_u: Vec<OreElem> = monos
            .iter()
            .map(|&(k, j, t)| mono_x_u[(t * (max_d + 1) + j) * (max_e + 1) + k].clone())
            .collect();
        let mut xuc = vec![u_times.clone()];
        let mut xcu = vec![times_u];
        for k in 1..=xb {
            xuc.push(xuc[k - 1].iter().map(|v| x.mul(v)).collect());
            xcu.push(xcu[k - 1].iter().map(|v| x.mul(v)).collect());
        }
        NucleusScan {
            u,
            yb,
            monos,
            elems,
            max_d,
            max_e,
            u_mono,
            mono_x_u,
            u_times,
            xuc,
            xcu,
        }
    }

    fn run(&self) -> NucleusCheck {
        let ctx = self.u.ctx();
        let spec = ctx.algebra();
        let dim = spec.dim();
        let row_idx = |t: usize, j: usize| t * (self.yb + 1) + j;
        for (bi, &(k, j, t)) in self.monos.iter().enumerate() {
            let b_poly = CoeffPoly::monomial(spec.basis_elem(t), j);
            // (u b) * (e_t' y^j') and (b u) * (e_t' y^j'), per right factor.
            let mut ub_row = Vec::with_capacity(dim * (self.yb + 1));
            let mut bu_row = Vec::with_capacity(dim * (self.yb + 1));
            for t2 in 0..dim {
                for j2 in 0..=self.yb {
                    let m = OreElem::term(ctx, spec.basis_elem(t2), j2, 0);
                    ub_row.push(self.u_times[bi].mul(&m));
                    bu_row.push(self.times_u_of(bi).mul(&m));
                }
            }
            for (ci, &(k2, j2, t2)) in self.monos.iter().enumerate() {
                let bc = self.elems[bi].mul(&self.elems[ci]);
                // (u, b, c): (u b) c = u (b c)
                let rhs = self.u_left_comb(&bc);
                if !eq_shifted(&ub_row[row_idx(t2, j2)], k2, &rhs) {
                    return self.witness(0, bi, ci);
                }
                // (b, u, c): (b u) c = b (u c)
                let rhs = xfree_left_mul(&b_poly, &self.xuc[k][ci]);
                if !eq_shifted(&bu_row[row_idx(t2, j2)], k2, &rhs) {
                    return self.witness(1, bi, ci);
                }
                // (b, c, u): (b c) u = b (c u)
                let lhs = self.mono_x_u_comb(&bc);
                let rhs = xfree_left_mul(&b_poly, &self.xcu[k][ci]);
                if lhs != rhs {
                    return self.witness(2, bi, ci);
                }
            }
        }
        NucleusCheck::Member
    }

    fn times_u_of(&self, ci: usize) -> &OreElem {
        &self.xcu[0][ci]
    }

    fn witness(&self, slot: usize, bi: usize, ci: usize) -> NucleusCheck {
        NucleusCheck::Witness(NucleusWitness {
            slot,
            b: self.elems[bi].clone(),
            c: self.elems[ci].clone(),
        })
    }

    /// `u * w` assembled from the `u * (e_t y^d)` table by bilinearity.
    fn u_left_comb(&self, w: &OreElem) -> OreElem {
        let ctx = self.u.ctx();
        let spec = ctx.algebra();
        let mut acc: Vec<CoeffPoly> = Vec::new();
        for (e, p) in w.coeffs().iter().enumerate() {
            for (d, c) in p.coeffs().iter().enumerate() {
                for (t, gamma) in c.coords().iter().enumerate() {
                    if !gamma.is_zero() {
                        let table = &self.u_mono[t * (self.max_d + 1) + d];
                        add_scaled_shifted(&mut acc, table, gamma, e, spec);
                    }
                }
            }
        }
        OreElem::from_coeffs(ctx, acc)
    }

    /// `w * u` assembled from the `(e_t y^d x^e) * u` table by bilinearity.
    fn mono_x_u_comb(&self, w: &OreElem) -> OreElem {
        let ctx = self.u.ctx();
        let spec = ctx.algebra();
        let mut acc: Vec<CoeffPoly> = Vec::new();
        for (e, p) in w.coeffs().iter().enumerate() {
            for (d, c) in p.coeffs().iter().enumerate() {
                for (t, gamma) in c.coords().iter().enumerate() {
                    if !gamma.is_zero() {
                        let table =
                            &self.mono_x_u[(t * (self.max_d + 1) + d) * (self.max_e + 1) + e];
                        add_scaled_shifted(&mut acc, table, gamma, 0, spec);
                    }
                }
            }
        }
        OreElem::from_coeffs(ctx, acc)
    }
}

/// `(w) * v` coefficient-wise for an x-free left factor `w`.
fn xfree_left_mul(w: &CoeffPoly, v: &OreElem) -> OreElem {
    let spec = v.ctx().algebra();
    let coeffs = v.coeffs().iter().map(|p| w.mul(p, spec)).collect();
    OreElem::from_coeffs(v.ctx(), coeffs)
}

/// `acc += gamma * (elem shifted up by `shift` x-powers)`.
fn add_scaled_shifted(
    acc: &mut Vec<CoeffPoly>,
    elem: &OreElem,
    gamma: &Rat,
    shift: usize,
    spec: &AlgebraSpec,
) {
    for (i, p) in elem.coeffs().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        while acc.len() <= i + shift {
            acc.push(CoeffPoly::zero());
        }
        acc[i + shift] = acc[i + shift].add(&p.scale(gamma, spec));
    }
}

/// Does shifting `a` up by `k` x-powers give exactly `b`?
fn eq_shifted(a: &OreElem, k: usize, b: &OreElem) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    if b.coeffs().len() != a.coeffs().len() + k {
        return false;
    }
    b.coeffs()[..k].iter().all(CoeffPoly::is_zero)
        && a.coeffs().iter().zip(&b.coeffs()[k..]).all(|(x, y)| x == y)
}

impl PartialEq for OreElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for OreElem {}

impl Add for &OreElem {
    type Output = OreElem;
    fn add(self, rhs: &OreElem) -> OreElem {
        self.assert_same_ctx(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        OreElem::from_coeffs(&self.ctx, out)
    }
}

impl Sub for &OreElem {
    type Output = OreElem;
    fn sub(self, rhs: &OreElem) -> OreElem {
        self + &-rhs
    }
}

impl Neg for &OreElem {
    type Output = OreElem;
    fn neg(self) -> OreElem {
        OreElem {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(CoeffPoly::neg).collect(),
        }
    }
}

/// Result of a bounded nucleus scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusCheck {
    Member,
    Witness(NucleusWitness),
}

impl NucleusCheck {
    pub fn is_member(&self) -> bool {
        matches!(self, NucleusCheck::Member)
    }
}

/// A violating triple: the checked element placed at `slot` (0, 1 or 2) of
/// the associator, against the monomial pair `(b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleusWitness {
    pub slot: usize,
    pub b: OreElem,
    pub c: OreElem,
}
