//! The coefficient ring `R = A[y]`: polynomials in a central variable `y`
//! with algebra-element coefficients, together with the endomorphism sigma
//! and the sigma-derivation delta that parametrize an Ore extension.

use crate::algebra::{AlgElem, AlgebraSpec};
use crate::error::{Error, Result};
use crate::ore::Degree;
use crate::rat::Rat;
use crate::sample::{self, SplitMix64};

/// A polynomial in `y` with coefficients in an [`AlgebraSpec`], stored dense
/// by ascending power with trailing zeros trimmed. The zero polynomial is
/// the empty sequence and has y-degree minus infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffPoly {
    coeffs: Vec<AlgElem>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<AlgElem>) -> Self {
        let mut p = CoeffPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(elem: AlgElem) -> Self {
        CoeffPoly::from_coeffs(vec![elem])
    }

    /// `elem * y^deg`.
    pub fn monomial(elem: AlgElem, deg: usize) -> Self {
        if elem.is_zero() {
            return CoeffPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(deg + 1);
        let dim = elem.dim();
        for _ in 0..deg {
            coeffs.push(AlgElem::zero_of_dim(dim));
        }
        coeffs.push(elem);
        CoeffPoly { coeffs }
    }

    pub fn one(spec: &AlgebraSpec) -> Self {
        CoeffPoly::constant(spec.unit())
    }

    pub fn y(spec: &AlgebraSpec) -> Self {
        CoeffPoly::monomial(spec.unit(), 1)
    }

    /// A polynomial with rational coefficients embedded on the unit axis;
    /// `rats[i]` is the coefficient of `y^i`.
    pub fn central(spec: &AlgebraSpec, rats: &[Rat]) -> Self {
        CoeffPoly::from_coeffs(rats.iter().map(|r| spec.scalar(r.clone())).collect())
    }

    pub(crate) fn trim(&mut self) {
        while self.coeffs.last().is_some_and(AlgElem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[AlgElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&AlgElem> {
        self.coeffs.get(i)
    }

    pub fn deg_y(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&AlgElem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &CoeffPoly) -> CoeffPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        CoeffPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &CoeffPoly) -> CoeffPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CoeffPoly {
        CoeffPoly {
            coeffs: self.coeffs.iter().map(AlgElem::neg_elem).collect(),
        }
    }

    /// Convolution product; `y` is central, so only the coefficients
    /// multiply through the algebra.
    pub fn mul(&self, other: &CoeffPoly, spec: &AlgebraSpec) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        out.mac(self, other, spec);
        out.trim();
        out
    }

    /// `self += a * b`, reusing storage. May leave trailing zero
    /// coefficients; callers normalize with [`trim`](Self::trim) when done
    /// accumulating.
    pub(crate) fn mac(&mut self, a: &CoeffPoly, b: &CoeffPoly, spec: &AlgebraSpec) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        while self.coeffs.len() < need {
            self.coeffs.push(spec.zero());
        }
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                spec.mul_acc(ai, bj, &mut self.coeffs[i + j]);
            }
        }
    }

    pub fn scale(&self, r: &Rat, spec: &AlgebraSpec) -> CoeffPoly {
        if r.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly {
            coeffs: self.coeffs.iter().map(|c| spec.scale(r, c)).collect(),
        }
    }

    /// Left multiplication by a single algebra element.
    pub fn scale_elem(&self, e: &AlgElem, spec: &AlgebraSpec) -> CoeffPoly {
        CoeffPoly::from_coeffs(self.coeffs.iter().map(|c| spec.mul(e, c)).collect())
    }

    /// Coefficient-wise formal derivative with respect to `y`.
    pub fn formal_derivative(&self, spec: &AlgebraSpec) -> CoeffPoly {
        if self.coeffs.len() <= 1 {
            return CoeffPoly::zero();
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| spec.scale(&Rat::from_int(i as i64 + 1), c))
            .collect();
        CoeffPoly::from_coeffs(out)
    }

    /// True when every coefficient is a rational multiple of the unit.
    pub fn is_central_scalar(&self, spec: &AlgebraSpec) -> bool {
        self.coeffs.iter().all(|c| spec.is_scalar(c))
    }

    pub fn pow(&self, k: usize, spec: &AlgebraSpec) -> CoeffPoly {
        let mut acc = CoeffPoly::one(spec);
        for _ in 0..k {
            acc = acc.mul(self, spec);
        }
        acc
    }

    /// Substitution `p(subst)` for a central `subst`: `sum_i p_i * subst^i`.
    pub fn compose(&self, subst: &CoeffPoly, spec: &AlgebraSpec) -> CoeffPoly {
        let mut acc = CoeffPoly::zero();
        let mut power = CoeffPoly::one(spec);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.mul(subst, spec);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale_elem(c, spec));
            }
        }
        acc
    }
}

impl AlgElem {
    pub(crate) fn zero_of_dim(dim: usize) -> AlgElem {
        Self::from_raw_coords(vec![Rat::zero(); dim])
    }

    pub(crate) fn neg_elem(&self) -> AlgElem {
        Self::from_raw_coords(self.coords().iter().map(|c| -c).collect())
    }

    pub(crate) fn add(&self, other: &AlgElem) -> AlgElem {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::from_raw_coords(
            self.coords()
                .iter()
                .zip(other.coords())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// The endomorphism of `R = A[y]` that fixes `A` pointwise. In substitution
/// mode it sends `y` to a fixed central polynomial of degree at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaSpec {
    Identity,
    Substitution(CoeffPoly),
}

impl SigmaSpec {
    /// Substitution by `sigma_y`, which must have rational-unit coefficients
    /// (so it is central in `R`) and degree at least 1.
    pub fn substitution(sigma_y: CoeffPoly, spec: &AlgebraSpec) -> Result<Self> {
        if !sigma_y.is_central_scalar(spec) {
            return Err(Error::Unsupported(
                "sigma(y) must have rational-unit coefficients".into(),
            ));
        }
        match sigma_y.deg_y() {
            Degree::Finite(s) if s >= 1 => Ok(SigmaSpec::Substitution(sigma_y)),
            _ => Err(Error::Unsupported(
                "sigma(y) must have degree at least 1".into(),
            )),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, SigmaSpec::Identity)
    }

    /// `deg_y(sigma(y))`; 1 for the identity.
    pub fn y_degree(&self) -> usize {
        match self {
            SigmaSpec::Identity => 1,
            SigmaSpec::Substitution(p) => match p.deg_y() {
                Degree::Finite(s) => s,
                Degree::NegInf => unreachable!("validated at construction"),
            },
        }
    }
}

/// The sigma-derivation, determined by its value on `y` (it vanishes on `A`
/// and extends by the twisted Leibniz rule). `DDy` is the ordinary formal
/// derivative and requires the identity endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeltaSpec {
    Zero,
    DDy,
    SigmaTwisted { delta_of_y: CoeffPoly },
}

/// `sigma(p)`.
pub fn apply_sigma(sig: &SigmaSpec, p: &CoeffPoly, spec: &AlgebraSpec) -> CoeffPoly {
    match sig {
        SigmaSpec::Identity => p.clone(),
        SigmaSpec::Substitution(subst) => p.compose(subst, spec),
    }
}

/// `delta(p)`. Fails only when asked for `d/dy` alongside a non-identity
/// endomorphism.
pub fn apply_delta(
    del: &DeltaSpec,
    sig: &SigmaSpec,
    p: &CoeffPoly,
    spec: &AlgebraSpec,
) -> Result<CoeffPoly> {
    match del {
        DeltaSpec::Zero => Ok(CoeffPoly::zero()),
        DeltaSpec::DDy => {
            if !sig.is_identity() {
                return Err(Error::DerivativeNeedsIdentity);
            }
            Ok(p.formal_derivative(spec))
        }
        DeltaSpec::SigmaTwisted { delta_of_y } => {
            // delta(y^k) = sigma(y) delta(y^{k-1}) + delta(y) y^{k-1},
            // delta vanishing on A; extend A-linearly over the coefficients.
            let deg = match p.deg_y() {
                Degree::NegInf => return Ok(CoeffPoly::zero()),
                Degree::Finite(d) => d,
            };
            let sigma_y = match sig {
                SigmaSpec::Identity => CoeffPoly::y(spec),
                SigmaSpec::Substitution(s) => s.clone(),
            };
            let mut delta_pows = Vec::with_capacity(deg + 1);
            delta_pows.push(CoeffPoly::zero()); // delta(1) = 0
            for k in 1..=deg {
                let prev = &delta_pows[k - 1];
                let mut term = sigma_y.mul(prev, spec);
                let y_pow = CoeffPoly::monomial(spec.unit(), k - 1);
                term = term.add(&delta_of_y.mul(&y_pow, spec));
                delta_pows.push(term);
            }
            let mut acc = CoeffPoly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&delta_pows[k].scale_elem(c, spec));
                }
            }
            Ok(acc)
        }
    }
}

/// Checks `delta(pq) = sigma(p) delta(q) + delta(p) q` exactly on
/// `sample_count` seeded pseudo-random pairs. Returns the first violating
/// pair if one is found.
pub fn verify_sigma_derivation(
    del: &DeltaSpec,
    sig: &SigmaSpec,
    spec: &AlgebraSpec,
    sample_count: usize,
    seed: u64,
) -> std::result::Result<(), Box<(CoeffPoly, CoeffPoly)>> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..sample_count {
        let p = sample::coeff_poly(spec, &mut rng, 3);
        let q = sample::coeff_poly(spec, &mut rng, 3);
        let lhs = match apply_delta(del, sig, &p.mul(&q, spec), spec) {
            Ok(v) => v,
            Err(_) => return Err(Box::new((p, q))),
        };
        let dq = apply_delta(del, sig, &q, spec).expect("mode already validated");
        let dp = apply_delta(del, sig, &p, spec).expect("mode already validated");
        let rhs = apply_sigma(sig, &p, spec)
            .mul(&dq, spec)
            .add(&dp.mul(&q, spec));
        if lhs != rhs {
            return Err(Box::new((p, q)));
        }
    }
    Ok(())
}
