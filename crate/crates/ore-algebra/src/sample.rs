//! Seeded, reproducible sampling of scalars, algebra elements and
//! polynomials. Used by the verification routines that check identities on
//! random inputs, and by the test suites. The generator is a plain
//! SplitMix64 so sequences are identical on every platform.

use crate::algebra::{AlgElem, AlgebraSpec};
use crate::poly::CoeffPoly;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// A small rational with numerator in -4..=4 and denominator in 1..=3.
    pub fn small_rat(&mut self) -> Rat {
        let num = self.below(9) as i64 - 4;
        let den = self.below(3) as i64 + 1;
        Rat::new(num, den)
    }

    /// Like [`small_rat`](Self::small_rat) but never zero.
    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let r = self.small_rat();
            if !r.is_zero() {
                return r;
            }
        }
    }
}

/// A random element with coordinates on all axes.
pub fn alg_elem(spec: &AlgebraSpec, rng: &mut SplitMix64) -> AlgElem {
    spec.elem_from_coords((0..spec.dim()).map(|_| rng.small_rat()).collect())
        .expect("coords match dim")
}

/// A random rational multiple of the unit.
pub fn scalar_elem(spec: &AlgebraSpec, rng: &mut SplitMix64) -> AlgElem {
    spec.scalar(rng.small_rat())
}

/// A random polynomial in `y` of degree at most `max_ydeg`, with general
/// algebra coefficients.
pub fn coeff_poly(spec: &AlgebraSpec, rng: &mut SplitMix64, max_ydeg: usize) -> CoeffPoly {
    let deg = rng.below(max_ydeg as u64 + 1) as usize;
    CoeffPoly::from_coeffs((0..=deg).map(|_| alg_elem(spec, rng)).collect())
}

/// A random polynomial in `y` with rational-unit (central) coefficients.
pub fn central_poly(spec: &AlgebraSpec, rng: &mut SplitMix64, max_ydeg: usize) -> CoeffPoly {
    let deg = rng.below(max_ydeg as u64 + 1) as usize;
    CoeffPoly::from_coeffs((0..=deg).map(|_| scalar_elem(spec, rng)).collect())
}
