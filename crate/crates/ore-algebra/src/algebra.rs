//! Finite-dimensional unital algebras over the rationals, given by structure
//! constants. The built-in tower (rationals, complexes, quaternions,
//! octonions) is produced by Cayley-Dickson doubling; arbitrary user
//! specifications are accepted as long as the designated unit acts as one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A unital algebra of dimension `dim` with product
/// `e_i * e_j = sum_k c[i][j][k] e_k`. Not assumed associative or
/// commutative; downstream code that needs "no zero divisors" documents that
/// assumption instead of verifying it here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    dim: usize,
    names: Vec<String>,
    unit: usize,
    /// Dense structure constants, indexed `[i * dim * dim + j * dim + k]`.
    constants: Vec<Rat>,
    /// Sparse view of the same data: `table[i * dim + j]` lists the nonzero
    /// `(k, c)` of `e_i * e_j`. Rebuilt on construction, never serialized.
    table: Vec<Vec<(usize, Rat)>>,
    /// Number of doublings from the rationals, when this spec was built by
    /// the doubling chain. Conjugation is only defined in that case.
    doubling_level: Option<u32>,
}

/// An element of an [`AlgebraSpec`], as coordinates in its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    coords: Vec<Rat>,
}

impl AlgElem {
    pub(crate) fn from_raw_coords(coords: Vec<Rat>) -> AlgElem {
        AlgElem { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// True when the element is a rational multiple of `unit_index`.
    fn is_axis(&self, axis: usize) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(i, c)| i == axis || c.is_zero())
    }
}

impl AlgebraSpec {
    /// The rationals as a 1-dimensional algebra; level 0 of the doubling chain.
    pub fn rationals() -> Self {
        AlgebraSpec::assemble(vec!["e0".into()], 0, vec![Rat::one()], Some(0))
            .expect("rationals are a valid spec")
    }

    pub fn complexes() -> Self {
        AlgebraSpec::rationals().cayley_dickson_double().unwrap()
    }

    pub fn quaternions() -> Self {
        AlgebraSpec::complexes().cayley_dickson_double().unwrap()
    }

    pub fn octonions() -> Self {
        AlgebraSpec::quaternions().cayley_dickson_double().unwrap()
    }

    /// Builds a spec from raw structure constants, verifying the unit laws
    /// `e_u * e_j = e_j = e_j * e_u`.
    pub fn from_constants(names: Vec<String>, unit: usize, constants: Vec<Rat>) -> Result<Self> {
        AlgebraSpec::assemble(names, unit, constants, None)
    }

    fn assemble(
        names: Vec<String>,
        unit: usize,
        constants: Vec<Rat>,
        doubling_level: Option<u32>,
    ) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::BadAlgebra("dimension must be positive".into()));
        }
        if unit >= dim {
            return Err(Error::BadAlgebra("unit index out of range".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::BadAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let entries = &mut table[i * dim + j];
                for k in 0..dim {
                    let c = &constants[(i * dim + j) * dim + k];
                    if !c.is_zero() {
                        entries.push((k, c.clone()));
                    }
                }
            }
        }
        let spec = AlgebraSpec {
            dim,
            names,
            unit,
            constants,
            table,
            doubling_level,
        };
        for j in 0..dim {
            let e = spec.basis_elem(j);
            if spec.mul(&spec.unit(), &e) != e || spec.mul(&e, &spec.unit()) != e {
                return Err(Error::BadAlgebra(format!(
                    "basis element {} does not satisfy the unit laws",
                    spec.names[j]
                )));
            }
        }
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem {
            coords: vec![Rat::zero(); self.dim],
        }
    }

    pub fn unit(&self) -> AlgElem {
        self.basis_elem(self.unit)
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        assert!(i < self.dim, "basis index out of range");
        let mut coords = vec![Rat::zero(); self.dim];
        coords[i] = Rat::one();
        AlgElem { coords }
    }

    pub fn scalar(&self, r: Rat) -> AlgElem {
        let mut coords = vec![Rat::zero(); self.dim];
        coords[self.unit] = r;
        AlgElem { coords }
    }

    pub fn elem_from_coords(&self, coords: Vec<Rat>) -> Result<AlgElem> {
        if coords.len() != self.dim {
            return Err(Error::BadAlgebra(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        Ok(AlgElem { coords })
    }

    /// Bilinear extension of the structure constants. Panics on a dimension
    /// mismatch; elements are only produced through this spec's constructors.
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = AlgElem {
            coords: vec![Rat::zero(); self.dim],
        };
        self.mul_acc(a, b, &mut out);
        out
    }

    /// `acc += a * b`, reusing the accumulator's storage.
    pub(crate) fn mul_acc(&self, a: &AlgElem, b: &AlgElem, acc: &mut AlgElem) {
        assert_eq!(a.dim(), self.dim, "dimension mismatch");
        assert_eq!(b.dim(), self.dim, "dimension mismatch");
        assert_eq!(acc.dim(), self.dim, "dimension mismatch");
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let prod = ai * bj;
                for (k, c) in &self.table[i * self.dim + j] {
                    acc.coords[*k] = &acc.coords[*k] + &(&prod * c);
                }
            }
        }
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        assert_eq!(a.dim(), b.dim(), "dimension mismatch");
        AlgElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        assert_eq!(a.dim(), b.dim(), "dimension mismatch");
        AlgElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        AlgElem {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, r: &Rat, a: &AlgElem) -> AlgElem {
        if r.is_zero() {
            return self.zero();
        }
        AlgElem {
            coords: a.coords.iter().map(|x| x * r).collect(),
        }
    }

    /// `(ab)c - a(bc)`.
    pub fn associator(&self, a: &AlgElem, b: &AlgElem, c: &AlgElem) -> AlgElem {
        let left = self.mul(&self.mul(a, b), c);
        let right = self.mul(a, &self.mul(b, c));
        self.sub(&left, &right)
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Sum of squared coordinates; multiplicative on the doubling tower up
    /// to the octonions.
    pub fn norm_sq(&self, a: &AlgElem) -> Rat {
        a.coords.iter().fold(Rat::zero(), |acc, c| &acc + &(c * c))
    }

    /// True when `a` is a rational multiple of the unit.
    pub fn is_scalar(&self, a: &AlgElem) -> bool {
        a.is_axis(self.unit)
    }

    /// The scalar `r` with `a = r * unit`, when `a` is one.
    pub fn as_scalar<'a>(&self, a: &'a AlgElem) -> Option<&'a Rat> {
        if self.is_scalar(a) {
            Some(&a.coords[self.unit])
        } else {
            None
        }
    }

    /// Conjugation along the doubling chain: the unit coordinate is kept,
    /// every other coordinate is negated. Only defined on chain algebras.
    pub fn conjugate(&self, a: &AlgElem) -> Result<AlgElem> {
        if self.doubling_level.is_none() {
            return Err(Error::NoConjugation);
        }
        let coords = a
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i == self.unit { c.clone() } else { -c })
            .collect();
        Ok(AlgElem { coords })
    }

    /// The Cayley-Dickson double: pairs `(a, b)` with product
    /// `(a, b)(c, d) = (ac - d*b, da + bc*)`, where `*` is conjugation in
    /// this algebra. Three applications to the rationals give the octonions.
    pub fn cayley_dickson_double(&self) -> Result<AlgebraSpec> {
        let level = self.doubling_level.ok_or(Error::NoConjugation)?;
        let d = self.dim;
        let dd = 2 * d;
        let mut constants = vec![Rat::zero(); dd * dd * dd];
        let mut put = |i: usize, j: usize, coords_lo: &AlgElem, coords_hi: &AlgElem| {
            for k in 0..d {
                constants[(i * dd + j) * dd + k] = coords_lo.coords[k].clone();
                constants[(i * dd + j) * dd + d + k] = coords_hi.coords[k].clone();
            }
        };
        for i in 0..dd {
            for j in 0..dd {
                // Basis pairs: index < d is (e_i, 0), index >= d is (0, e_{i-d}).
                let (a, b) = self.split_basis(i);
                let (c, dd_part) = self.split_basis(j);
                // (a,b)(c,d) = (ac - d* b, d a + b c*)
                let dstar = self.conjugate(&dd_part)?;
                let cstar = self.conjugate(&c)?;
                let lo = self.sub(&self.mul(&a, &c), &self.mul(&dstar, &b));
                let hi = self.add(&self.mul(&dd_part, &a), &self.mul(&b, &cstar));
                put(i, j, &lo, &hi);
            }
        }
        let names = (0..dd).map(|i| format!("e{i}")).collect();
        AlgebraSpec::assemble(names, 0, constants, Some(level + 1))
    }

    fn split_basis(&self, i: usize) -> (AlgElem, AlgElem) {
        if i < self.dim {
            (self.basis_elem(i), self.zero())
        } else {
            (self.zero(), self.basis_elem(i - self.dim))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraSpecJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: AlgebraSpecJson =
            serde_json::from_str(s).map_err(|e| Error::BadAlgebra(e.to_string()))?;
        json.into_spec()
    }
}

/// JSON mirror: `{dim, names, unit, constants}` with constants as nested
/// arrays of `"p/q"` strings.
#[derive(Serialize, Deserialize)]
struct AlgebraSpecJson {
    dim: usize,
    names: Vec<String>,
    unit: usize,
    constants: Vec<Vec<Vec<Rat>>>,
}

impl From<&AlgebraSpec> for AlgebraSpecJson {
    fn from(spec: &AlgebraSpec) -> Self {
        let d = spec.dim;
        let constants = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|k| spec.structure_constant(i, j, k).clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        AlgebraSpecJson {
            dim: d,
            names: spec.names.clone(),
            unit: spec.unit,
            constants,
        }
    }
}

impl AlgebraSpecJson {
    fn into_spec(self) -> Result<AlgebraSpec> {
        if self.names.len() != self.dim {
            return Err(Error::BadAlgebra("names length differs from dim".into()));
        }
        let d = self.dim;
        let mut flat = Vec::with_capacity(d * d * d);
        if self.constants.len() != d {
            return Err(Error::BadAlgebra("constants shape mismatch".into()));
        }
        for plane in &self.constants {
            if plane.len() != d {
                return Err(Error::BadAlgebra("constants shape mismatch".into()));
            }
            for row in plane {
                if row.len() != d {
                    return Err(Error::BadAlgebra("constants shape mismatch".into()));
                }
                flat.extend(row.iter().cloned());
            }
        }
        AlgebraSpec::from_constants(self.names, self.unit, flat)
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::SplitMix64;

    /// Independent Cayley-Dickson oracle: elements at doubling level `n` are
    /// nested pairs, flattened to 2^n rationals; the product is computed
    /// directly from the recursion, bypassing the structure-constant path.
    mod cd_oracle {
        use crate::rat::Rat;

        pub fn mul(level: u32, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
            if level == 0 {
                return vec![&a[0] * &b[0]];
            }
            let h = a.len() / 2;
            let (a1, a2) = a.split_at(h);
            let (b1, b2) = b.split_at(h);
            // (a1,a2)(b1,b2) = (a1 b1 - b2* a2, b2 a1 + a2 b1*)
            let lo = sub(&mul(level - 1, a1, b1), &mul(level - 1, &conj(b2), a2));
            let hi = add(&mul(level - 1, b2, a1), &mul(level - 1, a2, &conj(b1)));
            lo.into_iter().chain(hi).collect()
        }

        pub fn conj(a: &[Rat]) -> Vec<Rat> {
            a.iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { c.clone() } else { -c })
                .collect()
        }

        fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        }

        fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
            a.iter().zip(b).map(|(x, y)| x - y).collect()
        }
    }

    #[test]
    fn doubling_the_rationals_gives_complexes() {
        let c = AlgebraSpec::complexes();
        assert_eq!(c.dim(), 2);
        let i = c.basis_elem(1);
        assert_eq!(c.mul(&i, &i), c.scalar(Rat::from_int(-1)));
    }

    #[test]
    fn doubling_complexes_gives_quaternions() {
        let q = AlgebraSpec::quaternions();
        assert_eq!(q.dim(), 4);
        let (e1, e2, e3) = (q.basis_elem(1), q.basis_elem(2), q.basis_elem(3));
        assert_eq!(q.mul(&e1, &e2), e3);
        assert_eq!(q.mul(&e2, &e1), q.neg(&e3));
        assert_eq!(q.commutator(&e1, &e2), q.scale(&Rat::from_int(2), &e3));
        assert!(q.commutator(&e1, &e1).is_zero());
    }

    #[test]
    fn doubling_quaternions_is_nonassociative() {
        let o = AlgebraSpec::octonions();
        assert_eq!(o.dim(), 8);
        let mut found = false;
        'outer: for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    if !o
                        .associator(&o.basis_elem(i), &o.basis_elem(j), &o.basis_elem(k))
                        .is_zero()
                    {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found, "octonions must have a nonzero associator");
    }

    #[test]
    fn quaternions_are_associative() {
        let q = AlgebraSpec::quaternions();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert!(q
                        .associator(&q.basis_elem(i), &q.basis_elem(j), &q.basis_elem(k))
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn octonion_table_matches_doubling_oracle() {
        let o = AlgebraSpec::octonions();
        for i in 0..8 {
            for j in 0..8 {
                let a = o.basis_elem(i);
                let b = o.basis_elem(j);
                let got = o.mul(&a, &b);
                let want = cd_oracle::mul(3, a.coords(), b.coords());
                assert_eq!(got.coords(), &want[..], "e{i} * e{j}");
            }
        }
    }

    #[test]
    fn unit_and_zero_laws() {
        let o = AlgebraSpec::octonions();
        let a = o
            .elem_from_coords((0..8).map(Rat::from_int).collect())
            .unwrap();
        assert_eq!(o.mul(&o.unit(), &a), a);
        assert_eq!(o.mul(&a, &o.unit()), a);
        assert!(o.mul(&o.zero(), &a).is_zero());
    }

    #[test]
    fn e1_squared_is_minus_one_in_octonions() {
        let o = AlgebraSpec::octonions();
        let e1 = o.basis_elem(1);
        assert_eq!(o.mul(&e1, &e1), o.scalar(Rat::from_int(-1)));
    }

    #[test]
    fn scalars_commute_and_associate() {
        let o = AlgebraSpec::octonions();
        let mut rng = SplitMix64::new(7);
        for _ in 0..20 {
            let s = o.scalar(rng.small_rat());
            let a = random_elem(&o, &mut rng);
            let b = random_elem(&o, &mut rng);
            assert!(o.commutator(&s, &a).is_zero());
            assert!(o.associator(&s, &a, &b).is_zero());
            assert!(o.associator(&a, &s, &b).is_zero());
            assert!(o.associator(&a, &b, &s).is_zero());
        }
    }

    #[test]
    fn octonions_are_alternative_with_multiplicative_norm() {
        let o = AlgebraSpec::octonions();
        let mut rng = SplitMix64::new(99);
        for _ in 0..50 {
            let a = random_elem(&o, &mut rng);
            let b = random_elem(&o, &mut rng);
            assert!(o.associator(&a, &a, &b).is_zero());
            assert!(o.associator(&a, &b, &b).is_zero());
            let n = o.norm_sq(&o.mul(&a, &b));
            assert_eq!(n, &o.norm_sq(&a) * &o.norm_sq(&b));
        }
    }

    #[test]
    fn json_round_trip() {
        let q = AlgebraSpec::quaternions();
        let loaded = AlgebraSpec::from_json(&q.to_json()).unwrap();
        assert_eq!(loaded.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    q.mul(&q.basis_elem(i), &q.basis_elem(j)).coords(),
                    loaded
                        .mul(&loaded.basis_elem(i), &loaded.basis_elem(j))
                        .coords()
                );
            }
        }
        // Loaded specs are not part of the doubling chain.
        assert!(loaded.cayley_dickson_double().is_err());
    }

    #[test]
    fn bad_unit_is_rejected() {
        // dim 1 with e0*e0 = 2*e0: e0 is not a unit.
        let err = AlgebraSpec::from_constants(vec!["e0".into()], 0, vec![Rat::from_int(2)]);
        assert!(err.is_err());
    }

    pub(crate) fn random_elem(spec: &AlgebraSpec, rng: &mut SplitMix64) -> AlgElem {
        spec.elem_from_coords((0..spec.dim()).map(|_| rng.small_rat()).collect())
            .unwrap()
    }
}
