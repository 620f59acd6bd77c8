//! Annihilating bivariate polynomials for commuting pairs: evaluation of
//! `P(s, t)` at a pair of Ore elements, and the exact-nullspace search for a
//! nonzero `P` with `P(a, b) = 0` inside a degree box.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::ore::{NucleusCheck, OreElem};
use crate::rat::Rat;

/// A polynomial in two commuting variables `s` and `t` with rational
/// coefficients. `grid[i][j]` is the coefficient of `s^j t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    grid: Vec<Vec<Rat>>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly { grid: Vec::new() }
    }

    pub fn from_grid(grid: Vec<Vec<Rat>>) -> Self {
        let mut p = BivarPoly { grid };
        p.trim();
        p
    }

    pub fn from_terms(terms: &[(usize, usize, Rat)]) -> Self {
        let mut grid: Vec<Vec<Rat>> = Vec::new();
        for (i, j, c) in terms {
            if grid.len() <= *i {
                grid.resize(*i + 1, Vec::new());
            }
            if grid[*i].len() <= *j {
                grid[*i].resize(*j + 1, Rat::zero());
            }
            grid[*i][*j] = &grid[*i][*j] + c;
        }
        BivarPoly::from_grid(grid)
    }

    fn trim(&mut self) {
        for row in &mut self.grid {
            while row.last().is_some_and(Rat::is_zero) {
                row.pop();
            }
        }
        while self.grid.last().is_some_and(Vec::is_empty) {
            self.grid.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(|row| row.iter().all(Rat::is_zero))
    }

    /// Nonzero terms as `(t_power, s_power, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, &Rat)> {
        let mut out = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.grid
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.grid.len().checked_sub(1)
    }

    pub fn s_degree(&self) -> Option<usize> {
        self.grid.iter().map(|r| r.len()).max()?.checked_sub(1)
    }

    /// Scales so the graded-lex leading term (largest total degree, ties
    /// broken toward the larger s-power) has coefficient 1.
    pub fn normalize(&self) -> BivarPoly {
        let Some((i, j, _)) = self.terms().into_iter().max_by_key(|(i, j, _)| (i + j, *j)) else {
            return self.clone();
        };
        let lead = self.coeff(i, j);
        let inv = lead.recip();
        BivarPoly {
            grid: self
                .grid
                .iter()
                .map(|row| row.iter().map(|c| c * &inv).collect())
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> BivarPoly {
        BivarPoly::from_grid(
            self.grid
                .iter()
                .map(|row| row.iter().map(|c| c * r).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<BivarTermJson> = self
            .terms()
            .into_iter()
            .map(|(i, j, c)| BivarTermJson { i, j, c: c.clone() })
            .collect();
        serde_json::to_string(&BivarPolyJson { terms }).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: BivarPolyJson =
            serde_json::from_str(s).map_err(|e| Error::BadRational(e.to_string()))?;
        Ok(BivarPoly::from_terms(
            &json
                .terms
                .into_iter()
                .map(|t| (t.i, t.j, t.c))
                .collect::<Vec<_>>(),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct BivarPolyJson {
    terms: Vec<BivarTermJson>,
}

#[derive(Serialize, Deserialize)]
struct BivarTermJson {
    i: usize,
    j: usize,
    c: Rat,
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        // Graded-lex descending, leading term first.
        terms.sort_by_key(|(i, j, _)| std::cmp::Reverse((i + j, *j)));
        for (idx, (i, j, c)) in terms.iter().enumerate() {
            let mut vars = Vec::new();
            match j {
                0 => {}
                1 => vars.push("s".to_string()),
                _ => vars.push(format!("s^{j}")),
            }
            match i {
                0 => {}
                1 => vars.push("t".to_string()),
                _ => vars.push(format!("t^{i}")),
            }
            let abs = c.abs();
            let body = if vars.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                vars.join(" * ")
            } else {
                format!("{abs} * {}", vars.join(" * "))
            };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Left-normed power `b^k`; all parenthesizations agree when `b` is in the
/// nucleus.
pub fn left_power(b: &OreElem, k: usize) -> OreElem {
    b.pow_left(k)
}

/// Evaluates `P(a, b) = sum_i f_i(a) b^i`, each `f_i(a) = sum_j P[i][j] a^j`
/// with left-normed powers. Rejects pairs that do not commute; `a` is
/// assumed to lie in the nucleus (its polynomials are then unambiguous).
pub fn evaluate(p: &BivarPoly, a: &OreElem, b: &OreElem) -> Result<OreElem> {
    if !a.commutes_with(b) {
        return Err(Error::NotCommuting);
    }
    let ctx = a.ctx();
    let max_s = p.s_degree().unwrap_or(0);
    let max_t = p.t_degree().unwrap_or(0);
    let a_pows = powers(a, max_s);
    let b_pows = powers(b, max_t);
    let mut acc = OreElem::zero(ctx);
    for (i, row) in p.grid.iter().enumerate() {
        let mut f_i = OreElem::zero(ctx);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                f_i = &f_i + &a_pows[j].scale(c);
            }
        }
        if !f_i.is_zero() {
            acc = &acc + &f_i.mul(&b_pows[i]);
        }
    }
    Ok(acc)
}

fn powers(e: &OreElem, up_to: usize) -> Vec<OreElem> {
    let mut out = vec![OreElem::one(e.ctx())];
    for _ in 0..up_to {
        out.push(e.mul(out.last().unwrap()));
    }
    out
}

/// Searches the degree box `t <= max_t_deg`, `s <= max_s_deg` for a nonzero
/// polynomial with `P(a, b) = 0`, by flattening every monomial evaluation
/// `a^j b^i` into an exact matrix and taking a nullspace vector. Returns
/// `None` when the box admits no relation. The result is normalized and
/// re-verified by evaluation before being returned.
///
/// Preconditions checked here: the pair commutes, `a` has positive x-degree
/// and `a` passes the bounded nucleus certificate at its own degrees.
pub fn annihilating_polynomial(
    a: &OreElem,
    b: &OreElem,
    max_t_deg: usize,
    max_s_deg: usize,
) -> Result<Option<BivarPoly>> {
    if !a.commutes_with(b) {
        return Err(Error::NotCommuting);
    }
    let Some(m) = a.xdeg().finite() else {
        return Err(Error::InvalidQuery("a must have positive x-degree".into()));
    };
    if m == 0 {
        return Err(Error::InvalidQuery("a must have positive x-degree".into()));
    }
    let ybound = a.max_ydeg().finite().unwrap_or(0);
    match a.nucleus_check(m, ybound)? {
        NucleusCheck::Member => {}
        NucleusCheck::Witness(_) => {
            return Err(Error::InvalidQuery(
                "a fails the bounded nucleus certificate".into(),
            ));
        }
    }
    // Monomials in graded-lex ascending order so the returned relation is
    // supported on the smallest monomials the box allows.
    let mut monomials: Vec<(usize, usize)> = (0..=max_t_deg)
        .flat_map(|i| (0..=max_s_deg).map(move |j| (i, j)))
        .collect();
    monomials.sort_by_key(|(i, j)| (i + j, *j));
    let a_pows = powers(a, max_s_deg);
    let b_pows = powers(b, max_t_deg);
    let values: Vec<OreElem> = monomials
        .iter()
        .map(|(i, j)| a_pows[*j].mul(&b_pows[*i]))
        .collect();
    let mut keys = BTreeMap::new();
    let entries: Vec<_> = values.iter().map(|v| v.entries()).collect();
    for e in &entries {
        for (key, _) in e {
            let next = keys.len();
            keys.entry(*key).or_insert(next);
        }
    }
    let sorted: Vec<_> = keys.keys().copied().collect();
    let index: BTreeMap<_, _> = sorted.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut matrix = RatMatrix::zeros(sorted.len(), values.len());
    for (col, e) in entries.iter().enumerate() {
        for (key, value) in e {
            matrix.set(index[key], col, value.clone());
        }
    }
    let Some(vector) = matrix.nullspace_basis().into_iter().next() else {
        return Ok(None);
    };
    let terms: Vec<(usize, usize, Rat)> = monomials
        .iter()
        .zip(&vector)
        .filter(|(_, c)| !c.is_zero())
        .map(|((i, j), c)| (*i, *j, c.clone()))
        .collect();
    let p = BivarPoly::from_terms(&terms).normalize();
    let check = evaluate(&p, a, b)?;
    assert!(
        check.is_zero(),
        "annihilating polynomial failed re-verification; this is a bug"
    );
    Ok(Some(p))
}

/// Doubling-box search: starts at s-degree `xdeg(b)`, t-degree `xdeg(a)`
/// (at least 1 each) and doubles both limits until a relation appears or
/// `max_doublings` is exhausted.
pub fn find_annihilating(
    a: &OreElem,
    b: &OreElem,
    max_doublings: usize,
) -> Result<Option<BivarPoly>> {
    let mut s_max = b.xdeg().finite().unwrap_or(0).max(1);
    let mut t_max = a.xdeg().finite().unwrap_or(0).max(1);
    for _ in 0..=max_doublings {
        if let Some(p) = annihilating_polynomial(a, b, t_max, s_max)? {
            return Ok(Some(p));
        }
        s_max *= 2;
        t_max *= 2;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::OreContext;

    fn s_minus_t() -> BivarPoly {
        BivarPoly::from_terms(&[(0, 1, Rat::one()), (1, 0, Rat::from_int(-1))])
    }

    #[test]
    fn display_forms() {
        let p = BivarPoly::from_terms(&[(0, 3, Rat::one()), (2, 0, Rat::from_int(-1))]);
        assert_eq!(p.to_string(), "s^3 - t^2");
        assert_eq!(s_minus_t().to_string(), "s - t");
        assert_eq!(BivarPoly::zero().to_string(), "0");
        let q = BivarPoly::from_terms(&[(1, 1, Rat::new(2, 3)), (0, 0, Rat::from_int(5))]);
        assert_eq!(q.to_string(), "2/3 * s * t + 5");
    }

    #[test]
    fn json_round_trip() {
        let p = BivarPoly::from_terms(&[(0, 3, Rat::one()), (2, 0, Rat::new(-2, 3))]);
        let back = BivarPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn evaluate_s_minus_t_on_equal_pair() {
        let ctx = OreContext::diff_rat();
        let a = OreElem::x(&ctx).pow_left(2);
        assert!(evaluate(&s_minus_t(), &a, &a).unwrap().is_zero());
    }

    #[test]
    fn evaluate_t_minus_one_on_unit() {
        let ctx = OreContext::diff_rat();
        let a = OreElem::x(&ctx);
        let one = OreElem::one(&ctx);
        let p = BivarPoly::from_terms(&[(1, 0, Rat::one()), (0, 0, Rat::from_int(-1))]);
        assert!(evaluate(&p, &a, &one).unwrap().is_zero());
    }

    #[test]
    fn evaluate_classical_relation() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        let (a, b) = (x.pow_left(2), x.pow_left(3));
        let p = BivarPoly::from_terms(&[(0, 3, Rat::one()), (2, 0, Rat::from_int(-1))]);
        assert!(evaluate(&p, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn evaluate_rejects_noncommuting_pairs() {
        let ctx = OreContext::diff_rat();
        let (x, y) = (OreElem::x(&ctx), OreElem::y(&ctx));
        assert!(matches!(
            evaluate(&s_minus_t(), &x, &y),
            Err(Error::NotCommuting)
        ));
    }

    #[test]
    fn left_powers() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        assert_eq!(left_power(&x, 0), OreElem::one(&ctx));
        assert_eq!(left_power(&x, 3), x.mul(&x.mul(&x)));
        // (yx)^2 = y^2 x^2 + y x
        let yx = OreElem::term(&ctx, ctx.algebra().unit(), 1, 1);
        let want = &OreElem::term(&ctx, ctx.algebra().unit(), 2, 2)
            + &OreElem::term(&ctx, ctx.algebra().unit(), 1, 1);
        assert_eq!(left_power(&yx, 2), want);
    }

    #[test]
    fn parenthesizations_agree_for_nucleus_elements() {
        let ctx = OreContext::diff_oct();
        // b = x + y is a real-coefficient element, hence nucleus.
        let b = &OreElem::x(&ctx) + &OreElem::y(&ctx);
        let left4 = b.pow_left(4);
        let sq = b.mul(&b);
        assert_eq!(left4, sq.mul(&sq));
        assert_eq!(left4, b.mul(&b.mul(&b.mul(&b))));
    }

    #[test]
    fn classical_burchnall_chaundy_pair() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        let (a, b) = (x.pow_left(2), x.pow_left(3));
        let p = annihilating_polynomial(&a, &b, 2, 3).unwrap().unwrap();
        assert_eq!(p.to_string(), "s^3 - t^2");
    }

    #[test]
    fn equal_pair_relation_in_unit_box() {
        let ctx = OreContext::diff_rat();
        let a = OreElem::x(&ctx).pow_left(2);
        let p = annihilating_polynomial(&a, &a, 1, 1).unwrap().unwrap();
        // s - t up to normalization.
        let normalized = s_minus_t().normalize();
        assert_eq!(p, normalized);
    }

    #[test]
    fn square_root_relation() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        let a = x.pow_left(2);
        let p = annihilating_polynomial(&a, &x, 2, 1).unwrap().unwrap();
        // Proportional to s - t^2; the normalized leading term is t^2.
        let want =
            BivarPoly::from_terms(&[(0, 1, Rat::one()), (2, 0, Rat::from_int(-1))]).normalize();
        assert_eq!(p, want);
        assert_eq!(p.to_string(), "t^2 - s");
    }

    #[test]
    fn monotone_in_the_box() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        let (a, b) = (x.pow_left(2), x.pow_left(3));
        assert!(annihilating_polynomial(&a, &b, 2, 3).unwrap().is_some());
        assert!(annihilating_polynomial(&a, &b, 4, 6).unwrap().is_some());
        // Too small a box has no relation.
        assert!(annihilating_polynomial(&a, &b, 1, 2).unwrap().is_none());
    }

    #[test]
    fn doubling_search_finds_relations() {
        let ctx = OreContext::diff_rat();
        let x = OreElem::x(&ctx);
        let (a, b) = (x.pow_left(2), x.pow_left(3));
        let p = find_annihilating(&a, &b, 3).unwrap().unwrap();
        assert_eq!(p.to_string(), "s^3 - t^2");
    }

    #[test]
    fn rejects_non_nucleus_a() {
        let ctx = OreContext::diff_oct();
        let e1x = OreElem::term(&ctx, ctx.algebra().basis_elem(1), 0, 1);
        // e1 x commutes with itself but is not a certified nucleus element.
        assert!(annihilating_polynomial(&e1x, &e1x, 2, 2).is_err());
    }
}
