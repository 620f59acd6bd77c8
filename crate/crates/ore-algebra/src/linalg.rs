//! Exact dense linear algebra over the rationals: reduced row echelon form,
//! nullspace bases and span membership with certificates.

use crate::rat::Rat;

/// A dense matrix of exact rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Panics when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RatMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rat::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns in
    /// increasing order. Pivoting takes the first row with a nonzero entry,
    /// scanning columns left to right; exact arithmetic throughout.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).recip();
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right nullspace `{v : self * v = 0}`, one vector per
    /// non-pivot column, each verified by multiplication.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            assert!(
                self.mul_vec(&v).iter().all(Rat::is_zero),
                "nullspace vector failed verification; this is a bug"
            );
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * factor;
            }
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Rat) {
        for c in 0..self.cols {
            let v = self.data[src * self.cols + c].clone();
            if !v.is_zero() {
                let idx = r * self.cols + c;
                self.data[idx] = &self.data[idx] - &(&v * factor);
            }
        }
    }
}

/// Tests whether `v` is a rational linear combination of `basis`. Returns the
/// combination coefficients when it is; the certificate is re-verified before
/// being returned.
pub fn in_span(v: &[Rat], basis: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let n = v.len();
    assert!(
        basis.iter().all(|b| b.len() == n),
        "vectors of unequal length"
    );
    if v.iter().all(Rat::is_zero) {
        return Some(vec![Rat::zero(); basis.len()]);
    }
    // Solve [basis as columns | v] by elimination; inconsistent iff a pivot
    // lands in the augmented column.
    let mut aug = RatMatrix::zeros(n, basis.len() + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, entry) in b.iter().enumerate() {
            aug.set(i, j, entry.clone());
        }
    }
    for (i, entry) in v.iter().enumerate() {
        aug.set(i, basis.len(), entry.clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&basis.len()) {
        return None;
    }
    let mut coeffs = vec![Rat::zero(); basis.len()];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = r.get(row, basis.len()).clone();
    }
    // Certificate check: the combination reproduces v exactly.
    for i in 0..n {
        let mut acc = Rat::zero();
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() && !b[i].is_zero() {
                acc = &acc + &(c * &b[i]);
            }
        }
        if acc != v[i] {
            return None;
        }
    }
    Some(coeffs)
}
