use super::Scalar;

/// Dense row-major matrix of scalars from one field mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        ScalarMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == rows.len() {
                break;
            }
            // among candidate rows, the sparsest keeps fill-in down
            let pivot = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r].iter().filter(|x| !x.is_zero()).count());
            let Some(p) = pivot else { continue };
            rows.swap(top, p);
            let inv = rows[top][col].inv().expect("pivot is nonzero");
            for x in rows[top].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = rows[top].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == top || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
            pivots.push(col);
            top += 1;
        }
        rows.truncate(top);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per non-pivot column. Each vector
    /// has a 1 in its free column and 0 in every other free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = -&row[free];
                }
                v
            })
            .collect()
    }
}
