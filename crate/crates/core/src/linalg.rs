//! Dense matrices over the prime field GF(q): rank, reduced row echelon form
//! and kernels. Used for rank-metric weights and root spaces.

/// Row-major matrix with entries in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeMatrix {
    q: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        PrimeMatrix {
            q: u64::from(q),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(q: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut out = Self::zeros(q, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            for (j, &v) in row.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = u64::from(v) % self.q;
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        self.data[i * self.cols..(i + 1) * self.cols]
            .iter()
            .map(|&v| v as u32)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = PrimeMatrix {
            q: self.q,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &PrimeMatrix) -> PrimeMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PrimeMatrix {
            q: self.q,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.data[l * other.cols + j]) % self.q;
                }
            }
        }
        out
    }

    fn inv_mod(&self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % self.q, self.q - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.q;
            }
            base = base * base % self.q;
            e >>= 1;
        }
        acc
    }

    /// Reduces to reduced row echelon form in place and returns the pivot
    /// columns in ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let q = self.q;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.inv_mod(self.data[r * self.cols + c]);
            for j in 0..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = self.data[idx] * inv % q;
            }
            for i in 0..self.rows {
                let factor = self.data[i * self.cols + c];
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let sub = factor * self.data[r * self.cols + j] % q;
                    let idx = i * self.cols + j;
                    self.data[idx] = (self.data[idx] + q - sub) % q;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column in ascending order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let q = self.q;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - a.data[r * self.cols + free]) % q;
            }
            basis.push(v.into_iter().map(|x| x as u32).collect());
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_gf2() {
        let m = PrimeMatrix::from_rows(2, 3, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn kernel_vectors_are_annihilated_gf3() {
        let m = PrimeMatrix::from_rows(3, 4, &[vec![1, 2, 0, 1], vec![2, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in k {
            let col = PrimeMatrix::from_rows(3, 1, &v.iter().map(|&x| vec![x]).collect::<Vec<_>>());
            let prod = m.mul(&col);
            assert!((0..prod.rows()).all(|i| prod.get(i, 0) == 0));
        }
    }

    #[test]
    fn rref_is_idempotent_and_transposes_keep_rank() {
        let mut m = PrimeMatrix::from_rows(5, 3, &[vec![1, 2, 3], vec![2, 4, 1], vec![0, 0, 4]]);
        let t = m.transpose();
        let p = m.rref();
        let snapshot = m.clone();
        assert_eq!(m.rref(), p);
        assert_eq!(m, snapshot);
        assert_eq!(t.rank(), p.len());
    }

    #[test]
    fn empty_matrices() {
        assert_eq!(PrimeMatrix::zeros(2, 0, 3).rank(), 0);
        assert_eq!(PrimeMatrix::zeros(2, 3, 0).kernel().len(), 0);
        assert_eq!(PrimeMatrix::zeros(2, 2, 2).kernel().len(), 2);
    }
}
