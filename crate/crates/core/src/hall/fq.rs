//! Linear algebra over prime fields `F_p`, with entries stored as `u8`.

use rand::Rng;

pub fn inv(a: u8, p: u8) -> u8 {
    debug_assert!(!a.is_multiple_of(p));
    (1..p).find(|&b| (a as u32 * b as u32) % p as u32 == 1).expect("prime modulus")
}

fn mul(a: u8, b: u8, p: u8) -> u8 {
    ((a as u32 * b as u32) % p as u32) as u8
}

fn sub(a: u8, b: u8, p: u8) -> u8 {
    ((a as u32 + p as u32 - b as u32) % p as u32) as u8
}

/// `v - c·w`, entrywise.
fn axpy(v: &mut [u8], c: u8, w: &[u8], p: u8) {
    if c == 0 {
        return;
    }
    for (a, b) in v.iter_mut().zip(w) {
        *a = sub(*a, mul(c, *b, p), p);
    }
}

/// A dense `rows × cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for k in 0..n {
            m.data[k * n + k] = 1;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn apply(&self, v: &[u8], p: u8) -> Vec<u8> {
        (0..self.rows)
            .map(|r| {
                let s: u32 = (0..self.cols).map(|c| self.get(r, c) as u32 * v[c] as u32).sum();
                (s % p as u32) as u8
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat, p: u8) -> Mat {
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u32 = (0..self.cols)
                    .map(|k| self.get(r, k) as u32 * other.get(k, c) as u32)
                    .sum();
                out.set(r, c, (s % p as u32) as u8);
            }
        }
        out
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self, p: u8) -> Option<Mat> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                let mut row = self.data[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| u8::from(c == r)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            let s = inv(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = mul(*x, s, p);
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col {
                    let c = row[col];
                    axpy(row, c, &pivot_row, p);
                }
            }
        }
        let mut out = Mat::zero(n, n);
        for (r, row) in a.iter().enumerate() {
            for c in 0..n {
                out.set(r, c, row[n + c]);
            }
        }
        Some(out)
    }

    pub fn random_invertible<R: Rng>(n: usize, p: u8, rng: &mut R) -> Mat {
        loop {
            let m = Mat {
                rows: n,
                cols: n,
                data: (0..n * n).map(|_| rng.gen_range(0..p)).collect(),
            };
            if m.inverse(p).is_some() {
                return m;
            }
        }
    }
}

/// A subspace of `F_p^n` held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn non_pivots(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// The representative of `v` modulo the subspace with zeros in every
    /// pivot column.
    pub fn reduce(&self, v: &[u8], p: u8) -> Vec<u8> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = v[c];
            axpy(&mut v, k, row, p);
        }
        v
    }

    pub fn contains(&self, v: &[u8], p: u8) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Coordinates of `v` in the quotient, read off the non-pivot columns.
    pub fn quotient_coords(&self, v: &[u8], p: u8) -> Vec<u8> {
        let r = self.reduce(v, p);
        self.non_pivots().into_iter().map(|c| r[c]).collect()
    }

    /// The standard basis vectors indexed by non-pivot columns; their
    /// images form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Vec<u8>> {
        self.non_pivots()
            .into_iter()
            .map(|c| (0..self.n).map(|k| u8::from(k == c)).collect())
            .collect()
    }

    /// The span of the subspace and `v`, for `v` outside it.
    pub fn extend(&self, v: &[u8], p: u8) -> Subspace {
        let mut w = self.reduce(v, p);
        let c = w.iter().position(|&x| x != 0).expect("vector outside the subspace");
        let s = inv(w[c], p);
        for x in w.iter_mut() {
            *x = mul(*x, s, p);
        }
        let mut rows: Vec<(usize, Vec<u8>)> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &pc)| {
                let mut r = r.clone();
                let k = r[c];
                axpy(&mut r, k, &w, p);
                (pc, r)
            })
            .collect();
        rows.push((c, w));
        rows.sort_by_key(|(pc, _)| *pc);
        Subspace {
            n: self.n,
            pivots: rows.iter().map(|(pc, _)| *pc).collect(),
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        }
    }

    /// All subspaces containing this one with one more dimension.
    pub fn covers(&self, p: u8) -> Vec<Subspace> {
        let free = self.non_pivots();
        let mut out = Vec::new();
        // Lines in the quotient, normalised so the first non-zero entry is 1.
        for (lead_k, &lead) in free.iter().enumerate() {
            let tail = &free[lead_k + 1..];
            for code in 0..(p as u64).pow(tail.len() as u32) {
                let mut v = vec![0u8; self.n];
                v[lead] = 1;
                let mut x = code;
                for &c in tail {
                    v[c] = (x % p as u64) as u8;
                    x /= p as u64;
                }
                out.push(self.extend(&v, p));
            }
        }
        out
    }

    /// Every `k`-dimensional subspace of `F_p^n`, in a fixed order.
    pub fn all(n: usize, k: usize, p: u8) -> Vec<Subspace> {
        let mut out = Vec::new();
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            for code in 0..(p as u64).pow(free.len() as u32) {
                let mut rows = vec![vec![0u8; n]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = 1;
                }
                let mut x = code;
                for &(r, c) in &free {
                    rows[r][c] = (x % p as u64) as u8;
                    x /= p as u64;
                }
                out.push(Subspace {
                    n,
                    rows,
                    pivots: pivots.clone(),
                });
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}
