use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) && p < (1 << 16) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not a supported prime")))
    }
}

#[inline]
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

#[inline]
pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    let p = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

/// Reduces rows (row-major, `cols` wide) to reduced row-echelon form in place,
/// drops zero rows and returns the pivot columns.
pub fn rref_in_place(data: &mut Vec<u32>, cols: usize, p: u32) -> Vec<usize> {
    let rows = if cols == 0 { 0 } else { data.len() / cols };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                data.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(data[r * cols + c], p) as u64;
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = (data[r * cols + j] as u64 * inv % p as u64) as u32;
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = (p - f) as u64;
            for j in c..cols {
                let v = data[r * cols + j];
                if v != 0 {
                    data[i * cols + j] = ((data[i * cols + j] as u64 + f * v as u64) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    data.truncate(r * cols);
    pivots
}

/// A dense matrix over the prime field F_p. Matrices act on column vectors,
/// so the columns of `g` are the images of the standard basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {:?})", self.p, self.to_rows())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    p: u32,
    cols: usize,
    rows: Vec<Vec<i64>>,
}

impl Serialize for FpMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            p: self.p,
            cols: self.cols,
            rows: self
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(i64::from).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FpMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        FpMatrix::from_rows_with_cols(r.p, r.cols, &r.rows).map_err(serde::de::Error::custom)
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(p, cols, rows)
    }

    pub fn from_rows_with_cols(p: u32, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::invalid("ragged matrix rows"));
            }
            data.extend(r.iter().map(|&x| x.rem_euclid(p as i64) as u32));
        }
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Wraps already-reduced row-major data.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < p));
        FpMatrix { p, rows, cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn into_data(self) -> Vec<u32> {
        self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn same_field(&self, o: &FpMatrix) -> Result<()> {
        if self.p != o.p {
            return Err(Error::invalid("matrices over different fields"));
        }
        Ok(())
    }

    pub fn mul(&self, o: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(o)?;
        if self.cols != o.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul_unchecked(o))
    }

    pub fn mul_unchecked(&self, o: &FpMatrix) -> FpMatrix {
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &o.data[k * o.cols..(k + 1) * o.cols];
                let dst = &mut out[i * o.cols..(i + 1) * o.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u64) % p;
                }
            }
        }
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: o.cols,
            data: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// `self * v` for a column vector v.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, o: &FpMatrix) -> Result<FpMatrix> {
        self.same_field(o)?;
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::invalid("shape mismatch in addition"));
        }
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(FpMatrix { data, ..self.clone() })
    }

    pub fn sub(&self, o: &FpMatrix) -> Result<FpMatrix> {
        self.add(&o.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let c = (c % self.p) as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row-echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut data = self.data.clone();
        let piv = rref_in_place(&mut data, self.cols, self.p);
        let rows = piv.len();
        (
            FpMatrix {
                p: self.p,
                rows,
                cols: self.cols,
                data,
            },
            piv,
        )
    }

    pub fn rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Dimension of the kernel of the column action.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis (as rows) of {x : self * x = 0}.
    pub fn kernel(&self) -> FpMatrix {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = FpMatrix::zeros(self.p, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in piv.iter().enumerate() {
                let v = r.get(i, f);
                out.set(k, pc, (self.p - v) % self.p);
            }
        }
        out
    }

    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let p = self.p as u64;
        let mut a = self.data.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return Ok(0);
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let v = a[c * n + c] as u64;
            det = det * v % p;
            let inv = inv_mod(v as u32, self.p) as u64;
            for i in c + 1..n {
                let f = a[i * n + c] as u64 * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[i * n + j] = ((a[i * n + j] as u64 + (p - f) * a[c * n + j] as u64) % p) as u32;
                }
            }
        }
        Ok(det as u32)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = vec![0u32; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug[i * 2 * n + n + i] = 1 % self.p;
        }
        let piv = rref_in_place(&mut aug, 2 * n, self.p);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&aug[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(inv)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Block-diagonal sum.
    pub fn block_diag(p: u32, blocks: &[FpMatrix]) -> FpMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(p, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stacks rows of `self` above rows of `o`.
    pub fn vstack(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }
}

/// All invertible d x d matrices over F_p, in lexicographic order of their entries.
pub fn all_gl(d: usize, p: u32) -> Vec<FpMatrix> {
    let n = d * d;
    let total = (p as u64).pow(n as u32);
    let mut out = Vec::new();
    let mut entries = vec![0u32; n];
    for _ in 0..total {
        let m = FpMatrix::from_data(p, d, d, entries.clone());
        if m.is_invertible() {
            out.push(m);
        }
        for k in (0..n).rev() {
            entries[k] += 1;
            if entries[k] < p {
                break;
            }
            entries[k] = 0;
        }
    }
    out
}

/// A uniformly random invertible matrix.
pub fn random_gl<R: rand::Rng>(d: usize, p: u32, rng: &mut R) -> FpMatrix {
    loop {
        let data = (0..d * d).map(|_| rng.gen_range(0..p)).collect();
        let m = FpMatrix::from_data(p, d, d, data);
        if m.is_invertible() {
            return m;
        }
    }
}
