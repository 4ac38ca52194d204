use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::{check_prime, inv_mod, FpMatrix};
use crate::error::{Error, Result};

/// A polynomial over F_p, coefficients from the constant term upward, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c, i) {
                (c, 0) => c.to_string(),
                (1, _) => mono,
                (c, _) => format!("{c}{mono}"),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.p, self.coeffs.len())
            .cmp(&(o.p, o.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl FpPoly {
    pub fn new(p: u32, coeffs: Vec<i64>) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::from_reduced(
            p,
            coeffs.into_iter().map(|c| c.rem_euclid(p as i64) as u32).collect(),
        ))
    }

    pub fn from_reduced(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    /// The polynomial t.
    pub fn t(p: u32) -> Self {
        FpPoly {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here, check `is_zero` separately.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p) as u64;
        FpPoly::from_reduced(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| (c as u64 * inv % self.p as u64) as u32)
                .collect(),
        )
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        FpPoly::from_reduced(self.p, c)
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::from_reduced(self.p, self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::from_reduced(self.p, c.into_iter().map(|x| x as u32).collect())
    }

    pub fn pow(&self, k: u32) -> FpPoly {
        let mut acc = FpPoly::one(self.p);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p as u64;
        let mut r: Vec<u64> = self.coeffs.iter().map(|&x| x as u64).collect();
        let dd = d.degree();
        if self.coeffs.len() < d.coeffs.len() {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv = inv_mod(d.lead(), self.p) as u64;
        let mut q = vec![0u64; self.coeffs.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i] * inv % p;
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = (r[idx] + (p - c) * dc as u64) % p;
            }
        }
        r.truncate(dd);
        (
            FpPoly::from_reduced(self.p, q.into_iter().map(|x| x as u32).collect()),
            FpPoly::from_reduced(self.p, r.into_iter().map(|x| x as u32).collect()),
        )
    }

    /// f(g) for a square matrix g, by Horner's rule.
    pub fn eval_matrix(&self, g: &FpMatrix) -> FpMatrix {
        let n = g.rows();
        let mut acc = FpMatrix::zeros(self.p, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(g).add(&FpMatrix::scalar(self.p, n, c)).unwrap();
        }
        acc
    }

    /// Companion matrix acting on columns: e_i -> e_{i+1}, last column holds -a_i.
    pub fn companion(&self) -> FpMatrix {
        assert!(self.is_monic() && self.degree() >= 1);
        let n = self.degree();
        let mut m = FpMatrix::zeros(self.p, n, n);
        for i in 0..n - 1 {
            m.set(i + 1, i, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, (self.p - self.coeffs[i]) % self.p);
        }
        m
    }

    /// All monic polynomials of the given degree, in increasing order.
    pub fn all_monic(p: u32, degree: usize) -> Vec<FpPoly> {
        let count = (p as u64).pow(degree as u32);
        (0..count)
            .map(|mut x| {
                let mut c = vec![0u32; degree + 1];
                c[degree] = 1;
                for slot in c.iter_mut().take(degree) {
                    *slot = (x % p as u64) as u32;
                    x /= p as u64;
                }
                FpPoly { p, coeffs: c }
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Monic irreducible polynomials over F_p up to a degree, found by sieving.
#[derive(Debug, Clone)]
pub struct IrreducibleSieve {
    p: u32,
    by_degree: Vec<Vec<FpPoly>>,
}

impl IrreducibleSieve {
    pub fn new(p: u32, max_degree: usize) -> Result<Self> {
        check_prime(p)?;
        let mut s = IrreducibleSieve {
            p,
            by_degree: vec![Vec::new()],
        };
        s.extend_to(max_degree);
        Ok(s)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn extend_to(&mut self, max_degree: usize) {
        while self.max_degree() < max_degree {
            let k = self.max_degree() + 1;
            let irr: Vec<FpPoly> = FpPoly::all_monic(self.p, k)
                .into_iter()
                .filter(|f| {
                    !(1..=k / 2).any(|j| {
                        self.by_degree[j]
                            .iter()
                            .any(|g| f.divrem(g).1.is_zero())
                    })
                })
                .collect();
            self.by_degree.push(irr);
        }
    }

    pub fn of_degree(&self, k: usize) -> &[FpPoly] {
        &self.by_degree[k]
    }

    pub fn up_to(&self, k: usize) -> impl Iterator<Item = &FpPoly> {
        self.by_degree[1..=k.min(self.max_degree())].iter().flatten()
    }

    pub fn is_irreducible(&self, f: &FpPoly) -> bool {
        let f = f.monic();
        f.degree() >= 1 && self.by_degree.get(f.degree()).is_some_and(|v| v.contains(&f))
    }
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities
/// (the leading coefficient is dropped). The sieve must reach deg(f)/2.
pub fn factor_poly(f: &FpPoly, sieve: &IrreducibleSieve) -> Result<BTreeMap<FpPoly, u32>> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    if f.p() != sieve.p() {
        return Err(Error::invalid("sieve is for a different prime"));
    }
    if sieve.max_degree() < f.degree() / 2 {
        return Err(Error::invalid(format!(
            "sieve reaches degree {}, need {}",
            sieve.max_degree(),
            f.degree() / 2
        )));
    }
    let mut rest = f.monic();
    let mut out = BTreeMap::new();
    'outer: for k in 1..=sieve.max_degree() {
        if 2 * k > rest.degree() {
            break;
        }
        for g in sieve.of_degree(k) {
            loop {
                let (q, r) = rest.divrem(g);
                if !r.is_zero() {
                    break;
                }
                *out.entry(g.clone()).or_insert(0) += 1;
                rest = q;
                if 2 * k > rest.degree() {
                    continue 'outer;
                }
            }
        }
    }
    if rest.degree() >= 1 {
        *out.entry(rest).or_insert(0) += 1;
    }
    Ok(out)
}

/// Characteristic polynomial det(tI - g), via reduction to Hessenberg form.
pub fn charpoly(g: &FpMatrix) -> Result<FpPoly> {
    if !g.is_square() {
        return Err(Error::invalid("characteristic polynomial of a non-square matrix"));
    }
    let p = g.p();
    let pp = p as u64;
    let n = g.rows();
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| g.row(i).iter().map(|&x| x as u64).collect()).collect();
    // Similarity transforms to upper Hessenberg form.
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let inv = inv_mod(h[c + 1][c] as u32, p) as u64;
        for i in c + 2..n {
            let f = h[i][c] * inv % pp;
            if f == 0 {
                continue;
            }
            // row_i -= f row_{c+1}; then col_{c+1} += f col_i
            for j in 0..n {
                h[i][j] = (h[i][j] + (pp - f) * h[c + 1][j]) % pp;
            }
            for row in h.iter_mut() {
                row[c + 1] = (row[c + 1] + f * row[i]) % pp;
            }
        }
    }
    // p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<FpPoly> = vec![FpPoly::one(p)];
    for k in 0..n {
        let lin = FpPoly::from_reduced(p, vec![((pp - h[k][k]) % pp) as u32, 1]);
        let mut pk = lin.mul(&polys[k]);
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % pp;
            if prod == 0 {
                break;
            }
            let c = h[i][k] * prod % pp;
            if c != 0 {
                let term = polys[i].mul(&FpPoly::from_reduced(p, vec![c as u32]));
                pk = pk.sub(&term);
            }
        }
        polys.push(pk);
    }
    Ok(polys.pop().unwrap())
}
