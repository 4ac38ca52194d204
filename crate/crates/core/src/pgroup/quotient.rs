use crate::error::{Error, Result};
use crate::fplinalg::Subspace;

use super::group::{Class2Element, Class2Group};

/// Largest order for which a multiplication table is built.
const TABLE_LIMIT: usize = 1 << 12;

/// H = G/L for a subspace L of G_2, written in the layer coordinates of G_2.
/// Elements are indices: the Frattini digits r (base p) followed by the
/// non-pivot coordinates of the G_2 part reduced modulo L.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    g: Class2Group,
    l: Subspace,
    free: Vec<usize>,
    order: usize,
    table: Option<Vec<u32>>,
}

impl QuotientGroup {
    pub fn new(g: &Class2Group, l: &Subspace) -> Result<Self> {
        if l.p() != g.p() || l.ambient_dim() != g.d2() {
            return Err(Error::invalid(format!(
                "L must be a subspace of F_{}^{} (the layer G_2)",
                g.p(),
                g.d2()
            )));
        }
        let piv = l.pivots();
        let free: Vec<usize> = (0..g.d2()).filter(|c| !piv.contains(c)).collect();
        let exp = g.d() + free.len();
        let order = (g.p() as usize)
            .checked_pow(exp as u32)
            .filter(|&o| o <= u32::MAX as usize)
            .ok_or_else(|| Error::limit("quotient order", format!("{}^{exp}", g.p()), u32::MAX))?;
        let mut h = QuotientGroup {
            g: g.clone(),
            l: l.clone(),
            free,
            order,
            table: None,
        };
        if order <= TABLE_LIMIT {
            let mut t = vec![0u32; order * order];
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    t[a as usize * order + b as usize] = h.mul_direct(a, b);
                }
            }
            h.table = Some(t);
        }
        Ok(h)
    }

    /// G itself, as the quotient by the zero subspace.
    pub fn whole(g: &Class2Group) -> Result<Self> {
        Self::new(g, &Subspace::zero(g.p(), g.d2()))
    }

    pub fn group(&self) -> &Class2Group {
        &self.g
    }
    pub fn kernel(&self) -> &Subspace {
        &self.l
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn p(&self) -> u32 {
        self.g.p()
    }
    pub fn d(&self) -> usize {
        self.g.d()
    }
    pub fn identity(&self) -> u32 {
        0
    }

    /// Reduces a G_2 coordinate vector modulo L (zero at L's pivots).
    pub fn reduce(&self, z: &mut [u32]) {
        let p = self.p();
        let m = self.g.d2();
        for r in self.l.basis().data().chunks(m) {
            let c = r.iter().position(|&x| x != 0).unwrap();
            let f = z[c];
            if f != 0 {
                for (x, &y) in z.iter_mut().zip(r) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
    }

    /// Splits an element index into (r, reduced z).
    pub fn decode(&self, mut idx: u32) -> (Vec<u32>, Vec<u32>) {
        let p = self.p();
        let mut z = vec![0u32; self.g.d2()];
        for &c in self.free.iter().rev() {
            z[c] = idx % p;
            idx /= p;
        }
        let mut r = vec![0u32; self.d()];
        for v in r.iter_mut().rev() {
            *v = idx % p;
            idx /= p;
        }
        (r, z)
    }

    /// Index of (r, z); z must already be reduced.
    pub fn encode(&self, r: &[u32], z: &[u32]) -> u32 {
        let p = self.p();
        let mut idx = 0u32;
        for &v in r {
            idx = idx * p + v;
        }
        for &c in &self.free {
            idx = idx * p + z[c];
        }
        idx
    }

    /// s(r) s(r') = s(r + r' mod p) (p delta, carry); the second factor has
    /// layer coordinates (delta, -carry).
    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        let d = self.d();
        let (r1, z1) = self.decode(a);
        let (r2, z2) = self.decode(b);
        let mut z: Vec<u32> = z1.iter().zip(&z2).map(|(x, y)| (x + y) % p).collect();
        let mut r = vec![0u32; d];
        for i in 0..d {
            let s = r1[i] + r2[i];
            r[i] = s % p;
            if s >= p {
                z[i] = (z[i] + 1) % p;
            }
        }
        for (k, &(i, j)) in self.g.pairs().iter().enumerate() {
            let carry = r1[j] * r2[i] % p;
            z[d + k] = (z[d + k] + p - carry) % p;
        }
        self.reduce(&mut z);
        self.encode(&r, &z)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        // a^(p^2) = 1.
        let k = u64::from(self.p()) * u64::from(self.p());
        self.pow(a, k - 1)
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn comm(&self, a: u32, b: u32) -> u32 {
        let x = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(x, a), b)
    }

    pub fn conj(&self, a: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), a), h)
    }

    /// Image of a G element.
    pub fn project(&self, x: &Class2Element) -> u32 {
        let p = self.p();
        let r: Vec<u32> = x.e.iter().map(|&v| v % p).collect();
        let mut z: Vec<u32> = x.e.iter().map(|&v| v / p).collect();
        z.extend(x.c.iter().map(|&v| (p - v) % p));
        self.reduce(&mut z);
        self.encode(&r, &z)
    }

    /// A canonical preimage in G.
    pub fn lift(&self, a: u32) -> Class2Element {
        let (r, z) = self.decode(a);
        let base = self.g.from_layer_coords(&z);
        let s = Class2Element {
            e: r,
            c: vec![0; self.g.pairs().len()],
        };
        self.g.mul(&s, &base)
    }

    pub fn generators(&self) -> Vec<u32> {
        (0..self.d()).map(|i| self.project(&self.g.generator(i))).collect()
    }

    /// Frattini-quotient image, r.
    pub fn frattini(&self, a: u32) -> Vec<u32> {
        self.decode(a).0
    }

    /// The element of H_2 with the given (unreduced) layer coordinates.
    pub fn from_layer(&self, z: &[u32]) -> u32 {
        let mut z = z.to_vec();
        self.reduce(&mut z);
        self.encode(&vec![0; self.d()], &z)
    }
}
