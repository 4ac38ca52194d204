use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fplinalg::{is_prime, FpMatrix};

/// Normal form y_1^e_1 ... y_d^e_d prod_{i<j} [y_j, y_i]^c_ij in F/F_3.
/// Exponents e live in Z/p^2, commutator exponents c in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Class2Element {
    pub e: Vec<u32>,
    pub c: Vec<u32>,
}

/// The relatively free group on d generators of lower p-length at most 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class2Group {
    d: usize,
    p: u32,
    /// Pairs (i, j) with i < j, lexicographic; index into c.
    pairs: Vec<(usize, usize)>,
}

impl Class2Group {
    pub fn new(d: usize, p: u32, budget: &Budget) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid("need at least two generators"));
        }
        if !is_prime(u64::from(p)) || p >= 1 << 15 {
            return Err(Error::invalid(format!("{p} is not a supported prime")));
        }
        let pairs: Vec<(usize, usize)> =
            (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let exp = 2 * d + pairs.len();
        let order = u64::from(p).checked_pow(exp as u32);
        match order {
            Some(o) if o <= budget.max_group_order => {}
            _ => {
                return Err(Error::limit(
                    format!("class-2 group with d={d}, p={p}"),
                    format!("{p}^{exp}"),
                    budget.max_group_order,
                ))
            }
        }
        Ok(Class2Group { d, p, pairs })
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
    /// d + d(d-1)/2, the dimension of G_2.
    pub fn d2(&self) -> usize {
        self.d + self.pairs.len()
    }
    /// log_p |G|.
    pub fn order_exponent(&self) -> usize {
        self.d + self.d2()
    }
    pub fn order(&self) -> u64 {
        u64::from(self.p).pow(self.order_exponent() as u32)
    }

    fn p2(&self) -> u32 {
        self.p * self.p
    }

    pub fn identity(&self) -> Class2Element {
        Class2Element {
            e: vec![0; self.d],
            c: vec![0; self.pairs.len()],
        }
    }

    /// The generator y_i, 0-based.
    pub fn generator(&self, i: usize) -> Class2Element {
        let mut x = self.identity();
        x.e[i] = 1;
        x
    }

    pub fn generators(&self) -> Vec<Class2Element> {
        (0..self.d).map(|i| self.generator(i)).collect()
    }

    /// [y_j, y_i] for i < j.
    pub fn basic_commutator(&self, i: usize, j: usize) -> Result<Class2Element> {
        let k = self
            .pairs
            .iter()
            .position(|&q| q == (i, j))
            .ok_or_else(|| Error::invalid(format!("({i}, {j}) is not a pair i < j < d")))?;
        let mut x = self.identity();
        x.c[k] = 1;
        Ok(x)
    }

    fn check(&self, x: &Class2Element) -> Result<()> {
        if x.e.len() != self.d
            || x.c.len() != self.pairs.len()
            || x.e.iter().any(|&v| v >= self.p2())
            || x.c.iter().any(|&v| v >= self.p)
        {
            return Err(Error::invalid("element does not belong to this group"));
        }
        Ok(())
    }

    pub fn element(&self, e: Vec<u32>, c: Vec<u32>) -> Result<Class2Element> {
        let x = Class2Element { e, c };
        self.check(&x)?;
        Ok(x)
    }

    /// Collection: move each y_i^f_i left past y_j^e_j (j > i), picking up [y_j, y_i]^(e_j f_i).
    pub fn mul(&self, x: &Class2Element, y: &Class2Element) -> Class2Element {
        let (p, p2) = (self.p, self.p2());
        let e = x.e.iter().zip(&y.e).map(|(a, b)| (a + b) % p2).collect();
        let c = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| {
                let carry = (x.e[j] % p) * (y.e[i] % p) % p;
                (x.c[k] + y.c[k] + carry) % p
            })
            .collect();
        Class2Element { e, c }
    }

    pub fn checked_mul(&self, x: &Class2Element, y: &Class2Element) -> Result<Class2Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// (e, c)^-1 = (-e, -c_ij + e_i e_j).
    pub fn inv(&self, x: &Class2Element) -> Class2Element {
        let (p, p2) = (self.p, self.p2());
        let e = x.e.iter().map(|&a| (p2 - a) % p2).collect();
        let c = self
            .pairs
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| (p - x.c[k] + (x.e[i] % p) * (x.e[j] % p) % p) % p)
            .collect();
        Class2Element { e, c }
    }

    pub fn pow(&self, x: &Class2Element, mut k: u64) -> Class2Element {
        let mut acc = self.identity();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// [x, y] = x^-1 y^-1 x y.
    pub fn comm(&self, x: &Class2Element, y: &Class2Element) -> Class2Element {
        let a = self.mul(&self.inv(x), &self.inv(y));
        self.mul(&self.mul(&a, x), y)
    }

    pub fn is_identity(&self, x: &Class2Element) -> bool {
        x.e.iter().all(|&v| v == 0) && x.c.iter().all(|&v| v == 0)
    }

    /// Image in the Frattini quotient G/G_2 = F_p^d.
    pub fn frattini(&self, x: &Class2Element) -> Vec<u32> {
        x.e.iter().map(|&v| v % self.p).collect()
    }

    /// Coordinates of an element of G_2 in the layer basis: p-th powers of
    /// the generators, then [y_i, y_j] for i < j. None outside G_2.
    pub fn layer_coords(&self, x: &Class2Element) -> Option<Vec<u32>> {
        let p = self.p;
        if x.e.iter().any(|&v| v % p != 0) {
            return None;
        }
        let mut z: Vec<u32> = x.e.iter().map(|&v| v / p).collect();
        z.extend(x.c.iter().map(|&v| (p - v) % p));
        Some(z)
    }

    pub fn from_layer_coords(&self, z: &[u32]) -> Class2Element {
        let p = self.p;
        Class2Element {
            e: z[..self.d].iter().map(|&a| a % p * p).collect(),
            c: z[self.d..].iter().map(|&v| (p - v % p) % p).collect(),
        }
    }

    /// Dense index: e digits base p^2, then c digits base p.
    pub fn index_of(&self, x: &Class2Element) -> u64 {
        let mut idx = 0u64;
        for &v in &x.e {
            idx = idx * u64::from(self.p2()) + u64::from(v);
        }
        for &v in &x.c {
            idx = idx * u64::from(self.p) + u64::from(v);
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> Class2Element {
        let mut c = vec![0; self.pairs.len()];
        for v in c.iter_mut().rev() {
            *v = (idx % u64::from(self.p)) as u32;
            idx /= u64::from(self.p);
        }
        let mut e = vec![0; self.d];
        for v in e.iter_mut().rev() {
            *v = (idx % u64::from(self.p2())) as u32;
            idx /= u64::from(self.p2());
        }
        Class2Element { e, c }
    }

    pub fn elements(&self) -> impl Iterator<Item = Class2Element> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    /// The endomorphism y_i -> prod_k y_k^(g_ki) induced by a matrix over F_p,
    /// applied to x.
    pub fn lift_apply(&self, g: &FpMatrix, x: &Class2Element) -> Class2Element {
        let images: Vec<Class2Element> = (0..self.d)
            .map(|i| {
                let mut acc = self.identity();
                for k in 0..self.d {
                    acc = self.mul(&acc, &self.pow(&self.generator(k), u64::from(g.get(k, i))));
                }
                acc
            })
            .collect();
        self.eval_normal_form(&images, x)
    }

    /// Evaluates the normal-form word of x at the given images of the generators.
    pub fn eval_normal_form(&self, images: &[Class2Element], x: &Class2Element) -> Class2Element {
        let mut acc = self.identity();
        for (i, &v) in x.e.iter().enumerate() {
            acc = self.mul(&acc, &self.pow(&images[i], u64::from(v)));
        }
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let cm = self.comm(&images[j], &images[i]);
            acc = self.mul(&acc, &self.pow(&cm, u64::from(x.c[k])));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn group(d: usize, p: u32) -> Class2Group {
        Class2Group::new(d, p, &Budget::default()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(2, 2).order(), 32);
        assert_eq!(group(2, 3).order(), 243);
        assert_eq!(group(3, 3).d2(), 6);
        assert!(Class2Group::new(4, 5, &Budget::default()).is_err());
    }

    #[test]
    fn commutator_and_squares() {
        let g = group(2, 2);
        let (y1, y2) = (g.generator(0), g.generator(1));
        let c = g.comm(&y1, &y2);
        assert_eq!(c.e, vec![0, 0]);
        assert_eq!(c.c.iter().filter(|&&v| v != 0).count(), 1);
        let lhs = g.pow(&g.mul(&y1, &y2), 2);
        let rhs = g.mul(&g.mul(&g.pow(&y1, 2), &g.pow(&y2, 2)), &g.comm(&y2, &y1));
        assert_eq!(lhs, rhs);
        assert_ne!(lhs, g.mul(&g.pow(&y1, 2), &g.pow(&y2, 2)));
        assert_eq!(g.comm(&y2, &y1), g.basic_commutator(0, 1).unwrap());
    }

    #[test]
    fn group_laws() {
        for (d, p) in [(2, 2), (2, 3), (3, 2)] {
            let g = group(d, p);
            let all: Vec<_> = g.elements().collect();
            let id = g.identity();
            for x in &all {
                assert_eq!(&g.mul(&id, x), x);
                assert!(g.is_identity(&g.mul(x, &g.inv(x))));
                assert!(g.is_identity(&g.pow(x, u64::from(p * p))));
                assert_eq!(g.element_at(g.index_of(x)), *x);
            }
        }
        let g = group(2, 2);
        let all: Vec<_> = g.elements().collect();
        for x in &all {
            for y in &all {
                let xy = g.mul(x, y);
                for z in &all {
                    assert_eq!(g.mul(&xy, z), g.mul(x, &g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn random_associativity() {
        let g = group(3, 3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let [x, y, z] = [0; 3].map(|_| g.element_at(rng.gen_range(0..g.order())));
            assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        }
    }
}
