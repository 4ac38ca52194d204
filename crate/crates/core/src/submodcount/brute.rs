use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, SubspaceIndexer};

/// Reduces v against rref rows; true iff v lies in their span.
fn in_span(rows: &[u32], m: usize, p: u32, v: &mut [u32]) -> bool {
    for r in rows.chunks(m) {
        let c = r.iter().position(|&x| x != 0).expect("rref row is nonzero");
        let f = v[c];
        if f != 0 {
            let s = p - f;
            for (x, &y) in v.iter_mut().zip(r) {
                *x = (*x + s * y) % p;
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Counts g-invariant subspaces by visiting every subspace.
pub fn brute_invariant_subspaces(g: &FpMatrix, budget: &Budget) -> Result<u64> {
    if !g.is_square() {
        return Err(Error::invalid("invariant subspaces of a non-square matrix"));
    }
    let (p, m) = (g.p(), g.rows());
    let idx = SubspaceIndexer::new(p, m)?;
    if idx.total() > budget.max_subspaces {
        return Err(Error::limit("invariant-subspace scan", idx.total(), budget.max_subspaces));
    }
    let mut rows = Vec::new();
    let mut count = 0;
    for i in 0..idx.total() {
        idx.unrank_into(i, &mut rows);
        let ok = rows.chunks(m.max(1)).filter(|_| m > 0).all(|r| {
            let mut v = g.apply(r);
            in_span(&rows, m, p, &mut v)
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of elements of `group` commuting with g.
pub fn brute_centralizer_order(g: &FpMatrix, group: &[FpMatrix]) -> Result<u64> {
    let mut n = 0;
    for h in group {
        if h.mul(g)? == g.mul(h)? {
            n += 1;
        }
    }
    Ok(n)
}
