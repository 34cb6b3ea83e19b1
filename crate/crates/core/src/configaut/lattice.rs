//! Subgroups of `(Z/q)^N` for a prime power `q`, stored as the Hermite normal
//! form of their preimage lattice in `Z^N` (which contains `q Z^N`).

use std::fmt;

/// A sublattice `L` with `q Z^N ⊆ L ⊆ Z^N`, in upper-triangular Hermite form:
/// row `j` has pivot `pivots[j]` (a divisor of `q`) in column `j`, and every
/// entry above a pivot is reduced into `[0, pivot)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModLattice {
    q: i128,
    rows: Vec<Vec<i128>>,
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl ModLattice {
    /// The lattice spanned by `gens` together with `q Z^N`.
    pub fn span(dim: usize, q: i128, gens: &[Vec<i128>]) -> Self {
        assert!((2..1i128 << 62).contains(&q), "modulus out of range");
        let reduce = |v: &mut Vec<i128>| v.iter_mut().for_each(|x| *x = x.rem_euclid(q));
        let mut pool: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator length");
                let mut g = g.clone();
                reduce(&mut g);
                g
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut piv = vec![0i128; dim];
            piv[j] = q;
            let mut rest = Vec::new();
            for r in pool {
                if r[j] == 0 {
                    rest.push(r);
                    continue;
                }
                let (g, s, t) = xgcd(piv[j], r[j]);
                let (a, b) = (piv[j] / g, r[j] / g);
                let mut new_piv = vec![0i128; dim];
                let mut new_r = vec![0i128; dim];
                for k in j..dim {
                    new_piv[k] = (s * piv[k] + t * r[k]).rem_euclid(q);
                    new_r[k] = (b * piv[k] - a * r[k]).rem_euclid(q);
                }
                new_piv[j] = g;
                new_r[j] = 0;
                piv = new_piv;
                if new_r.iter().any(|&x| x != 0) {
                    rest.push(new_r);
                }
            }
            rows.push(piv);
            pool = rest;
        }
        debug_assert!(pool.is_empty());
        for j in 0..dim {
            let pj = rows[j][j];
            for i in 0..j {
                let c = rows[i][j].div_euclid(pj);
                if c != 0 {
                    let (top, bottom) = rows.split_at_mut(j);
                    for k in j..dim {
                        top[i][k] -= c * bottom[0][k];
                    }
                }
            }
        }
        ModLattice { q, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> i128 {
        self.q
    }

    pub fn pivots(&self) -> impl Iterator<Item = i128> + '_ {
        self.rows.iter().enumerate().map(|(j, r)| r[j])
    }

    /// Basis rows that are nonzero modulo `q`.
    pub fn generators(&self) -> impl Iterator<Item = &Vec<i128>> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(j, r)| r[*j] != self.q)
            .map(|(_, r)| r)
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let q = self.q;
        let mut v: Vec<i128> = v.iter().map(|x| x.rem_euclid(q)).collect();
        for (j, row) in self.rows.iter().enumerate() {
            let pj = row[j];
            if v[j] % pj != 0 {
                return false;
            }
            let c = v[j] / pj;
            if c != 0 {
                for k in j..v.len() {
                    v[k] = (v[k] - c * row[k]).rem_euclid(q);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains_all(&self, other: &ModLattice) -> bool {
        other.generators().all(|g| self.contains(g))
    }

    /// `log_p [Z^N : L]`, with `p` the prime under `q`.
    pub fn colength(&self, p: u64) -> u32 {
        self.pivots()
            .map(|d| {
                let mut d = d;
                let mut e = 0;
                while d % p as i128 == 0 {
                    d /= p as i128;
                    e += 1;
                }
                e
            })
            .sum()
    }

    /// The lattice spanned by all entrywise products `a * b` of generators.
    pub fn product(&self, other: &ModLattice) -> ModLattice {
        assert_eq!(self.q, other.q);
        let mut gens = Vec::new();
        for a in self.generators() {
            for b in other.generators() {
                gens.push(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| (x * y).rem_euclid(self.q))
                        .collect(),
                );
            }
        }
        ModLattice::span(self.dim(), self.q, &gens)
    }
}

impl fmt::Debug for ModLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModLattice")
            .field("q", &self.q)
            .field("rows", &self.rows)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn elements(l: &ModLattice) -> BTreeSet<Vec<i128>> {
        let q = l.modulus();
        let n = l.dim();
        let mut out = BTreeSet::new();
        let total = (q as usize).pow(n as u32);
        for idx in 0..total {
            let mut v = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n {
                v.push((rest % q as usize) as i128);
                rest /= q as usize;
            }
            if l.contains(&v) {
                out.insert(v);
            }
        }
        out
    }

    fn brute_span(dim: usize, q: i128, gens: &[Vec<i128>]) -> BTreeSet<Vec<i128>> {
        let mut set = BTreeSet::from([vec![0i128; dim]]);
        loop {
            let mut grew = false;
            let snapshot: Vec<_> = set.iter().cloned().collect();
            for v in &snapshot {
                for g in gens {
                    let w: Vec<i128> = v
                        .iter()
                        .zip(g)
                        .map(|(a, b)| (a + b).rem_euclid(q))
                        .collect();
                    grew |= set.insert(w);
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn span_matches_brute_force() {
        let cases: Vec<(usize, i128, Vec<Vec<i128>>)> = vec![
            (2, 4, vec![vec![1, 1]]),
            (2, 8, vec![vec![2, 6], vec![4, 0]]),
            (3, 9, vec![vec![3, 0, 6], vec![1, 1, 1], vec![0, 3, 0]]),
            (3, 8, vec![vec![2, 4, 6], vec![0, 0, 4]]),
            (2, 27, vec![vec![9, 9], vec![0, 18]]),
        ];
        for (dim, q, gens) in cases {
            let l = ModLattice::span(dim, q, &gens);
            assert_eq!(elements(&l), brute_span(dim, q, &gens), "{gens:?} mod {q}");
        }
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = ModLattice::span(2, 8, &[vec![2, 6], vec![4, 0]]);
        let b = ModLattice::span(2, 8, &[vec![4, 0], vec![2, 6], vec![6, 2]]);
        assert_eq!(a, b);
    }

    #[test]
    fn colength_counts_quotient() {
        // {(u, v): u = v mod 4} has index 4 in Z^2.
        let l = ModLattice::span(2, 16, &[vec![1, 1], vec![4, 0]]);
        assert_eq!(l.colength(2), 2);
        assert!(l.contains(&[5, 1]));
        assert!(!l.contains(&[2, 0]));
    }
}
