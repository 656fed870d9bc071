//! Permutations of {0, …, N−1} stored as explicit maps.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_map(map: Vec<usize>) -> Self {
        Perm(map.into_iter().map(|v| v as u8).collect())
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i, j);
        p
    }

    /// M_ijk = M_ij M_jk.
    pub fn three_cycle(n: usize, i: usize, j: usize, k: usize) -> Self {
        Self::transposition(n, i, j).compose(&Self::transposition(n, j, k))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    /// (σ∘τ)(k) = σ(τ(k)), so that M_σ M_τ = M_{σ∘τ}.
    pub fn compose(&self, tau: &Perm) -> Perm {
        Perm(tau.0.iter().map(|&t| self.0[t as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut k = self.apply(s);
            while k != s {
                seen[k] = true;
                c.push(k);
                k = self.apply(k);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// +1 for even, −1 for odd.
    pub fn parity(&self) -> i64 {
        if self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        permute_rec(&mut cur, 0, &mut out);
        out.sort();
        out
    }
}

fn permute_rec(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == cur.len() {
        out.push(Perm::from_map(cur.clone()));
        return;
    }
    for s in k..cur.len() {
        cur.swap(k, s);
        permute_rec(cur, k + 1, out);
        cur.swap(k, s);
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("1");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|k| (k + 1).to_string()).collect();
            write!(f, "M({})", labels.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let n = 4;
        let all = Perm::all(n);
        assert_eq!(all.len(), 24);
        for a in &all {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in all.iter().take(6) {
                assert_eq!(a.compose(b).parity(), a.parity() * b.parity());
            }
        }
        let t = Perm::transposition(n, 0, 2);
        assert!(t.compose(&t).is_identity());
        assert_eq!(t.parity(), -1);
        let c = Perm::three_cycle(n, 0, 1, 2);
        assert_eq!(c.parity(), 1);
        // cyclic invariance M_ijk = M_jki, and M_ijk ≠ M_jik
        assert_eq!(c, Perm::three_cycle(n, 1, 2, 0));
        assert_ne!(c, Perm::three_cycle(n, 1, 0, 2));
    }
}
