//! Normal-ordered operator expressions Σ c(x) p^α M_σ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::coeff::RationalCoeff;
use super::perm::Perm;
use super::poly::{int, minus_i_pow, Poly, Scalar, HBAR, NPARAM};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub alpha: Vec<u8>,
    pub perm: Perm,
}

/// Memoized mixed partial derivatives of one coefficient.
struct Derivatives {
    cache: HashMap<Vec<u8>, RationalCoeff>,
}

impl Derivatives {
    fn new(c: RationalCoeff) -> Self {
        let n = c.n();
        let mut cache = HashMap::new();
        cache.insert(vec![0u8; n], c);
        Derivatives { cache }
    }

    fn get(&mut self, gamma: &[u8]) -> RationalCoeff {
        if let Some(c) = self.cache.get(gamma) {
            return c.clone();
        }
        let k = gamma
            .iter()
            .position(|&g| g > 0)
            .expect("zero index is cached");
        let mut lower = gamma.to_vec();
        lower[k] -= 1;
        let base = self.get(&lower);
        let d = if base.is_zero() { base } else { base.deriv(k) };
        self.cache.insert(gamma.to_vec(), d.clone());
        d
    }
}

fn sub_indices(alpha: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|g| {
                (0..=a).map(move |t| {
                    let mut h = g.clone();
                    h.push(t);
                    h
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorExpr {
    n: usize,
    terms: BTreeMap<Key, RationalCoeff>,
}

fn binomial(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, t| acc * (n as i64 - t) / (t + 1))
}

impl OperatorExpr {
    pub fn zero(n: usize) -> Self {
        OperatorExpr {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(n: usize, coeff: RationalCoeff, alpha: Vec<u8>, perm: Perm) -> Self {
        let mut e = Self::zero(n);
        if !coeff.is_zero() {
            e.terms.insert(Key { alpha, perm }, coeff);
        }
        e
    }

    pub fn coeff(c: RationalCoeff) -> Self {
        let n = c.n();
        Self::term(n, c, vec![0; n], Perm::identity(n))
    }

    pub fn scalar(n: usize, s: Scalar) -> Self {
        Self::coeff(RationalCoeff::scalar(n, s))
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, int(1))
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::coeff(RationalCoeff::x(n, i))
    }

    pub fn p(n: usize, i: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = 1;
        Self::term(n, RationalCoeff::one(n), alpha, Perm::identity(n))
    }

    pub fn exchange(perm: Perm) -> Self {
        let n = perm.n();
        Self::term(n, RationalCoeff::one(n), vec![0; n], perm)
    }

    pub fn m(n: usize, i: usize, j: usize) -> Self {
        Self::exchange(Perm::transposition(n, i, j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &RationalCoeff)> {
        self.terms.iter()
    }

    fn collect(n: usize, parts: impl IntoIterator<Item = (Key, RationalCoeff)>) -> Self {
        let mut groups: BTreeMap<Key, Vec<RationalCoeff>> = BTreeMap::new();
        for (k, c) in parts {
            groups.entry(k).or_default().push(c);
        }
        let summed: Vec<(Key, RationalCoeff)> = groups
            .into_par_iter()
            .filter_map(|(k, cs)| {
                RationalCoeff::sum(cs.iter())
                    .filter(|c| !c.is_zero())
                    .map(|c| (k, c))
            })
            .collect();
        OperatorExpr {
            n,
            terms: summed.into_iter().collect(),
        }
    }

    pub fn sum<'a>(n: usize, items: impl IntoIterator<Item = &'a OperatorExpr>) -> Self {
        Self::collect(
            n,
            items
                .into_iter()
                .flat_map(|e| e.terms.iter().map(|(k, c)| (k.clone(), c.clone())))
                .collect::<Vec<_>>(),
        )
    }

    pub fn add(&self, o: &OperatorExpr) -> Self {
        Self::sum(self.n, [self, o])
    }

    pub fn neg(&self) -> Self {
        OperatorExpr {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &OperatorExpr) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.scale(s)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        OperatorExpr { n: self.n, terms }
    }

    /// Left multiplication by a function of the coordinates.
    pub fn left_mul(&self, c: &RationalCoeff) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, t)| (k.clone(), c.mul(t)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        OperatorExpr { n: self.n, terms }
    }

    /// Normal-ordered product, using p^α c = Σ_γ C(α,γ) (−iħ)^{|γ|} (∂^γ c) p^{α−γ},
    /// M_σ c = c^σ M_σ and M_σ p_i = p_{σ(i)} M_σ.
    pub fn mul(&self, o: &OperatorExpr) -> Self {
        let n = self.n;
        let nv = n + NPARAM;
        let mut by_perm: BTreeMap<&Perm, Vec<(&Key, &RationalCoeff)>> = BTreeMap::new();
        for (k, c) in &self.terms {
            by_perm.entry(&k.perm).or_default().push((k, c));
        }
        let jobs: Vec<(&Perm, &Vec<(&Key, &RationalCoeff)>, &Key, &RationalCoeff)> = by_perm
            .iter()
            .flat_map(|(sigma, lefts)| o.terms.iter().map(move |(k2, c2)| (*sigma, lefts, k2, c2)))
            .collect();
        let parts: Vec<(Key, RationalCoeff)> = jobs
            .par_iter()
            .flat_map_iter(|&(sigma, lefts, k2, c2)| {
                let mut derivs = Derivatives::new(c2.permute(sigma));
                let mut beta = vec![0u8; n];
                for i in 0..n {
                    beta[sigma.apply(i)] = k2.alpha[i];
                }
                let perm = sigma.compose(&k2.perm);
                let mut out = Vec::new();
                for (k1, c1) in lefts.iter() {
                    for gamma in sub_indices(&k1.alpha) {
                        let d = derivs.get(&gamma);
                        if d.is_zero() {
                            continue;
                        }
                        let order: usize = gamma.iter().map(|&g| g as usize).sum();
                        let b: i64 = k1
                            .alpha
                            .iter()
                            .zip(&gamma)
                            .map(|(&a, &g)| binomial(a, g))
                            .product();
                        let factor = Poly::monomial(
                            nv,
                            &[(n + HBAR, order as u8)],
                            minus_i_pow(order) * int(b),
                        );
                        let alpha: Vec<u8> = k1
                            .alpha
                            .iter()
                            .zip(&gamma)
                            .zip(&beta)
                            .map(|((a, g), b)| a - g + b)
                            .collect();
                        out.push((
                            Key {
                                alpha,
                                perm: perm.clone(),
                            },
                            c1.mul(&d.mul_poly(&factor)),
                        ));
                    }
                }
                out
            })
            .collect();
        Self::collect(n, parts)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn commutator(&self, o: &OperatorExpr) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Hermitian conjugate: (c p^α M_σ)† = M_{σ⁻¹} p^α c̄.
    pub fn dagger(&self) -> Self {
        let n = self.n;
        let parts: Vec<OperatorExpr> = self
            .terms
            .par_iter()
            .map(|(k, c)| {
                let pa = Self::term(n, RationalCoeff::one(n), k.alpha.clone(), Perm::identity(n));
                Self::exchange(k.perm.inverse()).mul(&pa.mul(&Self::coeff(c.conj())))
            })
            .collect();
        Self::sum(n, &parts)
    }

    /// Replaces every right factor M_σ by ζ^{parity(σ)}, so that
    /// e P_ζ = project(e, ζ) P_ζ.
    pub fn project(&self, zeta: i64) -> Self {
        let n = self.n;
        Self::collect(
            n,
            self.terms
                .iter()
                .map(|(k, c)| {
                    let s = if zeta < 0 { k.perm.parity() } else { 1 };
                    (
                        Key {
                            alpha: k.alpha.clone(),
                            perm: Perm::identity(n),
                        },
                        if s < 0 { c.neg() } else { c.clone() },
                    )
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_exchange_free(&self) -> bool {
        self.terms.keys().all(|k| k.perm.is_identity())
    }

    /// Relabels particles by σ: x_i → x_{σ(i)}, p_i → p_{σ(i)}, M_τ → M_{στσ⁻¹}.
    pub fn relabel(&self, sigma: &Perm) -> Self {
        let n = self.n;
        let inv = sigma.inverse();
        Self::collect(
            n,
            self.terms
                .iter()
                .map(|(k, c)| {
                    let mut alpha = vec![0u8; n];
                    for i in 0..n {
                        alpha[sigma.apply(i)] = k.alpha[i];
                    }
                    let perm = sigma.compose(&k.perm).compose(&inv);
                    (Key { alpha, perm }, c.permute(sigma))
                })
                .collect::<Vec<_>>(),
        )
    }

    fn momentum_string(alpha: &[u8]) -> String {
        let parts: Vec<String> = alpha
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("p{}", i + 1)
                } else {
                    format!("p{}^{}", i + 1, a)
                }
            })
            .collect();
        parts.join("*")
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = format!("[{}]", c.render());
                let p = Self::momentum_string(&k.alpha);
                if !p.is_empty() {
                    s.push(' ');
                    s.push_str(&p);
                }
                if !k.perm.is_identity() {
                    s.push(' ');
                    s.push_str(&k.perm.to_string());
                }
                s
            })
            .collect();
        lines.join("\n+ ")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                json!({
                    "coeff": c.render(),
                    "p": k.alpha,
                    "perm": k.perm.map().iter().map(|v| v + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "N": self.n, "terms": terms })
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::imag_unit;

    #[test]
    fn canonical_commutator() {
        let n = 1;
        let e = OperatorExpr::p(n, 0).mul(&OperatorExpr::x(n, 0));
        let hbar = RationalCoeff::param(n, HBAR);
        let expected = OperatorExpr::x(n, 0)
            .mul(&OperatorExpr::p(n, 0))
            .sub(&OperatorExpr::coeff(hbar.scale(&imag_unit())));
        assert_eq!(e, expected);
        let c = OperatorExpr::x(n, 0).commutator(&OperatorExpr::p(n, 0));
        assert_eq!(
            c,
            OperatorExpr::coeff(RationalCoeff::param(n, HBAR).scale(&imag_unit()))
        );
    }

    #[test]
    fn exchange_moves_coordinates() {
        let n = 2;
        let e = OperatorExpr::m(n, 0, 1).mul(&OperatorExpr::x(n, 0));
        assert_eq!(e, OperatorExpr::x(n, 1).mul(&OperatorExpr::m(n, 0, 1)));
        let e = OperatorExpr::m(n, 0, 1).mul(&OperatorExpr::m(n, 0, 1));
        assert_eq!(e, OperatorExpr::one(n));
    }

    #[test]
    fn dagger_is_involution() {
        let n = 2;
        let a = OperatorExpr::p(n, 0)
            .mul(&OperatorExpr::x(n, 1))
            .mul(&OperatorExpr::m(n, 0, 1))
            .scale(&imag_unit())
            .add(
                &OperatorExpr::x(n, 0)
                    .mul(&OperatorExpr::p(n, 1))
                    .mul(&OperatorExpr::p(n, 1)),
            );
        assert_eq!(a.dagger().dagger(), a);
        assert_eq!(OperatorExpr::p(n, 0).dagger(), OperatorExpr::p(n, 0));
    }

    #[test]
    fn projection_substitutes_parity() {
        let n = 3;
        let m = OperatorExpr::m(n, 0, 1);
        assert_eq!(m.project(1), OperatorExpr::one(n));
        assert_eq!(m.project(-1), OperatorExpr::one(n).neg());
        let c = OperatorExpr::exchange(Perm::three_cycle(n, 0, 1, 2));
        assert_eq!(c.project(-1), OperatorExpr::one(n));
    }
}
