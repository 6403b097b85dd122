//! Polynomials in `x_1, …, x_n`, Demazure operators, the Schubert-type
//! basis `b_w` and the idempotent `e_n` of the nil Hecke algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qhalg::{QHAlgebra, QHElement};
use crate::qring::{qfact, LaurentPoly};
use crate::rootdata::{Permutation, QPlus, Quiver, Word};

/// A polynomial in `nvars` commuting variables with integer coefficients.
/// Variables are numbered from 1 in the public API; exponent vectors are
/// indexed from 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    coeffs: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    /// The variable `x_k`.
    pub fn var(k: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k - 1] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        p.add_term(exps, &c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, &c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> + '_ {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.coeffs.get(exps).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: Vec<u32>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        Self {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The common degree `2 Σ m_k` of all terms, if homogeneous; zero has
    /// no degree.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.coeffs.keys().map(|e| 2 * e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// `t_k(f)`: exchanges `x_k` and `x_{k+1}`.
    pub fn swap_vars(&self, k: usize) -> Self {
        Self {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(k - 1, k);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Applies a permutation to the variables: `x_j -> x_{w(j)}`.
    pub fn permute_vars(&self, w: &Permutation) -> Self {
        Self {
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; e.len()];
                    for (j, &m) in e.iter().enumerate() {
                        out[w.apply(j)] = m;
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient by `x_k - x_{k+1}` using lexicographic long division.
    pub fn div_by_difference(&self, k: usize) -> Result<Self> {
        let mut rem = self.clone();
        let mut quo = Self::zero(self.nvars);
        while let Some((lead, c)) = rem.coeffs.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if lead[k - 1] == 0 {
                return Err(Error::NotDivisible(format!("{self} by x{k} - x{}", k + 1)));
            }
            let mut qe = lead.clone();
            qe[k - 1] -= 1;
            let mut other = qe.clone();
            other[k] += 1;
            rem.add_term(lead, &-&c);
            rem.add_term(other, &c);
            quo.add_term(qe, &c);
        }
        Ok(quo)
    }

    /// Demazure operator `∂_k` by exact division of `t_k(f) - f`.
    pub fn demazure_by_division(&self, k: usize) -> Result<Self> {
        (&self.swap_vars(k) - self).div_by_difference(k)
    }
}

/// `∂_k(x_k^a x_{k+1}^b)` summed over the terms of `f`, via the closed form
/// of the quotient of `x_k^b x_{k+1}^a - x_k^a x_{k+1}^b` by `x_k - x_{k+1}`.
pub fn demazure(k: usize, f: &MultiPoly) -> MultiPoly {
    assert!(k >= 1 && k < f.nvars, "Demazure index {k} out of range");
    let mut out = MultiPoly::zero(f.nvars);
    for (e, c) in &f.coeffs {
        let (a, b) = (e[k - 1], e[k]);
        if a == b {
            continue;
        }
        let (lo, hi, sign) = if a < b { (a, b, c.clone()) } else { (b, a, -c) };
        for t in 0..hi - lo {
            let mut m = e.clone();
            m[k - 1] = lo + t;
            m[k] = hi - 1 - t;
            out.add_term(m, &sign);
        }
    }
    out
}

/// `∂_w = ∂_{i_1} ⋯ ∂_{i_k}` along the canonical reduced word of `w`.
pub fn demazure_w(w: &Permutation, f: &MultiPoly) -> MultiPoly {
    w.reduced_word()
        .iter()
        .rev()
        .fold(f.clone(), |acc, &k| demazure(k, &acc))
}

/// `x_2 x_3^2 ⋯ x_n^{n-1}`.
pub fn staircase_monomial(n: usize) -> MultiPoly {
    MultiPoly::monomial((0..n as u32).collect(), 1)
}

/// `b_w = ∂_w(x_2 x_3^2 ⋯ x_n^{n-1})` for every `w ∈ S_n`.
pub fn basis_b(n: usize) -> BTreeMap<Permutation, MultiPoly> {
    let top = staircase_monomial(n);
    Permutation::all(n)
        .into_iter()
        .map(|w| {
            let b = demazure_w(&w, &top);
            (w, b)
        })
        .collect()
}

/// The single-vertex quiver whose quiver Hecke algebras are nil Hecke algebras.
pub fn nil_quiver() -> Quiver {
    Quiver::new(vec!["1".into()], &[]).expect("one vertex")
}

/// The nil Hecke algebra `NH_n` as the quiver Hecke algebra `H_{nα}`.
pub fn nil_algebra(n: usize) -> QHAlgebra {
    QHAlgebra::new(nil_quiver(), QPlus(vec![n as u32]))
}

/// `e_n = x_2 x_3^2 ⋯ x_n^{n-1} τ_{w_{[1,n]}}`.
pub fn nil_en(n: usize) -> QHElement {
    let alg = nil_algebra(n);
    alg.monomial(
        Word(vec![0; n]),
        Permutation::longest(n),
        (0..n as u32).collect(),
        LaurentPoly::one(),
    )
}

/// Action of an element of `NH_n` on `Pol_n`: `τ_k` acts by `∂_k` and `x_k`
/// by multiplication. Coefficients must be integers.
pub fn nh_act(a: &QHElement, f: &MultiPoly) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(f.nvars);
    for (m, c) in a.terms() {
        let c = c
            .as_constant()
            .ok_or_else(|| Error::NotDivisible(format!("coefficient {c} is not an integer")))?;
        let g = demazure_w(&m.perm, f).mul_monomial(&m.exps);
        out = &out + &g.scale(&c);
    }
    Ok(out)
}

/// `Σ_w q^{deg b_w}`, which should equal `q^{n(n-1)/2} [n]!`.
pub fn b_degree_series(n: usize) -> LaurentPoly {
    let mut s = LaurentPoly::zero();
    for b in basis_b(n).values() {
        s.add_term(b.degree().expect("b_w is homogeneous") as i64, &BigInt::one());
    }
    s
}

/// `q^{n(n-1)/2} [n]!`.
pub fn b_degree_target(n: usize) -> LaurentPoly {
    qfact(n as i64).expect("n >= 0").shift((n * (n.saturating_sub(1)) / 2) as i64)
}

fn partitions_into(d: u32, parts: usize, max: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d.min(max)).rev() {
        for mut rest in partitions_into(d - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Monomial symmetric polynomials of polynomial degree `d` in `n` variables.
pub fn monomial_symmetric(n: usize, d: u32) -> Vec<MultiPoly> {
    partitions_into(d, n, d)
        .into_iter()
        .map(|lam| {
            let mut p = MultiPoly::zero(n);
            for w in Permutation::all(n) {
                let mut e = vec![0; n];
                for (j, &m) in lam.iter().enumerate() {
                    e[w.apply(j)] = m;
                }
                p.coeffs.insert(e, BigInt::one());
            }
            p
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Verifies that `{b_w}` is a basis of `Pol_n` over the symmetric
/// polynomials up to polynomial degree `n(n-1)`: in each degree the
/// products `m_λ b_w` are linearly independent (rank modulo a large prime)
/// and their number equals the dimension of that graded piece.
pub fn check_sym_basis(n: usize) -> Result<()> {
    let bs = basis_b(n);
    let top = (n * n.saturating_sub(1)) as u32;
    for d in 0..=top {
        let mut vectors: Vec<MultiPoly> = Vec::new();
        for b in bs.values() {
            let db = b.degree().unwrap_or(0) / 2;
            if db > d {
                continue;
            }
            for m in monomial_symmetric(n, d - db) {
                vectors.push(&m * b);
            }
        }
        let expected = binomial(d as u64 + n as u64 - 1, n as u64 - 1) as usize;
        if vectors.len() != expected {
            return Err(Error::Verification(format!(
                "degree {d}: {} products for a space of dimension {expected}",
                vectors.len()
            )));
        }
        let rank = crate::linalg::rank_mod_p(&vectors);
        if rank != expected {
            return Err(Error::Verification(format!(
                "degree {d}: products have rank {rank}, expected {expected}"
            )));
        }
    }
    Ok(())
}

/// Checks `e_n b_id = b_id` and `e_n b_w = 0` for `w ≠ id`.
pub fn check_en_projection(n: usize) -> Result<()> {
    let en = nil_en(n);
    for (w, b) in basis_b(n) {
        let image = nh_act(&en, &b)?;
        let expected = if w.is_identity() { b.clone() } else { MultiPoly::zero(n) };
        if image != expected {
            return Err(Error::Verification(format!("e_{n} b_{w} = {image}")));
        }
    }
    Ok(())
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

pub(crate) fn fmt_monomial(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(j, &m)| if m == 1 { format!("x{}", j + 1) } else { format!("x{}^{m}", j + 1) })
        .collect();
    parts.join(" ")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mono = fmt_monomial(e);
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mono.is_empty(), abs.to_i64() == Some(1)) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(k: usize, n: usize) -> MultiPoly {
        MultiPoly::var(k, n)
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(demazure(1, &x(2, 2)), MultiPoly::one(2));
        assert_eq!(demazure(1, &x(1, 2)), -&MultiPoly::one(2));
        assert!(demazure(1, &(&x(1, 2) * &x(2, 2))).is_zero());
    }

    #[test]
    fn demazure_w_examples() {
        let f = MultiPoly::from_terms(3, [(vec![1, 2, 0], 3), (vec![0, 0, 2], -1)]);
        assert_eq!(demazure_w(&Permutation::identity(3), &f), f);
        assert_eq!(demazure_w(&Permutation::longest(2), &x(2, 2)), MultiPoly::one(2));
        let g = MultiPoly::monomial(vec![0, 1, 2], 1);
        assert_eq!(demazure_w(&Permutation::longest(3), &g), MultiPoly::one(3));
    }

    #[test]
    fn basis_b_examples() {
        let b2 = basis_b(2);
        assert_eq!(b2[&Permutation::identity(2)], x(2, 2));
        assert_eq!(b2[&Permutation::transposition(1, 2)], MultiPoly::one(2));
        let b3 = basis_b(3);
        assert_eq!(b3[&Permutation::longest(3)], MultiPoly::one(3));
        assert_eq!(b3[&Permutation::identity(3)].degree(), Some(6));
        for n in 1..=4 {
            for (w, b) in basis_b(n) {
                assert_eq!(b.degree(), Some((n * (n - 1) - 2 * w.length()) as u32));
            }
        }
    }

    #[test]
    fn b_degrees_match_factorial() {
        for n in 1..=5 {
            assert_eq!(b_degree_series(n), b_degree_target(n));
        }
    }

    #[test]
    fn sym_basis_small() {
        for n in 1..=4 {
            check_sym_basis(n).unwrap();
        }
    }

    #[test]
    fn en_examples() {
        let e1 = nil_en(1);
        assert_eq!(e1, nil_algebra(1).one());
        let alg = nil_algebra(2);
        let e2 = nil_en(2);
        let expect = alg.mul(&alg.x(2), &alg.tau(1)).unwrap();
        assert_eq!(e2, expect);
        assert_eq!(alg.mul(&e2, &e2).unwrap(), e2);
    }

    #[test]
    fn en_idempotent_and_projection() {
        for n in 1..=4 {
            let alg = nil_algebra(n);
            let e = nil_en(n);
            assert_eq!(alg.mul(&e, &e).unwrap(), e, "n = {n}");
            check_en_projection(n).unwrap();
        }
    }

    #[test]
    fn nh_action_is_a_module() {
        // (τ_1 x_1) acting equals τ_1 acting after x_1
        let alg = nil_algebra(3);
        let f = MultiPoly::from_terms(3, [(vec![2, 0, 1], 1), (vec![0, 1, 1], 2)]);
        let a = alg.tau(1);
        let b = alg.x(1);
        let ab = alg.mul(&a, &b).unwrap();
        assert_eq!(nh_act(&ab, &f).unwrap(), nh_act(&a, &nh_act(&b, &f).unwrap()).unwrap());
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, n), -3i64..=3), 0..6)
            .prop_map(move |ts| MultiPoly::from_terms(n, ts))
    }

    proptest! {
        #[test]
        fn closed_form_matches_division(f in arb_poly(4), k in 1usize..4) {
            prop_assert_eq!(demazure(k, &f), f.demazure_by_division(k).unwrap());
        }

        #[test]
        fn demazure_squares_to_zero(f in arb_poly(4), k in 1usize..4) {
            prop_assert!(demazure(k, &demazure(k, &f)).is_zero());
        }

        #[test]
        fn twisted_leibniz(f in arb_poly(3), g in arb_poly(3), k in 1usize..3) {
            let lhs = demazure(k, &(&f * &g));
            let rhs = &(&demazure(k, &f) * &g) + &(&f.swap_vars(k) * &demazure(k, &g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn braid_relation(f in arb_poly(4), k in 1usize..3) {
            let a = demazure(k, &demazure(k + 1, &demazure(k, &f)));
            let b = demazure(k + 1, &demazure(k, &demazure(k + 1, &f)));
            prop_assert_eq!(a, b);
        }
    }
}
