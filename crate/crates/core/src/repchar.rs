//! Homogeneous representations, cuspidal and proper standard characters,
//! and graded decomposition numbers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fshuffle::{Character, FAlgebra};
use crate::linalg;
use crate::pbwcanon::dual_pbw;
use crate::qhalg::{braid_correction, q_poly};
use crate::qring::{LaurentPoly, RatFn};
use crate::rootdata::{ConvexOrder, DynkinKind, KostantPartition, PositiveRoot, QPlus, Quiver, Word};

/// The `~`-class of a word: closure under swapping adjacent letters `ij`
/// with `α_i·α_j = 0`.
pub fn word_class(quiver: &Quiver, i: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([i.clone()]);
    let mut queue = VecDeque::from([i.clone()]);
    while let Some(w) = queue.pop_front() {
        for k in 1..w.len() {
            let (a, b) = (w.0[k - 1], w.0[k]);
            if a != b && quiver.cartan(a, b) == 0 {
                let s = w.swapped(k);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
    }
    seen
}

/// Whether every word in the class has distinct adjacent letters and no
/// pattern `iji` with `α_i·α_j = -1`.
pub fn is_homogeneous(quiver: &Quiver, i: &Word) -> bool {
    word_class(quiver, i).iter().all(|w| {
        w.0.windows(2).all(|p| p[0] != p[1])
            && w.0
                .windows(3)
                .all(|t| t[0] != t[2] || quiver.cartan(t[0], t[1]) != -1)
    })
}

/// A square integer matrix.
pub type Mat = Vec<Vec<i64>>;

fn mat_zero(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

fn mat_id(n: usize) -> Mat {
    (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = mat_zero(n);
    for r in 0..n {
        for k in 0..n {
            if a[r][k] != 0 {
                for c in 0..n {
                    out[r][c] += a[r][k] * b[k][c];
                }
            }
        }
    }
    out
}

fn mat_lin(a: &Mat, ca: i64, b: &Mat, cb: i64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| ca * u + cb * v).collect())
        .collect()
}

fn mat_scale(a: &Mat, c: i64) -> Mat {
    a.iter().map(|r| r.iter().map(|x| c * x).collect()).collect()
}

/// A homogeneous irreducible module `L(𝐢)`, concentrated in degree zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousModule {
    pub alpha: QPlus,
    /// Basis vectors `v_𝐣`, one for each word in the class.
    pub basis: Vec<Word>,
    /// `1_𝐣` for every word `𝐣` of weight `α` that lies in the class.
    pub idempotents: BTreeMap<Word, Mat>,
    /// `x_1, …, x_n`.
    pub x: Vec<Mat>,
    /// `τ_1, …, τ_{n-1}`.
    pub tau: Vec<Mat>,
}

impl HomogeneousModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ_{𝐣 ~ 𝐢} 𝐣`.
    pub fn character(&self) -> Character {
        Character::from_terms(self.basis.iter().map(|w| (w.clone(), LaurentPoly::one())))
    }

    fn idem(&self, w: &Word) -> Mat {
        self.idempotents.get(w).cloned().unwrap_or_else(|| mat_zero(self.dim()))
    }

    /// Checks every defining relation of `H_α` on this module.
    pub fn verify(&self, quiver: &Quiver) -> Result<()> {
        let d = self.dim();
        let n = self.alpha.height();
        let fail = |s: String| Err(Error::Verification(s));
        let words = crate::rootdata::words_of_weight(&self.alpha);
        let mut sum = mat_zero(d);
        for a in &words {
            let ea = self.idem(a);
            sum = mat_lin(&sum, 1, &ea, 1);
            for b in &words {
                let expect = if a == b { ea.clone() } else { mat_zero(d) };
                if mat_mul(&ea, &self.idem(b)) != expect {
                    return fail(format!("idempotents {a:?}, {b:?}"));
                }
            }
        }
        if sum != mat_id(d) {
            return fail("idempotents do not sum to 1".into());
        }
        for a in &words {
            let ea = self.idem(a);
            for k in 1..=n {
                let xk = &self.x[k - 1];
                if mat_mul(xk, &ea) != mat_mul(&ea, xk) {
                    return fail(format!("x_{k} with 1_{a:?}"));
                }
                for l in 1..=n {
                    if mat_mul(xk, &self.x[l - 1]) != mat_mul(&self.x[l - 1], xk) {
                        return fail(format!("x_{k} x_{l}"));
                    }
                }
            }
            for k in 1..n {
                let t = &self.tau[k - 1];
                let sa = a.swapped(k);
                if mat_mul(t, &ea) != mat_mul(&self.idem(&sa), t) {
                    return fail(format!("τ_{k} with 1_{a:?}"));
                }
                for l in 1..=n {
                    let tl = if l == k {
                        k + 1
                    } else if l == k + 1 {
                        k
                    } else {
                        l
                    };
                    let lhs = mat_mul(&mat_lin(&mat_mul(t, &self.x[l - 1]), 1, &mat_mul(&self.x[tl - 1], t), -1), &ea);
                    let c = if a.0[k - 1] == a.0[k] {
                        i64::from(l == k + 1) - i64::from(l == k)
                    } else {
                        0
                    };
                    if lhs != mat_scale(&ea, c) {
                        return fail(format!("τ_{k} x_{l} on {a:?}"));
                    }
                }
                // the x's act by zero, so polynomial coefficients reduce to
                // their constant terms
                let q0 = constant_term(&q_poly(quiver, a.0[k - 1], a.0[k], k, n));
                if mat_mul(&mat_mul(t, t), &ea) != mat_scale(&ea, q0) {
                    return fail(format!("τ_{k}^2 on {a:?}"));
                }
                for l in 1..n {
                    if k.abs_diff(l) > 1 {
                        let tl = &self.tau[l - 1];
                        if mat_mul(t, tl) != mat_mul(tl, t) {
                            return fail(format!("τ_{k} τ_{l}"));
                        }
                    }
                }
                if k + 1 < n {
                    let t2 = &self.tau[k];
                    let lhs = mat_lin(&mat_mul(&mat_mul(t2, t), t2), 1, &mat_mul(&mat_mul(t, t2), t), -1);
                    let c = constant_term(&braid_correction(quiver, a, k, n));
                    if mat_mul(&lhs, &ea) != mat_scale(&ea, c) {
                        return fail(format!("braid relation at {k} on {a:?}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn constant_term(p: &crate::nilhecke::MultiPoly) -> i64 {
    let n = p.terms().next().map_or(0, |(e, _)| e.len());
    p.coeff(&vec![0; n]).to_i64().expect("small coefficient")
}

/// Builds `L(𝐢)` and verifies all relations.
pub fn build_homogeneous(quiver: &Quiver, i: &Word) -> Result<HomogeneousModule> {
    if !is_homogeneous(quiver, i) {
        return Err(Error::NotHomogeneous(quiver.format_word(i)));
    }
    let basis: Vec<Word> = word_class(quiver, i).into_iter().collect();
    let d = basis.len();
    let n = i.len();
    let index: BTreeMap<&Word, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let idempotents = basis
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let mut m = mat_zero(d);
            m[k][k] = 1;
            (w.clone(), m)
        })
        .collect();
    let tau = (1..n)
        .map(|k| {
            let mut m = mat_zero(d);
            for (c, w) in basis.iter().enumerate() {
                if quiver.cartan(w.0[k - 1], w.0[k]) == 0 {
                    m[index[&w.swapped(k)]][c] = 1;
                }
            }
            m
        })
        .collect();
    let module = HomogeneousModule {
        alpha: i.weight(quiver.rank()),
        basis,
        idempotents,
        x: vec![mat_zero(d); n],
        tau,
    };
    module.verify(quiver)?;
    Ok(module)
}

/// The character of the cuspidal module `L(α)`, i.e. of `r*_α`.
pub fn cuspidal_character(f: &FAlgebra, alpha: &PositiveRoot, order: &ConvexOrder) -> Result<Character> {
    let lam = KostantPartition::new(vec![alpha.clone()], order)?;
    dual_pbw(f, &lam, order)?
        .character()
        .ok_or_else(|| Error::Verification("cuspidal character is not a character".into()))
}

/// `q^{s_λ}` times the shuffle product of the cuspidal characters of the
/// parts of `λ`.
pub fn proper_standard_character(f: &FAlgebra, lam: &KostantPartition, order: &ConvexOrder) -> Result<Character> {
    let lam = KostantPartition::new(lam.parts.clone(), order)?;
    let mut ch = Character::word(Word::default());
    for p in &lam.parts {
        ch = ch.shuffle(&cuspidal_character(f, p, order)?, f.quiver());
    }
    Ok(ch.scale(&LaurentPoly::monomial(1, lam.s_lambda())))
}

/// Writes `ch` as `Σ_μ c_μ b*_μ` for the given basis of characters.
pub fn decompose(
    ch: &Character,
    basis: &BTreeMap<KostantPartition, Character>,
) -> Result<BTreeMap<KostantPartition, LaurentPoly>> {
    let keys: Vec<&KostantPartition> = basis.keys().collect();
    let mut words: BTreeSet<Word> = ch.iter().map(|(w, _)| w.clone()).collect();
    for c in basis.values() {
        words.extend(c.iter().map(|(w, _)| w.clone()));
    }
    let a: Vec<Vec<RatFn>> = words
        .iter()
        .map(|w| keys.iter().map(|k| RatFn::from_poly(basis[*k].get(w))).collect())
        .collect();
    let b: Vec<RatFn> = words.iter().map(|w| RatFn::from_poly(ch.get(w))).collect();
    if linalg::rank(&a) != keys.len() {
        return Err(Error::Verification("basis characters are linearly dependent".into()));
    }
    let sol = linalg::solve(&a, &b)?;
    let mut out = BTreeMap::new();
    let mut recon = Character::new();
    for (k, v) in keys.iter().zip(sol) {
        let p = v
            .as_laurent()
            .cloned()
            .ok_or_else(|| Error::Inconsistent(format!("coefficient {v} is not a Laurent polynomial")))?;
        if !p.is_zero() {
            recon = recon.add(&basis[*k].scale(&p));
            out.insert((*k).clone(), p);
        }
    }
    if recon != *ch {
        return Err(Error::Inconsistent("character is not in the span".into()));
    }
    Ok(out)
}

/// `p(𝐢) = Σ_{j<k, i_j<i_k} α_{i_j}·α_{i_k}` modulo 2.
pub fn word_parity(quiver: &Quiver, w: &Word) -> i64 {
    let mut p = 0i64;
    for j in 0..w.len() {
        for k in j + 1..w.len() {
            if w.0[j] < w.0[k] {
                p += quiver.cartan(w.0[j], w.0[k]);
            }
        }
    }
    p.rem_euclid(2)
}

/// Whether all exponents `e` in `ch` have `e - p(𝐢)` of one parity.
pub fn parity_check(quiver: &Quiver, ch: &Character) -> bool {
    let mut class = None;
    for (w, p) in ch.iter() {
        let pw = word_parity(quiver, w);
        for (e, _) in p.terms() {
            let c = (e - pw).rem_euclid(2);
            if *class.get_or_insert(c) != c {
                return false;
            }
        }
    }
    true
}

/// The segments `[i, j]` of a type A Kostant partition, as vertex index
/// ranges along the path.
fn segments(quiver: &Quiver, lam: &KostantPartition) -> Result<Vec<(usize, usize)>> {
    let comps = quiver.classify()?;
    if comps.len() != 1 || !matches!(comps[0].kind, DynkinKind::A(_)) {
        return Err(Error::Quiver("skew-hooks need a connected type A quiver".into()));
    }
    let path = &comps[0].vertices;
    lam.parts
        .iter()
        .map(|p| {
            let pos: Vec<usize> = (0..path.len()).filter(|&k| p.0[path[k]] > 0).collect();
            match (pos.first(), pos.last()) {
                (Some(&a), Some(&b)) => Ok((a, b)),
                _ => Err(Error::IndexOutOfRange("empty part".into())),
            }
        })
        .collect()
}

/// Draws the skew-hook (or general skew diagram) whose rows, read from the
/// top, are the segments of `λ`; each box shows its content.
pub fn skew_hook(quiver: &Quiver, lam: &KostantPartition) -> Result<String> {
    let segs = segments(quiver, lam)?;
    let comps = quiver.classify()?;
    let path = &comps[0].vertices;
    // the box of content c in row r (counted from the top) sits in column c + r
    let cols: Vec<i64> = segs
        .iter()
        .enumerate()
        .map(|(k, &(a, _))| (a + k) as i64)
        .collect();
    let min = cols.iter().copied().min().unwrap_or(0);
    let width = segs
        .iter()
        .map(|&(a, b)| quiver.name(path[a]).len().max(quiver.name(path[b]).len()))
        .max()
        .unwrap_or(1);
    let mut lines = Vec::new();
    for (k, &(a, b)) in segs.iter().enumerate() {
        let mut s = " ".repeat((cols[k] - min) as usize * (width + 2));
        for &v in &path[a..=b] {
            s.push_str(&format!("[{:>width$}]", quiver.name(v)));
        }
        lines.push(s);
    }
    Ok(lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(parts: &[&[u32]]) -> KostantPartition {
        KostantPartition {
            parts: parts.iter().map(|p| QPlus(p.to_vec())).collect(),
        }
    }

    #[test]
    fn word_class_examples() {
        let q = Quiver::type_a(3);
        let w = |s: &str| q.parse_word(s).unwrap();
        let c: Vec<String> = word_class(&q, &w("231")).iter().map(|x| q.format_word(x)).collect();
        assert_eq!(c, ["213", "231"]);
        assert_eq!(word_class(&q, &w("123")).len(), 1);
        let a2 = Quiver::type_a(2);
        assert_eq!(word_class(&a2, &a2.parse_word("12").unwrap()).len(), 1);
    }

    #[test]
    fn homogeneous_examples() {
        let q = Quiver::type_a(2);
        let w = |s: &str| q.parse_word(s).unwrap();
        assert!(!is_homogeneous(&q, &w("11")));
        assert!(!is_homogeneous(&q, &w("121")));
        let a3 = Quiver::type_a(3);
        assert!(is_homogeneous(&a3, &a3.parse_word("231").unwrap()));
        let m = build_homogeneous(&q, &w("12")).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.character(), Character::word(w("12")));
        let m = build_homogeneous(&a3, &a3.parse_word("231").unwrap()).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.character().render_sum(&a3), "213 + 231");
        let aff = Quiver::affine_a1();
        let m = build_homogeneous(&aff, &aff.parse_word("01").unwrap()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(matches!(build_homogeneous(&q, &w("121")), Err(Error::NotHomogeneous(_))));
        assert!(!is_homogeneous(&a3, &a3.parse_word("1312").unwrap()));
        assert_eq!(build_homogeneous(&a3, &a3.parse_word("2132").unwrap()).unwrap().dim(), 2);
        // a double edge allows the pattern iji
        assert_eq!(build_homogeneous(&aff, &aff.parse_word("010").unwrap()).unwrap().dim(), 1);
    }

    #[test]
    fn cuspidal_and_standard() {
        let q = Quiver::type_a(2);
        let o = ConvexOrder::default_for(&q).unwrap();
        let f = FAlgebra::new(q.clone());
        assert_eq!(cuspidal_character(&f, &QPlus(vec![1, 1]), &o).unwrap().render_sum(&q), "12");
        assert_eq!(cuspidal_character(&f, &QPlus(vec![1, 0]), &o).unwrap().render_sum(&q), "1");
        let ch = proper_standard_character(&f, &kp(&[&[0, 1], &[1, 0]]), &o).unwrap();
        assert_eq!(ch.render_sum(&q), "(q)*12 + 21");
        let a3 = Quiver::type_a(3);
        let o3 = ConvexOrder::default_for(&a3).unwrap();
        let f3 = FAlgebra::new(a3.clone());
        assert_eq!(cuspidal_character(&f3, &QPlus(vec![1, 1, 1]), &o3).unwrap().render_sum(&a3), "123");
        let ch = proper_standard_character(&f3, &kp(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]), &o3).unwrap();
        assert!(ch.get(&a3.parse_word("321").unwrap()).is_one());
    }

    #[test]
    fn decompose_examples() {
        let q = Quiver::type_a(2);
        let o = ConvexOrder::default_for(&q).unwrap();
        let f = FAlgebra::new(q.clone());
        let basis = BTreeMap::from([
            (kp(&[&[1, 1]]), Character::word(q.parse_word("12").unwrap())),
            (kp(&[&[0, 1], &[1, 0]]), Character::word(q.parse_word("21").unwrap())),
        ]);
        let ch = proper_standard_character(&f, &kp(&[&[0, 1], &[1, 0]]), &o).unwrap();
        let d = decompose(&ch, &basis).unwrap();
        assert!(d[&kp(&[&[0, 1], &[1, 0]])].is_one());
        assert_eq!(d[&kp(&[&[1, 1]])], LaurentPoly::q());
        let bad = Character::word(q.parse_word("11").unwrap());
        assert!(decompose(&bad, &basis).is_err());
    }

    #[test]
    fn parity_examples() {
        let q = Quiver::type_a(2);
        let w = |s: &str| q.parse_word(s).unwrap();
        let ok = Character::from_terms([(w("12"), LaurentPoly::one()), (w("21"), LaurentPoly::q())]);
        assert!(parity_check(&q, &ok));
        let bad = Character::from_terms([(w("12"), LaurentPoly::one()), (w("21"), LaurentPoly::monomial(1, 2))]);
        assert!(!parity_check(&q, &bad));
        assert!(parity_check(&q, &Character::new()));
    }

    #[test]
    fn skew_hooks() {
        let q = Quiver::type_a(3);
        assert_eq!(skew_hook(&q, &kp(&[&[1, 1, 1]])).unwrap(), "[1][2][3]");
        assert_eq!(skew_hook(&q, &kp(&[&[0, 1, 1], &[1, 0, 0]])).unwrap(), "[2][3]\n[1]");
        assert_eq!(skew_hook(&q, &kp(&[&[0, 0, 1], &[1, 1, 0]])).unwrap(), "   [3]\n[1][2]");
        assert_eq!(skew_hook(&q, &kp(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])).unwrap(), "[3]\n[2]\n[1]");
    }
}
