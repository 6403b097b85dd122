//! The quiver Hecke algebra `H_α` in the normal form
//! `x_1^{m_1} ⋯ x_n^{m_n} τ_w 1_𝐢`, with multiplication by straightening.
//!
//! `τ_w` always means the product of `τ_k` along the canonical reduced word
//! of `w` (see [`Permutation::reduced_word`]). A monomial is stored with its
//! bottom word `𝐢`; its top word is `w(𝐢)`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nilhecke::{demazure, fmt_monomial, MultiPoly};
use crate::qring::LaurentPoly;
use crate::rootdata::{deg_w, words_of_weight, Permutation, QPlus, Quiver, Word};

/// The basis element `x^exps τ_perm 1_word`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub word: Word,
    pub perm: Permutation,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn top_word(&self) -> Word {
        self.perm.act_on_word(&self.word)
    }
}

/// An element of `H_α` with coefficients in `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct QHElement {
    weight: QPlus,
    terms: BTreeMap<Monomial, LaurentPoly>,
}

/// Degree of an element of `H_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

impl QHElement {
    pub fn zero(weight: QPlus) -> Self {
        Self {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> &QPlus {
        &self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &QHElement) -> Result<QHElement> {
        check_weights(&self.weight, &other.weight)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QHElement) -> Result<QHElement> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> QHElement {
        let mut out = QHElement::zero(self.weight.clone());
        for (m, d) in &self.terms {
            out.add_term(m.clone(), &(d * c));
        }
        out
    }

    /// Renders terms as `coef * x1^a x2^b tau[k1,k2] 1_(word)`, one per line.
    pub fn render(&self, quiver: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut lines = Vec::new();
        for (m, c) in &self.terms {
            let mut parts = vec![format!("({c})")];
            let mono = fmt_monomial(&m.exps);
            if !mono.is_empty() {
                parts.push(mono);
            }
            if !m.perm.is_identity() {
                let w: Vec<String> = m.perm.reduced_word().iter().map(|k| k.to_string()).collect();
                parts.push(format!("tau[{}]", w.join(",")));
            }
            parts.push(format!("1_({})", quiver.format_word(&m.word)));
            lines.push(parts.join(" "));
        }
        lines.join("\n")
    }
}

impl fmt::Debug for QHElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "QHElement{{")?;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(
                f,
                "({c}) x{:?} tau{:?} 1_{:?}",
                m.exps,
                m.perm.reduced_word(),
                m.word.0
            )?;
        }
        write!(f, "}}")
    }
}

fn check_weights(a: &QPlus, b: &QPlus) -> Result<()> {
    if a != b {
        return Err(Error::WeightMismatch(format!("{:?} vs {:?}", a.0, b.0)));
    }
    Ok(())
}

/// A factor in a product evaluated against a fixed idempotent.
#[derive(Clone, Debug)]
enum Factor {
    Tau(usize),
    Poly(MultiPoly),
}

/// Elements `Σ c x^m τ_w 1_𝐢` for one fixed bottom word, with integer
/// coefficients.
type Local = HashMap<(Permutation, Vec<u32>), BigInt>;

fn local_add(acc: &mut Local, key: (Permutation, Vec<u32>), c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        acc.remove(&key);
    }
}

fn local_poly_mul(f: &MultiPoly, e: &Local) -> Local {
    let mut out = Local::new();
    for ((w, m), c) in e {
        for (fe, fc) in f.terms() {
            let exps: Vec<u32> = m.iter().zip(fe).map(|(a, b)| a + b).collect();
            local_add(&mut out, (w.clone(), exps), &(c * fc));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MoveKind {
    Commute,
    /// `[a+1, a, a+1] -> [a, a+1, a]`
    BraidDown,
    /// `[a, a+1, a] -> [a+1, a, a+1]`
    BraidUp,
}

type Path = Arc<Vec<(usize, MoveKind)>>;

type PathCache = RwLock<HashMap<(Vec<usize>, Vec<usize>), Path>>;

fn path_cache() -> &'static PathCache {
    static CACHE: OnceLock<PathCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn apply_move(s: &[usize], p: usize, kind: MoveKind) -> Vec<usize> {
    let mut t = s.to_vec();
    match kind {
        MoveKind::Commute => t.swap(p, p + 1),
        MoveKind::BraidDown | MoveKind::BraidUp => {
            t[p] = s[p + 1];
            t[p + 1] = s[p];
            t[p + 2] = s[p + 1];
        }
    }
    t
}

/// Breadth-first search for a sequence of braid and commutation moves
/// turning one reduced word into another.
fn braid_path(start: &[usize], target: &[usize]) -> Path {
    let key = (start.to_vec(), target.to_vec());
    if let Some(p) = path_cache().read().unwrap().get(&key) {
        return p.clone();
    }
    let mut prev: HashMap<Vec<usize>, (Vec<usize>, usize, MoveKind)> = HashMap::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(s) = queue.pop_front() {
        if s == target {
            break;
        }
        let len = s.len();
        for p in 0..len.saturating_sub(1) {
            let mut cands = Vec::new();
            if s[p].abs_diff(s[p + 1]) >= 2 {
                cands.push(MoveKind::Commute);
            }
            if p + 2 < len && s[p] == s[p + 2] && s[p].abs_diff(s[p + 1]) == 1 {
                cands.push(if s[p] > s[p + 1] { MoveKind::BraidDown } else { MoveKind::BraidUp });
            }
            for kind in cands {
                let t = apply_move(&s, p, kind);
                if seen.insert(t.clone()) {
                    prev.insert(t.clone(), (s.clone(), p, kind));
                    queue.push_back(t);
                }
            }
        }
    }
    let mut moves = Vec::new();
    let mut cur = target.to_vec();
    while cur != start {
        let (s, p, kind) = prev
            .get(&cur)
            .cloned()
            .expect("reduced words of one permutation are braid-connected");
        moves.push((p, kind));
        cur = s;
    }
    moves.reverse();
    let path = Arc::new(moves);
    path_cache().write().unwrap().insert(key, path.clone());
    path
}

/// `q_{i,j}(x_k, x_{k+1})` in `n` variables.
pub fn q_poly(quiver: &Quiver, i: usize, j: usize, k: usize, n: usize) -> MultiPoly {
    if i == j {
        return MultiPoly::zero(n);
    }
    let u = MultiPoly::var(k, n);
    let v = MultiPoly::var(k + 1, n);
    let a = (&v - &u).pow(quiver.mult(i, j));
    let b = (&u - &v).pow(quiver.mult(j, i));
    &a * &b
}

/// The right-hand side of the braid relation at strands `a, a+1, a+2` for
/// the word `𝐣` below the crossing.
pub(crate) fn braid_correction(quiver: &Quiver, j: &Word, a: usize, n: usize) -> MultiPoly {
    let (ja, jb, jc) = (j.0[a - 1], j.0[a], j.0[a + 1]);
    if ja != jc || ja == jb {
        return MultiPoly::zero(n);
    }
    let c = quiver.mult(ja, jb) + quiver.mult(jb, ja);
    let sign = if quiver.mult(ja, jb).is_multiple_of(2) { 1 } else { -1 };
    let xa = MultiPoly::var(a, n);
    let xb = MultiPoly::var(a + 1, n);
    let xc = MultiPoly::var(a + 2, n);
    let big_a = &xa - &xb;
    let big_b = &xc - &xb;
    let mut out = MultiPoly::zero(n);
    for t in 0..c {
        out = &out + &(&big_a.pow(t) * &big_b.pow(c - 1 - t));
    }
    out.scale(&BigInt::from(sign))
}

type TauKey = (usize, Permutation, Word);

/// The quiver Hecke algebra `H_α` of a quiver.
pub struct QHAlgebra {
    quiver: Quiver,
    alpha: QPlus,
    n: usize,
    words: Vec<Word>,
    tau_cache: RwLock<HashMap<TauKey, Arc<Local>>>,
}

impl QHAlgebra {
    pub fn new(quiver: Quiver, alpha: QPlus) -> Self {
        assert_eq!(quiver.rank(), alpha.rank(), "weight rank differs from quiver rank");
        let n = alpha.height();
        let words = words_of_weight(&alpha);
        Self {
            quiver,
            alpha,
            n,
            words,
            tau_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn alpha(&self) -> &QPlus {
        &self.alpha
    }

    /// `ht(α)`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.0.iter().any(|&i| i >= self.quiver.rank()) || w.weight(self.quiver.rank()) != self.alpha {
            return Err(Error::WeightMismatch(format!(
                "word {:?} is not of weight {:?}",
                w.0, self.alpha.0
            )));
        }
        Ok(())
    }

    fn check_index(&self, k: usize, max: usize) -> Result<()> {
        if k == 0 || k > max {
            return Err(Error::IndexOutOfRange(format!("index {k} not in 1..={max}")));
        }
        Ok(())
    }

    pub fn monomial(&self, word: Word, perm: Permutation, exps: Vec<u32>, c: LaurentPoly) -> QHElement {
        let mut e = QHElement::zero(self.alpha.clone());
        e.add_term(Monomial { word, perm, exps }, &c);
        e
    }

    pub fn zero(&self) -> QHElement {
        QHElement::zero(self.alpha.clone())
    }

    pub fn one(&self) -> QHElement {
        let mut e = self.zero();
        for w in &self.words {
            e.add_term(
                Monomial {
                    word: w.clone(),
                    perm: Permutation::identity(self.n),
                    exps: vec![0; self.n],
                },
                &LaurentPoly::one(),
            );
        }
        e
    }

    /// The idempotent `1_𝐢`.
    pub fn idem(&self, word: &Word) -> Result<QHElement> {
        self.check_word(word)?;
        Ok(self.monomial(
            word.clone(),
            Permutation::identity(self.n),
            vec![0; self.n],
            LaurentPoly::one(),
        ))
    }

    /// `x_k = Σ_𝐢 x_k 1_𝐢`. Panics if `k` is out of range; see [`QHAlgebra::generator`].
    pub fn x(&self, k: usize) -> QHElement {
        self.generator(Generator::X(k)).expect("index in range")
    }

    /// `τ_k = Σ_𝐢 τ_k 1_𝐢`. Panics if `k` is out of range; see [`QHAlgebra::generator`].
    pub fn tau(&self, k: usize) -> QHElement {
        self.generator(Generator::Tau(k)).expect("index in range")
    }

    pub fn generator(&self, g: Generator) -> Result<QHElement> {
        match g {
            Generator::Idem(w) => self.idem(&w),
            Generator::X(k) => {
                self.check_index(k, self.n)?;
                let mut exps = vec![0; self.n];
                exps[k - 1] = 1;
                let mut e = self.zero();
                for w in &self.words {
                    e.add_term(
                        Monomial {
                            word: w.clone(),
                            perm: Permutation::identity(self.n),
                            exps: exps.clone(),
                        },
                        &LaurentPoly::one(),
                    );
                }
                Ok(e)
            }
            Generator::Tau(k) => {
                self.check_index(k, self.n.saturating_sub(1))?;
                let mut e = self.zero();
                for w in &self.words {
                    e.add_term(
                        Monomial {
                            word: w.clone(),
                            perm: Permutation::transposition(k, self.n),
                            exps: vec![0; self.n],
                        },
                        &LaurentPoly::one(),
                    );
                }
                Ok(e)
            }
        }
    }

    /// Degree of a basis monomial: `2|m| + deg(w; 𝐢)`.
    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        2 * m.exps.iter().map(|&e| e as i64).sum::<i64>() + deg_w(&self.quiver, &m.perm, &m.word)
    }

    pub fn degree(&self, a: &QHElement) -> Degree {
        let mut degs = a.terms.keys().map(|m| self.monomial_degree(m));
        match degs.next() {
            None => Degree::Zero,
            Some(d) if degs.all(|e| e == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// Normal form of `τ_k τ_w 1_𝐢`.
    fn tau_times(&self, k: usize, w: &Permutation, bottom: &Word) -> Arc<Local> {
        let key = (k, w.clone(), bottom.clone());
        if let Some(v) = self.tau_cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let n = self.n;
        let u = w.mul_simple_left(k);
        let mut out = Local::new();
        if w.left_ascent(k) {
            let mut start = vec![k];
            start.extend(w.reduced_word());
            let target = u.reduced_word();
            local_add(&mut out, (u, vec![0; n]), &BigInt::one());
            for (factors, sign) in self.path_corrections(&start, &target, bottom) {
                for (key, c) in self.eval_string(&factors, bottom) {
                    local_add(&mut out, key, &(c * sign));
                }
            }
        } else {
            let start = w.reduced_word();
            let mut target = vec![k];
            target.extend(u.reduced_word());
            let j = u.act_on_word(bottom);
            let qp = q_poly(&self.quiver, j.0[k - 1], j.0[k], k, n);
            for (e, c) in qp.terms() {
                local_add(&mut out, (u.clone(), e.clone()), c);
            }
            for (mut factors, sign) in self.path_corrections(&start, &target, bottom) {
                factors.insert(0, Factor::Tau(k));
                for (key, c) in self.eval_string(&factors, bottom) {
                    local_add(&mut out, key, &(c * sign));
                }
            }
        }
        let out = Arc::new(out);
        self.tau_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Lower terms produced when rewriting `τ_start 1_𝐢` as `τ_target 1_𝐢`,
    /// as factor strings with signs: `τ_start = τ_target + Σ sign·string`.
    fn path_corrections(&self, start: &[usize], target: &[usize], bottom: &Word) -> Vec<(Vec<Factor>, i64)> {
        let mut out = Vec::new();
        if start == target {
            return out;
        }
        let path = braid_path(start, target);
        let mut cur = start.to_vec();
        for &(p, kind) in path.iter() {
            if kind != MoveKind::Commute {
                let mut below = bottom.clone();
                for &t in cur[p + 3..].iter().rev() {
                    below = below.swapped(t);
                }
                let a = cur[p].min(cur[p + 1]);
                let q = braid_correction(&self.quiver, &below, a, self.n);
                if !q.is_zero() {
                    let mut factors: Vec<Factor> = cur[..p].iter().map(|&t| Factor::Tau(t)).collect();
                    factors.push(Factor::Poly(q));
                    factors.extend(cur[p + 3..].iter().map(|&t| Factor::Tau(t)));
                    out.push((factors, if kind == MoveKind::BraidDown { 1 } else { -1 }));
                }
            }
            cur = apply_move(&cur, p, kind);
        }
        out
    }

    /// Left multiplication by `τ_k`.
    fn left_tau(&self, k: usize, bottom: &Word, e: &Local) -> Local {
        let mut out = Local::new();
        for ((w, m), c) in e {
            let top = w.act_on_word(bottom);
            let mut tm = m.clone();
            tm.swap(k - 1, k);
            for ((v, e2), c2) in self.tau_times(k, w, bottom).iter() {
                let exps: Vec<u32> = tm.iter().zip(e2).map(|(a, b)| a + b).collect();
                local_add(&mut out, (v.clone(), exps), &(c * c2));
            }
            if top.0[k - 1] == top.0[k] {
                let d = demazure(k, &MultiPoly::monomial(m.clone(), c.clone()));
                for (e3, c3) in d.terms() {
                    local_add(&mut out, (w.clone(), e3.clone()), c3);
                }
            }
        }
        out
    }

    /// Evaluates a product of factors against `1_𝐢`, rightmost first.
    fn eval_string(&self, factors: &[Factor], bottom: &Word) -> Local {
        let mut e = Local::new();
        local_add(&mut e, (Permutation::identity(self.n), vec![0; self.n]), &BigInt::one());
        for f in factors.iter().rev() {
            e = match f {
                Factor::Tau(k) => self.left_tau(*k, bottom, &e),
                Factor::Poly(p) => local_poly_mul(p, &e),
            };
            if e.is_empty() {
                break;
            }
        }
        e
    }

    fn local_to_element(&self, bottom: &Word, e: Local, c: &LaurentPoly, out: &mut QHElement) {
        for ((perm, exps), k) in e {
            out.add_term(
                Monomial {
                    word: bottom.clone(),
                    perm,
                    exps,
                },
                &c.scale(&k),
            );
        }
    }

    /// The product `a b`, straightened to normal form.
    pub fn mul(&self, a: &QHElement, b: &QHElement) -> Result<QHElement> {
        check_weights(&a.weight, &self.alpha)?;
        check_weights(&b.weight, &self.alpha)?;
        let mut out = self.zero();
        let mut by_top: HashMap<Word, Vec<(&Monomial, &LaurentPoly)>> = HashMap::new();
        for (m, c) in &b.terms {
            by_top.entry(m.top_word()).or_default().push((m, c));
        }
        for (ma, ca) in &a.terms {
            let Some(bs) = by_top.get(&ma.word) else { continue };
            let word = ma.perm.reduced_word();
            for (mb, cb) in bs {
                let mut e = Local::new();
                local_add(&mut e, (mb.perm.clone(), mb.exps.clone()), &BigInt::one());
                for &k in word.iter().rev() {
                    e = self.left_tau(k, &mb.word, &e);
                }
                let e = local_poly_mul(&MultiPoly::monomial(ma.exps.clone(), 1), &e);
                self.local_to_element(&mb.word, e, &(ca * *cb), &mut out);
            }
        }
        Ok(out)
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, items: &[&QHElement]) -> Result<QHElement> {
        let mut acc = self.one();
        for x in items {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// The antiautomorphism fixing all generators.
    pub fn psi(&self, a: &QHElement) -> QHElement {
        let mut out = self.zero();
        for (m, c) in &a.terms {
            let mut factors: Vec<Factor> = m.perm.reduced_word().iter().rev().map(|&k| Factor::Tau(k)).collect();
            factors.push(Factor::Poly(MultiPoly::monomial(m.exps.clone(), 1)));
            let bottom = m.top_word();
            let e = self.eval_string(&factors, &bottom);
            self.local_to_element(&bottom, e, c, &mut out);
        }
        out
    }

    /// The graded dimension of `1_𝐣 H_α 1_𝐢` as a power series truncated at
    /// degree `cutoff`, from the closed formula.
    pub fn graded_dim_formula(&self, i: &Word, j: &Word, cutoff: i64) -> Result<LaurentPoly> {
        self.check_word(i)?;
        self.check_word(j)?;
        let mut num = LaurentPoly::zero();
        for w in Permutation::all(self.n) {
            if w.act_on_word(i) == *j {
                num.add_term(deg_w(&self.quiver, &w, i), &BigInt::one());
            }
        }
        let Some(lo) = num.min_exp() else {
            return Ok(LaurentPoly::zero());
        };
        let den = LaurentPoly::from_terms([(1, 0), (-1, 2)]).pow(self.n as u32);
        let inv = den.series_inverse(cutoff - lo)?;
        Ok((&num * &inv).truncate(cutoff))
    }

    /// Counts basis monomials `x^m τ_w 1_𝐢` with `w(𝐢) = 𝐣` by degree, up to
    /// `cutoff`.
    pub fn enumerate_basis(&self, i: &Word, j: &Word, cutoff: i64) -> Result<LaurentPoly> {
        self.check_word(i)?;
        self.check_word(j)?;
        let mut out = LaurentPoly::zero();
        for w in Permutation::all(self.n) {
            if w.act_on_word(i) != *j {
                continue;
            }
            let d = deg_w(&self.quiver, &w, i);
            if d > cutoff {
                continue;
            }
            let budget = ((cutoff - d) / 2) as u32;
            let mut exps = vec![0u32; self.n];
            loop {
                let total: u32 = exps.iter().sum();
                out.add_term(d + 2 * total as i64, &BigInt::one());
                // next exponent vector with total <= budget
                let mut pos = 0;
                loop {
                    if pos == self.n {
                        break;
                    }
                    exps[pos] += 1;
                    if exps.iter().sum::<u32>() <= budget {
                        break;
                    }
                    exps[pos] = 0;
                    pos += 1;
                }
                if pos == self.n {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// The word with letters sorted in vertex order.
    pub fn sorted_word(&self) -> Word {
        let mut v = Vec::new();
        for (i, &c) in self.alpha.0.iter().enumerate() {
            v.extend(std::iter::repeat_n(i, c as usize));
        }
        Word(v)
    }

    /// `z_j = Σ_{w ∈ S_n / S_𝐢} x_{w(j)} 1_{w(𝐢)}` for the sorted word `𝐢`,
    /// `j = 1, …, n`.
    pub fn central_elements(&self) -> Vec<QHElement> {
        let base = self.sorted_word();
        let reps: Vec<(Word, Vec<usize>)> = self
            .words
            .iter()
            .map(|target| {
                // minimal coset representative: the r-th occurrence of each
                // letter goes to its r-th position in the target
                let mut slots: BTreeMap<usize, VecDeque<usize>> = BTreeMap::new();
                for (p, &l) in target.0.iter().enumerate() {
                    slots.entry(l).or_default().push_back(p);
                }
                let images = base.0.iter().map(|l| slots.get_mut(l).unwrap().pop_front().unwrap()).collect();
                (target.clone(), images)
            })
            .collect();
        (0..self.n)
            .map(|j| {
                let mut z = self.zero();
                for (target, images) in &reps {
                    let mut exps = vec![0; self.n];
                    exps[images[j]] = 1;
                    z.add_term(
                        Monomial {
                            word: target.clone(),
                            perm: Permutation::identity(self.n),
                            exps,
                        },
                        &LaurentPoly::one(),
                    );
                }
                z
            })
            .collect()
    }

    /// Elementary symmetric polynomials in the `z_j` over each block of equal
    /// letters of the sorted word; these generate the centre.
    pub fn center_generators(&self) -> Result<Vec<QHElement>> {
        let z = self.central_elements();
        let base = self.sorted_word();
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.n {
            let mut end = start;
            while end < self.n && base.0[end] == base.0[start] {
                end += 1;
            }
            let block: Vec<&QHElement> = z[start..end].iter().collect();
            // e_r = Σ over r-subsets of products
            let m = block.len();
            for r in 1..=m {
                let mut e = self.zero();
                for mask in 0u32..(1 << m) {
                    if mask.count_ones() as usize != r {
                        continue;
                    }
                    let items: Vec<&QHElement> =
                        (0..m).filter(|b| mask & (1 << b) != 0).map(|b| block[b]).collect();
                    e = e.add(&self.mul_all(&items)?)?;
                }
                out.push(e);
            }
            start = end;
        }
        Ok(out)
    }

    /// All generators `1_𝐢`, `x_k`, `τ_k`.
    pub fn all_generators(&self) -> Vec<QHElement> {
        let mut out: Vec<QHElement> = self.words.iter().map(|w| self.idem(w).unwrap()).collect();
        out.extend((1..=self.n).map(|k| self.x(k)));
        out.extend((1..self.n).map(|k| self.tau(k)));
        out
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &QHElement, b: &QHElement) -> Result<QHElement> {
        self.mul(a, b)?.sub(&self.mul(b, a)?)
    }

    /// Re-verifies every defining relation as an identity between
    /// straightened products.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.n;
        let fail = |what: String| Err(Error::Verification(what));
        let one = self.one();
        for g in self.all_generators() {
            if self.mul(&one, &g)? != g || self.mul(&g, &one)? != g {
                return fail("identity".into());
            }
        }
        for a in &self.words {
            let ia = self.idem(a)?;
            for b in &self.words {
                let p = self.mul(&ia, &self.idem(b)?)?;
                let expect = if a == b { ia.clone() } else { self.zero() };
                if p != expect {
                    return fail(format!("1_{:?} 1_{:?}", a.0, b.0));
                }
            }
            for k in 1..=n {
                if self.mul(&ia, &self.x(k))? != self.mul(&self.x(k), &ia)? {
                    return fail(format!("1_i x_{k}"));
                }
            }
            for k in 1..n {
                let lhs = self.mul(&ia, &self.tau(k))?;
                let rhs = self.mul(&self.tau(k), &self.idem(&a.swapped(k))?)?;
                if lhs != rhs {
                    return fail(format!("1_i tau_{k}"));
                }
            }
        }
        for k in 1..=n {
            for l in 1..=n {
                if self.commutator(&self.x(k), &self.x(l))? != self.zero() {
                    return fail(format!("x_{k} x_{l}"));
                }
            }
        }
        for w in &self.words {
            let iw = self.idem(w)?;
            for k in 1..n {
                let tk = self.tau(k);
                for l in 1..=n {
                    let tl = if l == k {
                        k + 1
                    } else if l == k + 1 {
                        k
                    } else {
                        l
                    };
                    let lhs = self
                        .mul_all(&[&tk, &self.x(l), &iw])?
                        .sub(&self.mul_all(&[&self.x(tl), &tk, &iw])?)?;
                    let delta = if w.0[k - 1] != w.0[k] {
                        0
                    } else if l == k + 1 {
                        1
                    } else if l == k {
                        -1
                    } else {
                        0
                    };
                    if lhs != iw.scale(&LaurentPoly::constant(delta)) {
                        return fail(format!("tau_{k} x_{l} on {:?}", w.0));
                    }
                }
                let sq = self.mul_all(&[&tk, &tk, &iw])?;
                let qp = q_poly(&self.quiver, w.0[k - 1], w.0[k], k, n);
                if sq != self.poly_times(&qp, &iw)? {
                    return fail(format!("tau_{k}^2 on {:?}", w.0));
                }
                for l in 1..n {
                    if k.abs_diff(l) > 1 && self.commutator(&tk, &self.tau(l))? != self.zero() {
                        return fail(format!("tau_{k} tau_{l}"));
                    }
                }
                if k + 1 < n {
                    let t1 = self.tau(k + 1);
                    let lhs = self
                        .mul_all(&[&t1, &tk, &t1, &iw])?
                        .sub(&self.mul_all(&[&tk, &t1, &tk, &iw])?)?;
                    let q = braid_correction(&self.quiver, w, k, n);
                    if lhs != self.poly_times(&q, &iw)? {
                        return fail(format!("braid at {k} on {:?}", w.0));
                    }
                }
            }
        }
        Ok(())
    }

    /// The element `f(x_1, …, x_n) · a`.
    pub fn poly_times(&self, f: &MultiPoly, a: &QHElement) -> Result<QHElement> {
        let mut p = self.zero();
        for w in &self.words {
            for (e, c) in f.terms() {
                p.add_term(
                    Monomial {
                        word: w.clone(),
                        perm: Permutation::identity(self.n),
                        exps: e.clone(),
                    },
                    &LaurentPoly::constant(c.clone()),
                );
            }
        }
        self.mul(&p, a)
    }
}

/// A generator of `H_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Idem(Word),
    X(usize),
    Tau(usize),
}

/// For `n = 1 - α_i·α_j` and `α = nα_i + α_j`, computes the products
/// `e_{r,s} τ_{r,s} τ_{r+1,s-1}` for `r + s = n`, `s >= 2`. Each should
/// vanish.
pub fn serre_complex_products(quiver: &Quiver, i: usize, j: usize) -> Result<Vec<((usize, usize), QHElement)>> {
    if i == j {
        return Err(Error::IndexOutOfRange("serre complex needs i != j".into()));
    }
    let n = (1 - quiver.cartan(i, j)) as usize;
    let mut alpha = QPlus::simple(j, quiver.rank());
    alpha.0[i] += n as u32;
    let alg = QHAlgebra::new(quiver.clone(), alpha);
    let len = n + 1;
    let word = |r: usize| {
        let mut v = vec![i; r];
        v.push(j);
        v.extend(std::iter::repeat_n(i, n - r));
        Word(v)
    };
    // e_{r,s}: e_r ⊗ 1_j ⊗ e_s on i^r j i^s
    let e_rs = |r: usize| {
        let s = n - r;
        let mut images: Vec<usize> = (0..r).rev().collect();
        images.push(r);
        images.extend((r + 1..len).rev());
        let mut exps: Vec<u32> = (0..r as u32).collect();
        exps.push(0);
        exps.extend(0..s as u32);
        alg.monomial(word(r), Permutation::from_images(images).unwrap(), exps, LaurentPoly::one())
    };
    // τ_{r,s} = τ_{r+1} ⋯ τ_1 on i^{r+1} j i^{s-1}
    let tau_rs = |r: usize| -> Result<QHElement> {
        let letters: Vec<usize> = (1..=r + 1).rev().collect();
        let bottom = word(r + 1);
        Ok(alg.monomial(bottom, Permutation::from_word(&letters, len), vec![0; len], LaurentPoly::one()))
    };
    let mut out = Vec::new();
    for r in 0..=n {
        let s = n - r;
        if s < 2 {
            continue;
        }
        let prod = alg.mul_all(&[&e_rs(r), &tau_rs(r)?, &tau_rs(r + 1)?])?;
        out.push(((r, s), prod));
    }
    Ok(out)
}
