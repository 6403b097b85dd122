//! Lusztig's algebra `f` modelled inside the quantum shuffle algebra.
//!
//! An element of `f_α` is carried by its pairing vector
//! `pv_𝐢 = (θ_𝐢, x)` over all words of weight `α`, optionally together with
//! an expression `Σ c_𝐢 θ_𝐢` in the free algebra on the generators. Products
//! are computed on pairing vectors with the quantum shuffle product.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::qring::{qfact, LaurentPoly, RatFn};
use crate::rootdata::{deg_w, words_of_weight, Permutation, QPlus, Quiver, Word};

/// A formal sum of words with Laurent polynomial coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Character(BTreeMap<Word, LaurentPoly>);

impl Character {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::from_terms([(w, LaurentPoly::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, LaurentPoly)>) -> Self {
        let mut c = Self::new();
        for (w, p) in terms {
            c.add_term(w, &p);
        }
        c
    }

    /// Parses `"12 + q*21"`-style input is not supported; use
    /// [`Character::parse_lines`] on the `word : poly` rendering.
    pub fn parse_lines(quiver: &Quiver, s: &str) -> Result<Self> {
        let mut c = Self::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (w, p) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `word : poly`, got {line:?}")))?;
            c.add_term(quiver.parse_word(w)?, &p.trim().parse()?);
        }
        Ok(c)
    }

    pub fn add_term(&mut self, w: Word, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_default();
        *e += p;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn get(&self, w: &Word) -> LaurentPoly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Character) -> Character {
        let mut out = self.clone();
        for (w, p) in &other.0 {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Character {
        Character::from_terms(self.0.iter().map(|(w, p)| (w.clone(), p * c)))
    }

    /// Entrywise bar involution, keeping words fixed.
    pub fn bar(&self) -> Character {
        Character::from_terms(self.0.iter().map(|(w, p)| (w.clone(), p.bar())))
    }

    /// The quantum shuffle product.
    pub fn shuffle(&self, other: &Character, quiver: &Quiver) -> Character {
        let mut out = Character::new();
        for (a, pa) in &self.0 {
            for (b, pb) in &other.0 {
                let prod = pa * pb;
                for (w, e) in shuffle_words(quiver, a, b) {
                    out.add_term(w, &prod.shift(e));
                }
            }
        }
        out
    }

    /// Lines `word : polynomial`, sorted by word.
    pub fn render(&self, quiver: &Quiver) -> String {
        self.0
            .iter()
            .map(|(w, p)| format!("{} : {p}", quiver.format_word(w)))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Compact one-line sum, e.g. `21 + (q)*12`.
    pub fn render_sum(&self, quiver: &Quiver) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(w, p)| {
                if p.is_one() {
                    quiver.format_word(w)
                } else {
                    format!("({p})*{}", quiver.format_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self, quiver: &Quiver) -> Value {
        let mut m = Map::new();
        for (w, p) in &self.0 {
            m.insert(quiver.format_word(w), Value::String(p.to_string()));
        }
        Value::Object(m)
    }

    pub fn from_json(quiver: &Quiver, v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("character must be a JSON object".into()))?;
        let mut c = Character::new();
        for (w, p) in obj {
            let p = p
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            c.add_term(quiver.parse_word(w)?, &p.parse()?);
        }
        Ok(c)
    }

    /// Terms whose prefix of length `ht(β)` has weight `β`, split into
    /// `prefix ⊗ suffix`.
    pub fn split(&self, beta: &QPlus) -> BTreeMap<(Word, Word), LaurentPoly> {
        let h = beta.height();
        let mut out = BTreeMap::new();
        for (w, p) in &self.0 {
            if w.len() < h {
                continue;
            }
            let pre = Word(w.0[..h].to_vec());
            if pre.weight(beta.rank()) == *beta {
                out.insert((pre, Word(w.0[h..].to_vec())), p.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.0.iter().map(|(w, p)| format!("{:?}: {p}", w.0)).collect();
        write!(f, "Character{{{}}}", terms.join(", "))
    }
}

/// All `(m,n)`-shuffles of `a` and `b` with their exponents
/// `deg(w; ab)`.
pub fn shuffle_words(quiver: &Quiver, a: &Word, b: &Word) -> Vec<(Word, i64)> {
    let (m, n) = (a.len(), b.len());
    let ab = a.concat(b);
    let mut out = Vec::new();
    // choose the positions receiving the letters of `a`
    let mut chosen = Vec::with_capacity(m);
    fn rec(
        start: usize,
        m: usize,
        total: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() == m {
            f(chosen);
            return;
        }
        for p in start..total {
            if total - p < m - chosen.len() {
                break;
            }
            chosen.push(p);
            rec(p + 1, m, total, chosen, f);
            chosen.pop();
        }
    }
    rec(0, m, m + n, &mut chosen, &mut |pos: &[usize]| {
        let mut images = Vec::with_capacity(m + n);
        images.extend_from_slice(pos);
        let mut k = 0;
        for p in 0..m + n {
            if k < m && pos[k] == p {
                k += 1;
            } else {
                images.push(p);
            }
        }
        let w = Permutation::from_images(images).expect("shuffle is a permutation");
        out.push((w.act_on_word(&ab), deg_w(quiver, &w, &ab)));
    });
    out
}

/// The quantum shuffle product of two words.
pub fn shuffle(quiver: &Quiver, a: &Word, b: &Word) -> Character {
    Character::word(a.clone()).shuffle(&Character::word(b.clone()), quiver)
}

/// Rewrites a family of rational functions over a common denominator.
fn to_common(map: &BTreeMap<Word, RatFn>) -> (BTreeMap<Word, LaurentPoly>, LaurentPoly) {
    let mut den = LaurentPoly::one();
    for r in map.values() {
        let d = r.den();
        if d.is_one() || *d == den {
            continue;
        }
        let g = den.gcd(d);
        den = (&den * d).div_exact(&g).expect("gcd divides");
    }
    let nums = map
        .iter()
        .map(|(w, r)| {
            let f = den.div_exact(r.den()).expect("common denominator");
            (w.clone(), r.num() * &f)
        })
        .collect();
    (nums, den)
}

fn from_common(nums: BTreeMap<Word, LaurentPoly>, den: &LaurentPoly) -> BTreeMap<Word, RatFn> {
    nums.into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(w, p)| (w, RatFn::new(p, den.clone()).expect("nonzero denominator")))
        .collect()
}

fn ratmap_add(a: &mut BTreeMap<Word, RatFn>, w: &Word, c: &RatFn) {
    if c.is_zero() {
        return;
    }
    let e = a.entry(w.clone()).or_default();
    *e += c;
    if e.is_zero() {
        a.remove(w);
    }
}

/// An element of `f_α`.
#[derive(Clone, PartialEq, Eq)]
pub struct FElement {
    weight: QPlus,
    expr: Option<BTreeMap<Word, RatFn>>,
    pv: BTreeMap<Word, RatFn>,
}

impl FElement {
    pub fn weight(&self) -> &QPlus {
        &self.weight
    }

    pub fn expr(&self) -> Option<&BTreeMap<Word, RatFn>> {
        self.expr.as_ref()
    }

    /// The pairing vector `𝐢 -> (θ_𝐢, x)`; missing words have value zero.
    pub fn pv(&self) -> &BTreeMap<Word, RatFn> {
        &self.pv
    }

    pub fn pv_at(&self, w: &Word) -> RatFn {
        self.pv.get(w).cloned().unwrap_or_default()
    }

    /// Whether the element is zero in `f` (its pairing vector vanishes).
    pub fn is_zero(&self) -> bool {
        self.pv.is_empty()
    }

    /// The pairing vector as a character, if every entry is a Laurent
    /// polynomial.
    pub fn character(&self) -> Option<Character> {
        let mut c = Character::new();
        for (w, r) in &self.pv {
            c.add_term(w.clone(), r.as_laurent()?);
        }
        Some(c)
    }

    pub fn scale(&self, c: &RatFn) -> FElement {
        let sc = |m: &BTreeMap<Word, RatFn>| -> BTreeMap<Word, RatFn> {
            m.iter()
                .map(|(w, r)| (w.clone(), r * c))
                .filter(|(_, r)| !r.is_zero())
                .collect()
        };
        FElement {
            weight: self.weight.clone(),
            expr: self.expr.as_ref().map(sc),
            pv: sc(&self.pv),
        }
    }

    pub fn add(&self, other: &FElement) -> Result<FElement> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(format!(
                "{:?} vs {:?}",
                self.weight.0, other.weight.0
            )));
        }
        let sum = |a: &BTreeMap<Word, RatFn>, b: &BTreeMap<Word, RatFn>| {
            let mut out = a.clone();
            for (w, r) in b {
                ratmap_add(&mut out, w, r);
            }
            out
        };
        let expr = match (&self.expr, &other.expr) {
            (Some(a), Some(b)) => Some(sum(a, b)),
            _ => None,
        };
        Ok(FElement {
            weight: self.weight.clone(),
            expr,
            pv: sum(&self.pv, &other.pv),
        })
    }

    pub fn sub(&self, other: &FElement) -> Result<FElement> {
        self.add(&other.scale(&-RatFn::one()))
    }

    /// Renders the expression as `c * θ_𝐢` terms.
    pub fn render_expr(&self, quiver: &Quiver) -> Option<String> {
        let e = self.expr.as_ref()?;
        if e.is_empty() {
            return Some("0".into());
        }
        Some(
            e.iter()
                .map(|(w, c)| format!("({c})*θ[{}]", quiver.format_word(w)))
                .collect::<Vec<_>>()
                .join(" + "),
        )
    }
}

impl fmt::Debug for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pv: Vec<String> = self.pv.iter().map(|(w, r)| format!("{:?}: {r}", w.0)).collect();
        write!(f, "FElement{{weight: {:?}, pv: {{{}}}}}", self.weight.0, pv.join(", "))
    }
}

struct Solver {
    /// `T` with `T·S` in reduced row echelon form.
    transform: Vec<Vec<RatFn>>,
    pivots: Vec<usize>,
}

/// The Gram matrix of the θ-words of one weight, kept as Laurent
/// numerators over the common denominator `(1-q^2)^n`.
struct Gram {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    num: Vec<Vec<LaurentPoly>>,
    den: LaurentPoly,
    solver: OnceLock<Solver>,
}

fn gram_numerator(quiver: &Quiver, i: &Word, j: &Word) -> LaurentPoly {
    // backtracking over permutations w with w(𝐢) = 𝐣
    fn rec(
        quiver: &Quiver,
        i: &Word,
        j: &Word,
        pos: usize,
        used: &mut Vec<bool>,
        images: &mut Vec<usize>,
        out: &mut LaurentPoly,
    ) {
        let n = i.len();
        if pos == n {
            let w = Permutation::from_images(images.clone()).expect("bijection");
            out.add_term(deg_w(quiver, &w, i), &BigInt::one());
            return;
        }
        for t in 0..n {
            if !used[t] && j.0[t] == i.0[pos] {
                used[t] = true;
                images.push(t);
                rec(quiver, i, j, pos + 1, used, images, out);
                images.pop();
                used[t] = false;
            }
        }
    }
    let mut out = LaurentPoly::zero();
    rec(quiver, i, j, 0, &mut vec![false; i.len()], &mut Vec::new(), &mut out);
    out
}

fn one_minus_q2_pow(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms([(1, 0), (-1, 2)]).pow(n as u32)
}

/// Shuffle-algebra model of `f` for a quiver, with per-weight Gram caches.
pub struct FAlgebra {
    quiver: Quiver,
    grams: RwLock<HashMap<QPlus, Arc<Gram>>>,
}

impl FAlgebra {
    pub fn new(quiver: Quiver) -> Self {
        Self {
            quiver,
            grams: RwLock::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn gram(&self, alpha: &QPlus) -> Arc<Gram> {
        if let Some(g) = self.grams.read().unwrap().get(alpha) {
            return g.clone();
        }
        let words = words_of_weight(alpha);
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let m = words.len();
        let mut num = vec![vec![LaurentPoly::zero(); m]; m];
        for a in 0..m {
            for b in a..m {
                let s = gram_numerator(&self.quiver, &words[a], &words[b]);
                num[b][a] = s.clone();
                num[a][b] = s;
            }
        }
        let g = Arc::new(Gram {
            words,
            index,
            num,
            den: one_minus_q2_pow(alpha.height()),
            solver: OnceLock::new(),
        });
        self.grams
            .write()
            .unwrap()
            .entry(alpha.clone())
            .or_insert(g)
            .clone()
    }

    /// All words of weight `alpha`, in lexicographic order.
    pub fn words(&self, alpha: &QPlus) -> Vec<Word> {
        self.gram(alpha).words.clone()
    }

    fn weight_of(&self, w: &Word) -> QPlus {
        w.weight(self.quiver.rank())
    }

    /// `(θ_𝐢, θ_𝐣)`.
    pub fn gram_entry(&self, i: &Word, j: &Word) -> Result<RatFn> {
        let alpha = self.weight_of(i);
        if alpha != self.weight_of(j) {
            return Err(Error::WeightMismatch(format!("{:?} vs {:?}", i.0, j.0)));
        }
        let g = self.gram(&alpha);
        RatFn::new(g.num[g.index[i]][g.index[j]].clone(), g.den.clone())
    }

    fn pv_of_expr(&self, alpha: &QPlus, expr: &BTreeMap<Word, RatFn>) -> BTreeMap<Word, RatFn> {
        let g = self.gram(alpha);
        let (nums, d) = to_common(expr);
        let mut out = BTreeMap::new();
        for (b, wb) in g.words.iter().enumerate() {
            let mut s = LaurentPoly::zero();
            for (w, c) in &nums {
                let a = g.index[w];
                if !g.num[a][b].is_zero() {
                    s += &(c * &g.num[a][b]);
                }
            }
            if !s.is_zero() {
                out.insert(wb.clone(), s);
            }
        }
        from_common(out, &(&d * &g.den))
    }

    /// The element `Σ c_𝐢 θ_𝐢`.
    pub fn from_expr(&self, alpha: &QPlus, expr: BTreeMap<Word, RatFn>) -> Result<FElement> {
        for w in expr.keys() {
            if self.weight_of(w) != *alpha {
                return Err(Error::WeightMismatch(format!("word {:?} in weight {:?}", w.0, alpha.0)));
            }
        }
        let expr: BTreeMap<Word, RatFn> = expr.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let pv = self.pv_of_expr(alpha, &expr);
        Ok(FElement {
            weight: alpha.clone(),
            expr: Some(expr),
            pv,
        })
    }

    /// An element given only by its pairing vector.
    pub fn from_pv(&self, alpha: &QPlus, pv: BTreeMap<Word, RatFn>) -> Result<FElement> {
        for w in pv.keys() {
            if self.weight_of(w) != *alpha {
                return Err(Error::WeightMismatch(format!("word {:?} in weight {:?}", w.0, alpha.0)));
            }
        }
        Ok(FElement {
            weight: alpha.clone(),
            expr: None,
            pv: pv.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// The element whose pairing vector is the given character.
    pub fn from_character(&self, alpha: &QPlus, ch: &Character) -> Result<FElement> {
        self.from_pv(
            alpha,
            ch.iter().map(|(w, p)| (w.clone(), RatFn::from_poly(p.clone()))).collect(),
        )
    }

    pub fn one(&self) -> FElement {
        let alpha = QPlus::zero(self.quiver.rank());
        self.from_expr(&alpha, BTreeMap::from([(Word::default(), RatFn::one())]))
            .expect("empty word has weight zero")
    }

    pub fn zero(&self, alpha: &QPlus) -> FElement {
        FElement {
            weight: alpha.clone(),
            expr: Some(BTreeMap::new()),
            pv: BTreeMap::new(),
        }
    }

    /// `θ_𝐢 = θ_{i_1} ⋯ θ_{i_n}`.
    pub fn theta_word(&self, w: &Word) -> FElement {
        self.from_expr(&self.weight_of(w), BTreeMap::from([(w.clone(), RatFn::one())]))
            .expect("word has its own weight")
    }

    pub fn theta(&self, i: usize) -> FElement {
        self.theta_word(&Word(vec![i]))
    }

    /// The product in `f`.
    pub fn fmul(&self, x: &FElement, y: &FElement) -> FElement {
        let weight = x.weight.add(&y.weight);
        let (nx, dx) = to_common(&x.pv);
        let (ny, dy) = to_common(&y.pv);
        let prod = Character(nx).shuffle(&Character(ny), &self.quiver);
        let pv = from_common(prod.0, &(&dx * &dy));
        let expr = match (&x.expr, &y.expr) {
            (Some(a), Some(b)) => {
                let mut out = BTreeMap::new();
                for (wa, ca) in a {
                    for (wb, cb) in b {
                        ratmap_add(&mut out, &wa.concat(wb), &(ca * cb));
                    }
                }
                Some(out)
            }
            _ => None,
        };
        FElement { weight, expr, pv }
    }

    pub fn fmul_all(&self, items: &[&FElement]) -> FElement {
        items.iter().fold(self.one(), |acc, x| self.fmul(&acc, x))
    }

    /// `θ_i^n / [n]!`.
    pub fn divided_power(&self, i: usize, n: usize) -> FElement {
        let theta = self.theta_word(&Word(vec![i; n]));
        let f = RatFn::from_poly(qfact(n as i64).expect("n >= 0"));
        theta.scale(&RatFn::one().checked_div(&f).expect("nonzero factorial"))
    }

    /// Lusztig's form `(x, y)`.
    pub fn lusztig_form(&self, x: &FElement, y: &FElement) -> Result<RatFn> {
        if x.weight != y.weight {
            return Ok(RatFn::zero());
        }
        let solved;
        let expr = match &x.expr {
            Some(e) => e,
            None => {
                solved = self.solve_expr(x)?.expr.expect("solved");
                &solved
            }
        };
        let mut s = RatFn::zero();
        for (w, c) in expr {
            if let Some(p) = y.pv.get(w) {
                s += &(c * p);
            }
        }
        Ok(s)
    }

    fn solver<'a>(&self, g: &'a Gram) -> &'a Solver {
        g.solver.get_or_init(|| {
            let m = g.words.len();
            let a: Vec<Vec<RatFn>> = g
                .num
                .iter()
                .map(|row| row.iter().map(|p| RatFn::from_poly(p.clone())).collect())
                .collect();
            let ident: Vec<Vec<RatFn>> = (0..m)
                .map(|r| (0..m).map(|c| if r == c { RatFn::one() } else { RatFn::zero() }).collect())
                .collect();
            let (pivots, transform) = linalg::echelon_transform(&a, &ident);
            Solver { transform, pivots }
        })
    }

    /// Finds an expression `Σ c_𝐢 θ_𝐢` with the given pairing vector (the
    /// solution with all free variables zero).
    pub fn solve_expr(&self, x: &FElement) -> Result<FElement> {
        let g = self.gram(&x.weight);
        let solver = self.solver(&g);
        let m = g.words.len();
        // S c = den · pv
        let rhs: Vec<RatFn> = g
            .words
            .iter()
            .map(|w| x.pv_at(w).scale_poly(&g.den))
            .collect();
        let apply_row = |r: usize| -> RatFn {
            let mut s = RatFn::zero();
            for (c, v) in rhs.iter().enumerate() {
                if !v.is_zero() && !solver.transform[r][c].is_zero() {
                    s += &(&solver.transform[r][c] * v);
                }
            }
            s
        };
        for r in solver.pivots.len()..m {
            if !apply_row(r).is_zero() {
                return Err(Error::Inconsistent(
                    "pairing vector is not in the image of the Gram matrix".into(),
                ));
            }
        }
        let mut expr = BTreeMap::new();
        for (r, &col) in solver.pivots.iter().enumerate() {
            let v = apply_row(r);
            if !v.is_zero() {
                expr.insert(g.words[col].clone(), v);
            }
        }
        let out = self.from_expr(&x.weight, expr)?;
        if out.pv != x.pv {
            return Err(Error::Verification("solved expression does not reproduce the pairing vector".into()));
        }
        Ok(out)
    }

    /// `Σ_{r+s = 1 - α_i·α_j} (-1)^r θ_i^{(r)} θ_j θ_i^{(s)}`.
    pub fn serre_check(&self, i: usize, j: usize) -> Result<FElement> {
        if i == j {
            return Err(Error::IndexOutOfRange("serre relation needs i != j".into()));
        }
        let n = (1 - self.quiver.cartan(i, j)) as usize;
        let mut alpha = QPlus::simple(j, self.quiver.rank());
        alpha.0[i] += n as u32;
        let mut acc = self.zero(&alpha);
        let tj = self.theta(j);
        for r in 0..=n {
            let term = self.fmul_all(&[&self.divided_power(i, r), &tj, &self.divided_power(i, n - r)]);
            let sign = if r % 2 == 0 { RatFn::one() } else { -RatFn::one() };
            acc = acc.add(&term.scale(&sign))?;
        }
        Ok(acc)
    }

    /// The bar involution of `f`, fixing every `θ_i`.
    pub fn bar_f(&self, x: &FElement) -> Result<FElement> {
        let expr = x.expr.as_ref().ok_or(Error::ExprAbsent)?;
        self.from_expr(&x.weight, expr.iter().map(|(w, c)| (w.clone(), c.bar())).collect())
    }

    /// Checks the character-level Mackey identity for the `(β, γ)` split
    /// of `chX ∘ chY`.
    pub fn mackey_character_check(
        &self,
        ch_x: &Character,
        ch_y: &Character,
        beta: &QPlus,
        gamma: &QPlus,
    ) -> bool {
        let q = &self.quiver;
        let rank = q.rank();
        let wx = ch_x.iter().next().map(|(w, _)| w.weight(rank));
        let wy = ch_y.iter().next().map(|(w, _)| w.weight(rank));
        let (Some(wx), Some(wy)) = (wx, wy) else {
            return true;
        };
        if wx.add(&wy) != beta.add(gamma) {
            return false;
        }
        let lhs = ch_x.shuffle(ch_y, q).split(beta);
        let mut rhs: BTreeMap<(Word, Word), LaurentPoly> = BTreeMap::new();
        for beta1 in sub_weights(&wx) {
            let Some(gamma1) = wx.checked_sub(&beta1) else { continue };
            let Some(beta2) = beta.checked_sub(&beta1) else { continue };
            let Some(gamma2) = wy.checked_sub(&beta2) else { continue };
            if gamma1.add(&gamma2) != *gamma {
                continue;
            }
            let twist = -q.form(&beta2, &gamma1);
            let sx = ch_x.split(&beta1);
            let sy = ch_y.split(&beta2);
            for ((a1, a2), pa) in &sx {
                for ((b1, b2), pb) in &sy {
                    let left = shuffle(q, a1, b1);
                    let right = shuffle(q, a2, b2);
                    let c = (pa * pb).shift(twist);
                    for (l, pl) in left.iter() {
                        for (r, pr) in right.iter() {
                            let e = rhs.entry((l.clone(), r.clone())).or_default();
                            *e += &(&c * &(pl * pr));
                        }
                    }
                }
            }
        }
        rhs.retain(|_, p| !p.is_zero());
        lhs == rhs
    }
}

/// All `β ≤ α` componentwise.
pub fn sub_weights(alpha: &QPlus) -> Vec<QPlus> {
    let mut out = vec![QPlus(vec![])];
    for &c in &alpha.0 {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |k| {
                    let mut v = v.0.clone();
                    v.push(k);
                    QPlus(v)
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFn {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn wd(q: &Quiver, s: &str) -> Word {
        q.parse_word(s).unwrap()
    }

    #[test]
    fn shuffle_examples() {
        let q = Quiver::type_a(2);
        let c = shuffle(&q, &wd(&q, "1"), &wd(&q, "2"));
        assert_eq!(c.render(&q), "12 : 1\n21 : q");
        let c = shuffle(&q, &wd(&q, "2"), &wd(&q, "1"));
        assert_eq!(c.render(&q), "12 : q\n21 : 1");
        let c = shuffle(&q, &wd(&q, "1"), &wd(&q, "1"));
        assert_eq!(c.get(&wd(&q, "11")), lp("1 + q^-2"));
    }

    #[test]
    fn theta_word_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        let t1 = f.theta(0);
        assert_eq!(t1.pv_at(&wd(&q, "1")), r("(1)/(-q^2 + 1)"));
        let t12 = f.theta_word(&wd(&q, "12"));
        assert_eq!(t12.pv_at(&wd(&q, "12")), r("(1)/(q^4 - 2*q^2 + 1)"));
        assert_eq!(t12.pv_at(&wd(&q, "21")), r("(q)/(q^4 - 2*q^2 + 1)"));
        let t11 = f.theta_word(&wd(&q, "11"));
        let expect = RatFn::new(lp("1 + q^-2"), one_minus_q2_pow(2)).unwrap();
        assert_eq!(t11.pv_at(&wd(&q, "11")), expect);
    }

    #[test]
    fn fmul_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        let p = f.fmul(&f.theta(0), &f.theta(1));
        assert_eq!(p, f.theta_word(&wd(&q, "12")));
        assert_eq!(p.pv_at(&wd(&q, "12")), r("(1)/(q^4 - 2*q^2 + 1)"));
    }

    #[test]
    fn gram_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        assert_eq!(f.gram_entry(&wd(&q, "1"), &wd(&q, "1")).unwrap(), r("(1)/(-q^2 + 1)"));
        assert_eq!(f.gram_entry(&wd(&q, "12"), &wd(&q, "21")).unwrap(), r("(q)/(q^4 - 2*q^2 + 1)"));
        let aff = Quiver::affine_a1();
        let fa = FAlgebra::new(aff.clone());
        assert_eq!(fa.gram_entry(&wd(&aff, "01"), &wd(&aff, "01")).unwrap(), r("(1)/(q^4 - 2*q^2 + 1)"));
        assert!(f.gram_entry(&wd(&q, "1"), &wd(&q, "2")).is_err());
    }

    #[test]
    fn form_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        assert_eq!(f.lusztig_form(&f.theta(0), &f.theta(0)).unwrap(), r("(1)/(-q^2 + 1)"));
        let a = f.theta_word(&wd(&q, "12"));
        let b = f.theta_word(&wd(&q, "21"));
        assert_eq!(f.lusztig_form(&a, &b).unwrap(), f.gram_entry(&wd(&q, "12"), &wd(&q, "21")).unwrap());
    }

    #[test]
    fn affine_l01() {
        let q = Quiver::affine_a1();
        let f = FAlgebra::new(q.clone());
        let delta = QPlus(vec![1, 1]);
        let l01 = f.from_character(&delta, &Character::word(wd(&q, "01"))).unwrap();
        let solved = f.solve_expr(&l01).unwrap();
        let e = solved.expr().unwrap();
        let c = r("(-q^2 + 1)/(q^2 + 1)");
        assert_eq!(e[&wd(&q, "01")], c);
        assert_eq!(e[&wd(&q, "10")], &c * &r("-q^2"));
        assert_eq!(f.lusztig_form(&l01, &l01).unwrap(), c);
        assert!(c.as_laurent().is_none());
    }

    #[test]
    fn solve_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        let t = f.theta_word(&wd(&q, "12"));
        let bare = f.from_pv(t.weight(), t.pv().clone()).unwrap();
        let s = f.solve_expr(&bare).unwrap();
        assert_eq!(f.lusztig_form(&s, &t).unwrap(), f.lusztig_form(&t, &t).unwrap());
        // 111... in weight 2α1+α2 the three words span a 2-dimensional space
        let alpha = QPlus(vec![2, 1]);
        let bad = f.from_character(&alpha, &Character::word(wd(&q, "112"))).unwrap();
        assert!(matches!(f.solve_expr(&bad), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn serre_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q);
        assert!(f.serre_check(0, 1).unwrap().is_zero());
        assert!(f.serre_check(1, 0).unwrap().is_zero());
        let fa = FAlgebra::new(Quiver::affine_a1());
        assert!(fa.serre_check(0, 1).unwrap().is_zero());
        let f3 = FAlgebra::new(Quiver::type_a(3));
        assert!(f3.serre_check(0, 2).unwrap().is_zero());
    }

    #[test]
    fn divided_power_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        assert_eq!(f.divided_power(0, 0), f.one());
        assert_eq!(f.divided_power(0, 1), f.theta(0));
        let d2 = f.divided_power(0, 2);
        let t = f.fmul(&f.theta(0), &f.theta(0));
        let expect = &t.pv_at(&wd(&q, "11")) / &RatFn::from_poly(lp("q + q^-1"));
        assert_eq!(d2.pv_at(&wd(&q, "11")), expect);
    }

    #[test]
    fn bar_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        let t = f.theta_word(&wd(&q, "12"));
        assert_eq!(f.bar_f(&t).unwrap(), t);
        let qt = t.scale(&r("q"));
        assert_eq!(f.bar_f(&qt).unwrap(), t.scale(&r("q^-1")));
        let bare = f.from_pv(t.weight(), t.pv().clone()).unwrap();
        assert_eq!(f.bar_f(&bare), Err(Error::ExprAbsent));
    }

    #[test]
    fn mackey_examples() {
        let q = Quiver::type_a(2);
        let f = FAlgebra::new(q.clone());
        let x = Character::word(wd(&q, "1"));
        let y = Character::word(wd(&q, "2"));
        assert!(f.mackey_character_check(&x, &y, &QPlus(vec![0, 1]), &QPlus(vec![1, 0])));
        assert!(f.mackey_character_check(&x, &y, &QPlus(vec![1, 0]), &QPlus(vec![0, 1])));
        let split = x.shuffle(&y, &q).split(&QPlus(vec![0, 1]));
        assert_eq!(split[&(wd(&q, "2"), wd(&q, "1"))], lp("q"));
    }
}
