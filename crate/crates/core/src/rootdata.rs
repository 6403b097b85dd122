//! Quivers and their symmetric Cartan data, the positive cone `Q^+`, words,
//! symmetric groups, finite-type root systems, convex orders and Kostant
//! partitions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A loop-free quiver on an ordered vertex set.
///
/// Vertices are referred to by their position in `names`; every
/// index-valued argument in this crate uses that 0-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    mult: Vec<Vec<u32>>,
    cartan: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    edges: Vec<(String, String, u32)>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(tail, head, multiplicity)`
    /// triples; repeated edges add up.
    pub fn new(names: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Quiver("no vertices".into()));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Quiver("duplicate vertex name".into()));
        }
        if names.iter().any(|s| s.is_empty() || s.contains(',')) {
            return Err(Error::Quiver("vertex names must be nonempty and comma-free".into()));
        }
        let mut mult = vec![vec![0u32; n]; n];
        for &(i, j, m) in edges {
            if i >= n || j >= n {
                return Err(Error::Quiver(format!("edge ({i}, {j}) out of range")));
            }
            if i == j && m > 0 {
                return Err(Error::Quiver(format!("loop at vertex {}", names[i])));
            }
            mult[i][j] += m;
        }
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else {
                            -(mult[i][j] as i64) - mult[j][i] as i64
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { names, mult, cartan })
    }

    fn numbered(n: usize, start: usize, edges: &[(usize, usize, u32)]) -> Self {
        let names = (start..start + n).map(|k| k.to_string()).collect();
        Self::new(names, edges).expect("built-in quiver is valid")
    }

    /// Linearly oriented `A_n` with vertices `1..n` and edges `k -> k+1`.
    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|k| (k - 1, k, 1)).collect();
        Self::numbered(n, 1, &edges)
    }

    /// `D_n` (n >= 4): a path `1 -> ... -> n-1` with an extra edge `n-2 -> n`.
    pub fn type_d(n: usize) -> Self {
        assert!(n >= 4, "D_n needs n >= 4");
        let mut edges: Vec<_> = (1..n - 1).map(|k| (k - 1, k, 1)).collect();
        edges.push((n - 3, n - 1, 1));
        Self::numbered(n, 1, &edges)
    }

    /// `E_n` (n = 6, 7, 8): a path `1 -> ... -> n-1` with vertex `n`
    /// attached to vertex 3.
    pub fn type_e(n: usize) -> Self {
        assert!((6..=8).contains(&n), "E_n needs 6 <= n <= 8");
        let mut edges: Vec<_> = (1..n - 1).map(|k| (k - 1, k, 1)).collect();
        edges.push((2, n - 1, 1));
        Self::numbered(n, 1, &edges)
    }

    /// The Kronecker-type quiver `0 ⇄ 1` with one edge each way, whose
    /// underlying graph is affine `A_1`.
    pub fn affine_a1() -> Self {
        Self::numbered(2, 0, &[(0, 1, 1), (1, 0, 1)])
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: QuiverFile =
            serde_json::from_str(s).map_err(|e| Error::Quiver(e.to_string()))?;
        let index: BTreeMap<&str, usize> = file
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.as_str(), k))
            .collect();
        let mut edges = Vec::new();
        for (a, b, m) in &file.edges {
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Quiver(format!("unknown vertex {v:?} in edge")))
            };
            edges.push((lookup(a)?, lookup(b)?, *m));
        }
        Self::new(file.vertices, &edges)
    }

    pub fn to_json(&self) -> String {
        let mut edges = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if self.mult[i][j] > 0 {
                    edges.push((self.names[i].clone(), self.names[j].clone(), self.mult[i][j]));
                }
            }
        }
        serde_json::to_string(&QuiverFile {
            vertices: self.names.clone(),
            edges,
        })
        .expect("quiver serializes")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown vertex {name:?}")))
    }

    /// Number of arrows `i -> j`.
    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }

    /// `α_i · α_j`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// The symmetric bilinear form on the root lattice.
    pub fn form(&self, a: &QPlus, b: &QPlus) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                s += ai as i64 * bj as i64 * self.cartan[i][j];
            }
        }
        s
    }

    fn single_char_names(&self) -> bool {
        self.names.iter().all(|s| s.chars().count() == 1)
    }

    /// Formats a word by concatenating single-character vertex names, or
    /// joining with commas otherwise.
    pub fn format_word(&self, w: &Word) -> String {
        let parts: Vec<&str> = w.0.iter().map(|&i| self.names[i].as_str()).collect();
        if self.single_char_names() {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Parses a word in the form produced by [`Quiver::format_word`]. Commas
    /// are accepted as separators in either case.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word(vec![]));
        }
        if s.contains(',') || !self.single_char_names() {
            s.split(',')
                .map(|p| self.index_of(p.trim()))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| self.index_of(&c.to_string()))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }

    /// Classifies each connected component against the ADE list.
    pub fn classify(&self) -> Result<Vec<Component>> {
        let n = self.rank();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && self.cartan[i][j] != 0).collect())
            .collect();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(self.classify_component(&comp, &adj)?);
        }
        Ok(out)
    }

    fn classify_component(&self, comp: &[usize], adj: &[Vec<usize>]) -> Result<Component> {
        let label = || {
            comp.iter()
                .map(|&v| self.names[v].as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut edges = 0;
        for &v in comp {
            for &u in &adj[v] {
                if self.cartan[v][u] != -1 {
                    return Err(Error::NotFiniteType(format!(
                        "multiple edge between {} and {}",
                        self.names[v], self.names[u]
                    )));
                }
                edges += 1;
            }
        }
        if edges / 2 != comp.len() - 1 {
            return Err(Error::NotFiniteType(format!("component {{{}}} has a cycle", label())));
        }
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        if branch.is_empty() {
            let first = comp
                .iter()
                .copied()
                .find(|&v| adj[v].len() <= 1)
                .expect("a tree has a leaf");
            let mut path = vec![first];
            let mut prev = usize::MAX;
            let mut cur = first;
            while let Some(&next) = adj[cur].iter().find(|&&u| u != prev) {
                path.push(next);
                prev = cur;
                cur = next;
            }
            return Ok(Component {
                kind: DynkinKind::A(comp.len()),
                vertices: path,
            });
        }
        if branch.len() > 1 || adj[branch[0]].len() > 3 {
            return Err(Error::NotFiniteType(format!(
                "component {{{}}} is not a Dynkin diagram",
                label()
            )));
        }
        let center = branch[0];
        let mut arms: Vec<usize> = adj[center]
            .iter()
            .map(|&u| {
                let (mut len, mut prev, mut cur) = (1, center, u);
                while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                    len += 1;
                    prev = cur;
                    cur = next;
                }
                len
            })
            .collect();
        arms.sort_unstable();
        let kind = match arms.as_slice() {
            [1, 1, k] => DynkinKind::D(k + 3),
            [1, 2, 2] => DynkinKind::E(6),
            [1, 2, 3] => DynkinKind::E(7),
            [1, 2, 4] => DynkinKind::E(8),
            _ => {
                return Err(Error::NotFiniteType(format!(
                    "component {{{}}} has arms {arms:?}",
                    label()
                )))
            }
        };
        Ok(Component {
            kind,
            vertices: comp.to_vec(),
        })
    }

    /// Applies the simple reflection `s_i` to a root-lattice vector.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let dot: i64 = v.iter().enumerate().map(|(j, x)| self.cartan[i][j] * x).sum();
        let mut out = v.to_vec();
        out[i] -= dot;
        out
    }
}

/// Dynkin type of a connected finite-type component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinKind {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinKind {
    pub fn num_positive_roots(&self) -> usize {
        match *self {
            DynkinKind::A(n) => n * (n + 1) / 2,
            DynkinKind::D(n) => n * (n - 1),
            DynkinKind::E(6) => 36,
            DynkinKind::E(7) => 63,
            DynkinKind::E(_) => 120,
        }
    }
}

impl fmt::Display for DynkinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinKind::A(n) => write!(f, "A{n}"),
            DynkinKind::D(n) => write!(f, "D{n}"),
            DynkinKind::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A connected component; for type A the vertices are listed along the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: DynkinKind,
    pub vertices: Vec<usize>,
}

/// An element of `Q^+ = ⊕ N α_i`, stored as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QPlus(pub Vec<u32>);

impl QPlus {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn simple(i: usize, rank: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The vertex `i` if this is the simple root `α_i`.
    pub fn as_simple(&self) -> Option<usize> {
        (self.height() == 1).then(|| self.0.iter().position(|&c| c == 1).unwrap())
    }

    pub fn add(&self, other: &QPlus) -> QPlus {
        QPlus(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if it stays in `Q^+`.
    pub fn checked_sub(&self, other: &QPlus) -> Option<QPlus> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(QPlus)
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }

    pub fn from_i64(v: &[i64]) -> Option<QPlus> {
        v.iter()
            .map(|&c| u32::try_from(c).ok())
            .collect::<Option<Vec<_>>>()
            .map(QPlus)
    }

    /// Coefficients written as a digit string when all are single digits,
    /// e.g. `110`, otherwise as a dot-separated list.
    pub fn coord_string(&self) -> String {
        if self.0.iter().all(|&c| c < 10) {
            self.0.iter().map(|c| c.to_string()).collect()
        } else {
            self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Parses a comma-separated coefficient list such as `1,1,0`.
    pub fn parse(s: &str, rank: usize) -> Result<QPlus> {
        let v = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad weight coefficient {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if v.len() != rank {
            return Err(Error::Parse(format!(
                "weight {s:?} has {} coefficients, quiver has {rank} vertices",
                v.len()
            )));
        }
        Ok(QPlus(v))
    }

    /// Human-readable form such as `α1+α2` using the quiver's names.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("α{}", quiver.name(i))
                } else {
                    format!("{c}α{}", quiver.name(i))
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub type PositiveRoot = QPlus;

/// A word in the vertex set, as a sequence of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, rank: usize) -> QPlus {
        let mut v = vec![0; rank];
        for &i in &self.0 {
            v[i] += 1;
        }
        QPlus(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The word with letters `k` and `k+1` exchanged (1-based `k`).
    pub fn swapped(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.swap(k - 1, k);
        Word(v)
    }
}

/// All words of weight `alpha`, in lexicographic order.
pub fn words_of_weight(alpha: &QPlus) -> Vec<Word> {
    fn rec(rem: &mut Vec<u32>, cur: &mut Vec<usize>, left: usize, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i);
                rec(rem, cur, left - 1, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut alpha.0.clone(), &mut Vec::new(), alpha.height(), &mut out);
    out
}

/// A permutation of `{1, …, n}`, stored 0-based: `images[j] = w(j+1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The simple transposition `t_k = (k, k+1)`, with `1 <= k < n`.
    pub fn transposition(k: usize, n: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(k - 1, k);
        Self { images }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::IndexOutOfRange(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// `t_{i_1} ⋯ t_{i_k}` for 1-based generator indices.
    pub fn from_word(word: &[usize], n: usize) -> Self {
        let mut w = Self::identity(n);
        for &k in word {
            w = w.mul_simple_right(k);
        }
        w
    }

    /// The longest element `w_{[1,n]}`.
    pub fn longest(n: usize) -> Self {
        Self {
            images: (0..n).rev().collect(),
        }
    }

    /// All of `S_n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Self { images: cur.clone() }];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Self { images: cur.clone() });
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(j)` for a 0-based position `j`, 0-based.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &x)| j == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (j, &x) in self.images.iter().enumerate() {
            inv[x] = j;
        }
        Self { images: inv }
    }

    /// `w t_k`.
    pub fn mul_simple_right(&self, k: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(k - 1, k);
        Self { images }
    }

    /// `t_k w`.
    pub fn mul_simple_left(&self, k: usize) -> Permutation {
        Self {
            images: self
                .images
                .iter()
                .map(|&x| {
                    if x == k - 1 {
                        k
                    } else if x == k {
                        k - 1
                    } else {
                        x
                    }
                })
                .collect(),
        }
    }

    /// Whether `ℓ(t_k w) > ℓ(w)`.
    pub fn left_ascent(&self, k: usize) -> bool {
        let inv = self.inverse();
        inv.images[k - 1] < inv.images[k]
    }

    /// Whether `ℓ(w t_k) > ℓ(w)`.
    pub fn right_ascent(&self, k: usize) -> bool {
        self.images[k - 1] < self.images[k]
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut c = 0;
        for j in 0..n {
            for k in j + 1..n {
                if self.images[j] > self.images[k] {
                    c += 1;
                }
            }
        }
        c
    }

    /// The canonical reduced word: repeatedly strip the smallest right
    /// descent `k` (where `w(k) > w(k+1)`), reading the letters backwards.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut letters = Vec::new();
        while let Some(k) = (1..w.n()).find(|&k| !w.right_ascent(k)) {
            letters.push(k);
            w = w.mul_simple_right(k);
        }
        letters.reverse();
        letters
    }

    /// The word `w(𝐢)`: the letter at position `j` moves to position `w(j)`.
    pub fn act_on_word(&self, word: &Word) -> Word {
        let mut out = vec![0; word.len()];
        for (j, &letter) in word.0.iter().enumerate() {
            out[self.images[j]] = letter;
        }
        Word(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// `deg(w; 𝐢) = -Σ_{j<k, w(j)>w(k)} α_{i_j}·α_{i_k}`.
pub fn deg_w(quiver: &Quiver, w: &Permutation, word: &Word) -> i64 {
    let n = w.n();
    assert_eq!(n, word.len(), "permutation and word sizes differ");
    let mut d = 0;
    for j in 0..n {
        for k in j + 1..n {
            if w.images[j] > w.images[k] {
                d -= quiver.cartan(word.0[j], word.0[k]);
            }
        }
    }
    d
}

/// The positive roots, sorted by height and then by descending coefficient
/// vector (so simple roots come in vertex order).
pub fn positive_roots(quiver: &Quiver) -> Result<Vec<PositiveRoot>> {
    quiver.classify()?;
    let rank = quiver.rank();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..rank {
        let v = QPlus::simple(i, rank).as_i64();
        seen.insert(v.clone());
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            let r = quiver.reflect(i, &v);
            if r.iter().all(|&c| c >= 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<QPlus> = seen.iter().filter_map(|v| QPlus::from_i64(v)).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    Ok(roots)
}

/// A default reduced expression for the longest Weyl group element: the
/// staircase word `(1 2 … n)(1 2 … n-1) ⋯ (1)` along each type A path, and
/// the lexicographically least reduced word on other components.
/// Generator indices are 1-based vertex positions.
pub fn default_w0(quiver: &Quiver) -> Result<Vec<usize>> {
    let mut word = Vec::new();
    for comp in quiver.classify()? {
        match comp.kind {
            DynkinKind::A(n) => {
                let mut path = comp.vertices.clone();
                if path.first() > path.last() {
                    path.reverse();
                }
                for top in (1..=n).rev() {
                    word.extend(path[..top].iter().map(|&v| v + 1));
                }
            }
            _ => word.extend(lex_least_w0(quiver, &comp.vertices)),
        }
    }
    Ok(word)
}

type Mat = Vec<Vec<i64>>;

fn mat_identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Right multiplication by `s_i`: replaces column `i` with `M s_i(α_i)` and
/// so on; columns are images of simple roots.
fn mat_mul_simple_right(quiver: &Quiver, m: &Mat, i: usize) -> Mat {
    let n = m.len();
    let col_i: Vec<i64> = (0..n).map(|r| m[r][i]).collect();
    let mut out = m.clone();
    for j in 0..n {
        let c = quiver.cartan(i, j);
        for r in 0..n {
            out[r][j] -= c * col_i[r];
        }
    }
    out
}

fn column_negative(m: &Mat, i: usize) -> bool {
    m.iter().any(|row| row[i] < 0)
}

/// Lexicographically least reduced word for the longest element of the
/// parabolic subgroup on `verts`, by greedy choice of the smallest left
/// descent of the remaining element.
fn lex_least_w0(quiver: &Quiver, verts: &[usize]) -> Vec<usize> {
    let n = quiver.rank();
    // w0 of the parabolic subgroup by extending along ascents
    let mut w0 = mat_identity(n);
    while let Some(&i) = verts.iter().find(|&&i| !column_negative(&w0, i)) {
        w0 = mat_mul_simple_right(quiver, &w0, i);
    }
    // y = (remaining element)^{-1} = w0 * prefix
    let mut y = w0;
    let mut word = Vec::new();
    let mut sorted = verts.to_vec();
    sorted.sort_unstable();
    while let Some(&i) = sorted.iter().find(|&&i| column_negative(&y, i)) {
        word.push(i + 1);
        y = mat_mul_simple_right(quiver, &y, i);
    }
    word
}

/// A convex order on the positive roots induced by a reduced expression of
/// the longest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexOrder {
    w0: Vec<usize>,
    roots: Vec<PositiveRoot>,
    pos: BTreeMap<PositiveRoot, usize>,
}

impl ConvexOrder {
    /// Builds the order `β_k = s_{i_1} ⋯ s_{i_{k-1}}(α_{i_k})` from a
    /// 1-based generator word, rejecting words that are not reduced
    /// expressions of `w_0`.
    pub fn new(quiver: &Quiver, w0: &[usize]) -> Result<Self> {
        let all = positive_roots(quiver)?;
        let rank = quiver.rank();
        if w0.len() != all.len() {
            return Err(Error::InvalidReducedWord(format!(
                "length {} but there are {} positive roots",
                w0.len(),
                all.len()
            )));
        }
        let mut roots = Vec::with_capacity(w0.len());
        let mut pos = BTreeMap::new();
        for (k, &ik) in w0.iter().enumerate() {
            if ik == 0 || ik > rank {
                return Err(Error::InvalidReducedWord(format!("letter {ik} out of range")));
            }
            let mut v = QPlus::simple(ik - 1, rank).as_i64();
            for &ij in w0[..k].iter().rev() {
                v = quiver.reflect(ij - 1, &v);
            }
            let root = QPlus::from_i64(&v).ok_or_else(|| {
                Error::InvalidReducedWord(format!("{w0:?} is not reduced at position {}", k + 1))
            })?;
            if pos.insert(root.clone(), k).is_some() {
                return Err(Error::InvalidReducedWord(format!("{w0:?} repeats a root")));
            }
            roots.push(root);
        }
        Ok(Self {
            w0: w0.to_vec(),
            roots,
            pos,
        })
    }

    pub fn default_for(quiver: &Quiver) -> Result<Self> {
        Self::new(quiver, &default_w0(quiver)?)
    }

    pub fn w0(&self) -> &[usize] {
        &self.w0
    }

    /// The roots `β_1 ≺ β_2 ≺ ⋯ ≺ β_N`.
    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn position(&self, root: &QPlus) -> Option<usize> {
        self.pos.get(root).copied()
    }

    pub fn contains(&self, root: &QPlus) -> bool {
        self.pos.contains_key(root)
    }

    fn pos_of(&self, root: &QPlus) -> usize {
        self.pos[root]
    }

    /// Compares two positive roots in the convex order.
    pub fn cmp_roots(&self, a: &QPlus, b: &QPlus) -> Ordering {
        self.pos_of(a).cmp(&self.pos_of(b))
    }
}

/// A Kostant partition `λ_1 ⪰ ⋯ ⪰ λ_l`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KostantPartition {
    pub parts: Vec<PositiveRoot>,
}

impl KostantPartition {
    /// Checks that the parts are positive roots listed weakly decreasingly.
    pub fn new(parts: Vec<PositiveRoot>, order: &ConvexOrder) -> Result<Self> {
        for p in &parts {
            if !order.contains(p) {
                return Err(Error::NotSorted(format!("{:?} is not a positive root", p.0)));
            }
        }
        if parts
            .windows(2)
            .any(|w| order.cmp_roots(&w[0], &w[1]) == Ordering::Less)
        {
            return Err(Error::NotSorted(format!(
                "{:?}",
                parts.iter().map(|p| &p.0).collect::<Vec<_>>()
            )));
        }
        Ok(Self { parts })
    }

    pub fn weight(&self, rank: usize) -> QPlus {
        self.parts.iter().fold(QPlus::zero(rank), |a, b| a.add(b))
    }

    /// Multiplicities `m_β(λ)` of the distinct parts, in order of appearance.
    pub fn multiplicities(&self) -> Vec<(PositiveRoot, u32)> {
        let mut out: Vec<(PositiveRoot, u32)> = Vec::new();
        for p in &self.parts {
            match out.last_mut() {
                Some((r, m)) if r == p => *m += 1,
                _ => out.push((p.clone(), 1)),
            }
        }
        out
    }

    /// `s_λ = ½ Σ m_β(λ)(m_β(λ) - 1)`.
    pub fn s_lambda(&self) -> i64 {
        self.multiplicities()
            .iter()
            .map(|(_, m)| (*m as i64) * (*m as i64 - 1) / 2)
            .sum()
    }

    /// Parts as comma-joined coordinate strings, e.g. `010,100`.
    pub fn coord_key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.coord_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        format!(
            "({})",
            self.parts
                .iter()
                .map(|p| p.display(quiver))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// All Kostant partitions of `alpha`, listed in lexicographic order of the
/// convex positions of their parts (a linear extension of the
/// bilexicographic order).
pub fn kostant_partitions(alpha: &QPlus, order: &ConvexOrder) -> Vec<KostantPartition> {
    fn rec(
        rem: &QPlus,
        max_pos: usize,
        order: &ConvexOrder,
        cur: &mut Vec<PositiveRoot>,
        out: &mut Vec<KostantPartition>,
    ) {
        if rem.is_zero() {
            out.push(KostantPartition { parts: cur.clone() });
            return;
        }
        for p in 0..=max_pos {
            let root = &order.roots()[p];
            if let Some(next) = rem.checked_sub(root) {
                cur.push(root.clone());
                rec(&next, p, order, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if alpha.is_zero() {
        return vec![KostantPartition { parts: vec![] }];
    }
    let n = order.roots().len();
    rec(alpha, n - 1, order, &mut Vec::new(), &mut out);
    out
}

/// Minimal pairs `(β, γ)` for a non-simple positive root, sorted by the
/// convex position of `β`.
pub fn minimal_pairs(alpha: &PositiveRoot, order: &ConvexOrder) -> Result<Vec<(PositiveRoot, PositiveRoot)>> {
    if alpha.height() <= 1 {
        return Err(Error::SimpleRoot(format!("{:?}", alpha.0)));
    }
    if !order.contains(alpha) {
        return Err(Error::IndexOutOfRange(format!("{:?} is not a positive root", alpha.0)));
    }
    let mut pairs = Vec::new();
    for beta in order.roots() {
        if let Some(gamma) = alpha.checked_sub(beta) {
            if order.contains(&gamma) && order.cmp_roots(beta, &gamma) == Ordering::Greater {
                pairs.push((beta.clone(), gamma));
            }
        }
    }
    let a = order.pos_of(alpha);
    let minimal: Vec<_> = pairs
        .iter()
        .filter(|(b, g)| {
            let (pb, pg) = (order.pos_of(b), order.pos_of(g));
            !pairs.iter().any(|(b2, g2)| {
                let (pb2, pg2) = (order.pos_of(b2), order.pos_of(g2));
                (b2, g2) != (b, g) && pb > pb2 && pb2 > a && a > pg2 && pg2 > pg
            })
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// The strict bilexicographic order `λ ≺ μ`.
pub fn bilex_less(
    lam: &KostantPartition,
    mu: &KostantPartition,
    order: &ConvexOrder,
) -> Result<bool> {
    let rank = order.roots().first().map_or(0, |r| r.rank());
    if lam.weight(rank) != mu.weight(rank) {
        return Err(Error::WeightMismatch(format!(
            "{} vs {}",
            lam.coord_key(),
            mu.coord_key()
        )));
    }
    let first = lam
        .parts
        .iter()
        .zip(&mu.parts)
        .find(|(a, b)| a != b)
        .map(|(a, b)| order.cmp_roots(a, b) == Ordering::Less);
    let second = lam
        .parts
        .iter()
        .rev()
        .zip(mu.parts.iter().rev())
        .find(|(a, b)| a != b)
        .map(|(a, b)| order.cmp_roots(a, b) == Ordering::Greater);
    Ok(first == Some(true) && second == Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: &[u32]) -> QPlus {
        QPlus(v.to_vec())
    }

    fn kp(parts: &[&[u32]]) -> KostantPartition {
        KostantPartition {
            parts: parts.iter().map(|p| a(p)).collect(),
        }
    }

    #[test]
    fn form_examples() {
        let a2 = Quiver::type_a(2);
        assert_eq!(a2.form(&a(&[1, 0]), &a(&[1, 0])), 2);
        assert_eq!(a2.form(&a(&[1, 0]), &a(&[0, 1])), -1);
        let aff = Quiver::affine_a1();
        assert_eq!(aff.form(&a(&[1, 0]), &a(&[0, 1])), -2);
        assert_eq!(aff.form(&a(&[1, 1]), &a(&[1, 1])), 0);
    }

    #[test]
    fn words_examples() {
        let a2 = Quiver::type_a(2);
        let ws: Vec<String> = words_of_weight(&a(&[1, 1])).iter().map(|w| a2.format_word(w)).collect();
        assert_eq!(ws, ["12", "21"]);
        let ws: Vec<String> = words_of_weight(&a(&[2, 0])).iter().map(|w| a2.format_word(w)).collect();
        assert_eq!(ws, ["11"]);
        let a3 = Quiver::type_a(3);
        let ws: Vec<String> = words_of_weight(&a(&[1, 1, 1])).iter().map(|w| a3.format_word(w)).collect();
        assert_eq!(ws, ["123", "132", "213", "231", "312", "321"]);
    }

    #[test]
    fn deg_examples() {
        let a2 = Quiver::type_a(2);
        let w12 = a2.parse_word("12").unwrap();
        let w11 = a2.parse_word("11").unwrap();
        assert_eq!(deg_w(&a2, &Permutation::identity(2), &w12), 0);
        assert_eq!(deg_w(&a2, &Permutation::transposition(1, 2), &w12), 1);
        assert_eq!(deg_w(&a2, &Permutation::transposition(1, 2), &w11), -2);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(Permutation::transposition(1, 3).reduced_word(), vec![1]);
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn reduced_words_reproduce_permutations() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let rw = w.reduced_word();
                assert_eq!(rw.len(), w.length());
                assert_eq!(Permutation::from_word(&rw, n), w);
            }
        }
    }

    #[test]
    fn act_on_word_follows_positions() {
        let a3 = Quiver::type_a(3);
        let w = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(a3.format_word(&w.act_on_word(&a3.parse_word("123").unwrap())), "312");
        let t = Permutation::transposition(1, 2);
        assert_eq!(t.act_on_word(&Word(vec![0, 1])), Word(vec![1, 0]));
    }

    #[test]
    fn root_counts() {
        for n in 1..=6 {
            assert_eq!(positive_roots(&Quiver::type_a(n)).unwrap().len(), n * (n + 1) / 2);
        }
        for n in 4..=6 {
            assert_eq!(positive_roots(&Quiver::type_d(n)).unwrap().len(), n * (n - 1));
        }
        assert_eq!(positive_roots(&Quiver::type_e(6)).unwrap().len(), 36);
        assert_eq!(positive_roots(&Quiver::type_e(7)).unwrap().len(), 63);
        assert_eq!(positive_roots(&Quiver::type_e(8)).unwrap().len(), 120);
        assert!(matches!(
            positive_roots(&Quiver::affine_a1()),
            Err(Error::NotFiniteType(_))
        ));
    }

    #[test]
    fn a2_roots() {
        let roots = positive_roots(&Quiver::type_a(2)).unwrap();
        assert_eq!(roots, vec![a(&[1, 0]), a(&[0, 1]), a(&[1, 1])]);
    }

    #[test]
    fn classification() {
        assert_eq!(Quiver::type_d(5).classify().unwrap()[0].kind, DynkinKind::D(5));
        assert_eq!(Quiver::type_e(7).classify().unwrap()[0].kind, DynkinKind::E(7));
        let cyc = Quiver::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1)],
        )
        .unwrap();
        assert!(cyc.classify().is_err());
        let two = Quiver::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 2, 1)]).unwrap();
        let comps = two.classify().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(positive_roots(&two).unwrap().len(), 4);
        assert_eq!(default_w0(&two).unwrap().len(), 4);
    }

    #[test]
    fn convex_order_examples() {
        let a2 = Quiver::type_a(2);
        let o = ConvexOrder::new(&a2, &[1, 2, 1]).unwrap();
        assert_eq!(o.roots(), &[a(&[1, 0]), a(&[1, 1]), a(&[0, 1])]);
        let o = ConvexOrder::new(&a2, &[2, 1, 2]).unwrap();
        assert_eq!(o.roots(), &[a(&[0, 1]), a(&[1, 1]), a(&[1, 0])]);
        assert!(ConvexOrder::new(&a2, &[1, 1, 2]).is_err());
        assert!(ConvexOrder::new(&a2, &[1, 2]).is_err());
    }

    #[test]
    fn a3_default_order_is_segment_lex() {
        let a3 = Quiver::type_a(3);
        let o = ConvexOrder::default_for(&a3).unwrap();
        // α_{i,j} = α_i + … + α_j ordered by (i, j)
        let expect = [
            a(&[1, 0, 0]),
            a(&[1, 1, 0]),
            a(&[1, 1, 1]),
            a(&[0, 1, 0]),
            a(&[0, 1, 1]),
            a(&[0, 0, 1]),
        ];
        assert_eq!(o.roots(), &expect);
    }

    #[test]
    fn lex_least_w0_words() {
        let a3 = Quiver::type_a(3);
        assert_eq!(lex_least_w0(&a3, &[0, 1, 2]), vec![1, 2, 1, 3, 2, 1]);
        let d4 = Quiver::type_d(4);
        let w = default_w0(&d4).unwrap();
        assert_eq!(w.len(), 12);
        assert_eq!(w[0], 1);
        assert!(ConvexOrder::new(&d4, &w).is_ok());
        for e in 6..=8 {
            let q = Quiver::type_e(e);
            assert!(ConvexOrder::default_for(&q).is_ok());
        }
    }

    #[test]
    fn kostant_examples() {
        let a2 = Quiver::type_a(2);
        let o = ConvexOrder::new(&a2, &[1, 2, 1]).unwrap();
        let kps = kostant_partitions(&a(&[1, 1]), &o);
        assert_eq!(kps, vec![kp(&[&[1, 1]]), kp(&[&[0, 1], &[1, 0]])]);
        assert_eq!(kostant_partitions(&a(&[1, 0]), &o), vec![kp(&[&[1, 0]])]);
        let a3 = Quiver::type_a(3);
        let o3 = ConvexOrder::default_for(&a3).unwrap();
        let kps = kostant_partitions(&a(&[1, 1, 1]), &o3);
        assert_eq!(
            kps,
            vec![
                kp(&[&[1, 1, 1]]),
                kp(&[&[0, 1, 1], &[1, 0, 0]]),
                kp(&[&[0, 0, 1], &[1, 1, 0]]),
                kp(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
            ]
        );
    }

    #[test]
    fn minimal_pair_examples() {
        let a2 = Quiver::type_a(2);
        let o = ConvexOrder::new(&a2, &[1, 2, 1]).unwrap();
        assert_eq!(
            minimal_pairs(&a(&[1, 1]), &o).unwrap(),
            vec![(a(&[0, 1]), a(&[1, 0]))]
        );
        assert!(matches!(minimal_pairs(&a(&[1, 0]), &o), Err(Error::SimpleRoot(_))));
        let a3 = Quiver::type_a(3);
        let o3 = ConvexOrder::default_for(&a3).unwrap();
        let mp = minimal_pairs(&a(&[1, 1, 1]), &o3).unwrap();
        assert!(mp.contains(&(a(&[0, 0, 1]), a(&[1, 1, 0]))));
    }

    #[test]
    fn bilex_examples() {
        let a2 = Quiver::type_a(2);
        let o = ConvexOrder::new(&a2, &[1, 2, 1]).unwrap();
        let l = kp(&[&[1, 1]]);
        let m = kp(&[&[0, 1], &[1, 0]]);
        assert!(bilex_less(&l, &m, &o).unwrap());
        assert!(!bilex_less(&l, &l, &o).unwrap());
        assert!(!bilex_less(&m, &l, &o).unwrap());
        let a3 = Quiver::type_a(3);
        let o3 = ConvexOrder::default_for(&a3).unwrap();
        assert!(bilex_less(&kp(&[&[1, 1, 1]]), &kp(&[&[0, 0, 1], &[1, 1, 0]]), &o3).unwrap());
        assert!(bilex_less(&kp(&[&[1, 1, 1]]), &kp(&[&[1, 0, 0]]), &o3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::type_d(4);
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        let q = Quiver::from_json(r#"{"vertices":["1","2"],"edges":[["1","2",1]]}"#).unwrap();
        assert_eq!(q, Quiver::type_a(2));
        assert!(Quiver::from_json(r#"{"vertices":["1"],"edges":[["1","1",1]]}"#).is_err());
        assert!(Quiver::from_json(r#"{"vertices":["1"],"edges":[["1","3",1]]}"#).is_err());
    }
}
