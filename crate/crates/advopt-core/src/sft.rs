//! One-step shifts of finite type in vertex form: letters are vertices of a
//! digraph and a bi-infinite sequence is a point of the shift exactly when
//! every adjacent pair is an edge.
//!
//! Multi-step presentations (forbidden-word lists) are recoded to one-step
//! form by a sliding block code before anything else runs, so every other
//! module only ever sees adjacency constraints and radius-0 potentials.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Ordered finite list of symbol identifiers. The order is fixed at
/// construction and is the order used for every lexicographic tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new(letters: Vec<String>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Schema("alphabet must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in letters.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate letter {l:?}")));
            }
        }
        Ok(Alphabet { letters, index })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i]
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Render a letter-index word. Single-character alphabets are joined
    /// bare, anything else comma-separated.
    pub fn format_word(&self, word: &[usize]) -> String {
        if self.letters.iter().all(|l| l.chars().count() == 1) {
            word.iter().map(|&i| self.letters[i].as_str()).collect()
        } else {
            word.iter()
                .map(|&i| self.letters[i].as_str())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

/// A finite legal block, positioned on the integer line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub start: i64,
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(start: i64, letters: Vec<usize>) -> Self {
        Word { start, letters }
    }

    pub fn from_letters(letters: Vec<usize>) -> Self {
        Word { start: 0, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64 - 1
    }

    /// Letter at absolute position `j`; panics if out of range.
    pub fn at(&self, j: i64) -> usize {
        assert!(j >= self.start && j <= self.end(), "position {j} outside word");
        self.letters[(j - self.start) as usize]
    }

    pub fn covers(&self, a: i64, b: i64) -> bool {
        self.start <= a && b <= self.end()
    }
}

/// One-step shift of finite type. Construction prunes non-essential letters
/// (letters missing a successor or a predecessor) until a fixed point; an
/// empty fixed point is rejected because no bi-infinite point exists.
#[derive(Debug, Clone)]
pub struct Sft {
    alphabet: Alphabet,
    allowed: Vec<Vec<bool>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Sft {
    pub fn new(alphabet: Alphabet, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = alphabet.len();
        let mut allowed = vec![vec![false; n]; n];
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::Schema(format!("edge ({u}, {v}) out of range")));
            }
            allowed[u][v] = true;
        }
        Self::new_pruned(alphabet, allowed).map(|(sft, _)| sft)
    }

    /// Like [`Sft::new`] but also reports which original letter indices
    /// survived pruning, in order.
    pub fn new_pruned(alphabet: Alphabet, mut allowed: Vec<Vec<bool>>) -> Result<(Self, Vec<usize>)> {
        let n = alphabet.len();
        assert!(allowed.len() == n && allowed.iter().all(|r| r.len() == n));
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for u in 0..n {
                if !alive[u] {
                    continue;
                }
                let has_succ = (0..n).any(|v| alive[v] && allowed[u][v]);
                let has_pred = (0..n).any(|v| alive[v] && allowed[v][u]);
                if !has_succ || !has_pred {
                    alive[u] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&u| alive[u]).collect();
        if kept.is_empty() {
            return Err(Error::EmptyShift);
        }
        for row in allowed.iter_mut() {
            for (v, cell) in row.iter_mut().enumerate() {
                if !alive[v] {
                    *cell = false;
                }
            }
        }
        let letters: Vec<String> = kept.iter().map(|&u| alphabet.letters[u].clone()).collect();
        let alphabet = Alphabet::new(letters)?;
        let m = kept.len();
        let mut adj = vec![vec![false; m]; m];
        for (i, &u) in kept.iter().enumerate() {
            for (j, &v) in kept.iter().enumerate() {
                adj[i][j] = allowed[u][v];
            }
        }
        let succ = (0..m)
            .map(|u| (0..m).filter(|&v| adj[u][v]).collect())
            .collect();
        let pred = (0..m)
            .map(|v| (0..m).filter(|&u| adj[u][v]).collect())
            .collect();
        Ok((
            Sft {
                alphabet,
                allowed: adj,
                succ,
                pred,
            },
            kept,
        ))
    }

    /// Full shift: every transition allowed.
    pub fn full_shift(letters: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(letters.iter().map(|s| s.to_string()).collect())?;
        let n = alphabet.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
        Self::new(alphabet, &pairs)
    }

    /// Build from named edges.
    pub fn from_edges(letters: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(letters.iter().map(|s| s.to_string()).collect())?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let ui = alphabet
                .index_of(u)
                .ok_or_else(|| Error::UnknownLetter(u.to_string()))?;
            let vi = alphabet
                .index_of(v)
                .ok_or_else(|| Error::UnknownLetter(v.to_string()))?;
            pairs.push((ui, vi));
        }
        Self::new(alphabet, &pairs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: essential and nonempty
    }

    pub fn is_allowed(&self, u: usize, v: usize) -> bool {
        self.allowed[u][v]
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.len()).sum()
    }

    pub fn is_legal_word(&self, letters: &[usize]) -> bool {
        !letters.is_empty()
            && letters.iter().all(|&l| l < self.len())
            && letters.windows(2).all(|w| self.allowed[w[0]][w[1]])
    }

    /// Legal letter-index words of length `k`, lexicographic in the alphabet
    /// order. Every word extends to a bi-infinite point because the shift is
    /// essential.
    pub fn legal_words(&self, k: usize) -> Vec<Vec<usize>> {
        assert!(k >= 1);
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(k);
        self.words_rec(k, &mut word, &mut out);
        out
    }

    fn words_rec(&self, k: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if word.len() == k {
            out.push(word.clone());
            return;
        }
        match word.last().copied() {
            None => {
                for v in 0..self.len() {
                    word.push(v);
                    self.words_rec(k, word, out);
                    word.pop();
                }
            }
            Some(u) => {
                for i in 0..self.succ[u].len() {
                    let v = self.succ[u][i];
                    word.push(v);
                    self.words_rec(k, word, out);
                    word.pop();
                }
            }
        }
    }

    /// Exactly the legal words of length `k` as positioned [`Word`]s.
    pub fn enumerate_words(&self, k: usize) -> Vec<Word> {
        self.legal_words(k).into_iter().map(Word::from_letters).collect()
    }

    /// Exact count of legal words of length `k`: the sum of the entries of
    /// the `(k-1)`-th power of the 0/1 transition matrix.
    pub fn count_words(&self, k: usize) -> BigUint {
        assert!(k >= 1);
        let n = self.len();
        // row vector of ones times A^(k-1), summed
        let mut row = vec![BigUint::from(1u32); n];
        for _ in 1..k {
            let mut next = vec![BigUint::zero(); n];
            for u in 0..n {
                if row[u].is_zero() {
                    continue;
                }
                for &v in &self.succ[u] {
                    next[v] += &row[u];
                }
            }
            row = next;
        }
        row.into_iter().sum()
    }

    /// The forbidden-word presentation of this one-step shift: the illegal
    /// pairs, step 1.
    pub fn presentation(&self) -> MStepPresentation {
        let n = self.len();
        let mut forbidden = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if !self.allowed[u][v] {
                    forbidden.push(vec![u, v]);
                }
            }
        }
        MStepPresentation {
            alphabet: self.alphabet.clone(),
            forbidden,
            step: 1,
        }
    }
}

// ---------------------------------------------------------------------------
// transitivity

/// Default search cap for the transitivity constant.
pub fn default_transitivity_cap(letters: usize) -> u64 {
    (4 * letters * letters).max(4) as u64
}

/// Smallest `D <= cap` such that for every ordered letter pair `(u, v)` and
/// every `n >= D` there is a legal path of exactly `n` edges from `u` to
/// `v`; `None` if no such `D <= cap` exists. For an essential shift this is
/// the primitivity index of the transition matrix, so the search first
/// rejects imprimitive graphs (not strongly connected, or cycle-length gcd
/// > 1) without iterating to the cap.
pub fn transitivity_constant(sft: &Sft, cap: u64) -> Option<u64> {
    assert!(cap >= 1);
    let n = sft.len();
    if !strongly_connected(sft) || cycle_gcd(sft) != 1 {
        return None;
    }
    // A^D all positive implies A^n all positive for n >= D (every letter has
    // a predecessor), so the first all-positive power is the answer.
    let words = n.div_ceil(64);
    let full = |row: &[u64]| {
        (0..n).all(|v| row[v / 64] >> (v % 64) & 1 == 1)
    };
    let mut base = vec![vec![0u64; words]; n];
    for u in 0..n {
        for &v in &sft.succ[u] {
            base[u][v / 64] |= 1 << (v % 64);
        }
    }
    let mut power = base.clone();
    for d in 1..=cap {
        if power.iter().all(|row| full(row)) {
            return Some(d);
        }
        if d == cap {
            break;
        }
        // power <- power * base
        let mut next = vec![vec![0u64; words]; n];
        for u in 0..n {
            for j in 0..n {
                if power[u][j / 64] >> (j % 64) & 1 == 1 {
                    for (w, b) in next[u].iter_mut().zip(&base[j]) {
                        *w |= b;
                    }
                }
            }
        }
        power = next;
    }
    None
}

fn strongly_connected(sft: &Sft) -> bool {
    fn reach(n: usize, adj: impl Fn(usize) -> Vec<usize>) -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in adj(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
    reach(sft.len(), |u| sft.successors(u).to_vec())
        && reach(sft.len(), |u| sft.predecessors(u).to_vec())
}

/// Gcd of cycle lengths, computed from a BFS layering; only meaningful when
/// the graph is strongly connected.
fn cycle_gcd(sft: &Sft) -> u64 {
    let n = sft.len();
    let mut depth = vec![None::<u64>; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    depth[0] = Some(0);
    let mut g: u64 = 0;
    while let Some(u) = queue.pop_front() {
        for &v in sft.successors(u) {
            match depth[v] {
                None => {
                    depth[v] = Some(depth[u].unwrap() + 1);
                    queue.push_back(v);
                }
                Some(dv) => {
                    let du = depth[u].unwrap();
                    g = num_integer::gcd(g, (du + 1).abs_diff(dv));
                }
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// recoding

/// An `M`-step presentation: a finite alphabet plus forbidden words of
/// length at most `M + 1`.
#[derive(Debug, Clone)]
pub struct MStepPresentation {
    pub alphabet: Alphabet,
    pub forbidden: Vec<Vec<usize>>,
    pub step: usize,
}

impl MStepPresentation {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Vec<usize>>, step: usize) -> Result<Self> {
        for w in &forbidden {
            if w.is_empty() || w.len() > step + 1 {
                return Err(Error::Schema(format!(
                    "forbidden word of length {} incompatible with step {step}",
                    w.len()
                )));
            }
            if w.iter().any(|&l| l >= alphabet.len()) {
                return Err(Error::Schema("forbidden word letter out of range".into()));
            }
        }
        Ok(MStepPresentation {
            alphabet,
            forbidden,
            step,
        })
    }
}

/// Sliding block code from an `M`-step presentation to a one-step shift over
/// window letters. The window radius is the least `N` with `2N + 2 >= M + 1`
/// (so adjacent window pairs see every forbidden factor), enlarged to a
/// requested potential window `L`; `N = 0` gives the identity recoding.
#[derive(Debug, Clone)]
pub struct RecodingMap {
    radius: usize,
    source: Alphabet,
    blocks: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl RecodingMap {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        &self.source
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Source word behind a block letter; length `2N + 1`.
    pub fn decode_letter(&self, block: usize) -> &[usize] {
        &self.blocks[block]
    }

    /// Center source letter of a block.
    pub fn center(&self, block: usize) -> usize {
        self.blocks[block][self.radius]
    }

    pub fn encode_letter(&self, window: &[usize]) -> Option<usize> {
        self.index.get(window).copied()
    }

    /// Encode a source word of length `>= 2N + 1` into an image word of
    /// length `len - 2N`; `None` if some window is not a block letter.
    pub fn encode_word(&self, src: &[usize]) -> Option<Vec<usize>> {
        let w = 2 * self.radius + 1;
        if src.len() < w {
            return None;
        }
        src.windows(w).map(|win| self.encode_letter(win)).collect()
    }

    /// Decode an image word back to the source word of length
    /// `len + 2N`; `None` if adjacent blocks disagree on their overlap.
    pub fn decode_word(&self, image: &[usize]) -> Option<Vec<usize>> {
        let first = self.blocks.get(*image.first()?)?;
        let mut out = first.clone();
        for pair in image.windows(2) {
            let (a, b) = (&self.blocks[pair[0]], &self.blocks[pair[1]]);
            if a[1..] != b[..b.len() - 1] {
                return None;
            }
            out.push(*b.last().unwrap());
        }
        Some(out)
    }
}

/// Recode an `M`-step presentation into a one-step [`Sft`] together with the
/// block code, with the window enlarged so a potential of radius `window`
/// becomes radius 0 on block letters.
pub fn recode(pres: &MStepPresentation, window: usize) -> Result<(Sft, RecodingMap)> {
    let radius = (pres.step / 2).max(window);
    let src_n = pres.alphabet.len();
    let forbidden: HashSet<Vec<usize>> = pres.forbidden.iter().cloned().collect();
    let max_flen = pres.forbidden.iter().map(|w| w.len()).max().unwrap_or(0);
    let clean = |word: &[usize]| -> bool {
        // no forbidden factor ends at the last position
        let end = word.len();
        for flen in 1..=max_flen.min(end) {
            if forbidden.contains(&word[end - flen..end]) {
                return false;
            }
        }
        true
    };

    // enumerate legal windows of length 2*radius + 1
    let wlen = 2 * radius + 1;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..src_n)
        .rev()
        .map(|l| vec![l])
        .filter(|w| clean(w))
        .collect();
    while let Some(word) = stack.pop() {
        if word.len() == wlen {
            blocks.push(word);
            continue;
        }
        for l in (0..src_n).rev() {
            let mut next = word.clone();
            next.push(l);
            if clean(&next) {
                stack.push(next);
            }
        }
    }
    blocks.sort();
    if blocks.is_empty() {
        return Err(Error::EmptyShift);
    }

    // block names; "." join, disambiguated if source names collide under it
    let mut names: Vec<String> = blocks
        .iter()
        .map(|b| {
            if radius == 0 {
                pres.alphabet.letter(b[0]).to_string()
            } else {
                b.iter()
                    .map(|&l| pres.alphabet.letter(l))
                    .collect::<Vec<_>>()
                    .join(".")
            }
        })
        .collect();
    {
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (i, name) in names.iter_mut().enumerate() {
            if let Some(_prev) = seen.insert(name.clone(), i) {
                *name = format!("{name}#{i}");
            }
        }
    }

    // transitions: overlap agreement plus legality of the joined word
    let m = blocks.len();
    let mut allowed = vec![vec![false; m]; m];
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate() {
            let ok = if radius == 0 {
                clean(&[a[0], b[0]])
            } else {
                a[1..] == b[..wlen - 1] && {
                    let mut joined = a.clone();
                    joined.push(*b.last().unwrap());
                    clean(&joined)
                }
            };
            allowed[i][j] = ok;
        }
    }

    let alphabet = Alphabet::new(names)?;
    let (sft, kept) = Sft::new_pruned(alphabet, allowed)?;
    let blocks: Vec<Vec<usize>> = kept.iter().map(|&i| blocks[i].clone()).collect();
    let index = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    Ok((
        sft,
        RecodingMap {
            radius,
            source: pres.alphabet.clone(),
            blocks,
            index,
        },
    ))
}

/// Recode an already one-step shift by a symmetric window of the given
/// radius (block letters are the legal `2r + 1`-words).
pub fn power_recode(sft: &Sft, radius: usize) -> Result<(Sft, RecodingMap)> {
    recode(&sft.presentation(), radius)
}

// ---------------------------------------------------------------------------
// periodic orbits

/// A primitive cycle in canonical (lexicographically least) rotation,
/// representing the uniform measure on the orbit of the periodic point it
/// spells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    letters: Vec<usize>,
}

impl PeriodicOrbit {
    /// Validate a cycle word (last letter may legally be followed by the
    /// first), reduce it to its primitive root, and store the canonical
    /// rotation.
    pub fn new(sft: &Sft, letters: &[usize]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Schema("empty orbit word".into()));
        }
        if !sft.is_legal_word(letters) || !sft.is_allowed(letters[letters.len() - 1], letters[0]) {
            return Err(Error::Schema("orbit word is not a legal cycle".into()));
        }
        let root = primitive_root(letters);
        Ok(PeriodicOrbit {
            letters: canonical_rotation(root),
        })
    }

    pub fn period(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Letter at absolute position `j` of the periodic point.
    pub fn letter_at(&self, j: i64) -> usize {
        let p = self.letters.len() as i64;
        self.letters[(j.rem_euclid(p)) as usize]
    }

    /// Periodic expansion over `[from, to]`.
    pub fn word(&self, from: i64, to: i64) -> Word {
        assert!(from <= to);
        Word::new(from, (from..=to).map(|j| self.letter_at(j)).collect())
    }
}

fn primitive_root(letters: &[usize]) -> &[usize] {
    let p = letters.len();
    for d in 1..=p {
        if p % d == 0 && letters.chunks(d).all(|c| c == &letters[..d]) {
            return &letters[..d];
        }
    }
    letters
}

fn canonical_rotation(letters: &[usize]) -> Vec<usize> {
    let p = letters.len();
    (0..p)
        .map(|r| {
            let mut rot = letters[r..].to_vec();
            rot.extend_from_slice(&letters[..r]);
            rot
        })
        .min()
        .unwrap()
}

/// All primitive cycles of period at most `max_period`, canonical rotations,
/// sorted by (period, letters), no duplicates.
pub fn enumerate_periodic_orbits(sft: &Sft, max_period: usize) -> Vec<PeriodicOrbit> {
    assert!(max_period >= 1);
    let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut word: Vec<usize> = Vec::new();
    for p in 1..=max_period {
        cycles_rec(sft, p, &mut word, &mut seen);
    }
    seen.into_iter()
        .map(|(_, letters)| PeriodicOrbit { letters })
        .collect()
}

fn cycles_rec(sft: &Sft, p: usize, word: &mut Vec<usize>, seen: &mut BTreeSet<(usize, Vec<usize>)>) {
    if word.len() == p {
        if sft.is_allowed(word[p - 1], word[0]) && primitive_root(word).len() == p {
            let canon = canonical_rotation(word);
            seen.insert((p, canon));
        }
        return;
    }
    let choices: Vec<usize> = match word.last() {
        None => (0..sft.len()).collect(),
        Some(&u) => sft.successors(u).to_vec(),
    };
    for v in choices {
        word.push(v);
        cycles_rec(sft, p, word, seen);
        word.pop();
    }
}

// ---------------------------------------------------------------------------
// documents

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SftDoc {
    letters: Vec<String>,
    #[serde(default)]
    allowed: Option<Vec<(String, String)>>,
    #[serde(default)]
    forbidden_words: Option<Vec<Vec<String>>>,
    #[serde(default)]
    step: Option<usize>,
}

/// Load a shift document. Two schemas are accepted:
/// `{"letters": [...], "allowed": [[u, v], ...]}` for one-step input, and
/// `{"letters": [...], "forbidden_words": [[...], ...], "step": M}` for an
/// `M`-step presentation, which is recoded to one-step on load.
pub fn load_sft(json: &str) -> Result<Sft> {
    load_sft_with_map(json).map(|(sft, _)| sft)
}

/// Like [`load_sft`] but also returns the block code when the input needed
/// recoding, so callers can lift letter-indexed potentials.
pub fn load_sft_with_map(json: &str) -> Result<(Sft, Option<RecodingMap>)> {
    let doc: SftDoc = serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    let alphabet = Alphabet::new(doc.letters)?;
    match (doc.allowed, doc.forbidden_words, doc.step) {
        (Some(pairs), None, None) => {
            let mut indexed = Vec::with_capacity(pairs.len());
            for (u, v) in pairs {
                let ui = alphabet
                    .index_of(&u)
                    .ok_or(Error::UnknownLetter(u.clone()))?;
                let vi = alphabet
                    .index_of(&v)
                    .ok_or(Error::UnknownLetter(v.clone()))?;
                indexed.push((ui, vi));
            }
            Ok((Sft::new(alphabet, &indexed)?, None))
        }
        (None, Some(words), Some(step)) => {
            let mut forbidden = Vec::with_capacity(words.len());
            for w in words {
                let mut iw = Vec::with_capacity(w.len());
                for l in w {
                    iw.push(alphabet.index_of(&l).ok_or(Error::UnknownLetter(l.clone()))?);
                }
                forbidden.push(iw);
            }
            let pres = MStepPresentation::new(alphabet, forbidden, step)?;
            let (sft, map) = recode(&pres, 0)?;
            Ok((sft, Some(map)))
        }
        (None, Some(_), None) => Err(Error::Schema(
            "forbidden_words requires an explicit step".into(),
        )),
        _ => Err(Error::Schema(
            "document must carry exactly one of `allowed` or `forbidden_words`".into(),
        )),
    }
}
