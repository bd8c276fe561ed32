use std::fmt;

/// A necklace of fixed content: the rotation class of a string over the
/// alphabet `0..m`, stored through its lexicographically smallest rotation.
///
/// Symbols are 0-based in the API and printed 1-based, so the necklace with
/// representative `[0, 1, 2]` displays as `123`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    representative: Vec<usize>,
    kind: Vec<usize>,
    block_length: usize,
}

impl Necklace {
    /// Canonicalize an arbitrary string over `0..alphabet`.
    pub fn from_string(s: &[usize], alphabet: usize) -> Self {
        let mut kind = vec![0; alphabet];
        for &c in s {
            kind[c] += 1;
        }
        let representative = (0..s.len().max(1))
            .map(|r| rotate(s, r))
            .min()
            .unwrap_or_default();
        let block_length = smallest_period(&representative);
        Necklace { representative, kind, block_length }
    }

    pub fn representative(&self) -> &[usize] {
        &self.representative
    }

    /// Symbol counts (the kind of the necklace).
    pub fn kind(&self) -> &[usize] {
        &self.kind
    }

    /// Smallest period of the representative; divides its length.
    pub fn block_length(&self) -> usize {
        self.block_length
    }

    /// Number of copies of the primitive block, |i| / block_length.
    pub fn repetitions(&self) -> usize {
        self.representative.len() / self.block_length
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    /// Aperiodic necklaces are Lyndon words.
    pub fn is_lyndon(&self) -> bool {
        self.repetitions() == 1
    }

    /// The distinct rotations of the representative, starting with the
    /// representative itself. There are exactly `block_length` of them.
    pub fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.block_length).map(|r| rotate(&self.representative, r)).collect()
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.representative))
    }
}

/// Render a 0-based word 1-based; symbols beyond 9 are comma separated.
pub fn format_word(word: &[usize]) -> String {
    if word.iter().all(|&c| c < 9) {
        word.iter().map(|&c| char::from(b'1' + c as u8)).collect()
    } else {
        word.iter().map(|&c| (c + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

fn rotate(s: &[usize], r: usize) -> Vec<usize> {
    s[r..].iter().chain(&s[..r]).copied().collect()
}

fn smallest_period(s: &[usize]) -> usize {
    let n = s.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|k| s[k] == s[k - p]))
        .unwrap_or(n)
}

/// All necklaces of kind `i`: strings using symbol k exactly `i[k]` times,
/// up to rotation, in lexicographic order of their representatives.
///
/// Generated by the FKM prenecklace recursion with the remaining symbol
/// counts pruning each branch; no string is canonicalized after the fact.
pub fn necklaces_of_kind(i: &[usize]) -> Vec<Necklace> {
    let n: usize = i.iter().sum();
    if n == 0 {
        return Vec::new();
    }
    let mut state = FixedContent {
        n,
        word: vec![0; n + 1],
        remaining: i.to_vec(),
        out: Vec::new(),
        kind: i.to_vec(),
    };
    // word[0] is a sentinel so that word[t - p] is defined for t = 1, p = 1
    state.generate(1, 1);
    state.out
}

struct FixedContent {
    n: usize,
    word: Vec<usize>,
    remaining: Vec<usize>,
    kind: Vec<usize>,
    out: Vec<Necklace>,
}

impl FixedContent {
    fn generate(&mut self, t: usize, p: usize) {
        if t > self.n {
            if self.n.is_multiple_of(p) {
                self.out.push(Necklace {
                    representative: self.word[1..].to_vec(),
                    kind: self.kind.clone(),
                    block_length: p,
                });
            }
            return;
        }
        let lower = if t == 1 { 0 } else { self.word[t - p] };
        for symbol in lower..self.remaining.len() {
            if self.remaining[symbol] == 0 {
                continue;
            }
            self.word[t] = symbol;
            self.remaining[symbol] -= 1;
            if symbol == self.word[t - p] && t > 1 {
                self.generate(t + 1, p);
            } else {
                self.generate(t + 1, t);
            }
            self.remaining[symbol] += 1;
        }
    }
}

/// Distinct rotations of a necklace (free-function form).
pub fn necklace_rotations(a: &Necklace) -> Vec<Vec<usize>> {
    a.rotations()
}

/// Number of necklaces of length `j` over an `m`-letter alphabet,
/// (1/j) Σ_{d | j} φ(d) m^{j/d}.
pub fn necklace_count(m: usize, j: usize) -> u128 {
    if j == 0 {
        return 1;
    }
    let total: u128 = (1..=j)
        .filter(|d| j.is_multiple_of(*d))
        .map(|d| euler_phi(d) as u128 * (m as u128).pow((j / d) as u32))
        .sum();
    total / j as u128
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All compositions of `total` into `parts` nonnegative components, in
/// lexicographic order.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fill(total, parts, &mut current, &mut out);
    out
}

fn fill(remaining: usize, parts: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() + 1 == parts {
        current.push(remaining);
        out.push(current.clone());
        current.pop();
        return;
    }
    if parts == 0 {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in 0..=remaining {
        current.push(k);
        fill(remaining - k, parts, current, out);
        current.pop();
    }
}

/// Every distinct string with content `i` (all arrangements of the multiset),
/// in lexicographic order.
pub fn strings_of_kind(i: &[usize]) -> Vec<Vec<usize>> {
    let mut word: Vec<usize> = i
        .iter()
        .enumerate()
        .flat_map(|(sym, &count)| std::iter::repeat_n(sym, count))
        .collect();
    let mut out = vec![word.clone()];
    while next_permutation(&mut word) {
        out.push(word.clone());
    }
    out
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut k = v.len() - 1;
    while k > 0 && v[k - 1] >= v[k] {
        k -= 1;
    }
    if k == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[k - 1] {
        j -= 1;
    }
    v.swap(k - 1, j);
    v[k..].reverse();
    true
}
