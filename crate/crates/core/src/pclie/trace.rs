use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use super::{CommutationGraph, PcError};

/// Lexicographically least representative of a commutation class, as vertex
/// indices. Traces are ordered graded-lex: by length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Trace(pub Vec<u8>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl Ord for Trace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Trace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic normal form by repeatedly extracting the least letter that
/// can be commuted to the front.
pub(crate) fn normal_form_indices(word: &[u8], graph: &CommutationGraph) -> Vec<u8> {
    let mut rest = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let a = rest[p];
            if best.is_some_and(|b| rest[b] <= a) {
                continue;
            }
            if rest[..p].iter().all(|&b| graph.commute(a, b)) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter can always move to the front");
        out.push(rest.remove(p));
    }
    out
}

/// All words of the commutation class of `word`, by adjacent swaps.
pub fn commutation_class(word: &[u8], graph: &CommutationGraph) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            if graph.commute(w[i], w[i + 1]) {
                let mut next = w.clone();
                next.swap(i, i + 1);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Least element of the commutation class, found by exhaustive search.
pub fn bfs_normal_form(word: &[u8], graph: &CommutationGraph) -> Vec<u8> {
    commutation_class(word, graph)
        .into_iter()
        .next()
        .expect("class contains the word")
}

impl CommutationGraph {
    pub fn trace_of_indices(&self, word: &[u8]) -> Result<Trace, PcError> {
        if let Some(&bad) = word.iter().find(|&&v| v as usize >= self.len()) {
            return Err(PcError::UnknownVertex(bad.to_string()));
        }
        Ok(Trace(normal_form_indices(word, self)))
    }

    /// Normal form of a word given by vertex labels.
    pub fn trace_normal_form<S: AsRef<str>>(&self, word: &[S]) -> Result<Trace, PcError> {
        let indices = word
            .iter()
            .map(|s| {
                self.index_of(s.as_ref()).map(|v| v as u8)
                    .ok_or_else(|| PcError::UnknownVertex(s.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Trace(normal_form_indices(&indices, self)))
    }

    pub fn render_trace(&self, t: &Trace) -> String {
        t.0.iter()
            .map(|&v| self.vertices()[v as usize].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Upper bound on `|V|^n` for the exhaustive count.
const MAX_ENUMERATED_WORDS: u64 = 1 << 24;

/// Number of distinct traces of length `n`, by enumerating all `|V|^n` words
/// and sweeping out commutation classes.
pub fn count_traces_bfs(graph: &CommutationGraph, n: usize) -> Result<u64, PcError> {
    let k = graph.len() as u64;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(k).filter(|&t| t <= MAX_ENUMERATED_WORDS));
    let Some(total) = total else {
        return Err(PcError::EnumerationTooLarge { vertices: graph.len(), length: n });
    };
    if k == 0 {
        return Ok(if n == 0 { 1 } else { 0 });
    }
    let decode = |mut code: u64| -> Vec<u8> {
        let mut w = vec![0u8; n];
        for slot in w.iter_mut().rev() {
            *slot = (code % k) as u8;
            code /= k;
        }
        w
    };
    let encode = |w: &[u8]| -> u64 { w.iter().fold(0u64, |acc, &l| acc * k + l as u64) };

    let mut visited = vec![false; total as usize];
    let mut classes = 0;
    let mut stack = Vec::new();
    for start in 0..total {
        if visited[start as usize] {
            continue;
        }
        classes += 1;
        visited[start as usize] = true;
        stack.push(start);
        while let Some(code) = stack.pop() {
            let w = decode(code);
            for i in 0..n.saturating_sub(1) {
                if graph.commute(w[i], w[i + 1]) {
                    let mut next = w.clone();
                    next.swap(i, i + 1);
                    let c = encode(&next);
                    if !visited[c as usize] {
                        visited[c as usize] = true;
                        stack.push(c);
                    }
                }
            }
        }
    }
    Ok(classes)
}
