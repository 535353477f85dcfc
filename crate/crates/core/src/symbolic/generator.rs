use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::scrambled::Interleave;
use super::{Symbol, SymbolicError, TransitionMatrix};

/// A finite admissible word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymbolWord(Vec<Symbol>);

impl SymbolWord {
    pub fn new(symbols: Vec<Symbol>, matrix: &TransitionMatrix) -> Result<Self, SymbolicError> {
        check_admissible(&symbols, matrix)?;
        Ok(SymbolWord(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    /// Drop the first symbol.
    pub fn shift(&self) -> Result<SymbolWord, SymbolicError> {
        if self.0.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        Ok(SymbolWord(self.0[1..].to_vec()))
    }

    /// Append a symbol, checking the new transition.
    pub fn extended(&self, s: Symbol, matrix: &TransitionMatrix) -> Result<Self, SymbolicError> {
        let mut v = self.0.clone();
        v.push(s);
        SymbolWord::new(v, matrix)
    }
}

impl std::fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_admissible(symbols: &[Symbol], matrix: &TransitionMatrix) -> Result<(), SymbolicError> {
    for &s in symbols {
        matrix.check_symbol(s)?;
    }
    for (k, w) in symbols.windows(2).enumerate() {
        if !matrix.allows(w[0], w[1]) {
            return Err(SymbolicError::NotAdmissible {
                index: k,
                from: w[0],
                to: w[1],
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
enum Rule {
    /// `word` repeated forever.
    Periodic(Arc<[Symbol]>),
    /// `prefix` followed by `tail` repeated forever.
    Explicit {
        prefix: Arc<[Symbol]>,
        tail: Arc<[Symbol]>,
    },
    Interleaved(Arc<Interleave>),
    Prepended {
        head: Symbol,
        rest: Arc<SymbolGenerator>,
    },
}

/// A deterministic rule producing the symbol at any index of an infinite
/// admissible sequence `α = (a_0, a_1, …)`.
#[derive(Debug, Clone)]
pub struct SymbolGenerator {
    rule: Rule,
    offset: usize,
}

impl SymbolGenerator {
    /// `word` repeated forever; the wrap-around transition must be allowed too.
    pub fn periodic(word: &[Symbol], matrix: &TransitionMatrix) -> Result<Self, SymbolicError> {
        if word.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        let mut closed = word.to_vec();
        closed.push(word[0]);
        check_admissible(&closed, matrix)?;
        Ok(SymbolGenerator {
            rule: Rule::Periodic(word.into()),
            offset: 0,
        })
    }

    /// A finite `prefix` continued by the periodic `tail`.
    pub fn explicit(
        prefix: &[Symbol],
        tail: &[Symbol],
        matrix: &TransitionMatrix,
    ) -> Result<Self, SymbolicError> {
        if tail.is_empty() {
            return Err(SymbolicError::EmptyWord);
        }
        let mut all = prefix.to_vec();
        all.extend_from_slice(tail);
        all.push(tail[0]);
        check_admissible(&all, matrix)?;
        Ok(SymbolGenerator {
            rule: Rule::Explicit {
                prefix: prefix.into(),
                tail: tail.into(),
            },
            offset: 0,
        })
    }

    pub(crate) fn interleaved(data: Arc<Interleave>) -> Self {
        SymbolGenerator {
            rule: Rule::Interleaved(data),
            offset: 0,
        }
    }

    /// A uniformly random admissible walk of `prefix_len` symbols, closed
    /// off by following smallest successors until a symbol repeats; the
    /// repeating stretch becomes the periodic tail.
    pub fn random<R: Rng + ?Sized>(
        matrix: &TransitionMatrix,
        prefix_len: usize,
        rng: &mut R,
    ) -> SymbolGenerator {
        SymbolGenerator::random_extension(&[], prefix_len.max(1), matrix, rng)
            .expect("empty head is admissible")
    }

    /// `head` followed by a uniformly random admissible walk that brings
    /// the prefix to `len` symbols, closed off as in [`random`](Self::random).
    pub fn random_extension<R: Rng + ?Sized>(
        head: &[Symbol],
        len: usize,
        matrix: &TransitionMatrix,
        rng: &mut R,
    ) -> Result<SymbolGenerator, SymbolicError> {
        check_admissible(head, matrix)?;
        let n = matrix.n_symbols();
        let mut walk = head.to_vec();
        if walk.is_empty() {
            walk.push(rng.gen_range(1..=n));
        }
        while walk.len() < len {
            let last = *walk.last().unwrap();
            let succ: Vec<Symbol> = matrix.successors(last).collect();
            walk.push(succ[rng.gen_range(0..succ.len())]);
        }
        let mut seen = vec![None; n];
        let mut tail_walk = Vec::new();
        let mut cur = *walk.last().unwrap();
        loop {
            cur = matrix.successors(cur).next().expect("rows are nonzero");
            if let Some(at) = seen[cur - 1] {
                let tail: Vec<Symbol> = tail_walk[at..].to_vec();
                walk.extend_from_slice(&tail_walk[..at]);
                return SymbolGenerator::explicit(&walk, &tail, matrix);
            }
            seen[cur - 1] = Some(tail_walk.len());
            tail_walk.push(cur);
        }
    }

    /// Symbol `a_i`.
    pub fn at(&self, i: usize) -> Symbol {
        let i = i + self.offset;
        match &self.rule {
            Rule::Periodic(w) => w[i % w.len()],
            Rule::Explicit { prefix, tail } => {
                if i < prefix.len() {
                    prefix[i]
                } else {
                    tail[(i - prefix.len()) % tail.len()]
                }
            }
            Rule::Interleaved(data) => data.at(i),
            Rule::Prepended { head, rest } => {
                if i == 0 {
                    *head
                } else {
                    rest.at(i - 1)
                }
            }
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<Symbol> {
        (0..len).map(|i| self.at(i)).collect()
    }

    pub fn word(&self, len: usize) -> SymbolWord {
        SymbolWord(self.prefix(len))
    }

    /// `σ^k α`.
    pub fn shifted(&self, k: usize) -> SymbolGenerator {
        match &self.rule {
            Rule::Periodic(w) => {
                let r = (self.offset + k) % w.len();
                let rotated: Vec<Symbol> = w[r..].iter().chain(w[..r].iter()).copied().collect();
                SymbolGenerator {
                    rule: Rule::Periodic(rotated.into()),
                    offset: 0,
                }
            }
            _ => SymbolGenerator {
                rule: self.rule.clone(),
                offset: self.offset + k,
            },
        }
    }

    /// `σ_A α`.
    pub fn shift(&self) -> SymbolGenerator {
        self.shifted(1)
    }

    /// Prepend a symbol: the preimage of `self` under `σ_A` inside the
    /// cylinder of `s`. Fails if `a_{s, a_0} = 0`.
    pub fn prepended(&self, s: Symbol, matrix: &TransitionMatrix) -> Result<Self, SymbolicError> {
        matrix.check_symbol(s)?;
        let first = self.at(0);
        if !matrix.allows(s, first) {
            return Err(SymbolicError::NotAdmissible {
                index: 0,
                from: s,
                to: first,
            });
        }
        Ok(SymbolGenerator {
            rule: Rule::Prepended {
                head: s,
                rest: Arc::new(self.clone()),
            },
            offset: 0,
        })
    }

    /// Check the first `len` transitions against `matrix`.
    pub fn is_admissible_prefix(&self, matrix: &TransitionMatrix, len: usize) -> bool {
        check_admissible(&self.prefix(len), matrix).is_ok()
    }
}

/// `ρ̂(α, β) = Σ_{i < depth} d̂(a_i, b_i) / 2^i` with `d̂` the discrete metric.
///
/// Truncation error is at most `2^{1 - depth}`; it is not added.
pub fn sequence_metric(alpha: &SymbolGenerator, beta: &SymbolGenerator, depth: usize) -> f64 {
    let mut sum = 0.0;
    let mut w = 1.0;
    for i in 0..depth {
        if alpha.at(i) != beta.at(i) {
            sum += w;
        }
        w *= 0.5;
    }
    sum
}

/// The cylinder `U_i = {α : a_0 = i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cylinder {
    symbol: Symbol,
}

impl Cylinder {
    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn contains(&self, alpha: &SymbolGenerator) -> bool {
        alpha.at(0) == self.symbol
    }
}

pub fn cylinder(matrix: &TransitionMatrix, i: Symbol) -> Result<Cylinder, SymbolicError> {
    matrix.check_symbol(i)?;
    Ok(Cylinder { symbol: i })
}
