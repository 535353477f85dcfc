use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Symbol, SymbolicError};

/// Iteration cap for the power method.
pub const POWER_ITERATION_CAP: usize = 100_000;

/// An `N × N` 0/1 matrix with no zero row and no zero column, `N ≥ 2`.
///
/// All symbol arguments are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl TryFrom<Vec<Vec<i64>>> for TransitionMatrix {
    type Error = SymbolicError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        validate_matrix(&rows)
    }
}

impl From<TransitionMatrix> for Vec<Vec<i64>> {
    fn from(m: TransitionMatrix) -> Self {
        m.rows()
    }
}

/// Validate row-major integer entries into a [`TransitionMatrix`].
pub fn validate_matrix<R: AsRef<[i64]>>(rows: &[R]) -> Result<TransitionMatrix, SymbolicError> {
    let n = rows.len();
    if n < 2 {
        return Err(SymbolicError::TooSmall(n));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != n {
            return Err(SymbolicError::NotSquare {
                row: i + 1,
                len: row.len(),
                expected: n,
            });
        }
        for (j, &v) in row.iter().enumerate() {
            match v {
                0 => entries.push(false),
                1 => entries.push(true),
                _ => {
                    return Err(SymbolicError::NotBinary {
                        row: i + 1,
                        col: j + 1,
                        value: v,
                    })
                }
            }
        }
    }
    let m = TransitionMatrix { n, entries };
    for i in 1..=n {
        if m.row_sum(i) == 0 {
            return Err(SymbolicError::ZeroRow(i));
        }
    }
    for j in 1..=n {
        if (1..=n).all(|i| !m.allows(i, j)) {
            return Err(SymbolicError::ZeroColumn(j));
        }
    }
    Ok(m)
}

impl TransitionMatrix {
    /// The full matrix on `n` symbols (every transition allowed).
    pub fn full(n: usize) -> Result<Self, SymbolicError> {
        validate_matrix(&vec![vec![1i64; n]; n])
    }

    pub fn n_symbols(&self) -> usize {
        self.n
    }

    /// `a_ij == 1`.
    pub fn allows(&self, i: Symbol, j: Symbol) -> bool {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<(), SymbolicError> {
        if (1..=self.n).contains(&s) {
            Ok(())
        } else {
            Err(SymbolicError::SymbolOutOfRange {
                symbol: s,
                n: self.n,
            })
        }
    }

    /// Allowed successors of `i`, ascending.
    pub fn successors(&self, i: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        (1..=self.n).filter(move |&j| self.allows(i, j))
    }

    pub fn row_sum(&self, i: Symbol) -> usize {
        self.successors(i).count()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.allows(i, j) as i64).collect())
            .collect()
    }

    /// Row sums of `A^k`, i.e. `A^k · 1`, as exact integers.
    pub fn power_row_sums(&self, k: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::one(); self.n];
        for _ in 0..k {
            v = (1..=self.n)
                .map(|i| {
                    self.successors(i)
                        .fold(BigUint::zero(), |acc, j| acc + &v[j - 1])
                })
                .collect();
        }
        v
    }

    /// Number of admissible words of the given length: the sum of the
    /// entries of `A^{length-1}` (and `N` for length 1). Zero for length 0.
    pub fn count_words(&self, length: usize) -> BigUint {
        if length == 0 {
            return BigUint::zero();
        }
        self.power_row_sums(length - 1).into_iter().sum()
    }

    /// Perron root `ρ(A)` by power iteration.
    ///
    /// The iteration runs on `A + I` started from the all-ones vector.
    /// `ρ(A + I) = ρ(A) + 1` for nonnegative `A`, and the shift removes the
    /// peripheral eigenvalues `ρ·ω` (`|ω| = 1`, `ω ≠ 1`) that make the plain
    /// iteration oscillate on periodic matrices. Each estimate is
    /// `‖(A + I)x‖₁ / ‖x‖₁`; iteration stops when successive estimates
    /// differ by less than `tol`. Defective (reducible, Jordan-block)
    /// matrices converge only algebraically and may hit the cap.
    pub fn spectral_radius(&self, tol: f64) -> Result<f64, SymbolicError> {
        let n = self.n;
        let mut x = vec![1.0 / n as f64; n];
        let mut prev = f64::NAN;
        for _ in 0..POWER_ITERATION_CAP {
            let y: Vec<f64> = (1..=n)
                .map(|i| x[i - 1] + self.successors(i).map(|j| x[j - 1]).sum::<f64>())
                .collect();
            let norm: f64 = y.iter().sum();
            let est = norm / x.iter().sum::<f64>();
            x = y.into_iter().map(|v| v / norm).collect();
            if (est - prev).abs() < tol {
                return Ok(est - 1.0);
            }
            prev = est;
        }
        Err(SymbolicError::NonConvergence(POWER_ITERATION_CAP))
    }

    /// Topological entropy `log ρ(A)` of the subshift.
    pub fn entropy(&self, tol: f64) -> Result<f64, SymbolicError> {
        Ok(self.spectral_radius(tol)?.ln())
    }

    /// Every symbol reaches every symbol (itself included) by a path of
    /// positive length, i.e. some power `A^k`, `k ≤ N`, has `a^{(k)}_{ij} > 0`.
    pub fn is_irreducible(&self) -> bool {
        (1..=self.n).all(|i| {
            let reach = self.reachable_from(i);
            reach.iter().all(|&r| r)
        })
    }

    /// Symbols reachable from `i` by paths of length ≥ 1 (index `j - 1`).
    pub fn reachable_from(&self, i: Symbol) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack: Vec<Symbol> = self.successors(i).collect();
        while let Some(j) = stack.pop() {
            if !seen[j - 1] {
                seen[j - 1] = true;
                stack.extend(self.successors(j).filter(|&k| !seen[k - 1]));
            }
        }
        seen
    }

    /// Some row has at least two allowed successors.
    pub fn row_sum_at_least_two(&self) -> bool {
        (1..=self.n).any(|i| self.row_sum(i) >= 2)
    }

    /// `(1/n) · log count_words(n)`, exact up to the final `f64` logarithm.
    pub fn word_entropy(&self, length: usize) -> f64 {
        big_ln(&self.count_words(length)) / length as f64
    }
}

/// Natural log of a big integer without overflowing `f64`.
pub fn big_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Result<TransitionMatrix, SymbolicError> {
        validate_matrix(rows)
    }

    #[test]
    fn validation_examples() {
        assert_eq!(m(&[&[1, 1], &[1, 1]]).unwrap().n_symbols(), 2);
        assert!(m(&[&[1, 0], &[0, 1]]).is_ok());
        assert_eq!(m(&[&[1, 1], &[0, 0]]), Err(SymbolicError::ZeroRow(2)));
        assert_eq!(m(&[&[1, 0], &[1, 0]]), Err(SymbolicError::ZeroColumn(2)));
        assert_eq!(m(&[&[1]]), Err(SymbolicError::TooSmall(1)));
        assert!(matches!(
            m(&[&[1, 2], &[1, 1]]),
            Err(SymbolicError::NotBinary { row: 1, col: 2, value: 2 })
        ));
        assert!(matches!(m(&[&[1, 1], &[1]]), Err(SymbolicError::NotSquare { .. })));
    }

    /// Brute-force enumeration of all `N^len` words.
    fn brute_count(a: &TransitionMatrix, len: usize) -> u64 {
        let n = a.n_symbols();
        let total = (n as u64).pow(len as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut word = Vec::with_capacity(len);
                for _ in 0..len {
                    word.push((c % n as u64) as usize + 1);
                    c /= n as u64;
                }
                word.windows(2).all(|w| a.allows(w[0], w[1]))
            })
            .count() as u64
    }

    #[test]
    fn word_counts_match_enumeration() {
        let full = TransitionMatrix::full(2).unwrap();
        let ident = m(&[&[1, 0], &[0, 1]]).unwrap();
        let golden = m(&[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(brute_count(&full, 5), 32);
        assert_eq!(brute_count(&golden, 5), 13);
        assert_eq!(full.count_words(5), BigUint::from(32u32));
        assert_eq!(golden.count_words(5), BigUint::from(13u32));
        for k in 1..12 {
            assert_eq!(ident.count_words(k), BigUint::from(2u32));
            assert_eq!(golden.count_words(k), BigUint::from(brute_count(&golden, k)));
        }
    }

    #[test]
    fn spectral_radius_examples() {
        let tol = 1e-12;
        let full = TransitionMatrix::full(2).unwrap();
        assert!((full.spectral_radius(tol).unwrap() - 2.0).abs() < 1e-9);
        let ident = m(&[&[1, 0], &[0, 1]]).unwrap();
        assert!((ident.spectral_radius(tol).unwrap() - 1.0).abs() < 1e-9);
        let golden = m(&[&[1, 1], &[1, 0]]).unwrap();
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        assert!((golden.spectral_radius(tol).unwrap() - phi).abs() < 1e-9);
    }

    #[test]
    fn periodic_matrix_does_not_oscillate() {
        // 1 -> {2, 3}, 2 -> 1, 3 -> 1 has period 2 and ρ = √2.
        let a = m(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]]).unwrap();
        let rho = a.spectral_radius(1e-13).unwrap();
        assert!((rho - 2f64.sqrt()).abs() < 1e-9, "{rho}");
    }

    #[test]
    fn irreducibility_examples() {
        let full = TransitionMatrix::full(2).unwrap();
        assert!(full.is_irreducible() && full.row_sum_at_least_two());
        let ident = m(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(!ident.is_irreducible() && !ident.row_sum_at_least_two());
        let swap = m(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(swap.is_irreducible() && !swap.row_sum_at_least_two());
    }

    #[test]
    fn big_ln_handles_huge_values() {
        let v = BigUint::one() << 5000usize;
        assert!((big_ln(&v) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
