//! Multi-indices over a fixed set of variables `x0..xn`.
//!
//! A multi-index is a tuple of `n + 1` nonnegative exponents. Everything in
//! this crate that is keyed by monomials uses the single canonical order
//! defined here: graded, then lexicographically descending on the exponent
//! tuple, so that within degree `e` the pure power of `x0` comes first and
//! the pure power of `xn` last. `Ord` on [`MultiIndex`] implements exactly
//! that order; the componentwise domination order is a separate operation
//! ([`MultiIndex::dominates`]) because it is only partial.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Name of the canonical monomial order, embedded in every serialized matrix
/// and subspace so files are self-describing.
pub const MONOMIAL_ORDER: &str = "grlex_desc";

/// Exponent tuple `(i_0, ..., i_n)` of a monomial `x0^{i_0} * ... * xn^{i_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Self {
        MultiIndex(exponents)
    }

    /// The zero index of the given length (the constant monomial).
    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    /// The basis index `e_j`: a single 1 in slot `j`.
    pub fn unit(len: usize, j: usize) -> Self {
        assert!(j < len, "unit slot out of range");
        let mut v = vec![0; len];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, j: usize) -> usize {
        self.0[j]
    }

    /// The order `|I|`: the sum of all exponents.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    fn check_len(&self, other: &MultiIndex) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise domination `I >= J`, the partial order on exponent
    /// tuples. Not related to `Ord`, which is the canonical monomial order.
    pub fn dominates(&self, other: &MultiIndex) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_len(other)?;
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Componentwise difference; defined only when `self` dominates `other`.
    pub fn sub(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if !self.dominates(other)? {
            return Err(Error::NotDominated {
                minuend: self.to_string(),
                subtrahend: other.to_string(),
            });
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

impl Ord for MultiIndex {
    /// Canonical monomial order: grade first, then lexicographically
    /// descending, so `(2,0) < (1,1) < (0,2)` and iteration over a
    /// `BTreeMap<MultiIndex, _>` visits monomials in canonical order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, e) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Accepts both the display form `(2,1)` and the bare CLI form `2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed);
        let mut exps = Vec::new();
        for part in inner.split(',') {
            let e = part.trim().parse::<usize>().map_err(|_| Error::SyntaxError {
                pos: 0,
                message: format!("invalid multi-index entry {part:?}"),
            })?;
            exps.push(e);
        }
        Ok(MultiIndex(exps))
    }
}

/// `binomial(a, b)` with the usual convention `0` for `b > a`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

/// Dimension of the space of degree-`e` homogeneous polynomials in `n + 1`
/// variables: `binomial(n + e, e)`.
pub fn dim_space(n: usize, e: usize) -> usize {
    binomial(n + e, e)
}

/// All multi-indices of length `n + 1` and order `e`, in canonical order.
pub fn enumerate(n: usize, e: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(dim_space(n, e));
    let mut current = vec![0; n + 1];
    fill(&mut out, &mut current, 0, e);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<usize>, slot: usize, remaining: usize) {
    if slot == current.len() - 1 {
        current[slot] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[slot] = v;
        fill(out, current, slot + 1, remaining - v);
    }
}

/// Position of `i` within `enumerate(n, e)` where `n + 1 = i.len()`, or
/// `None` if `|i| != e`. Computed combinatorially, without materializing the
/// enumeration.
pub fn position(i: &MultiIndex, e: usize) -> Option<usize> {
    if i.order() != e {
        return None;
    }
    let len = i.len();
    let mut pos = 0;
    let mut rem = e;
    for m in 0..len.saturating_sub(1) {
        let suffix_vars = len - m - 1;
        // indices with a larger entry in slot m come earlier
        for v in i.get(m) + 1..=rem {
            pos += binomial(suffix_vars - 1 + (rem - v), rem - v);
        }
        rem -= i.get(m);
    }
    Some(pos)
}
