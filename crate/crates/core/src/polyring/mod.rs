//! Homogeneous polynomials over exact rationals.
//!
//! A [`HomPoly`] lives in the space of degree-`d` forms in `n + 1` variables
//! `x0..xn`. Coefficients are arbitrary-precision rationals, stored sparsely
//! and keyed by multi-index; zero coefficients are never stored. The zero
//! polynomial is representable (empty coefficient map) and carries a nominal
//! degree so that ambient-space bookkeeping stays explicit.
//!
//! Everything here is exact: there is no floating point anywhere in this
//! crate.

mod parser;

pub use parser::parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multiindex::{dim_space, enumerate, MultiIndex};

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator (the underlying type normalizes on construction).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational `num/den`; `den` must be nonzero.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::SyntaxError {
        pos: 0,
        message: format!("{msg}: {s:?}"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s.trim(), None),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad("invalid numerator"))?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad("invalid denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text for a rational: `"p"` when the denominator is 1, else
/// `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// A homogeneous polynomial of degree `d` in variables `x0..xn`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    n: usize,
    d: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl HomPoly {
    /// The zero polynomial with nominal degree `d`.
    pub fn zero(n: usize, d: usize) -> Self {
        HomPoly {
            n,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(index, coefficient)` terms, summing
    /// duplicates and dropping zeros. Every index must have length `n + 1`
    /// and order `d`.
    pub fn from_terms<T>(n: usize, d: usize, terms: T) -> Result<Self>
    where
        T: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut coeffs: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (i, c) in terms {
            if i.len() != n + 1 {
                return Err(Error::LengthMismatch {
                    expected: n + 1,
                    got: i.len(),
                });
            }
            if i.order() != d {
                return Err(Error::DegreeMismatch {
                    left: d,
                    right: i.order(),
                });
            }
            let entry = coeffs.entry(i).or_insert_with(Rational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(HomPoly { n, d, coeffs })
    }

    /// Single-term polynomial `c * x^i`.
    pub fn monomial(n: usize, i: MultiIndex, c: Rational) -> Result<Self> {
        let d = i.order();
        Self::from_terms(n, d, [(i, c)])
    }

    /// Number of variables minus one.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of variables `n + 1`.
    pub fn vars(&self) -> usize {
        self.n + 1
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^i` (zero when absent).
    pub fn coeff(&self, i: &MultiIndex) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    /// Leading term (first in canonical order), if any.
    pub fn leading(&self) -> Option<(&MultiIndex, &Rational)> {
        self.coeffs.iter().next()
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.n, self.d);
        }
        HomPoly {
            n: self.n,
            d: self.d,
            coeffs: self.coeffs.iter().map(|(i, v)| (i.clone(), v * c)).collect(),
        }
    }

    /// `self + c * g`. The two polynomials must share `n` and `d`, except
    /// that the zero polynomial is compatible with any degree.
    pub fn add_scaled(&self, c: &Rational, g: &HomPoly) -> Result<HomPoly> {
        if self.n != g.n {
            return Err(Error::VariableMismatch {
                left: self.n + 1,
                right: g.n + 1,
            });
        }
        if self.d != g.d && !self.is_zero() && !g.is_zero() {
            return Err(Error::DegreeMismatch {
                left: self.d,
                right: g.d,
            });
        }
        let d = if self.is_zero() && !g.is_zero() {
            g.d
        } else {
            self.d
        };
        let mut coeffs = self.coeffs.clone();
        for (i, v) in &g.coeffs {
            let entry = coeffs.entry(i.clone()).or_insert_with(Rational::zero);
            *entry += v * c;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(HomPoly {
            n: self.n,
            d,
            coeffs,
        })
    }

    /// First-order partial derivative with respect to `x_p`.
    pub fn single_derivative(&self, p: usize) -> HomPoly {
        assert!(p <= self.n, "variable out of range");
        let mut coeffs = BTreeMap::new();
        for (i, c) in &self.coeffs {
            let e = i.get(p);
            if e == 0 {
                continue;
            }
            let mut exps = i.exponents().to_vec();
            exps[p] -= 1;
            coeffs.insert(MultiIndex::new(exps), c * rat_int(e as i64));
        }
        HomPoly {
            n: self.n,
            d: self.d.saturating_sub(1),
            coeffs,
        }
    }

    fn mul_var(&self, p: usize) -> HomPoly {
        let mut coeffs = BTreeMap::new();
        for (i, c) in &self.coeffs {
            let mut exps = i.exponents().to_vec();
            exps[p] += 1;
            coeffs.insert(MultiIndex::new(exps), c.clone());
        }
        HomPoly {
            n: self.n,
            d: self.d + 1,
            coeffs,
        }
    }

    /// Left-hand side of the Euler identity: `sum_p x_p * d(self)/d(x_p)`.
    /// For a homogeneous polynomial of degree `e` this equals `e * self`;
    /// the sum is computed literally so the identity stays a real check.
    pub fn euler_lhs(&self) -> HomPoly {
        let mut acc = HomPoly::zero(self.n, self.d);
        for p in 0..=self.n {
            let term = self.single_derivative(p).mul_var(p);
            acc = acc
                .add_scaled(&Rational::one(), &term)
                .expect("euler terms share the ambient space");
        }
        acc
    }

    /// Coefficients read off in canonical monomial order; length
    /// `binomial(n + d, d)`.
    pub fn coeff_vector(&self) -> Vec<Rational> {
        enumerate(self.n, self.d)
            .iter()
            .map(|i| self.coeff(i))
            .collect()
    }

    /// Inverse of [`HomPoly::coeff_vector`].
    pub fn from_coeff_vector(n: usize, d: usize, v: &[Rational]) -> Result<Self> {
        let dim = dim_space(n, d);
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        let coeffs = enumerate(n, d)
            .into_iter()
            .zip(v.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Ok(HomPoly { n, d, coeffs })
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n + 1 {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (i, c) in &self.coeffs {
            let mut term = c.clone();
            for (p, &e) in i.exponents().iter().enumerate() {
                for _ in 0..e {
                    term *= &point[p];
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Applies a permutation of the variables: variable `p` of the result is
    /// variable `perm[p]` of `self`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<HomPoly> {
        if perm.len() != self.n + 1 {
            return Err(Error::LengthMismatch {
                expected: self.n + 1,
                got: perm.len(),
            });
        }
        let mut coeffs = BTreeMap::new();
        for (i, c) in &self.coeffs {
            let exps: Vec<usize> = perm.iter().map(|&p| i.get(p)).collect();
            coeffs.insert(MultiIndex::new(exps), c.clone());
        }
        Ok(HomPoly {
            n: self.n,
            d: self.d,
            coeffs,
        })
    }
}

fn write_magnitude(f: &mut fmt::Formatter<'_>, c: &Rational, i: &MultiIndex) -> fmt::Result {
    let one = c.abs().is_one();
    let constant = i.order() == 0;
    if !one || constant {
        write!(f, "{}", c.abs())?;
        if !constant {
            write!(f, "*")?;
        }
    }
    let mut first = true;
    for (p, &e) in i.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{p}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for HomPoly {
    /// Canonical text form: terms in canonical monomial order, `p/q`
    /// coefficients, explicit `*` between factors. `parse` inverts this.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (i, c)) in self.coeffs.iter().enumerate() {
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_magnitude(f, c, i)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn p(text: &str, n: usize) -> HomPoly {
        parse(text, n).unwrap()
    }

    #[test]
    fn print_examples() {
        assert_eq!(p("x0^2*x1", 1).to_string(), "x0^2*x1");
        assert_eq!(HomPoly::zero(1, 3).to_string(), "0");
        let f = HomPoly::from_terms(
            1,
            4,
            [(mi(&[4, 0]), rat_int(1)), (mi(&[1, 3]), rat(-1, 2))],
        )
        .unwrap();
        assert_eq!(f.to_string(), "x0^4 - 1/2*x0*x1^3");
    }

    #[test]
    fn print_leading_negative_and_constant() {
        let f = HomPoly::from_terms(1, 2, [(mi(&[2, 0]), rat_int(-1))]).unwrap();
        assert_eq!(f.to_string(), "-x0^2");
        let c = HomPoly::from_terms(1, 0, [(mi(&[0, 0]), rat_int(5))]).unwrap();
        assert_eq!(c.to_string(), "5");
        assert_eq!(parse(&f.to_string(), 1).unwrap(), f);
        assert_eq!(parse(&c.to_string(), 1).unwrap(), c);
    }

    #[test]
    fn add_scaled_examples() {
        let f = p("x0^2", 1);
        let g = p("x1^2", 1);
        assert_eq!(f.add_scaled(&Rational::zero(), &g).unwrap(), f);
        assert!(f.add_scaled(&rat_int(-1), &f).unwrap().is_zero());
        assert_eq!(
            f.add_scaled(&Rational::one(), &g).unwrap().to_string(),
            "x0^2 + x1^2"
        );
    }

    #[test]
    fn add_scaled_mismatches() {
        let f = p("x0^2", 1);
        let g = p("x0^3", 1);
        assert!(matches!(
            f.add_scaled(&Rational::one(), &g),
            Err(Error::DegreeMismatch { .. })
        ));
        let h = p("x0^2", 2);
        assert!(matches!(
            f.add_scaled(&Rational::one(), &h),
            Err(Error::VariableMismatch { .. })
        ));
        // zero polynomial is compatible with any degree
        let z = HomPoly::zero(1, 7);
        assert_eq!(z.add_scaled(&Rational::one(), &f).unwrap(), f);
    }

    #[test]
    fn euler_identity_examples() {
        let f = p("x0^2*x1", 1);
        assert_eq!(f.euler_lhs(), f.scale(&rat_int(3)));
        let g = p("x0^4 + x1^4", 1);
        assert_eq!(g.euler_lhs(), g.scale(&rat_int(4)));
        let c = HomPoly::from_terms(1, 0, [(mi(&[0, 0]), rat_int(5))]).unwrap();
        assert!(c.euler_lhs().is_zero());
    }

    #[test]
    fn coeff_vector_examples() {
        assert_eq!(
            p("x0^2", 1).coeff_vector(),
            vec![rat_int(1), rat_int(0), rat_int(0)]
        );
        assert_eq!(
            HomPoly::zero(1, 2).coeff_vector(),
            vec![rat_int(0), rat_int(0), rat_int(0)]
        );
        assert_eq!(
            p("x0*x1", 1).coeff_vector(),
            vec![rat_int(0), rat_int(1), rat_int(0)]
        );
    }

    #[test]
    fn coeff_vector_roundtrip() {
        let f = p("x0^4 - 1/2*x0*x1^3 + 3*x1^4", 1);
        let v = f.coeff_vector();
        assert_eq!(HomPoly::from_coeff_vector(1, 4, &v).unwrap(), f);
    }

    #[test]
    fn eval_simple() {
        let f = p("x0^2*x1", 1);
        let v = f.eval(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(v, rat_int(12));
    }

    #[test]
    fn permute_swaps_variables() {
        let f = p("x0^2*x1", 1);
        let g = f.permute_vars(&[1, 0]).unwrap();
        assert_eq!(g, p("x0*x1^2", 1));
    }

    #[test]
    fn rational_parse_format() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat_int(7)), "7");
    }
}
