//! Higher-order partial derivatives, the apolar pairing, catalecticant
//! matrices, and the derivative spaces `E_k(f)`.
//!
//! `D_I f` is the iterated partial derivative of `f` by the multi-index
//! `I`. Its coefficients carry the full falling-factorial factors (no
//! normalization by `I!`), so the apolar pairing below is literally
//! "substitute partial-derivative operators for the dual variables". The
//! degree-`(d-k)` span of all order-`k` derivatives of `f` is `E_k(f)`,
//! realized concretely as the row space of the order-`k` catalecticant
//! matrix.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{row_space, ExactMatrix, Subspace};
use crate::multiindex::{dim_space, enumerate, MultiIndex, MONOMIAL_ORDER};
use crate::polyring::{HomPoly, Rational};

/// Falling factorial `j * (j-1) * ... * (j-i+1)`, the coefficient picked up
/// when `x^j` is differentiated `i` times.
fn falling(j: usize, i: usize) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..i {
        acc *= BigInt::from(j - t);
    }
    acc
}

/// Coefficient of `D_I(x^J)` relative to `x^{J-I}`; caller guarantees that
/// `J` dominates `I`.
pub(crate) fn deriv_coeff(j: &MultiIndex, i: &MultiIndex) -> BigInt {
    let mut acc = BigInt::one();
    for (jm, im) in j.exponents().iter().zip(i.exponents()) {
        acc *= falling(*jm, *im);
    }
    acc
}

/// The iterated partial derivative `D_I f`; zero (of nominal degree 0) when
/// `|I|` exceeds the degree of `f`.
pub fn derivative(f: &HomPoly, i: &MultiIndex) -> Result<HomPoly> {
    if i.len() != f.vars() {
        return Err(Error::LengthMismatch {
            expected: f.vars(),
            got: i.len(),
        });
    }
    let order = i.order();
    if order > f.degree() {
        return Ok(HomPoly::zero(f.n(), 0));
    }
    let mut terms = Vec::new();
    for (j, c) in f.terms() {
        if !j.dominates(i)? {
            continue;
        }
        let coeff = c * Rational::from_integer(deriv_coeff(j, i));
        terms.push((j.sub(i)?, coeff));
    }
    HomPoly::from_terms(f.n(), f.degree() - order, terms)
}

/// The apolar pairing `<P, f> = P(d/dx0, ..., d/dxn) f`, with `P` read in
/// the dual variables. Linear in both arguments; `<y^I, f> = D_I f`.
pub fn apolar_pair(p: &HomPoly, f: &HomPoly) -> Result<HomPoly> {
    if p.vars() != f.vars() {
        return Err(Error::LengthMismatch {
            expected: f.vars(),
            got: p.vars(),
        });
    }
    if p.degree() > f.degree() || p.is_zero() {
        return Ok(HomPoly::zero(f.n(), 0));
    }
    let mut acc = HomPoly::zero(f.n(), f.degree() - p.degree());
    for (i, c) in p.terms() {
        let d = derivative(f, i)?;
        acc = acc.add_scaled(c, &d)?;
    }
    Ok(acc)
}

/// Matrix of the order-`k` derivatives of a fixed polynomial: row `I` (in
/// canonical order over `|I| = k`) holds the coefficient vector of `D_I f`
/// in the degree-`(d-k)` monomial basis. Its row space is `E_k(f)` and its
/// rank is `dim E_k(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalecticant {
    n: usize,
    d: usize,
    k: usize,
    matrix: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct CatalecticantJson {
    n: usize,
    d: usize,
    k: usize,
    order: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Catalecticant {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CatalecticantJson {
            n: self.n,
            d: self.d,
            k: self.k,
            order: MONOMIAL_ORDER.to_string(),
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            entries: self.matrix.to_string_rows(),
        })
        .expect("catalecticant serializes")
    }
}

/// Builds the order-`k` catalecticant of `f`.
pub fn catalecticant(f: &HomPoly, k: usize) -> Result<Catalecticant> {
    let (n, d) = (f.n(), f.degree());
    if k > d {
        return Err(Error::OrderOutOfRange { k, max: d });
    }
    let rows: Vec<Vec<Rational>> = enumerate(n, k)
        .iter()
        .map(|i| derivative(f, i).map(|df| df.coeff_vector()))
        .collect::<Result<_>>()?;
    let matrix = ExactMatrix::from_rows(rows, dim_space(n, d - k))?;
    Ok(Catalecticant { n, d, k, matrix })
}

/// The derivative space `E_k(f)`: canonical subspace of the degree-`(d-k)`
/// piece spanned by all order-`k` partials of `f`. Orders beyond the degree
/// give the zero space so iteration over `k` never needs a guard.
pub fn e_space(f: &HomPoly, k: usize) -> Subspace {
    let (n, d) = (f.n(), f.degree());
    if k > d {
        return Subspace::zero(n, 0);
    }
    let cat = catalecticant(f, k).expect("k <= d");
    let space = row_space(cat.matrix(), n, d - k).expect("catalecticant has ambient width");
    // dimension can never exceed either side of the pairing
    assert!(space.dim() <= dim_space(n, k).min(dim_space(n, d - k)));
    space
}

/// `dim E_k(f)`.
pub fn e_dim(f: &HomPoly, k: usize) -> usize {
    e_space(f, k).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, rat_int};

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn p(text: &str, n: usize) -> HomPoly {
        parse(text, n).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let f = p("x0^2*x1", 1);
        assert_eq!(derivative(&f, &mi(&[1, 0])).unwrap(), p("2*x0*x1", 1));
        assert_eq!(derivative(&f, &mi(&[2, 1])).unwrap(), p("2", 1));

        let g = p("x0^4 + x0*x1^3", 1);
        assert_eq!(derivative(&g, &mi(&[1, 1])).unwrap(), p("3*x1^2", 1));
    }

    #[test]
    fn derivative_beyond_degree_is_zero() {
        let f = p("x0^2*x1", 1);
        assert!(derivative(&f, &mi(&[3, 1])).unwrap().is_zero());
        assert!(matches!(
            derivative(&f, &mi(&[1, 0, 0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn apolar_examples() {
        let f = p("x0^2*x1", 1);
        let q = p("x0*x1", 1); // dual variables share the text format
        assert_eq!(apolar_pair(&q, &f).unwrap(), p("2*x0", 1));

        // <y0^k, x0^d> = d!/(d-k)! x0^{d-k}
        let f = p("x0^5", 1);
        let q = p("x0^2", 1);
        assert_eq!(apolar_pair(&q, &f).unwrap(), p("20*x0^3", 1));

        let high = p("x0^3*x1^3", 1);
        assert!(apolar_pair(&high, &p("x0^4", 1)).unwrap().is_zero());
    }

    #[test]
    fn apolar_matches_derivative_on_monomials() {
        let f = p("x0^4 + x0*x1^3 - 2*x1^4", 1);
        for i in enumerate(1, 2) {
            let y = HomPoly::monomial(1, i.clone(), rat_int(1)).unwrap();
            assert_eq!(
                apolar_pair(&y, &f).unwrap(),
                derivative(&f, &i).unwrap(),
                "at {i}"
            );
        }
    }

    #[test]
    fn catalecticant_fermat_quartic() {
        let f = p("x0^4 + x1^4", 1);
        let cat = catalecticant(&f, 2).unwrap();
        let expected = ExactMatrix::from_rows(
            vec![
                vec![rat_int(12), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(0), rat_int(12)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(cat.matrix(), &expected);
        assert_eq!(cat.rank(), 2);
    }

    #[test]
    fn catalecticant_mixed_quartic() {
        let f = p("x0^4 + x0*x1^3", 1);
        let cat = catalecticant(&f, 2).unwrap();
        let expected = ExactMatrix::from_rows(
            vec![
                vec![rat_int(12), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(0), rat_int(3)],
                vec![rat_int(0), rat_int(6), rat_int(0)],
            ],
            3,
        )
        .unwrap();
        assert_eq!(cat.matrix(), &expected);
        assert_eq!(cat.rank(), 3);
    }

    #[test]
    fn catalecticant_order_zero_is_coeff_vector() {
        let f = p("x0^4 + x0*x1^3", 1);
        let cat = catalecticant(&f, 0).unwrap();
        assert_eq!(cat.matrix().rows(), 1);
        assert_eq!(cat.matrix().row_vec(0), f.coeff_vector());
        assert!(matches!(
            catalecticant(&f, 5),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn e_space_examples() {
        let f = p("x0^4 + x1^4", 1);
        let s = e_space(&f, 1);
        assert_eq!(s.dim(), 2);
        let expected = crate::exactla::span_of_polys(
            &[p("x0^3", 1), p("x1^3", 1)],
            1,
            3,
        )
        .unwrap();
        assert!(s.equal(&expected).unwrap());

        let g = p("x0^3*x1 - x1^4", 1);
        let e0 = e_space(&g, 0);
        assert_eq!(e0.dim(), 1);
        assert!(e0.contains_poly(&g).unwrap());
    }

    #[test]
    fn e_space_of_power_sums_has_dim_vars() {
        for (n, d) in [(1usize, 4usize), (2, 5), (3, 4)] {
            let text = (0..=n)
                .map(|i| format!("x{i}^{d}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let f = p(&text, n);
            for k in 1..d {
                assert_eq!(e_dim(&f, k), n + 1, "n={n} d={d} k={k}");
            }
        }
    }

    #[test]
    fn e_space_beyond_degree_is_zero() {
        let f = p("x0^2*x1", 1);
        assert_eq!(e_space(&f, 4).dim(), 0);
        assert_eq!(e_space(&f, 3).dim(), 1); // constants
    }

    #[test]
    fn e_space_scaling_invariance() {
        let f = p("x0^4 + x0*x1^3", 1);
        let g = f.scale(&crate::polyring::rat(-7, 3));
        for k in 0..=4 {
            assert!(e_space(&f, k).equal(&e_space(&g, k)).unwrap());
        }
    }

    #[test]
    fn derivative_commutativity_small() {
        let f = p("x0^4 + x0*x1^3 - 2*x0^2*x1^2", 1);
        for k1 in 0..=2 {
            for k2 in 0..=2 {
                for i in enumerate(1, k1) {
                    for j in enumerate(1, k2) {
                        let two_step =
                            derivative(&derivative(&f, &i).unwrap(), &j).unwrap();
                        let one_step = derivative(&f, &i.add(&j).unwrap()).unwrap();
                        assert_eq!(two_step, one_step);
                    }
                }
            }
        }
    }
}
