//! Independent oracles for cross-checking the library.
//!
//! Everything here recomputes results through a different algorithmic route
//! than the implementation under test: fraction-free Gaussian elimination
//! instead of rational Gauss–Jordan, minor expansion for small ranks,
//! iterated single-variable differentiation instead of falling-factorial
//! coefficients, and span comparisons by rank instead of canonical forms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use derivspace::multiindex::{dim_space, enumerate, position, MultiIndex};
use derivspace::polyring::{HomPoly, Rational};

pub type Vector = Vec<Rational>;
pub type Rows = Vec<Vector>;

/// Rank by fraction-free (Bareiss-style cross-multiplication) forward
/// elimination; no normalization, elimination below the pivot only.
pub fn gauss_rank(rows: &Rows) -> usize {
    let mut m: Rows = rows.clone();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = &m[r][c] * &pivot - &factor * &m[row][c];
                m[r][c] = v;
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Determinant by Laplace expansion along the first row.
fn det(m: &Rows) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rational::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Rows = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Rank as the size of the largest nonvanishing minor; only sensible for
/// small matrices (used up to 4x4).
pub fn minor_rank(rows: &Rows) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let max = nrows.min(ncols);
    for size in (1..=max).rev() {
        for row_set in subsets(nrows, size) {
            for col_set in subsets(ncols, size) {
                let sub: Rows = row_set
                    .iter()
                    .map(|&r| col_set.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                if !det(&sub).is_zero() {
                    return size;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    rec(0, n, size, &mut current, &mut out);
    out
}

/// Kernel basis by forward elimination to row echelon form (with row
/// normalization only at the end) followed by back-substitution, one basis
/// vector per free column.
pub fn gauss_kernel(rows: &Rows, ncols: usize) -> Rows {
    // echelon form, tracking pivot columns
    let mut m: Rows = rows.iter().filter(|r| !r.iter().all(|v| v.is_zero())).cloned().collect();
    let nrows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..ncols {
                let v = &m[r][c] - &factor * &m[row][c];
                m[r][c] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();

    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        // back-substitute for v with v[free] = 1, other free coords 0
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for i in (0..rank).rev() {
            let p = pivots[i];
            let mut acc = Rational::zero();
            for c in p + 1..ncols {
                if !v[c].is_zero() {
                    acc += &m[i][c] * &v[c];
                }
            }
            v[p] = -acc / &m[i][p];
        }
        kernel.push(v);
    }
    kernel
}

/// Membership of `v` in the row span, by rank comparison.
pub fn span_contains(span: &Rows, v: &Vector) -> bool {
    let base = gauss_rank(span);
    let mut extended = span.clone();
    extended.push(v.clone());
    gauss_rank(&extended) == base
}

/// Equality of two spans, by mutual rank checks.
pub fn same_span(a: &Rows, b: &Rows) -> bool {
    let ra = gauss_rank(a);
    let rb = gauss_rank(b);
    if ra != rb {
        return false;
    }
    let mut stacked = a.clone();
    stacked.extend(b.iter().cloned());
    gauss_rank(&stacked) == ra
}

/// Term-map polynomial representation used by the oracle derivative.
pub type TermMap = BTreeMap<Vec<usize>, Rational>;

pub fn to_terms(f: &HomPoly) -> TermMap {
    f.terms()
        .map(|(i, c)| (i.exponents().to_vec(), c.clone()))
        .collect()
}

fn d_dx(terms: &TermMap, p: usize) -> TermMap {
    let mut out = TermMap::new();
    for (exps, c) in terms {
        if exps[p] == 0 {
            continue;
        }
        let mut e = exps.clone();
        e[p] -= 1;
        let add = c * Rational::from_integer(exps[p].into());
        let entry = out.entry(e).or_insert_with(Rational::zero);
        *entry += add;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `D_I f` by literally differentiating one variable at a time.
pub fn iter_derivative(f: &HomPoly, i: &MultiIndex) -> TermMap {
    let mut terms = to_terms(f);
    for (p, &count) in i.exponents().iter().enumerate() {
        for _ in 0..count {
            terms = d_dx(&terms, p);
        }
    }
    terms
}

/// Coefficient vector of a term map inside the degree-`e` piece.
pub fn terms_to_vector(terms: &TermMap, n: usize, e: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim_space(n, e)];
    for (exps, c) in terms {
        let i = MultiIndex::new(exps.clone());
        let pos = position(&i, e).expect("term has the right degree");
        v[pos] = c.clone();
    }
    v
}

pub fn poly_to_terms_vector(f: &HomPoly, n: usize, e: usize) -> Vector {
    terms_to_vector(&to_terms(f), n, e)
}

/// Rows of the order-`k` derivative matrix of `f`, computed entirely
/// through the oracle derivative.
pub fn oracle_catalecticant_rows(f: &HomPoly, k: usize) -> Rows {
    let (n, d) = (f.n(), f.degree());
    enumerate(n, k)
        .iter()
        .map(|i| terms_to_vector(&iter_derivative(f, i), n, d - k))
        .collect()
}

/// Brute-force solution space of `{ g : every order-k derivative of g lies
/// in the span of v_rows }`, assembled from oracle ingredients:
/// annihilator via `gauss_kernel`, derivative coefficients via
/// `iter_derivative` on unknown monomials, final kernel via `gauss_kernel`.
pub fn oracle_solution_space(v_rows: &Rows, n: usize, d: usize, k: usize) -> Rows {
    let ambient = dim_space(n, d - k);
    let unknowns = dim_space(n, d);
    let annihilator = gauss_kernel(v_rows, ambient);
    let monos_d = enumerate(n, d);

    let mut constraints: Rows = Vec::new();
    for i in enumerate(n, k) {
        // derivative of each unknown monomial: a single monomial (or zero)
        let columns: Vec<Option<(usize, Rational)>> = monos_d
            .iter()
            .map(|j| {
                let mono = HomPoly::monomial(n, j.clone(), Rational::one()).unwrap();
                let derived = iter_derivative(&mono, &i);
                derived.into_iter().next().map(|(exps, c)| {
                    let pos = position(&MultiIndex::new(exps), d - k).unwrap();
                    (pos, c)
                })
            })
            .collect();
        for w in &annihilator {
            let row: Vector = columns
                .iter()
                .map(|entry| match entry {
                    Some((pos, c)) => &w[*pos] * c,
                    None => Rational::zero(),
                })
                .collect();
            constraints.push(row);
        }
    }
    gauss_kernel(&constraints, unknowns)
}

/// Deterministic pseudo-random rational for oracle-side generators.
pub fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

pub fn small_rational(seed: u64, salt: u64) -> Rational {
    let z = mix(seed, salt);
    let num = (z % 41) as i64 - 20;
    let den = ((z >> 32) % 7) as i64 + 1;
    Rational::new(num.into(), den.into())
}
