//! Reconstruction of a homogeneous polynomial from a span of its order-`k`
//! partial derivatives, plus the relation machinery that certifies why the
//! reconstruction is unique.
//!
//! The solver treats "recover g" as the exact linear problem
//! `{ g : E_k(g) ⊆ V }`: each derivative condition `D_I g ∈ V` is encoded
//! by annihilation against the canonical complement of `V`, and the
//! solution space is a nullspace. The dimension of that nullspace is the
//! certificate — 1 means the span determines the polynomial up to scale.
//!
//! Alongside the solver, this module extracts the coefficients relating the
//! derivatives of two polynomials with a common span (`D_I g` as a
//! combination of `D_{I'} f`), checks the index-shift symmetry those
//! coefficients must satisfy, and descends them one order via the Euler
//! formula. Chaining the descent all the way to order zero is what
//! `verify_theorem` does.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::derivatives::{catalecticant, deriv_coeff, e_space};
use crate::error::{Error, Result};
use crate::exactla::{ExactMatrix, Subspace};
use crate::multiindex::{dim_space, enumerate, position, MultiIndex};
use crate::polyring::{format_rational, HomPoly, Rational};

/// Outcome of a reconstruction: how many independent solutions the span
/// admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Unique,
    Ambiguous,
    Empty,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Unique => "UNIQUE",
            Verdict::Ambiguous => "AMBIGUOUS",
            Verdict::Empty => "EMPTY",
        };
        write!(f, "{s}")
    }
}

/// Solution space of `{ g : E_k(g) ⊆ V }` as polynomials.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub solution_dim: usize,
    pub basis: Vec<HomPoly>,
    pub verdict: Verdict,
}

#[derive(Serialize)]
struct ReconstructionJson<'a> {
    verdict: &'a Verdict,
    solution_dim: usize,
    basis: Vec<String>,
}

impl ReconstructionResult {
    fn from_basis(basis: Vec<HomPoly>) -> Self {
        let solution_dim = basis.len();
        let verdict = match solution_dim {
            0 => Verdict::Empty,
            1 => Verdict::Unique,
            _ => Verdict::Ambiguous,
        };
        ReconstructionResult {
            solution_dim,
            basis,
            verdict,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReconstructionJson {
            verdict: &self.verdict,
            solution_dim: self.solution_dim,
            basis: self.basis.iter().map(|f| f.to_string()).collect(),
        })
        .expect("reconstruction result serializes")
    }
}

/// Solves `{ g in the degree-d piece : E_k(g) ⊆ V }` exactly.
///
/// `V` must live in the degree-`(d-k)` piece. By construction, whenever
/// `V = E_k(f)` the polynomial `f` itself lies in the solution set.
pub fn solve_from_span(v: &Subspace, n: usize, d: usize, k: usize) -> Result<ReconstructionResult> {
    if k > d {
        return Err(Error::OrderOutOfRange { k, max: d });
    }
    if v.n() != n || v.e() != d - k {
        return Err(Error::AmbientMismatch {
            n,
            e: d - k,
            got_n: v.n(),
            got_e: v.e(),
        });
    }

    // k = 0: the condition is literally g ∈ V.
    if k == 0 {
        return Ok(ReconstructionResult::from_basis(v.basis_polys()));
    }
    // full ambient space: no constraint at all.
    if v.dim() == v.ambient_dim() {
        let basis = enumerate(n, d)
            .into_iter()
            .map(|i| HomPoly::monomial(n, i, Rational::one()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ReconstructionResult::from_basis(basis));
    }

    let unknowns = dim_space(n, d);
    let complement = v.complement();
    let targets = enumerate(n, d - k);
    let mut rows = Vec::new();
    for i in enumerate(n, k) {
        // coefficient of x^L in D_I g is fall(L+I, I) * g_{L+I}
        for w in 0..complement.rows() {
            let mut row = vec![Rational::zero(); unknowns];
            for (l_pos, l) in targets.iter().enumerate() {
                let weight = complement.get(w, l_pos);
                if weight.is_zero() {
                    continue;
                }
                let j = l.add(&i)?;
                let col = position(&j, d).expect("|L| + |I| = d");
                let factor = Rational::from_integer(deriv_coeff(&j, &i));
                row[col] = &row[col] + weight * factor;
            }
            rows.push(row);
        }
    }
    let constraints = ExactMatrix::from_rows(rows, unknowns)?;
    let kernel = constraints.nullspace();
    let basis = (0..kernel.rows())
        .map(|r| HomPoly::from_coeff_vector(n, d, kernel.row(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReconstructionResult::from_basis(basis))
}

/// Coefficients `a_{I,I'}` expressing each order-`k` derivative of `g` in
/// the derivative basis of `f`: `D_I g = sum_{I'} a_{I,I'} D_{I'} f`.
/// Entries are stored densely over all pairs with `|I| = |I'| = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    n: usize,
    k: usize,
    indices: Vec<MultiIndex>,
    entries: ExactMatrix,
}

impl RelationMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn entries(&self) -> &ExactMatrix {
        &self.entries
    }

    /// `a_{I,I'}`; indices must have order `k`.
    pub fn get(&self, i: &MultiIndex, iprime: &MultiIndex) -> Rational {
        let r = position(i, self.k).expect("|I| = k");
        let c = position(iprime, self.k).expect("|I'| = k");
        self.entries.get(r, c).clone()
    }

    /// True when `a = c * identity` for the given scalar.
    pub fn is_scalar_identity(&self, c: &Rational) -> bool {
        let m = self.indices.len();
        (0..m).all(|r| {
            (0..m).all(|col| {
                let expected = if r == col {
                    c.clone()
                } else {
                    Rational::zero()
                };
                *self.entries.get(r, col) == expected
            })
        })
    }

    /// Builds a relation matrix from explicit entries (row index `I`, column
    /// index `I'`), mainly for tests and file input.
    pub fn from_matrix(n: usize, k: usize, entries: ExactMatrix) -> Result<Self> {
        let m = dim_space(n, k);
        if entries.rows() != m || entries.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: entries.rows().max(entries.cols()),
            });
        }
        Ok(RelationMatrix {
            n,
            k,
            indices: enumerate(n, k),
            entries,
        })
    }
}

/// Solves for the unique relation coefficients between the order-`k`
/// derivatives of `g` and those of `f`.
///
/// Requires the derivatives of `f` to be linearly independent (otherwise
/// the coefficients are not unique and this refuses with
/// `DegenerateBasis`), and every derivative of `g` to lie in their span
/// (otherwise `NotContained`).
pub fn extract_relations(f: &HomPoly, g: &HomPoly, k: usize) -> Result<RelationMatrix> {
    if f.n() != g.n() {
        return Err(Error::VariableMismatch {
            left: f.vars(),
            right: g.vars(),
        });
    }
    if f.degree() != g.degree() && !g.is_zero() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    let n = f.n();
    let m = dim_space(n, k);
    let cat_f = catalecticant(f, k)?;
    let rank = cat_f.rank();
    if rank < m {
        return Err(Error::DegenerateBasis { rank, needed: m });
    }
    let g_fixed; // g may be the zero polynomial with a foreign nominal degree
    let g_ref = if g.is_zero() && g.degree() != f.degree() {
        g_fixed = HomPoly::zero(n, f.degree());
        &g_fixed
    } else {
        g
    };
    let cat_g = catalecticant(g_ref, k)?;

    // Solve Cf^T * Y = Cg^T column by column: rref of [Cf^T | Cg^T] gives an
    // identity block over the first m columns (full column rank), and the
    // solution block to its right.
    let aug = cat_f.matrix().transpose().hstack(&cat_g.matrix().transpose())?;
    let (r, total_rank) = aug.rref();
    if total_rank > m {
        // some derivative of g escapes the span; name the first offender
        for row in m..total_rank {
            if let Some(col) = (0..aug.cols()).find(|&c| !r.get(row, c).is_zero()) {
                let idx = &enumerate(n, k)[col - m];
                return Err(Error::NotContained {
                    index: idx.to_string(),
                });
            }
        }
        unreachable!("rank exceeds m only via a nonzero residual row");
    }

    // Y[i][j] = a_{I_j, I'_i}
    let mut entries = ExactMatrix::zeros(m, m);
    for i_row in 0..m {
        for i_col in 0..m {
            entries.set(i_row, i_col, r.get(i_col, m + i_row).clone());
        }
    }
    RelationMatrix::from_matrix(n, k, entries)
}

/// One failed instance of the index-shift symmetry.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryViolation {
    pub i: String,
    pub iprime: String,
    pub p: usize,
    pub q: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub ok: bool,
    pub violations: Vec<SymmetryViolation>,
}

/// Checks the shift symmetry `a_{I,I'} = a_{I-e_p+e_q, I'-e_p+e_q}` for all
/// `I` dominating `e_p` and all `q`, reading any entry with an invalid
/// (negative) index as zero. In particular `a_{I,I'}` must vanish whenever
/// `I` has a variable `p` that `I'` lacks.
pub fn check_symmetry(a: &RelationMatrix) -> SymmetryReport {
    let vars = a.n() + 1;
    let mut violations = Vec::new();
    for i in a.indices() {
        for iprime in a.indices() {
            let lhs = a.get(i, iprime);
            for p in 0..vars {
                if i.get(p) == 0 {
                    continue;
                }
                for q in 0..vars {
                    if p == q {
                        continue;
                    }
                    let ep = MultiIndex::unit(vars, p);
                    let eq = MultiIndex::unit(vars, q);
                    let i_shift = i.sub(&ep).expect("i dominates e_p").add(&eq).expect("same length");
                    let rhs = if iprime.get(p) >= 1 {
                        let ip_shift = iprime
                            .sub(&ep)
                            .expect("checked entry")
                            .add(&eq)
                            .expect("same length");
                        a.get(&i_shift, &ip_shift)
                    } else {
                        Rational::zero()
                    };
                    if lhs != rhs {
                        violations.push(SymmetryViolation {
                            i: i.to_string(),
                            iprime: iprime.to_string(),
                            p,
                            q,
                            lhs: format_rational(&lhs),
                            rhs: format_rational(&rhs),
                        });
                    }
                }
            }
        }
    }
    SymmetryReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Descends a symmetric relation matrix one order: for each `|K| = k-1`
/// returns `sum_{K'} a_{K+e_0, K'+e_0} D_{K'} f`, which the Euler formula
/// forces to equal `D_K g` whenever the relations came from an actual `g`.
///
/// The `e_0` slot is a free choice — the symmetry just checked guarantees
/// every slot gives the same answer — so the output is canonical.
pub fn descend(
    f: &HomPoly,
    a: &RelationMatrix,
    k: usize,
) -> Result<BTreeMap<MultiIndex, HomPoly>> {
    if k == 0 {
        return Err(Error::OrderOutOfRange { k, max: f.degree() });
    }
    let report = check_symmetry(a);
    if !report.ok {
        let first = &report.violations[0];
        return Err(Error::SymmetryViolated {
            count: report.violations.len(),
            first: format!("(I={}, I'={}, p={}, q={})", first.i, first.iprime, first.p, first.q),
        });
    }
    let vars = f.vars();
    let e0 = MultiIndex::unit(vars, 0);
    let mut out = BTreeMap::new();
    for kk in enumerate(f.n(), k - 1) {
        let row = kk.add(&e0)?;
        let mut acc = HomPoly::zero(f.n(), f.degree() + 1 - k);
        for kp in enumerate(f.n(), k - 1) {
            let col = kp.add(&e0)?;
            let c = a.get(&row, &col);
            if c.is_zero() {
                continue;
            }
            let dkp = crate::derivatives::derivative(f, &kp)?;
            acc = acc.add_scaled(&c, &dkp)?;
        }
        out.insert(kk, acc);
    }
    Ok(out)
}

/// Per-order entry in a theorem verification chain.
#[derive(Debug, Clone, Serialize)]
pub struct ChainEntry {
    pub r: usize,
    pub dim: usize,
    pub expected: usize,
    pub full: bool,
}

/// Full record of one uniqueness verification run.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    /// Whether `k` is in the range where uniqueness is guaranteed for
    /// certified inputs: `1 <= k` and `2(k+1) <= d`.
    pub k_within_bound: bool,
    /// Whether `dim E_{k+1}(f)` is maximal, the hypothesis that drives the
    /// descent.
    pub hypothesis_certified: bool,
    pub chain: Vec<ChainEntry>,
    pub solution_dim: usize,
    pub verdict: Verdict,
    /// When the solution is unique, the scalar `c` with `basis = c * f`.
    pub witness: Option<Rational>,
    /// Set when a certified hypothesis still failed to pin the polynomial
    /// down — this would contradict the uniqueness guarantee.
    pub theorem_violated: bool,
}

#[derive(Serialize)]
struct TheoremReportJson<'a> {
    n: usize,
    d: usize,
    k: usize,
    k_within_bound: bool,
    hypothesis_certified: bool,
    chain: &'a [ChainEntry],
    solution_dim: usize,
    verdict: &'a Verdict,
    witness: Option<String>,
    theorem_violated: bool,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TheoremReportJson {
            n: self.n,
            d: self.d,
            k: self.k,
            k_within_bound: self.k_within_bound,
            hypothesis_certified: self.hypothesis_certified,
            chain: &self.chain,
            solution_dim: self.solution_dim,
            verdict: &self.verdict,
            witness: self.witness.as_ref().map(format_rational),
            theorem_violated: self.theorem_violated,
        })
        .expect("theorem report serializes")
    }
}

/// Runs the uniqueness verification for one `(f, k)`:
///
/// 1. certifies the hypothesis `dim E_{k+1}(f)` maximal,
/// 2. records the dimension chain for every order `r <= k+1` (maximality
///    must propagate downward),
/// 3. reconstructs from `E_k(f)` and reports the verdict together with the
///    proportionality witness.
///
/// The order bound is reported, not enforced: running outside it is how
/// sharpness gets probed. A certified hypothesis with a non-unique verdict
/// (or a unique solution not proportional to `f`) flags
/// `theorem_violated`.
pub fn verify_theorem(f: &HomPoly, k: usize) -> Result<TheoremReport> {
    let (n, d) = (f.n(), f.degree());
    if k > d {
        return Err(Error::OrderOutOfRange { k, max: d });
    }
    let k_within_bound = k >= 1 && 2 * (k + 1) <= d;

    let top = (k + 1).min(d);
    let chain: Vec<ChainEntry> = (0..=top)
        .map(|r| {
            let dim = crate::derivatives::e_dim(f, r);
            let expected = dim_space(n, r);
            ChainEntry {
                r,
                dim,
                expected,
                full: dim == expected,
            }
        })
        .collect();
    let hypothesis_certified = k + 1 <= d && chain[k + 1].full;

    let span = e_space(f, k);
    let result = solve_from_span(&span, n, d, k)?;

    let witness = if result.verdict == Verdict::Unique && !f.is_zero() {
        let b = &result.basis[0];
        let (lead_idx, lead_coeff) = b.leading().expect("unique basis vector is nonzero");
        let f_lead = f.coeff(lead_idx);
        if f_lead.is_zero() {
            None
        } else {
            let c = lead_coeff / &f_lead;
            if b == &f.scale(&c) {
                Some(c)
            } else {
                None
            }
        }
    } else {
        None
    };

    let theorem_violated =
        hypothesis_certified && k >= 1 && !(result.verdict == Verdict::Unique && witness.is_some());

    Ok(TheoremReport {
        n,
        d,
        k,
        k_within_bound,
        hypothesis_certified,
        chain,
        solution_dim: result.solution_dim,
        verdict: result.verdict,
        witness,
        theorem_violated,
    })
}

/// Combined run of the relation machinery on a known pair `(f, g)`:
/// extraction, symmetry check, descent, and comparison of the descended
/// polynomials against the true `D_K g`.
#[derive(Debug, Clone)]
pub struct DescentReport {
    pub relations: RelationMatrix,
    pub symmetry: SymmetryReport,
    pub descended: BTreeMap<MultiIndex, HomPoly>,
    /// True when every descended polynomial equals the corresponding
    /// derivative of `g`; `false` whenever the symmetry check already
    /// failed.
    pub matches: bool,
}

impl DescentReport {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct DescentJson<'a> {
            n: usize,
            k: usize,
            relations: Vec<Vec<String>>,
            symmetry_ok: bool,
            violations: &'a [SymmetryViolation],
            descended: BTreeMap<String, String>,
            matches: bool,
        }
        serde_json::to_string(&DescentJson {
            n: self.relations.n(),
            k: self.relations.k(),
            relations: self.relations.entries().to_string_rows(),
            symmetry_ok: self.symmetry.ok,
            violations: &self.symmetry.violations,
            descended: self
                .descended
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            matches: self.matches,
        })
        .expect("descent report serializes")
    }
}

/// Runs extract → symmetry → descend for `(f, g, k)` and verifies the
/// descended order-`(k-1)` derivatives against `g` itself.
pub fn descent_report(f: &HomPoly, g: &HomPoly, k: usize) -> Result<DescentReport> {
    if k == 0 {
        return Err(Error::OrderOutOfRange { k, max: f.degree() });
    }
    let relations = extract_relations(f, g, k)?;
    let symmetry = check_symmetry(&relations);
    if !symmetry.ok {
        return Ok(DescentReport {
            relations,
            symmetry,
            descended: BTreeMap::new(),
            matches: false,
        });
    }
    let descended = descend(f, &relations, k)?;
    let mut matches = true;
    for (kk, h) in &descended {
        let dkg = crate::derivatives::derivative(g, kk)?;
        if h != &dkg {
            matches = false;
            break;
        }
    }
    Ok(DescentReport {
        relations,
        symmetry,
        descended,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, rat, rat_int};

    fn p(text: &str, n: usize) -> HomPoly {
        parse(text, n).unwrap()
    }

    #[test]
    fn solve_k0_is_the_span_itself() {
        let f = p("x0^4 + x0*x1^3", 1);
        let v = e_space(&f, 0);
        let r = solve_from_span(&v, 1, 4, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Unique);
        assert_eq!(r.solution_dim, 1);
        // basis proportional to f
        let b = &r.basis[0];
        let c = b.coeff(f.leading().unwrap().0) / f.leading().unwrap().1;
        assert_eq!(b, &f.scale(&c));
    }

    #[test]
    fn solve_from_zero_span_is_empty() {
        let v = Subspace::zero(1, 3);
        let r = solve_from_span(&v, 1, 4, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Empty);
        assert_eq!(r.solution_dim, 0);
    }

    #[test]
    fn solve_mixed_quartic_is_unique() {
        let f = p("x0^4 + x0*x1^3", 1);
        let v = e_space(&f, 1);
        let r = solve_from_span(&v, 1, 4, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Unique);
        assert_eq!(r.solution_dim, 1);
        let b = &r.basis[0];
        let c = b.coeff(f.leading().unwrap().0) / f.leading().unwrap().1;
        assert_eq!(b, &f.scale(&c));
    }

    #[test]
    fn solve_full_space_is_ambiguous() {
        // for a generic quartic the order-2 span is the whole degree-2 piece
        let f = p("x0^4 + x0*x1^3", 1);
        assert!(crate::genericity::certify_generic(&f, 2));
        let v = e_space(&f, 2);
        assert_eq!(v.dim(), v.ambient_dim());
        let r = solve_from_span(&v, 1, 4, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Ambiguous);
        assert_eq!(r.solution_dim, 5);
    }

    #[test]
    fn solve_fermat_quartic_keeps_only_pure_powers() {
        let f = p("x0^4 + x1^4", 1);
        let v = e_space(&f, 1);
        let r = solve_from_span(&v, 1, 4, 1).unwrap();
        assert_eq!(r.verdict, Verdict::Ambiguous);
        assert_eq!(r.solution_dim, 2);
        for b in &r.basis {
            assert!(e_space(b, 1).dim() <= 2);
            for bp in e_space(b, 1).basis_polys() {
                assert!(v.contains_poly(&bp).unwrap());
            }
        }
    }

    #[test]
    fn solution_always_contains_the_generator() {
        for (text, n, k) in [
            ("x0^4 + x0*x1^3", 1usize, 1usize),
            ("x0^4 + x1^4", 1, 1),
            ("x0^5", 1, 2),
            ("x0^3 + x1^3 + x2^3", 2, 1),
        ] {
            let f = p(text, n);
            let d = f.degree();
            let v = e_space(&f, k);
            let r = solve_from_span(&v, n, d, k).unwrap();
            let fvec = f.coeff_vector();
            let sol = crate::exactla::span_of_polys(&r.basis, n, d).unwrap();
            assert!(sol.contains(&fvec).unwrap(), "f missing for {text} k={k}");
        }
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let f = p("x0^4 + x0*x1^3", 1);
        let v = e_space(&f, 1); // ambient (1, 3)
        assert!(matches!(
            solve_from_span(&v, 1, 4, 2),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(matches!(
            solve_from_span(&v, 1, 4, 5),
            Err(Error::OrderOutOfRange { .. })
        ));
    }

    #[test]
    fn relations_for_scaled_polynomial_are_scalar_identity() {
        let f = p("x0^4 + x0*x1^3", 1);
        let g = f.scale(&rat_int(3));
        let a = extract_relations(&f, &g, 1).unwrap();
        assert!(a.is_scalar_identity(&rat_int(3)));

        let id = extract_relations(&f, &f, 1).unwrap();
        assert!(id.is_scalar_identity(&rat_int(1)));
    }

    #[test]
    fn relations_refuse_degenerate_basis() {
        let f = p("x0^4 + x1^4", 1); // dim E_2 = 2 < 3
        let g = f.scale(&rat_int(2));
        assert!(matches!(
            extract_relations(&f, &g, 2),
            Err(Error::DegenerateBasis { rank: 2, needed: 3 })
        ));
    }

    #[test]
    fn relations_refuse_outside_span() {
        let f = p("x0^4 + x0*x1^3", 1); // independent first derivatives
        let g = p("x1^4", 1);
        assert!(matches!(
            extract_relations(&f, &g, 1),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn relations_diagonal_but_not_scalar() {
        // E_1(f) = E_1(g) here, yet g is not a multiple of f; the relation
        // matrix is diag(1, 2) and the shift symmetry must reject it.
        let f = p("x0^4 + x1^4", 1);
        let g = p("x0^4 + 2*x1^4", 1);
        let a = extract_relations(&f, &g, 1).unwrap();
        assert_eq!(a.get(&"1,0".parse().unwrap(), &"1,0".parse().unwrap()), rat_int(1));
        assert_eq!(a.get(&"0,1".parse().unwrap(), &"0,1".parse().unwrap()), rat_int(2));
        let report = check_symmetry(&a);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
        assert!(matches!(
            descend(&f, &a, 1),
            Err(Error::SymmetryViolated { .. })
        ));
    }

    #[test]
    fn symmetry_of_scalar_identity() {
        let f = p("x0^4 + x0*x1^3", 1);
        let a = extract_relations(&f, &f.scale(&rat(-1, 2)), 1).unwrap();
        assert!(check_symmetry(&a).ok);

        // perturb one entry: symmetry must break with a nonempty list
        let mut m = a.entries().clone();
        let old = m.get(0, 1).clone();
        m.set(0, 1, old + rat_int(1));
        let broken = RelationMatrix::from_matrix(1, 1, m).unwrap();
        let report = check_symmetry(&broken);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn descend_scalar_identity_gives_scaled_derivatives() {
        let f = p("x0^6 + x0*x1^5 + x1^6", 1);
        let g = f.scale(&rat_int(3));
        let a = extract_relations(&f, &g, 2).unwrap();
        let out = descend(&f, &a, 2).unwrap();
        for (kk, h) in &out {
            let expected = crate::derivatives::derivative(&g, kk).unwrap();
            assert_eq!(h, &expected, "at K={kk}");
        }
    }

    #[test]
    fn descend_k1_reaches_order_zero() {
        let f = p("x0^4 + x0*x1^3", 1);
        let g = f.scale(&rat(-1, 2));
        let a = extract_relations(&f, &g, 1).unwrap();
        let out = descend(&f, &a, 1).unwrap();
        assert_eq!(out.len(), 1);
        let h = out.values().next().unwrap();
        assert_eq!(h, &g);
    }

    #[test]
    fn descent_report_roundtrip() {
        let f = p("x0^6 + x0*x1^5 + x1^6", 1);
        let g = f.scale(&rat_int(3));
        let rep = descent_report(&f, &g, 2).unwrap();
        assert!(rep.symmetry.ok);
        assert!(rep.matches);

        // mismatched pair: report survives with matches = false
        let f2 = p("x0^4 + x1^4", 1);
        let g2 = p("x0^4 + 2*x1^4", 1);
        let rep2 = descent_report(&f2, &g2, 1).unwrap();
        assert!(!rep2.symmetry.ok);
        assert!(!rep2.matches);
    }

    #[test]
    fn verify_theorem_mixed_quartic() {
        let f = p("x0^4 + x0*x1^3", 1);
        let rep = verify_theorem(&f, 1).unwrap();
        assert!(rep.k_within_bound);
        assert!(rep.hypothesis_certified);
        assert_eq!(
            rep.chain.iter().map(|c| c.dim).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(rep.verdict, Verdict::Unique);
        assert!(rep.witness.is_some());
        assert!(!rep.theorem_violated);
    }

    #[test]
    fn verify_theorem_fermat_quartic_hypothesis_fails() {
        let f = p("x0^4 + x1^4", 1);
        let rep = verify_theorem(&f, 1).unwrap();
        assert!(!rep.hypothesis_certified); // dim E_2 = 2 < 3
        assert_eq!(rep.chain[2].dim, 2);
        assert_eq!(rep.verdict, Verdict::Ambiguous);
        assert!(!rep.theorem_violated); // hypothesis failed, nothing violated
    }

    #[test]
    fn verify_theorem_pure_power() {
        let f = p("x0^5", 1);
        for k in 1..=2 {
            let rep = verify_theorem(&f, k).unwrap();
            assert!(!rep.hypothesis_certified);
            assert!(!rep.theorem_violated);
        }
    }

    #[test]
    fn monotone_information_on_samples() {
        // lower-order spans pin the polynomial down at least as strongly
        let f = p("x0^6 + x0*x1^5 + x1^6", 1);
        let mut dims = Vec::new();
        for k in 0..=3 {
            let r = solve_from_span(&e_space(&f, k), 1, 6, k).unwrap();
            dims.push(r.solution_dim);
        }
        for w in dims.windows(2) {
            assert!(w[0] <= w[1], "solution dims must grow with k: {dims:?}");
        }
    }
}
