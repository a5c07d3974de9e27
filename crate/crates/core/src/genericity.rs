//! Genericity certification and the subspace fingerprints used to probe
//! injectivity of the span maps.
//!
//! "Generic" is operationalized, never assumed: a polynomial is sampled
//! with integer coefficients from a seeded PRNG, and every property that
//! matters — maximal rank of a catalecticant, membership in the nested
//! maximal-rank loci — is then certified by an exact rank computation. The
//! sampling only makes certification succeed with overwhelming probability;
//! the certificate is what carries the conclusion.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::derivatives::e_dim;
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::multiindex::{dim_space, enumerate};
use crate::polyring::{rat_int, HomPoly};

/// The dimension profile of all derivative spaces of one polynomial:
/// `dims[k] = dim E_k(f)` for `k = 0..=d`, and `member[k]` records whether
/// that dimension is the maximal `binomial(n+k, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityProfile {
    pub n: usize,
    pub d: usize,
    pub dims: Vec<usize>,
    pub member: Vec<bool>,
}

impl GenericityProfile {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }
}

/// All derivative-space dimensions of `f`, for `k = 0..=d`.
pub fn e_dims(f: &HomPoly) -> Vec<usize> {
    (0..=f.degree()).map(|k| e_dim(f, k)).collect()
}

/// Computes the dimension profile and membership flags of a nonzero
/// polynomial.
///
/// Two structural facts are asserted on every call because a violation of
/// either is a bug, not data: the rank bound
/// `dims[k] <= min(binomial(n+k,k), binomial(n+d-k,d-k))`, and downward
/// closure of membership (maximal rank at order `k` forces maximal rank at
/// every lower order).
pub fn profile(f: &HomPoly) -> Result<GenericityProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (n, d) = (f.n(), f.degree());
    let dims = e_dims(f);
    let member: Vec<bool> = dims
        .iter()
        .enumerate()
        .map(|(k, &dim)| dim == dim_space(n, k))
        .collect();
    for (k, &dim) in dims.iter().enumerate() {
        assert!(
            dim <= dim_space(n, k).min(dim_space(n, d - k)),
            "rank bound violated at k={k}"
        );
    }
    for k in 1..member.len() {
        assert!(
            !member[k] || member[k - 1],
            "membership chain violated at k={k}"
        );
    }
    Ok(GenericityProfile { n, d, dims, member })
}

/// True iff the order-`k` derivatives of `f` are as independent as they can
/// be: `dim E_k(f) = binomial(n+k, k)`. Orders past `d/2` (in particular
/// past `d`) can never certify because the ambient side is too small.
pub fn certify_generic(f: &HomPoly, k: usize) -> bool {
    if k > f.degree() {
        return false;
    }
    e_dim(f, k) == dim_space(f.n(), k)
}

/// SplitMix64 finalizer; the mixing function behind seed derivation.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Derives the seed of substream `index` from a base seed. Every trial of
/// an experiment gets its own substream so results do not depend on
/// execution order, and a failed trial can re-derive fresh substreams from
/// its own.
pub fn substream(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ index.wrapping_mul(0xA24BAED4963EE407))
}

/// Uniform draw from `[-bound, bound]` by rejection on the raw 64-bit
/// stream; unbiased and reproducible across platforms.
fn draw_coeff(rng: &mut ChaCha12Rng, bound: u64) -> i64 {
    let m = 2 * bound + 1;
    // accept x < largest multiple of m representable in u64
    let cap = u64::MAX - ((u64::MAX % m) + 1) % m;
    loop {
        let x = rng.next_u64();
        if x <= cap {
            return (x % m) as i64 - bound as i64;
        }
    }
}

/// Deterministic random polynomial: every coefficient drawn uniformly from
/// the integers in `[-bound, bound]`, in canonical monomial order, from a
/// ChaCha12 stream seeded with `seed`. Identical inputs give the identical
/// polynomial.
pub fn sample(n: usize, d: usize, bound: u64, seed: u64) -> HomPoly {
    assert!(bound >= 1, "bound must be at least 1");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let terms: Vec<_> = enumerate(n, d)
        .into_iter()
        .map(|i| (i, rat_int(draw_coeff(&mut rng, bound))))
        .collect();
    HomPoly::from_terms(n, d, terms).expect("sampled terms are well-formed")
}

/// Samples until `certify_generic(f, k)` holds, deriving attempt
/// substreams from `seed`. Returns the polynomial, the seed that produced
/// it, and how many attempts failed certification first.
pub fn sample_certified(n: usize, d: usize, bound: u64, seed: u64, k: usize) -> (HomPoly, u64, usize) {
    const MAX_ATTEMPTS: usize = 64;
    for attempt in 0..MAX_ATTEMPTS {
        let s = if attempt == 0 {
            seed
        } else {
            substream(seed, attempt as u64)
        };
        let f = sample(n, d, bound, s);
        if certify_generic(&f, k) {
            return (f, s, attempt);
        }
    }
    panic!("no certified sample for (n={n}, d={d}, k={k}) after {MAX_ATTEMPTS} attempts");
}

/// Canonical fingerprint of the span `E_k(f)`: the RREF subspace plus a
/// SHA-256 digest of its serialization. Equal digests are only trusted
/// after an exact subspace comparison, so the hash is a fast index, never
/// the final word.
#[derive(Debug, Clone)]
pub struct Fingerprint {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub subspace: Subspace,
    pub digest: String,
}

impl Fingerprint {
    /// Digest equality re-checked by exact canonical-form equality.
    pub fn same_space(&self, other: &Fingerprint) -> bool {
        if self.digest != other.digest {
            return false;
        }
        self.subspace.equal(&other.subspace).unwrap_or(false)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct FingerprintJson<'a> {
            n: usize,
            d: usize,
            k: usize,
            digest: &'a str,
            subspace: serde_json::Value,
        }
        let subspace: serde_json::Value =
            serde_json::from_str(&self.subspace.to_json()).expect("subspace json");
        serde_json::to_string(&FingerprintJson {
            n: self.n,
            d: self.d,
            k: self.k,
            digest: &self.digest,
            subspace,
        })
        .expect("fingerprint serializes")
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Fingerprints the span `E_k(f)` of a nonzero polynomial. Scaling `f` by
/// any nonzero constant leaves the fingerprint unchanged, so it is a
/// well-defined function of the projective class of `f`.
pub fn fingerprint(f: &HomPoly, k: usize) -> Result<Fingerprint> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let space = crate::derivatives::e_space(f, k);
    let digest = sha256_hex(space.to_json().as_bytes());
    Ok(Fingerprint {
        n: f.n(),
        d: f.degree(),
        k,
        subspace: space,
        digest,
    })
}

/// Scales `f` so its leading coefficient is 1: a canonical representative
/// of the projective class, used to deduplicate samples.
pub fn projective_normal_form(f: &HomPoly) -> Result<HomPoly> {
    let (_, lead) = f.leading().ok_or(Error::ZeroPolynomial)?;
    Ok(f.scale(&lead.recip()))
}
