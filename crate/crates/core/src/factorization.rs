//! Cyclotomic cosets and the factorization of `X^n - lambda` into monic
//! basic irreducible factors over a chain ring.
//!
//! Factoring happens over the residue field (distinct-degree, then
//! Cantor-Zassenhaus equal-degree splitting) and the factors are Hensel
//! lifted. Randomness comes from a ChaCha stream seeded by the instance
//! parameters, and the final list is sorted, so output is reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain_ring::{Elem, RingSpec};
use crate::error::{Error, Result};
use crate::polynomial::{hensel_lift_factorization, xgcd_field, Ambient, Polynomial};

/// The q-cyclotomic cosets modulo `m`, optionally restricted to odd residues
/// (the classes indexing the factors of `X^{m/2} + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub q: u64,
    pub m: u64,
    pub cosets: Vec<Vec<u64>>,
    #[serde(skip)]
    pub representatives: Vec<u64>,
    #[serde(skip)]
    pub odd_only: bool,
}

impl CosetTable {
    /// The coset containing `i`, if `i` is covered by the table.
    pub fn coset_of(&self, i: u64) -> Option<&[u64]> {
        let i = i % self.m;
        self.cosets
            .iter()
            .find(|c| c.binary_search(&i).is_ok())
            .map(Vec::as_slice)
    }

    /// Whether the coset of `i` also contains `-i mod m`.
    pub fn is_self_reciprocal(&self, i: u64) -> bool {
        let neg = (self.m - i % self.m) % self.m;
        self.coset_of(i)
            .is_some_and(|c| c.binary_search(&neg).is_ok())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cosets.iter().map(Vec::len).collect()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest `k >= 1` with `q^k = 1 mod m`.
pub fn multiplicative_order(q: u64, m: u64) -> Result<u64> {
    if gcd(q % m.max(1), m) != 1 && m > 1 {
        return Err(Error::NotCoprimeModulus { q, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut x = q % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % m as u128) as u64;
        k += 1;
    }
    Ok(k)
}

pub fn cyclotomic_cosets(q: u64, m: u64, odd_only: bool) -> Result<CosetTable> {
    if m == 0 || gcd(q, m) != 1 {
        return Err(Error::NotCoprimeModulus { q, m });
    }
    let mut seen = vec![false; m as usize];
    let mut cosets = Vec::new();
    for i in 0..m {
        if seen[i as usize] || (odd_only && i % 2 == 0) {
            continue;
        }
        let mut coset = Vec::new();
        let mut j = i;
        while !seen[j as usize] {
            seen[j as usize] = true;
            coset.push(j);
            j = ((j as u128 * q as u128) % m as u128) as u64;
        }
        coset.sort_unstable();
        cosets.push(coset);
    }
    let representatives = cosets.iter().map(|c| c[0]).collect();
    Ok(CosetTable {
        q,
        m,
        cosets,
        representatives,
        odd_only,
    })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the equal-degree splitting: SplitMix64 folded over
/// `(p, t, r, n, lambda coefficients...)`.
pub fn factorization_seed(ring: &RingSpec, n: usize, lambda: Elem) -> u64 {
    let mut state = 0u64;
    let mut acc = 0u64;
    let words = [ring.p(), ring.t() as u64, ring.r() as u64, n as u64]
        .into_iter()
        .chain(ring.coeffs(lambda));
    for w in words {
        state ^= w;
        acc ^= splitmix64(&mut state);
    }
    acc
}

fn random_poly(field: &RingSpec, below: usize, rng: &mut impl Rng) -> Polynomial {
    let coeffs = (0..below)
        .map(|_| field.elem(rng.random_range(0..field.size())).expect("in range"))
        .collect();
    Polynomial::new(field, coeffs)
}

fn gcd_poly(a: &Polynomial, b: &Polynomial) -> Polynomial {
    xgcd_field(a, b).expect("field gcd").0
}

/// Splits a monic squarefree polynomial over a field into groups of
/// irreducible factors of equal degree: `(product, degree)`.
pub fn distinct_degree(f: &Polynomial) -> Vec<(Polynomial, usize)> {
    let field = f.ring().clone();
    let q = field.q();
    let x = Polynomial::x(&field);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while f.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(q, &f).expect("monic");
        let g = gcd_poly(&h.sub(&x), &f);
        if g.degree() > Some(0) {
            f = f.divrem(&g).expect("monic").0;
            h = h.rem(&f).expect("monic");
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = f.degree().filter(|&d| d > 0) {
        out.push((f, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
pub fn equal_degree(f: &Polynomial, d: usize, rng: &mut impl Rng) -> Vec<Polynomial> {
    let deg = f.degree().expect("nonzero");
    if deg == d {
        return vec![f.clone()];
    }
    let field = f.ring().clone();
    let q = field.q();
    loop {
        let a = random_poly(&field, deg, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
            let mut c = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                c = c.powmod(q, f).expect("monic");
                norm = norm.mulmod(&c, f).expect("monic");
            }
            norm.powmod((q - 1) / 2, f)
                .expect("monic")
                .sub(&Polynomial::one(&field))
        } else {
            // absolute trace to F_2: a + a^2 + a^4 + ... over r*d squarings
            let steps = q.trailing_zeros() as usize * d;
            let mut c = a.rem(f).expect("monic");
            let mut tr = c.clone();
            for _ in 1..steps {
                c = c.mulmod(&c, f).expect("monic");
                tr = tr.add(&c);
            }
            tr
        };
        let g = gcd_poly(&b, f);
        if g.degree() > Some(0) && g.degree() < Some(deg) {
            let h = f.divrem(&g).expect("monic").0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial over a field, in
/// canonical order.
pub fn factor_squarefree(f: &Polynomial, rng: &mut impl Rng) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = distinct_degree(f)
        .into_iter()
        .flat_map(|(g, d)| equal_degree(&g, d, rng))
        .collect();
    sort_canonical(&mut out);
    out
}

/// Sorts by `(degree, little-endian coefficient indices)`.
pub fn sort_canonical(polys: &mut [Polynomial]) {
    polys.sort_by_key(|f| (f.degree(), f.to_indices()));
}

/// The monic basic irreducible factors of `X^n - lambda` over `R`, sorted
/// canonically, multiplying back to `X^n - lambda` exactly.
pub fn factor_constacyclic_modulus(ring: &RingSpec, n: usize, lambda: Elem) -> Result<Vec<Polynomial>> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be positive".into()));
    }
    if (n as u64).is_multiple_of(ring.p()) {
        return Err(Error::RepeatedRootLength { n, p: ring.p() });
    }
    let ambient = Ambient::new(ring, n, lambda)?;
    let target = ambient.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(factorization_seed(ring, n, lambda));
    let bars = factor_squarefree(&target.bar_reduce(), &mut rng);
    let mut lifted = hensel_lift_factorization(&target, &bars)?;
    sort_canonical(&mut lifted);
    let product = lifted
        .iter()
        .fold(Polynomial::one(ring), |acc, f| acc.mul(f));
    if product != target {
        return Err(Error::VerificationFailed("factor product differs from X^n - lambda".into()));
    }
    Ok(lifted)
}

/// Factor degrees predicted by cyclotomic cosets: for `lambda = 1` the
/// q-cosets mod `n`, for `lambda = -1` the odd q-cosets mod `2n`.
pub fn predicted_degrees(q: u64, n: usize, negacyclic: bool) -> Result<Vec<usize>> {
    let table = if negacyclic {
        cyclotomic_cosets(q, 2 * n as u64, true)?
    } else {
        cyclotomic_cosets(q, n as u64, false)?
    };
    let mut sizes = table.sizes();
    sizes.sort_unstable();
    Ok(sizes)
}
