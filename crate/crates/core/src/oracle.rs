//! Brute-force ground truth on tiny instances.
//!
//! Everything here works on explicit vectors in `R^n` and never looks at
//! factorizations or idempotents: codewords are enumerated by additive
//! closure, duals by testing every vector of `R^n`, and submodules are
//! identified by their Howell form (a canonical echelon basis over a chain
//! ring).

use std::collections::BTreeSet;

use crate::chain_ring::{Elem, RingSpec};
use crate::code::ConstacyclicCode;
use crate::error::{Error, Result};
use crate::par::Execution;

/// Upper bound on `|R|^n` for exhaustive work.
pub const ORACLE_LIMIT: u128 = 1 << 20;

/// Checks `|R|^n <= ORACLE_LIMIT` and returns `|R|^n`.
pub fn space_size(ring: &RingSpec, n: usize) -> Result<u64> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(ring.size() as u128);
        if total > ORACLE_LIMIT {
            return Err(Error::TooLarge(total));
        }
    }
    Ok(total as u64)
}

/// Encodes `v` with `v[0]` most significant, so integer order is
/// lexicographic order on coefficient tuples.
fn encode(ring: &RingSpec, v: &[Elem]) -> u64 {
    v.iter().fold(0, |acc, a| acc * ring.size() + a.index())
}

fn decode(ring: &RingSpec, n: usize, mut x: u64) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    for slot in v.iter_mut().rev() {
        *slot = Elem(x % ring.size());
        x /= ring.size();
    }
    v
}

fn axpy(ring: &RingSpec, v: &mut [Elem], c: Elem, w: &[Elem]) {
    for (a, &b) in v.iter_mut().zip(w) {
        *a = ring.add(*a, ring.mul(c, b));
    }
}

fn scaled(ring: &RingSpec, c: Elem, w: &[Elem]) -> Vec<Elem> {
    w.iter().map(|&b| ring.mul(c, b)).collect()
}

/// `(a_0, ..., a_{n-1}) -> (lambda a_{n-1}, a_0, ..., a_{n-2})`.
pub fn shift(ring: &RingSpec, lambda: Elem, v: &[Elem]) -> Vec<Elem> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(n);
    out.push(ring.mul(lambda, v[n - 1]));
    out.extend_from_slice(&v[..n - 1]);
    out
}

/// Standard inner product.
pub fn dot(ring: &RingSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)))
}

/// Howell form of the row span of `rows`: pivots `gamma^v` in strictly
/// increasing columns, entries above a pivot reduced below `gamma^v`, and
/// closed under the annihilator multiples `gamma^{t-v} * row`. Two row sets
/// span the same submodule iff their Howell forms are equal.
pub fn howell_form(ring: &RingSpec, n: usize, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let t = ring.t();
    let mut pool: Vec<Vec<Elem>> = rows
        .iter()
        .filter(|r| r.iter().any(|a| !a.is_zero()))
        .cloned()
        .collect();
    let mut out: Vec<(usize, u32, Vec<Elem>)> = Vec::new();
    for j in 0..n {
        let Some(idx) = (0..pool.len())
            .filter(|&i| !pool[i][j].is_zero())
            .min_by_key(|&i| ring.val(pool[i][j]))
        else {
            continue;
        };
        let mut pivot = pool.swap_remove(idx);
        let v = ring.val(pivot[j]);
        let unit = ring.div_gamma_pow(pivot[j], v).expect("valuation checked");
        pivot = scaled(ring, ring.inv(unit).expect("unit"), &pivot);
        for row in pool.iter_mut() {
            if !row[j].is_zero() {
                let b = ring.div_gamma_pow(row[j], v).expect("pivot has minimal valuation");
                axpy(ring, row, ring.neg(b), &pivot);
            }
        }
        if v > 0 {
            pool.push(scaled(ring, ring.gamma_pow(t - v), &pivot));
        }
        pool.retain(|r| r.iter().any(|a| !a.is_zero()));
        out.push((j, v, pivot));
    }
    for i in 0..out.len() {
        let (col, v) = (out[i].0, out[i].1);
        let pivot = out[i].2.clone();
        for row in out[..i].iter_mut() {
            let (_, high) = ring.split_gamma(row.2[col], v);
            if !high.is_zero() {
                axpy(ring, &mut row.2, ring.neg(high), &pivot);
            }
        }
    }
    out.into_iter().map(|(_, _, r)| r).collect()
}

/// `log_q` of the size of the row span, read off the Howell form.
pub fn span_log_q(ring: &RingSpec, n: usize, rows: &[Vec<Elem>]) -> u64 {
    howell_form(ring, n, rows)
        .iter()
        .map(|r| {
            let lead = r.iter().find(|a| !a.is_zero()).expect("nonzero row");
            (ring.t() - ring.val(*lead)) as u64
        })
        .sum()
}

/// `rows * rows^T = 0` under the standard inner product.
pub fn gram_vanishes(ring: &RingSpec, rows: &[Vec<Elem>]) -> bool {
    rows.iter()
        .enumerate()
        .all(|(i, a)| rows[i..].iter().all(|b| dot(ring, a, b).is_zero()))
}

/// Self-duality of the row span without enumerating it: self-orthogonal and
/// `|C|^2 = |R|^n`.
pub fn gram_self_dual(ring: &RingSpec, n: usize, rows: &[Vec<Elem>]) -> bool {
    gram_vanishes(ring, rows) && 2 * span_log_q(ring, n, rows) == ring.t() as u64 * n as u64
}

/// A code given by its full, sorted word list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorCode {
    ring: RingSpec,
    n: usize,
    lambda: Elem,
    basis: Vec<Vec<Elem>>,
    words: Vec<u64>,
}

impl VectorCode {
    /// The `R`-span of `gens` (not closed under the shift unless `gens` is).
    pub fn span(ring: &RingSpec, n: usize, lambda: Elem, gens: &[Vec<Elem>]) -> Result<VectorCode> {
        let total = space_size(ring, n)?;
        let mut seen = vec![false; total as usize];
        let mut words = vec![0u64];
        seen[0] = true;
        for g in gens {
            if g.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: g.len() });
            }
            let multiples: BTreeSet<Vec<Elem>> = ring.elements().map(|c| scaled(ring, c, g)).collect();
            let current = words.clone();
            for w in current {
                let base = decode(ring, n, w);
                for m in &multiples {
                    let sum: Vec<Elem> = base.iter().zip(m).map(|(&a, &b)| ring.add(a, b)).collect();
                    let x = encode(ring, &sum);
                    if !seen[x as usize] {
                        seen[x as usize] = true;
                        words.push(x);
                    }
                }
            }
        }
        words.sort_unstable();
        Ok(VectorCode {
            ring: ring.clone(),
            n,
            lambda,
            basis: howell_form(ring, n, gens),
            words,
        })
    }

    /// The constacyclic code generated by one vector: the span of its shifts.
    pub fn cyclic_span(ring: &RingSpec, lambda: Elem, v: &[Elem]) -> Result<VectorCode> {
        VectorCode::span(ring, v.len(), lambda, &shifts(ring, lambda, v))
    }

    fn from_sorted_words(ring: &RingSpec, n: usize, lambda: Elem, words: Vec<u64>) -> VectorCode {
        let total = ring.size().pow(n as u32) as usize;
        let mut seen = vec![false; total];
        let mut span = vec![0u64];
        seen[0] = true;
        let mut gens = Vec::new();
        for &w in &words {
            if seen[w as usize] {
                continue;
            }
            let g = decode(ring, n, w);
            let current = span.clone();
            for s in current {
                let base = decode(ring, n, s);
                for c in ring.elements() {
                    let mut sum = base.clone();
                    axpy(ring, &mut sum, c, &g);
                    let x = encode(ring, &sum) as usize;
                    if !seen[x] {
                        seen[x] = true;
                        span.push(x as u64);
                    }
                }
            }
            gens.push(g);
        }
        VectorCode {
            ring: ring.clone(),
            n,
            lambda,
            basis: howell_form(ring, n, &gens),
            words,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    /// Howell basis of the code.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.words.iter().map(|&w| decode(&self.ring, self.n, w))
    }

    /// Same ring, length and word set (the shift constant is ignored).
    pub fn same_words(&self, other: &VectorCode) -> bool {
        self.ring == other.ring && self.n == other.n && self.words == other.words
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.n && self.words.binary_search(&encode(&self.ring, v)).is_ok()
    }

    /// Closed under addition, `R`-scaling and the `lambda`-shift.
    pub fn is_constacyclic(&self) -> bool {
        let words: Vec<Vec<Elem>> = self.words().collect();
        words.iter().all(|w| self.contains(&shift(&self.ring, self.lambda, w)))
            && self.basis.iter().all(|b| {
                self.ring.elements().all(|c| self.contains(&scaled(&self.ring, c, b)))
                    && words.iter().all(|w| {
                        let s: Vec<Elem> = w.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect();
                        self.contains(&s)
                    })
            })
    }
}

fn shifts(ring: &RingSpec, lambda: Elem, v: &[Elem]) -> Vec<Vec<Elem>> {
    let mut out = Vec::with_capacity(v.len());
    let mut cur = v.to_vec();
    for _ in 0..v.len() {
        let next = shift(ring, lambda, &cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// All `lambda`-constacyclic codes of length `n`: the cyclic span of every
/// vector, then all joins until nothing new appears.
pub fn enumerate_ideals(ring: &RingSpec, n: usize, lambda: Elem, exec: Execution) -> Result<Vec<VectorCode>> {
    let total = space_size(ring, n)?;
    let principal: Vec<Vec<Vec<Elem>>> = exec.map_range(total as usize, |x| {
        let v = decode(ring, n, x as u64);
        howell_form(ring, n, &shifts(ring, lambda, &v))
    });
    let mut found: BTreeSet<Vec<Vec<Elem>>> = principal.into_iter().collect();
    let mut frontier: Vec<Vec<Vec<Elem>>> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let all: Vec<Vec<Vec<Elem>>> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &all {
                let mut rows = a.clone();
                rows.extend(b.iter().cloned());
                let join = howell_form(ring, n, &rows);
                if found.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    let forms: Vec<Vec<Vec<Elem>>> = found.into_iter().collect();
    let mut codes = exec
        .map(&forms, |basis| VectorCode::span(ring, n, lambda, basis))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    codes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.words.cmp(&b.words)));
    Ok(codes)
}

/// `{a : a . b = 0 for all b in C}` by testing every vector of `R^n`.
pub fn brute_dual(c: &VectorCode, exec: Execution) -> Result<VectorCode> {
    let ring = &c.ring;
    let total = space_size(ring, c.n)?;
    let hits = exec.map_range(total as usize, |x| {
        let v = decode(ring, c.n, x as u64);
        c.basis.iter().all(|b| dot(ring, &v, b).is_zero()).then_some(x as u64)
    });
    let words: Vec<u64> = hits.into_iter().flatten().collect();
    let lambda = ring.inv(c.lambda).unwrap_or(c.lambda);
    Ok(VectorCode::from_sorted_words(ring, c.n, lambda, words))
}

/// The words of `code`: all `R[x]`-multiples of its generator `w`.
pub fn expand(code: &ConstacyclicCode) -> Result<VectorCode> {
    let ring = code.ring();
    let w = code.idempotent_set().ambient().to_vector(&code.generator_w());
    VectorCode::cyclic_span(ring, code.lambda(), &w)
}

/// Set equality between `c` and the expansion of `d`.
pub fn equivalent(c: &VectorCode, d: &ConstacyclicCode) -> Result<bool> {
    if c.ring != *d.ring() || c.n != d.n() {
        return Err(Error::SizeMismatch);
    }
    Ok(c.words == expand(d)?.words)
}
