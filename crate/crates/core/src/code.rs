//! Constacyclic codes as gamma-exponent vectors over a primitive idempotent
//! decomposition.
//!
//! Every ideal of `R[x] = R[X]/<X^n - lambda>` is `sum gamma^{s_i} e_i R[x]`
//! for a unique `s in {0..t}^k`, so all code operations below are exponent
//! arithmetic. The polynomial-level objects (generator, generator matrix,
//! membership) are derived from the exponents on demand.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::chain_ring::{Elem, RingSpec};
use crate::error::{Error, Result};
use crate::idempotent::{primitive_idempotent_set, reciprocal_matching, ElemRepr, IdempotentSet};
use crate::polynomial::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfDuality {
    None,
    SelfOrthogonal,
    SelfDual,
    TrivialSelfDual,
}

impl SelfDuality {
    pub fn is_self_dual(self) -> bool {
        matches!(self, SelfDuality::SelfDual | SelfDuality::TrivialSelfDual)
    }

    pub fn is_self_orthogonal(self) -> bool {
        self != SelfDuality::None
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SelfDuality::None => "none",
            SelfDuality::SelfOrthogonal => "self_orthogonal",
            SelfDuality::SelfDual => "self_dual",
            SelfDuality::TrivialSelfDual => "trivial_self_dual",
        }
    }
}

/// `C = sum gamma^{s_i} e_i R[x]`; `s_i = t` drops the component.
#[derive(Clone, Debug)]
pub struct ConstacyclicCode {
    idems: Arc<IdempotentSet>,
    s: Vec<u32>,
}

impl PartialEq for ConstacyclicCode {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.idems, &other.idems) || *self.idems == *other.idems) && self.s == other.s
    }
}

impl Eq for ConstacyclicCode {}

impl ConstacyclicCode {
    pub fn from_exponents(idems: Arc<IdempotentSet>, s: Vec<u32>) -> Result<ConstacyclicCode> {
        if s.len() != idems.len() {
            return Err(Error::LengthMismatch {
                expected: idems.len(),
                found: s.len(),
            });
        }
        let t = idems.ring().t();
        if let Some(&value) = s.iter().find(|&&v| v > t) {
            return Err(Error::ExponentRange { value, t });
        }
        Ok(ConstacyclicCode { idems, s })
    }

    /// `R^n`.
    pub fn full(idems: Arc<IdempotentSet>) -> ConstacyclicCode {
        let k = idems.len();
        ConstacyclicCode { idems, s: vec![0; k] }
    }

    /// `{0}`.
    pub fn zero(idems: Arc<IdempotentSet>) -> ConstacyclicCode {
        let k = idems.len();
        let t = idems.ring().t();
        ConstacyclicCode { idems, s: vec![t; k] }
    }

    /// The ideal generated by `gens`: the exponent of each component is the
    /// smallest valuation among the generators' projections onto it.
    pub fn from_generators(idems: Arc<IdempotentSet>, gens: &[Polynomial]) -> Result<ConstacyclicCode> {
        let n = idems.n();
        let t = idems.ring().t();
        let mut s = vec![t; idems.len()];
        for g in gens {
            if g.ring() != idems.ring() {
                return Err(Error::SpecMismatch);
            }
            let g = idems.ambient().reduce(g);
            if g.coeffs().len() > n {
                return Err(Error::DegreeTooLarge { degree: g.coeffs().len() - 1, n });
            }
            for (i, si) in s.iter_mut().enumerate() {
                *si = (*si).min(idems.component_val(&g, i));
            }
        }
        ConstacyclicCode::from_exponents(idems, s)
    }

    pub fn idempotent_set(&self) -> &Arc<IdempotentSet> {
        &self.idems
    }

    pub fn exponents(&self) -> &[u32] {
        &self.s
    }

    pub fn ring(&self) -> &RingSpec {
        self.idems.ring()
    }

    pub fn n(&self) -> usize {
        self.idems.n()
    }

    pub fn lambda(&self) -> Elem {
        self.idems.lambda()
    }

    fn t(&self) -> u32 {
        self.ring().t()
    }

    /// Single generator `w = sum gamma^{s_i} e_i`.
    pub fn generator_w(&self) -> Polynomial {
        let ring = self.ring();
        self.s
            .iter()
            .enumerate()
            .fold(Polynomial::zero(ring), |acc, (i, &si)| {
                acc.add(&self.idems.idempotent(i).scale(ring.gamma_pow(si)))
            })
    }

    /// Grouped form `sum gamma^{r_j} theta_j R[x]` with `r_0 < r_1 < ...`,
    /// where `theta_j` sums the idempotents sharing exponent `r_j < t`.
    pub fn theta_groups(&self) -> Vec<(u32, Polynomial)> {
        let ring = self.ring();
        let mut exps: Vec<u32> = self.s.iter().copied().filter(|&v| v < self.t()).collect();
        exps.sort_unstable();
        exps.dedup();
        exps.into_iter()
            .map(|r| {
                let theta = self
                    .s
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| v == r)
                    .fold(Polynomial::zero(ring), |acc, (i, _)| acc.add(self.idems.idempotent(i)));
                (r, theta)
            })
            .collect()
    }

    /// `log_q |C| = sum (t - s_i) deg g_i`.
    pub fn log_q_cardinality(&self) -> u64 {
        self.s
            .iter()
            .zip(self.idems.degrees())
            .map(|(&si, d)| (self.t() - si) as u64 * d as u64)
            .sum()
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.ring().q()).pow(self.log_q_cardinality() as u32)
    }

    pub fn contains_poly(&self, v: &Polynomial) -> bool {
        let v = self.idems.ambient().reduce(v);
        (0..self.s.len()).all(|i| self.idems.component_val(&v, i) >= self.s[i])
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        let poly = self.idems.ambient().from_vector(v)?;
        Ok(self.contains_poly(&poly))
    }

    /// `C^perp`, a code over `X^n - lambda^{-1}`: component `sigma(i)` gets
    /// exponent `t - s_i`.
    pub fn dual(&self) -> Result<ConstacyclicCode> {
        let target = self.idems.inverse_set()?;
        let sigma = match self.idems.matching() {
            Some(m) if Arc::ptr_eq(&target, &self.idems) => m.sigma.clone(),
            _ => reciprocal_matching(&self.idems, Some(&target))?.sigma,
        };
        let t = self.t();
        let mut s = vec![0; self.s.len()];
        for (i, &si) in self.s.iter().enumerate() {
            s[sigma[i]] = t - si;
        }
        ConstacyclicCode::from_exponents(target, s)
    }

    /// `A(C)`: exponents `t - s_i` on the same components.
    pub fn annihilator(&self) -> ConstacyclicCode {
        let t = self.t();
        ConstacyclicCode {
            idems: Arc::clone(&self.idems),
            s: self.s.iter().map(|&si| t - si).collect(),
        }
    }

    /// `(C : gamma^j) = {a : gamma^j a in C}`.
    pub fn quotient_by_gamma(&self, j: u32) -> Result<ConstacyclicCode> {
        if j > self.t() {
            return Err(Error::ExponentRange { value: j, t: self.t() });
        }
        Ok(ConstacyclicCode {
            idems: Arc::clone(&self.idems),
            s: self.s.iter().map(|&si| si.saturating_sub(j)).collect(),
        })
    }

    pub fn is_subcode_of(&self, other: &ConstacyclicCode) -> bool {
        *self.idems == *other.idems && self.s.iter().zip(&other.s).all(|(a, b)| a >= b)
    }

    pub fn classify_self(&self) -> SelfDuality {
        let t = self.t();
        let Some(m) = self.idems.matching() else {
            return self.classify_across_ambients();
        };
        let pair_sums: Vec<u32> = (0..self.s.len())
            .map(|i| self.s[i] + self.s[m.sigma[i]])
            .collect();
        if pair_sums.iter().all(|&v| v == t) {
            if t.is_multiple_of(2) && self.s.iter().all(|&v| v == t / 2) {
                SelfDuality::TrivialSelfDual
            } else {
                SelfDuality::SelfDual
            }
        } else if pair_sums.iter().all(|&v| v >= t) {
            SelfDuality::SelfOrthogonal
        } else {
            SelfDuality::None
        }
    }

    /// `C` and `C^perp` live in different ambients when `lambda^2 != 1`, so
    /// containment is tested on the shifts of `w`, which span `C` over `R`.
    fn classify_across_ambients(&self) -> SelfDuality {
        let t = self.t();
        let Ok(dual) = self.dual() else {
            return SelfDuality::None;
        };
        let amb = self.idems.ambient();
        let mut row = self.generator_w();
        for _ in 0..self.n() {
            if !dual.contains(&amb.to_vector(&row)).unwrap_or(false) {
                return SelfDuality::None;
            }
            row = amb.shift(&row);
        }
        if self.log_q_cardinality() != dual.log_q_cardinality() {
            SelfDuality::SelfOrthogonal
        } else if t.is_multiple_of(2) && self.s.iter().all(|&v| v == t / 2) {
            SelfDuality::TrivialSelfDual
        } else {
            SelfDuality::SelfDual
        }
    }

    /// Rows `x^j gamma^{s_i} e_i` for `j < deg g_i`, as length-`n` vectors.
    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        let ring = self.ring();
        let amb = self.idems.ambient();
        let degrees = self.idems.degrees();
        let mut rows = Vec::new();
        for (i, &si) in self.s.iter().enumerate() {
            if si >= self.t() {
                continue;
            }
            let mut row = self.idems.idempotent(i).scale(ring.gamma_pow(si));
            for _ in 0..degrees[i] {
                rows.push(amb.to_vector(&row));
                row = amb.shift(&row);
            }
        }
        rows
    }

    pub fn dump(&self) -> CodeDump {
        let ring = self.ring();
        CodeDump {
            ring: ring.to_string(),
            n: self.n(),
            lambda: ElemRepr::new(ring, self.lambda()),
            exponents: self.s.clone(),
            factors: self.idems.degrees(),
            cardinality: self.cardinality().to_string(),
        }
    }
}

/// JSON form of a code.
#[derive(Clone, Debug, Serialize)]
pub struct CodeDump {
    pub ring: String,
    pub n: usize,
    pub lambda: ElemRepr,
    pub exponents: Vec<u32>,
    /// Degrees of the factors, aligned with `exponents`.
    pub factors: Vec<usize>,
    pub cardinality: String,
}

/// A self-dual code at the exponent level, or `None` when the requested
/// kind does not exist.
///
/// Even `t`: every component gets `t/2`; with `nontrivial`, the reciprocal
/// pair with the smallest index is split as `(0, t)` instead. Odd `t`:
/// requires `sigma` without fixed points and splits every pair as `(0, t)`.
pub fn build_self_dual(idems: Arc<IdempotentSet>, nontrivial: bool) -> Result<Option<ConstacyclicCode>> {
    let Some(m) = idems.matching() else {
        return Err(Error::LambdaNotPlusMinusOne);
    };
    let t = idems.ring().t();
    let sigma = m.sigma.clone();
    let mut s = vec![t / 2; idems.len()];
    if t.is_multiple_of(2) {
        if nontrivial {
            let Some(i) = (0..sigma.len()).find(|&i| sigma[i] != i) else {
                return Ok(None);
            };
            s[i] = 0;
            s[sigma[i]] = t;
        }
    } else {
        if sigma.iter().enumerate().any(|(i, &j)| i == j) {
            return Ok(None);
        }
        for (i, &j) in sigma.iter().enumerate() {
            if i < j {
                s[i] = 0;
                s[j] = t;
            }
        }
    }
    let code = ConstacyclicCode::from_exponents(idems, s)?;
    if !code.classify_self().is_self_dual() {
        return Err(Error::VerificationFailed("constructed code is not self-dual".into()));
    }
    Ok(Some(code))
}

/// The root `a = 1 (mod gamma)` of `Y^n = c`, by Newton iteration.
pub fn root_near_one(ring: &RingSpec, n: usize, c: Elem) -> Result<Elem> {
    if ring.residue(c) != ring.residue(Elem::ONE) {
        return Err(Error::LambdaResidueMismatch);
    }
    let n_elem = ring.from_int(n as i64);
    let mut a = Elem::ONE;
    for _ in 0..=ring.t() + 1 {
        let f = ring.sub(ring.pow(a, n as u64), c);
        if f.is_zero() {
            return Ok(a);
        }
        let df = ring.mul(n_elem, ring.pow(a, n as u64 - 1));
        a = ring.sub(a, ring.mul(f, ring.inv(df)?));
    }
    Err(Error::VerificationFailed("root lifting did not converge".into()))
}

/// The twist `x -> a x` carrying `R[X]/<X^n - eps>` onto
/// `R[X]/<X^n - lambda>` (`eps = +-1`, `a^n = eps lambda^{-1}`).
pub fn transport_scalar(ring: &RingSpec, n: usize, eps: Elem, lambda: Elem) -> Result<Elem> {
    if ring.residue(eps) != ring.residue(lambda) {
        return Err(Error::LambdaResidueMismatch);
    }
    let c = ring.mul(eps, ring.inv(lambda)?);
    root_near_one(ring, n, c)
}

/// Applies `c_k -> a^k c_k` to a representative of degree `< n`.
pub fn transport_poly(f: &Polynomial, a: Elem) -> Polynomial {
    let ring = f.ring();
    let mut pow = Elem::ONE;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|&c| {
            let out = ring.mul(c, pow);
            pow = ring.mul(pow, a);
            out
        })
        .collect();
    Polynomial::new(ring, coeffs)
}

/// Carries a cyclic (or negacyclic) code onto the `lambda`-constacyclic
/// ambient, for `lambda` congruent to `1` (or `-1`) modulo `gamma`.
pub fn lambda_transport(code: &ConstacyclicCode, lambda: Elem) -> Result<ConstacyclicCode> {
    let ring = code.ring();
    let eps = code.lambda();
    if eps != Elem::ONE && eps != ring.from_int(-1) {
        return Err(Error::InvalidInput("source code must be cyclic or negacyclic".into()));
    }
    let n = code.n();
    let a = transport_scalar(ring, n, eps, lambda)?;
    let target = if lambda == eps {
        Arc::clone(code.idempotent_set())
    } else {
        Arc::new(primitive_idempotent_set(ring, n, lambda)?)
    };
    let mut s = vec![ring.t(); target.len()];
    for (i, e) in code.idempotent_set().idempotents().iter().enumerate() {
        let image = transport_poly(e, a);
        let j = target
            .idempotents()
            .iter()
            .position(|f| *f == image)
            .ok_or_else(|| Error::VerificationFailed("transported idempotent not primitive".into()))?;
        s[j] = code.exponents()[i];
    }
    ConstacyclicCode::from_exponents(target, s)
}
