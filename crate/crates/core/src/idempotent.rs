//! The complete set of primitive pairwise orthogonal idempotents of
//! `R[X]/<X^n - lambda>` and the permutation induced on it by the
//! reciprocal map.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::chain_ring::{Elem, RingSpec};
use crate::error::{Error, Result};
use crate::factorization::factor_constacyclic_modulus;
use crate::polynomial::{lift_bezout, xgcd_field, Ambient, Polynomial};

/// `sigma(i)` is the component hit by the reciprocal of `e_i`, and
/// `reciprocal(e_i) = witness_i * e_{sigma(i)}` where `witness_i` is a unit
/// of `R[X]/<g_{sigma(i)}>` (reduced below `deg g_{sigma(i)}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocalMatching {
    pub sigma: Vec<usize>,
    pub witnesses: Vec<Polynomial>,
}

impl ReciprocalMatching {
    pub fn is_involution(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| self.sigma[j] == i)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.sigma.len()).filter(|&i| self.sigma[i] == i).collect()
    }

    /// Disjoint cycles, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.sigma.len()];
        let mut out = Vec::new();
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.sigma[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.sigma[j];
            }
            out.push(cycle);
        }
        out
    }

    /// The witness as a ring scalar, when it is constant.
    pub fn scalar_witness(&self, i: usize) -> Option<Elem> {
        let w = &self.witnesses[i];
        match w.degree() {
            None => Some(Elem::ZERO),
            Some(0) => Some(w.coeff(0)),
            _ => None,
        }
    }
}

/// Primitive idempotent decomposition of one ambient ring.
#[derive(Debug)]
pub struct IdempotentSet {
    ambient: Ambient,
    factors: Vec<Polynomial>,
    cofactors: Vec<Polynomial>,
    idempotents: Vec<Polynomial>,
    bezout: Vec<(Polynomial, Polynomial)>,
    matching: Option<ReciprocalMatching>,
    inverse_set: OnceLock<Arc<IdempotentSet>>,
}

impl PartialEq for IdempotentSet {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.idempotents == other.idempotents
    }
}

impl Eq for IdempotentSet {}

fn newton_rounds(t: u32) -> u32 {
    let mut k = 0;
    while (1u64 << k) < t as u64 {
        k += 1;
    }
    k + 1
}

/// Builds the unique complete set of primitive idempotents.
///
/// The residue-field idempotents `v_i g_hat_i` come from one extended
/// Euclid per factor; they are lifted with `e <- 3e^2 - 2e^3`. The result is
/// checked against the Bezout construction `v_i g_hat_i` over `R` and for
/// completeness and orthogonality.
pub fn primitive_idempotent_set(ring: &RingSpec, n: usize, lambda: Elem) -> Result<IdempotentSet> {
    let ambient = Ambient::new(ring, n, lambda)?;
    let factors = factor_constacyclic_modulus(ring, n, lambda)?;
    let modulus = ambient.modulus();
    let field = ring.residue_field();
    let ambient_bar = Ambient::new(&field, n, ring.residue(lambda))?;
    let three = ring.from_int(3);
    let two = ring.from_int(2);

    let mut cofactors = Vec::with_capacity(factors.len());
    let mut idempotents = Vec::with_capacity(factors.len());
    let mut bezout = Vec::with_capacity(factors.len());
    for g in &factors {
        let (g_hat, rem) = modulus.divrem(g)?;
        if !rem.is_zero() {
            return Err(Error::VerificationFailed("factor does not divide X^n - lambda".into()));
        }
        let (g_bar, g_hat_bar) = (g.bar_reduce(), g_hat.bar_reduce());
        let (d, u_bar, v_bar) = xgcd_field(&g_bar, &g_hat_bar)?;
        if d.degree() != Some(0) {
            return Err(Error::NotCoprime);
        }
        let e_bar = ambient_bar.mul(&v_bar, &g_hat_bar);
        let mut e = e_bar.lift_to(ring);
        for _ in 0..newton_rounds(ring.t()) {
            let e2 = ambient.mul(&e, &e);
            let e3 = ambient.mul(&e2, &e);
            e = e2.scale(three).sub(&e3.scale(two));
        }
        if ambient.mul(&e, &e) != e {
            return Err(Error::VerificationFailed("idempotent lift did not converge".into()));
        }
        let (u, v) = lift_bezout(g, &g_hat, &u_bar, &v_bar)?;
        if ambient.mul(&v, &g_hat) != e {
            return Err(Error::VerificationFailed(
                "Newton lift disagrees with the Bezout construction".into(),
            ));
        }
        cofactors.push(g_hat);
        idempotents.push(e);
        bezout.push((u, v));
    }

    let sum = idempotents
        .iter()
        .fold(Polynomial::zero(ring), |acc, e| acc.add(e));
    if sum != Polynomial::one(ring) {
        return Err(Error::VerificationFailed("idempotents do not sum to 1".into()));
    }
    for i in 0..idempotents.len() {
        for j in i + 1..idempotents.len() {
            if !ambient.mul(&idempotents[i], &idempotents[j]).is_zero() {
                return Err(Error::VerificationFailed("idempotents are not orthogonal".into()));
            }
        }
    }

    let mut set = IdempotentSet {
        ambient,
        factors,
        cofactors,
        idempotents,
        bezout,
        matching: None,
        inverse_set: OnceLock::new(),
    };
    if set.lambda_squared_is_one() {
        let m = reciprocal_matching(&set, None)?;
        if !m.is_involution() {
            return Err(Error::VerificationFailed("reciprocal permutation is not an involution".into()));
        }
        set.matching = Some(m);
    }
    Ok(set)
}

/// Matches each `reciprocal(e_i)` to the unique idempotent of `target` whose
/// component contains it. `target` must be the set for `X^n - lambda^{-1}`;
/// when `None`, `lambda^2 = 1` is required and the set is matched against
/// itself.
pub fn reciprocal_matching(set: &IdempotentSet, target: Option<&IdempotentSet>) -> Result<ReciprocalMatching> {
    let ring = set.ring();
    let target = match target {
        Some(t) => t,
        None if set.lambda_squared_is_one() => set,
        None => return Err(Error::AmbientMismatch),
    };
    let lambda_inv = ring.inv(set.lambda())?;
    if target.ring() != ring || target.n() != set.n() || target.lambda() != lambda_inv {
        return Err(Error::AmbientMismatch);
    }
    let n = set.n();
    let amb = target.ambient();
    let mut sigma = Vec::with_capacity(set.len());
    let mut witnesses = Vec::with_capacity(set.len());
    for e in set.idempotents() {
        let r = e.reciprocal(n)?;
        let hits: Vec<usize> = (0..target.len())
            .filter(|&j| !amb.mul(&r, &target.idempotents[j]).is_zero())
            .collect();
        let [j] = hits[..] else {
            return Err(Error::VerificationFailed(format!(
                "reciprocal idempotent meets {} components",
                hits.len()
            )));
        };
        let w = r.rem(&target.factors[j])?;
        if amb.mul(&w, &target.idempotents[j]) != r {
            return Err(Error::VerificationFailed("reciprocal witness check failed".into()));
        }
        sigma.push(j);
        witnesses.push(w);
    }
    let mut seen = vec![false; target.len()];
    for &j in &sigma {
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::VerificationFailed("reciprocal map is not a bijection".into()));
        }
    }
    Ok(ReciprocalMatching { sigma, witnesses })
}

impl IdempotentSet {
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ring(&self) -> &RingSpec {
        self.ambient.ring()
    }

    pub fn n(&self) -> usize {
        self.ambient.n()
    }

    pub fn lambda(&self) -> Elem {
        self.ambient.lambda()
    }

    /// Number of primitive components.
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// Monic basic irreducible factors `g_i` of `X^n - lambda`.
    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    /// `g_hat_i = (X^n - lambda) / g_i`.
    pub fn cofactors(&self) -> &[Polynomial] {
        &self.cofactors
    }

    pub fn idempotents(&self) -> &[Polynomial] {
        &self.idempotents
    }

    pub fn idempotent(&self, i: usize) -> &Polynomial {
        &self.idempotents[i]
    }

    /// `(u_i, v_i)` with `u_i g_i + v_i g_hat_i = 1` over `R`.
    pub fn bezout(&self) -> &[(Polynomial, Polynomial)] {
        &self.bezout
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|g| g.degree().expect("nonconstant factor"))
            .collect()
    }

    pub fn lambda_squared_is_one(&self) -> bool {
        let l = self.lambda();
        self.ring().mul(l, l) == Elem::ONE
    }

    /// Reciprocal matching against this same set; present iff `lambda^2 = 1`.
    pub fn matching(&self) -> Option<&ReciprocalMatching> {
        self.matching.as_ref()
    }

    /// The decomposition for `X^n - lambda^{-1}` (this set itself when
    /// `lambda^2 = 1`), built once and cached.
    pub fn inverse_set(self: &Arc<Self>) -> Result<Arc<IdempotentSet>> {
        if self.lambda_squared_is_one() {
            return Ok(Arc::clone(self));
        }
        if let Some(s) = self.inverse_set.get() {
            return Ok(Arc::clone(s));
        }
        let inv = self.ring().inv(self.lambda())?;
        let set = Arc::new(primitive_idempotent_set(self.ring(), self.n(), inv)?);
        Ok(Arc::clone(self.inverse_set.get_or_init(|| set)))
    }

    /// `f * e_i` reduced in the ambient ring.
    pub fn project(&self, f: &Polynomial, i: usize) -> Polynomial {
        self.ambient.mul(f, &self.idempotents[i])
    }

    /// Gamma-valuation of the component of `f` in `e_i R[x]`.
    pub fn component_val(&self, f: &Polynomial, i: usize) -> u32 {
        self.project(f, i).min_val()
    }

    /// The idempotents of the residue ambient `F_q[X]/<X^n - lambda_bar>`.
    pub fn residue_idempotents(&self) -> Vec<Polynomial> {
        self.idempotents.iter().map(Polynomial::bar_reduce).collect()
    }

    /// Independent lift of the residue idempotents: `theta^{q^{t-1}}` for the
    /// canonical lift `theta` of each residue idempotent.
    pub fn frobenius_power_lift(&self) -> Vec<Polynomial> {
        let ring = self.ring();
        let exp = ring.q().pow(ring.t() - 1);
        self.residue_idempotents()
            .iter()
            .map(|theta| self.ambient.pow(&theta.lift_to(ring), exp))
            .collect()
    }

    pub fn dump(&self) -> IdempotentDump {
        let ring = self.ring();
        let elem = |e: Elem| ElemRepr::new(ring, e);
        let poly = |p: &Polynomial| p.coeffs().iter().map(|&c| elem(c)).collect::<Vec<_>>();
        IdempotentDump {
            ring: ring.to_string(),
            n: self.n(),
            lambda: elem(self.lambda()),
            factors: self.factors.iter().map(poly).collect(),
            idempotents: self
                .idempotents
                .iter()
                .map(|e| self.ambient.to_vector(e).into_iter().map(elem).collect())
                .collect(),
            sigma: self.matching.as_ref().map(|m| m.sigma.clone()),
            units: self
                .matching
                .as_ref()
                .map(|m| m.witnesses.iter().map(poly).collect()),
        }
    }
}

/// An element in JSON: a bare integer over `Z_{p^t}`, otherwise its
/// little-endian `Y`-coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Int(u64),
    Coeffs(Vec<u64>),
}

impl ElemRepr {
    pub fn new(ring: &RingSpec, e: Elem) -> ElemRepr {
        if ring.r() == 1 {
            ElemRepr::Int(e.index())
        } else {
            ElemRepr::Coeffs(ring.coeffs(e))
        }
    }
}

/// Golden-file form of an [`IdempotentSet`]: idempotents as length-`n`
/// coefficient lists, factors and unit witnesses little-endian.
#[derive(Clone, Debug, Serialize)]
pub struct IdempotentDump {
    pub ring: String,
    pub n: usize,
    pub lambda: ElemRepr,
    pub factors: Vec<Vec<ElemRepr>>,
    pub idempotents: Vec<Vec<ElemRepr>>,
    pub sigma: Option<Vec<usize>>,
    pub units: Option<Vec<Vec<ElemRepr>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(ring: &RingSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(ring, c)
    }

    #[test]
    fn length_one() {
        let ring = RingSpec::integers_mod(3, 2).unwrap();
        let s = primitive_idempotent_set(&ring, 1, Elem::ONE).unwrap();
        assert_eq!(s.idempotents(), &[Polynomial::one(&ring)]);
        let m = s.matching().unwrap();
        assert_eq!(m.sigma, vec![0]);
        assert_eq!(m.scalar_witness(0), Some(Elem::ONE));
    }

    #[test]
    fn z4_length_three() {
        let z4 = RingSpec::integers_mod(2, 2).unwrap();
        let s = primitive_idempotent_set(&z4, 3, Elem::ONE).unwrap();
        assert_eq!(s.idempotent(0), &poly(&z4, &[3, 3, 3]));
        assert_eq!(s.idempotent(1), &poly(&z4, &[2, 1, 1]));
        assert_eq!(s.matching().unwrap().sigma, vec![0, 1]);
        assert_eq!(s.frobenius_power_lift(), s.idempotents());
    }

    #[test]
    fn bezout_pairs_hold() {
        let ring = RingSpec::integers_mod(3, 3).unwrap();
        let s = primitive_idempotent_set(&ring, 8, Elem::ONE).unwrap();
        for (i, (u, v)) in s.bezout().iter().enumerate() {
            let lhs = u.mul(&s.factors()[i]).add(&v.mul(&s.cofactors()[i]));
            assert_eq!(lhs, Polynomial::one(&ring));
        }
    }

    #[test]
    fn general_lambda_needs_target() {
        let z9 = RingSpec::integers_mod(3, 2).unwrap();
        let s = primitive_idempotent_set(&z9, 2, z9.from_int(4)).unwrap();
        assert!(s.matching().is_none());
        assert_eq!(reciprocal_matching(&s, None).unwrap_err(), Error::AmbientMismatch);
        let s = Arc::new(s);
        let inv = s.inverse_set().unwrap();
        assert_eq!(inv.lambda(), z9.from_int(7));
        let m = reciprocal_matching(&s, Some(&inv)).unwrap();
        assert_eq!(m.sigma.len(), 2);
        assert_eq!(reciprocal_matching(&s, Some(&s)).unwrap_err(), Error::AmbientMismatch);
    }
}
