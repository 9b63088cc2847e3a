//! Dense univariate polynomials over a [`RingSpec`], plus the quotient
//! ring `R[X]/<X^n - lambda>` in which codes live.

use std::fmt;

use crate::chain_ring::{Elem, RingSpec};
use crate::error::{Error, Result};

/// Polynomial with little-endian coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingSpec,
    coeffs: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyArithKind {
    Add,
    Sub,
    Mul,
    Rem,
    Quo,
}

impl Polynomial {
    pub fn new(ring: &RingSpec, mut coeffs: Vec<Elem>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Integer coefficients, reduced into the ring (constants only).
    pub fn from_ints(ring: &RingSpec, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn zero(ring: &RingSpec) -> Polynomial {
        Polynomial::new(ring, Vec::new())
    }

    pub fn one(ring: &RingSpec) -> Polynomial {
        Polynomial::constant(ring, Elem::ONE)
    }

    pub fn constant(ring: &RingSpec, c: Elem) -> Polynomial {
        Polynomial::new(ring, vec![c])
    }

    /// `c X^k`.
    pub fn monomial(ring: &RingSpec, c: Elem, k: usize) -> Polynomial {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Polynomial::new(ring, coeffs)
    }

    pub fn x(ring: &RingSpec) -> Polynomial {
        Polynomial::monomial(ring, Elem::ONE, 1)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficients as element indices, little-endian.
    pub fn to_indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    /// Coefficients padded to length `n`.
    pub fn to_vector(&self, n: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(n.max(v.len()), Elem::ZERO);
        v
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(Elem::ONE)
    }

    /// Not a zero divisor; over a chain ring this means the bar reduction is
    /// nonzero.
    pub fn is_regular(&self) -> bool {
        self.coeffs.iter().any(|&c| self.ring.is_unit(c))
    }

    /// Minimum gamma-valuation over the coefficients (`t` for zero).
    pub fn min_val(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|&c| self.ring.val(c))
            .min()
            .unwrap_or(self.ring.t())
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(self.ring == other.ring, "polynomials over different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.ring.add(self.coeff(k), other.coeff(k)))
            .collect();
        Polynomial::new(&self.ring, coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&c| self.ring.neg(c)).collect();
        Polynomial::new(&self.ring, coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.ring.sub(self.coeff(k), other.coeff(k)))
            .collect();
        Polynomial::new(&self.ring, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let ring = &self.ring;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(out[i + j], ring.mul(a, b));
            }
        }
        Polynomial::new(ring, out)
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|&a| self.ring.mul(a, c)).collect();
        Polynomial::new(&self.ring, coeffs)
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial::new(&self.ring, coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.ring.add(self.ring.mul(acc, x), c))
    }

    /// Division with remainder by a polynomial whose leading coefficient is
    /// a unit.
    pub fn divrem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_ring(divisor);
        let ring = &self.ring;
        let lead = divisor.lead().ok_or(Error::NonMonicDivisor)?;
        let lead_inv = ring.inv(lead).map_err(|_| Error::NonMonicDivisor)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Polynomial::zero(ring), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Elem::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = ring.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[k - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = ring.sub(rem[idx], ring.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Polynomial::new(ring, quo), Polynomial::new(ring, rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Checked arithmetic; `Rem`/`Quo` require a monic divisor.
    pub fn arith(&self, other: &Polynomial, kind: PolyArithKind) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::SpecMismatch);
        }
        Ok(match kind {
            PolyArithKind::Add => self.add(other),
            PolyArithKind::Sub => self.sub(other),
            PolyArithKind::Mul => self.mul(other),
            PolyArithKind::Rem | PolyArithKind::Quo => {
                if !other.is_monic() {
                    return Err(Error::NonMonicDivisor);
                }
                let (q, r) = self.divrem(other)?;
                if kind == PolyArithKind::Rem {
                    r
                } else {
                    q
                }
            }
        })
    }

    /// Coefficient-wise reduction onto the residue field.
    pub fn bar_reduce(&self) -> Polynomial {
        let field = self.ring.residue_field();
        let coeffs = self.coeffs.iter().map(|&c| self.ring.residue(c)).collect();
        Polynomial::new(&field, coeffs)
    }

    /// Canonical lift of a residue-field polynomial into `ring`.
    pub fn lift_to(&self, ring: &RingSpec) -> Polynomial {
        assert!(ring.residue_field() == self.ring, "not the residue field of the target");
        let coeffs = self.coeffs.iter().map(|&c| ring.lift_residue(c)).collect();
        Polynomial::new(ring, coeffs)
    }

    /// Fixed-width reciprocal: reverses the coefficient window of length `n`,
    /// `a_0 + ... + a_{n-1} x^{n-1} -> a_{n-1} + ... + a_0 x^{n-1}`.
    pub fn reciprocal(&self, n: usize) -> Result<Polynomial> {
        if self.coeffs.len() > n {
            return Err(Error::DegreeTooLarge {
                degree: self.coeffs.len() - 1,
                n,
            });
        }
        let mut v = self.to_vector(n);
        v.reverse();
        Ok(Polynomial::new(&self.ring, v))
    }

    /// Degree-sensitive reciprocal `x^{deg f} f(1/x)`; zero stays zero.
    pub fn reversed(&self) -> Polynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        Polynomial::new(&self.ring, c)
    }

    /// Scales by the inverse of the leading coefficient.
    pub fn monic(&self) -> Result<Polynomial> {
        let lead = self.lead().ok_or(Error::NotAUnit)?;
        Ok(self.scale(self.ring.inv(lead)?))
    }

    pub fn mulmod(&self, other: &Polynomial, modulus: &Polynomial) -> Result<Polynomial> {
        self.mul(other).rem(modulus)
    }

    pub fn powmod(&self, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
        let mut base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.ring).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Irreducibility over a field. Small cases are settled by trial
    /// division by every monic polynomial of degree at most half; larger
    /// ones by the distinct-degree (Rabin) test.
    pub fn is_irreducible(&self) -> bool {
        assert!(self.ring.is_field(), "irreducibility is tested over fields");
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let Ok(f) = self.monic() else { return false };
        let q = self.ring.q();
        let half = d / 2;
        if (q as f64).powi(half as i32) <= 4096.0 {
            return !(1..=half).any(|k| has_monic_divisor_of_degree(&f, k));
        }
        let x = Polynomial::x(&self.ring);
        let frob = |g: &Polynomial, times: usize| -> Polynomial {
            let mut h = g.clone();
            for _ in 0..times {
                h = h.powmod(q, &f).expect("monic modulus");
            }
            h
        };
        if frob(&x, d).sub(&x).rem(&f).expect("monic").is_zero() {
            prime_factors(d as u64).into_iter().all(|l| {
                let h = frob(&x, d / l as usize).sub(&x);
                let (g, _, _) = xgcd_field(&h, &f).expect("field");
                g.degree() == Some(0)
            })
        } else {
            false
        }
    }
}

fn has_monic_divisor_of_degree(f: &Polynomial, k: usize) -> bool {
    let ring = f.ring();
    let q = ring.q();
    let count = q.pow(k as u32);
    (0..count).any(|mut idx| {
        let mut coeffs = Vec::with_capacity(k + 1);
        for _ in 0..k {
            coeffs.push(ring.elem(idx % q).expect("in range"));
            idx /= q;
        }
        coeffs.push(Elem::ONE);
        let g = Polynomial::new(ring, coeffs);
        f.rem(&g).expect("monic").is_zero()
    })
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Extended Euclid over the residue field: `(d, u, v)` with `d` the monic
/// gcd and `u f + v g = d`, where `u, v` are the minimal-degree cofactors.
pub fn xgcd_field(f: &Polynomial, g: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
    if f.ring != g.ring {
        return Err(Error::SpecMismatch);
    }
    let ring = f.ring.clone();
    if !ring.is_field() {
        return Err(Error::FieldRequired);
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
    }
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Polynomial::one(&ring), Polynomial::zero(&ring));
    let (mut t0, mut t1) = (Polynomial::zero(&ring), Polynomial::one(&ring));
    while !r1.is_zero() {
        let (q, rem) = r0.divrem(&r1)?;
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let c = ring.inv(r0.lead().expect("nonzero gcd"))?;
    let (d, u, v) = (r0.scale(c), s0.scale(c), t0.scale(c));
    debug_assert!(u.mul(f).add(&v.mul(g)) == d);
    Ok((d, u, v))
}

/// Coprimality over a chain ring: `f` and `g` generate the unit ideal iff
/// their bar reductions are coprime over the residue field.
pub fn coprime_over_ring(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    if f.ring != g.ring {
        return Err(Error::SpecMismatch);
    }
    if !f.is_regular() || !g.is_regular() {
        return Err(Error::NotRegular);
    }
    let (d, _, _) = xgcd_field(&f.bar_reduce(), &g.bar_reduce())?;
    Ok(d.degree() == Some(0))
}

/// One factorization `f = g h` over `R` with Bezout witnesses `s g + t h = 1`.
#[derive(Clone, Debug)]
pub struct LiftedPair {
    pub g: Polynomial,
    pub h: Polynomial,
    pub s: Polynomial,
    pub t: Polynomial,
}

/// Quadratic Hensel lifting of `f = g h` from the residue field to `R`.
///
/// `g_bar`, `h_bar` must be monic, coprime, and multiply to `f_bar`.
pub fn hensel_lift_pair(f: &Polynomial, g_bar: &Polynomial, h_bar: &Polynomial) -> Result<LiftedPair> {
    let ring = f.ring().clone();
    let field = ring.residue_field();
    if !f.is_monic() || !g_bar.is_monic() || !h_bar.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    if g_bar.mul(h_bar) != f.bar_reduce() {
        return Err(Error::ProductMismatch);
    }
    let (d, s_bar, t_bar) = xgcd_field(g_bar, h_bar)?;
    if d != Polynomial::one(&field) {
        return Err(Error::NotCoprime);
    }
    let mut g = g_bar.lift_to(&ring);
    let mut h = h_bar.lift_to(&ring);
    let mut s = s_bar.lift_to(&ring);
    let mut t = t_bar.lift_to(&ring);
    let one = Polynomial::one(&ring);
    // precision doubles each round: 1, 2, 4, ... >= t
    for _ in 0..=ring.t() {
        let e = f.sub(&g.mul(&h));
        let b = s.mul(&g).add(&t.mul(&h)).sub(&one);
        if e.is_zero() && b.is_zero() {
            break;
        }
        let (q, r) = s.mul(&e).divrem(&h)?;
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g));
        let h_new = h.add(&r);
        let b = s.mul(&g_new).add(&t.mul(&h_new)).sub(&one);
        let (c, d) = s.mul(&b).divrem(&h_new)?;
        s = s.sub(&d);
        t = t.sub(&t.mul(&b)).sub(&c.mul(&g_new));
        g = g_new;
        h = h_new;
    }
    if f.sub(&g.mul(&h)).is_zero()
        && s.mul(&g).add(&t.mul(&h)) == one
        && g.is_monic()
        && h.is_monic()
    {
        Ok(LiftedPair { g, h, s, t })
    } else {
        Err(Error::VerificationFailed("Hensel lifting did not converge".into()))
    }
}

/// Lifts Bezout witnesses `s g + t h = 1 (mod gamma)` for an exact
/// factorization `g h` over `R` to full precision.
pub fn lift_bezout(
    g: &Polynomial,
    h: &Polynomial,
    s_bar: &Polynomial,
    t_bar: &Polynomial,
) -> Result<(Polynomial, Polynomial)> {
    let ring = g.ring().clone();
    let one = Polynomial::one(&ring);
    let mut s = s_bar.lift_to(&ring);
    let mut t = t_bar.lift_to(&ring);
    for _ in 0..=ring.t() {
        let b = s.mul(g).add(&t.mul(h)).sub(&one);
        if b.is_zero() {
            return Ok((s, t));
        }
        let (c, d) = s.mul(&b).divrem(h)?;
        s = s.sub(&d);
        t = t.sub(&t.mul(&b)).sub(&c.mul(g));
    }
    if s.mul(g).add(&t.mul(h)) == one {
        Ok((s, t))
    } else {
        Err(Error::VerificationFailed("Bezout lifting did not converge".into()))
    }
}

/// Lifts a pairwise-coprime monic factorization of `bar(target)` to monic
/// factors of `target` over `R`, in the same order.
pub fn hensel_lift_factorization(target: &Polynomial, factors_bar: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring = target.ring().clone();
    let field = ring.residue_field();
    if !target.is_monic() || factors_bar.iter().any(|f| !f.is_monic()) {
        return Err(Error::NonMonicDivisor);
    }
    if factors_bar.iter().any(|f| f.ring() != &field) {
        return Err(Error::SpecMismatch);
    }
    let product = factors_bar
        .iter()
        .fold(Polynomial::one(&field), |acc, f| acc.mul(f));
    if product != target.bar_reduce() {
        return Err(Error::ProductMismatch);
    }
    for (i, a) in factors_bar.iter().enumerate() {
        for b in &factors_bar[i + 1..] {
            let (d, _, _) = xgcd_field(a, b)?;
            if d.degree() != Some(0) {
                return Err(Error::NotCoprime);
            }
        }
    }
    let mut out = Vec::with_capacity(factors_bar.len());
    let mut rest = target.clone();
    for (i, g_bar) in factors_bar.iter().enumerate() {
        if i + 1 == factors_bar.len() {
            out.push(rest.clone());
            break;
        }
        let h_bar = factors_bar[i + 1..]
            .iter()
            .fold(Polynomial::one(&field), |acc, f| acc.mul(f));
        let lifted = hensel_lift_pair(&rest, g_bar, &h_bar)?;
        out.push(lifted.g);
        rest = lifted.h;
    }
    Ok(out)
}

/// The quotient ring `R[X]/<X^n - lambda>`; elements are represented by
/// polynomials of degree `< n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    ring: RingSpec,
    n: usize,
    lambda: Elem,
}

impl Ambient {
    pub fn new(ring: &RingSpec, n: usize, lambda: Elem) -> Result<Ambient> {
        if n == 0 {
            return Err(Error::InvalidInput("length must be positive".into()));
        }
        if !ring.is_unit(lambda) {
            return Err(Error::NotAUnit);
        }
        Ok(Ambient {
            ring: ring.clone(),
            n,
            lambda,
        })
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

    /// `X^n - lambda`.
    pub fn modulus(&self) -> Polynomial {
        let mut c = vec![Elem::ZERO; self.n + 1];
        c[0] = self.ring.neg(self.lambda);
        c[self.n] = Elem::ONE;
        Polynomial::new(&self.ring, c)
    }

    /// Canonical representative of degree `< n` (folds `x^n = lambda`).
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if f.coeffs.len() <= self.n {
            return f.clone();
        }
        let mut c = f.coeffs.clone();
        for k in (self.n..c.len()).rev() {
            let top = c[k];
            if !top.is_zero() {
                c[k - self.n] = self.ring.add(c[k - self.n], self.ring.mul(self.lambda, top));
                c[k] = Elem::ZERO;
            }
        }
        c.truncate(self.n);
        Polynomial::new(&self.ring, c)
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &Polynomial, mut e: u64) -> Polynomial {
        let mut base = self.reduce(a);
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The ambient of `X^n - lambda^{-1}`.
    pub fn inverse_ambient(&self) -> Ambient {
        let inv = self.ring.inv(self.lambda).expect("lambda is a unit");
        Ambient {
            ring: self.ring.clone(),
            n: self.n,
            lambda: inv,
        }
    }

    /// `f(x^{-1})`, an element of the inverse ambient. There `x^{-k}` is
    /// `lambda x^{n-k}`, so this is a ring isomorphism onto it.
    pub fn star(&self, f: &Polynomial) -> Polynomial {
        let v = self.to_vector(f);
        let mut out = vec![Elem::ZERO; self.n];
        out[0] = v[0];
        for k in 1..self.n {
            out[self.n - k] = self.ring.mul(self.lambda, v[k]);
        }
        Polynomial::new(&self.ring, out)
    }

    /// Constacyclic shift `x * a`.
    pub fn shift(&self, a: &Polynomial) -> Polynomial {
        self.reduce(&a.shift(1))
    }

    pub fn from_vector(&self, v: &[Elem]) -> Result<Polynomial> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(Polynomial::new(&self.ring, v.to_vec()))
    }

    pub fn to_vector(&self, a: &Polynomial) -> Vec<Elem> {
        self.reduce(a).to_vector(self.n)
    }
}

impl fmt::Display for Polynomial {
    /// `a_k*x^k + ... + a_0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = (0..self.coeffs.len())
            .rev()
            .filter(|&k| !self.coeffs[k].is_zero())
            .map(|k| {
                let c = self.ring.format_elem(self.coeffs[k]);
                match k {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{k}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] over {}", self, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(p: u64, t: u32) -> RingSpec {
        RingSpec::integers_mod(p, t).unwrap()
    }

    fn poly(ring: &RingSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(ring, c)
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = zmod(2, 2);
        let x3m1 = poly(&z4, &[-1, 0, 0, 1]);
        let xm1 = poly(&z4, &[-1, 1]);
        assert!(x3m1.arith(&xm1, PolyArithKind::Rem).unwrap().is_zero());

        // (X - 18)(X - 30) expanded over the integers: X^2 - 48X + 540
        let z49 = zmod(7, 2);
        let prod = poly(&z49, &[-18, 1]).mul(&poly(&z49, &[-30, 1]));
        assert_eq!(prod, poly(&z49, &[540, -48, 1]));
        assert_eq!(prod, poly(&z49, &[1, 1, 1]));

        let f7 = zmod(7, 1);
        let q = poly(&f7, &[-1, 0, 0, 0, 0, 0, 1])
            .arith(&poly(&f7, &[-1, 1]), PolyArithKind::Quo)
            .unwrap();
        assert_eq!(q, poly(&f7, &[1; 6]));

        let two_x = poly(&z4, &[0, 2]);
        assert_eq!(x3m1.arith(&two_x, PolyArithKind::Rem).unwrap_err(), Error::NonMonicDivisor);
        assert_eq!(
            x3m1.arith(&poly(&z49, &[1]), PolyArithKind::Add).unwrap_err(),
            Error::SpecMismatch
        );
    }

    #[test]
    fn bar_reduction() {
        let z49 = zmod(7, 2);
        let f = poly(&z49, &[41; 6]);
        assert_eq!(f.bar_reduce(), poly(&zmod(7, 1), &[6; 6]));
        let z4 = zmod(2, 2);
        assert!(poly(&z4, &[2, 2]).bar_reduce().is_zero());
        assert_eq!(
            poly(&z49, &[-1, 0, 0, 0, 0, 0, 1]).bar_reduce(),
            poly(&zmod(7, 1), &[-1, 0, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn reciprocal_examples() {
        let z49 = zmod(7, 2);
        let e2 = poly(&z49, &[41, 3, 5, 41, 3, 5]);
        assert_eq!(e2.reciprocal(6).unwrap(), poly(&z49, &[5, 3, 41, 5, 3, 41]));
        assert_eq!(Polynomial::one(&z49).reciprocal(6).unwrap(), poly(&z49, &[0, 0, 0, 0, 0, 1]));
        let z4 = zmod(2, 2);
        assert_eq!(poly(&z4, &[2, 1, 1]).reciprocal(3).unwrap(), poly(&z4, &[1, 1, 2]));
        assert!(matches!(
            poly(&z4, &[1, 1, 1, 1]).reciprocal(3).unwrap_err(),
            Error::DegreeTooLarge { degree: 3, n: 3 }
        ));
    }

    #[test]
    fn xgcd_examples() {
        let f7 = zmod(7, 1);
        let (d, u, v) = xgcd_field(&poly(&f7, &[-1, 1]), &poly(&f7, &[1; 6])).unwrap();
        assert_eq!(d, Polynomial::one(&f7));
        assert_eq!(v, poly(&f7, &[6]));
        assert!(u.degree() < Some(5));

        let f2 = zmod(2, 1);
        let (d, u, v) = xgcd_field(&poly(&f2, &[1, 1]), &poly(&f2, &[1, 1, 1])).unwrap();
        assert_eq!((d, u, v), (Polynomial::one(&f2), poly(&f2, &[0, 1]), poly(&f2, &[1])));

        let g = poly(&f7, &[3, 0, 2]);
        let (d, u, v) = xgcd_field(&g, &g).unwrap();
        assert_eq!(d, g.monic().unwrap());
        assert!(u.is_zero());
        assert_eq!(v, poly(&f7, &[4]));

        assert_eq!(
            xgcd_field(&poly(&zmod(2, 2), &[1, 1]), &poly(&zmod(2, 2), &[1])).unwrap_err(),
            Error::FieldRequired
        );
    }

    #[test]
    fn coprimality() {
        let z49 = zmod(7, 2);
        assert!(coprime_over_ring(&poly(&z49, &[-1, 1]), &poly(&z49, &[1; 6])).unwrap());
        let z4 = zmod(2, 2);
        assert!(!coprime_over_ring(&poly(&z4, &[-1, 1]), &poly(&z4, &[-1, 1])).unwrap());
        assert!(coprime_over_ring(&poly(&z4, &[1, 2]), &poly(&z4, &[0, 1])).unwrap());
        assert_eq!(
            coprime_over_ring(&poly(&z4, &[2, 2]), &poly(&z4, &[0, 1])).unwrap_err(),
            Error::NotRegular
        );
    }

    #[test]
    fn hensel_examples() {
        let z4 = zmod(2, 2);
        let f2 = zmod(2, 1);
        let lifted = hensel_lift_factorization(
            &poly(&z4, &[-1, 0, 0, 1]),
            &[poly(&f2, &[1, 1]), poly(&f2, &[1, 1, 1])],
        )
        .unwrap();
        assert_eq!(lifted, vec![poly(&z4, &[3, 1]), poly(&z4, &[1, 1, 1])]);

        // roots of a^6 = 1 mod 49, found by exhaustive search and matched by residue
        let z49 = zmod(7, 2);
        let f7 = zmod(7, 1);
        let roots: Vec<i64> = (1..49i64).filter(|a| (a * a % 49).pow(3) % 49 == 1).collect();
        assert_eq!(roots.len(), 6);
        let bars: Vec<i64> = vec![1, 3, 2, 6, 4, 5];
        let factors_bar: Vec<Polynomial> = bars.iter().map(|&b| poly(&f7, &[-b, 1])).collect();
        let lifted =
            hensel_lift_factorization(&poly(&z49, &[-1, 0, 0, 0, 0, 0, 1]), &factors_bar).unwrap();
        let expected: Vec<Polynomial> = bars
            .iter()
            .map(|&b| {
                let root = roots.iter().find(|&&a| a % 7 == b).unwrap();
                poly(&z49, &[-root, 1])
            })
            .collect();
        assert_eq!(lifted, expected);

        let single = poly(&z49, &[3, 1, 1]);
        assert_eq!(
            hensel_lift_factorization(&single, &[single.bar_reduce()]).unwrap(),
            vec![single.clone()]
        );
        assert_eq!(
            hensel_lift_factorization(&single, &[poly(&f7, &[1, 1])]).unwrap_err(),
            Error::ProductMismatch
        );
        let sq = poly(&z4, &[1, 0, 1]);
        assert_eq!(
            hensel_lift_factorization(&sq, &[poly(&f2, &[1, 1]), poly(&f2, &[1, 1])]).unwrap_err(),
            Error::NotCoprime
        );
    }

    #[test]
    fn ambient_reduction() {
        let z4 = zmod(2, 2);
        let amb = Ambient::new(&z4, 3, z4.from_int(-1)).unwrap();
        // x^3 = -1
        assert_eq!(amb.pow(&Polynomial::x(&z4), 3), poly(&z4, &[-1]));
        assert_eq!(amb.shift(&poly(&z4, &[1, 2, 3])), poly(&z4, &[-3, 1, 2]));
        assert_eq!(Ambient::new(&z4, 3, Elem(2)).unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn irreducibility() {
        let f2 = zmod(2, 1);
        assert!(poly(&f2, &[1, 1, 1]).is_irreducible());
        assert!(!poly(&f2, &[1, 0, 1]).is_irreducible());
        assert!(poly(&f2, &[1, 0, 1, 0, 0, 1]).is_irreducible());
        assert!(!poly(&f2, &[1, 1, 1, 1, 1, 1]).is_irreducible());
        let f3 = zmod(3, 1);
        assert!(poly(&f3, &[1, 0, 1]).is_irreducible());
        // large-field path: x^2 - 3 over F_17 (3 is a non-residue)
        let f65521 = zmod(65521, 1);
        assert!(!poly(&f65521, &[-4, 0, 1]).is_irreducible());
        assert!(poly(&f65521, &[-17, 0, 1]).is_irreducible()
            == (1..65521u64).all(|a| a * a % 65521 != 17));
    }

    #[test]
    fn display_form() {
        let z49 = zmod(7, 2);
        assert_eq!(poly(&z49, &[41, 0, 3]).to_string(), "3*x^2 + 41");
        assert_eq!(Polynomial::zero(&z49).to_string(), "0");
    }
}
