//! Galois rings `GR(p^t, r) = Z_{p^t}[Y]/<h(Y)>`, the finite chain rings
//! every other module works over.
//!
//! Elements are packed into a single [`Elem`] index: the coefficient vector
//! `(c_0, ..., c_{r-1})` with `0 <= c_k < p^t` becomes `sum c_k (p^t)^k`.
//! Packing keeps elements `Copy` and makes brute-force enumeration a plain
//! integer range. The maximal ideal is always generated by `p`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Upper bound on `|R| = p^{tr}`.
pub const MAX_RING_SIZE: u64 = 1 << 32;

const MAX_DEGREE: usize = 32;

/// Packed ring element. Only meaningful together with the [`RingSpec`] that
/// produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Position of the element in the canonical enumeration `0..|R|`.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct RingData {
    p: u64,
    t: u32,
    r: usize,
    pt: u64,
    /// Low coefficients of the monic modulus; `h = Y^r + sum h[k] Y^k`.
    h: Vec<u64>,
    size: u64,
    q: u64,
    /// `p^j` for `j = 0..=t`.
    gamma_powers: Vec<u64>,
    residue: Option<RingSpec>,
}

/// Validated description of a Galois ring. Cheap to clone.
#[derive(Clone)]
pub struct RingSpec(Arc<RingData>);

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.t == other.0.t
                && self.0.r == other.0.r
                && self.0.h == other.0.h)
    }
}

impl Eq for RingSpec {}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl RingSpec {
    /// Builds `GR(p^t, r)`.
    ///
    /// `h` lists the coefficients of the monic modulus little-endian,
    /// including the leading 1 (so `Y^2+Y+1` is `[1, 1, 1]`). When omitted
    /// and `r > 1`, the smallest monic irreducible of degree `r` over `F_p`
    /// (ordered by the integer `sum h_k p^k`) is used.
    pub fn new(p: u64, t: u32, r: usize, h: Option<&[u64]>) -> Result<RingSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 || r == 0 {
            return Err(Error::InvalidInput("t and r must be at least 1".into()));
        }
        if r > MAX_DEGREE {
            return Err(Error::RingTooLarge(format!("r = {r}")));
        }
        let pt = checked_pow(p, t as u64)
            .filter(|&v| v <= MAX_RING_SIZE)
            .ok_or_else(|| Error::RingTooLarge(format!("p^t = {p}^{t}")))?;
        let size = checked_pow(pt, r as u64)
            .filter(|&v| v <= MAX_RING_SIZE)
            .ok_or_else(|| Error::RingTooLarge(format!("p^(tr) = {p}^{}", t as usize * r)))?;
        let low = match h {
            Some(h) => {
                if h.is_empty() || h.len() - 1 != r {
                    return Err(Error::DegreeMismatch {
                        expected: r,
                        found: h.len().saturating_sub(1),
                    });
                }
                if h[r] % pt != 1 {
                    return Err(Error::InvalidInput("modulus must be monic".into()));
                }
                let low: Vec<u64> = h[..r].iter().map(|c| c % pt).collect();
                if r > 1 {
                    let bar: Vec<u64> = h.iter().map(|c| c % p).collect();
                    if !irreducible_mod_p(p, &bar)? {
                        return Err(Error::ReducibleModulus(p));
                    }
                } else if low[0] != 0 {
                    return Err(Error::InvalidInput("degree-one modulus must be Y".into()));
                }
                low
            }
            None if r == 1 => vec![0],
            None => default_modulus(p, r)?,
        };
        let mut gamma_powers = Vec::with_capacity(t as usize + 1);
        let mut g = 1u64;
        for _ in 0..=t {
            gamma_powers.push(g);
            g = g.saturating_mul(p);
        }
        let residue = if t == 1 {
            None
        } else {
            let mut hbar: Vec<u64> = low.iter().map(|c| c % p).collect();
            hbar.push(1);
            Some(RingSpec::new(p, 1, r, Some(&hbar))?)
        };
        Ok(RingSpec(Arc::new(RingData {
            p,
            t,
            r,
            pt,
            h: low,
            size,
            q: checked_pow(p, r as u64).expect("q <= |R|"),
            gamma_powers,
            residue,
        })))
    }

    /// `Z_{p^t}`.
    pub fn integers_mod(p: u64, t: u32) -> Result<RingSpec> {
        RingSpec::new(p, t, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Nilpotency index of `gamma = p`.
    pub fn t(&self) -> u32 {
        self.0.t
    }

    /// Residue degree.
    pub fn r(&self) -> usize {
        self.0.r
    }

    /// Residue field size `p^r`.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `|R| = p^{tr}`.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Characteristic `p^t`.
    pub fn characteristic(&self) -> u64 {
        self.0.pt
    }

    /// Full monic modulus, little-endian.
    pub fn modulus(&self) -> Vec<u64> {
        let mut h = self.0.h.clone();
        h.push(1);
        h
    }

    pub fn is_field(&self) -> bool {
        self.0.t == 1
    }

    /// The residue field `R / pR` (the ring itself when `t = 1`).
    pub fn residue_field(&self) -> RingSpec {
        self.0.residue.clone().unwrap_or_else(|| self.clone())
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The uniformizer `gamma = p`, or zero when `t = 1`.
    pub fn gamma(&self) -> Elem {
        self.gamma_pow(1)
    }

    /// `gamma^j`, zero for `j >= t`.
    pub fn gamma_pow(&self, j: u32) -> Elem {
        if j >= self.0.t {
            Elem::ZERO
        } else {
            Elem(self.0.gamma_powers[j as usize])
        }
    }

    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.pt as i64) as u64)
    }

    /// Element with the given `Y`-coefficients (little-endian), each reduced
    /// into `[0, p^t)`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.r {
            return Err(Error::LengthMismatch {
                expected: self.0.r,
                found: coeffs.len(),
            });
        }
        let mut buf = [0u64; MAX_DEGREE];
        for (b, c) in buf.iter_mut().zip(coeffs) {
            *b = c % self.0.pt;
        }
        Ok(self.pack(&buf))
    }

    /// Element at position `index` of the canonical enumeration.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index >= self.0.size {
            return Err(Error::InvalidInput(format!(
                "index {index} outside ring of size {}",
                self.0.size
            )));
        }
        Ok(Elem(index))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        self.unpack(a)[..self.0.r].to_vec()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size).map(Elem)
    }

    fn unpack(&self, a: Elem) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        if self.0.r == 1 {
            out[0] = a.0;
        } else {
            let mut v = a.0;
            for c in out.iter_mut().take(self.0.r) {
                *c = v % self.0.pt;
                v /= self.0.pt;
            }
        }
        out
    }

    fn pack(&self, c: &[u64; MAX_DEGREE]) -> Elem {
        if self.0.r == 1 {
            return Elem(c[0]);
        }
        let mut v = 0u64;
        for k in (0..self.0.r).rev() {
            v = v * self.0.pt + c[k];
        }
        Elem(v)
    }

    fn map_coeffs(&self, a: Elem, f: impl Fn(u64) -> u64) -> Elem {
        let mut c = self.unpack(a);
        for x in c.iter_mut().take(self.0.r) {
            *x = f(*x);
        }
        self.pack(&c)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let pt = self.0.pt;
        if self.0.r == 1 {
            return Elem((a.0 + b.0) % pt);
        }
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut c = [0u64; MAX_DEGREE];
        for k in 0..self.0.r {
            c[k] = (x[k] + y[k]) % pt;
        }
        self.pack(&c)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let pt = self.0.pt;
        self.map_coeffs(a, |c| (pt - c) % pt)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let pt = self.0.pt;
        if self.0.r == 1 {
            return Elem(((a.0 as u128 * b.0 as u128) % pt as u128) as u64);
        }
        let r = self.0.r;
        let (x, y) = (self.unpack(a), self.unpack(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                prod[i + j] = (prod[i + j] + x[i] * y[j] % pt) % pt;
            }
        }
        // Y^r = -sum h_k Y^k
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &hj) in self.0.h.iter().enumerate() {
                let sub = c * hj % pt;
                prod[k - r + j] = (prod[k - r + j] + pt - sub) % pt;
            }
        }
        let mut c = [0u64; MAX_DEGREE];
        c[..r].copy_from_slice(&prod[..r]);
        self.pack(&c)
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: Elem, k: u64) -> Elem {
        let pt = self.0.pt;
        let k = k % pt;
        self.map_coeffs(a, |c| ((c as u128 * k as u128) % pt as u128) as u64)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Largest `j <= t` with `a in gamma^j R`; `t` for zero.
    pub fn val(&self, a: Elem) -> u32 {
        if a.0 == 0 {
            return self.0.t;
        }
        let c = self.unpack(a);
        c[..self.0.r]
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| {
                let mut v = 0;
                let mut x = x;
                while x % self.0.p == 0 {
                    x /= self.0.p;
                    v += 1;
                }
                v
            })
            .min()
            .expect("nonzero element has a nonzero coefficient")
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.val(a) == 0
    }

    /// Multiplicative inverse: residue-field inversion lifted by the Newton
    /// step `x <- x(2 - ax)`.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        let field = self.residue_field();
        let abar = self.residue(a);
        let inv_bar = field.pow(abar, field.q() - 2);
        let mut x = self.lift_residue(inv_bar);
        let two = self.from_int(2);
        for _ in 0..=self.0.t {
            if self.mul(a, x) == Elem::ONE {
                return Ok(x);
            }
            x = self.mul(x, self.sub(two, self.mul(a, x)));
        }
        if self.mul(a, x) == Elem::ONE {
            Ok(x)
        } else {
            Err(Error::VerificationFailed("unit inverse did not converge".into()))
        }
    }

    /// The bar map `R -> F_q`.
    pub fn residue(&self, a: Elem) -> Elem {
        let field = self.residue_field();
        let p = self.0.p;
        let c = self.unpack(a);
        let mut out = [0u64; MAX_DEGREE];
        for k in 0..self.0.r {
            out[k] = c[k] % p;
        }
        field.pack(&out)
    }

    /// Canonical lift of a residue-field element (same integer coefficients).
    pub fn lift_residue(&self, abar: Elem) -> Elem {
        let field = self.residue_field();
        let c = field.unpack(abar);
        self.pack(&c)
    }

    /// `a / gamma^j` for `a in gamma^j R`, as the representative with
    /// coefficients in `[0, p^{t-j})`.
    pub fn div_gamma_pow(&self, a: Elem, j: u32) -> Result<Elem> {
        if j == 0 {
            return Ok(a);
        }
        if self.val(a) < j {
            return Err(Error::InvalidInput("element not divisible by gamma power".into()));
        }
        if j >= self.0.t {
            return Ok(Elem::ZERO);
        }
        let d = self.0.gamma_powers[j as usize];
        Ok(self.map_coeffs(a, |c| c / d))
    }

    /// Splits `a = low + gamma^k * high` with the coefficients of `low` in
    /// `[0, p^k)`.
    pub fn split_gamma(&self, a: Elem, k: u32) -> (Elem, Elem) {
        if k >= self.0.t {
            return (a, Elem::ZERO);
        }
        let d = self.0.gamma_powers[k as usize];
        (self.map_coeffs(a, |c| c % d), self.map_coeffs(a, |c| c / d))
    }

    /// Representatives of `R / gamma^k R`: elements whose coefficients all
    /// lie in `[0, p^k)`. There are `q^k` of them.
    pub fn coset_reps(&self, k: u32) -> Vec<Elem> {
        let k = k.min(self.0.t);
        let base = self.0.gamma_powers[k as usize];
        let count = checked_pow(base, self.0.r as u64).expect("bounded by |R|");
        (0..count)
            .map(|mut i| {
                let mut c = [0u64; MAX_DEGREE];
                for x in c.iter_mut().take(self.0.r) {
                    *x = i % base;
                    i /= base;
                }
                self.pack(&c)
            })
            .collect()
    }

    /// Wraps a packed element together with this ring.
    pub fn element(&self, a: Elem) -> RingElement {
        RingElement {
            ring: self.clone(),
            elem: a,
        }
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.0.r == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = (0..self.0.r)
            .rev()
            .filter(|&k| c[k] != 0)
            .map(|k| match (k, c[k]) {
                (0, v) => v.to_string(),
                (1, 1) => "Y".to_string(),
                (1, v) => format!("{v}Y"),
                (k, 1) => format!("Y^{k}"),
                (k, v) => format!("{v}Y^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            format!("({})", terms.join("+"))
        }
    }

    pub fn params(&self) -> RingParams {
        RingParams {
            p: self.0.p,
            t: self.0.t,
            r: self.0.r,
            h: self.modulus(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.modulus();
        let terms: Vec<String> = (0..h.len())
            .rev()
            .filter(|&k| h[k] != 0)
            .map(|k| match (k, h[k]) {
                (0, v) => v.to_string(),
                (1, 1) => "Y".to_string(),
                (1, v) => format!("{v}Y"),
                (k, 1) => format!("Y^{k}"),
                (k, v) => format!("{v}Y^{k}"),
            })
            .collect();
        write!(
            f,
            "GR({},{},{};{})",
            self.0.p,
            self.0.t,
            self.0.r,
            terms.join("+")
        )
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Parses the canonical form `GR(p,t,r;h)`, e.g. `GR(2,2,2;Y^2+Y+1)`.
    fn from_str(s: &str) -> Result<RingSpec> {
        let bad = || Error::InvalidInput(format!("cannot parse ring '{s}'"));
        let inner = s
            .trim()
            .strip_prefix("GR(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (nums, h) = inner.split_once(';').ok_or_else(bad)?;
        let nums: Vec<u64> = nums
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if nums.len() != 3 {
            return Err(bad());
        }
        let r = nums[2] as usize;
        let mut coeffs = vec![0u64; r + 1];
        for term in h.split('+').map(str::trim) {
            let (c, k) = match term.split_once('Y') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
                Some((c, e)) => {
                    let c = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                    let k = match e.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if e.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, k)
                }
            };
            if k > r {
                return Err(Error::DegreeMismatch { expected: r, found: k });
            }
            coeffs[k] += c;
        }
        RingSpec::new(nums[0], nums[1] as u32, r, Some(&coeffs))
    }
}

/// Serializable parameters of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingParams {
    pub p: u64,
    pub t: u32,
    pub r: usize,
    pub h: Vec<u64>,
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.params().serialize(s)
    }
}

/// A ring element that remembers its ring; arithmetic checks that both
/// operands live in the same ring.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: RingSpec,
    elem: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

impl RingElement {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.ring.coeffs(self.elem)
    }

    pub fn arith(&self, other: &RingElement, kind: ArithKind) -> Result<RingElement> {
        if self.ring != other.ring {
            return Err(Error::SpecMismatch);
        }
        let (a, b) = (self.elem, other.elem);
        let elem = match kind {
            ArithKind::Add => self.ring.add(a, b),
            ArithKind::Sub => self.ring.sub(a, b),
            ArithKind::Mul => self.ring.mul(a, b),
        };
        Ok(self.ring.element(elem))
    }

    pub fn gamma_val(&self) -> u32 {
        self.ring.val(self.elem)
    }

    pub fn inverse(&self) -> Result<RingElement> {
        Ok(self.ring.element(self.ring.inv(self.elem)?))
    }

    pub fn residue(&self) -> RingElement {
        self.ring.residue_field().element(self.ring.residue(self.elem))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ring.format_elem(self.elem), self.ring)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(self.elem))
    }
}

/// Irreducibility of a monic polynomial over the prime field `F_p`.
fn irreducible_mod_p(p: u64, coeffs: &[u64]) -> Result<bool> {
    let fp = RingSpec::integers_mod(p, 1)?;
    let f = Polynomial::new(&fp, coeffs.iter().map(|&c| Elem(c % p)).collect());
    Ok(f.is_irreducible())
}

fn default_modulus(p: u64, r: usize) -> Result<Vec<u64>> {
    let count = checked_pow(p, r as u64)
        .ok_or_else(|| Error::RingTooLarge(format!("p^r = {p}^{r}")))?;
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(r + 1);
        let mut i = idx;
        for _ in 0..r {
            coeffs.push(i % p);
            i /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && irreducible_mod_p(p, &coeffs)? {
            coeffs.pop();
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
