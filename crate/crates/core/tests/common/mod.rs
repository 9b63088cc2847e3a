//! Randomized invariant suites shared by the `properties` and `acceptance`
//! targets. Each suite runs `CASES` deterministic cases and returns the
//! first minimized counterexample as a string.

#![allow(dead_code)]

use chaincodes::polynomial::{hensel_lift_factorization, hensel_lift_pair, xgcd_field};
use chaincodes::{primitive_idempotent_set, Ambient, Elem, Polynomial, RingSpec};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn params(primes: &'static [u64], ts: std::ops::RangeInclusive<u32>, rs: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (u64, u32, usize)> {
    (prop::sample::select(primes), ts, rs)
}

fn ring(p: u64, t: u32, r: usize) -> RingSpec {
    RingSpec::new(p, t, r, None).expect("valid parameters")
}

/// A unit `lift(c) + gamma b` with `c` a nonzero residue.
fn unit(ring: &RingSpec, c: u64, b: u64) -> Elem {
    let abar = ring.residue_field().elem(1 + c % (ring.q() - 1)).unwrap();
    let low = ring.lift_residue(abar);
    ring.add(low, ring.mul(ring.gamma(), ring.elem(b % ring.size()).unwrap()))
}

fn poly(ring: &RingSpec, idx: &[u64]) -> Polynomial {
    let c = idx.iter().map(|&i| ring.elem(i % ring.size()).unwrap()).collect();
    Polynomial::new(ring, c)
}

fn monic(ring: &RingSpec, idx: &[u64]) -> Polynomial {
    let mut c: Vec<Elem> = idx.iter().map(|&i| ring.elem(i % ring.size()).unwrap()).collect();
    c.push(Elem::ONE);
    Polynomial::new(ring, c)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// `sum e_i = 1`, `e_i^2 = e_i`, `e_i e_j = 0` for random rings, lengths
/// and unit shifts.
pub fn idempotent_completeness() -> Result<(), String> {
    let strat = (params(&[2, 3, 5, 7], 1..=3, 1..=2), 1usize..=12, any::<u64>(), any::<u64>());
    finish(runner().run(&strat, |((p, t, r), n, c, b)| {
        prop_assume!(gcd(n as u64, p) == 1);
        let ring = ring(p, t, r);
        let lambda = unit(&ring, c, b);
        let set = primitive_idempotent_set(&ring, n, lambda).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let amb = set.ambient();
        let es = set.idempotents();
        let sum = es.iter().fold(Polynomial::zero(&ring), |acc, e| acc.add(e));
        check(amb.reduce(&sum) == Polynomial::one(&ring), || format!("sum != 1 for {ring} n={n}"))?;
        for (i, e) in es.iter().enumerate() {
            check(!e.is_zero() && amb.mul(e, e) == *e, || format!("e_{i} not idempotent"))?;
            for f in &es[i + 1..] {
                check(amb.mul(e, f).is_zero(), || format!("e_{i} not orthogonal"))?;
            }
        }
        check(es.len() == set.factors().len(), || "count mismatch".into())
    }))
}

/// Reciprocal laws: the involution `f(x) -> f(x^{-1})` is multiplicative,
/// degree-sensitive reversal is multiplicative when leading coefficients
/// do not annihilate, and fixed-width reversal picks up `x^{n-1}`.
pub fn reciprocal_multiplicative() -> Result<(), String> {
    let strat = (
        params(&[2, 3, 5, 7], 1..=3, 1..=2),
        1usize..=10,
        any::<u64>(),
        any::<u64>(),
        prop::collection::vec(any::<u64>(), 10),
        prop::collection::vec(any::<u64>(), 10),
        0usize..=9,
    );
    finish(runner().run(&strat, |((p, t, r), n, c, b, fv, gv, split)| {
        let ring = ring(p, t, r);
        let amb = Ambient::new(&ring, n, unit(&ring, c, b)).unwrap();
        let inv = amb.inverse_ambient();
        let f = poly(&ring, &fv[..n]);
        let g = poly(&ring, &gv[..n]);
        let lhs = amb.star(&amb.mul(&f, &g));
        let rhs = inv.mul(&amb.star(&f), &amb.star(&g));
        check(lhs == rhs, || format!("star not multiplicative over {ring} n={n}"))?;
        check(inv.star(&amb.star(&f)) == amb.reduce(&f), || "star not an involution".into())?;

        // deg f + deg g <= n - 1
        let df = split % n;
        let f = poly(&ring, &fv[..=df]);
        let g = poly(&ring, &gv[..n - df]);
        let fg = f.mul(&g);
        let exact = match (f.degree(), g.degree(), fg.degree()) {
            (Some(a), Some(b), Some(c)) => a + b == c,
            _ => false,
        };
        if exact {
            check(fg.reversed() == f.reversed().mul(&g.reversed()), || "reversal not multiplicative".into())?;
        }
        let fixed = f.reciprocal(n).unwrap().mul(&g.reciprocal(n).unwrap());
        check(fixed == fg.reciprocal(n).unwrap().shift(n - 1), || "fixed-width relation".into())?;
        check(f.reciprocal(n).unwrap().reciprocal(n).unwrap() == f, || "fixed-width not involutive".into())
    }))
}

/// Hensel lifting of random coprime monic residue factorizations over
/// `Z_{p^t}`, `p in {2, 3, 7}`, `t in {1, 2, 3}`.
pub fn hensel_round_trip() -> Result<(), String> {
    let strat = (
        params(&[2, 3, 7], 1..=3, 1..=1),
        prop::collection::vec(any::<u64>(), 1..=4),
        prop::collection::vec(any::<u64>(), 1..=4),
        prop::collection::vec(any::<u64>(), 8),
    );
    finish(runner().run(&strat, |((p, t, r), gv, hv, noise)| {
        let ring = ring(p, t, r);
        let field = ring.residue_field();
        let g_bar = monic(&field, &gv);
        let h_bar = monic(&field, &hv);
        let (d, _, _) = xgcd_field(&g_bar, &h_bar).unwrap();
        prop_assume!(d == Polynomial::one(&field));
        let base = g_bar.mul(&h_bar).lift_to(&ring);
        let deg = base.degree().unwrap();
        let perturb = poly(&ring, &noise[..deg]).scale(ring.gamma());
        let f = base.add(&perturb);
        let lifted = hensel_lift_pair(&f, &g_bar, &h_bar).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(lifted.g.mul(&lifted.h) == f, || format!("g h != f over {ring}"))?;
        check(lifted.g.bar_reduce() == g_bar && lifted.h.bar_reduce() == h_bar, || "residues changed".into())?;
        check(lifted.g.is_monic() && lifted.h.is_monic(), || "not monic".into())?;
        let bez = lifted.s.mul(&lifted.g).add(&lifted.t.mul(&lifted.h));
        check(bez == Polynomial::one(&ring), || "Bezout identity".into())?;
        let factors = hensel_lift_factorization(&f, &[g_bar.clone(), h_bar.clone()])
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(factors[0].mul(&factors[1]) == f, || "multi-factor product".into())?;
        check(factors[0] == lifted.g && factors[1] == lifted.h, || "lift not unique".into())
    }))
}

/// Valuation and unit laws on random Galois-ring elements.
pub fn valuation_laws() -> Result<(), String> {
    let strat = (params(&[2, 3, 5, 7], 1..=3, 1..=3), any::<u64>(), any::<u64>());
    finish(runner().run(&strat, |((p, t, r), a, b)| {
        let ring = ring(p, t, r);
        let a = ring.elem(a % ring.size()).unwrap();
        let b = ring.elem(b % ring.size()).unwrap();
        let (va, vb) = (ring.val(a), ring.val(b));
        check(ring.val(ring.mul(a, b)) == (va + vb).min(t), || format!("val(ab) in {ring}"))?;
        check(ring.val(ring.add(a, b)) >= va.min(vb), || "val(a+b)".into())?;
        check(ring.is_unit(a) == (va == 0), || "unit iff val 0".into())?;
        check(
            ring.residue(ring.mul(a, b)) == ring.residue_field().mul(ring.residue(a), ring.residue(b)),
            || "residue not multiplicative".into(),
        )?;
        if va < t {
            let u = ring.div_gamma_pow(a, va).unwrap();
            check(ring.is_unit(u) && ring.mul(ring.gamma_pow(va), u) == a, || "a = gamma^v u".into())?;
        }
        if va == 0 {
            check(ring.mul(a, ring.inv(a).unwrap()) == Elem::ONE, || "inverse".into())?;
        } else {
            check(ring.inv(a).is_err(), || "non-unit inverted".into())?;
        }
        Ok(())
    }))
}

pub type Suite = fn() -> Result<(), String>;

pub const SUITES: [(&str, Suite); 4] = [
    ("idempotent completeness/orthogonality", idempotent_completeness),
    ("reciprocal multiplicativity", reciprocal_multiplicative),
    ("Hensel round trips", hensel_round_trip),
    ("valuation laws", valuation_laws),
];
