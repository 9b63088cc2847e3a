use std::collections::BTreeSet;
use std::sync::Arc;

use chaincodes::code::{transport_poly, transport_scalar};
use chaincodes::oracle::{brute_dual, expand, VectorCode};
use chaincodes::{
    lambda_transport, primitive_idempotent_set, ConstacyclicCode, Elem, IdempotentSet, Polynomial, RingSpec,
    SelfDuality,
};
use num_bigint::BigUint;

fn set(ring: &RingSpec, n: usize, lambda: Elem) -> Arc<IdempotentSet> {
    Arc::new(primitive_idempotent_set(ring, n, lambda).unwrap())
}

fn all_codes(set: &Arc<IdempotentSet>) -> Vec<ConstacyclicCode> {
    let t = set.ring().t();
    let mut out = Vec::new();
    let mut s = vec![0u32; set.len()];
    loop {
        out.push(ConstacyclicCode::from_exponents(Arc::clone(set), s.clone()).unwrap());
        let Some(pos) = s.iter().position(|&v| v < t) else {
            return out;
        };
        s[pos] += 1;
        s[..pos].iter_mut().for_each(|v| *v = 0);
    }
}

fn all_vectors(ring: &RingSpec, n: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                ring.elements().map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

fn small_sets() -> Vec<Arc<IdempotentSet>> {
    let z4 = RingSpec::integers_mod(2, 2).unwrap();
    let z9 = RingSpec::integers_mod(3, 2).unwrap();
    let z8 = RingSpec::integers_mod(2, 3).unwrap();
    let gr = RingSpec::new(2, 2, 2, None).unwrap();
    vec![
        set(&z4, 3, Elem::ONE),
        set(&z4, 3, z4.from_int(-1)),
        set(&z9, 2, Elem::ONE),
        set(&z9, 2, z9.from_int(4)),
        set(&z9, 4, z9.from_int(-1)),
        set(&z8, 3, z8.from_int(5)),
        set(&gr, 3, Elem::ONE),
    ]
}

#[test]
fn membership_agrees_with_expansion() {
    for s in small_sets() {
        let vectors = all_vectors(s.ring(), s.n());
        for code in all_codes(&s) {
            let words = expand(&code).unwrap();
            for v in &vectors {
                assert_eq!(code.contains(v).unwrap(), words.contains(v), "{:?}", code.exponents());
            }
        }
    }
}

#[test]
fn generator_and_theta_forms_agree() {
    for s in small_sets() {
        let ring = s.ring().clone();
        for code in all_codes(&s) {
            let gens: Vec<Polynomial> = code
                .theta_groups()
                .into_iter()
                .map(|(r, theta)| theta.scale(ring.gamma_pow(r)))
                .collect();
            assert_eq!(ConstacyclicCode::from_generators(Arc::clone(&s), &gens).unwrap(), code);
            let w = code.generator_w();
            assert_eq!(ConstacyclicCode::from_generators(Arc::clone(&s), &[w]).unwrap(), code);
            let rows = VectorCode::span(&ring, s.n(), s.lambda(), &code.generator_matrix()).unwrap();
            assert!(rows.same_words(&expand(&code).unwrap()));
        }
    }
}

#[test]
fn annihilator_and_quotient() {
    for s in small_sets() {
        let ring = s.ring().clone();
        let amb = s.ambient();
        let space = BigUint::from(ring.size()).pow(s.n() as u32);
        let vectors = all_vectors(&ring, s.n());
        for code in all_codes(&s) {
            let ann = code.annihilator();
            assert!(amb.mul(&code.generator_w(), &ann.generator_w()).is_zero());
            assert_eq!(code.cardinality() * ann.cardinality(), space);

            if s.lambda_squared_is_one() {
                let dual_words = expand(&code.dual().unwrap()).unwrap();
                let starred: BTreeSet<Vec<Elem>> = expand(&ann)
                    .unwrap()
                    .words()
                    .map(|v| amb.to_vector(&amb.star(&Polynomial::new(&ring, v))))
                    .collect();
                let dual: BTreeSet<Vec<Elem>> = dual_words.words().collect();
                assert_eq!(starred, dual);
            }

            let words = expand(&code).unwrap();
            for j in 0..=ring.t() {
                let q = code.quotient_by_gamma(j).unwrap();
                let g = ring.gamma_pow(j);
                for v in &vectors {
                    let scaled: Vec<Elem> = v.iter().map(|&a| ring.mul(g, a)).collect();
                    assert_eq!(q.contains(v).unwrap(), words.contains(&scaled));
                }
            }
        }
    }
}

#[test]
fn classification_matches_brute_force() {
    for s in small_sets() {
        for code in all_codes(&s) {
            let words = expand(&code).unwrap();
            let dual = brute_dual(&words, chaincodes::Execution::Sequential).unwrap();
            let orthogonal = words.words().all(|w| dual.contains(&w));
            let verdict = code.classify_self();
            assert_eq!(verdict.is_self_orthogonal(), orthogonal, "{:?}", code.exponents());
            assert_eq!(verdict.is_self_dual(), orthogonal && dual.len() == words.len());
            if verdict == SelfDuality::TrivialSelfDual {
                assert!(code.exponents().iter().all(|&v| 2 * v == s.ring().t()));
            }
        }
    }
}

#[test]
fn transport_on_z9() {
    let z9 = RingSpec::integers_mod(3, 2).unwrap();
    let cyclic = set(&z9, 2, Elem::ONE);
    for lambda in [4, 7, 1] {
        let lambda = z9.from_int(lambda);
        let a = transport_scalar(&z9, 2, Elem::ONE, lambda).unwrap();
        let a_inv = z9.inv(a).unwrap();
        for code in all_codes(&cyclic) {
            let moved = lambda_transport(&code, lambda).unwrap();
            assert_eq!(moved.cardinality(), code.cardinality());
            let image: BTreeSet<Vec<Elem>> = expand(&code)
                .unwrap()
                .words()
                .map(|v| transport_poly(&Polynomial::new(&z9, v), a).to_vector(2))
                .collect();
            let moved_words: BTreeSet<Vec<Elem>> = expand(&moved).unwrap().words().collect();
            assert_eq!(image, moved_words);

            // duals correspond under the inverse twist
            let d0: BTreeSet<Vec<Elem>> = brute_dual(&expand(&code).unwrap(), chaincodes::Execution::Sequential)
                .unwrap()
                .words()
                .map(|v| transport_poly(&Polynomial::new(&z9, v), a_inv).to_vector(2))
                .collect();
            let d1: BTreeSet<Vec<Elem>> = expand(&moved.dual().unwrap()).unwrap().words().collect();
            assert_eq!(d0, d1);
        }
    }
}

#[test]
fn json_dump() {
    let gr = RingSpec::new(2, 2, 2, None).unwrap();
    let s = set(&gr, 3, Elem::ONE);
    let code = ConstacyclicCode::from_exponents(Arc::clone(&s), vec![1, 0, 2]).unwrap();
    let v = serde_json::to_value(code.dump()).unwrap();
    assert_eq!(v["ring"], "GR(2,2,2;Y^2+Y+1)");
    assert_eq!(v["lambda"], serde_json::json!([1, 0]));
    assert_eq!(v["exponents"], serde_json::json!([1, 0, 2]));
    assert_eq!(v["cardinality"], code.cardinality().to_string());
    assert_eq!(code.cardinality(), BigUint::from(4u32).pow(3));
}
