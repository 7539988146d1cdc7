use qcartan::pairs::*;
use qcartan::quiver::all_orientations;
use qcartan::weyl::{beta_sequence, parse_word};
use qcartan::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn datum(s: &str) -> CartanDatum {
    build_datum(s.parse().unwrap())
}

fn quiver(s: &str, xi: &[i64]) -> DynkinQuiver {
    DynkinQuiver::new(datum(s), xi.to_vec()).unwrap()
}

fn small_types() -> Vec<CartanType> {
    let mut v = CartanType::all_up_to(5);
    v.push("F4".parse().unwrap());
    v.push("G2".parse().unwrap());
    v.sort_by_key(|t| t.to_string());
    v.dedup();
    v
}

#[test]
fn b3_reduced_word() {
    let dt = datum("B3");
    let w = parse_word("1,2,3,1,2,3,1,2,3", 3).unwrap();
    let pm = pair_matrices(&dt, &w).unwrap();
    assert!(pm.is_skew());
    assert!(pm.check_compatible());
    assert!(pm.check_transposed());
    assert!(pm.check_skew_symmetrizable());
    assert_eq!(pm.product_diag(), vec![-4, -4, -2, -4, -4, -2]);
}

#[test]
fn trivial_cases() {
    let dt = datum("B3");
    let pm = pair_matrices(&dt, &[0, 1, 2]).unwrap();
    assert!(pm.index.je.is_empty());
    assert!(pm.b.iter().all(|r| r.is_empty()));
    assert_eq!(lambda_matrix(&dt, &[1]).unwrap(), vec![vec![0]]);
    assert!(pair_matrices(&dt, &[3]).is_err());
}

#[test]
fn readings_and_prefixes() {
    for ty in small_types() {
        let dt = build_datum(ty);
        for xi in all_orientations(&dt) {
            let q = DynkinQuiver::new(dt.clone(), xi).unwrap();
            let w = q.longest_word();
            for k in 1..=w.len() {
                let pm = pair_matrices(&dt, &w[..k]).unwrap();
                assert!(pm.check_compatible(), "{ty} {:?}", &w[..k]);
            }
        }
    }
}

#[test]
fn random_adapted_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ty in small_types() {
        let dt = build_datum(ty);
        let q = DynkinQuiver::new(dt.clone(), qcartan::quiver::random_heights(&dt, &mut rng)).unwrap();
        for _ in 0..10 {
            let len = rng.gen_range(1..=60);
            let w = q.random_adapted(len, &mut rng);
            let pm = pair_matrices(&dt, &w).unwrap();
            assert!(pm.check_compatible(), "{ty} {w:?}");
            assert!(pm.check_transposed());
            assert!(pm.check_skew_symmetrizable());
        }
    }
}

#[test]
fn gamma_forms_reindex() {
    for (ty, xi) in [("B3", vec![3, 2, 1]), ("G2", vec![1, 2]), ("F4", vec![4, 3, 2, 1])] {
        let q = quiver(ty, &xi);
        let t = Torus::for_quiver(&q);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut words = vec![q.longest_word()];
        words.push(q.random_adapted(40, &mut rng));
        if ty == "B3" {
            words.push(parse_word("1,2,3,1,2,3,1,2,3", 3).unwrap());
        }
        for w in words {
            let pm = pair_matrices(&q.datum, &w).unwrap();
            let gf = gamma_forms(&q, &t, &w).unwrap();
            assert_eq!(gf.lambda, pm.lambda, "{ty} {w:?}");
            assert_eq!(gf.b, pm.b, "{ty} {w:?}");
        }
    }
    let q = quiver("B3", &[3, 2, 1]);
    let t = Torus::for_quiver(&q);
    assert!(gamma_forms(&q, &t, &[2]).is_err());
}

#[test]
fn lambda_q_matches_reading() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ty in CartanType::all_up_to(5) {
        let dt = build_datum(ty);
        for _ in 0..3 {
            let q = DynkinQuiver::new(dt.clone(), qcartan::quiver::random_heights(&dt, &mut rng)).unwrap();
            let lq = lambda_q(&q).unwrap();
            let w = q.longest_word();
            assert_eq!(lq.matrix, lambda_matrix(&dt, &w).unwrap(), "{ty}");
            let lam = prefix_weights(&dt, &w);
            let idx = SequenceIndex::new(&w);
            for k in 0..w.len() {
                assert_eq!(lq.lambda[k], lam[k]);
                // lambda_{alpha^-} = lambda_alpha + alpha
                let prev = match idx.kminus[k] {
                    Some(j) => lq.lambda[j].clone(),
                    None => dt.varpi(w[k]),
                };
                let root_w = dt.to_weight_basis(&lq.roots[k]);
                assert_eq!(prev, lq.lambda[k].add(&root_w));
            }
        }
    }
}

#[test]
fn incomparable_orderings_agree() {
    let q = quiver("B3", &[3, 2, 1]);
    let dt = &q.datum;
    let lq = lambda_q(&q).unwrap();
    let hasse = qcartan::weyl::hasse_quiver(dt, &lq.residues).unwrap();
    let r = lq.roots.len();
    let mut seen = 0;
    for a in 0..r {
        for b in 0..r {
            if a != b && !hasse.leq_index(a, b) && !hasse.leq_index(b, a) {
                let (i, j) = (lq.residues[a], lq.residues[b]);
                let x = dt
                    .pair(&dt.varpi(i).sub(&lq.lambda[a]), &dt.varpi(j).add(&lq.lambda[b]))
                    .unwrap();
                assert_eq!(x, lq.matrix[a][b]);
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn torus_isomorphism() {
    for (ty, xi) in [("B3", vec![3, 2, 1]), ("G2", vec![1, 2]), ("F4", vec![4, 3, 2, 1])] {
        let q = quiver(ty, &xi);
        let t = Torus::for_quiver(&q);
        assert_eq!(qcartan::pairs::torus_iso_defect(&q, &t).unwrap(), None, "{ty}");
        let lq = lambda_q(&q).unwrap();
        assert!((0..lq.roots.len()).all(|k| lq.matrix[k][k] == 0));
    }
}

/// Random commutation moves on a reduced word.
fn shuffle_commuting(dt: &CartanDatum, w: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut w = w.to_vec();
    for _ in 0..200 {
        let k = rng.gen_range(0..w.len() - 1);
        if dt.c[w[k]][w[k + 1]] == 0 {
            w.swap(k, k + 1);
        }
    }
    w
}

#[test]
fn lambda_depends_on_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for ty in ["A3", "B3", "C4", "D4", "G2", "F4"] {
        let dt = datum(ty);
        let w0 = qcartan::weyl::longest_element_word(&dt);
        let keyed = |w: &[usize]| {
            let roots = beta_sequence(&dt, w).0;
            let m = lambda_matrix(&dt, w).unwrap();
            let mut out = std::collections::BTreeMap::new();
            for s in 0..w.len() {
                for t in 0..w.len() {
                    out.insert((roots[s].coords.clone(), roots[t].coords.clone()), m[s][t]);
                }
            }
            out
        };
        let base = keyed(&w0);
        for _ in 0..5 {
            let w = shuffle_commuting(&dt, &w0, &mut rng);
            assert_eq!(keyed(&w), base, "{ty} {w:?}");
        }
    }
}

#[test]
fn window_condition_harness() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let dt = datum("B2");
    assert!(satisfies_window_condition(&dt, &[0, 1, 0, 1, 0, 1, 0]));
    assert!(!satisfies_window_condition(&dt, &[0, 0]));
    assert!(conjecture_counterexamples(&dt, &[vec![1, 1]]).is_err());
    for ty in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let dt = datum(ty);
        let words: Vec<_> = (0..20)
            .map(|_| random_window_sequence(&dt, 24, &mut rng))
            .collect();
        assert!(words.iter().all(|w| satisfies_window_condition(&dt, w)));
        assert_eq!(conjecture_counterexamples(&dt, &words).unwrap(), Vec::<Vec<usize>>::new(), "{ty}");
    }
}
