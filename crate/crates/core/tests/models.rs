use popswitch::jw::{check_jw_properties, jones_wenzl, jw_solve_by_uniqueness};
use popswitch::karoubi::{check_direct_sum_hypotheses, decompose_jw, find_isomorphism, IdempotentObject};
use popswitch::otl::{evaluate, iota, lift, Chirality, OrElement, Signature};
use popswitch::qarith::{delta, quantum_int, RatFunc};
use popswitch::tldiag::{Element, Matching};
use proptest::prelude::*;

const CHIRALITIES: [Chirality; 2] = [Chirality::Standard, Chirality::Mirrored];

fn qint(n: usize) -> RatFunc {
    RatFunc::from_poly(quantum_int(n as u32))
}

#[test]
fn jw_properties_and_oracle() {
    for n in 1..=6 {
        let p = jones_wenzl(n).unwrap().element;
        assert!(check_jw_properties(&p).unwrap().all_pass(), "n={n}");
        assert_eq!(p, jw_solve_by_uniqueness(n).unwrap(), "n={n}");
        assert_eq!(p.close_trace().unwrap(), qint(n + 1), "n={n}");
        assert_eq!(p.vertical_flip(), p, "n={n}");
    }
}

#[test]
fn jw_absorbs_smaller_projector() {
    for n in 2..=6 {
        let p = jones_wenzl(n).unwrap().element;
        let smaller = jones_wenzl(n - 1).unwrap().element.tensor(&Element::identity(1));
        assert!(Element::product_equals(&p, &smaller, &p).unwrap(), "n={n}");
        assert!(Element::product_equals(&smaller, &p, &p).unwrap(), "n={n}");
    }
}

#[test]
fn bubble_bursting_at_every_site() {
    for n in 2..=5 {
        for k in 0..n - 1 {
            let cap = lift(&Element::from_diagram(Matching::cap(n, k).unwrap()));
            let cup = lift(&Element::from_diagram(Matching::cup(n, k).unwrap()));
            let want = lift(&Element::identity(n - 2)).scale(&RatFunc::from_poly(delta()));
            for c in CHIRALITIES {
                assert_eq!(cap.or_compose(&cup, c).unwrap(), want, "n={n} k={k}");
            }
        }
    }
}

#[test]
fn signatures_partition_identity() {
    for n in 0..=6 {
        assert_eq!(popswitch::cli::iota_partition_counterexample(n).unwrap(), None, "n={n}");
    }
}

#[test]
fn lifted_jw_idempotent_and_uncappable() {
    for n in 1..=5 {
        let p = lift(&jones_wenzl(n).unwrap().element);
        for c in CHIRALITIES {
            assert!(OrElement::or_product_equals(&p, &p, &p, c).unwrap(), "n={n}");
            for k in 0..n.saturating_sub(1) {
                let cap = lift(&Element::from_diagram(Matching::cap(n, k).unwrap()));
                assert!(cap.or_compose(&p, c).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn lifted_jw_closure() {
    for n in 1..=6 {
        let p = lift(&jones_wenzl(n).unwrap().element);
        for c in CHIRALITIES {
            assert_eq!(p.or_close_trace(c).unwrap(), qint(n + 1), "n={n}");
        }
    }
}

#[test]
fn single_oriented_cap_does_not_annihilate_lifted_p2() {
    // Only the sum over orientations of a cap kills p_2.
    let p = lift(&jones_wenzl(2).unwrap().element);
    let cap: OrElement = OrElement::from_diagram("OTL(2,0){(b0>b1)}".parse().unwrap());
    assert!(!cap.or_compose(&p, Chirality::Standard).unwrap().is_zero());
}

#[test]
fn free_model_has_extra_endomorphisms() {
    // ι_{^v} and the oriented cup-cap through the same boundary are
    // independent diagrams but have proportional evaluations.
    let straight = iota(&"^v".parse().unwrap());
    let cupcap: OrElement = OrElement::from_diagram("OTL(2,2){(b0>b1),(t1>t0)}".parse().unwrap());
    let (a, b) = (evaluate(&straight, Chirality::Standard), evaluate(&cupcap, Chirality::Standard));
    let s: Signature = "^v".parse().unwrap();
    let ratio = a.entry(&s, &s) / b.entry(&s, &s);
    assert_ne!(straight, cupcap.scale(&ratio));
    assert_eq!(a, b.scale(&ratio));
}

#[test]
fn decompositions_revalidate() {
    for n in 1..=4 {
        for c in CHIRALITIES {
            let d = decompose_jw(n, c).unwrap();
            assert_eq!(d.signatures().len(), n + 1);
            let cert = d.certificate();
            assert!(cert.validate().unwrap());
            let total = cert.summands().iter().fold(RatFunc::zero(), |acc, q| &acc + &q.closure());
            assert_eq!(total, qint(n + 1));
            assert_eq!(cert.p().closure(), qint(n + 1));
            assert!(d.to_string().ends_with(&format!("VERIFIED n={n} summands={}", n + 1)));
        }
    }
}

#[test]
fn decompositions_cover_each_charge_once() {
    for n in 1..=4 {
        let d = decompose_jw(n, Chirality::Standard).unwrap();
        let mut charges: Vec<i64> = d.signatures().iter().map(|s| s.ups() as i64 - s.downs() as i64).collect();
        charges.sort_unstable();
        let want: Vec<i64> = (0..=n as i64).map(|k| 2 * k - n as i64).collect();
        assert_eq!(charges, want);
    }
}

#[test]
fn dir_sum_instance() {
    let c = Chirality::Standard;
    let id2 = IdempotentObject::lifted(&Element::identity(2), c).unwrap();
    let parts = [
        IdempotentObject::lifted(&jones_wenzl(2).unwrap().element, c).unwrap(),
        IdempotentObject::lifted(&popswitch::cli::half_cup_cap(), c).unwrap(),
    ];
    assert!(check_direct_sum_hypotheses(&id2, &parts).unwrap());
    let cert = find_isomorphism(&id2, &parts).unwrap().unwrap();
    assert!(cert.validate().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lift_is_a_functor(seed in any::<u64>()) {
        prop_assert_eq!(popswitch::cli::lift_functor_counterexample(4, seed).unwrap(), None);
    }

    #[test]
    fn evaluation_is_a_functor(i in 0usize..=3, m in 0usize..=3, j in 0usize..=3, picks in any::<[usize; 2]>(), mirrored in any::<bool>()) {
        prop_assume!((i + m) % 2 == 0 && (m + j) % 2 == 0);
        let c = if mirrored { Chirality::Mirrored } else { Chirality::Standard };
        let fs = popswitch::otl::enumerate_oriented(m, j);
        let gs = popswitch::otl::enumerate_oriented(i, m);
        let f = OrElement::from_diagram(fs[picks[0] % fs.len()].clone());
        let g = OrElement::from_diagram(gs[picks[1] % gs.len()].clone());
        let lhs = evaluate(&f.or_compose(&g, c).unwrap(), c);
        let rhs = evaluate(&f, c).compose(&evaluate(&g, c)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orthogonal_parts_give_degenerate_certificates(n in 1usize..=3, mask in any::<u8>()) {
        // Split the signatures of length n into two nonempty groups.
        let sigs = Signature::all(n);
        let (a, b): (Vec<_>, Vec<_>) = sigs.iter().enumerate().partition(|(k, _)| mask >> (k % 8) & 1 == 1);
        prop_assume!(!a.is_empty() && !b.is_empty());
        let sum = |xs: &[(usize, &Signature)]| xs.iter().fold(OrElement::zero(n, n), |acc, (_, s)| acc.add(&iota(s)).unwrap());
        let c = Chirality::Standard;
        let parts = [IdempotentObject::new(sum(&a), c).unwrap(), IdempotentObject::new(sum(&b), c).unwrap()];
        let p = IdempotentObject::lifted(&Element::identity(n), c).unwrap();
        prop_assert!(check_direct_sum_hypotheses(&p, &parts).unwrap());
        let cert = find_isomorphism(&p, &parts).unwrap().unwrap();
        prop_assert_eq!(cert.u()[0].clone(), parts[0].idem().clone());
        prop_assert_eq!(cert.v()[1].clone(), parts[1].idem().clone());
    }

    #[test]
    fn certificates_respect_closure(n in 1usize..=3, mask in any::<u8>()) {
        let sigs: Vec<Signature> = Signature::all(n).into_iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, s)| s).collect();
        prop_assume!(!sigs.is_empty());
        let c = Chirality::Standard;
        let p = IdempotentObject::lifted(&jones_wenzl(n).unwrap().element, c).unwrap();
        let parts: Vec<_> = sigs.iter().map(|s| IdempotentObject::signature(s, c)).collect();
        let total = parts.iter().fold(RatFunc::zero(), |acc, q| &acc + &q.closure());
        // The closure sum is [n+1] exactly when the charges are n, n-2, ..., -n.
        let found = find_isomorphism(&p, &parts).unwrap();
        if let Some(cert) = &found {
            prop_assert!(cert.validate().unwrap());
        }
        prop_assert_eq!(found.is_some(), total == qint(n + 1));
    }
}

