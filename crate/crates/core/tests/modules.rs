//! Module-carrier machinery: Hom enumeration, duals, morphism
//! classification, spanning and independence, tensor quotients, kernels
//! and exactness.

use std::collections::BTreeSet;
use std::sync::Arc;
use tsys::finsys::{fin_boolean, supertropical_chain, FinSys};
use tsys::modsys::*;
use tsys::tensor::*;

fn boolean() -> Arc<FinSys> {
    Arc::new(fin_boolean())
}

fn st3() -> Arc<FinSys> {
    Arc::new(supertropical_chain(0))
}

#[test]
fn free_modules_validate() {
    for ground in [boolean(), st3()] {
        for k in 1..=2 {
            let m = free_module(&ground, k).unwrap();
            m.validate().unwrap();
            assert_eq!(m.n(), ground.n().pow(k as u32));
            assert_eq!(m.tangibles.len(), k * ground.tangibles.len());
        }
    }
}

#[test]
fn direct_sum_of_one_is_itself() {
    let g = boolean();
    let m = free_module(&g, 2).unwrap();
    let s = direct_sum(&[&m]).unwrap();
    assert_eq!(s.add, m.add);
    assert_eq!(s.tangibles, m.tangibles);
}

#[test]
fn hom_of_ground_with_itself_is_ground() {
    for ground in [boolean(), st3()] {
        let gm = ground_module(&ground);
        let hom = hom_module(&gm, &gm).unwrap();
        hom.module.validate().unwrap();
        // every hom is multiplication by its value at 1, so the carrier
        // matches the ground as a module
        assert_eq!(hom.module.n(), ground.n());
        let iso = find_isomorphism(&hom.module, &gm);
        assert!(iso.is_some(), "hom(A,A) is not isomorphic to A");
        // negation on the hom carrier is involutive
        for i in 0..hom.module.n() {
            assert_eq!(hom.module.ng(hom.module.ng(i)), i);
        }
    }
}

#[test]
fn hom_unique_negation_inherited() {
    // unique negation transfers from the target: tangible homs with a
    // quasi-zero sum are negatives of each other
    let ground = st3();
    let gm = ground_module(&ground);
    let hom = hom_module(&gm, &gm).unwrap();
    let qz = hom.module.quasi_zeros();
    for &f in &hom.module.tangibles {
        for &g in &hom.module.tangibles {
            if qz.contains(&hom.module.a(f, g)) {
                assert_eq!(g, hom.module.ng(f));
            }
        }
    }
}

#[test]
fn dual_of_free_modules() {
    let g = boolean();
    // rank 1: the pairing is onto
    let d = dual_system(&g, 1).unwrap();
    assert!(d.onto);
    // e_i* takes unit values on matching generators
    let d2 = dual_system(&g, 2).unwrap();
    assert!(d2.onto);
    let free = free_module(&g, 2).unwrap();
    let e1 = free.index_of("(1,0)").unwrap();
    let e2 = free.index_of("(0,1)").unwrap();
    let e1_star = &d2.hom.tables[d2.pairing[e1]];
    assert_eq!(e1_star.map[e1], g.one.unwrap());
    assert_eq!(e1_star.map[e2], g.zero);
}

#[test]
fn classify_identity_and_ghost_maps() {
    let ground = st3();
    let gm = ground_module(&ground);
    let id: Vec<usize> = (0..gm.n()).collect();
    let rep = classify_morphism(&gm, &gm, &id, 3);
    assert_eq!(rep.class, MorphismClass::Homomorphism);

    // b -> b + (-)b is additive and multiplicative but sends tangibles to
    // ghosts, so it cannot be a homomorphism of the pair structure
    let ghostify: Vec<usize> = (0..gm.n()).map(|x| gm.quasi_zero(x)).collect();
    let rep = classify_morphism(&gm, &gm, &ghostify, 3);
    assert_eq!(rep.class, MorphismClass::TAdmissible);
    let laws = derived_morphism_laws(&gm, &gm, &ghostify);
    assert!(laws.negation_compatible);
    assert_eq!(laws.action_compatible, Some(true));
    assert!(laws.collapses_intervals);
}

#[test]
fn collapse_map_classification() {
    // identity on generators, zero on multi-generator sums. The map is
    // relaxed-additive, but it is not monotone: adding a quasi-zero can
    // turn a single monomial into a two-monomial sum, whose image drops to
    // zero while the original image does not sit below zero. The honest
    // classification is therefore not-a-morphism, with monotonicity named
    // in the violations.
    let g = boolean();
    let m = free_module(&g, 2).unwrap();
    let e1 = m.index_of("(1,0)").unwrap();
    let e2 = m.index_of("(0,1)").unwrap();
    let both = m.a(e1, e2);
    let mut f = vec![0; m.n()];
    f[m.zero] = m.zero;
    f[e1] = e1;
    f[e2] = e2;
    f[both] = m.zero;
    let rep = classify_morphism(&m, &m, &f, 3);
    assert_eq!(rep.class, MorphismClass::NotAMorphism);
    assert!(rep.violations.iter().any(|v| v.contains("monotone")));
    assert!(!is_module_homomorphism(&m, &m, &f));
}

#[test]
fn span_and_independence() {
    let g = boolean();
    let m = free_module(&g, 2).unwrap();
    let e1 = m.index_of("(1,0)").unwrap();
    let e2 = m.index_of("(0,1)").unwrap();
    let both = m.a(e1, e2);
    // the standard generators form a base
    assert!(is_base(&m, &[e1, e2]).unwrap());
    // over the booleans the null set is everything, so independence holds
    // vacuously even for {e1, e1}; the supertropical ground separates them
    let sg = st3();
    let sm = free_module(&sg, 2).unwrap();
    let f1 = sm.index_of("(0,-inf)").unwrap();
    let f2 = sm.index_of("(-inf,0)").unwrap();
    let rep = independence_check(&sm, &[f1, f2]).unwrap();
    assert!(rep.independent);
    let rep = independence_check(&sm, &[f1, f1]).unwrap();
    assert!(!rep.independent, "duplicated vector stays independent");
    assert!(rep.witness.is_some());
    // {e1+e2} in the boolean square: the single combination is (1,1),
    // which surpasses everything, so it spans under the inclusion order
    assert!(span_check(&m, &[both], &(0..m.n()).collect::<Vec<_>>()).unwrap());
    // but over the supertropical ground the tangible (0,-inf) is not
    // surpassed by any combination of the diagonal vector
    let diag = sm.a(f1, f2);
    assert!(!span_check(&sm, &[diag], &[f1]).unwrap());
    // symmetric variant runs in the pair module
    assert!(is_symmetric_base(&m, &[e1, e2]).is_ok());
}

#[test]
fn tensor_class_counts() {
    let g = boolean();
    let m1 = Arc::new(free_module(&g, 2).unwrap());
    let m2 = Arc::new(free_module(&g, 1).unwrap());
    // free(2) (x) free(1) has the classes of free(2)
    let t = tensor(&m1, &m2, true).unwrap();
    t.module.validate().unwrap();
    assert_eq!(t.module.n(), 4);
    assert!(find_isomorphism(&t.module, &m1).is_some());
    t.verify_bilinear_well_defined().unwrap();

    // free(2) (x) free(2) has the classes of free(4)
    let t22 = tensor(&m1, &m1, true).unwrap();
    assert_eq!(t22.module.n(), 16);
    let f4 = free_module(&g, 4).unwrap();
    assert!(find_isomorphism(&t22.module, &f4).is_some());
    t22.verify_bilinear_well_defined().unwrap();

    // ground (x) ground over the supertropical chain collapses to the
    // ground itself via a (x) b -> ab
    let sg = st3();
    let a = Arc::new(ground_module(&sg));
    let taa = tensor(&a, &a, true).unwrap();
    assert_eq!(taa.module.n(), a.n());
    assert!(find_isomorphism(&taa.module, &a).is_some());
}

#[test]
fn tensor_negated_axiom() {
    let sg = st3();
    let a = Arc::new(ground_module(&sg));
    let t = tensor(&a, &a, true).unwrap();
    for &x in &a.tangibles {
        for &y in &a.tangibles {
            let lhs = t.simple_tensor(a.ng(x), y).unwrap();
            let rhs = t.simple_tensor(x, a.ng(y)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn tensor_powers() {
    let g = boolean();
    let m1 = Arc::new(free_module(&g, 1).unwrap());
    let powers = tensor_power(&m1, 2).unwrap();
    assert_eq!(powers.last().unwrap().module.n(), m1.n());
    let m2 = Arc::new(free_module(&g, 2).unwrap());
    let powers = tensor_power(&m2, 2).unwrap();
    assert_eq!(powers.last().unwrap().module.n(), 16);
}

#[test]
fn tensor_of_homomorphisms_well_defined() {
    let g = boolean();
    let m = Arc::new(free_module(&g, 2).unwrap());
    let t = tensor(&m, &m, true).unwrap();
    for f1 in all_homomorphisms(&m, &m).unwrap().iter().take(8) {
        for f2 in all_homomorphisms(&m, &m).unwrap().iter().take(8) {
            let out = tensor_of_homomorphisms(&t, &t, &f1.map, &f2.map).unwrap();
            assert_eq!(out.len(), t.module.n());
        }
    }
    // identity (x) identity is the identity on classes
    let id: Vec<usize> = (0..m.n()).collect();
    let out = tensor_of_homomorphisms(&t, &t, &id, &id).unwrap();
    assert_eq!(out, (0..t.module.n()).collect::<Vec<_>>());
}

#[test]
fn nonfunctoriality_reproduced() {
    let w = nonfunctoriality_witness().unwrap();
    // two regroupings of one tensor element map to different classes
    assert_ne!(w.image_a, w.image_b);
    // the images are the two pure squares of the generators
    let m = &w.tensor.m1;
    let e1 = m.index_of("(1,0)").unwrap();
    let e2 = m.index_of("(0,1)").unwrap();
    assert_eq!(w.image_a, w.tensor.simple_tensor(e2, e2).unwrap());
    assert_eq!(w.image_b, w.tensor.simple_tensor(e1, e1).unwrap());
    // restricted to tangible slots the collapse map is the identity, so
    // the slotwise scan alone cannot see the conflict; the witness above
    // lives on regroupings through non-tangible pairs
    let out = tensor_of_maps(&w.tensor, &w.tensor, &w.collapse, &w.collapse).unwrap();
    assert!(matches!(out, TensorHomOutcome::WellDefined(_)));
}

#[test]
fn adjoint_isomorphism_cardinality() {
    let g = boolean();
    let m1 = Arc::new(free_module(&g, 1).unwrap());
    let m2 = Arc::new(free_module(&g, 2).unwrap());
    let m3 = Arc::new(ground_module(&g));
    let t = tensor(&m1, &m2, true).unwrap();
    let lhs = all_homomorphisms(&t.module, &m3).unwrap();
    let hom23 = hom_module(&m2, &m3).unwrap();
    let rhs = all_homomorphisms(&m1, &hom23.module).unwrap();
    assert_eq!(lhs.len(), rhs.len());
    // the natural map h -> (x -> (y -> h(x (x) y))) is a bijection
    let mut images = BTreeSet::new();
    for h in &lhs {
        let mut outer = Vec::with_capacity(m1.n());
        for x in 0..m1.n() {
            let inner: Vec<usize> = (0..m2.n())
                .map(|y| h.map[t.simple_tensor(x, y).unwrap()])
                .collect();
            let idx = hom23
                .tables
                .iter()
                .position(|t| t.map == inner)
                .expect("curried map is a homomorphism");
            outer.push(idx);
        }
        assert!(is_module_homomorphism(&m1, &hom23.module, &outer));
        images.insert(outer);
    }
    assert_eq!(images.len(), rhs.len());
}

#[test]
fn every_homomorphism_is_t_admissible() {
    let g = boolean();
    let m = free_module(&g, 2).unwrap();
    for h in all_homomorphisms(&m, &m).unwrap() {
        let rep = classify_morphism(&m, &m, &h.map, 3);
        assert!(rep.class >= MorphismClass::TAdmissible, "{:?}", rep);
    }
}

#[test]
fn kernels_and_exactness() {
    let g = st3();
    let gm = Arc::new(ground_module(&g));
    // ghostify on the chain: kernel identifies tangible and ghost
    let ghostify: Vec<usize> = (0..gm.n()).map(|x| gm.quasi_zero(x)).collect();
    // ghostify is additive + action-compatible, i.e. a module homomorphism
    assert!(is_module_homomorphism(&gm, &gm, &ghostify));
    let fact = factor_through(&gm, &gm, &ghostify).unwrap();
    // recompose: projection then monic equals the original map
    for (x, &fx) in ghostify.iter().enumerate() {
        assert_eq!(fact.monic[fact.quotient.projection[x]], fx);
    }
    let monic_rep = null_monic(&fact.quotient.module, &gm, &fact.monic);
    assert!(monic_rep.null_monic);

    // identity chain: kernel is diagonal, factorization is trivial
    let id: Vec<usize> = (0..gm.n()).collect();
    let fact = factor_through(&gm, &gm, &id).unwrap();
    assert_eq!(fact.quotient.module.n(), gm.n());

    // projection of free(2) onto free(1): null-onto, not null-monic
    let b = boolean();
    let f2 = Arc::new(free_module(&b, 2).unwrap());
    let f1 = Arc::new(free_module(&b, 1).unwrap());
    let proj: Vec<usize> = (0..f2.n())
        .map(|i| {
            // first coordinate of the pair index
            i % b.n()
        })
        .collect();
    assert!(is_module_homomorphism(&f2, &f1, &proj));
    assert!(null_onto(&f2, &f1, &proj));
    let rep = null_monic(&f2, &f1, &proj);
    // over the boolean ground everything is null, so null-monicity is
    // vacuous; over the supertropical ground the projection genuinely
    // fails it
    assert!(rep.null_monic);
    let sf2 = Arc::new(free_module(&g, 2).unwrap());
    let sf1 = Arc::new(free_module(&g, 1).unwrap());
    let proj: Vec<usize> = (0..sf2.n()).map(|i| i % g.n()).collect();
    assert!(is_module_homomorphism(&sf2, &sf1, &proj));
    assert!(null_onto(&sf2, &sf1, &proj));
    let rep = null_monic(&sf2, &sf1, &proj);
    assert!(!rep.null_monic);
    assert!(rep.witness.is_some());

    // a null map has the full tangible kernel
    let null_map: Vec<usize> = vec![f1.zero; f2.n()];
    assert!(is_null_morphism(&f2, &f1, &null_map));
    assert_eq!(t_kernel(&f2, &f1, &null_map), f2.tangibles);

    // exactness of free(2) -proj-> free(1) -ghostify-> free(1) over st3:
    // the preimage of the nulls under ghostify is everything, and proj is
    // onto, so the chain is exact at free(1)
    let ghost1: Vec<usize> = (0..sf1.n()).map(|x| sf1.quasi_zero(x)).collect();
    let exact = exact_at(&sf2, &sf1, &sf1, &proj, &ghost1).unwrap();
    assert!(exact);
}

#[test]
fn congruence_image_and_annihilator() {
    let g = st3();
    let gm = Arc::new(ground_module(&g));
    let ghostify: Vec<usize> = (0..gm.n()).map(|x| gm.quasi_zero(x)).collect();
    let ker = congruence_kernel(&gm, &ghostify);
    // the kernel pairs map to equal elements, so the image congruence is
    // the diagonal: no classes merge in the target
    let img = congruence_image(&gm, &gm, &ghostify, &ker).unwrap();
    let merged: BTreeSet<usize> = img.iter().copied().collect();
    assert_eq!(merged.len(), gm.n());

}

#[test]
fn annihilator_cases() {
    let g = st3();
    let gm = ground_module(&g);
    // the zero element is annihilated by every tangible pair
    let ann0 = annihilator(&gm, &[gm.zero]);
    let t0: Vec<usize> = g.tangibles0();
    for &a in &t0 {
        for &b in &t0 {
            assert!(ann0.contains((a, b)));
        }
    }
    // the ground acting on itself is faithful: only the diagonal remains
    let all: Vec<usize> = (0..gm.n()).collect();
    let ann = annihilator(&gm, &all);
    assert!(ann.is_diag(&g));
    // principal module over the ghost element: tangible and zero act alike
    // exactly when their products with the ghost agree
    let ghost = g.index_of("0v").unwrap();
    let ann_g = annihilator(&gm, &[ghost]);
    let one = g.one.unwrap();
    assert!(ann_g.contains((one, ghost)) || !ann_g.contains((one, g.zero)));
}

#[test]
fn reversibility_and_galois_correspondence() {
    let g = st3();
    let gm = ground_module(&g);
    assert!(is_t_reversible(&gm));
    let rep = galois_check(&gm).unwrap();
    assert!(rep.reversible);
    assert!(rep.cong_recovers, "congruence not recovered from its submodule");
    assert!(rep.submodule_recovers, "submodule not recovered from its congruence");
    // tangible submodules of the chain: the null span and the whole carrier
    let subs = t_submodules(&gm).unwrap();
    assert!(subs.iter().any(|s| s.len() == gm.n()));
    for sub in &subs {
        assert!(sub.contains(&gm.zero));
        for q in gm.quasi_zeros() {
            assert!(sub.contains(&q));
        }
    }
}


#[test]
fn principal_module_annihilator_and_simplicity() {
    // the principal module over the ghost of the chain: its annihilator
    // is maximal among tangible congruences exactly when the module is
    // simple (proper subs inside the null set)
    let g = st3();
    let gm = ground_module(&g);
    let ghost = g.index_of("0v").unwrap();
    // carrier of A.s for s = ghost: {0, ghost}
    let sub: Vec<usize> = (0..gm.n())
        .map(|a| gm.act(a, ghost))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert_eq!(sub, vec![g.zero, ghost]);
    // simplicity: every proper closed subset sits inside the null set
    let null = gm.null_set();
    let proper: Vec<Vec<usize>> = vec![vec![g.zero]];
    let simple = proper.iter().all(|s| s.iter().all(|x| null.contains(x)));
    assert!(simple);
    // annihilator of s over tangible pairs, maximality over the ground
    let ann = annihilator(&gm, &[ghost]);
    let t_lattice = tsys::congruence::all_t_congruences(&g).unwrap();
    let maximal = tsys::congruence::is_maximal_in(&g, &ann, &t_lattice).unwrap();
    assert_eq!(maximal, simple);
}

#[test]
fn pair_action_on_modules() {
    // (a0,a1).x = a0 x (-) a1 x is an action of the pair carrier: it
    // respects the twist product, and switching the pair negates the
    // result, reconciling the switch with the base negation
    let g = st3();
    let gm = ground_module(&g);
    let act2 = |a0: usize, a1: usize, x: usize| -> usize {
        gm.a(gm.act(a0, x), gm.ng(gm.act(a1, x)))
    };
    let n = g.n();
    for a0 in 0..n {
        for a1 in 0..n {
            for b0 in 0..n {
                for b1 in 0..n {
                    // twist product of the pairs
                    let t0 = g.a(g.m(a0, b0), g.m(a1, b1));
                    let t1 = g.a(g.m(a0, b1), g.m(a1, b0));
                    for x in 0..gm.n() {
                        assert_eq!(act2(t0, t1, x), act2(a0, a1, act2(b0, b1, x)));
                        assert_eq!(act2(a1, a0, x), gm.ng(act2(a0, a1, x)));
                    }
                }
            }
        }
    }
}
