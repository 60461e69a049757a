//! Acceptance suite: one test per release criterion, each printing a
//! single pass line with its runtime. Run with `--nocapture` to see the
//! lines; every tolerance is pinned in code.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;
use tsys::checks;
use tsys::congruence as cg;
use tsys::finsys::{fin_boolean, fin_symmetrize, supertropical_chain, FinSys};
use tsys::hyperfield as hf;
use tsys::linalg;
use tsys::modsys as ms;
use tsys::poly::{self, Poly};
use tsys::puiseux as pz;
use tsys::rat::{q, qi};
use tsys::system::System;
use tsys::tensor as tn;
use tsys::value::Value;

fn report(id: u32, what: &str, started: Instant, limit_s: u64) {
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE {id:02} PASS  {what}  ({} ms, limit {limit_s} s)",
        elapsed.as_millis()
    );
    assert!(
        elapsed.as_secs() < limit_s,
        "criterion {id} exceeded its {limit_s}s budget"
    );
}

/// Finite fixtures that carry a genuine surpassing relation.
fn system_fixtures() -> Vec<FinSys> {
    vec![
        fin_boolean(),
        supertropical_chain(0),
        supertropical_chain(1),
        supertropical_chain(2),
        fin_symmetrize(&fin_boolean()),
        fin_symmetrize(&supertropical_chain(0)),
        (*hf::build_s_of_h(&hf::make_krasner()).unwrap().carrier).clone(),
        (*hf::build_s_of_h(&hf::make_signs()).unwrap().carrier).clone(),
    ]
}

#[test]
fn acceptance_01_surpassing_axioms() {
    let t0 = Instant::now();
    let s = System::supertropical();
    let mut rng = tsys::seeded(101);
    let mut triples = 0usize;
    while triples < 10_000 {
        let a = s.sample(&mut rng);
        let b = s.sample(&mut rng);
        let c = s.sample(&mut rng);
        triples += 1;
        // (i) absorbing a quasi-zero is surpassed
        assert!(s.leq(&a, &s.add(&a, &s.quasi_zero(&c))));
        // (ii)-(iv)
        if s.leq(&a, &b) {
            assert!(s.leq(&s.negate(&a), &s.negate(&b)));
            if s.is_tangible(&c) {
                assert!(s.leq(&s.mul(&c, &a), &s.mul(&c, &b)));
            }
            assert!(s.leq(&s.add(&a, &c), &s.add(&b, &c)));
        }
        // (v)
        if s.is_tangible(&a) && s.is_tangible(&b) && s.leq(&a, &b) {
            assert_eq!(a, b);
        }
        // preorder
        assert!(s.leq(&a, &a));
        if s.leq(&a, &b) && s.leq(&b, &c) {
            assert!(s.leq(&a, &c));
        }
    }
    // every finite fixture satisfies the five axioms and the preorder
    // conditions; the tangible-surpassing extra and the triple
    // classification are separate properties (the booleans fail them
    // legitimately: every element there is a quasi-zero)
    let classification = [
        "t_surpass_extra",
        "triple_tangibles_avoid_quasi_zeros",
        "triple_tangibles_generate",
    ];
    for fs in system_fixtures() {
        for check in fs.axiom_report() {
            if classification.contains(&check.name) {
                continue;
            }
            assert!(
                check.pass,
                "{}: axiom {} fails at {:?}",
                fs.label, check.name, check.witness
            );
        }
    }
    report(1, "surpassing axioms on 10^4 triples and all finite fixtures", t0, 10);
}

#[test]
fn acceptance_02_twist_and_symmetrization() {
    let t0 = Instant::now();
    // exhaustive associativity on the symmetrized booleans and the
    // symmetrized three-element supertropical chain
    for base in [fin_boolean(), supertropical_chain(0)] {
        let sym = fin_symmetrize(&base);
        let n = sym.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(sym.m(sym.m(x, y), z), sym.m(x, sym.m(y, z)));
                }
            }
        }
        // null set is exactly the diagonal
        let diag: BTreeSet<usize> = (0..base.n()).map(|i| i * base.n() + i).collect();
        assert_eq!(sym.null_set(), diag, "{}", sym.label);
    }
    // tangible pairs form a group under the twist on max-plus samples
    let base = System::maxplus();
    let sym = System::symmetrize(&base);
    let one = sym.one().unwrap();
    let mut rng = tsys::seeded(102);
    for _ in 0..1000 {
        let x = sym.sample_tangible(&mut rng);
        let y = sym.sample_tangible(&mut rng);
        let p = sym.mul(&x, &y);
        assert!(sym.is_tangible(&p));
        let ix = sym.inverse(&x).expect("tangible pairs invert");
        assert_eq!(sym.mul(&x, &ix), one);
        assert_eq!(sym.mul(&ix, &x), one);
        // null elements of the pair carrier are exactly the diagonal
        let d = sym.add(&x, &sym.negate(&x));
        match &d {
            Value::Pair(p, n) => assert_eq!(p, n),
            _ => unreachable!(),
        }
        assert!(sym.is_quasi_zero(&d));
        let s = base.sample_tangible(&mut rng);
        let shifted = base.mul(&s, &Value::Tangible(qi(1)));
        assert!(!sym.is_quasi_zero(&Value::pair(s, shifted)));
    }
    report(2, "twist associativity, group law, diagonal null set", t0, 5);
}

#[test]
fn acceptance_03_vandermonde() {
    let t0 = Instant::now();
    // exhaustive boolean tuples up to length 3
    let b = System::boolean();
    let belems = b.enumerate().unwrap();
    for n in 1..=3usize {
        let mut idx = vec![0usize; n];
        loop {
            let pts: Vec<Value> = idx.iter().map(|&i| belems[i].clone()).collect();
            assert!(linalg::vandermonde_identity_check(&b, &pts).unwrap());
            let v = linalg::vandermonde(&b, &pts).unwrap();
            for row in 0..n {
                assert!(linalg::laplace_expansion_check(&v, row).unwrap());
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < belems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    // symmetrized booleans, exhaustively for n <= 3
    let sb = System::symmetrize(&System::boolean());
    let selems = sb.enumerate().unwrap();
    for n in 1..=3usize {
        let mut idx = vec![0usize; n];
        loop {
            let pts: Vec<Value> = idx.iter().map(|&i| selems[i].clone()).collect();
            assert!(linalg::vandermonde_identity_check(&sb, &pts).unwrap());
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < selems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    // a thousand random supertropical tuples up to length 5
    let st = System::supertropical();
    let mut rng = tsys::seeded(103);
    for i in 0..1000 {
        let n = 1 + i % 5;
        let pts: Vec<Value> = (0..n).map(|_| st.sample_tangible(&mut rng)).collect();
        assert!(linalg::vandermonde_identity_check(&st, &pts).unwrap());
        let v = linalg::vandermonde(&st, &pts).unwrap();
        for row in 0..n {
            assert!(linalg::laplace_expansion_check(&v, row).unwrap());
        }
    }
    report(3, "vandermonde factorization and row expansions", t0, 30);
}

#[test]
fn acceptance_04_root_bound() {
    let t0 = Instant::now();
    let st = System::supertropical();
    let pool: Vec<Value> = (0..4).map(|k| Value::Tangible(qi(k))).collect();
    let domain: Vec<Value> = (0..5).map(|k| Value::Tangible(qi(k))).collect();
    let mut total = 0usize;
    for n in 1..=3usize {
        let rep = poly::check_root_bound(&st, n, &pool, &domain).unwrap();
        assert!(
            rep.holds,
            "degree {n} counterexample: {:?}",
            rep.counterexample
        );
        total += rep.polynomials_checked;
    }
    // a second pool with fractional values
    let pool2: Vec<Value> = vec![
        Value::Tangible(q(-1, 2)),
        Value::Tangible(qi(0)),
        Value::Tangible(q(3, 2)),
        Value::Tangible(qi(2)),
        Value::Tangible(qi(4)),
    ];
    let domain2: Vec<Value> = vec![
        Value::Tangible(qi(-1)),
        Value::Tangible(q(1, 2)),
        Value::Tangible(qi(1)),
        Value::Tangible(qi(2)),
        Value::Tangible(qi(3)),
    ];
    for n in 1..=3usize {
        let rep = poly::check_root_bound(&st, n, &pool2, &domain2).unwrap();
        assert!(rep.holds);
        total += rep.polynomials_checked;
    }
    report(
        4,
        &format!("degree bound on quasi-zero roots over {total} polynomials"),
        t0,
        60,
    );
}

#[test]
fn acceptance_05_bend_implies_circ_equivalence() {
    let t0 = Instant::now();
    let st = System::supertropical();
    let mut rng = tsys::seeded(105);
    // the fifty-point evaluation grid
    let grid: Vec<Vec<Value>> = (0..50)
        .map(|k| {
            vec![
                Value::Tangible(q(k - 25, 4)),
                Value::Tangible(q(2 * k - 50, 7)),
            ]
        })
        .collect();
    // value-certification grid used while rewriting (a superset scale)
    let cert: Vec<Vec<Value>> = poly::legality_grid(&st, 2).into_iter().take(200).collect();
    use rand::Rng;
    let mut built = 0usize;
    while built < 500 {
        // random starting polynomial with two to four monomials
        let nterms = rng.gen_range(2..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let e = vec![rng.gen_range(0..3i64), rng.gen_range(0..3i64)];
            terms.push((e, Value::Tangible(qi(rng.gen_range(-6..=6)))));
        }
        let f0 = Poly::new(&st, 2, false, terms).unwrap();
        if f0.is_zero() {
            continue;
        }
        // forward rewriting: randomly add a deeply dominated monomial,
        // re-add an existing one (which ghosts its coefficient), or delete
        // a monomial when the rest certifies the same quasi-zero values
        let mut f = f0.clone();
        let steps = rng.gen_range(1..=3);
        for _ in 0..steps {
            match rng.gen_range(0..3) {
                0 => {
                    let e = vec![rng.gen_range(0..3i64), rng.gen_range(0..3i64)];
                    let add =
                        Poly::monomial(&st, 2, false, e, Value::Tangible(qi(-200))).unwrap();
                    let cand = poly::add(&st, &f, &add).unwrap();
                    if poly::circ_equiv(&st, &f, &cand, &cert).unwrap() {
                        f = cand;
                    }
                }
                1 => {
                    if let Some((e, c)) = f.terms.iter().next() {
                        let add =
                            Poly::monomial(&st, 2, false, e.clone(), c.clone()).unwrap();
                        let cand = poly::add(&st, &f, &add).unwrap();
                        if poly::circ_equiv(&st, &f, &cand, &cert).unwrap() {
                            f = cand;
                        }
                    }
                }
                _ => {
                    let keys: Vec<Vec<i64>> = f.terms.keys().cloned().collect();
                    if keys.len() > 1 {
                        let e = &keys[rng.gen_range(0..keys.len())];
                        let mut cand = f.clone();
                        cand.terms.remove(e);
                        if !cand.is_zero()
                            && poly::circ_equiv(&st, &f, &cand, &cert).unwrap()
                        {
                            f = cand;
                        }
                    }
                }
            }
        }
        if f == f0 {
            continue;
        }
        built += 1;
        assert!(
            poly::circ_equiv(&st, &f0, &f, &grid).unwrap(),
            "pair {built}: {f0:?} vs {f:?}"
        );
    }
    // the bounded search certifies simple rewrites
    let one = st.one().unwrap();
    let f = Poly::new(&st, 2, false, [(vec![1, 0], one.clone()), (vec![0, 1], one.clone())])
        .unwrap();
    let g = poly::add(
        &st,
        &f,
        &Poly::monomial(&st, 2, false, vec![1, 0], one).unwrap(),
    )
    .unwrap();
    assert_eq!(
        poly::bend_equiv(&st, &f, &g, 4).unwrap(),
        poly::BendOutcome::Equivalent { steps: 1 }
    );
    report(5, "500 forward-rewritten pairs stay circ-equivalent on the grid", t0, 30);
}

#[test]
fn acceptance_06_prime_and_radical_machinery() {
    let t0 = Instant::now();
    for fs in [
        fin_boolean(),
        fin_symmetrize(&fin_boolean()),
        supertropical_chain(0),
    ] {
        let t_lattice = cg::all_t_congruences(&fs).unwrap();
        for c in &t_lattice {
            // definition-based primality over tangible congruences agrees
            // with the tangible-pair criterion
            assert_eq!(
                cg::is_prime_in(&fs, c, &t_lattice),
                cg::primecrit_tangible(&fs, c),
                "{}: primality criterion mismatch",
                fs.label
            );
            // semiprimality likewise
            assert_eq!(
                cg::is_semiprime_in(&fs, c, &t_lattice),
                cg::semiprimecrit_tangible(&fs, c),
                "{}: semiprimality criterion mismatch",
                fs.label
            );
            // the radical is the intersection of the primes above
            let r = cg::radical(&fs, c);
            assert!(c.subset_of(&r));
            assert!(cg::is_semiprime_in(&fs, &r, &t_lattice));
            let inter = cg::intersection_of_primes_above(&fs, c, &t_lattice);
            assert_eq!(r, inter, "{}: radical decomposition", fs.label);
            // maximal tangible congruences are prime
            if cg::is_maximal_in(&fs, c, &t_lattice).unwrap() {
                assert!(cg::is_prime_in(&fs, c, &t_lattice));
            }
        }
        // member-wise and tangible-generated twist products agree on the
        // enumerated lattice
        for c1 in &t_lattice {
            for c2 in &t_lattice {
                assert_eq!(
                    cg::twist_product(&fs, c1, c2),
                    cg::twist_product_tangible(&fs, c1, c2),
                    "{}: twist product generator sensitivity",
                    fs.label
                );
            }
        }
        // chain heights agree with the depth-first oracle
        assert_eq!(
            cg::chain_height(&fs).unwrap(),
            cg::chain_height_dfs(&fs).unwrap()
        );
    }
    report(6, "prime criteria, radical decompositions, maximality", t0, 120);
}

#[test]
fn acceptance_07_localization() {
    let t0 = Instant::now();
    // fixtures: supertropical chain at the unit, char4 at its units, the
    // symmetrized booleans at a tangible generator
    let st = supertropical_chain(1);
    let char4 = tsys::finsys::char4_carrier();
    let symb = fin_symmetrize(&fin_boolean());
    let cases: Vec<(FinSys, BTreeSet<usize>)> = vec![
        (st.clone(), [st.one.unwrap()].into()),
        (
            char4.clone(),
            [char4.one.unwrap(), char4.index_of("-1").unwrap()].into(),
        ),
        (symb.clone(), [symb.index_of("(1,0)").unwrap()].into()),
    ];
    for (fs, s_set) in &cases {
        let loc = cg::localize(fs, s_set).unwrap();
        // kernel of b -> b/1 is exactly the saturation set
        assert_eq!(
            loc.kernel(fs),
            cg::saturation_kernel(fs, s_set),
            "{}: kernel mismatch",
            fs.label
        );
        // regular denominators make the canonical map injective
        if cg::is_regular_set(fs, s_set) {
            assert!(loc.kernel(fs).is_diag(fs), "{}: not injective", fs.label);
        }
        // prime tangible congruences with regular denominators localize to
        // prime tangible congruences
        let t_lattice = cg::all_t_congruences(fs).unwrap();
        let loc_lattice = cg::all_t_congruences(&loc.carrier).unwrap();
        for c in &t_lattice {
            if !cg::is_prime_in(fs, c, &t_lattice) || !cg::is_c_regular(fs, c, s_set) {
                continue;
            }
            let lc = cg::localize_congruence(fs, c, &loc);
            assert!(
                cg::is_prime_in(&loc.carrier, &lc, &loc_lattice),
                "{}: localized congruence lost primality",
                fs.label
            );
        }
    }
    report(7, "localization kernels, injectivity, prime preservation", t0, 30);
}

#[test]
fn acceptance_08_hyperfield_functors() {
    let t0 = Instant::now();
    // independent closure oracle: values of formal sums up to length 6,
    // with tables rebuilt pairwise from scratch
    for h in [hf::make_krasner(), hf::make_signs()] {
        let built = hf::build_s_of_h(&h).unwrap();
        let mut values: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut sums: Vec<Vec<usize>> = (0..h.n()).map(|a| vec![a]).collect();
        for _ in 0..6 {
            let mut next = Vec::new();
            for s in &sums {
                let v: Vec<usize> = h.fold_sum(s).into_iter().collect();
                values.insert(v);
                for a in 0..h.n() {
                    let mut t = s.clone();
                    t.push(a);
                    next.push(t);
                }
            }
            sums = next;
            sums.dedup();
        }
        assert_eq!(values.len(), built.carrier.n(), "closure size for {}", h.label);
        // oracle tables: addition via setwise hypersum, product via term
        // lists, matched against the built carrier entry by entry
        for i in 0..built.carrier.n() {
            for j in 0..built.carrier.n() {
                let sum = h.hsum_sets(&built.sets[i], &built.sets[j]);
                assert_eq!(built.sets[built.carrier.a(i, j)], sum);
                let mut terms = Vec::new();
                for &x in &built.witnesses[i] {
                    for &y in &built.witnesses[j] {
                        terms.push(h.mul[x][y]);
                    }
                }
                assert_eq!(built.sets[built.carrier.m(i, j)], h.fold_sum(&terms));
            }
        }
        hf::verify_product_well_defined(&h, 4).unwrap();
        // the power-set carrier passes the structural predicates
        assert!(checks::check_unique_negation(&built.carrier).holds);
        for c in built.carrier.axiom_report() {
            assert!(c.pass, "{}: {}", built.carrier.label, c.name);
        }
    }
    // frozen hand tables for the signs carrier
    let s = hf::build_s_of_h(&hf::make_signs()).unwrap();
    let idx = |n: &str| s.carrier.index_of(n).unwrap();
    let (z, p, n, all) = (idx("{0}"), idx("{1}"), idx("{-1}"), idx("{0,1,-1}"));
    assert_eq!(s.carrier.a(p, n), all);
    assert_eq!(s.carrier.a(p, p), p);
    assert_eq!(s.carrier.a(all, z), all);
    assert_eq!(s.carrier.m(n, n), p);
    assert_eq!(s.carrier.m(all, all), all);
    // the tropical power-set carrier is isomorphic to the supertropical
    // one on a thousand samples across every operation
    let st = System::supertropical();
    let tp = System::TropPowerSet;
    let mut rng = tsys::seeded(108);
    for _ in 0..1000 {
        let a = st.sample(&mut rng);
        let b = st.sample(&mut rng);
        let fa = hf::supertropical_to_trop_powerset(&a).unwrap();
        let fb = hf::supertropical_to_trop_powerset(&b).unwrap();
        assert_eq!(
            hf::supertropical_to_trop_powerset(&st.add(&a, &b)).unwrap(),
            tp.add(&fa, &fb)
        );
        assert_eq!(
            hf::supertropical_to_trop_powerset(&st.mul(&a, &b)).unwrap(),
            tp.mul(&fa, &fb)
        );
        assert_eq!(st.negate(&a), hf::trop_powerset_to_supertropical(&tp.negate(&fa)).unwrap());
        assert_eq!(st.is_tangible(&a), tp.is_tangible(&fa));
        assert_eq!(st.leq(&a, &b), tp.leq(&fa, &fb));
    }
    report(8, "power-set closures match oracles; tropical power set is supertropical", t0, 10);
}

#[test]
fn acceptance_09_tensor() {
    let t0 = Instant::now();
    let ground = Arc::new(fin_boolean());
    let free1 = Arc::new(ms::free_module(&ground, 1).unwrap());
    let free2 = Arc::new(ms::free_module(&ground, 2).unwrap());
    let free4 = ms::free_module(&ground, 4).unwrap();

    let t21 = tn::tensor(&free2, &free1, true).unwrap();
    assert_eq!(t21.module.n(), free2.n());
    assert!(ms::find_isomorphism(&t21.module, &free2).is_some());
    t21.verify_bilinear_well_defined().unwrap();

    let t22 = tn::tensor(&free2, &free2, true).unwrap();
    assert_eq!(t22.module.n(), free4.n());
    assert!(ms::find_isomorphism(&t22.module, &free4).is_some());
    t22.verify_bilinear_well_defined().unwrap();

    // tensors of homomorphisms are representative-independent on every
    // class, for every pair of endomorphisms of free(2)
    let homs = ms::all_homomorphisms(&free2, &free2).unwrap();
    for f1 in &homs {
        for f2 in &homs {
            let out = tn::tensor_of_maps(&t22, &t22, &f1.map, &f2.map).unwrap();
            assert!(matches!(out, tn::TensorHomOutcome::WellDefined(_)));
        }
    }

    // the collapse map reproduces the two-valued regrouping
    let w = tn::nonfunctoriality_witness().unwrap();
    let e1 = w.tensor.m1.index_of("(1,0)").unwrap();
    let e2 = w.tensor.m1.index_of("(0,1)").unwrap();
    assert_ne!(w.image_a, w.image_b);
    assert_eq!(w.image_a, w.tensor.simple_tensor(e2, e2).unwrap());
    assert_eq!(w.image_b, w.tensor.simple_tensor(e1, e1).unwrap());

    report(9, "tensor class counts, functoriality, the collapse witness", t0, 60);
}

#[test]
fn acceptance_10_tropicalization() {
    let t0 = Instant::now();
    let mut rng = tsys::seeded(110);
    use rand::Rng;
    let random_series = |rng: &mut rand_chacha::ChaCha8Rng| {
        let n = rng.gen_range(0..5);
        pz::Puiseux::new((0..n).map(|_| {
            (
                q(rng.gen_range(-12..=12), rng.gen_range(1..=6)),
                qi(rng.gen_range(-9..=9)),
            )
        }))
    };
    for i in 0..1000 {
        let p = random_series(&mut rng);
        let r = if i % 4 == 0 { p.neg() } else { random_series(&mut rng) };
        let rep = pz::val_arith_check(&p, &r);
        assert!(rep.mult_ok && rep.sum_ok, "{}", rep.detail);
    }
    // the uniform matroid passes; each single-axiom mutation is rejected
    let u23 = pz::uniform_trivial(3, 2);
    assert_eq!(pz::valuated_matroid_check(&u23).unwrap(), pz::MatroidVerdict::Valuated);
    let mut m = u23.clone();
    m.values.clear();
    assert_eq!(
        pz::valuated_matroid_check(&m).unwrap(),
        pz::MatroidVerdict::FailsNontriviality
    );
    let mut m = u23.clone();
    m.values.insert(vec![0, 1], Value::Tangible(qi(3)));
    assert!(matches!(
        pz::valuated_matroid_check(&m).unwrap(),
        pz::MatroidVerdict::FailsSymmetry { .. }
    ));
    let mut m = u23.clone();
    m.values.insert(vec![2, 2], Value::Tangible(qi(0)));
    assert!(matches!(
        pz::valuated_matroid_check(&m).unwrap(),
        pz::MatroidVerdict::FailsRepeats { .. }
    ));
    // the exchange axiom cannot be broken on three elements at rank two;
    // the four-element uniform matroid with one bumped pair breaks it
    let mut m = pz::uniform_trivial(4, 2);
    m.values.insert(vec![2, 3], Value::Tangible(qi(5)));
    m.values.insert(vec![3, 2], Value::Tangible(qi(5)));
    assert!(matches!(
        pz::valuated_matroid_check(&m).unwrap(),
        pz::MatroidVerdict::FailsExchange { .. }
    ));
    // the bridged series valuation satisfies the valuation axioms
    let samples: Vec<pz::Puiseux> = (0..40).map(|_| random_series(&mut rng)).collect();
    let rep = hf::check_valuation_raw(
        &samples,
        |a, b| a.add(b),
        |a, b| a.mul(b),
        Some(&pz::Puiseux::zero()),
        |p| pz::bridge_to_hyperfield(&pz::val(p)),
    );
    assert!(rep.ok, "{:?}", rep.violations);
    report(10, "series valuations, matroid axioms and mutations", t0, 10);
}

#[test]
fn acceptance_11_cli_golden_files() {
    let t0 = Instant::now();
    let mut count = 0;
    for case in common::load_cases() {
        let (code, output) = common::run_case(&case);
        assert_eq!(code, case.expected_exit, "{}: exit code", case.name);
        let golden = common::golden_dir().join(format!("{}.out", case.name));
        let expected = std::fs::read_to_string(&golden)
            .unwrap_or_else(|_| panic!("missing golden file for {}", case.name));
        assert_eq!(expected, output, "{}: byte drift", case.name);
        count += 1;
    }
    report(11, &format!("{count} golden subcommand fixtures byte-stable"), t0, 10);
}
