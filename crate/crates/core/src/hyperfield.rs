//! Hyperfields (multiplicative groups with set-valued addition), the
//! power-set carrier S(H) generated by singletons under hypersums, the
//! bridging functors into carriers, and semiring valuations into the
//! tropical hyperfield.

use crate::error::{Error, Result};
use crate::finsys::{FinSys, SurpassSpec};
use crate::rat::{fmt_q, Q};
use crate::system::{trop_set_add, System};
use crate::value::{TropSet, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct Hyperfield {
    pub label: String,
    pub names: Vec<String>,
    pub hyperadd: Vec<Vec<BTreeSet<usize>>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    pub neg: Vec<usize>,
}

impl Hyperfield {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::ForeignElement(format!("`{name}` not in {}", self.label)))
    }

    pub fn hsum(&self, a: usize, b: usize) -> &BTreeSet<usize> {
        &self.hyperadd[a][b]
    }

    /// Setwise extension of the hyperaddition.
    pub fn hsum_sets(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                out.extend(self.hsum(x, y).iter().copied());
            }
        }
        out
    }

    /// Value of a formal sum of elements, folded setwise; the hypersum of
    /// an empty list is the zero singleton.
    pub fn fold_sum(&self, terms: &[usize]) -> BTreeSet<usize> {
        let mut acc: BTreeSet<usize> = match terms.first() {
            None => return [self.zero].into(),
            Some(&t) => [t].into(),
        };
        for &t in &terms[1..] {
            acc = self.hsum_sets(&acc, &[t].into());
        }
        acc
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let err = |m: String| Err(Error::BadInput(m));
        if self.hyperadd.len() != n
            || self.hyperadd.iter().any(|r| r.len() != n)
            || self.mul.len() != n
            || self.mul.iter().any(|r| r.len() != n)
            || self.neg.len() != n
        {
            return err(format!("{}: tables are not {n}x{n}", self.label));
        }
        for a in 0..n {
            if self.neg[self.neg[a]] != a {
                return err(format!("hypernegation is not involutive at {}", self.names[a]));
            }
            if self.hsum(a, self.zero) != &BTreeSet::from([a]) {
                return err(format!("a + 0 != {{a}} at {}", self.names[a]));
            }
            if self.mul[a][self.zero] != self.zero || self.mul[self.zero][a] != self.zero {
                return err(format!("zero not absorbing at {}", self.names[a]));
            }
            if self.mul[a][self.one] != a || self.mul[self.one][a] != a {
                return err(format!("one not a unit at {}", self.names[a]));
            }
            // unique hypernegation: exactly one b with 0 in a + b
            let negs: Vec<usize> = (0..n)
                .filter(|&b| self.hsum(a, b).contains(&self.zero))
                .collect();
            if negs != vec![self.neg[a]] {
                return err(format!(
                    "hypernegation not unique at {}: candidates {:?}",
                    self.names[a], negs
                ));
            }
            for b in 0..n {
                if self.hsum(a, b) != self.hsum(b, a) || self.mul[a][b] != self.mul[b][a] {
                    return err(format!(
                        "hyperaddition/multiplication not commutative at ({},{})",
                        self.names[a], self.names[b]
                    ));
                }
                if a != self.zero && b != self.zero && self.mul[a][b] == self.zero {
                    return err(format!(
                        "zero divisors: {} * {}",
                        self.names[a], self.names[b]
                    ));
                }
                for c in 0..n {
                    // setwise associativity of the hypersum
                    let l = self.hsum_sets(self.hsum(a, b), &[c].into());
                    let r = self.hsum_sets(&[a].into(), self.hsum(b, c));
                    if l != r {
                        return err(format!(
                            "hypersum not associative at ({},{},{})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return err(format!(
                            "multiplication not associative at ({},{},{})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                    // elementwise distributivity
                    let l: BTreeSet<usize> =
                        self.hsum(b, c).iter().map(|&x| self.mul[a][x]).collect();
                    let r = self.hsum(self.mul[a][b], self.mul[a][c]);
                    if &l != r {
                        return err(format!(
                            "multiplication does not distribute at ({},{},{})",
                            self.names[a], self.names[b], self.names[c]
                        ));
                    }
                }
            }
            if a != self.zero {
                let inv = (0..n).find(|&b| self.mul[a][b] == self.one);
                if inv.is_none() {
                    return err(format!("{} has no multiplicative inverse", self.names[a]));
                }
            }
        }
        Ok(())
    }
}

/// Krasner hyperfield {0,1}: boolean operations except 1 + 1 = {0,1}.
pub fn make_krasner() -> Hyperfield {
    Hyperfield {
        label: "krasner".into(),
        names: vec!["0".into(), "1".into()],
        hyperadd: vec![
            vec![[0].into(), [1].into()],
            vec![[1].into(), [0, 1].into()],
        ],
        mul: vec![vec![0, 0], vec![0, 1]],
        zero: 0,
        one: 1,
        neg: vec![0, 1],
    }
}

/// Hyperfield of signs {0,1,-1}: 1 + 1 = {1}, -1 + -1 = {-1},
/// 1 + -1 = {0,1,-1}.
pub fn make_signs() -> Hyperfield {
    // indices 0:"0", 1:"1", 2:"-1"
    Hyperfield {
        label: "signs".into(),
        names: vec!["0".into(), "1".into(), "-1".into()],
        hyperadd: vec![
            vec![[0].into(), [1].into(), [2].into()],
            vec![[1].into(), [1].into(), [0, 1, 2].into()],
            vec![[2].into(), [0, 1, 2].into(), [2].into()],
        ],
        mul: vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]],
        zero: 0,
        one: 1,
        neg: vec![0, 2, 1],
    }
}

// ---------------------------------------------------------------------------
// Tropical hyperfield
// ---------------------------------------------------------------------------

/// Element of the tropical hyperfield: a rational or -inf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum THVal {
    NegInf,
    V(Q),
}

impl std::fmt::Display for THVal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            THVal::NegInf => write!(f, "-inf"),
            THVal::V(q) => write!(f, "{}", fmt_q(q)),
        }
    }
}

pub fn th_singleton(a: &THVal) -> TropSet {
    match a {
        THVal::NegInf => TropSet::NegInf,
        THVal::V(q) => TropSet::Single(q.clone()),
    }
}

/// `a ⊞ b`: the max when the arguments differ, the interval `[-inf, a]`
/// when they tie.
pub fn th_add(a: &THVal, b: &THVal) -> TropSet {
    trop_set_add(&th_singleton(a), &th_singleton(b))
}

pub fn th_mul(a: &THVal, b: &THVal) -> THVal {
    match (a, b) {
        (THVal::NegInf, _) | (_, THVal::NegInf) => THVal::NegInf,
        (THVal::V(x), THVal::V(y)) => THVal::V(x + y),
    }
}

pub fn th_member(x: &THVal, set: &TropSet) -> bool {
    match (x, set) {
        (THVal::NegInf, TropSet::NegInf) => true,
        (THVal::NegInf, TropSet::Interval(_)) => true,
        (THVal::NegInf, TropSet::Single(_)) => false,
        (THVal::V(q), TropSet::Single(p)) => q == p,
        (THVal::V(q), TropSet::Interval(p)) => q <= p,
        (THVal::V(_), TropSet::NegInf) => false,
    }
}

// ---------------------------------------------------------------------------
// The power-set carrier S(H)
// ---------------------------------------------------------------------------

pub const SOFH_CLOSURE_BOUND: usize = 512;

pub struct SofH {
    pub carrier: Arc<FinSys>,
    /// set denoted by each carrier element
    pub sets: Vec<BTreeSet<usize>>,
    /// a representing formal sum for each carrier element
    pub witnesses: Vec<Vec<usize>>,
    pub base: Hyperfield,
}

fn set_name(h: &Hyperfield, s: &BTreeSet<usize>) -> String {
    let inner: Vec<&str> = s.iter().map(|&i| h.names[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Product of two set values through representing formal sums: multiply the
/// witnesses term by term and fold the hypersum. The table is keyed by set
/// value; representation independence is checked exhaustively in tests.
fn witness_product(h: &Hyperfield, wa: &[usize], wb: &[usize]) -> BTreeSet<usize> {
    let terms: Vec<usize> = wa
        .iter()
        .flat_map(|&x| wb.iter().map(move |&y| h.mul[x][y]))
        .collect();
    h.fold_sum(&terms)
}

/// Carrier of finite hypersums of singletons: elements are the reachable
/// set values, addition is the setwise hypersum, multiplication goes
/// through representing formal sums, negation is elementwise, and the
/// surpassing relation is set inclusion.
pub fn build_s_of_h(h: &Hyperfield) -> Result<SofH> {
    h.validate()?;
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for a in 0..h.n() {
        let s: BTreeSet<usize> = [a].into();
        if !index.contains_key(&s) {
            index.insert(s.clone(), sets.len());
            sets.push(s);
            witnesses.push(vec![a]);
        }
    }
    // close under hypersum of values (products cannot escape: a witness
    // product is again a finite hypersum of singletons)
    let mut frontier: Vec<usize> = (0..sets.len()).collect();
    while let Some(i) = frontier.pop() {
        for j in 0..sets.len() {
            let s = h.hsum_sets(&sets[i].clone(), &sets[j].clone());
            if !index.contains_key(&s) {
                if sets.len() >= SOFH_CLOSURE_BOUND {
                    return Err(Error::NonterminatingClosure(SOFH_CLOSURE_BOUND));
                }
                let w: Vec<usize> = witnesses[i]
                    .iter()
                    .chain(witnesses[j].iter())
                    .copied()
                    .collect();
                index.insert(s.clone(), sets.len());
                sets.push(s);
                witnesses.push(w);
                frontier.push(sets.len() - 1);
            }
        }
    }
    let m = sets.len();
    let mut add = vec![vec![0; m]; m];
    let mut mul = vec![vec![0; m]; m];
    let mut neg = vec![0; m];
    for i in 0..m {
        let ni: BTreeSet<usize> = sets[i].iter().map(|&x| h.neg[x]).collect();
        neg[i] = *index
            .get(&ni)
            .ok_or_else(|| Error::BadInput("negation leaves the closure".into()))?;
        for j in 0..m {
            let s = h.hsum_sets(&sets[i], &sets[j]);
            add[i][j] = *index
                .get(&s)
                .ok_or_else(|| Error::BadInput("hypersum leaves the closure".into()))?;
            let p = witness_product(h, &witnesses[i], &witnesses[j]);
            mul[i][j] = *index
                .get(&p)
                .ok_or_else(|| Error::BadInput("product leaves the closure".into()))?;
        }
    }
    let zero = index[&BTreeSet::from([h.zero])];
    let one = index[&BTreeSet::from([h.one])];
    let tangibles: BTreeSet<usize> = (0..h.n())
        .filter(|&a| a != h.zero)
        .map(|a| index[&BTreeSet::from([a])])
        .collect();
    let mut leq = BTreeSet::new();
    for i in 0..m {
        for j in 0..m {
            if sets[i].is_subset(&sets[j]) {
                leq.insert((i, j));
            }
        }
    }
    let names: Vec<String> = sets.iter().map(|s| set_name(h, s)).collect();
    let fs = FinSys {
        label: format!("S({})", h.label),
        names,
        add,
        mul,
        zero,
        one: Some(one),
        tangibles,
        neg,
        surpass: SurpassSpec::Explicit(leq),
    };
    let carrier = fs.into_shared()?;
    Ok(SofH { carrier, sets, witnesses, base: h.clone() })
}

/// Exhaustive representation-independence check for the product table: all
/// formal sums up to the given length that denote the same set multiply to
/// the same set.
pub fn verify_product_well_defined(h: &Hyperfield, max_len: usize) -> Result<()> {
    let mut by_set: BTreeMap<BTreeSet<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    let mut sums: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &sums {
            for a in 0..h.n() {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        for s in &next {
            by_set.entry(h.fold_sum(s)).or_default().push(s.clone());
        }
        sums = next;
    }
    for (sa, reps_a) in &by_set {
        for (sb, reps_b) in &by_set {
            let mut value: Option<BTreeSet<usize>> = None;
            for ra in reps_a.iter().take(6) {
                for rb in reps_b.iter().take(6) {
                    let p = witness_product(h, ra, rb);
                    match &value {
                        None => value = Some(p),
                        Some(v) if *v == p => {}
                        Some(v) => {
                            return Err(Error::IllDefined(format!(
                                "product of {:?} and {:?} depends on representation: {:?} vs {:?}",
                                sa, sb, v, p
                            )))
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Functors between carrier presentations
// ---------------------------------------------------------------------------

/// A carrier together with a distinguished multiplicative monoid that
/// generates it additively.
#[derive(Clone, Debug, PartialEq)]
pub struct SdmPair {
    pub carrier: Arc<FinSys>,
    pub monoid: BTreeSet<usize>,
}

/// Pair a semidomain with its nonzero elements.
pub fn functor_t(fs: &Arc<FinSys>) -> Result<SdmPair> {
    for a in 0..fs.n() {
        for b in 0..fs.n() {
            if a != fs.zero && b != fs.zero && fs.m(a, b) == fs.zero {
                return Err(Error::ZeroDivisor(format!(
                    "{} * {} = 0",
                    fs.names[a], fs.names[b]
                )));
            }
        }
    }
    let monoid: BTreeSet<usize> = (0..fs.n()).filter(|&a| a != fs.zero).collect();
    Ok(SdmPair { carrier: fs.clone(), monoid })
}

/// Equip a (carrier, monoid) pair with the identity negation and the
/// quasi-zero surpassing relation.
pub fn functor_e(pair: &SdmPair) -> Result<System> {
    let mut fs = (*pair.carrier).clone();
    fs.label = format!("e({})", fs.label);
    fs.tangibles = pair.monoid.clone();
    fs.tangibles.remove(&fs.zero);
    fs.neg = (0..fs.n()).collect();
    fs.surpass = SurpassSpec::Circ;
    System::finite(fs)
}

/// Power-set carrier of a hyperfield without zero divisors, with inclusion
/// as the surpassing relation. Identical to `build_s_of_h` by construction.
pub fn functor_c(h: &Hyperfield) -> Result<SofH> {
    build_s_of_h(h)
}

/// The isomorphism between the tropical power-set carrier and the
/// supertropical carrier: singletons are tangible, down-intervals ghost.
pub fn trop_powerset_to_supertropical(v: &Value) -> Result<Value> {
    match v {
        Value::Trop(TropSet::NegInf) => Ok(Value::Zero),
        Value::Trop(TropSet::Single(q)) => Ok(Value::Tangible(q.clone())),
        Value::Trop(TropSet::Interval(q)) => Ok(Value::Ghost(q.clone())),
        _ => Err(Error::ForeignElement(format!("{v} not a tropical set"))),
    }
}

pub fn supertropical_to_trop_powerset(v: &Value) -> Result<Value> {
    match v {
        Value::Zero => Ok(Value::Trop(TropSet::NegInf)),
        Value::Tangible(q) => Ok(Value::Trop(TropSet::Single(q.clone()))),
        Value::Ghost(q) => Ok(Value::Trop(TropSet::Interval(q.clone()))),
        _ => Err(Error::ForeignElement(format!("{v} not supertropical"))),
    }
}

// ---------------------------------------------------------------------------
// Valuations
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ValuationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Check the valuation axioms on a listed family of elements:
/// multiplicativity into the tropical hyperfield, zero to -inf, sums inside
/// the hypersum, and nondegeneracy.
pub fn check_valuation_raw<T: std::fmt::Display>(
    elems: &[T],
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    zero: Option<&T>,
    nu: impl Fn(&T) -> THVal,
) -> ValuationReport {
    let mut violations = Vec::new();
    if let Some(z) = zero {
        if nu(z) != THVal::NegInf {
            violations.push(format!("nu(0) = {} != -inf", nu(z)));
        }
    }
    if elems.iter().all(|a| nu(a) == THVal::NegInf) {
        violations.push("nu is constantly -inf".to_string());
    }
    for a in elems {
        for b in elems {
            let p = nu(&mul(a, b));
            let expect = th_mul(&nu(a), &nu(b));
            if p != expect {
                violations.push(format!(
                    "nu({a} * {b}) = {p}, expected {expect}"
                ));
            }
            let s = nu(&add(a, b));
            let allowed = th_add(&nu(a), &nu(b));
            if !th_member(&s, &allowed) {
                violations.push(format!(
                    "nu({a} + {b}) = {s} outside the hypersum of {} and {}",
                    nu(a),
                    nu(b)
                ));
            }
            if violations.len() > 32 {
                return ValuationReport { ok: false, violations };
            }
        }
    }
    ValuationReport { ok: violations.is_empty(), violations }
}

/// Valuation check over a carrier: exhaustive when finite, on the supplied
/// samples otherwise. The source is expected to be additively idempotent;
/// a violation of that is reported rather than assumed away.
pub fn check_valuation(
    sys: &System,
    samples: &[Value],
    nu: impl Fn(&Value) -> THVal,
) -> ValuationReport {
    let elems: Vec<Value> = match sys.enumerate() {
        Some(all) => all,
        None => samples.to_vec(),
    };
    let mut rep = check_valuation_raw(
        &elems,
        |a, b| sys.add(a, b),
        |a, b| sys.mul(a, b),
        Some(&sys.zero()),
        nu,
    );
    if let Some(a) = elems.iter().find(|a| sys.add(a, a) != **a) {
        rep.violations.push(format!("carrier is not additively idempotent at {a}"));
        rep.ok = false;
    }
    rep
}
