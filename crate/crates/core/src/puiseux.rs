//! Puiseux series as finite term lists, their min-exponent valuation,
//! coefficient-wise tropicalization of polynomials into the min-plus
//! carrier, the finite tropical-ideal certificate, and the valuated
//! matroid axiom checker.
//!
//! Convention: the valuation lives in the min-plus carrier (value of a
//! product is the sum, value of a sum is the min away from ties); the
//! tropical hyperfield of the valuation axioms uses max. The order-
//! reversing bridge `x -> -x` connects the two and is applied exactly once,
//! inside the arithmetic checks.

use crate::error::{Error, Result};
use crate::hyperfield::{th_add, th_member, THVal};
use crate::poly::Poly;
use crate::rat::{fmt_q, Q};
use crate::system::System;
use crate::value::Value;
use num_traits::Zero as _;
use std::collections::{BTreeMap, BTreeSet};

/// Finite sorted association from rational exponents to nonzero rational
/// coefficients; the zero series has no terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Puiseux {
    pub terms: Vec<(Q, Q)>,
}

impl Puiseux {
    pub fn new(terms: impl IntoIterator<Item = (Q, Q)>) -> Puiseux {
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(Q::zero);
            *entry += c;
        }
        Puiseux {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn zero() -> Puiseux {
        Puiseux { terms: Vec::new() }
    }

    pub fn constant(c: Q) -> Puiseux {
        Puiseux::new([(Q::zero(), c)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Puiseux) -> Puiseux {
        Puiseux::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn neg(&self) -> Puiseux {
        Puiseux {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Puiseux) -> Puiseux {
        let mut acc = Vec::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                acc.push((e1 + e2, c1 * c2));
            }
        }
        Puiseux::new(acc)
    }
}

impl std::fmt::Display for Puiseux {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{}*t^{}", fmt_q(c), fmt_q(e)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Minimal exponent of a nonzero term, as a min-plus value; the zero
/// series maps to the absorbing zero symbol.
pub fn val(p: &Puiseux) -> Value {
    match p.terms.first() {
        None => Value::Zero,
        Some((e, _)) => Value::Tangible(e.clone()),
    }
}

/// Min-plus valuation value into the max-convention tropical hyperfield.
pub fn bridge_to_hyperfield(v: &Value) -> THVal {
    match v {
        Value::Zero => THVal::NegInf,
        Value::Tangible(q) => THVal::V(-q),
        _ => unreachable!("valuations are tangible or zero"),
    }
}

#[derive(Clone, Debug)]
pub struct ValArithReport {
    pub mult_ok: bool,
    pub sum_ok: bool,
    pub detail: String,
}

/// `val(pq) = val(p) + val(q)` exactly, and `val(p+q)` lies in the
/// hypersum of the bridged values (the min away from ties, anything at or
/// above the tie otherwise, including the cancellation case).
pub fn val_arith_check(p: &Puiseux, q: &Puiseux) -> ValArithReport {
    let minplus = System::minplus();
    let vp = val(p);
    let vq = val(q);
    let mult_ok = val(&p.mul(q)) == minplus.mul(&vp, &vq);
    let sum = bridge_to_hyperfield(&val(&p.add(q)));
    let allowed = th_add(&bridge_to_hyperfield(&vp), &bridge_to_hyperfield(&vq));
    let sum_ok = th_member(&sum, &allowed);
    ValArithReport {
        mult_ok,
        sum_ok,
        detail: format!(
            "val(p)={}, val(q)={}, val(pq)={}, val(p+q)={}",
            vp,
            vq,
            val(&p.mul(q)),
            val(&p.add(q))
        ),
    }
}

/// Polynomial with Puiseux-series coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, Puiseux>,
}

impl PuiseuxPoly {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Puiseux)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, Puiseux> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::BadInput(format!("exponent arity {} != {nvars}", e.len())));
            }
            let cur = map.remove(&e).unwrap_or_else(Puiseux::zero);
            let s = cur.add(&c);
            if !s.is_zero() {
                map.insert(e, s);
            }
        }
        Ok(PuiseuxPoly { nvars, terms: map })
    }
}

/// Coefficient-wise valuation into the min-plus carrier; coefficients that
/// cancel to the zero series drop from the support.
pub fn trop(p: &PuiseuxPoly) -> Poly {
    let minplus = System::minplus();
    let terms: Vec<(Vec<i64>, Value)> = p
        .terms
        .iter()
        .map(|(e, c)| (e.clone(), val(c)))
        .collect();
    Poly::new(&minplus, p.nvars, false, terms).expect("valuations are valid min-plus values")
}

/// Bend generator pairs of every tropicalized generator.
pub fn trop_ideal_to_bend(gens: &[PuiseuxPoly]) -> Vec<(Poly, Poly)> {
    gens.iter()
        .flat_map(|g| crate::poly::bend_generators(&trop(g)))
        .collect()
}

// ---------------------------------------------------------------------------
// Tropical ideal pair condition
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct IdealPairReport {
    pub ok: bool,
    /// per shared monomial: the witness polynomial, when one exists
    pub witnesses: Vec<(Vec<i64>, Option<Poly>)>,
}

fn coeff_q(p: &Poly, e: &[i64]) -> Option<Q> {
    match p.terms.get(e) {
        Some(Value::Tangible(q)) => Some(q.clone()),
        _ => None,
    }
}

/// Domination after normalizing at the shared monomial: the witness must
/// omit the monomial and its coefficients must sit at or above
/// `min(f_j - f_i, g_j - g_i)` everywhere (absent coefficients count as
/// the absorbing top).
fn dominates(h: &Poly, f: &Poly, g: &Poly, at: &[i64]) -> bool {
    if h.terms.contains_key(at) {
        return false;
    }
    let fi = coeff_q(f, at).expect("shared monomial");
    let gi = coeff_q(g, at).expect("shared monomial");
    let exps: BTreeSet<&Vec<i64>> = f
        .terms
        .keys()
        .chain(g.terms.keys())
        .chain(h.terms.keys())
        .collect();
    for e in exps {
        let bound = match (coeff_q(f, e), coeff_q(g, e)) {
            (Some(fj), Some(gj)) => Some((fj - &fi).min(gj - &gi)),
            (Some(fj), None) => Some(fj - &fi),
            (None, Some(gj)) => Some(gj - &gi),
            (None, None) => None,
        };
        let Some(bound) = bound else { continue };
        match coeff_q(h, e) {
            None => {} // absorbing top dominates
            Some(hj) if hj < bound => return false,
            Some(_) => {}
        }
    }
    true
}

/// For each shared support monomial, search the candidates (and the
/// normalized min-combination with that monomial deleted) for a dominating
/// eliminator. This checks a finite certificate, not ideal membership.
pub fn tropical_ideal_pair_check(
    f: &Poly,
    g: &Poly,
    candidates: &[Poly],
) -> Result<IdealPairReport> {
    let minplus = System::minplus();
    let shared: Vec<Vec<i64>> = f
        .supp()
        .intersection(&g.supp())
        .cloned()
        .collect();
    if shared.is_empty() {
        return Err(Error::NoCommonMonomial);
    }
    let mut witnesses = Vec::new();
    let mut ok = true;
    for i in &shared {
        let fi = coeff_q(f, i).ok_or_else(|| Error::BadInput("nontangible coefficient".into()))?;
        let gi = coeff_q(g, i).ok_or_else(|| Error::BadInput("nontangible coefficient".into()))?;
        // normalized combination with the shared monomial removed
        let mut combo: Vec<(Vec<i64>, Value)> = Vec::new();
        let exps: BTreeSet<Vec<i64>> = f.supp().union(&g.supp()).cloned().collect();
        for e in &exps {
            if e == i {
                continue;
            }
            let v = match (coeff_q(f, e), coeff_q(g, e)) {
                (Some(fj), Some(gj)) => (fj - &fi).min(gj - &gi),
                (Some(fj), None) => fj - &fi,
                (None, Some(gj)) => gj - &gi,
                (None, None) => continue,
            };
            combo.push((e.clone(), Value::Tangible(v)));
        }
        let h0 = Poly::new(&minplus, f.nvars, f.laurent, combo)?;
        let mut found = None;
        for h in candidates.iter().chain(std::iter::once(&h0)) {
            if !h.is_zero() && dominates(h, f, g, i) {
                found = Some(h.clone());
                break;
            }
        }
        if found.is_none() {
            ok = false;
        }
        witnesses.push((i.clone(), found));
    }
    Ok(IdealPairReport { ok, witnesses })
}

// ---------------------------------------------------------------------------
// Valuated matroids
// ---------------------------------------------------------------------------

pub const MATROID_GROUND_BOUND: usize = 8;
pub const MATROID_RANK_BOUND: usize = 4;

/// Candidate valuation: a total map from rank-tuples to max-plus values
/// (absent entries are the zero).
#[derive(Clone, Debug, Default)]
pub struct MatroidCandidate {
    pub ground: usize,
    pub rank: usize,
    pub values: BTreeMap<Vec<usize>, Value>,
}

impl MatroidCandidate {
    pub fn value(&self, tuple: &[usize]) -> Value {
        self.values.get(tuple).cloned().unwrap_or(Value::Zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidVerdict {
    Valuated,
    FailsNontriviality,
    FailsSymmetry { witness: Vec<usize> },
    FailsRepeats { witness: Vec<usize> },
    FailsExchange { left: Vec<usize>, right: Vec<usize> },
}

fn tuples(ground: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * ground);
        for t in &out {
            for e in 0..ground {
                let mut t2 = t.clone();
                t2.push(e);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Exhaustive check of the three axioms: some tuple is nonzero, the map is
/// symmetric and kills repeated entries, and the exchange inequality holds
/// for some pivot in every configuration.
pub fn valuated_matroid_check(c: &MatroidCandidate) -> Result<MatroidVerdict> {
    if c.ground > MATROID_GROUND_BOUND || c.rank > MATROID_RANK_BOUND || c.rank == 0 {
        return Err(Error::BadInput(format!(
            "ground {} rank {} outside the exhaustive bounds",
            c.ground, c.rank
        )));
    }
    let maxplus = System::maxplus();
    let m = c.rank;
    let all = tuples(c.ground, m);
    if all.iter().all(|t| c.value(t) == Value::Zero) {
        return Ok(MatroidVerdict::FailsNontriviality);
    }
    for t in &all {
        let mut sorted = t.clone();
        sorted.sort_unstable();
        if c.value(t) != c.value(&sorted) {
            return Ok(MatroidVerdict::FailsSymmetry { witness: t.clone() });
        }
        let mut uniq = t.clone();
        uniq.dedup();
        let has_repeat = {
            let mut s = t.clone();
            s.sort_unstable();
            s.windows(2).any(|w| w[0] == w[1])
        };
        let _ = uniq;
        if has_repeat && c.value(t) != Value::Zero {
            return Ok(MatroidVerdict::FailsRepeats { witness: t.clone() });
        }
    }
    // exchange: for e0..em and e2'..em' there is a pivot i with
    // v(e1..em) v(e0,e2'..em') <= v(e0, e1.. \ ei ..em) v(ei, e2'..em')
    let lead = tuples(c.ground, m + 1);
    let tails = tuples(c.ground, m - 1);
    for es in &lead {
        let e0 = es[0];
        let rest = &es[1..];
        for tail in &tails {
            let mut right_tuple = Vec::with_capacity(m);
            right_tuple.push(e0);
            right_tuple.extend_from_slice(tail);
            let lhs = maxplus.mul(&c.value(rest), &c.value(&right_tuple));
            if lhs == Value::Zero {
                continue;
            }
            let mut ok = false;
            for i in 0..m {
                let mut first = Vec::with_capacity(m);
                first.push(e0);
                for (k, &e) in rest.iter().enumerate() {
                    if k != i {
                        first.push(e);
                    }
                }
                let mut second = Vec::with_capacity(m);
                second.push(rest[i]);
                second.extend_from_slice(tail);
                let rhs = maxplus.mul(&c.value(&first), &c.value(&second));
                if maxplus.leq(&lhs, &rhs) || lhs == rhs {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(MatroidVerdict::FailsExchange {
                    left: es.clone(),
                    right: tail.clone(),
                });
            }
        }
    }
    Ok(MatroidVerdict::Valuated)
}

/// The uniform rank-`m` matroid on `ground` elements with the trivial
/// valuation: unit on tuples with distinct entries, zero otherwise.
pub fn uniform_trivial(ground: usize, m: usize) -> MatroidCandidate {
    let mut values = BTreeMap::new();
    for t in tuples(ground, m) {
        let mut s = t.clone();
        s.sort_unstable();
        let repeat = s.windows(2).any(|w| w[0] == w[1]);
        if !repeat {
            values.insert(t, Value::Tangible(Q::zero()));
        }
    }
    MatroidCandidate { ground, rank: m, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qi};

    fn p(terms: &[(i128, i128, i128)]) -> Puiseux {
        // (numerator, denominator, coefficient)
        Puiseux::new(terms.iter().map(|&(n, d, c)| (q(n, d), qi(c))))
    }

    #[test]
    fn valuations() {
        // 2 t^(1/3) + t has valuation 1/3
        assert_eq!(val(&p(&[(1, 3, 2), (1, 1, 1)])), Value::Tangible(q(1, 3)));
        assert_eq!(val(&Puiseux::zero()), Value::Zero);
        assert_eq!(val(&Puiseux::constant(qi(5))), Value::Tangible(qi(0)));
    }

    #[test]
    fn val_arithmetic() {
        // val(t * t^2) = 3
        let r = val_arith_check(&p(&[(1, 1, 1)]), &p(&[(2, 1, 1)]));
        assert!(r.mult_ok && r.sum_ok);
        // cancellation: t + (-t) has valuation zero-symbol, allowed by the tie
        let r = val_arith_check(&p(&[(1, 1, 1)]), &p(&[(1, 1, -1)]));
        assert!(r.mult_ok && r.sum_ok);
        assert_eq!(val(&p(&[(1, 1, 1)]).add(&p(&[(1, 1, -1)]))), Value::Zero);
        // distinct valuations take the min
        let r = val_arith_check(&p(&[(1, 1, 1)]), &p(&[(3, 1, 1)]));
        assert!(r.mult_ok && r.sum_ok);
        assert_eq!(
            val(&p(&[(1, 1, 1)]).add(&p(&[(3, 1, 1)]))),
            Value::Tangible(qi(1))
        );
    }

    #[test]
    fn tropicalization() {
        // t*x + t^2*y -> coefficients 1 and 2
        let pp = PuiseuxPoly::new(
            2,
            [
                (vec![1, 0], p(&[(1, 1, 1)])),
                (vec![0, 1], p(&[(2, 1, 1)])),
            ],
        )
        .unwrap();
        let tp = trop(&pp);
        assert_eq!(tp.terms[&vec![1, 0]], Value::Tangible(qi(1)));
        assert_eq!(tp.terms[&vec![0, 1]], Value::Tangible(qi(2)));
        // x - x cancels before tropicalizing
        let pp = PuiseuxPoly::new(
            1,
            [
                (vec![1], Puiseux::constant(qi(1))),
                (vec![1], Puiseux::constant(qi(-1))),
            ],
        )
        .unwrap();
        assert!(trop(&pp).is_zero());
        // (1 + t) x has coefficient min(0,1) = 0
        let pp = PuiseuxPoly::new(1, [(vec![1], p(&[(0, 1, 1), (1, 1, 1)]))]).unwrap();
        assert_eq!(trop(&pp).terms[&vec![1]], Value::Tangible(qi(0)));
    }

    #[test]
    fn trop_commutes_with_monomial_multiplication() {
        let m = PuiseuxPoly::new(1, [(vec![2], p(&[(3, 2, 5)]))]).unwrap();
        let f = PuiseuxPoly::new(1, [(vec![0], p(&[(0, 1, 2)])), (vec![1], p(&[(1, 1, 1)]))])
            .unwrap();
        // multiply directly
        let mut prod_terms = Vec::new();
        for (e1, c1) in &m.terms {
            for (e2, c2) in &f.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                prod_terms.push((e, c1.mul(c2)));
            }
        }
        let prod = PuiseuxPoly::new(1, prod_terms).unwrap();
        let minplus = System::minplus();
        let lhs = trop(&prod);
        let rhs = crate::poly::conv_mul(&minplus, &trop(&m), &trop(&f)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_pair_condition() {
        let minplus = System::minplus();
        let t = |n: i128| Value::Tangible(qi(n));
        // f = x + y (coeffs 0,0), g = x + 2y: eliminating x leaves a bound
        // on y of min(0-0, 2-0) = 0
        let f = Poly::new(&minplus, 2, false, [(vec![1, 0], t(0)), (vec![0, 1], t(0))]).unwrap();
        let g = Poly::new(&minplus, 2, false, [(vec![1, 0], t(0)), (vec![0, 1], t(2))]).unwrap();
        let rep = tropical_ideal_pair_check(&f, &g, &[]).unwrap();
        assert!(rep.ok);
        let (_, w) = rep
            .witnesses
            .iter()
            .find(|(i, _)| i == &vec![1, 0])
            .unwrap();
        let w = w.as_ref().unwrap();
        assert_eq!(w.terms[&vec![0, 1]], t(0));
        // f = g with two monomials: the construction works
        let rep = tropical_ideal_pair_check(&f, &f, &[]).unwrap();
        assert!(rep.ok);
        // single shared monomial with nothing else: no eliminator exists
        let x = Poly::new(&minplus, 2, false, [(vec![1, 0], t(0))]).unwrap();
        let rep = tropical_ideal_pair_check(&x, &x, &[]).unwrap();
        assert!(!rep.ok);
        // disjoint supports are a precondition violation
        let y = Poly::new(&minplus, 2, false, [(vec![0, 1], t(0))]).unwrap();
        assert!(matches!(
            tropical_ideal_pair_check(&x, &y, &[]),
            Err(Error::NoCommonMonomial)
        ));
    }

    #[test]
    fn matroid_axioms() {
        // everything zero: nontriviality fails
        let z = MatroidCandidate { ground: 3, rank: 2, values: BTreeMap::new() };
        assert_eq!(valuated_matroid_check(&z).unwrap(), MatroidVerdict::FailsNontriviality);
        // the uniform matroid passes
        let u = uniform_trivial(3, 2);
        assert_eq!(valuated_matroid_check(&u).unwrap(), MatroidVerdict::Valuated);
        // break symmetry on one tuple
        let mut bad = uniform_trivial(3, 2);
        bad.values.insert(vec![0, 1], Value::Tangible(qi(5)));
        assert!(matches!(
            valuated_matroid_check(&bad).unwrap(),
            MatroidVerdict::FailsSymmetry { .. }
        ));
        // nonzero on a repeated tuple
        let mut bad = uniform_trivial(3, 2);
        bad.values.insert(vec![1, 1], Value::Tangible(qi(0)));
        assert!(matches!(
            valuated_matroid_check(&bad).unwrap(),
            MatroidVerdict::FailsRepeats { .. }
        ));
        // bump one pair of the rank-2 uniform matroid on four elements:
        // the exchange inequality breaks
        let mut bad = uniform_trivial(4, 2);
        bad.values.insert(vec![2, 3], Value::Tangible(qi(5)));
        bad.values.insert(vec![3, 2], Value::Tangible(qi(5)));
        assert!(matches!(
            valuated_matroid_check(&bad).unwrap(),
            MatroidVerdict::FailsExchange { .. }
        ));
    }
}
