//! Finite carriers given by explicit operation tables.
//!
//! A `FinSys` packages a finite carrier with addition and multiplication
//! tables, a distinguished zero (and optional unit), a tangible subset, a
//! negation table, and a surpassing relation that is either derived from
//! quasi-zeros or listed explicitly. Everything downstream that enumerates
//! (congruence lattices, quotients, localization, module machinery) works
//! over these tables.

use crate::error::{Error, Result};
use crate::rat::{fmt_q, Q};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurpassSpec {
    /// Derive `a <| b  iff  b = a + c + (-)c` for some element c.
    Circ,
    /// Explicit pair list (by element index).
    Explicit(BTreeSet<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinSys {
    pub label: String,
    pub names: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: Option<usize>,
    pub tangibles: BTreeSet<usize>,
    pub neg: Vec<usize>,
    pub surpass: SurpassSpec,
}

/// One named axiom check with an optional counterexample description.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
    /// Structural checks must hold for the tables to be usable at all;
    /// non-structural ones classify the carrier (triple, system, PO...).
    pub structural: bool,
}

impl FinSys {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::ForeignElement(format!("`{name}` not in {}", self.label)))
    }

    pub fn a(&self, i: usize, j: usize) -> usize {
        self.add[i][j]
    }

    pub fn m(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn ng(&self, i: usize) -> usize {
        self.neg[i]
    }

    /// a + (-)a
    pub fn quasi_zero(&self, i: usize) -> usize {
        self.a(i, self.ng(i))
    }

    pub fn quasi_zeros(&self) -> BTreeSet<usize> {
        (0..self.n()).map(|i| self.quasi_zero(i)).collect()
    }

    pub fn is_tangible(&self, i: usize) -> bool {
        self.tangibles.contains(&i)
    }

    /// Tangibles together with zero.
    pub fn tangibles0(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.tangibles.iter().copied().collect();
        if !v.contains(&self.zero) {
            v.push(self.zero);
        }
        v.sort_unstable();
        v
    }

    /// The surpassing relation `i <| j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.surpass {
            SurpassSpec::Explicit(pairs) => pairs.contains(&(i, j)),
            SurpassSpec::Circ => {
                let qz = self.quasi_zeros();
                qz.iter().any(|&c| self.a(i, c) == j)
            }
        }
    }

    pub fn leq_pairs(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.leq(i, j) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    /// `A_Null = { b : b + b' >= b' for all b' }`.
    pub fn null_set(&self) -> BTreeSet<usize> {
        (0..self.n())
            .filter(|&b| (0..self.n()).all(|b2| self.leq(b2, self.a(b, b2))))
            .collect()
    }

    /// Every nonzero element expressible as a finite sum of tangibles?
    pub fn tangibles_generate(&self) -> bool {
        let span = self.additive_span(&self.tangibles.iter().copied().collect::<Vec<_>>());
        (0..self.n()).all(|i| i == self.zero || span.contains(&i))
    }

    /// Closure of `gens` under addition (not including the empty sum).
    pub fn additive_span(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> = gens.iter().copied().collect();
        loop {
            let mut grew = false;
            let cur: Vec<usize> = out.iter().copied().collect();
            for &x in &cur {
                for &g in gens {
                    if out.insert(self.a(x, g)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return out;
            }
        }
    }

    /// Two-sided multiplicative inverse, if any.
    pub fn inverse(&self, i: usize) -> Option<usize> {
        let one = self.one?;
        (0..self.n()).find(|&j| self.m(i, j) == one && self.m(j, i) == one)
    }

    /// Structural sanity of the table shapes; run before anything else.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.n();
        let ck = |t: &Vec<Vec<usize>>, which: &str| -> Result<()> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::BadInput(format!("{which} table is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&x| x >= n) {
                return Err(Error::BadInput(format!("{which} table index out of range")));
            }
            Ok(())
        };
        ck(&self.add, "add")?;
        ck(&self.mul, "mul")?;
        if self.neg.len() != n || self.neg.iter().any(|&x| x >= n) {
            return Err(Error::BadInput("neg table malformed".into()));
        }
        if self.zero >= n || self.one.is_some_and(|o| o >= n) {
            return Err(Error::BadInput("zero/one index out of range".into()));
        }
        if self.tangibles.iter().any(|&t| t >= n) {
            return Err(Error::BadInput("tangible index out of range".into()));
        }
        if let SurpassSpec::Explicit(p) = &self.surpass {
            if p.iter().any(|&(i, j)| i >= n || j >= n) {
                return Err(Error::BadInput("surpass pair out of range".into()));
            }
        }
        let mut uniq = BTreeSet::new();
        for nm in &self.names {
            if !uniq.insert(nm) {
                return Err(Error::BadInput(format!("duplicate element name `{nm}`")));
            }
        }
        Ok(())
    }

    /// Full axiom report: structural semiring/negation/surpassing checks plus
    /// the classifying conditions (triple, uniquely negated system, PO).
    pub fn axiom_report(&self) -> Vec<AxiomCheck> {
        let n = self.n();
        let mut out = Vec::new();
        let nm = |i: usize| self.names[i].clone();
        let mut push = |name: &'static str, structural: bool, witness: Option<String>| {
            out.push(AxiomCheck { name, pass: witness.is_none(), witness, structural });
        };

        let mut w = None;
        'a: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.a(self.a(i, j), k) != self.a(i, self.a(j, k)) {
                        w = Some(format!("({},{},{})", nm(i), nm(j), nm(k)));
                        break 'a;
                    }
                }
            }
        }
        push("add_assoc", true, w);

        let w = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.a(i, j) != self.a(j, i))
            .map(|(i, j)| format!("({},{})", nm(i), nm(j)));
        push("add_comm", true, w);

        let w = (0..n)
            .find(|&i| self.a(self.zero, i) != i)
            .map(&nm);
        push("zero_add_identity", true, w);

        let mut w = None;
        'm: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.m(self.m(i, j), k) != self.m(i, self.m(j, k)) {
                        w = Some(format!("({},{},{})", nm(i), nm(j), nm(k)));
                        break 'm;
                    }
                }
            }
        }
        push("mul_assoc", true, w);

        let mut w = None;
        'd: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.m(i, self.a(j, k)) != self.a(self.m(i, j), self.m(i, k))
                        || self.m(self.a(j, k), i) != self.a(self.m(j, i), self.m(k, i))
                    {
                        w = Some(format!("({},{},{})", nm(i), nm(j), nm(k)));
                        break 'd;
                    }
                }
            }
        }
        push("distributive", true, w);

        let w = (0..n)
            .find(|&i| self.m(self.zero, i) != self.zero || self.m(i, self.zero) != self.zero)
            .map(nm);
        push("zero_mul_absorbs", true, w);

        if let Some(o) = self.one {
            let w = (0..n)
                .find(|&i| self.m(o, i) != i || self.m(i, o) != i)
                .map(nm);
            push("one_identity", true, w);
        }

        let w = (0..n).find(|&i| self.ng(self.ng(i)) != i).map(nm);
        push("neg_involution", true, w);

        let w = if self.ng(self.zero) != self.zero {
            Some(nm(self.zero))
        } else {
            None
        };
        push("neg_fixes_zero", true, w);

        let w = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.ng(self.a(i, j)) != self.a(self.ng(i), self.ng(j)))
            .map(|(i, j)| format!("({},{})", nm(i), nm(j)));
        push("neg_additive", true, w);

        let w = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| {
                self.ng(self.m(i, j)) != self.m(self.ng(i), j)
                    || self.ng(self.m(i, j)) != self.m(i, self.ng(j))
            })
            .map(|(i, j)| format!("({},{})", nm(i), nm(j)));
        push("neg_respects_mul", true, w);

        let w = self
            .tangibles
            .iter()
            .find(|&&t| self.ng(t) != t && !self.tangibles.contains(&self.ng(t)))
            .map(|&t| nm(t));
        push("neg_preserves_tangibles", true, w);

        let w = if self.is_tangible(self.zero) {
            Some(nm(self.zero))
        } else {
            None
        };
        push("tangible_zero_excluded", true, w);

        // Surpassing relation axioms. These classify the relation rather
        // than gate the tables: degenerate carriers (max-plus with all
        // elements quasi-zero, the char-4 carrier) violate some of them
        // while remaining legitimate pseudo-triples.
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| self.leq(i, j)).collect())
            .collect();

        let w = (0..n).find(|&i| !leq[i][i]).map(nm);
        push("surpass_reflexive", false, w);

        let mut w = None;
        't: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        w = Some(format!("({},{},{})", nm(i), nm(j), nm(k)));
                        break 't;
                    }
                }
            }
        }
        push("surpass_transitive", false, w);

        let qz = self.quasi_zeros();
        let mut w = None;
        'i1: for b1 in 0..n {
            for &c in &qz {
                let b = self.a(b1, c);
                if !leq[b1][b] {
                    w = Some(format!("{} + {} = {}", nm(b1), nm(c), nm(b)));
                    break 'i1;
                }
            }
        }
        push("surpass_i", false, w);

        let w = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| leq[i][j] && !leq[self.ng(i)][self.ng(j)])
            .map(|(i, j)| format!("({},{})", nm(i), nm(j)));
        push("surpass_ii", false, w);

        let mut w = None;
        'i3: for &a in &self.tangibles {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][j] && !leq[self.m(a, i)][self.m(a, j)] {
                        w = Some(format!("a={}, ({},{})", nm(a), nm(i), nm(j)));
                        break 'i3;
                    }
                }
            }
        }
        push("surpass_iii", false, w);

        let mut w = None;
        'i4: for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for i2 in 0..n {
                    for j2 in 0..n {
                        if leq[i2][j2] && !leq[self.a(i, i2)][self.a(j, j2)] {
                            w = Some(format!(
                                "({},{}) + ({},{})",
                                nm(i),
                                nm(j),
                                nm(i2),
                                nm(j2)
                            ));
                            break 'i4;
                        }
                    }
                }
            }
        }
        push("surpass_iv", false, w);

        let w = self
            .tangibles
            .iter()
            .flat_map(|&a| self.tangibles.iter().map(move |&b| (a, b)))
            .find(|&(a, b)| leq[a][b] && a != b)
            .map(|(a, b)| format!("({},{})", nm(a), nm(b)));
        push("surpass_v", false, w);

        // Classifying conditions (not structural).
        let w = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| leq[i][j] && leq[j][i] && i != j)
            .map(|(i, j)| format!("({},{})", nm(i), nm(j)));
        push("surpass_po", false, w);

        let mut w = None;
        'ts: for b in 0..n {
            for &a in &self.tangibles {
                if leq[self.quasi_zero(b)][a] {
                    w = Some(format!("{}^o <| {}", nm(b), nm(a)));
                    break 'ts;
                }
            }
        }
        push("t_surpass_extra", false, w);

        let w = self
            .tangibles
            .iter()
            .find(|&&t| qz.contains(&t))
            .map(|&t| nm(t));
        push("triple_tangibles_avoid_quasi_zeros", false, w);

        let w = if self.tangibles_generate() {
            None
        } else {
            Some("tangibles do not generate additively".to_string())
        };
        push("triple_tangibles_generate", false, w);

        out
    }

    pub fn structural_violation(&self) -> Option<AxiomCheck> {
        self.axiom_report()
            .into_iter()
            .find(|c| c.structural && !c.pass)
    }

    /// A fully valid finite carrier, wrapped for sharing.
    pub fn into_shared(self) -> Result<Arc<FinSys>> {
        self.validate_shape()?;
        if let Some(v) = self.structural_violation() {
            return Err(Error::BadInput(format!(
                "axiom `{}` fails at {}",
                v.name,
                v.witness.unwrap_or_default()
            )));
        }
        Ok(Arc::new(self))
    }
}

/// The Boolean semifield {0,1} with 1+1=1, tangible set {1}.
pub fn fin_boolean() -> FinSys {
    FinSys {
        label: "boolean".into(),
        names: vec!["0".into(), "1".into()],
        add: vec![vec![0, 1], vec![1, 1]],
        mul: vec![vec![0, 0], vec![0, 1]],
        zero: 0,
        one: Some(1),
        tangibles: [1].into(),
        neg: vec![0, 1],
        surpass: SurpassSpec::Circ,
    }
}

/// Standard supertropical carrier over the saturated chain of magnitudes
/// `0..=k`: a tangible and a ghost copy of each magnitude plus zero.
/// Addition takes the larger magnitude, ghosting ties; multiplication adds
/// magnitudes, saturating at `k`, and a product that overflows the chain is
/// a ghost (this keeps the tables distributive: two products that collide
/// at the top tie into a ghost on either side of the law); ghosts absorb;
/// negation is the identity.
pub fn supertropical_chain(k: u32) -> FinSys {
    let mags: Vec<u32> = (0..=k).collect();
    let m = mags.len();
    // index 0 = zero, 1..=m tangibles, m+1..=2m ghosts
    let tang = |i: usize| 1 + i;
    let ghost = |i: usize| 1 + m + i;
    let mut names = vec!["-inf".to_string()];
    names.extend(mags.iter().map(|v| v.to_string()));
    names.extend(mags.iter().map(|v| format!("{v}v")));
    let n = 1 + 2 * m;
    let dec = |x: usize| -> Option<(usize, bool)> {
        // (magnitude index, is_ghost)
        if x == 0 {
            None
        } else if x <= m {
            Some((x - 1, false))
        } else {
            Some((x - 1 - m, true))
        }
    };
    let enc = |mi: usize, g: bool| if g { ghost(mi) } else { tang(mi) };
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            add[x][y] = match (dec(x), dec(y)) {
                (None, _) => y,
                (_, None) => x,
                (Some((a, ga)), Some((b, gb))) => {
                    if mags[a] > mags[b] {
                        enc(a, ga)
                    } else if mags[b] > mags[a] {
                        enc(b, gb)
                    } else {
                        // equal magnitudes ghost: a + a = a^o since (-) = id
                        let _ = (ga, gb);
                        enc(a, true)
                    }
                }
            };
            mul[x][y] = match (dec(x), dec(y)) {
                (None, _) | (_, None) => 0,
                (Some((a, ga)), Some((b, gb))) => {
                    let raw = mags[a] + mags[b];
                    let s = raw.min(k);
                    let si = mags.iter().position(|&v| v == s).unwrap();
                    enc(si, ga || gb || raw > k)
                }
            };
        }
    }
    FinSys {
        label: format!("supertropical_chain({k})"),
        names,
        add,
        mul,
        zero: 0,
        one: Some(tang(0)),
        tangibles: (0..m).map(tang).collect(),
        neg: (0..n).collect(),
        surpass: SurpassSpec::Circ,
    }
}

/// Max-plus over the saturated magnitude chain `0..=k`, viewed with
/// tangible set = all nonzero elements. This is a pseudo-triple: every
/// element is its own quasi-zero, so tangibles meet the quasi-zero set.
pub fn maxplus_chain(k: u32) -> FinSys {
    let m = (k + 1) as usize;
    let mut names = vec!["-inf".to_string()];
    names.extend((0..=k).map(|v| v.to_string()));
    let n = m + 1;
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            add[x][y] = x.max(y); // index order = magnitude order with 0 = -inf
            mul[x][y] = if x == 0 || y == 0 {
                0
            } else {
                ((x - 1 + y - 1) as u32).min(k) as usize + 1
            };
        }
    }
    FinSys {
        label: format!("maxplus_chain({k})"),
        names,
        add,
        mul,
        zero: 0,
        one: Some(1),
        tangibles: (1..n).collect(),
        neg: (0..n).collect(),
        surpass: SurpassSpec::Circ,
    }
}

/// The height-2 carrier of the second kind generated by a unit with
/// `e + 1 = -1`: elements {0, 1, -1, 2, e} where e = 1 + (-1), 2 = 1 + 1,
/// with 2 = -2 and e + e = 2. Multiplying by 2 or e lands in {2}∪{e}.
pub fn char4_carrier() -> FinSys {
    // indices: 0:"0", 1:"1", 2:"-1", 3:"2", 4:"e"
    let names = vec![
        "0".to_string(),
        "1".to_string(),
        "-1".to_string(),
        "2".to_string(),
        "e".to_string(),
    ];
    let add = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 3, 4, 1, 2],
        vec![2, 4, 3, 2, 1],
        vec![3, 1, 2, 3, 4],
        vec![4, 2, 1, 4, 3],
    ];
    let mul = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 2, 3, 4],
        vec![0, 2, 1, 3, 4],
        vec![0, 3, 3, 3, 3],
        vec![0, 4, 4, 3, 3],
    ];
    FinSys {
        label: "char4".into(),
        names,
        add,
        mul,
        zero: 0,
        one: Some(1),
        tangibles: [1, 2].into(),
        neg: vec![0, 2, 1, 3, 4],
        surpass: SurpassSpec::Circ,
    }
}

/// Symmetrization of a finite carrier: pairs with componentwise addition,
/// twist multiplication, and the switch negation. Tangibles are
/// `(T x {0}) ∪ ({0} x T)`.
pub fn fin_symmetrize(base: &FinSys) -> FinSys {
    let n = base.n();
    let idx = |a: usize, b: usize| a * n + b;
    let mut names = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            names.push(format!("({},{})", base.names[a], base.names[b]));
        }
    }
    let nn = n * n;
    let mut add = vec![vec![0; nn]; nn];
    let mut mul = vec![vec![0; nn]; nn];
    let mut neg = vec![0; nn];
    for a0 in 0..n {
        for a1 in 0..n {
            neg[idx(a0, a1)] = idx(a1, a0);
            for b0 in 0..n {
                for b1 in 0..n {
                    add[idx(a0, a1)][idx(b0, b1)] = idx(base.a(a0, b0), base.a(a1, b1));
                    mul[idx(a0, a1)][idx(b0, b1)] = idx(
                        base.a(base.m(a0, b0), base.m(a1, b1)),
                        base.a(base.m(a0, b1), base.m(a1, b0)),
                    );
                }
            }
        }
    }
    let z = base.zero;
    let mut tangibles = BTreeSet::new();
    for &t in &base.tangibles {
        tangibles.insert(idx(t, z));
        tangibles.insert(idx(z, t));
    }
    FinSys {
        label: format!("sym({})", base.label),
        names,
        add,
        mul,
        zero: idx(z, z),
        one: base.one.map(|o| idx(o, z)),
        tangibles,
        neg,
        surpass: SurpassSpec::Circ,
    }
}

/// Chain carrier helpers keep magnitudes integral; expose them as exact
/// rationals where callers need scalar views.
pub fn chain_mag(v: u32) -> Q {
    crate::rat::qi(v as i128)
}

pub fn describe_mag(v: &Q) -> String {
    fmt_q(v)
}

/// Multiplicative cancellativity: equal products with a common nonzero
/// factor force equal cofactors.
pub fn is_cancellative(fs: &FinSys) -> bool {
    (0..fs.n()).all(|a| {
        a == fs.zero
            || (0..fs.n()).all(|b| {
                (0..fs.n()).all(|c| fs.m(a, b) != fs.m(a, c) || b == c)
            })
    })
}
