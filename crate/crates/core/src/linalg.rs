//! Square matrices over a carrier with total multiplication. Determinants
//! are signed permutation sums: the negation map stands in for the sign of
//! odd permutations, and no elimination is ever attempted because semiring
//! carriers lack cancellation.

use crate::error::{Error, Result};
use crate::system::System;
use crate::value::Value;

pub const MAX_DET_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub sys: System,
    pub entries: Vec<Vec<Value>>,
}

impl Matrix {
    pub fn new(sys: System, entries: Vec<Vec<Value>>) -> Result<Matrix> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::BadInput("matrix must be square and nonempty".into()));
        }
        for row in &entries {
            for v in row {
                sys.validate(v)?;
            }
        }
        Ok(Matrix { sys, entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    fn minor(&self, row: usize, col: usize) -> Matrix {
        let entries: Vec<Vec<Value>> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        Matrix { sys: self.sys.clone(), entries }
    }
}

fn sum(sys: &System, terms: impl IntoIterator<Item = Value>) -> Value {
    let mut acc = sys.zero();
    for t in terms {
        acc = sys.add(&acc, &t);
    }
    acc
}

/// Signed permutation sum: over every permutation, the product of the
/// selected entries, negated for odd permutations. Heap's algorithm keeps
/// track of parity through adjacent transpositions.
pub fn neg_det(m: &Matrix) -> Result<Value> {
    let n = m.n();
    if n > MAX_DET_DIM {
        return Err(Error::DimensionTooLarge(n, MAX_DET_DIM));
    }
    let sys = &m.sys;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    let term = |perm: &[usize], odd: bool| -> Value {
        let mut p = sys.one().expect("determinants need a unit");
        for (i, &j) in perm.iter().enumerate() {
            p = sys.mul(&p, &m.entries[i][j]);
        }
        if odd {
            sys.negate(&p)
        } else {
            p
        }
    };
    let mut acc = term(&perm, odd);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            acc = sys.add(&acc, &term(&perm, odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(acc)
}

/// Determinant of the (j,i) minor, without the expansion sign.
pub fn raw_minor_det(m: &Matrix, i: usize, j: usize) -> Result<Value> {
    neg_det(&m.minor(j, i))
}

/// Adjoint with the expansion signs folded in: entry (i,j) is
/// `(-)^(i+j)` times the determinant of the (j,i) minor, so a row
/// expansion against the original matrix recovers the determinant without
/// further signs.
pub fn neg_adjoint(m: &Matrix) -> Result<Matrix> {
    let n = m.n();
    if n < 2 {
        return Err(Error::BadInput("adjoint needs dimension >= 2".into()));
    }
    if n > MAX_DET_DIM {
        return Err(Error::DimensionTooLarge(n, MAX_DET_DIM));
    }
    let sys = &m.sys;
    let mut entries = vec![vec![sys.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = raw_minor_det(m, i, j)?;
            entries[i][j] = if (i + j) % 2 == 1 { sys.negate(&d) } else { d };
        }
    }
    Ok(Matrix { sys: sys.clone(), entries })
}

/// Row expansion `sum_j adj(j,i) * a(i,j)` equals the determinant; the
/// expansion signs live inside the adjoint.
pub fn laplace_expansion_check(m: &Matrix, row: usize) -> Result<bool> {
    let n = m.n();
    if row >= n {
        return Err(Error::BadInput(format!("row {row} out of range")));
    }
    let det = neg_det(m)?;
    let expansion = if n == 1 {
        m.entries[0][0].clone()
    } else {
        let adj = neg_adjoint(m)?;
        sum(
            &m.sys,
            (0..n).map(|j| m.sys.mul(&adj.entries[j][row], &m.entries[row][j])),
        )
    };
    Ok(expansion == det)
}

pub const MAX_VANDERMONDE: usize = 6;

/// Rows `[1, a_i, a_i^2, ...]` for the given points.
pub fn vandermonde(sys: &System, points: &[Value]) -> Result<Matrix> {
    let n = points.len();
    if n == 0 || n > MAX_VANDERMONDE {
        return Err(Error::DimensionTooLarge(n, MAX_VANDERMONDE));
    }
    let one = sys.one().ok_or(Error::NoUnit)?;
    let mut entries = Vec::with_capacity(n);
    for a in points {
        sys.validate(a)?;
        let mut row = Vec::with_capacity(n);
        let mut p = one.clone();
        for _ in 0..n {
            row.push(p.clone());
            p = sys.mul(&p, a);
        }
        entries.push(row);
    }
    Ok(Matrix { sys: sys.clone(), entries })
}

/// `det V(a_1..a_n) = prod_{i>j} (a_i (-) a_j)`, checked by exact
/// equality. The factor orientation is the one the determinant itself
/// produces; when the negation map is the identity it coincides with the
/// reversed reading as well.
pub fn vandermonde_identity_check(sys: &System, points: &[Value]) -> Result<bool> {
    let v = vandermonde(sys, points)?;
    let det = neg_det(&v)?;
    let mut prod = sys.one().ok_or(Error::NoUnit)?;
    for i in 0..points.len() {
        for j in 0..i {
            let factor = sys.add(&points[i], &sys.negate(&points[j]));
            prod = sys.mul(&prod, &factor);
        }
    }
    Ok(det == prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;
    use itertools::Itertools;

    fn t(n: i128) -> Value {
        Value::Tangible(qi(n))
    }

    /// Independent permutation enumerator: lexicographic permutations with
    /// parity computed by counting inversions.
    fn det_oracle(m: &Matrix) -> Value {
        let n = m.n();
        let sys = &m.sys;
        let mut acc = sys.zero();
        for perm in (0..n).permutations(n) {
            let inversions = (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut p = sys.one().unwrap();
            for (i, &j) in perm.iter().enumerate() {
                p = sys.mul(&p, &m.entries[i][j]);
            }
            if inversions % 2 == 1 {
                p = sys.negate(&p);
            }
            acc = sys.add(&acc, &p);
        }
        acc
    }

    #[test]
    fn one_by_one() {
        let sys = System::supertropical();
        let m = Matrix::new(sys, vec![vec![t(7)]]).unwrap();
        assert_eq!(neg_det(&m).unwrap(), t(7));
        assert!(laplace_expansion_check(&m, 0).unwrap());
    }

    #[test]
    fn supertropical_two_by_two_ghosts() {
        let sys = System::supertropical();
        let m = Matrix::new(
            sys,
            vec![vec![t(1), t(2)], vec![t(3), t(4)]],
        )
        .unwrap();
        // (1+4) (-) (2+3): both 5, (-) = id, so the sum ghosts
        assert_eq!(neg_det(&m).unwrap(), Value::Ghost(qi(5)));
        assert_eq!(neg_det(&m).unwrap(), det_oracle(&m));
        // adjoint of [[1,2],[3,4]] is [[4,2],[3,1]] since (-) = id
        let adj = neg_adjoint(&m).unwrap();
        assert_eq!(
            adj.entries,
            vec![vec![t(4), t(2)], vec![t(3), t(1)]]
        );
        assert!(laplace_expansion_check(&m, 0).unwrap());
        assert!(laplace_expansion_check(&m, 1).unwrap());
    }

    #[test]
    fn symmetrized_det_reconstructs() {
        let sys = System::symmetrize(&System::maxplus());
        let e = |n: i128| Value::pair(t(n), Value::Zero);
        let m = Matrix::new(
            sys,
            vec![vec![e(1), e(2)], vec![e(3), e(4)]],
        )
        .unwrap();
        let d = neg_det(&m).unwrap();
        assert_eq!(d, Value::pair(t(5), t(5)));
        assert_eq!(d, det_oracle(&m));
    }

    #[test]
    fn classical_adjoint_shape() {
        // over the symmetrized booleans the 2x2 adjoint has the classical
        // [[d,-b],[-c,a]] shape
        let sys = System::symmetrize(&System::boolean());
        let b = System::boolean();
        let one = b.one().unwrap();
        let a = Value::pair(one.clone(), b.zero());
        let zz = Value::pair(b.zero(), b.zero());
        let m = Matrix::new(sys.clone(), vec![vec![a.clone(), zz.clone()], vec![zz.clone(), a.clone()]])
            .unwrap();
        let adj = neg_adjoint(&m).unwrap();
        assert_eq!(adj.entries[0][0], a);
        assert_eq!(adj.entries[0][1], sys.negate(&zz));
        assert_eq!(adj.entries[1][1], a);
    }

    #[test]
    fn diagonal_identity_adjoint_is_self() {
        let sys = System::supertropical();
        let one = sys.one().unwrap();
        let z = sys.zero();
        let rows = vec![
            vec![one.clone(), z.clone(), z.clone()],
            vec![z.clone(), one.clone(), z.clone()],
            vec![z.clone(), z.clone(), one.clone()],
        ];
        let m = Matrix::new(sys, rows.clone()).unwrap();
        let adj = neg_adjoint(&m).unwrap();
        assert_eq!(adj.entries, rows);
    }

    #[test]
    fn vandermonde_identities() {
        let sys = System::supertropical();
        // distinct points: det V(1,3) = 3 (-) 1 = 3 tangible
        assert!(vandermonde_identity_check(&sys, &[t(1), t(3)]).unwrap());
        let v = vandermonde(&sys, &[t(1), t(3)]).unwrap();
        assert_eq!(neg_det(&v).unwrap(), t(3));
        // equal points force a ghost on both sides
        assert!(vandermonde_identity_check(&sys, &[t(2), t(2)]).unwrap());
        let v = vandermonde(&sys, &[t(2), t(2)]).unwrap();
        assert_eq!(neg_det(&v).unwrap(), Value::Ghost(qi(2)));
        // single point: both sides are the unit
        assert!(vandermonde_identity_check(&sys, &[t(9)]).unwrap());
    }

    #[test]
    fn random_matrices_match_oracle() {
        let sys = System::supertropical();
        let mut rng = crate::seeded(11);
        for n in 1..=4 {
            for _ in 0..40 {
                let entries: Vec<Vec<Value>> = (0..n)
                    .map(|_| (0..n).map(|_| sys.sample(&mut rng)).collect())
                    .collect();
                let m = Matrix::new(sys.clone(), entries).unwrap();
                assert_eq!(neg_det(&m).unwrap(), det_oracle(&m));
                for row in 0..n {
                    assert!(laplace_expansion_check(&m, row).unwrap());
                }
            }
        }
    }

    #[test]
    fn dimension_guard() {
        let sys = System::boolean();
        let z = sys.zero();
        let n = MAX_DET_DIM + 1;
        let m = Matrix::new(sys, vec![vec![z; n]; n]).unwrap();
        assert!(matches!(neg_det(&m), Err(Error::DimensionTooLarge(_, _))));
    }
}
