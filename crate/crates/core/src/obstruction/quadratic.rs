use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Q};

/// A quadratic form `x -> x^T M x` over Q, stored by its symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormQ {
    matrix: Matrix,
}

impl QuadraticFormQ {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || !matrix.is_symmetric() {
            return Err(Error::Constraint(
                "Gram matrix must be square and symmetric".into(),
            ));
        }
        Ok(QuadraticFormQ { matrix })
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        QuadraticFormQ { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn evaluate(&self, x: &[Q]) -> Q {
        let mx = self.matrix.mul_vec(x).expect("vector length matches form");
        x.iter().zip(&mx).map(|(a, b)| a * b).sum()
    }

    /// Congruence diagonalization: returns `(d, P)` with `P^T M P = diag(d)`
    /// and `P` invertible. The columns of `P` form the diagonalizing basis.
    pub fn diagonalize(&self) -> (Vec<Q>, Matrix) {
        let n = self.dim();
        let mut m: Vec<Vec<Q>> = (0..n).map(|i| self.matrix.row(i).to_vec()).collect();
        let mut p: Vec<Vec<Q>> = (0..n)
            .map(|i| Matrix::identity(n).row(i).to_vec())
            .collect();
        // Column operation `col_j += c col_k` applied congruently (rows too).
        let add = |m: &mut Vec<Vec<Q>>, p: &mut Vec<Vec<Q>>, j: usize, k: usize, c: &Q| {
            for row in m.iter_mut() {
                let v = &row[k] * c;
                row[j] += v;
            }
            let rk = m[k].clone();
            for (x, y) in m[j].iter_mut().zip(&rk) {
                *x += y * c;
            }
            for row in p.iter_mut() {
                let v = &row[k] * c;
                row[j] += v;
            }
        };
        for k in 0..n {
            if m[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    for row in p.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    add(&mut m, &mut p, k, j, &Q::one());
                } else {
                    continue;
                }
            }
            for j in k + 1..n {
                if m[j][k].is_zero() {
                    continue;
                }
                let c = -(&m[j][k] / &m[k][k]);
                add(&mut m, &mut p, j, k, &c);
            }
        }
        let d = (0..n).map(|i| m[i][i].clone()).collect();
        let p = Matrix::from_rows(n, p).expect("square");
        (d, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Witness {
    Vector(Vec<String>),
    Description(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureIsotropy {
    pub exists: bool,
    pub witness: Option<Witness>,
}

/// Rational vector scaled to a primitive integer vector whose first nonzero
/// entry is positive.
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

fn to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

fn first_kernel_vector(m: &Matrix) -> Option<Vec<Q>> {
    m.kernel_basis().vectors.into_iter().next()
}

/// Decides isotropy over an algebraically closed field of characteristic 0:
/// a nonzero isotropic vector exists iff `dim >= 2`, or `dim >= 1` and the
/// form vanishes.
pub fn isotropic_over_closure(q: &QuadraticFormQ) -> ClosureIsotropy {
    let n = q.dim();
    if n == 0 {
        return ClosureIsotropy {
            exists: false,
            witness: None,
        };
    }
    if let Some(v) = first_kernel_vector(q.matrix()) {
        let w = primitive_integer(&v)
            .iter()
            .map(BigInt::to_string)
            .collect();
        return ClosureIsotropy {
            exists: true,
            witness: Some(Witness::Vector(w)),
        };
    }
    if n == 1 {
        return ClosureIsotropy {
            exists: false,
            witness: None,
        };
    }
    let (d, _) = q.diagonalize();
    let ratio = -(&d[0] / &d[1]);
    ClosureIsotropy {
        exists: true,
        witness: Some(Witness::Description(format!(
            "x1 = 1, x2 = sqrt({ratio}) in a diagonalizing basis"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyQ {
    Yes(Vec<BigInt>),
    No,
    Undetermined,
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// Decides whether `q` has a nonzero rational isotropic vector. Exact when
/// the form is degenerate, definite, or binary; otherwise searches primitive
/// integer vectors of height at most `search_height` and reports
/// `Undetermined` on a miss.
pub fn isotropic_over_q(q: &QuadraticFormQ, search_height: u64) -> Result<IsotropyQ> {
    if search_height == 0 {
        return Err(Error::Constraint("search height must be at least 1".into()));
    }
    let n = q.dim();
    if n == 0 {
        return Ok(IsotropyQ::No);
    }
    let (d, p) = q.diagonalize();
    let answer = if d.iter().any(Zero::is_zero) {
        let v = first_kernel_vector(q.matrix()).expect("singular form has a kernel");
        IsotropyQ::Yes(primitive_integer(&v))
    } else if d.iter().all(|x| x.is_positive()) || d.iter().all(|x| x.is_negative()) {
        IsotropyQ::No
    } else if n == 2 {
        match rational_sqrt(&-(&d[0] / &d[1])) {
            Some(t) => IsotropyQ::Yes(primitive_integer(&p.mul_vec(&[Q::one(), t])?)),
            None => IsotropyQ::No,
        }
    } else {
        match brute_force(q, search_height) {
            Some(v) => IsotropyQ::Yes(v),
            None => IsotropyQ::Undetermined,
        }
    };
    if let IsotropyQ::Yes(v) = &answer {
        if !q.evaluate(&to_q(v)).is_zero() {
            return Err(Error::Certification(
                "isotropic witness does not vanish".into(),
            ));
        }
    }
    Ok(answer)
}

fn integer_gram(q: &QuadraticFormQ) -> Option<Vec<Vec<i128>>> {
    let n = q.dim();
    let l = q
        .matrix()
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Q::from_integer(l);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (q.matrix().get(i, j) * &scale)
                        .to_integer()
                        .to_i64()
                        .map(i128::from)
                })
                .collect()
        })
        .collect()
}

/// Smallest-height primitive isotropic vector with first nonzero entry
/// positive; ties broken lexicographically.
fn brute_force(q: &QuadraticFormQ, height: u64) -> Option<Vec<BigInt>> {
    let gram = integer_gram(q)?;
    let n = gram.len();
    let value = |x: &[i64]| -> i128 {
        let mut s = 0i128;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i128;
            for j in 0..n {
                row += gram[i][j] * x[j] as i128;
            }
            s += row * x[i] as i128;
        }
        s
    };
    for h in 1..=height as i64 {
        // Shell max|x| = h, split by the first index p with |x_p| = h.
        let best = (0..n)
            .into_par_iter()
            .flat_map_iter(|p| {
                let before = (2 * h - 1) as u128;
                let after = (2 * h + 1) as u128;
                let count = before.pow(p as u32) * after.pow((n - p - 1) as u32);
                (0..count).map(move |idx| (p, idx))
            })
            .filter_map(|(p, mut idx)| {
                let mut x = vec![0i64; n];
                for i in (0..n).rev() {
                    if i == p {
                        continue;
                    }
                    let (lo, width) = if i < p {
                        (-(h - 1), 2 * h - 1)
                    } else {
                        (-h, 2 * h + 1)
                    };
                    x[i] = lo + (idx % width as u128) as i64;
                    idx /= width as u128;
                }
                // First nonzero entry positive: x_p = h if nothing before p is nonzero.
                let lead_before = x[..p].iter().find(|&&v| v != 0).copied();
                x[p] = match lead_before {
                    Some(v) if v < 0 => return None,
                    Some(_) => h,
                    None => h,
                };
                let candidates = if lead_before.is_some() {
                    vec![h, -h]
                } else {
                    vec![h]
                };
                candidates
                    .into_iter()
                    .map(|xp| {
                        let mut y = x.clone();
                        y[p] = xp;
                        y
                    })
                    .filter(|y| y.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1 && value(y) == 0)
                    .min()
            })
            .min();
        if let Some(v) = best {
            return Some(v.into_iter().map(BigInt::from).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn binary_forms() {
        let f = QuadraticFormQ::diagonal(&[q(1), q(1)]);
        assert_eq!(isotropic_over_q(&f, 100).unwrap(), IsotropyQ::No);
        let f = QuadraticFormQ::diagonal(&[q(1), q(-1)]);
        assert_eq!(
            isotropic_over_q(&f, 100).unwrap(),
            IsotropyQ::Yes(ints(&[1, 1]))
        );
        let f = QuadraticFormQ::diagonal(&[q(2), q(-3)]);
        assert_eq!(isotropic_over_q(&f, 100).unwrap(), IsotropyQ::No);
        let f = QuadraticFormQ::diagonal(&[q(1), q(-4)]);
        assert_eq!(
            isotropic_over_q(&f, 100).unwrap(),
            IsotropyQ::Yes(ints(&[2, 1]))
        );
    }

    #[test]
    fn degenerate_and_search() {
        let f = QuadraticFormQ::diagonal(&[q(1), q(0)]);
        assert_eq!(
            isotropic_over_q(&f, 1).unwrap(),
            IsotropyQ::Yes(ints(&[0, 1]))
        );
        // x^2 + y^2 - 2 z^2: smallest witness in lexicographic order.
        let f = QuadraticFormQ::diagonal(&[q(1), q(1), q(-2)]);
        assert_eq!(
            isotropic_over_q(&f, 5).unwrap(),
            IsotropyQ::Yes(ints(&[1, -1, -1]))
        );
        // x^2 + y^2 - 3 z^2 is anisotropic, so the search can only miss.
        let f = QuadraticFormQ::diagonal(&[q(1), q(1), q(-3)]);
        assert_eq!(isotropic_over_q(&f, 10).unwrap(), IsotropyQ::Undetermined);
        assert!(isotropic_over_q(&f, 0).is_err());
    }

    #[test]
    fn closure_rule() {
        assert!(isotropic_over_closure(&QuadraticFormQ::diagonal(&[q(1), q(1)])).exists);
        assert!(!isotropic_over_closure(&QuadraticFormQ::diagonal(&[q(1)])).exists);
        let z = isotropic_over_closure(&QuadraticFormQ::diagonal(&[q(0)]));
        assert_eq!(z.witness, Some(Witness::Vector(vec!["1".into()])));
    }

    #[test]
    fn diagonalization_is_congruence() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let f = QuadraticFormQ::new(m.clone()).unwrap();
        let (d, p) = f.diagonalize();
        let prod = p.transpose().mul(&m).unwrap().mul(&p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { d[i].clone() } else { q(0) };
                assert_eq!(*prod.get(i, j), want);
            }
        }
        assert_eq!(p.rank(), 3);
    }

    #[test]
    fn primitive_scaling() {
        assert_eq!(
            primitive_integer(&[Q::new((-1).into(), 2.into()), q(3)]),
            ints(&[1, -6])
        );
    }
}
