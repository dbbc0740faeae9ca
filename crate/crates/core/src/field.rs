//! Exact coefficient fields and sparse rank computation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field for homology: a prime field `GF(p)` or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(2)
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // products must fit in u64
        if p > u32::MAX as u64 {
            return Err(Error::Invalid(format!("prime {p} too large")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Rank of an integer matrix given as sparse rows of `(column, entry)`.
    pub fn rank(self, rows: &[Vec<(usize, i64)>]) -> usize {
        match self {
            FieldSpec::Prime(p) => sparse_rank(&PrimeField(p), rows),
            FieldSpec::Rational => sparse_rank(&Rationals, rows),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts a prime (`"2"`, `"GF(3)"`) or `"Q"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Invalid(format!("field must be a prime or Q, got {s:?}")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

trait Field {
    type Elem: Clone;
    fn embed(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

struct PrimeField(u64);

impl Field for PrimeField {
    type Elem = u64;

    fn embed(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut exp, mut acc) = (*a, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            exp >>= 1;
        }
        acc
    }
}

struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn embed(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

type SparseRow<E> = Vec<(usize, E)>;

/// `a - factor * b` on sorted sparse rows.
fn axpy<F: Field>(f: &F, a: &SparseRow<F::Elem>, factor: &F::Elem, b: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = f.sub(&f.embed(0), &f.mul(factor, &b[j].1));
            if !f.is_zero(&v) {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(factor, &b[j].1));
            if !f.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row reduction by leading column: each incoming row is reduced against the
/// pivot rows until its leading column is new or it vanishes.
fn sparse_rank<F: Field>(f: &F, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    for raw in rows {
        let mut row: SparseRow<F::Elem> = {
            let mut r: Vec<(usize, F::Elem)> = raw
                .iter()
                .map(|&(c, v)| (c, f.embed(v)))
                .filter(|(_, v)| !f.is_zero(v))
                .collect();
            r.sort_by_key(|e| e.0);
            r
        };
        while let Some((lead, lead_val)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = f.mul(&lead_val, &f.inv(&p[0].1));
                    row = axpy(f, &row, &factor, p);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<(usize, i64)>> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, v)| (c, *v)).collect())
            .collect()
    }

    #[test]
    fn parse_fields() {
        assert_eq!("2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("GF(3)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("4".parse::<FieldSpec>().is_err());
        assert!("x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2
        let m = dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(FieldSpec::Prime(2).rank(&m), 1);
        assert_eq!(FieldSpec::Prime(3).rank(&m), 2);
        assert_eq!(FieldSpec::Rational.rank(&m), 2);
    }

    #[test]
    fn rank_of_boundary_of_triangle() {
        // edges 01, 02, 12 -> vertices
        let m = dense(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        for f in [FieldSpec::Prime(2), FieldSpec::Prime(5), FieldSpec::Rational] {
            assert_eq!(f.rank(&m), 2);
        }
        assert_eq!(FieldSpec::Prime(2).rank(&[]), 0);
        assert_eq!(FieldSpec::Prime(2).rank(&dense(&[&[0, 0]])), 0);
    }

    #[test]
    fn rank_matches_dense_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-2..3)).collect()).collect();
            let refs: Vec<&[i64]> = m.iter().map(|v| v.as_slice()).collect();
            let sparse = dense(&refs);
            assert_eq!(FieldSpec::Rational.rank(&sparse), dense_rank_q(&m));
        }
    }

    fn dense_rank_q(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
        let cols = a.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| a[i][c].abs() > 1e-9) else { continue };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank {
                    let k = a[i][c] / a[rank][c];
                    let pivot = a[rank].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot) {
                        *x -= k * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
