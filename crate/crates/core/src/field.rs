//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields
//! GF(p), selectable at runtime.
//!
//! The computational engine is generic over [`Field`], a structure object that
//! owns the arithmetic for its element type (plain `u64` residues for GF(p),
//! [`BigRational`] for the rationals). [`FieldScalar`] is the dynamic,
//! tag-checked scalar used at API boundaries.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Runtime identification of the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl FieldTag {
    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }

    /// Parses the CLI field selector: `q` or `gf:101`.
    pub fn parse(s: &str) -> Result<FieldTag> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldTag::Rational);
        }
        if let Some(rest) = s.strip_prefix("gf:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field spec `{s}`")))?;
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            return Ok(FieldTag::Prime(p));
        }
        Err(Error::Parse(format!(
            "bad field spec `{s}` (expected `q` or `gf:<p>`)"
        )))
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "q"),
            FieldTag::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A row of an echelon basis: `entries[col] == 1` and all entries before
/// `col` are zero.
pub struct PivotRow<E> {
    pub col: usize,
    pub entries: Vec<E>,
}

/// Exact field arithmetic as a structure object; elements are plain data.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn tag(&self) -> FieldTag;
    fn characteristic(&self) -> u64 {
        self.tag().characteristic()
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn scalar_from(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn render(&self, a: &Self::Elem) -> String;

    /// Reduces `row` in place against normalized echelon rows sorted by pivot
    /// column. After the call every entry of `row` at a pivot column is zero.
    ///
    /// The default walks the pivots with one `sub`/`mul` pair per entry;
    /// fields may override it with a faster kernel.
    fn reduce_row(&self, row: &mut [Self::Elem], pivots: &[PivotRow<Self::Elem>]) {
        for pr in pivots {
            let f = row[pr.col].clone();
            if self.is_zero(&f) {
                continue;
            }
            row[pr.col] = self.zero();
            for j in (pr.col + 1)..row.len() {
                if !self.is_zero(&pr.entries[j]) {
                    row[j] = self.sub(&row[j], &self.mul(&f, &pr.entries[j]));
                }
            }
        }
    }
}

/// The prime field GF(p), elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf {
    p: u64,
}

impl Gf {
    /// `p` must be a prime below 2^31 so products of residues fit in `u64`.
    pub fn new(p: u64) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::Parse(format!("modulus {p} too large (need p < 2^31)")));
        }
        Ok(Gf { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn inv_u64(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        let t = t.rem_euclid(self.p as i128);
        Ok(t as u64)
    }
}

impl Field for Gf {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn scalar_from(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        self.inv_u64(*a)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn reduce_row(&self, row: &mut [u64], pivots: &[PivotRow<u64>]) {
        let p = self.p;
        if p < 1 << 16 {
            // Lazy reduction: accumulate `f * (p - e)` without a modulus per
            // entry. Products are < 2^32 and at most `cols` of them are added
            // into one slot, so sums stay far below u64::MAX.
            for pr in pivots {
                let f = row[pr.col] % p;
                row[pr.col] = 0;
                if f == 0 {
                    continue;
                }
                let (cut, entries) = (pr.col + 1, &pr.entries);
                for (slot, e) in row[cut..].iter_mut().zip(&entries[cut..]) {
                    *slot += f * (p - e);
                }
            }
            for v in row.iter_mut() {
                *v %= p;
            }
        } else {
            for pr in pivots {
                let f = row[pr.col] % p;
                row[pr.col] = 0;
                if f == 0 {
                    continue;
                }
                for j in (pr.col + 1)..row.len() {
                    let e = pr.entries[j];
                    if e != 0 {
                        row[j] = (row[j] + f * (p - e)) % p;
                    }
                }
            }
            for v in row.iter_mut() {
                *v %= p;
            }
        }
    }
}

/// The field of rationals; elements are arbitrary-precision fractions kept in
/// lowest terms with positive denominator (enforced by `BigRational` itself).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn scalar_from(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// A dynamically tagged exact scalar: used where values of runtime-selected
/// fields meet (parsing, display, spot checks). Mixing tags is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldScalar {
    Rational(BigRational),
    Prime { p: u64, value: u64 },
}

impl FieldScalar {
    pub fn rational(num: i64, den: i64) -> Result<FieldScalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldScalar::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn prime(p: u64, value: i64) -> Result<FieldScalar> {
        let f = Gf::new(p)?;
        Ok(FieldScalar::Prime {
            p,
            value: f.scalar_from(value),
        })
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            FieldScalar::Rational(_) => FieldTag::Rational,
            FieldScalar::Prime { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Prime { value, .. } => *value == 0,
        }
    }

    fn binop(
        &self,
        rhs: &FieldScalar,
        fq: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(&Gf, &u64, &u64) -> u64,
    ) -> Result<FieldScalar> {
        match (self, rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => {
                Ok(FieldScalar::Rational(fq(a, b)))
            }
            (FieldScalar::Prime { p, value: a }, FieldScalar::Prime { p: q, value: b })
                if p == q =>
            {
                let f = Gf::new(*p)?;
                Ok(FieldScalar::Prime {
                    p: *p,
                    value: fp(&f, a, b),
                })
            }
            _ => Err(Error::FieldMismatch(self.tag(), rhs.tag())),
        }
    }

    pub fn add(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.binop(rhs, |a, b| a + b, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.binop(rhs, |a, b| a - b, |f, a, b| f.sub(a, b))
    }

    pub fn mul(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.binop(rhs, |a, b| a * b, |f, a, b| f.mul(a, b))
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        match self {
            FieldScalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldScalar::Rational(a.recip()))
                }
            }
            FieldScalar::Prime { p, value } => {
                let f = Gf::new(*p)?;
                Ok(FieldScalar::Prime {
                    p: *p,
                    value: f.inv(value)?,
                })
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf_basics() {
        let f7 = Gf::new(7).unwrap();
        assert_eq!(f7.add(&5, &4), 2);
        assert_eq!(f7.inv(&3).unwrap(), 5);
        let f5 = Gf::new(5).unwrap();
        assert_eq!(f5.inv(&4).unwrap(), 4);
        let f2 = Gf::new(2).unwrap();
        assert_eq!(f2.add(&1, &1), 0);
        assert_eq!(f7.inv(&0), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_basics() {
        let q = Rationals;
        let half = FieldScalar::rational(1, 2).unwrap();
        let third = FieldScalar::rational(1, 3).unwrap();
        assert_eq!(
            half.add(&third).unwrap(),
            FieldScalar::rational(5, 6).unwrap()
        );
        let two_thirds = FieldScalar::rational(2, 3).unwrap();
        assert_eq!(
            two_thirds.inv().unwrap(),
            FieldScalar::rational(3, 2).unwrap()
        );
        assert!(q.is_zero(&q.sub(&q.one(), &q.one())));
    }

    #[test]
    fn characteristics() {
        assert_eq!(FieldTag::Rational.characteristic(), 0);
        assert_eq!(FieldTag::Prime(2).characteristic(), 2);
        assert_eq!(FieldTag::Prime(101).characteristic(), 101);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldTag::parse("q").unwrap(), FieldTag::Rational);
        assert_eq!(FieldTag::parse("gf:101").unwrap(), FieldTag::Prime(101));
        assert_eq!(FieldTag::parse("gf:6"), Err(Error::NotPrime(6)));
        assert!(FieldTag::parse("f64").is_err());
    }

    #[test]
    fn mixed_tags_are_rejected() {
        let a = FieldScalar::prime(7, 3).unwrap();
        let b = FieldScalar::prime(5, 3).unwrap();
        let c = FieldScalar::rational(1, 1).unwrap();
        assert_eq!(
            a.add(&b),
            Err(Error::FieldMismatch(FieldTag::Prime(7), FieldTag::Prime(5)))
        );
        assert!(matches!(a.mul(&c), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn inv_is_two_sided_for_small_primes() {
        for p in [2u64, 3, 5, 7, 101] {
            let f = Gf::new(p).unwrap();
            for a in 1..p {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), f.one());
                assert_eq!(f.mul(&inv, &a), f.one());
            }
        }
    }

    #[test]
    fn ring_axioms_hold_on_sampled_triples() {
        // a deterministic walk through each field's elements
        let f = Gf::new(101).unwrap();
        let q = Rationals;
        let mut x = 7u64;
        let mut next = || {
            x = (x * 31 + 17) % 1009;
            x
        };
        for _ in 0..200 {
            let (a, b, c) = (next() % 101, next() % 101, next() % 101);
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&a, &b), f.mul(&b, &a));

            let (qa, qb, qc) = (
                q.scalar_from(next() as i64 - 500),
                q.scalar_from(next() as i64 - 500),
                q.scalar_from(next() as i64 - 500),
            );
            assert_eq!(
                q.mul(&qa, &q.add(&qb, &qc)),
                q.add(&q.mul(&qa, &qb), &q.mul(&qa, &qc))
            );
        }
    }
}
