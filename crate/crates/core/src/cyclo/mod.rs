//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the smallest field `Q(ζ_n)` containing it,
//! as rational coordinates in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`.
//! The conductor `n` is never `2 mod 4`, since `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`.

mod field;
mod sum;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::small_primes_dividing;
use crate::error::{Error, Result};
pub use field::{field, FieldData, PowerCoords};
pub use sum::CycloSum;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    coords: Vec<BigRational>,
}

/// Summary of the rationality predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub is_rational: bool,
    pub is_real: bool,
    pub as_rational: Option<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Cyclotomic::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coords: vec![q],
        }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: i64, k: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::InvalidSpec(format!("root of unity of order {n}")));
        }
        let e = k.rem_euclid(n) as usize;
        let mut dense = vec![0i64; n as usize];
        dense[e] = 1;
        Ok(Cyclotomic::from_dense_int(n as u64, &dense))
    }

    /// `Σ_e dense[e]·ζ_n^e` for an integer vector of length `n`.
    pub fn from_dense_int(n: u64, dense: &[i64]) -> Self {
        assert_eq!(dense.len() as u64, n);
        let f = field(n);
        let coords = f
            .reduce_dense_int(dense)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Cyclotomic::normalized(n, coords)
    }

    /// `Σ_e dense[e]·ζ_n^e` for a rational vector of length `n`.
    pub fn from_dense(n: u64, dense: Vec<BigRational>) -> Self {
        assert_eq!(dense.len() as u64, n);
        let coords = field(n).reduce_dense(dense);
        Cyclotomic::normalized(n, coords)
    }

    /// Builds from power-basis coordinates of `Q(ζ_n)` and minimizes the
    /// conductor.
    pub fn from_coords(n: u64, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), field(n).phi);
        Cyclotomic::normalized(n, coords)
    }

    fn normalized(mut n: u64, mut coords: Vec<BigRational>) -> Self {
        'outer: loop {
            if n == 1 {
                break;
            }
            for p in small_primes_dividing(n) {
                if (n / p) % p == 0 {
                    // Q(ζ_{n/p}) is spanned by the basis powers divisible by p.
                    if coords.iter().enumerate().all(|(i, c)| i as u64 % p == 0 || c.is_zero()) {
                        coords = coords.into_iter().step_by(p as usize).collect();
                        n /= p;
                        continue 'outer;
                    }
                } else if let Some(w) = field::descent(n, p).apply(&coords) {
                    coords = w;
                    n /= p;
                    continue 'outer;
                }
            }
            break;
        }
        Cyclotomic {
            conductor: n,
            coords,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coords[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coords[0])
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_integer().and_then(|z| z.to_i64())
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || self.conj() == *self
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            is_rational: self.is_rational(),
            is_real: self.is_real(),
            as_rational: self.as_rational().cloned(),
        }
    }

    /// Coordinates re-expressed in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Vec<BigRational> {
        assert_eq!(m % self.conductor, 0, "lift target must be a multiple of the conductor");
        if m == self.conductor {
            return self.coords.clone();
        }
        let step = m / self.conductor;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                dense[i * step as usize] = c.clone();
            }
        }
        field(m).reduce_dense(dense)
    }

    /// The image under `ζ ↦ ζ^k`, for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(k.gcd(&n), 1, "Galois exponent must be coprime to the conductor");
        let mut dense = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                dense[(i as u64 * k % n) as usize] += c;
            }
        }
        Cyclotomic::from_dense(n, dense)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }

    /// Floating-point value, for sanity checks.
    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        let n = self.conductor as f64;
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    fn add_impl(&self, other: &Cyclotomic, negate: bool) -> Cyclotomic {
        if self.conductor == other.conductor {
            let coords = self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Cyclotomic::normalized(self.conductor, coords);
        }
        let m = self.conductor.lcm(&other.conductor);
        let a = self.lift(m);
        let b = other.lift(m);
        let coords = a
            .into_iter()
            .zip(b)
            .map(|(a, b)| if negate { a - b } else { a + b })
            .collect();
        Cyclotomic::normalized(m, coords)
    }

    fn mul_impl(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return other.scale(&self.coords[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coords[0]);
        }
        let m = self.conductor.lcm(&other.conductor);
        let (sa, sb) = (m / self.conductor, m / other.conductor);
        let mut dense = vec![BigRational::zero(); m as usize];
        for (i, a) in self.coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coords.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let e = (i as u64 * sa + j as u64 * sb) % m;
                dense[e as usize] += a * b;
            }
        }
        Cyclotomic::from_dense(m, dense)
    }

    /// Multiplicative inverse of a nonzero value, via the norm: the product of
    /// the other Galois conjugates divided by the (rational) norm.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclotomic::from_rational(q.recip()));
        }
        let n = self.conductor;
        let mut others = Cyclotomic::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k as i64);
            }
        }
        let norm = (&others * self).as_rational().cloned().expect("norm is rational");
        Some(others.scale(&norm.recip()))
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for deterministic sorting; not the order of real numbers
/// except among rationals.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl std::str::FromStr for Cyclotomic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

/// Parses the rendering grammar, reporting errors at `column` offsets.
pub fn parse_cyclotomic(s: &str) -> Result<Cyclotomic> {
    text::parse(s)
}

/// True if `q` is a nonnegative integer.
pub fn is_nonnegative_integer(q: &BigRational) -> bool {
    q.is_integer() && !q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(z(6, 3), Cyclotomic::from_int(-1));
        assert!(Cyclotomic::root_of_unity(0, 1).is_err());
        // ζ_6 = -ζ_3², so the conductor drops to 3.
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(6, 1), -z(3, 2));
    }

    #[test]
    fn ring_identities() {
        let w = z(3, 1);
        assert!((&(&w * &w) * &w).is_one());
        let s = &z(8, 1) + &z(8, 7);
        assert_eq!(&s * &s, Cyclotomic::from_int(2));
        let g = &z(5, 1) + &z(5, 4);
        assert!(g.is_real());
        assert!(!g.is_rational());
        // g is a root of x² + x - 1.
        assert!((&(&(&g * &g) + &g) - &Cyclotomic::one()).is_zero());
        assert!(!w.is_real());
    }

    #[test]
    fn predicates_of_rationals() {
        let p = Cyclotomic::from_int(5).predicates();
        assert_eq!(p, Predicates { is_rational: true, is_real: true, as_rational: Some(rat(5)) });
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in [2i64, 3, 4, 5, 6, 9, 12, 15, 20] {
            let s = (0..n).fold(Cyclotomic::zero(), |acc, k| &acc + &z(n, k));
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn conductor_is_minimal() {
        // i·√3 type values: ζ_12 + ζ_12^{-1} = √3, conductor 12.
        assert_eq!((&z(12, 1) + &z(12, 11)).conductor(), 12);
        // ζ_15^5 = ζ_3.
        assert_eq!(z(15, 5), z(3, 1));
        // ζ_9^3 = ζ_3.
        assert_eq!(z(9, 3).conductor(), 3);
        // √-7 = ζ_7 + ζ_7² + ζ_7⁴ - ζ_7³ - ζ_7⁵ - ζ_7⁶ squares to -7.
        let b7 = [1, 2, 4].iter().fold(Cyclotomic::zero(), |a, &k| &a + &z(7, k));
        let s = &(&b7 + &b7) + &Cyclotomic::one();
        assert_eq!(&s * &s, Cyclotomic::from_int(-7));
        for c in [3u64, 4, 5, 7, 8, 9, 12, 15, 20, 21, 28] {
            assert_ne!(c % 4, 2);
        }
    }

    #[test]
    fn inverse_and_complex_shadow() {
        let a = &z(5, 1) + &Cyclotomic::from_int(2);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        let c = z(8, 1).to_complex();
        assert!((c.re - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((c.im - 0.5f64.sqrt()).abs() < 1e-12);
    }

    fn arb_value() -> impl Strategy<Value = Cyclotomic> {
        let conductors = prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15]);
        (conductors, prop::collection::vec((-3i64..=3, 0i64..40), 1..4)).prop_map(|(n, terms)| {
            terms.into_iter().fold(Cyclotomic::zero(), |acc, (c, k)| {
                &acc + &Cyclotomic::root_of_unity(n as i64, k).unwrap().scale_int(c)
            })
        })
    }

    #[derive(Clone, Debug)]
    enum Expr {
        Leaf(Cyclotomic),
        Add(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
        Conj(Box<Expr>),
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        arb_value().prop_map(Expr::Leaf).prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                inner.prop_map(|a| Expr::Conj(Box::new(a))),
            ]
        })
    }

    fn eval(e: &Expr) -> (Cyclotomic, Complex64) {
        match e {
            Expr::Leaf(c) => (c.clone(), c.to_complex()),
            Expr::Add(a, b) => {
                let (x, fx) = eval(a);
                let (y, fy) = eval(b);
                (&x + &y, fx + fy)
            }
            Expr::Mul(a, b) => {
                let (x, fx) = eval(a);
                let (y, fy) = eval(b);
                (&x * &y, fx * fy)
            }
            Expr::Conj(a) => {
                let (x, fx) = eval(a);
                (x.conj(), fx.conj())
            }
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_value(), b in arb_value(), c in arb_value()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in arb_value(), b in arb_value()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert!((&a * &a.conj()).is_real());
        }

        #[test]
        fn normalization_is_idempotent(a in arb_value()) {
            let again = Cyclotomic::from_coords(a.conductor(), a.coords().to_vec());
            prop_assert_eq!(again, a);
        }

        #[test]
        fn lifting_commutes_with_arithmetic(a in arb_value(), b in arb_value(), k in 1u64..4) {
            let m = a.conductor().lcm(&b.conductor()) * k;
            let sum: Vec<BigRational> = a.lift(m).into_iter().zip(b.lift(m)).map(|(x, y)| x + y).collect();
            prop_assert_eq!(Cyclotomic::from_coords(m, sum), &a + &b);
        }

        #[test]
        fn exact_and_float_agree(e in arb_expr()) {
            let (exact, approx) = eval(&e);
            let diff = exact.to_complex() - approx;
            let scale = 1.0 + approx.norm();
            prop_assert!(diff.norm() <= 1e-9 * scale, "{} vs {}", exact, approx);
        }

        #[test]
        fn render_parse_roundtrip(a in arb_value()) {
            let s = a.to_string();
            prop_assert_eq!(parse_cyclotomic(&s).unwrap(), a);
        }
    }
}
