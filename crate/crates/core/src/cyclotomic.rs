//! Exact arithmetic in `Z[zeta_N]` for the conductors dividing 24.
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` with
//! `z = zeta_N`, fully reduced modulo the cyclotomic polynomial `Phi_N`. The
//! power basis is a `Z`-basis, so equality is coefficientwise and a rational
//! integer divides an element iff it divides every coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Every conductor with exact support.
pub const CONDUCTORS: [u32; 8] = [1, 2, 3, 4, 6, 8, 12, 24];

fn conductor_slot(n: u32) -> Option<usize> {
    CONDUCTORS.iter().position(|&c| c == n)
}

pub fn is_supported(n: u32) -> bool {
    conductor_slot(n).is_some()
}

pub fn check_conductor(n: u32) -> Result<()> {
    if is_supported(n) {
        Ok(())
    } else {
        Err(Error::ConductorTooLarge(n))
    }
}

/// `Phi_n`, low degree first.
pub fn cyclotomic_poly(n: u32) -> &'static [i64] {
    match n {
        1 => &[-1, 1],
        2 => &[1, 1],
        3 => &[1, 1, 1],
        4 => &[1, 0, 1],
        6 => &[1, -1, 1],
        8 => &[1, 0, 0, 0, 1],
        12 => &[1, 0, -1, 0, 1],
        24 => &[1, 0, 0, 0, -1, 0, 0, 0, 1],
        _ => panic!("unsupported conductor {n}"),
    }
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// `zeta_n^k` reduced to the power basis, for `k` in `0..n`.
fn power_table(n: u32) -> &'static [Vec<i64>] {
    static TABLES: [OnceLock<Vec<Vec<i64>>>; 8] = [const { OnceLock::new() }; 8];
    let slot = conductor_slot(n).unwrap_or_else(|| panic!("unsupported conductor {n}"));
    TABLES[slot].get_or_init(|| {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        let mut out = Vec::with_capacity(n as usize);
        for _ in 0..n {
            out.push(cur.clone());
            let mut next = vec![0i64; d + 1];
            next[1..].copy_from_slice(&cur);
            let top = next[d];
            for i in 0..d {
                next[i] -= top * phi[i];
            }
            next.truncate(d);
            cur = next;
        }
        out
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(n: u32) -> Self {
        CycInt {
            n,
            coeffs: vec![BigInt::zero(); euler_phi(n)],
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: u32, v: T) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = v.into();
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// `zeta_n^k`, for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let row = &power_table(n)[k.rem_euclid(n as i64) as usize];
        CycInt {
            n,
            coeffs: row.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// `sum_k counts[k] * zeta_n^k`; `counts` has length `n`.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), n as usize);
        let table = power_table(n);
        let d = euler_phi(n);
        let mut acc = vec![0i128; d];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &t) in acc.iter_mut().zip(&table[k]) {
                    *a += c as i128 * t as i128;
                }
            }
        }
        CycInt {
            n,
            coeffs: acc.into_iter().map(BigInt::from).collect(),
        }
    }

    /// Reduces an arbitrary-degree integer polynomial in `zeta_n`.
    pub fn from_poly(n: u32, poly: &[BigInt]) -> Self {
        let table = power_table(n);
        let mut out = Self::zero(n);
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &t) in out.coeffs.iter_mut().zip(&table[k % n as usize]) {
                if t != 0 {
                    *o += c * t;
                }
            }
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The integer value, when the element lies in `Z`.
    pub fn as_rational(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Image under `zeta_n -> zeta_m^(m/n)`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        check_conductor(m)?;
        if !m.is_multiple_of(self.n) {
            return Err(Error::ConductorMismatch(self.n, m));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut poly = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_poly(m, &poly))
    }

    /// The Galois automorphism `zeta -> zeta^j`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let n = self.n as i64;
        let jm = j.rem_euclid(n);
        if jm.gcd(&n) != 1 {
            return Err(Error::NotCoprime(j, self.n));
        }
        let mut poly = vec![BigInt::zero(); self.n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = (k as i64 * jm).rem_euclid(n) as usize;
            poly[e] += c;
        }
        Ok(Self::from_poly(self.n, &poly))
    }

    /// Complex conjugation, `sigma_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
            .expect("-1 is a unit modulo every conductor")
    }

    /// `a * conj(a)`, which must be a rational integer.
    pub fn abs_square(&self) -> Result<BigInt> {
        let prod = self * &self.conj();
        prod.as_rational()
            .cloned()
            .ok_or_else(|| Error::NotRational(prod.to_string()))
    }

    /// Product requiring equal conductors.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        Ok(self.mul_same(other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ConductorMismatch(self.n, other.n));
        }
        Ok(self.zip_with(other, |a, b| a + b))
    }

    fn mul_same(&self, other: &Self) -> Self {
        let d = self.coeffs.len();
        let mut poly = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.n, &poly)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        CycInt {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Both operands embedded into `Z[zeta_lcm]`.
    pub fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (
            self.embed(m).expect("lcm of divisors of 24 divides 24"),
            other.embed(m).expect("lcm of divisors of 24 divides 24"),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_divisible_by(&self, d: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(d))
    }

    /// Exact division by a rational integer that divides every coefficient.
    pub fn div_exact(&self, d: &BigInt) -> Self {
        debug_assert!(self.is_divisible_by(d));
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        }
    }

    /// Residue modulo the prime `(p, zeta - r)`.
    pub fn residue(&self, p: u64, r: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc = BigInt::zero();
        let mut rk = BigInt::one();
        for c in &self.coeffs {
            acc += c * &rk;
            rk = (rk * r) % &pb;
        }
        acc.mod_floor(&pb).to_u64().expect("reduced below p")
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = 2.0 * std::f64::consts::PI / self.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(1.0, w * k as f64) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Parses `"c0 + c1*z + c2*z^2 ..."` as an element of `Z[zeta_n]`.
    pub fn parse_with_conductor(s: &str, n: u32) -> Result<Self> {
        check_conductor(n)?;
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut poly: Vec<BigInt> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body
                .find(['+', '-'])
                .filter(|&i| i > 0)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, power) = parse_term(term)?;
            if poly.len() <= power {
                poly.resize(power + 1, BigInt::zero());
            }
            poly[power] += coef * sign;
        }
        Ok(Self::from_poly(n, &poly))
    }

    /// `"[n] c0 + c1*z ..."`.
    pub fn render_tagged(&self) -> String {
        format!("[{}] {}", self.n, self)
    }
}

fn parse_term(term: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    let (coef_str, zpart) = match term.find('z') {
        None => (term, None),
        Some(i) => {
            let c = term[..i].strip_suffix('*').unwrap_or(&term[..i]);
            (c, Some(&term[i + 1..]))
        }
    };
    let coef = if coef_str.is_empty() {
        if zpart.is_none() {
            return Err(bad());
        }
        BigInt::one()
    } else {
        coef_str.parse::<BigInt>().map_err(|_| bad())?
    };
    let power = match zpart {
        None => 0,
        Some("") => 1,
        Some(e) => e
            .strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    Ok((coef, power))
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FromStr for CycInt {
    type Err = Error;

    /// Accepts the tagged form `"[n] ..."`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix('[')
            .ok_or_else(|| Error::Parse(format!("missing conductor tag in {s:?}")))?;
        let close = body
            .find(']')
            .ok_or_else(|| Error::Parse(format!("unterminated tag in {s:?}")))?;
        let n: u32 = body[..close]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?;
        Self::parse_with_conductor(&body[close + 1..], n)
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let (a, b) = self.common(rhs);
        a.zip_with(&b, |x, y| x + y)
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        let (a, b) = self.common(rhs);
        a.zip_with(&b, |x, y| x - y)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        let (a, b) = self.common(rhs);
        a.mul_same(&b)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycInt> for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: &CycInt) -> CycInt {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

/// Exact equality after embedding into the common conductor.
pub fn equal_in_common(a: &CycInt, b: &CycInt) -> bool {
    let (x, y) = a.common(b);
    x == y
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, k: i64) -> CycInt {
        CycInt::zeta_pow(n, k)
    }

    fn int(n: u32, v: i64) -> CycInt {
        CycInt::from_int(n, v)
    }

    #[test]
    fn i_squared() {
        assert_eq!(z(4, 1).checked_mul(&z(4, 1)).unwrap(), int(4, -1));
    }

    #[test]
    fn zeta12_fourth_power() {
        let z12 = z(12, 1);
        let mut acc = CycInt::one(12);
        for _ in 0..4 {
            acc = acc.checked_mul(&z12).unwrap();
        }
        assert_eq!(acc, &z(12, 2) - &int(12, 1));
    }

    #[test]
    fn difference_of_squares() {
        let a = &int(8, 1) + &z(8, 1);
        let b = &int(8, 1) - &z(8, 1);
        assert_eq!(a.checked_mul(&b).unwrap(), &int(8, 1) - &z(8, 2));
    }

    #[test]
    fn mismatch_errors() {
        assert_eq!(
            z(4, 1).checked_mul(&z(8, 1)).unwrap_err(),
            Error::ConductorMismatch(4, 8)
        );
        assert_eq!(
            z(8, 1).embed(12).unwrap_err(),
            Error::ConductorMismatch(8, 12)
        );
        assert_eq!(z(8, 1).embed(16).unwrap_err(), Error::ConductorTooLarge(16));
    }

    #[test]
    fn embeddings() {
        assert_eq!(z(4, 1).embed(8).unwrap(), z(8, 2));
        assert_eq!(int(1, 3).embed(24).unwrap(), int(24, 3));
        assert_eq!(z(6, 1).embed(12).unwrap(), z(12, 2));
        assert_eq!(z(3, 1).embed(6).unwrap(), z(6, 2));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(8, 1).galois(3).unwrap(), z(8, 3));
        assert_eq!(z(4, 1).galois(-1).unwrap(), -&z(4, 1));
        assert_eq!(z(8, 1).galois(2).unwrap_err(), Error::NotCoprime(2, 8));
    }

    #[test]
    fn abs_square_examples() {
        let a = &int(4, 3) + &int(4, 2).checked_mul(&z(4, 1)).unwrap();
        assert_eq!(a.abs_square().unwrap(), BigInt::from(13));
        for k in 0..8 {
            assert_eq!(z(8, k).abs_square().unwrap(), BigInt::one());
        }
    }

    #[test]
    fn cyclotomic_polynomial_vanishes() {
        for &n in &CONDUCTORS {
            let phi: Vec<BigInt> = cyclotomic_poly(n)
                .iter()
                .map(|&c| BigInt::from(c))
                .collect();
            assert!(CycInt::from_poly(n, &phi).is_zero(), "n={n}");
            // x^n - 1 = prod_{d | n} Phi_d
            let mut prod = vec![BigInt::one()];
            for d in (1..=n).filter(|d| n % d == 0) {
                let f = cyclotomic_poly(d);
                let mut next = vec![BigInt::zero(); prod.len() + f.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, &b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            let mut want = vec![BigInt::zero(); n as usize + 1];
            want[0] = BigInt::from(-1);
            want[n as usize] = BigInt::one();
            assert_eq!(prod, want, "n={n}");
        }
    }

    #[test]
    fn rendering() {
        let a = CycInt::from_poly(8, &[3, -2, 0, 1].map(BigInt::from));
        assert_eq!(a.to_string(), "3 - 2*z + z^3");
        assert_eq!(CycInt::zero(6).to_string(), "0");
        assert_eq!((-&z(4, 1)).to_string(), "-z");
        assert_eq!(a.render_tagged(), "[8] 3 - 2*z + z^3");
        assert_eq!("[8] 3 - 2*z + z^3".parse::<CycInt>().unwrap(), a);
        assert_eq!(CycInt::parse_with_conductor("-z^4", 4).unwrap(), int(4, -1));
        assert!(CycInt::parse_with_conductor("3*y", 4).is_err());
        assert!("3 + z".parse::<CycInt>().is_err());
    }

    fn arb_cyc(n: u32) -> impl Strategy<Value = CycInt> {
        proptest::collection::vec(-50i64..50, euler_phi(n)).prop_map(move |v| {
            CycInt::from_poly(n, &v.into_iter().map(BigInt::from).collect::<Vec<_>>())
        })
    }

    fn arb_conductor() -> impl Strategy<Value = u32> {
        proptest::sample::select(CONDUCTORS.to_vec())
    }

    proptest! {
        #[test]
        fn ring_laws((a, b, c) in arb_conductor().prop_flat_map(|n| (arb_cyc(n), arb_cyc(n), arb_cyc(n)))) {
            let n = a.conductor();
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &CycInt::one(n), a.clone());
            prop_assert_eq!(&a + &CycInt::zero(n), a.clone());
        }

        #[test]
        fn galois_is_multiplicative(a in arb_cyc(24), b in arb_cyc(24), j in proptest::sample::select(vec![1i64, 5, 7, 11, 13, 17, 19, 23, -1])) {
            prop_assert_eq!((&a * &b).galois(j).unwrap(), &a.galois(j).unwrap() * &b.galois(j).unwrap());
        }

        #[test]
        fn galois_composes(a in arb_cyc(12), j in proptest::sample::select(vec![1i64, 5, 7, 11]), k in proptest::sample::select(vec![1i64, 5, 7, 11])) {
            prop_assert_eq!(a.galois(k).unwrap().galois(j).unwrap(), a.galois((j * k) % 12).unwrap());
        }

        #[test]
        fn norm_survives_embedding(a in arb_cyc(4), m in proptest::sample::select(vec![4u32, 8, 12, 24])) {
            prop_assert_eq!(a.embed(m).unwrap().abs_square().unwrap(), a.abs_square().unwrap());
        }

        #[test]
        fn embedding_is_homomorphism(a in arb_cyc(6), b in arb_cyc(6)) {
            let ab = (&a * &b).embed(24).unwrap();
            prop_assert_eq!(ab, a.embed(24).unwrap().checked_mul(&b.embed(24).unwrap()).unwrap());
        }

        #[test]
        fn render_parse_roundtrip(n in arb_conductor(), v in proptest::collection::vec(-1000i64..1000, 8)) {
            let a = CycInt::from_poly(n, &v.into_iter().map(BigInt::from).collect::<Vec<_>>());
            prop_assert_eq!(a.render_tagged().parse::<CycInt>().unwrap(), a);
        }

        #[test]
        fn complex_image_is_a_homomorphism(a in arb_cyc(12), b in arb_cyc(12)) {
            let lhs = (&a * &b).to_complex();
            let rhs = a.to_complex() * b.to_complex();
            prop_assert!((lhs - rhs).norm() < 1e-6 * (1.0 + rhs.norm()));
        }
    }
}
