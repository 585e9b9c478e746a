//! Prime-field contexts.
//!
//! A [`PrimeContext`] fixes an odd prime `p`, the smallest primitive root `g`,
//! a full discrete-logarithm table, and one root of unity `r_N` per requested
//! order `N`. The root `r_N` pins the prime ideal `(p, zeta_N - r_N)` above `p`
//! in `Z[zeta_N]`, so every exact character value computed downstream is
//! relative to that ideal.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeContext`]; the discrete-log table is
/// stored as `u32`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Generators of the imaginary quadratic subrings, as residues in `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subfield {
    /// `sqrt(-2) = zeta_8 + zeta_8^3`, from `r_8`.
    SqrtMinus2,
    /// `i = zeta_12^3`, from `r_12`.
    ImagUnit,
    /// `sqrt(-3) = 2 zeta_12^2 - 1`, from `r_12`.
    SqrtMinus3,
}

#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    generator: u64,
    dlog: Vec<u32>,
    powers: Vec<u32>,
    roots: BTreeMap<u32, u64>,
}

impl PrimeContext {
    /// Builds a context with the canonical (smallest) root for each order.
    pub fn new(p: u64, orders: &[u32]) -> Result<Self> {
        Self::with_roots(p, orders, &BTreeMap::new())
    }

    /// Builds a context storing a root for every divisor of `gcd(p - 1, 24)`.
    pub fn full(p: u64) -> Result<Self> {
        Self::full_with_roots(p, &BTreeMap::new())
    }

    /// [`PrimeContext::full`] with some roots overridden.
    pub fn full_with_roots(p: u64, overrides: &BTreeMap<u32, u64>) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = (p - 1).gcd(&24) as u32;
        let orders: Vec<u32> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
        Self::with_roots(p, &orders, overrides)
    }

    /// Like [`PrimeContext::new`], with explicit roots for some orders. An
    /// override must have exact multiplicative order `N`.
    pub fn with_roots(p: u64, orders: &[u32], overrides: &BTreeMap<u32, u64>) -> Result<Self> {
        if p > MAX_PRIME || !is_odd_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = p - 1;
        let generator = smallest_primitive_root(p);
        let mut dlog = vec![u32::MAX; p as usize];
        let mut powers = Vec::with_capacity(n as usize);
        let mut x = 1u64;
        for k in 0..n {
            dlog[x as usize] = k as u32;
            powers.push(x as u32);
            x = x * generator % p;
        }

        let mut ctx = PrimeContext {
            p,
            generator,
            dlog,
            powers,
            roots: BTreeMap::new(),
        };
        for &order in orders.iter().chain(overrides.keys()) {
            if order == 0 || !n.is_multiple_of(order as u64) {
                return Err(Error::OrderNotDividing { p, order });
            }
            let r = match overrides.get(&order) {
                Some(&r) => {
                    let r = r % p;
                    if r == 0 || ctx.multiplicative_order(r) != order as u64 {
                        return Err(Error::InvalidRoot { p, order, value: r });
                    }
                    r
                }
                None => ctx.roots_of_unity(order).into_iter().min().unwrap(),
            };
            ctx.roots.insert(order, r);
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `k` in `[0, p - 1)` with `g^k = x`.
    pub fn dlog(&self, x: u64) -> Result<u32> {
        let x = x % self.p;
        if x == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(self.dlog[x as usize])
    }

    /// Discrete log of a nonzero residue already reduced mod `p`, or `None`.
    #[inline]
    pub(crate) fn dlog_raw(&self, x: u64) -> Option<u64> {
        if x == 0 {
            None
        } else {
            Some(self.dlog[x as usize] as u64)
        }
    }

    /// `g^k mod p`.
    #[inline]
    pub fn pow_g(&self, k: u64) -> u64 {
        self.powers[(k % (self.p - 1)) as usize] as u64
    }

    pub fn root(&self, order: u32) -> Result<u64> {
        self.roots
            .get(&order)
            .copied()
            .ok_or(Error::MissingRoot(order))
    }

    pub fn roots(&self) -> &BTreeMap<u32, u64> {
        &self.roots
    }

    /// All elements of exact order `n`, i.e. the roots of `Phi_n` mod `p`.
    pub fn roots_of_unity(&self, n: u32) -> Vec<u64> {
        let m = self.p - 1;
        if !m.is_multiple_of(n as u64) {
            return Vec::new();
        }
        let step = m / n as u64;
        (0..n as u64)
            .filter(|k| k.gcd(&(n as u64)) == 1)
            .map(|k| self.pow_g(k * step))
            .collect()
    }

    pub fn multiplicative_order(&self, x: u64) -> u64 {
        let d = self.dlog[(x % self.p) as usize] as u64;
        (self.p - 1) / d.gcd(&(self.p - 1))
    }

    /// Legendre symbol, with `0` at `x = 0`.
    pub fn quadratic_character(&self, x: i64) -> i8 {
        match self.dlog_raw(self.reduce(x)) {
            None => 0,
            Some(k) if k % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    pub fn is_square(&self, x: i64) -> bool {
        self.quadratic_character(x) == 1
    }

    /// The square root `g^(k/2)` of a nonzero square `g^k`.
    pub fn sqrt(&self, x: i64) -> Option<u64> {
        let k = self.dlog_raw(self.reduce(x))?;
        (k % 2 == 0).then(|| self.pow_g(k / 2))
    }

    /// All `y` with `y^m = v`.
    pub fn nth_roots(&self, v: u64, m: u64) -> Vec<u64> {
        let n = self.p - 1;
        let Some(d) = self.dlog_raw(v % self.p) else {
            return vec![0];
        };
        let g = m.gcd(&n);
        if d % g != 0 {
            return Vec::new();
        }
        let modulus = n / g;
        let k0 = if modulus == 1 {
            0
        } else {
            let inv = mod_inverse((m / g) % modulus, modulus).expect("coprime by construction");
            (d / g) % modulus * inv % modulus
        };
        (0..g).map(|j| self.pow_g(k0 + j * modulus)).collect()
    }

    /// Number of `y` in `F_p` with `y^m = v`.
    #[inline]
    pub fn count_nth_roots(&self, v: u64, m: u64) -> u64 {
        match self.dlog_raw(v) {
            None => 1,
            Some(d) => {
                let g = m.gcd(&(self.p - 1));
                if d % g == 0 {
                    g
                } else {
                    0
                }
            }
        }
    }

    /// Residue of a subring generator under `zeta_N -> r_N`.
    pub fn derived_root(&self, target: Subfield) -> Result<u64> {
        let p = self.p;
        match target {
            Subfield::SqrtMinus2 => {
                let r = self.root(8)?;
                Ok((r + pow_mod(r, 3, p)) % p)
            }
            Subfield::ImagUnit => Ok(pow_mod(self.root(12)?, 3, p)),
            Subfield::SqrtMinus3 => {
                let r = self.root(12)?;
                Ok((2 * pow_mod(r, 2, p) + p - 1) % p)
            }
        }
    }

    /// Residue of `i`: from `r_12` when stored, otherwise `r_4`.
    pub fn imag_unit_residue(&self) -> Result<u64> {
        self.derived_root(Subfield::ImagUnit)
            .or_else(|_| self.root(4))
            .map_err(|_| Error::MissingRoot(4))
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn inverse(&self, x: u64) -> Result<u64> {
        let k = self.dlog(x)? as u64;
        Ok(self.pow_g((self.p - 1 - k) % (self.p - 1)))
    }
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Tonelli-Shanks square root modulo an odd prime, or `None` for a nonsquare.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        r = mul(r, b);
        c = mul(b, b);
        t = mul(t, c);
        m = i;
    }
    Some(r)
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
/// `u64` inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_primitive_root(p: u64) -> u64 {
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&l| pow_mod(g, (p - 1) / l, p) != 1))
        .unwrap_or(1)
}

/// Odd primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|&n| is_odd_prime(n))
}
