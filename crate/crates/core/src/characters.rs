//! Multiplicative characters of `F_p^*` with exact values in `mu_N`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;

use crate::cyclotomic::{check_conductor, CycInt};
use crate::error::{Error, Result};
use crate::field::PrimeContext;
use crate::hypergeometric::HgValue;

/// A character `chi` with `chi(g) = zeta_N^t` for the context generator `g`,
/// extended by `chi(0) = 0` (including the trivial character).
///
/// The pair `(N, t)` is kept reduced, so `N` is the exact order.
#[derive(Clone, Copy)]
pub struct MulChar<'a> {
    ctx: &'a PrimeContext,
    n: u32,
    t: u32,
}

impl<'a> MulChar<'a> {
    pub fn new(ctx: &'a PrimeContext, n: u32, t: i64) -> Result<Self> {
        if n == 0 || !(ctx.p() - 1).is_multiple_of(n as u64) {
            return Err(Error::OrderNotDividing {
                p: ctx.p(),
                order: n,
            });
        }
        let t = t.rem_euclid(n as i64) as u32;
        let g = n.gcd(&t);
        Ok(MulChar {
            ctx,
            n: n / g,
            t: t / g,
        })
    }

    pub fn trivial(ctx: &'a PrimeContext) -> Self {
        MulChar { ctx, n: 1, t: 0 }
    }

    pub fn quadratic(ctx: &'a PrimeContext) -> Self {
        MulChar { ctx, n: 2, t: 1 }
    }

    /// The character `psi` of order `n` with `psi(x) = x^((p-1)/n)` modulo the
    /// ideal `(p, zeta_n - r_n)`.
    pub fn from_ideal(ctx: &'a PrimeContext, n: u32) -> Result<Self> {
        let r = ctx.root(n)?;
        if n == 1 {
            return Ok(Self::trivial(ctx));
        }
        let step = (ctx.p() - 1) / n as u64;
        let m = ctx.dlog(r)? as u64 / step;
        // g^((p-1)/n) = r^(m^-1)
        let t = crate::field::mod_inverse(m % n as u64, n as u64).expect("r has exact order n");
        Self::new(ctx, n, t as i64)
    }

    pub fn ctx(&self) -> &'a PrimeContext {
        self.ctx
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn index(&self) -> u32 {
        self.t
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// `k` with `chi(x) = zeta_N^k`, or `None` at `x = 0`.
    #[inline]
    pub fn exponent(&self, x: i64) -> Option<u32> {
        let d = self.ctx.dlog_raw(self.ctx.reduce(x))?;
        Some(((d * self.t as u64) % self.n as u64) as u32)
    }

    /// Exponent multiplier at a conductor `l` that is a multiple of the order.
    #[inline]
    pub(crate) fn lifted(&self, l: u32) -> u64 {
        debug_assert_eq!(l % self.n, 0);
        self.t as u64 * (l / self.n) as u64
    }

    pub fn value(&self, x: i64) -> Result<CycInt> {
        check_conductor(self.n)?;
        Ok(match self.exponent(x) {
            None => CycInt::zero(self.n),
            Some(k) => CycInt::zeta_pow(self.n, k as i64),
        })
    }

    pub fn value_complex(&self, x: i64) -> Complex64 {
        match self.exponent(x) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / self.n as f64)
            }
        }
    }

    /// `chi(-1)`, always `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        match self.exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.ctx, self.n, -(self.t as i64)).expect("order unchanged")
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.ctx, self.n, self.t as i64 * k).expect("order divides N")
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            std::ptr::eq(self.ctx, other.ctx),
            "characters from different prime contexts"
        );
        let l = self.n.lcm(&other.n);
        let t = self.lifted(l) + other.lifted(l);
        Self::new(self.ctx, l, t as i64).expect("lcm of divisors of p - 1 divides p - 1")
    }
}

impl PartialEq for MulChar<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.n == other.n && self.t == other.t
    }
}

impl Eq for MulChar<'_> {}

impl fmt::Debug for MulChar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MulChar(p={}, order={}, t={})",
            self.ctx.p(),
            self.n,
            self.t
        )
    }
}

/// Smallest exact conductor holding every value of the given characters.
pub(crate) fn joint_conductor(chars: &[&MulChar<'_>]) -> Result<u32> {
    let l = chars.iter().fold(1u32, |acc, c| acc.lcm(&c.order()));
    check_conductor(l)?;
    Ok(l)
}

/// `sum_x zeta_l^(term(x))` over `x` in `F_p`, skipping `x` where `term` is `None`.
pub(crate) fn exact_sum(
    ctx: &PrimeContext,
    l: u32,
    mut term: impl FnMut(u64) -> Option<u64>,
) -> CycInt {
    let mut counts = vec![0i64; l as usize];
    for x in 0..ctx.p() {
        if let Some(e) = term(x) {
            counts[(e % l as u64) as usize] += 1;
        }
    }
    CycInt::from_exponent_counts(l, &counts)
}

/// `J(A, B) = sum_x A(x) B(1 - x)`.
pub fn jacobi_sum(a: &MulChar<'_>, b: &MulChar<'_>) -> Result<CycInt> {
    let ctx = a.ctx;
    let l = joint_conductor(&[a, b])?;
    let (ta, tb) = (a.lifted(l), b.lifted(l));
    let p = ctx.p();
    // x = 0 and x = 1 contribute nothing under chi(0) = 0
    Ok(exact_sum(ctx, l, |x| {
        let dx = ctx.dlog_raw(x)?;
        let d1 = ctx.dlog_raw((p + 1 - x) % p)?;
        Some(ta * dx + tb * d1)
    }))
}

/// Greene's binomial `(A over B) = B(-1) J(A, conj B) / p`.
pub fn greene_binomial(a: &MulChar<'_>, b: &MulChar<'_>) -> Result<HgValue> {
    let j = jacobi_sum(a, &b.conj())?;
    Ok(HgValue::new(j.scale(&BigInt::from(b.sign())), a.ctx.p(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::pow_mod;
    use num_traits::One;

    /// Direct double loop over complex values; independent of the exponent
    /// bookkeeping used by `jacobi_sum`.
    fn naive_jacobi(a: &MulChar<'_>, b: &MulChar<'_>) -> Complex64 {
        let p = a.ctx().p() as i64;
        (0..p)
            .map(|x| a.value_complex(x) * b.value_complex(1 - x))
            .sum()
    }

    #[test]
    fn from_ideal_examples() {
        let ctx = PrimeContext::full(13).unwrap();
        let phi = MulChar::quadratic(&ctx);
        assert_eq!(MulChar::from_ideal(&ctx, 2).unwrap(), phi);
        let psi = MulChar::from_ideal(&ctx, 4).unwrap();
        assert_eq!(psi.pow(2), phi);
        assert_eq!(psi.pow(4), MulChar::trivial(&ctx));
        // 3^3 = 27 = 1 mod 13, so psi(3) = 1
        assert_eq!(pow_mod(3, 3, 13), 1);
        assert_eq!(psi.value(3).unwrap(), CycInt::one(4));
    }

    #[test]
    fn ideal_character_matches_power_residue() {
        for p in [13u64, 37, 73, 97, 193] {
            let ctx = PrimeContext::full(p).unwrap();
            for (&n, &r) in ctx.roots() {
                let psi = MulChar::from_ideal(&ctx, n).unwrap();
                assert_eq!(psi.order(), n);
                for x in 1..p {
                    let k = psi.exponent(x as i64).unwrap() as u64;
                    assert_eq!(pow_mod(x, (p - 1) / n as u64, p), pow_mod(r, k, p));
                }
            }
        }
    }

    #[test]
    fn multiplicativity_and_zero() {
        let ctx = PrimeContext::full(37).unwrap();
        let psi = MulChar::from_ideal(&ctx, 12).unwrap();
        assert_eq!(psi.exponent(0), None);
        assert_eq!(MulChar::trivial(&ctx).exponent(0), None);
        for x in 1..37i64 {
            for y in 1..37i64 {
                let lhs = psi.value(x * y).unwrap();
                let rhs = psi
                    .value(x)
                    .unwrap()
                    .checked_mul(&psi.value(y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn jacobi_examples() {
        let c5 = PrimeContext::full(5).unwrap();
        let phi5 = MulChar::quadratic(&c5);
        assert_eq!(jacobi_sum(&phi5, &phi5).unwrap(), CycInt::from_int(2, -1));

        let ctx = PrimeContext::full(13).unwrap();
        let eps = MulChar::trivial(&ctx);
        assert_eq!(jacobi_sum(&eps, &eps).unwrap(), CycInt::from_int(1, 11));

        let phi = MulChar::quadratic(&ctx);
        let psi = MulChar::from_ideal(&ctx, 4).unwrap();
        let j = jacobi_sum(&phi, &psi).unwrap();
        assert_eq!(j.abs_square().unwrap(), BigInt::from(13));
        assert!((j.to_complex() - naive_jacobi(&phi, &psi)).norm() < 1e-9);
    }

    #[test]
    fn jacobi_matches_naive_loop_everywhere() {
        for p in [13u64, 37, 73] {
            let ctx = PrimeContext::full(p).unwrap();
            let m = *ctx.roots().keys().max().unwrap();
            let psi = MulChar::from_ideal(&ctx, m).unwrap();
            for i in 0..m as i64 {
                for j in 0..m as i64 {
                    let (a, b) = (psi.pow(i), psi.pow(j));
                    let exact = jacobi_sum(&a, &b).unwrap();
                    assert!((exact.to_complex() - naive_jacobi(&a, &b)).norm() < 1e-9);
                    if i != 0 && j != 0 && (i + j) % m as i64 != 0 {
                        assert_eq!(exact.abs_square().unwrap(), BigInt::from(p));
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        let ctx = PrimeContext::full(13).unwrap();
        let phi = MulChar::quadratic(&ctx);
        let eps = MulChar::trivial(&ctx);
        assert_eq!(jacobi_sum(&phi, &eps).unwrap(), CycInt::from_int(2, -1));
        assert_eq!(
            greene_binomial(&phi, &eps).unwrap(),
            HgValue::new(CycInt::from_int(1, -1), 13, 1)
        );
        assert_eq!(
            greene_binomial(&eps, &eps).unwrap(),
            HgValue::new(CycInt::from_int(1, 11), 13, 1)
        );
        let c5 = PrimeContext::full(5).unwrap();
        let phi5 = MulChar::quadratic(&c5);
        assert_eq!(
            greene_binomial(&phi5, &phi5).unwrap(),
            HgValue::new(CycInt::from_int(1, -1), 5, 1)
        );
    }

    #[test]
    fn conductor_limits() {
        let ctx = PrimeContext::new(11, &[]).unwrap();
        let chi = MulChar::new(&ctx, 5, 1).unwrap();
        assert_eq!(
            jacobi_sum(&chi, &chi).unwrap_err(),
            Error::ConductorTooLarge(5)
        );
        assert!(MulChar::new(&ctx, 3, 1).is_err());
    }

    #[test]
    fn conjugate_root_gives_power_character() {
        let p = 73u64;
        let base = PrimeContext::full(p).unwrap();
        for n in [3u32, 4, 6, 8, 12, 24] {
            let r = base.root(n).unwrap();
            let psi = MulChar::from_ideal(&base, n).unwrap();
            for j in (1..n as u64).filter(|j| j.gcd(&(n as u64)) == 1) {
                let mut o = std::collections::BTreeMap::new();
                o.insert(n, pow_mod(r, j, p));
                let other = PrimeContext::with_roots(p, &[], &o).unwrap();
                let psi_j = MulChar::from_ideal(&other, n).unwrap();
                let jinv = crate::field::mod_inverse(j, n as u64).unwrap();
                let expected = psi.pow(jinv as i64);
                for x in 1..p as i64 {
                    assert_eq!(psi_j.exponent(x), expected.exponent(x));
                }
            }
        }
    }

    #[test]
    fn sign_is_value_at_minus_one() {
        let ctx = PrimeContext::full(73).unwrap();
        for n in [2u32, 3, 4, 8, 12, 24] {
            let psi = MulChar::from_ideal(&ctx, n).unwrap();
            let v = psi.value(-1).unwrap();
            assert_eq!(v, CycInt::from_int(n, psi.sign()));
        }
        assert!(MulChar::trivial(&ctx)
            .value(1)
            .unwrap()
            .as_rational()
            .unwrap()
            .is_one());
    }
}
