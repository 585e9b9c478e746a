//! Character sums `F_eta`, `S_eta` and exact finite-field hypergeometric
//! functions, with a floating-point evaluation of the all-characters
//! definition as an independent oracle.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::characters::{exact_sum, joint_conductor, MulChar};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::PrimeContext;

/// An exact value `num / p^pexp` with `num` in `Z[zeta_N]`, kept with the
/// smallest possible `pexp`.
#[derive(Clone, Debug)]
pub struct HgValue {
    num: CycInt,
    p: u64,
    pexp: u32,
}

impl HgValue {
    pub fn new(mut num: CycInt, p: u64, mut pexp: u32) -> Self {
        if num.is_zero() {
            return HgValue { num, p, pexp: 0 };
        }
        let pb = BigInt::from(p);
        while pexp > 0 && num.is_divisible_by(&pb) {
            num = num.div_exact(&pb);
            pexp -= 1;
        }
        HgValue { num, p, pexp }
    }

    pub fn zero(p: u64) -> Self {
        HgValue {
            num: CycInt::zero(1),
            p,
            pexp: 0,
        }
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn denominator_exponent(&self) -> u32 {
        self.pexp
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn conductor(&self) -> u32 {
        self.num.conductor()
    }

    pub fn embed(&self, m: u32) -> Result<Self> {
        Ok(HgValue {
            num: self.num.embed(m)?,
            p: self.p,
            pexp: self.pexp,
        })
    }

    pub fn mul_cyc(&self, c: &CycInt) -> Self {
        Self::new(&self.num * c, self.p, self.pexp)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "values over different primes");
        let e = self.pexp.max(other.pexp);
        let pb = BigInt::from(self.p);
        let lift = |v: &HgValue| {
            v.num
                .scale(&num_traits::pow(pb.clone(), (e - v.pexp) as usize))
        };
        Self::new(&lift(self) + &lift(other), self.p, e)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.num.to_complex() / (self.p as f64).powi(self.pexp as i32)
    }

    /// Both values rendered in their common conductor.
    pub fn render_pair(a: &Self, b: &Self) -> (String, String) {
        let m = num_integer::lcm(a.conductor(), b.conductor());
        (
            a.embed(m).expect("common conductor").to_string(),
            b.embed(m).expect("common conductor").to_string(),
        )
    }
}

impl PartialEq for HgValue {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.pexp == other.pexp
            && crate::cyclotomic::equal_in_common(&self.num, &other.num)
    }
}

impl Eq for HgValue {}

impl fmt::Display for HgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pexp == 0 {
            write!(f, "[{}] {}", self.num.conductor(), self.num)
        } else {
            write!(
                f,
                "[{}] ({})/{}^{}",
                self.num.conductor(),
                self.num,
                self.p,
                self.pexp
            )
        }
    }
}

/// `sum_x chi(prod_i (x - s_i)^(e_i))`; factors with `e_i = 0` are dropped.
pub fn factored_char_sum(
    ctx: &PrimeContext,
    chi: &MulChar<'_>,
    factors: &[(i64, u32)],
) -> Result<CycInt> {
    let l = joint_conductor(&[chi])?;
    let t = chi.lifted(l);
    let p = ctx.p();
    let shifts: Vec<(u64, u64)> = factors
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|&(s, e)| (ctx.reduce(s), e as u64))
        .collect();
    Ok(exact_sum(ctx, l, |x| {
        let mut acc = 0u64;
        for &(s, e) in &shifts {
            acc += e * ctx.dlog_raw((x + p - s) % p)?;
        }
        Some(acc * t)
    }))
}

/// `F_eta(z) = sum_x eta(x) (phi conj(eta))(x - 1) (phi conj(eta))(x - z)`.
pub fn f_eta(ctx: &PrimeContext, eta: &MulChar<'_>, z: i64) -> Result<CycInt> {
    if eta.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let lam = MulChar::quadratic(ctx).mul(&eta.conj());
    let l = joint_conductor(&[eta, &lam])?;
    let (te, tl) = (eta.lifted(l), lam.lifted(l));
    let p = ctx.p();
    let z = ctx.reduce(z);
    Ok(exact_sum(ctx, l, |x| {
        let a = ctx.dlog_raw(x)?;
        let b = ctx.dlog_raw((x + p - 1) % p)?;
        let c = ctx.dlog_raw((x + p - z) % p)?;
        Some(te * a + tl * (b + c))
    }))
}

/// `S_eta'(z) = sum_x eta'(x^(N'/2 - 1) (x - 1) (x - z))` for `eta'` of even
/// order `N' >= 4`.
pub fn s_eta(ctx: &PrimeContext, eta: &MulChar<'_>, z: i64) -> Result<CycInt> {
    let n = eta.order();
    if n % 2 == 1 || n < 4 {
        return Err(Error::OddOrder(n));
    }
    s_sum_with_exponent(ctx, eta, n / 2 - 1, z)
}

/// `sum_x chi(x^e (x - 1) (x - z))`, the sum attached to a curve
/// `y^M = c x^e (x - 1)(x - z)` for every character of order dividing `M`.
pub fn s_sum_with_exponent(
    ctx: &PrimeContext,
    chi: &MulChar<'_>,
    e: u32,
    z: i64,
) -> Result<CycInt> {
    factored_char_sum(ctx, chi, &[(0, e), (1, 1), (z, 1)])
}

/// Exact `2F1(A, B; C | z) = eps(z) BC(-1)/p sum_x B(x) (C conj B)(1-x) conj A(1-zx)`.
pub fn hg2f1(
    ctx: &PrimeContext,
    a: &MulChar<'_>,
    b: &MulChar<'_>,
    c: &MulChar<'_>,
    z: i64,
) -> Result<HgValue> {
    Ok(HgValue::new(hg2f1_numerator(ctx, a, b, c, z)?, ctx.p(), 1))
}

fn hg2f1_numerator(
    ctx: &PrimeContext,
    a: &MulChar<'_>,
    b: &MulChar<'_>,
    c: &MulChar<'_>,
    z: i64,
) -> Result<CycInt> {
    let l = joint_conductor(&[a, b, c])?;
    let z = ctx.reduce(z);
    if z == 0 {
        return Ok(CycInt::zero(l));
    }
    let cb = c.mul(&b.conj());
    let (tb, tcb, ta) = (b.lifted(l), cb.lifted(l), a.conj().lifted(l));
    let p = ctx.p();
    let sum = exact_sum(ctx, l, |x| {
        let d0 = ctx.dlog_raw(x)?;
        let d1 = ctx.dlog_raw((p + 1 - x) % p)?;
        let d2 = ctx.dlog_raw((p + 1 - z * x % p) % p)?;
        Some(tb * d0 + tcb * d1 + ta * d2)
    });
    Ok(sum.scale(&BigInt::from(b.mul(c).sign())))
}

/// Greene's `n+1 F n` through the inductive definition; `numer` holds
/// `A_0..A_n` and `denom` holds `B_1..B_n`.
///
/// Each inductive step carries the factor `A_n B_n(-1)/p`, which is what
/// makes the result agree with the sum over all characters.
pub fn hg_n1fn(
    ctx: &PrimeContext,
    numer: &[MulChar<'_>],
    denom: &[MulChar<'_>],
    z: i64,
) -> Result<HgValue> {
    let n = denom.len();
    if n == 0 || numer.len() != n + 1 {
        return Err(Error::BadParams(format!(
            "expected n + 1 numerator and n denominator characters, got {} and {}",
            numer.len(),
            n
        )));
    }
    let all: Vec<&MulChar<'_>> = numer.iter().chain(denom).collect();
    let l = joint_conductor(&all)?;
    if n == 1 {
        return hg2f1(ctx, &numer[0], &numer[1], &denom[0], z);
    }
    let lower = level_table(ctx, &numer[..n], &denom[..n - 1], l)?;
    let num = inductive_step(ctx, &numer[n], &denom[n - 1], &lower, l, ctx.reduce(z));
    Ok(HgValue::new(num, ctx.p(), n as u32))
}

/// Numerators of `kF(k-1)(w)` over `p^(k-1)` for every `w` in `F_p`.
fn level_table(
    ctx: &PrimeContext,
    numer: &[MulChar<'_>],
    denom: &[MulChar<'_>],
    l: u32,
) -> Result<Vec<CycInt>> {
    let k = denom.len();
    if k == 1 {
        return (0..ctx.p())
            .map(|w| hg2f1_numerator(ctx, &numer[0], &numer[1], &denom[0], w as i64)?.embed(l))
            .collect();
    }
    let lower = level_table(ctx, &numer[..k], &denom[..k - 1], l)?;
    Ok((0..ctx.p())
        .map(|w| inductive_step(ctx, &numer[k], &denom[k - 1], &lower, l, w))
        .collect())
}

/// `A B(-1) sum_y A(y) (B conj A)(1 - y) lower(w y)`.
fn inductive_step(
    ctx: &PrimeContext,
    a: &MulChar<'_>,
    b: &MulChar<'_>,
    lower: &[CycInt],
    l: u32,
    w: u64,
) -> CycInt {
    let p = ctx.p();
    let ba = b.mul(&a.conj());
    let (ta, tba) = (a.lifted(l), ba.lifted(l));
    let mut buckets = vec![CycInt::zero(l); l as usize];
    for y in 0..p {
        let (Some(d0), Some(d1)) = (ctx.dlog_raw(y), ctx.dlog_raw((p + 1 - y) % p)) else {
            continue;
        };
        let e = ((ta * d0 + tba * d1) % l as u64) as usize;
        let v = &lower[(w * y % p) as usize];
        if !v.is_zero() {
            buckets[e] = &buckets[e] + v;
        }
    }
    let mut acc = CycInt::zero(l);
    for (e, s) in buckets.iter().enumerate() {
        if !s.is_zero() {
            acc = &acc + &(s * &CycInt::zeta_pow(l, e as i64));
        }
    }
    acc.scale(&BigInt::from(a.mul(b).sign()))
}

/// Floating-point evaluation of Greene's definition
/// `p/(p-1) sum_chi (A_0 chi over chi) prod_i (A_i chi over B_i chi) chi(z)`
/// over all `p - 1` characters, with complex `(p-1)`-th roots of unity.
///
/// Builds in `O(n p^2)`; each evaluation is `O(p)`.
pub struct GreeneOracle<'a> {
    ctx: &'a PrimeContext,
    unit: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl<'a> GreeneOracle<'a> {
    pub fn new(ctx: &'a PrimeContext, numer: &[MulChar<'_>], denom: &[MulChar<'_>]) -> Self {
        assert_eq!(
            numer.len(),
            denom.len() + 1,
            "n+1 numerator and n denominator characters"
        );
        let p = ctx.p();
        let m = p - 1;
        let unit: Vec<Complex64> = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64))
            .collect();
        let full = |c: &MulChar<'_>| c.index() as u64 * (m / c.order() as u64);
        let a_idx: Vec<u64> = numer.iter().map(full).collect();
        let b_idx: Vec<u64> = std::iter::once(0).chain(denom.iter().map(full)).collect();
        // dlog of 1 - x for x = 2..p-1
        let pairs: Vec<(u64, u64)> = (2..p)
            .map(|x| (ctx.dlog_raw(x).unwrap(), ctx.dlog_raw(p + 1 - x).unwrap()))
            .collect();
        let jacobi = |s: u64, t: u64| -> Complex64 {
            pairs
                .iter()
                .map(|&(dx, d1)| unit[((s * dx + t * d1) % m) as usize])
                .sum()
        };
        let coeffs = (0..m)
            .map(|t| {
                let mut acc = Complex64::new(1.0, 0.0);
                for (a, b) in a_idx.iter().zip(&b_idx) {
                    let x = (a + t) % m;
                    let y = (b + t) % m;
                    // (X over Y) = Y(-1) J(X, conj Y) / p, and Y(-1) = (-1)^y
                    let sign = if y.is_multiple_of(2) { 1.0 } else { -1.0 };
                    acc *= jacobi(x, (m - y) % m) * sign / p as f64;
                }
                acc
            })
            .collect();
        GreeneOracle { ctx, unit, coeffs }
    }

    pub fn eval(&self, z: i64) -> Complex64 {
        let p = self.ctx.p();
        let m = p - 1;
        let Some(d) = self.ctx.dlog_raw(self.ctx.reduce(z)) else {
            return Complex64::zero();
        };
        let s: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(t, c)| c * self.unit[(t as u64 * d % m) as usize])
            .sum();
        s * (p as f64 / m as f64)
    }
}

/// One-shot float evaluation of `2F1(A, B; C | z)` by the all-characters sum.
pub fn hg2f1_float_oracle(
    ctx: &PrimeContext,
    a: &MulChar<'_>,
    b: &MulChar<'_>,
    c: &MulChar<'_>,
    z: i64,
) -> Complex64 {
    GreeneOracle::new(ctx, &[*a, *b], &[*c]).eval(z)
}
