//! Point counts for Weierstrass curves and the families
//! `C_{N,a,c}: y^N = c x^(N/2-1)(x-1)(x-a)` and `D_{N,c,d}: c y^2 = x^(N/2+1) + c d x`,
//! using the infinity conventions under which the character-sum formulas hold.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{jacobi_sum, MulChar};
use crate::cyclotomic::{check_conductor, CycInt};
use crate::error::{Error, Result};
use crate::field::PrimeContext;
use crate::hypergeometric::factored_char_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum CurveSpec {
    /// `c y^2 = x^3 + a2 x^2 + a4 x + a6`.
    Weierstrass { c: i64, a2: i64, a4: i64, a6: i64 },
    /// `y^N = c x^(N/2-1)(x-1)(x-a)` for even `N`;
    /// `y^(2N) = c x (x-1)^(N-1) (x-a)^(N-1)` for odd `N`.
    C { n: u32, a: i64, c: i64 },
    /// `c y^2 = x^(N/2+1) + c d x`.
    D { n: u32, c: i64, d: i64 },
}

impl CurveSpec {
    pub const fn weierstrass(a2: i64, a4: i64, a6: i64) -> Self {
        CurveSpec::Weierstrass { c: 1, a2, a4, a6 }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveSpec::Weierstrass { c, a2, a4, a6 } => {
                write!(f, "E[c={c},a2={a2},a4={a4},a6={a6}]")
            }
            CurveSpec::C { n, a, c } => write!(f, "C[N={n},a={a},c={c}]"),
            CurveSpec::D { n, c, d } => write!(f, "D[N={n},c={c},d={d}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub p: u64,
    pub curve: CurveSpec,
    pub count: i64,
    pub trace: i64,
}

impl TraceRecord {
    fn new(p: u64, curve: CurveSpec, count: i64) -> Self {
        TraceRecord {
            p,
            curve,
            count,
            trace: p as i64 + 1 - count,
        }
    }
}

fn nonzero(ctx: &PrimeContext, v: i64, what: &str) -> Result<u64> {
    match ctx.reduce(v) {
        0 => Err(Error::BadParams(format!(
            "{what} must be nonzero mod {}",
            ctx.p()
        ))),
        r => Ok(r),
    }
}

/// `sum_x (1 + phi(c f(x)))` for a polynomial `f` given by its coefficients,
/// lowest degree first.
fn quadratic_affine_count(ctx: &PrimeContext, c: u64, poly: &[u64]) -> i64 {
    let p = ctx.p();
    let mut total = 0i64;
    for x in 0..p {
        let fx = poly.iter().rev().fold(0u64, |acc, &k| (acc * x + k) % p);
        total += 1 + ctx.quadratic_character((c * fx % p) as i64) as i64;
    }
    total
}

/// Count and trace of a nonsingular Weierstrass curve, with one point at
/// infinity.
pub fn count_elliptic(ctx: &PrimeContext, spec: CurveSpec) -> Result<TraceRecord> {
    let CurveSpec::Weierstrass { c, a2, a4, a6 } = spec else {
        return Err(Error::BadParams(format!(
            "{spec} is not a Weierstrass curve"
        )));
    };
    let p = ctx.p();
    let cr = nonzero(ctx, c, "c")?;
    let (b, cc, d) = (a2 as i128, a4 as i128, a6 as i128);
    let disc = 18 * b * cc * d - 4 * b.pow(3) * d + b * b * cc * cc - 4 * cc.pow(3) - 27 * d * d;
    if disc.rem_euclid(p as i128) == 0 {
        return Err(Error::SingularCurve(p));
    }
    let poly = [ctx.reduce(a6), ctx.reduce(a4), ctx.reduce(a2), 1];
    let rec = TraceRecord::new(p, spec, 1 + quadratic_affine_count(ctx, cr, &poly));
    if (rec.trace as i128).pow(2) > 4 * p as i128 {
        return Err(Error::HasseViolation {
            p,
            trace: rec.trace,
        });
    }
    Ok(rec)
}

fn check_d(ctx: &PrimeContext, n: u32, c: i64, d: i64) -> Result<(u64, u64)> {
    if n < 2 || n % 2 == 1 || !(ctx.p() - 1).is_multiple_of(n as u64) {
        return Err(Error::BadParams(format!(
            "N = {n} must be even and divide p - 1 = {}",
            ctx.p() - 1
        )));
    }
    Ok((nonzero(ctx, c, "c")?, nonzero(ctx, d, "d")?))
}

fn d_infinity(ctx: &PrimeContext, n: u32, c: u64) -> i64 {
    if n.is_multiple_of(4) {
        1
    } else {
        1 + ctx.quadratic_character(c as i64) as i64
    }
}

/// Brute-force count of `D_{N,c,d}`: affine points plus one point at infinity
/// when `4 | N`, and `1 + phi(c)` points otherwise.
pub fn count_d(ctx: &PrimeContext, n: u32, c: i64, d: i64) -> Result<TraceRecord> {
    let (cr, dr) = check_d(ctx, n, c, d)?;
    let p = ctx.p();
    let mut poly = vec![0u64; n as usize / 2 + 2];
    poly[n as usize / 2 + 1] = 1;
    poly[1] = (poly[1] + cr * dr) % p;
    let count = quadratic_affine_count(ctx, cr, &poly) + d_infinity(ctx, n, cr);
    Ok(TraceRecord::new(p, CurveSpec::D { n, c, d }, count))
}

/// The Jacobi-sum expression for `#D_{N,c,d}`:
/// `p + 1 [+ phi(c)] + phi(d) sum_{psi^N = eps, psi^(N/2) != eps} psi(-cd) J(phi, psi)`.
pub fn jacobi_formula_d(ctx: &PrimeContext, n: u32, c: i64, d: i64) -> Result<i64> {
    let (cr, dr) = check_d(ctx, n, c, d)?;
    check_conductor(n)?;
    let p = ctx.p();
    let phi = MulChar::quadratic(ctx);
    let arg = ctx.reduce(-((cr * dr % p) as i64));
    let mut sum = CycInt::zero(n);
    for j in (1..n as i64).step_by(2) {
        let psi = MulChar::new(ctx, n, j)?;
        sum = &sum + &(&psi.value(arg as i64)? * &jacobi_sum(&phi, &psi)?);
    }
    let s = rational(&sum)?;
    Ok(p as i64 + d_infinity(ctx, n, cr) + ctx.quadratic_character(dr as i64) as i64 * s)
}

fn rational(v: &CycInt) -> Result<i64> {
    v.as_rational()
        .and_then(BigInt::to_i64)
        .ok_or_else(|| Error::NotRational(v.render_tagged()))
}

/// Exponent `M` of `y` and the factors `(root, multiplicity)` of `f` for
/// `C_{N,a,c}`.
fn c_shape(n: u32, a: i64) -> (u64, [(i64, u32); 3]) {
    if n.is_multiple_of(2) {
        (n as u64, [(0, n / 2 - 1), (1, 1), (a, 1)])
    } else {
        (2 * n as u64, [(0, 1), (1, n - 1), (a, n - 1)])
    }
}

fn check_c(ctx: &PrimeContext, n: u32, a: i64, c: i64) -> Result<u64> {
    if ![3, 4, 6, 8, 12].contains(&n) {
        return Err(Error::BadParams(format!(
            "N = {n} is not one of 3, 4, 6, 8, 12"
        )));
    }
    let ar = ctx.reduce(a);
    if ar == 0 || ar == 1 {
        return Err(Error::BadParams(format!(
            "a = {a} must differ from 0 and 1 mod {}",
            ctx.p()
        )));
    }
    nonzero(ctx, c, "c")
}

fn c_boundary(ctx: &PrimeContext, m: u64, c: u64) -> i64 {
    if m.is_multiple_of(4) {
        1
    } else {
        1 + 2 * ctx.quadratic_character(c as i64) as i64
    }
}

fn c_value(ctx: &PrimeContext, factors: &[(i64, u32)], c: u64, x: u64) -> u64 {
    let p = ctx.p();
    factors.iter().fold(c, |acc, &(s, e)| {
        let t = (x + p - ctx.reduce(s)) % p;
        acc * crate::field::pow_mod(t, e as u64, p) % p
    })
}

/// `#C_{N,a,c}` in the convention `p + boundary + sum_k psi^k(c) S_k(a)`:
/// the affine count `sum_x #{y : y^M = c f(x)}` plus one point when `4 | M`
/// and `1 + 2 phi(c)` otherwise.
pub fn count_c(ctx: &PrimeContext, n: u32, a: i64, c: i64) -> Result<i64> {
    let cr = check_c(ctx, n, a, c)?;
    let (m, factors) = c_shape(n, a);
    let affine: u64 = (0..ctx.p())
        .map(|x| ctx.count_nth_roots(c_value(ctx, &factors, cr, x), m))
        .sum();
    Ok(affine as i64 + c_boundary(ctx, m, cr))
}

/// The same quantity assembled from character sums over all nontrivial
/// characters of order dividing `M`.
pub fn count_c_decomposition(ctx: &PrimeContext, n: u32, a: i64, c: i64) -> Result<i64> {
    let cr = check_c(ctx, n, a, c)?;
    let (m, factors) = c_shape(n, a);
    let m = m as u32;
    if !(ctx.p() - 1).is_multiple_of(m as u64) {
        return Err(Error::OrderNotDividing {
            p: ctx.p(),
            order: m,
        });
    }
    let mut sum = CycInt::zero(m);
    for k in 1..m as i64 {
        let chi = MulChar::new(ctx, m, k)?;
        let s = factored_char_sum(ctx, &chi, &factors)?;
        sum = &sum + &(&chi.value(cr as i64)? * &s);
    }
    Ok(ctx.p() as i64 + c_boundary(ctx, m as u64, cr) + rational(&sum)?)
}

/// All affine points of `C_{N,a,c}`.
pub fn points_c(ctx: &PrimeContext, n: u32, a: i64, c: i64) -> Result<Vec<(u64, u64)>> {
    let cr = check_c(ctx, n, a, c)?;
    let (m, factors) = c_shape(n, a);
    let mut pts = Vec::new();
    for x in 0..ctx.p() {
        for y in ctx.nth_roots(c_value(ctx, &factors, cr, x), m) {
            pts.push((x, y));
        }
    }
    Ok(pts)
}

/// Checks that the explicit maps from `C_{N,b^2,c}` land on their targets,
/// for both square roots `b` of `a`:
///
/// * even `N`: `(x, y) -> (y^2/x, y(x+b)/x)` onto `c Y^2 = X^(N/2+1) + c(1+b)^2 X`;
/// * odd `N`: `(x, y) -> ((x-1)(x-a)/y^2, (x+b)((x-1)(x-a))^((N-1)/2)/y^N)`
///   onto `c Y^2 = c X^N + (1+b)^2`.
///
/// Points where the map is undefined (`x = 0`, and `y = 0` for odd `N`) are
/// skipped. With `sample = Some(k)` only `k` points chosen by a seeded RNG are
/// checked.
pub fn morphism_check(
    ctx: &PrimeContext,
    n: u32,
    a: i64,
    c: i64,
    sample: Option<usize>,
    seed: u64,
) -> Result<bool> {
    let p = ctx.p();
    let b0 = ctx.sqrt(a).ok_or(Error::NoSquareRoot(ctx.reduce(a)))?;
    let cr = ctx.reduce(c);
    let mut pts: Vec<(u64, u64)> = points_c(ctx, n, a, c)?
        .into_iter()
        .filter(|&(x, y)| x != 0 && (n.is_multiple_of(2) || y != 0))
        .collect();
    if let Some(k) = sample {
        if k < pts.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            pts.shuffle(&mut rng);
            pts.truncate(k);
        }
    }
    let pw = |x: u64, e: u64| crate::field::pow_mod(x, e, p);
    let inv = |x: u64| ctx.inverse(x).expect("nonzero");
    let ar = ctx.reduce(a);
    for b in [b0, (p - b0) % p] {
        let k = (1 + b) * (1 + b) % p;
        for &(x, y) in &pts {
            let ok = if n.is_multiple_of(2) {
                let xi = inv(x);
                let bx = y * y % p * xi % p;
                let by = y * ((x + b) % p) % p * xi % p;
                cr * by % p * by % p == (pw(bx, n as u64 / 2 + 1) + cr * k % p * bx) % p
            } else {
                let q = (x + p - 1) * ((x + p - ar) % p) % p;
                let bx = q * inv(y * y % p) % p;
                let by = (x + b) % p * pw(q, (n as u64 - 1) / 2) % p * inv(pw(y, n as u64)) % p;
                cr * by % p * by % p == (cr * pw(bx, n as u64) + k) % p
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `c y^2 = x^3 + c d x` and `c y^2 = x^3 - 4 c d e^4 x` have equal
/// traces at `p`.
pub fn twist_traces_agree(ctx: &PrimeContext, c: i64, d: i64, e: i64) -> Result<bool> {
    let p = ctx.p() as i64;
    let m = |u: i64, v: i64| (u as i128 * v as i128).rem_euclid(p as i128) as i64;
    let cd = m(c, d);
    let e4 = m(m(e, e), m(e, e));
    let lhs = count_elliptic(
        ctx,
        CurveSpec::Weierstrass {
            c,
            a2: 0,
            a4: cd,
            a6: 0,
        },
    )?;
    let rhs = count_elliptic(
        ctx,
        CurveSpec::Weierstrass {
            c,
            a2: 0,
            a4: m(-4 * cd, e4),
            a6: 0,
        },
    )?;
    Ok(lhs.trace == rhs.trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Counts `c y^2 = f(x)` by enumerating all pairs.
    fn brute_pairs(p: u64, c: u64, f: impl Fn(u64) -> u64) -> i64 {
        let mut n = 0;
        for x in 0..p {
            let fx = f(x) % p;
            for y in 0..p {
                if c * y % p * y % p == fx {
                    n += 1;
                }
            }
        }
        n
    }

    const X3_MINUS_X: CurveSpec = CurveSpec::weierstrass(0, -1, 0);

    #[test]
    fn elliptic_examples() {
        let c13 = PrimeContext::full(13).unwrap();
        let r = count_elliptic(&c13, X3_MINUS_X).unwrap();
        assert_eq!((r.count, r.trace), (8, 6));
        let c5 = PrimeContext::full(5).unwrap();
        assert_eq!(count_elliptic(&c5, X3_MINUS_X).unwrap().trace, -2);
        for p in [7u64, 11, 19, 23, 31, 43] {
            let ctx = PrimeContext::full(p).unwrap();
            assert_eq!(count_elliptic(&ctx, X3_MINUS_X).unwrap().trace, 0);
        }
        assert_eq!(
            count_elliptic(&c13, CurveSpec::weierstrass(0, 0, 0)).unwrap_err(),
            Error::SingularCurve(13)
        );
        // y^2 = x^3 + 4x^2 + 2x has discriminant 64, singular only at 2
        assert!(count_elliptic(&c13, CurveSpec::weierstrass(4, 2, 0)).is_ok());
    }

    #[test]
    fn elliptic_matches_pair_enumeration() {
        for p in [13u64, 17, 29, 37] {
            let ctx = PrimeContext::full(p).unwrap();
            for (c, a2, a4, a6) in [
                (1i64, 0i64, -1i64, 0i64),
                (1, 0, 0, 1),
                (1, 4, 2, 0),
                (3, 1, -3, 5),
            ] {
                let spec = CurveSpec::Weierstrass { c, a2, a4, a6 };
                let Ok(rec) = count_elliptic(&ctx, spec) else {
                    continue;
                };
                let f = |x: u64| {
                    let x = x as i64;
                    (x * x * x + a2 * x * x + a4 * x + a6).rem_euclid(p as i64) as u64
                };
                assert_eq!(
                    rec.count,
                    1 + brute_pairs(p, ctx.reduce(c), f),
                    "{spec} at {p}"
                );
            }
        }
    }

    #[test]
    fn d_family_examples() {
        let c13 = PrimeContext::full(13).unwrap();
        let rec = count_d(&c13, 4, 1, 1).unwrap();
        assert_eq!(rec.count, 1 + brute_pairs(13, 1, |x| x * x * x + x));
        assert_eq!(rec.count as i64, jacobi_formula_d(&c13, 4, 1, 1).unwrap());
        // c = 2 is a nonsquare mod 13, so no points at infinity
        let g = c13.generator() as i64;
        let rec = count_d(&c13, 6, g, 1).unwrap();
        assert_eq!(
            rec.count,
            brute_pairs(13, g as u64, |x| (x.pow(4) + g as u64 * x) % 13)
        );
        let c17 = PrimeContext::full(17).unwrap();
        assert_eq!(
            count_d(&c17, 8, 1, 1).unwrap().count,
            jacobi_formula_d(&c17, 8, 1, 1).unwrap()
        );
        assert!(count_d(&c13, 8, 1, 1).is_err());
        assert!(count_d(&c13, 4, 0, 1).is_err());
    }

    #[test]
    fn d_formula_exhaustive_small() {
        for (p, n) in [
            (13u64, 4u32),
            (13, 6),
            (13, 12),
            (17, 8),
            (37, 12),
            (41, 8),
            (29, 4),
        ] {
            let ctx = PrimeContext::full(p).unwrap();
            for c in 1..p as i64 {
                for d in 1..p as i64 {
                    assert_eq!(
                        count_d(&ctx, n, c, d).unwrap().count,
                        jacobi_formula_d(&ctx, n, c, d).unwrap(),
                        "p={p} N={n} c={c} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn c_family_examples() {
        let ctx = PrimeContext::full(13).unwrap();
        assert_eq!(
            count_c(&ctx, 6, 4, 1).unwrap(),
            count_c_decomposition(&ctx, 6, 4, 1).unwrap()
        );
        assert_eq!(
            count_c(&ctx, 4, 4, 1).unwrap(),
            count_c_decomposition(&ctx, 4, 4, 1).unwrap()
        );
        assert!(matches!(count_c(&ctx, 4, 1, 1), Err(Error::BadParams(_))));
        assert!(matches!(count_c(&ctx, 4, 0, 1), Err(Error::BadParams(_))));
        // y^4 = x(x-1)(x-4): affine pairs by enumeration
        let affine = (0..13u64)
            .flat_map(|x| (0..13u64).map(move |y| (x, y)))
            .filter(|&(x, y)| y.pow(4) % 13 == x * (x + 12) % 13 * ((x + 9) % 13) % 13)
            .count() as i64;
        assert_eq!(count_c(&ctx, 4, 4, 1).unwrap(), affine + 1);
        assert_eq!(points_c(&ctx, 4, 4, 1).unwrap().len() as i64, affine);
    }

    #[test]
    fn morphism_examples() {
        let ctx = PrimeContext::full(13).unwrap();
        assert!(morphism_check(&ctx, 4, 4, 1, None, 0).unwrap());
        assert!(morphism_check(&ctx, 6, 4, 1, None, 0).unwrap());
        assert!(morphism_check(&ctx, 3, 4, 1, None, 0).unwrap());
        assert!(morphism_check(&ctx, 12, 9, 5, None, 0).unwrap());
        assert_eq!(
            morphism_check(&ctx, 4, 2, 1, None, 0).unwrap_err(),
            Error::NoSquareRoot(2)
        );
    }

    #[test]
    fn twist_consequence() {
        for p in [13u64, 17, 29, 37, 41] {
            let ctx = PrimeContext::full(p).unwrap();
            for (c, d, e) in [(1, 1, 2), (2, 3, 5), (3, 1, 1)] {
                assert!(twist_traces_agree(&ctx, c, d, e).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn c_count_decomposes(idx in 0usize..6, a in 2i64..1000, c in 1i64..1000, n_idx in 0usize..5) {
            let p = [13u64, 37, 61, 73, 97, 109][idx];
            let n = [3u32, 4, 6, 12, 8][n_idx];
            let m = if n.is_multiple_of(2) { n } else { 2 * n };
            prop_assume!((p - 1).is_multiple_of(m as u64));
            let ctx = PrimeContext::full(p).unwrap();
            prop_assume!(ctx.reduce(a) > 1 && ctx.reduce(c) != 0);
            prop_assert_eq!(count_c(&ctx, n, a, c).unwrap(), count_c_decomposition(&ctx, n, a, c).unwrap());
        }

        #[test]
        fn hasse_bound_holds(idx in 0usize..8, a4 in -50i64..50, a6 in -50i64..50) {
            let p = [5u64, 7, 11, 13, 101, 211, 997, 1009][idx];
            let ctx = PrimeContext::full(p).unwrap();
            match count_elliptic(&ctx, CurveSpec::weierstrass(0, a4, a6)) {
                Ok(r) => prop_assert!((r.trace as f64).abs() <= 2.0 * (p as f64).sqrt()),
                Err(e) => prop_assert_eq!(e, Error::SingularCurve(p)),
            }
        }
    }
}
