//! Hecke characters of the four CM curves at split primes.
//!
//! Each value is a generator of the prime ideal fixed by the context roots,
//! normalized by a congruence condition. [`HeckeValue::check`] validates norm,
//! ideal membership and the trace identity against a brute-force point count.

use std::fmt;

use num_integer::Roots;
use serde::Serialize;

use crate::curves::{count_elliptic, CurveSpec};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{pow_mod, sqrt_mod, PrimeContext, Subfield};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuadRing {
    /// `Z[i]`
    Gaussian,
    /// `Z[sqrt(-2)]`
    SqrtMinus2,
    /// `Z[zeta_6]`
    Eisenstein,
}

impl QuadRing {
    pub fn discriminant_tag(self) -> i64 {
        match self {
            QuadRing::Gaussian => -1,
            QuadRing::SqrtMinus2 => -2,
            QuadRing::Eisenstein => -3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadRing::Gaussian => "Z[i]",
            QuadRing::SqrtMinus2 => "Z[sqrt-2]",
            QuadRing::Eisenstein => "Z[zeta6]",
        }
    }

    pub fn units(self) -> Vec<QuadInt> {
        let pairs: &[(i64, i64)] = match self {
            QuadRing::Gaussian => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            QuadRing::SqrtMinus2 => &[(1, 0), (-1, 0)],
            QuadRing::Eisenstein => &[(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)],
        };
        pairs
            .iter()
            .map(|&(x, y)| QuadInt::new(self, x, y))
            .collect()
    }
}

/// `x + y w` with `w = i`, `sqrt(-2)` or `zeta_6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadInt {
    pub ring: QuadRing,
    pub x: i64,
    pub y: i64,
}

impl QuadInt {
    pub const fn new(ring: QuadRing, x: i64, y: i64) -> Self {
        QuadInt { ring, x, y }
    }

    pub fn norm(&self) -> i64 {
        let (x, y) = (self.x, self.y);
        match self.ring {
            QuadRing::Gaussian => x * x + y * y,
            QuadRing::SqrtMinus2 => x * x + 2 * y * y,
            QuadRing::Eisenstein => x * x + x * y + y * y,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ring, o.ring, "product across rings");
        let (a, b, c, d) = (self.x, self.y, o.x, o.y);
        let (x, y) = match self.ring {
            QuadRing::Gaussian => (a * c - b * d, a * d + b * c),
            QuadRing::SqrtMinus2 => (a * c - 2 * b * d, a * d + b * c),
            // zeta_6^2 = zeta_6 - 1
            QuadRing::Eisenstein => (a * c - b * d, a * d + b * c + b * d),
        };
        QuadInt::new(self.ring, x, y)
    }

    pub fn conj(&self) -> Self {
        match self.ring {
            QuadRing::Eisenstein => QuadInt::new(self.ring, self.x + self.y, -self.y),
            _ => QuadInt::new(self.ring, self.x, -self.y),
        }
    }

    pub fn neg(&self) -> Self {
        QuadInt::new(self.ring, -self.x, -self.y)
    }

    pub fn trace(&self) -> i64 {
        match self.ring {
            QuadRing::Eisenstein => 2 * self.x + self.y,
            _ => 2 * self.x,
        }
    }

    /// Image in `Z[zeta_N]` with `i = zeta_4`, `sqrt(-2) = zeta_8 + zeta_8^3`
    /// and `zeta_6` itself.
    pub fn to_cyc(&self) -> CycInt {
        let (n, w) = match self.ring {
            QuadRing::Gaussian => (4, CycInt::zeta_pow(4, 1)),
            QuadRing::SqrtMinus2 => (8, &CycInt::zeta_pow(8, 1) + &CycInt::zeta_pow(8, 3)),
            QuadRing::Eisenstein => (6, CycInt::zeta_pow(6, 1)),
        };
        &CycInt::from_int(n, self.x) + &w.scale(&self.y.into())
    }

    /// `x + y r mod p`, where `r` is the residue of `w`.
    pub fn residue(&self, p: u64, r: u64) -> u64 {
        let p = p as i128;
        (self.x as i128 + self.y as i128 * r as i128).rem_euclid(p) as u64
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y < 0 { '-' } else { '+' };
        write!(
            f,
            "{}:{}{}{}*w",
            self.ring.name(),
            self.x,
            sign,
            self.y.abs()
        )
    }
}

/// Nonnegative `(x, y)` with `x^2 + |D| y^2 = p` for `D` in `{-1, -2}`, and
/// with `x^2 + x y + y^2 = p` for `D = -3`.
pub fn cornacchia(p: u64, d: i64) -> Result<(i64, i64)> {
    let k = d.unsigned_abs();
    let splits = match k {
        1 => p % 4 == 1,
        2 => p % 8 == 1 || p % 8 == 3,
        3 => p % 3 == 1,
        _ => return Err(Error::BadParams(format!("D = {d} is not -1, -2 or -3"))),
    };
    if !crate::field::is_odd_prime(p) || !splits {
        return Err(Error::NotRepresentable { p, d: k });
    }
    let mut r = sqrt_mod(p - k, p).ok_or(Error::NotRepresentable { p, d: k })?;
    if r <= p / 2 {
        r = p - r;
    }
    let (mut a, mut b) = (p, r);
    let bound = p.sqrt();
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p - b * b;
    let y = (rest / k).sqrt();
    if !rest.is_multiple_of(k) || k * y * y != rest {
        return Err(Error::NotRepresentable { p, d: k });
    }
    let (x, y) = (b as i64, y as i64);
    if k != 3 {
        return Ok((x, y));
    }
    // x^2 + 3y^2 = (x - y)^2 + (x - y)(2y) + (2y)^2
    let mut v = QuadInt::new(QuadRing::Eisenstein, x - y, 2 * y);
    let zeta = QuadInt::new(QuadRing::Eisenstein, 0, 1);
    while v.x < 0 || v.y < 0 {
        v = v.mul(&zeta);
    }
    Ok((v.x, v.y))
}

/// The CM curves and their rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CmCurve {
    /// `y^2 = x^3 - x`, CM by `Z[i]`.
    X3MinusX,
    /// `y^2 = x^3 + 4x^2 + 2x`, CM by `Z[sqrt(-2)]`.
    X3Plus4X2Plus2X,
    /// `y^2 = x^3 + 1`, CM by `Z[zeta_6]`.
    X3Plus1,
    /// `y^2 = x^3 - 3x`, CM by `Z[i]`.
    X3Minus3X,
}

impl CmCurve {
    pub const ALL: [CmCurve; 4] = [
        CmCurve::X3MinusX,
        CmCurve::X3Plus4X2Plus2X,
        CmCurve::X3Plus1,
        CmCurve::X3Minus3X,
    ];

    pub fn spec(self) -> CurveSpec {
        match self {
            CmCurve::X3MinusX => CurveSpec::weierstrass(0, -1, 0),
            CmCurve::X3Plus4X2Plus2X => CurveSpec::weierstrass(4, 2, 0),
            CmCurve::X3Plus1 => CurveSpec::weierstrass(0, 0, 1),
            CmCurve::X3Minus3X => CurveSpec::weierstrass(0, -3, 0),
        }
    }

    pub fn ring(self) -> QuadRing {
        match self {
            CmCurve::X3MinusX | CmCurve::X3Minus3X => QuadRing::Gaussian,
            CmCurve::X3Plus4X2Plus2X => QuadRing::SqrtMinus2,
            CmCurve::X3Plus1 => QuadRing::Eisenstein,
        }
    }

    /// `m` such that the character is evaluated at primes `p = 1 mod m`.
    pub fn modulus(self) -> u64 {
        match self {
            CmCurve::X3MinusX | CmCurve::X3Minus3X => 4,
            CmCurve::X3Plus4X2Plus2X => 8,
            CmCurve::X3Plus1 => 6,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CmCurve::X3MinusX => "y^2=x^3-x",
            CmCurve::X3Plus4X2Plus2X => "y^2=x^3+4x^2+2x",
            CmCurve::X3Plus1 => "y^2=x^3+1",
            CmCurve::X3Minus3X => "y^2=x^3-3x",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeckeValue {
    pub value: QuadInt,
    pub p: u64,
    /// Residue of the ring generator `w` modulo the chosen prime.
    pub ideal_root: u64,
    pub curve: CmCurve,
}

impl HeckeValue {
    /// Verifies `N(value) = p`, `value = 0` modulo the prime, and
    /// `value + conj(value) = a_p` of the curve.
    pub fn check(&self, ctx: &PrimeContext) -> Result<()> {
        let fail = |detail: String| Error::NormalizationMismatch {
            p: self.p,
            curve: self.curve.label().to_string(),
            detail,
        };
        if self.value.norm() != self.p as i64 {
            return Err(fail(format!(
                "norm of {} is {}",
                self.value,
                self.value.norm()
            )));
        }
        if self.value.residue(self.p, self.ideal_root) != 0 {
            return Err(fail(format!("{} is not in the chosen prime", self.value)));
        }
        let ap = count_elliptic(ctx, self.curve.spec())?.trace;
        if self.value.trace() != ap {
            return Err(fail(format!(
                "trace of {} is {}, a_p is {ap}",
                self.value,
                self.value.trace()
            )));
        }
        Ok(())
    }
}

fn require(p: u64, modulus: u64) -> Result<()> {
    if p % modulus == 1 {
        Ok(())
    } else {
        Err(Error::CongruenceViolation { p, modulus })
    }
}

/// Associates and conjugates of `(x, y)` lying in the prime `(p, w - r)`.
fn generators_in(ring: QuadRing, x: i64, y: i64, p: u64, r: u64) -> Vec<QuadInt> {
    let base = QuadInt::new(ring, x, y);
    let mut out = Vec::new();
    for g in [base, base.conj()] {
        for u in ring.units() {
            let v = g.mul(&u);
            if v.residue(p, r) == 0 && !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// `v = 1 mod (1 + i)^3`.
fn is_primary_gaussian(v: &QuadInt) -> bool {
    (v.x - 1 + v.y).rem_euclid(4) == 0 && (v.y - v.x + 1).rem_euclid(4) == 0
}

/// The generator of `(p, i - r)` that is `1 mod (1 + i)^3`.
pub fn primary_gaussian(p: u64, r: u64) -> Result<QuadInt> {
    let (x, y) = cornacchia(p, -1)?;
    generators_in(QuadRing::Gaussian, x, y, p, r)
        .into_iter()
        .find(is_primary_gaussian)
        .ok_or(Error::NotRepresentable { p, d: 1 })
}

/// `chi(p)` for `y^2 = x^3 - x`: the primary generator of `(p, i - r_4)`.
pub fn hecke_zi(ctx: &PrimeContext) -> Result<HeckeValue> {
    let p = ctx.p();
    require(p, 4)?;
    let r = ctx.root(4)?;
    Ok(HeckeValue {
        value: primary_gaussian(p, r)?,
        p,
        ideal_root: r,
        curve: CmCurve::X3MinusX,
    })
}

/// `i^k (a + b i)` where `a + b i = i^k mod (1 + i)^3`.
pub fn zi_unit_form(g: &QuadInt) -> QuadInt {
    let i = QuadInt::new(QuadRing::Gaussian, 0, 1);
    let mut u = QuadInt::new(QuadRing::Gaussian, 1, 0);
    for _ in 0..4 {
        // g = u mod (1+i)^3 iff g conj(u) is primary
        if is_primary_gaussian(&g.mul(&u.conj())) {
            return u.mul(g);
        }
        u = u.mul(&i);
    }
    unreachable!("{g} has odd norm")
}

/// The parity formula: `(-1)^(b/2) (-1/a) (a + b i)` for odd `a`, and
/// `i (-1)^(a/2) (-1/b) (a + b i)` for odd `b`.
pub fn zi_parity_form(g: &QuadInt) -> QuadInt {
    let sym = |n: i64| if (n - 1).rem_euclid(4) == 0 { 1 } else { -1 };
    let sgn = |n: i64| if (n / 2) % 2 == 0 { 1 } else { -1 };
    if g.x % 2 != 0 {
        let s = sgn(g.y) * sym(g.x);
        QuadInt::new(QuadRing::Gaussian, s * g.x, s * g.y)
    } else {
        let s = sgn(g.x) * sym(g.y);
        QuadInt::new(QuadRing::Gaussian, 0, s).mul(g)
    }
}

/// `chi(P)` for `y^2 = x^3 + 4x^2 + 2x`, with `P = (p, sqrt(-2) - s)` and
/// `s = r_8 + r_8^3`:
/// `(-2/c)(c + d sqrt(-2))` times `(-1)^(d/2)` for even `d`, `-1` for odd `d`.
pub fn hecke_z2(ctx: &PrimeContext) -> Result<HeckeValue> {
    let p = ctx.p();
    require(p, 8)?;
    let s = ctx.derived_root(Subfield::SqrtMinus2)?;
    let (c, d) = cornacchia(p, -2)?;
    let g = generators_in(QuadRing::SqrtMinus2, c, d, p, s)[0];
    let (c, d) = (g.x, g.y);
    let minus_one = if (c - 1).rem_euclid(4) == 0 { 1 } else { -1 };
    let two = if (c * c - 1) / 8 % 2 == 0 { 1 } else { -1 };
    let unit = if d % 2 == 0 {
        if (d / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        -1
    };
    let k = minus_one * two * unit;
    Ok(HeckeValue {
        value: QuadInt::new(QuadRing::SqrtMinus2, k * c, k * d),
        p,
        ideal_root: s,
        curve: CmCurve::X3Plus4X2Plus2X,
    })
}

/// `k` with `alpha = zeta_6^k mod 2 sqrt(-3)`.
pub fn eisenstein_unit_residue(alpha: &QuadInt) -> Option<usize> {
    QuadRing::Eisenstein.units().iter().position(|u| {
        let (a, b) = (alpha.x - u.x, alpha.y - u.y);
        // divisibility by 2 sqrt(-3) = -2 + 4 zeta_6, of norm 12
        (2 * a + 4 * b) % 12 == 0 && (-4 * a - 2 * b) % 12 == 0
    })
}

fn eisenstein_generator(ctx: &PrimeContext) -> Result<(QuadInt, u64)> {
    let p = ctx.p();
    require(p, 6)?;
    let r = ctx.root(6)?;
    let (x, y) = cornacchia(p, -3)?;
    Ok((generators_in(QuadRing::Eisenstein, x, y, p, r)[0], r))
}

/// `chi(p)` for `y^2 = x^3 + 1`: the generator of `(p, zeta_6 - r_6)` that is
/// `1 mod 2 sqrt(-3)`, i.e. `zeta_6^(-k) alpha` for `alpha = zeta_6^k`.
pub fn hecke_z6(ctx: &PrimeContext) -> Result<HeckeValue> {
    let (alpha, r) = eisenstein_generator(ctx)?;
    let p = ctx.p();
    let k = eisenstein_unit_residue(&alpha).ok_or(Error::NotRepresentable { p, d: 3 })?;
    let units = QuadRing::Eisenstein.units();
    Ok(HeckeValue {
        value: units[(6 - k) % 6].mul(&alpha),
        p,
        ideal_root: r,
        curve: CmCurve::X3Plus1,
    })
}

/// The literal `zeta_6^k alpha` for a generator `alpha = zeta_6^k mod 2 sqrt(-3)`.
/// Kept as a diagnostic: it depends on the choice of `alpha` unless `k` is 0 or 3.
pub fn z6_literal_form(alpha: &QuadInt) -> Option<QuadInt> {
    let k = eisenstein_unit_residue(alpha)?;
    Some(QuadRing::Eisenstein.units()[k].mul(alpha))
}

/// All generators of the prime `(p, zeta_6 - r_6)`.
pub fn eisenstein_generators(ctx: &PrimeContext) -> Result<Vec<QuadInt>> {
    let (alpha, _) = eisenstein_generator(ctx)?;
    Ok(QuadRing::Eisenstein
        .units()
        .iter()
        .map(|u| u.mul(&alpha))
        .collect())
}

/// `chi(P)` for `y^2 = x^3 - 3x`: `i^(-k)` times the primary generator of
/// `(p, i - r)`, where `3^((p-1)/4) = r^k` and `r` is the residue of `i`
/// (from `r_12` when stored, else `r_4`).
pub fn hecke_zi_twisted(ctx: &PrimeContext) -> Result<HeckeValue> {
    let p = ctx.p();
    require(p, 4)?;
    if p == 3 {
        return Err(Error::BadParams("y^2 = x^3 - 3x is singular at 3".into()));
    }
    let r = ctx.imag_unit_residue()?;
    let t = pow_mod(3, (p - 1) / 4, p);
    let k = (0..4u32)
        .find(|&k| pow_mod(r, k as u64, p) == t)
        .expect("3^((p-1)/4) is a fourth root of unity");
    let i_pow = QuadRing::Gaussian.units()[((4 - k) % 4) as usize];
    Ok(HeckeValue {
        value: i_pow.mul(&primary_gaussian(p, r)?),
        p,
        ideal_root: r,
        curve: CmCurve::X3Minus3X,
    })
}

pub fn hecke_value(ctx: &PrimeContext, curve: CmCurve) -> Result<HeckeValue> {
    match curve {
        CmCurve::X3MinusX => hecke_zi(ctx),
        CmCurve::X3Plus4X2Plus2X => hecke_z2(ctx),
        CmCurve::X3Plus1 => hecke_z6(ctx),
        CmCurve::X3Minus3X => hecke_zi_twisted(ctx),
    }
}
