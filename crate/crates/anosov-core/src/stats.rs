//! Quantitative orbit statistics: the C0*sqrt(t)*log(t) class-count bound,
//! the density-zero ratio it dominates, and entropy estimates from the
//! census.
//!
//! Square roots and logarithms are evaluated in exact rational interval
//! arithmetic with outward rounding, so every reported bound is a certified
//! bound of the real quantity, never a float approximation.

use num_bigint::BigInt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::surgery::{orbit_transport, SurgeryPath};
use crate::suspension::per_z;
use crate::torus::{OrbitCensus, PeriodicOrbit};

pub type Rational = BigRational;

/// Closed rational interval certified to contain the real value.
#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn point(r: Rational) -> Self {
        RatInterval { lo: r.clone(), hi: r }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    /// Product of intervals of nonnegative quantities.
    pub fn mul_nonneg(&self, other: &RatInterval) -> RatInterval {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RatInterval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    /// Quotient by an interval of strictly positive quantities.
    pub fn div_pos(&self, other: &RatInterval) -> RatInterval {
        assert!(other.lo.is_positive());
        RatInterval { lo: &self.lo / &other.hi, hi: &self.hi / &other.lo }
    }

    pub fn scale(&self, c: &Rational) -> RatInterval {
        if c.is_negative() {
            RatInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            RatInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
        } else {
            let m = (-self.lo.clone()).max(self.hi.clone());
            RatInterval { lo: Rational::zero(), hi: m }
        }
    }

    /// Outward rounding to denominator 10^digits, keeping numbers small.
    pub fn compress(&self, digits: u32) -> RatInterval {
        let scale = BigInt::from(10u32).pow(digits);
        let lo = (&self.lo * Rational::from(scale.clone())).floor();
        let hi = (&self.hi * Rational::from(scale.clone())).ceil();
        RatInterval {
            lo: lo / Rational::from(scale.clone()),
            hi: hi / Rational::from(scale),
        }
    }

    /// f64 rendering of the midpoint, for human-facing report columns only.
    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / Rational::from(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let digits = 17i64;
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (r * Rational::from(scale)).round().to_integer();
    let s = scaled.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN) / 10f64.powi(digits as i32)
}

/// Certified enclosure of sqrt(x) for x >= 0.
pub fn sqrt_interval(x: &Rational, digits: u32) -> RatInterval {
    assert!(!x.is_negative());
    if x.is_zero() {
        return RatInterval::point(Rational::zero());
    }
    // sqrt(a/b) = sqrt(a b) / b; isqrt of the 10^{2d}-scaled integer gives
    // floor and floor+1 as certified bounds.
    let a = x.numer().clone();
    let b = x.denom().clone();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = &a * &b * &scale * &scale;
    let s = scaled.sqrt();
    let denom = Rational::from(&b * &scale);
    RatInterval {
        lo: Rational::from(s.clone()) / denom.clone(),
        hi: Rational::from(s + 1) / denom,
    }
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// atanh(z) enclosure for 0 <= z < 1 via the odd power series with an
/// explicit geometric tail bound.
///
/// Runs in fixed-point integers scaled by 10^(digits+10); every rounding is
/// outward, so the enclosure is certified. This keeps the arithmetic on
/// small integers instead of ever-growing exact rationals.
fn atanh_interval(z: &Rational, terms: usize, digits: u32) -> RatInterval {
    assert!(!z.is_negative() && z < &Rational::one());
    let scale = BigInt::from(10u32).pow(digits + 10);
    let mut p_lo = (z.numer() * &scale).div_floor(z.denom());
    let mut p_hi = div_ceil(&(z.numer() * &scale), z.denom());
    let z2_lo = (&p_lo * &p_lo).div_floor(&scale);
    let z2_hi = div_ceil(&(&p_hi * &p_hi), &scale);
    assert!(z2_hi < scale, "series needs z bounded away from 1");
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    for k in 0..terms {
        let odd = BigInt::from(2 * k as u64 + 1);
        sum_lo += p_lo.div_floor(&odd);
        sum_hi += div_ceil(&p_hi, &odd);
        p_lo = (&p_lo * &z2_lo).div_floor(&scale);
        p_hi = div_ceil(&(&p_hi * &z2_hi), &scale);
    }
    // Tail: sum_{k>=K} z^{2k+1}/(2k+1) <= z^{2K+1} / ((2K+1)(1 - z^2)).
    let denom = BigInt::from(2 * terms as u64 + 1) * (&scale - &z2_hi);
    sum_hi += div_ceil(&(&p_hi * &scale), &denom);
    RatInterval {
        lo: Rational::new(sum_lo, scale.clone()),
        hi: Rational::new(sum_hi, scale),
    }
}

fn terms_for(digits: u32) -> usize {
    // z <= 1/3 in every call: 3^-(2K+1) <= 10^-digits.
    (digits as usize) + 8
}

fn ln2_interval(digits: u32) -> RatInterval {
    // ln 2 = 2 atanh(1/3); cached at the working precision since every
    // logarithm call reduces through it.
    static CACHE: std::sync::OnceLock<(u32, RatInterval)> = std::sync::OnceLock::new();
    let (cached_digits, cached) = CACHE.get_or_init(|| {
        let third = Rational::new(BigInt::one(), BigInt::from(3));
        let iv =
            atanh_interval(&third, terms_for(DIGITS), DIGITS).scale(&Rational::from(BigInt::from(2)));
        (DIGITS, iv)
    });
    if digits <= *cached_digits {
        return cached.clone();
    }
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    atanh_interval(&third, terms_for(digits), digits).scale(&Rational::from(BigInt::from(2)))
}

/// Certified enclosure of ln(x) for x > 0.
pub fn ln_interval(x: &Rational, digits: u32) -> RatInterval {
    assert!(x.is_positive(), "logarithm needs a positive argument");
    // Reduce x = 2^e * m with m in [1, 2).
    let two = Rational::from(BigInt::from(2));
    let mut e: i64 = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let mut pow = pow2(e);
    while &pow > x {
        e -= 1;
        pow = pow2(e);
    }
    while &pow * &two <= *x {
        e += 1;
        pow = pow2(e);
    }
    let m = x / pow;
    debug_assert!(m >= Rational::one() && m < two);
    // ln m = 2 atanh((m-1)/(m+1)), z in [0, 1/3).
    let z = (&m - Rational::one()) / (&m + Rational::one());
    let ln_m = atanh_interval(&z, terms_for(digits), digits).scale(&two);
    let ln2 = ln2_interval(digits);
    ln2.scale(&Rational::from(BigInt::from(e)))
        .add(&ln_m)
        .compress(digits)
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(BigInt::from(2u32).pow(e as u32))
    } else {
        Rational::new(BigInt::one(), BigInt::from(2u32).pow((-e) as u32))
    }
}

const DIGITS: u32 = 40;

/// Constants of the class-count bound: |{beta in FH(delta): per <= t}| is at
/// most C0 sqrt(t) log(t) past t0, and the period comparison constant
/// kappa3 absorbs parametrization choices. In fiber-time units all three
/// default to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PropBParams {
    pub c0: Rational,
    pub t0: u64,
    pub kappa3: Rational,
}

impl Default for PropBParams {
    fn default() -> Self {
        PropBParams { c0: Rational::one(), t0: 1, kappa3: Rational::one() }
    }
}

impl PropBParams {
    pub fn new(c0: Rational, t0: u64, kappa3: Rational) -> Result<Self> {
        if !c0.is_positive() || !kappa3.is_positive() || t0 == 0 {
            return Err(Error::Parameter("PropB parameters must be positive".into()));
        }
        Ok(PropBParams { c0, t0, kappa3 })
    }

    /// C1 = C0 sqrt(1/kappa3), as a certified upper bound.
    pub fn c1_upper(&self) -> Rational {
        let inv = Rational::one() / &self.kappa3;
        &self.c0 * sqrt_interval(&inv, DIGITS).hi
    }
}

/// Certified upper bound for the free-homotopy class count C1 sqrt(t) log t.
///
/// The bound is only asserted past t0, so smaller t is rejected.
pub fn fh_bound(params: &PropBParams, t: u64) -> Result<Rational> {
    Ok(fh_bound_interval(params, t)?.hi)
}

pub fn fh_bound_interval(params: &PropBParams, t: u64) -> Result<RatInterval> {
    if t <= params.t0 {
        return Err(Error::Parameter(format!(
            "bound holds for t > t0 = {}, got t = {t}",
            params.t0
        )));
    }
    let t_rat = Rational::from(BigInt::from(t));
    let sqrt_t = sqrt_interval(&t_rat, DIGITS);
    let ln_t = ln_interval(&t_rat, DIGITS);
    let c1 = RatInterval {
        lo: &params.c0 * sqrt_interval(&(Rational::one() / &params.kappa3), DIGITS).lo,
        hi: params.c1_upper(),
    };
    Ok(sqrt_t.mul_nonneg(&ln_t).mul_nonneg(&c1).compress(DIGITS))
}

/// One row of the density table: the proof's dominating sequence
/// C1 sqrt(t) log(t) / |P_t| for |Q^2_t(m)| / |P^2_t|.
#[derive(Clone, Debug)]
pub struct DensityRow {
    pub t: u64,
    pub orbit_count: BigInt,
    /// Certified upper bound of the ratio; may exceed 1 for small t and is
    /// reported unclamped.
    pub ratio_bound: Rational,
}

/// Density-zero table over (t0, max_period].
pub fn density_ratio(census: &OrbitCensus, params: &PropBParams) -> Result<Vec<DensityRow>> {
    if census.max_period <= params.t0 {
        return Err(Error::Parameter(
            "census horizon must exceed t0 for the density table".into(),
        ));
    }
    let mut rows = Vec::new();
    for t in params.t0 + 1..=census.max_period {
        let count = census.cumulative_up_to(t);
        let bound = fh_bound(params, t)?;
        rows.push(DensityRow {
            t,
            orbit_count: count.clone(),
            ratio_bound: bound / Rational::from(count),
        });
    }
    Ok(rows)
}

/// Ordered pairs with both periods bounded by t: |P^2_t| = |P_t|^2 exactly.
pub fn ordered_pair_count(census: &OrbitCensus, t: u64) -> BigInt {
    let c = census.cumulative_up_to(t);
    &c * &c
}

/// Exponential growth report at the census horizon.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub horizon: u64,
    /// ln F(t) / t, the per-period fixed-point entropy estimate; this is the
    /// estimator the growth criterion is checked against.
    pub estimate: RatInterval,
    /// ln |P_t| / t from the cumulative orbit count, reported alongside (it
    /// converges too, with a visibly slower log(t)/t correction).
    pub cumulative_estimate: RatInterval,
    /// ln(lambda) for the expanding eigenvalue of the matrix.
    pub target: RatInterval,
    /// |estimate - target| / target, certified.
    pub relative_error: RatInterval,
}

/// Growth estimate at the census horizon against log(lambda), where lambda
/// is the larger root of x^2 - tr(A) x + det(A).
pub fn growth_rate(census: &OrbitCensus) -> Result<GrowthReport> {
    if census.max_period < 5 {
        return Err(Error::Parameter(
            "growth estimates need a census horizon of at least 5".into(),
        ));
    }
    let t = census.max_period;
    let t_rat = Rational::from(BigInt::from(t));
    let fixed = Rational::from(census.fixed(t).clone());
    if !fixed.is_positive() {
        return Err(Error::Parameter("empty census".into()));
    }
    let estimate = ln_interval(&fixed, DIGITS).div_pos(&RatInterval::point(t_rat.clone()));
    let cumulative = Rational::from(census.cumulative.clone());
    let cumulative_estimate =
        ln_interval(&cumulative, DIGITS).div_pos(&RatInterval::point(t_rat));
    // lambda = (tr + sqrt(tr^2 - 4)) / 2 (trace >= 3 for census matrices).
    let tr = Rational::from(census.matrix.trace().clone());
    let disc = &tr * &tr - Rational::from(BigInt::from(4));
    let sqrt_disc = sqrt_interval(&disc, DIGITS);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let lambda = RatInterval { lo: (&tr + sqrt_disc.lo) * &half, hi: (&tr + sqrt_disc.hi) * &half };
    let target = RatInterval {
        lo: ln_interval(&lambda.lo, DIGITS).lo,
        hi: ln_interval(&lambda.hi, DIGITS).hi,
    };
    let relative_error = estimate.sub(&target).abs().div_pos(&target).compress(DIGITS);
    Ok(GrowthReport {
        horizon: t,
        estimate,
        cumulative_estimate,
        target,
        relative_error,
    })
}

/// The proof's period-comparison identity: the pairing of a surviving orbit
/// against the transported section equals per_Z of the orbit (kappa1 =
/// kappa2 = 1 in fiber-time units). Errors on surgered orbits.
pub fn period_comparison_identity(path: &SurgeryPath, orbit: &PeriodicOrbit) -> Result<bool> {
    let token = orbit_transport(path, orbit)?;
    Ok(token.pairing()? == per_z(orbit))
}
