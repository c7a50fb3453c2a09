//! Periodic points and orbits of a hyperbolic toral automorphism acting on
//! T^2 = R^2/Z^2.
//!
//! These are in bijection with the periodic orbits of the suspension flow;
//! the least period of a point equals the fiber-crossing count per_Z of the
//! corresponding flow orbit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{snf, Hyperbolic2};

/// Rational point of the 2-torus in reduced form: (p1/q, p2/q) with
/// 0 <= pi < q and gcd(p1, p2, q) = 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    // Field order matters: lexicographic derive gives the (q, p1, p2) order
    // used for canonical orbit representatives.
    q: BigInt,
    p1: BigInt,
    p2: BigInt,
}

impl TorusPoint {
    pub fn new(p1: BigInt, p2: BigInt, q: BigInt) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Parameter("torus point denominator must be positive".into()));
        }
        let mut p1 = p1.mod_floor(&q);
        let mut p2 = p2.mod_floor(&q);
        let mut q = q;
        let g = p1.gcd(&p2).gcd(&q);
        if !g.is_one() {
            p1 /= &g;
            p2 /= &g;
            q /= &g;
        }
        Ok(TorusPoint { q, p1, p2 })
    }

    pub fn origin() -> Self {
        TorusPoint { q: BigInt::one(), p1: BigInt::zero(), p2: BigInt::zero() }
    }

    pub fn from_i64(p1: i64, p2: i64, q: i64) -> Result<Self> {
        Self::new(BigInt::from(p1), BigInt::from(p2), BigInt::from(q))
    }

    pub fn numerators(&self) -> (&BigInt, &BigInt) {
        (&self.p1, &self.p2)
    }

    pub fn denominator(&self) -> &BigInt {
        &self.q
    }

    /// Image under the toral automorphism. A is invertible mod q, so the
    /// reducedness invariant gcd(p1, p2, q) = 1 transfers to the image and
    /// no re-reduction is needed.
    pub fn apply(&self, a: &Hyperbolic2) -> TorusPoint {
        let m = a.matrix();
        let n1 = &m[(0, 0)] * &self.p1 + &m[(0, 1)] * &self.p2;
        let n2 = &m[(1, 0)] * &self.p1 + &m[(1, 1)] * &self.p2;
        TorusPoint {
            q: self.q.clone(),
            p1: n1.mod_floor(&self.q),
            p2: n2.mod_floor(&self.q),
        }
    }

    /// The integer vector (A^n - I) x for the rational lift x = (p1/q, p2/q);
    /// integral exactly when x is fixed by A^n.
    pub fn lattice_displacement(&self, a: &Hyperbolic2, n: u64) -> Result<Vec<BigInt>> {
        // Iterate the numerator vector: (A^n p - p) / q.
        let m = a.matrix();
        let mut v1 = self.p1.clone();
        let mut v2 = self.p2.clone();
        for _ in 0..n {
            let w1 = &m[(0, 0)] * &v1 + &m[(0, 1)] * &v2;
            let w2 = &m[(1, 0)] * &v1 + &m[(1, 1)] * &v2;
            v1 = w1;
            v2 = w2;
        }
        let (d1, r1) = (v1 - &self.p1).div_rem(&self.q);
        let (d2, r2) = (v2 - &self.p2).div_rem(&self.q);
        if !r1.is_zero() || !r2.is_zero() {
            return Err(Error::Parameter(format!("{self} is not fixed by A^{n}")));
        }
        Ok(vec![d1, d2])
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}/{}, {}/{})", self.p1, self.q, self.p2, self.q)
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An A-orbit of a rational torus point, stored as the full cycle
/// [x, Ax, ..., A^{n-1}x] with the lexicographically least point first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicOrbit {
    period: u64,
    points: Vec<TorusPoint>,
}

impl PeriodicOrbit {
    /// Orbit through `x`; the period found is the least one.
    pub fn through(a: &Hyperbolic2, x: &TorusPoint) -> Self {
        let mut points = vec![x.clone()];
        let mut y = x.apply(a);
        while &y != x {
            points.push(y.clone());
            y = y.apply(a);
        }
        let period = points.len() as u64;
        // Rotate so the lexicographically least point leads.
        let least = points
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| p.cmp(q))
            .map(|(i, _)| i)
            .unwrap();
        points.rotate_left(least);
        PeriodicOrbit { period, points }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    pub fn representative(&self) -> &TorusPoint {
        &self.points[0]
    }

    pub fn contains(&self, x: &TorusPoint) -> bool {
        self.points.contains(x)
    }
}

impl fmt::Display for PeriodicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orbit(per={}, rep={})", self.period, self.points[0])
    }
}

impl fmt::Debug for PeriodicOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Number of solutions of A^n x = x on the torus: |det(A^n - I)|.
///
/// For det A = 1 and tr A >= 3 this equals tr(A^n) - 2, which is verified
/// on every call (it is a cheap identity and a good canary for the exact
/// matrix arithmetic).
pub fn fixed_point_count(a: &Hyperbolic2, n: u64) -> BigInt {
    assert!(n >= 1, "period must be positive");
    let m = a.pow_minus_identity(n);
    let count = m.det().expect("2x2 det").abs();
    if a.is_flow_admissible() {
        let tr_n = a.matrix().pow(n).expect("square").trace();
        assert_eq!(count, tr_n - 2, "fixed point count must equal tr(A^n) - 2");
    }
    count
}

/// All solutions of (A^n - I) x = 0 mod Z^2, via Smith normal form: with
/// U (A^n - I) V = diag(d1, d2) the solutions are exactly
/// x = V (j1/d1, j2/d2) mod Z^2 for 0 <= ji < di.
pub fn enumerate_fixed_points(a: &Hyperbolic2, n: u64) -> Vec<TorusPoint> {
    assert!(n >= 1, "period must be positive");
    let m = a.pow_minus_identity(n);
    let s = snf(&m);
    let d1 = s.d[(0, 0)].clone();
    let d2 = s.d[(1, 1)].clone();
    assert!(
        d1.is_positive() && d2.is_positive(),
        "A^n - I is nonsingular for hyperbolic A"
    );
    let denom = &d1 * &d2;
    let mut out = Vec::new();
    let mut j1 = BigInt::zero();
    while j1 < d1 {
        let mut j2 = BigInt::zero();
        while j2 < d2 {
            // x = V (j1/d1, j2/d2); common denominator d1*d2.
            let n1 = &s.v[(0, 0)] * &j1 * &d2 + &s.v[(0, 1)] * &j2 * &d1;
            let n2 = &s.v[(1, 0)] * &j1 * &d2 + &s.v[(1, 1)] * &j2 * &d1;
            out.push(TorusPoint::new(n1, n2, denom.clone()).expect("positive denominator"));
            j2 += 1;
        }
        j1 += 1;
    }
    out.sort();
    let before = out.len();
    out.dedup();
    assert_eq!(before, out.len(), "SNF parametrization may not repeat points");
    assert_eq!(BigInt::from(out.len()), fixed_point_count(a, n));
    out
}

/// All orbits of least period <= t, canonically sorted by (period,
/// representative).
pub fn enumerate_orbits(a: &Hyperbolic2, t: u64) -> Vec<PeriodicOrbit> {
    assert!(t >= 1, "max period must be positive");
    let mut seen: HashSet<TorusPoint> = HashSet::new();
    let mut orbits = Vec::new();
    for n in 1..=t {
        for x in enumerate_fixed_points(a, n) {
            if seen.contains(&x) {
                continue;
            }
            let orbit = PeriodicOrbit::through(a, &x);
            if orbit.period() == n {
                for p in orbit.points() {
                    seen.insert(p.clone());
                }
                orbits.push(orbit);
            }
            // Least period < n: already collected in an earlier round.
        }
    }
    orbits.sort();
    orbits
}

/// Orbit and fixed-point statistics up to a period horizon.
#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub matrix: Hyperbolic2,
    pub max_period: u64,
    /// F(n) = number of fixed points of A^n, indexed by n-1.
    pub fixed_counts: Vec<BigInt>,
    /// L(n) = number of points of least period n.
    pub least_counts: Vec<BigInt>,
    /// O(n) = L(n)/n orbits of least period n.
    pub orbit_counts: Vec<BigInt>,
    /// |P_t| = total number of orbits with least period <= max_period.
    pub cumulative: BigInt,
}

impl OrbitCensus {
    pub fn fixed(&self, n: u64) -> &BigInt {
        &self.fixed_counts[(n - 1) as usize]
    }

    pub fn least(&self, n: u64) -> &BigInt {
        &self.least_counts[(n - 1) as usize]
    }

    pub fn orbits(&self, n: u64) -> &BigInt {
        &self.orbit_counts[(n - 1) as usize]
    }

    /// |P_s| for any s <= max_period.
    pub fn cumulative_up_to(&self, s: u64) -> BigInt {
        self.orbit_counts[..s as usize].iter().sum()
    }
}

/// Mobius function, by trial-division factorization (arguments stay small).
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// Full census of A up to period t, with the Mobius inversion
/// L(n) = sum_{d|n} mu(n/d) F(d) and the exact divisibility O(n) = L(n)/n.
pub fn census(a: &Hyperbolic2, t: u64) -> OrbitCensus {
    assert!(t >= 1, "census horizon must be positive");
    let fixed_counts: Vec<BigInt> = (1..=t).map(|n| fixed_point_count(a, n)).collect();
    let mut least_counts = Vec::with_capacity(t as usize);
    let mut orbit_counts = Vec::with_capacity(t as usize);
    for n in 1..=t {
        let mut l = BigInt::zero();
        for d in divisors(n) {
            let mu = moebius(n / d);
            if mu != 0 {
                l += BigInt::from(mu) * &fixed_counts[(d - 1) as usize];
            }
        }
        let (o, r) = l.div_rem(&BigInt::from(n));
        assert!(r.is_zero(), "n must divide L(n)");
        least_counts.push(l);
        orbit_counts.push(o);
    }
    let cumulative = orbit_counts.iter().sum();
    OrbitCensus {
        matrix: a.clone(),
        max_period: t,
        fixed_counts,
        least_counts,
        orbit_counts,
        cumulative,
    }
}

/// Orbit identifier `pK-iJ`: the J-th canonical orbit of least period K.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrbitId {
    pub period: u64,
    pub index: usize,
}

impl OrbitId {
    /// Id of an orbit within a canonically sorted orbit list.
    pub fn of(orbits: &[PeriodicOrbit], orbit: &PeriodicOrbit) -> Option<OrbitId> {
        let index = orbits
            .iter()
            .filter(|o| o.period() == orbit.period())
            .position(|o| o == orbit)?;
        Some(OrbitId { period: orbit.period(), index })
    }

    /// Resolve against a canonically sorted orbit list.
    pub fn resolve<'a>(&self, orbits: &'a [PeriodicOrbit]) -> Result<&'a PeriodicOrbit> {
        orbits
            .iter()
            .filter(|o| o.period() == self.period)
            .nth(self.index)
            .ok_or_else(|| Error::OrbitId(format!("{self} does not exist at this horizon")))
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}-i{}", self.period, self.index)
    }
}

impl FromStr for OrbitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OrbitId(format!("expected pK-iJ, got {s:?}"));
        let rest = s.strip_prefix('p').ok_or_else(bad)?;
        let (period, idx) = rest.split_once("-i").ok_or_else(bad)?;
        let period: u64 = period.parse().map_err(|_| bad())?;
        let index: usize = idx.parse().map_err(|_| bad())?;
        if period == 0 {
            return Err(bad());
        }
        Ok(OrbitId { period, index })
    }
}
