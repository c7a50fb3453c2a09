//! The suspension 3-manifold of a hyperbolic toral automorphism and its
//! flow-level homology bookkeeping.
//!
//! The mapping torus of A has H_1 = Z (+) coker(A - I): one Z tracking the
//! fiber pairing, the cokernel holding the horizontal classes. Periodic
//! orbits of the flow correspond to A-orbits of rational points; per_Z of an
//! orbit (the pairing of its class with the fiber) equals the least period
//! of the underlying point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::linalg::{cokernel, snf, Hyperbolic2, IntMat};
use crate::torus::{census, enumerate_orbits, OrbitCensus, PeriodicOrbit};
use crate::words::{rl_decompose, RLWord};

/// Canonical coordinates on coker(A - I), via the SNF transform U.
#[derive(Clone, Debug)]
pub struct CokerStructure {
    u: IntMat,
    factors: Vec<BigInt>,
}

impl CokerStructure {
    /// Canonical coordinates on Z^rows / (column span of m).
    pub fn of(m: &IntMat) -> Self {
        let s = snf(m);
        let factors = s.diagonal();
        CokerStructure { u: s.u, factors }
    }

    fn new(m: &IntMat) -> Self {
        Self::of(m)
    }

    /// Invariant factors d1 | d2 of the presentation (kept with the unit
    /// entries so coordinates stay two-dimensional).
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Canonical residue coordinates of an integer vector modulo the image.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let w = self.u.apply(v)?;
        self.reduce_residues(&w)
    }

    /// Renormalizes coordinate vectors already expressed in the U basis
    /// (differences or sums of canonical coordinates).
    pub fn reduce_residues(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.factors.len() {
            return Err(Error::Shape("coordinate length mismatch".into()));
        }
        Ok(coords
            .iter()
            .zip(&self.factors)
            .map(|(x, d)| if d.is_zero() { x.clone() } else { x.mod_floor(d) })
            .collect())
    }

    pub fn is_zero_class(&self, coords: &[BigInt]) -> bool {
        coords.iter().all(|x| x.is_zero())
    }
}

/// Suspension flow of a flow-admissible matrix (det +1, trace >= 3), with
/// its first homology precomputed.
#[derive(Clone, Debug)]
pub struct SuspensionFlow {
    matrix: Hyperbolic2,
    h1: AbelianGroup,
    coker: CokerStructure,
}

impl SuspensionFlow {
    pub fn matrix(&self) -> &Hyperbolic2 {
        &self.matrix
    }

    /// H_1 of the mapping torus: Z (+) coker(A - I).
    pub fn h1(&self) -> &AbelianGroup {
        &self.h1
    }

    pub fn coker(&self) -> &CokerStructure {
        &self.coker
    }

    pub fn orbits(&self, max_period: u64) -> Vec<PeriodicOrbit> {
        enumerate_orbits(&self.matrix, max_period)
    }

    pub fn census(&self, max_period: u64) -> OrbitCensus {
        census(&self.matrix, max_period)
    }

    /// Checks that the orbit really is a canonical orbit of this flow's
    /// matrix: consecutive points map to each other, the cycle is primitive
    /// (no early return to the representative) and the representative is the
    /// lexicographically least point.
    pub fn owns(&self, orbit: &PeriodicOrbit) -> bool {
        let points = orbit.points();
        if points.is_empty() || points.len() != orbit.period() as usize {
            return false;
        }
        let rep = &points[0];
        for (i, p) in points.iter().enumerate() {
            if p.apply(&self.matrix) != points[(i + 1) % points.len()] {
                return false;
            }
            if i > 0 && (p == rep || p < rep) {
                return false;
            }
        }
        true
    }
}

/// Builds the suspension; rejects matrices outside the standing assumptions
/// (det = +1 and trace >= 3, i.e. orientable foliations with positive
/// eigenvalues).
pub fn build_suspension(a: &Hyperbolic2) -> Result<SuspensionFlow> {
    a.require_flow()?;
    let m = a.pow_minus_identity(1);
    let torsion = cokernel(&m);
    let h1 = AbelianGroup::free(1).direct_sum(&torsion);
    assert!(h1.free_rank() == 1, "hyperbolic A - I is nonsingular");
    Ok(SuspensionFlow { matrix: a.clone(), h1, coker: CokerStructure::new(&m) })
}

/// per_Z: the pairing of the orbit class with the fiber, which in the
/// fiber-time parametrization is exactly the least period of the point.
pub fn per_z(orbit: &PeriodicOrbit) -> u64 {
    orbit.period()
}

/// Homology class of a periodic orbit, split along Z (+) coker(A - I).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitClass {
    pub fiber_degree: u64,
    /// Canonical residue coordinates in coker(A - I). The zero reference is
    /// the orbit of the origin; only differences and (non)vanishing carry
    /// geometric meaning.
    pub horizontal: Vec<BigInt>,
}

impl OrbitClass {
    /// Nonzero in H_1: always true for genuine orbits, since the fiber
    /// degree is at least 1.
    pub fn is_nonzero(&self) -> bool {
        self.fiber_degree >= 1
    }
}

/// Class of an orbit: fiber degree per_Z, horizontal part the class of
/// (A^n - I) x for any rational lift x of any point on the orbit.
///
/// Changing the lift changes the vector by (A^n - I) Z^2, which lies in
/// image(A - I); moving along the orbit multiplies by A, which acts
/// trivially on the cokernel. Both are checked in the tests.
pub fn orbit_class(flow: &SuspensionFlow, orbit: &PeriodicOrbit) -> Result<OrbitClass> {
    if !flow.owns(orbit) {
        return Err(Error::ForeignOrbit);
    }
    orbit_class_unchecked(flow, orbit)
}

/// Same as `orbit_class` with the ownership precondition already
/// established by the caller.
pub(crate) fn orbit_class_unchecked(
    flow: &SuspensionFlow,
    orbit: &PeriodicOrbit,
) -> Result<OrbitClass> {
    let n = orbit.period();
    let disp = orbit.representative().lattice_displacement(&flow.matrix, n)?;
    let horizontal = flow.coker.reduce(&disp)?;
    Ok(OrbitClass { fiber_degree: n, horizontal })
}

/// Difference of two orbit classes with equal fiber degree, computed from
/// the joint displacement (A^n - I)(x - y). Used to cross-check the
/// per-orbit formula; the two routes must agree.
pub fn orbit_class_difference(
    flow: &SuspensionFlow,
    a: &PeriodicOrbit,
    b: &PeriodicOrbit,
) -> Result<Vec<BigInt>> {
    if a.period() != b.period() {
        return Err(Error::Parameter(
            "orbit class differences need equal fiber degrees".into(),
        ));
    }
    let da = a.representative().lattice_displacement(&flow.matrix, a.period())?;
    let db = b.representative().lattice_displacement(&flow.matrix, b.period())?;
    let diff: Vec<BigInt> = da.iter().zip(&db).map(|(x, y)| x - y).collect();
    flow.coker.reduce(&diff)
}

/// The reverse flow: the suspension of A^-1, together with the canonical
/// positive-trace conjugate of A^-1 (its RL-word product) and the exact
/// conjugator normalizing it.
#[derive(Clone, Debug)]
pub struct ReversedSuspension {
    pub flow: SuspensionFlow,
    pub word: RLWord,
    /// Product of the canonical word; conjugator^-1 A^-1 conjugator equals it.
    pub canonical_matrix: Hyperbolic2,
    pub conjugator: IntMat,
}

impl ReversedSuspension {
    /// Orbit correspondence: the A-orbit of x maps to the A^-1-orbit of x.
    /// The point set is unchanged, so per_Z is preserved.
    pub fn correspond(&self, orbit: &PeriodicOrbit) -> PeriodicOrbit {
        PeriodicOrbit::through(self.flow.matrix(), orbit.representative())
    }
}

/// Reverses the time direction: tr(A^-1) = tr(A), so the inverse is again
/// flow-admissible and carries the same H_1 (coker(A^-1 - I) = coker(A - I)
/// via multiplication by -A).
pub fn reverse(flow: &SuspensionFlow) -> Result<ReversedSuspension> {
    let inv = flow.matrix().inverse();
    let reversed = build_suspension(&inv)?;
    assert_eq!(reversed.h1(), flow.h1(), "reversal preserves H_1");
    let d = rl_decompose(&inv)?;
    let canonical_matrix = Hyperbolic2::new(d.word.product())?;
    Ok(ReversedSuspension {
        flow: reversed,
        word: d.word,
        canonical_matrix,
        conjugator: d.conjugator,
    })
}
