//! Birkhoff-section boundary bookkeeping: per-orbit component counts p,
//! covering multiplicities m, genus, and the boundary-homology relation
//! `0 = sum_i p_i * m_i * [orbit_i]` in H_1 of the mapping torus.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::suspension::{per_z, SuspensionFlow};
use crate::surgery::SurgeryPath;
use crate::torus::PeriodicOrbit;

/// Boundary orbit of a section: either a genuine orbit of the base flow or
/// the distinguished core orbit created by a surgery move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryOrbit {
    Orbit(PeriodicOrbit),
    /// Core of the filling torus of the given move; `of` is the surgered
    /// orbit it replaces under the natural orbit map.
    Core { move_index: usize, of: PeriodicOrbit },
}

impl BoundaryOrbit {
    pub fn underlying(&self) -> &PeriodicOrbit {
        match self {
            BoundaryOrbit::Orbit(o) => o,
            BoundaryOrbit::Core { of, .. } => of,
        }
    }
}

/// One boundary entry: p components, each covering the orbit with the same
/// multiplicity m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffEntry {
    pub orbit: BoundaryOrbit,
    /// Number of connected components of the preimage of the orbit.
    pub components: u64,
    /// Covering multiplicity, identical for every component.
    pub multiplicity: BigInt,
}

impl BirkhoffEntry {
    /// Multiplicity zero means the section closed up along this orbit: not
    /// a genuine Birkhoff boundary.
    pub fn is_genuine_boundary(&self) -> bool {
        !self.multiplicity.is_zero()
    }
}

/// Boundary data plus genus: the Theorem A' payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffData {
    pub entries: Vec<BirkhoffEntry>,
    pub genus: u64,
}

impl BirkhoffData {
    pub fn boundary_components(&self) -> u64 {
        self.entries.iter().map(|e| e.components).sum()
    }

    pub fn genuine_boundary_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_genuine_boundary()).count()
    }

    /// Euler characteristic of the section surface: a genus-g surface with
    /// the boundary circles of the entries.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_components() as i64
    }
}

/// Certification status of generated section data: hyperbolicity of the
/// surgered manifold holds for |m| >= m0, and m0 is a user-supplied input,
/// never computed here.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Certification {
    /// |m| >= m0 for the user-asserted threshold.
    Certified,
    /// Below the asserted threshold; the data is generated all the same.
    Hypothetical,
}

/// Output of `theorem_a_prime_data`.
#[derive(Clone, Debug)]
pub struct TheoremAPrimeData {
    pub data: BirkhoffData,
    pub certification: Certification,
    /// Recorded, not verified: verification would need the flow equivalence.
    pub first_return_note: &'static str,
}

pub const FIRST_RETURN_NOTE: &str =
    "first return map recorded as conjugate to A by rigidity; not verified dynamically";

/// The Theorem A' section data for the loop (gamma, m), (alpha, -m):
/// entries [(gamma, per_Z(alpha), -m), (alpha, per_Z(gamma), m)], genus 1.
pub fn theorem_a_prime_data(
    gamma: &PeriodicOrbit,
    alpha: &PeriodicOrbit,
    m: &BigInt,
    m0: u64,
) -> Result<TheoremAPrimeData> {
    if gamma == alpha {
        return Err(Error::IdenticalOrbits);
    }
    if m.is_zero() {
        return Err(Error::ZeroSlope);
    }
    let data = BirkhoffData {
        entries: vec![
            BirkhoffEntry {
                orbit: BoundaryOrbit::Orbit(gamma.clone()),
                components: per_z(alpha),
                multiplicity: -m.clone(),
            },
            BirkhoffEntry {
                orbit: BoundaryOrbit::Orbit(alpha.clone()),
                components: per_z(gamma),
                multiplicity: m.clone(),
            },
        ],
        genus: 1,
    };
    let certification = if m.abs() >= BigInt::from(m0) {
        Certification::Certified
    } else {
        Certification::Hypothetical
    };
    Ok(TheoremAPrimeData { data, certification, first_return_note: FIRST_RETURN_NOTE })
}

/// Validation report for a BirkhoffData against its flow.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    /// sum_i p_i * per_Z(orbit_i) * m_i, the fiber part of the boundary
    /// relation; must vanish.
    pub fiber_sum: BigInt,
    pub fiber_ok: bool,
    /// Residue coordinates of sum_i p_i * m_i * horizontal(orbit_i) in
    /// coker(A - I); vanishing is the torsion part of the relation.
    pub horizontal_sum: Vec<BigInt>,
    pub horizontal_ok: bool,
    pub euler_lhs: i64,
    pub euler_rhs: i64,
    pub euler_ok: bool,
    pub multiplicities_ok: bool,
}

impl ValidationReport {
    /// The two displayed identities of the construction (fiber boundary sum
    /// and blow-down Euler count) plus nonzero multiplicities.
    pub fn paper_identities_pass(&self) -> bool {
        self.fiber_ok && self.euler_ok && self.multiplicities_ok
    }

    /// Full pass, including the torsion part of the boundary relation. A
    /// failure here excludes the pair from loop candidacy; it is reported,
    /// never silently dropped.
    pub fn passes(&self) -> bool {
        self.paper_identities_pass() && self.horizontal_ok
    }
}

/// Checks the boundary-homology relation (fiber and horizontal parts), the
/// blow-down Euler count, and multiplicity sanity.
pub fn validate(data: &BirkhoffData, flow: &SuspensionFlow) -> Result<ValidationReport> {
    let mut fiber_sum = BigInt::zero();
    let width = flow.coker().factors().len();
    let mut horizontal_sum = vec![BigInt::zero(); width];
    for entry in &data.entries {
        let orbit = match &entry.orbit {
            BoundaryOrbit::Orbit(o) => o,
            BoundaryOrbit::Core { .. } => {
                return Err(Error::Parameter(
                    "core orbits live in the surgered manifold; validate genuine orbits only"
                        .into(),
                ))
            }
        };
        if !flow.owns(orbit) {
            return Err(Error::ForeignOrbit);
        }
        let p = BigInt::from(entry.components);
        let weight = &p * &entry.multiplicity;
        fiber_sum += &weight * BigInt::from(per_z(orbit));
        let class = crate::suspension::orbit_class_unchecked(flow, orbit)?;
        for (acc, h) in horizontal_sum.iter_mut().zip(&class.horizontal) {
            *acc += &weight * h;
        }
    }
    let horizontal_sum = flow.coker().reduce_residues(&horizontal_sum)?;
    let fiber_ok = fiber_sum.is_zero();
    let horizontal_ok = horizontal_sum.iter().all(|x| x.is_zero());
    let euler_lhs = data.euler_characteristic();
    let euler_rhs = (2 - 2 * data.genus as i64) - data.boundary_components() as i64;
    let euler_ok = euler_lhs == euler_rhs;
    let multiplicities_ok = data.entries.iter().all(|e| e.is_genuine_boundary());
    Ok(ValidationReport {
        fiber_sum,
        fiber_ok,
        horizontal_sum,
        horizontal_ok,
        euler_lhs,
        euler_rhs,
        euler_ok,
        multiplicities_ok,
    })
}

/// The global torus section transported through a surgery path becomes a
/// Birkhoff section of the surgered flow: per move (orbit_i, m_i) it gains
/// per_Z(orbit_i) boundary components on the core orbit, with multiplicity
/// -m_i; the genus stays 1.
pub fn section_after_surgery(path: &SurgeryPath) -> BirkhoffData {
    let entries = path
        .moves()
        .iter()
        .enumerate()
        .map(|(i, mv)| BirkhoffEntry {
            orbit: BoundaryOrbit::Core { move_index: i, of: mv.orbit.clone() },
            components: per_z(&mv.orbit),
            multiplicity: -mv.slope.clone(),
        })
        .collect();
    BirkhoffData { entries, genus: 1 }
}
