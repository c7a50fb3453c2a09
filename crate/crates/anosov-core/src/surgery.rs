//! Homological model of integral Fried surgery along periodic orbits.
//!
//! The complement of a union of orbits in the mapping torus fibers over the
//! circle with fiber a punctured torus; its first homology is presented by
//! the Wang relations of the punctured monodromy. An integral surgery of
//! slope m on an orbit adds the Dehn-filling relation
//! meridian + m * longitude = 0.
//!
//! Framing convention (pinned by the all-slopes-zero recovery test): the
//! longitude of an orbit is per_Z(orbit) times the fiber class t, the
//! pushoff constant in the fiber direction. Slopes reported anywhere must be
//! read against this convention; other framings differ by a shear.
//!
//! The monodromy action on the punctured-fiber homology is assembled from
//! exact piecewise-linear crossing counts: puncture loops are permuted, and
//! the images of the straight torus generators pick up puncture corrections
//! equal to winding differences of an explicit difference cycle, measured
//! against a rational arc system from each puncture to a generic basepoint.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::geometry::{torus_crossings, torus_point_on_segment, Cycle, Pt, Rat, Seg};
use crate::linalg::{cokernel, Hyperbolic2, IntMat};
use crate::suspension::{per_z, CokerStructure, SuspensionFlow};
use crate::torus::{PeriodicOrbit, TorusPoint};

/// One integral Fried surgery: an orbit and a slope.
#[derive(Clone, Debug)]
pub struct SurgeryMove {
    pub orbit: PeriodicOrbit,
    pub slope: BigInt,
}

impl SurgeryMove {
    pub fn new(orbit: PeriodicOrbit, slope: impl Into<BigInt>) -> Self {
        SurgeryMove { orbit, slope: slope.into() }
    }
}

/// A multi-orbit surgery on one suspension flow; the paper's
/// Surg(flow; (orbit_1, m_1), ..., (orbit_r, m_r)). Orbits are pairwise
/// distinct and all surgeries are performed simultaneously.
#[derive(Clone, Debug)]
pub struct SurgeryPath {
    base: SuspensionFlow,
    moves: Vec<SurgeryMove>,
}

impl SurgeryPath {
    pub fn new(base: SuspensionFlow, moves: Vec<SurgeryMove>) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::Parameter("surgery path needs at least one move".into()));
        }
        for mv in &moves {
            if !base.owns(&mv.orbit) {
                return Err(Error::ForeignOrbit);
            }
        }
        for i in 0..moves.len() {
            for j in i + 1..moves.len() {
                if moves[i].orbit == moves[j].orbit {
                    return Err(Error::OverlappingOrbits);
                }
            }
        }
        Ok(SurgeryPath { base, moves })
    }

    pub fn base(&self) -> &SuspensionFlow {
        &self.base
    }

    pub fn moves(&self) -> &[SurgeryMove] {
        &self.moves
    }

    pub fn orbits(&self) -> Vec<PeriodicOrbit> {
        self.moves.iter().map(|m| m.orbit.clone()).collect()
    }
}

/// Arc system used for the puncture corrections. Two independent styles
/// exist so that invariance of the resulting homology can be tested.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ArcStyle {
    #[default]
    Straight,
    /// Two-segment arcs bent through an offset midpoint.
    Bent,
}

/// Presentation of H_1 of the orbit complement.
///
/// Generators: t (base circle), a, b (fiber torus classes), then one
/// puncture loop c_{i,j} per point j of each surgered orbit i. Relations:
/// the fiber boundary relation sum(c) = 0 and the Wang relations
/// (monodromy - id) applied to each fiber generator.
#[derive(Clone, Debug)]
pub struct ComplementPresentation {
    pub generator_labels: Vec<String>,
    /// rows = generators, columns = relations.
    pub relations: IntMat,
    /// Monodromy action on the fiber basis (a, b, c...), as columns.
    pub monodromy: IntMat,
    orbit_offsets: Vec<usize>,
    orbit_periods: Vec<u64>,
    coker: CokerStructure,
    pub h1: AbelianGroup,
}

impl ComplementPresentation {
    pub fn num_orbits(&self) -> usize {
        self.orbit_offsets.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generator_labels.len()
    }

    /// Generator index of the chosen meridian c_{i,0} of orbit i.
    pub fn meridian_index(&self, orbit: usize) -> usize {
        3 + self.orbit_offsets[orbit]
    }

    /// Longitude of orbit i in the fiber framing: per_Z(orbit_i) * t.
    pub fn longitude_t_coefficient(&self, orbit: usize) -> u64 {
        self.orbit_periods[orbit]
    }

    /// Column vector of the longitude class.
    pub fn longitude_column(&self, orbit: usize) -> Vec<BigInt> {
        let mut col = vec![BigInt::zero(); self.num_generators()];
        col[0] = BigInt::from(self.longitude_t_coefficient(orbit));
        col
    }

    /// Dehn filling relation for slope m on orbit i:
    /// meridian + m * longitude.
    pub fn surgery_column(&self, orbit: usize, slope: &BigInt) -> Vec<BigInt> {
        let mut col = self.longitude_column(orbit);
        for e in col.iter_mut() {
            *e *= slope;
        }
        col[self.meridian_index(orbit)] += 1;
        col
    }

    /// Canonical class coordinates of a single generator in h1.
    pub fn class_of_generator(&self, index: usize) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.num_generators()];
        v[index] = BigInt::one();
        self.coker.reduce(&v)
    }

    pub fn generator_class_is_zero(&self, index: usize) -> Result<bool> {
        Ok(self
            .class_of_generator(index)?
            .iter()
            .all(|x| x.is_zero()))
    }

    /// Relations extended by extra columns.
    pub fn extended_relations(&self, extra: &[Vec<BigInt>]) -> IntMat {
        let rows = self.num_generators();
        let base_cols = self.relations.cols();
        let mut m = IntMat::zero(rows, base_cols + extra.len());
        for i in 0..rows {
            for j in 0..base_cols {
                m[(i, j)] = self.relations[(i, j)].clone();
            }
        }
        for (k, col) in extra.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m[(i, base_cols + k)] = col[i].clone();
            }
        }
        m
    }

    /// Quotient by all meridians: must reproduce H_1 of the closed manifold
    /// (the meridian lies in the kernel of the fill-back map).
    pub fn fill_back(&self) -> AbelianGroup {
        let cols: Vec<Vec<BigInt>> = (0..self.num_orbits())
            .map(|i| {
                let mut c = vec![BigInt::zero(); self.num_generators()];
                c[self.meridian_index(i)] = BigInt::one();
                c
            })
            .collect();
        cokernel(&self.extended_relations(&cols))
    }
}

fn torus_point_coords(p: &TorusPoint) -> Pt {
    let q = p.denominator().clone();
    let (p1, p2) = p.numerators();
    Pt::new(
        Rat::new(p1.clone(), q.clone()),
        Rat::new(p2.clone(), q),
    )
}

// Pool of primes used for deterministic rational perturbations. Puncture
// denominators in practice are far smaller, so fresh primes keep the loops
// and arcs away from every special point; exact predicates catch any
// collision and move on to the next attempt.
const OFFSET_PRIMES: [i64; 24] = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227,
];

struct Loops {
    ell_a: Seg,
    ell_b: Seg,
    image_a: Seg,
    image_b: Seg,
    basepoint: Pt,
    attempt: usize,
}

fn apply_matrix(m: &IntMat, p: &Pt) -> Pt {
    let x = Rat::from(m[(0, 0)].clone()) * &p.x + Rat::from(m[(0, 1)].clone()) * &p.y;
    let y = Rat::from(m[(1, 0)].clone()) * &p.x + Rat::from(m[(1, 1)].clone()) * &p.y;
    Pt::new(x, y)
}

fn build_loops(a: &Hyperbolic2, attempt: usize) -> Loops {
    let pr = |i: usize| OFFSET_PRIMES[(3 * attempt + i) % OFFSET_PRIMES.len()];
    let eta = Rat::new(BigInt::one(), BigInt::from(pr(0)));
    let xi = Rat::new(BigInt::one(), BigInt::from(pr(1)));
    let bp = Pt::new(
        Rat::new(BigInt::from(2), BigInt::from(pr(2))),
        Rat::new(BigInt::from(3), BigInt::from(pr(2))),
    );
    let zero = Rat::zero();
    let one = Rat::one();
    let ell_a = Seg::new(
        Pt::new(zero.clone(), eta.clone()),
        Pt::new(one.clone(), eta.clone()),
    );
    let ell_b = Seg::new(
        Pt::new(xi.clone(), zero.clone()),
        Pt::new(xi.clone(), one.clone()),
    );
    let m = a.matrix();
    let image_a = Seg::new(apply_matrix(m, &ell_a.a), apply_matrix(m, &ell_a.b));
    let image_b = Seg::new(apply_matrix(m, &ell_b.a), apply_matrix(m, &ell_b.b));
    Loops { ell_a, ell_b, image_a, image_b, basepoint: bp, attempt }
}

fn arcs_for(loops: &Loops, style: ArcStyle, puncture: &Pt, index: usize) -> Vec<Seg> {
    match style {
        ArcStyle::Straight => vec![Seg::new(puncture.clone(), loops.basepoint.clone())],
        ArcStyle::Bent => {
            let pr = OFFSET_PRIMES
                [(3 * loops.attempt + 7 + index) % OFFSET_PRIMES.len()];
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let bend = Rat::new(BigInt::one(), BigInt::from(pr));
            let sign = if index % 2 == 0 { bend.clone() } else { -bend.clone() };
            let mid = Pt::new(
                (&puncture.x + &loops.basepoint.x) * &half + &sign,
                (&puncture.y + &loops.basepoint.y) * &half - &sign,
            );
            vec![
                Seg::new(puncture.clone(), mid.clone()),
                Seg::new(mid, loops.basepoint.clone()),
            ]
        }
    }
}

/// Monodromy action of `a` on H_1 of the torus punctured at an a-invariant
/// set of points, in the basis (a, b, c_0, ..., c_{k-1}).
///
/// The puncture loops are permuted the way `a` permutes the points; the
/// images of a and b are their matrix images plus puncture corrections
/// computed by exact crossing counts. Representative loops and arcs are
/// perturbed by rational offsets until every predicate is generic.
pub fn punctured_monodromy(
    a: &Hyperbolic2,
    punctures: &[TorusPoint],
    style: ArcStyle,
) -> Result<IntMat> {
    for attempt in 0..OFFSET_PRIMES.len() {
        if let Some(m) = punctured_monodromy_attempt(a, punctures, style, attempt)? {
            return Ok(m);
        }
    }
    Err(Error::Parameter(
        "no generic perturbation found for the arc system".into(),
    ))
}

/// Single perturbation attempt; `None` means a degenerate configuration was
/// detected and the caller should try the next offsets. Exposed for the
/// composition tests, which need both factors computed with the same loops.
pub fn punctured_monodromy_attempt(
    a: &Hyperbolic2,
    punctures: &[TorusPoint],
    style: ArcStyle,
    attempt: usize,
) -> Result<Option<IntMat>> {
    let k = punctures.len();
    // Permutation of punctures under a.
    let mut sigma = Vec::with_capacity(k);
    for p in punctures {
        let image = p.apply(a);
        let target = punctures
            .iter()
            .position(|q| q == &image)
            .ok_or_else(|| Error::Parameter("puncture set is not invariant".into()))?;
        sigma.push(target);
    }

    let loops = build_loops(a, attempt);
    let coords: Vec<Pt> = punctures.iter().map(torus_point_coords).collect();

    // Genericity: no puncture or basepoint may sit on any loop involved.
    let all_segs = [
        &loops.ell_a,
        &loops.ell_b,
        &loops.image_a,
        &loops.image_b,
    ];
    for seg in all_segs {
        for p in coords.iter().chain(std::iter::once(&loops.basepoint)) {
            if torus_point_on_segment(seg, p) {
                return Ok(None);
            }
        }
    }
    if coords.contains(&loops.basepoint) {
        return Ok(None);
    }

    let m = a.matrix();
    // Difference cycles: image of each generator minus its homological
    // (a, b)-content; what is left winds around punctures only.
    let mut cycle_a = Cycle::default();
    cycle_a.push(loops.image_a.clone(), BigInt::one());
    cycle_a.push(loops.ell_a.clone(), -m[(0, 0)].clone());
    cycle_a.push(loops.ell_b.clone(), -m[(1, 0)].clone());
    let mut cycle_b = Cycle::default();
    cycle_b.push(loops.image_b.clone(), BigInt::one());
    cycle_b.push(loops.ell_a.clone(), -m[(0, 1)].clone());
    cycle_b.push(loops.ell_b.clone(), -m[(1, 1)].clone());

    let mut corrections_a = Vec::with_capacity(k);
    let mut corrections_b = Vec::with_capacity(k);
    for (i, p) in coords.iter().enumerate() {
        let arcs = arcs_for(&loops, style, p, i);
        // Bent-arc midpoints must stay off the cycles as well.
        for arc in &arcs {
            for seg in all_segs {
                if torus_point_on_segment(seg, &arc.b) && &arc.b != &loops.basepoint {
                    return Ok(None);
                }
            }
        }
        let mut wa = BigInt::zero();
        let mut wb = BigInt::zero();
        for arc in &arcs {
            match torus_crossings(&cycle_a, arc) {
                Some(x) => wa += x,
                None => return Ok(None),
            }
            match torus_crossings(&cycle_b, arc) {
                Some(x) => wb += x,
                None => return Ok(None),
            }
        }
        corrections_a.push(wa);
        corrections_b.push(wb);
    }

    // Assemble the (2 + k) x (2 + k) matrix, columns = images.
    let n = 2 + k;
    let mut phi = IntMat::zero(n, n);
    phi[(0, 0)] = m[(0, 0)].clone();
    phi[(1, 0)] = m[(1, 0)].clone();
    phi[(0, 1)] = m[(0, 1)].clone();
    phi[(1, 1)] = m[(1, 1)].clone();
    for i in 0..k {
        phi[(2 + i, 0)] = corrections_a[i].clone();
        phi[(2 + i, 1)] = corrections_b[i].clone();
        phi[(2 + sigma[i], 2 + i)] = BigInt::one();
    }
    // Block triangular over the permutation block: always unimodular.
    debug_assert!(phi.is_unimodular());
    Ok(Some(phi))
}

/// H_1 of the orbit complement plus its presentation.
pub fn h1_complement(
    flow: &SuspensionFlow,
    orbits: &[PeriodicOrbit],
) -> Result<(AbelianGroup, ComplementPresentation)> {
    h1_complement_with_arcs(flow, orbits, ArcStyle::Straight)
}

pub fn h1_complement_with_arcs(
    flow: &SuspensionFlow,
    orbits: &[PeriodicOrbit],
    style: ArcStyle,
) -> Result<(AbelianGroup, ComplementPresentation)> {
    if orbits.is_empty() {
        return Err(Error::Parameter("complement needs at least one orbit".into()));
    }
    for o in orbits {
        if !flow.owns(o) {
            return Err(Error::ForeignOrbit);
        }
    }
    for i in 0..orbits.len() {
        for j in i + 1..orbits.len() {
            if orbits[i] == orbits[j] {
                return Err(Error::OverlappingOrbits);
            }
        }
    }

    let mut punctures = Vec::new();
    let mut orbit_offsets = Vec::new();
    let mut orbit_periods = Vec::new();
    let mut generator_labels = vec!["t".to_string(), "a".to_string(), "b".to_string()];
    for (i, o) in orbits.iter().enumerate() {
        orbit_offsets.push(punctures.len());
        orbit_periods.push(per_z(o));
        for (j, p) in o.points().iter().enumerate() {
            punctures.push(p.clone());
            generator_labels.push(format!("c[{i}][{j}]"));
        }
    }
    let k = punctures.len();
    let phi = punctured_monodromy(flow.matrix(), &punctures, style)?;

    // Relations: one fiber boundary relation sum(c) = 0, then the Wang
    // relations (phi - id) x = 0 for each fiber generator x.
    let gens = 3 + k;
    let cols = 1 + (2 + k);
    let mut relations = IntMat::zero(gens, cols);
    for i in 0..k {
        relations[(3 + i, 0)] = BigInt::one();
    }
    for col in 0..2 + k {
        for row in 0..2 + k {
            let mut val = phi[(row, col)].clone();
            if row == col {
                val -= 1;
            }
            relations[(1 + row, 1 + col)] = val;
        }
    }

    let h1 = cokernel(&relations);
    let coker = CokerStructure::of(&relations);
    let presentation = ComplementPresentation {
        generator_labels,
        relations,
        monodromy: phi,
        orbit_offsets,
        orbit_periods,
        coker,
        h1: h1.clone(),
    };
    Ok((h1, presentation))
}

/// H_1 after performing every move of the path: the complement presentation
/// plus one filling relation meridian_i + m_i * longitude_i per move.
pub fn h1_surgered(path: &SurgeryPath) -> Result<AbelianGroup> {
    let (_, pres) = h1_complement(path.base(), &path.orbits())?;
    Ok(h1_surgered_with(path, &pres))
}

/// Same, reusing an existing presentation of the same orbit list.
pub fn h1_surgered_with(path: &SurgeryPath, pres: &ComplementPresentation) -> AbelianGroup {
    let cols: Vec<Vec<BigInt>> = path
        .moves()
        .iter()
        .enumerate()
        .map(|(i, mv)| pres.surgery_column(i, &mv.slope))
        .collect();
    cokernel(&pres.extended_relations(&cols))
}

/// Caveat that accompanies every fingerprint verdict.
pub const FINGERPRINT_CAVEAT: &str =
    "H1 equality is a necessary condition only; it does not certify that the surgered flow is \
     the suspension of A or A^-1";

/// Framing disclaimer carried by surgery reports.
pub const FRAMING_CONVENTION: &str =
    "fiber framing: longitude = per_Z(orbit) * fiber class; slope m fills meridian + m * longitude";

/// Necessary-condition check: does the surgered homology equal
/// H_1(M_A) = Z (+) coker(A - I)? (Equal to the reversed flow's H_1 too.)
pub fn suspension_fingerprint_check(result: &AbelianGroup, flow: &SuspensionFlow) -> bool {
    result == flow.h1()
}

/// Where an orbit ends up under the orbit map of a surgery path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransportToken {
    /// The orbit misses the surgery locus and survives unchanged; its
    /// pairing with the transported fiber section equals per_Z.
    Survivor { orbit: PeriodicOrbit, pairing: u64 },
    /// The orbit was surgered; it is replaced by the core orbit of the
    /// filling torus of the given move.
    Core { move_index: usize },
}

impl TransportToken {
    /// Pairing against the transported section; rejected for core tokens.
    pub fn pairing(&self) -> Result<u64> {
        match self {
            TransportToken::Survivor { pairing, .. } => Ok(*pairing),
            TransportToken::Core { .. } => Err(Error::SurgeredOrbit),
        }
    }

    pub fn is_core(&self) -> bool {
        matches!(self, TransportToken::Core { .. })
    }
}

/// The natural orbit map of the surgery: identity away from the locus,
/// distinguished core tokens on it.
pub fn orbit_transport(path: &SurgeryPath, orbit: &PeriodicOrbit) -> Result<TransportToken> {
    if !path.base().owns(orbit) {
        return Err(Error::ForeignOrbit);
    }
    if let Some(i) = path.moves().iter().position(|mv| &mv.orbit == orbit) {
        return Ok(TransportToken::Core { move_index: i });
    }
    Ok(TransportToken::Survivor { orbit: orbit.clone(), pairing: per_z(orbit) })
}

/// Rational parameters are exact; keep the helper local to tests.
#[allow(dead_code)]
fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
