//! Cross-cutting consistency checks for the surgery presentations: trivial
//! filling recovery, arc-system independence, monodromy functoriality and
//! the homological rank/torsion constraints of orbit complements.

use anosov_core::linalg::{Hyperbolic2, IntMat};
use anosov_core::surgery::{
    h1_complement, h1_complement_with_arcs, h1_surgered, punctured_monodromy_attempt, ArcStyle,
    SurgeryMove, SurgeryPath,
};
use anosov_core::suspension::{build_suspension, per_z, SuspensionFlow};
use anosov_core::torus::{PeriodicOrbit, TorusPoint};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn cat_flow() -> SuspensionFlow {
    build_suspension(&Hyperbolic2::from_i64([2, 1, 1, 1]).unwrap()).unwrap()
}

fn tor_flow() -> SuspensionFlow {
    build_suspension(&Hyperbolic2::from_i64([3, 2, 1, 1]).unwrap()).unwrap()
}

/// All sub-multisets of cat orbits with at most 6 total punctures.
fn cat_orbit_sets_up_to_six_punctures() -> Vec<Vec<PeriodicOrbit>> {
    let flow = cat_flow();
    let orbits = flow.orbits(3); // periods 1, 2, 2, 3 x 5
    let mut sets = Vec::new();
    let n = orbits.len();
    for mask in 1u32..(1 << n) {
        let subset: Vec<PeriodicOrbit> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| orbits[i].clone())
            .collect();
        let punctures: u64 = subset.iter().map(per_z).sum();
        if punctures <= 6 {
            sets.push(subset);
        }
    }
    sets
}

#[test]
fn zero_slope_multi_orbit_recovery() {
    // Every orbit set with <= 6 punctures: filling all meridians back with
    // slope 0 returns H_1 of the suspension exactly.
    let flow = cat_flow();
    let sets = cat_orbit_sets_up_to_six_punctures();
    assert!(sets.len() > 30, "the sweep must cover a real family of orbit sets");
    for subset in sets {
        let moves: Vec<SurgeryMove> =
            subset.iter().map(|o| SurgeryMove::new(o.clone(), 0)).collect();
        let path = SurgeryPath::new(flow.clone(), moves).unwrap();
        assert_eq!(
            h1_surgered(&path).unwrap(),
            *flow.h1(),
            "m = 0 recovery failed for {subset:?}"
        );
    }
}

#[test]
fn zero_slope_recovery_on_torsion_matrix() {
    let flow = tor_flow();
    let orbits = flow.orbits(2);
    for take in 1..=orbits.len().min(4) {
        let moves: Vec<SurgeryMove> = orbits[..take]
            .iter()
            .map(|o| SurgeryMove::new(o.clone(), 0))
            .collect();
        let path = SurgeryPath::new(flow.clone(), moves).unwrap();
        assert_eq!(h1_surgered(&path).unwrap(), *flow.h1());
    }
}

#[test]
fn arc_system_independence_ten_cases() {
    // Ten orbit-set cases across two matrices: straight and bent arc
    // systems must give SNF-equal complement homology.
    let mut cases: Vec<(SuspensionFlow, Vec<PeriodicOrbit>)> = Vec::new();
    let cat = cat_flow();
    let cat_orbits = cat.orbits(3);
    for set in [
        vec![0],
        vec![1],
        vec![0, 1],
        vec![1, 2],
        vec![0, 3],
        vec![3, 4],
        vec![0, 1, 2],
    ] {
        cases.push((
            cat.clone(),
            set.into_iter().map(|i| cat_orbits[i].clone()).collect(),
        ));
    }
    let tor = tor_flow();
    let tor_orbits = tor.orbits(2);
    for set in [vec![0], vec![0, 1], vec![1, 2]] {
        cases.push((
            tor.clone(),
            set.into_iter().map(|i| tor_orbits[i].clone()).collect(),
        ));
    }
    assert_eq!(cases.len(), 10);
    for (flow, orbits) in cases {
        let (straight, _) =
            h1_complement_with_arcs(&flow, &orbits, ArcStyle::Straight).unwrap();
        let (bent, _) = h1_complement_with_arcs(&flow, &orbits, ArcStyle::Bent).unwrap();
        assert_eq!(straight, bent, "arc systems disagree on {orbits:?}");
    }
}

#[test]
fn fill_back_matches_suspension_h1() {
    for flow in [cat_flow(), tor_flow()] {
        let orbits = flow.orbits(2);
        for take in 1..=orbits.len().min(3) {
            let (_, pres) = h1_complement(&flow, &orbits[..take]).unwrap();
            assert_eq!(pres.fill_back(), *flow.h1());
        }
    }
}

/// Functoriality oracle: on an invariant puncture set, the monodromy matrix
/// of A^2 computed from scratch (different loops, different crossings) must
/// agree with the square of the matrix computed for A, as maps on
/// H_1(punctured fiber), i.e. up to the boundary relation sum(c) = 0.
#[test]
fn monodromy_composition_oracle() {
    for (entries, horizon) in [([2i64, 1, 1, 1], 2u64), ([3, 2, 1, 1], 1), ([2, 1, 1, 1], 3)] {
        let a = Hyperbolic2::from_i64(entries).unwrap();
        let a2 = Hyperbolic2::new(a.matrix().pow(2).unwrap()).unwrap();
        let flow = build_suspension(&a).unwrap();
        let punctures: Vec<TorusPoint> = flow
            .orbits(horizon)
            .iter()
            .flat_map(|o| o.points().to_vec())
            .collect();
        // Use one attempt index for both so the generators coincide.
        let mut verified = false;
        for attempt in 0..16 {
            let m1 = punctured_monodromy_attempt(&a, &punctures, ArcStyle::Straight, attempt)
                .unwrap();
            let m2 = punctured_monodromy_attempt(&a2, &punctures, ArcStyle::Straight, attempt)
                .unwrap();
            let (m1, m2) = match (m1, m2) {
                (Some(x), Some(y)) => (x, y),
                _ => continue,
            };
            let composed = m1.mul(&m1).unwrap();
            assert!(
                columns_equal_mod_boundary(&composed, &m2, punctures.len()),
                "monodromy of A^2 differs from (monodromy of A)^2 for {entries:?}"
            );
            verified = true;
            break;
        }
        assert!(verified, "no common generic attempt found");
    }
}

/// Equality of columns modulo adding a constant to all puncture rows (the
/// kernel of the projection Z^{2+k} -> H_1(F)).
fn columns_equal_mod_boundary(x: &IntMat, y: &IntMat, punctures: usize) -> bool {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return false;
    }
    for col in 0..x.cols() {
        if x[(0, col)] != y[(0, col)] || x[(1, col)] != y[(1, col)] {
            return false;
        }
        let shift = &x[(2, col)] - &y[(2, col)];
        for row in 2..2 + punctures {
            if &x[(row, col)] - &y[(row, col)] != shift {
                return false;
            }
        }
    }
    true
}

#[test]
fn complement_rank_and_torsion_constraints() {
    // Rank: H_1 of a complement of r orbits has free rank r. Torsion: its
    // order divides gcd(per_Z) * |tr - 2| by the homology exact sequence of
    // the pair.
    for flow in [cat_flow(), tor_flow()] {
        let trace_minus_two = (flow.matrix().trace() - BigInt::from(2)).abs();
        let orbits = flow.orbits(3);
        let sets: Vec<Vec<usize>> = vec![
            vec![0],
            vec![0, 1],
            vec![1, 2],
            vec![0, 1, 2],
            vec![0, 2, 3],
        ];
        for set in sets {
            if set.iter().any(|&i| i >= orbits.len()) {
                continue;
            }
            let subset: Vec<PeriodicOrbit> = set.iter().map(|&i| orbits[i].clone()).collect();
            let (h1, _) = h1_complement(&flow, &subset).unwrap();
            assert_eq!(h1.free_rank(), subset.len());
            let gcd_per = subset
                .iter()
                .map(|o| BigInt::from(per_z(o)))
                .fold(BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, &x));
            let allowed = gcd_per * &trace_minus_two;
            let torsion = h1.torsion_order();
            assert!(
                (&allowed % &torsion).is_zero() || torsion == BigInt::from(1),
                "torsion {torsion} must divide {allowed}"
            );
        }
    }
}

#[test]
fn surgery_monotone_in_slope_magnitude() {
    // Single fixed-orbit surgeries on the cat map: |H_1| = |m| exactly, so
    // growing |m| grows the torsion through all small slopes.
    let flow = cat_flow();
    let fixed = flow.orbits(1)[0].clone();
    for m in 1i64..=8 {
        let path = SurgeryPath::new(
            flow.clone(),
            vec![SurgeryMove::new(fixed.clone(), m)],
        )
        .unwrap();
        let h1 = h1_surgered(&path).unwrap();
        assert_eq!(h1.order(), Some(BigInt::from(m)));
    }
}
