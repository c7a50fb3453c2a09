//! Report structures and renderers. JSON field order is declaration order
//! and every collection is sorted before serialization, so identical runs
//! produce identical bytes.

use anosov_core::stats::{rational_to_f64, Rational};
use anosov_core::surgery::{FINGERPRINT_CAVEAT, FRAMING_CONVENTION};
use serde::Serialize;

pub const TOOL_NAME: &str = "anosov-lab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Clone)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub matrix: String,
    pub framing_convention: &'static str,
    pub bounds: Bounds,
}

#[derive(Serialize, Clone, Default)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_period: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_slope: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_height: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa3: Option<String>,
}

impl Meta {
    pub fn new(matrix: String, bounds: Bounds) -> Self {
        Meta {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            matrix,
            framing_convention: FRAMING_CONVENTION,
            bounds,
        }
    }
}

pub fn fingerprint_caveat() -> &'static str {
    FINGERPRINT_CAVEAT
}

/// Exact rational rendered both ways for reports.
#[derive(Serialize, Clone)]
pub struct RationalField {
    pub exact: String,
    pub approx: f64,
}

impl RationalField {
    pub fn of(r: &Rational) -> Self {
        RationalField { exact: format!("{}/{}", r.numer(), r.denom()), approx: rational_to_f64(r) }
    }
}

#[derive(Serialize, Clone)]
pub struct CensusRow {
    pub period: u64,
    pub fixed_points: String,
    pub least_period_points: String,
    pub orbit_count: String,
}

#[derive(Serialize, Clone)]
pub struct OrbitRow {
    pub id: String,
    pub period: u64,
    pub representative: String,
    pub points: Vec<String>,
}

#[derive(Serialize)]
pub struct OrbitsReport {
    pub meta: Meta,
    pub census: Vec<CensusRow>,
    pub total_orbits: String,
    pub orbits: Vec<OrbitRow>,
}

impl OrbitsReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("period\tfixed_points\tleast_period_points\torbit_count\n");
        for r in &self.census {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r.period, r.fixed_points, r.least_period_points, r.orbit_count
            ));
        }
        out.push('\n');
        out.push_str("orbit_id\tperiod\trepresentative\n");
        for o in &self.orbits {
            out.push_str(&format!("{}\t{}\t{}\n", o.id, o.period, o.representative));
        }
        out
    }
}

#[derive(Serialize)]
pub struct ReversibleReport {
    pub meta: Meta,
    pub reversible: bool,
    pub word: String,
    pub word_of_inverse: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessField>,
    pub conclusion: String,
}

#[derive(Serialize, Clone)]
pub struct WitnessField {
    pub matrix: String,
    pub det: String,
    pub group: String,
    pub verified: bool,
}

impl ReversibleReport {
    pub fn to_tsv(&self) -> String {
        let witness = self
            .witness
            .as_ref()
            .map(|w| w.matrix.clone())
            .unwrap_or_else(|| "-".into());
        format!(
            "matrix\treversible\twitness\tword\tword_of_inverse\n{}\t{}\t{}\t{}\t{}\n",
            self.meta.matrix, self.reversible, witness, self.word, self.word_of_inverse
        )
    }
}

#[derive(Serialize, Clone)]
pub struct MoveRow {
    pub orbit_id: String,
    pub slope: String,
    pub per_z: u64,
}

#[derive(Serialize, Clone)]
pub struct BirkhoffEntryRow {
    pub orbit: String,
    pub components: u64,
    pub multiplicity: String,
    pub genuine_boundary: bool,
}

#[derive(Serialize, Clone)]
pub struct BirkhoffBlock {
    pub entries: Vec<BirkhoffEntryRow>,
    pub genus: u64,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
}

#[derive(Serialize, Clone)]
pub struct ValidationBlock {
    pub fiber_sum: String,
    pub fiber_ok: bool,
    pub horizontal_ok: bool,
    pub euler_ok: bool,
    pub multiplicities_ok: bool,
    pub passes: bool,
}

#[derive(Serialize)]
pub struct SurgeryReport {
    pub meta: Meta,
    pub suspension_h1: String,
    pub moves: Vec<MoveRow>,
    pub complement_h1: String,
    pub surgered_h1: String,
    pub fingerprint_match: bool,
    pub fingerprint_caveat: &'static str,
    pub transported_section: BirkhoffBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_a_prime: Option<BirkhoffBlock>,
}

impl SurgeryReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("orbit_id\tslope\tper_z\n");
        for m in &self.moves {
            out.push_str(&format!("{}\t{}\t{}\n", m.orbit_id, m.slope, m.per_z));
        }
        out.push('\n');
        out.push_str("suspension_h1\tcomplement_h1\tsurgered_h1\tfingerprint_match\n");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            self.suspension_h1, self.complement_h1, self.surgered_h1, self.fingerprint_match
        ));
        out
    }
}

#[derive(Serialize, Clone)]
pub struct CandidateRow {
    pub gamma: String,
    pub alpha: String,
    pub m: String,
    pub intermediate_h1: String,
    pub final_h1: String,
    pub certification: String,
    pub labels: Vec<String>,
}

#[derive(Serialize)]
pub struct LoopCandidatesReport {
    pub meta: Meta,
    pub reversible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub base_fingerprint: String,
    pub candidates: Vec<CandidateRow>,
}

impl LoopCandidatesReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("gamma\talpha\tm\tintermediate_h1\tfinal_h1\tcertification\n");
        for c in &self.candidates {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                c.gamma, c.alpha, c.m, c.intermediate_h1, c.final_h1, c.certification
            ));
        }
        out
    }

    /// Graph of invariant-level surgery moves: nodes are H1 fingerprints,
    /// edges are single surgery moves labeled `(orbit-id, m)`. The graph is
    /// non-oriented, so endpoints are stored sorted.
    pub fn to_dot(&self) -> String {
        use std::collections::{BTreeMap, BTreeSet};
        let mut nodes: BTreeSet<String> = BTreeSet::new();
        nodes.insert(self.base_fingerprint.clone());
        let mut edges: BTreeSet<(String, String, String)> = BTreeSet::new();
        let mut undirected = |a: String, b: String, label: String| {
            if a <= b {
                edges.insert((a, b, label));
            } else {
                edges.insert((b, a, label));
            }
        };
        for c in &self.candidates {
            nodes.insert(c.intermediate_h1.clone());
            undirected(
                self.base_fingerprint.clone(),
                c.intermediate_h1.clone(),
                format!("({}, {})", c.gamma, c.m),
            );
            let back_slope = if let Some(stripped) = c.m.strip_prefix('-') {
                stripped.to_string()
            } else {
                format!("-{}", c.m)
            };
            undirected(
                c.intermediate_h1.clone(),
                self.base_fingerprint.clone(),
                format!("({}, {})", c.alpha, back_slope),
            );
        }
        let ids: BTreeMap<&String, String> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n, format!("n{i}")))
            .collect();
        let mut out = String::new();
        out.push_str("graph surgeries {\n");
        for (label, id) in &ids {
            out.push_str(&format!("  {id} [label=\"{label}\"];\n"));
        }
        for (from, to, label) in &edges {
            out.push_str(&format!(
                "  {} -- {} [label=\"{label}\"];\n",
                ids[from], ids[to]
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Clone)]
pub struct DensityRowOut {
    pub t: u64,
    pub orbit_count: String,
    pub ratio_bound: RationalField,
}

#[derive(Serialize, Clone)]
pub struct IntervalField {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

impl IntervalField {
    pub fn of(iv: &anosov_core::stats::RatInterval) -> Self {
        IntervalField {
            lo: format!("{}/{}", iv.lo.numer(), iv.lo.denom()),
            hi: format!("{}/{}", iv.hi.numer(), iv.hi.denom()),
            approx: iv.midpoint_f64(),
        }
    }
}

#[derive(Serialize)]
pub struct PropBReport {
    pub meta: Meta,
    pub total_orbits: String,
    pub density: Vec<DensityRowOut>,
    pub growth_estimate: IntervalField,
    pub growth_cumulative_estimate: IntervalField,
    pub growth_target: IntervalField,
    pub growth_relative_error: IntervalField,
    pub note: &'static str,
}

pub const PROPB_NOTE: &str = "ratio_bound is the proof's certified upper-bound sequence for \
                              |Q^2_t(m)|/|P^2_t|; the growth rate of the total number of loops \
                              is an open question";

impl PropBReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("t\torbit_count\tratio_bound_exact\tratio_bound_approx\n");
        for r in &self.density {
            out.push_str(&format!(
                "{}\t{}\t{}\t{:e}\n",
                r.t, r.orbit_count, r.ratio_bound.exact, r.ratio_bound.approx
            ));
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
