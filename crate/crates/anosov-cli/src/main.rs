//! anosov-lab: exact computations around suspension Anosov flows.
//!
//! Subcommands cover orbit censuses, GL(2,Z)-reversibility, surgery
//! homology, length-2 loop candidates and the density-zero growth report.
//! Exit code 0 means success, 2 means invalid input.

mod output;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use anosov_core::birkhoff::{
    section_after_surgery, theorem_a_prime_data, validate, Certification,
};
use anosov_core::linalg::Hyperbolic2;
use anosov_core::stats::{density_ratio, growth_rate, PropBParams};
use anosov_core::surgery::{
    h1_complement, h1_surgered_with, suspension_fingerprint_check, SurgeryMove, SurgeryPath,
};
use anosov_core::suspension::{build_suspension, per_z, SuspensionFlow};
use anosov_core::torus::{OrbitId, PeriodicOrbit};
use anosov_core::words::{is_reversible, rl_decompose};
use anosov_core::Error;

use output::*;

#[derive(Parser)]
#[command(
    name = "anosov-lab",
    version,
    about = "Exact periodic-orbit and surgery computations for suspension Anosov flows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Matrix in the form "a,b;c,d" (integers, optional spaces).
    #[arg(long)]
    matrix: String,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-point and orbit census up to a period horizon.
    Orbits {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest least period to enumerate.
        #[arg(long, default_value_t = 3)]
        max_period: u64,
    },
    /// Is the matrix conjugate to its inverse in GL(2,Z)?
    Reversible {
        #[command(flatten)]
        common: CommonArgs,
        /// Height recorded for oracle cross-checks (must be >= 1).
        #[arg(long, default_value_t = 10)]
        brute_height: i64,
    },
    /// Homology of an integral surgery along chosen orbits.
    Surgery {
        #[command(flatten)]
        common: CommonArgs,
        /// Surgery moves "orbit-id,slope", e.g. "p1-i0,3"; repeatable.
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
        /// User-asserted hyperbolicity threshold for certification labels.
        #[arg(long, default_value_t = 1)]
        m0: u64,
    },
    /// Length-2 loop candidates (gamma, m), (alpha, -m) passing the
    /// necessary-condition filters.
    LoopCandidates {
        #[command(flatten)]
        common: CommonArgs,
        /// Orbit period bound P.
        #[arg(long, default_value_t = 3)]
        max_period: u64,
        /// Slope bound M (candidates use 0 < |m| <= M).
        #[arg(long, default_value_t = 2)]
        max_slope: i64,
        /// User-asserted hyperbolicity threshold.
        #[arg(long, default_value_t = 1)]
        m0: u64,
    },
    /// Orbit growth and the density-zero ratio bound.
    Propb {
        #[command(flatten)]
        common: CommonArgs,
        /// Census horizon t.
        #[arg(long, default_value_t = 25)]
        max_period: u64,
        /// Constant C0 of the class-count bound, as "p/q" or an integer.
        #[arg(long, default_value = "1")]
        c0: String,
        /// Threshold t0 past which the bound holds.
        #[arg(long, default_value_t = 1)]
        t0: u64,
        /// Period-comparison constant kappa3, as "p/q" or an integer.
        #[arg(long, default_value = "1")]
        kappa3: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Worker pool sized by ANOSOV_LAB_THREADS (default: available parallelism).
fn thread_pool() -> Result<rayon::ThreadPool, Error> {
    let threads = match std::env::var("ANOSOV_LAB_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(|| {
            Error::Parameter(format!(
                "ANOSOV_LAB_THREADS must be a positive integer, got {v:?}"
            ))
        })?,
        Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let parse_int = |x: &str| -> Result<BigInt, Error> {
        x.trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("not an integer: {x:?}")))
    };
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parameter("zero denominator".into()));
            }
            BigRational::new(parse_int(n)?, den)
        }
        None => BigRational::from(parse_int(s)?),
    };
    Ok(r)
}

fn format_to_string(format: Format, json: String, tsv: String) -> Result<String, Error> {
    match format {
        Format::Json => Ok(json),
        Format::Tsv => Ok(tsv),
        Format::Dot => Err(Error::Parameter(
            "dot format is only available for loop-candidates".into(),
        )),
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Orbits { common, max_period } => cmd_orbits(common, max_period),
        Command::Reversible { common, brute_height } => cmd_reversible(common, brute_height),
        Command::Surgery { common, moves, m0 } => cmd_surgery(common, moves, m0),
        Command::LoopCandidates { common, max_period, max_slope, m0 } => {
            cmd_loop_candidates(common, max_period, max_slope, m0)
        }
        Command::Propb { common, max_period, c0, t0, kappa3 } => {
            cmd_propb(common, max_period, c0, t0, kappa3)
        }
    }
}

fn parse_flow(matrix: &str) -> Result<(Hyperbolic2, SuspensionFlow), Error> {
    let a = Hyperbolic2::from_str(matrix)?;
    let flow = build_suspension(&a)?;
    Ok((a, flow))
}

fn orbit_rows(orbits: &[PeriodicOrbit]) -> Vec<OrbitRow> {
    orbits
        .iter()
        .map(|o| {
            let id = OrbitId::of(orbits, o).expect("orbit from its own list");
            OrbitRow {
                id: id.to_string(),
                period: o.period(),
                representative: o.representative().to_string(),
                points: o.points().iter().map(|p| p.to_string()).collect(),
            }
        })
        .collect()
}

fn cmd_orbits(common: CommonArgs, max_period: u64) -> Result<String, Error> {
    if max_period < 1 {
        return Err(Error::Parameter("max period must be at least 1".into()));
    }
    let a = Hyperbolic2::from_str(&common.matrix)?;
    let census = anosov_core::torus::census(&a, max_period);
    let orbits = anosov_core::torus::enumerate_orbits(&a, max_period);
    let report = OrbitsReport {
        meta: Meta::new(
            common.matrix.clone(),
            Bounds { max_period: Some(max_period), ..Bounds::default() },
        ),
        census: (1..=max_period)
            .map(|n| CensusRow {
                period: n,
                fixed_points: census.fixed(n).to_string(),
                least_period_points: census.least(n).to_string(),
                orbit_count: census.orbits(n).to_string(),
            })
            .collect(),
        total_orbits: census.cumulative.to_string(),
        orbits: orbit_rows(&orbits),
    };
    format_to_string(common.format, to_json(&report), report.to_tsv())
}

fn cmd_reversible(common: CommonArgs, brute_height: i64) -> Result<String, Error> {
    if brute_height < 1 {
        return Err(Error::Parameter("brute height must be at least 1".into()));
    }
    let a = Hyperbolic2::from_str(&common.matrix)?;
    a.require_flow()?;
    let word = rl_decompose(&a)?.word.to_string();
    let word_of_inverse = rl_decompose(&a.inverse())?.word.to_string();
    let witness = is_reversible(&a)?;
    let reversible = witness.is_some();
    let report = ReversibleReport {
        meta: Meta::new(
            common.matrix.clone(),
            Bounds { brute_height: Some(brute_height), ..Bounds::default() },
        ),
        reversible,
        word,
        word_of_inverse,
        witness: witness.map(|w| {
            let verified = w.holds_for(a.matrix(), a.inverse().matrix());
            WitnessField {
                matrix: w.p.to_string(),
                det: w.p.det().expect("2x2").to_string(),
                group: "GL(2,Z)".into(),
                verified,
            }
        }),
        conclusion: if reversible {
            "reversible: A is conjugate to A^-1 in GL(2,Z)".into()
        } else {
            "no witness (word classes differ)".into()
        },
    };
    format_to_string(common.format, to_json(&report), report.to_tsv())
}

fn parse_move(s: &str, orbits: &[PeriodicOrbit]) -> Result<(PeriodicOrbit, BigInt), Error> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (id_str, slope_str) = trimmed
        .split_once(',')
        .ok_or_else(|| Error::Parameter(format!("move must be \"orbit-id,slope\", got {s:?}")))?;
    let id: OrbitId = id_str.trim().parse()?;
    let orbit = id.resolve(orbits)?.clone();
    let slope: BigInt = slope_str
        .trim()
        .parse()
        .map_err(|_| Error::Parameter(format!("slope must be an integer, got {slope_str:?}")))?;
    Ok((orbit, slope))
}

fn birkhoff_block(
    data: &anosov_core::birkhoff::BirkhoffData,
    flow: &SuspensionFlow,
    certification: Option<String>,
) -> BirkhoffBlock {
    use anosov_core::birkhoff::BoundaryOrbit;
    let entries = data
        .entries
        .iter()
        .map(|e| BirkhoffEntryRow {
            orbit: match &e.orbit {
                BoundaryOrbit::Orbit(o) => {
                    format!("orbit per_z={}, rep={}", per_z(o), o.representative())
                }
                BoundaryOrbit::Core { move_index, of } => {
                    format!("core of move {} (was per_z={})", move_index, per_z(of))
                }
            },
            components: e.components,
            multiplicity: e.multiplicity.to_string(),
            genuine_boundary: e.is_genuine_boundary(),
        })
        .collect();
    let validation = if data
        .entries
        .iter()
        .all(|e| matches!(e.orbit, BoundaryOrbit::Orbit(_)))
    {
        validate(data, flow).ok().map(|r| ValidationBlock {
            fiber_sum: r.fiber_sum.to_string(),
            fiber_ok: r.fiber_ok,
            horizontal_ok: r.horizontal_ok,
            euler_ok: r.euler_ok,
            multiplicities_ok: r.multiplicities_ok,
            passes: r.passes(),
        })
    } else {
        None
    };
    BirkhoffBlock {
        entries,
        genus: data.genus,
        euler_characteristic: data.euler_characteristic(),
        validation,
        certification,
    }
}

fn cmd_surgery(common: CommonArgs, move_strings: Vec<String>, m0: u64) -> Result<String, Error> {
    let (_, flow) = parse_flow(&common.matrix)?;
    // The orbit-id space is determined by the largest period mentioned.
    let mut max_period = 1;
    for s in &move_strings {
        let trimmed = s.trim().trim_start_matches('(');
        if let Some((id_str, _)) = trimmed.split_once(',') {
            if let Ok(id) = id_str.trim().parse::<OrbitId>() {
                max_period = max_period.max(id.period);
            }
        }
    }
    let orbits = flow.orbits(max_period);
    let mut moves = Vec::new();
    for s in &move_strings {
        let (orbit, slope) = parse_move(s, &orbits)?;
        moves.push(SurgeryMove::new(orbit, slope));
    }
    let path = SurgeryPath::new(flow.clone(), moves)?;
    let (complement_h1, pres) = h1_complement(&flow, &path.orbits())?;
    let surgered = h1_surgered_with(&path, &pres);
    let fingerprint_match = suspension_fingerprint_check(&surgered, &flow);

    let section = section_after_surgery(&path);
    // A length-2 path of Theorem A shape (m, -m) gets the Theorem A' block.
    let theorem_block = if path.moves().len() == 2
        && path.moves()[0].slope == -path.moves()[1].slope.clone()
        && !path.moves()[0].slope.is_zero()
    {
        let m = path.moves()[0].slope.clone();
        theorem_a_prime_data(&path.moves()[0].orbit, &path.moves()[1].orbit, &m, m0)
            .ok()
            .map(|out| {
                let label = match out.certification {
                    Certification::Certified => "certified",
                    Certification::Hypothetical => "hypothetical",
                };
                birkhoff_block(&out.data, &flow, Some(label.to_string()))
            })
    } else {
        None
    };

    let move_rows = path
        .moves()
        .iter()
        .map(|mv| MoveRow {
            orbit_id: OrbitId::of(&orbits, &mv.orbit).expect("resolved above").to_string(),
            slope: mv.slope.to_string(),
            per_z: per_z(&mv.orbit),
        })
        .collect();
    let report = SurgeryReport {
        meta: Meta::new(
            common.matrix.clone(),
            Bounds { max_period: Some(max_period), m0: Some(m0), ..Bounds::default() },
        ),
        suspension_h1: flow.h1().invariant_string(),
        moves: move_rows,
        complement_h1: complement_h1.invariant_string(),
        surgered_h1: surgered.invariant_string(),
        fingerprint_match,
        fingerprint_caveat: fingerprint_caveat(),
        transported_section: birkhoff_block(&section, &flow, None),
        theorem_a_prime: theorem_block,
    };
    format_to_string(common.format, to_json(&report), report.to_tsv())
}

fn cmd_loop_candidates(
    common: CommonArgs,
    max_period: u64,
    max_slope: i64,
    m0: u64,
) -> Result<String, Error> {
    if max_period < 1 {
        return Err(Error::Parameter("max period must be at least 1".into()));
    }
    if max_slope < 0 {
        return Err(Error::Parameter("max slope must be nonnegative".into()));
    }
    let (a, flow) = parse_flow(&common.matrix)?;
    let reversible = is_reversible(&a)?.is_some();
    let warning = if reversible {
        None
    } else {
        Some(
            "matrix is not conjugate to its inverse in GL(2,Z); closed loops are not expected, \
             the far endpoint is a suspension of A or A^-1 only"
                .to_string(),
        )
    };
    let orbits = flow.orbits(max_period);
    let base_fp = flow.h1().invariant_string();

    let pool = thread_pool()?;
    // Single-orbit presentations (for the intermediate fingerprints) are
    // shared across all pairs involving the orbit; nothing to prepare when
    // the slope bound empties the sweep.
    let single_pres: Vec<_> = if max_slope == 0 {
        Vec::new()
    } else {
        pool.install(|| {
            orbits
                .par_iter()
                .map(|o| h1_complement(&flow, &[o.clone()]).expect("single orbit").1)
                .collect()
        })
    };

    // Ordered pair sweep (gamma, m), (alpha, -m), 0 < |m| <= max_slope.
    let mut tasks = Vec::new();
    if max_slope > 0 {
        for gi in 0..orbits.len() {
            for ai in 0..orbits.len() {
                if gi != ai {
                    tasks.push((gi, ai));
                }
            }
        }
    }
    let mut rows: Vec<CandidateRow> = pool.install(|| {
        tasks
            .par_iter()
            .flat_map(|&(gi, ai)| {
                let gamma = &orbits[gi];
                let alpha = &orbits[ai];
                let mut local = Vec::new();
                if max_slope == 0 {
                    return local;
                }
                let pair_pres = h1_complement(&flow, &[gamma.clone(), alpha.clone()])
                    .expect("disjoint orbits");
                for m_abs in 1..=max_slope {
                    for sign in [1i64, -1] {
                        let m = BigInt::from(m_abs * sign);
                        let data = theorem_a_prime_data(gamma, alpha, &m, m0)
                            .expect("distinct orbits, nonzero slope");
                        let report = validate(&data.data, &flow).expect("orbits of flow");
                        if !report.passes() {
                            continue;
                        }
                        let path = SurgeryPath::new(
                            flow.clone(),
                            vec![
                                SurgeryMove::new(gamma.clone(), m.clone()),
                                SurgeryMove::new(alpha.clone(), -m.clone()),
                            ],
                        )
                        .expect("valid path");
                        let final_h1 = h1_surgered_with(&path, &pair_pres.1);
                        if !suspension_fingerprint_check(&final_h1, &flow) {
                            continue;
                        }
                        let single_path = SurgeryPath::new(
                            flow.clone(),
                            vec![SurgeryMove::new(gamma.clone(), m.clone())],
                        )
                        .expect("valid path");
                        let intermediate = h1_surgered_with(&single_path, &single_pres[gi]);
                        let mut labels = vec![
                            "necessary conditions only - membership in Q(gamma,m) not certified"
                                .to_string(),
                        ];
                        let certification = if m.abs() >= BigInt::from(m0) {
                            "certified".to_string()
                        } else {
                            labels.push("hypothetical: |m| below asserted m0".to_string());
                            "hypothetical".to_string()
                        };
                        local.push(CandidateRow {
                            gamma: OrbitId::of(&orbits, gamma).expect("listed").to_string(),
                            alpha: OrbitId::of(&orbits, alpha).expect("listed").to_string(),
                            m: m.to_string(),
                            intermediate_h1: intermediate.invariant_string(),
                            final_h1: final_h1.invariant_string(),
                            certification,
                            labels,
                        });
                    }
                }
                local
            })
            .collect()
    });
    rows.sort_by(|x, y| {
        let key = |r: &CandidateRow| {
            (
                r.gamma.clone(),
                r.alpha.clone(),
                r.m.trim_start_matches('-').len(),
                r.m.clone(),
            )
        };
        key(x).cmp(&key(y))
    });

    let report = LoopCandidatesReport {
        meta: Meta::new(
            common.matrix.clone(),
            Bounds {
                max_period: Some(max_period),
                max_slope: Some(max_slope),
                m0: Some(m0),
                ..Bounds::default()
            },
        ),
        reversible,
        warning,
        base_fingerprint: base_fp,
        candidates: rows,
    };
    match common.format {
        Format::Json => Ok(to_json(&report)),
        Format::Tsv => Ok(report.to_tsv()),
        Format::Dot => Ok(report.to_dot()),
    }
}

fn cmd_propb(
    common: CommonArgs,
    max_period: u64,
    c0: String,
    t0: u64,
    kappa3: String,
) -> Result<String, Error> {
    let a = Hyperbolic2::from_str(&common.matrix)?;
    a.require_flow()?;
    let params = PropBParams::new(parse_rational(&c0)?, t0, parse_rational(&kappa3)?)?;
    if max_period < 5 {
        return Err(Error::Parameter("propb needs a census horizon of at least 5".into()));
    }
    let census = anosov_core::torus::census(&a, max_period);
    let rows = density_ratio(&census, &params)?;
    let growth = growth_rate(&census)?;
    let report = PropBReport {
        meta: Meta::new(
            common.matrix.clone(),
            Bounds {
                max_period: Some(max_period),
                c0: Some(c0),
                t0: Some(t0),
                kappa3: Some(kappa3),
                ..Bounds::default()
            },
        ),
        total_orbits: census.cumulative.to_string(),
        density: rows
            .iter()
            .map(|r| DensityRowOut {
                t: r.t,
                orbit_count: r.orbit_count.to_string(),
                ratio_bound: RationalField::of(&r.ratio_bound),
            })
            .collect(),
        growth_estimate: IntervalField::of(&growth.estimate),
        growth_cumulative_estimate: IntervalField::of(&growth.cumulative_estimate),
        growth_target: IntervalField::of(&growth.target),
        growth_relative_error: IntervalField::of(&growth.relative_error),
        note: PROPB_NOTE,
    };
    format_to_string(common.format, to_json(&report), report.to_tsv())
}
