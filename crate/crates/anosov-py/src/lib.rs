//! Python bindings: a `Matrix2` class wrapping the suspension-flow toolkit.
//!
//! Usage from Python:
//!
//! ```text
//! import anosov_lab
//! cat = anosov_lab.Matrix2("2,1;1,1")
//! cat.census(3)["total_orbits"]      # "8"
//! cat.is_reversible()                # True
//! cat.surgery_h1([("p1-i0", 3)])     # {'surgered_h1': 'Z/3', ...}
//! ```

use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use anosov_core::birkhoff::{theorem_a_prime_data, validate, Certification};
use anosov_core::linalg::{snf, Hyperbolic2, IntMat};
use anosov_core::stats::{
    density_ratio, fh_bound, growth_rate, rational_to_f64, PropBParams, Rational,
};
use anosov_core::surgery::{
    h1_complement, h1_surgered_with, suspension_fingerprint_check, SurgeryMove, SurgeryPath,
    FRAMING_CONVENTION,
};
use anosov_core::suspension::{build_suspension, per_z};
use anosov_core::torus::{census, enumerate_orbits, OrbitId};
use anosov_core::words::{is_reversible, rl_decompose};
use num_bigint::BigInt;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    let parse_int = |x: &str| -> PyResult<BigInt> {
        x.trim().parse().map_err(|_| err(format!("not an integer: {x:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from(parse_int(s)?)),
    }
}

/// A hyperbolic integer 2x2 matrix with det = +1 and trace >= 3, seen as
/// the monodromy of a suspension Anosov flow.
#[pyclass]
struct Matrix2 {
    matrix: Hyperbolic2,
}

#[pymethods]
impl Matrix2 {
    /// Parse from the "a,b;c,d" syntax shared with the CLI.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let matrix = Hyperbolic2::from_str(spec).map_err(err)?;
        matrix.require_flow().map_err(err)?;
        Ok(Matrix2 { matrix })
    }

    fn __repr__(&self) -> String {
        format!("Matrix2(\"{}\")", self.matrix)
    }

    fn trace(&self) -> i64 {
        i64::try_from(self.matrix.trace()).expect("small traces in Python use")
    }

    fn det(&self) -> i64 {
        i64::try_from(self.matrix.det()).expect("unit determinant")
    }

    fn entries(&self) -> Vec<String> {
        self.matrix.matrix().entries().iter().map(|e| e.to_string()).collect()
    }

    /// Canonical cyclic RL-word of the conjugacy class.
    fn rl_word(&self) -> PyResult<String> {
        Ok(rl_decompose(&self.matrix).map_err(err)?.word.to_string())
    }

    /// Is the matrix conjugate to its inverse in GL(2,Z)?
    fn is_reversible(&self) -> PyResult<bool> {
        Ok(is_reversible(&self.matrix).map_err(err)?.is_some())
    }

    /// The verified witness matrix when reversible, else None.
    fn reversibility_witness(&self) -> PyResult<Option<String>> {
        Ok(is_reversible(&self.matrix).map_err(err)?.map(|w| w.p.to_string()))
    }

    /// Invariant-factor form of H_1 of the mapping torus, e.g. "Z+Z/2".
    fn suspension_h1(&self) -> PyResult<String> {
        Ok(build_suspension(&self.matrix).map_err(err)?.h1().invariant_string())
    }

    /// Fixed-point and orbit counts up to the period horizon.
    fn census<'py>(&self, py: Python<'py>, max_period: u64) -> PyResult<Bound<'py, PyDict>> {
        if max_period < 1 {
            return Err(err("max_period must be at least 1"));
        }
        let c = census(&self.matrix, max_period);
        let out = PyDict::new(py);
        let rows = PyList::empty(py);
        for n in 1..=max_period {
            let row = PyDict::new(py);
            row.set_item("period", n)?;
            row.set_item("fixed_points", c.fixed(n).to_string())?;
            row.set_item("least_period_points", c.least(n).to_string())?;
            row.set_item("orbit_count", c.orbits(n).to_string())?;
            rows.append(row)?;
        }
        out.set_item("rows", rows)?;
        out.set_item("total_orbits", c.cumulative.to_string())?;
        Ok(out)
    }

    /// Canonical orbit list up to the period horizon.
    fn orbits<'py>(&self, py: Python<'py>, max_period: u64) -> PyResult<Bound<'py, PyList>> {
        let orbits = enumerate_orbits(&self.matrix, max_period);
        let list = PyList::empty(py);
        for o in &orbits {
            let id = OrbitId::of(&orbits, o).expect("own list");
            let d = PyDict::new(py);
            d.set_item("id", id.to_string())?;
            d.set_item("period", o.period())?;
            d.set_item("representative", o.representative().to_string())?;
            d.set_item(
                "points",
                o.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            )?;
            list.append(d)?;
        }
        Ok(list)
    }

    /// Homology of the integral surgery given by (orbit_id, slope) moves.
    #[pyo3(signature = (moves))]
    fn surgery_h1<'py>(
        &self,
        py: Python<'py>,
        moves: Vec<(String, i64)>,
    ) -> PyResult<Bound<'py, PyDict>> {
        if moves.is_empty() {
            return Err(err("need at least one (orbit_id, slope) move"));
        }
        let flow = build_suspension(&self.matrix).map_err(err)?;
        let mut max_period = 1;
        let mut parsed = Vec::new();
        for (id_str, slope) in &moves {
            let id: OrbitId = id_str.parse().map_err(err)?;
            max_period = max_period.max(id.period);
            parsed.push((id, *slope));
        }
        let orbits = flow.orbits(max_period);
        let mut surgery_moves = Vec::new();
        for (id, slope) in parsed {
            let orbit = id.resolve(&orbits).map_err(err)?.clone();
            surgery_moves.push(SurgeryMove::new(orbit, slope));
        }
        let path = SurgeryPath::new(flow.clone(), surgery_moves).map_err(err)?;
        let (complement, pres) = h1_complement(&flow, &path.orbits()).map_err(err)?;
        let surgered = h1_surgered_with(&path, &pres);
        let out = PyDict::new(py);
        out.set_item("suspension_h1", flow.h1().invariant_string())?;
        out.set_item("complement_h1", complement.invariant_string())?;
        out.set_item("surgered_h1", surgered.invariant_string())?;
        out.set_item(
            "fingerprint_match",
            suspension_fingerprint_check(&surgered, &flow),
        )?;
        out.set_item("framing_convention", FRAMING_CONVENTION)?;
        Ok(out)
    }

    /// Theorem A' boundary data for the loop (gamma, m), (alpha, -m), plus
    /// its validation report.
    #[pyo3(signature = (gamma_id, alpha_id, m, m0 = 1))]
    fn theorem_a_prime<'py>(
        &self,
        py: Python<'py>,
        gamma_id: &str,
        alpha_id: &str,
        m: i64,
        m0: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let flow = build_suspension(&self.matrix).map_err(err)?;
        let gid: OrbitId = gamma_id.parse().map_err(err)?;
        let aid: OrbitId = alpha_id.parse().map_err(err)?;
        let orbits = flow.orbits(gid.period.max(aid.period));
        let gamma = gid.resolve(&orbits).map_err(err)?.clone();
        let alpha = aid.resolve(&orbits).map_err(err)?.clone();
        let data = theorem_a_prime_data(&gamma, &alpha, &BigInt::from(m), m0).map_err(err)?;
        let report = validate(&data.data, &flow).map_err(err)?;
        let out = PyDict::new(py);
        let entries = PyList::empty(py);
        for e in &data.data.entries {
            let d = PyDict::new(py);
            d.set_item("components", e.components)?;
            d.set_item("multiplicity", e.multiplicity.to_string())?;
            entries.append(d)?;
        }
        out.set_item("entries", entries)?;
        out.set_item("genus", data.data.genus)?;
        out.set_item("euler_characteristic", data.data.euler_characteristic())?;
        out.set_item("fiber_ok", report.fiber_ok)?;
        out.set_item("horizontal_ok", report.horizontal_ok)?;
        out.set_item("euler_ok", report.euler_ok)?;
        out.set_item("passes", report.passes())?;
        out.set_item(
            "certification",
            match data.certification {
                Certification::Certified => "certified",
                Certification::Hypothetical => "hypothetical",
            },
        )?;
        Ok(out)
    }

    /// Certified upper bound C1 sqrt(t) log(t) as an exact rational string.
    #[pyo3(signature = (t, c0 = "1", t0 = 1, kappa3 = "1"))]
    fn fh_bound(&self, t: u64, c0: &str, t0: u64, kappa3: &str) -> PyResult<String> {
        let params =
            PropBParams::new(parse_rational(c0)?, t0, parse_rational(kappa3)?).map_err(err)?;
        let b = fh_bound(&params, t).map_err(err)?;
        Ok(format!("{}/{}", b.numer(), b.denom()))
    }

    /// Density table rows (t, certified ratio bound as float, exact string).
    fn density_ratio<'py>(
        &self,
        py: Python<'py>,
        max_period: u64,
    ) -> PyResult<Bound<'py, PyList>> {
        let c = census(&self.matrix, max_period);
        let rows = density_ratio(&c, &PropBParams::default()).map_err(err)?;
        let list = PyList::empty(py);
        for r in rows {
            let d = PyDict::new(py);
            d.set_item("t", r.t)?;
            d.set_item("orbit_count", r.orbit_count.to_string())?;
            d.set_item("ratio_bound", rational_to_f64(&r.ratio_bound))?;
            d.set_item(
                "ratio_bound_exact",
                format!("{}/{}", r.ratio_bound.numer(), r.ratio_bound.denom()),
            )?;
            list.append(d)?;
        }
        Ok(list)
    }

    /// Entropy estimate at the census horizon vs log(lambda).
    fn growth_rate<'py>(&self, py: Python<'py>, max_period: u64) -> PyResult<Bound<'py, PyDict>> {
        let c = census(&self.matrix, max_period);
        let g = growth_rate(&c).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("estimate", g.estimate.midpoint_f64())?;
        out.set_item("target", g.target.midpoint_f64())?;
        out.set_item("relative_error_upper", rational_to_f64(&g.relative_error.hi))?;
        Ok(out)
    }

    /// per_Z of an orbit given by id (= its least period).
    fn per_z(&self, orbit_id: &str) -> PyResult<u64> {
        let id: OrbitId = orbit_id.parse().map_err(err)?;
        let orbits = enumerate_orbits(&self.matrix, id.period);
        Ok(per_z(id.resolve(&orbits).map_err(err)?))
    }
}

/// Smith normal form of an integer matrix given as nested lists; returns
/// the diagonal together with the unimodular transforms.
#[pyfunction]
fn smith_normal_form<'py>(py: Python<'py>, rows: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyDict>> {
    let r = rows.len();
    if r == 0 || rows.iter().any(|row| row.len() != rows[0].len()) {
        return Err(err("need a nonempty rectangular matrix"));
    }
    let c = rows[0].len();
    let flat: Vec<i64> = rows.into_iter().flatten().collect();
    let m = IntMat::from_i64(r, c, &flat).map_err(err)?;
    let s = snf(&m);
    let to_rows = |m: &IntMat| -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
            .collect()
    };
    let out = PyDict::new(py);
    out.set_item("d", to_rows(&s.d))?;
    out.set_item("u", to_rows(&s.u))?;
    out.set_item("v", to_rows(&s.v))?;
    out.set_item(
        "diagonal",
        s.diagonal().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pymodule]
fn anosov_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Matrix2>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    Ok(())
}
