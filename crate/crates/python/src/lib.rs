use dynkin_core::exactlin::{parse_rat, RatMat};
use dynkin_core::minnorm::{min_norm_point as solve, verify_certificate, MinNormError};
use dynkin_core::rootsys::{ChamberPoint, RootSystemSpec};
use dynkin_core::signtypes::{closure_polyhedron, enumerate_ideals, Constraint, Polyhedron, SignType};
use dynkin_core::verify::{run_verification, Checks, VerifyConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_point(xs: &[String]) -> Result<ChamberPoint, String> {
    xs.iter()
        .map(|s| parse_rat(s).ok_or_else(|| format!("bad rational {s:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(|v| ChamberPoint::new(dynkin_core::exactlin::RatVec::new(v)))
}

fn parse_constraints(dim: usize, cs: Vec<(Vec<i64>, String, String)>) -> Result<Polyhedron, String> {
    let mut out = Vec::with_capacity(cs.len());
    for (normal, sense, bound) in cs {
        if normal.len() != dim {
            return Err(format!("normal {normal:?} does not have length {dim}"));
        }
        let b = parse_rat(&bound).ok_or_else(|| format!("bad rational {bound:?}"))?;
        out.push(match sense.as_str() {
            ">=" => Constraint::ge(normal, b),
            "<=" => Constraint::le(normal, b),
            s => return Err(format!("sense must be >= or <=, got {s:?}")),
        });
    }
    Ok(Polyhedron::new(dim, out))
}

fn parse_gram(rows: &[Vec<String>]) -> Result<RatMat, String> {
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rat(s).ok_or_else(|| format!("bad rational {s:?}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    RatMat::from_rows(parsed).map_err(|e| e.to_string())
}

/// Minimizer, active set and multipliers as strings.
type Certificate = (Vec<String>, Vec<usize>, Vec<String>);

fn solve_region(p: &Polyhedron, gram: &RatMat) -> Result<Certificate, String> {
    let c = solve(p, gram).map_err(|e| match e {
        MinNormError::Infeasible(_) => "polyhedron is empty".to_string(),
        other => other.to_string(),
    })?;
    verify_certificate(p, gram, &c).map_err(|e| e.to_string())?;
    Ok((
        c.minimizer.to_strings(),
        c.active_set,
        c.multipliers.iter().map(ToString::to_string).collect(),
    ))
}

/// A root system with its Chevalley basis data.
#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    inner: dynkin_core::rootsys::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(family: &str, rank: usize) -> PyResult<Self> {
        let spec = RootSystemSpec::parse(family, rank).map_err(value_error)?;
        Ok(PyRootSystem {
            inner: dynkin_core::rootsys::RootSystem::build(spec),
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.spec().label()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Dimension of the Lie algebra.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner
            .positive_roots()
            .iter()
            .map(|r| r.coords.clone())
            .collect()
    }

    fn gram(&self) -> Vec<Vec<String>> {
        let g = self.inner.gram_coweight();
        (0..g.rows())
            .map(|i| g.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }

    fn catalan_number(&self) -> u128 {
        self.inner.spec().catalan_number()
    }

    /// Sign types of all ideals, as `+`/`0` strings in root order.
    fn sign_types(&self) -> Vec<String> {
        enumerate_ideals(&self.inner)
            .iter()
            .map(|i| SignType::of_ideal(&self.inner, i).to_string())
            .collect()
    }

    /// Squared norm of a point in coweight coordinates, e.g. `["1/2", "0"]`.
    fn norm_squared(&self, point: Vec<String>) -> PyResult<String> {
        let x = parse_point(&point).map_err(value_error)?;
        if x.dim() != self.inner.rank() {
            return Err(value_error("point has the wrong dimension"));
        }
        Ok(self.inner.norm_squared(&x).to_string())
    }

    /// Exact minimum-norm point of the closed region of ideal `index`.
    fn region_min_point(&self, index: usize) -> PyResult<Certificate> {
        let ideals = enumerate_ideals(&self.inner);
        let ideal = ideals
            .get(index)
            .ok_or_else(|| value_error(format!("no ideal {index}")))?;
        let p = closure_polyhedron(&self.inner, &SignType::of_ideal(&self.inner, ideal));
        solve_region(&p, self.inner.gram_coweight()).map_err(value_error)
    }

    fn dump_json(&self) -> String {
        serde_json::to_string(&self.inner.dump()).expect("dump serializes")
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.spec().label())
    }
}

/// Minimizer of `x^T G x` over `{x : n . x (>=|<=) b}`.
/// Constraints are `(normal, ">=" or "<=", "p/q")`; returns
/// `(minimizer, active_set, multipliers)`.
#[pyfunction]
fn min_norm_point(
    dim: usize,
    constraints: Vec<(Vec<i64>, String, String)>,
    gram: Vec<Vec<String>>,
) -> PyResult<Certificate> {
    let p = parse_constraints(dim, constraints).map_err(value_error)?;
    let g = parse_gram(&gram).map_err(value_error)?;
    solve_region(&p, &g).map_err(value_error)
}

/// Canonical JSON report of the selected checks.
#[pyfunction]
#[pyo3(signature = (family, rank, seed = 1, trials = 8, checks = "theorem"))]
fn verify(py: Python<'_>, family: &str, rank: usize, seed: u64, trials: usize, checks: &str) -> PyResult<String> {
    let spec = RootSystemSpec::parse(family, rank).map_err(value_error)?;
    let checks = Checks::parse(checks).map_err(value_error)?;
    if trials == 0 {
        return Err(value_error("trials must be positive"));
    }
    let mut cfg = VerifyConfig {
        seed,
        ..VerifyConfig::default()
    };
    cfg.sampling.trials = trials;
    let report = py
        .detach(|| run_verification(spec, &cfg, checks))
        .map_err(value_error)?;
    Ok(report.canonical_json())
}

#[pymodule]
fn dynkin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(min_norm_point, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inputs() {
        let p = parse_constraints(
            2,
            vec![(vec![1, 0], ">=".into(), "1".into()), (vec![0, 1], "<=".into(), "1/2".into())],
        )
        .unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_constraints(2, vec![(vec![1], ">=".into(), "1".into())]).is_err());
        assert!(parse_constraints(1, vec![(vec![1], "=".into(), "1".into())]).is_err());
        assert!(parse_gram(&[vec!["1".into(), "x".into()]]).is_err());
        assert!(parse_point(&["1/0".into()]).is_err());
    }

    #[test]
    fn solves_a2_region() {
        let g = parse_gram(&[
            vec!["2/3".into(), "1/3".into()],
            vec!["1/3".into(), "2/3".into()],
        ])
        .unwrap();
        let p = parse_constraints(
            2,
            vec![(vec![1, 0], ">=".into(), "1".into()), (vec![0, 1], ">=".into(), "1".into())],
        )
        .unwrap();
        let (x, active, mult) = solve_region(&p, &g).unwrap();
        assert_eq!(x, vec!["1", "1"]);
        assert_eq!(active, vec![0, 1]);
        assert_eq!(mult.len(), 2);
        let empty = parse_constraints(
            1,
            vec![(vec![1], ">=".into(), "1".into()), (vec![1], "<=".into(), "0".into())],
        )
        .unwrap();
        assert_eq!(solve_region(&empty, &RatMat::identity(1)), Err("polyhedron is empty".into()));
    }
}
