//! Python bindings. Rationals cross the boundary as `"p/q"` strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use circlequot::blockcore::{build_block, verify_block, Level, ModularBlock};
use circlequot::exactnum::rational;
use circlequot::exactnum::upsilon;
use circlequot::geometry::{Chart, ChartPoint};
use circlequot::modblocks::{build_modified_network, degenerate, standard_rep, Weighting};
use circlequot::modtiling::{FareyEdge, Pattern as CorePattern};
use circlequot::netbuild::{audit_network, dump_network, export_cloud, rho_apply, Format, Network as CoreNetwork, Projection, RepElement};
use circlequot::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Input(_) | Error::Dimension(_) | Error::Domain(_) | Error::OutOfRange(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string_pretty(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn chart(name: &str) -> PyResult<Chart> {
    match name {
        "plus" => Ok(Chart::Plus),
        "minus" => Ok(Chart::Minus),
        _ => Err(PyValueError::new_err(format!("chart must be 'plus' or 'minus', got {name:?}"))),
    }
}

fn point(c: &str, coords: &[String]) -> PyResult<ChartPoint> {
    let v = coords
        .iter()
        .map(|s| rational::parse(s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(ChartPoint::new(chart(c)?, v))
}

fn unpoint(p: &ChartPoint) -> (String, Vec<String>) {
    (p.chart.to_string(), p.coords.iter().map(rational::to_string).collect())
}

/// The model block of size `k`.
#[pyclass]
struct Block {
    inner: ModularBlock,
}

#[pymethods]
impl Block {
    #[new]
    fn new(k: usize) -> PyResult<Self> {
        Ok(Block {
            inner: build_block(k).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `[(label, [coords])]` in `A, B, C` order.
    fn vertices(&self) -> Vec<(String, Vec<String>)> {
        self.inner
            .vertex_table()
            .into_iter()
            .map(|(l, v)| (l.to_string(), v.iter().map(rational::to_string).collect()))
            .collect()
    }

    /// Certificate report as JSON; `level` is `"full"` or `"structural"`.
    #[pyo3(signature = (level=None))]
    fn verify(&self, level: Option<&str>) -> PyResult<String> {
        let level = match level {
            Some(s) => s.parse::<Level>().map_err(err)?,
            None => Level::default_for(self.inner.k()),
        };
        json(&verify_block(&self.inner, level).map_err(err)?)
    }

    fn dump(&self) -> PyResult<String> {
        json(&self.inner.dump())
    }

    /// `σ(p)` for a point of the block in the plus chart.
    fn sigma(&self, coords: Vec<String>) -> PyResult<Vec<String>> {
        let p = point("plus", &coords)?;
        Ok(unpoint(&self.inner.sigma_apply(&p).map_err(err)?).1)
    }
}

/// A modular pattern given by seed words in `L`, `R`.
#[pyclass]
struct Pattern {
    inner: CorePattern,
}

#[pymethods]
impl Pattern {
    #[new]
    fn new(seeds: Vec<String>) -> PyResult<Self> {
        Ok(Pattern {
            inner: CorePattern::new(&seeds).map_err(err)?,
        })
    }

    #[getter]
    fn seeds(&self) -> Vec<String> {
        self.inner.spec().seeds
    }

    fn k(&self) -> PyResult<usize> {
        self.inner.k().map_err(err)
    }

    /// `Γ_e` for an edge address such as `"1/0,0/1"`.
    fn gamma_e(&self, edge: &str) -> PyResult<Vec<String>> {
        let e = FareyEdge::parse(edge).map_err(err)?;
        Ok(self.inner.gamma_e(&e).map_err(err)?.iter().map(ToString::to_string).collect())
    }
}

/// A (modified) block network; `weighting` is the JSON weighting format.
#[pyclass]
struct Network {
    inner: CoreNetwork,
}

#[pymethods]
impl Network {
    #[new]
    #[pyo3(signature = (pattern, depth, weighting=None))]
    fn new(pattern: PyRef<'_, Pattern>, depth: usize, weighting: Option<&str>) -> PyResult<Self> {
        let f = match weighting {
            Some(w) => Weighting::from_json(w, &pattern.inner).map_err(err)?,
            None => Weighting::Unit,
        };
        Ok(Network {
            inner: build_modified_network(&pattern.inner, &f, depth).map_err(err)?,
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth
    }

    #[getter]
    fn blocks(&self) -> usize {
        self.inner.blocks.len()
    }

    /// `[(chart, [coords], [labels])]`.
    fn cloud(&self) -> Vec<(String, Vec<String>, Vec<String>)> {
        self.inner
            .limit_cloud()
            .iter()
            .map(|c| {
                let (ch, co) = unpoint(&c.point);
                (ch, co, c.labels.iter().map(ToString::to_string).collect())
            })
            .collect()
    }

    #[pyo3(signature = (format, projection=None))]
    fn export(&self, format: &str, projection: Option<&str>) -> PyResult<String> {
        let f: Format = format.parse().map_err(err)?;
        let p = match projection {
            Some(s) => s.parse().map_err(err)?,
            None => Projection::default_for(2 * self.inner.k()),
        };
        export_cloud(&self.inner.limit_cloud(), f, p).map_err(err)
    }

    /// `[(name, passed, detail)]`.
    fn audit(&self) -> PyResult<Vec<(String, bool, String)>> {
        Ok(audit_network(&self.inner)
            .map_err(err)?
            .into_iter()
            .map(|c| (c.name, c.pass, c.detail))
            .collect())
    }

    fn diameter_profile(&self) -> PyResult<Vec<String>> {
        Ok(self.inner.diameter_profile().map_err(err)?.iter().map(rational::to_string).collect())
    }

    /// `ρ(g)(p)` for a word in `S, T, t, L, l, R, r, W, w`.
    fn rho(&self, word: &str, chart: &str, coords: Vec<String>) -> PyResult<(String, Vec<String>)> {
        let g = RepElement::parse(word).map_err(err)?;
        let p = point(chart, &coords)?;
        Ok(unpoint(&rho_apply(&self.inner, &g.element, &p).map_err(err)?))
    }

    fn dump(&self) -> PyResult<String> {
        dump_network(&self.inner).map_err(err)
    }
}

/// Degeneration report as JSON.
#[pyfunction]
#[pyo3(signature = (pattern, sub_pattern, steps=6, depth=2))]
fn degenerate_report(pattern: Vec<String>, sub_pattern: Vec<String>, steps: usize, depth: usize) -> PyResult<String> {
    let p = CorePattern::new(&pattern).map_err(err)?;
    let s = CorePattern::new(&sub_pattern).map_err(err)?;
    json(&degenerate(&p, &s, &Weighting::Unit, steps, depth).map_err(err)?)
}

/// `ρ₀(word)` on the circle point `(x, 1 − x)` of a chart.
#[pyfunction]
fn standard_action(word: &str, chart: &str, x: &str) -> PyResult<(String, Vec<String>)> {
    let x = rational::parse(x).map_err(err)?;
    let y = rational::one() - &x;
    let p = ChartPoint::new(self::chart(chart)?, vec![x, y]);
    Ok(unpoint(&standard_rep(word, &p).map_err(err)?))
}

/// `det(Υ_b)`.
#[pyfunction]
fn upsilon_det(b: usize) -> PyResult<String> {
    Ok(rational::to_string(&upsilon(b).det().map_err(err)?))
}

#[pymodule]
fn circlequot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Block>()?;
    m.add_class::<Pattern>()?;
    m.add_class::<Network>()?;
    m.add_function(wrap_pyfunction!(degenerate_report, m)?)?;
    m.add_function(wrap_pyfunction!(standard_action, m)?)?;
    m.add_function(wrap_pyfunction!(upsilon_det, m)?)?;
    Ok(())
}
