//! Python bindings: the piecewise map type and the main operations of the
//! toolkit. Exact values cross the boundary as strings in the same text
//! formats the CLI uses.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ordchain::classify::{classify, member_of, Classification, Family, Overlap};
use ordchain::constructions::{
    factor_bounded_chain, factor_embedding, factor_open_chain, gamma_for, obstruction_certificate,
    sandwich as sandwich_impl, single_generator_test, verify_factorization, FactorLabel,
};
use ordchain::ext::ExtRat;
use ordchain::finite::{
    enumerate_family_capped, relative_rank, single_relative_generators_capped, FiniteFamily,
    DEFAULT_CAP,
};
use ordchain::interval::Interval;
use ordchain::piecewise::PiecewiseMap;
use ordchain::subset::SubsetModel;
use ordchain::text::{parse_map, serialize_certificate, serialize_map};

fn err(e: ordchain::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_interval(s: &str) -> PyResult<Interval> {
    s.parse().map_err(err)
}

fn parse_subset(s: &str) -> PyResult<SubsetModel> {
    s.parse().map_err(err)
}

fn parse_extrat(s: &str) -> PyResult<ExtRat> {
    s.parse().map_err(err)
}

fn parse_family(name: &str) -> PyResult<FiniteFamily> {
    match name.to_ascii_uppercase().as_str() {
        "T" => Ok(FiniteFamily::All),
        "O" => Ok(FiniteFamily::OrderPreserving),
        "OP" => Ok(FiniteFamily::OrientationPreserving),
        other => Err(PyValueError::new_err(format!("unknown family `{other}`"))),
    }
}

/// A piecewise constant-or-Möbius transformation of a chain.
#[pyclass(frozen, from_py_object, name = "Map")]
#[derive(Clone)]
struct PyMap {
    inner: PiecewiseMap,
}

#[pymethods]
impl PyMap {
    /// Parses a map block in the text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: parse_map(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity(chain: &str) -> PyResult<Self> {
        Ok(PyMap {
            inner: PiecewiseMap::identity(parse_interval(chain)?),
        })
    }

    fn text(&self) -> String {
        serialize_map(&self.inner)
    }

    fn __str__(&self) -> String {
        self.text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Map(domain={}, pieces={})",
            self.inner.domain(),
            self.inner.pieces().len()
        )
    }

    fn __eq__(&self, other: &PyMap) -> bool {
        self.inner.equals(&other.inner)
    }

    fn domain(&self) -> String {
        self.inner.domain().to_string()
    }

    fn codomain(&self) -> String {
        self.inner.codomain().to_string()
    }

    /// Exact evaluation; input and output are rationals or ±inf as text.
    fn eval(&self, x: &str) -> PyResult<String> {
        let x = parse_extrat(x)?;
        Ok(self.inner.eval(&x).map_err(err)?.to_string())
    }

    /// Apply this map, then `other`.
    fn compose(&self, other: &PyMap) -> PyResult<PyMap> {
        Ok(PyMap {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    /// Image as a normalized union of intervals.
    fn image(&self) -> String {
        self.inner.image().to_string()
    }

    /// (verdict, ideal, overlap): verdict is "order-preserving",
    /// "orientation-proper", or "neither".
    fn classify(&self) -> (String, Option<String>, Option<String>) {
        match classify(&self.inner) {
            Classification::OrderPreserving => ("order-preserving".into(), None, None),
            Classification::Neither => ("neither".into(), None, None),
            Classification::OrientationProper { ideal, overlap } => {
                let ov = match overlap {
                    Overlap::Empty => "empty".to_string(),
                    Overlap::Singleton(c) => c.to_string(),
                };
                (
                    "orientation-proper".into(),
                    Some(ideal.to_string()),
                    Some(ov),
                )
            }
        }
    }

    /// Membership in O(X,Y) or OP(X,Y); family is "O" or "OP".
    fn is_member(&self, family: &str, y: &str) -> PyResult<bool> {
        let y = parse_subset(y)?;
        let fam = match family.to_ascii_uppercase().as_str() {
            "O" => Family::OrderPreserving,
            "OP" => Family::OrientationPreserving,
            other => return Err(PyValueError::new_err(format!("unknown family `{other}`"))),
        };
        Ok(member_of(&self.inner, fam, &y))
    }

    /// The conjugate x ↦ −f(−x) on the mirrored chain.
    fn reflect(&self) -> PyMap {
        PyMap {
            inner: self.inner.reflect(),
        }
    }
}

/// The wrap generator of a chain; params as in the CLI gamma command.
#[pyfunction]
#[pyo3(signature = (chain, params=vec![]))]
fn gamma(chain: &str, params: Vec<String>) -> PyResult<PyMap> {
    let chain = parse_interval(chain)?;
    let params: Vec<ExtRat> = params
        .iter()
        .map(|s| parse_extrat(s))
        .collect::<PyResult<_>>()?;
    Ok(PyMap {
        inner: gamma_for(&chain, &params).map_err(err)?,
    })
}

/// The deterministic order-isomorphism between two intervals.
#[pyfunction]
fn canonical_iso(i: &str, j: &str) -> PyResult<PyMap> {
    let i = parse_interval(i)?;
    let j = parse_interval(j)?;
    Ok(PyMap {
        inner: ordchain::iso::canonical_iso(&i, &j).map_err(err)?,
    })
}

/// (holds, explanation) of the single-relative-generator criterion.
#[pyfunction]
fn is_single_generator(map: &PyMap) -> PyResult<(bool, String)> {
    let report = single_generator_test(&map.inner).map_err(err)?;
    Ok((report.holds, report.explanation))
}

/// The order-preserving pair (phi_hat, phi_tilde) with
/// phi_hat · f · phi_tilde equal to the wrap generator at (c, d).
#[pyfunction]
#[pyo3(signature = (map, c, d=None))]
fn sandwich(map: &PyMap, c: &str, d: Option<&str>) -> PyResult<(PyMap, PyMap)> {
    let c = parse_extrat(c)?;
    let d = d.map(parse_extrat).transpose()?;
    let (hat, tilde) = sandwich_impl(&map.inner, &c, d.as_ref()).map_err(err)?;
    Ok((PyMap { inner: hat }, PyMap { inner: tilde }))
}

/// Runs a factorization pipeline (1, 2, or 3) and returns
/// (verified, [(label, factor), ...]).
#[pyfunction]
#[pyo3(signature = (map, pipeline, y, ytilde=None))]
fn factor(
    map: &PyMap,
    pipeline: u8,
    y: &str,
    ytilde: Option<&str>,
) -> PyResult<(bool, Vec<(String, PyMap)>)> {
    let y = parse_subset(y)?;
    let fac = match pipeline {
        1 => factor_open_chain(&map.inner, &y).map_err(err)?,
        2 => factor_bounded_chain(&map.inner, &y).map_err(err)?,
        3 => {
            let yt = parse_interval(ytilde.ok_or_else(|| {
                PyValueError::new_err("pipeline 3 needs the embedded copy ytilde")
            })?)?;
            factor_embedding(&map.inner, &y, &yt).map_err(err)?
        }
        other => return Err(PyValueError::new_err(format!("unknown pipeline {other}"))),
    };
    let verified = verify_factorization(&fac).ok;
    let factors = fac
        .factors
        .into_iter()
        .map(|(m, label)| {
            let tag = match label {
                FactorLabel::OrderPreserving => "order_preserving".to_string(),
                FactorLabel::Generator => "generator".to_string(),
            };
            (tag, PyMap { inner: m })
        })
        .collect();
    Ok((verified, factors))
}

/// The obstruction certificate for a finite generator set, serialized.
#[pyfunction]
#[pyo3(signature = (maps, y, chain="(-inf,+inf)"))]
fn obstruction(maps: Vec<PyMap>, y: &str, chain: &str) -> PyResult<String> {
    let y = parse_subset(y)?;
    let chain = maps
        .first()
        .map(|m| m.inner.domain().clone())
        .map_or_else(|| parse_interval(chain), Ok)?;
    let inner: Vec<PiecewiseMap> = maps.into_iter().map(|m| m.inner).collect();
    let cert = obstruction_certificate(&inner, &y, &chain).map_err(err)?;
    Ok(serialize_certificate(&cert))
}

fn y_or_full(n: usize, y: Option<Vec<u8>>) -> Vec<u8> {
    y.unwrap_or_else(|| (1..=n as u8).collect())
}

/// Maps of a finite-chain family as text vectors, e.g. "[1,2,2]".
#[pyfunction]
#[pyo3(signature = (n, family, y=None, cap=DEFAULT_CAP))]
fn finite_enumerate(
    n: usize,
    family: &str,
    y: Option<Vec<u8>>,
    cap: usize,
) -> PyResult<Vec<String>> {
    let fam = parse_family(family)?;
    let maps = enumerate_family_capped(n, fam, &y_or_full(n, y), cap).map_err(err)?;
    Ok(maps.iter().map(|m| m.to_string()).collect())
}

/// (r, witness) for the relative rank of `sup` over `sub` on {1..n}.
#[pyfunction]
#[pyo3(signature = (n, sup, sub, y=None, cap=DEFAULT_CAP))]
fn finite_relative_rank(
    n: usize,
    sup: &str,
    sub: &str,
    y: Option<Vec<u8>>,
    cap: usize,
) -> PyResult<(usize, Vec<String>)> {
    let y = y_or_full(n, y);
    let s = enumerate_family_capped(n, parse_family(sup)?, &y, cap).map_err(err)?;
    let a = if sub.eq_ignore_ascii_case("none") {
        Vec::new()
    } else {
        enumerate_family_capped(n, parse_family(sub)?, &y, cap).map_err(err)?
    };
    let (r, witness) = relative_rank(&s, &a).map_err(err)?;
    Ok((r, witness.iter().map(|w| w.to_string()).collect()))
}

/// All single relative generators of OP(n,Y) over O(n,Y).
#[pyfunction]
#[pyo3(signature = (n, y=None, cap=DEFAULT_CAP))]
fn finite_single_generators(n: usize, y: Option<Vec<u8>>, cap: usize) -> PyResult<Vec<String>> {
    let gens = single_relative_generators_capped(n, &y_or_full(n, y), cap).map_err(err)?;
    Ok(gens.iter().map(|g| g.to_string()).collect())
}

#[pymodule]
fn ordchain_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_iso, m)?)?;
    m.add_function(wrap_pyfunction!(is_single_generator, m)?)?;
    m.add_function(wrap_pyfunction!(sandwich, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(finite_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(finite_relative_rank, m)?)?;
    m.add_function(wrap_pyfunction!(finite_single_generators, m)?)?;
    Ok(())
}
