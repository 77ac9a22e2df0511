//! Loading models, elements and kernels from command-line arguments.

use std::fs;
use std::sync::Arc;

use num_bigint::BigInt;

use super::expr::{max_variable, parse_expression, Symbols};
use super::CliError;
use crate::coeffrings::{builtin_kp2, parse_model_file, sparse, tensor_power, Coords, KSurfaceModel, RingModel};
use crate::laurent::{scalar_coeff, CoeffRing, Integers, ModelRing, RatElem, RawElement, UnitCoeff};
use crate::shuffle::{default_plane_kernel, KernelSpec};

pub(crate) fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// `kp2` names the builtin `K(ℙ²)`; anything else is a model file.
pub(crate) fn load_ring(spec: &str) -> Result<(Arc<RingModel<BigInt>>, Option<KSurfaceModel<BigInt>>), CliError> {
    if spec == "kp2" {
        let k = builtin_kp2();
        return Ok((k.ring().clone(), Some(k)));
    }
    let parsed = parse_model_file::<BigInt>(&read(spec)?)?;
    Ok((parsed.ring, parsed.surface))
}

pub(crate) fn load_surface(spec: &str) -> Result<KSurfaceModel<BigInt>, CliError> {
    load_ring(spec)?.1.ok_or_else(|| CliError::Usage(format!("model `{spec}` has no surface data")))
}

/// Where an element comes from.
#[derive(Debug, Clone)]
pub(crate) enum Source {
    Expr(String),
    File(String),
}

impl Source {
    pub(crate) fn new(expr: Option<String>, element: Option<String>) -> Result<Self, CliError> {
        match (expr, element) {
            (Some(e), None) => Ok(Source::Expr(e)),
            (None, Some(f)) => Ok(Source::File(f)),
            _ => Err(CliError::Usage("give exactly one of --expr and --element".into())),
        }
    }
}

fn dense_coeff(rank: usize) -> impl Fn(&[BigInt]) -> Option<Coords<BigInt>> {
    move |c: &[BigInt]| (c.len() == rank).then(|| sparse::from_dense(c))
}

/// A torus-mode element in `n` variables (`n` inferred when absent).
pub(crate) fn torus_element(src: &Source, n: Option<usize>) -> Result<RatElem<Integers<BigInt>>, CliError> {
    match src {
        Source::Expr(text) => {
            let n = n.unwrap_or_else(|| max_variable(text));
            Ok(parse_expression(text, &Symbols::torus(n))?)
        }
        Source::File(path) => {
            let raw = RawElement::parse(&read(path)?)?;
            let n = n.or(raw.n_vars()).unwrap_or(0);
            Ok(raw.build(Integers::new(), n, 2, scalar_coeff::<BigInt>)?)
        }
    }
}

/// A surface-mode element whose coefficient ring is `base^{⊗slots(n)}`,
/// where `n` is the variable count.
pub(crate) fn surface_element(
    src: &Source,
    n: Option<usize>,
    base: &Arc<RingModel<BigInt>>,
    slots: impl Fn(usize) -> Result<usize, CliError>,
) -> Result<RatElem<ModelRing<BigInt>>, CliError> {
    match src {
        Source::Expr(text) => {
            let n = n.unwrap_or_else(|| max_variable(text));
            let ring = tensor_power(base, slots(n)?)?;
            Ok(parse_expression(text, &Symbols::surface(ring, n))?)
        }
        Source::File(path) => {
            let raw = RawElement::parse(&read(path)?)?;
            let n = n.or(raw.n_vars()).unwrap_or(0);
            let ring = tensor_power(base, slots(n)?)?;
            let rank = ring.rank();
            Ok(raw.build(ring, n, 0, dense_coeff(rank))?)
        }
    }
}

/// Coefficient length and variable count of a non-empty element file.
pub(crate) fn file_shape(src: &Source) -> Result<Option<(usize, usize)>, CliError> {
    match src {
        Source::File(path) => {
            let raw = RawElement::parse(&read(path)?)?;
            Ok(raw.coeff_len().zip(raw.n_vars()))
        }
        Source::Expr(_) => Ok(None),
    }
}

/// Kernel files hold lines `zeta num: c...` and `zeta den: c...`, one unit
/// per line. In torus mode `c` is `coeff q1exp q2exp`; in surface mode it is
/// a coordinate vector in the tensor square.
pub(crate) fn parse_kernel<R: CoeffRing>(text: &str, ring2: &R, n_params: usize) -> Result<KernelSpec<R::Elem>, CliError> {
    let mut k = KernelSpec::trivial();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |m: &str| CliError::Usage(format!("kernel line {ln}: {m}"));
        let (head, tail) = body.split_once(':').ok_or_else(|| err("expected `zeta num:` or `zeta den:`"))?;
        let numerator = match head.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["zeta", "num"] => true,
            ["zeta", "den"] => false,
            _ => return Err(err("expected `zeta num:` or `zeta den:`")),
        };
        let vals: Vec<BigInt> = tail
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(&format!("bad integer `{t}`"))))
            .collect::<Result<_, _>>()?;
        let unit = if n_params > 0 {
            if vals.len() != 1 + n_params {
                return Err(err(&format!("expected a coefficient and {n_params} exponents")));
            }
            let c = <R::Scalar as crate::scalar::Scalar>::from_bigint(&vals[0]).ok_or_else(|| err("coefficient out of range"))?;
            let q = vals[1..]
                .iter()
                .map(|v| i32::try_from(v).map_err(|_| err("exponent out of range")))
                .collect::<Result<Vec<_>, _>>()?;
            UnitCoeff::new(ring2, ring2.from_scalar(c), q)
        } else {
            if vals.len() != ring2.rank() {
                return Err(err(&format!("expected {} coordinates", ring2.rank())));
            }
            let mut c = ring2.zero();
            for (i, v) in vals.iter().enumerate() {
                let v = <R::Scalar as crate::scalar::Scalar>::from_bigint(v).ok_or_else(|| err("coordinate out of range"))?;
                c = ring2.add(&c, &ring2.scale(&ring2.basis_elem(i), &v));
            }
            UnitCoeff::new(ring2, c, Vec::new())
        }
        .map_err(|_| err("coefficient is not a unit"))?;
        if numerator {
            k.numerator.push(unit);
        } else {
            k.denominator.push(unit);
        }
    }
    Ok(k)
}

/// `plane` and `trivial` are builtin; anything else is a kernel file.
pub(crate) fn torus_kernel(spec: Option<&str>) -> Result<KernelSpec<BigInt>, CliError> {
    match spec.unwrap_or("plane") {
        "plane" => Ok(default_plane_kernel()),
        "trivial" => Ok(KernelSpec::trivial()),
        path => parse_kernel(&read(path)?, &Integers::<BigInt>::new(), 2),
    }
}

/// `trivial` is builtin and the default; anything else is a kernel file.
pub(crate) fn surface_kernel(
    spec: Option<&str>,
    base: &Arc<RingModel<BigInt>>,
) -> Result<KernelSpec<Coords<BigInt>>, CliError> {
    match spec.unwrap_or("trivial") {
        "trivial" => Ok(KernelSpec::trivial()),
        "plane" => Err(CliError::Usage("the plane kernel needs torus mode (no --model)".into())),
        path => parse_kernel(&read(path)?, &tensor_power(base, 2)?, 0),
    }
}
