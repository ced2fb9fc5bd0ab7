//! JSON documents exchanged with the command line and other tools.
//!
//! Rationals are written as `"p/q"` or `"p"`, polynomials in the text
//! grammar of [`HomogeneousPolynomial::parse`], and subspace coordinates in
//! graded-lex [`mono_basis`](crate::mono_basis) order.

use serde::{Deserialize, Serialize};

use crate::deformation::{KernelReport, TangentVectorF, TangentVectorW};
use crate::error::{Error, Result};
use crate::ideal::{GeneratorTuple, HilbertProfile};
use crate::inverse::AssociatedForm;
use crate::linalg::Subspace;
use crate::monomial::basis_dim;
use crate::poly::HomogeneousPolynomial;
use crate::reconstruct::FiberResult;
use crate::scalar::Scalar;
use crate::st::StReport;

pub const ORDER: &str = "grlex";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub n: usize,
    pub degree: u32,
    pub order: String,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

impl SubspaceDoc {
    pub fn from_subspace<T: Scalar>(space: &Subspace<T>) -> Self {
        SubspaceDoc {
            n: space.n(),
            degree: space.degree(),
            order: ORDER.into(),
            dim: space.dim(),
            basis: space
                .basis()
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    /// Parses and canonicalizes. The stored `dim` must equal the dimension
    /// of the span of the listed vectors.
    pub fn to_subspace<T: Scalar>(&self) -> Result<Subspace<T>> {
        if self.order != ORDER {
            return Err(Error::InvalidInput(format!(
                "unsupported monomial order '{}', expected '{ORDER}'",
                self.order
            )));
        }
        let width = basis_dim(self.n, self.degree);
        let rows = self
            .basis
            .iter()
            .map(|row| {
                if row.len() != width {
                    return Err(Error::InvalidInput(format!(
                        "basis vector of length {}, expected {width}",
                        row.len()
                    )));
                }
                row.iter().map(|s| parse_rational(s)).collect()
            })
            .collect::<Result<Vec<Vec<T>>>>()?;
        let space = Subspace::span(self.n, self.degree, rows)?;
        if space.dim() != self.dim {
            return Err(Error::InvalidInput(format!(
                "declared dim {} but the basis spans dimension {}",
                self.dim,
                space.dim()
            )));
        }
        Ok(space)
    }
}

pub fn parse_rational<T: Scalar>(text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("invalid rational '{text}'")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsDoc {
    pub n: usize,
    pub d: u32,
    pub gens: Vec<String>,
}

impl GeneratorsDoc {
    pub fn from_tuple<T: Scalar>(w: &GeneratorTuple<T>) -> Self {
        GeneratorsDoc {
            n: w.n(),
            d: w.d(),
            gens: w.gens().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_tuple<T: Scalar>(&self) -> Result<GeneratorTuple<T>> {
        let gens = self
            .gens
            .iter()
            .map(|g| HomogeneousPolynomial::parse(g, Some(self.n)))
            .collect::<Result<Vec<_>>>()?;
        let w = GeneratorTuple::new(gens)?;
        if w.d() != self.d {
            return Err(Error::DegreeMismatch {
                expected: self.d - 1,
                found: w.d() - 1,
            });
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedFormDoc {
    pub n: usize,
    pub d: u32,
    #[serde(rename = "T")]
    pub socle_degree: u32,
    pub form: String,
}

impl AssociatedFormDoc {
    pub fn from_form<T: Scalar>(b: &AssociatedForm<T>) -> Self {
        AssociatedFormDoc {
            n: b.n(),
            d: b.d(),
            socle_degree: b.socle_degree(),
            form: b.form().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDoc {
    pub s: usize,
    pub basis: Vec<String>,
}

impl FiberDoc {
    pub fn from_fiber<T: Scalar>(fiber: &FiberResult<T>) -> Self {
        FiberDoc {
            s: fiber.s(),
            basis: fiber.basis().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn polynomials<T: Scalar>(&self, n: usize) -> Result<Vec<HomogeneousPolynomial<T>>> {
        self.basis
            .iter()
            .map(|p| HomogeneousPolynomial::parse(p, Some(n)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StReportDoc {
    pub is_st: bool,
    pub s: usize,
    pub fiber: FiberDoc,
}

impl StReportDoc {
    pub fn from_report<T: Scalar>(report: &StReport<T>) -> Self {
        StReportDoc {
            is_st: report.is_st,
            s: report.s,
            fiber: FiberDoc::from_fiber(&report.fiber),
        }
    }
}

/// A kernel vector: a tuple of forms at `W`, a single form at `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelVectorDoc {
    Tuple(Vec<String>),
    Form(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReportDoc {
    pub k: u32,
    pub tangent_dim: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<KernelVectorDoc>,
}

impl KernelReportDoc {
    pub fn from_w_report<T: Scalar>(report: &KernelReport<TangentVectorW<T>>) -> Self {
        Self::build(report, |v| {
            KernelVectorDoc::Tuple(v.components().iter().map(ToString::to_string).collect())
        })
    }

    pub fn from_f_report<T: Scalar>(report: &KernelReport<TangentVectorF<T>>) -> Self {
        Self::build(report, |v| KernelVectorDoc::Form(v.form().to_string()))
    }

    fn build<V>(report: &KernelReport<V>, convert: impl Fn(&V) -> KernelVectorDoc) -> Self {
        KernelReportDoc {
            k: report.k,
            tangent_dim: report.tangent_dim,
            kernel_dim: report.kernel_dim,
            kernel_basis: report.kernel_basis.iter().map(convert).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub k: u32,
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDoc {
    pub n: usize,
    pub d: u32,
    #[serde(rename = "T")]
    pub socle_degree: u32,
    pub rows: Vec<HilbertRow>,
}

impl HilbertDoc {
    pub fn from_profile(profile: &HilbertProfile) -> Self {
        HilbertDoc {
            n: profile.n(),
            d: profile.d(),
            socle_degree: profile.socle_degree(),
            rows: (0..=profile.socle_degree() + 1)
                .map(|k| HilbertRow {
                    k,
                    a: profile.a(k),
                    b: profile.b(k),
                })
                .collect(),
        }
    }
}
