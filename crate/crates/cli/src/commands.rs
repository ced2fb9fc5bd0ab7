use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use milnor::deformation::{dpsi_f_kernel, dpsi_w_kernel};
use milnor::ideal::{hilbert_profile, ideal_piece, is_smooth, jacobian_gens, jacobian_piece};
use milnor::inverse::associated_form;
use milnor::json::{
    AssociatedFormDoc, FiberDoc, GeneratorsDoc, HilbertDoc, KernelReportDoc, KernelVectorDoc,
    StReportDoc, SubspaceDoc,
};
use milnor::reconstruct::{fiber as fiber_of, reconstruct_poly, recover_generators};
use milnor::st::{random_ci_tuple, random_smooth, st_report};
use milnor::suite::{run_all, SuiteConfig};
use milnor::{Error, Generators, Poly, Rational, RationalSubspace};

use crate::{read_source, Failure, FormOrGens, Format, PolyInput};

type Output = Result<String, Failure>;

enum Source {
    Form(Poly),
    Gens(Generators),
}

impl Source {
    fn n_d(&self) -> (usize, u32) {
        match self {
            Source::Form(f) => (f.n(), f.degree()),
            Source::Gens(w) => (w.n(), w.d()),
        }
    }
}

fn parse_poly(text: &str, n: Option<usize>) -> Result<Poly, Failure> {
    let text = match text.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?
        }
        None => text.to_owned(),
    };
    Ok(Poly::parse(text.trim(), n)?)
}

/// Parses a form and checks that `(n, deg f)` is an admissible size.
fn read_form(input: &PolyInput) -> Result<Poly, Failure> {
    let f = parse_poly(&input.poly, input.n)?;
    hilbert_profile(f.n(), f.degree())?;
    Ok(f)
}

fn read_gens(path: &PathBuf) -> Result<Generators, Failure> {
    let doc: GeneratorsDoc = serde_json::from_str(&read_source(path)?)?;
    Ok(doc.to_tuple()?)
}

fn read_subspace(path: &PathBuf) -> Result<RationalSubspace, Failure> {
    let doc: SubspaceDoc = serde_json::from_str(&read_source(path)?)?;
    Ok(doc.to_subspace()?)
}

fn read_source_input(input: &FormOrGens, n: Option<usize>) -> Result<Source, Failure> {
    let source = match (&input.poly, &input.gens) {
        (Some(text), None) => Source::Form(parse_poly(text, n)?),
        (None, Some(path)) => Source::Gens(read_gens(path)?),
        _ => {
            return Err(Failure::Input(
                "give exactly one of --poly and --gens".into(),
            ))
        }
    };
    if let (Source::Gens(w), Some(n)) = (&source, n) {
        if w.n() != n {
            return Err(Failure::Input(format!(
                "--n {n} but the generators use n = {}",
                w.n()
            )));
        }
    }
    let (n, d) = source.n_d();
    hilbert_profile(n, d)?;
    Ok(source)
}

fn check_k(n: usize, d: u32, k: u32, low: u32, high: u32) -> Result<(), Failure> {
    if k < low || k > high {
        return Err(Error::OutOfRange {
            what: "k",
            value: i64::from(k),
            range: format!("[{low}, {high}] for n = {n}, d = {d}"),
        }
        .into());
    }
    Ok(())
}

fn to_json(value: &impl Serialize) -> Output {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn poly_lines(out: &mut String, polys: impl IntoIterator<Item = String>) {
    for p in polys {
        let _ = writeln!(out, "  {p}");
    }
}

pub fn hilbert(n: usize, d: u32, format: Format) -> Output {
    let profile = hilbert_profile(n, d)?;
    let doc = HilbertDoc::from_profile(&profile);
    if format == Format::Json {
        return to_json(&doc);
    }
    let mut out = format!(
        "n = {n}, d = {d}, T = {}\nk\ta(k)\tb(k)\n",
        doc.socle_degree
    );
    for row in &doc.rows {
        let mark = if row.k == doc.socle_degree { "\tT" } else { "" };
        let _ = writeln!(out, "{}\t{}\t{}{mark}", row.k, row.a, row.b);
    }
    Ok(out)
}

fn subspace_text(space: &RationalSubspace) -> String {
    let mut out = format!(
        "n = {}, k = {}, dim = {} of {}\n",
        space.n(),
        space.degree(),
        space.dim(),
        space.ambient_dim()
    );
    poly_lines(
        &mut out,
        space.basis_polys().iter().map(ToString::to_string),
    );
    out
}

pub fn piece(input: &FormOrGens, n: Option<usize>, k: u32, format: Format) -> Output {
    let source = read_source_input(input, n)?;
    let (n, d) = source.n_d();
    let top = hilbert_profile(n, d)?.socle_degree() + 1;
    check_k(n, d, k, 0, top)?;
    let space = match &source {
        Source::Form(f) => jacobian_piece(f, k)?,
        Source::Gens(w) => ideal_piece(w, k),
    };
    match format {
        Format::Json => to_json(&SubspaceDoc::from_subspace(&space)),
        Format::Text => Ok(subspace_text(&space)),
    }
}

fn fiber_output(fiber: &milnor::Fiber, format: Format) -> Output {
    let doc = FiberDoc::from_fiber(fiber);
    if format == Format::Json {
        return to_json(&doc);
    }
    let mut out = format!("s = {}\n", doc.s);
    poly_lines(&mut out, doc.basis);
    Ok(out)
}

fn piece_for_recovery(
    path: &PathBuf,
    d: u32,
    k: Option<u32>,
    n: Option<usize>,
) -> Result<RationalSubspace, Failure> {
    let piece = read_subspace(path)?;
    if n.is_some_and(|n| n != piece.n()) {
        return Err(Failure::Input(format!(
            "--n does not match the subspace (n = {})",
            piece.n()
        )));
    }
    if k.is_some_and(|k| k != piece.degree()) {
        return Err(Failure::Input(format!(
            "--k does not match the subspace (k = {})",
            piece.degree()
        )));
    }
    let top = hilbert_profile(piece.n(), d)?.socle_degree();
    check_k(piece.n(), d, piece.degree(), d - 1, top)?;
    Ok(piece)
}

pub fn reconstruct(
    path: &PathBuf,
    d: u32,
    k: Option<u32>,
    n: Option<usize>,
    format: Format,
) -> Output {
    let piece = piece_for_recovery(path, d, k, n)?;
    fiber_output(&reconstruct_poly(&piece, d)?, format)
}

pub fn recover(path: &PathBuf, d: u32, format: Format) -> Output {
    let piece = piece_for_recovery(path, d, None, None)?;
    let w = recover_generators(&piece, d)?;
    gens_output(&w, format)
}

fn gens_output(w: &Generators, format: Format) -> Output {
    let doc = GeneratorsDoc::from_tuple(w);
    if format == Format::Json {
        return to_json(&doc);
    }
    let mut out = format!("n = {}, d = {}\n", doc.n, doc.d);
    poly_lines(&mut out, doc.gens);
    Ok(out)
}

pub fn st(input: &PolyInput, format: Format) -> Output {
    let f = read_form(input)?;
    let report = st_report(&f)?;
    let doc = StReportDoc::from_report(&report);
    if format == Format::Json {
        return to_json(&doc);
    }
    let mut out = format!("is_st = {}\ns = {}\nfiber:\n", doc.is_st, doc.s);
    poly_lines(&mut out, doc.fiber.basis);
    Ok(out)
}

pub fn smooth(input: &PolyInput, format: Format) -> Output {
    let f = read_form(input)?;
    let smooth = is_smooth(&f);
    match format {
        Format::Json => to_json(&json!({ "smooth": smooth })),
        Format::Text => Ok(format!("{smooth}\n")),
    }
}

pub fn fiber(input: &FormOrGens, n: Option<usize>, format: Format) -> Output {
    let w = match read_source_input(input, n)? {
        Source::Form(f) => jacobian_gens(&f)?,
        Source::Gens(w) => w,
    };
    fiber_output(&fiber_of(&w), format)
}

pub fn inverse_system(path: &PathBuf, format: Format) -> Output {
    let w = read_gens(path)?;
    let form = associated_form(&w)?;
    let doc = AssociatedFormDoc::from_form(&form);
    match format {
        Format::Json => to_json(&doc),
        Format::Text => Ok(format!("T = {}\n{}\n", doc.socle_degree, doc.form)),
    }
}

pub fn tangent_kernel(input: &FormOrGens, n: Option<usize>, k: u32, format: Format) -> Output {
    let source = read_source_input(input, n)?;
    let (n, d) = source.n_d();
    let top = hilbert_profile(n, d)?.socle_degree();
    check_k(n, d, k, d - 1, top)?;
    let doc = match &source {
        Source::Form(f) => KernelReportDoc::from_f_report(&dpsi_f_kernel(f, k)?),
        Source::Gens(w) => KernelReportDoc::from_w_report(&dpsi_w_kernel(w, k)?),
    };
    if format == Format::Json {
        return to_json(&doc);
    }
    let mut out = format!(
        "k = {}\ntangent_dim = {}\nkernel_dim = {}\n",
        doc.k, doc.tangent_dim, doc.kernel_dim
    );
    poly_lines(
        &mut out,
        doc.kernel_basis.into_iter().map(|v| match v {
            KernelVectorDoc::Form(f) => f,
            KernelVectorDoc::Tuple(parts) => format!("({})", parts.join(", ")),
        }),
    );
    Ok(out)
}

pub fn random(
    n: usize,
    d: u32,
    seed: u64,
    non_st: bool,
    tuple: bool,
    coeff_bound: i64,
    format: Format,
) -> Output {
    if tuple {
        let w = random_ci_tuple::<Rational>(n, d, seed, coeff_bound)?;
        return gens_output(&w, format);
    }
    let f = random_smooth::<Rational>(n, d, seed, non_st, coeff_bound)?;
    match format {
        Format::Json => to_json(&json!({
            "n": n,
            "d": d,
            "seed": seed,
            "poly": f.to_string(),
        })),
        Format::Text => Ok(format!("{f}\n")),
    }
}

pub fn suite(
    case: Option<(usize, u32)>,
    seed: Option<u64>,
    coeff_bound: Option<i64>,
    budget: Option<u64>,
    format: Format,
) -> Output {
    let mut cfg = SuiteConfig::default();
    if let Some((n, d)) = case {
        hilbert_profile(n, d)?;
        cfg.cases = vec![(n, d)];
    }
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(bound) = coeff_bound {
        if bound < 0 {
            return Err(Failure::Input("--coeff-bound must be nonnegative".into()));
        }
        cfg.coeff_bound = bound;
    }
    let outcomes = run_all(&cfg, budget.map(Duration::from_secs))?;
    let failed = outcomes.iter().any(|o| !o.skipped && !o.passed());
    let text = match format {
        Format::Json => to_json(
            &outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "name": o.name,
                        "status": if o.skipped { "skip" } else if o.passed() { "pass" } else { "fail" },
                        "checks": o.checks,
                        "failures": o.failures,
                        "elapsed_ms": o.elapsed.as_millis() as u64,
                    })
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            let mut out = String::new();
            for o in &outcomes {
                let _ = writeln!(out, "{o}");
            }
            out
        }
    };
    if failed {
        Err(Failure::Suite(text))
    } else {
        Ok(text)
    }
}
