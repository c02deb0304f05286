//! One function per subcommand. Each returns an [`Outcome`]; the binary wraps
//! it in a certificate and maps `passed` to the exit code.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sing_core::generators::{
    block_cubics, candidate_generators, det_pencil_generators, fano_minors, quartic_products, Origin,
    ProductEquations,
};
use sing_core::groebner::{buchberger, is_groebner_basis_with, squarefree_report, CheckOptions};
use sing_core::poly::PointValues;
use sing_core::repcheck::{cauchy_check, lr_coefficient, obstruction_check, Partition};
use sing_core::rng::stream_rng;
use sing_core::verify::{act, dit_random, sample_sing, vanish_check, CompressionSpec, DegreeSpan, GroupElement};
use sing_core::{Monomial, Poly, Rational, Ring, Tensor, VarOrder};
use thiserror::Error;

use crate::args::{
    ActArgs, AgainstArg, DitArgs, FamilyArg, GbCheckArgs, GenArgs, MemberArgs, PointArgs, RadicalArgs, RepCommand,
    RingArgs, SampleArgs, VanishArgs,
};

/// Invalid input of any kind; the binary exits with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sing_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub ring: Option<Ring>,
    pub passed: bool,
    pub result: Value,
}

const ACT_STREAM: u64 = 0x4143_5400;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("certificate values serialize")
}

pub fn make_ring(m: usize, n: usize, order: VarOrder) -> Result<Ring> {
    if m == 0 || n == 0 {
        return Err(CliError::Invalid("--m and --n must be at least 1".into()));
    }
    Ok(Ring::with_order(m, n, order))
}

fn ring_of(r: &RingArgs, order: VarOrder) -> Result<Ring> {
    make_ring(r.m, r.n, order)
}

fn require_n2(ring: Ring, what: &str) -> Result<()> {
    if ring.n() != 2 {
        return Err(CliError::Invalid(format!("{what} is only defined for n = 2")));
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Leading monomial without the `1/1*` coefficient.
pub fn monomial_text(ring: Ring, m: &Monomial) -> String {
    let s = Poly::monomial(ring, m.clone(), Rational::ONE).to_canonical_string();
    s.strip_prefix("1/1*").map(str::to_string).unwrap_or(s)
}

/// Polynomials of a family together with their provenance.
pub fn family_polys(
    ring: Ring,
    family: FamilyArg,
    limit: usize,
    sample_seed: Option<u64>,
) -> Result<(Vec<Poly>, Vec<Origin>, Option<String>)> {
    let split = |elements: Vec<sing_core::generators::Generator>| {
        elements.into_iter().map(|g| (g.poly, g.origin)).unzip::<_, _, Vec<_>, Vec<_>>()
    };
    let (polys, origins) = match family {
        FamilyArg::Pencil => split(det_pencil_generators(ring)?.elements),
        FamilyArg::BlockCubic => split(block_cubics(ring)?.elements),
        FamilyArg::QuarticProduct => split(quartic_products(ring)?.elements),
        FamilyArg::Candidate => split(candidate_generators(ring)?),
        FamilyArg::FlatteningMinor => split(fano_minors(ring)?.elements),
        FamilyArg::ProductEquation => {
            let pe = ProductEquations::new(ring)?;
            let picked: Vec<_> = match sample_seed {
                Some(seed) => pe.sample(seed, limit).collect(),
                None => pe.iter().take(limit).collect(),
            };
            let (p, o) = picked.iter().map(|e| (e.expand(), e.origin())).unzip();
            return Ok((p, o, pe.warning().map(str::to_string)));
        }
    };
    Ok((polys, origins, None))
}

fn default_family(ring: Ring) -> FamilyArg {
    if ring.n() == 2 {
        FamilyArg::Candidate
    } else {
        FamilyArg::FlatteningMinor
    }
}

pub fn gen(a: &GenArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(&a.ring, order)?;
    let (polys, origins, warning) = family_polys(ring, a.family, a.limit, a.sample_seed)?;
    let lines: Vec<String> = polys.iter().map(Poly::to_canonical_string).collect();
    let mut result = json!({
        "family": a.family,
        "count": polys.len(),
        "origins": origins,
        "warning": warning,
    });
    match &a.out {
        Some(path) => {
            let mut text = lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            write_file(path, &text)?;
            result["out"] = json!(path);
        }
        None => result["polys"] = json!(lines),
    }
    Ok(Outcome { ring: Some(ring), passed: true, result })
}

pub fn gb_check(a: &GbCheckArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(&a.ring, order)?;
    require_n2(ring, "the candidate basis")?;
    let basis: Vec<Poly> = candidate_generators(ring)?.into_iter().map(|g| g.poly).collect();
    let opts = CheckOptions { product_criterion: !a.no_product_criterion, ..CheckOptions::default() };
    let check = is_groebner_basis_with(&basis, opts);
    Ok(Outcome {
        ring: Some(ring),
        passed: check.is_basis,
        result: json!({
            "basis_size": basis.len(),
            "product_criterion": opts.product_criterion,
            "check": check,
        }),
    })
}

/// With `--strict`, every element must have a square-free leading monomial;
/// otherwise only the minimal generators of the leading ideal.
pub fn radical(a: &RadicalArgs, order: VarOrder) -> Result<Outcome> {
    let strict = a.strict;
    let ring = ring_of(&a.ring, order)?;
    require_n2(ring, "the candidate basis")?;
    let basis: Vec<Poly> = candidate_generators(ring)?.into_iter().map(|g| g.poly).collect();
    let report = squarefree_report(&basis);
    let every_element = report.redundant_nonsquarefree.is_empty() && report.offending.is_empty();
    let lm = |i: usize| basis[i].leading_monomial().expect("nonzero basis element");
    let nonsquarefree: Vec<Value> = report
        .redundant_nonsquarefree
        .iter()
        .chain(&report.offending)
        .map(|&i| {
            let divisor = basis
                .iter()
                .position(|g| {
                    let d = g.leading_monomial().expect("nonzero");
                    d.is_squarefree() && d.divides(lm(i)) && d != lm(i)
                })
                .map(|j| json!({ "index": j, "leading_monomial": monomial_text(ring, lm(j)) }));
            json!({
                "index": i,
                "leading_monomial": monomial_text(ring, lm(i)),
                "square_free_divisor": divisor,
            })
        })
        .collect();
    let passed = if strict { every_element } else { report.leading_ideal_squarefree };
    Ok(Outcome {
        ring: Some(ring),
        passed,
        result: json!({
            "basis_size": basis.len(),
            "strict": strict,
            "every_element_squarefree": every_element,
            "leading_ideal_squarefree": report.leading_ideal_squarefree,
            "report": report,
            "nonsquarefree_leading_monomials": nonsquarefree,
        }),
    })
}

pub fn nonmember(r: &RingArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(r, order)?;
    require_n2(ring, "block cubics")?;
    let quads = det_pencil_generators(ring)?.polys();
    let cubics = block_cubics(ring)?;
    let gb = buchberger(&quads)?;
    let span = DegreeSpan::new(ring, &quads, 3)?;
    let mut nonzero_remainders = 0;
    let mut nonmembers = 0;
    let mut disagreements = Vec::new();
    let mut witness = Value::Null;
    for (i, g) in cubics.elements.iter().enumerate() {
        let remainder = gb.normal_form(&g.poly);
        let member = span.contains(&g.poly)?;
        nonzero_remainders += usize::from(!remainder.is_zero());
        nonmembers += usize::from(!member);
        if remainder.is_zero() != member {
            disagreements.push(i);
        }
        if witness.is_null() && !remainder.is_zero() && !member {
            witness = json!({
                "index": i,
                "cubic": g.poly.to_canonical_string(),
                "origin": g.origin,
                "remainder": remainder.to_canonical_string(),
                "linear_solve": {
                    "degree": 3,
                    "rows": span.rows(),
                    "span_dimension": span.dimension(),
                    "in_span": false,
                },
            });
        }
    }
    Ok(Outcome {
        ring: Some(ring),
        passed: !witness.is_null() && disagreements.is_empty(),
        result: json!({
            "quadrics": quads.len(),
            "groebner_basis_size": gb.generators().len(),
            "cubics": cubics.len(),
            "nonzero_remainders": nonzero_remainders,
            "nonmembers": nonmembers,
            "oracle_disagreements": disagreements,
            "witness": witness,
        }),
    })
}

pub fn quartic_check(r: &RingArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(r, order)?;
    require_n2(ring, "quartic products")?;
    let mut gens = det_pencil_generators(ring)?.polys();
    gens.extend(block_cubics(ring)?.polys());
    let span = DegreeSpan::new(ring, &gens, 4)?;
    let quartics = quartic_products(ring)?;
    let mut members = 0;
    let mut first_failure = Value::Null;
    for (i, q) in quartics.elements.iter().enumerate() {
        if span.contains(&q.poly)? {
            members += 1;
        } else if first_failure.is_null() {
            first_failure = json!({ "index": i, "poly": q.poly.to_canonical_string(), "origin": q.origin });
        }
    }
    Ok(Outcome {
        ring: Some(ring),
        passed: members == quartics.len(),
        result: json!({
            "generators": gens.len(),
            "rows": span.rows(),
            "span_dimension": span.dimension(),
            "quartic_products": quartics.len(),
            "members": members,
            "first_failure": first_failure,
        }),
    })
}

pub fn sample(a: &SampleArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(&a.ring, order)?;
    let spec = if a.adapted {
        CompressionSpec::adapted(ring.n(), ring.m(), a.s, a.seed)
    } else {
        CompressionSpec::new(ring.n(), ring.m(), a.s, a.seed)
    };
    let t = sample_sing(&spec)?;
    if let Some(path) = &a.out {
        write_file(path, &format!("{}\n", t.to_json()))?;
    }
    Ok(Outcome {
        ring: Some(ring),
        passed: true,
        result: json!({ "s": a.s, "seed": a.seed, "adapted": a.adapted, "tensor": t }),
    })
}

/// The point to work on: read from `--tensor` or sampled from Sing.
pub fn load_point(p: &PointArgs, order: VarOrder) -> Result<(Ring, Tensor, Value)> {
    match &p.tensor {
        Some(path) => {
            let t = Tensor::from_json(&read_file(path)?)?;
            let ring = make_ring(t.m(), t.n(), order)?;
            Ok((ring, t, json!({ "file": path })))
        }
        None => {
            let m = p.m.ok_or_else(|| CliError::Invalid("either --tensor or --m is required".into()))?;
            let ring = make_ring(m, p.n, order)?;
            let t = sample_sing(&CompressionSpec::new(p.n, m, p.s, p.seed))?;
            Ok((ring, t, json!({ "sampled": { "s": p.s, "seed": p.seed } })))
        }
    }
}

fn vanish_value(ring: Ring, family: FamilyArg, t: &Tensor, products: usize, seed: u64) -> Result<Value> {
    if family == FamilyArg::ProductEquation {
        let pe = ProductEquations::new(ring)?;
        let values = PointValues::at(ring, t)?;
        let minor_value = |p: &Poly| values.evaluate(p);
        let mut first_failure = Value::Null;
        let mut checked = 0;
        for e in pe.sample(seed, products) {
            checked += 1;
            let v: Rational = e.factors.iter().map(|f| minor_value(f)).product();
            if !v.is_zero() {
                first_failure = json!({ "origin": e.origin(), "value": v });
                break;
            }
        }
        return Ok(json!({
            "vanishes": first_failure.is_null(),
            "checked": checked,
            "first_failure": first_failure,
            "warning": pe.warning(),
        }));
    }
    let (polys, _, _) = family_polys(ring, family, 0, None)?;
    Ok(to_value(&vanish_check(&polys, t)?))
}

pub fn vanish(a: &VanishArgs, order: VarOrder) -> Result<Outcome> {
    let (ring, t, source) = load_point(&a.point, order)?;
    let family = a.family.unwrap_or_else(|| default_family(ring));
    let report = vanish_value(ring, family, &t, a.products, a.point.seed)?;
    Ok(Outcome {
        ring: Some(ring),
        passed: report["vanishes"] == json!(true),
        result: json!({ "family": family, "point": source, "tensor": t, "report": report }),
    })
}

pub fn act_cmd(a: &ActArgs, order: VarOrder) -> Result<Outcome> {
    let (ring, t, source) = load_point(&a.point, order)?;
    let family = a.family.unwrap_or_else(|| default_family(ring));
    let (polys, _, _) = family_polys(ring, family, 0, None)?;
    let g = GroupElement::random(&mut stream_rng(a.group_seed, ACT_STREAM), ring.m(), ring.n());
    let moved = act(&g, &t)?;
    let before = vanish_check(&polys, &t)?;
    let after = vanish_check(&polys, &moved)?;
    Ok(Outcome {
        ring: Some(ring),
        passed: before.vanishes == after.vanishes,
        result: json!({
            "convention": "B_j = sum_i U[i][j] * (V * A_i * W)",
            "family": family,
            "point": source,
            "group_element": g,
            "tensor": t,
            "acted_tensor": moved,
            "before": before,
            "after": after,
        }),
    })
}

pub fn member(a: &MemberArgs, order: VarOrder) -> Result<Outcome> {
    let ring = ring_of(&a.ring, order)?;
    let f = Poly::parse(ring, &a.poly)?;
    let degree = match (a.degree, f.degree()) {
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => return Err(CliError::Invalid("--degree is required for the zero polynomial".into())),
    };
    let against = match a.against {
        AgainstArg::Quadrics => det_pencil_generators(ring)?.polys(),
        AgainstArg::QuadricsCubics => {
            let mut g = det_pencil_generators(ring)?.polys();
            g.extend(block_cubics(ring)?.polys());
            g
        }
        AgainstArg::Candidate => candidate_generators(ring)?.into_iter().map(|g| g.poly).collect(),
    };
    let span = DegreeSpan::new(ring, &against, degree)?;
    let in_span = span.contains(&f)?;
    let mut result = json!({
        "poly": f.to_canonical_string(),
        "against": a.against,
        "degree": degree,
        "rows": span.rows(),
        "span_dimension": span.dimension(),
        "member": in_span,
    });
    let mut passed = in_span;
    if a.cross_check {
        let gb = buchberger(&against)?;
        let remainder = gb.normal_form(&f);
        passed &= remainder.is_zero() == in_span;
        result["cross_check"] = json!({
            "groebner_basis_size": gb.generators().len(),
            "remainder": remainder.to_canonical_string(),
            "agrees": remainder.is_zero() == in_span,
        });
    }
    Ok(Outcome { ring: Some(ring), passed, result })
}

pub fn dit(a: &DitArgs, order: VarOrder) -> Result<Outcome> {
    let (ring, t, source) = load_point(&a.point, order)?;
    let verdict = dit_random(&t, a.trials, a.trial_seed, a.bound)?;
    Ok(Outcome {
        ring: Some(ring),
        passed: verdict.is_singular(),
        result: json!({ "point": source, "tensor": t, "verdict": verdict }),
    })
}

fn partition(s: &str, flag: &str) -> Result<Partition> {
    s.parse().map_err(|_| CliError::Invalid(format!("--{flag}: `{s}` is not a partition")))
}

pub fn rep(c: &RepCommand) -> Result<Outcome> {
    match c {
        RepCommand::Cauchy { d, m, q } => {
            let r = cauchy_check(*d, *m, *q)?;
            Ok(Outcome { ring: None, passed: r.holds, result: to_value(&r) })
        }
        RepCommand::Lr { lambda, mu, nu } => {
            let (l, m, n) = (partition(lambda, "lambda")?, partition(mu, "mu")?, partition(nu, "nu")?);
            let c = lr_coefficient(&l, &m, &n);
            Ok(Outcome {
                ring: None,
                passed: true,
                result: json!({ "lambda": l, "mu": m, "nu": n, "coefficient": c }),
            })
        }
        RepCommand::Obstruct { n, dmax } => {
            let r = obstruction_check(*n, *dmax)?;
            Ok(Outcome { ring: None, passed: r.holds, result: to_value(&r) })
        }
    }
}
