//! JSON wire formats for reports and certificates. All rationals travel as
//! `"p/q"` strings; the only floating point is the clearly labeled `approx`
//! convenience block.

use crate::cases::{CaseOutcome, CaseReport, ExpectedMin, QuadraticForm, SymbolicPoint};
use crate::certificate::{CertificateCheck, Chain, ChainCertificate};
use crate::checks::{AntipodeWitness, ContainmentReport};
use crate::curve::ParamSample;
use crate::engine::{SlrBoundsResult, WitnessPair};
use crate::geometry::Point2;
use crate::lattice::OptimalOrdering;
use crate::rational::{approx_string, format_rational, parse_rational, Rational};
use serde::{Deserialize, Serialize};

fn point_json(p: &Point2) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub t1: String,
    pub t2: String,
    pub p1: [String; 2],
    pub p2: [String; 2],
}

impl WitnessJson {
    pub fn from_witness(w: &WitnessPair) -> Self {
        WitnessJson {
            t1: format_rational(&w.t1),
            t2: format_rational(&w.t2),
            p1: point_json(&w.p1),
            p2: point_json(&w.p2),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApproxJson {
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub curve: String,
    pub depth: u32,
    pub lower: String,
    pub upper: String,
    pub witness: WitnessJson,
    pub nodes_expanded: u64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<String>,
    pub approx: ApproxJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unix_time: Option<u64>,
}

impl BoundsReport {
    pub fn new(
        curve: String,
        result: &SlrBoundsResult,
        coverage_verified: bool,
        unix_time: Option<u64>,
    ) -> Self {
        BoundsReport {
            curve,
            depth: result.depth,
            lower: format_rational(&result.lower.value),
            upper: format_rational(&result.upper.value),
            witness: WitnessJson::from_witness(&result.witness),
            nodes_expanded: result.nodes_expanded,
            converged: result.converged,
            coverage: if coverage_verified {
                None
            } else {
                Some("unverified coverage".to_string())
            },
            approx: ApproxJson {
                lower: approx_string(&result.lower.value),
                upper: approx_string(&result.upper.value),
            },
            unix_time,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertNodeJson {
    pub t: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub nodes: Vec<CertNodeJson>,
    pub sigma: String,
    pub value: String,
}

impl CertificateJson {
    pub fn from_certificate(cert: &ChainCertificate) -> Self {
        CertificateJson {
            nodes: cert
                .chain
                .nodes()
                .iter()
                .map(|n| CertNodeJson {
                    t: format_rational(&n.t),
                    x: format_rational(&n.point.x),
                    y: format_rational(&n.point.y),
                })
                .collect(),
            sigma: format_rational(&cert.sum_of_squares),
            value: format_rational(&cert.value),
        }
    }

    /// Parses back into a chain plus the declared numbers.
    pub fn to_chain(&self) -> Result<(Chain, Rational, Rational), String> {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let t = parse_rational(&n.t).map_err(|e| e.to_string())?;
            let x = parse_rational(&n.x).map_err(|e| e.to_string())?;
            let y = parse_rational(&n.y).map_err(|e| e.to_string())?;
            nodes.push(ParamSample::new(t, Point2::new(x, y)));
        }
        let chain = Chain::new(nodes).map_err(|e| e.to_string())?;
        let sigma = parse_rational(&self.sigma).map_err(|e| e.to_string())?;
        let value = parse_rational(&self.value).map_err(|e| e.to_string())?;
        Ok((chain, sigma, value))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertVerifyReport {
    pub pass: bool,
    pub sigma_matches: bool,
    pub value_matches: bool,
    pub node_failures: Vec<usize>,
}

impl CertVerifyReport {
    pub fn from_check(check: &CertificateCheck) -> Self {
        CertVerifyReport {
            pass: check.pass(),
            sigma_matches: check.sigma_matches,
            value_matches: check.value_matches,
            node_failures: check.node_failures.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExprJson {
    pub c0: String,
    pub cx: String,
    pub cy: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolicPointJson {
    pub x: ExprJson,
    pub y: ExprJson,
}

fn symbolic_point_json(p: &SymbolicPoint) -> SymbolicPointJson {
    let expr = |e: &crate::cases::AffineExpr| ExprJson {
        c0: format_rational(&e.c0),
        cx: format_rational(&e.cx),
        cy: format_rational(&e.cy),
    };
    SymbolicPointJson { x: expr(&p.x), y: expr(&p.y) }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    pub xx: String,
    pub xy: String,
    pub yy: String,
    pub x: String,
    pub y: String,
    pub c: String,
}

fn form_json(f: &QuadraticForm) -> FormJson {
    FormJson {
        xx: format_rational(&f.qxx),
        xy: format_rational(&f.qxy),
        yy: format_rational(&f.qyy),
        x: format_rational(&f.qx),
        y: format_rational(&f.qy),
        c: format_rational(&f.q0),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseJson {
    pub name: String,
    pub chain: Vec<SymbolicPointJson>,
    pub derived_form: FormJson,
    pub computed_argmin: [String; 2],
    pub computed_min: String,
    pub expected_kind: String,
    pub expected_min: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_argmin: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_matches_printed: Option<bool>,
    pub label_normalized: bool,
    pub pass: bool,
}

pub fn case_json(outcome: &CaseOutcome) -> CaseJson {
    let (expected_kind, expected_min, expected_argmin) = match &outcome.expected {
        ExpectedMin::Exact { min, argmin } => (
            "exact".to_string(),
            format_rational(min),
            Some([format_rational(&argmin.0), format_rational(&argmin.1)]),
        ),
        ExpectedMin::AtLeast { bound } => ("at_least".to_string(), format_rational(bound), None),
    };
    CaseJson {
        name: outcome.name.clone(),
        chain: outcome.chain.iter().map(symbolic_point_json).collect(),
        derived_form: form_json(&outcome.derived_form),
        computed_argmin: [
            format_rational(&outcome.computed_argmin.0),
            format_rational(&outcome.computed_argmin.1),
        ],
        computed_min: format_rational(&outcome.computed_min),
        expected_kind,
        expected_min,
        expected_argmin,
        form_matches_printed: outcome.form_matches_printed,
        label_normalized: outcome.label_normalized,
        pass: outcome.pass,
    }
}

/// The cases report is a bare array, one object per case.
pub fn cases_report_json(report: &CaseReport) -> Vec<CaseJson> {
    report.outcomes.iter().map(case_json).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeReport {
    pub m: u32,
    pub n: u32,
    pub optimum: String,
    pub ordering: Vec<[u32; 2]>,
    pub proven: bool,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unix_time: Option<u64>,
}

impl LatticeReport {
    pub fn new(result: &OptimalOrdering, normalized: Option<Rational>, unix_time: Option<u64>) -> Self {
        LatticeReport {
            m: result.ordering.rows(),
            n: result.ordering.cols(),
            optimum: format_rational(&result.best.value),
            ordering: result.ordering.order().iter().map(|&(r, c)| [r, c]).collect(),
            proven: result.proven,
            nodes: result.nodes,
            normalized: normalized.as_ref().map(format_rational),
            unix_time,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AntipodeReport {
    pub boundary_point: [String; 2],
    pub antipode: [String; 2],
    pub e_first: String,
    pub f_time: String,
    pub e_last: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unix_time: Option<u64>,
}

impl AntipodeReport {
    pub fn new(w: &AntipodeWitness, unix_time: Option<u64>) -> Self {
        AntipodeReport {
            boundary_point: point_json(&w.boundary_point),
            antipode: point_json(&w.antipode),
            e_first: format_rational(&w.e_first),
            f_time: format_rational(&w.f_time),
            e_last: format_rational(&w.e_last),
            unix_time,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationJson {
    pub index: usize,
    pub t: String,
    pub point: [String; 2],
    pub dist_sq: String,
    pub radius_sq: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryTouchJson {
    pub index: usize,
    pub ratio_to_start: String,
    pub ratio_to_end: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircleReport {
    pub a_idx: usize,
    pub b_idx: usize,
    pub center: [String; 2],
    pub radius_sq: String,
    pub violations: Vec<ViolationJson>,
    pub boundary_touches: Vec<BoundaryTouchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unix_time: Option<u64>,
}

impl CircleReport {
    pub fn new(a_idx: usize, b_idx: usize, report: &ContainmentReport, unix_time: Option<u64>) -> Self {
        CircleReport {
            a_idx,
            b_idx,
            center: point_json(&report.disk.center),
            radius_sq: format_rational(&report.disk.radius_sq),
            violations: report
                .violations
                .iter()
                .map(|v| ViolationJson {
                    index: v.index,
                    t: format_rational(&v.t),
                    point: point_json(&v.point),
                    dist_sq: format_rational(&v.dist_sq),
                    radius_sq: format_rational(&v.radius_sq),
                })
                .collect(),
            boundary_touches: report
                .boundary_touches
                .iter()
                .map(|b| BoundaryTouchJson {
                    index: b.index,
                    ratio_to_start: format_rational(&b.ratio_to_start),
                    ratio_to_end: format_rational(&b.ratio_to_end),
                })
                .collect(),
            unix_time,
        }
    }
}
