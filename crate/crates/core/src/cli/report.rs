use std::fmt::Write as _;

use serde::Serialize;

use crate::geometry::{KForm, PolyMap, VecField};
use crate::linearizer::{Diagnostics, Involutivity, LinearizationTrace, LinearizerError, Method, OmegaSource, Warning};

/// Machine-readable result of one command. Serializes deterministically and
/// carries no timings.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical: Option<ClassicalReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift_comparison: Option<DriftReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inversion: Option<InversionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<Comparison>,
    pub warnings: Vec<WarningReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    pub chain: Vec<Vec<String>>,
    pub rank: usize,
    pub rank_certified: bool,
    pub involutivity: String,
    pub accessible: bool,
    pub linearizable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IterationReport {
    pub index: usize,
    pub f: Vec<String>,
    pub g: Vec<String>,
    pub omega: Vec<String>,
    pub omega_source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_inverse: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub straightened: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub method: String,
    pub iterations: Vec<IterationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nu: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrating_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composed_map: Option<Vec<String>>,
    pub y: Option<String>,
    pub relative_degree: Option<usize>,
    pub output_map_determinant: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DriftReport {
    pub identical: bool,
    pub differing_components: Vec<usize>,
    /// Relative degree of the computed output under the alternative drift.
    pub alternative_relative_degree: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionReport {
    pub map: Vec<String>,
    pub codomain: Vec<String>,
    pub inverse: Option<Vec<String>>,
    pub jacobian_determinant: String,
    pub round_trip: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WarningReport {
    pub message: String,
    pub locus: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iteration: Option<usize>,
}

impl From<&Warning> for WarningReport {
    fn from(w: &Warning) -> Self {
        WarningReport {
            message: w.message.clone(),
            locus: w.locus.clone(),
        }
    }
}

pub(crate) fn field_strings(v: &VecField) -> Vec<String> {
    v.components().iter().map(|c| c.to_string()).collect()
}

pub(crate) fn form_strings(w: &KForm) -> Vec<String> {
    w.components()
        .map(|cs| cs.iter().map(|c| c.to_string()).collect())
        .unwrap_or_else(|_| vec![w.to_string()])
}

pub(crate) fn map_strings(m: &PolyMap) -> Vec<String> {
    m.components().iter().map(|c| c.to_string()).collect()
}

fn source_string(s: &OmegaSource) -> String {
    match s {
        OmegaSource::Hint(k) => format!("hint {k}"),
        OmegaSource::Coordinate(j) => format!("coordinate {}", j + 1),
        OmegaSource::Ansatz { degree } => format!("exact ansatz of degree {degree}"),
        OmegaSource::FinalCoordinate(j) => format!("final coordinate {}", j + 1),
        OmegaSource::MapHint => "map hint".into(),
    }
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::AlgebroidI => "algebroid1",
        Method::AlgebroidII => "algebroid2",
    }
}

impl ClassicalReport {
    pub fn new(d: &Diagnostics) -> Self {
        ClassicalReport {
            chain: d.chain.iter().map(field_strings).collect(),
            rank: d.rank,
            rank_certified: d.rank_certified,
            involutivity: match &d.involutivity {
                Involutivity::Involutive => "involutive".into(),
                Involutivity::NotInvolutive { i, j } => format!("not involutive (bracket of chain members {i} and {j})"),
                Involutivity::Sampled(true) => "involutive at sample points".into(),
                Involutivity::Sampled(false) => "not involutive at sample points".into(),
            },
            accessible: d.accessible(),
            linearizable: d.linearizable(),
        }
    }
}

impl RunReport {
    pub fn new(t: &LinearizationTrace) -> Self {
        RunReport {
            method: method_name(t.method).into(),
            iterations: t
                .iterations
                .iter()
                .map(|r| IterationReport {
                    index: r.index,
                    f: field_strings(&r.f),
                    g: field_strings(&r.g),
                    omega: form_strings(&r.omega),
                    omega_source: source_string(&r.omega_source),
                    map: r.map.as_ref().map(map_strings),
                    map_inverse: r.map.as_ref().and_then(|m| m.inverse()).map(map_strings),
                    straightened: r.straightened,
                })
                .collect(),
            nu: t.nu.iter().map(form_strings).collect(),
            integrating_factor: t.integrating_factor.as_ref().map(|c| c.to_string()),
            composed_map: t.composed_map.as_ref().map(map_strings),
            y: t.y.as_ref().map(|y| y.to_string()),
            relative_degree: None,
            output_map_determinant: None,
        }
    }
}

impl ErrorReport {
    pub fn new(e: &LinearizerError) -> Self {
        let (kind, iteration) = match e {
            LinearizerError::Geometry(_) => ("geometry", None),
            LinearizerError::Algebroid(_) => ("algebroid", None),
            LinearizerError::Precondition(_) => ("precondition", None),
            LinearizerError::HeuristicExhausted { iteration, .. } => ("heuristic_exhausted", Some(*iteration)),
            LinearizerError::DegenerateIteration { iteration } => ("degenerate_iteration", Some(*iteration)),
            LinearizerError::NotExact { .. } => ("not_exact", None),
            LinearizerError::NonPolynomialIntegrand(_) => ("non_polynomial_integrand", None),
            LinearizerError::AmbiguousOutput => ("ambiguous_output", None),
            LinearizerError::InvariantViolated(_) => ("invariant_violated", None),
        };
        ErrorReport {
            kind: kind.into(),
            message: e.to_string(),
            iteration,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        ErrorReport {
            kind: "input".into(),
            message: message.into(),
            iteration: None,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |s: &mut String, label: &str, items: &[String]| {
            let _ = writeln!(s, "  {label}:");
            for (k, it) in items.iter().enumerate() {
                let _ = writeln!(s, "    [{}] {it}", k + 1);
            }
        };
        if let Some(c) = &self.classical {
            let _ = writeln!(s, "classical check");
            let _ = writeln!(
                s,
                "  rank {} of {}{}",
                c.rank,
                self.vars.len(),
                if c.rank_certified { " (certified)" } else { "" }
            );
            let _ = writeln!(s, "  {}", c.involutivity);
            let _ = writeln!(s, "  linearizable: {}", if c.linearizable { "yes" } else { "no" });
        }
        for run in &self.runs {
            let _ = writeln!(s, "method {}", run.method);
            for it in &run.iterations {
                let _ = writeln!(s, " iteration {} (1-form from {})", it.index, it.omega_source);
                list(&mut s, "f", &it.f);
                list(&mut s, "g", &it.g);
                list(&mut s, "omega", &it.omega);
                if let Some(m) = &it.map {
                    list(&mut s, "map", m);
                }
                if let Some(m) = &it.map_inverse {
                    list(&mut s, "inverse", m);
                }
                if let Some(k) = it.straightened {
                    let _ = writeln!(s, "  straightened onto coordinate {}", k + 1);
                }
            }
            for (i, nu) in run.nu.iter().enumerate() {
                list(&mut s, &format!("nu{i}"), nu);
            }
            if let Some(c) = &run.integrating_factor {
                let _ = writeln!(s, "  integrating factor 1/({c})");
            }
            if let Some(m) = &run.composed_map {
                list(&mut s, "composed map", m);
            }
            if let Some(y) = &run.y {
                let _ = writeln!(s, "  y = {y}");
            }
            if let Some(r) = run.relative_degree {
                let _ = writeln!(s, "  relative degree {r}");
            }
            if let Some(d) = &run.output_map_determinant {
                let _ = writeln!(s, "  det d(y, L_f y, ...) = {d}");
            }
        }
        if let Some(a) = self.outputs_agree {
            let _ = writeln!(s, "outputs agree: {}", if a { "yes" } else { "NO" });
        }
        if let Some(d) = &self.drift_comparison {
            if d.identical {
                let _ = writeln!(s, "alternative drift: identical");
            } else {
                let comps: Vec<String> = d.differing_components.iter().map(|k| (k + 1).to_string()).collect();
                let _ = writeln!(s, "alternative drift differs in components {}", comps.join(", "));
                if let Some(r) = d.alternative_relative_degree {
                    let _ = writeln!(s, "  relative degree of y under it: {r}");
                }
            }
        }
        if let Some(inv) = &self.inversion {
            list(&mut s, "map", &inv.map);
            if let Some(i) = &inv.inverse {
                list(&mut s, "inverse", i);
            }
            let _ = writeln!(s, "  jacobian determinant {}", inv.jacobian_determinant);
            let _ = writeln!(s, "  round trip {}", if inv.round_trip { "ok" } else { "FAILED" });
        }
        if !self.comparisons.is_empty() {
            let _ = writeln!(s, "comparison with expected values");
            for c in &self.comparisons {
                let _ = writeln!(s, "  [{}] {}", if c.matches { "ok" } else { "MISMATCH" }, c.quantity);
                if !c.matches {
                    let _ = writeln!(s, "      expected {}", c.expected);
                    let _ = writeln!(s, "      computed {}", c.computed);
                }
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {} [locus: {}]", w.message, w.locus);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error ({}): {}", e.kind, e.message);
        }
        s
    }
}
