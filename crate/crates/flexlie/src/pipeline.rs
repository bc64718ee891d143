//! Scenario files, the end-to-end pipeline, and reports.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::forms::{centralizer_factors, IsotypicalBlock};
use crate::group::GroupSpec;
use crate::oracle::{verify_system_with, Comparison, CLUSTER_TOL};
use crate::roots::RootSystem;
use crate::scalar::rat_to_string;
use crate::toledo::{propagate_constraints, Propagated, SurfaceData, ToledoDecoration};
use crate::verdict::{classify, FlexVerdict};
use crate::{GaussianRational, Signature};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `dim V` handed to the numeric oracle.
pub const ORACLE_CAP: usize = 12;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "yes")]
    pub oracle: bool,
    #[serde(default = "default_tol")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
}

fn yes() -> bool {
    true
}

fn default_tol() -> f64 {
    CLUSTER_TOL
}

impl Default for Options {
    fn default() -> Self {
        Options { oracle: true, tolerance: CLUSTER_TOL, seed: 0 }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub group: GroupSpec,
    pub surface: SurfaceData,
    #[serde(default)]
    pub blocks: Vec<IsotypicalBlock>,
    #[serde(default)]
    pub decorations: Vec<ToledoDecoration>,
    #[serde(default)]
    pub options: Options,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let sc: Scenario = toml::from_str(text).map_err(|e| FlexError::Parse(e.to_string().trim_end().to_string()))?;
        if sc.schema_version != SCHEMA_VERSION {
            return Err(FlexError::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                sc.schema_version
            )));
        }
        Ok(sc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FlexError::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            FlexError::Parse(m) => FlexError::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FactorReport {
    pub block: String,
    pub factor: String,
    pub center_dim: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub factors: Vec<FactorReport>,
    /// Dimension of `𝔠` (complex dimension for complex groups).
    pub center_dim: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RootReport {
    pub id: String,
    pub dim: usize,
    pub pure_imaginary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    /// Values on the basis of `𝔠`.
    pub values: Vec<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RootSystemReport {
    pub standard: Vec<RootReport>,
    pub adjoint: Vec<RootReport>,
    pub zero_dim: usize,
    pub audited_dim: usize,
    pub lie_dim: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub group_name: String,
    pub scenario: Scenario,
    pub centralizer: CentralizerReport,
    pub roots: RootSystemReport,
    pub decorations: Propagated,
    pub verdict: FlexVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Comparison>,
}

pub fn gaussian_string(z: &GaussianRational) -> String {
    use num_traits::{Signed, Zero};
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => rat_to_string(&z.re),
        (true, false) => format!("{}i", rat_to_string(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("{}{sign}{}i", rat_to_string(&z.re), rat_to_string(&z.im.abs()))
        }
    }
}

pub fn root_system_report(sys: &RootSystem) -> RootSystemReport {
    let values = |c: &[GaussianRational]| c.iter().map(gaussian_string).collect();
    RootSystemReport {
        standard: sys
            .standard
            .iter()
            .map(|r| RootReport {
                id: r.id.clone(),
                dim: r.dim,
                pure_imaginary: r.pure_imaginary,
                signature: r.signature,
                values: values(&r.coords),
            })
            .collect(),
        adjoint: sys
            .adjoint
            .iter()
            .map(|r| RootReport {
                id: r.id.clone(),
                dim: r.dim,
                pure_imaginary: r.pure_imaginary,
                signature: r.signature,
                values: values(&r.coords),
            })
            .collect(),
        zero_dim: sys.zero_dim,
        audited_dim: sys.audited_dim(),
        lie_dim: sys.spec.complex_lie_dim(),
    }
}

fn centralizer_report(spec: &GroupSpec, blocks: &[IsotypicalBlock], sys: &RootSystem) -> Result<CentralizerReport> {
    let factors = match spec.form_kind() {
        Some(kind) => centralizer_factors(kind, blocks)?
            .into_iter()
            .zip(blocks)
            .map(|(f, b)| FactorReport { block: b.class.id.clone(), factor: f.name(), center_dim: f.center_dim() })
            .collect(),
        None => blocks
            .iter()
            .map(|b| FactorReport {
                block: b.class.id.clone(),
                factor: format!("GL({})", b.multiplicity),
                center_dim: 1,
            })
            .collect(),
    };
    Ok(CentralizerReport { factors, center_dim: sys.dim_c() })
}

/// Runs the whole pipeline. `oracle` can veto the scenario's own setting.
pub fn run_scenario(sc: &Scenario, oracle: bool) -> Result<Report> {
    sc.group.validate()?;
    sc.surface.validate()?;
    let sys = RootSystem::build(&sc.group, &sc.blocks)?;
    let centralizer = centralizer_report(&sc.group, &sc.blocks, &sys)?;
    let decorations = propagate_constraints(&sys, &sc.decorations, &sc.surface)?;
    let verdict = classify(&sys, &sc.surface, &decorations)?;
    let oracle = if oracle && sc.options.oracle && sc.group.v_dim() <= ORACLE_CAP {
        let cmp = verify_system_with(&sys, sc.options.seed, ORACLE_CAP, sc.options.tolerance)?;
        if !cmp.agrees() {
            return Err(FlexError::Internal(format!("oracle disagrees: {}", cmp.mismatches.join("; "))));
        }
        Some(cmp)
    } else {
        None
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        group_name: sc.group.name(),
        scenario: sc.clone(),
        centralizer,
        roots: root_system_report(&sys),
        decorations,
        verdict,
        oracle,
    })
}

pub mod exit {
    pub const VERDICT: i32 = 0;
    pub const INDETERMINATE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

pub fn exit_code_for_error(e: &FlexError) -> i32 {
    match e {
        FlexError::Internal(_) | FlexError::Oracle(_) => exit::INTERNAL,
        _ => exit::VALIDATION,
    }
}

pub fn exit_code(report: &Report) -> i32 {
    match report.verdict.outcome {
        crate::verdict::Outcome::Indeterminate { .. } => exit::INDETERMINATE,
        _ => exit::VERDICT,
    }
}

impl Report {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use crate::verdict::Outcome;
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.group_name);
        let _ = writeln!(s, "genus: {}", self.scenario.surface.genus);
        let factors: Vec<_> = self.centralizer.factors.iter().map(|f| format!("{} ({})", f.factor, f.block)).collect();
        let _ = writeln!(s, "centralizer: {}", factors.join(" × "));
        let _ = writeln!(s, "dim c: {}", self.centralizer.center_dim);
        let _ = writeln!(s, "standard roots:");
        for r in &self.roots.standard {
            let sig = r.signature.map(|x| format!(" sig {x}")).unwrap_or_default();
            let _ = writeln!(s, "  {:<10} dim {}{sig} [{}]", r.id, r.dim, r.values.join(", "));
        }
        let _ = writeln!(s, "adjoint roots (Σ dim + zero = {} of {}):", self.roots.audited_dim, self.roots.lie_dim);
        for r in &self.roots.adjoint {
            let d = self.decorations.adjoint.iter().find(|d| d.target == r.id);
            let status = d.map(|d| {
                let why = d.justification.map(|t| format!(" [{t}]")).unwrap_or_default();
                let from = d.derived_from.as_ref().map(|x| format!(" <- {x}")).unwrap_or_default();
                format!(" {:?}{why}{from}", d.status)
            });
            let _ = writeln!(s, "  {:<14} dim {}{}", r.id, r.dim, status.unwrap_or_else(|| " N".into()));
        }
        let _ = writeln!(s, "balancedness: {:?}", self.verdict.certificate.verdict);
        let outcome = match &self.verdict.outcome {
            Outcome::Flexible => "flexible".to_string(),
            Outcome::RigidMaximal { descriptor } => format!("rigid maximal, image in {descriptor}"),
            Outcome::Indeterminate { unknown } => format!("indeterminate, missing: {}", unknown.join(", ")),
        };
        let _ = writeln!(s, "verdict: {outcome}");
        if let Some(sc) = self.verdict.short_circuit {
            let _ = writeln!(s, "rule: {sc:?}");
        }
        let _ = writeln!(s, "genus bound met: {}", self.verdict.genus_bound_ok);
        if let Some(c) = &self.oracle {
            let _ = writeln!(s, "oracle: {} root spaces matched", c.matched);
        }
        s
    }
}
