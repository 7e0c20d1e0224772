//! Run manifests: a JSON record of everything that influenced an emitted
//! dataset, written next to it. CSV bodies stay deterministic; the
//! timestamp lives only here.

use std::fs;
use std::path::{Path, PathBuf};

use picorr::{tolerances, SystemParams};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ManifestTolerances {
    pub eig_residual_rel: f64,
    pub eig_fallback_cond: f64,
    pub ode_local_tol: f64,
    pub steady_residual: f64,
    pub imag_residue: f64,
    pub reference_eig_abs: f64,
}

impl Default for ManifestTolerances {
    fn default() -> Self {
        Self {
            eig_residual_rel: tolerances::EIG_RESIDUAL_REL,
            eig_fallback_cond: tolerances::EIG_FALLBACK_COND,
            ode_local_tol: tolerances::ODE_LOCAL_TOL,
            steady_residual: tolerances::STEADY_RESIDUAL,
            imag_residue: tolerances::IMAG_RESIDUE,
            reference_eig_abs: tolerances::REFERENCE_EIG_ABS,
        }
    }
}

/// Which route produced the transfer matrices behind a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverPath {
    Eigendecomposition,
    ExpmFallback,
    None,
}

impl SolverPath {
    pub fn from_fallback_flag(uses_fallback: bool) -> Self {
        if uses_fallback {
            SolverPath::ExpmFallback
        } else {
            SolverPath::Eigendecomposition
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub created_utc: String,
    pub parameters: serde_json::Value,
    pub reduced_units: bool,
    pub eigensolver_path: SolverPath,
    pub tolerances: ManifestTolerances,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, params: Option<&SystemParams>, reduced_units: bool) -> Self {
        let parameters = match params {
            Some(p) => serde_json::json!({
                "gamma0": p.gamma0(),
                "rabi_re": p.rabi().re,
                "rabi_im": p.rabi().im,
                "detuning": p.detuning(),
                "vic": p.vic(),
            }),
            None => serde_json::Value::Null,
        };
        Self {
            tool: "picorr",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            created_utc: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            parameters,
            reduced_units,
            eigensolver_path: SolverPath::None,
            tolerances: ManifestTolerances::default(),
            outputs: Vec::new(),
        }
    }

    pub fn with_solver_path(mut self, path: SolverPath) -> Self {
        self.eigensolver_path = path;
        self
    }

    pub fn with_extra_parameters(mut self, extra: &[(&str, serde_json::Value)]) -> Self {
        if self.parameters.is_null() {
            self.parameters = serde_json::json!({});
        }
        if let Some(map) = self.parameters.as_object_mut() {
            for (k, v) in extra {
                map.insert((*k).to_string(), v.clone());
            }
        }
        self
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.file_name().unwrap().to_string_lossy().into_owned());
    }

    /// Writes `<stem>.manifest.json` next to the outputs and returns its
    /// path.
    pub fn write(&self, out_dir: &Path, stem: &str) -> anyhow::Result<PathBuf> {
        fs::create_dir_all(out_dir)?;
        let path = out_dir.join(format!("{stem}.manifest.json"));
        let body = serde_json::to_string_pretty(self)?;
        fs::write(&path, body + "\n")?;
        Ok(path)
    }
}
