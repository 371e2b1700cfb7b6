//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;
use suq2::cqalg::Spin;
use suq2::qarith::{rat_to_string, QPoint};
use suq2::spectral::{DiracSpec, LambdaFamily};

use crate::table::Format;

/// Environment variable naming the default output directory.
pub const OUTPUT_ENV: &str = "SUQ2_OUTPUT_DIR";

#[derive(Args, Clone, Debug, Default)]
pub struct GlobalOpts {
    /// Deformation parameter, e.g. `7/10`, `0.999` or `1`.
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Spin cap, e.g. `3/2`.
    #[arg(long, global = true)]
    pub lmax: Option<String>,
    #[arg(long, global = true)]
    pub p: Option<f64>,
    #[arg(long, global = true)]
    pub b: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Quadrature nodes per axis.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Eigenvalue family of the Dirac operator: `classical` or `q`.
    #[arg(long, global = true)]
    pub dirac: Option<String>,
    /// Directory for CSV/JSON artifacts.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Format of the table printed on stdout.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON file with any of the above keys; explicit flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Scalars may be written as JSON numbers or strings.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Text {
    Str(String),
    Num(serde_json::Number),
}

impl Text {
    fn into_string(self) -> String {
        match self {
            Text::Str(s) => s,
            Text::Num(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    q: Option<Text>,
    #[serde(alias = "l_max")]
    lmax: Option<Text>,
    p: Option<f64>,
    b: Option<f64>,
    beta: Option<f64>,
    seed: Option<u64>,
    trials: Option<usize>,
    grid: Option<usize>,
    dirac: Option<String>,
    output: Option<PathBuf>,
    format: Option<Format>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub point: QPoint,
    /// Canonical text of `q` for artifacts.
    pub q_text: String,
    pub lmax: Option<Spin>,
    pub p: Option<f64>,
    pub b: Option<f64>,
    pub beta: Option<f64>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub grid: Option<usize>,
    pub dirac: DiracSpec,
    pub output: PathBuf,
    pub format: Format,
}

impl RunConfig {
    pub fn resolve(opts: &GlobalOpts) -> Result<Self, String> {
        let file = match &opts.config {
            Some(path) => read_config(path)?,
            None => FileConfig::default(),
        };
        let q = opts.q.clone().or(file.q.map(Text::into_string)).unwrap_or_else(|| "1/2".into());
        let point = QPoint::parse(&q).map_err(|e| e.to_string())?;
        let q_text = point.exact().map(|r| rat_to_string(&r)).unwrap_or_else(|| q.clone());
        if q.contains(['.', 'e', 'E']) {
            eprintln!("note: q = {q} is read as the exact rational {q_text}");
        }
        let lmax = match opts.lmax.clone().or(file.lmax.map(Text::into_string)) {
            Some(s) => Some(s.parse::<Spin>().map_err(|e| e.to_string())?),
            None => None,
        };
        let dirac_name = opts.dirac.clone().or(file.dirac).unwrap_or_else(|| "q".into());
        let family: LambdaFamily = dirac_name.parse().map_err(|e: suq2::error::Error| e.to_string())?;
        let beta = opts.beta.or(file.beta);
        let mut dirac = DiracSpec::new(family);
        dirac.beta = beta;
        let output = opts
            .output
            .clone()
            .or(file.output)
            .or_else(|| std::env::var_os(OUTPUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok(Self {
            point,
            q_text,
            lmax,
            p: opts.p.or(file.p),
            b: opts.b.or(file.b),
            beta,
            seed: opts.seed.or(file.seed).unwrap_or(42),
            trials: opts.trials.or(file.trials),
            grid: opts.grid.or(file.grid),
            dirac,
            output,
            format: opts.format.or(file.format).unwrap_or_default(),
        })
    }

    /// `--lmax`, or the given default written as `twice`.
    pub fn lmax_or(&self, twice: u32) -> Spin {
        self.lmax.unwrap_or(Spin::from_twice(twice))
    }

    pub fn artifact(&self, name: &str) -> Result<PathBuf, String> {
        std::fs::create_dir_all(&self.output).map_err(|e| format!("cannot create {}: {e}", self.output.display()))?;
        Ok(self.output.join(name))
    }
}

fn read_config(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}
