//! Data ingestion, descriptive statistics, model comparison and
//! Mahalanobis QQ export for two-column positive data.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bls::{Bls, Pair, RadialLaw};
use crate::error::{domain, Error, Result};
use crate::estimation::{fit_mle, profile_fit, FitResult};
use crate::generators::{GeneratorId, GeneratorParams, GeneratorSpec};
use crate::stats;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub pairs: Vec<Pair>,
    pub labels: [String; 2],
    /// File path, or "synthetic".
    pub source: String,
}

impl Dataset {
    /// Validates that every value is finite and strictly positive. Fitting
    /// needs at least five rows; that is checked by the estimator.
    pub fn new(pairs: Vec<Pair>, labels: [String; 2], source: impl Into<String>) -> Result<Self> {
        if pairs.is_empty() {
            return domain("dataset has no rows");
        }
        for (i, p) in pairs.iter().enumerate() {
            for v in p {
                if !(v.is_finite() && *v > 0.0) {
                    return Err(Error::Parse {
                        row: i + 1,
                        message: format!("value {v} is not strictly positive"),
                    });
                }
            }
        }
        Ok(Self {
            pairs,
            labels,
            source: source.into(),
        })
    }

    pub fn synthetic(pairs: Vec<Pair>) -> Result<Self> {
        Self::new(pairs, ["t1".into(), "t2".into()], "synthetic")
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.pairs.iter().map(|p| p[j]).collect()
    }
}

/// Read a CSV with one header line and two positive numeric columns.
/// Errors name the 1-based data row.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut rdr = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 {
        return Err(Error::Parse {
            row: 0,
            message: format!("expected a header with 2 columns, found {}", headers.len()),
        });
    }
    let labels = [headers[0].to_string(), headers[1].to_string()];
    let mut pairs = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec?;
        if rec.len() != 2 {
            return Err(Error::Parse {
                row,
                message: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let mut p = [0.0; 2];
        for (j, field) in rec.iter().enumerate() {
            if field.is_empty() {
                return Err(Error::Parse {
                    row,
                    message: format!("missing value in column '{}'", labels[j]),
                });
            }
            p[j] = field.parse().map_err(|_| Error::Parse {
                row,
                message: format!("'{field}' is not a number"),
            })?;
        }
        pairs.push(p);
    }
    Dataset::new(pairs, labels, path.display().to_string())
}

/// Write the dataset as CSV with its labels as header; values round-trip exactly.
pub fn save_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&ds.labels)?;
    for p in &ds.pairs {
        w.write_record([p[0].to_string(), p[1].to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnSummary {
    pub label: String,
    pub n: usize,
    pub minimum: f64,
    pub median: f64,
    pub mean: f64,
    pub maximum: f64,
    /// n−1 denominator.
    pub sd: f64,
    pub cv_percent: f64,
    /// `m₃/m₂^{3/2}` with 1/n central moments; `None` for a constant column.
    pub skewness: Option<f64>,
    /// `m₄/m₂² − 3`; `None` for a constant column.
    pub kurtosis_excess: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub columns: [ColumnSummary; 2],
}

fn summarize_column(label: &str, xs: &[f64]) -> ColumnSummary {
    let n = xs.len();
    let mean = stats::mean(xs);
    let sd = stats::sd(xs);
    let m = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n as f64;
    let m2 = m(2);
    let constant = m2 <= f64::EPSILON * mean * mean;
    ColumnSummary {
        label: label.to_string(),
        n,
        minimum: xs.iter().copied().fold(f64::INFINITY, f64::min),
        median: stats::median(xs),
        mean,
        maximum: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        sd,
        cv_percent: 100.0 * sd / mean,
        skewness: (!constant).then(|| m(3) / m2.powf(1.5)),
        kurtosis_excess: (!constant).then(|| m(4) / (m2 * m2) - 3.0),
    }
}

pub fn summarize(ds: &Dataset) -> SummaryStats {
    SummaryStats {
        columns: [
            summarize_column(&ds.labels[0], &ds.column(0)),
            summarize_column(&ds.labels[1], &ds.column(1)),
        ],
    }
}

impl SummaryStats {
    /// One row per column: label, n, min, median, mean, max, sd, cv, skewness, excess kurtosis.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("variable\tn\tminimum\tmedian\tmean\tmaximum\tsd\tcv_percent\tskewness\tkurtosis\n");
        let opt = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.4}"));
        for c in &self.columns {
            out.push_str(&format!(
                "{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{:.3}\t{}\t{}\n",
                c.label,
                c.n,
                c.minimum,
                c.median,
                c.mean,
                c.maximum,
                c.sd,
                c.cv_percent,
                opt(c.skewness),
                opt(c.kurtosis_excess)
            ));
        }
        out
    }
}

/// Profile grid used when none is given: ν = 2..15 (Student-t), ξ ∈ 3..7 ×
/// θ ∈ {14, 18, 22, 26, 30} (Pearson VII), ν = 1..6 (hyperbolic), ν = 2..10
/// (slash), ξ = −0.5..1 in steps of 0.01 (power-exponential). Empty for
/// families without extra parameters.
pub fn default_grid(family: GeneratorId) -> Vec<GeneratorParams> {
    let ints = |a: i32, b: i32| (a..=b).map(|v| GeneratorParams::nu(v as f64)).collect::<Vec<_>>();
    match family {
        GeneratorId::LogStudentT => ints(2, 15),
        GeneratorId::LogHyperbolic => ints(1, 6),
        GeneratorId::LogSlash => ints(2, 10),
        GeneratorId::LogPearsonVII => (3..=7)
            .flat_map(|xi| [14, 18, 22, 26, 30].map(|th| GeneratorParams::xi_theta(xi as f64, th as f64)))
            .collect(),
        GeneratorId::LogPowerExponential => (-50..=100).map(|k| GeneratorParams::xi(k as f64 / 100.0)).collect(),
        GeneratorId::LogNormal | GeneratorId::LogLaplace | GeneratorId::LogLogistic => Vec::new(),
    }
}

/// A family and the grid its extra parameters are profiled over.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub family: GeneratorId,
    pub grid: Vec<GeneratorParams>,
}

impl Candidate {
    pub fn new(family: GeneratorId) -> Self {
        Self {
            family,
            grid: default_grid(family),
        }
    }

    pub fn with_grid(family: GeneratorId, grid: Vec<GeneratorParams>) -> Self {
        Self { family, grid }
    }

    pub fn all() -> Vec<Self> {
        GeneratorId::ALL.into_iter().map(Self::new).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub family: GeneratorId,
    /// Profiled extra parameters (empty for families without any).
    pub params: GeneratorParams,
    pub fit: FitResult,
    /// 1-based; ties broken by family order.
    pub aic_rank: usize,
    pub bic_rank: usize,
    pub best_aic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison {
    /// In the order the candidates were given.
    pub rows: Vec<ComparisonRow>,
    /// Families whose fit failed, with the reason.
    pub failures: Vec<(GeneratorId, String)>,
}

fn fit_candidate(data: &[Pair], c: &Candidate) -> Result<(GeneratorParams, FitResult)> {
    if c.family.has_extra_params() {
        let p = profile_fit(data, c.family, &c.grid)?;
        return Ok((p.params, p.fit));
    }
    if !c.grid.is_empty() {
        return domain(format!("{} has no extra parameters to profile", c.family.cli_name()));
    }
    let fit = fit_mle(data, &GeneratorSpec::new(c.family, GeneratorParams::none())?)?;
    if !fit.converged {
        return Err(Error::Fit(format!("did not converge: {}", fit.message)));
    }
    Ok((GeneratorParams::none(), fit))
}

fn ranks(keys: &[(f64, GeneratorId)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].0.total_cmp(&keys[b].0).then(keys[a].1.cmp(&keys[b].1)));
    let mut r = vec![0; keys.len()];
    for (pos, i) in order.into_iter().enumerate() {
        r[i] = pos + 1;
    }
    r
}

/// Fit each candidate (profiling extra parameters over its grid) and rank
/// the survivors by AIC and BIC.
pub fn compare_models(ds: &Dataset, candidates: &[Candidate]) -> Result<ModelComparison> {
    if candidates.is_empty() {
        return domain("no model families to compare");
    }
    let outcomes: Vec<Result<(GeneratorParams, FitResult)>> =
        candidates.par_iter().map(|c| fit_candidate(&ds.pairs, c)).collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (c, out) in candidates.iter().zip(outcomes) {
        match out {
            Ok((params, fit)) => rows.push(ComparisonRow {
                family: c.family,
                params,
                fit,
                aic_rank: 0,
                bic_rank: 0,
                best_aic: false,
            }),
            Err(e) => failures.push((c.family, e.to_string())),
        }
    }
    let aic = ranks(&rows.iter().map(|r| (r.fit.aic, r.family)).collect::<Vec<_>>());
    let bic = ranks(&rows.iter().map(|r| (r.fit.bic, r.family)).collect::<Vec<_>>());
    for (i, row) in rows.iter_mut().enumerate() {
        row.aic_rank = aic[i];
        row.bic_rank = bic[i];
        row.best_aic = aic[i] == 1;
    }
    Ok(ModelComparison { rows, failures })
}

impl ModelComparison {
    pub fn best_by_aic(&self) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.best_aic)
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(
            w,
            "family\teta1\tse_eta1\teta2\tse_eta2\tsigma1\tse_sigma1\tsigma2\tse_sigma2\trho\tse_rho\textra\tloglik\taic\tbic"
        )?;
        for r in &self.rows {
            let th = r.fit.theta_hat.to_array();
            let se = r.fit.std_errors.map(|s| s.to_array());
            let mut fields = vec![r.family.cli_name().to_string()];
            for j in 0..5 {
                fields.push(format!("{:.6}", th[j]));
                fields.push(se.map_or("NA".into(), |s| format!("{:.6}", s[j])));
            }
            fields.push(r.params.to_string());
            fields.push(format!("{:.3}", r.fit.log_lik));
            fields.push(format!("{:.3}", r.fit.aic));
            fields.push(format!("{:.3}", r.fit.bic));
            writeln!(w, "{}", fields.join("\t"))?;
        }
        Ok(())
    }

    pub fn to_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("utf-8 output")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QqData {
    /// Generator whose Mahalanobis law supplies the theoretical quantiles.
    pub reference: GeneratorSpec,
    /// `(theoretical, empirical)` squared distances, both nondecreasing.
    pub pairs: Vec<(f64, f64)>,
}

/// Sorted squared Mahalanobis distances under the fitted parameters against
/// the reference quantiles at plotting positions (i − 0.5)/n.
pub fn qq_mahalanobis(ds: &Dataset, fit: &FitResult) -> Result<QqData> {
    if !fit.converged {
        return domain("QQ diagnostics need a converged fit");
    }
    let bls = Bls::new(fit.theta_hat, fit.spec)?;
    let mut emp: Vec<f64> = ds.pairs.iter().map(|&t| bls.mahalanobis_sq(t)).collect::<Result<_>>()?;
    emp.sort_by(f64::total_cmp);
    let law = RadialLaw::new(fit.spec);
    let n = emp.len() as f64;
    let pairs = emp
        .into_iter()
        .enumerate()
        .map(|(i, e)| Ok((law.quantile((i as f64 + 0.5) / n)?, e)))
        .collect::<Result<_>>()?;
    Ok(QqData {
        reference: fit.spec,
        pairs,
    })
}

impl QqData {
    /// Least-squares slope of empirical on theoretical quantiles.
    pub fn slope(&self) -> f64 {
        let (xs, ys): (Vec<f64>, Vec<f64>) = self.pairs.iter().copied().unzip();
        let (mx, my) = (stats::mean(&xs), stats::mean(&ys));
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("theoretical\tempirical\n");
        for (t, e) in &self.pairs {
            out.push_str(&format!("{t}\t{e}\n"));
        }
        out
    }
}
