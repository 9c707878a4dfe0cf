//! Tab-delimited plot-data files with a plain-text legend alongside.

use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::format::{fmt_num, fmt_opt, tsv_line, write_file, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Histogram,
    Curves,
    Density,
    Scatter,
    LongCurves,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlotPayload {
    /// Left bin edges of equal-width bins and their counts.
    Histogram {
        bin_width: f64,
        edges: Vec<f64>,
        counts: Vec<usize>,
    },
    /// Wide table: one x column, one column per named series.
    Curves {
        x_label: String,
        x: Vec<String>,
        series: Vec<(String, Vec<f64>)>,
    },
    /// Long table of `(metric, group, x, density)`.
    Density { rows: Vec<(String, String, f64, f64)> },
    /// One `(id, x, y)` point per row.
    Scatter {
        x_label: String,
        y_label: String,
        points: Vec<(String, Option<f64>, Option<f64>)>,
    },
    /// Long table of `(group, member, date, nav)`.
    LongCurves { rows: Vec<(String, String, String, f64)> },
}

impl PlotPayload {
    pub fn kind(&self) -> PlotKind {
        match self {
            PlotPayload::Histogram { .. } => PlotKind::Histogram,
            PlotPayload::Curves { .. } => PlotKind::Curves,
            PlotPayload::Density { .. } => PlotKind::Density,
            PlotPayload::Scatter { .. } => PlotKind::Scatter,
            PlotPayload::LongCurves { .. } => PlotKind::LongCurves,
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            PlotPayload::Histogram { counts, .. } => counts.is_empty(),
            PlotPayload::Curves { x, series, .. } => x.is_empty() || series.is_empty(),
            PlotPayload::Density { rows } => rows.is_empty(),
            PlotPayload::Scatter { points, .. } => points.is_empty(),
            PlotPayload::LongCurves { rows } => rows.is_empty(),
        }
    }
}

/// Expected payload kind and a short title for each figure id.
pub fn figure_schema(figure_id: &str) -> Option<(PlotKind, &'static str)> {
    Some(match figure_id {
        "fig1" => (PlotKind::Histogram, "Histogram of competitor ending NAVs"),
        "fig2" => (
            PlotKind::Curves,
            "Daily NAVs of competitors and benchmarks with cohort quantile bands",
        ),
        "fig3" => (PlotKind::Curves, "Cohort NAV quantiles before and after fees"),
        "fig4" => (
            PlotKind::Curves,
            "Sorted alpha p-values, adjusted p-values and the step-up cutoff line",
        ),
        "fig5" => (
            PlotKind::Density,
            "Metric densities of competitors and random portfolios",
        ),
        "fig6" => (PlotKind::Scatter, "Sharpe ratio against maximum drawdown"),
        "fig7" => (
            PlotKind::Curves,
            "Random-portfolio NAV envelope with benchmarks and competitor quantiles",
        ),
        "fig8" => (
            PlotKind::LongCurves,
            "Prior-period winners: monthly member curves and strategy NAV",
        ),
        "fig9" => (
            PlotKind::LongCurves,
            "Prior-period losers: monthly member curves and strategy NAV",
        ),
        _ => return None,
    })
}

/// Renders `(data, legend)` for a figure after checking the payload.
pub fn render_plot(figure_id: &str, payload: &PlotPayload, prov: &Provenance) -> Result<(String, String)> {
    let (kind, title) =
        figure_schema(figure_id).ok_or_else(|| CliError::Input(format!("unknown figure id `{figure_id}`")))?;
    if payload.kind() != kind {
        return Err(CliError::Input(format!(
            "schema mismatch for {figure_id}: expected {kind:?} payload, got {:?}",
            payload.kind()
        )));
    }
    if payload.is_empty() {
        return Err(CliError::Input(format!("{figure_id}: no data")));
    }

    let mut data = prov.line();
    data.push('\n');
    let columns: Vec<String>;
    match payload {
        PlotPayload::Histogram {
            bin_width,
            edges,
            counts,
        } => {
            if edges.len() != counts.len() || !(*bin_width > 0.0) {
                return Err(CliError::Input(format!(
                    "schema mismatch for {figure_id}: ragged histogram"
                )));
            }
            columns = vec!["bin_edge".into(), "count".into()];
            tsv_line(&mut data, &columns);
            for (e, c) in edges.iter().zip(counts) {
                tsv_line(&mut data, &[fmt_num(*e), c.to_string()]);
            }
        }
        PlotPayload::Curves { x_label, x, series } => {
            if series.iter().any(|(_, v)| v.len() != x.len()) {
                return Err(CliError::Input(format!(
                    "schema mismatch for {figure_id}: ragged curves"
                )));
            }
            columns = std::iter::once(x_label.clone())
                .chain(series.iter().map(|(n, _)| n.clone()))
                .collect();
            tsv_line(&mut data, &columns);
            for (i, xv) in x.iter().enumerate() {
                let row: Vec<String> = std::iter::once(xv.clone())
                    .chain(series.iter().map(|(_, v)| fmt_num(v[i])))
                    .collect();
                tsv_line(&mut data, &row);
            }
        }
        PlotPayload::Density { rows } => {
            columns = ["metric", "group", "x", "density"].map(String::from).to_vec();
            tsv_line(&mut data, &columns);
            for (m, g, x, d) in rows {
                tsv_line(&mut data, &[m.clone(), g.clone(), fmt_num(*x), fmt_num(*d)]);
            }
        }
        PlotPayload::Scatter {
            x_label,
            y_label,
            points,
        } => {
            columns = vec!["id".into(), x_label.clone(), y_label.clone()];
            tsv_line(&mut data, &columns);
            for (id, x, y) in points {
                tsv_line(&mut data, &[id.clone(), fmt_opt(*x), fmt_opt(*y)]);
            }
        }
        PlotPayload::LongCurves { rows } => {
            columns = ["group", "member", "date", "nav"].map(String::from).to_vec();
            tsv_line(&mut data, &columns);
            for (g, m, d, v) in rows {
                tsv_line(&mut data, &[g.clone(), m.clone(), d.clone(), fmt_num(*v)]);
            }
        }
    }

    let legend = format!(
        "{}\n{figure_id}: {title}\nformat: tab-separated, one header row, lines starting with # are comments\ncolumns: {}\n",
        prov.line(),
        columns.join(", ")
    );
    Ok((data, legend))
}

/// Writes `<figure_id>.dat` and `<figure_id>.legend` into `dir`.
pub fn emit_plot_data(dir: &Path, figure_id: &str, payload: &PlotPayload, prov: &Provenance) -> Result<PathBuf> {
    let (data, legend) = render_plot(figure_id, payload, prov)?;
    let path = dir.join(format!("{figure_id}.dat"));
    write_file(&path, &data)?;
    write_file(&dir.join(format!("{figure_id}.legend")), &legend)?;
    Ok(path)
}

/// Equal-width histogram with edges on multiples of `width`.
pub fn histogram(values: &[f64], width: f64) -> (Vec<f64>, Vec<usize>) {
    if values.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let lo = values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let hi = values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let first = (lo / width).floor() as i64;
    let last = (hi / width).floor() as i64;
    let mut counts = vec![0usize; (last - first + 1) as usize];
    for &v in values {
        counts[((v / width).floor() as i64 - first) as usize] += 1;
    }
    let edges = (first..=last).map(|b| b as f64 * width).collect();
    (edges, counts)
}

/// Histogram-based density on `bins` equal bins spanning `[lo, hi]`,
/// reported at bin midpoints. Integrates to one over the range.
pub fn density(values: &[f64], lo: f64, hi: f64, bins: usize) -> Vec<(f64, f64)> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let width = span / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in values {
        let b = (((v - lo) / width).floor() as i64).clamp(0, bins as i64 - 1) as usize;
        counts[b] += 1;
    }
    let n = values.len() as f64;
    counts
        .iter()
        .enumerate()
        .map(|(b, &c)| (lo + (b as f64 + 0.5) * width, c as f64 / (n * width)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prov() -> Provenance {
        Provenance {
            command: "navs".into(),
            config_hash: "h".into(),
            seed: 1,
        }
    }

    #[test]
    fn histogram_contract() {
        let (edges, counts) = histogram(&[79.0, 81.0, 99.5, 100.0, 121.0], 10.0);
        assert_eq!(edges, vec![70.0, 80.0, 90.0, 100.0, 110.0, 120.0]);
        assert_eq!(counts, vec![1, 1, 1, 1, 0, 1]);
        let payload = PlotPayload::Histogram {
            bin_width: 10.0,
            edges,
            counts,
        };
        let (data, legend) = render_plot("fig1", &payload, &prov()).unwrap();
        let lines: Vec<&str> = data.lines().collect();
        assert_eq!(lines[1], "bin_edge\tcount");
        assert_eq!(lines[2], "70\t1");
        assert!(lines.iter().skip(1).all(|l| l.split('\t').count() == 2));
        assert!(legend.contains("columns: bin_edge, count"));
    }

    #[test]
    fn scatter_is_three_columns() {
        let payload = PlotPayload::Scatter {
            x_label: "sr".into(),
            y_label: "mdd".into(),
            points: vec![
                ("sim_00000".into(), Some(0.5), Some(0.1)),
                ("x".into(), None, Some(0.2)),
            ],
        };
        let (data, _) = render_plot("fig6", &payload, &prov()).unwrap();
        assert!(data.lines().skip(1).all(|l| l.split('\t').count() == 3));
        assert!(data.contains("x\tNA\t0.2"));
    }

    #[test]
    fn rejects_empty_and_mismatched() {
        let empty = PlotPayload::Scatter {
            x_label: "sr".into(),
            y_label: "mdd".into(),
            points: vec![],
        };
        let err = render_plot("fig6", &empty, &prov()).unwrap_err().to_string();
        assert!(err.contains("no data"), "{err}");
        let hist = PlotPayload::Histogram {
            bin_width: 1.0,
            edges: vec![0.0],
            counts: vec![1],
        };
        let err = render_plot("fig6", &hist, &prov()).unwrap_err().to_string();
        assert!(err.contains("schema mismatch"), "{err}");
        let ragged = PlotPayload::Curves {
            x_label: "date".into(),
            x: vec!["a".into(), "b".into()],
            series: vec![("s".into(), vec![1.0])],
        };
        assert!(render_plot("fig2", &ragged, &prov()).is_err());
        assert!(render_plot("fig10", &hist, &prov()).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let d = density(&xs, -1.0, 1.0, 20);
        let mass: f64 = d.iter().map(|(_, y)| y * 0.1).sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }
}
