//! Text, CSV and JSON output of scan rows.

use crate::scan::ScanRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Which table layout to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// link, sigma, m, g* >
    TwoBridge,
    /// link, mu, sigma, H_1, m, g* >
    Montesinos,
}

/// `Z/147` or `Z/5+Z/5`; the trivial group prints as `0`.
pub fn group_name(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors
        .iter()
        .map(|f| format!("Z/{f}"))
        .collect::<Vec<_>>()
        .join("+")
}

fn cells(row: &ScanRow, layout: Layout) -> Vec<String> {
    let m = row.m.as_ref().map(|m| m.to_string()).unwrap_or_default();
    let g = row.genus_gt.map(|g| g.to_string()).unwrap_or_default();
    match layout {
        Layout::TwoBridge => vec![row.link.clone(), row.sigma.to_string(), m, g],
        Layout::Montesinos => {
            vec![
                row.link.clone(),
                row.mu.to_string(),
                row.sigma.to_string(),
                group_name(&row.h1),
                m,
                g,
            ]
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(rows: &[ScanRow], format: Format, layout: Layout) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let header = match layout {
                Layout::TwoBridge => "link,sigma,m,genus_gt",
                Layout::Montesinos => "link,mu,sigma,h1,m,genus_gt",
            };
            let mut out = format!("{header}\n");
            for r in rows {
                let line: Vec<String> = cells(r, layout).iter().map(|c| csv_field(c)).collect();
                out += &line.join(",");
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let header: Vec<String> = match layout {
                Layout::TwoBridge => vec!["Link", "sigma", "m", "g* >"],
                Layout::Montesinos => vec!["Link", "mu", "sigma", "H_1(Y)", "m", "g* >"],
            }
            .into_iter()
            .map(String::from)
            .collect();
            let body: Vec<Vec<String>> = rows.iter().map(|r| cells(r, layout)).collect();
            let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for line in &body {
                for (w, c) in width.iter_mut().zip(line) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let mut out = String::new();
            for line in std::iter::once(&header).chain(&body) {
                let padded: Vec<String> = line
                    .iter()
                    .zip(&width)
                    .enumerate()
                    .map(|(i, (c, w))| {
                        if i == 0 {
                            format!("{c:<w$}")
                        } else {
                            format!("{c:>w$}")
                        }
                    })
                    .collect();
                out += padded.join("  ").trim_end();
                out.push('\n');
            }
            out
        }
    }
}
