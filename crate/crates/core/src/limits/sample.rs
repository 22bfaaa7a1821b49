//! Finite-depth samples of the limit set and their CSV form.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::chart::ChartPoint;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::system::System;
use crate::words::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Normalized orbit points `ŵ(o)`.
    Orbit,
    /// Normalized positive roots `ŵ(α_s)`.
    Roots,
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleMode::Orbit => "orbit",
            SampleMode::Roots => "roots",
        })
    }
}

impl FromStr for SampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orbit" => Ok(SampleMode::Orbit),
            "roots" => Ok(SampleMode::Roots),
            other => Err(Error::InvalidInput(format!(
                "unknown mode `{other}` (expected orbit or roots)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub depth: usize,
    pub mode: SampleMode,
    /// Word lengths `max(1, depth − window + 1) ..= depth` are sampled.
    pub window: usize,
    /// Keep points with `|q| <= near`.
    pub near: f64,
    /// Restrict to the special subgroup generated by these generators.
    pub subgroup: Option<Vec<usize>>,
    pub max_elements: usize,
    pub execution: Execution,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            depth: 8,
            mode: SampleMode::Orbit,
            window: 3,
            near: 0.05,
            subgroup: None,
            max_elements: 5_000_000,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitSample {
    pub mode: SampleMode,
    pub depth: usize,
    pub points: Vec<ChartPoint>,
}

impl LimitSample {
    /// Largest `|q|` over the points, or 0 for an empty sample.
    pub fn max_abs_q(&self, system: &System) -> f64 {
        self.points
            .iter()
            .map(|p| system.chart().quadratic(p.coords()).abs())
            .fold(0.0, f64::max)
    }
}

fn quantize(p: &ChartPoint) -> Vec<i64> {
    p.coords()
        .iter()
        .map(|c| (c * 1e10).round() as i64)
        .collect()
}

pub fn limit_set_sample(system: &System, opts: &SampleOptions) -> Result<LimitSample> {
    let gens = match &opts.subgroup {
        Some(subset) => system.generators().restricted(subset)?,
        None => system.generators().clone(),
    };
    let chart = system.chart();
    let mut points = Vec::new();
    if opts.depth > 0 {
        let ball = gens.enumerate_ball(opts.depth, opts.max_elements, opts.execution)?;
        let first = opts.depth.saturating_sub(opts.window.max(1) - 1).max(1);
        let o = chart.base_point();
        for level in &ball.levels[first..] {
            let found = exec::map(opts.execution, level, |w| -> Result<Vec<ChartPoint>> {
                match opts.mode {
                    SampleMode::Orbit => Ok(vec![chart.act(w, &o)?]),
                    SampleMode::Roots => {
                        let mut roots = Vec::new();
                        for &s in gens.letters() {
                            if !gens.is_descent(w, s, Side::Right)? {
                                roots.push(chart.normalize(&gens.root_image(w, s, Side::Right))?);
                            }
                        }
                        Ok(roots)
                    }
                }
            });
            for batch in found {
                points.extend(batch?);
            }
        }
    }
    points.retain(|p| chart.quadratic(p.coords()).abs() <= opts.near);
    if opts.mode == SampleMode::Roots {
        let mut seen = HashSet::new();
        points.retain(|p| seen.insert(quantize(p)));
    }
    Ok(LimitSample {
        mode: opts.mode,
        depth: opts.depth,
        points,
    })
}

pub fn write_csv<W: Write>(sample: &LimitSample, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "# coxeter-limits v1, mode={}, depth={}",
        sample.mode, sample.depth
    )?;
    for p in &sample.points {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c:.16e}")).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Parsed CSV: mode, depth and raw coordinate rows.
pub fn read_csv(text: &str) -> Result<(SampleMode, usize, Vec<Vec<f64>>)> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let parse_err = |line: usize, message: &str| Error::Parse {
        line,
        message: message.into(),
    };
    let rest = header
        .strip_prefix("# coxeter-limits v1, ")
        .ok_or_else(|| parse_err(1, "missing `# coxeter-limits v1` header"))?;
    let mut mode = None;
    let mut depth = None;
    for field in rest.split(", ") {
        match field.split_once('=') {
            Some(("mode", v)) => mode = Some(v.parse::<SampleMode>()?),
            Some(("depth", v)) => {
                depth = Some(v.parse::<usize>().map_err(|_| parse_err(1, "bad depth"))?)
            }
            _ => return Err(parse_err(1, "unknown header field")),
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|_| parse_err(i + 1, "bad coordinate"))?;
        rows.push(row);
    }
    Ok((
        mode.ok_or_else(|| parse_err(1, "missing mode"))?,
        depth.ok_or_else(|| parse_err(1, "missing depth"))?,
        rows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Tolerances;
    use crate::coxsys::{CoxeterMatrix, Edge};
    use crate::limits::cusps::compute_cusps;

    fn system(m: CoxeterMatrix) -> System {
        System::new(m, Tolerances::default()).unwrap()
    }

    fn opts(depth: usize, mode: SampleMode) -> SampleOptions {
        SampleOptions {
            depth,
            mode,
            ..SampleOptions::default()
        }
    }

    #[test]
    fn depth_zero_is_empty() {
        let s = system(CoxeterMatrix::uniform(4, 3).unwrap());
        assert!(limit_set_sample(&s, &opts(0, SampleMode::Orbit))
            .unwrap()
            .points
            .is_empty());
    }

    #[test]
    fn rank_four_depth_seven() {
        let s = system(CoxeterMatrix::uniform(4, 3).unwrap());
        let sample = limit_set_sample(&s, &opts(7, SampleMode::Orbit)).unwrap();
        assert!(!sample.points.is_empty());
        assert!(sample.max_abs_q(&s) <= 0.05);
        assert!(sample.points.iter().all(|p| s.chart().in_simplex(p)));
    }

    #[test]
    fn boundary_is_approached() {
        let s = system(CoxeterMatrix::uniform(4, 3).unwrap());
        let mut last = f64::INFINITY;
        for depth in [3, 5, 7, 9] {
            let sample = limit_set_sample(
                &s,
                &SampleOptions {
                    near: f64::INFINITY,
                    window: 1,
                    ..opts(depth, SampleMode::Orbit)
                },
            )
            .unwrap();
            let m = sample.max_abs_q(&s);
            assert!(m < last);
            last = m;
        }
    }

    #[test]
    fn dihedral_subgroup_collapses_to_its_cusp() {
        let m = CoxeterMatrix::from_edges(
            3,
            &[
                (0, 1, Edge::DEFAULT_INFINITE),
                (0, 2, Edge::Finite(3)),
                (1, 2, Edge::Finite(3)),
            ],
        )
        .unwrap();
        let s = system(m);
        let cusp = compute_cusps(&s).unwrap().remove(0);
        for mode in [SampleMode::Orbit, SampleMode::Roots] {
            let sample = limit_set_sample(
                &s,
                &SampleOptions {
                    subgroup: Some(vec![0, 1]),
                    near: f64::INFINITY,
                    ..opts(400, mode)
                },
            )
            .unwrap();
            assert!(!sample.points.is_empty());
            for p in &sample.points {
                assert!(p.euclid(&cusp.point) < 1e-2, "{mode}");
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = system(CoxeterMatrix::triangle(3, 3, 4).unwrap());
        let sample = limit_set_sample(&s, &opts(6, SampleMode::Roots)).unwrap();
        let mut buf = Vec::new();
        write_csv(&sample, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# coxeter-limits v1, mode=roots, depth=6\n"));
        let (mode, depth, rows) = read_csv(&text).unwrap();
        assert_eq!((mode, depth), (SampleMode::Roots, 6));
        assert_eq!(rows.len(), sample.points.len());
        for (r, p) in rows.iter().zip(&sample.points) {
            for (a, b) in r.iter().zip(p.coords().iter()) {
                assert_eq!(a, b);
            }
        }
    }
}
