//! File formats and spec-string parsing: signal CSV (`x,re,im` at 17
//! significant digits), distribution CSV and PGM heatmaps with JSON
//! sidecars, matrix JSON, and the generator/matrix mini-languages used
//! by the command-line tools.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phase_space::{FormTag, PhaseSpaceDistribution};
use crate::signal::{GaussianSpec, Grid1d, SampledSignal, SignalError, SignalKind};
use crate::symplectic::{make_named, NamedMatrix, SymplecticError, SymplecticMatrix};
use crate::tolerances::TOL_GRID;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("grid is not uniform at line {line}: spacing {found} vs {expected}")]
    NonuniformGrid { line: usize, found: f64, expected: f64 },
    #[error("bad spec string '{spec}': {msg}")]
    BadSpec { spec: String, msg: String },
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Format a float with 17 significant digits (round-trip exact for f64).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write a signal as CSV with header `x,re,im`.
pub fn write_signal_csv<W: Write>(f: &SampledSignal, mut out: W) -> Result<(), IoError> {
    let mut buf = String::with_capacity(f.len() * 64);
    buf.push_str("x,re,im\n");
    for (x, v) in f.grid.points().zip(f.values.iter()) {
        let _ = writeln!(buf, "{},{},{}", fmt_f64(x), fmt_f64(v.re), fmt_f64(v.im));
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn write_signal_csv_path(f: &SampledSignal, path: &Path) -> Result<(), IoError> {
    write_signal_csv(f, std::fs::File::create(path)?)
}

/// Read a signal CSV, checking grid uniformity to 1e-9 relative.
pub fn read_signal_csv<R: Read>(input: R) -> Result<SampledSignal, IoError> {
    let reader = BufReader::new(input);
    let mut xs: Vec<f64> = Vec::new();
    let mut values: Vec<Complex64> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if idx == 0 {
            if line != "x,re,im" {
                return Err(IoError::Parse {
                    line: 1,
                    msg: format!("expected header 'x,re,im', found '{line}'"),
                });
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let mut field = |name: &str| -> Result<f64, IoError> {
            parts
                .next()
                .ok_or_else(|| IoError::Parse {
                    line: idx + 1,
                    msg: format!("missing field {name}"),
                })?
                .trim()
                .parse::<f64>()
                .map_err(|e| IoError::Parse {
                    line: idx + 1,
                    msg: format!("bad {name}: {e}"),
                })
        };
        let x = field("x")?;
        let re = field("re")?;
        let im = field("im")?;
        xs.push(x);
        values.push(Complex64::new(re, im));
    }
    if xs.len() < 8 {
        return Err(IoError::Parse {
            line: xs.len() + 1,
            msg: format!("{} samples; at least 8 required", xs.len()),
        });
    }
    let dx = xs[1] - xs[0];
    if !(dx > 0.0) {
        return Err(IoError::NonuniformGrid {
            line: 3,
            found: dx,
            expected: f64::NAN,
        });
    }
    for k in 2..xs.len() {
        let step = xs[k] - xs[k - 1];
        if (step - dx).abs() > TOL_GRID * dx.abs().max(1.0) {
            return Err(IoError::NonuniformGrid {
                line: k + 2,
                found: step,
                expected: dx,
            });
        }
    }
    Ok(SampledSignal::new(Grid1d::new(xs[0], dx, xs.len())?, values)?)
}

pub fn read_signal_csv_path(path: &Path) -> Result<SampledSignal, IoError> {
    read_signal_csv(std::fs::File::open(path)?)
}

/// Sidecar metadata for distribution exports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionMeta {
    pub xgrid: Grid1d,
    pub xigrid: Grid1d,
    pub form: String,
    /// Row-major Ω entries for non-standard forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<f64>>,
    pub min: f64,
    pub max: f64,
}

impl DistributionMeta {
    pub fn of(w: &PhaseSpaceDistribution) -> Self {
        let (min, max) = w
            .values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let (form, omega) = match &w.form_tag {
            FormTag::Standard => ("standard".to_string(), None),
            FormTag::NonStandard { omega } => ("nonstandard".to_string(), Some(omega.clone())),
        };
        Self {
            xgrid: w.xgrid,
            xigrid: w.xigrid,
            form,
            omega,
            min,
            max,
        }
    }
}

/// Flat CSV export `x,xi,value`, one row per grid point, row-major.
pub fn write_distribution_csv<W: Write>(
    w: &PhaseSpaceDistribution,
    mut out: W,
) -> Result<(), IoError> {
    let mut buf = String::with_capacity(w.values.len() * 48);
    buf.push_str("x,xi,value\n");
    for i in 0..w.xgrid.n {
        let x = w.xgrid.x(i);
        for j in 0..w.xigrid.n {
            let _ = writeln!(
                buf,
                "{},{},{}",
                fmt_f64(x),
                fmt_f64(w.xigrid.x(j)),
                fmt_f64(w.value(i, j))
            );
        }
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

/// 8-bit binary PGM heatmap: rows are ξ (top = largest ξ), columns are
/// x, linear ramp [min, max] → [0, 255]; min = max maps everything to 0.
/// Grid metadata and the value range ride in comment lines.
pub fn write_heatmap_pgm<W: Write>(w: &PhaseSpaceDistribution, mut out: W) -> Result<(), IoError> {
    let meta = DistributionMeta::of(w);
    let (nx, nxi) = (w.xgrid.n, w.xigrid.n);
    let mut header = String::new();
    let _ = writeln!(header, "P5");
    let _ = writeln!(
        header,
        "# xgrid {} {} {}",
        fmt_f64(w.xgrid.x0),
        fmt_f64(w.xgrid.dx),
        nx
    );
    let _ = writeln!(
        header,
        "# xigrid {} {} {}",
        fmt_f64(w.xigrid.x0),
        fmt_f64(w.xigrid.dx),
        nxi
    );
    let _ = writeln!(header, "# range {} {}", fmt_f64(meta.min), fmt_f64(meta.max));
    let _ = writeln!(header, "{nx} {nxi}");
    let _ = writeln!(header, "255");
    out.write_all(header.as_bytes())?;
    let span = meta.max - meta.min;
    let mut pixels = Vec::with_capacity(nx * nxi);
    for j in (0..nxi).rev() {
        for i in 0..nx {
            let v = w.value(i, j);
            let p = if span > 0.0 {
                ((v - meta.min) / span * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            };
            pixels.push(p);
        }
    }
    out.write_all(&pixels)?;
    Ok(())
}

/// Header metadata of a PGM heatmap written by [`write_heatmap_pgm`].
#[derive(Debug, Clone, PartialEq)]
pub struct PgmHeader {
    pub xgrid: Grid1d,
    pub xigrid: Grid1d,
    pub min: f64,
    pub max: f64,
    pub width: usize,
    pub height: usize,
}

/// Parse back the comment header of a PGM heatmap.
pub fn read_heatmap_header<R: Read>(input: R) -> Result<PgmHeader, IoError> {
    let reader = BufReader::new(input);
    let mut xg = None;
    let mut xig = None;
    let mut range = None;
    let mut dims = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if idx == 0 {
            if line.trim() != "P5" {
                return Err(IoError::Parse {
                    line: 1,
                    msg: "not a P5 PGM".into(),
                });
            }
            continue;
        }
        let parse3 = |s: &str, line_no: usize| -> Result<(f64, f64, usize), IoError> {
            let parts: Vec<&str> = s.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(IoError::Parse {
                    line: line_no,
                    msg: "expected three fields".into(),
                });
            }
            Ok((
                parts[0].parse().map_err(|e| IoError::Parse {
                    line: line_no,
                    msg: format!("{e}"),
                })?,
                parts[1].parse().map_err(|e| IoError::Parse {
                    line: line_no,
                    msg: format!("{e}"),
                })?,
                parts[2].parse().map_err(|e| IoError::Parse {
                    line: line_no,
                    msg: format!("{e}"),
                })?,
            ))
        };
        if let Some(rest) = line.strip_prefix("# xgrid ") {
            let (x0, dx, n) = parse3(rest, idx + 1)?;
            xg = Some(Grid1d::new(x0, dx, n)?);
        } else if let Some(rest) = line.strip_prefix("# xigrid ") {
            let (x0, dx, n) = parse3(rest, idx + 1)?;
            xig = Some(Grid1d::new(x0, dx, n)?);
        } else if let Some(rest) = line.strip_prefix("# range ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() == 2 {
                range = Some((
                    parts[0].parse::<f64>().map_err(|e| IoError::Parse {
                        line: idx + 1,
                        msg: format!("{e}"),
                    })?,
                    parts[1].parse::<f64>().map_err(|e| IoError::Parse {
                        line: idx + 1,
                        msg: format!("{e}"),
                    })?,
                ));
            }
        } else if !line.starts_with('#') && dims.is_none() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() == 2 {
                dims = Some((
                    parts[0].parse::<usize>().map_err(|e| IoError::Parse {
                        line: idx + 1,
                        msg: format!("{e}"),
                    })?,
                    parts[1].parse::<usize>().map_err(|e| IoError::Parse {
                        line: idx + 1,
                        msg: format!("{e}"),
                    })?,
                ));
            }
            break;
        }
    }
    match (xg, xig, range, dims) {
        (Some(xgrid), Some(xigrid), Some((min, max)), Some((width, height))) => Ok(PgmHeader {
            xgrid,
            xigrid,
            min,
            max,
            width,
            height,
        }),
        _ => Err(IoError::Parse {
            line: 0,
            msg: "incomplete heatmap header".into(),
        }),
    }
}

/// JSON form of a matrix: `{"n": …, "entries": [row-major 4n²]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<f64>,
}

impl MatrixJson {
    pub fn of(s: &SymplecticMatrix) -> Self {
        Self {
            n: s.n(),
            entries: s
                .entries()
                .row_iter()
                .flat_map(|r| r.iter().cloned().collect::<Vec<_>>())
                .collect(),
        }
    }

    pub fn build(&self) -> Result<SymplecticMatrix, SymplecticError> {
        SymplecticMatrix::from_rows(self.n, &self.entries)
    }
}

fn parse_number(tok: &str, spec: &str) -> Result<f64, IoError> {
    let t = tok.trim();
    let lowered = t.to_ascii_lowercase();
    let val = match lowered.as_str() {
        "pi" => std::f64::consts::PI,
        "2pi" => 2.0 * std::f64::consts::PI,
        "pi/2" => std::f64::consts::FRAC_PI_2,
        "pi/3" => std::f64::consts::FRAC_PI_3,
        "pi/4" => std::f64::consts::FRAC_PI_4,
        _ => t.parse::<f64>().map_err(|e| IoError::BadSpec {
            spec: spec.to_string(),
            msg: format!("bad number '{t}': {e}"),
        })?,
    };
    Ok(val)
}

/// Parse a matrix spec string: `J`, `I`, `frft:θ[,θ…]`, `fresnel:b…`,
/// `lorentz:φ…`, `shear:p…` (row-major), `squeeze:l…`, or a path to a
/// matrix JSON file.
pub fn parse_matrix_spec(spec: &str) -> Result<SymplecticMatrix, IoError> {
    let s = spec.trim();
    match s {
        "J" | "j" | "fourier" => return Ok(SymplecticMatrix::j(1)),
        "I" | "i" | "identity" => return Ok(SymplecticMatrix::identity(1)),
        _ => {}
    }
    if s.ends_with(".json") {
        let text = std::fs::read_to_string(s)?;
        let mj: MatrixJson = serde_json::from_str(&text)?;
        return Ok(mj.build()?);
    }
    let (name, rest) = s.split_once(':').ok_or_else(|| IoError::BadSpec {
        spec: s.to_string(),
        msg: "expected 'name:params'".into(),
    })?;
    let params: Vec<f64> = rest
        .split(',')
        .map(|t| parse_number(t, s))
        .collect::<Result<_, _>>()?;
    if params.is_empty() {
        return Err(IoError::BadSpec {
            spec: s.to_string(),
            msg: "no parameters".into(),
        });
    }
    let kind = match name {
        "frft" => NamedMatrix::Frft { angles: params },
        "fresnel" => NamedMatrix::Fresnel { b: params },
        "lorentz" => NamedMatrix::Lorentz { phi: params },
        "shear" => {
            let n = (params.len() as f64).sqrt() as usize;
            if n * n != params.len() {
                return Err(IoError::BadSpec {
                    spec: s.to_string(),
                    msg: "shear needs n² entries".into(),
                });
            }
            NamedMatrix::Shear { n, p: params }
        }
        "squeeze" => {
            let n = (params.len() as f64).sqrt() as usize;
            if n * n != params.len() {
                return Err(IoError::BadSpec {
                    spec: s.to_string(),
                    msg: "squeeze needs n² entries".into(),
                });
            }
            NamedMatrix::Squeeze { n, l: params }
        }
        other => {
            return Err(IoError::BadSpec {
                spec: s.to_string(),
                msg: format!("unknown matrix kind '{other}'"),
            })
        }
    };
    Ok(make_named(&kind)?)
}

/// Parse a generator spec: `gaussian:α[:φ]` (unit-normalized),
/// `rect:r`, `chirp:rate`, `hermite:k`, `randbl:seed:cutoff`.
pub fn parse_signal_spec(spec: &str) -> Result<SignalKind, IoError> {
    let s = spec.trim();
    let mut parts = s.split(':');
    let name = parts.next().unwrap_or_default();
    let args: Vec<&str> = parts.collect();
    let bad = |msg: &str| IoError::BadSpec {
        spec: s.to_string(),
        msg: msg.to_string(),
    };
    match name {
        "gaussian" => {
            if args.is_empty() || args.len() > 2 {
                return Err(bad("gaussian:alpha[:phase]"));
            }
            let alpha = parse_number(args[0], s)?;
            let phase = if args.len() == 2 {
                parse_number(args[1], s)?
            } else {
                0.0
            };
            let mut g = GaussianSpec::unit_norm(alpha);
            g.phase = phase;
            Ok(SignalKind::Gaussian(g))
        }
        "rect" => {
            if args.len() != 1 {
                return Err(bad("rect:r"));
            }
            Ok(SignalKind::Rectangle {
                r: parse_number(args[0], s)?,
            })
        }
        "chirp" => {
            if args.len() != 1 {
                return Err(bad("chirp:rate"));
            }
            Ok(SignalKind::Chirp {
                rate: parse_number(args[0], s)?,
            })
        }
        "hermite" => {
            if args.len() != 1 {
                return Err(bad("hermite:k"));
            }
            let k: usize = args[0].parse().map_err(|e| IoError::BadSpec {
                spec: s.to_string(),
                msg: format!("bad order: {e}"),
            })?;
            Ok(SignalKind::Hermite { k })
        }
        "randbl" => {
            if args.len() != 2 {
                return Err(bad("randbl:seed:cutoff"));
            }
            let seed: u64 = args[0].parse().map_err(|e| IoError::BadSpec {
                spec: s.to_string(),
                msg: format!("bad seed: {e}"),
            })?;
            Ok(SignalKind::RandomBandlimited {
                seed,
                cutoff: parse_number(args[1], s)?,
            })
        }
        other => Err(bad(&format!("unknown generator '{other}'"))),
    }
}

/// Parse a grid spec `x0:dx:N`.
pub fn parse_grid_spec(spec: &str) -> Result<Grid1d, IoError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(IoError::BadSpec {
            spec: spec.to_string(),
            msg: "expected x0:dx:N".into(),
        });
    }
    let x0 = parse_number(parts[0], spec)?;
    let dx = parse_number(parts[1], spec)?;
    let n: usize = parts[2].parse().map_err(|e| IoError::BadSpec {
        spec: spec.to_string(),
        msg: format!("bad N: {e}"),
    })?;
    Ok(Grid1d::new(x0, dx, n)?)
}
