//! Figure data: sign masks, the equality surface and the 1D curves,
//! sampled at cell centers and written as CSV, plain PGM or SVG.
//!
//! Axis `i` of a grid with resolution `n` is sampled at `(i + 0.5) / n`.
//! Storage is row-major with the first axis fastest: a 2D cell `(i, j)`
//! (x index `i`, y index `j`) lives at `j * n + i`, a 3D cell `(i, j, k)`
//! at `(k * n + j) * n + i`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::BoundForm;
use crate::error::{domain, Error, Result};

/// Label of a cell where the predicate is positive.
pub const POSITIVE: u8 = 0;
/// Label of a cell where the predicate is negative.
pub const NEGATIVE: u8 = 1;
/// Label of a cell on the zero set, or outside every region.
pub const NONE: u8 = 2;

pub const MAX_RESOLUTION_2D: usize = 4096;
pub const MAX_RESOLUTION_3D: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "Fig1",
            FigureId::Fig2 => "Fig2",
            FigureId::Fig3 => "Fig3",
            FigureId::Fig4 => "Fig4",
            FigureId::Fig5 => "Fig5",
            FigureId::Fig6 => "Fig6",
            FigureId::Fig7 => "Fig7",
            FigureId::Fig8 => "Fig8",
        }
    }

    /// Number of sampled axes.
    pub fn dims(self) -> usize {
        match self {
            FigureId::Fig3 | FigureId::Fig4 => 3,
            FigureId::Fig8 => 1,
            _ => 2,
        }
    }

    /// Meaning of the integer labels, as written into PGM comments.
    pub fn legend(self) -> &'static str {
        match self {
            FigureId::Fig1 => "0: (x-1/2)(y-1/2) > 0, 1: < 0, 2: = 0",
            FigureId::Fig3 => "0: d(2z-1) > 0 and z < 1/2, 1: d(2z-1) > 0 and z > 1/2, 2: other; d = y(1-2x)+z(1-2y)",
            FigureId::Fig4 => "0: d(2z-1) < 0 and z < 1/2, 1: d(2z-1) < 0 and z > 1/2, 2: other; d = y(1-2x)+z(1-2y)",
            FigureId::Fig5 => "0: (x-1/2)(y-1/2) > 0, 1: < 0, 2: = 0 (y plays z)",
            FigureId::Fig6 => "0: (x+y-1)(2y-1) > 0, 1: < 0, 2: = 0",
            FigureId::Fig7 => "0: (4xy-x-y)(2x-1) > 0, 1: < 0, 2: = 0",
            FigureId::Fig2 => "z = y(2x-1)/(1-2y) clamped to [0,1], nan on y = 1/2",
            FigureId::Fig8 => "sin(2pi x(1-x)), sin(pi(1+x)/3), sin(pi(1+2x)/3)",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("Fig")
            .or_else(|| s.strip_prefix("fig"))
            .unwrap_or(s);
        match digits {
            "1" => Ok(FigureId::Fig1),
            "2" => Ok(FigureId::Fig2),
            "3" => Ok(FigureId::Fig3),
            "4" => Ok(FigureId::Fig4),
            "5" => Ok(FigureId::Fig5),
            "6" => Ok(FigureId::Fig6),
            "7" => Ok(FigureId::Fig7),
            "8" => Ok(FigureId::Fig8),
            _ => Err(Error::Parse(format!("unknown figure `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Pgm,
    Svg,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "pgm" => Ok(Format::Pgm),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Pgm => "pgm",
            Format::Svg => "svg",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Labels {
    /// Region codes, one per cell.
    Codes(Vec<u8>),
    /// Heightfield values, `NaN` where undefined.
    Heights(Vec<f64>),
    /// The three curve values at each sample.
    Curves(Vec<[f64; 3]>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelGrid {
    pub figure: FigureId,
    pub resolution: usize,
    pub labels: Labels,
    /// Fig1 only: per cell, [`POSITIVE`] where A2 is numerically smaller,
    /// [`NEGATIVE`] where B2 is, [`NONE`] on a tie.
    pub smaller: Option<Vec<u8>>,
}

impl LabelGrid {
    pub fn dims(&self) -> usize {
        self.figure.dims()
    }

    pub fn len(&self) -> usize {
        self.resolution.pow(self.dims() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Center coordinate of cell `i` along any axis.
    pub fn center(&self, i: usize) -> f64 {
        center(i, self.resolution)
    }

    /// Cell-center coordinates of flat index `idx`, first axis first.
    pub fn coords(&self, idx: usize) -> Vec<f64> {
        let n = self.resolution;
        let mut rest = idx;
        (0..self.dims())
            .map(|_| {
                let c = center(rest % n, n);
                rest /= n;
                c
            })
            .collect()
    }

    pub fn codes(&self) -> Option<&[u8]> {
        match &self.labels {
            Labels::Codes(c) => Some(c),
            _ => None,
        }
    }
}

fn center(i: usize, n: usize) -> f64 {
    (i as f64 + 0.5) / n as f64
}

fn sign_code(v: f64) -> u8 {
    if v > 0.0 {
        POSITIVE
    } else if v < 0.0 {
        NEGATIVE
    } else {
        NONE
    }
}

/// `delta = y(1 - 2x) + z(1 - 2y)` times `2z - 1`.
pub fn split_criterion(x: f64, y: f64, z: f64) -> f64 {
    (y * (1.0 - 2.0 * x) + z * (1.0 - 2.0 * y)) * (2.0 * z - 1.0)
}

/// Sign predicate of a 2D mask figure.
pub fn mask_predicate(figure: FigureId, x: f64, y: f64) -> Result<f64> {
    match figure {
        FigureId::Fig1 | FigureId::Fig5 => Ok((x - 0.5) * (y - 0.5)),
        FigureId::Fig6 => Ok((x + y - 1.0) * (2.0 * y - 1.0)),
        FigureId::Fig7 => Ok((4.0 * x * y - x - y) * (2.0 * x - 1.0)),
        _ => Err(Error::Unsupported(format!("{figure} is not a 2D mask"))),
    }
}

/// The equality surface `z = y(2x - 1)/(1 - 2y)`, clamped to [0,1];
/// `NaN` on the pole `y = 1/2`.
pub fn surface_height(x: f64, y: f64) -> f64 {
    let den = 1.0 - 2.0 * y;
    if den == 0.0 {
        return f64::NAN;
    }
    (y * (2.0 * x - 1.0) / den).clamp(0.0, 1.0)
}

/// `sin(2 pi x(1-x))`, `sin(pi(1+x)/3)` and `sin(pi(1+2x)/3)`.
pub fn curves(x: f64) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (o, form) in out
        .iter_mut()
        .zip([BoundForm::OneDA, BoundForm::OneDB, BoundForm::OneDC])
    {
        *o = form.eval(&[x])?.value();
    }
    Ok(out)
}

fn fig3_code(figure: FigureId, x: f64, y: f64, z: f64) -> u8 {
    let d = split_criterion(x, y, z);
    let inside = if figure == FigureId::Fig3 {
        d > 0.0
    } else {
        d < 0.0
    };
    if !inside {
        NONE
    } else if z < 0.5 {
        POSITIVE
    } else {
        NEGATIVE
    }
}

fn smaller_code(x: f64, y: f64) -> Result<u8> {
    let a = BoundForm::A2.eval(&[x, y])?.log_value;
    let b = BoundForm::B2.eval(&[x, y])?.log_value;
    Ok(if a < b {
        POSITIVE
    } else if b < a {
        NEGATIVE
    } else {
        NONE
    })
}

fn check_resolution(figure: FigureId, resolution: usize) -> Result<()> {
    let max = if figure.dims() == 3 {
        MAX_RESOLUTION_3D
    } else {
        MAX_RESOLUTION_2D
    };
    if resolution < 2 || resolution > max {
        return Err(domain(
            "resolution",
            resolution as f64,
            if figure.dims() == 3 {
                "2 <= n <= 512"
            } else {
                "2 <= n <= 4096"
            },
        ));
    }
    Ok(())
}

/// Samples a figure at `resolution` cell centers per axis.
pub fn render(figure: FigureId, resolution: usize) -> Result<LabelGrid> {
    check_resolution(figure, resolution)?;
    let n = resolution;
    let mut smaller = None;
    let labels = match figure {
        FigureId::Fig1 | FigureId::Fig5 | FigureId::Fig6 | FigureId::Fig7 => {
            let mut codes = vec![0u8; n * n];
            codes
                .par_chunks_mut(n)
                .enumerate()
                .try_for_each(|(j, row)| {
                    let y = center(j, n);
                    for (i, c) in row.iter_mut().enumerate() {
                        *c = sign_code(mask_predicate(figure, center(i, n), y)?);
                    }
                    Ok::<_, Error>(())
                })?;
            if figure == FigureId::Fig1 {
                let mut s = vec![0u8; n * n];
                s.par_chunks_mut(n).enumerate().try_for_each(|(j, row)| {
                    let y = center(j, n);
                    for (i, c) in row.iter_mut().enumerate() {
                        *c = smaller_code(center(i, n), y)?;
                    }
                    Ok::<_, Error>(())
                })?;
                smaller = Some(s);
            }
            Labels::Codes(codes)
        }
        FigureId::Fig2 => {
            let mut h = vec![0.0; n * n];
            h.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
                let y = center(j, n);
                for (i, v) in row.iter_mut().enumerate() {
                    *v = surface_height(center(i, n), y);
                }
            });
            Labels::Heights(h)
        }
        FigureId::Fig3 | FigureId::Fig4 => {
            let mut codes = vec![0u8; n * n * n];
            codes
                .par_chunks_mut(n * n)
                .enumerate()
                .for_each(|(k, slice)| {
                    let z = center(k, n);
                    for (idx, c) in slice.iter_mut().enumerate() {
                        *c = fig3_code(figure, center(idx % n, n), center(idx / n, n), z);
                    }
                });
            Labels::Codes(codes)
        }
        FigureId::Fig8 => Labels::Curves(
            (0..n)
                .into_par_iter()
                .map(|i| curves(center(i, n)))
                .collect::<Result<_>>()?,
        ),
    };
    Ok(LabelGrid {
        figure,
        resolution,
        labels,
        smaller,
    })
}

/// Writes `grid` to `path` in `format`.
pub fn emit(grid: &LabelGrid, format: Format, path: &Path) -> Result<()> {
    // check before creating the file
    supports(grid, format)?;
    let mut w = BufWriter::new(File::create(path)?);
    write(grid, format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn supports(grid: &LabelGrid, format: Format) -> Result<()> {
    let ok = match (&grid.labels, format) {
        (_, Format::Csv) => true,
        (Labels::Codes(_), Format::Pgm) => true,
        (Labels::Codes(_), Format::Svg) => grid.dims() == 2,
        (Labels::Curves(_), Format::Svg) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} cannot be written as {format}",
            grid.figure
        )))
    }
}

/// Writes `grid` to any writer. Output is byte-deterministic.
pub fn write<W: Write + ?Sized>(grid: &LabelGrid, format: Format, w: &mut W) -> Result<()> {
    supports(grid, format)?;
    match format {
        Format::Csv => write_csv(grid, w),
        Format::Pgm => write_pgm(grid, w),
        Format::Svg => write_svg(grid, w),
    }
}

/// 17 significant digits; `nan` for NaN.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn write_csv<W: Write + ?Sized>(grid: &LabelGrid, w: &mut W) -> Result<()> {
    let n = grid.resolution;
    match &grid.labels {
        Labels::Codes(codes) => {
            let axes = if grid.dims() == 3 { "x,y,z" } else { "x,y" };
            if grid.smaller.is_some() {
                writeln!(w, "{axes},label,smaller")?;
            } else {
                writeln!(w, "{axes},label")?;
            }
            for (idx, &c) in codes.iter().enumerate() {
                for v in grid.coords(idx) {
                    write!(w, "{},", fmt_real(v))?;
                }
                match &grid.smaller {
                    Some(s) => writeln!(w, "{c},{}", s[idx])?,
                    None => writeln!(w, "{c}")?,
                }
            }
        }
        Labels::Heights(h) => {
            writeln!(w, "x,y,z")?;
            for (idx, &v) in h.iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{}",
                    fmt_real(center(idx % n, n)),
                    fmt_real(center(idx / n, n)),
                    fmt_real(v)
                )?;
            }
        }
        Labels::Curves(c) => {
            writeln!(w, "x,sin_2pi_x_1mx,sin_pi_1px_3,sin_pi_1p2x_3")?;
            for (i, v) in c.iter().enumerate() {
                writeln!(
                    w,
                    "{},{},{},{}",
                    fmt_real(center(i, n)),
                    fmt_real(v[0]),
                    fmt_real(v[1]),
                    fmt_real(v[2])
                )?;
            }
        }
    }
    Ok(())
}

fn pgm_image<W: Write + ?Sized>(
    w: &mut W,
    legend: &str,
    extra: Option<String>,
    n: usize,
    codes: &[u8],
) -> Result<()> {
    writeln!(w, "P2")?;
    writeln!(w, "# {legend}")?;
    if let Some(e) = extra {
        writeln!(w, "# {e}")?;
    }
    writeln!(w, "{n} {n}")?;
    writeln!(w, "2")?;
    // top image row is the largest y
    for j in (0..n).rev() {
        let row = &codes[j * n..(j + 1) * n];
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

fn write_pgm<W: Write + ?Sized>(grid: &LabelGrid, w: &mut W) -> Result<()> {
    let Labels::Codes(codes) = &grid.labels else {
        unreachable!("checked by supports");
    };
    let n = grid.resolution;
    let legend = grid.figure.legend();
    if grid.dims() == 2 {
        return pgm_image(w, legend, None, n, codes);
    }
    // one image per z slice, bottom slice first
    for (k, slice) in codes.chunks(n * n).enumerate() {
        let note = format!("slice {k} of {n}, z = {}", fmt_real(center(k, n)));
        pgm_image(w, legend, Some(note), n, slice)?;
    }
    Ok(())
}

const FILLS: [&str; 3] = ["#b0b0b0", "#ffffff", "#d04040"];
const STROKES: [&str; 3] = ["#1f77b4", "#2ca02c", "#d62728"];

fn write_svg<W: Write + ?Sized>(grid: &LabelGrid, w: &mut W) -> Result<()> {
    let n = grid.resolution;
    match &grid.labels {
        Labels::Codes(codes) => {
            writeln!(
                w,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {n} {n}\" width=\"512\" height=\"512\" shape-rendering=\"crispEdges\">"
            )?;
            writeln!(
                w,
                "<title>{}: {}</title>",
                grid.figure,
                grid.figure.legend()
            )?;
            for (idx, &c) in codes.iter().enumerate() {
                let (i, j) = (idx % n, idx / n);
                writeln!(
                    w,
                    "<rect x=\"{i}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{}\"/>",
                    n - 1 - j,
                    FILLS[c as usize]
                )?;
            }
        }
        Labels::Curves(c) => {
            writeln!(
                w,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"512\" height=\"512\">"
            )?;
            writeln!(
                w,
                "<title>{}: {}</title>",
                grid.figure,
                grid.figure.legend()
            )?;
            for (s, stroke) in STROKES.iter().enumerate() {
                let pts: Vec<String> = c
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("{:.6},{:.6}", center(i, n), 1.0 - v[s]))
                    .collect();
                writeln!(
                    w,
                    "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"0.005\" points=\"{}\"/>",
                    pts.join(" ")
                )?;
            }
        }
        Labels::Heights(_) => unreachable!("checked by supports"),
    }
    writeln!(w, "</svg>")?;
    Ok(())
}
