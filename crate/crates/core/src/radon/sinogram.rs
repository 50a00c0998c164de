use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::geometry::{GeodesicParam, SpaceDescriptor};
use crate::numerics::{lit, to_f64, CatmullRom, Real};
use crate::{Error, Result};

const MAGIC: &str = "# frh-sinogram v1";

/// Angle × offset grid for line transforms on ℝ²: θ_i = iπ/N_θ and offsets
/// spaced uniformly on [−U, U].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinogramGrid<T> {
    pub angles: usize,
    pub offsets: usize,
    pub u_max: T,
}

impl<T: Real> SinogramGrid<T> {
    /// 180 angles × 257 offsets over [−U, U].
    pub fn new(u_max: T) -> Self {
        SinogramGrid {
            angles: 180,
            offsets: 257,
            u_max,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.angles < 4 || self.offsets < 4 || !(self.u_max > T::zero()) {
            return Err(Error::invalid(
                "sinogram grid needs ≥ 4 angles, ≥ 4 offsets and U > 0",
            ));
        }
        Ok(())
    }

    pub fn angle(&self, i: usize) -> T {
        T::PI() * lit(i as f64) / lit(self.angles as f64)
    }

    pub fn offset(&self, j: usize) -> T {
        -self.u_max + (self.u_max + self.u_max) * lit(j as f64) / lit((self.offsets - 1) as f64)
    }
}

/// Sampled line transform on ℝ², stored row-major (angle, offset).
#[derive(Debug, Clone, PartialEq)]
pub struct Sinogram<T> {
    pub space: SpaceDescriptor,
    pub grid: SinogramGrid<T>,
    pub values: Vec<T>,
}

impl<T: Real> Sinogram<T> {
    pub fn new(grid: SinogramGrid<T>, values: Vec<T>) -> Result<Self> {
        grid.validate()?;
        if values.len() != grid.angles * grid.offsets {
            return Err(Error::invalid(format!(
                "sinogram has {} values, grid needs {}",
                values.len(),
                grid.angles * grid.offsets
            )));
        }
        Ok(Sinogram {
            space: SpaceDescriptor::euclidean(2, 1)?,
            grid,
            values,
        })
    }

    /// Samples the line transform `line(θ, u)` on every grid cell, in
    /// parallel. The first failing cell aborts the build.
    pub fn build<F>(grid: SinogramGrid<T>, line: F) -> Result<Self>
    where
        F: Fn(T, T) -> Result<T> + Sync,
    {
        grid.validate()?;
        let values = (0..grid.angles * grid.offsets)
            .into_par_iter()
            .map(|c| line(grid.angle(c / grid.offsets), grid.offset(c % grid.offsets)))
            .collect::<Result<Vec<T>>>()?;
        Self::new(grid, values)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.grid.offsets + j]
    }

    /// Grid value with angular wrap-around, φ(θ + π, u) = φ(θ, −u), and zero
    /// outside the offset range.
    fn cell(&self, i: isize, j: isize) -> T {
        let na = self.grid.angles as isize;
        let no = self.grid.offsets as isize;
        let wraps = i.div_euclid(na);
        let i = i.rem_euclid(na);
        let j = if wraps % 2 != 0 { no - 1 - j } else { j };
        if j < 0 || j >= no {
            T::zero()
        } else {
            self.get(i as usize, j as usize)
        }
    }

    /// Bicubic Catmull–Rom interpolation at (θ, u).
    pub fn eval(&self, theta: T, u: T) -> T {
        let g = &self.grid;
        if u.abs() > g.u_max {
            return T::zero();
        }
        let dt = T::PI() / lit(g.angles as f64);
        let du = (g.u_max + g.u_max) / lit((g.offsets - 1) as f64);
        let a = theta / dt;
        let b = (u + g.u_max) / du;
        let (i0, j0) = (a.floor(), b.floor());
        let (ta, tb) = (a - i0, b - j0);
        let i0 = to_f64(i0) as isize;
        let j0 = to_f64(j0) as isize;
        let mut rows = [T::zero(); 4];
        for (di, row) in rows.iter_mut().enumerate() {
            let i = i0 + di as isize - 1;
            let p = [
                self.cell(i, j0 - 1),
                self.cell(i, j0),
                self.cell(i, j0 + 1),
                self.cell(i, j0 + 2),
            ];
            *row = CatmullRom::interpolate(p, tb);
        }
        CatmullRom::interpolate(rows, ta)
    }

    /// Evaluation on a line chart of ℝ².
    pub fn eval_line(&self, g: &GeodesicParam<T>) -> Result<T> {
        match *g {
            GeodesicParam::Line2 { theta, u } => Ok(self.eval(theta, u)),
            _ => Err(Error::invalid("sinograms are indexed by lines in ℝ²")),
        }
    }

    /// Plain-text form: a header, then one line of values per angle.
    pub fn to_text(&self) -> String {
        let g = &self.grid;
        let mut s = String::new();
        let _ = writeln!(s, "{MAGIC}");
        let _ = writeln!(
            s,
            "space {} {} {}",
            self.space.curvature.name(),
            self.space.n,
            self.space.k
        );
        let _ = writeln!(s, "angles {}", g.angles);
        let _ = writeln!(s, "offsets {} {:.17e}", g.offsets, to_f64(g.u_max));
        for i in 0..g.angles {
            let row: Vec<String> = (0..g.offsets)
                .map(|j| format!("{:.17e}", to_f64(self.get(i, j))))
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::invalid(format!("sinogram file: {m}"));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some(MAGIC) {
            return Err(bad("missing header"));
        }
        let space = lines.next().ok_or_else(|| bad("missing space line"))?;
        if space.split_whitespace().collect::<Vec<_>>() != ["space", "euclidean", "2", "1"] {
            return Err(bad("only euclidean n=2 k=1 sinograms are supported"));
        }
        let field = |line: Option<&str>, key: &str| -> Result<Vec<String>> {
            let line = line.ok_or_else(|| bad(&format!("missing {key}")))?;
            let mut it = line.split_whitespace();
            if it.next() != Some(key) {
                return Err(bad(&format!("expected {key}")));
            }
            Ok(it.map(str::to_owned).collect())
        };
        let parse_usize = |s: &str| s.parse::<usize>().map_err(|_| bad("bad count"));
        let parse_f = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| bad(&format!("bad number {s}")))
        };
        let angles = field(lines.next(), "angles")?;
        let offsets = field(lines.next(), "offsets")?;
        if angles.len() != 1 || offsets.len() != 2 {
            return Err(bad("malformed grid lines"));
        }
        let grid = SinogramGrid {
            angles: parse_usize(&angles[0])?,
            offsets: parse_usize(&offsets[0])?,
            u_max: lit(parse_f(&offsets[1])?),
        };
        let mut values = Vec::with_capacity(grid.angles * grid.offsets);
        for line in lines {
            for tok in line.split_whitespace() {
                values.push(lit(parse_f(tok)?));
            }
        }
        Self::new(grid, values)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// CSV with columns theta, u, value.
    pub fn to_csv(&self) -> String {
        let g = &self.grid;
        let mut s = String::from("theta,u,value\n");
        for i in 0..g.angles {
            for j in 0..g.offsets {
                let _ = writeln!(
                    s,
                    "{:.16e},{:.16e},{:.16e}",
                    to_f64(g.angle(i)),
                    to_f64(g.offset(j)),
                    to_f64(self.get(i, j))
                );
            }
        }
        s
    }
}
