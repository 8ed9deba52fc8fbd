//! Closed-form stability theory.
//!
//! With `E[xi] = u p` and `E[eps] = u p^c` the expected weight ratio of the
//! greedy searcher to the prior searcher on a `c`-ary tree of height `H`,
//! using the `2 L c^H` hitting-time estimate, is
//!
//! ```text
//! z~(u, p, c, H) = 2 c^H (u p^c + 1) / (u p + 1)
//! ```
//!
//! `z~ < 1` means the greedy searcher wins on average. `c` and `H` are real
//! here so the formulas can be scanned and differentiated continuously.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn z_tilde(u: f64, p: f64, c: f64, h: f64) -> f64 {
    2.0 * c.powf(h) * (u * p.powf(c) + 1.0) / (u * p + 1.0)
}

/// `ln z~`, evaluated in log space so large `c^H` do not overflow.
pub fn ln_z_tilde(u: f64, p: f64, c: f64, h: f64) -> f64 {
    std::f64::consts::LN_2 + h * c.ln() + (u * p.powf(c)).ln_1p() - (u * p).ln_1p()
}

/// Distribution-agnostic ratio `(E[eps] + 1) m / (L (1 + E[xi]))`.
pub fn z_general(e_eps: f64, e_xi: f64, mfpt: f64, path_length: usize) -> f64 {
    assert!(path_length >= 1, "path length must be >= 1");
    (e_eps + 1.0) * mfpt / (path_length as f64 * (1.0 + e_xi))
}

/// Exact mean first passage time on a complete `c`-ary tree of height `h`,
/// from the root to a node at depth `l`.
pub fn mfpt_cary_exact(c: u32, h: u32, l: u32) -> Result<f64> {
    if c < 2 || h < 1 {
        return Err(Error::InvalidParams(format!("need c >= 2 and H >= 1, got c={c}, H={h}")));
    }
    if l > h {
        return Err(Error::InvalidParams(format!("depth L={l} exceeds height H={h}")));
    }
    let c = c as f64;
    let ch1 = c.powi(h as i32 + 1);
    let l_f = l as f64;
    let linear = l_f * (2.0 * ch1 / (c - 1.0) - 1.0);
    let geometric = 2.0 * ch1 * (1.0 - c.powi(-(l as i32))) / (c - 1.0).powi(2);
    Ok(linear - geometric)
}

/// Large-`c` approximation `2 L c^H`.
pub fn mfpt_cary_approx(c: f64, h: f64, l: f64) -> f64 {
    2.0 * l * c.powf(h)
}

/// Minimizer of `z~` over `p` in the `u >> 1` limit: `[u (c - 1)]^(-1/c)`.
pub fn optimal_p(u: f64, c: f64) -> Result<f64> {
    let base = u * (c - 1.0);
    if !(base > 1.0) {
        return Err(Error::NoInteriorOptimum(base));
    }
    Ok(base.powf(-1.0 / c))
}

/// `z~` at the optimal `p`.
pub fn z_star(u: f64, c: f64, h: f64) -> Result<f64> {
    Ok(z_tilde(u, optimal_p(u, c)?, c, h))
}

/// Extra weight below which the prior searcher wins for every `(p, c)`:
/// `u_c = H e^(H + 1)`.
pub fn critical_u(h: f64) -> f64 {
    h * (h + 1.0).exp()
}

/// Exact root of `dz~/dp`, i.e. of `u (c-1) p^c + c p^(c-1) - 1` on `(0, 1)`,
/// by bisection. The left side is increasing in `p`, so the root is unique
/// whenever it exists.
pub fn exact_optimal_p(u: f64, c: f64) -> Result<f64> {
    let f = |p: f64| u * (c - 1.0) * p.powf(c) + c * p.powf(c - 1.0) - 1.0;
    if !(f(1.0) > 0.0) || u <= 0.0 {
        return Err(Error::NoInteriorOptimum(u * (c - 1.0)));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryPoint {
    pub u: f64,
    pub p: f64,
    pub c: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub z_tilde: f64,
    pub ln_z: f64,
}

impl TheoryPoint {
    pub fn evaluate(u: f64, p: f64, c: f64, h: f64) -> Result<Self> {
        if !(u >= 0.0) || !(0.0..=1.0).contains(&p) || !(c >= 2.0) || !(h >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "need u >= 0, p in [0,1], c >= 2, H >= 1; got u={u}, p={p}, c={c}, H={h}"
            )));
        }
        let ln_z = ln_z_tilde(u, p, c, h);
        Ok(Self {
            u,
            p,
            c,
            h,
            z_tilde: ln_z.exp(),
            ln_z,
        })
    }
}

/// Parameter plane of a critical curve or a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Plane {
    /// `x = u`, `y = p` at fixed `(c, H)`.
    UP,
    /// `x = c`, `y = H` at fixed `(u, p)` for sweeps. Critical curves in this
    /// plane are scanned per `H` column along `c` (see [`CurveSpec`]).
    CH,
}

/// What is held fixed for a critical curve, and how the scan is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CurveSpec {
    /// Columns are `u` values, roots are searched along `p`.
    Up { c: f64, h: f64 },
    /// Columns are `H` values, roots are searched along `c`.
    Ch { u: f64, p: f64 },
}

impl CurveSpec {
    pub fn plane(&self) -> Plane {
        match self {
            CurveSpec::Up { .. } => Plane::UP,
            CurveSpec::Ch { .. } => Plane::CH,
        }
    }

    fn ln_z(&self, x: f64, y: f64) -> f64 {
        match *self {
            CurveSpec::Up { c, h } => ln_z_tilde(x, y, c, h),
            CurveSpec::Ch { u, p } => ln_z_tilde(u, p, y, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveShape {
    Empty,
    Monotonic,
    /// Non-monotonic; in particular some column crosses the level set twice.
    Bell,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalCurve {
    pub plane: Plane,
    pub fixed: CurveSpec,
    /// `(x, y)` pairs with `|ln z~| <= tol`, ordered by column then `y`.
    pub points: Vec<(f64, f64)>,
    pub shape: CurveShape,
}

pub const DEFAULT_CONTOUR_TOL: f64 = 1e-10;

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Level set `z~ = 1`: for every column `x` the roots of `ln z~(x, .)` are
/// bracketed by sign changes on `y_grid` and refined by bisection.
pub fn critical_curve(
    fixed: CurveSpec,
    x_grid: &[f64],
    y_grid: &[f64],
    tol: f64,
) -> Result<CriticalCurve> {
    if !strictly_increasing(x_grid) || !strictly_increasing(y_grid) {
        return Err(Error::InvalidParams("grids must be strictly increasing".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams("tolerance must be positive".into()));
    }

    let mut points = Vec::new();
    let mut two_root_column = false;
    let mut single_roots = Vec::new();
    for &x in x_grid {
        let f = |y: f64| fixed.ln_z(x, y);
        let values: Vec<f64> = y_grid.iter().map(|&y| f(y)).collect();
        let mut roots = Vec::new();
        let mut clean_brackets = 0;
        for i in 0..y_grid.len().saturating_sub(1) {
            let (fa, fb) = (values[i], values[i + 1]);
            if fa.abs() <= tol {
                roots.push(y_grid[i]);
                continue;
            }
            if fa.signum() == fb.signum() || fb.abs() <= tol {
                continue;
            }
            roots.push(bisect(&f, y_grid[i], y_grid[i + 1], fa, tol));
            clean_brackets += 1;
        }
        if let (Some(&last_y), Some(&last_f)) = (y_grid.last(), values.last()) {
            if last_f.abs() <= tol {
                roots.push(last_y);
            }
        }
        if clean_brackets >= 2 {
            two_root_column = true;
        }
        if roots.len() == 1 {
            single_roots.push(roots[0]);
        }
        points.extend(roots.into_iter().map(|y| (x, y)));
    }

    let shape = if points.is_empty() {
        CurveShape::Empty
    } else if two_root_column {
        CurveShape::Bell
    } else {
        let up = single_roots.windows(2).all(|w| w[0] <= w[1]);
        let down = single_roots.windows(2).all(|w| w[0] >= w[1]);
        if up || down {
            CurveShape::Monotonic
        } else {
            CurveShape::Bell
        }
    };
    Ok(CriticalCurve {
        plane: fixed.plane(),
        fixed,
        points,
        shape,
    })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> f64 {
    let lo_sign = f_lo.signum();
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() <= tol || hi - lo <= f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid
}
