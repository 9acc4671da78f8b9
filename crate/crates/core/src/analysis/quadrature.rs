//! Line integrals of a planar 1-form `A_x dx + A_y dy` along polylines.

use super::expr::{parse_expr, EvalError, Expr, ParseError};

pub type Point = (f64, f64);

// Recursion depth cap; past it the local Simpson estimate is accepted.
const MAX_DEPTH: u32 = 48;

/// Continuum connection 1-form on the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionField {
    pub ax: Expr,
    pub ay: Expr,
}

impl ConnectionField {
    pub fn new(ax: Expr, ay: Expr) -> Self {
        ConnectionField { ax, ay }
    }

    pub fn parse(ax: &str, ay: &str) -> Result<Self, ParseError> {
        Ok(ConnectionField {
            ax: parse_expr(ax)?,
            ay: parse_expr(ay)?,
        })
    }

    pub fn zero() -> Self {
        ConnectionField {
            ax: Expr::Num(0.0),
            ay: Expr::Num(0.0),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<(f64, f64), EvalError> {
        Ok((self.ax.eval(x, y)?, self.ay.eval(x, y)?))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntegrateError {
    #[error("polyline needs at least two points")]
    TooFewPoints,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("evaluation failed at ({x}, {y}): {source}")]
    Eval {
        x: f64,
        y: f64,
        #[source]
        source: EvalError,
    },
}

/// `∫ A` along the polyline, each segment by adaptive Simpson to absolute
/// tolerance `tol / segments`.
pub fn line_integral(
    conn: &ConnectionField,
    polyline: &[Point],
    tol: f64,
) -> Result<f64, IntegrateError> {
    if polyline.len() < 2 {
        return Err(IntegrateError::TooFewPoints);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(IntegrateError::BadTolerance(tol));
    }
    let per_segment = tol / (polyline.len() - 1) as f64;
    polyline
        .windows(2)
        .map(|w| segment_integral(conn, w[0], w[1], per_segment))
        .sum()
}

/// `∫ A` along the straight segment `p → q`.
pub fn segment_integral(
    conn: &ConnectionField,
    p: Point,
    q: Point,
    tol: f64,
) -> Result<f64, IntegrateError> {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let f = |t: f64| -> Result<f64, IntegrateError> {
        let x = p.0 + t * dx;
        let y = p.1 + t * dy;
        let mut v = 0.0;
        // skip components that cannot contribute, so A_y = 1/x on a
        // horizontal segment through x = 0 is not an error
        if dx != 0.0 {
            v += conn
                .ax
                .eval(x, y)
                .map_err(|source| IntegrateError::Eval { x, y, source })?
                * dx;
        }
        if dy != 0.0 {
            v += conn
                .ay
                .eval(x, y)
                .map_err(|source| IntegrateError::Eval { x, y, source })?
                * dy;
        }
        Ok(v)
    };
    if dx == 0.0 && dy == 0.0 {
        return Ok(0.0);
    }
    adaptive_simpson(&f, 0.0, 1.0, tol)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` with Richardson
/// correction.
pub fn adaptive_simpson<F, E>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<F, E>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, E>
where
    F: Fn(f64) -> Result<f64, E>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_field_integrates_to_zero() {
        let conn = ConnectionField::zero();
        let v = line_integral(&conn, &[(0.0, 0.0), (3.0, 1.0), (-2.0, 5.0)], 1e-10).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn landau_gauge_unit_square() {
        let conn = ConnectionField::parse("0", "0.2*x").unwrap();
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)];
        let v = line_integral(&conn, &square, 1e-12).unwrap();
        assert!((v - 0.2).abs() < 1e-14);
    }

    #[test]
    fn angular_form_winds_once() {
        let conn = ConnectionField::parse("-y/(x^2+y^2)", "x/(x^2+y^2)").unwrap();
        let gon: Vec<Point> = (0..=64)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 64.0;
                (t.cos(), t.sin())
            })
            .collect();
        let v = line_integral(&conn, &gon, 1e-9).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-3);
    }

    #[test]
    fn reversal_flips_sign_and_concatenation_adds() {
        let conn = ConnectionField::parse("sin(x*y)", "exp(-x^2) + y").unwrap();
        let p: Vec<Point> = vec![(0.0, 0.0), (1.0, 0.5), (2.0, -1.0)];
        let q: Vec<Point> = vec![(2.0, -1.0), (0.5, 1.5)];
        let tol = 1e-13;
        let a = line_integral(&conn, &p, tol).unwrap();
        let rev: Vec<Point> = p.iter().rev().copied().collect();
        let b = line_integral(&conn, &rev, tol).unwrap();
        assert!((a + b).abs() < 1e-12);

        // polynomial of degree ≤ 3 along each segment: Simpson is exact
        let cubic = ConnectionField::parse("x*y", "x^2 - y").unwrap();
        let pq: Vec<Point> = p.iter().chain(&q[1..]).copied().collect();
        let whole = line_integral(&cubic, &pq, tol).unwrap();
        let parts =
            line_integral(&cubic, &p, tol).unwrap() + line_integral(&cubic, &q, tol).unwrap();
        assert!((whole - parts).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let conn = ConnectionField::parse("0", "1/x").unwrap();
        assert!(matches!(
            line_integral(&conn, &[(0.0, 0.0)], 1e-6),
            Err(IntegrateError::TooFewPoints)
        ));
        assert!(matches!(
            line_integral(&conn, &[(0.0, 0.0), (0.0, 1.0)], 0.0),
            Err(IntegrateError::BadTolerance(_))
        ));
        assert!(matches!(
            line_integral(&conn, &[(0.0, 0.0), (0.0, 1.0)], 1e-6),
            Err(IntegrateError::Eval { .. })
        ));
        // A_y is irrelevant on a horizontal segment
        assert_eq!(
            line_integral(&conn, &[(-1.0, 0.0), (1.0, 0.0)], 1e-6).unwrap(),
            0.0
        );
    }
}
