//! Parametric lower-boundary curves of the entropy plane for input
//! dimensions 2, 3, and 4, plus the machinery to measure how far below the
//! boundary a given point sits.
//!
//! Each curve is a union of branches.  A branch maps a parameter `a` to a
//! point `(S, S~)`; its mirror image swaps the coordinates, reflecting the
//! exchange symmetry between a channel and its complement.  On every branch
//! the first coordinate is strictly monotone in `a`, so a branch can be
//! inverted by bisection and the full boundary queried as a function
//! `S -> S~` (taking the minimum over branches that cover the given `S`).

use crate::channel::xlnx;
use crate::error::{Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;

/// Entropy of the pair `{p, 1 - p}`.
fn h2(p: f64) -> f64 {
    -xlnx(p) - xlnx(1.0 - p)
}

fn qubit_curve(a: f64) -> (f64, f64) {
    (h2(a), h2(0.5 - a))
}

fn qutrit_curve(a: f64) -> (f64, f64) {
    let third = 1.0 / 3.0;
    (h2(a), 3f64.ln() / 3.0 - xlnx(third + a) - xlnx(third - a))
}

fn dim4_curve1(a: f64) -> (f64, f64) {
    (h2(a), LN_2 - xlnx(0.25 + a) - xlnx(0.25 - a))
}

fn dim4_curve2(a: f64) -> (f64, f64) {
    (4f64.ln() / 4.0 - xlnx(1.0 - a) - xlnx(a - 0.5), h2(a))
}

/// One parametric piece of a boundary curve.
#[derive(Debug, Clone)]
pub struct BoundaryBranch {
    n: usize,
    label: &'static str,
    a_min: f64,
    a_max: f64,
    base: fn(f64) -> (f64, f64),
    mirrored: bool,
}

impl BoundaryBranch {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Branch name, e.g. `curve`, `mirror1`; stable across runs and suitable
    /// as an output tag.
    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn a_min(&self) -> f64 {
        self.a_min
    }

    pub fn a_max(&self) -> f64 {
        self.a_max
    }

    fn point_at(&self, a: f64) -> (f64, f64) {
        let (s, s_tilde) = (self.base)(a);
        if self.mirrored {
            (s_tilde, s)
        } else {
            (s, s_tilde)
        }
    }

    /// The point `(S, S~)` at parameter `a`.
    pub fn eval(&self, a: f64) -> Result<(f64, f64)> {
        if !a.is_finite() || a < self.a_min - 1e-12 || a > self.a_max + 1e-12 {
            return Err(Error::InvalidParameter {
                context: format!(
                    "parameter {a} outside [{}, {}] on branch {}",
                    self.a_min, self.a_max, self.label
                ),
            });
        }
        Ok(self.point_at(a.clamp(self.a_min, self.a_max)))
    }

    /// `points` evenly spaced samples over the parameter range, endpoints
    /// included.
    pub fn sample(&self, points: usize) -> Result<Vec<(f64, f64)>> {
        if points < 2 {
            return Err(Error::InvalidParameter {
                context: format!("need at least 2 sample points, got {points}"),
            });
        }
        let step = (self.a_max - self.a_min) / (points - 1) as f64;
        Ok((0..points)
            .map(|k| self.point_at((self.a_min + step * k as f64).clamp(self.a_min, self.a_max)))
            .collect())
    }

    /// The range of the first coordinate over the branch, as `(low, high)`.
    pub fn s_range(&self) -> (f64, f64) {
        let lo = self.point_at(self.a_min).0;
        let hi = self.point_at(self.a_max).0;
        if lo <= hi {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    /// Whether the first coordinate grows with the parameter.
    fn s_increasing(&self) -> bool {
        self.point_at(self.a_max).0 >= self.point_at(self.a_min).0
    }

    /// The parameter at which the first coordinate attains the branch
    /// maximum (`high = true`) or minimum.
    fn s_extremum_parameter(&self, high: bool) -> f64 {
        if self.s_increasing() == high {
            self.a_max
        } else {
            self.a_min
        }
    }

    /// Inverts the monotone map `a -> S(a)` by bisection; `s` must already
    /// lie strictly inside [`BoundaryBranch::s_range`] (queries at the range
    /// edges are answered exactly by the endpoint parameters instead).
    ///
    /// Where the curve has a quadratic extremum in `S` (the corners of the
    /// plane), rounding makes the computed `S(a)` constant — up to an
    /// ulp-level wobble — over a parameter stretch of order `sqrt(eps)`;
    /// every parameter on that plateau is an equally valid preimage of `s`,
    /// so the bisection is steered to the plateau edge with the larger
    /// `S`-side position, whose `S~` is the smallest value consistent with
    /// the rounded input — the right choice for a lower envelope.
    fn invert_s(&self, s: f64) -> f64 {
        // Tolerance for the non-monotone ulp wobble of the evaluated curve.
        const S_EVAL_NOISE: f64 = 1e-15;
        let (mut lo, mut hi) = (self.a_min, self.a_max);
        if self.s_increasing() {
            // lo converges to the largest parameter with S(a) <= s.
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if self.point_at(mid).0 <= s + S_EVAL_NOISE {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-16 {
                    break;
                }
            }
            lo
        } else {
            // hi converges to the smallest parameter with S(a) <= s.
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if self.point_at(mid).0 > s + S_EVAL_NOISE {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-16 {
                    break;
                }
            }
            hi
        }
    }
}

fn branch(
    n: usize,
    label: &'static str,
    a_min: f64,
    a_max: f64,
    base: fn(f64) -> (f64, f64),
    mirrored: bool,
) -> BoundaryBranch {
    BoundaryBranch { n, label, a_min, a_max, base, mirrored }
}

/// The boundary branches for input dimension `n`.  Known for `n` in
/// `{2, 3, 4}`; other dimensions are refused rather than extrapolated.
pub fn boundary_curves(n: usize) -> Result<Vec<BoundaryBranch>> {
    match n {
        // A single self-mirrored branch from (0, ln 2) to (ln 2, 0).
        2 => Ok(vec![branch(2, "curve", 0.0, 0.5, qubit_curve, false)]),
        // From (0, ln 3) down to the symmetric point, then its mirror image
        // continuing to (ln 3, 0).
        3 => Ok(vec![
            branch(3, "curve", 0.0, 1.0 / 3.0, qutrit_curve, false),
            branch(3, "mirror", 0.0, 1.0 / 3.0, qutrit_curve, true),
        ]),
        // Four pieces chaining (0, ln 4) -> (h(1/4), (3/2) ln 2)
        // -> (ln 2, ln 2) -> ((3/2) ln 2, h(1/4)) -> (ln 4, 0).
        4 => Ok(vec![
            branch(4, "curve1", 0.0, 0.25, dim4_curve1, false),
            branch(4, "curve2", 0.5, 0.75, dim4_curve2, false),
            branch(4, "mirror1", 0.0, 0.25, dim4_curve1, true),
            branch(4, "mirror2", 0.5, 0.75, dim4_curve2, true),
        ]),
        _ => Err(Error::Unsupported {
            context: format!("boundary curves are known for n in {{2, 3, 4}}, got {n}"),
        }),
    }
}

/// The boundary as a function of the first coordinate: the smallest `S~`
/// over all branches covering the given `S` in `[0, ln n]`.
pub fn lower_boundary_stilde(n: usize, s: f64) -> Result<f64> {
    let branches = boundary_curves(n)?;
    let ln_n = (n as f64).ln();
    if !s.is_finite() || s < -1e-9 || s > ln_n + 1e-9 {
        return Err(Error::InvalidParameter {
            context: format!("S = {s} outside [0, ln {n}]"),
        });
    }
    let s = s.clamp(0.0, ln_n);
    let mut best: Option<f64> = None;
    for b in &branches {
        let (r_lo, r_hi) = b.s_range();
        if s < r_lo - 1e-9 || s > r_hi + 1e-9 {
            continue;
        }
        let clamped = s.clamp(r_lo, r_hi);
        // Queries at a range edge are answered by the endpoint exactly;
        // bisection near a quadratic extremum could otherwise be thrown off
        // by the ulp wobble of the evaluated curve.
        let a = if clamped >= r_hi {
            b.s_extremum_parameter(true)
        } else if clamped <= r_lo {
            b.s_extremum_parameter(false)
        } else {
            b.invert_s(clamped)
        };
        let s_tilde = b.point_at(a).1;
        best = Some(best.map_or(s_tilde, |cur: f64| cur.min(s_tilde)));
    }
    best.ok_or_else(|| Error::Numerical {
        context: format!("no boundary branch covers S = {s} for n = {n}"),
    })
}

/// Horizontal tolerance granted to a queried point before the boundary is
/// read off.  The boundary has vertical tangents at its corners, where
/// eigenvalue-level noise in a measured `S` would otherwise be amplified
/// into large spurious depths; nudging the query right by a nanonat caps
/// that amplification, at the cost of being blind to violations confined to
/// a nanonat-wide band of `S`.
const S_QUERY_SLACK: f64 = 1e-9;

/// Signed vertical distance from the boundary down to a point: positive when
/// the point lies below the boundary curve (a violation), negative when it
/// lies above, within numerical tolerance zero on the curve itself.  The
/// first coordinate is treated as accurate only to [`S_QUERY_SLACK`].
///
/// The curves span `S` in `[0, ln n]`, but a channel with more Kraus
/// operators than output dimensions can land to the right of that span.
/// There the curves have already descended to `S~ = 0`, which is the only
/// floor left, so the depth continues as `-s_tilde`.
pub fn violation_depth(n: usize, s: f64, s_tilde: f64) -> Result<f64> {
    let ln_n = (n as f64).ln();
    if !s.is_finite() || s < -1e-9 {
        return Err(Error::InvalidParameter {
            context: format!("S = {s} is not a finite nonnegative entropy"),
        });
    }
    if s > ln_n + 1e-9 {
        boundary_curves(n)?; // still refuse unsupported dimensions
        return Ok(-s_tilde);
    }
    let nudged = (s + S_QUERY_SLACK).min(ln_n);
    Ok(lower_boundary_stilde(n, nudged)? - s_tilde)
}
