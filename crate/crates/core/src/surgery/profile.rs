use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PANELS: usize = 16;
const PANEL_ORDER: usize = 24;
const SAMPLES: usize = 801;

/// Transition shape `S(u) = F_κ(√u)` with
/// `F_κ(x) = ∫₀ˣ exp(−κs²/(1−s²)) ds / ∫₀¹ exp(−κs²/(1−s²)) ds`.
///
/// `F_κ` is odd, so `S` has a square-root onset (vertical tangent) at 0, and
/// it is flat to all orders at 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub kappa: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { kappa: 1.0 }
    }
}

fn density(kappa: f64, s: f64) -> f64 {
    let s = s.abs();
    if s >= 1.0 {
        0.0
    } else {
        (-kappa * s * s / (1.0 - s * s)).exp()
    }
}

/// Composite Gauss-Legendre on `[a, b]`.
fn composite(gl: &GaussLegendre, a: f64, b: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let w = (b - a) / panels as f64;
    (0..panels).map(|k| gl.integrate(a + k as f64 * w, a + (k + 1) as f64 * w, &f)).sum()
}

#[derive(Clone, Debug)]
pub(crate) struct Transition {
    kappa: f64,
    norm: f64,
    gl: GaussLegendre,
}

impl Transition {
    pub(crate) fn new(shape: &Shape) -> Result<Transition> {
        if !(shape.kappa > 0.0 && shape.kappa.is_finite()) {
            return Err(Error::InvalidShape(format!(
                "kappa must be positive and finite (got {}); otherwise S is not flat at 1",
                shape.kappa
            )));
        }
        let gl = GaussLegendre::new(PANEL_ORDER).expect("degree >= 2");
        let norm = composite(&gl, 0.0, 1.0, PANELS, |s| density(shape.kappa, s));
        Ok(Transition { kappa: shape.kappa, norm, gl })
    }

    /// `F_κ(x)` for `x ∈ [−1, 1]`, clamped outside.
    pub(crate) fn f(&self, x: f64) -> f64 {
        if x >= 1.0 {
            return 1.0;
        }
        if x <= -1.0 {
            return -1.0;
        }
        composite(&self.gl, 0.0, x, PANELS, |s| density(self.kappa, s)) / self.norm
    }

    pub(crate) fn df(&self, x: f64) -> f64 {
        density(self.kappa, x) / self.norm
    }

    /// `S(u) = F(√u)`, with `S = 0` below 0 and `S = 1` above 1.
    pub(crate) fn s(&self, u: f64) -> f64 {
        if u <= 0.0 {
            0.0
        } else if u >= 1.0 {
            1.0
        } else {
            self.f(u.sqrt())
        }
    }

    /// `∫_{u0}^1 S(u) du = ∫_{√u0}^1 2x F(x) dx`.
    pub(crate) fn tail_integral(&self, u0: f64) -> f64 {
        let x0 = u0.clamp(0.0, 1.0).sqrt();
        composite(&self.gl, x0, 1.0, 4, |x| 2.0 * x * self.f(x))
    }
}

/// Surgery profile `(r, s)` with neck parameter `c`.
///
/// `r'(t) = ½ + ½S((t−c)/c)`, `s'(t) = ½ − ½S((t−c)/c)` on `[c, 2c]`, and
/// `r(t) = t`, `s(t) = 0` from `2c` on.
#[derive(Clone, Debug)]
pub struct SurgeryProfile {
    pub c: f64,
    pub shape: Shape,
    pub t_max: f64,
    pub t: Vec<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub r_prime: Vec<f64>,
    pub s_prime: Vec<f64>,
    pub neck_width: f64,
    transition: Transition,
}

pub fn make_profile(c: f64, shape: &Shape) -> Result<SurgeryProfile> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let transition = Transition::new(shape)?;
    let t_max = 3.0 * c;
    let mut p = SurgeryProfile {
        c,
        shape: shape.clone(),
        t_max,
        t: vec![],
        r: vec![],
        s: vec![],
        r_prime: vec![],
        s_prime: vec![],
        neck_width: 0.0,
        transition,
    };
    p.t = (0..SAMPLES).map(|i| c + (t_max - c) * i as f64 / (SAMPLES - 1) as f64).collect();
    p.r = p.t.iter().map(|&t| p.r_at(t)).collect();
    p.s = p.t.iter().map(|&t| p.s_at(t)).collect();
    p.r_prime = p.t.iter().map(|&t| p.r_prime_at(t)).collect();
    p.s_prime = p.t.iter().map(|&t| p.s_prime_at(t)).collect();
    p.neck_width = neck_width(&p);
    Ok(p)
}

impl SurgeryProfile {
    pub fn r_prime_at(&self, t: f64) -> f64 {
        0.5 + 0.5 * self.transition.s((t - self.c) / self.c)
    }

    pub fn s_prime_at(&self, t: f64) -> f64 {
        0.5 - 0.5 * self.transition.s((t - self.c) / self.c)
    }

    /// `r(t) = 2c − ∫_t^{2c} r'`, valid for `t ≥ c`.
    pub fn r_at(&self, t: f64) -> f64 {
        let c = self.c;
        if t >= 2.0 * c {
            return t;
        }
        2.0 * c - (2.0 * c - t) / 2.0 - c / 2.0 * self.transition.tail_integral((t - c) / c)
    }

    /// `s(t) = −∫_t^{2c} s'`, valid for `t ≥ c`.
    pub fn s_at(&self, t: f64) -> f64 {
        let c = self.c;
        if t >= 2.0 * c {
            return 0.0;
        }
        -((2.0 * c - t) / 2.0 - c / 2.0 * self.transition.tail_integral((t - c) / c))
    }

    /// `∫₀¹ S(u) du`.
    pub fn shape_integral(&self) -> f64 {
        self.transition.tail_integral(0.0)
    }

    /// Neck curve `x ↦ (c + c x², ½ + F(x)/2)` for `x ∈ [−1, 1]`: the graph of
    /// `r'` for `x ≥ 0` and of `s'` for `x ≤ 0`, and its velocity.
    pub fn neck_curve(&self, x: f64) -> ([f64; 2], [f64; 2]) {
        let c = self.c;
        let tr = &self.transition;
        ([c + c * x * x, 0.5 + 0.5 * tr.f(x)], [2.0 * c * x, 0.5 * tr.df(x)])
    }
}

pub fn neck_width(p: &SurgeryProfile) -> f64 {
    -p.r_at(p.c) - p.s_at(p.c)
}

/// Numerical check of the profile conditions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    /// `max |r(t) − t| + |s(t)|` over samples with `t ≥ 2c`.
    pub outer_defect: f64,
    /// `|r'(c) − ½| + |s'(c) − ½|`.
    pub midpoint_defect: f64,
    /// Largest decrease of `r'` between consecutive samples (0 when monotone).
    pub r_prime_decrease: f64,
    /// Largest increase of `s'` between consecutive samples.
    pub s_prime_increase: f64,
    /// Largest one-sided unit-tangent mismatch of the joined curve at its
    /// junctions, including the deviation from vertical at `t = c`.
    pub c1_defect: f64,
    pub pass: bool,
}

pub const PROFILE_TOL: f64 = 1e-8;

pub fn check_profile(p: &SurgeryProfile) -> ProfileReport {
    let c = p.c;
    let outer_defect = p
        .t
        .iter()
        .zip(p.r.iter().zip(&p.s))
        .filter(|(t, _)| **t >= 2.0 * c)
        .map(|(t, (r, s))| (r - t).abs() + s.abs())
        .fold(0.0, f64::max);
    let midpoint_defect = (p.r_prime_at(c) - 0.5).abs() + (p.s_prime_at(c) - 0.5).abs();
    let r_prime_decrease = p.r_prime.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max);
    let s_prime_increase = p.s_prime.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);

    let unit = |x: f64| {
        let (_, v) = p.neck_curve(x);
        let n = v[0].hypot(v[1]);
        [v[0] / n, v[1] / n]
    };
    // The neck curve is smooth away from the junction at t = c and the joins
    // with the flat pieces at t = 2c; compare one-sided tangents there.
    let d = 1e-10;
    let (l, r) = (unit(-d), unit(d));
    let (top, bottom) = (unit(1.0 - d), unit(-1.0 + d));
    let c1_defect = [
        (l[0] - r[0]).hypot(l[1] - r[1]),
        unit(0.0)[0].abs(),
        (top[0] - 1.0).hypot(top[1]),
        (bottom[0] + 1.0).hypot(bottom[1]),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let pass = outer_defect <= PROFILE_TOL
        && midpoint_defect <= PROFILE_TOL
        && r_prime_decrease <= PROFILE_TOL
        && s_prime_increase <= PROFILE_TOL
        && c1_defect <= PROFILE_TOL;
    ProfileReport { outer_defect, midpoint_defect, r_prime_decrease, s_prime_increase, c1_defect, pass }
}

/// Profile whose neck width equals `w`, found by bisection on `c`.
pub fn profile_with_neck_width(w: f64, shape: &Shape) -> Result<SurgeryProfile> {
    if !(w < 0.0 && w.is_finite()) {
        return Err(Error::InvalidParameter(format!("neck width of this family is negative, got {w}")));
    }
    let width = |c: f64| make_profile(c, shape).map(|p| p.neck_width);
    let (mut lo, mut hi) = (1e-12, 1.0);
    while width(hi)? > w {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::InvalidParameter(format!("no profile with neck width {w}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if width(mid)? > w {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    make_profile(0.5 * (lo + hi), shape)
}

/// Convex test primitive `f ≥ 0` on `[0, ∞)` with `f(0) = 0`, increasing.
#[derive(Clone, Copy, Debug)]
pub struct ConvexPrimitive {
    pub f: fn(f64) -> f64,
    pub df: fn(f64) -> f64,
}

impl ConvexPrimitive {
    pub fn quadratic() -> ConvexPrimitive {
        ConvexPrimitive { f: |x| 0.5 * x * x, df: |x| x }
    }

    fn inverse(&self, t: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, 1.0);
        while (self.f)(hi) < t {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (self.f)(mid) < t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Path of profiles from `start` to `end`; `end = None` is the identity
/// profile `r(t) = t`, `s = 0`, whose sheets meet at `f = 0`.
#[derive(Clone, Debug)]
pub struct ProfileFamily {
    pub start: Option<SurgeryProfile>,
    pub end: Option<SurgeryProfile>,
}

impl ProfileFamily {
    /// The family `c_τ = τc`, τ from 1 to 0, ending at the identity.
    pub fn to_identity(p: SurgeryProfile) -> ProfileFamily {
        ProfileFamily { start: Some(p), end: None }
    }

    pub fn constant(p: Option<SurgeryProfile>) -> ProfileFamily {
        ProfileFamily { start: p.clone(), end: p }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxReport {
    /// `∮ p dx` over the start neck minus the same over the end neck.
    pub flux: f64,
    /// Neck width of the start profile (0 for the identity).
    pub neck_width: f64,
    pub sign_convention: String,
}

/// `∮ p dx` around the neck cycle of the two sheets `d(r∘f)` and `d(s∘f)`:
/// out along the r-sheet and back along the s-sheet over `f ∈ [c, 2c]`, closed
/// by vertical segments which do not contribute.
fn neck_action(p: Option<&SurgeryProfile>, prim: &ConvexPrimitive, order: usize, top: f64) -> Result<f64> {
    let gl = GaussLegendre::new(order).map_err(|e| Error::Quadrature(e.to_string()))?;
    match p {
        None => {
            let x1 = prim.inverse(top);
            Ok(composite(&gl, 0.0, x1, 8, prim.df))
        }
        Some(p) => {
            let (xc, x2) = (prim.inverse(p.c), prim.inverse(2.0 * p.c));
            // x = x_c + (x_2c − x_c) y² removes the square-root onset at x_c.
            let span = x2 - xc;
            let inner = composite(&gl, 0.0, 1.0, 8, |y| {
                let x = xc + span * y * y;
                let t = (prim.f)(x);
                (p.r_prime_at(t) - p.s_prime_at(t)) * (prim.df)(x) * 2.0 * span * y
            });
            let outer = if top > 2.0 * p.c { composite(&gl, x2, prim.inverse(top), 8, prim.df) } else { 0.0 };
            Ok(inner + outer)
        }
    }
}

pub fn profile_flux(family: &ProfileFamily, prim: &ConvexPrimitive) -> Result<FluxReport> {
    let cs = [family.start.as_ref(), family.end.as_ref()];
    let top = 2.0 * cs.iter().flatten().map(|p| p.c).fold(0.0, f64::max);
    let neck_width = family.start.as_ref().map_or(0.0, |p| p.neck_width);
    let sign_convention = "flux = action(start) - action(end), action = oint p dx along the neck".to_string();
    if top == 0.0 {
        return Ok(FluxReport { flux: 0.0, neck_width, sign_convention });
    }
    let mut results = [0.0; 2];
    for (k, order) in [48usize, 96].into_iter().enumerate() {
        let a = neck_action(family.start.as_ref(), prim, order, top)?;
        let b = neck_action(family.end.as_ref(), prim, order, top)?;
        results[k] = a - b;
    }
    if (results[0] - results[1]).abs() > 1e-10 * (1.0 + results[1].abs()) {
        return Err(Error::Quadrature(format!("orders 48 and 96 disagree: {} vs {}", results[0], results[1])));
    }
    Ok(FluxReport { flux: results[1], neck_width, sign_convention })
}
