//! Globally adaptive Gauss–Kronrod (10/21) integration of vector-valued
//! functions on a finite interval.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets the tolerance or the panel budget is exhausted. Error
//! estimates follow QUADPACK's `qk21` heuristic, applied per component; the
//! panel error is the largest component error.

/// Kronrod abscissae on `[-1, 1]` (non-negative half, descending). Odd
/// indices are the Gauss 10-point nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689002848,
    0.973906528517171720077964012084452053,
    0.930157491355708226001207180059508346,
    0.865063366688984510732096688423493049,
    0.780817726586416897063717578345042377,
    0.679409568299024406234327365114873576,
    0.562757134668604683339000099272694141,
    0.433395394129247190799265943165784162,
    0.294392862701460198131126603103865566,
    0.148874338981631210884826001129719985,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.0116946388673718742780643960621920484,
    0.0325581623079647274788189724593897606,
    0.0547558965743519960313813002445801764,
    0.0750396748109199527670431409161900094,
    0.0931254545836976055350654650833663444,
    0.109387158802297641899210590325804960,
    0.123491976262065851077958109831074160,
    0.134709217311473325928054001771706833,
    0.142775938577060080797094273138717061,
    0.147739104901338491374841515972068046,
    0.149445554002916905664936468389821204,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.0666713443086881375935688098933317929,
    0.149451349150580593145776339657697332,
    0.219086362515982043995534934228163192,
    0.269266719309996355091226921569469353,
    0.295524224714752870173892994651338329,
];

const RULE_POINTS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Maximum number of panels kept at once.
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-12,
            max_panels: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const N: usize> {
    pub value: [f64; N],
    pub error: f64,
    pub evaluations: usize,
    /// False when the panel budget ran out before the tolerance was met.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: f64,
}

fn gauss_kronrod_21<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Panel<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let abs_half = half.abs();

    let fc = f(center);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    let mut resabs = [0.0; N];
    let mut fv = [[0.0; N]; RULE_POINTS];
    fv[10] = fc;
    for i in 0..N {
        kronrod[i] = WGK[10] * fc[i];
        resabs[i] = (WGK[10] * fc[i]).abs();
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[20 - j] = f2;
        for i in 0..N {
            kronrod[i] += WGK[j] * (f1[i] + f2[i]);
            resabs[i] += WGK[j] * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                gauss[i] += WG[j / 2] * (f1[i] + f2[i]);
            }
        }
    }

    let mut value = [0.0; N];
    let mut error = 0.0f64;
    for i in 0..N {
        let mean = 0.5 * kronrod[i];
        let mut resasc = WGK[10] * (fc[i] - mean).abs();
        for j in 0..10 {
            resasc += WGK[j] * ((fv[j][i] - mean).abs() + (fv[20 - j][i] - mean).abs());
        }
        let resasc = resasc * abs_half;
        let mut err = ((kronrod[i] - gauss[i]) * half).abs();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        let resabs = resabs[i] * abs_half;
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * resabs);
        }
        value[i] = kronrod[i] * half;
        error = error.max(err);
    }
    Panel { a, b, value, error }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<const N: usize, F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Integral<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let mut panels = vec![gauss_kronrod_21(&mut f, a, b)];
    let mut evaluations = RULE_POINTS;
    let totals = |panels: &[Panel<N>]| {
        let mut value = [0.0; N];
        let mut error = 0.0;
        for p in panels {
            for i in 0..N {
                value[i] += p.value[i];
            }
            error += p.error;
        }
        (value, error)
    };

    loop {
        let (value, error) = totals(&panels);
        let scale = value.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = tol.abs.max(tol.rel * scale);
        if error <= target || panels.len() >= tol.max_panels {
            return Integral {
                value,
                error,
                evaluations,
                converged: error <= target,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval can no longer be split in floating point
            return Integral {
                value,
                error,
                evaluations,
                converged: false,
            };
        }
        panels.push(gauss_kronrod_21(&mut f, a, mid));
        panels.push(gauss_kronrod_21(&mut f, mid, b));
        evaluations += 2 * RULE_POINTS;
    }
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Integral<1>
where
    F: FnMut(f64) -> f64,
{
    integrate(|x| [f(x)], a, b, tol)
}
