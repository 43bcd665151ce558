//! Scalar special-function evaluators shared across the crate.
//!
//! Everything here is elementary but numerically delicate: entire
//! trigonometric pairs that stay stable across the oscillatory/overdamped
//! boundary, exponential moment integrals without cancellation, Bessel
//! functions to near machine precision on [0, 50], and Gauss-Legendre rules
//! built from scratch so no module needs an external special-function crate.

/// c(z, t) = cos(t sqrt(z)) continued as an entire function of z.
///
/// For z < 0 this is cosh(t sqrt(-z)); for |z| t^2 below 1e-4 a Taylor
/// expansion in u = z t^2 avoids the 0/0 ambiguity of the square root.
pub fn entire_cos(z: f64, t: f64) -> f64 {
    let u = z * t * t;
    if u.abs() < 1e-4 {
        // cos(sqrt(u)) = 1 - u/2 + u^2/24 - u^3/720, error O(u^4) < 1e-17
        return 1.0 + u * (-0.5 + u * (1.0 / 24.0 + u * (-1.0 / 720.0)));
    }
    if z > 0.0 {
        (t * z.sqrt()).cos()
    } else {
        (t * (-z).sqrt()).cosh()
    }
}

/// s(z, t) = sin(t sqrt(z)) / sqrt(z) continued as an entire function of z.
///
/// For z < 0 this is sinh(t sqrt(-z)) / sqrt(-z); near z t^2 = 0 a Taylor
/// expansion in u = z t^2 is used. s(0, t) = t.
pub fn entire_sinc_sqrt(z: f64, t: f64) -> f64 {
    let u = z * t * t;
    if u.abs() < 1e-4 {
        // sin(sqrt(u))/sqrt(u) * t = t (1 - u/6 + u^2/120 - u^3/5040)
        return t * (1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0 + u * (-1.0 / 5040.0))));
    }
    if z > 0.0 {
        let r = z.sqrt();
        (t * r).sin() / r
    } else {
        let r = (-z).sqrt();
        (t * r).sinh() / r
    }
}

/// Moment integrals I_k = int_0^dt s^k e^{-c s} ds for k = 0..=k_max, c >= 0.
///
/// Evaluated by the all-positive tail series
/// I_k = (k! / c^{k+1}) e^{-x} sum_{j>k} x^j / j!  with x = c dt,
/// which has no cancellation for any x (the naive by-parts recurrence loses
/// roughly log10(k / x) digits per step when x is small). c = 0 falls back to
/// the exact power rule.
pub fn exp_moments(c: f64, dt: f64, k_max: usize) -> Vec<f64> {
    assert!(c >= 0.0 && dt >= 0.0, "exp_moments requires c, dt >= 0");
    let mut out = Vec::with_capacity(k_max + 1);
    if c == 0.0 || c * dt < 1e-300 {
        for k in 0..=k_max {
            out.push(dt.powi(k as i32 + 1) / (k as f64 + 1.0));
        }
        return out;
    }
    let x = c * dt;
    let emx = (-x).exp();
    for k in 0..=k_max {
        // term_j = x^j / j! for j > k, starting at j = k+1
        let mut term = 1.0;
        for j in 1..=(k + 1) {
            term *= x / j as f64;
        }
        let mut sum = term;
        let mut j = k + 2;
        loop {
            term *= x / j as f64;
            sum += term;
            if term < sum * 1e-17 {
                break;
            }
            j += 1;
        }
        // k! / c^{k+1}
        let mut pref = 1.0 / c;
        for m in 1..=k {
            pref *= m as f64 / c;
        }
        out.push(pref * emx * sum);
    }
    out
}

/// sin(x)/x with the removable singularity filled in by series.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let u = x * x;
        1.0 + u * (-1.0 / 6.0 + u * (1.0 / 120.0))
    } else {
        x.sin() / x
    }
}

/// Spherical Bessel j1(x) = sin(x)/x^2 - cos(x)/x, series near 0.
pub fn spherical_j1(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        // x/3 - x^3/30 + x^5/840, error O(x^7)
        let u = x * x;
        x * (1.0 / 3.0 + u * (-1.0 / 30.0 + u / 840.0))
    } else {
        (x.sin() / x - x.cos()) / x
    }
}

/// Bessel J0 by power series (|x| <= 9) or Miller downward recurrence.
pub fn bessel_j0(x: f64) -> f64 {
    bessel_j01(x).0
}

/// Bessel J1 by power series (|x| <= 9) or Miller downward recurrence.
pub fn bessel_j1(x: f64) -> f64 {
    bessel_j01(x).1
}

/// First positive zero of J0, to double precision.
pub const BESSEL_J0_FIRST_ZERO: f64 = 2.404825557695773;

fn bessel_j01(x: f64) -> (f64, f64) {
    let ax = x.abs();
    let (j0, j1abs) = if ax <= 9.0 {
        (j0_series(ax), j1_series(ax))
    } else {
        miller_j01(ax)
    };
    (j0, if x < 0.0 { -j1abs } else { j1abs })
}

fn j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..60 {
        term *= -q / ((m * m) as f64);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

fn j1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    for m in 1..60 {
        term *= -q / ((m * (m + 1)) as f64);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// Downward (Miller) recurrence: start far above the turning point with an
/// arbitrary tail, recur J_{n-1} = (2n/x) J_n - J_{n+1}, then normalize with
/// J_0 + 2 sum_m J_{2m} = 1. Stable for x > 9 where the series loses digits.
fn miller_j01(x: f64) -> (f64, f64) {
    let start = (x + 20.0 * x.sqrt() + 40.0) as usize;
    let start = start + (start % 2); // even starting order
    let mut jp = 0.0_f64; // J_{n+1}
    let mut jc = 1e-300_f64; // J_n seed
    let mut j1 = 0.0;
    let mut norm = 0.0;
    let mut n = start;
    loop {
        let jm = (2.0 * (n as f64) / x) * jc - jp; // J_{n-1}
        jp = jc;
        jc = jm;
        let m = n - 1;
        if m % 2 == 0 {
            norm += if m == 0 { jc } else { 2.0 * jc };
        }
        if m == 1 {
            j1 = jc;
        }
        if m == 0 {
            return (jc / norm, j1 / norm);
        }
        // rescale to dodge overflow on long recurrences
        if jc.abs() > 1e250 {
            jp /= 1e250;
            jc /= 1e250;
            norm /= 1e250;
            j1 /= 1e250;
        }
        n = m;
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree 2n-1.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pd(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
        let (_, d) = legendre_pd(n, 0.0);
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&ww| ww * half).collect(),
    )
}

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
