#![allow(dead_code)]

use std::f64::consts::PI;

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// Hydrogen radial functions in atomic units.
pub fn r20(r: f64) -> f64 {
    (1.0 / 2f64.sqrt()) * (1.0 - r / 2.0) * (-r / 2.0).exp()
}

pub fn r21(r: f64) -> f64 {
    r * (-r / 2.0).exp() / (2.0 * 6f64.sqrt())
}

/// `<2,0,0| z |2,1,0>` in Bohr radii from the radial integral
/// `int R20 R21 r^3 dr` times the angular factor `<Y00|cos theta|Y10> = 1/sqrt(3)`.
pub fn z_matrix_element_n2() -> f64 {
    let radial = simpson(|r| r20(r) * r21(r) * r.powi(3), 0.0, 80.0, 200_000);
    let angular = simpson(
        |theta| {
            let y00 = 1.0 / (4.0 * PI).sqrt();
            let y10 = (3.0 / (4.0 * PI)).sqrt() * theta.cos();
            2.0 * PI * y00 * theta.cos() * y10 * theta.sin()
        },
        0.0,
        PI,
        20_000,
    );
    radial * angular
}

/// Solid angle of a disk (radius `radius`, axis through the origin) seen from
/// a point at axial distance `d` and radial offset `s`, by brute-force 2D
/// quadrature over the disk surface.
pub fn disk_solid_angle_2d(d: f64, s: f64, radius: f64) -> f64 {
    let inner = |rho: f64| {
        simpson(
            |phi| {
                let dist2 = d * d + rho * rho + s * s - 2.0 * rho * s * phi.cos();
                d.abs() * rho / dist2.powf(1.5)
            },
            0.0,
            2.0 * PI,
            400,
        )
    };
    simpson(inner, 0.0, radius, 400)
}
