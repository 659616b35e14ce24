use crate::algebra::HalfInt;

/// `k!` for integers stored as twice their value.
fn factorial_twice(twice: i32) -> f64 {
    debug_assert!(twice >= 0 && twice % 2 == 0, "factorial of {twice}/2");
    (1..=twice / 2).fold(1.0, |acc, k| acc * k as f64)
}

fn valid_projection(j: HalfInt, m: HalfInt) -> bool {
    j.twice() >= 0 && m.twice().abs() <= j.twice() && (j.twice() - m.twice()) % 2 == 0
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | j m>` (Racah formula,
/// Condon-Shortley phase). Returns 0 for forbidden couplings.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    if !(valid_projection(j1, m1) && valid_projection(j2, m2) && valid_projection(j, m)) {
        return 0.0;
    }
    if m1 + m2 != m {
        return 0.0;
    }
    let (tj1, tj2, tj) = (j1.twice(), j2.twice(), j.twice());
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return 0.0;
    }
    let (tm1, tm2, tm) = (m1.twice(), m2.twice(), m.twice());
    let f = factorial_twice;

    let triangle = (tj as f64 + 1.0) * f(tj + tj1 - tj2) * f(tj - tj1 + tj2) * f(tj1 + tj2 - tj)
        / f(tj1 + tj2 + tj + 2);
    let projections = f(tj + tm) * f(tj - tm) * f(tj1 - tm1) * f(tj1 + tm1) * f(tj2 - tm2) * f(tj2 + tm2);

    // Summation index in twice-units: k = 0, 2, 4, ...
    let k_min = 0.max(tj2 - tj - tm1).max(tj1 + tm2 - tj);
    let k_max = (tj1 + tj2 - tj).min(tj1 - tm1).min(tj2 + tm2);
    let mut sum = 0.0;
    let mut k = k_min;
    while k <= k_max {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = f(k)
            * f(tj1 + tj2 - tj - k)
            * f(tj1 - tm1 - k)
            * f(tj2 + tm2 - k)
            * f(tj - tj2 + tm1 + k)
            * f(tj - tj1 - tm2 + k);
        sum += sign / denom;
        k += 2;
    }
    (triangle * projections).sqrt() * sum
}
