//! Independent reference implementations used by the verifier and the test
//! suite. Nothing here shares an algorithm with the library paths it checks:
//! primality is trial division, and li comes from numerical quadrature
//! rather than the library's series.

use nthprime::dd::DoubleDouble;

/// li(2), the additive constant between the principal-value integral and the
/// integral from 2.
const LI_2: DoubleDouble = DoubleDouble::new_unchecked(1.045163780117493, -1.0616403481185999e-16);

/// 20-point Gauss-Legendre nodes and weights on [-1, 1], split into
/// double-double components: (node_hi, node_lo, weight_hi, weight_lo).
const GL20: [(f64, f64, f64, f64); 20] = [
    (
        -0.9931285991850949,
        -4.0125692717995897e-17,
        0.017614007139152118,
        4.3067520806280603e-19,
    ),
    (
        -0.9639719272779138,
        1.8016704796146567e-17,
        0.04060142980038694,
        2.6688577065676327e-18,
    ),
    (
        -0.912234428251326,
        4.0267600310095046e-17,
        0.06267204833410907,
        -4.2658003813625565e-18,
    ),
    (
        -0.8391169718222188,
        -4.1065867315850824e-17,
        0.08327674157670475,
        -6.018929287851294e-18,
    ),
    (
        -0.7463319064601508,
        3.109202074074545e-18,
        0.10193011981724044,
        -6.5341878677436505e-18,
    ),
    (
        -0.636053680726515,
        -4.73785846574601e-19,
        0.11819453196151841,
        5.301374412410806e-18,
    ),
    (
        -0.5108670019508271,
        2.84952683625147e-17,
        0.13168863844917664,
        -1.0181179424087636e-17,
    ),
    (
        -0.37370608871541955,
        -1.191005070671823e-17,
        0.14209610931838204,
        1.0153688127497397e-17,
    ),
    (
        -0.22778585114164507,
        -9.884156488012629e-18,
        0.14917298647260374,
        5.450889017016148e-18,
    ),
    (
        -0.07652652113349734,
        4.557072655796525e-18,
        0.15275338713072584,
        1.340295334535119e-17,
    ),
    (
        0.07652652113349734,
        -4.557072655796525e-18,
        0.15275338713072584,
        1.340295334535119e-17,
    ),
    (
        0.22778585114164507,
        9.884156488012629e-18,
        0.14917298647260374,
        5.450889017016148e-18,
    ),
    (
        0.37370608871541955,
        1.191005070671823e-17,
        0.14209610931838204,
        1.0153688127497397e-17,
    ),
    (
        0.5108670019508271,
        -2.84952683625147e-17,
        0.13168863844917664,
        -1.0181179424087636e-17,
    ),
    (
        0.636053680726515,
        4.73785846574601e-19,
        0.11819453196151841,
        5.301374412410806e-18,
    ),
    (
        0.7463319064601508,
        -3.109202074074545e-18,
        0.10193011981724044,
        -6.5341878677436505e-18,
    ),
    (
        0.8391169718222188,
        4.1065867315850824e-17,
        0.08327674157670475,
        -6.018929287851294e-18,
    ),
    (
        0.912234428251326,
        -4.0267600310095046e-17,
        0.06267204833410907,
        -4.2658003813625565e-18,
    ),
    (
        0.9639719272779138,
        -1.8016704796146567e-17,
        0.04060142980038694,
        2.6688577065676327e-18,
    ),
    (
        0.9931285991850949,
        4.0125692717995897e-17,
        0.017614007139152118,
        4.3067520806280603e-19,
    ),
];

/// Principal-value li(x) by composite Gauss-Legendre quadrature of
/// `exp(u)/u` over `[ln 2, ln x]` (the substitution `t = e^u` removes the
/// 1/ln t shape), plus the tabulated li(2). Panels are a quarter unit of
/// ln x wide, far more than 20-point Gauss needs for an analytic integrand.
pub fn li_quadrature(x: f64) -> DoubleDouble {
    assert!(x >= 2.0, "li_quadrature needs x >= 2, got {x}");
    let a = DoubleDouble::LN_2;
    let b = DoubleDouble::from(x).ln();
    let len = (b - a).to_f64();
    if len == 0.0 {
        return LI_2;
    }
    let panels = 16.max((len * 4.0).ceil() as usize);
    let panel_width = (b - a) / panels as f64;
    let mut total = DoubleDouble::ZERO;
    for k in 0..panels {
        let lo = a + panel_width * k as f64;
        let hi = if k + 1 == panels {
            b
        } else {
            a + panel_width * (k + 1) as f64
        };
        let center = (lo + hi) * 0.5;
        let half = (hi - lo) * 0.5;
        let mut acc = DoubleDouble::ZERO;
        for &(nh, nl, wh, wl) in GL20.iter() {
            let node = DoubleDouble::new_unchecked(nh, nl);
            let weight = DoubleDouble::new_unchecked(wh, wl);
            let u = center + half * node;
            acc = acc + weight * (u.exp() / u);
        }
        total = total + acc * half;
    }
    LI_2 + total
}

/// Trial-division primality, the universal membership oracle for tests.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
