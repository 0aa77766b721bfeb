//! Closed forms for clustered eigenvalues.
//!
//! Eigenvalues of an integer symmetric matrix are algebraic integers, so an
//! irrational quadratic eigenvalue appears with its conjugate at the same
//! multiplicity, and the pair has integer sum and product. Values without
//! such a partner keep their decimal form.

use fewev::spectra::{format_value, Spectrum};

const TOL: f64 = 1e-9;

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < TOL).then_some(r as i64)
}

/// `d = f²·c` with `c` squarefree.
fn split_square(d: i64) -> (i64, i64) {
    let (mut f, mut c) = (1, d);
    let mut p = 2;
    while p * p <= c {
        while c % (p * p) == 0 {
            c /= p * p;
            f *= p;
        }
        p += 1;
    }
    (f, c)
}

/// `(s ± f√c) / 2` in lowest terms. `s` and `f` share parity since
/// `s² − 4p = f²c`.
fn surd(s: i64, f: i64, c: i64, plus: bool) -> String {
    let sign = if plus { '+' } else { '-' };
    let coef = |b: i64| if b == 1 { format!("√{c}") } else { format!("{b}√{c}") };
    if s % 2 == 0 && f % 2 == 0 {
        let (a, b) = (s / 2, f / 2);
        match (a, plus) {
            (0, true) => coef(b),
            (0, false) => format!("-{}", coef(b)),
            _ => format!("{a}{sign}{}", coef(b)),
        }
    } else {
        format!("({s}{sign}{})/2", coef(f))
    }
}

fn closed_form(spec: &Spectrum, i: usize) -> String {
    let (x, m) = spec.pairs[i];
    if let Some(n) = near_integer(x) {
        return n.to_string();
    }
    for (j, &(y, k)) in spec.pairs.iter().enumerate() {
        if j == i || k != m {
            continue;
        }
        let (Some(s), Some(p)) = (near_integer(x + y), near_integer(x * y)) else { continue };
        let disc = s * s - 4 * p;
        if disc <= 0 {
            continue;
        }
        let (f, c) = split_square(disc);
        if c == 1 {
            continue;
        }
        return surd(s, f, c, x > y);
    }
    format_value(x)
}

/// Spectrum in `value^(mult)` form with closed forms where available.
pub fn format_exact(spec: &Spectrum) -> String {
    (0..spec.pairs.len()).map(|i| format!("{}^({})", closed_form(spec, i), spec.pairs[i].1)).collect::<Vec<_>>().join(" ")
}
