//! Human-readable number rendering: 6 significant digits plus an exact
//! fraction annotation when a value is a small-denominator rational.

use tsvf::Amplitude;

/// Largest denominator tried by the fraction annotation.
pub const MAX_DENOMINATOR: i64 = 64;

/// Threshold for accepting a fraction match.
pub const FRACTION_TOLERANCE: f64 = 1e-12;

/// `%g`-style rendering with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Renders `a + bi` with 6 significant digits per component.
pub fn complex(z: Amplitude) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", sig(re, 6), sig(im.abs(), 6))
}

fn real_fraction(x: f64) -> Option<(i64, i64)> {
    (1..=MAX_DENOMINATOR).find_map(|den| {
        let num = (x * den as f64).round();
        ((x - num / den as f64).abs() <= FRACTION_TOLERANCE).then_some((num as i64, den))
    })
}

fn complex_fraction(z: Amplitude) -> Option<(i64, i64, i64)> {
    (1..=MAX_DENOMINATOR).find_map(|den| {
        let d = den as f64;
        let (p, q) = ((z.re * d).round(), (z.im * d).round());
        let ok = (z.re - p / d).abs() <= FRACTION_TOLERANCE && (z.im - q / d).abs() <= FRACTION_TOLERANCE;
        ok.then_some((p as i64, q as i64, den))
    })
}

fn over(numerator: String, den: i64) -> String {
    if den == 1 {
        numerator
    } else {
        format!("{numerator}/{den}")
    }
}

/// `p/q` for a recognised dyadic-style real value.
pub fn real_annotation(x: f64) -> Option<String> {
    real_fraction(x).map(|(num, den)| over(num.to_string(), den))
}

fn imaginary_part(q: i64) -> String {
    match q {
        1 => "i".to_string(),
        -1 => "-i".to_string(),
        _ => format!("{q}i"),
    }
}

/// `(p+qi)/r`, `p/r` or `qi/r` for a recognised complex value.
pub fn complex_annotation(z: Amplitude) -> Option<String> {
    let (p, q, r) = complex_fraction(z)?;
    Some(match (p, q) {
        (_, 0) => over(p.to_string(), r),
        (0, _) => over(imaginary_part(q), r),
        _ => {
            let sign = if q < 0 { "-" } else { "+" };
            let body = format!("{p}{sign}{}", imaginary_part(q.abs()));
            if r == 1 {
                body
            } else {
                format!("({body})/{r}")
            }
        }
    })
}

pub fn annotated_complex(z: Amplitude) -> String {
    match complex_annotation(z) {
        Some(exact) => format!("{} (= {exact})", complex(z)),
        None => complex(z),
    }
}

pub fn annotated_real(x: f64) -> String {
    match real_annotation(x) {
        Some(exact) => format!("{} (= {exact})", sig(x, 6)),
        None => sig(x, 6),
    }
}
