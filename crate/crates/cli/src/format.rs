/// Formats `x` rounded to 9 significant digits, trailing zeros dropped.
/// Magnitudes outside `[1e-5, 1e9)` use exponent notation.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..9).contains(&e) {
        let s = format!("{:.*}", (8 - e).max(0) as usize, x);
        trim_fraction(&s).to_string()
    } else {
        let s = format!("{x:.8e}");
        let (m, exp) = s.split_once('e').expect("exponent form");
        format!("{}e{}", trim_fraction(m), exp)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
