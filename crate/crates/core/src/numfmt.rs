/// Formats `x` with `digits` significant digits: fixed notation for
/// moderate magnitudes, scientific otherwise.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        // rounding can carry into the next decade; re-derive from the rendered value
        let s = format!("{x:.decimals$}");
        let rendered: f64 = s.parse().unwrap();
        let exp2 = rendered.abs().log10().floor() as i32;
        if exp2 != exp {
            let decimals = (digits as i32 - 1 - exp2).max(0) as usize;
            return format!("{x:.decimals$}");
        }
        s
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}
