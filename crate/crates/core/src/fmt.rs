/// Fixed 17-significant-digit rendering used by every artifact.
pub fn fmt_f(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.16e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_else(|| "NA".into())
}
