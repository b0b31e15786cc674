//! Number formatting shared by the CSV and text emitters.

use std::f64::consts::PI;

/// Shortest round-trip representation; exponent form for very large or
/// small magnitudes. Independent of locale.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Phase folded into `(-pi, pi]`.
pub fn principal_phase(phase: f64) -> f64 {
    if phase <= -PI {
        phase + 2.0 * PI
    } else if phase > PI {
        phase - 2.0 * PI
    } else {
        phase
    }
}

/// Joins fields into one CSV line terminated by `\n`.
pub fn csv_line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut line = fields
        .into_iter()
        .map(|f| f.as_ref().to_owned())
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}
