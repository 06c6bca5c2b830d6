//! Turns the per-cell ignition grid into files other tools can read:
//! a CSV matrix of ignition minutes and a binary PGM heat map.

use crate::config::ScenarioError;

/// One line per row, values comma separated. Cells that never ignited
/// read -1. The float formatting round-trips exactly.
pub fn ignition_csv(times: &[Vec<Option<f64>>]) -> String {
    let mut out = String::new();
    for row in times {
        let fields: Vec<String> = row
            .iter()
            .map(|cell| match cell {
                Some(time) => format!("{time}"),
                None => "-1".into(),
            })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Inverse of [`ignition_csv`]: -1 back to None, anything else parsed
/// as an ignition minute.
pub fn parse_ignition_csv(text: &str) -> Result<Vec<Vec<Option<f64>>>, ScenarioError> {
    let mut rows = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let mut row = Vec::new();
        for field in line.split(',') {
            let value: f64 = field.trim().parse().map_err(|_| {
                ScenarioError::Invalid(format!(
                    "CSV line {} holds a non-numeric field '{field}'",
                    index + 1
                ))
            })?;
            row.push(if value < 0.0 { None } else { Some(value) });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Binary 8-bit PGM. Unburned cells are black (0); the earliest ignition
/// is brightest (255) and later ignitions fade linearly towards 1.
pub fn ignition_pgm(times: &[Vec<Option<f64>>]) -> Vec<u8> {
    let rows = times.len();
    let cols = times.first().map_or(0, Vec::len);
    let ignited: Vec<f64> = times
        .iter()
        .flatten()
        .filter_map(|cell| *cell)
        .collect();
    let earliest = ignited.iter().copied().fold(f64::INFINITY, f64::min);
    let latest = ignited.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = latest - earliest;

    let mut out = format!("P5\n{cols} {rows}\n255\n").into_bytes();
    for row in times {
        for cell in row {
            let shade = match cell {
                None => 0u8,
                Some(_) if span <= 0.0 => 255,
                Some(time) => 1 + ((latest - time) / span * 254.0).round() as u8,
            };
            out.push(shade);
        }
    }
    out
}
