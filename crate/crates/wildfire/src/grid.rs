use std::collections::HashSet;

use devs_kernel::CoupledModel;
use fis_devs::{build_fis_coupled, INPUT_PORTS, OUTPUT_PORT};
use fuzzy_core::RuleBase;

use crate::cell::CellAm;
use crate::generator::GeneratorAm;

/// How a cell's burn duration is chosen.
pub enum BurnModel {
    /// Every cell burns for the same fixed number of minutes.
    FixedLifetime(f64),
    /// An inference pass over the weather decides the duration. Cells
    /// start from the midpoint of the output universe until the first
    /// inferred value reaches them.
    Inferred(RuleBase),
}

/// Static description of one fire spread experiment. Coordinates are
/// 1-based with rows growing downward.
pub struct ForestSpec {
    pub rows: usize,
    pub cols: usize,
    /// Cells that can never burn.
    pub nonflammable: HashSet<(usize, usize)>,
    /// The first cell to catch fire.
    pub ignition: (usize, usize),
    pub ignition_time: f64,
    /// (time, humidity, wind) samples; used only with an inferred lifetime.
    pub weather: Vec<(f64, f64, f64)>,
    /// Ember lifetime as a fraction of the burn duration.
    pub ember_fraction: f64,
    pub burn_model: BurnModel,
}

/// The eight surrounding coordinates, clipped at the lattice border.
pub fn moore_neighbors(rows: usize, cols: usize, row: usize, col: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(8);
    for dr in -1i64..=1 {
        for dc in -1i64..=1 {
            if dr == 0 && dc == 0 {
                continue;
            }
            let r = row as i64 + dr;
            let c = col as i64 + dc;
            if r >= 1 && r <= rows as i64 && c >= 1 && c <= cols as i64 {
                out.push((r as usize, c as usize));
            }
        }
    }
    out
}

/// Component name of the cell at (row, col).
pub fn cell_name(row: usize, col: usize) -> String {
    format!("cell_{row}_{col}")
}

/// Inverse of [`cell_name`].
pub fn parse_cell_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("cell_")?;
    let (row, col) = rest.split_once('_')?;
    Some((row.parse().ok()?, col.parse().ok()?))
}

/// Wires the whole experiment: a scripted generator, the inference
/// assembly when durations are inferred, and one cell per lattice site
/// coupled to its Moore neighbourhood.
///
/// Components are added in a fixed order (generator, inference, cells row
/// by row), which doubles as the tie-break order for same-instant events:
/// at the ignition instant the weather sample resolves through the
/// inference assembly first, so the inferred duration reaches the first
/// cell in the same bag as its spark.
pub fn build_forest(spec: &ForestSpec) -> CoupledModel {
    assert!(spec.rows >= 1 && spec.cols >= 1, "the lattice must be non-empty");
    let (ignite_row, ignite_col) = spec.ignition;
    assert!(
        (1..=spec.rows).contains(&ignite_row) && (1..=spec.cols).contains(&ignite_col),
        "ignition at ({ignite_row}, {ignite_col}) is outside the {}x{} lattice",
        spec.rows,
        spec.cols
    );
    assert!(
        !spec.nonflammable.contains(&spec.ignition),
        "the ignition cell must be flammable"
    );
    assert!(
        spec.ember_fraction.is_finite() && spec.ember_fraction >= 0.0,
        "ember fraction must be non-negative and finite"
    );

    let mut forest = CoupledModel::new("forest");

    let (weather, starting_duration): (&[(f64, f64, f64)], f64) = match &spec.burn_model {
        BurnModel::FixedLifetime(tau) => (&[], *tau),
        BurnModel::Inferred(rule_base) => {
            let universe = rule_base.output().universe();
            (&spec.weather, (universe.lo() + universe.hi()) / 2.0)
        }
    };

    forest.add_atomic(
        "generator",
        GeneratorAm::new(weather, &[spec.ignition_time]),
    );

    if let BurnModel::Inferred(rule_base) = &spec.burn_model {
        forest.add_coupled("fis", build_fis_coupled("fis", rule_base));
        forest.couple("generator", "EnvOut", "fis", INPUT_PORTS[0]);
        forest.couple("generator", "EnvOut", "fis", INPUT_PORTS[1]);
    }

    for row in 1..=spec.rows {
        for col in 1..=spec.cols {
            let name = cell_name(row, col);
            if spec.nonflammable.contains(&(row, col)) {
                forest.add_atomic(&name, CellAm::nonflammable());
            } else {
                forest.add_atomic(&name, CellAm::new(starting_duration, spec.ember_fraction));
                if matches!(spec.burn_model, BurnModel::Inferred(_)) {
                    forest.couple("fis", OUTPUT_PORT, &name, "Duration");
                }
            }
        }
    }

    forest.couple("generator", "FireOut", &cell_name(ignite_row, ignite_col), "Ignite");

    for row in 1..=spec.rows {
        for col in 1..=spec.cols {
            if spec.nonflammable.contains(&(row, col)) {
                continue;
            }
            let from = cell_name(row, col);
            for (nr, nc) in moore_neighbors(spec.rows, spec.cols, row, col) {
                forest.couple(&from, "Ignite", &cell_name(nr, nc), "Ignite");
            }
        }
    }

    forest
}
