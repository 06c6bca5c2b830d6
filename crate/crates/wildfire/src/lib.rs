//! Fire spread over a rectangular cell lattice, driven by the
//! discrete-event kernel.
//!
//! Every lattice site is a cell component with a burn/ember/ash life
//! cycle; a scripted generator injects weather and the first spark. Fire
//! moves by message passing: a cell that finishes burning sparks its Moore
//! neighbourhood, so flame fronts advance one cell per burn duration with
//! no global stepping. Burn durations are either fixed across the lattice
//! or inferred from the weather by the fuzzy assembly wired in front of
//! the cells.

mod cell;
mod generator;
mod grid;

pub use cell::{CellAm, CellPhase};
pub use generator::GeneratorAm;
pub use grid::{
    build_forest, cell_name, moore_neighbors, parse_cell_name, BurnModel, ForestSpec,
};
