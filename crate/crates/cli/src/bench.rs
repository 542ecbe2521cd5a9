use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use fold1d::fold::reduce;
use fold1d::forcing::forcing_set_from_forest;
use fold1d::pattern::{generate_random, nested_tessellation, tessellation};
use fold1d::{CrimpForest, MvPattern};

/// Largest comparison growth accepted when `n` doubles.
pub const MAX_DOUBLING_RATIO: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Tessellation,
    Random,
    Nested,
}

impl Shape {
    pub fn pattern(self, n: usize, seed: u64) -> anyhow::Result<MvPattern> {
        Ok(match self {
            Shape::Tessellation => tessellation(n),
            Shape::Nested => nested_tessellation(n),
            Shape::Random => generate_random(n, seed)?,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub creases: usize,
    pub comparisons: u64,
    pub crimps: u64,
    pub forcing_set: usize,
    pub millis: f64,
    /// Comparisons relative to the previous row.
    pub ratio: Option<f64>,
}

/// Sizes from 1000 (or `max_n` if smaller) doubling up to `max_n`.
pub fn sizes(max_n: usize) -> Vec<usize> {
    let mut n = max_n.min(1000);
    let mut out = vec![n];
    while n > 0 && n * 2 <= max_n {
        n *= 2;
        out.push(n);
    }
    out
}

pub fn run(max_n: usize, shape: Shape) -> anyhow::Result<Vec<Row>> {
    let mut rows: Vec<Row> = Vec::new();
    for n in sizes(max_n) {
        let p = shape.pattern(n, n as u64)?;
        let t = Instant::now();
        let r = reduce(&p)?;
        let forest = CrimpForest::from_reduction(&r, p.pattern.position(0), p.num_creases());
        let f = forcing_set_from_forest(&forest);
        let millis = t.elapsed().as_secs_f64() * 1e3;
        let ratio = rows
            .last()
            .filter(|prev| prev.comparisons > 0)
            .map(|prev| r.stats.comparisons as f64 / prev.comparisons as f64);
        rows.push(Row {
            creases: n,
            comparisons: r.stats.comparisons,
            crimps: r.stats.crimps,
            forcing_set: f.len(),
            millis,
            ratio,
        });
    }
    Ok(rows)
}

pub fn linear(rows: &[Row]) -> bool {
    rows.iter().filter_map(|r| r.ratio).all(|x| x <= MAX_DOUBLING_RATIO)
}
