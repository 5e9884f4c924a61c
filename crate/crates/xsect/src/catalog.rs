//! Named fixtures: each builtin flow with the grid, time and classes it is meant to be run at.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    /// Worked example or figure the fixture reproduces.
    pub locus: &'static str,
    pub dim: usize,
    /// Cells per axis at the base level.
    pub resolution: usize,
    pub time: f64,
    /// Classes whose analysis the fixture illustrates.
    pub alphas: &'static [&'static [i64]],
    /// Verdicts at a fixed epsilon stand in for a limit; read them with the refinement trend.
    pub trend_flagged: bool,
    /// Refinement levels used by default.
    pub refine: usize,
    pub summary: &'static str,
}

pub static FIXTURES: &[Fixture] = &[
    Fixture {
        name: "constant",
        locus: "linear flow",
        dim: 2,
        resolution: 8,
        time: 1.0,
        alphas: &[&[0, 1], &[1, 0]],
        trend_flagged: false,
        refine: 3,
        summary: "constant drift; every class with positive drift pairing has a global section",
    },
    Fixture {
        name: "reeb2d",
        locus: "Example 4.2",
        dim: 2,
        resolution: 64,
        time: 0.58,
        alphas: &[&[0, 1]],
        trend_flagged: false,
        refine: 3,
        summary: "two invariant vertical circles, one attracting; a unique partial cross-section for dy",
    },
    Fixture {
        name: "slowed-vertical",
        locus: "Example 4.3",
        dim: 2,
        resolution: 64,
        time: 0.2,
        alphas: &[&[0, 1]],
        trend_flagged: false,
        refine: 3,
        summary: "vertical flow stopped at two points; chain recurrent with infinitely many sections for dy",
    },
    Fixture {
        name: "psi1",
        locus: "§6.3",
        dim: 2,
        resolution: 64,
        time: 0.5,
        alphas: &[&[1, 0], &[-1, 0]],
        trend_flagged: true,
        refine: 3,
        summary: "irrational drift stopped at one point; dx has no section although its directions are non-negative",
    },
    Fixture {
        name: "psi2",
        locus: "§6.3",
        dim: 3,
        resolution: 32,
        time: 0.5,
        alphas: &[&[1, 0, 0]],
        trend_flagged: true,
        refine: 2,
        summary: "layered three-torus flow built from two copies of psi1",
    },
    Fixture {
        name: "figure1-phi1",
        locus: "Figure 1",
        dim: 2,
        resolution: 64,
        time: 0.58,
        alphas: &[&[1, 0], &[-1, 0], &[0, 1]],
        trend_flagged: false,
        refine: 3,
        summary: "attracting and repelling vertical circles; dx and -dx both have sections",
    },
    Fixture {
        name: "figure1-phi2",
        locus: "Figure 1",
        dim: 2,
        resolution: 64,
        time: 0.58,
        alphas: &[&[1, 0], &[-1, 0], &[0, 1]],
        trend_flagged: false,
        refine: 3,
        summary: "one invariant circle with +x drift in its complement; -dx has no section",
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
