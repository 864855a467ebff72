//! How often products of random monic polynomials reach the generic
//! Higman length.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::higman::{higman_chain, Status};
use crate::polycore::Poly;

pub const MAX_EXHAUSTIVE_DEGREE: usize = 8;
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Montecarlo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Montecarlo => "montecarlo",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "montecarlo" | "monte-carlo" => Ok(Mode::Montecarlo),
            other => Err(Error::Config(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityConfig {
    pub degrees: Vec<usize>,
    pub inflations: Vec<usize>,
    pub heights: Vec<u64>,
    pub mode: Mode,
    pub samples: usize,
    pub seed: u64,
}

impl DensityConfig {
    pub fn validate(&self) -> Result<()> {
        let c = self.degrees.len();
        if c == 0 {
            return Err(Error::Config("at least one factor degree is required".into()));
        }
        if self.inflations.len() != c {
            return Err(Error::Config("one inflation per factor is required".into()));
        }
        if self.degrees.contains(&0) || self.inflations.contains(&0) {
            return Err(Error::Config("degrees and inflations must be positive".into()));
        }
        if self.heights.is_empty() || self.heights.contains(&0) {
            return Err(Error::Config("heights must be positive".into()));
        }
        match self.mode {
            Mode::Exhaustive if self.total_degree() > MAX_EXHAUSTIVE_DEGREE => Err(Error::Config(format!(
                "exhaustive mode needs total degree at most {MAX_EXHAUSTIVE_DEGREE}"
            ))),
            Mode::Montecarlo if self.samples == 0 || self.samples > MAX_SAMPLES => {
                Err(Error::Config(format!("samples must lie in 1..={MAX_SAMPLES}")))
            }
            _ => Ok(()),
        }
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// `1 + #{i < c : n_i >= 2}`.
    pub fn target_length(&self) -> usize {
        let c = self.degrees.len();
        1 + self.inflations[..c - 1].iter().filter(|&&n| n >= 2).count()
    }

    /// `∏ g_i(x^(n_i ⋯ n_c))` from the concatenated non-leading coefficients.
    pub fn assemble(&self, coeffs: &[i64]) -> Poly {
        let mut out = Poly::one();
        let mut offset = 0;
        for (i, &d) in self.degrees.iter().enumerate() {
            let mut c: Vec<i64> = coeffs[offset..offset + d].to_vec();
            c.push(1);
            offset += d;
            let inflation: usize = self.inflations[i..].iter().product();
            out = &out * &Poly::from_i64s(&c).inflate(inflation);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub h: u64,
    pub total: u64,
    pub solvable: u64,
    pub target_length: u64,
    pub count_ratio: f64,
    pub seed: u64,
    pub mode: Mode,
}

impl DensityRow {
    /// Binomial standard error of `count_ratio`.
    pub fn std_error(&self) -> f64 {
        let p = self.count_ratio;
        (p * (1.0 - p) / self.total as f64).sqrt()
    }
}

#[derive(Default, Clone, Copy)]
struct Counts {
    total: u64,
    solvable: u64,
    target: u64,
}

impl Counts {
    fn merge(self, o: Counts) -> Counts {
        Counts {
            total: self.total + o.total,
            solvable: self.solvable + o.solvable,
            target: self.target + o.target,
        }
    }
}

fn classify(cfg: &DensityConfig, coeffs: &[i64]) -> Counts {
    let f = cfg.assemble(coeffs);
    let chain = higman_chain(&f).expect("nonzero monic product");
    let solvable = chain.status == Status::Solvable;
    Counts {
        total: 1,
        solvable: solvable as u64,
        target: (solvable && chain.len == Some(cfg.target_length())) as u64,
    }
}

/// Coefficients for sample `index`, uniform on `[-h, h]`.
pub fn sample_coefficients(seed: u64, index: u64, h: u64, count: usize) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let h = h as i64;
    (0..count).map(|_| rng.gen_range(-h..=h)).collect()
}

pub fn run_density(cfg: &DensityConfig) -> Result<Vec<DensityRow>> {
    cfg.validate()?;
    let d = cfg.total_degree();
    let rows = cfg
        .heights
        .iter()
        .map(|&h| {
            let counts = match cfg.mode {
                Mode::Exhaustive => {
                    let range: Vec<i64> = (-(h as i64)..=h as i64).collect();
                    let tuples: Vec<Vec<i64>> = (0..d).map(|_| range.iter().copied()).multi_cartesian_product().collect();
                    let tuples = if d == 0 { vec![Vec::new()] } else { tuples };
                    tuples
                        .par_iter()
                        .map(|t| classify(cfg, t))
                        .reduce(Counts::default, Counts::merge)
                }
                Mode::Montecarlo => (0..cfg.samples as u64)
                    .into_par_iter()
                    .map(|i| classify(cfg, &sample_coefficients(cfg.seed, i, h, d)))
                    .reduce(Counts::default, Counts::merge),
            };
            DensityRow {
                h,
                total: counts.total,
                solvable: counts.solvable,
                target_length: counts.target,
                count_ratio: counts.target as f64 / counts.total as f64,
                seed: cfg.seed,
                mode: cfg.mode,
            }
        })
        .collect();
    Ok(rows)
}

/// Each ratio at least the previous one minus two combined standard errors,
/// and the last above the first.
pub fn trend_holds(rows: &[DensityRow]) -> bool {
    let steps_ok = rows.windows(2).all(|w| {
        let slack = 2.0 * (w[0].std_error().powi(2) + w[1].std_error().powi(2)).sqrt();
        w[1].count_ratio >= w[0].count_ratio - slack
    });
    let rising = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if rows.len() >= 2 => b.count_ratio > a.count_ratio,
        _ => false,
    };
    steps_ok && rising
}

pub fn write_csv<W: std::io::Write>(rows: &[DensityRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(["h", "total", "solvable", "target_length", "count_ratio", "seed", "mode"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.h.to_string(),
            r.total.to_string(),
            r.solvable.to_string(),
            r.target_length.to_string(),
            format!("{:.6}", r.count_ratio),
            r.seed.to_string(),
            r.mode.as_str().to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}
