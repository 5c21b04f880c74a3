//! Orthogonal Vectors instances, the brute-force solver and seeded generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OvError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid instance: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    bits: Vec<bool>,
}

impl BinaryVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, OvError> {
        if bits.is_empty() {
            return Err(OvError::Invalid(
                "vector dimension must be at least 1".into(),
            ));
        }
        Ok(BinaryVector { bits })
    }

    /// Parses `"101"` style strings.
    pub fn from_str01(s: &str) -> Result<Self, OvError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(OvError::Invalid(format!("bit '{other}'"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BinaryVector::new(bits)
    }

    pub fn zeros(d: usize) -> Self {
        BinaryVector {
            bits: vec![false; d],
        }
    }

    pub fn ones(d: usize) -> Self {
        BinaryVector {
            bits: vec![true; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, h: usize) -> bool {
        self.bits[h]
    }

    pub fn set(&mut self, h: usize, bit: bool) {
        self.bits[h] = bit;
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn complement(&self) -> Self {
        BinaryVector {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn dot(x: &BinaryVector, y: &BinaryVector) -> Result<usize, OvError> {
    if x.dim() != y.dim() {
        return Err(OvError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.bits.iter().zip(&y.bits).filter(|(&a, &b)| a && b).count())
}

fn orthogonal(x: &BinaryVector, y: &BinaryVector) -> bool {
    !x.bits.iter().zip(&y.bits).any(|(&a, &b)| a && b)
}

/// Two equally sized sets of vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvInstance {
    x: Vec<BinaryVector>,
    y: Vec<BinaryVector>,
}

impl OvInstance {
    pub fn new(x: Vec<BinaryVector>, y: Vec<BinaryVector>) -> Result<Self, OvError> {
        if x.is_empty() || x.len() != y.len() {
            return Err(OvError::Invalid(format!(
                "need |X| = |Y| >= 1, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        let d = x[0].dim();
        if let Some(v) = x.iter().chain(&y).find(|v| v.dim() != d) {
            return Err(OvError::DimensionMismatch {
                left: d,
                right: v.dim(),
            });
        }
        Ok(OvInstance { x, y })
    }

    /// Convenience constructor from `"101"` style strings.
    pub fn from_strs(x: &[&str], y: &[&str]) -> Result<Self, OvError> {
        let parse = |v: &[&str]| {
            v.iter()
                .map(|s| BinaryVector::from_str01(s))
                .collect::<Result<Vec<_>, _>>()
        };
        OvInstance::new(parse(x)?, parse(y)?)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn d(&self) -> usize {
        self.x[0].dim()
    }

    pub fn x(&self) -> &[BinaryVector] {
        &self.x
    }

    pub fn y(&self) -> &[BinaryVector] {
        &self.y
    }

    pub fn has_zero_y(&self) -> bool {
        self.y.iter().any(BinaryVector::is_zero)
    }
}

/// Lexicographically smallest 1-based `(i, j)` with `x_i · y_j = 0`.
pub fn solve_ov_bruteforce(inst: &OvInstance) -> Option<(usize, usize)> {
    for (i, x) in inst.x.iter().enumerate() {
        for (j, y) in inst.y.iter().enumerate() {
            if orthogonal(x, y) {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Every instance with exactly `n` vectors per side of dimension `d`, in a fixed order.
pub fn enumerate_instances(n: usize, d: usize) -> Vec<OvInstance> {
    let vectors: Vec<BinaryVector> = (0..1usize << d)
        .map(|m| BinaryVector {
            bits: (0..d).map(|h| m >> h & 1 == 1).collect(),
        })
        .collect();
    let k = vectors.len();
    let total = k.pow(2 * n as u32);
    (0..total)
        .map(|mut code| {
            let mut pick = || {
                let v = vectors[code % k].clone();
                code /= k;
                v
            };
            let x = (0..n).map(|_| pick()).collect();
            let y = (0..n).map(|_| pick()).collect();
            OvInstance { x, y }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenMode {
    Random,
    PlantedOrthogonal,
    NoOrthogonal,
}

impl GenMode {
    pub const ALL: [GenMode; 3] = [
        GenMode::Random,
        GenMode::PlantedOrthogonal,
        GenMode::NoOrthogonal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenMode::Random => "random",
            GenMode::PlantedOrthogonal => "planted-orthogonal",
            GenMode::NoOrthogonal => "no-orthogonal",
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GenMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(GenMode::Random),
            "planted-orthogonal" | "planted" => Ok(GenMode::PlantedOrthogonal),
            "no-orthogonal" | "none" => Ok(GenMode::NoOrthogonal),
            other => Err(format!("unknown generator mode '{other}'")),
        }
    }
}

/// Deterministic instance generator; identical arguments give identical instances.
pub fn gen_ov_instance(
    n: usize,
    d: usize,
    seed: u64,
    mode: GenMode,
) -> Result<OvInstance, OvError> {
    if n == 0 || d == 0 {
        return Err(OvError::Invalid(format!(
            "need n >= 1 and d >= 1, got n={n} d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| BinaryVector {
        bits: (0..d).map(|_| rng.gen_bool(0.5)).collect(),
    };
    let mut x: Vec<BinaryVector> = (0..n).map(|_| draw(&mut rng)).collect();
    let mut y: Vec<BinaryVector> = (0..n).map(|_| draw(&mut rng)).collect();

    match mode {
        GenMode::Random => {}
        GenMode::PlantedOrthogonal => {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            x[i] = y[j].complement();
        }
        GenMode::NoOrthogonal => {
            // Raising bits only increases dot products, so repairs never create new orthogonal pairs.
            for xi in x.iter_mut() {
                for yj in y.iter_mut() {
                    if orthogonal(xi, yj) {
                        let h = rng.gen_range(0..d);
                        xi.bits[h] = true;
                        yj.bits[h] = true;
                    }
                }
            }
        }
    }

    let inst = OvInstance { x, y };
    let found = solve_ov_bruteforce(&inst).is_some();
    match mode {
        GenMode::PlantedOrthogonal => assert!(found, "planted instance lost its orthogonal pair"),
        GenMode::NoOrthogonal => assert!(!found, "repaired instance still has an orthogonal pair"),
        GenMode::Random => {}
    }
    Ok(inst)
}
