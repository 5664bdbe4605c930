//! Adversarial input distributions built from block indicators.
//!
//! The column set `{0..N2}` is cut into `L` consecutive blocks of
//! `⌊N2/L⌋` columns each (the tail is left uncovered). Four families are
//! generated on top of it:
//!
//! * `mu1`: independent fair signs on every (row, block) cell;
//! * `mu2`: a single signed, unit-norm spike on one (row, block) cell;
//! * `mu3`: every row independently carries one signed unit-norm block spike;
//! * `mu4`: one random row carries `N1^{1/p}` times a random sign pattern over
//!   all blocks, the other rows are zero.
//!
//! `mu1`/`mu2` use `L = ⌊4n/N1⌋ + 1`, `mu3`/`mu4` use `L = 4⌈4n/N1⌉ + 1`.
//! All outputs lie in the unit ball of `L_p^{N1×N2}`.

use std::borrow::Cow;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::rng::Stream;
use crate::tensor_space::{norm_witness, DiscreteFunction};

/// Ratio between the largest admissible budget and `N1·N2`.
pub const ADMISSIBLE_FRACTION_DENOM: usize = 21;

/// `L` consecutive column blocks of width `⌊N2/L⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPartition {
    n2: usize,
    l: usize,
    block_size: usize,
}

impl BlockPartition {
    pub fn new(n2: usize, l: usize) -> Result<Self> {
        if l == 0 || l > n2 {
            return Err(Error::Domain(format!("block count must be in 1..={n2}, got {l}")));
        }
        Ok(BlockPartition {
            n2,
            l,
            block_size: n2 / l,
        })
    }

    pub fn count(&self) -> usize {
        self.l
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Zero-based columns of block `j`.
    pub fn block(&self, j: usize) -> Range<usize> {
        assert!(j < self.l);
        j * self.block_size..(j + 1) * self.block_size
    }

    /// Block containing column `col`, or `None` for the uncovered tail.
    pub fn block_of(&self, col: usize) -> Option<usize> {
        assert!(col < self.n2);
        let j = col / self.block_size;
        (j < self.l).then_some(j)
    }

    /// Number of covered columns, `L·⌊N2/L⌋`.
    pub fn covered(&self) -> usize {
        self.l * self.block_size
    }
}

/// `L = ⌊4n/N1⌋ + 1`.
pub fn block_count_additive(n: usize, n1: usize) -> usize {
    4 * n / n1 + 1
}

/// `L = 4⌈4n/N1⌉ + 1`.
pub fn block_count_product(n: usize, n1: usize) -> usize {
    4 * (4 * n).div_ceil(n1) + 1
}

/// The four adversarial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HardFamily {
    Mu1,
    Mu2,
    Mu3,
    Mu4,
}

impl HardFamily {
    pub const ALL: [HardFamily; 4] = [HardFamily::Mu1, HardFamily::Mu2, HardFamily::Mu3, HardFamily::Mu4];

    pub fn id(self) -> &'static str {
        match self {
            HardFamily::Mu1 => "mu1",
            HardFamily::Mu2 => "mu2",
            HardFamily::Mu3 => "mu3",
            HardFamily::Mu4 => "mu4",
        }
    }
}

/// Instance families accepted by the harness, including the norm witness and
/// user-supplied matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceFamily {
    Hard(HardFamily),
    Witness,
    Custom,
}

impl InstanceFamily {
    pub fn id(self) -> &'static str {
        match self {
            InstanceFamily::Hard(h) => h.id(),
            InstanceFamily::Witness => "witness",
            InstanceFamily::Custom => "custom",
        }
    }
}

impl fmt::Display for InstanceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for InstanceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "mu1" => InstanceFamily::Hard(HardFamily::Mu1),
            "mu2" => InstanceFamily::Hard(HardFamily::Mu2),
            "mu3" => InstanceFamily::Hard(HardFamily::Mu3),
            "mu4" => InstanceFamily::Hard(HardFamily::Mu4),
            "witness" => InstanceFamily::Witness,
            "custom" => InstanceFamily::Custom,
            other => return Err(Error::Domain(format!("unknown instance family `{other}`"))),
        })
    }
}

/// A hard family tuned against budget `n` on `N1 × N2` inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    family: HardFamily,
    p: Exponent,
    n: usize,
    n1: usize,
    n2: usize,
}

impl InstanceSpec {
    /// Validates `1 <= n < N1·N2/21`, and `n >= N1` for `mu3`/`mu4`.
    pub fn new(family: HardFamily, p: Exponent, n: usize, n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::Inadmissible(format!(
                "dimensions must be positive, got {n1}x{n2}"
            )));
        }
        if n == 0 || ADMISSIBLE_FRACTION_DENOM * n >= n1 * n2 {
            return Err(Error::Inadmissible(format!(
                "{} needs 1 <= n < N1*N2/{ADMISSIBLE_FRACTION_DENOM}, got n = {n}, N1*N2 = {}",
                family.id(),
                n1 * n2
            )));
        }
        if matches!(family, HardFamily::Mu3 | HardFamily::Mu4) && n < n1 {
            return Err(Error::Inadmissible(format!(
                "{} needs n >= N1, got n = {n}, N1 = {n1}",
                family.id()
            )));
        }
        Ok(InstanceSpec { family, p, n, n1, n2 })
    }

    pub fn family(&self) -> HardFamily {
        self.family
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn blocks(&self) -> BlockPartition {
        let l = match self.family {
            HardFamily::Mu1 | HardFamily::Mu2 => block_count_additive(self.n, self.n1),
            HardFamily::Mu3 | HardFamily::Mu4 => block_count_product(self.n, self.n1),
        };
        BlockPartition::new(self.n2, l).expect("admissibility implies L <= N2")
    }

    pub fn draw(&self, s: &mut Stream) -> DiscreteFunction {
        match self.family {
            HardFamily::Mu1 => draw_mu1(self, s),
            HardFamily::Mu2 => draw_mu2(self, s),
            HardFamily::Mu3 => draw_mu3(self, s),
            HardFamily::Mu4 => draw_mu4(self, s),
        }
    }
}

/// Independent fair signs on each (row, block) cell; tail columns are zero.
pub fn draw_mu1(spec: &InstanceSpec, s: &mut Stream) -> DiscreteFunction {
    let blocks = spec.blocks();
    let mut f = DiscreteFunction::zeros(spec.n1, spec.n2);
    for i in 0..spec.n1 {
        let row = f.row_mut(i);
        for j in 0..blocks.count() {
            let sign = s.bernoulli_sign();
            row[blocks.block(j)].fill(sign);
        }
    }
    f
}

/// `±(N1·N2/|D|)^{1/p}` on one uniformly chosen (row, block) cell.
pub fn draw_mu2(spec: &InstanceSpec, s: &mut Stream) -> DiscreteFunction {
    let blocks = spec.blocks();
    let i = s.uniform_index(spec.n1);
    let j = s.uniform_index(blocks.count());
    let sign = s.bernoulli_sign();
    let mass = (spec.n1 * spec.n2) as f64 / blocks.block_size() as f64;
    let amp = mass.powf(spec.p.recip());
    let mut f = DiscreteFunction::zeros(spec.n1, spec.n2);
    f.row_mut(i)[blocks.block(j)].fill(sign * amp);
    f
}

/// Each row independently (on its own substream) is `±(N2/|D|)^{1/p}` on one
/// uniformly chosen block.
pub fn draw_mu3(spec: &InstanceSpec, s: &mut Stream) -> DiscreteFunction {
    let blocks = spec.blocks();
    let amp = (spec.n2 as f64 / blocks.block_size() as f64).powf(spec.p.recip());
    let mut f = DiscreteFunction::zeros(spec.n1, spec.n2);
    for i in 0..spec.n1 {
        let mut rs = s.substream(i as u32);
        let j = rs.uniform_index(blocks.count());
        let sign = rs.bernoulli_sign();
        f.row_mut(i)[blocks.block(j)].fill(sign * amp);
    }
    f
}

/// One uniformly chosen row equals `N1^{1/p} Σ_j ε_j χ_{D_j}`; others are zero.
pub fn draw_mu4(spec: &InstanceSpec, s: &mut Stream) -> DiscreteFunction {
    let blocks = spec.blocks();
    let amp = (spec.n1 as f64).powf(spec.p.recip());
    let i = s.uniform_index(spec.n1);
    let mut f = DiscreteFunction::zeros(spec.n1, spec.n2);
    let row = f.row_mut(i);
    for j in 0..blocks.count() {
        let sign = s.bernoulli_sign();
        row[blocks.block(j)].fill(sign * amp);
    }
    f
}

/// Where the harness gets its inputs from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Hard(InstanceSpec),
    Witness {
        p: Exponent,
        q: Exponent,
        n1: usize,
        n2: usize,
    },
    Custom(DiscreteFunction),
}

impl InstanceSource {
    pub fn family(&self) -> InstanceFamily {
        match self {
            InstanceSource::Hard(spec) => InstanceFamily::Hard(spec.family()),
            InstanceSource::Witness { .. } => InstanceFamily::Witness,
            InstanceSource::Custom(_) => InstanceFamily::Custom,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            InstanceSource::Hard(spec) => (spec.n1(), spec.n2()),
            InstanceSource::Witness { n1, n2, .. } => (*n1, *n2),
            InstanceSource::Custom(f) => (f.n1(), f.n2()),
        }
    }

    /// Draws one input. Deterministic sources ignore the stream.
    pub fn draw(&self, s: &mut Stream) -> Result<Cow<'_, DiscreteFunction>> {
        match self {
            InstanceSource::Hard(spec) => Ok(Cow::Owned(spec.draw(s))),
            InstanceSource::Witness { p, q, n1, n2 } => Ok(Cow::Owned(norm_witness(*p, *q, *n1, *n2)?)),
            InstanceSource::Custom(f) => Ok(Cow::Borrowed(f)),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, InstanceSource::Hard(_))
    }
}
