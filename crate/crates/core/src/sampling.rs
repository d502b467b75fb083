//! Seeded generators for sample points, perturbations and evaluation grids.
//! Every stream is a ChaCha8 stream, so a seed reproduces it on any platform.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counterexample::Interval;
use crate::error::{Error, Result};
use crate::funceq::{singularity, FinitePerturbation, RootMapping};
use crate::valued_field::{powi, ExactRational};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero `±a/b` with `1 <= a <= max_num`, `1 <= b <= max_den`.
    pub fn nonzero_rational(&mut self, max_num: i64, max_den: i64) -> ExactRational {
        let a = self.rng.gen_range(1..=max_num);
        let b = self.rng.gen_range(1..=max_den);
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        ExactRational::new(BigInt::from(sign * a), BigInt::from(b))
    }

    /// Rational in `[lo, hi]` on a lattice of spacing `(hi - lo) / resolution`.
    pub fn rational_in(&mut self, lo: &ExactRational, hi: &ExactRational, resolution: i64) -> ExactRational {
        let step = self.rng.gen_range(0..=resolution);
        lo + (hi - lo) * ExactRational::new(BigInt::from(step), BigInt::from(resolution))
    }

    /// Random `x * 3^j` with `|j| <= spread`, a scale where the direct-method orbits live.
    pub fn three_adic_point(&mut self, spread: i64) -> ExactRational {
        let base = self.nonzero_rational(50, 50);
        let j = self.rng.gen_range(-spread..=spread);
        base * powi(&ExactRational::from_integer(3.into()), j)
    }

    /// A pair avoiding every singular case for `m`.
    pub fn admissible_pair(&mut self, m: &RootMapping, max: i64) -> (ExactRational, ExactRational) {
        loop {
            let x = self.nonzero_rational(max, max);
            let y = self.nonzero_rational(max, max);
            if singularity(m, &x, &y).is_none() {
                return (x, y);
            }
        }
    }

    /// Deviation `t = a/b` with `t > -1` and `t != 0`.
    pub fn deviation(&mut self) -> ExactRational {
        loop {
            let b = self.rng.gen_range(1..=20i64);
            let a = self.rng.gen_range(-b + 1..=2 * b);
            if a != 0 {
                return ExactRational::new(BigInt::from(a), BigInt::from(b));
            }
        }
    }

    /// Perturbation supported on `size` points drawn from `candidates`.
    pub fn perturbation_on(&mut self, candidates: &[ExactRational], size: usize) -> FinitePerturbation {
        let mut p = FinitePerturbation::new();
        if candidates.is_empty() {
            return p;
        }
        for _ in 0..size {
            let i = self.rng.gen_range(0..candidates.len());
            let t = self.deviation();
            p.insert(candidates[i].clone(), t).expect("valid deviation");
        }
        p
    }

    /// Perturbation supported on `size` random nonzero points.
    pub fn perturbation(&mut self, size: usize) -> FinitePerturbation {
        let candidates: Vec<ExactRational> = (0..size.max(1) * 2)
            .map(|_| self.nonzero_rational(20, 20))
            .collect();
        self.perturbation_on(&candidates, size)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Geometric,
    Random { seed: u64 },
}

impl Spacing {
    pub fn name(self) -> &'static str {
        match self {
            Spacing::Linear => "linear",
            Spacing::Geometric => "geometric",
            Spacing::Random { .. } => "random",
        }
    }
}

/// A one-dimensional set of positive sample points; grids are its square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub min: ExactRational,
    pub max: ExactRational,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<ExactRational>> {
        if self.min <= ExactRational::from_integer(0.into()) || self.max < self.min {
            return Err(Error::domain("grid range must satisfy 0 < min <= max"));
        }
        let n = self.count;
        if n == 0 {
            return Ok(Vec::new());
        }
        if n == 1 {
            return Ok(vec![self.min.clone()]);
        }
        let last = (n - 1) as i64;
        let pts = match self.spacing {
            Spacing::Linear => (0..n as i64)
                .map(|i| &self.min + (&self.max - &self.min) * ExactRational::new(i.into(), last.into()))
                .collect(),
            Spacing::Geometric => {
                let ratio = &self.max / &self.min;
                (0..n as i64)
                    .map(|i| {
                        if i == 0 {
                            self.min.clone()
                        } else if i == last {
                            self.max.clone()
                        } else {
                            let step = Interval::nth_root(&powi(&ratio, i), last as u32, 24);
                            &self.min * step.lo()
                        }
                    })
                    .collect()
            }
            Spacing::Random { seed } => {
                let mut s = Sampler::new(seed);
                let mut v: Vec<ExactRational> =
                    (0..n).map(|_| s.rational_in(&self.min, &self.max, 4096)).collect();
                v.sort();
                v
            }
        };
        Ok(pts)
    }

    /// All ordered pairs with `2x != ±y`.
    pub fn pairs(&self) -> Result<Vec<(ExactRational, ExactRational)>> {
        let pts = self.points()?;
        let two = ExactRational::from_integer(2.into());
        let mut out = Vec::with_capacity(pts.len() * pts.len());
        for x in &pts {
            for y in &pts {
                let tx = x * &two;
                if &tx != y && tx != -y.clone() {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::rational::{int, rat};

    #[test]
    fn seeds_reproduce() {
        let a: Vec<_> = (0..5).map({
            let mut s = Sampler::new(7);
            move |_| s.nonzero_rational(100, 100)
        }).collect();
        let b: Vec<_> = (0..5).map({
            let mut s = Sampler::new(7);
            move |_| s.nonzero_rational(100, 100)
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn grids() {
        let spec = GridSpec {
            min: rat(1, 4),
            max: int(81),
            count: 20,
            spacing: Spacing::Geometric,
        };
        let pts = spec.points().unwrap();
        assert_eq!(pts.len(), 20);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(pts[0], rat(1, 4));
        assert_eq!(pts[19], int(81));
        assert_eq!(spec.pairs().unwrap().len(), 400);

        let lin = GridSpec { spacing: Spacing::Linear, count: 3, min: int(1), max: int(2) };
        assert_eq!(lin.points().unwrap(), vec![int(1), rat(3, 2), int(2)]);
        // (1, 2) is excluded
        assert_eq!(lin.pairs().unwrap().len(), 8);
        let bad = GridSpec { min: int(0), ..lin };
        assert!(bad.points().is_err());
    }
}
