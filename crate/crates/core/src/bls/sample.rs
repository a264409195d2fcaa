use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::radial::{RadialLaw, RadialSampler};
use super::{Bls, Pair};
use crate::error::{domain, Result};

impl Bls {
    /// `n` independent pairs from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<Pair>> {
        let sampler = RadialLaw::new(self.spec).sampler()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&sampler, n, &mut rng)
    }

    /// Draws through a prebuilt radial sampler, which must belong to this
    /// distribution's generator. Polar form: `d²` by inversion, angle uniform.
    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        sampler: &RadialSampler,
        n: usize,
        rng: &mut R,
    ) -> Result<Vec<Pair>> {
        if sampler.law().spec() != self.spec {
            return domain("radial sampler was built for a different generator");
        }
        let rho = self.theta.rho;
        let s = (1.0 - rho * rho).sqrt();
        (0..n)
            .map(|_| {
                let d2 = sampler.invert(rng.gen::<f64>())?;
                let angle = TAU * rng.gen::<f64>();
                let r = d2.sqrt();
                let (z1, z2) = (r * angle.cos(), r * angle.sin());
                Ok(self.destandardize([z1, rho * z1 + s * z2]))
            })
            .collect()
    }
}
