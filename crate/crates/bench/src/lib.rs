//! Fixed inputs shared by the benchmarks.

use pbent::constructions::{Trinomial, TrinomialParams};
use pbent::{FieldCtx, PFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A uniformly random function on the Conway field F_{p^n}, seeded.
pub fn random_function(p: u32, n: u32, seed: u64) -> PFunction {
    let ctx = FieldCtx::conway(p, n).expect("Conway field available");
    PFunction::random(ctx, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The trinomial on F_{3^{4k}} with b = zeta^t.
pub fn trinomial(k: u32, j: u32, t: u64) -> PFunction {
    let params = TrinomialParams::new(k, j, t).expect("valid parameters");
    Trinomial::new(params).expect("field builds").function()
}
