//! Benchmark fixtures: reduction artifacts built from no-orthogonal instances,
//! so the matcher has to explore the whole graph.

use pmlg_core::{build_artifact, gen_ov_instance, GenMode, ReductionArtifact, Variant};

pub const SEED: u64 = 17;

pub fn artifact(variant: Variant, n: usize, d: usize) -> ReductionArtifact {
    let inst = gen_ov_instance(n, d, SEED, GenMode::NoOrthogonal).expect("valid sizes");
    build_artifact(&inst, variant, false).expect("no all-zero y in a no-orthogonal instance")
}
