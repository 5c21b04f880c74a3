//! Exact pattern matching in labeled graphs (PMLG), plus compilers that turn
//! Orthogonal Vectors instances into graph/pattern pairs on which a match
//! exists exactly when the instance has an orthogonal pair.

pub mod alphabet;
pub mod graph;
pub mod harness;
pub mod io;
pub mod matcher;
pub mod ov;
pub mod reductions;

pub use alphabet::Alphabet;
pub use graph::{
    degree_stats, expand_labels, is_acyclic, is_deterministic, validate_graph, Annotation,
    DegreeStats, Expansion, Gadget, GraphError, Kind, LabeledGraph, NodeId, Violation,
};
pub use harness::{
    bench_scaling, build_artifact, random_batch, verify_batch, verify_reduction, BatchItem,
    HarnessError, ScalingReport, ScalingRow, VerificationReport,
};
pub use io::{
    read_graph, read_ov, read_pattern, write_graph, write_ov, write_pattern, FormatError,
};
pub use matcher::{
    find_matches, find_matches_from, match_exists, oracle_match_exists, MatchError,
    MatchOccurrence, Pattern,
};
pub use ov::{
    dot, enumerate_instances, gen_ov_instance, solve_ov_bruteforce, BinaryVector, GenMode, OvError,
    OvInstance,
};
pub use reductions::{
    assemble_undirected, assemble_zigzag, build_deterministic_dag, encode_binary, orient_to_dag,
    ArtifactMeta, ReductionArtifact, ReductionError, Variant,
};
