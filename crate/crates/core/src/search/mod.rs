//! Brute-force search for integral solutions of
//! `(b₃t³+b₂t²+b₁t+b₀) F + ((c₅t⁵+c₄t⁴+c₃t³+c₂t²−t) F′)′ = 0`.

mod probe;
mod shard;
mod tuple;

pub use probe::{integrality_probe, probe_tuple, ProbeResult};
pub use shard::{
    reset_shard, reverify, run_all_shards, run_shard, run_shard_until, SearchConfig, ShardReport, SurvivorRecord,
    DEFAULT_DEPTH,
};
pub use tuple::{integer_coefficients, SearchBox, SearchTuple, TupleKind, COORDS, FLIPPED};
