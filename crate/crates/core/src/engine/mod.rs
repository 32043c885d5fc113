//! Collision dynamics under the full chain, the erasure schemes and the
//! memory-embedded representation.

mod config;
mod propagate;
mod schedule;

pub use config::{AaOrdering, AncillaInit, ModelConfig, SchemeId};
pub use propagate::{
    evolve, evolve_embedded, evolve_full_chain, evolve_scheme, evolve_with, propagator,
    AncillaExchange, EmbeddedPropagator, ErasurePropagator, FullChainPropagator, Propagator,
    StepRecord, Trajectory,
};
pub use schedule::{step_operator, Collision, CollisionKind};
