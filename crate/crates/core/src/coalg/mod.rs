//! Hausdorff polynomial functors, their coalgebras, final chains,
//! behavioural distances, equalisers and initial lifts.

mod chain;
mod coalgebra;
mod functor;

pub use chain::{
    behavior_map, behavior_maps, behavioral_distance, behavioral_distance_via_chain, distance_sequences,
    distance_tables, final_chain, symmetric_behavioral_distance, ChainLevel,
};
pub use coalgebra::{
    coalg_hom_report, equalizer, initial_lift_coalgebra, is_coalg_hom, lift_from, Coalgebra, Equalizer, InitialLift,
};
pub use functor::{eval_functor, eval_mor, eval_obj, FObject, FTerm, FunctorExpr};
