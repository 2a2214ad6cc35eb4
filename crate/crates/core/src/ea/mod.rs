//! Non-elitist population EAs: bit strings, fitness functions, selection,
//! mutation, generations and level instrumentation.

mod bitstring;
mod engine;
mod fitness;
mod levels;
mod models;
mod operators;

pub use bitstring::Bitstring;
pub use engine::{ea_generation, ea_run, ea_run_traced, initial_population, EaConfig, RunRecord, SelectionKind};
pub use fitness::{leadingones, onemax, onemax_partial, FitnessKind};
pub use levels::{
    construct_population, estimate_level_params, individual_with_fitness, level_occupancy, LevelEstimate,
};
pub use models::{fps_model, ranking_model, tournament_model};
pub use operators::{
    mutate_in_place, mutate_standard, select_fitness_proportionate, select_ranking_mu_comma, select_tournament2,
    FpsSampler, RankingSampler,
};
