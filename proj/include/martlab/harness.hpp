#pragma once

#include "martlab/config.hpp"
#include "martlab/result_table.hpp"

namespace martlab {

// Each experiment builds its ensembles, runs its positive checks and its
// mandatory negative control, and returns a stamped table.  Throws
// std::invalid_argument on config problems.
ResultTable run_thm1_invariance(const ExperimentConfig& cfg);
ResultTable run_levy_check(const ExperimentConfig& cfg);
ResultTable run_lemma4_convergence(const ExperimentConfig& cfg);
ResultTable run_fclt(const ExperimentConfig& cfg);
ResultTable run_rn_roundtrip(const ExperimentConfig& cfg);
ResultTable run_tightness(const ExperimentConfig& cfg);

// Dispatch on cfg.experiment (validates first).
ResultTable run_experiment(const ExperimentConfig& cfg);

// CSV + JSONL into cfg.out_dir (if set), atomically.
void write_outputs(const ResultTable& table, const ExperimentConfig& cfg);

}  // namespace martlab
