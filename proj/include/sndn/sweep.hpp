#pragma once

#include <string>
#include <vector>

#include "sndn/config.hpp"
#include "sndn/engine.hpp"

namespace sndn {

struct SweepRow {
    SimConfig config;
    MetricsReport metrics;
    bool failed = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (scheme, ttl, alpha, tp, kappa, seed)
    bool any_failed = false;

    /// Combined metrics.csv: run rows followed by per-combination aggregate
    /// rows (mean over seeds, seed = -1). Extends the run schema with
    /// status and config_hash columns.
    std::string to_csv() const;
};

/// Runs the cross product on a bounded worker pool. Output is independent
/// of the parallelism degree.
SweepResult run_sweep(const ExperimentSpec& spec, const SimInputs& inputs, int parallelism);

}  // namespace sndn
