#pragma once

#include <string>
#include <vector>

#include "filmsim/run_config.hpp"

namespace filmsim {

/// Per-output-time agreement metrics between the patch scheme and the
/// full-domain reference, sampled at patch centres.
struct ComparisonRow {
    double t = 0.0;
    double linf_h = 0.0;        ///< max |h_gap - h_full| over patch centres
    double rel_l2_h = 0.0;      ///< relative L2 error over patch centres
    double max_dev_full = 0.0;  ///< max |h - 1| of the full-domain field
    double max_dev_gap = 0.0;   ///< max |h - 1| over patch centres
    double mass_drift = 0.0;    ///< relative full-domain mass drift from t = 0
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    std::string failure;  ///< empty on success; otherwise which run failed and why

    bool ok() const { return failure.empty(); }
};

/// Runs the patch scheme and the full-domain reference from the same
/// macroscale initial profile and compares depth at patch centres at every
/// output time.  A failing simulation yields a partial report carrying the
/// failure record instead of throwing.
ComparisonReport run_compare(const RunConfig& cfg);

}  // namespace filmsim
