#pragma once

#include <string>
#include <vector>

#include "mgedge/harness.hpp"

namespace mgedge {

// Self-contained SVG figures mirroring the three result views: volatility as
// a function of alpha (flat dashed lines for memoryless rules), and per-policy
// bar charts of mean utility and QoE probability at the best sweep point.
void write_volatility_plot(const std::string& path,
                           const std::vector<ExperimentReport>& reports);
void write_utility_plot(const std::string& path,
                        const std::vector<ExperimentReport>& reports,
                        double optimum);  // dashed reference line, e.g. cutoff/M
void write_qoe_plot(const std::string& path,
                    const std::vector<ExperimentReport>& reports);

}  // namespace mgedge
