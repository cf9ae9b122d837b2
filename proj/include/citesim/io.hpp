#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "citesim/engine.hpp"
#include "citesim/fit.hpp"
#include "citesim/population.hpp"
#include "citesim/stats.hpp"

namespace citesim {

// Every writer goes through write_file_atomic (temp file + rename), so a
// failing command never leaves a partly written output behind.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Team CSV: header `paper_id,team_size`, rows in ascending paper_id from 0.
void write_team_csv(const std::string& path, const TeamSizeVector& teams);
TeamSizeVector read_team_csv(const std::string& path);

// Distribution CSV: `bin_lo,bin_hi,bin_center,count,density`.
std::string distribution_csv(const BinnedDistribution& dist);
void write_distribution_csv(const std::string& path, const BinnedDistribution& dist);
BinnedDistribution read_distribution_csv(const std::string& path);

// Share CSV: `period_label,events,direct,indirect,direct_share`; the share
// field is empty for zero-event periods.
std::string share_csv(const std::vector<PeriodShare>& shares);
void write_share_csv(const std::string& path, const std::vector<PeriodShare>& shares);

// GM CSV: `team_lo,team_hi,n_papers,gm`.
std::string gm_csv(const std::vector<TeamGmBucket>& buckets);
void write_gm_csv(const std::string& path, const std::vector<TeamGmBucket>& buckets);

// Kernel configuration object; unknown fields are rejected.
nlohmann::json kernel_to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const nlohmann::json& j);

void write_run_json(const std::string& path, const RunResult& rr,
                    const SimulationConfig& cfg, const KernelSpec& kernel);
RunResult read_run_json(const std::string& path);

void write_fit_json(const std::string& path, const FitResult& fit);

}  // namespace citesim
