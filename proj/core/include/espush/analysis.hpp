#pragma once

#include <array>
#include <string>
#include <vector>

#include "espush/mdp.hpp"

namespace espush {

// Decision-similarity study: distribution of the per-step direction errors
// of one policy against each heuristic.
struct SimilarityReport {
  std::string policy;
  int episode_count = 0;
  long total_steps = 0;
  std::array<long, 10> hist_vs_es{};
  std::array<long, 10> hist_vs_les{};
  double mean_vs_es = 0.0;
  double median_vs_es = 0.0;
  double mean_vs_les = 0.0;
  double median_vs_les = 0.0;
};

// Throws std::invalid_argument on empty input.
SimilarityReport similarity_analysis(const std::vector<EpisodeRecord>& records,
                                     const std::string& policy_name = {});

void write_similarity_json(const std::vector<SimilarityReport>& reports,
                           const std::string& path);
// policy,heuristic,bin_lo,bin_hi,count
void write_similarity_hist_csv(const std::vector<SimilarityReport>& reports,
                               const std::string& path);

// Table-I-style summary table.
struct PolicyRow {
  std::string name;
  SummaryStats stats;
};

// Aligned text table, rows ordered by policy name. Success-only columns show
// n/a when nothing succeeded.
std::string render_results_table(std::vector<PolicyRow> rows);
void write_results_csv(std::vector<PolicyRow> rows, const std::string& path);

// Per-step records parsed back from a steps.csv file (see write_steps_csv).
std::vector<EpisodeRecord> load_steps_csv(const std::string& path);

// Inspection images for a scene: visual state, obstacle mask, contour
// overlay, ODT, LDM, ESM, LESM, plus a top view with the ES and LES pushes
// drawn as bright pixels. Returns the file names written into out_dir.
std::vector<std::string> render_artifacts(const Scene& sc,
                                          const PolicyLimits& lim,
                                          const std::string& out_dir);

}  // namespace espush
