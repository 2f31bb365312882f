#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "espush/policy.hpp"

namespace espush {

enum class RewardScheme { kSparse, kEsShaped, kLesShaped };
enum class Outcome { kRunning, kSingulated, kFellOff, kTimeout };

const char* to_string(Outcome o);
const char* to_string(RewardScheme s);

struct MdpConfig {
  int t_max = 10;
  RewardScheme scheme = RewardScheme::kSparse;
  PolicyLimits limits;
  SimConfig sim;
};

struct StepResult {
  Scene next;
  double reward = 0.0;
  bool done = false;
  Outcome outcome = Outcome::kRunning;
  double e_es = 0.0;   // direction error vs the ES rule on the pre-push scene
  double e_les = 0.0;  // same vs the LES rule
  bool no_op = false;  // start-point search failed; scene unchanged
};

// Direction disagreement in [0, 1]: 0 for equal bearings, 1 for opposite.
double shaping_error(double theta_p, double theta_h);

// Non-terminal per-push reward of a scheme.
double step_reward(RewardScheme scheme, int t_max, double e);

struct RewardResult {
  double reward = 0.0;
  bool done = false;
  Outcome outcome = Outcome::kRunning;
};

// Terminal precedence: fell-off (-1) over singulated (+1) over timeout; a
// timeout step keeps the scheme's step reward.
RewardResult score_push(bool target_fell, bool singulated_after, int t,
                        const MdpConfig& cfg, double e_for_scheme);

// Spec-shaped entry point: renders `prev` to recover the heuristic bearings.
// t is the 1-based index of this push.
RewardResult compute_reward(const Scene& prev, const PushCommand& cmd,
                            const PushOutcome& out, const MdpConfig& cfg,
                            int t);

// One environment transition; `v` must be the raster of `sc`.
StepResult step(const Scene& sc, const VisualGrid& v, const PushCommand& cmd,
                const MdpConfig& cfg, int t);
StepResult step(const Scene& sc, const PushCommand& cmd, const MdpConfig& cfg,
                int t);

class PushPolicy {
 public:
  virtual ~PushPolicy() = default;
  virtual PushCommand decide(const VisualGrid& v, const Scene& sc,
                             Rng& rng) const = 0;
  virtual std::string name() const = 0;
};

class EsPolicy : public PushPolicy {
 public:
  explicit EsPolicy(const PolicyLimits& lim) : lim_(lim) {}
  PushCommand decide(const VisualGrid& v, const Scene&, Rng&) const override {
    return es_decide(v, lim_);
  }
  std::string name() const override { return "ES"; }

 private:
  PolicyLimits lim_;
};

class LesPolicy : public PushPolicy {
 public:
  explicit LesPolicy(const PolicyLimits& lim) : lim_(lim) {}
  PushCommand decide(const VisualGrid& v, const Scene&, Rng&) const override {
    return les_decide(v, lim_);
  }
  std::string name() const override { return "LES"; }

 private:
  PolicyLimits lim_;
};

class RandomPolicy : public PushPolicy {
 public:
  explicit RandomPolicy(const PolicyLimits& lim) : lim_(lim) {}
  PushCommand decide(const VisualGrid&, const Scene&, Rng& rng) const override {
    return random_decide(rng, lim_);
  }
  std::string name() const override { return "RAND"; }

 private:
  PolicyLimits lim_;
};

struct StepRecord {
  int t = 0;
  PushCommand cmd;
  double reward = 0.0;
  double e_es = 0.0;
  double e_les = 0.0;
};

struct EpisodeRecord {
  std::uint64_t scene_id = 0;
  Outcome outcome = Outcome::kRunning;
  int n_actions = 0;
  std::vector<StepRecord> steps;
};

EpisodeRecord run_episode(const PushPolicy& policy, const Scene& sc0,
                          const MdpConfig& cfg, std::uint64_t episode_seed);

struct SummaryStats {
  int n_episodes = 0;
  int n_success = 0;
  double success_rate = 0.0;
  // #actions over all episodes and over successful episodes only; Table-I
  // style reports show both conventions
  double mean_actions_all = 0.0;
  double std_actions_all = 0.0;
  double mean_actions_success = 0.0;  // 0 when n_success == 0
  double std_actions_success = 0.0;
  std::array<long, 10> hist_e_es{};
  std::array<long, 10> hist_e_les{};
  double mean_e_es = 0.0;
  double mean_e_les = 0.0;
  long total_steps = 0;
};

SummaryStats summarize(const std::vector<EpisodeRecord>& episodes);

struct EvaluationResult {
  std::string policy_name;
  std::vector<EpisodeRecord> episodes;
  SummaryStats summary;
};

// Runs one episode per scene. Episode i gets the deterministic seed
// mix_seed(base_seed, i); results do not depend on n_threads.
EvaluationResult evaluate(const PushPolicy& policy,
                          const std::vector<Scene>& scenes,
                          const MdpConfig& cfg, std::uint64_t base_seed,
                          int n_threads = 1);

// episodes.csv: scene_id,outcome,n_actions,mean_e_es,mean_e_les
void write_episode_csv(const EvaluationResult& r, const std::string& path);
// steps.csv: episode,scene_id,t,theta,d,reward,e_es,e_les
void write_steps_csv(const EvaluationResult& r, const std::string& path);
// summary fields as JSON
void write_summary_json(const EvaluationResult& r, const std::string& path);

// bin index for the width-0.1 error histograms over [0, 1]
int error_bin(double e);

}  // namespace espush
