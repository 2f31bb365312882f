#include "espush/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace espush {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kRunning:
      return "running";
    case Outcome::kSingulated:
      return "singulated";
    case Outcome::kFellOff:
      return "fell_off";
    case Outcome::kTimeout:
      return "timeout";
  }
  return "?";
}

const char* to_string(RewardScheme s) {
  switch (s) {
    case RewardScheme::kSparse:
      return "sparse";
    case RewardScheme::kEsShaped:
      return "es_shaped";
    case RewardScheme::kLesShaped:
      return "les_shaped";
  }
  return "?";
}

double shaping_error(double theta_p, double theta_h) {
  return 0.5 * (1.0 - std::cos(theta_h - theta_p));
}

double step_reward(RewardScheme scheme, int t_max, double e) {
  if (scheme == RewardScheme::kSparse) return -1.0 / t_max;
  return (-1.0 - e) / (2.0 * t_max);
}

RewardResult score_push(bool target_fell, bool singulated_after, int t,
                        const MdpConfig& cfg, double e_for_scheme) {
  if (target_fell) return {-1.0, true, Outcome::kFellOff};
  if (singulated_after) return {1.0, true, Outcome::kSingulated};
  const double r = step_reward(cfg.scheme, cfg.t_max, e_for_scheme);
  if (t >= cfg.t_max) return {r, true, Outcome::kTimeout};
  return {r, false, Outcome::kRunning};
}

RewardResult compute_reward(const Scene& prev, const PushCommand& cmd,
                            const PushOutcome& out, const MdpConfig& cfg,
                            int t) {
  double e = 0.0;
  if (cfg.scheme == RewardScheme::kEsShaped) {
    const VisualGrid v = render_visual_state(prev);
    e = shaping_error(cmd.theta, es_decide(v, cfg.limits).theta);
  } else if (cfg.scheme == RewardScheme::kLesShaped) {
    const VisualGrid v = render_visual_state(prev);
    e = shaping_error(cmd.theta, les_decide(v, cfg.limits).theta);
  }
  return score_push(out.target_fell, is_singulated(out.next), t, cfg, e);
}

StepResult step(const Scene& sc, const VisualGrid& v, const PushCommand& cmd,
                const MdpConfig& cfg, int t) {
  StepResult res;
  res.e_es = shaping_error(cmd.theta, es_decide(v, cfg.limits).theta);
  res.e_les = shaping_error(cmd.theta, les_decide(v, cfg.limits).theta);
  const double e_scheme = cfg.scheme == RewardScheme::kEsShaped    ? res.e_es
                          : cfg.scheme == RewardScheme::kLesShaped ? res.e_les
                                                                   : 0.0;

  const auto seg = resolve_push_segment(v, sc, cmd, cfg.limits);
  if (!seg) {
    // no reachable start point: the push degenerates to a penalized no-op
    res.next = sc;
    res.no_op = true;
    res.reward = step_reward(cfg.scheme, cfg.t_max, e_scheme);
    if (t >= cfg.t_max) {
      res.done = true;
      res.outcome = Outcome::kTimeout;
    }
    return res;
  }

  PushOutcome out = execute_push(sc, *seg, cfg.sim);
  const RewardResult rr =
      score_push(out.target_fell, is_singulated(out.next), t, cfg, e_scheme);
  res.next = std::move(out.next);
  res.reward = rr.reward;
  res.done = rr.done;
  res.outcome = rr.outcome;
  return res;
}

StepResult step(const Scene& sc, const PushCommand& cmd, const MdpConfig& cfg,
                int t) {
  return step(sc, render_visual_state(sc), cmd, cfg, t);
}

EpisodeRecord run_episode(const PushPolicy& policy, const Scene& sc0,
                          const MdpConfig& cfg, std::uint64_t episode_seed) {
  Rng rng(episode_seed);
  EpisodeRecord rec;
  rec.scene_id = sc0.seed;
  Scene sc = sc0;
  for (int t = 1; t <= cfg.t_max; ++t) {
    const VisualGrid v = render_visual_state(sc);
    const PushCommand cmd = policy.decide(v, sc, rng);
    StepResult res = step(sc, v, cmd, cfg, t);
    rec.steps.push_back({t, cmd, res.reward, res.e_es, res.e_les});
    rec.n_actions = t;
    sc = std::move(res.next);
    if (res.done) {
      rec.outcome = res.outcome;
      break;
    }
  }
  return rec;
}

SummaryStats summarize(const std::vector<EpisodeRecord>& episodes) {
  SummaryStats s;
  s.n_episodes = static_cast<int>(episodes.size());
  double sum_all = 0.0, sum2_all = 0.0, sum_succ = 0.0, sum2_succ = 0.0;
  double sum_e_es = 0.0, sum_e_les = 0.0;
  for (const EpisodeRecord& ep : episodes) {
    sum_all += ep.n_actions;
    sum2_all += static_cast<double>(ep.n_actions) * ep.n_actions;
    if (ep.outcome == Outcome::kSingulated) {
      ++s.n_success;
      sum_succ += ep.n_actions;
      sum2_succ += static_cast<double>(ep.n_actions) * ep.n_actions;
    }
    for (const StepRecord& st : ep.steps) {
      ++s.total_steps;
      ++s.hist_e_es[error_bin(st.e_es)];
      ++s.hist_e_les[error_bin(st.e_les)];
      sum_e_es += st.e_es;
      sum_e_les += st.e_les;
    }
  }
  const auto pop_std = [](double sum, double sum2, int n) {
    if (n == 0) return 0.0;
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, sum2 / n - mean * mean));
  };
  if (s.n_episodes > 0) {
    s.success_rate = static_cast<double>(s.n_success) / s.n_episodes;
    s.mean_actions_all = sum_all / s.n_episodes;
    s.std_actions_all = pop_std(sum_all, sum2_all, s.n_episodes);
  }
  if (s.n_success > 0) {
    s.mean_actions_success = sum_succ / s.n_success;
    s.std_actions_success = pop_std(sum_succ, sum2_succ, s.n_success);
  }
  if (s.total_steps > 0) {
    s.mean_e_es = sum_e_es / s.total_steps;
    s.mean_e_les = sum_e_les / s.total_steps;
  }
  return s;
}

EvaluationResult evaluate(const PushPolicy& policy,
                          const std::vector<Scene>& scenes,
                          const MdpConfig& cfg, std::uint64_t base_seed,
                          int n_threads) {
  if (scenes.empty()) throw std::invalid_argument("evaluate: no scenes");
  EvaluationResult result;
  result.policy_name = policy.name();
  result.episodes.resize(scenes.size());

  const auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      result.episodes[i] =
          run_episode(policy, scenes[i], cfg, mix_seed(base_seed, i));
      result.episodes[i].scene_id = i;
    }
  };

  n_threads = std::max(1, n_threads);
  if (n_threads == 1 || scenes.size() < 2) {
    worker(0, scenes.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk =
        (scenes.size() + n_threads - 1) / static_cast<std::size_t>(n_threads);
    for (std::size_t b = 0; b < scenes.size(); b += chunk) {
      pool.emplace_back(worker, b, std::min(b + chunk, scenes.size()));
    }
    for (std::thread& th : pool) th.join();
  }

  result.summary = summarize(result.episodes);
  return result;
}

void write_episode_csv(const EvaluationResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "scene_id,outcome,n_actions,mean_e_es,mean_e_les\n";
  for (const EpisodeRecord& ep : r.episodes) {
    double se = 0.0, sl = 0.0;
    for (const StepRecord& st : ep.steps) {
      se += st.e_es;
      sl += st.e_les;
    }
    const double n = ep.steps.empty() ? 1.0 : static_cast<double>(ep.steps.size());
    out << ep.scene_id << ',' << to_string(ep.outcome) << ',' << ep.n_actions
        << ',' << format_double(se / n) << ',' << format_double(sl / n)
        << '\n';
  }
}

void write_steps_csv(const EvaluationResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "episode,scene_id,t,theta,d,reward,e_es,e_les\n";
  for (std::size_t i = 0; i < r.episodes.size(); ++i) {
    const EpisodeRecord& ep = r.episodes[i];
    for (const StepRecord& st : ep.steps) {
      out << i << ',' << ep.scene_id << ',' << st.t << ','
          << format_double(st.cmd.theta) << ',' << format_double(st.cmd.d)
          << ',' << format_double(st.reward) << ',' << format_double(st.e_es)
          << ',' << format_double(st.e_les) << '\n';
    }
  }
}

void write_summary_json(const EvaluationResult& r, const std::string& path) {
  const SummaryStats& s = r.summary;
  nlohmann::json j{{"policy", r.policy_name},
                   {"n_episodes", s.n_episodes},
                   {"n_success", s.n_success},
                   {"success_rate", s.success_rate},
                   {"mean_actions_all", s.mean_actions_all},
                   {"std_actions_all", s.std_actions_all},
                   {"mean_actions_success", s.mean_actions_success},
                   {"std_actions_success", s.std_actions_success},
                   {"mean_e_es", s.mean_e_es},
                   {"mean_e_les", s.mean_e_les},
                   {"total_steps", s.total_steps},
                   {"hist_e_es", s.hist_e_es},
                   {"hist_e_les", s.hist_e_les}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

int error_bin(double e) {
  const int b = static_cast<int>(e * 10.0);
  return std::clamp(b, 0, 9);
}

}  // namespace espush
