// Command-line front end: scene generation, policy evaluation, replay-buffer
// filling, offline training, similarity analysis and map rendering. Every
// run ends by writing a manifest with content hashes of its outputs, so a
// rerun with the same seed and config can be checked byte for byte.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "espush/analysis.hpp"
#include "espush/app_config.hpp"
#include "espush/ddpg.hpp"
#include "espush/manifest.hpp"
#include "espush/mdp.hpp"
#include "espush/replay.hpp"
#include "espush/scene.hpp"

namespace {

using namespace espush;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonArgs {
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--seed", args.seed, "base seed for the run");
  cmd->add_option("--config", args.config_path,
                  "JSON config file (defaults apply to missing keys)");
  cmd->add_option("--out", args.out_dir, "output directory");
}

RunManifest start_manifest(const std::string& command, const CommonArgs& args,
                           const AppConfig& cfg) {
  std::filesystem::create_directories(args.out_dir);
  RunManifest m;
  m.command = command;
  m.seed = args.seed;
  m.config_echo = config_echo_json(cfg);
  return m;
}

std::unique_ptr<PushPolicy> make_policy(const std::string& name,
                                        const std::string& model_path,
                                        const AppConfig& cfg) {
  if (name == "es") return std::make_unique<EsPolicy>(cfg.limits);
  if (name == "les") return std::make_unique<LesPolicy>(cfg.limits);
  if (name == "random") return std::make_unique<RandomPolicy>(cfg.limits);
  if (name == "actor") {
    if (model_path.empty())
      throw ConfigError("--policy actor requires --model <file>");
    return std::make_unique<ActorPolicy>(load_mlp(model_path), cfg.limits,
                                         "RL");
  }
  throw ConfigError("unknown policy '" + name +
                    "' (expected es, les, random or actor)");
}

int run_gen_scenes(const CommonArgs& args, int count_override) {
  const AppConfig cfg = load_app_config(args.config_path);
  const int count = count_override > 0 ? count_override : cfg.scene_count;
  RunManifest m = start_manifest("gen-scenes", args, cfg);

  std::vector<Scene> scenes;
  scenes.reserve(count);
  for (int i = 0; i < count; ++i)
    scenes.push_back(generate_scene(cfg.scene_gen, mix_seed(args.seed, i)));
  save_scene_batch(scenes, args.out_dir + "/scenes.json");
  record_output(m, args.out_dir, "scenes.json");
  write_manifest(m, args.out_dir + "/manifest.json");
  std::printf("gen-scenes: wrote %d scenes to %s/scenes.json\n", count,
              args.out_dir.c_str());
  return kExitOk;
}

int run_eval(const CommonArgs& args, const std::string& scenes_path,
             const std::string& policy_name, const std::string& model_path,
             int threads_override) {
  const AppConfig cfg = load_app_config(args.config_path);
  const auto policy = make_policy(policy_name, model_path, cfg);
  const std::vector<Scene> scenes = load_scene_batch(scenes_path);
  RunManifest m = start_manifest("eval", args, cfg);
  m.inputs.push_back(scenes_path);
  if (!model_path.empty()) m.inputs.push_back(model_path);

  const int threads = threads_override > 0 ? threads_override : cfg.threads;
  const EvaluationResult result =
      evaluate(*policy, scenes, cfg.mdp(), args.seed, threads);

  write_episode_csv(result, args.out_dir + "/episodes.csv");
  write_steps_csv(result, args.out_dir + "/steps.csv");
  write_summary_json(result, args.out_dir + "/summary.json");
  record_output(m, args.out_dir, "episodes.csv");
  record_output(m, args.out_dir, "steps.csv");
  record_output(m, args.out_dir, "summary.json");
  write_manifest(m, args.out_dir + "/manifest.json");

  const SummaryStats& s = result.summary;
  std::printf(
      "eval %s: %d episodes, success %.1f%%, mean #actions %.2f (all) / %.2f "
      "(successes)\n",
      result.policy_name.c_str(), s.n_episodes, 100.0 * s.success_rate,
      s.mean_actions_all, s.mean_actions_success);
  return kExitOk;
}

int run_fill_buffer(const CommonArgs& args, long count_override,
                    int threads_override) {
  const AppConfig cfg = load_app_config(args.config_path);
  RunManifest m = start_manifest("fill-buffer", args, cfg);
  const std::size_t count = count_override > 0
                                ? static_cast<std::size_t>(count_override)
                                : cfg.ddpg.buffer_size;
  const int threads = threads_override > 0 ? threads_override : cfg.threads;

  const ReplayBuffer buf =
      fill_replay_buffer(count, cfg.scene_gen, cfg.mdp(), args.seed, threads);
  save_buffer(buf, args.out_dir + "/buffer.bin");
  record_output(m, args.out_dir, "buffer.bin");
  write_manifest(m, args.out_dir + "/manifest.json");
  std::printf("fill-buffer: stored %zu transitions to %s/buffer.bin\n",
              buf.items.size(), args.out_dir.c_str());
  return kExitOk;
}

int run_train(const CommonArgs& args, const std::string& buffer_path,
              const std::string& scheme_name) {
  AppConfig cfg = load_app_config(args.config_path);
  if (!scheme_name.empty()) cfg.scheme = scheme_from_string(scheme_name);
  RunManifest m = start_manifest("train", args, cfg);
  m.inputs.push_back(buffer_path);

  const ReplayBuffer buf = load_buffer(buffer_path);
  DdpgConfig ddpg = cfg.ddpg;
  ddpg.seed = args.seed;
  const TrainResult result = ddpg_train(buf, ddpg, cfg.scheme);

  const std::string echo = config_echo_json(cfg);
  save_mlp(result.actor, args.out_dir + "/actor.bin", echo);
  save_mlp(result.critic, args.out_dir + "/critic.bin", echo);
  write_loss_csv(result.losses, args.out_dir + "/losses.csv");
  record_output(m, args.out_dir, "actor.bin");
  record_output(m, args.out_dir, "critic.bin");
  record_output(m, args.out_dir, "losses.csv");
  write_manifest(m, args.out_dir + "/manifest.json");

  std::printf("train %s: critic loss %.6f (epoch 1) -> %.6f (epoch %d)\n",
              to_string(cfg.scheme), result.losses.front().critic_loss,
              result.losses.back().critic_loss,
              result.losses.back().epoch);
  return kExitOk;
}

int run_analyze(const CommonArgs& args,
                const std::vector<std::string>& run_dirs) {
  const AppConfig cfg = load_app_config(args.config_path);
  if (run_dirs.empty())
    throw ConfigError("analyze requires at least one --run <dir>");
  RunManifest m = start_manifest("analyze", args, cfg);

  std::vector<SimilarityReport> reports;
  std::vector<PolicyRow> rows;
  for (const std::string& dir : run_dirs) {
    m.inputs.push_back(dir);
    const std::vector<EpisodeRecord> episodes =
        load_steps_csv(dir + "/steps.csv");
    // outcome detail comes from episodes.csv via the summary; reuse the
    // stored summary for the table
    std::ifstream sin(dir + "/summary.json");
    if (!sin) throw std::runtime_error("missing " + dir + "/summary.json");
    nlohmann::json js;
    sin >> js;
    PolicyRow row;
    row.name = js.at("policy").get<std::string>();
    row.stats.n_episodes = js.at("n_episodes").get<int>();
    row.stats.n_success = js.at("n_success").get<int>();
    row.stats.success_rate = js.at("success_rate").get<double>();
    row.stats.mean_actions_all = js.at("mean_actions_all").get<double>();
    row.stats.std_actions_all = js.at("std_actions_all").get<double>();
    row.stats.mean_actions_success =
        js.at("mean_actions_success").get<double>();
    row.stats.std_actions_success = js.at("std_actions_success").get<double>();
    rows.push_back(row);
    reports.push_back(similarity_analysis(episodes, row.name));
  }

  write_similarity_json(reports, args.out_dir + "/similarity.json");
  write_similarity_hist_csv(reports, args.out_dir + "/similarity_hist.csv");
  write_results_csv(rows, args.out_dir + "/results_table.csv");
  const std::string table = render_results_table(rows);
  {
    std::ofstream out(args.out_dir + "/results_table.txt");
    out << table;
  }
  record_output(m, args.out_dir, "similarity.json");
  record_output(m, args.out_dir, "similarity_hist.csv");
  record_output(m, args.out_dir, "results_table.csv");
  record_output(m, args.out_dir, "results_table.txt");
  write_manifest(m, args.out_dir + "/manifest.json");
  std::printf("%s", table.c_str());
  return kExitOk;
}

int run_render(const CommonArgs& args, const std::string& scene_path,
               int index) {
  const AppConfig cfg = load_app_config(args.config_path);
  RunManifest m = start_manifest("render", args, cfg);
  m.inputs.push_back(scene_path);

  Scene sc;
  if (index >= 0) {
    const std::vector<Scene> scenes = load_scene_batch(scene_path);
    if (index >= static_cast<int>(scenes.size()))
      throw std::runtime_error("scene index out of range");
    sc = scenes[static_cast<std::size_t>(index)];
  } else {
    sc = load_scene(scene_path);
  }

  const std::vector<std::string> names =
      render_artifacts(sc, cfg.limits, args.out_dir);
  for (const std::string& n : names) record_output(m, args.out_dir, n);
  write_manifest(m, args.out_dir + "/manifest.json");
  std::printf("render: wrote %zu images to %s\n", names.size(),
              args.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"empty-space push singulation toolkit"};
  app.require_subcommand(1);

  CommonArgs gen_args, eval_args, fill_args, train_args, analyze_args,
      render_args;
  int gen_count = 0;
  std::string eval_scenes, eval_policy = "es", eval_model;
  int eval_threads = 0;
  long fill_count = 0;
  int fill_threads = 0;
  std::string train_buffer, train_scheme;
  std::vector<std::string> analyze_runs;
  std::string render_scene;
  int render_index = -1;

  CLI::App* gen = app.add_subcommand("gen-scenes", "generate a scene batch");
  add_common(gen, gen_args);
  gen->add_option("--count", gen_count, "number of scenes (default from config)");

  CLI::App* eval = app.add_subcommand("eval", "evaluate a policy on a batch");
  add_common(eval, eval_args);
  eval->add_option("--scenes", eval_scenes, "scene batch JSON")->required();
  eval->add_option("--policy", eval_policy, "es | les | random | actor");
  eval->add_option("--model", eval_model, "actor model file for --policy actor");
  eval->add_option("--threads", eval_threads, "episode parallelism");

  CLI::App* fill = app.add_subcommand("fill-buffer",
                                      "collect random-push transitions");
  add_common(fill, fill_args);
  fill->add_option("--count", fill_count, "transitions (default from config)");
  fill->add_option("--threads", fill_threads, "episode parallelism");

  CLI::App* train = app.add_subcommand("train", "offline DDPG from a buffer");
  add_common(train, train_args);
  train->add_option("--buffer", train_buffer, "replay buffer file")->required();
  train->add_option("--scheme", train_scheme, "sparse | es | les");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "similarity study and results table from eval runs");
  add_common(analyze, analyze_args);
  analyze->add_option("--run", analyze_runs, "eval output directory")
      ->take_all();

  CLI::App* render = app.add_subcommand("render", "write inspection images");
  add_common(render, render_args);
  render->add_option("--scene", render_scene, "scene or batch JSON")->required();
  render->add_option("--index", render_index, "index into a batch file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen->parsed()) return run_gen_scenes(gen_args, gen_count);
    if (eval->parsed())
      return run_eval(eval_args, eval_scenes, eval_policy, eval_model,
                      eval_threads);
    if (fill->parsed())
      return run_fill_buffer(fill_args, fill_count, fill_threads);
    if (train->parsed()) return run_train(train_args, train_buffer, train_scheme);
    if (analyze->parsed()) return run_analyze(analyze_args, analyze_runs);
    if (render->parsed())
      return run_render(render_args, render_scene, render_index);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}
