#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "espush/analysis.hpp"
#include "espush/manifest.hpp"
#include "espush/pgm.hpp"

using namespace espush;

namespace {

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir.string();
}

EpisodeRecord episode_with_errors(std::vector<double> es,
                                  std::vector<double> les) {
  EpisodeRecord rec;
  rec.outcome = Outcome::kSingulated;
  rec.n_actions = static_cast<int>(es.size());
  for (std::size_t k = 0; k < es.size(); ++k) {
    rec.steps.push_back(
        {static_cast<int>(k) + 1, PushCommand{0.1, 0.05}, -0.1, es[k], les[k]});
  }
  return rec;
}

}  // namespace

TEST_CASE("similarity_analysis: self comparison puts all mass in the first bin") {
  std::vector<EpisodeRecord> records;
  records.push_back(episode_with_errors({0.0, 0.0, 0.003}, {0.2, 0.4, 0.9}));
  records.push_back(episode_with_errors({0.0}, {0.35}));
  const SimilarityReport rep = similarity_analysis(records, "ES");
  CHECK(rep.total_steps == 4);
  CHECK(rep.hist_vs_es[0] == 4);
  for (int b = 1; b < 10; ++b) CHECK(rep.hist_vs_es[b] == 0);
  CHECK(rep.mean_vs_es < 0.01);
  long sum_es = 0, sum_les = 0;
  for (int b = 0; b < 10; ++b) {
    sum_es += rep.hist_vs_es[b];
    sum_les += rep.hist_vs_les[b];
  }
  CHECK(sum_es == rep.total_steps);
  CHECK(sum_les == rep.total_steps);
}

TEST_CASE("similarity_analysis: identical inputs give identical reports") {
  std::vector<EpisodeRecord> records;
  records.push_back(episode_with_errors({0.1, 0.5}, {0.9, 0.3}));
  const SimilarityReport a = similarity_analysis(records, "X");
  const SimilarityReport b = similarity_analysis(records, "X");
  CHECK(a.hist_vs_es == b.hist_vs_es);
  CHECK(a.mean_vs_les == b.mean_vs_les);
  CHECK(a.median_vs_es == b.median_vs_es);
  CHECK_THROWS_AS(similarity_analysis({}, "empty"), std::invalid_argument);
}

TEST_CASE("render_results_table: Table-I row formats verbatim") {
  PolicyRow row;
  row.name = "RL";
  row.stats.n_episodes = 200;
  row.stats.n_success = 178;
  row.stats.success_rate = 0.891;
  row.stats.mean_actions_all = 2.67;
  row.stats.std_actions_all = 1.31;
  row.stats.mean_actions_success = 2.67;
  row.stats.std_actions_success = 1.31;
  const std::string table = render_results_table({row});
  CHECK(table.find("89.1") != std::string::npos);
  CHECK(table.find("2.67") != std::string::npos);
  CHECK(table.find("1.31") != std::string::npos);
  CHECK(table.find("RL") != std::string::npos);
}

TEST_CASE("render_results_table: zero successes and stable name ordering") {
  PolicyRow none;
  none.name = "Z-NONE";
  none.stats.n_episodes = 5;
  none.stats.n_success = 0;
  PolicyRow some;
  some.name = "A-SOME";
  some.stats.n_episodes = 5;
  some.stats.n_success = 5;
  some.stats.success_rate = 1.0;
  some.stats.mean_actions_success = 2.0;
  const std::string table = render_results_table({none, some});
  CHECK(table.find("n/a") != std::string::npos);
  CHECK(table.find("A-SOME") < table.find("Z-NONE"));

  // five rows stay five rows
  std::vector<PolicyRow> rows(5);
  for (int k = 0; k < 5; ++k) rows[k].name = "P" + std::to_string(k);
  const std::string five = render_results_table(rows);
  int lines = 0;
  for (char c : five)
    if (c == '\n') ++lines;
  CHECK(lines == 7);  // header + rule + 5 rows
}

TEST_CASE("pgm encoding has the documented header and payload") {
  Grid<std::uint8_t> img(4, 7);
  img(0, 0) = 255;
  const auto bytes = pgm_encode(img);
  const std::string header(bytes.begin(), bytes.begin() + 9);
  CHECK(header == "P5\n4 4\n25");  // "P5\n4 4\n255\n" prefix
  CHECK(bytes.size() == 11 + 16);
  CHECK(bytes[11] == 255);
  CHECK(bytes[12] == 7);
}

TEST_CASE("render_artifacts writes the full image bundle deterministically") {
  SceneGenConfig gen;
  const Scene sc = generate_scene(gen, 31);
  const PolicyLimits lim;
  const std::string dir_a = temp_dir("espush_render_a");
  const std::string dir_b = temp_dir("espush_render_b");
  const auto names_a = render_artifacts(sc, lim, dir_a);
  const auto names_b = render_artifacts(sc, lim, dir_b);
  REQUIRE(names_a.size() == 8);
  CHECK(names_a == names_b);

  const std::vector<std::string> expected = {
      "visual.pgm", "obstacle_mask.pgm", "contour.pgm", "odt.pgm",
      "ldm.pgm",    "esm.pgm",           "lesm.pgm",    "pushes.pgm"};
  CHECK(names_a == expected);
  for (const std::string& n : expected) {
    CHECK(fnv1a64_file(dir_a + "/" + n) == fnv1a64_file(dir_b + "/" + n));
  }
  // 128 x 128 images except the 64 x 64 local crop
  std::ifstream lesm(dir_a + "/lesm.pgm", std::ios::binary);
  std::string head(9, '\0');
  lesm.read(head.data(), 9);
  CHECK(head.substr(0, 7) == "P5\n64 6");
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("obstacle-free scene renders ESM identical to LDM panel") {
  Scene sc;
  sc.side = 0.5;
  sc.objects.push_back(
      {0, ObjectRole::kTarget, Obb2{{0, 0}, 0.02, 0.02, 0}, 0.02});
  const VisualGrid v = render_visual_state(sc);
  const EsmStages st = compute_esm_stages(v);
  const auto esm_img = gray_from_map(st.normalized);
  const auto ldm_img = gray_from_map(st.ldm);  // min-max stretched
  CHECK(esm_img.cells() == ldm_img.cells());
}

TEST_CASE("manifest: hashes recorded and reloaded") {
  const std::string dir = temp_dir("espush_manifest");
  {
    std::ofstream out(dir + "/a.txt", std::ios::binary);
    out << "payload";
  }
  RunManifest m;
  m.command = "test";
  m.seed = 9;
  m.config_echo = "{}";
  record_output(m, dir, "a.txt");
  write_manifest(m, dir + "/manifest.json");
  const RunManifest back = load_manifest(dir + "/manifest.json");
  CHECK(back.command == "test");
  CHECK(back.seed == 9);
  REQUIRE(back.outputs.size() == 1);
  CHECK(back.outputs[0].name == "a.txt");
  CHECK(back.outputs[0].bytes == 7);
  CHECK(back.outputs[0].hash == hash_hex(fnv1a64_file(dir + "/a.txt")));
  std::filesystem::remove_all(dir);
}

TEST_CASE("steps csv round-trips through load_steps_csv") {
  EvaluationResult r;
  r.policy_name = "ES";
  r.episodes.push_back(episode_with_errors({0.0, 0.25}, {0.5, 0.75}));
  r.episodes.push_back(episode_with_errors({1.0}, {0.125}));
  r.episodes[0].scene_id = 4;
  r.episodes[1].scene_id = 9;
  r.summary = summarize(r.episodes);
  const std::string dir = temp_dir("espush_stepscsv");
  write_steps_csv(r, dir + "/steps.csv");
  const auto back = load_steps_csv(dir + "/steps.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[0].scene_id == 4);
  CHECK(back[1].scene_id == 9);
  REQUIRE(back[0].steps.size() == 2);
  CHECK(back[0].steps[1].e_es == 0.25);
  CHECK(back[1].steps[0].e_les == 0.125);
  CHECK(back[0].steps[0].reward == -0.1);
  std::filesystem::remove_all(dir);
}
