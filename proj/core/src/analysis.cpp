#include "espush/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "espush/pgm.hpp"
#include "json.hpp"

namespace espush {

namespace {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string fmt(double x, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

}  // namespace

SimilarityReport similarity_analysis(const std::vector<EpisodeRecord>& records,
                                     const std::string& policy_name) {
  if (records.empty())
    throw std::invalid_argument("similarity_analysis: no episodes");
  SimilarityReport rep;
  rep.policy = policy_name;
  rep.episode_count = static_cast<int>(records.size());
  std::vector<double> es, les;
  for (const EpisodeRecord& ep : records) {
    for (const StepRecord& st : ep.steps) {
      ++rep.total_steps;
      ++rep.hist_vs_es[error_bin(st.e_es)];
      ++rep.hist_vs_les[error_bin(st.e_les)];
      es.push_back(st.e_es);
      les.push_back(st.e_les);
    }
  }
  if (!es.empty()) {
    double se = 0.0, sl = 0.0;
    for (double x : es) se += x;
    for (double x : les) sl += x;
    rep.mean_vs_es = se / static_cast<double>(es.size());
    rep.mean_vs_les = sl / static_cast<double>(les.size());
    rep.median_vs_es = median(es);
    rep.median_vs_les = median(les);
  }
  return rep;
}

void write_similarity_json(const std::vector<SimilarityReport>& reports,
                           const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SimilarityReport& r : reports) {
    arr.push_back({{"policy", r.policy},
                   {"episode_count", r.episode_count},
                   {"total_steps", r.total_steps},
                   {"hist_vs_es", r.hist_vs_es},
                   {"hist_vs_les", r.hist_vs_les},
                   {"mean_vs_es", r.mean_vs_es},
                   {"median_vs_es", r.median_vs_es},
                   {"mean_vs_les", r.mean_vs_les},
                   {"median_vs_les", r.median_vs_les}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << arr.dump(2) << '\n';
}

void write_similarity_hist_csv(const std::vector<SimilarityReport>& reports,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "policy,heuristic,bin_lo,bin_hi,count\n";
  for (const SimilarityReport& r : reports) {
    for (int b = 0; b < 10; ++b) {
      out << r.policy << ",ES," << fmt(b * 0.1, "%.1f") << ','
          << fmt((b + 1) * 0.1, "%.1f") << ',' << r.hist_vs_es[b] << '\n';
    }
    for (int b = 0; b < 10; ++b) {
      out << r.policy << ",LES," << fmt(b * 0.1, "%.1f") << ','
          << fmt((b + 1) * 0.1, "%.1f") << ',' << r.hist_vs_les[b] << '\n';
    }
  }
}

namespace {

struct TableCells {
  std::string name, success, mean_all, std_all, mean_succ, std_succ;
};

TableCells row_cells(const PolicyRow& r) {
  TableCells c;
  c.name = r.name;
  c.success = fmt(r.stats.success_rate * 100.0, "%.1f");
  c.mean_all = fmt(r.stats.mean_actions_all, "%.2f");
  c.std_all = fmt(r.stats.std_actions_all, "%.2f");
  if (r.stats.n_success > 0) {
    c.mean_succ = fmt(r.stats.mean_actions_success, "%.2f");
    c.std_succ = fmt(r.stats.std_actions_success, "%.2f");
  } else {
    c.mean_succ = "n/a";
    c.std_succ = "n/a";
  }
  return c;
}

}  // namespace

std::string render_results_table(std::vector<PolicyRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const PolicyRow& a, const PolicyRow& b) { return a.name < b.name; });
  const std::array<std::string, 6> header = {
      "Policy",       "Success rate %",    "Mean #actions",
      "Std #actions", "Mean #actions (succ)", "Std #actions (succ)"};

  std::vector<std::array<std::string, 6>> cells;
  for (const PolicyRow& r : rows) {
    const TableCells c = row_cells(r);
    cells.push_back(
        {c.name, c.success, c.mean_all, c.std_all, c.mean_succ, c.std_succ});
  }
  std::array<std::size_t, 6> width{};
  for (std::size_t k = 0; k < 6; ++k) {
    width[k] = header[k].size();
    for (const auto& row : cells) width[k] = std::max(width[k], row[k].size());
  }
  std::ostringstream os;
  const auto emit = [&](const std::array<std::string, 6>& row) {
    for (std::size_t k = 0; k < 6; ++k) {
      os << row[k] << std::string(width[k] - row[k].size() + 2, ' ');
    }
    os << '\n';
  };
  emit(header);
  for (std::size_t k = 0; k < 6; ++k) os << std::string(width[k], '-') << "  ";
  os << '\n';
  for (const auto& row : cells) emit(row);
  return os.str();
}

void write_results_csv(std::vector<PolicyRow> rows, const std::string& path) {
  std::sort(rows.begin(), rows.end(),
            [](const PolicyRow& a, const PolicyRow& b) { return a.name < b.name; });
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "policy,success_rate_pct,mean_actions,std_actions,"
         "mean_actions_success,std_actions_success\n";
  for (const PolicyRow& r : rows) {
    const TableCells c = row_cells(r);
    out << c.name << ',' << c.success << ',' << c.mean_all << ',' << c.std_all
        << ',' << c.mean_succ << ',' << c.std_succ << '\n';
  }
}

std::vector<EpisodeRecord> load_steps_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty steps file");
  if (line.rfind("episode,", 0) != 0)
    throw std::runtime_error(path + ": unexpected header: " + line);

  std::vector<EpisodeRecord> episodes;
  long current = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::array<std::string, 8> f;
    int k = 0;
    while (std::getline(ss, field, ',') && k < 8) f[k++] = field;
    if (k != 8) throw std::runtime_error(path + ": malformed row: " + line);
    const long episode = std::stol(f[0]);
    if (episode != current) {
      episodes.emplace_back();
      episodes.back().scene_id = std::stoull(f[1]);
      current = episode;
    }
    StepRecord st;
    st.t = std::stoi(f[2]);
    st.cmd.theta = std::stod(f[3]);
    st.cmd.d = std::stod(f[4]);
    st.reward = std::stod(f[5]);
    st.e_es = std::stod(f[6]);
    st.e_les = std::stod(f[7]);
    episodes.back().steps.push_back(st);
    episodes.back().n_actions = st.t;
  }
  return episodes;
}

namespace {

// brightness-coded push stroke, start dot brightest
void draw_segment(Grid<std::uint8_t>& img, const VisualGrid& v,
                  const PushSegment& seg, std::uint8_t value) {
  const double len_px = (seg.p2 - seg.p1).norm() / v.pixel_size();
  const int n = std::max(2, static_cast<int>(std::ceil(len_px * 2.0)));
  for (int k = 0; k <= n; ++k) {
    const Vec2 w = seg.p1 + (seg.p2 - seg.p1) * (static_cast<double>(k) / n);
    const PixelPoint p = v.pixel_of_world(w);
    const int i = static_cast<int>(std::llround(p.i));
    const int j = static_cast<int>(std::llround(p.j));
    if (img.in_bounds(i, j)) img(i, j) = value;
  }
}

}  // namespace

std::vector<std::string> render_artifacts(const Scene& sc,
                                          const PolicyLimits& lim,
                                          const std::string& out_dir) {
  const VisualGrid v = render_visual_state(sc);
  const EsmStages st = compute_esm_stages(v);

  std::vector<std::string> names;
  const auto emit = [&](const std::string& name,
                        const Grid<std::uint8_t>& img) {
    write_pgm(img, out_dir + "/" + name);
    names.push_back(name);
  };

  emit("visual.pgm", gray_from_visual(v));

  Grid<std::uint8_t> mask(v.values.side(), 0);
  for (std::size_t k = 0; k < v.values.size(); ++k)
    mask.cells()[k] = v.values.cells()[k] == kObstacleValue ? 255 : 0;
  emit("obstacle_mask.pgm", mask);

  Grid<std::uint8_t> contour_img(v.values.side(), 0);
  for (std::size_t k = 0; k < v.values.size(); ++k)
    contour_img.cells()[k] = v.values.cells()[k] == kObstacleValue ? 96 : 0;
  for (const PixelCoord& p : st.contour.points) contour_img(p.i, p.j) = 255;
  emit("contour.pgm", contour_img);

  emit("odt.pgm", gray_from_map(st.odt));
  emit("ldm.pgm", gray_from_map(st.ldm));
  emit("esm.pgm", gray_from_map(st.normalized));

  const PixelPoint centroid = target_centroid_px(v);
  const LocalMap local = local_empty_space_map(
      st.normalized, static_cast<int>(std::llround(centroid.i)),
      static_cast<int>(std::llround(centroid.j)));
  emit("lesm.pgm", gray_from_local(local));

  Grid<std::uint8_t> pushes = gray_from_visual(v);
  for (std::size_t k = 0; k < pushes.size(); ++k)
    pushes.cells()[k] = static_cast<std::uint8_t>(pushes.cells()[k] / 2);
  if (auto seg = resolve_push_segment(v, sc, es_decide(v, lim), lim))
    draw_segment(pushes, v, *seg, 255);
  if (auto seg = resolve_push_segment(v, sc, les_decide(v, lim), lim))
    draw_segment(pushes, v, *seg, 180);
  emit("pushes.pgm", pushes);

  return names;
}

}  // namespace espush
