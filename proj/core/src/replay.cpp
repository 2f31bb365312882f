#include "espush/replay.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace espush {

namespace {

std::vector<float> to_float(const std::vector<double>& x) {
  return std::vector<float>(x.begin(), x.end());
}

std::vector<float> full_state_or_zero(const Scene& sc) {
  if (sc.target() == nullptr)
    return std::vector<float>(kFullStateDim, 0.0f);
  const FullState fs = critic_state(sc);
  return std::vector<float>(fs.begin(), fs.end());
}

// One random-policy episode worth of transitions.
std::vector<Transition> rollout_episode(const SceneGenConfig& scene_cfg,
                                        const MdpConfig& mdp_cfg,
                                        std::uint64_t scene_seed,
                                        std::uint64_t action_seed) {
  std::vector<Transition> out;
  Scene sc = generate_scene(scene_cfg, scene_seed);
  Rng rng(action_seed);

  VisualGrid v = render_visual_state(sc);
  std::vector<float> obs = to_float(actor_observation(v));
  std::vector<float> full = full_state_or_zero(sc);

  for (int t = 1; t <= mdp_cfg.t_max; ++t) {
    const PushCommand cmd = random_decide(rng, mdp_cfg.limits);
    StepResult res = step(sc, v, cmd, mdp_cfg, t);

    Transition tr;
    tr.actor_obs = obs;
    tr.full_state = full;
    const auto a = normalize_action(cmd, mdp_cfg.limits);
    tr.action = {static_cast<float>(a[0]), static_cast<float>(a[1])};
    tr.e_es = static_cast<float>(res.e_es);
    tr.e_les = static_cast<float>(res.e_les);
    tr.done = res.done;
    tr.outcome = res.outcome;
    // scheme-1 reward; shaped variants are reconstructed from e_es / e_les
    tr.sparse_reward = static_cast<float>(
        res.outcome == Outcome::kFellOff      ? -1.0
        : res.outcome == Outcome::kSingulated ? 1.0
                                              : -1.0 / mdp_cfg.t_max);

    VisualGrid nv = render_visual_state(res.next);
    tr.next_actor_obs = to_float(actor_observation(nv));
    tr.next_full_state = full_state_or_zero(res.next);
    out.push_back(std::move(tr));

    if (res.done) break;
    sc = std::move(res.next);
    v = std::move(nv);
    obs = out.back().next_actor_obs;
    full = out.back().next_full_state;
  }
  return out;
}

}  // namespace

ReplayBuffer fill_replay_buffer(std::size_t buffer_size,
                                const SceneGenConfig& scene_cfg,
                                const MdpConfig& mdp_cfg, std::uint64_t seed,
                                int n_threads) {
  ReplayBuffer buf;
  buf.seed = seed;
  buf.t_max = mdp_cfg.t_max;
  buf.items.reserve(buffer_size);

  n_threads = std::max(1, n_threads);
  std::uint64_t next_episode = 0;
  while (buf.items.size() < buffer_size) {
    // a round of episodes, concatenated in index order
    const std::size_t round =
        n_threads == 1
            ? 1
            : static_cast<std::size_t>(n_threads) * 4;
    std::vector<std::vector<Transition>> shard(round);
    const auto worker = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const std::uint64_t ep = next_episode + k;
        shard[k] = rollout_episode(scene_cfg, mdp_cfg, mix_seed(seed, 2 * ep),
                                   mix_seed(seed, 2 * ep + 1));
      }
    };
    if (n_threads == 1) {
      worker(0, round);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (round + n_threads - 1) / n_threads;
      for (std::size_t b = 0; b < round; b += chunk)
        pool.emplace_back(worker, b, std::min(b + chunk, round));
      for (std::thread& th : pool) th.join();
    }
    next_episode += round;
    for (std::vector<Transition>& s : shard) {
      for (Transition& tr : s) {
        if (buf.items.size() == buffer_size) break;
        buf.items.push_back(std::move(tr));
      }
    }
  }
  return buf;
}

namespace {

constexpr char kBufMagic[8] = {'E', 'S', 'P', 'B', 'U', 'F', '0', '1'};

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("buffer file truncated");
  return v;
}

void write_vec(std::ofstream& out, const std::vector<float>& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(float)));
}

void read_vec(std::ifstream& in, std::vector<float>& v, std::size_t n) {
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(n * sizeof(float)));
  if (!in) throw std::runtime_error("buffer file truncated");
}

}  // namespace

void save_buffer(const ReplayBuffer& buf, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kBufMagic, sizeof(kBufMagic));
  write_raw(out, static_cast<std::uint64_t>(buf.items.size()));
  write_raw(out, static_cast<std::uint32_t>(buf.actor_dim));
  write_raw(out, static_cast<std::uint32_t>(buf.state_dim));
  write_raw(out, static_cast<std::uint32_t>(buf.t_max));
  write_raw(out, buf.seed);
  for (const Transition& tr : buf.items) {
    write_vec(out, tr.actor_obs);
    write_vec(out, tr.full_state);
    write_raw(out, tr.action[0]);
    write_raw(out, tr.action[1]);
    write_raw(out, tr.sparse_reward);
    write_raw(out, tr.e_es);
    write_raw(out, tr.e_les);
    write_vec(out, tr.next_actor_obs);
    write_vec(out, tr.next_full_state);
    write_raw(out, static_cast<std::uint8_t>(tr.done ? 1 : 0));
    write_raw(out, static_cast<std::uint8_t>(tr.outcome));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ReplayBuffer load_buffer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kBufMagic, sizeof(kBufMagic)) != 0)
    throw std::runtime_error(path + ": not a replay buffer file");

  ReplayBuffer buf;
  const auto count = read_raw<std::uint64_t>(in);
  buf.actor_dim = static_cast<int>(read_raw<std::uint32_t>(in));
  buf.state_dim = static_cast<int>(read_raw<std::uint32_t>(in));
  buf.t_max = static_cast<int>(read_raw<std::uint32_t>(in));
  buf.seed = read_raw<std::uint64_t>(in);
  buf.items.resize(count);
  for (Transition& tr : buf.items) {
    read_vec(in, tr.actor_obs, buf.actor_dim);
    read_vec(in, tr.full_state, buf.state_dim);
    tr.action[0] = read_raw<float>(in);
    tr.action[1] = read_raw<float>(in);
    tr.sparse_reward = read_raw<float>(in);
    tr.e_es = read_raw<float>(in);
    tr.e_les = read_raw<float>(in);
    read_vec(in, tr.next_actor_obs, buf.actor_dim);
    read_vec(in, tr.next_full_state, buf.state_dim);
    tr.done = read_raw<std::uint8_t>(in) != 0;
    tr.outcome = static_cast<Outcome>(read_raw<std::uint8_t>(in));
  }
  return buf;
}

}  // namespace espush
