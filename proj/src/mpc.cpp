#include "mpcd/mpc.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace mpcd {

void Cluster::load_input(int64_t words) {
  require(words <= spec_.machine_count * spec_.space_words,
          ErrorCode::SpaceExceeded,
          "input of " + std::to_string(words) + " words exceeds M*S = " +
              std::to_string(spec_.machine_count * spec_.space_words));
}

void Cluster::charge(const std::string& primitive, int64_t rounds,
                     int64_t max_load, int64_t messages) {
  require(max_load <= spec_.space_words, ErrorCode::SpaceExceeded,
          primitive + " holds " + std::to_string(max_load) + " words > S = " +
              std::to_string(spec_.space_words));
  round_counter_ += rounds;
  high_water_ = std::max(high_water_, max_load);
  log_.push_back({round_counter_, primitive, rounds, max_load, messages});
}

Placement Cluster::distribute_grouped(const std::vector<int64_t>& group_sizes,
                                      int64_t chunk_size) {
  require(chunk_size >= 1 && chunk_size <= spec_.space_words,
          ErrorCode::SpaceExceeded,
          "chunk of " + std::to_string(chunk_size) + " words vs S = " +
              std::to_string(spec_.space_words));
  Placement p;
  int64_t offset = 0;
  int64_t total = 0;
  for (size_t gidx = 0; gidx < group_sizes.size(); ++gidx) {
    int64_t sz = group_sizes[gidx];
    total += sz;
    int64_t at = 0;
    while (at < sz) {
      int64_t take = std::min(chunk_size, sz - at);
      p.machines.push_back({static_cast<int64_t>(gidx), offset + at,
                            offset + at + take});
      p.max_load = std::max(p.max_load, take);
      at += take;
    }
    offset += sz;
  }
  require(static_cast<int64_t>(p.machines.size()) <= spec_.machine_count,
          ErrorCode::SpaceExceeded,
          "placement needs " + std::to_string(p.machines.size()) +
              " machines, have " + std::to_string(spec_.machine_count));
  charge("distribute", charges_.sort_rounds, p.max_load, total);
  return p;
}

std::vector<int64_t> Cluster::prefix_sums(const std::vector<int64_t>& values) {
  std::vector<int64_t> out(values.size());
  int64_t run = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    run += values[i];
    out[i] = run;
  }
  charge("prefix_sum", charges_.prefix_rounds, 1,
         static_cast<int64_t>(values.size()));
  return out;
}

Ball bfs_ball(const Graph& g, NodeId center, int radius) {
  Ball ball;
  ball.center = center;
  std::vector<int> dist(static_cast<size_t>(g.node_count()), -1);
  std::deque<NodeId> queue;
  dist[center] = 0;
  queue.push_back(center);
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    ball.nodes.push_back(v);
    if (dist[v] == radius) continue;
    for (NodeId u : g.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::sort(ball.nodes.begin(), ball.nodes.end());
  for (NodeId v : ball.nodes) {
    for (NodeId u : g.neighbors(v)) {
      if (u > v && dist[u] >= 0) ball.edges.push_back({v, u});
    }
  }
  return ball;
}

std::vector<Ball> Cluster::collect_balls(const Graph& g, int r,
                                         const std::vector<NodeId>& centers) {
  require(r >= 0, ErrorCode::InvalidParams, "negative ball radius");
  std::vector<Ball> balls;
  balls.reserve(centers.size());
  int64_t max_words = 0;
  int64_t messages = 0;
  for (NodeId c : centers) {
    Ball b = bfs_ball(g, c, r);
    require(b.words() <= spec_.space_words, ErrorCode::BallTooLarge,
            "ball of node " + std::to_string(c) + " needs " +
                std::to_string(b.words()) + " words > S = " +
                std::to_string(spec_.space_words));
    max_words = std::max(max_words, b.words());
    messages += b.words();
    balls.push_back(std::move(b));
  }
  int64_t rounds = 1;
  for (int64_t span = 1; span < r; span *= 2) ++rounds;  // ceil(log2 r) + 1
  charge("collect_balls(r=" + std::to_string(r) + ")", rounds, max_words,
         messages);
  return balls;
}

std::string Cluster::round_log_csv() const {
  std::ostringstream out;
  out << "round,primitive,rounds,max_load,messages\n";
  for (const auto& row : log_) {
    out << row.round << "," << row.primitive << "," << row.rounds << ","
        << row.max_load << "," << row.messages << "\n";
  }
  return out.str();
}

}  // namespace mpcd
