#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "wayfind/map_model.hpp"

namespace wayfind::testing {

inline std::string fixture(const std::string& name) { return std::string(WAYFIND_FIXTURES) + "/" + name; }

inline const MapGraph& demo_map() {
  static const MapGraph g = load_map_file(WAYFIND_DEMO_MAP);
  return g;
}

inline std::shared_ptr<const MapGraph> shared_demo_map() {
  static const auto g = std::make_shared<const MapGraph>(load_map_file(WAYFIND_DEMO_MAP));
  return g;
}

inline const MapGraph& square_map() {
  static const MapGraph g = load_map_file(fixture("square.json"));
  return g;
}

inline NodeId id(const char* s) { return NodeId(s); }

inline std::vector<NodeId> ids(std::initializer_list<const char*> list) {
  std::vector<NodeId> out;
  for (const char* s : list) {
    out.emplace_back(s);
  }
  return out;
}

/// Random connected map on a w x h lattice (3 m spacing): a random spanning
/// tree plus extra lattice edges, and with probability `diagonal_p` a
/// diagonal across a cell. Roughly half the nodes are destinations.
inline MapGraph random_lattice_map(std::uint64_t seed, int w, int h, double extra_p = 0.35,
                                   double diagonal_p = 0.15) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution extra(extra_p);
  std::bernoulli_distribution diagonal(diagonal_p);
  auto name = [&](int x, int y) { return "n" + std::to_string(x) + "_" + std::to_string(y); };
  auto pos = [](int x, int y) { return Point{3.0 * x, 3.0 * y}; };

  std::vector<MapNode> nodes;
  bool any_destination = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool dest = coin(rng) || (!any_destination && x == w - 1 && y == h - 1);
      any_destination = any_destination || dest;
      nodes.push_back({NodeId(name(x, y)), dest ? NodeKind::destination : NodeKind::waypoint,
                       dest ? "Room " + name(x, y) : "", pos(x, y), std::nullopt});
    }
  }

  struct Candidate {
    int x0, y0, x1, y1;
  };
  std::vector<Candidate> lattice;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) lattice.push_back({x, y, x + 1, y});
      if (y + 1 < h) lattice.push_back({x, y, x, y + 1});
    }
  }
  std::shuffle(lattice.begin(), lattice.end(), rng);

  // Kruskal-style spanning tree over the shuffled lattice edges.
  std::vector<int> parent(static_cast<std::size_t>(w * h));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    }
    return v;
  };
  std::vector<MapEdge> edges;
  auto add = [&](int x0, int y0, int x1, int y1) {
    edges.push_back({NodeId(name(x0, y0)), NodeId(name(x1, y1)), distance(pos(x0, y0), pos(x1, y1))});
  };
  for (const auto& c : lattice) {
    const int a = find(c.y0 * w + c.x0);
    const int b = find(c.y1 * w + c.x1);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      add(c.x0, c.y0, c.x1, c.y1);
    } else if (extra(rng)) {
      add(c.x0, c.y0, c.x1, c.y1);
    }
  }
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      if (diagonal(rng)) {
        if (coin(rng)) {
          add(x, y, x + 1, y + 1);
        } else {
          add(x + 1, y, x, y + 1);
        }
      }
    }
  }
  return MapGraph::build("lattice" + std::to_string(seed), std::move(nodes), std::move(edges));
}

}  // namespace wayfind::testing
