#include "wayfind/pathfinder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

namespace wayfind {

namespace {

using Path = std::vector<std::size_t>;

// Directed arcs (u -> v) laid out in adjacency order so that a search state
// "arrived at v through arc a" is a plain integer.
struct ArcTable {
  std::vector<std::size_t> offset;  // first arc of each tail node
  std::vector<std::size_t> head;
  std::vector<double> length;
  std::vector<double> bearing;

  explicit ArcTable(const MapGraph& g) : offset(g.size() + 1, 0) {
    for (std::size_t u = 0; u < g.size(); ++u) {
      offset[u + 1] = offset[u] + g.adjacent(u).size();
    }
    head.reserve(offset.back());
    for (std::size_t u = 0; u < g.size(); ++u) {
      for (const auto& adj : g.adjacent(u)) {
        head.push_back(adj.to);
        length.push_back(adj.length);
        bearing.push_back(heading(g.node(u).position, g.node(adj.to).position));
      }
    }
  }

  std::size_t size() const { return head.size(); }
};

std::vector<NodeId> to_ids(const MapGraph& g, const Path& path) {
  std::vector<NodeId> ids;
  ids.reserve(path.size());
  for (std::size_t i : path) {
    ids.push_back(g.node(i).id);
  }
  return ids;
}

Route route_from_indices(const MapGraph& g, const Path& path) {
  Route r;
  r.nodes = to_ids(g, path);
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto len = g.edge_length(path[i], path[i + 1]);
    if (!len) {
      throw InvalidPathError("nodes '" + g.node(path[i]).id.str() + "' and '" + g.node(path[i + 1]).id.str() +
                             "' are not adjacent");
    }
    r.distance += *len;
    const double h = heading(g.node(path[i]).position, g.node(path[i + 1]).position);
    if (i > 0 && classify_turn(prev, h) != TurnDirection::straight) {
      ++r.turns;
    }
    r.legs.push_back(h);
    prev = h;
  }
  return r;
}

Path to_indices(const MapGraph& g, std::span<const NodeId> nodes) {
  Path path;
  path.reserve(nodes.size());
  std::vector<bool> seen(g.size(), false);
  for (const auto& id : nodes) {
    const std::size_t i = g.require_index(id.str());
    if (seen[i]) {
      throw InvalidPathError("node '" + id.str() + "' repeats in path");
    }
    seen[i] = true;
    path.push_back(i);
  }
  return path;
}

bool is_simple(const Path& path, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (std::size_t i : path) {
    if (seen[i]) {
      return false;
    }
    seen[i] = true;
  }
  return true;
}

struct EnumerationResult {
  std::vector<Path> paths;
  std::size_t expanded = 0;
};

EnumerationResult enumerate_indices(const MapGraph& g, std::size_t src, std::size_t dst, std::size_t cap) {
  EnumerationResult out;
  if (src == dst) {
    out.paths.push_back({src});
    return out;
  }
  Path stack{src};
  std::vector<bool> on_path(g.size(), false);
  on_path[src] = true;
  // Iterative DFS; cursor[k] is the next adjacency slot to try from stack[k].
  std::vector<std::size_t> cursor{0};
  ++out.expanded;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    const auto adj = g.adjacent(u);
    std::size_t& k = cursor.back();
    if (k == adj.size()) {
      on_path[u] = false;
      stack.pop_back();
      cursor.pop_back();
      continue;
    }
    const std::size_t v = adj[k++].to;
    if (on_path[v]) {
      continue;
    }
    if (v == dst) {
      if (out.paths.size() == cap) {
        throw EnumerationOverflowError("more than " + std::to_string(cap) + " simple paths from '" +
                                       g.node(src).id.str() + "' to '" + g.node(dst).id.str() + "'");
      }
      Path p = stack;
      p.push_back(v);
      out.paths.push_back(std::move(p));
      continue;
    }
    on_path[v] = true;
    stack.push_back(v);
    cursor.push_back(0);
    ++out.expanded;
  }
  return out;
}

Route best_by_enumeration(const MapGraph& g, std::size_t src, std::size_t dst, RouteMode mode) {
  auto result = enumerate_indices(g, src, dst, kDefaultEnumerationCap);
  std::optional<Route> best;
  for (const auto& p : result.paths) {
    Route r = route_from_indices(g, p);
    if (!best) {
      best = std::move(r);
      continue;
    }
    // Paths arrive in lexicographic order, so only strict improvements replace.
    const bool better = mode == RouteMode::shortest
                            ? std::tie(r.distance, r.turns) < std::tie(best->distance, best->turns)
                            : std::tie(r.turns, r.distance) < std::tie(best->turns, best->distance);
    if (better) {
      best = std::move(r);
    }
  }
  if (!best) {
    throw UnreachableError("no route from '" + g.node(src).id.str() + "' to '" + g.node(dst).id.str() + "'");
  }
  return *best;
}

}  // namespace

std::string_view to_string(RouteMode mode) noexcept { return mode == RouteMode::shortest ? "shortest" : "optimal"; }

std::optional<RouteMode> parse_route_mode(std::string_view text) noexcept {
  if (text == "shortest") {
    return RouteMode::shortest;
  }
  if (text == "optimal") {
    return RouteMode::optimal;
  }
  return std::nullopt;
}

std::string_view to_string(BaselineStrategy strategy) noexcept {
  switch (strategy) {
    case BaselineStrategy::bfs:
      return "bfs";
    case BaselineStrategy::dfs:
      return "dfs";
    case BaselineStrategy::greedy:
      return "greedy";
    case BaselineStrategy::dijkstra:
      return "dijkstra";
  }
  return "unknown";
}

double heading_change(double incoming, double outgoing) noexcept { return normalize_degrees(outgoing - incoming); }

TurnDirection classify_turn(double incoming, double outgoing) noexcept {
  const double delta = heading_change(incoming, outgoing);
  if (delta >= kTurnThresholdDegrees) {
    return TurnDirection::left;
  }
  if (delta <= -kTurnThresholdDegrees) {
    return TurnDirection::right;
  }
  return TurnDirection::straight;
}

int path_turn_cost(const MapGraph& graph, std::span<const NodeId> nodes) {
  return route_from_indices(graph, to_indices(graph, nodes)).turns;
}

Route make_route(const MapGraph& graph, std::span<const NodeId> nodes) {
  if (nodes.empty()) {
    throw InvalidPathError("empty path");
  }
  return route_from_indices(graph, to_indices(graph, nodes));
}

std::vector<Route> enumerate_simple_paths(const MapGraph& graph, const NodeId& src, const NodeId& dst,
                                          std::size_t cap, SearchStats* stats) {
  if (cap == 0) {
    throw std::invalid_argument("enumeration cap must be positive");
  }
  const std::size_t s = graph.require_index(src.str());
  const std::size_t t = graph.require_index(dst.str());
  auto result = enumerate_indices(graph, s, t, cap);
  std::vector<Route> routes;
  routes.reserve(result.paths.size());
  for (const auto& p : result.paths) {
    routes.push_back(route_from_indices(graph, p));
  }
  if (stats != nullptr) {
    stats->nodes_expanded = result.expanded;
    stats->states_expanded = result.expanded;
    stats->paths_enumerated = routes.size();
  }
  return routes;
}

Route plan_route(const MapGraph& graph, const NodeId& src, const NodeId& dst, RouteMode mode, SearchStats* stats) {
  return plan_route(graph, graph.require_index(src.str()), graph.require_index(dst.str()), mode, stats);
}

Route plan_route(const MapGraph& g, std::size_t src, std::size_t dst, RouteMode mode, SearchStats* stats) {
  if (src >= g.size() || dst >= g.size()) {
    throw std::out_of_range("node index out of range");
  }
  if (stats != nullptr) {
    *stats = {};
  }
  if (src == dst) {
    if (stats != nullptr) {
      stats->nodes_expanded = 1;
      stats->states_expanded = 1;
    }
    return route_from_indices(g, {src});
  }

  const ArcTable arcs(g);
  const std::size_t source_state = arcs.size();
  const Point goal = g.node(dst).position;

  struct Label {
    std::size_t node;
    std::size_t state;
    std::ptrdiff_t parent;
    double g;
    double f;
    int turns;
  };
  std::vector<Label> pool;
  pool.push_back({src, source_state, -1, 0.0, distance(g.node(src).position, goal), 0});

  auto path_of = [&pool](std::size_t label) {
    Path p;
    for (auto i = static_cast<std::ptrdiff_t>(label); i >= 0; i = pool[static_cast<std::size_t>(i)].parent) {
      p.push_back(pool[static_cast<std::size_t>(i)].node);
    }
    std::reverse(p.begin(), p.end());
    return p;
  };
  // Strict "a is better than b" over (primary, secondary, node sequence).
  auto better = [&](std::size_t a, std::size_t b) {
    const Label& x = pool[a];
    const Label& y = pool[b];
    const auto kx = mode == RouteMode::shortest ? std::tuple(x.f, x.turns * 1.0) : std::tuple(x.turns * 1.0, x.f);
    const auto ky = mode == RouteMode::shortest ? std::tuple(y.f, y.turns * 1.0) : std::tuple(y.turns * 1.0, y.f);
    if (kx != ky) {
      return kx < ky;
    }
    const Path px = path_of(a);
    const Path py = path_of(b);
    return std::lexicographical_compare(px.begin(), px.end(), py.begin(), py.end());
  };
  auto worse = [&](std::size_t a, std::size_t b) { return better(b, a); };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> open(worse);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(arcs.size() + 1, kNone);
  std::vector<bool> settled(arcs.size() + 1, false);
  best[source_state] = 0;
  open.push(0);

  std::size_t expanded = 0;
  std::vector<bool> node_expanded(g.size(), false);
  std::size_t distinct_expanded = 0;
  std::optional<std::size_t> found;
  while (!open.empty()) {
    const std::size_t current = open.top();
    open.pop();
    const Label lab = pool[current];
    if (settled[lab.state] || best[lab.state] != current) {
      continue;
    }
    settled[lab.state] = true;
    ++expanded;
    if (!node_expanded[lab.node]) {
      node_expanded[lab.node] = true;
      ++distinct_expanded;
    }
    if (lab.node == dst) {
      found = current;
      break;
    }
    const bool at_source = lab.state == source_state;
    for (std::size_t a = arcs.offset[lab.node]; a < arcs.offset[lab.node + 1]; ++a) {
      const std::size_t v = arcs.head[a];
      if (settled[a]) {
        continue;
      }
      int turns = lab.turns;
      if (!at_source && classify_turn(arcs.bearing[lab.state], arcs.bearing[a]) != TurnDirection::straight) {
        ++turns;
      }
      const double cost = lab.g + arcs.length[a];
      pool.push_back({v, a, static_cast<std::ptrdiff_t>(current), cost, cost + distance(g.node(v).position, goal),
                      turns});
      const std::size_t candidate = pool.size() - 1;
      if (best[a] == kNone || better(candidate, best[a])) {
        best[a] = candidate;
        open.push(candidate);
      } else {
        pool.pop_back();
      }
    }
  }

  if (stats != nullptr) {
    stats->nodes_expanded = distinct_expanded;
    stats->states_expanded = expanded;
  }
  if (!found) {
    throw UnreachableError("no route from '" + g.node(src).id.str() + "' to '" + g.node(dst).id.str() + "'");
  }
  Path path = path_of(*found);
  if (!is_simple(path, g.size())) {
    // A walk can only beat every simple path on turns when a loop bends
    // gently enough to hide its turns; fall back to the exact enumeration.
    return best_by_enumeration(g, src, dst, mode);
  }
  return route_from_indices(g, path);
}

BaselineResult baseline_search(const MapGraph& g, const NodeId& src_id, const NodeId& dst_id,
                               BaselineStrategy strategy) {
  const std::size_t src = g.require_index(src_id.str());
  const std::size_t dst = g.require_index(dst_id.str());
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(g.size(), kNone);
  BaselineResult out;
  std::size_t& expanded = out.stats.nodes_expanded;
  bool reached = false;
  Path path;

  auto unwind = [&](std::size_t end) {
    Path p;
    for (std::size_t v = end; v != kNone; v = parent[v]) {
      p.push_back(v);
    }
    std::reverse(p.begin(), p.end());
    return p;
  };

  switch (strategy) {
    case BaselineStrategy::bfs: {
      std::vector<bool> seen(g.size(), false);
      std::deque<std::size_t> queue{src};
      seen[src] = true;
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        ++expanded;
        if (u == dst) {
          reached = true;
          break;
        }
        for (const auto& adj : g.adjacent(u)) {
          if (!seen[adj.to]) {
            seen[adj.to] = true;
            parent[adj.to] = u;
            queue.push_back(adj.to);
          }
        }
      }
      if (reached) {
        path = unwind(dst);
      }
      break;
    }
    case BaselineStrategy::dijkstra: {
      std::vector<double> dist(g.size(), std::numeric_limits<double>::infinity());
      std::vector<bool> done(g.size(), false);
      using Entry = std::pair<double, std::size_t>;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
      dist[src] = 0.0;
      open.push({0.0, src});
      while (!open.empty()) {
        const auto [d, u] = open.top();
        open.pop();
        if (done[u]) {
          continue;
        }
        done[u] = true;
        ++expanded;
        if (u == dst) {
          reached = true;
          break;
        }
        for (const auto& adj : g.adjacent(u)) {
          const double nd = d + adj.length;
          if (!done[adj.to] && nd < dist[adj.to]) {
            dist[adj.to] = nd;
            parent[adj.to] = u;
            open.push({nd, adj.to});
          }
        }
      }
      if (reached) {
        path = unwind(dst);
      }
      break;
    }
    case BaselineStrategy::dfs:
    case BaselineStrategy::greedy: {
      // Depth-first with backtracking; greedy orders the branches by edge
      // length instead of id, which is what makes it commit to short first steps.
      std::vector<bool> seen(g.size(), false);
      auto order = [&](std::size_t u) {
        std::vector<MapGraph::Adjacent> adj(g.adjacent(u).begin(), g.adjacent(u).end());
        if (strategy == BaselineStrategy::greedy) {
          std::stable_sort(adj.begin(), adj.end(),
                           [](const auto& x, const auto& y) { return x.length < y.length; });
        }
        return adj;
      };
      std::vector<std::pair<std::size_t, std::vector<MapGraph::Adjacent>>> stack;
      std::vector<std::size_t> cursor;
      seen[src] = true;
      ++expanded;
      stack.emplace_back(src, order(src));
      cursor.push_back(0);
      if (src == dst) {
        reached = true;
      }
      while (!reached && !stack.empty()) {
        auto& [u, adj] = stack.back();
        std::size_t& k = cursor.back();
        if (k == adj.size()) {
          stack.pop_back();
          cursor.pop_back();
          continue;
        }
        const std::size_t v = adj[k++].to;
        if (seen[v]) {
          continue;
        }
        seen[v] = true;
        ++expanded;
        stack.emplace_back(v, order(v));
        cursor.push_back(0);
        if (v == dst) {
          reached = true;
        }
      }
      if (reached) {
        for (const auto& frame : stack) {
          path.push_back(frame.first);
        }
      }
      break;
    }
  }

  if (!reached) {
    throw UnreachableError("no route from '" + src_id.str() + "' to '" + dst_id.str() + "'");
  }
  out.stats.states_expanded = out.stats.nodes_expanded;
  out.route = route_from_indices(g, path);
  return out;
}

}  // namespace wayfind
