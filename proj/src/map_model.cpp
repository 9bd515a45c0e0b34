#include "wayfind/map_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wayfind {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "map validation failed:";
  for (const auto& v : violations) {
    out += "\n  - ";
    out += v;
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const ordered_json& require_field(const ordered_json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw MapParseError(std::string(where) + ": missing field '" + key + "'");
  }
  return *it;
}

std::string require_string(const ordered_json& obj, const char* key, std::string_view where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_string()) {
    throw MapParseError(std::string(where) + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

double require_number(const ordered_json& obj, const char* key, std::string_view where) {
  const auto& v = require_field(obj, key, where);
  if (!v.is_number()) {
    throw MapParseError(std::string(where) + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

void reject_unknown_keys(const ordered_json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw MapParseError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

struct RawNode {
  std::string id;
  NodeKind kind;
  std::string label;
  Point position;
  std::optional<std::string> announcement;
};

struct RawEdge {
  std::string a;
  std::string b;
  double length;
};

struct RawMap {
  std::string map_id;
  std::vector<RawNode> nodes;
  std::vector<RawEdge> edges;
};

RawMap parse_document(std::string_view text) {
  ordered_json doc = ordered_json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) {
    throw MapParseError("map document is not valid JSON");
  }
  if (!doc.is_object()) {
    throw MapParseError("map document must be a JSON object");
  }
  reject_unknown_keys(doc, {"format", "map_id", "nodes", "edges"}, "map");
  if (require_string(doc, "format", "map") != kMapFormatTag) {
    throw MapParseError("map: format must be \"" + std::string(kMapFormatTag) + "\"");
  }

  RawMap raw;
  raw.map_id = require_string(doc, "map_id", "map");

  const auto& nodes = require_field(doc, "nodes", "map");
  if (!nodes.is_array()) {
    throw MapParseError("map: 'nodes' must be an array");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    const auto& n = nodes[i];
    if (!n.is_object()) {
      throw MapParseError(where + " must be an object");
    }
    reject_unknown_keys(n, {"id", "kind", "label", "x", "y", "announcement"}, where);
    RawNode node;
    node.id = require_string(n, "id", where);
    const std::string kind = require_string(n, "kind", where);
    if (kind == "destination") {
      node.kind = NodeKind::destination;
    } else if (kind == "waypoint") {
      node.kind = NodeKind::waypoint;
    } else {
      throw MapParseError(where + ": kind must be \"destination\" or \"waypoint\"");
    }
    node.label = require_string(n, "label", where);
    node.position = {require_number(n, "x", where), require_number(n, "y", where)};
    if (n.contains("announcement")) {
      node.announcement = require_string(n, "announcement", where);
    }
    raw.nodes.push_back(std::move(node));
  }

  const auto& edges = require_field(doc, "edges", "map");
  if (!edges.is_array()) {
    throw MapParseError("map: 'edges' must be an array");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_object()) {
      throw MapParseError(where + " must be an object");
    }
    reject_unknown_keys(e, {"a", "b", "length"}, where);
    raw.edges.push_back(
        {require_string(e, "a", where), require_string(e, "b", where), require_number(e, "length", where)});
  }
  return raw;
}

}  // namespace

MapValidationError::MapValidationError(std::vector<std::string> violations)
    : MapError(join_violations(violations)), violations_(std::move(violations)) {}

UnknownNodeError::UnknownNodeError(std::string_view id)
    : MapError("unknown node '" + std::string(id) + "'"), id_(id) {}

NodeId::NodeId(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) {
    throw std::invalid_argument("invalid node id '" + value_ + "'");
  }
}

bool NodeId::is_valid(std::string_view value) noexcept {
  if (value.empty() || value.size() > kMaxLength) {
    return false;
  }
  return std::all_of(value.begin(), value.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::string_view to_string(NodeKind kind) noexcept {
  return kind == NodeKind::destination ? "destination" : "waypoint";
}

MapGraph MapGraph::build(std::string map_id, std::vector<MapNode> nodes, std::vector<MapEdge> edges,
                         std::vector<std::string>* warnings) {
  std::vector<std::string> violations;

  if (map_id.empty()) {
    violations.push_back("map_id must not be empty");
  } else if (map_id.find('|') != std::string::npos) {
    violations.push_back("map_id must not contain '|'");
  }
  if (nodes.empty()) {
    violations.push_back("map has no nodes");
  }

  std::sort(nodes.begin(), nodes.end(), [](const MapNode& a, const MapNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id) {
      violations.push_back("duplicate node id '" + nodes[i].id.str() + "'");
    }
  }
  bool any_destination = false;
  for (const auto& n : nodes) {
    if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y)) {
      violations.push_back("node '" + n.id.str() + "' has a non-finite position");
    }
    if (n.kind == NodeKind::destination) {
      any_destination = true;
      if (n.label.empty()) {
        violations.push_back("destination node '" + n.id.str() + "' has an empty label");
      }
    }
  }
  if (!nodes.empty() && !any_destination) {
    violations.push_back("map has no destination node");
  }

  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    index.emplace(nodes[i].id.str(), i);
  }

  std::set<std::pair<std::string, std::string>> seen_pairs;
  std::vector<MapEdge> normalized;
  std::vector<std::vector<Adjacent>> adjacency(nodes.size());
  for (auto& e : edges) {
    const std::string label = "edge " + e.a.str() + "-" + e.b.str();
    bool ok = true;
    for (const NodeId* end : {&e.a, &e.b}) {
      if (!index.contains(end->str())) {
        violations.push_back(label + " references missing node '" + end->str() + "'");
        ok = false;
      }
    }
    if (e.a == e.b) {
      violations.push_back(label + " is a self-loop");
      ok = false;
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      violations.push_back(label + " has non-positive length " + format_number(e.length));
      ok = false;
    }
    if (e.b < e.a) {
      std::swap(e.a, e.b);
    }
    if (!seen_pairs.emplace(e.a.str(), e.b.str()).second) {
      violations.push_back(label + " duplicates an existing edge");
      ok = false;
    }
    if (!ok) {
      continue;
    }
    const std::size_t ia = index.at(e.a.str());
    const std::size_t ib = index.at(e.b.str());
    const double euclid = distance(nodes[ia].position, nodes[ib].position);
    if (euclid == 0.0) {
      violations.push_back(label + " joins two nodes at the same position");
      continue;
    }
    if (warnings != nullptr && std::abs(e.length - euclid) > kEdgeLengthTolerance * euclid) {
      warnings->push_back(label + " length " + format_number(e.length) + " differs from straight-line distance " +
                          format_number(euclid));
    }
    adjacency[ia].push_back({ib, e.length});
    adjacency[ib].push_back({ia, e.length});
    normalized.push_back(e);
  }

  if (!nodes.empty()) {
    std::vector<bool> reached(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& adj : adjacency[u]) {
        if (!reached[adj.to]) {
          reached[adj.to] = true;
          stack.push_back(adj.to);
        }
      }
    }
    std::vector<std::string> unreachable;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!reached[i]) {
        unreachable.push_back(nodes[i].id.str());
      }
    }
    if (!unreachable.empty()) {
      std::string msg = "graph is disconnected; unreachable from '" + nodes[0].id.str() + "':";
      for (const auto& id : unreachable) {
        msg += " " + id;
      }
      violations.push_back(msg);
    }
  }

  if (!violations.empty()) {
    throw MapValidationError(std::move(violations));
  }

  for (auto& list : adjacency) {
    std::sort(list.begin(), list.end(), [](const Adjacent& x, const Adjacent& y) { return x.to < y.to; });
  }
  std::sort(normalized.begin(), normalized.end(), [](const MapEdge& x, const MapEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  MapGraph g;
  g.map_id_ = std::move(map_id);
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(normalized);
  g.adjacency_ = std::move(adjacency);
  return g;
}

std::optional<std::size_t> MapGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const MapNode& n, std::string_view key) { return n.id.str() < key; });
  if (it == nodes_.end() || it->id.str() != id) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t MapGraph::require_index(std::string_view id) const {
  if (auto idx = index_of(id)) {
    return *idx;
  }
  throw UnknownNodeError(id);
}

std::optional<double> MapGraph::edge_length(std::size_t a, std::size_t b) const {
  for (const auto& adj : adjacency_.at(a)) {
    if (adj.to == b) {
      return adj.length;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> MapGraph::destination_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == NodeKind::destination) {
      out.push_back(i);
    }
  }
  return out;
}

MapGraph load_map(std::string_view text, std::vector<std::string>* warnings) {
  RawMap raw = parse_document(text);

  // Id syntax is checked here so that all violations surface in one report.
  std::vector<std::string> violations;
  std::set<std::string> bad_ids;
  std::vector<MapNode> nodes;
  for (auto& n : raw.nodes) {
    if (!NodeId::is_valid(n.id)) {
      violations.push_back("invalid node id '" + n.id + "'");
      bad_ids.insert(n.id);
      continue;
    }
    nodes.push_back({NodeId(n.id), n.kind, std::move(n.label), n.position, std::move(n.announcement)});
  }
  std::vector<MapEdge> edges;
  for (auto& e : raw.edges) {
    bool ok = true;
    for (const std::string* end : {&e.a, &e.b}) {
      if (!NodeId::is_valid(*end)) {
        ok = false;
        if (!bad_ids.contains(*end)) {
          violations.push_back("edge " + e.a + "-" + e.b + " references missing node '" + *end + "'");
        }
      }
    }
    if (ok) {
      edges.push_back({NodeId(e.a), NodeId(e.b), e.length});
    }
  }

  std::optional<MapGraph> graph;
  try {
    graph = MapGraph::build(std::move(raw.map_id), std::move(nodes), std::move(edges), warnings);
  } catch (const MapValidationError& err) {
    violations.insert(violations.end(), err.violations().begin(), err.violations().end());
  }
  if (!violations.empty()) {
    throw MapValidationError(std::move(violations));
  }
  return std::move(*graph);
}

MapGraph load_map(std::istream& in, std::vector<std::string>* warnings) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_map(std::string_view(text), warnings);
}

MapGraph load_map_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MapParseError("cannot open map file " + path.string());
  }
  return load_map(in, warnings);
}

std::string serialize_map(const MapGraph& graph, int indent) {
  ordered_json doc;
  doc["format"] = kMapFormatTag;
  doc["map_id"] = graph.map_id();
  ordered_json nodes = ordered_json::array();
  for (const auto& n : graph.nodes()) {
    ordered_json j;
    j["id"] = n.id.str();
    j["kind"] = to_string(n.kind);
    j["label"] = n.label;
    j["x"] = n.position.x;
    j["y"] = n.position.y;
    if (n.announcement) {
      j["announcement"] = *n.announcement;
    }
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"a", e.a.str()}, {"b", e.b.str()}, {"length", e.length}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(indent) + "\n";
}

double normalize_degrees(double degrees) noexcept {
  double d = std::fmod(degrees, 360.0);
  if (d <= -180.0) {
    d += 360.0;
  } else if (d > 180.0) {
    d -= 360.0;
  }
  return d;
}

double heading(Point from, Point to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::domain_error("heading between coincident positions");
  }
  return normalize_degrees(std::atan2(dy, dx) * 180.0 / std::numbers::pi);
}

double heading(const MapNode& from, const MapNode& to) { return heading(from.position, to.position); }

double distance(Point a, Point b) noexcept { return std::hypot(b.x - a.x, b.y - a.y); }

std::vector<std::pair<NodeId, double>> neighbors(const MapGraph& graph, const NodeId& id) {
  std::vector<std::pair<NodeId, double>> out;
  for (const auto& adj : graph.adjacent(graph.require_index(id.str()))) {
    out.emplace_back(graph.node(adj.to).id, adj.length);
  }
  return out;
}

}  // namespace wayfind
