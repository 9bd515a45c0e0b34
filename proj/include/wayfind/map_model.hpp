#pragma once

// Floor-plan graph: QR strips are nodes, walkable corridor segments between
// neighbouring strips are undirected edges. Coordinates are planar meters,
// +x east, +y north; headings are degrees counter-clockwise from +x.

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wayfind {

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed map document: bad JSON, wrong field types, unknown keys, wrong format tag.
class MapParseError : public MapError {
 public:
  using MapError::MapError;
};

/// Well-formed document whose graph breaks an invariant. Carries every violation found.
class MapValidationError : public MapError {
 public:
  explicit MapValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class UnknownNodeError : public MapError {
 public:
  explicit UnknownNodeError(std::string_view id);
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Identifier printed into a strip's payload: 1..32 chars of [A-Za-z0-9_-].
class NodeId {
 public:
  static constexpr std::size_t kMaxLength = 32;

  /// Throws std::invalid_argument when `value` is not a valid id.
  explicit NodeId(std::string value);

  static bool is_valid(std::string_view value) noexcept;

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  std::string value_;
};

enum class NodeKind { destination, waypoint };

std::string_view to_string(NodeKind kind) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct MapNode {
  NodeId id;
  NodeKind kind;
  std::string label;
  Point position;
  std::optional<std::string> announcement;

  friend bool operator==(const MapNode&, const MapNode&) = default;
};

struct MapEdge {
  NodeId a;
  NodeId b;
  double length;

  friend bool operator==(const MapEdge&, const MapEdge&) = default;
};

/// Immutable, validated floor plan. Nodes are stored in ascending id order and
/// addressed internally by their index into that order; edges are stored with
/// a < b and sorted.
class MapGraph {
 public:
  struct Adjacent {
    std::size_t to;
    double length;
  };

  /// Validates and builds. Throws MapValidationError listing every violation.
  /// Edge lengths that disagree with the endpoint distance beyond 1e-6 relative
  /// are reported through `warnings` rather than rejected.
  static MapGraph build(std::string map_id, std::vector<MapNode> nodes, std::vector<MapEdge> edges,
                        std::vector<std::string>* warnings = nullptr);

  const std::string& map_id() const noexcept { return map_id_; }
  std::span<const MapNode> nodes() const noexcept { return nodes_; }
  std::span<const MapEdge> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Throws UnknownNodeError.
  std::size_t require_index(std::string_view id) const;

  const MapNode& node(std::size_t index) const { return nodes_.at(index); }
  const MapNode& node(const NodeId& id) const { return nodes_[require_index(id.str())]; }

  /// Neighbours of `index` in ascending id order.
  std::span<const Adjacent> adjacent(std::size_t index) const { return adjacency_.at(index); }
  std::optional<double> edge_length(std::size_t a, std::size_t b) const;

  std::vector<std::size_t> destination_indices() const;

  friend bool operator==(const MapGraph& a, const MapGraph& b) {
    return a.map_id_ == b.map_id_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  MapGraph() = default;

  std::string map_id_;
  std::vector<MapNode> nodes_;
  std::vector<MapEdge> edges_;
  std::vector<std::vector<Adjacent>> adjacency_;
};

inline constexpr std::string_view kMapFormatTag = "wayfind-map/1";
inline constexpr double kEdgeLengthTolerance = 1e-6;

/// Parses and validates a `wayfind-map/1` JSON document.
MapGraph load_map(std::string_view text, std::vector<std::string>* warnings = nullptr);
MapGraph load_map(std::istream& in, std::vector<std::string>* warnings = nullptr);
MapGraph load_map_file(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

/// Inverse of load_map: load_map(serialize_map(g)) == g.
std::string serialize_map(const MapGraph& graph, int indent = 2);

/// Wraps angle into (-180, 180].
double normalize_degrees(double degrees) noexcept;

/// Direction of travel from `from` to `to`, degrees in (-180, 180].
/// Throws std::domain_error when the positions coincide.
double heading(Point from, Point to);
double heading(const MapNode& from, const MapNode& to);

double distance(Point a, Point b) noexcept;

/// All nodes sharing an edge with `id`, ascending by id. Throws UnknownNodeError.
std::vector<std::pair<NodeId, double>> neighbors(const MapGraph& graph, const NodeId& id);

}  // namespace wayfind
