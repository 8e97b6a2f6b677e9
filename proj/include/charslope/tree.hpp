#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charslope/geometry.hpp"

namespace charslope {

class SatelliteTree;

/// Geometry of a hyperbolic piece: either a database key or inline values.
using GeometryRef = std::variant<std::string, HyperbolicGeometry>;

struct UnknotLeaf {
  friend bool operator==(const UnknotLeaf&, const UnknotLeaf&) = default;
};

/// Exterior of the torus knot T(a,b).
struct TorusLeaf {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const TorusLeaf&, const TorusLeaf&) = default;
};

/// Cable space of C(r,s) glued to the exterior of its companion. s is the winding number.
struct CableNode {
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::unique_ptr<SatelliteTree> child;

  CableNode(std::int64_t r, std::int64_t s, SatelliteTree companion);
  CableNode(const CableNode& other);
  CableNode(CableNode&&) noexcept = default;
  CableNode& operator=(const CableNode& other);
  CableNode& operator=(CableNode&&) noexcept = default;
  ~CableNode();

  const SatelliteTree& companion() const { return *child; }
  friend bool operator==(const CableNode& x, const CableNode& y);
};

/// Composing space; each child is a prime summand.
struct ComposingNode {
  std::vector<SatelliteTree> children;
  friend bool operator==(const ComposingNode&, const ComposingNode&);
};

/// Hyperbolic piece S^3 - L; child i-1 is spliced into component L_i.
struct HyperbolicNode {
  GeometryRef geometry;
  std::vector<SatelliteTree> children;
  friend bool operator==(const HyperbolicNode&, const HyperbolicNode&);
};

/// JSJ decomposition of a knot exterior, rooted at the outermost piece.
class SatelliteTree {
 public:
  using Node = std::variant<UnknotLeaf, TorusLeaf, CableNode, ComposingNode, HyperbolicNode>;

  SatelliteTree() = default;
  SatelliteTree(Node node) : node_(std::move(node)) {}

  const Node& node() const { return node_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(node_);
  }

  std::size_t child_count() const;
  const SatelliteTree& child(std::size_t i) const;

  friend bool operator==(const SatelliteTree&, const SatelliteTree&) = default;

 private:
  Node node_;
};

SatelliteTree unknot();
SatelliteTree torus(std::int64_t a, std::int64_t b);
SatelliteTree cable(std::int64_t r, std::int64_t s, SatelliteTree companion);
SatelliteTree sum(std::vector<SatelliteTree> summands);
SatelliteTree hyp(GeometryRef geometry, std::vector<SatelliteTree> children = {});

/// Path of child indices from the root piece. As a torus id it names the
/// JSJ torus directly above the addressed subtree; as a piece id it names
/// the piece at the root of that subtree.
using TorusId = std::vector<std::size_t>;

std::string path_string(const TorusId& path);

/// Subtree at `path`, or nullptr when the path leaves the tree.
const SatelliteTree* subtree_at(const SatelliteTree& tree, const TorusId& path);

/// Every JSJ torus of the tree, in preorder.
std::vector<TorusId> all_tori(const SatelliteTree& tree);

/// Hyperbolic pieces in preorder, paired with their paths.
std::vector<std::pair<TorusId, const HyperbolicNode*>> hyperbolic_pieces(const SatelliteTree& tree);

class MissingGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inline geometry or the db entry a key names. Throws MissingGeometry for unknown keys.
const HyperbolicGeometry& resolve_geometry(const HyperbolicNode& node, const GeometryDb& db);

struct Violation {
  TorusId piece;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

using ValidationReport = std::vector<Violation>;

/// Checks the JSJ piece classification constraints. Hyperbolic child counts
/// are only checked where the geometry resolves against `db`.
ValidationReport validate(const SatelliteTree& tree, const GeometryDb& db = {});

class InvalidTree : public std::invalid_argument {
 public:
  explicit InvalidTree(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Throws InvalidTree when validate() reports anything.
void require_valid(const SatelliteTree& tree, const GeometryDb& db = {});

/// Winding number of the pattern on the edge above `torus`.
///
/// Throws std::out_of_range for a path that is not an edge and
/// MissingGeometry when a hyperbolic parent lacks linking numbers.
std::int64_t edge_winding(const SatelliteTree& tree, const TorusId& torus, const GeometryDb& db = {});

/// Product of edge windings from the root down to `torus`.
std::int64_t cumulative_winding(const SatelliteTree& tree, const TorusId& torus,
                                const GeometryDb& db = {});

/// True iff the tree has at least one JSJ torus and every torus has
/// cumulative winding zero.
bool all_winding_zero(const SatelliteTree& tree, const GeometryDb& db = {});

namespace knot_class {
struct Unknot {
  friend bool operator==(const Unknot&, const Unknot&) = default;
};
struct Composite {
  friend bool operator==(const Composite&, const Composite&) = default;
};
struct Cable {
  std::int64_t r = 0;
  std::int64_t s = 0;
  friend bool operator==(const Cable&, const Cable&) = default;
};
/// Iterated cable of a torus knot or composite knot; cables listed outermost first.
struct GraphPrime {
  std::vector<Cable> cables;
  SatelliteTree core;
  friend bool operator==(const GraphPrime&, const GraphPrime&) = default;
};
struct HyperbolicType {
  friend bool operator==(const HyperbolicType&, const HyperbolicType&) = default;
};
}  // namespace knot_class

using KnotClass = std::variant<knot_class::Unknot, knot_class::Composite, knot_class::GraphPrime,
                               knot_class::HyperbolicType>;

/// Throws InvalidTree for invalid input.
KnotClass classify(const SatelliteTree& tree, const GeometryDb& db = {});

std::string class_name(const KnotClass& k);

}  // namespace charslope
