#include "charslope/tree.hpp"

#include <numeric>

namespace charslope {

CableNode::CableNode(std::int64_t r, std::int64_t s, SatelliteTree companion)
    : r(r), s(s), child(std::make_unique<SatelliteTree>(std::move(companion))) {}

CableNode::CableNode(const CableNode& other)
    : r(other.r), s(other.s), child(std::make_unique<SatelliteTree>(*other.child)) {}

CableNode& CableNode::operator=(const CableNode& other) {
  if (this != &other) {
    r = other.r;
    s = other.s;
    child = std::make_unique<SatelliteTree>(*other.child);
  }
  return *this;
}

CableNode::~CableNode() = default;

bool operator==(const CableNode& x, const CableNode& y) {
  return x.r == y.r && x.s == y.s && *x.child == *y.child;
}

bool operator==(const ComposingNode& x, const ComposingNode& y) { return x.children == y.children; }

bool operator==(const HyperbolicNode& x, const HyperbolicNode& y) {
  return x.geometry == y.geometry && x.children == y.children;
}

std::size_t SatelliteTree::child_count() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CableNode>) {
          return 1;
        } else if constexpr (std::is_same_v<T, ComposingNode> || std::is_same_v<T, HyperbolicNode>) {
          return n.children.size();
        } else {
          return 0;
        }
      },
      node_);
}

const SatelliteTree& SatelliteTree::child(std::size_t i) const {
  if (i >= child_count()) throw std::out_of_range("child index out of range");
  if (const auto* c = std::get_if<CableNode>(&node_)) return c->companion();
  if (const auto* c = std::get_if<ComposingNode>(&node_)) return c->children[i];
  return std::get<HyperbolicNode>(node_).children[i];
}

SatelliteTree unknot() { return SatelliteTree(UnknotLeaf{}); }
SatelliteTree torus(std::int64_t a, std::int64_t b) { return SatelliteTree(TorusLeaf{a, b}); }
SatelliteTree cable(std::int64_t r, std::int64_t s, SatelliteTree companion) {
  return SatelliteTree(CableNode(r, s, std::move(companion)));
}
SatelliteTree sum(std::vector<SatelliteTree> summands) {
  return SatelliteTree(ComposingNode{std::move(summands)});
}
SatelliteTree hyp(GeometryRef geometry, std::vector<SatelliteTree> children) {
  return SatelliteTree(HyperbolicNode{std::move(geometry), std::move(children)});
}

std::string path_string(const TorusId& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(path[i]);
  }
  return out + "]";
}

const SatelliteTree* subtree_at(const SatelliteTree& tree, const TorusId& path) {
  const SatelliteTree* cur = &tree;
  for (std::size_t idx : path) {
    if (idx >= cur->child_count()) return nullptr;
    cur = &cur->child(idx);
  }
  return cur;
}

namespace {

void collect_tori(const SatelliteTree& t, TorusId& path, std::vector<TorusId>& out) {
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    path.push_back(i);
    out.push_back(path);
    collect_tori(t.child(i), path, out);
    path.pop_back();
  }
}

void collect_hyperbolic(const SatelliteTree& t, TorusId& path,
                        std::vector<std::pair<TorusId, const HyperbolicNode*>>& out) {
  if (const auto* h = std::get_if<HyperbolicNode>(&t.node())) out.emplace_back(path, h);
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    path.push_back(i);
    collect_hyperbolic(t.child(i), path, out);
    path.pop_back();
  }
}

std::int64_t iabs(std::int64_t v) {
  if (v == INT64_MIN) throw std::overflow_error("integer parameter out of range");
  return v < 0 ? -v : v;
}

}  // namespace

std::vector<TorusId> all_tori(const SatelliteTree& tree) {
  std::vector<TorusId> out;
  TorusId path;
  collect_tori(tree, path, out);
  return out;
}

std::vector<std::pair<TorusId, const HyperbolicNode*>> hyperbolic_pieces(const SatelliteTree& tree) {
  std::vector<std::pair<TorusId, const HyperbolicNode*>> out;
  TorusId path;
  collect_hyperbolic(tree, path, out);
  return out;
}

const HyperbolicGeometry& resolve_geometry(const HyperbolicNode& node, const GeometryDb& db) {
  if (const auto* g = std::get_if<HyperbolicGeometry>(&node.geometry)) return *g;
  const auto& key = std::get<std::string>(node.geometry);
  if (const auto* g = db.find(key)) return *g;
  throw MissingGeometry("no geometry for link '" + key + "'");
}

namespace {

class Validator {
 public:
  explicit Validator(const GeometryDb& db) : db_(db) {}

  void visit(const SatelliteTree& t) {
    std::visit([&](const auto& n) { check(n); }, t.node());
    for (std::size_t i = 0; i < t.child_count(); ++i) {
      path_.push_back(i);
      visit(t.child(i));
      path_.pop_back();
    }
  }

  ValidationReport take() { return std::move(report_); }

 private:
  void add(std::string message) { report_.push_back({path_, std::move(message)}); }

  void check(const UnknotLeaf&) {
    // Unknot children are reported once, by their parent.
  }

  void check(const TorusLeaf& t) {
    if (iabs(t.a) < 2) add("torus parameter |a| < 2");
    if (iabs(t.b) < 2) add("torus parameter |b| < 2");
    if (std::gcd(iabs(t.a), iabs(t.b)) != 1) add("gcd(a,b) ≠ 1");
  }

  void check(const CableNode& c) {
    if (iabs(c.s) < 2) add("cable winding |s| < 2");
    if (c.companion().is<UnknotLeaf>()) add("cable companion trivial");
  }

  void check(const ComposingNode& c) {
    if (c.children.size() < 2) add("connected sum needs at least 2 summands");
    for (const auto& child : c.children) {
      if (child.is<UnknotLeaf>()) {
        add("connected sum has a trivial summand");
        break;
      }
    }
  }

  void check(const HyperbolicNode& h) {
    for (const auto& child : h.children) {
      if (child.is<UnknotLeaf>()) {
        add("hyperbolic piece has a trivial companion");
        break;
      }
    }
    const HyperbolicGeometry* g = std::get_if<HyperbolicGeometry>(&h.geometry);
    if (!g) g = db_.find(std::get<std::string>(h.geometry));
    if (!g) return;
    for (auto& problem : geometry_problems(*g)) add("invalid geometry: " + problem);
    if (h.children.size() + 1 != static_cast<std::size_t>(std::max(g->components, 0))) {
      add("hyperbolic piece has " + std::to_string(h.children.size()) + " companions but its link has " +
          std::to_string(g->components) + " components");
    }
  }

  const GeometryDb& db_;
  TorusId path_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const SatelliteTree& tree, const GeometryDb& db) {
  Validator v(db);
  v.visit(tree);
  return v.take();
}

namespace {

std::string describe(const ValidationReport& report) {
  std::string out = "invalid satellite tree";
  for (const auto& v : report) out += "; " + path_string(v.piece) + ": " + v.message;
  return out;
}

}  // namespace

InvalidTree::InvalidTree(ValidationReport report)
    : std::invalid_argument(describe(report)), report_(std::move(report)) {}

void require_valid(const SatelliteTree& tree, const GeometryDb& db) {
  auto report = validate(tree, db);
  if (!report.empty()) throw InvalidTree(std::move(report));
}

std::int64_t edge_winding(const SatelliteTree& tree, const TorusId& torus, const GeometryDb& db) {
  if (torus.empty()) throw std::out_of_range("the root piece has no torus above it");
  const TorusId parent_path(torus.begin(), torus.end() - 1);
  const SatelliteTree* parent = subtree_at(tree, parent_path);
  if (!parent || torus.back() >= parent->child_count()) {
    throw std::out_of_range("no JSJ torus at " + path_string(torus));
  }
  const std::size_t idx = torus.back();
  if (const auto* c = std::get_if<CableNode>(&parent->node())) return iabs(c->s);
  if (parent->is<ComposingNode>()) return 1;
  const auto& h = parent->as<HyperbolicNode>();
  const HyperbolicGeometry& g = resolve_geometry(h, db);
  if (!g.linking_numbers || idx >= g.linking_numbers->size()) {
    throw MissingGeometry("no linking number for component " + std::to_string(idx + 1) +
                          " of the hyperbolic piece at " + path_string(parent_path));
  }
  return iabs((*g.linking_numbers)[idx]);
}

std::int64_t cumulative_winding(const SatelliteTree& tree, const TorusId& torus,
                                const GeometryDb& db) {
  if (torus.empty()) throw std::out_of_range("the root piece has no torus above it");
  std::int64_t product = 1;
  TorusId prefix;
  for (std::size_t idx : torus) {
    prefix.push_back(idx);
    const std::int64_t w = edge_winding(tree, prefix, db);
    if (__builtin_mul_overflow(product, w, &product)) {
      throw std::overflow_error("winding number overflows at " + path_string(prefix));
    }
  }
  return product;
}

bool all_winding_zero(const SatelliteTree& tree, const GeometryDb& db) {
  const auto tori = all_tori(tree);
  if (tori.empty()) return false;
  for (const auto& t : tori) {
    if (cumulative_winding(tree, t, db) != 0) return false;
  }
  return true;
}

namespace {

bool has_hyperbolic(const SatelliteTree& t) {
  if (t.is<HyperbolicNode>()) return true;
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    if (has_hyperbolic(t.child(i))) return true;
  }
  return false;
}

}  // namespace

KnotClass classify(const SatelliteTree& tree, const GeometryDb& db) {
  require_valid(tree, db);
  if (tree.is<UnknotLeaf>()) return knot_class::Unknot{};
  if (tree.is<ComposingNode>()) return knot_class::Composite{};
  if (has_hyperbolic(tree)) return knot_class::HyperbolicType{};

  knot_class::GraphPrime out;
  const SatelliteTree* cur = &tree;
  while (const auto* c = std::get_if<CableNode>(&cur->node())) {
    out.cables.push_back({c->r, c->s});
    cur = &c->companion();
  }
  out.core = *cur;
  return out;
}

std::string class_name(const KnotClass& k) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, knot_class::Unknot>) return "Unknot";
        if constexpr (std::is_same_v<T, knot_class::Composite>) return "Composite";
        if constexpr (std::is_same_v<T, knot_class::GraphPrime>) return "GraphPrime";
        return "HyperbolicType";
      },
      k);
}

}  // namespace charslope
