#include "charslope/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace charslope {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Unknot:
      return "Unknot";
    case CaseTag::Composite:
      return "Composite";
    case CaseTag::GraphPrime:
      return "GraphPrime";
    case CaseTag::HyperbolicType:
      return "HyperbolicType";
    case CaseTag::Refined:
      return "Refined";
  }
  return "Unknot";
}

std::optional<CaseTag> parse_case_tag(std::string_view text) {
  for (auto tag : {CaseTag::Unknot, CaseTag::Composite, CaseTag::GraphPrime, CaseTag::HyperbolicType,
                   CaseTag::Refined}) {
    if (to_string(tag) == text) return tag;
  }
  return std::nullopt;
}

namespace {

std::int64_t iabs(std::int64_t v) {
  if (v == INT64_MIN) throw std::overflow_error("integer parameter out of range");
  return v < 0 ? -v : v;
}

void note_boundary(const GuardedInt& g, std::string_view kernel, const TorusId& path,
                   std::vector<std::string>& warnings) {
  if (!g.boundary_warning) return;
  warnings.push_back("boundary: " + std::string(kernel) + " at " + path_string(path) + " rounded up from " +
                     std::to_string(g.underlying) + " to " + std::to_string(g.value));
}

void require_hyperbolic_type(const SatelliteTree& tree, const GeometryDb& db) {
  const KnotClass k = classify(tree, db);
  if (!std::holds_alternative<knot_class::HyperbolicType>(k)) {
    throw PreconditionError("knot is " + class_name(k) + ", not of hyperbolic type");
  }
}

PieceContribution& piece_entry(std::vector<PieceContribution>& pieces, const TorusId& path) {
  for (auto& p : pieces) {
    if (p.path == path) return p;
  }
  pieces.push_back({path, {}, {}, {}});
  return pieces.back();
}

// Y for Q(K): peel exactly one cable layer.
TorusId q_piece_path(const SatelliteTree& tree) {
  if (tree.is<CableNode>()) return {0};
  return {};
}

ComponentBound q_unchecked(const SatelliteTree& tree, const GeometryDb& db) {
  ComponentBound out;
  const TorusId path = q_piece_path(tree);
  const SatelliteTree* y = subtree_at(tree, path);
  const auto* h = std::get_if<HyperbolicNode>(&y->node());
  if (!h) return out;
  const GuardedInt q = q_frak(resolve_geometry(*h, db));
  note_boundary(q, "q", path, out.warnings);
  out.value = std::max<std::int64_t>(constants::kQFloor, q.value);
  out.pieces.push_back({path, q.value, {}, {}});
  return out;
}

ComponentBound r_unchecked(const SatelliteTree& tree, const GeometryDb& db) {
  ComponentBound out;
  for (const auto& [path, h] : hyperbolic_pieces(tree)) {
    const GuardedInt r = r_frak(resolve_geometry(*h, db));
    note_boundary(r, "r", path, out.warnings);
    out.value = std::max(out.value, r.value);
    out.pieces.push_back({path, {}, r.value, {}});
  }
  return out;
}

ComponentBound s_unchecked(const SatelliteTree& tree, const GeometryDb& db) {
  ComponentBound out;
  out.value = constants::kSFloor;
  for (const auto& [path, h] : hyperbolic_pieces(tree)) {
    if (path.empty()) continue;
    const GuardedInt s = s_frak(resolve_geometry(*h, db));
    note_boundary(s, "s", path, out.warnings);
    out.value = std::max(out.value, s.value);
    out.pieces.push_back({path, {}, {}, s.value});
  }
  return out;
}

std::int64_t graph_prime_bound(const knot_class::GraphPrime& g) {
  if (g.core.is<ComposingNode>()) return 2;
  const auto& t = g.core.as<TorusLeaf>();
  const std::int64_t a = iabs(t.a);
  const std::int64_t b = iabs(t.b);
  const std::size_t n = g.cables.size();
  if (n == 0) return std::max<std::int64_t>({8, a, b});
  // Cables are stored outermost first; r_1, s_1 sit next to the torus knot.
  const std::int64_t r1 = iabs(g.cables.back().r);
  const std::int64_t s1 = iabs(g.cables.back().s);
  if (n == 1) return std::max<std::int64_t>({8, s1, r1 + a, r1 + b});
  return std::max(r1 + a, r1 + b);
}

}  // namespace

ComponentBound compute_Q(const SatelliteTree& tree, const GeometryDb& db) {
  require_hyperbolic_type(tree, db);
  return q_unchecked(tree, db);
}

ComponentBound compute_R(const SatelliteTree& tree, const GeometryDb& db) {
  require_hyperbolic_type(tree, db);
  return r_unchecked(tree, db);
}

ComponentBound compute_S(const SatelliteTree& tree, const GeometryDb& db) {
  require_hyperbolic_type(tree, db);
  return s_unchecked(tree, db);
}

BoundReport bound(const SatelliteTree& tree, const GeometryDb& db) {
  const KnotClass k = classify(tree, db);
  BoundReport out;
  if (std::holds_alternative<knot_class::Unknot>(k)) {
    out.case_tag = CaseTag::Unknot;
    out.C = 0;
  } else if (std::holds_alternative<knot_class::Composite>(k)) {
    out.case_tag = CaseTag::Composite;
    out.C = 1;
  } else if (const auto* g = std::get_if<knot_class::GraphPrime>(&k)) {
    out.case_tag = CaseTag::GraphPrime;
    out.C = graph_prime_bound(*g);
  } else {
    out.case_tag = CaseTag::HyperbolicType;
    ComponentBound q = q_unchecked(tree, db);
    ComponentBound r = r_unchecked(tree, db);
    ComponentBound s = s_unchecked(tree, db);
    out.Q = q.value;
    out.R = r.value;
    out.S = s.value;
    out.C = std::max({q.value, r.value, s.value});

    for (const auto& [path, _] : hyperbolic_pieces(tree)) piece_entry(out.per_piece, path);
    for (const auto& p : q.pieces) piece_entry(out.per_piece, p.path).q = p.q;
    for (const auto& p : r.pieces) piece_entry(out.per_piece, p.path).r = p.r;
    for (const auto& p : s.pieces) piece_entry(out.per_piece, p.path).s = p.s;
    for (auto* w : {&q.warnings, &r.warnings, &s.warnings}) {
      out.warnings.insert(out.warnings.end(), w->begin(), w->end());
    }
  }
  return out;
}

std::int64_t sd_lower_bound(std::int64_t sigma) {
  const std::int64_t a = iabs(sigma);
  return a / 2 + a % 2;
}

std::int64_t twist_contribution(const Evidence& e) {
  return std::visit(
      [](const auto& ev) -> std::int64_t {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, evidence::TwistCoefficient>) {
          if (ev.t < 0) throw AnnotationError("twist coefficient must be nonnegative");
          return ev.t;
        } else if constexpr (std::is_same_v<T, evidence::SignatureObstruction>) {
          // sd >= 2 means no single twist unknots the companion.
          if (iabs(ev.sigma) < 4 || sd_lower_bound(ev.sigma) < 2) {
            throw AnnotationError("signature " + std::to_string(ev.sigma) +
                                  " does not obstruct splicing (need |sigma| >= 4)");
          }
          return 0;
        } else if constexpr (std::is_same_v<T, evidence::CompositeOrFibred>) {
          return 1;
        } else {
          return 0;
        }
      },
      e);
}

namespace {

void check_refined_preconditions(const SatelliteTree& tree, const GeometryDb& db,
                                 const AnnotationSet& annotations) {
  require_valid(tree, db);
  const auto tori = all_tori(tree);
  if (tori.empty()) throw PreconditionError("knot is not a satellite: it has no JSJ tori");
  for (const auto& t : tori) {
    const std::int64_t w = cumulative_winding(tree, t, db);
    if (w != 0) {
      throw PreconditionError("pattern at torus " + path_string(t) + " has winding number " +
                              std::to_string(w) + "; the refined bound needs winding number zero everywhere");
    }
  }
  std::set<TorusId> covered;
  for (const auto& a : annotations.annotations) {
    if (a.torus.empty() || !subtree_at(tree, a.torus)) {
      throw AnnotationError("annotation names no JSJ torus: " + path_string(a.torus));
    }
    if (cumulative_winding(tree, a.torus, db) != 0) {
      throw AnnotationError("annotated torus " + path_string(a.torus) + " has nonzero winding");
    }
    twist_contribution(a.evidence);
    covered.insert(a.torus);
  }
  if (!annotations.complete) {
    for (const auto& t : tori) {
      if (!covered.contains(t)) {
        throw AnnotationError("torus " + path_string(t) +
                              " is not annotated and the annotation set is not marked complete");
      }
    }
  }
}

}  // namespace

BoundReport refined_bound(const SatelliteTree& tree, const GeometryDb& db, const AnnotationSet& annotations) {
  check_refined_preconditions(tree, db, annotations);
  BoundReport out;
  out.case_tag = CaseTag::Refined;
  ComponentBound q = q_unchecked(tree, db);
  std::int64_t t_value = 0;
  for (const auto& a : annotations.annotations) t_value = std::max(t_value, twist_contribution(a.evidence));
  out.Q = q.value;
  out.T = t_value;
  out.C = std::max(q.value, t_value);
  out.per_piece = std::move(q.pieces);
  out.warnings = std::move(q.warnings);
  return out;
}

std::vector<Slope> noncharacterising_witnesses(const SatelliteTree& tree, const GeometryDb& db,
                                               const AnnotationSet& annotations) {
  if (!all_winding_zero(tree, db)) {
    throw PreconditionError("witness slopes need every satellite pattern to have winding number zero");
  }
  std::vector<Slope> out;
  for (const auto& a : annotations.annotations) {
    if (const auto* tw = std::get_if<evidence::TwistCoefficient>(&a.evidence); tw && tw->t >= 1) {
      out.emplace_back(1, tw->t);
    }
  }
  return out;
}

SurgeryJsjResult surgery_jsj(const SatelliteTree& tree, const Slope& slope, const GeometryDb& db) {
  require_valid(tree, db);
  if (tree.is<UnknotLeaf>()) throw PreconditionError("surgery on the unknot has no JSJ prediction");
  if (slope.q() <= 2) throw PreconditionError("JSJ prediction needs |q| > 2, got " + slope.str());

  SurgeryJsjResult out;
  if (const auto* c = std::get_if<CableNode>(&tree.node()); c && iabs(c->s) >= 2) {
    std::int64_t qr = 0, qrs = 0, diff = 0;
    const bool overflow = __builtin_mul_overflow(slope.q(), c->r, &qr) ||
                          __builtin_mul_overflow(qr, c->s, &qrs) || __builtin_sub_overflow(slope.p(), qrs, &diff);
    if (!overflow && (diff == 1 || diff == -1)) {
      const std::int64_t t = iabs(c->s);
      std::int64_t denom = 0;
      if (__builtin_mul_overflow(slope.q(), t * t, &denom)) {
        throw std::overflow_error("filled slope denominator overflows");
      }
      out.case_tag = SurgeryCase::II;
      out.surgered_piece = {0};
      out.filled_slope = Slope(slope.p(), denom);
      out.cable_multiplier = t;
      return out;
    }
  }
  out.case_tag = SurgeryCase::I;
  out.filled_slope = slope;
  out.cable_multiplier = 1;
  return out;
}

double q_leq_s_threshold(std::int64_t Q) {
  const double q = static_cast<double>(Q);
  const double denom = q * q - constants::kQleqSOffset * constants::kSqrt3;
  if (!(denom > 0.0)) throw PreconditionError("Q(K)^2 must exceed 172.68 sqrt(3)");
  return constants::kQleqSNumerator / denom;
}

QleqSCheck q_leq_s_check(const SatelliteTree& tree, const GeometryDb& db) {
  const ComponentBound q = compute_Q(tree, db);
  QleqSCheck out;
  out.threshold = q_leq_s_threshold(q.value);
  out.holds = true;
  bool any_inner = false;
  for (const auto& [path, h] : hyperbolic_pieces(tree)) {
    if (path.empty()) continue;
    any_inner = true;
    if (resolve_geometry(*h, db).systole > out.threshold) out.holds = false;
  }
  if (out.holds && any_inner) {
    const ComponentBound s = s_unchecked(tree, db);
    if (q.value > s.value) {
      throw std::logic_error("systole threshold met but Q(K) = " + std::to_string(q.value) +
                             " exceeds S(K) = " + std::to_string(s.value));
    }
  }
  return out;
}

namespace {

using json = nlohmann::json;

std::int64_t required_int(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw AnnotationError(where + ": '" + key + "' must be an integer");
  }
  return it->get<std::int64_t>();
}

SpliceAnnotation annotation_from_json(const json& e, std::size_t index) {
  const std::string where = "annotation " + std::to_string(index);
  if (!e.is_object()) throw AnnotationError(where + ": must be an object");
  for (const auto& [key, _] : e.items()) {
    if (key != "torus" && key != "evidence") throw AnnotationError(where + ": unknown key '" + key + "'");
  }
  SpliceAnnotation a;
  const auto torus = e.find("torus");
  if (torus == e.end() || !torus->is_array()) throw AnnotationError(where + ": 'torus' must be a list");
  for (const auto& idx : *torus) {
    if (!idx.is_number_unsigned()) throw AnnotationError(where + ": torus indices must be nonnegative");
    a.torus.push_back(idx.get<std::size_t>());
  }
  const auto ev = e.find("evidence");
  if (ev == e.end() || !ev->is_object()) throw AnnotationError(where + ": 'evidence' must be an object");
  const auto kind_it = ev->find("kind");
  if (kind_it == ev->end() || !kind_it->is_string()) throw AnnotationError(where + ": evidence needs a kind");
  const std::string kind = kind_it->get<std::string>();
  std::set<std::string> allowed = {"kind"};
  if (kind == "twist") {
    a.evidence = evidence::TwistCoefficient{required_int(*ev, "t", where)};
    allowed.insert("t");
  } else if (kind == "signature") {
    a.evidence = evidence::SignatureObstruction{required_int(*ev, "sigma", where)};
    allowed.insert("sigma");
  } else if (kind == "composite_or_fibred") {
    a.evidence = evidence::CompositeOrFibred{};
  } else if (kind == "pattern_knotted") {
    a.evidence = evidence::PatternKnotted{};
  } else if (kind == "not_splicifiable") {
    a.evidence = evidence::NotSplicifiable{};
  } else {
    throw AnnotationError(where + ": unknown evidence kind '" + kind + "'");
  }
  for (const auto& [key, _] : ev->items()) {
    if (!allowed.contains(key)) throw AnnotationError(where + ": unexpected evidence key '" + key + "'");
  }
  return a;
}

}  // namespace

AnnotationSet parse_annotations(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw AnnotationError(std::string("malformed annotation file: ") + e.what());
  }
  AnnotationSet out;
  const json* list = &doc;
  if (doc.is_object()) {
    for (const auto& [key, _] : doc.items()) {
      if (key != "complete" && key != "annotations") {
        throw AnnotationError("unknown top-level key '" + key + "'");
      }
    }
    if (const auto it = doc.find("complete"); it != doc.end()) {
      if (!it->is_boolean()) throw AnnotationError("'complete' must be a boolean");
      out.complete = it->get<bool>();
    }
    const auto it = doc.find("annotations");
    if (it == doc.end()) throw AnnotationError("missing 'annotations' list");
    list = &*it;
  }
  if (!list->is_array()) throw AnnotationError("annotations must be a list");
  for (std::size_t i = 0; i < list->size(); ++i) out.annotations.push_back(annotation_from_json((*list)[i], i));
  return out;
}

}  // namespace charslope
