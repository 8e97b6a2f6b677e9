#include "charslope/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace charslope {

using json = nlohmann::json;

std::string_view to_string(GeometrySource source) {
  switch (source) {
    case GeometrySource::Paper:
      return "paper";
    case GeometrySource::Derived:
      return "derived";
    case GeometrySource::User:
      return "user";
  }
  return "user";
}

std::optional<GeometrySource> parse_source(std::string_view text) {
  if (text == "paper") return GeometrySource::Paper;
  if (text == "derived") return GeometrySource::Derived;
  if (text == "user") return GeometrySource::User;
  return std::nullopt;
}

HyperbolicGeometry inline_geometry(double systole, std::vector<double> meridian_lengths,
                                   std::optional<std::vector<std::int64_t>> linking_numbers) {
  HyperbolicGeometry g;
  g.components = static_cast<int>(meridian_lengths.size()) + 1;
  g.systole = systole;
  if (!linking_numbers && meridian_lengths.empty()) linking_numbers.emplace();
  g.meridian_lengths = std::move(meridian_lengths);
  g.linking_numbers = std::move(linking_numbers);
  return g;
}

std::vector<std::string> geometry_problems(const HyperbolicGeometry& g) {
  std::vector<std::string> out;
  if (g.components < 1) out.push_back("components must be at least 1");
  if (!(std::isfinite(g.systole) && g.systole > 0.0)) out.push_back("systole must be positive");
  const auto expected = static_cast<std::size_t>(std::max(g.components - 1, 0));
  if (g.meridian_lengths.size() != expected) {
    out.push_back("expected " + std::to_string(expected) + " meridian lengths, got " +
                  std::to_string(g.meridian_lengths.size()));
  }
  for (double l : g.meridian_lengths) {
    if (!(std::isfinite(l) && l > 0.0)) {
      out.push_back("meridian lengths must be positive");
      break;
    }
  }
  if (g.linking_numbers && g.linking_numbers->size() != expected) {
    out.push_back("expected " + std::to_string(expected) + " linking numbers, got " +
                  std::to_string(g.linking_numbers->size()));
  }
  return out;
}

GeometryDb::GeometryDb(std::vector<HyperbolicGeometry> entries) {
  for (auto& g : entries) {
    if (!g.name || g.name->empty()) throw DbError("database entry without a name");
    if (auto problems = geometry_problems(g); !problems.empty()) {
      throw DbError("entry '" + *g.name + "': " + problems.front());
    }
    if (!g.linking_numbers) throw DbError("entry '" + *g.name + "': missing linking numbers");
    const std::string key = *g.name;
    if (!entries_.emplace(key, std::move(g)).second) {
      throw DbError("duplicate entry name '" + key + "'");
    }
  }
}

const HyperbolicGeometry* GeometryDb::find(std::string_view name) const {
  const auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> GeometryDb::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

namespace {

const std::set<std::string> kEntryKeys = {"name",           "components",      "systole",
                                          "meridian_lengths", "linking_numbers", "source",
                                          "notes"};

HyperbolicGeometry entry_from_json(const json& e, std::size_t index) {
  const std::string where = "links[" + std::to_string(index) + "]";
  if (!e.is_object()) throw DbError(where + ": entry must be an object");
  for (const auto& [key, _] : e.items()) {
    if (!kEntryKeys.contains(key)) throw DbError(where + ": unknown key '" + key + "'");
  }
  auto require = [&](const char* key) -> const json& {
    const auto it = e.find(key);
    if (it == e.end()) throw DbError(where + ": missing key '" + key + "'");
    return *it;
  };

  HyperbolicGeometry g;
  const json& name = require("name");
  if (!name.is_string()) throw DbError(where + ": name must be a string");
  g.name = name.get<std::string>();

  const json& components = require("components");
  if (!components.is_number_integer()) throw DbError(where + ": components must be an integer");
  const auto m = components.get<std::int64_t>();
  if (m < 1 || m > 1'000'000) throw DbError(where + ": components out of range");
  g.components = static_cast<int>(m);

  const json& systole = require("systole");
  if (!systole.is_number()) throw DbError(where + ": systole must be a number");
  g.systole = systole.get<double>();

  const json& mu = require("meridian_lengths");
  if (!mu.is_array()) throw DbError(where + ": meridian_lengths must be a list");
  for (const auto& v : mu) {
    if (!v.is_number()) throw DbError(where + ": meridian lengths must be numbers");
    g.meridian_lengths.push_back(v.get<double>());
  }

  const json& lk = require("linking_numbers");
  if (!lk.is_array()) throw DbError(where + ": linking_numbers must be a list");
  g.linking_numbers.emplace();
  for (const auto& v : lk) {
    if (!v.is_number_integer()) throw DbError(where + ": linking numbers must be integers");
    g.linking_numbers->push_back(v.get<std::int64_t>());
  }

  const json& source = require("source");
  if (!source.is_string()) throw DbError(where + ": source must be a string");
  const auto parsed = parse_source(source.get<std::string>());
  if (!parsed) throw DbError(where + ": source must be paper, derived or user");
  g.source = *parsed;

  if (const auto it = e.find("notes"); it != e.end()) {
    if (!it->is_string()) throw DbError(where + ": notes must be a string");
    g.notes = it->get<std::string>();
  }
  return g;
}

}  // namespace

GeometryDb parse_db(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw DbError(std::string("malformed database: ") + e.what());
  }
  if (!doc.is_object()) throw DbError("database must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "links") throw DbError("unknown top-level key '" + key + "'");
  }
  const auto links = doc.find("links");
  if (links == doc.end() || !links->is_array()) throw DbError("database needs a 'links' list");

  std::vector<HyperbolicGeometry> entries;
  entries.reserve(links->size());
  for (std::size_t i = 0; i < links->size(); ++i) entries.push_back(entry_from_json((*links)[i], i));
  return GeometryDb(std::move(entries));
}

GeometryDb load_db(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DbError("cannot open database '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_db(buf.str());
}

std::string db_to_json(const GeometryDb& db) {
  nlohmann::ordered_json links = nlohmann::ordered_json::array();
  for (const auto& [name, g] : db.entries()) {
    nlohmann::ordered_json e;
    e["name"] = name;
    e["components"] = g.components;
    e["systole"] = g.systole;
    e["meridian_lengths"] = g.meridian_lengths;
    e["linking_numbers"] = g.linking_numbers.value_or(std::vector<std::int64_t>{});
    e["source"] = std::string(to_string(g.source));
    if (!g.notes.empty()) e["notes"] = g.notes;
    links.push_back(std::move(e));
  }
  nlohmann::ordered_json doc;
  doc["links"] = std::move(links);
  return doc.dump(2) + "\n";
}

const GeometryDb& bundled_db() {
  static const GeometryDb db = parse_db(bundled_db_json());
  return db;
}

GuardedInt guarded_floor(double v) {
  if (!std::isfinite(v)) throw std::domain_error("guarded_floor: non-finite input");
  if (v < 0.0) throw std::domain_error("guarded_floor: negative input");
  const double fl = std::floor(v);
  GuardedInt out;
  out.underlying = v;
  out.value = static_cast<std::int64_t>(fl);
  if (v - fl > 1.0 - kBoundaryEpsilon) {
    out.value += 1;
    out.boundary_warning = true;
  }
  return out;
}

namespace {

constexpr double kSixSqrt3 = 6.0 * constants::kSqrt3;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_systole(double systole) {
  if (!(std::isfinite(systole) && systole > 0.0)) {
    throw std::domain_error("systole must be positive and finite");
  }
}

}  // namespace

double q_frak_value(double systole) {
  require_systole(systole);
  return std::sqrt(kSixSqrt3 * (constants::kQFactor * kTwoPi / systole + constants::kFpsOffset));
}

double s_frak_value(double systole) {
  require_systole(systole);
  return std::sqrt(kSixSqrt3 * (kTwoPi / systole + constants::kFpsOffset));
}

double r_frak_value(const std::vector<double>& meridian_lengths) {
  double longest = 0.0;
  for (double l : meridian_lengths) longest = std::max(longest, l);
  return constants::kSqrt3 * longest;
}

GuardedInt q_frak(const HyperbolicGeometry& g) { return guarded_floor(q_frak_value(g.systole)); }
GuardedInt r_frak(const HyperbolicGeometry& g) {
  return guarded_floor(r_frak_value(g.meridian_lengths));
}
GuardedInt s_frak(const HyperbolicGeometry& g) { return guarded_floor(s_frak_value(g.systole)); }

double normalized_length_lower_bound(std::int64_t b) {
  if (b == 0) throw std::domain_error("normalized_length_lower_bound: b must be nonzero");
  return std::abs(static_cast<double>(b)) / std::sqrt(kSixSqrt3);
}

double core_length_upper_bound(double lhat) {
  if (!(lhat >= constants::kFpsMinNormalized)) {
    throw std::domain_error("core_length_upper_bound: normalized length below 7.823");
  }
  if (!std::isfinite(lhat)) return 0.0;
  return kTwoPi / (lhat * lhat - constants::kFpsOffset);
}

ThresholdCheck check_thresholds(const HyperbolicGeometry& g) {
  ThresholdCheck out;
  const GuardedInt s = s_frak(g);
  const GuardedInt q = q_frak(g);
  const GuardedInt r = r_frak(g);

  const std::int64_t b_s = std::max<std::int64_t>(constants::kSFloor, s.value) + 1;
  const double lhat = normalized_length_lower_bound(b_s);
  if (!(lhat >= constants::kFpsMinNormalized && core_length_upper_bound(lhat) < g.systole)) {
    out.s_sufficient = false;
    out.failures.push_back("s: slopes with |q| > max{25, s} do not force a core shorter than the systole");
  }
  // A boundary round-up deliberately gives up minimality.
  if (s.value >= 26 && !s.boundary_warning) {
    if (!(core_length_upper_bound(normalized_length_lower_bound(s.value)) >= g.systole)) {
      out.s_minimal = false;
      out.failures.push_back("s: value is not minimal");
    }
  }

  const double six = constants::kSixLength;
  for (double l : g.meridian_lengths) {
    if (!(constants::kAreaMin * static_cast<double>(r.value + 1) / l > six)) {
      out.r_sufficient = false;
      out.failures.push_back("r: |q| > r does not push every meridian filling past length 6");
      break;
    }
  }
  if (r.value >= 1 && !r.boundary_warning) {
    const double longest = *std::max_element(g.meridian_lengths.begin(), g.meridian_lengths.end());
    if (!(constants::kAreaMin * static_cast<double>(r.value) / longest <= six)) {
      out.r_minimal = false;
      out.failures.push_back("r: value is not minimal");
    }
  }

  if (s.value > q.value) {
    out.s_leq_q = false;
    out.failures.push_back("s exceeds q");
  }
  return out;
}

}  // namespace charslope
