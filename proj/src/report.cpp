#include "charslope/report.hpp"

#include <sstream>

#include <json.hpp>

namespace charslope {

using ojson = nlohmann::ordered_json;

namespace {

ojson path_json(const TorusId& path) {
  ojson arr = ojson::array();
  for (auto i : path) arr.push_back(i);
  return arr;
}

std::optional<std::int64_t> opt_int(const ojson& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw std::invalid_argument(std::string("'") + key + "' must be an integer");
  return it->get<std::int64_t>();
}

}  // namespace

std::string report_to_json(const BoundReport& report) {
  ojson doc;
  doc["case"] = std::string(to_string(report.case_tag));
  doc["C"] = report.C;
  if (report.Q) doc["Q"] = *report.Q;
  if (report.R) doc["R"] = *report.R;
  if (report.S) doc["S"] = *report.S;
  if (report.T) doc["T"] = *report.T;
  ojson pieces = ojson::array();
  for (const auto& p : report.per_piece) {
    ojson e;
    e["path"] = path_json(p.path);
    if (p.q) e["q"] = *p.q;
    if (p.r) e["r"] = *p.r;
    if (p.s) e["s"] = *p.s;
    pieces.push_back(std::move(e));
  }
  doc["per_piece"] = std::move(pieces);
  doc["warnings"] = report.warnings;
  if (report.witnesses) {
    ojson w = ojson::array();
    for (const auto& s : *report.witnesses) w.push_back(s.str());
    doc["witnesses"] = std::move(w);
  }
  return doc.dump();
}

namespace {

BoundReport report_from_doc(const ojson& doc) {
  if (!doc.is_object()) throw std::invalid_argument("report must be an object");
  BoundReport out;
  const auto tag = doc.contains("case") && doc.at("case").is_string()
                       ? parse_case_tag(doc.at("case").get<std::string>())
                       : std::nullopt;
  if (!tag) throw std::invalid_argument("report has no valid 'case'");
  out.case_tag = *tag;
  const auto c = opt_int(doc, "C");
  if (!c) throw std::invalid_argument("report has no 'C'");
  out.C = *c;
  out.Q = opt_int(doc, "Q");
  out.R = opt_int(doc, "R");
  out.S = opt_int(doc, "S");
  out.T = opt_int(doc, "T");
  for (const auto& e : doc.value("per_piece", ojson::array())) {
    PieceContribution p;
    for (const auto& i : e.at("path")) p.path.push_back(i.get<std::size_t>());
    p.q = opt_int(e, "q");
    p.r = opt_int(e, "r");
    p.s = opt_int(e, "s");
    out.per_piece.push_back(std::move(p));
  }
  for (const auto& w : doc.value("warnings", ojson::array())) out.warnings.push_back(w.get<std::string>());
  if (const auto it = doc.find("witnesses"); it != doc.end()) {
    out.witnesses.emplace();
    for (const auto& s : *it) out.witnesses->push_back(parse_slope(s.get<std::string>()));
  }
  return out;
}

}  // namespace

BoundReport report_from_json(std::string_view text) {
  try {
    return report_from_doc(ojson::parse(text.begin(), text.end()));
  } catch (const ojson::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

std::string report_to_text(const BoundReport& report) {
  std::ostringstream out;
  out << "case: " << to_string(report.case_tag) << "\n";
  out << "C = " << report.C << "\n";
  if (report.Q) out << "Q = " << *report.Q << "\n";
  if (report.R) out << "R = " << *report.R << "\n";
  if (report.S) out << "S = " << *report.S << "\n";
  if (report.T) out << "T = " << *report.T << "\n";
  for (const auto& p : report.per_piece) {
    out << "piece " << path_string(p.path) << ":";
    if (p.q) out << " q=" << *p.q;
    if (p.r) out << " r=" << *p.r;
    if (p.s) out << " s=" << *p.s;
    out << "\n";
  }
  if (report.witnesses) {
    out << "witnesses:";
    for (const auto& s : *report.witnesses) out << " " << s.str();
    out << "\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string surgery_to_json(const SurgeryJsjResult& result) {
  ojson doc;
  doc["case"] = result.case_tag == SurgeryCase::I ? "I" : "II";
  doc["surgered_piece"] = path_json(result.surgered_piece);
  doc["filled_slope"] = result.filled_slope.str();
  doc["cable_multiplier"] = result.cable_multiplier;
  return doc.dump();
}

std::string surgery_to_text(const SurgeryJsjResult& result) {
  std::ostringstream out;
  out << "case: " << (result.case_tag == SurgeryCase::I ? "I" : "II") << "\n";
  out << "surgered piece: " << path_string(result.surgered_piece) << "\n";
  out << "filled slope: " << result.filled_slope.str() << "\n";
  out << "cable multiplier: " << result.cable_multiplier << "\n";
  return out.str();
}

}  // namespace charslope
