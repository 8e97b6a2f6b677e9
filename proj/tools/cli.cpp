#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "charslope/bounds.hpp"
#include "charslope/expr.hpp"
#include "charslope/geometry.hpp"
#include "charslope/report.hpp"

namespace charslope::cli {

namespace {

struct Config {
  std::string db_path;
  bool json = false;
  bool strict = false;
};

struct Failure {
  int code;
  std::string message;
};

GeometryDb open_db(const Config& cfg) {
  if (cfg.db_path.empty()) return bundled_db();
  try {
    return load_db(cfg.db_path);
  } catch (const DbError& e) {
    throw Failure{kGeometry, e.what()};
  }
}

SatelliteTree parse_expr(const std::string& text) {
  try {
    return parse_knot(text);
  } catch (const ParseError& e) {
    throw Failure{kUsage, std::string("syntax error at ") + e.what()};
  }
}

void require_valid_tree(const SatelliteTree& tree, const GeometryDb& db) {
  const auto report = validate(tree, db);
  if (report.empty()) return;
  std::string msg = "invalid knot:";
  for (const auto& v : report) msg += "\n  " + path_string(v.piece) + ": " + v.message;
  throw Failure{kInvalid, msg};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit_report(const BoundReport& report, const Config& cfg, std::ostream& out, std::ostream& err) {
  out << (cfg.json ? report_to_json(report) + "\n" : report_to_text(report));
  if (cfg.strict) {
    for (const auto& w : report.warnings) {
      if (w.rfind("boundary:", 0) == 0) {
        err << "strict mode: " << w << "\n";
        return kBoundary;
      }
    }
  }
  return kOk;
}

int cmd_compute(const std::string& expr, const Config& cfg, std::ostream& out, std::ostream& err) {
  const GeometryDb db = open_db(cfg);
  const SatelliteTree tree = parse_expr(expr);
  require_valid_tree(tree, db);
  return emit_report(bound(tree, db), cfg, out, err);
}

int cmd_refined(const std::string& expr, const std::string& annotations_path, const Config& cfg,
                std::ostream& out, std::ostream& err) {
  const GeometryDb db = open_db(cfg);
  const SatelliteTree tree = parse_expr(expr);
  require_valid_tree(tree, db);
  AnnotationSet annotations;
  try {
    annotations = parse_annotations(read_file(annotations_path));
  } catch (const AnnotationError& e) {
    throw Failure{kUsage, e.what()};
  }
  BoundReport report = refined_bound(tree, db, annotations);
  auto witnesses = noncharacterising_witnesses(tree, db, annotations);
  if (!witnesses.empty()) report.witnesses = std::move(witnesses);
  return emit_report(report, cfg, out, err);
}

int cmd_surgery(const std::string& expr, const std::string& slope_text, const Config& cfg, std::ostream& out) {
  const GeometryDb db = open_db(cfg);
  const SatelliteTree tree = parse_expr(expr);
  require_valid_tree(tree, db);
  Slope slope;
  try {
    slope = parse_slope(slope_text);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, e.what()};
  }
  if (slope.is_meridian()) throw Failure{kUsage, "1/0 is the trivial filling"};
  const SurgeryJsjResult result = surgery_jsj(tree, slope, db);
  out << (cfg.json ? surgery_to_json(result) + "\n" : surgery_to_text(result));
  return kOk;
}

int cmd_db(const std::string& action, const std::string& name, const Config& cfg, std::ostream& out,
           std::ostream& err) {
  const GeometryDb db = open_db(cfg);
  if (action == "list") {
    if (cfg.json) {
      out << nlohmann::json(db.names()).dump() << "\n";
    } else {
      for (const auto& n : db.names()) out << n << "\n";
    }
    return kOk;
  }
  if (action == "show") {
    if (name.empty()) throw Failure{kUsage, "db show needs a link name"};
    const HyperbolicGeometry* g = db.find(name);
    if (!g) throw Failure{kGeometry, "no geometry for link '" + name + "'"};
    const auto q = q_frak(*g);
    const auto r = r_frak(*g);
    const auto s = s_frak(*g);
    if (cfg.json) {
      nlohmann::ordered_json doc;
      doc["name"] = name;
      doc["components"] = g->components;
      doc["systole"] = g->systole;
      doc["meridian_lengths"] = g->meridian_lengths;
      doc["linking_numbers"] = g->linking_numbers.value_or(std::vector<std::int64_t>{});
      doc["source"] = std::string(to_string(g->source));
      doc["q"] = q.value;
      doc["r"] = r.value;
      doc["s"] = s.value;
      out << doc.dump() << "\n";
    } else {
      out << "name: " << name << "\n";
      out << "components: " << g->components << "\n";
      out << "systole: " << format_decimal(g->systole) << "\n";
      out << "meridian_lengths:";
      for (double l : g->meridian_lengths) out << " " << format_decimal(l);
      out << "\nlinking_numbers:";
      for (auto lk : g->linking_numbers.value_or(std::vector<std::int64_t>{})) out << " " << lk;
      out << "\nsource: " << to_string(g->source) << "\n";
      out << "q = " << q.value << "\nr = " << r.value << "\ns = " << s.value << "\n";
      if (!g->notes.empty()) out << "notes: " << g->notes << "\n";
    }
    return kOk;
  }
  if (action == "verify") {
    bool all_ok = true;
    for (const auto& [entry_name, g] : db.entries()) {
      const ThresholdCheck check = check_thresholds(g);
      if (check.ok()) {
        out << entry_name << ": ok\n";
      } else {
        all_ok = false;
        for (const auto& f : check.failures) out << entry_name << ": FAIL " << f << "\n";
      }
    }
    if (!all_ok) err << "threshold checks failed\n";
    return all_ok ? kOk : kInvalid;
  }
  throw Failure{kUsage, "unknown db action '" + action + "' (list, show, verify)"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characterising-slope denominator bounds for knots given by their JSJ decomposition",
               "charslope"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--db", cfg.db_path, "geometry database (JSON); defaults to the bundled dataset");
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_flag("--strict", cfg.strict, "treat boundary warnings as errors");

  std::string expr;
  std::string annotations_path;
  std::string slope_text;
  std::string db_action;
  std::string db_name;

  auto* compute = app.add_subcommand("compute", "denominator bound C(K)")->fallthrough();
  compute->add_option("expr", expr, "knot expression")->required();

  auto* refined = app.add_subcommand("refined", "refined bound max{Q, T} for winding-number-zero satellites")
                      ->fallthrough();
  refined->add_option("expr", expr, "knot expression")->required();
  refined->add_option("--annotations", annotations_path, "splice annotation file")->required();

  auto* surgery = app.add_subcommand("surgery", "JSJ form of the surgered manifold")->fallthrough();
  surgery->add_option("expr", expr, "knot expression")->required();
  surgery->add_option("slope", slope_text, "slope p/q")->required();

  auto* dbcmd = app.add_subcommand("db", "inspect the geometry database")->fallthrough();
  dbcmd->add_option("action", db_action, "list, show or verify")->required();
  dbcmd->add_option("name", db_name, "link name for show");

  // CLI11 wants argv order reversed for its vector overload.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (compute->parsed()) return cmd_compute(expr, cfg, out, err);
    if (refined->parsed()) return cmd_refined(expr, annotations_path, cfg, out, err);
    if (surgery->parsed()) return cmd_surgery(expr, slope_text, cfg, out);
    if (dbcmd->parsed()) return cmd_db(db_action, db_name, cfg, out, err);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const InvalidTree& e) {
    err << e.what() << "\n";
    return kInvalid;
  } catch (const PreconditionError& e) {
    err << e.what() << "\n";
    return kInvalid;
  } catch (const AnnotationError& e) {
    err << e.what() << "\n";
    return kInvalid;
  } catch (const MissingGeometry& e) {
    err << e.what() << "\n";
    return kGeometry;
  } catch (const DbError& e) {
    err << e.what() << "\n";
    return kGeometry;
  }
  return kUsage;
}

}  // namespace charslope::cli
