#include "sqfib/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqfib/errors.hpp"
#include "sqfib/ffpoly.hpp"
#include "sqfib/oracle.hpp"
#include "sqfib/power_poly.hpp"
#include "sqfib/real_classes.hpp"
#include "sqfib/square_fibers.hpp"

namespace sqfib::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  unsigned threads = 1;
  std::string format = "json";
  bool timestamp = false;

  std::string q;
  unsigned n = 0;
  std::string poly;
  unsigned m = 2;
  std::string group = "gl";
  std::string class_json;
  bool oracle = false;
  std::string method = "direct";
  std::string kind = "gl";
  std::string report = "classes";
  std::string cache;
  std::uint64_t max_order = oracle::kDefaultOrderBound;
  std::uint64_t limit = kMaxClassCount;
};

struct Output {
  Json payload = Json::object();
  std::vector<std::string> warnings;
  // CSV form: header plus rows; empty header means the verb is not tabular.
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string json_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

FieldPtr field_arg(const std::string& q) {
  require(!q.empty(), "--q is required");
  return Field::parse(q);
}

Json class_record(const GLClassData& c) {
  Json r;
  r["class"] = c.to_json();
  r["label"] = c.to_string();
  return r;
}

std::string star_name(StarClass c, const char* mark) {
  switch (c) {
    case StarClass::Power: return std::string(mark) + "-power";
    case StarClass::SkewPower: return std::string("skew-") + mark + "-power";
    case StarClass::Neither: return "neither";
  }
  return "?";
}

Json profile_json(const ButlerProfile& b) {
  Json j;
  j["m"] = b.m;
  j["m1"] = b.m1;
  j["m2"] = b.m2;
  j["t"] = std::to_string(b.t);
  Json entries = Json::array();
  for (const auto& e : b.entries) {
    entries.push_back({{"e", e.e}, {"degree", e.degree}, {"count", std::to_string(e.count)},
                       {"root_order", std::to_string(e.e * b.m2 * b.t)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json degree_map_json(const std::map<std::uint64_t, std::uint64_t>& m) {
  Json a = Json::array();
  for (auto [d, c] : m) a.push_back({{"degree", d}, {"count", std::to_string(c)}});
  return a;
}

void cmd_classify_poly(const Options& o, Output& out) {
  const FieldPtr F = field_arg(o.q);
  const Poly f = Poly::parse(F, o.poly);
  require(f.is_monic() && f.degree() >= 1, "--poly must be monic of positive degree");
  require(f.constant_term() != 0, "--poly must not be divisible by x");
  require(is_irreducible(f), "--poly must be irreducible");
  require(o.m >= 1, "--m must be positive");
  Json& p = out.payload;
  p["q"] = std::to_string(F->order());
  p["poly"] = f.to_string();
  p["pretty"] = f.pretty();
  p["degree"] = f.degree();
  p["root_order"] = root_order(f).get_str();
  const auto cls = classify2(f);
  p["f_of_x2"] = substitute_power(f, 2).to_string();
  if (const auto* tp = std::get_if<TwoPower>(&cls)) {
    p["classification"] = "2-power";
    p["factors"] = {tp->f1.to_string(), tp->f2.to_string()};
  } else {
    p["classification"] = "skew-2-power";
    p["factors"] = {std::get<SkewTwoPower>(cls).F.to_string()};
  }
  const bool sr = is_self_reciprocal(f);
  p["self_reciprocal"] = sr;
  p["star_classification"] = sr ? Json(star_name(classify2_star(f), "2*")) : Json(nullptr);
  if (F->has_square_order()) {
    const bool sc = is_self_conjugate(f);
    p["self_conjugate"] = sc;
    p["tilde_classification"] = sc ? Json(star_name(classify2_tilde(f), "2~")) : Json(nullptr);
  }
  p["m"] = o.m;
  if (std::gcd<std::uint64_t>(o.m, F->characteristic()) == 1) {
    const auto b = butler_profile(f, o.m);
    const auto direct = factored_profile(f, o.m);
    p["butler_profile"] = profile_json(b);
    p["factored_profile"] = degree_map_json(direct);
    p["profile_agrees"] = b.degree_counts() == direct;
    if (b.degree_counts() != direct) out.warnings.push_back("Butler profile differs from the direct factorization");
  } else {
    p["butler_profile"] = nullptr;
    p["factored_profile"] = degree_map_json(factored_profile(f, o.m));
    p["profile_agrees"] = nullptr;
    out.warnings.push_back("m is divisible by the characteristic; no Butler profile");
  }
}

void cmd_classes(const Options& o, Output& out) {
  const FieldPtr F = field_arg(o.q);
  require(o.n >= 1, "--n must be positive");
  if (class_count(o.n, F->order()) > nt::to_count(o.limit)) throw BoundExceeded("more than --limit classes");
  const auto stats = class_stats(o.n, F->order(), o.threads);
  Json& p = out.payload;
  p["n"] = o.n;
  p["q"] = std::to_string(F->order());
  p["group_order"] = gl_order(o.n, F->order()).get_str();
  p["class_count"] = std::to_string(stats.size());
  Json list = Json::array();
  out.header = {"label", "class_size", "centralizer_order", "element_order", "real", "square_roots"};
  for (const auto& s : stats) {
    Json r = class_record(s.data);
    const Count cent = gl_order(o.n, F->order()) / s.size;
    r["class_size"] = s.size.get_str();
    r["centralizer_order"] = cent.get_str();
    r["element_order"] = s.order.get_str();
    r["real"] = s.real;
    r["square_roots"] = s.square_roots.get_str();
    out.rows.push_back({s.data.to_string(), s.size.get_str(), cent.get_str(), s.order.get_str(), s.real ? "true" : "false",
                        s.square_roots.get_str()});
    list.push_back(std::move(r));
  }
  p["classes"] = std::move(list);
}

GLClassData class_arg(const Options& o, const FieldPtr& F) {
  require(!o.class_json.empty(), "--class is required");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(o.class_json);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("--class is not valid JSON: ") + e.what());
  }
  GLClassData c = GLClassData::from_json(j, F);
  if (o.n != 0) require(c.n() == o.n, "--n does not match the class data");
  return c;
}

void cmd_sqrt_count(const Options& o, Output& out) {
  const std::string& g = o.group;
  require(g == "gl" || g == "sp" || g == "u", "--group must be gl, sp or u");
  const FieldPtr F = g == "u" ? Field::of_order(nt::checked_pow(field_arg(o.q)->order(), 2)) : field_arg(o.q);
  const GLClassData c = class_arg(o, F);
  Json& p = out.payload;
  p["group"] = g;
  p["n"] = c.n();
  p["q"] = g == "u" ? std::to_string(F->root_order()) : std::to_string(F->order());
  p["class"] = c.to_json();
  p["label"] = c.to_string();
  if (g == "gl") {
    const Count count = count_square_roots(c);
    p["count"] = count.get_str();
    p["has_square_root"] = has_square_root_gl(c);
    p["class_size"] = class_size(c).get_str();
    p["centralizer_order"] = centralizer_order(c).get_str();
    Json roots = Json::array();
    const Count base = centralizer_order(c);
    for (const auto& r : square_root_classes(c).roots) {
      Json rr = class_record(r);
      rr["contribution"] = Count(base / centralizer_order(r)).get_str();
      roots.push_back(std::move(rr));
    }
    p["root_classes"] = std::move(roots);
    Json closed;
    if (!has_square_root_gl(c)) {
      closed["status"] = "not-applicable";
      closed["value"] = nullptr;
    } else {
      const auto pf = paper_count_formula(c);
      closed["status"] = pf.evaluable() ? "value" : pf.status_name();
      closed["value"] = pf.evaluable() ? Json(pf.value.get_str()) : Json(nullptr);
      closed["reasons"] = pf.reasons;
      if (pf.evaluable() && pf.value != mpq_class(count)) {
        out.warnings.push_back("closed form gives " + pf.value.get_str() + ", count is " + count.get_str());
      }
    }
    p["closed_form"] = std::move(closed);
  } else if (g == "sp") {
    p["has_square_root"] = has_square_root_symplectic(c);
    p["criterion"] = "symplectic, as printed";
  } else {
    p["has_square_root"] = has_square_root_unitary(c);
    p["criterion"] = "unitary, as printed";
  }
}

void report_rows(const AuditReport& r, Output& out) {
  out.payload = r.to_json();
  out.warnings = r.findings;
  if (r.records.empty()) return;
  for (const auto& [key, value] : r.records.front().items()) {
    if (key == "class") continue;
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) {
        if (!v.is_array()) out.header.push_back(key + "." + sub);
      }
    } else {
      out.header.push_back(key);
    }
  }
  for (const auto& rec : r.records) {
    std::vector<std::string> row;
    for (const auto& [key, value] : rec.items()) {
      if (key == "class") continue;
      if (value.is_object()) {
        for (const auto& [sub, v] : value.items()) {
          if (!v.is_array()) row.push_back(v.is_null() ? "" : json_text(v));
        }
      } else {
        row.push_back(value.is_null() ? "" : json_text(value));
      }
    }
    out.rows.push_back(std::move(row));
  }
}

void cmd_audit_squares(const Options& o, Output& out) {
  require(o.n >= 1, "--n must be positive");
  const FieldPtr F = field_arg(o.q);
  if (o.group == "gl") {
    report_rows(audit_square_counts(o.n, F->order(), o.oracle, o.threads), out);
  } else if (o.group == "sp") {
    report_rows(audit_symplectic_predicate(o.n, F->order(), o.threads), out);
  } else if (o.group == "u") {
    report_rows(audit_unitary_predicate(o.n, F->order(), o.threads), out);
  } else {
    throw InvalidInput("--group must be gl, sp or u");
  }
}

void cmd_real_classes(const Options& o, Output& out) {
  require(o.n >= 1, "--n must be positive");
  const FieldPtr F = field_arg(o.q);
  const std::uint64_t q = F->order();
  Json& p = out.payload;
  p["n"] = o.n;
  p["q"] = std::to_string(q);
  p["method"] = o.method;
  if (o.method == "direct") {
    p["real_classes"] = real_class_count_direct(o.n, q, o.threads).get_str();
  } else if (o.method == "ms") {
    const auto stats = class_stats(o.n, q, o.threads);
    const Count s2 = s2_cardinality(stats);
    const Count order = gl_order(o.n, q);
    ensure(s2 % order == 0, "|s(2)| is not divisible by |G|");
    p["real_classes"] = Count(s2 / order).get_str();
    p["s2"] = s2.get_str();
    p["group_order"] = order.get_str();
  } else if (o.method == "theorem") {
    const auto stats = class_stats(o.n, q, o.threads);
    Count direct = 0;
    for (const auto& s : stats) direct += s.real ? 1 : 0;
    p["real_classes"] = direct.get_str();
    Json ev = Json::object();
    for (auto conv : {C2Convention::ExactOrder, C2Convention::OrderDividing}) {
      const mpq_class v = real_class_count_theorem(stats, q, o.n, conv);
      ev[to_string(conv)] = {{"value", v.get_str()}, {"agrees", v == mpq_class(direct)}};
      if (v != mpq_class(direct)) {
        out.warnings.push_back("four-set evaluator (" + to_string(conv) + ") gives " + v.get_str() + ", direct count is " +
                               direct.get_str());
      }
    }
    p["theorem"] = std::move(ev);
  } else if (o.method == "gf-audit") {
    const AuditReport r = audit_real_counts(o.n, q, o.oracle, o.threads);
    p["real_classes"] = r.summary["real_classes_direct"];
    p["report"] = r.to_json();
    out.warnings = r.findings;
  } else {
    throw InvalidInput("--method must be direct, ms, theorem or gf-audit");
  }
}

void cmd_oracle(const Options& o, Output& out) {
  require(o.n >= 1, "--n must be positive");
  const auto kind = oracle::parse_kind(o.kind);
  const FieldPtr F = field_arg(o.q);
  if (o.max_order > oracle::kHardOrderBound) throw BoundExceeded("--max-order exceeds the hard bound 10^7");
  const auto spec = oracle::GroupSpec::make(kind, o.n, F->order());
  std::optional<oracle::ElementTable> table;
  bool from_cache = false;
  if (!o.cache.empty() && std::filesystem::exists(o.cache)) {
    table = oracle::ElementTable::load(o.cache, spec);
    from_cache = true;
  } else {
    table = oracle::ElementTable::enumerate(spec, {.max_order = o.max_order, .threads = o.threads});
    if (!o.cache.empty()) table->save(o.cache);
  }
  (void)from_cache;  // the payload does not depend on where the table came from
  Json& p = out.payload;
  p["kind"] = oracle::kind_name(kind);
  p["n"] = o.n;
  p["q"] = std::to_string(F->order());
  p["group"] = spec.describe();
  p["order"] = std::to_string(table->size());
  p["report"] = o.report;
  if (o.report == "fibers") {
    const auto fibers = oracle::square_fiber_counts(*table, o.threads);
    Json list = Json::array();
    out.header = {"element", "fiber"};
    for (std::size_t i = 0; i < table->size(); ++i) {
      const std::string m = table->element(i).to_string();
      list.push_back({{"element", m}, {"fiber", std::to_string(fibers[i])}});
      out.rows.push_back({m, std::to_string(fibers[i])});
    }
    p["fibers"] = std::move(list);
  } else if (o.report == "classes") {
    const auto fibers = oracle::square_fiber_counts(*table, o.threads);
    const auto classes = oracle::conjugacy_classes(*table);
    const auto& inv = table->inverses();
    p["class_count"] = std::to_string(classes.count());
    Json list = Json::array();
    out.header = {"representative", "gl_data", "size", "fiber", "real"};
    for (std::size_t c = 0; c < classes.count(); ++c) {
      const auto rep = classes.representative[c];
      const Matrix g = table->element(rep);
      const std::string label = oracle::class_data_of_element(g).to_string();
      const bool real = classes.class_of[inv[rep]] == c;
      list.push_back({{"representative", g.to_string()},
                      {"gl_data", label},
                      {"size", std::to_string(classes.size[c])},
                      {"fiber", std::to_string(fibers[rep])},
                      {"real", real}});
      out.rows.push_back({g.to_string(), label, std::to_string(classes.size[c]), std::to_string(fibers[rep]),
                          real ? "true" : "false"});
    }
    p["classes"] = std::move(list);
  } else if (o.report == "real") {
    const auto classes = oracle::conjugacy_classes(*table);
    p["class_count"] = std::to_string(classes.count());
    p["real_classes"] = std::to_string(oracle::real_classes_oracle(*table, classes));
  } else if (o.report == "s2") {
    const auto fibers = oracle::square_fiber_counts(*table, o.threads);
    const auto classes = oracle::conjugacy_classes(*table);
    const Count s2 = oracle::s2_oracle(*table, fibers);
    const std::uint64_t real = oracle::real_classes_oracle(*table, classes);
    p["s2"] = s2.get_str();
    p["real_classes"] = std::to_string(real);
    const bool ms = s2 == nt::to_count(table->size()) * nt::to_count(real);
    p["murray_sambale_holds"] = ms;
    if (!ms) out.warnings.push_back("|s(2)| differs from |G| times the number of real classes");
  } else {
    throw InvalidInput("--report must be fibers, classes, real or s2");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Square-map fibers and real classes for finite classical groups", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--threads", o.threads, "worker threads (output does not depend on it)")->check(CLI::Range(1, 256));
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timestamp", o.timestamp, "fill the envelope timestamp");

  auto* classify = app.add_subcommand("classify-poly", "classify f(x^2) and the Butler profile of f(x^m)");
  classify->add_option("--q", o.q, "field order, q or p^k")->required();
  classify->add_option("--poly", o.poly, "coefficients, constant term first")->required();
  classify->add_option("--m", o.m, "power for the Butler profile");

  auto* classes = app.add_subcommand("classes", "conjugacy classes of GL_n(q)");
  classes->add_option("--n", o.n)->required();
  classes->add_option("--q", o.q)->required();
  classes->add_option("--limit", o.limit, "refuse to list more classes than this");

  auto* sqrt = app.add_subcommand("sqrt-count", "square roots of a class");
  sqrt->add_option("--group", o.group, "gl, sp or u")->check(CLI::IsMember({"gl", "sp", "u"}));
  sqrt->add_option("--n", o.n);
  sqrt->add_option("--q", o.q)->required();
  sqrt->add_option("--class", o.class_json, "class data as JSON")->required();

  auto* audit = app.add_subcommand("audit-squares", "compare square-root counts and criteria");
  audit->add_option("--group", o.group, "gl, sp or u")->check(CLI::IsMember({"gl", "sp", "u"}));
  audit->add_option("--n", o.n)->required();
  audit->add_option("--q", o.q)->required();
  audit->add_flag("--oracle", o.oracle, "include exhaustive fibers (gl)");

  auto* real = app.add_subcommand("real-classes", "number of real classes of GL_n(q)");
  real->add_option("--n", o.n)->required();
  real->add_option("--q", o.q)->required();
  real->add_option("--method", o.method)->check(CLI::IsMember({"direct", "ms", "theorem", "gf-audit"}));
  real->add_flag("--oracle", o.oracle, "include the exhaustive count (gf-audit)");

  auto* orc = app.add_subcommand("oracle", "exhaustive enumeration of a small matrix group");
  orc->add_option("--kind", o.kind)->check(CLI::IsMember({"gl", "u", "sp", "o+", "o-", "o0"}));
  orc->add_option("--n", o.n)->required();
  orc->add_option("--q", o.q)->required();
  orc->add_option("--report", o.report)->check(CLI::IsMember({"fibers", "classes", "real", "s2"}));
  orc->add_option("--cache", o.cache, "element table cache file");
  orc->add_option("--max-order", o.max_order, "group order bound");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();
  Output result;
  try {
    if (verb == "classify-poly") {
      cmd_classify_poly(o, result);
    } else if (verb == "classes") {
      cmd_classes(o, result);
    } else if (verb == "sqrt-count") {
      cmd_sqrt_count(o, result);
    } else if (verb == "audit-squares") {
      cmd_audit_squares(o, result);
    } else if (verb == "real-classes") {
      cmd_real_classes(o, result);
    } else {
      cmd_oracle(o, result);
    }
    if (o.format == "csv" && result.header.empty()) throw InvalidInput("--format csv is not available for " + verb);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  if (o.format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << "\n";
    };
    line(result.header);
    for (const auto& r : result.rows) line(r);
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    return kOk;
  }

  // The echo covers every option that can change the payload, so --threads is left out.
  Json command;
  command["verb"] = verb;
  Json opts = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto res = opt->results();
    opts[opt->get_name()] = opt->get_type_size() == 0 ? Json(true) : Json(res.back());
  }
  command["options"] = std::move(opts);

  Json envelope;
  envelope["schema_version"] = kSchemaVersion;
  envelope["tool"] = kToolName;
  envelope["version"] = kToolVersion;
  envelope["command"] = std::move(command);
  envelope["timestamp"] = o.timestamp ? Json(iso_timestamp()) : Json(nullptr);
  envelope["payload"] = std::move(result.payload);
  envelope["warnings"] = result.warnings;
  out << envelope.dump(2) << "\n";
  return kOk;
}

}  // namespace sqfib::cli
