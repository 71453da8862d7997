#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "gasket/config.hpp"
#include "gasket/dimension.hpp"
#include "gasket/error.hpp"
#include "gasket/geometry.hpp"
#include "gasket/numeric.hpp"
#include "gasket/variation.hpp"

namespace gasket::cli {
namespace {

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Reports carry 12 significant digits; the JSON writer then prints the
// shortest text for the rounded double.
Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(fmt12(x).c_str(), nullptr);
}

Json num(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }

Json nums(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(num(x));
  return out;
}

[[noreturn]] void spec_error(ErrorCode code, const std::vector<std::string>& fields,
                             const std::string& what) {
  std::string list;
  for (const auto& f : fields) list += (list.empty() ? "" : ", ") + f;
  throw Error(code, what + ": " + list);
}

std::array<double, 3> triple(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 3 || !std::all_of(v.begin(), v.end(), [](const auto& x) {
        return x.is_number();
      })) {
    spec_error(ErrorCode::malformed_spec, {key}, "expected three numbers");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

double number(const nlohmann::json& doc, const char* key) {
  if (!doc.at(key).is_number()) spec_error(ErrorCode::malformed_spec, {key}, "expected a number");
  return doc.at(key).get<double>();
}

const std::map<std::string, std::vector<std::string>>& preset_fields() {
  static const std::map<std::string, std::vector<std::string>> fields{
      {"constant", {"value"}},
      {"coordinate", {}},
      {"osc", {}},
      {"cell_indicator", {"word"}},
      {"harmonic", {"boundary"}},
      {"biharmonic", {"boundary", "lap"}},
      {"sum", {"terms"}},
      {"product", {"factors"}},
      {"scale", {"factor", "of"}},
  };
  return fields;
}

DeclaredProperties parse_properties(const nlohmann::json& doc) {
  DeclaredProperties p;
  if (!doc.is_object()) spec_error(ErrorCode::malformed_spec, {"properties"}, "expected an object");
  std::vector<std::string> bad;
  for (const auto& [key, v] : doc.items()) {
    if (key == "continuous" && v.is_boolean()) {
      p.continuous = v.get<bool>();
    } else if ((key == "lipschitz" || key == "lipschitz_constant") && v.is_number()) {
      p.lipschitz = v.get<double>();
    } else if (key == "modulus" && v.is_object() && v.contains("constant") &&
               v.contains("exponent") && v["constant"].is_number() && v["exponent"].is_number()) {
      p.modulus = Modulus{v["constant"].get<double>(), v["exponent"].get<double>()};
    } else {
      bad.push_back("properties." + key);
    }
  }
  if (!bad.empty()) spec_error(ErrorCode::malformed_spec, bad, "invalid declared properties");
  return p;
}

void check_keys(const nlohmann::json& doc, const std::vector<std::string>& allowed) {
  std::vector<std::string> bad;
  for (const auto& [key, v] : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad.push_back(key);
  }
  if (!bad.empty()) spec_error(ErrorCode::malformed_spec, bad, "unexpected fields");
}

FunctionSpec parse_samples(const nlohmann::json& doc) {
  FunctionSpec s;
  s.kind = FunctionSpec::Kind::samples;
  if (!doc.contains("depth") || !doc["depth"].is_number_integer()) {
    spec_error(ErrorCode::malformed_spec, {"depth"}, "sample tables need an integer depth");
  }
  s.depth = doc["depth"].get<int>();
  if (s.depth < 0) spec_error(ErrorCode::malformed_spec, {"depth"}, "depth must be nonnegative");
  check_depth(s.depth, "samples");
  const auto& table = doc["samples"];
  if (!table.is_object()) spec_error(ErrorCode::malformed_spec, {"samples"}, "expected an object");

  std::vector<std::string> malformed, too_deep, not_numbers, duplicates;
  std::vector<VertexKey> seen;
  for (const auto& [text, v] : table.items()) {
    Address a = Address::constant(1);
    try {
      a = Address::parse(text);
    } catch (const Error&) {
      malformed.push_back(text);
      continue;
    }
    if (a.prefix().size() > static_cast<std::size_t>(s.depth)) {
      too_deep.push_back(text);
      continue;
    }
    if (!v.is_number()) {
      not_numbers.push_back(text);
      continue;
    }
    const VertexKey key = address_key(a);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      duplicates.push_back(text);
      continue;
    }
    seen.push_back(key);
    s.samples.emplace_back(a, v.get<double>());
  }
  if (!malformed.empty()) spec_error(ErrorCode::malformed_address, malformed, "malformed addresses");
  if (!not_numbers.empty()) spec_error(ErrorCode::malformed_spec, not_numbers, "non-numeric samples");
  if (!too_deep.empty()) {
    spec_error(ErrorCode::non_uniform_depth, too_deep,
               "addresses deeper than depth " + std::to_string(s.depth));
  }
  if (!duplicates.empty()) {
    spec_error(ErrorCode::malformed_spec, duplicates, "several addresses name the same vertex");
  }
  const auto expected = vertex_count(s.depth);
  if (s.samples.size() != expected) {
    std::vector<std::string> missing;
    for (const VertexKey& key : vertex_set(s.depth)) {
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        missing.push_back(locate(key)->to_string());
      }
    }
    spec_error(ErrorCode::non_uniform_depth, missing,
               "sample table does not cover V_" + std::to_string(s.depth) + ", missing");
  }
  return s;
}

FunctionSpec parse_preset(const nlohmann::json& doc) {
  FunctionSpec s;
  if (!doc["preset"].is_string()) spec_error(ErrorCode::malformed_spec, {"preset"}, "expected a name");
  s.preset = doc["preset"].get<std::string>();
  const auto found = preset_fields().find(s.preset);
  if (found == preset_fields().end()) {
    spec_error(ErrorCode::unknown_preset, {"preset"}, "unknown preset '" + s.preset + "'");
  }
  std::vector<std::string> allowed = found->second;
  allowed.insert(allowed.end(), {"preset", "properties", "command", "source"});
  check_keys(doc, allowed);
  std::vector<std::string> missing;
  for (const auto& field : found->second) {
    if (!doc.contains(field)) missing.push_back(field);
  }
  if (!missing.empty()) spec_error(ErrorCode::malformed_spec, missing, "missing fields");

  if (s.preset == "constant") s.value = number(doc, "value");
  if (s.preset == "harmonic" || s.preset == "biharmonic") s.boundary = triple(doc, "boundary");
  if (s.preset == "biharmonic") s.lap = triple(doc, "lap");
  if (s.preset == "cell_indicator") {
    if (!doc["word"].is_string()) spec_error(ErrorCode::malformed_spec, {"word"}, "expected a string");
    try {
      s.word = Word::parse(doc["word"].get<std::string>());
    } catch (const Error& e) {
      spec_error(ErrorCode::malformed_word, {"word"}, e.what());
    }
  }
  auto operand_list = [&](const char* key) {
    const auto& list = doc[key];
    if (!list.is_array() || list.empty()) {
      spec_error(ErrorCode::malformed_spec, {key}, "expected a nonempty list of functions");
    }
    for (const auto& item : list) s.operands.push_back(parse_spec(item));
  };
  if (s.preset == "sum") operand_list("terms");
  if (s.preset == "product") operand_list("factors");
  if (s.preset == "scale") {
    s.factor = number(doc, "factor");
    s.operands.push_back(parse_spec(doc["of"]));
  }
  return s;
}

GasketFunction preset_function(const Flags& flags) {
  nlohmann::json doc;
  doc["preset"] = *flags.preset;
  const std::string& p = *flags.preset;
  if (p == "constant") doc["value"] = flags.value.value_or(0.0);
  if (p == "cell_indicator") doc["word"] = flags.word.value_or("");
  if (p == "harmonic" || p == "biharmonic") {
    if (!flags.boundary) throw Error(ErrorCode::invalid_argument, p + " preset needs --boundary a,b,c");
    doc["boundary"] = *flags.boundary;
  }
  if (p == "biharmonic") doc["lap"] = flags.lap.value_or(std::array<double, 3>{});
  return build_function(parse_spec(doc));
}

GasketFunction function_from(const Flags& flags) {
  if (flags.spec) return build_function(load_spec(*flags.spec));
  if (flags.preset) return preset_function(flags);
  throw Error(ErrorCode::invalid_argument, "no function given: pass --preset or --spec");
}

int need(const std::optional<int>& v, int fallback) { return v.value_or(fallback); }

// Levels beyond a sample table's depth cannot be sampled; default ranges
// shrink to fit, explicit ones are left to fail.
int cap_for(const GasketFunction& f, int want, int refine) {
  if (const auto& d = f.traits().sample_depth) return std::max(0, std::min(want, *d - refine));
  return want;
}

Json header(const std::string& command, const GasketFunction& f) {
  Json doc;
  doc["command"] = command;
  doc["function"] = f.describe();
  return doc;
}

Json traits_json(const GasketFunction& f) {
  const FunctionTraits& t = f.traits();
  Json j;
  j["continuous"] = t.continuous;
  j["exact_depth"] = t.exact_depth ? Json(*t.exact_depth) : Json(nullptr);
  j["lipschitz"] = num(t.lipschitz);
  if (t.modulus) {
    j["modulus"] = {{"constant", num(t.modulus->constant)}, {"exponent", num(t.modulus->exponent)}};
  } else {
    j["modulus"] = nullptr;
  }
  return j;
}

Json bound_json(const AnnotatedBound& b) {
  Json j;
  j["kind"] = to_string(b.kind);
  j["value"] = num(b.value);
  j["formula"] = b.formula;
  j["exact"] = b.exact;
  j["hypothesis_verified"] = b.hypothesis_verified;
  j["flag"] = b.flag.empty() ? Json(nullptr) : Json(b.flag);
  return j;
}

Report vertex_report(const std::string& command, const GasketFunction& f, int depth) {
  check_depth(depth, command.c_str());
  Report r;
  r.doc = header(command, f);
  r.doc["source"] = f.describe();
  r.doc.erase("function");
  r.doc["depth"] = depth;
  Json samples = Json::object();
  r.columns = {"address", "x", "y", "value"};
  for (const Address& a : canonical_partition(depth)) {
    const double v = f(VertexRef::of(a.prefix().symbols(), a.tail()));
    // Full precision so the table re-ingests to identical evaluations.
    samples[a.to_string()] = v;
    const Point p = address_point(a);
    r.rows.push_back({a.to_string(), p.x.to_string(), p.y.to_string(), v});
  }
  r.doc["samples"] = std::move(samples);
  return r;
}

Report extend_command(const std::string& command, const Flags& flags) {
  if (!flags.boundary) throw Error(ErrorCode::invalid_argument, command + " needs --boundary a,b,c");
  const int depth = need(flags.depth, 2);
  if (depth < 0) throw Error(ErrorCode::invalid_argument, "--depth must be nonnegative");
  if (command == "extend-harmonic") return vertex_report(command, harmonic_extend(*flags.boundary, depth), depth);
  const BiharmonicSeed seed{*flags.boundary, flags.lap.value_or(std::array<double, 3>{})};
  Report r = vertex_report(command, biharmonic_extend(seed, depth), depth);
  Json lap = Json::object();
  const GasketFunction laplacian = harmonic_extend(seed.lap0, depth);
  for (const Address& a : canonical_partition(depth)) {
    lap[a.to_string()] = laplacian(VertexRef::of(a.prefix().symbols(), a.tail()));
  }
  r.doc["laplacian"] = std::move(lap);
  return r;
}

Report energy_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int m_max = flags.m_max ? *flags.m_max : cap_for(f, 6, 0);
  const EnergyTrace trace = energy_trace(f, m_max);
  Report r;
  r.doc = header("energy", f);
  r.doc["m_max"] = m_max;
  r.doc["trace"] = nums(trace.values);
  r.doc["verdict"] = to_string(trace.verdict);
  r.doc["energy"] = num(trace.energy);
  if (trace.verdict == EnergyVerdict::finite) {
    const int m = std::min(m_max, 6);
    const FukushimaResult fk = fukushima_check(f, m);
    r.doc["fukushima"] = {{"m", m},
                          {"sigma", num(fk.sigma)},
                          {"max_ratio", num(fk.max_ratio)},
                          {"bound", num(fk.bound)},
                          {"holds", fk.holds}};
  }
  r.columns = {"n", "value", "verdict"};
  for (std::size_t m = 0; m < trace.values.size(); ++m) {
    r.rows.push_back({static_cast<int>(m), num(trace.values[m]), to_string(trace.verdict)});
  }
  return r;
}

Report oscillation_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_min = need(flags.n_min, 1);
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 6, k);
  Report r;
  r.doc = header("oscillation", f);
  r.doc["refine"] = k;
  r.doc["traits"] = traits_json(f);
  r.columns = {"n", "value", "lower", "upper"};
  Json levels = Json::array();
  for (int n = n_min; n <= n_max; ++n) {
    const OscillationTable t = oscillation_table(f, n, k);
    const double total = t.total();
    std::optional<double> upper;
    if (t.error_bound) upper = total + static_cast<double>(t.values.size()) * *t.error_bound;
    levels.push_back({{"n", n},
                      {"total", num(total)},
                      {"exact", t.exact},
                      {"cell_error_bound", num(t.error_bound)},
                      {"upper", num(upper)}});
    r.rows.push_back({n, num(total), num(total), num(upper)});
  }
  r.doc["levels"] = std::move(levels);
  if (flags.depth) {
    const OscillationTable t = oscillation_table(f, *flags.depth, k);
    Json cells = Json::array();
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      cells.push_back({{"word", Word::from_index(i, *flags.depth).to_string()}, {"value", num(t.values[i])}});
    }
    r.doc["cells"] = {{"n", *flags.depth}, {"exact", t.exact}, {"values", std::move(cells)}};
  }
  return r;
}

Report variation_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const Definition def = parse_definition(flags.definition);
  const int k = flags.refine;
  const bool sampled = def == Definition::A || def == Definition::Astar;
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 8, sampled ? k : 0);
  const VariationReport v = variation_report(f, def, n_max, k);
  Report r;
  r.doc = header("variation", f);
  r.doc["definition"] = to_string(def);
  if (sampled) r.doc["refine"] = k;
  r.doc["levels"] = v.levels;
  r.doc["partial_sums"] = nums(v.partial_sums);
  r.doc["verdict"] = to_string(v.verdict);
  r.doc["variation"] = num(v.variation);
  if (def == Definition::C || def == Definition::Cstar) {
    r.doc["note"] = "canonical partitions give lower bounds of the supremum over all partitions";
  }
  r.columns = {"n", "value", "verdict"};
  for (std::size_t i = 0; i < v.levels.size(); ++i) {
    r.rows.push_back({v.levels[i], num(v.partial_sums[i]), to_string(v.verdict)});
  }
  return r;
}

Report holder_command(const Flags& flags) {
  if (!flags.alpha) throw Error(ErrorCode::invalid_argument, "holder needs --alpha");
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 8, k);
  const double alpha = *flags.alpha;
  const double norm = holder_class_norm(f, alpha, n_max, k);
  Report r;
  r.doc = header("holder", f);
  r.doc["alpha"] = num(alpha);
  r.doc["norm"] = num(norm);
  r.doc["formula"] = "sup_n R(n, f) / 2^(n (log 3 / log 2 - alpha))";
  r.columns = {"n", "value"};
  for (int n = 1; n <= n_max; ++n) {
    r.rows.push_back({n, num(total_oscillation(f, n, k) / std::exp2(n * (kGasketDim - alpha)))});
  }
  return r;
}

Report classify_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_min = need(flags.n_min, 3);
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 8, k);
  const AlphaClassification c = classify_alpha(f, n_min, n_max, k);
  Report r;
  r.doc = header("classify", f);
  r.doc["n_min"] = n_min;
  r.doc["n_max"] = n_max;
  r.doc["slope"] = num(c.slope);
  r.doc["gamma"] = num(c.gamma);
  r.doc["dim_prediction"] = num(c.dim_prediction);
  r.doc["constant_like"] = c.constant_like;
  r.doc["formula"] = "1 - gamma + log 3 / log 2";
  r.columns = {"n", "value"};
  for (int n = n_min; n <= n_max; ++n) r.rows.push_back({n, num(total_oscillation(f, n, k))});
  return r;
}

Report dimension_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_min = need(flags.n_min, 3);
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 8, k);
  const DimensionEstimate e = box_dimension_estimate(f, n_min, n_max, k);
  Report r;
  r.doc = header("dimension", f);
  r.doc["n_min"] = n_min;
  r.doc["n_max"] = n_max;
  r.doc["refine"] = k;
  r.doc["lower_slope"] = e.degenerate ? Json(nullptr) : num(e.lower_slope);
  r.doc["upper_slope"] = num(e.upper_slope);
  r.doc["interval"] = {num(e.lower), num(e.upper)};
  r.doc["degenerate"] = e.degenerate;
  r.doc["floor"] = {{"value", num(kGasketDim)}, {"formula", "log 3 / log 2"}};

  Json ceilings = Json::array();
  const int check_depth_cap = cap_for(f, 8, 0);
  std::vector<std::pair<CeilingKind, std::optional<double>>> kinds{
      {CeilingKind::finite_energy, {}}, {CeilingKind::biharmonic, {}}, {CeilingKind::bv_A, {}}};
  if (flags.alpha) {
    kinds.emplace_back(CeilingKind::holder, flags.alpha);
  } else if (f.traits().modulus && f.traits().modulus->exponent <= 1.0) {
    kinds.emplace_back(CeilingKind::holder, f.traits().modulus->exponent);
  }
  for (const auto& [kind, exponent] : kinds) {
    const int kk = kind == CeilingKind::bv_A ? std::min(k, 2) : 0;
    ceilings.push_back(bound_json(checked_ceiling(kind, f, std::max(2, check_depth_cap - kk), kk, exponent)));
  }
  r.doc["ceilings"] = std::move(ceilings);
  r.columns = {"n", "value", "lower", "upper"};
  for (std::size_t i = 0; i < e.levels.size(); ++i) {
    const int n = e.levels[i];
    r.rows.push_back({n, num(e.lower_counts[i] / std::exp2(n)), num(e.lower_counts[i]),
                      num(e.upper_counts[i])});
  }
  return r;
}

Report algebra_command(const Flags& flags) {
  if (!flags.with) throw Error(ErrorCode::invalid_argument, "algebra-check needs --with <spec>");
  const GasketFunction f = function_from(flags);
  const GasketFunction g = build_function(load_spec(*flags.with));
  const int k = std::min(flags.refine, 2);
  const int n_max = flags.n_max ? *flags.n_max : 4;
  Report r;
  r.doc = header("algebra-check", f);
  r.doc["with"] = g.describe();
  r.doc["refine"] = k;
  r.columns = {"n", "value", "lower", "upper"};
  Json levels = Json::array();
  bool holds = true;
  for (int n = 1; n <= n_max; ++n) {
    const AlgebraCheck c = oscillation_algebra_check(f, g, n, k);
    levels.push_back({{"n", n},
                      {"cells", c.cells},
                      {"worst_sum_margin", num(c.worst_sum_margin)},
                      {"worst_product_margin", num(c.worst_product_margin)},
                      {"sum_variation_margin", num(c.sum_variation_margin)},
                      {"star_sum_margin", num(c.star_sum_margin)},
                      {"product_margin_ff", num(c.product_margin_ff)},
                      {"product_margin_gf", num(c.product_margin_gf)}});
    holds = holds && c.worst_sum_margin >= -1e-12 && c.worst_product_margin >= -1e-12;
    r.rows.push_back({n, num(std::min(c.worst_sum_margin, c.worst_product_margin)),
                      num(c.worst_sum_margin), num(c.worst_product_margin)});
  }
  r.doc["levels"] = std::move(levels);
  r.doc["cell_inequalities_hold"] = holds;
  return r;
}

Report reciprocal_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 6, k);
  const ReciprocalBound b = reciprocal_variation_bound(f, n_max, k);
  Report r;
  r.doc = header("reciprocal-check", f);
  r.doc["m"] = num(b.m);
  r.doc["variation"] = num(b.variation);
  r.doc["bound"] = num(b.bound);
  r.doc["formula"] = "2 V(f) / m^2";
  r.doc["partial_sums"] = nums(b.partial_sums);
  r.doc["sign_change_cells"] = b.sign_change_cells;
  r.doc["premise_met"] = b.premise_met;
  if (!b.premise_met) r.doc["flag"] = "premise unmet: (A) verdict is not bounded";
  r.doc["holds"] = b.holds;
  r.columns = {"n", "value", "upper"};
  for (std::size_t i = 0; i < b.partial_sums.size(); ++i) {
    r.rows.push_back({static_cast<int>(i + 1), num(b.partial_sums[i]), num(b.bound)});
  }
  return r;
}

Report saltus_command(const Flags& flags) {
  if (!flags.epsilon) throw Error(ErrorCode::invalid_argument, "saltus needs --epsilon");
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 6, k);
  Report r;
  r.doc = header("saltus", f);
  r.doc["epsilon"] = num(*flags.epsilon);
  r.columns = {"n", "value", "lower"};
  Json levels = Json::array();
  for (int n = need(flags.n_min, 1); n <= n_max; ++n) {
    const SaltusCount s = saltus_cell_fraction(f, *flags.epsilon, n, k);
    levels.push_back({{"n", n}, {"count", s.count}, {"fraction", num(s.fraction)}});
    r.rows.push_back({n, s.count, num(s.fraction)});
  }
  r.doc["levels"] = std::move(levels);
  return r;
}

Report cover_command(const Flags& flags) {
  const GasketFunction f = function_from(flags);
  const int k = flags.refine;
  const int n_max = flags.n_max ? *flags.n_max : cap_for(f, 6, k);
  Report r;
  r.doc = header("cover-sum", f);
  r.doc["formula"] = "sum_w (2^(s/2) max(2^-n, R_w))^s";
  r.doc["chain_formula"] = "sum_w 2^(s/2) max(3^-n, R_w)";
  r.columns = {"n", "value", "upper"};
  Json levels = Json::array();
  for (int n = need(flags.n_min, 1); n <= n_max; ++n) {
    const CoverSum c = graph_cover_sum(f, n, k);
    levels.push_back({{"n", n}, {"value", num(c.value)}, {"chain_bound", num(c.chain_bound)}});
    r.rows.push_back({n, num(c.value), num(c.chain_bound)});
  }
  r.doc["levels"] = std::move(levels);
  return r;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt12(v.get<double>());
  return v.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FunctionSpec parse_spec(const nlohmann::json& doc) {
  if (!doc.is_object()) spec_error(ErrorCode::malformed_spec, {"<document>"}, "expected an object");
  const bool has_preset = doc.contains("preset");
  const bool has_samples = doc.contains("samples");
  if (has_preset == has_samples) {
    spec_error(ErrorCode::malformed_spec, {"preset", "samples"}, "exactly one is required");
  }
  FunctionSpec s;
  if (has_samples) {
    check_keys(doc, {"samples", "depth", "properties", "command", "source"});
    s = parse_samples(doc);
  } else {
    s = parse_preset(doc);
  }
  if (doc.contains("properties")) s.properties = parse_properties(doc["properties"]);
  return s;
}

FunctionSpec load_spec(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  const bool inline_doc = first != std::string::npos && text_or_path[first] == '{';
  const std::string text = inline_doc ? text_or_path : read_file(text_or_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::malformed_spec, std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

GasketFunction build_function(const FunctionSpec& spec) {
  auto f = [&]() -> GasketFunction {
    if (spec.kind == FunctionSpec::Kind::samples) {
      std::vector<std::pair<VertexKey, double>> entries;
      entries.reserve(spec.samples.size());
      for (const auto& [a, v] : spec.samples) entries.emplace_back(address_key(a), v);
      return GasketFunction::sampled(SampleTable(spec.depth, std::move(entries)));
    }
    const std::string& p = spec.preset;
    if (p == "constant") return GasketFunction::constant(spec.value);
    if (p == "coordinate") return GasketFunction::coordinate();
    if (p == "osc") return GasketFunction::osc();
    if (p == "cell_indicator") return GasketFunction::cell_indicator(spec.word);
    if (p == "harmonic") return GasketFunction::harmonic(spec.boundary);
    if (p == "biharmonic") return GasketFunction::biharmonic(BiharmonicSeed{spec.boundary, spec.lap});
    if (p == "scale") return spec.factor * build_function(spec.operands.front());
    GasketFunction acc = build_function(spec.operands.front());
    for (std::size_t i = 1; i < spec.operands.size(); ++i) {
      const GasketFunction next = build_function(spec.operands[i]);
      acc = p == "sum" ? acc + next : acc * next;
    }
    return acc;
  }();
  const DeclaredProperties& d = spec.properties;
  if (!d.continuous && !d.lipschitz && !d.modulus) return f;
  FunctionTraits t = f.traits();
  if (d.continuous) t.continuous = *d.continuous;
  if (d.lipschitz) {
    t.lipschitz = *d.lipschitz;
    t.modulus = Modulus{*d.lipschitz, 1.0};
  }
  if (d.modulus) t.modulus = *d.modulus;
  return f.with_traits(t);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "extend-harmonic", "extend-biharmonic", "energy",           "oscillation", "variation",
      "holder",          "classify",          "dimension",        "algebra-check",
      "reciprocal-check", "saltus",           "cover-sum",        "export-vertices"};
  return names;
}

Report execute(const std::string& command, const Flags& flags) {
  if (flags.refine < 0) throw Error(ErrorCode::invalid_argument, "--refine must be nonnegative");
  if (command == "extend-harmonic" || command == "extend-biharmonic") return extend_command(command, flags);
  if (command == "energy") return energy_command(flags);
  if (command == "oscillation") return oscillation_command(flags);
  if (command == "variation") return variation_command(flags);
  if (command == "holder") return holder_command(flags);
  if (command == "classify") return classify_command(flags);
  if (command == "dimension") return dimension_command(flags);
  if (command == "algebra-check") return algebra_command(flags);
  if (command == "reciprocal-check") return reciprocal_command(flags);
  if (command == "saltus") return saltus_command(flags);
  if (command == "cover-sum") return cover_command(flags);
  if (command == "export-vertices") {
    const GasketFunction f = function_from(flags);
    const int depth = flags.depth ? *flags.depth : cap_for(f, 2, 0);
    return vertex_report(command, f, depth);
  }
  throw Error(ErrorCode::invalid_argument, "unknown command: " + command);
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return report.doc.dump(2) + "\n";
  if (format != "csv") throw Error(ErrorCode::invalid_argument, "unknown format: " + format);
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) out += (i ? "," : "") + report.columns[i];
  out += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string error_document(const std::string& code, const std::string& message) {
  Json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Functions on the Sierpinski gasket: extension, energy, variation, dimension", "gasket"};
  std::string command;
  Flags flags;
  std::vector<double> boundary, lap;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--spec", flags.spec, "Function spec: inline JSON or a file path");
  app.add_option("--preset", flags.preset, "Preset function name");
  app.add_option("--boundary", boundary, "Values on V_0: a,b,c")->delimiter(',')->expected(3);
  app.add_option("--lap", lap, "Laplacian on V_0: a,b,c")->delimiter(',')->expected(3);
  app.add_option("--word", flags.word, "Cell word for cell_indicator");
  app.add_option("--value", flags.value, "Value of the constant preset");
  app.add_option("--depth", flags.depth, "Vertex level");
  app.add_option("--refine", flags.refine, "Extra sampling levels inside each cell")->capture_default_str();
  app.add_option("--n-min", flags.n_min, "First level");
  app.add_option("--n-max", flags.n_max, "Last level");
  app.add_option("--m-max", flags.m_max, "Last energy level");
  app.add_option("--alpha", flags.alpha, "Hoelder exponent");
  app.add_option("--epsilon", flags.epsilon, "Saltus threshold");
  app.add_option("--def", flags.definition, "Variation definition: A, B, C, Astar, Bstar, Cstar")
      ->capture_default_str();
  app.add_option("--with", flags.with, "Second function spec for algebra-check");
  app.add_option("--format", flags.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", flags.output, "Write the report to this path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_document("usage", e.what());
    return 2;
  }
  if (!boundary.empty()) flags.boundary = std::array<double, 3>{boundary[0], boundary[1], boundary[2]};
  if (!lap.empty()) flags.lap = std::array<double, 3>{lap[0], lap[1], lap[2]};

  try {
    const std::string text = render(execute(command, flags), flags.format);
    if (flags.output) {
      std::ofstream file(*flags.output);
      if (!file) throw Error(ErrorCode::invalid_argument, "cannot write " + *flags.output);
      file << text;
    } else {
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    out << error_document(std::string(to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    out << error_document("internal", e.what());
  }
  return 1;
}

}  // namespace gasket::cli
