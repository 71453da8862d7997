#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gasket/codespace.hpp"
#include "gasket/functions.hpp"

namespace gasket::cli {

using Json = nlohmann::ordered_json;

struct DeclaredProperties {
  std::optional<bool> continuous;
  std::optional<double> lipschitz;
  std::optional<Modulus> modulus;
};

/// Parsed function document. Presets: constant, coordinate, osc,
/// cell_indicator, harmonic, biharmonic, and the combinators sum, product,
/// scale. Sample tables are keyed by address text.
struct FunctionSpec {
  enum class Kind { preset, samples };
  Kind kind = Kind::preset;
  std::string preset;
  double value = 0.0;
  std::array<double, 3> boundary{};
  std::array<double, 3> lap{};
  Word word;
  double factor = 1.0;
  std::vector<FunctionSpec> operands;
  int depth = 0;
  std::vector<std::pair<Address, double>> samples;
  DeclaredProperties properties;
};

/// Throws gasket::Error (unknown_preset, malformed_address,
/// non_uniform_depth or malformed_spec) naming the offending fields.
FunctionSpec parse_spec(const nlohmann::json& doc);
/// Accepts inline JSON or a path to a JSON file.
FunctionSpec load_spec(const std::string& text_or_path);
GasketFunction build_function(const FunctionSpec& spec);

struct Flags {
  std::optional<std::string> spec;
  std::optional<std::string> preset;
  std::optional<std::array<double, 3>> boundary;
  std::optional<std::array<double, 3>> lap;
  std::optional<std::string> word;
  std::optional<double> value;
  std::optional<int> depth;
  int refine = 3;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<int> m_max;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::string definition = "A";
  std::optional<std::string> with;
  std::string format = "json";
  std::optional<std::string> output;
};

/// `doc` is the JSON report. `columns`/`rows` is the CSV view.
struct Report {
  Json doc;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

const std::vector<std::string>& command_names();

/// Throws gasket::Error on any precondition failure.
Report execute(const std::string& command, const Flags& flags);

std::string render(const Report& report, const std::string& format);
std::string error_document(const std::string& code, const std::string& message);

/// Full command line handling; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace gasket::cli
