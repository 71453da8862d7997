#include <algorithm>
#include <cstdlib>
#include <string>

#include "gasket/config.hpp"
#include "gasket/error.hpp"
#include "gasket/numeric.hpp"

namespace gasket {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::malformed_word: return "malformed_word";
    case ErrorCode::malformed_address: return "malformed_address";
    case ErrorCode::depth_limit: return "depth_limit";
    case ErrorCode::query_below_depth: return "query_below_depth";
    case ErrorCode::invalid_partition: return "invalid_partition";
    case ErrorCode::precondition_failed: return "precondition_failed";
    case ErrorCode::unknown_preset: return "unknown_preset";
    case ErrorCode::non_uniform_depth: return "non_uniform_depth";
    case ErrorCode::malformed_spec: return "malformed_spec";
  }
  return "unknown";
}

int max_depth() {
  const char* env = std::getenv("GASKET_MAX_DEPTH");
  if (env == nullptr || *env == '\0') return kDefaultMaxDepth;
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0') return kDefaultMaxDepth;
  return static_cast<int>(std::clamp<long>(value, 0, kHardDepthLimit));
}

void check_depth(int depth, const char* what) {
  if (depth < 0) {
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": negative depth");
  }
  const int cap = max_depth();
  if (depth > cap) {
    throw Error(ErrorCode::depth_limit, std::string(what) + ": depth " + std::to_string(depth) +
                                            " exceeds the cap " + std::to_string(cap) +
                                            " (GASKET_MAX_DEPTH)");
  }
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "least squares needs at least two points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorCode::invalid_argument, "least squares: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace gasket
