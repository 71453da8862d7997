#pragma once

namespace gasket {

/// Hard ceiling imposed by the 2^60 fixed-point vertex lattice.
inline constexpr int kHardDepthLimit = 48;
inline constexpr int kDefaultMaxDepth = 14;

/// Depth cap for vertex enumeration and sampling. Reads GASKET_MAX_DEPTH on
/// every call so tests and the CLI can override it; clamped to
/// [0, kHardDepthLimit].
int max_depth();

/// Throws ErrorCode::depth_limit when `depth` exceeds max_depth().
void check_depth(int depth, const char* what);

}  // namespace gasket
