#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mfrac::app {

struct ApiLimits {
  std::size_t max_points = (std::size_t{1} << 17) + 1;
  /// Bound on GHBMP kernel evaluations per request (points * 2^(J+1) summed).
  double max_kernel_evals = 4294967296.0;
  std::size_t max_realizations = 500;
  std::size_t max_matrix_points = 1025;
};

struct ApiOptions {
  ApiLimits limits;
  /// Seeds for requests that omit one; echoed in the response. The default
  /// draws from std::random_device below 2^53 so browsers can echo them exactly.
  std::function<std::uint64_t()> seed_source;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  double elapsed_ms = 0.0;
};

/// Routes one request under /api. Never throws: failures become 4xx/5xx
/// bodies of the form {"error": {"code", "message", ...}}.
ApiResponse handle_api(std::string_view method, std::string_view path, std::string_view body,
                       const ApiOptions& options = {});

}  // namespace mfrac::app
