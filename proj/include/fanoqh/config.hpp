#pragma once

#include <cstdint>

namespace fanoqh {

enum class Precision { Double, High };
enum class OutputFormat { Json, Text };

struct Config {
  double tol_residual = 1e-10;
  double tol_dedupe = 1e-8;
  double degeneracy_threshold = 1e-8;
  Precision precision = Precision::Double;
  int max_dim = 10;
  std::uint64_t seed = 1;
  OutputFormat output = OutputFormat::Json;
  // Worker threads for per-point certification. Results do not depend on it.
  int threads = 1;

  // Throws std::invalid_argument for non-positive tolerances or max_dim < 1.
  void validate() const;
};

}  // namespace fanoqh
