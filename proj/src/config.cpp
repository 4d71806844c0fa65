#include "fanoqh/config.hpp"

#include <stdexcept>

namespace fanoqh {

void Config::validate() const {
  if (!(tol_residual > 0) || !(tol_dedupe > 0) || !(degeneracy_threshold > 0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (max_dim < 1) throw std::invalid_argument("max_dim must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

}  // namespace fanoqh
