#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace numindex {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when an operation is asked of a space kind that cannot provide it
/// (e.g. exact vertex enumeration on a smooth norm).
class unsupported_kind : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// splitmix64 mix of a base seed and a stream id; independent streams for
/// restart workers so results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id);

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  return std::mt19937_64(mix_seed(seed, stream_id));
}

Vec gaussian_vec(std::mt19937_64& rng, int dim);

/// Fixed 12-decimal rendering used for every printed or CSV real value.
std::string format_real(double v);

/// Worker cap: NUMINDEX_THREADS env var, else hardware concurrency.
int worker_count();

/// Static strided parallel loop; results must be written to index-addressed
/// slots so the outcome is identical for any worker count.
void parallel_for(int n, const std::function<void(int)>& fn);

std::string vec_to_string(const Vec& v);

}  // namespace numindex
