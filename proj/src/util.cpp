#include "numindex/util.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <vector>

namespace numindex {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec gaussian_vec(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = dist(rng);
  return v;
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("NUMINDEX_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string vec_to_string(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v[i]);
  }
  return s + ")";
}

}  // namespace numindex
