#include "qgap/util.hpp"

namespace qgap {

double blocked_dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t n_blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(n_blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(n_blocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[static_cast<std::size_t>(blk)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s; // fixed block order: thread-count independent
  return total;
}

double blocked_norm2(std::span<const double> a) { return blocked_dot(a, a); }

} // namespace qgap
