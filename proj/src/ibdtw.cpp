#include "ssmx/ibdtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ssmx {

namespace {

// Rolling two-row DP; workspace is reused across the M*N row pairs of a CSWM.
double dtw_kernel(const double* a, Index m, const double* b, Index n,
                  double* prev, double* cur) {
  cur[0] = std::abs(a[0] - b[0]);
  for (Index j = 1; j < n; ++j) cur[j] = cur[j - 1] + std::abs(a[0] - b[j]);
  std::swap(prev, cur);
  for (Index i = 1; i < m; ++i) {
    const double ai = a[i];
    cur[0] = prev[0] + std::abs(ai - b[0]);
    for (Index j = 1; j < n; ++j) {
      const double best = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = best + std::abs(ai - b[j]);
    }
    std::swap(prev, cur);
  }
  return prev[n - 1];
}

}  // namespace

double dtw_row_cost(const Eigen::Ref<const Vector>& row_a,
                    const Eigen::Ref<const Vector>& row_b) {
  const Index m = row_a.size();
  const Index n = row_b.size();
  if (m == 0 || n == 0) {
    throw std::invalid_argument("dtw_row_cost needs nonempty rows");
  }
  std::vector<double> prev(static_cast<size_t>(n)), cur(static_cast<size_t>(n));
  return dtw_kernel(row_a.data(), m, row_b.data(), n, prev.data(), cur.data());
}

CrossSimilarityWarpMatrix build_cswm(const SelfSimilarityMatrix& ssm_a,
                                     const SelfSimilarityMatrix& ssm_b) {
  const Index m = ssm_a.size();
  const Index n = ssm_b.size();
  if (m == 0 || n == 0) {
    throw std::invalid_argument("build_cswm needs nonempty SSMs");
  }
  Matrix cswm(m, n);
  std::vector<double> prev(static_cast<size_t>(n)), cur(static_cast<size_t>(n));
  for (Index i = 0; i < m; ++i) {
    // Symmetric SSMs make column i a contiguous copy of row i.
    const double* row_i = ssm_a.values.col(i).data();
    for (Index j = 0; j < n; ++j) {
      cswm(i, j) = dtw_kernel(row_i, m, ssm_b.values.col(j).data(), n,
                              prev.data(), cur.data());
    }
  }
  return {std::move(cswm)};
}

WarpingPath extract_warping_path(const CrossSimilarityWarpMatrix& cswm) {
  const Index m = cswm.rows();
  const Index n = cswm.cols();
  if (m == 0 || n == 0) {
    throw std::invalid_argument("extract_warping_path needs a nonempty CSWM");
  }

  Matrix dp(m, n);
  // 0 = diagonal, 1 = down, 2 = right; unused at the borders it cannot apply.
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> step(m, n);
  dp(0, 0) = cswm.values(0, 0);
  for (Index i = 1; i < m; ++i) {
    dp(i, 0) = dp(i - 1, 0) + cswm.values(i, 0);
    step(i, 0) = 1;
  }
  for (Index j = 1; j < n; ++j) {
    dp(0, j) = dp(0, j - 1) + cswm.values(0, j);
    step(0, j) = 2;
  }
  for (Index i = 1; i < m; ++i) {
    for (Index j = 1; j < n; ++j) {
      const double diag = dp(i - 1, j - 1);
      const double down = dp(i - 1, j);
      const double right = dp(i, j - 1);
      double best = diag;
      std::uint8_t choice = 0;
      if (down < best) {
        best = down;
        choice = 1;
      }
      if (right < best) {
        best = right;
        choice = 2;
      }
      dp(i, j) = best + cswm.values(i, j);
      step(i, j) = choice;
    }
  }

  WarpingPath path;
  Index i = m - 1, j = n - 1;
  while (true) {
    path.pairs.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    switch (step(i, j)) {
      case 0: --i; --j; break;
      case 1: --i; break;
      default: --j; break;
    }
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  path.total_cost = dp(m - 1, n - 1);
  path.normalized_cost = path.total_cost / static_cast<double>(path.pairs.size());
  return path;
}

double ibdtw_distance(const SelfSimilarityMatrix& ssm_a,
                      const SelfSimilarityMatrix& ssm_b) {
  return extract_warping_path(build_cswm(ssm_a, ssm_b)).normalized_cost;
}

}  // namespace ssmx
