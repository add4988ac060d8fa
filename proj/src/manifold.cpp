#include "ssmx/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "ssmx/ssm.hpp"

namespace ssmx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Edge {
  Index to;
  double weight;
};

}  // namespace

int default_knn(Index n) {
  return std::max(5, static_cast<int>(std::llround(static_cast<double>(n) / 20.0)));
}

GeodesicDistanceMatrix knn_geodesics(const TimeOrderedPointCloud& topc, int k) {
  validate(topc);
  const Index n = topc.size();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("knn_geodesics needs 1 <= k < N");
  }

  const Matrix euclid = build_ssm(topc).values;

  std::vector<std::vector<Edge>> adj(static_cast<size_t>(n));
  std::vector<Index> order(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) order[static_cast<size_t>(j)] = j;
    std::nth_element(order.begin(), order.begin() + k, order.end(),
                     [&](Index a, Index b) {
                       if (a == i) return false;
                       if (b == i) return true;
                       return euclid(i, a) < euclid(i, b);
                     });
    for (int m = 0; m < k; ++m) {
      const Index j = order[static_cast<size_t>(m)];
      adj[static_cast<size_t>(i)].push_back({j, euclid(i, j)});
      adj[static_cast<size_t>(j)].push_back({i, euclid(i, j)});
    }
  }

  GeodesicDistanceMatrix out;
  out.values = Matrix::Constant(n, n, kInf);
  out.timestamps = topc.timestamps;

  using HeapItem = std::pair<double, Index>;
  for (Index src = 0; src < n; ++src) {
    std::vector<double> dist(static_cast<size_t>(n), kInf);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    dist[static_cast<size_t>(src)] = 0.0;
    heap.emplace(0.0, src);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<size_t>(u)]) continue;
      for (const Edge& e : adj[static_cast<size_t>(u)]) {
        const double nd = d + e.weight;
        if (nd < dist[static_cast<size_t>(e.to)]) {
          dist[static_cast<size_t>(e.to)] = nd;
          heap.emplace(nd, e.to);
        }
      }
    }
    for (Index j = 0; j < n; ++j) out.values(src, j) = dist[static_cast<size_t>(j)];
  }

  // Symmetrize exactly; Dijkstra from both endpoints can differ in the last ulp.
  out.values = ((out.values + out.values.transpose()) / 2.0).eval();
  out.connected = out.values.allFinite();
  return out;
}

TimeOrderedPointCloud classical_mds(const GeodesicDistanceMatrix& distances,
                                    int target_dim) {
  if (!distances.connected) {
    throw std::runtime_error("classical_mds needs a connected distance matrix");
  }
  if (target_dim < 1) {
    throw std::invalid_argument("classical_mds needs target_dim >= 1");
  }
  const Index n = distances.values.rows();

  // B = -1/2 * J * D^2 * J with J the centering projector; written out as
  // B_ij = -1/2 * (sq_ij - rowmean_i - rowmean_j + grandmean).
  Matrix sq = distances.values.array().square();
  Vector row_mean = sq.rowwise().mean();
  const double grand_mean = sq.mean();
  Matrix gram = sq;
  gram.colwise() -= row_mean;
  gram.rowwise() -= row_mean.transpose();
  gram.array() += grand_mean;
  gram *= -0.5;

  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("classical_mds eigendecomposition failed");
  }
  // Eigenvalues ascend; take the top target_dim, clamped at zero.
  Matrix coords(n, target_dim);
  for (int d = 0; d < target_dim; ++d) {
    const Index idx = n - 1 - d;
    const double lambda = std::max(0.0, solver.eigenvalues()[idx]);
    coords.col(d) = solver.eigenvectors().col(idx) * std::sqrt(lambda);
  }

  Vector ts = distances.timestamps.size() == n
                  ? distances.timestamps
                  : uniform_timestamps(n, 1.0);
  return {std::move(coords), std::move(ts)};
}

TimeOrderedPointCloud isomap_embed(const TimeOrderedPointCloud& topc,
                                   int target_dim, int k) {
  const Index n = topc.size();
  int kk = std::min<int>(k, static_cast<int>(n - 1));
  GeodesicDistanceMatrix geo = knn_geodesics(topc, kk);
  while (!geo.connected && kk < n - 1) {
    ++kk;
    geo = knn_geodesics(topc, kk);
  }
  return classical_mds(geo, target_dim);
}

TimeOrderedPointCloud pca_project(const TimeOrderedPointCloud& topc, int target_dim) {
  validate(topc);
  if (target_dim < 1 || target_dim > topc.dim()) {
    throw std::invalid_argument("pca_project needs 1 <= target_dim <= d");
  }
  Matrix centered = topc.points.rowwise() - topc.points.colwise().mean();
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  Matrix proj = centered * svd.matrixV().leftCols(target_dim);
  return {std::move(proj), topc.timestamps};
}

TimeOrderedPointCloud make_trefoil(Index n) {
  Matrix pts(n, 3);
  for (Index i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    pts(i, 0) = std::sin(t) + 2.0 * std::sin(2.0 * t);
    pts(i, 1) = std::cos(t) - 2.0 * std::cos(2.0 * t);
    pts(i, 2) = -std::sin(3.0 * t);
  }
  return {std::move(pts), uniform_timestamps(n, 1.0)};
}

}  // namespace ssmx
