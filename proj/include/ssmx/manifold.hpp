#pragma once

#include "ssmx/point_cloud.hpp"

namespace ssmx {

/// All-pairs graph-geodesic distances over a k-NN graph.
struct GeodesicDistanceMatrix {
  Matrix values;      // N x N, +inf across disconnected components
  bool connected = false;
  Vector timestamps;  // carried through so MDS can emit a time-ordered cloud
};

/// Undirected k-NN graph (union-symmetrized) with Euclidean edge weights,
/// then shortest paths from every source.
GeodesicDistanceMatrix knn_geodesics(const TimeOrderedPointCloud& topc, int k);

/// Double-centered Gram eigendecomposition; the top target_dim nonnegative
/// eigen-directions scaled by sqrt(eigenvalue), ordered by original time
/// index. Negative eigenvalues are clamped to zero. Throws on a
/// disconnected input.
TimeOrderedPointCloud classical_mds(const GeodesicDistanceMatrix& distances,
                                    int target_dim);

/// knn_geodesics followed by classical_mds; k is raised until the graph
/// connects (at most N-1).
TimeOrderedPointCloud isomap_embed(const TimeOrderedPointCloud& topc,
                                   int target_dim, int k);

/// Mean-centered projection onto the top principal directions.
TimeOrderedPointCloud pca_project(const TimeOrderedPointCloud& topc, int target_dim);

/// k = max(5, round(N/20)), the neighborhood rule used across the pipeline.
int default_knn(Index n);

/// n samples of a trefoil knot in R^3, the standard ISOMAP demo input.
TimeOrderedPointCloud make_trefoil(Index n);

}  // namespace ssmx
