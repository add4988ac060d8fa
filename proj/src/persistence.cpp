#include "ssmx/persistence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ssmx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Union-find over an explicit neighbor relation; shared by the 1-D and the
// image filtrations.
class PersistenceSweep {
 public:
  explicit PersistenceSweep(const std::vector<double>& values)
      : values_(values),
        parent_(values.size(), -1),
        birth_value_(values.size()),
        birth_index_(values.size()) {}

  template <typename NeighborFn>
  PersistenceDiagram run(NeighborFn&& neighbors_of) {
    const auto n = static_cast<long>(values_.size());
    std::vector<long> order(values_.size());
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) {
      if (values_[static_cast<size_t>(a)] != values_[static_cast<size_t>(b)]) {
        return values_[static_cast<size_t>(a)] < values_[static_cast<size_t>(b)];
      }
      return a < b;
    });

    PersistenceDiagram diagram;
    for (long idx : order) {
      parent_[static_cast<size_t>(idx)] = idx;  // born as its own component
      birth_value_[static_cast<size_t>(idx)] = values_[static_cast<size_t>(idx)];
      birth_index_[static_cast<size_t>(idx)] = idx;
      for (long nb : neighbors_of(idx)) {
        if (nb < 0 || nb >= n) continue;
        if (parent_[static_cast<size_t>(nb)] < 0) continue;  // not active yet
        merge(find(nb), find(idx), values_[static_cast<size_t>(idx)], diagram);
      }
    }

    const long root = find(order.front());
    diagram.points.push_back({birth_value_[static_cast<size_t>(root)],
                              values_[static_cast<size_t>(order.back())], true});
    return diagram;
  }

 private:
  long find(long x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }

  void merge(long ra, long rb, double level, PersistenceDiagram& diagram) {
    if (ra == rb) return;
    // Elder rule: the component with the earlier (value, index) birth wins.
    long elder = ra, younger = rb;
    const auto key = [&](long r) {
      return std::pair<double, long>(birth_value_[static_cast<size_t>(r)],
                                     birth_index_[static_cast<size_t>(r)]);
    };
    if (key(rb) < key(ra)) std::swap(elder, younger);
    if (level > birth_value_[static_cast<size_t>(younger)]) {
      diagram.points.push_back(
          {birth_value_[static_cast<size_t>(younger)], level, false});
    }
    parent_[static_cast<size_t>(younger)] = elder;
  }

  const std::vector<double>& values_;
  std::vector<long> parent_;
  std::vector<double> birth_value_;
  std::vector<long> birth_index_;
};

}  // namespace

PersistenceDiagram sublevel_persistence_1d(const Eigen::Ref<const Vector>& signal) {
  if (signal.size() < 1) {
    throw std::invalid_argument("sublevel_persistence_1d needs a nonempty signal");
  }
  std::vector<double> values(signal.data(), signal.data() + signal.size());
  PersistenceSweep sweep(values);
  return sweep.run([](long idx) { return std::array<long, 2>{idx - 1, idx + 1}; });
}

PersistenceDiagram image_persistence(const SelfSimilarityMatrix& image,
                                     Filtration direction) {
  const Index rows = image.values.rows();
  const Index cols = image.values.cols();
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("image_persistence needs a nonempty image");
  }

  const bool negate = direction == Filtration::Superlevel;
  std::vector<double> values(static_cast<size_t>(rows * cols));
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double v = image.values(r, c);
      values[static_cast<size_t>(r * cols + c)] = negate ? -v : v;
    }
  }

  PersistenceSweep sweep(values);
  PersistenceDiagram diagram = sweep.run([rows, cols](long idx) {
    const long r = idx / cols;
    const long c = idx % cols;
    std::array<long, 8> nbs;
    size_t k = 0;
    for (long dr = -1; dr <= 1; ++dr) {
      for (long dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const long rr = r + dr;
        const long cc = c + dc;
        nbs[k++] = (rr < 0 || rr >= rows || cc < 0 || cc >= cols) ? -1 : rr * cols + cc;
      }
    }
    return nbs;
  });

  if (negate) {
    for (auto& pt : diagram.points) {
      const double b = pt.birth, d = pt.death;
      pt.birth = -d;
      pt.death = -b;
    }
  }
  return diagram;
}

namespace {

double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_gap(const DiagramPoint& a) { return (a.death - a.birth) / 2.0; }

// Exact O(n^3) assignment on a square cost matrix (Kuhn-Munkres with
// potentials).
double solve_assignment(const Matrix& cost) {
  const Index n = cost.rows();
  if (n == 0) return 0.0;
  std::vector<double> u(static_cast<size_t>(n + 1), 0.0), v(static_cast<size_t>(n + 1), 0.0);
  std::vector<Index> p(static_cast<size_t>(n + 1), 0), way(static_cast<size_t>(n + 1), 0);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n + 1), kInf);
    std::vector<char> used(static_cast<size_t>(n + 1), false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const Index i0 = p[static_cast<size_t>(j0)];
      Index j1 = 0;
      double delta = kInf;
      for (Index j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (Index j = 1; j <= n; ++j) {
    if (p[static_cast<size_t>(j)] != 0) total += cost(p[static_cast<size_t>(j)] - 1, j - 1);
  }
  return total;
}

// Augmented square cost matrix: rows are d1 points plus d2's diagonal
// projections, columns are d2 points plus d1's. Entries are cost^p.
Matrix augmented_costs(const std::vector<DiagramPoint>& a,
                       const std::vector<DiagramPoint>& b, double p) {
  const auto n1 = static_cast<Index>(a.size());
  const auto n2 = static_cast<Index>(b.size());
  const Index n = n1 + n2;
  Matrix cost = Matrix::Zero(n, n);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) cost(i, j) = std::pow(linf(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]), p);
    const double gap = std::pow(diagonal_gap(a[static_cast<size_t>(i)]), p);
    for (Index j = n2; j < n; ++j) cost(i, j) = gap;
  }
  for (Index i = n1; i < n; ++i) {
    for (Index j = 0; j < n2; ++j) cost(i, j) = std::pow(diagonal_gap(b[static_cast<size_t>(j)]), p);
  }
  return cost;
}

// Matching feasibility at threshold theta for the bottleneck search, via
// Kuhn's augmenting paths on the same augmented square graph.
bool feasible_at(const std::vector<DiagramPoint>& a,
                 const std::vector<DiagramPoint>& b, bool allow_diagonal,
                 double theta) {
  const auto n1 = static_cast<Index>(a.size());
  const auto n2 = static_cast<Index>(b.size());
  const Index n = allow_diagonal ? n1 + n2 : n1;
  if (!allow_diagonal && n1 != n2) return false;

  const auto edge_ok = [&](Index i, Index j) {
    if (i < n1 && j < n2) return linf(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]) <= theta;
    if (i < n1) return diagonal_gap(a[static_cast<size_t>(i)]) <= theta;
    if (j < n2) return diagonal_gap(b[static_cast<size_t>(j)]) <= theta;
    return true;  // diagonal to diagonal
  };

  std::vector<Index> match_right(static_cast<size_t>(n), -1);
  std::vector<char> visited;
  std::function<bool(Index)> try_augment = [&](Index i) -> bool {
    for (Index j = 0; j < n; ++j) {
      if (visited[static_cast<size_t>(j)] || !edge_ok(i, j)) continue;
      visited[static_cast<size_t>(j)] = true;
      if (match_right[static_cast<size_t>(j)] < 0 || try_augment(match_right[static_cast<size_t>(j)])) {
        match_right[static_cast<size_t>(j)] = i;
        return true;
      }
    }
    return false;
  };

  for (Index i = 0; i < n; ++i) {
    visited.assign(static_cast<size_t>(n), false);
    if (!try_augment(i)) return false;
  }
  return true;
}

double bottleneck_part(const std::vector<DiagramPoint>& a,
                       const std::vector<DiagramPoint>& b, bool allow_diagonal) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates{0.0};
  for (const auto& pa : a) {
    for (const auto& pb : b) candidates.push_back(linf(pa, pb));
  }
  if (allow_diagonal) {
    for (const auto& pa : a) candidates.push_back(diagonal_gap(pa));
    for (const auto& pb : b) candidates.push_back(diagonal_gap(pb));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (feasible_at(a, b, allow_diagonal, candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

double sum_part(const std::vector<DiagramPoint>& a,
                const std::vector<DiagramPoint>& b, bool allow_diagonal, double p) {
  if (a.empty() && b.empty()) return 0.0;
  if (!allow_diagonal && a.size() == b.size()) {
    const auto n = static_cast<Index>(a.size());
    Matrix cost(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        cost(i, j) = std::pow(linf(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]), p);
      }
    }
    return solve_assignment(cost);
  }
  return solve_assignment(augmented_costs(a, b, p));
}

}  // namespace

double wasserstein_distance(const PersistenceDiagram& d1,
                            const PersistenceDiagram& d2, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("wasserstein_distance needs p >= 1 (or infinity)");
  }
  std::vector<DiagramPoint> fin1, fin2, ess1, ess2;
  for (const auto& pt : d1.points) (pt.essential ? ess1 : fin1).push_back(pt);
  for (const auto& pt : d2.points) (pt.essential ? ess2 : fin2).push_back(pt);

  if (std::isinf(p)) {
    const double fb = bottleneck_part(fin1, fin2, true);
    const double eb = bottleneck_part(ess1, ess2, ess1.size() != ess2.size());
    return std::max(fb, eb);
  }
  const double fsum = sum_part(fin1, fin2, true, p);
  const double esum = sum_part(ess1, ess2, ess1.size() != ess2.size(), p);
  return std::pow(fsum + esum, 1.0 / p);
}

double tda_ssm_distance(const SelfSimilarityMatrix& ssm_a,
                        const SelfSimilarityMatrix& ssm_b, double p) {
  const SelfSimilarityMatrix sa = gaussian_smooth(ssm_a, 3.0);
  const SelfSimilarityMatrix sb = gaussian_smooth(ssm_b, 3.0);
  const double sub = wasserstein_distance(image_persistence(sa, Filtration::Sublevel),
                                          image_persistence(sb, Filtration::Sublevel), p);
  const double super = wasserstein_distance(image_persistence(sa, Filtration::Superlevel),
                                            image_persistence(sb, Filtration::Superlevel), p);
  return sub + super;
}

}  // namespace ssmx
