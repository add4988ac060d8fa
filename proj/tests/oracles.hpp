// Brute-force reference implementations used only by tests. Each one takes
// the most literal route available (exhaustive enumeration, dense
// convolution, threshold sweeps) and stays independent of the library code
// paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "ssmx/persistence.hpp"

namespace oracles {

using ssmx::Index;
using ssmx::Matrix;
using ssmx::Vector;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// DTW cost by exhaustive path enumeration (lengths ~<= 6).

inline double dtw_enumerate(const std::vector<double>& a, const std::vector<double>& b,
                            size_t i, size_t j) {
  const double local = std::abs(a[i] - b[j]);
  if (i + 1 == a.size() && j + 1 == b.size()) return local;
  double best = kInf;
  if (i + 1 < a.size()) best = std::min(best, dtw_enumerate(a, b, i + 1, j));
  if (j + 1 < b.size()) best = std::min(best, dtw_enumerate(a, b, i, j + 1));
  if (i + 1 < a.size() && j + 1 < b.size()) best = std::min(best, dtw_enumerate(a, b, i + 1, j + 1));
  return local + best;
}

inline double dtw_brute(const std::vector<double>& a, const std::vector<double>& b) {
  return dtw_enumerate(a, b, 0, 0);
}

// ---------------------------------------------------------------------------
// Minimum node-sum corner-to-corner path over {down, right, diag} steps.

inline double min_path_enumerate(const Matrix& m, Index i, Index j) {
  const double local = m(i, j);
  if (i + 1 == m.rows() && j + 1 == m.cols()) return local;
  double best = kInf;
  if (i + 1 < m.rows()) best = std::min(best, min_path_enumerate(m, i + 1, j));
  if (j + 1 < m.cols()) best = std::min(best, min_path_enumerate(m, i, j + 1));
  if (i + 1 < m.rows() && j + 1 < m.cols()) best = std::min(best, min_path_enumerate(m, i + 1, j + 1));
  return local + best;
}

inline double min_path_cost_brute(const Matrix& m) { return min_path_enumerate(m, 0, 0); }

// ---------------------------------------------------------------------------
// Dense 2-D Gaussian convolution with the same truncated kernel and
// half-sample symmetric reflection as the library's separable version.

inline Index reflect(Index i, Index n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

inline Matrix gaussian_blur_dense(const Matrix& image, double sigma) {
  const auto radius = static_cast<Index>(std::ceil(3.0 * sigma));
  const Index k = 2 * radius + 1;
  Matrix kernel(k, k);
  for (Index dr = -radius; dr <= radius; ++dr) {
    for (Index dc = -radius; dc <= radius; ++dc) {
      kernel(dr + radius, dc + radius) =
          std::exp(-0.5 * static_cast<double>(dr * dr + dc * dc) / (sigma * sigma));
    }
  }
  kernel /= kernel.sum();

  Matrix out(image.rows(), image.cols());
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c) {
      double acc = 0.0;
      for (Index dr = -radius; dr <= radius; ++dr) {
        for (Index dc = -radius; dc <= radius; ++dc) {
          acc += kernel(dr + radius, dc + radius) *
                 image(reflect(r + dr, image.rows()), reflect(c + dc, image.cols()));
        }
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bilinear interpolation on the corner-aligned sample grid.

inline double bilinear_at(const Matrix& m, double r, double c) {
  const Index r0 = std::min<Index>(static_cast<Index>(r), m.rows() - 2);
  const Index c0 = std::min<Index>(static_cast<Index>(c), m.cols() - 2);
  const double fr = r - static_cast<double>(r0);
  const double fc = c - static_cast<double>(c0);
  return (1 - fr) * (1 - fc) * m(r0, c0) + (1 - fr) * fc * m(r0, c0 + 1) +
         fr * (1 - fc) * m(r0 + 1, c0) + fr * fc * m(r0 + 1, c0 + 1);
}

// ---------------------------------------------------------------------------
// Zero-dimensional persistence by literal threshold sweep: at each distinct
// value, rebuild the components of the thresholded set with BFS and track
// class merges. Classes are keyed by (birth value, smallest creation pixel).

struct OracleClass {
  double birth;
  long creation_index;
};

inline ssmx::PersistenceDiagram sweep_persistence(const std::vector<double>& values,
                                                  long rows, long cols,
                                                  bool eight_connected) {
  const long n = rows * cols;
  std::vector<double> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<long> label(static_cast<size_t>(n), -1);  // class id per active pixel
  std::vector<OracleClass> classes;
  ssmx::PersistenceDiagram diagram;

  for (double v : distinct) {
    // Recompute components of {f <= v} from scratch.
    std::vector<char> active(static_cast<size_t>(n), 0);
    for (long i = 0; i < n; ++i) active[static_cast<size_t>(i)] = values[static_cast<size_t>(i)] <= v;

    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (long start = 0; start < n; ++start) {
      if (!active[static_cast<size_t>(start)] || seen[static_cast<size_t>(start)]) continue;
      std::vector<long> component;
      std::queue<long> frontier;
      frontier.push(start);
      seen[static_cast<size_t>(start)] = 1;
      while (!frontier.empty()) {
        const long p = frontier.front();
        frontier.pop();
        component.push_back(p);
        const long r = p / cols, c = p % cols;
        for (long dr = -1; dr <= 1; ++dr) {
          for (long dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (!eight_connected && dr != 0 && dc != 0) continue;
            const long rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
            const long q = rr * cols + cc;
            if (!active[static_cast<size_t>(q)] || seen[static_cast<size_t>(q)]) continue;
            seen[static_cast<size_t>(q)] = 1;
            frontier.push(q);
          }
        }
      }

      std::set<long> present;
      for (long p : component) {
        if (label[static_cast<size_t>(p)] >= 0) present.insert(label[static_cast<size_t>(p)]);
      }
      long survivor;
      if (present.empty()) {
        long creation = -1;
        for (long p : component) {
          if (values[static_cast<size_t>(p)] == v && (creation < 0 || p < creation)) creation = p;
        }
        classes.push_back({v, creation});
        survivor = static_cast<long>(classes.size()) - 1;
      } else {
        survivor = *present.begin();
        for (long id : present) {
          const auto key = std::pair<double, long>(classes[static_cast<size_t>(id)].birth,
                                                   classes[static_cast<size_t>(id)].creation_index);
          const auto skey = std::pair<double, long>(classes[static_cast<size_t>(survivor)].birth,
                                                    classes[static_cast<size_t>(survivor)].creation_index);
          if (key < skey) survivor = id;
        }
        for (long id : present) {
          if (id == survivor) continue;
          if (v > classes[static_cast<size_t>(id)].birth) {
            diagram.points.push_back({classes[static_cast<size_t>(id)].birth, v, false});
          }
        }
      }
      for (long p : component) label[static_cast<size_t>(p)] = survivor;
    }
  }

  diagram.points.push_back({distinct.front(), distinct.back(), true});
  return diagram;
}

inline ssmx::PersistenceDiagram persistence_1d_brute(const Vector& signal) {
  std::vector<double> values(signal.data(), signal.data() + signal.size());
  // A 1-D signal is a 1 x N image whose 8-neighborhood degenerates to the
  // left/right neighbors.
  return sweep_persistence(values, 1, signal.size(), true);
}

inline ssmx::PersistenceDiagram image_persistence_brute(const Matrix& image,
                                                        ssmx::Filtration direction) {
  std::vector<double> values;
  values.reserve(static_cast<size_t>(image.size()));
  const bool negate = direction == ssmx::Filtration::Superlevel;
  for (Index r = 0; r < image.rows(); ++r) {
    for (Index c = 0; c < image.cols(); ++c) {
      values.push_back(negate ? -image(r, c) : image(r, c));
    }
  }
  ssmx::PersistenceDiagram diagram = sweep_persistence(values, image.rows(), image.cols(), true);
  if (negate) {
    for (auto& pt : diagram.points) {
      const double b = pt.birth, d = pt.death;
      pt.birth = -d;
      pt.death = -b;
    }
  }
  return diagram;
}

// Sorted (birth, death, essential) triples for multiset comparison.
inline std::vector<std::tuple<double, double, bool>> canonical(const ssmx::PersistenceDiagram& d) {
  std::vector<std::tuple<double, double, bool>> out;
  for (const auto& pt : d.points) out.emplace_back(pt.birth, pt.death, pt.essential);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Wasserstein / bottleneck by exhaustive matching enumeration (<= ~6 points).

inline double combine(double acc, double term, double p) {
  return std::isinf(p) ? std::max(acc, term) : acc + std::pow(term, p);
}

inline double matching_enumerate(const std::vector<ssmx::DiagramPoint>& a,
                                 const std::vector<ssmx::DiagramPoint>& b,
                                 std::vector<char>& used, size_t i, double acc,
                                 bool allow_diagonal, double p) {
  if (i == a.size()) {
    double total = acc;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (!allow_diagonal) return kInf;
      total = combine(total, (b[j].death - b[j].birth) / 2.0, p);
    }
    return total;
  }
  double best = kInf;
  for (size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    const double d = std::max(std::abs(a[i].birth - b[j].birth),
                              std::abs(a[i].death - b[j].death));
    used[j] = 1;
    best = std::min(best, matching_enumerate(a, b, used, i + 1, combine(acc, d, p),
                                             allow_diagonal, p));
    used[j] = 0;
  }
  if (allow_diagonal) {
    const double d = (a[i].death - a[i].birth) / 2.0;
    best = std::min(best, matching_enumerate(a, b, used, i + 1, combine(acc, d, p),
                                             allow_diagonal, p));
  }
  return best;
}

inline double wasserstein_brute(const ssmx::PersistenceDiagram& d1,
                                const ssmx::PersistenceDiagram& d2, double p) {
  std::vector<ssmx::DiagramPoint> fin1, fin2, ess1, ess2;
  for (const auto& pt : d1.points) (pt.essential ? ess1 : fin1).push_back(pt);
  for (const auto& pt : d2.points) (pt.essential ? ess2 : fin2).push_back(pt);

  std::vector<char> used(fin2.size(), 0);
  const double init = std::isinf(p) ? 0.0 : 0.0;
  const double fin = matching_enumerate(fin1, fin2, used, 0, init, true, p);
  std::vector<char> used_e(ess2.size(), 0);
  const double ess = matching_enumerate(ess1, ess2, used_e, 0, init,
                                        ess1.size() != ess2.size(), p);
  if (std::isinf(p)) return std::max(fin, ess);
  return std::pow(fin + ess, 1.0 / p);
}

}  // namespace oracles
