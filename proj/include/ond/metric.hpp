#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ond/errors.hpp"

namespace ond {

using PointId = std::size_t;

inline double pow2(int j) { return std::ldexp(1.0, j); }

// floor(log2 a) for a > 0, computed from the binary exponent so that the
// class boundaries are exact powers of two.
inline std::optional<int> distance_class(double a) {
  if (!(a > 0.0)) return std::nullopt;
  return std::ilogb(a);
}

// Immutable finite metric, normalized so the smallest positive distance is 1.
class MetricSpace {
 public:
  MetricSpace() = default;

  std::size_t size() const noexcept { return n_; }
  double operator()(PointId u, PointId v) const { return d_[u * n_ + v]; }
  // Factor applied to the raw input distances.
  double scale() const noexcept { return scale_; }
  const std::vector<double>& data() const noexcept { return d_; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v) out[u][v] = (*this)(u, v);
    return out;
  }

  double diameter() const {
    double best = 0.0;
    for (double x : d_) best = std::max(best, x);
    return best;
  }

  double diameter(const std::vector<PointId>& subset) const {
    double best = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a)
      for (std::size_t b = a + 1; b < subset.size(); ++b)
        best = std::max(best, (*this)(subset[a], subset[b]));
    return best;
  }

  // Submetric on `points`, in the given order, without renormalizing.
  MetricSpace restrict_to(const std::vector<PointId>& points) const {
    MetricSpace m;
    m.n_ = points.size();
    m.scale_ = scale_;
    m.d_.resize(m.n_ * m.n_);
    for (std::size_t a = 0; a < m.n_; ++a)
      for (std::size_t b = 0; b < m.n_; ++b) m.d_[a * m.n_ + b] = (*this)(points[a], points[b]);
    return m;
  }

  friend MetricSpace build_metric(const std::vector<std::vector<double>>& matrix);

 private:
  std::size_t n_ = 0;
  double scale_ = 1.0;
  std::vector<double> d_;
};

inline MetricSpace build_metric(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != n) throw Error(ErrorCode::InvalidInput, "distance matrix is not square");
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const double x = matrix[u][v];
      if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, "non-finite distance");
      if (x < 0.0) throw Error(ErrorCode::NegativeDistance, "d(" + std::to_string(u) + "," +
                                                                std::to_string(v) + ") < 0");
    }
    if (matrix[u][u] != 0.0) throw Error(ErrorCode::InvalidInput, "nonzero diagonal entry");
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (matrix[u][v] != matrix[v][u])
        throw Error(ErrorCode::AsymmetricInput,
                    "d(" + std::to_string(u) + "," + std::to_string(v) + ") != d(" +
                        std::to_string(v) + "," + std::to_string(u) + ")");

  // Relative slack absorbs rounding in distances computed from coordinates.
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = u + 1; w < n; ++w) {
      const double direct = matrix[u][w];
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || v == w) continue;
        const double via = matrix[u][v] + matrix[v][w];
        if (direct > via + 1e-9 * std::max(direct, via)) throw TriangleViolation(u, w, v);
      }
    }

  double min_positive = 0.0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const double x = matrix[u][v];
      if (x > 0.0 && (min_positive == 0.0 || x < min_positive)) min_positive = x;
    }
  const double divisor = min_positive > 0.0 ? min_positive : 1.0;

  MetricSpace m;
  m.n_ = n;
  m.scale_ = 1.0 / divisor;
  m.d_.resize(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) m.d_[u * n + v] = matrix[u][v] / divisor;
  return m;
}

// Euclidean distances between coordinate vectors of a common dimension.
inline MetricSpace build_metric_from_points(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    if (points[u].size() != points[0].size())
      throw Error(ErrorCode::InvalidInput, "points have mixed dimensions");
    for (double c : points[u])
      if (!std::isfinite(c)) throw Error(ErrorCode::InvalidInput, "non-finite coordinate");
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      double s = 0.0;
      for (std::size_t c = 0; c < points[u].size(); ++c) {
        const double diff = points[u][c] - points[v][c];
        s += diff * diff;
      }
      matrix[u][v] = matrix[v][u] = std::sqrt(s);
    }
  return build_metric(matrix);
}

}  // namespace ond
