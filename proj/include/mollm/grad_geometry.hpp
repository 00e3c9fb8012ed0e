// Gradient geometry for multi-objective descent: null-space projection,
// dual vectors, the averaged common-descent direction, the min-norm
// stationarity certificate, and conflict diagnostics.
#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mollm/common.hpp"

namespace mollm {

/// A row whose residual against the rows kept before it falls below this
/// (relative to the row's own norm) is treated as linearly dependent.
inline constexpr double kRankTolerance = 1e-10;
/// A dual vector with norm below this fraction of its gradient's norm is
/// treated as numerically zero.
inline constexpr double kDegenerateDualTolerance = 1e-10;
/// Conflict threshold: d conflicts with g iff d.g > tau * |d| * |g|.
/// Exact zeros (orthogonal updates) therefore count as non-conflicts.
inline constexpr double kConflictTolerance = 1e-9;
/// Min-norm simplex solver budget.
inline constexpr int kMinNormMaxIterations = 10000;
inline constexpr double kMinNormDualityGap = 1e-10;

/// Ordered set of m objective gradients of common dimension n, one per row.
template <class Scalar>
class GradientSet {
 public:
  GradientSet(Matrix<Scalar> gradients, std::vector<std::string> labels)
      : gradients_(std::move(gradients)), labels_(std::move(labels)) {
    validate();
  }

  explicit GradientSet(Matrix<Scalar> gradients)
      : gradients_(std::move(gradients)), labels_(default_labels(gradients_.rows())) {
    validate();
  }

  /// Stacks equally sized vectors into a set; mismatched dimensions are rejected.
  static GradientSet from_vectors(const std::vector<Vector<Scalar>>& vectors,
                                  std::vector<std::string> labels) {
    if (vectors.empty()) throw ValidationError("GradientSet: empty vector list");
    Matrix<Scalar> rows(static_cast<Index>(vectors.size()), vectors.front().size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != rows.cols()) {
        throw ValidationError("GradientSet: mismatched gradient dimensions");
      }
      rows.row(static_cast<Index>(i)) = vectors[i].transpose();
    }
    return GradientSet(std::move(rows), std::move(labels));
  }

  static GradientSet from_vectors(const std::vector<Vector<Scalar>>& vectors) {
    return from_vectors(vectors, default_labels(static_cast<Index>(vectors.size())));
  }

  Index count() const { return gradients_.rows(); }
  Index dim() const { return gradients_.cols(); }
  const Matrix<Scalar>& rows() const { return gradients_; }
  auto gradient(Index i) const { return gradients_.row(i).transpose(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// fgt, KL, rt — the canonical unlearning objective order.
  static std::vector<std::string> canonical_labels() { return {"fgt", "KL", "rt"}; }

 private:
  void validate() const {
    if (gradients_.rows() < 1 || gradients_.cols() < 1) {
      throw ValidationError("GradientSet: need at least one gradient of dimension >= 1");
    }
    if (static_cast<Index>(labels_.size()) != gradients_.rows()) {
      throw ValidationError("GradientSet: label count must equal gradient count");
    }
    if (!gradients_.allFinite()) {
      throw ValidationError("GradientSet: gradients must be finite");
    }
  }

  static std::vector<std::string> default_labels(Index m) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(m));
    for (Index i = 0; i < m; ++i) out.push_back("g" + std::to_string(i));
    return out;
  }

  Matrix<Scalar> gradients_;
  std::vector<std::string> labels_;
};

/// Update direction plus the diagnostics recorded alongside it. The
/// dot_products < 0 guarantee holds for common_descent_direction outputs on
/// non-degenerate objectives; baseline directions reuse the type and record
/// whatever inner products they actually achieve.
template <class Scalar>
struct DirectionResult {
  Vector<Scalar> direction;
  Vector<Scalar> dual_norms;
  Vector<Scalar> dot_products;
  BoolArray degenerate_mask;
  bool stationary = false;
  Scalar scale_applied = Scalar(1);
};

/// Simplex weights attaining the minimum-norm convex combination of the
/// gradients, and the attained norm. residual_norm == 0 (to solver tolerance)
/// certifies Pareto stationarity.
template <class Scalar>
struct ParetoCertificate {
  Vector<Scalar> weights;
  Scalar residual_norm = Scalar(0);
};

/// v minus its least-squares reconstruction from `rows`: v - At (A At)^-1 A v,
/// where A stacks a maximal linearly independent subset of the rows, selected
/// in the given order. Empty rows give back v. The Gram matrix is factored
/// (robust Cholesky), never inverted.
template <class DerivedV, class DerivedR>
Vector<typename DerivedV::Scalar> project_to_null_space(
    const Eigen::MatrixBase<DerivedV>& v_expr, const Eigen::MatrixBase<DerivedR>& rows_expr) {
  using S = typename DerivedV::Scalar;
  Vector<S> v = v_expr;
  Matrix<S> rows = rows_expr;
  if (rows.rows() > 0 && rows.cols() != v.size()) {
    throw ValidationError("project_to_null_space: dimension mismatch between v and rows");
  }
  if (!v.allFinite() || !rows.allFinite()) {
    throw ValidationError("project_to_null_space: non-finite input");
  }
  if (rows.rows() == 0) return v;

  // Independent-subset selection by sequential Gram-Schmidt residual test.
  std::vector<Index> kept;
  Matrix<S> basis(rows.rows(), rows.cols());
  for (Index i = 0; i < rows.rows(); ++i) {
    Vector<S> r = rows.row(i).transpose();
    const S row_norm = r.norm();
    for (std::size_t k = 0; k < kept.size(); ++k) {
      r -= basis.row(static_cast<Index>(k)).dot(r) * basis.row(static_cast<Index>(k)).transpose();
    }
    const S resid_norm = r.norm();
    if (resid_norm <= S(kRankTolerance) * row_norm) continue;  // dependent or zero row
    basis.row(static_cast<Index>(kept.size())) = r.transpose() / resid_norm;
    kept.push_back(i);
  }
  if (kept.empty()) return v;

  Matrix<S> a(static_cast<Index>(kept.size()), rows.cols());
  for (std::size_t k = 0; k < kept.size(); ++k) a.row(static_cast<Index>(k)) = rows.row(kept[k]);
  const Matrix<S> gram = a * a.transpose();
  const Vector<S> coeff = gram.ldlt().solve(a * v);
  return v - a.transpose() * coeff;
}

/// Dual vector of each gradient: the gradient projected onto the null space
/// of all the others. Row i is orthogonal to every g_j, j != i, and has
/// non-negative inner product |g_i*|^2 with g_i.
template <class Scalar>
Matrix<Scalar> dual_vectors(const GradientSet<Scalar>& g) {
  const Index m = g.count();
  Matrix<Scalar> duals(m, g.dim());
  Matrix<Scalar> others(m - 1, g.dim());
  for (Index i = 0; i < m; ++i) {
    Index at = 0;
    for (Index j = 0; j < m; ++j) {
      if (j != i) others.row(at++) = g.rows().row(j);
    }
    duals.row(i) = project_to_null_space(g.gradient(i), others).transpose();
  }
  return duals;
}

/// Averaged-dual common descent direction: d = -(1/m) sum g_i*, rescaled so
/// |d| equals the smallest nonzero original gradient norm. Objectives whose
/// dual is numerically zero contribute a zero term and are flagged in
/// degenerate_mask; if every dual is zero the point is reported stationary
/// and d = 0. Before scaling, d.g_i = -(1/m)|g_i*|^2.
template <class Scalar>
DirectionResult<Scalar> common_descent_direction(const GradientSet<Scalar>& g) {
  const Index m = g.count();
  const Index n = g.dim();
  const Matrix<Scalar> duals = dual_vectors(g);

  DirectionResult<Scalar> out;
  out.dual_norms = duals.rowwise().norm();
  const Vector<Scalar> grad_norms = g.rows().rowwise().norm();
  out.degenerate_mask =
      out.dual_norms.array() <= Scalar(kDegenerateDualTolerance) * grad_norms.array();

  Vector<Scalar> raw = Vector<Scalar>::Zero(n);
  bool all_degenerate = true;
  for (Index i = 0; i < m; ++i) {
    if (out.degenerate_mask(i)) continue;
    all_degenerate = false;
    raw -= duals.row(i).transpose();
  }
  if (all_degenerate) {
    out.direction = Vector<Scalar>::Zero(n);
    out.dot_products = Vector<Scalar>::Zero(m);
    out.stationary = true;
    out.scale_applied = Scalar(1);
    return out;
  }
  raw /= static_cast<Scalar>(m);

  // A gradient that is exactly zero imposes no descent constraint; taking it
  // into the min would zero the direction (g_KL vanishes at the first
  // unlearning round, where the model still equals the reference).
  Scalar min_norm = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < m; ++i) {
    if (grad_norms(i) > Scalar(0)) min_norm = std::min(min_norm, grad_norms(i));
  }
  out.scale_applied = min_norm / raw.norm();
  out.direction = out.scale_applied * raw;
  out.dot_products = g.rows() * out.direction;
  out.stationary = false;
  return out;
}

/// Minimum-norm point of the convex hull of the gradients, parameterized by
/// simplex weights. Closed form for m <= 2; Frank-Wolfe with exact line
/// search on the Gram matrix otherwise.
template <class Scalar>
ParetoCertificate<Scalar> pareto_stationarity_measure(const GradientSet<Scalar>& g) {
  const Index m = g.count();
  ParetoCertificate<Scalar> cert;
  if (m == 1) {
    cert.weights = Vector<Scalar>::Ones(1);
    cert.residual_norm = g.rows().row(0).norm();
    return cert;
  }
  const Matrix<Scalar> gram = g.rows() * g.rows().transpose();
  if (m == 2) {
    const Scalar a = gram(0, 0) - Scalar(2) * gram(0, 1) + gram(1, 1);  // |g0 - g1|^2
    const Scalar t =
        a <= Scalar(0) ? Scalar(0.5)
                       : std::clamp((gram(1, 1) - gram(0, 1)) / a, Scalar(0), Scalar(1));
    cert.weights = Vector<Scalar>(2);
    cert.weights << t, Scalar(1) - t;
    const Scalar sq = cert.weights.dot(gram * cert.weights);
    cert.residual_norm = std::sqrt(std::max(sq, Scalar(0)));
    return cert;
  }

  Vector<Scalar> xi = Vector<Scalar>::Zero(m);
  Index start = 0;
  gram.diagonal().minCoeff(&start);
  xi(start) = Scalar(1);
  for (int it = 0; it < kMinNormMaxIterations; ++it) {
    const Vector<Scalar> y = gram * xi;
    Index towards = 0;
    const Scalar y_min = y.minCoeff(&towards);
    const Scalar value = xi.dot(y);  // xi' M xi
    const Scalar gap = Scalar(2) * (value - y_min);
    if (gap <= Scalar(kMinNormDualityGap)) break;
    const Scalar denom = value - Scalar(2) * y_min + gram(towards, towards);
    const Scalar step =
        denom <= Scalar(0) ? Scalar(1)
                           : std::clamp((value - y_min) / denom, Scalar(0), Scalar(1));
    xi *= (Scalar(1) - step);
    xi(towards) += step;
  }
  cert.weights = xi;
  const Scalar sq = xi.dot(gram * xi);
  cert.residual_norm = std::sqrt(std::max(sq, Scalar(0)));
  return cert;
}

/// Flag per objective: true iff the applied direction strictly ascends it,
/// d.g_i > tau |d| |g_i|. Orthogonal (exact zero) inner products do not count.
template <class Scalar, class Derived>
BoolArray conflict_diagnostics(const Eigen::MatrixBase<Derived>& d, const GradientSet<Scalar>& g) {
  if (d.size() != g.dim()) {
    throw ValidationError("conflict_diagnostics: direction dimension mismatch");
  }
  const Vector<Scalar> direction = d;
  const Scalar d_norm = direction.norm();
  BoolArray flags(g.count());
  for (Index i = 0; i < g.count(); ++i) {
    const Scalar dot = g.rows().row(i).dot(direction.transpose());
    flags(i) = dot > Scalar(kConflictTolerance) * d_norm * g.rows().row(i).norm();
  }
  return flags;
}

}  // namespace mollm
