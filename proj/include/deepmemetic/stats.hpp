#ifndef DEEPMEMETIC_STATS_HPP
#define DEEPMEMETIC_STATS_HPP

#include <deepmemetic/common.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace deepmemetic {

/// Rows are instances, columns are algorithms; lower values are better.
using ResultMatrix = Eigen::MatrixXd;

struct RankTable {
  Eigen::MatrixXd ranks;       // N x k, rank 1 = best, ties averaged
  Eigen::RowVectorXd mean_rank; // per algorithm

  Eigen::Index instances() const { return ranks.rows(); }
  Eigen::Index algorithms() const { return ranks.cols(); }
};

/// Ranks of the entries of `values` (1 = smallest), ties receiving the
/// average of the positions they span.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
average_ranks(const Eigen::DenseBase<Derived> &values) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return values(a) < values(b);
                   });
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ranks(n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && values(order[j + 1]) == values(order[i]))
      ++j;
    const Scalar r = static_cast<Scalar>(i + j + 2) / Scalar(2);
    for (Eigen::Index t = i; t <= j; ++t)
      ranks(order[t]) = r;
    i = j + 1;
  }
  return ranks;
}

/// Ranks every row of a result matrix independently.
template <typename Derived>
RankTable rank_rows(const Eigen::MatrixBase<Derived> &m) {
  if (m.rows() < 1 || m.cols() < 1)
    throw InvalidArgument("rank_rows needs a non-empty matrix");
  RankTable rt;
  rt.ranks.resize(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rt.ranks.row(i) =
        average_ranks(m.row(i).template cast<double>()).transpose();
  rt.mean_rank = rt.ranks.colwise().mean();
  return rt;
}

struct QuadeResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double df1 = 0.0;
  double df2 = 0.0;
};

/// Quade test: rows weighted by the rank of their range,
/// S_ij = Q_i (r_ij - (k+1)/2), F = (N-1) B / (A - B) with
/// A = sum S_ij^2, B = sum_j (sum_i S_ij)^2 / N, referred to
/// F(k-1, (N-1)(k-1)). Requires N, k >= 2. Throws DegenerateStatistic when
/// every row has zero range.
QuadeResult quade_test(const ResultMatrix &m);

struct HolmRow {
  Eigen::Index algorithm = 0;
  double z = 0.0;
  double p_value = 1.0;
  double threshold = 0.0;
  bool rejected = false;
};

/// Holm step-down over p-values: sorted ascending, the i-th (0-based) of H
/// is compared with alpha / (H - i); every hypothesis after the first
/// failure fails as well. Returns, per input position, whether it was
/// rejected and its threshold.
std::vector<HolmRow> holm_step_down(std::span<const double> p_values,
                                    double alpha);

/// Compares every algorithm with `control` by
/// z = (R_j - R_control) / sqrt(k(k+1) / (6N)) with one-sided normal
/// p-values, then applies holm_step_down. Rows are returned in ascending
/// p order and exclude the control.
std::vector<HolmRow> holm_posthoc(const RankTable &rt, Eigen::Index control,
                                  double alpha);

/// Box-plot summary; quartiles by linear interpolation between order
/// statistics.
struct BoxSummary {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
  std::vector<double> outliers; // beyond 1.5 IQR from the box
};

double quantile(std::vector<double> values, double q);
BoxSummary box_summary(std::span<const double> values);

} // namespace deepmemetic

#endif // DEEPMEMETIC_STATS_HPP
