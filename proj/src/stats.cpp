#include <deepmemetic/stats.hpp>

#include <deepmemetic/distributions.hpp>

#include <cmath>
#include <limits>

namespace deepmemetic {

QuadeResult quade_test(const ResultMatrix &m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index k = m.cols();
  if (n < 2 || k < 2)
    throw InvalidArgument("Quade test needs at least two instances and two "
                          "algorithms");
  const Eigen::VectorXd range = m.rowwise().maxCoeff() - m.rowwise().minCoeff();
  if ((range.array() == 0.0).all())
    throw DegenerateStatistic("Quade test undefined: every instance has zero "
                              "range across algorithms");
  const Eigen::VectorXd q = average_ranks(range);
  const RankTable rt = rank_rows(m);
  const double centre = (static_cast<double>(k) + 1.0) / 2.0;
  const Eigen::MatrixXd s =
      (rt.ranks.array() - centre).colwise() * q.array();
  const double a = s.squaredNorm();
  const double b = s.colwise().sum().squaredNorm() / static_cast<double>(n);

  QuadeResult res;
  res.df1 = static_cast<double>(k - 1);
  res.df2 = static_cast<double>((n - 1) * (k - 1));
  if (a - b <= 0.0) {
    res.statistic = std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
    return res;
  }
  res.statistic = static_cast<double>(n - 1) * b / (a - b);
  res.p_value = f_upper_tail(res.statistic, res.df1, res.df2);
  return res;
}

std::vector<HolmRow> holm_step_down(std::span<const double> p_values,
                                    double alpha) {
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw InvalidArgument("alpha must lie in (0, 1)");
  const std::size_t h = p_values.size();
  std::vector<std::size_t> order(h);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p_values[a] < p_values[b];
  });
  std::vector<HolmRow> rows(h);
  bool failed = false;
  for (std::size_t idx = 0; idx < h; ++idx) {
    HolmRow &row = rows[order[idx]];
    row.algorithm = static_cast<Eigen::Index>(order[idx]);
    row.p_value = p_values[order[idx]];
    row.threshold = alpha / static_cast<double>(h - idx);
    if (!failed && row.p_value <= row.threshold)
      row.rejected = true;
    else
      failed = true;
  }
  return rows;
}

std::vector<HolmRow> holm_posthoc(const RankTable &rt, Eigen::Index control,
                                  double alpha) {
  const Eigen::Index k = rt.algorithms();
  const Eigen::Index n = rt.instances();
  if (control < 0 || control >= k)
    throw InvalidArgument("control algorithm index out of range");
  if (k < 2)
    throw InvalidArgument("post-hoc comparison needs two algorithms");
  const double se = std::sqrt(static_cast<double>(k * (k + 1)) /
                              (6.0 * static_cast<double>(n)));
  std::vector<Eigen::Index> others;
  std::vector<double> z;
  std::vector<double> p;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (j == control)
      continue;
    others.push_back(j);
    z.push_back((rt.mean_rank(j) - rt.mean_rank(control)) / se);
    p.push_back(normal_upper_tail(z.back()));
  }
  auto rows = holm_step_down(p, alpha);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].algorithm = others[i];
    rows[i].z = z[i];
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const HolmRow &a, const HolmRow &b) {
                     return a.p_value < b.p_value;
                   });
  return rows;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty())
    throw InvalidArgument("quantile of an empty sample");
  if (q < 0.0 || q > 1.0)
    throw InvalidArgument("quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BoxSummary box_summary(std::span<const double> values) {
  if (values.empty())
    throw InvalidArgument("box summary of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  BoxSummary b;
  b.min = *std::min_element(v.begin(), v.end());
  b.max = *std::max_element(v.begin(), v.end());
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  b.mean = std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
  const double iqr = b.q3 - b.q1;
  for (double x : v)
    if (x < b.q1 - 1.5 * iqr || x > b.q3 + 1.5 * iqr)
      b.outliers.push_back(x);
  std::sort(b.outliers.begin(), b.outliers.end());
  return b;
}

} // namespace deepmemetic
