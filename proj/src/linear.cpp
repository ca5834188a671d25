#include "ntsense/linear.hpp"

#include <Eigen/Dense>

#include "ntsense/errors.hpp"

namespace ntsense {

LinearModel fit_linear(const Columns& data) {
  const std::size_t n = data.rows();
  const std::size_t p = data.cols();
  if (n <= p) {
    throw EmptyInput("least squares needs more rows than features");
  }

  Eigen::MatrixXd design(n, p + 1);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          data.features[j][i];
    }
  }
  design.col(static_cast<Eigen::Index>(p)).setOnes();
  const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(
      data.targets.data(), static_cast<Eigen::Index>(n));

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(p + 1)) {
    throw RankDeficient("design matrix rank " + std::to_string(qr.rank()) +
                        " < " + std::to_string(p + 1) + " (collinear columns)");
  }
  const Eigen::VectorXd solution = qr.solve(target);

  LinearModel model;
  model.weights.assign(solution.data(), solution.data() + p);
  model.intercept = solution(static_cast<Eigen::Index>(p));
  return model;
}

LinearModel fit_linear(const Dataset& train) {
  return fit_linear(to_columns(train));
}

}  // namespace ntsense
