#include "privutil/types.hpp"

#include <cmath>
#include <sstream>

namespace privutil {

std::vector<std::string> default_labels(const std::string& prefix, long n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

prob_vec prob_vec::validated(Eigen::VectorXd mass, std::vector<std::string> labels,
                             bool strictly_positive, const std::string& what) {
  if (labels.empty()) labels = default_labels("s", mass.size());
  if (static_cast<long>(labels.size()) != mass.size())
    throw validation_error(what + ": " + std::to_string(labels.size()) +
                           " labels for " + std::to_string(mass.size()) + " entries");
  for (long i = 0; i < mass.size(); ++i) {
    if (!(mass(i) >= 0.0))
      throw validation_error(what + ": negative mass at '" + labels[i] + "' (" +
                             std::to_string(mass(i)) + ")");
    if (strictly_positive && mass(i) <= 0.0)
      throw validation_error(what + ": zero mass at '" + labels[i] +
                             "' but strict positivity is required");
  }
  const double sum = mass.sum();
  if (std::abs(sum - 1.0) > kSumTol)
    throw validation_error(what + ": mass sums to " + std::to_string(sum) +
                           ", expected 1 within 1e-9");
  return prob_vec{std::move(mass), std::move(labels)};
}

joint_dist::joint_dist(Eigen::MatrixXd matrix, std::vector<std::string> x_labels,
                       std::vector<std::string> y_labels)
    : matrix_(std::move(matrix)),
      x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)) {
  if (x_labels_.empty()) x_labels_ = default_labels("x", matrix_.rows());
  if (y_labels_.empty()) y_labels_ = default_labels("y", matrix_.cols());
  if (static_cast<long>(x_labels_.size()) != matrix_.rows() ||
      static_cast<long>(y_labels_.size()) != matrix_.cols())
    throw validation_error("joint: label counts do not match matrix shape");
  double sum = 0.0;
  for (long x = 0; x < matrix_.rows(); ++x)
    for (long y = 0; y < matrix_.cols(); ++y) {
      const double v = matrix_(x, y);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw validation_error("joint: invalid entry at row '" + x_labels_[x] +
                               "', column '" + y_labels_[y] + "'");
      sum += v;
    }
  if (std::abs(sum - 1.0) > kSumTol)
    throw validation_error("joint: entries sum to " + std::to_string(sum) +
                           ", expected 1 within 1e-9");
  px_ = matrix_.rowwise().sum();
  py_ = matrix_.colwise().sum().transpose();
  for (long x = 0; x < px_.size(); ++x)
    if (px_(x) <= 0.0)
      throw validation_error("joint: marginal P_X('" + x_labels_[x] + "') is zero");
  for (long y = 0; y < py_.size(); ++y)
    if (py_(y) <= 0.0)
      throw validation_error("joint: marginal P_Y('" + y_labels_[y] + "') is zero");
}

Eigen::MatrixXd joint_dist::x_given_y() const {
  Eigen::MatrixXd out = matrix_;
  for (long y = 0; y < ny(); ++y) out.col(y) /= py_(y);
  return out;
}

Eigen::MatrixXd joint_dist::y_given_x() const {
  Eigen::MatrixXd out = matrix_.transpose();
  for (long x = 0; x < nx(); ++x) out.col(x) /= px_(x);
  return out;
}

joint_dist joint_dist::transposed() const {
  return joint_dist(matrix_.transpose(), y_labels_, x_labels_);
}

joint_dist joint_dist::bsc(double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw validation_error("bsc: theta must lie in [0, 1]");
  Eigen::MatrixXd m(2, 2);
  m << (1 - theta) / 2, theta / 2, theta / 2, (1 - theta) / 2;
  return joint_dist(m, {"0", "1"}, {"0", "1"});
}

joint_dist joint_dist::erasure(double theta) {
  if (theta <= 0.0 || theta >= 1.0)
    throw validation_error("erasure: theta must lie in (0, 1)");
  Eigen::MatrixXd m(2, 3);
  m << (1 - theta) / 2, theta / 2, 0.0, 0.0, theta / 2, (1 - theta) / 2;
  return joint_dist(m, {"0", "1"}, {"0", "e", "1"});
}

kernel kernel::validated(Eigen::MatrixXd matrix, const std::string& what) {
  for (long c = 0; c < matrix.cols(); ++c) {
    double sum = 0.0;
    for (long r = 0; r < matrix.rows(); ++r) {
      if (!(matrix(r, c) >= 0.0))
        throw validation_error(what + ": negative entry in column " + std::to_string(c));
      sum += matrix(r, c);
    }
    if (std::abs(sum - 1.0) > kSumTol)
      throw validation_error(what + ": column " + std::to_string(c) + " sums to " +
                             std::to_string(sum) + ", expected 1 within 1e-9");
  }
  return kernel{std::move(matrix)};
}

tri_joint::tri_joint(long n0, long n1, long n2)
    : dims_{n0, n1, n2},
      data_(static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1) *
            static_cast<std::size_t>(n2), 0.0) {
  if (n0 <= 0 || n1 <= 0 || n2 <= 0)
    throw validation_error("tri_joint: dimensions must be positive");
}

double tri_joint::total() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

Eigen::VectorXd tri_joint::marginal(int axis) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dims_[axis]);
  for (long i = 0; i < dims_[0]; ++i)
    for (long j = 0; j < dims_[1]; ++j)
      for (long k = 0; k < dims_[2]; ++k) {
        const long idx[3] = {i, j, k};
        out(idx[axis]) += at(i, j, k);
      }
  return out;
}

Eigen::MatrixXd tri_joint::pair_marginal(int axis_a, int axis_b) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dims_[axis_a], dims_[axis_b]);
  for (long i = 0; i < dims_[0]; ++i)
    for (long j = 0; j < dims_[1]; ++j)
      for (long k = 0; k < dims_[2]; ++k) {
        const long idx[3] = {i, j, k};
        out(idx[axis_a], idx[axis_b]) += at(i, j, k);
      }
  return out;
}

void tri_joint::validate(const std::string& what) const {
  for (double v : data_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw validation_error(what + ": invalid tensor entry");
  const double s = total();
  if (std::abs(s - 1.0) > kSumTol)
    throw validation_error(what + ": tensor sums to " + std::to_string(s) +
                           ", expected 1 within 1e-9");
}

prioritized_joint::prioritized_joint(tri_joint tensor, std::vector<std::string> x1_labels,
                                     std::vector<std::string> x2_labels,
                                     std::vector<std::string> y_labels)
    : tensor_(std::move(tensor)),
      x1_labels_(std::move(x1_labels)),
      x2_labels_(std::move(x2_labels)),
      y_labels_(std::move(y_labels)) {
  if (x1_labels_.empty()) x1_labels_ = default_labels("a", tensor_.dim(0));
  if (x2_labels_.empty()) x2_labels_ = default_labels("b", tensor_.dim(1));
  if (y_labels_.empty()) y_labels_ = default_labels("y", tensor_.dim(2));
  tensor_.validate("prioritized joint");
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::VectorXd m = tensor_.marginal(axis);
    for (long i = 0; i < m.size(); ++i)
      if (m(i) <= 0.0)
        throw validation_error("prioritized joint: axis " + std::to_string(axis) +
                               " marginal has a zero entry at index " + std::to_string(i));
  }
}

}  // namespace privutil
