#ifndef PRIVUTIL_TYPES_HPP
#define PRIVUTIL_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace privutil {

// Input validation tolerance for probability mass sums.
inline constexpr double kSumTol = 1e-9;

// Thrown when an input distribution, kernel or budget fails validation.
// Inputs are never renormalized silently.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a requested computation has no feasible solution
// (e.g. an extreme point leaves the simplex, or a search is refused).
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant is violated; indicates a bug.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// All measures are computed in nats internally; conversion happens at
// reporting time only.
enum class log_base { bits, nats };

inline double to_base(double nats, log_base base) {
  return base == log_base::nats ? nats : nats / std::log(2.0);
}

inline double from_base(double value, log_base base) {
  return base == log_base::nats ? value : value * std::log(2.0);
}

inline const char* base_name(log_base base) {
  return base == log_base::nats ? "nats" : "bits";
}

std::vector<std::string> default_labels(const std::string& prefix, long n);

// A finite probability vector with symbol labels.
struct prob_vec {
  Eigen::VectorXd mass;
  std::vector<std::string> labels;

  long size() const { return mass.size(); }

  // Validates non-negativity and normalization within kSumTol.  When
  // strictly_positive is set every entry must be > 0 (marginals P_X, P_Y).
  static prob_vec validated(Eigen::VectorXd mass, std::vector<std::string> labels,
                            bool strictly_positive, const std::string& what);
};

// Joint distribution of (X, Y) on finite alphabets; rows index X, columns Y.
// Both marginals must be strictly positive.
class joint_dist {
 public:
  joint_dist(Eigen::MatrixXd matrix, std::vector<std::string> x_labels,
             std::vector<std::string> y_labels);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  long nx() const { return matrix_.rows(); }
  long ny() const { return matrix_.cols(); }
  const Eigen::VectorXd& px() const { return px_; }
  const Eigen::VectorXd& py() const { return py_; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

  // Column y holds P_{X|Y}(.|y): the leakage matrix.
  Eigen::MatrixXd x_given_y() const;
  // Column x holds P_{Y|X}(.|x).
  Eigen::MatrixXd y_given_x() const;

  joint_dist transposed() const;

  static joint_dist bsc(double theta);
  static joint_dist erasure(double theta);

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd px_, py_;
  std::vector<std::string> x_labels_, y_labels_;
};

// A conditional-probability matrix: every column is a distribution over rows.
struct kernel {
  Eigen::MatrixXd matrix;  // n_out x n_in

  long n_out() const { return matrix.rows(); }
  long n_in() const { return matrix.cols(); }

  static kernel validated(Eigen::MatrixXd matrix, const std::string& what);
};

// Dense joint distribution over three finite axes.  Used for mechanism
// joints (X, Y, U) and prioritized private data (X1, X2, Y).
class tri_joint {
 public:
  tri_joint(long n0, long n1, long n2);

  double& at(long i, long j, long k) { return data_[index(i, j, k)]; }
  double at(long i, long j, long k) const { return data_[index(i, j, k)]; }

  long dim(int axis) const { return dims_[axis]; }
  double total() const;

  Eigen::VectorXd marginal(int axis) const;
  // Marginal over the remaining axis; rows index `axis_a`, columns `axis_b`.
  Eigen::MatrixXd pair_marginal(int axis_a, int axis_b) const;
  const std::vector<double>& flat() const { return data_; }

  void validate(const std::string& what) const;

 private:
  long index(long i, long j, long k) const {
    return (i * dims_[1] + j) * dims_[2] + k;
  }
  long dims_[3];
  std::vector<double> data_;
};

// Joint distribution over (X1, X2, Y) with strictly positive marginals.
class prioritized_joint {
 public:
  prioritized_joint(tri_joint tensor, std::vector<std::string> x1_labels,
                    std::vector<std::string> x2_labels,
                    std::vector<std::string> y_labels);

  const tri_joint& tensor() const { return tensor_; }
  const std::vector<std::string>& x1_labels() const { return x1_labels_; }
  const std::vector<std::string>& x2_labels() const { return x2_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

 private:
  tri_joint tensor_;
  std::vector<std::string> x1_labels_, x2_labels_, y_labels_;
};

}  // namespace privutil

#endif  // PRIVUTIL_TYPES_HPP
