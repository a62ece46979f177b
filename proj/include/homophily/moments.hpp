#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "homophily/coloring.hpp"
#include "homophily/graph.hpp"
#include "homophily/rational.hpp"

namespace homophily {

// Relative threshold below which a variance or a pivot counts as zero. Scaled
// by the largest |Sigma_ij| for covariance quantities.
inline constexpr double kDegeneracyTolerance = 1e-12;

// Closed-form first and second moments of the homophilic-count vector M
// under the uniform coloring measure, in exact arithmetic.
struct ExactSecondOrder {
  std::vector<Rational> mbar;
  std::vector<Rational> var;
  std::optional<Rational> gamma;   // absent for n < 4
  std::vector<Rational> u;         // u_i = c_i (c_i - 1)
  std::vector<Rational> q;         // q_i = var_i - gamma u_i^2 (gamma taken as 0 when absent)
  std::vector<std::vector<Rational>> cov;
};

ExactSecondOrder exact_second_order(const GraphSummary& s, const Profile& p);

struct MomentSummary {
  std::vector<double> mbar;
  std::vector<double> var;
};

std::vector<double> expected_counts(const GraphSummary& s, const Profile& p);
std::vector<double> marginal_variances(const GraphSummary& s, const Profile& p);
MomentSummary moment_summary(const GraphSummary& s, const Profile& p);

struct CovarianceStructure {
  std::optional<double> gamma;
  Eigen::VectorXd u;
  Eigen::VectorXd q;
  Eigen::MatrixXd sigma;
  // Correlation matrix on the active set; rows and columns of inactive
  // classes are zero.
  Eigen::MatrixXd corr;
  std::optional<Eigen::MatrixXd> sigma_inv;
  // Inverse of corr restricted to the active set, embedded with zeros for
  // inactive classes.
  std::optional<Eigen::MatrixXd> corr_inv;
  std::vector<std::size_t> active_set;
  double tolerance = 0.0;  // absolute threshold applied to entries of Sigma
  bool degenerate = true;  // true when sigma_inv is absent
  std::vector<std::string> notes;
};

CovarianceStructure covariance_structure(const GraphSummary& s, const Profile& p);
CovarianceStructure covariance_structure(const ExactSecondOrder& exact);

// Inverse of diag(d) + gamma * u u' by Sherman-Morrison. Returns nullopt
// when some d_i <= pivot_tol or 1 + gamma u' diag(d)^-1 u <= kDegeneracyTolerance.
std::optional<Eigen::MatrixXd> rank_one_inverse(const Eigen::VectorXd& d, double gamma,
                                                const Eigen::VectorXd& u, double pivot_tol);

}  // namespace homophily
