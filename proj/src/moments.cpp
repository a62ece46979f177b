#include "homophily/moments.hpp"

#include <algorithm>
#include <cmath>

namespace homophily {

namespace {

// a^(q) / b^(q), taken as 0 whenever the numerator vanishes (this covers the
// n < q cases where the denominator is also 0).
Rational falling_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  const BigInt num = falling_factorial(a, q);
  if (num == 0) return Rational(0);
  return ratio(num, falling_factorial(b, q));
}

}  // namespace

ExactSecondOrder exact_second_order(const GraphSummary& s, const Profile& p) {
  const std::size_t k = p.classes();
  ExactSecondOrder out;
  out.mbar.assign(k, Rational(0));
  out.var.assign(k, Rational(0));
  out.u.assign(k, Rational(0));
  out.q.assign(k, Rational(0));
  out.cov.assign(k, std::vector<Rational>(k, Rational(0)));
  out.gamma = gamma_exact(s);

  const BigInt m = big(s.m);
  const BigInt edge_pairs = s.m > 0 ? BigInt(m * (m - 1) / 2) : BigInt(0);
  const BigInt pi3 = big(s.pi3);

  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t c = p.size(static_cast<ClassId>(i));
    out.u[i] = Rational(falling_factorial(c, 2));
    if (s.n < 2) continue;
    const Rational kappa = falling_ratio(c, s.n, 2);
    const Rational mean = Rational(m) * kappa;
    const Rational r3 = falling_ratio(c, s.n, 3);
    const Rational r4 = falling_ratio(c, s.n, 4);
    out.mbar[i] = mean;
    out.var[i] = mean * (1 - mean) + 2 * ((r3 - r4) * Rational(pi3) + r4 * Rational(edge_pairs));
  }

  for (std::size_t i = 0; i < k; ++i) {
    out.cov[i][i] = out.var[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      Rational c;
      if (out.gamma) {
        c = *out.gamma * out.u[i] * out.u[j];
      } else {
        // No two disjoint edges exist on fewer than four vertices, so
        // E[M_i M_j] = 0 for i != j.
        c = -out.mbar[i] * out.mbar[j];
      }
      out.cov[i][j] = c;
      out.cov[j][i] = c;
    }
  }

  const Rational g = out.gamma.value_or(Rational(0));
  for (std::size_t i = 0; i < k; ++i) out.q[i] = out.var[i] - g * out.u[i] * out.u[i];
  return out;
}

std::vector<double> expected_counts(const GraphSummary& s, const Profile& p) {
  return moment_summary(s, p).mbar;
}

std::vector<double> marginal_variances(const GraphSummary& s, const Profile& p) {
  return moment_summary(s, p).var;
}

MomentSummary moment_summary(const GraphSummary& s, const Profile& p) {
  const ExactSecondOrder e = exact_second_order(s, p);
  MomentSummary out;
  out.mbar.reserve(e.mbar.size());
  out.var.reserve(e.var.size());
  for (const Rational& x : e.mbar) out.mbar.push_back(to_double(x));
  for (const Rational& x : e.var) out.var.push_back(to_double(x));
  return out;
}

std::optional<Eigen::MatrixXd> rank_one_inverse(const Eigen::VectorXd& d, double gamma,
                                                const Eigen::VectorXd& u, double pivot_tol) {
  const Eigen::Index k = d.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(d[i] > pivot_tol)) return std::nullopt;
  }
  const Eigen::VectorXd a = u.cwiseQuotient(d);
  const double denom = 1.0 + gamma * u.dot(a);
  if (!(denom > kDegeneracyTolerance)) return std::nullopt;
  Eigen::MatrixXd inv = -(gamma / denom) * (a * a.transpose());
  inv.diagonal() += d.cwiseInverse();
  return inv;
}

CovarianceStructure covariance_structure(const GraphSummary& s, const Profile& p) {
  return covariance_structure(exact_second_order(s, p));
}

CovarianceStructure covariance_structure(const ExactSecondOrder& e) {
  const auto k = static_cast<Eigen::Index>(e.var.size());
  CovarianceStructure cs;
  if (e.gamma) cs.gamma = to_double(*e.gamma);
  cs.u.resize(k);
  cs.q.resize(k);
  cs.sigma.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    cs.u[i] = to_double(e.u[i]);
    cs.q[i] = to_double(e.q[i]);
    for (Eigen::Index j = 0; j < k; ++j) cs.sigma(i, j) = to_double(e.cov[i][j]);
  }

  const double scale = k > 0 ? cs.sigma.cwiseAbs().maxCoeff() : 0.0;
  cs.tolerance = kDegeneracyTolerance * scale;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (scale > 0.0 && cs.sigma(i, i) > cs.tolerance) cs.active_set.push_back(static_cast<std::size_t>(i));
  }

  cs.corr = Eigen::MatrixXd::Zero(k, k);
  const Eigen::VectorXd sd = cs.sigma.diagonal().cwiseMax(0.0).cwiseSqrt();
  for (std::size_t i : cs.active_set) {
    for (std::size_t j : cs.active_set) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      cs.corr(a, b) = (a == b) ? 1.0 : cs.sigma(a, b) / (sd[a] * sd[b]);
    }
  }

  // With n < 4 every off-diagonal covariance vanishes (see exact_second_order),
  // so Q = diag(var) and the rank-one term drops out.
  const double g = cs.gamma.value_or(0.0);
  if (!cs.gamma && scale > 0.0) {
    const Eigen::MatrixXd off = cs.sigma - Eigen::MatrixXd(cs.sigma.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > cs.tolerance) cs.notes.push_back("nonzero covariance with n < 4");
  }

  if (scale > 0.0) cs.sigma_inv = rank_one_inverse(cs.q, g, cs.u, cs.tolerance);
  cs.degenerate = !cs.sigma_inv.has_value();
  if (scale == 0.0) {
    cs.notes.push_back("covariance matrix is zero: outcome is constant");
  } else if (cs.degenerate) {
    cs.notes.push_back("covariance matrix is singular: inverse withheld");
  }

  // Gamma restricted to the active set is again diagonal plus rank one:
  // diag(q_i / var_i) + gamma (u_i / sd_i)(u_j / sd_j)'.
  const auto na = static_cast<Eigen::Index>(cs.active_set.size());
  if (na > 0) {
    Eigen::VectorXd dq(na), du(na);
    for (Eigen::Index t = 0; t < na; ++t) {
      const auto i = static_cast<Eigen::Index>(cs.active_set[static_cast<std::size_t>(t)]);
      dq[t] = cs.q[i] / cs.sigma(i, i);
      du[t] = cs.u[i] / sd[i];
    }
    if (auto inv = rank_one_inverse(dq, g, du, kDegeneracyTolerance)) {
      Eigen::MatrixXd full = Eigen::MatrixXd::Zero(k, k);
      for (Eigen::Index a = 0; a < na; ++a) {
        for (Eigen::Index b = 0; b < na; ++b) {
          full(static_cast<Eigen::Index>(cs.active_set[static_cast<std::size_t>(a)]),
               static_cast<Eigen::Index>(cs.active_set[static_cast<std::size_t>(b)])) = (*inv)(a, b);
        }
      }
      cs.corr_inv = std::move(full);
    } else {
      cs.notes.push_back("correlation matrix on the active set is singular");
    }
  }
  return cs;
}

}  // namespace homophily
