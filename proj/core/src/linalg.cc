#include "linalg.h"

#include <Eigen/Dense>
#include <cmath>

#include "mrplab/errors.h"

namespace mrplab::detail {
namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kMinRcond = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr double kSvdCutoff = 1e-12;

Eigen::Map<const Matrix> as_matrix(std::size_t n, const std::vector<double>& m) {
  return Eigen::Map<const Matrix>(m.data(), Eigen::Index(n), Eigen::Index(n));
}

bool try_lu(std::size_t n, const std::vector<double>& m, const std::vector<double>& b,
            std::vector<double>& out) {
  auto a = as_matrix(n, m);
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), Eigen::Index(n));
  Eigen::PartialPivLU<Matrix> lu(a);
  if (!(lu.rcond() > kMinRcond)) return false;
  Eigen::VectorXd x = lu.solve(rhs);
  const double res = (a * x - rhs).lpNorm<Eigen::Infinity>();
  const double scale = rhs.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(res) || res > kResidualTol * scale) return false;
  out.assign(x.data(), x.data() + n);
  return true;
}

}  // namespace

std::vector<double> solve_exact(std::size_t n, const std::vector<double>& m,
                                const std::vector<double>& b) {
  std::vector<double> x;
  if (n == 0) return x;
  if (!try_lu(n, m, b, x))
    throw NumericalError("value system is singular or ill-conditioned");
  return x;
}

std::vector<double> solve_or_pinv(std::size_t n, const std::vector<double>& m,
                                  const std::vector<double>& b) {
  std::vector<double> x;
  if (n == 0) return x;
  if (try_lu(n, m, b, x)) return x;
  Matrix a = as_matrix(n, m);
  Eigen::Map<const Eigen::VectorXd> rhs(b.data(), Eigen::Index(n));
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kSvdCutoff * (sv.size() ? sv(0) : 0.0);
  Eigen::VectorXd utb = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < sv.size(); ++i) utb(i) = sv(i) > cutoff ? utb(i) / sv(i) : 0.0;
  Eigen::VectorXd sol = svd.matrixV() * utb;
  x.assign(sol.data(), sol.data() + n);
  return x;
}

std::vector<double> identity_minus(std::size_t n, const std::vector<double>& p, double g) {
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) m[i] = -g * p[i];
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] += 1.0;
  return m;
}

}  // namespace mrplab::detail
