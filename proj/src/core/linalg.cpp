#include "linalg.hpp"

namespace interkernel::linalg {

namespace {

double cutoff(const Eigen::VectorXd& sv) {
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  return kRankTolerance * std::max(1.0, top);
}

}  // namespace

int rank(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double tol = cutoff(sv);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > tol ? 1 : 0;
  return r;
}

Matrix orth(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return empty(a.rows());
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double tol = cutoff(sv);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& a) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Matrix::Identity(n, n);
  if (n == 0) return Matrix(0, 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = cutoff(sv);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

Matrix sum(const Matrix& a, const Matrix& b) {
  Matrix both(a.rows(), a.cols() + b.cols());
  both << a, b;
  return orth(both);
}

Matrix intersection(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return empty(a.rows());
  const Matrix oa = orth(a);
  const Matrix ob = orth(b);
  Matrix stacked(oa.rows(), oa.cols() + ob.cols());
  stacked << oa, -ob;
  const Matrix z = null_space(stacked);
  if (z.cols() == 0) return empty(a.rows());
  return orth(oa * z.topRows(oa.cols()));
}

}  // namespace interkernel::linalg
