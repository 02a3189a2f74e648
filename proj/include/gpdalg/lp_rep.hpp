#ifndef GPDALG_LP_REP_HPP
#define GPDALG_LP_REP_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "gpdalg/algebra.hpp"
#include "gpdalg/op_norm.hpp"

namespace gpdalg {

/// Matrix of xi -> f * xi in the delta basis of l^p(G):
/// entry (x, y) = f(x y^-1) when s(x) = s(y), else 0.
inline Mat lambda_matrix(const Groupoid& g, const AlgElem& f) {
  const int n = g.num_arrows();
  Mat m = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y : g.source_fiber(g.source(x)))
      m(x, y) = f[g.compose(x, g.inv(y))];
  return m;
}

/// Restriction of lambda to the coordinate block l^p(G_u), indexed by
/// g.source_fiber(u) order.
inline Mat lambda_u_matrix(const Groupoid& g, const AlgElem& f, int u) {
  if (!g.is_unit(u)) throw std::invalid_argument("lambda_u_matrix: u is not a unit");
  const auto& fiber = g.source_fiber(u);
  const int k = static_cast<int>(fiber.size());
  Mat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m(i, j) = f[g.compose(fiber[i], g.inv(fiber[j]))];
  return m;
}

/// Right convolution by the point mass at y:
/// (rho(1_y) xi)(x) = xi(x y^-1) when s(x) = s(y), else 0.
/// Commutes with every lambda(f) and is an l^p contraction for every p.
inline Mat rho_point(const Groupoid& g, int y) {
  const int n = g.num_arrows();
  Mat m = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    if (g.source(x) == g.source(y)) m(x, g.compose(x, g.inv(y))) = 1;
  return m;
}

/// ||f||_lambda at exponent p: max over units of the block operator norm.
inline NormResult fp_norm(const Groupoid& g, const AlgElem& f, double p,
                          std::uint64_t seed = 0) {
  NormResult best;
  best.value = 0;
  best.mode = (p == 1) ? NormMode::Exact : (p == 2 ? NormMode::Svd : NormMode::Iterative);
  for (int u : g.units()) {
    NormResult r = p_op_norm(lambda_u_matrix(g, f, u), p, seed + u);
    if (r.value > best.value) {
      best.value = r.value;
      best.witness = r.witness;
      best.converged = r.converged;
    }
  }
  return best;
}

/// Symmetrized norm max{ ||f||_lambda, ||f*||_lambda }. For p = 1 this is
/// the I-norm. For p in (1, inf) the dual description max{ ||f||_p, ||f||_q }
/// is evaluated as well; disagreement beyond tolerance signals a solver bug
/// and is a hard failure.
inline NormResult sym_norm(const Groupoid& g, const AlgElem& f, double p,
                           std::uint64_t seed = 0, double tol = 1e-6) {
  if (p == 1) {
    NormResult r;
    r.value = i_norm(g, f);
    r.mode = NormMode::Exact;
    return r;
  }
  NormResult a = fp_norm(g, f, p, seed);
  NormResult b = fp_norm(g, involution(g, f), p, seed + 0x9e3779b9ull);
  NormResult res;
  res.value = std::max(a.value, b.value);
  res.mode = (a.mode == NormMode::Exact && b.mode == NormMode::Exact)
                 ? NormMode::Exact
                 : NormMode::Iterative;
  res.converged = a.converged && b.converged;

  const double q = p / (p - 1);
  NormResult c = fp_norm(g, f, q, seed + 0x85ebca6bull);
  double alt = std::max(a.value, c.value);
  if (std::abs(alt - res.value) > tol * std::max(1.0, res.value))
    throw std::runtime_error("sym_norm: the two norm descriptions disagree (" +
                             std::to_string(res.value) + " vs " + std::to_string(alt) + ")");
  return res;
}

/// Renault's j-map on matrices: j(M)(x) = (M delta_{s(x)})(x) = M(x, s(x)).
/// Requires M to lie in the image of lambda, witnessed by commutation with
/// every right convolution operator.
inline AlgElem j_map(const Groupoid& g, const Mat& m, double tol = 1e-9) {
  const int n = g.num_arrows();
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("j_map: matrix size does not match arrow count");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (int y = 0; y < n; ++y) {
    Mat r = rho_point(g, y);
    if ((m * r - r * m).cwiseAbs().maxCoeff() > tol * scale)
      throw std::invalid_argument("j_map: matrix does not commute with rho(1_" +
                                  g.name(y) + "); not in the image of lambda");
  }
  AlgElem f(g);
  for (int x = 0; x < n; ++x) f[x] = m(x, g.source(x));
  return f;
}

/// exp(f) in C_c(G), computed through the faithful representation:
/// j(exp(lambda(f))).
inline AlgElem alg_exp(const Groupoid& g, const AlgElem& f) {
  Mat e = lambda_matrix(g, f).exp();
  return j_map(g, e, 1e-6);
}

}  // namespace gpdalg

#endif  // GPDALG_LP_REP_HPP
