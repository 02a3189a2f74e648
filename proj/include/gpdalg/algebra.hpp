#ifndef GPDALG_ALGEBRA_HPP
#define GPDALG_ALGEBRA_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gpdalg/bisection.hpp"
#include "gpdalg/groupoid.hpp"

namespace gpdalg {

using Complex = std::complex<double>;

/// An element of the convolution *-algebra C_c(G): a dense complex vector
/// indexed by the arrows of a fixed groupoid. Value semantics throughout.
class AlgElem {
public:
  AlgElem(const Groupoid& g) : g_(&g), c_(g.num_arrows(), Complex(0, 0)) {}
  AlgElem(const Groupoid& g, std::vector<Complex> coeffs)
      : g_(&g), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != g.num_arrows())
      throw std::invalid_argument("AlgElem: coefficient count != arrow count");
  }

  const Groupoid& groupoid() const { return *g_; }
  Complex operator[](int x) const { return c_[x]; }
  Complex& operator[](int x) { return c_[x]; }
  const std::vector<Complex>& coeffs() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }

  AlgElem& operator+=(const AlgElem& o) {
    check_context(o);
    for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  AlgElem& operator-=(const AlgElem& o) {
    check_context(o);
    for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  AlgElem& operator*=(Complex z) {
    for (auto& v : c_) v *= z;
    return *this;
  }
  friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
  friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
  friend AlgElem operator*(Complex z, AlgElem a) { return a *= z; }

  void check_context(const AlgElem& o) const {
    if (g_ != o.g_)
      throw std::invalid_argument("AlgElem: mismatched groupoid contexts");
  }

  double sup_norm() const {
    double m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Support at tolerance: arrows with |f(x)| > tol.
  std::vector<int> support(double tol = 1e-12) const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (std::abs(c_[x]) > tol) out.push_back(x);
    return out;
  }

private:
  const Groupoid* g_;
  std::vector<Complex> c_;
};

inline double dist_sup(const AlgElem& a, const AlgElem& b) {
  a.check_context(b);
  double m = 0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool approx_equal(const AlgElem& a, const AlgElem& b, double tol = 1e-9) {
  return dist_sup(a, b) <= tol;
}

/// (f1 * f2)(x) = sum_{y in G_{s(x)}} f1(x y^-1) f2(y)
inline AlgElem convolve(const Groupoid& g, const AlgElem& f1, const AlgElem& f2) {
  f1.check_context(f2);
  if (&f1.groupoid() != &g)
    throw std::invalid_argument("convolve: element not over this groupoid");
  AlgElem out(g);
  for (int x = 0; x < g.num_arrows(); ++x) {
    Complex acc(0, 0);
    for (int y : g.source_fiber(g.source(x)))
      acc += f1[g.compose(x, g.inv(y))] * f2[y];
    out[x] = acc;
  }
  return out;
}

/// f*(x) = conj(f(x^-1))
inline AlgElem involution(const Groupoid& g, const AlgElem& f) {
  AlgElem out(g);
  for (int x = 0; x < g.num_arrows(); ++x) out[x] = std::conj(f[g.inv(x)]);
  return out;
}

/// ||f||_I = max( sup_u sum_{x in G_u} |f(x)| , sup_u sum_{x in G^u} |f(x)| )
inline double i_norm(const Groupoid& g, const AlgElem& f) {
  double m = 0;
  for (int u : g.units()) {
    double s = 0, r = 0;
    for (int x : g.source_fiber(u)) s += std::abs(f[x]);
    for (int x : g.range_fiber(u)) r += std::abs(f[x]);
    m = std::max(m, std::max(s, r));
  }
  return m;
}

/// 1_B for a bisection B.
inline AlgElem indicator(const Groupoid& g, const Bisection& b) {
  AlgElem out(g);
  for (int x : b) out[x] = Complex(1, 0);
  return out;
}

/// The multiplicative unit 1_{G^(0)}.
inline AlgElem unit_element(const Groupoid& g) {
  AlgElem out(g);
  for (int u : g.units()) out[u] = Complex(1, 0);
  return out;
}

}  // namespace gpdalg

#endif  // GPDALG_ALGEBRA_HPP
