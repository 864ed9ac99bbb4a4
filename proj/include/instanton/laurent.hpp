#pragma once

// Truncated Laurent series sum_{k=v}^{v+n-1} c_k s^k in one variable.
// Used for expansions of rational potentials about finite points and infinity.

#include <algorithm>
#include <cmath>
#include <vector>

#include "instanton/errors.hpp"

namespace instanton {

class Laurent {
 public:
  Laurent() = default;
  Laurent(double c, int terms) : val_(0), c_(terms, 0.0) { c_[0] = c; normalize(); }
  Laurent(int valuation, std::vector<double> coeffs) : val_(valuation), c_(std::move(coeffs)) { normalize(); }

  static Laurent variable(int terms) {  // s
    std::vector<double> c(terms, 0.0);
    c[0] = 1.0;
    return Laurent(1, c);
  }
  static Laurent shifted(double x0, int terms) {  // x0 + s
    std::vector<double> c(terms, 0.0);
    c[0] = x0;
    if (terms > 1) c[1] = 1.0;
    return Laurent(0, c);
  }
  static Laurent inverse_variable(int terms) {  // 1/u about u = 0
    std::vector<double> c(terms, 0.0);
    c[0] = 1.0;
    return Laurent(-1, c);
  }

  int valuation() const { return val_; }
  int terms() const { return static_cast<int>(c_.size()); }
  int order() const { return val_ + terms(); }  // first omitted power
  double operator[](int k) const {
    const int i = k - val_;
    return (i >= 0 && i < terms()) ? c_[i] : 0.0;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    const int lo = std::min(a.val_, b.val_);
    const int hi = std::min(a.order(), b.order());
    std::vector<double> c(std::max(hi - lo, 0));
    for (int k = lo; k < hi; ++k) c[k - lo] = a[k] + b[k];
    return Laurent(lo, c);
  }
  friend Laurent operator-(const Laurent& a) {
    Laurent r = a;
    for (double& x : r.c_) x = -x;
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    const int n = std::min(a.terms(), b.terms());
    std::vector<double> c(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Laurent(a.val_ + b.val_, c);
  }
  friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.reciprocal(); }

  Laurent reciprocal() const {
    if (c_.empty() || c_[0] == 0.0) throw DomainError("Laurent reciprocal of zero series");
    const int n = terms();
    std::vector<double> r(n, 0.0);
    r[0] = 1.0 / c_[0];
    for (int k = 1; k < n; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += c_[j] * r[k - j];
      r[k] = -s / c_[0];
    }
    return Laurent(-val_, r);
  }

  friend Laurent operator+(const Laurent& a, double b) { return a + Laurent(b, a.order() > 0 ? a.order() : 1); }
  friend Laurent operator+(double a, const Laurent& b) { return b + a; }
  friend Laurent operator-(const Laurent& a, double b) { return a + (-b); }
  friend Laurent operator-(double a, const Laurent& b) { return (-b) + a; }
  friend Laurent operator*(const Laurent& a, double b) {
    Laurent r = a;
    for (double& x : r.c_) x *= b;
    return r;
  }
  friend Laurent operator*(double a, const Laurent& b) { return b * a; }
  friend Laurent operator/(const Laurent& a, double b) { return a * (1.0 / b); }
  friend Laurent operator/(double a, const Laurent& b) { return b.reciprocal() * a; }

 private:
  // strip leading coefficients that vanish exactly, keeping the absolute order
  void normalize() {
    std::size_t z = 0;
    while (z + 1 < c_.size() && c_[z] == 0.0) ++z;
    if (z > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(z));
      val_ += static_cast<int>(z);
    }
  }

  int val_ = 0;
  std::vector<double> c_{0.0};
};

}  // namespace instanton
