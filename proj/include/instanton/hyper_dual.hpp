#pragma once

// Hyper-dual numbers a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0.
// Seeding (x, 1, 1, 0) yields f, f', f' and f'' in the cross slot.

#include <cmath>
#include <complex>
#include <type_traits>

#include <Eigen/Core>

#include "instanton/errors.hpp"

namespace instanton {

template <class Scalar>
struct HyperDual {
  Scalar value{}, d1{}, d2{}, cross{};

  constexpr HyperDual() = default;
  constexpr HyperDual(Scalar v) : value(v) {}
  template <class S, class = std::enable_if_t<std::is_arithmetic_v<S>>>
  constexpr HyperDual(S v) : value(Scalar(v)) {}
  constexpr HyperDual(Scalar v, Scalar a, Scalar b, Scalar c) : value(v), d1(a), d2(b), cross(c) {}

  HyperDual& operator+=(const HyperDual& o) {
    value += o.value; d1 += o.d1; d2 += o.d2; cross += o.cross;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    value -= o.value; d1 -= o.d1; d2 -= o.d2; cross -= o.cross;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
  friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
  friend HyperDual operator-(const HyperDual& a) { return {-a.value, -a.d1, -a.d2, -a.cross}; }
  friend HyperDual operator+(const HyperDual& a) { return a; }
  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.value * b.value, a.value * b.d1 + a.d1 * b.value, a.value * b.d2 + a.d2 * b.value,
            a.value * b.cross + a.d1 * b.d2 + a.d2 * b.d1 + a.cross * b.value};
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) { return a * inverse(b); }

  friend HyperDual inverse(const HyperDual& x) {
    if (x.value == Scalar(0)) throw DomainError("hyper-dual division by zero");
    const Scalar f = Scalar(1) / x.value;
    return chain(x, f, -f * f, Scalar(2) * f * f * f);
  }

  // f(x) given f(x0), f'(x0), f''(x0)
  friend HyperDual chain(const HyperDual& x, Scalar f0, Scalar f1, Scalar f2) {
    return {f0, f1 * x.d1, f1 * x.d2, f1 * x.cross + f2 * x.d1 * x.d2};
  }

  friend bool operator==(const HyperDual& a, const HyperDual& b) {
    return a.value == b.value && a.d1 == b.d1 && a.d2 == b.d2 && a.cross == b.cross;
  }
};

template <class T> struct is_hyper_dual : std::false_type {};
template <class S> struct is_hyper_dual<HyperDual<S>> : std::true_type {};

// mixed arithmetic with plain scalars
#define INSTANTON_HD_MIXED(OP)                                                              \
  template <class S, class U, class = std::enable_if_t<std::is_convertible_v<U, S> &&      \
                                                       !is_hyper_dual<U>::value>>           \
  HyperDual<S> operator OP(const HyperDual<S>& a, const U& b) { return a OP HyperDual<S>(S(b)); } \
  template <class S, class U, class = std::enable_if_t<std::is_convertible_v<U, S> &&      \
                                                       !is_hyper_dual<U>::value>>           \
  HyperDual<S> operator OP(const U& a, const HyperDual<S>& b) { return HyperDual<S>(S(a)) OP b; }
INSTANTON_HD_MIXED(+)
INSTANTON_HD_MIXED(-)
INSTANTON_HD_MIXED(*)
INSTANTON_HD_MIXED(/)
#undef INSTANTON_HD_MIXED

template <class S> HyperDual<S> sqrt(const HyperDual<S>& x) {
  using std::sqrt;
  const S s = sqrt(x.value);
  if (s == S(0)) throw DomainError("sqrt derivative undefined at 0");
  return chain(x, s, S(0.5) / s, S(-0.25) / (s * x.value));
}
template <class S> HyperDual<S> exp(const HyperDual<S>& x) {
  using std::exp;
  const S e = exp(x.value);
  return chain(x, e, e, e);
}
template <class S> HyperDual<S> log(const HyperDual<S>& x) {
  using std::log;
  if (x.value == S(0)) throw DomainError("log of zero");
  return chain(x, log(x.value), S(1) / x.value, S(-1) / (x.value * x.value));
}
template <class S> HyperDual<S> sin(const HyperDual<S>& x) {
  using std::sin; using std::cos;
  const S s = sin(x.value);
  return chain(x, s, cos(x.value), -s);
}
template <class S> HyperDual<S> cos(const HyperDual<S>& x) {
  using std::sin; using std::cos;
  const S c = cos(x.value);
  return chain(x, c, -sin(x.value), -c);
}
template <class S> HyperDual<S> tan(const HyperDual<S>& x) {
  using std::tan;
  const S t = tan(x.value);
  const S sec2 = S(1) + t * t;
  return chain(x, t, sec2, S(2) * t * sec2);
}
template <class S> HyperDual<S> atan(const HyperDual<S>& x) {
  using std::atan;
  const S q = S(1) / (S(1) + x.value * x.value);
  return chain(x, atan(x.value), q, S(-2) * x.value * q * q);
}
template <class S> HyperDual<S> sinh(const HyperDual<S>& x) {
  using std::sinh; using std::cosh;
  const S s = sinh(x.value);
  return chain(x, s, cosh(x.value), s);
}
template <class S> HyperDual<S> cosh(const HyperDual<S>& x) {
  using std::sinh; using std::cosh;
  const S c = cosh(x.value);
  return chain(x, c, sinh(x.value), c);
}
template <class S> HyperDual<S> pow(const HyperDual<S>& x, double p) {
  using std::pow;
  if (x.value == S(0)) throw DomainError("pow derivative undefined at 0");
  const S f = pow(x.value, S(p));
  return chain(x, f, S(p) * f / x.value, S(p * (p - 1)) * f / (x.value * x.value));
}

template <class S> S value_of(const HyperDual<S>& x) { return x.value; }
template <class S> S value_of(const S& x) { return x; }

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& z) { return z.real(); }
template <class S> auto real_part(const HyperDual<S>& x) { return real_part(x.value); }

template <class T> T conj(const T& x) { return x; }
inline std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
template <class S> HyperDual<S> conj(const HyperDual<S>& x) {
  return {conj(x.value), conj(x.d1), conj(x.d2), conj(x.cross)};
}

struct Derivatives2 {
  double f, df, d2f;
};

// f, f', f'' at x; f must accept HyperDual<double>
template <class F>
Derivatives2 derive2(F&& f, double x) {
  const HyperDual<double> y = f(HyperDual<double>(x, 1.0, 1.0, 0.0));
  if (!std::isfinite(y.value) || !std::isfinite(y.d1) || !std::isfinite(y.cross))
    throw DomainError("function not defined at x=" + std::to_string(x));
  return {y.value, y.d1, y.cross};
}

}  // namespace instanton

namespace Eigen {
template <class S>
struct NumTraits<instanton::HyperDual<S>> : NumTraits<S> {
  using Real = instanton::HyperDual<S>;
  using NonInteger = instanton::HyperDual<S>;
  using Nested = instanton::HyperDual<S>;
  using Literal = instanton::HyperDual<S>;
  enum { IsComplex = 0, RequireInitialization = 1, ReadCost = 4, AddCost = 4, MulCost = 12 };
};
}  // namespace Eigen
