#pragma once

#include <string>

#include "navforge/error.hpp"

namespace navforge {

/// Quadratic satellite clock model referenced to toc.
template <typename Scalar>
struct ClockPolynomial {
  Scalar a0{0};  // s
  Scalar a1{0};  // s/s
  Scalar a2{0};  // s/s^2
  Scalar toc{0};

  friend bool operator==(const ClockPolynomial&, const ClockPolynomial&) = default;
};

/// Clock state at the system start epoch t_gps0, where the offset is zero
/// by construction.
template <typename Scalar>
struct ClockInit {
  Scalar a1{0};
  Scalar a2{0};
  Scalar t_gps0{0};
};

using ClockPolynomiald = ClockPolynomial<double>;
using ClockInitd = ClockInit<double>;

enum class RereferenceMode {
  Exact,         // a1' = a1 + 2 a2 dt, the derivative of the quadratic at toc
  PaperLiteral,  // a1' = a1 + a2 dt
};

template <typename Scalar>
Scalar clock_offset(const ClockPolynomial<Scalar>& poly, Scalar t) {
  const Scalar dt = t - poly.toc;
  return poly.a0 + poly.a1 * dt + poly.a2 * dt * dt;
}

template <typename Scalar>
ClockPolynomial<Scalar> rereference(const ClockInit<Scalar>& init, Scalar toc,
                                    RereferenceMode mode = RereferenceMode::Exact) {
  const Scalar dt = toc - init.t_gps0;
  if (dt < Scalar(0)) {
    throw Error(Errc::NegativeInterval, "toc precedes the clock start epoch");
  }
  ClockPolynomial<Scalar> out;
  out.toc = toc;
  out.a0 = init.a1 * dt + init.a2 * dt * dt;
  out.a1 = mode == RereferenceMode::Exact ? init.a1 + Scalar(2) * init.a2 * dt
                                          : init.a1 + init.a2 * dt;
  out.a2 = init.a2;
  return out;
}

/// Exact Taylor shift of a polynomial to a new reference epoch.
template <typename Scalar>
ClockPolynomial<Scalar> recenter(const ClockPolynomial<Scalar>& poly, Scalar new_toc) {
  const Scalar dt = new_toc - poly.toc;
  return ClockPolynomial<Scalar>{poly.a0 + poly.a1 * dt + poly.a2 * dt * dt,
                                 poly.a1 + Scalar(2) * poly.a2 * dt, poly.a2, new_toc};
}

}  // namespace navforge
