#include "orthoexp/special_functions.hpp"

#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>

#include "orthoexp/error.hpp"

namespace orthoexp {

namespace {

using C = std::complex<double>;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

C en_series(int n, C z) {
  const int nm1 = n - 1;
  C result = nm1 != 0 ? C(1.0 / nm1) : -std::log(z) - 0.5772156649015328606;
  C fact = 1;
  for (int k = 1; k < kMaxIter; ++k) {
    fact *= -z / static_cast<double>(k);
    C del;
    if (k != nm1) {
      del = -fact / static_cast<double>(k - nm1);
    } else {
      double psi = boost::math::digamma(static_cast<double>(n));
      del = fact * (-std::log(z) + psi);
    }
    result += del;
    if (std::abs(del) < std::abs(result) * kEps) return result;
  }
  throw Error(ErrorCode::InvalidArgument, "exponential integral series did not converge");
}

C en_continued_fraction(int n, C z) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  C b = z + static_cast<double>(n);
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    double an = -static_cast<double>(i) * (n - 1 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    C del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * std::exp(-z);
  }
  throw Error(ErrorCode::InvalidArgument, "exponential integral continued fraction did not converge");
}

}  // namespace

std::complex<double> expint_en(int n, std::complex<double> z) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "E_n needs n >= 1");
  if (z.real() < 0) throw Error(ErrorCode::InvalidArgument, "E_n implemented for Re z >= 0");
  if (z == C(0)) {
    if (n == 1) throw Error(ErrorCode::InvalidArgument, "E_1 diverges at 0");
    return 1.0 / (n - 1.0);
  }
  return std::abs(z) < 1.0 ? en_series(n, z) : en_continued_fraction(n, z);
}

}  // namespace orthoexp
