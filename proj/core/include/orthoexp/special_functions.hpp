#pragma once

#include <complex>

namespace orthoexp {

/// Generalized exponential integral E_n(z) = int_1^inf e^{-zt} t^{-n} dt for
/// n >= 1 and Re z >= 0, z != 0 when n == 1. Power series for |z| < 1,
/// continued fraction otherwise.
std::complex<double> expint_en(int n, std::complex<double> z);

}  // namespace orthoexp
