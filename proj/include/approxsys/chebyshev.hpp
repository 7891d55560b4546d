#ifndef APPROXSYS_CHEBYSHEV_HPP
#define APPROXSYS_CHEBYSHEV_HPP

#include "approxsys/poly.hpp"

namespace approxsys {

// Chebyshev polynomials from their explicit sums; T_0 = U_0 = T_0^+ = 1.

/// First kind: T_p(cos t) = cos(p t).
ExactPoly chebyshev_t(unsigned p);
/// Second kind: U_p(cos t) sin t = sin((p + 1) t).
ExactPoly chebyshev_u(unsigned p);
/// i^{-p} T_p(i x); all coefficients are nonnegative.
ExactPoly chebyshev_t_plus(unsigned p);

}  // namespace approxsys

#endif  // APPROXSYS_CHEBYSHEV_HPP
