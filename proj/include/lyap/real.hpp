#ifndef LYAP_REAL_HPP
#define LYAP_REAL_HPP

#include <limits>

namespace lyap {

// Working scalar for every numerical kernel. The cycle expansion converges
// super-exponentially, so successive estimates drop below double rounding
// around order 9 for two-dimensional ensembles; the x87 extended format
// keeps the tail resolvable. Swap here for a wider type if deeper orders
// are needed.
using Real = long double;

inline constexpr Real kEpsilon = std::numeric_limits<Real>::epsilon();

// 1e-13 at double precision, scaled to the working precision.
inline constexpr Real kDefaultPerronTol =
    Real(1e-13) * (kEpsilon / Real(std::numeric_limits<double>::epsilon()));

inline constexpr int kDefaultPerronMaxIter = 10000;

} // namespace lyap

#endif
