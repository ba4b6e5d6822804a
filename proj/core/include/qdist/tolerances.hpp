#pragma once

namespace qdist::tol {

// Central numerical tolerances. Functions that accept an explicit
// tolerance parameter default to these values.

inline constexpr double hermitian = 1e-9;        // max entrywise |M - M^dag|
inline constexpr double psd = 1e-9;              // eigenvalues >= -psd; [-psd, 0) clips to 0
inline constexpr double trace_one = 1e-9;        // |tr(rho) - 1|
inline constexpr double unit_norm = 1e-9;        // pure-state norm deviation
inline constexpr double prob_sum = 1e-9;         // weight-vector sum deviation
inline constexpr double prob_clip = 1e-12;       // weights in [-prob_clip, 0) clip to 0
inline constexpr double completeness = 1e-8;     // Frobenius residual of sum A_i^dag A_i - I
inline constexpr double trace_residual = 1e-6;   // channel output trace drift before error
inline constexpr double majorization = 1e-12;    // slack in prefix-sum comparisons
inline constexpr double jacobi = 1e-12;          // off-diagonal Frobenius target (relative)
inline constexpr double det_one = 1e-9;          // |det(U) - 1| for special unitaries
inline constexpr double unitary = 1e-8;          // max entrywise |U U^dag - I|

} // namespace qdist::tol
