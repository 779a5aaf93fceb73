#pragma once

// Regression values measured on the reference build. Bounds are enforced as
// value <= pin * kPinSlack; exact counts are enforced as equalities.

#include <cstddef>

namespace dmax::pinned {

inline constexpr double kPinSlack = 1.1;

/// Lemma 1 suite: seed 1, 100 instances, n = 128, scales up to n/2.
inline constexpr double kLemma1Constant = 2.62;
/// Lemma 1 with f the center cell indicator on a 128 grid of side 128,
/// (r, R, h) = (0, 2, 4), alpha = beta = 0.3, scales up to n/2.
inline constexpr double kLemma1PointConstant = 2.36;
/// Lemma 2 pointwise constant over lemma2_suite(1, 20, 128), scales up to n/2.
inline constexpr double kLemma2Constant = 1.10;
/// sup |psi_{1,8}| / zeta_{1,8} on the default extent.
inline constexpr double kZetaConstant = 137.4;
/// ||M f||_2 / ||f||_2 for the disc of radius n/8, n = 128, 64 equispaced
/// slopes, default scales. Compared to 1e-12 relative.
inline constexpr double kDiscRatio = 1.1994561483825579;
/// Max doubled-interval multiplicity of the geometric 0.4 run (count 8, anchor 0.9).
inline constexpr std::size_t kGeometricOverlap = 3;
/// certify_log_order order of 64 equispaced slopes.
inline constexpr std::size_t kEquispaced64Order = 7;
/// Theorem sweep (configs/theorem_sweep.json): best ratio(N) <= kEnvelope * N.
inline constexpr double kEnvelope = 1.39;

}  // namespace dmax::pinned
