#pragma once

// Numerical checks of the two lemmas and their ingredients.

#include "dmax/directions.hpp"
#include "dmax/grid.hpp"
#include "dmax/kernels.hpp"
#include "dmax/maxops.hpp"
#include "dmax/pinned.hpp"
#include "dmax/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dmax {

/// Nested J_1 ⊃ ... ⊃ J_n with theta in every interval.
struct IntervalChain {
    std::vector<SlopeInterval> intervals;
    double theta = 0.0;

    std::size_t size() const noexcept { return intervals.size(); }
};

/// Throws ChainError(level) on the first broken condition: nesting, theta
/// membership, or dist(J_k^c, J_{k+1}) <= |J_{k+1}|.
void validate_chain(const IntervalChain& chain);

/// Gap intervals containing theta, one per level from the first level that
/// contains theta; at that terminal level theta is a vertex (left gap
/// preferred when it satisfies the distance condition). The result is
/// validated. theta must belong to the certified set.
IntervalChain build_chain(const LacunaryCertificate& cert, double theta);

/// One named pass/fail gate with its measured value and limit.
struct Gate {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool passed = false;
};

bool all_passed(const std::vector<Gate>& gates) noexcept;

/// Symbol profile, spatial DFT and quadrature checks of the 1D kernels.
std::vector<Gate> check_kernels();

struct Lemma1Result {
    double max_ratio = 0.0;
    std::size_t i1 = 0;
    std::size_t i2 = 0;
};

/// max over x of |Gamma^alpha f(x)| / ((h R |alpha - beta| + 1) P_beta f(x)),
/// restricted to points with P_beta f > 1e-9 ||f||_inf.
Lemma1Result check_lemma1(const GridFunction& f, const KernelParams& p, double beta,
                          std::span<const Scale> scales);

struct Lemma1Instance {
    GridFunction f;
    KernelParams params;
    double beta = 0.0;
};

/// Fixed seeded suite: random nonnegative fields on an n x n grid of side n,
/// parameters drawn with h R |alpha - beta| <= 4.
std::vector<Lemma1Instance> lemma1_suite(std::uint64_t seed, std::size_t count, std::size_t n);


struct Lemma2Report {
    std::size_t pieces = 0;               // m' + 1 split pieces
    double telescoping_error = 0.0;       // relative L2
    std::size_t support_violations = 0;   // frequencies outside 2S(J_k)
    double scalar_max = 0.0;              // max_k h r_{k+1} min{|theta - a_k|, |theta - b_k|}
    double constant = 0.0;                // max |Gamma_R f| / right side
    std::size_t i1 = 0;
    std::size_t i2 = 0;
};

/// Scalar ingredient h r_{k+1} min{|theta - a_k|, |theta - b_k|} for
/// k = 1..n-1; its max (0 for chains of length 1).
double lemma2_scalar(const IntervalChain& chain, double h);

/// Support of every split piece k >= 1 against 2S(J_k), over all grid
/// frequencies; returns the number of violations.
std::size_t lemma2_support(const IntervalChain& chain, double R, double h, std::size_t n, double length);

/// Telescoping split of Gamma^theta_{R,h}: relative L2 gap between the sum
/// of the pieces and the unsplit operator.
double lemma2_telescoping(const Spectrum& f, const IntervalChain& chain, double R, double h);

/// All four checks. Throws VerificationError when telescoping, support or
/// the scalar bound fail, since those hold by construction.
Lemma2Report check_lemma2(const GridFunction& f, const IntervalChain& chain, double R, double h,
                          std::span<const Scale> scales);

/// Seeded certified set: alternately a random nested built family (orders
/// 1 to 4) and a certify_log_order certificate of random slopes (2 to 64).
SlopeSet random_lacunary_set(std::uint64_t seed);

/// A random element of the set with its chain; prefers the deepest level.
IntervalChain random_chain(const SlopeSet& set, std::uint64_t seed);

struct Lemma2Case {
    GridFunction f;
    IntervalChain chain;
    double R = 0.0;
    double h = 0.0;
};

/// Fixed seeded cases on n x n grids: chains with |J_n| >= 1/20, R in
/// [2, 8], grid side chosen so the Nyquist frequency is 1.5 R, and
/// h = 4 / (R |J_n|) so that every chain level yields a split piece.
std::vector<Lemma2Case> lemma2_suite(std::uint64_t seed, std::size_t count, std::size_t n);

/// Max multiplicity of the doubled gap intervals, per certificate level.
std::vector<std::size_t> check_sector_overlap(const LacunaryCertificate& cert,
                                              SectorChart chart = SectorChart::slope);

}  // namespace dmax
