#pragma once

// Direction sets parameterized by slope in (0,1), and the inductive
// N-lacunary hierarchy: a 1-lacunary run, then (possibly empty) 1-lacunary
// runs inserted into every gap of the previous level.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dmax {

inline constexpr double kDefaultTolerance = 1e-12;

/// Closed slope interval [lo, hi] with 0 < lo < hi < 1.
struct SlopeInterval {
    double lo = 0.0;
    double hi = 0.0;

    SlopeInterval() = default;
    SlopeInterval(double a, double b);

    double length() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double s) const noexcept { return lo <= s && s <= hi; }
    bool operator==(const SlopeInterval&) const = default;
};

/// Outcome of the 1-lacunary test. `k` is the 1-based index of the first
/// failing pair (v_k, v_{k+1}); zero when the run passes.
struct LacunaryCheck {
    bool ok = true;
    std::size_t k = 0;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Checks 1/2|v_k - v_{k+1}| < |v_{k+1} - v_inf| < |v_k - v_{k+1}| for every
/// consecutive pair, each strict comparison a < b evaluated as a < b(1 - tol).
/// `seq` must be strictly monotone toward `v_inf` (StructuralError otherwise);
/// `v_inf` inside the range of `seq` is a DomainError. A one-element run passes.
LacunaryCheck is_one_lacunary(std::span<const double> seq, double v_inf,
                              double tol = kDefaultTolerance);

/// A limit v_inf for which `seq` (ordered toward its limit) is 1-lacunary, if
/// any exists. The feasible set is an open interval; its midpoint is returned.
std::optional<double> fit_limit(std::span<const double> seq, double tol = kDefaultTolerance);

/// Records one inserted run: the gap (of level-1 set) it lives in and its limit.
/// The base run (level 1) uses the whole chart [0, 1] as its gap.
struct RunWitness {
    std::size_t level = 1;
    double gap_lo = 0.0;
    double gap_hi = 1.0;
    double v_inf = 0.0;

    bool operator==(const RunWitness&) const = default;
};

struct LacunaryCertificate {
    std::vector<std::vector<double>> chain;  // Omega_1 c ... c Omega_N, each increasing
    std::vector<RunWitness> witnesses;

    std::size_t order() const noexcept { return chain.size(); }
    bool operator==(const LacunaryCertificate&) const = default;
};

/// Finite set of slopes in (0,1), stored strictly increasing.
class SlopeSet {
public:
    SlopeSet() = default;
    /// Sorts; rejects duplicates and values outside (0,1).
    explicit SlopeSet(std::vector<double> slopes);
    /// As above; additionally requires cert.chain.back() to equal the set.
    SlopeSet(std::vector<double> slopes, LacunaryCertificate cert);

    std::span<const double> slopes() const noexcept { return slopes_; }
    std::size_t size() const noexcept { return slopes_.size(); }
    bool empty() const noexcept { return slopes_.empty(); }
    bool contains(double s) const noexcept;
    const std::optional<LacunaryCertificate>& certificate() const noexcept { return cert_; }

    /// Neighbor gaps [s_i, s_{i+1}].
    std::vector<SlopeInterval> gaps() const;

private:
    std::vector<double> slopes_;
    std::optional<LacunaryCertificate> cert_;
};

struct CertificateIssue {
    std::size_t level = 0;
    std::optional<std::pair<double, double>> gap;
    std::string message;
};

struct CertificateReport {
    std::vector<CertificateIssue> issues;

    bool valid() const noexcept { return issues.empty(); }
    explicit operator bool() const noexcept { return valid(); }
    std::string summary() const;
};

/// Total checker: never throws on malformed certificates, reports instead.
CertificateReport verify_certificate(const SlopeSet& set, const LacunaryCertificate& cert,
                                     double tol = kDefaultTolerance);

enum class GapEnd { left, right };

/// In every gap (a, b): points e + (o - e) * ratio^j, j = 1..count, where e is
/// the `toward` endpoint (also the run's limit) and o the other one.
struct GapRule {
    double ratio = 0.4;
    std::size_t count = 1;
    GapEnd toward = GapEnd::left;
};

struct ExplicitRun {
    double gap_lo = 0.0;
    double gap_hi = 0.0;
    std::vector<double> slopes;
    double v_inf = 0.0;
};

/// One insertion level. Gaps not touched by either field stay empty.
struct InsertionLevel {
    std::optional<GapRule> every_gap;
    std::vector<ExplicitRun> runs;
};

struct LacunaryRecipe {
    std::vector<double> base;
    double base_v_inf = 0.0;
    std::vector<InsertionLevel> levels;

    /// Base run {anchor * ratio^k : k = 1..count} toward 0.
    static LacunaryRecipe geometric(double ratio, std::size_t count, double anchor);
};

/// Builds the union set with a certificate of order 1 + recipe.levels.size().
SlopeSet build_n_lacunary(const LacunaryRecipe& recipe, double tol = kDefaultTolerance);

/// Certificate of order at most floor(log2(#set)) + 2 for any finite set.
LacunaryCertificate certify_log_order(const SlopeSet& set, double tol = kDefaultTolerance);

/// Constants of the certify_log_order bound: order <= A * log2(n) + B.
inline constexpr double kLogOrderSlope = 1.0;
inline constexpr double kLogOrderOffset = 2.0;

/// {anchor * ratio^k : k = 1..count}; requires ratio in (1/3, 1/2), the range
/// in which geometric runs satisfy the strict 1-lacunary inequalities.
SlopeSet geometric_slopes(double ratio, std::size_t count, double anchor);

/// {j / (count + 1) : j = 1..count}, certified by certify_log_order.
SlopeSet equispaced_slopes(std::size_t count);

/// Returns the same slopes carrying certify_log_order's certificate.
SlopeSet with_log_certificate(const SlopeSet& set, double tol = kDefaultTolerance);

}  // namespace dmax
