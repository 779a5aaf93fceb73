#pragma once

// Real samples on an n x n periodic grid of physical side L. Sample (i1, i2)
// sits at x = (L/n) (i1, i2) and is stored at index i1 * n + i2, so x_2 runs
// along contiguous memory.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace dmax {

class GridFunction {
public:
    GridFunction() = default;
    /// Zero grid. n must be a power of two >= 16, L > 0.
    GridFunction(std::size_t n, double length);
    /// Takes n*n finite samples.
    GridFunction(std::size_t n, double length, std::vector<double> samples);

    std::size_t n() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }

    double operator()(std::size_t i1, std::size_t i2) const noexcept { return data_[i1 * n_ + i2]; }
    double& operator()(std::size_t i1, std::size_t i2) noexcept { return data_[i1 * n_ + i2]; }

    std::span<const double> samples() const noexcept { return data_; }
    std::span<double> samples() noexcept { return data_; }

    /// Discrete L2 norm: sqrt(sum |f|^2 * spacing^2), pairwise summation.
    double l2_norm() const noexcept;
    double max_abs() const noexcept;

    bool operator==(const GridFunction&) const = default;

private:
    std::size_t n_ = 0;
    double length_ = 0.0;
    std::vector<double> data_;
};

/// Deterministic pairwise sum (fixed tree, independent of threading).
double pairwise_sum(std::span<const double> values) noexcept;

/// ||a - b||_2 / ||b||_2 (returns ||a||_2 when b vanishes).
double relative_l2(const GridFunction& a, const GridFunction& b);

bool is_power_of_two(std::size_t n) noexcept;

// DMG1: "DMAXGRD1", u32 n (LE), f64 L, n*n f64 samples row-major, all LE.
void write_dmg1(std::ostream& out, const GridFunction& f);
GridFunction read_dmg1(std::istream& in);
void save_dmg1(const std::filesystem::path& path, const GridFunction& f);
GridFunction load_dmg1(const std::filesystem::path& path);

/// Binary PGM (P5), min..max mapped linearly to 0..255.
void save_pgm(const std::filesystem::path& path, const GridFunction& f);

}  // namespace dmax
