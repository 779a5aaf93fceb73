#include "dmax/grid.hpp"

#include "dmax/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace dmax {

namespace {

constexpr std::array<char, 8> kMagic{'D', 'M', 'A', 'X', 'G', 'R', 'D', '1'};

template <typename U>
void put_le(std::ostream& out, U value) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
    std::array<unsigned char, sizeof(U)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) throw FormatError("DMG1: truncated stream");
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
    return value;
}

void check_shape(std::size_t n, double length) {
    if (n < 16 || !is_power_of_two(n)) throw StructuralError("grid size must be a power of two >= 16");
    if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("grid length must be positive");
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(std::size_t n, double length)
    : n_(n), length_(length), data_(n * n, 0.0) {
    check_shape(n, length);
}

GridFunction::GridFunction(std::size_t n, double length, std::vector<double> samples)
    : n_(n), length_(length), data_(std::move(samples)) {
    check_shape(n, length);
    if (data_.size() != n * n) throw StructuralError("sample count must be n*n");
    for (double v : data_) {
        if (!std::isfinite(v)) throw DomainError("grid samples must be finite");
    }
}

double pairwise_sum(std::span<const double> values) noexcept {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double GridFunction::l2_norm() const noexcept {
    std::vector<double> sq(data_.size());
    std::transform(data_.begin(), data_.end(), sq.begin(), [](double v) { return v * v; });
    return std::sqrt(pairwise_sum(sq)) * spacing();
}

double GridFunction::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double relative_l2(const GridFunction& a, const GridFunction& b) {
    if (a.n() != b.n()) throw StructuralError("grid sizes differ");
    std::vector<double> diff(a.samples().size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.samples()[i] - b.samples()[i];
    const GridFunction d(a.n(), a.length(), std::move(diff));
    const double base = b.l2_norm();
    return base > 0.0 ? d.l2_norm() / base : d.l2_norm();
}

void write_dmg1(std::ostream& out, const GridFunction& f) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(f.n()));
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(f.length()));
    for (double v : f.samples()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    if (!out) throw FormatError("DMG1: write failed");
}

GridFunction read_dmg1(std::istream& in) {
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw FormatError("DMG1: bad magic");
    const auto n = static_cast<std::size_t>(get_le<std::uint32_t>(in));
    const double length = std::bit_cast<double>(get_le<std::uint64_t>(in));
    if (n < 16 || !is_power_of_two(n) || n > (1u << 14)) throw FormatError("DMG1: bad grid size");
    std::vector<double> samples(n * n);
    for (double& v : samples) v = std::bit_cast<double>(get_le<std::uint64_t>(in));
    if (in.peek() != std::char_traits<char>::eof()) throw FormatError("DMG1: trailing bytes");
    try {
        return GridFunction(n, length, std::move(samples));
    } catch (const std::exception& e) {
        throw FormatError(std::string("DMG1: ") + e.what());
    }
}

void save_dmg1(const std::filesystem::path& path, const GridFunction& f) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw FormatError("cannot open " + path.string() + " for writing");
        write_dmg1(out, f);
    }
    std::filesystem::rename(tmp, path);
}

GridFunction load_dmg1(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_dmg1(in);
}

void save_pgm(const std::filesystem::path& path, const GridFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    const auto [lo_it, hi_it] = std::minmax_element(f.samples().begin(), f.samples().end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    out << "P5\n" << f.n() << " " << f.n() << "\n255\n";
    for (double v : f.samples()) {
        const double t = span > 0.0 ? (v - lo) / span : 0.0;
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
}

}  // namespace dmax
