#include "dmax/directions.hpp"
#include "dmax/errors.hpp"
#include "dmax/experiment.hpp"
#include "dmax/grid.hpp"
#include "dmax/kernels.hpp"
#include "dmax/maxops.hpp"
#include "dmax/spectral.hpp"
#include "dmax/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

namespace {

dmax::GridFunction to_grid(const Array& a, std::optional<double> length) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw dmax::StructuralError("expected a square 2D array");
    const auto n = static_cast<std::size_t>(a.shape(0));
    std::vector<double> samples(a.data(), a.data() + n * n);
    return dmax::GridFunction(n, length.value_or(static_cast<double>(n)), std::move(samples));
}

Array to_array(const dmax::GridFunction& f) {
    const auto n = static_cast<py::ssize_t>(f.n());
    Array out({n, n});
    std::copy(f.samples().begin(), f.samples().end(), out.mutable_data());
    return out;
}

std::vector<dmax::Scale> to_scales(const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& s,
                                   std::size_t n) {
    if (!s) return dmax::dyadic_scales(n);
    std::vector<dmax::Scale> out;
    for (auto [d1, d2] : *s) out.push_back({d1, d2});
    return dmax::normalize_scales(out, n);
}

std::vector<std::pair<std::size_t, std::size_t>> from_scales(const std::vector<dmax::Scale>& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& x : s) out.emplace_back(x.d1, x.d2);
    return out;
}

std::vector<double> slopes_of(const dmax::SlopeSet& s) { return {s.slopes().begin(), s.slopes().end()}; }

}  // namespace

PYBIND11_MODULE(_dmax, m) {
    m.doc() = "Directional maximal operators on periodic grids";

    py::register_exception<dmax::StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<dmax::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<dmax::FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<dmax::ChainError>(m, "ChainError", PyExc_ValueError);
    py::register_exception<dmax::VerificationError>(m, "VerificationError", PyExc_RuntimeError);

    m.def("dyadic_scales", [](std::size_t n, std::size_t max) { return from_scales(dmax::dyadic_scales(n, max)); },
          py::arg("n"), py::arg("max_half_width") = 0);

    m.def(
        "parallelogram_max",
        [](const Array& f, double alpha, std::optional<std::vector<std::pair<std::size_t, std::size_t>>> scales) {
            const auto g = to_grid(f, std::nullopt);
            return to_array(dmax::parallelogram_max(g, alpha, to_scales(scales, g.n())));
        },
        py::arg("f"), py::arg("alpha"), py::arg("scales") = py::none());

    m.def(
        "directional_max",
        [](const Array& f, const std::vector<double>& slopes,
           std::optional<std::vector<std::pair<std::size_t, std::size_t>>> scales) {
            const auto g = to_grid(f, std::nullopt);
            return to_array(dmax::directional_max(g, dmax::SlopeSet(slopes), to_scales(scales, g.n())));
        },
        py::arg("f"), py::arg("slopes"), py::arg("scales") = py::none());

    m.def(
        "strong_max",
        [](const Array& f, std::optional<std::vector<std::pair<std::size_t, std::size_t>>> scales) {
            const auto g = to_grid(f, std::nullopt);
            return to_array(dmax::strong_max(g, to_scales(scales, g.n())));
        },
        py::arg("f"), py::arg("scales") = py::none());

    m.def(
        "is_one_lacunary",
        [](const std::vector<double>& seq, double v_inf, double tol) {
            const auto c = dmax::is_one_lacunary(seq, v_inf, tol);
            return py::make_tuple(c.ok, c.k, c.reason);
        },
        py::arg("seq"), py::arg("v_inf"), py::arg("tol") = dmax::kDefaultTolerance);

    m.def("equispaced_slopes", [](std::size_t count) { return slopes_of(dmax::equispaced_slopes(count)); });
    m.def(
        "geometric_slopes",
        [](double ratio, std::size_t count, double anchor) {
            return slopes_of(dmax::geometric_slopes(ratio, count, anchor));
        },
        py::arg("ratio"), py::arg("count"), py::arg("anchor") = 0.9);
    m.def("certify_log_order", [](const std::vector<double>& slopes) {
        return dmax::certify_log_order(dmax::SlopeSet(slopes)).chain;
    });

    m.def("fejer", py::vectorize(dmax::fejer), py::arg("r"), py::arg("x"));
    m.def("psi", py::vectorize(dmax::psi), py::arg("r"), py::arg("R"), py::arg("x"));
    m.def("window_phi", py::vectorize(dmax::window_phi), py::arg("h"), py::arg("x"));
    m.def(
        "psi_hat",
        [](double r, double R, const Array& xi) {
            const auto p = dmax::psi_hat(r, R);
            return py::vectorize([&p](double x) { return p(x); })(xi);
        },
        py::arg("r"), py::arg("R"), py::arg("xi"));

    m.def(
        "gamma_apply",
        [](const Array& f, double r, double R, double h, double alpha, std::optional<double> length) {
            return to_array(dmax::gamma_apply(to_grid(f, length), dmax::KernelParams{r, R, h, alpha}));
        },
        py::arg("f"), py::arg("r"), py::arg("R"), py::arg("h"), py::arg("alpha"), py::arg("length") = py::none());

    m.def(
        "sector_project",
        [](const Array& f, double lo, double hi, bool doubled, bool complement) {
            const auto g = to_grid(f, std::nullopt);
            const dmax::Sector s = doubled ? dmax::sector_double(dmax::SlopeInterval(lo, hi))
                                           : dmax::sector_of(dmax::SlopeInterval(lo, hi));
            return to_array(complement ? dmax::sector_complement_project(g, s) : dmax::sector_project(g, s));
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("doubled") = false, py::arg("complement") = false);

    m.def("check_kernels", [] {
        py::list out;
        for (const auto& g : dmax::check_kernels()) {
            out.append(py::dict(py::arg("name") = g.name, py::arg("value") = g.value, py::arg("limit") = g.limit,
                                py::arg("passed") = g.passed));
        }
        return out;
    });

    m.def(
        "estimate_norm",
        [](const std::vector<double>& slopes, std::size_t n, std::size_t budget, std::uint64_t seed) {
            dmax::NormOptions opt;
            opt.budget = budget;
            opt.seed = seed;
            const auto e = dmax::estimate_norm(dmax::SlopeSet(slopes), n, opt);
            return py::make_tuple(e.lower_bound, e.witness, to_array(e.witness_f));
        },
        py::arg("slopes"), py::arg("n"), py::arg("budget") = 16, py::arg("seed") = 1);

    m.def(
        "run_experiment",
        [](const std::filesystem::path& config, std::optional<std::filesystem::path> out_dir) {
            auto c = dmax::load_config(config);
            if (out_dir) c.output_dir = *out_dir;
            py::gil_scoped_release release;
            const auto report = dmax::run_and_write(c);
            py::gil_scoped_acquire acquire;
            py::list rows;
            for (const auto& r : report.rows) {
                rows.append(py::dict(py::arg("family_id") = r.family_id, py::arg("n") = r.n,
                                     py::arg("num_dirs") = r.num_dirs, py::arg("lac_order") = r.lac_order,
                                     py::arg("best_ratio") = r.best_ratio, py::arg("witness") = r.witness,
                                     py::arg("max_overlap") = r.max_overlap));
            }
            return rows;
        },
        py::arg("config"), py::arg("out_dir") = py::none());
}
