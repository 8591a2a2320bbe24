#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lle/coeffs.hpp"
#include "lle/disk_spectra.hpp"
#include "lle/error.hpp"
#include "lle/geometry.hpp"
#include "lle/identities.hpp"
#include "lle/landau_kernel.hpp"
#include "lle/region_sim.hpp"
#include "lle/serialize.hpp"
#include "lle/specfun.hpp"

namespace py = pybind11;
using lle::landau::LevelSelector;
using lle::landau::MagneticSetup;
using lle::landau::Point2;

namespace {

std::vector<Point2> points(const std::vector<std::pair<double, double>>& xs) {
    std::vector<Point2> out;
    for (const auto& [a, b] : xs) out.push_back({a, b});
    return out;
}

lle::disk::LocalSpectrum spectrum(const std::string& region_json, double B, const std::string& levels, double L,
                                  const std::string& solver, double cutoff, int radial, int angular,
                                  unsigned threads) {
    const auto region = lle::io::parse_region(region_json);
    const MagneticSetup setup(B);
    const auto sel = LevelSelector::parse(levels);
    const bool centered_disk = region.is_disk() && region.center().x1 == 0.0 && region.center().x2 == 0.0;
    const std::string resolved = solver == "auto" ? (centered_disk ? "disk" : "nystrom2d") : solver;
    if (resolved == "nystrom2d") {
        lle::region::RegionOptions opts;
        opts.resolution = {radial, angular};
        opts.cutoff = cutoff;
        opts.threads = threads;
        return lle::region::region_spectrum(setup, sel, region, L, opts);
    }
    if (resolved != "disk" && resolved != "disk-nystrom")
        lle::fail(lle::ErrorKind::Usage, "unknown solver '" + solver + "'");
    lle::disk::DiskOptions opts;
    opts.solver = resolved == "disk" ? lle::disk::DiskSolver::Factorized : lle::disk::DiskSolver::Nystrom;
    opts.cutoff = cutoff;
    opts.threads = threads;
    opts.radial_nodes = radial;
    return lle::disk::disk_spectrum(setup, sel, region, L, opts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Boundary coefficients, localized Landau spectra and identity checks";

    py::register_exception<lle::Error>(m, "LleError", PyExc_RuntimeError);

    m.def("hermite_poly", &lle::specfun::hermite_poly, py::arg("level"), py::arg("t"));
    m.def("hermite_fn", &lle::specfun::hermite_fn, py::arg("level"), py::arg("t"));
    m.def("laguerre",
          py::overload_cast<int, int, std::complex<double>>(&lle::specfun::laguerre),
          py::arg("degree"), py::arg("k"), py::arg("z"));
    m.def("lambda_ell", &lle::specfun::lambda_ell, py::arg("level"), py::arg("xi"));

    m.def(
        "kernel",
        [](double B, const std::string& levels, std::pair<double, double> x, std::pair<double, double> y) {
            return lle::landau::kernel(MagneticSetup(B), LevelSelector::parse(levels), {x.first, x.second},
                                       {y.first, y.second});
        },
        py::arg("B"), py::arg("levels"), py::arg("x"), py::arg("y"));
    m.def("nu_from_mu", &lle::landau::nu_from_mu, py::arg("mu"), py::arg("B"));

    m.def(
        "renyi_h", [](double alpha, double t) { return lle::coeffs::renyi_h(alpha, t); }, py::arg("alpha"),
        py::arg("t"));
    m.def(
        "coeff",
        [](const std::string& levels, const std::string& f, double tol, unsigned threads) {
            const auto sel = LevelSelector::parse(levels);
            const auto fn = lle::coeffs::SpectralFunction::parse(f);
            lle::coeffs::CoefficientOptions opts{tol, threads};
            const auto r = sel.kind == LevelSelector::Kind::Single ? lle::coeffs::coeff_M_ell(sel.index, fn, opts)
                                                                   : lle::coeffs::coeff_M_le_n(sel.index, fn, opts);
            return std::make_pair(r.value, r.error_estimate);
        },
        py::arg("levels"), py::arg("f"), py::arg("tol") = 1e-8, py::arg("threads") = 1,
        "M_l(f) for single:<l> or M_<=n(f) for upto:<n>; returns (value, error_estimate).");
    m.def("poly_boundary_coeff", &lle::coeffs::poly_boundary_coeff, py::arg("level"), py::arg("m"));

    py::class_<lle::disk::LocalSpectrum>(m, "LocalSpectrum")
        .def_readonly("B", &lle::disk::LocalSpectrum::B)
        .def_readonly("L", &lle::disk::LocalSpectrum::L)
        .def_readonly("solver", &lle::disk::LocalSpectrum::solver)
        .def_readonly("cutoff", &lle::disk::LocalSpectrum::cutoff)
        .def_readonly("eigenvalues", &lle::disk::LocalSpectrum::eigenvalues)
        .def_readonly("complements", &lle::disk::LocalSpectrum::complements)
        .def_readonly("sectors", &lle::disk::LocalSpectrum::sectors)
        .def_readonly("dropped_count", &lle::disk::LocalSpectrum::dropped_count)
        .def_property_readonly("selector", [](const lle::disk::LocalSpectrum& s) { return s.selector.to_string(); })
        .def("trace", &lle::disk::LocalSpectrum::trace)
        .def("to_json", [](const lle::disk::LocalSpectrum& s) { return lle::io::dump(lle::io::to_json(s)); });

    m.def("spectrum", &spectrum, py::arg("region") = R"({"type":"disk","R":1})", py::arg("B") = 1.0,
          py::arg("levels") = "single:0", py::arg("L") = 1.0, py::arg("solver") = "auto", py::arg("cutoff") = 1e-12,
          py::arg("radial_nodes") = 0, py::arg("angular_nodes") = 0, py::arg("threads") = 1,
          "Eigenvalues of 1_{L Lambda} P 1_{L Lambda}; solver is auto, disk, disk-nystrom or nystrom2d.");
    m.def(
        "entropy",
        [](const lle::disk::LocalSpectrum& s, const std::string& f) {
            return lle::disk::entropy_from_spectrum(s, lle::coeffs::SpectralFunction::parse(f)).value;
        },
        py::arg("spectrum"), py::arg("f"));
    m.def("schatten_cross_norm", &lle::disk::schatten_cross_norm, py::arg("spectrum"), py::arg("p"));
    m.def("lll_disk_eigenvalues", &lle::disk::lll_disk_eigenvalues, py::arg("B"), py::arg("R"), py::arg("m_max"),
          py::arg("verify") = true);

    m.def(
        "scaling_fit",
        [](const std::vector<double>& Ls, const std::vector<double>& values, const std::string& model) {
            if (Ls.size() != values.size()) lle::fail(lle::ErrorKind::Usage, "Ls and values differ in length");
            lle::region::ScalingSeries s;
            for (std::size_t i = 0; i < Ls.size(); ++i) s.add(Ls[i], values[i]);
            if (model != "linear" && model != "quadratic")
                lle::fail(lle::ErrorKind::Usage, "model must be linear or quadratic");
            const auto fit = lle::region::scaling_fit(
                s, model == "linear" ? lle::region::FitModel::Linear : lle::region::FitModel::Quadratic);
            return lle::io::dump(lle::io::to_json(fit));
        },
        py::arg("Ls"), py::arg("values"), py::arg("model") = "linear", "Fit report as a JSON string.");

    m.def(
        "region_info",
        [](const std::string& region_json) {
            const auto r = lle::io::parse_region(region_json);
            return std::make_tuple(r.type_name(), r.area(), r.perimeter());
        },
        py::arg("region"), "(type, area, perimeter)");
    m.def(
        "removed_area",
        [](const std::string& region_json, const std::vector<std::pair<double, double>>& vectors, double eps) {
            return lle::geometry::intersect_translates_area(lle::io::parse_region(region_json), {points(vectors), eps})
                .removed;
        },
        py::arg("region"), py::arg("vectors"), py::arg("eps"));
    m.def(
        "roccaforte_terms",
        [](const std::string& region_json, const std::vector<std::pair<double, double>>& vectors) {
            const auto r = lle::io::parse_region(region_json);
            const auto v = points(vectors);
            const double t1 = lle::geometry::roccaforte_first_order(r, v).value;
            const py::object t2 =
                r.is_smooth() ? py::cast(lle::geometry::roccaforte_second_order(r, v).value) : py::none();
            return py::make_tuple(t1, t2);
        },
        py::arg("region"), py::arg("vectors"), "(first-order term, second-order term or None)");

    m.def("suite_names", &lle::identities::suite_names);
    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed, std::size_t cases, unsigned threads) {
            return lle::io::dump(lle::io::to_json(lle::identities::run_suite(suite, seed, cases, threads)));
        },
        py::arg("suite"), py::arg("seed") = 42, py::arg("cases") = 1000, py::arg("threads") = 1,
        "Suite report as a JSON string.");
}
