#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lle/coeffs.hpp"
#include "lle/disk_spectra.hpp"
#include "lle/error.hpp"
#include "lle/geometry.hpp"
#include "lle/identities.hpp"
#include "lle/landau_kernel.hpp"
#include "lle/parallel.hpp"
#include "lle/region_sim.hpp"
#include "lle/serialize.hpp"

using lle::ErrorKind;
using lle::fail;
using lle::io::Json;
using lle::io::format_number;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Usage, what + ": '" + text + "' is not a number");
}

// "a:b:step" (inclusive) or "x1,x2,...".
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) fail(ErrorKind::Usage, what + ": expected start:stop:step");
        const double a = parse_double(parts[0], what), b = parse_double(parts[1], what),
                     h = parse_double(parts[2], what);
        if (!(h > 0.0) || b < a) fail(ErrorKind::Usage, what + ": need start <= stop and step > 0");
        const long n = std::lround(std::floor((b - a) / h + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * h);
    } else {
        for (const auto& item : split(text, ',')) out.push_back(parse_double(item, what));
    }
    if (out.empty()) fail(ErrorKind::Usage, what + ": empty list");
    return out;
}

std::vector<lle::geometry::Point2> parse_vectors(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::Usage, std::string("vectors: ") + e.what());
    }
    if (!j.is_array() || j.empty()) fail(ErrorKind::Usage, "vectors: expected [[x, y], ...]");
    std::vector<lle::geometry::Point2> out;
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(ErrorKind::Usage, "vectors: each entry must be [x, y]");
        out.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Usage, "cannot write '" + path + "'");
    out << text;
}

std::string csv_with_config(const Json& config, const std::string& body) {
    return "# " + config.dump() + "\n" + body;
}

struct Common {
    unsigned threads = 0;
    unsigned resolved_threads() const { return threads > 0 ? threads : lle::default_thread_count(); }
};

struct RegionArgs {
    std::string region = R"({"type":"disk","R":1})";
    double B = 1.0;
    std::string levels = "single:0";

    void add(CLI::App* cmd) {
        cmd->add_option("--region", region, "Region JSON or @file")->capture_default_str();
        cmd->add_option("--B", B, "Magnetic field strength")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--levels", levels, "Level selector single:<l> or upto:<n>")->capture_default_str();
    }
    void put(Json& config) const {
        config["region"] = lle::io::to_json(lle::io::parse_region(region));
        config["B"] = B;
        config["levels"] = lle::landau::LevelSelector::parse(levels).to_string();
    }
};

// coeff ------------------------------------------------------------------

struct CoeffArgs {
    std::string levels;
    std::string functions;
    double tol = 1e-8;
    std::string format = "csv";
    std::string out = "-";
};

int run_coeff(const CoeffArgs& a, const Common& common) {
    std::vector<lle::landau::LevelSelector> selectors;
    for (const auto& s : split(a.levels, ',')) selectors.push_back(lle::landau::LevelSelector::parse(s));
    std::vector<lle::coeffs::SpectralFunction> fs;
    for (const auto& s : split(a.functions, ',')) fs.push_back(lle::coeffs::SpectralFunction::parse(s));
    if (selectors.empty() || fs.empty()) fail(ErrorKind::Usage, "coeff: need --levels and --f");

    Json config;
    config["command"] = "coeff";
    config["levels"] = Json::array();
    for (const auto& s : selectors) config["levels"].push_back(s.to_string());
    config["f"] = Json::array();
    for (const auto& f : fs) config["f"].push_back(f.name());
    config["tol"] = a.tol;
    config["threads"] = common.resolved_threads();

    lle::coeffs::CoefficientOptions opts;
    opts.tol = a.tol;
    opts.threads = common.resolved_threads();
    Json rows = Json::array();
    std::string csv = "levels,f,value,error_estimate\n";
    for (const auto& sel : selectors)
        for (const auto& f : fs) {
            const auto r = sel.kind == lle::landau::LevelSelector::Kind::Single
                               ? lle::coeffs::coeff_M_ell(sel.index, f, opts)
                               : lle::coeffs::coeff_M_le_n(sel.index, f, opts);
            rows.push_back({{"levels", sel.to_string()},
                            {"f", f.name()},
                            {"value", r.value},
                            {"error_estimate", r.error_estimate}});
            csv += sel.to_string() + "," + f.name() + "," + format_number(r.value) + "," +
                   format_number(r.error_estimate) + "\n";
        }
    if (a.format == "json") {
        Json out;
        out["config"] = config;
        out["rows"] = rows;
        write_output(a.out, lle::io::dump(out));
    } else {
        write_output(a.out, csv_with_config(config, csv));
    }
    return kExitOk;
}

// spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    RegionArgs where;
    double L = 0.0;
    std::string solver = "auto";
    double cutoff = 1e-12;
    int radial_nodes = 0;
    int angular_nodes = 0;
    std::string out = "-";

    void add(CLI::App* cmd) {
        where.add(cmd);
        cmd->add_option("--L", L, "Scale factor")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--cutoff", cutoff, "Retention cutoff for eigenvalues")->capture_default_str();
        cmd->add_option("--radial-nodes", radial_nodes, "Radial quadrature nodes (0 selects the default)")
            ->capture_default_str();
        cmd->add_option("--angular-nodes", angular_nodes, "Angular nodes for nystrom2d (0 selects the default)")
            ->capture_default_str();
        cmd->add_option("--out", out, "Output path, - for stdout")->capture_default_str();
    }
};

std::string resolve_solver(const std::string& solver, const lle::geometry::Region& region) {
    const bool centered_disk = region.is_disk() && region.center().x1 == 0.0 && region.center().x2 == 0.0;
    if (solver == "auto") return centered_disk ? "disk" : "nystrom2d";
    if (solver != "disk" && solver != "disk-nystrom" && solver != "nystrom2d")
        fail(ErrorKind::Usage, "unknown solver '" + solver + "' (auto, disk, disk-nystrom, nystrom2d)");
    return solver;
}

lle::disk::LocalSpectrum compute_spectrum(const SpectrumArgs& a, const std::string& solver, unsigned threads) {
    const auto region = lle::io::parse_region(a.where.region);
    const lle::landau::MagneticSetup setup(a.where.B);
    const auto sel = lle::landau::LevelSelector::parse(a.where.levels);
    if (solver == "nystrom2d") {
        lle::region::RegionOptions opts;
        opts.resolution = {a.radial_nodes, a.angular_nodes};
        opts.threads = threads;
        opts.cutoff = a.cutoff;
        return lle::region::region_spectrum(setup, sel, region, a.L, opts);
    }
    lle::disk::DiskOptions opts;
    opts.solver = solver == "disk" ? lle::disk::DiskSolver::Factorized : lle::disk::DiskSolver::Nystrom;
    opts.cutoff = a.cutoff;
    opts.threads = threads;
    opts.radial_nodes = a.radial_nodes;
    return lle::disk::disk_spectrum(setup, sel, region, a.L, opts);
}

Json spectrum_config(const SpectrumArgs& a, const std::string& command, unsigned threads) {
    Json config;
    config["command"] = command;
    a.where.put(config);
    config["L"] = a.L;
    config["cutoff"] = a.cutoff;
    config["radial_nodes"] = a.radial_nodes;
    config["angular_nodes"] = a.angular_nodes;
    config["threads"] = threads;
    return config;
}

int run_spectrum(const SpectrumArgs& a, const Common& common) {
    const auto region = lle::io::parse_region(a.where.region);
    const std::string solver = resolve_solver(a.solver, region);
    Json config = spectrum_config(a, "spectrum", common.resolved_threads());
    config["solver"] = solver;
    const auto spec = compute_spectrum(a, solver, common.resolved_threads());
    Json out;
    out["config"] = config;
    const Json body = lle::io::to_json(spec);
    for (const auto& [key, value] : body.items()) out[key] = value;
    write_output(a.out, lle::io::dump(out));
    return kExitOk;
}

// diff -------------------------------------------------------------------

struct DiffArgs {
    SpectrumArgs spectrum;
    std::string solvers = "disk,nystrom2d";
    double threshold = 1e-6;
    double tol = 1e-4;
};

int run_diff(const DiffArgs& a, const Common& common) {
    const auto region = lle::io::parse_region(a.spectrum.where.region);
    const auto names = split(a.solvers, ',');
    if (names.size() != 2) fail(ErrorKind::Usage, "diff: --solvers takes exactly two solver names");
    const std::string s1 = resolve_solver(names[0], region), s2 = resolve_solver(names[1], region);
    Json config = spectrum_config(a.spectrum, "diff", common.resolved_threads());
    config["solvers"] = {s1, s2};
    config["threshold"] = a.threshold;
    config["tol"] = a.tol;

    auto above = [&](const lle::disk::LocalSpectrum& s) {
        std::vector<double> v;
        for (double mu : s.eigenvalues)
            if (mu > a.threshold) v.push_back(mu);
        std::sort(v.rbegin(), v.rend());
        return v;
    };
    const auto first = compute_spectrum(a.spectrum, s1, common.resolved_threads());
    const auto second = compute_spectrum(a.spectrum, s2, common.resolved_threads());
    std::vector<double> x = above(first), y = above(second);
    const std::size_t n = std::max(x.size(), y.size());
    x.resize(n, 0.0);
    y.resize(n, 0.0);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diff = std::max(max_diff, std::abs(x[i] - y[i]));

    const auto sel = lle::landau::LevelSelector::parse(a.spectrum.where.levels);
    const double L = a.spectrum.L;
    const double expected = a.spectrum.where.B * L * L * region.area() * sel.level_count() / (2.0 * M_PI);
    Json out;
    out["config"] = config;
    out["count_above_threshold"] = {above(first).size(), above(second).size()};
    out["max_abs_diff"] = max_diff;
    out["trace"] = {first.trace(), second.trace()};
    out["expected_trace"] = expected;
    out["trace_rel_error"] = {std::abs(first.trace() - expected) / expected,
                              std::abs(second.trace() - expected) / expected};
    const bool pass = max_diff < a.tol;
    out["pass"] = pass;
    write_output(a.spectrum.out, lle::io::dump(out));
    return pass ? kExitOk : kExitFailed;
}

// scaling ----------------------------------------------------------------

struct ScalingArgs {
    RegionArgs where;
    double alpha = 1.0;
    std::string function;
    std::string Ls = "10:40:2";
    std::string model = "auto";
    double tol = 1e-8;
    std::string csv;
    std::string out = "-";
};

int run_scaling(const ScalingArgs& a, const Common& common) {
    const auto region = lle::io::parse_region(a.where.region);
    const lle::landau::MagneticSetup setup(a.where.B);
    const auto sel = lle::landau::LevelSelector::parse(a.where.levels);
    const auto f = a.function.empty() ? lle::coeffs::SpectralFunction::renyi(a.alpha)
                                      : lle::coeffs::SpectralFunction::parse(a.function);
    const std::vector<double> Ls = parse_grid(a.Ls, "--L");
    lle::region::FitModel model;
    if (a.model == "linear") model = lle::region::FitModel::Linear;
    else if (a.model == "quadratic") model = lle::region::FitModel::Quadratic;
    else if (a.model == "auto")
        model = f.value_at_one() == 0.0 ? lle::region::FitModel::Linear : lle::region::FitModel::Quadratic;
    else fail(ErrorKind::Usage, "unknown fit model '" + a.model + "' (auto, linear, quadratic)");
    const unsigned threads = common.resolved_threads();

    Json config;
    config["command"] = "scaling";
    a.where.put(config);
    config["f"] = f.name();
    config["L"] = Ls;
    config["model"] = model == lle::region::FitModel::Linear ? "linear" : "quadratic";
    config["tol"] = a.tol;
    config["threads"] = threads;

    lle::region::ScalingSeries series;
    series.metadata["f"] = f.name();
    series.metadata["levels"] = sel.to_string();
    std::string solver;
    for (double L : Ls) {
        const auto spec = lle::region::spectrum_for(setup, sel, region, L, threads);
        solver = spec.solver;
        series.add(L, lle::disk::entropy_from_spectrum(spec, f).value);
    }
    const auto fit = lle::region::scaling_fit(series, model);
    const auto lead = lle::region::leading_terms(setup, sel, region, f);

    Json out;
    out["config"] = config;
    out["solver"] = solver;
    Json s = Json::array();
    for (const auto& [L, v] : series.points) s.push_back({L, v});
    out["series"] = s;
    out["fit"] = lle::io::to_json(fit);
    out["predicted"] = lead.boundary;
    out["ratio"] = fit.c1 / lead.boundary;
    if (model == lle::region::FitModel::Quadratic) {
        out["predicted_area"] = lead.area;
        out["area_ratio"] = lead.area != 0.0 ? fit.c2 / lead.area : NAN;
    }
    if (!a.csv.empty()) write_output(a.csv, csv_with_config(config, lle::io::to_csv(series, "trace_f")));
    write_output(a.out, lle::io::dump(out));
    return kExitOk;
}

// verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::size_t cases = 1000;
    std::string out = "-";
};

int run_verify(const VerifyArgs& a, const Common& common) {
    std::vector<std::string> names;
    if (a.suite == "all") names = lle::identities::suite_names();
    else
        for (const auto& n : split(a.suite, ',')) {
            if (!lle::identities::is_suite(n)) fail(ErrorKind::Usage, "unknown identity suite '" + n + "'");
            names.push_back(n);
        }
    Json config;
    config["command"] = "verify";
    config["suites"] = names;
    config["seed"] = a.seed;
    config["cases"] = a.cases;
    config["threads"] = common.resolved_threads();
    Json reports = Json::array();
    bool pass = true;
    for (const auto& n : names) {
        const auto r = lle::identities::run_suite(n, a.seed, a.cases, common.resolved_threads());
        pass = pass && r.passed();
        reports.push_back(lle::io::to_json(r));
    }
    Json out;
    out["config"] = config;
    out["passed"] = pass;
    out["reports"] = reports;
    write_output(a.out, lle::io::dump(out));
    return pass ? kExitOk : kExitFailed;
}

// rocca ------------------------------------------------------------------

struct RoccaArgs {
    std::string region = R"({"type":"disk","R":1})";
    std::string vectors;
    std::string eps;
    std::string exponents = "3:9:1";
    std::string out = "-";
};

int run_rocca(const RoccaArgs& a, const Common& common) {
    const auto region = lle::io::parse_region(a.region);
    const auto vectors = parse_vectors(a.vectors);
    std::vector<double> eps;
    if (!a.eps.empty()) eps = parse_grid(a.eps, "--eps");
    else
        for (double k : parse_grid(a.exponents, "--eps-exponents")) eps.push_back(std::ldexp(1.0, -std::lround(k)));
    for (double e : eps)
        if (e < 0.0) fail(ErrorKind::Usage, "--eps values must be >= 0");

    Json config;
    config["command"] = "rocca";
    config["region"] = lle::io::to_json(region);
    Json vs = Json::array();
    for (const auto& v : vectors) vs.push_back({v.x1, v.x2});
    config["vectors"] = vs;
    config["eps"] = eps;
    config["threads"] = common.resolved_threads();

    const auto first = lle::geometry::roccaforte_first_order(region, vectors);
    const bool smooth = region.is_smooth();
    const double second = smooth ? lle::geometry::roccaforte_second_order(region, vectors).value : 0.0;
    std::string csv = "eps,exact,first_order,second_order,residual1_over_eps,residual2_over_eps2,method\n";
    for (double e : eps) {
        if (e == 0.0) {
            csv += "0,0,0," + std::string(smooth ? "0" : "") + ",0," + std::string(smooth ? "0" : "") + ",exact\n";
            continue;
        }
        lle::geometry::IntersectionOptions opts;
        opts.threads = common.resolved_threads();
        const auto area = lle::geometry::intersect_translates_area(region, {vectors, e}, opts);
        const double o1 = e * first.value;
        const double o2 = o1 + e * e * second;
        csv += format_number(e) + "," + format_number(area.removed) + "," + format_number(o1) + ",";
        csv += (smooth ? format_number(o2) : "") + "," + format_number((area.removed - o1) / e) + ",";
        csv += (smooth ? format_number((area.removed - o2) / (e * e)) : "") + "," + area.method + "\n";
    }
    write_output(a.out, csv_with_config(config, csv));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lle: boundary coefficients, localized Landau spectra and entropy scaling"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--threads", common.threads, "Worker threads (0: LLE_THREADS or all cores)")
        ->capture_default_str();

    CoeffArgs coeff;
    auto* c = app.add_subcommand("coeff", "Boundary coefficients M_l(f) and M_<=n(f)");
    c->add_option("--levels", coeff.levels, "Comma list of single:<l> / upto:<n>")->required();
    c->add_option("--f", coeff.functions, "Comma list of renyi:<a> / monomial:<m> / gtilde")->required();
    c->add_option("--tol", coeff.tol, "Absolute tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--format", coeff.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--out", coeff.out, "Output path, - for stdout")->capture_default_str();

    SpectrumArgs spectrum;
    auto* s = app.add_subcommand("spectrum", "Eigenvalues of a localized Landau projection");
    spectrum.add(s);
    s->add_option("--solver", spectrum.solver, "auto, disk, disk-nystrom or nystrom2d")->capture_default_str();

    DiffArgs diff;
    auto* d = app.add_subcommand("diff", "Compare the spectra of two solvers");
    diff.spectrum.add(d);
    d->add_option("--solvers", diff.solvers, "Two comma separated solver names")->capture_default_str();
    d->add_option("--threshold", diff.threshold, "Compare eigenvalues above this value")->capture_default_str();
    d->add_option("--tol", diff.tol, "Largest accepted eigenvalue difference")->capture_default_str();

    ScalingArgs scaling;
    auto* sc = app.add_subcommand("scaling", "Entropy scaling in L and asymptotic fit");
    scaling.where.add(sc);
    auto* alpha = sc->add_option("--alpha", scaling.alpha, "Renyi index")->capture_default_str()->check(CLI::PositiveNumber);
    sc->add_option("--f", scaling.function, "Spectral function instead of h_alpha")->excludes(alpha);
    sc->add_option("--L", scaling.Ls, "start:stop:step or comma list")->capture_default_str();
    sc->add_option("--model", scaling.model, "auto, linear or quadratic")->capture_default_str();
    sc->add_option("--csv", scaling.csv, "Write the (L, tr f) series as CSV");
    sc->add_option("--out", scaling.out, "Fit report path, - for stdout")->capture_default_str();

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Run the randomized identity suites");
    v->add_option("--suite", verify.suite, "Suite name, comma list or all")->capture_default_str();
    v->add_option("--seed", verify.seed, "Base seed")->capture_default_str();
    v->add_option("--cases", verify.cases, "Random cases per suite")->capture_default_str();
    v->add_option("--out", verify.out, "Output path, - for stdout")->capture_default_str();

    RoccaArgs rocca;
    auto* r = app.add_subcommand("rocca", "Area of intersections with small translates");
    r->add_option("--region", rocca.region, "Region JSON or @file")->capture_default_str();
    r->add_option("--vectors", rocca.vectors, "JSON list [[x, y], ...]")->required();
    auto* eps = r->add_option("--eps", rocca.eps, "start:stop:step or comma list of eps");
    r->add_option("--eps-exponents", rocca.exponents, "eps = 2^-k for k in start:stop:step")
        ->capture_default_str()
        ->excludes(eps);
    r->add_option("--out", rocca.out, "Output path, - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c->parsed()) return run_coeff(coeff, common);
        if (s->parsed()) return run_spectrum(spectrum, common);
        if (d->parsed()) return run_diff(diff, common);
        if (sc->parsed()) return run_scaling(scaling, common);
        if (v->parsed()) return run_verify(verify, common);
        if (r->parsed()) return run_rocca(rocca, common);
    } catch (const lle::Error& e) {
        std::cerr << "lle: " << lle::to_string(e.kind()) << ": " << e.what() << "\n";
        return e.kind() == ErrorKind::Usage ? kExitUsage : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "lle: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
