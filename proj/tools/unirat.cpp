// unirat: unitary and Chebyshev approximants to e^{i omega x} on [-1, 1].
//
// Exit codes: 0 success, 1 a verify row failed a bound, 2 NotConverged,
// 3 FrequencyOutOfRange, 4 any other error. Usage errors follow CLI11.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unirat/bounds.hpp"
#include "unirat/cheb_minimax.hpp"
#include "unirat/reporting.hpp"
#include "unirat/unitary_remez.hpp"

namespace {

using unirat::format_double;

void emit(const std::string& out, const std::string& contents) {
    if (out.empty() || out == "-") {
        std::cout << contents;
    } else {
        unirat::write_atomic(out, contents);
    }
}

int solve_unitary_cmd(int n, double omega, double tol, int max_iter, const std::string& out) {
    try {
        const auto cert = unirat::solve_unitary(unirat::Target(omega, n), tol, max_iter);
        emit(out, unirat::certificate_json(cert));
        (out.empty() ? std::cerr : std::cout)
            << "n=" << n << " omega=" << format_double(omega) << " error_u=" << format_double(cert.error_u)
            << " alpha=" << format_double(cert.alpha) << " deviation=" << format_double(cert.deviation)
            << " iterations=" << cert.iterations << '\n';
        return 0;
    } catch (const unirat::NotConverged& e) {
        std::cerr << "not converged after " << e.max_iter() << " iterations: best deviation "
                  << format_double(e.best().deviation) << ", error_u " << format_double(e.best().error_u) << '\n';
        return 2;
    }
}

int solve_chebyshev_cmd(int n, double omega, int grid_size, int lawson_iters, const std::string& out) {
    const unirat::Target target(omega, n);
    const int grid = grid_size > 0 ? grid_size : unirat::default_grid_size(n);
    const auto res = unirat::solve_chebyshev(target, grid, lawson_iters);
    emit(out, unirat::minimax_json(res));
    (out.empty() ? std::cerr : std::cout)
        << "n=" << n << " omega=" << format_double(omega) << " error_c=" << format_double(res.error_c)
        << " flatness=" << format_double(res.flatness) << " lawson_iters=" << res.lawson_iters
        << " converged=" << (res.converged ? "true" : "false") << " polished=" << (res.polished ? "true" : "false")
        << '\n';
    return 0;
}

int verify_cmd(const unirat::SweepConfig& config) {
    const auto rows = unirat::run_sweep(config);
    emit(config.output_path,
         config.format == unirat::Format::Csv ? unirat::bounds_csv(rows) : unirat::bounds_json(rows));
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.lower_ok || !r.upper_ok) ++failed;
    }
    std::cerr << rows.size() << " rows, " << failed << " failing a bound\n";
    return failed == 0 ? 0 : 1;
}

int figure1_cmd(bool computed, const std::string& out) {
    emit(out, unirat::figure1_csv(unirat::figure1_rows(computed)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unitary and Chebyshev rational approximation of exp(i omega x) on [-1, 1]"};
    app.require_subcommand(1);

    int n = 0;
    double omega = 0.0;
    double tol = 1e-10;
    int max_iter = 200;
    int grid_size = 0;
    int lawson_iters = 1000;
    std::string out;
    std::string format = "csv";
    bool computed = false;
    std::vector<int> degrees;
    std::optional<double> omega_single;
    double omega_min = 0.0;
    double omega_max = 0.0;
    int count = 1;
    std::string spacing = "linear";

    auto* su = app.add_subcommand("solve-unitary", "Best unitary approximant and its equioscillation certificate");
    su->add_option("--n", n, "Degree")->required()->check(CLI::NonNegativeNumber);
    su->add_option("--omega", omega, "Frequency")->required()->check(CLI::NonNegativeNumber);
    su->add_option("--tol", tol, "Target relative deviation of the extreme phase errors")->capture_default_str();
    su->add_option("--max-iter", max_iter, "Rebalancing steps")->capture_default_str();
    su->add_option("--out", out, "Certificate JSON path (default: stdout)");

    auto* sc = app.add_subcommand("solve-chebyshev", "Chebyshev (minimax) approximant");
    sc->add_option("--n", n, "Degree")->required()->check(CLI::NonNegativeNumber);
    sc->add_option("--omega", omega, "Frequency")->required()->check(CLI::NonNegativeNumber);
    sc->add_option("--grid-size", grid_size, "Grid points (default max(1000, 20 (2n+2)))");
    sc->add_option("--lawson-iters", lawson_iters, "Lawson iteration cap")->capture_default_str();
    sc->add_option("--out", out, "Result JSON path (default: stdout)");

    auto* vf = app.add_subcommand("verify", "Sweep (n, omega) and check E^u/2 <= E^c < E^u");
    vf->add_option("--degrees", degrees, "Degrees, e.g. 0,1,2")->required()->delimiter(',');
    auto* single = vf->add_option("--omega", omega_single, "Single frequency");
    auto* wmin = vf->add_option("--omega-min", omega_min, "Smallest frequency");
    vf->add_option("--omega-max", omega_max, "Largest frequency (default omega-min)");
    vf->add_option("--count", count, "Number of frequencies")->capture_default_str();
    vf->add_option("--spacing", spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
    vf->add_option("--tol", tol, "Unitary solver tolerance")->capture_default_str();
    vf->add_option("--grid-size", grid_size, "Chebyshev grid points (0: default)");
    vf->add_option("--lawson-iters", lawson_iters, "Lawson iteration cap")->capture_default_str();
    vf->add_option("--out", out, "Output path (default: stdout)");
    vf->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    single->excludes(wmin);

    auto* f1 = app.add_subcommand("figure1", "Degree-0 error curves over omega in (0, pi)");
    f1->add_flag("--computed", computed, "Add columns computed by the two solvers");
    f1->add_option("--out", out, "CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (su->parsed()) return solve_unitary_cmd(n, omega, tol, max_iter, out);
        if (sc->parsed()) return solve_chebyshev_cmd(n, omega, grid_size, lawson_iters, out);
        if (vf->parsed()) {
            unirat::SweepConfig config;
            config.degrees = degrees;
            if (omega_single) {
                config.omega = {*omega_single, *omega_single, 1, unirat::Spacing::Linear};
            } else {
                if (wmin->count() == 0) throw std::invalid_argument("verify: give --omega or --omega-min");
                config.omega = {omega_min, vf->get_option("--omega-max")->count() ? omega_max : omega_min, count,
                                spacing == "log" ? unirat::Spacing::Log : unirat::Spacing::Linear};
            }
            config.tol = tol;
            config.grid_size = grid_size;
            config.lawson_iters = lawson_iters;
            config.output_path = out;
            config.format = format == "json" ? unirat::Format::Json : unirat::Format::Csv;
            return verify_cmd(config);
        }
        if (f1->parsed()) return figure1_cmd(computed, out);
    } catch (const unirat::FrequencyOutOfRange& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 4;
}
