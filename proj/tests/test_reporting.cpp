#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "unirat/reporting.hpp"

using namespace unirat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) out.push_back(line);
    return out;
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / ("unirat_reporting_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

SweepConfig base_config() {
    SweepConfig c;
    c.degrees = {0, 1};
    c.omega = {0.5, 2.0, 4, Spacing::Linear};
    return c;
}

}  // namespace

TEST_CASE("sweep config validation") {
    CHECK_NOTHROW(base_config().validate());
    auto c = base_config();
    c.degrees.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.degrees = {1, -1};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.omega.count = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.omega.max = 0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.omega.min = 0.0;
    c.omega.spacing = Spacing::Log;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.tol = 1e-14;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.tol = 0.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.grid_size = 500;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = base_config();
    c.lawson_iters = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("frequency grids") {
    auto lin = omega_grid({1.0, 2.0, 5, Spacing::Linear});
    CHECK(lin == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
    auto lg = omega_grid({0.01, 1.0, 3, Spacing::Log});
    REQUIRE(lg.size() == 3);
    CHECK(lg[0] == 0.01);
    CHECK(lg[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(lg[2] == 1.0);
    CHECK(omega_grid({0.7, 3.0, 1, Spacing::Linear}) == std::vector<double>{0.7});
}

TEST_CASE("thread count from the environment") {
    ::setenv("UNIRAT_THREADS", "3", 1);
    CHECK(sweep_threads() == 3u);
    ::setenv("UNIRAT_THREADS", "zero", 1);
    CHECK(sweep_threads() >= 1u);
    ::setenv("UNIRAT_THREADS", "0", 1);
    CHECK(sweep_threads() >= 1u);
    ::unsetenv("UNIRAT_THREADS");
    CHECK(sweep_threads() >= 1u);
}

TEST_CASE("number formatting round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int k = 0; k < 200; ++k) {
        const double v = std::pow(10.0, u(rng)) * (k % 2 ? -1 : 1);
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(INFINITY) == "inf");
    CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("sweep output order and determinism") {
    auto c = base_config();
    c.degrees = {1, 0};
    ::setenv("UNIRAT_THREADS", "1", 1);
    const auto serial = run_sweep(c);
    ::setenv("UNIRAT_THREADS", "4", 1);
    const auto parallel = run_sweep(c);
    ::unsetenv("UNIRAT_THREADS");
    REQUIRE(serial.size() == 8);
    CHECK(serial[0].n == 1);
    CHECK(serial[4].n == 0);
    CHECK(serial[1].omega == 1.0);
    CHECK(bounds_csv(serial) == bounds_csv(parallel));
    CHECK(bounds_json(serial) == bounds_json(parallel));
    for (const auto& r : serial) {
        CHECK(r.lower_ok);
        CHECK(r.upper_ok);
    }
    // n = 0 rows carry the closed forms
    for (std::size_t k = 4; k < 8; ++k) {
        const auto& r = serial[k];
        CHECK(r.error_u == doctest::Approx(2 * std::sin(r.omega / 2)).epsilon(1e-8));
        CHECK(r.error_c == doctest::Approx(r.omega <= kPi / 2 ? std::sin(r.omega) : 1.0).epsilon(1e-8));
    }
}

TEST_CASE("CSV and JSON reports") {
    auto c = base_config();
    c.degrees = {0};
    c.omega = {0.0, kPi, 3, Spacing::Linear};
    const auto rows = run_sweep(c);
    const auto csv = lines(bounds_csv(rows));
    REQUIRE(csv.size() == 4);
    CHECK(csv[0] ==
          "n,omega,error_u,error_c,ratio_c_over_u,lower_ok,upper_ok,asym_ratio_u,asym_ratio_c,max_re_gamma,degenerate");
    CHECK(csv[1].rfind("0,0,0,0,1,", 0) == 0);
    CHECK(csv[3].find(",2,1,") != std::string::npos);

    const auto j = nlohmann::json::parse(bounds_json(rows));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    CHECK(j[0]["exact"] == true);
    CHECK(j[2]["degenerate"] == true);
    CHECK(j[2]["error_u"] == 2.0);
    for (const char* key : {"n", "omega", "error_u", "error_c", "ratio_c_over_u", "lower_ok", "upper_ok",
                            "asym_ratio_u", "asym_ratio_c", "max_re_gamma", "degenerate", "lower_gap"}) {
        CHECK(j[1].contains(key));
    }
}

TEST_CASE("certificate JSON") {
    const auto cert = solve_unitary(Target(1.0, 1));
    const auto text = certificate_json(cert);
    const auto j = nlohmann::json::parse(text);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"alpha", "coeffs_im", "coeffs_re", "deviation", "error_u", "eta", "n",
                                           "nodes", "omega"});
    CHECK(j["eta"].size() == 4);
    CHECK(j["n"] == 1);

    const auto back = certificate_from_json(text);
    CHECK(back.target.omega() == cert.target.omega());
    CHECK(back.eta == cert.eta);
    CHECK(back.nodes == cert.nodes);
    CHECK(back.alpha == cert.alpha);
    CHECK(back.error_u == cert.error_u);
    CHECK(back.symmetric);
    REQUIRE(back.approximant.coeffs().size() == 2);
    for (std::size_t k = 0; k < 2; ++k) CHECK(back.approximant.coeffs()[k] == cert.approximant.coeffs()[k]);
    CHECK(certificate_json(back) == text);

    auto broken = j;
    broken["coeffs_re"].push_back(0.0);
    CHECK_THROWS_AS((void)certificate_from_json(broken.dump()), std::invalid_argument);
    broken = j;
    broken.erase("alpha");
    CHECK_THROWS_AS((void)certificate_from_json(broken.dump()), std::invalid_argument);
    CHECK_THROWS_AS((void)certificate_from_json("{"), std::invalid_argument);
}

TEST_CASE("minimax JSON") {
    const auto res = solve_chebyshev(Target(1.0, 1));
    const auto j = nlohmann::json::parse(minimax_json(res));
    for (const char* key : {"n", "omega", "support_re", "support_im", "values_re", "values_im", "weights_re",
                            "weights_im", "error_c", "flatness", "lawson_iters"}) {
        CHECK(j.contains(key));
    }
    CHECK(j.size() == 11);
    CHECK(j["error_c"].get<double>() == res.error_c);
    CHECK(j["support_re"].size() == res.approximant.support().size());
}

TEST_CASE("figure 1 curves") {
    const auto rows = figure1_rows(false);
    REQUIRE(rows.size() == 200);
    CHECK(rows.front().omega > 0.0);
    CHECK(rows.back().omega < kPi);
    for (const auto& r : rows) {
        CHECK(r.error_u == 2.0 * std::sin(r.omega / 2.0));
        CHECK(r.error_c == (r.omega <= kPi / 2 ? std::sin(r.omega) : 1.0));
        CHECK_FALSE(r.error_u_computed);
    }
    const auto csv = lines(figure1_csv(rows));
    REQUIRE(csv.size() == 201);
    CHECK(csv[0] == "omega,error_u,error_c");
}

TEST_CASE("atomic writes") {
    const auto dir = scratch_dir();
    const auto file = dir / "out.csv";
    write_atomic(file, "first\n");
    CHECK(slurp(file) == "first\n");
    write_atomic(file, "second\n");
    CHECK(slurp(file) == "second\n");
    CHECK_THROWS(write_atomic(dir / "missing" / "out.csv", "x"));
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    CHECK(entries == 1);
    fs::remove_all(dir);
}
