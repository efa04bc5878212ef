#include "unirat/reporting.hpp"

#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <unistd.h>

namespace unirat {

void SweepConfig::validate() const {
    if (degrees.empty()) throw std::invalid_argument("sweep: no degrees given");
    for (int n : degrees) {
        if (n < 0) throw std::invalid_argument("sweep: degrees must be >= 0");
    }
    if (omega.count < 1) throw std::invalid_argument("sweep: count must be >= 1");
    if (!(omega.min >= 0.0) || !std::isfinite(omega.max)) throw std::invalid_argument("sweep: omega must be finite and >= 0");
    if (omega.max < omega.min) throw std::invalid_argument("sweep: omega max < min");
    if (omega.spacing == Spacing::Log && !(omega.min > 0.0)) {
        throw std::invalid_argument("sweep: log spacing needs omega min > 0");
    }
    if (!(tol >= 1e-13 && tol <= 1e-2)) throw std::invalid_argument("sweep: tol must lie in [1e-13, 1e-2]");
    if (grid_size != 0) {
        for (int n : degrees) {
            if (grid_size < default_grid_size(n)) {
                throw std::invalid_argument("sweep: grid size below max(1000, 20 (2n+2))");
            }
        }
    }
    if (lawson_iters < 1) throw std::invalid_argument("sweep: lawson iterations must be >= 1");
}

std::vector<double> omega_grid(const OmegaSpec& spec) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    if (spec.count == 1) {
        out.push_back(spec.min);
        return out;
    }
    const double m = spec.count - 1;
    for (int k = 0; k < spec.count; ++k) {
        const double t = k / m;
        if (spec.spacing == Spacing::Linear) {
            out.push_back(spec.min + (spec.max - spec.min) * t);
        } else {
            out.push_back(spec.min * std::pow(spec.max / spec.min, t));
        }
    }
    out.back() = spec.max;
    return out;
}

unsigned sweep_threads() {
    if (const char* env = std::getenv("UNIRAT_THREADS")) {
        unsigned v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec == std::errc{} && ptr == end && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BoundsReport> run_sweep(const SweepConfig& config) {
    config.validate();
    const auto omegas = omega_grid(config.omega);
    struct Job {
        int n;
        double omega;
    };
    std::vector<Job> jobs;
    for (int n : config.degrees) {
        for (double w : omegas) jobs.push_back({n, w});
    }

    const SolveOptions options{config.tol, 200, config.grid_size, config.lawson_iters};
    std::vector<BoundsReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = compute_bounds_report(jobs[i].n, jobs[i].omega, options);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(1, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string bounds_csv(const std::vector<BoundsReport>& rows) {
    std::ostringstream os;
    os << "n,omega,error_u,error_c,ratio_c_over_u,lower_ok,upper_ok,asym_ratio_u,asym_ratio_c,max_re_gamma,degenerate\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.omega) << ',' << format_double(r.error_u) << ','
           << format_double(r.error_c) << ',' << format_double(r.ratio_c_over_u()) << ',' << flag(r.lower_ok) << ','
           << flag(r.upper_ok) << ',' << format_double(r.asym_ratio_u) << ',' << format_double(r.asym_ratio_c) << ','
           << format_double(r.max_re_gamma) << ',' << flag(r.degenerate) << '\n';
    }
    return os.str();
}

std::vector<Figure1Row> figure1_rows(bool computed) {
    std::vector<Figure1Row> rows(200);
    for (int k = 0; k < 200; ++k) {
        const double omega = kPi * (k + 1) / 201.0;
        const auto closed = closed_form_n0(omega);
        rows[k] = {omega, closed.error_u, closed.error_c, std::nullopt, std::nullopt};
    }
    if (!computed) return rows;

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int k = next++; k < 200; k = next++) {
            try {
                const Target target(rows[k].omega, 0);
                double eu = 0.0;
                try {
                    eu = solve_unitary(target).error_u;
                } catch (const NotConverged& e) {
                    eu = e.best().error_u;
                }
                rows[k].error_u_computed = eu;
                rows[k].error_c_computed = solve_chebyshev(target).error_c;
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min(sweep_threads(), 200u);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
    const bool computed = !rows.empty() && rows.front().error_u_computed.has_value();
    std::ostringstream os;
    os << "omega,error_u,error_c";
    if (computed) os << ",error_u_computed,error_c_computed";
    os << '\n';
    for (const auto& r : rows) {
        os << format_double(r.omega) << ',' << format_double(r.error_u) << ',' << format_double(r.error_c);
        if (computed) {
            os << ',' << format_double(r.error_u_computed.value_or(std::nan(""))) << ','
               << format_double(r.error_c_computed.value_or(std::nan("")));
        }
        os << '\n';
    }
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::string pattern = (dir / ("." + path.filename().string() + ".XXXXXX")).string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw std::runtime_error("cannot create temporary file next to " + path.string());
    const fs::path tmp = pattern;
    bool open = true;
    try {
        std::size_t done = 0;
        while (done < contents.size()) {
            const auto w = ::write(fd, contents.data() + done, contents.size() - done);
            if (w < 0) {
                if (errno == EINTR) continue;
                throw std::runtime_error("write failed: " + tmp.string());
            }
            done += static_cast<std::size_t>(w);
        }
        const bool synced = ::fsync(fd) == 0;
        open = false;
        if (::close(fd) != 0 || !synced) throw std::runtime_error("write failed: " + tmp.string());
        fs::permissions(tmp, fs::perms::owner_read | fs::perms::owner_write | fs::perms::group_read |
                                 fs::perms::others_read);
        fs::rename(tmp, path);
    } catch (...) {
        if (open) ::close(fd);
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

}  // namespace unirat
