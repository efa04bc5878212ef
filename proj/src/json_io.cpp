#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "unirat/reporting.hpp"

namespace unirat {

namespace {

using Json = nlohmann::ordered_json;

// nlohmann prints shortest round-trip doubles; documents here use 17 digits throughout.
void dump(std::ostream& os, const Json& j, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ',';
                first = false;
                pad(depth + 1);
                os << Json(key).dump() << (indent > 0 ? ": " : ":");
                dump(os, value, indent, depth + 1);
            }
            pad(depth);
            os << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) os << ',';
                first = false;
                pad(depth + 1);
                dump(os, value, indent, depth + 1);
            }
            pad(depth);
            os << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            os << (std::isfinite(v) ? format_double(v) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

std::string render(const Json& j) {
    std::ostringstream os;
    dump(os, j, 2, 0);
    os << '\n';
    return os.str();
}

Json reals(std::span<const double> xs) {
    Json a = Json::array();
    for (double x : xs) a.push_back(x);
    return a;
}

template <class F>
Json parts(std::span<const cplx> zs, F part) {
    Json a = Json::array();
    for (const cplx& z : zs) a.push_back(part(z));
    return a;
}

double re(const cplx& z) { return z.real(); }
double im(const cplx& z) { return z.imag(); }

const Json& field(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("certificate: missing key ") + key);
    return *it;
}

}  // namespace

std::string certificate_json(const PhaseCertificate& cert) {
    Json j;
    j["n"] = cert.target.degree();
    j["omega"] = cert.target.omega();
    j["coeffs_re"] = parts(cert.approximant.coeffs(), re);
    j["coeffs_im"] = parts(cert.approximant.coeffs(), im);
    j["eta"] = reals(cert.eta);
    j["nodes"] = reals(cert.nodes);
    j["alpha"] = cert.alpha;
    j["error_u"] = cert.error_u;
    j["deviation"] = cert.deviation;
    return render(j);
}

PhaseCertificate certificate_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate: ") + e.what());
    }
    try {
        const int n = field(j, "n").get<int>();
        const double omega = field(j, "omega").get<double>();
        const auto cre = field(j, "coeffs_re").get<std::vector<double>>();
        const auto cim = field(j, "coeffs_im").get<std::vector<double>>();
        if (cre.size() != cim.size() || cre.size() != static_cast<std::size_t>(n) + 1) {
            throw std::invalid_argument("certificate: coefficient arrays must have n+1 entries");
        }
        std::vector<cplx> coeffs(cre.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] = {cre[k], cim[k]};

        PhaseCertificate cert{Target(omega, n), UnitaryRational(std::move(coeffs))};
        cert.eta = field(j, "eta").get<std::vector<double>>();
        cert.nodes = field(j, "nodes").get<std::vector<double>>();
        if (!cert.eta.empty() && cert.eta.size() != cert.nodes.size() + 1) {
            throw std::invalid_argument("certificate: eta must have one entry more than nodes");
        }
        cert.alpha = field(j, "alpha").get<double>();
        cert.error_u = field(j, "error_u").get<double>();
        cert.deviation = field(j, "deviation").get<double>();
        cert.near_degenerate = omega >= 0.995 * cert.target.degenerate_frequency();
        const auto mirrored = [](const std::vector<double>& v) {
            for (std::size_t k = 0; k < v.size(); ++k) {
                if (std::abs(v[k] + v[v.size() - 1 - k]) > 1e-8) return false;
            }
            return true;
        };
        cert.symmetric = mirrored(cert.eta) && mirrored(cert.nodes);
        return cert;
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("certificate: ") + e.what());
    }
}

std::string minimax_json(const MinimaxResult& result) {
    const auto& r = result.approximant;
    Json j;
    j["n"] = result.target.degree();
    j["omega"] = result.target.omega();
    j["support_re"] = parts(r.support(), re);
    j["support_im"] = parts(r.support(), im);
    j["values_re"] = parts(r.values(), re);
    j["values_im"] = parts(r.values(), im);
    j["weights_re"] = parts(r.weights(), re);
    j["weights_im"] = parts(r.weights(), im);
    j["error_c"] = result.error_c;
    j["flatness"] = result.flatness;
    j["lawson_iters"] = result.lawson_iters;
    return render(j);
}

std::string bounds_json(const std::vector<BoundsReport>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) {
        Json j;
        j["n"] = r.n;
        j["omega"] = r.omega;
        j["error_u"] = r.error_u;
        j["error_c"] = r.error_c;
        j["ratio_c_over_u"] = r.ratio_c_over_u();
        j["lower_ok"] = r.lower_ok;
        j["upper_ok"] = r.upper_ok;
        j["asym_ratio_u"] = r.asym_ratio_u;
        j["asym_ratio_c"] = r.asym_ratio_c;
        j["max_re_gamma"] = r.max_re_gamma;
        j["degenerate"] = r.degenerate;
        j["exact"] = r.exact;
        j["lower_gap"] = r.lower_gap;
        j["unitary_converged"] = r.unitary_converged;
        j["chebyshev_converged"] = r.chebyshev_converged;
        a.push_back(std::move(j));
    }
    return render(a);
}

}  // namespace unirat
