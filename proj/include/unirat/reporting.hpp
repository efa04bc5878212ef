#pragma once

// Sweeps over (n, omega), CSV/JSON emission and the n = 0 error curves.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unirat/bounds.hpp"
#include "unirat/cheb_minimax.hpp"
#include "unirat/unitary_remez.hpp"

namespace unirat {

enum class Spacing { Linear, Log };
enum class Format { Csv, Json };

struct OmegaSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    Spacing spacing = Spacing::Linear;
};

struct SweepConfig {
    std::vector<int> degrees;
    OmegaSpec omega;
    double tol = 1e-10;
    int grid_size = 0;  ///< 0 picks the default per degree
    int lawson_iters = 1000;
    std::string output_path;
    Format format = Format::Csv;

    /// Throws std::invalid_argument on an empty degree list, a negative degree,
    /// count < 1, max < min, min <= 0 with log spacing or tol outside [1e-13, 1e-2].
    void validate() const;
};

/// count frequencies from min to max, both included (a single one is min).
[[nodiscard]] std::vector<double> omega_grid(const OmegaSpec& spec);

/// Thread count for sweeps: UNIRAT_THREADS when set to a positive integer,
/// otherwise the available hardware parallelism.
[[nodiscard]] unsigned sweep_threads();

/// One BoundsReport per (n, omega), ordered by n in the given order and then by omega.
[[nodiscard]] std::vector<BoundsReport> run_sweep(const SweepConfig& config);

/// 17 significant digits; nan and inf spelled out.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string bounds_csv(const std::vector<BoundsReport>& rows);
[[nodiscard]] std::string bounds_json(const std::vector<BoundsReport>& rows);

[[nodiscard]] std::string certificate_json(const PhaseCertificate& cert);
[[nodiscard]] std::string minimax_json(const MinimaxResult& result);

/// Parse a document written by certificate_json. iterations is 0; the two
/// flags are recomputed from omega, eta and nodes.
/// Throws std::invalid_argument on a missing key or inconsistent lengths.
[[nodiscard]] PhaseCertificate certificate_from_json(const std::string& text);

struct Figure1Row {
    double omega;
    double error_u;
    double error_c;
    std::optional<double> error_u_computed;
    std::optional<double> error_c_computed;
};

/// n = 0 error curves at omega = pi (k+1)/201, k = 0..199, from the closed
/// forms and, with computed = true, also from the two solvers.
[[nodiscard]] std::vector<Figure1Row> figure1_rows(bool computed);
[[nodiscard]] std::string figure1_csv(const std::vector<Figure1Row>& rows);

/// Write to a temporary file in the same directory, then rename over path.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace unirat
