#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kms/approx.hpp"
#include "kms/classify.hpp"
#include "kms/complexspectrum.hpp"
#include "kms/realspectrum.hpp"

namespace kms {

/// Accepts "<float>", "<float>i" and "<float><+|-><float>i" with optional
/// whitespace around the sign. Throws InvalidParameter otherwise.
Complex parse_rho(std::string_view text);

/// "%.17g" with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

/// JSON numbers; non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);
double json_to_double(const nlohmann::json& j);

nlohmann::json to_json(const SpectrumResult& r);
SpectrumResult spectrum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ComplexSpectrumResult& r);
nlohmann::json to_json(const MatrixClassReport& r);
nlohmann::json to_json(const DoubleEigenLocus& l);
nlohmann::json to_json(const ApproxReport& r);

/// One row per (rho sample, k) of a real-parameter sweep.
struct SweepRow {
  double rho_re = 0.0;
  double rho_im = 0.0;
  int k = 0;
  double lambda_re = 0.0;
  double lambda_im = 0.0;
  double mu_re = 0.0;
  double mu_im = 0.0;
  std::string klass;
  std::string zero_type;
};

/// rho_i = start + (end - start) i / (steps - 1), i = 0..steps-1. Samples are
/// solved in parallel when opt.parallel is set; rows come back ordered by rho,
/// then k. Eigenvectors are never computed.
std::vector<SweepRow> sweep(int n, double rho_start, double rho_end, int steps,
                            const SpectrumOptions& opt = {});

std::vector<SweepRow> rows_from_spectrum(const SpectrumResult& r);
std::vector<SweepRow> rows_from_spectrum(const ComplexSpectrumResult& r);

/// Header line plus one line per row, '\n' terminated.
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace kms
