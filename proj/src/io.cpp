#include "kms/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>

namespace kms {
namespace {

using nlohmann::json;

void skip_space(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// Reads an unsigned-or-signed float at position i; advances i.
bool read_float(std::string_view s, std::size_t& i, double& out) {
  const char* first = s.data() + i;
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc()) return false;
  i = std::size_t(res.ptr - s.data());
  return true;
}

json complex_json(Complex z) { return json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}}; }

std::string mu_text(const MuRoot& m) { return to_string(m.kind); }

RootKind parse_kind(const std::string& s) {
  return s == "hyperbolic" ? RootKind::Hyperbolic : RootKind::Trigonometric;
}

}  // namespace

Complex parse_rho(std::string_view text) {
  std::size_t i = 0;
  skip_space(text, i);
  double a = 0.0;
  if (!read_float(text, i, a)) throw InvalidParameter("cannot parse rho: '" + std::string(text) + "'");
  skip_space(text, i);
  if (i == text.size()) return {a, 0.0};
  if (text[i] == 'i') {
    ++i;
    skip_space(text, i);
    if (i != text.size()) throw InvalidParameter("trailing characters in rho");
    return {0.0, a};
  }
  if (text[i] != '+' && text[i] != '-') throw InvalidParameter("expected sign in complex rho");
  const double sign = text[i] == '-' ? -1.0 : 1.0;
  ++i;
  skip_space(text, i);
  double b = 1.0;
  if (i < text.size() && text[i] != 'i') {
    if (text[i] == '+' || text[i] == '-') throw InvalidParameter("doubled sign in rho");
    if (!read_float(text, i, b)) throw InvalidParameter("cannot parse imaginary part of rho");
  }
  skip_space(text, i);
  if (i >= text.size() || text[i] != 'i') throw InvalidParameter("imaginary part must end in 'i'");
  ++i;
  skip_space(text, i);
  if (i != text.size()) throw InvalidParameter("trailing characters in rho");
  return {a, sign * b};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double json_to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  if (s == "nan") return std::nan("");
  throw InvalidParameter("not a number: " + s);
}

json to_json(const SpectrumResult& r) {
  json pairs = json::array();
  for (const EigenPair& e : r.pairs) {
    json vec = json::array();
    for (double v : e.vector) vec.push_back(json_number(v));
    pairs.push_back({
        {"k", e.k},
        {"lambda", json_number(e.lambda)},
        {"log_abs_lambda", json_number(e.log_abs_lambda)},
        {"mu",
         {{"kind", mu_text(e.mu)},
          {"value", json_number(e.mu.value)},
          {"lo", json_number(e.mu.lo)},
          {"hi", json_number(e.mu.hi)},
          {"residual", json_number(e.mu.residual)}}},
        {"vector", vec},
        {"zero_type", to_string(e.zero_type)},
        {"klass", to_string(e.klass)},
    });
  }
  const SpectrumDiagnostics& d = r.diagnostics;
  return {
      {"n", r.params.n},
      {"rho", complex_json(r.params.rho)},
      {"pairs", pairs},
      {"diagnostics",
       {{"max_residual", json_number(d.max_residual)},
        {"trace_error", json_number(d.trace_error)},
        {"determinant_error", json_number(d.determinant_error)},
        {"max_cross_check", json_number(d.max_cross_check)},
        {"extraordinary_count", d.extraordinary_count},
        {"overflow", d.overflow},
        {"notes", d.notes}}},
  };
}

SpectrumResult spectrum_from_json(const json& j) {
  const Complex rho(json_to_double(j.at("rho").at("re")), json_to_double(j.at("rho").at("im")));
  SpectrumResult r{KmsParams(j.at("n").get<int>(), rho), {}, {}};
  for (const json& p : j.at("pairs")) {
    EigenPair e;
    e.k = p.at("k").get<int>();
    e.lambda = json_to_double(p.at("lambda"));
    e.log_abs_lambda = json_to_double(p.at("log_abs_lambda"));
    const json& m = p.at("mu");
    e.mu.k = e.k;
    e.mu.kind = parse_kind(m.at("kind").get<std::string>());
    e.mu.value = json_to_double(m.at("value"));
    e.mu.lo = json_to_double(m.at("lo"));
    e.mu.hi = json_to_double(m.at("hi"));
    e.mu.residual = json_to_double(m.at("residual"));
    for (const json& v : p.at("vector")) e.vector.push_back(json_to_double(v));
    e.zero_type = p.at("zero_type").get<std::string>() == "type-1" ? ZeroType::Type1 : ZeroType::Type2;
    e.klass = p.at("klass").get<std::string>() == "extraordinary" ? EigenClass::Extraordinary
                                                                  : EigenClass::Ordinary;
    r.pairs.push_back(std::move(e));
  }
  const json& d = j.at("diagnostics");
  r.diagnostics.max_residual = json_to_double(d.at("max_residual"));
  r.diagnostics.trace_error = json_to_double(d.at("trace_error"));
  r.diagnostics.determinant_error = json_to_double(d.at("determinant_error"));
  r.diagnostics.max_cross_check = json_to_double(d.at("max_cross_check"));
  r.diagnostics.extraordinary_count = d.at("extraordinary_count").get<int>();
  r.diagnostics.overflow = d.at("overflow").get<bool>();
  r.diagnostics.notes = d.at("notes").get<std::vector<std::string>>();
  return r;
}

json to_json(const ComplexSpectrumResult& r) {
  json pairs = json::array();
  for (const ComplexEigenPair& e : r.pairs) {
    json vec = json::array();
    for (const Complex& v : e.vector) vec.push_back(complex_json(v));
    pairs.push_back({{"lambda", complex_json(e.lambda)},
                     {"z", complex_json(e.z)},
                     {"mu", complex_json(e.mu)},
                     {"vector", vec},
                     {"zero_type", to_string(e.zero_type)}});
  }
  return {{"n", r.params.n},
          {"rho", complex_json(r.params.rho)},
          {"pairs", pairs},
          {"diagnostics",
           {{"max_residual", json_number(r.max_residual)},
            {"trace_error", json_number(r.trace_error)},
            {"delegated", r.delegated},
            {"notes", r.notes}}}};
}

json to_json(const MatrixClassReport& r) {
  json out = json::object();
  for (MatrixClass c : kAllMatrixClasses) out[to_string(c)] = r.get(c);
  return out;
}

json to_json(const DoubleEigenLocus& l) {
  return {{"n", l.n},
          {"type", to_string(l.type_tag)},
          {"t0", complex_json(l.t0)},
          {"rho", complex_json(l.rho)},
          {"psi_residual", json_number(l.psi_residual)},
          {"dpsi_residual", json_number(l.dpsi_residual)}};
}

json to_json(const ApproxReport& r) {
  json a = json::array(), e = json::array();
  for (double v : r.approx_values) a.push_back(json_number(v));
  for (double v : r.exact_values) e.push_back(json_number(v));
  return {{"approx", a}, {"exact", e}, {"max_rel_error", json_number(r.max_rel_error)}};
}

std::vector<SweepRow> rows_from_spectrum(const SpectrumResult& r) {
  std::vector<SweepRow> rows;
  rows.reserve(r.pairs.size());
  for (const EigenPair& e : r.pairs) {
    SweepRow row;
    row.rho_re = r.params.rho.real();
    row.rho_im = r.params.rho.imag();
    row.k = e.k;
    row.lambda_re = e.lambda;
    if (e.mu.kind == RootKind::Trigonometric) row.mu_re = e.mu.value;
    else row.mu_im = e.mu.value;
    row.klass = to_string(e.klass);
    row.zero_type = to_string(e.zero_type);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> rows_from_spectrum(const ComplexSpectrumResult& r) {
  std::vector<SweepRow> rows;
  int k = 0;
  for (const ComplexEigenPair& e : r.pairs) {
    SweepRow row;
    row.rho_re = r.params.rho.real();
    row.rho_im = r.params.rho.imag();
    row.k = k++;
    row.lambda_re = e.lambda.real();
    row.lambda_im = e.lambda.imag();
    row.mu_re = e.mu.real();
    row.mu_im = e.mu.imag();
    row.klass = "n/a";
    row.zero_type = to_string(e.zero_type);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep(int n, double rho_start, double rho_end, int steps,
                            const SpectrumOptions& opt) {
  if (steps < 1) throw InvalidParameter("steps must be >= 1");
  if (!std::isfinite(rho_start) || !std::isfinite(rho_end)) throw InvalidParameter("rho range must be finite");
  std::vector<std::vector<SweepRow>> per(steps);
  std::vector<std::exception_ptr> errors(steps);
  const bool parallel = opt.parallel;
  SpectrumOptions inner = opt;
  inner.vectors = false;
  inner.parallel = false;
#if defined(KMS_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int i = 0; i < steps; ++i) {
    try {
      const double rho = steps == 1 ? rho_start
                                    : rho_start + (rho_end - rho_start) * i / (steps - 1);
      per[i] = rows_from_spectrum(real_spectrum(KmsParams(n, rho), inner));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  (void)parallel;
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<SweepRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "rho_re,rho_im,k,lambda_re,lambda_im,mu_re,mu_im,klass,zero_type\n";
  for (const SweepRow& r : rows) {
    out += format_double(r.rho_re) + ',' + format_double(r.rho_im) + ',' + std::to_string(r.k) +
           ',' + format_double(r.lambda_re) + ',' + format_double(r.lambda_im) + ',' +
           format_double(r.mu_re) + ',' + format_double(r.mu_im) + ',' + r.klass + ',' +
           r.zero_type + '\n';
  }
  return out;
}

}  // namespace kms
