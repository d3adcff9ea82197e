// kms: spectra, sweeps, classification and self-checks for K_n(rho) = [rho^|j-k|].

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kms/approx.hpp"
#include "kms/classify.hpp"
#include "kms/complexspectrum.hpp"
#include "kms/io.hpp"
#include "kms/oracle.hpp"
#include "kms/realspectrum.hpp"
#include "kms/verify.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kVerification = 3 };

struct Common {
  int n = 0;
  std::string rho = "0";
  double tol = 1e-12;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool with_rho = true) {
  sub->add_option("--n", c.n, "matrix order")->required()->check(CLI::Range(2, 100000000));
  if (with_rho) sub->add_option("--rho", c.rho, "parameter, e.g. 0.5, 2i, -1+2i")->required();
  sub->add_option("--tol", c.tol, "relative bracket width for the root finder");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "output file (default stdout)");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

kms::SpectrumOptions solver_options(const Common& c, bool vectors) {
  if (!(c.tol > 0.0) || c.tol >= 1e-2) throw kms::InvalidParameter("--tol must be in (0, 1e-2)");
  kms::SpectrumOptions o;
  o.tol = c.tol;
  o.vectors = vectors;
  return o;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_spectrum(const Common& c, bool no_vectors) {
  const kms::KmsParams p(c.n, kms::parse_rho(c.rho));
  const bool vectors = !no_vectors && c.format == "json";
  if (p.is_real()) {
    const kms::SpectrumResult r = kms::real_spectrum(p, solver_options(c, vectors));
    if (c.format == "csv") return emit(kms::to_csv(kms::rows_from_spectrum(r)), c.out), kOk;
    json j = kms::to_json(r);
    j["classes"] = kms::to_json(kms::classify_params(p));
    emit(dump(j), c.out);
  } else {
    solver_options(c, vectors);
    const kms::ComplexSpectrumResult r = kms::complex_spectrum(p, vectors);
    if (c.format == "csv") return emit(kms::to_csv(kms::rows_from_spectrum(r)), c.out), kOk;
    json j = kms::to_json(r);
    j["classes"] = kms::to_json(kms::classify_params(p));
    emit(dump(j), c.out);
  }
  return kOk;
}

int cmd_sweep(const Common& c, double start, double end, int steps) {
  const std::vector<kms::SweepRow> rows = kms::sweep(c.n, start, end, steps, solver_options(c, false));
  if (c.format == "csv") {
    emit(kms::to_csv(rows), c.out);
    return kOk;
  }
  json arr = json::array();
  for (const kms::SweepRow& r : rows)
    arr.push_back({{"rho_re", kms::json_number(r.rho_re)}, {"rho_im", kms::json_number(r.rho_im)},
                   {"k", r.k}, {"lambda_re", kms::json_number(r.lambda_re)},
                   {"lambda_im", kms::json_number(r.lambda_im)}, {"mu_re", kms::json_number(r.mu_re)},
                   {"mu_im", kms::json_number(r.mu_im)}, {"klass", r.klass}, {"zero_type", r.zero_type}});
  emit(dump(json{{"n", c.n}, {"rows", arr}}), c.out);
  return kOk;
}

int cmd_classify(const Common& c) {
  const kms::KmsParams p(c.n, kms::parse_rho(c.rho));
  const kms::MatrixClassReport r = kms::classify_params(p);
  if (c.format == "csv") {
    std::string s = "class,member\n";
    for (kms::MatrixClass m : kms::kAllMatrixClasses)
      s += std::string(kms::to_string(m)) + ',' + (r.get(m) ? "true" : "false") + '\n';
    emit(s, c.out);
  } else {
    emit(dump(json{{"n", c.n}, {"rho", kms::format_double(p.rho.real()) + (p.rho.imag() < 0 ? "" : "+") +
                                           kms::format_double(p.rho.imag()) + "i"},
                   {"classes", kms::to_json(r)}}),
         c.out);
  }
  return kOk;
}

int cmd_double_locus(const Common& c, const std::string& type) {
  std::vector<kms::DoubleEigenLocus> loci;
  if (type != "2") {
    auto a = kms::double_eigen_loci(c.n, kms::ZeroType::Type1);
    loci.insert(loci.end(), a.begin(), a.end());
  }
  if (type != "1") {
    auto b = kms::double_eigen_loci(c.n, kms::ZeroType::Type2);
    loci.insert(loci.end(), b.begin(), b.end());
  }
  if (c.format == "csv") {
    std::string s = "n,type,t0_re,t0_im,rho_re,rho_im,psi_residual,dpsi_residual\n";
    for (const auto& l : loci)
      s += std::to_string(l.n) + ',' + kms::to_string(l.type_tag) + ',' + kms::format_double(l.t0.real()) +
           ',' + kms::format_double(l.t0.imag()) + ',' + kms::format_double(l.rho.real()) + ',' +
           kms::format_double(l.rho.imag()) + ',' + kms::format_double(l.psi_residual) + ',' +
           kms::format_double(l.dpsi_residual) + '\n';
    emit(s, c.out);
    return kOk;
  }
  json arr = json::array();
  for (const auto& l : loci) arr.push_back(kms::to_json(l));
  emit(dump(json{{"n", c.n}, {"loci", arr}}), c.out);
  return kOk;
}

int cmd_approx(const Common& c, const std::string& kind) {
  const kms::Complex rho = kms::parse_rho(c.rho);
  kms::ApproxReport r;
  if (kind == "large") {
    r = kms::large_eigs_report(c.n, rho);
  } else {
    if (rho.imag() != 0.0) throw kms::DomainError(kind + " needs a real rho");
    r = kind == "regula-falsi" ? kms::regula_falsi_report(c.n, rho.real())
                               : kms::near_one_report(c.n, rho.real());
  }
  if (c.format == "csv") {
    std::string s = "index,approx,exact\n";
    for (std::size_t i = 0; i < r.exact_values.size(); ++i)
      s += std::to_string(i) + ',' + kms::format_double(r.approx_values[i]) + ',' +
           kms::format_double(r.exact_values[i]) + '\n';
    emit(s, c.out);
  } else {
    json j = kms::to_json(r);
    j["kind"] = kind;
    j["n"] = c.n;
    emit(dump(j), c.out);
  }
  return kOk;
}

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_bench(const std::vector<int>& ns, const std::string& rho_text, const std::string& out) {
  const kms::Complex rho = kms::parse_rho(rho_text);
  if (rho.imag() != 0.0) throw kms::InvalidParameter("bench needs a real rho");
  std::string s = "n,t_structured_ms,t_oracle_ms,speedup\n";
  char buf[128];
  for (int n : ns) {
    const kms::KmsParams p(n, rho.real());
    kms::SpectrumOptions o;
    o.vectors = false;
    const double ts = time_ms([&] { kms::real_spectrum(p, o); });
    std::snprintf(buf, sizeof buf, "%d,%.3f,", n, ts);
    s += buf;
    double to = 0.0;
    try {
      to = time_ms([&] { kms::oracle_eig_kms(p); });
    } catch (const kms::SizeLimitError&) {
      s += "size limit,\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.3f,%.2f\n", to, ts > 0.0 ? to / ts : 0.0);
    s += buf;
  }
  emit(s, out);
  return kOk;
}

int cmd_verify(const std::string& level, bool fault, std::uint64_t seed, const std::string& out) {
  kms::VerifyOptions o;
  o.level = level == "full" ? kms::VerifyLevel::Full : kms::VerifyLevel::Quick;
  o.inject_fault = fault;
  o.seed = seed;
  const kms::VerifyReport r = kms::run_verify(o);
  emit(kms::format_report(r), out);
  return r.passed() ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Kac-Murdock-Szego matrices"};
  app.require_subcommand(1);

  Common spec_c;
  bool no_vectors = false;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, eigenvectors and class report");
  add_common(spectrum, spec_c);
  spectrum->add_flag("--no-vectors", no_vectors, "skip eigenvectors");

  Common sweep_c;
  sweep_c.format = "csv";
  double rho_start = 0.0, rho_end = 1.0;
  int steps = 101;
  auto* sweep = app.add_subcommand("sweep", "real spectrum over a range of rho");
  add_common(sweep, sweep_c, false);
  sweep->add_option("--rho-start", rho_start)->required();
  sweep->add_option("--rho-end", rho_end)->required();
  sweep->add_option("--steps", steps)->check(CLI::Range(1, 10000000));

  Common class_c;
  auto* classify = app.add_subcommand("classify", "matrix class membership");
  add_common(classify, class_c);

  Common locus_c;
  std::string locus_type = "both";
  auto* locus = app.add_subcommand("double-locus", "parameters with a double eigenvalue -n");
  add_common(locus, locus_c, false);
  locus->add_option("--type", locus_type)->check(CLI::IsMember({"1", "2", "both"}));

  Common approx_c;
  std::string approx_kind = "large";
  auto* approx = app.add_subcommand("approx", "closed-form approximations against exact values");
  add_common(approx, approx_c);
  approx->add_option("--kind", approx_kind)->check(CLI::IsMember({"large", "regula-falsi", "near-one"}));

  std::vector<int> bench_ns;
  std::string bench_rho = "0.5", bench_out;
  auto* bench = app.add_subcommand("bench", "structured solver against the dense oracle");
  bench->add_option("--n-list", bench_ns, "orders to time")->required()->delimiter(',')->check(CLI::Range(2, 100000000));
  bench->add_option("--rho", bench_rho);
  bench->add_option("--out", bench_out);

  std::string level = "quick", verify_out;
  bool inject = false;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_option("--level", level)->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-fault", inject, "perturb one coefficient of p_2n");
  verify->add_option("--seed", seed);
  verify->add_option("--out", verify_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(spec_c, no_vectors);
    if (*sweep) return cmd_sweep(sweep_c, rho_start, rho_end, steps);
    if (*classify) return cmd_classify(class_c);
    if (*locus) return cmd_double_locus(locus_c, locus_type);
    if (*approx) return cmd_approx(approx_c, approx_kind);
    if (*bench) return cmd_bench(bench_ns, bench_rho, bench_out);
    if (*verify) return cmd_verify(level, inject, seed, verify_out);
  } catch (const kms::VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const kms::InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const kms::DomainError& e) {
    std::cerr << "outside domain: " << e.what() << '\n';
    return kUsage;
  } catch (const kms::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kUsage;
  } catch (const kms::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
