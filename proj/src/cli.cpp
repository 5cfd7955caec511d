#include "sharpwave/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "sharpwave/constants.hpp"
#include "sharpwave/errors.hpp"

namespace sharpwave {

namespace {

namespace fs = std::filesystem;

ExperimentOptions experiment_options(const RunConfig& c) {
  ExperimentOptions o;
  o.fopt.seed = c.seed;
  o.tol = c.tol.value_or(1e-3);
  return o;
}

std::vector<SphericalFunction> lemma21_trials(int d) {
  const Vec e1 = Vec::Unit(d, 0);
  return {SphericalFunction::zonal(d, e1, [](double t) { return 1.0 + 0.5 * t; }),
          SphericalFunction::zonal(d, e1, [](double t) { return 1.0 + t * t; }),
          SphericalFunction::zonal(d, e1, [](double t) { return std::exp(t); })};
}

std::vector<double> default_deltas() {
  std::vector<double> out;
  for (int k = 7; k <= 14; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

void add_sphere_reports(RunResult& res, const Setting& s, const FourierData& f, const ExperimentOptions& o) {
  const double upper_hls = (3.0 - s.d) / 4.0;
  if (s.beta > s.beta_d() && s.beta < upper_hls) res.reports.push_back(verify_hls(s, f, f, o));
  res.reports.push_back(verify_corollary14(s, f, f, o));
  const double lambda = s.riesz_lambda();
  if (lambda >= -2.0 && lambda < 0.0) res.reports.push_back(verify_lemma21(s, lemma21_trials(s.d), o.fopt.seed, o));
}

void run_command(RunResult& res, const RunConfig& c) {
  const Setting s(c.dim, c.beta);
  const ExperimentOptions o = experiment_options(c);
  const std::string& cmd = c.command;

  if (cmd == "constants") {
    std::vector<int> dims = c.dims.empty() ? std::vector<int>{c.dim} : c.dims;
    std::vector<double> betas = c.betas.empty() ? std::vector<double>{c.beta} : c.betas;
    for (int d : dims)
      for (double b : betas) {
        auto t = constant_table(b, d);
        res.constants.insert(res.constants.end(), t.begin(), t.end());
      }
    return;
  }
  if (cmd == "lemma31") {
    res.reports.push_back(lemma31_suite(s, c.samples > 0 ? c.samples : 100, c.nodes, c.seed, c.tol.value_or(1e-6)));
    return;
  }
  if (cmd == "lorentz") {
    res.reports.push_back(lorentz_suite(c.dim, c.samples > 0 ? c.samples : 1000, c.seed));
    return;
  }
  if (cmd == "verify") {
    const FourierData f = preset_data(c.data, c.dim);
    res.reports.push_back(verify_theorem(s, f, f, parse_sign_mode(c.mode), o));
    return;
  }
  if (cmd == "radial") {
    const FourierData f = preset_data(c.data, c.dim);
    res.reports.push_back(verify_radial_corollary(s, f, f, parse_sign_mode(c.mode), o));
    return;
  }
  if (cmd == "sphere") {
    add_sphere_reports(res, s, preset_data(c.data, c.dim), o);
    return;
  }
  if (cmd == "counterexample") {
    auto out = counterexample_scan(s, default_deltas(), o);
    res.reports.push_back(out.report);
    res.scans = {out.i1, out.i2, out.aux};
    return;
  }
  if (cmd == "search") {
    SearchOptions so;
    so.exp = o;
    res.reports.push_back(extremiser_search(s, parse_sign_mode(c.mode), c.params, c.seed, c.budget, so));
    return;
  }
  if (cmd == "all") {
    res.reports.push_back(constant_identities_suite(2, 8));
    for (int d = 2; d <= 5; ++d) res.reports.push_back(lorentz_suite(d, 1000, c.seed));
    for (int d = 2; d <= 5; ++d) {
      std::set<double> betas{0.0, 0.25, 0.5, (3.0 - d) / 4.0};
      for (double b : betas)
        if (b > (1.0 - d) / 4.0) res.reports.push_back(lemma31_suite(Setting(d, b), 100, c.nodes, c.seed, 1e-6));
    }
    const std::pair<int, double> grid[] = {{3, 0.0}, {2, 0.25}, {3, 0.5}, {4, 0.0}};
    for (SignMode m : {SignMode::PlusMinus, SignMode::PlusPlus})
      for (auto [d, b] : grid) res.reports.push_back(verify_theorem(Setting(d, b), foschi_data(d), foschi_data(d), m, o));
    res.reports.push_back(
        verify_theorem(Setting(3, 0.0), gaussian_data(3), gaussian_data(3), SignMode::PlusMinus, o));
    res.reports.push_back(
        verify_radial_corollary(Setting(3, 0.5), foschi_data(3), foschi_data(3), SignMode::PlusMinus, o));
    add_sphere_reports(res, Setting(4, -0.3), extremiser_data(4, -1.0, 0.3, 0.0), o);
    add_sphere_reports(res, Setting(3, -0.1), extremiser_data(3, -1.0, 0.3, 0.0), o);
    add_sphere_reports(res, Setting(3, 0.15), foschi_data(3), o);
    auto scan = counterexample_scan(Setting(3, -0.25), default_deltas(), o);
    res.reports.push_back(scan.report);
    res.scans = {scan.i1, scan.i2, scan.aux};
    SearchOptions so;
    so.exp = o;
    res.reports.push_back(extremiser_search(Setting(3, 0.0), SignMode::PlusMinus, c.params, c.seed, c.budget, so));
    return;
  }
  throw std::invalid_argument("unknown command '" + cmd + "'");
}

std::string extension(Format f) { return f == Format::Text ? "txt" : to_string(f); }

}  // namespace

int exit_status(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.status == "fail") return kExitFail;
    if (r.status == "inconclusive") inconclusive = true;
  }
  return inconclusive ? kExitInconclusive : kExitPass;
}

RunResult run(const RunConfig& config) {
  RunResult res;
  try {
    parse_format(config.format);
    parse_sign_mode(config.mode);
    run_command(res, config);
  } catch (const AccuracyError& e) {
    res.error = e.what();
    res.exit_code = kExitFail;
    return res;
  } catch (const DomainError& e) {
    res.error = e.what();
    res.exit_code = kExitUsage;
    return res;
  } catch (const DegenerateError& e) {
    res.error = e.what();
    res.exit_code = kExitUsage;
    return res;
  } catch (const std::invalid_argument& e) {
    res.error = e.what();
    res.exit_code = kExitUsage;
    return res;
  } catch (const std::exception& e) {
    res.error = e.what();
    res.exit_code = kExitFail;
    return res;
  }
  if (!config.timing)
    for (auto& r : res.reports) r.runtime_ms = 0;
  res.exit_code = exit_status(res.reports);
  return res;
}

std::string summary_matrix(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "suite" << std::setw(4) << "d" << std::setw(8) << "beta" << std::setw(6)
     << "mode" << std::setw(22) << "data" << "status\n";
  auto get = [](const VerificationReport& r, const char* k) {
    auto it = r.inputs.find(k);
    return it == r.inputs.end() ? std::string("-") : it->second;
  };
  for (const auto& r : reports)
    os << std::left << std::setw(22) << r.name << std::setw(4) << get(r, "d") << std::setw(8) << get(r, "beta")
       << std::setw(6) << get(r, "mode") << std::setw(22) << get(r, "f") << r.status << '\n';
  int pass = 0, fail = 0, inc = 0;
  for (const auto& r : reports) (r.status == "pass" ? pass : r.status == "fail" ? fail : inc)++;
  os << pass << " pass, " << fail << " fail, " << inc << " inconclusive\n";
  return os.str();
}

std::string render(const RunResult& res, const RunConfig& c) {
  const Format f = parse_format(c.format);
  std::ostringstream os;
  if (c.command == "constants") {
    os << (f == Format::Json ? to_json(res.constants) + "\n" : f == Format::Csv ? to_csv(res.constants)
                                                                               : to_text(res.constants));
    return os.str();
  }
  switch (f) {
    case Format::Json:
      if (!res.scans.empty()) {
        os << "{\"reports\":" << to_json(res.reports) << ",\"scans\":[";
        for (std::size_t i = 0; i < res.scans.size(); ++i) os << (i ? "," : "") << to_json(res.scans[i]);
        os << "]}\n";
      } else if (res.reports.size() == 1) {
        os << to_json(res.reports.front()) << '\n';
      } else {
        os << to_json(res.reports) << '\n';
      }
      break;
    case Format::Csv:
      for (std::size_t i = 0; i < res.reports.size(); ++i) os << (i ? "\n" : "") << to_csv(res.reports[i]);
      for (const auto& s : res.scans) os << "\n# " << s.name << '\n' << scan_to_csv(s);
      break;
    case Format::Text:
      if (c.command == "all") os << summary_matrix(res.reports) << '\n';
      for (const auto& r : res.reports) os << to_text(r);
      for (const auto& s : res.scans) os << to_text(s);
      break;
  }
  return os.str();
}

std::string resolve_output_path(const RunConfig& c) {
  const char* env = std::getenv("SHARPWAVE_OUT_DIR");
  const std::string dir = env ? env : "";
  if (c.out == "-") return "";
  if (!c.out.empty()) {
    const fs::path p(c.out);
    return (p.is_relative() && !dir.empty()) ? (fs::path(dir) / p).string() : p.string();
  }
  if (dir.empty()) return "";
  return (fs::path(dir) / (c.command + "." + extension(parse_format(c.format)))).string();
}

int write_outputs(const RunResult& res, const RunConfig& c) {
  if (!res.error.empty()) {
    std::cerr << "sharpwave " << c.command << ": " << res.error << '\n';
    return res.exit_code;
  }
  const std::string text = render(res, c);
  const std::string path = resolve_output_path(c);
  try {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw std::runtime_error("write to stdout failed");
    } else {
      const fs::path p(path);
      if (p.has_parent_path()) fs::create_directories(p.parent_path());
      std::ofstream f(p);
      f << text;
      if (!f) throw std::runtime_error("cannot write " + path);
      if (!res.scans.empty())
        for (const auto& s : res.scans) {
          std::ofstream t(p.parent_path() / ("counterexample_" + s.name + ".csv"));
          t << scan_to_csv(s);
          if (!t) throw std::runtime_error("cannot write scan table " + s.name);
        }
    }
  } catch (const std::exception& e) {
    std::cerr << "sharpwave " << c.command << ": " << e.what() << '\n';
    return kExitFail;
  }
  if (c.command == "all" && parse_format(c.format) != Format::Text) std::cerr << summary_matrix(res.reports);
  return res.exit_code;
}

}  // namespace sharpwave
