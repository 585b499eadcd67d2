// Command-line front end over the interkernel C API.
//
// Exit codes: 0 success, 1 input error, 2 some verdict is Boundary,
// 3 a property suite or consistency check failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "interkernel/interkernel.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBoundary = 2;
constexpr int kExitViolation = 3;

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelDeleter {
  void operator()(ik_model* m) const { ik_model_free(m); }
};
struct ReportDeleter {
  void operator()(ik_report* r) const { ik_report_free(r); }
};
using ModelPtr = std::unique_ptr<ik_model, ModelDeleter>;
using ReportPtr = std::unique_ptr<ik_report, ReportDeleter>;

void check(ik_status s) {
  if (s != IK_OK) throw InputFailure(ik_last_error());
}

struct Config {
  std::vector<std::string> hardy;
  std::string strip;
  std::string model_path;
  double a_theta = 0.0;
  double p = 2.0;
  std::string q_text;
  std::vector<double> thetas;
  std::string theta_range;
  std::string grid;
  double tol = 1e-6;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  int count = 1000;
  std::string profile = "0.5:0.5";
  int reduce0 = 0;
  int reduce1 = 0;
};

double parse_double(const std::string& what, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputFailure(what + ": not a number: '" + text + "'");
  }
}

double parse_q(const std::string& text, double fallback) {
  if (text.empty()) return fallback;
  if (text == "inf" || text == "infinity") return INFINITY;
  const double q = parse_double("--q", text);
  if (!(q >= 1.0)) throw InputFailure("--q must be >= 1 or inf");
  return q;
}

std::vector<double> split_colon(const std::string& what, const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ':')) out.push_back(parse_double(what, part));
  return out;
}

ik_options make_options(const Config& c) {
  ik_options o;
  check(ik_options_init(&o));
  if (!c.grid.empty()) {
    const auto g = split_colon("--grid", c.grid);
    if (g.size() != 2 || g[0] != std::floor(g[0]) || g[1] != std::floor(g[1]) || !(g[0] < g[1])) {
      throw InputFailure("--grid expects kmin:kmax with integers kmin < kmax");
    }
    o.grid_kmin = static_cast<int>(g[0]);
    o.grid_kmax = static_cast<int>(g[1]);
  }
  if (!(c.tol >= 0.0)) throw InputFailure("--tol must be nonnegative");
  o.tol = c.tol;
  o.seed = c.seed;
  return o;
}

std::vector<double> theta_list(const Config& c) {
  std::vector<double> out = c.thetas;
  if (!c.theta_range.empty()) {
    const auto r = split_colon("--theta-range", c.theta_range);
    if (r.size() != 3) throw InputFailure("--theta-range expects a:b:step");
    if (!(r[2] > 0.0)) throw InputFailure("--theta-range step must be positive");
    if (!(r[0] <= r[1])) throw InputFailure("--theta-range needs a <= b");
    const auto n = static_cast<long>(std::floor((r[1] - r[0]) / r[2] + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(r[0] + static_cast<double>(i) * r[2]);
  }
  for (const double t : out) {
    if (!(t > 0.0 && t < 1.0)) throw InputFailure("theta values must lie in (0,1)");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFailure("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ModelPtr make_model(const Config& c, const ik_options& o, bool allow_a_theta) {
  const int chosen = (c.hardy.empty() ? 0 : 1) + (c.strip.empty() ? 0 : 1) + (c.model_path.empty() ? 0 : 1) +
                     (allow_a_theta && c.a_theta > 0.0 ? 1 : 0);
  if (chosen != 1) {
    throw InputFailure(allow_a_theta ? "choose exactly one of --hardy, --strip, --model, --a-theta"
                                     : "choose exactly one of --hardy, --strip, --model");
  }
  ik_model* m = nullptr;
  if (!c.hardy.empty()) {
    if (c.hardy.size() == 1) {
      check(ik_model_hardy(c.hardy.front().c_str(), c.p, &m));
    } else {
      std::vector<const char*> specs;
      for (const auto& h : c.hardy) specs.push_back(h.c_str());
      check(ik_model_hardy_product(specs.data(), specs.size(), c.p, &m));
    }
  } else if (!c.strip.empty()) {
    check(ik_model_strip(c.strip.c_str(), &m));
  } else if (!c.model_path.empty()) {
    check(ik_model_from_json(read_file(c.model_path).c_str(), &o, &m));
  } else {
    check(ik_model_a_theta(c.a_theta, &m));
  }
  ModelPtr model(m);
  if (c.reduce0 != 0 || c.reduce1 != 0) {
    ik_model* r = nullptr;
    check(ik_model_reduce(model.get(), c.reduce0, c.reduce1, &r));
    model.reset(r);
  }
  return model;
}

std::vector<double> critical_thetas(const ik_model* m) {
  std::size_t n = 0;
  check(ik_model_critical_thetas(m, nullptr, 0, &n));
  std::vector<double> out(n);
  check(ik_model_critical_thetas(m, out.data(), out.size(), &n));
  return out;
}

std::vector<double> merge_thetas(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (const double t : a) {
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  }
  return out;
}

int emit(const Config& c, const ik_report* r) {
  const ik_format f = c.format == "csv" ? IK_FORMAT_CSV : IK_FORMAT_JSON;
  const char* text = ik_report_text(r, f);
  if (!text) throw InputFailure("format '" + c.format + "' is not available for this command");
  if (c.out.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(c.out);
    if (!out) throw InputFailure("cannot write " + c.out);
    out << text;
  }
  return kExitOk;
}

int run_classify(const Config& c, std::vector<double> thetas, double q, const ik_model* m) {
  const auto o = make_options(c);
  if (thetas.empty()) throw InputFailure("give --theta or --theta-range");
  ik_report* r = nullptr;
  check(ik_classify(m, thetas.data(), thetas.size(), q, &o, &r));
  ReportPtr report(r);
  emit(c, report.get());
  return ik_report_any_boundary(report.get()) ? kExitBoundary : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fredholm classification on real interpolation spaces"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid", c.grid, "dyadic grid kmin:kmax (default from INTERKERNEL_GRID or -80:80)");
    sub->add_option("--tol", c.tol, "Boundary band for sampled indices");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--seed", c.seed, "seed for randomized suites");
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--hardy", c.hardy, "a0=..,ainf=..,b0=..,binf=.. (repeat for a product)");
    sub->add_option("--p", c.p, "Lebesgue exponent of the Hardy couples");
    sub->add_option("--strip", c.strip, "alpha=..,beta0=..,beta1=..[,l=..]");
    sub->add_option("--model", c.model_path, "JSON operator descriptor");
    sub->add_option("--reduce", [&](const CLI::results_t& v) {
      const auto d = split_colon("--reduce", v.front());
      if (d.size() != 2) return false;
      c.reduce0 = static_cast<int>(d[0]);
      c.reduce1 = static_cast<int>(d[1]);
      return true;
    }, "pad endpoint complements m0:m1");
  };
  auto add_thetas = [&](CLI::App* sub) {
    sub->add_option("--theta", c.thetas, "theta value(s)");
    sub->add_option("--theta-range", c.theta_range, "a:b:step");
    sub->add_option("--q", c.q_text, "q (number or inf)");
  };

  auto* classify = app.add_subcommand("classify", "classify an operator at each theta");
  add_common(classify);
  add_model(classify);
  add_thetas(classify);

  auto* indices = app.add_subcommand("indices", "dilation indices of the kernel basis");
  add_common(indices);
  add_model(indices);
  indices->add_option("--a-theta", c.a_theta, "use the element a_theta of the reference couple");

  auto* kfun = app.add_subcommand("kfun", "K-profiles of the kernel basis");
  add_common(kfun);
  add_model(kfun);
  kfun->add_option("--a-theta", c.a_theta, "use the element a_theta of the reference couple");

  auto* seqcheck = app.add_subcommand("seqcheck", "sequence-operator identity and bound suites");
  add_common(seqcheck);
  seqcheck->add_option("--count", c.count, "random sequences per suite");
  seqcheck->add_option("--theta", c.thetas, "also run the growth cross-check at this theta");
  seqcheck->add_option("--q", c.q_text, "q for the growth cross-check (number or inf)");
  seqcheck->add_option("--profile", c.profile, "growth profile exponents e0:einf");

  auto* hardy_table = app.add_subcommand("hardy-table", "classification table for I - H");
  add_common(hardy_table);
  add_thetas(hardy_table);
  hardy_table->add_option("--hardy", c.hardy, "a0=..,ainf=..,b0=..,binf=..")->required();
  hardy_table->add_option("--p", c.p, "Lebesgue exponent (q defaults to p)");

  auto* strip_table = app.add_subcommand("strip-table", "classification table for the strip Laplacian");
  add_common(strip_table);
  add_thetas(strip_table);
  strip_table->add_option("--strip", c.strip, "alpha=..,beta0=..,beta1=..[,l=..] (default alpha=pi/2,beta0=1,beta1=5)");

  auto* factorize = app.add_subcommand("factorize", "factorization A = A3 A2 A1");
  add_common(factorize);
  add_model(factorize);
  add_thetas(factorize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const auto o = make_options(c);
    if (classify->parsed()) {
      const auto model = make_model(c, o, false);
      return run_classify(c, theta_list(c), parse_q(c.q_text, 2.0), model.get());
    }
    if (indices->parsed() || kfun->parsed()) {
      const auto model = make_model(c, o, true);
      ik_report* r = nullptr;
      check(indices->parsed() ? ik_indices(model.get(), &o, &r) : ik_kfun(model.get(), &o, &r));
      ReportPtr report(r);
      return emit(c, report.get());
    }
    if (seqcheck->parsed()) {
      if (c.thetas.size() > 1) throw InputFailure("seqcheck takes a single --theta");
      const double theta = c.thetas.empty() ? 0.0 : c.thetas.front();
      if (!c.thetas.empty() && !(theta > 0.0 && theta < 1.0)) throw InputFailure("theta must lie in (0,1)");
      const auto e = split_colon("--profile", c.profile);
      if (e.size() != 2) throw InputFailure("--profile expects e0:einf");
      ik_report* r = nullptr;
      check(ik_seqcheck(c.count, theta, parse_q(c.q_text, 2.0), e[0], e[1], &o, &r));
      ReportPtr report(r);
      emit(c, report.get());
      return ik_report_any_failure(report.get()) ? kExitViolation : kExitOk;
    }
    if (hardy_table->parsed()) {
      if (c.hardy.size() != 1) throw InputFailure("hardy-table takes a single --hardy model");
      const auto model = make_model(c, o, false);
      auto thetas = theta_list(c);
      if (thetas.empty()) {
        for (int j = 1; j <= 19; ++j) thetas.push_back(0.05 * j);
        thetas = merge_thetas(thetas, critical_thetas(model.get()));
      }
      return run_classify(c, thetas, parse_q(c.q_text, c.p), model.get());
    }
    if (strip_table->parsed()) {
      if (c.strip.empty()) c.strip = "alpha=pi/2,beta0=1,beta1=5";
      const auto model = make_model(c, o, false);
      auto thetas = theta_list(c);
      if (thetas.empty()) {
        for (int j = 1; j <= 21; ++j) thetas.push_back(j / 22.0);
        thetas = merge_thetas(thetas, critical_thetas(model.get()));
      }
      return run_classify(c, thetas, parse_q(c.q_text, 2.0), model.get());
    }
    if (factorize->parsed()) {
      const auto model = make_model(c, o, false);
      const auto thetas = theta_list(c);
      if (thetas.size() != 1) throw InputFailure("factorize takes a single --theta");
      ik_report* r = nullptr;
      check(ik_factorize(model.get(), thetas.front(), parse_q(c.q_text, 2.0), &o, &r));
      ReportPtr report(r);
      emit(c, report.get());
      if (ik_report_any_failure(report.get())) return kExitViolation;
      return ik_report_any_boundary(report.get()) ? kExitBoundary : kExitOk;
    }
  } catch (const InputFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
