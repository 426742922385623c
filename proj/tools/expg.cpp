// expg: command-line front end for the exp-G distribution library.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expg/fatigue_data.hpp"
#include "expg/inference.hpp"
#include "expg/info.hpp"
#include "expg/model.hpp"
#include "expg/quadrature.hpp"
#include "expg/series.hpp"

using json = nlohmann::json;
using namespace expg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumeric = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

struct Grid {
  double a = 0.0, b = 0.0, step = 0.0;
};

Grid parse_grid(const std::string& s, const char* what) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::stringstream ss(s);
  if (!(ss >> g.a >> c1 >> g.b >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
      !(g.step > 0.0) || !(g.b >= g.a))
    throw InputError(std::string(what) + ": expected a:b:step with step>0");
  return g;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read data file: " + path);
  Dataset d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      // trim whitespace
      auto b = tok.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto e = tok.find_last_not_of(" \t\r");
      tok = tok.substr(b, e - b + 1);
      try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        d.values.push_back(v);
      } catch (const std::exception&) {
        throw InputError("non-numeric token '" + tok + "' on line " +
                         std::to_string(lineno) + " of " + path);
      }
    }
  }
  if (d.values.empty()) throw InputError("no observations in " + path);
  return d;
}

BaseDistribution make_base(const std::string& family,
                           const std::vector<double>& theta) {
  Family f = family_from_name(family);
  switch (f) {
    case Family::Weibull:
      if (theta.size() != 2) throw InputError("weibull needs --theta a,b");
      return BaseDistribution::weibull(theta[0], theta[1]);
    case Family::Beta:
      if (theta.size() != 2) throw InputError("beta needs --theta a,b");
      return BaseDistribution::beta(theta[0], theta[1]);
    case Family::Frechet:
      if (theta.size() != 2) throw InputError("frechet needs --theta a,b");
      return BaseDistribution::frechet(theta[0], theta[1]);
    case Family::Bernoulli:
      if (theta.size() != 1) throw InputError("bernoulli needs --theta p");
      return BaseDistribution::bernoulli(theta[0]);
  }
  throw InputError("unknown family: " + family);
}

Dataset resolve_data(const std::string& path, std::string* source) {
  if (path.empty()) {
    *source = "embedded-fatigue";
    return Dataset{fatigue_data()};
  }
  *source = path;
  return load_csv(path);
}

json fit_to_json(const FitReport& r, const std::string& source) {
  json j;
  j["family"] = family_name(r.family);
  j["data_source"] = source;
  j["n"] = r.n;
  j["lambda_fixed"] = r.lambda_fixed;
  json est = json::object();
  for (std::size_t i = 0; i < r.param_names.size(); ++i)
    est[r.param_names[i]] = r.estimates[i];
  j["estimates"] = est;
  j["loglik"] = r.loglik;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["grad_norm"] = r.grad_norm;
  if (r.ci_valid) {
    json se = json::object(), ci = json::object();
    for (std::size_t i = 0; i < r.param_names.size(); ++i) {
      if (std::isnan(r.std_errors[i])) continue;
      se[r.param_names[i]] = r.std_errors[i];
      ci[r.param_names[i]] = {r.ci[i].first, r.ci[i].second};
    }
    j["std_errors"] = se;
    j["ci"] = ci;
    j["level"] = r.level;
  } else {
    j["ci_omitted"] = true;
  }
  return j;
}

void emit(const json& j, const std::string& out) {
  if (out == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // flat text rendering
  std::function<void(const json&, std::string)> walk =
      [&](const json& node, std::string prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(),
                 prefix.empty() ? it.key() : prefix + "." + it.key());
        } else {
          std::cout << prefix << ": " << node.dump() << "\n";
        }
      };
  walk(j, "");
}

int cmd_fit(const std::string& family, const std::string& data_path,
            std::optional<double> fix_lambda, double level,
            const std::string& out) {
  std::string source;
  Dataset d = resolve_data(data_path, &source);
  std::vector<double> seed(family_from_name(family) == Family::Bernoulli
                               ? std::vector<double>{0.5}
                               : std::vector<double>{1.0, 1.0});
  FitReport r = mle_fit(make_base(family, seed), d, fix_lambda, level);
  emit(fit_to_json(r, source), out);
  return r.converged ? kExitOk : kExitNumeric;
}

int cmd_test(const std::string& family, const std::string& data_path,
             const std::string& stat, const std::string& out) {
  std::string source;
  Dataset d = resolve_data(data_path, &source);
  std::vector<double> seed{1.0, 1.0};
  BaseDistribution base = make_base(family, seed);
  TestReport t;
  if (stat == "lr")
    t = lr_test(base, d);
  else if (stat == "wald")
    t = wald_test(base, d);
  else if (stat == "score")
    t = score_test(base, d);
  else
    throw InputError("--stat must be lr, wald or score");
  json j;
  j["stat"] = test_name(t.kind);
  j["family"] = family;
  j["data_source"] = source;
  j["n"] = d.n();
  j["value"] = t.statistic;
  j["df"] = t.df;
  j["p_value"] = t.p_value;
  emit(j, out);
  return kExitOk;
}

int cmd_moments(const std::string& family, const std::vector<double>& theta,
                double lambda, int order, const std::string& out) {
  if (order < 1) throw InputError("--order must be >= 1");
  ExpGModel m(lambda, make_base(family, theta));
  json j;
  j["family"] = family;
  j["lambda"] = lambda;
  j["theta"] = theta;
  json raws = json::array();
  for (int r = 1; r <= order; ++r) {
    MomentResult mr = moment(m, r);
    double q = quadrature_moment(m, r);
    json e;
    e["order"] = r;
    e["value"] = mr.value;
    e["route"] = route_name(mr.route);
    e["terms"] = mr.terms;
    e["converged"] = mr.converged;
    e["roundoff"] = mr.roundoff;
    e["quadrature"] = q;
    raws.push_back(e);
  }
  j["raw"] = raws;
  if (order >= 2) {
    double m1 = moment(m, 1).value, m2 = moment(m, 2).value;
    j["central"]["mean"] = m1;
    j["central"]["variance"] = m2 - m1 * m1;
  }
  if (order >= 4) {
    auto [sk, ku] = skewness_kurtosis(m);
    j["central"]["skewness"] = sk;
    j["central"]["kurtosis"] = ku;
  }
  emit(j, out);
  return kExitOk;
}

int cmd_entropy(const std::string& family, const std::vector<double>& theta,
                double lambda, const std::string& out) {
  ExpGModel m(lambda, make_base(family, theta));
  auto [c1, c2] = constraint_expectations(m);
  DivergenceResult d1 = kl_divergence(m, KLDirection::G_vs_expG);
  DivergenceResult d2 = kl_divergence(m, KLDirection::expG_vs_G);
  json j;
  j["family"] = family;
  j["lambda"] = lambda;
  j["theta"] = theta;
  j["entropy"] = shannon_entropy(m);
  j["C1"] = c1;
  j["C2"] = c2;
  j["kl_base_vs_expg"] = {{"closed_form", d1.closed_form},
                          {"quadrature", d1.quadrature_value}};
  j["kl_expg_vs_base"] = {{"closed_form", d2.closed_form},
                          {"quadrature", d2.quadrature_value}};
  emit(j, out);
  return kExitOk;
}

int cmd_sample(const std::string& family, const std::vector<double>& theta,
               double lambda, int n, std::uint64_t seed) {
  if (n < 1) throw InputError("--n must be >= 1");
  ExpGModel m(lambda, make_base(family, theta));
  for (double v : m.sample(static_cast<std::size_t>(n), seed))
    std::printf("%.17g\n", v);
  return kExitOk;
}

int cmd_curves(const std::string& family, const std::vector<double>& theta,
               double lambda, const std::string& quantity,
               const std::string& grid_s, const std::string& lgrid_s) {
  BaseDistribution base = make_base(family, theta);
  bool lam_sweep = (quantity == "skewness" || quantity == "kurtosis");
  if (lam_sweep) {
    if (lgrid_s.empty())
      throw InputError(quantity + " curves need --lambda-grid a:b:step");
    Grid g = parse_grid(lgrid_s, "--lambda-grid");
    std::printf("lambda\t%s\n", quantity.c_str());
    for (double l = g.a; l <= g.b + 1e-12; l += g.step) {
      auto [sk, ku] = skewness_kurtosis(ExpGModel(l, base));
      std::printf("%.10g\t%.10g\n", l, quantity == "skewness" ? sk : ku);
    }
    return kExitOk;
  }
  if (quantity != "pdf" && quantity != "cdf" && quantity != "hazard")
    throw InputError(
        "--quantity must be pdf, cdf, hazard, skewness or kurtosis");
  if (grid_s.empty()) throw InputError("curves need --grid a:b:step");
  Grid g = parse_grid(grid_s, "--grid");
  ExpGModel m(lambda, base);
  std::printf("x\t%s\n", quantity.c_str());
  for (double x = g.a; x <= g.b + 1e-12; x += g.step) {
    double v = quantity == "pdf"   ? m.pdf(x)
               : quantity == "cdf" ? m.cdf(x)
                                   : m.hazard(x);
    std::printf("%.10g\t%.10g\n", x, v);
  }
  return kExitOk;
}

int cmd_demo(const std::string& out) {
  Dataset d{fatigue_data()};
  BaseDistribution wb = BaseDistribution::weibull(1.0, 1.0);
  FitReport base_fit = mle_fit(wb, d, 0.0);
  FitReport full_fit = mle_fit(wb, d);
  TestReport lr = lr_test(wb, d);
  TestReport wald = wald_test(wb, d);
  TestReport score = score_test(wb, d);
  json j;
  j["dataset"] = {{"name", "fatigue-6061-T6"}, {"n", d.n()}};
  j["weibull_fit"] = fit_to_json(base_fit, "embedded-fatigue");
  j["exp_weibull_fit"] = fit_to_json(full_fit, "embedded-fatigue");
  for (const TestReport* t : {&lr, &wald, &score})
    j["tests"][test_name(t->kind)] = {{"value", t->statistic},
                                      {"df", t->df},
                                      {"p_value", t->p_value}};
  // fitted-density table for external plotting
  ExpGModel mhat(full_fit.estimates[0],
                 BaseDistribution::weibull(full_fit.estimates[1],
                                           full_fit.estimates[2]));
  ExpGModel m0(0.0, BaseDistribution::weibull(base_fit.estimates[1],
                                              base_fit.estimates[2]));
  json table = json::array();
  for (double x = 60.0; x <= 220.0 + 1e-9; x += 2.0)
    table.push_back({{"x", x},
                     {"exp_weibull_pdf", mhat.pdf(x)},
                     {"weibull_pdf", m0.pdf(x)}});
  j["density_table"] = table;
  emit(j, out);
  return (base_fit.converged && full_fit.converged) ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exp-G distribution toolkit"};
  app.require_subcommand(1);

  std::string family = "weibull", data_path, theta_s = "1,1";
  std::string stat = "lr", outfmt = "json", quantity = "pdf";
  std::string grid_s, lgrid_s;
  double lambda = 0.0, level = 0.95;
  std::optional<double> fix_lambda;
  int order = 4, nsamp = 10;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--family", family, "weibull|beta|frechet|bernoulli");
    c->add_option("--out", outfmt, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_model = [&](CLI::App* c) {
    c->add_option("--theta", theta_s, "base parameters v1,v2");
    c->add_option("--lambda", lambda, "concentration parameter");
  };

  CLI::App* fit = app.add_subcommand("fit", "maximum likelihood fit");
  add_common(fit);
  fit->add_option("--data", data_path, "CSV data file (default: embedded)");
  fit->add_option("--fix-lambda", fix_lambda, "pin lambda");
  fit->add_option("--level", level, "CI level");

  CLI::App* test = app.add_subcommand("test", "H0: lambda = 0");
  add_common(test);
  test->add_option("--data", data_path, "CSV data file (default: embedded)");
  test->add_option("--stat", stat, "lr|wald|score");

  CLI::App* moments = app.add_subcommand("moments", "raw/central moments");
  add_common(moments);
  add_model(moments);
  moments->add_option("--order", order, "highest raw moment");

  CLI::App* entropy = app.add_subcommand("entropy", "entropy/divergences");
  add_common(entropy);
  add_model(entropy);

  CLI::App* sample = app.add_subcommand("sample", "seeded draws");
  add_common(sample);
  add_model(sample);
  sample->add_option("-n,--n", nsamp, "number of draws");
  sample->add_option("--seed", seed, "RNG seed");

  CLI::App* curves = app.add_subcommand("curves", "TSV curve tables");
  add_common(curves);
  add_model(curves);
  curves->add_option("--quantity", quantity,
                     "pdf|cdf|hazard|skewness|kurtosis");
  curves->add_option("--grid", grid_s, "x grid a:b:step");
  curves->add_option("--lambda-grid", lgrid_s, "lambda grid a:b:step");

  CLI::App* demo = app.add_subcommand("demo", "embedded fatigue analysis");
  add_common(demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (fit->parsed())
      return cmd_fit(family, data_path, fix_lambda, level, outfmt);
    if (test->parsed()) return cmd_test(family, data_path, stat, outfmt);
    if (moments->parsed())
      return cmd_moments(family, parse_reals(theta_s, "--theta"), lambda,
                         order, outfmt);
    if (entropy->parsed())
      return cmd_entropy(family, parse_reals(theta_s, "--theta"), lambda,
                         outfmt);
    if (sample->parsed())
      return cmd_sample(family, parse_reals(theta_s, "--theta"), lambda,
                        nsamp, seed);
    if (curves->parsed())
      return cmd_curves(family, parse_reals(theta_s, "--theta"), lambda,
                        quantity, grid_s, lgrid_s);
    if (demo->parsed()) return cmd_demo(outfmt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
