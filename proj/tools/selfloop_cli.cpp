#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "selfloop/closed_forms.hpp"
#include "selfloop/edge_list.hpp"
#include "selfloop/format.hpp"
#include "selfloop/generators.hpp"
#include "selfloop/landscape.hpp"
#include "selfloop/montecarlo.hpp"
#include "selfloop/threshold.hpp"

using namespace selfloop;

namespace {

struct Source {
  std::string input;
  std::string model;
  std::string landscape = "zero";
  bool lcc = false;
  std::uint64_t seed = 0;
};

struct Game {
  double b = 2.0;
  double c = 1.0;
  double delta = 0.01;
  std::uint64_t trials = 10000;
  unsigned threads = 0;
  std::string bc_values;
};

struct Sweep {
  std::string axis;
  std::string family;
  double min = 0.0;
  double max = 1.0;
  int steps = 11;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, epsilon = 0.0, ell = 0.0;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(Errc::ParseError, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void row(const std::vector<std::string>& fields) {
    auto& os = stream();
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << quote(fields[i]);
    os << '\n';
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  std::ofstream file_;
};

std::string real(double x) { return format_real(x); }

void add_source_options(CLI::App* cmd, Source& src, bool with_landscape = true) {
  auto* in = cmd->add_option("--input", src.input, "edge-list file (u v [weight] per line)");
  auto* mod = cmd->add_option("--model", src.model, "generator spec, e.g. star:10, ba:100:3, lattice:square4:4x4");
  in->excludes(mod);
  if (with_landscape)
    cmd->add_option("--landscape", src.landscape,
                    "zero | exp-neg-k | ln-k | one-minus-inv-k | inv-k-plus-one | const:X | explicit:a,b,... | file:PATH");
  cmd->add_flag("--lcc", src.lcc, "keep only the largest connected component");
  cmd->add_option("--seed", src.seed, "seed for random models and simulations");
}

std::string describe(const Source& src) { return src.model.empty() ? src.input : src.model; }

Graph load_topology(const Source& src) {
  if (src.input.empty() == src.model.empty()) throw Error(Errc::ParseError, "give exactly one of --input or --model");
  Graph g;
  if (!src.input.empty()) {
    std::ifstream in(src.input);
    if (!in) throw Error(Errc::ParseError, "cannot read '" + src.input + "'");
    g = from_edge_list(in);
  } else {
    g = generate(src.model, src.seed, src.lcc);
  }
  if (src.lcc && !is_connected(g)) g = largest_component(g);
  if (!is_connected(g)) throw Error(Errc::Disconnected, "graph '" + describe(src) + "' is not connected (try --lcc)");
  return g;
}

Graph load_graph(const Source& src) { return apply_landscape(load_topology(src), parse_landscape(src.landscape)); }

std::string sigma_field(const ThresholdResult& r) { return r.sigma ? real(*r.sigma) : "nan"; }

// Weak-selection rule: cooperation is favored when b (eta3 - eta1) > c eta2.
std::string favored(const ThresholdResult& r, double b, double c) {
  const double score = b * r.denominator - c * r.numerator;
  const double tol = kNeutralTolerance * std::max({1.0, std::abs(b * r.denominator), std::abs(c * r.numerator)});
  if (score > tol) return "cooperation";
  if (score < -tol) return "defection";
  return "neutral";
}

// ---------------------------------------------------------------- threshold

void cmd_threshold(const Source& src, Output& out) {
  const Graph g = load_graph(src);
  validate(g, Purpose::Threshold);
  const auto c = coalescence(g);
  const auto r = critical_ratio(c);
  const auto m = degree_metrics(g);
  out.row({"graph", "n", "mean_degree", "mean_neighbor_degree", "bc_star", "regime", "sigma", "eta1", "eta2", "eta3"});
  out.row({describe(src), std::to_string(g.size()), real(m.mean_degree), real(m.mean_neighbor_degree), real(r.bc_star),
           std::string(regime_name(r.regime)), sigma_field(r), real(c.eta1), real(c.eta2), real(c.eta3)});
}

// ---------------------------------------------------------------- closed-form families

struct Family {
  std::string name;
  int N = 0;
  int k = 0;
};

Family parse_family(const std::string& text) {
  std::vector<std::string> f;
  std::stringstream ss(text);
  for (std::string t; std::getline(ss, t, ':');) f.push_back(t);
  auto to_int = [&](const std::string& s) {
    double v = 0.0;
    if (!parse_real(s, v) || v != std::floor(v)) throw Error(Errc::ParseError, "bad integer '" + s + "' in family");
    return static_cast<int>(v);
  };
  Family fam;
  if (f.empty()) throw Error(Errc::ParseError, "empty family");
  fam.name = f[0];
  if (fam.name == "regular" && f.size() == 3) {
    fam.N = to_int(f[1]);
    fam.k = to_int(f[2]);
  } else if ((fam.name == "star" || fam.name == "hubhub" || fam.name == "fan") && f.size() == 2) {
    fam.N = to_int(f[1]);
  } else {
    throw Error(Errc::ParseError, "family must be regular:N:k, star:N, hubhub:N or fan:N");
  }
  return fam;
}

ThresholdResult family_threshold(const Family& fam, const Sweep& p) {
  if (fam.name == "regular") return bc_regular(fam.N, fam.k, p.ell);
  if (fam.name == "star") return bc_star(fam.N, p.alpha, p.beta);
  if (fam.name == "hubhub") return bc_hubhub(fam.N, p.alpha, p.gamma);
  return bc_ceiling_fan(fam.N, p.epsilon, p.beta);
}

// ---------------------------------------------------------------- sweep

void cmd_sweep(const Source& src, const Game& game, Sweep sw, Output& out) {
  static const std::vector<std::string> axes{"ell", "alpha", "beta", "gamma", "epsilon", "bc", "N"};
  if (std::find(axes.begin(), axes.end(), sw.axis) == axes.end())
    throw Error(Errc::UnknownAxis, "'" + sw.axis + "' (expected ell, alpha, beta, gamma, epsilon, bc or N)");
  if (!std::isfinite(sw.min) || !std::isfinite(sw.max) || sw.steps < 2)
    throw Error(Errc::ParseError, "sweep needs finite --min/--max and --steps >= 2");

  std::optional<Family> fam;
  if (!sw.family.empty()) fam = parse_family(sw.family);
  const bool family_axis = sw.axis == "alpha" || sw.axis == "beta" || sw.axis == "gamma" || sw.axis == "epsilon" || sw.axis == "N";
  if (family_axis && !fam) throw Error(Errc::ParseError, "axis '" + sw.axis + "' needs --family");
  if (fam && (!src.input.empty() || !src.model.empty()))
    throw Error(Errc::ParseError, "--family cannot be combined with --input or --model");

  std::optional<Graph> topology;
  if (!fam) topology = load_topology(src);
  const LandscapeSpec landscape = parse_landscape(src.landscape);
  std::optional<ThresholdResult> fixed;
  if (sw.axis == "bc") fixed = fam ? family_threshold(*fam, sw) : critical_ratio(apply_landscape(*topology, landscape));

  out.row({"axis", "value", "bc_star", "regime", "sigma", "favored"});
  for (int i = 0; i < sw.steps; ++i) {
    const double v = sw.min + (sw.max - sw.min) * i / (sw.steps - 1);
    double b = game.b, c = game.c;
    ThresholdResult r;
    if (sw.axis == "bc") {
      b = v * c;
      r = *fixed;
    } else if (sw.axis == "ell" && !fam) {
      r = critical_ratio(apply_landscape(*topology, LandscapeSpec::constant(v)));
    } else {
      Sweep p = sw;
      Family f = *fam;
      if (sw.axis == "ell") p.ell = v;
      else if (sw.axis == "alpha") p.alpha = v;
      else if (sw.axis == "beta") p.beta = v;
      else if (sw.axis == "gamma") p.gamma = v;
      else if (sw.axis == "epsilon") p.epsilon = v;
      else f.N = static_cast<int>(std::lround(v));
      if (sw.axis == "N" && f.name == "fan" && f.N % 2 == 0) continue;
      r = family_threshold(f, p);
    }
    out.row({sw.axis, sw.axis == "N" ? std::to_string(std::lround(v)) : real(v), real(r.bc_star),
             std::string(regime_name(r.regime)), sigma_field(r), favored(r, b, c)});
  }
}

// ---------------------------------------------------------------- simulate

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string t; std::getline(ss, t, ',');) {
    double v = 0.0;
    if (!parse_real(t, v) || !std::isfinite(v)) throw Error(Errc::ParseError, "bad number '" + t + "' in --bc-values");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::ParseError, "--bc-values is empty");
  return out;
}

void cmd_simulate(const Source& src, const Game& game, Output& out) {
  const Graph g = load_graph(src);
  validate(g);
  if (game.trials < 1) throw Error(Errc::InvalidFamilyParams, "--trials must be >= 1");
  const std::vector<double> ratios = game.bc_values.empty() ? std::vector<double>{game.b / game.c} : parse_list(game.bc_values);

  std::vector<FixationContrast> rows;
  for (double r : ratios)
    rows.push_back(estimate_contrast(g, GameParams{r * game.c, game.c, game.delta}, game.trials, src.seed, game.threads));

  LinearFit fit{std::nan(""), std::nan(""), std::nan("")};
  if (ratios.size() >= 2) {
    std::vector<double> ys;
    for (const auto& fc : rows) ys.push_back(fc.n_times_diff);
    fit = fit_line(ratios, ys);
  }
  out.row({"b_over_c", "rho_c", "rho_c_stderr", "rho_d", "rho_d_stderr", "n_times_diff", "n_times_diff_stderr",
           "fit_slope", "fit_intercept", "fit_zero_crossing"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& fc = rows[i];
    out.row({real(ratios[i]), real(fc.cooperate.rho_hat), real(fc.cooperate.std_error), real(fc.defect.rho_hat),
             real(fc.defect.std_error), real(fc.n_times_diff), real(fc.std_error), real(fit.slope), real(fit.intercept),
             real(fit.zero_crossing)});
  }
}

// ---------------------------------------------------------------- closedform

void cmd_closedform(const std::string& formula, const std::vector<std::string>& params, Output& out) {
  std::map<std::string, double> kv;
  std::string joined;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    double v = 0.0;
    if (eq == std::string::npos || !parse_real(p.substr(eq + 1), v))
      throw Error(Errc::ParseError, "parameter '" + p + "' is not KEY=NUMBER");
    kv[p.substr(0, eq)] = v;
    joined += (joined.empty() ? "" : ";") + p;
  }
  auto get = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(Errc::ParseError, formula + " needs " + key + "=");
    return it->second;
  };
  auto get_int = [&](const std::string& key) {
    const double v = get(key);
    if (v != std::floor(v)) throw Error(Errc::ParseError, key + " must be an integer");
    return static_cast<int>(v);
  };

  double value = 0.0;
  std::string regime;
  auto take = [&](const ThresholdResult& r) {
    value = r.bc_star;
    regime = std::string(regime_name(r.regime));
  };
  if (formula == "regular") {
    if (kv.count("ell")) take(bc_regular(get_int("N"), get_int("k"), get("ell")));
    else value = regular_spite_transition(get_int("N"), get_int("k"));
  } else if (formula == "regular-transition") {
    value = regular_spite_transition(get_int("N"), get_int("k"));
  } else if (formula == "star") {
    take(bc_star(get_int("N"), get("alpha"), get("beta")));
  } else if (formula == "star-limit") {
    value = star_limit_beta0(get("alpha"));
  } else if (formula == "star-exception") {
    value = star_exception_threshold_N3();
  } else if (formula == "hubhub") {
    take(bc_hubhub(get_int("N"), get("alpha"), get("gamma")));
  } else if (formula == "hubhub-limit") {
    value = hubhub_limit(get("alpha"));
  } else if (formula == "fan") {
    take(bc_ceiling_fan(get_int("N"), get("epsilon"), get("beta")));
  } else if (formula == "fan-limit") {
    value = cf_limit(get("epsilon"));
  } else if (formula == "cf-exception") {
    value = cf_exception_epsilon(get_int("N"));
  } else {
    throw Error(Errc::ParseError, "unknown formula '" + formula + "'");
  }
  out.row({"formula", "parameters", "value", "regime"});
  out.row({formula, joined, real(value), regime});
}

// ---------------------------------------------------------------- generate

void cmd_generate(const Source& src, Output& out) {
  if (src.model.empty()) throw Error(Errc::ParseError, "generate needs --model");
  Graph g = generate(src.model, src.seed, src.lcc);
  if (src.lcc) g = largest_component(g);
  to_edge_list(g, out.stream());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperation thresholds on graphs with self-interaction"};
  app.require_subcommand(1);

  Source src;
  Game game;
  Sweep sw;
  std::string out_path;
  std::string formula;
  std::vector<std::string> params;

  auto game_options = [&](CLI::App* cmd) {
    cmd->add_option("--b", game.b, "benefit");
    cmd->add_option("--c", game.c, "cost");
  };

  auto* threshold = app.add_subcommand("threshold", "critical benefit-to-cost ratio of one graph");
  add_source_options(threshold, src);
  threshold->add_option("--out", out_path, "output CSV (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "threshold along one parameter axis");
  add_source_options(sweep, src);
  game_options(sweep);
  sweep->add_option("--axis", sw.axis, "ell | alpha | beta | gamma | epsilon | bc | N")->required();
  sweep->add_option("--min", sw.min)->required();
  sweep->add_option("--max", sw.max)->required();
  sweep->add_option("--steps", sw.steps, "grid points (>= 2)");
  sweep->add_option("--family", sw.family, "closed-form family: regular:N:k | star:N | hubhub:N | fan:N");
  sweep->add_option("--alpha", sw.alpha);
  sweep->add_option("--beta", sw.beta);
  sweep->add_option("--gamma", sw.gamma);
  sweep->add_option("--epsilon", sw.epsilon);
  sweep->add_option("--ell", sw.ell);
  sweep->add_option("--out", out_path);

  auto* simulate = app.add_subcommand("simulate", "death-birth Monte Carlo fixation probabilities");
  add_source_options(simulate, src);
  game_options(simulate);
  simulate->add_option("--delta", game.delta, "selection strength");
  simulate->add_option("--trials", game.trials, "trials per strategy and b/c value");
  simulate->add_option("--threads", game.threads, "worker threads (0 = all cores)");
  simulate->add_option("--bc-values", game.bc_values, "comma-separated b/c ratios (default b/c)");
  simulate->add_option("--out", out_path);

  auto* closedform = app.add_subcommand("closedform", "evaluate a family formula");
  closedform->add_option("formula", formula,
                         "regular | regular-transition | star | star-limit | star-exception | hubhub | hubhub-limit | "
                         "fan | fan-limit | cf-exception")
      ->required();
  closedform->add_option("params", params, "KEY=VALUE, e.g. N=50 k=30");
  closedform->add_option("--out", out_path);

  auto* gen = app.add_subcommand("generate", "write a generated graph as an edge list");
  add_source_options(gen, src, false);
  gen->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Output out(out_path);
    if (*threshold) cmd_threshold(src, out);
    else if (*sweep) cmd_sweep(src, game, sw, out);
    else if (*simulate) cmd_simulate(src, game, out);
    else if (*closedform) cmd_closedform(formula, params, out);
    else cmd_generate(src, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
