// Copyright 2026 The Platreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: gen-network, adoption, rho-se, analytic, sweep,
// validate-a1. Exit codes: 0 ok, 2 invalid parameters, 3 invariant broken.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "platreg/adoption.h"
#include "platreg/analytic.h"
#include "platreg/experiments.h"
#include "platreg/graph.h"
#include "platreg/regulation.h"

namespace platreg {
namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInvariant = 3;

// JSON config files: keys are long option names, nested objects address
// subcommands, e.g. {"seed": 3, "sweep": {"preset": "line20"}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        j[name] = opt->results().size() == 1 ? nlohmann::json(opt->results()[0])
                                              : nlohmann::json(opt->results());
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    Collect(j, {}, items);
    return items;
  }

 private:
  static std::string Scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void Collect(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        std::vector<std::string> next = parents;
        next.push_back(key);
        Collect(value, next, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(Scalar(v));
      } else {
        item.inputs.push_back(Scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

Range ParseRange(const std::string& text, const std::string& what) {
  Range r;
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> r.min >> c1 >> r.max >> c2 >> r.steps) || c1 != ':' || c2 != ':' ||
      !ss.eof()) {
    throw InvalidParamsError(what + " must look like min:max:steps, got '" + text + "'");
  }
  r.Validate(what);
  return r;
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string format = "csv";
  bool fast = false;
  int threads = 0;
};

struct ModelOptions {
  double mu = 0.2;
  double p = 0.9;
  double b_A = 0.01;
  double b_B = 0.0;
  std::optional<double> c;

  ModelParams Params() const {
    ModelParams m;
    m.mu = mu;
    m.p = p;
    m.b_A = b_A;
    m.b_B = b_B;
    return m;
  }
};

void AddModelOptions(CLI::App* app, ModelOptions& m) {
  app->add_option("--mu", m.mu, "prior Prob(w=1)")->capture_default_str();
  app->add_option("--p", m.p, "diffusiveness per edge")->capture_default_str();
  app->add_option("--bA", m.b_A, "social quality on A")->capture_default_str();
  app->add_option("--bB", m.b_B, "social quality on B")->capture_default_str();
  app->add_option("--c", m.c, "override every user's payoff c");
}

struct RecipeOptions {
  std::string kind = "linear";
  int n = 20;
  int n_hubs = 5;
  int r = 2;
  int depth = 5;
  std::string layout = "chain";
  std::vector<int> sizes{30, 30, 30};
  std::vector<double> theta_diag{0.75};
  double expected_links = 4.0;
  int sender_community = 0;
  int sender_attach = 0;
  double c = kDefaultPayoff;
  std::vector<double> c_by_user;
  std::vector<double> c_by_community;

  NetworkRecipe Recipe() const {
    NetworkRecipe rec;
    rec.kind = ParseRecipeKind(kind);
    rec.n = n;
    rec.n_hubs = n_hubs;
    rec.r = r;
    rec.depth = depth;
    rec.c = c;
    rec.c_by_user = c_by_user;
    rec.c_by_community = c_by_community;
    if (rec.kind == RecipeKind::kSbm) {
      if (theta_diag.empty()) throw InvalidParamsError("--theta-diag needs a value");
      if (layout == "chain") {
        std::vector<double> diag = theta_diag;
        if (diag.size() == 1) diag.assign(sizes.size(), theta_diag[0]);
        rec.sbm = CommunityChainSbm(sizes, diag, expected_links);
      } else if (layout == "complete") {
        if (theta_diag.size() != 1) {
          throw InvalidParamsError("complete layout takes a single --theta-diag");
        }
        rec.sbm = CompleteCommunitySbm(sizes, theta_diag[0], expected_links);
      } else {
        throw InvalidParamsError("--layout must be chain or complete");
      }
      rec.sbm.sender_community = sender_community;
      rec.sbm.sender_attach = sender_attach;
    }
    return rec;
  }
};

void AddRecipeOptions(CLI::App* app, RecipeOptions& o) {
  app->add_option("--kind", o.kind, "linear | star-chain | tree | sbm")->capture_default_str();
  app->add_option("--n", o.n, "users on a line")->capture_default_str();
  app->add_option("--n-hubs", o.n_hubs, "hubs of a star chain")->capture_default_str();
  app->add_option("--r", o.r, "leaves per hub + 1, or tree branching")->capture_default_str();
  app->add_option("--depth", o.depth, "tree depth")->capture_default_str();
  app->add_option("--layout", o.layout, "SBM layout: chain | complete")->capture_default_str();
  app->add_option("--sizes", o.sizes, "SBM community sizes")->delimiter(',');
  app->add_option("--theta-diag", o.theta_diag, "SBM theta_JJ (one or per community)")
      ->delimiter(',');
  app->add_option("--expected-links", o.expected_links,
                  "expected links between linked communities")
      ->capture_default_str();
  app->add_option("--sender-community", o.sender_community)->capture_default_str();
  app->add_option("--sender-attach", o.sender_attach,
                  "index of the sender-linked user within its community")
      ->capture_default_str();
  app->add_option("--user-c", o.c, "payoff c of every user")->capture_default_str();
  app->add_option("--c-by-user", o.c_by_user, "payoffs by user id, last repeats")
      ->delimiter(',');
  app->add_option("--c-by-community", o.c_by_community, "SBM payoffs per community")
      ->delimiter(',');
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Network LoadNetwork(const std::string& path, const ModelOptions& m) {
  Network net = ReadNetworkFile(path);
  if (m.c) net = net.WithPayoffs(std::vector<double>(net.n_users(), *m.c));
  return net;
}

int RunGenNetwork(const GlobalOptions& g, const RecipeOptions& ro, const std::string& preset) {
  NetworkRecipe rec = preset.empty() ? ro.Recipe() : PresetSweep(preset, g.fast).recipe;
  Output out(g.out);
  out.stream() << NetworkToJson(rec.Build(g.seed)).dump() << '\n';
  return 0;
}

int RunAdoptionCmd(const GlobalOptions& g, const ModelOptions& m, const std::string& network,
                   double beta, const std::string& sender, bool trace) {
  const Network net = LoadNetwork(network, m);
  const EquilibriumOutcome eq =
      RunAdoption(net, m.Params(), beta, ParsePlatform(sender), trace);
  Output out(g.out);
  if (trace) {
    for (std::size_t t = 0; t < eq.trace.size(); ++t) {
      out.stream() << nlohmann::json{{"iteration", t + 1}, {"switched", eq.trace[t]}}.dump()
                   << '\n';
    }
  }
  std::vector<std::string> platforms;
  for (Platform p : eq.assignment.platforms) platforms.emplace_back(PlatformName(p));
  out.stream() << nlohmann::json{{"assignment", platforms},
                                 {"sender_platform", PlatformName(eq.assignment.sender_platform)},
                                 {"p_recv", eq.p_recv},
                                 {"iterations", eq.iterations},
                                 {"converged", eq.converged}}
                      .dump()
               << '\n';
  return 0;
}

int RunRhoSe(const GlobalOptions& g, const ModelOptions& m, const std::string& network,
             bool grid) {
  const Network net = LoadNetwork(network, m);
  const RegulationResult r = StrictestEffectiveRegulation(
      net, m.Params(), grid ? BetaSearch::kGrid : BetaSearch::kBisection);
  Output out(g.out);
  out.stream() << RegulationToJson(r).dump() << '\n';
  return 0;
}

int RunAnalytic(const GlobalOptions& g, const ModelOptions& m, const std::string& family,
                const std::string& p_range, int n, int r, bool has_b_a) {
  const Range ps = ParseRange(p_range, "--p-range");
  FamilySpec spec;
  spec.family = ParseFamily(family);
  spec.n = n;
  spec.r = r;
  spec.mu = m.mu;
  spec.c = m.c.value_or(kDefaultPayoff);
  const bool with_rho = spec.family == Family::kLinearInfinite && has_b_a;
  Output out(g.out);
  out.stream() << "p,threshold_b_gap" << (with_rho ? ",rho_se" : "") << '\n';
  for (int i = 0; i < ps.steps; ++i) {
    spec.p = ps.at(i);
    out.stream() << FormatDouble(spec.p) << ',' << FormatDouble(ThresholdRho0(spec));
    if (with_rho) {
      ModelParams params = m.Params();
      params.p = spec.p;
      const RegulationResult res = RhoSeLinearInfinite(params, spec.c);
      out.stream() << ',' << (res.rho_se ? FormatDouble(*res.rho_se) : std::string());
    }
    out.stream() << '\n';
  }
  return 0;
}

int RunSweep(const GlobalOptions& g, const ModelOptions& m, const RecipeOptions& ro,
             const std::string& preset, const std::string& p_range,
             const std::string& b_a_range, std::optional<int> samples, bool grid,
             bool explicit_model) {
  SweepSpec spec;
  if (!preset.empty()) {
    spec = PresetSweep(preset, g.fast);
  } else {
    spec.recipe = ro.Recipe();
    const int steps = g.fast ? 20 : 50;
    spec.p = {0.1, 0.9, steps};
    spec.b_A = {0.0, spec.recipe.random() ? 0.02 : 0.2, steps};
    spec.samples = spec.recipe.random() ? (g.fast ? 10 : 50) : 1;
  }
  if (explicit_model) {
    spec.mu = m.mu;
    spec.b_B = m.b_B;
  }
  if (!p_range.empty()) spec.p = ParseRange(p_range, "--p-range");
  if (!b_a_range.empty()) spec.b_A = ParseRange(b_a_range, "--bA-range");
  if (samples) spec.samples = *samples;
  spec.base_seed = g.seed;
  spec.search = grid ? BetaSearch::kGrid : BetaSearch::kBisection;
  SweepOptions opts;
  opts.threads = g.threads;
  const HeatmapGrid out_grid = Sweep(spec, opts);
  Output out(g.out);
  if (g.format == "pgm") {
    WritePgm(out_grid, out.stream());
  } else {
    WriteSweepCsv(out_grid, out.stream());
  }
  int code = 0;
  for (const HeatmapCell& c : out_grid.cells) {
    if (c.error.empty()) continue;
    std::cerr << "cell p=" << c.p << " b_A=" << c.b_A << ": " << c.error << '\n';
    code = std::max(code, c.error.rfind("invariant", 0) == 0 ? kExitInvariant : kExitInvalid);
  }
  return code;
}

int RunValidateA1(const GlobalOptions& g, const ModelOptions& m, A1Spec spec,
                  bool explicit_p, bool explicit_b_a) {
  spec.mu = m.mu;
  spec.b_B = m.b_B;
  if (m.c) spec.c = *m.c;
  if (explicit_p) spec.p = m.p;
  if (explicit_b_a) spec.b_A = m.b_A;
  spec.base_seed = g.seed;
  if (g.fast) spec.samples = std::min(spec.samples, 10);
  const std::vector<A1Row> rows = ValidateAssumption1(spec, g.threads);
  Output out(g.out);
  WriteA1Csv(rows, out.stream());
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Sender/platform regulation game: equilibria and strictest effective regulation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; flags take precedence");

  GlobalOptions g;
  app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "csv | pgm")
      ->check(CLI::IsMember({"csv", "pgm"}))
      ->capture_default_str();
  app.add_flag("--fast", g.fast, "20x20 grids, at most 10 samples");
  app.add_option("--threads", g.threads, "worker threads, 0 = all cores")
      ->capture_default_str();

  ModelOptions model;
  RecipeOptions recipe;
  std::string preset, network, sender = "B", family, p_range, b_a_range;
  double beta = 0.0;
  bool trace = false, grid = false;
  int n = 20, r = 2;
  std::optional<int> samples;
  A1Spec a1;

  CLI::App* gen = app.add_subcommand("gen-network", "write a network as JSON");
  AddRecipeOptions(gen, recipe);
  gen->add_option("--preset", preset, "use a sweep preset's network");

  CLI::App* adopt = app.add_subcommand("adoption", "run the adoption process");
  AddModelOptions(adopt, model);
  adopt->add_option("--network", network, "network JSON file")->required();
  adopt->add_option("--beta", beta, "sender deceitfulness")->required();
  adopt->add_option("--sender-platform", sender, "A | B")->capture_default_str();
  adopt->add_flag("--trace", trace, "print each iteration's switchers");

  CLI::App* rho = app.add_subcommand("rho-se", "strictest effective regulation");
  AddModelOptions(rho, model);
  rho->add_option("--network", network, "network JSON file")->required();
  rho->add_flag("--grid-fallback", grid, "dense beta grid instead of bisection");

  CLI::App* ana = app.add_subcommand("analytic", "closed-form thresholds");
  AddModelOptions(ana, model);
  ana->add_option("--family", family,
                  "linear-infinite | linear-finite | star-chain-infinite | "
                  "star-chain-finite | tree-infinite | tree-finite")
      ->required();
  ana->add_option("--p-range", p_range, "min:max:steps")->required();
  ana->add_option("--n", n, "users, hubs or tree levels")->capture_default_str();
  ana->add_option("--r", r, "branching")->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "(p, b_A) heatmap");
  AddModelOptions(sweep, model);
  AddRecipeOptions(sweep, recipe);
  sweep->add_option("--preset", preset,
                    "line20 | star5 | tree5 | chain-base | chain-a1 | chain-a2 | "
                    "complete-small | complete-large");
  sweep->add_option("--p-range", p_range, "min:max:steps");
  sweep->add_option("--bA-range", b_a_range, "min:max:steps");
  sweep->add_option("--samples", samples, "random graphs per cell");
  sweep->add_flag("--grid-fallback", grid, "dense beta grid instead of bisection");

  CLI::App* val = app.add_subcommand("validate-a1", "irregular choices in community chains");
  AddModelOptions(val, model);
  val->add_option("--theta", a1.theta_values, "theta_JJ values")->delimiter(',');
  val->add_option("--sizes", a1.sizes, "community sizes")->delimiter(',');
  val->add_option("--samples", a1.samples, "seeds per theta")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*gen) return RunGenNetwork(g, recipe, preset);
    if (*adopt) return RunAdoptionCmd(g, model, network, beta, sender, trace);
    if (*rho) return RunRhoSe(g, model, network, grid);
    if (*ana) return RunAnalytic(g, model, family, p_range, n, r, ana->count("--bA") > 0);
    if (*sweep) {
      const bool explicit_model = sweep->count("--mu") > 0 || sweep->count("--bB") > 0;
      return RunSweep(g, model, recipe, preset, p_range, b_a_range, samples, grid,
                      explicit_model);
    }
    if (*val) {
      return RunValidateA1(g, model, a1, val->count("--p") > 0, val->count("--bA") > 0);
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const InvalidParamsError& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ContractViolation& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace platreg

int main(int argc, char** argv) { return platreg::Main(argc, argv); }
