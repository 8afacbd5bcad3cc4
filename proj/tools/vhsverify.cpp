// Command-line front end: one subcommand per stage plus `verify` for all.
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or config error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vhs/config.hpp"
#include "vhs/errors.hpp"
#include "vhs/pipeline.hpp"

namespace {

constexpr int kUsageError = 2;

struct Options {
  std::string config_path;
  std::string family;
  int p = 0;
  int q = 0;
  int m = 0;
  int n = 0;
  std::vector<double> xi;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::string out;
  bool quiet = false;
  int samples = 0;
  int restarts = 0;
  int directions = 0;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("-c,--config", o.config_path, "JSON config, e.g. {\"family\":\"so\",\"p\":2,\"q\":2}")
      ->check(CLI::ExistingFile);
  sub->add_option("--family", o.family, "so (so(p,2q)) or sp (sp(m,n))");
  sub->add_option("--p", o.p, "so(p,2q): size of the positive block")->check(CLI::PositiveNumber);
  sub->add_option("--q", o.q, "so(p,2q): half the size of the negative block")
      ->check(CLI::PositiveNumber);
  sub->add_option("--m", o.m, "sp(m,n): first quaternionic block")->check(CLI::PositiveNumber);
  sub->add_option("--n", o.n, "sp(m,n): second quaternionic block")->check(CLI::PositiveNumber);
  sub->add_option("--xi", o.xi, "coefficients of xi over the maximal torus generators")
      ->delimiter(',');
  sub->add_option("--seed", o.seed, "RNG seed");
  sub->add_option("--tol-scale", o.tol_scale, "multiplier applied to every tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("-o,--out", o.out,
                  std::string("output directory (default: $") + vhs::kOutputDirEnv +
                      " or ./vhs_out)");
  sub->add_option("--samples", o.samples, "random 2-planes in the curvature survey")
      ->check(CLI::PositiveNumber);
  sub->add_option("--restarts", o.restarts, "optimizer restarts in the curvature survey")
      ->check(CLI::PositiveNumber);
  sub->add_option("--directions", o.directions, "random geodesic directions")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", o.quiet, "suppress the human-readable summary");
}

vhs::RunConfig build_config(const CLI::App& sub, const Options& o) {
  vhs::RunConfig config;
  if (!o.config_path.empty()) config = vhs::load_config(o.config_path);
  if (sub.count("--family")) {
    const vhs::Family f = vhs::parse_family(o.family);
    if (f != config.spec.family) {
      config.spec = f == vhs::Family::SO ? vhs::AlgebraSpec::so(2, 2) : vhs::AlgebraSpec::sp(1, 1);
    }
  }
  const bool so = config.spec.family == vhs::Family::SO;
  if (so && (sub.count("--m") || sub.count("--n"))) {
    throw vhs::InvalidInput("--m/--n apply to the sp family; so(p,2q) takes --p and --q");
  }
  if (!so && (sub.count("--p") || sub.count("--q"))) {
    throw vhs::InvalidInput("--p/--q apply to the so family; sp(m,n) takes --m and --n");
  }
  if (sub.count("--p")) config.spec.param1 = o.p;
  if (sub.count("--q")) config.spec.param2 = o.q;
  if (sub.count("--m")) config.spec.param1 = o.m;
  if (sub.count("--n")) config.spec.param2 = o.n;
  if (sub.count("--xi")) {
    config.xi = Eigen::Map<const Eigen::VectorXd>(o.xi.data(), static_cast<Eigen::Index>(o.xi.size()));
  }
  if (sub.count("--seed")) config.seed = o.seed;
  if (sub.count("--tol-scale")) config.tol_scale = o.tol_scale;
  if (sub.count("--samples")) config.samples = o.samples;
  if (sub.count("--restarts")) config.restarts = o.restarts;
  if (sub.count("--directions")) config.directions = o.directions;
  vhs::validate(config.spec);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the Lie-algebraic and Riemannian data of period domains G/V"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", VHS_VERSION);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"algebra", "build the real form, Cartan decomposition and canonical basis"},
      {"identities", "structure-constant identities"},
      {"curvature", "sectional and Ricci curvature of G/K against the curvature table"},
      {"fibration", "fibers of G/V -> G/K: totally geodesic, Killing"},
      {"harmonic", "algebra of invariant harmonic 1-forms"},
      {"comparison", "radial Hessian comparison and A_s positivity"},
      {"coercivity", "stress-energy pairing, coercivity constant, growth chain"},
      {"verify", "run every stage"},
  };
  Options options;
  std::vector<CLI::App*> subs;
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    add_common(sub, options);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const vhs::RunConfig config = build_config(*sub, options);
    const auto stages = vhs::stages_for(sub->get_name());
    const vhs::RunArtifacts artifacts = vhs::run_verification(config, stages);
    const std::filesystem::path out =
        options.out.empty() ? vhs::default_output_dir() : std::filesystem::path(options.out);
    vhs::write_artifacts(artifacts, out);
    if (!options.quiet) {
      std::cout << artifacts.summary << "artifacts: " << out.string() << '\n';
    }
    return artifacts.exit_code();
  } catch (const vhs::InvalidInput& e) {
    std::cerr << "vhsverify: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "vhsverify: " << e.what() << '\n';
    return 1;
  }
}
