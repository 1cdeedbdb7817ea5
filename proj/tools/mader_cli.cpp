// mader: command-line front end for the transforms, kernels and inversions.
//
// Exit status: 0 success, 1 usage or domain error, 2 a verification
// command found a value outside its tolerance.

#include "mader/acceptance.hpp"
#include "mader/kernels.hpp"
#include "mader/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace mader;

constexpr int kUsageError = 1;
constexpr int kToleranceFailure = 2;

constexpr double kLemmaTol = 1e-7;
constexpr double kPsiTol = 1e-7;
constexpr double kMcSigmas = 3.0;
constexpr double kPipelineTol = 2e-3;

struct RunConfig {
  std::string space = "euclidean";
  int n = 3;
  int k = 2;
  std::string phantom;
  std::string point;
  std::string center;
  double shape = 0.0;
  std::optional<double> grid_h;
  std::optional<int> grid_j;
  std::optional<int> fit_degree;
  std::optional<int> quad_nodes;
  std::optional<int> mc_samples;
  std::optional<double> truncation;
  std::uint64_t seed = 20240611;
  std::string out_dir;

  // subcommand specifics
  std::string theorem = "1";
  std::string convention = "derived";
  std::vector<double> alphas;
  std::vector<int> ms;
  std::vector<double> us;
  std::vector<double> rs;
  std::string variant = "plain";
  double r = 0.5;
  int criterion = 0;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

Space make_space(const RunConfig& cfg) { return Space(parse_space_kind(cfg.space), cfg.n, cfg.k); }

Point<double> make_point(const Space& space, const RunConfig& cfg) {
  if (cfg.point.empty()) return base_point(space);
  const auto v = parse_list(cfg.point, "--point");
  Point<double> x{Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))};
  try {
    validate_point(space, x);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--point: ") + e.what());
  }
  return x;
}

std::string default_phantom(const Space& space) { return phantom_ids(space).front(); }

ScalarField make_field(const Space& space, const RunConfig& cfg) {
  PhantomOptions opts;
  if (!cfg.center.empty()) opts.center = parse_list(cfg.center, "--center");
  opts.shape = cfg.shape;
  try {
    return make_phantom(space, cfg.phantom.empty() ? default_phantom(space) : cfg.phantom, opts);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("--phantom: ") + e.what());
  }
}

DualConfig make_dual(const RunConfig& cfg) {
  DualConfig d;
  d.seed = cfg.seed;
  if (cfg.quad_nodes) d.quad_nodes = *cfg.quad_nodes;
  if (cfg.mc_samples) d.mc_samples = *cfg.mc_samples;
  if (cfg.truncation) d.truncation_T = *cfg.truncation;
  d.validate();
  return d;
}

InversionConfig make_inversion(const RunConfig& cfg) {
  InversionConfig c;
  if (cfg.grid_h) c.grid_h = *cfg.grid_h;
  if (cfg.grid_j) c.grid_j = *cfg.grid_j;
  if (cfg.fit_degree) c.fit_degree = *cfg.fit_degree;
  if (cfg.convention == "printed") {
    c.sphere_convention = SphereConvention::printed;
    c.mader_convention = MaderConvention::printed;
  } else if (cfg.convention != "derived") {
    throw std::invalid_argument("--convention must be 'derived' or 'printed'");
  }
  c.dual = make_dual(cfg);
  return c;
}

std::string out_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("MADER_OUT_DIR"); env && *env) return env;
  return "";
}

// Writes an artifact when an output directory is configured.
void write_artifact(const RunConfig& cfg, const std::string& name, const std::string& text) {
  const std::string dir = out_dir(cfg);
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void emit_json(const RunConfig& cfg, const std::string& name, const Json& j) {
  const std::string text = dump_json(j);
  std::cout << text;
  write_artifact(cfg, name, text);
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  char buf[32];
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row += (row.empty() ? "" : ",") + std::string(buf);
  }
  return row + "\n";
}

int cmd_constants(const RunConfig& cfg) {
  const Space space = make_space(cfg);
  Json j;
  j["space"] = to_string(space.kind);
  j["n"] = space.n;
  j["k"] = space.k;
  Json sigma;
  for (int m : {space.n - space.k - 1, space.k - 1, space.k, space.n}) {
    sigma["sigma_" + std::to_string(m)] = sphere_area(m);
  }
  j["sigma"] = sigma;
  if (space.k % 2 == 0) {
    j["d_X"] = inversion_constant(space, Theorem::thm1_even).value;
    if (space.kind == SpaceKind::sphere) {
      j["d_X_printed"] =
          inversion_constant(space, Theorem::thm1_even, SphereConvention::printed).value;
    }
    j["c_X"] = inversion_constant(space, Theorem::thm2).value;
    j["c_k"] = c_k_value(space.k);
  } else {
    j["d_tilde_X"] = inversion_constant(space, Theorem::thm1_odd).value;
  }
  if (space.kind == SpaceKind::euclidean && space.k == space.n - 1) {
    if (space.n % 2 == 0) {
      j["A_0"] = mader_A0(space.n);
    } else {
      j["A_1"] = mader_A1(space.n);
      j["A_1_printed"] = mader_A1(space.n, MaderConvention::printed);
    }
  }
  emit_json(cfg, "constants.json", j);
  return 0;
}

int cmd_lemma_verify(const RunConfig& cfg) {
  std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{0.25, 0.5, 0.75} : cfg.alphas;
  std::vector<int> ms = cfg.ms.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.ms;
  std::vector<double> us = cfg.us;
  if (us.empty()) {
    for (double u = 0.1; u < 4.0; u += 0.2) {
      if (std::abs(u - 1.0) > 1e-3) us.push_back(u);
    }
  }
  std::string csv = "alpha,m,u,closed,oracle,abs_diff\n";
  double worst = 0.0;
  for (double alpha : alphas) {
    for (int m : ms) {
      const KernelParams p{alpha, m};
      try {
        p.validate();
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("--alpha/--m: " + std::string(e.what()));
      }
      for (double u : us) {
        const double closed = phi_closed(p, u);
        const double oracle = phi_oracle(p, u);
        const double diff = std::abs(closed - oracle);
        worst = std::max(worst, diff);
        csv += csv_row({alpha, static_cast<double>(m), u, closed, oracle, diff});
      }
    }
  }
  std::cout << csv;
  write_artifact(cfg, "lemma_verify.csv", csv);
  if (!(worst < kLemmaTol)) {
    std::cerr << "lemma-verify: max discrepancy " << worst << " exceeds " << kLemmaTol << "\n";
    return kToleranceFailure;
  }
  return 0;
}

int cmd_psi(const RunConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("--k must be >= 1");
  const std::vector<double> us = cfg.us.empty() ? std::vector<double>{0.25, 0.5, 2.0, 3.0} : cfg.us;
  std::string csv = "u,closed,oracle,abs_diff\n";
  double worst = 0.0;
  for (double u : us) {
    const bool odd = cfg.k % 2 == 1;
    const double closed = odd ? psi_k_closed(cfg.k, u) : psi_sign(cfg.k, u);
    const double oracle = odd ? psi_k_oracle(cfg.k, u) : psi_sign_oracle(cfg.k, u);
    worst = std::max(worst, std::abs(closed - oracle));
    csv += csv_row({u, closed, oracle, std::abs(closed - oracle)});
  }
  std::cout << csv;
  write_artifact(cfg, "psi.csv", csv);
  return worst < kPsiTol ? 0 : kToleranceFailure;
}

std::vector<double> r_grid(const RunConfig& cfg, double upper) {
  if (!cfg.rs.empty()) return cfg.rs;
  std::vector<double> out;
  for (int j = 0; j <= 20; ++j) out.push_back(upper * j / 20.0);
  return out;
}

int cmd_forward(const RunConfig& cfg) {
  const Space space = make_space(cfg);
  const ScalarField f = make_field(space, cfg);
  const Point<double> x = make_point(space, cfg);
  const DualConfig dual = make_dual(cfg);
  const Rotation<double> g = haar_rotation<double>(space, cfg.seed);
  RadialProfile profile;
  profile.meta = "forward transform on geodesics at distance r from x";
  for (double r : r_grid(cfg, space.kind == SpaceKind::sphere ? 0.95 : 2.0)) {
    profile.grid.push_back(r);
    profile.values.push_back(radon_forward(space, f, geodesic_at_distance(space, x, r, g), dual.quad_nodes));
  }
  const std::string csv = profile_csv(profile);
  std::cout << csv;
  write_artifact(cfg, "forward.csv", csv);
  return 0;
}

int cmd_means(const RunConfig& cfg) {
  const Space space = make_space(cfg);
  const ScalarField f = make_field(space, cfg);
  const Point<double> x = make_point(space, cfg);
  const DualConfig dual = make_dual(cfg);
  MeanVariant variant = MeanVariant::plain;
  if (cfg.variant == "tilde") {
    variant = MeanVariant::tilde;
  } else if (cfg.variant != "plain") {
    throw std::invalid_argument("--variant must be 'plain' or 'tilde'");
  }
  std::vector<double> grid = cfg.rs;
  if (grid.empty()) {
    for (int j = 0; j <= 20; ++j) {
      const double s = j / 20.0;
      if (variant == MeanVariant::tilde) {
        grid.push_back(space.kind == SpaceKind::sphere ? 0.95 * s : 2.0 * s);
      } else if (space.kind == SpaceKind::sphere) {
        grid.push_back(-0.95 + 1.9 * s);
      } else if (space.kind == SpaceKind::hyperbolic) {
        grid.push_back(1.0 + 2.0 * s);
      } else {
        grid.push_back(2.0 * s);
      }
    }
  }
  const MeanProfile mp = mean_profile(space, f, x, grid, variant, dual.quad_nodes);
  RadialProfile profile{mp.grid, mp.values, "means"};
  const std::string csv = profile_csv(profile);
  std::cout << csv;
  write_artifact(cfg, "means.csv", csv);
  return 0;
}

int cmd_invert(const RunConfig& cfg) {
  const InversionConfig icfg = make_inversion(cfg);
  InversionReport rep;
  if (cfg.theorem == "mader") {
    const Space space(SpaceKind::euclidean, cfg.n, cfg.n - 1);
    const ScalarField f = make_field(space, cfg);
    if (f.name != "gaussian") {
      throw std::invalid_argument("--phantom: the classical formula needs the gaussian phantom");
    }
    const Point<double> x = make_point(space, cfg);
    // closed-form hyperplane data of the gaussian, centered where the phantom is
    rep = mader_classical(cfg.n, gaussian_hyperplane_data(cfg.n, f.center), x.coords, icfg, f.scale,
                          f(x));
  } else {
    const Space space = make_space(cfg);
    const ScalarField f = make_field(space, cfg);
    const Point<double> x = make_point(space, cfg);
    if (cfg.theorem == "1") {
      rep = invert_thm1(space, f, x, icfg);
    } else if (cfg.theorem == "2") {
      rep = invert_thm2(space, f, x, icfg);
    } else {
      throw std::invalid_argument("--theorem must be 1, 2 or mader");
    }
  }
  emit_json(cfg, "invert.json", report_json(rep, cfg.seed));
  write_artifact(cfg, "profile.csv", profile_csv(rep.profile));
  return 0;
}

int cmd_crosscheck(const RunConfig& cfg) {
  const Space space = make_space(cfg);
  const ScalarField f = make_field(space, cfg);
  const Point<double> x = make_point(space, cfg);
  const InversionConfig icfg = make_inversion(cfg);
  bool ok = true;
  Json j;
  j["space"] = to_string(space.kind);
  j["n"] = space.n;
  j["k"] = space.k;
  j["phantom"] = f.name;
  j["seed"] = cfg.seed;

  const auto phi = [&](const Geodesic<double>& xi) {
    return radon_forward(space, f, xi, icfg.dual.forward_nodes);
  };
  const McEstimate mc = dual_shifted_mc(space, phi, x, cfg.r, icfg.dual);
  const double mean = dual_shifted_mean(space, f, x, cfg.r, icfg.dual);
  const bool dual_ok = std::abs(mc.value - mean) <= kMcSigmas * mc.std_error + 1e-8 * std::abs(mean);
  ok = ok && dual_ok;
  j["dual"] = {{"r", cfg.r},           {"mc", mc.value}, {"std_error", mc.std_error},
               {"mean_value", mean},   {"ok", dual_ok}};

  const InversionReport first = invert_thm1(space, f, x, icfg);
  j["first"] = report_json(first, cfg.seed);
  if (space.k % 2 == 0) {
    const InversionReport second = invert_thm2(space, f, x, icfg);
    const double rel = std::abs(first.estimate - second.estimate) / std::abs(second.estimate);
    j["second"] = report_json(second, cfg.seed);
    j["first_vs_second"] = {{"rel_diff", rel}, {"tol", kPipelineTol}, {"ok", rel <= kPipelineTol}};
    ok = ok && rel <= kPipelineTol;
  }
  if (space.kind == SpaceKind::euclidean && space.k == space.n - 1 && f.name == "gaussian") {
    const InversionReport classical =
        mader_classical(space.n, gaussian_hyperplane_data(space.n, f.center), x.coords, icfg,
                        f.scale, f(x));
    const double rel = std::abs(classical.estimate - first.estimate) / std::abs(first.estimate);
    j["classical"] = report_json(classical, cfg.seed);
    j["classical_vs_first"] = {{"rel_diff", rel}, {"tol", kPipelineTol}, {"ok", rel <= kPipelineTol}};
    ok = ok && rel <= kPipelineTol;
  }
  j["ok"] = ok;
  emit_json(cfg, "crosscheck.json", j);
  return ok ? 0 : kToleranceFailure;
}

int cmd_report(const RunConfig& cfg) {
  AcceptanceOptions opts;
  opts.seed = cfg.seed;
  if (cfg.mc_samples) opts.mc_samples = *cfg.mc_samples;
  std::vector<CriterionResult> results;
  if (cfg.criterion != 0) {
    results.push_back(run_criterion(cfg.criterion, opts));
    std::cout << format_result(results.back()) << "\n";
  } else {
    results = run_acceptance(opts, &std::cout);
  }
  write_artifact(cfg, "acceptance.json", dump_json(acceptance_json(results, opts)));
  for (const auto& r : results) {
    if (!r.pass) return kToleranceFailure;
  }
  return 0;
}

void add_space_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--space", cfg.space, "euclidean, sphere or hyperbolic")->capture_default_str();
  sub->add_option("--n", cfg.n, "ambient dimension")->capture_default_str();
  sub->add_option("--k", cfg.k, "submanifold dimension")->capture_default_str();
}

void add_field_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--phantom", cfg.phantom, "test function id (default: first for the space)");
  sub->add_option("--center", cfg.center, "phantom center, comma-separated ambient coordinates");
  sub->add_option("--shape", cfg.shape, "zonal sharpness or hyperbolic power");
  sub->add_option("--point", cfg.point, "evaluation point, comma-separated ambient coordinates");
}

void add_numeric_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--grid-h", cfg.grid_h, "differentiation step")->check(CLI::PositiveNumber);
  sub->add_option("--grid-j", cfg.grid_j, "grid points beyond r = 0")->check(CLI::PositiveNumber);
  sub->add_option("--fit-degree", cfg.fit_degree, "least-squares degree")->check(CLI::PositiveNumber);
  sub->add_option("--quad-nodes", cfg.quad_nodes, "nodes per quadrature factor")
      ->check(CLI::PositiveNumber);
  sub->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  sub->add_option("--truncation", cfg.truncation, "upper distance limit")->check(CLI::PositiveNumber);
  sub->add_option("--convention", cfg.convention, "constant convention: derived or printed")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Totally geodesic Radon transforms on constant-curvature spaces and their inversion"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "artifact directory (default: $MADER_OUT_DIR)");

  auto* constants = app.add_subcommand("constants", "inversion constants as JSON");
  add_space_options(constants, cfg);

  auto* lemma = app.add_subcommand("lemma-verify", "kernel closed form vs quadrature, CSV");
  lemma->add_option("--alpha", cfg.alphas, "alpha values");
  lemma->add_option("--m", cfg.ms, "m values");
  lemma->add_option("--u", cfg.us, "u values");

  auto* psi = app.add_subcommand("psi", "psi kernels vs quadrature, CSV");
  psi->add_option("--k", cfg.k, "dimension parameter")->capture_default_str();
  psi->add_option("--u", cfg.us, "u values");

  auto* forward = app.add_subcommand("forward", "forward transform along a distance sweep, CSV");
  add_space_options(forward, cfg);
  add_field_options(forward, cfg);
  add_numeric_options(forward, cfg);
  forward->add_option("--r", cfg.rs, "distances");

  auto* means = app.add_subcommand("means", "spherical mean profile, CSV");
  add_space_options(means, cfg);
  add_field_options(means, cfg);
  add_numeric_options(means, cfg);
  means->add_option("--t", cfg.rs, "mean parameters");
  means->add_option("--variant", cfg.variant, "plain or tilde")->capture_default_str();

  auto* invert = app.add_subcommand("invert", "reconstruct f(x), JSON and profile CSV");
  add_space_options(invert, cfg);
  add_field_options(invert, cfg);
  add_numeric_options(invert, cfg);
  invert->add_option("--theorem", cfg.theorem, "1, 2 or mader")->capture_default_str();

  auto* cross = app.add_subcommand("crosscheck", "compare independent pipelines, JSON");
  add_space_options(cross, cfg);
  add_field_options(cross, cfg);
  add_numeric_options(cross, cfg);
  cross->add_option("--r", cfg.r, "distance for the dual transform check")->capture_default_str();

  auto* report = app.add_subcommand("report", "run the acceptance suite");
  report->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  report->add_option("--criterion", cfg.criterion, "run one criterion (1-12)")
      ->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*constants) return cmd_constants(cfg);
    if (*lemma) return cmd_lemma_verify(cfg);
    if (*psi) return cmd_psi(cfg);
    if (*forward) return cmd_forward(cfg);
    if (*means) return cmd_means(cfg);
    if (*invert) return cmd_invert(cfg);
    if (*cross) return cmd_crosscheck(cfg);
    if (*report) return cmd_report(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
