#include "rbb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace rbb::cli {

namespace {

using json = nlohmann::json;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<ExperimentPreset> build_presets() {
  std::vector<ExperimentPreset> out;

  {
    ExperimentPreset p{"zdt1-fig1a", "zdt1", 10, 2, {}, 0.0015, 0.00015, "zdt1_front_and_weight_bias"};
    const Vector r = vec({0.4, 0.15});
    for (const auto& [label, w] : {std::pair{"w_0.5_0.5", vec({0.5, 0.5})}, std::pair{"w_0.8_0.2", vec({0.8, 0.2})},
                                   std::pair{"w_0.2_0.8", vec({0.2, 0.8})}})
      p.runs.push_back({label, {Preference(r, w)}, 0.005});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"zdt2-fig1b", "zdt2", 10, 2, {}, 0.0015, 0.00015, "zdt2_sigma_monotonicity"};
    for (const auto& [label, s] :
         {std::pair{"sigma_0.005", 0.005}, std::pair{"sigma_0.015", 0.015}, std::pair{"sigma_0.05", 0.05}})
      p.runs.push_back({label, {Preference::uniform(vec({0.3, 0.3}))}, s});
    out.push_back(std::move(p));
  }
  {
    // Three reference points below the front and one above it.
    ExperimentPreset p{"zdt3-fig1c", "zdt3", 5, 2, {}, 0.005, 0.0002, "zdt3_multi_reference"};
    p.runs.push_back({"", {Preference::uniform(vec({0.05, 0.4})), Preference::uniform(vec({0.3, 0.1})),
                           Preference::uniform(vec({0.5, -0.2})), Preference::uniform(vec({0.85, 0.0}))},
                      0.003});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"dtlz2-3obj", "dtlz2", 7, 3, {}, 0.004, 0.006, "dtlz2_sphere"};
    p.runs.push_back(
        {"", {Preference::uniform(vec({0.4, 0.4, 0.8})), Preference::uniform(vec({0.8, 0.8, 0.6}))}, 0.004});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"dtlz2-5obj", "dtlz2", 5, 5, {}, 0.006, 0.008, "dtlz2_sphere"};
    p.runs.push_back({"",
                      {Preference::uniform(Vector::Constant(5, 0.8)),
                       Preference::uniform(vec({0.2, 0.2, 0.2, 0.2, 0.8}))},
                      0.005});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"dtlz2-7obj", "dtlz2", 7, 7, {}, 0.006, 0.008, "dtlz2_sphere"};
    p.runs.push_back({"", {Preference::uniform(Vector::Constant(7, 0.25))}, 0.002});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"vnt", "vnt", 2, 3, {}, 0.03, 0.007, "epsilon_efficiency"};
    p.runs.push_back({"", {Preference::uniform(vec({4.0, 10.0, 0.0}))}, 0.0003});
    out.push_back(std::move(p));
  }
  {
    ExperimentPreset p{"welded-beam", "welded_beam", 4, 2, {}, 0.3, 0.02, "welded_beam_constraints"};
    p.runs.push_back({"",
                      {Preference::uniform(vec({4.0, 0.003})), Preference::uniform(vec({20.0, 0.002})),
                       Preference::uniform(vec({32.0, 0.0007}))},
                      0.0001});
    out.push_back(std::move(p));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << content;
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> table = build_presets();
  return table;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const ExperimentPreset& p : presets())
    if (p.name == name) return p;
  throw UsageError("unknown preset '" + name + "'");
}

Vector parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + item + "' in '" + text + "' as a number");
    }
  }
  if (vals.empty()) throw UsageError("empty vector '" + text + "'");
  return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::vector<RunSpec> expand_preset(const ExperimentPreset& preset, const RunConfig& base) {
  std::vector<RunSpec> specs;
  for (const PresetRun& run : preset.runs) {
    RunSpec s;
    s.label = run.label;
    s.problem = preset.problem;
    s.n = preset.n;
    s.m = preset.m;
    s.config = base;
    s.config.prefs = run.prefs;
    s.config.sigma = run.sigma;
    s.config.epsilon = preset.epsilon;
    s.config.delta = preset.delta;
    specs.push_back(std::move(s));
  }
  return specs;
}

std::optional<Options> parse_args(int argc, const char* const* argv, std::string* help_out) {
  CLI::App app{"Reference-point guided branch and bound for multiobjective optimization"};
  std::string problem, preset, normalize = "on", format = "csv", out = ".";
  int nvars = 0, m_min = 100, max_iter = 0, threads = 1;
  double sigma = 0.0, eps = 0.0, delta = 0.0, rho = 1e-6;
  std::uint64_t seed = 1;
  std::vector<std::string> refs, weights;
  bool quiet = false, list = false;

  app.add_option("--problem", problem, "problem name (zdt1, zdt2, zdt3, dtlz2, vnt, welded_beam)");
  app.add_option("--nvars", nvars, "number of decision variables");
  auto* objectives_opt = app.add_option("--nobj", "number of objectives (dtlz2 only)");
  app.add_option("--ref", refs, "reference point v1,v2,... (repeatable)")->take_all();
  app.add_option("--weights", weights, "weights w1,w2,... paired with --ref in order (repeatable)")->take_all();
  auto* sigma_opt = app.add_option("--sigma", sigma, "region parameter sigma > 0");
  auto* eps_opt = app.add_option("--eps", eps, "precision epsilon > 0");
  auto* delta_opt = app.add_option("--delta", delta, "box width precision delta > 0");
  app.add_option("--m-min", m_min, "minimum preferred upper bounds before refining all boxes")->capture_default_str();
  app.add_option("--rho", rho, "augmentation coefficient")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->capture_default_str();
  app.add_option("--max-iter", max_iter, "iteration cap (0: automatic)")->capture_default_str();
  app.add_option("--normalize", normalize, "objective normalization on|off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--preset", preset, "named experiment preset");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--format", format, "solutions file format csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "suppress the per-iteration log");
  app.add_flag("--list-presets", list, "print the preset table and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help_out) *help_out = app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  Options opts;
  opts.out_dir = out;
  opts.format = format == "json" ? SolutionFormat::json : SolutionFormat::csv;
  opts.quiet = quiet;
  opts.list_presets = list;
  if (list) return opts;

  RunConfig base;
  base.m_min = m_min;
  base.rho = rho;
  base.seed = seed;
  base.threads = threads;
  base.max_iterations = max_iter;
  base.normalize = normalize == "on";
  if (m_min < 1) throw UsageError("--m-min must be at least 1");
  if (threads < 1) throw UsageError("--threads must be at least 1");
  if (max_iter < 0) throw UsageError("--max-iter must be nonnegative");
  if (!(rho > 0.0)) throw UsageError("--rho must be positive");

  auto check_positive = [](CLI::Option* opt, double v, const char* name) {
    if (opt->count() && !(v > 0.0)) throw UsageError(std::string(name) + " must be positive");
  };
  check_positive(sigma_opt, sigma, "--sigma");
  check_positive(eps_opt, eps, "--eps");
  check_positive(delta_opt, delta, "--delta");

  if (!preset.empty()) {
    const ExperimentPreset& p = find_preset(preset);
    opts.runs = expand_preset(p, base);
    for (RunSpec& s : opts.runs) {
      if (sigma_opt->count()) s.config.sigma = sigma;
      if (eps_opt->count()) s.config.epsilon = eps;
      if (delta_opt->count()) s.config.delta = delta;
    }
    return opts;
  }

  if (problem.empty()) throw UsageError("either --problem or --preset is required");
  if (!sigma_opt->count() || !eps_opt->count() || !delta_opt->count())
    throw UsageError("--sigma, --eps and --delta are required without --preset");

  RunSpec spec;
  spec.problem = problem;
  try {
    auto [dn, dm] = builtin_default_shape(problem);
    spec.n = nvars > 0 ? nvars : dn;
    spec.m = objectives_opt->count() ? objectives_opt->as<int>() : dm;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!weights.empty() && weights.size() != refs.size())
    throw UsageError("--weights must be given once per --ref or not at all");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const Vector r = parse_vector(refs[i]);
    if (r.size() != spec.m)
      throw UsageError("reference point '" + refs[i] + "' has " + std::to_string(r.size()) + " components, problem has " +
                       std::to_string(spec.m) + " objectives");
    if (weights.empty()) {
      spec.config.prefs.push_back(Preference::uniform(r));
      continue;
    }
    const Vector w = parse_vector(weights[i]);
    if (w.size() != spec.m) throw UsageError("weights '" + weights[i] + "' do not match the number of objectives");
    try {
      spec.config.prefs.emplace_back(r, w);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  RunConfig cfg = base;
  cfg.prefs = std::move(spec.config.prefs);
  cfg.sigma = sigma;
  cfg.epsilon = eps;
  cfg.delta = delta;
  spec.config = std::move(cfg);
  opts.runs.push_back(std::move(spec));
  return opts;
}

OutputFiles output_files(const Options& opts, const RunSpec& spec) {
  const std::string stem = spec.label.empty() ? "" : spec.label + "_";
  OutputFiles f;
  f.solutions = opts.out_dir / (stem + (opts.format == SolutionFormat::json ? "solutions.json" : "solutions.csv"));
  f.summary = opts.out_dir / (stem + "summary.json");
  f.boxes = opts.out_dir / (stem + "boxes.csv");
  return f;
}

std::string solutions_csv(const RunResult& result, const Problem& prob) {
  std::ostringstream os;
  for (Eigen::Index k = 0; k < prob.n; ++k) os << "x_" << k + 1 << ',';
  for (Eigen::Index i = 0; i < prob.m; ++i) os << "f_" << i + 1 << ',';
  os << "ref_index\n";
  for (std::size_t s = 0; s < result.solutions.size(); ++s) {
    for (double v : result.solutions[s]) os << format_double(v) << ',';
    for (double v : result.objective_vectors[s]) os << format_double(v) << ',';
    os << result.ref_index[s] << '\n';
  }
  return os.str();
}

std::string solutions_json(const RunResult& result, const Problem& /*prob*/) {
  json rows = json::array();
  for (std::size_t s = 0; s < result.solutions.size(); ++s)
    rows.push_back(
        {{"x", to_json(result.solutions[s])}, {"f", to_json(result.objective_vectors[s])}, {"ref_index", result.ref_index[s]}});
  return rows.dump(2) + "\n";
}

std::string summary_json(const RunResult& result, const RunSpec& spec) {
  const RunConfig& c = spec.config;
  json prefs = json::array();
  for (const Preference& p : c.prefs) prefs.push_back({{"reference", to_json(p.reference())}, {"weights", to_json(p.weights())}});
  json history = json::array();
  for (const IterationRecord& r : result.history) {
    history.push_back({{"k", r.k},
                       {"bisected", r.bisected},
                       {"infeasible", r.infeasible},
                       {"discarded_first", {{"dominated", r.first_sweep.dominated}, {"asf_all_refs", r.first_sweep.asf_all_refs}}},
                       {"discarded_second",
                        {{"dominated", r.second_sweep.dominated}, {"asf_all_refs", r.second_sweep.asf_all_refs}}},
                       {"exempted", r.second_sweep.exempted},
                       {"boxes", r.boxes},
                       {"refined", r.refined},
                       {"preferred_lower", r.preferred_lower},
                       {"preferred_upper", r.preferred_upper},
                       {"omega", r.omega},
                       {"d", r.d},
                       {"ideal", to_json(r.ideal)},
                       {"nadir", to_json(r.nadir)}});
  }
  json j = {{"config",
             {{"problem", spec.problem},
              {"label", spec.label},
              {"n", spec.n},
              {"m", spec.m},
              {"preferences", prefs},
              {"sigma", c.sigma},
              {"epsilon", c.epsilon},
              {"delta", c.delta},
              {"m_min", c.m_min},
              {"rho", c.rho},
              {"normalize", c.normalize},
              {"seed", c.seed},
              {"threads", c.threads},
              {"max_iterations", c.max_iterations}}},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"d", result.d},
            {"omega", result.omega},
            {"ideal", to_json(result.ideal)},
            {"nadir", to_json(result.nadir)},
            {"solutions", result.solutions.size()},
            {"boxes", result.boxes.size()},
            {"warnings", result.warnings},
            {"history", history}};
  return j.dump(2) + "\n";
}

std::string boxes_csv(const RunResult& result) {
  std::ostringstream os;
  const Eigen::Index n = result.boxes.empty() ? 0 : result.boxes.front().dim();
  for (Eigen::Index k = 0; k < n; ++k) os << "lo_" << k + 1 << ',';
  for (Eigen::Index k = 0; k < n; ++k) os << "hi_" << k + 1 << (k + 1 < n ? "," : "");
  os << '\n';
  for (const BoxXd& b : result.boxes) {
    for (double v : b.lower()) os << format_double(v) << ',';
    for (Eigen::Index k = 0; k < n; ++k) os << format_double(b.upper()[k]) << (k + 1 < n ? "," : "");
    os << '\n';
  }
  return os.str();
}

OutputFiles emit_results(const RunResult& result, const RunSpec& spec, const Problem& prob, const Options& opts) {
  namespace fs = std::filesystem;
  const OutputFiles files = output_files(opts, spec);
  const std::vector<std::pair<fs::path, std::string>> outputs = {
      {files.solutions, opts.format == SolutionFormat::json ? solutions_json(result, prob) : solutions_csv(result, prob)},
      {files.summary, summary_json(result, spec)},
      {files.boxes, boxes_csv(result)}};

  std::vector<fs::path> staged;
  std::size_t renamed = 0;
  try {
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    for (const auto& [path, content] : outputs) {
      fs::path tmp = path;
      tmp += ".partial";
      staged.push_back(tmp);
      write_file(tmp, content);
    }
    for (; renamed < outputs.size(); ++renamed) fs::rename(staged[renamed], outputs[renamed].first);
  } catch (...) {
    std::error_code ec;
    for (std::size_t i = renamed; i < staged.size(); ++i) fs::remove(staged[i], ec);
    for (std::size_t i = 0; i < renamed; ++i) fs::remove(outputs[i].first, ec);
    throw;
  }
  return files;
}

int main(int argc, const char* const* argv) {
  std::optional<Options> opts;
  try {
    std::string help;
    opts = parse_args(argc, argv, &help);
    if (!opts) {
      std::cout << help;
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  if (opts->list_presets) {
    for (const ExperimentPreset& p : presets()) {
      std::cout << p.name << ": " << p.problem << " n=" << p.n << " m=" << p.m << " eps=" << p.epsilon
                << " delta=" << p.delta << " runs=" << p.runs.size() << "\n";
    }
    return 0;
  }

  bool all_converged = true;
  try {
    for (const RunSpec& spec : opts->runs) {
      const Problem prob = builtin(spec.problem, spec.n, spec.m);
      ProgressCallback log;
      if (!opts->quiet) {
        log = [&](const IterationRecord& r, const RunState&) {
          std::cerr << (spec.label.empty() ? "" : spec.label + " ") << "k=" << r.k << " boxes=" << r.boxes
                    << " |Lp|=" << r.preferred_lower << " |Up|=" << r.preferred_upper << " omega=" << r.omega
                    << " d=" << r.d << "\n";
        };
      }
      const RunResult result = run(prob, spec.config, log);
      const OutputFiles files = emit_results(result, spec, prob, *opts);
      for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << (spec.label.empty() ? spec.problem : spec.label) << ": " << result.solutions.size()
                << " solutions, " << result.iterations << " iterations, "
                << (result.converged ? "converged" : "NOT converged") << " -> " << files.solutions.string() << "\n";
      all_converged = all_converged && result.converged;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return all_converged ? 0 : 2;
}

}  // namespace rbb::cli
