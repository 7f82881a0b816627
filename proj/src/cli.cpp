#include "maplab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "maplab/bundle.hpp"
#include "maplab/experiments.hpp"
#include "maplab/map_io.hpp"
#include "maplab/verify.hpp"

namespace maplab {
namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kind;
  std::string experiment;
  std::size_t n = 0;
  std::string n_grid;
  std::size_t reps = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<unsigned> threads;
  bool force = false;
  bool large_n = false;
  std::size_t sources = 2;
  std::string input;
  std::string to;
  int eps = -1;
};

constexpr std::size_t kLargeN = 100000;

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty()) {
    out << content;
    return;
  }
  if (fs::exists(o.out) && !o.force) {
    throw UsageError("refusing to overwrite " + o.out + " (use --force)");
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + o.out);
  file << content;
}

void write_side_file(const Options& o, const std::string& path, const std::string& content) {
  if (fs::exists(path) && !o.force) {
    throw UsageError("refusing to overwrite " + path + " (use --force)");
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << content;
}

std::string counterexample_path(const Options& o) {
  return o.out.empty() ? std::string("maplab-counterexample.json") : o.out + ".counterexample.json";
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw UsageError("--seed is required for stochastic commands");
  return *o.seed;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::vector<std::size_t> parse_grid(const Options& o) {
  std::vector<std::size_t> grid;
  if (!o.n_grid.empty()) {
    if (o.n != 0) throw UsageError("use either --n or --n-grid");
    std::stringstream ss(o.n_grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t pos = 0;
      unsigned long long value = 0;
      try {
        value = std::stoull(item, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != item.size() || value == 0) throw UsageError("bad --n-grid entry '" + item + "'");
      grid.push_back(value);
    }
  } else if (o.n != 0) {
    grid.push_back(o.n);
  } else {
    grid = {100, 1000, 10000, 100000};
  }
  for (std::size_t n : grid) {
    if (n > kLargeN && !o.large_n) {
      throw UsageError("n = " + std::to_string(n) + " needs --large-n");
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n must be at least 1");
  const std::uint64_t seed = require_seed(o);
  Rng rng(derive_seed(seed, o.n, 0));
  PointedSample sample = sample_pointed_quad(o.n, rng);
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format == "bundle" || format == "json") {
    emit(o, write_bundle(make_bundle(sample.tree, sample.eps)), out);
    return kExitOk;
  }
  if (format != "text") throw UsageError("sample supports --format text|bundle|json");
  if (o.kind == "tree") {
    emit(o, write_tree_text(sample.tree), out);
  } else if (o.kind == "quad") {
    emit(o, write_map_text(sample.quad.quad), out);
  } else {
    emit(o, write_map_text(ab_forward(sample.quad.quad).map), out);
  }
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.n == 0) throw UsageError("--n must be at least 1");
  std::string text;
  std::set<std::vector<std::uint32_t>> seen;
  TreeEnumerator trees(o.n);
  while (auto tree = trees.next()) {
    if (o.kind == "tree") {
      text += write_tree_text(*tree) + "\n";
      continue;
    }
    for (Epsilon eps : {Epsilon::kTowards, Epsilon::kAway}) {
      const CvsQuadrangulation built = cvs_inverse(*tree, eps);
      if (o.kind == "quad") {
        text += write_map_text(built.quad) + "\n";
      } else {
        const CanonicalMap canon = canonical_form(trivial_quad_to_map(built.quad.map()));
        if (seen.insert(canon.map.sigma_permutation()).second) {
          text += write_map_text(canon.map) + "\n";
        }
      }
    }
  }
  emit(o, text, out);
  return kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.n == 0) throw UsageError("--n must be at least 1");
  const unsigned threads = resolve_threads(o.threads);
  if (o.reps > 0) {
    const SampledReport report = check_samples(o.n, o.reps, require_seed(o), threads);
    emit(o, sampled_report_to_json(report), out);
    return report.passed() ? kExitOk : kExitAssertion;
  }
  CertifyOptions options;
  options.threads = threads;
  const CertifyReport report = certify(o.n, options);
  emit(o, report_to_json(report), out);
  if (report.passed()) return kExitOk;
  const std::string path = counterexample_path(o);
  write_side_file(o, path, write_bundle(*report.counterexample));
  err << "certify failed; counterexample bundle: " << path << "\n";
  return kExitAssertion;
}

int cmd_experiment(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentParams params;
  params.id = o.experiment;
  params.n_grid = parse_grid(o);
  params.reps = o.reps;
  params.seed = require_seed(o);
  params.threads = resolve_threads(o.threads);
  params.sources_per_rep = o.sources;
  if (params.reps == 0) throw UsageError("--reps must be at least 1");
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), params.id) == ids.end()) {
    throw UsageError("unknown experiment '" + params.id + "'");
  }
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json") throw UsageError("experiment supports --format csv|json");

  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  try {
    result = run_experiment(params);
  } catch (const ExperimentAssertion& failure) {
    const std::string path = counterexample_path(o);
    write_side_file(o, path, write_bundle(failure.bundle()));
    err << failure.what() << "\ncounterexample bundle: " << path << "\n";
    return kExitAssertion;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string summary = result.summary.dump(2) + "\n";
  if (format == "json") {
    emit(o, summary, out);
  } else {
    emit(o, result.csv, out);
    if (!o.out.empty()) write_side_file(o, o.out + ".summary.json", summary);
  }
  // Timing goes to stderr only so that output files stay byte-identical.
  err << params.id << ": " << (result.passed() ? "all verdicts pass" : "some verdicts fail")
      << " (" << seconds << " s)\n";
  for (const auto& v : result.verdicts) {
    err << "  " << (v.passed ? "PASS " : "FAIL ") << v.name << "\n";
  }
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  const std::string text = read_file(o.input);
  std::optional<WellLabeledTree> tree;
  std::optional<Epsilon> eps;
  if (o.eps == 0 || o.eps == 1) eps = static_cast<Epsilon>(o.eps);

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    InstanceBundle bundle = read_bundle(text);
    tree = bundle.tree;
    eps = bundle.eps;
  } else if (text.find('\n') != std::string::npos &&
             text.substr(0, text.find('\n')).find(' ') == std::string::npos) {
    tree = read_tree_text(text);
  } else {
    MapText parsed = read_map_text(text);
    if (!parsed.v_star) throw UsageError("map input needs a 'point' line");
    const CvsImage image = cvs_forward(PointedPlaneMap(std::move(parsed.map), *parsed.v_star));
    tree = image.tree;
    eps = image.eps;
  }
  if (!eps) {
    if (o.to != "tree") throw UsageError("tree input needs --eps 0|1");
    eps = Epsilon::kTowards;
  }
  if (o.to == "tree") {
    emit(o, write_tree_text(*tree), out);
  } else if (o.to == "bundle") {
    emit(o, write_bundle(make_bundle(*tree, *eps)), out);
  } else if (o.to == "quad") {
    emit(o, write_map_text(cvs_inverse(*tree, *eps).quad), out);
  } else if (o.to == "map") {
    emit(o, write_map_text(ab_forward(cvs_inverse(*tree, *eps).quad).map), out);
  } else {
    throw UsageError("--to must be tree|quad|map|bundle");
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"maplab: planar map bijections, certification and experiments", "maplab"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default: standard output)");
    sub->add_flag("--force", o.force, "Overwrite existing output files");
    sub->add_option("--threads", o.threads, "Worker threads (default: MAPLAB_THREADS or 1)");
  };

  auto* sample = app.add_subcommand("sample", "Sample a uniform instance");
  sample->add_option("kind", o.kind, "tree | quad | map")
      ->required()
      ->check(CLI::IsMember({"tree", "quad", "map"}));
  sample->add_option("--n", o.n, "Size")->required();
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--format", o.format, "text | bundle | json");
  add_common(sample);

  auto* enumerate = app.add_subcommand("enumerate", "List every instance of size n");
  enumerate->add_option("kind", o.kind, "tree | quad | map")
      ->required()
      ->check(CLI::IsMember({"tree", "quad", "map"}));
  enumerate->add_option("--n", o.n, "Size")->required();
  add_common(enumerate);

  auto* cert = app.add_subcommand("certify", "Exhaustive (or sampled, with --reps) checks");
  cert->add_option("--n", o.n, "Size")->required();
  cert->add_option("--reps", o.reps, "Sampled mode: number of uniform samples");
  cert->add_option("--seed", o.seed, "Random seed (sampled mode)");
  add_common(cert);

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->add_option("id", o.experiment, "moments | tv | two_point | isometry | delta | reroot | nj")
      ->required();
  experiment->add_option("--n", o.n, "Single size");
  experiment->add_option("--n-grid", o.n_grid, "Comma-separated sizes");
  experiment->add_option("--reps", o.reps, "Replications per size")->required();
  experiment->add_option("--seed", o.seed, "Random seed");
  experiment->add_option("--format", o.format, "csv | json");
  experiment->add_option("--sources", o.sources, "isometry: contour sources per replication")
      ->check(CLI::PositiveNumber);
  experiment->add_flag("--large-n", o.large_n, "Allow n above 100000");
  add_common(experiment);

  auto* convert = app.add_subcommand("convert", "Convert between tree, map and bundle forms");
  convert->add_option("--in", o.input, "Input file (tree text, map text or bundle)")->required();
  convert->add_option("--to", o.to, "tree | quad | map | bundle")->required();
  convert->add_option("--eps", o.eps, "Extra bit for tree input")->check(CLI::Range(0, 1));
  add_common(convert);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (cert->parsed()) return cmd_certify(o, out, err);
    if (experiment->parsed()) return cmd_experiment(o, out, err);
    return cmd_convert(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MapLabError& e) {
    err << e.what() << "\n";
    return e.code() == ErrorCode::kAssertionFailure ? kExitAssertion : kExitUsage;
  }
}

}  // namespace maplab
