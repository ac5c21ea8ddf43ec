#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polyinv/catalog.hpp"
#include "polyinv/contraction.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/fitting.hpp"
#include "polyinv/harmonics.hpp"
#include "polyinv/json_io.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/point_io.hpp"
#include "polyinv/polynomial.hpp"

#ifndef POLYINV_VERSION
#define POLYINV_VERSION "unknown"
#endif

namespace polyinv::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Input failures that are not parse errors in the library sense (missing
// files, wrong document kind). Mapped to the input exit code.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string read_text(const std::string& path, Io& io) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text, Io& io) {
  if (path == "-") {
    io.out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

std::string lower_extension(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

enum class Format { csv, xyz, json };

Format resolve_format(const std::string& requested, const std::string& path) {
  if (requested == "csv") return Format::csv;
  if (requested == "xyz") return Format::xyz;
  if (requested == "json") return Format::json;
  const auto ext = lower_extension(path);
  if (ext == "xyz") return Format::xyz;
  if (ext == "json") return Format::json;
  return Format::csv;
}

std::string format_name(Format f) {
  switch (f) {
    case Format::xyz: return "xyz";
    case Format::json: return "json";
    default: return "csv";
  }
}

struct LoadedPoints {
  PointCloud cloud;
  std::vector<std::string> elements;  // XYZ only
  std::string comment;
};

LoadedPoints load_points(const std::string& path, Format format, std::optional<int> dim,
                         ValueSource source, Io& io) {
  std::istringstream text(read_text(path, io));
  if (format == Format::xyz) {
    Molecule m = read_xyz(text, source);
    return {std::move(m.cloud), std::move(m.elements), std::move(m.comment)};
  }
  return {read_point_csv(text, dim), {}, {}};
}

json manifest(const std::string& command, const std::vector<std::string>& inputs, json config,
              Clock::time_point start) {
  const double wall = std::chrono::duration<double>(Clock::now() - start).count();
  return {{"tool", "polyinv"},     {"version", POLYINV_VERSION}, {"command", command},
          {"inputs", inputs},      {"config", std::move(config)}, {"wall_time_s", wall}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json(const std::string& path, Io& io) { return parse_json(read_text(path, io)); }

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string input;
  std::string output = "-";
  std::string format = "auto";
  std::optional<int> dim;
  int degree = 2;
  std::optional<double> ridge;
  std::string radial = "none";
  bool spherical = false;
  bool texture = false;
  std::string scale = "auto";
  std::string value_source = "mass";
};

RadialWeight parse_radial(const std::string& s) {
  if (s == "gauss") return RadialWeight::gaussian;
  if (s == "exp") return RadialWeight::exponential;
  return RadialWeight::none;
}

int cmd_fit(const FitArgs& a, Io& io) {
  const auto start = Clock::now();
  const Format format = resolve_format(a.format, a.input);
  if (format == Format::json) throw std::invalid_argument("fit expects CSV or XYZ input");
  const ValueSource source = a.value_source == "one" ? ValueSource::one : ValueSource::mass;
  const LoadedPoints loaded = load_points(a.input, format, a.dim, source, io);

  std::string scale = a.scale;
  if (scale == "auto") scale = format == Format::xyz ? "none" : "unit";
  const ScaleMode mode = scale == "unit" ? ScaleMode::unit_mean_distance : ScaleMode::none;
  const auto [cloud, record] = normalize(loaded.cloud, mode);

  FitResult result = [&] {
    if (a.spherical) {
      return fit_spherical(cloud, a.degree, a.texture ? SphericalTarget::values : SphericalTarget::radius,
                           a.ridge);
    }
    FitConfig config;
    config.max_degree = a.degree;
    config.ridge = a.ridge;
    config.radial = parse_radial(a.radial);
    return fit(cloud, config);
  }();

  if (result.diagnostics.samples < result.diagnostics.terms) {
    io.err << "polyinv: warning: " << result.diagnostics.samples << " samples for " << result.diagnostics.terms
           << " terms (underdetermined fit)\n";
  }

  json config = {{"format", format_name(format)}, {"degree", a.degree},   {"radial", a.radial},
                 {"spherical", a.spherical},      {"texture", a.texture}, {"scale", scale},
                 {"value_source", a.value_source}};
  config["ridge"] = a.ridge ? json(*a.ridge) : json(nullptr);
  config["dim"] = a.dim ? json(*a.dim) : json(nullptr);

  json doc = polynomial_to_json(result.polynomial);
  doc["diagnostics"] = diagnostics_to_json(result.diagnostics);
  doc["normalization"] = normalization_to_json(record);
  doc["manifest"] = manifest("fit", {a.input}, std::move(config), start);
  write_text(a.output, dump(doc), io);
  return kSuccess;
}

// ---------------------------------------------------------------- features

struct FeaturesArgs {
  std::string input;
  std::string output = "-";
  bool mixed = false;
  std::vector<int> mixed_powers;
  int insertions = 0;
  std::string graphs;
  bool normalize_order = false;
  std::optional<int> max_trace_power;
};

int cmd_features(const FeaturesArgs& a, Io& io) {
  const auto start = Clock::now();
  const json doc = load_json(a.input, io);
  const Polynomial p = polynomial_from_json(doc);

  CatalogConfig config;
  config.max_trace_power = a.max_trace_power;
  config.include_mixed = a.mixed || !a.mixed_powers.empty() || a.insertions > 0;
  config.mixed_powers = a.mixed_powers;
  config.max_insertions = a.insertions;
  config.normalize_by_order = a.normalize_order;
  if (!a.graphs.empty()) {
    std::istringstream specs(read_text(a.graphs, io));
    config.extra_graphs = read_graph_specs(specs);
  }

  FeatureVector f = feature_vector(p, config);
  if (doc.contains("normalization") && !doc["normalization"].is_null()) {
    f.meta.normalization = normalization_from_json(doc["normalization"]);
  }

  json echo = {{"mixed", config.include_mixed},
               {"mixed_powers", a.mixed_powers},
               {"insertions", a.insertions},
               {"normalize_order", a.normalize_order}};
  echo["graphs"] = a.graphs.empty() ? json(nullptr) : json(a.graphs);
  echo["max_trace_power"] = a.max_trace_power ? json(*a.max_trace_power) : json(nullptr);
  std::vector<std::string> inputs{a.input};
  if (!a.graphs.empty()) inputs.push_back(a.graphs);

  json out = features_to_json(f);
  out["manifest"] = manifest("features", inputs, std::move(echo), start);
  write_text(a.output, dump(out), io);
  return kSuccess;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::string first;
  std::string second;
  std::string output = "-";
  std::vector<double> weights;
};

int cmd_compare(const CompareArgs& a, Io& io) {
  const FeatureVector f = features_from_json(load_json(a.first, io));
  const FeatureVector g = features_from_json(load_json(a.second, io));
  const double d = distance(f, g, a.weights);

  std::vector<std::pair<double, std::string>> diffs;
  for (std::size_t i = 0; i < f.size(); ++i) {
    diffs.emplace_back(std::abs(f.entries[i].value - g.entries[i].value), f.entries[i].name);
  }
  // descending by difference, ties in catalog order
  std::stable_sort(diffs.begin(), diffs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  std::ostringstream text;
  text << std::setprecision(17) << "distance " << d << "\n";
  for (const auto& [diff, name] : diffs) text << name << " " << diff << "\n";
  write_text(a.output, text.str(), io);
  return kSuccess;
}

// ---------------------------------------------------------------- rotate

struct RotateArgs {
  std::string input;
  std::string output = "-";
  std::string format = "auto";
  std::optional<int> dim;
  std::optional<std::uint64_t> seed;
  std::string matrix;
};

OrthogonalMatrix rotation_for(const RotateArgs& a, int dimension, Io& io) {
  if (!a.matrix.empty()) {
    const Eigen::MatrixXd m = matrix_from_json(load_json(a.matrix, io));
    if (m.rows() != dimension) {
      throw DimensionError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.rows()) +
                           " but the input has dimension " + std::to_string(dimension));
    }
    try {
      return OrthogonalMatrix(m);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("matrix file '") + a.matrix + "': " + e.what());
    }
  }
  return random_orthogonal(dimension, *a.seed);
}


int cmd_rotate(const RotateArgs& a, Io& io) {
  const auto start = Clock::now();
  if (a.seed.has_value() == !a.matrix.empty()) {
    throw std::invalid_argument("rotate needs exactly one of --seed or --matrix");
  }
  const Format format = resolve_format(a.format, a.input);
  json config = {{"format", format_name(format)}};
  config["seed"] = a.seed ? json(*a.seed) : json(nullptr);
  config["matrix"] = a.matrix.empty() ? json(nullptr) : json(a.matrix);
  std::vector<std::string> inputs{a.input};
  if (!a.matrix.empty()) inputs.push_back(a.matrix);

  if (format == Format::json) {
    const json doc = load_json(a.input, io);
    const Polynomial p = polynomial_from_json(doc);
    const OrthogonalMatrix o = rotation_for(a, p.dimension(), io);
    // points move as x -> O x, so the covariant polynomial is p(O^T x)
    json out = polynomial_to_json(apply_rotation(p, o.transpose()));
    if (doc.contains("normalization") && !doc["normalization"].is_null()) {
      NormalizationRecord record = normalization_from_json(doc["normalization"]);
      if (record.centroid.size() == o.dimension()) record.centroid = o.matrix() * record.centroid;
      out["normalization"] = normalization_to_json(record);
    }
    json m = manifest("rotate", inputs, std::move(config), start);
    m["rotation"] = matrix_to_json(o.matrix());
    out["manifest"] = std::move(m);
    write_text(a.output, dump(out), io);
    return kSuccess;
  }

  // values are carried through untouched, so the source choice is irrelevant
  const LoadedPoints loaded = load_points(a.input, format, a.dim, ValueSource::one, io);
  const OrthogonalMatrix o = rotation_for(a, loaded.cloud.dimension(), io);
  const PointCloud rotated = rotate_points(loaded.cloud, o);
  json m = manifest("rotate", inputs, std::move(config), start);
  m["rotation"] = matrix_to_json(o.matrix());

  std::ostringstream text;
  if (format == Format::xyz) {
    // XYZ carries element symbols; masses are re-derived on read
    if (rotated.dimension() != 3) throw DimensionError("XYZ output needs 3-dimensional points");
    write_xyz(text, loaded.elements, rotated, "manifest " + m.dump());
  } else {
    write_point_csv(text, rotated, {"manifest " + m.dump()});
  }
  write_text(a.output, text.str(), io);
  return kSuccess;
}

// ---------------------------------------------------------------- graphs

struct GraphsArgs {
  std::string vertices;
  int max_vertices = kMaxCanonicalVertices;
  std::string evaluate;
  std::string output = "-";
};

std::vector<VertexLabel> parse_vertex_list(const std::string& text) {
  std::vector<VertexLabel> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty vertex in '" + text + "'");
    item = item.substr(first, last - first + 1);
    VertexLabel v;
    const auto colon = item.find(':');
    const std::string degree = item.substr(0, colon);
    if (colon != std::string::npos) v.polynomial = item.substr(colon + 1);
    std::size_t used = 0;
    try {
      v.degree = std::stoi(degree, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != degree.size() || v.polynomial.empty()) {
      throw std::invalid_argument("vertex '" + item + "' is not of the form <degree>[:<poly>]");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("no vertices given");
  return out;
}

int cmd_graphs(const GraphsArgs& a, Io& io) {
  const auto vertices = parse_vertex_list(a.vertices);
  int slots = 0;
  for (const auto& v : vertices) slots += v.degree;
  if (slots % 2 != 0) {
    throw std::invalid_argument("degrees sum to " + std::to_string(slots) +
                                ", which is odd: no fully contracted graph exists");
  }
  const auto graphs = enumerate_graphs(vertices, a.max_vertices);
  std::optional<Polynomial> p;
  if (!a.evaluate.empty()) p = polynomial_from_json(load_json(a.evaluate, io));

  std::ostringstream text;
  text << std::setprecision(17);
  for (const auto& g : graphs) {
    text << format_graph_spec(g);
    if (p) text << "\t" << evaluate_graph(g, *p);
    text << "\n";
  }
  text << "# count: " << graphs.size() << "\n";
  write_text(a.output, text.str(), io);
  return kSuccess;
}

// ---------------------------------------------------------------- harmonics

struct HarmonicsArgs {
  std::string input;
  std::string output = "-";
  std::string kind = "cylindrical";
  int max_l = 3;
  std::optional<int> dim;
};

int cmd_harmonics(const HarmonicsArgs& a, Io& io) {
  const auto start = Clock::now();
  std::istringstream text(read_text(a.input, io));
  const PointCloud raw = read_point_csv(text, a.dim);
  const auto [cloud, record] = normalize(raw, ScaleMode::none);
  const Eigen::MatrixXd& x = cloud.points();

  HarmonicExpansion h;
  if (a.kind == "cylindrical") {
    if (cloud.dimension() < 2) throw DimensionError("cylindrical harmonics need at least 2 coordinates");
    std::vector<CylindricalSample> samples;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      samples.push_back({std::atan2(x(i, 1), x(i, 0)), std::hypot(x(i, 0), x(i, 1))});
    }
    h = cylindrical_fit(samples, a.max_l);
  } else {
    if (cloud.dimension() != 3) throw DimensionError("spherical harmonics need 3 coordinates");
    std::vector<SphericalSample> samples;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const Eigen::Vector3d v = x.row(i).transpose();
      const double r = v.norm();
      if (r == 0.0) throw NumericalError("point " + std::to_string(i) + " sits at the centroid");
      samples.push_back({v / r, r});
    }
    h = spherical_fit(samples, a.max_l);
  }

  json out = harmonics_to_json(h);
  out["normalization"] = normalization_to_json(record);
  out["manifest"] = manifest("harmonics", {a.input}, {{"kind", a.kind}, {"max_l", a.max_l}}, start);
  write_text(a.output, dump(out), io);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Polynomial fits and rotation-invariant features for point data", "polyinv"};
  app.set_version_flag("--version", POLYINV_VERSION);
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a polynomial to a CSV or XYZ point set");
  fit_cmd->add_option("input", fit_args.input, "Input path, - for stdin")->required();
  fit_cmd->add_option("-o,--output", fit_args.output, "Output path")->capture_default_str();
  fit_cmd->add_option("--format", fit_args.format)->check(CLI::IsMember({"auto", "csv", "xyz"}))->capture_default_str();
  fit_cmd->add_option("--dim", fit_args.dim, "CSV coordinate count (default: all but value/weight of first row)")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--degree", fit_args.degree, "Maximum degree D")->check(CLI::NonNegativeNumber)->capture_default_str();
  fit_cmd->add_option("--ridge", fit_args.ridge, "Ridge strength c (default: relative 1e-8)")->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--radial", fit_args.radial)->check(CLI::IsMember({"none", "gauss", "exp"}))->capture_default_str();
  fit_cmd->add_flag("--spherical", fit_args.spherical, "Fit degrees D-1 and D on the unit sphere");
  fit_cmd->add_flag("--texture", fit_args.texture, "With --spherical: fit the values instead of |x|");
  fit_cmd->add_option("--scale", fit_args.scale, "auto: unit for CSV, none for XYZ")
      ->check(CLI::IsMember({"auto", "none", "unit"}))
      ->capture_default_str();
  fit_cmd->add_option("--value-source", fit_args.value_source, "XYZ values")
      ->check(CLI::IsMember({"one", "mass"}))
      ->capture_default_str();

  FeaturesArgs feat_args;
  auto* feat_cmd = app.add_subcommand("features", "Compute the invariant catalog of a polynomial");
  feat_cmd->add_option("input", feat_args.input, "Polynomial JSON, - for stdin")->required();
  feat_cmd->add_option("-o,--output", feat_args.output)->capture_default_str();
  feat_cmd->add_flag("--mixed", feat_args.mixed, "Include linear-quadratic mixed invariants");
  feat_cmd->add_option("--mixed-powers", feat_args.mixed_powers, "Powers m for the mixed family")->delimiter(',');
  feat_cmd->add_option("--insertions", feat_args.insertions, "Max edges carrying an inserted [p]^m")
      ->check(CLI::NonNegativeNumber);
  feat_cmd->add_option("--graphs", feat_args.graphs, "File of extra graph specs");
  feat_cmd->add_flag("--normalize-order", feat_args.normalize_order, "Take the k-th root of order-k invariants");
  feat_cmd->add_option("--max-trace-power", feat_args.max_trace_power)->check(CLI::NonNegativeNumber);

  CompareArgs cmp_args;
  auto* cmp_cmd = app.add_subcommand("compare", "Distance between two feature vectors");
  cmp_cmd->add_option("first", cmp_args.first)->required();
  cmp_cmd->add_option("second", cmp_args.second)->required();
  cmp_cmd->add_option("-o,--output", cmp_args.output)->capture_default_str();
  cmp_cmd->add_option("--weights", cmp_args.weights, "Comma-separated per-entry weights")->delimiter(',');

  RotateArgs rot_args;
  auto* rot_cmd = app.add_subcommand("rotate", "Apply an orthogonal matrix to points or a polynomial");
  rot_cmd->add_option("input", rot_args.input, "CSV, XYZ or polynomial JSON")->required();
  rot_cmd->add_option("-o,--output", rot_args.output)->capture_default_str();
  rot_cmd->add_option("--format", rot_args.format)->check(CLI::IsMember({"auto", "csv", "xyz", "json"}))->capture_default_str();
  rot_cmd->add_option("--dim", rot_args.dim)->check(CLI::PositiveNumber);
  auto* seed_opt = rot_cmd->add_option("--seed", rot_args.seed, "Seed for a random orthogonal matrix");
  auto* matrix_opt = rot_cmd->add_option("--matrix", rot_args.matrix, "JSON file holding the matrix");
  seed_opt->excludes(matrix_opt);

  GraphsArgs graph_args;
  auto* graph_cmd = app.add_subcommand("graphs", "Enumerate contraction graphs on a vertex multiset");
  graph_cmd->add_option("vertices", graph_args.vertices, "e.g. 3:p,3:p,2:p")->required();
  graph_cmd->add_option("--max-vertices", graph_args.max_vertices)->check(CLI::Range(1, kMaxCanonicalVertices))->capture_default_str();
  graph_cmd->add_option("--evaluate", graph_args.evaluate, "Polynomial JSON to evaluate each graph on");
  graph_cmd->add_option("-o,--output", graph_args.output)->capture_default_str();

  HarmonicsArgs harm_args;
  auto* harm_cmd = app.add_subcommand("harmonics", "Cylindrical or spherical harmonic fit about the centroid");
  harm_cmd->add_option("input", harm_args.input, "Point CSV")->required();
  harm_cmd->add_option("-o,--output", harm_args.output)->capture_default_str();
  harm_cmd->add_option("--kind", harm_args.kind)->check(CLI::IsMember({"cylindrical", "spherical"}))->capture_default_str();
  harm_cmd->add_option("--max-l", harm_args.max_l)->check(CLI::NonNegativeNumber)->capture_default_str();
  harm_cmd->add_option("--dim", harm_args.dim)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << POLYINV_VERSION << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "polyinv: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_args, io);
    if (*feat_cmd) return cmd_features(feat_args, io);
    if (*cmp_cmd) return cmd_compare(cmp_args, io);
    if (*rot_cmd) return cmd_rotate(rot_args, io);
    if (*graph_cmd) return cmd_graphs(graph_args, io);
    if (*harm_cmd) return cmd_harmonics(harm_args, io);
  } catch (const ParseError& e) {
    err << "polyinv: parse error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionError& e) {
    err << "polyinv: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    err << "polyinv: " << e.what() << "\n";
    return kInput;
  } catch (const NumericalError& e) {
    err << "polyinv: numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    err << "polyinv: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "polyinv: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace polyinv::cli
