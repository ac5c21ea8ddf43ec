#include "polyinv/point_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(field) + "'", line_no);
  }
  return value;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, int dimension) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), dimension);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < dimension; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace

PointCloud read_point_csv(std::istream& in, std::optional<int> dimension) {
  if (dimension && *dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  std::vector<std::vector<double>> coords;
  std::vector<double> values;
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    std::vector<double> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      fields.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? comma : comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!dimension) dimension = static_cast<int>(fields.size());
    const auto n = static_cast<std::size_t>(*dimension);
    if (fields.size() < n || fields.size() > n + 2) {
      throw ParseError("expected " + std::to_string(n) + " to " + std::to_string(n + 2) +
                           " columns, found " + std::to_string(fields.size()),
                       line_no);
    }
    const double weight = fields.size() > n + 1 ? fields[n + 1] : 1.0;
    if (!(weight > 0.0)) throw ParseError("weight must be positive", line_no);
    values.push_back(fields.size() > n ? fields[n] : 1.0);
    weights.push_back(weight);
    fields.resize(n);
    coords.push_back(std::move(fields));
  }
  if (coords.empty()) throw ParseError("no data rows in point CSV");
  return PointCloud(to_matrix(coords, *dimension),
                    Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())),
                    Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size())));
}

void write_point_csv(std::ostream& out, const PointCloud& cloud, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (int j = 0; j < cloud.dimension(); ++j) out << cloud.points()(row, j) << ',';
    out << cloud.values()(row) << ',' << cloud.weights()(row) << '\n';
  }
}

std::optional<double> atomic_mass(std::string_view element) {
  static constexpr std::array<std::pair<std::string_view, double>, 10> kMasses{{
      {"H", 1.008},
      {"C", 12.011},
      {"N", 14.007},
      {"O", 15.999},
      {"S", 32.06},
      {"P", 30.974},
      {"F", 18.998},
      {"Cl", 35.45},
      {"Br", 79.904},
      {"I", 126.904},
  }};
  for (const auto& [symbol, mass] : kMasses) {
    if (symbol == element) return mass;
  }
  return std::nullopt;
}

Molecule read_xyz(std::istream& in, ValueSource source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing atom count", 1);
  std::size_t count = 0;
  {
    const auto text = trim(line);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), count);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || count == 0) {
      throw ParseError("invalid atom count '" + std::string(text) + "'", 1);
    }
  }
  Molecule mol{{}, {}, PointCloud(Eigen::MatrixXd::Zero(1, 3))};
  if (!std::getline(in, line)) throw ParseError("missing comment line", 2);
  mol.comment = std::string(trim(line));

  std::vector<std::vector<double>> coords;
  std::vector<double> values;
  std::size_t line_no = 2;
  while (coords.size() < count && std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string element;
    std::array<std::string, 3> xyz;
    if (!(fields >> element >> xyz[0] >> xyz[1] >> xyz[2])) {
      throw ParseError("expected 'El x y z'", line_no);
    }
    std::vector<double> p;
    for (const auto& f : xyz) p.push_back(parse_double(f, line_no));
    double value = 1.0;
    if (source == ValueSource::mass) {
      const auto mass = atomic_mass(element);
      if (!mass) throw ParseError("no atomic mass for element '" + element + "'", line_no);
      value = *mass;
    }
    mol.elements.push_back(std::move(element));
    coords.push_back(std::move(p));
    values.push_back(value);
  }
  if (coords.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " atoms, found " + std::to_string(coords.size()),
                     line_no);
  }
  mol.cloud = PointCloud(to_matrix(coords, 3),
                         Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
  return mol;
}

void write_xyz(std::ostream& out, const std::vector<std::string>& elements, const PointCloud& cloud,
               std::string_view comment) {
  if (elements.size() != cloud.size() || cloud.dimension() != 3) {
    throw DimensionError("XYZ output needs one element per 3D point");
  }
  out << cloud.size() << '\n' << comment << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out << elements[i] << ' ' << cloud.points()(row, 0) << ' ' << cloud.points()(row, 1) << ' '
        << cloud.points()(row, 2) << '\n';
  }
}

}  // namespace polyinv
