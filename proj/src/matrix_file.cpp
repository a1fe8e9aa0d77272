#include "blockabs/matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace blockabs {

namespace {

using nlohmann::json;

Index dimension_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return static_cast<Index>(it->get<long long>());
}

double component(const json& value, std::size_t index) {
  if (!value.is_number()) {
    throw ParseError("entry " + std::to_string(index) + " has a non-numeric component");
  }
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw ParseError("entry " + std::to_string(index) + " is not finite");
  return x;
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  const Index rows = dimension_field(doc, "rows");
  const Index cols = dimension_field(doc, "cols");
  const auto entries = doc.find("entries");
  if (entries == doc.end() || !entries->is_array()) {
    throw ParseError("missing array field \"entries\"");
  }
  if (entries->size() != static_cast<std::size_t>(rows * cols)) {
    std::ostringstream os;
    os << "expected " << rows * cols << " entries, found " << entries->size();
    throw ParseError(os.str());
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j, ++k) {
      const json& pair = (*entries)[k];
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("entry " + std::to_string(k) + " is not an [re, im] pair");
      }
      m(i, j) = {component(pair[0], k), component(pair[1], k)};
    }
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_matrix(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_matrix(const ComplexMatrix& m) {
  require_finite(m, "output matrix");
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "{\"rows\": " << m.rows() << ", \"cols\": " << m.cols() << ", \"entries\": [";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (i + j > 0) os << ", ";
      os << '[' << m(i, j).real() << ", " << m(i, j).imag() << ']';
    }
  }
  os << "]}";
  return os.str();
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  const std::string text = format_matrix(m);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text << '\n';
  if (!out) throw ParseError("failed writing " + path);
}

}  // namespace blockabs
