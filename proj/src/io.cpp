#include "ritzcoords/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ritzcoords::io {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite number");
  return v;
}

double parse_real(std::string_view text) {
  if (text.empty()) throw ParseError("empty number");
  const std::string buffer(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buffer.c_str(), &end);
  if (end != buffer.c_str() + buffer.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError("malformed number '" + buffer + "'");
  return v;
}

std::size_t expect_size(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  const Json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

int nesting(const Json& j) {
  if (!j.is_array() && !j.is_object()) return 0;
  int depth = 0;
  for (const auto& v : j) depth = std::max(depth, nesting(v));
  return depth + 1;
}

void write_json(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      out += "null";
      return;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    out += buffer;
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      write_json(it.value(), indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array()) {
    const bool inline_array =
        nesting(j) <= 2 && std::none_of(j.begin(), j.end(), [](const Json& v) { return v.is_object(); });
    out += "[";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += inline_array ? ", " : ",";
      first = false;
      if (!inline_array) out += "\n" + pad;
      write_json(v, indent + 2, out);
    }
    if (!inline_array && !j.empty()) out += "\n" + std::string(static_cast<std::size_t>(indent), ' ');
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string format_document(const Json& doc) {
  std::string out;
  write_json(doc, 0, out);
  out += "\n";
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j, "value"), 0.0};
  if (j.is_array() && j.size() == 2)
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
  throw ParseError("value must be a number or a [re, im] pair");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexList complex_list_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of values");
  ComplexList out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

Json complex_list_to_json(const ComplexList& values) {
  Json out = Json::array();
  for (Complex z : values) out.push_back(complex_to_json(z));
  return out;
}

Json complex_vector_to_json(const ComplexVector& values) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(complex_to_json(values(i)));
  return out;
}

ComplexMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  const std::size_t n = expect_size(doc, "n");
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw ParseError("missing array \"entries\"");
  const Json& rows = doc.at("entries");
  if (rows.size() != n) throw ParseError("\"entries\" must have n rows");
  ComplexMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexList row = complex_list_from_json(rows[i]);
    if (row.size() != n) throw ParseError("row " + std::to_string(i + 1) + " must have n entries");
    for (std::size_t j = 0; j < n; ++j)
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return x;
}

Json matrix_to_json(const ComplexMatrix& x) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < x.cols(); ++j) row.push_back(complex_to_json(x(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", x.rows()}, {"entries", std::move(rows)}};
}

RitzData ritz_from_json(const Json& levels) {
  if (!levels.is_array() || levels.empty()) throw ParseError("\"ritz\" must be a non-empty array");
  std::vector<ComplexList> out;
  for (const auto& level : levels) out.push_back(complex_list_from_json(level));
  try {
    return RitzData(std::move(out));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

Json ritz_to_json(const RitzData& r) {
  Json levels = Json::array();
  for (const auto& level : r.levels()) levels.push_back(complex_list_to_json(level));
  return levels;
}

FiberCoords coords_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("coordinates document must be a JSON object");
  if (!doc.contains("ritz")) throw ParseError("missing key \"ritz\"");
  if (!doc.contains("b") || !doc.at("b").is_array()) throw ParseError("missing array \"b\"");
  FiberCoords fc;
  fc.ritz = ritz_from_json(doc.at("ritz"));
  if (doc.contains("n") && expect_size(doc, "n") != static_cast<std::size_t>(fc.ritz.n()))
    throw ParseError("\"n\" disagrees with the number of Ritz levels");
  const Json& b = doc.at("b");
  if (b.size() != static_cast<std::size_t>(fc.ritz.n() - 1))
    throw ParseError("\"b\" must have n-1 vectors");
  for (std::size_t m = 0; m < b.size(); ++m) {
    const ComplexList bm = complex_list_from_json(b[m]);
    if (bm.size() != m + 1) throw ParseError("b_" + std::to_string(m + 1) + " must have " +
                                             std::to_string(m + 1) + " entries");
    fc.b.push_back(Eigen::Map<const ComplexVector>(bm.data(), static_cast<Eigen::Index>(bm.size())));
  }
  return fc;
}

Json coords_to_json(const FiberCoords& fc) {
  Json b = Json::array();
  for (const auto& bm : fc.b) b.push_back(complex_vector_to_json(bm));
  return Json{{"n", fc.n()}, {"ritz", ritz_to_json(fc.ritz)}, {"b", std::move(b)}};
}

Complex parse_complex_literal(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) throw ParseError("empty complex literal");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s), 0.0};
  s.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split)), imag_part(s.substr(split))};
}

ComplexList parse_complex_list(std::string_view text) {
  ComplexList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_complex_literal(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace ritzcoords::io
