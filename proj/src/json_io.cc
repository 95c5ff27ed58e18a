#include "gpreal/json_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace gpreal::json_io {

namespace {

Complex ParseScalar(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument(what + ": entry must be a number or [re, im]");
}

void AppendNumber(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "\"nan\"";
    return;
  }
  if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
    return;
  }
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

void DumpTo(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string((depth + 1) * indent, ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(depth * indent, ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += sep;
        DumpTo(out, it.value(), indent, depth + 1);
      }
      out += close;
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_primitive() ||
               (e.is_array() && std::all_of(e.begin(), e.end(),
                                            [](const Json& x) { return x.is_primitive(); }) &&
                e.size() <= 2);
      });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        DumpTo(out, e, flat ? 0 : indent, depth + 1);
      }
      if (!flat) out += close;
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      AppendNumber(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

ComplexMatrix ParseMatrix(const Json& j, const std::string& what) {
  if (j.is_number()) {
    ComplexMatrix m(1, 1);
    m(0, 0) = ParseScalar(j, what);
    return m;
  }
  if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of rows");
  const int rows = static_cast<int>(j.size());
  if (rows == 0) return ComplexMatrix(0, 0);
  if (!j[0].is_array()) throw std::invalid_argument(what + ": expected an array of rows");
  const int cols = static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw std::invalid_argument(what + ": row " + std::to_string(i) + " has the wrong length");
    }
    for (int k = 0; k < cols; ++k) {
      m(i, k) = ParseScalar(j[i][k], what + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

SystemMatrix ParseSystem(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("input: expected a JSON object");
  if (j.contains("L")) {
    if (!j.contains("p") || !j["p"].is_number_integer()) {
      throw std::invalid_argument("input: \"L\" requires an integer \"p\"");
    }
    SystemMatrix sys{ParseMatrix(j["L"], "L"), j["p"].get<int>()};
    if (sys.L.rows() != sys.L.cols()) throw std::invalid_argument("L: matrix is not square");
    sys.Validate();
    return sys;
  }
  for (const char* key : {"A", "B", "C"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("input: missing \"") + key + "\"");
  }
  Realization re;
  re.A = ParseMatrix(j["A"], "A");
  re.B = ParseMatrix(j["B"], "B");
  re.C = ParseMatrix(j["C"], "C");
  const int p = static_cast<int>(re.B.cols());
  re.D = j.contains("D") ? ParseMatrix(j["D"], "D") : ComplexMatrix::Zero(p, p);
  re.Validate();
  return Assemble(re);
}

Json ComplexToJson(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json MatrixToJson(const ComplexMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(ComplexToJson(m(i, k)));
    out.push_back(row);
  }
  return out;
}

Json PolynomialToJson(const Polynomial& poly) {
  Json out = Json::array();
  for (const Complex& c : poly) out.push_back(ComplexToJson(c));
  return out;
}

Json RealsToJson(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

std::string Dump(const Json& j, int indent) {
  std::string out;
  DumpTo(out, j, indent, 0);
  return out;
}

Json Parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(source + ": malformed JSON at byte " + std::to_string(e.byte) +
                                ": " + e.what());
  }
}

}  // namespace gpreal::json_io
