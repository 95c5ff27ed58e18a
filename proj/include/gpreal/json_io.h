#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gpreal/realization.h"

namespace gpreal::json_io {

using Json = nlohmann::json;

/// Matrix from nested arrays; each entry is a bare number or [re, im].
/// Throws std::invalid_argument naming `what` on malformed input.
ComplexMatrix ParseMatrix(const Json& j, const std::string& what);

/// {"A", "B", "C", "D"} (D optional, zero by default) or {"L", "p"}.
SystemMatrix ParseSystem(const Json& j);

Json ComplexToJson(Complex z);

/// Entries with zero imaginary part come out as bare numbers, the rest as
/// [re, im].
Json MatrixToJson(const ComplexMatrix& m);
Json PolynomialToJson(const Polynomial& poly);
Json RealsToJson(const std::vector<double>& values);

/// Serializes with 17 significant digits per float and a fixed key order;
/// non-finite numbers become the strings "inf", "-inf" and "nan".
std::string Dump(const Json& j, int indent = 2);

/// Parses text, reporting the byte offset of a syntax error in the message
/// of the thrown std::invalid_argument.
Json Parse(const std::string& text, const std::string& source);

}  // namespace gpreal::json_io
