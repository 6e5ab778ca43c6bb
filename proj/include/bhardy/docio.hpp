#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bhardy/circle.hpp"

namespace bhardy {

using json = nlohmann::ordered_json;

// Complex values serialize as [re, im]; matrices as row-major arrays of pairs.
json to_json(cd value);
json to_json(const std::vector<cd>& values);
cd complex_from_json(const json& j);
std::vector<cd> complex_list_from_json(const json& j);

// A function described by a structured document.
struct FunctionSpecDocument {
  enum class Kind { Taylor, Rational, Grid };
  Kind kind = Kind::Taylor;
  std::vector<cd> coefficients;            // taylor
  std::vector<cd> numerator, denominator;  // rational; poles strictly outside
  std::vector<cd> samples;                 // grid, power-of-two length
  std::string label;
};

FunctionSpecDocument parse_function_doc(const json& j);
json function_doc_to_json(const FunctionSpecDocument& doc);

// Boundary samples of the documented function at the requested grid size.
BoundaryGrid realize(const FunctionSpecDocument& doc, std::size_t grid_size);

struct Verdict {
  std::string name;
  bool pass = false;
  double tolerance = 0.0;
  double value = 0.0;
};

json verdicts_to_json(const std::vector<Verdict>& verdicts);
bool all_pass(const std::vector<Verdict>& verdicts);

// Structural schema check for report documents ({"body": {...}, "timing": {...}}).
bool validate_report(const json& report, std::string* error = nullptr);

}  // namespace bhardy
