#include "bhardy/docio.hpp"

#include <cmath>

#include "bhardy/spectral.hpp"

namespace bhardy {

json to_json(cd value) { return json::array({value.real(), value.imag()}); }

json to_json(const std::vector<cd>& values) {
  json out = json::array();
  for (const cd& v : values) out.push_back(to_json(v));
  return out;
}

cd complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("expected a complex value as [re, im]");
  }
  return cd(j[0].get<double>(), j[1].get<double>());
}

std::vector<cd> complex_list_from_json(const json& j) {
  if (!j.is_array()) {
    throw ValidationError("expected an array of [re, im] pairs");
  }
  std::vector<cd> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(complex_from_json(item));
  return out;
}

FunctionSpecDocument parse_function_doc(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ValidationError("function document must be an object with a \"kind\" string");
  }
  FunctionSpecDocument doc;
  const std::string kind = j["kind"].get<std::string>();
  if (j.contains("label")) doc.label = j["label"].get<std::string>();
  if (kind == "taylor") {
    doc.kind = FunctionSpecDocument::Kind::Taylor;
    if (!j.contains("coefficients")) {
      throw ValidationError("taylor document requires \"coefficients\"");
    }
    doc.coefficients = complex_list_from_json(j["coefficients"]);
  } else if (kind == "rational") {
    doc.kind = FunctionSpecDocument::Kind::Rational;
    if (!j.contains("numerator") || !j.contains("denominator")) {
      throw ValidationError("rational document requires \"numerator\" and \"denominator\"");
    }
    doc.numerator = complex_list_from_json(j["numerator"]);
    doc.denominator = complex_list_from_json(j["denominator"]);
  } else if (kind == "grid") {
    doc.kind = FunctionSpecDocument::Kind::Grid;
    if (!j.contains("samples")) {
      throw ValidationError("grid document requires \"samples\"");
    }
    doc.samples = complex_list_from_json(j["samples"]);
  } else {
    throw ValidationError("unknown function kind \"" + kind + "\"");
  }
  return doc;
}

json function_doc_to_json(const FunctionSpecDocument& doc) {
  json j;
  switch (doc.kind) {
    case FunctionSpecDocument::Kind::Taylor:
      j["kind"] = "taylor";
      j["coefficients"] = to_json(doc.coefficients);
      break;
    case FunctionSpecDocument::Kind::Rational:
      j["kind"] = "rational";
      j["numerator"] = to_json(doc.numerator);
      j["denominator"] = to_json(doc.denominator);
      break;
    case FunctionSpecDocument::Kind::Grid:
      j["kind"] = "grid";
      j["samples"] = to_json(doc.samples);
      break;
  }
  if (!doc.label.empty()) j["label"] = doc.label;
  return j;
}

BoundaryGrid realize(const FunctionSpecDocument& doc, std::size_t grid_size) {
  switch (doc.kind) {
    case FunctionSpecDocument::Kind::Taylor:
      return synthesize(CoefficientSeries(doc.coefficients, VariableTag::Z), grid_size);
    case FunctionSpecDocument::Kind::Rational: {
      if (doc.denominator.empty()) {
        throw ValidationError("rational document: empty denominator");
      }
      for (const cd& rho : poly_roots(doc.denominator)) {
        if (std::abs(rho) <= 1.0 + 1e-6) {
          throw ValidationError("rational document: denominator root with modulus " +
                                std::to_string(std::abs(rho)) + " inside 1 + 1e-6");
        }
      }
      const std::vector<cd> pts = unit_circle(grid_size);
      std::vector<cd> out(grid_size);
      for (std::size_t i = 0; i < grid_size; ++i) {
        out[i] = poly_eval(doc.numerator, pts[i]) / poly_eval(doc.denominator, pts[i]);
      }
      return BoundaryGrid(std::move(out), /*analytic=*/true);
    }
    case FunctionSpecDocument::Kind::Grid: {
      BoundaryGrid g(doc.samples);
      const LaurentSpectrum spectrum = analyze(g);
      const bool analytic = spectrum.max_abs_negative() <= kGridTol;
      if (g.size() == grid_size) {
        g.set_analytic(analytic);
        return g;
      }
      if (!analytic) {
        throw ValidationError("grid document: cannot resample non-analytic samples");
      }
      std::vector<cd> coeffs(static_cast<std::size_t>(spectrum.max_index()) + 1);
      for (int k = 0; k <= spectrum.max_index(); ++k) {
        coeffs[static_cast<std::size_t>(k)] = spectrum.at(k);
      }
      return synthesize(CoefficientSeries(std::move(coeffs), VariableTag::Z), grid_size);
    }
  }
  throw ValidationError("unreachable function kind");
}

json verdicts_to_json(const std::vector<Verdict>& verdicts) {
  json out = json::array();
  for (const Verdict& v : verdicts) {
    json j;
    j["name"] = v.name;
    j["pass"] = v.pass;
    j["tolerance"] = v.tolerance;
    j["value"] = v.value;
    out.push_back(std::move(j));
  }
  return out;
}

bool all_pass(const std::vector<Verdict>& verdicts) {
  for (const Verdict& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

bool validate_report(const json& report, std::string* error) {
  const auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };
  if (!report.is_object()) return fail("report is not an object");
  if (!report.contains("body") || !report["body"].is_object()) return fail("missing body object");
  if (!report.contains("timing") || !report["timing"].is_object()) {
    return fail("missing timing object");
  }
  const json& body = report["body"];
  if (!body.contains("command") || !body["command"].is_string()) {
    return fail("body.command must be a string");
  }
  if (!body.contains("input")) return fail("body.input missing");
  if (!body.contains("tolerances") || !body["tolerances"].is_object()) {
    return fail("body.tolerances must be an object");
  }
  if (!body.contains("results") || !body["results"].is_object()) {
    return fail("body.results must be an object");
  }
  if (!body.contains("verdicts") || !body["verdicts"].is_array()) {
    return fail("body.verdicts must be an array");
  }
  for (const auto& v : body["verdicts"]) {
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string() || !v.contains("pass") ||
        !v["pass"].is_boolean() || !v.contains("tolerance") || !v["tolerance"].is_number() ||
        !v.contains("value") || !v["value"].is_number()) {
      return fail("verdict entries need name/pass/tolerance/value");
    }
  }
  return true;
}

}  // namespace bhardy
