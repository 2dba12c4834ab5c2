#include "t2hilb/io.hpp"

#include <sstream>

#include <json.hpp>

namespace t2hilb {

using nlohmann::json;

std::string hilbert_series_to_json(const HilbertSeries& H) {
  json j;
  j["numerator"] = json::array();
  for (int i = 0; i <= H.numerator().degree(); ++i)
    j["numerator"].push_back(H.numerator().coeff(i).get_num().get_str());
  j["denominator"] = json::array();
  for (const auto& [e, m] : H.denominator()) j["denominator"].push_back({e, m});
  return j.dump();
}

HilbertSeries hilbert_series_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(errc::parse_error, std::string("bad series JSON: ") + e.what());
  }
  if (!j.contains("numerator") || !j.contains("denominator"))
    fail(errc::parse_error, "series JSON needs 'numerator' and 'denominator'");
  std::vector<Rat> coeffs;
  for (const auto& c : j["numerator"]) {
    if (c.is_string()) coeffs.push_back(parse_rat(c.get<std::string>()));
    else coeffs.push_back(Rat(c.get<long>()));
  }
  std::map<std::int64_t, std::int64_t> den;
  for (const auto& f : j["denominator"]) {
    if (!f.is_array() || f.size() != 2) fail(errc::parse_error, "bad denominator entry");
    den[f[0].get<std::int64_t>()] += f[1].get<std::int64_t>();
  }
  return HilbertSeries(Poly(std::move(coeffs)), std::move(den));
}

namespace {

std::string latex_term(const Rat& c, int e, bool lead) {
  std::string out;
  Rat a = abs(c);
  if (c < 0) out += lead ? "-" : " - ";
  else if (!lead) out += " + ";
  if (a != 1 || e == 0) out += a.get_num().get_str();
  if (e == 1) out += "t";
  else if (e > 1) out += "t^{" + std::to_string(e) + "}";
  return out;
}

}  // namespace

std::string hilbert_series_to_latex(const HilbertSeries& H) {
  std::ostringstream out;
  out << "\\frac{1}{";
  for (const auto& [e, m] : H.denominator()) {
    std::string f = "(1-t^{" + std::to_string(e) + "})";
    for (std::int64_t rep = 0; rep < m; ++rep) out << f;
  }
  out << "}\\big(";
  bool lead = true;
  for (int i = 0; i <= H.numerator().degree(); ++i) {
    if (H.numerator().coeff(i) == 0) continue;
    out << latex_term(H.numerator().coeff(i), i, lead);
    lead = false;
  }
  if (lead) out << "0";
  out << "\\big)";
  return out.str();
}

std::string laurent_to_latex(const LaurentExpansion& L) {
  std::ostringstream out;
  bool lead = true;
  for (size_t m = 0; m < L.coefficients.size(); ++m) {
    const Rat& g = L.coefficients[m];
    if (g == 0) continue;
    std::int64_t e = static_cast<std::int64_t>(m) - L.pole_order;
    if (!lead) out << " + ";
    lead = false;
    std::string coeff = "\\tfrac{" + g.get_num().get_str() + "}{" + g.get_den().get_str() + "}";
    if (g.get_den() == 1) coeff = g.get_num().get_str();
    if (e == 0) out << coeff;
    else if (e < 0) out << "\\frac{" + coeff + "}{(1-t)^{" << -e << "}}";
    else out << coeff << "(1-t)^{" << e << "}";
  }
  if (lead) out << "0";
  return out.str();
}

}  // namespace t2hilb
