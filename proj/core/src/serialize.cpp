#include <json.hpp>

#include "gply/error.hpp"
#include "gply/poly.hpp"

namespace gply {

std::string poly_to_json(const DensePoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back({c.re_string(), c.im_string()});
  return arr.dump();
}

DensePoly poly_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("polynomial JSON: ") + e.what());
  }
  if (arr.is_object() && arr.contains("numerator")) arr = arr["numerator"];
  if (!arr.is_array()) throw Error(ErrorCode::parse_error, "polynomial JSON must be an array");
  std::vector<GaussRat> c;
  c.reserve(arr.size());
  for (const auto& e : arr) {
    if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string())
      c.emplace_back(parse_rational(e[0].get<std::string>()), parse_rational(e[1].get<std::string>()));
    else if (e.is_string())
      c.push_back(GaussRat::parse(e.get<std::string>()));
    else if (e.is_number_integer())
      c.emplace_back(e.get<long>());
    else
      throw Error(ErrorCode::parse_error, "bad polynomial coefficient " + e.dump());
  }
  return DensePoly(std::move(c));
}

}  // namespace gply
