#pragma once

#include "balanced/instance.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace balanced {

using json = nlohmann::ordered_json;

/// Raw points from the instance JSON document
/// `{"points":[{"x":"p/q","y":"p/q","color":"R"|"B"}]}`. Coordinates may be
/// integers, decimal strings or "p/q" strings.
inline std::vector<LabeledPoint> points_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw Error(ErrorCode::InvalidArgument, "instance JSON needs a \"points\" array");
  auto coord = [](const json& v) -> Rational {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw Error(ErrorCode::InvalidArgument, "coordinates must be integers or rational strings");
  };
  std::vector<LabeledPoint> out;
  for (const auto& p : doc["points"]) {
    std::string c = p.at("color").get<std::string>();
    if (c != "R" && c != "B") throw Error(ErrorCode::InvalidArgument, "color must be \"R\" or \"B\"");
    out.push_back({coord(p.at("x")), coord(p.at("y")), c == "R" ? Color::Red : Color::Blue, out.size()});
  }
  return out;
}

inline json to_json(const Instance& inst) {
  json pts = json::array();
  for (const auto& p : inst.points())
    pts.push_back({{"x", format_rational(p.x)}, {"y", format_rational(p.y)}, {"color", std::string(1, color_letter(p.color))}});
  return {{"points", pts}};
}

inline std::string instance_text(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

inline Instance read_instance(const std::string& path) { return validate(points_from_json(read_json_file(path))); }

}  // namespace balanced
