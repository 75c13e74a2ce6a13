#include <json.hpp>

#include "exspec/fusion.hpp"

namespace exspec {

namespace {

using json = nlohmann::ordered_json;

Mat2 mat_from_json(const json& j, int32_t p) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw std::invalid_argument("matrix entry must be a 2x2 integer array");
  return Mat2(j[0][0].get<int64_t>(), j[0][1].get<int64_t>(), j[1][0].get<int64_t>(),
              j[1][1].get<int64_t>(), p);
}

json mat_to_json(const Mat2& g) {
  return json::array({json::array({g.e[0], g.e[1]}), json::array({g.e[2], g.e[3]})});
}

ALabel line_from_json(const json& j, int32_t p) {
  if (!j.is_string()) throw std::invalid_argument("line labels are decimal strings or \"inf\"");
  std::string s = j.get<std::string>();
  if (s == "inf") return ALabel{ALabel::kInf};
  size_t pos = 0;
  int32_t v = std::stoi(s, &pos);
  if (pos != s.size() || v < 0 || v >= p) throw std::invalid_argument("bad line label: " + s);
  return ALabel{v};
}

}  // namespace

FusionDescriptor descriptor_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed descriptor JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j.contains("we") || !j.contains("radicals"))
    throw std::invalid_argument("descriptor JSON needs fields p, we, radicals");
  const int32_t p = j.at("p").get<int32_t>();
  require_odd_prime(p);
  std::vector<Mat2> we;
  for (const auto& m : j.at("we")) we.push_back(mat_from_json(m, p));
  std::vector<RadicalClass> radicals;
  for (const auto& r : j.at("radicals")) {
    RadicalClass rc;
    for (const auto& l : r.at("lines")) rc.lines.push_back(line_from_json(l, p));
    const auto& wa = r.at("wa");
    if (wa.is_string()) {
      std::string s = wa.get<std::string>();
      if (s == "SL2:2") rc.wa = WALabel::sl2_2();
      else if (s == "GL2") rc.wa = WALabel::gl2();
      else throw std::invalid_argument("unknown automizer label: " + s);
    } else if (wa.is_array()) {
      std::vector<Mat2> gens;
      for (const auto& m : wa) gens.push_back(mat_from_json(m, p));
      rc.wa = WALabel::custom(std::move(gens));
    } else {
      throw std::invalid_argument("wa must be \"SL2:2\", \"GL2\" or a matrix list");
    }
    radicals.push_back(std::move(rc));
  }
  return FusionDescriptor(Prime(p), std::move(we), std::move(radicals));
}

std::string descriptor_to_json(const FusionDescriptor& F) {
  json j;
  j["p"] = F.prime().p;
  json we = json::array();
  for (const auto& g : F.we().gens) we.push_back(mat_to_json(g));
  j["we"] = std::move(we);
  json rads = json::array();
  for (const auto& rc : F.radicals()) {
    json r;
    json lines = json::array();
    for (const auto& a : rc.lines) lines.push_back(a.str());
    r["lines"] = std::move(lines);
    if (rc.wa.kind == WALabel::Kind::Custom) {
      json gens = json::array();
      for (const auto& g : rc.wa.custom_gens) gens.push_back(mat_to_json(g));
      r["wa"] = std::move(gens);
    } else {
      r["wa"] = rc.wa.str();
    }
    rads.push_back(std::move(r));
  }
  j["radicals"] = std::move(rads);
  return j.dump();
}

std::string split_to_json(const std::map<SummandLabel, int32_t>& s) {
  json x = json::object(), l1 = json::object(), l2 = json::object();
  for (const auto& [lab, c] : s) {
    switch (lab.kind) {
      case SummandLabel::Kind::X:
        x[std::to_string(lab.i) + "," + std::to_string(lab.q)] = c;
        break;
      case SummandLabel::Kind::L1: l1[std::to_string(lab.q)] = c; break;
      case SummandLabel::Kind::L2: l2[std::to_string(lab.q)] = c; break;
    }
  }
  json j;
  j["X"] = std::move(x);
  j["L1"] = std::move(l1);
  j["L2"] = std::move(l2);
  return j.dump();
}

}  // namespace exspec
