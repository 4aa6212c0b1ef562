#include "pofrac/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pofrac {

namespace {

using nlohmann::json;

struct FieldRef {
  const char* name;
  double ModelParams::* member;
};

constexpr FieldRef kFields[] = {
    {"c0", &ModelParams::c0},       {"c1", &ModelParams::c1},
    {"c2", &ModelParams::c2},       {"c3", &ModelParams::c3},
    {"c4", &ModelParams::c4},       {"h", &ModelParams::h},
    {"H", &ModelParams::H},         {"delta", &ModelParams::delta},
    {"v", &ModelParams::v},         {"B", &ModelParams::B},
    {"beta_pred", &ModelParams::beta_pred},
    {"xi", &ModelParams::xi},       {"m", &ModelParams::m},
    {"gamma", &ModelParams::gamma}, {"sigma", &ModelParams::sigma},
    {"mu", &ModelParams::mu},
};

}  // namespace

ModelParams parse_params_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("parameter file: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("parameter file: top level must be an object");

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "metadata") continue;
    bool known = false;
    for (const auto& f : kFields) {
      if (it.key() == f.name) {
        known = true;
        break;
      }
    }
    if (!known)
      throw std::invalid_argument("parameter file: unknown key '" + it.key() +
                                  "'");
  }

  ModelParams p;
  for (const auto& f : kFields) {
    auto it = doc.find(f.name);
    if (it == doc.end())
      throw std::invalid_argument(
          std::string("parameter file: missing required field '") + f.name +
          "'");
    if (!it->is_number())
      throw std::invalid_argument(std::string("parameter file: field '") +
                                  f.name + "' must be a number");
    p.*(f.member) = it->get<double>();
  }
  p.validate();
  return p;
}

ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("parameter file: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_params_json(text);
}

std::string params_to_json(const ModelParams& p) {
  json doc;
  for (const auto& f : kFields) doc[f.name] = p.*(f.member);
  return doc.dump();
}

}  // namespace pofrac
