#include "trimer/params_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trimer/errors.hpp"

namespace trimer {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw ValidationError("parameter file: " + msg);
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing key \"" + std::string(key) + "\" in " + where);
  return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_number()) fail("key \"" + std::string(key) + "\" in " + where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("key \"" + std::string(key) + "\" in " + where + " must be finite");
  return d;
}

// (1,2) -> 0, (2,3) -> 1, (3,1) -> 2; order matters because the DM term is
// antisymmetric under pair reversal.
int pair_slot(const json& entry, const std::string& where) {
  const json& pr = require_key(entry, "pair", where);
  if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() || !pr[1].is_number_integer())
    fail("key \"pair\" in " + where + " must be an array of two sites");
  const int a = pr[0].get<int>();
  const int b = pr[1].get<int>();
  if (a == 1 && b == 2) return 0;
  if (a == 2 && b == 3) return 1;
  if (a == 3 && b == 1) return 2;
  std::ostringstream os;
  os << "pair [" << a << "," << b << "] in " << where
     << " not recognized; expected [1,2], [2,3] or [3,1]";
  fail(os.str());
}

CompoundParams parse(const json& root) {
  if (!root.is_object()) fail("top level must be a JSON object");
  CompoundParams p;

  const json& name = require_key(root, "name", "top level");
  if (!name.is_string()) fail("key \"name\" must be a string");
  p.name = name.get<std::string>();

  const json& bonds = require_key(root, "bonds", "top level");
  if (!bonds.is_array() || bonds.size() != 3) fail("key \"bonds\" must be an array of 3 objects");
  bool bond_seen[3] = {false, false, false};
  for (size_t i = 0; i < 3; ++i) {
    const std::string where = "bonds[" + std::to_string(i) + "]";
    const int slot = pair_slot(bonds[i], where);
    if (bond_seen[slot]) fail("duplicate pair in " + where);
    bond_seen[slot] = true;
    p.bonds[static_cast<size_t>(slot)] = {require_number(bonds[i], "jx", where),
                                          require_number(bonds[i], "jy", where),
                                          require_number(bonds[i], "jz", where)};
  }

  const json& dm = require_key(root, "dm", "top level");
  if (!dm.is_array() || dm.size() != 3) fail("key \"dm\" must be an array of 3 objects");
  bool dm_seen[3] = {false, false, false};
  for (size_t i = 0; i < 3; ++i) {
    const std::string where = "dm[" + std::to_string(i) + "]";
    const int slot = pair_slot(dm[i], where);
    if (dm_seen[slot]) fail("duplicate pair in " + where);
    dm_seen[slot] = true;
    p.dm[static_cast<size_t>(slot)] = {require_number(dm[i], "dx", where),
                                       require_number(dm[i], "dy", where),
                                       require_number(dm[i], "dz", where)};
  }

  const json& g = require_key(root, "g", "top level");
  if (!g.is_array() || g.size() != 3) fail("key \"g\" must be an array of 3 objects");
  bool site_seen[3] = {false, false, false};
  for (size_t i = 0; i < 3; ++i) {
    const std::string where = "g[" + std::to_string(i) + "]";
    const json& site = require_key(g[i], "site", where);
    if (!site.is_number_integer()) fail("key \"site\" in " + where + " must be an integer");
    const int s = site.get<int>();
    if (s < 1 || s > 3) fail("site in " + where + " must be 1..3");
    if (site_seen[s - 1]) fail("duplicate site in " + where);
    site_seen[s - 1] = true;
    p.g[static_cast<size_t>(s - 1)] = {require_number(g[i], "gx", where),
                                       require_number(g[i], "gy", where),
                                       require_number(g[i], "gz", where)};
  }

  if (root.contains("mu_b_hat")) {
    const double v = require_number(root, "mu_b_hat", "top level");
    p.mu_b_hat = v;
  }
  return p;
}

} // namespace

CompoundParams params_from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse(root);
}

CompoundParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return params_from_json_text(os.str());
}

std::string params_to_json_text(const CompoundParams& params, int indent) {
  static constexpr int pair_of[3][2] = {{1, 2}, {2, 3}, {3, 1}};
  json root;
  root["name"] = params.name;
  root["bonds"] = json::array();
  root["dm"] = json::array();
  root["g"] = json::array();
  for (int i = 0; i < 3; ++i) {
    const auto& b = params.bonds[static_cast<size_t>(i)];
    root["bonds"].push_back({{"pair", {pair_of[i][0], pair_of[i][1]}},
                             {"jx", b.jx},
                             {"jy", b.jy},
                             {"jz", b.jz}});
    const auto& d = params.dm[static_cast<size_t>(i)];
    root["dm"].push_back({{"pair", {pair_of[i][0], pair_of[i][1]}},
                          {"dx", d.dx},
                          {"dy", d.dy},
                          {"dz", d.dz}});
    const auto& g = params.g[static_cast<size_t>(i)];
    root["g"].push_back({{"site", i + 1}, {"gx", g.gx}, {"gy", g.gy}, {"gz", g.gz}});
  }
  root["mu_b_hat"] = params.mu_b_hat;
  return root.dump(indent) + "\n";
}

} // namespace trimer
