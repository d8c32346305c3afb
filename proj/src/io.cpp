#include "dominion/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dominion {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ValidationError("bad_json", msg); }

Rational rational_field(const json& v, const std::string& what) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      bad(what + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(BigInt(v.dump(), 10));
  bad(what + " must be a rational string");
}

int int_field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where + " is missing \"" + key + "\"");
  if (!it->is_number_integer()) bad(where + ": \"" + key + "\" must be an integer");
  auto v = it->get<long long>();
  if (v < INT32_MIN || v > INT32_MAX) bad(where + ": \"" + key + "\" out of range");
  return static_cast<int>(v);
}

}  // namespace

json dataset_to_json(const Dataset& ds) {
  json pts = json::array();
  for (const auto& p : ds.points) {
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back(to_string(c));
    pts.push_back(json{{"id", p.id}, {"coords", coords}, {"color", p.color}, {"prob", to_string(p.prob)}});
  }
  return json{{"dimension", ds.dimension}, {"points", pts}};
}

Dataset dataset_from_json(const json& j) {
  if (!j.is_object()) bad("dataset must be a JSON object");
  Dataset ds;
  ds.dimension = int_field(j, "dimension", "dataset");
  auto pts = j.find("points");
  if (pts == j.end() || !pts->is_array()) bad("dataset needs a \"points\" array");
  std::size_t k = 0;
  for (const auto& p : *pts) {
    const std::string where = "points[" + std::to_string(k++) + "]";
    if (!p.is_object()) bad(where + " must be an object");
    StochasticPoint sp;
    sp.id = int_field(p, "id", where);
    sp.color = int_field(p, "color", where);
    auto c = p.find("coords");
    if (c == p.end() || !c->is_array()) bad(where + " needs a \"coords\" array");
    for (const auto& v : *c) sp.coords.push_back(rational_field(v, where + ".coords"));
    auto pr = p.find("prob");
    if (pr == p.end()) bad(where + " is missing \"prob\"");
    sp.prob = rational_field(*pr, where + ".prob");
    ds.points.push_back(std::move(sp));
  }
  return ds;
}

std::string emit_dataset(const Dataset& ds) { return dataset_to_json(ds).dump(2) + "\n"; }

Dataset parse_dataset(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return dataset_from_json(j);
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("io_error", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << emit_dataset(ds);
}

std::string dataset_digest(const Dataset& ds) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dataset_to_json(ds).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dominion
