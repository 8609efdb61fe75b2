#include "cache.hpp"

#include <fstream>
#include <random>
#include <regex>
#include <unistd.h>

namespace e8jac::cli {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) { return json::array({r.get_num().get_str(), r.get_den().get_str()}); }

Rational rational_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw CacheError("rational must be a [numerator, denominator] pair");
  Rational r(Integer(j[0].get<std::string>()), Integer(j[1].get<std::string>()));
  r.canonicalize();
  return r;
}

}  // namespace

json expansion_to_json(const JacobiExpansion& f) {
  json levels = json::array();
  for (const auto& level : f.terms) {
    json row = json::array();
    for (const auto& [key, c] : level) row.push_back({{"m", unpack(key).m}, {"c", rational_json(c)}});
    levels.push_back(std::move(row));
  }
  return {{"weight", f.weight},
          {"index", f.index},
          {"holomorphic", f.holomorphic},
          {"truncation", f.truncation()},
          {"terms", std::move(levels)}};
}

JacobiExpansion expansion_from_json(const json& j) {
  try {
    JacobiExpansion f;
    f.weight = j.at("weight").get<int>();
    f.index = j.at("index").get<int>();
    f.holomorphic = j.at("holomorphic").get<bool>();
    for (const auto& row : j.at("terms")) {
      OrbitPoly level;
      for (const auto& t : row) {
        DominantWeight m;
        m.m = t.at("m").get<std::array<std::int32_t, kRank>>();
        level[pack(m)] = rational_from(t.at("c"));
      }
      f.terms.push_back(std::move(level));
    }
    if (f.truncation() != j.at("truncation").get<int>()) throw CacheError("truncation does not match payload");
    return f;
  } catch (const json::exception& e) {
    throw CacheError(std::string("malformed expansion: ") + e.what());
  }
}

json to_json(const CacheEntry& e) {
  return {{"schema", e.schema}, {"form_id", e.form_id}, {"expansion", expansion_to_json(e.payload)}};
}

CacheEntry entry_from_json(const json& j) {
  CacheEntry e;
  if (!j.is_object() || !j.contains("schema")) throw CacheError("missing schema version");
  e.schema = j["schema"].get<int>();
  if (e.schema != kSchemaVersion)
    throw CacheError("schema version " + std::to_string(e.schema) + " != " + std::to_string(kSchemaVersion));
  e.form_id = j.at("form_id").get<std::string>();
  e.payload = expansion_from_json(j.at("expansion"));
  return e;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string form_id(const std::string& canonical_text) {
  static const std::regex name(R"((A[1-5]|B[2346]|E[46]|P165|Q185|P[1-4]|X[0-9]+|theta))");
  if (std::regex_match(canonical_text, name)) return canonical_text;
  return "poly-" + fnv1a_hex(canonical_text);
}

std::filesystem::path ExpansionCache::path_for(const std::string& id) const {
  return root_ / std::to_string(kSchemaVersion) / (id + ".json");
}

std::optional<JacobiExpansion> ExpansionCache::load(const std::string& id, int truncation) const {
  const auto p = path_for(id);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return std::nullopt;  // torn or foreign file: recompute
  }
  CacheEntry e = entry_from_json(j);
  if (e.form_id != id) throw CacheError("form id mismatch in " + p.string());
  if (e.payload.truncation() < truncation) return std::nullopt;
  return e.payload.truncated(truncation);
}

void ExpansionCache::store(const CacheEntry& e) const {
  const auto p = path_for(e.form_id);
  std::filesystem::create_directories(p.parent_path());
  if (auto old = load(e.form_id, e.payload.truncation() + 1)) return;
  std::random_device rd;
  const auto tmp = p.parent_path() / (p.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                                      std::to_string(rd()));
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << to_json(e).dump(1) << '\n';
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace e8jac::cli
