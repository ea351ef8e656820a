#pragma once

#include <string>

#include "fraisse/engine/builder.hpp"
#include "fraisse/io/codec.hpp"

namespace fraisse::io {

inline constexpr const char* kSequenceFormat = "fraisse-sequence/1";

/// Indented JSON with a trailing newline; the canonical byte form.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class C>
Json encode_tower(const core::Tower<C>& t) {
  Json objs = Json::array(), bonds = Json::array();
  for (const auto& o : t.objects()) objs.push_back(Codec<C>::object(o));
  for (const auto& b : t.bondings()) bonds.push_back(Codec<C>::payload(b.payload));
  return Json{{"objects", objs}, {"bondings", bonds}};
}

template <class C>
core::Tower<C> decode_tower(const C& c, const Json& j) {
  const auto& objs = member(j, "objects");
  const auto& bonds = member(j, "bondings");
  if (!objs.is_array() || objs.empty()) throw IoError("tower: needs at least one object");
  if (!bonds.is_array() || bonds.size() + 1 != objs.size()) throw IoError("tower: bonding count must be objects - 1");
  std::vector<typename C::Object> os;
  for (const auto& o : objs) os.push_back(Codec<C>::object(o));
  core::Tower<C> t(os[0]);
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    auto b = c.make_arrow(os[k], os[k + 1], Codec<C>::payload(bonds[k]));
    if (!b.is_small()) throw IoError("tower: bonding " + std::to_string(k) + " is not a small arrow");
    t.push(std::move(b));
  }
  return t;
}

template <class C>
Json encode_build(const C& c, const engine::BuildResult<C>& b) {
  Json j;
  j["format"] = kSequenceFormat;
  j["instance"] = c.tag();
  j["params"] = Codec<C>::params(c);
  j["seed"] = b.seed;
  j["steps"] = b.steps;
  auto t = encode_tower(b.tower);
  j["objects"] = t["objects"];
  j["bondings"] = t["bondings"];
  Json log = Json::array();
  for (const auto& e : b.log) {
    Json le;
    le["step"] = e.step;
    le["clause"] = engine::to_string(e.clause);
    if (e.clause == engine::Clause::Object || (e.clause == engine::Clause::Skipped && !e.f)) {
      le["object_rank"] = e.object_rank;
    } else {
      le["rank"] = e.req.rank;
      le["level"] = e.req.level;
      le["k"] = e.req.k;
    }
    le["f"] = e.f ? encode_arrow<C>(*e.f) : Json(nullptr);
    le["g"] = e.g ? encode_arrow<C>(*e.g) : Json(nullptr);
    le["m"] = e.m;
    le["margin"] = encode(e.margin);
    le["note"] = e.note;
    log.push_back(std::move(le));
  }
  j["log"] = std::move(log);
  return j;
}

inline engine::Clause decode_clause(const std::string& s) {
  for (auto c : {engine::Clause::Object, engine::Clause::Existing, engine::Clause::Appended, engine::Clause::Skipped})
    if (engine::to_string(c) == s) return c;
  throw IoError("log: unknown clause \"" + s + "\"");
}

template <class C>
engine::BuildResult<C> decode_build(const C& c, const Json& j) {
  if (member(j, "format") != kSequenceFormat) throw IoError("not a sequence file");
  if (member(j, "instance") != c.tag()) throw IoError("instance mismatch");
  engine::BuildResult<C> b{decode_tower(c, j), {}, member(j, "seed").get<std::uint64_t>(),
                           member(j, "steps").get<std::size_t>()};
  for (const auto& le : member(j, "log")) {
    engine::LogEntry<C> e;
    e.step = member(le, "step").get<std::size_t>();
    e.clause = decode_clause(member(le, "clause").get<std::string>());
    if (le.contains("object_rank")) {
      e.object_rank = le.at("object_rank").get<std::size_t>();
    } else {
      e.req = {member(le, "rank").get<std::size_t>(), member(le, "level").get<std::size_t>(),
               member(le, "k").get<std::size_t>()};
    }
    if (!member(le, "f").is_null()) e.f = decode_arrow(c, le.at("f"));
    if (!member(le, "g").is_null()) e.g = decode_arrow(c, le.at("g"));
    e.m = member(le, "m").get<std::size_t>();
    e.margin = decode_ext(member(le, "margin"));
    e.note = member(le, "note").get<std::string>();
    b.log.push_back(std::move(e));
  }
  return b;
}

}  // namespace fraisse::io
