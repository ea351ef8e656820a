#pragma once

#include <stdexcept>
#include <string>

#include "fraisse/bancat/instance.hpp"
#include "fraisse/metcat/instances.hpp"
#include "fraisse/plcat/instance.hpp"
#include "json.hpp"

namespace fraisse::io {

using Json = nlohmann::ordered_json;

class IoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json encode(const Q& x);
Q decode_q(const Json& j);
Json encode(const ExtRational& x);
ExtRational decode_ext(const Json& j);
Json encode(const QVector& v);
QVector decode_qvector(const Json& j);

Json encode(const metcat::FinMetSpace& x);
metcat::FinMetSpace decode_metric_space(const Json& j);
Json encode(const metcat::NonExpMap& f);
metcat::NonExpMap decode_table(const Json& j);

Json encode(const plcat::IntervalObject& x);
plcat::IntervalObject decode_interval(const Json& j);
Json encode(const plcat::PLMap& f);
plcat::PLMap decode_plmap(const Json& j);

Json encode(const bancat::PolySpace& x);
bancat::PolySpace decode_polyspace(const Json& j);
Json encode(const bancat::QMatrix& m);
bancat::QMatrix decode_matrix(const Json& j);

/// Reads a required member, naming it on failure.
const Json& member(const Json& j, const char* key);

/// Per-instance object/payload codecs and construction parameters.
template <class C>
struct Codec;

template <>
struct Codec<metcat::EmbedInstance> {
  static Json object(const metcat::FinMetSpace& x) { return encode(x); }
  static metcat::FinMetSpace object(const Json& j) { return decode_metric_space(j); }
  static Json payload(const metcat::NonExpMap& f) { return encode(f); }
  static metcat::NonExpMap payload(const Json& j) { return decode_table(j); }
  static Json params(const metcat::EmbedInstance&) { return Json::object(); }
};

template <>
struct Codec<metcat::QuotientInstance> {
  static Json object(const metcat::FinMetSpace& x) { return encode(x); }
  static metcat::FinMetSpace object(const Json& j) { return decode_metric_space(j); }
  static Json payload(const metcat::NonExpMap& f) { return encode(f); }
  static metcat::NonExpMap payload(const Json& j) { return decode_table(j); }
  static Json params(const metcat::QuotientInstance&) { return Json::object(); }
};

template <>
struct Codec<plcat::PLInstance> {
  static Json object(const plcat::IntervalObject& x) { return encode(x); }
  static plcat::IntervalObject object(const Json& j) { return decode_interval(j); }
  static Json payload(const plcat::PLMap& f) { return encode(f); }
  static plcat::PLMap payload(const Json& j) { return decode_plmap(j); }
  static Json params(const plcat::PLInstance&) { return Json::object(); }
};

template <>
struct Codec<bancat::BanachInstance> {
  static Json object(const bancat::PolySpace& x) { return encode(x); }
  static bancat::PolySpace object(const Json& j) { return decode_polyspace(j); }
  static Json payload(const bancat::QMatrix& m) { return encode(m); }
  static bancat::QMatrix payload(const Json& j) { return decode_matrix(j); }
  static Json params(const bancat::BanachInstance& c) { return Json{{"dim_cap", c.dim_cap()}}; }
};

template <class C>
Json encode_arrow(const typename C::Arrow& f) {
  Json j;
  j["dom"] = Codec<C>::object(f.dom);
  j["cod"] = Codec<C>::object(f.cod);
  j["payload"] = Codec<C>::payload(f.payload);
  j["small"] = f.is_small();
  return j;
}

/// Revalidates through the instance; the stored small flag must agree.
template <class C>
typename C::Arrow decode_arrow(const C& c, const Json& j) {
  auto f = c.make_arrow(Codec<C>::object(member(j, "dom")), Codec<C>::object(member(j, "cod")),
                        Codec<C>::payload(member(j, "payload")));
  if (member(j, "small").get<bool>() != f.is_small()) throw IoError("arrow: stored small flag disagrees with payload");
  return f;
}

}  // namespace fraisse::io
