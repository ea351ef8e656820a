#include "fraisse/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <type_traits>

#include "CLI11.hpp"
#include "fraisse/io/certificate.hpp"

namespace fraisse::cli {

namespace {

using io::IoError;
using io::Json;

constexpr int kHolds = 0;
constexpr int kExhausted = 1;
constexpr int kInputError = 2;

std::size_t default_dim_cap() {
  if (const char* v = std::getenv("FORGE_DIM_CAP")) {
    try {
      std::size_t cap = std::stoul(v);
      if (cap >= 1) return cap;
    } catch (const std::exception&) {
    }
    throw IoError("FORGE_DIM_CAP must be a positive integer");
  }
  return 3;
}

template <class F>
decltype(auto) with_instance(const std::string& tag, const Json& params, F&& f) {
  if (tag == "metric-embed") return f(metcat::EmbedInstance{});
  if (tag == "metric-quotient") return f(metcat::QuotientInstance(false));
  if (tag == "metric-quotient-discrete") return f(metcat::QuotientInstance(true));
  if (tag == "pl-interval") return f(plcat::PLInstance{});
  if (tag == "banach") {
    std::size_t cap = params.contains("dim_cap") ? params.at("dim_cap").get<std::size_t>() : default_dim_cap();
    return f(bancat::BanachInstance(cap));
  }
  throw IoError("unknown instance \"" + tag + "\"");
}

// ---- flag parsing ----

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Q parse_q(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw IoError("not a rational: \"" + s + "\"");
  }
}

metcat::NonExpMap parse_table(const std::string& s) {
  metcat::NonExpMap m;
  for (const auto& x : split(s, ',')) {
    try {
      std::size_t pos = 0;
      long v = std::stol(x, &pos);
      if (pos != x.size() || v < 0) throw std::invalid_argument("bad");
      m.table.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw IoError("not a point index: \"" + x + "\"");
    }
  }
  return m;
}

// Rows separated by ';', entries by ','.
bancat::QMatrix parse_matrix(const std::string& s) {
  std::vector<QVector> rows;
  for (const auto& r : split(s, ';')) {
    QVector v;
    for (const auto& x : split(r, ',')) v.push_back(parse_q(x));
    rows.push_back(std::move(v));
  }
  if (rows.empty() || rows[0].empty()) throw IoError("empty matrix");
  try {
    return bancat::QMatrix::from_rows(rows, rows[0].size());
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

// "linf:n", "l1:n" or functionals as matrix rows.
bancat::PolySpace parse_space(const std::string& s) {
  try {
    if (s.rfind("linf:", 0) == 0) return bancat::PolySpace::linf(std::stoul(s.substr(5)));
    if (s.rfind("l1:", 0) == 0) return bancat::PolySpace::l1(std::stoul(s.substr(3)));
    auto m = parse_matrix(s);
    std::vector<QVector> fs;
    for (std::size_t i = 0; i < m.rows; ++i) fs.push_back(m.row(i));
    return bancat::PolySpace(m.cols, fs);
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("bad space \"" + s + "\": " + e.what());
  }
}

// "t:y,t:y,..." breakpoints.
plcat::PLMap parse_plmap(const std::string& s) {
  std::vector<Q> t, y;
  for (const auto& p : split(s, ',')) {
    auto ty = split(p, ':');
    if (ty.size() != 2) throw IoError("bad breakpoint \"" + p + "\"");
    t.push_back(parse_q(ty[0]));
    y.push_back(parse_q(ty[1]));
  }
  try {
    return plcat::PLMap(t, y);
  } catch (const std::exception& e) {
    throw IoError(std::string("bad map: ") + e.what());
  }
}

// ---- inputs ----

struct Loaded {
  io::InputRef ref;
  Json json;
};

Loaded load_input(const std::string& path, const std::string& expected_digest = "",
                  const std::string& base_dir = "") {
  std::string p = path;
  if (!std::filesystem::exists(p) && !base_dir.empty()) {
    auto alt = std::filesystem::path(base_dir) / path;
    if (std::filesystem::exists(alt)) p = alt.string();
  }
  std::string bytes = io::read_file(p);
  Loaded l{{path, io::digest(bytes)}, {}};
  if (!expected_digest.empty() && expected_digest != l.ref.digest)
    throw IoError("input " + path + " changed since the certificate was written");
  try {
    l.json = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!l.json.contains("format") || l.json["format"] != io::kSequenceFormat)
    throw IoError(path + ": not a sequence file");
  return l;
}

Q param_q(const Json& params, const char* key) { return io::decode_q(io::member(params, key)); }
std::size_t param_n(const Json& params, const char* key) { return io::member(params, key).get<std::size_t>(); }

template <class C>
std::optional<std::pair<std::size_t, typename C::Arrow>> level_witness(const C& c, const Json* w) {
  if (!w || w->is_null()) return std::nullopt;
  return std::make_pair(param_n(*w, "m"), io::decode_arrow(c, io::member(*w, "g")));
}

// ---- operations; `witness` set means replay, otherwise search ----

Json op_check(const std::string& prop, const Json& params, const Loaded& in, const Json* witness) {
  const Json& seq = in.json;
  return with_instance(io::member(seq, "instance").get<std::string>(), io::member(seq, "params"), [&](const auto& c) {
    using C = std::decay_t<decltype(c)>;
    auto t = io::decode_tower(c, seq);
    Json cert = io::certificate_header("check-" + prop, c.tag(), {in.ref}, params);
    std::size_t depth = param_n(params, "depth");
    bool replay = witness != nullptr;
    if (prop == "U") {
      Q eps = param_q(params, "eps");
      auto x = io::Codec<C>::object(io::member(params, "x"));
      auto w = level_witness(c, replay ? witness : nullptr);
      if (!replay) {
        auto r = engine::check_U(c, t, x, eps, depth);
        if (r.witness) w = std::make_pair(r.witness->m, r.witness->g);
      }
      io::finish_U(c, t, x, eps, depth, w, cert);
      return cert;
    }
    if (prop == "A" || prop == "B") {
      Q eps = param_q(params, "eps");
      std::size_t n = param_n(params, "level");
      if (n >= t.size()) throw IoError("level beyond tower");
      auto f = io::decode_arrow(c, io::member(params, "f"));
      if (!(f.dom == t.object(n))) throw IoError("f does not start at the given level");
      bool ambient = prop == "B" && !f.is_small();
      auto w = level_witness(c, replay ? witness : nullptr);
      if (!replay) {
        auto r = prop == "A" ? engine::check_A(c, t, n, f, eps, depth) : engine::check_B(c, t, n, f, eps, depth);
        if (r.witness) w = std::make_pair(r.witness->m, r.witness->g);
      }
      io::finish_AB(c, t, n, f, eps, depth, ambient, w, cert);
      return cert;
    }
    if (prop == "C") {
      if constexpr (std::is_same_v<C, metcat::QuotientInstance>) {
        std::size_t n = param_n(params, "level");
        std::size_t t_size = param_n(params, "t_size");
        auto f = io::decode_table(io::member(params, "f"));
        auto p = io::decode_table(io::member(params, "p"));
        std::optional<metcat::CantorWitness> w;
        if (replay && !witness->is_null()) {
          w = metcat::CantorWitness{param_n(*witness, "n"), param_n(*witness, "m"),
                                    io::decode_table(io::member(*witness, "q"))};
        } else if (!replay) {
          try {
            auto r = metcat::check_C(c, t, n, t_size, f, p, depth);
            w = r.witness;
          } catch (const metcat::MetricError& e) {
            throw IoError(e.what());
          }
        }
        io::finish_C(c, t, t_size, f, p, w, cert);
        return cert;
      } else {
        throw IoError("property C needs a metric-quotient file");
      }
    }
    if (prop == "P") {
      if constexpr (std::is_same_v<C, plcat::PLInstance>) {
        Q eps = param_q(params, "eps");
        std::size_t n = param_n(params, "level");
        if (n >= t.size()) throw IoError("level beyond tower");
        auto f = io::decode_plmap(io::member(params, "f"));
        std::optional<std::pair<std::size_t, plcat::PLMap>> w;
        if (replay && !witness->is_null()) {
          w = std::make_pair(param_n(*witness, "m"), io::decode_plmap(io::member(*witness, "g")));
        } else if (!replay) {
          auto r = plcat::check_P(c, t, n, f, eps, depth);
          if (r.witness) w = std::make_pair(r.witness->m, r.witness->g);
        }
        io::finish_P(c, t, n, f, eps, w, cert);
        return cert;
      } else {
        throw IoError("property P needs a pl-interval file");
      }
    }
    if (prop == "G") {
      if constexpr (std::is_same_v<C, bancat::BanachInstance>) {
        Q eps = param_q(params, "eps");
        std::size_t n = param_n(params, "level");
        if (n >= t.size()) throw IoError("level beyond tower");
        auto x = io::decode_polyspace(io::member(params, "x"));
        auto y = io::decode_polyspace(io::member(params, "y"));
        bancat::LinOp incl, f;
        try {
          incl = bancat::LinOp(x, y, io::decode_matrix(io::member(params, "incl")));
          f = bancat::LinOp(x, t.object(n), io::decode_matrix(io::member(params, "f")));
        } catch (const bancat::BanachError& e) {
          throw IoError(e.what());
        }
        std::optional<std::pair<std::size_t, bancat::QMatrix>> w;
        if (replay && !witness->is_null()) {
          w = std::make_pair(param_n(*witness, "m"), io::decode_matrix(io::member(*witness, "g")));
        } else if (!replay) {
          try {
            auto r = bancat::check_G(c, t, n, incl, f, eps, depth);
            if (r.witness) w = std::make_pair(r.witness->m, r.witness->g);
          } catch (const bancat::BanachError& e) {
            throw IoError(e.what());
          }
        }
        io::finish_G(c, t, n, incl, f, eps, w, cert);
        return cert;
      } else {
        throw IoError("property G needs a banach file");
      }
    }
    throw IoError("unknown property \"" + prop + "\"");
  });
}

Json op_bnf(const Json& params, const Loaded& a, const Loaded& b, const Json* witness) {
  if (a.json.at("instance") != b.json.at("instance")) throw IoError("bnf: files hold different instances");
  return with_instance(a.json.at("instance").get<std::string>(), a.json.at("params"), [&](const auto& c) {
    using C = std::decay_t<decltype(c)>;
    auto u = io::decode_tower(c, a.json);
    auto v = io::decode_tower(c, b.json);
    Q eps = param_q(params, "eps");
    std::size_t rounds = param_n(params, "rounds");
    Json cert = io::certificate_header("bnf", c.tag(), {a.ref, b.ref}, params);
    engine::BnfState<C> st;
    if (witness) {
      if (!witness->is_null()) {
        st.phi = io::member(*witness, "phi").get<std::vector<std::size_t>>();
        st.psi = io::member(*witness, "psi").get<std::vector<std::size_t>>();
        for (const auto& f : io::member(*witness, "f")) st.f.push_back(io::decode_arrow(c, f));
        for (const auto& g : io::member(*witness, "g")) st.g.push_back(io::decode_arrow(c, g));
        if (st.f.empty() || st.phi.size() != st.f.size() || st.psi.size() != st.f.size() ||
            st.g.size() + 1 < st.f.size() || st.g.size() > st.f.size())
          throw IoError("bnf: malformed witness");
        st.mu_h = c.mu_bound(st.f[0]).bound;
        st.schedule = engine::EpsSchedule::standard(st.mu_h.is_finite() ? st.mu_h.value() : eps, eps);
      }
    } else {
      // h: u_0 -> v_0 from (U) at level 0 of v.
      auto h = engine::check_U(c, v, u.object(0), eps, 0);
      if (h.witness) {
        auto mu = h.witness->mu;
        st = engine::back_and_forth(c, u, v, h.witness->g, engine::EpsSchedule::standard(mu.value(), eps), rounds);
      }
    }
    if (st.f.empty()) {
      cert["witness"] = nullptr;
      cert["margins"] = Json::object();
      cert["verdict"] = io::verdict_text(false);
      return cert;
    }
    st.complete = st.g.size() == rounds && st.f.size() == rounds + 1;
    io::finish_bnf(c, u, v, st, cert);
    auto& m = cert["margins"];
    m["schedule"] = Json{{"eps", io::encode(st.schedule.eps)},
                         {"eps0", io::encode(st.schedule.eps0)},
                         {"tail", io::encode(st.schedule.tail)}};
    return cert;
  });
}

Json op_embed(const Json& params, const Loaded& target, const Loaded& ambient, const Json* witness) {
  if (target.json.at("instance") != ambient.json.at("instance"))
    throw IoError("embed: files hold different instances");
  return with_instance(target.json.at("instance").get<std::string>(), target.json.at("params"), [&](const auto& c) {
    using C = std::decay_t<decltype(c)>;
    auto x = io::decode_tower(c, target.json);
    auto u = io::decode_tower(c, ambient.json);
    std::size_t stages = param_n(params, "stages");
    Json cert = io::certificate_header("embed", c.tag(), {target.ref, ambient.ref}, params);
    core::ApproxArrow<C> a;
    if (witness) {
      if (!witness->is_null()) {
        a.phi = io::member(*witness, "phi").get<std::vector<std::size_t>>();
        for (const auto& f : io::member(*witness, "levels")) a.levels.push_back(io::decode_arrow(c, f));
        if (a.phi.size() != a.levels.size()) throw IoError("embed: malformed witness");
        for (std::size_t n = 0; n < a.levels.size(); ++n)
          if (n >= x.size() || a.phi[n] >= u.size() || !(a.levels[n].dom == x.object(n)) ||
              !(a.levels[n].cod == u.object(a.phi[n])))
            throw IoError("embed: witness levels do not match the towers");
      }
    } else {
      a = engine::embed_universal(c, x, u, stages).arrow;
    }
    if (a.levels.empty() && stages > 0) {
      cert["witness"] = nullptr;
      cert["margins"] = Json::object();
      cert["verdict"] = io::verdict_text(false);
      return cert;
    }
    bool complete = a.levels.size() == std::min(stages, x.size());
    io::finish_embed(c, x, u, a, complete, stages, cert);
    return cert;
  });
}

int verdict_code(const Json& cert) { return cert.at("verdict") == "holds" ? kHolds : kExhausted; }

void emit(const std::string& bytes, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << bytes;
  } else {
    io::write_file(out_path, bytes);
  }
}

// ---- subcommands ----

struct BuildArgs {
  std::string instance;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t dim_cap = 0;
};

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  Json params = Json::object();
  if (a.dim_cap > 0) params["dim_cap"] = a.dim_cap;
  return with_instance(a.instance, params, [&](const auto& c) {
    engine::BuildResult<std::decay_t<decltype(c)>> b;
    try {
      b = engine::build_fraisse(c, a.steps, a.seed);
    } catch (const engine::BuildError& e) {
      err << "build failed: " << e.what() << "\n";
      return kExhausted;
    }
    emit(io::dump(io::encode_build(c, b)), a.out, out);
    return kHolds;
  });
}

struct CheckArgs {
  std::string property;
  std::string eps;
  std::size_t depth = 0;
  std::string file;
  std::string out;
  std::optional<std::size_t> level;
  std::optional<std::size_t> object_rank;
  std::optional<std::size_t> rank;
  std::string arrow_file;
  bool tent = false;
  std::string map;
  std::optional<std::size_t> t_size;
  std::string f;
  std::string p;
  std::string x = "linf:1";
  std::string y;
  std::string incl;
};

Json check_params(const CheckArgs& a, const Loaded& in) {
  Json params;
  params["property"] = a.property;
  if (a.property != "C") {
    if (a.eps.empty()) throw IoError("--eps is required for property " + a.property);
    Q eps = parse_q(a.eps);
    if (!(eps > 0)) throw IoError("--eps must be positive");
    params["eps"] = io::encode(eps);
  }
  params["depth"] = a.depth;
  const Json& seq = in.json;
  with_instance(seq.at("instance").get<std::string>(), seq.at("params"), [&](const auto& c) {
    using C = std::decay_t<decltype(c)>;
    auto t = io::decode_tower(c, seq);
    std::size_t n = a.level.value_or(0);
    if (a.property == "U") {
      if (a.object_rank) {
        params["x"] = io::Codec<C>::object(c.dominating_object(*a.object_rank));
      } else {
        if (n >= t.size()) throw IoError("--level beyond tower");
        params["x"] = io::Codec<C>::object(t.object(n));
      }
      return 0;
    }
    if (n >= t.size()) throw IoError("--level beyond tower");
    params["level"] = n;
    if (a.property == "A" || a.property == "B") {
      if (!a.arrow_file.empty()) {
        Json aj;
        try {
          aj = Json::parse(io::read_file(a.arrow_file));
        } catch (const Json::parse_error& e) {
          throw IoError(e.what());
        }
        params["f"] = io::encode_arrow<C>(io::decode_arrow(c, aj));
      } else {
        params["f"] = io::encode_arrow<C>(c.dominating_arrow(t.object(n), a.rank.value_or(1)));
      }
    } else if (a.property == "C") {
      if (!a.t_size || a.f.empty() || a.p.empty()) throw IoError("property C needs --t-size, --f and --p");
      params["t_size"] = *a.t_size;
      params["f"] = io::encode(parse_table(a.f));
      params["p"] = io::encode(parse_table(a.p));
    } else if (a.property == "P") {
      if (!a.tent && a.map.empty()) throw IoError("property P needs --tent or --map");
      params["f"] = io::encode(a.tent ? plcat::tent_map() : parse_plmap(a.map));
    } else if (a.property == "G") {
      if (a.y.empty() || a.incl.empty() || a.f.empty()) throw IoError("property G needs --y, --incl and --f");
      params["x"] = io::encode(parse_space(a.x));
      params["y"] = io::encode(parse_space(a.y));
      params["incl"] = io::encode(parse_matrix(a.incl));
      params["f"] = io::encode(parse_matrix(a.f));
    } else {
      throw IoError("unknown property \"" + a.property + "\"");
    }
    return 0;
  });
  return params;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  auto in = load_input(a.file);
  auto params = check_params(a, in);
  auto cert = op_check(a.property, params, in, nullptr);
  emit(io::dump(cert), a.out, out);
  return verdict_code(cert);
}

int cmd_bnf(const std::string& fa, const std::string& fb, const std::string& eps_text, std::size_t rounds,
            const std::string& out_path, std::ostream& out) {
  Q eps = parse_q(eps_text);
  if (!(eps > 0)) throw IoError("--eps must be positive");
  auto a = load_input(fa);
  auto b = load_input(fb);
  Json params{{"eps", io::encode(eps)}, {"rounds", rounds}};
  auto cert = op_bnf(params, a, b, nullptr);
  emit(io::dump(cert), out_path, out);
  return verdict_code(cert);
}

int cmd_embed(const std::string& target, const std::string& ambient, std::size_t stages, const std::string& out_path,
              std::ostream& out) {
  auto x = load_input(target);
  auto u = load_input(ambient);
  Json params{{"stages", stages}};
  auto cert = op_embed(params, x, u, nullptr);
  emit(io::dump(cert), out_path, out);
  return verdict_code(cert);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out;
}

std::string short_json(const Json& j) {
  std::string s = j.dump();
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

int cmd_export(const std::string& file, const std::string& out_path, std::ostream& out) {
  auto in = load_input(file);
  const Json& seq = in.json;
  const auto& objs = io::member(seq, "objects");
  const auto& bonds = io::member(seq, "bondings");
  // Per level: requirements met there and the largest logged margin.
  std::vector<std::size_t> met(objs.size(), 0);
  std::vector<std::optional<ExtRational>> worst(objs.size());
  if (seq.contains("log"))
    for (const auto& e : seq.at("log")) {
      std::string clause = e.at("clause").get<std::string>();
      if (clause != "existing" && clause != "appended") continue;
      std::size_t m = e.at("m").get<std::size_t>();
      if (m >= objs.size()) continue;
      ++met[m];
      auto mg = io::decode_ext(e.at("margin"));
      if (!worst[m] || *worst[m] < mg) worst[m] = mg;
    }
  std::ostringstream os;
  os << "digraph tower {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t k = 0; k < objs.size(); ++k) {
    std::string label = "u" + std::to_string(k) + "\n" + short_json(objs[k]);
    if (met[k] > 0) label += "\nmet " + std::to_string(met[k]) + ", max margin " + to_string(*worst[k]);
    os << "  u" << k << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (std::size_t k = 0; k < bonds.size(); ++k)
    os << "  u" << k << " -> u" << k + 1 << " [label=\"" << dot_escape(short_json(bonds[k])) << "\"];\n";
  os << "}\n";
  emit(os.str(), out_path, out);
  return kHolds;
}

// Sequence files replay their log; certificates are recomputed from their
// witnesses (or re-searched when exhausted) and compared byte for byte.
int cmd_verify(const std::string& file, std::ostream& out) {
  std::string bytes = io::read_file(file);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw IoError(e.what());
  }
  std::string format = j.contains("format") && j["format"].is_string() ? j["format"].get<std::string>() : "";
  if (format == io::kSequenceFormat) {
    return with_instance(j.at("instance").get<std::string>(), j.at("params"), [&](const auto& c) {
      auto b = io::decode_build(c, j);
      auto rep = engine::replay_log(c, b);
      bool canon = io::dump(io::encode_build(c, b)) == bytes;
      out << "replayed " << rep.checked << " log entries: " << (rep.ok ? "ok" : "FAILED") << "\n";
      for (const auto& f : rep.failures) out << "  " << f << "\n";
      out << "canonical form: " << (canon ? "identical" : "DIFFERS") << "\n";
      return rep.ok && canon ? kHolds : kExhausted;
    });
  }
  if (format != io::kCertificateFormat) throw IoError(file + ": unknown format");
  std::string base = std::filesystem::path(file).parent_path().string();
  std::vector<Loaded> ins;
  for (const auto& r : io::member(j, "inputs"))
    ins.push_back(load_input(io::member(r, "file").get<std::string>(), io::member(r, "digest").get<std::string>(), base));
  std::string op = io::member(j, "operation").get<std::string>();
  const Json& params = io::member(j, "params");
  const Json* w = &io::member(j, "witness");
  // Exhausted certificates are re-searched.
  const Json* replay = w->is_null() ? nullptr : w;
  Json again;
  if (op.rfind("check-", 0) == 0 && ins.size() == 1) {
    again = op_check(op.substr(6), params, ins[0], replay);
  } else if (op == "bnf" && ins.size() == 2) {
    again = op_bnf(params, ins[0], ins[1], replay);
  } else if (op == "embed" && ins.size() == 2) {
    again = op_embed(params, ins[0], ins[1], replay);
  } else {
    throw IoError("unknown operation \"" + op + "\"");
  }
  bool same = io::dump(again) == bytes;
  out << "recomputed " << op << ": " << (same ? "identical" : "DIFFERS") << ", verdict "
      << again.at("verdict").get<std::string>() << "\n";
  if (!same) return kExhausted;
  return verdict_code(again);
}

int cmd_roundtrip(const std::string& file, std::ostream& out) {
  std::string bytes = io::read_file(file);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw IoError(e.what());
  }
  std::string again;
  if (j.value("format", "") == io::kSequenceFormat) {
    again = with_instance(j.at("instance").get<std::string>(), j.at("params"),
                          [&](const auto& c) { return io::dump(io::encode_build(c, io::decode_build(c, j))); });
  } else {
    again = io::dump(j);
  }
  bool same = again == bytes;
  out << (same ? "identical" : "DIFFERS") << "\n";
  return same ? kHolds : kExhausted;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fraisse sequences in normed categories: build, check, back-and-forth, embed, export, verify"};
  app.require_subcommand(1);

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "Build a Fraisse sequence prefix");
  build->add_option("--instance", ba.instance, "metric-embed | metric-quotient | metric-quotient-discrete | "
                                               "pl-interval | banach")
      ->required();
  build->add_option("--steps", ba.steps, "Number of builder steps")->required();
  build->add_option("--seed", ba.seed, "Seed of the requirement order");
  build->add_option("--out", ba.out, "Output sequence file (stdout if absent)");
  build->add_option("--dim-cap", ba.dim_cap, "Banach dimension bound (default FORGE_DIM_CAP or 3)");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Run a finite-depth checker on a sequence file");
  check->add_option("--property", ca.property, "U | A | B | C | P | G")->required();
  check->add_option("--eps", ca.eps, "Tolerance as p/q");
  check->add_option("--depth", ca.depth, "Deepest level searched")->required();
  check->add_option("file", ca.file, "Sequence file")->required();
  check->add_option("--out", ca.out, "Certificate file (stdout if absent)");
  check->add_option("--level", ca.level, "Tower level n");
  check->add_option("--object-rank", ca.object_rank, "(U) dominating object rank");
  check->add_option("--rank", ca.rank, "(A/B) dominating arrow rank at level n (default 1)");
  check->add_option("--arrow", ca.arrow_file, "(A/B) arrow JSON file");
  check->add_flag("--tent", ca.tent, "(P) the tent map");
  check->add_option("--map", ca.map, "(P) breakpoints t:y,t:y,...");
  check->add_option("--t-size", ca.t_size, "(C) size of T");
  check->add_option("--f", ca.f, "(C) table T -> S; (G) matrix X -> u_n, rows separated by ';'");
  check->add_option("--p", ca.p, "(C) table u_n -> S");
  check->add_option("--x", ca.x, "(G) space X: linf:n, l1:n or functionals as rows");
  check->add_option("--y", ca.y, "(G) space Y");
  check->add_option("--incl", ca.incl, "(G) isometric embedding X -> Y as a matrix");

  std::string bnf_a, bnf_b, bnf_eps, bnf_out;
  std::size_t rounds = 0;
  auto* bnf = app.add_subcommand("bnf", "Approximate back-and-forth between two sequence files");
  bnf->add_option("file_a", bnf_a)->required();
  bnf->add_option("file_b", bnf_b)->required();
  bnf->add_option("--eps", bnf_eps)->required();
  bnf->add_option("--rounds", rounds)->required();
  bnf->add_option("--out", bnf_out);

  std::string target, ambient, embed_out;
  std::size_t stages = 0;
  auto* embed = app.add_subcommand("embed", "Embed a tower into a built Fraisse sequence");
  embed->add_option("target", target)->required();
  embed->add_option("ambient", ambient)->required();
  embed->add_option("--stages", stages)->required();
  embed->add_option("--out", embed_out);

  std::string export_file, export_out;
  bool dot = false;
  auto* exp = app.add_subcommand("export", "Export a tower diagram");
  exp->add_option("file", export_file)->required();
  exp->add_flag("--dot", dot, "Graphviz DOT output")->required();
  exp->add_option("--out", export_out);

  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "Re-verify a certificate or replay a sequence file");
  verify->add_option("file", verify_file)->required();

  std::string rt_file;
  auto* rt = app.add_subcommand("roundtrip", "Parse and re-serialize; succeeds when byte-identical");
  rt->add_option("file", rt_file)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*build) return cmd_build(ba, out, err);
    if (*check) return cmd_check(ca, out);
    if (*bnf) return cmd_bnf(bnf_a, bnf_b, bnf_eps, rounds, bnf_out, out);
    if (*embed) return cmd_embed(target, ambient, stages, embed_out, out);
    if (*exp) return cmd_export(export_file, export_out, out);
    if (*verify) return cmd_verify(verify_file, out);
    if (*rt) return cmd_roundtrip(rt_file, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fraisse::cli
