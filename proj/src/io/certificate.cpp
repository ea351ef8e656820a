#include "fraisse/io/certificate.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fraisse::io {

std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << bytes;
  if (!out) throw IoError("write failed for " + path);
}

Json encode(const InputRef& r) { return Json{{"file", r.file}, {"digest", r.digest}}; }

Json certificate_header(const std::string& operation, const std::string& instance, const std::vector<InputRef>& inputs,
                        const Json& params) {
  Json j;
  j["format"] = kCertificateFormat;
  j["operation"] = operation;
  j["instance"] = instance;
  Json in = Json::array();
  for (const auto& r : inputs) in.push_back(encode(r));
  j["inputs"] = in;
  j["params"] = params;
  return j;
}

void finish_C(const metcat::QuotientInstance& c, const core::Tower<metcat::QuotientInstance>& t, std::size_t t_size,
              const metcat::NonExpMap& f, const metcat::NonExpMap& p, const std::optional<metcat::CantorWitness>& w,
              Json& cert) {
  bool holds = false;
  if (w) {
    holds = metcat::verify_cantor(c, t, t_size, f, p, *w);
    cert["witness"] = Json{{"n", w->n}, {"m", w->m}, {"q", encode(w->q)}};
    cert["margins"] = Json{{"commutes", holds}};
  } else {
    cert["witness"] = nullptr;
    cert["margins"] = Json::object();
  }
  cert["verdict"] = verdict_text(holds);
}

void finish_P(const plcat::PLInstance& c, const plcat::PLTower& t, std::size_t n, const plcat::PLMap& f, const Q& eps,
              const std::optional<std::pair<std::size_t, plcat::PLMap>>& w, Json& cert) {
  bool holds = false;
  if (w) {
    auto [m, g] = *w;
    cert["witness"] = Json{{"m", m}, {"g", encode(g)}};
    if (m > n && m < t.size() && g.is_onto()) {
      Q margin = plcat::rho_pl(plcat::compose_pl(f, g), t.bond(c, n, m).payload, Q(t.object(n).scale));
      holds = plcat::verify_P(c, t, n, f, eps, plcat::PWitness{m, g, margin});
      cert["margins"] = Json{{"margin", encode(margin)}};
    } else {
      cert["margins"] = Json{{"shape", "witness is not an onto map from a later level"}};
    }
  } else {
    cert["witness"] = nullptr;
    cert["margins"] = Json::object();
  }
  cert["verdict"] = verdict_text(holds);
}

void finish_G(const bancat::BanachInstance& c, const bancat::BanachTower& t, std::size_t n, const bancat::LinOp& incl,
              const bancat::LinOp& f, const Q& eps, const std::optional<std::pair<std::size_t, bancat::QMatrix>>& w,
              Json& cert) {
  bool holds = false;
  if (w) {
    auto [m, g] = *w;
    cert["witness"] = Json{{"m", m}, {"g", encode(g)}};
    if (m < t.size() && m >= n && g.rows == t.object(m).dim() && g.cols == incl.cod.dim()) {
      bancat::LinOp op(incl.cod, t.object(m), g);
      auto mu = bancat::mu_op(op);
      Q norm = bancat::op_norm(op);
      bancat::LinOp lhs(incl.dom, op.cod, g * incl.m);
      bancat::LinOp rhs(incl.dom, op.cod, t.bond(c, n, m).payload * f.m);
      Q margin = bancat::op_distance(lhs, rhs);
      Json mj;
      mj["norm"] = encode(norm);
      mj["mu_status"] = bancat::to_string(mu.status);
      if (mu.status != bancat::MuStatus::NormAboveOne) mj["mu"] = encode(mu.value);
      mj["margin"] = encode(margin);
      cert["margins"] = mj;
      holds = bancat::verify_G(c, t, n, incl, f, eps, bancat::GWitness{m, g, norm, mu.value, margin});
    } else {
      cert["margins"] = Json{{"shape", "witness does not map Y into a tower level"}};
    }
  } else {
    cert["witness"] = nullptr;
    cert["margins"] = Json::object();
  }
  cert["verdict"] = verdict_text(holds);
}

}  // namespace fraisse::io
