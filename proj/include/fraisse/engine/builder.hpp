#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/core/tower.hpp"

namespace fraisse::engine {

using core::SearchOptions;
using core::Tower;

/// (f, n, k): f is the dominating arrow of rank `rank` out of x_n, tolerance 1/k.
struct Requirement {
  std::size_t rank = 0;
  std::size_t level = 0;
  std::size_t k = 1;
  friend bool operator==(const Requirement&, const Requirement&) = default;
};

enum class Clause {
  Object,     // clause (1): object requirement
  Existing,   // clause (2) met by an earlier level
  Appended,   // clause (2) met by amalgamating and appending a level
  Skipped,    // instance refused (resource cap)
};

inline std::string to_string(Clause c) {
  switch (c) {
    case Clause::Object: return "object";
    case Clause::Existing: return "existing";
    case Clause::Appended: return "appended";
    case Clause::Skipped: return "skipped";
  }
  return "?";
}

inline Clause parse_clause(const std::string& s) {
  for (auto c : {Clause::Object, Clause::Existing, Clause::Appended, Clause::Skipped})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown clause '" + s + "'");
}

template <class C>
struct LogEntry {
  std::size_t step = 0;
  Clause clause = Clause::Object;
  Requirement req;                       // arrow requirements
  std::size_t object_rank = 0;           // object requirements
  std::optional<typename C::Arrow> f;    // a -> b (arrow) or none
  std::optional<typename C::Arrow> g;    // b -> x_m, or object -> x_m
  std::size_t m = 0;
  ExtRational margin;                    // rho(g . f, x_n^m)
  std::string note;
};

template <class C>
struct BuildResult {
  Tower<C> tower;
  std::vector<LogEntry<C>> log;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
};

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  /// Every `object_period`-th step handles an object requirement.
  std::size_t object_period = 3;
  std::size_t budget = 200000;
};

/// Deterministic dovetailing over (rank, n, k): triples are grouped by
/// rank + n + k and shuffled within a group by the seed.
class RequirementQueue {
 public:
  explicit RequirementQueue(std::uint64_t seed) : rng_(seed) {}

  /// Next requirement whose level exists (< levels); postponed ones first.
  Requirement next(std::size_t levels) {
    for (auto it = postponed_.begin(); it != postponed_.end(); ++it) {
      if (it->level < levels) {
        Requirement r = *it;
        postponed_.erase(it);
        return r;
      }
    }
    for (;;) {
      if (pos_ == group_.size()) refill();
      Requirement r = group_[pos_++];
      if (r.level < levels) return r;
      postponed_.push_back(r);
    }
  }

 private:
  void refill() {
    group_.clear();
    pos_ = 0;
    ++total_;
    // rank + level + k == total_, k >= 1
    for (std::size_t k = 1; k <= total_; ++k)
      for (std::size_t level = 0; level + k <= total_; ++level) group_.push_back({total_ - k - level, level, k});
    std::shuffle(group_.begin(), group_.end(), rng_);
  }

  std::mt19937_64 rng_;
  std::size_t total_ = 0;
  std::vector<Requirement> group_;
  std::size_t pos_ = 0;
  std::vector<Requirement> postponed_;
};

template <class C>
bool instance_admits(const C& c, const typename C::Object& o) {
  if constexpr (requires { c.admits(o); }) {
    return c.admits(o);
  } else {
    return true;
  }
}

/// Builds a prefix of a Fraisse sequence inside the dominating family by
/// meeting the sets D_{f,n,k} one requirement at a time.
template <class C>
BuildResult<C> build_fraisse(const C& c, std::size_t steps, std::uint64_t seed, const BuildOptions& opts = {}) {
  BuildResult<C> out{Tower<C>(c.seed()), {}, seed, steps};
  Tower<C>& t = out.tower;
  RequirementQueue queue(seed);
  std::size_t object_rank = 0;
  // Best satisfied margin per (rank, level), for reuse at coarser k.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> satisfied;

  for (std::size_t step = 0; step < steps; ++step) {
    LogEntry<C> e;
    e.step = step;
    if (opts.object_period > 0 && step % opts.object_period == opts.object_period - 1) {
      e.clause = Clause::Object;
      e.object_rank = object_rank++;
      auto x = c.dominating_object(e.object_rank);
      SearchOptions so{true, opts.budget};
      for (std::size_t l = 0; l < t.size() && !e.g; ++l) {
        if (auto g = c.search_into(x, t.object(l), Q(1), so); g && g->is_small()) {
          e.g = *g;
          e.m = l;
          e.note = "existing";
        }
      }
      if (!e.g) {
        auto span = c.joint(t.object(t.last()), x);
        if (!instance_admits(c, span.left.cod)) {
          e.clause = Clause::Skipped;
          e.note = "joint exceeds instance cap";
        } else {
          t.push(span.left);
          e.g = span.right;
          e.m = t.last();
          e.note = "joint";
        }
      }
      out.log.push_back(std::move(e));
      continue;
    }

    Requirement r = queue.next(t.size());
    e.req = r;
    Q tol(Z(1), Z(r.k));
    auto f = c.dominating_arrow(t.object(r.level), r.rank);
    e.f = f;

    auto key = std::make_pair(r.rank, r.level);
    if (auto it = satisfied.find(key); it != satisfied.end()) {
      const auto& prev = out.log[it->second];
      if (prev.margin < ExtRational(tol)) {
        e.clause = Clause::Existing;
        e.g = prev.g;
        e.m = prev.m;
        e.margin = prev.margin;
        e.note = "reused step " + std::to_string(prev.step);
        out.log.push_back(std::move(e));
        continue;
      }
    }

    SearchOptions so{true, opts.budget};
    for (std::size_t m = r.level; m < t.size() && !e.g; ++m) {
      auto bond = t.bond(c, r.level, m);
      if (auto g = c.search_absorb(f, bond, tol, so); g && g->is_small()) {
        auto margin = core::rho(c, core::compose(c, *g, f), bond);
        if (margin < ExtRational(tol)) {
          e.clause = Clause::Existing;
          e.g = *g;
          e.m = m;
          e.margin = margin;
        }
      }
    }
    if (!e.g) {
      auto bond = t.bond(c, r.level, t.last());
      auto span = c.amalgamate(f, bond, tol);
      if (!instance_admits(c, span.right.cod)) {
        e.clause = Clause::Skipped;
        e.note = "amalgam exceeds instance cap";
        out.log.push_back(std::move(e));
        continue;
      }
      if (!span.right.is_small() || !span.left.is_small()) throw BuildError(c.tag() + ": amalgam legs are not small");
      t.push(span.right);
      e.clause = Clause::Appended;
      e.g = span.left;
      e.m = t.last();
      e.margin = core::rho(c, core::compose(c, span.left, f), t.bond(c, r.level, t.last()));
      if (!(e.margin < ExtRational(tol))) {
        throw BuildError(c.tag() + ": amalgamation missed tolerance 1/" + std::to_string(r.k) + " at step " +
                         std::to_string(step));
      }
    }
    satisfied[key] = out.log.size();
    out.log.push_back(std::move(e));
  }
  return out;
}

/// Outcome of replaying a build log against its tower.
struct ReplayReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// Independent replay: regenerates every requirement arrow from the
/// enumeration and recomputes every margin from the stored arrows.
template <class C>
ReplayReport replay_log(const C& c, const BuildResult<C>& b) {
  ReplayReport rep;
  auto fail = [&](std::size_t step, const std::string& why) {
    rep.ok = false;
    rep.failures.push_back("step " + std::to_string(step) + ": " + why);
  };
  const auto& t = b.tower;
  for (const auto& e : b.log) {
    try {
      if (e.clause == Clause::Skipped) continue;
      if (!e.g || e.m >= t.size()) {
        fail(e.step, "missing witness");
        continue;
      }
      if (!e.g->is_small()) fail(e.step, "witness is not small");
      if (!(e.g->cod == t.object(e.m))) fail(e.step, "witness does not land in x_m");
      if (e.clause == Clause::Object) {
        if (!(e.g->dom == c.dominating_object(e.object_rank))) fail(e.step, "object mismatch");
        ++rep.checked;
        continue;
      }
      if (!e.f || e.req.level >= t.size() || e.m < e.req.level) {
        fail(e.step, "bad requirement data");
        continue;
      }
      if (!(*e.f == c.dominating_arrow(t.object(e.req.level), e.req.rank))) fail(e.step, "arrow not reproducible");
      auto margin = core::rho(c, core::compose(c, *e.g, *e.f), t.bond(c, e.req.level, e.m));
      if (!(margin == e.margin)) fail(e.step, "margin differs from log");
      if (!(margin < ExtRational(Q(Z(1), Z(e.req.k))))) fail(e.step, "margin not below 1/k");
      ++rep.checked;
    } catch (const std::exception& ex) {
      fail(e.step, ex.what());
    }
  }
  return rep;
}

}  // namespace fraisse::engine
