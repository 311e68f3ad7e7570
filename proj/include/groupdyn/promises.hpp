#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupdyn {

using AgentId = std::string;
using Topic = std::string;

enum class Polarity { offer, accept };

inline char polarity_sign(Polarity p) {
  return p == Polarity::offer ? '+' : '-';
}

/// One signed promise term: an offer (+) or acceptance (-) of a topic set,
/// optionally conditional on another topic. Conditions mark assistance
/// dependencies and attach to offers only; the dual of a conditional offer
/// is a plain acceptance paired with the reciprocal offer.
struct PromiseBody {
  Polarity polarity;
  std::vector<Topic> topics;  // sorted, unique, non-empty
  std::optional<Topic> condition;

  PromiseBody(Polarity polarity_, std::vector<Topic> topics_,
              std::optional<Topic> condition_ = std::nullopt)
      : polarity(polarity_),
        topics(std::move(topics_)),
        condition(std::move(condition_)) {
    if (topics.empty()) throw std::invalid_argument("body needs >= 1 topic");
    std::sort(topics.begin(), topics.end());
    topics.erase(std::unique(topics.begin(), topics.end()), topics.end());
    if (condition && polarity != Polarity::offer) {
      throw std::invalid_argument("only offers may carry a condition");
    }
  }

  auto operator<=>(const PromiseBody&) const = default;
};

inline PromiseBody offer(Topic topic) {
  return {Polarity::offer, {std::move(topic)}};
}

inline PromiseBody offer_given(Topic topic, Topic condition) {
  return {Polarity::offer, {std::move(topic)}, std::move(condition)};
}

inline PromiseBody accept(Topic topic) {
  return {Polarity::accept, {std::move(topic)}};
}

/// A directed promise arrow. The body may bundle several signed terms
/// ("-Y, +X" style); bundles compare as sets.
struct Promise {
  AgentId from;
  AgentId to;
  std::vector<PromiseBody> body;

  Promise(AgentId from_, AgentId to_, std::vector<PromiseBody> body_)
      : from(std::move(from_)), to(std::move(to_)), body(std::move(body_)) {
    if (from == to) {
      throw std::invalid_argument("self-promises are not representable");
    }
    if (body.empty()) throw std::invalid_argument("promise needs a body");
    std::sort(this->body.begin(), this->body.end());
  }

  auto operator<=>(const Promise&) const = default;
};

/// A transient demand; same shape as a promise plus an event ordinal.
struct Imposition {
  AgentId from;
  AgentId to;
  PromiseBody body;
  std::uint64_t timestamp;

  Imposition(AgentId from_, AgentId to_, PromiseBody body_,
             std::uint64_t timestamp_)
      : from(std::move(from_)),
        to(std::move(to_)),
        body(std::move(body_)),
        timestamp(timestamp_) {
    if (from == to) {
      throw std::invalid_argument("self-impositions are not representable");
    }
  }
};

struct PromiseGraph {
  std::set<AgentId> agents;
  std::vector<Promise> promises;         // kept sorted and unique
  std::vector<Imposition> impositions;   // ordered by arrival

  void add_agent(AgentId id) { agents.insert(std::move(id)); }

  void add_promise(Promise p) {
    require_members(p.from, p.to);
    const auto pos = std::lower_bound(promises.begin(), promises.end(), p);
    if (pos == promises.end() || *pos != p) promises.insert(pos, std::move(p));
  }

  void add_imposition(Imposition imp) {
    require_members(imp.from, imp.to);
    impositions.push_back(std::move(imp));
  }

 private:
  void require_members(const AgentId& a, const AgentId& b) const {
    if (!agents.contains(a) || !agents.contains(b)) {
      throw std::invalid_argument("promise endpoints must be graph agents");
    }
  }
};

/// Strength of the binding between an offer +b and an acceptance -b':
/// |b intersect b'| / |b|. 1 for a full topic match, 0 for disjoint intent.
inline double binding_strength(const PromiseBody& offered,
                               const PromiseBody& accepted) {
  if (offered.polarity != Polarity::offer ||
      accepted.polarity != Polarity::accept) {
    throw std::invalid_argument(
        "binding_strength pairs an offer with an acceptance");
  }
  std::vector<Topic> overlap;
  std::set_intersection(offered.topics.begin(), offered.topics.end(),
                        accepted.topics.begin(), accepted.topics.end(),
                        std::back_inserter(overlap));
  return static_cast<double>(overlap.size()) /
         static_cast<double>(offered.topics.size());
}

/// Expands the shorthand +X(Y): giver promises X conditional on receiving Y,
/// and separately promises to accept Y. Two promises, same direction.
inline std::vector<Promise> conditional_promise(const AgentId& giver,
                                                const AgentId& receiver,
                                                const Topic& x,
                                                const Topic& y) {
  if (giver == receiver) {
    throw std::invalid_argument("conditional promise needs distinct agents");
  }
  return {Promise{giver, receiver, {offer_given(x, y)}},
          Promise{giver, receiver, {accept(y)}}};
}

/// The six-promise cooperation triangle: two agents align through a seed.
/// Complementary bundles bind every pair; swapping (a1, a2) together with
/// (x, y) maps the graph onto itself.
inline PromiseGraph cooperation_triangle(const AgentId& a1, const AgentId& a2,
                                         const AgentId& seed, const Topic& x,
                                         const Topic& y) {
  if (a1 == a2 || a1 == seed || a2 == seed) {
    throw std::invalid_argument("triangle needs three distinct agents");
  }
  PromiseGraph g;
  g.add_agent(a1);
  g.add_agent(a2);
  g.add_agent(seed);
  g.add_promise({a1, seed, {offer_given(x, y), accept(y)}});   // +X(Y)
  g.add_promise({a1, a2, {accept(y), offer(x)}});              // -Y, +X
  g.add_promise({a2, a1, {offer(y), accept(x)}});              // +Y, -X
  g.add_promise({a2, seed, {offer_given(y, x), accept(x)}});   // +Y(X)
  g.add_promise({seed, a1, {accept(x), offer(y)}});            // -X(Y)
  g.add_promise({seed, a2, {accept(y), offer(x)}});            // -Y(X)
  return g;
}

enum class Topology { hub, triangle, mesh };

/// Relationship count a coordination topology has to maintain: a hub grooms
/// n-1 ties, a full mesh n(n-1)/2, the three-agent triangle exactly six
/// directed promises.
inline std::int64_t coordination_cost(Topology topology, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("coordination needs n >= 2");
  switch (topology) {
    case Topology::hub:
      return n - 1;
    case Topology::mesh:
      return n * (n - 1) / 2;
    case Topology::triangle:
      if (n != 3) {
        throw std::invalid_argument("triangle cost is defined for n = 3");
      }
      return 6;
  }
  throw std::logic_error("unreachable");
}

}  // namespace groupdyn
