#include "owlmat/materializer.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>
#include <thread>

#include "owlmat/log.hpp"

namespace owlmat {

namespace {

template <typename T>
void sort_unique(std::vector<T> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string describe(const TermStore &store, TermId id) {
  std::ostringstream os;
  write_term(os, store.resolve(id));
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::optional<std::size_t> ABox::position(TermId instance) const {
  auto it = std::lower_bound(instances.begin(), instances.end(), instance);
  if (it == instances.end() || *it != instance) return std::nullopt;
  return static_cast<std::size_t>(it - instances.begin());
}

ABox load_abox(std::span<const Triple> triples, const TBoxIndex &tbox, const TermStore &store,
               const Vocabulary &vocab) {
  std::vector<TermId> restriction_properties;
  for (const auto &r : tbox.restrictions()) restriction_properties.push_back(r.property);
  sort_unique(restriction_properties);

  ABox abox;
  std::vector<std::pair<TermId, TermId>> typed;
  std::vector<TermId> undeclared;
  for (const Triple &t : triples) {
    if (t.predicate != vocab.rdf_type) {
      if (std::binary_search(restriction_properties.begin(), restriction_properties.end(), t.predicate))
        abox.asserted_properties.push_back(t);
      continue;
    }
    if (t.object == vocab.owl_named_individual) {
      abox.instances.push_back(t.subject);
      continue;
    }
    const Term &cls = store.resolve(t.object);
    if (cls.is_literal()) throw ABoxError("typing by a literal: " + describe(store, t.subject));
    if (tbox.is_restriction_anchor(t.object))
      throw ABoxError("typing by restriction anchor " + describe(store, t.object) + " for " +
                      describe(store, t.subject));
    if (cls.is_blank())
      throw ABoxError("typing by blank node " + describe(store, t.object) + " for " + describe(store, t.subject));
    if (t.object != vocab.owl_thing && iri::is_builtin(cls.value)) continue;
    if (!tbox.is_named_class(t.object)) undeclared.push_back(t.object);
    typed.emplace_back(t.subject, t.object);
    abox.instances.push_back(t.subject);
  }

  if (!undeclared.empty()) {
    sort_unique(undeclared);
    warn(std::to_string(undeclared.size()) + " class(es) used for typing are not in the terminology, e.g. " +
         describe(store, undeclared.front()));
  }

  sort_unique(abox.instances);
  sort_unique(typed);
  sort_unique(abox.asserted_properties);

  abox.type_offsets.assign(abox.instances.size() + 1, 0);
  abox.direct_types.reserve(typed.size());
  std::size_t pos = 0;
  for (const auto &[inst, cls] : typed) {
    while (abox.instances[pos] != inst) ++pos;
    ++abox.type_offsets[pos + 1];
    abox.direct_types.push_back(cls);
  }
  for (std::size_t i = 0; i < abox.instances.size(); ++i) abox.type_offsets[i + 1] += abox.type_offsets[i];
  return abox;
}

// ---------------------------------------------------------------------------

namespace {

struct Shard {
  std::vector<TypeAssertion> types;
  std::vector<PropertyAssertion> objects;
  std::vector<PropertyAssertion> data;
};

class InstanceWorker {
 public:
  InstanceWorker(const ABox &abox, const TBoxIndex &tbox, bool dedup) : abox_(abox), tbox_(tbox), dedup_(dedup) {}

  void run(std::size_t begin, std::size_t end, Shard &out) {
    for (std::size_t i = begin; i < end; ++i) instance(i, out);
  }

 private:
  struct Hit {
    TermId property;
    TermId value;
    RestrictionKind kind;
    friend constexpr auto operator<=>(const Hit &, const Hit &) = default;
  };

  void instance(std::size_t i, Shard &out) {
    const TermId x = abox_.instances[i];
    auto direct = abox_.types_of(i);
    if (direct.empty()) return;

    // Type rule: superclass closures of the direct types, minus the direct types.
    closure_.clear();
    for (TermId c : direct) {
      auto up = tbox_.superclass_closure(c);
      closure_.insert(closure_.end(), up.begin(), up.end());
    }
    sort_unique(closure_);
    inferred_.clear();
    std::set_difference(closure_.begin(), closure_.end(), direct.begin(), direct.end(),
                        std::back_inserter(inferred_));
    for (TermId c : inferred_) out.types.push_back({x, c});

    // Restriction rules over direct and inferred types.
    hits_.clear();
    auto collect = [&](TermId c) {
      for (const Restriction &r : tbox_.direct_restrictions(c)) hits_.push_back({r.property, r.value, r.kind});
    };
    for (TermId c : direct) collect(c);
    for (TermId c : inferred_) collect(c);
    sort_unique(hits_);
    for (const Hit &h : hits_) {
      if (dedup_ && std::binary_search(abox_.asserted_properties.begin(), abox_.asserted_properties.end(),
                                       Triple{x, h.property, h.value}))
        continue;
      (h.kind == RestrictionKind::object ? out.objects : out.data).push_back({x, h.property, h.value});
    }
  }

  const ABox &abox_;
  const TBoxIndex &tbox_;
  bool dedup_;
  std::vector<TermId> closure_, inferred_;
  std::vector<Hit> hits_;
};

template <typename T>
void append(std::vector<T> &to, const std::vector<T> &from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

InferenceResult materialize(const ABox &abox, const TBoxIndex &tbox, const MaterializeOptions &options) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t block = std::max<std::size_t>(1, options.block_size);
  const std::size_t n = abox.size();

  InferenceResult result;
  result.streamed = options.sink != nullptr;

  std::vector<Shard> shards(threads);
  std::vector<InstanceWorker> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) workers.emplace_back(abox, tbox, options.dedup_against_input);

  for (std::size_t wave = 0; wave < n; wave += block * threads) {
    if (options.check_cancel) options.check_cancel();
    for (auto &s : shards) {
      s.types.clear();
      s.objects.clear();
      s.data.clear();
    }
    auto range = [&](unsigned t) {
      std::size_t b = std::min(n, wave + t * block);
      return std::pair{b, std::min(n, b + block)};
    };
    if (threads == 1) {
      auto [b, e] = range(0);
      workers[0].run(b, e, shards[0]);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        auto [b, e] = range(t);
        if (b == e) break;
        pool.emplace_back([&, t, b, e] { workers[t].run(b, e, shards[t]); });
      }
    }
    // Shards cover consecutive instance ranges, so concatenation stays sorted.
    for (const Shard &s : shards) {
      result.stats.n_transitive_types += s.types.size();
      result.stats.n_individual_assertions += s.objects.size();
      result.stats.n_literal_assertions += s.data.size();
      if (options.sink) {
        options.sink->types(s.types);
        options.sink->object_assertions(s.objects);
        options.sink->data_assertions(s.data);
      } else {
        append(result.types, s.types);
        append(result.object_assertions, s.objects);
        append(result.data_assertions, s.data);
      }
    }
  }
  result.stats.t_materialize_s = seconds_since(start);
  return result;
}

MaterializationStats count_stats(const InferenceResult &result) {
  MaterializationStats stats = result.stats;
  if (result.streamed) return stats;
  stats.n_transitive_types = result.types.size();
  stats.n_individual_assertions = result.object_assertions.size();
  stats.n_literal_assertions = result.data_assertions.size();
  if (stats.n_transitive_types != result.stats.n_transitive_types ||
      stats.n_individual_assertions != result.stats.n_individual_assertions ||
      stats.n_literal_assertions != result.stats.n_literal_assertions)
    throw std::logic_error("materialization counts disagree with result sets");
  return stats;
}

std::vector<Violation> check_consistency(const ABox &abox, const InferenceResult &result,
                                         std::span<const ClassPair> disjoint, const TBoxIndex &tbox) {
  std::vector<Violation> out;
  if (disjoint.empty()) return out;
  std::vector<ClassPair> pairs(disjoint.begin(), disjoint.end());
  sort_unique(pairs);

  auto generality = [&](const ClassPair &p) {
    return tbox.superclass_closure(p.first).size() + tbox.superclass_closure(p.second).size();
  };

  std::vector<TermId> all;
  std::size_t cursor = 0;  // into result.types, which is sorted by instance
  for (std::size_t i = 0; i < abox.size(); ++i) {
    const TermId x = abox.instances[i];
    auto direct = abox.types_of(i);
    all.assign(direct.begin(), direct.end());
    if (result.streamed) {
      for (TermId c : direct) {
        auto up = tbox.superclass_closure(c);
        all.insert(all.end(), up.begin(), up.end());
      }
    } else {
      while (cursor < result.types.size() && result.types[cursor].instance < x) ++cursor;
      for (; cursor < result.types.size() && result.types[cursor].instance == x; ++cursor)
        all.push_back(result.types[cursor].cls);
    }
    sort_unique(all);

    std::optional<ClassPair> best;
    std::size_t hits = 0;
    for (TermId a : all) {
      auto lo = std::lower_bound(pairs.begin(), pairs.end(), ClassPair{a, TermId(0)});
      for (; lo != pairs.end() && lo->first == a; ++lo) {
        if (!std::binary_search(all.begin(), all.end(), lo->second)) continue;
        ++hits;
        if (!best || std::pair(generality(*lo), *lo) < std::pair(generality(*best), *best)) best = *lo;
      }
    }
    if (best) out.push_back({x, best->first, best->second, hits});
  }
  return out;
}

void NTriplesInferenceSink::types(std::span<const TypeAssertion> batch) {
  for (const auto &a : batch) types_.write(Triple{a.instance, rdf_type_, a.cls});
}

void NTriplesInferenceSink::object_assertions(std::span<const PropertyAssertion> batch) {
  for (const auto &a : batch) objects_.write(Triple{a.instance, a.property, a.value});
}

void NTriplesInferenceSink::data_assertions(std::span<const PropertyAssertion> batch) {
  for (const auto &a : batch) data_.write(Triple{a.instance, a.property, a.value});
}

void write_inferences(const InferenceResult &result, const TermStore &store, TermId rdf_type, std::ostream &types,
                      std::ostream &objects, std::ostream &data) {
  NTriplesInferenceSink sink(store, rdf_type, types, objects, data);
  sink.types(result.types);
  sink.object_assertions(result.object_assertions);
  sink.data_assertions(result.data_assertions);
}

}  // namespace owlmat
