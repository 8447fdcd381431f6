#pragma once

#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "relroots/multigraph.hpp"
#include "relroots/poly.hpp"

namespace relroots {

// Coefficient sequences of the two reliability expansions:
//   Rel(G) = sum_i F_i q^i (1-q)^{m-i}      (F-form)
//          = (1-q)^{n-1} sum_i H_i q^i      (H-form)
// Both have length d+1 where d = m-n+1 is the corank.
struct FVector {
    std::vector<Int> entries;
    bool operator==(const FVector&) const = default;
};

struct HVector {
    std::vector<Int> entries;
    bool operator==(const HVector&) const = default;
};

// Exact linear transforms between the two bases; inverse of one another.
// f_to_h throws integrity_error if an intermediate goes negative (the input
// was not a valid F-vector).
HVector f_to_h(const FVector& f);
FVector h_to_f(const HVector& h);

// Sharded LRU cache from canonical keys to polynomials. Shared caching is an
// optimization only; results are exact functions of the key.
class PolyMemo {
public:
    explicit PolyMemo(std::size_t capacity);

    std::optional<Poly> get(const std::string& key);
    void put(const std::string& key, const Poly& value);
    std::size_t entry_count() const;

private:
    struct Shard {
        mutable std::mutex mu;
        std::list<std::pair<std::string, Poly>> lru;  // front = most recent
        std::unordered_map<std::string, std::list<std::pair<std::string, Poly>>::iterator> index;
    };
    Shard& shard_for(const std::string& key);

    static constexpr std::size_t kShards = 16;
    std::vector<Shard> shards_;
    std::size_t per_shard_capacity_;
};

// Deletion-contraction engine with loop removal, decomposition into
// biconnected blocks, the bundle identity for parallel classes, a closed
// form for cycle-skeleton blocks, and memoization keyed on canonical_key.
// Methods are safe to call from multiple threads.
class ReliabilityEngine {
public:
    explicit ReliabilityEngine(std::size_t cache_capacity = 1u << 18);

    // Exact reliability polynomial; the zero polynomial iff G is disconnected.
    Poly reliability(const Multigraph& g);

private:
    Poly block_rel(const Multigraph& block);

    PolyMemo memo_;
};

// One-shot convenience around a private engine.
Poly reliability_poly(const Multigraph& g);

// Independent oracle: F_i = #{S subset of E : |S| = i, G - S connected} by
// exhaustive subset enumeration. Requires G connected and m <= 25.
FVector f_vector_bruteforce(const Multigraph& g);

// Re-expands a reliability polynomial in the F-form basis by forward
// substitution (independent of the F<->H transforms). m is the edge count,
// d the corank; entries beyond d must come out zero.
FVector f_vector_from_poly(const Poly& rel, int m, int d);

// Exact division of Rel(G) by (1-q)^{n-1}; integrity_error on any nonzero
// remainder. Entries padded to length d+1.
HVector h_vector(const Multigraph& g);
HVector h_vector(const Multigraph& g, ReliabilityEngine& engine);

Rat eval_exact(const Poly& p, const Rat& q0);

// Closed forms for tree, cycle, bundle and pendant-cycle families; theta and
// two-cycles have none here and raise std::domain_error (use the engine).
Poly closed_form(const FamilySpec& spec);

// Matrix-tree spanning tree count (Bareiss fraction-free elimination);
// independent of the deletion-contraction engine.
Int spanning_tree_count(const Multigraph& g);

}  // namespace relroots
