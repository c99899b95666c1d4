#pragma once

#include <cstdint>
#include <vector>

namespace metriq {

// Element of a finite abelian group, one coordinate per cyclic factor.
using GroupElem = std::vector<std::int64_t>;

// Finite abelian group presented as a product of cyclic groups Z_{orders[i]}.
// Elements are coordinate vectors; the linear index runs in mixed radix with
// the last coordinate fastest.
struct FinAbGroup {
    std::vector<std::int64_t> orders;

    std::size_t rank() const { return orders.size(); }
    std::int64_t size() const;

    GroupElem zero() const { return GroupElem(orders.size(), 0); }
    bool is_valid(const GroupElem& e) const;
    GroupElem reduce(const GroupElem& e) const; // coordinates mod orders
    GroupElem add(const GroupElem& a, const GroupElem& b) const;
    GroupElem neg(const GroupElem& a) const;
    GroupElem mul(const GroupElem& a, std::int64_t k) const;

    std::int64_t index_of(const GroupElem& e) const;
    GroupElem element_at(std::int64_t index) const;
    std::int64_t order_of(const GroupElem& e) const;

    bool operator==(const FinAbGroup& rhs) const { return orders == rhs.orders; }
};

// Subgroup of `parent`, stored extensionally with a canonical generator list
// (greedy over elements in index order) for deterministic serialization.
struct Subgroup {
    FinAbGroup parent;
    std::vector<GroupElem> generators;
    std::vector<std::int64_t> element_indices; // sorted

    std::int64_t order() const { return static_cast<std::int64_t>(element_indices.size()); }
    bool contains_index(std::int64_t idx) const;
    bool contains(const GroupElem& e) const;
};

// Closure of a generating set under the group operation.
Subgroup subgroup_generated(const FinAbGroup& g, const std::vector<GroupElem>& gens);

// Wrap an addition-closed, sorted index set as a Subgroup (closure asserted).
Subgroup subgroup_from_indices(const FinAbGroup& g, std::vector<std::int64_t> sorted_indices);

// Every subgroup, sorted by order and then by the canonical generator list.
// Throws TooLargeError when |g| exceeds the bound.
std::vector<Subgroup> all_subgroups(const FinAbGroup& g, std::int64_t bound = 4096);

// Quotient g/h in invariant factor form together with the coset map.
struct QuotientResult {
    FinAbGroup quotient;              // orders form a divisibility chain
    std::vector<GroupElem> image_of;  // image of every element of g, by index
};

QuotientResult quotient(const FinAbGroup& g, const Subgroup& h);

// Invariant factor form of the group itself (quotient by the trivial subgroup).
FinAbGroup normalized(const FinAbGroup& g);

} // namespace metriq
