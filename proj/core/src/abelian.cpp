#include "metriq/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "metriq/errors.hpp"
#include "metriq/snf.hpp"

namespace metriq {

std::int64_t FinAbGroup::size() const {
    std::int64_t n = 1;
    for (std::int64_t o : orders) {
        if (o < 1)
            throw InvalidInputError("group orders must be >= 1");
        if (n > (1LL << 40) / o)
            throw TooLargeError("group order exceeds 2^40");
        n *= o;
    }
    return n;
}

bool FinAbGroup::is_valid(const GroupElem& e) const {
    if (e.size() != orders.size())
        return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 || e[i] >= orders[i])
            return false;
    return true;
}

GroupElem FinAbGroup::reduce(const GroupElem& e) const {
    if (e.size() != orders.size())
        throw InvalidInputError("element has wrong number of coordinates");
    GroupElem out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        out[i] = e[i] % orders[i];
        if (out[i] < 0)
            out[i] += orders[i];
    }
    return out;
}

GroupElem FinAbGroup::add(const GroupElem& a, const GroupElem& b) const {
    if (a.size() != orders.size() || b.size() != orders.size())
        throw InvalidInputError("element has wrong number of coordinates");
    GroupElem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (a[i] + b[i]) % orders[i];
    return out;
}

GroupElem FinAbGroup::neg(const GroupElem& a) const {
    GroupElem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = (orders[i] - a[i]) % orders[i];
    return out;
}

GroupElem FinAbGroup::mul(const GroupElem& a, std::int64_t k) const {
    GroupElem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t c = (a[i] % orders[i]) * (k % orders[i]) % orders[i];
        out[i] = c < 0 ? c + orders[i] : c;
    }
    return out;
}

std::int64_t FinAbGroup::index_of(const GroupElem& e) const {
    if (!is_valid(e))
        throw InvalidInputError("element out of range for group");
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        idx = idx * orders[i] + e[i];
    return idx;
}

GroupElem FinAbGroup::element_at(std::int64_t index) const {
    GroupElem e(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
        e[i] = index % orders[i];
        index /= orders[i];
    }
    if (index != 0)
        throw InvalidInputError("element index out of range");
    return e;
}

std::int64_t FinAbGroup::order_of(const GroupElem& e) const {
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        std::int64_t oi = orders[i] / std::gcd(orders[i], e[i]);
        ord = std::lcm(ord, oi);
    }
    return ord;
}

bool Subgroup::contains_index(std::int64_t idx) const {
    return std::binary_search(element_indices.begin(), element_indices.end(), idx);
}

bool Subgroup::contains(const GroupElem& e) const {
    return contains_index(parent.index_of(parent.reduce(e)));
}

namespace {

// Closure of a set of element indices under addition.
std::vector<std::int64_t> close_under_addition(const FinAbGroup& g,
                                               const std::vector<GroupElem>& gens) {
    std::set<std::int64_t> seen;
    std::vector<GroupElem> frontier;
    seen.insert(g.index_of(g.zero()));
    frontier.push_back(g.zero());
    std::vector<GroupElem> reduced;
    reduced.reserve(gens.size());
    for (const auto& gen : gens)
        reduced.push_back(g.reduce(gen));
    while (!frontier.empty()) {
        GroupElem x = std::move(frontier.back());
        frontier.pop_back();
        for (const auto& gen : reduced) {
            GroupElem y = g.add(x, gen);
            if (seen.insert(g.index_of(y)).second)
                frontier.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

// Subgroup generated by a subgroup (sorted index list) and one extra element:
// the union of the cosets closed + j*x.  Much cheaper than a full reclosure.
std::vector<std::int64_t> extend_closed(const FinAbGroup& g,
                                        const std::vector<std::int64_t>& closed,
                                        const GroupElem& x) {
    std::set<std::int64_t> out(closed.begin(), closed.end());
    GroupElem shift = g.reduce(x);
    while (!std::binary_search(closed.begin(), closed.end(), g.index_of(shift))) {
        for (std::int64_t idx : closed)
            out.insert(g.index_of(g.add(g.element_at(idx), shift)));
        shift = g.add(shift, g.reduce(x));
    }
    return {out.begin(), out.end()};
}

// Greedy canonical generators: scan elements in index order, keep those that
// enlarge the generated subgroup.
std::vector<GroupElem> canonical_generators(const FinAbGroup& g,
                                            const std::vector<std::int64_t>& element_indices) {
    std::vector<GroupElem> gens;
    std::vector<std::int64_t> have{g.index_of(g.zero())};
    for (std::int64_t idx : element_indices) {
        if (std::binary_search(have.begin(), have.end(), idx))
            continue;
        gens.push_back(g.element_at(idx));
        have = extend_closed(g, have, gens.back());
    }
    return gens;
}

} // namespace

Subgroup subgroup_generated(const FinAbGroup& g, const std::vector<GroupElem>& gens) {
    Subgroup s;
    s.parent = g;
    s.element_indices = close_under_addition(g, gens);
    s.generators = canonical_generators(g, s.element_indices);
    return s;
}

Subgroup subgroup_from_indices(const FinAbGroup& g, std::vector<std::int64_t> sorted_indices) {
    Subgroup s;
    s.parent = g;
    s.element_indices = std::move(sorted_indices);
    s.generators = canonical_generators(g, s.element_indices);
    std::vector<GroupElem> gens = s.generators;
    if (close_under_addition(g, gens) != s.element_indices)
        throw AssertionFailedError("subgroup_from_indices: set is not closed under addition");
    return s;
}

std::vector<Subgroup> all_subgroups(const FinAbGroup& g, std::int64_t bound) {
    const std::int64_t n = g.size();
    if (n > bound)
        throw TooLargeError("subgroup enumeration bound exceeded: |G| = " + std::to_string(n) +
                            " > " + std::to_string(bound));
    // Breadth-first closure of the subgroup lattice: repeatedly extend known
    // subgroups by one element.
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> work;
    std::vector<std::int64_t> trivial{g.index_of(g.zero())};
    seen.insert(trivial);
    work.push_back(trivial);
    while (!work.empty()) {
        std::vector<std::int64_t> current = std::move(work.back());
        work.pop_back();
        for (std::int64_t idx = 0; idx < n; ++idx) {
            if (std::binary_search(current.begin(), current.end(), idx))
                continue;
            std::vector<std::int64_t> bigger = extend_closed(g, current, g.element_at(idx));
            if (seen.insert(bigger).second)
                work.push_back(bigger);
        }
    }
    std::vector<Subgroup> result;
    result.reserve(seen.size());
    for (const auto& elems : seen) {
        Subgroup s;
        s.parent = g;
        s.element_indices = elems;
        s.generators = canonical_generators(g, elems);
        result.push_back(std::move(s));
    }
    std::sort(result.begin(), result.end(), [&](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        std::vector<std::int64_t> ga, gb;
        for (const auto& e : a.generators)
            ga.push_back(g.index_of(e));
        for (const auto& e : b.generators)
            gb.push_back(g.index_of(e));
        return ga < gb;
    });
    return result;
}

QuotientResult quotient(const FinAbGroup& g, const Subgroup& h) {
    if (!(h.parent == g))
        throw InvalidInputError("quotient: subgroup belongs to a different group");
    const std::size_t k = g.rank();
    // Column lattice spanned by the relation lattice of g and the generators
    // of h; the quotient of Z^k by it is g/h.
    IMat a(k, IVec(k + h.generators.size(), 0));
    for (std::size_t i = 0; i < k; ++i)
        a[i][i] = g.orders[i];
    for (std::size_t j = 0; j < h.generators.size(); ++j) {
        GroupElem gen = g.reduce(h.generators[j]);
        for (std::size_t i = 0; i < k; ++i)
            a[i][k + j] = gen[i];
    }
    SmithResult s = smith_normal_form(a);

    QuotientResult out;
    std::vector<std::size_t> kept; // indices with d_i > 1
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class d = s.D[i][i];
        if (d > 1) {
            kept.push_back(i);
            out.quotient.orders.push_back(static_cast<std::int64_t>(d.get_si()));
        }
    }
    const std::int64_t n = g.size();
    out.image_of.reserve(static_cast<std::size_t>(n));
    std::set<std::vector<std::int64_t>> distinct;
    for (std::int64_t idx = 0; idx < n; ++idx) {
        GroupElem e = g.element_at(idx);
        IVec v(k);
        for (std::size_t i = 0; i < k; ++i)
            v[i] = e[i];
        IVec y = mat_vec(s.U, v);
        GroupElem img(kept.size());
        for (std::size_t t = 0; t < kept.size(); ++t) {
            mpz_class d = s.D[kept[t]][kept[t]];
            mpz_class c = y[kept[t]] % d;
            if (c < 0)
                c += d;
            img[t] = static_cast<std::int64_t>(c.get_si());
        }
        distinct.insert(img);
        out.image_of.push_back(std::move(img));
    }
    if (static_cast<std::int64_t>(distinct.size()) * h.order() != n)
        throw AssertionFailedError("quotient: coset map has wrong image size");
    for (std::int64_t idx : h.element_indices)
        for (std::int64_t c : out.image_of[static_cast<std::size_t>(idx)])
            if (c != 0)
                throw AssertionFailedError("quotient: subgroup does not map to zero");
    return out;
}

FinAbGroup normalized(const FinAbGroup& g) {
    Subgroup trivial;
    trivial.parent = g;
    trivial.element_indices = {g.index_of(g.zero())};
    return quotient(g, trivial).quotient;
}

} // namespace metriq
