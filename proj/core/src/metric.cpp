#include "metriq/metric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "metriq/errors.hpp"
#include "metriq/snf.hpp"

namespace metriq {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

std::string elem_str(const GroupElem& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(e[i]);
    }
    return s + ")";
}

// Coordinate unit vectors of the presentation, used as generating sets.
std::vector<GroupElem> unit_vectors(const FinAbGroup& g) {
    std::vector<GroupElem> units;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (g.orders[i] == 1)
            continue;
        GroupElem e = g.zero();
        e[i] = 1;
        units.push_back(std::move(e));
    }
    return units;
}

} // namespace

std::int64_t form_modulus(const std::vector<std::int64_t>& orders) {
    std::int64_t l = 1;
    for (std::int64_t o : orders) {
        if (o < 1)
            throw InvalidInputError("group orders must be >= 1");
        l = std::lcm(l, o);
    }
    return 2 * l;
}

MetricGroup make_metric_group(std::vector<std::int64_t> orders, std::vector<std::int64_t> q_exp) {
    MetricGroup m;
    m.group.orders = std::move(orders);
    m.modulus = form_modulus(m.group.orders);
    if (static_cast<std::int64_t>(q_exp.size()) != m.group.size())
        throw InvalidInputError("form table size does not match the group order");
    m.q_exp.reserve(q_exp.size());
    for (std::int64_t e : q_exp)
        m.q_exp.push_back(mod_reduce(e, m.modulus));
    return m;
}

std::int64_t MetricGroup::q_exponent(std::int64_t index) const {
    if (index < 0 || index >= static_cast<std::int64_t>(q_exp.size()))
        throw InvalidInputError("element index out of range");
    return q_exp[static_cast<std::size_t>(index)];
}

std::int64_t MetricGroup::q_exponent(const GroupElem& e) const {
    return q_exponent(group.index_of(group.reduce(e)));
}

Cyclotomic MetricGroup::q_value(const GroupElem& e) const {
    return Cyclotomic::root_of_unity(modulus, q_exponent(e));
}

std::int64_t bilinear_exp(const MetricGroup& m, const GroupElem& g, const GroupElem& h) {
    return mod_reduce(m.q_exponent(m.group.add(g, h)) - m.q_exponent(g) - m.q_exponent(h),
                      m.modulus);
}

Cyclotomic bilinear(const MetricGroup& m, const GroupElem& g, const GroupElem& h) {
    return Cyclotomic::root_of_unity(m.modulus, bilinear_exp(m, g, h));
}

ValidationReport validate_form(const MetricGroup& m) {
    const std::int64_t n = m.group.size();
    if (static_cast<std::int64_t>(m.q_exp.size()) != n || m.modulus != form_modulus(m.group.orders))
        return {false, "shape", {}};
    for (std::int64_t e : m.q_exp)
        if (e < 0 || e >= m.modulus)
            return {false, "shape", {}};
    if (m.q_exponent(m.group.zero()) != 0)
        return {false, "unit", {m.group.zero()}};
    for (std::int64_t i = 0; i < n; ++i) {
        GroupElem g = m.group.element_at(i);
        if (m.q_exponent(g) != m.q_exponent(m.group.neg(g)))
            return {false, "symmetry", {g}};
    }
    // q(k*g) = q(g)^{k^2}, including the wraparound cases.
    for (std::int64_t i = 0; i < n; ++i) {
        GroupElem g = m.group.element_at(i);
        std::int64_t ord = m.group.order_of(g);
        for (std::int64_t k = 0; k <= ord; ++k) {
            std::int64_t lhs = m.q_exponent(m.group.mul(g, k));
            std::int64_t rhs = mod_reduce(m.q_exponent(g) * mod_reduce(k * k, m.modulus), m.modulus);
            if (lhs != rhs)
                return {false, "power", {g, GroupElem{k}}};
        }
    }
    // Biadditivity of the polarization: checking against the coordinate unit
    // vectors suffices since b(g, -) additive on generators implies additive.
    for (const GroupElem& u : unit_vectors(m.group)) {
        for (std::int64_t i = 0; i < n; ++i) {
            GroupElem g = m.group.element_at(i);
            GroupElem gu = m.group.add(g, u);
            for (std::int64_t j = 0; j < n; ++j) {
                GroupElem h = m.group.element_at(j);
                std::int64_t lhs = bilinear_exp(m, gu, h);
                std::int64_t rhs =
                    mod_reduce(bilinear_exp(m, g, h) + bilinear_exp(m, u, h), m.modulus);
                if (lhs != rhs)
                    return {false, "bicharacter", {g, u, h}};
            }
        }
    }
    return {};
}

Subgroup radical(const MetricGroup& m) {
    const std::int64_t n = m.group.size();
    std::vector<GroupElem> units = unit_vectors(m.group);
    std::vector<std::int64_t> rad;
    for (std::int64_t i = 0; i < n; ++i) {
        GroupElem g = m.group.element_at(i);
        bool central = true;
        for (const GroupElem& u : units)
            if (bilinear_exp(m, g, u) != 0) {
                central = false;
                break;
            }
        if (central)
            rad.push_back(i);
    }
    return subgroup_from_indices(m.group, std::move(rad));
}

bool is_nondegenerate(const MetricGroup& m) { return radical(m).order() == 1; }

Cyclotomic gauss_sum(const MetricGroup& m) {
    std::map<std::int64_t, std::int64_t> counts;
    for (std::int64_t e : m.q_exp)
        ++counts[e];
    Cyclotomic tau = Cyclotomic::zero(m.modulus);
    for (const auto& [e, c] : counts)
        tau = tau + Cyclotomic::root_of_unity(m.modulus, e).scaled(mpq_class(c));
    if (is_nondegenerate(m) && !(tau * tau.conj() == Cyclotomic(m.group.size())))
        throw AssertionFailedError("gauss_sum: |tau|^2 != |G| for a nondegenerate form");
    return tau;
}

std::vector<Subgroup> isotropic_subgroups(const MetricGroup& m, std::int64_t bound) {
    std::vector<Subgroup> result;
    for (auto& s : all_subgroups(m.group, bound)) {
        bool isotropic = true;
        for (std::int64_t idx : s.element_indices)
            if (m.q_exp[static_cast<std::size_t>(idx)] != 0) {
                isotropic = false;
                break;
            }
        if (isotropic)
            result.push_back(std::move(s));
    }
    return result;
}

std::int64_t RibbonPointedData::theta_exponent(std::int64_t index) const {
    return mod_reduce(base.q_exponent(index) +
                          chi_exp.at(static_cast<std::size_t>(index)),
                      base.modulus);
}

std::int64_t RibbonPointedData::theta_exponent(const GroupElem& e) const {
    return theta_exponent(base.group.index_of(base.group.reduce(e)));
}

ValidationReport validate_ribbon(const RibbonPointedData& r) {
    ValidationReport base = validate_form(r.base);
    if (!base.ok)
        return base;
    const FinAbGroup& g = r.base.group;
    const std::int64_t n = g.size();
    const std::int64_t mmod = r.base.modulus;
    if (static_cast<std::int64_t>(r.chi_exp.size()) != n)
        return {false, "shape", {}};
    if (r.chi_exp[static_cast<std::size_t>(g.index_of(g.zero()))] != 0)
        return {false, "unit", {g.zero()}};
    auto chi = [&](const GroupElem& e) {
        return r.chi_exp[static_cast<std::size_t>(g.index_of(g.reduce(e)))];
    };
    for (const GroupElem& u : unit_vectors(g))
        for (std::int64_t i = 0; i < n; ++i) {
            GroupElem x = g.element_at(i);
            if (chi(g.add(x, u)) != mod_reduce(chi(x) + chi(u), mmod))
                return {false, "character", {x, u}};
        }
    for (std::int64_t i = 0; i < n; ++i) {
        GroupElem x = g.element_at(i);
        if (r.theta_exponent(x) != r.theta_exponent(g.neg(x)))
            return {false, "twist-duality", {x}};
    }
    return {};
}

namespace {

// Exponent of zeta_{m_from}^e rewritten as a power of zeta_{m_to} for
// m_to | m_from; the value must actually lie in the smaller cyclic group.
std::int64_t rescale_exponent(std::int64_t e, std::int64_t m_from, std::int64_t m_to) {
    std::int64_t step = m_from / m_to;
    if (e % step != 0)
        throw AssertionFailedError("induced value does not lie in the target root group");
    return mod_reduce(e / step, m_to);
}

CondensationResult condense_impl(const MetricGroup& m, const Subgroup& h,
                                 const std::optional<std::vector<std::int64_t>>& chi_in) {
    if (!(h.parent == m.group))
        throw InvalidInputError("condense: subgroup belongs to a different group");
    for (std::int64_t idx : h.element_indices)
        if (m.q_exp[static_cast<std::size_t>(idx)] != 0)
            throw NotIsotropicError("q is nontrivial at " +
                                    elem_str(m.group.element_at(idx)));

    const std::int64_t n = m.group.size();
    const bool nondeg = is_nondegenerate(m);

    CondensationResult out;
    out.is_lagrangian = nondeg && h.order() * h.order() == n;

    // H^perp: vanishing of b against the generators of H suffices.
    for (std::int64_t i = 0; i < n; ++i) {
        GroupElem g = m.group.element_at(i);
        bool perp = true;
        for (const GroupElem& gen : h.generators)
            if (bilinear_exp(m, g, gen) != 0) {
                perp = false;
                break;
            }
        if (perp)
            out.hperp_indices.push_back(i);
    }
    for (std::int64_t idx : h.element_indices)
        if (!std::binary_search(out.hperp_indices.begin(), out.hperp_indices.end(), idx))
            throw AssertionFailedError("condense: isotropic subgroup not inside its perp");
    if (nondeg &&
        static_cast<std::int64_t>(out.hperp_indices.size()) * h.order() != n)
        throw AssertionFailedError("condense: |Hperp| * |H| != |G| for a nondegenerate form");

    if (h.order() == 1) {
        // Trivial condensation: the input is returned unchanged.
        out.condensed = m;
        out.chi = chi_in;
        out.coset_images.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
            out.coset_images.push_back(m.group.element_at(i));
        if (chi_in) {
            out.is_ribbon = true;
            out.is_mtc = nondeg;
        }
        return out;
    }

    // Present Hperp/H via lattices: B is a basis of the preimage lattice of
    // Hperp in Z^k, C expresses the relations (H generators and the ambient
    // relations) in that basis, and the Smith form of C is the quotient.
    Subgroup u = subgroup_from_indices(m.group, out.hperp_indices);
    const std::size_t k = m.group.rank();
    IMat au(k, IVec(u.generators.size() + k, 0));
    for (std::size_t j = 0; j < u.generators.size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            au[i][j] = u.generators[j][i];
    for (std::size_t i = 0; i < k; ++i)
        au[i][u.generators.size() + i] = m.group.orders[i];
    IMat basis = lattice_column_basis(std::move(au));

    IMat c(k, IVec(h.generators.size() + k, 0));
    for (std::size_t j = 0; j < h.generators.size(); ++j) {
        IVec v(k);
        for (std::size_t i = 0; i < k; ++i)
            v[i] = h.generators[j][i];
        IVec coords = lattice_coords(basis, v);
        for (std::size_t i = 0; i < k; ++i)
            c[i][j] = coords[i];
    }
    for (std::size_t rel = 0; rel < k; ++rel) {
        IVec v(k, 0);
        v[rel] = m.group.orders[rel];
        IVec coords = lattice_coords(basis, v);
        for (std::size_t i = 0; i < k; ++i)
            c[i][h.generators.size() + rel] = coords[i];
    }
    SmithResult s = smith_normal_form(c);

    std::vector<std::size_t> kept;
    FinAbGroup q_group;
    for (std::size_t i = 0; i < k; ++i) {
        if (s.D[i][i] == 0)
            throw AssertionFailedError("condense: quotient presentation not of full rank");
        if (s.D[i][i] > 1) {
            kept.push_back(i);
            q_group.orders.push_back(static_cast<std::int64_t>(s.D[i][i].get_si()));
        }
    }

    const std::int64_t new_modulus = form_modulus(q_group.orders);
    std::vector<std::int64_t> q2(static_cast<std::size_t>(q_group.size()), -1);
    std::vector<std::int64_t> chi2;
    bool ribbon = true;
    if (chi_in) {
        chi2.assign(static_cast<std::size_t>(q_group.size()), -1);
        for (std::int64_t idx : h.element_indices)
            if ((*chi_in)[static_cast<std::size_t>(idx)] != 0) {
                ribbon = false;
                break;
            }
    }

    std::set<std::vector<std::int64_t>> distinct;
    out.coset_images.reserve(out.hperp_indices.size());
    for (std::int64_t idx : out.hperp_indices) {
        GroupElem g = m.group.element_at(idx);
        IVec v(k);
        for (std::size_t i = 0; i < k; ++i)
            v[i] = g[i];
        IVec y = mat_vec(s.U, lattice_coords(basis, v));
        GroupElem img(kept.size());
        for (std::size_t t = 0; t < kept.size(); ++t) {
            mpz_class d = s.D[kept[t]][kept[t]];
            mpz_class cc = y[kept[t]] % d;
            if (cc < 0)
                cc += d;
            img[t] = static_cast<std::int64_t>(cc.get_si());
        }
        distinct.insert(img);

        std::size_t qidx = static_cast<std::size_t>(q_group.index_of(img));
        std::int64_t qe = rescale_exponent(m.q_exp[static_cast<std::size_t>(idx)], m.modulus,
                                           new_modulus);
        if (q2[qidx] == -1)
            q2[qidx] = qe;
        else if (q2[qidx] != qe)
            throw WellDefinednessError("induced form differs across the coset of " +
                                       elem_str(g));
        if (chi_in && ribbon) {
            std::int64_t ce = rescale_exponent((*chi_in)[static_cast<std::size_t>(idx)],
                                               m.modulus, new_modulus);
            if (chi2[qidx] == -1)
                chi2[qidx] = ce;
            else if (chi2[qidx] != ce)
                throw WellDefinednessError("induced character differs across the coset of " +
                                           elem_str(g));
        }
        out.coset_images.push_back(std::move(img));
    }
    if (static_cast<std::int64_t>(distinct.size()) * h.order() !=
        static_cast<std::int64_t>(out.hperp_indices.size()))
        throw AssertionFailedError("condense: coset map has wrong image count");
    if (distinct.size() != q2.size())
        throw AssertionFailedError("condense: quotient not fully covered");
    for (std::int64_t idx : h.element_indices) {
        auto pos = std::lower_bound(out.hperp_indices.begin(), out.hperp_indices.end(), idx);
        const GroupElem& img = out.coset_images[static_cast<std::size_t>(
            pos - out.hperp_indices.begin())];
        for (std::int64_t coord : img)
            if (coord != 0)
                throw AssertionFailedError("condense: H does not map to the identity coset");
    }

    out.condensed.group = q_group;
    out.condensed.modulus = new_modulus;
    out.condensed.q_exp = std::move(q2);
    if (nondeg) {
        if (out.condensed.group.size() * h.order() * h.order() != n)
            throw AssertionFailedError("condense: size law |Hperp/H| |H|^2 = |G| violated");
        if (!is_nondegenerate(out.condensed))
            throw AssertionFailedError("condense: induced form is degenerate");
    }
    if (chi_in) {
        out.is_ribbon = ribbon;
        out.is_mtc = ribbon && nondeg;
        if (ribbon)
            out.chi = std::move(chi2);
    }
    return out;
}

} // namespace

CondensationResult condense(const MetricGroup& m, const Subgroup& h) {
    return condense_impl(m, h, std::nullopt);
}

CondensationResult condense_ribbon(const RibbonPointedData& r, const Subgroup& h) {
    if (r.chi_exp.size() != r.base.q_exp.size())
        throw InvalidInputError("ribbon character table size does not match the group order");
    return condense_impl(r.base, h, r.chi_exp);
}

MetricGroup anisotropic_kernel(const MetricGroup& m) {
    if (!is_nondegenerate(m))
        throw DegenerateError("anisotropic_kernel requires a nondegenerate form");
    MetricGroup cur = m;
    while (true) {
        std::int64_t pick = -1;
        for (std::int64_t i = 1; i < cur.group.size(); ++i)
            if (cur.q_exp[static_cast<std::size_t>(i)] == 0) {
                pick = i;
                break;
            }
        if (pick < 0)
            return cur;
        Subgroup h = subgroup_generated(cur.group, {cur.group.element_at(pick)});
        cur = condense(cur, h).condensed;
    }
}

namespace {

// Invariant-factor presentation with the form transported along the
// canonical bijection.
MetricGroup normalize_metric(const MetricGroup& m) {
    Subgroup trivial;
    trivial.parent = m.group;
    trivial.element_indices = {m.group.index_of(m.group.zero())};
    QuotientResult q = quotient(m.group, trivial);
    MetricGroup out;
    out.group = q.quotient;
    out.modulus = form_modulus(out.group.orders);
    if (out.modulus != m.modulus)
        throw AssertionFailedError("normalize_metric: modulus changed under isomorphism");
    out.q_exp.assign(static_cast<std::size_t>(out.group.size()), 0);
    for (std::int64_t i = 0; i < m.group.size(); ++i)
        out.q_exp[static_cast<std::size_t>(out.group.index_of(q.image_of[static_cast<std::size_t>(i)]))] =
            m.q_exp[static_cast<std::size_t>(i)];
    return out;
}

struct IsometrySearch {
    const MetricGroup& a;
    const MetricGroup& b;
    std::vector<std::int64_t> image;     // index in a -> index in b (partial)
    std::vector<char> used;              // indices of b already hit
    std::vector<std::vector<std::int64_t>> candidates; // per generator

    bool extend(std::size_t t);
};

bool IsometrySearch::extend(std::size_t t) {
    const auto& dims = a.group.orders;
    if (t == dims.size())
        return true;
    // Elements of the span of e_0..e_{t-1}: exactly those already mapped.
    std::vector<std::int64_t> span;
    for (std::int64_t i = 0; i < a.group.size(); ++i)
        if (image[static_cast<std::size_t>(i)] >= 0)
            span.push_back(i);
    for (std::int64_t y : candidates[t]) {
        if (used[static_cast<std::size_t>(y)])
            continue;
        GroupElem yb = b.group.element_at(y);
        // Tentatively map x + c*e_t -> phi(x) + c*y for all mapped x, c > 0.
        std::vector<std::int64_t> added_a;
        bool ok = true;
        GroupElem et = a.group.zero();
        et[t] = 1;
        for (std::int64_t c = 1; c < dims[t] && ok; ++c) {
            GroupElem cet = a.group.mul(et, c);
            GroupElem cy = b.group.mul(yb, c);
            for (std::int64_t x : span) {
                GroupElem xa = a.group.add(a.group.element_at(x), cet);
                GroupElem xb = b.group.add(
                    b.group.element_at(image[static_cast<std::size_t>(x)]), cy);
                std::int64_t ia = a.group.index_of(xa);
                std::int64_t ib = b.group.index_of(xb);
                if (used[static_cast<std::size_t>(ib)] ||
                    a.q_exp[static_cast<std::size_t>(ia)] != b.q_exp[static_cast<std::size_t>(ib)]) {
                    ok = false;
                    break;
                }
                image[static_cast<std::size_t>(ia)] = ib;
                used[static_cast<std::size_t>(ib)] = 1;
                added_a.push_back(ia);
            }
        }
        if (ok && extend(t + 1))
            return true;
        for (std::int64_t ia : added_a) {
            used[static_cast<std::size_t>(image[static_cast<std::size_t>(ia)])] = 0;
            image[static_cast<std::size_t>(ia)] = -1;
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<std::int64_t>> find_isometry(const MetricGroup& a0,
                                                       const MetricGroup& b0) {
    MetricGroup a = normalize_metric(a0);
    MetricGroup b = normalize_metric(b0);
    if (a.group.orders != b.group.orders)
        return std::nullopt;
    {
        std::vector<std::int64_t> qa = a.q_exp, qb = b.q_exp;
        std::sort(qa.begin(), qa.end());
        std::sort(qb.begin(), qb.end());
        if (qa != qb)
            return std::nullopt;
    }
    if (!(gauss_sum(a) == gauss_sum(b)))
        return std::nullopt;

    IsometrySearch search{a, b, {}, {}, {}};
    search.image.assign(static_cast<std::size_t>(a.group.size()), -1);
    search.used.assign(static_cast<std::size_t>(b.group.size()), 0);
    search.image[static_cast<std::size_t>(a.group.index_of(a.group.zero()))] =
        b.group.index_of(b.group.zero());
    search.used[static_cast<std::size_t>(b.group.index_of(b.group.zero()))] = 1;
    search.candidates.resize(a.group.rank());
    for (std::size_t t = 0; t < a.group.rank(); ++t) {
        GroupElem et = a.group.zero();
        et[t] = 1;
        std::int64_t qa = a.q_exponent(et);
        for (std::int64_t y = 0; y < b.group.size(); ++y)
            if (b.group.order_of(b.group.element_at(y)) == a.group.orders[t] &&
                b.q_exp[static_cast<std::size_t>(y)] == qa)
                search.candidates[t].push_back(y);
    }
    if (!search.extend(0))
        return std::nullopt;

    // Transport back to the original presentations.
    // normalize_metric used the identity on already-normalized groups only if
    // the presentation was already in invariant factor form; reconstruct the
    // full map through the two normalizations.
    Subgroup ta;
    ta.parent = a0.group;
    ta.element_indices = {a0.group.index_of(a0.group.zero())};
    QuotientResult qa = quotient(a0.group, ta);
    Subgroup tb;
    tb.parent = b0.group;
    tb.element_indices = {b0.group.index_of(b0.group.zero())};
    QuotientResult qb = quotient(b0.group, tb);
    std::vector<std::int64_t> from_b_norm(static_cast<std::size_t>(b0.group.size()), -1);
    for (std::int64_t i = 0; i < b0.group.size(); ++i)
        from_b_norm[static_cast<std::size_t>(
            b.group.index_of(qb.image_of[static_cast<std::size_t>(i)]))] = i;
    std::vector<std::int64_t> result(static_cast<std::size_t>(a0.group.size()));
    for (std::int64_t i = 0; i < a0.group.size(); ++i) {
        std::int64_t na = a.group.index_of(qa.image_of[static_cast<std::size_t>(i)]);
        result[static_cast<std::size_t>(i)] =
            from_b_norm[static_cast<std::size_t>(search.image[static_cast<std::size_t>(na)])];
    }
    return result;
}

bool witt_equal(const MetricGroup& a, const MetricGroup& b, std::int64_t bound) {
    if (!is_nondegenerate(a) || !is_nondegenerate(b))
        throw DegenerateError("witt_equal requires nondegenerate forms");
    MetricGroup ka = anisotropic_kernel(a);
    MetricGroup kb = anisotropic_kernel(b);
    if (ka.group.size() > bound || kb.group.size() > bound)
        throw TooLargeError("anisotropic kernel exceeds the isomorphism search bound");
    return find_isometry(ka, kb).has_value();
}

WittInvariant witt_invariant(const MetricGroup& m) {
    if (!is_nondegenerate(m))
        throw DegenerateError("witt_invariant requires a nondegenerate form");
    Cyclotomic tau = gauss_sum(m); // |tau|^2 = |G| asserted inside
    Cyclotomic ratio = tau / tau.conj();
    if (!(ratio.pow(8) == Cyclotomic(1)))
        throw AssertionFailedError("witt_invariant: (tau/conj tau)^8 != 1");
    return WittInvariant{m.group.size(), tau};
}

} // namespace metriq
