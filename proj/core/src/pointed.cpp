#include "metriq/pointed.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "metriq/errors.hpp"
#include "metriq/snf.hpp"

namespace metriq {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

} // namespace

std::int64_t PointedCategory::omega_exp(const GroupElem& x, const GroupElem& y,
                                        const GroupElem& z) const {
    const FinAbGroup& g = form.group;
    GroupElem rx = g.reduce(x), ry = g.reduce(y), rz = g.reduce(z);
    std::int64_t e = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        std::int64_t carry = (ry[i] + rz[i]) / g.orders[i];
        e += mod_reduce(alpha[i] * g.orders[i] % form.modulus * rx[i] % form.modulus * carry,
                        form.modulus);
    }
    return mod_reduce(e, form.modulus);
}

std::int64_t PointedCategory::c_exp(const GroupElem& x, const GroupElem& y) const {
    const FinAbGroup& g = form.group;
    GroupElem rx = g.reduce(x), ry = g.reduce(y);
    std::int64_t e = 0;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        e = mod_reduce(e + alpha[i] * rx[i] % form.modulus * ry[i], form.modulus);
        for (std::size_t j = i + 1; j < g.rank(); ++j)
            e = mod_reduce(e + beta[i][j] * rx[j] % form.modulus * ry[i], form.modulus);
    }
    return e;
}

Cyclotomic PointedCategory::omega(const GroupElem& x, const GroupElem& y,
                                  const GroupElem& z) const {
    return Cyclotomic::root_of_unity(form.modulus, omega_exp(x, y, z));
}

Cyclotomic PointedCategory::braiding(const GroupElem& x, const GroupElem& y) const {
    return Cyclotomic::root_of_unity(form.modulus, c_exp(x, y));
}

PointedCategory build_category(const MetricGroup& m) {
    PointedCategory cat;
    cat.form = m;
    const FinAbGroup& g = m.group;
    const std::int64_t mm = m.modulus;
    cat.alpha.resize(g.rank());
    cat.beta.assign(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElem ei = g.zero();
        ei[i] = g.orders[i] > 1 ? 1 : 0;
        cat.alpha[i] = m.q_exponent(ei);
        for (std::size_t j = i + 1; j < g.rank(); ++j) {
            GroupElem ej = g.zero();
            ej[j] = g.orders[j] > 1 ? 1 : 0;
            cat.beta[i][j] = bilinear_exp(m, ei, ej);
        }
    }

    const std::int64_t n = g.size();
    if (n > 64)
        return cat; // brute-force validation is contracted for |G| <= 64 only

    std::vector<GroupElem> elems;
    elems.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        elems.push_back(g.element_at(i));

    for (const GroupElem& x : elems) {
        if (cat.c_exp(x, x) != m.q_exponent(x))
            throw ConstructionFailedError("braiding diagonal does not recover the form");
        if (cat.c_exp(x, g.zero()) != 0 || cat.c_exp(g.zero(), x) != 0)
            throw ConstructionFailedError("braiding not normalized at the identity");
        for (const GroupElem& y : elems)
            if (cat.omega_exp(g.zero(), x, y) != 0 || cat.omega_exp(x, g.zero(), y) != 0 ||
                cat.omega_exp(x, y, g.zero()) != 0)
                throw ConstructionFailedError("associator not normalized at the identity");
    }

    // Pentagon: w(y,z,w) + w(x,y+z,w) + w(x,y,z) = w(x+y,z,w) + w(x,y,z+w).
    for (const GroupElem& x : elems)
        for (const GroupElem& y : elems)
            for (const GroupElem& z : elems)
                for (const GroupElem& w : elems) {
                    std::int64_t lhs = mod_reduce(cat.omega_exp(y, z, w) +
                                                      cat.omega_exp(x, g.add(y, z), w) +
                                                      cat.omega_exp(x, y, z),
                                                  mm);
                    std::int64_t rhs = mod_reduce(cat.omega_exp(g.add(x, y), z, w) +
                                                      cat.omega_exp(x, y, g.add(z, w)),
                                                  mm);
                    if (lhs != rhs)
                        throw ConstructionFailedError("pentagon identity fails");
                }

    // Hexagons:
    //   w(y,z,x) + c(x,y+z) + w(x,y,z) = c(x,z) + w(y,x,z) + c(x,y)
    //  -w(z,x,y) + c(x+y,z) - w(x,y,z) = c(x,z) - w(x,z,y) + c(y,z)
    for (const GroupElem& x : elems)
        for (const GroupElem& y : elems)
            for (const GroupElem& z : elems) {
                std::int64_t h1l = mod_reduce(
                    cat.omega_exp(y, z, x) + cat.c_exp(x, g.add(y, z)) + cat.omega_exp(x, y, z),
                    mm);
                std::int64_t h1r = mod_reduce(
                    cat.c_exp(x, z) + cat.omega_exp(y, x, z) + cat.c_exp(x, y), mm);
                if (h1l != h1r)
                    throw ConstructionFailedError("first hexagon identity fails");
                std::int64_t h2l = mod_reduce(-cat.omega_exp(z, x, y) +
                                                  cat.c_exp(g.add(x, y), z) -
                                                  cat.omega_exp(x, y, z),
                                              mm);
                std::int64_t h2r = mod_reduce(
                    cat.c_exp(x, z) - cat.omega_exp(x, z, y) + cat.c_exp(y, z), mm);
                if (h2l != h2r)
                    throw ConstructionFailedError("second hexagon identity fails");
            }
    return cat;
}

namespace {

// Incremental integer row echelon for a linear system mod m.  Rows may be
// reduced entrywise mod m at any point (constraints are congruences); all row
// combinations are unimodular, so the mod-m solution set is preserved.
struct ModEchelon {
    std::int64_t m;
    std::size_t nvars;
    // pivot column -> row (length nvars + 1, last entry the right-hand side)
    std::map<std::size_t, std::vector<std::int64_t>> pivots;
    bool inconsistent = false;

    void insert(std::vector<std::int64_t> row) {
        for (auto& v : row)
            v = mod_reduce(v, m);
        for (std::size_t j = 0; j < nvars; ++j) {
            if (row[j] == 0)
                continue;
            auto it = pivots.find(j);
            if (it == pivots.end()) {
                pivots.emplace(j, std::move(row));
                return;
            }
            std::vector<std::int64_t>& piv = it->second;
            // Extended gcd combination; keeps both rows integral.
            std::int64_t a = piv[j], b = row[j];
            std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
            while (r != 0) {
                std::int64_t quot = old_r / r;
                std::int64_t tmp = old_r - quot * r;
                old_r = r;
                r = tmp;
                tmp = old_s - quot * s;
                old_s = s;
                s = tmp;
                tmp = old_t - quot * t;
                old_t = t;
                t = tmp;
            }
            std::int64_t gg = old_r, u = old_s, v = old_t;
            std::vector<std::int64_t> np(nvars + 1), nr(nvars + 1);
            for (std::size_t k = 0; k <= nvars; ++k) {
                np[k] = mod_reduce(u * piv[k] + v * row[k], m);
                nr[k] = mod_reduce((a / gg) * row[k] - (b / gg) * piv[k], m);
            }
            piv = std::move(np);
            row = std::move(nr);
        }
        if (row[nvars] % m != 0)
            inconsistent = true;
    }
};

GroupElem elem_of(const Subgroup& h, std::size_t pos) {
    return h.parent.element_at(h.element_indices[pos]);
}

} // namespace

std::vector<std::vector<std::int64_t>> solve_commutative_cocycle(const PointedCategory& cat,
                                                                 const Subgroup& h) {
    if (!(h.parent == cat.form.group))
        throw InvalidInputError("subgroup belongs to a different group");
    const std::int64_t mm = cat.form.modulus;
    const std::size_t t = static_cast<std::size_t>(h.order());
    for (std::int64_t idx : h.element_indices)
        if (cat.form.q_exp[static_cast<std::size_t>(idx)] != 0)
            throw NotIsotropicError("q is nontrivial on the subgroup");

    std::vector<GroupElem> he;
    he.reserve(t);
    for (std::size_t p = 0; p < t; ++p)
        he.push_back(elem_of(h, p));
    // Position of the identity: element index 0 sorts first.
    if (h.element_indices[0] != h.parent.index_of(h.parent.zero()))
        throw AssertionFailedError("subgroup does not contain the identity first");

    // Braiding consistency on H, forced by isotropy; checked before solving.
    std::map<std::int64_t, std::size_t> pos_of;
    for (std::size_t p = 0; p < t; ++p)
        pos_of[h.element_indices[p]] = p;
    auto pos_add = [&](std::size_t a, std::size_t b) {
        auto it = pos_of.find(h.parent.index_of(h.parent.add(he[a], he[b])));
        if (it == pos_of.end())
            throw AssertionFailedError("subgroup not closed under addition");
        return it->second;
    };
    for (std::size_t a = 0; a < t; ++a) {
        if (cat.c_exp(he[a], he[a]) != 0)
            throw AssertionFailedError("braiding diagonal nontrivial on an isotropic subgroup");
        for (std::size_t b = 0; b < t; ++b)
            if (mod_reduce(cat.c_exp(he[a], he[b]) + cat.c_exp(he[b], he[a]), mm) != 0)
                throw AssertionFailedError("braiding not inverse-symmetric on the subgroup");
    }

    // Unknowns: psi(a,b) for positions 1 <= a <= b (psi vanishes against the
    // identity; psi(a,b) for a > b is psi(b,a) + c(a,b) by commutativity).
    std::vector<std::vector<std::int64_t>> var_id(t, std::vector<std::int64_t>(t, -1));
    std::size_t nvars = 0;
    for (std::size_t a = 1; a < t; ++a)
        for (std::size_t b = a; b < t; ++b)
            var_id[a][b] = static_cast<std::int64_t>(nvars++);

    // psi(a,b) = x_{var} + offset with var = -1 meaning no variable.
    auto term = [&](std::size_t a, std::size_t b) -> std::pair<std::int64_t, std::int64_t> {
        if (a == 0 || b == 0)
            return {-1, 0};
        if (a <= b)
            return {var_id[a][b], 0};
        return {var_id[b][a], cat.c_exp(he[a], he[b])};
    };

    ModEchelon ech{mm, nvars, {}, false};
    // Associativity: psi(a,b) + psi(a+b,c) - psi(b,c) - psi(a,b+c) = w(a,b,c).
    for (std::size_t a = 1; a < t; ++a)
        for (std::size_t b = 1; b < t; ++b)
            for (std::size_t c = 1; c < t; ++c) {
                std::vector<std::int64_t> row(nvars + 1, 0);
                std::int64_t rhs = cat.omega_exp(he[a], he[b], he[c]);
                auto add_term = [&](std::size_t x, std::size_t y, std::int64_t sign) {
                    auto [var, off] = term(x, y);
                    if (var >= 0)
                        row[static_cast<std::size_t>(var)] += sign;
                    rhs -= sign * off;
                };
                add_term(a, b, 1);
                add_term(pos_add(a, b), c, 1);
                add_term(b, c, -1);
                add_term(a, pos_add(b, c), -1);
                row[nvars] = mod_reduce(rhs, mm);
                ech.insert(std::move(row));
            }
    if (ech.inconsistent)
        throw NoSolutionError("cocycle system inconsistent on an isotropic subgroup");

    std::optional<IVec> sol;
    if (nvars == 0) {
        sol = IVec{};
    } else {
        IMat a(ech.pivots.size(), IVec(nvars, 0));
        IVec b(ech.pivots.size(), 0);
        std::size_t r = 0;
        for (const auto& [lead, row] : ech.pivots) {
            for (std::size_t j = 0; j < nvars; ++j)
                a[r][j] = row[j];
            b[r] = row[nvars];
            ++r;
        }
        if (r == 0) {
            sol = IVec(nvars, 0);
        } else {
            sol = solve_linear_mod(a, b, mpz_class(mm));
        }
    }
    if (!sol)
        throw NoSolutionError("cocycle system inconsistent on an isotropic subgroup");

    std::vector<std::vector<std::int64_t>> psi(t, std::vector<std::int64_t>(t, 0));
    for (std::size_t a = 1; a < t; ++a)
        for (std::size_t b = 1; b < t; ++b) {
            auto [var, off] = term(a, b);
            std::int64_t val = off;
            if (var >= 0)
                val += static_cast<std::int64_t>((*sol)[static_cast<std::size_t>(var)].get_si());
            psi[a][b] = mod_reduce(val, mm);
        }

    // Full residual verification of every constraint on the solved table.
    for (std::size_t a = 0; a < t; ++a) {
        if (psi[0][a] != 0 || psi[a][0] != 0)
            throw AssertionFailedError("cocycle solution violates unitality");
        for (std::size_t b = 0; b < t; ++b) {
            if (mod_reduce(psi[a][b] - psi[b][a] - cat.c_exp(he[a], he[b]), mm) != 0)
                throw AssertionFailedError("cocycle solution violates commutativity");
            for (std::size_t c = 0; c < t; ++c) {
                std::int64_t lhs = mod_reduce(psi[a][b] + psi[pos_add(a, b)][c], mm);
                std::int64_t rhs = mod_reduce(psi[b][c] + psi[a][pos_add(b, c)] +
                                                  cat.omega_exp(he[a], he[b], he[c]),
                                              mm);
                if (lhs != rhs)
                    throw AssertionFailedError("cocycle solution violates associativity");
            }
        }
    }
    return psi;
}

Cyclotomic CondensationAlgebra::psi(std::size_t pos_a, std::size_t pos_b) const {
    return Cyclotomic::root_of_unity(cat.form.modulus, psi_exp[pos_a][pos_b]);
}

Cyclotomic CondensationAlgebra::delta_coeff(std::size_t pos_h, std::size_t pos_k) const {
    const FinAbGroup& g = h.parent;
    GroupElem hk = g.add(elem_of(h, pos_h), elem_of(h, pos_k));
    GroupElem nk = g.neg(elem_of(h, pos_k));
    std::size_t a = 0, b = 0;
    for (std::size_t p = 0; p < h.element_indices.size(); ++p) {
        if (h.element_indices[p] == g.index_of(hk))
            a = p;
        if (h.element_indices[p] == g.index_of(nk))
            b = p;
    }
    return psi(a, b).inverse();
}

CondensationAlgebra build_algebra(const PointedCategory& cat, const Subgroup& h) {
    return CondensationAlgebra{cat, h, solve_commutative_cocycle(cat, h)};
}

namespace {

// Skeletal morphisms between tensor powers of A_H: sparse matrices keyed by
// (output tuple, input tuple) of H positions, with cyclotomic coefficients.
using Tuple = std::vector<std::size_t>;

struct Mor {
    std::size_t in_arity = 0, out_arity = 0;
    std::map<std::pair<Tuple, Tuple>, Cyclotomic> coef;

    void add(Tuple out, Tuple in, const Cyclotomic& c) {
        if (c.is_zero())
            return;
        auto key = std::make_pair(std::move(out), std::move(in));
        auto it = coef.find(key);
        if (it == coef.end())
            coef.emplace(std::move(key), c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero())
                coef.erase(it);
        }
    }
};

Mor mor_compose(const Mor& f, const Mor& g) {
    if (f.in_arity != g.out_arity)
        throw AssertionFailedError("morphism arity mismatch in composition");
    std::map<Tuple, std::vector<std::pair<Tuple, Cyclotomic>>> by_in;
    for (const auto& [key, c] : f.coef)
        by_in[key.second].emplace_back(key.first, c);
    Mor r;
    r.in_arity = g.in_arity;
    r.out_arity = f.out_arity;
    for (const auto& [gkey, gc] : g.coef) {
        auto it = by_in.find(gkey.first);
        if (it == by_in.end())
            continue;
        for (const auto& [fout, fc] : it->second)
            r.add(fout, gkey.second, fc * gc);
    }
    return r;
}

Mor mor_tensor(const Mor& f, const Mor& g) {
    Mor r;
    r.in_arity = f.in_arity + g.in_arity;
    r.out_arity = f.out_arity + g.out_arity;
    for (const auto& [fkey, fc] : f.coef)
        for (const auto& [gkey, gc] : g.coef) {
            Tuple out = fkey.first;
            out.insert(out.end(), gkey.first.begin(), gkey.first.end());
            Tuple in = fkey.second;
            in.insert(in.end(), gkey.second.begin(), gkey.second.end());
            r.add(std::move(out), std::move(in), fc * gc);
        }
    return r;
}

bool mor_equal(const Mor& f, const Mor& g) {
    if (f.in_arity != g.in_arity || f.out_arity != g.out_arity)
        return false;
    for (const auto& [key, c] : f.coef) {
        auto it = g.coef.find(key);
        if (it == g.coef.end() || !(it->second == c))
            return false;
    }
    for (const auto& [key, c] : g.coef)
        if (f.coef.find(key) == f.coef.end())
            return false;
    return true;
}

struct AlgebraMorphisms {
    const CondensationAlgebra& alg;
    std::size_t t;
    std::vector<GroupElem> he;
    std::vector<std::vector<std::size_t>> add_pos;
    std::vector<std::size_t> neg_pos;
    std::size_t e_pos = 0;

    explicit AlgebraMorphisms(const CondensationAlgebra& a) : alg(a) {
        t = a.h.element_indices.size();
        const FinAbGroup& g = a.h.parent;
        std::map<std::int64_t, std::size_t> pos_of;
        for (std::size_t p = 0; p < t; ++p) {
            he.push_back(g.element_at(a.h.element_indices[p]));
            pos_of[a.h.element_indices[p]] = p;
        }
        e_pos = pos_of.at(g.index_of(g.zero()));
        add_pos.assign(t, std::vector<std::size_t>(t, 0));
        neg_pos.assign(t, 0);
        for (std::size_t p = 0; p < t; ++p) {
            neg_pos[p] = pos_of.at(g.index_of(g.neg(he[p])));
            for (std::size_t r = 0; r < t; ++r)
                add_pos[p][r] = pos_of.at(g.index_of(g.add(he[p], he[r])));
        }
    }

    Mor identity(std::size_t arity) const {
        Mor m;
        m.in_arity = m.out_arity = arity;
        if (arity == 0) {
            m.add({}, {}, Cyclotomic(1));
            return m;
        }
        Tuple tup(arity, 0);
        while (true) {
            m.add(tup, tup, Cyclotomic(1));
            std::size_t i = arity;
            while (i > 0) {
                if (++tup[i - 1] < t)
                    break;
                tup[i - 1] = 0;
                --i;
            }
            if (i == 0)
                break;
        }
        return m;
    }

    Mor mu() const {
        Mor m;
        m.in_arity = 2;
        m.out_arity = 1;
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t b = 0; b < t; ++b)
                m.add({add_pos[a][b]}, {a, b}, alg.psi(a, b));
        return m;
    }

    Mor eta() const {
        Mor m;
        m.in_arity = 0;
        m.out_arity = 1;
        m.add({e_pos}, {}, Cyclotomic(1));
        return m;
    }

    Mor delta() const {
        Mor m;
        m.in_arity = 1;
        m.out_arity = 2;
        for (std::size_t hh = 0; hh < t; ++hh)
            for (std::size_t k = 0; k < t; ++k)
                m.add({add_pos[hh][k], neg_pos[k]}, {hh},
                      alg.psi(add_pos[hh][k], neg_pos[k]).inverse());
        return m;
    }

    Mor eps() const {
        Mor m;
        m.in_arity = 1;
        m.out_arity = 0;
        m.add({}, {e_pos}, Cyclotomic(1));
        return m;
    }

    // Associator (A x A) x A -> A x (A x A) and its inverse, as diagonal maps
    // on flattened triples.
    Mor assoc(int sign) const {
        Mor m;
        m.in_arity = m.out_arity = 3;
        for (std::size_t a = 0; a < t; ++a)
            for (std::size_t b = 0; b < t; ++b)
                for (std::size_t c = 0; c < t; ++c) {
                    Cyclotomic w = alg.cat.omega(he[a], he[b], he[c]);
                    m.add({a, b, c}, {a, b, c}, sign > 0 ? w : w.inverse());
                }
        return m;
    }
};

} // namespace

FrobeniusReport verify_frobenius(const CondensationAlgebra& alg) {
    AlgebraMorphisms am(alg);
    Mor id1 = am.identity(1);
    Mor mu = am.mu(), eta = am.eta(), dl = am.delta(), ep = am.eps();
    Mor al = am.assoc(+1), al_inv = am.assoc(-1);

    FrobeniusReport rep;
    rep.associative =
        mor_equal(mor_compose(mu, mor_tensor(mu, id1)),
                  mor_compose(mu, mor_compose(mor_tensor(id1, mu), al)));
    rep.unital = mor_equal(mor_compose(mu, mor_tensor(eta, id1)), id1) &&
                 mor_equal(mor_compose(mu, mor_tensor(id1, eta)), id1);
    rep.coassociative =
        mor_equal(mor_compose(al, mor_compose(mor_tensor(dl, id1), dl)),
                  mor_compose(mor_tensor(id1, dl), dl));
    rep.counital = mor_equal(mor_compose(mor_tensor(ep, id1), dl), id1) &&
                   mor_equal(mor_compose(mor_tensor(id1, ep), dl), id1);
    Mor frob_mid = mor_compose(dl, mu);
    rep.frobenius =
        mor_equal(frob_mid, mor_compose(mor_tensor(mu, id1),
                                        mor_compose(al_inv, mor_tensor(id1, dl)))) &&
        mor_equal(frob_mid,
                  mor_compose(mor_tensor(id1, mu), mor_compose(al, mor_tensor(dl, id1))));

    Mor mu_dl = mor_compose(mu, dl);
    Cyclotomic card(static_cast<std::int64_t>(am.t));
    rep.special = true;
    for (std::size_t p = 0; p < am.t; ++p) {
        auto it = mu_dl.coef.find({Tuple{p}, Tuple{p}});
        Cyclotomic v = it == mu_dl.coef.end() ? Cyclotomic() : it->second;
        if (!(v == card))
            rep.special = false;
    }
    if (mu_dl.coef.size() != am.t)
        rep.special = false;
    auto it0 = mu_dl.coef.find({Tuple{am.e_pos}, Tuple{am.e_pos}});
    rep.specialness = it0 == mu_dl.coef.end() ? Cyclotomic() : it0->second;

    Mor eps_eta = mor_compose(ep, eta);
    auto itu = eps_eta.coef.find({Tuple{}, Tuple{}});
    rep.unit_counit = itu != eps_eta.coef.end() && itu->second == Cyclotomic(1);
    return rep;
}

Cyclotomic nakayama_trace(const CondensationAlgebra& alg) {
    AlgebraMorphisms am(alg);
    Mor f = mor_compose(am.eps(), mor_compose(am.mu(), mor_compose(am.delta(), am.eta())));
    auto it = f.coef.find({Tuple{}, Tuple{}});
    return it == f.coef.end() ? Cyclotomic() : it->second;
}

ClassificationReport classify(const PointedCategory& cat,
                              const std::optional<std::vector<std::int64_t>>& chi_exp,
                              const Subgroup& h) {
    ClassificationReport rep;
    for (std::int64_t idx : h.element_indices)
        if (cat.form.q_exp[static_cast<std::size_t>(idx)] != 0)
            throw NotIsotropicError("q is nontrivial on the subgroup");

    CondensationAlgebra alg = build_algebra(cat, h);
    rep.axioms = verify_frobenius(alg);
    rep.ftc = true;
    rep.frobenius = true;
    rep.special = true; // |H| != 0 in characteristic 0

    if (chi_exp) {
        RibbonPointedData rd{cat.form, *chi_exp};
        rep.condensation = condense_ribbon(rd, h);
        rep.symmetric = true;
        for (std::int64_t idx : h.element_indices)
            if ((*chi_exp)[static_cast<std::size_t>(idx)] != 0)
                rep.symmetric = false;
    } else {
        rep.condensation = condense(cat.form, h);
        rep.symmetric = true; // canonical twist theta = q is trivial on isotropic H
    }
    rep.ribbon_local = rep.symmetric;
    rep.mtc = rep.symmetric && is_nondegenerate(cat.form);
    return rep;
}

} // namespace metriq
