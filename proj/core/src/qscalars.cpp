#include "metriq/qscalars.hpp"

#include <algorithm>
#include <set>

#include "metriq/errors.hpp"

namespace metriq {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
    v %= m;
    return v < 0 ? v + m : v;
}

// Balanced q-integer [k] = (q^k - q^{-k})/(q - q^{-1}) for q a root of unity
// given as zeta_field^{q_num}; nonzero whenever ord(q) does not divide 2k.
Cyclotomic balanced_qint(std::int64_t field, std::int64_t q_num, std::int64_t k) {
    Cyclotomic num = Cyclotomic::root_of_unity(field, q_num * k) -
                     Cyclotomic::root_of_unity(field, -q_num * k);
    Cyclotomic den = Cyclotomic::root_of_unity(field, q_num) -
                     Cyclotomic::root_of_unity(field, -q_num);
    return num / den;
}

// (q - q^{-1})^n / [n]!  with the balanced factorial.
Cyclotomic qexp_over_factorial(std::int64_t field, std::int64_t q_num, std::int64_t n) {
    Cyclotomic result(1);
    Cyclotomic diff = Cyclotomic::root_of_unity(field, q_num) -
                      Cyclotomic::root_of_unity(field, -q_num);
    for (std::int64_t k = 1; k <= n; ++k)
        result = result * diff / balanced_qint(field, q_num, k);
    return result;
}

using CMat = std::vector<std::vector<Cyclotomic>>;

CMat cmat_zero(std::size_t n) { return CMat(n, std::vector<Cyclotomic>(n)); }

CMat cmat_identity(std::size_t n) {
    CMat m = cmat_zero(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = Cyclotomic(1);
    return m;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
    std::size_t n = a.size();
    CMat r = cmat_zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[k][j].is_zero())
                    continue;
                r[i][j] = r[i][j] + a[i][k] * b[k][j];
            }
        }
    return r;
}

CMat cmat_scale(const CMat& a, const Cyclotomic& c) {
    CMat r = a;
    for (auto& row : r)
        for (auto& v : row)
            v = v * c;
    return r;
}

CMat cmat_add(const CMat& a, const CMat& b) {
    CMat r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            r[i][j] = r[i][j] + b[i][j];
    return r;
}

CMat cmat_sub(const CMat& a, const CMat& b) {
    CMat r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j)
            r[i][j] = r[i][j] - b[i][j];
    return r;
}

bool cmat_equal(const CMat& a, const CMat& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!(a[i][j] == b[i][j]))
                return false;
    return true;
}

CMat cmat_pow(const CMat& a, std::int64_t e) {
    CMat r = cmat_identity(a.size());
    CMat base = a;
    while (e > 0) {
        if (e & 1)
            r = cmat_mul(r, base);
        base = cmat_mul(base, base);
        e >>= 1;
    }
    return r;
}

} // namespace

Cyclotomic even_braiding_scalar(std::int64_t p) {
    if (p < 2)
        throw InvalidInputError("even_braiding_scalar requires p >= 2");
    const std::int64_t field = 4 * p;
    // q = zeta_2p, encoded as q^{x/2} = zeta_4p^x; chi(K) = -1, chi(E) = chi(F) = 0.
    auto zeta = [&](std::int64_t e) { return Cyclotomic::root_of_unity(field, e); };
    const Cyclotomic chi_e(0), chi_f(0);
    Cyclotomic total = Cyclotomic::zero(field);
    for (std::int64_t n = 0; n < p; ++n) {
        Cyclotomic coeff = qexp_over_factorial(field, 2, n) * zeta(n * (n - 1));
        Cyclotomic ef = chi_f.pow(n) * chi_e.pow(n);
        for (std::int64_t s = 0; s < 2 * p; ++s)
            for (std::int64_t r = 0; r < 2 * p; ++r) {
                Cyclotomic bracket = Cyclotomic(1) + zeta(2 * r) + zeta(-2 * (n + s)) +
                                     zeta(1 + 2 * (r - n - s));
                std::int64_t sign = ((r + s) % 2 == 0) ? 1 : -1;
                total = total + coeff * zeta(-4 * s * r) * bracket * ef.scaled(mpq_class(sign));
            }
    }
    total = total.scaled(mpq_class(1, 4 * p));
    Cyclotomic expected = Cyclotomic::root_of_unity(field, p * p); // i^p
    if (!(total == expected))
        throw AssertionFailedError("even braiding scalar does not equal i^p");
    return total;
}

Cyclotomic even_twist_scalar(std::int64_t p) {
    if (p < 2)
        throw InvalidInputError("even_twist_scalar requires p >= 2");
    const std::int64_t field = 4 * p;
    auto zeta = [&](std::int64_t e) { return Cyclotomic::root_of_unity(field, e); };
    const Cyclotomic chi_e(0), chi_f(0);
    Cyclotomic raw = Cyclotomic::zero(field);
    for (std::int64_t n = 0; n < p; ++n) {
        Cyclotomic coeff = qexp_over_factorial(field, 2, n);
        Cyclotomic ef = chi_f.pow(n) * chi_e.pow(n);
        for (std::int64_t j = 0; j < 2 * p; ++j) {
            std::int64_t sign = (j % 2 == 0) ? 1 : -1;
            // q^{n(j-1/2)} q^{(j+p+1)^2/2} = zeta^{2nj-n} zeta^{(j+p+1)^2}
            raw = raw + coeff * zeta(2 * n * j - n + (j + p + 1) * (j + p + 1)) *
                            ef.scaled(mpq_class(sign));
        }
    }
    Cyclotomic sqrt_p = gauss_sqrt(p).scaled(mpq_class(1, 2));
    Cyclotomic iota = zeta(p);
    Cyclotomic xi = (Cyclotomic(1) - iota) * raw * sqrt_p.scaled(mpq_class(2)).inverse();
    Cyclotomic expected = -Cyclotomic::root_of_unity(field, p * p); // -i^p
    if (!(xi == expected))
        throw AssertionFailedError("even twist scalar does not equal -i^p");
    return xi;
}

PolyModule build_poly_module(std::int64_t n) {
    if (n < 3 || n % 2 == 0)
        throw InvalidInputError("the polynomial module requires odd order >= 3");
    const std::int64_t field = 4 * n;
    // q = zeta_n encoded as q^x = zeta_4n^{4x}.
    auto qpow = [&](std::int64_t e) { return Cyclotomic::root_of_unity(field, 4 * e); };
    const std::size_t nn = static_cast<std::size_t>(n);

    PolyModule mod;
    mod.n = n;
    mod.k_mat = cmat_zero(nn);
    mod.e_mat = cmat_zero(nn);
    mod.f_mat = cmat_zero(nn);
    for (std::size_t j = 0; j < nn; ++j)
        mod.k_mat[j][j] = qpow(-2 * static_cast<std::int64_t>(j));

    // Columns by coproduct recurrence: E.x^i = (E.x)(K.x^{i-1}) + x (E.x^{i-1}),
    // F.x^i = -q x^{i+1} + q^2 x (F.x^{i-1}), truncated at x^n = 0.  The scale
    // F.x = -q x^2 is the unique one compatible with E.x = 1 and the
    // commutator relation: it forces (F^m E^m).x^i = prod of -[j-1][j].
    auto shift_up = [&](const std::vector<Cyclotomic>& col) {
        std::vector<Cyclotomic> out(nn);
        for (std::size_t i = 0; i + 1 < nn; ++i)
            out[i + 1] = col[i];
        return out;
    };
    std::vector<Cyclotomic> e_prev(nn), f_prev(nn); // action on x^0 = 1 is zero
    for (std::size_t i = 1; i < nn; ++i) {
        std::vector<Cyclotomic> e_col = shift_up(e_prev);
        e_col[i - 1] = e_col[i - 1] + qpow(-2 * (static_cast<std::int64_t>(i) - 1));
        std::vector<Cyclotomic> f_col = shift_up(f_prev);
        for (auto& v : f_col)
            v = v * qpow(2);
        if (i + 1 < nn)
            f_col[i + 1] = f_col[i + 1] - qpow(1);
        for (std::size_t r = 0; r < nn; ++r) {
            mod.e_mat[r][i] = e_col[r];
            mod.f_mat[r][i] = f_col[r];
        }
        e_prev = std::move(e_col);
        f_prev = std::move(f_col);
    }

    const CMat id = cmat_identity(nn);
    const CMat zero = cmat_zero(nn);
    if (!cmat_equal(cmat_pow(mod.k_mat, n), id))
        throw ModuleRelationViolationError("K^N != 1 on the module");
    if (!cmat_equal(cmat_pow(mod.e_mat, n), zero))
        throw ModuleRelationViolationError("E^N != 0 on the module");
    if (!cmat_equal(cmat_pow(mod.f_mat, n), zero))
        throw ModuleRelationViolationError("F^N != 0 on the module");
    if (!cmat_equal(cmat_mul(mod.k_mat, mod.e_mat),
                    cmat_scale(cmat_mul(mod.e_mat, mod.k_mat), qpow(2))))
        throw ModuleRelationViolationError("KE != q^2 EK on the module");
    if (!cmat_equal(cmat_mul(mod.k_mat, mod.f_mat),
                    cmat_scale(cmat_mul(mod.f_mat, mod.k_mat), qpow(-2))))
        throw ModuleRelationViolationError("KF != q^-2 FK on the module");
    CMat lhs = cmat_sub(cmat_mul(mod.e_mat, mod.f_mat), cmat_mul(mod.f_mat, mod.e_mat));
    CMat k_inv = cmat_pow(mod.k_mat, n - 1);
    Cyclotomic denom = qpow(1) - qpow(-1);
    CMat rhs = cmat_scale(cmat_sub(mod.k_mat, k_inv), denom.inverse());
    if (!cmat_equal(lhs, rhs))
        throw ModuleRelationViolationError("EF - FE != (K - K^-1)/(q - q^-1) on the module");
    return mod;
}

std::vector<Cyclotomic> odd_theta_action(std::int64_t n) {
    PolyModule mod = build_poly_module(n);
    const std::int64_t field = 4 * n;
    const std::int64_t h = (n - 1) / 2;
    const std::size_t nn = static_cast<std::size_t>(n);
    auto zeta = [&](std::int64_t e) { return Cyclotomic::root_of_unity(field, e); };
    // q = zeta_4n^4; iota = zeta_4n^n.  Half powers use the square root of q
    // inside <q> itself, q^{1/2} := q^{(n+1)/2} = zeta_4n^{2(n+1)}: this is the
    // only branch for which the K^j coefficient q^{mj + (j+1)^2/2} is periodic
    // in j mod n, as it must be since K^n = 1.

    // sqrt(N) as an exact Gauss sum: i^{-h} sum_r q^{h r^2}.
    Cyclotomic gsum = Cyclotomic::zero(field);
    for (std::int64_t r = 0; r < n; ++r)
        gsum = gsum + zeta(4 * h * r * r);
    Cyclotomic sqrt_n = zeta(-h * n) * gsum;
    if (!(sqrt_n * sqrt_n == Cyclotomic(n)))
        throw AssertionFailedError("Gauss sum does not square to N");

    // The ribbon element is (1/N) (sum_r q^{h r^2}) sum_{m,j} (...) F^m E^m K^j:
    // expanding v = u K^{-1} from the R-matrix, the Cartan part contributes the
    // Gauss sum sum_r q^{-2r^2}, which equals sum_r q^{h r^2} since h = -1/2 mod n
    // and -2 and -1/2 have the same quadratic character.
    Cyclotomic prefactor = gsum.scaled(mpq_class(mpz_class(1), mpz_class(n)));

    CMat total = cmat_zero(nn);
    std::vector<CMat> e_pow(nn), f_pow(nn);
    e_pow[0] = cmat_identity(nn);
    f_pow[0] = cmat_identity(nn);
    for (std::size_t m = 1; m < nn; ++m) {
        e_pow[m] = cmat_mul(e_pow[m - 1], mod.e_mat);
        f_pow[m] = cmat_mul(f_pow[m - 1], mod.f_mat);
    }
    CMat k_pow = cmat_identity(nn);
    for (std::int64_t j = 0; j < n; ++j) {
        for (std::int64_t m = 0; m < n; ++m) {
            std::int64_t sign = (m % 2 == 0) ? 1 : -1;
            // q^{-m/2 + mj + (j+1)^2/2} = zeta^{-2(n+1)m + 4mj + 2(n+1)(j+1)^2}
            Cyclotomic coeff = qexp_over_factorial(field, 4, m).scaled(mpq_class(sign)) *
                               zeta(-2 * (n + 1) * m + 4 * m * j +
                                    2 * (n + 1) * (j + 1) * (j + 1));
            CMat term = cmat_mul(f_pow[static_cast<std::size_t>(m)],
                                 cmat_mul(e_pow[static_cast<std::size_t>(m)], k_pow));
            total = cmat_add(total, cmat_scale(term, coeff));
        }
        k_pow = cmat_mul(k_pow, mod.k_mat);
    }
    total = cmat_scale(total, prefactor);

    std::vector<Cyclotomic> diag;
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t r = 0; r < nn; ++r)
            if (r != i && !total[r][i].is_zero())
                throw AssertionFailedError("ribbon action is not diagonal on the module");
        if (!(total[i][i] == Cyclotomic(1)))
            throw AssertionFailedError("ribbon action is not the identity on the module");
        diag.push_back(total[i][i]);
    }
    return diag;
}

Cyclotomic odd_ribbon_jsum(std::int64_t n) {
    if (n < 3 || n % 2 == 0)
        throw InvalidInputError("odd_ribbon_jsum requires odd order >= 3");
    const std::int64_t field = 4 * n;
    // Here q^{1/2} is the primitive branch zeta_2n = zeta_4n^2: the reduction
    // sum_j zeta_2n^{(j-1)^2} = 1 + 2 zeta_2n is an identity for that branch
    // (interior terms cancel in pairs).  The ribbon normalization itself uses
    // the in-group branch q^{(n+1)/2}; see odd_theta_action.
    auto zeta = [&](std::int64_t e) { return Cyclotomic::root_of_unity(field, e); };
    Cyclotomic sum = Cyclotomic::zero(field);
    for (std::int64_t j = 0; j < n; ++j)
        sum = sum + zeta(2 * (j + 1) * (j + 1) - 8 * j);
    Cyclotomic expected = Cyclotomic(1) + zeta(2).scaled(mpq_class(2));
    if (!(sum == expected))
        throw AssertionFailedError("ribbon j-sum does not reduce to 1 + 2 q^{1/2}");
    return sum;
}

Cyclotomic taft_braiding_scalar(std::int64_t n, std::int64_t s) {
    if (n < 2 || s < 0 || s >= n)
        throw InvalidInputError("taft_braiding_scalar requires n >= 2 and 0 <= s < n");
    auto q = [&](std::int64_t e) { return Cyclotomic::root_of_unity(n, e); };
    // Unbalanced q-factorial (k)_q = (1-q^k)/(1-q): invertible for k < n.
    std::vector<Cyclotomic> fact_inv(static_cast<std::size_t>(n));
    Cyclotomic fact(1);
    Cyclotomic one_minus_q = Cyclotomic(1) - q(1);
    fact_inv[0] = Cyclotomic(1);
    for (std::int64_t k = 1; k < n; ++k) {
        fact = fact * ((Cyclotomic(1) - q(k)) / one_minus_q);
        fact_inv[static_cast<std::size_t>(k)] = fact.inverse();
    }
    const Cyclotomic chi_a(0), chi_d(0);
    Cyclotomic total = Cyclotomic::zero(n);
    for (std::int64_t m = 0; m < n; ++m)
        for (std::int64_t sp = 0; sp < n; ++sp) {
            Cyclotomic ad = chi_a.pow(sp) * chi_d.pow(sp); // survives only at sp = 0
            for (std::int64_t tt = 0; tt < n; ++tt) {
                // chi(b)^t chi(c)^m = q^{st} q^{-sm}
                total = total + fact_inv[static_cast<std::size_t>(sp)] *
                                    q(-tt * m + s * tt - s * m) * ad;
            }
        }
    total = total.scaled(mpq_class(1, n));
    Cyclotomic expected = q(-s * s);
    if (!(total == expected))
        throw AssertionFailedError("taft braiding scalar does not equal q^{-s^2}");
    return total;
}

RibbonPointedData taft_invertible_data(std::int64_t n) {
    if (n < 2)
        throw InvalidInputError("taft_invertible_data requires n >= 2");
    std::vector<std::int64_t> q_exp, chi_exp;
    for (std::int64_t s = 0; s < n; ++s) {
        q_exp.push_back(mod_reduce(-2 * s * s, 2 * n));
        chi_exp.push_back(mod_reduce(4 * s * s, 2 * n));
    }
    RibbonPointedData data{make_metric_group({n}, q_exp), chi_exp};
    ValidationReport rep = validate_form(data.base);
    if (!rep.ok)
        throw AssertionFailedError("taft invertible form fails validation rule '" + rep.rule +
                                   "'");
    return data;
}

RibbonPointedData deligne_invertible_data(const std::vector<std::int64_t>& p_list) {
    for (std::int64_t p : p_list)
        if (p < 2)
            throw InvalidInputError("deligne_invertible_data requires every p >= 2");
    std::vector<std::int64_t> orders(p_list.size(), 2);
    FinAbGroup g{orders};
    const std::int64_t mm = form_modulus(orders); // 4 for nonempty lists, 2 for the empty one
    std::vector<std::int64_t> q_exp, chi_exp;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        GroupElem e = g.element_at(i);
        std::int64_t wp = 0, wt = 0;
        for (std::size_t k = 0; k < p_list.size(); ++k) {
            wp += e[k] * p_list[k];
            wt += e[k];
        }
        q_exp.push_back(mod_reduce(wp * (mm / 4), mm));
        chi_exp.push_back(mod_reduce(wt * (mm / 2), mm));
    }
    RibbonPointedData data{make_metric_group(orders, q_exp), chi_exp};
    ValidationReport rep = validate_ribbon(data);
    if (!rep.ok)
        throw AssertionFailedError("deligne invertible data fails validation rule '" + rep.rule +
                                   "'");
    return data;
}

AdmissibleSubset deligne_admissible_subgroup(const std::vector<std::int64_t>& p_list,
                                             std::int64_t bound) {
    RibbonPointedData data = deligne_invertible_data(p_list);
    const FinAbGroup& g = data.base.group;
    AdmissibleSubset out;
    std::set<std::int64_t> members;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        GroupElem e = g.element_at(i);
        std::int64_t wp = 0, wt = 0;
        for (std::size_t k = 0; k < p_list.size(); ++k) {
            wp += e[k] * p_list[k];
            wt += e[k];
        }
        if (wt % 2 == 0 && wp % 4 == 0) {
            if (data.base.q_exp[static_cast<std::size_t>(i)] != 0 ||
                data.chi_exp[static_cast<std::size_t>(i)] != 0)
                throw AssertionFailedError("q or theta nontrivial on the admissible subset");
            out.element_indices.push_back(i);
            members.insert(i);
        }
    }
    out.closed = true;
    for (std::int64_t a : out.element_indices)
        for (std::int64_t b : out.element_indices) {
            std::int64_t c = g.index_of(g.add(g.element_at(a), g.element_at(b)));
            if (members.find(c) == members.end())
                out.closed = false;
        }
    for (auto& s : all_subgroups(g, bound)) {
        bool inside = true;
        for (std::int64_t idx : s.element_indices)
            if (members.find(idx) == members.end()) {
                inside = false;
                break;
            }
        if (inside)
            out.subgroups.push_back(std::move(s));
    }
    return out;
}

} // namespace metriq
