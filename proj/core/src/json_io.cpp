#include "metriq/json_io.hpp"

#include "metriq/errors.hpp"

namespace metriq {

namespace {

using nlohmann::json;

std::int64_t to_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw InvalidInputError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::vector<std::int64_t> to_int_vector(const json& j, const char* what) {
    if (!j.is_array())
        throw InvalidInputError(std::string(what) + " must be an array");
    std::vector<std::int64_t> v;
    v.reserve(j.size());
    for (const auto& e : j)
        v.push_back(to_int(e, what));
    return v;
}

json mpz_to_json(const mpz_class& z) {
    if (z.fits_slong_p())
        return json(static_cast<std::int64_t>(z.get_si()));
    return json(z.get_str());
}

mpz_class mpz_from_json(const json& j, const char* what) {
    if (j.is_number_integer())
        return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string())
        return mpz_class(j.get<std::string>());
    throw InvalidInputError(std::string(what) + " must be an integer or integer string");
}

} // namespace

nlohmann::json cyclotomic_to_json(const Cyclotomic& c) {
    json coeffs = json::array();
    const auto& v = c.coeffs();
    for (std::size_t e = 0; e < v.size(); ++e) {
        if (v[e] == 0)
            continue;
        coeffs.push_back(json::array({json(static_cast<std::int64_t>(e)),
                                      mpz_to_json(v[e].get_num()),
                                      mpz_to_json(v[e].get_den())}));
    }
    return json{{"order", c.order()}, {"coeffs", coeffs}, {"str", c.str()}};
}

Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw InvalidInputError("cyclotomic value must have 'order' and 'coeffs'");
    std::int64_t order = to_int(j.at("order"), "cyclotomic order");
    if (order < 1)
        throw InvalidInputError("cyclotomic order must be >= 1");
    if (!j.at("coeffs").is_array())
        throw InvalidInputError("cyclotomic coeffs must be an array");
    Cyclotomic out = Cyclotomic::zero(order);
    for (const auto& trip : j.at("coeffs")) {
        if (!trip.is_array() || trip.size() != 3)
            throw InvalidInputError("cyclotomic coefficient entries must be [exponent,num,den]");
        std::int64_t e = to_int(trip.at(0), "cyclotomic exponent");
        mpq_class coeff(mpz_from_json(trip.at(1), "cyclotomic numerator"),
                        mpz_from_json(trip.at(2), "cyclotomic denominator"));
        if (coeff.get_den() == 0)
            throw InvalidInputError("cyclotomic denominator must be nonzero");
        coeff.canonicalize();
        out = out + Cyclotomic::root_of_unity(order, e).scaled(coeff);
    }
    return out;
}

nlohmann::json metric_to_json(const MetricGroup& m) {
    return json{{"orders", m.group.orders}, {"modulus", m.modulus}, {"q", m.q_exp}};
}

MetricGroup metric_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("orders") || !j.contains("q"))
        throw InvalidInputError("metric input must have 'orders' and 'q'");
    std::vector<std::int64_t> orders = to_int_vector(j.at("orders"), "orders");
    for (std::int64_t o : orders)
        if (o < 1)
            throw InvalidInputError("orders entries must be >= 1");
    MetricGroup m = make_metric_group(orders, to_int_vector(j.at("q"), "q"));
    if (j.contains("modulus") && to_int(j.at("modulus"), "modulus") != m.modulus)
        throw InvalidInputError("modulus does not equal 2*lcm(orders)");
    return m;
}

bool json_has_chi(const nlohmann::json& j) { return j.is_object() && j.contains("chi"); }

nlohmann::json ribbon_to_json(const RibbonPointedData& r) {
    json out = metric_to_json(r.base);
    out["chi"] = r.chi_exp;
    return out;
}

RibbonPointedData ribbon_from_json(const nlohmann::json& j) {
    RibbonPointedData r{metric_from_json(j), {}};
    if (json_has_chi(j)) {
        r.chi_exp = to_int_vector(j.at("chi"), "chi");
        if (r.chi_exp.size() != r.base.q_exp.size())
            throw InvalidInputError("chi table size does not match the group order");
        for (auto& e : r.chi_exp) {
            e %= r.base.modulus;
            if (e < 0)
                e += r.base.modulus;
        }
    }
    return r;
}

nlohmann::json subgroup_to_json(const Subgroup& s) {
    json gens = json::array();
    for (const auto& g : s.generators)
        gens.push_back(g);
    return json{{"generators", gens}, {"order", s.order()}};
}

Subgroup subgroup_from_json(const FinAbGroup& g, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("generators"))
        throw InvalidInputError("subgroup input must have 'generators'");
    if (!j.at("generators").is_array())
        throw InvalidInputError("subgroup generators must be an array");
    std::vector<GroupElem> gens;
    for (const auto& e : j.at("generators")) {
        GroupElem v = to_int_vector(e, "generator");
        if (v.size() != g.rank())
            throw InvalidInputError("generator length does not match the group rank");
        gens.push_back(g.reduce(v));
    }
    return subgroup_generated(g, gens);
}

} // namespace metriq
