#include "metriq/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <metriq/ext/json.hpp>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"
#include "metriq/errors.hpp"
#include "metriq/json_io.hpp"
#include "metriq/metric.hpp"
#include "metriq/pointed.hpp"
#include "metriq/qscalars.hpp"

namespace metriq {

namespace {

using nlohmann::json;

// Input-phase failure (unreadable file, malformed or schema-violating
// document).  Mapped to exit code 2, like a command-line usage error.
struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nlohmann::json objects are std::map-backed, so dump() emits keys in sorted
// order and the output is byte-deterministic for equal data.
void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json error_body(const std::string& code, const std::string& detail) {
    return json{{"error", json{{"code", code}, {"detail", detail}}}};
}

std::int64_t env_bound(const char* name, std::int64_t fallback) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0')
        return fallback;
    errno = 0;
    char* end = nullptr;
    long long r = std::strtoll(v, &end, 10);
    if (errno != 0 || end == v || *end != '\0' || r < 1)
        return fallback;
    return static_cast<std::int64_t>(r);
}

json load_document(const std::string& path, std::istream& in) {
    try {
        if (path == "-")
            return json::parse(in);
        std::ifstream f(path);
        if (!f)
            throw UsageFailure("cannot open input file '" + path + "'");
        return json::parse(f);
    } catch (const json::exception& e) {
        throw UsageFailure("malformed JSON in '" + path + "': " + e.what());
    }
}

struct FormInput {
    RibbonPointedData data;
    bool has_chi = false;
    Subgroup h; // the optional "H" key; trivial subgroup when absent
};

FormInput read_form_input(const std::string& path, std::istream& in) {
    json doc = load_document(path, in);
    FormInput r;
    try {
        r.data = ribbon_from_json(doc);
        r.has_chi = json_has_chi(doc);
        if (doc.is_object() && doc.contains("H"))
            r.h = subgroup_from_json(r.data.base.group, doc.at("H"));
        else
            r.h = subgroup_generated(r.data.base.group, {});
    } catch (const InvalidInputError& e) {
        throw UsageFailure("invalid input document '" + path + "': " + e.what());
    }
    return r;
}

// Domain gate shared by all form-consuming verbs: a table that fails the
// quadratic-form rules is a domain error (exit 1), not a schema error.
bool check_form(const MetricGroup& m, std::ostream& out) {
    ValidationReport rep = validate_form(m);
    if (rep.ok)
        return true;
    emit(out, error_body("InvalidInput", "form fails validation rule '" + rep.rule + "'"));
    return false;
}

json classification_to_json(const ClassificationReport& cl) {
    return json{{"ftc", cl.ftc},
                {"frobenius", cl.frobenius},
                {"special", cl.special},
                {"symmetric", cl.symmetric},
                {"ribbon_local", cl.ribbon_local},
                {"mtc", cl.mtc}};
}

json axioms_to_json(const FrobeniusReport& fr) {
    return json{{"associative", fr.associative},
                {"unital", fr.unital},
                {"coassociative", fr.coassociative},
                {"counital", fr.counital},
                {"frobenius", fr.frobenius},
                {"special", fr.special},
                {"unit_counit", fr.unit_counit},
                {"specialness", cyclotomic_to_json(fr.specialness)},
                {"all_pass", fr.all_pass()}};
}

json condensation_to_json(const CondensationResult& cr) {
    json condensed = metric_to_json(cr.condensed);
    if (cr.chi.has_value())
        condensed["chi"] = *cr.chi;
    json flags{{"is_ftc", cr.is_ftc}, {"is_lagrangian", cr.is_lagrangian}};
    if (cr.is_ribbon.has_value())
        flags["is_ribbon"] = *cr.is_ribbon;
    if (cr.is_mtc.has_value())
        flags["is_mtc"] = *cr.is_mtc;
    json imgs = json::array();
    for (const auto& e : cr.coset_images)
        imgs.push_back(e);
    return json{{"condensed", condensed},
                {"flags", flags},
                {"coset_images", imgs},
                {"hperp", json{{"indices", cr.hperp_indices},
                               {"order", static_cast<std::int64_t>(cr.hperp_indices.size())}}}};
}

int cmd_analyze(const FormInput& fi, std::int64_t enum_bound, std::ostream& out) {
    const MetricGroup& m = fi.data.base;
    if (!check_form(m, out))
        return 1;
    Subgroup rad = radical(m);
    bool nondeg = rad.order() == 1;
    json iso = json::array();
    json lag = json::array();
    for (const Subgroup& s : isotropic_subgroups(m, enum_bound)) {
        iso.push_back(subgroup_to_json(s));
        if (nondeg && s.order() * s.order() == m.group.size())
            lag.push_back(subgroup_to_json(s));
    }
    json res{{"orders", m.group.orders},
             {"modulus", m.modulus},
             {"nondegenerate", nondeg},
             {"radical", subgroup_to_json(rad)},
             {"gauss_sum", cyclotomic_to_json(gauss_sum(m))},
             {"isotropic_subgroups", iso},
             {"lagrangian_subgroups", lag}};
    if (fi.has_chi) {
        ValidationReport rr = validate_ribbon(fi.data);
        res["ribbon_valid"] = rr.ok;
        if (!rr.ok)
            res["ribbon_rule"] = rr.rule;
    }
    emit(out, res);
    return 0;
}

int cmd_condense(const FormInput& fi, std::ostream& out) {
    if (!check_form(fi.data.base, out))
        return 1;
    CondensationResult cr =
        fi.has_chi ? condense_ribbon(fi.data, fi.h) : condense(fi.data.base, fi.h);
    json res = condensation_to_json(cr);
    res["subgroup"] = subgroup_to_json(fi.h);
    emit(out, res);
    return 0;
}

int cmd_algebra(const FormInput& fi, std::ostream& out) {
    if (!check_form(fi.data.base, out))
        return 1;
    const FinAbGroup& g = fi.data.base.group;
    PointedCategory cat = build_category(fi.data.base);
    CondensationAlgebra alg = build_algebra(cat, fi.h);
    FrobeniusReport fr = verify_frobenius(alg);
    Cyclotomic trace = nakayama_trace(alg);
    std::optional<std::vector<std::int64_t>> chi;
    if (fi.has_chi)
        chi = fi.data.chi_exp;
    ClassificationReport cl = classify(cat, chi, fi.h);

    const auto& idx = fi.h.element_indices;
    std::size_t t = idx.size();
    std::map<std::int64_t, std::size_t> pos_of;
    for (std::size_t i = 0; i < t; ++i)
        pos_of[idx[i]] = i;
    std::int64_t mod = fi.data.base.modulus;
    json delta = json::array();
    json elems = json::array();
    for (std::size_t a = 0; a < t; ++a) {
        GroupElem ea = g.element_at(idx[a]);
        elems.push_back(ea);
        json row = json::array();
        for (std::size_t b = 0; b < t; ++b) {
            GroupElem eb = g.element_at(idx[b]);
            std::size_t sum_pos = pos_of.at(g.index_of(g.add(ea, eb)));
            std::size_t neg_pos = pos_of.at(g.index_of(g.neg(eb)));
            std::int64_t e = (-alg.psi_exp[sum_pos][neg_pos]) % mod;
            if (e < 0)
                e += mod;
            row.push_back(e);
        }
        delta.push_back(row);
    }

    json axioms = axioms_to_json(fr);
    axioms["nakayama_trace"] = cyclotomic_to_json(trace);
    json res{{"axioms", axioms},
             {"classification", classification_to_json(cl)},
             {"modulus", mod},
             {"psi", alg.psi_exp},
             {"delta_exp", delta},
             {"subgroup", subgroup_to_json(fi.h)},
             {"subgroup_elements", elems}};
    emit(out, res);
    return 0;
}

int cmd_classify(const FormInput& fi, std::ostream& out) {
    if (!check_form(fi.data.base, out))
        return 1;
    PointedCategory cat = build_category(fi.data.base);
    std::optional<std::vector<std::int64_t>> chi;
    if (fi.has_chi)
        chi = fi.data.chi_exp;
    ClassificationReport cl = classify(cat, chi, fi.h);
    json res = classification_to_json(cl);
    res["axioms"] = axioms_to_json(cl.axioms);
    res["condensation"] = condensation_to_json(cl.condensation);
    res["subgroup"] = subgroup_to_json(fi.h);
    emit(out, res);
    return 0;
}

int cmd_witt_class(const FormInput& fi, std::ostream& out) {
    if (!check_form(fi.data.base, out))
        return 1;
    WittInvariant wi = witt_invariant(fi.data.base);
    MetricGroup kernel = anisotropic_kernel(fi.data.base);
    json res{{"order", wi.order},
             {"sigma", cyclotomic_to_json(wi.sigma)},
             {"kernel", metric_to_json(kernel)}};
    emit(out, res);
    return 0;
}

int cmd_witt_equal(const FormInput& fa, const FormInput& fb, std::int64_t iso_bound,
                   std::ostream& out) {
    if (!check_form(fa.data.base, out) || !check_form(fb.data.base, out))
        return 1;
    bool eq = witt_equal(fa.data.base, fb.data.base, iso_bound);
    MetricGroup ka = anisotropic_kernel(fa.data.base);
    MetricGroup kb = anisotropic_kernel(fb.data.base);
    json res{{"equal", eq},
             {"kernel_orders", json::array({ka.group.size(), kb.group.size()})}};
    emit(out, res);
    return 0;
}

int cmd_verify_appendix(const std::string& case_name, std::int64_t param, std::ostream& out) {
    std::string value;
    std::string expected;
    if (case_name == "even-braiding") {
        value = even_braiding_scalar(param).str();
        expected = Cyclotomic::root_of_unity(4 * param, param * param).str();
    } else if (case_name == "even-twist") {
        value = even_twist_scalar(param).str();
        expected = (-Cyclotomic::root_of_unity(4 * param, param * param)).str();
    } else if (case_name == "odd-theta") {
        odd_ribbon_jsum(param);
        std::vector<Cyclotomic> diag = odd_theta_action(param);
        value = diag.at(1).str();
        expected = Cyclotomic(1).str();
    } else { // "taft" (membership enforced by the parser)
        for (std::int64_t s = 0; s < param; ++s)
            taft_braiding_scalar(param, s);
        value = taft_braiding_scalar(param, 1).str();
        expected = Cyclotomic::root_of_unity(param, -1).str();
    }
    // Every scalar above is asserted against its closed form inside the
    // library; reaching this point means the derivation reproduced it.
    json res{{"case", case_name},
             {"param", param},
             {"value", value},
             {"expected", expected},
             {"pass", value == expected}};
    emit(out, res);
    return 0;
}

int cmd_deligne(const std::vector<std::int64_t>& p_list, std::int64_t enum_bound,
                std::ostream& out) {
    RibbonPointedData data = deligne_invertible_data(p_list);
    AdmissibleSubset adm = deligne_admissible_subgroup(p_list, enum_bound);
    json subs = json::array();
    for (const Subgroup& s : adm.subgroups)
        subs.push_back(subgroup_to_json(s));
    json res{{"data", ribbon_to_json(data)},
             {"ribbon_valid", validate_ribbon(data).ok},
             {"admissible", json{{"elements", adm.element_indices},
                                 {"closed", adm.closed},
                                 {"subgroups", subs}}}};
    emit(out, res);
    return 0;
}

int cmd_taft(std::int64_t n, std::int64_t enum_bound, std::ostream& out) {
    RibbonPointedData data = taft_invertible_data(n);
    json iso = json::array();
    for (const Subgroup& s : isotropic_subgroups(data.base, enum_bound))
        iso.push_back(subgroup_to_json(s));
    json res{{"data", ribbon_to_json(data)},
             {"form_valid", validate_form(data.base).ok},
             {"ribbon_valid", validate_ribbon(data).ok},
             {"isotropic_subgroups", iso}};
    emit(out, res);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
    CLI::App app{"exact arithmetic for quadratic forms on finite abelian groups:\n"
                 "validation, Gauss sums, simple-current condensation, Frobenius-algebra\n"
                 "verification, Witt classes, and quantum-group scalar cross-checks"};
    app.name("metriq");
    app.require_subcommand(1);

    std::string input_a = "-";
    std::string input_b;
    std::int64_t enum_bound = env_bound("METRIQ_ENUM_BOUND", 4096);
    std::int64_t iso_bound = env_bound("METRIQ_ISO_BOUND", 512);
    std::string case_name;
    std::int64_t param = 0;
    std::vector<std::int64_t> p_list;
    std::int64_t taft_n = 0;

    const std::string bound_help = "subgroup enumeration bound (env METRIQ_ENUM_BOUND)";

    auto* analyze =
        app.add_subcommand("analyze", "validate a form; report radical, Gauss sum, isotropic "
                                      "and Lagrangian subgroups");
    analyze->add_option("input", input_a, "JSON file with orders/q (and optional chi), - for stdin");
    analyze->add_option("--enum-bound", enum_bound, bound_help);

    auto* condense = app.add_subcommand(
        "condense", "condense a form along the isotropic subgroup given by the H key");
    condense->add_option("input", input_a, "JSON file with orders/q/H, - for stdin");

    auto* algebra = app.add_subcommand(
        "algebra", "solve the multiplication two-cochain on H and verify the Frobenius axioms");
    algebra->add_option("input", input_a, "JSON file with orders/q/H, - for stdin");

    auto* classify_cmd = app.add_subcommand(
        "classify", "run the condensation ladder: tensor, Frobenius, special, symmetric, "
                    "ribbon, modular");
    classify_cmd->add_option("input", input_a, "JSON file with orders/q/H, - for stdin");

    auto* witt_class = app.add_subcommand(
        "witt-class", "anisotropic kernel and Gauss-sum invariant of a nondegenerate form");
    witt_class->add_option("input", input_a, "JSON file with orders/q, - for stdin");

    auto* witt_eq = app.add_subcommand(
        "witt-equal", "decide Witt equivalence of two nondegenerate forms");
    witt_eq->add_option("a", input_a, "first form (JSON file, - for stdin)")->required();
    witt_eq->add_option("b", input_b, "second form (JSON file)")->required();
    witt_eq->add_option("--iso-bound", iso_bound,
                        "kernel-size bound for the isometry search (env METRIQ_ISO_BOUND)");

    auto* verify = app.add_subcommand(
        "verify-appendix", "re-derive a quantum-group scalar and compare to its closed form");
    verify->add_option("--case", case_name, "which derivation to run")
        ->required()
        ->check(CLI::IsMember({"even-braiding", "even-twist", "odd-theta", "taft"}));
    verify->add_option("--param", param, "size parameter (p even, N odd, or n)")->required();

    auto* deligne = app.add_subcommand(
        "deligne", "invertible-object data for a product of odd-prime-rank cases");
    deligne->add_option("p", p_list, "odd parameters, one per factor (may be empty)");
    deligne->add_option("--enum-bound", enum_bound, bound_help);

    auto* taft = app.add_subcommand(
        "taft", "invertible-object data of the rank-n case with its braiding exponents");
    taft->add_option("n", taft_n, "rank parameter n >= 2")->required();
    taft->add_option("--enum-bound", enum_bound, bound_help);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("metriq");
    for (const std::string& s : args)
        argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(out, error_body("Usage", e.what()));
        return 2;
    }

    try {
        if (*verify)
            return cmd_verify_appendix(case_name, param, out);
        if (*deligne)
            return cmd_deligne(p_list, enum_bound, out);
        if (*taft)
            return cmd_taft(taft_n, enum_bound, out);

        FormInput fa;
        try {
            fa = read_form_input(input_a, in);
            if (*witt_eq) {
                if (input_b == "-")
                    throw UsageFailure("only one input may come from stdin");
                FormInput fb = read_form_input(input_b, in);
                return cmd_witt_equal(fa, fb, iso_bound, out);
            }
        } catch (const UsageFailure& e) {
            emit(out, error_body("Usage", e.what()));
            return 2;
        }
        if (*analyze)
            return cmd_analyze(fa, enum_bound, out);
        if (*condense)
            return cmd_condense(fa, out);
        if (*algebra)
            return cmd_algebra(fa, out);
        if (*classify_cmd)
            return cmd_classify(fa, out);
        return cmd_witt_class(fa, out); // witt-class is the only verb left
    } catch (const UsageFailure& e) {
        emit(out, error_body("Usage", e.what()));
        return 2;
    } catch (const MetriqError& e) {
        emit(out, error_body(e.code(), e.what()));
        return 1;
    } catch (const std::exception& e) {
        emit(out, error_body("Internal", e.what()));
        return 1;
    }
}

} // namespace metriq
