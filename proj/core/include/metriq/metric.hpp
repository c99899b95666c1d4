#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"

namespace metriq {

// A finite abelian group with a quadratic form q: G -> roots of unity.
// Values are stored as exponents of zeta_M where M = 2 * lcm(orders), one
// entry per group element in mixed-radix index order.
struct MetricGroup {
    FinAbGroup group;
    std::int64_t modulus = 2;        // M = 2 * lcm(orders)
    std::vector<std::int64_t> q_exp; // size |G|, exponents mod M

    std::int64_t q_exponent(std::int64_t index) const;
    std::int64_t q_exponent(const GroupElem& e) const;
    Cyclotomic q_value(const GroupElem& e) const;
};

// The modulus any form table on these orders must use.
std::int64_t form_modulus(const std::vector<std::int64_t>& orders);

// Convenience constructor; validates table size and modulus.
MetricGroup make_metric_group(std::vector<std::int64_t> orders, std::vector<std::int64_t> q_exp);

// Polarization bicharacter b(g,h) = q(g+h)/(q(g) q(h)) as an exponent mod M.
std::int64_t bilinear_exp(const MetricGroup& m, const GroupElem& g, const GroupElem& h);
Cyclotomic bilinear(const MetricGroup& m, const GroupElem& g, const GroupElem& h);

// Structured validation outcome; ok == false carries the first violated rule
// ("shape", "unit", "symmetry", "power", "bicharacter", "character",
// "twist-duality") and a witness tuple.
struct ValidationReport {
    bool ok = true;
    std::string rule;
    std::vector<GroupElem> witness;
};

ValidationReport validate_form(const MetricGroup& m);

// The radical {g : b(g, -) trivial}; the form is nondegenerate iff trivial.
Subgroup radical(const MetricGroup& m);
bool is_nondegenerate(const MetricGroup& m);

// Gauss sum tau = sum_g q(g).  For nondegenerate forms |tau|^2 = |G| is a
// theorem and is asserted.
Cyclotomic gauss_sum(const MetricGroup& m);

// All subgroups on which q restricts to 1, in the all_subgroups order.
std::vector<Subgroup> isotropic_subgroups(const MetricGroup& m, std::int64_t bound = 4096);

// A metric group together with a ribbon character chi; the twist is
// theta(g) = q(g) * chi(g), stored alongside as exponents mod modulus.
struct RibbonPointedData {
    MetricGroup base;
    std::vector<std::int64_t> chi_exp; // size |G|, exponents mod modulus

    std::int64_t theta_exponent(std::int64_t index) const;
    std::int64_t theta_exponent(const GroupElem& e) const;
};

// validate_form plus: chi(0) = 1, chi a character, and theta(g) = theta(-g).
ValidationReport validate_ribbon(const RibbonPointedData& r);

// Result of condensing along an isotropic subgroup H: the induced form on
// H^perp / H, the coset map, and the classification flags.
struct CondensationResult {
    MetricGroup condensed;
    std::optional<std::vector<std::int64_t>> chi; // induced ribbon character
    std::vector<std::int64_t> hperp_indices;      // sorted, in the parent group
    std::vector<GroupElem> coset_images;          // aligned with hperp_indices
    bool is_ftc = true;                           // always: A_H is an FTC algebra
    bool is_lagrangian = false;                   // nondegenerate and |H|^2 = |G|
    std::optional<bool> is_ribbon;                // theta trivial on H (needs chi)
    std::optional<bool> is_mtc;                   // is_ribbon and nondegenerate
};

// Condense m along the isotropic subgroup h.  Throws NotIsotropicError if q
// is nontrivial on h.  For nondegenerate input the size law
// |H^perp/H| * |H|^2 = |G| and nondegeneracy of the output are asserted.
CondensationResult condense(const MetricGroup& m, const Subgroup& h);

// As condense, and also transports the ribbon character when theta restricts
// trivially to h (otherwise the output chi is absent and is_ribbon = false).
CondensationResult condense_ribbon(const RibbonPointedData& r, const Subgroup& h);

// Iterated condensation by the cyclic subgroup of the smallest nonzero
// isotropic element until none remains.  Requires a nondegenerate form.
MetricGroup anisotropic_kernel(const MetricGroup& m);

// An isomorphism of groups carrying one form to the other (element index map
// a -> b), or nullopt.  Works for degenerate forms too.
std::optional<std::vector<std::int64_t>> find_isometry(const MetricGroup& a, const MetricGroup& b);

// Witt equivalence test: anisotropic kernels isomorphic as metric groups.
// Throws DegenerateError on degenerate input and TooLargeError when a kernel
// exceeds the search bound.
bool witt_equal(const MetricGroup& a, const MetricGroup& b, std::int64_t bound = 512);

// The pair (|G|, tau).  tau * conj(tau) = |G| and (tau/conj(tau))^8 = 1 are
// asserted exactly; input must be nondegenerate.
struct WittInvariant {
    std::int64_t order = 1;
    Cyclotomic sigma;
};

WittInvariant witt_invariant(const MetricGroup& m);

} // namespace metriq
