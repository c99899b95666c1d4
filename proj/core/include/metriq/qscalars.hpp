#pragma once

#include <cstdint>
#include <vector>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"
#include "metriq/metric.hpp"

namespace metriq {

// Self-braiding scalar of the order-two invertible module over the even-order
// small quantum sl2 (order 2p, quasi-Hopf form): the full R-matrix character
// contraction evaluated in Q(zeta_4p).  Asserts and returns i^p.
Cyclotomic even_braiding_scalar(std::int64_t p);

// Twist scalar of the same invertible module: the ribbon-element character
// sum normalized by (1-i)/(2 sqrt(p)) with sqrt(p) realized as an exact Gauss
// sum.  Asserts and returns -i^p.
Cyclotomic even_twist_scalar(std::int64_t p);

// The algebra k[x]/(x^N) as a module over the odd-order small quantum sl2
// (N = 2h+1), with generator action K.x = q^{-2}x, E.x = 1, F.x = -q x^2 and
// the higher actions derived from the coproduct recurrences.  The -q scale on
// F is forced by the commutator relation once E.x = 1 is fixed.  Matrices are
// over Q(zeta_4N) with columns indexed by x^j.
struct PolyModule {
    std::int64_t n = 0;
    std::vector<std::vector<Cyclotomic>> k_mat, e_mat, f_mat;
};

// Builds the module and verifies the defining relations as exact matrix
// identities: K^N = I, E^N = F^N = 0, KE = q^2 EK, KF = q^{-2} FK and
// EF - FE = (K - K^{-1})/(q - q^{-1}).
// Throws ModuleRelationViolation if any identity fails.
PolyModule build_poly_module(std::int64_t n);

// Evaluates the full ribbon-element triple sum on each basis power x^i.  Half
// powers of q inside the sum mean the square root q^{(N+1)/2} within <q> (the
// only branch making the K^j coefficient periodic in j mod N); the prefactor
// is (sum_r q^{h r^2})/N, the Cartan Gauss sum from expanding the ribbon
// element, and i^{-h} * sum_r q^{h r^2} is asserted to square to N.
// Asserts the action is the identity and returns the diagonal scalars.
std::vector<Cyclotomic> odd_theta_action(std::int64_t n);

// The surviving j-sum of the ribbon action on x: sum_j q^{(j+1)^2/2 - 2j},
// asserted equal to 1 + 2 q^{1/2}.
Cyclotomic odd_ribbon_jsum(std::int64_t n);

// Self-braiding scalar of the weight-s invertible module over the double of
// the Taft algebra at zeta_n: the R-matrix contracted twice against the
// character (a,d -> 0, b -> q^s, c -> q^{-s}).  Asserts and returns q^{-s^2}.
Cyclotomic taft_braiding_scalar(std::int64_t n, std::int64_t s);

// The invertibles of the Taft double as ribbon pointed data: Z_n with
// q(s) = zeta_n^{-s^2} and twist theta(s) = zeta_n^{s^2}.  The quadratic form
// is asserted valid; the character table is reported as-is (it is a genuine
// character only when n divides 4).
RibbonPointedData taft_invertible_data(std::int64_t n);

// Invertibles of a tensor product of even-order quantum sl2 factors with
// parameters p_list: Z_2^n with q(i) = i^{sum i_k p_k} and
// theta(i) = (-1)^{sum i_k} q(i).  Validated ribbon data.
RibbonPointedData deligne_invertible_data(const std::vector<std::int64_t>& p_list);

// The admissible subset H' = {i : 2 | sum i_k and 4 | sum i_k p_k}, on which
// q = 1 and theta = 1 (asserted).  H' need not be closed under addition, so
// it is returned as an element set with a closure flag, together with every
// subgroup contained in it.
struct AdmissibleSubset {
    std::vector<std::int64_t> element_indices;
    bool closed = false;
    std::vector<Subgroup> subgroups;
};

AdmissibleSubset deligne_admissible_subgroup(const std::vector<std::int64_t>& p_list,
                                             std::int64_t bound = 4096);

} // namespace metriq
