#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "metriq/abelian.hpp"
#include "metriq/cyclotomic.hpp"
#include "metriq/metric.hpp"

namespace metriq {

// Skeletal braided categorical data realizing a quadratic form: an associator
// 3-cocycle omega and a braiding c on a finite abelian group, stored as
// exponents of zeta_M.  The representative is built from per-coordinate data
// of a fixed cyclic decomposition; its correctness is enforced by brute-force
// pentagon/hexagon/diagonal checks in build_category, not trusted formulas.
struct PointedCategory {
    MetricGroup form;
    std::vector<std::int64_t> alpha;              // alpha[i] = q(e_i) exponent
    std::vector<std::vector<std::int64_t>> beta;  // beta[i][j] = b(e_i,e_j) exponent, i < j

    // Exponent of the associator (x+y)+z -> x+(y+z); arguments are reduced.
    std::int64_t omega_exp(const GroupElem& x, const GroupElem& y, const GroupElem& z) const;
    // Exponent of the braiding x+y -> y+x.
    std::int64_t c_exp(const GroupElem& x, const GroupElem& y) const;

    Cyclotomic omega(const GroupElem& x, const GroupElem& y, const GroupElem& z) const;
    Cyclotomic braiding(const GroupElem& x, const GroupElem& y) const;
};

// Builds the cocycle pair for a valid form; for |G| <= 64 every pentagon
// quadruple, both hexagons on every triple, the diagonal law c(g,g) = q(g)
// and the normalization are verified exhaustively.
// Throws ConstructionFailed if any check fails.
PointedCategory build_category(const MetricGroup& m);

// Multiplication 2-cochain psi on H x H solving, in exponents mod M,
//   d(psi) = omega|_H   and   psi(h,h') - psi(h',h) = c(h,h'),
// with psi(e,-) = psi(-,e) = 0.  Table is indexed by positions into
// h.element_indices.  Solved by integer linear algebra (Smith form);
// the returned solution is the canonical one and all constraints are
// re-verified on it.  Throws NotIsotropic if q|_H != 1, NoSolution if the
// system is inconsistent (impossible for isotropic H; signals a bug).
std::vector<std::vector<std::int64_t>> solve_commutative_cocycle(const PointedCategory& cat,
                                                                 const Subgroup& h);

// The algebra object A_H = sum of the invertibles in H, with multiplication
// psi, comultiplication delta_h -> sum_k (1/psi(h+k,-k)) delta_{h+k} x delta_{-k},
// and counit picking out the identity component.
struct CondensationAlgebra {
    PointedCategory cat;
    Subgroup h;
    std::vector<std::vector<std::int64_t>> psi_exp; // positions into h.element_indices

    Cyclotomic psi(std::size_t pos_a, std::size_t pos_b) const;
    // Coefficient of delta_{h+k} x delta_{-k} in Delta(delta_h), i.e.
    // 1/psi(h+k, -k); positions index h and k.
    Cyclotomic delta_coeff(std::size_t pos_h, std::size_t pos_k) const;
};

CondensationAlgebra build_algebra(const PointedCategory& cat, const Subgroup& h);

// Coefficientwise verification of the Frobenius-algebra axioms over the
// delta-basis, with explicit associator insertions (left-parenthesized
// convention for triple tensor products).
struct FrobeniusReport {
    bool associative = false;
    bool unital = false;
    bool coassociative = false;
    bool counital = false;
    bool frobenius = false;       // Delta mu = (mu x id) alpha^{-1} (id x Delta) = (id x mu) alpha (Delta x id)
    bool special = false;         // mu Delta = |H| id
    bool unit_counit = false;     // eps eta = 1
    Cyclotomic specialness;       // diagonal scalar of mu Delta at the identity component

    bool all_pass() const {
        return associative && unital && coassociative && counital && frobenius && special &&
               unit_counit;
    }
};

FrobeniusReport verify_frobenius(const CondensationAlgebra& alg);

// eps mu Delta eta evaluated in the delta-basis; equals |H| in characteristic 0.
Cyclotomic nakayama_trace(const CondensationAlgebra& alg);

// Condensation ladder for the simple-current algebra A_H: which structure the
// local-module category inherits.  Without a twist character chi the canonical
// twist theta = q is used (so theta|_H = 1 follows from isotropy); with chi,
// theta = q*chi.
struct ClassificationReport {
    bool ftc = true;         // local modules form a finite tensor category
    bool frobenius = true;   // A_H is Frobenius
    bool special = true;     // |H| invertible in characteristic 0
    bool symmetric = false;  // theta|_H = 1
    bool ribbon_local = false;
    bool mtc = false;        // symmetric and ambient form nondegenerate
    CondensationResult condensation;
    FrobeniusReport axioms;
};

ClassificationReport classify(const PointedCategory& cat,
                              const std::optional<std::vector<std::int64_t>>& chi_exp,
                              const Subgroup& h);

} // namespace metriq
