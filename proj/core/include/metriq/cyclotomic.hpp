#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace metriq {

// An element of the cyclotomic field Q(zeta_n), zeta_n = exp(2*pi*i/n).
//
// The canonical representation is the remainder modulo the n-th cyclotomic
// polynomial Phi_n: a polynomial in zeta_n of degree < deg(Phi_n) = phi(n)
// with exact rational coefficients.  Two elements of the same order are equal
// iff their coefficient vectors are equal; elements of different orders are
// compared after embedding both into Q(zeta_lcm).  All values are immutable.
class Cyclotomic {
  public:
    // Zero of Q(zeta_1) = Q.
    Cyclotomic();
    // A rational constant, as an element of Q(zeta_1).
    explicit Cyclotomic(const mpq_class& value);
    explicit Cyclotomic(std::int64_t value);

    // zeta_n^k.  Requires n >= 1; k may be any integer (reduced mod n).
    static Cyclotomic root_of_unity(std::int64_t n, std::int64_t k);
    // Zero element carried in Q(zeta_n).
    static Cyclotomic zero(std::int64_t n);

    std::int64_t order() const { return order_; }
    // Canonical coefficients: coeffs()[j] multiplies zeta_n^j, j < phi(n).
    const std::vector<mpq_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // The value as a rational if it lies in Q, otherwise nullopt.
    std::optional<mpq_class> rational_value() const;

    // Image in Q(zeta_m) for order() | m.
    Cyclotomic embedded(std::int64_t m) const;
    // Preimage in Q(zeta_m) for m | order(), if the value lies there.
    std::optional<Cyclotomic> restricted(std::int64_t m) const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& rhs) const;
    Cyclotomic operator-(const Cyclotomic& rhs) const;
    Cyclotomic operator*(const Cyclotomic& rhs) const;
    // Field division; throws DivisionByZeroError if rhs == 0.
    Cyclotomic operator/(const Cyclotomic& rhs) const;

    bool operator==(const Cyclotomic& rhs) const;
    bool operator!=(const Cyclotomic& rhs) const { return !(*this == rhs); }

    // Complex conjugate (zeta_n -> zeta_n^{n-1}); a ring involution.
    Cyclotomic conj() const;
    // Multiplicative inverse; throws DivisionByZeroError on zero.
    Cyclotomic inverse() const;
    // Integer power (negative exponents go through inverse()).
    Cyclotomic pow(std::int64_t e) const;

    // Scale by an exact rational.
    Cyclotomic scaled(const mpq_class& r) const;

    // Floating approximation, accurate to at least `digits` decimal digits
    // (1 <= digits <= 12).  Used only to disambiguate signs and branches;
    // every equality decision in the library is exact.
    std::complex<double> numeric(int digits = 12) const;

    // Deterministic human-readable form, e.g. "-1", "2+2*z8", "1/2*z12^3".
    std::string str() const;

  private:
    Cyclotomic(std::int64_t order, std::vector<mpq_class> coeffs);

    std::int64_t order_;
    std::vector<mpq_class> coeffs_; // size == deg(Phi_order), canonical
};

// Sum of the r-th powers of all n-th roots of unity, n > 1.  Equals n when
// n | r and 0 otherwise; the equality is asserted internally, which makes the
// call a self-test of canonical reduction.
Cyclotomic geometric_sum(std::int64_t n, std::int64_t r);

// The positive square root of 4p inside Q(zeta_4p), realized exactly as
// S / (1 + i) where S = sum_{k=0}^{4p-1} zeta_{4p}^{k^2} is the quadratic
// Gauss sum.  The result is real, positive, and squares to 4p (asserted).
Cyclotomic gauss_sqrt(std::int64_t p);

} // namespace metriq
