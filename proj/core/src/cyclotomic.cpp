#include "metriq/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "metriq/errors.hpp"

namespace metriq {

namespace {

// Per-order field data: the cyclotomic polynomial Phi_n and reduction rows
// expressing x^j mod Phi_n (deg <= j <= jmax) in the canonical power basis.
struct FieldTable {
    std::int64_t n = 1;
    std::size_t deg = 1;                          // deg Phi_n = phi(n)
    std::vector<mpz_class> phi;                   // size deg+1, monic
    std::vector<std::vector<mpz_class>> pow_red;  // row j-deg: x^j reduced
};

// Exact division of integer polynomials, divisor monic.  Remainder must
// vanish; used only for Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
std::vector<mpz_class> exact_poly_div(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size())
        throw AssertionFailedError("polynomial division underflow");
    std::vector<mpz_class> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        mpz_class c = num[i]; // den is monic
        if (c == 0)
            continue;
        quot[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j)
            num[i - dd + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0)
            throw AssertionFailedError("cyclotomic polynomial division left a remainder");
    return quot;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
    std::vector<std::int64_t> divs;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d)
                divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

class FieldCache {
  public:
    std::shared_ptr<const FieldTable> get(std::int64_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = tables_.find(n);
        if (it != tables_.end())
            return it->second;
        auto table = std::make_shared<FieldTable>(build(n));
        tables_.emplace(n, table);
        return table;
    }

  private:
    // Phi_n by recursive division of x^n - 1 by Phi_d over proper divisors.
    const std::vector<mpz_class>& phi_poly(std::int64_t n) {
        auto it = phis_.find(n);
        if (it != phis_.end())
            return it->second;
        for (std::int64_t d : divisors_of(n)) {
            if (phis_.count(d))
                continue;
            std::vector<mpz_class> num(static_cast<std::size_t>(d) + 1, 0);
            num[0] = -1;
            num[static_cast<std::size_t>(d)] = 1;
            for (std::int64_t e : divisors_of(d))
                if (e != d)
                    num = exact_poly_div(std::move(num), phis_.at(e));
            phis_.emplace(d, std::move(num));
        }
        return phis_.at(n);
    }

    FieldTable build(std::int64_t n) {
        if (n < 1)
            throw InvalidInputError("cyclotomic order must be >= 1");
        if (n > 1000000)
            throw TooLargeError("cyclotomic order " + std::to_string(n) + " exceeds 10^6");
        FieldTable t;
        t.n = n;
        t.phi = phi_poly(n);
        t.deg = t.phi.size() - 1;
        // Reduction rows for x^j, j = deg .. jmax.  jmax covers both products
        // of canonical forms (2*deg-2) and raw exponent vectors (n-1).
        const std::int64_t jmax =
            std::max<std::int64_t>(2 * static_cast<std::int64_t>(t.deg) - 2, n - 1);
        if (jmax >= static_cast<std::int64_t>(t.deg)) {
            std::vector<mpz_class> row(t.deg);
            for (std::size_t i = 0; i < t.deg; ++i)
                row[i] = -t.phi[i]; // x^deg = -(lower part), Phi monic
            t.pow_red.push_back(row);
            for (std::int64_t j = static_cast<std::int64_t>(t.deg) + 1; j <= jmax; ++j) {
                std::vector<mpz_class> next(t.deg, 0);
                const std::vector<mpz_class>& prev = t.pow_red.back();
                mpz_class top = prev[t.deg - 1];
                for (std::size_t i = t.deg - 1; i >= 1; --i)
                    next[i] = prev[i - 1] + top * t.pow_red.front()[i];
                next[0] = top * t.pow_red.front()[0];
                t.pow_red.push_back(std::move(next));
            }
        }
        return t;
    }

    std::mutex mutex_;
    std::map<std::int64_t, std::shared_ptr<const FieldTable>> tables_;
    std::map<std::int64_t, std::vector<mpz_class>> phis_;
};

FieldCache& cache() {
    static FieldCache instance;
    return instance;
}

// Canonical form of a raw coefficient vector (indexed by exponent, any length
// <= jmax+1) in Q(zeta_n).
std::vector<mpq_class> reduce_raw(const FieldTable& t, const std::vector<mpq_class>& raw) {
    std::vector<mpq_class> out(t.deg, mpq_class(0));
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (raw[j] == 0)
            continue;
        if (j < t.deg) {
            out[j] += raw[j];
        } else {
            const auto& row = t.pow_red.at(j - t.deg);
            for (std::size_t i = 0; i < t.deg; ++i)
                if (row[i] != 0)
                    out[i] += raw[j] * row[i];
        }
    }
    return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

// deg(p) with the zero polynomial mapped to -1.
int poly_deg(const std::vector<mpq_class>& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0)
            return static_cast<int>(i);
    return -1;
}

} // namespace

Cyclotomic::Cyclotomic() : order_(1), coeffs_(1, mpq_class(0)) {}

Cyclotomic::Cyclotomic(const mpq_class& value) : order_(1), coeffs_(1, value) {
    coeffs_[0].canonicalize();
}

Cyclotomic::Cyclotomic(std::int64_t value) : order_(1), coeffs_(1, mpq_class(value)) {}

Cyclotomic::Cyclotomic(std::int64_t order, std::vector<mpq_class> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::root_of_unity(std::int64_t n, std::int64_t k) {
    if (n < 1)
        throw InvalidInputError("root_of_unity: order must be >= 1");
    auto table = cache().get(n);
    k %= n;
    if (k < 0)
        k += n;
    std::vector<mpq_class> raw(static_cast<std::size_t>(n), mpq_class(0));
    raw[static_cast<std::size_t>(k)] = 1;
    return Cyclotomic(n, reduce_raw(*table, raw));
}

Cyclotomic Cyclotomic::zero(std::int64_t n) {
    if (n < 1)
        throw InvalidInputError("zero: order must be >= 1");
    auto table = cache().get(n);
    return Cyclotomic(n, std::vector<mpq_class>(table->deg, mpq_class(0)));
}

bool Cyclotomic::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpq_class& c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

std::optional<mpq_class> Cyclotomic::rational_value() const {
    if (!is_rational())
        return std::nullopt;
    return coeffs_[0];
}

Cyclotomic Cyclotomic::embedded(std::int64_t m) const {
    if (m % order_ != 0)
        throw InvalidInputError("embedded: target order must be a multiple of the current order");
    if (m == order_)
        return *this;
    auto table = cache().get(m);
    const std::int64_t ratio = m / order_;
    std::vector<mpq_class> raw(static_cast<std::size_t>(m), mpq_class(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
        if (coeffs_[j] != 0)
            raw[j * static_cast<std::size_t>(ratio)] = coeffs_[j];
    return Cyclotomic(m, reduce_raw(*table, raw));
}

std::optional<Cyclotomic> Cyclotomic::restricted(std::int64_t m) const {
    if (m < 1 || order_ % m != 0)
        throw InvalidInputError("restricted: target order must divide the current order");
    if (m == order_)
        return *this;
    auto big = cache().get(order_);
    auto small = cache().get(m);
    // Solve sum_j b_j * (zeta_m^j embedded) = *this by Gaussian elimination
    // over Q: unknowns are the canonical coefficients of the restriction.
    const std::size_t rows = big->deg, cols = small->deg;
    std::vector<std::vector<mpq_class>> mat(rows, std::vector<mpq_class>(cols + 1, mpq_class(0)));
    for (std::size_t j = 0; j < cols; ++j) {
        Cyclotomic basis = root_of_unity(m, static_cast<std::int64_t>(j)).embedded(order_);
        for (std::size_t i = 0; i < rows; ++i)
            mat[i][j] = basis.coeffs()[i];
    }
    for (std::size_t i = 0; i < rows; ++i)
        mat[i][cols] = coeffs_[i];
    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && mat[sel][c] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(mat[sel], mat[pivot_row]);
        mpq_class inv = 1 / mat[pivot_row][c];
        for (std::size_t k = c; k <= cols; ++k)
            mat[pivot_row][k] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || mat[r][c] == 0)
                continue;
            mpq_class f = mat[r][c];
            for (std::size_t k = c; k <= cols; ++k)
                mat[r][k] -= f * mat[pivot_row][k];
        }
        pivot_col.push_back(c);
        ++pivot_row;
    }
    for (std::size_t r = pivot_row; r < rows; ++r)
        if (mat[r][cols] != 0)
            return std::nullopt; // inconsistent: value not in Q(zeta_m)
    std::vector<mpq_class> sol(cols, mpq_class(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        sol[pivot_col[r]] = mat[r][cols];
    return Cyclotomic(m, std::move(sol));
}

Cyclotomic Cyclotomic::operator-() const {
    std::vector<mpq_class> out(coeffs_);
    for (auto& c : out)
        c = -c;
    return Cyclotomic(order_, std::move(out));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& rhs) const {
    if (order_ != rhs.order_) {
        std::int64_t m = lcm64(order_, rhs.order_);
        return embedded(m) + rhs.embedded(m);
    }
    std::vector<mpq_class> out(coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += rhs.coeffs_[i];
    return Cyclotomic(order_, std::move(out));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& rhs) const { return *this + (-rhs); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& rhs) const {
    if (order_ != rhs.order_) {
        std::int64_t m = lcm64(order_, rhs.order_);
        return embedded(m) * rhs.embedded(m);
    }
    auto table = cache().get(order_);
    std::vector<mpq_class> raw(2 * table->deg - 1, mpq_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            if (rhs.coeffs_[j] != 0)
                raw[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return Cyclotomic(order_, reduce_raw(*table, raw));
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& rhs) const { return *this * rhs.inverse(); }

bool Cyclotomic::operator==(const Cyclotomic& rhs) const {
    if (order_ == rhs.order_)
        return coeffs_ == rhs.coeffs_;
    std::int64_t m = lcm64(order_, rhs.order_);
    return embedded(m).coeffs_ == rhs.embedded(m).coeffs_;
}

Cyclotomic Cyclotomic::conj() const {
    auto table = cache().get(order_);
    std::vector<mpq_class> raw(static_cast<std::size_t>(order_), mpq_class(0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0)
            continue;
        std::size_t e = (j == 0) ? 0 : static_cast<std::size_t>(order_) - j;
        raw[e] += coeffs_[j];
    }
    return Cyclotomic(order_, reduce_raw(*table, raw));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero())
        throw DivisionByZeroError("inverse of zero in Q(zeta_" + std::to_string(order_) + ")");
    auto table = cache().get(order_);
    // Extended Euclid over Q[x] against Phi_n (irreducible, so the gcd of any
    // nonzero canonical representative with Phi_n is a nonzero constant).
    std::vector<mpq_class> r0(table->phi.size());
    for (std::size_t i = 0; i < table->phi.size(); ++i)
        r0[i] = mpq_class(table->phi[i]);
    std::vector<mpq_class> r1(coeffs_);
    std::vector<mpq_class> s0(1, mpq_class(0)), s1(1, mpq_class(1));
    while (true) {
        int d1 = poly_deg(r1);
        if (d1 < 0)
            throw AssertionFailedError("gcd with irreducible Phi_n vanished");
        if (d1 == 0)
            break;
        int d0 = poly_deg(r0);
        // r0 = q*r1 + rem; then (r0, r1) <- (r1, rem), (s0, s1) <- (s1, s0 - q*s1)
        std::vector<mpq_class> rem(r0);
        std::vector<mpq_class> q(static_cast<std::size_t>(d0 - d1 + 1), mpq_class(0));
        for (int i = d0; i >= d1; --i) {
            if (rem[static_cast<std::size_t>(i)] == 0)
                continue;
            mpq_class c = rem[static_cast<std::size_t>(i)] / r1[static_cast<std::size_t>(d1)];
            q[static_cast<std::size_t>(i - d1)] = c;
            for (int j = 0; j <= d1; ++j)
                rem[static_cast<std::size_t>(i - d1 + j)] -= c * r1[static_cast<std::size_t>(j)];
        }
        std::vector<mpq_class> s2(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i)
            s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0)
                continue;
            for (std::size_t j = 0; j < s1.size(); ++j)
                s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant c with s1 * this == c (mod Phi_n).
    mpq_class c = r1[0];
    std::vector<mpq_class> raw(s1);
    for (auto& v : raw)
        v /= c;
    return Cyclotomic(order_, reduce_raw(*table, raw));
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
    if (e < 0)
        return inverse().pow(-e);
    Cyclotomic result(1);
    Cyclotomic base(*this);
    while (e > 0) {
        if (e & 1)
            result = result * base;
        base = base * base;
        e >>= 1;
    }
    // Keep the result in the same field as the operand.
    return result.embedded(lcm64(result.order(), order_));
}

Cyclotomic Cyclotomic::scaled(const mpq_class& r) const {
    std::vector<mpq_class> out(coeffs_);
    for (auto& c : out)
        c *= r;
    return Cyclotomic(order_, std::move(out));
}

std::complex<double> Cyclotomic::numeric(int digits) const {
    if (digits < 1 || digits > 12)
        throw InvalidInputError("numeric: supported precision is 1..12 digits");
    long double re = 0, im = 0;
    const long double tau = 6.283185307179586476925286766559L;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0)
            continue;
        long double c = static_cast<long double>(coeffs_[j].get_d());
        long double angle = tau * static_cast<long double>(j) / static_cast<long double>(order_);
        re += c * cosl(angle);
        im += c * sinl(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::string Cyclotomic::str() const {
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0)
            continue;
        mpq_class c = coeffs_[j];
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? "-" : "+");
            if (c < 0)
                c = -c;
        }
        first = false;
        if (j == 0) {
            out << c.get_str();
        } else {
            if (c != 1)
                out << c.get_str() << "*";
            out << "z" << order_;
            if (j > 1)
                out << "^" << j;
        }
    }
    return out.str();
}

Cyclotomic geometric_sum(std::int64_t n, std::int64_t r) {
    if (n <= 1)
        throw InvalidInputError("geometric_sum: order must be > 1");
    Cyclotomic sum = Cyclotomic::zero(n);
    for (std::int64_t j = 0; j < n; ++j)
        sum = sum + Cyclotomic::root_of_unity(n, r * j);
    Cyclotomic expected = (r % n == 0) ? Cyclotomic(n).embedded(n) : Cyclotomic::zero(n);
    if (!(sum == expected))
        throw AssertionFailedError("geometric_sum: canonical reduction self-test failed");
    return sum;
}

Cyclotomic gauss_sqrt(std::int64_t p) {
    if (p < 1)
        throw InvalidInputError("gauss_sqrt: p must be >= 1");
    const std::int64_t n = 4 * p;
    Cyclotomic s = Cyclotomic::zero(n);
    for (std::int64_t k = 0; k < n; ++k)
        s = s + Cyclotomic::root_of_unity(n, k * k);
    Cyclotomic one_plus_i = Cyclotomic(1) + Cyclotomic::root_of_unity(4, 1);
    Cyclotomic root = s / one_plus_i;
    if (!(root.conj() == root))
        throw AssertionFailedError("gauss_sqrt: result is not real");
    if (!(root * root == Cyclotomic(n).embedded(root.order())))
        throw AssertionFailedError("gauss_sqrt: result does not square to 4p");
    if (root.numeric(6).real() <= 0)
        throw AssertionFailedError("gauss_sqrt: wrong sign branch");
    return root;
}

} // namespace metriq
