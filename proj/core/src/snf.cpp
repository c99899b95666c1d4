#include "metriq/snf.hpp"

#include <cstddef>

#include "metriq/errors.hpp"

namespace metriq {

namespace {

IMat identity(std::size_t n) {
    IMat m(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

void swap_rows(IMat& a, IMat& u, std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}

void swap_cols(IMat& a, IMat& v, std::size_t i, std::size_t j) {
    for (auto& row : a)
        std::swap(row[i], row[j]);
    for (auto& row : v)
        std::swap(row[i], row[j]);
}

// row_i -= q * row_t, mirrored in U.
void row_op(IMat& a, IMat& u, std::size_t i, std::size_t t, const mpz_class& q) {
    if (q == 0)
        return;
    for (std::size_t k = 0; k < a[i].size(); ++k)
        a[i][k] -= q * a[t][k];
    for (std::size_t k = 0; k < u[i].size(); ++k)
        u[i][k] -= q * u[t][k];
}

// col_j -= q * col_t, mirrored in V.
void col_op(IMat& a, IMat& v, std::size_t j, std::size_t t, const mpz_class& q) {
    if (q == 0)
        return;
    for (auto& row : a)
        row[j] -= q * row[t];
    for (auto& row : v)
        row[j] -= q * row[t];
}

void negate_row(IMat& a, IMat& u, std::size_t i) {
    for (auto& x : a[i])
        x = -x;
    for (auto& x : u[i])
        x = -x;
}

} // namespace

SmithResult smith_normal_form(const IMat& input) {
    IMat a = input;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    IMat u = identity(rows);
    IMat v = identity(cols);

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pick the absolutely smallest nonzero entry of the trailing block as
        // the pivot; this keeps intermediate growth tame.
        std::size_t pi = t, pj = t;
        bool found = false;
        mpz_class best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0)
                    continue;
                mpz_class mag = abs(a[i][j]);
                if (!found || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found)
            break;
        swap_rows(a, u, t, pi);
        swap_cols(a, v, t, pj);
        if (a[t][t] < 0)
            negate_row(a, u, t);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_op(a, u, i, t, q);
                if (a[i][t] != 0) { // remainder became the smaller pivot
                    swap_rows(a, u, t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_op(a, v, j, t, q);
                if (a[t][j] != 0) {
                    swap_cols(a, v, t, j);
                    dirty = true;
                }
            }
        }

        // Enforce that the pivot divides every remaining entry.
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i)
            for (std::size_t j = t + 1; j < cols && fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_op(a, u, t, i, mpz_class(-1)); // row_t += row_i
                    fixed = false;
                }
        if (!fixed)
            continue; // redo elimination at the same t
        ++t;
    }
    return SmithResult{std::move(u), std::move(a), std::move(v)};
}

std::optional<IVec> solve_linear_mod(const IMat& a, const IVec& b, const mpz_class& m) {
    if (m <= 0)
        throw InvalidInputError("solve_linear_mod: modulus must be positive");
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    SmithResult s = smith_normal_form(a);
    IVec c = mat_vec(s.U, b);
    IVec y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class ci = c[i] % m;
        if (ci < 0)
            ci += m;
        mpz_class d = (i < cols) ? s.D[i][i] : mpz_class(0);
        if (d == 0) {
            if (ci != 0)
                return std::nullopt;
            continue;
        }
        mpz_class g = gcd(d, m);
        if (ci % g != 0)
            return std::nullopt;
        // d*y == ci (mod m)  <=>  (d/g)*y == ci/g (mod m/g), d/g invertible.
        mpz_class mg = m / g;
        if (mg == 1) {
            y[i] = 0;
            continue;
        }
        mpz_class dg = (d / g) % mg;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), dg.get_mpz_t(), mg.get_mpz_t()) == 0)
            throw AssertionFailedError("solve_linear_mod: gcd-reduced pivot not invertible");
        y[i] = ((ci / g) % mg * inv) % mg;
    }
    IVec x = mat_vec(s.V, y);
    for (auto& xi : x) {
        xi %= m;
        if (xi < 0)
            xi += m;
    }
    return x;
}

IMat lattice_column_basis(IMat a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t r = 0; r < rows; ++r) {
        // Clear row r to a single nonzero entry at column r by column gcd ops.
        while (true) {
            std::size_t best_j = cols;
            for (std::size_t j = r; j < cols; ++j) {
                if (a[r][j] == 0)
                    continue;
                if (best_j == cols || abs(a[r][j]) < abs(a[r][best_j]))
                    best_j = j;
            }
            if (best_j == cols)
                throw AssertionFailedError("lattice_column_basis: matrix does not have full row rank");
            if (best_j != r)
                for (auto& row : a)
                    std::swap(row[r], row[best_j]);
            bool clear = true;
            for (std::size_t j = r + 1; j < cols; ++j) {
                if (a[r][j] == 0)
                    continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][r].get_mpz_t());
                for (std::size_t i = 0; i < rows; ++i)
                    a[i][j] -= q * a[i][r];
                if (a[r][j] != 0)
                    clear = false;
            }
            if (clear)
                break;
        }
        if (a[r][r] < 0)
            for (std::size_t i = 0; i < rows; ++i)
                a[i][r] = -a[i][r];
    }
    IMat basis(rows, IVec(rows, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j)
            basis[i][j] = a[i][j];
    return basis;
}

IVec lattice_coords(const IMat& b, const IVec& v) {
    const std::size_t n = b.size();
    IVec x(n, 0);
    IVec rem = v;
    for (std::size_t i = 0; i < n; ++i) {
        if (rem[i] % b[i][i] != 0)
            throw AssertionFailedError("lattice_coords: vector not in lattice");
        x[i] = rem[i] / b[i][i];
        for (std::size_t k = i; k < n; ++k)
            rem[k] -= x[i] * b[k][i];
    }
    for (const auto& r : rem)
        if (r != 0)
            throw AssertionFailedError("lattice_coords: vector not in lattice");
    return x;
}

IVec mat_vec(const IMat& a, const IVec& v) {
    IVec out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (a[i][j] != 0 && v[j] != 0)
                out[i] += a[i][j] * v[j];
    return out;
}

} // namespace metriq
