#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace metriq {

using IMat = std::vector<std::vector<mpz_class>>;
using IVec = std::vector<mpz_class>;

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal,
// diagonal entries nonnegative and each dividing the next.
struct SmithResult {
    IMat U; // rows x rows
    IMat D; // rows x cols, diagonal
    IMat V; // cols x cols
};

SmithResult smith_normal_form(const IMat& a);

// One solution x (entries reduced into [0, m)) of A x == b (mod m), or
// nullopt if the system is unsolvable.  Deterministic: the particular
// solution derived from the Smith form with minimal nonnegative residues.
std::optional<IVec> solve_linear_mod(const IMat& a, const IVec& b, const mpz_class& m);

// Basis of the column lattice of a (full row rank required): a lower
// triangular square matrix whose columns span the same lattice.
IMat lattice_column_basis(IMat a);

// Coordinates of v in the lower triangular basis b (forward substitution).
// Throws AssertionFailedError if v is not in the lattice.
IVec lattice_coords(const IMat& b, const IVec& v);

IVec mat_vec(const IMat& a, const IVec& v);

} // namespace metriq
