#pragma once

#include <vector>

#include "expcodes/field.hpp"

namespace expcodes {

/// Dense row-major matrix over GF(q).
using GfMatrix = std::vector<std::vector<symbol>>;

/// In-place reduced row echelon form. Returns the rank; if pivot_cols is
/// non-null it receives the pivot column of each of the first rank rows.
int rref(GfMatrix& m, const Field& f, std::vector<int>* pivot_cols = nullptr);

int rank(GfMatrix m, const Field& f);

/// Basis of {x : m x = 0}, one vector per row. Deterministic: free columns
/// are scanned in ascending order and each basis vector has a 1 there.
GfMatrix nullspace_basis(GfMatrix m, const Field& f);

GfMatrix mat_mul(const GfMatrix& a, const GfMatrix& b, const Field& f);
GfMatrix transpose(const GfMatrix& m);

/// Row vector times matrix (message encoding style).
Word vec_mat(const Word& v, const GfMatrix& m, const Field& f);

/// Inverse of a square invertible matrix; throws if singular.
GfMatrix mat_inv(GfMatrix m, const Field& f);

}  // namespace expcodes
