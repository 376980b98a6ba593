#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsgen/field.hpp"

// Difference matrices over Z_m^k: construction from finite-field
// multiplication tables, exhaustive verification, coordinate collapse,
// the five equivalence operations and order-normalization.

namespace rsgen {

// Element of Z_m^k, componentwise arithmetic mod m.
struct GroupElement {
    std::vector<int> coords;
    bool operator==(const GroupElement& other) const = default;
};

struct DiffFailure {
    int col_i = 0;
    int col_j = 0;
    GroupElement element;
    long long observed = 0;
    long long expected = 0;
};

struct DiffCheckReport {
    bool ok = false;
    std::optional<DiffFailure> failure;
    std::string message;  // one line, machine-parsable on failure
};

struct DifferenceMatrix {
    int mod = 2;  // group modulus m (prime for constructed matrices)
    int k = 1;    // group exponent, entries live in Z_mod^k
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<GroupElement>> entries;
    std::string provenance;  // "constructed(<modulus>)" or "loaded(<file>)"

    long long group_order() const;
    const GroupElement& at(int r, int c) const { return entries[r][c]; }
};

GroupElement group_add(const GroupElement& a, const GroupElement& b, int mod);
GroupElement group_sub(const GroupElement& a, const GroupElement& b, int mod);
GroupElement group_neg(const GroupElement& a, int mod);

// Total order on Z_m^k used for normalization: identity first, then the
// big-endian encoding sum coords[i]*m^(k-1-i) ascending. This matches the
// digit reading of the symbol recoding, so the 4x4 reference matrix over
// Z_2^2 is already order-normalized.
long long group_rank(const GroupElement& a, int mod);

// The p^k x p^k matrix over Z_p^n obtained by truncating every entry of the
// multiplication table of GF(p^k) to its first n coordinates.
DifferenceMatrix construct(int p, int k, int n,
                           std::optional<PolyZp> modulus = std::nullopt);

// Exhaustive check of the difference property: for every ordered pair of
// distinct columns, every group element must occur rows/m^k times among the
// row differences.
DiffCheckReport verify(const DifferenceMatrix& m);

// Entry (l,j) -> sum_i h[i] * entry(l,j).coords[i] mod m. Requires h != 0.
DifferenceMatrix collapse(const DifferenceMatrix& m, const std::vector<int>& h);

struct PermuteRows { std::vector<int> perm; };
struct PermuteCols { std::vector<int> perm; };
struct AddToRow { int row; GroupElement g; };
struct AddToCol { int col; GroupElement g; };
struct Automorphism { std::vector<std::vector<int>> mat; };  // invertible k x k over Z_m

using EquivalenceOp =
    std::variant<PermuteRows, PermuteCols, AddToRow, AddToCol, Automorphism>;

DifferenceMatrix apply_op(const DifferenceMatrix& m, const EquivalenceOp& op);

bool is_order_normalized(const DifferenceMatrix& m);

struct NormalizeResult {
    DifferenceMatrix matrix;
    std::vector<EquivalenceOp> ops;  // replaying these on the input gives matrix
};

// Zeroes the first row and column with operations 3/4, then alternately
// sorts rows and columns lexicographically until a full pass is stable.
NormalizeResult order_normalize(const DifferenceMatrix& m);

// JSON document {p, k, rows, cols, entries}; coordinates in coefficient
// order, c_1 first.
std::string to_json(const DifferenceMatrix& m);
DifferenceMatrix matrix_from_json(const std::string& text, const std::string& provenance);
DifferenceMatrix load_matrix(const std::string& path);
void save_matrix(const DifferenceMatrix& m, const std::string& path);

}  // namespace rsgen
