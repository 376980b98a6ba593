#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Exact arithmetic in Z_p, polynomials over Z_p and GF(p^k).
// All values are plain ints; everything here is integer-exact.

namespace rsgen {

// Polynomial over Z_p, coeffs[i] = coefficient of x^i, no trailing zeros.
struct PolyZp {
    int p = 2;
    std::vector<int> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }

    void normalize();
    bool operator==(const PolyZp& other) const = default;
    std::string to_string() const;
};

PolyZp poly_add(const PolyZp& a, const PolyZp& b);
PolyZp poly_sub(const PolyZp& a, const PolyZp& b);
PolyZp poly_mul(const PolyZp& a, const PolyZp& b);
// Remainder of a modulo a monic divisor.
PolyZp poly_mod(const PolyZp& a, const PolyZp& m);

bool is_prime(int n);

// Irreducibility over Z_p by exhaustive trial division with all monic
// polynomials of degree 1..deg/2. Parameters stay tiny, so this is fine.
bool is_irreducible(const PolyZp& f);

// Lexicographically smallest monic irreducible of degree k over Z_p,
// where candidates are ordered by the base-p integer encoding of
// (c_0,...,c_{k-1}). Throws std::invalid_argument for non-prime p or k < 1.
PolyZp find_irreducible(int p, int k);

// Element of GF(p^k) as a coefficient vector of length exactly k.
struct FieldElement {
    std::vector<int> coeffs;
    bool operator==(const FieldElement& other) const = default;
};

// GF(p^k) with a fixed monic irreducible modulus. Elements are enumerated
// canonically by the integer encoding sum coeffs[i]*p^i, so index 0 is the
// zero element and index 1 is the unit.
class FieldContext {
public:
    // Uses find_irreducible(p, k) when no modulus is given.
    FieldContext(int p, int k, std::optional<PolyZp> modulus = std::nullopt);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const PolyZp& modulus() const { return modulus_; }

    FieldElement element(int index) const;
    int index_of(const FieldElement& e) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;

    // q x q grid, entry (i,j) = element(i) * element(j).
    std::vector<std::vector<FieldElement>> multiplication_table() const;

private:
    int p_;
    int k_;
    int q_;
    PolyZp modulus_;
};

// First n coefficients (c_0,...,c_{n-1}) of e; 1 <= n <= len(e).
std::vector<int> project_phi(const FieldElement& e, int n);

}  // namespace rsgen
