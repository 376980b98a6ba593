#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rsgen/diffmat.hpp"

// Generalized Rudin-Shapiro sequences read off a difference matrix:
// a(q*n + j) = a(n) + m[n mod q][j mod q], plus the digit closed form,
// the composite multi-prime construction and an incremental streaming
// evaluator for bulk sums.

namespace rsgen {

// Number of "11" blocks in the binary representation of n, mod 2.
int classical_rs(std::uint64_t n);

// Mixed-radix recoding (big-endian): (c_1,...,c_k) -> sum c_i * p^(k-i),
// so over Z_2^2: (0,1) -> 1 and (1,0) -> 2.
int recode(const GroupElement& g, int p);

// One prime-power factor: a verified square difference matrix over Z_p^k
// together with the initial value a(0). Immutable after construction.
class FactorGenerator {
public:
    // Throws std::invalid_argument if the matrix is not square p^k x p^k
    // with p prime, or fails verification.
    FactorGenerator(DifferenceMatrix matrix, GroupElement a0);
    explicit FactorGenerator(DifferenceMatrix matrix);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const DifferenceMatrix& matrix() const { return matrix_; }
    const GroupElement& a0() const { return a0_; }

    // g(j, n) = matrix entry at (n mod q, j mod q).
    GroupElement g_lookup(std::uint64_t j, std::uint64_t n) const;

    // Def-by-recursion and digit closed form; the two must agree.
    GroupElement value_recursive(std::uint64_t n) const;
    GroupElement value_digits(std::uint64_t n) const;

    // Recoded symbol in [0, q).
    int symbol(std::uint64_t n) const { return recode(value_digits(n), p_); }

    // Internal dense encoding (little-endian element index in [0, q)).
    int encode(const GroupElement& g) const;
    GroupElement decode(int idx) const;
    int add_enc(int a, int b) const { return add_[a * q_ + b]; }
    int sub_enc(int a, int b) const { return sub_[a * q_ + b]; }
    int g_enc(int j_mod, int n_mod) const { return table_[n_mod * q_ + j_mod]; }
    int a0_enc() const { return a0_enc_; }
    int recode_enc(int idx) const { return recode_[idx]; }
    // a(n) as an encoded element.
    int value_enc(std::uint64_t n) const;

private:
    DifferenceMatrix matrix_;
    GroupElement a0_;
    int p_, k_, q_;
    int a0_enc_;
    std::vector<int> table_;   // q*q, encoded matrix entries
    std::vector<int> add_;     // q*q encoded addition
    std::vector<int> sub_;     // q*q encoded subtraction
    std::vector<int> recode_;  // encoded index -> symbol
};

// Product construction over pairwise distinct primes; the alphabet has
// size K = prod q_i and symbols are the mixed-radix combination of the
// per-factor recodings, factor 0 most significant.
class CompositeGenerator {
public:
    explicit CompositeGenerator(std::vector<FactorGenerator> factors);

    const std::vector<FactorGenerator>& factors() const { return factors_; }
    long long alphabet_size() const { return alphabet_; }

    int value(std::uint64_t n) const;
    std::vector<int> tuple(std::uint64_t n) const;  // per-factor recoded values

private:
    std::vector<FactorGenerator> factors_;
    long long alphabet_;
};

// Incremental cursor over one factor: base-q digit counter plus a running
// sum of the per-digit matrix terms, amortized O(1) per step.
class FactorCursor {
public:
    FactorCursor(const FactorGenerator& f, std::uint64_t start);

    // Encoded a(n) at the cursor position.
    int current_enc() const { return gen_->add_enc(gen_->a0_enc(), total_); }
    int current_symbol() const { return gen_->recode_enc(current_enc()); }
    void advance();

private:
    const FactorGenerator* gen_;
    std::vector<int> digits_;
    std::vector<int> terms_;  // terms_[i] = g(digit_i, digit_{i+1}) encoded
    int total_;               // encoded sum of terms_
    int term_at(std::size_t i) const;
};

// Streams symbols for n = start, start+1, ... over a composite generator.
class SymbolStream {
public:
    SymbolStream(const CompositeGenerator& gen, std::uint64_t start);

    int next();  // symbol at the cursor, then advance

private:
    const CompositeGenerator* gen_;
    std::vector<FactorCursor> cursors_;
};

// Convenience bulk evaluation; throws std::overflow_error if start+count
// does not fit in 64 bits.
std::vector<int> stream_symbols(const CompositeGenerator& gen,
                                std::uint64_t start, std::uint64_t count);

}  // namespace rsgen
