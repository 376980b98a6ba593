#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rsgen/sequence.hpp"

// Exact order-2 correlation sums, the exponential sums S_N from the
// correlation identity, the explicit error-term bound and CSV sweeps.

namespace rsgen {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);  // reduces, den > 0
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;  // "num/den", reduced
    bool operator==(const Rational& other) const = default;
};

Rational rational_sub(const Rational& a, const Rational& b);

struct ShiftPair {
    std::uint64_t r1 = 0;
    std::uint64_t r2 = 1;  // requires r1 < r2
    std::uint64_t r() const { return r2 - r1; }
};

struct CorrelationReport {
    std::uint64_t N = 0;
    ShiftPair shift;
    std::uint64_t sum = 0;   // exact sum of delta(n+r1, n+r2), n < N
    Rational main;           // N * (K-1)/K
    Rational deviation;      // sum - main
    double normalized = 0;   // sum / N
};

inline int delta(int x, int y) { return x == y ? 0 : 1; }

// Exact integer correlation sum over two synchronized streams. The range
// [0,N) may be split across workers; the integer result is identical for
// any worker count.
CorrelationReport correlation_sum(const CompositeGenerator& gen, std::uint64_t N,
                                  ShiftPair shift, int threads = 1);

// Finite-N proxy for the liminf correlation coefficient: sum/N exactly.
Rational c_r_estimate(const CompositeGenerator& gen, std::uint64_t N,
                      ShiftPair shift, int threads = 1);

struct ExpSumResult {
    std::vector<int> h;
    std::complex<double> value;
    double modulus_bound = 0;  // theorem bound when N > r*q, else 0
};

// S_N(h) = sum_{n<N} e((1/p) sum_i h_i (a_i(n+r2) - a_i(n+r1))), accumulated
// with compensated summation.
ExpSumResult exponential_sum(const FactorGenerator& gen, const std::vector<int>& h,
                             ShiftPair shift, std::uint64_t N);

// Explicit bound r * (q(q-1)(q+2) / (2k ln p)) * ln(N/r) + r(q+2), valid for
// N > r*q (natural logarithm). Throws std::domain_error otherwise.
double theorem_bound(int p, int k, std::uint64_t r, std::uint64_t N);

// | sum delta - [N(1-1/q) - (1/q) Re sum_{h!=0} S_N(h)] |; the identity is
// exact, so the residual is pure floating-point accumulation error.
double identity_residual(const FactorGenerator& gen, ShiftPair shift, std::uint64_t N);

struct SweepSpec {
    std::vector<FactorGenerator> factors;
    std::vector<std::uint64_t> lengths;
    std::vector<ShiftPair> shifts;
};

// One CSV row per (N, shift) cell, N-major order. Columns:
// N,r1,r2,sum,main_num,main_den,deviation,normalized,bound
// (bound only for single-factor generators with N > r*q).
void sweep(const SweepSpec& spec, std::ostream& out, int threads = 1);

}  // namespace rsgen
