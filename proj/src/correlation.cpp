#include "rsgen/correlation.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace rsgen {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

std::string Rational::to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational rational_sub(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

namespace {

std::uint64_t count_chunk(const CompositeGenerator& gen, std::uint64_t start,
                          std::uint64_t count, std::uint64_t r1, std::uint64_t r2) {
    SymbolStream s1(gen, start + r1);
    SymbolStream s2(gen, start + r2);
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < count; ++i) acc += delta(s1.next(), s2.next());
    return acc;
}

}  // namespace

CorrelationReport correlation_sum(const CompositeGenerator& gen, std::uint64_t N,
                                  ShiftPair shift, int threads) {
    if (N < 1) throw std::invalid_argument("correlation_sum: N must be >= 1");
    if (shift.r1 >= shift.r2) throw std::invalid_argument("correlation_sum: need r1 < r2");
    if (N + shift.r2 < N || N + shift.r2 > (std::uint64_t{1} << 63))
        throw std::overflow_error("correlation_sum: index range exceeds 2^63");
    if (threads < 1) threads = 1;
    if (static_cast<std::uint64_t>(threads) > N) threads = static_cast<int>(N);

    std::uint64_t total = 0;
    if (threads == 1) {
        total = count_chunk(gen, 0, N, shift.r1, shift.r2);
    } else {
        std::vector<std::uint64_t> partial(threads, 0);
        std::vector<std::thread> workers;
        std::uint64_t chunk = N / threads;
        std::uint64_t rem = N % threads;
        std::uint64_t start = 0;
        for (int t = 0; t < threads; ++t) {
            std::uint64_t len = chunk + (static_cast<std::uint64_t>(t) < rem ? 1 : 0);
            workers.emplace_back([&gen, &partial, t, start, len, shift] {
                partial[t] = count_chunk(gen, start, len, shift.r1, shift.r2);
            });
            start += len;
        }
        for (auto& w : workers) w.join();
        for (std::uint64_t p : partial) total += p;
    }

    CorrelationReport rep;
    rep.N = N;
    rep.shift = shift;
    rep.sum = total;
    long long K = gen.alphabet_size();
    long long n = static_cast<long long>(N);
    rep.main = Rational(n * (K - 1), K);
    rep.deviation = Rational(static_cast<long long>(total) * K - n * (K - 1), K);
    rep.normalized = static_cast<double>(total) / static_cast<double>(N);
    return rep;
}

Rational c_r_estimate(const CompositeGenerator& gen, std::uint64_t N, ShiftPair shift,
                      int threads) {
    CorrelationReport rep = correlation_sum(gen, N, shift, threads);
    return Rational(static_cast<long long>(rep.sum), static_cast<long long>(N));
}

double theorem_bound(int p, int k, std::uint64_t r, std::uint64_t N) {
    if (!is_prime(p) || k < 1 || r < 1) throw std::invalid_argument("theorem_bound: bad parameters");
    double q = std::pow(static_cast<double>(p), k);
    if (static_cast<double>(N) <= static_cast<double>(r) * q)
        throw std::domain_error("theorem_bound: requires N > r*p^k");
    double rr = static_cast<double>(r);
    double constant = q * (q - 1.0) * (q + 2.0) / (2.0 * k * std::log(static_cast<double>(p)));
    return rr * constant * std::log(static_cast<double>(N) / rr) + rr * (q + 2.0);
}

ExpSumResult exponential_sum(const FactorGenerator& gen, const std::vector<int>& h,
                             ShiftPair shift, std::uint64_t N) {
    if (static_cast<int>(h.size()) != gen.k())
        throw std::invalid_argument("exponential_sum: h has wrong length");
    bool nonzero = false;
    for (int v : h) {
        if (v < 0 || v >= gen.p()) throw std::invalid_argument("exponential_sum: h_i out of range");
        if (v != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument("exponential_sum: h must be nonzero");
    if (shift.r1 >= shift.r2) throw std::invalid_argument("exponential_sum: need r1 < r2");

    int p = gen.p();
    int q = gen.q();
    // dot[e] = sum_i h_i * coords_i(e) mod p, for every encoded element.
    std::vector<int> dot(q);
    for (int e = 0; e < q; ++e) {
        GroupElement g = gen.decode(e);
        int v = 0;
        for (int i = 0; i < gen.k(); ++i) v = (v + h[i] * g.coords[i]) % p;
        dot[e] = v;
    }
    std::vector<double> re(p), im(p);
    for (int c = 0; c < p; ++c) {
        double angle = 2.0 * M_PI * c / p;
        re[c] = std::cos(angle);
        im[c] = std::sin(angle);
    }

    FactorCursor c1(gen, shift.r1);
    FactorCursor c2(gen, shift.r2);
    // Kahan-compensated accumulation, real and imaginary parts separately.
    double sr = 0, cr = 0, si = 0, ci = 0;
    for (std::uint64_t n = 0; n < N; ++n) {
        int d = dot[gen.sub_enc(c2.current_enc(), c1.current_enc())];
        double yr = re[d] - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = im[d] - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
        c1.advance();
        c2.advance();
    }

    ExpSumResult res;
    res.h = h;
    res.value = {sr, si};
    std::uint64_t r = shift.r();
    if (static_cast<double>(N) > static_cast<double>(r) * q)
        res.modulus_bound = theorem_bound(p, gen.k(), r, N);
    return res;
}

double identity_residual(const FactorGenerator& gen, ShiftPair shift, std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("identity_residual: N must be >= 1");
    CompositeGenerator single({gen});
    CorrelationReport rep = correlation_sum(single, N, shift, 1);

    int q = gen.q();
    int p = gen.p();
    int k = gen.k();
    double real_part = 0;
    // All q-1 nonzero coefficient vectors.
    std::vector<int> h(k, 0);
    for (int code = 1; code < q; ++code) {
        int c = code;
        for (int i = 0; i < k; ++i) {
            h[i] = c % p;
            c /= p;
        }
        real_part += exponential_sum(gen, h, shift, N).value.real();
    }
    double predicted = static_cast<double>(N) * (1.0 - 1.0 / q) - real_part / q;
    return std::abs(static_cast<double>(rep.sum) - predicted);
}

void sweep(const SweepSpec& spec, std::ostream& out, int threads) {
    CompositeGenerator gen(spec.factors);
    out << "N,r1,r2,sum,main_num,main_den,deviation,normalized,bound\n";
    char buf[64];
    for (std::uint64_t N : spec.lengths) {
        for (const ShiftPair& shift : spec.shifts) {
            CorrelationReport rep = correlation_sum(gen, N, shift, threads);
            std::snprintf(buf, sizeof buf, "%.9f", rep.normalized);
            out << N << ',' << shift.r1 << ',' << shift.r2 << ',' << rep.sum << ','
                << rep.main.num << ',' << rep.main.den << ','
                << rep.deviation.to_string() << ',' << buf << ',';
            if (spec.factors.size() == 1) {
                const FactorGenerator& f = spec.factors[0];
                std::uint64_t r = shift.r();
                if (N > r * static_cast<std::uint64_t>(f.q())) {
                    std::snprintf(buf, sizeof buf, "%.6f", theorem_bound(f.p(), f.k(), r, N));
                    out << buf;
                }
            }
            out << '\n';
        }
    }
}

}  // namespace rsgen
