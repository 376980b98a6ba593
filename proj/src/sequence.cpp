#include "rsgen/sequence.hpp"

#include <limits>
#include <stdexcept>

namespace rsgen {

int classical_rs(std::uint64_t n) {
    int count = 0;
    while (n >= 3) {
        if ((n & 3) == 3) ++count;
        n >>= 1;
    }
    return count & 1;
}

int recode(const GroupElement& g, int p) {
    int v = 0;
    for (int c : g.coords) v = v * p + c;
    return v;
}

namespace {

long long int_pow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

FactorGenerator::FactorGenerator(DifferenceMatrix matrix, GroupElement a0)
    : matrix_(std::move(matrix)), a0_(std::move(a0)) {
    p_ = matrix_.mod;
    k_ = matrix_.k;
    if (!is_prime(p_)) throw std::invalid_argument("FactorGenerator: modulus must be prime");
    long long q = int_pow(p_, k_);
    if (q > 4096) throw std::invalid_argument("FactorGenerator: group too large");
    q_ = static_cast<int>(q);
    if (matrix_.rows != q_ || matrix_.cols != q_)
        throw std::invalid_argument("FactorGenerator: matrix must be p^k x p^k");
    if (a0_.coords.empty()) a0_.coords.assign(k_, 0);  // default: identity
    if (static_cast<int>(a0_.coords.size()) != k_)
        throw std::invalid_argument("FactorGenerator: a0 has wrong length");
    DiffCheckReport report = verify(matrix_);
    if (!report.ok)
        throw std::invalid_argument("FactorGenerator: matrix fails verification: " + report.message);

    a0_enc_ = encode(a0_);
    table_.resize(q_ * q_);
    for (int n = 0; n < q_; ++n)
        for (int j = 0; j < q_; ++j) table_[n * q_ + j] = encode(matrix_.entries[n][j]);
    add_.resize(q_ * q_);
    sub_.resize(q_ * q_);
    recode_.resize(q_);
    for (int a = 0; a < q_; ++a) {
        GroupElement ga = decode(a);
        recode_[a] = recode(ga, p_);
        for (int b = 0; b < q_; ++b) {
            GroupElement gb = decode(b);
            add_[a * q_ + b] = encode(group_add(ga, gb, p_));
            sub_[a * q_ + b] = encode(group_sub(ga, gb, p_));
        }
    }
}

FactorGenerator::FactorGenerator(DifferenceMatrix matrix)
    : FactorGenerator(std::move(matrix), GroupElement{}) {}

int FactorGenerator::encode(const GroupElement& g) const {
    int idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + g.coords[i];
    return idx;
}

GroupElement FactorGenerator::decode(int idx) const {
    GroupElement g;
    g.coords.resize(k_);
    for (int i = 0; i < k_; ++i) {
        g.coords[i] = idx % p_;
        idx /= p_;
    }
    return g;
}

GroupElement FactorGenerator::g_lookup(std::uint64_t j, std::uint64_t n) const {
    return matrix_.entries[n % q_][j % q_];
}

GroupElement FactorGenerator::value_recursive(std::uint64_t n) const {
    int acc = a0_enc_;
    // Unwind a(q*m + j) = a(m) + g(j, m) down to a(0).
    while (n > 0) {
        std::uint64_t j = n % q_;
        std::uint64_t m = n / q_;
        acc = add_enc(acc, g_enc(static_cast<int>(j), static_cast<int>(m % q_)));
        n = m;
    }
    return decode(acc);
}

int FactorGenerator::value_enc(std::uint64_t n) const {
    // Digit closed form: a(n) = a(0) + sum g(d_i, d_{i+1}), top digit paired
    // with 0.
    int acc = a0_enc_;
    while (n > 0) {
        int d = static_cast<int>(n % q_);
        n /= q_;
        acc = add_enc(acc, g_enc(d, static_cast<int>(n % q_)));
    }
    return acc;
}

GroupElement FactorGenerator::value_digits(std::uint64_t n) const {
    return decode(value_enc(n));
}

CompositeGenerator::CompositeGenerator(std::vector<FactorGenerator> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("CompositeGenerator: no factors");
    alphabet_ = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (std::size_t j = i + 1; j < factors_.size(); ++j)
            if (factors_[i].p() == factors_[j].p())
                throw std::invalid_argument("CompositeGenerator: primes must be pairwise distinct");
        alphabet_ *= factors_[i].q();
        if (alphabet_ > std::numeric_limits<int>::max())
            throw std::invalid_argument("CompositeGenerator: alphabet too large");
    }
}

int CompositeGenerator::value(std::uint64_t n) const {
    int v = 0;
    for (const auto& f : factors_) v = v * f.q() + f.recode_enc(f.value_enc(n));
    return v;
}

std::vector<int> CompositeGenerator::tuple(std::uint64_t n) const {
    std::vector<int> t;
    t.reserve(factors_.size());
    for (const auto& f : factors_) t.push_back(f.recode_enc(f.value_enc(n)));
    return t;
}

FactorCursor::FactorCursor(const FactorGenerator& f, std::uint64_t start)
    : gen_(&f), total_(0) {
    int q = f.q();
    std::uint64_t n = start;
    while (n > 0) {
        digits_.push_back(static_cast<int>(n % q));
        n /= q;
    }
    terms_.resize(digits_.size());
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        terms_[i] = term_at(i);
        total_ = gen_->add_enc(total_, terms_[i]);
    }
}

int FactorCursor::term_at(std::size_t i) const {
    int next = i + 1 < digits_.size() ? digits_[i + 1] : 0;
    return gen_->g_enc(digits_[i], next);
}

void FactorCursor::advance() {
    int q = gen_->q();
    std::size_t i = 0;
    while (i < digits_.size() && digits_[i] == q - 1) ++i;
    if (i == digits_.size()) {
        digits_.push_back(0);
        terms_.push_back(0);  // encoded identity, fixed up below
    }
    // Terms 0..i depend on the digits that change.
    for (std::size_t t = 0; t <= i; ++t) total_ = gen_->sub_enc(total_, terms_[t]);
    for (std::size_t t = 0; t < i; ++t) digits_[t] = 0;
    ++digits_[i];
    for (std::size_t t = 0; t <= i; ++t) {
        terms_[t] = term_at(t);
        total_ = gen_->add_enc(total_, terms_[t]);
    }
}

SymbolStream::SymbolStream(const CompositeGenerator& gen, std::uint64_t start)
    : gen_(&gen) {
    cursors_.reserve(gen.factors().size());
    for (const auto& f : gen.factors()) cursors_.emplace_back(f, start);
}

int SymbolStream::next() {
    int v = 0;
    for (std::size_t i = 0; i < cursors_.size(); ++i) {
        v = v * gen_->factors()[i].q() + cursors_[i].current_symbol();
        cursors_[i].advance();
    }
    return v;
}

std::vector<int> stream_symbols(const CompositeGenerator& gen, std::uint64_t start,
                                std::uint64_t count) {
    if (count > std::numeric_limits<std::uint64_t>::max() - start ||
        start + count >= (std::uint64_t{1} << 63))
        throw std::overflow_error("stream_symbols: index range exceeds 2^63");
    std::vector<int> out;
    out.reserve(count);
    SymbolStream s(gen, start);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(s.next());
    return out;
}

}  // namespace rsgen
