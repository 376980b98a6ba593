#include "rsgen/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsgen {

void PolyZp::normalize() {
    for (auto& c : coeffs) {
        c %= p;
        if (c < 0) c += p;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::string PolyZp::to_string() const {
    if (coeffs.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        int c = coeffs[i];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i >= 1) {
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

PolyZp poly_add(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.normalize();
    return r;
}

PolyZp poly_sub(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    r.normalize();
    return r;
}

PolyZp poly_mul(const PolyZp& a, const PolyZp& b) {
    PolyZp r{a.p, {}};
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = (r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j]) % a.p;
    r.normalize();
    return r;
}

PolyZp poly_mod(const PolyZp& a, const PolyZp& m) {
    if (!m.monic()) throw std::invalid_argument("poly_mod: divisor must be monic");
    PolyZp r = a;
    r.normalize();
    int p = a.p;
    int dm = m.degree();
    while (r.degree() >= dm) {
        int shift = r.degree() - dm;
        int lead = r.coeffs.back();
        for (int i = 0; i <= dm; ++i) {
            int idx = i + shift;
            r.coeffs[idx] = ((r.coeffs[idx] - lead * m.coeffs[i]) % p + p) % p;
        }
        r.normalize();
    }
    return r;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Monic polynomial of degree d over Z_p with lower coefficients given by
// the base-p digits of code.
PolyZp monic_from_code(int p, int d, long long code) {
    PolyZp f{p, std::vector<int>(d + 1, 0)};
    for (int i = 0; i < d; ++i) {
        f.coeffs[i] = static_cast<int>(code % p);
        code /= p;
    }
    f.coeffs[d] = 1;
    return f;
}

long long int_pow(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

bool is_irreducible(const PolyZp& f) {
    int d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    int p = f.p;
    for (int dd = 1; dd <= d / 2; ++dd) {
        long long count = int_pow(p, dd);
        for (long long code = 0; code < count; ++code) {
            PolyZp g = monic_from_code(p, dd, code);
            if (poly_mod(f, g).is_zero()) return false;
        }
    }
    return true;
}

PolyZp find_irreducible(int p, int k) {
    if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p must be prime");
    if (k < 1) throw std::invalid_argument("find_irreducible: k must be >= 1");
    long long count = int_pow(p, k);
    for (long long code = 0; code < count; ++code) {
        PolyZp f = monic_from_code(p, k, code);
        if (is_irreducible(f)) return f;
    }
    throw std::logic_error("find_irreducible: no irreducible polynomial found");
}

FieldContext::FieldContext(int p, int k, std::optional<PolyZp> modulus)
    : p_(p), k_(k) {
    if (!is_prime(p)) throw std::invalid_argument("FieldContext: p must be prime");
    if (k < 1) throw std::invalid_argument("FieldContext: k must be >= 1");
    long long q = int_pow(p, k);
    if (q > (1 << 20)) throw std::invalid_argument("FieldContext: field too large");
    q_ = static_cast<int>(q);
    if (modulus) {
        modulus_ = *modulus;
        modulus_.normalize();
        if (modulus_.p != p || modulus_.degree() != k || !modulus_.monic() ||
            !is_irreducible(modulus_)) {
            throw std::invalid_argument("FieldContext: modulus must be monic irreducible of degree k");
        }
    } else {
        modulus_ = find_irreducible(p, k);
    }
}

FieldElement FieldContext::element(int index) const {
    if (index < 0 || index >= q_) throw std::out_of_range("FieldContext::element");
    FieldElement e;
    e.coeffs.resize(k_);
    for (int i = 0; i < k_; ++i) {
        e.coeffs[i] = index % p_;
        index /= p_;
    }
    return e;
}

int FieldContext::index_of(const FieldElement& e) const {
    if (static_cast<int>(e.coeffs.size()) != k_)
        throw std::invalid_argument("FieldContext::index_of: wrong length");
    int idx = 0;
    for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + e.coeffs[i];
    return idx;
}

FieldElement FieldContext::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r;
    r.coeffs.resize(k_);
    for (int i = 0; i < k_; ++i) r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % p_;
    return r;
}

FieldElement FieldContext::mul(const FieldElement& a, const FieldElement& b) const {
    if (static_cast<int>(a.coeffs.size()) != k_ || static_cast<int>(b.coeffs.size()) != k_)
        throw std::invalid_argument("FieldContext::mul: mismatched element size");
    PolyZp pa{p_, a.coeffs};
    PolyZp pb{p_, b.coeffs};
    pa.normalize();
    pb.normalize();
    PolyZp prod = poly_mod(poly_mul(pa, pb), modulus_);
    FieldElement r;
    r.coeffs.assign(k_, 0);
    for (std::size_t i = 0; i < prod.coeffs.size(); ++i) r.coeffs[i] = prod.coeffs[i];
    return r;
}

std::vector<std::vector<FieldElement>> FieldContext::multiplication_table() const {
    std::vector<std::vector<FieldElement>> table(q_, std::vector<FieldElement>(q_));
    for (int i = 0; i < q_; ++i) {
        FieldElement a = element(i);
        for (int j = 0; j < q_; ++j) table[i][j] = mul(a, element(j));
    }
    return table;
}

std::vector<int> project_phi(const FieldElement& e, int n) {
    if (n < 1 || n > static_cast<int>(e.coeffs.size()))
        throw std::out_of_range("project_phi: n out of range");
    return std::vector<int>(e.coeffs.begin(), e.coeffs.begin() + n);
}

}  // namespace rsgen
