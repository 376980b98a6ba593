#include "rsgen/diffmat.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsgen {

namespace {

long long int_pow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_entry(const DifferenceMatrix& m, const GroupElement& g) {
    if (static_cast<int>(g.coords.size()) != m.k)
        throw std::invalid_argument("group element has wrong length");
    for (int c : g.coords)
        if (c < 0 || c >= m.mod) throw std::invalid_argument("coordinate out of range");
}

// Little-endian dense index, used for counting only.
int enc_index(const GroupElement& g, int mod) {
    int idx = 0;
    for (int i = static_cast<int>(g.coords.size()) - 1; i >= 0; --i)
        idx = idx * mod + g.coords[i];
    return idx;
}

GroupElement dec_index(int idx, int mod, int k) {
    GroupElement g;
    g.coords.resize(k);
    for (int i = 0; i < k; ++i) {
        g.coords[i] = idx % mod;
        idx /= mod;
    }
    return g;
}

}  // namespace

long long DifferenceMatrix::group_order() const { return int_pow(mod, k); }

GroupElement group_add(const GroupElement& a, const GroupElement& b, int mod) {
    GroupElement r;
    r.coords.resize(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        r.coords[i] = (a.coords[i] + b.coords[i]) % mod;
    return r;
}

GroupElement group_sub(const GroupElement& a, const GroupElement& b, int mod) {
    GroupElement r;
    r.coords.resize(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        r.coords[i] = ((a.coords[i] - b.coords[i]) % mod + mod) % mod;
    return r;
}

GroupElement group_neg(const GroupElement& a, int mod) {
    GroupElement r;
    r.coords.resize(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        r.coords[i] = (mod - a.coords[i]) % mod;
    return r;
}

long long group_rank(const GroupElement& a, int mod) {
    long long r = 0;
    for (int c : a.coords) r = r * mod + c;
    return r;
}

DifferenceMatrix construct(int p, int k, int n, std::optional<PolyZp> modulus) {
    if (n < 1 || n > k) throw std::invalid_argument("construct: need 1 <= n <= k");
    FieldContext ctx(p, k, std::move(modulus));
    auto table = ctx.multiplication_table();
    DifferenceMatrix m;
    m.mod = p;
    m.k = n;
    m.rows = ctx.q();
    m.cols = ctx.q();
    m.provenance = "constructed(" + ctx.modulus().to_string() + ")";
    m.entries.resize(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        m.entries[i].resize(m.cols);
        for (int j = 0; j < m.cols; ++j)
            m.entries[i][j] = GroupElement{project_phi(table[i][j], n)};
    }
    return m;
}

DiffCheckReport verify(const DifferenceMatrix& m) {
    DiffCheckReport report;
    long long order = m.group_order();
    if (m.rows <= 0 || m.cols <= 1) {
        report.message = "error=shape rows=" + std::to_string(m.rows) +
                         " cols=" + std::to_string(m.cols);
        return report;
    }
    if (m.rows % order != 0) {
        report.message = "error=rows-not-divisible-by-group-order rows=" +
                         std::to_string(m.rows) + " order=" + std::to_string(order);
        return report;
    }
    for (const auto& row : m.entries)
        for (const auto& g : row) check_entry(m, g);

    long long expected = m.rows / order;
    std::vector<long long> counts(order);
    // Both orientations (i,j) and (j,i) are counted; they are negations of
    // each other, kept as a self-check at these sizes.
    for (int i = 0; i < m.cols; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            if (i == j) continue;
            std::fill(counts.begin(), counts.end(), 0);
            for (int l = 0; l < m.rows; ++l)
                ++counts[enc_index(group_sub(m.entries[l][i], m.entries[l][j], m.mod), m.mod)];
            for (long long e = 0; e < order; ++e) {
                if (counts[e] != expected) {
                    DiffFailure f;
                    f.col_i = i;
                    f.col_j = j;
                    f.element = dec_index(static_cast<int>(e), m.mod, m.k);
                    f.observed = counts[e];
                    f.expected = expected;
                    report.failure = f;
                    std::ostringstream os;
                    os << "error=difference-property cols=(" << i << "," << j
                       << ") element=[";
                    for (std::size_t t = 0; t < f.element.coords.size(); ++t)
                        os << (t ? "," : "") << f.element.coords[t];
                    os << "] observed=" << f.observed << " expected=" << f.expected;
                    report.message = os.str();
                    return report;
                }
            }
        }
    }
    report.ok = true;
    report.message = "ok";
    return report;
}

DifferenceMatrix collapse(const DifferenceMatrix& m, const std::vector<int>& h) {
    if (static_cast<int>(h.size()) != m.k)
        throw std::invalid_argument("collapse: h has wrong length");
    if (std::all_of(h.begin(), h.end(), [](int x) { return x == 0; }))
        throw std::invalid_argument("collapse: h must be nonzero");
    DifferenceMatrix r;
    r.mod = m.mod;
    r.k = 1;
    r.rows = m.rows;
    r.cols = m.cols;
    r.provenance = m.provenance + "|collapsed";
    r.entries.resize(r.rows);
    for (int l = 0; l < m.rows; ++l) {
        r.entries[l].resize(r.cols);
        for (int j = 0; j < m.cols; ++j) {
            int v = 0;
            for (int i = 0; i < m.k; ++i)
                v = (v + h[i] * m.entries[l][j].coords[i]) % m.mod;
            r.entries[l][j] = GroupElement{{v}};
        }
    }
    return r;
}

namespace {

void check_perm(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation has wrong size");
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = 1;
    }
}

// Invertibility over Z_m by Gaussian elimination; pivots must be units.
bool invertible_mod(std::vector<std::vector<int>> a, int mod) {
    int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (std::gcd(a[r][col] % mod, mod) == 1) { pivot = r; break; }
        if (pivot < 0) return false;
        std::swap(a[col], a[pivot]);
        // scale pivot row to 1
        int inv = 0;
        for (int x = 1; x < mod; ++x)
            if (a[col][col] * x % mod == 1) { inv = x; break; }
        for (int c = 0; c < n; ++c) a[col][c] = a[col][c] * inv % mod;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            int factor = a[r][col] % mod;
            for (int c = 0; c < n; ++c)
                a[r][c] = ((a[r][c] - factor * a[col][c]) % mod + mod) % mod;
        }
    }
    return true;
}

}  // namespace

DifferenceMatrix apply_op(const DifferenceMatrix& m, const EquivalenceOp& op) {
    DifferenceMatrix r = m;
    if (const auto* pr = std::get_if<PermuteRows>(&op)) {
        check_perm(pr->perm, m.rows);
        for (int i = 0; i < m.rows; ++i) r.entries[i] = m.entries[pr->perm[i]];
    } else if (const auto* pc = std::get_if<PermuteCols>(&op)) {
        check_perm(pc->perm, m.cols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) r.entries[i][j] = m.entries[i][pc->perm[j]];
    } else if (const auto* ar = std::get_if<AddToRow>(&op)) {
        if (ar->row < 0 || ar->row >= m.rows) throw std::invalid_argument("row out of range");
        check_entry(m, ar->g);
        for (int j = 0; j < m.cols; ++j)
            r.entries[ar->row][j] = group_add(m.entries[ar->row][j], ar->g, m.mod);
    } else if (const auto* ac = std::get_if<AddToCol>(&op)) {
        if (ac->col < 0 || ac->col >= m.cols) throw std::invalid_argument("col out of range");
        check_entry(m, ac->g);
        for (int i = 0; i < m.rows; ++i)
            r.entries[i][ac->col] = group_add(m.entries[i][ac->col], ac->g, m.mod);
    } else if (const auto* au = std::get_if<Automorphism>(&op)) {
        if (static_cast<int>(au->mat.size()) != m.k)
            throw std::invalid_argument("automorphism matrix has wrong size");
        for (const auto& row : au->mat)
            if (static_cast<int>(row.size()) != m.k)
                throw std::invalid_argument("automorphism matrix has wrong size");
        if (!invertible_mod(au->mat, m.mod))
            throw std::invalid_argument("automorphism matrix not invertible");
        for (int i = 0; i < m.rows; ++i) {
            for (int j = 0; j < m.cols; ++j) {
                GroupElement g;
                g.coords.assign(m.k, 0);
                for (int a = 0; a < m.k; ++a)
                    for (int b = 0; b < m.k; ++b)
                        g.coords[a] = (g.coords[a] + au->mat[a][b] * m.entries[i][j].coords[b]) % m.mod;
                r.entries[i][j] = g;
            }
        }
    }
    return r;
}

namespace {

bool row_less(const DifferenceMatrix& m, int a, int b) {
    for (int j = 0; j < m.cols; ++j) {
        long long ra = group_rank(m.entries[a][j], m.mod);
        long long rb = group_rank(m.entries[b][j], m.mod);
        if (ra != rb) return ra < rb;
    }
    return false;
}

bool col_less(const DifferenceMatrix& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) {
        long long ra = group_rank(m.entries[i][a], m.mod);
        long long rb = group_rank(m.entries[i][b], m.mod);
        if (ra != rb) return ra < rb;
    }
    return false;
}

bool is_identity_perm(const std::vector<int>& perm) {
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (perm[i] != i) return false;
    return true;
}

}  // namespace

bool is_order_normalized(const DifferenceMatrix& m) {
    GroupElement zero{std::vector<int>(m.k, 0)};
    for (int j = 0; j < m.cols; ++j)
        if (!(m.entries[0][j] == zero)) return false;
    for (int i = 0; i < m.rows; ++i)
        if (!(m.entries[i][0] == zero)) return false;
    for (int i = 0; i + 1 < m.rows; ++i)
        if (row_less(m, i + 1, i)) return false;
    for (int j = 0; j + 1 < m.cols; ++j)
        if (col_less(m, j + 1, j)) return false;
    return true;
}

NormalizeResult order_normalize(const DifferenceMatrix& m) {
    NormalizeResult res;
    res.matrix = m;
    auto apply = [&res](const EquivalenceOp& op) {
        res.matrix = apply_op(res.matrix, op);
        res.ops.push_back(op);
    };

    // Make the first row all identity, then the first column.
    for (int j = 0; j < m.cols; ++j) {
        GroupElement g = group_neg(res.matrix.entries[0][j], m.mod);
        if (group_rank(g, m.mod) != 0) apply(AddToCol{j, g});
    }
    for (int i = 0; i < m.rows; ++i) {
        GroupElement g = group_neg(res.matrix.entries[i][0], m.mod);
        if (group_rank(g, m.mod) != 0) apply(AddToRow{i, g});
    }

    // Alternate stable row/column sorts until a full pass changes nothing.
    for (int pass = 0; pass < 10000; ++pass) {
        std::vector<int> rperm(m.rows);
        std::iota(rperm.begin(), rperm.end(), 0);
        std::stable_sort(rperm.begin(), rperm.end(),
                         [&](int a, int b) { return row_less(res.matrix, a, b); });
        bool changed = false;
        if (!is_identity_perm(rperm)) {
            apply(PermuteRows{rperm});
            changed = true;
        }
        std::vector<int> cperm(m.cols);
        std::iota(cperm.begin(), cperm.end(), 0);
        std::stable_sort(cperm.begin(), cperm.end(),
                         [&](int a, int b) { return col_less(res.matrix, a, b); });
        if (!is_identity_perm(cperm)) {
            apply(PermuteCols{cperm});
            changed = true;
        }
        if (!changed) return res;
    }
    throw std::logic_error("order_normalize: sorting did not converge");
}

std::string to_json(const DifferenceMatrix& m) {
    nlohmann::json doc;
    doc["p"] = m.mod;
    doc["k"] = m.k;
    doc["rows"] = m.rows;
    doc["cols"] = m.cols;
    auto entries = nlohmann::json::array();
    for (const auto& row : m.entries) {
        auto jrow = nlohmann::json::array();
        for (const auto& g : row) jrow.push_back(g.coords);
        entries.push_back(std::move(jrow));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(1);
}

DifferenceMatrix matrix_from_json(const std::string& text, const std::string& provenance) {
    nlohmann::json doc = nlohmann::json::parse(text);
    DifferenceMatrix m;
    m.mod = doc.at("p").get<int>();
    m.k = doc.at("k").get<int>();
    m.rows = doc.at("rows").get<int>();
    m.cols = doc.at("cols").get<int>();
    m.provenance = provenance;
    if (m.mod < 2 || m.k < 1 || m.rows < 1 || m.cols < 1)
        throw std::invalid_argument("matrix document: bad parameters");
    const auto& entries = doc.at("entries");
    if (static_cast<int>(entries.size()) != m.rows)
        throw std::invalid_argument("matrix document: row count mismatch");
    m.entries.resize(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        const auto& jrow = entries[i];
        if (static_cast<int>(jrow.size()) != m.cols)
            throw std::invalid_argument("matrix document: column count mismatch");
        m.entries[i].resize(m.cols);
        for (int j = 0; j < m.cols; ++j) {
            m.entries[i][j].coords = jrow[j].get<std::vector<int>>();
            check_entry(m, m.entries[i][j]);
        }
    }
    return m;
}

DifferenceMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return matrix_from_json(buf.str(), "loaded(" + path + ")");
}

void save_matrix(const DifferenceMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(m) << "\n";
}

}  // namespace rsgen
