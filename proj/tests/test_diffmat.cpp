#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>
#include <random>

#include "rsgen/diffmat.hpp"

using namespace rsgen;

namespace {

std::string data_path(const std::string& name) {
    return std::string(RSGEN_DATA_DIR) + "/" + name;
}

DifferenceMatrix example_3x3_z3() {
    DifferenceMatrix m;
    m.mod = 3;
    m.k = 1;
    m.rows = m.cols = 3;
    m.entries = {
        {{{0}}, {{0}}, {{0}}},
        {{{0}}, {{1}}, {{2}}},
        {{{0}}, {{2}}, {{1}}},
    };
    return m;
}

EquivalenceOp random_op(const DifferenceMatrix& m, std::mt19937& rng, bool allow_automorphism) {
    std::uniform_int_distribution<int> kind(0, allow_automorphism ? 4 : 3);
    std::uniform_int_distribution<int> coord(0, m.mod - 1);
    switch (kind(rng)) {
        case 0: {
            std::vector<int> perm(m.rows);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            return PermuteRows{perm};
        }
        case 1: {
            std::vector<int> perm(m.cols);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            return PermuteCols{perm};
        }
        case 2: {
            GroupElement g;
            for (int i = 0; i < m.k; ++i) g.coords.push_back(coord(rng));
            return AddToRow{std::uniform_int_distribution<int>(0, m.rows - 1)(rng), g};
        }
        case 3: {
            GroupElement g;
            for (int i = 0; i < m.k; ++i) g.coords.push_back(coord(rng));
            return AddToCol{std::uniform_int_distribution<int>(0, m.cols - 1)(rng), g};
        }
        default: {
            // rejection-sample an invertible matrix mod m
            while (true) {
                Automorphism a;
                a.mat.assign(m.k, std::vector<int>(m.k));
                for (auto& row : a.mat)
                    for (auto& v : row) v = coord(rng);
                try {
                    apply_op(m, a);
                    return a;
                } catch (const std::invalid_argument&) {
                }
            }
        }
    }
}

}  // namespace

TEST_CASE("bundled fixtures satisfy the difference property") {
    for (const char* name :
         {"matrix_4x4_z2x2.json", "matrix_8x8_z2cubed.json", "matrix_9x9_z3.json",
          "matrix_9x9_z3_norm_a.json", "matrix_9x9_z3_norm_b.json"}) {
        DifferenceMatrix m = load_matrix(data_path(name));
        DiffCheckReport rep = verify(m);
        INFO(name, ": ", rep.message);
        CHECK(rep.ok);
    }
    CHECK(verify(example_3x3_z3()).ok);
}

TEST_CASE("the 4x4 ij-mod-4 grid over Z_4 fails verification") {
    DifferenceMatrix m = load_matrix(data_path("matrix_4x4_z4_ij.json"));
    DiffCheckReport rep = verify(m);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.failure.has_value());
    // brute-force recount of the reported pair
    auto& f = *rep.failure;
    long long observed = 0;
    for (int l = 0; l < m.rows; ++l)
        if (group_sub(m.at(l, f.col_i), m.at(l, f.col_j), m.mod) == f.element) ++observed;
    CHECK(observed == f.observed);
    CHECK(f.observed != f.expected);
}

TEST_CASE("verify rejects rows not divisible by the group order") {
    DifferenceMatrix m = example_3x3_z3();
    m.entries.pop_back();
    m.rows = 2;
    CHECK_FALSE(verify(m).ok);
}

TEST_CASE("construct yields difference matrices with exact per-pair counts") {
    for (auto [p, k] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                        {2, 7}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1},
                        {7, 2}, {11, 1}}) {
        for (int n = 1; n <= k; ++n) {
            DifferenceMatrix m = construct(p, k, n);
            CHECK(m.rows == m.cols);
            DiffCheckReport rep = verify(m);
            INFO("p=", p, " k=", k, " n=", n, ": ", rep.message);
            CHECK(rep.ok);
            // first row and column all zero since element 0 is the zero of the field
            GroupElement zero{std::vector<int>(n, 0)};
            for (int j = 0; j < m.cols; ++j) {
                CHECK(m.at(0, j) == zero);
                CHECK(m.at(j, 0) == zero);
            }
        }
    }
    CHECK(construct(2, 1, 1).entries[1][1] == GroupElement{{1}});
    CHECK_THROWS_AS(construct(2, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(construct(2, 2, 2, PolyZp{2, {0, 0, 1}}), std::invalid_argument);
}

TEST_CASE("collapse takes coordinate combinations and keeps the property") {
    DifferenceMatrix m1 = load_matrix(data_path("matrix_4x4_z2x2.json"));

    SUBCASE("k=1 identity collapse") {
        DifferenceMatrix m = construct(3, 1, 1);
        DifferenceMatrix c = collapse(m, {1});
        CHECK(c.entries == m.entries);
    }
    SUBCASE("first coordinate of the 4x4 reference matrix") {
        DifferenceMatrix c = collapse(m1, {1, 0});
        for (int l = 0; l < 4; ++l)
            for (int j = 0; j < 4; ++j)
                CHECK(c.at(l, j).coords[0] == m1.at(l, j).coords[0]);
        DiffCheckReport rep = verify(c);
        CHECK(rep.ok);
        CHECK(c.rows / c.group_order() == 2);  // each bit twice per pair
    }
    SUBCASE("h=(1,1) on the 4x4 reference matrix") {
        DifferenceMatrix c = collapse(m1, {1, 1});
        std::vector<std::vector<int>> expect = {
            {0, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}};
        for (int l = 0; l < 4; ++l)
            for (int j = 0; j < 4; ++j) CHECK(c.at(l, j).coords[0] == expect[l][j]);
        CHECK(verify(c).ok);
    }
    SUBCASE("every nonzero h for q in {4, 8, 9}") {
        for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
            DifferenceMatrix m = construct(p, k, k);
            int q = m.rows;
            for (int code = 1; code < q; ++code) {
                std::vector<int> h(k);
                int c = code;
                for (int i = 0; i < k; ++i) {
                    h[i] = c % p;
                    c /= p;
                }
                DifferenceMatrix col = collapse(m, h);
                DiffCheckReport rep = verify(col);
                INFO("p=", p, " k=", k, " code=", code);
                CHECK(rep.ok);
            }
        }
    }
    SUBCASE("zero h rejected") {
        CHECK_THROWS_AS(collapse(m1, {0, 0}), std::invalid_argument);
        CHECK_THROWS_AS(collapse(m1, {1}), std::invalid_argument);
    }
}

TEST_CASE("equivalence operations") {
    DifferenceMatrix m = load_matrix(data_path("matrix_4x4_z2x2.json"));

    SUBCASE("identity permutation leaves the matrix unchanged") {
        CHECK(apply_op(m, PermuteRows{{0, 1, 2, 3}}).entries == m.entries);
    }
    SUBCASE("inverse column additions cancel") {
        GroupElement g{{1, 1}};
        DifferenceMatrix t = apply_op(apply_op(m, AddToCol{0, g}), AddToCol{0, group_neg(g, 2)});
        CHECK(t.entries == m.entries);
    }
    SUBCASE("coordinate swap automorphism") {
        Automorphism swap{{{0, 1}, {1, 0}}};
        DifferenceMatrix t = apply_op(m, swap);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                CHECK(t.at(i, j).coords[0] == m.at(i, j).coords[1]);
                CHECK(t.at(i, j).coords[1] == m.at(i, j).coords[0]);
            }
        CHECK(verify(t).ok);
    }
    SUBCASE("malformed ops are rejected") {
        CHECK_THROWS_AS(apply_op(m, PermuteRows{{0, 0, 1, 2}}), std::invalid_argument);
        CHECK_THROWS_AS(apply_op(m, AddToRow{7, GroupElement{{0, 0}}}), std::invalid_argument);
        CHECK_THROWS_AS(apply_op(m, Automorphism{{{1, 1}, {1, 1}}}), std::invalid_argument);
    }
    SUBCASE("random op sequences preserve the property") {
        std::mt19937 rng(20240817);
        for (const DifferenceMatrix& base :
             {load_matrix(data_path("matrix_4x4_z2x2.json")), construct(3, 2, 1)}) {
            for (int trial = 0; trial < 50; ++trial) {
                DifferenceMatrix t = base;
                for (int step = 0; step < 4; ++step) t = apply_op(t, random_op(t, rng, true));
                CHECK(verify(t).ok);
            }
        }
    }
}

TEST_CASE("order normalization") {
    DifferenceMatrix m1 = load_matrix(data_path("matrix_4x4_z2x2.json"));

    SUBCASE("the 4x4 reference matrix is already normalized") {
        CHECK(is_order_normalized(m1));
        NormalizeResult res = order_normalize(m1);
        CHECK(res.matrix.entries == m1.entries);
    }
    SUBCASE("violating the first row is detected") {
        DifferenceMatrix t = apply_op(m1, AddToCol{1, GroupElement{{1, 0}}});
        CHECK_FALSE(is_order_normalized(t));
    }
    SUBCASE("both 9x9 representatives are normalized") {
        CHECK(is_order_normalized(load_matrix(data_path("matrix_9x9_z3_norm_a.json"))));
        CHECK(is_order_normalized(load_matrix(data_path("matrix_9x9_z3_norm_b.json"))));
    }
    SUBCASE("the F_9 table matrix normalizes to the first representative") {
        DifferenceMatrix m9 = load_matrix(data_path("matrix_9x9_z3.json"));
        NormalizeResult res = order_normalize(m9);
        DifferenceMatrix expect = load_matrix(data_path("matrix_9x9_z3_norm_a.json"));
        CHECK(res.matrix.entries == expect.entries);
    }
    SUBCASE("idempotent, verified output, replayable ops") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            DifferenceMatrix t = m1;
            for (int step = 0; step < 5; ++step) t = apply_op(t, random_op(t, rng, true));
            NormalizeResult res = order_normalize(t);
            CHECK(is_order_normalized(res.matrix));
            CHECK(verify(res.matrix).ok);
            NormalizeResult again = order_normalize(res.matrix);
            CHECK(again.matrix.entries == res.matrix.entries);
            DifferenceMatrix replay = t;
            for (const auto& op : res.ops) replay = apply_op(replay, op);
            CHECK(replay.entries == res.matrix.entries);
        }
    }
}

TEST_CASE("json round trip") {
    DifferenceMatrix m = construct(2, 2, 2);
    DifferenceMatrix back = matrix_from_json(to_json(m), "loaded(mem)");
    CHECK(back.entries == m.entries);
    CHECK(back.mod == m.mod);
    CHECK(back.k == m.k);
    CHECK_THROWS(matrix_from_json("{\"p\": 2", "x"));
    CHECK_THROWS(matrix_from_json("{\"p\":2,\"k\":1,\"rows\":2,\"cols\":2,\"entries\":[[[0],[0]]]}", "x"));
}
