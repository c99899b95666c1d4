#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "metriq/abelian.hpp"
#include "metriq/errors.hpp"
#include "metriq/snf.hpp"

using metriq::FinAbGroup;
using metriq::GroupElem;
using metriq::IMat;
using metriq::IVec;
using metriq::Subgroup;

TEST_CASE("mixed-radix indexing round trips", "[abelian]") {
    FinAbGroup g{{2, 3, 4}};
    REQUIRE(g.size() == 24);
    for (std::int64_t i = 0; i < g.size(); ++i)
        CHECK(g.index_of(g.element_at(i)) == i);
    // Last coordinate fastest.
    CHECK(g.element_at(0) == GroupElem{0, 0, 0});
    CHECK(g.element_at(1) == GroupElem{0, 0, 1});
    CHECK(g.element_at(4) == GroupElem{0, 1, 0});
    CHECK(g.element_at(12) == GroupElem{1, 0, 0});
}

TEST_CASE("group arithmetic", "[abelian]") {
    FinAbGroup g{{4, 6}};
    CHECK(g.add({3, 5}, {2, 2}) == GroupElem{1, 1});
    CHECK(g.neg({1, 0}) == GroupElem{3, 0});
    CHECK(g.mul({1, 1}, 7) == GroupElem{3, 1});
    CHECK(g.order_of({2, 0}) == 2);
    CHECK(g.order_of({1, 1}) == 12);
    CHECK(g.order_of(g.zero()) == 1);
    CHECK(g.reduce({-1, 7}) == GroupElem{3, 1});
}

TEST_CASE("subgroup generation matches closure oracle", "[abelian]") {
    FinAbGroup z4{{4}};
    Subgroup h = metriq::subgroup_generated(z4, {{2}});
    CHECK(h.element_indices == std::vector<std::int64_t>{0, 2});

    FinAbGroup klein{{2, 2}};
    Subgroup whole = metriq::subgroup_generated(klein, {{1, 0}, {0, 1}});
    CHECK(whole.order() == 4);

    FinAbGroup z6{{6}};
    Subgroup h6 = metriq::subgroup_generated(z6, {{4}});
    CHECK(h6.element_indices == std::vector<std::int64_t>{0, 2, 4});

    // Oracle: closure by repeated addition over every singleton generator.
    FinAbGroup g{{4, 6}};
    for (std::int64_t i = 0; i < g.size(); ++i) {
        GroupElem e = g.element_at(i);
        std::set<std::int64_t> orbit;
        GroupElem acc = g.zero();
        do {
            orbit.insert(g.index_of(acc));
            acc = g.add(acc, e);
        } while (acc != g.zero());
        Subgroup s = metriq::subgroup_generated(g, {e});
        CHECK(std::vector<std::int64_t>(orbit.begin(), orbit.end()) == s.element_indices);
    }
}

TEST_CASE("subgroup enumeration counts", "[abelian]") {
    auto count = [](const std::vector<std::int64_t>& orders) {
        return metriq::all_subgroups(FinAbGroup{orders}).size();
    };
    CHECK(count({}) == 1);
    CHECK(count({1}) == 1);
    CHECK(count({4}) == 3);
    CHECK(count({2, 2}) == 5);
    CHECK(count({2, 2, 2}) == 16);
    CHECK(count({6}) == 4);
    CHECK(count({8}) == 4);
    CHECK(count({12}) == 6);
    CHECK(count({16}) == 5);
    CHECK(count({2, 4}) == 8);
    CHECK(count({4, 4}) == 15);
    CHECK(count({3, 3}) == 6);
    CHECK(count({9}) == 3);
}

TEST_CASE("subgroup enumeration is well formed", "[abelian]") {
    FinAbGroup g{{2, 4}};
    auto subs = metriq::all_subgroups(g);
    // Sorted by order, deterministic, closed, no duplicates.
    std::set<std::vector<std::int64_t>> seen;
    std::int64_t last_order = 0;
    for (const Subgroup& s : subs) {
        CHECK(s.order() >= last_order);
        last_order = s.order();
        CHECK(seen.insert(s.element_indices).second);
        for (std::int64_t a : s.element_indices)
            for (std::int64_t b : s.element_indices)
                CHECK(s.contains(g.add(g.element_at(a), g.element_at(b))));
        // Generators regenerate the subgroup.
        CHECK(metriq::subgroup_generated(g, s.generators).element_indices == s.element_indices);
    }
    CHECK_THROWS_AS(metriq::all_subgroups(FinAbGroup{{4, 4}}, 15), metriq::TooLargeError);
}

TEST_CASE("quotients land in invariant factor form", "[abelian]") {
    FinAbGroup z4{{4}};
    Subgroup h = metriq::subgroup_generated(z4, {{2}});
    auto q = metriq::quotient(z4, h);
    CHECK(q.quotient.orders == std::vector<std::int64_t>{2});
    CHECK(q.image_of[0] == q.image_of[2]);
    CHECK(q.image_of[1] == q.image_of[3]);
    CHECK(q.image_of[0] == q.quotient.zero());
    CHECK(q.image_of[1] != q.quotient.zero());

    FinAbGroup g{{2, 4}};
    auto id = metriq::quotient(g, metriq::subgroup_generated(g, {}));
    CHECK(id.quotient.size() == g.size());
    auto triv = metriq::quotient(g, metriq::subgroup_generated(g, {{1, 0}, {0, 1}}));
    CHECK(triv.quotient.size() == 1);

    // Coset map is a homomorphism onto the quotient.
    FinAbGroup big{{4, 6}};
    Subgroup k = metriq::subgroup_generated(big, {{2, 3}});
    auto qr = metriq::quotient(big, k);
    CHECK(qr.quotient.size() * k.order() == big.size());
    for (std::int64_t a = 0; a < big.size(); ++a)
        for (std::int64_t b = 0; b < big.size(); ++b) {
            GroupElem sum = big.add(big.element_at(a), big.element_at(b));
            CHECK(qr.image_of[static_cast<std::size_t>(big.index_of(sum))] ==
                  qr.quotient.add(qr.image_of[static_cast<std::size_t>(a)],
                                  qr.image_of[static_cast<std::size_t>(b)]));
        }
    // Invariant factors form a divisibility chain.
    for (std::size_t i = 0; i + 1 < qr.quotient.orders.size(); ++i)
        CHECK(qr.quotient.orders[i + 1] % qr.quotient.orders[i] == 0);
}

TEST_CASE("normalized group is the quotient by the trivial subgroup", "[abelian]") {
    FinAbGroup g{{2, 6, 3}};
    FinAbGroup n = metriq::normalized(g);
    CHECK(n.size() == g.size());
    for (std::size_t i = 0; i + 1 < n.orders.size(); ++i)
        CHECK(n.orders[i + 1] % n.orders[i] == 0);
    for (std::int64_t o : n.orders)
        CHECK(o > 1);
}

TEST_CASE("smith normal form properties", "[abelian]") {
    auto as_mat = [](std::vector<std::vector<long>> rows) {
        IMat m;
        for (auto& r : rows) {
            m.emplace_back();
            for (long v : r)
                m.back().emplace_back(v);
        }
        return m;
    };
    auto mat_mul = [](const IMat& a, const IMat& b) {
        IMat c(a.size(), IVec(b[0].size(), 0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t k = 0; k < b.size(); ++k)
                for (std::size_t j = 0; j < b[0].size(); ++j)
                    c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    std::vector<IMat> cases = {
        as_mat({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}),
        as_mat({{1, 0}, {0, 1}}),
        as_mat({{0, 0}, {0, 0}}),
        as_mat({{6, 4}, {2, 8}, {4, 2}}),
        as_mat({{12}}),
    };
    for (const IMat& a : cases) {
        auto r = metriq::smith_normal_form(a);
        IMat lhs = mat_mul(mat_mul(r.U, a), r.V);
        CHECK(lhs == r.D);
        mpz_class prev = 0;
        for (std::size_t i = 0; i < r.D.size() && i < r.D[0].size(); ++i) {
            for (std::size_t j = 0; j < r.D[0].size(); ++j)
                if (i != j)
                    CHECK(r.D[i][j] == 0);
            CHECK(r.D[i][i] >= 0);
            if (prev != 0)
                CHECK(r.D[i][i] % prev == 0);
            prev = r.D[i][i];
            if (prev == 0)
                break;
        }
    }
    // The classic example pins the diagonal.
    auto r = metriq::smith_normal_form(cases[0]);
    CHECK(r.D[0][0] == 2);
    CHECK(r.D[1][1] == 2);
    CHECK(r.D[2][2] == 156);
}

TEST_CASE("modular linear solver", "[abelian]") {
    IMat a = {{mpz_class(2), mpz_class(3)}, {mpz_class(1), mpz_class(1)}};
    IVec b = {mpz_class(1), mpz_class(3)};
    auto x = metriq::solve_linear_mod(a, b, mpz_class(5));
    REQUIRE(x.has_value());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            acc += a[i][j] * (*x)[j];
        CHECK((acc - b[i]) % 5 == 0);
    }
    // 2x == 1 (mod 4) has no solution.
    CHECK_FALSE(metriq::solve_linear_mod({{mpz_class(2)}}, {mpz_class(1)}, mpz_class(4))
                    .has_value());
}
