#include "doctest.h"
#include "exotic/pbasis.hpp"
#include "helpers.hpp"

using namespace exotic;

namespace {
RatFunc reassemble(const FunctionField &K, const std::vector<RatFunc> &a, const Vec &c) {
    RatFunc r = K.zero();
    for (std::size_t i = 0; i < c.size(); ++i) r += c[i].frobenius() * (a.empty() ? K.one() : p_monomial(i, a, K.p()));
    return r;
}
} // namespace

TEST_CASE("p_monomial enumeration") {
    FunctionField K2(2, {"t", "u"});
    auto tu = K2.vars();
    CHECK(p_monomial(0, 2, tu, 2) == K2.one());
    CHECK(p_monomial(3, 2, tu, 2) == K2.parse("t*u"));
    FunctionField K3(3, {"t", "u"});
    CHECK(p_monomial(5, 2, K3.vars(), 3) == K3.parse("t^2*u"));
    CHECK_THROWS_AS(p_monomial(0, 3, tu, 2), FieldError);
}

TEST_CASE("var_coords reassemble") {
    std::mt19937_64 rng(3);
    for (int p : {2, 3, 5}) {
        FunctionField K(p, {"t", "u"});
        for (int i = 0; i < 30; ++i) {
            auto b = test::random_ratfunc(K, rng, 3);
            CHECK(from_var_coords(K, var_coords(b)) == b);
        }
    }
}

TEST_CASE("lambda examples") {
    FunctionField F(2, {"t"});
    auto t = F.var(0);
    auto l = lambda(F, {t}, t);
    REQUIRE(l.defined);
    CHECK(l.coords == Vec{F.zero(), F.one()});
    l = lambda(F, {t}, F.parse("t^2"));
    CHECK(l.coords == Vec{t, F.zero()});

    FunctionField K(2, {"t", "u"});
    l = lambda(K, K.vars(), K.parse("u+t*u^2"));
    REQUIRE(l.defined);
    CHECK(l.coords == Vec{K.zero(), K.var(1), K.one(), K.zero()});

    // dependent tuple -> all zeros
    l = lambda(K, {K.var(0), K.parse("t^3")}, K.var(0));
    CHECK(!l.defined);
    for (const auto &c : l.coords) CHECK(c.is_zero());
}

TEST_CASE("lambda identity over non-standard p-bases") {
    std::mt19937_64 rng(11);
    FunctionField K(3, {"s", "v"});
    for (int i = 0; i < 20; ++i) {
        std::vector<RatFunc> a{K.parse("s+v^3"), K.var(1) + test::random_polynomial(K, rng, 2).frobenius()};
        auto b = test::random_ratfunc(K, rng, 2);
        auto l = lambda(K, a, b);
        REQUIRE(l.defined);
        CHECK(reassemble(K, a, l.coords) == b);
    }
}

TEST_CASE("p-independence") {
    FunctionField K(2, {"t", "u"});
    CHECK(is_p_independent(K, K.vars()));
    CHECK(!is_p_independent(K, {K.var(0), K.parse("t+u^2"), K.parse("u^2*t")}));
    FunctionField L(2, {"t", "u", "v"});
    CHECK(!is_p_independent(L, {L.var(0), L.var(1), L.parse("t*u")}));
    CHECK(is_p_independent(L, {L.var(2)}, {L.var(0), L.var(1)}));
    CHECK(!is_p_independent(L, {L.parse("t*u")}, {L.var(0), L.var(1)}));
}

TEST_CASE("kernel and echelon") {
    FunctionField K(2, {"t"});
    auto t = K.var(0);
    std::vector<Vec> cols{{K.one(), t}, {t, t * t}, {K.zero(), K.one()}};
    auto ker = kernel(cols, 2);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] * cols[0][0] + ker[0][1] * cols[1][0] + ker[0][2] * cols[2][0] == K.zero());
    CHECK(ker[0][0] * cols[0][1] + ker[0][1] * cols[1][1] + ker[0][2] * cols[2][1] == K.zero());
}
