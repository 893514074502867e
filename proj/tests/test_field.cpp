#include "doctest.h"
#include "exotic/field.hpp"
#include "helpers.hpp"

#include <random>

using namespace exotic;

TEST_CASE("parse and render round trip") {
    FunctionField K(2, {"t", "u"});
    CHECK(K.render(K.parse("t^2+u")) == "t^2+u");
    CHECK(K.render(K.parse("t/(t)")) == "1");
    CHECK(K.render(K.parse("t + t")) == "0");
    CHECK(K.render(K.parse("(t+u)*(t+u)")) == "u^2+t^2");
    CHECK(K.parse("1/(1+t) + t/(1+t)") == K.one());
    FunctionField F3(3, {"s", "v"});
    CHECK(F3.render(F3.parse("-s")) == "2*s");
    CHECK(F3.render(F3.parse("(1+s)/(2*v)")) == "(2*s+2)/v");
    auto x = F3.parse("(s^2*v+1)/(s*v+v^2)");
    CHECK(F3.parse(F3.render(x)) == x);
}

TEST_CASE("parse errors carry positions") {
    FunctionField K(2, {"t", "u"});
    try {
        K.parse("t+*u");
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(K.parse("w"), ParseError);
    CHECK_THROWS_AS(K.parse("(t"), ParseError);
    CHECK_THROWS_AS(K.parse("t/(t+t)"), ParseError);
}

TEST_CASE("field_arith examples") {
    FunctionField F2t(2, {"t"});
    auto t = F2t.var(0);
    CHECK(field_arith(t, t, ArithOp::add).is_zero());
    FunctionField K(2, {"t", "u"});
    auto s = K.parse("t+u");
    CHECK(field_arith(s, s, ArithOp::mul) == K.parse("t^2+u^2"));
    CHECK(field_arith(F2t.parse("1/(1+t)"), F2t.parse("t/(1+t)"), ArithOp::add) == F2t.one());
    CHECK_THROWS_AS(field_arith(t, F2t.zero(), ArithOp::div), FieldError);
}

TEST_CASE("frobenius and pth_root") {
    FunctionField K(2, {"t", "u"});
    CHECK(K.zero().frobenius().is_zero());
    CHECK(K.parse("t+u").frobenius() == K.parse("t^2+u^2"));
    CHECK(K.parse("(1+t)/u").frobenius() == K.parse("(1+t^2)/u^2"));
    CHECK(*K.parse("t^2").pth_root() == K.var(0));
    CHECK(!K.var(0).pth_root());
    CHECK(*K.parse("(t^2+u^2)/(1+t^2)").pth_root() == K.parse("(t+u)/(1+t)"));
}

TEST_CASE("gcd normalizes fractions") {
    FunctionField K(3, {"s", "v", "w"});
    auto a = K.parse("(s+v)*(s*w+1)*(v^2+2)");
    auto b = K.parse("(s+v)*(v^2+2)*(w+s^3)");
    auto q = a / b;
    CHECK(q == K.parse("(s*w+1)/(w+s^3)"));
    CHECK(q.den().leading_coeff() == 1);
}

TEST_CASE("arithmetic is a congruence on random fractions") {
    std::mt19937_64 rng(7);
    for (int p : {2, 3, 5}) {
        FunctionField K(p, {"t", "u", "v"});
        for (int it = 0; it < 60; ++it) {
            auto a = test::random_ratfunc(K, rng, 2);
            auto b = test::random_ratfunc(K, rng, 2);
            auto c = test::random_ratfunc(K, rng, 2);
            // Cross-multiplication oracle: x = n/d reduced means n*d' == n'*d.
            auto sum = a + b;
            CHECK(sum.num() * (a.den() * b.den()) == (a.num() * b.den() + b.num() * a.den()) * sum.den());
            auto prod = a * b;
            CHECK(prod.num() * (a.den() * b.den()) == (a.num() * b.num()) * prod.den());
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == K.one());
                // a^{-1} = a^{-p} a^{p-1}
                CHECK(a.inverse() == a.pow(-p) * a.pow(p - 1));
                CHECK(*a.frobenius().pth_root() == a);
            }
            CHECK(gcd(sum.num(), sum.den()).is_one());
        }
    }
}

TEST_CASE("gcd recovers planted common factors") {
    std::mt19937_64 rng(11);
    for (int p : {2, 3, 5}) {
        FunctionField K(p, {"t", "u", "v"});
        for (int i = 0; i < 30; ++i) {
            const Poly G = test::random_nonzero(K, rng, 3, 4).num();
            const Poly A = test::random_nonzero(K, rng, 4, 5).num() * G;
            const Poly B = test::random_nonzero(K, rng, 4, 5).num() * G;
            const Poly g = gcd(A, B);
            CHECK(try_divide(g, G).has_value());
            auto qa = try_divide(A, g), qb = try_divide(B, g);
            REQUIRE(qa);
            REQUIRE(qb);
            CHECK(gcd(*qa, *qb).is_one());
        }
    }
}
