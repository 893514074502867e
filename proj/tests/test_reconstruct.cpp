#include "doctest.h"
#include "exotic/reconstruct.hpp"
#include "helpers.hpp"

using namespace exotic;

namespace {

UnipotentOracle g2_oracle() {
    FunctionField K(3, {"s", "v"});
    return UnipotentOracle(RootDatum2::g2(K, {K.var(0)}), {0, 5});
}

UnipotentOracle c2_oracle() {
    FunctionField K(2, {"t", "u"});
    IndifferentSpec spec{{K.one(), K.var(0)}, {K.var(0)}, {K.one(), K.var(1)}, false};
    return UnipotentOracle(RootDatum2::c2(K, spec), {0, 1, 2, 3});
}

} // namespace

TEST_CASE("oracle basics") {
    auto o = g2_oracle();
    const auto &d = o.datum();
    auto x = o.make(u_gen(d, 0, d.field().var(1)));
    CHECK(o.equal(o.mul(x, o.inv(x)), o.identity()));
    CHECK(o.in_root_subgroup(0, x));
    CHECK(!o.in_root_subgroup(5, x));
    CHECK_THROWS_AS(o.param(2), ReconstructionError);
    CHECK(o.equal(o.sample_root(5, 4), o.sample_root(5, 4)));
    CHECK(o.in_root_subgroup(5, o.sample_root(5, 4)));
    CHECK(in_center(o, o.make(u_gen(d, 3, d.field().one()))));
    CHECK(!in_center(o, o.make(u_gen(d, 1, d.field().one()))));
    CHECK_THROWS_AS(o.make(u_gen(d, 1, d.field().var(1))), InvariantError);
}

TEST_CASE("cosets of Z and Z2") {
    auto o = g2_oracle();
    const auto &d = o.datum();
    const auto &K = d.field();
    auto x2 = o.make(u_gen(d, 1, K.var(0)));
    auto x2z = o.mul(x2, o.make(u_from_word(d, {{2, K.var(1)}, {3, K.one()}})));
    CHECK(coset_equal(o, {x2, Modulus::Z}, {x2z, Modulus::Z}));
    CHECK(!coset_equal(o, {x2, Modulus::Z}, {o.identity(), Modulus::Z}));
    CHECK(coset_equal(o, {x2, Modulus::Z2}, {o.identity(), Modulus::Z2}));
    CHECK(!coset_equal(o, {o.param(0), Modulus::Z2}, {o.identity(), Modulus::Z2}));
    CHECK_THROWS_AS(coset_equal(o, {x2, Modulus::Z}, {x2, Modulus::Z2}), ReconstructionError);
}

TEST_CASE("G2 recovery") {
    auto o = g2_oracle();
    const auto &d = o.datum();
    const auto &K = d.field();
    auto r = g2_recover(o);
    auto one = o.param(0);
    CHECK(o.coords(r.mul(one, one)) == u_gen(d, 2, K.one()));
    auto s = o.make(u_gen(d, 0, K.var(0)));
    auto v3 = o.make(u_gen(d, 0, K.parse("v^3")));
    CHECK(o.coords(r.mul(s, v3)) == u_gen(d, 2, K.parse("s*v^3")));
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        auto a = test::random_nonzero(K, rng, 1, 2);
        CHECK(o.coords(r.xi(o.make(u_gen(d, 0, a)))) == u_gen(d, 3, a * a * a));
    }
    auto rep = verify_g2(o, o, 20, 5);
    CHECK(rep.ok());
    CHECK(rep.instances == 20);
    CHECK(rep.checks == 180);
    CHECK(rep.to_json().find("\"pass\"") != std::string::npos);
}

TEST_CASE("G2 recovery detects a corrupted oracle") {
    auto o = g2_oracle();
    CorruptedOracle bad(o, 2);
    auto rep = verify_g2(o, bad, 5, 5);
    CHECK(!rep.ok());
    CHECK(rep.mismatches.size() >= 1);
}

TEST_CASE("C2 recovery") {
    auto o = c2_oracle();
    const auto &d = o.datum();
    const auto &K = d.field();
    auto r = c2_recover(o);
    // *(u, t) = u^2 t
    auto u = o.make(u_gen(d, 0, K.var(1)));
    auto tt = o.make(u_gen(d, 0, K.var(0)));
    auto w = o.make(u_gen(d, 3, K.parse("u^2")));
    auto st = r.star(u, tt, w);
    REQUIRE(st);
    CHECK(o.coords(st->rep).coords[2] == K.parse("u^2*t"));
    CHECK(!r.star(u, tt, o.param(3)));
    auto st1 = r.star(o.param(0), tt, o.param(3));
    REQUIRE(st1);
    CHECK(o.coords(st1->rep).coords[2] == K.var(0));
    auto rep = verify_c2(o, o, 20, 9);
    CHECK(rep.ok());
    CHECK(rep.checks == 20 * 13);
    CorruptedOracle bad(o, 1);
    CHECK(!verify_c2(o, bad, 5, 9).ok());
}

TEST_CASE("double centralizers of root groups in Sp4") {
    FunctionField K(2, {"t", "u"});
    const auto t = K.var(0), u = K.var(1);
    const M4Structure M{K, IndifferentSpec{{K.one(), t}, {t}, {K.one(), u}, false}, std::nullopt, std::nullopt, {}};
    const auto G = build_group_from_M(M);
    for (int r = 0; r < 8; ++r) {
        const auto rep = cc_experiment(static_cast<Sp4Root>(r), G, 36, 7 + r);
        CHECK_MESSAGE(rep.confirms(), rep.to_json());
        CHECK(rep.by_kind.at("identity")[1] == rep.by_kind.at("identity")[0]);
        CHECK(rep.by_kind.at("root_group")[1] == rep.by_kind.at("root_group")[0]);
        CHECK(rep.by_kind.at("torus")[1] == 0);
        CHECK(rep.in_root_group >= rep.by_kind.at("root_group")[0]);
    }
}
