#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "torsionx/covers.hpp"
#include "torsionx/factor.hpp"
#include "torsionx/genus2.hpp"
#include "torsionx/crosscheck.hpp"

using namespace torsionx;
using namespace torsionx_test;
using Fp = PrimeField;

namespace {

// E1/E2 of the record pair reduced mod p: y^2 = (x^2-s^2)(x^2-1/s^2) and
// y^2 = (x^2-(s/3)^2)(x^2-(3/s)^2), origins (s,0) and (s/3,0).
std::optional<CoverPair<Fp>> record_pair_modp(const Fp& K, u64 seed) {
    auto f = poly::from_ints(K, {81, 0, 0, 0, 174, 0, 0, 0, 1});
    auto rs = fpoly::roots(K, f, seed);
    if (rs.empty()) return std::nullopt;
    auto s = K.from_int(rs[0]);
    auto mk = [&](Fp::Elem a, Fp::Elem b) -> DoubleCover<Fp> {
        CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(a, a), K.mul(b, b)}};
        std::array<P1<Fp>, 4> br = {p1_affine(K, a), p1_affine(K, K.neg(a)), p1_affine(K, b),
                                    p1_affine(K, K.neg(b))};
        return make_cover(K, m, br, 0);
    };
    auto three = K.from_int((i64)3);
    return CoverPair<Fp>{mk(s, K.inv(s)), mk(K.div(s, three), K.div(three, s))};
}

}  // namespace

TEST_CASE("klein group of the symmetric quadruple") {
    Fp K(1000003);
    auto s = K.from_int((i64)37);
    CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(s, s), K.inv(K.mul(s, s))}};
    auto cov = make_cover(K, m,
                          {p1_affine(K, s), p1_affine(K, K.neg(s)), p1_affine(K, K.inv(s)),
                           p1_affine(K, K.neg(K.inv(s)))},
                          0);
    auto g = klein_group(K, cov);
    // expect {id, -x, 1/x, -1/x} in some order
    Mobius<Fp> negx = mobius_neg_x(K);
    Mobius<Fp> invx{K.zero(), K.one(), K.one(), K.zero()};
    Mobius<Fp> ninvx{K.zero(), K.neg(K.one()), K.one(), K.zero()};
    int found = 0;
    for (auto& a : g)
        for (auto* e : {&negx, &invx, &ninvx})
            if (mobius_eq_proj(K, a, *e)) ++found;
    CHECK(found == 3);
}

TEST_CASE("klein group with an infinite branch value") {
    Fp K(1009);
    CurveModel<Fp> m{ModelTag::cubic, {K.from_int((i64)2), K.from_int((i64)5), K.from_int((i64)11)}};
    auto cov = cover_from_model(K, m, p1_inf(K));
    auto g = klein_group(K, cov);
    // each nontrivial involution swaps infinity with one finite branch point
    int swaps = 0;
    for (int i = 1; i < 4; ++i) {
        auto img = mobius_apply(K, g[(size_t)i], p1_inf(K));
        CHECK(!p1_is_inf(K, img));
        for (auto& b : cov.branch)
            if (p1_eq(K, img, b)) ++swaps;
        CHECK(p1_is_inf(K, mobius_apply(K, g[(size_t)i], img)));
    }
    CHECK(swaps == 3);
}

TEST_CASE("klein group conjugation equivariance") {
    Fp K(1000003);
    SplitMix64 rng(6);
    for (int it = 0; it < 10; ++it) {
        auto u = K.from_int(rng.next() % K.modulus());
        auto v = K.from_int(rng.next() % K.modulus());
        auto w = K.from_int(rng.next() % K.modulus());
        if (K.eq(u, v) || K.eq(u, w) || K.eq(v, w)) continue;
        CurveModel<Fp> m{ModelTag::cubic, {u, v, w}};
        auto cov = cover_from_model(K, m, p1_inf(K));
        auto g = klein_group(K, cov);
        Mobius<Fp> mu{K.from_int((i64)3), K.from_int((i64)1), K.from_int((i64)1), K.from_int((i64)2)};
        std::array<P1<Fp>, 4> nb;
        for (int i = 0; i < 4; ++i) nb[(size_t)i] = mobius_apply(K, mu, cov.branch[(size_t)i]);
        // klein_group only reads branch data
        DoubleCover<Fp> moved = cov;
        moved.branch = nb;
        auto g2 = klein_group(K, moved);
        auto mui = mobius_inverse(K, mu);
        for (int i = 1; i < 4; ++i) {
            auto conj = mobius_compose(K, mu, mobius_compose(K, g[(size_t)i], mui));
            bool matched = false;
            for (int j = 1; j < 4; ++j) matched = matched || mobius_eq_proj(K, conj, g2[(size_t)j]);
            CHECK(matched);
        }
    }
}

TEST_CASE("invariant pair examples") {
    PrimeStream ps(12345);
    for (int tries = 0; tries < 300; ++tries) {
        Fp K(ps.next());
        auto pair = record_pair_modp(K, 7);
        if (!pair) continue;
        auto inv = invariant_pair(K, *pair);
        CHECK(inv.common_two_torsion == 0);
        CHECK(inv.common_klein == 4);
        CHECK(!inv.excluded);
        CoverPair<Fp> same{pair->c1, pair->c1};
        CHECK(invariant_pair(K, same).excluded);
        auto p31 = split_to_pair_roots(K, K.from_int((i64)2), K.from_int((i64)3), K.from_int((i64)5));
        auto inv3 = invariant_pair(K, p31);
        CHECK(inv3.common_two_torsion == 3);
        CHECK(inv3.common_klein == 1);
        return;
    }
    FAIL("no usable prime");
}

TEST_CASE("torsion_x_poly branch data at N = 2") {
    Fp K(1000003);
    auto s = K.from_int((i64)5);
    auto si = K.inv(s);
    CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(s, s), K.mul(si, si)}};
    auto cov = make_cover(K, m, {p1_affine(K, s), p1_affine(K, K.neg(s)), p1_affine(K, si), p1_affine(K, K.neg(si))},
                          0);
    CoverTorsion<Fp> ct(K, cov, 4);
    auto [T2, inf2] = ct.raw_level(2);
    CHECK(!inf2);
    CHECK(poly::degree<Fp>(T2) == 3);  // the origin point is excluded
    for (auto x : {K.neg(s), si, K.neg(si)}) CHECK(K.is_zero(poly::eval(K, T2, x)));
    CHECK(!K.is_zero(poly::eval(K, T2, s)));
    // augmented set includes the origin x
    auto& s2 = ct.level_set(2);
    CHECK(poly::degree<Fp>(s2.affine) == 4);
    CHECK(!s2.inf);

    // Cubic with origin at infinity: roots {u,v,w}, infinity flagged
    CurveModel<Fp> mc{ModelTag::cubic, {K.from_int((i64)1), K.from_int((i64)4), K.from_int((i64)9)}};
    auto cov2 = cover_from_model(K, mc, p1_inf(K));
    CoverTorsion<Fp> ct2(K, cov2, 5);
    auto [U2, uinf] = ct2.raw_level(2);
    CHECK(uinf);
    CHECK(poly::degree<Fp>(U2) == 3);
    for (i64 x : {1, 4, 9}) CHECK(K.is_zero(poly::eval(K, U2, K.from_int(x))));
    // the origin sits over infinity and has order 1 | N, so the flag stays on
    auto [U5, uinf5] = ct2.raw_level(5);
    CHECK(uinf5);
    CHECK(poly::degree<Fp>(U5) == 12);  // (25-1)/2
}

TEST_CASE("origin invariance of the torsion x-set") {
    // changing the origin translates E[N] by a 2-torsion point; for even N
    // that fixes the set, for odd N it moves it by the matching Klein
    // involution
    Fp K(1000003);
    auto s = K.from_int((i64)7);
    auto si = K.inv(s);
    CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(s, s), K.mul(si, si)}};
    std::array<P1<Fp>, 4> br = {p1_affine(K, s), p1_affine(K, K.neg(s)), p1_affine(K, si), p1_affine(K, K.neg(si))};
    for (int N : {2, 4, 6, 8}) {
        std::optional<XSet<Fp>> first;
        for (int o = 0; o < 4; ++o) {
            auto cov = make_cover(K, m, br, o);
            CoverTorsion<Fp> ct(K, cov, N);
            auto set = ct.level_set(N);
            if (!first) {
                first = set;
            } else {
                CHECK(poly::eq(K, first->affine, set.affine));
                CHECK(first->inf == set.inf);
            }
        }
    }
    // odd N: the two root sets are related by a Klein-group element
    {
        auto cov0 = make_cover(K, m, br, 0);
        auto cov2 = make_cover(K, m, br, 2);
        CoverTorsion<Fp> t0(K, cov0, 3), t2(K, cov2, 3);
        auto s0 = t0.level_set(3);
        auto s2 = t2.level_set(3);
        auto g = klein_group(K, cov0);
        bool related = false;
        for (auto& alpha : g) {
            auto [moved, lost] = mobius_pullback_roots(K, s0.affine, mobius_inverse(K, alpha));
            (void)lost;
            related = related || poly::eq(K, moved, s2.affine);
        }
        CHECK(related);
    }
}

TEST_CASE("descend transforms the invariant by (2a,2b) -> (a+2,b)") {
    Fp K(1000003);
    auto mk = [&](i64 s, i64 t) {
        CurveModel<Fp> m{ModelTag::even_quartic, {K.from_int(s), K.from_int(t)}};
        auto rs = K.sqrt(K.from_int(s));
        auto rt = K.sqrt(K.from_int(t));
        REQUIRE(rs.has_value());
        REQUIRE(rt.has_value());
        return make_cover(
            K, m, {p1_affine(K, *rs), p1_affine(K, K.neg(*rs)), p1_affine(K, *rt), p1_affine(K, K.neg(*rt))}, 0);
    };
    CoverPair<Fp> pair{mk(4, 9), mk(16, 25)};
    auto inv0 = invariant_pair(K, pair);
    auto res = descend_pair(K, pair, mobius_neg_x(K));
    REQUIRE(!res.needs_extension);
    // descended first side: Cubic(0, 4, 9) (beta = squaring)
    auto q1 = model_rhs(K, res.pair.c1.model);
    for (i64 r : {0, 4, 9}) CHECK(K.is_zero(poly::eval(K, q1, K.from_int(r))));
    auto inv1 = invariant_pair(K, res.pair);
    CHECK(inv0.common_two_torsion == 2 * (inv1.common_two_torsion - 2));
    CHECK(inv0.common_klein == 2 * inv1.common_klein);
    CHECK_THROWS(descend_pair(K, pair, mobius_identity(K)));
    Mobius<Fp> notcommon{K.one(), K.one(), K.zero(), K.one()};
    CHECK_THROWS(descend_pair(K, pair, notcommon));
}

TEST_CASE("descend beta-pullback identity with stabilization") {
    // I_{<=2N} = beta^{-1}(I'_{<=N}) and #I = 2 #I' - 2 once the downstairs
    // report is stable from N to 2N
    Fp K(10007);
    SplitMix64 rng(99);
    int tested = 0;
    while (tested < 12) {
        auto a = K.from_int(rng.next() % K.modulus());
        auto b = K.from_int(rng.next() % K.modulus());
        auto c = K.from_int(rng.next() % K.modulus());
        auto d = K.from_int(rng.next() % K.modulus());
        CoverPair<Fp> pair;
        try {
            auto mk = [&](Fp::Elem r, Fp::Elem t) {
                CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(r, r), K.mul(t, t)}};
                return make_cover(
                    K, m, {p1_affine(K, r), p1_affine(K, K.neg(r)), p1_affine(K, t), p1_affine(K, K.neg(t))}, 0);
            };
            pair = {mk(a, b), mk(c, d)};
            if (invariant_pair(K, pair).excluded) continue;
        } catch (const std::exception&) {
            continue;
        }
        auto res = descend_pair(K, pair, mobius_neg_x(K));
        REQUIRE(!res.needs_extension);
        for (int N : {4, 8}) {
            CoverTorsion<Fp> d1(K, res.pair.c1, 2 * N), d2(K, res.pair.c2, 2 * N);
            auto IN = common_x_set(K, d1, d2, N);
            auto I2N = common_x_set(K, d1, d2, 2 * N);
            if (IN.count != I2N.count || !poly::eq(K, IN.points.affine, I2N.points.affine) ||
                IN.points.inf != I2N.points.inf)
                continue;
            CoverTorsion<Fp> u1(K, pair.c1, 2 * N), u2(K, pair.c2, 2 * N);
            auto Iup = common_x_set(K, u1, u2, 2 * N);
            CHECK(Iup.count == 2 * IN.count - 2);
            // set identity through beta: x in I_up  <=>  nu(x)^2 in I'
            auto nu = res.nu;
            for (u64 x = 0; x < 2000; ++x) {
                auto xe = K.from_int(x);
                bool up_in = !Iup.points.affine.empty() && K.is_zero(poly::eval(K, Iup.points.affine, xe));
                auto img = mobius_apply(K, nu, p1_affine(K, xe));
                bool down_in;
                if (p1_is_inf(K, img))
                    down_in = IN.points.inf;
                else
                    down_in = !IN.points.affine.empty() &&
                              K.is_zero(poly::eval(K, IN.points.affine, K.mul(img.num, img.num)));
                CHECK(up_in == down_in);
            }
            ++tested;
            break;
        }
    }
    CHECK(tested == 12);
}

TEST_CASE("ascend round trip, chain, and sign invariance") {
    Fp K(1000003);
    auto pair31 = split_to_pair_roots(K, K.from_int((i64)4), K.from_int((i64)9), K.from_int((i64)16));
    auto common0 = p1_affine(K, K.from_int((i64)4));
    auto common1 = p1_affine(K, K.from_int((i64)9));
    auto up = ascend_pair(K, pair31, common0, common1, 0);
    REQUIRE(!up.needs_extension);
    auto invUp = invariant_pair(K, up.pair);
    CHECK(invUp.common_two_torsion == 2);
    CHECK(invUp.common_klein == 2);
    std::vector<P1<Fp>> commons;
    for (auto& b1 : up.pair.c1.branch)
        for (auto& b2 : up.pair.c2.branch)
            if (p1_eq(K, b1, b2)) commons.push_back(b1);
    REQUIRE(commons.size() == 2);
    auto up2 = ascend_pair(K, up.pair, commons[0], commons[1], 0);
    if (!up2.needs_extension) {
        auto inv2 = invariant_pair(K, up2.pair);
        CHECK(inv2.common_two_torsion == 0);
        CHECK(inv2.common_klein == 4);
    }
    // descend o ascend reproduces the input in the recorded normalization:
    // the descended branch sets are the nu-images of the original ones
    auto down = descend_pair(K, up.pair, mobius_neg_x(K));
    REQUIRE(!down.needs_extension);
    for (int side = 0; side < 2; ++side) {
        const auto& orig = side == 0 ? pair31.c1 : pair31.c2;
        const auto& back = side == 0 ? down.pair.c1 : down.pair.c2;
        for (auto& b : orig.branch) {
            auto img = mobius_apply(K, up.nu, b);
            bool found = false;
            for (auto& bb : back.branch) found = found || p1_eq(K, img, bb);
            CHECK(found);
        }
    }
    // fewer than two common branch values: error
    CHECK_THROWS(ascend_pair(K, up.pair, commons[0], p1_affine(K, K.from_int((i64)123)), 0));
    // report-level invariance across square-root sign choices
    CoverTorsion<Fp> a1(K, up.pair.c1, 8), a2(K, up.pair.c2, 8);
    auto base = common_x_set(K, a1, a2, 8);
    for (int choice : {1, 2, 3, 5, 15}) {
        auto alt = ascend_pair(K, pair31, common0, common1, choice);
        REQUIRE(!alt.needs_extension);
        CoverTorsion<Fp> b1(K, alt.pair.c1, 8), b2(K, alt.pair.c2, 8);
        auto other = common_x_set(K, b1, b2, 8);
        CHECK(other.count == base.count);
        CHECK(poly::eq(K, other.points.affine, base.points.affine));
    }
}

TEST_CASE("common x-set at N=2 is the common branch data") {
    Fp K(4001);
    auto pair = split_to_pair_roots(K, K.from_int((i64)7), K.from_int((i64)11), K.from_int((i64)13));
    CoverTorsion<Fp> t1(K, pair.c1, 2), t2(K, pair.c2, 2);
    auto common = common_x_set(K, t1, t2, 2);
    CHECK(common.count == 3);
    for (i64 r : {7, 11, 13}) CHECK(K.is_zero(poly::eval(K, common.points.affine, K.from_int(r))));
    CHECK(!common.points.inf);
}

TEST_CASE("common x-set against exhaustive enumeration") {
    Fp K(211);
    SplitMix64 rng(3);
    int tested = 0;
    while (tested < 6) {
        auto a = K.from_int(rng.next() % K.modulus());
        auto b = K.from_int(rng.next() % K.modulus());
        auto c = K.from_int(rng.next() % K.modulus());
        CoverPair<Fp> pair;
        try {
            pair = split_to_pair_roots(K, a, b, c);
        } catch (const std::exception&) {
            continue;
        }
        const int N = 12;
        CoverTorsion<Fp> t1(K, pair.c1, N), t2(K, pair.c2, N);
        auto common = common_x_set(K, t1, t2, N);
        auto n1 = to_short_weierstrass(K, pair.c1.model, pair.c1.branch[(size_t)pair.c1.origin]);
        auto n2 = to_short_weierstrass(K, pair.c2.model, pair.c2.branch[(size_t)pair.c2.origin]);
        auto has_point = [&](const SwNormalization<Fp>& nn, const P1<Fp>& z) -> bool {
            auto X = mobius_apply(K, nn.mu, z);
            if (p1_is_inf(K, X)) return true;  // only the origin lies over SW infinity
            auto rhs = ec_rhs(K, nn.E, X.num);
            if (K.legendre(rhs) >= 0)
                return ec_mul(K, nn.E, ec_point<Fp>(X.num, *K.sqrt(rhs)), (u64)N).inf;
            Fp::Elem d = K.zero();
            for (u64 q = 2;; ++q) {
                d = K.from_int(q);
                if (K.legendre(d) == -1) break;
            }
            ShortW<Fp> Et{K.mul(nn.E.a, K.mul(d, d)), K.mul(nn.E.b, K.mul(d, K.mul(d, d)))};
            auto Xt = K.mul(d, X.num);
            auto yt = K.sqrt(ec_rhs(K, Et, Xt));
            REQUIRE(yt.has_value());
            return ec_mul(K, Et, ec_point<Fp>(Xt, *yt), (u64)N).inf;
        };
        for (u64 z = 0; z < K.modulus(); ++z) {
            auto ze = p1_affine(K, K.from_int(z));
            bool both = has_point(n1, ze) && has_point(n2, ze);
            bool in_set = !common.points.affine.empty() &&
                          K.is_zero(poly::eval(K, common.points.affine, K.from_int(z)));
            CHECK(both == in_set);
        }
        bool inf_both = has_point(n1, p1_inf(K)) && has_point(n2, p1_inf(K));
        CHECK(inf_both == common.points.inf);
        ++tested;
    }
}

TEST_CASE("invariant pair lies in the seven admissible values") {
    Fp K(1000003);
    SplitMix64 rng(512);
    const std::vector<std::pair<int, int>> allowed = {{3, 1}, {2, 1}, {1, 1}, {0, 1}, {2, 2}, {0, 2}, {0, 4}};
    int tested = 0;
    while (tested < 60) {
        // mix of random even-quartic and cubic covers
        CoverPair<Fp> pair;
        try {
            auto mkq = [&]() {
                auto r = K.from_int(rng.next() % 1000 + 2);
                auto t = K.from_int(rng.next() % 1000 + 2);
                CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(r, r), K.mul(t, t)}};
                return make_cover(
                    K, m, {p1_affine(K, r), p1_affine(K, K.neg(r)), p1_affine(K, t), p1_affine(K, K.neg(t))}, 0);
            };
            auto mkc = [&]() {
                CurveModel<Fp> m{ModelTag::cubic,
                                 {K.from_int(rng.next() % 50), K.from_int(rng.next() % 50 + 50),
                                  K.from_int(rng.next() % 50 + 100)}};
                return cover_from_model(K, m, p1_inf(K));
            };
            pair = (rng.next() & 1) ? CoverPair<Fp>{mkq(), mkq()} : CoverPair<Fp>{mkc(), mkc()};
        } catch (const std::exception&) {
            continue;
        }
        auto inv = invariant_pair(K, pair);
        if (inv.excluded) continue;
        bool in_list = false;
        for (auto [a, b] : allowed) in_list = in_list || (inv.common_two_torsion == a && inv.common_klein == b);
        CHECK(in_list);
        ++tested;
    }
}

TEST_CASE("klein group acts freely on the common two-torsion") {
    Fp K(1000003);
    SplitMix64 rng(21);
    for (int it = 0; it < 20; ++it) {
        auto s = K.from_int(rng.next() % 100000 + 2);
        auto t = K.from_int(rng.next() % 100000 + 2);
        CoverPair<Fp> pair;
        try {
            auto mk = [&](Fp::Elem r, Fp::Elem u) {
                CurveModel<Fp> m{ModelTag::even_quartic, {K.mul(r, r), K.mul(u, u)}};
                return make_cover(
                    K, m, {p1_affine(K, r), p1_affine(K, K.neg(r)), p1_affine(K, u), p1_affine(K, K.neg(u))}, 0);
            };
            pair = {mk(s, K.inv(s)), mk(t, K.inv(t))};
            if (invariant_pair(K, pair).excluded) continue;
        } catch (const std::exception&) {
            continue;
        }
        auto g1 = klein_group(K, pair.c1);
        auto g2 = klein_group(K, pair.c2);
        std::vector<Mobius<Fp>> common;
        for (auto& m1 : g1)
            for (auto& m2 : g2)
                if (mobius_eq_proj(K, m1, m2)) common.push_back(m1);
        std::vector<P1<Fp>> cb;
        for (auto& b1 : pair.c1.branch)
            for (auto& b2 : pair.c2.branch)
                if (p1_eq(K, b1, b2)) cb.push_back(b1);
        for (auto& alpha : common) {
            if (mobius_eq_proj(K, alpha, mobius_identity(K))) continue;
            for (auto& v : cb) {
                auto img = mobius_apply(K, alpha, v);
                CHECK(!p1_eq(K, img, v));
                bool in = false;
                for (auto& w : cb) in = in || p1_eq(K, img, w);
                CHECK(in);
            }
        }
    }
}
