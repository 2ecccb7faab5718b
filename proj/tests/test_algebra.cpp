#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torsionx/ext_field.hpp"
#include "torsionx/factor.hpp"
#include "torsionx/ntt.hpp"
#include "torsionx/number_field.hpp"
#include "torsionx/poly.hpp"
#include "torsionx/prime_field.hpp"
#include "torsionx/rationals.hpp"
#include "torsionx/util.hpp"

using namespace torsionx;
using Fp = PrimeField;
using FpVec = PolyVec<Fp>;

namespace {
FpVec P(const Fp& K, std::initializer_list<i64> cs) { return poly::from_ints(K, std::vector<i64>(cs)); }
}  // namespace

TEST_CASE("prime field arithmetic") {
    Fp K(1000003);
    auto a = K.from_int((u64)123456), b = K.from_int((u64)999999);
    CHECK(K.to_int(K.add(a, b)) == (123456 + 999999) % 1000003);
    CHECK(K.to_int(K.mul(a, b)) == (u64)((u128)123456 * 999999 % 1000003));
    CHECK(K.to_int(K.mul(a, K.inv(a))) == 1);
    CHECK(K.to_int(K.pow(K.from_int((u64)2), 20)) == (1u << 20) % 1000003);
    CHECK(K.to_int(K.neg(K.zero())) == 0);

    // sqrt on residues and non-residues
    int nres = 0;
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto x = K.from_int(rng.next() % K.modulus());
        auto s = K.sqrt(x);
        if (s) {
            CHECK(K.eq(K.sqr(*s), x));
        } else {
            CHECK(K.legendre(x) == -1);
            ++nres;
        }
    }
    CHECK(nres > 50);
}

TEST_CASE("prime stream determinism and constraints") {
    PrimeStream s1(42, 20), s2(42, 20);
    for (int i = 0; i < 5; ++i) {
        u64 p = s1.next();
        CHECK(p == s2.next());
        CHECK(is_prime_u64(p));
        CHECK((p >> 59) != 0);
        CHECK((p >> 62) == 0);
        CHECK((p - 1) % (1ULL << 20) == 0);
    }
    PrimeStream s3(43, 20);
    CHECK(s3.next() != PrimeStream(42, 20).next());
}

TEST_CASE("poly gcd matches spec examples") {
    Fp K(1000003);
    // gcd(x^2-1, x^2-3x+2) = x-1
    auto g = poly::gcd(K, P(K, {-1, 0, 1}), P(K, {2, -3, 1}));
    CHECK(poly::eq(K, g, P(K, {-1, 1})));
    // gcd(f, 0) = monic(f)
    auto f = P(K, {2, 4, 6});
    CHECK(poly::eq(K, poly::gcd(K, f, {}), poly::monic(K, f)));
    CHECK(poly::gcd(K, {}, {}).empty());

    // over F_7: x^2+1 is irreducible (-1 is not a QR), so gcd(x^7-x, x^2+1) = 1.
    Fp F7(7);
    for (u64 a = 0; a < 7; ++a) CHECK(F7.to_int(poly::eval(F7, P(F7, {1, 0, 1}), F7.from_int(a))) != 0);
    FpVec x7x = poly::sub(F7, poly::xpow(F7, 7), poly::xpow(F7, 1));
    auto g7 = poly::gcd(F7, x7x, P(F7, {1, 0, 1}));
    CHECK(poly::degree<Fp>(g7) == 0);
}

TEST_CASE("gcd divides both inputs with degree bound") {
    Fp K(65537);
    SplitMix64 rng(99);
    for (int it = 0; it < 200; ++it) {
        auto a = poly::random_poly(K, rng, 1 + (int)(rng.next() % 8));
        auto b = poly::random_poly(K, rng, 1 + (int)(rng.next() % 8));
        auto c = poly::random_poly(K, rng, (int)(rng.next() % 4));
        auto f = poly::mul(K, a, c), g = poly::mul(K, b, c);
        auto d = poly::gcd(K, f, g);
        CHECK(poly::degree<Fp>(d) <= std::min(poly::degree<Fp>(f), poly::degree<Fp>(g)));
        CHECK(poly::rem(K, f, d).empty());
        CHECK(poly::rem(K, g, d).empty());
        CHECK(poly::degree<Fp>(d) >= poly::degree<Fp>(c) - (int)c.size());  // c divides gcd up to sf
        CHECK(poly::rem(K, f, poly::monic(K, c)).empty());
    }
}

TEST_CASE("resultant spec examples and properties") {
    Fp K(1000003);
    // Res(x^2-1, x-2) = 3 with the convention Res(f,g) = lc(g)^deg f * prod f(roots of g)
    CHECK(K.to_int(poly::resultant(K, P(K, {-1, 0, 1}), P(K, {-2, 1}))) == 3);
    // shared root -> 0
    CHECK(K.is_zero(poly::resultant(K, P(K, {-1, 0, 1}), P(K, {-1, 1}))));

    SplitMix64 rng(1234);
    for (int it = 0; it < 200; ++it) {
        auto f = poly::random_poly(K, rng, 1 + (int)(rng.next() % 5));
        auto g = poly::random_poly(K, rng, 1 + (int)(rng.next() % 5));
        auto h = poly::random_poly(K, rng, 1 + (int)(rng.next() % 5));
        // multiplicativity
        auto lhs = poly::resultant(K, f, poly::mul(K, g, h));
        auto rhs = K.mul(poly::resultant(K, f, g), poly::resultant(K, f, h));
        CHECK(K.eq(lhs, rhs));
        // antisymmetry
        auto rfg = poly::resultant(K, f, g);
        auto rgf = poly::resultant(K, g, f);
        int d = poly::degree<Fp>(f) * poly::degree<Fp>(g);
        CHECK(K.eq(rfg, (d & 1) ? K.neg(rgf) : rgf));
        // vanishing iff nontrivial gcd
        bool r0 = K.is_zero(rfg);
        bool g0 = poly::degree<Fp>(poly::gcd(K, f, g)) >= 1;
        CHECK(r0 == g0);
    }
}

TEST_CASE("squarefree part") {
    Fp K(1000003);
    auto f = poly::mul(K, poly::mul(K, P(K, {-1, 1}), P(K, {-1, 1})), P(K, {2, 1}));
    CHECK(poly::eq(K, poly::squarefree_part(K, f), poly::mul(K, P(K, {-1, 1}), P(K, {2, 1}))));
    // idempotence on squarefree input
    auto s = P(K, {3, 1, 0, 1});
    CHECK(poly::eq(K, poly::squarefree_part(K, s), poly::monic(K, s)));
    // planted multiplicities
    SplitMix64 rng(5);
    for (int it = 0; it < 50; ++it) {
        auto a = poly::monic(K, poly::random_poly(K, rng, 2));
        auto b = poly::monic(K, poly::random_poly(K, rng, 3));
        if (poly::degree<Fp>(poly::gcd(K, a, b)) != 0) continue;
        if (poly::degree<Fp>(poly::squarefree_part(K, a)) != 2) continue;
        if (poly::degree<Fp>(poly::squarefree_part(K, b)) != 3) continue;
        auto f2 = poly::mul(K, poly::mul(K, a, a), b);
        CHECK(poly::eq(K, poly::squarefree_part(K, f2), poly::mul(K, a, b)));
        // gcd(sf, sf') = 1
        auto sf = poly::squarefree_part(K, f2);
        CHECK(poly::degree<Fp>(poly::gcd(K, sf, poly::derivative(K, sf))) == 0);
    }
}

TEST_CASE("yun squarefree decomposition") {
    Fp K(1000003);
    auto a1 = P(K, {1, 1});
    auto a2 = P(K, {2, 1});
    auto a3 = P(K, {3, 1});
    auto f = poly::mul(K, a1, poly::mul(K, poly::mul(K, a2, a2), poly::mul(K, poly::mul(K, a3, a3), a3)));
    auto dec = poly::squarefree_decomposition(K, f);
    REQUIRE(dec.size() == 3);
    CHECK(poly::eq(K, dec[0], a1));
    CHECK(poly::eq(K, dec[1], a2));
    CHECK(poly::eq(K, dec[2], a3));
}

TEST_CASE("crt and rational reconstruction") {
    CHECK(crt_combine({{2, 3}, {3, 5}}) == 8);
    CHECK(crt_combine({{2, 3}}) == 2);
    CHECK_THROWS_AS(crt_combine({{1, 6}, {2, 4}}), std::domain_error);

    // 20 random primes, random target round-trip
    SplitMix64 rng(2024);
    PrimeStream ps(77);
    std::vector<CrtInput> in;
    mpz_class target = 1;
    for (int i = 0; i < 20; ++i) target *= mpz_class((unsigned long)(rng.next() % 1000000 + 2));
    target /= 3;
    std::vector<u64> primes;
    for (int i = 0; i < 20; ++i) {
        u64 p = ps.next();
        primes.push_back(p);
        mpz_class r = target % mpz_class(mpz_class(p));
        in.push_back({r, mpz_class(mpz_class(p))});
    }
    mpz_class M;
    mpz_class rec = crt_combine(in, &M);
    CHECK(rec == target % M);

    CHECK(*rational_reconstruct(51, 101) == mpq_class(1, 2));
    CHECK(*rational_reconstruct(7, 1000003) == 7);
    {
        Fp K(PrimeStream(5).next());
        mpq_class x(13, 40);
        auto xm = reduce_rational(K, x);
        REQUIRE(xm.has_value());
        auto rr = rational_reconstruct(mpz_class((unsigned long)K.to_int(*xm)), mpz_class((unsigned long)K.modulus()));
        REQUIRE(rr.has_value());
        CHECK(*rr == x);
    }
}

TEST_CASE("count distinct roots") {
    Fp F3(3);
    CHECK(fpoly::count_distinct_roots(F3, P(F3, {1, 0, 1}), fpoly::RootScope::closure) == 2);
    Fp F101(101);
    auto xpx = poly::sub(F101, poly::xpow(F101, 101), poly::xpow(F101, 1));
    CHECK(fpoly::count_distinct_roots(F101, xpx, fpoly::RootScope::base_field) == 101);

    // base-field count vs exhaustive evaluation
    SplitMix64 rng(31337);
    for (u64 p : {101ULL, 997ULL, 9973ULL}) {
        Fp K(p);
        auto f = poly::random_poly(K, rng, 12);
        int n = 0;
        for (u64 a = 0; a < p; ++a)
            if (K.is_zero(poly::eval(K, f, K.from_int(a)))) ++n;
        CHECK(fpoly::count_distinct_roots(K, f, fpoly::RootScope::base_field) == n);
    }
}

TEST_CASE("factorization and roots over F_p") {
    Fp K(1000003);
    SplitMix64 rng(55);
    // product of distinct linear + quadratic irreducible factors
    auto l1 = P(K, {-5, 1}), l2 = P(K, {-9, 1});
    FpVec q1;
    for (;;) {
        q1 = poly::monic(K, poly::random_poly(K, rng, 2));
        if (fpoly::roots(K, q1, 1).empty()) break;
    }
    auto f = poly::mul(K, poly::mul(K, l1, l2), q1);
    auto facs = fpoly::factor_squarefree(K, f, 123);
    REQUIRE(facs.size() == 3);
    auto prod = poly::constant(K, K.one());
    for (auto& g : facs) prod = poly::mul(K, prod, g);
    CHECK(poly::eq(K, prod, poly::monic(K, f)));
    auto rs = fpoly::roots(K, f, 9);
    CHECK(rs == std::vector<u64>{5, 9});
}

TEST_CASE("ntt multiplication matches schoolbook") {
    PrimeStream ps(9, 22);
    Fp K(ps.next());
    SplitMix64 rng(8);
    for (int d : {50, 200, 1000}) {
        auto a = poly::random_poly(K, rng, d);
        auto b = poly::random_poly(K, rng, d + 17);
        CHECK(poly::eq(K, ntt::mul(K, a, b), poly::mul(K, a, b)));
    }
}

TEST_CASE("eval grid interpolation") {
    PrimeStream ps(11, 22);
    Fp K(ps.next());
    ntt::EvalGrid grid(K, 10, 77);
    SplitMix64 rng(10);
    auto f = poly::random_poly(K, rng, 200);
    std::vector<u64> vals;
    for (u64 k = 0; k < 256; ++k) vals.push_back(poly::eval(K, f, grid.point(k)));
    auto g = grid.interpolate_prefix(vals, 8);
    CHECK(poly::eq(K, f, g));
    // prefix property: the first 128 values also live on the 128-grid
    auto g2 = grid.interpolate_prefix(vals, 7);  // deg 200 > 127: wrong on purpose
    CHECK(!poly::eq(K, f, g2));
}

TEST_CASE("transport and shift") {
    Fp K(1000003);
    SplitMix64 rng(77);
    auto f = poly::random_poly(K, rng, 6);
    auto s = K.from_int((u64)42);
    auto sh = poly::shift(K, f, s);
    for (int i = 0; i < 10; ++i) {
        auto x = K.from_int(rng.next() % K.modulus());
        CHECK(K.eq(poly::eval(K, sh, x), poly::eval(K, f, K.add(x, s))));
    }
    // Moebius transport: roots of Q are preimages of roots of P
    auto a = K.from_int((u64)3), b = K.from_int((u64)5), c = K.from_int((u64)2), d = K.from_int((u64)7);
    auto Q = poly::transport(K, f, a, b, c, d);
    for (int i = 0; i < 20; ++i) {
        auto x = K.from_int(rng.next() % K.modulus());
        auto den = K.add(K.mul(c, x), d);
        if (K.is_zero(den)) continue;
        auto mx = K.div(K.add(K.mul(a, x), b), den);
        CHECK(K.is_zero(poly::eval(K, f, mx)) == K.is_zero(poly::eval(K, Q, x)));
    }
}

TEST_CASE("ext field F_9 and sqrt in F_p^2") {
    Fp F3(3);
    ExtField F9(F3, poly::from_ints(F3, {1, 0, 1}));  // x^2+1 irreducible over F_3
    CHECK(F9.ext_degree() == 2);
    CHECK(F9.cardinality() == 9);
    auto i = F9.gen();
    CHECK(F9.eq(F9.mul(i, i), F9.neg(F9.one())));
    // every nonzero элемент of F_9 has order dividing 8
    auto x = i;
    int ord = 1;
    while (!F9.eq(x, F9.one())) {
        x = F9.mul(x, i);
        ++ord;
    }
    CHECK(8 % ord == 0);

    Fp K(101);
    // find an irreducible quadratic, then sqrt of arbitrary elements
    FpVec g;
    SplitMix64 rng(3);
    for (;;) {
        g = poly::monic(K, poly::random_poly(K, rng, 2));
        if (ExtField::is_irreducible(K, g)) break;
    }
    ExtField F2(K, g);
    for (int it = 0; it < 30; ++it) {
        ExtField::Elem v{K.from_int(rng.next() % 101), K.from_int(rng.next() % 101)};
        poly::normalize(K, v);
        auto sq = F2.mul(v, v);
        auto r = F2.sqrt(sq);
        REQUIRE(r.has_value());
        CHECK(F2.eq(F2.mul(*r, *r), sq));
    }
    CHECK_THROWS(ExtField(K, poly::from_ints(K, {-1, 0, 1})));  // (x-1)(x+1) reducible
}

TEST_CASE("rational and number field arithmetic") {
    RationalField Q;
    auto f = poly::from_ints(Q, {2, 0, 1});
    auto g = poly::from_ints(Q, {-4, 0, -2, 0, -1, 0, 1});
    auto d = poly::gcd(Q, poly::mul(Q, f, g), f);
    CHECK(poly::eq(Q, d, poly::monic(Q, f)));

    // Q(s), s^8 + 174 s^4 + 81 = 0
    NumberField NF(poly::from_ints(Q, {81, 0, 0, 0, 174, 0, 0, 0, 1}));
    auto s = NF.gen();
    auto s2 = NF.mul(s, s);
    auto inv_s2 = NF.inv(s2);
    CHECK(NF.eq(NF.mul(s2, inv_s2), NF.one()));
    // 1/s^2 = -(s^6 + 174 s^2)/81
    NumberField::Elem expect(7, mpq_class(0));
    expect[2] = mpq_class(-174, 81);
    expect[2].canonicalize();
    expect[6] = mpq_class(-1, 81);
    poly::normalize(Q, expect);
    CHECK(NF.eq(inv_s2, expect));

    // reduction mod p is a ring hom at a root of the defining polynomial
    PrimeStream ps(21);
    for (int tries = 0; tries < 200; ++tries) {
        Fp K(ps.next());
        auto fmodp = poly::from_ints(K, {81, 0, 0, 0, 174, 0, 0, 0, 1});
        auto rs = fpoly::roots(K, fmodp, 5);
        if (rs.empty()) continue;
        auto r = K.from_int(rs[0]);
        auto h = [&](const NumberField::Elem& e) { return *NF.reduce_mod(K, r, e); };
        auto x = NF.add(s2, NF.from_int((i64)3));
        auto y = NF.mul(s, NF.sub(s2, NF.one()));
        CHECK(K.eq(h(NF.mul(x, y)), K.mul(h(x), h(y))));
        CHECK(K.eq(h(NF.add(x, y)), K.add(h(x), h(y))));
        CHECK(K.eq(h(NF.inv(x)), K.inv(h(x))));
        return;
    }
    FAIL("no prime with a root found");
}
