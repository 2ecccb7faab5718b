/*
   Copyright 2026 The torsionx authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TORSIONX_GENUS2_HPP
#define TORSIONX_GENUS2_HPP

#include <optional>
#include <string>

#include <gmpxx.h>

#include "torsionx/covers.hpp"

namespace torsionx {

// Genus-2 curve y^2 = f(x) with an optional marked extra involution
// (a Moebius map on x; the y-scale is recovered where needed).
template <class F>
struct Genus2Curve {
    PolyVec<F> f;  // squarefree, degree 5 or 6
    std::optional<Mobius<F>> involution;
};

template <class F>
Genus2Curve<F> make_genus2(const F& K, PolyVec<F> f, std::optional<Mobius<F>> inv = std::nullopt) {
    poly::normalize(K, f);
    int d = poly::degree<F>(f);
    if (d != 5 && d != 6) throw std::domain_error("genus2: need a quintic or sextic right-hand side");
    if (poly::degree<F>(poly::gcd(K, f, poly::derivative(K, f))) != 0)
        throw std::domain_error("genus2: rhs is not squarefree");
    if (inv) {
        // the involution must preserve the branch configuration: the
        // transported sextic is proportional to f (x-level check; the
        // y-scale is a square-root condition resolved per field)
        auto sq = mobius_compose(K, *inv, *inv);
        if (!mobius_eq_proj(K, sq, mobius_identity(K))) throw std::domain_error("genus2: marked map is not an involution");
        auto T = poly::transport(K, f, inv->a, inv->b, inv->c, inv->d);
        // compare T ~ f up to scalar, allowing for a degree drop on either
        // side when a Weierstrass point sits at a relevant infinity
        auto Tm = poly::monic(K, T);
        auto fm = poly::monic(K, f);
        if (!poly::eq(K, Tm, fm)) throw std::domain_error("genus2: involution does not preserve the curve");
    }
    return {std::move(f), inv};
}

// ---------------------------------------------------------------------------
// Bielliptic normalization (the "can take it to be x -> -x" step)
// ---------------------------------------------------------------------------

// After conjugating the involution to x -> -x the curve is an even sextic
// lead * (X^6 + ...); scaling z = lead * X^2 makes the order-3 part monic:
//   C: y^2 ~ g(z) with g monic cubic, z = lead * mu(x)^2.
// The Weierstrass x-values of C are exactly the preimages of the roots of g.
template <class F>
struct BiellNormalization {
    bool needs_extension = false;
    PolyVec<F> extension_poly;  // fixed-point quadratic when unsolvable
    PolyVec<F> cubic;           // monic g(z)
    Mobius<F> mu;               // conjugates the involution to x -> -x
    typename F::Elem lead{};    // z = lead * mu(x)^2
};

template <class F>
BiellNormalization<F> normalize_bielliptic(const F& K, const Genus2Curve<F>& C) {
    if (!C.involution) throw std::domain_error("normalize_bielliptic: no marked involution");
    BiellNormalization<F> out;
    if (mobius_eq_proj(K, *C.involution, mobius_identity(K)))
        throw std::domain_error("normalize_bielliptic: marked involution is the identity (hyperelliptic one?)");
    auto fp = mobius_fixed_points(K, *C.involution);
    if (fp.needs_extension) {
        out.needs_extension = true;
        out.extension_poly = fp.quadratic;
        return out;
    }
    // mu: f1 -> 0, f2 -> infinity
    Mobius<F> mu;
    if (p1_is_inf(K, fp.f2))
        mu = {K.one(), K.neg(fp.f1.num), K.zero(), K.one()};
    else if (p1_is_inf(K, fp.f1))
        mu = {K.zero(), K.one(), K.one(), K.neg(fp.f2.num)};
    else
        mu = {K.one(), K.neg(fp.f1.num), K.one(), K.neg(fp.f2.num)};
    auto conj = mobius_compose(K, mu, mobius_compose(K, *C.involution, mobius_inverse(K, mu)));
    if (!mobius_eq_proj(K, conj, mobius_neg_x(K))) throw std::logic_error("normalize_bielliptic: conjugation failed");
    // fixed points must avoid the Weierstrass set (they map to x = 0, inf of
    // the even model, which carry nonzero y)
    for (auto* fpt : {&fp.f1, &fp.f2}) {
        if (p1_is_inf(K, *fpt)) {
            if (poly::degree<F>(C.f) == 5) throw std::domain_error("normalize_bielliptic: fixed point on the branch set");
        } else if (K.is_zero(poly::eval(K, C.f, fpt->num))) {
            throw std::domain_error("normalize_bielliptic: fixed point on the branch set");
        }
    }
    // transport the sextic through mu^{-1}: roots become mu(roots of f)
    auto mui = mobius_inverse(K, mu);
    auto T = poly::transport(K, C.f, mui.a, mui.b, mui.c, mui.d);
    if (poly::degree<F>(T) != 6) throw std::logic_error("normalize_bielliptic: transported sextic degenerated");
    for (int i = 1; i <= 5; i += 2)
        if (!K.is_zero(T[(size_t)i])) throw std::logic_error("normalize_bielliptic: odd coefficient survived");
    auto lead = T[6];
    // g(z) = z^3 + a4 z^2 + lead*a2 z + lead^2*a0   (z = lead X^2)
    PolyVec<F> g = {K.mul(K.mul(lead, lead), T[0]), K.mul(lead, T[2]), T[4], K.one()};
    poly::normalize(K, g);
    if (poly::degree<F>(poly::gcd(K, g, poly::derivative(K, g))) != 0)
        throw std::domain_error("normalize_bielliptic: collapsed quotient branch data");
    if (K.is_zero(poly::eval(K, g, K.zero()))) throw std::logic_error("normalize_bielliptic: zero root in quotient cubic");
    out.cubic = g;
    out.mu = mu;
    out.lead = lead;
    return out;
}

// z-coordinate of the degree-4 map rho: C -> P^1, z = lead * mu(x)^2,
// as a rational function num/den.
template <class F>
std::pair<PolyVec<F>, PolyVec<F>> rho_map(const F& K, const BiellNormalization<F>& N) {
    PolyVec<F> num = {N.mu.b, N.mu.a}, den = {N.mu.d, N.mu.c};
    poly::normalize(K, num);
    poly::normalize(K, den);
    num = poly::scale(K, poly::mul(K, num, num), N.lead);
    den = poly::mul(K, den, den);
    return {num, den};
}

// ---------------------------------------------------------------------------
// The (3,1) correspondence of bielliptic genus-2 curves
// ---------------------------------------------------------------------------

// (Cubic(u,v,w), origin inf; quartic z(z-u)(z-v)(z-w), origin (0,0)).
// The cubic must split over the working field; root-supplying entry point:
template <class F>
CoverPair<F> split_to_pair_roots(const F& K, typename F::Elem u, typename F::Elem v, typename F::Elem w) {
    for (auto r : {u, v, w})
        if (K.is_zero(r)) throw std::domain_error("split_to_pair: u, v, w must be nonzero");
    if (K.eq(u, v) || K.eq(u, w) || K.eq(v, w)) throw std::domain_error("split_to_pair: u, v, w must be distinct");
    CurveModel<F> m1{ModelTag::cubic, {u, v, w}};
    auto c1 = cover_from_model(K, m1, p1_inf(K));
    CurveModel<F> m2{ModelTag::cubic_with0, {u, v, w}};
    auto c2 = make_cover(K, m2,
                         {p1_affine(K, K.zero()), p1_affine(K, u), p1_affine(K, v), p1_affine(K, w)}, 0);
    return {c1, c2};
}

// Normalization of a (3,1) pair: the fourth branch value of the
// first cover goes to infinity, the fourth of the second cover to 0, and the
// first common value to 1; the three common images are the u, v, w of the
// even sextic.
template <class F>
struct PairToGenus2 {
    std::array<typename F::Elem, 3> uvw;
    Mobius<F> nu;
};

template <class F>
PairToGenus2<F> pair_to_genus2(const F& K, const CoverPair<F>& pair) {
    auto inv = invariant_pair(K, pair);
    if (inv.excluded || inv.common_two_torsion != 3) throw std::domain_error("pair_to_genus2: invariant is not (3,1)");
    auto is_common = [&](const P1<F>& v) {
        for (auto& b1 : pair.c1.branch)
            for (auto& b2 : pair.c2.branch)
                if (p1_eq(K, b1, v) && p1_eq(K, b2, v)) return true;
        return false;
    };
    std::vector<P1<F>> common;
    P1<F> fourth1, fourth2;
    for (auto& b : pair.c1.branch)
        if (is_common(b))
            common.push_back(b);
        else
            fourth1 = b;
    for (auto& b : pair.c2.branch)
        if (!is_common(b)) fourth2 = b;
    if (common.size() != 3) throw std::logic_error("pair_to_genus2: expected three common branch values");
    auto nu = mobius_three_points<F>(K, {fourth2, common[0], fourth1},
                                     {p1_affine(K, K.zero()), p1_affine(K, K.one()), p1_inf(K)});
    PairToGenus2<F> out;
    out.nu = nu;
    for (int i = 0; i < 3; ++i) {
        auto img = mobius_apply(K, nu, common[(size_t)i]);
        if (p1_is_inf(K, img)) throw std::logic_error("pair_to_genus2: common value at infinity after normalization");
        out.uvw[(size_t)i] = img.num;
    }
    return out;
}

// Scale-and-inversion invariants of the even sextic (x^2-u)(x^2-v)(x^2-w):
// the unordered pair {e1^3/e3, e2^3/e3^2} classifies the curve up to the
// coordinate freedom preserving the even form.
template <class F>
std::pair<typename F::Elem, typename F::Elem> even_sextic_invariants(const F& K,
                                                                     const std::array<typename F::Elem, 3>& uvw) {
    auto e1 = K.add(K.add(uvw[0], uvw[1]), uvw[2]);
    auto e2 = K.add(K.add(K.mul(uvw[0], uvw[1]), K.mul(uvw[0], uvw[2])), K.mul(uvw[1], uvw[2]));
    auto e3 = K.mul(uvw[0], K.mul(uvw[1], uvw[2]));
    auto j1 = K.div(K.mul(e1, K.mul(e1, e1)), e3);
    auto j2 = K.div(K.mul(e2, K.mul(e2, e2)), K.mul(e3, e3));
    return {j1, j2};
}

template <class F>
bool even_sextic_equivalent(const F& K, const std::array<typename F::Elem, 3>& a,
                            const std::array<typename F::Elem, 3>& b) {
    auto [ja1, ja2] = even_sextic_invariants(K, a);
    auto [jb1, jb2] = even_sextic_invariants(K, b);
    return (K.eq(ja1, jb1) && K.eq(ja2, jb2)) || (K.eq(ja1, jb2) && K.eq(ja2, jb1));
}

// Same invariants from the monic cubic with roots u, v, w.
template <class F>
std::pair<typename F::Elem, typename F::Elem> even_sextic_invariants_cubic(const F& K, const PolyVec<F>& g) {
    if (poly::degree<F>(g) != 3 || !K.eq(g.back(), K.one()))
        throw std::domain_error("even_sextic_invariants_cubic: need a monic cubic");
    auto e1 = K.neg(g[2]), e2 = g[1], e3 = K.neg(g[0]);
    auto j1 = K.div(K.mul(e1, K.mul(e1, e1)), e3);
    auto j2 = K.div(K.mul(e2, K.mul(e2, e2)), K.mul(e3, e3));
    return {j1, j2};
}

template <class F>
bool even_sextic_equivalent_cubic(const F& K, const PolyVec<F>& a, const PolyVec<F>& b) {
    auto [ja1, ja2] = even_sextic_invariants_cubic(K, a);
    auto [jb1, jb2] = even_sextic_invariants_cubic(K, b);
    return (K.eq(ja1, jb1) && K.eq(ja2, jb2)) || (K.eq(ja1, jb2) && K.eq(ja2, jb1));
}

// ---------------------------------------------------------------------------
// Packet pullback: the hyperelliptic torsion packet as the rho-preimage of I'
// ---------------------------------------------------------------------------

template <class F>
struct PacketData {
    CommonXSet<F> iprime;          // I(pi, pi') at the bound, z-coordinates
    int iprime_at_zero_inf = 0;    // #(I' ∩ {0, inf})
    PolyVec<F> packet_affine_x;    // squarefree monic, packet x-values on C
    bool packet_has_inf = false;
    int point_count = 0;           // points of C in the packet
    int formula_value = 0;         // 4 #I' - 6 - 2 #(I' ∩ {0,inf})
};

// Pull I' back through rho; fiber sizes are 2 over the branch locus of the
// hyperelliptic cover (Weierstrass x) and over {0, inf}, else 4.
template <class F>
PacketData<F> packet_pullback(const F& K, const Genus2Curve<F>& C, const BiellNormalization<F>& N,
                              CoverTorsion<F>& t1, CoverTorsion<F>& t2, int bound) {
    PacketData<F> out;
    out.iprime = common_x_set(K, t1, t2, bound);
    const auto& G = out.iprime.points.affine;
    bool zero_in = !G.empty() && K.is_zero(poly::eval(K, G, K.zero()));
    out.iprime_at_zero_inf = (zero_in ? 1 : 0) + (out.iprime.points.inf ? 1 : 0);
    out.formula_value = 4 * out.iprime.count - 6 - 2 * out.iprime_at_zero_inf;

    auto [num, den] = rho_map(K, N);
    auto P = poly::compose_rational(K, G, num, den);
    // preimage of z = infinity: the pole of mu (and x = infinity when mu
    // fixes it)
    bool mu_fixes_inf = K.is_zero(N.mu.c);
    if (out.iprime.points.inf && !mu_fixes_inf) {
        // pole of mu: mu.c x + mu.d = 0
        auto pole = K.neg(K.div(N.mu.d, N.mu.c));
        PolyVec<F> lin = {K.neg(pole), K.one()};
        poly::normalize(K, lin);
        P = poly::mul(K, P, lin);
    }
    // membership of x = infinity in the packet: rho(inf) in I'
    if (mu_fixes_inf) {
        out.packet_has_inf = out.iprime.points.inf;
    } else {
        auto zinf = K.mul(N.lead, K.mul(K.div(N.mu.a, N.mu.c), K.div(N.mu.a, N.mu.c)));
        out.packet_has_inf = !G.empty() && K.is_zero(poly::eval(K, G, zinf));
    }
    if (P.empty()) P = poly::constant(K, K.one());
    out.packet_affine_x = poly::squarefree_part(K, P);
    // count points: y-fiber is 1 on the Weierstrass set, else 2
    int deg = poly::degree<F>(out.packet_affine_x);
    int wdeg = poly::degree<F>(poly::gcd(K, out.packet_affine_x, C.f));
    out.point_count = 2 * deg - wdeg;
    if (out.packet_has_inf) out.point_count += (poly::degree<F>(C.f) == 6) ? 2 : 1;
    return out;
}

// ---------------------------------------------------------------------------
// Poonen's family C_t : y^2 = (x^3 - 1)(x^3 - t^12)
// ---------------------------------------------------------------------------

template <class F>
struct PoonenQuotients {
    CoverPair<F> pair;                 // E_1 (origin inf), E_2 (origin (0,0))
    std::array<typename F::Elem, 3> uvw;
    typename F::Elem t;
    typename F::Elem zeta;             // primitive cube root of unity
};

// phi_1(x, y) = ( ((x-t^2)/(x+t^2))^2 , 8 t^3 y / ((t^6+1)(x+t^2)^3) )
// phi_2(x, y) = ( ((x-t^2)/(x+t^2))^2 , 8 t^3 (x-t^2) y / ((t^6+1)(x+t^2)^4) )
template <class F>
std::pair<typename F::Elem, typename F::Elem> poonen_phi1(const F& K, const PoonenQuotients<F>& Q,
                                                          typename F::Elem x, typename F::Elem y) {
    auto t2 = K.mul(Q.t, Q.t);
    auto t3 = K.mul(t2, Q.t);
    auto t6 = K.mul(t3, t3);
    auto den = K.add(x, t2);
    auto r = K.div(K.sub(x, t2), den);
    auto X = K.mul(r, r);
    auto Y = K.div(K.mul(K.mul(K.from_int((i64)8), t3), y),
                   K.mul(K.add(t6, K.one()), K.mul(den, K.mul(den, den))));
    return {X, Y};
}

template <class F>
std::pair<typename F::Elem, typename F::Elem> poonen_phi2(const F& K, const PoonenQuotients<F>& Q,
                                                          typename F::Elem x, typename F::Elem y) {
    auto t2 = K.mul(Q.t, Q.t);
    auto t3 = K.mul(t2, Q.t);
    auto t6 = K.mul(t3, t3);
    auto den = K.add(x, t2);
    auto den2 = K.mul(den, den);
    auto r = K.div(K.sub(x, t2), den);
    auto X = K.mul(r, r);
    auto Y = K.div(K.mul(K.mul(K.mul(K.from_int((i64)8), t3), K.sub(x, t2)), y),
                   K.mul(K.add(t6, K.one()), K.mul(den2, den2)));
    return {X, Y};
}

// Branch data of the quotients: images of the Weierstrass x-values of C_t
// (the cube roots of 1 and of t^12, collapsing in tau-orbits).
template <class F>
PoonenQuotients<F> poonen_quotients(const F& K, typename F::Elem t, typename F::Elem zeta) {
    if (K.is_zero(t)) throw std::domain_error("poonen_quotients: t = 0");
    auto t2 = K.mul(t, t);
    auto t6 = K.mul(t2, K.mul(t2, t2));
    auto t12 = K.mul(t6, t6);
    if (K.eq(t12, K.one())) throw std::domain_error("poonen_quotients: t^6 = ±1 degenerates the family");
    if (!K.eq(K.mul(zeta, K.mul(zeta, zeta)), K.one()) || K.eq(zeta, K.one()))
        throw std::domain_error("poonen_quotients: zeta is not a primitive cube root of unity");
    auto X = [&](typename F::Elem x) {
        auto den = K.add(x, t2);
        if (K.is_zero(den)) throw std::domain_error("poonen_quotients: Weierstrass point at the tau pole");
        auto r = K.div(K.sub(x, t2), den);
        return K.mul(r, r);
    };
    PoonenQuotients<F> out;
    out.t = t;
    out.zeta = zeta;
    out.uvw = {X(K.one()), X(zeta), X(K.mul(zeta, zeta))};
    out.pair = split_to_pair_roots(K, out.uvw[0], out.uvw[1], out.uvw[2]);
    return out;
}

// ---------------------------------------------------------------------------
// Automorphism-family table for genus-2 normal forms
// ---------------------------------------------------------------------------

struct FamilyProfile {
    std::string normal_form;
    std::string reduced_aut;
    int aut_order;
    int moduli_dim;
    int packet_min;
    // #T = packet_min + (moduli_dim + delta) * aut_order for positive-dim
    // rows; fixed value for the rigid rows
    bool rigid;
};

inline const std::vector<FamilyProfile>& family_table() {
    static const std::vector<FamilyProfile> rows = {
        {"generic", "trivial", 2, 3, 6, false},
        {"x^6 + s x^4 + t x^2 + 1", "C2", 4, 2, 6, false},
        {"x^5 + t x^3 + x", "C2xC2", 8, 1, 6, false},
        {"x^6 + t x^3 + 1", "S3", 12, 1, 10, false},
        {"x^6 + 1", "D6", 24, 0, 10, true},
        {"x^5 + x", "S4", 48, 0, 22, true},
        {"x^5 + 1", "C5", 10, 0, 18, true},
    };
    return rows;
}

inline const FamilyProfile& family_profile(const std::string& tag) {
    for (auto& row : family_table())
        if (row.reduced_aut == tag || row.normal_form == tag) return row;
    throw std::domain_error("family_profile: unknown tag " + tag);
}

inline mpq_class family_expected_size(const FamilyProfile& row, const mpq_class& delta) {
    if (row.rigid) return row.packet_min;
    return mpq_class(row.packet_min) + (mpq_class(row.moduli_dim) + delta) * row.aut_order;
}

}  // namespace torsionx

#endif
