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

#ifndef TORSIONX_COVERS_HPP
#define TORSIONX_COVERS_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>

#include "torsionx/curve_models.hpp"
#include "torsionx/ec.hpp"
#include "torsionx/mobius.hpp"

namespace torsionx {

// Elliptic double cover of P^1: model, its four branch x-values, and the
// marked origin branch point (the group origin of the curve).
template <class F>
struct DoubleCover {
    CurveModel<F> model;
    std::array<P1<F>, 4> branch;
    int origin = 0;
};

template <class F>
struct CoverPair {
    DoubleCover<F> c1, c2;
};

template <class F>
DoubleCover<F> make_cover(const F& K, CurveModel<F> model, std::array<P1<F>, 4> branch, int origin) {
    if (!model_is_elliptic(model.tag)) throw std::domain_error("make_cover: genus-2 shape");
    model_validate(K, model);
    auto q = model_rhs(K, model);
    int d = poly::degree<F>(q);
    int ninf = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j)
            if (p1_eq(K, branch[(size_t)i], branch[(size_t)j])) throw std::domain_error("make_cover: repeated branch value");
        if (p1_is_inf(K, branch[(size_t)i])) {
            ++ninf;
            if (d != 3) throw std::domain_error("make_cover: infinity branch on quartic model");
        } else if (!K.is_zero(poly::eval(K, q, branch[(size_t)i].num))) {
            throw std::domain_error("make_cover: branch value is not a root of the model");
        }
    }
    if (d == 3 && ninf != 1) throw std::domain_error("make_cover: cubic model needs infinity among branch values");
    if (origin < 0 || origin > 3) throw std::domain_error("make_cover: origin index out of range");
    return {std::move(model), std::move(branch), origin};
}

template <class F>
DoubleCover<F> cover_from_model(const F& K, CurveModel<F> model, const P1<F>& origin) {
    auto q = model_rhs(K, model);
    int d = poly::degree<F>(q);
    std::array<P1<F>, 4> br;
    size_t idx = 0;
    // models used programmatically have split branch data by construction
    switch (model.tag) {
        case ModelTag::cubic:
            br = {p1_affine(K, model.params[0]), p1_affine(K, model.params[1]), p1_affine(K, model.params[2]),
                  p1_inf(K)};
            break;
        case ModelTag::cubic_with0:
            br = {p1_affine(K, K.zero()), p1_affine(K, model.params[0]), p1_affine(K, model.params[1]),
                  p1_affine(K, model.params[2])};
            break;
        default:
            throw std::domain_error("cover_from_model: branch data must be given explicitly for this shape");
    }
    (void)d;
    int oi = -1;
    for (int i = 0; i < 4; ++i)
        if (p1_eq(K, br[(size_t)i], origin)) oi = i;
    if (oi < 0) throw std::domain_error("cover_from_model: origin is not a branch value");
    (void)idx;
    return make_cover(K, std::move(model), br, oi);
}

// ---------------------------------------------------------------------------
// Klein four-group G(pi) in PGL(2)
// ---------------------------------------------------------------------------

// The three nontrivial elements are the involutions realizing the three
// pairings of the branch quadruple; together with the identity they form
// the translation image of E[2] on P^1.
template <class F>
std::array<Mobius<F>, 4> klein_group(const F& K, const DoubleCover<F>& cov) {
    static const int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::array<Mobius<F>, 4> out;
    out[0] = mobius_identity(K);
    for (int k = 0; k < 3; ++k) {
        auto i = pairings[k][0], j = pairings[k][1], l = pairings[k][2], m = pairings[k][3];
        const auto& B = cov.branch;
        auto alpha = mobius_three_points<F>(K, {B[(size_t)i], B[(size_t)j], B[(size_t)l]},
                                            {B[(size_t)j], B[(size_t)i], B[(size_t)m]});
        // the fourth condition and the involution property come for free;
        // assert both anyway
        if (!p1_eq(K, mobius_apply(K, alpha, B[(size_t)m]), B[(size_t)l]))
            throw std::logic_error("klein_group: pairing involution failed");
        auto sq = mobius_compose(K, alpha, alpha);
        if (!mobius_eq_proj(K, sq, mobius_identity(K))) throw std::logic_error("klein_group: not an involution");
        out[(size_t)k + 1] = alpha;
    }
    return out;
}

struct PairInvariant {
    int common_two_torsion = 0;  // a
    int common_klein = 0;        // b
    bool excluded = false;       // identical branch sets (isomorphic curves)
};

template <class F>
PairInvariant invariant_pair(const F& K, const CoverPair<F>& pair) {
    PairInvariant inv;
    for (const auto& p : pair.c1.branch)
        for (const auto& q : pair.c2.branch)
            if (p1_eq(K, p, q)) ++inv.common_two_torsion;
    if (inv.common_two_torsion == 4) {
        inv.excluded = true;
        return inv;
    }
    auto g1 = klein_group(K, pair.c1);
    auto g2 = klein_group(K, pair.c2);
    for (const auto& m1 : g1)
        for (const auto& m2 : g2)
            if (mobius_eq_proj(K, m1, m2)) ++inv.common_klein;
    return inv;
}

// ---------------------------------------------------------------------------
// Bounded torsion x-sets
// ---------------------------------------------------------------------------

// Squarefree affine root polynomial plus an explicit marker for infinity.
template <class F>
struct XSet {
    PolyVec<F> affine;  // monic squarefree
    bool inf = false;
};

template <class F>
int xset_size(const XSet<F>& s) {
    return (int)s.affine.size() - (s.affine.empty() ? 0 : 1) + (s.inf ? 1 : 0);
}

// Per-cover torsion bookkeeping: one normal form, one division-polynomial
// table, level sets cached per order bound.
template <class F>
class CoverTorsion {
   public:
    CoverTorsion(const F& K, const DoubleCover<F>& cov, int nmax)
        : K_(&K), cov_(&cov), norm_(to_short_weierstrass(K, cov.model, cov.branch[(size_t)cov.origin])), nmax_(nmax) {
        ftab_ = divpoly_table(K, norm_.E, std::max(nmax, 4));
    }

    const SwNormalization<F>& normalization() const { return norm_; }

    // Torsion x-polynomial at one level: roots are model x-coordinates of the
    // points of order dividing n other than the origin; the flag records a
    // point of order dividing n over x = infinity (the origin itself counts
    // when it sits there).
    std::pair<PolyVec<F>, bool> raw_level(int n) {
        const F& K = *K_;
        auto T = torsion_x_div(K, norm_.E, ftab_, n);
        auto [Q, lost] = mobius_pullback_roots(K, T, norm_.mu);
        bool origin_at_inf = p1_is_inf(K, cov_->branch[(size_t)cov_->origin]);
        bool inf_flag = origin_at_inf ? true : lost;
        return {Q, inf_flag};
    }

    // pi(E[n]) as a subset of P^1 (origin included).
    const XSet<F>& level_set(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        const F& K = *K_;
        auto [Q, inf_flag] = raw_level(n);
        XSet<F> s;
        s.inf = inf_flag;
        const auto& ob = cov_->branch[(size_t)cov_->origin];
        if (!p1_is_inf(K, ob)) {
            PolyVec<F> lin = {K.neg(ob.num), K.one()};
            poly::normalize(K, lin);
            Q = poly::mul(K, Q, lin);
        }
        s.affine = poly::monic(K, Q);
        return cache_.emplace(n, std::move(s)).first->second;
    }

   private:
    const F* K_;
    const DoubleCover<F>* cov_;
    SwNormalization<F> norm_;
    int nmax_;
    std::vector<PolyVec<F>> ftab_;
    std::map<int, XSet<F>> cache_;
};

// I_{<=N}(pi_1, pi_2): x-values carrying points of order dividing N on both
// sides, with per-element minimal orders on each side.
template <class F>
struct CommonXElem {
    PolyVec<F> factor;  // irreducible over the working field (or linear)
    bool is_inf = false;
    u64 order1 = 0, order2 = 0;
};

template <class F>
struct CommonXSet {
    XSet<F> points;
    int count = 0;  // distinct P^1 points over the algebraic closure
};

template <class F>
CommonXSet<F> common_x_set(const F& K, CoverTorsion<F>& t1, CoverTorsion<F>& t2, int N) {
    CommonXSet<F> out;
    const auto& s1 = t1.level_set(N);
    const auto& s2 = t2.level_set(N);
    out.points.affine = poly::gcd(K, s1.affine, s2.affine);
    out.points.inf = s1.inf && s2.inf;
    out.count = xset_size(out.points);
    return out;
}

inline std::vector<int> divisors_of(int n) {
    std::vector<int> ds;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

// ---------------------------------------------------------------------------
// Descent along a common involution and its converse
// ---------------------------------------------------------------------------

template <class F>
struct FixedPoints {
    bool needs_extension = false;
    // when needs_extension: the quadratic c x^2 + (d-a) x - b whose roots are
    // the fixed points
    PolyVec<F> quadratic;
    P1<F> f1, f2;
};

template <class F>
FixedPoints<F> mobius_fixed_points(const F& K, const Mobius<F>& m) {
    FixedPoints<F> out;
    if (K.is_zero(m.c)) {
        // a/d = -1 for a nontrivial involution: fixed points {b/(d-a), inf}
        auto den = K.sub(m.d, m.a);
        if (K.is_zero(den)) throw std::domain_error("fixed_points: identity map");
        out.f1 = p1_affine(K, K.div(m.b, den));
        out.f2 = p1_inf(K);
        return out;
    }
    // c x^2 + (d - a) x - b = 0
    auto B = K.sub(m.d, m.a);
    auto disc = K.add(K.mul(B, B), K.mul(K.from_int((i64)4), K.mul(m.c, m.b)));
    auto r = field_sqrt(K, disc);
    if (!r) {
        out.needs_extension = true;
        out.quadratic = {K.neg(m.b), B, m.c};
        poly::normalize(K, out.quadratic);
        return out;
    }
    auto twoc = K.add(m.c, m.c);
    out.f1 = p1_affine(K, K.div(K.sub(*r, B), twoc));
    out.f2 = p1_affine(K, K.div(K.sub(K.neg(*r), B), twoc));
    if (p1_eq(K, out.f1, out.f2)) throw std::domain_error("fixed_points: coincident fixed points");
    return out;
}

template <class F>
struct DescendResult {
    bool needs_extension = false;
    PolyVec<F> extension_poly;  // fixed-point quadratic when not solvable
    CoverPair<F> pair;          // descended pair, covers Cubic(0, s_j, t_j)
    Mobius<F> nu;               // conjugates alpha to x -> -x
    std::array<typename F::Elem, 2> s, t;  // normalized branch squares per side
};

// Descent: conjugate alpha to x -> -x via nu, write each side as
// y^2 = (x^2 - s_j)(x^2 - t_j) and quotient by the translation, giving
// y^2 = x(x - s_j)(x - t_j) with beta(x) = x^2 in nu-coordinates.
template <class F>
DescendResult<F> descend_pair(const F& K, const CoverPair<F>& pair, const Mobius<F>& alpha) {
    if (mobius_eq_proj(K, alpha, mobius_identity(K))) throw std::domain_error("descend_pair: alpha is the identity");
    for (const auto* cov : {&pair.c1, &pair.c2}) {
        auto g = klein_group(K, *cov);
        bool found = false;
        for (const auto& m : g)
            if (mobius_eq_proj(K, m, alpha)) found = true;
        if (!found) throw std::domain_error("descend_pair: alpha is not common to both Klein groups");
    }
    DescendResult<F> out;
    auto fp = mobius_fixed_points(K, alpha);
    if (fp.needs_extension) {
        out.needs_extension = true;
        out.extension_poly = fp.quadratic;
        return out;
    }
    // nu: f1 -> 0, f2 -> inf
    Mobius<F> nu;
    if (p1_is_inf(K, fp.f2)) {
        nu = {K.one(), K.neg(fp.f1.num), K.zero(), K.one()};
    } else if (p1_is_inf(K, fp.f1)) {
        nu = {K.zero(), K.one(), K.one(), K.neg(fp.f2.num)};
    } else {
        nu = {K.one(), K.neg(fp.f1.num), K.one(), K.neg(fp.f2.num)};
    }
    auto conj = mobius_compose(K, nu, mobius_compose(K, alpha, mobius_inverse(K, nu)));
    if (!mobius_eq_proj(K, conj, mobius_neg_x(K))) throw std::logic_error("descend_pair: conjugation failed");

    auto build = [&](const DoubleCover<F>& cov, int side) -> DoubleCover<F> {
        std::array<P1<F>, 4> nb;
        for (int i = 0; i < 4; ++i) nb[(size_t)i] = mobius_apply(K, nu, cov.branch[(size_t)i]);
        // branch set is {beta1, -beta1, beta2, -beta2}; collect squares
        std::vector<typename F::Elem> sq;
        for (auto& q : nb) {
            if (p1_is_inf(K, q)) throw std::logic_error("descend_pair: branch at infinity after normalization");
            auto v = K.mul(q.num, q.num);
            bool seen = false;
            for (auto& w : sq)
                if (K.eq(v, w)) seen = true;
            if (!seen) sq.push_back(v);
        }
        if (sq.size() != 2) throw std::domain_error("descend_pair: branch values not symmetric under alpha");
        out.s[(size_t)side] = sq[0];
        out.t[(size_t)side] = sq[1];
        CurveModel<F> model{ModelTag::cubic, {K.zero(), sq[0], sq[1]}};
        auto ox = mobius_apply(K, nu, cov.branch[(size_t)cov.origin]);
        auto oval = K.mul(ox.num, ox.num);
        return cover_from_model(K, model, p1_affine(K, oval));
    };
    out.pair = {build(pair.c1, 0), build(pair.c2, 1)};
    out.nu = nu;
    return out;
}

template <class F>
struct AscendResult {
    bool needs_extension = false;
    PolyVec<F> extension_poly;
    CoverPair<F> pair;
    Mobius<F> nu;  // moves the chosen common branch values to 0 and infinity
};

// Ascent (the converse): move two common branch values to {0, inf}; the ascended
// covers have branch values the square roots of the two remaining branch
// values per side.  All sign choices are Klein-equivalent; sqrt_choice picks
// one for reproducibility.
template <class F>
AscendResult<F> ascend_pair(const F& K, const CoverPair<F>& pair, const P1<F>& common_a, const P1<F>& common_b,
                            int sqrt_choice = 0) {
    AscendResult<F> out;
    auto is_branch = [&](const DoubleCover<F>& c, const P1<F>& v) {
        for (auto& b : c.branch)
            if (p1_eq(K, b, v)) return true;
        return false;
    };
    for (const auto* cov : {&pair.c1, &pair.c2})
        if (!is_branch(*cov, common_a) || !is_branch(*cov, common_b))
            throw std::domain_error("ascend_pair: chosen values are not common branch values");
    if (p1_eq(K, common_a, common_b)) throw std::domain_error("ascend_pair: chosen values must differ");
    // nu: common_a -> 0, common_b -> inf
    Mobius<F> nu;
    if (p1_is_inf(K, common_b)) {
        nu = {K.one(), K.neg(common_a.num), K.zero(), K.one()};
    } else if (p1_is_inf(K, common_a)) {
        nu = {K.zero(), K.one(), K.one(), K.neg(common_b.num)};
    } else {
        nu = {K.one(), K.neg(common_a.num), K.one(), K.neg(common_b.num)};
    }
    auto build = [&](const DoubleCover<F>& cov, int side) -> std::optional<DoubleCover<F>> {
        std::vector<typename F::Elem> rest;
        for (auto& b : cov.branch) {
            auto img = mobius_apply(K, nu, b);
            if (p1_is_inf(K, img) || K.is_zero(img.num)) continue;
            rest.push_back(img.num);
        }
        if (rest.size() != 2) throw std::domain_error("ascend_pair: expected exactly two residual branch values");
        std::array<typename F::Elem, 2> roots;
        for (int i = 0; i < 2; ++i) {
            auto r = field_sqrt(K, rest[(size_t)i]);
            if (!r) {
                out.needs_extension = true;
                out.extension_poly = {K.neg(rest[(size_t)i]), K.zero(), K.one()};
                return std::nullopt;
            }
            bool flip = ((sqrt_choice >> (2 * side + i)) & 1) != 0;
            roots[(size_t)i] = flip ? K.neg(*r) : *r;
        }
        CurveModel<F> model{ModelTag::even_quartic, {rest[0], rest[1]}};
        std::array<P1<F>, 4> br = {p1_affine(K, roots[0]), p1_affine(K, K.neg(roots[0])), p1_affine(K, roots[1]),
                                   p1_affine(K, K.neg(roots[1]))};
        return make_cover(K, std::move(model), br, 0);
    };
    auto c1 = build(pair.c1, 0);
    if (!c1) return out;
    auto c2 = build(pair.c2, 1);
    if (!c2) return out;
    out.pair = {*c1, *c2};
    out.nu = nu;
    return out;
}

}  // namespace torsionx

#endif
