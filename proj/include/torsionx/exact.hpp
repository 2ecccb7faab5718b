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

#ifndef TORSIONX_EXACT_HPP
#define TORSIONX_EXACT_HPP

#include <functional>
#include <optional>
#include <string>

#include "torsionx/covers.hpp"
#include "torsionx/factor.hpp"
#include "torsionx/genus2.hpp"
#include "torsionx/number_field.hpp"

namespace torsionx {

// Values over the working field: sum_i c_i s^i with s the field generator
// (plain rationals have a single coefficient).
struct ExactValue {
    std::vector<mpq_class> c;

    static ExactValue rational(const mpq_class& q) {
        ExactValue v;
        if (sgn(q) != 0) v.c.push_back(q);
        return v;
    }
};

// Q when `defining` is empty, otherwise Q[s]/(defining).
struct ExactField {
    QQPoly defining;
    bool is_rational() const { return defining.empty(); }
    int degree() const { return is_rational() ? 1 : (int)defining.size() - 1; }
    NumberField number_field() const {
        if (is_rational()) {
            RationalField Q;
            return NumberField(poly::from_ints(Q, {0, 1}));  // Q[s]/(s): s = 0
        }
        return NumberField(defining);
    }
};

struct ExactP1 {
    bool inf = false;
    ExactValue v;
};

struct ExactCover {
    ModelTag tag = ModelTag::even_quartic;
    std::vector<ExactValue> params;
    std::array<ExactP1, 4> branch;
    int origin = 0;
};

struct ExactPair {
    ExactField field;
    ExactCover c1, c2;
};

struct ExactInvolution {
    enum Form { neg_x, recip_lambda } form = neg_x;
    ExactValue lambda;        // x -> lambda / x
    bool lambda_is_cube = false;  // lambda^3 = given value (adjoin a cube root per prime)
};

struct ExactGenus2 {
    ExactField field;
    std::vector<ExactValue> sextic;  // coefficients c0..c6
    std::optional<ExactInvolution> involution;
};

// ---------------------------------------------------------------------------
// Reduction modulo a prime
// ---------------------------------------------------------------------------

struct Reduction {
    u64 p = 0;
    u64 root = 0;  // image of the field generator
};

class ExactContext {
   public:
    explicit ExactContext(const ExactField& f) : nf_(f.number_field()), rational_(f.is_rational()) {}

    const NumberField& nf() const { return nf_; }

    NumberField::Elem lift(const ExactValue& v) const {
        NumberField::Elem e;
        RationalField Q;
        for (auto& q : v.c) e.push_back(q);
        poly::normalize(Q, e);
        return poly::rem(Q, e, nf_.defining_poly());
    }

    // All roots of the defining polynomial mod p (canonical order); for Q the
    // generator reduces to 0.
    std::vector<u64> generator_images(const PrimeField& K, u64 seed) const {
        if (rational_) return {0};
        PolyVec<PrimeField> f;
        for (auto& c : nf_.defining_poly()) {
            auto r = reduce_rational(K, c);
            if (!r) return {};
            f.push_back(*r);
        }
        poly::normalize(K, f);
        if (poly::degree<PrimeField>(f) != nf_.degree()) return {};
        return fpoly::roots(K, f, seed);
    }

    std::optional<PrimeField::Elem> reduce(const PrimeField& K, PrimeField::Elem root, const ExactValue& v) const {
        return nf_.reduce_mod(K, root, lift(v));
    }

   private:
    NumberField nf_;
    bool rational_;
};

// Walks the seeded prime stream until `build` succeeds `count` times.
// `build` should throw (or return nullopt) on primes where the data does not
// reduce well; those primes are skipped.
template <class T>
std::vector<std::tuple<u64, u64, T>> collect_good_primes(
    const ExactContext& ctx, u64 seed, int count,
    const std::function<std::optional<T>(const PrimeField&, PrimeField::Elem, u64, u64)>& build, int budget = 4000) {
    std::vector<std::tuple<u64, u64, T>> out;
    PrimeStream ps(seed);
    for (int tries = 0; tries < budget && (int)out.size() < count; ++tries) {
        u64 p = ps.next();
        PrimeField K(p);
        auto roots = ctx.generator_images(K, derive_seed(seed, p));
        for (u64 r : roots) {
            std::optional<T> v;
            try {
                v = build(K, K.from_int(r), p, r);
            } catch (const std::exception&) {
                v = std::nullopt;
            }
            if (v) {
                out.emplace_back(p, r, std::move(*v));
                break;
            }
        }
    }
    if ((int)out.size() < count) throw std::runtime_error("good-prime search exhausted its budget");
    return out;
}

// Reduce a cover description to a concrete double cover mod p.
inline std::optional<DoubleCover<PrimeField>> reduce_cover(const ExactContext& ctx, const PrimeField& K,
                                                           PrimeField::Elem root, const ExactCover& c) {
    CurveModel<PrimeField> model;
    model.tag = c.tag;
    for (auto& v : c.params) {
        auto r = ctx.reduce(K, root, v);
        if (!r) return std::nullopt;
        model.params.push_back(*r);
    }
    std::array<P1<PrimeField>, 4> branch;
    for (int i = 0; i < 4; ++i) {
        if (c.branch[(size_t)i].inf) {
            branch[(size_t)i] = p1_inf(K);
        } else {
            auto r = ctx.reduce(K, root, c.branch[(size_t)i].v);
            if (!r) return std::nullopt;
            branch[(size_t)i] = p1_affine(K, *r);
        }
    }
    return make_cover(K, std::move(model), branch, c.origin);
}

inline std::optional<CoverPair<PrimeField>> reduce_pair(const ExactContext& ctx, const PrimeField& K,
                                                        PrimeField::Elem root, const ExactPair& pr) {
    auto a = reduce_cover(ctx, K, root, pr.c1);
    if (!a) return std::nullopt;
    auto b = reduce_cover(ctx, K, root, pr.c2);
    if (!b) return std::nullopt;
    return CoverPair<PrimeField>{*a, *b};
}

// Reduce a genus-2 description, resolving the involution (cube roots where
// declared) over F_p.
struct ReducedGenus2 {
    Genus2Curve<PrimeField> curve;
};

inline std::optional<ReducedGenus2> reduce_genus2(const ExactContext& ctx, const PrimeField& K,
                                                  PrimeField::Elem root, const ExactGenus2& g, u64 seed) {
    PolyVec<PrimeField> f;
    for (auto& v : g.sextic) {
        auto r = ctx.reduce(K, root, v);
        if (!r) return std::nullopt;
        f.push_back(*r);
    }
    poly::normalize(K, f);
    std::optional<Mobius<PrimeField>> inv;
    if (g.involution) {
        if (g.involution->form == ExactInvolution::neg_x) {
            inv = mobius_neg_x(K);
        } else {
            auto lam0 = ctx.reduce(K, root, g.involution->lambda);
            if (!lam0) return std::nullopt;
            PrimeField::Elem lam;
            if (g.involution->lambda_is_cube) {
                // lambda^3 = given value: need a cube root mod p
                PolyVec<PrimeField> cube = {K.neg(*lam0), K.zero(), K.zero(), K.one()};
                auto rs = fpoly::roots(K, cube, seed);
                if (rs.empty()) return std::nullopt;
                lam = K.from_int(rs[0]);
            } else {
                lam = *lam0;
            }
            inv = Mobius<PrimeField>{K.zero(), lam, K.one(), K.zero()};
        }
    }
    ReducedGenus2 out{make_genus2<PrimeField>(K, f, inv)};
    return out;
}

// ---------------------------------------------------------------------------
// Exact-field cover operations (descend / ascend / invariants) for the CLI
// ---------------------------------------------------------------------------

inline CurveModel<NumberField> lift_model(const ExactContext& ctx, const ExactCover& c) {
    CurveModel<NumberField> m;
    m.tag = c.tag;
    for (auto& v : c.params) m.params.push_back(ctx.lift(v));
    return m;
}

inline DoubleCover<NumberField> lift_cover(const ExactContext& ctx, const NumberField& NF, const ExactCover& c) {
    auto model = lift_model(ctx, c);
    std::array<P1<NumberField>, 4> branch;
    for (int i = 0; i < 4; ++i) {
        if (c.branch[(size_t)i].inf)
            branch[(size_t)i] = p1_inf(NF);
        else
            branch[(size_t)i] = p1_affine(NF, ctx.lift(c.branch[(size_t)i].v));
    }
    return make_cover(NF, std::move(model), branch, c.origin);
}

inline ExactValue pack_value(const NumberField::Elem& e) {
    ExactValue v;
    v.c = e;
    return v;
}

inline ExactCover pack_cover(const NumberField& NF, const DoubleCover<NumberField>& c) {
    ExactCover out;
    out.tag = c.model.tag;
    for (auto& p : c.model.params) out.params.push_back(pack_value(p));
    for (int i = 0; i < 4; ++i) {
        out.branch[(size_t)i].inf = p1_is_inf(NF, c.branch[(size_t)i]);
        if (!out.branch[(size_t)i].inf) out.branch[(size_t)i].v = pack_value(c.branch[(size_t)i].num);
    }
    out.origin = c.origin;
    return out;
}

}  // namespace torsionx

#endif
