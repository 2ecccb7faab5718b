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

#ifndef TORSIONX_IO_HPP
#define TORSIONX_IO_HPP

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "torsionx/exact.hpp"
#include "torsionx/reports.hpp"
#include "torsionx/search.hpp"

namespace torsionx {
namespace io {

using nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::pair<int, int> line_col(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [l, c] = line_col(text, e.byte);
        std::ostringstream os;
        os << what << ": parse error at line " << l << ", column " << c << ": " << e.what();
        throw ParseError(os.str());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------
// descriptions
// ---------------------------------------------------------------------------

inline ExactValue value_from_json(const json& j) {
    ExactValue v;
    if (j.is_string()) {
        v = ExactValue::rational(parse_rational(j.get<std::string>()));
        return v;
    }
    if (!j.is_array()) throw ParseError("value: expected string or array of rational strings");
    for (auto& e : j) {
        if (!e.is_string()) throw ParseError("value: coefficients must be rational strings");
        v.c.push_back(parse_rational(e.get<std::string>()));
    }
    while (!v.c.empty() && sgn(v.c.back()) == 0) v.c.pop_back();
    return v;
}

inline json value_to_json(const ExactValue& v) {
    json a = json::array();
    for (auto& q : v.c) a.push_back(rational_to_string(q));
    return a;
}

inline ExactField field_from_json(const json& j) {
    ExactField f;
    if (!j.is_object() || !j.contains("type")) throw ParseError("field: expected {type: ...}");
    auto type = j.at("type").get<std::string>();
    if (type == "rational") return f;
    if (type != "number_field") throw ParseError("field: unknown type " + type);
    if (!j.contains("poly")) throw ParseError("field: number_field needs a defining poly");
    RationalField Q;
    for (auto& e : j.at("poly")) f.defining.push_back(parse_rational(e.get<std::string>()));
    poly::normalize(Q, f.defining);
    if (poly::degree<RationalField>(f.defining) < 1 || f.defining.back() != 1)
        throw ParseError("field: defining polynomial must be monic of degree >= 1");
    return f;
}

inline json field_to_json(const ExactField& f) {
    if (f.is_rational()) return json{{"type", "rational"}};
    json a = json::array();
    for (auto& q : f.defining) a.push_back(rational_to_string(q));
    return json{{"type", "number_field"}, {"poly", a}};
}

inline ModelTag tag_from_string(const std::string& s) {
    if (s == "short_w") return ModelTag::short_w;
    if (s == "cubic") return ModelTag::cubic;
    if (s == "cubic_with0") return ModelTag::cubic_with0;
    if (s == "even_quartic") return ModelTag::even_quartic;
    if (s == "even_sextic") return ModelTag::even_sextic;
    if (s == "s3_sextic") return ModelTag::s3_sextic;
    if (s == "poonen_ct") return ModelTag::poonen_ct;
    if (s == "sextic") return ModelTag::sextic;
    throw ParseError("unknown model tag: " + s);
}

inline std::string tag_to_string(ModelTag t) {
    switch (t) {
        case ModelTag::short_w: return "short_w";
        case ModelTag::cubic: return "cubic";
        case ModelTag::cubic_with0: return "cubic_with0";
        case ModelTag::even_quartic: return "even_quartic";
        case ModelTag::even_sextic: return "even_sextic";
        case ModelTag::s3_sextic: return "s3_sextic";
        case ModelTag::poonen_ct: return "poonen_ct";
        case ModelTag::sextic: return "sextic";
    }
    return "?";
}

inline ExactP1 p1_from_json(const json& j) {
    ExactP1 p;
    if (j.is_string() && j.get<std::string>() == "inf") {
        p.inf = true;
        return p;
    }
    p.v = value_from_json(j);
    return p;
}

inline json p1_to_json(const ExactP1& p) {
    if (p.inf) return json("inf");
    return value_to_json(p.v);
}

inline ExactCover cover_from_json(const json& j) {
    ExactCover c;
    c.tag = tag_from_string(j.at("model").at("tag").get<std::string>());
    for (auto& e : j.at("model").at("params")) c.params.push_back(value_from_json(e));
    auto& br = j.at("branch");
    if (!br.is_array() || br.size() != 4) throw ParseError("cover: need exactly four branch values");
    for (int i = 0; i < 4; ++i) c.branch[(size_t)i] = p1_from_json(br[(size_t)i]);
    c.origin = j.at("origin").get<int>();
    if (c.origin < 0 || c.origin > 3) throw ParseError("cover: origin index out of range");
    return c;
}

inline json cover_to_json(const ExactCover& c) {
    json params = json::array();
    for (auto& p : c.params) params.push_back(value_to_json(p));
    json branch = json::array();
    for (auto& b : c.branch) branch.push_back(p1_to_json(b));
    return json{{"model", {{"tag", tag_to_string(c.tag)}, {"params", params}}},
                {"branch", branch},
                {"origin", c.origin}};
}

inline ExactPair pair_from_json(const json& j) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != "torsionx.pair.v1")
        throw ParseError("pair file: missing or unsupported schema (want torsionx.pair.v1)");
    ExactPair p;
    p.field = field_from_json(j.at("field"));
    auto& cs = j.at("covers");
    if (!cs.is_array() || cs.size() != 2) throw ParseError("pair file: need exactly two covers");
    p.c1 = cover_from_json(cs[0]);
    p.c2 = cover_from_json(cs[1]);
    return p;
}

inline json pair_to_json(const ExactPair& p) {
    return json{{"schema", "torsionx.pair.v1"},
                {"field", field_to_json(p.field)},
                {"covers", json::array({cover_to_json(p.c1), cover_to_json(p.c2)})}};
}

inline ExactGenus2 curve_from_json(const json& j) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != "torsionx.curve.v1")
        throw ParseError("curve file: missing or unsupported schema (want torsionx.curve.v1)");
    ExactGenus2 g;
    g.field = field_from_json(j.at("field"));
    for (auto& e : j.at("sextic")) g.sextic.push_back(value_from_json(e));
    if (j.contains("involution")) {
        ExactInvolution inv;
        auto form = j.at("involution").at("form").get<std::string>();
        if (form == "neg_x") {
            inv.form = ExactInvolution::neg_x;
        } else if (form == "recip_lambda") {
            inv.form = ExactInvolution::recip_lambda;
            inv.lambda = value_from_json(j.at("involution").at("lambda"));
            inv.lambda_is_cube = j.at("involution").value("cube", false);
        } else {
            throw ParseError("curve file: unknown involution form " + form);
        }
        g.involution = inv;
    }
    return g;
}

inline json curve_to_json(const ExactGenus2& g) {
    json sex = json::array();
    for (auto& v : g.sextic) sex.push_back(value_to_json(v));
    json out{{"schema", "torsionx.curve.v1"}, {"field", field_to_json(g.field)}, {"sextic", sex}};
    if (g.involution) {
        if (g.involution->form == ExactInvolution::neg_x) {
            out["involution"] = json{{"form", "neg_x"}};
        } else {
            out["involution"] = json{{"form", "recip_lambda"},
                                     {"lambda", value_to_json(g.involution->lambda)},
                                     {"cube", g.involution->lambda_is_cube}};
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

inline json intersect_report_to_json(const IntersectReport& r) {
    json ev = json::array();
    for (auto& e : r.evidence) {
        json elems = json::array();
        for (auto& el : e.elems) {
            json f = json::array();
            for (auto c : el.factor) f.push_back(std::to_string(c));
            elems.push_back(json{{"inf", el.is_inf},
                                 {"degree", el.degree},
                                 {"factor", f},
                                 {"order1", el.order1},
                                 {"order2", el.order2}});
        }
        ev.push_back(json{{"p", std::to_string(e.p)}, {"root", std::to_string(e.root)}, {"count", e.count},
                          {"elements", elems}});
    }
    json prof = json::array();
    for (auto& pe : r.profile) prof.push_back(json::array({pe[0], pe[1], pe[2]}));
    return json{{"type", "torsion_x_report"}, {"bound", r.bound},     {"count", r.count},
                {"consistent", r.consistent}, {"profile", prof},      {"evidence", ev},
                {"status", r.status}};
}

inline json packet_report_to_json(const PacketReport& r) {
    json ev = json::array();
    for (auto& e : r.evidence) {
        json pa = json::array();
        for (auto c : e.packet_affine) pa.push_back(std::to_string(c));
        ev.push_back(json{{"p", std::to_string(e.p)},
                          {"root", std::to_string(e.root)},
                          {"iprime", e.iprime},
                          {"iprime_at_zero_inf", e.iprime_at_zero_inf},
                          {"formula_value", e.formula_value},
                          {"point_count", e.point_count},
                          {"has_infinity", e.has_inf},
                          {"packet_affine_x", pa}});
    }
    return json{{"type", "packet_report"},   {"bound", r.bound},   {"size", r.size}, {"iprime", r.iprime},
                {"consistent", r.consistent}, {"evidence", ev},     {"status", r.status}};
}

inline json search_report_to_json(const search::SearchReport& r) {
    json scans = json::array();
    for (auto& s : r.scans) {
        PrimeField K(s.p);
        json pairs = json::array();
        for (auto& pr : s.pairs) {
            json yd = json::array();
            for (auto d : pr.yun_degrees) yd.push_back(d);
            pairs.push_back(json{{"m", pr.m},
                                 {"n", pr.n},
                                 {"identically_zero", pr.identically_zero},
                                 {"degree", pr.degree},
                                 {"squarefree_degree", (int)pr.sf.size() - 1},
                                 {"yun_degrees", yd}});
        }
        json facs = json::array();
        for (auto& cf : s.factors) {
            json co = json::array();
            for (auto c : cf.factor) co.push_back(std::to_string(K.to_int(c)));
            json wit = json::array();
            for (auto [m, n] : cf.witnesses) wit.push_back(json::array({m, n}));
            facs.push_back(json{{"factor", co}, {"witnesses", wit}});
        }
        json excl = json::array();
        for (auto c : s.excluded_locus) excl.push_back(std::to_string(K.to_int(c)));
        scans.push_back(json{{"p", std::to_string(s.p)},
                             {"coset", std::to_string(s.coset)},
                             {"restarts", s.restarts},
                             {"pairs", pairs},
                             {"factors", facs},
                             {"excluded_locus", excl}});
    }
    json lifted = json::array();
    for (auto& lf : r.factors) {
        json wit = json::array();
        for (auto [m, n] : lf.witnesses) wit.push_back(json::array({m, n}));
        json co = json::array();
        for (auto& c : lf.coeffs) co.push_back(c);
        lifted.push_back(json{{"degree", lf.degree},
                              {"witnesses", wit},
                              {"lifted", lf.lifted},
                              {"coeffs", co},
                              {"stabilized_after", lf.stabilized_after}});
    }
    json primes = json::array();
    for (auto p : r.primes) primes.push_back(std::to_string(p));
    return json{{"type", "search_report"},
                {"family", r.config.family},
                {"m_max", r.config.m_max},
                {"n_max", r.config.n_max},
                {"level_mode", r.config.level_mode == search::LevelMode::exact_order ? "exact" : "dividing"},
                {"primes", primes},
                {"scans", scans},
                {"factors", lifted},
                {"consistent", r.consistent},
                {"note", r.note}};
}

// lightweight structural validation of emitted reports
inline void validate_run_report(const json& j) {
    for (auto k : {"schema", "command", "seed", "payload", "status"})
        if (!j.contains(k)) throw ParseError(std::string("run report missing key: ") + k);
    if (j.at("schema").get<std::string>() != "torsionx.run_report.v1") throw ParseError("run report: bad schema tag");
    auto& p = j.at("payload");
    if (!p.contains("type")) throw ParseError("run report payload missing type");
    auto t = p.at("type").get<std::string>();
    if (t == "torsion_x_report") {
        for (auto k : {"bound", "count", "consistent", "profile", "evidence"})
            if (!p.contains(k)) throw ParseError(std::string("torsion_x_report missing ") + k);
    } else if (t == "packet_report") {
        for (auto k : {"bound", "size", "iprime", "consistent", "evidence"})
            if (!p.contains(k)) throw ParseError(std::string("packet_report missing ") + k);
    } else if (t == "search_report") {
        for (auto k : {"family", "m_max", "n_max", "primes", "scans", "factors"})
            if (!p.contains(k)) throw ParseError(std::string("search_report missing ") + k);
    } else if (t == "invariant_report" || t == "descend_report" || t == "ascend_report") {
        // free-form payloads carry their own fields
    } else {
        throw ParseError("run report: unknown payload type " + t);
    }
}

}  // namespace io
}  // namespace torsionx

#endif
