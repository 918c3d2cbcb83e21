#pragma once

#include <string>

#include "json.hpp"

#include "projjet/reduce.hpp"
#include "projjet/scanner.hpp"

namespace projjet {

using nlohmann::json;

// --- coefficient encoding -------------------------------------------------
// Exact rationals are fraction strings ("num/den" or "num"); irrational surd
// values become {"a": .., "b": .., "d": .., "approx": ..}; floats are decimal
// strings.

inline json coeff_to_json(const Rational& r) { return r.to_string(); }

inline json coeff_to_json(const Surd& s) {
    if (s.is_rational()) return s.as_rational().to_string();
    return json{{"a", s.rat_part().to_string()},
                {"b", s.surd_coeff().to_string()},
                {"d", s.radicand().to_string()},
                {"approx", s.to_double()}};
}

inline json coeff_to_json(double x) { return scalar_traits<double>::to_string(x); }

template <class K>
K coeff_from_json(const json& j);

template <>
inline Rational coeff_from_json<Rational>(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw InputError("exact mode expects rational coefficient strings");
    return Rational::from_string(j.get<std::string>());
}

template <>
inline Surd coeff_from_json<Surd>(const json& j) {
    if (j.is_object())
        return Surd(Rational::from_string(j.at("a").get<std::string>()),
                    Rational::from_string(j.at("b").get<std::string>()),
                    Rational::from_string(j.at("d").get<std::string>()));
    return Surd(coeff_from_json<Rational>(j));
}

template <>
inline double coeff_from_json<double>(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw InputError("cannot parse coefficient");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    return std::stod(s);
}

// --- jets ------------------------------------------------------------------

template <class K>
json jet_terms_to_json(const Jet2<K>& f) {
    json terms = json::array();
    for (int d = 0; d <= f.order(); ++d)
        for (int i = d; i >= 0; --i) {
            const K& c = f.at(i, d - i);
            if (!k_is_zero(c)) terms.push_back(json::array({i, d - i, coeff_to_json(c)}));
        }
    return terms;
}

template <class K>
Jet2<K> jet_terms_from_json(const json& terms, int order) {
    Jet2<K> f(order);
    if (!terms.is_array()) throw InputError("jet terms must be an array");
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3) throw InputError("jet term must be [i, j, coeff]");
        int i = t[0].get<int>(), j = t[1].get<int>();
        if (!k_is_zero(f.at(i, j))) throw InputError("duplicate exponent pair in jet");
        f.set(i, j, coeff_from_json<K>(t[2]));
    }
    return f;
}

template <class K>
json to_json(const MongeJet<K>& f) {
    return json{{"schema", 1},
                {"order", f.order()},
                {"f1", jet_terms_to_json(f.f1())},
                {"f2", jet_terms_to_json(f.f2())}};
}

template <class K>
MongeJet<K> monge_from_json(const json& j, int order_override = -1) {
    if (!j.is_object() || !j.contains("f1") || !j.contains("f2"))
        throw InputError("Monge jet JSON needs f1 and f2");
    int order = order_override > 0 ? order_override
                                   : (j.contains("order") ? j.at("order").get<int>() : 4);
    return MongeJet<K>(jet_terms_from_json<K>(j.at("f1"), order),
                       jet_terms_from_json<K>(j.at("f2"), order));
}

template <class K>
json to_json(const JetMapN<K>& m) {
    json comps = json::array();
    for (int i = 0; i < m.size(); ++i) comps.push_back(jet_terms_to_json(m[i]));
    return json{{"schema", 1}, {"order", m.order()}, {"components", comps}};
}

template <class K>
JetMapN<K> jetmap_from_json(const json& j, int order_override = -1) {
    if (!j.is_object() || !j.contains("components"))
        throw InputError("jet map JSON needs components");
    int order = order_override > 0 ? order_override
                                   : (j.contains("order") ? j.at("order").get<int>() : 3);
    std::vector<Jet2<K>> comps;
    for (const auto& c : j.at("components")) comps.push_back(jet_terms_from_json<K>(c, order));
    return JetMapN<K>(std::move(comps));
}

// --- group elements ----------------------------------------------------------

template <class K>
json to_json(const ProjectiveMapG5<K>& psi) {
    auto row = [](const auto& arr) {
        json a = json::array();
        for (const auto& c : arr) a.push_back(coeff_to_json(c));
        return a;
    };
    return json{{"schema", 1}, {"q1", row(psi.q1)}, {"q2", row(psi.q2)},
                {"q3", row(psi.q3)}, {"q4", row(psi.q4)}, {"p", row(psi.p)}};
}

template <class K>
ProjectiveMapG5<K> g5_from_json(const json& j) {
    ProjectiveMapG5<K> psi;
    auto fill = [&j](const char* key, auto& arr) {
        const json& a = j.at(key);
        if (!a.is_array() || a.size() != arr.size())
            throw InputError(std::string("transform row ") + key + " has the wrong arity");
        for (std::size_t i = 0; i < arr.size(); ++i) arr[i] = coeff_from_json<K>(a[i]);
    };
    fill("q1", psi.q1);
    fill("q2", psi.q2);
    fill("q3", psi.q3);
    fill("q4", psi.q4);
    fill("p", psi.p);
    psi.require_valid();
    return psi;
}

// --- view points -------------------------------------------------------------

template <class K>
json to_json(const ViewPoint<K>& p) {
    return json::array({coeff_to_json(p.a), coeff_to_json(p.b), coeff_to_json(p.c),
                        coeff_to_json(p.d), coeff_to_json(p.e)});
}

template <class K>
ViewPoint<K> viewpoint_from_json(const json& j) {
    if (!j.is_array() || j.size() != 5)
        throw InputError("view point must be [a, b, c, d, e] with e in {0, 1}");
    ViewPoint<K> p{coeff_from_json<K>(j[0]), coeff_from_json<K>(j[1]), coeff_from_json<K>(j[2]),
                   coeff_from_json<K>(j[3]), coeff_from_json<K>(j[4])};
    if (!k_is_zero(p.e) && !k_is_zero(p.e - K(1)))
        throw InputError("view point last coordinate must be 0 or 1");
    if (p.is_zero_vector()) throw InputError("view point is the zero vector");
    return p;
}

// --- surfaces ----------------------------------------------------------------

template <class K>
json to_json(const SurfacePatch<K>& s) {
    json comps = json::array();
    for (const auto& c : s.components) comps.push_back(jet_terms_to_json(c));
    return json{{"schema", 1},
                {"degree", s.degree()},
                {"components", comps},
                {"domain", json::array({json::array({coeff_to_json(s.u_min), coeff_to_json(s.u_max)}),
                                        json::array({coeff_to_json(s.v_min), coeff_to_json(s.v_max)})})}};
}

template <class K>
SurfacePatch<K> surface_from_json(const json& j) {
    if (!j.is_object() || !j.contains("components") || j.at("components").size() != 4)
        throw InputError("surface JSON needs exactly 4 components");
    int degree = j.contains("degree") ? j.at("degree").get<int>() : 4;
    std::array<Jet2<K>, 4> comps{Jet2<K>(degree), Jet2<K>(degree), Jet2<K>(degree),
                                 Jet2<K>(degree)};
    for (int i = 0; i < 4; ++i)
        comps[i] = jet_terms_from_json<K>(j.at("components")[i], degree);
    K u0(-1), u1(1), v0(-1), v1(1);
    if (j.contains("domain")) {
        const json& d = j.at("domain");
        u0 = coeff_from_json<K>(d.at(0).at(0));
        u1 = coeff_from_json<K>(d.at(0).at(1));
        v0 = coeff_from_json<K>(d.at(1).at(0));
        v1 = coeff_from_json<K>(d.at(1).at(1));
    }
    return SurfacePatch<K>{comps, u0, u1, v0, v1};
}

// --- reports -----------------------------------------------------------------

template <class K>
json modulus_to_json(const ModulusValue<K>& m) {
    json j{{"approx", m.approx}};
    if (m.exact) j["exact"] = coeff_to_json(*m.exact);
    return j;
}

inline json to_json(const std::vector<MondType>& v) {
    json a = json::array();
    for (auto t : v) a.push_back(to_string(t));
    return a;
}

template <class K>
json to_json(const StratumClassification<K>& cls) {
    return json{{"schema", 1},
                {"stratum", to_string(cls.label)},
                {"codim", codimension(cls.label)},
                {"proj", to_json(expected_projections(cls.label))},
                {"two_jet", to_string(cls.two_jet)},
                {"two_jet_codim", codimension(cls.two_jet)},
                {"swapped", cls.swapped},
                {"reduction_hypothesis_ok", cls.reduction_hypothesis_ok}};
}

template <class K>
json to_json(const NormalFormReport<K>& rep) {
    json moduli = json::object();
    for (const auto& [k, m] : rep.moduli) moduli[k] = modulus_to_json(m);
    json residuals = json::object();
    for (const auto& [k, m] : rep.residuals) residuals[k] = modulus_to_json(m);
    json scaling{{"applies", rep.has_scaling},
                 {"exact", rep.scaling_exact},
                 {"scale_y", rep.scale_y}};
    if (rep.scale_y_exact) scaling["scale_y_exact"] = coeff_to_json(*rep.scale_y_exact);
    json out{{"schema", 1},
             {"stratum", to_string(rep.stratum)},
             {"codim", rep.codim},
             {"proj", to_json(rep.expected_proj)},
             {"swapped", rep.swapped},
             {"exact_form", to_json(rep.exact_form)},
             {"transform", to_json(rep.transform)},
             {"scaling", scaling},
             {"final_form_numeric", to_json(rep.final_numeric)},
             {"moduli", moduli},
             {"residuals", residuals},
             {"notes", rep.notes}};
    if (rep.final_exact) out["final_form"] = to_json(*rep.final_exact);
    if (rep.transform_final) out["transform_final"] = to_json(*rep.transform_final);
    return out;
}

template <class K>
json to_json(const AsymptoticDirections<K>& ad) {
    json dirs = json::array();
    for (std::size_t i = 0; i < ad.directions.size(); ++i) {
        using P = promoted_t<K>;
        const Direction<P>& d = ad.directions[i];
        dirs.push_back(json{{"u1", coeff_to_json(d.u1)},
                            {"u2", coeff_to_json(d.u2)},
                            {"approx", json::array({ad.as_float[i].first, ad.as_float[i].second})}});
    }
    return json{{"schema", 1},
                {"all", ad.all},
                {"count", ad.all ? json("all") : json(ad.count())},
                {"delta", json::array({coeff_to_json(ad.delta.c20), coeff_to_json(ad.delta.c11),
                                       coeff_to_json(ad.delta.c02)})},
                {"disc", coeff_to_json(ad.disc)},
                {"directions", dirs}};
}

template <class K>
json to_json(const ProjectionColumnReport<K>& rep) {
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back(json{{"point", f.point}, {"label", to_string(f.label)}});
    return json{{"schema", 1},
                {"stratum", to_string(rep.stratum)},
                {"expected", to_json(rep.expected)},
                {"observed", to_json(rep.observed)},
                {"contained", rep.contained},
                {"complete", rep.complete},
                {"samples", rep.samples},
                {"failures", fails}};
}

inline json to_json(const ScanSummary& s) {
    json recs = json::array();
    for (const auto& r : s.records) {
        json rec{{"u", r.u_exact},
                 {"v", r.v_exact},
                 {"ok", r.ok},
                 {"flags", r.flags}};
        if (r.ok) {
            rec["two_jet_class"] = to_string(r.two_jet);
            rec["stratum"] = to_string(r.stratum);
            rec["codim"] = r.codim;
            rec["delta_disc_sign"] = r.delta_disc_sign;
            if (!r.predicates.empty()) {
                rec["predicates"] = r.predicates;
                rec["predicates_exact"] = r.predicates_exact;
            }
            if (!r.moduli.empty()) rec["moduli"] = r.moduli;
        }
        recs.push_back(std::move(rec));
    }
    return json{{"schema", 1},
                {"histogram", s.histogram},
                {"codim0_fraction", s.codim0_fraction},
                {"failures", s.failures},
                {"records", recs}};
}

} // namespace projjet
