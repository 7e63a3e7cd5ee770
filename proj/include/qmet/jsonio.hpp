#pragma once

#include <json.hpp>

#include "qmet/group.hpp"
#include "qmet/minkowski.hpp"
#include "qmet/topology.hpp"

namespace qmet {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw input_error("expected a rational string");
    return parse_rational(j.get<std::string>());
}

inline Json magnitude_to_json(const Magnitude& m) {
    if (m.is_zero()) return "0";
    if (m.is_infinite()) return "inf";
    return Json{{"mantissa", to_string(m.mantissa())}, {"exponent", to_string(m.exponent())}};
}

inline Magnitude magnitude_from_json(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "0") return Magnitude::zero();
        if (s == "inf") return Magnitude::infinity();
        return Magnitude::of_rational(parse_rational(s));
    }
    if (j.is_number_integer()) return Magnitude::of_rational(Rational(j.get<long long>()));
    if (!j.is_object() || !j.contains("mantissa") || !j.contains("exponent"))
        throw input_error("bad magnitude encoding");
    return Magnitude::finite(rational_from_json(j.at("mantissa")),
                             rational_from_json(j.at("exponent")));
}

inline Json spec_to_json(const AbsoluteValueSpec& s) {
    if (s.is_trivial()) return Json{{"kind", "trivial"}};
    if (s.is_padic()) return Json{{"kind", "padic"}, {"p", s.prime()}};
    return Json{{"kind", "arch"}, {"a", to_string(s.power())}};
}

inline AbsoluteValueSpec spec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw input_error("bad absolute value spec");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "trivial") return AbsoluteValueSpec::trivial();
    if (kind == "padic") return AbsoluteValueSpec::padic(j.at("p").get<std::int64_t>());
    if (kind == "arch")
        return AbsoluteValueSpec::archimedean_power(
            j.contains("a") ? rational_from_json(j.at("a")) : Rational(1));
    throw input_error("unknown absolute value kind '" + kind + "'");
}

inline Json qexp_to_json(const QExponent& q) {
    return q.is_infinite() ? Json("inf") : rational_to_json(q.value());
}

inline QExponent qexp_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return QExponent::infinity();
    return QExponent::finite(rational_from_json(j));
}

inline Json matrix_to_json(const DistanceMatrix& d) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < d.size(); ++j) row.push_back(to_string(d.at(i, j)));
        entries.push_back(std::move(row));
    }
    return Json{{"points", d.points()}, {"exponent", to_string(d.exponent())},
                {"entries", std::move(entries)}};
}

// Upper triangle is authoritative: the lower triangle is mirrored from it.
inline DistanceMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("entries"))
        throw input_error("bad distance matrix encoding");
    const auto points = j.at("points").get<std::vector<std::string>>();
    const Rational exponent =
        j.contains("exponent") ? rational_from_json(j.at("exponent")) : Rational(1);
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != points.size())
        throw input_error("entry matrix is not n x n");
    const std::size_t n = points.size();
    std::vector<std::vector<Rational>> entries(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) throw input_error("entry matrix is not n x n");
        for (std::size_t k = i; k < n; ++k) {
            entries[i][k] = rational_from_json(rows[i][k]);
            entries[k][i] = entries[i][k];
        }
    }
    return DistanceMatrix(points, exponent, std::move(entries));
}

inline Json partition_to_json(const Partition& p, const std::vector<std::string>& labels) {
    Json blocks = Json::array();
    for (const auto& block : p.blocks()) {
        Json b = Json::array();
        for (std::size_t i : block) b.push_back(labels.at(i));
        blocks.push_back(std::move(b));
    }
    return Json{{"blocks", std::move(blocks)}};
}

inline Partition partition_from_json(const Json& j, const std::vector<std::string>& labels) {
    if (!j.is_object() || !j.contains("blocks")) throw input_error("bad partition encoding");
    auto index_of = [&](const std::string& s) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return i;
        throw input_error("unknown point label '" + s + "'");
    };
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& b : j.at("blocks")) {
        std::vector<std::size_t> block;
        for (const auto& s : b) block.push_back(index_of(s.get<std::string>()));
        blocks.push_back(std::move(block));
    }
    return Partition::from_blocks(labels.size(), std::move(blocks));
}

inline Json set_mask_to_json(SetMask m, const std::vector<std::string>& labels) {
    Json out = Json::array();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (m >> i & 1) out.push_back(labels[i]);
    return out;
}

inline SetMask set_mask_from_json(const Json& j, const std::vector<std::string>& labels) {
    SetMask m = 0;
    for (const auto& s : j) {
        const auto label = s.get<std::string>();
        bool found = false;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) {
                m |= SetMask(1) << i;
                found = true;
                break;
            }
        if (!found) throw input_error("unknown point label '" + label + "'");
    }
    return m;
}

inline Json topology_to_json(const FiniteTopology& t) {
    Json opens = Json::array();
    for (SetMask u : t.opens()) opens.push_back(set_mask_to_json(u, t.points()));
    return Json{{"points", t.points()}, {"opens", std::move(opens)}};
}

inline FiniteTopology topology_from_json(const Json& j, std::size_t max_points = kMaxTopologyPoints) {
    if (!j.is_object() || !j.contains("points") || !j.contains("opens"))
        throw input_error("bad topology encoding");
    const auto points = j.at("points").get<std::vector<std::string>>();
    std::vector<SetMask> opens;
    for (const auto& u : j.at("opens")) opens.push_back(set_mask_from_json(u, points));
    return FiniteTopology(points, std::move(opens), max_points);
}

inline Json group_to_json(const FiniteAbelianGroup& g) { return Json{{"orders", g.orders()}}; }

inline FiniteAbelianGroup group_from_json(const Json& j, std::size_t max_order = kMaxGroupOrder) {
    if (!j.is_object() || !j.contains("orders")) throw input_error("bad group encoding");
    return FiniteAbelianGroup(j.at("orders").get<std::vector<unsigned>>(), max_order);
}

inline Json element_to_json(const FiniteAbelianGroup& g, std::size_t idx) {
    return Json(g.tuple(idx));
}

inline std::size_t element_from_json(const FiniteAbelianGroup& g, const Json& j) {
    return g.index(j.get<std::vector<unsigned>>());
}

inline Json elem_set_to_json(const FiniteAbelianGroup& g, ElemSet s) {
    Json out = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (s >> i & 1) out.push_back(element_to_json(g, i));
    return out;
}

inline ElemSet elem_set_from_json(const FiniteAbelianGroup& g, const Json& j) {
    ElemSet s = 0;
    for (const auto& e : j) s |= ElemSet(1) << element_from_json(g, e);
    return s;
}

inline Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline Vec vec_from_json(const Json& j) {
    Vec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

inline Json rows_to_json(const std::vector<Vec>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back(vec_to_json(r));
    return out;
}

inline std::vector<Vec> rows_from_json(const Json& j) {
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    return rows;
}

inline Json seminorm_to_json(const SeminormRep& n) {
    Json j{{"spec", spec_to_json(n.scalar())}, {"dimension", n.space().dimension}};
    if (n.is_max()) {
        j["kind"] = "max";
        j["rows"] = rows_to_json(n.max_functionals().rows);
        Json weights = Json::array();
        for (const auto& w : n.max_functionals().weights) weights.push_back(magnitude_to_json(w));
        j["weights"] = std::move(weights);
    } else if (n.is_power_sum()) {
        j["kind"] = "power_sum";
        j["rows"] = rows_to_json(n.power_sum().rows);
        j["r"] = to_string(n.power_sum().r);
    } else if (n.is_trivial_norm()) {
        j["kind"] = "trivial";
    } else if (n.is_quotient()) {
        j["kind"] = "quotient";
        j["basis"] = rows_to_json(n.quotient().basis);
    } else {
        j["kind"] = "gauge";
        j["rows"] = rows_to_json(n.gauge().rows);
    }
    return j;
}

inline SeminormRep seminorm_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("spec") || !j.contains("dimension"))
        throw input_error("bad seminorm encoding");
    VectorSpaceQn space(j.at("dimension").get<std::size_t>(), spec_from_json(j.at("spec")));
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "max") {
        SeminormRep::MaxFunctionals mf;
        mf.rows = rows_from_json(j.at("rows"));
        if (j.contains("weights"))
            for (const auto& w : j.at("weights")) mf.weights.push_back(magnitude_from_json(w));
        return SeminormRep(std::move(space), std::move(mf));
    }
    if (kind == "power_sum")
        return SeminormRep(std::move(space), SeminormRep::PowerSum{rows_from_json(j.at("rows")),
                                                                   rational_from_json(j.at("r"))});
    if (kind == "trivial") return SeminormRep(std::move(space), SeminormRep::TrivialNorm{});
    if (kind == "quotient")
        return SeminormRep(std::move(space),
                           SeminormRep::QuotientBySubspace{rows_from_json(j.at("basis"))});
    if (kind == "gauge")
        return SeminormRep(std::move(space), SeminormRep::Gauge{rows_from_json(j.at("rows"))});
    throw input_error("unknown seminorm kind '" + kind + "'");
}

inline Json balanced_set_to_json(const BalancedSetRep& a) {
    Json j{{"spec", spec_to_json(a.scalar())}, {"dimension", a.space().dimension}};
    if (a.is_closed_ball()) {
        j["kind"] = "closed_ball";
        j["seminorm"] = seminorm_to_json(a.ball_seminorm());
    } else if (a.is_open_ball()) {
        j["kind"] = "open_ball";
        j["seminorm"] = seminorm_to_json(a.ball_seminorm());
    } else if (a.is_finite_generated()) {
        j["kind"] = "finite_generated";
        j["generators"] = rows_to_json(a.generators());
    } else {
        j["kind"] = "padic_lattice";
        j["basis"] = rows_to_json(a.lattice_basis());
    }
    return j;
}

inline BalancedSetRep balanced_set_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("spec") || !j.contains("dimension"))
        throw input_error("bad balanced set encoding");
    VectorSpaceQn space(j.at("dimension").get<std::size_t>(), spec_from_json(j.at("spec")));
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "closed_ball")
        return BalancedSetRep(std::move(space),
                              BalancedSetRep::ClosedUnitBall{seminorm_from_json(j.at("seminorm"))});
    if (kind == "open_ball")
        return BalancedSetRep(std::move(space),
                              BalancedSetRep::OpenUnitBall{seminorm_from_json(j.at("seminorm"))});
    if (kind == "finite_generated")
        return BalancedSetRep(std::move(space),
                              BalancedSetRep::FiniteGenerated{rows_from_json(j.at("generators"))});
    if (kind == "padic_lattice")
        return BalancedSetRep(std::move(space),
                              BalancedSetRep::PAdicLattice{rows_from_json(j.at("basis"))});
    throw input_error("unknown balanced set kind '" + kind + "'");
}

}  // namespace qmet
