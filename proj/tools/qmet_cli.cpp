// qmet: batch front-end for exact semimetric / absolute-value checks.
// Reads a JSON payload from --input (or stdin), writes one JSON report to
// stdout.  Exit codes: 0 all checks pass, 1 a property violated, 2 input
// or schema error, 3 inconclusive only.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmet/covering.hpp"
#include "qmet/jsonio.hpp"

namespace {

using namespace qmet;

struct Options {
    std::string input;
    bool pretty = false;
    bool no_timing = false;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::size_t max_points = 6;
    std::size_t max_group_order = kMaxGroupOrder;
};

enum ExitCode { kPass = 0, kViolation = 1, kInputError = 2, kInconclusive = 3 };

int severity(int code) {
    switch (code) {
        case kInputError: return 3;
        case kViolation: return 2;
        case kInconclusive: return 1;
        default: return 0;
    }
}

Json sorted_labels(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    return Json(labels);
}

Json triple_witnesses(const std::vector<TripleWitness>& ws, const std::vector<std::string>& points) {
    std::vector<TripleWitness> sorted = ws;
    std::sort(sorted.begin(), sorted.end());
    Json out = Json::array();
    for (const auto& w : sorted) out.push_back({points[w.x], points[w.y], points[w.z]});
    return out;
}

int verdict_exit(Verdict v) {
    if (v == Verdict::Fails) return kViolation;
    if (v == Verdict::Inconclusive) return kInconclusive;
    return kPass;
}

int cmd_validate_metric(const Json& payload, const Options& opt, Json& report) {
    const DistanceMatrix d = matrix_from_json(payload.at("matrix"));
    const QExponent q =
        payload.contains("q") ? qexp_from_json(payload.at("q")) : QExponent::finite(Rational(1));
    const TriangleReport tri = check_q_semimetric(d, q, opt.precision_bits);
    report["checks"] = {{"q_semimetric", to_string(tri.verdict)}};
    report["violations"] = triple_witnesses(tri.violations, d.points());
    report["inconclusive"] = triple_witnesses(tri.inconclusive, d.points());
    report["ultrametric"] = is_ultrametric(d);
    return verdict_exit(tri.verdict);
}

int cmd_padic_table(const Json& payload, const Options&, Json& report) {
    const auto p = payload.at("p").get<std::int64_t>();
    const AbsoluteValueSpec spec = AbsoluteValueSpec::padic(p);
    Json rows = Json::array();
    for (const auto& rj : payload.at("rationals")) {
        const Rational x = rational_from_json(rj);
        const auto v = padic_valuation(x, p);
        rows.push_back({{"x", to_string(x)},
                        {"valuation", v ? Json(*v) : Json("inf")},
                        {"abs", magnitude_to_json(abs_value(spec, x))}});
    }
    report["values"] = std::move(rows);
    return kPass;
}

int cmd_abs_value(const Json& payload, const Options&, Json& report) {
    const AbsoluteValueSpec spec = spec_from_json(payload.at("spec"));
    const auto op = payload.value("op", std::string("classify"));
    if (op == "classify") {
        const ArchimedeanReport arch = is_archimedean(spec);
        const DiscretenessReport disc = is_discrete(spec);
        report["archimedean"] = arch.archimedean;
        if (arch.witness) report["witness"] = to_string(*arch.witness);
        if (!arch.archimedean) report["checked_up_to"] = arch.checked_up_to;
        report["discrete"] = disc.discrete;
        if (disc.rho1) report["rho1"] = magnitude_to_json(*disc.rho1);
        return kPass;
    }
    if (op == "equivalent") {
        const AbsoluteValueSpec other = spec_from_json(payload.at("other"));
        const auto a = equivalent(spec, other);
        report["equivalent"] = a ? Json(to_string(*a)) : Json(nullptr);
        return kPass;
    }
    throw input_error("unknown abs-value op '" + op + "'");
}

int cmd_combine(const Json& payload, const Options& opt, Json& report) {
    std::vector<DistanceMatrix> ds;
    for (const auto& mj : payload.at("matrices")) ds.push_back(matrix_from_json(mj));
    const auto mode = payload.at("mode").get<std::string>();
    std::optional<DistanceMatrix> out;
    if (mode == "max") out = combine_max(ds);
    else if (mode == "sum") out = combine_sum(ds);
    else if (mode == "power") out = combine_power(ds, rational_from_json(payload.at("r")));
    else if (mode == "metrize") out = metrize(ds);
    else throw input_error("unknown combine mode '" + mode + "'");

    report["result"] = matrix_to_json(*out);
    // refinement identity: zero-partition of the combination equals the
    // common refinement of the inputs' zero-partitions
    std::vector<Partition> zeros;
    for (const auto& d : ds) zeros.push_back(zero_partition(d));
    const bool refinement_ok = zero_partition(*out) == common_refinement(zeros);
    Verdict verdict = refinement_ok ? Verdict::Holds : Verdict::Fails;
    report["checks"] = {{"zero_partition_refinement", to_string(verdict)}};
    if (mode == "sum") {
        const DistanceMatrix mx = combine_max(ds);
        bool sandwich = true;
        const Rational l(static_cast<long>(ds.size()));
        for (std::size_t i = 0; i < mx.size(); ++i)
            for (std::size_t j = 0; j < mx.size(); ++j)
                sandwich &= mx.at(i, j) <= out->at(i, j) && out->at(i, j) <= l * mx.at(i, j);
        report["checks"]["sandwich"] = to_string(sandwich ? Verdict::Holds : Verdict::Fails);
        if (!sandwich) verdict = Verdict::Fails;
    }
    if (mode == "metrize" || mode == "power") {
        // the combination stays a q-semimetric at the input regime
        const QExponent q = QExponent::finite(ds.front().exponent());
        const Verdict qv = check_q_semimetric(*out, q, opt.precision_bits).verdict;
        report["checks"]["q_semimetric"] = to_string(qv);
        verdict = combine_verdicts(verdict, qv);
    }
    return verdict_exit(verdict);
}

int cmd_cover(const Json& payload, const Options&, Json& report) {
    const DistanceMatrix d = matrix_from_json(payload.at("matrix"));
    std::vector<std::size_t> subset;
    if (payload.contains("subset")) {
        for (const auto& s : payload.at("subset")) subset.push_back(d.index_of(s.get<std::string>()));
    } else {
        for (std::size_t i = 0; i < d.size(); ++i) subset.push_back(i);
    }
    const BallKind kind = payload.value("kind", std::string("closed")) == "open" ? BallKind::Open
                                                                                 : BallKind::Closed;
    const Rational radius = rational_from_json(payload.at("radius"));
    const CoverResult cover = covering_number(d, subset, radius, kind);
    std::vector<std::string> centers;
    for (std::size_t c : cover.centers) centers.push_back(d.points()[c]);
    report["count"] = cover.count;
    report["centers"] = sorted_labels(std::move(centers));
    report["exact"] = cover.exact;
    report["diameter"] = magnitude_to_json(diameter(d, subset));
    return kPass;
}

int cmd_topology(const Json& payload, const Options& opt, Json& report) {
    const auto source = payload.value("source", std::string("opens"));
    std::optional<FiniteTopology> t;
    if (source == "opens") {
        t = topology_from_json(payload.at("topology"), opt.max_points);
    } else if (source == "semimetrics") {
        std::vector<DistanceMatrix> ds;
        for (const auto& mj : payload.at("matrices")) ds.push_back(matrix_from_json(mj));
        if (!ds.empty() && ds.front().size() > opt.max_points)
            throw resource_error("too many points (raise --max-points)");
        t = topology_from_semimetrics(ds);
    } else {
        throw input_error("unknown topology source '" + source + "'");
    }
    const SeparationAxioms ax = separation_axioms(*t);
    report["separation"] = {{"t0", ax.t0},
                            {"t1", ax.t1},
                            {"hausdorff", ax.hausdorff},
                            {"regular_strict", ax.regular_strict},
                            {"normal_strict", ax.normal_strict}};
    report["dimension_zero"] = is_dimension_zero(*t);
    report["totally_separated"] = is_totally_separated(*t);
    Json clopens = Json::array();
    for (SetMask c : clopen_sets(*t)) clopens.push_back(set_mask_to_json(c, t->points()));
    report["clopen_sets"] = std::move(clopens);
    report["tau0"] = topology_to_json(tau0(*t));
    report["components"] = partition_to_json(connected_components(*t), t->points())["blocks"];
    if (payload.contains("embedding")) {
        std::vector<SetMask> ws;
        for (const auto& w : payload.at("embedding")) ws.push_back(set_mask_from_json(w, t->points()));
        const EmbeddingReport emb = product_embedding(*t, ws);
        report["embedding"] = {{"injective", emb.injective},
                               {"subbase_homeomorphic", emb.homeomorphic},
                               {"bits", emb.bits}};
    }
    return kPass;
}

int cmd_group(const Json& payload, const Options& opt, Json& report) {
    const FiniteAbelianGroup g = group_from_json(payload.at("group"), opt.max_group_order);
    const auto action = payload.at("action").get<std::string>();
    if (action == "subgroup") {
        const GeneratedSubgroup sub =
            subgroup_generated(g, elem_set_from_json(g, payload.at("generators")));
        report["subgroup"] = elem_set_to_json(g, sub.set);
        report["symmetrized"] = sub.symmetrized;
        report["zero_added"] = sub.zero_added;
        return kPass;
    }
    if (action == "semimetric") {
        const ElemSet h = elem_set_from_json(g, payload.at("subgroup"));
        const DistanceMatrix d = subgroup_semimetric(g, h);
        report["matrix"] = matrix_to_json(d);
        report["translation_invariant"] = is_translation_invariant(g, d);
        report["ultrametric"] = is_ultrametric(d);
        report["cosets"] = partition_to_json(coset_partition(g, h), g.labels())["blocks"];
        return kPass;
    }
    if (action == "weak-connectedness") {
        std::vector<ElemSet> family;
        for (const auto& b : payload.at("family")) family.push_back(elem_set_from_json(g, b));
        const SubgroupFamilyTopology sft = topology_from_subgroup_family(g, family);
        report["nondegenerate"] = sft.nondegenerate;
        report["intersection"] = elem_set_to_json(g, sft.intersection);
        Json opens = Json::array();
        for (ElemSet h : open_subgroups(g, sft.topology)) opens.push_back(elem_set_to_json(g, h));
        report["open_subgroups"] = std::move(opens);
        report["weakly_connected"] = weakly_connected(g, sft.topology);
        return kPass;
    }
    if (action == "u-separated") {
        const ElemSet b = elem_set_from_json(g, payload.at("B"));
        const ElemSet c = elem_set_from_json(g, payload.at("C"));
        const ElemSet u = elem_set_from_json(g, payload.at("U"));
        report["separated"] = u_separated(g, b, c, u);
        if (payload.value("check_invariance", false)) {
            const SeparationInvarianceReport inv = separated_implies_subgroup_invariance(g, b, u);
            report["invariance"] = {{"holds", inv.holds},
                                    {"generated_subgroup", elem_set_to_json(g, inv.generated_subgroup)}};
            if (!inv.holds) return kViolation;
        }
        return kPass;
    }
    if (action == "quotient") {
        const QuotientGroup q = quotient_group(g, elem_set_from_json(g, payload.at("subgroup")));
        report["orders"] = q.orders;
        Json reps = Json::array();
        for (std::size_t r : q.reps) reps.push_back(element_to_json(g, r));
        report["reps"] = std::move(reps);
        return kPass;
    }
    if (action == "balls") {
        const DistanceMatrix d = matrix_from_json(payload.at("matrix"));
        const BallSubgroupReport balls = balls_at_zero_are_subgroups(g, d);
        report["passed"] = balls.passed;
        report["failures"] = balls.failures;
        return balls.passed ? kPass : kViolation;
    }
    throw input_error("unknown group action '" + action + "'");
}

int cmd_minkowski(const Json& payload, const Options&, Json& report) {
    const BalancedSetRep a = balanced_set_from_json(payload.at("set"));
    const bool allow_zero = payload.value("allow_zero_scalar", true);
    const AbsorbingReport abs = is_absorbing(a);
    report["absorbing"] = abs.absorbing;
    report["absorbing_reason"] = abs.reason;
    if (abs.witness) report["absorbing_witness"] = vec_to_json(*abs.witness);
    Json values = Json::array();
    if (payload.contains("vectors"))
        for (const auto& vj : payload.at("vectors")) {
            const Vec v = vec_from_json(vj);
            values.push_back({{"v", vec_to_json(v)},
                              {"value", magnitude_to_json(minkowski_functional(a, v, allow_zero))}});
        }
    report["values"] = std::move(values);
    int code = kPass;
    if (payload.contains("recovery")) {
        const SeminormRep n = seminorm_from_json(payload.at("recovery"));
        std::vector<Vec> samples;
        for (const auto& vj : payload.at("vectors")) samples.push_back(vec_from_json(vj));
        const RecoveryReport rec = theorem_unit_ball_recovery(n, samples);
        report["recovery"] = {{"applicable", rec.applicable},
                              {"passed", rec.passed},
                              {"value_group_valued", rec.value_group_valued},
                              {"infimum_attained", rec.infimum_attained},
                              {"failures", rec.failures}};
        if (!rec.passed) code = kViolation;
    }
    return code;
}

int dispatch(const std::string& name, const Json& payload, const Options& opt, Json& report) {
    if (name == "validate-metric") return cmd_validate_metric(payload, opt, report);
    if (name == "padic-table") return cmd_padic_table(payload, opt, report);
    if (name == "abs-value") return cmd_abs_value(payload, opt, report);
    if (name == "combine") return cmd_combine(payload, opt, report);
    if (name == "cover") return cmd_cover(payload, opt, report);
    if (name == "topology") return cmd_topology(payload, opt, report);
    if (name == "group") return cmd_group(payload, opt, report);
    if (name == "minkowski") return cmd_minkowski(payload, opt, report);
    throw input_error("unknown command '" + name + "'");
}

Json run_one(const std::string& name, const Json& payload, const Options& opt, int& code) {
    Json report;
    report["command"] = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        code = dispatch(name, payload, opt, report);
    } catch (const std::exception& e) {
        report = Json{{"command", name}, {"error", e.what()}};
        code = kInputError;
    }
    if (!opt.no_timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    report["exit"] = code;
    return report;
}

Json read_payload(const Options& opt) {
    std::string text;
    if (opt.input.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(opt.input);
        if (!in) throw input_error("cannot open input file '" + opt.input + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return Json::parse(text);
}

void emit(const Json& j, const Options& opt) {
    std::cout << (opt.pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact semimetrics, absolute values and Minkowski functionals"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("-i,--input", opt.input, "JSON payload file (default: stdin)");
    app.add_flag("--pretty", opt.pretty, "indent the JSON report");
    app.add_flag("--no-timing", opt.no_timing, "omit the timing field (golden tests)");
    app.add_option("--precision-bits", opt.precision_bits, "interval fallback precision");
    app.add_option("--max-points", opt.max_points, "point cap for ingested topologies");
    app.add_option("--max-group-order", opt.max_group_order, "group order cap");

    static const char* kCommands[] = {"validate-metric", "padic-table", "abs-value", "combine",
                                      "cover",           "topology",    "group",     "minkowski"};
    for (const char* name : kCommands)
        app.add_subcommand(name)->fallthrough();
    auto* batch = app.add_subcommand("batch", "run an array of {command, payload} objects");
    batch->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        const Json payload = read_payload(opt);
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "batch") {
            if (!payload.is_array()) throw qmet::input_error("batch payload must be an array");
            Json reports = Json::array();
            int worst = kPass;
            for (const auto& item : payload) {
                int code = kPass;
                reports.push_back(run_one(item.at("command").get<std::string>(),
                                          item.value("payload", Json::object()), opt, code));
                if (severity(code) > severity(worst)) worst = code;
            }
            emit(reports, opt);
            return worst;
        }
        int code = kPass;
        emit(run_one(sub, payload, opt, code), opt);
        return code;
    } catch (const std::exception& e) {
        emit(Json{{"error", e.what()}}, opt);
        return kInputError;
    }
}
