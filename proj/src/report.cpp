#include "dsg/report.hpp"

#include "dsg/knot_dsl.hpp"

namespace dsg {

namespace {

using nlohmann::ordered_json;

ordered_json factors_json(const FiniteAbelianGroup& g) {
    ordered_json arr = ordered_json::array();
    for (const BigInt& d : g.invariant_factors()) arr.push_back(d.str());
    return arr;
}

ordered_json witness_json(const CGWitness& w) {
    ordered_json j;
    if (w.prime == 0) {
        j["characters"] = "trivial";
        return j;
    }
    j["prime"] = w.prime.str();
    j["modulus_1"] = w.modulus1.str();
    j["modulus_2"] = w.modulus2.str();
    ordered_json j1 = ordered_json::array(), j2 = ordered_json::array();
    for (const BigInt& v : w.j1) j1.push_back(v.str());
    for (const BigInt& v : w.j2) j2.push_back(v.str());
    j["j_1"] = j1;
    j["j_2"] = j2;
    return j;
}

// Worst-case |Hom(G, G_1 + G_2)| over quotient pairs is bounded by
// prod gcd(d_i, d_j); early exit keeps this cheap for huge groups.
bool hom_budget_exceeded(const FiniteAbelianGroup& g, long long max_homs) {
    const auto& f = g.invariant_factors();
    BigInt bound(1);
    for (const BigInt& a : f)
        for (const BigInt& b : f) {
            bound *= boost::multiprecision::gcd(a, b);
            if (bound > max_homs) return true;
        }
    return false;
}

ordered_json certificate_json(const AdmissibilityCertificate& c) {
    ordered_json j;
    j["n_1"] = c.n1;
    j["n_2"] = c.n2;
    auto vecs = [](const std::vector<std::vector<BigInt>>& side) {
        ordered_json rows = ordered_json::array();
        for (const auto& v : side) {
            ordered_json row = ordered_json::array();
            for (const BigInt& x : v) row.push_back(x.str());
            rows.push_back(row);
        }
        return rows;
    };
    j["relations_1"] = vecs(c.side1);
    j["relations_2"] = vecs(c.side2);
    return j;
}

}  // namespace

ordered_json run_bound(const KnotSpec& input, const ReportOptions& options) {
    KnotSpec spec = input;
    if (options.ribbon_flag) spec.ribbon = true;

    BranchedCover cover = branched_double_cover(spec);
    KnotInvariants inv = knot_invariants(spec);
    GenusBounds gb = genus_bound_report(spec, inv);

    std::vector<std::string> notes;
    if (!cover.manifold)
        notes.push_back("spec contains Seifert-matrix terms: cover known only as a group, "
                        "Casson-Gordon refinements unavailable");
    if (spec.ribbon.value_or(false))
        notes.push_back("ribbon asserted by input: slice-genus facts suppressed (g4 = 0)");

    // Bound engine routing: full enumeration when the character searches fit
    // the caps; the closed form for pure 9/4 powers otherwise. A partial
    // enumeration is never reported as a bound.
    ThetaOutcome theta;
    bool enumerable = !hom_budget_exceeded(cover.h1, options.caps.max_homs);
    if (enumerable) {
        theta = theta_lower(cover, inv.signature, options.caps);
    }
    if (!enumerable || !theta.complete) {
        if (spec.is_pure_power_of(9, 4)) {
            theta = ThetaOutcome{};
            theta.value = main_theorem_bound(static_cast<long long>(spec.summands.size()));
            theta.ceiling = theta.value.ceil();
            theta.method = "closed-form";
            theta.complete = true;
            theta.manifold_available = true;
            notes.push_back("enumeration caps exceeded: closed-form evaluator engaged for a "
                            "pure 2b(9/4) power");
        } else if (enumerable) {
            notes.push_back("candidate pair enumeration exceeded caps: theta bound unavailable");
        } else {
            theta = ThetaOutcome{};
            notes.push_back("character search space exceeds --max-homs: theta bound unavailable");
        }
    }

    ordered_json report;
    report["knot"] = print_knot(spec);
    report["status"] = theta.complete ? "complete" : "incomplete";
    report["h1_cover"] = factors_json(inv.h1_cover);
    report["signature"] = inv.signature;
    report["determinant"] = inv.determinant.str();
    report["alexander_degree"] = inv.alexander_degree;
    report["superslice_lower"] = gb.superslice_lower;
    report["superslice_top_upper"] = gb.superslice_top_upper;
    if (gb.superslice_top_exact) report["superslice_top_exact"] = *gb.superslice_top_exact;
    if (gb.double_slice_top_upper) report["double_slice_top_upper"] = *gb.double_slice_top_upper;
    report["categories"] = {{"superslice_lower", "smooth and topological"},
                            {"superslice_top_upper", "topological"},
                            {"double_slice_top_upper", "topological"},
                            {"theta_lower", "smooth and topological"}};

    ordered_json theta_json;
    if (theta.complete) {
        theta_json["value"] = theta.value.to_fraction_string();
        theta_json["ceiling"] = theta.ceiling.str();
        theta_json["method"] = theta.method;
        theta_json["annotation"] = "lower bound for the double slice genus";
        if (theta.argmin) {
            const PairEvaluation& ev = theta.pair_table[*theta.argmin];
            ordered_json pair;
            pair["g_1"] = factors_json(ev.g1);
            pair["g_2"] = factors_json(ev.g2);
            pair["theta_1_counting"] = ev.theta1_count.to_fraction_string();
            if (ev.cg_value) pair["theta_3"] = ev.cg_value->to_fraction_string();
            if (ev.cg_capped) pair["theta_3"] = "capped";
            theta_json["argmin_pair"] = pair;
        }
        if (theta.witness) theta_json["witness"] = witness_json(*theta.witness);
    } else {
        theta_json["value"] = nullptr;
        theta_json["method"] = "incomplete";
    }
    report["theta_lower"] = theta_json;

    if (options.verbose && theta.complete && !theta.pair_table.empty()) {
        ordered_json pairs = ordered_json::array();
        bool searchable = cover.h1.order() <= 81 && theta.pair_table.size() <= 16;
        for (const PairEvaluation& ev : theta.pair_table) {
            ordered_json row;
            row["g_1"] = factors_json(ev.g1);
            row["g_2"] = factors_json(ev.g2);
            row["theta_1_counting"] = ev.theta1_count.to_fraction_string();
            if (ev.cg_value)
                row[cover.manifold ? "theta_3" : "theta_2"] = ev.cg_value->to_fraction_string();
            if (ev.cg_capped) row["cg"] = "capped";
            row["combined"] = ev.combined.to_fraction_string();
            if (searchable) {
                ThetaCaps search_caps = options.caps;
                search_caps.max_n = std::min(search_caps.max_n, 2);
                BoundInterval bi = theta1_search(cover.h1, ev.g1, ev.g2, search_caps);
                ordered_json interval;
                interval["lower"] = bi.lower.to_fraction_string();
                interval["upper"] = bi.upper ? ordered_json(bi.upper->to_fraction_string())
                                             : ordered_json(nullptr);
                if (bi.search_capped) interval["capped"] = true;
                if (bi.certificate) interval["certificate"] = certificate_json(*bi.certificate);
                row["theta_1_interval"] = interval;
            }
            pairs.push_back(row);
        }
        report["theta1_intervals"] = pairs;
    }

    report["notes"] = notes;
    return report;
}

int report_exit_code(const ordered_json& report) {
    return report.at("status").get<std::string>() == "complete" ? 0 : 2;
}

}  // namespace dsg
