#include "czhardy/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace czhardy {

std::string fraction(const Rational& r) {
    // arithmetic results are already canonical, but raw two-argument
    // constructions are not, and reports must have one spelling per value
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

Json trapezoid_json(const TreeTruncation& tree, const AdmissibleTrapezoid& R) {
    Json j;
    j["root_word"] = tree.word(R.root);
    j["h"] = R.h;
    j["degenerate"] = R.degenerate;
    return j;
}

Json czset_json(const TreeTruncation& tree, const CZSet& S) {
    Json j;
    j["root_word"] = tree.word(S.root);
    j["h"] = S.h;
    j["degenerate"] = S.degenerate;
    if (!S.degenerate) {
        j["band"] = Json::array({S.band_lo, S.band_hi});
        j["clipped"] = S.clipped;
    }
    return j;
}

Json function_json(const TreeTruncation& tree, const TreeFunction& f) {
    Json j = Json::object();
    for (std::uint32_t i = 0; i < f.size(); ++i)
        if (f.at_index(i) != 0) j[tree.word(Vertex{i})] = fraction(f.at_index(i));
    return j;
}

Json covering_json(const TreeTruncation& tree, const CoveringResult& cov) {
    Json j;
    j["threshold_pow"] = fraction(cov.threshold_pow);
    j["candidate_count"] = cov.candidate_count;
    j["selected"] = Json::array();
    for (const auto& R : cov.selected) j["selected"].push_back(trapezoid_json(tree, R));
    j["envelopes"] = Json::array();
    for (const auto& S : cov.envelopes) j["envelopes"].push_back(czset_json(tree, S));
    j["mu_level_set"] = fraction(cov.mu_level_set);
    j["mu_union_envelopes"] = fraction(cov.mu_union_envelopes);
    j["sum_mu_selected"] = fraction(cov.sum_mu_selected);
    j["sum_mu_envelopes"] = fraction(cov.sum_mu_envelopes);
    j["total_density"] = fraction(cov.total_density);
    j["certificates"] = {{"disjoint", cov.disjoint},
                         {"level_set_covered", cov.level_set_covered},
                         {"candidates_dominated", cov.candidates_dominated},
                         {"mass_bound", cov.mass_bound},
                         {"envelope_bound", cov.envelope_bound}};
    return j;
}

Json decomposition_json(const TreeTruncation& tree, const AtomicDecomposition& dec) {
    Json j;
    j["p"] = dec.p;
    j["alpha"] = fraction(dec.alpha);
    j["stages_run"] = dec.stages_run;
    j["sigma_pow"] = fraction(dec.sigma_pow);
    j["atoms"] = Json::array();
    for (const auto& term : dec.terms) {
        Json a;
        a["support"] = czset_json(tree, term.atom.support);
        a["coefficient"] = fraction(term.coefficient);
        a["stage"] = term.stage;
        a["whole_piece"] = term.whole_piece;
        a["values"] = function_json(tree, term.atom.values);
        j["atoms"].push_back(std::move(a));
    }
    j["pending"] = Json::array();
    for (const auto& piece : dec.pending) j["pending"].push_back(czset_json(tree, piece.support));
    j["certificates"] = Json::array();
    for (const auto& c : dec.certificates) {
        Json s;
        s["stage"] = c.stage;
        s["piece_count"] = c.piece_count;
        s["supports_ok"] = c.supports_ok;
        s["means_ok"] = c.means_ok;
        s["max_normalized_lp_pow"] = fraction(c.max_normalized_lp_pow);
        s["bound_iii_pow"] = fraction(c.bound_iii_pow);
        s["iii_holds"] = c.iii_holds;
        s["iv_holds"] = c.iv_holds;
        s["sum_mu_supports"] = fraction(c.sum_mu_supports);
        s["bound_v"] = fraction(c.bound_v);
        s["v_holds"] = c.v_holds;
        s["residual_bound_holds"] = c.residual_bound_holds;
        j["certificates"].push_back(std::move(s));
    }
    j["coefficient_sum"] = fraction(dec.coefficient_sum);
    j["residual_l1"] = fraction(dec.residual_l1);
    j["reconstruction_exact"] = dec.reconstruction_exact;
    j["atoms_valid"] = dec.atoms_valid;
    j["sup_bounds_hold"] = dec.sup_bounds_hold;
    j["certified"] = dec.certified();
    return j;
}

Json interpolation_json(const InterpolationReport& rep) {
    Json j;
    j["p"] = format_double(rep.p);
    j["p1"] = format_double(rep.p1);
    j["theta"] = format_double(rep.theta);
    j["points"] = Json::array();
    for (std::size_t i = 0; i < rep.t.size(); ++i)
        j["points"].push_back(
            {{"t", format_double(rep.t[i])}, {"k_bound", format_double(rep.k_bound[i])}});
    j["slope"] = format_double(rep.slope);
    j["sup_ratio"] = format_double(rep.sup_ratio);
    j["nondecreasing"] = rep.nondecreasing;
    j["concave"] = rep.concave;
    return j;
}

Json sweep_json(const TreeTruncation& tree, const HormanderSweep& sweep) {
    Json j;
    j["sup"] = format_double(sweep.sup);
    j["sets"] = sweep.sets;
    j["pairs"] = sweep.pairs;
    j["argmax"] = {{"root_word", tree.word(Vertex{sweep.root})},
                   {"h", sweep.h},
                   {"y_word", tree.word(Vertex{sweep.y})},
                   {"z_word", tree.word(Vertex{sweep.z})}};
    return j;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace czhardy
