#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "czhardy/interpolation.hpp"
#include "czhardy/operators.hpp"
#include "czhardy/parallel.hpp"
#include "czhardy/random.hpp"
#include "czhardy/report.hpp"

namespace {

using namespace czhardy;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct TreeFlags {
    long q = 2;
    long depth = 4;
    long apex_level = 0;
    bool apex_set = false;

    TreeTruncation build() const {
        TreeConfig cfg{.q = q, .depth = depth};
        if (apex_set) cfg.apex_level = apex_level;
        return TreeTruncation(cfg);
    }
};

void add_tree_flags(CLI::App* cmd, TreeFlags& t) {
    cmd->add_option("--q", t.q, "Branching number (each vertex has q children)")
        ->check(CLI::Range(2l, 10l));
    cmd->add_option("--depth", t.depth, "Truncation depth below the apex")
        ->check(CLI::Range(1l, 30l));
    auto* o = cmd->add_option("--apex-level", t.apex_level,
                              "Level of the apex (default: depth, bottom level 0)");
    cmd->callback([&t, o]() { t.apex_set = o->count() > 0; });
}

Rational parse_rational(const std::string& name, const std::string& text) {
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
        text.find('E') != std::string::npos) {
        try {
            return rational_from_double(std::stod(text));
        } catch (const std::exception&) {
            throw CLI::ValidationError(name, "not a number: " + text);
        }
    }
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw CLI::ValidationError(name, "not a rational: " + text);
    v.canonicalize();
    return Rational(v);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

Json config_json(const TreeTruncation& tree) {
    Json j;
    j["q"] = tree.q();
    j["depth"] = tree.depth();
    j["apex_level"] = tree.apex_level();
    return j;
}

// ---- geometry-sweep ----------------------------------------------------

int run_geometry_sweep(const TreeFlags& tf, std::uint64_t pairs, std::uint64_t seed,
                       const std::string& output, const std::string& csv_path) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    auto traps = all_admissible_trapezoids(tree);

    Json report;
    report["config"] = config_json(tree);
    report["trapezoids"] = traps.size();

    std::uint64_t violations = 0;
    Json witness;

    for (const auto& R : traps) {
        auto pair = envelope_measure_check(mu, R, ClipPolicy::clip);
        bool diam_ok = true;
        if (!R.degenerate) diam_ok = diameter_bound_check(tree, envelope(tree, R, ClipPolicy::clip));
        if (!pair.holds() || !diam_ok) {
            if (violations == 0) {
                witness = trapezoid_json(tree, R);
                witness["check"] = pair.holds() ? "diameter" : "envelope_measure";
                witness["mu_envelope"] = fraction(pair.lhs);
                witness["four_mu_R"] = fraction(pair.rhs);
            }
            ++violations;
        }
    }

    std::uint64_t checked = 0, hypothesis = 0;
    auto check_pair = [&](const AdmissibleTrapezoid& a, const AdmissibleTrapezoid& b) {
        ++checked;
        if (intersects(tree, a, b) && width(mu, a) >= width(mu, b)) ++hypothesis;
        if (!inclusion_lemma_check(tree, mu, a, b)) {
            if (violations == 0) {
                witness["check"] = "inclusion";
                witness["outer"] = trapezoid_json(tree, a);
                witness["inner"] = trapezoid_json(tree, b);
            }
            ++violations;
        }
    };
    if (pairs == 0) {
        for (const auto& a : traps)
            for (const auto& b : traps) check_pair(a, b);
        report["pair_mode"] = "exhaustive";
    } else {
        Rng rng(seed);
        for (std::uint64_t i = 0; i < pairs; ++i)
            check_pair(traps[rng.below(traps.size())], traps[rng.below(traps.size())]);
        report["pair_mode"] = "random";
        report["seed"] = seed;
    }
    report["pairs_checked"] = checked;
    report["pairs_with_hypothesis"] = hypothesis;

    // Dilate measure ratios mu(S*) / mu(S~) over every constructible CZ set.
    Rational sup(0);
    Vertex sup_root{0};
    long sup_h = 0;
    std::vector<Rational> by_height;
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex root{i};
        long room = tree.depth() - tree.depth_of(root);
        for (long h = 1; (h + 1) / 2 <= room; ++h) {
            CZSet S = make_czset(tree, root, h, ClipPolicy::clip);
            Rational ratio = dilate_measure_ratio(mu, tree, S);
            if (static_cast<std::size_t>(h) > by_height.size()) by_height.resize(h, Rational(0));
            if (ratio > by_height[h - 1]) by_height[h - 1] = ratio;
            if (ratio > sup) {
                sup = ratio;
                sup_root = root;
                sup_h = h;
            }
        }
    }
    Json dil;
    dil["sup_ratio"] = fraction(sup);
    dil["root_word"] = tree.word(sup_root);
    dil["h"] = sup_h;
    report["dilate"] = dil;

    report["violations"] = violations;
    if (violations > 0) report["first_violation"] = witness;

    emit(json_text(report), output);
    if (!csv_path.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t h = 1; h <= by_height.size(); ++h)
            rows.push_back({std::to_string(h), fraction(by_height[h - 1])});
        write_file(csv_path, csv_text({"h", "sup_ratio"}, rows));
    }
    return violations == 0 ? 0 : kExitViolation;
}

// ---- covering ------------------------------------------------------------

int run_covering(const TreeFlags& tf, unsigned long p, const std::string& lambda_text,
                 std::uint64_t seed, const std::string& output) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    Rational lambda = parse_rational("--lambda", lambda_text);
    if (lambda <= 0) throw CLI::ValidationError("--lambda", "must be positive");

    Rng rng(seed);
    TreeFunction f = random_function(tree, rng);
    CoveringResult cov = cz_covering(f, mu, p, lambda);

    Json report;
    report["config"] = config_json(tree);
    report["config"]["p"] = p;
    report["config"]["lambda"] = fraction(lambda);
    report["config"]["seed"] = seed;
    report["covering"] = covering_json(tree, cov);
    emit(json_text(report), output);
    return cov.all_certificates() ? 0 : kExitViolation;
}

// ---- decompose -----------------------------------------------------------

TreeFunction read_function_csv(const TreeTruncation& tree, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--input", "cannot open " + path);
    TreeFunction f(tree);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--input", "line " + std::to_string(lineno) +
                                                      ": expected vertex_word,value");
        std::string word = line.substr(0, comma);
        std::string value = line.substr(comma + 1);
        if (lineno == 1 && word == "vertex_word") continue;
        f[tree.vertex_at(word)] = parse_rational("--input", value);
    }
    return f;
}

int run_decompose(const TreeFlags& tf, unsigned long p, const std::string& alpha_text,
                  long stages, const std::string& input, const std::string& output) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    TreeFunction f = read_function_csv(tree, input);

    Rational alpha = alpha_text.empty() ? default_alpha(tree.q(), p)
                                        : parse_rational("--alpha", alpha_text);
    if (!alpha_admissible(alpha, tree.q(), p))
        throw CLI::ValidationError("--alpha", "inadmissible: need alpha^(p-1) > "
                                              "2^(p-1) 24 q (1+4^p); default is " +
                                                  fraction(default_alpha(tree.q(), p)));
    if (f[tree.apex()] != 0)
        throw CLI::ValidationError("--input",
                                   "no CZ set contains the apex; the apex value must be 0");
    Rational mean = integral(f, mu);
    if (mean != 0)
        throw CLI::ValidationError("--input", "input must have zero mean, got " + fraction(mean));

    auto pieces = split_mean_zero(f, mu);
    Json report;
    report["config"] = config_json(tree);
    report["config"]["p"] = p;
    report["config"]["alpha"] = fraction(alpha);
    report["config"]["stages"] = stages;
    report["input_pieces"] = pieces.size();

    bool certified = true;
    Rational total(0), residual(0);
    Json decs = Json::array();
    for (const auto& piece : pieces) {
        AtomicDecomposition dec =
            atomic_decompose_function(piece.values, piece.support, mu, p, alpha, stages);
        certified = certified && dec.certified();
        total += dec.coefficient_sum;
        residual += dec.residual_l1;
        decs.push_back(decomposition_json(tree, dec));
    }
    report["decompositions"] = decs;
    report["coefficient_sum"] = fraction(total);
    report["residual_l1"] = fraction(residual);
    report["certified"] = certified;
    emit(json_text(report), output);
    return certified ? 0 : kExitViolation;
}

// ---- interpolate -----------------------------------------------------------

int run_interpolate(const TreeFlags& tf, std::uint64_t seed, double p, const std::string& p1_text,
                    int lo, int hi, long stages, const std::string& ensemble,
                    const std::string& output) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    Rng rng(seed);

    TreeFunction f(tree);
    if (ensemble == "dipole")
        f = random_dipole_ladder(tree, mu, rng);
    else if (ensemble == "isotropic")
        f = random_isotropic_function(tree, mu, rng, p);
    else if (ensemble == "dense")
        f = random_function(tree, rng);
    else
        throw CLI::ValidationError("--ensemble", "expected dipole, isotropic or dense");

    double p1 = p1_text == "inf" ? std::numeric_limits<double>::infinity() : std::stod(p1_text);
    KOptions opt;
    opt.h1_stages = stages;
    InterpolationReport rep = interpolation_exponent_report(f, mu, p, p1, lo, hi, opt);

    bool json_out = output.size() > 5 && output.substr(output.size() - 5) == ".json";
    if (json_out) {
        Json report;
        report["config"] = config_json(tree);
        report["config"]["seed"] = seed;
        report["config"]["ensemble"] = ensemble;
        report["report"] = interpolation_json(rep);
        emit(json_text(report), output);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < rep.t.size(); ++i)
            rows.push_back({format_double(rep.t[i]), format_double(rep.k_bound[i]),
                            format_double(rep.slope)});
        emit(csv_text({"t", "k_bound", "slope"}, rows), output);
    }
    return rep.nondecreasing && rep.concave ? 0 : kExitViolation;
}

// ---- spectrum --------------------------------------------------------------

int run_spectrum(const TreeFlags& tf, const std::string& output) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix L = laplacian(tree, mu);

    double asym = 0;
    const auto& K = L.kernel;
    Eigen::VectorXd mv = mu_vector(mu);
    for (Eigen::Index x = 0; x < K.rows(); ++x)
        for (Eigen::Index y = x + 1; y < K.cols(); ++y)
            asym = std::max(asym, std::abs(K(x, y) * mv(x) * mv(y) - K(y, x) * mv(y) * mv(x)));

    Rng rng(1);
    double residual = 0;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd fv(K.rows()), gv(K.rows());
        for (Eigen::Index i = 0; i < K.rows(); ++i) {
            fv(i) = 2 * rng.unit() - 1;
            gv(i) = 2 * rng.unit() - 1;
        }
        double lhs = inner_mu(apply(L, mu, fv), gv, mu);
        double rhs = inner_mu(fv, apply(L, mu, gv), mu);
        double scale = std::sqrt(inner_mu(fv, fv, mu) * inner_mu(gv, gv, mu));
        residual = std::max(residual, std::abs(lhs - rhs) / scale);
    }

    double lo = sys.min_eigenvalue(), hi = sys.max_eigenvalue();
    double margin = std::min(lo, 2.0 - hi);
    std::vector<std::vector<std::string>> rows;
    std::string d = std::to_string(tree.depth());
    rows.push_back({d, "lambda_min", format_double(lo)});
    rows.push_back({d, "lambda_max", format_double(hi)});
    rows.push_back({d, "spectral_margin", format_double(margin)});
    rows.push_back({d, "kernel_asymmetry", format_double(asym)});
    rows.push_back({d, "selfadjoint_residual", format_double(residual)});
    emit(csv_text({"depth", "statistic", "value"}, rows), output);
    return margin > 0 ? 0 : kExitViolation;
}

// ---- hormander -------------------------------------------------------------

int run_hormander(const TreeFlags& tf, const std::string& multiplier, double t,
                  const std::string& output, const std::string& json_path) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);
    OperatorMatrix T = sys.multiplier_kernel(make_multiplier(multiplier, t));
    HormanderSweep sweep = hormander_sweep(T, tree, mu);

    std::vector<std::vector<std::string>> rows;
    std::string d = std::to_string(tree.depth());
    rows.push_back({d, "hormander_sup", format_double(sweep.sup)});
    rows.push_back({d, "sets", std::to_string(sweep.sets)});
    rows.push_back({d, "pairs", std::to_string(sweep.pairs)});
    emit(csv_text({"depth", "statistic", "value"}, rows), output);
    if (!json_path.empty()) {
        Json report;
        report["config"] = config_json(tree);
        report["config"]["multiplier"] = multiplier;
        report["config"]["t"] = format_double(t);
        report["sweep"] = sweep_json(tree, sweep);
        write_file(json_path, json_text(report));
    }
    return 0;
}

// ---- riesz-ratio -----------------------------------------------------------

int run_riesz_ratio(const TreeFlags& tf, std::size_t atom_count, std::uint64_t seed,
                    const std::string& output) {
    TreeTruncation tree = tf.build();
    WeightedMeasure mu(tree);
    SpectralSystem sys(tree, mu);

    Rng rng(seed);
    std::vector<Atom> atoms;
    atoms.reserve(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) atoms.push_back(random_atom(tree, mu, rng));

    AtomApplyReport rep = h1_to_l1_ratio(
        [&sys](const Eigen::VectorXd& v) { return sys.riesz(v); }, mu, atoms);

    std::vector<std::vector<std::string>> rows;
    std::string d = std::to_string(tree.depth());
    rows.push_back({d, "riesz_max_l1", format_double(rep.max_l1)});
    rows.push_back({d, "atoms", std::to_string(rep.atoms)});
    emit(csv_text({"depth", "statistic", "value"}, rows), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Calderon-Zygmund coverings, atomic decompositions and spectral multiplier "
                 "experiments on weighted homogeneous tree truncations"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (same keys as the flags, [subcommand] sections)");
    app.footer("CZHARDY_THREADS caps the worker pool; reports are byte-identical for equal\n"
               "seeds and configs.");

    TreeFlags tf;
    std::string output;
    std::uint64_t seed = 1;

    auto* geo = app.add_subcommand("geometry-sweep",
                                   "Check envelope, diameter and inclusion lemmas over "
                                   "admissible trapezoid pairs; sweep dilate measure ratios");
    std::uint64_t geo_pairs = 0;
    std::string geo_csv;
    add_tree_flags(geo, tf);
    geo->add_option("--pairs", geo_pairs, "Random pairs to sample (0 = exhaustive)");
    geo->add_option("--seed", seed, "RNG seed for random pair mode");
    geo->add_option("--output", output, "JSON report path (default stdout)");
    geo->add_option("--csv", geo_csv, "Also write per-height dilate ratios as CSV");

    auto* cov = app.add_subcommand("covering",
                                   "Greedy CZ covering of a random function at a threshold, "
                                   "with exact certificates");
    unsigned long cov_p = 2;
    std::string cov_lambda = "1/4";
    add_tree_flags(cov, tf);
    cov->add_option("--p", cov_p, "Exponent applied to |f|")->check(CLI::Range(1ul, 16ul));
    cov->add_option("--lambda", cov_lambda, "Threshold level, rational like 1/4");
    cov->add_option("--seed", seed, "RNG seed for the test function");
    cov->add_option("--output", output, "JSON report path (default stdout)");

    auto* dec = app.add_subcommand("decompose",
                                   "Atomic decomposition of a mean-zero function read from CSV "
                                   "(vertex_word,value)");
    unsigned long dec_p = 2;
    std::string dec_alpha, dec_input;
    long dec_stages = 4;
    add_tree_flags(dec, tf);
    dec->add_option("--input", dec_input, "Input CSV path")->required();
    dec->add_option("--p", dec_p, "Atom exponent")->check(CLI::Range(2ul, 16ul));
    dec->add_option("--alpha", dec_alpha, "Decomposition level (default: admissible 2*critical)");
    dec->add_option("--stages", dec_stages, "Maximum induction stages")->check(CLI::Range(0l, 16l));
    dec->add_option("--output", output, "JSON report path (default stdout)");

    auto* itp = app.add_subcommand("interpolate",
                                   "K-functional upper bounds between the atomic space and "
                                   "L^p1 over a dyadic t-window");
    double itp_p = 2.0;
    std::string itp_p1 = "inf", itp_ensemble = "dipole";
    int itp_lo = -6, itp_hi = 6;
    long itp_stages = 1;
    add_tree_flags(itp, tf);
    itp->add_option("--seed", seed, "RNG seed for the test function");
    itp->add_option("--p", itp_p, "Source exponent (covering runs on |f|^p)");
    itp->add_option("--p1", itp_p1, "Good-part exponent, number or inf");
    itp->add_option("--lo", itp_lo, "Window start: t = 2^lo");
    itp->add_option("--hi", itp_hi, "Window end: t = 2^hi");
    itp->add_option("--stages", itp_stages, "Decomposition stages per piece bound");
    itp->add_option("--ensemble", itp_ensemble, "Test function family: dipole|isotropic|dense");
    itp->add_option("--output", output, "CSV path, or .json for the full report (default stdout)");

    auto* spec = app.add_subcommand("spectrum",
                                    "Eigenvalue range and self-adjointness residual of the "
                                    "truncated Laplacian");
    add_tree_flags(spec, tf);
    spec->add_option("--output", output, "CSV path (default stdout)");

    auto* hor = app.add_subcommand("hormander",
                                   "Exhaustive Hormander integral sweep for a spectral "
                                   "multiplier kernel");
    std::string hor_mult = "heat";
    std::string hor_json;
    double hor_t = 1.0;
    add_tree_flags(hor, tf);
    hor->add_option("--multiplier", hor_mult, "heat | power | imaginary | identity");
    hor->add_option("--t", hor_t, "Multiplier parameter (time, power, or s0)");
    hor->add_option("--output", output, "CSV path (default stdout)");
    hor->add_option("--json", hor_json, "Also write the argmax witness as JSON");

    auto* rr = app.add_subcommand("riesz-ratio",
                                  "max ||Ta||_1 over random (1,inf)-atoms for the Riesz "
                                  "transform grad L^(-1/2)");
    std::size_t rr_atoms = 200;
    add_tree_flags(rr, tf);
    rr->add_option("--atoms", rr_atoms, "Number of random atoms");
    rr->add_option("--seed", seed, "RNG seed for the atoms");
    rr->add_option("--output", output, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's per-error exit codes: anything but clean help is 2
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (geo->parsed()) return run_geometry_sweep(tf, geo_pairs, seed, output, geo_csv);
        if (cov->parsed()) return run_covering(tf, cov_p, cov_lambda, seed, output);
        if (dec->parsed()) return run_decompose(tf, dec_p, dec_alpha, dec_stages, dec_input, output);
        if (itp->parsed())
            return run_interpolate(tf, seed, itp_p, itp_p1, itp_lo, itp_hi, itp_stages,
                                   itp_ensemble, output);
        if (spec->parsed()) return run_spectrum(tf, output);
        if (hor->parsed()) return run_hormander(tf, hor_mult, hor_t, output, hor_json);
        if (rr->parsed()) return run_riesz_ratio(tf, rr_atoms, seed, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
