#include "czhardy/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

#include "czhardy/errors.hpp"

namespace czhardy {

Eigen::VectorXd to_vector(const TreeFunction& f) {
    Eigen::VectorXd out(f.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) out(i) = to_double(f.at_index(i));
    return out;
}

Eigen::VectorXd mu_vector(const WeightedMeasure& mu) {
    const TreeTruncation& tree = mu.tree();
    Eigen::VectorXd out(tree.vertex_count());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        out(i) = to_double(mu.weight_at_depth(tree.depth_of(Vertex{i})));
    return out;
}

Eigen::VectorXd apply(const OperatorMatrix& T, const WeightedMeasure& mu,
                      const Eigen::VectorXd& f) {
    return T.kernel * mu_vector(mu).cwiseProduct(f);
}

double l1_norm(const Eigen::VectorXd& f, const WeightedMeasure& mu) {
    return mu_vector(mu).dot(f.cwiseAbs());
}

double inner_mu(const Eigen::VectorXd& f, const Eigen::VectorXd& g, const WeightedMeasure& mu) {
    return mu_vector(mu).dot(f.cwiseProduct(g));
}

OperatorMatrix laplacian(const TreeTruncation& tree, const WeightedMeasure& mu) {
    const auto n = tree.vertex_count();
    double c = 1.0 / (2.0 * std::sqrt(static_cast<double>(tree.q())));
    OperatorMatrix T;
    T.kernel = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Vertex x{i};
        double mux = to_double(mu(x));
        T.kernel(i, i) = 1.0 / mux;
        for (Vertex y : tree.neighbors(x)) {
            double step = static_cast<double>(tree.level(y) - tree.level(x));
            T.kernel(i, y.idx) = -c * std::pow(static_cast<double>(tree.q()), step / 2.0) /
                                 to_double(mu(y));
        }
    }
    return T;
}

Eigen::MatrixXd symmetrized_laplacian(const TreeTruncation& tree) {
    const auto n = tree.vertex_count();
    double c = 1.0 / (2.0 * std::sqrt(static_cast<double>(tree.q())));
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (Vertex y : tree.neighbors(Vertex{i})) S(i, y.idx) = -c;
    return S;
}

OperatorMatrix identity_kernel(const TreeTruncation& tree, const WeightedMeasure& mu) {
    OperatorMatrix T;
    T.kernel = Eigen::MatrixXd::Zero(tree.vertex_count(), tree.vertex_count());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i)
        T.kernel(i, i) = 1.0 / to_double(mu(Vertex{i}));
    return T;
}

TreeFunction gradient(const TreeFunction& f) {
    const TreeTruncation& tree = f.tree();
    TreeFunction out(tree);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex x{i};
        Rational acc(0);
        for (Vertex y : tree.neighbors(x)) {
            Rational d = f[y] - f[x];
            acc += d < 0 ? Rational(-d) : d;
        }
        out[x] = acc;
    }
    return out;
}

Eigen::VectorXd gradient(const TreeTruncation& tree, const Eigen::VectorXd& f) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(f.size());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex x{i};
        for (Vertex y : tree.neighbors(x)) out(i) += std::abs(f(y.idx) - f(i));
    }
    return out;
}

SpectralSystem::SpectralSystem(const TreeTruncation& tree, const WeightedMeasure& mu)
    : tree_(&tree) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetrized_laplacian(tree));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
    sqrt_mu_.resize(tree.vertex_count());
    inv_sqrt_mu_.resize(tree.vertex_count());
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        sqrt_mu_(i) = std::sqrt(to_double(mu(Vertex{i})));
        inv_sqrt_mu_(i) = 1.0 / sqrt_mu_(i);
    }
}

OperatorMatrix SpectralSystem::multiplier_kernel(const std::function<double(double)>& M) const {
    Eigen::VectorXd m(evals_.size());
    for (Eigen::Index k = 0; k < evals_.size(); ++k) m(k) = M(evals_(k));
    OperatorMatrix T;
    T.kernel.noalias() = evecs_ * m.asDiagonal() * evecs_.transpose();
    T.kernel = inv_sqrt_mu_.asDiagonal() * T.kernel * inv_sqrt_mu_.asDiagonal();
    return T;
}

Eigen::VectorXd SpectralSystem::apply_multiplier(const std::function<double(double)>& M,
                                                 const Eigen::VectorXd& f) const {
    Eigen::VectorXd c = evecs_.transpose() * sqrt_mu_.cwiseProduct(f);
    for (Eigen::Index k = 0; k < evals_.size(); ++k) c(k) *= M(evals_(k));
    return inv_sqrt_mu_.cwiseProduct(evecs_ * c);
}

Eigen::VectorXd SpectralSystem::riesz(const Eigen::VectorXd& f) const {
    return gradient(*tree_,
                    apply_multiplier([](double l) { return 1.0 / std::sqrt(l); }, f));
}

std::function<double(double)> heat_multiplier(double time) {
    return [time](double l) { return std::exp(-time * l); };
}

std::function<double(double)> power_multiplier(int m) {
    return [m](double l) { return std::pow(1.0 - l / 2.0, m); };
}

std::function<double(double)> imaginary_power_real(double s0) {
    return [s0](double l) { return l > 0 ? std::cos(s0 * std::log(l)) : 0.0; };
}

std::function<double(double)> imaginary_power_imag(double s0) {
    return [s0](double l) { return l > 0 ? std::sin(s0 * std::log(l)) : 0.0; };
}

std::function<double(double)> make_multiplier(const std::string& name, double param) {
    if (name == "heat") return heat_multiplier(param);
    if (name == "power") return power_multiplier(static_cast<int>(std::lround(param)));
    if (name == "imaginary") return imaginary_power_real(param);
    if (name == "identity") return [](double) { return 1.0; };
    throw std::invalid_argument("unknown multiplier: " + name);
}

double hormander_integral(const OperatorMatrix& T, const WeightedMeasure& mu, const CZSet& S,
                          Vertex y, Vertex z) {
    const TreeTruncation& tree = mu.tree();
    if (!contains(tree, S, y) || !contains(tree, S, z))
        throw containment_error("base points must lie in the CZ set");
    DilatedCZSet star = dilate(tree, S);
    if (!star.interior) throw containment_error("dilate leaks past the truncation");
    std::vector<char> in_star(tree.vertex_count(), 0);
    for (Vertex v : star.members) in_star[v.idx] = 1;
    double acc = 0;
    for (std::uint32_t x = 0; x < tree.vertex_count(); ++x) {
        if (in_star[x]) continue;
        acc += std::abs(T.kernel(x, y.idx) - T.kernel(x, z.idx)) *
               to_double(mu.weight_at_depth(tree.depth_of(Vertex{x})));
    }
    return acc;
}

HormanderSweep hormander_sweep(const OperatorMatrix& T, const TreeTruncation& tree,
                               const WeightedMeasure& mu) {
    HormanderSweep out;
    Eigen::VectorXd w = mu_vector(mu);
    for (std::uint32_t i = 0; i < tree.vertex_count(); ++i) {
        Vertex root{i};
        long room = tree.depth() - tree.depth_of(root);
        for (long h = 1; 4 * h - 1 <= room; ++h) {
            CZSet S = make_czset(tree, root, h, ClipPolicy::strict);
            DilatedCZSet star = dilate(tree, S);
            if (!star.interior) continue;
            Eigen::VectorXd mask = w;
            for (Vertex v : star.members) mask(v.idx) = 0.0;
            std::vector<Vertex> band = vertices(tree, S);
            ++out.sets;
            for (std::size_t a = 0; a < band.size(); ++a) {
                for (std::size_t b = a + 1; b < band.size(); ++b) {
                    double val = (T.kernel.col(band[a].idx) - T.kernel.col(band[b].idx))
                                     .cwiseAbs()
                                     .dot(mask);
                    ++out.pairs;
                    if (val > out.sup) {
                        out.sup = val;
                        out.root = i;
                        out.h = h;
                        out.y = band[a].idx;
                        out.z = band[b].idx;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

double atom_l1(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    return w.dot(v.cwiseAbs());
}

}  // namespace

AtomApplyReport h1_to_l1_ratio(const OperatorMatrix& T, const WeightedMeasure& mu,
                               const std::vector<Atom>& atoms) {
    const TreeTruncation& tree = mu.tree();
    Eigen::VectorXd w = mu_vector(mu);
    AtomApplyReport rep;
    rep.atoms = atoms.size();
    for (const Atom& a : atoms) {
        Eigen::VectorXd av = to_vector(a.values);
        Eigen::VectorXd Ta = T.kernel * w.cwiseProduct(av);
        rep.max_l1 = std::max(rep.max_l1, atom_l1(Ta, w));

        DilatedCZSet star = dilate(tree, a.support);
        std::vector<char> in_star(tree.vertex_count(), 0);
        for (Vertex v : star.members) in_star[v.idx] = 1;
        double inside_sq = 0, mu_star = 0;
        for (std::uint32_t x = 0; x < tree.vertex_count(); ++x) {
            if (!in_star[x]) continue;
            inside_sq += Ta(x) * Ta(x) * w(x);
            mu_star += w(x);
        }
        rep.max_inside = std::max(rep.max_inside, std::sqrt(inside_sq) * std::sqrt(mu_star));

        // Tail bound: int |a(y)| [ sum_{x not in star} |K(x,y)-K(x,x_R)| dmu(x) ] dmu(y).
        double tail = 0;
        for_each_vertex(tree, a.support, [&](Vertex y) {
            double ay = std::abs(av(y.idx));
            if (ay == 0) return;
            double hy = 0;
            for (std::uint32_t x = 0; x < tree.vertex_count(); ++x) {
                if (in_star[x]) continue;
                hy += std::abs(T.kernel(x, y.idx) - T.kernel(x, a.support.root.idx)) * w(x);
            }
            tail += ay * w(y.idx) * hy;
        });
        rep.max_tail = std::max(rep.max_tail, tail);
    }
    return rep;
}

AtomApplyReport h1_to_l1_ratio(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& T,
                               const WeightedMeasure& mu, const std::vector<Atom>& atoms) {
    Eigen::VectorXd w = mu_vector(mu);
    AtomApplyReport rep;
    rep.atoms = atoms.size();
    for (const Atom& a : atoms)
        rep.max_l1 = std::max(rep.max_l1, atom_l1(T(to_vector(a.values)), w));
    return rep;
}

MikhlinReport mikhlin_hormander_estimate(const std::function<double(double)>& M, double s,
                                         std::size_t samples) {
    MikhlinReport rep;
    rep.outside_hypothesis = !(s > 1.5);
    rep.samples = samples;

    const double L = 8.0;  // sampling period; the bump lives in [1/2, 4]
    auto phi = [](double l) {
        if (l <= 0.5 || l >= 4.0) return 0.0;
        return std::exp(-1.0 / ((l - 0.5) * (4.0 - l)));
    };

    std::vector<double> in(samples);
    fftw_complex* out =
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (samples / 2 + 1)));
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(samples), in.data(), out,
                                          FFTW_ESTIMATE);

    for (int e = -6; e <= 6; ++e) {
        double t = std::ldexp(1.0, e);
        for (std::size_t j = 0; j < samples; ++j) {
            double l = L * static_cast<double>(j) / static_cast<double>(samples);
            in[j] = M(t * l) * phi(l);
        }
        fftw_execute(plan);
        double acc = 0;
        for (std::size_t k = 0; k + 1 <= samples / 2 + 1; ++k) {
            double re = out[k][0] / static_cast<double>(samples);
            double im = out[k][1] / static_cast<double>(samples);
            double xi = 2.0 * M_PI * static_cast<double>(k) / L;
            double weight = std::pow(1.0 + xi * xi, s);
            double mult = (k == 0 || k == samples / 2) ? 1.0 : 2.0;
            acc += mult * weight * (re * re + im * im);
        }
        double norm = std::sqrt(L * acc);
        rep.per_t.emplace_back(t, norm);
        rep.grid_max = std::max(rep.grid_max, norm);
    }

    fftw_destroy_plan(plan);
    fftw_free(out);
    return rep;
}

}  // namespace czhardy
