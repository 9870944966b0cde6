#include "cohq/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohq {

namespace {

// checks x is a non-negative integer to 1e-9 relative accuracy, returns it
long checked_nonneg_int(double x, const char* what) {
    const double r = std::round(x);
    if (r < -0.5 || std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x)))
        throw usage_error(std::string(what) + " = " + std::to_string(x) +
                          " must be a non-negative integer");
    return static_cast<long>(r);
}

cplx polar_pow(double log_mag, double phase) {
    return std::exp(log_mag) * cplx(std::cos(phase), std::sin(phase));
}

} // namespace

// ---- embeddings --------------------------------------------------------------

IrrepEmbedding embed_irrep(const ModelSpec& spec) {
    return embed_irrep(spec, rep_index_from_R(spec));
}

IrrepEmbedding embed_irrep(const ModelSpec& spec, const RepIndex& rep) {
    spec.validate();
    IrrepEmbedding emb;
    emb.rep = rep;
    emb.space = spec.space;
    const FockSpace& sp = *spec.space;

    switch (rep.series) {
        case RepSeries::SU2: {
            const long two_j = checked_nonneg_int(2.0 * rep.value, "2j");
            for (long p = 0; p <= two_j; ++p) { // p = j + m
                const int idx = sp.index_of(static_cast<int>(p), static_cast<int>(two_j - p));
                if (idx < 0)
                    throw truncation_too_small(
                        "spin-" + std::to_string(rep.value) +
                            " ladder does not fit the truncation; need cutoff >= " +
                            std::to_string(two_j),
                        static_cast<int>(two_j));
                emb.fock_index.push_back(idx);
            }
            return emb;
        }
        case RepSeries::SU11_discrete: {
            const double d_real = 2.0 * rep.value - 1.0;
            const double d_round = std::round(d_real);
            if (d_round < -0.5 ||
                std::abs(d_real - d_round) > 1e-9 * std::max(1.0, std::abs(d_real)))
                throw no_physical_states(
                    "the constraint kernel is empty: the mode-number offset 2k-1 = " +
                    std::to_string(d_real) + " must be a non-negative integer");
            const int d = static_cast<int>(d_round);
            for (int n = 0; sp.index_of(n + d, n) >= 0; ++n)
                emb.fock_index.push_back(sp.index_of(n + d, n));
            if (emb.fock_index.empty())
                throw truncation_too_small(
                    "discrete-series ladder does not fit the truncation; need cutoff >= " +
                        std::to_string(d),
                    d);
            return emb;
        }
        case RepSeries::SU11_principal:
            throw unsupported_model(
                "principal-series states have no Fock ladder; numerical support covers the "
                "SU(2) and SU(1,1) discrete-series families only");
    }
    throw usage_error("unreachable representation series");
}

Ket embed(const IrrepEmbedding& emb, const Vec& amplitudes) {
    if (amplitudes.size() != emb.len())
        throw usage_error("amplitude vector length does not match the embedded ladder");
    Ket psi = zero_ket(emb.space);
    for (int i = 0; i < emb.len(); ++i) psi.v(emb.fock_index[i]) = amplitudes(i);
    return psi;
}

// ---- amplitudes ---------------------------------------------------------------

Vec su2_amplitudes(double j, cplx zeta) {
    const long two_j = checked_nonneg_int(2.0 * j, "2j");
    Vec c = Vec::Zero(two_j + 1);
    const double r = std::abs(zeta);
    if (r == 0.0) {
        c(0) = 1.0; // lowest weight |j,-j>
        return c;
    }
    const double theta = std::arg(zeta);
    const double lg2j = std::lgamma(two_j + 1.0);
    const double log_norm = -0.5 * two_j * std::log1p(r * r);
    for (long p = 0; p <= two_j; ++p) { // p = j + m
        const double log_binom = 0.5 * (lg2j - std::lgamma(p + 1.0) - std::lgamma(two_j - p + 1.0));
        c(p) = polar_pow(log_binom + p * std::log(r) + log_norm, p * theta);
    }
    return c;
}

Vec su11_amplitudes(double k, cplx zeta, int count) {
    if (k < 0.5 - 1e-12) throw usage_error("discrete-series index k must be >= 1/2");
    if (count < 1) throw usage_error("ladder length must be >= 1");
    const double r = std::abs(zeta);
    if (r >= 1.0) throw std::domain_error("su11 coherent label requires |zeta| < 1");
    Vec c = Vec::Zero(count);
    if (r == 0.0) {
        c(0) = 1.0;
        return c;
    }
    const double theta = std::arg(zeta);
    const double lg2k = std::lgamma(2.0 * k);
    const double log_norm = k * std::log1p(-r * r);
    for (int n = 0; n < count; ++n) {
        const double log_ratio = 0.5 * (std::lgamma(n + 2.0 * k) - std::lgamma(n + 1.0) - lg2k);
        c(n) = polar_pow(log_norm + log_ratio + n * std::log(r), n * theta);
    }
    return c;
}

int su11_min_cutoff(double k, double abs_zeta, double tail_eps) {
    if (k < 0.5 - 1e-12) throw usage_error("discrete-series index k must be >= 1/2");
    if (abs_zeta >= 1.0) throw std::domain_error("su11 coherent label requires |zeta| < 1");
    if (abs_zeta == 0.0) return 0;
    const double x = abs_zeta * abs_zeta;
    const double lg2k = std::lgamma(2.0 * k);
    const double log_pref = 2.0 * k * std::log1p(-x);
    double sum = 0.0;
    for (int n = 0; n <= 200000; ++n) {
        // squared amplitude of ladder level n
        const double t =
            std::exp(log_pref + std::lgamma(n + 2.0 * k) - std::lgamma(n + 1.0) - lg2k +
                     n * std::log(x));
        sum += t;
        // geometric bound on the remainder: ratio t_{m+1}/t_m = x (m+2k)/(m+1)
        const double q = x * (n + 1 + 2.0 * k) / (n + 2.0);
        if (q < 1.0) {
            const double t_next = t * x * (n + 2.0 * k) / (n + 1.0);
            if (t_next / (1.0 - q) <= tail_eps) return n;
        }
    }
    throw config_error("su11 tail does not reach the requested accuracy at any supported cutoff");
}

// ---- product coherent states ---------------------------------------------------

namespace {

double poisson_tail(double mu, int n) {
    // P(X > n) for X ~ Poisson(mu)
    if (mu <= 0.0) return 0.0;
    double term = std::exp((n + 1) * std::log(mu) - mu - std::lgamma(n + 2.0));
    double sum = term;
    for (int m = n + 2; m < n + 20000; ++m) {
        term *= mu / m;
        sum += term;
        if (term <= 1e-22 * sum) break;
    }
    return sum;
}

} // namespace

double hw_tail(const SpacePtr& space, cplx z1, cplx z2) {
    const double mu1 = std::norm(z1), mu2 = std::norm(z2);
    const int n = space->cutoff();
    if (space->scheme() == CutoffScheme::TotalQuanta) return poisson_tail(mu1 + mu2, n);
    const double t1 = poisson_tail(mu1, n), t2 = poisson_tail(mu2, n);
    return t1 + t2 - t1 * t2;
}

int hw_min_cutoff(CutoffScheme scheme, cplx z1, cplx z2, double tail_eps) {
    const double mu1 = std::norm(z1), mu2 = std::norm(z2);
    for (int n = 1; n <= 8192; ++n) {
        const double tail = scheme == CutoffScheme::TotalQuanta
                                ? poisson_tail(mu1 + mu2, n)
                                : poisson_tail(mu1, n) + poisson_tail(mu2, n) -
                                      poisson_tail(mu1, n) * poisson_tail(mu2, n);
        if (tail <= tail_eps) return n;
    }
    throw config_error("product coherent state does not fit any supported truncation");
}

Ket hw_state(const SpacePtr& space, cplx z1, cplx z2, double tail_eps) {
    const double tail = hw_tail(space, z1, z2);
    if (tail > tail_eps)
        throw truncation_too_small(
            "product coherent state tail " + std::to_string(tail) + " exceeds " +
                std::to_string(tail_eps) + "; need cutoff >= " +
                std::to_string(hw_min_cutoff(space->scheme(), z1, z2, tail_eps)),
            hw_min_cutoff(space->scheme(), z1, z2, tail_eps));

    const double r1 = std::abs(z1), r2 = std::abs(z2);
    const double th1 = std::arg(z1), th2 = std::arg(z2);
    const double log_norm = -0.5 * (r1 * r1 + r2 * r2);
    Ket psi = zero_ket(space);
    for (int i = 0; i < space->dim(); ++i) {
        auto [n1, n2] = space->occupation(i);
        if ((r1 == 0.0 && n1 > 0) || (r2 == 0.0 && n2 > 0)) continue;
        const double lm = log_norm + (n1 > 0 ? n1 * std::log(r1) : 0.0) +
                          (n2 > 0 ? n2 * std::log(r2) : 0.0) -
                          0.5 * (std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0));
        psi.v(i) = polar_pow(lm, n1 * th1 + n2 * th2);
    }
    return psi;
}

Ket su2_state(const IrrepEmbedding& emb, cplx zeta) {
    if (emb.rep.series != RepSeries::SU2)
        throw usage_error("su2_state needs an SU2 embedding");
    return embed(emb, su2_amplitudes(emb.rep.value, zeta));
}

Ket su11_state(const IrrepEmbedding& emb, cplx zeta, double tail_eps) {
    if (emb.rep.series != RepSeries::SU11_discrete)
        throw usage_error("su11_state needs a discrete-series SU11 embedding");
    const double k = emb.rep.value;
    const int needed = su11_min_cutoff(k, std::abs(zeta), tail_eps);
    if (needed > emb.len() - 1) {
        const int d = static_cast<int>(std::round(2.0 * k - 1.0));
        throw truncation_too_small(
            "discrete-series state needs ladder level " + std::to_string(needed) +
                " for the requested tail; need cutoff >= " + std::to_string(needed + d),
            needed + d);
    }
    return embed(emb, su11_amplitudes(k, zeta, emb.len()));
}

// ---- expectations ---------------------------------------------------------------

cplx expectation(const LinOp& a, const Ket& psi) {
    const double n2 = psi.v.squaredNorm();
    if (n2 <= 0.0) throw usage_error("expectation in a zero vector");
    return inner(psi, apply(a, psi)) / n2;
}

double variance(const LinOp& a, const Ket& psi) {
    const Ket apsi = apply(a, psi);
    const double n2 = psi.v.squaredNorm();
    if (n2 <= 0.0) throw usage_error("variance in a zero vector");
    const cplx e1 = inner(psi, apsi) / n2;
    const cplx e2 = inner(apsi, apsi) / n2; // <A+ A> = <A^2> for self-adjoint A
    return std::real(e2 - e1 * e1);
}

// ---- quadrature ------------------------------------------------------------------

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    if (n < 1) throw usage_error("quadrature needs at least one node");
    // Golub-Welsch on the Legendre Jacobi matrix
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double bi = i / std::sqrt(4.0 * i * i - 1.0);
        jac(i, i - 1) = bi;
        jac(i - 1, i) = bi;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    nodes.resize(n);
    weights.resize(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + half * es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        weights[i] = 2.0 * v0 * v0 * half;
    }
}

Mat resolution_matrix(const RepIndex& rep, int ladder_len, const QuadratureSpec& quad) {
    const int n_ang = quad.angular_nodes;
    std::vector<double> u, w;
    Mat m = Mat::Zero(ladder_len, ladder_len);

    if (rep.series == RepSeries::SU2) {
        const long two_j = checked_nonneg_int(2.0 * rep.value, "2j");
        if (ladder_len != two_j + 1) throw usage_error("SU2 ladder length must be 2j+1");
        gauss_legendre(quad.radial_nodes, 0.0, 1.0, u, w);
        for (int iu = 0; iu < quad.radial_nodes; ++iu) {
            const double r = std::sqrt(u[iu] / (1.0 - u[iu]));
            const double wu = (two_j + 1.0) * w[iu] / n_ang;
            for (int ia = 0; ia < n_ang; ++ia) {
                const double phi = 2.0 * M_PI * ia / n_ang;
                const Vec c = su2_amplitudes(rep.value, std::polar(r, phi));
                m.noalias() += wu * (c * c.adjoint());
            }
        }
        return m;
    }

    if (rep.series == RepSeries::SU11_discrete) {
        const double k = rep.value;
        if (k <= 0.5)
            throw std::domain_error(
                "resolution of identity requires k > 1/2; the invariant-measure weight 2k-1 "
                "vanishes or turns negative otherwise");
        const double uc = quad.su11_radial_cutoff * quad.su11_radial_cutoff;
        gauss_legendre(quad.radial_nodes, 0.0, uc, u, w);
        for (int iu = 0; iu < quad.radial_nodes; ++iu) {
            const double r = std::sqrt(u[iu]);
            const double omu = 1.0 - u[iu];
            const double wu = (2.0 * k - 1.0) * w[iu] / (n_ang * omu * omu);
            for (int ia = 0; ia < n_ang; ++ia) {
                const double phi = 2.0 * M_PI * ia / n_ang;
                const Vec c = su11_amplitudes(k, std::polar(r, phi), ladder_len);
                m.noalias() += wu * (c * c.adjoint());
            }
        }
        return m;
    }

    throw unsupported_model("no resolution-of-identity quadrature for the principal series");
}

CheckReport resolution_of_identity_check(const RepIndex& rep, int ladder_len,
                                         const QuadratureSpec& quad, double tol) {
    CheckReport out;
    out.suite = "resolve-identity";

    if (quad.angular_nodes < 2 * ladder_len)
        throw config_error("angular node count " + std::to_string(quad.angular_nodes) +
                           " cannot resolve ladder phases; need >= " +
                           std::to_string(2 * ladder_len));

    const Mat eye = Mat::Identity(ladder_len, ladder_len);
    Table conv;
    conv.name = "convergence";
    bool monotone = true;
    double prev = 0.0, final_dev = 0.0;

    if (rep.series == RepSeries::SU2) {
        out.env("series", "su2");
        out.env("j", std::to_string(rep.value));
        // node-doubling refinement ending at the configured counts
        std::vector<int> levels;
        for (int s = quad.radial_nodes; s >= 8; s /= 2) levels.push_back(s);
        std::reverse(levels.begin(), levels.end());
        conv.columns = {"radial_nodes", "angular_nodes", "deviation"};
        for (size_t i = 0; i < levels.size(); ++i) {
            QuadratureSpec q = quad;
            q.radial_nodes = levels[i];
            q.angular_nodes = std::max(levels[i], 2 * ladder_len);
            const double dev = max_abs(Mat(resolution_matrix(rep, ladder_len, q) - eye));
            conv.rows.push_back({double(levels[i]), double(q.angular_nodes), dev});
            if (i > 0 && dev > prev + 1e-12) monotone = false;
            prev = dev;
            final_dev = dev;
        }
    } else {
        out.env("series", "su11");
        out.env("k", std::to_string(rep.value));
        // cutoff-tightening refinement ending at the configured disk cutoff
        std::vector<double> cuts{0.999, 0.9999};
        if (quad.su11_radial_cutoff > cuts.back())
            cuts.push_back(quad.su11_radial_cutoff);
        else
            cuts = {quad.su11_radial_cutoff};
        conv.columns = {"radial_cutoff", "deviation"};
        for (size_t i = 0; i < cuts.size(); ++i) {
            QuadratureSpec q = quad;
            q.su11_radial_cutoff = cuts[i];
            const double dev = max_abs(Mat(resolution_matrix(rep, ladder_len, q) - eye));
            conv.rows.push_back({cuts[i], dev});
            if (i > 0 && dev > prev + 1e-12) monotone = false;
            prev = dev;
            final_dev = dev;
        }
        // largest neglected-annulus diagonal entry over the ladder:
        //   T_n <= B_n (1-u_c)^(2k-1),  B_n = Gamma(n+2k)/(Gamma(n+1)Gamma(2k))
        const double k = rep.value;
        const double uc = quad.su11_radial_cutoff * quad.su11_radial_cutoff;
        const double log_b = std::lgamma(ladder_len - 1 + 2.0 * k) - std::lgamma(double(ladder_len)) -
                             std::lgamma(2.0 * k);
        const double tail_bound = std::exp(log_b + (2.0 * k - 1.0) * std::log1p(-uc));
        out.add_info("analytic-boundary-tail", tail_bound,
                     "upper bound on the neglected disk-boundary annulus");
    }

    out.env("ladder_len", std::to_string(ladder_len));
    out.env("radial_nodes", std::to_string(quad.radial_nodes));
    out.env("angular_nodes", std::to_string(quad.angular_nodes));
    out.tables.push_back(std::move(conv));
    out.add("identity-deviation", final_dev, tol);
    out.add_flag("refinement-monotone", monotone, "deviation non-increasing under refinement");
    return out;
}

} // namespace cohq
