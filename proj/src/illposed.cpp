#include "ccwave/illposed.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <map>
#include <random>
#include <thread>

#include "ccwave/errors.hpp"
#include "ccwave/symbols.hpp"

namespace ccwave {

namespace {

double omega_inf(double xi, double eta) { return xi * std::abs(xi) - eta * eta / xi; }

// Omega(k1,k2) at infinite depth: A + B (r1 - r2)^2 with r = eta/xi.
struct OmegaPair {
    double A, B;
    double operator()(double r1, double r2) const {
        const double d = r1 - r2;
        return A + B * d * d;
    }
};

OmegaPair omega_pair(double x1, double x2) {
    const double x3 = -(x1 + x2);
    const double mx = std::max({std::abs(x1), std::abs(x2), std::abs(x3)});
    return {x1 * x2 * x3 * 2.0 / mx, x1 * x2 / x3};
}

cplx duhamel(double t, double om) {
    const double w = t * om;
    if (std::abs(w) < 1e-8) return cplx(t * (1.0 - w * w / 6.0), 0.5 * t * w);
    // (e^{i t om} - 1) / (i om)
    return cplx(std::sin(w) / om, (1.0 - std::cos(w)) / om);
}

void fill_set(SparseSpectrum& s, double center, double quarter, double rootN, double amp) {
    // columns with |xi| in (center - quarter, center + quarter), both signs;
    // rows with |eta| < |xi| rootN (strict interior lattice points)
    for (int sign = -1; sign <= 1; sign += 2) {
        const double lo = sign > 0 ? center - quarter : -(center + quarter);
        const double hi = sign > 0 ? center + quarter : -(center - quarter);
        const std::int64_t j0 = static_cast<std::int64_t>(std::floor(lo / s.dxi)) + 1;
        const std::int64_t j1 = static_cast<std::int64_t>(std::ceil(hi / s.dxi)) - 1;
        for (std::int64_t jx = j0; jx <= j1; ++jx) {
            const double xi = jx * s.dxi;
            if (!(xi > lo && xi < hi) || xi == 0.0) continue;
            const double etamax = std::abs(xi) * rootN;
            const std::int64_t r1 = static_cast<std::int64_t>(std::ceil(etamax / s.deta)) - 1;
            if (r1 < 0) continue;
            SparseSpectrum::Column col;
            col.jx = jx;
            col.jy0 = -r1;
            col.vals.assign(static_cast<std::size_t>(2 * r1 + 1), cplx(amp, 0.0));
            s.cols.push_back(std::move(col));
        }
    }
    std::sort(s.cols.begin(), s.cols.end(),
              [](const SparseSpectrum::Column& a, const SparseSpectrum::Column& b) { return a.jx < b.jx; });
}

double lattice_measure(const SparseSpectrum& s) {
    std::size_t n = 0;
    for (const auto& c : s.cols) n += c.vals.size();
    return static_cast<double>(n) * s.dxi * s.deta;
}

}  // namespace

double CounterexampleParams::delta() const { return std::pow(N, -(1.0 + eps)); }

Counterexample build_counterexample(const CounterexampleParams& prm) {
    if (!(prm.N >= 4.0)) throw config_error("build_counterexample: N must be >= 4");
    if (!(prm.p >= 1.0)) throw config_error("build_counterexample: p must be >= 1");
    const double delta = prm.delta();
    const double dxi = prm.dxi > 0.0 ? prm.dxi : delta / 8.0;
    const double deta = prm.deta > 0.0 ? prm.deta : delta * std::sqrt(prm.N) / 8.0;
    if (dxi > delta / 8.0 * (1.0 + 1e-12) || deta > delta * std::sqrt(prm.N) / 8.0 * (1.0 + 1e-12))
        throw config_error("build_counterexample: unresolvable delta; need dxi <= " +
                           std::to_string(delta / 8.0) + ", deta <= " +
                           std::to_string(delta * std::sqrt(prm.N) / 8.0));

    const double rootN = std::sqrt(prm.N);
    const double amp_high = std::pow(delta, -0.5) / prm.N;
    const double amp_low = std::isinf(prm.p)
                               ? std::pow(delta, -1.5)
                               : std::pow(delta, 0.5 / prm.p - 1.5) * std::pow(prm.N, -0.5 / prm.p);

    Counterexample ce;
    ce.phi_high.dxi = ce.phi_low.dxi = ce.phi.dxi = dxi;
    ce.phi_high.deta = ce.phi_low.deta = ce.phi.deta = deta;
    fill_set(ce.phi_high, prm.N, delta / 4.0, rootN, amp_high);
    fill_set(ce.phi_low, delta, delta / 4.0, rootN, amp_low);
    ce.measure_high = lattice_measure(ce.phi_high);
    ce.measure_low = lattice_measure(ce.phi_low);

    ce.phi.cols = ce.phi_low.cols;
    ce.phi.cols.insert(ce.phi.cols.end(), ce.phi_high.cols.begin(), ce.phi_high.cols.end());
    std::sort(ce.phi.cols.begin(), ce.phi.cols.end(),
              [](const SparseSpectrum::Column& a, const SparseSpectrum::Column& b) { return a.jx < b.jx; });

    const double q = 2.0;
    ce.norm_high = besov_norm(ce.phi_high, prm.p, q);
    ce.norm_low = besov_norm(ce.phi_low, prm.p, q);
    ce.norm_total = besov_norm(ce.phi, prm.p, q);
    return ce;
}

SparseSpectrum second_iterate(const Counterexample& ce, const CounterexampleParams& prm, double t,
                              int threads) {
    const SparseSpectrum& hi = ce.phi_high;
    const SparseSpectrum& lo = ce.phi_low;
    SparseSpectrum out;
    out.dxi = hi.dxi;
    out.deta = hi.deta;

    // group output columns by jx1 + jx2
    std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> groups;
    for (std::size_t a = 0; a < hi.cols.size(); ++a)
        for (std::size_t b = 0; b < lo.cols.size(); ++b)
            groups[hi.cols[a].jx + lo.cols[b].jx].push_back({a, b});

    std::vector<std::int64_t> keys;
    for (const auto& kv : groups) keys.push_back(kv.first);
    out.cols.resize(keys.size());

    const double cell = hi.dxi * hi.deta;
    const double measure_norm = cell / (2.0 * M_PI);

    auto process = [&](std::size_t ci) {
        const std::int64_t jxo = keys[ci];
        const auto& pairs = groups.at(jxo);
        const double xo = jxo * out.dxi;

        // output row extent
        std::int64_t lo_jy = 0, hi_jy = 0;
        bool first = true;
        for (const auto& pr : pairs) {
            const auto& c1 = hi.cols[pr.first];
            const auto& c2 = lo.cols[pr.second];
            const std::int64_t a = c1.jy0 + c2.jy0;
            const std::int64_t b = c1.jy0 + static_cast<std::int64_t>(c1.vals.size()) - 1 + c2.jy0 +
                                   static_cast<std::int64_t>(c2.vals.size()) - 1;
            if (first || a < lo_jy) lo_jy = a;
            if (first || b > hi_jy) hi_jy = b;
            first = false;
        }
        SparseSpectrum::Column& oc = out.cols[ci];
        oc.jx = jxo;
        oc.jy0 = lo_jy;
        oc.vals.assign(static_cast<std::size_t>(hi_jy - lo_jy + 1), cplx(0.0, 0.0));

        for (const auto& pr : pairs) {
            const auto& c1 = hi.cols[pr.first];
            const auto& c2 = lo.cols[pr.second];
            const double x1 = c1.jx * hi.dxi;
            const double x2 = c2.jx * lo.dxi;
            const OmegaPair op = omega_pair(x1, x2);
            for (std::size_t r1 = 0; r1 < c1.vals.size(); ++r1) {
                const std::int64_t jy1 = c1.jy0 + static_cast<std::int64_t>(r1);
                const double rat1 = jy1 * hi.deta / x1;
                const cplx a1 = c1.vals[r1];
                const std::int64_t obase = jy1 + c2.jy0 - lo_jy;
                for (std::size_t r2 = 0; r2 < c2.vals.size(); ++r2) {
                    const double rat2 = (c2.jy0 + static_cast<std::int64_t>(r2)) * lo.deta / x2;
                    const double om = op(rat1, rat2);
                    // factor 2: (k1,k2) and (k2,k1) orderings contribute equally
                    oc.vals[obase + r2] += 2.0 * duhamel(t, om) * a1 * c2.vals[r2];
                }
            }
        }
        // e^{i t omega(k)} (i xi / 2) and the convolution measure
        for (std::size_t r = 0; r < oc.vals.size(); ++r) {
            const double eta = (oc.jy0 + static_cast<std::int64_t>(r)) * out.deta;
            const double ph = t * omega_inf(xo, eta);
            oc.vals[r] *= measure_norm * cplx(std::cos(ph), std::sin(ph)) * cplx(0.0, 0.5 * xo);
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || keys.size() <= 1) {
        for (std::size_t ci = 0; ci < keys.size(); ++ci) process(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t ci = next.fetch_add(1);
                    if (ci >= keys.size()) return;
                    process(ci);
                }
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

GrowthFit growth_exponent_fit(double p, double q, const std::vector<double>& N_list, double eps,
                              int threads) {
    if (N_list.size() < 4) throw domain_error("growth_exponent_fit: need >= 4 values of N");
    const auto [mn, mx] = std::minmax_element(N_list.begin(), N_list.end());
    if (!(*mx >= 8.0 * *mn)) throw domain_error("growth_exponent_fit: N must span a factor >= 8");

    GrowthFit fit;
    fit.predicted_slope = (1.0 - 1.0 / p) - eps * (0.5 + 0.5 / p);
    for (double N : N_list) {
        CounterexampleParams prm;
        prm.N = N;
        prm.eps = eps;
        prm.p = p;
        Counterexample ce = build_counterexample(prm);
        SparseSpectrum u2 = second_iterate(ce, prm, 1.0, threads);
        fit.N.push_back(N);
        fit.input_norm.push_back(besov_norm(ce.phi, p, q));
        fit.output_norm.push_back(besov_norm(u2, p, q));
    }

    auto slope_of = [&](const std::vector<double>& vals) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double lx = std::log(fit.N[i]);
            const double ly = std::log(vals[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    fit.slope = slope_of(fit.output_norm);
    fit.input_slope = slope_of(fit.input_norm);
    return fit;
}

OscillationStats oscillation_stats(const Counterexample& ce, const CounterexampleParams& prm,
                                   std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto& hi = ce.phi_high;
    const auto& lo = ce.phi_low;
    std::uniform_int_distribution<std::size_t> ch(0, hi.cols.size() - 1), cl(0, lo.cols.size() - 1);

    OscillationStats st;
    st.bound_scale = prm.N * prm.delta();
    st.min_duhamel = std::numeric_limits<double>::infinity();
    for (std::int64_t s = 0; s < samples; ++s) {
        const auto& c1 = hi.cols[ch(rng)];
        const auto& c2 = lo.cols[cl(rng)];
        std::uniform_int_distribution<std::size_t> r1(0, c1.vals.size() - 1), r2(0, c2.vals.size() - 1);
        const double x1 = c1.jx * hi.dxi;
        const double x2 = c2.jx * lo.dxi;
        const double e1 = (c1.jy0 + static_cast<std::int64_t>(r1(rng))) * hi.deta;
        const double e2 = (c2.jy0 + static_cast<std::int64_t>(r2(rng))) * lo.deta;
        const OmegaPair op = omega_pair(x1, x2);
        const double om = op(e1 / x1, e2 / x2);
        st.max_abs_omega = std::max(st.max_abs_omega, std::abs(om));
        st.min_duhamel = std::min(st.min_duhamel, std::abs(duhamel(1.0, om)));
    }
    st.constant = st.max_abs_omega / st.bound_scale;
    return st;
}

}  // namespace ccwave
