#include "ccwave/normalform.hpp"

#include <algorithm>
#include <cmath>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"
#include "ccwave/solver.hpp"
#include "ccwave/symbols.hpp"

namespace ccwave {

double BilinearSymbol::eval(const FreqPair& p) const {
    switch (kind) {
        case BilinearKind::EnergyNF: {
            const double ksym = nf_symbols(h, p.k1.xi, p.k2.xi, NfKind::KSym);
            const double om = resonance(h, p);
            if (std::abs(om) < 1e-300) throw domain_error("BilinearSymbol: resonance underflow");
            return ksym / om;
        }
        case BilinearKind::ScatterNF:
            return b_scatter(h, p);
        case BilinearKind::Custom:
            return custom(p);
    }
    return 0.0;
}

namespace {

struct Mode {
    int ki, lj;  // integer frequencies
    cplx a;
};

std::vector<Mode> collect(const Field& f, bool positive_only) {
    std::vector<Mode> out;
    const Grid& g = f.grid;
    for (int i = 0; i < g.nx; ++i) {
        const int ki = Grid::wrap(i, g.nx);
        if (ki == 0) continue;
        if (positive_only && g.xi[i] <= 0.0) continue;
        for (int j = 0; j < g.ny; ++j) {
            const cplx a = f.at(i, j);
            if (a != cplx(0.0, 0.0)) out.push_back({ki, Grid::wrap(j, g.ny), a});
        }
    }
    // lexicographic in (ki, lj): fixed summation order
    std::sort(out.begin(), out.end(), [](const Mode& a, const Mode& b) {
        return a.ki != b.ki ? a.ki < b.ki : a.lj < b.lj;
    });
    return out;
}

}  // namespace

Field bilinear_apply(const BilinearSymbol& sym, const Field& f, const Field& g) {
    if (f.space != Space::Fourier || g.space != Space::Fourier)
        throw domain_error("bilinear_apply: Fourier space required");
    if (!f.grid.same_shape(g.grid)) throw domain_error("bilinear_apply: grid mismatch");

    const std::vector<Mode> mf = collect(f, sym.positive_only);
    const std::vector<Mode> mg = collect(g, sym.positive_only);
    if (mf.size() > (1u << 16) || mg.size() > (1u << 16))
        throw resource_error("bilinear_apply: retained-mode count exceeds 2^16");

    const Grid& gr = f.grid;
    Field out(gr, Space::Fourier, f.t, f.h);
    const double dkx = 2.0 * M_PI / gr.Lx;
    const double dky = 2.0 * M_PI / gr.Ly;
    const double norm = 1.0 / std::sqrt(gr.Lx * gr.Ly);

    for (const Mode& m1 : mf) {
        for (const Mode& m2 : mg) {
            const int ko = m1.ki + m2.ki;
            const int lo = m1.lj + m2.lj;
            if (ko < -gr.nx / 2 || ko >= gr.nx / 2 || lo < -gr.ny / 2 || lo >= gr.ny / 2) continue;
            if (ko == 0) continue;  // output stays mean-zero in x
            FreqPair p{{m1.ki * dkx, m1.lj * dky}, {m2.ki * dkx, m2.lj * dky}};
            const double b = sym.eval(p);
            const int io = ko >= 0 ? ko : ko + gr.nx;
            const int jo = lo >= 0 ? lo : lo + gr.ny;
            out.at(io, jo) += norm * b * m1.a * m2.a;
        }
    }
    return out;
}

ScatterCorrection scatter_correction(const Field& u, double t, const LPLadder& ladder) {
    if (!(t >= 1.0)) throw domain_error("scatter_correction: t >= 1 required");
    Field uf = u.space == Space::Fourier ? u : to_fourier(u);
    const double lo_target = std::pow(t, -1.0 / 6.0);
    const double hi_target = std::pow(t, 1.0 / 12.0);
    const int n_lo = static_cast<int>(std::lround(std::log2(lo_target) / ladder.delta));
    const int n_hi = static_cast<int>(std::lround(std::log2(hi_target) / ladder.delta));

    Field w(u.grid, Space::Fourier, u.t, u.h);
    for (int n = n_lo + 1; n <= n_hi; ++n) {
        if (n < ladder.n_min || n > ladder.n_max) continue;
        w += lp_project(uf, ladder, n);
    }
    Field wplus = pm_project(w, +1);

    BilinearSymbol sym;
    sym.kind = BilinearKind::ScatterNF;
    sym.h = u.h;
    sym.positive_only = true;
    Field bww = bilinear_apply(sym, wplus, wplus);

    ScatterCorrection out;
    out.band_lo = ladder.band(n_lo);
    out.band_hi = ladder.band(n_hi);
    Field corr_phys = to_physical(bww);
    Field up = u.space == Space::Physical ? u : to_physical(uf);
    Field corrected = up;
    double s = 0.0;
    for (std::size_t m = 0; m < corrected.data.size(); ++m) {
        const double c = 2.0 * corr_phys.data[m].real();
        corrected.data[m] -= c;
        s += c * c;
    }
    out.correction_l2 = std::sqrt(s * u.grid.cell_area());
    out.corrected = std::move(corrected);
    return out;
}

ScatterSeries scattering_profile(const std::vector<Field>& snapshots) {
    if (snapshots.size() < 2) throw domain_error("scattering_profile: need at least 2 snapshots");
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        if (!(snapshots[i].t >= std::sqrt(2.0) * snapshots[i - 1].t * (1.0 - 1e-12)))
            throw domain_error("scattering_profile: snapshot times must increase by factors >= sqrt(2)");

    ScatterSeries out;
    LPLadder ladder = LPLadder::for_grid(snapshots.front().grid);
    std::vector<Field> pullbacks;
    for (const Field& s : snapshots) {
        ScatterCorrection c = scatter_correction(s, s.t, ladder);
        Field cf = to_fourier(c.corrected);
        Field pb = propagate_linear(cf, -s.t);
        out.t.push_back(s.t);
        out.correction_l2.push_back(c.correction_l2);
        const double n = l2_norm(pb);
        out.pullback_mass.push_back(n * n);
        pullbacks.push_back(to_physical(pb));
    }
    out.diffs_decreasing = true;
    for (std::size_t i = 0; i + 1 < pullbacks.size(); ++i) {
        out.cauchy_diff.push_back(l2_norm(pullbacks[i + 1] - pullbacks[i]));
        if (i > 0 && out.cauchy_diff[i] >= out.cauchy_diff[i - 1]) out.diffs_decreasing = false;
    }
    out.W = pullbacks.back();
    out.mass_ratio = l2_norm(out.W) / l2_norm(snapshots.front());
    return out;
}

}  // namespace ccwave
