#include "ccwave/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "ccwave/errors.hpp"

namespace ccwave {

namespace {

// Plan cache. FFTW plan creation is not thread-safe; execution via
// fftw_execute_dft on distinct buffers is. FFTW_ESTIMATE keeps planning
// deterministic, FFTW_UNALIGNED lets plans run on any vector storage.
class Plans {
  public:
    static Plans& instance() {
        static Plans p;
        return p;
    }

    fftw_plan get2d(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(nx, ny, sign, 0);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<cplx> buf(static_cast<std::size_t>(nx) * ny);
        fftw_plan p = fftw_plan_dft_2d(nx, ny, reinterpret_cast<fftw_complex*>(buf.data()),
                                       reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache_[key] = p;
        return p;
    }

    fftw_plan get_rows(int nx, int ny, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(nx, ny, sign, 1);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<cplx> buf(static_cast<std::size_t>(nx) * ny);
        int n[1] = {nx};
        // x is the slow index: element i of column j sits at i*ny + j.
        fftw_plan p = fftw_plan_many_dft(1, n, ny, reinterpret_cast<fftw_complex*>(buf.data()),
                                         nullptr, ny, 1, reinterpret_cast<fftw_complex*>(buf.data()),
                                         nullptr, ny, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache_[key] = p;
        return p;
    }

  private:
    Plans() = default;
    std::mutex mu_;
    std::map<std::tuple<int, int, int, int>, fftw_plan> cache_;
};

inline void execute(fftw_plan p, cplx* data) {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
}

// Checkerboard phase (-1)^(i+j) translating between FFT order and the
// centered-coordinate Fourier coefficients.
void checkerboard(const Grid& g, cplx* data) {
    for (int i = 0; i < g.nx; ++i) {
        cplx* row = data + g.idx(i, 0);
        for (int j = (i & 1) ? 0 : 1; j < g.ny; j += 2) row[j] = -row[j];
    }
}

}  // namespace

void forward_inplace(const Grid& g, cplx* data) {
    execute(Plans::instance().get2d(g.nx, g.ny, FFTW_FORWARD), data);
    checkerboard(g, data);
    const double scale = std::sqrt(g.Lx * g.Ly) / (static_cast<double>(g.nx) * g.ny);
    const std::size_t n = g.size();
    for (std::size_t m = 0; m < n; ++m) data[m] *= scale;
}

void backward_inplace(const Grid& g, cplx* data) {
    checkerboard(g, data);
    execute(Plans::instance().get2d(g.nx, g.ny, FFTW_BACKWARD), data);
    const double scale = 1.0 / std::sqrt(g.Lx * g.Ly);
    const std::size_t n = g.size();
    for (std::size_t m = 0; m < n; ++m) data[m] *= scale;
}

void forward_rows_inplace(const Grid& g, cplx* data) {
    execute(Plans::instance().get_rows(g.nx, g.ny, FFTW_FORWARD), data);
}

void backward_rows_inplace(const Grid& g, cplx* data) {
    execute(Plans::instance().get_rows(g.nx, g.ny, FFTW_BACKWARD), data);
}

Field to_fourier(const Field& f) {
    if (f.space != Space::Physical) throw domain_error("to_fourier: field already in Fourier space");
    Field r = f;
    forward_inplace(r.grid, r.data.data());
    r.space = Space::Fourier;
    return r;
}

Field to_physical(const Field& f) {
    if (f.space != Space::Fourier) throw domain_error("to_physical: field already in physical space");
    Field r = f;
    backward_inplace(r.grid, r.data.data());
    r.space = Space::Physical;
    return r;
}

}  // namespace ccwave
