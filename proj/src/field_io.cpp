#include "ccwave/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "ccwave/errors.hpp"
#include "ccwave/fourier.hpp"

namespace ccwave {

namespace {

template <typename T>
void put_le(std::string& out, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    out.append(reinterpret_cast<char*>(b), sizeof(T));
}

template <typename T>
T get_le(const char* p) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

}  // namespace

void write_field(const std::string& path, const Field& f) {
    const Field fp = f.space == Space::Physical ? f : to_physical(f);
    std::string buf;
    buf.reserve(44 + fp.grid.size() * 8);
    buf += "CCF1";
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(fp.grid.nx));
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(fp.grid.ny));
    put_le<double>(buf, fp.grid.Lx);
    put_le<double>(buf, fp.grid.Ly);
    put_le<double>(buf, fp.t);
    put_le<double>(buf, fp.h.is_infinite() ? std::numeric_limits<double>::infinity() : fp.h.value());
    for (int i = 0; i < fp.grid.nx; ++i)
        for (int j = 0; j < fp.grid.ny; ++j) put_le<double>(buf, fp.at(i, j).real());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("write_field: cannot open " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw config_error("write_field: short write to " + path);
}

Field read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("read_field: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    constexpr std::size_t kHeader = 44;  // magic + 2 u32 + 4 f64
    if (buf.size() < kHeader || buf.compare(0, 4, "CCF1") != 0)
        throw config_error("read_field: bad magic or truncated header in " + path);

    const std::uint32_t nx = get_le<std::uint32_t>(buf.data() + 4);
    const std::uint32_t ny = get_le<std::uint32_t>(buf.data() + 8);
    const double Lx = get_le<double>(buf.data() + 12);
    const double Ly = get_le<double>(buf.data() + 20);
    const double t = get_le<double>(buf.data() + 28);
    const double h = get_le<double>(buf.data() + 36);
    const std::size_t need = kHeader + static_cast<std::size_t>(nx) * ny * 8;
    if (buf.size() != need) throw config_error("read_field: truncated payload in " + path);

    Grid g = make_grid(static_cast<int>(nx), static_cast<int>(ny), Lx, Ly);
    Field f(g, Space::Physical, t, std::isinf(h) ? Depth::infinite() : Depth::finite(h));
    const char* p = buf.data() + kHeader;
    for (std::uint32_t i = 0; i < nx; ++i)
        for (std::uint32_t j = 0; j < ny; ++j) {
            f.at(static_cast<int>(i), static_cast<int>(j)) = cplx(get_le<double>(p), 0.0);
            p += 8;
        }
    return f;
}

}  // namespace ccwave
