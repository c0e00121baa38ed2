#pragma once

#include <string>

#include "ccwave/field.hpp"

namespace ccwave {

// Binary snapshot format CCF1: magic "CCF1", u32 nx, u32 ny, f64 Lx, Ly, t, h
// (infinite depth encoded as IEEE +inf), then nx*ny f64 little-endian
// row-major (x-major) physical-space samples.
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

}  // namespace ccwave
