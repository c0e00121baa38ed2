#pragma once

#include <cmath>
#include <limits>

#include "ccwave/errors.hpp"

namespace ccwave {

// Depth parameter h of the nonlocal operator. Either a positive real or
// the distinguished infinite-depth value (the Hilbert-transform model).
class Depth {
  public:
    static Depth finite(double h) {
        if (!(h > 0.0) || !std::isfinite(h)) throw domain_error("Depth: h must be positive and finite");
        return Depth(h, false);
    }
    static Depth infinite() { return Depth(std::numeric_limits<double>::infinity(), true); }

    bool is_infinite() const { return infinite_; }
    double value() const { return value_; }  // +inf when infinite

    bool operator==(const Depth& o) const { return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_); }
    bool operator!=(const Depth& o) const { return !(*this == o); }

  private:
    Depth(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

}  // namespace ccwave
