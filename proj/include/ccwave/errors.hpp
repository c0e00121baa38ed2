#pragma once

#include <stdexcept>
#include <string>

namespace ccwave {

// Bad user-supplied configuration (grid sizes, config files, CLI args).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation called outside its mathematical domain (xi = 0, v <= 0, ...).
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature / iteration failed to reach the requested tolerance.
class accuracy_error : public std::runtime_error {
  public:
    accuracy_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_(achieved) {}
    double achieved() const { return achieved_; }

  private:
    double achieved_;
};

// Resource guard tripped (mode-count limits for direct convolutions).
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Time stepper produced a non-finite or exploding state.
class blowup_error : public std::runtime_error {
  public:
    blowup_error(const std::string& msg, double t_last)
        : std::runtime_error(msg), t_last_(t_last) {}
    double t_last() const { return t_last_; }

  private:
    double t_last_;
};

}  // namespace ccwave
