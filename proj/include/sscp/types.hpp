#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sscp {

// Which evaluation route produced an estimate.
enum class Method { Lemma1, Lemma2, Reference, MonteCarlo };

inline const char* method_name(Method m) {
    switch (m) {
    case Method::Lemma1: return "lemma-1";
    case Method::Lemma2: return "lemma-2";
    case Method::Reference: return "reference";
    case Method::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

// One SSCP value plus provenance. Analytic routes report the raw quadrature
// output in `value` (may overshoot [0,1] by quadrature error); use clamped()
// for a probability. Monte-Carlo fills std_err/trials/seed, the reference
// integrator fills error_bound, the closed forms fill quad_outer/quad_inner.
struct SscpEstimate {
    double value = 0.0;
    double std_err = 0.0;
    std::uint64_t trials = 0;
    Method method = Method::Lemma1;
    std::uint64_t seed = 0;
    double error_bound = 0.0;
    int quad_outer = 0;
    int quad_inner = 0;

    double clamped() const { return std::clamp(value, 0.0, 1.0); }
};

// Invalid or inconsistent scenario input. `key` names the offending config
// entry, `code` is a stable kebab-case identifier.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string code, std::string key, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)), key_(std::move(key)) {}

    const std::string& code() const { return code_; }
    const std::string& key() const { return key_; }

private:
    std::string code_;
    std::string key_;
};

// A numeric routine could not reach its requested accuracy.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double estimate, double bound)
        : std::runtime_error(what), estimate_(estimate), bound_(bound) {}

    double estimate() const { return estimate_; }
    double bound() const { return bound_; }

private:
    double estimate_;
    double bound_;
};

} // namespace sscp
