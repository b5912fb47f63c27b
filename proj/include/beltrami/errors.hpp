#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace beltrami {

enum class ErrorKind {
    OutOfDomain,
    DegenerateImmersion,
    SingularMetric,
    SingularForm,
    StencilOutsideDomain,
    InsufficientSamples,
    RankDeficient,
    NormalizationViolated,
    IllConditionedVandermonde,
    DomainViolation,
    ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the kernel carries one of the kinds above so callers
/// (the sampler in particular) can reject points selectively.
class GeometryError : public std::runtime_error {
public:
    GeometryError(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace beltrami
