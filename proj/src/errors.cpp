#include "beltrami/errors.hpp"

namespace beltrami {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::SingularForm: return "SingularForm";
    case ErrorKind::StencilOutsideDomain: return "StencilOutsideDomain";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NormalizationViolated: return "NormalizationViolated";
    case ErrorKind::IllConditionedVandermonde: return "IllConditionedVandermonde";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

GeometryError::GeometryError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

} // namespace beltrami
