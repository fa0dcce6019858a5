#pragma once

#include <stdexcept>
#include <string>

namespace gqd {

struct GqdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : GqdError {
    using GqdError::GqdError;
};

struct PoleHit : GqdError {
    using GqdError::GqdError;
};

struct MarginalExponent : GqdError {
    using GqdError::GqdError;
};

struct IndexOutOfOrder : GqdError {
    using GqdError::GqdError;
};

struct InsufficientOrder : GqdError {
    using GqdError::GqdError;
};

struct SignMismatch : GqdError {
    using GqdError::GqdError;
};

struct RankDeficient : GqdError {
    using GqdError::GqdError;
};

struct Unidentifiable : GqdError {
    using GqdError::GqdError;
};

struct ZeroAmplitude : GqdError {
    using GqdError::GqdError;
};

struct OffShellKinematics : GqdError {
    using GqdError::GqdError;
};

struct OnAxis : GqdError {
    using GqdError::GqdError;
};

struct ContourTooNarrow : GqdError {
    using GqdError::GqdError;
};

struct ConfigError : GqdError {
    using GqdError::GqdError;
};

}  // namespace gqd
