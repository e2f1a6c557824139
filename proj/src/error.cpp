#include "tofq/error.hpp"

namespace tofq {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::GridTooCoarse: return "grid-too-coarse";
    case ErrorKind::PacketEscapesDomain: return "packet-escapes-domain";
    case ErrorKind::MismatchedGrid: return "mismatched-grids";
    case ErrorKind::ZeroNorm: return "zero-total-norm";
    case ErrorKind::InvalidPointerIndex: return "invalid-pointer-index";
    case ErrorKind::LambdaOutOfRange: return "lambda-out-of-range";
    case ErrorKind::ScheduleInfeasible: return "schedule-infeasible";
    case ErrorKind::NonUniformGrid: return "non-uniform-grid";
    case ErrorKind::AsymmetricSamples: return "asymmetric-samples";
    case ErrorKind::MeanOutOfRange: return "mean-out-of-range";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace tofq
