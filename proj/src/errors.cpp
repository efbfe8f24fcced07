#include <grr/errors.hpp>

namespace grr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::DisksOverlap: return "DisksOverlap";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::BadIdentification: return "BadIdentification";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorKind::OddDiskCount: return "OddDiskCount";
  }
  return "Unknown";
}

}  // namespace grr
